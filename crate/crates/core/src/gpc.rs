//! Partial comodule data `(X, X•H, π, ρ)`, the two routes to the geometric
//! axioms, morphisms, and induction from non-coassociative coactions and from
//! covers.

use serde::Serialize;
use thiserror::Error;

use crate::exactla::{
    image, kernel, preimage, quotient_by, rat, solve_factor, LaError, LinMap, Rational, Subspace,
};
use crate::findimcat::{id_tensor, pushout, tensor_id, Direction, Dualize, Span};
use crate::globalization::GlobalComodule;
use crate::random::{self, SeededRng};
use crate::structures::Coalgebra;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GpcError {
    #[error("malformed datum: {0}")]
    Malformed(String),
    #[error("π is not an epimorphism (rank {rank} < {bullet_dim})")]
    NotEpi { rank: usize, bullet_dim: usize },
    #[error("GPC1 fails: {reason}")]
    Gpc1 {
        reason: &'static str,
        witness: Vec<Rational>,
    },
    #[error("GPC2 fails: {reason}")]
    Gpc2 {
        reason: &'static str,
        witness: Vec<Rational>,
    },
    #[error("coaction is not counital at basis index {index}")]
    Counitality { index: usize },
    #[error("not a comodule: {0}")]
    InvalidComodule(&'static str),
    #[error("morphism fails: {square}")]
    Morphism {
        square: &'static str,
        witness: Vec<Rational>,
    },
    #[error(transparent)]
    La(#[from] LaError),
}

fn witness_of(e: &LaError) -> Vec<Rational> {
    match e {
        LaError::NoSolution { witness } => witness.clone(),
        _ => Vec::new(),
    }
}

/// First column where two equally shaped maps differ, as that column of
/// `lhs - rhs`.
fn column_witness(lhs: &LinMap, rhs: &LinMap) -> Option<Vec<Rational>> {
    lhs.first_difference(rhs)
        .map(|(_, col)| (lhs - rhs).column(col))
}

/// A cospan `X → X•H ← X⊗H` over a coalgebra, stored as matrices.
///
/// `Opposite` data come from the transpose of a `Vect` span; the stored
/// matrices are already the cospan picture over the dual coalgebra, so every
/// check runs unchanged.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialComoduleDatum {
    pub coalgebra: Coalgebra,
    pub x_dim: usize,
    pub bullet_dim: usize,
    pub pi: LinMap,
    pub rho: LinMap,
    pub direction: Direction,
}

impl PartialComoduleDatum {
    pub fn new(coalgebra: Coalgebra, pi: LinMap, rho: LinMap) -> Result<Self, GpcError> {
        let d = PartialComoduleDatum {
            x_dim: rho.cols(),
            bullet_dim: pi.rows(),
            coalgebra,
            pi,
            rho,
            direction: Direction::Standard,
        };
        d.check_well_formed()?;
        Ok(d)
    }

    pub fn check_well_formed(&self) -> Result<(), GpcError> {
        let (m, n, k) = (self.x_dim, self.coalgebra.dim, self.bullet_dim);
        if self.pi.rows() != k || self.pi.cols() != m * n {
            return Err(GpcError::Malformed(format!(
                "π is {}×{}, expected {k}×{}",
                self.pi.rows(),
                self.pi.cols(),
                m * n
            )));
        }
        if self.rho.rows() != k || self.rho.cols() != m {
            return Err(GpcError::Malformed(format!(
                "ρ is {}×{}, expected {k}×{m}",
                self.rho.rows(),
                self.rho.cols()
            )));
        }
        let rank = self.pi.rank();
        if rank != k {
            return Err(GpcError::NotEpi {
                rank,
                bullet_dim: k,
            });
        }
        Ok(())
    }

    /// `(X, X, X⊗ε, id)`.
    pub fn trivial(coalgebra: &Coalgebra, x_dim: usize) -> Self {
        PartialComoduleDatum {
            coalgebra: coalgebra.clone(),
            x_dim,
            bullet_dim: x_dim,
            pi: id_tensor(x_dim, &coalgebra.eps),
            rho: LinMap::identity(x_dim),
            direction: Direction::Standard,
        }
    }

    /// `(Y, Y⊗H, id, δ)` for a global comodule.
    pub fn global(y: &GlobalComodule) -> Self {
        let n = y.coalgebra.dim;
        PartialComoduleDatum {
            coalgebra: y.coalgebra.clone(),
            x_dim: y.dim,
            bullet_dim: y.dim * n,
            pi: LinMap::identity(y.dim * n),
            rho: y.delta.clone(),
            direction: Direction::Standard,
        }
    }

    /// `X⊗ε: X⊗H → X`.
    pub fn x_eps(&self) -> LinMap {
        id_tensor(self.x_dim, &self.coalgebra.eps)
    }

    /// `X⊗Δ: X⊗H → X⊗H⊗H`.
    pub fn x_delta(&self) -> LinMap {
        id_tensor(self.x_dim, &self.coalgebra.delta)
    }
}

impl Dualize for PartialComoduleDatum {
    type Dual = Span;

    /// The transposed `Vect` picture: a span `X* ← (X•H)* → (X⊗H)*`.
    fn dualize(&self) -> Span {
        Span {
            left: self.rho.transpose(),
            right: self.pi.transpose(),
        }
    }
}

/// Everything the geometric axioms produce when they hold.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GpcCertificate {
    /// `X•ε: X•H → X`.
    pub counit_map: LinMap,
    /// The iso between the two iterated pushouts.
    pub theta: LinMap,
    pub pullback_apex: Subspace,
    pub equalizer_apex: Subspace,
}

/// The unique `X•ε` with `X•ε ∘ π = X⊗ε`, checked against `X•ε ∘ ρ = id`.
pub fn check_gpc1(d: &PartialComoduleDatum) -> Result<LinMap, GpcError> {
    d.check_well_formed()?;
    let counit_map = solve_factor(&d.pi, &d.x_eps()).map_err(|e| GpcError::Gpc1 {
        reason: "ker π is not contained in ker(X⊗ε)",
        witness: witness_of(&e),
    })?;
    let back = &counit_map * &d.rho;
    if let Some(witness) = column_witness(&back, &LinMap::identity(d.x_dim)) {
        return Err(GpcError::Gpc1 {
            reason: "X•ε ∘ ρ ≠ id",
            witness,
        });
    }
    Ok(counit_map)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Gpc2Criterion {
    pub pullback_apex: Subspace,
    pub equalizer_apex: Subspace,
    pub verdict: bool,
}

/// Abelian route: the pullback of `π` along the split mono `ρ` must equal the
/// equalizer of `ρ⊗H` and `(π⊗H)∘(X⊗Δ)`.
pub fn check_gpc2_criterion(d: &PartialComoduleDatum) -> Result<Gpc2Criterion, GpcError> {
    let n = d.coalgebra.dim;
    let pullback_apex = preimage(&d.pi, &image(&d.rho))?;
    let lhs = tensor_id(&d.rho, n);
    let rhs = &tensor_id(&d.pi, n) * &d.x_delta();
    let equalizer_apex = kernel(&lhs.checked_sub(&rhs)?);
    let verdict = pullback_apex == equalizer_apex;
    Ok(Gpc2Criterion {
        pullback_apex,
        equalizer_apex,
        verdict,
    })
}

/// Definitional route: build `(X•H)•H` and `X•(H•H)` as pushouts, solve for
/// `θ` through the epi leg of the second, then check it is invertible and
/// compatible with the iterated coactions.
pub fn check_gpc2_definitional(d: &PartialComoduleDatum) -> Result<LinMap, GpcError> {
    let n = d.coalgebra.dim;
    // (X•H)•H: pushout of π and ρ⊗H; legs ρ•H and π_{X•H}
    let p1 = pushout(&d.pi, &tensor_id(&d.rho, n))?;
    let (rho_bullet_h, pi_bullet_h) = (&p1.cospan.left, &p1.cospan.right);
    // X•(H•H): pushout of π and (π⊗H)(X⊗Δ); legs X•Δ and π_{X,Δ}
    let p2 = pushout(&d.pi, &(&tensor_id(&d.pi, n) * &d.x_delta()))?;
    let (x_bullet_delta, pi_x_delta) = (&p2.cospan.left, &p2.cospan.right);
    let theta = solve_factor(pi_x_delta, pi_bullet_h).map_err(|e| GpcError::Gpc2 {
        reason: "π_{X•H} does not factor through π_{X,Δ}",
        witness: witness_of(&e),
    })?;
    if theta.rows() != theta.cols() || theta.inverse().is_none() {
        return Err(GpcError::Gpc2 {
            reason: "θ is not invertible",
            witness: kernel(&theta)
                .basis_vectors()
                .into_iter()
                .next()
                .unwrap_or_default(),
        });
    }
    let lhs = &(&theta * x_bullet_delta) * &d.rho;
    let rhs = rho_bullet_h * &d.rho;
    if let Some(witness) = column_witness(&lhs, &rhs) {
        return Err(GpcError::Gpc2 {
            reason: "θ ∘ X•Δ ∘ ρ ≠ ρ•H ∘ ρ",
            witness,
        });
    }
    Ok(theta)
}

/// Run GPC1 and both GPC2 routes; the routes must agree.
pub fn certify(d: &PartialComoduleDatum) -> Result<GpcCertificate, GpcError> {
    let counit_map = check_gpc1(d)?;
    let criterion = check_gpc2_criterion(d)?;
    let definitional = check_gpc2_definitional(d);
    match (criterion.verdict, definitional) {
        (true, Ok(theta)) => Ok(GpcCertificate {
            counit_map,
            theta,
            pullback_apex: criterion.pullback_apex,
            equalizer_apex: criterion.equalizer_apex,
        }),
        (false, Err(e)) => Err(e),
        (false, Ok(_)) => Err(GpcError::Gpc2 {
            reason: "routes disagree: criterion fails but θ exists",
            witness: Vec::new(),
        }),
        (true, Err(_)) => Err(GpcError::Gpc2 {
            reason: "routes disagree: criterion holds but θ does not exist",
            witness: Vec::new(),
        }),
    }
}

/// A counital, not necessarily coassociative, coaction `∂: X → X⊗H`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NcComodule {
    pub coalgebra: Coalgebra,
    pub x_dim: usize,
    pub coaction: LinMap,
}

impl NcComodule {
    pub fn new(coalgebra: Coalgebra, coaction: LinMap) -> Result<Self, GpcError> {
        let c = NcComodule {
            x_dim: coaction.cols(),
            coalgebra,
            coaction,
        };
        c.check_counital()?;
        Ok(c)
    }

    pub fn check_counital(&self) -> Result<(), GpcError> {
        let (m, n) = (self.x_dim, self.coalgebra.dim);
        if self.coaction.rows() != m * n || self.coaction.cols() != m {
            return Err(GpcError::Malformed("∂ must be (m·n)×m".into()));
        }
        let back = &id_tensor(m, &self.coalgebra.eps) * &self.coaction;
        match back.first_difference(&LinMap::identity(m)) {
            None => Ok(()),
            Some((_, index)) => Err(GpcError::Counitality { index }),
        }
    }

    /// The coassociativity defect `(∂⊗H)∂ − (X⊗Δ)∂: X → X⊗H⊗H`.
    pub fn defect(&self) -> LinMap {
        let n = self.coalgebra.dim;
        let d = &self.coaction;
        &(&tensor_id(d, n) * d) - &(&id_tensor(self.x_dim, &self.coalgebra.delta) * d)
    }

    /// `Q`: the span of all last-slot slices of the defect.
    pub fn defect_slices(&self) -> Subspace {
        let (m, n) = (self.x_dim, self.coalgebra.dim);
        let defect = self.defect();
        let mut vectors = Vec::with_capacity(m * n);
        for x in 0..m {
            for t in 0..n {
                let v: Vec<Rational> = (0..m * n)
                    .map(|qk| defect.get(qk * n + t, x).clone())
                    .collect();
                vectors.push(v);
            }
        }
        Subspace::span(m * n, &vectors)
    }

    /// Whether `f: X → X'` intertwines the coactions: `(f⊗H)∂ = ∂'f`.
    pub fn is_morphism(&self, dst: &NcComodule, f: &LinMap) -> bool {
        let n = self.coalgebra.dim;
        &tensor_id(f, n) * &self.coaction == &dst.coaction * f
    }
}

/// Quotient `X⊗H` by the defect slices; `ρ = π∘∂`.
pub fn induce_from_nc(c: &NcComodule) -> Result<PartialComoduleDatum, GpcError> {
    c.check_counital()?;
    let q = c.defect_slices();
    let quotient = quotient_by(&q);
    let rho = &quotient.proj * &c.coaction;
    Ok(PartialComoduleDatum {
        coalgebra: c.coalgebra.clone(),
        x_dim: c.x_dim,
        bullet_dim: quotient.quotient_dim(),
        pi: quotient.proj,
        rho,
        direction: Direction::Standard,
    })
}

/// Pushout of `X ← Y → X⊗H` along `p` and `(p⊗H)δ`; `ρ` and `π` are its legs.
pub fn induce_from_cover(y: &GlobalComodule, p: &LinMap) -> Result<PartialComoduleDatum, GpcError> {
    y.validate()?;
    if p.cols() != y.dim {
        return Err(GpcError::Malformed("p must be defined on Y".into()));
    }
    if !p.is_surjective() {
        return Err(GpcError::NotEpi {
            rank: p.rank(),
            bullet_dim: p.rows(),
        });
    }
    let n = y.coalgebra.dim;
    let po = pushout(p, &(&tensor_id(p, n) * &y.delta))?;
    Ok(PartialComoduleDatum {
        coalgebra: y.coalgebra.clone(),
        x_dim: p.rows(),
        bullet_dim: po.apex_dim(),
        pi: po.cospan.right,
        rho: po.cospan.left,
        direction: Direction::Standard,
    })
}

/// The sub-datum on `X' ⊆ X`: `X'•H = π(X'⊗H)` with the restricted legs.
/// Fails when `ρ(X') ⊄ X'•H`.
pub fn restrict(
    d: &PartialComoduleDatum,
    sub: &Subspace,
) -> Result<PartialComoduleDatum, GpcError> {
    if sub.ambient_dim() != d.x_dim {
        return Err(GpcError::Malformed("subspace must live in X".into()));
    }
    let n = d.coalgebra.dim;
    let incl = sub.inclusion();
    let pi_sub = &d.pi * &tensor_id(&incl, n);
    let bullet = image(&pi_sub);
    let rho_sub = &d.rho * &incl;
    for c in 0..rho_sub.cols() {
        let v = rho_sub.column(c);
        if !bullet.contains(&v) {
            return Err(GpcError::Malformed(format!(
                "ρ leaves the sub-datum at basis vector {c}"
            )));
        }
    }
    let coords = bullet.coordinate_map();
    PartialComoduleDatum::new(d.coalgebra.clone(), &coords * &pi_sub, &coords * &rho_sub)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GpcMorphism {
    pub f: LinMap,
    pub f_bullet: LinMap,
}

/// Solve `f•H ∘ π_src = π_dst ∘ (f⊗H)` through the epi `π_src`, then check
/// `f•H ∘ ρ_src = ρ_dst ∘ f`.
pub fn check_morphism(
    src: &PartialComoduleDatum,
    dst: &PartialComoduleDatum,
    f: &LinMap,
) -> Result<GpcMorphism, GpcError> {
    if f.cols() != src.x_dim || f.rows() != dst.x_dim {
        return Err(GpcError::Malformed("f must map X_src to X_dst".into()));
    }
    let n = src.coalgebra.dim;
    let target = &dst.pi * &tensor_id(f, n);
    let f_bullet = solve_factor(&src.pi, &target).map_err(|e| GpcError::Morphism {
        square: "(f⊗H)(ker π_src) ⊄ ker π_dst",
        witness: witness_of(&e),
    })?;
    if let Some(witness) = column_witness(&(&f_bullet * &src.rho), &(&dst.rho * f)) {
        return Err(GpcError::Morphism {
            square: "f•H ∘ ρ_src ≠ ρ_dst ∘ f",
            witness,
        });
    }
    Ok(GpcMorphism {
        f: f.clone(),
        f_bullet,
    })
}

/// An isomorphism of data `(f, f•H)`: both components invertible.
pub fn check_isomorphism(
    src: &PartialComoduleDatum,
    dst: &PartialComoduleDatum,
    f: &LinMap,
) -> Result<GpcMorphism, GpcError> {
    let m = check_morphism(src, dst, f)?;
    if m.f.inverse().is_none() || m.f_bullet.inverse().is_none() {
        return Err(GpcError::Morphism {
            square: "component not invertible",
            witness: Vec::new(),
        });
    }
    Ok(m)
}

/// On the coalgebra with basis `(g, x)`: `∂(g) = g⊗g + g⊗x`, `∂(x) = x⊗g`.
/// Its defect is `span{g⊗x}`.
pub fn two_dim_example() -> NcComodule {
    let coaction = LinMap::from_fn(4, 2, |r, c| {
        rat(matches!((r, c), (0, 0) | (1, 0) | (2, 1)) as i64)
    });
    NcComodule::new(crate::structures::two_dim_coalgebra(), coaction).expect("shapes")
}

/// `g ↦ g`, `x ↦ g`: a morphism of the induced partial data that does not
/// commute with `∂`.
pub fn two_dim_example_morphism() -> LinMap {
    LinMap::from_fn(2, 2, |r, _| rat((r == 0) as i64))
}

/// A random counital coaction `∂(x) = x⊗e + D(x)` with `ε(e) = 1` and `D`
/// landing in `X⊗ker ε`.
pub fn random_nc(coalgebra: &Coalgebra, x_dim: usize, rng: &mut SeededRng) -> NcComodule {
    let n = coalgebra.dim;
    let e = coalgebra.counit_section();
    let ker_eps = kernel(&coalgebra.eps).basis_vectors();
    let mut coaction = LinMap::zeros(x_dim * n, x_dim);
    for x in 0..x_dim {
        for (h, c) in e.iter().enumerate() {
            coaction.set(x * n + h, x, c.clone());
        }
        for q in 0..x_dim {
            for k in &ker_eps {
                let c = random::small_rational(rng);
                if c == rat(0) {
                    continue;
                }
                for (h, kh) in k.iter().enumerate() {
                    let v = coaction.get(q * n + h, x) + &c * kh;
                    coaction.set(q * n + h, x, v);
                }
            }
        }
    }
    NcComodule {
        coalgebra: coalgebra.clone(),
        x_dim,
        coaction,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::ratio;
    use crate::structures::{group_algebra, sweedler_h4, two_dim_coalgebra, FiniteGroup};

    fn kc2() -> Coalgebra {
        group_algebra(&FiniteGroup::cyclic(2)).coalgebra().clone()
    }

    #[test]
    fn trivial_datum_passes() {
        for c in [
            kc2(),
            two_dim_coalgebra(),
            sweedler_h4().coalgebra().clone(),
        ] {
            for m in 1..3 {
                let d = PartialComoduleDatum::trivial(&c, m);
                let cert = certify(&d).unwrap();
                assert!(cert.counit_map.is_identity());
            }
        }
    }

    #[test]
    fn global_datum_passes() {
        let y = GlobalComodule::regular(&kc2());
        let d = PartialComoduleDatum::global(&y);
        let cert = certify(&d).unwrap();
        assert_eq!(cert.counit_map, d.x_eps());
        assert_eq!(cert.pullback_apex, image(&y.delta));
        assert!(cert.theta.inverse().is_some());
    }

    #[test]
    fn scaled_rho_fails_gpc1() {
        let mut d = PartialComoduleDatum::trivial(&kc2(), 2);
        d.rho = d.rho.scale(&rat(2));
        assert!(matches!(check_gpc1(&d), Err(GpcError::Gpc1 { .. })));
    }

    #[test]
    fn two_dim_defect_and_morphism() {
        let nc = two_dim_example();
        assert_eq!(
            nc.coaction,
            LinMap::from_i64(4, 2, &[1, 0, 1, 0, 0, 1, 0, 0])
        );
        let q = nc.defect_slices();
        assert_eq!(
            q,
            Subspace::span(4, &[vec![rat(0), rat(1), rat(0), rat(0)]])
        );
        let d = induce_from_nc(&nc).unwrap();
        certify(&d).unwrap();
        // ρ(g) = class(g⊗g), ρ(x) = class(x⊗g)
        assert_eq!(d.rho.column(0), d.pi.column(0));
        assert_eq!(d.rho.column(1), d.pi.column(2));

        let f = two_dim_example_morphism();
        assert_eq!(f, LinMap::from_i64(2, 2, &[1, 1, 0, 0]));
        check_morphism(&d, &d, &f).unwrap();
        assert!(!nc.is_morphism(&nc, &f));
    }

    #[test]
    fn broken_bullet_fails_gpc2() {
        // perturb the defect line g⊗x to g⊗x + x⊗x: GPC1 survives, GPC2 does not
        let c = two_dim_coalgebra();
        let q = Subspace::span(4, &[vec![rat(0), rat(1), rat(0), rat(1)]]);
        let quotient = quotient_by(&q);
        let coaction = LinMap::from_i64(4, 2, &[1, 0, 1, 0, 0, 1, 0, 0]);
        let rho = &quotient.proj * &coaction;
        let d = PartialComoduleDatum::new(c, quotient.proj, rho).unwrap();
        check_gpc1(&d).unwrap();
        assert!(!check_gpc2_criterion(&d).unwrap().verdict);
        assert!(check_gpc2_definitional(&d).is_err());
    }

    #[test]
    fn coassociative_coaction_induces_global_datum() {
        let y = GlobalComodule::regular(&sweedler_h4().coalgebra().clone());
        let nc = NcComodule::new(y.coalgebra.clone(), y.delta.clone()).unwrap();
        assert!(nc.defect_slices().is_zero());
        let d = induce_from_nc(&nc).unwrap();
        assert_eq!(d.bullet_dim, 16);
    }

    #[test]
    fn regular_kc2_cover_onto_k() {
        let y = GlobalComodule::regular(&kc2());
        let p = LinMap::from_i64(1, 2, &[1, 1]);
        let d = induce_from_cover(&y, &p).unwrap();
        assert_eq!(d.bullet_dim, 1);
        certify(&d).unwrap();
    }

    #[test]
    fn random_induced_data_pass_both_routes() {
        let mut r = random::rng(3);
        for c in [kc2(), sweedler_h4().coalgebra().clone()] {
            for m in 1..=3 {
                let nc = random_nc(&c, m, &mut r);
                let d = induce_from_nc(&nc).unwrap();
                certify(&d).unwrap();
            }
        }
    }

    #[test]
    fn non_counital_rejected() {
        let c = kc2();
        let coaction = LinMap::new(2, 1, vec![ratio(1, 2), rat(0)]).unwrap();
        assert!(matches!(
            NcComodule::new(c, coaction),
            Err(GpcError::Counitality { index: 0 })
        ));
    }
}
