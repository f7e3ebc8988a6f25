//! Global comodules, the globalization of a geometric partial comodule as an
//! equalizer inside `X⊗H`, its certificate, covers and the round trips between
//! covers and partial data.

use serde::Serialize;
use thiserror::Error;

use crate::exactla::{rat, solve, solve_factor, LaError, LinMap, Rational, Subspace};
use crate::findimcat::{id_tensor, pushout, tensor_id};
use crate::gpc::{
    certify, check_isomorphism, check_morphism, induce_from_cover, GpcError, GpcMorphism,
    PartialComoduleDatum,
};
use crate::random::{self, SeededRng};
use crate::structures::{group_algebra, Coalgebra, FiniteGroup};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GlobError {
    #[error(transparent)]
    Gpc(#[from] GpcError),
    #[error("certificate failure: {reason}")]
    CertificateFailure {
        reason: &'static str,
        certificate: Box<GlobCertificate>,
    },
    #[error("cover is not proper")]
    NotProper { witness: Vec<Rational> },
    #[error("δ(M) ∩ (V⊗H) ≠ 0")]
    ConditionViolated { witness: Vec<Rational> },
    #[error("no isomorphism: {0}")]
    NoIso(&'static str),
    #[error(transparent)]
    La(#[from] LaError),
}

/// A right comodule `δ: Y → Y⊗H`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GlobalComodule {
    pub coalgebra: Coalgebra,
    pub dim: usize,
    pub delta: LinMap,
}

impl GlobalComodule {
    pub fn new(coalgebra: Coalgebra, delta: LinMap) -> Result<Self, GpcError> {
        let y = GlobalComodule {
            dim: delta.cols(),
            coalgebra,
            delta,
        };
        y.validate()?;
        Ok(y)
    }

    pub fn validate(&self) -> Result<(), GpcError> {
        let (m, n) = (self.dim, self.coalgebra.dim);
        if self.delta.rows() != m * n || self.delta.cols() != m {
            return Err(GpcError::InvalidComodule("δ must be (y·n)×y"));
        }
        let d = &self.delta;
        if &tensor_id(d, n) * d != &id_tensor(m, &self.coalgebra.delta) * d {
            return Err(GpcError::InvalidComodule("coassociativity"));
        }
        if !(&id_tensor(m, &self.coalgebra.eps) * d).is_identity() {
            return Err(GpcError::InvalidComodule("counit"));
        }
        Ok(())
    }

    /// `H` coacting on itself by `Δ`.
    pub fn regular(coalgebra: &Coalgebra) -> Self {
        GlobalComodule {
            coalgebra: coalgebra.clone(),
            dim: coalgebra.dim,
            delta: coalgebra.delta.clone(),
        }
    }

    /// `V⊗H` with coaction `V⊗Δ`.
    pub fn free(coalgebra: &Coalgebra, v_dim: usize) -> Self {
        GlobalComodule {
            coalgebra: coalgebra.clone(),
            dim: v_dim * coalgebra.dim,
            delta: id_tensor(v_dim, &coalgebra.delta),
        }
    }

    /// Whether `f: Y → Y'` is colinear.
    pub fn is_morphism(&self, dst: &GlobalComodule, f: &LinMap) -> bool {
        &dst.delta * f == &tensor_id(f, self.coalgebra.dim) * &self.delta
    }
}

/// Flags attached to every globalization. The universal property among all
/// covers is certified through its abelian equivalents: GL1, the pushout
/// square, properness and the round trip.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GlobCertificate {
    pub equalizer_dim: usize,
    pub gl1: bool,
    pub pushout: bool,
    pub proper: bool,
    /// Iso from the pushout of `(ε_X, κ)` to `X•H`.
    pub iso: Option<LinMap>,
}

impl GlobCertificate {
    pub fn all_green(&self) -> bool {
        self.gl1 && self.pushout && self.proper
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Globalization {
    pub comodule: GlobalComodule,
    /// `κ: Y → X⊗H`.
    pub kappa: LinMap,
    /// `ε_X: Y → X`.
    pub eps_x: LinMap,
    pub certificate: GlobCertificate,
}

/// `Y = ker((ρ⊗H) − (π⊗H)(X⊗Δ)) ⊆ X⊗H` with `δ_Y` the restriction of `X⊗Δ`.
pub fn globalize(d: &PartialComoduleDatum) -> Result<Globalization, GlobError> {
    let cert = certify(d)?;
    let n = d.coalgebra.dim;
    let y_space = cert.equalizer_apex;
    let kappa = y_space.inclusion();
    let restricted = &d.x_delta() * &kappa;
    let delta =
        solve(&tensor_id(&kappa, n), &restricted).map_err(|_| GlobError::CertificateFailure {
            reason: "(X⊗Δ)(Y) ⊄ Y⊗H",
            certificate: Box::new(GlobCertificate {
                equalizer_dim: y_space.dim(),
                gl1: false,
                pushout: false,
                proper: false,
                iso: None,
            }),
        })?;
    let comodule = GlobalComodule {
        coalgebra: d.coalgebra.clone(),
        dim: y_space.dim(),
        delta,
    };
    comodule.validate()?;
    let eps_x = &d.x_eps() * &kappa;

    let gl1 = eps_x.is_surjective()
        && &tensor_id(&eps_x, n) * &comodule.delta == kappa
        && check_morphism(&PartialComoduleDatum::global(&comodule), d, &eps_x).is_ok();
    let iso = pushout_iso(d, &eps_x, &kappa)?;
    let certificate = GlobCertificate {
        equalizer_dim: comodule.dim,
        gl1,
        pushout: iso.is_some(),
        proper: kappa.is_injective(),
        iso,
    };
    if !certificate.all_green() {
        return Err(GlobError::CertificateFailure {
            reason: "flag false on a valid geometric partial comodule",
            certificate: Box::new(certificate),
        });
    }
    Ok(Globalization {
        comodule,
        kappa,
        eps_x,
        certificate,
    })
}

/// Compute the pushout of `X ← Y → X⊗H` and exhibit an iso onto `X•H`
/// commuting with both legs, or `None`.
fn pushout_iso(
    d: &PartialComoduleDatum,
    eps_x: &LinMap,
    kappa: &LinMap,
) -> Result<Option<LinMap>, GlobError> {
    let po = pushout(eps_x, kappa)?;
    let Ok(to_bullet) = po.mediate(&d.rho, &d.pi) else {
        return Ok(None);
    };
    let Ok(from_bullet) = solve_factor(&d.pi, &po.cospan.right) else {
        return Ok(None);
    };
    let ok = &from_bullet * &d.rho == po.cospan.left
        && (&to_bullet * &from_bullet).is_identity()
        && (&from_bullet * &to_bullet).is_identity();
    Ok(ok.then_some(to_bullet))
}

/// A global comodule with a surjection onto `X`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cover {
    pub comodule: GlobalComodule,
    pub p: LinMap,
    pub proper: bool,
}

impl Cover {
    pub fn new(comodule: GlobalComodule, p: LinMap) -> Result<Self, GlobError> {
        comodule.validate()?;
        if p.cols() != comodule.dim || !p.is_surjective() {
            return Err(GpcError::NotEpi {
                rank: p.rank(),
                bullet_dim: p.rows(),
            }
            .into());
        }
        let proper = properness(&comodule, &p);
        Ok(Cover {
            comodule,
            p,
            proper,
        })
    }

    /// `(p⊗H)∘δ_Y: Y → X⊗H`.
    pub fn cogenerating_map(&self) -> LinMap {
        &tensor_id(&self.p, self.comodule.coalgebra.dim) * &self.comodule.delta
    }
}

/// Whether `(p⊗H)∘δ_Y` is injective.
pub fn properness(y: &GlobalComodule, p: &LinMap) -> bool {
    (&tensor_id(p, y.coalgebra.dim) * &y.delta).is_injective()
}

impl Globalization {
    pub fn as_cover(&self) -> Cover {
        Cover {
            comodule: self.comodule.clone(),
            p: self.eps_x.clone(),
            proper: properness(&self.comodule, &self.eps_x),
        }
    }
}

/// Globalize then induce back: the result is isomorphic to `d` via the
/// identity on `X`.
pub fn roundtrip_ind_gl(d: &PartialComoduleDatum) -> Result<GpcMorphism, GlobError> {
    let g = globalize(d)?;
    let back = induce_from_cover(&g.comodule, &g.eps_x)?;
    Ok(check_isomorphism(&back, d, &LinMap::identity(d.x_dim))?)
}

/// Comodule iso `φ: Y_c → Y_X` with `ε_X ∘ φ = p`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoverIso {
    pub phi: LinMap,
}

/// Induce from a proper cover then globalize: the result is isomorphic to the
/// cover.
pub fn roundtrip_gl_ind(c: &Cover) -> Result<CoverIso, GlobError> {
    let cogen = c.cogenerating_map();
    if let Some(w) = crate::exactla::kernel(&cogen)
        .basis_vectors()
        .into_iter()
        .next()
    {
        return Err(GlobError::NotProper { witness: w });
    }
    let d = induce_from_cover(&c.comodule, &c.p)?;
    let g = globalize(&d)?;
    let phi = solve(&g.kappa, &cogen).map_err(|_| GlobError::NoIso("cover does not land in Y"))?;
    if phi.inverse().is_none() {
        return Err(GlobError::NoIso("comparison map not invertible"));
    }
    if !c.comodule.is_morphism(&g.comodule, &phi) {
        return Err(GlobError::NoIso("comparison map not colinear"));
    }
    if &g.eps_x * &phi != c.p {
        return Err(GlobError::NoIso(
            "comparison map does not commute with projections",
        ));
    }
    Ok(CoverIso { phi })
}

/// A comodule `M` with a subspace `V` such that `δ(M) ∩ (V⊗H) = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComodulePair {
    pub comodule: GlobalComodule,
    pub v: Subspace,
}

impl ComodulePair {
    pub fn check(&self) -> Result<(), GlobError> {
        let n = self.comodule.coalgebra.dim;
        let image = crate::exactla::image(&self.comodule.delta);
        let v_h = crate::exactla::image(&tensor_id(&self.v.inclusion(), n));
        let meet = image.intersection(&v_h)?;
        match meet.basis_vectors().into_iter().next() {
            None => Ok(()),
            Some(witness) => Err(GlobError::ConditionViolated { witness }),
        }
    }
}

/// The datum induced on `M/V`.
pub fn from_pair(pair: &ComodulePair) -> Result<PartialComoduleDatum, GlobError> {
    pair.check()?;
    let q = crate::exactla::quotient_by(&pair.v);
    Ok(induce_from_cover(&pair.comodule, &q.proj)?)
}

/// `(Y_X, ker ε_X)`.
pub fn to_pair(d: &PartialComoduleDatum) -> Result<ComodulePair, GlobError> {
    let g = globalize(d)?;
    let v = crate::exactla::kernel(&g.eps_x);
    Ok(ComodulePair {
        comodule: g.comodule,
        v,
    })
}

/// `from_pair(to_pair(d)) ≅ d`, with the iso induced by `ε_X`.
pub fn pair_roundtrip(d: &PartialComoduleDatum) -> Result<GpcMorphism, GlobError> {
    let g = globalize(d)?;
    let pair = ComodulePair {
        v: crate::exactla::kernel(&g.eps_x),
        comodule: g.comodule.clone(),
    };
    let back = from_pair(&pair)?;
    let q = crate::exactla::quotient_by(&pair.v);
    let f = solve_factor(&q.proj, &g.eps_x)?;
    Ok(check_isomorphism(&back, d, &f)?)
}

/// The `kG`-comodule on `k^d` with basis vector `i` homogeneous of degree
/// `degrees[i]`.
pub fn graded_comodule(g: &FiniteGroup, degrees: &[usize]) -> GlobalComodule {
    let h = group_algebra(g);
    let n = g.order();
    let delta = LinMap::from_fn(degrees.len() * n, degrees.len(), |r, c| {
        rat((r == c * n + degrees[c]) as i64)
    });
    GlobalComodule {
        coalgebra: h.bialgebra.coalgebra,
        dim: degrees.len(),
        delta,
    }
}

/// A seeded proper cover over `kG`: a graded comodule of dimension at most
/// `max_y`, conjugated by a random invertible map, with a random surjection
/// resampled until `(p⊗H)∘δ` is injective.
pub fn random_proper_cover(g: &FiniteGroup, max_y: usize, rng: &mut SeededRng) -> Cover {
    use rand::Rng;
    let n = g.order();
    loop {
        let y_dim = rng.gen_range(1..=max_y);
        let degrees: Vec<usize> = (0..y_dim).map(|_| rng.gen_range(0..n)).collect();
        let graded = graded_comodule(g, &degrees);
        let x_dim = rng.gen_range(1..=y_dim);
        let p = random::surjection(rng, x_dim, y_dim);
        let conj = random::invertible(rng, y_dim);
        let inv = conj.inverse().expect("unit triangular factors");
        let delta = &(&tensor_id(&conj, n) * &graded.delta) * &inv;
        let comodule = GlobalComodule {
            dim: y_dim,
            coalgebra: graded.coalgebra,
            delta,
        };
        let p = &p * &inv;
        if properness(&comodule, &p) {
            return Cover {
                comodule,
                p,
                proper: true,
            };
        }
    }
}
