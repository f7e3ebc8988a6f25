//! Algebraic partial comodules over a Hopf algebra: the three axioms as
//! matrix identities, the structure-constant presentation of `Q`, and
//! globalization through the induced geometric datum. Also the truncated
//! polynomial fixture over Sweedler's algebra.

use serde::Serialize;
use thiserror::Error;

use crate::exactla::{image, quotient_by, rat, ratio, LinMap, Rational, Subspace};
use crate::findimcat::id_tensor;
use crate::globalization::{globalize, GlobError, Globalization};
use crate::gpc::{induce_from_nc, GpcError, NcComodule, PartialComoduleDatum};
use crate::structures::{sweedler_h4, HopfAlgebra};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ApcAxiom {
    #[serde(rename = "APC1")]
    Counit,
    #[serde(rename = "APC2")]
    LeftTwisted,
    #[serde(rename = "APC3")]
    RightTwisted,
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ApcError {
    #[error("malformed: {0}")]
    Malformed(String),
    #[error("axiom {axiom:?} fails at basis index {index}")]
    Axiom { axiom: ApcAxiom, index: usize },
    #[error(transparent)]
    Gpc(#[from] GpcError),
    #[error(transparent)]
    Glob(#[from] GlobError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraicPartialComodule {
    pub hopf: HopfAlgebra,
    pub m_dim: usize,
    pub coaction: LinMap,
}

/// The six sides of the three axioms, each `M → M⊗H⊗H` (or `M → M` for APC1).
struct ApcSides {
    apc1: LinMap,
    apc2: (LinMap, LinMap),
    apc3: (LinMap, LinMap),
}

impl AlgebraicPartialComodule {
    pub fn new(hopf: HopfAlgebra, coaction: LinMap) -> Result<Self, ApcError> {
        let m_dim = coaction.cols();
        if coaction.rows() != m_dim * hopf.dim() {
            return Err(ApcError::Malformed("∂ must be (m·n)×m".into()));
        }
        Ok(AlgebraicPartialComodule {
            hopf,
            m_dim,
            coaction,
        })
    }

    /// Coefficient `b^ℓ_{p,i}` of `m_p ⊗ h_i` in `∂(m_ℓ)`.
    pub fn b(&self, l: usize, p: usize, i: usize) -> &Rational {
        self.coaction.get(p * self.hopf.dim() + i, l)
    }

    fn sides(&self) -> ApcSides {
        let (m, n) = (self.m_dim, self.hopf.dim());
        let im = LinMap::identity(m);
        let ih = LinMap::identity(n);
        let delta = &self.hopf.coalgebra().delta;
        let mu = &self.hopf.algebra().mu;
        let s = &self.hopf.antipode;
        let d = &self.coaction;
        let dd = &d.kron(&ih) * d;
        let d_hh = d.kron(&LinMap::identity(n * n));
        // innermost leg first: the Δ or ∂ insertion, then S, then μ
        let m_h_mu = im.kron(&ih.kron(mu));
        let m_h_s_h = im.kron(&ih.kron(&s.kron(&ih)));
        let m_delta_h = im.kron(&delta.kron(&ih));
        let apc2 = (
            &(&(&m_h_mu * &m_h_s_h) * &m_delta_h) * &dd,
            &(&(&m_h_mu * &m_h_s_h) * &d_hh) * &dd,
        );
        let m_mu_h = im.kron(&mu.kron(&ih));
        let m_s_h_h = im.kron(&s.kron(&LinMap::identity(n * n)));
        let m_h_delta = im.kron(&ih.kron(delta));
        let apc3 = (
            &(&(&m_mu_h * &m_s_h_h) * &m_h_delta) * &dd,
            &(&(&m_mu_h * &m_s_h_h) * &d_hh) * &dd,
        );
        let apc1 = &id_tensor(m, &self.hopf.coalgebra().eps) * d;
        ApcSides { apc1, apc2, apc3 }
    }

    pub fn check(&self) -> Result<(), ApcError> {
        self.check_columns(0..self.m_dim)
    }

    /// Check the axioms on the basis vectors in `columns` only.
    pub fn check_columns(&self, columns: std::ops::Range<usize>) -> Result<(), ApcError> {
        let s = self.sides();
        let id = LinMap::identity(self.m_dim);
        let cols = |x: &LinMap| x.select_cols(columns.clone());
        let first = |a: &LinMap, b: &LinMap| a.first_difference(b).map(|(_, c)| c + columns.start);
        if let Some(index) = first(&cols(&s.apc1), &cols(&id)) {
            return Err(ApcError::Axiom {
                axiom: ApcAxiom::Counit,
                index,
            });
        }
        if let Some(index) = first(&cols(&s.apc2.0), &cols(&s.apc2.1)) {
            return Err(ApcError::Axiom {
                axiom: ApcAxiom::LeftTwisted,
                index,
            });
        }
        if let Some(index) = first(&cols(&s.apc3.0), &cols(&s.apc3.1)) {
            return Err(ApcError::Axiom {
                axiom: ApcAxiom::RightTwisted,
                index,
            });
        }
        Ok(())
    }

    /// `Q` from the structure constants: for every `ℓ` and slot `t`,
    /// `Σ b^ℓ_{p,t} b^p_{q,k} m_q⊗h_k − Σ b^ℓ_{q,p} a^p_{k,t} m_q⊗h_k`.
    pub fn build_q(&self) -> Subspace {
        self.build_q_for(0..self.m_dim)
    }

    pub fn build_q_for(&self, basis: std::ops::Range<usize>) -> Subspace {
        let (m, n) = (self.m_dim, self.hopf.dim());
        let coalg = self.hopf.coalgebra();
        let mut vectors = Vec::new();
        for l in basis {
            for t in 0..n {
                let mut v = vec![rat(0); m * n];
                for q in 0..m {
                    for k in 0..n {
                        let mut acc = rat(0);
                        for p in 0..m {
                            acc += self.b(l, p, t) * self.b(p, q, k);
                        }
                        for p in 0..n {
                            acc -= self.b(l, q, p) * coalg.coeff(p, k, t);
                        }
                        v[q * n + k] = acc;
                    }
                }
                vectors.push(v);
            }
        }
        Subspace::span(m * n, &vectors)
    }

    pub fn as_nc(&self) -> NcComodule {
        NcComodule {
            coalgebra: self.hopf.coalgebra().clone(),
            x_dim: self.m_dim,
            coaction: self.coaction.clone(),
        }
    }
}

/// Induce the geometric datum and globalize it. Axiom failures beyond
/// counitality do not block the construction.
pub fn globalize_apc(a: &AlgebraicPartialComodule) -> Result<Globalization, ApcError> {
    let d = induce_from_nc(&a.as_nc())?;
    Ok(globalize(&d)?)
}

/// Which class `ρ(zⁿ)` is taken to be in the truncated polynomial fixture.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RhoConvention {
    /// `ρ = π∘∂`, which on the relations below gives `class(zⁿ⊗1)`.
    Induced,
    /// `ρ(zⁿ) = class(zⁿ⊗g)`.
    Grouplike,
}

/// The coaction `zⁿ ↦ z^{n+1}⊗y + zⁿ⊗(1+g)/2` on `span{1, z, …, z^K}`, with
/// the out-of-range term dropped in top degree. Only degrees well below `K`
/// satisfy the axioms.
pub fn sweedler_polynomial_coaction(k: usize) -> AlgebraicPartialComodule {
    let h = sweedler_h4();
    let m = k + 1;
    let mut d = LinMap::zeros(m * 4, m);
    for deg in 0..m {
        d.set(deg * 4, deg, ratio(1, 2));
        d.set(deg * 4 + 1, deg, ratio(1, 2));
        if deg + 1 < m {
            d.set((deg + 1) * 4 + 2, deg, rat(1));
        }
    }
    AlgebraicPartialComodule::new(h, d).expect("shapes")
}

/// The relation `z^{n+1}⊗y − zⁿ⊗(1−g)/2` in `X_N⊗H` with `X_N` of dimension
/// `N + 1`.
pub fn sweedler_relation(big_n: usize, deg: usize) -> Vec<Rational> {
    let mut v = vec![rat(0); (big_n + 1) * 4];
    v[(deg + 1) * 4 + 2] = rat(1);
    v[deg * 4] = ratio(-1, 2);
    v[deg * 4 + 1] = ratio(1, 2);
    v
}

/// The truncated datum `(X_N, X_N⊗H/Q_N, π, ρ)` with
/// `Q_N = span{z^{n+1}⊗y − zⁿ⊗(1−g)/2 : n < N}`.
pub fn sweedler_truncation(big_n: usize, convention: RhoConvention) -> PartialComoduleDatum {
    let h = sweedler_h4();
    let m = big_n + 1;
    let relations: Vec<Vec<Rational>> = (0..big_n).map(|n| sweedler_relation(big_n, n)).collect();
    let q = quotient_by(&Subspace::span(m * 4, &relations));
    let slot = match convention {
        RhoConvention::Induced => 0,
        RhoConvention::Grouplike => 1,
    };
    let lift = LinMap::from_fn(m * 4, m, |r, c| rat((r == c * 4 + slot) as i64));
    let rho = &q.proj * &lift;
    PartialComoduleDatum::new(h.coalgebra().clone(), q.proj, rho).expect("projection is surjective")
}

pub fn globalize_truncation(
    big_n: usize,
    convention: RhoConvention,
) -> Result<Globalization, ApcError> {
    Ok(globalize(&sweedler_truncation(big_n, convention))?)
}

/// Number of degrees `n ≤ N` with `zⁿ⊗g ∈ Y`. Since `δ_Y` restricts `X⊗Δ`,
/// each such vector is grouplike in `Y`.
pub fn grouplike_count(g: &Globalization, x_dim: usize) -> usize {
    let y = image(&g.kappa);
    (0..x_dim)
        .filter(|&deg| {
            let mut v = vec![rat(0); x_dim * 4];
            v[deg * 4 + 1] = rat(1);
            y.contains(&v)
        })
        .count()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::globalization::GlobalComodule;
    use crate::gpc::{certify, random_nc, restrict};

    #[test]
    fn global_comodule_is_algebraic() {
        let h = sweedler_h4();
        let y = GlobalComodule::regular(h.coalgebra());
        let a = AlgebraicPartialComodule::new(h, y.delta.clone()).unwrap();
        a.check().unwrap();
        assert!(a.build_q().is_zero());
        assert_eq!(globalize_apc(&a).unwrap().comodule.dim, 4);
    }

    #[test]
    fn mutated_coaction_fails() {
        let mut a = sweedler_polynomial_coaction(6);
        a.check_columns(0..3).unwrap();
        let v = a.coaction.get(4 + 3, 1) + rat(1);
        a.coaction.set(4 + 3, 1, v);
        assert!(a.check_columns(0..3).is_err());
    }

    #[test]
    fn q_matches_slices() {
        let a = sweedler_polynomial_coaction(6);
        let nc = a.as_nc();
        assert_eq!(a.build_q(), nc.defect_slices());
        // generators from degrees ℓ ≤ K−2 are the stated relations in degrees ≤ K−1
        let interior = a.build_q_for(0..5);
        let expected: Vec<Vec<Rational>> = (0..6).map(|n| sweedler_relation(6, n)).collect();
        assert_eq!(interior, Subspace::span(28, &expected));
    }

    #[test]
    fn truncation_conventions() {
        for big_n in 2..=4 {
            let induced = sweedler_truncation(big_n, RhoConvention::Induced);
            certify(&induced).unwrap();
            let g = globalize(&induced).unwrap();
            assert_eq!(g.comodule.dim, 2 * big_n + 1);
            assert_eq!(grouplike_count(&g, big_n + 1), 0);
            let stated = sweedler_truncation(big_n, RhoConvention::Grouplike);
            assert!(certify(&stated).is_err());
            assert!(globalize_truncation(big_n, RhoConvention::Grouplike).is_err());
        }
    }

    #[test]
    fn single_degrees_are_one_dimensional_subcomodules() {
        for convention in [RhoConvention::Induced, RhoConvention::Grouplike] {
            let d = sweedler_truncation(4, convention);
            for deg in 0..=4 {
                let mut v = vec![rat(0); 5];
                v[deg] = rat(1);
                let sub = restrict(&d, &Subspace::span(5, &[v])).unwrap();
                assert_eq!(sub.x_dim, 1);
                certify(&sub).unwrap();
            }
        }
    }

    #[test]
    fn interior_degrees_satisfy_axioms() {
        let a = sweedler_polynomial_coaction(8);
        a.check_columns(0..6).unwrap();
    }

    #[test]
    fn random_coactions_over_h4() {
        let h = sweedler_h4();
        let mut rng = crate::random::rng(11);
        for m in 1..=3 {
            for _ in 0..4 {
                let nc = random_nc(h.coalgebra(), m, &mut rng);
                let a = AlgebraicPartialComodule::new(h.clone(), nc.coaction.clone()).unwrap();
                assert_eq!(a.build_q(), nc.defect_slices());
                assert!(globalize_apc(&a).unwrap().certificate.all_green());
            }
        }
    }
}
