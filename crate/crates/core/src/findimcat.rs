//! Finite limits and colimits in finite-dimensional vector spaces, the tensor
//! index builders shared by every other module, and transpose duality.
//!
//! Tensor convention: the basis vector `e_i ⊗ f_j` of `A ⊗ B` has flat index
//! `i * dim(B) + j`. All mixed maps (`ρ ⊗ H`, `X ⊗ Δ`, flips) are built here or
//! with [`LinMap::kron`], which follows the same convention.

use serde::{Deserialize, Serialize};

use crate::exactla::{
    image, kernel, quotient_by, solve, solve_factor, LaError, LinMap, QuotientPresentation,
    Rational, Subspace,
};
use crate::random::{self, SeededRng};

/// The flip `τ_{A,B}: A ⊗ B → B ⊗ A`.
pub fn flip(a_dim: usize, b_dim: usize) -> LinMap {
    let n = a_dim * b_dim;
    let mut m = LinMap::zeros(n, n);
    for i in 0..a_dim {
        for j in 0..b_dim {
            m.set(
                j * a_dim + i,
                i * b_dim + j,
                Rational::from_integer(1.into()),
            );
        }
    }
    m
}

/// `id_n ⊗ f`.
pub fn id_tensor(n: usize, f: &LinMap) -> LinMap {
    LinMap::identity(n).kron(f)
}

/// `f ⊗ id_n`.
pub fn tensor_id(f: &LinMap, n: usize) -> LinMap {
    f.kron(&LinMap::identity(n))
}

fn mismatch(op: &'static str, expected: usize, found: usize) -> LaError {
    LaError::DimensionMismatch {
        op,
        expected,
        found,
    }
}

/// Two maps into a common apex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cospan {
    pub left: LinMap,
    pub right: LinMap,
}

impl Cospan {
    pub fn new(left: LinMap, right: LinMap) -> Result<Self, LaError> {
        if left.rows() != right.rows() {
            return Err(mismatch("cospan apex", left.rows(), right.rows()));
        }
        Ok(Cospan { left, right })
    }

    pub fn apex_dim(&self) -> usize {
        self.left.rows()
    }
}

/// Two maps out of a common apex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Span {
    pub left: LinMap,
    pub right: LinMap,
}

impl Span {
    pub fn new(left: LinMap, right: LinMap) -> Result<Self, LaError> {
        if left.cols() != right.cols() {
            return Err(mismatch("span apex", left.cols(), right.cols()));
        }
        Ok(Span { left, right })
    }

    pub fn apex_dim(&self) -> usize {
        self.left.cols()
    }
}

/// Pushout of `B ← A → C`, presented as `(B ⊕ C) / im(f ⊕ -g)`.
#[derive(Debug, Clone)]
pub struct Pushout {
    pub cospan: Cospan,
    pub quotient: QuotientPresentation,
}

impl Pushout {
    pub fn apex_dim(&self) -> usize {
        self.cospan.apex_dim()
    }

    /// The unique `u` with `u ∘ left = t1` and `u ∘ right = t2`. Fails when the
    /// test cospan does not coequalize the span.
    pub fn mediate(&self, t1: &LinMap, t2: &LinMap) -> Result<LinMap, LaError> {
        let joined = LinMap::hstack(&[t1, t2])?;
        solve_factor(&self.quotient.proj, &joined)
    }
}

pub fn pushout(f: &LinMap, g: &LinMap) -> Result<Pushout, LaError> {
    if f.cols() != g.cols() {
        return Err(mismatch("pushout span", f.cols(), g.cols()));
    }
    let (b, c) = (f.rows(), g.rows());
    let relations = image(&LinMap::vstack(&[f, &(-g)])?);
    let quotient = quotient_by(&relations);
    let left = quotient.proj.select_cols(0..b);
    let right = quotient.proj.select_cols(b..b + c);
    Ok(Pushout {
        cospan: Cospan { left, right },
        quotient,
    })
}

/// Pullback of `B → D ← C`, realized as `ker [f | -h] ⊆ B ⊕ C`.
#[derive(Debug, Clone)]
pub struct Pullback {
    pub span: Span,
    pub apex: Subspace,
}

impl Pullback {
    pub fn apex_dim(&self) -> usize {
        self.apex.dim()
    }

    /// The unique `u` with `left ∘ u = s1` and `right ∘ u = s2`.
    pub fn mediate(&self, s1: &LinMap, s2: &LinMap) -> Result<LinMap, LaError> {
        let joined = LinMap::vstack(&[s1, s2])?;
        solve(&self.apex.inclusion(), &joined)
    }
}

pub fn pullback(f: &LinMap, h: &LinMap) -> Result<Pullback, LaError> {
    if f.rows() != h.rows() {
        return Err(mismatch("pullback cospan", f.rows(), h.rows()));
    }
    let b = f.cols();
    let apex = kernel(&LinMap::hstack(&[f, &(-h)])?);
    let inc = apex.inclusion();
    let left = inc.select_rows(0..b);
    let right = inc.select_rows(b..b + h.cols());
    Ok(Pullback {
        span: Span { left, right },
        apex,
    })
}

#[derive(Debug, Clone)]
pub struct Equalizer {
    pub subspace: Subspace,
    pub inclusion: LinMap,
}

pub fn equalizer(f: &LinMap, g: &LinMap) -> Result<Equalizer, LaError> {
    let diff = f.checked_sub(g)?;
    let subspace = kernel(&diff);
    let inclusion = subspace.inclusion();
    Ok(Equalizer {
        subspace,
        inclusion,
    })
}

pub fn coequalizer(f: &LinMap, g: &LinMap) -> Result<QuotientPresentation, LaError> {
    let diff = f.checked_sub(g)?;
    Ok(quotient_by(&image(&diff)))
}

/// Which category a stored picture lives in. `Opposite` data carry the
/// transposes of their `Vect` maps, so they can be checked with the same code.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
pub enum Direction {
    #[default]
    #[serde(rename = "std")]
    Standard,
    #[serde(rename = "op")]
    Opposite,
}

/// Transpose duality `Vect ↔ Vectᵒᵖ`. Implementations transpose every matrix
/// and swap roles (cospan ↔ span, algebra ↔ coalgebra); applying it twice is
/// the identity.
pub trait Dualize {
    type Dual;

    fn dualize(&self) -> Self::Dual;
}

impl Dualize for LinMap {
    type Dual = LinMap;

    fn dualize(&self) -> LinMap {
        self.transpose()
    }
}

impl Dualize for Cospan {
    type Dual = Span;

    fn dualize(&self) -> Span {
        Span {
            left: self.left.transpose(),
            right: self.right.transpose(),
        }
    }
}

impl Dualize for Span {
    type Dual = Cospan;

    fn dualize(&self) -> Cospan {
        Cospan {
            left: self.left.transpose(),
            right: self.right.transpose(),
        }
    }
}

impl Dualize for Direction {
    type Dual = Direction;

    fn dualize(&self) -> Direction {
        match self {
            Direction::Standard => Direction::Opposite,
            Direction::Opposite => Direction::Standard,
        }
    }
}

/// Outcome of a sampled universal-property check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum UniversalCheck {
    Holds {
        samples: usize,
    },
    /// Sample `index` had no mediating map, or the legs were not jointly
    /// epimorphic (monomorphic) so mediators are not unique.
    Fails {
        index: usize,
        reason: String,
    },
}

impl UniversalCheck {
    pub fn holds(&self) -> bool {
        matches!(self, UniversalCheck::Holds { .. })
    }
}

/// Sampled universal property of a computed pushout of `(f, g)`: every test
/// cospan built from the left annihilator of `[f; -g]` factors uniquely.
pub fn check_pushout_universal(
    f: &LinMap,
    g: &LinMap,
    po: &Pushout,
    samples: usize,
    rng: &mut SeededRng,
) -> UniversalCheck {
    let legs = LinMap::hstack(&[&po.cospan.left, &po.cospan.right]).expect("legs share apex");
    if !legs.is_surjective() {
        return UniversalCheck::Fails {
            index: 0,
            reason: "legs not jointly epimorphic".into(),
        };
    }
    let stacked = LinMap::vstack(&[f, &(-g)]).expect("span shares domain");
    let annihilator = kernel(&stacked.transpose());
    let (b, c) = (f.rows(), g.rows());
    for index in 0..samples {
        let k = 1 + index % 3;
        let coeffs = random::matrix(rng, k, annihilator.dim());
        let w = &coeffs * annihilator.basis();
        let t1 = w.select_cols(0..b);
        let t2 = w.select_cols(b..b + c);
        match po.mediate(&t1, &t2) {
            Ok(u) if &u * &po.cospan.left == t1 && &u * &po.cospan.right == t2 => {}
            Ok(_) => {
                return UniversalCheck::Fails {
                    index,
                    reason: "mediator does not commute".into(),
                }
            }
            Err(e) => {
                return UniversalCheck::Fails {
                    index,
                    reason: e.to_string(),
                }
            }
        }
    }
    UniversalCheck::Holds { samples }
}

/// Sampled universal property of a computed pullback of `(f, h)`.
pub fn check_pullback_universal(
    f: &LinMap,
    h: &LinMap,
    pb: &Pullback,
    samples: usize,
    rng: &mut SeededRng,
) -> UniversalCheck {
    let legs = LinMap::vstack(&[&pb.span.left, &pb.span.right]).expect("legs share apex");
    if !legs.is_injective() {
        return UniversalCheck::Fails {
            index: 0,
            reason: "legs not jointly monomorphic".into(),
        };
    }
    let solutions = kernel(&LinMap::hstack(&[f, &(-h)]).expect("cospan shares codomain"));
    let b = f.cols();
    for index in 0..samples {
        let k = 1 + index % 3;
        let coeffs = random::matrix(rng, solutions.dim(), k);
        let z = &solutions.inclusion() * &coeffs;
        let s1 = z.select_rows(0..b);
        let s2 = z.select_rows(b..z.rows());
        match pb.mediate(&s1, &s2) {
            Ok(u) if &pb.span.left * &u == s1 && &pb.span.right * &u == s2 => {}
            Ok(_) => {
                return UniversalCheck::Fails {
                    index,
                    reason: "mediator does not commute".into(),
                }
            }
            Err(e) => {
                return UniversalCheck::Fails {
                    index,
                    reason: e.to_string(),
                }
            }
        }
    }
    UniversalCheck::Holds { samples }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::{rat, ratio};
    use crate::random::rng;

    fn m(rows: usize, cols: usize, e: &[i64]) -> LinMap {
        LinMap::from_i64(rows, cols, e)
    }

    #[test]
    fn flip_swaps_factors() {
        let t = flip(2, 3);
        // e_1 ⊗ f_2 (index 1*3+2 = 5) goes to f_2 ⊗ e_1 (index 2*2+1 = 5)
        // e_0 ⊗ f_1 (index 1) goes to f_1 ⊗ e_0 (index 2)
        assert_eq!(t.get(2, 1), &rat(1));
        assert!((&flip(3, 2) * &t).is_identity());
        let a = m(2, 2, &[1, 2, 3, 4]);
        let b = m(3, 3, &[1, 0, 1, 0, 2, 0, 5, 0, 1]);
        assert_eq!(&flip(2, 3) * &a.kron(&b), &b.kron(&a) * &flip(2, 3));
    }

    #[test]
    fn pushout_along_identity() {
        let g = m(3, 2, &[1, 2, 0, 1, 4, 4]);
        let po = pushout(&LinMap::identity(2), &g).unwrap();
        assert_eq!(po.apex_dim(), 3);
        assert!(po.cospan.right.inverse().is_some());
    }

    #[test]
    fn pushout_of_zero_object_is_direct_sum() {
        let po = pushout(&LinMap::zeros(2, 0), &LinMap::zeros(3, 0)).unwrap();
        assert_eq!(po.apex_dim(), 5);
    }

    #[test]
    fn one_dimensional_pushout() {
        let f = m(1, 1, &[1]);
        let g = m(1, 1, &[2]);
        let po = pushout(&f, &g).unwrap();
        assert_eq!(po.apex_dim(), 1);
        // legs are [2] and [1] here, a rescaling of ([1], [1/2])
        assert_eq!(&po.cospan.left * &f, &po.cospan.right * &g);
        let t2 = LinMap::new(1, 1, vec![ratio(1, 2)]).unwrap();
        let u = po.mediate(&LinMap::identity(1), &t2).unwrap();
        assert_eq!(&u * &po.cospan.left, LinMap::identity(1));
        assert_eq!(&u * &po.cospan.right, t2);
        // a cospan that does not coequalize has no mediator
        assert!(po
            .mediate(&LinMap::identity(1), &LinMap::identity(1))
            .is_err());
    }

    #[test]
    fn pullback_examples() {
        let b = m(2, 2, &[1, 1, 0, 1]);
        let pb = pullback(&b, &LinMap::identity(2)).unwrap();
        assert_eq!(pb.apex_dim(), 2);
        assert!(pb.span.left.inverse().is_some());

        let pb = pullback(&LinMap::zeros(1, 2), &LinMap::zeros(1, 3)).unwrap();
        assert_eq!(pb.apex_dim(), 5);

        let pb = pullback(&m(1, 2, &[1, 0]), &m(1, 1, &[1])).unwrap();
        assert_eq!(pb.apex_dim(), 2);
    }

    #[test]
    fn equalizer_and_coequalizer_examples() {
        let f = m(2, 2, &[1, 0, 0, 0]);
        let id = LinMap::identity(2);
        assert_eq!(equalizer(&f, &f).unwrap().subspace, Subspace::full(2));
        assert!(equalizer(&id, &LinMap::zeros(2, 2))
            .unwrap()
            .subspace
            .is_zero());
        let e = equalizer(&f, &id).unwrap();
        assert_eq!(e.subspace, Subspace::span(2, &[vec![rat(1), rat(0)]]));

        assert_eq!(coequalizer(&f, &f).unwrap().proj, LinMap::identity(2));
        assert_eq!(
            coequalizer(&id, &LinMap::zeros(2, 2))
                .unwrap()
                .quotient_dim(),
            0
        );
        let rank_one = m(3, 2, &[1, 2, 2, 4, 0, 0]);
        assert_eq!(
            coequalizer(&rank_one, &LinMap::zeros(3, 2))
                .unwrap()
                .quotient_dim(),
            2
        );
        assert!(equalizer(&f, &LinMap::identity(3)).is_err());
    }

    #[test]
    fn dualize_is_an_involution() {
        assert!(LinMap::identity(3).dualize().is_identity());
        let c = Cospan::new(m(2, 1, &[1, 2]), m(2, 3, &[1, 0, 1, 0, 1, 1])).unwrap();
        assert_eq!(c.dualize().dualize(), c);
        assert_eq!(Direction::Standard.dualize().dualize(), Direction::Standard);
    }

    #[test]
    fn dual_of_pushout_is_pullback() {
        let f = m(2, 2, &[1, 0, 1, 1]);
        let g = m(3, 2, &[1, 2, 0, 1, 1, 3]);
        let po = pushout(&f, &g).unwrap();
        let span = po.cospan.dualize();
        let pb = pullback(&f.transpose(), &g.transpose()).unwrap();
        assert_eq!(span.apex_dim(), pb.apex_dim());
        // the dual legs form a cone over the transposed cospan, so they factor
        // through the computed pullback; the factor is invertible
        let u = pb.mediate(&span.left, &span.right).unwrap();
        let inv = u.inverse().expect("comparison map is an isomorphism");
        assert_eq!(&span.left * &inv, pb.span.left);
    }

    #[test]
    fn pushout_of_mono_is_pullback() {
        // a mono leg in the span makes the pushout square a pullback square
        let mut r = rng(11);
        for _ in 0..10 {
            let f = random::matrix(&mut r, 4, 2);
            let g = random::matrix(&mut r, 3, 2);
            if !f.is_injective() {
                continue;
            }
            let po = pushout(&f, &g).unwrap();
            let pb = pullback(&po.cospan.left, &po.cospan.right).unwrap();
            assert_eq!(pb.apex_dim(), 2);
            let comparison = pb.mediate(&f, &g).unwrap();
            assert!(comparison.inverse().is_some());
        }
    }

    #[test]
    fn sampled_universal_properties() {
        let mut r = rng(7);
        for _ in 0..8 {
            let f = random::sparse_matrix(&mut r, 3, 3);
            let g = random::sparse_matrix(&mut r, 2, 3);
            let po = pushout(&f, &g).unwrap();
            assert!(check_pushout_universal(&f, &g, &po, 4, &mut r).holds());
            // rank-nullity on the apex
            let rank = LinMap::vstack(&[&f, &g]).unwrap().rank();
            assert_eq!(po.apex_dim(), 5 - rank);

            let h = random::sparse_matrix(&mut r, 3, 2);
            let pb = pullback(&f, &h).unwrap();
            assert!(check_pullback_universal(&f, &h, &pb, 4, &mut r).holds());
            let rank = LinMap::hstack(&[&f, &h]).unwrap().rank();
            assert_eq!(pb.apex_dim(), 5 - rank);
        }
    }

    #[test]
    fn dual_of_equalizer_is_coequalizer() {
        let f = m(3, 2, &[1, 0, 0, 1, 1, 1]);
        let g = m(3, 2, &[1, 0, 0, 0, 1, 0]);
        let eq = equalizer(&f, &g).unwrap();
        let co = coequalizer(&f.transpose(), &g.transpose()).unwrap();
        // the cokernel of (f - g)ᵀ is dual to the kernel of f - g
        assert_eq!(co.quotient_dim(), eq.subspace.dim());
        assert_eq!(kernel(&co.proj), image(&(&f - &g).transpose()));
    }
}
