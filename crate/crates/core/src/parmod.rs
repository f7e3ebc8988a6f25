//! Partial modules over a Hopf algebra, viewed as geometric partial comodules
//! in the opposite category; the standard dilation inside `Hom(H, M)`; partial
//! representations of finite groups and the two presentations `S` and `Z` of
//! their globalization kernel.
//!
//! An action `λ: H⊗M → M` is stored as an `m × (n·m)` matrix with `h_a ⊗ e_i`
//! at column `a * m + i`.

use serde::Serialize;
use thiserror::Error;

use crate::exactla::{
    image, kernel, preimage, rat, solve_factor, LaError, LinMap, Rational, Subspace,
};
use crate::findimcat::{flip, Direction, Dualize};
use crate::globalization::{globalize, GlobError};
use crate::gpc::PartialComoduleDatum;
use crate::random::{self, SeededRng};
use crate::structures::{group_algebra, FiniteGroup, HopfAlgebra};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum PmAxiom {
    #[serde(rename = "PM1")]
    Unit,
    #[serde(rename = "PM2")]
    LeftTwisted,
    #[serde(rename = "PM3")]
    RightTwisted,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum PrAxiom {
    #[serde(rename = "PR1")]
    Identity,
    #[serde(rename = "PR2")]
    Left,
    #[serde(rename = "PR3")]
    Right,
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ParmodError {
    #[error("malformed: {0}")]
    Malformed(String),
    #[error("partial module axiom {axiom:?} fails at h = {h}, k = {k}")]
    PartialModule { axiom: PmAxiom, h: usize, k: usize },
    #[error("partial representation axiom {axiom:?} fails at g = {g}, h = {h}")]
    PartialRep { axiom: PrAxiom, g: usize, h: usize },
    #[error("dilation check failed: {0}")]
    Dilation(&'static str),
    #[error("dilation and globalization disagree: {0}")]
    Crosscheck(&'static str),
    #[error(transparent)]
    Glob(#[from] GlobError),
    #[error(transparent)]
    La(#[from] LaError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialModule {
    pub hopf: HopfAlgebra,
    pub m_dim: usize,
    pub lambda: LinMap,
}

/// `Σ_i v_i A_i` for a coordinate vector `v`.
fn combine(ops: &[LinMap], v: &[Rational], dim: usize) -> LinMap {
    let mut out = LinMap::zeros(dim, dim);
    for (c, op) in v.iter().zip(ops) {
        if *c != rat(0) {
            out = &out + &op.scale(c);
        }
    }
    out
}

impl PartialModule {
    pub fn new(hopf: HopfAlgebra, lambda: LinMap) -> Result<Self, ParmodError> {
        let m_dim = lambda.rows();
        if lambda.cols() != hopf.dim() * m_dim {
            return Err(ParmodError::Malformed("λ must be m × (n·m)".into()));
        }
        Ok(PartialModule {
            hopf,
            m_dim,
            lambda,
        })
    }

    /// Global module from one matrix per basis element of `H`.
    pub fn from_operators(hopf: HopfAlgebra, ops: &[LinMap]) -> Result<Self, ParmodError> {
        let refs: Vec<&LinMap> = ops.iter().collect();
        let lambda = LinMap::hstack(&refs)?;
        Self::new(hopf, lambda)
    }

    /// `h_a · -` as an `m × m` matrix.
    pub fn operator(&self, a: usize) -> LinMap {
        let m = self.m_dim;
        self.lambda.select_cols(a * m..(a + 1) * m)
    }

    pub fn operators(&self) -> Vec<LinMap> {
        (0..self.hopf.dim()).map(|a| self.operator(a)).collect()
    }

    /// `v · -` for a coordinate vector `v` of `H`.
    pub fn operator_of(&self, v: &[Rational]) -> LinMap {
        combine(&self.operators(), v, self.m_dim)
    }

    pub fn check(&self) -> Result<(), ParmodError> {
        let n = self.hopf.dim();
        let m = self.m_dim;
        let ops = self.operators();
        let alg = self.hopf.algebra();
        let coalg = self.hopf.coalgebra();
        let s = &self.hopf.antipode;
        let unit = alg.unit.column(0);
        if !self.operator_of(&unit).is_identity() {
            return Err(ParmodError::PartialModule {
                axiom: PmAxiom::Unit,
                h: 0,
                k: 0,
            });
        }
        let op = |v: &[Rational]| combine(&ops, v, m);
        // twisted[k] = Σ a^k_{jl} (j, S(h_l)) pairs
        for k in 0..n {
            let mut terms: Vec<(usize, Vec<Rational>, Rational)> = Vec::new();
            for j in 0..n {
                for l in 0..n {
                    let c = coalg.coeff(k, j, l);
                    if *c != rat(0) {
                        terms.push((j, s.column(l), c.clone()));
                    }
                }
            }
            for h in 0..n {
                let mut lhs2 = LinMap::zeros(m, m);
                let mut rhs2 = LinMap::zeros(m, m);
                let mut lhs3 = LinMap::zeros(m, m);
                let mut rhs3 = LinMap::zeros(m, m);
                for (j, s_l, c) in &terms {
                    let l_s = op(s_l);
                    // PM2: h·(k1·(S(k2)·m)) = (h k1)·(S(k2)·m)
                    lhs2 = &lhs2 + &(&(&ops[h] * &ops[*j]) * &l_s).scale(c);
                    rhs2 = &rhs2 + &(&op(&alg.product(h, *j)) * &l_s).scale(c);
                    // PM3: k1·(S(k2)·(h·m)) = k1·(S(k2)h·m)
                    lhs3 = &lhs3 + &(&(&ops[*j] * &l_s) * &ops[h]).scale(c);
                    let s_l_h = alg.mu.apply(&tensor_vec(s_l, &unit_vec(n, h)));
                    rhs3 = &rhs3 + &(&ops[*j] * &op(&s_l_h)).scale(c);
                }
                if lhs2 != rhs2 {
                    return Err(ParmodError::PartialModule {
                        axiom: PmAxiom::LeftTwisted,
                        h,
                        k,
                    });
                }
                if lhs3 != rhs3 {
                    return Err(ParmodError::PartialModule {
                        axiom: PmAxiom::RightTwisted,
                        h,
                        k,
                    });
                }
            }
        }
        Ok(())
    }

    /// `H•M = { w ∈ H⊗M : k·λ(w) = λ((k⊗M) w) for all k }`.
    pub fn bullet_subspace(&self) -> Subspace {
        let n = self.hopf.dim();
        let m = self.m_dim;
        let alg = self.hopf.algebra();
        let blocks: Vec<LinMap> = (0..n)
            .map(|k| {
                let lhs = &self.operator(k) * &self.lambda;
                let rhs = &self.lambda * &alg.left_mult(k).kron(&LinMap::identity(m));
                &lhs - &rhs
            })
            .collect();
        let refs: Vec<&LinMap> = blocks.iter().collect();
        kernel(&LinMap::vstack(&refs).expect("blocks share width"))
    }

    /// Conjugate by an invertible `P`: `λ' = P λ (H⊗P⁻¹)`.
    pub fn conjugate(&self, p: &LinMap) -> PartialModule {
        let inv = p.inverse().expect("conjugating matrix is invertible");
        let lambda = &(p * &self.lambda) * &LinMap::identity(self.hopf.dim()).kron(&inv);
        PartialModule {
            hopf: self.hopf.clone(),
            m_dim: self.m_dim,
            lambda,
        }
    }

    pub fn direct_sum(&self, other: &PartialModule) -> PartialModule {
        let ops: Vec<LinMap> = self
            .operators()
            .iter()
            .zip(other.operators())
            .map(|(a, b)| a.direct_sum(&b))
            .collect();
        PartialModule::from_operators(self.hopf.clone(), &ops).expect("shapes agree")
    }
}

fn unit_vec(n: usize, i: usize) -> Vec<Rational> {
    (0..n).map(|j| rat((i == j) as i64)).collect()
}

fn tensor_vec(x: &[Rational], y: &[Rational]) -> Vec<Rational> {
    x.iter()
        .flat_map(|a| y.iter().map(move |b| a * b))
        .collect()
}

/// The cospan picture of `H•M ↪ H⊗M`, `H•M → M` after transposition. The
/// coalgebra is the transpose of the opposite multiplication, which makes the
/// transposed left action coassociative in `X⊗H` ordering.
pub fn to_opposite_datum(pm: &PartialModule) -> PartialComoduleDatum {
    let n = pm.hopf.dim();
    let m = pm.m_dim;
    let bullet = pm.bullet_subspace();
    let iota = bullet.inclusion();
    let coalgebra = pm.hopf.algebra().opposite().dualize();
    let pi = &iota.transpose() * &flip(m, n);
    let rho = (&pm.lambda * &iota).transpose();
    PartialComoduleDatum {
        coalgebra,
        x_dim: m,
        bullet_dim: bullet.dim(),
        pi,
        rho,
        direction: Direction::Opposite,
    }
}

/// A global module `N` with idempotent `T`, `θ: M → N` and `ϖ: N → M`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Dilation {
    pub dim: usize,
    /// `h_a ▷ -` on `N`, one matrix per basis element.
    pub action: Vec<LinMap>,
    pub t: LinMap,
    pub theta: LinMap,
    pub varpi: LinMap,
    /// `N` inside `Hom(H, M)`, coordinates `f(h_c)_i` at `c * m + i`.
    pub span: Subspace,
}

impl Dilation {
    /// `H⊗N → N`, columns `a * dim + i`.
    pub fn action_map(&self) -> LinMap {
        let refs: Vec<&LinMap> = self.action.iter().collect();
        LinMap::hstack(&refs).expect("action blocks share height")
    }
}

/// The `H`-submodule of `Hom(H, M)` generated by `j(m) = (h ↦ h·m)`, with all
/// dilation identities verified.
pub fn standard_dilation(pm: &PartialModule) -> Result<Dilation, ParmodError> {
    let n = pm.hopf.dim();
    let m = pm.m_dim;
    let alg = pm.hopf.algebra();
    let ambient = n * m;
    let ops = pm.operators();
    let j_refs: Vec<&LinMap> = ops.iter().collect();
    let j = LinMap::vstack(&j_refs)?;
    // (h_a ▷ f)(h_c) = f(h_c h_a)
    let translations: Vec<LinMap> = (0..n)
        .map(|a| {
            LinMap::from_fn(n, n, |c, r| alg.coeff(r, c, a).clone()).kron(&LinMap::identity(m))
        })
        .collect();
    let mut span = image(&j);
    loop {
        let inc = span.inclusion();
        let mut next = span.clone();
        for r in &translations {
            next = next.sum(&image(&(r * &inc)))?;
        }
        if next.dim() > ambient {
            return Err(ParmodError::Dilation("closure overflow"));
        }
        if next.dim() == span.dim() {
            break;
        }
        span = next;
    }
    let inc = span.inclusion();
    let coords = span.coordinate_map();
    let action: Vec<LinMap> = translations.iter().map(|r| &(&coords * r) * &inc).collect();
    let theta = &coords * &j;
    let unit = alg.unit.column(0);
    let ev1 = LinMap::hstack(
        &unit
            .iter()
            .map(|u| LinMap::identity(m).scale(u))
            .collect::<Vec<_>>()
            .iter()
            .collect::<Vec<_>>(),
    )?;
    let varpi = &ev1 * &inc;
    let t = &theta * &varpi;
    let d = Dilation {
        dim: span.dim(),
        action,
        t,
        theta,
        varpi,
        span,
    };
    verify_dilation(pm, &d)?;
    Ok(d)
}

/// Check every dilation identity, properness and minimality.
pub fn verify_dilation(pm: &PartialModule, d: &Dilation) -> Result<(), ParmodError> {
    let n = pm.hopf.dim();
    let t = &d.t;
    if &(t * t) != t {
        return Err(ParmodError::Dilation("T² ≠ T"));
    }
    if !(&d.varpi * &d.theta).is_identity() || image(t) != image(&d.theta) {
        return Err(ParmodError::Dilation("θ is not an iso onto T(N)"));
    }
    let act = |v: &[Rational]| combine(&d.action, v, d.dim);
    let coalg = pm.hopf.coalgebra();
    let s = &pm.hopf.antipode;
    for h in 0..n {
        let mut lhs = LinMap::zeros(d.dim, d.dim);
        let mut rhs = LinMap::zeros(d.dim, d.dim);
        for j in 0..n {
            for l in 0..n {
                let c = coalg.coeff(h, j, l);
                if *c == rat(0) {
                    continue;
                }
                let s_l = act(&s.column(l));
                lhs = &lhs + &(&(&(t * &d.action[j]) * t) * &s_l).scale(c);
                rhs = &rhs + &(&(&(&d.action[j] * t) * &s_l) * t).scale(c);
            }
        }
        if lhs != rhs {
            return Err(ParmodError::Dilation("dilation identity"));
        }
        if &d.theta * &pm.operator(h) != &(t * &d.action[h]) * &d.theta {
            return Err(ParmodError::Dilation("θ(h·m) ≠ T(h ▷ θ(m))"));
        }
    }
    // proper: N is generated by θ(M)
    let mut generated = image(&d.theta);
    loop {
        let inc = generated.inclusion();
        let mut next = generated.clone();
        for a in &d.action {
            next = next.sum(&image(&(a * &inc)))?;
        }
        if next.dim() == generated.dim() {
            break;
        }
        generated = next;
    }
    if generated.dim() != d.dim {
        return Err(ParmodError::Dilation("not proper"));
    }
    // minimal: the largest submodule inside ker T is zero
    let mut w = kernel(t);
    loop {
        let mut next = w.clone();
        for a in &d.action {
            next = next.intersection(&preimage(a, &w)?)?;
        }
        if next.dim() == w.dim() {
            break;
        }
        w = next;
    }
    if !w.is_zero() {
        return Err(ParmodError::Dilation("not minimal"));
    }
    Ok(())
}

/// Explicit module iso `σ: Y* → N` between the transposed globalization of the
/// opposite datum and the standard dilation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DilationIso {
    pub globalization_dim: usize,
    pub dilation_dim: usize,
    pub sigma: LinMap,
}

pub fn crosscheck_dilation_globalization(pm: &PartialModule) -> Result<DilationIso, ParmodError> {
    let n = pm.hopf.dim();
    let m = pm.m_dim;
    let datum = to_opposite_datum(pm);
    let g = globalize(&datum)?;
    let dil = standard_dilation(pm)?;
    let y = g.comodule.dim;
    // σ ∘ κᵀ ∘ τ_{H,M} = act_N ∘ (H⊗θ)
    let through = &g.kappa.transpose() * &flip(n, m);
    let target = &dil.action_map() * &LinMap::identity(n).kron(&dil.theta);
    let sigma = solve_factor(&through, &target)
        .map_err(|_| ParmodError::Crosscheck("no comparison map"))?;
    if sigma.inverse().is_none() {
        return Err(ParmodError::Crosscheck("comparison map not invertible"));
    }
    if &sigma * &g.eps_x.transpose() != dil.theta {
        return Err(ParmodError::Crosscheck("σ ∘ ε_Xᵀ ≠ θ"));
    }
    // action on Y*: transpose of δ_Y, read as H⊗Y* → Y*
    let act_y = &g.comodule.delta.transpose() * &flip(n, y);
    for a in 0..n {
        let block = act_y.select_cols(a * y..(a + 1) * y);
        if &sigma * &block != &dil.action[a] * &sigma {
            return Err(ParmodError::Crosscheck("σ is not H-linear"));
        }
    }
    Ok(DilationIso {
        globalization_dim: y,
        dilation_dim: dil.dim,
        sigma,
    })
}

/// The `kC₂` partial module `1·v = v`, `g·v = T v` (requires `T³ = T` to be
/// valid).
pub fn kc2_module(t: &LinMap) -> PartialModule {
    let h = group_algebra(&FiniteGroup::cyclic(2));
    PartialModule::from_operators(h, &[LinMap::identity(t.rows()), t.clone()])
        .expect("square operator")
}

/// `T = diag(-1^{d₋₁}, 0^{d₀}, 1^{d₁})`.
pub fn kc2_eigen_fixture(d_minus: usize, d_zero: usize, d_plus: usize) -> PartialModule {
    let m = d_minus + d_zero + d_plus;
    let t = LinMap::from_fn(m, m, |i, j| {
        if i != j {
            rat(0)
        } else if i < d_minus {
            rat(-1)
        } else if i < d_minus + d_zero {
            rat(0)
        } else {
            rat(1)
        }
    });
    kc2_module(&t)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialGroupRep {
    pub group: FiniteGroup,
    pub v_dim: usize,
    pub pi: Vec<LinMap>,
}

impl PartialGroupRep {
    pub fn new(group: FiniteGroup, pi: Vec<LinMap>) -> Result<Self, ParmodError> {
        if pi.len() != group.order() {
            return Err(ParmodError::Malformed(
                "one matrix per group element".into(),
            ));
        }
        let v_dim = pi.first().map(|p| p.rows()).unwrap_or(0);
        if pi.iter().any(|p| p.rows() != v_dim || p.cols() != v_dim) {
            return Err(ParmodError::Malformed("π(g) must be square".into()));
        }
        Ok(PartialGroupRep { group, v_dim, pi })
    }

    pub fn check(&self) -> Result<(), ParmodError> {
        let g = &self.group;
        if !self.pi[g.identity()].is_identity() {
            return Err(ParmodError::PartialRep {
                axiom: PrAxiom::Identity,
                g: g.identity(),
                h: g.identity(),
            });
        }
        for a in 0..g.order() {
            let ai = g.inv(a);
            for b in 0..g.order() {
                let bi = g.inv(b);
                let ab = g.mul(a, b);
                let pr2 =
                    &self.pi[ai] * &self.pi[ab] == &(&self.pi[ai] * &self.pi[a]) * &self.pi[b];
                if !pr2 {
                    return Err(ParmodError::PartialRep {
                        axiom: PrAxiom::Left,
                        g: a,
                        h: b,
                    });
                }
                let pr3 =
                    &self.pi[ab] * &self.pi[bi] == &(&self.pi[a] * &self.pi[b]) * &self.pi[bi];
                if !pr3 {
                    return Err(ParmodError::PartialRep {
                        axiom: PrAxiom::Right,
                        g: a,
                        h: b,
                    });
                }
            }
        }
        Ok(())
    }

    pub fn to_partial_module(&self) -> PartialModule {
        PartialModule::from_operators(group_algebra(&self.group), &self.pi)
            .expect("one square matrix per element")
    }

    /// `V_g = π(g)π(g⁻¹)(V)`.
    pub fn domain(&self, g: usize) -> Subspace {
        image(&(&self.pi[g] * &self.pi[self.group.inv(g)]))
    }

    /// `h ⊗ -` translated: `(L_h ⊗ V)` on `kG⊗V`.
    fn translate(&self, h: usize) -> LinMap {
        let n = self.group.order();
        let perm = LinMap::from_fn(n, n, |r, c| rat((self.group.mul(h, c) == r) as i64));
        perm.kron(&LinMap::identity(self.v_dim))
    }

    fn translates(&self, generators: &Subspace) -> Subspace {
        let inc = generators.inclusion();
        let mut out = Subspace::zero(self.group.order() * self.v_dim);
        for h in 0..self.group.order() {
            out = out
                .sum(&image(&(&self.translate(h) * &inc)))
                .expect("same ambient");
        }
        out
    }

    /// `kG`-translates of `Σ g⊗v_g − 1⊗Σ π(g)v_g` over all families with
    /// `Σ π(k)π(g)v_g = Σ π(kg)v_g` for every `k`.
    pub fn subspace_s(&self) -> Subspace {
        let g = &self.group;
        let (n, d) = (g.order(), self.v_dim);
        let mut rows: Vec<LinMap> = Vec::with_capacity(n);
        for k in 0..n {
            let blocks: Vec<LinMap> = (0..n)
                .map(|x| &(&self.pi[k] * &self.pi[x]) - &self.pi[g.mul(k, x)])
                .collect();
            let refs: Vec<&LinMap> = blocks.iter().collect();
            rows.push(LinMap::hstack(&refs).expect("square blocks"));
        }
        let refs: Vec<&LinMap> = rows.iter().collect();
        let families = kernel(&LinMap::vstack(&refs).expect("equal widths"));
        // Φ(v) = Σ g⊗v_g − 1⊗Σ π(g)v_g
        let pi_row: Vec<&LinMap> = self.pi.iter().collect();
        let collapse = LinMap::hstack(&pi_row).expect("square blocks");
        let mut phi = LinMap::identity(n * d);
        let e = g.identity();
        for r in 0..d {
            for c in 0..n * d {
                let v = phi.get(e * d + r, c) - collapse.get(r, c);
                phi.set(e * d + r, c, v);
            }
        }
        let generators = image(&(&phi * &families.inclusion()));
        self.translates(&generators)
    }

    /// `kG`-translates of `g⊗v − 1⊗π(g)v` for `v ∈ V_{g⁻¹}`.
    pub fn subspace_z(&self) -> Subspace {
        let g = &self.group;
        let (n, d) = (g.order(), self.v_dim);
        let mut vectors = Vec::new();
        for x in 0..n {
            let dom = self.domain(g.inv(x));
            for v in dom.basis_vectors() {
                let mut w = vec![rat(0); n * d];
                let pv = self.pi[x].apply(&v);
                for i in 0..d {
                    w[x * d + i] += &v[i];
                    w[g.identity() * d + i] -= &pv[i];
                }
                vectors.push(w);
            }
        }
        self.translates(&Subspace::span(n * d, &vectors))
    }
}

/// `π(g)δ_a = δ_{ga}` when `ga ∈ A`, zero otherwise, on `k^A`.
pub fn partial_permutation(group: &FiniteGroup, subset: &[usize]) -> PartialGroupRep {
    let d = subset.len();
    let pi = (0..group.order())
        .map(|g| {
            LinMap::from_fn(d, d, |r, c| {
                rat((group.mul(g, subset[c]) == subset[r]) as i64)
            })
        })
        .collect();
    PartialGroupRep {
        group: group.clone(),
        v_dim: d,
        pi,
    }
}

/// The global representation of `S_k` permuting coordinates.
pub fn natural_representation(k: usize) -> PartialGroupRep {
    let group = FiniteGroup::symmetric(k);
    let pi = group
        .names()
        .iter()
        .map(|name| {
            let perm: Vec<usize> = name
                .chars()
                .map(|c| c.to_digit(10).expect("digit name") as usize)
                .collect();
            LinMap::from_fn(k, k, |r, c| rat((perm[c] == r) as i64))
        })
        .collect();
    PartialGroupRep {
        v_dim: k,
        group,
        pi,
    }
}

/// All nonempty subsets of `0..n` of size at most `max`, in lexicographic
/// order of their bitmasks.
pub fn small_subsets(n: usize, max: usize) -> Vec<Vec<usize>> {
    (1u32..(1 << n))
        .filter(|mask| mask.count_ones() as usize <= max)
        .map(|mask| (0..n).filter(|i| mask & (1 << i) != 0).collect())
        .collect()
}

/// A seeded valid partial module of dimension at most `max_dim` over `kC₂`
/// or `kS₃`, drawn from the always-valid families and conjugated by a random
/// invertible matrix; rejection-sampled candidates are tried first.
pub fn random_partial_module(
    group: &FiniteGroup,
    max_dim: usize,
    rng: &mut SeededRng,
) -> PartialModule {
    use rand::Rng;
    let h = group_algebra(group);
    // a few raw candidates: the axioms rarely hold, so the budget is small
    for _ in 0..4 {
        let m = rng.gen_range(1..=max_dim.min(2));
        let mut ops = vec![LinMap::identity(m)];
        for _ in 1..group.order() {
            ops.push(random::sparse_matrix(rng, m, m));
        }
        let pm = PartialModule::from_operators(h.clone(), &ops).expect("shapes");
        if pm.check().is_ok() {
            return pm;
        }
    }
    let family = rng.gen_range(0..3);
    let base = match family {
        0 if group.order() == 2 => {
            let m = rng.gen_range(1..=max_dim);
            let diag: Vec<i64> = (0..m).map(|_| rng.gen_range(-1..=1)).collect();
            kc2_module(&LinMap::from_fn(m, m, |i, j| {
                if i == j {
                    rat(diag[i])
                } else {
                    rat(0)
                }
            }))
        }
        1 => {
            let subsets = small_subsets(group.order(), max_dim);
            let a = &subsets[rng.gen_range(0..subsets.len())];
            partial_permutation(group, a).to_partial_module()
        }
        _ => {
            let m = rng.gen_range(1..=max_dim);
            let subsets = small_subsets(group.order(), m);
            let a = &subsets[rng.gen_range(0..subsets.len())];
            let part = partial_permutation(group, a).to_partial_module();
            if part.m_dim < m {
                // pad with copies of the trivial module
                let trivial = PartialModule::from_operators(
                    h.clone(),
                    &vec![LinMap::identity(m - part.m_dim); group.order()],
                )
                .expect("shapes");
                part.direct_sum(&trivial)
            } else {
                part
            }
        }
    };
    let p = random::invertible(rng, base.m_dim);
    base.conjugate(&p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gpc::certify;
    use crate::structures::sweedler_h4;

    #[test]
    fn kc2_fixture_numbers() {
        for (a, b, c) in [(1, 1, 1), (2, 0, 1), (0, 2, 0), (1, 0, 0)] {
            let pm = kc2_eigen_fixture(a, b, c);
            pm.check().unwrap();
            let m = a + b + c;
            assert_eq!(pm.bullet_subspace().dim(), m + a + c);
            let d = standard_dilation(&pm).unwrap();
            assert_eq!(d.dim, 2 * b + a + c);
            let iso = crosscheck_dilation_globalization(&pm).unwrap();
            assert_eq!(iso.globalization_dim, 2 * b + a + c);
        }
    }

    #[test]
    fn t_cubed_not_t_fails() {
        let t = LinMap::from_i64(1, 1, &[2]);
        assert!(kc2_module(&t).check().is_err());
    }

    #[test]
    fn global_modules() {
        let h = sweedler_h4();
        let regular = PartialModule::new(h.clone(), h.algebra().mu.clone()).unwrap();
        regular.check().unwrap();
        assert_eq!(regular.bullet_subspace().dim(), 16);
        let d = standard_dilation(&regular).unwrap();
        assert_eq!(d.dim, 4);
        assert!(d.t.is_identity());
        certify(&to_opposite_datum(&regular)).unwrap();
        crosscheck_dilation_globalization(&regular).unwrap();
    }

    #[test]
    fn opposite_datum_passes_gpc() {
        let pm = kc2_eigen_fixture(1, 1, 1);
        let d = to_opposite_datum(&pm);
        assert_eq!(d.direction, Direction::Opposite);
        d.coalgebra.validate().unwrap();
        certify(&d).unwrap();
    }

    #[test]
    fn partial_permutations() {
        let g = FiniteGroup::symmetric(3);
        for a in small_subsets(6, 3) {
            let pr = partial_permutation(&g, &a);
            pr.check().unwrap();
            let pm = pr.to_partial_module();
            pm.check().unwrap();
            assert_eq!(pr.subspace_s(), pr.subspace_z());
        }
    }

    #[test]
    fn natural_rep_is_global() {
        let pr = natural_representation(3);
        pr.check().unwrap();
        let s = pr.subspace_s();
        assert_eq!(s, pr.subspace_z());
        // global: kG⊗V / S ≅ V
        assert_eq!(6 * 3 - s.dim(), 3);
    }

    #[test]
    fn random_modules_crosscheck() {
        let mut r = random::rng(9);
        for g in [FiniteGroup::cyclic(2), FiniteGroup::symmetric(3)] {
            for _ in 0..4 {
                let pm = random_partial_module(&g, 3, &mut r);
                pm.check().unwrap();
                crosscheck_dilation_globalization(&pm).unwrap();
            }
        }
    }
}
