//! Hopf partial comodules: geometric partial comodules in the category of
//! right modules over a bialgebra. Compatibility checks, globalization with
//! the module structure, the pair correspondence over a Hopf algebra, and the
//! trivial-structure scan over group algebras.

use num_traits::Zero;
use serde::Serialize;
use thiserror::Error;

use crate::exactla::{
    format_rational, image, kernel, quotient_by, rat, solve, solve_factor, LaError, LinMap,
    Rational, Subspace,
};
use crate::findimcat::{id_tensor, tensor_id};
use crate::globalization::{globalize, GlobError, GlobalComodule, Globalization};
use crate::gpc::{
    certify, check_isomorphism, check_morphism, induce_from_cover, GpcError, GpcMorphism,
    PartialComoduleDatum,
};
use crate::random::{self, SeededRng};
use crate::structures::{group_algebra, monoid3, Bialgebra, FiniteGroup};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum HopfError {
    #[error("malformed: {0}")]
    Malformed(String),
    #[error("{which} is not a unital associative right action: {law}")]
    Module {
        which: &'static str,
        law: &'static str,
    },
    #[error("{map} is not B-linear")]
    Linearity {
        map: &'static str,
        witness: Vec<Rational>,
    },
    #[error("globalization is not closed under the action: {0}")]
    ClosureFailure(&'static str),
    #[error("coinvariant decomposition fails: {0}")]
    CoinvariantMismatch(&'static str),
    #[error("pair condition violated")]
    ConditionViolated { witness: Vec<Rational> },
    #[error("B is not a Hopf algebra")]
    NotHopf,
    #[error("not an isomorphism: {0}")]
    NoIso(&'static str),
    #[error(transparent)]
    Gpc(#[from] GpcError),
    #[error(transparent)]
    Glob(#[from] GlobError),
    #[error(transparent)]
    La(#[from] LaError),
}

fn column_witness(lhs: &LinMap, rhs: &LinMap) -> Option<Vec<Rational>> {
    lhs.first_difference(rhs)
        .map(|(_, c)| (lhs - rhs).column(c))
}

/// Check that `act: V⊗B → V` is a unital associative right action.
pub fn check_right_action(
    act: &LinMap,
    dim: usize,
    b: &Bialgebra,
    which: &'static str,
) -> Result<(), HopfError> {
    let n = b.dim();
    if act.rows() != dim || act.cols() != dim * n {
        return Err(HopfError::Malformed(format!(
            "{which} is {}×{}, expected {dim}×{}",
            act.rows(),
            act.cols(),
            dim * n
        )));
    }
    if act.compose_tensor_id(act, n) != act.compose_id_tensor(dim, &b.algebra.mu) {
        return Err(HopfError::Module {
            which,
            law: "associativity",
        });
    }
    if !act.compose_id_tensor(dim, &b.algebra.unit).is_identity() {
        return Err(HopfError::Module { which, law: "unit" });
    }
    Ok(())
}

/// `(v⊗b)·x = v·x₁ ⊗ b x₂` on `V⊗B`, as a map `V⊗B⊗B → V⊗B`.
pub fn diagonal_action(act: &LinMap, dim: usize, b: &Bialgebra) -> LinMap {
    let n = b.dim();
    let (act_cols, mu_cols) = (nonzero_columns(act), nonzero_columns(&b.algebra.mu));
    let delta_cols = nonzero_columns(&b.coalgebra.delta);
    let cols = dim * n * n;
    let mut columns = vec![vec![Rational::zero(); dim * n]; cols];
    for v in 0..dim {
        for y in 0..n {
            for x in 0..n {
                let column = &mut columns[(v * n + y) * n + x];
                for (split, d) in &delta_cols[x] {
                    let (x1, x2) = (split / n, split % n);
                    for (w, a) in &act_cols[v * n + x1] {
                        let da = d * a;
                        for (c, m) in &mu_cols[y * n + x2] {
                            column[w * n + c] += &da * m;
                        }
                    }
                }
            }
        }
    }
    LinMap::from_columns(&columns, dim * n)
}

fn nonzero_columns(f: &LinMap) -> Vec<Vec<(usize, Rational)>> {
    (0..f.cols())
        .map(|j| {
            (0..f.rows())
                .filter(|&i| !f.get(i, j).is_zero())
                .map(|i| (i, f.get(i, j).clone()))
                .collect()
        })
        .collect()
}

/// `(m⊗b)·(x⊗y) = m·x ⊗ by` on `M⊗B`, as a map `M⊗B⊗B⊗B → M⊗B`: the map
/// `act ⊗ μ` precomposed with `M⊗flip⊗B`, applied as a column permutation.
fn bb_action(act: &LinMap, dim: usize, b: &Bialgebra) -> LinMap {
    let n = b.dim();
    debug_assert_eq!(act.cols(), dim * n);
    act.kron(&b.algebra.mu).permute_columns(|c| {
        let (rest, z) = (c / n, c % n);
        let (rest, y) = (rest / n, rest % n);
        let (v, x) = (rest / n, rest % n);
        ((v * n + y) * n + x) * n + z
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HopfPartialComodule {
    pub bialgebra: Bialgebra,
    pub datum: PartialComoduleDatum,
    pub act_m: LinMap,
    pub act_bullet: LinMap,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HopfCertificate {
    pub m_dim: usize,
    pub bullet_dim: usize,
    /// `ker π` is closed under `(m⊗b)·(x⊗y) = m·x ⊗ by`.
    pub kernel_bb_submodule: bool,
    /// `ker π` is closed under right multiplication on the `B` leg.
    pub kernel_right_leg_submodule: bool,
}

impl HopfPartialComodule {
    /// Derive the action on `M•B` from `π` being `B`-linear.
    pub fn new(
        bialgebra: Bialgebra,
        datum: PartialComoduleDatum,
        act_m: LinMap,
    ) -> Result<Self, HopfError> {
        let n = bialgebra.dim();
        let m = datum.x_dim;
        let target = &datum.pi * &diagonal_action(&act_m, m, &bialgebra);
        let act_bullet =
            solve_factor(&tensor_id(&datum.pi, n), &target).map_err(|e| HopfError::Linearity {
                map: "π",
                witness: match e {
                    LaError::NoSolution { witness } => witness,
                    _ => Vec::new(),
                },
            })?;
        Ok(HopfPartialComodule {
            bialgebra,
            datum,
            act_m,
            act_bullet,
        })
    }

    /// `(M, M, M⊗ε, id)` on a right module.
    pub fn trivial(bialgebra: Bialgebra, act_m: LinMap) -> Self {
        let datum = PartialComoduleDatum::trivial(&bialgebra.coalgebra, act_m.rows());
        HopfPartialComodule {
            bialgebra,
            datum,
            act_bullet: act_m.clone(),
            act_m,
        }
    }

    /// `(M, M⊗B, id, δ)` on a Hopf module.
    pub fn global(bialgebra: Bialgebra, y: &GlobalComodule, act_y: LinMap) -> Self {
        let act_bullet = diagonal_action(&act_y, y.dim, &bialgebra);
        HopfPartialComodule {
            bialgebra,
            datum: PartialComoduleDatum::global(y),
            act_m: act_y,
            act_bullet,
        }
    }
}

/// Check the module axioms, `B`-linearity of `π` and `ρ`, and the GPC
/// axioms of the underlying datum.
pub fn check_hopf_pc(h: &HopfPartialComodule) -> Result<HopfCertificate, HopfError> {
    let b = &h.bialgebra;
    let n = b.dim();
    let d = &h.datum;
    if d.coalgebra != b.coalgebra {
        return Err(HopfError::Malformed(
            "datum must live over the coalgebra of B".into(),
        ));
    }
    let (m, k) = (d.x_dim, d.bullet_dim);
    check_right_action(&h.act_m, m, b, "act_M")?;
    check_right_action(&h.act_bullet, k, b, "act_bullet")?;
    let pi_lhs = &d.pi * &diagonal_action(&h.act_m, m, b);
    let pi_rhs = h.act_bullet.compose_tensor_id(&d.pi, n);
    if let Some(witness) = column_witness(&pi_lhs, &pi_rhs) {
        return Err(HopfError::Linearity { map: "π", witness });
    }
    let rho_lhs = &d.rho * &h.act_m;
    let rho_rhs = h.act_bullet.compose_tensor_id(&d.rho, n);
    if let Some(witness) = column_witness(&rho_lhs, &rho_rhs) {
        return Err(HopfError::Linearity { map: "ρ", witness });
    }
    certify(d)?;
    let ker = kernel(&d.pi).inclusion();
    let bb = (&d.pi * &bb_action(&h.act_m, m, b)).compose_tensor_id(&ker, n * n);
    let leg =
        d.pi.compose_id_tensor(m, &b.algebra.mu)
            .compose_tensor_id(&ker, n);
    Ok(HopfCertificate {
        m_dim: m,
        bullet_dim: k,
        kernel_bb_submodule: bb.is_zero(),
        kernel_right_leg_submodule: leg.is_zero(),
    })
}

/// A GPC morphism that is also `B`-linear.
pub fn check_hopf_morphism(
    src: &HopfPartialComodule,
    dst: &HopfPartialComodule,
    f: &LinMap,
) -> Result<GpcMorphism, HopfError> {
    let g = check_morphism(&src.datum, &dst.datum, f)?;
    let n = src.bialgebra.dim();
    if let Some(witness) = column_witness(&(f * &src.act_m), &dst.act_m.compose_tensor_id(f, n)) {
        return Err(HopfError::Linearity { map: "f", witness });
    }
    Ok(g)
}

pub fn check_hopf_isomorphism(
    src: &HopfPartialComodule,
    dst: &HopfPartialComodule,
    f: &LinMap,
) -> Result<GpcMorphism, HopfError> {
    check_hopf_morphism(src, dst, f)?;
    Ok(check_isomorphism(&src.datum, &dst.datum, f)?)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HopfGlobalization {
    pub globalization: Globalization,
    /// Restriction of the diagonal action of `M⊗B` to `Y`.
    pub act_y: LinMap,
}

/// Globalize the underlying datum and verify that `Y ⊆ M⊗B` is a submodule
/// for the diagonal action, that `ε_X` is `B`-linear, and that `Y` is a Hopf
/// module: `δ(y·b) = y₀·b₁ ⊗ y₁b₂`.
pub fn globalize_hopf(h: &HopfPartialComodule) -> Result<HopfGlobalization, HopfError> {
    let g = globalize(&h.datum)?;
    let b = &h.bialgebra;
    let n = b.dim();
    let m = h.datum.x_dim;
    let kappa = &g.kappa;
    let moved = diagonal_action(&h.act_m, m, b).compose_tensor_id(kappa, n);
    let act_y = solve(kappa, &moved).map_err(|_| HopfError::ClosureFailure("Y·B ⊄ Y"))?;
    let y = g.comodule.dim;
    check_right_action(&act_y, y, b, "act_Y")
        .map_err(|_| HopfError::ClosureFailure("restricted action is not a module"))?;
    if &g.eps_x * &act_y != h.act_m.compose_tensor_id(&g.eps_x, n) {
        return Err(HopfError::ClosureFailure("ε_X is not B-linear"));
    }
    let delta = &g.comodule.delta;
    if delta * &act_y != diagonal_action(&act_y, y, b).compose_tensor_id(delta, n) {
        return Err(HopfError::ClosureFailure("Hopf module compatibility"));
    }
    Ok(HopfGlobalization {
        globalization: g,
        act_y,
    })
}

/// A vector space `V` with a right `H`-submodule `N ⊆ V⊗H`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FundamentalPair {
    pub v_dim: usize,
    pub n: Subspace,
}

impl FundamentalPair {
    pub fn new(v_dim: usize, n: Subspace) -> Self {
        FundamentalPair { v_dim, n }
    }

    /// The submodule of `V⊗H` generated by `vectors`.
    pub fn generated(v_dim: usize, vectors: &[Vec<Rational>], b: &Bialgebra) -> Self {
        let n = b.dim();
        let right = id_tensor(v_dim, &b.algebra.mu);
        let mut span = Vec::new();
        for w in vectors {
            for x in 0..n {
                let mut e = vec![rat(0); n];
                e[x] = rat(1);
                span.push(right.apply(&tensor_vector(w, &e)));
            }
        }
        FundamentalPair {
            v_dim,
            n: Subspace::span(v_dim * n, &span),
        }
    }

    fn h_dim(&self) -> usize {
        self.n.ambient_dim() / self.v_dim.max(1)
    }

    /// First vector of `N·H` outside `N`, if any.
    pub fn submodule_witness(&self, b: &Bialgebra) -> Option<Vec<Rational>> {
        let moved = b.algebra.mu.id_tensor_compose(
            self.v_dim,
            &self.n.inclusion().kron(&LinMap::identity(b.dim())),
        );
        (0..moved.cols())
            .map(|c| moved.column(c))
            .find(|v| !self.n.contains(v))
    }

    /// A nonzero vector of `(V⊗Δ(H)) ∩ (N⊗H)`, if any.
    pub fn intersection_witness(&self, b: &Bialgebra) -> Result<Option<Vec<Rational>>, HopfError> {
        let n = b.dim();
        let coaction = image(&id_tensor(self.v_dim, &b.coalgebra.delta));
        let n_h = image(&tensor_id(&self.n.inclusion(), n));
        Ok(coaction
            .intersection(&n_h)?
            .basis_vectors()
            .into_iter()
            .next())
    }

    /// For `H = kG`: a nonzero element of `N ∩ (V⊗g)` for some basis `g`.
    pub fn homogeneous_witness(&self) -> Result<Option<(usize, Vec<Rational>)>, HopfError> {
        let n = self.h_dim();
        for g in 0..n {
            let slot = LinMap::from_fn(self.v_dim * n, self.v_dim, |r, c| {
                rat((r == c * n + g) as i64)
            });
            let meet = self.n.intersection(&image(&slot))?;
            if let Some(w) = meet.basis_vectors().into_iter().next() {
                return Ok(Some((g, w)));
            }
        }
        Ok(None)
    }

    pub fn check(&self, b: &Bialgebra) -> Result<(), HopfError> {
        if self.n.ambient_dim() != self.v_dim * b.dim() {
            return Err(HopfError::Malformed("N must live in V⊗H".into()));
        }
        if let Some(witness) = self.submodule_witness(b) {
            return Err(HopfError::ConditionViolated { witness });
        }
        if let Some(witness) = self.intersection_witness(b)? {
            return Err(HopfError::ConditionViolated { witness });
        }
        Ok(())
    }
}

fn tensor_vector(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    a.iter()
        .flat_map(|x| b.iter().map(move |y| x * y))
        .collect()
}

fn require_hopf(b: &Bialgebra) -> Result<(), HopfError> {
    b.solve_antipode().map(|_| ()).ok_or(HopfError::NotHopf)
}

/// `M = (V⊗H)/N` with the datum induced from `V⊗H` and the quotient action.
pub fn from_pair(pair: &FundamentalPair, b: &Bialgebra) -> Result<HopfPartialComodule, HopfError> {
    pair.check(b)?;
    let n = b.dim();
    let free = GlobalComodule::free(&b.coalgebra, pair.v_dim);
    let q = quotient_by(&pair.n);
    let datum = induce_from_cover(&free, &q.proj)?;
    let right = id_tensor(pair.v_dim, &b.algebra.mu);
    let act_m = solve_factor(&tensor_id(&q.proj, n), &(&q.proj * &right))?;
    let h = HopfPartialComodule::new(b.clone(), datum, act_m)?;
    check_hopf_pc(&h)?;
    Ok(h)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairDecomposition {
    pub pair: FundamentalPair,
    pub globalization: HopfGlobalization,
    /// Coinvariants `V ⊆ Y`.
    pub coinvariants: Subspace,
    /// `V⊗H → Y`, `v⊗h ↦ v·h`.
    pub iso: LinMap,
}

/// `V = Y^{co H}`, the iso `V⊗H ≅ Y`, and `N = ker(ε_X ∘ iso)`.
pub fn to_pair(h: &HopfPartialComodule) -> Result<PairDecomposition, HopfError> {
    require_hopf(&h.bialgebra)?;
    let glob = globalize_hopf(h)?;
    let b = &h.bialgebra;
    let n = b.dim();
    let y = &glob.globalization.comodule;
    let unit_leg = id_tensor(y.dim, &b.algebra.unit);
    let coinvariants = kernel(&(&y.delta - &unit_leg));
    let v_dim = coinvariants.dim();
    let iso = glob.act_y.compose_tensor_id(&coinvariants.inclusion(), n);
    if iso.inverse().is_none() {
        return Err(HopfError::CoinvariantMismatch("V⊗H → Y is not invertible"));
    }
    let n_space = kernel(&(&glob.globalization.eps_x * &iso));
    let pair = FundamentalPair::new(v_dim, n_space);
    pair.check(b)?;
    Ok(PairDecomposition {
        pair,
        globalization: glob,
        coinvariants,
        iso,
    })
}

/// `to_pair(from_pair(P)) ≅ P`: returns `f: V → V'` with `(f⊗H)(N) = N'`.
pub fn pair_roundtrip_from(pair: &FundamentalPair, b: &Bialgebra) -> Result<LinMap, HopfError> {
    let h = from_pair(pair, b)?;
    let dec = to_pair(&h)?;
    iso_to_decomposition(pair, b, &dec)
}

/// `from_pair(to_pair(M)) ≅ M`: returns the iso `(V⊗H)/N → M` induced by
/// `ε_X`.
pub fn pair_roundtrip_to(h: &HopfPartialComodule) -> Result<GpcMorphism, HopfError> {
    let dec = to_pair(h)?;
    iso_from_decomposition(h, &dec)
}

/// Both round trips starting from `pair`, sharing the decomposition of
/// `from_pair(pair)`.
pub fn pair_roundtrip(
    pair: &FundamentalPair,
    b: &Bialgebra,
) -> Result<(LinMap, GpcMorphism), HopfError> {
    let h = from_pair(pair, b)?;
    let dec = to_pair(&h)?;
    Ok((
        iso_to_decomposition(pair, b, &dec)?,
        iso_from_decomposition(&h, &dec)?,
    ))
}

fn iso_to_decomposition(
    pair: &FundamentalPair,
    b: &Bialgebra,
    dec: &PairDecomposition,
) -> Result<LinMap, HopfError> {
    let n = b.dim();
    let q = quotient_by(&pair.n);
    let g = &dec.globalization.globalization;
    let cogen = q
        .proj
        .tensor_id_compose(n, &id_tensor(pair.v_dim, &b.coalgebra.delta));
    let phi = solve(&g.kappa, &cogen).map_err(|_| HopfError::NoIso("V⊗H does not land in Y"))?;
    let on_v = phi.compose_id_tensor(pair.v_dim, &b.algebra.unit);
    let f = solve(&dec.coinvariants.inclusion(), &on_v)
        .map_err(|_| HopfError::NoIso("V does not land in the coinvariants"))?;
    if f.inverse().is_none() {
        return Err(HopfError::NoIso("V → V' is not invertible"));
    }
    let moved = image(&f.tensor_id_compose(n, &pair.n.inclusion()));
    if moved != dec.pair.n {
        return Err(HopfError::NoIso("(f⊗H)(N) ≠ N'"));
    }
    Ok(f)
}

fn iso_from_decomposition(
    h: &HopfPartialComodule,
    dec: &PairDecomposition,
) -> Result<GpcMorphism, HopfError> {
    let back = from_pair(&dec.pair, &h.bialgebra)?;
    let q = quotient_by(&dec.pair.n);
    let through = &dec.globalization.globalization.eps_x * &dec.iso;
    let f = solve_factor(&q.proj, &through)?;
    check_hopf_isomorphism(&back, h, &f)
}

/// Characters `χ: G → {±1}` of a finite group, in lexicographic order of
/// their value lists with `+1` first.
pub fn sign_characters(g: &FiniteGroup) -> Vec<Vec<i64>> {
    let n = g.order();
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << n) {
        let chi: Vec<i64> = (0..n)
            .map(|i| if mask >> i & 1 == 1 { -1 } else { 1 })
            .collect();
        let ok = (0..n).all(|a| (0..n).all(|b| chi[g.mul(a, b)] == chi[a] * chi[b]));
        if ok {
            out.push(chi);
        }
    }
    out
}

fn character_row(chi: &[i64]) -> LinMap {
    LinMap::from_fn(1, chi.len(), |_, c| rat(chi[c]))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScanCandidate {
    /// `N = span(w)` with `w·h = χ(h) w`.
    pub generator: Vec<String>,
    pub pair_condition: bool,
    /// The character by which `H` acts on `(k⊗H)/N`.
    pub module_character: Option<Vec<i64>>,
    pub matches_phi: bool,
    pub iso_to_trivial: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TrivialScan {
    pub phi: Vec<i64>,
    pub candidates: Vec<ScanCandidate>,
    /// Every candidate realizing `k_φ` is isomorphic to the trivial structure.
    pub only_trivial: bool,
}

/// Enumerate the one-dimensional right ideals `N ⊆ k⊗kG` that are spanned by
/// a common eigenvector of right multiplication with rational eigenvalues,
/// build the Hopf partial comodule `(k⊗H)/N` for each admissible one, and
/// compare it with the trivial structure on `k_φ`.
pub fn trivial_structure_scan(g: &FiniteGroup, phi: &[i64]) -> Result<TrivialScan, HopfError> {
    let h = group_algebra(g);
    let b = &h.bialgebra;
    let n = g.order();
    if phi.len() != n || !sign_characters(g).iter().any(|c| c == phi) {
        return Err(HopfError::Malformed(
            "φ must be a ±1-valued character".into(),
        ));
    }
    let trivial = HopfPartialComodule::trivial(b.clone(), character_row(phi));
    let mut candidates = Vec::new();
    for chi in sign_characters(g) {
        // w·x = χ(x) w  ⇔  w = Σ χ(x⁻¹) x
        let w: Vec<Rational> = (0..n).map(|x| rat(chi[g.inv(x)])).collect();
        let pair = FundamentalPair::generated(1, std::slice::from_ref(&w), b);
        let pair_condition = pair.check(b).is_ok();
        let mut cand = ScanCandidate {
            generator: w.iter().map(format_rational).collect(),
            pair_condition,
            module_character: None,
            matches_phi: false,
            iso_to_trivial: None,
        };
        if pair_condition {
            let m = from_pair(&pair, b)?;
            if m.datum.x_dim == 1 {
                let character: Vec<i64> = (0..n)
                    .map(|c| {
                        let v = m.act_m.get(0, c);
                        if *v == rat(1) {
                            1
                        } else if *v == rat(-1) {
                            -1
                        } else {
                            0
                        }
                    })
                    .collect();
                cand.matches_phi = character == phi;
                cand.module_character = Some(character);
                if cand.matches_phi {
                    let iso = check_hopf_isomorphism(&m, &trivial, &LinMap::identity(1));
                    cand.iso_to_trivial = Some(iso.is_ok());
                }
            }
        }
        candidates.push(cand);
    }
    let matching: Vec<_> = candidates.iter().filter(|c| c.matches_phi).collect();
    let only_trivial =
        !matching.is_empty() && matching.iter().all(|c| c.iso_to_trivial == Some(true));
    Ok(TrivialScan {
        phi: phi.to_vec(),
        candidates,
        only_trivial,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonoidContrast {
    pub structure: HopfPartialComodule,
    pub certificate: HopfCertificate,
    pub globalization: HopfGlobalization,
    /// Not isomorphic to the trivial structure on `k_φ`.
    pub nontrivial: bool,
}

/// On `{1, x, x²}` with `φ(x) = 0`: the cover `k⊗span{x, x²} → k`, `xⁱ ↦ 1`,
/// induces a structure on `k_φ` with a two-dimensional `k•B`.
pub fn monoid3_contrast() -> Result<MonoidContrast, HopfError> {
    let b = monoid3();
    let n = b.dim();
    let phi = LinMap::from_fn(1, n, |_, c| rat((c == 0) as i64));
    // Y = span{1⊗x, 1⊗x²}, both grouplike
    let delta = LinMap::from_fn(2 * n, 2, |r, c| rat((r == c * n + c + 1) as i64));
    let y = GlobalComodule::new(b.coalgebra.clone(), delta)?;
    let p = LinMap::from_fn(1, 2, |_, _| rat(1));
    let datum = induce_from_cover(&y, &p)?;
    let structure = HopfPartialComodule::new(b.clone(), datum, phi.clone())?;
    let certificate = check_hopf_pc(&structure)?;
    let globalization = globalize_hopf(&structure)?;
    let trivial = HopfPartialComodule::trivial(b, phi);
    let nontrivial = structure.datum.bullet_dim != trivial.datum.bullet_dim
        && check_hopf_isomorphism(&structure, &trivial, &LinMap::identity(1)).is_err();
    Ok(MonoidContrast {
        structure,
        certificate,
        globalization,
        nontrivial,
    })
}

/// A seeded pair over `kG`: the submodule of `V⊗kG` generated by one or two
/// random vectors, resampled until the pair condition holds. Falls back to
/// `N = 0`.
pub fn random_pair(
    g: &FiniteGroup,
    max_v: usize,
    rng: &mut SeededRng,
) -> (FundamentalPair, Vec<FundamentalPair>) {
    use rand::Rng;
    let b = group_algebra(g).bialgebra;
    let n = g.order();
    let mut rejected = Vec::new();
    for _ in 0..8 {
        let v_dim = rng.gen_range(1..=max_v);
        let gens = rng.gen_range(1..=2);
        let vectors: Vec<Vec<Rational>> = (0..gens)
            .map(|_| random::sparse_matrix(rng, v_dim * n, 1).column(0))
            .collect();
        let pair = FundamentalPair::generated(v_dim, &vectors, &b);
        if pair.check(&b).is_ok() {
            return (pair, rejected);
        }
        rejected.push(pair);
    }
    let v_dim = rng.gen_range(1..=max_v);
    (
        FundamentalPair::new(v_dim, Subspace::zero(v_dim * n)),
        rejected,
    )
}

/// The partially graded `C₂`-representation `(V⊗kC₂)/N` with `V = k^v` and
/// `N` generated by `e_i⊗(1+g)` for `i < plus` and `e_i⊗(1−g)` for
/// `plus ≤ i < plus + minus`.
pub fn graded_c2_pair(v_dim: usize, plus: usize, minus: usize) -> FundamentalPair {
    let b = group_algebra(&FiniteGroup::cyclic(2)).bialgebra;
    let vectors: Vec<Vec<Rational>> = (0..plus + minus)
        .map(|i| {
            let mut w = vec![rat(0); v_dim * 2];
            w[i * 2] = rat(1);
            w[i * 2 + 1] = rat(if i < plus { 1 } else { -1 });
            w
        })
        .collect();
    FundamentalPair::generated(v_dim, &vectors, &b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structures::sweedler_h4;

    fn kc2() -> FiniteGroup {
        FiniteGroup::cyclic(2)
    }

    #[test]
    fn global_hopf_module_passes() {
        let h = sweedler_h4();
        let b = h.bialgebra.clone();
        let y = GlobalComodule::regular(&b.coalgebra);
        let m = HopfPartialComodule::global(b.clone(), &y, b.algebra.mu.clone());
        let cert = check_hopf_pc(&m).unwrap();
        assert!(cert.kernel_bb_submodule && cert.kernel_right_leg_submodule);
        let g = globalize_hopf(&m).unwrap();
        assert_eq!(g.globalization.comodule.dim, 4);
        let dec = to_pair(&m).unwrap();
        assert_eq!(dec.pair.v_dim, 1);
        assert!(dec.pair.n.is_zero());
    }

    #[test]
    fn trivial_structure_passes() {
        let b = group_algebra(&kc2()).bialgebra;
        let m = HopfPartialComodule::trivial(b, character_row(&[1, -1]));
        check_hopf_pc(&m).unwrap();
        assert_eq!(globalize_hopf(&m).unwrap().globalization.comodule.dim, 2);
    }

    #[test]
    fn non_linear_rho_fails() {
        let b = group_algebra(&kc2()).bialgebra;
        let pair = FundamentalPair::generated(1, &[vec![rat(1), rat(1)]], &b);
        let mut m = from_pair(&pair, &b).unwrap();
        m.datum.rho = m.datum.rho.scale(&rat(2));
        assert!(matches!(
            check_hopf_pc(&m),
            Err(HopfError::Linearity { .. }) | Err(HopfError::Gpc(_))
        ));
        let mut m = from_pair(&pair, &b).unwrap();
        m.act_m = LinMap::from_fn(1, 2, |_, _| rat(1));
        assert!(matches!(
            check_hopf_pc(&m),
            Err(HopfError::Linearity { .. })
        ));
    }

    #[test]
    fn one_dimensional_quotient() {
        let b = group_algebra(&kc2()).bialgebra;
        let pair = FundamentalPair::generated(1, &[vec![rat(1), rat(1)]], &b);
        assert_eq!(pair.n.dim(), 1);
        let m = from_pair(&pair, &b).unwrap();
        assert_eq!(m.datum.x_dim, 1);
        let dec = to_pair(&m).unwrap();
        assert_eq!(dec.pair.v_dim, 1);
        assert_eq!(dec.pair.n, pair.n);
        pair_roundtrip_from(&pair, &b).unwrap();
        pair_roundtrip_to(&m).unwrap();
    }

    #[test]
    fn homogeneous_element_violates() {
        let b = group_algebra(&kc2()).bialgebra;
        let pair = FundamentalPair::generated(2, &[vec![rat(1), rat(0), rat(0), rat(0)]], &b);
        assert!(matches!(
            from_pair(&pair, &b),
            Err(HopfError::ConditionViolated { .. })
        ));
        assert!(pair.homogeneous_witness().unwrap().is_some());
    }

    #[test]
    fn graded_c2_fixture() {
        let b = group_algebra(&kc2()).bialgebra;
        for v in 1..=2 {
            for plus in 0..=v {
                for minus in 0..=(v - plus) {
                    let pair = graded_c2_pair(v, plus, minus);
                    let m = from_pair(&pair, &b).unwrap();
                    assert_eq!(m.datum.x_dim, 2 * v - plus - minus);
                    let g = globalize_hopf(&m).unwrap();
                    assert_eq!(g.globalization.comodule.dim, 2 * v);
                    pair_roundtrip_from(&pair, &b).unwrap();
                    pair_roundtrip_to(&m).unwrap();
                }
            }
        }
    }

    #[test]
    fn kc2_scan_is_trivial() {
        for phi in [[1, 1], [1, -1]] {
            let scan = trivial_structure_scan(&kc2(), &phi).unwrap();
            assert_eq!(scan.candidates.len(), 2);
            assert!(scan.candidates.iter().all(|c| c.pair_condition));
            assert!(scan.only_trivial);
        }
    }

    #[test]
    fn monoid_contrast_is_nontrivial() {
        let c = monoid3_contrast().unwrap();
        assert!(c.nontrivial);
        assert_eq!(c.structure.datum.bullet_dim, 2);
        let y = &c.globalization.globalization.comodule;
        assert_eq!(y.dim, 2);
        assert!(c.globalization.globalization.certificate.all_green());
    }

    #[test]
    fn random_pairs_roundtrip() {
        let mut rng = random::rng(3);
        for g in [kc2(), FiniteGroup::symmetric(3)] {
            let b = group_algebra(&g).bialgebra;
            for _ in 0..4 {
                let (pair, rejected) = random_pair(&g, 2, &mut rng);
                for p in rejected.iter().chain(std::iter::once(&pair)) {
                    let a = p.intersection_witness(&b).unwrap().is_none();
                    let c = p.homogeneous_witness().unwrap().is_none();
                    assert_eq!(a, c);
                }
                pair_roundtrip_from(&pair, &b).unwrap();
                let m = from_pair(&pair, &b).unwrap();
                pair_roundtrip_to(&m).unwrap();
            }
        }
    }
}
