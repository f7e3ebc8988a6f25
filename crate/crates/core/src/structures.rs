//! Coalgebras, algebras, bialgebras and Hopf algebras stored by structure
//! constants, with exact axiom validators and the fixtures used across the
//! crate.
//!
//! A coalgebra on basis `h_0..h_{n-1}` stores `Δ` as an `n² × n` matrix whose
//! column `i` holds the coefficients `a^i_{j,k}` of `Δ(h_i) = Σ a^i_{j,k} h_j ⊗ h_k`
//! at row `j * n + k`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactla::{rat, solve, LaError, LinMap, Rational};
use crate::findimcat::{flip, Dualize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Axiom {
    Shape,
    Coassociativity,
    LeftCounit,
    RightCounit,
    Associativity,
    LeftUnit,
    RightUnit,
    DeltaMultiplicative,
    DeltaUnital,
    EpsMultiplicative,
    EpsUnital,
    LeftAntipode,
    RightAntipode,
}

impl std::fmt::Display for Axiom {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Axiom::Shape => "shape",
            Axiom::Coassociativity => "coassociativity",
            Axiom::LeftCounit => "left counit",
            Axiom::RightCounit => "right counit",
            Axiom::Associativity => "associativity",
            Axiom::LeftUnit => "left unit",
            Axiom::RightUnit => "right unit",
            Axiom::DeltaMultiplicative => "Δ multiplicative",
            Axiom::DeltaUnital => "Δ unital",
            Axiom::EpsMultiplicative => "ε multiplicative",
            Axiom::EpsUnital => "ε unital",
            Axiom::LeftAntipode => "left antipode",
            Axiom::RightAntipode => "right antipode",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum StructureError {
    /// `row`/`col` locate the first differing entry of the two sides; `col` is
    /// the offending input basis index.
    #[error("axiom violated: {axiom} (first difference at row {row}, input basis index {col})")]
    AxiomViolation {
        axiom: Axiom,
        row: usize,
        col: usize,
    },
    #[error("invalid group table: {0}")]
    BadGroup(String),
    #[error("no antipode exists")]
    NoAntipode,
    #[error(transparent)]
    La(#[from] LaError),
}

/// Which identities a successful validation checked.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub kind: &'static str,
    pub dim: usize,
    pub axioms: Vec<Axiom>,
}

fn compare(axiom: Axiom, lhs: &LinMap, rhs: &LinMap) -> Result<(), StructureError> {
    if lhs.rows() != rhs.rows() || lhs.cols() != rhs.cols() {
        return Err(StructureError::AxiomViolation {
            axiom: Axiom::Shape,
            row: 0,
            col: 0,
        });
    }
    match lhs.first_difference(rhs) {
        None => Ok(()),
        Some((row, col)) => Err(StructureError::AxiomViolation { axiom, row, col }),
    }
}

fn check_shape(m: &LinMap, rows: usize, cols: usize) -> Result<(), StructureError> {
    if m.rows() == rows && m.cols() == cols {
        Ok(())
    } else {
        Err(StructureError::AxiomViolation {
            axiom: Axiom::Shape,
            row: m.rows(),
            col: m.cols(),
        })
    }
}

fn default_names(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("h{i}")).collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coalgebra {
    pub dim: usize,
    pub delta: LinMap,
    pub eps: LinMap,
    pub basis_names: Vec<String>,
}

impl Coalgebra {
    pub fn new(delta: LinMap, eps: LinMap) -> Self {
        let dim = eps.cols();
        Coalgebra {
            dim,
            delta,
            eps,
            basis_names: default_names(dim),
        }
    }

    pub fn with_names(mut self, names: &[&str]) -> Self {
        self.basis_names = names.iter().map(|s| s.to_string()).collect();
        self
    }

    pub fn validate(&self) -> Result<Certificate, StructureError> {
        let n = self.dim;
        check_shape(&self.delta, n * n, n)?;
        check_shape(&self.eps, 1, n)?;
        let id = LinMap::identity(n);
        let d = &self.delta;
        compare(
            Axiom::Coassociativity,
            &(&d.kron(&id) * d),
            &(&id.kron(d) * d),
        )?;
        compare(Axiom::LeftCounit, &(&self.eps.kron(&id) * d), &id)?;
        compare(Axiom::RightCounit, &(&id.kron(&self.eps) * d), &id)?;
        Ok(Certificate {
            kind: "coalgebra",
            dim: n,
            axioms: vec![
                Axiom::Coassociativity,
                Axiom::LeftCounit,
                Axiom::RightCounit,
            ],
        })
    }

    /// Coefficient `a^i_{j,k}` of `h_j ⊗ h_k` in `Δ(h_i)`.
    pub fn coeff(&self, i: usize, j: usize, k: usize) -> &Rational {
        self.delta.get(j * self.dim + k, i)
    }

    /// A vector `e` with `ε(e) = 1`: the first basis element with nonzero
    /// counit, rescaled.
    pub fn counit_section(&self) -> Vec<Rational> {
        let mut e = vec![rat(0); self.dim];
        for (i, slot) in e.iter_mut().enumerate() {
            let c = self.eps.get(0, i);
            if *c != rat(0) {
                *slot = c.recip();
                return e;
            }
        }
        panic!("counit is zero; not a coalgebra")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Algebra {
    pub dim: usize,
    pub mu: LinMap,
    pub unit: LinMap,
}

impl Algebra {
    pub fn new(mu: LinMap, unit: LinMap) -> Self {
        Algebra {
            dim: unit.rows(),
            mu,
            unit,
        }
    }

    pub fn validate(&self) -> Result<Certificate, StructureError> {
        let n = self.dim;
        check_shape(&self.mu, n, n * n)?;
        check_shape(&self.unit, n, 1)?;
        let id = LinMap::identity(n);
        let m = &self.mu;
        compare(
            Axiom::Associativity,
            &(m * &m.kron(&id)),
            &(m * &id.kron(m)),
        )?;
        compare(Axiom::LeftUnit, &(m * &self.unit.kron(&id)), &id)?;
        compare(Axiom::RightUnit, &(m * &id.kron(&self.unit)), &id)?;
        Ok(Certificate {
            kind: "algebra",
            dim: n,
            axioms: vec![Axiom::Associativity, Axiom::LeftUnit, Axiom::RightUnit],
        })
    }

    /// The product `h_a h_b` as a coordinate vector.
    pub fn product(&self, a: usize, b: usize) -> Vec<Rational> {
        self.mu.column(a * self.dim + b)
    }

    /// Structure constant: coefficient of `h_r` in `h_a h_b`.
    pub fn coeff(&self, r: usize, a: usize, b: usize) -> &Rational {
        self.mu.get(r, a * self.dim + b)
    }

    /// Left multiplication by `h_a`.
    pub fn left_mult(&self, a: usize) -> LinMap {
        let n = self.dim;
        LinMap::from_fn(n, n, |r, b| self.coeff(r, a, b).clone())
    }

    /// Right multiplication by `h_a`.
    pub fn right_mult(&self, a: usize) -> LinMap {
        let n = self.dim;
        LinMap::from_fn(n, n, |r, b| self.coeff(r, b, a).clone())
    }

    pub fn opposite(&self) -> Algebra {
        Algebra {
            dim: self.dim,
            mu: &self.mu * &flip(self.dim, self.dim),
            unit: self.unit.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bialgebra {
    pub coalgebra: Coalgebra,
    pub algebra: Algebra,
}

impl Bialgebra {
    pub fn dim(&self) -> usize {
        self.coalgebra.dim
    }

    pub fn validate(&self) -> Result<Certificate, StructureError> {
        let mut axioms = self.coalgebra.validate()?.axioms;
        axioms.extend(self.algebra.validate()?.axioms);
        let n = self.dim();
        if self.algebra.dim != n {
            return Err(StructureError::AxiomViolation {
                axiom: Axiom::Shape,
                row: self.algebra.dim,
                col: n,
            });
        }
        let (d, e) = (&self.coalgebra.delta, &self.coalgebra.eps);
        let (m, u) = (&self.algebra.mu, &self.algebra.unit);
        let middle = LinMap::identity(n)
            .kron(&flip(n, n))
            .kron(&LinMap::identity(n));
        compare(
            Axiom::DeltaMultiplicative,
            &(d * m),
            &(&(&m.kron(m) * &middle) * &d.kron(d)),
        )?;
        compare(Axiom::DeltaUnital, &(d * u), &u.kron(u))?;
        compare(Axiom::EpsMultiplicative, &(e * m), &e.kron(e))?;
        compare(Axiom::EpsUnital, &(e * u), &LinMap::identity(1))?;
        axioms.extend([
            Axiom::DeltaMultiplicative,
            Axiom::DeltaUnital,
            Axiom::EpsMultiplicative,
            Axiom::EpsUnital,
        ]);
        Ok(Certificate {
            kind: "bialgebra",
            dim: n,
            axioms,
        })
    }

    /// Solve the antipode identities as a linear system in the `n²` entries
    /// of `S`. The antipode is unique when it exists.
    pub fn solve_antipode(&self) -> Option<LinMap> {
        let n = self.dim();
        let c = &self.coalgebra;
        let a = &self.algebra;
        let unknowns = n * n;
        let mut sys = LinMap::zeros(2 * n * n, unknowns);
        let mut rhs = LinMap::zeros(2 * n * n, 1);
        for i in 0..n {
            for r in 0..n {
                let target = a.unit.get(r, 0) * c.eps.get(0, i);
                rhs.set(r * n + i, 0, target.clone());
                rhs.set(n * n + r * n + i, 0, target);
            }
            for j in 0..n {
                for k in 0..n {
                    let coeff = c.coeff(i, j, k);
                    if *coeff == rat(0) {
                        continue;
                    }
                    for l in 0..n {
                        for r in 0..n {
                            // left: S(h_j) h_k, unknown S_{l j}
                            let left = coeff * a.coeff(r, l, k);
                            if left != rat(0) {
                                let row = r * n + i;
                                let col = l * n + j;
                                let v = sys.get(row, col) + left;
                                sys.set(row, col, v);
                            }
                            // right: h_j S(h_k), unknown S_{l k}
                            let right = coeff * a.coeff(r, j, l);
                            if right != rat(0) {
                                let row = n * n + r * n + i;
                                let col = l * n + k;
                                let v = sys.get(row, col) + right;
                                sys.set(row, col, v);
                            }
                        }
                    }
                }
            }
        }
        let s = solve(&sys, &rhs).ok()?;
        Some(LinMap::from_fn(n, n, |l, j| s.get(l * n + j, 0).clone()))
    }

    pub fn into_hopf(self) -> Result<HopfAlgebra, StructureError> {
        let antipode = self.solve_antipode().ok_or(StructureError::NoAntipode)?;
        let h = HopfAlgebra {
            bialgebra: self,
            antipode,
        };
        h.validate()?;
        Ok(h)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HopfAlgebra {
    pub bialgebra: Bialgebra,
    pub antipode: LinMap,
}

impl HopfAlgebra {
    pub fn dim(&self) -> usize {
        self.bialgebra.dim()
    }

    pub fn coalgebra(&self) -> &Coalgebra {
        &self.bialgebra.coalgebra
    }

    pub fn algebra(&self) -> &Algebra {
        &self.bialgebra.algebra
    }

    pub fn validate(&self) -> Result<Certificate, StructureError> {
        let mut cert = self.bialgebra.validate()?;
        let n = self.dim();
        check_shape(&self.antipode, n, n)?;
        let id = LinMap::identity(n);
        let d = &self.coalgebra().delta;
        let m = &self.algebra().mu;
        let ue = &self.algebra().unit * &self.coalgebra().eps;
        compare(
            Axiom::LeftAntipode,
            &(&(m * &self.antipode.kron(&id)) * d),
            &ue,
        )?;
        compare(
            Axiom::RightAntipode,
            &(&(m * &id.kron(&self.antipode)) * d),
            &ue,
        )?;
        cert.kind = "hopf";
        cert.axioms
            .extend([Axiom::LeftAntipode, Axiom::RightAntipode]);
        Ok(cert)
    }
}

impl Dualize for Coalgebra {
    type Dual = Algebra;

    fn dualize(&self) -> Algebra {
        Algebra {
            dim: self.dim,
            mu: self.delta.transpose(),
            unit: self.eps.transpose(),
        }
    }
}

impl Dualize for Algebra {
    type Dual = Coalgebra;

    fn dualize(&self) -> Coalgebra {
        Coalgebra {
            dim: self.dim,
            delta: self.mu.transpose(),
            eps: self.unit.transpose(),
            basis_names: default_names(self.dim),
        }
    }
}

impl Dualize for Bialgebra {
    type Dual = Bialgebra;

    fn dualize(&self) -> Bialgebra {
        Bialgebra {
            coalgebra: self.algebra.dualize(),
            algebra: self.coalgebra.dualize(),
        }
    }
}

impl Dualize for HopfAlgebra {
    type Dual = HopfAlgebra;

    fn dualize(&self) -> HopfAlgebra {
        HopfAlgebra {
            bialgebra: self.bialgebra.dualize(),
            antipode: self.antipode.transpose(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<Vec<usize>>,
    inverse: Vec<usize>,
    identity: usize,
    names: Vec<String>,
}

/// Identity element of a finite multiplication table, after checking shape
/// and associativity.
fn monoid_identity(table: &[Vec<usize>]) -> Result<usize, StructureError> {
    let n = table.len();
    if n == 0 {
        return Err(StructureError::BadGroup("empty table".into()));
    }
    if table
        .iter()
        .any(|r| r.len() != n || r.iter().any(|&x| x >= n))
    {
        return Err(StructureError::BadGroup(
            "table is not n×n over 0..n".into(),
        ));
    }
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if table[table[a][b]][c] != table[a][table[b][c]] {
                    return Err(StructureError::AxiomViolation {
                        axiom: Axiom::Associativity,
                        row: a,
                        col: b * n + c,
                    });
                }
            }
        }
    }
    (0..n)
        .find(|&e| (0..n).all(|a| table[e][a] == a && table[a][e] == a))
        .ok_or_else(|| StructureError::BadGroup("no identity element".into()))
}

impl FiniteGroup {
    pub fn from_table(table: Vec<Vec<usize>>) -> Result<Self, StructureError> {
        let identity = monoid_identity(&table)?;
        let n = table.len();
        let mut inverse = Vec::with_capacity(n);
        for (a, row) in table.iter().enumerate() {
            let inv = (0..n)
                .find(|&b| row[b] == identity && table[b][a] == identity)
                .ok_or_else(|| StructureError::BadGroup(format!("element {a} has no inverse")))?;
            inverse.push(inv);
        }
        Ok(FiniteGroup {
            order: n,
            table,
            inverse,
            identity,
            names: (0..n).map(|i| format!("g{i}")).collect(),
        })
    }

    pub fn trivial() -> Self {
        Self::cyclic(1)
    }

    /// `C_n` with element `i` standing for `g^i`.
    pub fn cyclic(n: usize) -> Self {
        let table = (0..n)
            .map(|a| (0..n).map(|b| (a + b) % n).collect())
            .collect();
        let mut g = Self::from_table(table).expect("cyclic table is a group");
        g.names = (0..n)
            .map(|i| match i {
                0 => "1".to_string(),
                1 => "g".to_string(),
                _ => format!("g^{i}"),
            })
            .collect();
        g
    }

    /// The symmetric group on `k` letters, elements in lexicographic order of
    /// their one-line notation; `(a·b)(x) = a(b(x))`.
    pub fn symmetric(k: usize) -> Self {
        let mut perms: Vec<Vec<usize>> = Vec::new();
        let mut current: Vec<usize> = (0..k).collect();
        loop {
            perms.push(current.clone());
            // next permutation in lexicographic order
            let Some(i) = (1..k).rev().find(|&i| current[i - 1] < current[i]) else {
                break;
            };
            let j = (i..k).rev().find(|&j| current[j] > current[i - 1]).unwrap();
            current.swap(i - 1, j);
            current[i..].reverse();
        }
        let index = |p: &Vec<usize>| perms.iter().position(|q| q == p).unwrap();
        let table = perms
            .iter()
            .map(|a| {
                perms
                    .iter()
                    .map(|b| index(&b.iter().map(|&x| a[x]).collect()))
                    .collect()
            })
            .collect();
        let mut g = Self::from_table(table).expect("symmetric table is a group");
        g.names = perms
            .iter()
            .map(|p| p.iter().map(|x| x.to_string()).collect::<String>())
            .collect();
        g
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }
}

/// `k[M]` for a finite monoid table with every basis element grouplike.
fn monoid_algebra(table: &[Vec<usize>], identity: usize) -> Bialgebra {
    let n = table.len();
    let delta = LinMap::from_fn(n * n, n, |r, i| rat((r == i * n + i) as i64));
    let eps = LinMap::from_fn(1, n, |_, _| rat(1));
    let mu = LinMap::from_fn(n, n * n, |r, c| rat((table[c / n][c % n] == r) as i64));
    let unit = LinMap::from_fn(n, 1, |r, _| rat((r == identity) as i64));
    Bialgebra {
        coalgebra: Coalgebra::new(delta, eps),
        algebra: Algebra::new(mu, unit),
    }
}

pub fn group_algebra(g: &FiniteGroup) -> HopfAlgebra {
    let mut b = monoid_algebra(&g.table, g.identity);
    b.coalgebra.basis_names = g.names.clone();
    let n = g.order;
    let antipode = LinMap::from_fn(n, n, |r, c| rat((g.inverse[c] == r) as i64));
    HopfAlgebra {
        bialgebra: b,
        antipode,
    }
}

pub fn monoid_bialgebra(table: &[Vec<usize>]) -> Result<Bialgebra, StructureError> {
    let identity = monoid_identity(table)?;
    let b = monoid_algebra(table, identity);
    b.validate()?;
    Ok(b)
}

/// The monoid `{1, x, x²}` with `x³ = x²`.
pub fn monoid3() -> Bialgebra {
    let table = vec![vec![0, 1, 2], vec![1, 2, 2], vec![2, 2, 2]];
    let mut b = monoid_bialgebra(&table).expect("monoid3 table is associative");
    b.coalgebra.basis_names = vec!["1".into(), "x".into(), "x^2".into()];
    b
}

/// The monoid `{1, e}` with `e² = e`.
pub fn idempotent_monoid() -> Bialgebra {
    let table = vec![vec![0, 1], vec![1, 1]];
    let mut b = monoid_bialgebra(&table).expect("idempotent table is associative");
    b.coalgebra.basis_names = vec!["1".into(), "e".into()];
    b
}

/// Sweedler's four-dimensional Hopf algebra on basis `(1, g, y, gy)` with
/// `g² = 1`, `y² = 0`, `yg = -gy`, `Δ(g) = g⊗g`, `Δ(y) = y⊗g + 1⊗y`. The
/// antipode is solved, not supplied.
pub fn sweedler_h4() -> HopfAlgebra {
    let n = 4;
    // products h_a h_b = sign * h_idx, basis indices 0=1, 1=g, 2=y, 3=gy
    let product = |a: usize, b: usize| -> Option<(i64, usize)> {
        match (a, b) {
            (0, b) => Some((1, b)),
            (a, 0) => Some((1, a)),
            (1, 1) => Some((1, 0)),
            (1, 2) => Some((1, 3)),
            (1, 3) => Some((1, 2)),
            (2, 1) => Some((-1, 3)),
            (3, 1) => Some((-1, 2)),
            _ => None,
        }
    };
    let mu = LinMap::from_fn(n, n * n, |r, c| match product(c / n, c % n) {
        Some((s, idx)) if idx == r => rat(s),
        _ => rat(0),
    });
    let unit = LinMap::from_i64(4, 1, &[1, 0, 0, 0]);
    let mut delta = LinMap::zeros(n * n, n);
    let mut put = |i: usize, j: usize, k: usize| delta.set(j * n + k, i, rat(1));
    put(0, 0, 0);
    put(1, 1, 1);
    put(2, 2, 1);
    put(2, 0, 2);
    put(3, 3, 0);
    put(3, 1, 3);
    let eps = LinMap::from_i64(1, 4, &[1, 1, 0, 0]);
    let bialgebra = Bialgebra {
        coalgebra: Coalgebra::new(delta, eps).with_names(&["1", "g", "y", "gy"]),
        algebra: Algebra::new(mu, unit),
    };
    bialgebra.into_hopf().expect("Sweedler algebra is Hopf")
}

/// Two-dimensional coalgebra on `(g, x)`: `g` grouplike, `Δ(x) = g⊗x + x⊗g`,
/// `ε(x) = 0`.
pub fn two_dim_coalgebra() -> Coalgebra {
    let mut delta = LinMap::zeros(4, 2);
    delta.set(0, 0, rat(1));
    delta.set(1, 1, rat(1));
    delta.set(2, 1, rat(1));
    Coalgebra::new(delta, LinMap::from_i64(1, 2, &[1, 0])).with_names(&["g", "x"])
}

/// Which structure map a mutation touched.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum StructureMap {
    Delta,
    Eps,
    Mu,
    Unit,
    Antipode,
}

#[derive(Debug, Clone)]
pub struct Mutation {
    pub map: StructureMap,
    pub row: usize,
    pub col: usize,
    pub mutated: HopfAlgebra,
}

/// Deterministic single-entry mutations: each structure map gets `+1` added
/// at a spread of positions.
pub fn single_entry_mutations(h: &HopfAlgebra, per_map: usize) -> Vec<Mutation> {
    let mut out = Vec::new();
    let maps = [
        StructureMap::Delta,
        StructureMap::Eps,
        StructureMap::Mu,
        StructureMap::Unit,
        StructureMap::Antipode,
    ];
    for map in maps {
        let m = match map {
            StructureMap::Delta => &h.bialgebra.coalgebra.delta,
            StructureMap::Eps => &h.bialgebra.coalgebra.eps,
            StructureMap::Mu => &h.bialgebra.algebra.mu,
            StructureMap::Unit => &h.bialgebra.algebra.unit,
            StructureMap::Antipode => &h.antipode,
        };
        let total = m.rows() * m.cols();
        let count = per_map.min(total);
        for t in 0..count {
            // spread positions with a stride coprime-ish to the matrix size
            let flat = (t * 7 + t / 3) % total;
            let (row, col) = (flat / m.cols(), flat % m.cols());
            let mut mutated = h.clone();
            let target = match map {
                StructureMap::Delta => &mut mutated.bialgebra.coalgebra.delta,
                StructureMap::Eps => &mut mutated.bialgebra.coalgebra.eps,
                StructureMap::Mu => &mut mutated.bialgebra.algebra.mu,
                StructureMap::Unit => &mut mutated.bialgebra.algebra.unit,
                StructureMap::Antipode => &mut mutated.antipode,
            };
            let v = target.get(row, col) + rat(1);
            target.set(row, col, v);
            out.push(Mutation {
                map,
                row,
                col,
                mutated,
            });
        }
    }
    out
}

/// JSON form shared by every structure kind.
#[derive(Debug, Clone, Serialize, Deserialize, Default)]
pub struct StructureJson {
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dim: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta: Option<LinMap>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eps: Option<LinMap>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mu: Option<LinMap>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unit: Option<LinMap>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub antipode: Option<LinMap>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis_names: Option<Vec<String>>,
    /// Multiplication table, for `kind = "group"` and monoid bialgebras.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table: Option<Vec<Vec<usize>>>,
}

/// A parsed structure of any kind.
#[derive(Debug, Clone)]
pub enum Structure {
    Coalgebra(Coalgebra),
    Algebra(Algebra),
    Bialgebra(Bialgebra),
    Hopf(HopfAlgebra),
    Group(FiniteGroup, HopfAlgebra),
}

#[derive(Debug, Error)]
pub enum StructureParseError {
    #[error("unknown structure kind {0:?}")]
    UnknownKind(String),
    #[error("field {0:?} is required for this kind")]
    Missing(&'static str),
    #[error(transparent)]
    Structure(#[from] StructureError),
}

impl StructureJson {
    pub fn parse(self) -> Result<Structure, StructureParseError> {
        let need = |m: Option<LinMap>, name| m.ok_or(StructureParseError::Missing(name));
        let names = self.basis_names.clone();
        let coalgebra = |delta, eps| {
            let mut c = Coalgebra::new(delta, eps);
            if let Some(n) = &names {
                c.basis_names = n.clone();
            }
            c
        };
        match self.kind.as_str() {
            "coalgebra" => Ok(Structure::Coalgebra(coalgebra(
                need(self.delta, "delta")?,
                need(self.eps, "eps")?,
            ))),
            "algebra" => Ok(Structure::Algebra(Algebra::new(
                need(self.mu, "mu")?,
                need(self.unit, "unit")?,
            ))),
            "bialgebra" | "hopf" => {
                let b = match self.table {
                    Some(t) => monoid_bialgebra(&t)?,
                    None => Bialgebra {
                        coalgebra: coalgebra(need(self.delta, "delta")?, need(self.eps, "eps")?),
                        algebra: Algebra::new(need(self.mu, "mu")?, need(self.unit, "unit")?),
                    },
                };
                if self.kind == "bialgebra" {
                    return Ok(Structure::Bialgebra(b));
                }
                let antipode = match self.antipode {
                    Some(s) => s,
                    None => b.solve_antipode().ok_or(StructureError::NoAntipode)?,
                };
                Ok(Structure::Hopf(HopfAlgebra {
                    bialgebra: b,
                    antipode,
                }))
            }
            "group" => {
                let g = FiniteGroup::from_table(need_table(self.table)?)?;
                let h = group_algebra(&g);
                Ok(Structure::Group(g, h))
            }
            other => Err(StructureParseError::UnknownKind(other.to_string())),
        }
    }
}

fn need_table(t: Option<Vec<Vec<usize>>>) -> Result<Vec<Vec<usize>>, StructureParseError> {
    t.ok_or(StructureParseError::Missing("table"))
}

impl Structure {
    pub fn validate(&self) -> Result<Certificate, StructureError> {
        match self {
            Structure::Coalgebra(c) => c.validate(),
            Structure::Algebra(a) => a.validate(),
            Structure::Bialgebra(b) => b.validate(),
            Structure::Hopf(h) | Structure::Group(_, h) => h.validate(),
        }
    }

    pub fn coalgebra(&self) -> Option<&Coalgebra> {
        match self {
            Structure::Coalgebra(c) => Some(c),
            Structure::Algebra(_) => None,
            Structure::Bialgebra(b) => Some(&b.coalgebra),
            Structure::Hopf(h) | Structure::Group(_, h) => Some(h.coalgebra()),
        }
    }

    pub fn bialgebra(&self) -> Option<&Bialgebra> {
        match self {
            Structure::Bialgebra(b) => Some(b),
            Structure::Hopf(h) | Structure::Group(_, h) => Some(&h.bialgebra),
            _ => None,
        }
    }

    pub fn hopf(&self) -> Option<&HopfAlgebra> {
        match self {
            Structure::Hopf(h) | Structure::Group(_, h) => Some(h),
            _ => None,
        }
    }
}

/// Named built-in structures, addressable as `builtin:<name>`.
pub fn builtin(name: &str) -> Option<Structure> {
    let s = match name {
        "kC1" | "trivial" => {
            let g = FiniteGroup::trivial();
            let h = group_algebra(&g);
            Structure::Group(g, h)
        }
        "kC2" => {
            let g = FiniteGroup::cyclic(2);
            let h = group_algebra(&g);
            Structure::Group(g, h)
        }
        "kC3" => {
            let g = FiniteGroup::cyclic(3);
            let h = group_algebra(&g);
            Structure::Group(g, h)
        }
        "kS3" => {
            let g = FiniteGroup::symmetric(3);
            let h = group_algebra(&g);
            Structure::Group(g, h)
        }
        "H4" | "sweedler" => Structure::Hopf(sweedler_h4()),
        "monoid3" => Structure::Bialgebra(monoid3()),
        "idempotent" => Structure::Bialgebra(idempotent_monoid()),
        "two-dim" => Structure::Coalgebra(two_dim_coalgebra()),
        _ => return None,
    };
    Some(s)
}

pub const BUILTIN_NAMES: &[&str] = &[
    "trivial",
    "kC2",
    "kC3",
    "kS3",
    "H4",
    "monoid3",
    "idempotent",
    "two-dim",
];

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_algebras_are_hopf() {
        for g in [
            FiniteGroup::trivial(),
            FiniteGroup::cyclic(2),
            FiniteGroup::cyclic(3),
            FiniteGroup::symmetric(3),
        ] {
            let h = group_algebra(&g);
            h.validate().unwrap();
            assert_eq!(h.dim(), g.order());
            assert!((&h.antipode * &h.antipode).is_identity());
            assert_eq!(h.bialgebra.solve_antipode().unwrap(), h.antipode);
        }
        let c2 = group_algebra(&FiniteGroup::cyclic(2));
        assert!(c2.antipode.is_identity());
        assert_eq!(FiniteGroup::symmetric(3).order(), 6);
    }

    #[test]
    fn sweedler_structure() {
        let h = sweedler_h4();
        h.validate().unwrap();
        // Δ(y) = y⊗g + 1⊗y
        assert_eq!(h.coalgebra().delta.column(2), {
            let mut v = vec![rat(0); 16];
            v[2 * 4 + 1] = rat(1);
            v[2] = rat(1);
            v
        });
        assert_eq!(h.coalgebra().eps, LinMap::from_i64(1, 4, &[1, 1, 0, 0]));
        // S(g) = g, S(y) = gy, S(gy) = -y
        assert_eq!(
            h.antipode,
            LinMap::from_i64(4, 4, &[1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, -1, 0, 0, 1, 0])
        );
        // the opposite sign is rejected
        let mut wrong = h.clone();
        wrong.antipode.set(3, 2, rat(-1));
        wrong.antipode.set(2, 3, rat(1));
        assert!(matches!(
            wrong.validate(),
            Err(StructureError::AxiomViolation { .. })
        ));
    }

    #[test]
    fn monoid_bialgebras() {
        let b = monoid3();
        b.validate().unwrap();
        assert!(b.solve_antipode().is_none());
        let e = idempotent_monoid();
        e.validate().unwrap();
        assert!(matches!(e.into_hopf(), Err(StructureError::NoAntipode)));
        let g = FiniteGroup::symmetric(3);
        let from_table = monoid_bialgebra(g.table()).unwrap();
        let h = group_algebra(&g);
        assert_eq!(from_table.coalgebra.delta, h.bialgebra.coalgebra.delta);
        assert_eq!(from_table.algebra, h.bialgebra.algebra);
        let bad = vec![vec![0, 1, 2], vec![1, 2, 0], vec![2, 2, 2]];
        assert!(monoid_bialgebra(&bad).is_err());
    }

    #[test]
    fn duals_validate() {
        for h in [group_algebra(&FiniteGroup::symmetric(3)), sweedler_h4()] {
            let d = h.dualize();
            d.validate().unwrap();
            assert_eq!(d.dualize(), {
                let mut back = h.clone();
                back.bialgebra.coalgebra.basis_names = default_names(h.dim());
                back
            });
        }
        monoid3().dualize().validate().unwrap();
        two_dim_coalgebra().dualize().validate().unwrap();
    }

    #[test]
    fn mutated_kc2_delta_fails_coassociativity_or_counit() {
        let h = group_algebra(&FiniteGroup::cyclic(2));
        let mut c = h.coalgebra().clone();
        // add h1⊗h1 to Δ(h0)
        c.delta.set(3, 0, rat(1));
        assert!(matches!(
            c.validate(),
            Err(StructureError::AxiomViolation {
                axiom: Axiom::Coassociativity | Axiom::LeftCounit,
                ..
            })
        ));
    }

    #[test]
    fn mutations_are_rejected() {
        for h in [
            group_algebra(&FiniteGroup::cyclic(2)),
            group_algebra(&FiniteGroup::symmetric(3)),
            sweedler_h4(),
        ] {
            let muts = single_entry_mutations(&h, 8);
            assert!(muts.len() >= 20);
            for m in muts {
                assert!(
                    m.mutated.validate().is_err(),
                    "{:?} at ({}, {}) survived",
                    m.map,
                    m.row,
                    m.col
                );
            }
        }
    }

    #[test]
    fn json_roundtrip() {
        let h = sweedler_h4();
        let json = StructureJson {
            kind: "hopf".into(),
            dim: Some(4),
            delta: Some(h.coalgebra().delta.clone()),
            eps: Some(h.coalgebra().eps.clone()),
            mu: Some(h.algebra().mu.clone()),
            unit: Some(h.algebra().unit.clone()),
            antipode: None,
            basis_names: Some(h.coalgebra().basis_names.clone()),
            table: None,
        };
        let text = serde_json::to_string(&json).unwrap();
        let back: StructureJson = serde_json::from_str(&text).unwrap();
        let parsed = back.parse().unwrap();
        parsed.validate().unwrap();
        assert_eq!(parsed.hopf().unwrap(), &h);
        for name in BUILTIN_NAMES {
            builtin(name).unwrap().validate().unwrap();
        }
    }
}
