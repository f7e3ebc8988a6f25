//! Exact rational linear algebra.
//!
//! Everything downstream (pushouts, equalizers, globalizations) reduces to the
//! handful of primitives here: reduced row-echelon form, kernels, canonical
//! subspaces, quotients with a chosen section, and factoring a map through an
//! epimorphism. Matrices are dense and act on column vectors: a `LinMap` with
//! `rows = r` and `cols = c` is a map from a `c`-dimensional space to an
//! `r`-dimensional one.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// The only scalar type: an arbitrary-precision reduced fraction.
pub type Rational = BigRational;

/// Integer-valued rational.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// The fraction `n/d`, reduced. Panics when `d == 0`.
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Canonical text form: `"p/q"`, or `"p"` when `q = 1`; the sign sits on the numerator.
pub fn format_rational(q: &Rational) -> String {
    q.to_string()
}

pub fn parse_rational(s: &str) -> Result<Rational, LaError> {
    let t = s.trim();
    let bad = || LaError::BadRational(s.to_string());
    match t.split_once('/') {
        None => BigInt::from_str(t)
            .map(Rational::from_integer)
            .map_err(|_| bad()),
        Some((p, q)) => {
            let p = BigInt::from_str(p.trim()).map_err(|_| bad())?;
            let q = BigInt::from_str(q.trim()).map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(p, q))
        }
    }
}

pub fn format_vector(v: &[Rational]) -> String {
    let parts: Vec<String> = v.iter().map(format_rational).collect();
    format!("({})", parts.join(", "))
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LaError {
    #[error("dimension mismatch in {op}: expected {expected}, found {found}")]
    DimensionMismatch {
        op: &'static str,
        expected: usize,
        found: usize,
    },
    /// The factoring obstruction: `witness` lies in the kernel of the map being
    /// factored through but is not killed by the target.
    #[error("no solution; obstruction witnessed by {}", format_vector(.witness))]
    NoSolution { witness: Vec<Rational> },
    #[error("malformed rational `{0}`")]
    BadRational(String),
    #[error("{found} entries cannot fill a {rows}x{cols} matrix")]
    BadShape {
        rows: usize,
        cols: usize,
        found: usize,
    },
}

fn check_dim(op: &'static str, expected: usize, found: usize) -> Result<(), LaError> {
    if expected == found {
        Ok(())
    } else {
        Err(LaError::DimensionMismatch {
            op,
            expected,
            found,
        })
    }
}

/// A dense matrix over ℚ, row-major.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "MatrixRepr", into = "MatrixRepr")]
pub struct LinMap {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

#[derive(Serialize, Deserialize)]
struct MatrixRepr {
    rows: usize,
    cols: usize,
    entries: Vec<String>,
}

impl TryFrom<MatrixRepr> for LinMap {
    type Error = LaError;

    fn try_from(r: MatrixRepr) -> Result<Self, Self::Error> {
        let entries = r
            .entries
            .iter()
            .map(|s| parse_rational(s))
            .collect::<Result<Vec<_>, _>>()?;
        LinMap::new(r.rows, r.cols, entries)
    }
}

impl From<LinMap> for MatrixRepr {
    fn from(m: LinMap) -> Self {
        MatrixRepr {
            rows: m.rows,
            cols: m.cols,
            entries: m.entries.iter().map(format_rational).collect(),
        }
    }
}

impl LinMap {
    pub fn new(rows: usize, cols: usize, entries: Vec<Rational>) -> Result<Self, LaError> {
        if entries.len() != rows * cols {
            return Err(LaError::BadShape {
                rows,
                cols,
                found: entries.len(),
            });
        }
        Ok(LinMap {
            rows,
            cols,
            entries,
        })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        LinMap {
            rows,
            cols,
            entries: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.entries[i * n + i] = Rational::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        LinMap {
            rows,
            cols,
            entries,
        }
    }

    /// Integer entries, row-major. Panics on a length mismatch; meant for fixtures.
    pub fn from_i64(rows: usize, cols: usize, entries: &[i64]) -> Self {
        assert_eq!(entries.len(), rows * cols, "from_i64: wrong entry count");
        LinMap {
            rows,
            cols,
            entries: entries.iter().map(|&x| rat(x)).collect(),
        }
    }

    pub fn from_rows(rows: &[Vec<Rational>], cols: usize) -> Self {
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "from_rows: ragged rows");
            entries.extend(r.iter().cloned());
        }
        LinMap {
            rows: rows.len(),
            cols,
            entries,
        }
    }

    /// The matrix whose columns are the given vectors.
    pub fn from_columns(columns: &[Vec<Rational>], rows: usize) -> Self {
        let cols = columns.len();
        let mut m = Self::zeros(rows, cols);
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows, "from_columns: ragged columns");
            for (i, x) in c.iter().enumerate() {
                m.entries[i * cols + j] = x.clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Rational) {
        self.entries[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> LinMap {
        LinMap::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    /// `self ∘ rhs`, checking that the codomain of `rhs` is the domain of `self`.
    pub fn compose(&self, rhs: &LinMap) -> Result<LinMap, LaError> {
        check_dim("compose", self.cols, rhs.rows)?;
        let sparse_rows = rhs.sparse_rows();
        let mut out = LinMap::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for (k, a) in self.row(i).iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for &(j, b) in &sparse_rows[k] {
                    out.entries[i * rhs.cols + j] += a * b;
                }
            }
        }
        Ok(out)
    }

    fn sparse_rows(&self) -> Vec<Vec<(usize, &Rational)>> {
        (0..self.rows)
            .map(|k| {
                self.row(k)
                    .iter()
                    .enumerate()
                    .filter(|(_, b)| !b.is_zero())
                    .collect()
            })
            .collect()
    }

    /// `self ∘ (f ⊗ id_n)` without forming the Kronecker product.
    pub fn compose_tensor_id(&self, f: &LinMap, n: usize) -> LinMap {
        assert_eq!(
            self.cols,
            f.rows * n,
            "compose_tensor_id: dimension mismatch"
        );
        let cols = f.cols * n;
        let fs = f.sparse_rows();
        let mut out = LinMap::zeros(self.rows, cols);
        for i in 0..self.rows {
            for (k, a) in self.row(i).iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                let (r, z) = (k / n, k % n);
                for &(c, b) in &fs[r] {
                    out.entries[i * cols + c * n + z] += a * b;
                }
            }
        }
        out
    }

    /// `self ∘ (id_n ⊗ f)` without forming the Kronecker product.
    pub fn compose_id_tensor(&self, n: usize, f: &LinMap) -> LinMap {
        assert_eq!(
            self.cols,
            f.rows * n,
            "compose_id_tensor: dimension mismatch"
        );
        let cols = f.cols * n;
        let fs = f.sparse_rows();
        let mut out = LinMap::zeros(self.rows, cols);
        for i in 0..self.rows {
            for (k, a) in self.row(i).iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                let (v, r) = (k / f.rows, k % f.rows);
                for &(c, b) in &fs[r] {
                    out.entries[i * cols + v * f.cols + c] += a * b;
                }
            }
        }
        out
    }

    /// `(self ⊗ id_n) ∘ rhs` without forming the Kronecker product.
    pub fn tensor_id_compose(&self, n: usize, rhs: &LinMap) -> LinMap {
        assert_eq!(
            self.cols * n,
            rhs.rows,
            "tensor_id_compose: dimension mismatch"
        );
        let bs = rhs.sparse_rows();
        let mut out = LinMap::zeros(self.rows * n, rhs.cols);
        for r in 0..self.rows {
            for (c, a) in self.row(r).iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for z in 0..n {
                    let row = (r * n + z) * rhs.cols;
                    for &(j, b) in &bs[c * n + z] {
                        out.entries[row + j] += a * b;
                    }
                }
            }
        }
        out
    }

    /// `(id_n ⊗ self) ∘ rhs` without forming the Kronecker product.
    pub fn id_tensor_compose(&self, n: usize, rhs: &LinMap) -> LinMap {
        assert_eq!(
            self.cols * n,
            rhs.rows,
            "id_tensor_compose: dimension mismatch"
        );
        let bs = rhs.sparse_rows();
        let mut out = LinMap::zeros(self.rows * n, rhs.cols);
        for v in 0..n {
            for r in 0..self.rows {
                let row = (v * self.rows + r) * rhs.cols;
                for (c, a) in self.row(r).iter().enumerate() {
                    if a.is_zero() {
                        continue;
                    }
                    for &(j, b) in &bs[v * self.cols + c] {
                        out.entries[row + j] += a * b;
                    }
                }
            }
        }
        out
    }

    /// Column `j` of the result is column `source(j)` of `self`; with a
    /// permutation `source` this is `self ∘ P` without forming `P`.
    pub fn permute_columns(&self, source: impl Fn(usize) -> usize) -> LinMap {
        LinMap::from_fn(self.rows, self.cols, |i, j| self.get(i, source(j)).clone())
    }

    pub fn apply(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols, "apply: vector length");
        (0..self.rows)
            .map(|i| {
                let mut acc = Rational::zero();
                for (a, x) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !x.is_zero() {
                        acc += a * x;
                    }
                }
                acc
            })
            .collect()
    }

    /// Kronecker product; with the left-factor-major index convention this is
    /// the matrix of `self ⊗ other`.
    pub fn kron(&self, other: &LinMap) -> LinMap {
        let rows = self.rows * other.rows;
        let cols = self.cols * other.cols;
        let mut out = LinMap::zeros(rows, cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        let b = other.get(k, l);
                        if b.is_zero() {
                            continue;
                        }
                        out.entries[(i * other.rows + k) * cols + j * other.cols + l] = a * b;
                    }
                }
            }
        }
        out
    }

    /// `[a | b | ...]`: a map out of a direct sum.
    pub fn hstack(blocks: &[&LinMap]) -> Result<LinMap, LaError> {
        let rows = blocks.first().map_or(0, |b| b.rows);
        for b in blocks {
            check_dim("hstack", rows, b.rows)?;
        }
        let cols: usize = blocks.iter().map(|b| b.cols).sum();
        let mut out = LinMap::zeros(rows, cols);
        let mut offset = 0;
        for b in blocks {
            for i in 0..rows {
                for j in 0..b.cols {
                    out.entries[i * cols + offset + j] = b.get(i, j).clone();
                }
            }
            offset += b.cols;
        }
        Ok(out)
    }

    /// Blocks stacked vertically: a map into a direct sum.
    pub fn vstack(blocks: &[&LinMap]) -> Result<LinMap, LaError> {
        let cols = blocks.first().map_or(0, |b| b.cols);
        for b in blocks {
            check_dim("vstack", cols, b.cols)?;
        }
        let rows: usize = blocks.iter().map(|b| b.rows).sum();
        let mut entries = Vec::with_capacity(rows * cols);
        for b in blocks {
            entries.extend(b.entries.iter().cloned());
        }
        Ok(LinMap {
            rows,
            cols,
            entries,
        })
    }

    pub fn direct_sum(&self, other: &LinMap) -> LinMap {
        let mut out = LinMap::zeros(self.rows + other.rows, self.cols + other.cols);
        let cols = out.cols;
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.entries[i * cols + j] = self.get(i, j).clone();
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                out.entries[(self.rows + i) * cols + self.cols + j] = other.get(i, j).clone();
            }
        }
        out
    }

    pub fn select_rows(&self, range: std::ops::Range<usize>) -> LinMap {
        LinMap::from_fn(range.len(), self.cols, |i, j| {
            self.get(range.start + i, j).clone()
        })
    }

    pub fn select_cols(&self, range: std::ops::Range<usize>) -> LinMap {
        LinMap::from_fn(self.rows, range.len(), |i, j| {
            self.get(i, range.start + j).clone()
        })
    }

    pub fn scale(&self, c: &Rational) -> LinMap {
        LinMap {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|x| x * c).collect(),
        }
    }

    pub fn checked_add(&self, rhs: &LinMap) -> Result<LinMap, LaError> {
        check_dim("add (rows)", self.rows, rhs.rows)?;
        check_dim("add (cols)", self.cols, rhs.cols)?;
        Ok(LinMap {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn checked_sub(&self, rhs: &LinMap) -> Result<LinMap, LaError> {
        check_dim("sub (rows)", self.rows, rhs.rows)?;
        check_dim("sub (cols)", self.cols, rhs.cols)?;
        Ok(LinMap {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && *self == LinMap::identity(self.rows)
    }

    pub fn rank(&self) -> usize {
        rref(self).rank
    }

    pub fn is_injective(&self) -> bool {
        self.rank() == self.cols
    }

    pub fn is_surjective(&self) -> bool {
        self.rank() == self.rows
    }

    pub fn inverse(&self) -> Option<LinMap> {
        if self.rows != self.cols {
            return None;
        }
        solve(self, &LinMap::identity(self.rows)).ok()
    }

    /// First `(row, col)` where the two matrices differ; used as a witness.
    pub fn first_difference(&self, other: &LinMap) -> Option<(usize, usize)> {
        if self.rows != other.rows || self.cols != other.cols {
            return Some((0, 0));
        }
        self.entries
            .iter()
            .zip(&other.entries)
            .position(|(a, b)| a != b)
            .map(|k| (k / self.cols, k % self.cols))
    }
}

impl fmt::Debug for LinMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LinMap {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = self.row(i).iter().map(format_rational).collect();
            write!(f, "{}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

impl Mul for &LinMap {
    type Output = LinMap;

    /// Composition `self ∘ rhs`. Panics on a dimension mismatch; use
    /// [`LinMap::compose`] where the shapes are not fixed by construction.
    fn mul(self, rhs: &LinMap) -> LinMap {
        self.compose(rhs)
            .expect("matrix product dimension mismatch")
    }
}

impl Add for &LinMap {
    type Output = LinMap;

    fn add(self, rhs: &LinMap) -> LinMap {
        self.checked_add(rhs)
            .expect("matrix sum dimension mismatch")
    }
}

impl Sub for &LinMap {
    type Output = LinMap;

    fn sub(self, rhs: &LinMap) -> LinMap {
        self.checked_sub(rhs)
            .expect("matrix difference dimension mismatch")
    }
}

impl Neg for &LinMap {
    type Output = LinMap;

    fn neg(self) -> LinMap {
        LinMap {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|x| -x).collect(),
        }
    }
}

/// Output of [`rref`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rref {
    pub matrix: LinMap,
    pub pivots: Vec<usize>,
    pub rank: usize,
}

/// Gauss-Jordan elimination. The pivot in each column is the first nonzero
/// entry at or below the current row, so the result is deterministic.
pub fn rref(m: &LinMap) -> Rref {
    let (nrows, ncols) = (m.rows, m.cols);
    let mut rows: Vec<Vec<Rational>> = (0..nrows).map(|i| m.row(i).to_vec()).collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        if !inv.is_one() {
            for x in rows[r][c..].iter_mut() {
                if !x.is_zero() {
                    *x *= &inv;
                }
            }
        }
        let pivot_row = std::mem::take(&mut rows[r]);
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let factor = row[c].clone();
            for (x, y) in row[c..].iter_mut().zip(&pivot_row[c..]) {
                if !y.is_zero() {
                    *x -= &factor * y;
                }
            }
        }
        rows[r] = pivot_row;
        pivots.push(c);
        r += 1;
    }
    let rank = pivots.len();
    Rref {
        matrix: LinMap::from_rows(&rows, ncols),
        pivots,
        rank,
    }
}

/// A subspace of `ℚ^ambient_dim`, stored as the RREF of its basis rows. Equality
/// of subspaces is equality of these canonical forms.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "SubspaceRepr", into = "SubspaceRepr")]
pub struct Subspace {
    ambient_dim: usize,
    basis: LinMap,
}

#[derive(Serialize, Deserialize)]
struct SubspaceRepr {
    ambient_dim: usize,
    basis: LinMap,
}

impl TryFrom<SubspaceRepr> for Subspace {
    type Error = LaError;

    fn try_from(r: SubspaceRepr) -> Result<Self, LaError> {
        check_dim("subspace basis width", r.ambient_dim, r.basis.cols)?;
        Ok(Subspace::from_rows(&r.basis))
    }
}

impl From<Subspace> for SubspaceRepr {
    fn from(s: Subspace) -> Self {
        SubspaceRepr {
            ambient_dim: s.ambient_dim,
            basis: s.basis,
        }
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Subspace(dim {} in {}: {:?})",
            self.dim(),
            self.ambient_dim,
            self.basis
        )
    }
}

impl Subspace {
    pub fn zero(ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: LinMap::zeros(0, ambient_dim),
        }
    }

    pub fn full(ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: LinMap::identity(ambient_dim),
        }
    }

    /// The row space of `m`.
    pub fn from_rows(m: &LinMap) -> Self {
        let r = rref(m);
        Subspace {
            ambient_dim: m.cols,
            basis: r.matrix.select_rows(0..r.rank),
        }
    }

    pub fn span(ambient_dim: usize, vectors: &[Vec<Rational>]) -> Self {
        Self::from_rows(&LinMap::from_rows(vectors, ambient_dim))
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.rows
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    /// Basis vectors as rows, in canonical RREF.
    pub fn basis(&self) -> &LinMap {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vec<Rational>> {
        (0..self.dim())
            .map(|i| self.basis.row(i).to_vec())
            .collect()
    }

    /// Pivot column of each basis row.
    pub fn pivots(&self) -> Vec<usize> {
        (0..self.dim())
            .map(|i| {
                self.basis
                    .row(i)
                    .iter()
                    .position(|x| !x.is_zero())
                    .expect("canonical basis rows are nonzero")
            })
            .collect()
    }

    /// `ambient × dim` matrix whose columns are the basis vectors.
    pub fn inclusion(&self) -> LinMap {
        self.basis.transpose()
    }

    /// Left inverse of [`Subspace::inclusion`]: reads off the pivot coordinates.
    pub fn coordinate_map(&self) -> LinMap {
        let mut m = LinMap::zeros(self.dim(), self.ambient_dim);
        for (i, p) in self.pivots().into_iter().enumerate() {
            m.set(i, p, Rational::one());
        }
        m
    }

    /// Coordinates of `v` in the canonical basis, or `None` if `v` is not in the span.
    pub fn coordinates(&self, v: &[Rational]) -> Option<Vec<Rational>> {
        assert_eq!(v.len(), self.ambient_dim, "coordinates: vector length");
        let coords: Vec<Rational> = self.pivots().into_iter().map(|p| v[p].clone()).collect();
        let back = self.inclusion().apply(&coords);
        (back == v).then_some(coords)
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn contains_subspace(&self, other: &Subspace) -> Result<bool, LaError> {
        check_dim("contains_subspace", self.ambient_dim, other.ambient_dim)?;
        Ok((0..other.dim()).all(|i| self.contains(other.basis.row(i))))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace, LaError> {
        check_dim("sum", self.ambient_dim, other.ambient_dim)?;
        Ok(Subspace::from_rows(&LinMap::vstack(&[
            &self.basis,
            &other.basis,
        ])?))
    }

    /// Computed as the kernel of `[A | -B]` on the stacked coordinates, mapped
    /// back through the first block.
    pub fn intersection(&self, other: &Subspace) -> Result<Subspace, LaError> {
        check_dim("intersection", self.ambient_dim, other.ambient_dim)?;
        let a = self.inclusion();
        let b = other.inclusion();
        let stacked = LinMap::hstack(&[&a, &(-&b)])?;
        let k = kernel(&stacked);
        let first = k.inclusion().select_rows(0..self.dim());
        Ok(image(&(&a * &first)))
    }
}

/// Image (column space) of `f`.
pub fn image(f: &LinMap) -> Subspace {
    Subspace::from_rows(&f.transpose())
}

/// Null space of `m`, with canonical basis; `dim = cols - rank`.
pub fn kernel(m: &LinMap) -> Subspace {
    let r = rref(m);
    let n = m.cols;
    let mut is_pivot = vec![false; n];
    for &p in &r.pivots {
        is_pivot[p] = true;
    }
    let vectors: Vec<Vec<Rational>> = (0..n)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut v = vec![Rational::zero(); n];
            v[f] = Rational::one();
            for (i, &p) in r.pivots.iter().enumerate() {
                v[p] = -r.matrix.get(i, f).clone();
            }
            v
        })
        .collect();
    Subspace::span(n, &vectors)
}

/// `{v : f(v) ∈ s}`.
pub fn preimage(f: &LinMap, s: &Subspace) -> Result<Subspace, LaError> {
    check_dim("preimage", s.ambient_dim, f.rows)?;
    let q = quotient_by(s);
    Ok(kernel(&(&q.proj * f)))
}

/// `V / relations` presented by a projection onto the non-pivot coordinates of
/// the relations' canonical basis, together with the section that sends each
/// quotient basis vector to the corresponding standard basis vector.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct QuotientPresentation {
    pub ambient_dim: usize,
    pub relations: Subspace,
    pub proj: LinMap,
    pub section: LinMap,
}

impl QuotientPresentation {
    pub fn quotient_dim(&self) -> usize {
        self.proj.rows
    }
}

pub fn quotient_by(relations: &Subspace) -> QuotientPresentation {
    let n = relations.ambient_dim;
    let pivots = relations.pivots();
    let mut is_pivot = vec![false; n];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let free: Vec<usize> = (0..n).filter(|&c| !is_pivot[c]).collect();
    let mut proj = LinMap::zeros(free.len(), n);
    let mut section = LinMap::zeros(n, free.len());
    for (r, &c) in free.iter().enumerate() {
        proj.set(r, c, Rational::one());
        section.set(c, r, Rational::one());
    }
    // e_p for a pivot column p reduces to e_p - b_i, whose free coordinates are -b_i.
    for (i, &p) in pivots.iter().enumerate() {
        for (r, &c) in free.iter().enumerate() {
            let x = relations.basis.get(i, c);
            if !x.is_zero() {
                proj.set(r, p, -x.clone());
            }
        }
    }
    QuotientPresentation {
        ambient_dim: n,
        relations: relations.clone(),
        proj,
        section,
    }
}

/// Solve `a · x = b` for `x`. Free variables are set to zero; the returned
/// solution is checked by exact multiplication. On inconsistency the witness
/// `y` satisfies `yᵀa = 0` and `yᵀb ≠ 0`.
pub fn solve(a: &LinMap, b: &LinMap) -> Result<LinMap, LaError> {
    check_dim("solve", a.rows, b.rows)?;
    let (n, t) = (a.cols, b.cols);
    let aug = LinMap::hstack(&[a, b])?;
    let r = rref(&aug);
    if r.pivots.iter().any(|&p| p >= n) {
        let left = kernel(&a.transpose());
        let bt = b.transpose();
        let witness = left
            .basis_vectors()
            .into_iter()
            .find(|y| bt.apply(y).iter().any(|x| !x.is_zero()))
            .expect("inconsistent system has a left-kernel witness");
        return Err(LaError::NoSolution { witness });
    }
    let mut x = LinMap::zeros(n, t);
    for (i, &p) in r.pivots.iter().enumerate() {
        for j in 0..t {
            x.set(p, j, r.matrix.get(i, n + j).clone());
        }
    }
    debug_assert!(&(a * &x) == b);
    Ok(x)
}

/// The map `u` with `u ∘ through = target`. When `through` is an epimorphism
/// the solution is unique. Fails with a vector of `ker(through)` that `target`
/// does not kill.
pub fn solve_factor(through: &LinMap, target: &LinMap) -> Result<LinMap, LaError> {
    check_dim("solve_factor", through.cols, target.cols)?;
    let u = solve(&through.transpose(), &target.transpose())?.transpose();
    if &(&u * through) != target {
        unreachable!("solve_factor produced a non-solution");
    }
    Ok(u)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: usize, cols: usize, e: &[i64]) -> LinMap {
        LinMap::from_i64(rows, cols, e)
    }

    fn v(e: &[i64]) -> Vec<Rational> {
        e.iter().map(|&x| rat(x)).collect()
    }

    #[test]
    fn rref_examples() {
        let r = rref(&m(2, 2, &[1, 2, 2, 4]));
        assert_eq!(r.matrix, m(2, 2, &[1, 2, 0, 0]));
        assert_eq!(r.pivots, vec![0]);
        assert_eq!(r.rank, 1);

        let id = LinMap::identity(3);
        let r = rref(&id);
        assert_eq!(r.matrix, id);
        assert_eq!(r.pivots, vec![0, 1, 2]);

        let r = rref(&LinMap::zeros(2, 3));
        assert!(r.matrix.is_zero());
        assert!(r.pivots.is_empty());
        assert_eq!(r.rank, 0);
    }

    #[test]
    fn rref_divides_exactly() {
        let r = rref(&m(2, 2, &[2, 1, 4, 3]));
        assert_eq!(r.matrix, LinMap::identity(2));
        let r = rref(&m(1, 2, &[3, 1]));
        assert_eq!(r.matrix.get(0, 1), &ratio(1, 3));
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(kernel(&m(1, 2, &[1, -1])), Subspace::span(2, &[v(&[1, 1])]));
        assert!(kernel(&LinMap::identity(4)).is_zero());
        let k = kernel(&m(2, 2, &[1, 2, 2, 4]));
        assert_eq!(k, Subspace::span(2, &[v(&[-2, 1])]));
        // canonical form normalizes the leading entry
        assert_eq!(
            k.basis(),
            &LinMap::new(1, 2, vec![rat(1), ratio(-1, 2)]).unwrap()
        );
    }

    #[test]
    fn quotient_examples() {
        let q = quotient_by(&Subspace::zero(3));
        assert_eq!(q.proj, LinMap::identity(3));
        let q = quotient_by(&Subspace::full(3));
        assert_eq!(q.quotient_dim(), 0);

        let rel = Subspace::span(2, &[v(&[1, 1])]);
        let q = quotient_by(&rel);
        assert_eq!(q.quotient_dim(), 1);
        assert_eq!(kernel(&q.proj), rel);
        assert!((&q.proj * &q.section).is_identity());
    }

    #[test]
    fn subspace_operations() {
        let a = Subspace::span(2, &[v(&[1, 0])]);
        let b = Subspace::span(2, &[v(&[0, 1])]);
        assert!(a.intersection(&b).unwrap().is_zero());
        assert_eq!(preimage(&LinMap::identity(2), &a).unwrap(), a);

        let a = Subspace::span(3, &[v(&[1, 1, 0])]);
        let b = Subspace::span(3, &[v(&[0, 1, 1])]);
        assert_eq!(a.sum(&b).unwrap().dim(), 2);
        assert!(a.intersection(&b).unwrap().is_zero());

        let c = Subspace::span(3, &[v(&[1, 0, 0]), v(&[0, 1, 0])]);
        let d = Subspace::span(3, &[v(&[0, 1, 0]), v(&[0, 0, 1])]);
        assert_eq!(
            c.intersection(&d).unwrap(),
            Subspace::span(3, &[v(&[0, 1, 0])])
        );
        assert!(c
            .contains_subspace(&Subspace::span(3, &[v(&[2, 3, 0])]))
            .unwrap());
        assert!(!c.contains(&v(&[0, 0, 1])));

        assert!(matches!(
            a.sum(&Subspace::zero(2)),
            Err(LaError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn image_and_preimage() {
        let f = m(3, 2, &[1, 0, 0, 1, 1, 1]);
        let im = image(&f);
        assert_eq!(im.dim(), 2);
        assert!(im.contains(&v(&[2, 3, 5])));
        let s = Subspace::span(3, &[v(&[0, 0, 1])]);
        // f(x, y) = (x, y, x + y) lies on the z-axis only at the origin
        assert!(preimage(&f, &s).unwrap().is_zero());
    }

    #[test]
    fn solve_factor_examples() {
        let t = m(2, 3, &[1, 2, 3, 4, 5, 6]);
        assert_eq!(solve_factor(&LinMap::identity(3), &t).unwrap(), t);

        let u = solve_factor(&m(1, 2, &[1, 1]), &m(1, 2, &[2, 2])).unwrap();
        assert_eq!(u, m(1, 1, &[2]));

        match solve_factor(&m(1, 2, &[1, 1]), &m(1, 2, &[1, 0])) {
            Err(LaError::NoSolution { witness }) => {
                // the witness spans ker [1, 1] and is not killed by [1, 0]
                assert!(m(1, 2, &[1, 1]).apply(&witness)[0].is_zero());
                assert!(!m(1, 2, &[1, 0]).apply(&witness)[0].is_zero());
            }
            other => panic!("expected NoSolution, got {other:?}"),
        }
    }

    #[test]
    fn inverse_and_injectivity() {
        let a = m(2, 2, &[2, 1, 1, 1]);
        let inv = a.inverse().unwrap();
        assert!((&a * &inv).is_identity());
        assert!(m(2, 2, &[1, 2, 2, 4]).inverse().is_none());
        assert!(m(3, 2, &[1, 0, 0, 1, 0, 0]).is_injective());
        assert!(!m(3, 2, &[1, 0, 0, 1, 0, 0]).is_surjective());
    }

    #[test]
    fn kron_follows_left_major_convention() {
        let a = m(2, 2, &[1, 2, 3, 4]);
        let b = m(2, 2, &[0, 1, 1, 0]);
        let k = a.kron(&b);
        // (a ⊗ b)(e_i ⊗ e_j) has coordinate (p, q) equal to a[p][i] * b[q][j]
        for p in 0..2 {
            for q in 0..2 {
                for i in 0..2 {
                    for j in 0..2 {
                        assert_eq!(k.get(p * 2 + q, i * 2 + j), &(a.get(p, i) * b.get(q, j)));
                    }
                }
            }
        }
    }

    #[test]
    fn structured_tensor_composites_match_kron() {
        let id3 = LinMap::identity(3);
        let f = m(2, 3, &[1, 0, -2, 0, 3, 1]);
        let a = m(2, 6, &[1, 2, 0, -1, 0, 4, 0, 0, 5, 1, 1, 0]);
        assert_eq!(
            a.compose_tensor_id(&f.transpose(), 2),
            &a * &f.transpose().kron(&LinMap::identity(2))
        );
        assert_eq!(
            a.compose_id_tensor(2, &f.transpose()),
            &a * &LinMap::identity(2).kron(&f.transpose())
        );
        let b = m(
            9,
            2,
            &[1, 0, 0, 2, 3, 0, 0, 0, 1, 1, -1, 0, 0, 4, 2, 2, 0, 1],
        );
        assert_eq!(f.tensor_id_compose(3, &b), &f.kron(&id3) * &b);
        assert_eq!(f.id_tensor_compose(3, &b), &id3.kron(&f) * &b);
    }

    #[test]
    fn rational_text_form() {
        assert_eq!(format_rational(&ratio(-6, 4)), "-3/2");
        assert_eq!(format_rational(&ratio(4, -2)), "-2");
        assert_eq!(parse_rational(" 10/-4 ").unwrap(), ratio(-5, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn matrix_json_shape() {
        let a = LinMap::new(1, 2, vec![ratio(1, 2), rat(-3)]).unwrap();
        let s = serde_json::to_string(&a).unwrap();
        assert_eq!(s, r#"{"rows":1,"cols":2,"entries":["1/2","-3"]}"#);
        let back: LinMap = serde_json::from_str(&s).unwrap();
        assert_eq!(back, a);
        assert!(serde_json::from_str::<LinMap>(r#"{"rows":2,"cols":2,"entries":["1"]}"#).is_err());
    }
}
