//! Seeded generators for property suites. All randomness in the crate flows
//! through `ChaCha8Rng` so every instance is reproducible from its seed.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::exactla::{rat, ratio, LinMap, Rational};

pub type SeededRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A rational with numerator in `[-9, 9]` and denominator in `[1, 9]`.
pub fn small_rational(rng: &mut SeededRng) -> Rational {
    let n: i64 = rng.gen_range(-9..=9);
    let d: i64 = rng.gen_range(1..=9);
    ratio(n, d)
}

/// A small integer in `[-3, 3]`, zero with probability about one half.
pub fn sparse_integer(rng: &mut SeededRng) -> Rational {
    if rng.gen_bool(0.5) {
        rat(0)
    } else {
        rat(rng.gen_range(-3..=3))
    }
}

pub fn matrix(rng: &mut SeededRng, rows: usize, cols: usize) -> LinMap {
    LinMap::from_fn(rows, cols, |_, _| small_rational(rng))
}

pub fn sparse_matrix(rng: &mut SeededRng, rows: usize, cols: usize) -> LinMap {
    LinMap::from_fn(rows, cols, |_, _| sparse_integer(rng))
}

/// An invertible matrix: unit lower-triangular times unit upper-triangular with
/// small integer entries, so it and its inverse stay integral.
pub fn invertible(rng: &mut SeededRng, n: usize) -> LinMap {
    let lower = LinMap::from_fn(n, n, |i, j| match i.cmp(&j) {
        std::cmp::Ordering::Equal => rat(1),
        std::cmp::Ordering::Greater => rat(rng.gen_range(-2..=2)),
        std::cmp::Ordering::Less => rat(0),
    });
    let upper = LinMap::from_fn(n, n, |i, j| match i.cmp(&j) {
        std::cmp::Ordering::Equal => rat(1),
        std::cmp::Ordering::Less => rat(rng.gen_range(-2..=2)),
        std::cmp::Ordering::Greater => rat(0),
    });
    &lower * &upper
}

/// A surjection `ℚ^domain → ℚ^codomain` (requires `codomain <= domain`).
pub fn surjection(rng: &mut SeededRng, codomain: usize, domain: usize) -> LinMap {
    assert!(codomain <= domain, "surjection needs codomain <= domain");
    loop {
        let m = sparse_matrix(rng, codomain, domain);
        if m.is_surjective() {
            return m;
        }
    }
}
