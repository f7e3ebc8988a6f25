use gpcomod::exactla::{
    image, kernel, preimage, quotient_by, rat, solve, solve_factor, LinMap, Rational, Subspace,
};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::prelude::*;

/// Rank by fraction-free Bareiss elimination on integer entries.
fn bareiss_rank(rows: usize, cols: usize, entries: &[i64]) -> usize {
    let mut a: Vec<Vec<BigInt>> = (0..rows)
        .map(|i| {
            (0..cols)
                .map(|j| BigInt::from(entries[i * cols + j]))
                .collect()
        })
        .collect();
    let mut prev = BigInt::one();
    let mut rank = 0;
    for col in 0..cols {
        let Some(p) = (rank..rows).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        for r in rank + 1..rows {
            for c in col + 1..cols {
                let v = &a[rank][col] * &a[r][c] - &a[r][col] * &a[rank][c];
                a[r][c] = v / &prev;
            }
            a[r][col] = BigInt::zero();
        }
        prev = a[rank][col].clone();
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

fn int_matrix(max_rows: usize, max_cols: usize) -> impl Strategy<Value = (usize, usize, Vec<i64>)> {
    (1..=max_rows, 1..=max_cols)
        .prop_flat_map(|(r, c)| (Just(r), Just(c), prop::collection::vec(-3i64..=3, r * c)))
}

/// Two integer matrices with the same number of columns.
fn two_row_spaces(
    max_rows: usize,
    max_cols: usize,
) -> impl Strategy<Value = (usize, usize, Vec<i64>, usize, Vec<i64>)> {
    (1..=max_cols, 1..=max_rows, 1..=max_rows).prop_flat_map(|(c, r, r2)| {
        (
            Just(c),
            Just(r),
            prop::collection::vec(-3i64..=3, r * c),
            Just(r2),
            prop::collection::vec(-3i64..=3, r2 * c),
        )
    })
}

fn to_map(r: usize, c: usize, e: &[i64]) -> LinMap {
    LinMap::from_i64(r, c, e)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn rank_matches_bareiss((r, c, e) in int_matrix(6, 6)) {
        prop_assert_eq!(to_map(r, c, &e).rank(), bareiss_rank(r, c, &e));
    }

    #[test]
    fn kernel_is_annihilated_and_has_complementary_dimension((r, c, e) in int_matrix(6, 6)) {
        let a = to_map(r, c, &e);
        let k = kernel(&a);
        prop_assert_eq!(k.dim() + bareiss_rank(r, c, &e), c);
        prop_assert!((&a * &k.inclusion()).is_zero());
    }

    #[test]
    fn image_dimension_is_rank((r, c, e) in int_matrix(6, 6)) {
        let a = to_map(r, c, &e);
        prop_assert_eq!(image(&a).dim(), bareiss_rank(r, c, &e));
    }

    #[test]
    fn sum_and_intersection_dimensions((c, r, e, r2, e2) in two_row_spaces(4, 6)) {
        let u = Subspace::from_rows(&to_map(r, c, &e));
        let w = Subspace::from_rows(&to_map(r2, c, &e2));
        let s = u.sum(&w).unwrap();
        let i = u.intersection(&w).unwrap();
        prop_assert_eq!(s.dim() + i.dim(), u.dim() + w.dim());
        prop_assert!(s.contains_subspace(&u).unwrap());
        prop_assert!(u.contains_subspace(&i).unwrap());
        prop_assert!(w.contains_subspace(&i).unwrap());
    }

    #[test]
    fn canonical_form_is_basis_independent((r, c, e) in int_matrix(4, 5), seed in 0u64..1000) {
        let a = to_map(r, c, &e);
        let u = Subspace::from_rows(&a);
        let mut rng = gpcomod::random::rng(seed);
        let mixed = &gpcomod::random::invertible(&mut rng, r) * &a;
        prop_assert_eq!(Subspace::from_rows(&mixed), u);
    }

    #[test]
    fn quotient_kills_exactly_the_relations((r, c, e) in int_matrix(4, 6)) {
        let rel = Subspace::from_rows(&to_map(r, c, &e));
        let q = quotient_by(&rel);
        prop_assert_eq!(q.quotient_dim() + rel.dim(), c);
        prop_assert_eq!(kernel(&q.proj), rel);
        prop_assert!((&q.proj * &q.section).is_identity());
    }

    #[test]
    fn solve_recovers_planted_solutions((r, c, e) in int_matrix(5, 5), seed in 0u64..1000) {
        let a = to_map(r, c, &e);
        let mut rng = gpcomod::random::rng(seed);
        let x = gpcomod::random::sparse_matrix(&mut rng, c, 2);
        let b = &a * &x;
        let found = solve(&a, &b).unwrap();
        prop_assert_eq!(&a * &found, b);
    }

    #[test]
    fn solve_factor_recovers_planted_factors((r, c, e) in int_matrix(4, 5), seed in 0u64..1000) {
        let through = to_map(r, c, &e);
        let mut rng = gpcomod::random::rng(seed);
        let u = gpcomod::random::sparse_matrix(&mut rng, 3, r);
        let target = &u * &through;
        let found = solve_factor(&through, &target).unwrap();
        prop_assert_eq!(&found * &through, target);
    }

    #[test]
    fn preimage_contains_kernel((r, c, e) in int_matrix(4, 5)) {
        let f = to_map(r, c, &e);
        let pre = preimage(&f, &Subspace::zero(r)).unwrap();
        prop_assert_eq!(pre, kernel(&f));
    }
}

#[test]
fn inconsistent_system_reports_left_kernel_witness() {
    let a = LinMap::from_i64(2, 1, &[1, 1]);
    let b = LinMap::from_i64(2, 1, &[1, 2]);
    match solve(&a, &b) {
        Err(gpcomod::exactla::LaError::NoSolution { witness }) => {
            // y with yᵀa = 0 and yᵀb ≠ 0
            let ya: Rational = witness[0].clone() + witness[1].clone();
            let yb: Rational = witness[0].clone() + witness[1].clone() * rat(2);
            assert_eq!(ya, rat(0));
            assert_ne!(yb, rat(0));
        }
        other => panic!("expected NoSolution, got {other:?}"),
    }
}

#[test]
fn bareiss_oracle_on_known_ranks() {
    assert_eq!(bareiss_rank(3, 3, &[1, 2, 3, 4, 5, 6, 7, 8, 9]), 2);
    assert_eq!(bareiss_rank(2, 2, &[0, 0, 0, 0]), 0);
    assert_eq!(bareiss_rank(2, 3, &[0, 1, 0, 0, 0, 1]), 2);
}
