use gpcomod::algpcom::{globalize_apc, AlgebraicPartialComodule};
use gpcomod::exactla::kernel;
use gpcomod::globalization::{
    from_pair, globalize, random_proper_cover, roundtrip_gl_ind, roundtrip_ind_gl, to_pair,
};
use gpcomod::gpc::{
    certify, check_gpc2_criterion, check_gpc2_definitional, induce_from_nc, random_nc,
};
use gpcomod::hopfpc::{pair_roundtrip_from, pair_roundtrip_to, random_pair};
use gpcomod::parmod::{crosscheck_dilation_globalization, random_partial_module};
use gpcomod::random::rng;
use gpcomod::structures::{group_algebra, sweedler_h4, FiniteGroup, HopfAlgebra};
use proptest::prelude::*;

fn hopf_by_index(i: usize) -> HopfAlgebra {
    match i {
        0 => group_algebra(&FiniteGroup::cyclic(2)),
        1 => group_algebra(&FiniteGroup::cyclic(3)),
        _ => sweedler_h4(),
    }
}

fn group_by_index(i: usize) -> FiniteGroup {
    if i == 0 {
        FiniteGroup::cyclic(2)
    } else {
        FiniteGroup::symmetric(3)
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn induced_data_pass_both_gpc2_routes(h in 0usize..3, m in 1usize..=3, seed in any::<u64>()) {
        let hopf = hopf_by_index(h);
        let nc = random_nc(hopf.coalgebra(), m, &mut rng(seed));
        let d = induce_from_nc(&nc).unwrap();
        let criterion = check_gpc2_criterion(&d).unwrap();
        let definitional = check_gpc2_definitional(&d);
        prop_assert!(criterion.verdict);
        prop_assert_eq!(criterion.verdict, definitional.is_ok());
    }

    #[test]
    fn globalization_dimension_identity(h in 0usize..3, m in 1usize..=3, seed in any::<u64>()) {
        let hopf = hopf_by_index(h);
        let nc = random_nc(hopf.coalgebra(), m, &mut rng(seed));
        let d = induce_from_nc(&nc).unwrap();
        let g = globalize(&d).unwrap();
        prop_assert!(g.certificate.all_green());
        prop_assert_eq!(g.comodule.dim, d.x_dim + kernel(&d.pi).dim());
        g.comodule.validate().unwrap();
        roundtrip_ind_gl(&d).unwrap();
    }

    #[test]
    fn structure_constant_q_matches_slices(m in 1usize..=3, seed in any::<u64>()) {
        let hopf = sweedler_h4();
        let nc = random_nc(hopf.coalgebra(), m, &mut rng(seed));
        let a = AlgebraicPartialComodule::new(hopf, nc.coaction.clone()).unwrap();
        prop_assert_eq!(a.build_q(), nc.defect_slices());
        prop_assert!(globalize_apc(&a).unwrap().certificate.all_green());
    }

    #[test]
    fn proper_covers_are_minimal(gi in 0usize..2, seed in any::<u64>()) {
        let c = random_proper_cover(&group_by_index(gi), 4, &mut rng(seed));
        let iso = roundtrip_gl_ind(&c).unwrap();
        prop_assert!(iso.phi.inverse().is_some());
    }

    #[test]
    fn comodule_pairs_round_trip(h in 0usize..3, m in 1usize..=2, seed in any::<u64>()) {
        let hopf = hopf_by_index(h);
        let nc = random_nc(hopf.coalgebra(), m, &mut rng(seed));
        let d = induce_from_nc(&nc).unwrap();
        let pair = to_pair(&d).unwrap();
        let back = from_pair(&pair).unwrap();
        prop_assert_eq!(back.x_dim, d.x_dim);
        certify(&back).unwrap();
    }

    #[test]
    fn dilation_equals_globalization(gi in 0usize..2, seed in any::<u64>()) {
        let pm = random_partial_module(&group_by_index(gi), 3, &mut rng(seed));
        pm.check().unwrap();
        let iso = crosscheck_dilation_globalization(&pm).unwrap();
        prop_assert_eq!(iso.globalization_dim, iso.dilation_dim);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn fundamental_pairs_round_trip(gi in 0usize..2, seed in any::<u64>()) {
        let g = group_by_index(gi);
        let b = group_algebra(&g).bialgebra;
        let (pair, rejected) = random_pair(&g, 2, &mut rng(seed));
        for p in rejected.iter().chain(std::iter::once(&pair)) {
            let by_intersection = p.intersection_witness(&b).unwrap().is_none();
            let by_homogeneous = p.homogeneous_witness().unwrap().is_none();
            prop_assert_eq!(by_intersection, by_homogeneous);
        }
        pair_roundtrip_from(&pair, &b).unwrap();
        let h = gpcomod::hopfpc::from_pair(&pair, &b).unwrap();
        pair_roundtrip_to(&h).unwrap();
    }
}
