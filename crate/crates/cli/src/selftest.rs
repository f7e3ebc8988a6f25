//! Seeded invariant suites at small dimensions, one per engine module.

use gpcomod::algpcom::{sweedler_polynomial_coaction, AlgebraicPartialComodule};
use gpcomod::exactla::{kernel, quotient_by, solve, Subspace};
use gpcomod::globalization::{
    globalize, random_proper_cover, roundtrip_gl_ind, roundtrip_ind_gl, GlobalComodule,
};
use gpcomod::gpc::{
    certify, check_gpc2_criterion, check_gpc2_definitional, induce_from_nc, random_nc,
};
use gpcomod::hopfpc::{pair_roundtrip_from, random_pair};
use gpcomod::parmod::{
    crosscheck_dilation_globalization, kc2_eigen_fixture, partial_permutation,
    random_partial_module,
};
use gpcomod::random::{self, rng, SeededRng};
use gpcomod::structures::{
    group_algebra, monoid3, single_entry_mutations, sweedler_h4, FiniteGroup, HopfAlgebra,
};
use rand::Rng;
use serde_json::{json, Value};

use crate::explain::Explain;
use crate::report::{vector, Report};

type Outcome = Result<(), (String, Value)>;

fn err<E: Explain>(context: String, e: E) -> (String, Value) {
    (format!("{context}: {e}"), e.witness())
}

struct Suite {
    name: &'static str,
    cases: usize,
    run: fn(&mut SeededRng, usize) -> Outcome,
}

fn hopf_for(i: usize) -> HopfAlgebra {
    if i.is_multiple_of(2) {
        group_algebra(&FiniteGroup::cyclic(2))
    } else {
        sweedler_h4()
    }
}

fn group_for(i: usize) -> FiniteGroup {
    if i.is_multiple_of(2) {
        FiniteGroup::cyclic(2)
    } else {
        FiniteGroup::symmetric(3)
    }
}

fn exactla_case(r: &mut SeededRng, _: usize) -> Outcome {
    let rows = r.gen_range(1..=4);
    let cols = r.gen_range(1..=4);
    let a = random::sparse_matrix(r, rows, cols);
    let k = kernel(&a);
    if k.dim() + a.rank() != cols || !(&a * &k.inclusion()).is_zero() {
        return Err((
            "rank-nullity fails".into(),
            json!({"rows": rows, "cols": cols}),
        ));
    }
    let q = quotient_by(&Subspace::from_rows(&a));
    if kernel(&q.proj) != Subspace::from_rows(&a) {
        return Err(("quotient kernel differs from relations".into(), Value::Null));
    }
    let x = random::sparse_matrix(r, cols, 2);
    let b = &a * &x;
    let s = solve(&a, &b).map_err(|e| err("solve".into(), e))?;
    if &a * &s != b {
        return Err(("solve returned a non-solution".into(), Value::Null));
    }
    Ok(())
}

fn structures_case(_: &mut SeededRng, i: usize) -> Outcome {
    let fixtures = [
        group_algebra(&FiniteGroup::cyclic(2)),
        group_algebra(&FiniteGroup::symmetric(3)),
        sweedler_h4(),
    ];
    let h = &fixtures[i % fixtures.len()];
    h.validate().map_err(|e| err(format!("fixture {i}"), e))?;
    if i == 0 {
        monoid3().validate().map_err(|e| err("monoid3".into(), e))?;
    }
    for m in single_entry_mutations(h, 2) {
        if m.mutated.validate().is_ok() {
            return Err((
                "mutated structure validates".into(),
                json!({"map": m.map, "row": m.row, "col": m.col}),
            ));
        }
    }
    Ok(())
}

fn gpc_case(r: &mut SeededRng, i: usize) -> Outcome {
    let h = hopf_for(i);
    let m = r.gen_range(1..=2);
    let nc = random_nc(h.coalgebra(), m, r);
    let d = induce_from_nc(&nc).map_err(|e| err("induce".into(), e))?;
    let criterion = check_gpc2_criterion(&d).map_err(|e| err("criterion".into(), e))?;
    let definitional = check_gpc2_definitional(&d);
    if !criterion.verdict || definitional.is_err() {
        return Err((
            "GPC2 routes disagree or fail".into(),
            json!({"criterion": criterion.verdict, "definitional": definitional.is_ok()}),
        ));
    }
    Ok(())
}

fn globalization_case(r: &mut SeededRng, i: usize) -> Outcome {
    let h = hopf_for(i);
    let m = r.gen_range(1..=2);
    let nc = random_nc(h.coalgebra(), m, r);
    let d = induce_from_nc(&nc).map_err(|e| err("induce".into(), e))?;
    let g = globalize(&d).map_err(|e| err("globalize".into(), e))?;
    let expected = d.x_dim + kernel(&d.pi).dim();
    if !g.certificate.all_green() || g.comodule.dim != expected {
        return Err((
            "certificate not green".into(),
            json!({"expected_dim": expected, "actual_dim": g.comodule.dim}),
        ));
    }
    roundtrip_ind_gl(&d).map_err(|e| err("roundtrip_ind_gl".into(), e))?;
    let cover = random_proper_cover(&FiniteGroup::cyclic(2), 3, r);
    roundtrip_gl_ind(&cover).map_err(|e| err("roundtrip_gl_ind".into(), e))?;
    Ok(())
}

fn parmod_case(r: &mut SeededRng, i: usize) -> Outcome {
    let dims = [(1, 1, 1), (0, 1, 0), (1, 0, 2)][i % 3];
    let pm = kc2_eigen_fixture(dims.0, dims.1, dims.2);
    crosscheck_dilation_globalization(&pm).map_err(|e| err("kC2 fixture".into(), e))?;
    let g = FiniteGroup::cyclic(3);
    let subset = [0, 1 + i % 2];
    let rep = partial_permutation(&g, &subset);
    if rep.subspace_s() != rep.subspace_z() {
        return Err(("S ≠ Z".into(), json!({"subset": subset})));
    }
    let pm = random_partial_module(&group_for(i), 2, r);
    pm.check().map_err(|e| err("random module".into(), e))?;
    crosscheck_dilation_globalization(&pm).map_err(|e| err("random module".into(), e))?;
    Ok(())
}

fn algpcom_case(r: &mut SeededRng, i: usize) -> Outcome {
    let h = sweedler_h4();
    let m = r.gen_range(1..=2);
    let nc = random_nc(h.coalgebra(), m, r);
    let regular = GlobalComodule::regular(h.coalgebra());
    AlgebraicPartialComodule::new(h.clone(), regular.delta)
        .and_then(|a| a.check())
        .map_err(|e| err("regular comodule".into(), e))?;
    let a =
        AlgebraicPartialComodule::new(h, nc.coaction.clone()).map_err(|e| err("apc".into(), e))?;
    if a.build_q() != nc.defect_slices() {
        return Err(("Q differs from the defect slices".into(), Value::Null));
    }
    if i == 0 {
        sweedler_polynomial_coaction(6)
            .check_columns(0..4)
            .map_err(|e| err("polynomial coaction".into(), e))?;
    }
    Ok(())
}

fn hopfpc_case(r: &mut SeededRng, _: usize) -> Outcome {
    let g = FiniteGroup::cyclic(2);
    let b = group_algebra(&g).bialgebra;
    let (pair, rejected) = random_pair(&g, 2, r);
    for p in rejected.iter().chain(std::iter::once(&pair)) {
        let a = p
            .intersection_witness(&b)
            .map_err(|e| err("pair".into(), e))?;
        let h = p.homogeneous_witness().map_err(|e| err("pair".into(), e))?;
        if a.is_none() != h.is_none() {
            return Err((
                "pair condition and homogeneous test disagree".into(),
                a.as_deref().map(vector).unwrap_or(Value::Null),
            ));
        }
    }
    pair_roundtrip_from(&pair, &b).map_err(|e| err("pair roundtrip".into(), e))?;
    Ok(())
}

const SUITES: &[Suite] = &[
    Suite {
        name: "exactla",
        cases: 12,
        run: exactla_case,
    },
    Suite {
        name: "structures",
        cases: 3,
        run: structures_case,
    },
    Suite {
        name: "gpc",
        cases: 6,
        run: gpc_case,
    },
    Suite {
        name: "globalization",
        cases: 4,
        run: globalization_case,
    },
    Suite {
        name: "parmod",
        cases: 3,
        run: parmod_case,
    },
    Suite {
        name: "algpcom",
        cases: 3,
        run: algpcom_case,
    },
    Suite {
        name: "hopfpc",
        cases: 3,
        run: hopfpc_case,
    },
];

/// A datum induced from a seeded coaction, with `π(x₀⊗u)` added to `ρ(x₀)`
/// for a counit section `u`, so that counitality breaks at `x₀`.
fn mutated_fixture(seed: u64) -> Outcome {
    let mut r = rng(seed);
    let nc = random_nc(
        group_algebra(&FiniteGroup::cyclic(2)).coalgebra(),
        2,
        &mut r,
    );
    let mut d = induce_from_nc(&nc).map_err(|e| err("induce".into(), e))?;
    let u = d.coalgebra.counit_section();
    let mut lift = vec![gpcomod::exactla::rat(0); d.x_dim * u.len()];
    lift[..u.len()].clone_from_slice(&u);
    let bump = d.pi.apply(&lift);
    for (row, b) in bump.iter().enumerate() {
        let v = d.rho.get(row, 0) + b;
        d.rho.set(row, 0, v);
    }
    certify(&d).map_err(|e| err("mutated datum".into(), e))?;
    Ok(())
}

pub fn selftest(seed: u64, mutate: bool) -> Report {
    let mut report = Report::new("selftest");
    report.set("seed", seed);
    let mut total = 0;
    for (k, suite) in SUITES.iter().enumerate() {
        let mut r = rng(seed.wrapping_mul(1_000_003).wrapping_add(k as u64));
        let mut passed = 0;
        for i in 0..suite.cases {
            match (suite.run)(&mut r, i) {
                Ok(()) => passed += 1,
                Err((reason, witness)) => {
                    report.fail(&format!("{}[{i}]", suite.name), reason, witness);
                    break;
                }
            }
        }
        total += suite.cases;
        report.set(
            &format!("suite.{}", suite.name),
            json!({"cases": suite.cases, "passed": passed}),
        );
    }
    report.set("cases", total);
    if mutate {
        report.set("mutated_fixture", true);
        if let Err((reason, witness)) = mutated_fixture(seed) {
            report.fail("mutated_fixture", reason, witness);
        } else {
            report.fail(
                "mutated_fixture",
                "the mutated fixture was not rejected",
                Value::Null,
            );
        }
    }
    report
}
