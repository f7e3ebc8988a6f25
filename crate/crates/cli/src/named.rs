//! Worked examples, defined in code.

use clap::ValueEnum;
use gpcomod::algpcom::{
    globalize_truncation, grouplike_count, sweedler_polynomial_coaction, sweedler_relation,
    sweedler_truncation, RhoConvention,
};
use gpcomod::exactla::{kernel, Subspace};
use gpcomod::gpc::{
    certify, check_morphism, induce_from_nc, two_dim_example, two_dim_example_morphism,
};
use gpcomod::hopfpc::{monoid3_contrast, sign_characters, trivial_structure_scan};
use gpcomod::parmod::{crosscheck_dilation_globalization, kc2_eigen_fixture};
use gpcomod::structures::FiniteGroup;
use serde_json::{json, Value};

use crate::commands::basis_json;
use crate::explain::Explain;
use crate::input::InputError;
use crate::report::Report;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Example {
    /// kC₂ partial module with eigenspace dimensions `--dims a,b,c`.
    C2PartialModule,
    /// Truncated polynomial comodule over Sweedler's algebra, `--N n`.
    SweedlerTrunc,
    /// Two-dimensional coalgebra: defect and a non-full morphism.
    TwoDimCoalgebra,
    /// Hopf partial comodule over the monoid `{1, x, x²}` with `x³ = x²`.
    Monoid3Contrast,
    /// Scan of one-dimensional Hopf partial comodules over kC₂.
    C2TrivialScan,
}

pub fn parse_dims(s: &str) -> Result<(usize, usize, usize), InputError> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let bad = || InputError::Schema(format!("--dims expects three integers a,b,c, got {s:?}"));
    if parts.len() != 3 {
        return Err(bad());
    }
    let v: Vec<usize> = parts
        .iter()
        .map(|p| p.parse().map_err(|_| bad()))
        .collect::<Result<_, _>>()?;
    if v.iter().all(|&x| x == 0) {
        return Err(InputError::Schema("--dims must not be 0,0,0".into()));
    }
    Ok((v[0], v[1], v[2]))
}

/// Expected `(dim H•V, dim Y)` for eigenspace dimensions `(d₋₁, d₀, d₁)`.
pub fn c2_expected(d_minus: usize, d_zero: usize, d_plus: usize) -> (usize, usize) {
    (
        d_minus + d_zero + d_plus + d_minus + d_plus,
        2 * d_zero + d_minus + d_plus,
    )
}

pub fn c2_partial_module(d_minus: usize, d_zero: usize, d_plus: usize) -> Report {
    let mut r = Report::new("example c2-partial-module");
    r.set("dims", [d_minus, d_zero, d_plus]);
    let pm = kc2_eigen_fixture(d_minus, d_zero, d_plus);
    if let Err(e) = pm.check() {
        r.fail_err("partial_module", &e);
        return r;
    }
    let (bullet, y) = c2_expected(d_minus, d_zero, d_plus);
    let actual_bullet = pm.bullet_subspace().dim();
    r.set("bullet_dim", actual_bullet);
    r.set("expected_bullet_dim", bullet);
    r.check(
        "bullet_dim_matches",
        actual_bullet == bullet,
        "dim H•V differs from the eigenspace formula",
        json!({"expected": bullet, "actual": actual_bullet}),
    );
    r.set("expected_y_dim", y);
    match crosscheck_dilation_globalization(&pm) {
        Ok(iso) => {
            r.set("y_dim", iso.globalization_dim);
            r.set("dilation_dim", iso.dilation_dim);
            r.set("dilation_equals_globalization", true);
            r.check(
                "y_dim_matches",
                iso.globalization_dim == y,
                "dim Y differs from the eigenspace formula",
                json!({"expected": y, "actual": iso.globalization_dim}),
            );
        }
        Err(e) => r.fail_err("dilation_equals_globalization", &e),
    }
    r
}

/// Relations of the truncated datum agree with the structure-constant Q of
/// the polynomial coaction on the same degrees.
pub fn sweedler_relations_match(big_n: usize) -> bool {
    let a = sweedler_polynomial_coaction(big_n);
    let stated: Vec<_> = (0..big_n).map(|n| sweedler_relation(big_n, n)).collect();
    a.build_q_for(0..big_n - 1) == Subspace::span((big_n + 1) * 4, &stated)
}

/// Results for one convention of the truncated fixture. The stated target is
/// `dim Y = N+1` with `zⁿ⊗g ∈ Y` for every degree.
pub struct TruncationOutcome {
    pub certified: bool,
    pub y_dim: Option<usize>,
    pub grouplike: usize,
    pub error: Option<(String, Value)>,
}

pub fn truncation_outcome(big_n: usize, convention: RhoConvention) -> TruncationOutcome {
    let d = sweedler_truncation(big_n, convention);
    let certified = certify(&d).is_ok();
    match globalize_truncation(big_n, convention) {
        Ok(g) => TruncationOutcome {
            certified,
            y_dim: Some(g.comodule.dim),
            grouplike: grouplike_count(&g, big_n + 1),
            error: None,
        },
        Err(e) => TruncationOutcome {
            certified,
            y_dim: None,
            grouplike: 0,
            error: Some((e.to_string(), e.witness())),
        },
    }
}

pub fn sweedler_trunc(big_n: usize) -> Report {
    let mut r = Report::new("example sweedler-trunc");
    r.set("N", big_n);
    r.set("x_dim", big_n + 1);
    r.set("expected_y_dim", big_n + 1);
    r.set(
        "relations_match_structure_constants",
        sweedler_relations_match(big_n),
    );
    for (key, conv) in [
        ("grouplike", RhoConvention::Grouplike),
        ("induced", RhoConvention::Induced),
    ] {
        let o = truncation_outcome(big_n, conv);
        let d = sweedler_truncation(big_n, conv);
        r.set(&format!("{key}.certified"), o.certified);
        r.set(&format!("{key}.kernel_pi_dim"), kernel(&d.pi).dim());
        r.set(&format!("{key}.y_dim"), o.y_dim);
        r.set(&format!("{key}.grouplike_basis_vectors"), o.grouplike);
        let all_grouplike = o.grouplike == big_n + 1;
        r.set(&format!("{key}.grouplike_coaction"), all_grouplike);
        if let Some((reason, witness)) = &o.error {
            r.fail(&format!("{key}.globalize"), reason, witness.clone());
            continue;
        }
        if o.y_dim != Some(big_n + 1) {
            r.fail(
                &format!("{key}.y_dim"),
                "dim Y differs from N+1",
                json!({"expected": big_n + 1, "actual": o.y_dim}),
            );
        }
        if !all_grouplike {
            r.fail(
                &format!("{key}.grouplike_coaction"),
                "some zⁿ⊗g is not in Y",
                json!({"grouplike": o.grouplike, "expected": big_n + 1}),
            );
        }
    }
    r
}

pub fn two_dim_coalgebra() -> Report {
    let mut r = Report::new("example two-dim-coalgebra");
    let nc = two_dim_example();
    let names = &nc.coalgebra.basis_names;
    let q = nc.defect_slices();
    let labels: Vec<String> = q
        .basis_vectors()
        .iter()
        .map(|v| {
            v.iter()
                .enumerate()
                .filter(|(_, c)| **c != gpcomod::exactla::rat(0))
                .map(|(i, c)| {
                    let t = format!("{}⊗{}", names[i / names.len()], names[i % names.len()]);
                    if *c == gpcomod::exactla::rat(1) {
                        t
                    } else {
                        format!("{}·{t}", gpcomod::exactla::format_rational(c))
                    }
                })
                .collect::<Vec<_>>()
                .join(" + ")
        })
        .collect();
    r.set("q_dim", q.dim());
    r.set("q_basis", basis_json(&q.basis_vectors()));
    r.set("q_span", &labels);
    let mut gx = vec![gpcomod::exactla::rat(0); 4];
    gx[1] = gpcomod::exactla::rat(1);
    r.check(
        "q_is_span_g_x",
        q == Subspace::span(4, &[gx]),
        "Q is not span{g⊗x}",
        json!(labels),
    );
    let f = two_dim_example_morphism();
    let d = match induce_from_nc(&nc) {
        Ok(d) => d,
        Err(e) => {
            r.fail_err("induce", &e);
            return r;
        }
    };
    match certify(&d) {
        Ok(_) => r.set("induced_certified", true),
        Err(e) => r.fail_err("induced_certified", &e),
    }
    match check_morphism(&d, &d, &f) {
        Ok(_) => r.set("gpc_morphism", true),
        Err(e) => r.fail_err("gpc_morphism", &e),
    }
    let nc_morphism = nc.is_morphism(&nc, &f);
    r.set("nc_morphism", nc_morphism);
    if nc_morphism {
        r.fail(
            "nc_morphism",
            "f commutes with ∂, expected it not to",
            Value::Null,
        );
    }
    r
}

pub fn monoid3() -> Report {
    let mut r = Report::new("example monoid3-contrast");
    match monoid3_contrast() {
        Ok(c) => {
            r.set("m_dim", c.certificate.m_dim);
            r.set("bullet_dim", c.certificate.bullet_dim);
            r.set("trivial_bullet_dim", c.certificate.m_dim);
            r.set("y_dim", c.globalization.globalization.comodule.dim);
            r.set("kernel_bb_submodule", c.certificate.kernel_bb_submodule);
            r.set(
                "kernel_right_leg_submodule",
                c.certificate.kernel_right_leg_submodule,
            );
            r.check(
                "nontrivial",
                c.nontrivial,
                "the structure is isomorphic to the trivial one",
                Value::Null,
            );
        }
        Err(e) => r.fail_err("hopf_partial_comodule", &e),
    }
    r
}

pub fn c2_trivial_scan() -> Report {
    let mut r = Report::new("example c2-trivial-scan");
    let g = FiniteGroup::cyclic(2);
    for phi in sign_characters(&g) {
        let key = phi
            .iter()
            .map(|x| x.to_string())
            .collect::<Vec<_>>()
            .join(",");
        match trivial_structure_scan(&g, &phi) {
            Ok(scan) => {
                r.set(&format!("phi[{key}].candidates"), &scan.candidates);
                r.check(
                    &format!("phi[{key}].only_trivial"),
                    scan.only_trivial,
                    "a non-trivial structure realizes k_φ",
                    serde_json::to_value(&scan.candidates).unwrap_or(Value::Null),
                );
            }
            Err(e) => r.fail_err(&format!("phi[{key}]"), &e),
        }
    }
    r
}
