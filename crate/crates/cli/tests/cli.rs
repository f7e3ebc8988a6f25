use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
        .display()
        .to_string()
}

fn run(args: &[&str]) -> (i32, Value) {
    let out = Command::new(env!("CARGO_BIN_EXE_gpcomod"))
        .arg("--json")
        .args(args)
        .output()
        .expect("binary runs");
    let json = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "{args:?}: bad JSON ({e}): {}",
            String::from_utf8_lossy(&out.stdout)
        )
    });
    (out.status.code().expect("exit code"), json)
}

fn result<'a>(v: &'a Value, key: &str) -> &'a Value {
    &v["results"][key]
}

#[test]
fn validate_builtins_and_files() {
    for name in ["kC2", "kS3", "H4", "monoid3", "two-dim", "idempotent"] {
        let (code, v) = run(&["validate", &format!("builtin:{name}")]);
        assert_eq!(code, 0, "{name}: {v}");
        assert_eq!(result(&v, "dual_valid"), true);
    }
    let (code, v) = run(&["validate", &data("kc2_group.json")]);
    assert_eq!(code, 0);
    assert_eq!(result(&v, "dim"), 2);
}

#[test]
fn inline_structure_argument() {
    let inline = r#"{"kind":"group","table":[[0,1,2],[1,2,0],[2,0,1]]}"#;
    let (code, v) = run(&["validate", inline]);
    assert_eq!(code, 0);
    assert_eq!(result(&v, "group_order"), 3);
}

#[test]
fn input_errors_exit_two() {
    for args in [
        vec!["validate".to_string(), "builtin:nope".to_string()],
        vec!["check-gpc".to_string(), data("rank_deficient_datum.json")],
        vec!["check-gpc".to_string(), data("unknown_field_datum.json")],
        vec!["check-gpc".to_string(), data("missing.json")],
        vec![
            "example".to_string(),
            "c2-partial-module".to_string(),
            "--dims".to_string(),
            "0,0,0".to_string(),
        ],
    ] {
        let refs: Vec<&str> = args.iter().map(String::as_str).collect();
        let (code, v) = run(&refs);
        assert_eq!(code, 2, "{args:?}");
        assert_eq!(v["status"], "error");
        assert_eq!(v["failures"][0]["check"], "input");
    }
}

#[test]
fn check_gpc_reports_both_routes() {
    let (code, v) = run(&["check-gpc", &data("trivial_datum.json")]);
    assert_eq!(code, 0);
    assert_eq!(result(&v, "gpc2_criterion"), true);
    assert_eq!(result(&v, "gpc2_definitional"), true);
    assert_eq!(result(&v, "gpc2_routes_agree"), true);
}

#[test]
fn broken_datum_fails_with_witness() {
    let (code, v) = run(&["check-gpc", &data("broken_counit_datum.json")]);
    assert_eq!(code, 1);
    assert_eq!(v["status"], "fail");
    let f = &v["failures"][0];
    assert_eq!(f["check"], "gpc1");
    assert!(f["witness"].is_array());
    // the two GPC2 routes still agree on the broken datum
    assert_eq!(result(&v, "gpc2_routes_agree"), true);
}

#[test]
fn globalize_relative_structure_reference() {
    let (code, v) = run(&["globalize", &data("regular_datum.json")]);
    assert_eq!(code, 0);
    assert_eq!(result(&v, "y_dim"), 2);
    assert_eq!(result(&v, "roundtrip_ind_gl"), true);
}

#[test]
fn induce_two_dim_defect() {
    let (code, v) = run(&["induce", &data("two_dim_coaction.json")]);
    assert_eq!(code, 0);
    assert_eq!(result(&v, "defect_dim"), 1);
    assert_eq!(result(&v, "bullet_dim"), 3);
}

#[test]
fn dilate_and_parrep() {
    let (code, v) = run(&["dilate", &data("kc2_partial_module.json")]);
    assert_eq!(code, 0);
    assert_eq!(result(&v, "globalization_dim"), result(&v, "dilation_dim"));
    let (code, v) = run(&["dilate", &data("kc2_not_partial_module.json")]);
    assert_eq!(code, 1);
    assert_eq!(v["failures"][0]["witness"]["axiom"], "PM2");
    let (code, v) = run(&["parrep", &data("c2_partial_rep.json")]);
    assert_eq!(code, 0);
    assert_eq!(result(&v, "s_equals_z"), true);
}

#[test]
fn apc_inputs() {
    let (code, v) = run(&["apc", &data("kc2_regular_apc.json")]);
    assert_eq!(code, 0);
    assert_eq!(result(&v, "q_dim"), 0);
    let (code, v) = run(&["apc", &data("sweedler_fixture.json")]);
    assert_eq!(code, 1);
    assert_eq!(result(&v, "induced.y_dim"), 7);
}

#[test]
fn hopf_structures_and_pairs() {
    let (code, v) = run(&["hopf", &data("trivial_hopf.json")]);
    assert_eq!(code, 0, "{v}");
    assert_eq!(result(&v, "pair_roundtrip"), true);
    let (code, v) = run(&["hopf", &data("kc2_pair.json")]);
    assert_eq!(code, 0);
    assert_eq!(result(&v, "pair_roundtrip"), true);
    let (code, v) = run(&["hopf", &data("kc2_bad_pair.json")]);
    assert_eq!(code, 1);
    assert_eq!(v["failures"][0]["check"], "pair_condition");
}

#[test]
fn named_examples() {
    let (code, v) = run(&["example", "c2-partial-module", "--dims", "1,1,1"]);
    assert_eq!(code, 0);
    assert_eq!(result(&v, "bullet_dim"), 5);
    assert_eq!(result(&v, "y_dim"), 4);

    let (code, v) = run(&["example", "two-dim-coalgebra"]);
    assert_eq!(code, 0);
    assert_eq!(result(&v, "q_span"), &serde_json::json!(["g⊗x"]));
    assert_eq!(result(&v, "gpc_morphism"), true);
    assert_eq!(result(&v, "nc_morphism"), false);

    let (code, v) = run(&["example", "monoid3-contrast"]);
    assert_eq!(code, 0);
    assert_eq!(result(&v, "nontrivial"), true);

    let (code, _) = run(&["example", "c2-trivial-scan"]);
    assert_eq!(code, 0);
}

#[test]
fn sweedler_example_reports_both_conventions() {
    let (code, v) = run(&["example", "sweedler-trunc", "--N", "5"]);
    assert_eq!(code, 1);
    assert_eq!(result(&v, "expected_y_dim"), 6);
    assert_eq!(result(&v, "induced.y_dim"), 11);
    assert_eq!(result(&v, "grouplike.certified"), false);
    assert_eq!(result(&v, "relations_match_structure_constants"), true);
}

#[test]
fn selftest_and_mutation() {
    let (code, v) = run(&["selftest", "--seed", "3"]);
    assert_eq!(code, 0, "{v}");
    let (code, v) = run(&["selftest", "--mutate"]);
    assert_eq!(code, 1);
    let failures = v["failures"].as_array().unwrap();
    assert_eq!(failures.len(), 1);
    assert_eq!(failures[0]["check"], "mutated_fixture");
    assert!(!failures[0]["witness"].as_array().unwrap().is_empty());
}

#[test]
fn output_file_and_timing() {
    let dir = std::env::temp_dir().join(format!("gpcomod-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.json");
    let status = Command::new(env!("CARGO_BIN_EXE_gpcomod"))
        .args(["--json", "--timing", "--output"])
        .arg(&path)
        .args(["example", "two-dim-coalgebra"])
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(0));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert!(v["timing_ms"].is_u64());
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn text_output_is_default() {
    let out = Command::new(env!("CARGO_BIN_EXE_gpcomod"))
        .args(["example", "c2-partial-module", "--dims", "2,0,1"])
        .output()
        .unwrap();
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("example c2-partial-module: PASS"));
    assert!(text.contains("y_dim: 3"));
}

#[test]
fn sample_inputs_match_schema_keys() {
    let root = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../schemas/v1");
    for (schema, sample) in [
        ("datum.json", "trivial_datum.json"),
        ("datum.json", "regular_datum.json"),
        ("nc.json", "two_dim_coaction.json"),
        ("partial_module.json", "kc2_partial_module.json"),
        ("partial_rep.json", "c2_partial_rep.json"),
        ("hopf.json", "trivial_hopf.json"),
        ("pair.json", "kc2_pair.json"),
    ] {
        let s: Value =
            serde_json::from_str(&std::fs::read_to_string(root.join(schema)).unwrap()).unwrap();
        let d: Value =
            serde_json::from_str(&std::fs::read_to_string(data(sample)).unwrap()).unwrap();
        let props = s["properties"].as_object().unwrap();
        let keys = d.as_object().unwrap();
        for k in keys.keys() {
            assert!(props.contains_key(k), "{sample}: {k} not in {schema}");
        }
        for r in s["required"].as_array().unwrap() {
            assert!(
                keys.contains_key(r.as_str().unwrap()),
                "{sample}: missing {r}"
            );
        }
    }
    let (code, v) = run(&["example", "two-dim-coalgebra"]);
    assert_eq!(code, 0);
    let report: Value =
        serde_json::from_str(&std::fs::read_to_string(root.join("report.json")).unwrap()).unwrap();
    for k in v.as_object().unwrap().keys() {
        assert!(report["properties"].as_object().unwrap().contains_key(k));
    }
}
