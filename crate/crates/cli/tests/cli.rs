//! End-to-end behaviour of the `logls` binary.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use proptest::prelude::*;
use serde_json::Value;

use logls_cli::input::{parse_input, print_spec};

fn corpus() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus")
}

fn logls(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_logls")).args(args).output().expect("binary runs")
}

fn input(name: &str) -> String {
    corpus().join(format!("{name}.toml")).to_string_lossy().into_owned()
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("json output")
}

#[test]
fn log_point_dims() {
    let v = json(&logls(&["homology", &input("log_point"), "--format", "json"]));
    let dims: Vec<u64> = (0..3).map(|i| v["degrees"][i.to_string()]["k_dim"].as_u64().unwrap()).collect();
    assert_eq!(dims, vec![1, 1, 0]);
}

#[test]
fn log_line_is_free_of_rank_one() {
    let v = json(&logls(&["homology", &input("log_line"), "--format", "json"]));
    assert_eq!(v["degrees"]["0"]["free_rank"], 1);
    assert_eq!(v["degrees"]["1"]["k_dim"], 0);
    assert_eq!(v["degrees"]["2"]["k_dim"], 0);
}

#[test]
fn degrees_and_coefficients_flags() {
    let v = json(&logls(&["homology", &input("log_line"), "--degrees", "0", "--coefficients", "residue", "--format", "json"]));
    assert_eq!(v["coefficients"], "residue");
    assert_eq!(v["degrees"].as_object().unwrap().len(), 1);
    assert_eq!(v["degrees"]["0"]["k_dim"], 1);
}

#[test]
fn coefficient_module_file() {
    let dir = tempfile::tempdir().unwrap();
    let m = dir.path().join("t.toml");
    // B / (t^2) over the log line
    std::fs::write(&m, "generators = 1\nrelations = [[\"t^2\"]]\n").unwrap();
    let v = json(&logls(&["homology", &input("log_line"), "--coefficients", m.to_str().unwrap(), "--format", "json"]));
    assert_eq!(v["degrees"]["0"]["k_dim"], 2);
}

#[test]
fn alt_choices_agree() {
    let v = json(&logls(&["homology", &input("log_node"), "--alt-choices", "--format", "json"]));
    assert_eq!(v["alt_choices"]["agree"]["1"], true);
    assert_ne!(v["alt_choices"]["choices"]["r_variables"], v["choices"]["r_variables"]);
}

#[test]
fn kcomplex_of_doubling_in_char_two() {
    let v = json(&logls(&["kcomplex", &input("monoid_double"), "--char", "2", "--format", "json"]));
    assert_eq!(v["direct"], serde_json::json!([2, 2, 0]));
    assert_eq!(v["direct"], v["closed_form"]);
}

#[test]
fn conormal_and_tor() {
    let v = json(&logls(&["conormal", &input("edge_plane_to_line"), "--format", "json"]));
    assert_eq!(v["conormal"]["free_rank"], 1);
    let v = json(&logls(&["tor", &input("tor_dual_numbers"), "--format", "json"]));
    for n in 0..5 {
        assert_eq!(v["tor"][n.to_string()]["k_dim"], 1);
    }
}

#[test]
fn verify_suites_cover_enough_instances() {
    for (suite, min) in [("prop12", 8), ("strict", 5), ("edge", 3), ("alt", 3)] {
        let v = json(&logls(&["verify", suite, "--format", "json"]));
        assert_eq!(v["passed"], true);
        assert!(v["instances"].as_object().unwrap().len() >= min, "{suite}");
    }
}

#[test]
fn reports_do_not_depend_on_threads() {
    let a = logls(&["verify", "all", "--format", "json", "--threads", "1"]);
    let b = logls(&["verify", "all", "--format", "json", "--threads", "4"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let c = logls(&["homology", &input("log_cone"), "--format", "json"]);
    let d = logls(&["homology", &input("log_cone"), "--format", "json"]);
    assert_eq!(c.stdout, d.stdout);
}

#[test]
fn corrupted_golden_fails_verification() {
    let dir = tempfile::tempdir().unwrap();
    for e in std::fs::read_dir(corpus()).unwrap() {
        let p = e.unwrap().path();
        std::fs::copy(&p, dir.path().join(p.file_name().unwrap())).unwrap();
    }
    let golden = dir.path().join("log_point.json");
    let text = std::fs::read_to_string(&golden).unwrap().replacen("\"k_dim\": 1", "\"k_dim\": 2", 1);
    std::fs::write(&golden, text).unwrap();
    let out = logls(&["verify", "all", "--corpus", dir.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("log_point"));
}

#[test]
fn input_errors_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.toml");
    std::fs::write(&bad, "field = \"R\"\n").unwrap();
    let out = logls(&["homology", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("unsupported field"));

    std::fs::write(&bad, "field = \"Q\"\n[target.ring]\nvars = [\"x\"]\n[target.monoid]\ngens = [\"a\"]\nrelations = [[[2], [1]]]\n[target.alpha]\na = \"x\"\n").unwrap();
    let out = logls(&["homology", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("alpha does not respect relation 1"));

    let out = logls(&["verify", "nonsense"]);
    assert_eq!(out.status.code(), Some(2));
    let out = logls(&["homology", &input("log_point"), "--degrees", "3"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn consistency_failures_exit_with_three() {
    let e = logls_cli::commands::CliError::from(logls_core::Error::CommutationFailure("square".into()));
    assert_eq!(e.exit_code(), 3);
}

#[test]
fn corpus_files_round_trip() {
    for e in std::fs::read_dir(corpus()).unwrap() {
        let p = e.unwrap().path();
        if p.extension().and_then(|x| x.to_str()) != Some("toml") {
            continue;
        }
        let spec = parse_input(&std::fs::read_to_string(&p).unwrap()).unwrap();
        assert_eq!(parse_input(&print_spec(&spec)).unwrap(), spec, "{}", p.display());
        let out = logls(&["normalize", p.to_str().unwrap()]);
        assert_eq!(String::from_utf8_lossy(&out.stdout), print_spec(&spec));
    }
}

fn poly_text() -> impl Strategy<Value = String> {
    let term = (-4i64..=4, 0u32..3, 0u32..3, 1i64..=3).prop_map(|(c, a, b, d)| {
        let coeff = if d == 1 { c.to_string() } else { format!("{c}/{d}") };
        format!("{coeff} * x^{a} * y^{b}")
    });
    prop::collection::vec(term, 1..4).prop_map(|ts| ts.join(" + "))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn printed_specs_parse_back(rel in poly_text(), img in poly_text(), field in prop::sample::select(vec!["Q", "F3", "F5"])) {
        let text = format!(
            "field = \"{field}\"\n[source.ring]\nvars = [\"u\"]\n[target.ring]\nvars = [\"x\", \"y\"]\nrelations = [\"{rel}\"]\n[morphism.ring_map]\nu = \"{img}\"\n"
        );
        // random relations may generate the unit ideal, which is rejected
        if let Ok(spec) = parse_input(&text) {
            let again = parse_input(&print_spec(&spec)).unwrap();
            prop_assert_eq!(again, spec);
        }
    }
}
