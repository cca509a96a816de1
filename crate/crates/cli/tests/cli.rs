use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use nrh_cli::model_file::ModelFile;
use nrh_core::constructions::{build_family, FamilyParams};
use serde_json::Value;
use tempfile::TempDir;

fn nrh() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_nrh"));
    c.env_remove("NRH_CATALOG_DIR");
    c
}

fn run(args: &[&str]) -> Output {
    nrh().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn json_of(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("not JSON ({e}): {}", stdout(o)))
}

fn construct_to(dir: &Path, name: &str, family: &str, params: &[&str]) -> PathBuf {
    let path = dir.join(name);
    let mut args = vec!["construct", "--family", family];
    for p in params {
        args.extend(["--param", p]);
    }
    args.extend(["-o", path.to_str().unwrap()]);
    let o = run(&args);
    assert_eq!(o.status.code(), Some(0), "{}{}", stdout(&o), stderr(&o));
    path
}

const FLAT: &str = r#"{
  "dim": 3,
  "metric": [["-1","0","0"],["0","1","0"],["0","0","1"]],
  "frame": "orthonormal",
  "basis_labels": ["e0","e1","e2"],
  "torsion": [],
  "curvature": []
}"#;

#[test]
fn constructed_model_validates_and_round_trips() {
    let dir = TempDir::new().unwrap();
    let path = construct_to(dir.path(), "d4.json", "extend-product", &["preset=d", "m=1"]);
    let text = std::fs::read_to_string(&path).unwrap();
    let file = ModelFile::parse(&text).unwrap();
    assert_eq!(file.dim, 4);

    let mut params = FamilyParams::new();
    params.parse_assignment("preset=d").unwrap();
    params.parse_assignment("m=1").unwrap();
    let built = build_family("extend-product", &params).unwrap();
    let loaded = file.to_model().unwrap();
    assert_eq!(loaded.curvature(), built.curvature());
    assert_eq!(loaded.torsion(), built.torsion());
    assert_eq!(ModelFile::from_model(&loaded), file);

    let o = run(&["validate", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("validation: PASS"));
}

#[test]
fn classify_reports_case_and_derived_algebra() {
    let dir = TempDir::new().unwrap();
    let path = construct_to(dir.path(), "w.json", "dim3-witt", &["alpha=1"]);
    let o = run(&["classify", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.starts_with("case 2"), "{out}");
    assert!(out.contains("so12"), "{out}");

    let o = run(&["--json", "classify", path.to_str().unwrap()]);
    let v = json_of(&o);
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["kind"], "classification");
    assert_eq!(v["case_number"], 2);
    assert_eq!(v["valid"], true);
}

#[test]
fn transvection_prints_killing_form() {
    let dir = TempDir::new().unwrap();
    let path = construct_to(dir.path(), "w.json", "dim3-witt", &["alpha=1"]);
    let v = json_of(&run(&["--json", "transvection", path.to_str().unwrap()]));
    assert_eq!(v["jacobi_ok"], true);
    let n = v["g_dim"].as_u64().unwrap() + v["m_dim"].as_u64().unwrap();
    assert_eq!(v["killing"].as_array().unwrap().len() as u64, n);
}

#[test]
fn zero_model_is_flat() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("flat.json");
    std::fs::write(&path, FLAT).unwrap();
    assert_eq!(run(&["validate", path.to_str().unwrap()]).status.code(), Some(0));
    let o = run(&["classify", path.to_str().unwrap()]);
    assert!(stdout(&o).contains("flat/symmetric"), "{}", stdout(&o));
}

#[test]
fn schema_errors_name_the_field() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, FLAT.replace(r#"["0","1","0"]"#, r#"["0","1/0","0"]"#)).unwrap();
    let o = run(&["validate", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("metric[1][1]"), "{}", stderr(&o));

    std::fs::write(&path, FLAT.replace("\"frame\"", "\"extra\": 1, \"frame\"")).unwrap();
    assert_eq!(run(&["validate", path.to_str().unwrap()]).status.code(), Some(1));

    let o = run(&["validate", dir.path().join("missing.json").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn failing_identity_exits_two() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("broken.json");
    // a curvature without pair symmetry or Bianchi
    let broken = FLAT.replace(
        r#""curvature": []"#,
        r#""curvature": [{"indices": [0, 1], "matrix": [["0","0","0"],["0","0","1"],["0","-1","0"]]}]"#,
    );
    std::fs::write(&path, broken).unwrap();
    let o = run(&["validate", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2), "{}{}", stdout(&o), stderr(&o));
    assert!(stdout(&o).contains("FAIL"));
}

#[test]
fn unknown_family_lists_known_ones() {
    let o = run(&["construct", "--family", "no-such-family"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("dim3-witt"), "{}", stderr(&o));
}

#[test]
fn catalog_filters_by_dimension() {
    let o = run(&["catalog", "--dim", "5"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("berger"));
    assert!(out.contains("heisenberg5"));
    let v = json_of(&run(&["--json", "catalog", "--dim", "5"]));
    assert!(v["entries"].as_array().unwrap().iter().all(|e| e["dim"] == 5));
}

#[test]
fn user_catalog_directory_is_listed() {
    let dir = TempDir::new().unwrap();
    std::fs::write(dir.path().join("my-flat.json"), FLAT).unwrap();
    let o = nrh().env("NRH_CATALOG_DIR", dir.path()).args(["catalog", "--dim", "3"]).output().unwrap();
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("my-flat"));
}

#[test]
fn plane_wave_holonomy_rank() {
    let o = run(&["coords", "plane-wave", "--A", "I", "--F", "0", "--check", "holonomy"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("holonomy rank = 2"), "{}", stdout(&o));

    let v = json_of(&run(&["--json", "coords", "plane-wave", "--A", "[[1,0],[0,3]]", "--F", "[[0,1],[-1,0]]"]));
    assert_eq!(v["rank"], v["rank_a_minus_f2"]);
}

#[test]
fn pp_wave_torsion_is_parallel() {
    for ex in ["full", "reduced"] {
        let o = run(&["coords", "pp-wave", "--example", ex, "--check", "nabla-t", "--samples", "6"]);
        assert_eq!(o.status.code(), Some(0), "{ex}: {}", stdout(&o));
    }
}

#[test]
fn bad_matrix_literal_is_a_usage_error() {
    let o = run(&["coords", "plane-wave", "--A", "[[1,0],[0]]"]);
    assert_eq!(o.status.code(), Some(1));
}
