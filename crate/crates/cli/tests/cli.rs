use std::fs;
use std::process::{Command, Output};

fn obstruct(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_obstruct")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn structured(args: &[&str]) -> serde_json::Value {
    let mut a = args.to_vec();
    a.extend(["--format", "structured"]);
    let o = obstruct(&a);
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", stdout(&o)))
}

#[test]
fn homology_examples() {
    let v = structured(&["homology", "corpus:cp2", "--degree", "2"]);
    assert_eq!(v["groups"][0]["group"], "Z^1");
    let v = structured(&["homology", "corpus:rp4", "--degree", "2", "--coeff", "z2"]);
    assert_eq!(v["groups"][0]["group"], "Z2^1");
    let o = obstruct(&["homology", "corpus:s4", "--degree", "3"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "H_3(corpus:s4; Z) = 0");
}

#[test]
fn all_degrees_by_default() {
    let v = structured(&["cohomology", "corpus:klein"]);
    let got: Vec<&str> = v["groups"].as_array().unwrap().iter().map(|g| g["group"].as_str().unwrap()).collect();
    assert_eq!(got, ["Z^1", "Z^1", "Z/2"]);
}

#[test]
fn form_hopf_and_sq() {
    let v = structured(&["form", "corpus:s2xs2"]);
    assert_eq!(v["matrix"], serde_json::json!([[0, 1], [1, 0]]));
    assert_eq!(v["unimodular"], true);
    let v = structured(&["hopf", "corpus:hopf_map"]);
    assert_eq!(v["hopf_invariant"].as_i64().unwrap().abs(), 1);
    let v = structured(&["sq", "2", "corpus:cp2", "--class", "h", "--mod2"]);
    assert_eq!(v["zero"], false);
    let v = structured(&["degree", "corpus:s2_reflection"]);
    assert_eq!(v["degree"], -1);
}

#[test]
fn thom_square_is_quadratic() {
    let v = structured(&["thom", "corpus:thom_e1", "--n", "3"]);
    assert_eq!(v["e"], 1);
    assert_eq!(v["thom_square"], 9);
    let v = structured(&["thom", "corpus:thom_w2_1"]);
    assert_eq!(v["w2"], 1);
}

#[test]
fn verify_exit_codes() {
    assert_eq!(obstruct(&["verify", "corpus:prop1_single"]).status.code(), Some(0));
    let o = obstruct(&["verify", "corpus:prop1_inconsistent"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("failing surfaces: sigma2"));
    let v = structured(&["verify", "corpus:prop2_residual"]);
    assert_eq!(v["passed"], false);
    assert_eq!(v["surfaces"][0]["residual"], 1);
}

#[test]
fn malformed_input_is_a_usage_error() {
    let dir = std::env::temp_dir().join(format!("obstruct-cli-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.json");
    fs::write(&bad, r#"{"profile": "hopf", "surfaces": [{"n": 1}]}"#).unwrap();
    assert_eq!(obstruct(&["verify", bad.to_str().unwrap()]).status.code(), Some(2));
    let both = dir.join("both.json");
    fs::write(&both, r#"{"profile": "hopf", "c1_squared": 1, "c1_class": {"manifold": "cp2", "coords": [1]}, "surfaces": []}"#).unwrap();
    assert_eq!(obstruct(&["verify", both.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(obstruct(&["verify", "corpus:nothing"]).status.code(), Some(2));
    assert_eq!(obstruct(&["homology", "/no/such/file"]).status.code(), Some(2));
    assert_eq!(obstruct(&["bogus"]).status.code(), Some(2));
    fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn file_inputs_and_out_flag() {
    let dir = std::env::temp_dir().join(format!("obstruct-files-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    let scenario = dir.join("s.json");
    fs::write(
        &scenario,
        r#"{"profile": "hopf", "c1_squared": 13, "surfaces": [
             {"n": 1, "chi": 1, "replacement_indices": [-1]},
             {"n": 2, "chi": 3, "replacement_indices": [-12]}]}"#,
    )
    .unwrap();
    let out = dir.join("report.json");
    let o = obstruct(&["verify", scenario.to_str().unwrap(), "--format", "structured", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["sign"], "-1");

    let map = dir.join("m.json");
    fs::write(&map, r#"{"source": "corpus:hexagon", "target": "corpus:s1", "vertex_images": [0,1,2,0,1,2]}"#).unwrap();
    assert_eq!(structured(&["degree", map.to_str().unwrap()])["degree"], 2);

    let complex = dir.join("k.json");
    fs::write(&complex, r#"{"vertices": 4, "top_simplices": [[0,1,2],[0,1,3],[0,2,3],[1,2,3]], "sub_vertices": [0]}"#).unwrap();
    let v = structured(&["homology", complex.to_str().unwrap(), "--degree", "2"]);
    assert_eq!(v["groups"][0]["group"], "Z^1");
    fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn output_is_deterministic() {
    for args in [
        vec!["homology", "corpus:torus"],
        vec!["form", "corpus:cp2", "--format", "structured"],
        vec!["verify", "corpus:prop1_cp2_a3", "--format", "structured"],
        vec!["corpus", "list"],
    ] {
        assert_eq!(obstruct(&args).stdout, obstruct(&args).stdout, "{args:?}");
    }
}

#[test]
fn corpus_check_passes_in_both_modes() {
    let par = obstruct(&["corpus", "check"]);
    assert_eq!(par.status.code(), Some(0), "{}", stdout(&par));
    let seq = obstruct(&["corpus", "check", "--sequential"]);
    assert_eq!(par.stdout, seq.stdout);
}

#[test]
fn corpus_show_round_trips() {
    let o = obstruct(&["corpus", "show", "s2"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["vertices"], 4);
    let o = obstruct(&["corpus", "show", "prop2_match"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["profile"], "su3_s4");
}
