use mstruct_cli::run;
use serde_json::Value;

fn json(args: &[&str]) -> (i32, Value) {
    let mut argv = vec!["mstruct"];
    argv.extend_from_slice(args);
    let o = run(argv);
    let v = serde_json::from_slice(&o.stdout).unwrap_or(Value::Null);
    (o.code, v)
}

fn check(v: &Value, name: &str) -> bool {
    v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["name"] == name)
        .map(|c| c["passed"] == true)
        .unwrap_or_else(|| panic!("no check {name}"))
}

#[test]
fn homology_of_rp2() {
    let (code, v) = json(&["homology", "--fixture", "rp2"]);
    assert_eq!(code, 0);
    assert_eq!(v["notes"]["groups"], serde_json::json!({"0": "ℤ", "1": "ℤ/2", "2": "0"}));
}

#[test]
fn example_b_is_coherent() {
    let (code, v) = json(&["coherence", "--fixture", "example-B", "--rank", "2"]);
    assert_eq!(code, 0);
    assert_eq!(v["passed"], true);
    assert!(check(&v, "weak coherence n=2 m=2 i=2"));
}

#[test]
fn trivial_operad_passes_everything() {
    let (code, v) = json(&["check-operad", "--which", "trivial", "--rank", "4"]);
    assert_eq!(code, 0);
    assert!(v["notes"]["variants"].as_array().unwrap().iter().all(|x| x["passed"] == true));
}

#[test]
fn steenrod_on_rp2() {
    let (code, v) = json(&["steenrod", "--fixture", "rp2", "--degree", "1"]);
    assert_eq!(code, 0);
    assert_eq!(v["notes"]["squares"]["Sq^1"]["images"], serde_json::json!([[1]]));
}

#[test]
fn cobar_and_twisted_products() {
    let (code, v) = json(&["cobar", "--fixture", "s3-min", "--degree", "7"]);
    assert_eq!(code, 0);
    let h = &v["notes"]["homology"];
    for d in 0..=6 {
        assert_eq!(h[d.to_string()], if d % 2 == 0 { "ℤ" } else { "0" }, "degree {d}");
    }
    let (code, v) = json(&["twisted", "--fixture", "s2-min"]);
    assert_eq!(code, 0);
    assert!(check(&v, "acyclic below the bound"));
}

#[test]
fn zigzag_fixtures_lift() {
    for f in ["over-point", "over-s2"] {
        let (code, v) = json(&["zigzag-lift", "--fixture", f]);
        assert_eq!(code, 0, "{f}");
        assert!(check(&v, "cobar row: square (1⊗ε)∘f̂ = f∘(1⊗ε)"));
    }
}

#[test]
fn kinvariants() {
    let (code, v) = json(&["kinvariant", "--fixture", "point:s2-min"]);
    assert_eq!(code, 0);
    assert_eq!(v["notes"]["M"], "ℤ");
    assert_eq!(v["notes"]["<mu, x>"], serde_json::json!(["1"]));
    let (_, v) = json(&["kinvariant", "--fixture", "times2:s2-min"]);
    assert_eq!(v["notes"]["M"], "ℤ/2");
}

#[test]
fn exit_codes_partition_outcomes() {
    assert_eq!(json(&["homology", "--fixture", "nope"]).0, 2);
    assert_eq!(json(&["homology"]).0, 2);
    assert_eq!(json(&["frobnicate"]).0, 2);
    let (code, v) = json(&["kinvariant", "--fixture", "point:s2-min", "--degree", "3"]);
    assert_eq!(code, 1);
    assert!(v["checks"][0]["witness"].as_str().unwrap().contains("H_2"));
    assert_eq!(json(&["coherence", "--fixture", "example-B", "--rank", "3"]).0, 3);
}

#[test]
fn json_input_round_trips_through_fixtures() {
    let dir = std::env::temp_dir().join(format!("mstruct-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let (_, v) = json(&["fixtures", "--fixture", "torus"]);
    let path = dir.join("torus.json");
    std::fs::write(&path, serde_json::to_string(&v["notes"]["data"]).unwrap()).unwrap();
    let (code, h) = json(&["homology", "--input", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(h["notes"]["groups"]["1"], "ℤ^2");

    let (_, v) = json(&["fixtures", "--fixture", "example-B", "--rank", "3"]);
    let path = dir.join("b.json");
    std::fs::write(&path, serde_json::to_string(&v["notes"]["data"]).unwrap()).unwrap();
    let (code, _) = json(&["mstructure", "--input", path.to_str().unwrap()]);
    assert_eq!(code, 0);

    let map = serde_json::json!({"source": "s2-min", "target": "s2-min", "images": {"pt": [["pt", "1"]], "x": [["x", "3"]]}});
    let path = dir.join("map.json");
    std::fs::write(&path, map.to_string()).unwrap();
    let (code, v) = json(&["kinvariant", "--input", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(v["notes"]["M"], "ℤ/3");
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn out_file_gets_the_report_and_stdout_the_text_mirror() {
    let path = std::env::temp_dir().join(format!("mstruct-out-{}.json", std::process::id()));
    let o = run(["mstruct", "homology", "--fixture", "torus", "--out", path.to_str().unwrap()]);
    assert_eq!(o.code, 0);
    let v: Value = serde_json::from_slice(&std::fs::read(&path).unwrap()).unwrap();
    assert_eq!(v["subject"], "homology of torus");
    assert!(String::from_utf8(o.stdout).unwrap().starts_with("homology of torus: PASS"));
    std::fs::remove_file(&path).ok();
}

#[test]
fn reruns_are_byte_identical() {
    let cmd = ["mstruct", "zigzag-lift", "--fixture", "over-s2", "--format", "text"];
    assert_eq!(run(cmd), run(cmd));
}
