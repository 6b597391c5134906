use cactus_synth::cli::run;
use serde_json::Value;

fn data(name: &str) -> String {
    format!("{}/data/{name}.json", env!("CARGO_MANIFEST_DIR"))
}

fn call(args: &[&str]) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let argv = std::iter::once("cactus-synth").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn json(args: &[&str]) -> Value {
    let (code, out, err) = call(args);
    assert_eq!(code, 0, "stderr: {err}");
    serde_json::from_str(&out).unwrap()
}

#[test]
fn path_on_fig3() {
    let v = json(&["path", "--graph", &data("fig3")]);
    assert_eq!(v["length"], 4);
    assert_eq!(v["covered_check"], true);
}

#[test]
fn hash_on_star() {
    let g = data("star5");
    let v = json(&["hash", "--graph", &g, "--l", "2", "--p", "5", "--epsilon", "0.3", "--seed", "1"]);
    assert_eq!(v["cost"]["cnot_count"], 14);
    assert_eq!(v["theorem1_holds"], true);
}

#[test]
fn hash_emits_qasm() {
    let (code, out, _) = call(&["hash", "--graph", &data("fig3"), "--emit", "qasm"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("OPENQASM 2.0;"));
    assert_eq!(out.matches("cx ").count(), 22);
}

#[test]
fn report_embeds_circuit() {
    let v = json(&["qft", "--graph", &data("line6"), "--emit", "json", "--report"]);
    assert_eq!(v["circuit"]["num_qubits"], 6);
    assert_eq!(v["cnot_count"], 40);
}

#[test]
fn qft_on_single_vertex() {
    let (code, out, _) = call(&["qft", "--graph", &data("k1"), "--emit", "json"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["gates"].as_array().unwrap().len(), 1);
    assert_eq!(json(&["qft", "--graph", &data("k1")])["cnot_count"], 0);
}

#[test]
fn verify_both() {
    let g = data("random8");
    assert_eq!(json(&["verify", "--graph", &g, "--what", "qft"])["pass"], true);
    assert_eq!(json(&["verify", "--graph", &g, "--what", "hash", "--l", "3"])["pass"], true);
}

#[test]
fn cost_reports_both() {
    let v = json(&["cost", "--graph", &data("chain4")]);
    assert_eq!(v["hash"]["cnot_count"], 30);
    assert!(v["qft"]["bounds"].as_array().unwrap().iter().any(|b| b["name"] == "theorem2"));
}

#[test]
fn gen_is_deterministic() {
    let a = call(&["gen", "--n", "9", "--seed", "4"]);
    assert_eq!(a, call(&["gen", "--n", "9", "--seed", "4"]));
    let v: Value = serde_json::from_str(&a.1).unwrap();
    assert_eq!(v["n"], 9);
    let star: Value = serde_json::from_str(&call(&["gen", "--family", "star", "--n", "4"]).1).unwrap();
    assert_eq!(star["edges"].as_array().unwrap().len(), 4);
}

#[test]
fn exit_codes() {
    assert_eq!(call(&["path"]).0, 1);
    assert_eq!(call(&["path", "--graph", "/nonexistent.json"]).0, 1);
    assert_eq!(call(&["hash", "--graph", &data("fig3"), "--l", "0"]).0, 1);
    assert_eq!(call(&["gen", "--family", "cycle", "--n", "2"]).0, 1);
    assert_eq!(call(&["--help"]).0, 0);

    let dir = std::env::temp_dir().join(format!("cactus-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let broken = dir.join("split.json");
    std::fs::write(&broken, r#"{"n":4,"edges":[[0,1],[2,3]]}"#).unwrap();
    let (code, _, err) = call(&["path", "--graph", broken.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(!err.is_empty());
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn output_file_written() {
    let dir = std::env::temp_dir().join(format!("cactus-out-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let file = dir.join("c.qasm");
    let (code, out, _) = call(&["qft", "--graph", &data("cycle5"), "--emit", "qasm", "--output", file.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(std::fs::read_to_string(&file).unwrap().starts_with("OPENQASM"));
    assert!(serde_json::from_str::<Value>(&out).is_ok());
    std::fs::remove_dir_all(dir).unwrap();
}
