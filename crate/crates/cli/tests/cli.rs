use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::{json, Value};

const ENCODER: &str = r#"{"p": 2, "n": 2, "inputs": [{"response": [[1, 1], [0, 1], [1, 1]]}]}"#;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_nfgdual"))
}

fn write(name: &str, contents: &str) -> PathBuf {
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "stdout is not JSON ({e}):\n{}\nstderr:\n{}",
            String::from_utf8_lossy(&out.stdout),
            String::from_utf8_lossy(&out.stderr)
        )
    })
}

fn exit(out: &Output) -> i32 {
    out.status.code().unwrap()
}

fn poly_text(v: &Value) -> String {
    let mut terms: Vec<String> = v["terms"]
        .as_array()
        .unwrap()
        .iter()
        .map(|t| format!("{}|{}", t["coeff"], t["monomial"]))
        .collect();
    terms.sort();
    terms.join(";")
}

#[test]
fn rate_half_spectrum() {
    let f = write("enc_spectrum.json", ENCODER);
    let out = run(&["conv", "spectrum", f.to_str().unwrap(), "--dmax", "7"]);
    assert_eq!(exit(&out), 0);
    let r = report(&out);
    assert_eq!(r["command"], "conv spectrum");
    assert_eq!(r["result"]["coeffs"], json!({"5": "1", "6": "2", "7": "4"}));
    assert_eq!(r["result"]["free_distance"], 5);
}

#[test]
fn spectrum_csv_table() {
    let f = write("enc_csv.json", ENCODER);
    let out = run(&["conv", "spectrum", f.to_str().unwrap(), "--dmax", "7", "--format", "csv"]);
    assert_eq!(exit(&out), 0);
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "weight,count\n5,1\n6,2\n7,4");
}

#[test]
fn stdin_input() {
    let mut child = bin()
        .args(["conv", "spectrum", "--dmax", "6"])
        .stdin(std::process::Stdio::piped())
        .stdout(std::process::Stdio::piped())
        .spawn()
        .unwrap();
    use std::io::Write;
    child.stdin.take().unwrap().write_all(ENCODER.as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(exit(&out), 0);
    assert_eq!(report(&out)["result"]["coeffs"], json!({"5": "1", "6": "2"}));
}

#[test]
fn hamming_wam_macwilliams_is_transpose() {
    let f = write("enc_wam_in.json", ENCODER);
    let out = run(&["wam", "compute", f.to_str().unwrap(), "--kind", "hamming"]);
    assert_eq!(exit(&out), 0);
    let wam = report(&out)["result"].clone();
    let g = write("enc_wam.json", &wam.to_string());
    let out = run(&["wam", "macwilliams", "--kind", "hamming", g.to_str().unwrap()]);
    assert_eq!(exit(&out), 0);
    let r = report(&out);
    assert_eq!(r["witnesses"]["alpha"], "8");
    let dual = &r["result"];
    assert_eq!(dual["rows"], wam["rows"]);
    for i in 0..4 {
        for j in 0..4 {
            let d = poly_text(&dual["entries"][i][j]).replace("\"X\"", "\"x\"");
            assert_eq!(d, poly_text(&wam["entries"][j][i]), "entry ({i},{j})");
        }
    }
}

#[test]
fn wam_kind_mismatch_is_rejected() {
    let f = write("enc_kind_in.json", ENCODER);
    let out = run(&["wam", "compute", f.to_str().unwrap(), "--kind", "complete"]);
    let g = write("enc_kind.json", &report(&out)["result"].to_string());
    let out = run(&["wam", "macwilliams", "--kind", "hamming", g.to_str().unwrap()]);
    assert_eq!(exit(&out), 1);
    assert_eq!(report(&out)["error"]["kind"], "invalid_argument");
}

#[test]
fn degree_violation_is_an_input_error() {
    // `e` touches three factors
    let graph = json!({
        "p": 2,
        "internals": [{"id": "e", "dim": 1}],
        "factors": [
            {"id": "f", "vars": ["e"], "table": [1, 1]},
            {"id": "g", "vars": ["e"], "table": [1, 0]},
            {"id": "h", "vars": ["e"], "table": [0, 1]}
        ]
    });
    let f = write("bad_degree.json", &graph.to_string());
    let out = run(&["nfg", "verify-duality", f.to_str().unwrap()]);
    assert_eq!(exit(&out), 1);
    let r = report(&out);
    assert_eq!(r["command"], "nfg verify-duality");
    assert_eq!(r["error"]["kind"], "invalid_graph");
    assert!(!out.stderr.is_empty());
}

#[test]
fn normalize_accepts_the_same_graph() {
    let graph = json!({
        "p": 2,
        "internals": [{"id": "e", "dim": 1}],
        "factors": [
            {"id": "f", "vars": ["e"], "table": [1, 1]},
            {"id": "g", "vars": ["e"], "table": [1, 0]},
            {"id": "h", "vars": ["e"], "table": [0, 1]}
        ]
    });
    let f = write("bad_degree_norm.json", &graph.to_string());
    let out = run(&["nfg", "verify-duality", "--normalize", f.to_str().unwrap()]);
    assert_eq!(exit(&out), 0);
    assert_eq!(report(&out)["verified"], true);
}

#[test]
fn verify_duality_on_a_chain() {
    let graph = json!({
        "p": 3,
        "externals": [{"id": "a", "dim": 1}],
        "internals": [{"id": "e", "dim": 1}],
        "factors": [
            {"id": "f", "vars": ["a", "e"], "table": [1, 2, 0, 0, 1, 3, 1, 0, "1/2"]},
            {"id": "g", "vars": ["e"], "table": [1, 0, 2]}
        ]
    });
    let f = write("chain.json", &graph.to_string());
    let out = run(&["nfg", "verify-duality", f.to_str().unwrap()]);
    assert_eq!(exit(&out), 0);
    let r = report(&out);
    assert_eq!(r["verified"], true);
    assert_eq!(r["witnesses"]["expected"], "3");
}

#[test]
fn compute_power_macwilliams_chain() {
    let f = write("enc_chain.json", ENCODER);
    let out = run(&["wam", "compute", f.to_str().unwrap()]);
    let g = write("enc_chain_wam.json", &report(&out)["result"].to_string());
    let out = run(&["wam", "power", "--N", "4", g.to_str().unwrap()]);
    assert_eq!(exit(&out), 0);
    let h = write("enc_chain_pow.json", &report(&out)["result"].to_string());
    let out = run(&["wam", "macwilliams", h.to_str().unwrap()]);
    assert_eq!(exit(&out), 0);
    let transformed = report(&out);
    // 4 start states, 2^4 paths from each
    assert_eq!(transformed["witnesses"]["alpha"], "64");

    let out = run(&["conv", "dual", f.to_str().unwrap()]);
    assert_eq!(exit(&out), 0);
    let d = write("enc_chain_dual.json", &report(&out)["result"].to_string());
    let out = run(&["wam", "compute", d.to_str().unwrap()]);
    let dw = write("enc_chain_dual_wam.json", &report(&out)["result"].to_string());
    let out = run(&["wam", "power", "--N", "4", dw.to_str().unwrap()]);
    let dual_power = report(&out)["result"].clone();
    for i in 0..4 {
        for j in 0..4 {
            assert_eq!(
                poly_text(&transformed["result"]["entries"][i][j]).replace("\"X\"", "\"x\""),
                poly_text(&dual_power["entries"][i][j]),
                "entry ({i},{j})"
            );
        }
    }
    let out = run(&["conv", "reverse", d.to_str().unwrap()]);
    assert_eq!(exit(&out), 0);
    let r = write("enc_chain_rev.json", &report(&out)["result"].to_string());
    let out = run(&["conv", "spectrum", "--dmax", "6", r.to_str().unwrap()]);
    assert_eq!(exit(&out), 0);
    // the dual is generated by (1+D+D^2, 1+D^2), an equivalent code
    assert_eq!(report(&out)["result"]["coeffs"], json!({"5": "1", "6": "2"}));
}

#[test]
fn state_order_reorders_rows() {
    let f = write("enc_order.json", ENCODER);
    let out = run(&["wam", "compute", f.to_str().unwrap(), "--state-order", "11,01,10,00"]);
    assert_eq!(exit(&out), 0);
    let r = report(&out);
    assert_eq!(r["result"]["rows"], json!(["11", "01", "10", "00"]));
    // 00 -> 00 carries weight 0
    assert_eq!(poly_text(&r["result"]["entries"][3][3]), "[\"1\"]|{}");
}

#[test]
fn terminate_with_verification() {
    let f = write("enc_term.json", ENCODER);
    for mode in ["subcode", "projection", "truncated", "rtruncated", "tailbiting"] {
        let out = run(&["conv", "terminate", "--mode", mode, "--N", "4", "--verify", f.to_str().unwrap()]);
        assert_eq!(exit(&out), 0, "{mode}");
        assert_eq!(report(&out)["verified"], true, "{mode}");
    }
}

#[test]
fn code_macwilliams_verified() {
    let code = json!({"p": 3, "profile": [1, 1, 1, 1], "generators": [[1, 0, 1, 1], [0, 1, 1, 2]]});
    let f = write("tetracode.json", &code.to_string());
    for kind in ["exact", "complete", "hamming"] {
        let out = run(&["code", "macwilliams", "--kind", kind, f.to_str().unwrap()]);
        assert_eq!(exit(&out), 0, "{kind}");
        let r = report(&out);
        assert_eq!(r["verified"], true);
        assert_eq!(r["witnesses"]["alpha"], "9");
    }
    let out = run(&["code", "weights", f.to_str().unwrap()]);
    assert_eq!(report(&out)["result"], json!(["1", "0", "0", "8"]));
}

#[test]
fn identities_report() {
    let out = run(&["xform", "verify-identities", "--p", "3", "--dim", "2"]);
    assert_eq!(exit(&out), 0);
    let r = report(&out);
    assert_eq!(r["verified"], true);
    assert!(r["result"]["checks"].as_array().unwrap().iter().all(|c| c["holds"] == true));
}

#[test]
fn deterministic_payload() {
    let f = write("enc_det.json", ENCODER);
    let a = run(&["wam", "compute", "--kind", "exact", f.to_str().unwrap()]);
    let b = run(&["wam", "compute", "--kind", "exact", f.to_str().unwrap()]);
    let (ra, rb) = (report(&a), report(&b));
    assert_eq!(ra["inputs_digest"], rb["inputs_digest"]);
    assert_eq!(ra["result"].to_string(), rb["result"].to_string());
}

#[test]
fn usage_errors() {
    let out = run(&["conv", "spectrum", "--bogus"]);
    assert_eq!(exit(&out), 1);
    assert!(!out.stderr.is_empty());
    let out = run(&["code", "dual", "/nonexistent/file.json"]);
    assert_eq!(exit(&out), 1);
    assert_eq!(report(&out)["error"]["kind"], "parse");
    let bad = write("bad_prime.json", r#"{"p": 4, "profile": [1], "generators": []}"#);
    let out = run(&["code", "dual", bad.to_str().unwrap()]);
    assert_eq!(exit(&out), 1);
}
