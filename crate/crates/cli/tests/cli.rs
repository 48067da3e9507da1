use std::process::{Command, Output};

fn gfano(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gfano")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("valid JSON on stdout")
}

#[test]
fn verify_single_family_passes() {
    let out = gfano(&["verify", "--family", "Y24", "--order", "60"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(stdout(&out).starts_with("PASS Y24 eta-product s=4 c=6 g=12A"));
}

#[test]
fn perturbed_constant_fails_with_report_on_stderr() {
    let out = gfano(&["verify", "--family", "Y24", "--c", "7", "--order", "20", "--json"]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8(out.stderr).unwrap();
    let failure: serde_json::Value = serde_json::from_str(err.lines().next().unwrap()).unwrap();
    assert_eq!(failure["status"], "FAIL");
    assert_eq!(failure["first_mismatch"]["index"], 1);
}

#[test]
fn series_json_matches_printed_i15() {
    let out = gfano(&["series", "--family", "Y30", "--order", "10", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["schema"], "gfano-report/1");
    let coeffs: Vec<&str> = v["coeffs"].as_array().unwrap().iter().map(|c| c.as_str().unwrap()).collect();
    assert_eq!(&coeffs[..6], &["1", "3", "15", "105", "855", "7533"]);
}

#[test]
fn json_output_is_deterministic_with_sorted_keys() {
    let a = gfano(&["verify", "--order", "10", "--json"]);
    let b = gfano(&["verify", "--order", "10", "--json"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v = json(&a);
    let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
    assert_eq!(v["reports"].as_array().unwrap().len(), 10);
}

#[test]
fn sweep_over_free_shift() {
    let out = gfano(&["sweep", "--family", "Y28", "--sweep-range", "0..3", "--order", "20"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).lines().filter(|l| l.starts_with("PASS Y28")).count(), 4);
    let out = gfano(&["sweep", "--family", "Y24", "--order", "5"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn broken_invariant_c_minus_s() {
    let out = gfano(&["verify", "--family", "Y28", "--s", "1", "--c", "3", "--order", "15"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn configuration_errors_exit_two() {
    for args in [
        &["verify", "--family", "Y99"][..],
        &["verify", "--s", "3"],
        &["series"],
        &["verify", "--order", "0"],
        &["frobnicate"],
    ] {
        let out = gfano(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn families_and_tables() {
    let out = gfano(&["families", "--json"]);
    let v = json(&out);
    let fams = v["families"].as_array().unwrap();
    assert_eq!(fams.len(), 9);
    let y30 = fams.iter().find(|f| f["key"] == "Y30").unwrap();
    assert_eq!((y30["shift"].as_str(), y30["constant"].as_str()), (Some("FREE"), Some("s+1")));

    let out = gfano(&["tables", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["m23"].as_array().unwrap().len(), 12);
    assert_eq!(v["m24_extra"].as_array().unwrap().len(), 9);
    assert_eq!(v["s24_extra"].as_array().unwrap().len(), 7);
    assert_eq!(v["correspondence"].as_array().unwrap().len(), 16);
    assert_eq!(v["frobenius_mukai"]["status"], "PASS");
    assert!(stdout(&gfano(&["tables"])).contains("1^2 2^2 3^2 6^2"));
}

#[test]
fn out_flag_writes_file() {
    let path = std::env::temp_dir().join(format!("gfano-out-{}.json", std::process::id()));
    let out = gfano(&["series", "--family", "Y20", "--order", "4", "--json", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["coeffs"][4], "1810");
    std::fs::remove_file(path).ok();
}

#[test]
fn x6_runs_level_one_identities() {
    let out = gfano(&["verify", "--family", "X6", "--order", "20"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("kachru-vafa") && text.contains("delta"));
}
