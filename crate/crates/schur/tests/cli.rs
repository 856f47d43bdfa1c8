use std::process::{Command, Output};

fn schur(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_schur")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn psi_prints_root_and_reflection_word() {
    let o = schur(&["psi", "3213213213212312"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("1662490 4352663 11395212\t"));
    assert_eq!(stdout(&schur(&["psi", "2"])).split('\t').next(), Some("0 1 0"));
    assert_eq!(stdout(&schur(&["psi", "12"])).split('\t').next(), Some("2 1 0"));
}

#[test]
fn curve_conversions() {
    let o = schur(&["curve", "--z", "-2", "5", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let fields: Vec<String> = stdout(&o).trim_end().split('\t').map(str::to_string).collect();
    assert_eq!(fields[1], "3213213213212312");
    assert_eq!(fields[3], "1662490 4352663 11395212");
    let o = schur(&["curve", "--word", "21"]);
    assert!(stdout(&o).starts_with("0 1 2\t"));
}

#[test]
fn svg_files_are_written() {
    let dir = std::env::temp_dir().join(format!("schur-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let curve = dir.join("curve.svg");
    let o = schur(&["curve", "--z", "0", "1", "1", "--svg", curve.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(&curve).unwrap();
    assert!(text.contains("<svg") && text.contains("stroke=\"red\""));
    let walk = dir.join("walk.svg");
    let o = schur(&["svg", "--word", "23132", "--out", walk.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(std::fs::read_to_string(&walk).unwrap().contains("<path"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn verify_emits_ordered_json_lines() {
    let o = schur(&["verify", "--max-len", "4", "--oracle-max-len", "3", "--format", "json", "--workers", "3"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let lines: Vec<serde_json::Value> = stdout(&o).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(lines.len(), 3 + 6 + 12 + 24);
    assert_eq!(lines[0]["word"], "1");
    assert_eq!(lines[3]["word"], "12");
    assert_eq!(lines[0]["psi"], serde_json::json!(["1", "0", "0"]));
    assert!(lines.iter().all(|l| l["agree"] == true && l["round_trip"] == true));
    let sequential = schur(&["verify", "--max-len", "4", "--oracle-max-len", "3", "--format", "json", "--workers", "1"]);
    assert_eq!(stdout(&sequential), stdout(&o));
}

#[test]
fn engines_can_be_selected() {
    let o = schur(&["verify", "--max-len", "6", "--engines", "psi,tropical", "--format", "tsv"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert_eq!(out.lines().count(), 1 + 189);
    assert!(out.lines().skip(1).all(|l| l.split('\t').nth(5) == Some("skipped")));
}

#[test]
fn exit_codes_follow_the_contract() {
    assert_eq!(schur(&["psi", "1231x"]).status.code(), Some(2));
    assert_eq!(schur(&["word-of-segment", "2", "4"]).status.code(), Some(2));
    assert_eq!(schur(&["verify", "--max-len", "0"]).status.code(), Some(2));
    assert_eq!(schur(&["svg", "--word", "12"]).status.code(), Some(2));
    assert_eq!(schur(&["suite", "a2affine"]).status.code(), Some(0));
    assert_eq!(schur(&["--help"]).status.code(), Some(0));
}

#[test]
fn environment_overrides_flags() {
    let o = Command::new(env!("CARGO_BIN_EXE_schur"))
        .args(["psi", "21"])
        .env("SCHUR_ORIENTATION", "paper")
        .env("SCHUR_FORMAT", "json")
        .output()
        .unwrap();
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_ne!(v["root"], serde_json::json!(["1", "2", "0"]));
    let o = schur(&["psi", "21", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["root"], serde_json::json!(["1", "2", "0"]));
}

#[test]
fn decompose_and_segments() {
    assert_eq!(stdout(&schur(&["word-of-segment", "5", "3"])).trim(), "2321232321232");
    assert_eq!(stdout(&schur(&["word-of-segment", "-1", "2"])).trim(), "1");
    let o = schur(&["decompose", "3213213213212312"]);
    let f: Vec<String> = stdout(&o).trim_end().split('\t').map(str::to_string).collect();
    assert_eq!(f[0], "321321321321");
    assert_eq!(f[1], "2312");
    assert_eq!(f[2], "12");
    assert_eq!(schur(&["dvec", "121", "--engine", "oracle"]).status.code(), Some(0));
    assert_eq!(stdout(&schur(&["dvec", "121", "--engine", "tropical"])).trim(), "3 2 0");
}
