use std::process::{Command, Output};

use overpart::biject::AuditReport;
use overpart::verify::{BoundTriple, RootRecord, VerifyReport};

fn overpart(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_overpart"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn poly_eval_prints_pbar() {
    let o = overpart(&["poly", "3", "--eval", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "8\n");
    let o = overpart(&["poly", "4"]);
    assert_eq!(stdout(&o), "2/3*x^4 + 4*x^3 + 22/3*x^2 + 2*x\n");
}

#[test]
fn roots_csv_has_header_and_all_cells() {
    let o = overpart(&["roots", "--amax", "3", "--bmax", "3", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("a,b,root\n"));
    let rows: Vec<&str> = text.lines().skip(1).collect();
    assert_eq!(
        rows,
        [
            "1,1,1.00", "1,2,1.00", "1,3,0.80", "2,1,1.00", "2,2,0.84", "2,3,0.70", "3,1,0.80",
            "3,2,0.70", "3,3,0.57"
        ]
    );
}

#[test]
fn json_outputs_reparse() {
    let o = overpart(&["roots", "--amax", "2", "--bmax", "2", "--format", "json"]);
    for line in stdout(&o).lines() {
        let r: RootRecord = serde_json::from_str(line).unwrap();
        assert_eq!(serde_json::to_string(&r).unwrap(), line);
    }
    let o = overpart(&["verify", "th1", "--nmax", "30", "--format", "json"]);
    let line = stdout(&o);
    let r: VerifyReport = serde_json::from_str(line.trim()).unwrap();
    assert!(r.holds);
    assert_eq!(serde_json::to_string(&r).unwrap(), line.trim());
    let o = overpart(&["bounds", "5", "--to", "7", "--format", "json"]);
    let lines: Vec<String> = stdout(&o).lines().map(String::from).collect();
    assert_eq!(lines.len(), 3);
    for line in lines {
        let t: BoundTriple = serde_json::from_str(&line).unwrap();
        assert_eq!(serde_json::to_string(&t).unwrap(), line);
    }
    let o = overpart(&["bijection", "g2", "--a", "4", "--format", "json"]);
    let line = stdout(&o);
    let r: AuditReport = serde_json::from_str(line.trim()).unwrap();
    assert_eq!(serde_json::to_string(&r).unwrap(), line.trim());
}

#[test]
fn identical_arguments_give_identical_output() {
    let args = ["verify", "ie8", "--amax", "40", "--format", "json"];
    let first = overpart(&args);
    let second = Command::new(env!("CARGO_BIN_EXE_overpart"))
        .args(args)
        .env("OVERPART_THREADS", "3")
        .output()
        .unwrap();
    assert_eq!(first.stdout, second.stdout);
    let a = overpart(&["roots", "--amax", "4", "--bmax", "4", "--format", "json"]);
    let b = overpart(&["roots", "--amax", "4", "--bmax", "4", "--format", "json"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn exit_codes() {
    assert_eq!(
        overpart(&["verify", "ie8", "--amax", "93"]).status.code(),
        Some(0)
    );
    assert_eq!(overpart(&["verify", "descent"]).status.code(), Some(0));
    // points below 94 are reported but not held against the claim
    assert_eq!(
        overpart(&["verify", "ie11", "--amin", "2", "--amax", "30"])
            .status
            .code(),
        Some(0)
    );
    assert_eq!(
        overpart(&["verify", "th4", "--xs", "1/2"]).status.code(),
        Some(2)
    );
    assert_eq!(
        overpart(&["poly", "3", "--eval", "x"]).status.code(),
        Some(2)
    );
    assert_eq!(
        overpart(&["enumerate", "30", "-k", "2"]).status.code(),
        Some(2)
    );
    assert_eq!(overpart(&["nonsense"]).status.code(), Some(2));
    let bad = Command::new(env!("CARGO_BIN_EXE_overpart"))
        .args(["poly", "2"])
        .env("OVERPART_THREADS", "many")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("OVERPART_THREADS"));
}

#[test]
fn config_file_overrides_caps_and_width() {
    let dir = std::env::temp_dir().join(format!("overpart-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("config.toml");
    std::fs::write(&path, "width = \"1/100\"\n[caps]\n2 = 3\n").unwrap();
    let p = path.to_str().unwrap();
    assert_eq!(
        overpart(&["enumerate", "4", "-k", "2", "--config", p])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        overpart(&["enumerate", "3", "-k", "2", "--count", "--config", p])
            .status
            .code(),
        Some(0)
    );
    let o = overpart(&[
        "roots", "--amax", "1", "--bmax", "2", "--format", "json", "--config", p,
    ]);
    for line in stdout(&o).lines() {
        let r: RootRecord = serde_json::from_str(line).unwrap();
        assert!(&r.bracket_hi - &r.bracket_lo <= overpart::poly::parse_rational("1/100").unwrap());
    }
    std::fs::write(&path, "unknown = 1\n").unwrap();
    assert_eq!(
        overpart(&["poly", "1", "--config", p]).status.code(),
        Some(2)
    );
    std::fs::remove_dir_all(&dir).unwrap();
}
