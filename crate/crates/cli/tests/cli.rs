use std::process::{Command, Output};

use serde_json::Value;

fn mellin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mellin")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    assert_eq!(o.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).expect("json output")
}

#[test]
fn local_unramified_value_and_envelope() {
    let v = json(&mellin(&["local", "--field", "qp", "--p", "5", "--a", "1", "--b", "0", "--s", "2"]));
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["command"], "local");
    assert_eq!(v["inputs"]["place"]["field"], "qp");
    let z = &v["results"][0]["value"];
    assert!((z[0].as_f64().unwrap() - 25.0 / 24.0).abs() < 1e-12);
    assert!(z[1].as_f64().unwrap().abs() < 1e-12);
}

#[test]
fn local_oracle_agrees() {
    let v = json(&mellin(&["local", "--field", "qp", "--p", "3", "--a", "1/9", "--b", "1/3", "--s", "0.5+3i", "--oracle"]));
    let r = &v["results"][0];
    let (a, b) = (&r["value"], &r["oracle"]);
    let d = (a[0].as_f64().unwrap() - b[0].as_f64().unwrap()).hypot(a[1].as_f64().unwrap() - b[1].as_f64().unwrap());
    assert!(d < 1e-10, "{r}");
}

#[test]
fn reference_zeros_csv() {
    let o = mellin(&["zeros", "--global", "reference", "--imax", "30"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("re,im,multiplicity,certified,method,class,place"));
    let rows: Vec<Vec<String>> = lines.map(|l| l.split(',').map(str::to_owned).collect()).collect();
    assert_eq!(rows.len(), 9);
    let mut last = f64::NEG_INFINITY;
    for r in &rows {
        let (re, im): (f64, f64) = (r[0].parse().unwrap(), r[1].parse().unwrap());
        assert!((re - 0.5).abs() < 1e-6);
        assert!(im >= last);
        last = im;
        assert_eq!(r[3], "true");
        // 17 significant digits
        assert_eq!(r[1].split('e').next().unwrap().replace('.', "").trim_start_matches('-').len(), 17);
    }
    let global: Vec<f64> = rows.iter().filter(|r| r[5] == "global").map(|r| r[1].parse().unwrap()).collect();
    assert_eq!(global.len(), 3);
    for (t, want) in global.iter().zip([14.134725, 21.022040, 25.010858]) {
        assert!((t - want).abs() < 1e-5);
    }
    assert!(rows.iter().filter(|r| r[5] == "local").all(|r| r[6] == "2"));
    assert_eq!(text, stdout(&mellin(&["zeros", "--global", "reference", "--imax", "30"])));
}

#[test]
fn weil_index_product_is_one() {
    let v = json(&mellin(&["weil-index", "--global", "reference"]));
    let text = v["results"].to_string();
    assert!(text.contains("product"), "{text}");
    let o = stdout(&mellin(&["weil-index", "--global", "reference", "--format", "csv"]));
    let last = o.lines().last().unwrap();
    let f: Vec<f64> = last.split(',').skip(1).map(|x| x.parse().unwrap()).collect();
    assert!((f[0] - 1.0).abs() < 1e-12 && f[1].abs() < 1e-12, "{last}");
}

#[test]
fn config_round_trip() {
    let dir = std::env::temp_dir().join(format!("mellin-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let first = mellin(&["local", "--field", "qp", "--p", "5", "--a", "2/10", "--b", "2", "--s", "2", "--s", "0.5+1i"]);
    let v = json(&first);
    assert_eq!(v["inputs"]["place"]["a"], "1/5");
    let path = dir.join("job.json");
    std::fs::write(&path, v["inputs"].to_string()).unwrap();
    let second = mellin(&["--config", path.to_str().unwrap()]);
    assert_eq!(first.stdout, second.stdout);

    let mut bad = v["inputs"].clone();
    bad["extra"] = Value::from(1);
    std::fs::write(&path, bad.to_string()).unwrap();
    assert_eq!(mellin(&["--config", path.to_str().unwrap()]).status.code(), Some(2));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn config_errors_exit_two() {
    for args in [
        &["local", "--field", "qp", "--p", "4", "--a", "1", "--b", "0", "--s", "2"][..],
        &["local", "--field", "qp", "--p", "5", "--a", "x", "--b", "0", "--s", "2"],
        &["local", "--bogus"],
        &["verify", "--suite", "12"],
        &["zeros", "--global", "reference", "--imin", "5", "--imax", "2"],
    ] {
        let o = mellin(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    }
    let o = Command::new(env!("CARGO_BIN_EXE_mellin")).env("MW_THREADS", "zero").args(["verify", "--suite", "2"]).output().unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn uncertifiable_scan_exits_one() {
    let o = mellin(&["zeros", "--global", "reference", "--imax", "30", "--residual-tol", "1e-300"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("numeric failure"));
}

#[test]
fn verify_short_suite() {
    let o = Command::new(env!("CARGO_BIN_EXE_mellin")).env("MW_THREADS", "2").args(["verify", "--suite", "2,1"]).output().unwrap();
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 2);
    assert!(lines[0].starts_with("[PASS] criterion 1"));
    assert!(lines[1].starts_with("[PASS] criterion 2"));
}
