use std::path::Path;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_quasitile"))
        .args(args)
        .env_remove("QUASITILE_THREADS")
        .output()
        .expect("binary runs")
}

fn json(path: &Path) -> serde_json::Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

/// Minimal OFF reader: header, counts, then the declared vertex and face lines.
fn check_off(text: &str) -> (usize, usize) {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty() && !l.starts_with('#'));
    assert_eq!(lines.next(), Some("OFF"));
    let counts: Vec<usize> = lines.next().unwrap().split_whitespace().map(|x| x.parse().unwrap()).collect();
    let (nv, nf) = (counts[0], counts[1]);
    for _ in 0..nv {
        let xyz: Vec<f64> = lines.next().unwrap().split_whitespace().map(|x| x.parse().unwrap()).collect();
        assert_eq!(xyz.len(), 3);
        assert!(xyz.iter().all(|x| x.is_finite()));
    }
    for _ in 0..nf {
        let f: Vec<usize> = lines.next().unwrap().split_whitespace().map(|x| x.parse().unwrap()).collect();
        assert_eq!(f[0], f.len() - 1);
        assert!(f[1..].iter().all(|&i| i < nv));
    }
    assert!(lines.next().is_none());
    (nv, nf)
}

#[test]
fn gen_is_deterministic_across_thread_counts() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a.json"), dir.path().join("b.json"));
    let o1 = run(&["gen", "--radius", "6", "--threads", "1", "--out", a.to_str().unwrap()]);
    let o2 = run(&["gen", "--radius", "6", "--threads", "4", "--out", b.to_str().unwrap()]);
    assert!(o1.status.success() && o2.status.success());
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    let v = json(&a);
    assert_eq!(v["vertices"].as_array().unwrap().len(), 867);
    assert!(String::from_utf8_lossy(&o1.stdout).contains("vertices 867"));
}

#[test]
fn off_exports_are_well_formed() {
    let dir = tempfile::tempdir().unwrap();
    let w = dir.path().join("w.off");
    assert!(run(&["export", "window", "--format", "off", "--out", w.to_str().unwrap()]).status.success());
    assert_eq!(check_off(&std::fs::read_to_string(&w).unwrap()), (32, 30));

    let t = dir.path().join("t.off");
    assert!(run(&["export", "tiles", "--format", "off", "--out", t.to_str().unwrap()]).status.success());
    assert_eq!(check_off(&std::fs::read_to_string(&t).unwrap()), (24, 24));

    let p = dir.path().join("p.off");
    assert!(run(&["gen", "--radius", "4", "--format", "off", "--out", p.to_str().unwrap()]).status.success());
    let (nv, _) = check_off(&std::fs::read_to_string(&p).unwrap());
    assert!(nv > 100);
}

#[test]
fn json_exports() {
    let dir = tempfile::tempdir().unwrap();
    let w = dir.path().join("w.json");
    assert!(run(&["export", "window", "--out", w.to_str().unwrap()]).status.success());
    assert_eq!(json(&w)["vertices"].as_array().unwrap().len(), 32);
    let t = dir.path().join("t.json");
    assert!(run(&["export", "tiles", "--out", t.to_str().unwrap()]).status.success());
    assert_eq!(json(&t).as_array().unwrap().len(), 6);
}

#[test]
fn verify_passes_and_negative_control_fails() {
    let dir = tempfile::tempdir().unwrap();
    let r = dir.path().join("r.json");
    let ok = run(&["verify", "--out", r.to_str().unwrap()]);
    assert_eq!(ok.status.code(), Some(0));
    let v = json(&r);
    assert_eq!(v["passed"], true);
    let checks = v["checks"].as_array().unwrap();
    assert!(checks.len() >= 12);
    assert!(checks.iter().all(|c| c["passed"] == true));

    let bad = run(&["verify", "--corrupt-m"]);
    assert_eq!(bad.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&bad.stdout).unwrap();
    assert_eq!(v["passed"], false);
    assert!(!String::from_utf8_lossy(&bad.stderr).is_empty());
}

#[test]
fn stats_on_generated_patch() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("p.json");
    assert!(run(&["gen", "--radius", "8", "--out", p.to_str().unwrap()]).status.success());
    let s = dir.path().join("s.json");
    let o = run(&["stats", p.to_str().unwrap(), "--out", s.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let v = json(&s);
    assert_eq!(v["bad_edges"], 0);
    assert!(v["star_classes"].as_u64().unwrap() <= 36);
    let layers = v["layers"].as_array().unwrap();
    assert_eq!(layers.len(), 6);
    for l in layers {
        assert!((l["ratio"].as_f64().unwrap() - 1.618_033_988_75).abs() < 1e-9);
    }
    let one = run(&["stats", p.to_str().unwrap(), "--axis", "3"]);
    let v: serde_json::Value = serde_json::from_slice(&one.stdout).unwrap();
    assert_eq!(v["layers"].as_array().unwrap().len(), 1);
}

#[test]
fn spectra_reports_roots() {
    let o = run(&["spectra"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(v.get("charpoly").is_some());
    assert!((v["perron_root_s"].as_f64().unwrap() - 8.1974).abs() < 1e-3);
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(run(&["gen", "--radius", "-1"]).status.code(), Some(2));
    assert_eq!(run(&["gen", "--shift", "1,2,3"]).status.code(), Some(2));
    let zero = run(&["gen", "--radius", "3", "--shift", "0,0,1,0,0,1,0,0,1"]);
    assert_eq!(zero.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&zero.stderr).contains("--shift"));
    assert_eq!(run(&["stats"]).status.code(), Some(2));
    assert_eq!(run(&["gen", "--threads", "0"]).status.code(), Some(2));
}

#[test]
fn io_errors_exit_3() {
    assert_eq!(run(&["stats", "/nonexistent/patch.json"]).status.code(), Some(3));
    assert_eq!(run(&["--config", "/nonexistent/q.toml", "verify"]).status.code(), Some(3));
}

#[test]
fn bad_patch_file_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("p.json");
    std::fs::write(&p, r#"{"shift":[[1,0,7],[1,0,11],[1,0,13]],"radius":1.0,"vertices":[[1,0,0,0,0,0]],"edges":[]}"#).unwrap();
    let o = run(&["stats", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn config_file_and_flag_precedence() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("q.toml");
    let out = dir.path().join("cfg.json");
    std::fs::write(&cfg, format!("radius = 4.0\nout = {:?}\n", out.to_str().unwrap())).unwrap();
    assert!(run(&["--config", cfg.to_str().unwrap(), "gen"]).status.success());
    assert_eq!(json(&out)["radius"], 4.0);

    let flag = dir.path().join("flag.json");
    assert!(run(&["--config", cfg.to_str().unwrap(), "gen", "--radius", "3", "--out", flag.to_str().unwrap()])
        .status
        .success());
    assert_eq!(json(&flag)["radius"], 3.0);

    std::fs::write(&cfg, "radius = 4.0\nbogus = 1\n").unwrap();
    assert_eq!(run(&["--config", cfg.to_str().unwrap(), "gen"]).status.code(), Some(2));
}
