use std::process::{Command, Output};

fn quartic(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_quartic")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn symbol_prints_unit() {
    let o = quartic(&["symbol", "--num", "2", "--den", "-1-2i"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "i\n");
    let o = quartic(&["symbol", "--num", "2", "--den", "-1-2i", "--fast"]);
    assert_eq!(stdout(&o), "i\n");
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(quartic(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(quartic(&["symbol", "--num", "2"]).status.code(), Some(2));
    assert_eq!(quartic(&["symbol", "--num", "2", "--den", "2"]).status.code(), Some(2));
    assert_eq!(quartic(&["lvalue", "--q", "13", "--a", "-1", "--b", "-2"]).status.code(), Some(2));
    assert_eq!(quartic(&["verify", "--suite", "nope"]).status.code(), Some(2));
}

#[test]
fn reciprocity_suite_passes() {
    let o = quartic(&["verify", "--suite", "reciprocity", "--max-norm", "1000"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["report"]["failures"], 0);
    assert!(v["report"]["checked"].as_u64().unwrap() > 100_000);
}

#[test]
fn reports_embed_config_with_sorted_keys() {
    let o = quartic(&["sieve", "--Q", "32", "--M", "64", "--trials", "3", "--seed", "11"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["config"]["command"], "sieve");
    assert_eq!(v["config"]["seed"], 11);
    assert_eq!(v["report"]["seed"], 11);
    let keys: Vec<&String> = v["report"].as_object().unwrap().keys().collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
    // key order in the text follows the same order
    let pos = |k: &str| text.find(&format!("\"{k}\"")).unwrap();
    assert!(pos("config") < pos("report"));
    assert!(pos("bound") < pos("family_size"));
}

#[test]
fn identical_configs_give_identical_bytes() {
    let args = ["moment", "--Q", "100"];
    let a = quartic(&args);
    let b = quartic(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let one = quartic(&["moment", "--Q", "100", "--threads", "1"]);
    let four = quartic(&["moment", "--Q", "100", "--threads", "4"]);
    let report = |o: &Output| serde_json::from_slice::<serde_json::Value>(&o.stdout).unwrap()["report"].to_string();
    assert_eq!(report(&one), report(&four));
    assert_eq!(report(&one), report(&a));
}

#[test]
fn cache_is_filled_and_reused() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("central.csv");
    let cache = cache.to_str().unwrap();
    let plain = quartic(&["moment", "--Q", "60"]);
    let first = quartic(&["moment", "--Q", "60", "--cache", cache]);
    assert_eq!(first.status.code(), Some(0));
    let text = std::fs::read_to_string(cache).unwrap();
    assert!(text.starts_with("# sha256="));
    let second = quartic(&["moment", "--Q", "60", "--cache", cache]);
    let report = |o: &Output| serde_json::from_slice::<serde_json::Value>(&o.stdout).unwrap()["report"].to_string();
    assert_eq!(report(&plain), report(&first));
    assert_eq!(report(&first), report(&second));
    // the cached values are what --csv shows
    let csv = quartic(&["moment", "--Q", "60", "--cache", cache, "--csv"]);
    assert_eq!(stdout(&csv), text.split_once('\n').unwrap().1);

    std::fs::write(cache, text.replacen("afe", "direct", 1)).unwrap();
    let corrupt = quartic(&["moment", "--Q", "60", "--cache", cache]);
    assert_eq!(corrupt.status.code(), Some(2));
}

#[test]
fn lvalue_methods_agree() {
    let get = |m: &str| {
        let o = quartic(&["lvalue", "--q", "13", "--a", "3", "--b", "2", "--method", m]);
        assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
        let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
        (v["report"]["value"][0].as_f64().unwrap(), v["report"]["value"][1].as_f64().unwrap())
    };
    let (a, b) = (get("afe"), get("direct"));
    assert!((a.0 - b.0).abs() < 1e-8 && (a.1 - b.1).abs() < 1e-8);
}

#[test]
fn enumerate_lists_generators() {
    let o = quartic(&["enumerate", "--max-q", "30"]);
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("q,a,b"));
    let rows: Vec<&str> = lines.collect();
    assert!(rows.iter().all(|r| r.split(',').count() == 3));
    assert!(rows.contains(&"5,-1,-2") || rows.contains(&"5,-1,2"));
    let count = quartic(&["enumerate", "--max-q", "30", "--count-only"]);
    let v: serde_json::Value = serde_json::from_slice(&count.stdout).unwrap();
    assert_eq!(v["report"]["count"], rows.len());
}

#[test]
fn other_commands_run() {
    for args in [
        vec!["gauss-sum", "--mod", "3+2i"],
        vec!["gauss-sum", "--mod", "3+2i", "--twist", "1+i"],
        vec!["gauss-average", "--l", "1", "--X", "200", "--restricted"],
        vec!["nonvanish", "--Q", "50"],
        vec!["second-moment", "--Q", "40", "--t", "1"],
        vec!["sieve", "--family", "quadratic", "--M", "32", "--N", "32", "--trials", "2"],
        vec!["constants", "--prime-bound", "10000", "--gaussian-prime-bound", "10000", "--dirichlet-terms", "10000"],
    ] {
        let o = quartic(&args);
        assert_eq!(o.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
        let _: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    }
    let g: serde_json::Value = serde_json::from_slice(&quartic(&["gauss-sum", "--mod", "3+2i"]).stdout).unwrap();
    assert!((g["report"]["abs"].as_f64().unwrap() - 13f64.sqrt()).abs() < 1e-9);
}
