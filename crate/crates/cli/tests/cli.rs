use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn alvero(args: &[&str], envs: &[(&str, &str)], cwd: &Path) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_alvero"));
    cmd.args(args).current_dir(cwd);
    for var in ["ALVERO_CONFIG", "ALVERO_BUDGET", "ALVERO_CACHE_DIR"] {
        cmd.env_remove(var);
    }
    for (k, v) in envs {
        cmd.env(k, v);
    }
    cmd.output().expect("binary runs")
}

fn run(args: &[&str]) -> Output {
    let dir = tempfile::tempdir().unwrap();
    alvero(args, &[], dir.path())
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("bad JSON ({e}): {}", stdout(o)))
}

fn without_timings(mut v: Value) -> Value {
    v.as_object_mut().unwrap().remove("timings");
    v
}

fn schema() -> jsonschema::Validator {
    let text = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/schema/report.schema.json")).unwrap();
    jsonschema::validator_for(&serde_json::from_str(&text).unwrap()).unwrap()
}

#[test]
fn resultants_output() {
    let o = run(&["resultants", "--degree", "2"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "R1 = -a1^2\n");
    let o = run(&["resultants", "--degree", "1"]);
    assert_eq!((code(&o), stdout(&o)), (0, String::new()));
    assert_eq!(code(&run(&["resultants", "--degree", "0"])), 2);
    assert_eq!(code(&run(&["resultants", "--degree", "9"])), 2);
    let v = json(&run(&["resultants", "--degree", "3", "--format", "json"]));
    assert_eq!(v["details"]["resultants"].as_array().unwrap().len(), 2);
    assert_eq!(v["details"]["terms"].as_array().unwrap().len(), 2);
    let v = json(&run(&["resultants", "--degree", "2", "--format", "json"]));
    assert_eq!(v["details"]["terms"], serde_json::json!([[["-1", [2]]]]));
}

#[test]
fn verify_and_theorem_pass_at_small_degree() {
    for args in [
        vec!["verify", "--degree", "3"],
        vec!["verify", "--degree", "4", "--order", "lex"],
        vec!["theorem", "--degree", "3"],
        vec!["theorem", "--degree", "4"],
    ] {
        let o = run(&args);
        assert_eq!(code(&o), 0, "{args:?}: {}", stdout(&o));
        assert!(stdout(&o).ends_with("PASS\n"), "{args:?}");
    }
    let v = json(&run(&["theorem", "--degree", "2", "--format", "json"]));
    let idx: Vec<u64> = v["details"]["checks"].as_array().unwrap().iter().map(|c| c["index"].as_u64().unwrap()).collect();
    assert_eq!(idx, vec![1]);
    let v = json(&run(&["verify", "--degree", "2", "--format", "json"]));
    assert_eq!(v["exponents"], serde_json::json!([2]));
}

#[test]
fn budget_exhaustion_exits_3() {
    let o = run(&["verify", "--degree", "8"]);
    assert_eq!(code(&o), 3);
    assert!(String::from_utf8_lossy(&o.stderr).contains("budget"));
}

#[test]
fn bad_arguments_exit_2() {
    assert_eq!(code(&run(&["ace", "--degree", "5", "--level", "0"])), 2);
    assert_eq!(code(&run(&["ace", "--degree", "3", "--level", "2"])), 2);
    assert_eq!(code(&run(&["verify", "--degree", "3", "--order", "weird"])), 2);
    assert_eq!(code(&run(&["verify", "--degree", "3", "--jobs", "0"])), 2);
    assert_eq!(code(&run(&["regseq", "--degree", "3", "--permutation", "1,1"])), 2);
    assert_eq!(code(&run(&["frobnicate"])), 2);
}

#[test]
fn precedence_of_flags_env_and_file() {
    let dir = tempfile::tempdir().unwrap();
    let conf = dir.path().join("alvero.conf");
    std::fs::write(&conf, "# tiny budget\nbudget = 10\ncache_dir = none\n").unwrap();
    let conf = conf.to_str().unwrap();
    let args = ["verify", "--degree", "3"];
    assert_eq!(code(&alvero(&args, &[("ALVERO_CONFIG", conf)], dir.path())), 3);
    assert_eq!(code(&alvero(&args, &[("ALVERO_CONFIG", conf), ("ALVERO_BUDGET", "1000000")], dir.path())), 0);
    let flagged = ["verify", "--degree", "3", "--budget", "10"];
    assert_eq!(code(&alvero(&flagged, &[("ALVERO_CONFIG", conf), ("ALVERO_BUDGET", "1000000")], dir.path())), 3);
    let raised = ["verify", "--degree", "3", "--budget", "1000000", "--config", conf];
    assert_eq!(code(&alvero(&raised, &[], dir.path())), 0);
    std::fs::write(dir.path().join("bad.conf"), "colour = red\n").unwrap();
    let bad = dir.path().join("bad.conf");
    assert_eq!(code(&alvero(&["verify", "--degree", "2", "--config", bad.to_str().unwrap()], &[], dir.path())), 2);
}

#[test]
fn cache_is_only_an_optimisation() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("gb");
    let env = [("ALVERO_CACHE_DIR", cache.to_str().unwrap())];
    let args = ["verify", "--degree", "4", "--format", "json"];
    let cold = json(&alvero(&args, &env, dir.path()));
    assert!(std::fs::read_dir(&cache).unwrap().count() > 0);
    let warm = json(&alvero(&args, &env, dir.path()));
    let uncached = json(&alvero(&["verify", "--degree", "4", "--format", "json", "--no-cache"], &[], dir.path()));
    for key in ["verdict", "exponents"] {
        assert_eq!(cold[key], uncached[key]);
        assert_eq!(warm[key], uncached[key]);
    }
    assert_eq!(warm["details"]["pure_powers"], uncached["details"]["pure_powers"]);
    assert!(!dir.path().join(".alvero-cache").exists());
    alvero(&["theorem", "--degree", "3"], &[], dir.path());
    assert!(dir.path().join(".alvero-cache").exists());
}

#[test]
fn ace_json_is_deterministic() {
    let args = ["ace", "--degree", "5", "--level", "4", "--seed", "7"];
    let a = run(&args);
    assert_eq!(code(&a), 0, "{}", stdout(&a));
    let a = json(&a);
    assert!(a["details"]["record"]["residual"].as_f64().unwrap() < 1e-9);
    assert_eq!(a["details"]["chain"]["verdict"], Value::Bool(true));
    let b = json(&run(&args));
    assert_eq!(without_timings(a.clone()), without_timings(b));
    let c = json(&run(&["ace", "--degree", "5", "--level", "4", "--seed", "7", "--jobs", "1"]));
    assert_eq!(without_timings(a), without_timings(c));
}

#[test]
fn interlace_runs() {
    let o = run(&["interlace", "--count", "0"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("0/0 pass"));
    let o = run(&["interlace", "--count", "500", "--seed", "1"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("500/500 pass"));
    let a = json(&run(&["interlace", "--count", "40", "--format", "json"]));
    let b = json(&run(&["interlace", "--count", "40", "--format", "json"]));
    assert_eq!(without_timings(a), without_timings(b));
}

#[test]
fn regseq_degree_three() {
    let o = run(&["regseq", "--degree", "3"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    assert!(text.contains("(R1, R2): dimensions (1, 0) PASS"));
    assert!(text.contains("(R2, R1): dimensions (1, 0) PASS"));
    let o = run(&["regseq", "--degree", "3", "--order", "lex", "--permutation", "2,1"]);
    assert_eq!(code(&o), 0);
}

#[test]
fn reports_match_the_schema() {
    let validator = schema();
    for args in [
        vec!["resultants", "--degree", "3", "--format", "json"],
        vec!["verify", "--degree", "3", "--format", "json", "--certificates"],
        vec!["theorem", "--degree", "3", "--format", "json"],
        vec!["ace", "--degree", "4", "--level", "3"],
        vec!["interlace", "--count", "10", "--format", "json"],
        vec!["regseq", "--degree", "3", "--format", "json"],
    ] {
        let v = json(&run(&args));
        let errors: Vec<String> = validator.iter_errors(&v).map(|e| e.to_string()).collect();
        assert!(errors.is_empty(), "{args:?}: {errors:?}");
        assert_eq!(v["schema_version"], 1);
    }
}
