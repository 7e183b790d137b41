//! Coarse golden runs, one per scenario. Headline numbers must match within
//! 1e-9 relative (1e-12 absolute near zero) and verdicts exactly. `AMBIENTFLOW_BLESS=1` rewrites them.

use ambientflow::cli::config::ScenarioConfig;
use ambientflow::cli::json::to_json_17;
use ambientflow::cli::scenario::run_scenario;
use serde_json::{json, Value};
use std::path::PathBuf;

const SCENARIOS: [&str; 6] = ["baseline-circle", "killing-equivalence", "loss-of-convexity", "round-point", "identity-audit", "constants"];

fn close(a: &Value, b: &Value, path: &str, diffs: &mut Vec<String>) {
    match (a, b) {
        (Value::Number(x), Value::Number(y)) => {
            let (x, y) = (x.as_f64().unwrap(), y.as_f64().unwrap());
            if (x - y).abs() > 1e-9 * x.abs().max(y.abs()) + 1e-12 {
                diffs.push(format!("{path}: {x} vs {y}"));
            }
        }
        (Value::Object(x), Value::Object(y)) => {
            if x.keys().ne(y.keys()) {
                diffs.push(format!("{path}: keys {:?} vs {:?}", x.keys().collect::<Vec<_>>(), y.keys().collect::<Vec<_>>()));
                return;
            }
            for (k, v) in x {
                close(v, &y[k], &format!("{path}.{k}"), diffs);
            }
        }
        (Value::Array(x), Value::Array(y)) if x.len() == y.len() => {
            for (i, (u, v)) in x.iter().zip(y).enumerate() {
                close(u, v, &format!("{path}[{i}]"), diffs);
            }
        }
        _ if a == b => {}
        _ => diffs.push(format!("{path}: {a} vs {b}")),
    }
}

#[test]
fn scenarios_match_golden_manifests() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden");
    let bless = std::env::var_os("AMBIENTFLOW_BLESS").is_some();
    let tmp = tempfile::tempdir().unwrap();
    let mut failures = Vec::new();
    for name in SCENARIOS {
        let cfg = ScenarioConfig::load(&dir.join(format!("{name}.toml"))).unwrap();
        let m = run_scenario(&cfg, &tmp.path().join(name)).unwrap();
        assert!(m.passed(), "{name}: failed verdicts {:?}", m.failed_verdicts());
        let got = json!({"scenario": m.scenario, "headline": m.headline, "verdicts": m.verdicts});
        let path = dir.join(format!("{name}.json"));
        if bless {
            std::fs::write(&path, to_json_17(&got).unwrap() + "\n").unwrap();
            continue;
        }
        let want: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
        let got: Value = serde_json::from_str(&to_json_17(&got).unwrap()).unwrap();
        let mut diffs = Vec::new();
        close(&got, &want, name, &mut diffs);
        failures.extend(diffs);
    }
    assert!(failures.is_empty(), "golden mismatches:\n{}", failures.join("\n"));
}
