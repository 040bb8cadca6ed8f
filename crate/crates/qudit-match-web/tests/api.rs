use qudit_match_web::{circuit_json, match_json, sweep_json, MAX_DEMO_TEXT};
use serde_json::Value;

fn parse(s: &str) -> Value {
    serde_json::from_str(s).unwrap()
}

#[test]
fn match_view_has_distribution() {
    let v = parse(&match_json("10111010", "11101", -1).unwrap());
    assert_eq!(v["k"], 4);
    assert_eq!(v["top"], 2);
    assert_eq!(v["classical"], serde_json::json!([2]));
    let probs: Vec<f64> = v["probabilities"]
        .as_array()
        .unwrap()
        .iter()
        .map(|p| p.as_f64().unwrap())
        .collect();
    assert_eq!(probs.len(), 4);
    assert!((probs[2] - 1.0).abs() < 1e-9);
    let v = parse(&match_json(" 10111010 ", "11101", 0).unwrap());
    assert_eq!(v["iterations"], 0);
}

#[test]
fn match_view_rejects_bad_input() {
    assert!(match_json("10a", "1", -1).is_err());
    assert!(match_json(&"0".repeat(MAX_DEMO_TEXT + 1), "1", -1).is_err());
}

#[test]
fn sweep_view_columns() {
    let v = parse(&sweep_json(0.05, 20, "uniform").unwrap());
    assert_eq!(v["epsilon"].as_array().unwrap().len(), 20);
    assert_eq!(v["proposed"][0], 1.0);
    assert_eq!(v["mode"], "uniform");
    assert!(sweep_json(0.05, 20, "pink").is_err());
    assert!(sweep_json(2.0, 20, "uniform").is_err());
    let v = parse(&sweep_json(0.01, 1, "dimension-penalty").unwrap());
    assert_eq!(v["epsilon"].as_array().unwrap().len(), 2);
}

#[test]
fn circuit_view_layers_cover_ops() {
    let v = parse(&circuit_json("mct", 8).unwrap());
    let n: usize = v["layers"]
        .as_array()
        .unwrap()
        .iter()
        .map(|l| l.as_array().unwrap().len())
        .sum();
    assert_eq!(n, 13);
    assert_eq!(v["cost"]["total"], 13);
    assert_eq!(v["dims"].as_array().unwrap().len(), 8);
    assert!(v["dump"].as_str().unwrap().starts_with("dims"));
    assert!(circuit_json("fredkin-ct", 0).is_ok());
    assert!(circuit_json("mct", 40).is_err());
    assert!(circuit_json("nope", 3).is_err());
}
