use barycentric::cli::run;
use serde_json::{json, Value};

const CHAIN: &str = r#"{"elements":["a","b"],"leq":[["a","b"]]}"#;
const DIAMOND: &str = r#"{"kind":"semilattice","space":{"elements":["bot","a","b","top"],"leq":[["bot","a"],["bot","b"],["a","top"],["b","top"]]}}"#;

fn call(args: &[&str]) -> (i32, Value, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("barycentric").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    let text = String::from_utf8(out).unwrap();
    let v = serde_json::from_str(&text).unwrap_or(Value::Null);
    (code, v, String::from_utf8(err).unwrap())
}

#[test]
fn order_related_with_transport() {
    let (code, v, _) = call(&["order", "--space", CHAIN, "--mu", r#"{"masses":{"a":"1"}}"#, "--nu", r#"{"masses":{"b":"1"}}"#]);
    assert_eq!(code, 0);
    assert_eq!(v, json!({"related": true, "transport": {"a": {"b": "1"}}}));
}

#[test]
fn order_unrelated() {
    let (code, v, _) = call(&["order", "--space", CHAIN, "--mu", r#"{"masses":{"b":"1"}}"#, "--nu", r#"{"masses":{"a":"1"}}"#]);
    assert_eq!(code, 0);
    assert_eq!(v, json!({"related": false}));
}

#[test]
fn inline_space_inside_valuation() {
    let mu = format!(r#"{{"space":{CHAIN},"masses":{{"a":"1/2"}}}}"#);
    let nu = format!(r#"{{"space":{CHAIN},"masses":{{"a":"1/2","b":"1/4"}}}}"#);
    let (code, v, _) = call(&["order", "--mu", &mu, "--nu", &nu]);
    assert_eq!(code, 0);
    assert_eq!(v["related"], json!(true));
}

#[test]
fn split_chain() {
    let (code, v, _) = call(&[
        "split", "--space", CHAIN, "--mu", r#"{"masses":{"a":"1/2"}}"#, "--nu", r#"{"masses":{"b":"1"}}"#,
        "--opens", r#"[["b"]]"#,
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["nu1"], json!({"masses": {"b": "1/2"}}));
    assert_eq!(v["nu2"], json!({"masses": {"b": "1/2"}}));
    assert_eq!(v["lattice"], json!([[], ["b"], ["a", "b"]]));
}

#[test]
fn split_precondition_is_a_domain_error() {
    let (code, v, err) = call(&[
        "split", "--space", CHAIN, "--mu", r#"{"masses":{"b":"1"}}"#, "--nu", r#"{"masses":{"a":"1"}}"#,
        "--opens", r#"[["b"]]"#,
    ]);
    assert_eq!(code, 1);
    assert!(v["error"].as_str().unwrap().contains("precondition"));
    assert!(err.starts_with("error:"));
}

#[test]
fn split2_chain() {
    let (code, v, _) = call(&[
        "split2", "--space", CHAIN, "--mu", r#"{"masses":{"a":"1/2"}}"#, "--nu", r#"{"masses":{"a":"1/2"}}"#,
        "--varpi", r#"{"masses":{"b":"2"}}"#, "--opens", r#"{"opens":[["b"]]}"#,
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["mu_prime"], json!({"masses": {"b": "1/2"}}));
    assert_eq!(v["nu_prime"], json!({"masses": {"b": "1/2"}}));
}

#[test]
fn witness_totals() {
    let (code, v, _) = call(&[
        "witness", "--space", CHAIN, "--mu", r#"{"masses":{"a":"1"}}"#, "--nu", r#"{"masses":{"b":"1"}}"#,
        "--varpi", r#"{"masses":{"b":"1"}}"#, "--opens", r#"[["b"]]"#, "--a", "1/2", "--c", "1/2",
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["mu_prime"], json!({"masses": {"b": "1/4"}}));
    assert_eq!(v["nu_prime"], json!({"masses": {"b": "1/4"}}));
}

#[test]
fn witness_rejects_boundary_coefficients() {
    let (code, _, _) = call(&[
        "witness", "--space", CHAIN, "--mu", r#"{"masses":{"a":"1"}}"#, "--nu", r#"{"masses":{"b":"1"}}"#,
        "--varpi", r#"{"masses":{"b":"1"}}"#, "--opens", r#"[["b"]]"#, "--a", "1", "--c", "1/2",
    ]);
    assert_eq!(code, 1);
}

#[test]
fn barycenter_on_diamond_is_the_join() {
    let w = r#"{"points":[{"weight":"1/2","x":"a"},{"weight":"1/2","x":"b"}]}"#;
    let (code, v, _) = call(&["barycenter", "--instance", DIAMOND, "--valuation", w]);
    assert_eq!(code, 0);
    assert_eq!(v, json!({"point": "top"}));
    let (code, v, _) = call(&["smyth", "--instance", DIAMOND, "--op", "barycenter", "--valuation", w]);
    assert_eq!(code, 0);
    assert_eq!(v, json!({"point": "top"}));
}

#[test]
fn subprobability_barycenter_needs_a_pointed_instance() {
    let w = r#"{"points":[{"weight":"1/2","x":"0"}]}"#;
    let (code, v, _) = call(&["barycenter", "--instance", r#"{"kind":"bminus"}"#, "--valuation", w, "--sub"]);
    assert_eq!(code, 1);
    assert!(v["error"].is_string());
}

#[test]
fn choquet_verify_and_decimal() {
    let inst = r#"{"kind":"rational_convex","dim":2}"#;
    let w = r#"{"points":[{"weight":"1/3","x":["1","0"]},{"weight":"2/3","x":["0","1"]}]}"#;
    let (code, v, _) = call(&["choquet-verify", "--instance", inst, "--valuation", w, "--point", r#"["1/3","2/3"]"#]);
    assert_eq!(code, 0);
    assert_eq!(v, json!({"barycenter": true}));
    let (_, v, _) = call(&["choquet-verify", "--instance", inst, "--valuation", w, "--point", r#"["1/2","1/2"]"#]);
    assert_eq!(v, json!({"barycenter": false}));
    let (code, v, _) = call(&["--decimal", "barycenter", "--instance", inst, "--valuation", w]);
    assert_eq!(code, 0);
    assert_eq!(v["point"], json!(["1/3", "2/3"]));
    assert!(v["approximate_non_authoritative"].is_object());
}

#[test]
fn conify_add_on_kp() {
    let (code, v, _) = call(&[
        "conify", "--instance", r#"{"kind":"kp"}"#, "--op", "add", "--u", r#"{"r":"1","x":{"lo":"-inf","hi":"1/2"}}"#,
        "--v", r#"{"r":"1","x":{"lo":"0","hi":"1"}}"#,
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["result"], json!({"r": "2", "x": {"lo": "-inf", "hi": "3/4"}}));
}

#[test]
fn telescope_identifies_kp_pair() {
    let (code, v, _) = call(&[
        "telescope", "--instance", r#"{"kind":"kp"}"#, "--op", "equiv", "--u", r#"{"n":0,"x":{"lo":"0","hi":"1"}}"#,
        "--v", r#"{"n":0,"x":{"lo":"-inf","hi":"1"}}"#,
    ]);
    assert_eq!(code, 0);
    assert_eq!(v, json!({"equiv": true}));
}

#[test]
fn axioms_pass_on_kp() {
    let (code, v, _) = call(&["axioms", "--instance", r#"{"kind":"kp"}"#]);
    assert_eq!(code, 0);
    assert_eq!(v["pass"], json!(true));
    assert!(v["checked"].as_u64().unwrap() > 0);
}

#[test]
fn sandwich_on_diamond_is_constant() {
    let (code, v, _) = call(&[
        "sandwich", "--instance", DIAMOND, "--q", r#"{"values":{"bot":"0","a":"1/2","b":"0","top":"1/2"}}"#,
        "--p", r#"{"values":{"bot":"2","a":"1","b":"1","top":"1"}}"#,
    ]);
    assert_eq!(code, 0);
    let vals = v["h"]["values"].as_object().unwrap();
    let first = &vals["bot"];
    assert!(vals.values().all(|x| x == first));
}

#[test]
fn lattice_lists_crescents() {
    let (code, v, _) = call(&["lattice", "--space", CHAIN, "--opens", r#"[["b"]]"#]);
    assert_eq!(code, 0);
    assert_eq!(v["lattice"], json!([[], ["b"], ["a", "b"]]));
    assert_eq!(v["crescents"].as_array().unwrap().len(), 2);
}

#[test]
fn reads_inputs_from_files() {
    let dir = std::env::temp_dir().join(format!("barycentric-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let sp = dir.join("space.json");
    std::fs::write(&sp, CHAIN).unwrap();
    let (code, v, _) = call(&[
        "order", "--space", sp.to_str().unwrap(), "--mu", r#"{"masses":{"a":"1"}}"#, "--nu", r#"{"masses":{"b":"1"}}"#,
    ]);
    std::fs::remove_dir_all(&dir).unwrap();
    assert_eq!(code, 0);
    assert_eq!(v["related"], json!(true));
}

#[test]
fn parse_and_usage_errors_exit_2() {
    let (code, v, _) = call(&["order", "--space", CHAIN, "--mu", r#"{"masses":{"a":"x"}}"#, "--nu", r#"{"masses":{}}"#]);
    assert_eq!(code, 2);
    assert_eq!(v["error"], json!("parse error: not a rational: \"x\""));
    let (code, _, err) = call(&["bogus"]);
    assert_eq!(code, 2);
    assert!(err.contains("unrecognized subcommand"));
    let (code, _, _) = call(&["order", "--space", CHAIN]);
    assert_eq!(code, 2);
}

#[test]
fn unknown_point_is_reported() {
    let (code, v, _) = call(&["order", "--space", CHAIN, "--mu", r#"{"masses":{"z":"1"}}"#, "--nu", r#"{"masses":{}}"#]);
    assert_ne!(code, 0);
    assert!(v["error"].as_str().unwrap().contains('z'));
}

#[test]
fn output_is_byte_stable() {
    let args = [
        "split2", "--space", CHAIN, "--mu", r#"{"masses":{"a":"1/3"}}"#, "--nu", r#"{"masses":{"a":"1/5","b":"1/7"}}"#,
        "--varpi", r#"{"masses":{"a":"1/3","b":"3/2"}}"#, "--opens", r#"[["b"]]"#,
    ];
    let runs: Vec<Vec<u8>> = (0..3)
        .map(|_| {
            let mut out = Vec::new();
            let argv = std::iter::once("barycentric").chain(args.iter().copied());
            assert_eq!(run(argv, &mut out, &mut Vec::new()), 0);
            out
        })
        .collect();
    assert!(runs.windows(2).all(|w| w[0] == w[1]));
}
