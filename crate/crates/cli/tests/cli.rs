use clap::Parser;
use schwarz_cli::{run, Cli};
use serde_json::Value;

fn problems() -> std::path::PathBuf {
    [env!("CARGO_MANIFEST_DIR"), "..", "..", "problems"].iter().collect()
}

fn schwarz(args: &[&str]) -> (i32, String, String) {
    let cli = Cli::try_parse_from(std::iter::once("schwarz").chain(args.iter().copied())).unwrap();
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run(&cli, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn problem(name: &str) -> String {
    problems().join(name).to_string_lossy().into_owned()
}

#[test]
fn construct_prints_the_equation() {
    let (code, out, _) = schwarz(&["construct", &problem("class3.toml")]);
    assert_eq!(code, 0);
    assert!(out.contains("c0 = (195/2744)/(z^2*(z - 1))"), "{out}");
    assert!(out.contains("\\frac{195}{2744}\\frac{1}{z^2(z-1)}y"), "{out}");
}

#[test]
fn saved_equation_analyzes_like_the_problem() {
    let dir = tempfile::tempdir().unwrap();
    let saved = dir.path().join("hurwitz.json");
    let saved = saved.to_str().unwrap();
    let (code, _, _) = schwarz(&["construct", &problem("hurwitz.toml"), "--json", saved]);
    assert_eq!(code, 0);
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(saved).unwrap()).unwrap();
    assert_eq!(doc["format"], "schwarz-equation/1");

    let (code, direct, _) = schwarz(&["analyze", &problem("hurwitz.toml"), "--json", "-"]);
    assert_eq!(code, 0);
    let (code, reloaded, _) = schwarz(&["analyze", saved, "--json", "-"]);
    assert_eq!(code, 0);
    let direct: Value = serde_json::from_str(&direct).unwrap();
    let reloaded: Value = serde_json::from_str(&reloaded).unwrap();
    assert_eq!(direct, reloaded);
    assert_eq!(direct["euler_characteristic"], serde_json::json!(["-4", "1"]));
    assert_eq!(direct["genus"], 3);
    assert_eq!(direct["degree"], serde_json::json!(["4", "1"]));
}

#[test]
fn conventions_are_selectable() {
    let hurwitz = problem("hurwitz.toml");
    let (_, out, _) = schwarz(&["analyze", &hurwitz, "--euler-convention", "printed"]);
    assert!(out.contains("(printed convention, |G| = 168): -676"), "{out}");
    let (_, out, _) = schwarz(&["analyze", &hurwitz, "--degree-scale", "genus"]);
    assert!(out.contains("Degree (scale genus, m = 1): 1/14"), "{out}");
}

#[test]
fn verify_reports_the_residual() {
    let (code, out, _) = schwarz(&["verify", &problem("class4_2.toml"), "--json", "-"]);
    assert_eq!(code, 0);
    let doc: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(doc["verified"], true);
    assert!(doc["residual"].as_f64().unwrap() < 1e-6);
    assert_eq!(doc["seed"], 168);
    assert_eq!(doc["path"].as_array().unwrap().len(), 4);
}

#[test]
fn preset_lists_the_invariants() {
    let (code, out, _) = schwarz(&["preset", "klein168", "--json", "-"]);
    assert_eq!(code, 0);
    let doc: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(doc["order"], 168);
    assert_eq!(doc["degrees"], serde_json::json!([4, 6, 14, 21]));
    assert_eq!(doc["syzygies"][0]["terms"], 10);
    assert_eq!(schwarz(&["preset", "nope"]).0, 2);
}

#[test]
fn exit_codes_follow_the_error_class() {
    let dir = tempfile::tempdir().unwrap();
    let write = |name: &str, text: &str| {
        let p = dir.path().join(name);
        std::fs::write(&p, text).unwrap();
        p.to_string_lossy().into_owned()
    };
    let (code, _, err) = schwarz(&["construct", &write("syntax.toml", "group = \"klein168\"\nf4 = \"1/0\"\n")]);
    assert_eq!(code, 2);
    assert!(err.contains("line 2, column 8"), "{err}");
    let (code, _, _) = schwarz(&["construct", &write("missing.toml", "group = \"klein168\"\nf4 = \"1/z\"\n")]);
    assert_eq!(code, 2);
    let constant = "group = \"klein168\"\nf4 = \"1\"\nf6 = \"2\"\nf14 = \"3\"\n";
    let (code, _, err) = schwarz(&["construct", &write("constant.toml", constant)]);
    assert_eq!(code, 3, "{err}");
    let (code, _, _) = schwarz(&["construct", "/nonexistent/problem.toml"]);
    assert_eq!(code, 2);
}

#[test]
fn parametric_equations_need_a_value_for_analysis() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("pencil.toml");
    // A pencil member without [values]: the construction is over Q(mu).
    let text = "group = \"klein168\"\nparameters = [\"mu\"]\nf4 = \"1/z\"\nf6 = \"0\"\nf14 = \"16*mu/z^3\"\n";
    std::fs::write(&p, text).unwrap();
    let p = p.to_str().unwrap();
    let (code, out, _) = schwarz(&["construct", p]);
    assert_eq!(code, 0, "{out}");
    let (code, _, err) = schwarz(&["analyze", p]);
    assert_eq!(code, 4, "{err}");
}
