use std::process::{Command, Output};

use serde_json::Value;
use tabint::catalog::{make_logic, LogicName};
use tabint::interpolation::strongest_implicate;
use tabint::kripke::member_of_logic;
use tabint::{parse_formula, Formula};

fn tabint(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tabint"))
        .args(args)
        .env_remove("TABINT_BUDGET")
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> (Value, i32) {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let out = tabint(&all);
    let v = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("{e}: {}{}", String::from_utf8_lossy(&out.stdout), String::from_utf8_lossy(&out.stderr))
    });
    (v, out.status.code().unwrap())
}

fn formula_at(v: &Value, key: &str) -> Formula {
    let f = &v[key];
    let parsed = parse_formula(f["formula"].as_str().unwrap()).unwrap();
    assert_eq!(f["dag_size"].as_u64().unwrap() as usize, parsed.dag_size());
    assert_eq!(f["tree_size"].as_u64().unwrap(), parsed.tree_size());
    parsed
}

const EX3: &str = "<> (p & q) & <>(p & ~q)";

#[test]
fn implicate_example() {
    let (v, code) = json(&["implicate", "--logic", "L13", "--phi", EX3, "--sigma", "p", "--verify"]);
    assert_eq!(code, 0);
    assert_eq!(v["verification"]["holds"], true);
    assert_eq!(v["time_ms"], Value::Null);
    let chi = formula_at(&v, "implicate");
    let l13 = make_logic(LogicName::L13).unwrap();
    assert!(member_of_logic(&l13, &chi.iff(&parse_formula("<>p").unwrap())).unwrap());
    let direct = strongest_implicate(&l13, &parse_formula(EX3).unwrap(), &tabint::formula::signature(["p"])).unwrap();
    assert_eq!(chi, direct);
}

#[test]
fn implicate_trivial_and_usage() {
    let (v, code) = json(&["implicate", "--logic", "EQ2", "--phi", "p", "--sigma", "p"]);
    assert_eq!(code, 0);
    let eq2 = make_logic(LogicName::Eq(2)).unwrap();
    assert!(member_of_logic(&eq2, &formula_at(&v, "implicate").iff(&Formula::var("p"))).unwrap());

    let out = tabint(&["implicate", "--logic", "EQ2", "--phi", "p"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("--sigma"));
    let out = tabint(&["implicate", "--logic", "EQ2", "--phi", "p &", "--sigma", "p"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("--phi: syntax error at offset"));
    assert_eq!(tabint(&["implicate", "--logic", "NOPE", "--phi", "p", "--sigma", "p"]).status.code(), Some(1));
    assert_eq!(tabint(&["--help"]).status.code(), Some(0));
}

#[test]
fn uniform_refuses_without_cip() {
    let (v, code) = json(&["uniform", "--logic", "L13", "--phi", EX3, "--sigma", "p"]);
    assert_eq!(code, 3);
    assert!(v["cip_witness_left"].is_object());
    let (v, code) = json(&["uniform", "--logic", "EQ2", "--phi", "<>p & q", "--sigma", "p", "--verify"]);
    assert_eq!(code, 0);
    assert_eq!(v["verification"]["holds"], true);
}

#[test]
fn cip_table_entries() {
    let (v, code) = json(&["cip", "--logic", "EQ3"]);
    assert_eq!(code, 0);
    assert_eq!(v["cip"], false);
    assert!(v["witness_left"]["valuation"].is_object());
    let (v, _) = json(&["cip", "--logic", "LO2"]);
    assert_eq!(v["cip"], true);
}

#[test]
fn craig_paths() {
    let (v, code) = json(&["craig", "--logic", "L13", "--phi", EX3, "--psi", "<>(~p & r) -> [](~p -> r)"]);
    assert_eq!(code, 3);
    assert!(v["error"].as_str().unwrap().contains("Craig interpolation"));
    let (v, code) = json(&["craig", "--logic", "EQ2", "--phi", "p & q", "--psi", "p | r", "--verify"]);
    assert_eq!(code, 0);
    assert_eq!(v["verification"]["holds"], true);
    assert!(formula_at(&v, "interpolant").signature().iter().all(|a| a.to_string() == "p"));
    let (v, code) = json(&["craig", "--logic", "EQ2", "--phi", "p", "--psi", "q"]);
    assert_eq!(code, 2);
    assert!(v["countermodel"].is_object());
}

#[test]
fn witnesses() {
    let (v, code) = json(&["witness", "craig", "--n", "1"]);
    assert_eq!(code, 0);
    for key in ["phi", "psi", "interpolant"] {
        formula_at(&v, key);
    }
    let (v, _) = json(&["witness", "implicate", "--n", "3"]);
    assert_eq!(v["chi_disjuncts"], 8);
    assert_eq!(v["depth"], 3);
    let (v, _) = json(&["witness", "implicate", "--n", "1", "--growth", "0,2", "--depth", "1"]);
    assert_eq!(v["depth"], 1);
    let (v, code) = json(&["witness", "nocip", "--n", "1"]);
    assert_eq!(code, 0);
    assert!(formula_at(&v, "phi").signature().iter().any(|a| a.to_string() == "b_r"));
    let out = tabint(&["witness", "nocip", "--phi", "p", "--psi", "a"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn translations() {
    let (v, _) = json(&["translate", "forward", "--logic", "L13", "--phi", "<>p"]);
    let t = formula_at(&v, "translation");
    assert!(t.is_propositional());
    let (v, _) = json(&["translate", "forward", "--logic", "L13", "--phi", "<>p", "--frame", "fork3"]);
    assert_eq!(formula_at(&v, "translation"), parse_formula("~(~p@1 & ~p@2 & ~p@3)").unwrap());
    let (v, code) = json(&["translate", "backward", "--logic", "L13", "--xi", "p@1 | p@2", "--sigma", "p"]);
    assert_eq!(code, 0);
    let l13 = make_logic(LogicName::L13).unwrap();
    assert!(member_of_logic(&l13, &formula_at(&v, "modal").iff(&parse_formula("<>p").unwrap())).unwrap());
}

#[test]
fn alt1_and_validate() {
    let (v, code) = json(&["alt1", "--phi", "[]q & p", "--sigma", "p"]);
    assert_eq!(code, 0);
    assert_eq!(v["verification"]["holds"], true);
    assert_eq!(v["checked_chain_lengths"], 3);
    let (v, code) = json(&["validate", "--logic", "EQ2", "--phi", "[]p -> p"]);
    assert_eq!((code, &v["valid"]), (0, &Value::Bool(true)));
    let (v, code) = json(&["validate", "--logic", "LO2", "--phi", "[]p -> p"]);
    assert_eq!((code, &v["valid"]), (2, &Value::Bool(false)));
}

#[test]
fn files_and_bisim() {
    let dir = tempfile::tempdir().unwrap();
    let logic = dir.path().join("l.json");
    std::fs::write(
        &logic,
        r#"{"name":"Fork2","frames":[{"worlds":["0","1","2"],"edges":[["0","1"],["0","2"]],"root":"0"}]}"#,
    )
    .unwrap();
    let (v, code) = json(&["cip", "--logic", logic.to_str().unwrap()]);
    assert_eq!((code, &v["logic"]), (0, &Value::String("Fork2".into())));

    let left = dir.path().join("a.json");
    let right = dir.path().join("b.json");
    std::fs::write(&left, r#"{"worlds":["0","1"],"edges":[["0","1"]],"root":"0","valuation":{"1":["p"]}}"#).unwrap();
    std::fs::write(
        &right,
        r#"{"worlds":["0","1","2"],"edges":[["0","1"],["0","2"]],"root":"0","valuation":{"1":["p"],"2":["p","q"]}}"#,
    )
    .unwrap();
    let args = ["bisim", "--left", left.to_str().unwrap(), "--right", right.to_str().unwrap()];
    let (v, _) = json(&[&args[..], &["--sigma", "p"]].concat());
    assert_eq!(v["bisimilar"], true);
    assert_eq!(v["relation"].as_array().unwrap().len(), 3);
    let (v, _) = json(&args);
    assert_eq!(v["bisimilar"], false);

    let out_path = dir.path().join("r.json");
    let out = tabint(&["cip", "--logic", "EQ1", "--format", "json", "--out", out_path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&out_path).unwrap()).unwrap();
    assert_eq!(v["cip"], true);
}

#[test]
fn budgets_and_timing() {
    let out = Command::new(env!("CARGO_BIN_EXE_tabint"))
        .args(["implicate", "--logic", "L13", "--phi", EX3, "--sigma", "p", "--verify"])
        .env("TABINT_BUDGET", "4")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("budget exceeded"));
    assert_eq!(tabint(&["cip", "--logic", "EQ1", "--budget-valuations", "0"]).status.code(), Some(1));
    let (v, _) = json(&["cip", "--logic", "EQ1", "--timing"]);
    assert!(v["time_ms"].is_number());
}

#[test]
fn deterministic_reports() {
    let args = ["implicate", "--logic", "EQ2", "--phi", "<>p & q", "--sigma", "p", "--format", "json"];
    assert_eq!(tabint(&args).stdout, tabint(&args).stdout);
    let args = ["cip", "--logic", "L13"];
    assert_eq!(tabint(&args).stdout, tabint(&args).stdout);
}
