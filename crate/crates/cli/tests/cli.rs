use monocms_cli::commands::{check, generate, solve, Algorithm, GenerateParams, Kind};
use monocms_cli::format::{InstanceFile, SolutionFile};
use monocms_core::rational::frac;
use std::path::Path;
use std::process::{Command, Output};

const CHAIN: &str = r#"{
  "objects": [
    {"id": "1", "weight": 1, "label": "b"},
    {"id": "2", "weight": "1", "label": "a"},
    {"id": "3", "weight": "1.0", "label": "b"}
  ],
  "object_order": {"kind": "pairs", "pairs": [["2", "1"], ["3", "2"]]},
  "label_order": {"kind": "total", "chain": ["b", "a"]}
}"#;

const MONOTONE_2D: &str = r#"{
  "objects": [
    {"id": "p", "weight": "0.5", "label": "lo"},
    {"id": "q", "weight": "3/2", "label": "mid"},
    {"id": "r", "weight": 2, "label": "hi"}
  ],
  "object_order": {"kind": "vectors", "vectors": [[0, "0"], [1, "1/2"], [2, 3]]},
  "label_order": {"kind": "realizer2", "chains": [["hi", "mid", "other", "lo"], ["hi", "other", "mid", "lo"]]}
}"#;

fn monocms(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_monocms"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn random_params(n: usize, dim: usize, seed: u64) -> GenerateParams {
    GenerateParams {
        kind: Kind::Random,
        n: Some(n),
        m: Some(3),
        dim,
        noise: 0.3,
        seed,
        cnf: None,
    }
}

#[test]
fn chain_example_flow_keeps_two() {
    let inst = InstanceFile::from_json(CHAIN)
        .unwrap()
        .to_instance()
        .unwrap();
    for algorithm in [Algorithm::Flow, Algorithm::Exact] {
        let s = solve(&inst, algorithm, &frac(1, 16)).unwrap();
        assert_eq!(s.kept_weight, "2");
        assert_eq!(s.kept.len() + s.removed.len(), 3);
    }
}

#[test]
fn check_reports_first_violation() {
    let inst = InstanceFile::from_json(CHAIN)
        .unwrap()
        .to_instance()
        .unwrap();
    assert_eq!(check(&inst, "1,2").unwrap(), Some(("2".into(), "1".into())));
    assert_eq!(check(&inst, "").unwrap(), None);
    assert_eq!(check(&inst, "1,3").unwrap(), None);
    assert!(check(&inst, "1,9").is_err());
}

#[test]
fn check_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let chain = write(dir.path(), "chain.json", CHAIN);
    let out = monocms(&["check", "-i", &chain, "--subset", "1,2"]);
    assert_ne!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("violation: 2 1"));
    assert_eq!(
        monocms(&["check", "-i", &chain, "--subset", ""])
            .status
            .code(),
        Some(0)
    );
    let monotone = write(dir.path(), "mono.json", MONOTONE_2D);
    assert_eq!(
        monocms(&["check", "-i", &monotone, "--subset", "p,q,r"])
            .status
            .code(),
        Some(0)
    );
}

#[test]
fn monotone_instance_removes_nothing() {
    let inst = InstanceFile::from_json(MONOTONE_2D)
        .unwrap()
        .to_instance()
        .unwrap();
    for algorithm in [Algorithm::Exact, Algorithm::Approx2] {
        let s = solve(&inst, algorithm, &frac(1, 16)).unwrap();
        assert!(s.removed.is_empty(), "{algorithm:?}");
        assert_eq!(s.kept_weight, "4");
    }
    let report = solve(&inst, Algorithm::Approx2, &frac(1, 16))
        .unwrap()
        .report
        .unwrap();
    assert_eq!(report.alpha_prime.as_deref(), Some("1"));
    assert_eq!(report.delta.as_deref(), Some("0"));
}

#[test]
fn approx2_echoes_default_epsilon() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "mono.json", MONOTONE_2D);
    let out = monocms(&["solve", "-i", &input, "-a", "approx2"]);
    assert_eq!(out.status.code(), Some(0));
    let s = SolutionFile::from_json(&stdout(&out)).unwrap();
    assert_eq!(s.report.unwrap().epsilon, "1/16");
    let out = monocms(&["solve", "-i", &input, "-a", "approx2", "--epsilon", "0.125"]);
    let s = SolutionFile::from_json(&stdout(&out)).unwrap();
    assert_eq!(s.report.unwrap().epsilon, "1/8");
}

#[test]
fn solve_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let chain = write(dir.path(), "chain.json", CHAIN);
    let mono = write(dir.path(), "mono.json", MONOTONE_2D);
    assert_eq!(
        monocms(&["solve", "-i", &chain, "-a", "approx2"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        monocms(&["solve", "-i", &mono, "-a", "flow"]).status.code(),
        Some(2)
    );
    let broken = write(dir.path(), "broken.json", "{\"objects\": [");
    assert_eq!(
        monocms(&["solve", "-i", &broken, "-a", "exact"])
            .status
            .code(),
        Some(3)
    );
    let bad_weight = write(dir.path(), "w.json", &CHAIN.replace("\"1.0\"", "\"one\""));
    assert_eq!(
        monocms(&["solve", "-i", &bad_weight, "-a", "flow"])
            .status
            .code(),
        Some(3)
    );
    assert_eq!(
        monocms(&["solve", "-i", &mono, "-a", "approx2", "--epsilon", "0"])
            .status
            .code(),
        Some(3)
    );
    let big = generate(&random_params(30, 1, 1)).unwrap().to_json();
    let big = write(dir.path(), "big.json", &big);
    assert_eq!(
        monocms(&["solve", "-i", &big, "-a", "exact"]).status.code(),
        Some(4)
    );
    assert_eq!(
        monocms(&["solve", "-i", &big, "-a", "flow"]).status.code(),
        Some(0)
    );
}

#[test]
fn cyclic_object_order_is_a_parse_error() {
    let text = CHAIN.replace(r#"[["2", "1"], ["3", "2"]]"#, r#"[["2", "1"], ["1", "2"]]"#);
    assert!(InstanceFile::from_json(&text)
        .unwrap()
        .to_instance()
        .is_err());
}

#[test]
fn weights_parse_exactly() {
    let text = CHAIN.replace("\"1.0\"", "\"0.1\"");
    let inst = InstanceFile::from_json(&text)
        .unwrap()
        .to_instance()
        .unwrap();
    assert_eq!(inst.objects()[2].weight, frac(1, 10));
}

#[test]
fn vectors_order_componentwise() {
    let inst = InstanceFile::from_json(MONOTONE_2D)
        .unwrap()
        .to_instance()
        .unwrap();
    let order = inst.object_order();
    assert!(order.ge(1, 0) && order.ge(2, 1) && order.ge(2, 0));
    let text = MONOTONE_2D.replace("[1, \"1/2\"]", "[1, \"-1\"]");
    let inst = InstanceFile::from_json(&text)
        .unwrap()
        .to_instance()
        .unwrap();
    assert!(!inst.object_order().comparable(0, 1));
}

#[test]
fn documents_round_trip() {
    let mut docs = vec![CHAIN.to_string(), MONOTONE_2D.to_string()];
    for seed in 0..5 {
        docs.push(
            generate(&random_params(7, 1 + seed as usize % 2, seed))
                .unwrap()
                .to_json(),
        );
    }
    let sat = GenerateParams {
        kind: Kind::Sat,
        n: Some(3),
        m: Some(2),
        dim: 1,
        noise: 0.0,
        seed: 4,
        cnf: None,
    };
    docs.push(generate(&sat).unwrap().to_json());
    for doc in docs {
        let first = InstanceFile::from_json(&doc)
            .unwrap()
            .to_instance()
            .unwrap();
        let text = InstanceFile::from_instance(&first).to_json();
        let second = InstanceFile::from_json(&text)
            .unwrap()
            .to_instance()
            .unwrap();
        assert_eq!(first, second);
        assert_eq!(InstanceFile::from_instance(&second).to_json(), text);
    }
}

#[test]
fn exact_and_flow_agree_on_total_orders() {
    for seed in 0..40 {
        let inst = generate(&random_params(10, 1, seed))
            .unwrap()
            .to_instance()
            .unwrap();
        let a = solve(&inst, Algorithm::Exact, &frac(1, 16)).unwrap();
        let b = solve(&inst, Algorithm::Flow, &frac(1, 16)).unwrap();
        assert_eq!(a.kept_weight, b.kept_weight);
        b.to_json(&inst).unwrap();
    }
}

#[test]
fn sat_generation_from_dimacs() {
    let dir = tempfile::tempdir().unwrap();
    let cnf = write(
        dir.path(),
        "f.cnf",
        "c example\np cnf 4 2\n1 -2 3 0\n-1 2 4 0\n",
    );
    let out = monocms(&["generate", "--kind", "sat", "--cnf", &cnf]);
    assert_eq!(out.status.code(), Some(0));
    let inst = InstanceFile::from_json(&stdout(&out))
        .unwrap()
        .to_instance()
        .unwrap();
    assert_eq!(inst.len(), 2 * 4 + 3 * 2);
    assert!(inst.index_of("~u3").is_some() && inst.index_of("c2_3").is_some());
    let s = solve(&inst, Algorithm::Exact, &frac(1, 16)).unwrap();
    assert_eq!(s.kept_weight, "6");
    let bad = write(dir.path(), "bad.cnf", "p cnf 3 1\n1 1 2 0\n");
    assert_eq!(
        monocms(&["generate", "--kind", "sat", "--cnf", &bad])
            .status
            .code(),
        Some(3)
    );
}

#[test]
fn generation_rejects_empty_and_is_reproducible() {
    assert_eq!(
        monocms(&["generate", "--kind", "random", "--n", "0"])
            .status
            .code(),
        Some(3)
    );
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for path in [&a, &b] {
        let args = [
            "generate", "--kind", "random", "--n", "12", "--dim", "2", "--seed", "7", "-o",
        ];
        let out = monocms(&[&args[..], &[path.to_str().unwrap()]].concat());
        assert_eq!(out.status.code(), Some(0));
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}
