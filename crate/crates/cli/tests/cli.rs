use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name)
}

fn dwl_epc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dwl-epc"))
        .args(args)
        .env_remove("DWL_EPC_BUDGET_VERTICES")
        .env_remove("DWL_EPC_BUDGET_STEPS")
        .output()
        .unwrap()
}

fn d(name: &str) -> String {
    data(name).to_string_lossy().into_owned()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn piso_on_single_vertices_prints_two_axioms() {
    let o = dwl_epc(&["piso", &d("k1.txt"), &d("k1.txt")]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 2);
}

#[test]
fn refute_then_check_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let proof = dir.path().join("p.proof");
    let proof = proof.to_str().unwrap();
    let o = dwl_epc(&["refute", &d("prism.txt"), &d("k33.txt"), &d("empty.trace"), "-o", proof, "--report"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).starts_with("outcome REFUTED\n"));
    let c = dwl_epc(&["check", proof, "--axioms", &d("prism.txt"), &d("k33.txt"), "--mode", "mc3"]);
    assert_eq!(c.status.code(), Some(0));
    assert!(stdout(&c).starts_with("REFUTATION"));
    // The same proof against other axioms is rejected.
    let r = dwl_epc(&["check", proof, "--axioms", &d("c5.txt"), &d("c5.txt")]);
    assert_eq!(r.status.code(), Some(2));
}

#[test]
fn ordered_cfi_refutation_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a.proof"), dir.path().join("b.proof"));
    for p in [&a, &b] {
        let o = dwl_epc(&[
            "refute",
            &d("cfi-k4-ordered.txt"),
            &d("cfi-k4-ordered-twisted.txt"),
            &d("cfi-k4-ordered.trace"),
            "-o",
            p.to_str().unwrap(),
        ]);
        assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    let c = dwl_epc(&[
        "check",
        a.to_str().unwrap(),
        "--axioms",
        &d("cfi-k4-ordered.txt"),
        &d("cfi-k4-ordered-twisted.txt"),
        "--mode",
        "epc3",
        "--restricted",
    ]);
    assert_eq!(c.status.code(), Some(0));
}

#[test]
fn isomorphic_inputs_are_not_distinguished() {
    let dir = tempfile::tempdir().unwrap();
    let proof = dir.path().join("p.proof");
    let o = dwl_epc(&["refute", &d("c5.txt"), &d("c5.txt"), &d("empty.trace"), "-o", proof.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("NOT_DISTINGUISHED"));
    assert!(!proof.exists());
}

#[test]
fn cfi_output_matches_committed_file_and_seed_relabels() {
    let o = dwl_epc(&["cfi", &d("k4.txt"), "--ordered", "--twist"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), std::fs::read_to_string(data("cfi-k4-ordered-twisted.txt")).unwrap());
    let s1 = dwl_epc(&["cfi", &d("k4.txt"), "--seed", "7"]);
    let s2 = dwl_epc(&["cfi", &d("k4.txt"), "--seed", "7"]);
    assert_eq!(stdout(&s1), stdout(&s2));
    assert_ne!(stdout(&s1), stdout(&dwl_epc(&["cfi", &d("k4.txt")])));
}

#[test]
fn dwl_reports_sketches_and_outcome() {
    let o = dwl_epc(&["dwl", &d("prism.txt"), &d("k33.txt"), &d("empty.trace")]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.starts_with("state 0 start vertices=6+6 distinguished=1\n"));
    assert!(out.ends_with("outcome DISTINGUISHED\n"));
}

#[test]
fn budgets_come_from_flags_and_environment() {
    let args = [
        "dwl",
        &d("cfi-k4-ordered.txt"),
        &d("cfi-k4-ordered-twisted.txt"),
        &d("cfi-k4-ordered.trace"),
    ];
    assert_eq!(dwl_epc(&args).status.code(), Some(0));
    let mut flagged = args.to_vec();
    flagged.extend(["--budget-vertices", "60"]);
    assert_eq!(dwl_epc(&flagged).status.code(), Some(65));
    let o = Command::new(env!("CARGO_BIN_EXE_dwl-epc"))
        .args(args)
        .env("DWL_EPC_BUDGET_VERTICES", "60")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(65));
}

#[test]
fn oracle_agrees_with_refinement() {
    let o = dwl_epc(&["oracle", &d("prism.txt"), &d("k33.txt")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).ends_with("spoiler_wins 1\n"));
    let o = dwl_epc(&["oracle", &d("c5.txt"), &d("c5.txt")]);
    assert!(stdout(&o).ends_with("spoiler_wins 0\n"));
}

#[test]
fn errors_map_to_exit_codes() {
    assert_eq!(dwl_epc(&["refute", &d("c5.txt")]).status.code(), Some(64));
    assert_eq!(dwl_epc(&["check", "x", "--axioms", "a", "b", "--mode", "pc9"]).status.code(), Some(64));
    assert_eq!(dwl_epc(&["refine", &d("missing.txt")]).status.code(), Some(66));
    // A trace file is not a structure.
    assert_eq!(dwl_epc(&["refine", &d("empty.trace")]).status.code(), Some(65));
    // Different vertex counts.
    assert_eq!(dwl_epc(&["piso", &d("k1.txt"), &d("k2.txt")]).status.code(), Some(65));
    assert_eq!(dwl_epc(&["--help"]).status.code(), Some(0));
}
