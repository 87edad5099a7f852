use dwl_epc_web::{cfi_text, refute_text, sketch_text};

const K2: &str = "structure n=2\nrel E\n0 1\n1 0\n\n";
const TRIANGLE: &str = "structure n=3\nrel E\n0 1\n0 2\n1 0\n1 2\n2 0\n2 1\n\n";

fn data(name: &str) -> String {
    std::fs::read_to_string(std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name)).unwrap()
}

#[test]
fn sketch_of_an_edge() {
    let s = sketch_text(K2).unwrap();
    assert!(s.starts_with("tau E\n"));
    assert!(sketch_text("nonsense").unwrap_err().starts_with("graph:"));
}

#[test]
fn cfi_companions_over_a_triangle() {
    let plain = cfi_text(TRIANGLE, false, false).unwrap();
    let twisted = cfi_text(TRIANGLE, true, false).unwrap();
    assert_ne!(plain, twisted);
    assert_eq!(plain.lines().next(), twisted.lines().next());
}

#[test]
fn refutes_prism_against_k33() {
    let out = refute_text(&data("prism.txt"), &data("k33.txt"), &data("empty.trace")).unwrap();
    assert!(out.starts_with("outcome REFUTED\nmode mc3\n"));
    assert!(out.contains("epcproof v1 mode=mc3 restricted=0\n"));
    let same = refute_text(&data("c5.txt"), &data("c5.txt"), &data("empty.trace")).unwrap();
    assert_eq!(same, "outcome NOT_DISTINGUISHED\n");
    assert!(refute_text(K2, K2, "garbage").unwrap_err().starts_with("trace:"));
}
