use std::process::{Command, Output};

fn hardpart(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hardpart")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn partition_grid() {
    let o = hardpart(&["partition", "--family", "square-cyl", "--m", "1..3", "--n", "4,6"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "n\\m\t1\t2\t3\n4\t-1\t3\t-3\n6\t2\t-1\t1\n");
}

#[test]
fn partition_json_records_method() {
    let o = hardpart(&["--format", "json", "partition", "--family", "hex-torus", "--m", "2", "--n", "2"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(stdout(&o).lines().next().unwrap()).unwrap();
    assert_eq!(v["method"], "transfer");
    assert_eq!(v["status"], "ok");
    assert!(v["confirmed_by"].as_array().unwrap().iter().any(|x| x == "enumeration"));
}

#[test]
fn homology_cells_and_budget() {
    let o = hardpart(&["homology", "--family", "square-cyl", "--m", "3", "--n", "4"]);
    assert_eq!(stdout(&o), "n\\m\t3\n4\t(2,3)\n");
    let o = hardpart(&["--budget-faces", "10", "homology", "--family", "square-cyl", "--m", "3", "--n", "4"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "n\\m\t3\n4\toob\n");
    let o = hardpart(&["homology", "--family", "hex-torus", "--m", "2", "--n", "2"]);
    assert_eq!(stdout(&o), "n\\m\t2\n2\t(1,3)\n");
}

#[test]
fn charpoly_factors() {
    let o = hardpart(&["charpoly", "--family", "tpm", "--m", "4"]);
    assert_eq!(stdout(&o), "4\t8\t1 -1 0 1 -2 1 0 -1 1\tPhi_1^2 Phi_2^2 Phi_4 Phi_6\n");
    let o = hardpart(&["--format", "json", "charpoly", "--family", "hex-cyl", "--m", "3"]);
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert!(v["cyclotomic"].is_null());
}

#[test]
fn genfun_fit() {
    let o = hardpart(&["genfun", "--m", "4", "--a", "-", "--b", "4"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("rational\t(it) / (1 + t^3)"), "{}", stdout(&o));
}

#[test]
fn morse_rows() {
    let o = hardpart(&["morse", "--family", "cyl4", "--m", "5"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "m\tcritical\tpredicted\tstatus\n5\t{4: 5}\t(5, 4)\tok\n");
}

#[test]
fn reproduce_and_verify() {
    let o = hardpart(&["reproduce", "8"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).starts_with("n\\m\t"));
    let o = hardpart(&["verify", "conjecture1"]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("conjecture1 PASS: 84 checks"));
}

#[test]
fn usage_errors() {
    assert_eq!(hardpart(&["reproduce", "4"]).status.code(), Some(2));
    assert_eq!(hardpart(&["partition", "--family", "square-cyl", "--m", "3..1", "--n", "2"]).status.code(), Some(2));
    assert_eq!(hardpart(&["verify", "nothing"]).status.code(), Some(2));
    assert_ne!(hardpart(&["partition", "--family", "nowhere", "--m", "1", "--n", "1"]).status.code(), Some(0));
}
