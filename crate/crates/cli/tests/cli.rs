use std::process::{Command, Output};

fn htw(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_htw"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn cg_pair() {
    let o = htw(&["cg", "--m", "1", "--n", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "L2 + L0\n");
    assert_eq!(stdout(&htw(&["cg", "--m", "2", "--n", "3"])), "L5 + L3 + L1\n");
}

#[test]
fn cg_power_audit() {
    let o = htw(&["cg", "--power", "4"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "L4  1\nL2  3\nL0  2\ndimension 16 = 2^4: ok\n");
}

#[test]
fn dimension_suite() {
    let o = htw(&["verify", "--suite", "dimension", "--D", "2", "--q", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("PASS dim T(D) = 15 = C(6, 4)"));
}

#[test]
fn every_suite_passes_on_a_small_case() {
    for suite in ["relations", "idempotents", "qpoly", "dimension", "decomposition", "classification"] {
        let o = htw(&["verify", "--suite", suite, "--D", "2", "--q", "4"]);
        assert_eq!(o.status.code(), Some(0), "{suite}: {}", stdout(&o));
    }
}

#[test]
fn wrong_omega_fails_relations() {
    let o = htw(&["verify", "--suite", "relations", "--D", "2", "--q", "3", "--omega", "1/2"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL"));
}

#[test]
fn decompose_dr_at_q3() {
    let o = htw(&["decompose", "--D", "3", "--q", "3", "--param", "dr"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 7);
    assert!(text.contains("3  2  1  {1,2,3}    3\n"));
}

#[test]
fn decompose_json_schema() {
    let o = htw(&["decompose", "--D", "2", "--q", "3", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["D"], 2);
    assert_eq!(v["q"], 3);
    assert_eq!(v["total_dim"], 9);
    assert_eq!(v["all_passed"], true);
    let classes = v["classes"].as_array().unwrap();
    assert_eq!(classes.len(), 4);
    for key in ["p", "k", "d", "r", "dim", "multiplicity", "support", "checks"] {
        assert!(classes[0].get(key).is_some(), "missing {key}");
    }
}

#[test]
fn decompose_is_deterministic() {
    let args = ["decompose", "--D", "3", "--q", "4", "--format", "json"];
    assert_eq!(htw(&args).stdout, htw(&args).stdout);
}

#[test]
fn emitted_bases_parse() {
    let dir = std::env::temp_dir().join(format!("htw-bases-{}", std::process::id()));
    let o = htw(&["decompose", "--D", "2", "--q", "3", "--emit-bases", dir.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(dir.join("p1_k0_copy1.txt")).unwrap();
    let m = hamming_terwilliger::Matrix::from_text(&text).unwrap();
    assert_eq!((m.rows(), m.cols()), (9, 2));
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn matrix_output() {
    let o = htw(&["matrix", "--which", "A", "--D", "1", "--q", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let m = hamming_terwilliger::Matrix::from_text(&stdout(&o)).unwrap();
    assert_eq!(m, hamming_terwilliger::Matrix::from_ints(&[&[0, 1, 1], &[1, 0, 1], &[1, 1, 0]]));
    let o = htw(&["matrix", "--which", "Ei", "--i", "0", "--D", "1", "--q", "3"]);
    let m = hamming_terwilliger::Matrix::from_text(&stdout(&o)).unwrap();
    assert_eq!(m[(0, 2)], hamming_terwilliger::rat(1, 3));
}

#[test]
fn module_output() {
    let o = htw(&["module", "--n", "1", "--omega", "1/3"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("# omega = 1/3\n# A\n2 2\n"));
    assert!(text.contains("0 0 -1/6\n"));
    let o = htw(&["module", "--n", "2", "--sl2"]);
    assert!(stdout(&o).contains("# H\n3 3\n0 0 2\n"));
}

#[test]
fn exit_codes() {
    assert_eq!(htw(&["decompose", "--D", "0", "--q", "3"]).status.code(), Some(2));
    assert_eq!(htw(&["decompose", "--D", "2", "--q", "2"]).status.code(), Some(2));
    assert_eq!(htw(&["decompose", "--bogus"]).status.code(), Some(2));
    assert_eq!(htw(&["module", "--n", "-1", "--omega", "0"]).status.code(), Some(2));
    assert_eq!(htw(&["matrix", "--which", "Ei", "--D", "2", "--q", "3"]).status.code(), Some(2));
    let o = htw(&["--cap", "10", "decompose", "--D", "3", "--q", "3"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("cap"));
    let o = Command::new(env!("CARGO_BIN_EXE_htw"))
        .args(["verify", "--suite", "dimension", "--D", "3", "--q", "3"])
        .env("HAMMING_MATERIALIZE_CAP", "20")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3));
}
