use std::process::{Command, Output};

fn qdiff(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qdiff")).args(args).output().expect("run qdiff")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).trim().to_string()
}

#[test]
fn bracket_and_form() {
    let o = qdiff(&["bracket", "vq", "E[1,0]", "E[0,1]"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "(1*q^-1 + -1*q^1) * E[1,1]");

    let o = qdiff(&["form", "A", "G[1,2]", "G[-1,2]"]);
    assert_eq!(stdout(&o), "1");

    assert_eq!(qdiff(&["bracket", "vq", "E[0,0]", "E[1,1]"]).status.code(), Some(0));
    assert_eq!(stdout(&qdiff(&["bracket", "vq", "E[0,0]", "E[1,1]"])), "0");
}

#[test]
fn printed_output_parses_back() {
    let o = qdiff(&["bracket", "vq", "E[1,0]", "E[0,1]"]);
    let again = qdiff(&["bracket", "vq", &stdout(&o), "E[0,0]"]);
    assert_eq!(again.status.code(), Some(0));
    let o = qdiff(&["bracket", "vq", "E[2,1]", &stdout(&o)]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn act_examples() {
    let o = qdiff(&["act", "--spec", "verma", "--l1", "0", "--l2", "1", "E[-1,-2] v", "E[1,2]"]);
    assert_eq!((o.status.code(), stdout(&o).as_str()), (Some(0), "2 * v"));

    let o = qdiff(&["act", "--spec", "verma", "E[2,-1] v", "E[1,3]"]);
    assert_eq!(stdout(&o), "0");

    let o = qdiff(&["act", "--spec", "verma", "--l2", "5/2", "E[2,-1] v", "c2", "--output", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["text"], "5/2 * E[2,-1] v");
}

#[test]
fn fuzz_exit_codes_and_determinism() {
    let args = ["fuzz", "jacobi", "--algebra", "vq", "--window", "3", "--trials", "200", "--seed", "7", "--output", "json"];
    let a = qdiff(&args);
    assert_eq!(a.status.code(), Some(0));
    let mut seq = args.to_vec();
    seq.push("--sequential");
    let b = qdiff(&seq);
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["failures"], 0);

    assert_eq!(qdiff(&["fuzz", "trivial", "--algebra", "A", "--trials", "200"]).status.code(), Some(0));
    assert_eq!(qdiff(&["fuzz", "iso", "--algebra", "vq", "--window", "4", "--trials", "100"]).status.code(), Some(0));
    assert_eq!(
        qdiff(&["fuzz", "module-axiom", "--algebra", "vq", "--spec", "ind", "--trials", "50"]).status.code(),
        Some(0)
    );
}

#[test]
fn usage_and_parse_errors_exit_2() {
    assert_eq!(qdiff(&["bracket", "vq", "E[1,0", "E[0,1]"]).status.code(), Some(2));
    assert_eq!(qdiff(&["bracket", "vq", "G[1,0]", "E[0,1]"]).status.code(), Some(2));
    assert_eq!(qdiff(&["form", "vq", "E[1,0]", "E[0,1]"]).status.code(), Some(2));
    assert_eq!(qdiff(&["fuzz", "trivial", "--algebra", "vq"]).status.code(), Some(2));
    assert_eq!(qdiff(&["nope"]).status.code(), Some(2));
    assert_eq!(qdiff(&["gf-check", "no-such-identity"]).status.code(), Some(2));
    let o = qdiff(&["bracket", "vq", "E[1,0", "E[0,1]"]);
    assert!(String::from_utf8_lossy(&o.stderr).contains("byte"));
}

#[test]
fn property_failure_exits_1() {
    // The consistency check flags a one-dimensional bottom with nonzero ℓ1.
    let o = qdiff(&["verify", "bottom", "--spec", "verma", "--l1", "1"]);
    assert_eq!(o.status.code(), Some(1), "{}", stdout(&o));
}

#[test]
fn identities_and_checks() {
    for (id, ps) in [
        ("loop-fields", "k=1,m=0,r=-1,n=0"),
        ("eq3.8", "k=2,r=-2"),
        ("vq-hat-fields", "k=1,r=1"),
        ("eq4.3", "k=1,m=2,r=-1,n=0"),
        ("loop-shifted", "k=1,m=0,r=-1,n=2"),
    ] {
        let o = qdiff(&["gf-check", id, "--params", ps, "--window", "-5..5"]);
        assert_eq!(o.status.code(), Some(0), "{id}: {}", stdout(&o));
    }
    for args in [
        vec!["verify", "theta", "--window", "2"],
        vec!["verify", "support", "--params", "t=1,kp=1,k1=2,j1=1,i1=2,j=2"],
        vec!["verify", "phi", "--l1", "2", "--trials", "20"],
        vec!["verify", "quasi-locality", "--params", "k=1,m=0,r=-1,n=1", "--trials", "4"],
        vec!["verify", "equivariance", "--params", "k=1,m=0,r=2"],
        vec!["bound", "--spec", "verma", "E[2,-1] v", "--window", "-4..4"],
    ] {
        assert_eq!(qdiff(&args).status.code(), Some(0), "{args:?}");
    }
}

#[test]
fn reduce_to_canonical_representatives() {
    let o = qdiff(&["reduce", "(G[1,2])@t^3"]);
    assert_eq!(stdout(&o), "1*q^-6 * Gbar[1,3]");
    let o = qdiff(&["reduce", "--algebra", "vq", "E[1,0]"]);
    assert_eq!(stdout(&o), "Gbar[1,0]");
}

#[test]
fn spec_file_round_trip() {
    let dir = std::env::temp_dir().join(format!("qdiff-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("ind.json");
    std::fs::write(
        &path,
        r#"{"algebra": "vq", "levels": {"l1": 0, "l2": 1}, "cutoff_t": 1, "dim": 2,
            "action": [{"key": "E[k,0]", "matrix": [["q^-k - q^k", 0], [0, 0]]},
                       {"key": "E[k,1]", "matrix": [[0, 1], [0, 0]]}]}"#,
    )
    .unwrap();
    let p = path.to_str().unwrap();
    let o = qdiff(&["act", "--spec", p, "v[1]", "E[3,1]"]);
    assert_eq!(stdout(&o), "v");
    assert_eq!(qdiff(&["verify", "bottom", "--spec", p]).status.code(), Some(0));
    assert_eq!(qdiff(&["act", "--spec", p, "--l1", "2", "v", "c1"]).status.code(), Some(2));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn report_is_deterministic() {
    let a = qdiff(&["report", "--trials", "20", "--output", "json"]);
    let b = qdiff(&["report", "--trials", "20", "--output", "json", "--sequential"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}
