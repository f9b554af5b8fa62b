use std::process::{Command, Output};

use matched_groups::report::{Status, VerificationReport};

fn mgt(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mgt"))
        .args(args)
        .output()
        .expect("mgt runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

#[test]
fn verify_pair_exit_codes() {
    let ok = mgt(&[
        "verify-pair",
        "--group",
        "symmetric:3",
        "--m",
        "(1 2 3)",
        "--n",
        "(1 2)",
    ]);
    assert_eq!(code(&ok), 0);
    assert!(String::from_utf8_lossy(&ok.stdout).starts_with("PASS symmetric:3 pair"));

    let not_exact = mgt(&[
        "verify-pair",
        "--group",
        "cyclic:4",
        "--m",
        "(1 2 3 4)",
        "--n",
        "(1 3)(2 4)",
    ]);
    assert_eq!(code(&not_exact), 2);
    assert!(String::from_utf8_lossy(&not_exact.stderr).contains("not exact"));

    for bad in [
        &["verify-pair", "--group", "cyclic:0", "--m", "", "--n", ""][..],
        &["verify-pair", "--group", "nonsense", "--m", "", "--n", ""],
        &[
            "verify-pair",
            "--group",
            "symmetric:3",
            "--m",
            "(1 4)",
            "--n",
            "",
        ],
        &["verify-pair", "--group", "symmetric:3"],
        &["survey"],
        &["survey", "--max-order", "49"],
        &["frobnicate"],
        &[
            "verify-pair",
            "--group",
            "symmetric:4",
            "--m",
            "",
            "--n",
            "",
            "--max-group-order",
            "12",
        ],
    ] {
        assert_eq!(code(&mgt(bad)), 1, "{bad:?}");
    }
    assert_eq!(code(&mgt(&["--help"])), 0);
}

#[test]
fn verify_pair_json_to_stdout_and_file() {
    let out = mgt(&[
        "verify-pair",
        "--group",
        "product:cyclic:2,cyclic:3",
        "--m",
        "(1 2)",
        "--n",
        "(3 4 5)",
        "--json",
    ]);
    assert_eq!(code(&out), 0);
    let r: VerificationReport = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(r.group.order, 6);
    assert_eq!(r.notes, ["trivial actions: direct product"]);
    assert!(r.checks.iter().all(|c| c.status == Status::Pass));

    let path = std::env::temp_dir().join(format!("mgt-cli-{}.json", std::process::id()));
    let out = mgt(&[
        "verify-pair",
        "--group",
        "quaternion8",
        "--m",
        "#2",
        "--n",
        "#4",
        "--json",
        path.to_str().unwrap(),
    ]);
    // ⟨i⟩ ∩ ⟨j⟩ = {±1}
    assert_eq!(code(&out), 2);
    let out = mgt(&[
        "verify-pair",
        "--group",
        "dihedral:4",
        "--m",
        "(1 2 3 4)",
        "--n",
        "(1 3)",
        "--json",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    let r: VerificationReport =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(r.subject, "dihedral:4 pair M=<(1 2 3 4)> N=<(1 3)>");
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("PASS"));
    std::fs::remove_file(path).unwrap();
}

#[test]
fn verify_triple_modes() {
    let args = |mode: &'static str| {
        vec![
            "verify-triple",
            "--group",
            "symmetric:4",
            "--m",
            "(1 2)(3 4),(1 3)(2 4)",
            "--n",
            "(1 2 3)",
            "--p",
            "(1 2)",
            "--mode",
            mode,
            "--json",
        ]
    };
    let out = mgt(&args("strict"));
    assert_eq!(code(&out), 0);
    let r: VerificationReport = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(r.check("formula_matches_oracle").unwrap().instances, 576);
    assert_eq!(
        r.check("literal_third_slot").unwrap().status,
        Status::Skipped
    );
    assert_eq!(code(&mgt(&args("relaxed"))), 0);
    assert_eq!(code(&mgt(&args("lenient"))), 1);

    // ⟨(3 4)⟩⟨(1 2 3 4)⟩ is not a subgroup, so only the relaxed mode accepts
    let s4 = |mode| {
        mgt(&[
            "verify-triple",
            "--group",
            "symmetric:4",
            "--m",
            "(3 4)",
            "--n",
            "(2 3 4)",
            "--p",
            "(1 2 3 4)",
            "--mode",
            mode,
            "--json",
        ])
    };
    assert_eq!(code(&s4("strict")), 2);
    let relaxed = s4("relaxed");
    assert_eq!(code(&relaxed), 0);
    let r: VerificationReport = serde_json::from_slice(&relaxed.stdout).unwrap();
    assert_eq!(r.check("cube_identities").unwrap().status, Status::Skipped);
    assert_eq!(
        r.check("oracle_associativity").unwrap().instances,
        24 * 24 * 24
    );
    assert_eq!(
        r.check("oracle_canonical_isomorphism").unwrap().status,
        Status::Pass
    );
}

#[test]
fn survey_json_is_an_array() {
    let out = mgt(&["survey", "--max-order", "4", "--json"]);
    assert_eq!(code(&out), 0);
    let rs: Vec<VerificationReport> = serde_json::from_slice(&out.stdout).unwrap();
    let subjects: Vec<&str> = rs.iter().map(|r| r.subject.as_str()).collect();
    assert_eq!(
        subjects[..4],
        [
            "cyclic:1 group",
            "cyclic:2 group",
            "cyclic:3 group",
            "cyclic:4 group"
        ]
    );
    assert!(subjects.contains(&"klein4 pair M=<(1 2)(3 4)> N=<(1 3)(2 4)>"));

    let text = mgt(&[
        "survey",
        "--max-order",
        "4",
        "--triples",
        "--include-degenerate",
    ]);
    assert_eq!(code(&text), 0);
    let stdout = String::from_utf8_lossy(&text.stdout);
    assert!(stdout.lines().last().unwrap().ends_with(", 0 failed"));
    assert!(stdout.contains("triple M="));
}
