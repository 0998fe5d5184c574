//! Command-line behavior: exit codes, help, determinism, the seed
//! environment fallback, and text rendering.

use arthur_calc::run;

#[test]
fn help_exits_zero_and_names_the_subcommands() {
    let (code, out) = run(&["arthur-calc", "--help"]);
    assert_eq!(code, 0);
    for sub in [
        "classify",
        "component",
        "signs",
        "endoscopy",
        "mw-character",
        "dual",
        "generic-dual",
        "compare-arthur",
        "verify",
    ] {
        assert!(out.contains(sub), "help misses {}: {}", sub, out);
    }
}

#[test]
fn usage_errors_exit_two() {
    let (code, _) = run(&["arthur-calc"]);
    assert_eq!(code, 2);
    let (code, _) = run(&["arthur-calc", "no-such-command"]);
    assert_eq!(code, 2);
    let (code, _) = run(&["arthur-calc", "dual", "Sp(2): one[1,O]@S(1)xS(1)"]);
    assert_eq!(code, 2, "missing --char must be a usage error");
}

#[test]
fn bad_inputs_exit_two() {
    // parse error in the parameter grammar
    let (code, out) = run(&["arthur-calc", "classify", "Sp(2): junk"]);
    assert_eq!(code, 2, "{}", out);
    assert!(out.starts_with("error:"), "{}", out);
    // structurally invalid: dimension mismatch
    let (code, _) = run(&["arthur-calc", "classify", "Sp(2): one[1,O]@S(1)xS(1)"]);
    assert_eq!(code, 2);
    // character arity mismatch
    let (code, _) = run(&[
        "arthur-calc",
        "dual",
        "SO(3,split): one[1,O]@S(2)xS(1)",
        "--char",
        "+,+",
    ]);
    assert_eq!(code, 2);
    // unknown named character key
    let (code, _) = run(&[
        "arthur-calc",
        "dual",
        "SO(3,split): one[1,O]@S(2)xS(1)",
        "--char",
        "two@S(2)xS(1)=-1",
    ]);
    assert_eq!(code, 2);
    // element naming a summand the parameter does not have
    let (code, _) = run(&[
        "arthur-calc",
        "endoscopy",
        "SO(3,split): one[1,O]@S(1)xS(2)",
        "--element",
        "chi@S(1)xS(2): -1^1",
    ]);
    assert_eq!(code, 2);
    // malformed hints
    let (code, _) = run(&[
        "arthur-calc",
        "endoscopy",
        "SO(3,split): one[1,O]@S(1)xS(2)",
        "--hints",
        "plus=weird",
    ]);
    assert_eq!(code, 2);
    // generic-dual input without a group prefix
    let (code, _) = run(&["arthur-calc", "generic-dual", "one[1,O]@S(2)xS(1)"]);
    assert_eq!(code, 2);
}

#[test]
fn json_output_is_deterministic() {
    for args in [
        vec![
            "arthur-calc",
            "verify",
            "--suite",
            "random",
            "--seed",
            "5",
            "--count",
            "40",
            "--format",
            "json",
        ],
        vec![
            "arthur-calc",
            "component",
            "Sp(6): one[1,O]@S(1)xS(3) + chi[1,O]@S(1)xS(2)^2",
            "--format",
            "json",
        ],
        vec![
            "arthur-calc",
            "dual",
            "Sp(2): chi[1,O]@S(1)xS(1)^2 + one[1,O]@S(1)xS(1)",
            "--char",
            "+,+",
            "--format",
            "json",
        ],
    ] {
        let first = run(&args);
        let second = run(&args);
        assert_eq!(first, second, "{:?}", args);
        assert_eq!(first.0, 0);
    }
}

#[test]
fn seed_env_var_is_the_fallback() {
    std::env::set_var("ARTHUR_CALC_SEED", "123");
    let (code, out) = run(&[
        "arthur-calc",
        "verify",
        "--suite",
        "random",
        "--count",
        "5",
        "--format",
        "json",
    ]);
    assert_eq!(code, 0);
    let doc: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(doc["inputs"]["seed"], 123);
    // an explicit flag wins over the environment
    let (_, out) = run(&[
        "arthur-calc",
        "verify",
        "--suite",
        "random",
        "--count",
        "5",
        "--seed",
        "9",
        "--format",
        "json",
    ]);
    let doc: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(doc["inputs"]["seed"], 9);
    std::env::remove_var("ARTHUR_CALC_SEED");
}

#[test]
fn text_reports_carry_the_headline_facts() {
    let (code, out) = run(&[
        "arthur-calc",
        "dual",
        "Sp(2): chi[1,O]@S(1)xS(1)^2 + one[1,O]@S(1)xS(1)",
        "--char",
        "+,+",
    ]);
    assert_eq!(code, 0);
    assert!(out.contains("[-,+]"), "{}", out);
    assert!(out.contains("duality product: 1"), "{}", out);

    let (code, out) = run(&["arthur-calc", "signs", "SO(3,split): one[1,O]@S(2)xS(1)"]);
    assert_eq!(code, 0);
    assert!(out.contains("r(G)"), "{}", out);
    assert!(out.contains("beta(phi) = -1"), "{}", out);

    let (code, out) = run(&["arthur-calc", "verify", "--suite", "examples"]);
    assert_eq!(code, 0);
    assert!(out.contains("examples: 2 instance(s)"), "{}", out);

    let (code, out) = run(&[
        "arthur-calc",
        "classify",
        "SO(7,inner): one[1,O]@S(1)xS(2)^3",
    ]);
    assert_eq!(code, 0);
    assert!(out.contains("relevant: true"), "{}", out);
}

#[test]
fn verify_examples_matches_the_library_suite() {
    let (code, out) = run(&[
        "arthur-calc",
        "verify",
        "--suite",
        "examples",
        "--format",
        "json",
    ]);
    assert_eq!(code, 0);
    let doc: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(doc["schema"], 1);
    assert_eq!(doc["results"][0]["suite"], "examples");
    assert_eq!(doc["results"][0]["violations"], 0);
    let lib = arthur_calc::run_examples_suite();
    assert!(lib.violations.is_empty());
}

#[test]
fn unknown_suite_is_a_usage_error() {
    let (code, out) = run(&["arthur-calc", "verify", "--suite", "nope"]);
    assert_eq!(code, 2);
    assert!(out.contains("nope"), "{}", out);
}
