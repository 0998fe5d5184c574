//! The acceptance gate: one test per criterion, each printing a PASS line
//! (run with `--nocapture` to see them).  Command-level criteria go through
//! the library entry point `arthur_calc::run`, exactly as the binary does.

use arthur_calc::{run, run_random_suites, SuiteConfig, SuiteOutcome};
use serde_json::Value;
use std::time::Instant;

fn run_json(args: &[&str]) -> (i32, Value) {
    let mut argv = vec!["arthur-calc"];
    argv.extend_from_slice(args);
    argv.push("--format");
    argv.push("json");
    let (code, out) = run(&argv);
    let doc: Value = serde_json::from_str(&out).unwrap_or_else(|e| {
        panic!("non-JSON output for {:?}: {} — {}", args, e, out);
    });
    (code, doc)
}

fn battery(count: u32) -> Vec<SuiteOutcome> {
    run_random_suites(&SuiteConfig::new(1, count))
}

fn suite<'a>(all: &'a [SuiteOutcome], name: &str) -> &'a SuiteOutcome {
    all.iter()
        .find(|s| s.name == name)
        .unwrap_or_else(|| panic!("missing suite {}", name))
}

fn stat(s: &SuiteOutcome, name: &str) -> u64 {
    s.stats
        .iter()
        .find(|(n, _)| n == name)
        .map(|(_, c)| *c)
        .unwrap_or(0)
}

fn assert_clean(s: &SuiteOutcome, minimum: u32) {
    assert!(
        s.violations.is_empty(),
        "{}: {:#?}",
        s.name,
        s.violations
    );
    assert!(
        s.instances >= minimum,
        "{}: only {} instances",
        s.name,
        s.instances
    );
}

const SYMPLECTIC: &str = "Sp(2): chi[1,O]@S(1)xS(1)^2 + one[1,O]@S(1)xS(1)";

#[test]
fn acceptance_01_symplectic_rank_one_story() {
    let t = Instant::now();

    let (code, doc) = run_json(&["signs", SYMPLECTIC]);
    assert_eq!(code, 0);
    assert_eq!(doc["results"]["beta_one_factor"], 1);
    assert_eq!(doc["results"]["beta_phi_psi"], 1);

    let (code, doc) = run_json(&["dual", SYMPLECTIC, "--char", "+,+"]);
    assert_eq!(code, 0);
    assert_eq!(doc["results"]["beta_member"], 1);
    assert_eq!(doc["results"]["dual_character"], "-,+");
    assert_eq!(doc["results"]["duality_product"], 1);

    let (code, doc) = run_json(&["component", SYMPLECTIC]);
    assert_eq!(code, 0);
    let e_psi = doc["results"]["e_psi"].as_array().unwrap();
    assert!(e_psi.iter().all(|e| e["sign"] == 1), "{:?}", e_psi);

    let (code, doc) = run_json(&["mw-character", SYMPLECTIC]);
    assert_eq!(code, 0);
    let closed = doc["results"]["closed"].as_array().unwrap();
    let chi = closed
        .iter()
        .find(|e| e["summand"].as_str().unwrap().starts_with("chi"))
        .unwrap();
    assert_eq!(chi["sign"], -1);
    assert_eq!(doc["results"]["agree"], true);

    let (code, doc) = run_json(&["compare-arthur", SYMPLECTIC, "--char", "+,+"]);
    assert_eq!(code, 0);
    assert_eq!(doc["results"]["character_contradiction"], true);
    assert_eq!(doc["results"]["sign_contradiction"], false);
    assert_eq!(doc["results"]["corrected_sign"], 1);

    let elapsed = t.elapsed();
    assert!(elapsed.as_secs_f64() < 1.0, "took {:?}", elapsed);
    println!(
        "ACCEPTANCE 1: PASS — rank-one symplectic story reproduced ({:?})",
        elapsed
    );
}

const ODD_ORTHOGONAL: &str = "SO(3,split): one[1,O]@S(2)xS(1)";

#[test]
fn acceptance_02_odd_orthogonal_rank_one_story() {
    let t = Instant::now();

    let (code, doc) = run_json(&["signs", ODD_ORTHOGONAL]);
    assert_eq!(code, 0);
    assert_eq!(doc["results"]["beta_one_factor"], -1);
    assert_eq!(doc["results"]["beta_phi_psi_of_swap"], 1);

    let (code, doc) = run_json(&["mw-character", "SO(3,split): one[1,O]@S(1)xS(2)"]);
    assert_eq!(code, 0);
    assert_eq!(doc["results"]["positional"], "+");

    let (code, doc) = run_json(&["compare-arthur", ODD_ORTHOGONAL, "--char", "+"]);
    assert_eq!(code, 0);
    assert_eq!(doc["results"]["sign_contradiction"], true);
    assert_eq!(doc["results"]["character_contradiction"], false);
    assert_eq!(doc["results"]["naive_sign"], -1);
    assert_eq!(doc["results"]["corrected_sign"], 1);

    let (code, doc) = run_json(&["dual", ODD_ORTHOGONAL, "--char", "+"]);
    assert_eq!(code, 0);
    assert_eq!(doc["results"]["duality_product"], 1);

    let (code, doc) = run_json(&["dual", "SO(3,inner): one[1,O]@S(2)xS(1)", "--char", "-"]);
    assert_eq!(code, 0);
    assert_eq!(doc["results"]["duality_product"], 1);

    let elapsed = t.elapsed();
    assert!(elapsed.as_secs_f64() < 1.0, "took {:?}", elapsed);
    println!(
        "ACCEPTANCE 2: PASS — rank-one odd orthogonal story reproduced ({:?})",
        elapsed
    );
}

#[test]
fn acceptance_03_endoscopic_sign_identity() {
    let t = Instant::now();
    let all = battery(500);
    let s = suite(&all, "endoscopic-identity");
    assert_clean(s, 500);
    assert!(stat(s, "distinct second preimages") > 0, "{:?}", s.stats);
    assert!(stat(s, "hinted variants") > 0, "{:?}", s.stats);
    let elapsed = t.elapsed();
    assert!(elapsed.as_secs_f64() < 10.0, "took {:?}", elapsed);

    // determinism: identical argv twice gives byte-identical JSON
    let argv = [
        "arthur-calc",
        "verify",
        "--suite",
        "random",
        "--seed",
        "7",
        "--count",
        "60",
        "--format",
        "json",
    ];
    let first = run(&argv);
    let second = run(&argv);
    assert_eq!(first, second, "verify output is not deterministic");

    println!(
        "ACCEPTANCE 3: PASS — endoscopic identity on {} instances, {} second preimages, {} hinted ({:?})",
        s.instances,
        stat(s, "distinct second preimages"),
        stat(s, "hinted variants"),
        elapsed
    );
}

#[test]
fn acceptance_04_correction_character_two_definitions() {
    let t = Instant::now();
    let all = battery(500);
    let s = suite(&all, "mw-two-definitions");
    assert_clean(s, 500);
    let elapsed = t.elapsed();
    assert!(elapsed.as_secs_f64() < 5.0, "took {:?}", elapsed);
    println!(
        "ACCEPTANCE 4: PASS — closed form matches the ordered recipe under both orders on {} instances ({:?})",
        s.instances, elapsed
    );
}

#[test]
fn acceptance_05_correction_character_membership() {
    let t = Instant::now();
    let all = battery(500);
    let s = suite(&all, "mw-membership");
    assert_clean(s, 500);
    let elapsed = t.elapsed();
    assert!(elapsed.as_secs_f64() < 10.0, "took {:?}", elapsed);
    println!(
        "ACCEPTANCE 5: PASS — membership identities of the correction character on {} instances ({:?})",
        s.instances, elapsed
    );
}

#[test]
fn acceptance_06_duality_product_closes() {
    let t = Instant::now();
    let all = battery(500);
    let s = suite(&all, "duality-product");
    assert_clean(s, 500);
    assert!(stat(s, "multiplicity splits") > 0, "{:?}", s.stats);
    assert!(stat(s, "inner-form labels") > 0, "{:?}", s.stats);
    let elapsed = t.elapsed();
    assert!(elapsed.as_secs_f64() < 10.0, "took {:?}", elapsed);
    println!(
        "ACCEPTANCE 6: PASS — duality product +1 on {} labels ({} non-discrete splits, {} inner forms) ({:?})",
        s.instances,
        stat(s, "multiplicity splits"),
        stat(s, "inner-form labels"),
        elapsed
    );
}

#[test]
fn acceptance_07_beta_oracles() {
    let t = Instant::now();
    let all = battery(300);
    let closed = suite(&all, "beta-closed-form");
    assert_clean(closed, 300);
    let oracle = suite(&all, "beta-discrete-oracle");
    assert_clean(oracle, 300);
    let elapsed = t.elapsed();
    assert!(elapsed.as_secs_f64() < 10.0, "took {:?}", elapsed);
    println!(
        "ACCEPTANCE 7: PASS — closed-form and pairing oracles agree on {}+{} instances ({:?})",
        closed.instances, oracle.instances, elapsed
    );
}

#[test]
fn acceptance_08_supercuspidal_and_multiplicativity() {
    let t = Instant::now();
    let all = battery(300);
    let sc = suite(&all, "supercuspidal-chain");
    assert_clean(sc, 300);
    assert!(stat(sc, "supercuspidal labels") > 0, "{:?}", sc.stats);
    let mult = suite(&all, "beta-multiplicativity");
    assert_clean(mult, 300);
    let elapsed = t.elapsed();
    assert!(elapsed.as_secs_f64() < 10.0, "took {:?}", elapsed);
    println!(
        "ACCEPTANCE 8: PASS — supercuspidal criterion and sign multiplicativity on {}+{} instances ({:?})",
        sc.instances, mult.instances, elapsed
    );
}

#[test]
fn acceptance_09_generic_dual() {
    let t = Instant::now();

    let (code, doc) = run_json(&["generic-dual", ODD_ORTHOGONAL]);
    assert_eq!(code, 0);
    assert_eq!(
        doc["results"]["dual"],
        "one[1,O]|-1/2@S(1)xS(1) + one[1,O]|1/2@S(1)xS(1)"
    );

    let all = battery(300);
    let s = suite(&all, "generic-dual");
    assert_clean(s, 300);
    let elapsed = t.elapsed();
    assert!(elapsed.as_secs_f64() < 5.0, "took {:?}", elapsed);
    println!(
        "ACCEPTANCE 9: PASS — generic dual pinned case and {} random data ({:?})",
        s.instances, elapsed
    );
}

#[test]
fn acceptance_10_relevance_is_not_preserved() {
    let t = Instant::now();

    let input = "SO(7,inner): one[1,O]@S(1)xS(2)^3";
    let (code, doc) = run_json(&["classify", input]);
    assert_eq!(code, 0);
    assert_eq!(doc["results"]["relevant"], true);

    let (g, psi) = arthur_core::parse_input(input).unwrap();
    let phi = psi.arthur_to_l();
    assert_eq!(arthur_core::is_relevant(&phi, &g), Ok(false));

    let elapsed = t.elapsed();
    assert!(elapsed.as_secs_f64() < 1.0, "took {:?}", elapsed);
    println!(
        "ACCEPTANCE 10: PASS — deformation parameter relevant, its one-factor parameter not ({:?})",
        elapsed
    );
}
