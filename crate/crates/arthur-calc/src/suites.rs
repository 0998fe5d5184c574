//! Verification suites: the two pinned rank-one stories and the seeded
//! randomized identity checks the `verify` subcommand runs.

use crate::out::Violation;
use crate::random::{
    anti_tempered_gp, anti_tempered_mixed, discrete_tempered, element, generic_datum,
    second_preimage, tempered_label, SuiteConfig,
};
use arthur_core::{
    beta_gl, beta_l, beta_oracle_discrete, beta_phi_psi, beta_phi_psi_closed_form,
    compare_duality, component_info, duality_sign_product, endoscopic_datum,
    endoscopic_sign_product, eval_at_s_psi, generic_dual_chain, generic_dual_l,
    image_in_component_group, is_supercuspidal, mw_character_closed, mw_character_xu, pair,
    parse_input, reduction_chain, standard_module_shape, validate_for_group, Family, FormFlag,
    FormalParameter, GroupForm, OrderVariant, ParamKind, ReductionCase, Sign, SignCharacter,
    SplitHints, Summand,
};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// The result of one suite: how many instances ran, a few named counters,
/// and every identity violation found (with a reproducer).
#[derive(Debug, Clone)]
pub struct SuiteOutcome {
    pub name: String,
    pub instances: u32,
    pub stats: Vec<(String, u64)>,
    pub violations: Vec<Violation>,
}

impl SuiteOutcome {
    fn new(name: &str) -> SuiteOutcome {
        SuiteOutcome {
            name: name.into(),
            instances: 0,
            stats: Vec::new(),
            violations: Vec::new(),
        }
    }

    fn bump(&mut self, stat: &str) {
        match self.stats.iter_mut().find(|(n, _)| n == stat) {
            Some((_, c)) => *c += 1,
            None => self.stats.push((stat.into(), 1)),
        }
    }

    fn fail(&mut self, identity: &str, reproducer: String, detail: String) {
        self.violations.push(Violation {
            identity: identity.into(),
            reproducer,
            detail,
        });
    }

    fn check(&mut self, identity: &str, reproducer: &str, ok: bool, detail: String) {
        if !ok {
            self.fail(identity, reproducer.into(), detail);
        }
    }
}

fn param_repro(g: &GroupForm, p: &FormalParameter) -> String {
    format!("{}: {}", g, p)
}

fn label_repro(l: &arthur_core::PacketLabel) -> String {
    format!(
        "{}: {} --char {}",
        l.form(),
        l.phi(),
        crate::out::char_positional(l.eps())
    )
}

// --------------------------------------------------------------------------
// the pinned rank-one stories
// --------------------------------------------------------------------------

/// Replay the two rank-one stories end to end as named checks.
pub fn run_examples_suite() -> SuiteOutcome {
    let mut out = SuiteOutcome::new("examples");
    symplectic_rank_one(&mut out);
    odd_orthogonal_rank_one(&mut out);
    out
}

/// On the rank-one symplectic group, the parameter `chi^2 + 1` (trivial on
/// the deformation factor): the uncorrected transport of the trivial
/// character is wrong, even though every normalization sign agrees.
fn symplectic_rank_one(out: &mut SuiteOutcome) {
    let repro = "Sp(2): chi[1,O]@S(1)xS(1)^2 + one[1,O]@S(1)xS(1)";
    out.instances += 1;
    let mut run = || -> Result<(), arthur_core::Error> {
        let (g, phi) = parse_input(repro)?;
        let part = validate_for_group(&phi, &g)?;
        let info = component_info(&part);
        let eps = SignCharacter::trivial_for(&part);
        let l = arthur_core::PacketLabel::new(phi.clone(), eps, g)?;

        out.check(
            "one-factor normalization sign",
            repro,
            beta_l(&phi.as_l_kind()?, &g)? == Sign::Plus,
            "expected +1".into(),
        );
        out.check(
            "member normalization sign",
            repro,
            arthur_core::beta_rep(&l)? == Sign::Plus,
            "expected +1 on the trivial member".into(),
        );
        out.check(
            "distinguished element is central",
            repro,
            info.e_psi.is_trivial(),
            "expected a trivial distinguished element".into(),
        );
        let mw = mw_character_closed(&phi, &g)?;
        let chi_key = mw
            .entries()
            .iter()
            .find(|(k, _)| k.label == "chi")
            .map(|(_, v)| *v);
        out.check(
            "correction character value",
            repro,
            chi_key == Some(Sign::Minus),
            format!("expected -1 on the doubled summand, got {:?}", chi_key),
        );
        let cmp = compare_duality(&l)?;
        out.check(
            "transport comparison",
            repro,
            cmp.character_contradiction && !cmp.sign_contradiction,
            format!(
                "expected a character contradiction without a sign contradiction, got {} / {}",
                cmp.character_contradiction, cmp.sign_contradiction
            ),
        );
        let (_, dual_eps) = arthur_core::az_dual_label(&l)?;
        out.check(
            "dual of the trivial member",
            repro,
            dual_eps.values() == [Sign::Minus, Sign::Plus],
            format!(
                "expected (-,+), got {}",
                crate::out::char_positional(&dual_eps)
            ),
        );
        out.check(
            "duality product",
            repro,
            duality_sign_product(&l)? == Sign::Plus,
            "expected +1".into(),
        );
        Ok(())
    };
    if let Err(e) = run() {
        out.fail("example evaluates", repro.into(), format!("{}", e));
    }
}

/// On the split rank-one odd orthogonal group, the deformation parameter of
/// the trivial representation: the two normalization signs disagree while
/// the correction character is trivial.
fn odd_orthogonal_rank_one(out: &mut SuiteOutcome) {
    let repro = "SO(3,split): one[1,O]@S(2)xS(1)";
    out.instances += 1;
    let mut run = || -> Result<(), arthur_core::Error> {
        let (g, phi) = parse_input(repro)?;
        let part = validate_for_group(&phi, &g)?;
        let eps = SignCharacter::trivial_for(&part);
        let l = arthur_core::PacketLabel::new(phi.clone(), eps, g)?;
        let psi = phi.hat();

        out.check(
            "one-factor normalization sign",
            repro,
            beta_l(&phi.as_l_kind()?, &g)? == Sign::Minus,
            "expected -1 when read as a one-factor parameter".into(),
        );
        out.check(
            "two-factor normalization sign",
            repro,
            beta_phi_psi(&psi, &g)? == Sign::Plus,
            "expected +1 through the associated one-factor parameter".into(),
        );
        out.check(
            "correction character is trivial",
            repro,
            mw_character_closed(&psi, &g)?.is_trivial(),
            "expected the trivial correction character".into(),
        );
        let cmp = compare_duality(&l)?;
        out.check(
            "transport comparison",
            repro,
            cmp.sign_contradiction && !cmp.character_contradiction,
            format!(
                "expected a sign contradiction without a character contradiction, got {} / {}",
                cmp.sign_contradiction, cmp.character_contradiction
            ),
        );
        out.check(
            "duality product",
            repro,
            duality_sign_product(&l)? == Sign::Plus,
            "expected +1".into(),
        );
        // the inner form carries the other member; its product also closes
        let (gi, phii) = parse_input("SO(3,inner): one[1,O]@S(2)xS(1)")?;
        let pi = validate_for_group(&phii, &gi)?;
        let li = arthur_core::PacketLabel::new(
            phii,
            SignCharacter::positional_for(&pi, &[Sign::Minus])?,
            gi,
        )?;
        out.check(
            "duality product on the inner form",
            repro,
            duality_sign_product(&li)? == Sign::Plus,
            "expected +1 on the inner-form member".into(),
        );
        Ok(())
    };
    if let Err(e) = run() {
        out.fail("example evaluates", repro.into(), format!("{}", e));
    }
}

// --------------------------------------------------------------------------
// randomized suites
// --------------------------------------------------------------------------

/// Run all randomized suites sequentially from one seeded stream.
pub fn run_random_suites(cfg: &SuiteConfig) -> Vec<SuiteOutcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    vec![
        endoscopic_identity(&mut rng, cfg),
        mw_two_definitions(&mut rng, cfg),
        mw_membership(&mut rng, cfg),
        duality_product(&mut rng, cfg),
        beta_closed_form(&mut rng, cfg),
        beta_discrete_oracle(&mut rng, cfg),
        supercuspidal_chain(&mut rng, cfg),
        beta_multiplicativity(&mut rng, cfg),
        generic_dual(&mut rng, cfg),
    ]
}

/// The product of normalization signs over an endoscopic decomposition
/// equals the pairing of the correction character with the image of the
/// element — for every preimage and for every legal split hint.
fn endoscopic_identity(rng: &mut ChaCha8Rng, cfg: &SuiteConfig) -> SuiteOutcome {
    let mut out = SuiteOutcome::new("endoscopic-identity");
    for _ in 0..cfg.count {
        out.instances += 1;
        let (g, psi, s) = element(rng, cfg);
        let base = param_repro(&g, &psi);
        let run = |out: &mut SuiteOutcome| -> Result<(), arthur_core::Error> {
            let part = validate_for_group(&psi, &g)?;
            let expected = pair(
                &mw_character_closed(&psi, &g)?,
                &image_in_component_group(&s, &part)?,
            )?;
            let s2 = second_preimage(&psi, &s);
            if s2 != s {
                out.bump("distinct second preimages");
            }
            for (tag, elem) in [("given", &s), ("second", &s2)] {
                let repro = format!("{} --element {}", base, elem);
                let datum = endoscopic_datum(&psi, &g, elem, &SplitHints::default())?;
                let mut hint_list = vec![SplitHints::default()];
                let mut qs = SplitHints::default();
                if let Some((f, _)) = &datum.plus {
                    if f.family == Family::SOEven {
                        qs.plus = Some(FormFlag::QuasiSplit);
                    }
                }
                if let Some((f, _)) = &datum.minus {
                    if f.family == Family::SOEven {
                        qs.minus = Some(FormFlag::QuasiSplit);
                    }
                }
                if qs != SplitHints::default() {
                    out.bump("hinted variants");
                    hint_list.push(qs);
                }
                for hints in &hint_list {
                    let got = endoscopic_sign_product(&psi, &g, elem, hints)?;
                    out.check(
                        "endoscopic sign identity",
                        &repro,
                        got == expected,
                        format!(
                            "{} preimage, hints {:?}: product {} but pairing {}",
                            tag,
                            hints,
                            got.as_i8(),
                            expected.as_i8()
                        ),
                    );
                }
            }
            Ok(())
        };
        if let Err(e) = run(&mut out) {
            out.fail("endoscopic datum evaluates", base, format!("{}", e));
        }
    }
    out
}

/// The closed form of the correction character agrees with the order-based
/// recipe under both admissible orders.
fn mw_two_definitions(rng: &mut ChaCha8Rng, cfg: &SuiteConfig) -> SuiteOutcome {
    let mut out = SuiteOutcome::new("mw-two-definitions");
    for _ in 0..cfg.count {
        out.instances += 1;
        let (g, psi) = anti_tempered_gp(rng, cfg);
        let repro = param_repro(&g, &psi);
        let run = |out: &mut SuiteOutcome| -> Result<(), arthur_core::Error> {
            let closed = mw_character_closed(&psi, &g)?;
            let canonical = mw_character_xu(&psi, &g, OrderVariant::Canonical)?;
            let alternative = mw_character_xu(&psi, &g, OrderVariant::Alternative)?;
            out.check(
                "closed form matches the canonical order",
                &repro,
                closed == canonical,
                format!("closed {} vs ordered {}", closed, canonical),
            );
            out.check(
                "order independence",
                &repro,
                canonical == alternative,
                format!("{} vs {}", canonical, alternative),
            );
            Ok(())
        };
        if let Err(e) = run(&mut out) {
            out.fail("correction character evaluates", repro, format!("{}", e));
        }
    }
    out
}

/// Membership identities of the correction character: it pairs trivially
/// with the image of -1, evaluates to +1 at the distinguished element, and
/// is +1 on every even-sized deformation slot.
fn mw_membership(rng: &mut ChaCha8Rng, cfg: &SuiteConfig) -> SuiteOutcome {
    let mut out = SuiteOutcome::new("mw-membership");
    for _ in 0..cfg.count {
        out.instances += 1;
        let (g, psi) = anti_tempered_gp(rng, cfg);
        let repro = param_repro(&g, &psi);
        let run = |out: &mut SuiteOutcome| -> Result<(), arthur_core::Error> {
            let part = validate_for_group(&psi, &g)?;
            let info = component_info(&part);
            let mw = mw_character_closed(&psi, &g)?;
            out.check(
                "pairs trivially with the central image",
                &repro,
                pair(&mw, &info.e0)? == Sign::Plus,
                "expected pairing +1".into(),
            );
            out.check(
                "evaluates to +1 at the distinguished element",
                &repro,
                eval_at_s_psi(&mw, &info)? == Sign::Plus,
                "expected value +1".into(),
            );
            let even_ok = mw
                .entries()
                .iter()
                .all(|(k, v)| k.b % 2 == 1 || *v == Sign::Plus);
            out.check(
                "trivial on even-sized slots",
                &repro,
                even_ok,
                format!("character {}", mw),
            );
            Ok(())
        };
        if let Err(e) = run(&mut out) {
            out.fail("correction character evaluates", repro, format!("{}", e));
        }
    }
    out
}

/// The duality sign product closes to +1 on every packet label, across
/// forms and reduction cases.
fn duality_product(rng: &mut ChaCha8Rng, cfg: &SuiteConfig) -> SuiteOutcome {
    let mut out = SuiteOutcome::new("duality-product");
    for _ in 0..cfg.count {
        out.instances += 1;
        let l = tempered_label(rng, cfg);
        let repro = label_repro(&l);
        if l.form().form == FormFlag::Inner {
            out.bump("inner-form labels");
        }
        let run = |out: &mut SuiteOutcome| -> Result<(), arthur_core::Error> {
            let chain = reduction_chain(&l)?;
            for step in &chain {
                match step.case {
                    ReductionCase::LowerIsolated { .. } => out.bump("isolated-top steps"),
                    ReductionCase::RemoveAdjacent { .. } => out.bump("adjacent-pair steps"),
                    ReductionCase::RemoveEvenBottom { .. } => out.bump("bottom-removal steps"),
                    ReductionCase::SplitMultiplicities => out.bump("multiplicity splits"),
                }
            }
            let product = duality_sign_product(&l)?;
            out.check(
                "duality product",
                &repro,
                product == Sign::Plus,
                format!("product {}", product.as_i8()),
            );
            Ok(())
        };
        if let Err(e) = run(&mut out) {
            out.fail("label evaluates", repro, format!("{}", e));
        }
    }
    out
}

/// The closed form of the two-factor normalization sign agrees with the
/// spread-out computation on anti-tempered parameters.
fn beta_closed_form(rng: &mut ChaCha8Rng, cfg: &SuiteConfig) -> SuiteOutcome {
    let mut out = SuiteOutcome::new("beta-closed-form");
    for _ in 0..cfg.count {
        out.instances += 1;
        let (g, psi) = anti_tempered_mixed(rng, cfg);
        let repro = param_repro(&g, &psi);
        let run = |out: &mut SuiteOutcome| -> Result<(), arthur_core::Error> {
            let closed = beta_phi_psi_closed_form(&psi, &g)?;
            let spread = beta_phi_psi(&psi, &g)?;
            out.check(
                "closed form of the normalization sign",
                &repro,
                closed == spread,
                format!("closed {} vs spread {}", closed.as_i8(), spread.as_i8()),
            );
            Ok(())
        };
        if let Err(e) = run(&mut out) {
            out.fail("normalization sign evaluates", repro, format!("{}", e));
        }
    }
    out
}

/// The pairing-count oracle agrees with the normalization sign of the
/// swapped parameter on discrete tempered parameters.
fn beta_discrete_oracle(rng: &mut ChaCha8Rng, cfg: &SuiteConfig) -> SuiteOutcome {
    let mut out = SuiteOutcome::new("beta-discrete-oracle");
    for _ in 0..cfg.count {
        out.instances += 1;
        let (g, phi) = discrete_tempered(rng, cfg);
        let repro = param_repro(&g, &phi);
        let run = |out: &mut SuiteOutcome| -> Result<(), arthur_core::Error> {
            let oracle = beta_oracle_discrete(&phi, &g)?;
            let direct = beta_phi_psi(&phi.hat(), &g)?;
            out.check(
                "discrete pairing oracle",
                &repro,
                oracle == direct,
                format!("oracle {} vs direct {}", oracle.as_i8(), direct.as_i8()),
            );
            Ok(())
        };
        if let Err(e) = run(&mut out) {
            out.fail("oracle evaluates", repro, format!("{}", e));
        }
    }
    out
}

/// A label is supercuspidal exactly when its reduction chain is empty.
fn supercuspidal_chain(rng: &mut ChaCha8Rng, cfg: &SuiteConfig) -> SuiteOutcome {
    let mut out = SuiteOutcome::new("supercuspidal-chain");
    for _ in 0..cfg.count {
        out.instances += 1;
        let l = tempered_label(rng, cfg);
        let repro = label_repro(&l);
        let run = |out: &mut SuiteOutcome| -> Result<(), arthur_core::Error> {
            let sc = is_supercuspidal(&l)?;
            let chain = reduction_chain(&l)?;
            if sc {
                out.bump("supercuspidal labels");
            }
            out.check(
                "supercuspidal iff the chain is empty",
                &repro,
                sc == chain.is_empty(),
                format!("supercuspidal {} but {} steps", sc, chain.len()),
            );
            Ok(())
        };
        if let Err(e) = run(&mut out) {
            out.fail("label evaluates", repro, format!("{}", e));
        }
    }
    out
}

/// Splitting a dual pair off a one-factor parameter multiplies the
/// normalization sign by the general linear sign of the pair.
fn beta_multiplicativity(rng: &mut ChaCha8Rng, cfg: &SuiteConfig) -> SuiteOutcome {
    let mut out = SuiteOutcome::new("beta-multiplicativity");
    for _ in 0..cfg.count {
        out.instances += 1;
        let l = tempered_label(rng, cfg);
        let g0 = *l.form();
        let tau = random_gl_block(rng, cfg, g0.family);
        let repro = format!("{}: {} | block {}", g0, l.phi(), tau);
        let run = |out: &mut SuiteOutcome| -> Result<(), arthur_core::Error> {
            let phi0 = l.phi().as_l_kind()?;
            let mut entries: Vec<(Summand, u32)> = phi0.entries().to_vec();
            entries.extend(tau.entries().iter().cloned());
            entries.extend(tau.dual().entries().iter().cloned());
            let combined = FormalParameter::new(ParamKind::L, entries)?;
            let grown = GroupForm::new(g0.family, g0.space_dim + 2 * tau.dim(), g0.form)?;
            let lhs = beta_l(&combined, &grown)?;
            let rhs = beta_gl(&tau) * beta_l(&phi0, &g0)?;
            out.check(
                "normalization sign is multiplicative",
                &repro,
                lhs == rhs,
                format!("combined {} vs split {}", lhs.as_i8(), rhs.as_i8()),
            );
            Ok(())
        };
        if let Err(e) = run(&mut out) {
            out.fail("split evaluates", repro, format!("{}", e));
        }
    }
    out
}

/// A one-factor general linear block for the multiplicativity suite, drawn
/// from the duality classes the ambient family admits.
fn random_gl_block(rng: &mut ChaCha8Rng, cfg: &SuiteConfig, family: Family) -> FormalParameter {
    use arthur_core::{Exp, Irrep, SdClass};
    const SD: &[(&str, u32, SdClass)] = &[
        ("one", 1, SdClass::O),
        ("chi", 1, SdClass::O),
        ("rho", 2, SdClass::S),
        ("alp", 1, SdClass::N),
        ("bet", 2, SdClass::N),
    ];
    const CONJ: &[(&str, u32, SdClass)] = &[
        ("mu", 1, SdClass::CO),
        ("nu", 1, SdClass::CS),
        ("alp", 1, SdClass::N),
        ("bet", 2, SdClass::N),
    ];
    let pool = if family == Family::U { CONJ } else { SD };
    loop {
        let n = rng.random_range(1..=2);
        let mut entries = Vec::new();
        for _ in 0..n {
            let (label, dim, sd) = pool[rng.random_range(0..pool.len())];
            if dim > cfg.max_rho_dim {
                continue;
            }
            let x = [
                Exp::from(0),
                Exp::new(1, 2),
                Exp::new(-1, 2),
                Exp::from(1),
                Exp::new(1, 4),
            ][rng.random_range(0..5)];
            let a = rng.random_range(1..=3);
            let m = rng.random_range(1..=2);
            entries.push((Summand::new(Irrep::new(label, dim, sd), x, a, 1), m));
        }
        if let Ok(p) = FormalParameter::new(ParamKind::L, entries) {
            if !p.is_empty() {
                return p;
            }
        }
    }
}

/// The dual of a generic representation: no deformation factor remains,
/// reassembly matches the swap of the full parameter, and the peeling
/// chain reproduces the standard-module shape.
fn generic_dual(rng: &mut ChaCha8Rng, cfg: &SuiteConfig) -> SuiteOutcome {
    let mut out = SuiteOutcome::new("generic-dual");
    for _ in 0..cfg.count {
        out.instances += 1;
        let d = generic_datum(rng, cfg);
        let repro = crate::dsl::generic_reproducer(&d);
        if d.temp_part().phi().is_empty() {
            out.bump("empty anchors");
        }
        if !d.gl_parts().is_empty() {
            out.bump("data with general linear blocks");
        }
        let run = |out: &mut SuiteOutcome| -> Result<(), arthur_core::Error> {
            let dual = generic_dual_l(&d)?;
            out.check(
                "dual has no deformation factor",
                &repro,
                dual.entries().iter().all(|(s, _)| s.a == 1 && s.b == 1),
                format!("dual {}", dual),
            );
            let mut entries: Vec<(Summand, u32)> = d.temp_part().phi().entries().to_vec();
            for tau in d.gl_parts() {
                entries.extend(tau.entries().iter().cloned());
                entries.extend(tau.dual().entries().iter().cloned());
            }
            let full = FormalParameter::new(ParamKind::Arthur, entries)?;
            out.check(
                "reassembly matches the swapped parameter",
                &repro,
                full.hat().arthur_to_l() == dual,
                format!("dual {} vs reassembled {}", dual, full.hat().arthur_to_l()),
            );
            let phi = d.temp_part().phi();
            let (phi0, phi1) = arthur_core::phi0_phi1_split(phi)?;
            let split_back = phi0.as_l_kind()?.add(&phi1)?.add(&phi1.dual())?;
            out.check(
                "anchor split reassembles to the swapped anchor",
                &repro,
                split_back == phi.hat().arthur_to_l(),
                format!("{} vs {}", split_back, phi.hat().arthur_to_l()),
            );
            let shape = standard_module_shape(phi)?;
            let chain = generic_dual_chain(phi)?;
            let mut a = shape.twists.clone();
            let mut b = chain.clone();
            a.sort();
            b.sort();
            out.check(
                "chain multiset matches the shape",
                &repro,
                a == b,
                format!("{} twists vs {} peels", shape.twists.len(), chain.len()),
            );
            Ok(())
        };
        if let Err(e) = run(&mut out) {
            out.fail("datum evaluates", repro, format!("{}", e));
        }
    }
    out
}

// --------------------------------------------------------------------------
// tests
// --------------------------------------------------------------------------

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples_suite_is_clean() {
        let out = run_examples_suite();
        assert_eq!(out.instances, 2);
        assert!(out.violations.is_empty(), "{:?}", out.violations);
    }

    #[test]
    fn random_suites_are_clean_on_a_small_run() {
        let cfg = SuiteConfig::new(3, 40);
        for out in run_random_suites(&cfg) {
            assert!(
                out.violations.is_empty(),
                "{}: {:?}",
                out.name,
                out.violations
            );
            assert_eq!(out.instances, 40, "{}", out.name);
        }
    }

    #[test]
    fn suites_are_deterministic() {
        let cfg = SuiteConfig::new(9, 25);
        let a = run_random_suites(&cfg);
        let b = run_random_suites(&cfg);
        assert_eq!(a.len(), b.len());
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.name, y.name);
            assert_eq!(x.stats, y.stats);
            assert_eq!(x.instances, y.instances);
        }
    }
}
