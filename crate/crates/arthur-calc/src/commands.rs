//! One handler per subcommand; each parses its inputs, evaluates the owning
//! operations, and fills the common report envelope.

use crate::dsl;
use crate::out::{char_json, char_positional, sign_json, CommandOutput, Violation};
use crate::random::SuiteConfig;
use crate::suites::{run_examples_suite, run_random_suites, SuiteOutcome};
use arthur_core::{
    az_dual_label, beta_l, beta_phi_psi, beta_rep, compare_duality, component_info,
    duality_sign_product, endoscopic_datum, endoscopic_sign_product, eval_at_s_psi,
    exp_to_string, expected_character_count, generic_dual_chain, generic_dual_l,
    image_in_component_group, is_relevant, is_supercuspidal, mw_character_closed,
    mw_character_xu, pair, parse_input, reduction_chain, standard_module_shape,
    validate_for_group, Error, GpEntry, NsdPair, OrderVariant, PacketLabel, ReductionCase, Sign,
    SplitHints,
};
use serde_json::{json, Value};
use std::fmt::Write as _;

fn gp_entry_json(e: &GpEntry) -> Value {
    json!({"summand": e.summand.to_string(), "mult": e.mult})
}

fn nsd_json(q: &NsdPair) -> Value {
    json!({
        "rep": q.rep.to_string(),
        "partner": q.partner.to_string(),
        "mult": q.mult,
    })
}

pub fn classify(input: &str) -> Result<CommandOutput, Error> {
    let (g, p) = parse_input(input)?;
    let part = validate_for_group(&p, &g)?;
    let relevant = is_relevant(&p, &g)?;
    let mut text = String::new();
    let _ = writeln!(text, "group: {}   parameter: {}", g, p);
    let _ = writeln!(
        text,
        "kind: {:?}   dim: {}   tempered: {}   anti-tempered: {}",
        p.kind,
        p.dim(),
        p.is_tempered(),
        p.is_anti_tempered()
    );
    let _ = writeln!(text, "good parity:");
    for e in &part.gp {
        let _ = writeln!(text, "  {} ^{}", e.summand, e.mult);
    }
    if !part.bp.is_empty() {
        let _ = writeln!(text, "opposite parity:");
        for e in &part.bp {
            let _ = writeln!(text, "  {} ^{}", e.summand, e.mult);
        }
    }
    if !part.nsd.is_empty() {
        let _ = writeln!(text, "dual pairs:");
        for q in &part.nsd {
            let _ = writeln!(text, "  {} / {} ^{}", q.rep, q.partner, q.mult);
        }
    }
    let _ = writeln!(
        text,
        "blocks: {}   levi rank: {}   discrete: {}   pure good parity: {}   relevant: {}",
        part.block_count(),
        part.levi_rank(),
        part.is_discrete(),
        part.is_good_parity(),
        relevant
    );
    Ok(CommandOutput {
        text,
        inputs: json!({"input": input, "group": g.to_string(), "parameter": p.to_string()}),
        results: json!({
            "kind": format!("{:?}", p.kind).to_lowercase(),
            "dim": p.dim(),
            "tempered": p.is_tempered(),
            "anti_tempered": p.is_anti_tempered(),
            "gp": part.gp.iter().map(gp_entry_json).collect::<Vec<_>>(),
            "bp": part.bp.iter().map(gp_entry_json).collect::<Vec<_>>(),
            "nsd": part.nsd.iter().map(nsd_json).collect::<Vec<_>>(),
            "block_count": part.block_count(),
            "levi_rank": part.levi_rank(),
            "discrete": part.is_discrete(),
            "good_parity": part.is_good_parity(),
            "relevant": relevant,
        }),
        violations: Vec::new(),
    })
}

pub fn component(input: &str) -> Result<CommandOutput, Error> {
    let (g, p) = parse_input(input)?;
    let part = validate_for_group(&p, &g)?;
    let info = component_info(&part);
    let chars = arthur_core::characters_for_form(&info, &g)?;
    let expected = expected_character_count(&info, &g);
    let mut text = String::new();
    let _ = writeln!(
        text,
        "component group: (Z/2)^{}   order {}   convention: {}",
        info.gp_count,
        info.order_c,
        if info.is_unitary_convention {
            "plain"
        } else {
            "determinant quotient"
        }
    );
    let _ = writeln!(
        text,
        "central image: [{}]   distinguished element: [{}]   determinant character: [{}]",
        char_positional(&info.e0),
        char_positional(&info.e_psi),
        char_positional(&info.eps0)
    );
    let _ = writeln!(text, "characters on this form ({} expected):", expected);
    for c in &chars {
        let _ = writeln!(
            text,
            "  [{}]  {}   value at the distinguished element: {}",
            char_positional(c),
            c,
            eval_at_s_psi(c, &info)?.as_i8()
        );
    }
    Ok(CommandOutput {
        text,
        inputs: json!({"input": input, "group": g.to_string(), "parameter": p.to_string()}),
        results: json!({
            "gp_count": info.gp_count,
            "order": info.order_c.to_string(),
            "unitary_convention": info.is_unitary_convention,
            "e0": char_json(&info.e0),
            "e_psi": char_json(&info.e_psi),
            "eps0": char_json(&info.eps0),
            "expected_count": expected.to_string(),
            "characters": chars
                .iter()
                .map(|c| json!({
                    "positional": char_positional(c),
                    "named": c.to_string(),
                }))
                .collect::<Vec<_>>(),
        }),
        violations: Vec::new(),
    })
}

pub fn signs(input: &str) -> Result<CommandOutput, Error> {
    let (g, p) = parse_input(input)?;
    validate_for_group(&p, &g)?;
    let r_g = g.witt_rank();
    let r_qs = g.quasi_split().witt_rank();
    let e_g = g.kottwitz();
    let beta_two = beta_phi_psi(&p, &g)?;
    let mut text = String::new();
    let _ = writeln!(
        text,
        "r(G) = {}   r(G*) = {}   e(G) = {}",
        r_g,
        r_qs,
        e_g.as_i8()
    );
    let _ = writeln!(
        text,
        "two-factor normalization sign beta(phi_psi) = {}",
        beta_two.as_i8()
    );
    let mut results = json!({
        "witt_rank": r_g,
        "witt_rank_quasi_split": r_qs,
        "kottwitz": sign_json(e_g),
        "beta_phi_psi": sign_json(beta_two),
    });
    if p.is_tempered() {
        let beta_one = beta_l(&p.as_l_kind()?, &g)?;
        let beta_swapped = beta_phi_psi(&p.hat(), &g)?;
        let _ = writeln!(
            text,
            "one-factor normalization sign beta(phi) = {}",
            beta_one.as_i8()
        );
        let _ = writeln!(
            text,
            "two-factor normalization sign of the swap beta(phi_psi-hat) = {}",
            beta_swapped.as_i8()
        );
        results["beta_one_factor"] = sign_json(beta_one);
        results["beta_phi_psi_of_swap"] = sign_json(beta_swapped);
    }
    Ok(CommandOutput {
        text,
        inputs: json!({"input": input, "group": g.to_string(), "parameter": p.to_string()}),
        results,
        violations: Vec::new(),
    })
}

pub fn endoscopy(input: &str, element: Option<&str>, hints: Option<&str>) -> Result<CommandOutput, Error> {
    let (g, psi) = parse_input(input)?;
    let part = validate_for_group(&psi, &g)?;
    let s = match element {
        Some(spec) => dsl::parse_element(spec, &psi)?,
        None => arthur_core::SemisimpleElement::identity(),
    };
    let hints = match hints {
        Some(spec) => dsl::parse_hints(spec)?,
        None => SplitHints::default(),
    };
    let datum = endoscopic_datum(&psi, &g, &s, &hints)?;
    let image = image_in_component_group(&s, &part)?;
    let mw = mw_character_closed(&psi, &g)?;
    let product = endoscopic_sign_product(&psi, &g, &s, &hints)?;
    let pairing = pair(&mw, &image)?;
    let mut violations = Vec::new();
    if product != pairing {
        violations.push(Violation {
            identity: "endoscopic sign identity".into(),
            reproducer: format!("{} --element {}", input, s),
            detail: format!(
                "product {} but pairing {}",
                product.as_i8(),
                pairing.as_i8()
            ),
        });
    }
    let mut text = String::new();
    let _ = writeln!(text, "element: {}", s);
    match &datum.plus {
        Some((f, p)) => {
            let _ = writeln!(text, "plus factor:  {}: {}", f, p);
        }
        None => {
            let _ = writeln!(text, "plus factor:  (zero eigenspace)");
        }
    }
    match &datum.minus {
        Some((f, p)) => {
            let _ = writeln!(text, "minus factor: {}: {}", f, p);
        }
        None => {
            let _ = writeln!(text, "minus factor: (zero eigenspace)");
        }
    }
    for (name, p) in &datum.gl_factors {
        let _ = writeln!(text, "general linear factor at {}: {}", name, p);
    }
    for note in &datum.twist_notes {
        let _ = writeln!(text, "note: {}", note);
    }
    let _ = writeln!(text, "image in the component group: [{}]", char_positional(&image));
    let _ = writeln!(
        text,
        "sign product = {}   pairing with the correction character = {}",
        product.as_i8(),
        pairing.as_i8()
    );
    Ok(CommandOutput {
        text,
        inputs: json!({
            "input": input,
            "group": g.to_string(),
            "parameter": psi.to_string(),
            "element": s.to_string(),
            "hints": format!("{:?}", hints),
        }),
        results: json!({
            "plus": datum.plus.as_ref().map(|(f, p)| json!({"group": f.to_string(), "parameter": p.to_string()})),
            "minus": datum.minus.as_ref().map(|(f, p)| json!({"group": f.to_string(), "parameter": p.to_string()})),
            "gl_factors": datum
                .gl_factors
                .iter()
                .map(|(n, p)| json!({"eigenvalue": n, "parameter": p.to_string()}))
                .collect::<Vec<_>>(),
            "twist_notes": datum.twist_notes,
            "image": char_json(&image),
            "sign_product": sign_json(product),
            "pairing": sign_json(pairing),
        }),
        violations,
    })
}

pub fn mw_character(input: &str) -> Result<CommandOutput, Error> {
    let (g, psi) = parse_input(input)?;
    let closed = mw_character_closed(&psi, &g)?;
    let canonical = mw_character_xu(&psi, &g, OrderVariant::Canonical)?;
    let alternative = mw_character_xu(&psi, &g, OrderVariant::Alternative)?;
    let agree = closed == canonical && canonical == alternative;
    let mut violations = Vec::new();
    if !agree {
        violations.push(Violation {
            identity: "two definitions of the correction character".into(),
            reproducer: input.into(),
            detail: format!(
                "closed {} / canonical order {} / alternative order {}",
                closed, canonical, alternative
            ),
        });
    }
    let mut text = String::new();
    let _ = writeln!(
        text,
        "correction character: [{}]  {}",
        char_positional(&closed),
        closed
    );
    let _ = writeln!(
        text,
        "order-based recipe agrees under both admissible orders: {}",
        agree
    );
    Ok(CommandOutput {
        text,
        inputs: json!({"input": input, "group": g.to_string(), "parameter": psi.to_string()}),
        results: json!({
            "closed": char_json(&closed),
            "ordered_canonical": char_json(&canonical),
            "ordered_alternative": char_json(&alternative),
            "positional": char_positional(&closed),
            "agree": agree,
        }),
        violations,
    })
}

fn case_name(case: &ReductionCase) -> String {
    match case {
        ReductionCase::SplitMultiplicities => "split multiplicities".into(),
        ReductionCase::LowerIsolated { label } => format!("lower isolated top {}", label),
        ReductionCase::RemoveAdjacent { label } => format!("remove adjacent pair {}", label),
        ReductionCase::RemoveEvenBottom { label } => format!("remove even bottom {}", label),
    }
}

pub fn dual(input: &str, char_spec: &str) -> Result<CommandOutput, Error> {
    let (g, phi) = parse_input(input)?;
    let part = validate_for_group(&phi, &g)?;
    let eps = dsl::parse_char(char_spec, &part)?;
    let l = PacketLabel::new(phi, eps, g)?;
    let brep = beta_rep(&l)?;
    let chain = reduction_chain(&l)?;
    let product = duality_sign_product(&l)?;
    let supercuspidal = is_supercuspidal(&l)?;
    let mut violations = Vec::new();
    if product != Sign::Plus {
        violations.push(Violation {
            identity: "duality product".into(),
            reproducer: format!("{} --char {}", input, char_positional(l.eps())),
            detail: format!("product {}", product.as_i8()),
        });
    }
    let (dual_phi, dual_eps) = az_dual_label(&l)?;
    let mw = mw_character_closed(&l.phi().hat(), l.form())?;
    let mut text = String::new();
    let _ = writeln!(
        text,
        "label: {}: {} [{}]",
        l.form(),
        l.phi(),
        char_positional(l.eps())
    );
    let _ = writeln!(
        text,
        "member normalization sign: {}   supercuspidal: {}",
        brep.as_i8(),
        supercuspidal
    );
    for (i, step) in chain.iter().enumerate() {
        let _ = writeln!(
            text,
            "step {}: {}   splits off sign {}   rank consumed {}   rest: {}: {} [{}]",
            i + 1,
            case_name(&step.case),
            step.gl_sign.as_i8(),
            step.rank_consumed,
            step.next.form(),
            step.next.phi(),
            char_positional(step.next.eps())
        );
    }
    let _ = writeln!(text, "duality product: {}", product.as_i8());
    let _ = writeln!(
        text,
        "correction character: [{}]",
        char_positional(&mw)
    );
    let _ = writeln!(
        text,
        "dual label: {}: {} [{}]",
        l.form(),
        dual_phi,
        char_positional(&dual_eps)
    );
    let _ = writeln!(text, "dual character: {}", dual_eps);
    Ok(CommandOutput {
        text,
        inputs: json!({
            "input": input,
            "group": l.form().to_string(),
            "parameter": l.phi().to_string(),
            "character": char_positional(l.eps()),
        }),
        results: json!({
            "beta_member": sign_json(brep),
            "supercuspidal": supercuspidal,
            "chain": chain
                .iter()
                .map(|s| json!({
                    "case": case_name(&s.case),
                    "gl_sign": sign_json(s.gl_sign),
                    "rank_consumed": s.rank_consumed,
                    "next_form": s.next.form().to_string(),
                    "next_parameter": s.next.phi().to_string(),
                    "next_character": char_positional(s.next.eps()),
                }))
                .collect::<Vec<_>>(),
            "duality_product": sign_json(product),
            "correction": char_json(&mw),
            "dual_parameter": dual_phi.to_string(),
            "dual_character": char_positional(&dual_eps),
            "dual_character_named": char_json(&dual_eps),
        }),
        violations,
    })
}

pub fn generic_dual(input: &str) -> Result<CommandOutput, Error> {
    let (g, d) = dsl::parse_generic(input)?;
    let dual = generic_dual_l(&d)?;
    let phi = d.temp_part().phi();
    let shape = standard_module_shape(phi)?;
    let chain = generic_dual_chain(phi)?;
    let mut a = shape.twists.clone();
    let mut b = chain.clone();
    a.sort();
    b.sort();
    let mut violations = Vec::new();
    if a != b {
        violations.push(Violation {
            identity: "chain multiset matches the shape".into(),
            reproducer: dsl::generic_reproducer(&d),
            detail: format!("{} twists vs {} peels", shape.twists.len(), chain.len()),
        });
    }
    let mut text = String::new();
    let _ = writeln!(text, "ambient: {}   assembled: {}", g, d.assembled());
    let _ = writeln!(text, "dual parameter: {}", dual);
    let _ = writeln!(text, "standard-module shape:");
    for t in &shape.twists {
        let _ = writeln!(
            text,
            "  {} twisted by {} ^{}",
            t.rho,
            exp_to_string(t.exponent),
            t.mult
        );
    }
    let _ = writeln!(
        text,
        "  anchor: {} [{}]",
        shape.anchor,
        char_positional(&shape.anchor_character)
    );
    let _ = writeln!(text, "peeling chain:");
    for t in &chain {
        let _ = writeln!(
            text,
            "  {} twisted by {} ^{}",
            t.rho,
            exp_to_string(t.exponent),
            t.mult
        );
    }
    Ok(CommandOutput {
        text,
        inputs: json!({
            "input": input,
            "group": g.to_string(),
            "blocks": d.gl_parts().iter().map(|p| p.to_string()).collect::<Vec<_>>(),
            "anchor": phi.to_string(),
        }),
        results: json!({
            "dual": dual.to_string(),
            "shape": shape
                .twists
                .iter()
                .map(|t| json!({
                    "rho": t.rho.to_string(),
                    "exponent": exp_to_string(t.exponent),
                    "mult": t.mult,
                }))
                .collect::<Vec<_>>(),
            "shape_anchor": shape.anchor.to_string(),
            "shape_anchor_character": char_positional(&shape.anchor_character),
            "chain": chain
                .iter()
                .map(|t| json!({
                    "rho": t.rho.to_string(),
                    "exponent": exp_to_string(t.exponent),
                    "mult": t.mult,
                }))
                .collect::<Vec<_>>(),
        }),
        violations,
    })
}

pub fn compare_arthur(input: &str, char_spec: &str) -> Result<CommandOutput, Error> {
    let (g, phi) = parse_input(input)?;
    let part = validate_for_group(&phi, &g)?;
    let eps = dsl::parse_char(char_spec, &part)?;
    let l = PacketLabel::new(phi, eps, g)?;
    let cmp = compare_duality(&l)?;
    let mut violations = Vec::new();
    if cmp.corrected_sign != Sign::Plus {
        violations.push(Violation {
            identity: "corrected duality product".into(),
            reproducer: format!("{} --char {}", input, char_positional(l.eps())),
            detail: format!("product {}", cmp.corrected_sign.as_i8()),
        });
    }
    let mut text = String::new();
    let _ = writeln!(
        text,
        "label: {}: {} [{}]",
        l.form(),
        l.phi(),
        char_positional(l.eps())
    );
    let _ = writeln!(text, "swapped parameter: {}", cmp.psi);
    let _ = writeln!(
        text,
        "uncorrected transport: [{}]   corrected transport: [{}]   correction: [{}]",
        char_positional(&cmp.naive_character),
        char_positional(&cmp.corrected_character),
        char_positional(&cmp.mw)
    );
    let _ = writeln!(
        text,
        "uncorrected duality product: {}   corrected duality product: {}",
        cmp.naive_sign.as_i8(),
        cmp.corrected_sign.as_i8()
    );
    let _ = writeln!(
        text,
        "character contradiction: {}   sign contradiction: {}",
        cmp.character_contradiction, cmp.sign_contradiction
    );
    if cmp.character_contradiction || cmp.sign_contradiction {
        let _ = writeln!(
            text,
            "the uncorrected bookkeeping fails on this label; the corrected transport closes"
        );
    }
    Ok(CommandOutput {
        text,
        inputs: json!({
            "input": input,
            "group": l.form().to_string(),
            "parameter": l.phi().to_string(),
            "character": char_positional(l.eps()),
        }),
        results: json!({
            "swapped_parameter": cmp.psi.to_string(),
            "naive_character": char_json(&cmp.naive_character),
            "corrected_character": char_json(&cmp.corrected_character),
            "correction": char_json(&cmp.mw),
            "naive_sign": sign_json(cmp.naive_sign),
            "corrected_sign": sign_json(cmp.corrected_sign),
            "character_contradiction": cmp.character_contradiction,
            "sign_contradiction": cmp.sign_contradiction,
        }),
        violations,
    })
}

fn suite_json(s: &SuiteOutcome) -> Value {
    json!({
        "suite": s.name,
        "instances": s.instances,
        "stats": s.stats.iter().map(|(n, c)| json!({"name": n, "count": c})).collect::<Vec<_>>(),
        "violations": s.violations.len(),
    })
}

pub fn verify(suite: &str, cfg: &SuiteConfig) -> Result<CommandOutput, Error> {
    let outcomes = match suite {
        "examples" => vec![run_examples_suite()],
        "random" => run_random_suites(cfg),
        other => {
            return Err(Error::Validation(format!(
                "unknown suite '{}'; expected 'examples' or 'random'",
                other
            )))
        }
    };
    let mut text = String::new();
    let mut violations = Vec::new();
    for s in &outcomes {
        let stats = s
            .stats
            .iter()
            .map(|(n, c)| format!("{} {}", n, c))
            .collect::<Vec<_>>()
            .join(", ");
        let _ = writeln!(
            text,
            "{}: {} instance(s){}{} — {}",
            s.name,
            s.instances,
            if stats.is_empty() { "" } else { "; " },
            stats,
            if s.violations.is_empty() {
                "ok".to_string()
            } else {
                format!("{} violation(s)", s.violations.len())
            }
        );
        violations.extend(s.violations.iter().cloned());
    }
    Ok(CommandOutput {
        text,
        inputs: json!({
            "suite": suite,
            "seed": cfg.seed,
            "count": cfg.count,
            "bounds": {
                "max_dim": cfg.max_dim,
                "max_gp": cfg.max_gp,
                "max_rho_dim": cfg.max_rho_dim,
                "max_a": cfg.max_a,
                "max_b": cfg.max_b,
            },
        }),
        results: Value::Array(outcomes.iter().map(suite_json).collect()),
        violations,
    })
}
