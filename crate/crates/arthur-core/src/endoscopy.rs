//! Semisimple elements in the centralizer of a parameter, the endoscopic
//! decomposition they induce, and the correction character comparing the
//! two normalizations of the anti-tempered duality — in closed form and by
//! the order-based recipe, which must agree.

use crate::classify::{GpPartition, NsdPair};
use crate::component::{GpKey, SignCharacter};
use crate::group::{Family, FormFlag, GroupForm};
use crate::param::{FormalParameter, ParamKind, Summand};
use crate::sign::Sign;
use crate::signs::{alpha, beta_from_classification, beta_gl, beta_phi_psi, LeviFactor};
use crate::Error;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

/// An eigenvalue of a semisimple element on one multiplicity space: +1, -1,
/// or an abstract unit `lambda` (not equal to its inverse), which always
/// travels together with its inverse.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Eig {
    One,
    MinusOne,
    Lam(String),
    LamInv(String),
}

impl Eig {
    pub fn inverse(&self) -> Eig {
        match self {
            Eig::One => Eig::One,
            Eig::MinusOne => Eig::MinusOne,
            Eig::Lam(n) => Eig::LamInv(n.clone()),
            Eig::LamInv(n) => Eig::Lam(n.clone()),
        }
    }
}

impl core::fmt::Display for Eig {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            Eig::One => f.write_str("+1"),
            Eig::MinusOne => f.write_str("-1"),
            Eig::Lam(n) => f.write_str(n),
            Eig::LamInv(n) => write!(f, "{}inv", n),
        }
    }
}

/// A semisimple element of the centralizer of a parameter, recorded as an
/// eigenvalue multiset on the multiplicity space of each summand.  Summands
/// not mentioned act as the identity.  For a dual pair only the
/// representative may be specified; the partner's eigenvalues are the
/// inverses, implicitly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SemisimpleElement {
    entries: Vec<(Summand, Vec<(Eig, u32)>)>,
}

impl SemisimpleElement {
    pub fn new(entries: Vec<(Summand, Vec<(Eig, u32)>)>) -> Result<SemisimpleElement, Error> {
        let mut entries: Vec<(Summand, Vec<(Eig, u32)>)> = entries
            .into_iter()
            .map(|(s, eigs)| {
                let mut eigs: Vec<(Eig, u32)> = eigs.into_iter().filter(|(_, m)| *m > 0).collect();
                eigs.sort_by(|a, b| a.0.cmp(&b.0));
                let mut merged: Vec<(Eig, u32)> = Vec::new();
                for (e, m) in eigs {
                    match merged.last_mut() {
                        Some((p, pm)) if *p == e => *pm += m,
                        _ => merged.push((e, m)),
                    }
                }
                (s, merged)
            })
            .collect();
        entries.sort_by(|a, b| a.0.cmp(&b.0));
        for w in entries.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(Error::Validation(format!(
                    "summand {} listed twice in the element",
                    w[0].0
                )));
            }
        }
        Ok(SemisimpleElement { entries })
    }

    /// The identity element.
    pub fn identity() -> SemisimpleElement {
        SemisimpleElement {
            entries: Vec::new(),
        }
    }

    pub fn entries(&self) -> &[(Summand, Vec<(Eig, u32)>)] {
        &self.entries
    }
}

impl core::fmt::Display for SemisimpleElement {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        if self.entries.is_empty() {
            return f.write_str("identity");
        }
        for (i, (s, eigs)) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{}@S({})xS({}):", s.rho.label, s.a, s.b)?;
            if s.x != crate::param::Exp::from_integer(0) {
                // the display key must distinguish shifted summands
                write!(f, "|{}", crate::param::exp_to_string(s.x))?;
            }
            for (e, m) in eigs {
                write!(f, " {}^{}", e, m)?;
            }
        }
        Ok(())
    }
}

/// Per-summand eigenvalue counts after validation against a partition.
#[derive(Debug, Clone)]
struct EigCounts {
    plus: u32,
    minus: u32,
    /// (name, multiplicity of lambda, multiplicity of lambda-inverse)
    lambdas: Vec<(String, u32, u32)>,
}

impl EigCounts {
    fn identity(m: u32) -> EigCounts {
        EigCounts {
            plus: m,
            minus: 0,
            lambdas: Vec::new(),
        }
    }

    fn total(&self) -> u32 {
        self.plus + self.minus + self.lambdas.iter().map(|(_, a, b)| a + b).sum::<u32>()
    }

    fn from_list(eigs: &[(Eig, u32)]) -> EigCounts {
        let mut out = EigCounts {
            plus: 0,
            minus: 0,
            lambdas: Vec::new(),
        };
        for (e, m) in eigs {
            match e {
                Eig::One => out.plus += m,
                Eig::MinusOne => out.minus += m,
                Eig::Lam(n) => match out.lambdas.iter_mut().find(|(name, _, _)| name == n) {
                    Some(slot) => slot.1 += m,
                    None => out.lambdas.push((n.clone(), *m, 0)),
                },
                Eig::LamInv(n) => match out.lambdas.iter_mut().find(|(name, _, _)| name == n) {
                    Some(slot) => slot.2 += m,
                    None => out.lambdas.push((n.clone(), 0, *m)),
                },
            }
        }
        out.lambdas.sort_by(|a, b| a.0.cmp(&b.0));
        out
    }
}

/// The element resolved against a partition: counts on every good-parity
/// and bad-parity summand and on every dual-pair representative.
#[derive(Debug)]
struct ResolvedElement {
    gp: Vec<(Summand, u32, EigCounts)>,
    bp: Vec<(Summand, u32, EigCounts)>,
    nsd: Vec<(NsdPair, EigCounts)>,
}

fn resolve_element(
    s: &SemisimpleElement,
    part: &GpPartition,
) -> Result<ResolvedElement, Error> {
    // every entry of the element must name a summand of the parameter
    for (key, _) in &s.entries {
        let in_gp = part.gp.iter().any(|e| e.summand == *key);
        let in_bp = part.bp.iter().any(|e| e.summand == *key);
        let in_rep = part.nsd.iter().any(|q| q.rep == *key);
        if !(in_gp || in_bp || in_rep) {
            if part.nsd.iter().any(|q| q.partner == *key) {
                return Err(Error::Validation(format!(
                    "summand {} is the partner of a dual pair; specify the eigenvalues on its representative instead",
                    key
                )));
            }
            return Err(Error::Validation(format!(
                "element mentions summand {} which the parameter does not contain",
                key
            )));
        }
    }
    let lookup = |key: &Summand| -> Option<EigCounts> {
        s.entries
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, eigs)| EigCounts::from_list(eigs))
    };

    let mut gp = Vec::new();
    for e in &part.gp {
        let c = lookup(&e.summand).unwrap_or_else(|| EigCounts::identity(e.mult));
        if c.total() != e.mult {
            return Err(Error::Validation(format!(
                "eigenvalues on {} sum to {} but the multiplicity is {}",
                e.summand,
                c.total(),
                e.mult
            )));
        }
        for (name, l, linv) in &c.lambdas {
            if l != linv {
                return Err(Error::Validation(format!(
                    "on the self-dual summand {} the eigenvalue {} must appear as often as its inverse ({} vs {})",
                    e.summand, name, l, linv
                )));
            }
        }
        gp.push((e.summand.clone(), e.mult, c));
    }
    let mut bp = Vec::new();
    for e in &part.bp {
        let c = lookup(&e.summand).unwrap_or_else(|| EigCounts::identity(e.mult));
        if c.total() != e.mult {
            return Err(Error::Validation(format!(
                "eigenvalues on {} sum to {} but the multiplicity is {}",
                e.summand,
                c.total(),
                e.mult
            )));
        }
        for (name, l, linv) in &c.lambdas {
            if l != linv {
                return Err(Error::Validation(format!(
                    "on the self-dual summand {} the eigenvalue {} must appear as often as its inverse ({} vs {})",
                    e.summand, name, l, linv
                )));
            }
        }
        if c.plus % 2 != 0 || c.minus % 2 != 0 {
            return Err(Error::Validation(format!(
                "on the bad-parity summand {} the eigenvalues +1 and -1 need even multiplicity",
                e.summand
            )));
        }
        bp.push((e.summand.clone(), e.mult, c));
    }
    let mut nsd = Vec::new();
    for q in &part.nsd {
        let c = lookup(&q.rep).unwrap_or_else(|| EigCounts::identity(q.mult));
        if c.total() != q.mult {
            return Err(Error::Validation(format!(
                "eigenvalues on {} sum to {} but the multiplicity is {}",
                q.rep,
                c.total(),
                q.mult
            )));
        }
        nsd.push((q.clone(), c));
    }
    Ok(ResolvedElement { gp, bp, nsd })
}

/// Optional rationality flags for even orthogonal factors of an endoscopic
/// decomposition (the eigenspace dimensions do not determine them).
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SplitHints {
    pub plus: Option<FormFlag>,
    pub minus: Option<FormFlag>,
}

/// The decomposition induced by a semisimple element: classical factors on
/// the +1 and -1 eigenspaces (absent when the eigenspace is zero), one
/// general linear factor per eigenvalue pair, and notes about the
/// character twists the transfer implicitly carries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EndoscopicDatum {
    pub plus: Option<(GroupForm, FormalParameter)>,
    pub minus: Option<(GroupForm, FormalParameter)>,
    /// (eigenvalue name, parameter on the corresponding GL factor)
    pub gl_factors: Vec<(String, FormalParameter)>,
    pub twist_notes: Vec<String>,
}

fn factor_param(
    resolved: &ResolvedElement,
    pick: &dyn Fn(&EigCounts) -> u32,
    pick_inv: &dyn Fn(&EigCounts) -> u32,
) -> FormalParameter {
    let mut entries: Vec<(Summand, u32)> = Vec::new();
    for (s, _, c) in resolved.gp.iter().chain(&resolved.bp) {
        entries.push((s.clone(), pick(c)));
    }
    for (q, c) in &resolved.nsd {
        entries.push((q.rep.clone(), pick(c)));
        entries.push((q.partner.clone(), pick_inv(c)));
    }
    FormalParameter::from_parts(ParamKind::Arthur, entries)
}

fn eigenspace_form(
    family: Family,
    d: u32,
    hint: Option<FormFlag>,
    which: &str,
) -> Result<Option<GroupForm>, Error> {
    if d == 0 {
        if hint.is_some() {
            return Err(Error::Validation(format!(
                "a split hint was supplied for the {} factor, but that eigenspace is zero",
                which
            )));
        }
        return Ok(None);
    }
    let (fam, flag) = match family {
        Family::Sp => {
            if d % 2 == 1 {
                (Family::Sp, FormFlag::Split)
            } else {
                (Family::SOEven, hint.unwrap_or(FormFlag::Split))
            }
        }
        Family::SOOdd => {
            debug_assert!(d % 2 == 0);
            (Family::SOOdd, FormFlag::Split)
        }
        Family::SOEven => {
            if d % 2 == 0 {
                (Family::SOEven, hint.unwrap_or(FormFlag::Split))
            } else {
                (Family::Sp, FormFlag::Split)
            }
        }
        Family::U => (Family::U, FormFlag::Split),
    };
    if hint.is_some() && fam != Family::SOEven {
        return Err(Error::Validation(format!(
            "a split hint was supplied for the {} factor, but it is not an even orthogonal group",
            which
        )));
    }
    if let Some(h) = hint {
        if h == FormFlag::Inner {
            return Err(Error::Validation(
                "factors of an endoscopic decomposition are quasi-split; hint must be split or qs"
                    .into(),
            ));
        }
    }
    Ok(Some(GroupForm::raw(fam, GroupForm::from_dual_dim(fam, d, flag).space_dim, flag)))
}

/// Compute the endoscopic decomposition attached to a parameter and a
/// semisimple element of its centralizer.
pub fn endoscopic_datum(
    psi: &FormalParameter,
    g: &GroupForm,
    s: &SemisimpleElement,
    hints: &SplitHints,
) -> Result<EndoscopicDatum, Error> {
    let part = crate::classify::validate_for_group(psi, g)?;
    let resolved = resolve_element(s, &part)?;

    let psi_plus = factor_param(&resolved, &|c| c.plus, &|c| c.plus);
    let psi_minus = factor_param(&resolved, &|c| c.minus, &|c| c.minus);

    // one GL factor per eigenvalue name
    let mut names: Vec<String> = Vec::new();
    for (_, _, c) in resolved.gp.iter().chain(&resolved.bp) {
        for (n, _, _) in &c.lambdas {
            if !names.contains(n) {
                names.push(n.clone());
            }
        }
    }
    for (_, c) in &resolved.nsd {
        for (n, _, _) in &c.lambdas {
            if !names.contains(n) {
                names.push(n.clone());
            }
        }
    }
    names.sort();
    let mut gl_factors = Vec::new();
    for name in names {
        let lam_of = |c: &EigCounts| -> u32 {
            c.lambdas
                .iter()
                .find(|(n, _, _)| *n == name)
                .map(|(_, l, _)| *l)
                .unwrap_or(0)
        };
        let inv_of = |c: &EigCounts| -> u32 {
            c.lambdas
                .iter()
                .find(|(n, _, _)| *n == name)
                .map(|(_, _, l)| *l)
                .unwrap_or(0)
        };
        let p = factor_param(&resolved, &lam_of, &inv_of);
        debug_assert!(!p.is_empty());
        gl_factors.push((name, p));
    }

    let d_plus = psi_plus.dim();
    let d_minus = psi_minus.dim();
    let gl_dim: u32 = gl_factors.iter().map(|(_, p)| p.dim()).sum();
    assert_eq!(
        d_plus + d_minus + 2 * gl_dim,
        psi.dim(),
        "eigenspace dimensions must add up to the parameter dimension"
    );
    match g.family {
        Family::Sp => assert!(d_plus % 2 + d_minus % 2 == 1),
        Family::SOOdd => assert!(d_plus % 2 == 0 && d_minus % 2 == 0),
        Family::SOEven => assert!(d_plus % 2 == d_minus % 2),
        Family::U => {}
    }

    let plus_form = eigenspace_form(g.family, d_plus, hints.plus, "plus")?;
    let minus_form = eigenspace_form(g.family, d_minus, hints.minus, "minus")?;

    let mut twist_notes = Vec::new();
    if let Some(f) = &plus_form {
        twist_notes.push(twist_note(g, f, d_plus, "plus"));
    }
    if let Some(f) = &minus_form {
        twist_notes.push(twist_note(g, f, d_minus, "minus"));
    }

    Ok(EndoscopicDatum {
        plus: plus_form.map(|f| (f, psi_plus)),
        minus: minus_form.map(|f| (f, psi_minus)),
        gl_factors,
        twist_notes,
    })
}

fn twist_note(g: &GroupForm, factor: &GroupForm, d: u32, which: &str) -> String {
    match g.family {
        Family::U => {
            if (g.space_dim - d) % 2 == 0 {
                format!(
                    "{} factor {}: transfer twisted by a parity-preserving character of the extension",
                    which, factor
                )
            } else {
                format!(
                    "{} factor {}: transfer twisted by a parity-flipping character of the extension",
                    which, factor
                )
            }
        }
        _ => format!(
            "{} factor {}: transfer twisted by the quadratic character of the {} eigenspace discriminant",
            which, factor, which
        ),
    }
}

/// The image of a semisimple element in the component group: the parity of
/// the -1 eigenvalue multiplicity on each good-parity summand.
pub fn image_in_component_group(
    s: &SemisimpleElement,
    part: &GpPartition,
) -> Result<SignCharacter, Error> {
    let resolved = resolve_element(s, part)?;
    SignCharacter::from_pairs(
        resolved
            .gp
            .iter()
            .map(|(sm, _, c)| (GpKey::of(sm), Sign::from_parity(c.minus as i64)))
            .collect(),
    )
}

/// Closed form of the correction character on an anti-tempered parameter:
/// on the good-parity summand `rho (x) S_1 (x) S_b` the value is
/// (-1)^(b * (m_rho - 1)), where m_rho is the total good-parity
/// multiplicity of `rho`.
pub fn mw_character_closed(
    psi: &FormalParameter,
    g: &GroupForm,
) -> Result<SignCharacter, Error> {
    if psi.kind != ParamKind::Arthur || !psi.is_anti_tempered() {
        return Err(Error::Unsupported(
            "the correction character is defined for anti-tempered parameters of kind arthur"
                .into(),
        ));
    }
    let part = crate::classify::validate_for_group(psi, g)?;
    let mut pairs = Vec::new();
    for e in &part.gp {
        let m_rho: u32 = part
            .gp
            .iter()
            .filter(|f| f.summand.rho == e.summand.rho)
            .map(|f| f.mult)
            .sum();
        pairs.push((
            GpKey::of(&e.summand),
            Sign::from_parity((e.summand.b as i64) * (m_rho as i64 - 1)),
        ));
    }
    SignCharacter::from_pairs(pairs)
}

/// Which admissible total order the order-based recipe uses.  Any order
/// that never places a strictly larger (A, B) pair of the same sign first
/// is admissible; these two differ whenever the first coordinates tie.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrderVariant {
    /// Sort by (A, B) ascending.
    Canonical,
    /// Sort by A ascending, then B descending.
    Alternative,
}

/// The order-based definition of the correction character.
///
/// Per label, the good-parity summands are expanded into copies with
/// coordinates A = (a+b)/2 - 1, B = |a-b|/2 and sign -1 when a <= b (on
/// anti-tempered parameters this sign convention is the canonical one; for
/// other parameters the value is computed with the same convention).  Each
/// copy contributes +1 unless a and b are both odd; a both-odd copy of
/// sign +1 contributes (-1)^(later both-odd copies of sign -1), one of
/// sign -1 additionally picks up (-1)^(earlier both-odd copies).  All
/// copies of an isotypic summand must agree, and the resulting character
/// does not depend on the admissible order chosen.
pub fn mw_character_xu(
    psi: &FormalParameter,
    g: &GroupForm,
    order: OrderVariant,
) -> Result<SignCharacter, Error> {
    if psi.kind != ParamKind::Arthur {
        return Err(Error::Unsupported(
            "the correction character is defined for parameters of kind arthur".into(),
        ));
    }
    let part = crate::classify::validate_for_group(psi, g)?;
    let mut pairs: Vec<(GpKey, Sign)> = Vec::new();

    let mut i = 0;
    while i < part.gp.len() {
        let rho = part.gp[i].summand.rho.clone();
        // expand this label's summands into copies
        struct Copy {
            a: u32,
            b: u32,
            two_a_coord: i64,
            two_b_coord: i64,
            zeta_minus: bool,
            both_odd: bool,
        }
        let mut copies: Vec<Copy> = Vec::new();
        let mut j = i;
        while j < part.gp.len() && part.gp[j].summand.rho == rho {
            let e = &part.gp[j];
            for _ in 0..e.mult {
                let a = e.summand.a;
                let b = e.summand.b;
                copies.push(Copy {
                    a,
                    b,
                    two_a_coord: a as i64 + b as i64 - 2,
                    two_b_coord: (a as i64 - b as i64).abs(),
                    zeta_minus: a <= b,
                    both_odd: a % 2 == 1 && b % 2 == 1,
                });
            }
            j += 1;
        }
        match order {
            OrderVariant::Canonical => copies.sort_by(|p, q| {
                (p.two_a_coord, p.two_b_coord).cmp(&(q.two_a_coord, q.two_b_coord))
            }),
            OrderVariant::Alternative => copies.sort_by(|p, q| {
                (p.two_a_coord, q.two_b_coord).cmp(&(q.two_a_coord, p.two_b_coord))
            }),
        }
        // admissibility: a strictly larger (A, B) of equal sign never first
        for p in 0..copies.len() {
            for q in (p + 1)..copies.len() {
                let earlier = &copies[p];
                let later = &copies[q];
                if earlier.two_a_coord > later.two_a_coord
                    && earlier.two_b_coord > later.two_b_coord
                    && earlier.zeta_minus == later.zeta_minus
                {
                    return Err(Error::Validation(
                        "the chosen order is not admissible".into(),
                    ));
                }
            }
        }
        // per-copy values
        let mut values: Vec<(u32, u32, Sign)> = Vec::new();
        for p in 0..copies.len() {
            let c = &copies[p];
            let v = if !c.both_odd {
                Sign::Plus
            } else {
                let later_minus = copies[p + 1..]
                    .iter()
                    .filter(|q| q.both_odd && q.zeta_minus)
                    .count() as i64;
                let earlier = copies[..p].iter().filter(|q| q.both_odd).count() as i64;
                if c.zeta_minus {
                    Sign::from_parity(later_minus + earlier)
                } else {
                    Sign::from_parity(later_minus)
                }
            };
            values.push((c.a, c.b, v));
        }
        // collapse copies of each isotypic summand, which must agree
        let mut k = i;
        while k < part.gp.len() && part.gp[k].summand.rho == rho {
            let e = &part.gp[k];
            let mut vals = values
                .iter()
                .filter(|(a, b, _)| *a == e.summand.a && *b == e.summand.b)
                .map(|(_, _, v)| *v);
            let first = vals.next().expect("every summand has copies");
            if !vals.all(|v| v == first) {
                return Err(Error::Validation(format!(
                    "the order-based character is not constant on the copies of {}",
                    e.summand
                )));
            }
            pairs.push((GpKey::of(&e.summand), first));
            k += 1;
        }
        i = j;
    }
    SignCharacter::from_pairs(pairs)
}

/// The product of normalization signs attached to an endoscopic datum:
/// Kottwitz sign of the ambient form, the rank-comparison sign with the
/// factors, and the betas of the ambient parameter and of all factors.
/// It equals the pairing of the correction character with the image of
/// the element in the component group — independent of the chosen
/// preimage and of any split hints.
pub fn endoscopic_sign_product(
    psi: &FormalParameter,
    g: &GroupForm,
    s: &SemisimpleElement,
    hints: &SplitHints,
) -> Result<Sign, Error> {
    let datum = endoscopic_datum(psi, g, s, hints)?;
    let mut factors: Vec<LeviFactor> = Vec::new();
    if let Some((f, _)) = &datum.plus {
        factors.push(LeviFactor::Classical(*f));
    }
    if let Some((f, _)) = &datum.minus {
        factors.push(LeviFactor::Classical(*f));
    }
    for (_, p) in &datum.gl_factors {
        factors.push(LeviFactor::GeneralLinear(p.dim()));
    }

    let mut product = g.kottwitz() * alpha(g, &factors) * beta_phi_psi(psi, g)?;
    for (f, p) in datum.plus.iter().chain(datum.minus.iter()) {
        // the factor parameter is classified with the ambient conventions:
        // the implicit twist matches its summands' duality classes to the
        // factor's own
        product = product
            * beta_from_classification(
                &p.arthur_to_l(),
                g.target_sign(),
                g.is_unitary(),
                f.witt_rank(),
            )?;
    }
    for (_, p) in &datum.gl_factors {
        product = product * beta_gl(&p.arthur_to_l());
    }
    Ok(product)
}

// --------------------------------------------------------------------------
// tests
// --------------------------------------------------------------------------

#[cfg(test)]
mod tests {
    use super::*;
    use crate::component::{component_info, eval_at_s_psi, pair};
    use crate::param::parse_input;

    fn setup(input: &str) -> (GroupForm, FormalParameter, GpPartition) {
        let (g, p) = parse_input(input).unwrap();
        let part = crate::classify::validate_for_group(&p, &g).unwrap();
        (g, p, part)
    }

    fn summand(part: &GpPartition, label: &str) -> Summand {
        part.gp
            .iter()
            .map(|e| &e.summand)
            .chain(part.bp.iter().map(|e| &e.summand))
            .find(|s| s.rho.label == label)
            .cloned()
            .unwrap()
    }

    #[test]
    fn counterexample_element_on_sp2() {
        let (g, psi, part) = setup("Sp(2): chi[1,O]@S(1)xS(1)^2 + one[1,O]@S(1)xS(1)");
        let chi = summand(&part, "chi");
        let s = SemisimpleElement::new(vec![(
            chi,
            vec![(Eig::One, 1), (Eig::MinusOne, 1)],
        )])
        .unwrap();
        let datum = endoscopic_datum(&psi, &g, &s, &SplitHints::default()).unwrap();
        let (f_plus, p_plus) = datum.plus.as_ref().unwrap();
        assert_eq!(format!("{}", f_plus), "SO(2,split)");
        assert_eq!(p_plus.dim(), 2);
        let (f_minus, p_minus) = datum.minus.as_ref().unwrap();
        assert_eq!(format!("{}", f_minus), "Sp(0)");
        assert_eq!(p_minus.dim(), 1);
        assert!(datum.gl_factors.is_empty());

        let image = image_in_component_group(&s, &part).unwrap();
        assert_eq!(image.values(), [Sign::Minus, Sign::Plus]);
        let mw = mw_character_closed(&psi, &g).unwrap();
        assert_eq!(mw.values(), [Sign::Minus, Sign::Plus]);
        let lhs = endoscopic_sign_product(&psi, &g, &s, &SplitHints::default()).unwrap();
        assert_eq!(lhs, Sign::Minus);
        assert_eq!(lhs, pair(&mw, &image).unwrap());
        // the identity is insensitive to the split hint on the SO(2) factor
        let hinted = SplitHints {
            plus: Some(FormFlag::QuasiSplit),
            minus: None,
        };
        assert_eq!(
            endoscopic_sign_product(&psi, &g, &s, &hinted).unwrap(),
            Sign::Minus
        );
    }

    #[test]
    fn identity_element_gives_trivial_pairing() {
        for input in [
            "Sp(2): chi[1,O]@S(1)xS(1)^2 + one[1,O]@S(1)xS(1)",
            "SO(3,split): one[1,O]@S(1)xS(2)",
            "SO(8,split): one[1,O]@S(1)xS(3) + chi[1,O]@S(1)xS(1) + rho[2,S]|1/3@S(1)xS(1)+dual",
        ] {
            let (g, psi, part) = setup(input);
            let s = SemisimpleElement::identity();
            let datum = endoscopic_datum(&psi, &g, &s, &SplitHints::default()).unwrap();
            assert!(datum.minus.is_none());
            assert_eq!(datum.plus.as_ref().unwrap().1, psi);
            let image = image_in_component_group(&s, &part).unwrap();
            assert!(image.is_trivial());
            let lhs = endoscopic_sign_product(&psi, &g, &s, &SplitHints::default()).unwrap();
            assert_eq!(lhs, Sign::Plus, "identity product for {}", input);
        }
    }

    #[test]
    fn lambda_pairs_spin_off_gl_factors() {
        let (g, psi, part) = setup("Sp(2): chi[1,O]@S(1)xS(1)^2 + one[1,O]@S(1)xS(1)");
        let chi = summand(&part, "chi");
        let s = SemisimpleElement::new(vec![(
            chi,
            vec![(Eig::Lam("L".into()), 1), (Eig::LamInv("L".into()), 1)],
        )])
        .unwrap();
        let datum = endoscopic_datum(&psi, &g, &s, &SplitHints::default()).unwrap();
        assert_eq!(datum.gl_factors.len(), 1);
        assert_eq!(datum.gl_factors[0].0, "L");
        assert_eq!(datum.gl_factors[0].1.dim(), 1);
        assert!(datum.minus.is_none());
        assert_eq!(datum.plus.as_ref().unwrap().1.dim(), 1);
        let lhs = endoscopic_sign_product(&psi, &g, &s, &SplitHints::default()).unwrap();
        let image = image_in_component_group(&s, &part).unwrap();
        assert!(image.is_trivial());
        let mw = mw_character_closed(&psi, &g).unwrap();
        assert_eq!(lhs, pair(&mw, &image).unwrap());
    }

    #[test]
    fn element_validation() {
        let (_g, _psi, part) = setup("Sp(4): one[1,O]@S(1)xS(1) + chi[1,O]@S(1)xS(2)^2");
        let chi_s2 = part.bp[0].summand.clone();
        // odd +1 multiplicity on a bad-parity summand
        let s = SemisimpleElement::new(vec![(
            chi_s2.clone(),
            vec![(Eig::One, 1), (Eig::MinusOne, 1)],
        )])
        .unwrap();
        assert!(resolve_element(&s, &part).is_err());
        // unmatched lambda on a self-dual summand
        let s = SemisimpleElement::new(vec![(chi_s2.clone(), vec![(Eig::Lam("L".into()), 2)])])
            .unwrap();
        assert!(resolve_element(&s, &part).is_err());
        // lambda pair is fine
        let s = SemisimpleElement::new(vec![(
            chi_s2,
            vec![(Eig::Lam("L".into()), 1), (Eig::LamInv("L".into()), 1)],
        )])
        .unwrap();
        assert!(resolve_element(&s, &part).is_ok());
        // wrong total
        let (_g, _psi, part) = setup("Sp(2): chi[1,O]@S(1)xS(1)^2 + one[1,O]@S(1)xS(1)");
        let one = summand(&part, "one");
        let s = SemisimpleElement::new(vec![(one, vec![(Eig::One, 2)])]).unwrap();
        assert!(resolve_element(&s, &part).is_err());
        // partner of a dual pair must not be named
        let (_g, _psi, part) =
            setup("SO(7,split): tau[1,N]|1/4@S(2)xS(1)+dual + one[1,O]@S(2)xS(1)");
        let partner = part.nsd[0].partner.clone();
        let s = SemisimpleElement::new(vec![(partner, vec![(Eig::One, 1)])]).unwrap();
        let err = resolve_element(&s, &part).unwrap_err();
        assert!(format!("{}", err).contains("representative"));
    }

    #[test]
    fn nsd_pairs_in_eigenspaces() {
        // an element acting by -1 on a dual pair moves both halves to the
        // minus parameter
        let (g, psi, part) =
            setup("SO(7,split): tau[1,N]|1/4@S(2)xS(1)+dual + one[1,O]@S(2)xS(1)");
        let rep = part.nsd[0].rep.clone();
        let s = SemisimpleElement::new(vec![(rep, vec![(Eig::MinusOne, 1)])]).unwrap();
        let datum = endoscopic_datum(&psi, &g, &s, &SplitHints::default()).unwrap();
        assert_eq!(datum.minus.as_ref().unwrap().1.dim(), 4);
        assert_eq!(datum.plus.as_ref().unwrap().1.dim(), 2);
        // ...while a lambda moves the representative into the GL factor and
        // the partner into the inverse slot
        let rep = part.nsd[0].rep.clone();
        let s = SemisimpleElement::new(vec![(rep, vec![(Eig::Lam("L".into()), 1)])]).unwrap();
        let datum = endoscopic_datum(&psi, &g, &s, &SplitHints::default()).unwrap();
        assert_eq!(datum.gl_factors.len(), 1);
        assert_eq!(datum.gl_factors[0].1.dim(), 2);
        assert_eq!(datum.plus.as_ref().unwrap().1.dim(), 2);
        assert!(datum.minus.is_none());
        let lhs = endoscopic_sign_product(&psi, &g, &s, &SplitHints::default()).unwrap();
        let image = image_in_component_group(&s, &part).unwrap();
        let mw_xu = mw_character_xu(&psi, &g, OrderVariant::Canonical).unwrap();
        assert_eq!(lhs, pair(&mw_xu, &image).unwrap());
    }

    #[test]
    fn mw_character_hand_values() {
        let (g, psi, _part) = setup("SO(3,split): one[1,O]@S(1)xS(2)");
        assert!(mw_character_closed(&psi, &g).unwrap().is_trivial());
        let (g, psi, _part) = setup("SO(8,split): one[1,O]@S(1)xS(3) + one[1,O]@S(1)xS(5)");
        let mw = mw_character_closed(&psi, &g).unwrap();
        assert_eq!(mw.values(), [Sign::Minus, Sign::Minus]);
        for variant in [OrderVariant::Canonical, OrderVariant::Alternative] {
            assert_eq!(mw_character_xu(&psi, &g, variant).unwrap(), mw);
        }
    }

    #[test]
    fn mw_membership_identities() {
        let inputs = [
            "Sp(2): chi[1,O]@S(1)xS(1)^2 + one[1,O]@S(1)xS(1)",
            "SO(3,split): one[1,O]@S(1)xS(2)",
            "SO(8,split): one[1,O]@S(1)xS(3) + one[1,O]@S(1)xS(5)",
            "Sp(6): one[1,O]@S(1)xS(3) + chi[1,O]@S(1)xS(2)^2",
            "U(4,split): mu[1,CS]@S(1)xS(1)^2 + nu[1,CO]@S(1)xS(2)",
        ];
        for input in inputs {
            let (g, psi, part) = setup(input);
            let info = component_info(&part);
            let mw = mw_character_closed(&psi, &g).unwrap();
            assert_eq!(pair(&mw, &info.e0).unwrap(), Sign::Plus, "{}", input);
            assert_eq!(eval_at_s_psi(&mw, &info).unwrap(), Sign::Plus, "{}", input);
            for (k, v) in mw.entries() {
                if k.b % 2 == 0 {
                    assert_eq!(*v, Sign::Plus, "{}", input);
                }
            }
            for variant in [OrderVariant::Canonical, OrderVariant::Alternative] {
                assert_eq!(mw_character_xu(&psi, &g, variant).unwrap(), mw, "{}", input);
            }
        }
    }

    #[test]
    fn xu_character_on_tempered_parameters() {
        // a > b everywhere: every copy has sign +1 and both-odd copies
        // count only later minus-copies, of which there are none
        let (g, phi, _part) = setup("Sp(8): one[1,O]@S(1)xS(1) + one[1,O]@S(3)xS(1) + one[1,O]@S(5)xS(1)");
        let mw = mw_character_xu(&phi, &g, OrderVariant::Canonical).unwrap();
        // copies (1,1), (3,1), (5,1): the first is a <= b, the others not
        assert_eq!(mw.values(), [Sign::Plus, Sign::Plus, Sign::Plus]);
    }
}
