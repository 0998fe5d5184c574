//! Tempered packet labels, the rank-reduction chain computing the
//! normalization sign of a packet member, and the corrected anti-tempered
//! duality on labels.

use crate::classify::{validate_for_group, GpPartition};
use crate::component::{
    component_info, designated_rep, eval_at_s_psi, pair, GpKey, SignCharacter,
};
use crate::endoscopy::mw_character_closed;
use crate::group::GroupForm;
use crate::param::{FormalParameter, ParamKind, Summand};
use crate::sign::Sign;
use crate::signs::{beta_gl, beta_l, beta_phi_psi};
use crate::Error;
use alloc::format;
use alloc::vec::Vec;

/// A member of a tempered packet on a specific form: the parameter, a sign
/// character of its component group, and the form.  On non-unitary families
/// the character is stored as the designated representative of its coset
/// modulo the determinant character; all derived quantities are invariant
/// under that replacement.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PacketLabel {
    phi: FormalParameter,
    eps: SignCharacter,
    form: GroupForm,
}

impl PacketLabel {
    pub fn new(
        phi: FormalParameter,
        eps: SignCharacter,
        form: GroupForm,
    ) -> Result<PacketLabel, Error> {
        if phi.kind != ParamKind::Arthur || !phi.is_tempered() {
            return Err(Error::Unsupported(
                "packet labels are formed on tempered parameters of kind arthur".into(),
            ));
        }
        let part = validate_for_group(&phi, &form)?;
        let info = component_info(&part);
        if !eps.same_domain(&info.e_psi) {
            return Err(Error::DomainMismatch(
                "character does not live on the parameter's component group".into(),
            ));
        }
        let eps = designated_rep(&eps, &info);
        if pair(&eps, &info.e0)? != form.chi_v_at_minus_one() {
            return Err(Error::Validation(format!(
                "character {} does not label a packet member on {}",
                eps, form
            )));
        }
        Ok(PacketLabel { phi, eps, form })
    }

    pub fn phi(&self) -> &FormalParameter {
        &self.phi
    }

    pub fn eps(&self) -> &SignCharacter {
        &self.eps
    }

    pub fn form(&self) -> &GroupForm {
        &self.form
    }

    fn part(&self) -> GpPartition {
        validate_for_group(&self.phi, &self.form).expect("label was validated on construction")
    }
}

impl core::fmt::Display for PacketLabel {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "{}: {} [{}]", self.form, self.phi, self.eps)
    }
}

/// Which reduction applies at a step of the chain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ReductionCase {
    /// The parameter is not discrete: split off the repeated halves and
    /// the dual pairs as one general linear block.
    SplitMultiplicities,
    /// An isolated ladder top (no summand two steps below): lower it.
    LowerIsolated { label: GpKey },
    /// Two adjacent ladder steps with equal character values: remove both.
    RemoveAdjacent { label: GpKey },
    /// A bottom step of size two with character value +1: remove it.
    RemoveEvenBottom { label: GpKey },
}

/// One step of the reduction chain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionStep {
    pub case: ReductionCase,
    pub next: PacketLabel,
    /// The normalization sign of the general linear parameter split off.
    pub gl_sign: Sign,
    /// The Witt rank absorbed by this step.
    pub rank_consumed: u32,
}

/// Whether a label is supercuspidal: the parameter is discrete and the
/// character alternates down every ladder (value products -1 on adjacent
/// steps, -1 on bottom steps of size two).
pub fn is_supercuspidal(l: &PacketLabel) -> Result<bool, Error> {
    let part = l.part();
    if !part.is_discrete() {
        return Ok(false);
    }
    for e in &part.gp {
        let key = GpKey::of(&e.summand);
        let v = l.eps.get(&key).expect("character covers the domain");
        if e.summand.a >= 3 {
            let lower = part
                .gp
                .iter()
                .find(|f| f.summand.rho == e.summand.rho && f.summand.a == e.summand.a - 2);
            match lower {
                Some(f) => {
                    let w = l.eps.get(&GpKey::of(&f.summand)).expect("domain");
                    if v * w != Sign::Minus {
                        return Ok(false);
                    }
                }
                None => return Ok(false),
            }
        } else if e.summand.a == 2 && v != Sign::Minus {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Compute one reduction step, or `None` when the label is supercuspidal.
///
/// The step is deterministic: a non-discrete parameter always splits its
/// multiplicities first; otherwise the offending ladder step with the
/// largest size is treated, scanning summands in canonical order.
pub fn reduction_step(l: &PacketLabel) -> Result<Option<ReductionStep>, Error> {
    let part = l.part();

    if !part.is_discrete() {
        // phi = phi0 + block + dual block
        let mut phi0: Vec<(Summand, u32)> = Vec::new();
        let mut block: Vec<(Summand, u32)> = Vec::new();
        let mut kept_keys: Vec<GpKey> = Vec::new();
        for e in &part.gp {
            if e.mult % 2 == 1 {
                phi0.push((e.summand.clone(), 1));
                kept_keys.push(GpKey::of(&e.summand));
            }
            block.push((e.summand.clone(), e.mult / 2));
        }
        for e in &part.bp {
            block.push((e.summand.clone(), e.mult / 2));
        }
        for q in &part.nsd {
            block.push((q.rep.clone(), q.mult));
        }
        let phi0 = FormalParameter::from_parts(ParamKind::Arthur, phi0);
        let block = FormalParameter::from_parts(ParamKind::Arthur, block);
        debug_assert!(!block.is_empty());
        let gl_sign = beta_gl(&block.hat().arthur_to_l());
        let rank = block.dim();
        let eps_next = l.eps.restricted_to(&kept_keys)?;
        let next = PacketLabel::new(phi0, eps_next, l.form.shrink(rank))?;
        return Ok(Some(ReductionStep {
            case: ReductionCase::SplitMultiplicities,
            next,
            gl_sign,
            rank_consumed: rank,
        }));
    }

    // discrete: find the offending ladder step with the largest size
    enum Offense {
        Lower,
        RemovePair,
        RemoveBottom,
    }
    let mut candidates: Vec<(u32, usize, Offense)> = Vec::new();
    for (idx, e) in part.gp.iter().enumerate() {
        let key = GpKey::of(&e.summand);
        let v = l.eps.get(&key).expect("domain");
        if e.summand.a >= 3 {
            let lower = part
                .gp
                .iter()
                .find(|f| f.summand.rho == e.summand.rho && f.summand.a == e.summand.a - 2);
            match lower {
                None => candidates.push((e.summand.a, idx, Offense::Lower)),
                Some(f) => {
                    let w = l.eps.get(&GpKey::of(&f.summand)).expect("domain");
                    if v * w == Sign::Plus {
                        candidates.push((e.summand.a, idx, Offense::RemovePair));
                    }
                }
            }
        } else if e.summand.a == 2 && v == Sign::Plus {
            candidates.push((2, idx, Offense::RemoveBottom));
        }
    }
    candidates.sort_by(|x, y| y.0.cmp(&x.0).then(x.1.cmp(&y.1)));
    let Some((a, idx, offense)) = candidates.into_iter().next() else {
        return Ok(None);
    };
    let summand = part.gp[idx].summand.clone();
    let key = GpKey::of(&summand);
    let rho_dim = summand.rho.dim;

    let keep = |skip: &[&Summand]| -> Vec<(Summand, u32)> {
        part.gp
            .iter()
            .filter(|e| !skip.iter().any(|s| **s == e.summand))
            .map(|e| (e.summand.clone(), e.mult))
            .collect()
    };

    let (case, phi_next, eps_next, gl_sign, rank) = match offense {
        Offense::Lower => {
            let lowered = Summand::new(summand.rho.clone(), summand.x, a - 2, 1);
            let mut entries = keep(&[&summand]);
            entries.push((lowered.clone(), 1));
            let mut eps_pairs: Vec<(GpKey, Sign)> = Vec::new();
            for (k, v) in l.eps.entries() {
                if *k == key {
                    eps_pairs.push((GpKey::of(&lowered), *v));
                } else {
                    eps_pairs.push((k.clone(), *v));
                }
            }
            (
                ReductionCase::LowerIsolated { label: key },
                FormalParameter::from_parts(ParamKind::Arthur, entries),
                SignCharacter::from_pairs(eps_pairs)?,
                Sign::from_parity(1 + rho_dim as i64),
                rho_dim,
            )
        }
        Offense::RemovePair => {
            let lower = Summand::new(summand.rho.clone(), summand.x, a - 2, 1);
            let entries = keep(&[&summand, &lower]);
            let kept: Vec<GpKey> = entries.iter().map(|(s, _)| GpKey::of(s)).collect();
            (
                ReductionCase::RemoveAdjacent { label: key },
                FormalParameter::from_parts(ParamKind::Arthur, entries),
                l.eps.restricted_to(&kept)?,
                Sign::from_parity(((a - 1) * (rho_dim - 1)) as i64),
                (a - 1) * rho_dim,
            )
        }
        Offense::RemoveBottom => {
            let entries = keep(&[&summand]);
            let kept: Vec<GpKey> = entries.iter().map(|(s, _)| GpKey::of(s)).collect();
            (
                ReductionCase::RemoveEvenBottom { label: key },
                FormalParameter::from_parts(ParamKind::Arthur, entries),
                l.eps.restricted_to(&kept)?,
                Sign::from_parity(1 + rho_dim as i64),
                rho_dim,
            )
        }
    };
    let next = PacketLabel::new(phi_next, eps_next, l.form.shrink(rank))?;
    Ok(Some(ReductionStep {
        case,
        next,
        gl_sign,
        rank_consumed: rank,
    }))
}

/// The full reduction chain of a label, ending at a supercuspidal one.
pub fn reduction_chain(l: &PacketLabel) -> Result<Vec<ReductionStep>, Error> {
    let mut out = Vec::new();
    let mut cur = l.clone();
    while let Some(step) = reduction_step(&cur)? {
        cur = step.next.clone();
        out.push(step);
        assert!(out.len() <= 10_000, "reduction chain does not terminate");
    }
    Ok(out)
}

/// The normalization sign of the packet member labelled by `l`: the product
/// of the general linear signs along the reduction chain times
/// (-1)^(remaining quasi-split rank).  Fails when the chain consumes more
/// rank than the form's inner class provides (the label is irrelevant).
pub fn beta_rep(l: &PacketLabel) -> Result<Sign, Error> {
    let mut sign = Sign::Plus;
    let mut consumed: i64 = 0;
    for step in reduction_chain(l)? {
        sign *= step.gl_sign;
        consumed += step.rank_consumed as i64;
    }
    let r_final = l.form.quasi_split().witt_rank() - consumed;
    if r_final < 0 {
        return Err(Error::Unsupported(format!(
            "the reduction chain of {} consumes rank {} but the quasi-split form only has {}",
            l,
            consumed,
            l.form.quasi_split().witt_rank()
        )));
    }
    Ok(sign * Sign::from_parity(r_final))
}

/// The character transported to the two-factor side: same values, first and
/// second factor dimensions swapped in the keys.
fn transport_character(eps: &SignCharacter) -> Result<SignCharacter, Error> {
    SignCharacter::from_pairs(
        eps.entries()
            .iter()
            .map(|(k, v)| {
                (
                    GpKey {
                        label: k.label.clone(),
                        dim: k.dim,
                        sd: k.sd,
                        a: k.b,
                        b: k.a,
                    },
                    *v,
                )
            })
            .collect(),
    )
}

/// The three-factor product checking the corrected duality: the transported
/// character evaluated at the distinguished element, the beta sign of the
/// associated one-factor parameter of the swapped parameter, and the beta
/// sign of the packet member.  Equals +1 on every form.
pub fn duality_sign_product(l: &PacketLabel) -> Result<Sign, Error> {
    let psi = l.phi.hat();
    let part = validate_for_group(&psi, &l.form)?;
    let info = component_info(&part);
    let eps_psi = transport_character(&l.eps)?;
    let eval = eval_at_s_psi(&eps_psi, &info)?;
    Ok(eval * beta_phi_psi(&psi, &l.form)? * beta_rep(l)?)
}

/// The corrected duality on labels: the dual of the member labelled
/// (phi, eps) is the member of the anti-tempered packet of the swapped
/// parameter labelled by the transported character times the correction
/// character.  Returns the swapped parameter and that character (as the
/// designated representative of its coset on non-unitary families).
pub fn az_dual_label(l: &PacketLabel) -> Result<(FormalParameter, SignCharacter), Error> {
    let product = duality_sign_product(l)?;
    assert_eq!(
        product,
        Sign::Plus,
        "the duality product must be +1 on every form"
    );
    let psi = l.phi.hat();
    let mw = mw_character_closed(&psi, &l.form)?;
    let eps_psi = transport_character(&l.eps)?;
    let corrected = eps_psi.mul(&mw)?;
    let part = validate_for_group(&psi, &l.form)?;
    let info = component_info(&part);
    Ok((psi, designated_rep(&corrected, &info)))
}

/// Side-by-side comparison of the uncorrected and corrected duality data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualityComparison {
    /// The swapped parameter.
    pub psi: FormalParameter,
    /// The transported character, uncorrected.
    pub naive_character: SignCharacter,
    /// The transported character times the correction character.
    pub corrected_character: SignCharacter,
    /// The correction character itself.
    pub mw: SignCharacter,
    /// Product of the evaluation, the one-factor beta of the ORIGINAL
    /// parameter read as a one-factor parameter, and the member's beta —
    /// the sign the uncorrected normalization would produce.
    pub naive_sign: Sign,
    /// The duality product with the corrected normalization (always +1).
    pub corrected_sign: Sign,
    /// The corrected and uncorrected characters differ.
    pub character_contradiction: bool,
    /// The two normalization signs differ.
    pub sign_contradiction: bool,
}

/// Compare the corrected duality with the uncorrected bookkeeping, flagging
/// where they disagree.
pub fn compare_duality(l: &PacketLabel) -> Result<DualityComparison, Error> {
    let psi = l.phi.hat();
    let part = validate_for_group(&psi, &l.form)?;
    let info = component_info(&part);
    let eps_psi = transport_character(&l.eps)?;
    let mw = mw_character_closed(&psi, &l.form)?;
    let corrected_character = designated_rep(&eps_psi.mul(&mw)?, &info);
    let naive_character = designated_rep(&eps_psi, &info);

    let eval = eval_at_s_psi(&eps_psi, &info)?;
    let brep = beta_rep(l)?;
    let beta_one_factor = beta_l(&l.phi.as_l_kind()?, &l.form)?;
    let beta_two_factor = beta_phi_psi(&psi, &l.form)?;

    Ok(DualityComparison {
        psi,
        character_contradiction: naive_character != corrected_character,
        sign_contradiction: beta_one_factor != beta_two_factor,
        naive_character,
        corrected_character,
        mw,
        naive_sign: eval * beta_one_factor * brep,
        corrected_sign: eval * beta_two_factor * brep,
    })
}

// --------------------------------------------------------------------------
// tests
// --------------------------------------------------------------------------
