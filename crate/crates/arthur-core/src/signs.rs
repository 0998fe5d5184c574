//! The sign calculus: transfer-factor normalization signs for classical
//! groups and their Levi subgroups, in several equivalent presentations
//! that the test suite plays against each other.

use crate::classify::{classify_entries, validate_for_group};
use crate::group::{FormFlag, GroupForm};
use crate::param::{FormalParameter, ParamKind};
use crate::sign::Sign;
use crate::Error;
use alloc::vec::Vec;

/// One factor of a product group: a classical factor or a general linear
/// factor of the given rank (over the relevant base field).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LeviFactor {
    Classical(GroupForm),
    GeneralLinear(u32),
}

impl LeviFactor {
    fn rank(&self) -> i64 {
        match self {
            LeviFactor::Classical(g) => g.witt_rank(),
            LeviFactor::GeneralLinear(k) => *k as i64,
        }
    }
}

/// Witt index of a form (split rank of the hyperbolic part).
pub fn witt_rank(g: &GroupForm) -> i64 {
    g.witt_rank()
}

/// The rank-comparison sign between a group and a product of factors
/// receiving its parameters: (-1)^(rank difference).  Classical factors
/// contribute their actual Witt index, general linear factors their rank.
pub fn alpha(g: &GroupForm, factors: &[LeviFactor]) -> Sign {
    let total: i64 = factors.iter().map(|f| f.rank()).sum();
    Sign::from_parity(g.witt_rank() - total)
}

/// The normalization sign of a general linear parameter:
/// (-1)^(number of summands with multiplicity + dimension).
pub fn beta_gl(p: &FormalParameter) -> Sign {
    assert!(
        p.kind == ParamKind::L,
        "beta_gl expects a parameter of kind l"
    );
    Sign::from_parity((p.mult_total() + p.dim()) as i64)
}

/// Shared core of the classical beta signs: (-1)^(GL-block count + Witt
/// index of the quasi-split form).
pub(crate) fn beta_from_classification(
    p: &FormalParameter,
    target: Sign,
    unitary: bool,
    qs_witt: i64,
) -> Result<Sign, Error> {
    let (gp, bp, nsd) = classify_entries(p, target, unitary)?;
    let blocks: u32 = gp.iter().map(|e| e.mult / 2).sum::<u32>()
        + bp.iter().map(|e| e.mult / 2).sum::<u32>()
        + nsd.iter().map(|q| q.mult).sum::<u32>();
    Ok(Sign::from_parity(blocks as i64 + qs_witt))
}

/// The normalization sign of a one-factor parameter on a classical group.
/// Depends only on the inner class of `g` (the Witt index of the
/// quasi-split form enters, not the form's own).
pub fn beta_l(p: &FormalParameter, g: &GroupForm) -> Result<Sign, Error> {
    if p.kind != ParamKind::L {
        return Err(Error::Unsupported(
            "beta_l expects a parameter of kind l".into(),
        ));
    }
    let part = validate_for_group(p, g)?;
    Ok(Sign::from_parity(
        part.block_count() as i64 + g.quasi_split().witt_rank(),
    ))
}

/// The normalization sign of the one-factor parameter associated to a
/// two-factor parameter.
pub fn beta_phi_psi(psi: &FormalParameter, g: &GroupForm) -> Result<Sign, Error> {
    if psi.kind != ParamKind::Arthur {
        return Err(Error::Unsupported(
            "beta_phi_psi expects a parameter of kind arthur".into(),
        ));
    }
    beta_l(&psi.arthur_to_l(), g)
}

/// Closed form for `beta_phi_psi` on anti-tempered parameters, computed
/// without spreading the parameter out:
///
///   beta_gl(associated parameter of the non-good-parity half)
///   * (-1)^f * (-1)^(formal rank of the good-parity subgroup),
///
/// where the non-good-parity half keeps half of each bad-parity summand
/// and the representative of each dual pair with full multiplicity, `f`
/// counts pairings inside the good-parity part label by label, and the
/// good-parity subgroup is taken in the same family with the rationality
/// flag of the ambient quasi-split form.
pub fn beta_phi_psi_closed_form(psi: &FormalParameter, g: &GroupForm) -> Result<Sign, Error> {
    if psi.kind != ParamKind::Arthur || !psi.is_anti_tempered() {
        return Err(Error::Unsupported(
            "the closed form applies to anti-tempered parameters of kind arthur".into(),
        ));
    }
    let part = validate_for_group(psi, g)?;

    // the non-good-parity half
    let mut ngp: Vec<(crate::param::Summand, u32)> = Vec::new();
    for e in &part.bp {
        ngp.push((e.summand.clone(), e.mult / 2));
    }
    for q in &part.nsd {
        ngp.push((q.rep.clone(), q.mult));
    }
    let psi_ngp = FormalParameter::from_parts(ParamKind::Arthur, ngp);
    let gl = beta_gl(&psi_ngp.arthur_to_l());

    // pairing count inside the good-parity part, one label at a time
    let mut f: i64 = 0;
    let mut i = 0;
    while i < part.gp.len() {
        let rho = &part.gp[i].summand.rho;
        let mut j = i;
        let mut m_rho: i64 = 0;
        let mut parity = None;
        while j < part.gp.len() && part.gp[j].summand.rho == *rho {
            let e = &part.gp[j];
            let b = e.summand.b as i64;
            let m = e.mult as i64;
            match parity {
                None => parity = Some(b % 2),
                Some(p) => debug_assert_eq!(
                    p,
                    b % 2,
                    "good parity forces a single second-factor parity per label"
                ),
            }
            if b % 2 == 0 {
                f += m * b / 2;
            } else {
                f += m * (b - 1) / 2;
                m_rho += m;
            }
            j += 1;
        }
        f += m_rho / 2;
        i = j;
    }

    // formal rank of the good-parity subgroup, ambient quasi-split flag
    let flag = g.quasi_split().form;
    let ggp = formal_rank_of_dual_dim(g, part.gp_dim(), flag);

    Ok(gl * Sign::from_parity(f) * Sign::from_parity(ggp))
}

/// Formal Witt index of the same-family group whose parameters have
/// dimension `d`, carrying the given flag.  May be -1 in the degenerate
/// empty case on a non-split quasi-split ambient form; only the parity is
/// ever used.
fn formal_rank_of_dual_dim(g: &GroupForm, d: u32, flag: FormFlag) -> i64 {
    match g.family {
        crate::group::Family::Sp => {
            debug_assert!(d % 2 == 1);
            (d as i64 - 1) / 2
        }
        _ => GroupForm::raw(
            g.family,
            GroupForm::from_dual_dim(g.family, d, flag).space_dim,
            flag,
        )
        .witt_rank(),
    }
}

/// Direct evaluation of `beta_phi_psi . hat` on discrete tempered
/// parameters, via the pairing structure of the ladder decomposition: sort
/// each label's first-factor sizes increasingly; even sizes contribute
/// half their length in pairs, odd sizes alternate between rounding the
/// half down (odd positions) and up (even positions).
pub fn beta_oracle_discrete(phi: &FormalParameter, g: &GroupForm) -> Result<Sign, Error> {
    if phi.kind != ParamKind::Arthur || !phi.is_tempered() {
        return Err(Error::Unsupported(
            "the discrete oracle applies to tempered parameters of kind arthur".into(),
        ));
    }
    let part = validate_for_group(phi, g)?;
    if !part.is_discrete() {
        return Err(Error::Unsupported(
            "the discrete oracle applies to discrete parameters".into(),
        ));
    }
    let mut paired: i64 = 0;
    let mut i = 0;
    while i < part.gp.len() {
        let rho = &part.gp[i].summand.rho;
        let mut odds: Vec<i64> = Vec::new();
        let mut j = i;
        while j < part.gp.len() && part.gp[j].summand.rho == *rho {
            let a = part.gp[j].summand.a as i64;
            if a % 2 == 0 {
                paired += a / 2;
            } else {
                odds.push(a);
            }
            j += 1;
        }
        odds.sort_unstable();
        for (idx, a) in odds.iter().enumerate() {
            if idx % 2 == 0 {
                paired += a / 2; // 1st, 3rd, ... smallest: round down
            } else {
                paired += (a + 1) / 2; // 2nd, 4th, ...: round up
            }
        }
        i = j;
    }
    Ok(Sign::from_parity(g.quasi_split().witt_rank() + paired))
}

// --------------------------------------------------------------------------
// tests
// --------------------------------------------------------------------------
