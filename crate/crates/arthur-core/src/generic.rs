//! The dual of a generic representation: the involution sends the standard
//! datum (general linear blocks plus a tempered anchor) to a parameter with
//! trivial Deligne factor, computed three independent ways — directly, via
//! the closed-form split into an anchor and a twisted half, and via the
//! step-by-step peeling chain of the inductive proof.

use crate::classify::validate_for_group;
use crate::component::{GpKey, SignCharacter};
use crate::group::GroupForm;
use crate::packets::PacketLabel;
use crate::param::{Exp, FormalParameter, Irrep, ParamKind, Summand};
use crate::sign::Sign;
use crate::Error;
use alloc::vec::Vec;
use num_rational::Ratio;

/// The Langlands-style datum of a generic representation: a product of
/// generic general linear blocks over a tempered anchor with trivial
/// character, on a given form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenericDatum {
    gl_parts: Vec<FormalParameter>,
    temp_part: PacketLabel,
    form: GroupForm,
}

impl GenericDatum {
    pub fn new(
        gl_parts: Vec<FormalParameter>,
        temp_part: PacketLabel,
        form: GroupForm,
    ) -> Result<GenericDatum, Error> {
        for tau in &gl_parts {
            if tau.kind != ParamKind::Arthur || !tau.is_tempered() || tau.is_empty() {
                return Err(Error::Unsupported(
                    "general linear blocks must be nonempty tempered parameters".into(),
                ));
            }
        }
        if !temp_part.eps().is_trivial() {
            return Err(Error::Validation(
                "the anchor of a generic datum carries the trivial character".into(),
            ));
        }
        let anchor_part = validate_for_group(temp_part.phi(), temp_part.form())?;
        if !anchor_part.is_good_parity() {
            return Err(Error::Validation(
                "the anchor parameter of a generic datum has good parity".into(),
            ));
        }
        if temp_part.form().family != form.family || temp_part.form().form != form.form {
            return Err(Error::DomainMismatch(
                "the anchor's form must be a smaller form of the same family and inner class"
                    .into(),
            ));
        }
        // the assembled parameter must fit the ambient form
        let assembled = assemble(&gl_parts, temp_part.phi())?;
        validate_for_group(&assembled, &form)?;
        Ok(GenericDatum {
            gl_parts,
            temp_part,
            form,
        })
    }

    pub fn gl_parts(&self) -> &[FormalParameter] {
        &self.gl_parts
    }

    pub fn temp_part(&self) -> &PacketLabel {
        &self.temp_part
    }

    pub fn form(&self) -> &GroupForm {
        &self.form
    }

    /// The full one-factor parameter of the datum.
    pub fn assembled(&self) -> FormalParameter {
        assemble(&self.gl_parts, self.temp_part.phi()).expect("validated on construction")
    }

    /// Build a datum from the ambient form: the anchor's smaller form is
    /// inferred by removing the rank the blocks occupy.
    pub fn from_ambient(
        gl_parts: Vec<FormalParameter>,
        anchor_phi: FormalParameter,
        form: GroupForm,
    ) -> Result<GenericDatum, Error> {
        let block_dim: u32 = gl_parts.iter().map(|t| t.dim()).sum();
        let min_space = u32::from(form.family == crate::group::Family::SOOdd);
        if 2 * block_dim + min_space > form.space_dim {
            return Err(Error::Validation(
                "the general linear blocks do not fit inside the form".into(),
            ));
        }
        let anchor_form = form.shrink(block_dim);
        let part = validate_for_group(&anchor_phi, &anchor_form)?;
        let eps = SignCharacter::trivial_for(&part);
        let temp_part = PacketLabel::new(anchor_phi, eps, anchor_form)?;
        GenericDatum::new(gl_parts, temp_part, form)
    }
}

fn assemble(
    gl_parts: &[FormalParameter],
    anchor: &FormalParameter,
) -> Result<FormalParameter, Error> {
    let mut out = anchor.as_l_kind()?;
    for tau in gl_parts {
        let tau = tau.as_l_kind()?;
        out = out.add(&tau)?.add(&tau.dual())?;
    }
    Ok(out)
}

/// The one-factor parameter of the dual of the generic representation:
/// every block and the anchor are swapped and spread out.  The result has
/// trivial Deligne factor (every summand has first factor S_1).
pub fn generic_dual_l(d: &GenericDatum) -> Result<FormalParameter, Error> {
    let mut out = d.temp_part.phi().hat().arthur_to_l();
    for tau in &d.gl_parts {
        let spread = tau.hat().arthur_to_l();
        out = out.add(&spread)?.add(&spread.dual())?;
    }
    assert!(
        out.entries().iter().all(|(s, _)| s.a == 1),
        "the dual of a generic representation has trivial Deligne factor"
    );
    Ok(out)
}

/// Check the precondition shared by the split, shape, and chain operations:
/// tempered, centered, every summand of one of the self-dual classes, and
/// all summand duality signs equal.
fn check_good_parity_tempered(phi: &FormalParameter) -> Result<(), Error> {
    if phi.kind != ParamKind::Arthur || !phi.is_tempered() {
        return Err(Error::Unsupported(
            "the operation applies to tempered parameters of kind arthur".into(),
        ));
    }
    let mut sign: Option<Sign> = None;
    for (s, _) in phi.entries() {
        if s.x != Ratio::from(0) {
            return Err(Error::Validation(
                "good parity requires every summand centered at 0".into(),
            ));
        }
        let Some(base) = s.rho.sd.duality_sign() else {
            return Err(Error::Validation(
                "good parity requires self-dual building blocks".into(),
            ));
        };
        let this = base * Sign::from_parity(s.a as i64 - 1);
        if *sign.get_or_insert(this) != this {
            return Err(Error::Validation(
                "good parity requires all summands of the same duality sign".into(),
            ));
        }
    }
    Ok(())
}

/// Per-building-block ladder data: the ordered sizes present and the
/// partial multiplicity sums from each rung upward.
struct Ladder {
    rho: Irrep,
    /// true when the sizes are even
    even: bool,
    /// (rung index i >= if even {1} else {0}, multiplicity of size 2i resp. 2i+1)
    mults: Vec<(u32, u32)>,
}

impl Ladder {
    /// Partial sum of multiplicities at rung >= i.
    fn partial(&self, i: u32) -> u32 {
        self.mults
            .iter()
            .filter(|(j, _)| *j >= i)
            .map(|(_, m)| m)
            .sum()
    }

    fn top(&self) -> u32 {
        self.mults.last().map(|(j, _)| *j).unwrap_or(0)
    }
}

fn ladders(phi: &FormalParameter) -> Result<Vec<Ladder>, Error> {
    check_good_parity_tempered(phi)?;
    let mut out: Vec<Ladder> = Vec::new();
    for (s, m) in phi.entries() {
        let even = s.a % 2 == 0;
        let rung = s.a / 2; // 2i -> i, 2i+1 -> i
        match out.last_mut() {
            Some(l) if l.rho == s.rho => {
                debug_assert_eq!(l.even, even, "one parity per block in good parity");
                l.mults.push((rung, *m));
            }
            _ => out.push(Ladder {
                rho: s.rho.clone(),
                even,
                mults: alloc::vec![(rung, *m)],
            }),
        }
    }
    Ok(out)
}

/// The closed-form split of the swapped parameter: an anchor with trivial
/// Deligne and first factor S_1 (two-factor kind), and a strictly twisted
/// half (one-factor kind) so that anchor + half + dual(half) is the spread
/// of the swap.
pub fn phi0_phi1_split(
    phi: &FormalParameter,
) -> Result<(FormalParameter, FormalParameter), Error> {
    let mut phi0: Vec<(Summand, u32)> = Vec::new();
    let mut phi1: Vec<(Summand, u32)> = Vec::new();
    for l in ladders(phi)? {
        let top = l.top();
        if l.even {
            for i in 1..=top {
                let x = Ratio::new(2 * i as i64 - 1, 2);
                phi1.push((Summand::new(l.rho.clone(), x, 1, 1), l.partial(i)));
            }
        } else {
            let m0 = l.partial(0);
            if m0 > 0 {
                phi0.push((Summand::new(l.rho.clone(), Ratio::from(0), 1, 1), m0));
            }
            for i in 1..=top {
                let x = Ratio::from(i as i64);
                phi1.push((Summand::new(l.rho.clone(), x, 1, 1), l.partial(i)));
            }
        }
    }
    Ok((
        FormalParameter::from_parts(ParamKind::Arthur, phi0),
        FormalParameter::from_parts(ParamKind::L, phi1),
    ))
}

/// One twist of the standard module, or one peel of the chain: a building
/// block, a strictly negative exponent, and a multiplicity.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct ChainRecord {
    pub rho: Irrep,
    pub exponent: Exp,
    pub mult: u32,
}

/// The shape of the standard module of the dual: an ordered list of
/// negative twists over an anchor with trivial character.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StandardModuleShape {
    pub twists: Vec<ChainRecord>,
    pub anchor: FormalParameter,
    pub anchor_character: SignCharacter,
}

/// The standard-module shape of the dual of the generic representation
/// attached to a good-parity tempered parameter.  Twists are emitted per
/// building block with exponents increasing; the deepest twist carries the
/// multiplicity of the top rung alone, and each shallower twist accumulates
/// the rungs above it.
pub fn standard_module_shape(phi: &FormalParameter) -> Result<StandardModuleShape, Error> {
    let mut twists = Vec::new();
    let mut phi0: Vec<(Summand, u32)> = Vec::new();
    for l in ladders(phi)? {
        let top = l.top();
        if l.even {
            for j in (1..=top).rev() {
                twists.push(ChainRecord {
                    rho: l.rho.clone(),
                    exponent: -Ratio::new(2 * j as i64 - 1, 2),
                    mult: l.partial(j),
                });
            }
        } else {
            let m0 = l.partial(0);
            if m0 > 0 {
                phi0.push((Summand::new(l.rho.clone(), Ratio::from(0), 1, 1), m0));
            }
            for j in (1..=top).rev() {
                twists.push(ChainRecord {
                    rho: l.rho.clone(),
                    exponent: -Ratio::from(j as i64),
                    mult: l.partial(j),
                });
            }
        }
    }
    let anchor = FormalParameter::from_parts(ParamKind::Arthur, phi0);
    let keys: Vec<(GpKey, Sign)> = anchor
        .entries()
        .iter()
        .map(|(s, _)| (GpKey::of(s), Sign::Plus))
        .collect();
    let anchor_character = SignCharacter::from_pairs(keys)?;
    Ok(StandardModuleShape {
        twists,
        anchor,
        anchor_character,
    })
}

/// Replay the inductive peeling: repeatedly pick the block with the largest
/// remaining ladder top (ties to the smaller block), peel its top rung as a
/// twist at exponent -(top-1)/2, and lower the rung by two, merging into
/// the rung below.  Terminates when only size-one rungs remain.  The
/// resulting twist multiset equals the standard-module twist multiset.
pub fn generic_dual_chain(phi: &FormalParameter) -> Result<Vec<ChainRecord>, Error> {
    check_good_parity_tempered(phi)?;
    // (rho, size) -> mult, kept sorted
    let mut rungs: Vec<(Irrep, u32, u32)> = phi
        .entries()
        .iter()
        .map(|(s, m)| (s.rho.clone(), s.a, *m))
        .collect();
    let mut out = Vec::new();
    loop {
        let Some(pos) = rungs
            .iter()
            .enumerate()
            .filter(|(_, (_, a, _))| *a >= 2)
            .max_by(|(i, (_, a, _)), (j, (_, b, _))| a.cmp(b).then(j.cmp(i)))
            .map(|(i, _)| i)
        else {
            break;
        };
        let (rho, a, m) = rungs.remove(pos);
        out.push(ChainRecord {
            rho: rho.clone(),
            exponent: -Ratio::new(a as i64 - 1, 2),
            mult: m,
        });
        if a >= 3 {
            match rungs.iter_mut().find(|(r, b, _)| *r == rho && *b == a - 2) {
                Some(entry) => entry.2 += m,
                None => {
                    rungs.push((rho, a - 2, m));
                    rungs.sort();
                }
            }
        }
        assert!(
            out.len() <= 100_000,
            "peeling terminates: total size strictly decreases"
        );
    }
    Ok(out)
}

// --------------------------------------------------------------------------
// tests
// --------------------------------------------------------------------------

#[cfg(test)]
mod tests {
    use super::*;
    use crate::param::{parse_input, parse_param};

    fn sorted(mut v: Vec<ChainRecord>) -> Vec<ChainRecord> {
        v.sort();
        v
    }

    fn gp(text: &str) -> FormalParameter {
        parse_param(text).unwrap()
    }

    fn anchor_label(input: &str) -> PacketLabel {
        let (g, phi) = parse_input(input).unwrap();
        let part = validate_for_group(&phi, &g).unwrap();
        let eps = SignCharacter::trivial_for(&part);
        PacketLabel::new(phi, eps, g).unwrap()
    }

    #[test]
    fn pinned_dual_on_so3() {
        let d = GenericDatum::new(
            Vec::new(),
            anchor_label("SO(3,split): one[1,O]@S(2)xS(1)"),
            GroupForm::new(crate::group::Family::SOOdd, 3, crate::group::FormFlag::Split)
                .unwrap(),
        )
        .unwrap();
        let out = generic_dual_l(&d).unwrap();
        let expected = gp("one[1,O]|1/2@S(1)xS(1) + one[1,O]|-1/2@S(1)xS(1)")
            .as_l_kind()
            .unwrap();
        assert_eq!(out, expected);
        // and it agrees with the spread of the swapped anchor
        assert_eq!(out, d.temp_part().phi().hat().arthur_to_l());
        assert_eq!(out.dim(), d.assembled().dim());
    }

    #[test]
    fn already_trivial_deligne_is_fixed() {
        let d = GenericDatum::new(
            alloc::vec![gp("rho[2,N]|1/4@S(1)xS(1)")],
            anchor_label("SO(2,qs): eta[1,O]@S(1)xS(1)^2"),
            GroupForm::new(
                crate::group::Family::SOEven,
                6,
                crate::group::FormFlag::QuasiSplit,
            )
            .unwrap(),
        )
        .unwrap();
        let out = generic_dual_l(&d).unwrap();
        assert_eq!(out, d.assembled());
    }

    #[test]
    fn gl_block_spreads_with_its_dual() {
        let d = GenericDatum::new(
            alloc::vec![gp("mu[1,O]@S(2)xS(1)")],
            anchor_label("SO(1,split): 0"),
            GroupForm::new(crate::group::Family::SOOdd, 5, crate::group::FormFlag::Split)
                .unwrap(),
        )
        .unwrap();
        let out = generic_dual_l(&d).unwrap();
        let expected = gp("mu[1,O]|1/2@S(1)xS(1)^2 + mu[1,O]|-1/2@S(1)xS(1)^2")
            .as_l_kind()
            .unwrap();
        assert_eq!(out, expected);

        // the same datum built from the ambient form alone
        let from_ambient = GenericDatum::from_ambient(
            alloc::vec![gp("mu[1,O]@S(2)xS(1)")],
            gp("0"),
            GroupForm::new(crate::group::Family::SOOdd, 5, crate::group::FormFlag::Split)
                .unwrap(),
        )
        .unwrap();
        assert_eq!(from_ambient, d);
        // blocks larger than the form are refused
        assert!(GenericDatum::from_ambient(
            alloc::vec![gp("mu[1,O]@S(2)xS(1)^2")],
            gp("0"),
            GroupForm::new(crate::group::Family::SOOdd, 5, crate::group::FormFlag::Split)
                .unwrap(),
        )
        .is_err());
    }

    #[test]
    fn datum_invariants_enforced() {
        // nontrivial character on the anchor
        let (g, phi) = parse_input("SO(3,inner): one[1,O]@S(2)xS(1)").unwrap();
        let part = validate_for_group(&phi, &g).unwrap();
        let eps = SignCharacter::positional_for(&part, &[Sign::Minus]).unwrap();
        let l = PacketLabel::new(phi, eps, g).unwrap();
        assert!(GenericDatum::new(
            Vec::new(),
            l,
            GroupForm::new(crate::group::Family::SOOdd, 3, crate::group::FormFlag::Inner).unwrap()
        )
        .is_err());

        // ambient form too small for the blocks
        assert!(GenericDatum::new(
            alloc::vec![gp("mu[1,O]@S(2)xS(1)")],
            anchor_label("SO(3,split): one[1,O]@S(2)xS(1)"),
            GroupForm::new(crate::group::Family::SOOdd, 5, crate::group::FormFlag::Split).unwrap()
        )
        .is_err());

        // anchor with a pair of non-self-dual summands is not good parity
        let (g, phi) = parse_input("SO(5,split): tau[2,N]|1/4@S(1)xS(1)+dual").unwrap();
        let part = validate_for_group(&phi, &g).unwrap();
        let eps = SignCharacter::trivial_for(&part);
        let l = PacketLabel::new(phi, eps, g).unwrap();
        assert!(GenericDatum::new(
            Vec::new(),
            l,
            GroupForm::new(crate::group::Family::SOOdd, 5, crate::group::FormFlag::Split).unwrap()
        )
        .is_err());
    }

    #[test]
    fn split_examples() {
        let (phi0, phi1) = phi0_phi1_split(&gp("one[1,O]@S(2)xS(1)")).unwrap();
        assert!(phi0.is_empty());
        assert_eq!(
            phi1,
            gp("one[1,O]|1/2@S(1)xS(1)").as_l_kind().unwrap()
        );

        let (phi0, phi1) = phi0_phi1_split(&gp("one[1,O]@S(1)xS(1)")).unwrap();
        assert_eq!(phi0, gp("one[1,O]@S(1)xS(1)"));
        assert!(phi1.is_empty());

        // odd ladder {1, 3}: anchor multiplicity 2, one twist at exponent 1
        let (phi0, phi1) =
            phi0_phi1_split(&gp("rho[1,O]@S(1)xS(1) + rho[1,O]@S(3)xS(1)")).unwrap();
        assert_eq!(phi0, gp("rho[1,O]@S(1)xS(1)^2"));
        assert_eq!(phi1, gp("rho[1,O]|1@S(1)xS(1)").as_l_kind().unwrap());
    }

    #[test]
    fn split_reassembly_identity() {
        let cases = [
            "one[1,O]@S(2)xS(1)",
            "one[1,O]@S(1)xS(1)",
            "rho[1,O]@S(1)xS(1) + rho[1,O]@S(3)xS(1)",
            "rho[1,O]@S(3)xS(1)^2 + rho[1,O]@S(5)xS(1) + eta[2,S]@S(2)xS(1)",
            "mu[2,CO]@S(1)xS(1)^3 + mu[2,CO]@S(3)xS(1) + nu[1,CS]@S(2)xS(1)^2",
            "chi[1,S]@S(2)xS(1) + chi[1,S]@S(4)xS(1)^2",
        ];
        for text in cases {
            let phi = gp(text);
            let (phi0, phi1) = phi0_phi1_split(&phi).unwrap();
            let reassembled = phi0
                .as_l_kind()
                .unwrap()
                .add(&phi1)
                .unwrap()
                .add(&phi1.dual())
                .unwrap();
            assert_eq!(reassembled, phi.hat().arthur_to_l(), "{}", text);
        }
    }

    #[test]
    fn shape_examples_and_mirroring() {
        let shape = standard_module_shape(&gp("one[1,O]@S(2)xS(1)")).unwrap();
        assert!(shape.anchor.is_empty());
        assert_eq!(shape.twists.len(), 1);
        assert_eq!(shape.twists[0].exponent, -Ratio::new(1, 2));
        assert_eq!(shape.twists[0].mult, 1);

        // even ladder {2, 4}: the deep twist carries only the top rung
        let shape =
            standard_module_shape(&gp("rho[1,S]@S(2)xS(1) + rho[1,S]@S(4)xS(1)")).unwrap();
        let got: Vec<(Exp, u32)> = shape
            .twists
            .iter()
            .map(|t| (t.exponent, t.mult))
            .collect();
        assert_eq!(
            got,
            alloc::vec![(-Ratio::new(3, 2), 1), (-Ratio::new(1, 2), 2)]
        );

        // odd ladder {1, 3}: one twist (rho, -1, 1) over the doubled anchor
        let shape =
            standard_module_shape(&gp("rho[1,O]@S(1)xS(1) + rho[1,O]@S(3)xS(1)")).unwrap();
        assert_eq!(shape.anchor, gp("rho[1,O]@S(1)xS(1)^2"));
        assert_eq!(shape.twists.len(), 1);
        assert_eq!(shape.twists[0].exponent, -Ratio::from(1));
        assert_eq!(shape.twists[0].mult, 1);
        assert!(shape.anchor_character.is_trivial());

        // exponents strictly increase within each block and are negative
        let shape = standard_module_shape(&gp(
            "rho[1,O]@S(3)xS(1)^2 + rho[1,O]@S(5)xS(1) + eta[2,S]@S(2)xS(1)",
        ))
        .unwrap();
        for w in shape.twists.windows(2) {
            if w[0].rho == w[1].rho {
                assert!(w[0].exponent < w[1].exponent);
            }
        }
        assert!(shape.twists.iter().all(|t| t.exponent < Ratio::from(0)));
    }

    #[test]
    fn chain_matches_shape() {
        let cases = [
            "one[1,O]@S(2)xS(1)",
            "one[1,O]@S(1)xS(1)",
            "rho[1,O]@S(1)xS(1) + rho[1,O]@S(3)xS(1)",
            "rho[1,O]@S(3)xS(1)^2 + rho[1,O]@S(5)xS(1) + eta[2,S]@S(2)xS(1)",
            "mu[2,CO]@S(1)xS(1)^3 + mu[2,CO]@S(3)xS(1) + nu[1,CS]@S(2)xS(1)^2",
            "chi[1,S]@S(2)xS(1) + chi[1,S]@S(4)xS(1)^2",
        ];
        for text in cases {
            let phi = gp(text);
            let chain = generic_dual_chain(&phi).unwrap();
            let shape = standard_module_shape(&phi).unwrap();
            assert_eq!(sorted(chain), sorted(shape.twists), "{}", text);
        }
        // all sizes one: zero peels
        assert!(generic_dual_chain(&gp("one[1,O]@S(1)xS(1)^2 + chi[1,O]@S(1)xS(1)"))
            .unwrap()
            .is_empty());
    }

    #[test]
    fn preconditions_rejected() {
        assert!(phi0_phi1_split(&gp("tau[2,N]|1/4@S(1)xS(1)+dual")).is_err());
        assert!(phi0_phi1_split(&gp("one[1,O]@S(1)xS(2)")).is_err());
        assert!(generic_dual_chain(&gp("one[1,O]@S(2)xS(1) + chi[1,S]@S(2)xS(1)")).is_err());
    }
}
