//! Structural validation of a formal parameter against a group form, and
//! the resulting partition of its summands into good parity, bad parity and
//! non-self-dual pairs.

use crate::group::GroupForm;
use crate::param::{FormalParameter, ParamKind, SdClass, Summand};
use crate::sign::Sign;
use crate::Error;
use alloc::format;
use alloc::vec::Vec;
use num_rational::Ratio;

/// One (conjugate-)self-dual summand with its multiplicity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GpEntry {
    pub summand: Summand,
    pub mult: u32,
}

/// A dual pair of non-self-dual summands.  The representative has positive
/// shift, or (at shift zero) the lexicographically smaller label; both sides
/// carry the same multiplicity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NsdPair {
    pub rep: Summand,
    pub partner: Summand,
    pub mult: u32,
}

/// The partition of a validated parameter: good-parity summands (self-dual
/// of the sign the group calls for), bad-parity summands (self-dual of the
/// opposite sign), and non-self-dual pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GpPartition {
    pub group: GroupForm,
    pub total_dim: u32,
    pub gp: Vec<GpEntry>,
    pub bp: Vec<GpEntry>,
    pub nsd: Vec<NsdPair>,
}

impl GpPartition {
    /// Only good-parity summands, each with multiplicity one.
    pub fn is_discrete(&self) -> bool {
        self.is_good_parity() && self.gp.iter().all(|e| e.mult == 1)
    }

    /// No bad-parity or non-self-dual summands.
    pub fn is_good_parity(&self) -> bool {
        self.bp.is_empty() && self.nsd.is_empty()
    }

    /// Dimension of the good-parity part.
    pub fn gp_dim(&self) -> u32 {
        self.gp.iter().map(|e| e.summand.gl_dim() * e.mult).sum()
    }

    /// The number of GL-blocks split off when descending to the maximal
    /// parameter with multiplicity-free good-parity part: floor(m/2) per
    /// good-parity summand, m/2 per bad-parity summand, m per pair.
    pub fn block_count(&self) -> u32 {
        let gp: u32 = self.gp.iter().map(|e| e.mult / 2).sum();
        let bp: u32 = self.bp.iter().map(|e| e.mult / 2).sum();
        let nsd: u32 = self.nsd.iter().map(|p| p.mult).sum();
        gp + bp + nsd
    }

    /// Total dimension of those GL-blocks; the parameter is relevant for a
    /// form exactly when this fits inside its Witt index.
    pub fn levi_rank(&self) -> u32 {
        let gp: u32 = self
            .gp
            .iter()
            .map(|e| (e.mult / 2) * e.summand.gl_dim())
            .sum();
        let bp: u32 = self
            .bp
            .iter()
            .map(|e| (e.mult / 2) * e.summand.gl_dim())
            .sum();
        let nsd: u32 = self.nsd.iter().map(|p| p.mult * p.rep.gl_dim()).sum();
        gp + bp + nsd
    }
}

/// Classify the summands of `p` against a target duality sign, without any
/// dimension bookkeeping.  `unitary` selects which duality classes are
/// legal (CO/CS/N over the quadratic extension, O/S/N otherwise).
pub(crate) fn classify_entries(
    p: &FormalParameter,
    target: Sign,
    unitary: bool,
) -> Result<(Vec<GpEntry>, Vec<GpEntry>, Vec<NsdPair>), Error> {
    let zero = Ratio::from_integer(0);
    let mut gp: Vec<GpEntry> = Vec::new();
    let mut bp: Vec<GpEntry> = Vec::new();
    let mut rest: Vec<(Summand, u32)> = Vec::new();

    for (s, m) in p.entries() {
        let legal = match s.rho.sd {
            SdClass::O | SdClass::S => !unitary,
            SdClass::CO | SdClass::CS => unitary,
            SdClass::N => true,
        };
        if !legal {
            return Err(Error::Validation(format!(
                "duality class {} is not available for this group family (summand {})",
                s.rho.sd, s
            )));
        }
        let sd_sign = if s.x == zero {
            s.rho.sd.duality_sign()
        } else {
            None
        };
        match sd_sign {
            Some(rho_sign) => {
                let sign = rho_sign * Sign::from_parity((s.a - 1) as i64 + (s.b - 1) as i64);
                if sign == target {
                    gp.push(GpEntry {
                        summand: s.clone(),
                        mult: *m,
                    });
                } else {
                    if m % 2 != 0 {
                        return Err(Error::Validation(format!(
                            "bad-parity summand {} must occur with even multiplicity, got {}",
                            s, m
                        )));
                    }
                    bp.push(GpEntry {
                        summand: s.clone(),
                        mult: *m,
                    });
                }
            }
            None => rest.push((s.clone(), *m)),
        }
    }

    // Pair up the non-self-dual summands.  `rest` is in canonical order.
    let mut nsd: Vec<NsdPair> = Vec::new();
    while let Some((s, m)) = rest.first().cloned() {
        rest.remove(0);
        let d = s.dual();
        debug_assert!(d != s);
        let at = rest.iter().position(|(t, _)| *t == d);
        match at {
            Some(i) if rest[i].1 == m => {
                rest.remove(i);
            }
            _ => {
                return Err(Error::Validation(format!(
                    "summand {} is not self-dual and has no matching dual partner {} (multiplicities must agree)",
                    s, d
                )));
            }
        }
        let (rep, partner) = if s.x > d.x {
            (s, d)
        } else if d.x > s.x {
            (d, s)
        } else if s.rho.label < d.rho.label {
            (s, d)
        } else {
            (d, s)
        };
        nsd.push(NsdPair { rep, partner, mult: m });
    }
    nsd.sort_by(|p, q| p.rep.cmp(&q.rep));

    Ok((gp, bp, nsd))
}

/// Validate a parameter against a group form and return its partition.
///
/// Checks: legal duality classes for the family; shifts within (-1/2, 1/2)
/// for kind `arthur`; bad-parity multiplicities even; non-self-dual
/// summands paired with equal multiplicities; total dimension equal to the
/// group's parameter-space dimension.  The rationality flag plays no role
/// here — a parameter is valid for a form iff it is valid for its
/// quasi-split inner twist.
pub fn validate_for_group(p: &FormalParameter, g: &GroupForm) -> Result<GpPartition, Error> {
    if p.kind == ParamKind::Arthur {
        let half = Ratio::new(1, 2);
        for (s, _) in p.entries() {
            if s.x >= half || s.x <= -half {
                return Err(Error::Validation(format!(
                    "summand {} has |shift| >= 1/2, not allowed for kind arthur",
                    s
                )));
            }
        }
    }
    let (gp, bp, nsd) = classify_entries(p, g.target_sign(), g.is_unitary())?;
    let total_dim = p.dim();
    if total_dim != g.dual_dim() {
        return Err(Error::Validation(format!(
            "parameter has dimension {} but {} needs {}",
            total_dim,
            g,
            g.dual_dim()
        )));
    }
    Ok(GpPartition {
        group: *g,
        total_dim,
        gp,
        bp,
        nsd,
    })
}

/// Whether the packet attached to `p` has members on the form `g`: the
/// parameter must factor through a Levi subgroup available on `g`, i.e. the
/// GL-block dimension must not exceed the Witt index.
pub fn is_relevant(p: &FormalParameter, g: &GroupForm) -> Result<bool, Error> {
    let part = validate_for_group(p, g)?;
    Ok((part.levi_rank() as i64) <= g.witt_rank())
}

// --------------------------------------------------------------------------
// tests
// --------------------------------------------------------------------------

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{Family, FormFlag};
    use crate::param::parse_input;

    fn validated(input: &str) -> GpPartition {
        let (g, p) = parse_input(input).unwrap();
        validate_for_group(&p, &g).unwrap()
    }

    #[test]
    fn counterexample_groups_classify() {
        // three quadratic-character summands on Sp(2)
        let part = validated("Sp(2): chi[1,O]@S(1)xS(1)^2 + one[1,O]@S(1)xS(1)");
        assert_eq!(part.gp.len(), 2);
        assert!(part.bp.is_empty() && part.nsd.is_empty());
        assert_eq!(part.gp[0].mult, 2);
        assert_eq!(part.gp[1].mult, 1);
        assert!(!part.is_discrete());

        // principal anti-tempered parameter of SO(3)
        let part = validated("SO(3,split): one[1,O]@S(1)xS(2)");
        assert_eq!(part.gp.len(), 1);
        assert!(part.is_discrete());
    }

    #[test]
    fn parity_splits_into_gp_and_bp() {
        // on SO(2n+1) the target sign is -1; an O-type summand with a+b even
        // is bad parity and needs even multiplicity
        let part = validated("SO(5,split): chi[1,O]@S(1)xS(1)^2 + one[1,O]@S(1)xS(2)");
        assert_eq!(part.bp.len(), 1);
        assert_eq!(part.gp.len(), 1);
        let (g, p) = parse_input("SO(4,split): chi[1,O]@S(1)xS(1)^3 + one[1,O]@S(1)xS(1)").unwrap();
        // chi and one are both good parity for SO(4); fine
        assert!(validate_for_group(&p, &g).unwrap().is_good_parity());
        let (g, p) = parse_input("SO(5,split): chi[1,O]@S(1)xS(1)^3 + one[1,O]@S(1)xS(1)").unwrap();
        // ...but bad parity with odd multiplicity for SO(5)
        assert!(validate_for_group(&p, &g).is_err());
    }

    #[test]
    fn nsd_pairing() {
        let part = validated("SO(5,split): tau[1,N]|1/4@S(2)xS(1)+dual");
        assert_eq!(part.nsd.len(), 1);
        assert_eq!(part.nsd[0].rep.x, Ratio::new(1, 4));
        assert_eq!(part.nsd[0].mult, 1);
        // unpaired shifted summand
        let (g, p) = parse_input("SO(5,split): tau[1,N]|1/4@S(2)xS(1) + tau[1,N]|-1/4@S(2)xS(1)").unwrap();
        // tau paired with tau (not tau*) is not a dual pair: dual of
        // tau|1/4 is tau*|-1/4
        assert!(validate_for_group(&p, &g).is_err());
        // shift-zero class-N pair: representative is the smaller label
        let part = validated("SO(5,split): tau[2,N]@S(1)xS(1) + tau*[2,N]@S(1)xS(1)");
        assert_eq!(part.nsd[0].rep.rho.label, "tau");
        // a self-dual label with a shift pairs with itself at the opposite shift
        let part = validated("Sp(4): rho[2,S]|1/4@S(1)xS(1)+dual + one[1,O]@S(1)xS(1)");
        assert_eq!(part.nsd.len(), 1);
        assert_eq!(part.nsd[0].rep.rho.label, "rho");
        assert_eq!(part.nsd[0].partner.x, Ratio::new(-1, 4));
    }

    #[test]
    fn dimension_and_shift_checks() {
        let (g, p) = parse_input("Sp(4): chi[1,O]@S(1)xS(1)").unwrap();
        assert!(matches!(
            validate_for_group(&p, &g),
            Err(Error::Validation(_))
        ));
        let (g, p) = parse_input("Sp(2): chi[1,O]|1/2@S(1)xS(1) + chi[1,O]|-1/2@S(1)xS(1) + one[1,O]@S(1)xS(1)").unwrap();
        assert!(validate_for_group(&p, &g).is_err());
    }

    #[test]
    fn unitary_classes() {
        let part = validated("U(3,split): mu[1,CO]@S(1)xS(1)^3");
        assert_eq!(part.gp.len(), 1);
        assert!(validate_for_group(
            &parse_input("U(3,split): mu[1,O]@S(1)xS(1)^3").unwrap().1,
            &GroupForm::new(Family::U, 3, FormFlag::Split).unwrap()
        )
        .is_err());
        // U(2): conjugate-symplectic is good parity
        let part = validated("U(2,split): nu[1,CS]@S(1)xS(1)^2");
        assert_eq!(part.gp.len(), 1);
        let part = validated("U(2,split): mu[1,CO]@S(1)xS(1)^2");
        assert_eq!(part.bp.len(), 1);
    }

    #[test]
    fn relevance() {
        let (g, p) = parse_input("SO(7,inner): one[1,O]@S(1)xS(2)^3").unwrap();
        assert!(is_relevant(&p, &g).unwrap());
        assert!(is_relevant(&p.arthur_to_l(), &g).unwrap() == false);
        assert!(is_relevant(&p, &g.quasi_split()).unwrap());
        assert!(is_relevant(&p.arthur_to_l(), &g.quasi_split()).unwrap());
    }

    #[test]
    fn block_counts() {
        let part = validated("SO(7,inner): one[1,O]@S(1)xS(2)^3");
        assert_eq!(part.block_count(), 1);
        assert_eq!(part.levi_rank(), 2);
        let (g, p) = parse_input("SO(7,split): one[1,O]@S(1)xS(2)^3").unwrap();
        let lp = validate_for_group(&p.arthur_to_l(), &g).unwrap();
        assert_eq!(lp.levi_rank(), 3);
    }
}
