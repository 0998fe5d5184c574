//! The component group attached to a validated parameter, its sign
//! characters, and the distinguished elements used by the sign calculus.
//!
//! The component group of a parameter with k good-parity summands is
//! (Z/2)^k; both its elements and its characters are vectors of signs
//! indexed by the good-parity summands, so one representation serves for
//! both.  The pairing multiplies coordinates: a coordinate contributes -1
//! exactly when both vectors are -1 there.

use crate::classify::GpPartition;
use crate::group::GroupForm;
use crate::param::{SdClass, Summand};
use crate::sign::Sign;
use crate::Error;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

/// Identity of a good-parity summand (the shift is zero by definition, so
/// it is omitted).  The derived ordering is the canonical one.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GpKey {
    pub label: String,
    pub dim: u32,
    pub sd: SdClass,
    pub a: u32,
    pub b: u32,
}

impl GpKey {
    pub fn of(s: &Summand) -> GpKey {
        GpKey {
            label: s.rho.label.clone(),
            dim: s.rho.dim,
            sd: s.rho.sd,
            a: s.a,
            b: s.b,
        }
    }
}

impl core::fmt::Display for GpKey {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "{}@S({})xS({})", self.label, self.a, self.b)
    }
}

/// A vector of signs indexed by the good-parity summands of a parameter.
/// Serves both as an element of the component group and as a character of
/// it.  Entries are kept sorted by key.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SignCharacter {
    entries: Vec<(GpKey, Sign)>,
}

impl SignCharacter {
    pub fn from_pairs(mut pairs: Vec<(GpKey, Sign)>) -> Result<SignCharacter, Error> {
        pairs.sort_by(|a, b| a.0.cmp(&b.0));
        for w in pairs.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(Error::Validation(format!(
                    "duplicate component-group coordinate {}",
                    w[0].0
                )));
            }
        }
        Ok(SignCharacter { entries: pairs })
    }

    /// The trivial vector on the good-parity summands of a partition.
    pub fn trivial_for(part: &GpPartition) -> SignCharacter {
        SignCharacter {
            entries: part
                .gp
                .iter()
                .map(|e| (GpKey::of(&e.summand), Sign::Plus))
                .collect(),
        }
    }

    /// Build from positional values in the canonical order of the
    /// good-parity summands.
    pub fn positional_for(part: &GpPartition, values: &[Sign]) -> Result<SignCharacter, Error> {
        if values.len() != part.gp.len() {
            return Err(Error::DomainMismatch(format!(
                "{} values supplied for {} good-parity summands",
                values.len(),
                part.gp.len()
            )));
        }
        Ok(SignCharacter {
            entries: part
                .gp
                .iter()
                .zip(values)
                .map(|(e, v)| (GpKey::of(&e.summand), *v))
                .collect(),
        })
    }

    pub fn entries(&self) -> &[(GpKey, Sign)] {
        &self.entries
    }

    pub fn get(&self, key: &GpKey) -> Option<Sign> {
        self.entries
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, s)| *s)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn is_trivial(&self) -> bool {
        self.entries.iter().all(|(_, s)| s.is_plus())
    }

    pub fn same_domain(&self, other: &SignCharacter) -> bool {
        self.entries.len() == other.entries.len()
            && self
                .entries
                .iter()
                .zip(&other.entries)
                .all(|((k, _), (l, _))| k == l)
    }

    /// Coordinate-wise product (group law on both elements and characters).
    pub fn mul(&self, other: &SignCharacter) -> Result<SignCharacter, Error> {
        if !self.same_domain(other) {
            return Err(Error::DomainMismatch(
                "sign vectors live on different component groups".into(),
            ));
        }
        Ok(SignCharacter {
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|((k, s), (_, t))| (k.clone(), *s * *t))
                .collect(),
        })
    }

    /// Positional values in canonical order.
    pub fn values(&self) -> Vec<Sign> {
        self.entries.iter().map(|(_, s)| *s).collect()
    }

    /// Keep only the coordinates present in `keys` (which must be a subset).
    pub(crate) fn restricted_to(&self, keys: &[GpKey]) -> Result<SignCharacter, Error> {
        let mut entries = Vec::with_capacity(keys.len());
        for k in keys {
            match self.get(k) {
                Some(v) => entries.push((k.clone(), v)),
                None => {
                    return Err(Error::DomainMismatch(format!(
                        "coordinate {} is not in the character's domain",
                        k
                    )))
                }
            }
        }
        SignCharacter::from_pairs(entries)
    }
}

impl core::fmt::Display for SignCharacter {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        if self.entries.is_empty() {
            return f.write_str("(empty)");
        }
        for (i, (k, s)) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}={}", k, s)?;
        }
        Ok(())
    }
}

/// The component group of a validated parameter together with its
/// distinguished sign vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentGroupInfo {
    /// The group form the parameter was validated against.
    pub group: GroupForm,
    /// Number of good-parity summands (so the component group is (Z/2)^k).
    pub gp_count: usize,
    /// Order of the component group, 2^k.
    pub order_c: u128,
    /// Whether characters are taken relative to the unitary convention
    /// (no central quotient) rather than the quotient by the determinant
    /// vector.
    pub is_unitary_convention: bool,
    /// The image of -1: coordinate (-1)^(multiplicity).
    pub e0: SignCharacter,
    /// The distinguished element of the parameter: coordinate
    /// (-1)^((b-1) * multiplicity).
    pub e_psi: SignCharacter,
    /// The determinant character: coordinate (-1)^(dim rho * a * b).
    pub eps0: SignCharacter,
    /// Parity of the total parameter dimension, as a sign.
    pub dim_m_parity: Sign,
    /// Multiplicity of each good-parity summand, in canonical order.
    pub mults: Vec<(GpKey, u32)>,
}

/// Compute the component-group data of a validated parameter.
pub fn component_info(part: &GpPartition) -> ComponentGroupInfo {
    let mut e0 = Vec::new();
    let mut e_psi = Vec::new();
    let mut eps0 = Vec::new();
    let mut mults = Vec::new();
    for e in &part.gp {
        let key = GpKey::of(&e.summand);
        e0.push((key.clone(), Sign::from_parity(e.mult as i64)));
        e_psi.push((
            key.clone(),
            Sign::from_parity(((e.summand.b - 1) * e.mult) as i64),
        ));
        eps0.push((key.clone(), Sign::from_parity(e.summand.gl_dim() as i64)));
        mults.push((key, e.mult));
    }
    let k = part.gp.len();
    ComponentGroupInfo {
        group: part.group,
        gp_count: k,
        order_c: 1u128 << k,
        is_unitary_convention: part.group.is_unitary(),
        e0: SignCharacter { entries: e0 },
        e_psi: SignCharacter { entries: e_psi },
        eps0: SignCharacter { entries: eps0 },
        dim_m_parity: Sign::from_parity(part.total_dim as i64),
        mults,
    }
}

/// The pairing between a character and an element: a coordinate contributes
/// -1 exactly when both are -1 there.
pub fn pair(eps: &SignCharacter, elem: &SignCharacter) -> Result<Sign, Error> {
    if !eps.same_domain(elem) {
        return Err(Error::DomainMismatch(
            "character and element live on different component groups".into(),
        ));
    }
    Ok(Sign::product(eps.entries.iter().zip(&elem.entries).map(
        |((_, s), (_, t))| {
            if *s == Sign::Minus && *t == Sign::Minus {
                Sign::Minus
            } else {
                Sign::Plus
            }
        },
    )))
}

/// Evaluate a character at the distinguished element: the product of
/// eps(i)^(m_i (b_i - 1)).  Computed twice — directly and through the
/// pairing with the stored element — and the two routes must agree.
pub fn eval_at_s_psi(eps: &SignCharacter, info: &ComponentGroupInfo) -> Result<Sign, Error> {
    if !eps.same_domain(&info.e_psi) {
        return Err(Error::DomainMismatch(
            "character does not live on this component group".into(),
        ));
    }
    let direct = Sign::product(
        eps.entries
            .iter()
            .zip(&info.mults)
            .map(|((k, s), (_, m))| s.pow((*m as i64) * ((k.b - 1) as i64))),
    );
    let via_pairing = pair(eps, &info.e_psi)?;
    assert_eq!(direct, via_pairing, "the two evaluation routes disagree");
    Ok(direct)
}

/// The designated representative of the coset of `eps` modulo the
/// determinant character (identity when the convention is unitary or the
/// determinant character is trivial): for odd total dimension the member
/// pairing to +1 with e0, for even total dimension the lexicographically
/// smaller member.
pub(crate) fn designated_rep(eps: &SignCharacter, info: &ComponentGroupInfo) -> SignCharacter {
    if info.is_unitary_convention || info.eps0.is_trivial() {
        return eps.clone();
    }
    let other = eps.mul(&info.eps0).expect("same domain");
    if info.dim_m_parity == Sign::Minus {
        if pair(eps, &info.e0).expect("same domain") == Sign::Plus {
            eps.clone()
        } else {
            other
        }
    } else if eps.values() <= other.values() {
        eps.clone()
    } else {
        other
    }
}

/// Enumerate all sign vectors on the domain of `info`, most significant
/// coordinate first, so the result is in lexicographic order with +1 < -1.
fn all_vectors(info: &ComponentGroupInfo) -> Vec<SignCharacter> {
    let k = info.gp_count;
    assert!(k <= 24, "component group too large to enumerate");
    let mut out = Vec::with_capacity(1 << k);
    for mask in 0..(1u32 << k) {
        let entries: Vec<(GpKey, Sign)> = info
            .mults
            .iter()
            .enumerate()
            .map(|(i, (key, _))| {
                let bit = (mask >> (k - 1 - i)) & 1;
                (key.clone(), if bit == 0 { Sign::Plus } else { Sign::Minus })
            })
            .collect();
        out.push(SignCharacter { entries });
    }
    out
}

/// The characters of the component group that label packet members on the
/// form `g`.
///
/// Unitary convention: all characters pairing with e0 to the value of the
/// form's quadratic character at -1.  Otherwise: cosets modulo the
/// determinant character, given by their designated representatives,
/// subject to the same pairing condition; representatives are returned in
/// lexicographic order.
pub fn characters_for_form(
    info: &ComponentGroupInfo,
    g: &GroupForm,
) -> Result<Vec<SignCharacter>, Error> {
    if g.family != info.group.family || g.space_dim != info.group.space_dim {
        return Err(Error::DomainMismatch(format!(
            "form {} is not an inner twist of {}",
            g, info.group
        )));
    }
    let chi_v = g.chi_v_at_minus_one();
    let mut out: Vec<SignCharacter> = Vec::new();
    for eps in all_vectors(info) {
        if info.is_unitary_convention {
            if pair(&eps, &info.e0)? == chi_v {
                out.push(eps);
            }
        } else {
            let rep = designated_rep(&eps, info);
            if rep != eps {
                continue; // each coset is visited once, through its representative
            }
            if pair(&rep, &info.e0)? == chi_v {
                out.push(rep);
            }
        }
    }
    Ok(out)
}

/// The number of characters `characters_for_form` returns, predicted in
/// closed form from (k, triviality of e0 and of the determinant character,
/// parity of the total dimension, and the form's quadratic character).
pub fn expected_character_count(info: &ComponentGroupInfo, g: &GroupForm) -> u128 {
    let k = info.gp_count as u32;
    let chi_v = g.chi_v_at_minus_one();
    let pow = |e: u32| 1u128 << e;
    if info.is_unitary_convention {
        if info.e0.is_trivial() {
            if chi_v == Sign::Plus {
                pow(k)
            } else {
                0
            }
        } else {
            pow(k - 1)
        }
    } else {
        let n = if info.eps0.is_trivial() {
            pow(k)
        } else {
            pow(k - 1)
        };
        if info.dim_m_parity == Sign::Minus || info.e0.is_trivial() {
            // all cosets pair alike with e0
            if chi_v == Sign::Plus {
                n
            } else {
                0
            }
        } else {
            n / 2
        }
    }
}

/// For a character on an anti-tempered parameter: its restriction to the
/// component group of the associated one-factor parameter, if it factors
/// through it.  The restriction exists exactly when the character is +1 on
/// every summand with even second factor; the underlying vector is
/// unchanged.
pub fn restrict_to_l_packet_domain(
    eps: &SignCharacter,
) -> Result<Option<SignCharacter>, Error> {
    for (k, _) in &eps.entries {
        if k.a != 1 {
            return Err(Error::Unsupported(
                "restriction to the one-factor packet is defined for anti-tempered parameters"
                    .into(),
            ));
        }
    }
    let factors = eps
        .entries
        .iter()
        .all(|(k, s)| k.b % 2 == 1 || *s == Sign::Plus);
    Ok(if factors { Some(eps.clone()) } else { None })
}

// --------------------------------------------------------------------------
// tests
// --------------------------------------------------------------------------
