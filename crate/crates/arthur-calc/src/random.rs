//! Seeded samplers for the verification suites.  Every sampler uses
//! rejection from a bounded shape space, so each draw is valid by
//! construction and reproducible from the seed.

use arthur_core::{
    characters_for_form, component_info, is_relevant, validate_for_group, Eig, Exp, Family,
    FormFlag, FormalParameter, GenericDatum, GroupForm, Irrep, PacketLabel, ParamKind, SdClass,
    SemisimpleElement, Sign, Summand,
};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Bounds and reproducibility knobs for the randomized suites.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SuiteConfig {
    pub seed: u64,
    pub count: u32,
    /// bound on the underlying space dimension of any sampled form
    pub max_dim: u32,
    /// bound on the number of good-parity summand keys
    pub max_gp: u32,
    /// bound on the dimension of a building block
    pub max_rho_dim: u32,
    /// bound on the first-factor size
    pub max_a: u32,
    /// bound on the second-factor size
    pub max_b: u32,
}

impl SuiteConfig {
    pub fn new(seed: u64, count: u32) -> SuiteConfig {
        SuiteConfig {
            seed,
            count,
            max_dim: 30,
            max_gp: 6,
            max_rho_dim: 3,
            max_a: 7,
            max_b: 7,
        }
    }
}

/// The instance families the suites draw from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Flavor {
    AntiTemperedGp,
    TemperedLabel,
    GenericDatum,
    Element,
}

/// A sampled instance.
#[derive(Debug, Clone)]
pub enum Instance {
    AntiTemperedGp(GroupForm, FormalParameter),
    TemperedLabel(PacketLabel),
    Generic(GenericDatum),
    Element(GroupForm, FormalParameter, SemisimpleElement),
}

pub fn generate_random_instance(
    rng: &mut ChaCha8Rng,
    cfg: &SuiteConfig,
    flavor: Flavor,
) -> Instance {
    match flavor {
        Flavor::AntiTemperedGp => {
            let (g, psi) = anti_tempered_gp(rng, cfg);
            Instance::AntiTemperedGp(g, psi)
        }
        Flavor::TemperedLabel => Instance::TemperedLabel(tempered_label(rng, cfg)),
        Flavor::GenericDatum => Instance::Generic(generic_datum(rng, cfg)),
        Flavor::Element => {
            let (g, psi, s) = element(rng, cfg);
            Instance::Element(g, psi, s)
        }
    }
}

const SD_POOL: &[(&str, u32, SdClass)] = &[
    ("one", 1, SdClass::O),
    ("chi", 1, SdClass::O),
    ("eta", 1, SdClass::O),
    ("rho", 2, SdClass::S),
    ("sig", 2, SdClass::O),
    ("tau", 2, SdClass::S),
    ("ups", 3, SdClass::O),
    ("xi", 3, SdClass::O),
];

const CONJ_POOL: &[(&str, u32, SdClass)] = &[
    ("mu", 1, SdClass::CO),
    ("nu", 1, SdClass::CS),
    ("ka", 2, SdClass::CO),
    ("la", 2, SdClass::CS),
    ("om", 3, SdClass::CO),
    ("ps", 3, SdClass::CS),
];

const FREE_POOL: &[(&str, u32, SdClass)] = &[
    ("alp", 1, SdClass::N),
    ("bet", 2, SdClass::N),
    ("gam", 3, SdClass::N),
];

fn pick_rho(rng: &mut ChaCha8Rng, pool: &[(&str, u32, SdClass)], max_dim: u32) -> Irrep {
    loop {
        let (label, dim, sd) = pool[rng.random_range(0..pool.len())];
        if dim <= max_dim {
            return Irrep::new(label, dim, sd);
        }
    }
}

/// A factor size of the parity forced by the class and the target sign.
fn forced_size(rng: &mut ChaCha8Rng, sd: SdClass, target: Sign, max: u32) -> u32 {
    // sd * (-1)^(size-1) == target  <=>  size odd iff sd == target
    let want_odd = sd.duality_sign().expect("self-dual class") == target;
    loop {
        let v = rng.random_range(1..=max.max(2));
        if (v % 2 == 1) == want_odd {
            return v;
        }
    }
}

struct Shape {
    unitary: bool,
    family: Family,
    target: Sign,
}

fn pick_shape(rng: &mut ChaCha8Rng) -> Shape {
    if rng.random_bool(0.25) {
        Shape {
            unitary: true,
            family: Family::U,
            target: if rng.random_bool(0.5) {
                Sign::Plus
            } else {
                Sign::Minus
            },
        }
    } else {
        let family = [Family::Sp, Family::SOOdd, Family::SOEven][rng.random_range(0..3)];
        Shape {
            unitary: false,
            family,
            target: match family {
                Family::SOOdd => Sign::Minus,
                _ => Sign::Plus,
            },
        }
    }
}

/// Settle the form for a parameter of total dimension `n`, or None when the
/// shape does not admit one within bounds.
fn settle_form(
    rng: &mut ChaCha8Rng,
    shape: &Shape,
    n: u32,
    max_dim: u32,
    allow_inner: bool,
) -> Option<GroupForm> {
    let (space, flags): (u32, &[FormFlag]) = if shape.unitary {
        if Sign::from_parity(n as i64 + 1) != shape.target || n == 0 {
            return None;
        }
        (
            n,
            if allow_inner {
                &[FormFlag::Split, FormFlag::Inner]
            } else {
                &[FormFlag::Split]
            },
        )
    } else {
        match shape.family {
            Family::Sp => {
                if n % 2 == 0 {
                    return None;
                }
                (n - 1, &[FormFlag::Split])
            }
            Family::SOOdd => {
                if n % 2 == 1 {
                    return None;
                }
                (
                    n + 1,
                    if allow_inner {
                        &[FormFlag::Split, FormFlag::Inner]
                    } else {
                        &[FormFlag::Split]
                    },
                )
            }
            Family::SOEven => {
                if n % 2 == 1 || n == 0 {
                    return None;
                }
                (
                    n,
                    if allow_inner {
                        &[FormFlag::Split, FormFlag::QuasiSplit, FormFlag::Inner]
                    } else {
                        &[FormFlag::Split, FormFlag::QuasiSplit]
                    },
                )
            }
            Family::U => unreachable!(),
        }
    };
    if space > max_dim {
        return None;
    }
    let flag = flags[rng.random_range(0..flags.len())];
    GroupForm::new(shape.family, space, flag).ok()
}

/// An anti-tempered parameter of pure good parity on a random form.
pub fn anti_tempered_gp(rng: &mut ChaCha8Rng, cfg: &SuiteConfig) -> (GroupForm, FormalParameter) {
    for _ in 0..100_000 {
        let shape = pick_shape(rng);
        let pool = if shape.unitary { CONJ_POOL } else { SD_POOL };
        let nkeys = rng.random_range(1..=cfg.max_gp);
        let mut entries: Vec<(Summand, u32)> = Vec::new();
        let mut used: Vec<(String, u32)> = Vec::new();
        for _ in 0..nkeys {
            let rho = pick_rho(rng, pool, cfg.max_rho_dim);
            let b = forced_size(rng, rho.sd, shape.target, cfg.max_b);
            if used.contains(&(rho.label.clone(), b)) {
                continue;
            }
            used.push((rho.label.clone(), b));
            let m = rng.random_range(1..=3);
            entries.push((Summand::new(rho, Exp::from(0), 1, b), m));
        }
        if entries.is_empty() {
            continue;
        }
        let Ok(psi) = FormalParameter::new(ParamKind::Arthur, entries) else {
            continue;
        };
        let Some(g) = settle_form(rng, &shape, psi.dim(), cfg.max_dim, true) else {
            continue;
        };
        if validate_for_group(&psi, &g).is_err() {
            continue;
        }
        return (g, psi);
    }
    panic!("sampler failed to produce an anti-tempered instance within bounds");
}

/// An anti-tempered parameter with opposite-parity blocks and dual pairs
/// mixed into the pure good-parity core.
pub fn anti_tempered_mixed(rng: &mut ChaCha8Rng, cfg: &SuiteConfig) -> (GroupForm, FormalParameter) {
    for _ in 0..100_000 {
        let shape = pick_shape(rng);
        let pool = if shape.unitary { CONJ_POOL } else { SD_POOL };
        let nkeys = rng.random_range(1..=cfg.max_gp);
        let mut entries: Vec<(Summand, u32)> = Vec::new();
        let mut used: Vec<(String, u32)> = Vec::new();
        for _ in 0..nkeys {
            let rho = pick_rho(rng, pool, cfg.max_rho_dim);
            let b = forced_size(rng, rho.sd, shape.target, cfg.max_b);
            if used.contains(&(rho.label.clone(), b)) {
                continue;
            }
            used.push((rho.label.clone(), b));
            let m = rng.random_range(1..=3);
            entries.push((Summand::new(rho, Exp::from(0), 1, b), m));
        }
        if entries.is_empty() {
            continue;
        }
        if rng.random_bool(0.4) {
            // an opposite-parity block with even multiplicity
            let rho = pick_rho(rng, pool, cfg.max_rho_dim);
            let b = forced_size(rng, rho.sd, shape.target.flip(), cfg.max_b);
            if !used.contains(&(rho.label.clone(), b)) {
                used.push((rho.label.clone(), b));
                entries.push((Summand::new(rho, Exp::from(0), 1, b), 2));
            }
        }
        if rng.random_bool(0.4) {
            // a non-self-dual pair
            let all: Vec<&(&str, u32, SdClass)> = pool.iter().chain(FREE_POOL).collect();
            let (label, dim, sd) = *all[rng.random_range(0..all.len())];
            if dim <= cfg.max_rho_dim {
                let rho = Irrep::new(label, dim, sd);
                let x = [
                    Exp::new(1, 4),
                    Exp::new(-1, 4),
                    Exp::new(1, 3),
                    Exp::new(2, 5),
                ][rng.random_range(0..4)];
                let b = rng.random_range(1..=cfg.max_b.min(3));
                let m = rng.random_range(1..=2);
                let s = Summand::new(rho, x, 1, b);
                entries.push((s.dual(), m));
                entries.push((s, m));
            }
        }
        let Ok(psi) = FormalParameter::new(ParamKind::Arthur, entries) else {
            continue;
        };
        let Some(g) = settle_form(rng, &shape, psi.dim(), cfg.max_dim, true) else {
            continue;
        };
        if validate_for_group(&psi, &g).is_err() {
            continue;
        }
        return (g, psi);
    }
    panic!("sampler failed to produce a mixed anti-tempered instance within bounds");
}

/// A discrete tempered parameter: distinct good-parity summands, each with
/// multiplicity one.
pub fn discrete_tempered(rng: &mut ChaCha8Rng, cfg: &SuiteConfig) -> (GroupForm, FormalParameter) {
    for _ in 0..100_000 {
        let shape = pick_shape(rng);
        let pool = if shape.unitary { CONJ_POOL } else { SD_POOL };
        let nkeys = rng.random_range(1..=cfg.max_gp);
        let mut entries: Vec<(Summand, u32)> = Vec::new();
        let mut used: Vec<(String, u32)> = Vec::new();
        for _ in 0..nkeys {
            let rho = pick_rho(rng, pool, cfg.max_rho_dim);
            let a = forced_size(rng, rho.sd, shape.target, cfg.max_a);
            if used.contains(&(rho.label.clone(), a)) {
                continue;
            }
            used.push((rho.label.clone(), a));
            entries.push((Summand::new(rho, Exp::from(0), a, 1), 1));
        }
        if entries.is_empty() {
            continue;
        }
        let Ok(phi) = FormalParameter::new(ParamKind::Arthur, entries) else {
            continue;
        };
        let Some(g) = settle_form(rng, &shape, phi.dim(), cfg.max_dim, true) else {
            continue;
        };
        let Ok(part) = validate_for_group(&phi, &g) else {
            continue;
        };
        if !part.is_discrete() {
            continue;
        }
        return (g, phi);
    }
    panic!("sampler failed to produce a discrete tempered instance within bounds");
}

/// A tempered packet label on a random form (inner forms included), with
/// multiplicities, opposite-parity pairs, and non-self-dual pairs mixed in
/// so that the reduction chain exercises every case.  Only labels whose
/// parameter is relevant on the sampled form are emitted.
pub fn tempered_label(rng: &mut ChaCha8Rng, cfg: &SuiteConfig) -> PacketLabel {
    for _ in 0..100_000 {
        let shape = pick_shape(rng);
        let pool = if shape.unitary { CONJ_POOL } else { SD_POOL };
        let nkeys = rng.random_range(1..=cfg.max_gp);
        let mut entries: Vec<(Summand, u32)> = Vec::new();
        let mut used: Vec<(String, u32)> = Vec::new();
        for _ in 0..nkeys {
            let rho = pick_rho(rng, pool, cfg.max_rho_dim);
            let a = forced_size(rng, rho.sd, shape.target, cfg.max_a);
            if used.contains(&(rho.label.clone(), a)) {
                continue;
            }
            used.push((rho.label.clone(), a));
            let m = if rng.random_bool(0.35) {
                rng.random_range(2..=3)
            } else {
                1
            };
            entries.push((Summand::new(rho, Exp::from(0), a, 1), m));
        }
        if entries.is_empty() {
            continue;
        }
        if rng.random_bool(0.3) {
            // an opposite-parity block with even multiplicity
            let rho = pick_rho(rng, pool, cfg.max_rho_dim);
            let a = forced_size(rng, rho.sd, shape.target.flip(), cfg.max_a);
            if !used.contains(&(rho.label.clone(), a)) {
                used.push((rho.label.clone(), a));
                entries.push((Summand::new(rho, Exp::from(0), a, 1), 2));
            }
        }
        if rng.random_bool(0.35) {
            // a non-self-dual pair
            let all: Vec<&(&str, u32, SdClass)> = pool.iter().chain(FREE_POOL).collect();
            let (label, dim, sd) = *all[rng.random_range(0..all.len())];
            if dim <= cfg.max_rho_dim {
                let rho = Irrep::new(label, dim, sd);
                let x = [
                    Exp::new(1, 4),
                    Exp::new(-1, 4),
                    Exp::new(1, 3),
                    Exp::new(2, 5),
                ][rng.random_range(0..4)];
                let a = rng.random_range(1..=cfg.max_a.min(3));
                let m = rng.random_range(1..=2);
                let s = Summand::new(rho, x, a, 1);
                entries.push((s.dual(), m));
                entries.push((s, m));
            }
        }
        let Ok(phi) = FormalParameter::new(ParamKind::Arthur, entries) else {
            continue;
        };
        let Some(g) = settle_form(rng, &shape, phi.dim(), cfg.max_dim, true) else {
            continue;
        };
        let Ok(part) = validate_for_group(&phi, &g) else {
            continue;
        };
        if !matches!(is_relevant(&phi, &g), Ok(true)) {
            continue;
        }
        let info = component_info(&part);
        let Ok(chars) = characters_for_form(&info, &g) else {
            continue;
        };
        if chars.is_empty() {
            continue;
        }
        let eps = chars[rng.random_range(0..chars.len())].clone();
        let l = PacketLabel::new(phi, eps, g).expect("listed characters label members");
        // the central-membership test admits a few labels whose designated
        // member only exists on a form of larger Witt rank; skip those
        if arthur_core::beta_rep(&l).is_err() {
            continue;
        }
        return l;
    }
    panic!("sampler failed to produce a tempered label within bounds");
}

/// A generic datum: a good-parity tempered anchor with trivial character on
/// a quasi-split form, under a handful of general linear blocks.
pub fn generic_datum(rng: &mut ChaCha8Rng, cfg: &SuiteConfig) -> GenericDatum {
    for _ in 0..100_000 {
        let shape = pick_shape(rng);
        let pool = if shape.unitary { CONJ_POOL } else { SD_POOL };
        // the anchor: ladders with partial multiplicities
        let mut entries: Vec<(Summand, u32)> = Vec::new();
        let mut used: Vec<(String, u32)> = Vec::new();
        let nrho = rng.random_range(0..=2);
        for _ in 0..nrho {
            let rho = pick_rho(rng, pool, cfg.max_rho_dim);
            let rungs = rng.random_range(1..=3);
            for _ in 0..rungs {
                let a = forced_size(rng, rho.sd, shape.target, cfg.max_a);
                if used.contains(&(rho.label.clone(), a)) {
                    continue;
                }
                used.push((rho.label.clone(), a));
                let m = rng.random_range(1..=2);
                entries.push((Summand::new(rho.clone(), Exp::from(0), a, 1), m));
            }
        }
        let Ok(anchor) = FormalParameter::new(ParamKind::Arthur, entries) else {
            continue;
        };
        let anchor_form = if anchor.is_empty() {
            if shape.unitary {
                continue;
            }
            match shape.family {
                Family::Sp => GroupForm::new(Family::Sp, 0, FormFlag::Split).ok(),
                Family::SOOdd => GroupForm::new(Family::SOOdd, 1, FormFlag::Split).ok(),
                _ => None,
            }
        } else {
            settle_form(rng, &shape, anchor.dim(), cfg.max_dim, false)
        };
        let Some(anchor_form) = anchor_form else {
            continue;
        };
        // general linear blocks
        let nb = rng.random_range(0..=2);
        let mut blocks: Vec<FormalParameter> = Vec::new();
        let mut ok = true;
        for _ in 0..nb {
            let nsum = rng.random_range(1..=2);
            let mut bents: Vec<(Summand, u32)> = Vec::new();
            for _ in 0..nsum {
                let all: Vec<&(&str, u32, SdClass)> =
                    SD_POOL.iter().chain(CONJ_POOL).chain(FREE_POOL).collect();
                let (label, dim, sd) = *all[rng.random_range(0..all.len())];
                if dim > cfg.max_rho_dim {
                    continue;
                }
                let rho = Irrep::new(label, dim, sd);
                let x = [
                    Exp::from(0),
                    Exp::new(1, 2),
                    Exp::new(-1, 2),
                    Exp::from(1),
                    Exp::new(1, 4),
                    Exp::new(-3, 4),
                ][rng.random_range(0..6)];
                let a = rng.random_range(1..=cfg.max_a.min(3));
                let m = rng.random_range(1..=2);
                bents.push((Summand::new(rho, x, a, 1), m));
            }
            match FormalParameter::new(ParamKind::Arthur, bents) {
                Ok(b) if !b.is_empty() => blocks.push(b),
                _ => ok = false,
            }
        }
        if !ok {
            continue;
        }
        let block_dim: u32 = blocks.iter().map(|b| b.dim()).sum();
        let ambient_space = anchor_form.space_dim + 2 * block_dim;
        if ambient_space > cfg.max_dim {
            continue;
        }
        let Ok(ambient) = GroupForm::new(shape.family, ambient_space, anchor_form.form) else {
            continue;
        };
        if let Ok(d) = GenericDatum::from_ambient(blocks, anchor, ambient) {
            return d;
        }
    }
    panic!("sampler failed to produce a generic datum within bounds");
}

fn eig_count(eigs: &[(Eig, u32)], which: &Eig) -> u32 {
    eigs.iter().filter(|(e, _)| e == which).map(|(_, m)| m).sum()
}

/// An anti-tempered good-parity parameter with a random semisimple element
/// of its centralizer.
pub fn element(
    rng: &mut ChaCha8Rng,
    cfg: &SuiteConfig,
) -> (GroupForm, FormalParameter, SemisimpleElement) {
    let (g, psi) = anti_tempered_gp(rng, cfg);
    let mut entries: Vec<(Summand, Vec<(Eig, u32)>)> = Vec::new();
    for (s, m) in psi.entries() {
        if !rng.random_bool(0.85) {
            continue; // omitted: defaults to +1 on the whole slot
        }
        let pairs = rng.random_range(0..=m / 2);
        let rem = m - 2 * pairs;
        let plus = rng.random_range(0..=rem);
        let minus = rem - plus;
        let mut eigs: Vec<(Eig, u32)> = Vec::new();
        if plus > 0 {
            eigs.push((Eig::One, plus));
        }
        if minus > 0 {
            eigs.push((Eig::MinusOne, minus));
        }
        if pairs > 0 {
            let name = ["z", "w"][rng.random_range(0..2)].to_string();
            eigs.push((Eig::Lam(name.clone()), pairs));
            eigs.push((Eig::LamInv(name), pairs));
        }
        entries.push((s.clone(), eigs));
    }
    let s = SemisimpleElement::new(entries).expect("sampled element is valid");
    (g, psi, s)
}

/// A second preimage of the same component-group image: two equal
/// eigenvalues on some slot move to an abstract pair.  Falls back to the
/// element itself when no slot allows it.
pub fn second_preimage(psi: &FormalParameter, s: &SemisimpleElement) -> SemisimpleElement {
    // materialize the defaulted slots
    let mut full: Vec<(Summand, Vec<(Eig, u32)>)> = Vec::new();
    for (summand, m) in psi.entries() {
        let eigs = s
            .entries()
            .iter()
            .find(|(t, _)| t == summand)
            .map(|(_, e)| e.clone())
            .unwrap_or_else(|| vec![(Eig::One, *m)]);
        full.push((summand.clone(), eigs));
    }
    for which in [Eig::One, Eig::MinusOne] {
        for (_, eigs) in full.iter_mut() {
            if eig_count(eigs, &which) >= 2 {
                let mut rebuilt: Vec<(Eig, u32)> = Vec::new();
                let mut taken = false;
                for (e, m) in eigs.iter() {
                    if !taken && *e == which {
                        taken = true;
                        if *m > 2 {
                            rebuilt.push((e.clone(), m - 2));
                        }
                    } else {
                        rebuilt.push((e.clone(), *m));
                    }
                }
                rebuilt.push((Eig::Lam("v".into()), 1));
                rebuilt.push((Eig::LamInv("v".into()), 1));
                *eigs = rebuilt;
                return SemisimpleElement::new(full).expect("moved pair stays valid");
            }
        }
    }
    s.clone()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn samplers_are_deterministic_and_valid() {
        for flavor in [
            Flavor::AntiTemperedGp,
            Flavor::TemperedLabel,
            Flavor::GenericDatum,
            Flavor::Element,
        ] {
            let cfg = SuiteConfig::new(7, 10);
            let mut r1 = ChaCha8Rng::seed_from_u64(cfg.seed);
            let mut r2 = ChaCha8Rng::seed_from_u64(cfg.seed);
            for _ in 0..10 {
                let a = generate_random_instance(&mut r1, &cfg, flavor);
                let b = generate_random_instance(&mut r2, &cfg, flavor);
                assert_eq!(format!("{:?}", a), format!("{:?}", b));
            }
        }
    }

    #[test]
    fn second_preimage_keeps_the_image() {
        let cfg = SuiteConfig::new(11, 10);
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        let mut moved = 0;
        for _ in 0..40 {
            let (g, psi, s) = element(&mut rng, &cfg);
            let part = validate_for_group(&psi, &g).unwrap();
            let s2 = second_preimage(&psi, &s);
            let im1 = arthur_core::image_in_component_group(&s, &part).unwrap();
            let im2 = arthur_core::image_in_component_group(&s2, &part).unwrap();
            assert_eq!(im1, im2);
            if s2 != s {
                moved += 1;
            }
        }
        assert!(moved > 0, "the second preimage should usually differ");
    }
}
