//! Command-line value syntax: sign characters, semisimple elements, split
//! hints, and the combined input of the generic-dual command.

use arthur_core::{
    parse_input, parse_param, Eig, Error, FormFlag, FormalParameter, GenericDatum, GpKey,
    GpPartition, GroupForm, SemisimpleElement, Sign, SignCharacter, SplitHints, Summand,
};

fn bad(msg: String) -> Error {
    Error::Validation(msg)
}

fn parse_sign_token(tok: &str) -> Result<Sign, Error> {
    match tok.trim() {
        "+" | "+1" => Ok(Sign::Plus),
        "-" | "-1" => Ok(Sign::Minus),
        other => Err(bad(format!("expected a sign (+1 or -1), found {:?}", other))),
    }
}

/// Parse `--char`: either positional signs in canonical summand order
/// ("+,-") or named assignments ("chi@S(1)xS(1)=-1,one@S(1)xS(1)=+1").
pub fn parse_char(spec: &str, part: &GpPartition) -> Result<SignCharacter, Error> {
    let spec = spec.trim();
    if spec.is_empty() {
        return SignCharacter::positional_for(part, &[]);
    }
    if spec.contains('=') {
        let mut pairs: Vec<(GpKey, Sign)> = Vec::new();
        for item in spec.split(',') {
            let (name, val) = item
                .split_once('=')
                .ok_or_else(|| bad(format!("expected name=sign, found {:?}", item)))?;
            let name = name.trim();
            let key = part
                .gp
                .iter()
                .map(|e| GpKey::of(&e.summand))
                .find(|k| k.to_string() == name)
                .ok_or_else(|| {
                    bad(format!(
                        "{:?} does not name a good-parity summand of the parameter",
                        name
                    ))
                })?;
            pairs.push((key, parse_sign_token(val)?));
        }
        let eps = SignCharacter::from_pairs(pairs)?;
        if eps.len() != part.gp.len() {
            return Err(bad(
                "the character must assign a sign to every good-parity summand".into(),
            ));
        }
        Ok(eps)
    } else {
        let values = spec
            .split(',')
            .map(parse_sign_token)
            .collect::<Result<Vec<Sign>, Error>>()?;
        SignCharacter::positional_for(part, &values)
    }
}

fn parse_eig_token(tok: &str) -> Result<(Eig, u32), Error> {
    let (name, mult) = match tok.split_once('^') {
        Some((n, m)) => (
            n,
            m.parse::<u32>()
                .map_err(|_| bad(format!("bad eigenvalue multiplicity in {:?}", tok)))?,
        ),
        None => (tok, 1),
    };
    let eig = match name {
        "+1" | "+" => Eig::One,
        "-1" | "-" => Eig::MinusOne,
        n if n.len() > 3 && n.ends_with("inv") => Eig::LamInv(n[..n.len() - 3].to_string()),
        n if !n.is_empty() && n.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') => {
            Eig::Lam(n.to_string())
        }
        other => return Err(bad(format!("bad eigenvalue token {:?}", other))),
    };
    Ok((eig, mult))
}

/// Resolve "label@S(a)xS(b)" or "label|x@S(a)xS(b)" against the summands of
/// a parameter.
fn resolve_summand(spec: &str, psi: &FormalParameter) -> Result<Summand, Error> {
    let (head, tail) = spec
        .split_once('@')
        .ok_or_else(|| bad(format!("expected label@S(a)xS(b), found {:?}", spec)))?;
    let (label, shift) = match head.split_once('|') {
        Some((l, x)) => {
            // reuse the parameter parser for the rational
            let probe = format!("{}[1,O]|{}@S(1)xS(1)", "q_", x.trim());
            let parsed = parse_param(&probe)
                .map_err(|e| bad(format!("bad shift in {:?}: {}", spec, e)))?;
            (l.trim(), Some(parsed.entries()[0].0.x))
        }
        None => (head.trim(), None),
    };
    let tail = tail.trim().replace(' ', "");
    let matches: Vec<&Summand> = psi
        .entries()
        .iter()
        .map(|(s, _)| s)
        .filter(|s| {
            s.rho.label == label
                && format!("S({})xS({})", s.a, s.b) == tail
                && shift.map_or(true, |x| s.x == x)
        })
        .collect();
    match matches.len() {
        0 => Err(bad(format!(
            "{:?} does not name a summand of the parameter",
            spec
        ))),
        1 => Ok(matches[0].clone()),
        _ => Err(bad(format!(
            "{:?} is ambiguous; add a |shift to pick the summand",
            spec
        ))),
    }
}

/// Parse `--element`: clauses "summand: eig^m eig^m" joined by ';'.
/// The empty string and "identity" denote the identity element.
pub fn parse_element(spec: &str, psi: &FormalParameter) -> Result<SemisimpleElement, Error> {
    let spec = spec.trim();
    if spec.is_empty() || spec == "identity" {
        return Ok(SemisimpleElement::identity());
    }
    let mut entries: Vec<(Summand, Vec<(Eig, u32)>)> = Vec::new();
    for clause in spec.split(';') {
        let (key, rest) = clause
            .split_once(':')
            .ok_or_else(|| bad(format!("expected summand: eigenvalues, found {:?}", clause)))?;
        // the display form puts the shift right after the colon
        let (key, rest) = match rest.trim_start().strip_prefix('|') {
            Some(shifted) => {
                let (x, eigs) = shifted
                    .split_once(' ')
                    .ok_or_else(|| bad(format!("missing eigenvalues in {:?}", clause)))?;
                let rebuilt = match key.trim().split_once('@') {
                    Some((l, r)) => format!("{}|{}@{}", l, x.trim(), r),
                    None => format!("{}|{}", key.trim(), x.trim()),
                };
                (rebuilt, eigs.to_string())
            }
            None => (key.trim().to_string(), rest.to_string()),
        };
        let summand = resolve_summand(&key, psi)?;
        let eigs = rest
            .split_whitespace()
            .map(parse_eig_token)
            .collect::<Result<Vec<(Eig, u32)>, Error>>()?;
        if eigs.is_empty() {
            return Err(bad(format!("missing eigenvalues in {:?}", clause)));
        }
        entries.push((summand, eigs));
    }
    SemisimpleElement::new(entries)
}

/// Parse `--hints`: "plus=qs,minus=split" (either side optional).
pub fn parse_hints(spec: &str) -> Result<SplitHints, Error> {
    let mut hints = SplitHints::default();
    let spec = spec.trim();
    if spec.is_empty() {
        return Ok(hints);
    }
    for item in spec.split(',') {
        let (side, flag) = item
            .split_once('=')
            .ok_or_else(|| bad(format!("expected plus=... or minus=..., found {:?}", item)))?;
        let flag = match flag.trim() {
            "split" => FormFlag::Split,
            "qs" => FormFlag::QuasiSplit,
            other => return Err(bad(format!("bad split hint {:?}", other))),
        };
        match side.trim() {
            "plus" => hints.plus = Some(flag),
            "minus" => hints.minus = Some(flag),
            other => return Err(bad(format!("bad hint side {:?}", other))),
        }
    }
    Ok(hints)
}

/// Parse the generic-dual input: "group: tau ; tau ; tempered-part".
/// The last ';'-segment is the tempered anchor ("0" when empty); the rest
/// are general linear blocks.
pub fn parse_generic(text: &str) -> Result<(GroupForm, GenericDatum), Error> {
    let (group_part, rest) = text
        .split_once(':')
        .ok_or_else(|| bad("expected group: blocks ; anchor".into()))?;
    let (form, _) = parse_input(&format!("{}: 0", group_part))
        .map_err(|e| bad(format!("bad group: {}", e)))?;
    let segments: Vec<&str> = rest.split(';').collect();
    let (anchor_text, block_texts) = segments.split_last().expect("split yields at least one");
    let anchor = parse_param(anchor_text.trim()).map_err(|e| bad(format!("bad anchor: {}", e)))?;
    let blocks = block_texts
        .iter()
        .map(|t| parse_param(t.trim()).map_err(|e| bad(format!("bad block: {}", e))))
        .collect::<Result<Vec<FormalParameter>, Error>>()?;
    let datum = GenericDatum::from_ambient(blocks, anchor, form)?;
    Ok((form, datum))
}

/// The generic-dual input string of a datum (a reproducer).
pub fn generic_reproducer(d: &GenericDatum) -> String {
    let mut segments: Vec<String> = d.gl_parts().iter().map(|t| t.to_string()).collect();
    segments.push(d.temp_part().phi().to_string());
    format!("{}: {}", d.form(), segments.join(" ; "))
}
