//! Formal parameters: multisets of summands `rho |.|^x (x) S_a (x) S_b`
//! together with the textual format used for input and output.
//!
//! A summand is determined by a cuspidal label `rho` (an opaque name with a
//! declared dimension and duality class), a rational exponent shift `x`, and
//! the dimensions `a`, `b` of the two special-linear factors.  Parameters of
//! kind `arthur` carry both factors; parameters of kind `l` are required to
//! have `b = 1` everywhere and the shifts are unconstrained.

use crate::group::{Family, FormFlag, GroupForm};
use crate::Error;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use num_rational::Ratio;

/// Exponent shifts are exact rationals.
pub type Exp = Ratio<i64>;

/// Format an exponent the way the textual format expects: `p/q` reduced, or
/// a bare integer when the denominator is one.
pub fn exp_to_string(x: Exp) -> String {
    if *x.denom() == 1 {
        format!("{}", x.numer())
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Duality class of a cuspidal label: self-dual orthogonal or symplectic,
/// conjugate-self-dual conjugate-orthogonal or conjugate-symplectic, or
/// none of these.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SdClass {
    O,
    S,
    CO,
    CS,
    N,
}

impl SdClass {
    pub fn as_str(self) -> &'static str {
        match self {
            SdClass::O => "O",
            SdClass::S => "S",
            SdClass::CO => "CO",
            SdClass::CS => "CS",
            SdClass::N => "N",
        }
    }

    /// For the four (conjugate-)self-dual classes: the sign of the pairing.
    pub fn duality_sign(self) -> Option<crate::sign::Sign> {
        match self {
            SdClass::O | SdClass::CO => Some(crate::sign::Sign::Plus),
            SdClass::S | SdClass::CS => Some(crate::sign::Sign::Minus),
            SdClass::N => None,
        }
    }
}

impl core::fmt::Display for SdClass {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A cuspidal label: an opaque name plus declared dimension and duality
/// class.  Two occurrences of the same name must agree in the other fields.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Irrep {
    pub label: String,
    pub dim: u32,
    pub sd: SdClass,
}

impl Irrep {
    pub fn new(label: &str, dim: u32, sd: SdClass) -> Irrep {
        Irrep {
            label: label.to_string(),
            dim,
            sd,
        }
    }

    /// Label of the dual partner for a class-N label: a trailing `*` is
    /// toggled, so duals pair up as `tau` / `tau*`.
    pub fn partner_label(&self) -> String {
        match self.label.strip_suffix('*') {
            Some(base) => base.to_string(),
            None => format!("{}*", self.label),
        }
    }

    /// The dual label: identical for (conjugate-)self-dual classes, the
    /// partner label for class N.
    pub fn dual(&self) -> Irrep {
        if self.sd == SdClass::N {
            Irrep {
                label: self.partner_label(),
                dim: self.dim,
                sd: self.sd,
            }
        } else {
            self.clone()
        }
    }
}

impl core::fmt::Display for Irrep {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "{}[{},{}]", self.label, self.dim, self.sd)
    }
}

/// One summand `rho |.|^x (x) S_a (x) S_b`.
///
/// Field order matters: the derived ordering is the canonical ordering of
/// summands (label, dimension, duality class, shift, a, b).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Summand {
    pub rho: Irrep,
    pub x: Exp,
    pub a: u32,
    pub b: u32,
}

impl Summand {
    pub fn new(rho: Irrep, x: Exp, a: u32, b: u32) -> Summand {
        Summand { rho, x, a, b }
    }

    /// Dimension of the summand as a GL-parameter.
    pub fn gl_dim(&self) -> u32 {
        self.rho.dim * self.a * self.b
    }

    /// The dual summand: dual label, negated shift, same factor dimensions.
    pub fn dual(&self) -> Summand {
        Summand {
            rho: self.rho.dual(),
            x: -self.x,
            a: self.a,
            b: self.b,
        }
    }

    /// Swap the two special-linear factors.
    pub fn swapped(&self) -> Summand {
        Summand {
            rho: self.rho.clone(),
            x: self.x,
            a: self.b,
            b: self.a,
        }
    }
}

impl core::fmt::Display for Summand {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "{}", self.rho)?;
        if self.x != Exp::from_integer(0) {
            write!(f, "|{}", exp_to_string(self.x))?;
        }
        write!(f, "@S({})xS({})", self.a, self.b)
    }
}

/// Which kind of parameter a `FormalParameter` is.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ParamKind {
    /// Two-factor parameters; structural validation bounds the shifts.
    Arthur,
    /// One-factor parameters (`b = 1` everywhere); shifts unconstrained.
    L,
}

/// A formal parameter: a multiset of summands with multiplicities, stored
/// merged and in canonical order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FormalParameter {
    pub kind: ParamKind,
    entries: Vec<(Summand, u32)>,
}

fn normalize(mut entries: Vec<(Summand, u32)>) -> Vec<(Summand, u32)> {
    entries.retain(|(_, m)| *m > 0);
    entries.sort_by(|a, b| a.0.cmp(&b.0));
    let mut merged: Vec<(Summand, u32)> = Vec::with_capacity(entries.len());
    for (s, m) in entries {
        match merged.last_mut() {
            Some((prev, pm)) if *prev == s => *pm += m,
            _ => merged.push((s, m)),
        }
    }
    merged
}

fn check_labels(entries: &[(Summand, u32)]) -> Result<(), Error> {
    for (i, (s, _)) in entries.iter().enumerate() {
        for (t, _) in &entries[i + 1..] {
            if s.rho.label == t.rho.label && (s.rho.dim != t.rho.dim || s.rho.sd != t.rho.sd) {
                return Err(Error::Validation(format!(
                    "label '{}' is used with conflicting attributes: {} vs {}",
                    s.rho.label, s.rho, t.rho
                )));
            }
        }
    }
    Ok(())
}

impl FormalParameter {
    /// Validating constructor: merges duplicates, sorts canonically, and
    /// rejects conflicting reuse of a label and degenerate sizes.
    pub fn new(kind: ParamKind, entries: Vec<(Summand, u32)>) -> Result<FormalParameter, Error> {
        for (s, _) in &entries {
            if s.rho.dim == 0 || s.a == 0 || s.b == 0 {
                return Err(Error::Validation(format!(
                    "summand {} has a zero size; all sizes must be positive",
                    s
                )));
            }
            if kind == ParamKind::L && s.b != 1 {
                return Err(Error::Validation(format!(
                    "kind l requires b = 1 on every summand, found {}",
                    s
                )));
            }
        }
        let entries = normalize(entries);
        check_labels(&entries)?;
        Ok(FormalParameter { kind, entries })
    }

    /// Internal constructor for parameters derived from already-validated
    /// ones (label consistency is inherited).
    pub(crate) fn from_parts(kind: ParamKind, entries: Vec<(Summand, u32)>) -> FormalParameter {
        let entries = normalize(entries);
        debug_assert!(check_labels(&entries).is_ok());
        FormalParameter { kind, entries }
    }

    pub fn entries(&self) -> &[(Summand, u32)] {
        &self.entries
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Total dimension as a GL-parameter.
    pub fn dim(&self) -> u32 {
        self.entries.iter().map(|(s, m)| s.gl_dim() * m).sum()
    }

    /// Sum of the multiplicities (number of indecomposable summands counted
    /// with multiplicity).
    pub fn mult_total(&self) -> u32 {
        self.entries.iter().map(|(_, m)| m).sum()
    }

    /// All second factors trivial.
    pub fn is_tempered(&self) -> bool {
        self.entries.iter().all(|(s, _)| s.b == 1)
    }

    /// All first factors trivial.
    pub fn is_anti_tempered(&self) -> bool {
        self.entries.iter().all(|(s, _)| s.a == 1)
    }

    /// The dual parameter (summand-wise dual).
    pub fn dual(&self) -> FormalParameter {
        FormalParameter::from_parts(
            self.kind,
            self.entries.iter().map(|(s, m)| (s.dual(), *m)).collect(),
        )
    }

    /// Swap the two special-linear factors of every summand (an involution
    /// on parameters of kind `arthur`).
    pub fn hat(&self) -> FormalParameter {
        assert!(
            self.kind == ParamKind::Arthur,
            "hat is defined for parameters of kind arthur"
        );
        FormalParameter::from_parts(
            self.kind,
            self.entries
                .iter()
                .map(|(s, m)| (s.swapped(), *m))
                .collect(),
        )
    }

    /// The associated one-factor parameter: each summand spreads into `b`
    /// copies with shifts `x + (b-1)/2 - k`, `k = 0..b-1`, and trivial
    /// second factor.
    pub fn arthur_to_l(&self) -> FormalParameter {
        assert!(
            self.kind == ParamKind::Arthur,
            "arthur_to_l expects a parameter of kind arthur"
        );
        let mut out: Vec<(Summand, u32)> = Vec::new();
        for (s, m) in &self.entries {
            let top = Ratio::new(s.b as i64 - 1, 2);
            for k in 0..s.b {
                out.push((
                    Summand::new(
                        s.rho.clone(),
                        s.x + top - Exp::from_integer(k as i64),
                        s.a,
                        1,
                    ),
                    *m,
                ));
            }
        }
        FormalParameter::from_parts(ParamKind::L, out)
    }

    /// Reinterpret an everywhere-`b = 1` parameter of kind `arthur` as one
    /// of kind `l`.
    pub fn as_l_kind(&self) -> Result<FormalParameter, Error> {
        if !self.is_tempered() {
            return Err(Error::Unsupported(
                "only parameters with b = 1 everywhere can be reinterpreted as kind l".into(),
            ));
        }
        Ok(FormalParameter {
            kind: ParamKind::L,
            entries: self.entries.clone(),
        })
    }

    /// Merge two parameters of the same kind.
    pub fn add(&self, other: &FormalParameter) -> Result<FormalParameter, Error> {
        if self.kind != other.kind {
            return Err(Error::Unsupported(
                "cannot merge parameters of different kinds".into(),
            ));
        }
        let mut entries = self.entries.clone();
        entries.extend(other.entries.iter().cloned());
        let entries = normalize(entries);
        check_labels(&entries)?;
        Ok(FormalParameter {
            kind: self.kind,
            entries,
        })
    }
}

impl core::fmt::Display for FormalParameter {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        if self.entries.is_empty() {
            return f.write_str("0");
        }
        for (i, (s, m)) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{}", s)?;
            if *m > 1 {
                write!(f, "^{}", m)?;
            }
        }
        Ok(())
    }
}

// --------------------------------------------------------------------------
// parsing
// --------------------------------------------------------------------------

/// A parse failure, with the byte offset in the input where it occurred.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub pos: usize,
    pub msg: String,
}

impl core::fmt::Display for ParseError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "parse error at byte {}: {}", self.pos, self.msg)
    }
}

impl From<ParseError> for Error {
    fn from(e: ParseError) -> Error {
        Error::Validation(alloc::format!("{}", e))
    }
}

struct Cursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(s: &'a str) -> Cursor<'a> {
        Cursor {
            bytes: s.as_bytes(),
            pos: 0,
        }
    }

    fn err<T>(&self, msg: &str) -> Result<T, ParseError> {
        Err(ParseError {
            pos: self.pos,
            msg: msg.to_string(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(&format!("expected '{}'", c as char))
        }
    }

    fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }

    /// An identifier: letter or underscore, then letters, digits or
    /// underscores, with an optional single trailing `*` (dual-partner
    /// marker for class-N labels).
    fn ident(&mut self) -> Result<String, ParseError> {
        self.skip_ws();
        let start = self.pos;
        match self.bytes.get(self.pos) {
            Some(c) if c.is_ascii_alphabetic() || *c == b'_' => self.pos += 1,
            _ => return self.err("expected an identifier"),
        }
        while let Some(c) = self.bytes.get(self.pos) {
            if c.is_ascii_alphanumeric() || *c == b'_' {
                self.pos += 1;
            } else {
                break;
            }
        }
        if self.bytes.get(self.pos) == Some(&b'*') {
            self.pos += 1;
        }
        Ok(core::str::from_utf8(&self.bytes[start..self.pos])
            .expect("ascii")
            .to_string())
    }

    fn uint(&mut self) -> Result<u32, ParseError> {
        self.skip_ws();
        let start = self.pos;
        let mut v: u64 = 0;
        while let Some(c) = self.bytes.get(self.pos) {
            if c.is_ascii_digit() {
                v = v * 10 + (c - b'0') as u64;
                if v > 1_000_000 {
                    return self.err("integer too large");
                }
                self.pos += 1;
            } else {
                break;
            }
        }
        if self.pos == start {
            return self.err("expected an integer");
        }
        Ok(v as u32)
    }

    fn positive_uint(&mut self) -> Result<u32, ParseError> {
        let v = self.uint()?;
        if v == 0 {
            return self.err("expected a positive integer");
        }
        Ok(v)
    }

    fn rational(&mut self) -> Result<Exp, ParseError> {
        self.skip_ws();
        let neg = if self.eat(b'-') {
            true
        } else {
            let _ = self.eat(b'+');
            false
        };
        let num = self.uint()? as i64;
        let den = if self.eat(b'/') {
            let d = self.uint()? as i64;
            if d == 0 {
                return self.err("zero denominator");
            }
            d
        } else {
            1
        };
        let q = Ratio::new(num, den);
        Ok(if neg { -q } else { q })
    }
}

fn parse_form_word(cur: &mut Cursor<'_>) -> Result<FormFlag, ParseError> {
    let pos = cur.pos;
    let w = cur.ident()?;
    match w.as_str() {
        "split" => Ok(FormFlag::Split),
        "qs" => Ok(FormFlag::QuasiSplit),
        "inner" => Ok(FormFlag::Inner),
        _ => Err(ParseError {
            pos,
            msg: format!("unknown form '{}', expected split, qs or inner", w),
        }),
    }
}

fn parse_group(cur: &mut Cursor<'_>) -> Result<GroupForm, ParseError> {
    let pos = cur.pos;
    let name = cur.ident()?;
    match name.as_str() {
        "Sp" => {
            cur.expect(b'(')?;
            let d = cur.positive_uint()?;
            cur.expect(b')')?;
            GroupForm::new(Family::Sp, d, FormFlag::Split).map_err(|e| ParseError {
                pos,
                msg: e.to_string(),
            })
        }
        "SO" | "U" => {
            cur.expect(b'(')?;
            let d = cur.positive_uint()?;
            cur.expect(b',')?;
            let form = parse_form_word(cur)?;
            cur.expect(b')')?;
            let family = if name == "U" {
                Family::U
            } else if d % 2 == 1 {
                Family::SOOdd
            } else {
                Family::SOEven
            };
            GroupForm::new(family, d, form).map_err(|e| ParseError {
                pos,
                msg: e.to_string(),
            })
        }
        _ => Err(ParseError {
            pos,
            msg: format!("unknown group '{}', expected Sp, SO or U", name),
        }),
    }
}

fn parse_sd(cur: &mut Cursor<'_>) -> Result<SdClass, ParseError> {
    let pos = cur.pos;
    let w = cur.ident()?;
    match w.as_str() {
        "O" => Ok(SdClass::O),
        "S" => Ok(SdClass::S),
        "CO" => Ok(SdClass::CO),
        "CS" => Ok(SdClass::CS),
        "N" => Ok(SdClass::N),
        _ => Err(ParseError {
            pos,
            msg: format!("unknown duality class '{}', expected O, S, CO, CS or N", w),
        }),
    }
}

/// Parses one summand; a trailing `+dual` flag makes the dual summand come
/// along with the same multiplicity.
fn parse_summand(cur: &mut Cursor<'_>) -> Result<(Summand, u32, bool), ParseError> {
    let label = cur.ident()?;
    cur.expect(b'[')?;
    let dim = cur.positive_uint()?;
    cur.expect(b',')?;
    let sd = parse_sd(cur)?;
    cur.expect(b']')?;
    let x = if cur.eat(b'|') {
        cur.rational()?
    } else {
        Exp::from_integer(0)
    };
    cur.expect(b'@')?;
    let pos = cur.pos;
    let s_word = cur.ident()?;
    if s_word != "S" {
        return Err(ParseError {
            pos,
            msg: "expected 'S(...)xS(...)'".to_string(),
        });
    }
    cur.expect(b'(')?;
    let a = cur.positive_uint()?;
    cur.expect(b')')?;
    cur.expect(b'x')?;
    let pos = cur.pos;
    let s_word = cur.ident()?;
    if s_word != "S" {
        return Err(ParseError {
            pos,
            msg: "expected 'S(...)' after 'x'".to_string(),
        });
    }
    cur.expect(b'(')?;
    let b = cur.positive_uint()?;
    cur.expect(b')')?;
    let mult = if cur.eat(b'^') {
        cur.positive_uint()?
    } else {
        1
    };
    // Possible "+dual" flag: only commit if the '+' is followed by the word
    // "dual" and not by another summand whose label happens to be "dual".
    let save = cur.pos;
    let mut with_dual = false;
    if cur.eat(b'+') {
        match cur.ident() {
            Ok(w) if w == "dual" && cur.peek() != Some(b'[') => with_dual = true,
            _ => cur.pos = save,
        }
    }
    Ok((Summand::new(Irrep::new(&label, dim, sd), x, a, b), mult, with_dual))
}

fn parse_param_body(cur: &mut Cursor<'_>, kind: ParamKind) -> Result<FormalParameter, ParseError> {
    // the empty parameter is written "0"
    cur.skip_ws();
    if cur.peek() == Some(b'0') {
        let mark = cur.pos;
        cur.eat(b'0');
        cur.skip_ws();
        if cur.at_end() {
            return Ok(FormalParameter::from_parts(kind, Vec::new()));
        }
        cur.pos = mark;
    }
    let mut entries: Vec<(Summand, u32)> = Vec::new();
    loop {
        let (s, m, with_dual) = parse_summand(cur)?;
        if with_dual {
            entries.push((s.dual(), m));
        }
        entries.push((s, m));
        if !cur.eat(b'+') {
            break;
        }
    }
    FormalParameter::new(kind, entries).map_err(|e| ParseError {
        pos: cur.pos,
        msg: e.to_string(),
    })
}

/// Parse a bare parameter (no group prefix), kind `arthur`.
pub fn parse_param(input: &str) -> Result<FormalParameter, ParseError> {
    let mut cur = Cursor::new(input);
    let p = parse_param_body(&mut cur, ParamKind::Arthur)?;
    if !cur.at_end() {
        return cur.err("trailing input after parameter");
    }
    Ok(p)
}

/// Parse a full input `group ":" param`.  The group is validated as a form;
/// the parameter is validated structurally against the group only by
/// `validate_for_group`, not here.
pub fn parse_input(input: &str) -> Result<(GroupForm, FormalParameter), ParseError> {
    let mut cur = Cursor::new(input);
    let g = parse_group(&mut cur)?;
    cur.expect(b':')?;
    let p = parse_param_body(&mut cur, ParamKind::Arthur)?;
    if !cur.at_end() {
        return cur.err("trailing input after parameter");
    }
    Ok((g, p))
}

// --------------------------------------------------------------------------
// tests
// --------------------------------------------------------------------------
