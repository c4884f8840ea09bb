//! The coefficient ring `Z[Γ]` of the Hecke algebra.
//!
//! `Γ` is a totally ordered free abelian group, realized either as a subgroup
//! of `Q` ([`GammaMode::Rational`]) or as `Z^k` with the lexicographic order
//! ([`GammaMode::Lex`]). A [`Laurent`] is a finitely supported integer
//! combination of symbols `v^γ`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoeffError {
    #[error("exponent mode mismatch: {0} vs {1}")]
    ModeMismatch(GammaMode, GammaMode),
    #[error("cannot parse Laurent element at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

/// Which realization of `Γ` a computation uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GammaMode {
    Rational,
    /// `Z^k`, compared lexicographically with the first coordinate dominant.
    Lex(usize),
}

impl fmt::Display for GammaMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GammaMode::Rational => f.write_str("rational"),
            GammaMode::Lex(k) => write!(f, "lex{k}"),
        }
    }
}

/// An element `γ` of the ordered group `Γ`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Exponent {
    Rational(BigRational),
    Lex(Vec<i64>),
}

impl Exponent {
    pub fn zero(mode: GammaMode) -> Self {
        match mode {
            GammaMode::Rational => Exponent::Rational(BigRational::zero()),
            GammaMode::Lex(k) => Exponent::Lex(vec![0; k]),
        }
    }

    pub fn integer(n: i64) -> Self {
        Exponent::Rational(BigRational::from_integer(n.into()))
    }

    pub fn rational(num: i64, den: i64) -> Self {
        Exponent::Rational(BigRational::new(num.into(), den.into()))
    }

    /// The `i`-th unit vector of `Z^k` (zero-based).
    pub fn unit(k: usize, i: usize) -> Self {
        let mut v = vec![0; k];
        v[i] = 1;
        Exponent::Lex(v)
    }

    pub fn mode(&self) -> GammaMode {
        match self {
            Exponent::Rational(_) => GammaMode::Rational,
            Exponent::Lex(v) => GammaMode::Lex(v.len()),
        }
    }

    /// Sign relative to the identity of `Γ`.
    pub fn signum(&self) -> Ordering {
        match self {
            Exponent::Rational(q) => q.cmp(&BigRational::zero()),
            Exponent::Lex(v) => v
                .iter()
                .find(|&&x| x != 0)
                .map_or(Ordering::Equal, |x| x.cmp(&0)),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.signum() == Ordering::Equal
    }

    pub fn checked_add(&self, other: &Exponent) -> Result<Exponent, CoeffError> {
        match (self, other) {
            (Exponent::Rational(a), Exponent::Rational(b)) => Ok(Exponent::Rational(a + b)),
            (Exponent::Lex(a), Exponent::Lex(b)) if a.len() == b.len() => Ok(Exponent::Lex(
                a.iter().zip(b).map(|(x, y)| x + y).collect(),
            )),
            _ => Err(CoeffError::ModeMismatch(self.mode(), other.mode())),
        }
    }

    pub fn scaled(&self, n: i64) -> Exponent {
        match self {
            Exponent::Rational(q) => Exponent::Rational(q * BigRational::from_integer(n.into())),
            Exponent::Lex(v) => Exponent::Lex(v.iter().map(|x| x * n).collect()),
        }
    }
}

impl Neg for &Exponent {
    type Output = Exponent;
    fn neg(self) -> Exponent {
        match self {
            Exponent::Rational(q) => Exponent::Rational(-q),
            Exponent::Lex(v) => Exponent::Lex(v.iter().map(|x| -x).collect()),
        }
    }
}

impl Ord for Exponent {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Exponent::Rational(a), Exponent::Rational(b)) => a.cmp(b),
            (Exponent::Lex(a), Exponent::Lex(b)) => a.cmp(b),
            // Mixed modes never meet inside one computation; any fixed order
            // keeps maps well-formed.
            (Exponent::Rational(_), Exponent::Lex(_)) => Ordering::Less,
            (Exponent::Lex(_), Exponent::Rational(_)) => Ordering::Greater,
        }
    }
}

impl PartialOrd for Exponent {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Exponent::Rational(q) => write!(f, "({q})"),
            Exponent::Lex(v) => {
                f.write_str("[")?;
                for (i, x) in v.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{x}")?;
                }
                f.write_str("]")
            }
        }
    }
}

/// A finitely supported integer combination of `v^γ`, `γ ∈ Γ`.
///
/// Zero coefficients are never stored and terms are kept sorted by exponent,
/// so structural equality is mathematical equality.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Laurent {
    terms: BTreeMap<Exponent, i64>,
}

impl Laurent {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one(mode: GammaMode) -> Self {
        Self::monomial(Exponent::zero(mode), 1)
    }

    pub fn monomial(exp: Exponent, coeff: i64) -> Self {
        let mut terms = BTreeMap::new();
        if coeff != 0 {
            terms.insert(exp, coeff);
        }
        Laurent { terms }
    }

    /// `v^γ`.
    pub fn v_pow(exp: Exponent) -> Self {
        Self::monomial(exp, 1)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, i64)> + '_ {
        self.terms.iter().map(|(e, &c)| (e, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exp: &Exponent) -> i64 {
        self.terms.get(exp).copied().unwrap_or(0)
    }

    /// The mode of the exponents, or `None` for the zero element.
    pub fn mode(&self) -> Option<GammaMode> {
        self.terms.keys().next().map(Exponent::mode)
    }

    fn check_modes(&self, other: &Laurent) -> Result<(), CoeffError> {
        match (self.mode(), other.mode()) {
            (Some(a), Some(b)) if a != b => Err(CoeffError::ModeMismatch(a, b)),
            _ => Ok(()),
        }
    }

    fn add_term(&mut self, exp: Exponent, coeff: i64) {
        if coeff == 0 {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(exp) {
            Entry::Vacant(slot) => {
                slot.insert(coeff);
            }
            Entry::Occupied(mut slot) => {
                let c = slot.get().checked_add(coeff).expect("coefficient overflow");
                if c == 0 {
                    slot.remove();
                } else {
                    *slot.get_mut() = c;
                }
            }
        }
    }

    pub fn checked_add(&self, other: &Laurent) -> Result<Laurent, CoeffError> {
        self.check_modes(other)?;
        let mut out = self.clone();
        for (e, c) in other.terms() {
            out.add_term(e.clone(), c);
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Laurent) -> Result<Laurent, CoeffError> {
        self.check_modes(other)?;
        let mut out = Laurent::zero();
        for (a, x) in self.terms() {
            for (b, y) in other.terms() {
                let c = x.checked_mul(y).expect("coefficient overflow");
                out.add_term(a.checked_add(b)?, c);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, n: i64) -> Laurent {
        if n == 0 {
            return Laurent::zero();
        }
        Laurent {
            terms: self
                .terms()
                .map(|(e, c)| (e.clone(), c.checked_mul(n).expect("coefficient overflow")))
                .collect(),
        }
    }

    /// Multiply by `v^γ`.
    pub fn shift(&self, exp: &Exponent) -> Laurent {
        Laurent {
            terms: self
                .terms()
                .map(|(e, c)| (e.checked_add(exp).expect("exponent mode mismatch"), c))
                .collect(),
        }
    }

    /// The involution `v^γ ↦ v^{-γ}`.
    pub fn bar(&self) -> Laurent {
        Laurent {
            terms: self.terms().map(|(e, c)| (-e, c)).collect(),
        }
    }

    /// Splits into parts supported on `Γ_{<0}`, `{0}` and `Γ_{>0}`.
    pub fn split_by_sign(&self) -> (Laurent, i64, Laurent) {
        let mut neg = Laurent::zero();
        let mut zero = 0;
        let mut pos = Laurent::zero();
        for (e, c) in self.terms() {
            match e.signum() {
                Ordering::Less => {
                    neg.terms.insert(e.clone(), c);
                }
                Ordering::Equal => zero = c,
                Ordering::Greater => {
                    pos.terms.insert(e.clone(), c);
                }
            }
        }
        (neg, zero, pos)
    }

    /// True when every exponent in the support is strictly negative.
    pub fn is_strictly_negative(&self) -> bool {
        self.terms.keys().all(|e| e.signum() == Ordering::Less)
    }

    pub fn is_bar_invariant(&self) -> bool {
        self.bar() == *self
    }

    /// The specialization `v^γ ↦ 1`.
    pub fn evaluate_at_one(&self) -> i64 {
        self.terms.values().sum()
    }

    /// Largest exponent in the support.
    pub fn degree(&self) -> Option<&Exponent> {
        self.terms.keys().next_back()
    }
}

impl Add for &Laurent {
    type Output = Laurent;
    fn add(self, rhs: &Laurent) -> Laurent {
        self.checked_add(rhs).expect("exponent mode mismatch")
    }
}

impl Sub for &Laurent {
    type Output = Laurent;
    fn sub(self, rhs: &Laurent) -> Laurent {
        self.checked_add(&-rhs).expect("exponent mode mismatch")
    }
}

impl Mul for &Laurent {
    type Output = Laurent;
    fn mul(self, rhs: &Laurent) -> Laurent {
        self.checked_mul(rhs).expect("exponent mode mismatch")
    }
}

impl Neg for &Laurent {
    type Output = Laurent;
    fn neg(self) -> Laurent {
        self.scale(-1)
    }
}

impl AddAssign<&Laurent> for Laurent {
    fn add_assign(&mut self, rhs: &Laurent) {
        self.check_modes(rhs).expect("exponent mode mismatch");
        for (e, c) in rhs.terms() {
            self.add_term(e.clone(), c);
        }
    }
}

impl SubAssign<&Laurent> for Laurent {
    fn sub_assign(&mut self, rhs: &Laurent) {
        self.check_modes(rhs).expect("exponent mode mismatch");
        for (e, c) in rhs.terms() {
            self.add_term(e.clone(), -c);
        }
    }
}

/// Renders as `c*v^(g) + c*v^(g) ...` in increasing exponent order; lex
/// exponents print as `[a,b,...]`. The zero element renders as `0`.
impl fmt::Display for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (e, c)) in self.terms().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{c}*v^{e}")?;
        }
        Ok(())
    }
}

struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn err(&self, msg: impl Into<String>) -> CoeffError {
        CoeffError::Parse {
            pos: self.pos,
            msg: msg.into(),
        }
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    fn eat(&mut self, tok: &str) -> bool {
        if self.rest().starts_with(tok) {
            self.pos += tok.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: &str) -> Result<(), CoeffError> {
        if self.eat(tok) {
            Ok(())
        } else {
            Err(self.err(format!("expected `{tok}`")))
        }
    }

    fn take_until(&mut self, close: char) -> Result<&'a str, CoeffError> {
        let rest = self.rest();
        let end = rest
            .find(close)
            .ok_or_else(|| self.err(format!("missing `{close}`")))?;
        self.pos += end + close.len_utf8();
        Ok(&rest[..end])
    }

    fn integer(&mut self) -> Result<i64, CoeffError> {
        let rest = self.rest();
        let len = rest
            .char_indices()
            .take_while(|&(i, ch)| ch.is_ascii_digit() || (i == 0 && ch == '-'))
            .count();
        let n = rest[..len]
            .parse()
            .map_err(|_| self.err("expected integer coefficient"))?;
        self.pos += len;
        Ok(n)
    }
}

impl FromStr for Laurent {
    type Err = CoeffError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut cur = Cursor { src: s, pos: 0 };
        cur.skip_ws();
        if cur.rest().trim_end() == "0" {
            return Ok(Laurent::zero());
        }
        let mut out = Laurent::zero();
        loop {
            cur.skip_ws();
            let c = cur.integer()?;
            cur.expect("*v^")?;
            let exp = if cur.eat("(") {
                let body = cur.take_until(')')?;
                let q = parse_rational(body.trim()).ok_or_else(|| cur.err("bad rational exponent"))?;
                Exponent::Rational(q)
            } else if cur.eat("[") {
                let body = cur.take_until(']')?;
                let v = body
                    .split(',')
                    .map(|t| t.trim().parse::<i64>())
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(|_| cur.err("bad lex exponent"))?;
                Exponent::Lex(v)
            } else {
                return Err(cur.err("expected `(` or `[`"));
            };
            let term = Laurent::monomial(exp, c);
            out = out.checked_add(&term)?;
            cur.skip_ws();
            if cur.rest().is_empty() {
                return Ok(out);
            }
            cur.expect("+")?;
        }
    }
}

/// Parses `p` or `p/q` with optional sign into an exact rational.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().ok()?;
    let den: BigInt = den.parse().ok()?;
    if den.is_zero() {
        return None;
    }
    Some(BigRational::new(num, den))
}

/// Renders a rational as `p` or `p/q`.
pub fn render_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// `Σ_{γ>0} n_γ (v^γ + v^{-γ})` for the positive part of `a`, plus the
/// constant term. The result is bar-invariant and agrees with `a` on
/// `Γ_{≥0}`.
pub fn symmetrize_nonnegative(a: &Laurent) -> Laurent {
    let (_, zero, pos) = a.split_by_sign();
    let mut out = &pos + &pos.bar();
    if zero != 0 {
        let mode = a.mode().expect("nonzero element has a mode");
        out += &Laurent::monomial(Exponent::zero(mode), zero);
    }
    out
}

/// Whether a rational is nonnegative; used by weight validation.
pub fn exponent_is_nonnegative(e: &Exponent) -> bool {
    match e {
        Exponent::Rational(q) => !q.is_negative(),
        Exponent::Lex(_) => e.signum() != Ordering::Less,
    }
}
