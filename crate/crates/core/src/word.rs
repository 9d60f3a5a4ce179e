//! Words in the free group on `a`, `b`, their Magnus expansions, and the
//! linking invariants read off from them.
//!
//! The Magnus embedding sends `a ↦ 1 + X1` and `b ↦ 1 + X2` into the ring of
//! non-commutative integer power series; an element lies in the `k`-th term of
//! the lower central series exactly when its expansion has no non-constant
//! term of degree below `k`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize, Serializer};
use thiserror::Error;

/// Largest exponent magnitude accepted by the parser.
pub const MAX_EXPONENT: i64 = 100_000;

/// Probe degree used by [`milnor_invariants`] when reporting the
/// lower-central-series depth.
pub const INVARIANT_PROBE_DEGREE: usize = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Generator {
    A,
    B,
}

impl Generator {
    /// Index of the Magnus variable: `a ↦ X1`, `b ↦ X2`.
    pub fn variable(self) -> u8 {
        match self {
            Generator::A => 1,
            Generator::B => 2,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Letter {
    pub generator: Generator,
    pub inverse: bool,
}

impl Letter {
    pub const A: Letter = Letter { generator: Generator::A, inverse: false };
    pub const B: Letter = Letter { generator: Generator::B, inverse: false };
    pub const A_INV: Letter = Letter { generator: Generator::A, inverse: true };
    pub const B_INV: Letter = Letter { generator: Generator::B, inverse: true };

    pub fn inverse(self) -> Letter {
        Letter { inverse: !self.inverse, ..self }
    }

    /// `+1` or `-1`.
    pub fn sign(self) -> i64 {
        if self.inverse {
            -1
        } else {
            1
        }
    }

    pub fn symbol(self) -> char {
        match (self.generator, self.inverse) {
            (Generator::A, false) => 'a',
            (Generator::A, true) => 'A',
            (Generator::B, false) => 'b',
            (Generator::B, true) => 'B',
        }
    }

    fn from_symbol(c: char) -> Option<Letter> {
        match c {
            'a' => Some(Letter::A),
            'A' => Some(Letter::A_INV),
            'b' => Some(Letter::B),
            'B' => Some(Letter::B_INV),
            _ => None,
        }
    }
}

/// A freely reduced word in `F = <a, b>`. The empty word is the identity.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Word {
    letters: Vec<Letter>,
}

/// Cancels adjacent inverse pairs until none remain.
pub fn free_reduce<I: IntoIterator<Item = Letter>>(letters: I) -> Word {
    let mut stack: Vec<Letter> = Vec::new();
    for l in letters {
        if stack.last() == Some(&l.inverse()) {
            stack.pop();
        } else {
            stack.push(l);
        }
    }
    Word { letters: stack }
}

impl Word {
    pub fn identity() -> Word {
        Word::default()
    }

    pub fn letter(l: Letter) -> Word {
        Word { letters: vec![l] }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> Word {
        Word { letters: self.letters.iter().rev().map(|l| l.inverse()).collect() }
    }

    pub fn mul(&self, other: &Word) -> Word {
        free_reduce(self.letters.iter().chain(other.letters.iter()).copied())
    }

    /// `[x, y] = x y x⁻¹ y⁻¹`.
    pub fn commutator(x: &Word, y: &Word) -> Word {
        x.mul(y).mul(&x.inverse()).mul(&y.inverse())
    }

    pub fn pow(&self, n: i64) -> Word {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut out = Word::identity();
        for _ in 0..n.unsigned_abs() {
            out = out.mul(&base);
        }
        out
    }

    pub fn parse(text: &str) -> Result<Word, ParseError> {
        Parser::new(text).parse()
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.letters {
            write!(f, "{}", l.symbol())?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Word::parse(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("syntax error at position {position}: {message}")]
pub struct ParseError {
    /// Byte offset into the input.
    pub position: usize,
    pub message: String,
}

struct Parser<'a> {
    chars: Vec<(usize, char)>,
    pos: usize,
    len: usize,
    _text: &'a str,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Self {
        let chars: Vec<(usize, char)> =
            text.char_indices().filter(|(_, c)| !c.is_whitespace()).collect();
        Parser { chars, pos: 0, len: text.len(), _text: text }
    }

    fn offset(&self) -> usize {
        self.chars.get(self.pos).map(|&(i, _)| i).unwrap_or(self.len)
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError { position: self.offset(), message: message.into() })
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        match self.peek() {
            Some(d) if d == c => {
                self.pos += 1;
                Ok(())
            }
            Some(d) => self.error(format!("expected '{c}', found '{d}'")),
            None => self.error(format!("expected '{c}', found end of input")),
        }
    }

    fn parse(mut self) -> Result<Word, ParseError> {
        let w = self.expr()?;
        match self.peek() {
            None => Ok(w),
            Some(c) => self.error(format!("unexpected '{c}'")),
        }
    }

    fn starts_atom(c: char) -> bool {
        matches!(c, 'a' | 'b' | 'A' | 'B' | '[' | '(')
    }

    fn expr(&mut self) -> Result<Word, ParseError> {
        match self.peek() {
            Some(c) if Self::starts_atom(c) => {}
            Some(c) => return self.error(format!("expected a generator, '[' or '(', found '{c}'")),
            None => return self.error("expected a generator, '[' or '(', found end of input"),
        }
        let mut w = Word::identity();
        while let Some(c) = self.peek() {
            if !Self::starts_atom(c) {
                break;
            }
            let t = self.term()?;
            w = w.mul(&t);
        }
        Ok(w)
    }

    fn term(&mut self) -> Result<Word, ParseError> {
        let atom = self.atom()?;
        if self.peek() == Some('^') {
            self.pos += 1;
            let n = self.signed_int()?;
            Ok(atom.pow(n))
        } else {
            Ok(atom)
        }
    }

    fn atom(&mut self) -> Result<Word, ParseError> {
        let c = match self.peek() {
            Some(c) => c,
            None => return self.error("unexpected end of input"),
        };
        if let Some(l) = Letter::from_symbol(c) {
            self.pos += 1;
            return Ok(Word::letter(l));
        }
        match c {
            '[' => {
                self.pos += 1;
                let x = self.expr()?;
                self.expect(',')?;
                let y = self.expr()?;
                self.expect(']')?;
                Ok(Word::commutator(&x, &y))
            }
            '(' => {
                self.pos += 1;
                let x = self.expr()?;
                self.expect(')')?;
                Ok(x)
            }
            _ => self.error(format!("unexpected '{c}'")),
        }
    }

    fn signed_int(&mut self) -> Result<i64, ParseError> {
        let start = self.offset();
        let mut negative = false;
        match self.peek() {
            Some('-') => {
                negative = true;
                self.pos += 1;
            }
            Some('+') => self.pos += 1,
            _ => {}
        }
        let mut digits = String::new();
        while let Some(c) = self.peek().filter(|c| c.is_ascii_digit()) {
            digits.push(c);
            self.pos += 1;
        }
        if digits.is_empty() {
            return self.error("expected an integer exponent");
        }
        let magnitude: i64 = match digits.parse() {
            Ok(v) if v <= MAX_EXPONENT => v,
            _ => {
                return Err(ParseError {
                    position: start,
                    message: format!("exponent exceeds {MAX_EXPONENT} in magnitude"),
                })
            }
        };
        Ok(if negative { -magnitude } else { magnitude })
    }
}

/// `(sum of a-exponents, sum of b-exponents)`: the image in `Z²`.
pub fn exponent_sums(w: &Word) -> (i64, i64) {
    w.letters.iter().fold((0, 0), |(ea, eb), l| match l.generator {
        Generator::A => (ea + l.sign(), eb),
        Generator::B => (ea, eb + l.sign()),
    })
}

/// A monomial in the non-commuting variables `X1`, `X2`, stored as its
/// sequence of variable indices. Ordered length-lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u8>);

impl Monomial {
    pub fn one() -> Monomial {
        Monomial(Vec::new())
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for v in &self.0 {
            write!(f, "X{v}")?;
        }
        Ok(())
    }
}

/// Truncated non-commutative power series with integer coefficients.
/// Terms of degree above `max_degree` are discarded after every product.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MagnusSeries {
    max_degree: usize,
    terms: BTreeMap<Monomial, BigInt>,
}

impl MagnusSeries {
    pub fn one(max_degree: usize) -> MagnusSeries {
        let mut terms = BTreeMap::new();
        terms.insert(Monomial::one(), BigInt::one());
        MagnusSeries { max_degree, terms }
    }

    /// `1 + X` for a generator, `1 - X + X² - …` for its inverse.
    pub fn of_letter(l: Letter, max_degree: usize) -> MagnusSeries {
        let v = l.generator.variable();
        let mut s = MagnusSeries::one(max_degree);
        let upto = if l.inverse { max_degree } else { max_degree.min(1) };
        for k in 1..=upto {
            let c = if l.inverse && k % 2 == 1 { -BigInt::one() } else { BigInt::one() };
            s.terms.insert(Monomial(vec![v; k]), c);
        }
        s
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, BigInt> {
        &self.terms
    }

    pub fn coefficient(&self, monomial: &[u8]) -> BigInt {
        self.terms.get(&Monomial(monomial.to_vec())).cloned().unwrap_or_default()
    }

    pub fn mul(&self, other: &MagnusSeries) -> MagnusSeries {
        let max_degree = self.max_degree.min(other.max_degree);
        let mut terms: BTreeMap<Monomial, BigInt> = BTreeMap::new();
        for (m1, c1) in &self.terms {
            if m1.degree() > max_degree {
                continue;
            }
            for (m2, c2) in &other.terms {
                if m1.degree() + m2.degree() > max_degree {
                    // terms are sorted by degree
                    break;
                }
                let mut m = m1.0.clone();
                m.extend_from_slice(&m2.0);
                *terms.entry(Monomial(m)).or_default() += c1 * c2;
            }
        }
        terms.retain(|_, c| !c.is_zero());
        MagnusSeries { max_degree, terms }
    }

    /// Smallest degree carrying a nonzero non-constant coefficient.
    pub fn lowest_nonconstant_degree(&self) -> Option<usize> {
        self.terms.keys().map(Monomial::degree).find(|&d| d > 0)
    }

    /// True when this is `1` up to the truncation degree.
    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&Monomial::one()).is_some_and(|c| c.is_one())
    }
}

impl fmt::Display for MagnusSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            match (i, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if m.degree() == 0 {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{abs}{m}")?;
            }
        }
        Ok(())
    }
}

pub fn magnus_expansion(w: &Word, max_degree: usize) -> MagnusSeries {
    assert!(max_degree >= 1, "max_degree must be positive");
    w.letters.iter().fold(MagnusSeries::one(max_degree), |acc, &l| {
        acc.mul(&MagnusSeries::of_letter(l, max_degree))
    })
}

/// Position of a word in the lower central series as seen up to a probe degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LcsDepth {
    /// The word lies in `γ_d` but not in `γ_{d+1}`.
    Exact(usize),
    /// All non-constant terms vanish below this degree.
    AtLeast(usize),
    /// The identity element.
    Infinite,
}

impl LcsDepth {
    /// Whether the word is known to lie in `γ_k`.
    pub fn at_least(self, k: usize) -> bool {
        match self {
            LcsDepth::Exact(d) | LcsDepth::AtLeast(d) => d >= k,
            LcsDepth::Infinite => true,
        }
    }
}

impl fmt::Display for LcsDepth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LcsDepth::Exact(d) => write!(f, "{d}"),
            LcsDepth::AtLeast(d) => write!(f, ">={d}"),
            LcsDepth::Infinite => write!(f, "infinite"),
        }
    }
}

impl Serialize for LcsDepth {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            LcsDepth::Exact(d) => s.serialize_u64(*d as u64),
            other => s.serialize_str(&other.to_string()),
        }
    }
}

/// Returns `Exact(d)` for the lowest degree `d <= probe_degree` of a nonzero
/// non-constant Magnus term, or `AtLeast(probe_degree + 1)` if none exists.
pub fn lcs_depth(w: &Word, probe_degree: usize) -> LcsDepth {
    assert!(probe_degree >= 1, "probe_degree must be positive");
    match magnus_expansion(w, probe_degree).lowest_nonconstant_degree() {
        Some(d) => LcsDepth::Exact(d),
        None => LcsDepth::AtLeast(probe_degree + 1),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WordInvariants {
    pub exp_a: i64,
    pub exp_b: i64,
    pub lcs_depth: LcsDepth,
    /// Coefficient of `X1X2`; `None` unless both exponent sums vanish.
    pub mu12: Option<i64>,
}

pub fn milnor_invariants(w: &Word) -> WordInvariants {
    let (exp_a, exp_b) = exponent_sums(w);
    let series = magnus_expansion(w, INVARIANT_PROBE_DEGREE);
    let lcs_depth = if w.is_identity() {
        LcsDepth::Infinite
    } else {
        match series.lowest_nonconstant_degree() {
            Some(d) => LcsDepth::Exact(d),
            None => LcsDepth::AtLeast(INVARIANT_PROBE_DEGREE + 1),
        }
    };
    let mu12 = (exp_a == 0 && exp_b == 0).then(|| {
        series.coefficient(&[1, 2]).to_i64().expect("X1X2 coefficient bounded by length squared")
    });
    WordInvariants { exp_a, exp_b, lcs_depth, mu12 }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CriterionReason {
    pub quantity: String,
    pub value: String,
    pub ok: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnlinkDecision {
    pub pass: bool,
    pub reasons: Vec<CriterionReason>,
}

/// The three-component link read from `w` is link-homotopically trivial iff
/// all pairwise linking numbers and the triple invariant vanish.
pub fn unlink_criterion(w: &Word) -> UnlinkDecision {
    let inv = milnor_invariants(w);
    let reason = |quantity: &str, value: String, ok: bool| CriterionReason {
        quantity: quantity.to_string(),
        value,
        ok,
    };
    let mu_ok = inv.mu12 == Some(0);
    let reasons = vec![
        reason("lk(g1,g2)", "0 (disjoint balls)".to_string(), true),
        reason("lk(g3,g1)", inv.exp_a.to_string(), inv.exp_a == 0),
        reason("lk(g3,g2)", inv.exp_b.to_string(), inv.exp_b == 0),
        reason(
            "mu12",
            inv.mu12.map_or_else(|| "undefined".to_string(), |m| m.to_string()),
            mu_ok,
        ),
    ];
    UnlinkDecision { pass: reasons.iter().all(|r| r.ok), reasons }
}
