//! The quantum plane `ℂ_q[u, v] = ℂ{u, v} / (vu − q uv)`.
//!
//! Elements of the free algebra are sums of words over `{u, v}` with
//! coefficients in `ℂ[q, q⁻¹]`; `q` is kept formal unless a numeric value is
//! substituted. Normalization rewrites `vu → q·uv` until every word is of
//! the form `u^a v^b`. The system is terminating (each step removes one
//! inversion) and locally confluent (overlaps `vvu`, `vuu` resolve to the
//! same word with the same power of `q`), so the normal form does not
//! depend on the order of rewrites.

mod parse;
mod rpoint;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::{Real, Scalar};

pub use parse::parse_expression;
pub use rpoint::{rpoint_check, RPointCandidate, RPointVerdict};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    U,
    V,
}

/// A word in the free algebra `ℂ{u, v}`.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    /// `u^a v^b`.
    pub fn ordered(a: u32, b: u32) -> Self {
        let mut w = vec![Letter::U; a as usize];
        w.extend(std::iter::repeat_n(Letter::V, b as usize));
        Word(w)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn count(&self, letter: Letter) -> u32 {
        self.0.iter().filter(|&&l| l == letter).count() as u32
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut w = self.0.clone();
        w.extend_from_slice(&other.0);
        Word(w)
    }

    pub fn is_ordered(&self) -> bool {
        !self.0.windows(2).any(|p| p == [Letter::V, Letter::U])
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| match c {
                'u' => Ok(Letter::U),
                'v' => Ok(Letter::V),
                _ => Err(Error::Parse(format!(
                    "'{c}' is not a letter of the quantum plane"
                ))),
            })
            .collect::<Result<_>>()
            .map(Word)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.0 {
            f.write_str(match l {
                Letter::U => "u",
                Letter::V => "v",
            })?;
        }
        Ok(())
    }
}

/// Which `vu` occurrence a single rewrite step acts on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RewriteStrategy {
    Leftmost,
    Rightmost,
}

/// Rewrites one `vu` to `uv`; returns false if the word is already ordered.
pub fn rewrite_step(word: &mut Word, strategy: RewriteStrategy) -> bool {
    let is_vu = |k: &usize| word.0[*k] == Letter::V && word.0[*k + 1] == Letter::U;
    let n = word.0.len();
    let hit = match strategy {
        RewriteStrategy::Leftmost => (0..n.saturating_sub(1)).find(is_vu),
        RewriteStrategy::Rightmost => (0..n.saturating_sub(1)).rev().find(is_vu),
    };
    match hit {
        Some(k) => {
            word.0.swap(k, k + 1);
            true
        }
        None => false,
    }
}

/// `q^exponent · u^a v^b`: the normal form of a single word.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct OrderedMonomial {
    pub q_power: i64,
    pub a: u32,
    pub b: u32,
}

/// Normalizes one word by repeated rewriting.
pub fn normalize_word(word: &Word, strategy: RewriteStrategy) -> OrderedMonomial {
    let mut w = word.clone();
    let mut q_power = 0;
    while rewrite_step(&mut w, strategy) {
        q_power += 1;
    }
    OrderedMonomial {
        q_power,
        a: w.count(Letter::U),
        b: w.count(Letter::V),
    }
}

/// The exponent `e` with `v^j u^i = q^e u^i v^j`, found by rewriting.
pub fn qcommute_exponent(i: u32, j: u32) -> i64 {
    let word = Word::ordered(0, j).concat(&Word(vec![Letter::U; i as usize]));
    normalize_word(&word, RewriteStrategy::Leftmost).q_power
}

/// A Laurent polynomial `Σ c_e q^e` with complex coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct Laurent<R: Real> {
    terms: BTreeMap<i64, Scalar<R>>,
}

impl<R: Real> Laurent<R> {
    pub fn zero() -> Self {
        Self {
            terms: BTreeMap::new(),
        }
    }

    pub fn monomial(c: Scalar<R>, e: i64) -> Self {
        let mut l = Self::zero();
        l.add_term(e, c);
        l
    }

    pub fn constant(c: Scalar<R>) -> Self {
        Self::monomial(c, 0)
    }

    pub fn one() -> Self {
        Self::constant(Scalar::one())
    }

    /// The formal parameter `q`.
    pub fn q() -> Self {
        Self::monomial(Scalar::one(), 1)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &Scalar<R>)> {
        self.terms.iter().map(|(&e, c)| (e, c))
    }

    /// `(c, e)` if this is a single term `c q^e`.
    pub fn as_monomial(&self) -> Option<(&Scalar<R>, i64)> {
        let mut it = self.terms.iter();
        match (it.next(), it.next()) {
            (Some((&e, c)), None) => Some((c, e)),
            _ => None,
        }
    }

    fn add_term(&mut self, e: i64, c: Scalar<R>) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e).or_insert_with(Scalar::zero);
        *slot = slot.clone() + c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in other.terms() {
            out.add_term(e, c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(&e, c)| (e, -c.clone())).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (e1, c1) in self.terms() {
            for (e2, c2) in other.terms() {
                out.add_term(e1 + e2, c1.clone() * c2.clone());
            }
        }
        out
    }

    /// Multiplies by `q^e`.
    pub fn shift(&self, e: i64) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(&k, c)| (k + e, c.clone()))
                .collect(),
        }
    }

    /// Substitutes a numeric `q`; negative powers need `q ≠ 0`.
    pub fn evaluate(&self, q: &Scalar<R>) -> Result<Scalar<R>> {
        let mut acc = Scalar::zero();
        for (e, c) in self.terms() {
            acc = acc + c.clone() * scalar_pow(q, e)?;
        }
        Ok(acc)
    }
}

pub(crate) fn scalar_pow<R: Real>(x: &Scalar<R>, e: i64) -> Result<Scalar<R>> {
    if e < 0 {
        if x.is_zero() {
            return Err(Error::Parse("negative power of zero".into()));
        }
        let inv = Scalar::<R>::one() / x.clone();
        return scalar_pow(&inv, -e);
    }
    let mut acc = Scalar::one();
    for _ in 0..e {
        acc = acc * x.clone();
    }
    Ok(acc)
}

/// Formats a scalar as `re`, `imi` or `(re±imi)`.
pub fn format_scalar<R: Real>(c: &Scalar<R>) -> String {
    let zero = R::zero();
    if c.im == zero {
        c.re.to_string()
    } else if c.re == zero {
        format!("{}i", c.im)
    } else if c.im < zero {
        format!("({}-{}i)", c.re, -c.im.clone())
    } else {
        format!("({}+{}i)", c.re, c.im)
    }
}

/// Joins factors with `*`, folding a leading coefficient of ±1.
fn join_factors(coeff: &str, rest: &[String]) -> String {
    let body = rest.join("*");
    match (coeff, body.is_empty()) {
        (c, true) => c.to_string(),
        ("1", false) => body,
        ("-1", false) => format!("-{body}"),
        (c, false) => format!("{c}*{body}"),
    }
}

fn q_factor(e: i64) -> Option<String> {
    match e {
        0 => None,
        1 => Some("q".into()),
        e => Some(format!("q^{e}")),
    }
}

fn join_terms(terms: &[String]) -> String {
    let mut out = String::new();
    for (k, t) in terms.iter().enumerate() {
        match (k, t.strip_prefix('-')) {
            (0, _) => out.push_str(t),
            (_, Some(rest)) => {
                out.push_str(" - ");
                out.push_str(rest);
            }
            (_, None) => {
                out.push_str(" + ");
                out.push_str(t);
            }
        }
    }
    if out.is_empty() {
        "0".into()
    } else {
        out
    }
}

impl<R: Real> fmt::Display for Laurent<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .terms()
            .map(|(e, c)| {
                join_factors(
                    &format_scalar(c),
                    &q_factor(e).into_iter().collect::<Vec<_>>(),
                )
            })
            .collect();
        f.write_str(&join_terms(&terms))
    }
}

/// A formal sum of words with Laurent coefficients, not yet normalized.
#[derive(Debug, Clone, PartialEq)]
pub struct QPolynomial<R: Real> {
    terms: Vec<(Laurent<R>, Word)>,
}

impl<R: Real> QPolynomial<R> {
    pub fn zero() -> Self {
        Self { terms: Vec::new() }
    }

    pub fn word(w: Word) -> Self {
        Self::term(Laurent::one(), w)
    }

    pub fn term(c: Laurent<R>, w: Word) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: vec![(c, w)],
        }
    }

    pub fn constant(c: Laurent<R>) -> Self {
        Self::term(c, Word::empty())
    }

    pub fn terms(&self) -> &[(Laurent<R>, Word)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        Self { terms }
    }

    pub fn neg(&self) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(c, w)| (c.neg(), w.clone()))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// Product in the free algebra: words concatenate, `q` is central.
    pub fn mul(&self, other: &Self) -> Self {
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (c1, w1) in &self.terms {
            for (c2, w2) in &other.terms {
                let c = c1.mul(c2);
                if !c.is_zero() {
                    terms.push((c, w1.concat(w2)));
                }
            }
        }
        Self { terms }
    }

    /// The coefficient if every term has the empty word.
    pub fn as_coefficient(&self) -> Option<Laurent<R>> {
        self.terms.iter().try_fold(Laurent::zero(), |acc, (c, w)| {
            w.is_empty().then(|| acc.add(c))
        })
    }
}

/// Canonical image in `ℂ_q[u, v]`: coefficients of `u^a v^b`, ordered by `(a, b)`.
#[derive(Debug, Clone, PartialEq)]
pub struct NormalForm<R: Real> {
    terms: BTreeMap<(u32, u32), Laurent<R>>,
}

impl<R: Real> NormalForm<R> {
    pub fn zero() -> Self {
        Self {
            terms: BTreeMap::new(),
        }
    }

    fn add_term(&mut self, key: (u32, u32), c: Laurent<R>) {
        let slot = self.terms.entry(key).or_insert_with(Laurent::zero);
        *slot = slot.add(&c);
        if slot.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = ((u32, u32), &Laurent<R>)> {
        self.terms.iter().map(|(&k, c)| (k, c))
    }

    pub fn coefficient(&self, a: u32, b: u32) -> Option<&Laurent<R>> {
        self.terms.get(&(a, b))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Substitutes a numeric `q`, giving a commutative polynomial in `u, v`.
    pub fn specialize(&self, q: &Scalar<R>) -> Result<BTreeMap<(u32, u32), Scalar<R>>> {
        let mut out = BTreeMap::new();
        for (k, c) in self.terms() {
            let value = c.evaluate(q)?;
            if !value.is_zero() {
                out.insert(k, value);
            }
        }
        Ok(out)
    }
}

impl<R: Real> fmt::Display for NormalForm<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .terms()
            .map(|((a, b), c)| {
                let mut rest = Vec::new();
                let coeff = match c.as_monomial() {
                    Some((s, e)) => {
                        rest.extend(q_factor(e));
                        format_scalar(s)
                    }
                    None => format!("({c})"),
                };
                for (name, p) in [("u", a), ("v", b)] {
                    match p {
                        0 => {}
                        1 => rest.push(name.into()),
                        p => rest.push(format!("{name}^{p}")),
                    }
                }
                join_factors(&coeff, &rest)
            })
            .collect();
        f.write_str(&join_terms(&terms))
    }
}

pub fn normalize_with<R: Real>(p: &QPolynomial<R>, strategy: RewriteStrategy) -> NormalForm<R> {
    let mut out = NormalForm::zero();
    for (c, w) in p.terms() {
        let mono = normalize_word(w, strategy);
        out.add_term((mono.a, mono.b), c.shift(mono.q_power));
    }
    out
}

/// Normal form with formal `q`, using leftmost rewriting.
pub fn normalize<R: Real>(p: &QPolynomial<R>) -> NormalForm<R> {
    normalize_with(p, RewriteStrategy::Leftmost)
}

/// Substitutes a numeric `q` first, then rewrites with that number.
pub fn normalize_specialized<R: Real>(
    p: &QPolynomial<R>,
    q: &Scalar<R>,
) -> Result<BTreeMap<(u32, u32), Scalar<R>>> {
    let mut out: BTreeMap<(u32, u32), Scalar<R>> = BTreeMap::new();
    for (c, w) in p.terms() {
        let mut coeff = c.evaluate(q)?;
        let mut w = w.clone();
        while rewrite_step(&mut w, RewriteStrategy::Leftmost) {
            coeff = coeff * q.clone();
        }
        let key = (w.count(Letter::U), w.count(Letter::V));
        let slot = out.entry(key).or_insert_with(Scalar::zero);
        *slot = slot.clone() + coeff;
    }
    out.retain(|_, c| !c.is_zero());
    Ok(out)
}

/// Whether `p1 − p2` lies in the ideal generated by `vu − q uv`.
pub fn equal_in_qplane<R: Real>(p1: &QPolynomial<R>, p2: &QPolynomial<R>) -> bool {
    normalize(p1) == normalize(p2)
}
