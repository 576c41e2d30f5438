//! Left-associated quandle words, associated-group presentations and free-group words.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::quandle::{dual, QuandleError, QuandleTable};

#[derive(Debug, Error)]
pub enum WordError {
    #[error("letter {letter} is outside a quandle of size {size}")]
    LetterOutOfRange { letter: usize, size: usize },
    #[error("cannot parse word `{text}`: {reason}")]
    Parse { text: String, reason: String },
    #[error(transparent)]
    Quandle(#[from] QuandleError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn inverse(self) -> Self {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn exponent(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

/// `base *^{e1} a1 *^{e2} a2 ...`, evaluated left to right.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct QuandleWord {
    pub base: usize,
    pub tail: Vec<(usize, Sign)>,
}

impl QuandleWord {
    pub fn letter(base: usize) -> Self {
        Self { base, tail: Vec::new() }
    }

    pub fn new(base: usize, tail: Vec<(usize, Sign)>) -> Self {
        Self { base, tail }
    }

    pub fn len(&self) -> usize {
        self.tail.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tail.is_empty()
    }

    pub fn is_canonical(&self) -> bool {
        self.tail.first().is_none_or(|&(a, _)| a != self.base)
            && self.tail.windows(2).all(|w| w[0].0 != w[1].0 || w[0].1 == w[1].1)
    }

    pub fn max_letter(&self) -> usize {
        self.tail.iter().map(|&(a, _)| a).chain([self.base]).max().unwrap()
    }
}

impl fmt::Display for QuandleWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.base)?;
        for &(a, s) in &self.tail {
            match s {
                Sign::Plus => write!(f, " * {a}")?,
                Sign::Minus => write!(f, " *- {a}")?,
            }
        }
        Ok(())
    }
}

impl FromStr for QuandleWord {
    type Err = WordError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let fail = |reason: String| WordError::Parse { text: text.to_string(), reason };
        let letter = |tok: Option<&str>| -> Result<usize, WordError> {
            let tok = tok.ok_or_else(|| fail("word ends after an operator".into()))?;
            tok.parse().map_err(|_| fail(format!("`{tok}` is not an element index")))
        };
        let mut tokens = text.split_whitespace();
        if text.trim().is_empty() {
            return Err(fail("empty word".into()));
        }
        let base = letter(tokens.next())?;
        let mut tail = Vec::new();
        while let Some(op) = tokens.next() {
            let sign = match op {
                "*" => Sign::Plus,
                "*-" => Sign::Minus,
                other => return Err(fail(format!("expected `*` or `*-`, found `{other}`"))),
            };
            tail.push((letter(tokens.next())?, sign));
        }
        Ok(Self { base, tail })
    }
}

/// Free cancellation in the tail, then `a * a = a` at the head.
pub fn normalize(w: &QuandleWord) -> QuandleWord {
    let mut tail: Vec<(usize, Sign)> = Vec::with_capacity(w.tail.len());
    for &(a, s) in &w.tail {
        match tail.last() {
            Some(&(b, t)) if b == a && t == s.inverse() => {
                tail.pop();
            }
            _ => tail.push((a, s)),
        }
    }
    let head = tail.iter().take_while(|&&(a, _)| a == w.base).count();
    tail.drain(..head);
    QuandleWord { base: w.base, tail }
}

/// Left-associated expansion of `w1 *^sign w2`.
pub fn compose(w1: &QuandleWord, w2: &QuandleWord, sign: Sign) -> QuandleWord {
    let mut tail = w1.tail.clone();
    tail.extend(w2.tail.iter().rev().map(|&(a, s)| (a, s.inverse())));
    tail.push((w2.base, sign));
    tail.extend(w2.tail.iter().copied());
    normalize(&QuandleWord { base: w1.base, tail })
}

/// Evaluation against a precomputed dual table.
pub fn evaluate_with(w: &QuandleWord, t: &QuandleTable, d: &QuandleTable) -> Result<usize, WordError> {
    let size = t.size();
    if w.max_letter() >= size {
        return Err(WordError::LetterOutOfRange { letter: w.max_letter(), size });
    }
    Ok(w.tail.iter().fold(w.base, |acc, &(a, s)| match s {
        Sign::Plus => t.op(acc, a),
        Sign::Minus => d.op(acc, a),
    }))
}

pub fn evaluate(w: &QuandleWord, t: &QuandleTable) -> Result<usize, WordError> {
    evaluate_with(w, t, &dual(t)?)
}

/// Freely reduced word in a free group: `(generator, nonzero exponent)` syllables.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct GroupWord(Vec<(usize, i64)>);

impl GroupWord {
    pub fn identity() -> Self {
        Self(Vec::new())
    }

    pub fn generator(g: usize) -> Self {
        Self(vec![(g, 1)])
    }

    pub fn from_syllables(syllables: impl IntoIterator<Item = (usize, i64)>) -> Self {
        let mut w = Self::identity();
        for (g, e) in syllables {
            w.push(g, e);
        }
        w
    }

    fn push(&mut self, g: usize, e: i64) {
        if e == 0 {
            return;
        }
        match self.0.last_mut() {
            Some((h, f)) if *h == g => {
                *f += e;
                if *f == 0 {
                    self.0.pop();
                }
            }
            _ => self.0.push((g, e)),
        }
    }

    pub fn syllables(&self) -> &[(usize, i64)] {
        &self.0
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_empty()
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for &(g, e) in &other.0 {
            out.push(g, e);
        }
        out
    }

    pub fn inverse(&self) -> Self {
        Self(self.0.iter().rev().map(|&(g, e)| (g, -e)).collect())
    }

    pub fn pow(&self, n: i64) -> Self {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        (0..n.unsigned_abs()).fold(Self::identity(), |acc, _| acc.mul(&base))
    }

    /// `other⁻¹ · self · other`.
    pub fn conjugate_by(&self, other: &Self) -> Self {
        other.inverse().mul(self).mul(other)
    }
}

impl fmt::Display for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|&(g, e)| if e == 1 { format!("e{g}") } else { format!("e{g}^{e}") })
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Relation {
    pub lhs: usize,
    pub rhs: GroupWord,
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{} = {}", self.lhs, self.rhs)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Presentation {
    pub generators: usize,
    pub relations: Vec<Relation>,
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = (0..self.generators).map(|g| format!("e{g}")).collect();
        writeln!(f, "generators {}", gens.join(" "))?;
        for r in &self.relations {
            writeln!(f, "{r}")?;
        }
        Ok(())
    }
}

/// Presentation of the associated group: `e_{x*y} = e_y⁻¹ e_x e_y` for `x != y`.
pub fn presentation(t: &QuandleTable) -> Presentation {
    let n = t.size();
    let mut relations = BTreeSet::new();
    for x in 0..n {
        for y in (0..n).filter(|&y| y != x) {
            let rhs = GroupWord::generator(x).conjugate_by(&GroupWord::generator(y));
            relations.insert(Relation { lhs: t.op(x, y), rhs });
        }
    }
    Presentation { generators: n, relations: relations.into_iter().collect() }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FunctorReport {
    pub n: u32,
    /// Free reduction of `(x⁻ⁿ p xⁿ)ⁿ (x⁻ⁿ pⁿ xⁿ)⁻¹` with `x = e0`, `p = e1`.
    pub psi_reduced: String,
    pub psi_holds: bool,
    pub sigma_pairs_checked: usize,
    pub sigma_failures: Vec<(usize, usize)>,
}

impl FunctorReport {
    pub fn passed(&self) -> bool {
        self.psi_holds && self.sigma_failures.is_empty()
    }
}

pub fn psi_identity_word(n: u32) -> GroupWord {
    let n = i64::from(n);
    let (x, p) = (GroupWord::generator(0), GroupWord::generator(1));
    let xn = x.pow(n);
    let left = p.conjugate_by(&xn).pow(n);
    let right = p.pow(n).conjugate_by(&xn);
    left.mul(&right.inverse())
}

/// Checks the power-map identities in the free group and `R_{x*_n y}^n = R_y^{-n} R_x^n R_y^n` on `t`.
pub fn verify_functor_identities(t: &QuandleTable, n: u32) -> Result<FunctorReport, WordError> {
    let psi = psi_identity_word(n);
    let k = i64::from(n);
    let powers: Vec<_> = (0..t.size()).map(|y| t.right_translation(y).map(|r| r.pow(k))).collect::<Result<_, _>>()?;
    let mut failures = Vec::new();
    for x in 0..t.size() {
        for y in 0..t.size() {
            let xy = powers[y].apply(x);
            let expected = powers[y].inverse().then(&powers[x]).then(&powers[y]);
            if powers[xy] != expected {
                failures.push((x, y));
            }
        }
    }
    Ok(FunctorReport {
        n,
        psi_reduced: psi.to_string(),
        psi_holds: psi.is_identity(),
        sigma_pairs_checked: t.size() * t.size(),
        sigma_failures: failures,
    })
}
