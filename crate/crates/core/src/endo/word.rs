use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::{verify_inverse_pair, Endomorphism};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::DEFAULT_DEGREE_CAP;

/// Orders of linear generators are precomputed up to this bound.
const ORDER_SEARCH_LIMIT: u64 = 4096;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub tag: String,
    pub exp: i64,
}

impl Letter {
    pub fn new(tag: impl Into<String>, exp: i64) -> Letter {
        Letter { tag: tag.into(), exp }
    }
}

/// A sequence of tagged generator powers. Evaluates left to right under
/// the composition convention, so `[a, b]` denotes `a ∘ b`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(from = "Vec<(String, i64)>", into = "Vec<(String, i64)>")]
pub struct GeneratorWord {
    letters: Vec<Letter>,
}

impl From<Vec<(String, i64)>> for GeneratorWord {
    fn from(v: Vec<(String, i64)>) -> Self {
        GeneratorWord { letters: v.into_iter().map(|(tag, exp)| Letter { tag, exp }).collect() }
    }
}

impl From<GeneratorWord> for Vec<(String, i64)> {
    fn from(w: GeneratorWord) -> Self {
        w.letters.into_iter().map(|l| (l.tag, l.exp)).collect()
    }
}

impl fmt::Display for GeneratorWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl GeneratorWord {
    pub fn empty() -> GeneratorWord {
        GeneratorWord::default()
    }

    pub fn from_letters(letters: Vec<Letter>) -> GeneratorWord {
        GeneratorWord { letters }
    }

    pub fn single(tag: &str, exp: i64) -> GeneratorWord {
        GeneratorWord { letters: vec![Letter::new(tag, exp)] }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Number of letters as stored.
    pub fn num_letters(&self) -> usize {
        self.letters.len()
    }

    /// Word length counting `g^e` as `|e|` letters.
    pub fn length(&self) -> u64 {
        self.letters.iter().map(|l| l.exp.unsigned_abs()).sum()
    }

    pub fn push(&mut self, tag: &str, exp: i64) {
        self.letters.push(Letter::new(tag, exp));
    }

    pub fn extend(&mut self, other: &GeneratorWord) {
        self.letters.extend(other.letters.iter().cloned());
    }

    pub fn concat(&self, other: &GeneratorWord) -> GeneratorWord {
        let mut w = self.clone();
        w.extend(other);
        w
    }

    /// Reversed word with negated exponents.
    pub fn inverse(&self) -> GeneratorWord {
        GeneratorWord { letters: self.letters.iter().rev().map(|l| Letter::new(l.tag.clone(), -l.exp)).collect() }
    }

    /// Merges adjacent equal tags, reduces exponents by the known generator
    /// orders in `gens` (if given) and drops trivial letters.
    pub fn simplify(&self, gens: Option<&GeneratorSet>) -> GeneratorWord {
        let reduce = |tag: &str, e: i64| -> i64 {
            match gens.and_then(|g| g.get(tag)).and_then(|g| g.order) {
                Some(ord) => {
                    let ord = ord as i64;
                    let r = e.rem_euclid(ord);
                    if 2 * r > ord {
                        r - ord
                    } else {
                        r
                    }
                }
                None => e,
            }
        };
        let mut out: Vec<Letter> = Vec::with_capacity(self.letters.len());
        for l in &self.letters {
            let e = reduce(&l.tag, l.exp);
            if e == 0 {
                continue;
            }
            match out.last_mut() {
                Some(last) if last.tag == l.tag => {
                    last.exp = reduce(&l.tag, last.exp + e);
                    if last.exp == 0 {
                        out.pop();
                    }
                }
                _ => out.push(Letter::new(l.tag.clone(), e)),
            }
        }
        GeneratorWord { letters: out }
    }

    /// Text form `tag tag^e ...`; the empty word renders as `()`.
    pub fn render(&self) -> String {
        if self.letters.is_empty() {
            return "()".to_string();
        }
        let parts: Vec<String> = self
            .letters
            .iter()
            .map(|l| if l.exp == 1 { l.tag.clone() } else { format!("{}^{}", l.tag, l.exp) })
            .collect();
        parts.join(" ")
    }

    pub fn parse(s: &str) -> Result<GeneratorWord> {
        let s = s.trim();
        if s == "()" || s.is_empty() {
            return Ok(GeneratorWord::empty());
        }
        let mut letters = Vec::new();
        for tok in s.split_whitespace() {
            let (tag, exp) = match tok.split_once('^') {
                Some((t, e)) => (t, e.parse::<i64>().map_err(|_| Error::Parse(format!("bad exponent in `{tok}`")))?),
                None => (tok, 1),
            };
            if tag.is_empty() {
                return Err(Error::Parse(format!("empty tag in `{tok}`")));
            }
            letters.push(Letter::new(tag, exp));
        }
        Ok(GeneratorWord { letters })
    }
}

#[derive(Clone, Debug)]
pub struct Generator {
    pub tag: String,
    pub forward: Endomorphism,
    pub inverse: Endomorphism,
    /// Multiplicative order when it is known and small.
    pub order: Option<u64>,
}

impl Generator {
    pub fn is_involution(&self) -> bool {
        self.forward == self.inverse
    }
}

/// Named list of invertible generators with stored exact inverses. Built
/// once with [`GeneratorSet::with`] and immutable afterwards.
#[derive(Clone, Debug)]
pub struct GeneratorSet {
    name: String,
    field: Field,
    nvars: usize,
    gens: Vec<Generator>,
    index: HashMap<String, usize>,
}

impl GeneratorSet {
    pub fn new(name: &str, field: &Field, nvars: usize) -> GeneratorSet {
        GeneratorSet { name: name.to_string(), field: field.clone(), nvars, gens: Vec::new(), index: HashMap::new() }
    }

    /// Adds a generator, inverting it with [`Endomorphism::invert`].
    pub fn with(self, tag: &str, forward: Endomorphism) -> Result<GeneratorSet> {
        let inverse = forward.invert()?;
        self.with_inverse(tag, forward, inverse)
    }

    /// Adds a generator with an explicit inverse, which is verified.
    pub fn with_inverse(mut self, tag: &str, forward: Endomorphism, inverse: Endomorphism) -> Result<GeneratorSet> {
        if forward.nvars() != self.nvars {
            return Err(Error::ArityMismatch { expected: self.nvars, found: forward.nvars() });
        }
        if *forward.field() != self.field {
            return Err(Error::FieldMismatch);
        }
        if tag.is_empty() || tag.contains(|c: char| c.is_whitespace() || c == '^') {
            return Err(Error::InvalidArgument(format!("bad generator tag `{tag}`")));
        }
        if self.index.contains_key(tag) {
            return Err(Error::DuplicateTag(tag.to_string()));
        }
        if !verify_inverse_pair(&forward, &inverse)? {
            return Err(Error::BadInverse(tag.to_string()));
        }
        let order = linear_order(&forward);
        self.index.insert(tag.to_string(), self.gens.len());
        self.gens.push(Generator { tag: tag.to_string(), forward, inverse, order });
        Ok(self)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn generators(&self) -> &[Generator] {
        &self.gens
    }

    pub fn get(&self, tag: &str) -> Option<&Generator> {
        self.index.get(tag).map(|&i| &self.gens[i])
    }

    /// Position of `tag` in declaration order.
    pub fn position(&self, tag: &str) -> Option<usize> {
        self.index.get(tag).copied()
    }

    pub fn tags(&self) -> Vec<&str> {
        self.gens.iter().map(|g| g.tag.as_str()).collect()
    }

    pub fn eval(&self, w: &GeneratorWord) -> Result<Endomorphism> {
        self.eval_capped(w, DEFAULT_DEGREE_CAP)
    }

    pub fn eval_capped(&self, w: &GeneratorWord, cap: u32) -> Result<Endomorphism> {
        let mut acc = Endomorphism::identity(&self.field, self.nvars);
        for l in w.letters() {
            let g = self.get(&l.tag).ok_or_else(|| Error::UnknownTag(l.tag.clone()))?;
            let mut e = l.exp;
            if let Some(ord) = g.order {
                e = e.rem_euclid(ord as i64);
            }
            let step = if e >= 0 { &g.forward } else { &g.inverse };
            for _ in 0..e.unsigned_abs() {
                acc = acc.compose_capped(step, cap)?;
            }
        }
        Ok(acc)
    }
}

/// Evaluates `w` over `gens`.
pub fn eval_word(w: &GeneratorWord, gens: &GeneratorSet) -> Result<Endomorphism> {
    gens.eval(w)
}

fn linear_order(e: &Endomorphism) -> Option<u64> {
    let a = e.as_matrix()?;
    let id = crate::lingrp::Matrix::identity(e.field(), e.nvars());
    let mut p = a.clone();
    for k in 1..=ORDER_SEARCH_LIMIT {
        if p == id {
            return Some(k);
        }
        p = p.mul(&a).ok()?;
    }
    None
}
