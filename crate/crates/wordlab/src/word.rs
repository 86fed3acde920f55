//! Free-group words: parsing, free reduction, inversion, named families.
//!
//! A word is stored flattened as a reduced sequence of
//! (generator, exponent) letters; brackets and powers are expanded at parse
//! time. Exponents are arbitrary-precision integers so no input can silently
//! truncate.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Hard cap on the flattened letter count, so that powers of compound
/// factors like `([x1,x2])^e` cannot blow up memory.
const MAX_LETTERS: usize = 1_000_000;

/// One letter `x_i^e` of a reduced word. `var` is 0-based internally;
/// the text grammar uses 1-based `x1, x2, ...`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Letter {
    pub var: usize,
    pub exp: BigInt,
}

/// A freely reduced word in the free group on `arity` generators.
///
/// Invariants: no zero exponents, adjacent letters use distinct generators,
/// and every generator index is below `arity`. The empty letter sequence is
/// the identity word (`arity` may then be 0).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Word {
    arity: usize,
    letters: Vec<Letter>,
}

impl Word {
    /// The identity word on `arity` generators.
    pub fn identity(arity: usize) -> Self {
        Word {
            arity,
            letters: Vec::new(),
        }
    }

    /// Builds a word from raw letters, freely reducing as it goes.
    pub fn from_letters(
        arity: usize,
        raw: impl IntoIterator<Item = (usize, BigInt)>,
    ) -> Result<Self> {
        let mut w = Word::identity(arity);
        for (var, exp) in raw {
            if var >= arity {
                return Err(Error::ArityHint {
                    hint: arity,
                    seen: var + 1,
                });
            }
            w.push(var, exp)?;
        }
        Ok(w)
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    /// Generators actually appearing in the word (sorted, deduplicated).
    pub fn used_vars(&self) -> Vec<usize> {
        let mut seen = vec![false; self.arity];
        for l in &self.letters {
            seen[l.var] = true;
        }
        (0..self.arity).filter(|&v| seen[v]).collect()
    }

    /// Reinterprets the word with a larger arity (extra unused variables).
    pub fn with_arity(&self, arity: usize) -> Result<Self> {
        if let Some(max) = self.letters.iter().map(|l| l.var).max() {
            if arity <= max {
                return Err(Error::ArityHint {
                    hint: arity,
                    seen: max + 1,
                });
            }
        }
        Ok(Word {
            arity,
            letters: self.letters.clone(),
        })
    }

    /// Appends one letter, merging with the tail and dropping cancellations.
    fn push(&mut self, var: usize, exp: BigInt) -> Result<()> {
        if exp.is_zero() {
            return Ok(());
        }
        if let Some(last) = self.letters.last_mut() {
            if last.var == var {
                last.exp += exp;
                if last.exp.is_zero() {
                    self.letters.pop();
                }
                return Ok(());
            }
        }
        if self.letters.len() >= MAX_LETTERS {
            return Err(Error::ScaleLimit(format!(
                "word expansion exceeds {MAX_LETTERS} letters"
            )));
        }
        self.letters.push(Letter { var, exp });
        Ok(())
    }

    /// Concatenation `self * other`, freely reduced.
    pub fn concat(&self, other: &Word) -> Result<Word> {
        let arity = self.arity.max(other.arity);
        let mut w = Word {
            arity,
            letters: self.letters.clone(),
        };
        for l in &other.letters {
            w.push(l.var, l.exp.clone())?;
        }
        Ok(w)
    }

    /// The freely reduced formal inverse. `invert` is an involution.
    pub fn invert(&self) -> Word {
        // The reversal of a reduced word is reduced, so no merging can occur.
        let letters = self
            .letters
            .iter()
            .rev()
            .map(|l| Letter {
                var: l.var,
                exp: -l.exp.clone(),
            })
            .collect();
        Word {
            arity: self.arity,
            letters,
        }
    }

    /// `self^n` for integer `n`, freely reduced.
    pub fn repeat(&self, n: &BigInt) -> Result<Word> {
        if n.is_zero() || self.is_identity() {
            return Ok(Word::identity(self.arity));
        }
        // A single-letter word keeps a compact representation for any n.
        if self.letters.len() == 1 {
            let l = &self.letters[0];
            return Word::from_letters(self.arity, [(l.var, &l.exp * n)]);
        }
        let base = if n.is_negative() {
            self.invert()
        } else {
            self.clone()
        };
        let count = n
            .abs()
            .to_usize()
            .filter(|&c| c.saturating_mul(self.letters.len()) <= MAX_LETTERS)
            .ok_or_else(|| {
                Error::ScaleLimit(format!(
                    "exponent {n} on a compound factor expands past {MAX_LETTERS} letters"
                ))
            })?;
        let mut w = Word::identity(self.arity);
        for _ in 0..count {
            w = w.concat(&base)?;
        }
        Ok(w)
    }

    /// Commutator `[self, other] = self^-1 other^-1 self other`.
    pub fn commutator(&self, other: &Word) -> Result<Word> {
        self.invert()
            .concat(&other.invert())?
            .concat(self)?
            .concat(other)
    }

    /// Renders the word in the text grammar; `parse` round-trips it.
    pub fn render(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            if l.exp == BigInt::from(1) {
                write!(f, "x{}", l.var + 1)?;
            } else {
                write!(f, "x{}^{}", l.var + 1, l.exp)?;
            }
        }
        Ok(())
    }
}

/// Named word families from the literature.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NamedWord {
    /// `w_n = [x1,x2][x3,x4]...[x_{2n-1},x_{2n}]`, a product of n disjoint
    /// commutators; arity 2n.
    Wk,
    /// Left-normed commutator `[x1,...,xn] = [[..[x1,x2]..],xn]`; arity n.
    LeftNormed,
    /// `v_n = x1 x2 ... xn x1^-1 x2^-1 ... xn^-1`; arity n.
    Vn,
}

impl NamedWord {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "wk" => Ok(NamedWord::Wk),
            "left_normed" => Ok(NamedWord::LeftNormed),
            "vn" => Ok(NamedWord::Vn),
            other => Err(Error::Domain(format!(
                "unknown named word kind `{other}` (expected wk, left_normed, vn)"
            ))),
        }
    }
}

/// Builds one of the named words for the given index `n >= 1`.
pub fn build_named_word(kind: NamedWord, n: usize) -> Result<Word> {
    if n == 0 {
        return Err(Error::Domain("named word index must be >= 1".into()));
    }
    let gen = |v: usize| Word::from_letters(v + 1, [(v, BigInt::from(1))]).expect("single letter");
    match kind {
        NamedWord::Wk => {
            let mut w = Word::identity(2 * n);
            for i in 0..n {
                let c = gen(2 * i).commutator(&gen(2 * i + 1))?;
                w = w.concat(&c)?;
            }
            w.with_arity(2 * n)
        }
        NamedWord::LeftNormed => {
            let mut w = gen(0);
            for i in 1..n {
                w = w.commutator(&gen(i))?;
            }
            w.with_arity(n)
        }
        NamedWord::Vn => {
            let mut w = Word::identity(n);
            for i in 0..n {
                w = w.concat(&gen(i))?;
            }
            for i in 0..n {
                w = w.concat(&gen(i).invert())?;
            }
            w.with_arity(n.max(w.arity()))
        }
    }
}

// ---------------------------------------------------------------------------
// Parser
// ---------------------------------------------------------------------------
//
// word   := factor*
// factor := base ("^" "-"? digits)?
// base   := "x" digits | "(" word ")" | "[" word "," word "]"
//
// Whitespace is ignored between factors; the empty input or "1" denotes the
// identity word.

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Self {
        Parser {
            bytes: text.as_bytes(),
            pos: 0,
        }
    }

    fn err(&self, message: impl Into<String>) -> Error {
        Error::Parse {
            position: self.pos,
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn digits(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.err("expected digits"));
        }
        let s = std::str::from_utf8(&self.bytes[start..self.pos]).expect("ascii digits");
        Ok(s.parse::<BigInt>().expect("digit string"))
    }

    /// Parses a word, stopping at `)`/`]`/`,` or end of input.
    fn word(&mut self) -> Result<Word> {
        let mut w = Word::identity(0);
        loop {
            self.skip_ws();
            match self.peek() {
                None | Some(b')') | Some(b']') | Some(b',') => return Ok(w),
                _ => {
                    let f = self.factor()?;
                    w = w.concat(&f)?;
                }
            }
        }
    }

    fn factor(&mut self) -> Result<Word> {
        let base = self.base()?;
        self.skip_ws();
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let neg = if self.peek() == Some(b'-') {
                self.pos += 1;
                true
            } else {
                false
            };
            let exp_pos = self.pos;
            let mut e = self.digits()?;
            if neg {
                e = -e;
            }
            if e.is_zero() {
                return Err(Error::Parse {
                    position: exp_pos,
                    message: "zero exponent".into(),
                });
            }
            base.repeat(&e)
        } else {
            Ok(base)
        }
    }

    fn base(&mut self) -> Result<Word> {
        match self.peek() {
            Some(b'x') => {
                self.pos += 1;
                let idx_pos = self.pos;
                let idx = self.digits()?;
                let idx = idx.to_usize().filter(|&i| i >= 1).ok_or(Error::Parse {
                    position: idx_pos,
                    message: "generator index must be a positive integer".into(),
                })?;
                Word::from_letters(idx, [(idx - 1, BigInt::from(1))])
            }
            Some(b'(') => {
                self.pos += 1;
                let w = self.word()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected `)`"));
                }
                self.pos += 1;
                Ok(w)
            }
            Some(b'[') => {
                self.pos += 1;
                let u = self.word()?;
                if self.peek() != Some(b',') {
                    return Err(self.err("expected `,` in commutator"));
                }
                self.pos += 1;
                let v = self.word()?;
                if self.peek() != Some(b']') {
                    return Err(self.err("expected `]`"));
                }
                self.pos += 1;
                u.commutator(&v)
            }
            Some(c) => Err(self.err(format!("unexpected character `{}`", c as char))),
            None => Err(self.err("unexpected end of input")),
        }
    }
}

/// Parses a word from the text grammar.
///
/// The resulting arity is the largest generator index seen, or `arity_hint`
/// if that is larger. A hint smaller than a used index is an error.
pub fn parse_word(text: &str, arity_hint: Option<usize>) -> Result<Word> {
    let trimmed = text.trim();
    if trimmed.is_empty() || trimmed == "1" {
        return Ok(Word::identity(arity_hint.unwrap_or(0)));
    }
    let mut p = Parser::new(trimmed);
    let w = p.word()?;
    p.skip_ws();
    if p.pos != p.bytes.len() {
        return Err(p.err("trailing input"));
    }
    match arity_hint {
        None => Ok(w),
        Some(hint) => {
            if hint >= w.arity() {
                w.with_arity(hint.max(w.arity()))
            } else if let Some(max) = w.letters().iter().map(|l| l.var).max() {
                if hint <= max {
                    Err(Error::ArityHint {
                        hint,
                        seen: max + 1,
                    })
                } else {
                    w.with_arity(hint)
                }
            } else {
                w.with_arity(hint)
            }
        }
    }
}
