//! Reduced words in finitely generated free groups, and endomorphisms of
//! free groups acting on the right.
//!
//! A letter is a signed generator index: `i` stands for `t_i` and `-i` for
//! `t_i^-1`, with `1 <= |i| <= rank`. Words are kept freely reduced at all
//! times, so word equality is sequence equality.
//!
//! Endomorphisms follow the right-action convention: the product `a * b`
//! first applies `a`, then `b`, i.e. it is the map `b ∘ a`.

use std::fmt;
use std::ops::Mul;
use std::str::FromStr;
use std::sync::OnceLock;

use thiserror::Error;

/// Signed generator index.
pub type Letter = i32;

const DEFAULT_MAX_WORD_LEN: usize = 1_000_000;

/// Upper bound on the length of any word produced by [`Endomorphism::apply`]
/// or [`Endomorphism::compose`]. Read once from `BRAIDFORGE_MAX_WORD_LEN`.
pub fn max_word_len() -> usize {
    static CAP: OnceLock<usize> = OnceLock::new();
    *CAP.get_or_init(|| {
        std::env::var("BRAIDFORGE_MAX_WORD_LEN")
            .ok()
            .and_then(|v| v.trim().parse().ok())
            .filter(|&v: &usize| v > 0)
            .unwrap_or(DEFAULT_MAX_WORD_LEN)
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FreeGroupError {
    #[error("malformed word: letter {letter} is not a generator of the free group of rank {rank}")]
    Malformed { letter: Letter, rank: usize },
    #[error("rank mismatch: {left} vs {right}")]
    RankMismatch { left: usize, right: usize },
    #[error("word of length {len} exceeds the cap of {cap} letters (BRAIDFORGE_MAX_WORD_LEN)")]
    WordTooLong { len: usize, cap: usize },
    #[error("cannot parse word token `{0}`")]
    Parse(String),
}

/// A freely reduced word in the free group `F_rank`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    rank: usize,
    letters: Vec<Letter>,
}

/// Push `letter` onto a reduced stack, cancelling against the top.
#[inline]
fn push_reduced(stack: &mut Vec<Letter>, letter: Letter) {
    if stack.last() == Some(&-letter) {
        stack.pop();
    } else {
        stack.push(letter);
    }
}

impl Word {
    /// Freely reduce a raw letter sequence.
    pub fn reduce(letters: &[Letter], rank: usize) -> Result<Word, FreeGroupError> {
        let mut stack = Vec::with_capacity(letters.len());
        for &l in letters {
            if l == 0 || l.unsigned_abs() as usize > rank {
                return Err(FreeGroupError::Malformed { letter: l, rank });
            }
            push_reduced(&mut stack, l);
        }
        Ok(Word { rank, letters: stack })
    }

    pub fn identity(rank: usize) -> Word {
        Word { rank, letters: Vec::new() }
    }

    /// The generator `t_i` (1-based). Panics if `i` is out of range.
    pub fn generator(i: usize, rank: usize) -> Word {
        assert!(i >= 1 && i <= rank, "generator t{i} outside rank {rank}");
        Word { rank, letters: vec![i as Letter] }
    }

    pub fn rank(&self) -> usize {
        self.rank
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

    fn check_rank(&self, other: &Word) -> Result<(), FreeGroupError> {
        if self.rank != other.rank {
            return Err(FreeGroupError::RankMismatch { left: self.rank, right: other.rank });
        }
        Ok(())
    }

    pub fn multiply(&self, other: &Word) -> Result<Word, FreeGroupError> {
        self.check_rank(other)?;
        let mut letters = Vec::with_capacity(self.len() + other.len());
        letters.extend_from_slice(&self.letters);
        for &l in &other.letters {
            push_reduced(&mut letters, l);
        }
        Ok(Word { rank: self.rank, letters })
    }

    pub fn invert(&self) -> Word {
        Word { rank: self.rank, letters: self.letters.iter().rev().map(|l| -l).collect() }
    }

    /// `u^v = v^-1 u v`.
    pub fn conjugate(&self, by: &Word) -> Result<Word, FreeGroupError> {
        by.invert().multiply(self)?.multiply(by)
    }

    /// `[u, v] = u v u^-1 v^-1`.
    pub fn commutator(&self, other: &Word) -> Result<Word, FreeGroupError> {
        self.multiply(other)?.multiply(&self.invert())?.multiply(&other.invert())
    }

    pub fn pow(&self, e: i64) -> Word {
        let base = if e < 0 { self.invert() } else { self.clone() };
        let mut out = Word::identity(self.rank);
        for _ in 0..e.unsigned_abs() {
            out = &out * &base;
        }
        out
    }

    /// Exponent sum of each generator.
    pub fn abelianize(&self) -> Vec<i64> {
        let mut v = vec![0i64; self.rank];
        for &l in &self.letters {
            v[l.unsigned_abs() as usize - 1] += l.signum() as i64;
        }
        v
    }

    /// If the word is `u g u^-1` for a single letter `g`, return `(u, g)`.
    /// The returned `u` never ends in `g` or `g^-1`.
    pub fn as_conjugate_of_letter(&self) -> Option<(Word, Letter)> {
        let n = self.letters.len();
        if n.is_multiple_of(2) {
            return None;
        }
        let mid = n / 2;
        for i in 0..mid {
            if self.letters[i] != -self.letters[n - 1 - i] {
                return None;
            }
        }
        Some((Word { rank: self.rank, letters: self.letters[..mid].to_vec() }, self.letters[mid]))
    }

    /// Same word viewed in a free group of a larger rank.
    pub fn widen(&self, rank: usize) -> Word {
        assert!(rank >= self.rank);
        Word { rank, letters: self.letters.clone() }
    }

    /// Render with custom generator names, e.g. `x[2,3]` or `a_{1,2}`.
    pub fn render_with<F: Fn(usize) -> String>(&self, name: F) -> String {
        if self.letters.is_empty() {
            return "1".to_string();
        }
        self.letters
            .iter()
            .map(|&l| {
                let base = name(l.unsigned_abs() as usize);
                if l < 0 {
                    format!("{base}^-1")
                } else {
                    base
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Parse the `t3 t3^-1` text format in a given rank; `1` is the empty word.
    pub fn parse(text: &str, rank: usize) -> Result<Word, FreeGroupError> {
        let mut raw = Vec::new();
        for tok in text.split_whitespace() {
            if tok == "1" {
                continue;
            }
            let (body, inv) = match tok.strip_suffix("^-1") {
                Some(b) => (b, true),
                None => (tok, false),
            };
            let idx: Letter = body
                .strip_prefix('t')
                .and_then(|s| s.parse().ok())
                .filter(|&i: &Letter| i > 0)
                .ok_or_else(|| FreeGroupError::Parse(tok.to_string()))?;
            raw.push(if inv { -idx } else { idx });
        }
        Word::reduce(&raw, rank)
    }
}

impl Mul for &Word {
    type Output = Word;

    /// Panics on rank mismatch; use [`Word::multiply`] for the checked form.
    fn mul(self, rhs: &Word) -> Word {
        self.multiply(rhs).expect("rank mismatch in word product")
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render_with(|i| format!("t{i}")))
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word[F{}]({})", self.rank, self)
    }
}

impl FromStr for Word {
    type Err = FreeGroupError;

    /// Parses with the smallest rank containing every letter.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let probe = Word::parse(s, usize::MAX >> 1)?;
        let rank = probe.letters.iter().map(|l| l.unsigned_abs() as usize).max().unwrap_or(1);
        Ok(Word { rank, letters: probe.letters })
    }
}

/// An endomorphism of `F_rank`, stored by the images of the positive
/// generators.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Endomorphism {
    rank: usize,
    images: Vec<Word>,
}

impl Endomorphism {
    pub fn new(images: Vec<Word>) -> Result<Endomorphism, FreeGroupError> {
        let rank = images.len();
        for w in &images {
            if w.rank != rank {
                return Err(FreeGroupError::RankMismatch { left: rank, right: w.rank });
            }
        }
        Ok(Endomorphism { rank, images })
    }

    pub fn identity(rank: usize) -> Endomorphism {
        Endomorphism { rank, images: (1..=rank).map(|i| Word::generator(i, rank)).collect() }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn images(&self) -> &[Word] {
        &self.images
    }

    /// Image of `t_i` (1-based).
    pub fn image(&self, i: usize) -> &Word {
        &self.images[i - 1]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, w)| w.letters.len() == 1 && w.letters[0] == i as Letter + 1)
    }

    pub fn apply(&self, w: &Word) -> Result<Word, FreeGroupError> {
        if w.rank != self.rank {
            return Err(FreeGroupError::RankMismatch { left: self.rank, right: w.rank });
        }
        let cap = max_word_len();
        let mut out: Vec<Letter> = Vec::new();
        for &l in &w.letters {
            let img = &self.images[l.unsigned_abs() as usize - 1].letters;
            if l > 0 {
                for &x in img {
                    push_reduced(&mut out, x);
                }
            } else {
                for &x in img.iter().rev() {
                    push_reduced(&mut out, -x);
                }
            }
            if out.len() > cap {
                return Err(FreeGroupError::WordTooLong { len: out.len(), cap });
            }
        }
        Ok(Word { rank: self.rank, letters: out })
    }

    /// `a · b = b ∘ a`: apply `self` first, then `then`.
    pub fn compose(&self, then: &Endomorphism) -> Result<Endomorphism, FreeGroupError> {
        if self.rank != then.rank {
            return Err(FreeGroupError::RankMismatch { left: self.rank, right: then.rank });
        }
        let images = self.images.iter().map(|w| then.apply(w)).collect::<Result<Vec<_>, _>>()?;
        Ok(Endomorphism { rank: self.rank, images })
    }

    /// Total number of letters over all generator images.
    pub fn weight(&self) -> usize {
        self.images.iter().map(Word::len).sum()
    }

    /// Replace the images of `t_i` and `t_{i+1}` in place. Used by the Artin
    /// action, which only ever touches two adjacent generators.
    pub(crate) fn images_mut(&mut self) -> &mut [Word] {
        &mut self.images
    }
}

impl fmt::Debug for Endomorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> =
            self.images.iter().enumerate().map(|(i, w)| format!("t{} -> {}", i + 1, w)).collect();
        write!(f, "Endomorphism[F{}]{{{}}}", self.rank, parts.join(", "))
    }
}
