//! Braid words, the Artin representation, pure braid generators, strand
//! permutations and linking numbers.
//!
//! Braid equality is decided through the (faithful) Artin action on the
//! free group, never through a normal form.

use std::fmt;
use std::ops::Mul;

use thiserror::Error;

use crate::freegroup::{max_word_len, Endomorphism, FreeGroupError, Word};
use crate::report::Report;
use crate::sweep::Exec;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BraidError {
    #[error("generator σ{letter} out of range for {strands} strands")]
    OutOfRange { letter: i32, strands: usize },
    #[error("strand count mismatch: {0} vs {1}")]
    StrandMismatch(usize, usize),
    #[error("pure braid expected, permutation is {0}")]
    NotPure(StrandPermutation),
    #[error("invalid index: {0}")]
    Index(String),
    #[error("cannot parse braid token `{0}`")]
    Parse(String),
    #[error(transparent)]
    FreeGroup(#[from] FreeGroupError),
}

/// A word in the Artin generators `σ_1, …, σ_{n-1}` of `B_n`. No reduction is
/// ever applied.
#[derive(Clone)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<i32>,
    label: Option<String>,
}

impl PartialEq for BraidWord {
    fn eq(&self, other: &Self) -> bool {
        self.strands == other.strands && self.letters == other.letters
    }
}

impl Eq for BraidWord {}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<i32>) -> Result<BraidWord, BraidError> {
        for &l in &letters {
            if l == 0 || l.unsigned_abs() as usize >= strands {
                return Err(BraidError::OutOfRange { letter: l, strands });
            }
        }
        Ok(BraidWord { strands, letters, label: None })
    }

    pub fn identity(strands: usize) -> BraidWord {
        BraidWord { strands, letters: Vec::new(), label: None }
    }

    /// `σ_i` for `i > 0`, `σ_{-i}^-1` for `i < 0`.
    pub fn sigma(i: i32, strands: usize) -> BraidWord {
        BraidWord::new(strands, vec![i]).expect("σ index in range")
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn with_label(mut self, label: impl Into<String>) -> BraidWord {
        self.label = Some(label.into());
        self
    }

    pub fn concat(&self, other: &BraidWord) -> Result<BraidWord, BraidError> {
        if self.strands != other.strands {
            return Err(BraidError::StrandMismatch(self.strands, other.strands));
        }
        let mut letters = Vec::with_capacity(self.len() + other.len());
        letters.extend_from_slice(&self.letters);
        letters.extend_from_slice(&other.letters);
        Ok(BraidWord { strands: self.strands, letters, label: None })
    }

    pub fn inverse(&self) -> BraidWord {
        BraidWord {
            strands: self.strands,
            letters: self.letters.iter().rev().map(|l| -l).collect(),
            label: self.label.as_ref().map(|l| format!("{l}^-1")),
        }
    }

    pub fn pow(&self, e: i64) -> BraidWord {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        let mut letters = Vec::with_capacity(base.len() * e.unsigned_abs() as usize);
        for _ in 0..e.unsigned_abs() {
            letters.extend_from_slice(&base.letters);
        }
        BraidWord { strands: self.strands, letters, label: None }
    }

    /// `by^-1 · self · by`.
    pub fn conj(&self, by: &BraidWord) -> BraidWord {
        &(&by.inverse() * self) * by
    }

    pub fn product<'a, I: IntoIterator<Item = &'a BraidWord>>(strands: usize, parts: I) -> BraidWord {
        parts.into_iter().fold(BraidWord::identity(strands), |acc, b| &acc * b)
    }

    /// Parse the signed-integer text format (`2 -3` is `σ2 σ3^-1`).
    pub fn parse(text: &str, strands: usize) -> Result<BraidWord, BraidError> {
        let letters = text
            .split_whitespace()
            .map(|t| t.parse::<i32>().map_err(|_| BraidError::Parse(t.to_string())))
            .collect::<Result<Vec<_>, _>>()?;
        BraidWord::new(strands, letters)
    }

    /// Label when the word was built as a named generator, otherwise the
    /// signed-integer form.
    pub fn render_named(&self) -> String {
        match &self.label {
            Some(l) => l.clone(),
            None => self.to_string(),
        }
    }
}

impl Mul for &BraidWord {
    type Output = BraidWord;

    fn mul(self, rhs: &BraidWord) -> BraidWord {
        self.concat(rhs).expect("strand mismatch in braid product")
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.letters.iter().map(i32::to_string).collect();
        f.write_str(&parts.join(" "))
    }
}

impl fmt::Debug for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BraidWord[B{}]({})", self.strands, self)?;
        if let Some(l) = &self.label {
            write!(f, " {l}")?;
        }
        Ok(())
    }
}

/// Bijection of `{1, …, n}`; `image(s)` is the end position of the strand
/// that starts at position `s`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StrandPermutation {
    map: Vec<usize>,
}

impl StrandPermutation {
    pub fn identity(n: usize) -> StrandPermutation {
        StrandPermutation { map: (1..=n).collect() }
    }

    pub fn from_images(map: Vec<usize>) -> Option<StrandPermutation> {
        let n = map.len();
        let mut seen = vec![false; n];
        for &m in &map {
            if m == 0 || m > n || seen[m - 1] {
                return None;
            }
            seen[m - 1] = true;
        }
        Some(StrandPermutation { map })
    }

    pub fn n(&self) -> usize {
        self.map.len()
    }

    pub fn image(&self, s: usize) -> usize {
        self.map[s - 1]
    }

    pub fn images(&self) -> &[usize] {
        &self.map
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().enumerate().all(|(i, &m)| m == i + 1)
    }

    pub fn inverse(&self) -> StrandPermutation {
        let mut inv = vec![0; self.map.len()];
        for (i, &m) in self.map.iter().enumerate() {
            inv[m - 1] = i + 1;
        }
        StrandPermutation { map: inv }
    }

    /// Nontrivial cycles, each starting at its smallest element.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.map.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 1..=n {
            if seen[s - 1] || self.map[s - 1] == s {
                continue;
            }
            let mut cyc = vec![s];
            seen[s - 1] = true;
            let mut t = self.map[s - 1];
            while t != s {
                seen[t - 1] = true;
                cyc.push(t);
                t = self.map[t - 1];
            }
            out.push(cyc);
        }
        out
    }
}

impl fmt::Display for StrandPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for c in cycles {
            let parts: Vec<String> = c.iter().map(usize::to_string).collect();
            write!(f, "({})", parts.join(" "))?;
        }
        Ok(())
    }
}

/// Strand labels by position after running the word left to right.
fn positions_after(b: &BraidWord) -> Vec<usize> {
    let mut at: Vec<usize> = (1..=b.strands).collect();
    for &l in &b.letters {
        let i = l.unsigned_abs() as usize;
        at.swap(i - 1, i);
    }
    at
}

pub fn permutation(b: &BraidWord) -> StrandPermutation {
    let at = positions_after(b);
    let mut map = vec![0; b.strands];
    for (pos, &label) in at.iter().enumerate() {
        map[label - 1] = pos + 1;
    }
    StrandPermutation { map }
}

pub fn is_pure(b: &BraidWord) -> bool {
    positions_after(b).iter().enumerate().all(|(p, &l)| l == p + 1)
}

/// The Artin representation, composed with the right-action convention.
///
/// Letters are consumed right to left while maintaining the images of the
/// suffix, so each letter touches two images only.
pub fn artin(b: &BraidWord) -> Result<Endomorphism, FreeGroupError> {
    let n = b.strands;
    let cap = max_word_len();
    let mut e = Endomorphism::identity(n);
    for &l in b.letters.iter().rev() {
        let i = l.unsigned_abs() as usize - 1;
        let imgs = e.images_mut();
        let (x, y) = (imgs[i].clone(), imgs[i + 1].clone());
        let (new_x, new_y) =
            if l > 0 { (&(&x * &y) * &x.invert(), x) } else { (y.clone(), &(&y.invert() * &x) * &y) };
        let len = new_x.len().max(new_y.len());
        if len > cap {
            return Err(FreeGroupError::WordTooLong { len, cap });
        }
        imgs[i] = new_x;
        imgs[i + 1] = new_y;
    }
    Ok(e)
}

pub fn braid_equal(a: &BraidWord, b: &BraidWord) -> Result<bool, BraidError> {
    if a.strands != b.strands {
        return Err(BraidError::StrandMismatch(a.strands, b.strands));
    }
    if a.letters == b.letters {
        return Ok(true);
    }
    Ok(artin(a)? == artin(b)?)
}

/// A braid held as its Artin automorphism together with the inverse. Lets
/// long products be built compositionally without re-evaluating words.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BraidAction {
    fwd: Endomorphism,
    inv: Endomorphism,
}

impl BraidAction {
    pub fn identity(n: usize) -> BraidAction {
        BraidAction { fwd: Endomorphism::identity(n), inv: Endomorphism::identity(n) }
    }

    pub fn from_word(b: &BraidWord) -> Result<BraidAction, FreeGroupError> {
        Ok(BraidAction { fwd: artin(b)?, inv: artin(&b.inverse())? })
    }

    pub fn strands(&self) -> usize {
        self.fwd.rank()
    }

    pub fn fwd(&self) -> &Endomorphism {
        &self.fwd
    }

    pub fn mul(&self, other: &BraidAction) -> Result<BraidAction, FreeGroupError> {
        Ok(BraidAction { fwd: self.fwd.compose(&other.fwd)?, inv: other.inv.compose(&self.inv)? })
    }

    pub fn inverse(&self) -> BraidAction {
        BraidAction { fwd: self.inv.clone(), inv: self.fwd.clone() }
    }

    /// `by^-1 · self · by`.
    pub fn conj(&self, by: &BraidAction) -> Result<BraidAction, FreeGroupError> {
        by.inverse().mul(self)?.mul(by)
    }

    pub fn pow(&self, e: i64) -> Result<BraidAction, FreeGroupError> {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        let mut acc = BraidAction::identity(self.strands());
        for _ in 0..e.unsigned_abs() {
            acc = acc.mul(&base)?;
        }
        Ok(acc)
    }

    pub fn product<'a, I>(n: usize, parts: I) -> Result<BraidAction, FreeGroupError>
    where
        I: IntoIterator<Item = &'a BraidAction>,
    {
        let mut acc = BraidAction::identity(n);
        for p in parts {
            acc = acc.mul(p)?;
        }
        Ok(acc)
    }

    pub fn is_identity(&self) -> bool {
        self.fwd.is_identity()
    }

    pub fn commutes_with(&self, other: &BraidAction) -> Result<bool, FreeGroupError> {
        Ok(self.mul(other)? == other.mul(self)?)
    }
}

fn check_strand_index(i: usize, j: usize, n: usize) -> Result<(), BraidError> {
    if !(1 <= i && i < j && j <= n) {
        return Err(BraidError::Index(format!("need 1 <= i < j <= n, got i={i}, j={j}, n={n}")));
    }
    Ok(())
}

/// `A_{i,j} = σ_{j-1}⋯σ_{i+1} σ_i^2 σ_{i+1}^-1⋯σ_{j-1}^-1`.
pub fn pure_gen(i: usize, j: usize, n: usize) -> Result<BraidWord, BraidError> {
    check_strand_index(i, j, n)?;
    let mut letters: Vec<i32> = ((i + 1)..j).rev().map(|k| k as i32).collect();
    letters.push(i as i32);
    letters.push(i as i32);
    letters.extend(((i + 1)..j).map(|k| -(k as i32)));
    Ok(BraidWord::new(n, letters)?.with_label(format!("A[{i},{j}]")))
}

/// Full twist `A_V` on a set of strands; empty for `|V| = 1`.
pub fn full_twist(v: &[usize], n: usize) -> Result<BraidWord, BraidError> {
    let mut v = v.to_vec();
    v.sort_unstable();
    v.dedup();
    if v.is_empty() || v.iter().any(|&k| k < 1 || k > n) {
        return Err(BraidError::Index(format!("full twist set {v:?} not inside [1,{n}]")));
    }
    let mut out = BraidWord::identity(n);
    for b in 1..v.len() {
        for a in 0..b {
            out = &out * &pure_gen(v[a], v[b], n)?;
        }
    }
    if v.len() > 1 {
        let names: Vec<String> = v.iter().map(usize::to_string).collect();
        out = out.with_label(format!("A[{}]", names.join(",")));
    }
    Ok(out)
}

/// `U_{r,s} = A_{r,r+1} A_{r,r+2} ⋯ A_{r,s}`; empty when `r = s`.
pub fn u_chain(r: usize, s: usize, n: usize) -> Result<BraidWord, BraidError> {
    if r < 1 || r > s || s > n {
        return Err(BraidError::Index(format!("need 1 <= r <= s <= n, got r={r}, s={s}, n={n}")));
    }
    let mut out = BraidWord::identity(n);
    for k in (r + 1)..=s {
        out = &out * &pure_gen(r, k, n)?;
    }
    Ok(out)
}

/// Symmetric matrix of linking numbers, 0-based indices.
pub type LinkingMatrix = Vec<Vec<i64>>;

/// Half the signed crossing count of each strand pair.
pub fn linking_numbers(b: &BraidWord) -> Result<LinkingMatrix, BraidError> {
    let n = b.strands;
    let mut at: Vec<usize> = (0..n).collect();
    let mut m = vec![vec![0i64; n]; n];
    for &l in &b.letters {
        let i = l.unsigned_abs() as usize - 1;
        let (p, q) = (at[i], at[i + 1]);
        let s = l.signum() as i64;
        m[p][q] += s;
        m[q][p] += s;
        at.swap(i, i + 1);
    }
    if at.iter().enumerate().any(|(p, &l)| p != l) {
        return Err(BraidError::NotPure(permutation(b)));
    }
    for row in &mut m {
        for x in row.iter_mut() {
            *x /= 2;
        }
    }
    Ok(m)
}

/// Compare two braids, recording the outcome under `family`/`instance`.
pub(crate) fn record_equal(
    report: &mut Report,
    family: &str,
    instance: String,
    lhs: &BraidWord,
    rhs: &BraidWord,
) {
    let (ok, detail) = equal_with_detail(lhs, rhs);
    report.push(family, instance, ok, detail);
}

pub(crate) fn equal_with_detail(lhs: &BraidWord, rhs: &BraidWord) -> (bool, String) {
    match decide_equal(lhs, rhs) {
        Ok((true, Method::Artin)) => (true, String::new()),
        Ok((true, Method::Dynnikov)) => (true, "dynnikov".to_string()),
        Ok((false, Method::Artin)) => (false, "Artin actions differ".to_string()),
        Ok((false, Method::Dynnikov)) => (false, "Dynnikov coordinates differ".to_string()),
        Err(e) => (false, e.to_string()),
    }
}

/// Which faithful action settled a comparison.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Artin,
    Dynnikov,
}

/// [`braid_equal`], except that when an Artin image outgrows the word cap the
/// comparison is redone with Dynnikov coordinates.
pub fn decide_equal(a: &BraidWord, b: &BraidWord) -> Result<(bool, Method), BraidError> {
    match braid_equal(a, b) {
        Ok(eq) => Ok((eq, Method::Artin)),
        Err(BraidError::FreeGroup(FreeGroupError::WordTooLong { .. })) => {
            Ok((crate::dynnikov::braid_equal(a, b)?, Method::Dynnikov))
        }
        Err(e) => Err(e),
    }
}

/// Every braid relation instance of `B_n`.
pub fn verify_braid_relations(n: usize, exec: Exec) -> Report {
    let mut cases = Vec::new();
    for i in 1..n {
        for j in (i + 1)..n {
            cases.push((i as i32, j as i32));
        }
    }
    exec.map(&cases, |&(i, j)| {
        let s = |k: i32| BraidWord::sigma(k, n);
        let mut rep = Report::new();
        if j == i + 1 {
            let lhs = &(&s(i) * &s(j)) * &s(i);
            let rhs = &(&s(j) * &s(i)) * &s(j);
            record_equal(&mut rep, "braid", format!("s{i} s{j} s{i} = s{j} s{i} s{j}"), &lhs, &rhs);
        } else {
            let lhs = &s(i) * &s(j);
            let rhs = &s(j) * &s(i);
            record_equal(&mut rep, "far-commute", format!("s{i} s{j} = s{j} s{i}"), &lhs, &rhs);
        }
        rep
    })
    .into_iter()
    .fold(Report::new(), |mut acc, r| {
        acc.extend(r);
        acc
    })
}

/// Every instance of the defining relations of `P_n`:
/// `A_{i,j}^-1 A_{k,l} A_{i,j}` for `i < j < l`, `k < l`.
pub fn verify_pure_braid_relations(n: usize, exec: Exec) -> Report {
    let mut cases = Vec::new();
    for l in 1..=n {
        for j in 1..l {
            for i in 1..j {
                for k in 1..l {
                    cases.push((i, j, k, l));
                }
            }
        }
    }
    exec.map(&cases, |&(i, j, k, l)| {
        let a = |x: usize, y: usize| pure_gen(x, y, n).expect("valid pure generator");
        let lhs = a(k, l).conj(&a(i, j));
        let (family, rhs) = if k == i || k == j {
            let m = &a(i, l) * &a(j, l);
            ("pure-braid k in {i,j}", a(k, l).conj(&m.inverse()))
        } else if i < k && k < j {
            let (x, y) = (a(i, l), a(j, l));
            let m = &(&(&x * &y) * &x.inverse()) * &y.inverse();
            ("pure-braid i<k<j", a(k, l).conj(&m.inverse()))
        } else {
            ("pure-braid otherwise", a(k, l))
        };
        let mut rep = Report::new();
        record_equal(&mut rep, family, format!("A[{i},{j}]^-1 A[{k},{l}] A[{i},{j}]"), &lhs, &rhs);
        rep
    })
    .into_iter()
    .fold(Report::new(), |mut acc, r| {
        acc.extend(r);
        acc
    })
}

/// Exponent vector of the conjugator `u` in `artin(b)(t_j) = u t_g u^-1`,
/// together with `g`. Returns `None` when the image is not such a conjugate.
pub fn conjugator_of_image(e: &Endomorphism, j: usize) -> Option<(Word, usize)> {
    e.image(j).as_conjugate_of_letter().filter(|&(_, g)| g > 0).map(|(u, g)| (u, g as usize))
}
