//! Monomial braids `ρ_0, …, ρ_{n-1}` in `B_{rn+1}` and the pure monomial
//! braids built from them.
//!
//! Strand 1 sits at the origin; the point `kζ^s` (`1 <= s <= r`) is strand
//! `1 + (k-1)r + s`.
//!
//! Relation checks work on braid words and compare them with
//! [`decide_equal`]. Conjugates by `Q_{j,p}` have Artin images that
//! outgrow the word cap, and those comparisons go through Dynnikov coordinates.
//!
//! Several published formulas for the conjugating words do not hold as braid
//! identities. [`Reading::Literal`] checks them as printed;
//! [`Reading::Corrected`] checks amended forms that do hold.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use thiserror::Error;

use crate::braid::{decide_equal, linking_numbers, permutation, pure_gen, BraidError, BraidWord, Method};
use crate::freegroup::FreeGroupError;
use crate::report::Report;
use crate::sweep::Exec;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MonomialError {
    #[error("invalid parameters r={r}, n={n}: need r >= 1 and n >= 1")]
    Params { r: usize, n: usize },
    #[error("index out of range: {0}")]
    Index(String),
    #[error(transparent)]
    Braid(#[from] BraidError),
    #[error(transparent)]
    FreeGroup(#[from] FreeGroupError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct MonomialParams {
    pub r: usize,
    pub n: usize,
}

impl MonomialParams {
    pub fn new(r: usize, n: usize) -> Result<MonomialParams, MonomialError> {
        if r == 0 || n == 0 {
            return Err(MonomialError::Params { r, n });
        }
        Ok(MonomialParams { r, n })
    }

    pub fn strands(&self) -> usize {
        self.r * self.n + 1
    }

    /// Strand of the point `kζ^s`.
    pub fn strand(&self, k: usize, s: usize) -> usize {
        1 + (k - 1) * self.r + s
    }

    pub fn orbit(&self, k: usize) -> Vec<usize> {
        (1..=self.r).map(|s| self.strand(k, s)).collect()
    }

    fn check(&self, cond: bool, what: impl FnOnce() -> String) -> Result<(), MonomialError> {
        if cond {
            Ok(())
        } else {
            Err(MonomialError::Index(what()))
        }
    }

    fn word(&self, letters: Vec<i32>) -> BraidWord {
        BraidWord::new(self.strands(), letters).expect("monomial letters in range")
    }
}

/// `τ_i = ∏_{m=1}^{r-1} (σ_{(i-1)r+m+2} σ_{(i-1)r+m+4} ⋯ σ_{(i-1)r+2r-m})`.
pub fn tau(i: usize, p: &MonomialParams) -> Result<BraidWord, MonomialError> {
    p.check(1 <= i && i < p.n, || format!("tau index {i} with n={}", p.n))?;
    let base = (i - 1) * p.r;
    let mut letters = Vec::new();
    for m in 1..p.r {
        let mut k = base + m + 2;
        while k <= base + 2 * p.r - m {
            letters.push(k as i32);
            k += 2;
        }
    }
    Ok(p.word(letters))
}

pub fn rho(i: usize, p: &MonomialParams) -> Result<BraidWord, MonomialError> {
    p.check(i < p.n, || format!("rho index {i} with n={}", p.n))?;
    let w = if i == 0 {
        let mut letters: Vec<i32> = (1..=p.r as i32).rev().collect();
        letters.push(1);
        p.word(letters)
    } else {
        let base = (i - 1) * p.r;
        let mid = p.word((0..p.r).map(|m| (base + 2 + 2 * m) as i32).collect());
        mid.conj(&tau(i, p)?)
    };
    Ok(w.with_label(format!("rho[{i}]")))
}

fn rho_chain(from: usize, to_exclusive: usize, p: &MonomialParams) -> Result<BraidWord, MonomialError> {
    // ρ_{from} ρ_{from-1} ⋯ ρ_{to_exclusive+1}
    let mut out = BraidWord::identity(p.strands());
    let mut k = from;
    while k > to_exclusive {
        out = &out * &rho(k, p)?;
        k -= 1;
    }
    Ok(out)
}

/// `X_i = ρ_{i-1}⋯ρ_1 ρ_0 ρ_1⋯ρ_{i-1}`.
pub fn x(i: usize, p: &MonomialParams) -> Result<BraidWord, MonomialError> {
    p.check(1 <= i && i <= p.n, || format!("X index {i} with n={}", p.n))?;
    let mut up = BraidWord::identity(p.strands());
    for k in 1..i {
        up = &up * &rho(k, p)?;
    }
    let w = &(&rho_chain(i - 1, 0, p)? * &rho(0, p)?) * &up;
    Ok(w.with_label(format!("X[{i}]")))
}

/// `Z_j = ρ_{j-1}⋯ρ_1 ρ_0^r ρ_1^-1⋯ρ_{j-1}^-1`.
pub fn z(j: usize, p: &MonomialParams) -> Result<BraidWord, MonomialError> {
    p.check(1 <= j && j <= p.n, || format!("Z index {j} with n={}", p.n))?;
    let down = rho_chain(j - 1, 0, p)?;
    let w = rho(0, p)?.pow(p.r as i64).conj(&down.inverse());
    Ok(w.with_label(format!("Z[{j}]")))
}

/// `A^{(q)}_{i,j} = X_i^{q-r} (ρ_{j-1}⋯ρ_{i+1} ρ_i^2 ρ_{i+1}^-1⋯ρ_{j-1}^-1) X_i^{r-q}`.
///
/// `q = 0` is accepted and evaluates the same formula; it shows up as
/// `A^{(r-1)}` when `r = 1`.
pub fn a(i: usize, j: usize, q: usize, p: &MonomialParams) -> Result<BraidWord, MonomialError> {
    p.check(1 <= i && i < j && j <= p.n && q <= p.r, || format!("A[{i},{j};{q}] with r={}, n={}", p.r, p.n))?;
    let down = rho_chain(j - 1, i, p)?;
    let core = rho(i, p)?.pow(2).conj(&down.inverse());
    let w = core.conj(&x(i, p)?.pow((p.r - q) as i64));
    Ok(w.with_label(format!("A[{i},{j};{q}]")))
}

/// `A^{[q]}_{i,j} = A^{(q)} A^{(q+1)} ⋯ A^{(r-1)}`, empty for `q = r`.
pub fn a_bracket(i: usize, j: usize, q: usize, p: &MonomialParams) -> Result<BraidWord, MonomialError> {
    p.check(1 <= i && i < j && j <= p.n && 1 <= q && q <= p.r, || {
        format!("A[{i},{j};[{q}]] with r={}, n={}", p.r, p.n)
    })?;
    let mut out = BraidWord::identity(p.strands());
    for s in q..p.r {
        out = &out * &a(i, j, s, p)?;
    }
    Ok(out)
}

/// `C_l = A^{(r)}_{1,l} ⋯ A^{(r)}_{l-1,l}`.
pub fn c(l: usize, p: &MonomialParams) -> Result<BraidWord, MonomialError> {
    p.check(1 <= l && l <= p.n, || format!("C index {l}"))?;
    let mut out = BraidWord::identity(p.strands());
    for k in 1..l {
        out = &out * &a(k, l, p.r, p)?;
    }
    Ok(out)
}

/// `D_k = A^{[1]}_{k-1,k} ⋯ A^{[1]}_{1,k} Z_k C_k`.
pub fn d(k: usize, p: &MonomialParams) -> Result<BraidWord, MonomialError> {
    p.check(1 <= k && k <= p.n, || format!("D index {k}"))?;
    let mut out = BraidWord::identity(p.strands());
    for i in (1..k).rev() {
        out = &out * &a_bracket(i, k, 1, p)?;
    }
    Ok(&(&out * &z(k, p)?) * &c(k, p)?)
}

/// `D_k` followed by `∏_{s=1}^{t} A^{(s)}_{k,k+1} ⋯ A^{(s)}_{k,l-1}`.
///
/// This is the conjugator that actually carries `A^{(1)}_{k,l}` to
/// `X_l^-1 A^{(r)}_{k,l} X_l` (with `t = 1`); `D_k` alone only works for
/// `l = k + 1`.
pub fn d_toward(k: usize, l: usize, t: usize, p: &MonomialParams) -> Result<BraidWord, MonomialError> {
    p.check(k < l && l <= p.n && t <= p.r, || format!("D index {k} toward {l}"))?;
    let mut out = d(k, p)?;
    for s in 1..=t {
        for m in (k + 1)..l {
            out = &out * &a(k, m, s, p)?;
        }
    }
    Ok(out)
}

/// `Q_{1,q} = 1`, `Q_{j,q} = C_j ∏_{s=1}^{q} (D_1 A^{(s)}_{1,j} D_1^-1 ⋯ D_{j-1} A^{(s)}_{j-1,j} D_{j-1}^-1)`.
pub fn q(j: usize, qq: usize, p: &MonomialParams) -> Result<BraidWord, MonomialError> {
    q_with(j, qq, p, |k| d(k, p))
}

/// [`q`] with each `D_k` replaced by [`d_toward`]`(k, j, 1)`.
pub fn q_corrected(j: usize, qq: usize, p: &MonomialParams) -> Result<BraidWord, MonomialError> {
    q_with(j, qq, p, |k| d_toward(k, j, 1, p))
}

fn q_with(
    j: usize,
    qq: usize,
    p: &MonomialParams,
    dk: impl Fn(usize) -> Result<BraidWord, MonomialError>,
) -> Result<BraidWord, MonomialError> {
    p.check(1 <= j && j <= p.n && qq <= p.r, || format!("Q[{j},{qq}]"))?;
    if j == 1 {
        return Ok(BraidWord::identity(p.strands()));
    }
    let ds = (1..j).map(dk).collect::<Result<Vec<_>, _>>()?;
    let mut out = c(j, p)?;
    for s in 1..=qq {
        for k in 1..j {
            out = &out * &wrap(&ds[k - 1], &a(k, j, s, p)?);
        }
    }
    Ok(out)
}

// x y x^-1
fn wrap(x: &BraidWord, y: &BraidWord) -> BraidWord {
    y.conj(&x.inverse())
}

/// Which version of the conjugating words to check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Reading {
    /// The formulas exactly as published.
    Literal,
    /// Amended conjugators, found by search and verified exhaustively.
    Corrected,
}

impl Reading {
    pub fn name(self) -> &'static str {
        match self {
            Reading::Literal => "literal",
            Reading::Corrected => "corrected",
        }
    }
}

/// Check a cyclic relation `[g_1, …, g_m]`: all cyclic rotations of the
/// product agree. Returns the method that settled the last comparison made.
pub fn cyclic_relation_holds(gs: &[BraidWord]) -> Result<(bool, Method), BraidError> {
    let mut method = Method::Artin;
    if gs.len() < 2 {
        return Ok((true, method));
    }
    let s = gs[0].strands();
    let base = BraidWord::product(s, gs);
    for k in 1..gs.len() {
        let rot = BraidWord::product(s, gs[k..].iter().chain(&gs[..k]));
        let (eq, m) = decide_equal(&base, &rot)?;
        if m == Method::Dynnikov {
            method = m;
        }
        if !eq {
            return Ok((false, method));
        }
    }
    Ok((true, method))
}

fn push_decision(
    rep: &mut Report,
    family: &str,
    instance: String,
    outcome: Result<(bool, Method), MonomialError>,
) {
    match outcome {
        Ok((true, Method::Artin)) => rep.push(family, instance, true, ""),
        Ok((true, Method::Dynnikov)) => rep.push(family, instance, true, "dynnikov"),
        Ok((false, _)) => rep.push(family, instance, false, "braids differ"),
        Err(e) => rep.push(family, instance, false, e.to_string()),
    }
}

fn equal(lhs: &BraidWord, rhs: &BraidWord) -> Result<(bool, Method), MonomialError> {
    Ok(decide_equal(lhs, rhs)?)
}

fn merge(parts: Vec<Report>) -> Report {
    parts.into_iter().fold(Report::new(), |mut acc, r| {
        acc.extend(r);
        acc
    })
}

/// The defining relations of the monomial braid group among the `ρ_i`.
pub fn verify_monomial_relations(p: &MonomialParams, exec: Exec) -> Report {
    let mut cases = vec![];
    for i in 0..p.n {
        for j in (i + 1)..p.n {
            cases.push((i, j));
        }
    }
    let parts = exec.map(&cases, |&(i, j)| {
        let mut rep = Report::new();
        let (ri, rj) = match (rho(i, p), rho(j, p)) {
            (Ok(a), Ok(b)) => (a, b),
            (Err(e), _) | (_, Err(e)) => {
                rep.push("rho", format!("r={} n={}", p.r, p.n), false, e.to_string());
                return rep;
            }
        };
        let (family, inst, lhs, rhs) = if i == 0 && j == 1 {
            let l = (&ri * &rj).pow(2);
            let r = (&rj * &ri).pow(2);
            ("rho-square", "(rho0 rho1)^2 = (rho1 rho0)^2".to_string(), l, r)
        } else if j == i + 1 {
            (
                "rho-braid",
                format!("rho{i} rho{j} rho{i} = rho{j} rho{i} rho{j}"),
                &(&ri * &rj) * &ri,
                &(&rj * &ri) * &rj,
            )
        } else {
            ("rho-commute", format!("rho{i} rho{j} = rho{j} rho{i}"), &ri * &rj, &rj * &ri)
        };
        crate::braid::record_equal(&mut rep, family, format!("r={} n={} {inst}", p.r, p.n), &lhs, &rhs);
        rep
    });
    merge(parts)
}

#[derive(Debug, Clone, Copy)]
enum ConjCase {
    Z { i: usize, l: usize },
    A { i: usize, k: usize, l: usize },
}

/// Every case of the conjugation formulas for `X_i^-1 Z_l X_i` and
/// `X_i^-1 A^{(r)}_{k,l} X_i`.
///
/// Under [`Reading::Corrected`] the case `i = l` uses [`d_toward`] in place of
/// `D_k`.
pub fn verify_lemma_conj(p: &MonomialParams, reading: Reading, exec: Exec) -> Report {
    let r = p.r;
    let mut cases = Vec::new();
    for i in 1..=p.n {
        for l in 1..=p.n {
            cases.push(ConjCase::Z { i, l });
        }
        for l in 1..=p.n {
            for k in 1..l {
                cases.push(ConjCase::A { i, k, l });
            }
        }
    }
    let parts = exec.map(&cases, |&case| {
        let mut rep = Report::new();
        let check = || -> Result<(&'static str, String, (bool, Method)), MonomialError> {
            match case {
                ConjCase::Z { i, l } => {
                    let lhs = z(l, p)?.conj(&x(i, p)?);
                    let (name, rhs) = if l < i {
                        ("Z l<i", z(l, p)?)
                    } else if l == i {
                        ("Z l=i", z(l, p)?.conj(&c(l, p)?))
                    } else {
                        ("Z l>i", wrap(&a(i, l, r - 1, p)?, &z(l, p)?))
                    };
                    Ok((name, format!("X[{i}]^-1 Z[{l}] X[{i}]"), equal(&lhs, &rhs)?))
                }
                ConjCase::A { i, k, l } => {
                    let lhs = a(k, l, r, p)?.conj(&x(i, p)?);
                    let (name, rhs) = if i < k || i > l {
                        ("A i<k or i>l", a(k, l, r, p)?)
                    } else if i == k {
                        ("A i=k", a(k, l, r - 1, p)?)
                    } else if i < l {
                        ("A k<i<l", wrap(&a(i, l, r - 1, p)?, &a(k, l, r, p)?))
                    } else {
                        let dk = match reading {
                            Reading::Literal => d(k, p)?,
                            Reading::Corrected => d_toward(k, l, 1, p)?,
                        };
                        ("A i=l", wrap(&dk, &a(k, l, 1, p)?))
                    };
                    Ok((name, format!("X[{i}]^-1 A[{k},{l};{r}] X[{i}]"), equal(&lhs, &rhs)?))
                }
            }
        };
        let tag = format!("r={} n={}", p.r, p.n);
        match check() {
            Ok((name, inst, outcome)) => {
                push_decision(&mut rep, &format!("lemma-conj {name}"), format!("{tag} {inst}"), Ok(outcome))
            }
            Err(e) => push_decision(&mut rep, "lemma-conj", format!("{tag} {case:?}"), Err(e)),
        }
        rep
    });
    merge(parts)
}

/// One instance of a relation family of the pure monomial braid group
/// presentation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PresentationFamily {
    /// `[Z_j, Q_{j,r-1} A^{(1)}_{j,l} Q^-1, …, Q_{j,1} A^{(r-1)}_{j,l} Q^-1, Z_l, A^{(r)}_{j,l}]`
    Zaza { j: usize, l: usize },
    /// `[Z_i, A^{(p)}_{k,l}]`
    ZA { i: usize, k: usize, l: usize, p: usize },
    /// `[A^{(p)}_{i,j}, Z_k]`
    AZ { i: usize, j: usize, k: usize, p: usize },
    /// `[A^{[p]}_{i,j} Z_j A^{[p]-1}_{i,j}, (A^{(p)}_{i,k})^{A^{(r)}_{i+1,k}⋯A^{(r)}_{j,k}}]`
    ZAconj { i: usize, j: usize, k: usize, p: usize },
    /// `[A^{(p)}_{i,j}, A^{(q)}_{k,l}]`
    AAdisjoint { i: usize, j: usize, k: usize, l: usize, p: usize, q: usize },
    /// `[A^{(p)}_{j,k}, A^{[p]}_{j,l} A^{(q)}_{i,l} A^{[p]-1}_{j,l}]`
    AAnested { i: usize, j: usize, k: usize, l: usize, p: usize, q: usize },
    /// `[A^{[p]}_{j,k} A^{(q)}_{i,k} A^{[p]-1}_{j,k}, (A^{(p)}_{j,l})^{A^{(r)}_{k,l}}]`
    AAcrossed { i: usize, j: usize, k: usize, l: usize, p: usize, q: usize },
    /// `[A^{(p)}_{i,j}, A^{(p)}_{i,k}, A^{(r)}_{j,k}]`
    Triple { i: usize, j: usize, k: usize, p: usize },
    /// `[A^{(p)}_{i,j}, A^{(r-q)}_{j,k}, A^{[r-q+1]}_{j,k} A^{(p-q)}_{i,k} A^{[r-q+1]-1}_{j,k}]`, `q < p`
    TripleLow { i: usize, j: usize, k: usize, p: usize, q: usize },
    /// `[D_i A^{(p)}_{i,j} D_i^-1, A^{(r-q)}_{j,k}, A^{[r-q+1]}_{j,k} A^{(r-q+p)}_{i,k} A^{[r-q+1]-1}_{j,k}]`, `p <= q < r`
    TripleHigh { i: usize, j: usize, k: usize, p: usize, q: usize },
}

impl PresentationFamily {
    pub fn name(&self) -> &'static str {
        use PresentationFamily::*;
        match self {
            Zaza { .. } => "ZAZA",
            ZA { .. } => "Z_i,A_kl",
            AZ { .. } => "A_ij,Z_k",
            ZAconj { .. } => "Z_j~,A_ik~",
            AAdisjoint { .. } => "A_ij,A_kl",
            AAnested { .. } => "A_jk,A_il~",
            AAcrossed { .. } => "A_ik~,A_jl~",
            Triple { .. } => "A_ij,A_ik,A_jk",
            TripleLow { .. } => "triple q<p",
            TripleHigh { .. } => "triple p<=q<r",
        }
    }

    pub fn instance(&self) -> String {
        use PresentationFamily::*;
        match *self {
            Zaza { j, l } => format!("j={j} l={l}"),
            ZA { i, k, l, p } => format!("i={i} k={k} l={l} p={p}"),
            AZ { i, j, k, p } | ZAconj { i, j, k, p } | Triple { i, j, k, p } => {
                format!("i={i} j={j} k={k} p={p}")
            }
            AAdisjoint { i, j, k, l, p, q }
            | AAnested { i, j, k, l, p, q }
            | AAcrossed { i, j, k, l, p, q } => {
                format!("i={i} j={j} k={k} l={l} p={p} q={q}")
            }
            TripleLow { i, j, k, p, q } | TripleHigh { i, j, k, p, q } => {
                format!("i={i} j={j} k={k} p={p} q={q}")
            }
        }
    }

    /// True when the corrected reading differs from the literal one for this
    /// instance.
    pub fn is_amended(&self) -> bool {
        use PresentationFamily::*;
        match *self {
            Zaza { j, .. } => j > 1,
            AZ { .. } => true,
            TripleLow { i, j, .. } => j > i + 1,
            TripleHigh { i, j, .. } => j > i + 1,
            _ => false,
        }
    }

    /// The members `g_1, …, g_m` of the cyclic relation.
    ///
    /// The corrected reading changes four families:
    /// `ZAZA` conjugates `A^{(t)}_{j,l}` by `Q'_{j,r-1-t}` ([`q_corrected`]);
    /// `[A^{(p)}_{i,j}, A^{[p]}_{i,k} Z_k A^{[p]-1}_{i,k}]` replaces `[A^{(p)}_{i,j}, Z_k]`;
    /// in both triple families the third conjugator gains the factors
    /// `A^{[t]}_{m,k}` for `m = j-1, …, i+1`, with `t = r-q` (`q < p`) or
    /// `t = r-q+p` (`p <= q`); and `D_i` in the last family becomes
    /// [`d_toward`]`(i, j, p)`.
    pub fn members(&self, p: &MonomialParams, reading: Reading) -> Result<Vec<BraidWord>, MonomialError> {
        use PresentationFamily::*;
        let r = p.r;
        let s = p.strands();
        let fixed = reading == Reading::Corrected;
        // A^{[t]}_{m,k} for m = j-1 down to i+1
        let middle = |i: usize, j: usize, k: usize, t: usize| -> Result<BraidWord, MonomialError> {
            let mut out = BraidWord::identity(s);
            if fixed {
                for m in ((i + 1)..j).rev() {
                    out = &out * &a_bracket(m, k, t, p)?;
                }
            }
            Ok(out)
        };
        Ok(match *self {
            Zaza { j, l } => {
                let mut g = vec![z(j, p)?];
                for t in 1..r {
                    let qw = if fixed { q_corrected(j, r - 1 - t, p)? } else { q(j, r - t, p)? };
                    g.push(wrap(&qw, &a(j, l, t, p)?));
                }
                g.push(z(l, p)?);
                g.push(a(j, l, r, p)?);
                g
            }
            ZA { i, k, l, p: pp } => vec![z(i, p)?, a(k, l, pp, p)?],
            AZ { i, j, k, p: pp } => {
                let zk = if fixed { wrap(&a_bracket(i, k, pp, p)?, &z(k, p)?) } else { z(k, p)? };
                vec![a(i, j, pp, p)?, zk]
            }
            ZAconj { i, j, k, p: pp } => {
                let first = wrap(&a_bracket(i, j, pp, p)?, &z(j, p)?);
                let parts = ((i + 1)..=j).map(|t| a(t, k, r, p)).collect::<Result<Vec<_>, _>>()?;
                vec![first, a(i, k, pp, p)?.conj(&BraidWord::product(s, &parts))]
            }
            AAdisjoint { i, j, k, l, p: pp, q: qq } => vec![a(i, j, pp, p)?, a(k, l, qq, p)?],
            AAnested { i, j, k, l, p: pp, q: qq } => {
                vec![a(j, k, pp, p)?, wrap(&a_bracket(j, l, pp, p)?, &a(i, l, qq, p)?)]
            }
            AAcrossed { i, j, k, l, p: pp, q: qq } => {
                vec![wrap(&a_bracket(j, k, pp, p)?, &a(i, k, qq, p)?), a(j, l, pp, p)?.conj(&a(k, l, r, p)?)]
            }
            Triple { i, j, k, p: pp } => vec![a(i, j, pp, p)?, a(i, k, pp, p)?, a(j, k, r, p)?],
            TripleLow { i, j, k, p: pp, q: qq } => {
                let by = &a_bracket(j, k, r - qq + 1, p)? * &middle(i, j, k, r - qq)?;
                vec![a(i, j, pp, p)?, a(j, k, r - qq, p)?, wrap(&by, &a(i, k, pp - qq, p)?)]
            }
            TripleHigh { i, j, k, p: pp, q: qq } => {
                let di = if fixed { d_toward(i, j, pp, p)? } else { d(i, p)? };
                let by = &a_bracket(j, k, r - qq + 1, p)? * &middle(i, j, k, r - qq + pp)?;
                vec![wrap(&di, &a(i, j, pp, p)?), a(j, k, r - qq, p)?, wrap(&by, &a(i, k, r - qq + pp, p)?)]
            }
        })
    }
}

/// Every relation instance of the presentation for the given parameters.
pub fn presentation_families(p: &MonomialParams) -> Vec<PresentationFamily> {
    use PresentationFamily::*;
    let (r, n) = (p.r, p.n);
    let mut out = Vec::new();
    for j in 1..=n {
        for l in (j + 1)..=n {
            out.push(Zaza { j, l });
        }
    }
    for i in 1..=n {
        for j in (i + 1)..=n {
            for k in (j + 1)..=n {
                for pp in 1..=r {
                    out.push(ZA { i, k: j, l: k, p: pp });
                    out.push(AZ { i, j, k, p: pp });
                    out.push(ZAconj { i, j, k, p: pp });
                    out.push(Triple { i, j, k, p: pp });
                    for qq in 1..pp {
                        out.push(TripleLow { i, j, k, p: pp, q: qq });
                    }
                    for qq in pp..r {
                        out.push(TripleHigh { i, j, k, p: pp, q: qq });
                    }
                }
                for l in (k + 1)..=n {
                    for pp in 1..=r {
                        for qq in 1..=r {
                            out.push(AAdisjoint { i, j, k, l, p: pp, q: qq });
                            out.push(AAnested { i, j, k, l, p: pp, q: qq });
                            out.push(AAcrossed { i, j, k, l, p: pp, q: qq });
                        }
                    }
                }
            }
        }
    }
    out
}

/// Check every presentation relation family as a braid identity. At `r = 1`
/// the classical degeneration is checked as well.
pub fn verify_presentation(p: &MonomialParams, reading: Reading, exec: Exec) -> Report {
    let fams = presentation_families(p);
    let parts = exec.map(&fams, |f| {
        let mut rep = Report::new();
        let inst = format!("r={} n={} {}", p.r, p.n, f.instance());
        let outcome = f.members(p, reading).and_then(|g| Ok(cyclic_relation_holds(&g)?));
        push_decision(&mut rep, f.name(), inst, outcome);
        rep
    });
    let mut rep = merge(parts);
    if p.r == 1 {
        rep.extend(verify_classical_degeneration(p));
    }
    rep
}

/// At `r = 1` the generators are classical: `Z_j = A_{1,j+1}` and
/// `A_{i,j} = A_{i+1,j+1}`, and the `A^{(r)}` satisfy the pure braid
/// relations.
fn verify_classical_degeneration(p: &MonomialParams) -> Report {
    let n = p.n;
    let s = p.strands();
    let mut rep = Report::new();
    for j in 1..=n {
        let outcome = (|| equal(&z(j, p)?, &pure_gen(1, j + 1, s)?))();
        push_decision(&mut rep, "classical Z", format!("Z[{j}] = A[1,{}]", j + 1), outcome);
    }
    for i in 1..=n {
        for j in (i + 1)..=n {
            let outcome = (|| equal(&a(i, j, 1, p)?, &pure_gen(i + 1, j + 1, s)?))();
            push_decision(&mut rep, "classical A", format!("A[{i},{j};1] = A[{},{}]", i + 1, j + 1), outcome);
        }
    }
    rep.extend(verify_top_pure_braid_relations(p));
    rep
}

/// The classical pure braid relations among the `A^{(r)}_{i,j}`.
pub fn verify_top_pure_braid_relations(p: &MonomialParams) -> Report {
    let (n, r) = (p.n, p.r);
    let mut rep = Report::new();
    for l in 1..=n {
        for j in 1..l {
            for i in 1..j {
                for k in 1..l {
                    let outcome = (|| {
                        let a = |x: usize, y: usize| a(x, y, r, p);
                        let lhs = a(k, l)?.conj(&a(i, j)?);
                        let rhs = if k == i || k == j {
                            wrap(&(&a(i, l)? * &a(j, l)?), &a(k, l)?)
                        } else if i < k && k < j {
                            let (x, y) = (a(i, l)?, a(j, l)?);
                            let cm = &(&(&x * &y) * &x.inverse()) * &y.inverse();
                            wrap(&cm, &a(k, l)?)
                        } else {
                            a(k, l)?
                        };
                        equal(&lhs, &rhs)
                    })();
                    push_decision(
                        &mut rep,
                        "top pure-braid",
                        format!("r={r} n={n} A[{i},{j};{r}]^-1 A[{k},{l};{r}] A[{i},{j};{r}]"),
                        outcome,
                    );
                }
            }
        }
    }
    rep
}

fn pattern_of(m: &[Vec<i64>]) -> BTreeSet<(usize, usize)> {
    let mut out = BTreeSet::new();
    for a in 0..m.len() {
        for b in (a + 1)..m.len() {
            if m[a][b] != 0 {
                out.insert((a + 1, b + 1));
            }
        }
    }
    out
}

fn pairs_within(v: &[usize]) -> BTreeSet<(usize, usize)> {
    let mut out = BTreeSet::new();
    for (x, &a) in v.iter().enumerate() {
        for &b in &v[x + 1..] {
            out.insert((a.min(b), a.max(b)));
        }
    }
    out
}

fn all_ones(m: &[Vec<i64>], pairs: &BTreeSet<(usize, usize)>) -> bool {
    pairs.iter().all(|&(a, b)| m[a - 1][b - 1] == 1)
}

/// Linking pairs of `A^{(q)}_{i,j}`.
///
/// Literal: `iζ^{q+s}` with `jζ^s`. Corrected: `iζ^{s-q}` with `jζ^s`, which
/// is what the braid words produce; the two agree when `r <= 2`.
pub fn a_linking_pairs(
    i: usize,
    j: usize,
    q: usize,
    p: &MonomialParams,
    reading: Reading,
) -> BTreeSet<(usize, usize)> {
    let r = p.r;
    (1..=r)
        .map(|s| {
            let e = match reading {
                Reading::Literal => (q + s - 1) % r + 1,
                Reading::Corrected => (s + r * q - q - 1) % r + 1,
            };
            let si = p.strand(i, e);
            let sj = p.strand(j, s);
            (si.min(sj), si.max(sj))
        })
        .collect()
}

/// Linking pairs of `Z_j`.
///
/// Literal: all pairs within the orbit of point `j`. Corrected: the origin
/// strand is twisted along with that orbit.
pub fn z_linking_pairs(j: usize, p: &MonomialParams, reading: Reading) -> BTreeSet<(usize, usize)> {
    let mut v = match reading {
        Reading::Literal => vec![],
        Reading::Corrected => vec![1],
    };
    v.extend(p.orbit(j));
    pairs_within(&v)
}

/// Purity, linking patterns and homological independence of the free
/// factor generators `Z_n`, `A^{(q)}_{i,n}`.
pub fn verify_generators_free_factor(p: &MonomialParams, reading: Reading) -> Report {
    let mut rep = Report::new();
    let n = p.n;
    let tag = format!("r={} n={}", p.r, n);
    let mut gens: Vec<(String, BraidWord, BTreeSet<(usize, usize)>)> = Vec::new();
    match z(n, p) {
        Ok(w) => gens.push((format!("Z[{n}]"), w, z_linking_pairs(n, p, reading))),
        Err(e) => rep.push("free-factor", tag.clone(), false, e.to_string()),
    }
    for i in 1..n {
        for qq in 1..=p.r {
            match a(i, n, qq, p) {
                Ok(w) => gens.push((format!("A[{i},{n};{qq}]"), w, a_linking_pairs(i, n, qq, p, reading))),
                Err(e) => rep.push("free-factor", tag.clone(), false, e.to_string()),
            }
        }
    }
    let mut vectors: Vec<Vec<BigInt>> = Vec::new();
    for (name, w, want) in &gens {
        let perm = permutation(w);
        let pure = perm.is_identity();
        rep.push(
            "free-factor purity",
            format!("{tag} {name}"),
            pure,
            if pure { String::new() } else { perm.to_string() },
        );
        match linking_numbers(w) {
            Ok(m) => {
                let got = pattern_of(&m);
                let ok = &got == want && all_ones(&m, want);
                let detail = if ok { String::new() } else { format!("pairs {got:?}, expected {want:?}") };
                rep.push("free-factor linking", format!("{tag} {name}"), ok, detail);
                let s = p.strands();
                let mut v = Vec::with_capacity(s * (s - 1) / 2);
                for x in 0..s {
                    for y in (x + 1)..s {
                        v.push(BigInt::from(m[x][y]));
                    }
                }
                vectors.push(v);
            }
            Err(e) => rep.push("free-factor linking", format!("{tag} {name}"), false, e.to_string()),
        }
    }
    let want = p.r * (n - 1) + 1;
    let rank = crate::linalg::rank_bigint(&vectors);
    rep.push(
        "free-factor independence",
        tag,
        rank == want && vectors.len() == want,
        format!("rank {rank} of {} vectors, expected {want}", vectors.len()),
    );
    rep
}
