//! Free Lie algebras over the integers in the Lyndon basis, holonomy Lie
//! algebras of arrangements, and their graded ranks.
//!
//! Lyndon words use the generator order `x_1 < x_2 < ⋯` and are bracketed by
//! the standard factorization `w = uv`, `v` the longest proper Lyndon suffix.
//! In the free associative algebra `P_w` is `w` plus lexicographically larger
//! words, so a Lie polynomial is rewritten in the basis by repeatedly peeling
//! off its smallest word.
//!
//! For `L/I` with `I` generated by degree-2 relations `R`, the graded pieces
//! of the ideal are `I_2 = span R` and `I_{k+1} = [L_1, I_k]`. One inclusion is
//! clear. For the other, `L_j` is spanned by left-normed brackets of
//! generators, and `[[a, b], r] = [a, [b, r]] - [b, [a, r]]` moves any
//! `[L_j, I_k]` into `[L_1, [L_{j-1}, I_k]]`, so induction on `j` finishes it.

use std::cmp::Reverse;
use std::collections::{BTreeMap, BinaryHeap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::arrangements::{FlatC2, Hyperplane, Presentation};
use crate::linalg::{rank_bigint, smith_invariants};
use crate::report::Report;
use crate::sweep::Exec;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LieError {
    #[error("degree {0} exceeds the basis maximum {1}")]
    Degree(usize, usize),
    #[error("need at least one generator and degree at least one")]
    Empty,
    #[error("mismatched generators: {0}")]
    Generators(String),
    #[error("unknown label {0}")]
    Label(String),
    #[error("{0}")]
    TooLarge(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("relation is not homogeneous of degree 2")]
    NotQuadratic,
}

fn mobius(mut n: u64) -> i64 {
    let mut out = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            out = -out;
        }
        p += 1;
    }
    if n > 1 {
        out = -out;
    }
    out
}

/// Rank of the degree-`k` part of the free Lie algebra on `d` generators,
/// `(1/k) Σ_{m | k} μ(m) d^{k/m}`.
pub fn witt_rank(d: u64, k: u64) -> u128 {
    if k == 0 {
        return 0;
    }
    let mut sum = BigInt::zero();
    for m in (1..=k).filter(|m| k.is_multiple_of(*m)) {
        sum += BigInt::from(mobius(m)) * BigInt::from(d).pow((k / m) as u32);
    }
    (sum / BigInt::from(k)).to_u128().expect("Witt rank is nonnegative")
}

/// A homogeneous element: integer coefficients on the Lyndon basis of one
/// degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LieElement {
    pub degree: usize,
    pub coeffs: BTreeMap<usize, BigInt>,
}

impl LieElement {
    pub fn zero(degree: usize) -> LieElement {
        LieElement { degree, coeffs: BTreeMap::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add(&self, other: &LieElement) -> LieElement {
        assert_eq!(self.degree, other.degree, "adding elements of different degrees");
        let mut out = self.clone();
        for (k, v) in &other.coeffs {
            let e = out.coeffs.entry(*k).or_insert_with(BigInt::zero);
            *e += v;
            if e.is_zero() {
                out.coeffs.remove(k);
            }
        }
        out
    }

    pub fn scale(&self, c: &BigInt) -> LieElement {
        if c.is_zero() {
            return LieElement::zero(self.degree);
        }
        LieElement { degree: self.degree, coeffs: self.coeffs.iter().map(|(k, v)| (*k, v * c)).collect() }
    }
}

/// Lyndon words on `d` letters up to degree `max_degree`, with standard
/// bracketings and their expansions in the free associative algebra.
#[derive(Debug, Clone)]
pub struct LyndonBasis {
    d: usize,
    max_degree: usize,
    // per degree, indexed 1..=max_degree
    words: Vec<Vec<u64>>,
    index: Vec<HashMap<u64, usize>>,
    // (degree of left factor, left index, right index)
    split: Vec<Vec<(usize, usize, usize)>>,
    // sorted by word code
    expansion: Vec<Vec<Vec<(u64, i64)>>>,
}

impl LyndonBasis {
    pub fn new(d: usize, max_degree: usize) -> Result<LyndonBasis, LieError> {
        if d == 0 || max_degree == 0 {
            return Err(LieError::Empty);
        }
        if d > 255 || (d as f64).powi(max_degree as i32) >= 1.8e19 {
            return Err(LieError::TooLarge(format!("{d} generators to degree {max_degree}")));
        }
        let mut b = LyndonBasis {
            d,
            max_degree,
            words: vec![vec![]; max_degree + 1],
            index: vec![HashMap::new(); max_degree + 1],
            split: vec![vec![]; max_degree + 1],
            expansion: vec![vec![]; max_degree + 1],
        };
        // Duval's generation in lexicographic order
        let mut w: Vec<usize> = vec![0];
        loop {
            let k = w.len();
            let code = b.encode(&w);
            b.index[k].insert(code, b.words[k].len());
            b.words[k].push(code);
            let mut next: Vec<usize> = (0..max_degree).map(|i| w[i % k]).collect();
            while next.last() == Some(&(d - 1)) {
                next.pop();
            }
            match next.last_mut() {
                Some(x) => *x += 1,
                None => break,
            }
            w = next;
        }
        for k in 1..=max_degree {
            for idx in 0..b.words[k].len() {
                let letters = b.decode(b.words[k][idx], k);
                if k == 1 {
                    b.split[1].push((0, 0, 0));
                    b.expansion[1].push(vec![(letters[0] as u64, 1)]);
                    continue;
                }
                let cut = (1..k)
                    .find(|&c| b.index[k - c].contains_key(&b.encode(&letters[c..])))
                    .expect("a one-letter suffix is Lyndon");
                let (lu, ru) = (b.encode(&letters[..cut]), b.encode(&letters[cut..]));
                let (li, ri) = (b.index[cut][&lu], b.index[k - cut][&ru]);
                b.split[k].push((cut, li, ri));
                let exp = b.commutator(&b.expansion[cut][li], cut, &b.expansion[k - cut][ri], k - cut);
                b.expansion[k].push(exp);
            }
        }
        Ok(b)
    }

    fn encode(&self, letters: &[usize]) -> u64 {
        letters.iter().fold(0u64, |acc, &l| acc * self.d as u64 + l as u64)
    }

    fn decode(&self, mut code: u64, k: usize) -> Vec<usize> {
        let mut out = vec![0; k];
        for slot in out.iter_mut().rev() {
            *slot = (code % self.d as u64) as usize;
            code /= self.d as u64;
        }
        out
    }

    // ab - ba for associative polynomials of degrees p and q
    fn commutator(&self, a: &[(u64, i64)], p: usize, b: &[(u64, i64)], q: usize) -> Vec<(u64, i64)> {
        let (sp, sq) = ((self.d as u64).pow(p as u32), (self.d as u64).pow(q as u32));
        let mut acc: BTreeMap<u64, i64> = BTreeMap::new();
        for &(wa, ca) in a {
            for &(wb, cb) in b {
                *acc.entry(wa * sq + wb).or_default() += ca * cb;
                *acc.entry(wb * sp + wa).or_default() -= ca * cb;
            }
        }
        acc.into_iter().filter(|(_, c)| *c != 0).collect()
    }

    // Lyndon coordinates of a Lie polynomial of degree k
    fn to_lyndon(&self, k: usize, mut poly: BTreeMap<u64, i64>) -> Vec<(usize, i64)> {
        let mut out = Vec::new();
        while let Some((&w, &c)) = poly.iter().next() {
            let idx = *self.index[k].get(&w).expect("smallest word of a Lie polynomial is Lyndon");
            out.push((idx, c));
            for &(u, cu) in &self.expansion[k][idx] {
                let e = poly.entry(u).or_default();
                *e -= c * cu;
                if *e == 0 {
                    poly.remove(&u);
                }
            }
        }
        out.sort_unstable();
        out
    }

    pub fn generators(&self) -> usize {
        self.d
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    /// Number of Lyndon words of degree `k`.
    pub fn count(&self, k: usize) -> usize {
        self.words.get(k).map_or(0, Vec::len)
    }

    /// Letters (0-based) of the `idx`-th Lyndon word of degree `k`.
    pub fn word(&self, k: usize, idx: usize) -> Vec<usize> {
        self.decode(self.words[k][idx], k)
    }

    /// Standard bracketing, e.g. `[x1,[x1,x2]]`.
    pub fn bracketing(&self, k: usize, idx: usize) -> String {
        if k == 1 {
            return format!("x{}", self.word(1, idx)[0] + 1);
        }
        let (cut, li, ri) = self.split[k][idx];
        format!("[{},{}]", self.bracketing(cut, li), self.bracketing(k - cut, ri))
    }

    /// `x_i`, 0-based.
    pub fn generator(&self, i: usize) -> LieElement {
        assert!(i < self.d, "generator {i} out of range");
        LieElement { degree: 1, coeffs: BTreeMap::from([(i, BigInt::one())]) }
    }

    fn expand(&self, a: &LieElement) -> Vec<(u64, BigInt)> {
        let mut acc: BTreeMap<u64, BigInt> = BTreeMap::new();
        for (idx, c) in &a.coeffs {
            for &(w, cw) in &self.expansion[a.degree][*idx] {
                *acc.entry(w).or_insert_with(BigInt::zero) += c * cw;
            }
        }
        acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
    }

    pub fn bracket(&self, a: &LieElement, b: &LieElement) -> Result<LieElement, LieError> {
        let k = a.degree + b.degree;
        if k > self.max_degree {
            return Err(LieError::Degree(k, self.max_degree));
        }
        let (ea, eb) = (self.expand(a), self.expand(b));
        let (sa, sb) = ((self.d as u64).pow(a.degree as u32), (self.d as u64).pow(b.degree as u32));
        let mut poly: BTreeMap<u64, BigInt> = BTreeMap::new();
        for (wa, ca) in &ea {
            for (wb, cb) in &eb {
                *poly.entry(wa * sb + wb).or_insert_with(BigInt::zero) += ca * cb;
                *poly.entry(wb * sa + wa).or_insert_with(BigInt::zero) -= ca * cb;
            }
        }
        poly.retain(|_, c| !c.is_zero());
        let mut out = LieElement::zero(k);
        while let Some((&w, c)) = poly.iter().next() {
            let c = c.clone();
            let idx = *self.index[k].get(&w).expect("smallest word of a Lie polynomial is Lyndon");
            for &(u, cu) in &self.expansion[k][idx] {
                let e = poly.entry(u).or_insert_with(BigInt::zero);
                *e -= &c * cu;
                if e.is_zero() {
                    poly.remove(&u);
                }
            }
            out.coeffs.insert(idx, c);
        }
        Ok(out)
    }

    // [x_i, P_w] in Lyndon coordinates
    fn left_bracket(&self, i: usize, k: usize, idx: usize) -> Vec<(usize, i64)> {
        let letters = self.word(k, idx);
        if i < letters[0] {
            let mut w = vec![i];
            w.extend(letters);
            return vec![(self.index[k + 1][&self.encode(&w)], 1)];
        }
        let poly: BTreeMap<u64, i64> =
            self.commutator(&[(i as u64, 1)], 1, &self.expansion[k][idx], k).into_iter().collect();
        self.to_lyndon(k + 1, poly)
    }
}

/// Generators with labels and degree-2 relations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HolonomyPresentation {
    pub labels: Vec<String>,
    pub relations: Vec<LieElement>,
}

impl HolonomyPresentation {
    pub fn generators(&self) -> usize {
        self.labels.len()
    }

    fn degree2_rows(&self) -> Vec<Vec<BigInt>> {
        let d = self.generators();
        let width = d * d.saturating_sub(1) / 2;
        self.relations
            .iter()
            .map(|r| {
                let mut row = vec![BigInt::zero(); width];
                for (k, v) in &r.coeffs {
                    row[*k] = v.clone();
                }
                row
            })
            .collect()
    }

    /// The same presentation with generators listed in the order `labels`.
    pub fn relabel(&self, labels: &[String]) -> Result<HolonomyPresentation, LieError> {
        let d = self.generators();
        let mut sorted_new = labels.to_vec();
        let mut sorted_old = self.labels.clone();
        sorted_new.sort();
        sorted_old.sort();
        if sorted_new != sorted_old {
            return Err(LieError::Generators("label sets differ".into()));
        }
        let to_new: Vec<usize> =
            self.labels.iter().map(|l| labels.iter().position(|m| m == l).expect("same label set")).collect();
        let basis = degree2_basis(d)?;
        let relations = self
            .relations
            .iter()
            .map(|r| {
                let mut out = LieElement::zero(2);
                for (k, c) in &r.coeffs {
                    let w = basis.word(2, *k);
                    let g = |x: usize| basis.generator(to_new[x]);
                    out = out.add(&basis.bracket(&g(w[0]), &g(w[1]))?.scale(c));
                }
                Ok(out)
            })
            .collect::<Result<_, LieError>>()?;
        Ok(HolonomyPresentation { labels: labels.to_vec(), relations })
    }

    /// Same generators and the same degree-2 span of relations.
    pub fn same_span(&self, other: &HolonomyPresentation) -> bool {
        if self.labels != other.labels {
            return false;
        }
        let (a, b) = (self.degree2_rows(), other.degree2_rows());
        let ra = rank_bigint(&a);
        let both: Vec<_> = a.into_iter().chain(b.iter().cloned()).collect();
        ra == rank_bigint(&b) && ra == rank_bigint(&both)
    }

    /// Invariant factors above 1 of the degree-2 quotient `L_2 / span R`;
    /// empty when it is torsion free.
    pub fn degree2_torsion(&self) -> Vec<i128> {
        let rows: Vec<Vec<i64>> = self
            .degree2_rows()
            .iter()
            .map(|r| r.iter().map(|x| x.to_i64().expect("small relation coefficient")).collect())
            .collect();
        smith_invariants(&rows).into_iter().filter(|&x| x.abs() > 1).collect()
    }
}

fn degree2_basis(d: usize) -> Result<LyndonBasis, LieError> {
    LyndonBasis::new(d.max(1), 2)
}

// [Σ_{a ∈ sum} x_a, x_y]
fn sum_bracket(basis: &LyndonBasis, sum: &[usize], y: usize) -> Result<LieElement, LieError> {
    let mut s = LieElement::zero(1);
    for &a in sum {
        s = s.add(&basis.generator(a));
    }
    basis.bracket(&s, &basis.generator(y))
}

/// Holonomy relations `[x_{q_1} + ⋯ + x_{q_m}, x_{q_k}] = 0` of flats given
/// as index lists into `labels`.
pub fn holonomy_from_index_flats(
    labels: Vec<String>,
    flats: &[Vec<usize>],
) -> Result<HolonomyPresentation, LieError> {
    let basis = degree2_basis(labels.len())?;
    let mut relations = Vec::new();
    for f in flats {
        if let Some(&bad) = f.iter().find(|&&q| q >= labels.len()) {
            return Err(LieError::Generators(format!("flat member {bad} with {} generators", labels.len())));
        }
        for &q in f {
            relations.push(sum_bracket(&basis, f, q)?);
        }
    }
    Ok(HolonomyPresentation { labels, relations })
}

/// Holonomy relations of monomial-type flats, generators in the order of
/// `hyperplanes`.
pub fn holonomy_relations_from_flats(
    flats: &[FlatC2],
    hyperplanes: &[Hyperplane],
) -> Result<HolonomyPresentation, LieError> {
    let pos: HashMap<Hyperplane, usize> = hyperplanes.iter().enumerate().map(|(i, h)| (*h, i)).collect();
    let idx = flats
        .iter()
        .map(|f| {
            f.hyperplanes()
                .iter()
                .map(|h| pos.get(h).copied().ok_or_else(|| LieError::Label(h.label())))
                .collect()
        })
        .collect::<Result<Vec<Vec<usize>>, _>>()?;
    holonomy_from_index_flats(hyperplanes.iter().map(|h| h.label()).collect(), &idx)
}

/// Holonomy presentation of the monomial arrangement from its flats.
pub fn monomial_holonomy(r: usize, n: usize) -> Result<HolonomyPresentation, LieError> {
    let flats = crate::arrangements::monomial_flats(r, n).map_err(|e| LieError::Generators(e.to_string()))?;
    holonomy_relations_from_flats(&flats, &crate::arrangements::monomial_hyperplanes(r, n))
}

/// Holonomy presentation of the type B arrangement from its flats.
pub fn typeb_holonomy(n: usize) -> Result<HolonomyPresentation, LieError> {
    use crate::arrangements::TypeBGen;
    let gens = TypeBGen::all(n);
    let pos: HashMap<TypeBGen, usize> = gens.iter().enumerate().map(|(i, g)| (*g, i)).collect();
    let flats: Vec<Vec<usize>> =
        crate::arrangements::typeb_flats(n).iter().map(|f| f.iter().map(|g| pos[g]).collect()).collect();
    holonomy_from_index_flats(gens.iter().map(ToString::to_string).collect(), &flats)
}

/// Fiber-type tower with trivial monodromy: `d_j` generators `x[q,j]` per
/// level, commuting across levels and free within one.
pub fn product_holonomy(exponents: &[usize]) -> Result<HolonomyPresentation, LieError> {
    let mut labels = Vec::new();
    let mut level = Vec::new();
    for (j, &d) in exponents.iter().enumerate() {
        for q in 1..=d {
            labels.push(format!("x[{q},{}]", j + 1));
            level.push(j);
        }
    }
    let mut flats = Vec::new();
    for a in 0..labels.len() {
        for b in (a + 1)..labels.len() {
            if level[a] != level[b] {
                flats.push(vec![a, b]);
            }
        }
    }
    holonomy_from_index_flats(labels, &flats)
}

/// The explicit bracket relations for the pure monomial braid group:
/// `[Z_j + Z_l + Σ_p A^{(p)}_{j,l}, Y]` for `Y = Z_l, A^{(p)}_{j,l}`;
/// `[A^{(p)}_{i,j} + A^{(q)}_{i,k} + A^{(m)}_{j,k}, Y]` for
/// `Y = A^{(q)}_{i,k}, A^{(m)}_{j,k}`, `q ≡ p + m`;
/// `[A^{(p)}_{i,j}, A^{(q)}_{k,l}]` for disjoint pairs; `[Z_k, A^{(p)}_{i,j}]`
/// for `k ∉ {i, j}`.
pub fn monomial_bracket_relations(r: usize, n: usize) -> Result<HolonomyPresentation, LieError> {
    let hs = crate::arrangements::monomial_hyperplanes(r, n);
    let pos: HashMap<Hyperplane, usize> = hs.iter().enumerate().map(|(i, h)| (*h, i)).collect();
    let z = |j| pos[&Hyperplane::Coord(j)];
    let a = |i, j, p| pos[&Hyperplane::Diag { i, j, p }];
    let basis = degree2_basis(hs.len())?;
    let mut rel = Vec::new();
    for j in 1..=n {
        for l in (j + 1)..=n {
            let mut sum = vec![z(j), z(l)];
            sum.extend((1..=r).map(|p| a(j, l, p)));
            for y in std::iter::once(z(l)).chain((1..=r).map(|p| a(j, l, p))) {
                rel.push(sum_bracket(&basis, &sum, y)?);
            }
        }
    }
    for i in 1..=n {
        for j in (i + 1)..=n {
            for k in (j + 1)..=n {
                for p in 1..=r {
                    for m in 1..=r {
                        let q = (p + m - 1) % r + 1;
                        let sum = [a(i, j, p), a(i, k, q), a(j, k, m)];
                        for y in [a(i, k, q), a(j, k, m)] {
                            rel.push(sum_bracket(&basis, &sum, y)?);
                        }
                    }
                }
            }
        }
    }
    for i in 1..=n {
        for j in (i + 1)..=n {
            for k in 1..=n {
                for l in (k + 1)..=n {
                    if (i, j) < (k, l) && i != k && i != l && j != k && j != l {
                        for p in 1..=r {
                            for q in 1..=r {
                                rel.push(
                                    basis.bracket(
                                        &basis.generator(a(i, j, p)),
                                        &basis.generator(a(k, l, q)),
                                    )?,
                                );
                            }
                        }
                    }
                }
            }
            for k in (1..=n).filter(|&k| k != i && k != j) {
                for p in 1..=r {
                    rel.push(basis.bracket(&basis.generator(z(k)), &basis.generator(a(i, j, p)))?);
                }
            }
        }
    }
    Ok(HolonomyPresentation { labels: hs.iter().map(|h| h.label()).collect(), relations: rel })
}

/// Bracket relations of a fiber-type arrangement from its flats:
/// `[x_{p,i} + x_{q_1,j} + ⋯ + x_{q_m,j}, x_{q_k,j}]` for each flat, where
/// `x_{q,j}` are the members of the top level `j` of the flat and `x_{p,i}`
/// runs over the lower members.
pub fn ft_bracket_relations(
    labels: Vec<String>,
    levels: &[usize],
    flats: &[Vec<usize>],
) -> Result<HolonomyPresentation, LieError> {
    if levels.len() != labels.len() {
        return Err(LieError::Generators(format!("{} levels for {} labels", levels.len(), labels.len())));
    }
    let basis = degree2_basis(labels.len())?;
    let mut relations = Vec::new();
    for f in flats {
        if let Some(&bad) = f.iter().find(|&&q| q >= labels.len()) {
            return Err(LieError::Generators(format!("flat member {bad} with {} generators", labels.len())));
        }
        let top = f.iter().map(|&q| levels[q]).max().unwrap_or(0);
        let (hi, lo): (Vec<usize>, Vec<usize>) = f.iter().partition(|&&q| levels[q] == top);
        for &x in &lo {
            let mut sum = vec![x];
            sum.extend(&hi);
            for &q in &hi {
                relations.push(sum_bracket(&basis, &sum, q)?);
            }
        }
        if lo.is_empty() {
            for &q in &hi {
                relations.push(sum_bracket(&basis, &hi, q)?);
            }
        }
    }
    Ok(HolonomyPresentation { labels, relations })
}

/// `[x̄ + w̄, ȳ] = 0` for a group relation `x^-1 y x = w y w^-1`, with `w̄` the
/// abelianization of `w`. Letter `q` of `w` is generator `offset + q - 1`.
pub fn lemma_brackets_transform(
    basis: &LyndonBasis,
    x: usize,
    y: usize,
    w: &crate::freegroup::Word,
    offset: usize,
) -> Result<LieElement, LieError> {
    let mut lhs = basis.generator(x);
    for (q, e) in w.abelianize().into_iter().enumerate() {
        if e != 0 {
            lhs = lhs.add(&basis.generator(offset + q).scale(&BigInt::from(e)));
        }
    }
    basis.bracket(&lhs, &basis.generator(y))
}

/// Apply [`lemma_brackets_transform`] to every relation of a presentation.
pub fn presentation_brackets(p: &Presentation) -> Result<HolonomyPresentation, LieError> {
    let basis = degree2_basis(p.generators.len())?;
    let mut first_of_level: BTreeMap<usize, usize> = BTreeMap::new();
    for (k, g) in p.generators.iter().enumerate() {
        first_of_level.entry(g.level).or_insert(k);
    }
    let mut relations = Vec::new();
    for rel in &p.relations {
        let y = &p.generators[rel.target];
        let (w, _) = rel
            .rhs
            .as_conjugate_of_letter()
            .ok_or_else(|| LieError::Generators(format!("relation for {} is not a conjugate", y.name)))?;
        relations.push(lemma_brackets_transform(
            &basis,
            rel.conjugator,
            rel.target,
            &w,
            first_of_level[&y.level],
        )?);
    }
    Ok(HolonomyPresentation { labels: p.generators.iter().map(|g| g.name.clone()).collect(), relations })
}

/// Largest `witt_rank(d, D)` that [`graded_ranks`] accepts.
pub const MAX_TOP_RANK: u128 = 400_000;

trait Scalar: Clone + PartialEq + fmt::Debug {
    fn s_zero() -> Self;
    fn s_is_zero(&self) -> bool;
    fn s_is_one(&self) -> bool;
    fn s_mul(&self, o: &Self) -> Option<Self>;
    fn s_sub(&self, o: &Self) -> Option<Self>;
    fn s_gcd(&self, o: &Self) -> Self;
    fn s_div(&self, o: &Self) -> Self;
    fn s_is_negative(&self) -> bool;
    fn s_neg(&self) -> Self;
}

impl Scalar for i128 {
    fn s_zero() -> Self {
        0
    }
    fn s_is_zero(&self) -> bool {
        *self == 0
    }
    fn s_is_one(&self) -> bool {
        *self == 1
    }
    fn s_mul(&self, o: &Self) -> Option<Self> {
        self.checked_mul(*o)
    }
    fn s_sub(&self, o: &Self) -> Option<Self> {
        self.checked_sub(*o)
    }
    fn s_gcd(&self, o: &Self) -> Self {
        Integer::gcd(self, o)
    }
    fn s_div(&self, o: &Self) -> Self {
        self / o
    }
    fn s_is_negative(&self) -> bool {
        *self < 0
    }
    fn s_neg(&self) -> Self {
        -self
    }
}

impl Scalar for BigInt {
    fn s_zero() -> Self {
        Zero::zero()
    }
    fn s_is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn s_is_one(&self) -> bool {
        One::is_one(self)
    }
    fn s_mul(&self, o: &Self) -> Option<Self> {
        Some(self * o)
    }
    fn s_sub(&self, o: &Self) -> Option<Self> {
        Some(self - o)
    }
    fn s_gcd(&self, o: &Self) -> Self {
        Integer::gcd(self, o)
    }
    fn s_div(&self, o: &Self) -> Self {
        self / o
    }
    fn s_is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
    fn s_neg(&self) -> Self {
        -self
    }
}

type Sparse<T> = Vec<(usize, T)>;

/// Row echelon form over the integers, one primitive row per pivot column.
/// Candidates are reduced in a dense scratch vector, visiting nonzero
/// columns in increasing order.
struct Echelon<T> {
    rows: HashMap<usize, Sparse<T>>,
    dense: Vec<T>,
    queued: Vec<bool>,
    heap: BinaryHeap<Reverse<usize>>,
}

impl<T: Scalar> Echelon<T> {
    fn new(width: usize) -> Self {
        Echelon {
            rows: HashMap::new(),
            dense: vec![T::s_zero(); width],
            queued: vec![false; width],
            heap: BinaryHeap::new(),
        }
    }

    fn queue(&mut self, c: usize) {
        if !self.queued[c] {
            self.queued[c] = true;
            self.heap.push(Reverse(c));
        }
    }

    /// Store `v` if it is independent of the rows. `None` on overflow, after
    /// which the echelon is unusable.
    fn insert(&mut self, v: &Sparse<T>) -> Option<bool> {
        for (c, x) in v {
            self.dense[*c] = x.clone();
            self.queue(*c);
        }
        while let Some(Reverse(c)) = self.heap.pop() {
            self.queued[c] = false;
            if self.dense[c].s_is_zero() {
                continue;
            }
            let Some(row) = self.rows.get(&c) else {
                // everything left is at columns >= c
                let mut cols: Vec<usize> = std::iter::once(c).chain(self.heap.drain().map(|r| r.0)).collect();
                cols.sort_unstable();
                let mut out = Vec::with_capacity(cols.len());
                for col in cols {
                    self.queued[col] = false;
                    let x = std::mem::replace(&mut self.dense[col], T::s_zero());
                    if !x.s_is_zero() {
                        out.push((col, x));
                    }
                }
                primitive(&mut out);
                self.rows.insert(c, out);
                return Some(true);
            };
            let (a, b) = (self.dense[c].clone(), row[0].1.clone());
            let g = a.s_gcd(&b);
            let (fa, fb) = (a.s_div(&g), b.s_div(&g));
            if !fb.s_is_one() {
                // scale the live entries, all at columns > c
                for Reverse(col) in self.heap.iter() {
                    self.dense[*col] = self.dense[*col].s_mul(&fb)?;
                }
            }
            let row = self.rows[&c].clone();
            for (col, x) in &row {
                if *col == c {
                    self.dense[c] = T::s_zero();
                    continue;
                }
                self.dense[*col] = self.dense[*col].s_sub(&x.s_mul(&fa)?)?;
                self.queue(*col);
            }
        }
        Some(false)
    }
}

fn primitive<T: Scalar>(v: &mut Sparse<T>) {
    let Some(first) = v.first().map(|(_, x)| x.clone()) else { return };
    let mut g = first.clone();
    for (_, x) in v.iter() {
        g = g.s_gcd(x);
    }
    if first.s_is_negative() {
        g = g.s_neg();
    }
    for (_, x) in v.iter_mut() {
        *x = x.s_div(&g);
    }
}

// Indices of a maximal independent subset, taken greedily in order.
fn independent(cands: &[Sparse<i128>], width: usize) -> Vec<usize> {
    let mut e = Echelon::<i128>::new(width);
    let mut keep = Vec::new();
    for (k, v) in cands.iter().enumerate() {
        match e.insert(v) {
            Some(true) => keep.push(k),
            Some(false) => {}
            None => return independent_big(cands, width),
        }
    }
    keep
}

fn independent_big(cands: &[Sparse<i128>], width: usize) -> Vec<usize> {
    let mut e = Echelon::<BigInt>::new(width);
    let mut keep = Vec::new();
    for (k, v) in cands.iter().enumerate() {
        let big: Sparse<BigInt> = v.iter().map(|(c, x)| (*c, BigInt::from(*x))).collect();
        if e.insert(&big).expect("big integers do not overflow") {
            keep.push(k);
        }
    }
    keep
}

/// Ranks of `L/I` in degrees `1..=max_degree`.
pub fn graded_ranks(p: &HolonomyPresentation, max_degree: usize, exec: Exec) -> Result<Vec<usize>, LieError> {
    let d = p.generators();
    if d == 0 || max_degree == 0 {
        return Err(LieError::Empty);
    }
    let top = witt_rank(d as u64, max_degree as u64);
    if top > MAX_TOP_RANK {
        return Err(LieError::TooLarge(format!(
            "degree {max_degree} on {d} generators has free rank {top}; elimination is capped at \
             {MAX_TOP_RANK} columns"
        )));
    }
    let basis = LyndonBasis::new(d, max_degree)?;
    let mut ranks = vec![d];
    if max_degree == 1 {
        return Ok(ranks);
    }
    let mut span: Vec<Sparse<i128>> = Vec::new();
    for r in &p.relations {
        if r.degree != 2 {
            return Err(LieError::NotQuadratic);
        }
        let v: Sparse<i128> = r
            .coeffs
            .iter()
            .map(|(k, x)| {
                x.to_i128().map(|x| (*k, x)).ok_or(LieError::TooLarge("relation coefficient".into()))
            })
            .collect::<Result<_, _>>()?;
        span.push(v);
    }
    let keep = independent(&span, basis.count(2));
    span = keep.into_iter().map(|k| span[k].clone()).collect();
    ranks.push(basis.count(2) - span.len());
    for k in 2..max_degree {
        // [x_i, P_w] for every Lyndon w of degree k
        let ws: Vec<usize> = (0..basis.count(k)).collect();
        let table: Vec<Vec<Sparse<i64>>> =
            exec.map(&ws, |&w| (0..d).map(|i| basis.left_bracket(i, k, w)).collect());
        let gens: Vec<(usize, usize)> = (0..span.len()).flat_map(|s| (0..d).map(move |i| (s, i))).collect();
        let cands: Vec<Sparse<i128>> = exec.map(&gens, |&(s, i)| {
            let mut acc: BTreeMap<usize, i128> = BTreeMap::new();
            for (w, c) in &span[s] {
                for (u, cu) in &table[*w][i] {
                    *acc.entry(*u).or_default() += c * *cu as i128;
                }
            }
            acc.into_iter().filter(|(_, c)| *c != 0).collect()
        });
        let keep = independent(&cands, basis.count(k + 1));
        span = keep.into_iter().map(|k| cands[k].clone()).collect();
        ranks.push(basis.count(k + 1) - span.len());
    }
    Ok(ranks)
}

/// Compare ranks with `Σ_j witt_rank(d_j, k)`.
pub fn check_lcs_additive(exponents: &[usize], ranks: &[usize]) -> Report {
    let mut rep = Report::new();
    for (k, &got) in ranks.iter().enumerate() {
        let k = k + 1;
        let want: u128 = exponents.iter().map(|&e| witt_rank(e as u64, k as u64)).sum();
        rep.push(
            "lcs rank",
            format!("degree {k}"),
            got as u128 == want,
            format!("rank {got}, expected {want}"),
        );
    }
    rep
}

/// Parse a flats file: an optional `generators L1 L2 …` line, then one flat
/// per line as whitespace-separated labels. `#` starts a comment. Without a
/// `generators` line, labels are numbered by first appearance.
pub fn parse_flats(text: &str) -> Result<HolonomyPresentation, LieError> {
    let mut labels: Vec<String> = Vec::new();
    let mut declared = false;
    let mut flats = Vec::new();
    for (ln, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        if toks[0] == "generators" {
            if declared || !flats.is_empty() {
                return Err(LieError::Parse { line: ln + 1, msg: "generators must come first, once".into() });
            }
            labels = toks[1..].iter().map(|s| s.to_string()).collect();
            declared = true;
            continue;
        }
        let mut f = Vec::new();
        for t in toks {
            let idx = match labels.iter().position(|l| l == t) {
                Some(i) => i,
                None if !declared => {
                    labels.push(t.to_string());
                    labels.len() - 1
                }
                None => return Err(LieError::Label(t.to_string())),
            };
            if f.contains(&idx) {
                return Err(LieError::Parse { line: ln + 1, msg: format!("{t} repeated") });
            }
            f.push(idx);
        }
        if f.len() < 2 {
            return Err(LieError::Parse { line: ln + 1, msg: "a flat needs two hyperplanes".into() });
        }
        flats.push(f);
    }
    if labels.is_empty() {
        return Err(LieError::Parse { line: 0, msg: "no generators".into() });
    }
    holonomy_from_index_flats(labels, &flats)
}
