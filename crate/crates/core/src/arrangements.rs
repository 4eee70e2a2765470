//! Type B Coxeter arrangements, monomial arrangement flats, and presentations
//! of iterated semidirect products of free groups.
//!
//! The type B tower `PB_n = F_{2n-1} ⋊ ⋯ ⋊ F_3 ⋊ F_1` has level `l`
//! generators `c_l, a_{k,l}, b_{k,l}` (meridians of `x_l = 0`,
//! `x_l = x_k`, `x_l = -x_k`). Inside a level they are numbered like the
//! free generators `t_1, …, t_{2l-1}` of the fiber:
//! `t_i = b_{l-i,l}` for `i < l`, `t_l = c_l`, `t_{l+k} = a_{k,l}`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::braid::{artin, decide_equal, full_twist, is_pure, pure_gen, u_chain, BraidError, BraidWord};
use crate::freegroup::{Endomorphism, FreeGroupError, Word};
use crate::linalg::rank_bigint;
use crate::monomial::{self, MonomialError, MonomialParams};
use crate::report::Report;
use crate::sweep::Exec;
use crate::wiring::{braid_monodromy, real_wiring, RealLine, WiringError};

#[derive(Debug, Error)]
pub enum ArrangementError {
    #[error("parameters out of range: {0}")]
    Params(String),
    #[error("index out of range: {0}")]
    Index(String),
    #[error("tower level {level}: {msg}")]
    Tower { level: usize, msg: String },
    #[error("meridian identification failed: {0}")]
    Meridian(String),
    #[error(transparent)]
    Wiring(#[from] WiringError),
    #[error(transparent)]
    Braid(#[from] BraidError),
    #[error(transparent)]
    FreeGroup(#[from] FreeGroupError),
    #[error(transparent)]
    Monomial(#[from] MonomialError),
}

/// A generator of the type B pure braid group.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TypeBGen {
    /// `c_j`
    C(usize),
    /// `a_{i,j}`, meridian of `x_j = x_i`
    A(usize, usize),
    /// `b_{i,j}`, meridian of `x_j = -x_i`
    B(usize, usize),
}

impl TypeBGen {
    pub fn level(self) -> usize {
        match self {
            TypeBGen::C(j) | TypeBGen::A(_, j) | TypeBGen::B(_, j) => j,
        }
    }

    /// Index `q` with this generator playing the role of `t_q` in its level.
    pub fn position(self) -> usize {
        match self {
            TypeBGen::B(k, l) => l - k,
            TypeBGen::C(l) => l,
            TypeBGen::A(k, l) => l + k,
        }
    }

    pub fn at(level: usize, position: usize) -> Option<TypeBGen> {
        let l = level;
        match position {
            q if q >= 1 && q < l => Some(TypeBGen::B(l - q, l)),
            q if q == l && l >= 1 => Some(TypeBGen::C(l)),
            q if q > l && q < 2 * l => Some(TypeBGen::A(q - l, l)),
            _ => None,
        }
    }

    /// The `2l - 1` generators of level `l`, by position.
    pub fn level_gens(l: usize) -> Vec<TypeBGen> {
        (1..2 * l).filter_map(|q| TypeBGen::at(l, q)).collect()
    }

    /// All generators of `PB_n`, level by level.
    pub fn all(n: usize) -> Vec<TypeBGen> {
        (1..=n).flat_map(TypeBGen::level_gens).collect()
    }

    fn valid(self) -> bool {
        match self {
            TypeBGen::C(j) => j >= 1,
            TypeBGen::A(i, j) | TypeBGen::B(i, j) => 1 <= i && i < j,
        }
    }
}

impl Ord for TypeBGen {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.level(), self.position()).cmp(&(other.level(), other.position()))
    }
}

impl PartialOrd for TypeBGen {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for TypeBGen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TypeBGen::C(j) => write!(f, "c_{j}"),
            TypeBGen::A(i, j) => write!(f, "a_{{{i},{j}}}"),
            TypeBGen::B(i, j) => write!(f, "b_{{{i},{j}}}"),
        }
    }
}

fn factorial(k: usize) -> BigInt {
    (1..=k).fold(BigInt::one(), |acc, m| acc * m)
}

// b_1 = 0, b_k = (2k+1)!
fn typeb_offset(k: usize) -> BigInt {
    if k == 1 {
        BigInt::zero()
    } else {
        factorial(2 * k + 1)
    }
}

/// The `2n+1` lines `z = 0`, `z = ±(kx + b_k)`, ordered as they sit for
/// large `x`: `-x_n, …, -x_1, 0, x_1, …, x_n`.
pub fn typeb_lines(n: usize) -> Result<Vec<RealLine>, ArrangementError> {
    if n == 0 {
        return Err(ArrangementError::Params("type B needs n >= 1".into()));
    }
    let line = |sign: i64, k: usize| {
        let slope = BigInt::from(sign * k as i64);
        RealLine::new(BigRational::from_integer(slope), BigRational::from_integer(typeb_offset(k) * sign))
    };
    let mut out: Vec<RealLine> = (1..=n).rev().map(|k| line(-1, k)).collect();
    out.push(RealLine::from_ints(0, 0));
    out.extend((1..=n).map(|k| line(1, k)));
    Ok(out)
}

/// Parameter `x` on the transverse line where it meets the hyperplane of `g`.
fn typeb_point(g: TypeBGen) -> BigRational {
    let b = |k| BigRational::from_integer(typeb_offset(k));
    let int = |k: usize| BigRational::from_integer(BigInt::from(k));
    match g {
        TypeBGen::C(j) => -b(j) / int(j),
        TypeBGen::A(i, j) => (b(i) - b(j)) / int(j - i),
        TypeBGen::B(i, j) => -(b(i) + b(j)) / int(i + j),
    }
}

/// Generators of `PB_n` in the order their hyperplanes are met by the
/// wiring sweep, i.e. the meridian `u_k` of the `k`-th event is the `k`-th
/// entry. At `n = 2` this is `c_1, b_{1,2}, c_2, a_{1,2}`.
pub fn meridian_order(n: usize) -> Result<Vec<TypeBGen>, ArrangementError> {
    let rw = real_wiring(&typeb_lines(n)?)?;
    let mut by_point: BTreeMap<BigRational, TypeBGen> = BTreeMap::new();
    for g in TypeBGen::all(n) {
        if let Some(prev) = by_point.insert(typeb_point(g), g) {
            return Err(ArrangementError::Meridian(format!(
                "{prev} and {g} meet the line at the same point"
            )));
        }
    }
    rw.event_x
        .iter()
        .map(|x| {
            by_point
                .get(x)
                .copied()
                .ok_or_else(|| ArrangementError::Meridian(format!("no hyperplane at x = {x}")))
        })
        .collect()
}

/// Braid monodromy of the type B wiring diagram, keyed by meridian.
pub fn typeb_monodromy_computed(n: usize) -> Result<BTreeMap<TypeBGen, BraidWord>, ArrangementError> {
    let order = meridian_order(n)?;
    let w = real_wiring(&typeb_lines(n)?)?;
    let gens = braid_monodromy(&w.diagram)?;
    if gens.len() != order.len() {
        return Err(ArrangementError::Meridian(format!(
            "{} events for {} hyperplanes",
            gens.len(),
            order.len()
        )));
    }
    Ok(order.into_iter().zip(gens).map(|(g, m)| (g, m.braid)).collect())
}

/// Closed-form monodromy `PB_n → P_{2n+1}`:
/// `c_j ↦ U A_{n-j+1,n+1,n+j+1} U^-1` with `U = U_{n-j+1,n}`,
/// `a_{i,j} ↦ A_{n+i+1,n+j+1} · U_{n-j+1,n-i} A_{n-j+1,n-i+1} U_{n-j+1,n-i}^-1`,
/// `b_{i,j} ↦ A_{n-i+1,n+j+1} · U_{n-j+1,n+i} A_{n-j+1,n+i+1} U_{n-j+1,n+i}^-1`.
pub fn typeb_closed(g: TypeBGen, n: usize) -> Result<BraidWord, ArrangementError> {
    if !g.valid() || g.level() > n {
        return Err(ArrangementError::Index(format!("{g} with n={n}")));
    }
    let s = 2 * n + 1;
    let wrap = |u: BraidWord, x: BraidWord| x.conj(&u.inverse());
    let w = match g {
        TypeBGen::C(j) => wrap(u_chain(n - j + 1, n, s)?, full_twist(&[n - j + 1, n + 1, n + j + 1], s)?),
        TypeBGen::A(i, j) => {
            let tail = wrap(u_chain(n - j + 1, n - i, s)?, pure_gen(n - j + 1, n - i + 1, s)?);
            &pure_gen(n + i + 1, n + j + 1, s)? * &tail
        }
        TypeBGen::B(i, j) => {
            let tail = wrap(u_chain(n - j + 1, n + i, s)?, pure_gen(n - j + 1, n + i + 1, s)?);
            &pure_gen(n - i + 1, n + j + 1, s)? * &tail
        }
    };
    Ok(w.with_label(g.to_string()))
}

pub fn typeb_monodromy_closed(n: usize) -> Result<BTreeMap<TypeBGen, BraidWord>, ArrangementError> {
    TypeBGen::all(n).into_iter().map(|g| Ok((g, typeb_closed(g, n)?))).collect()
}

/// Compare every closed-form braid with the one computed from the wiring
/// diagram of [`typeb_lines`].
pub fn verify_typeb_monodromy(n: usize, exec: Exec) -> Report {
    let mut rep = Report::new();
    let computed = match typeb_monodromy_computed(n) {
        Ok(c) => c,
        Err(e) => {
            rep.push("typeb monodromy", format!("n={n}"), false, e.to_string());
            return rep;
        }
    };
    let items: Vec<(TypeBGen, BraidWord)> = computed.into_iter().collect();
    let parts = exec.map(&items, |(g, got)| {
        let mut rep = Report::new();
        let inst = format!("n={n} {g}");
        match typeb_closed(*g, n) {
            Ok(want) => crate::braid::record_equal(&mut rep, "typeb monodromy", inst, &want, got),
            Err(e) => rep.push("typeb monodromy", inst, false, e.to_string()),
        }
        rep
    });
    for p in parts {
        rep.extend(p);
    }
    rep
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArrangementKind {
    TypeB { n: usize },
    Monomial { r: usize, n: usize },
}

/// Ranks of the free groups in the fiber-type tower.
pub fn exponents(kind: ArrangementKind) -> Vec<usize> {
    match kind {
        ArrangementKind::TypeB { n } => (1..=n).map(|j| 2 * j - 1).collect(),
        ArrangementKind::Monomial { r, n } => (1..=n).map(|j| r * (j - 1) + 1).collect(),
    }
}

/// Hyperplane of the monomial arrangement: `x_j = 0` or `x_j = ζ^p x_i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Hyperplane {
    Coord(usize),
    Diag { i: usize, j: usize, p: usize },
}

impl Hyperplane {
    pub fn level(self) -> usize {
        match self {
            Hyperplane::Coord(j) | Hyperplane::Diag { j, .. } => j,
        }
    }

    /// `Z[j]` or `A[i,j;p]`.
    pub fn label(self) -> String {
        match self {
            Hyperplane::Coord(j) => format!("Z[{j}]"),
            Hyperplane::Diag { i, j, p } => format!("A[{i},{j};{p}]"),
        }
    }

    /// Type B name at `r = 2`: `Z ↔ c`, `A^{(2)} ↔ a`, `A^{(1)} ↔ b`.
    pub fn typeb(self) -> Option<TypeBGen> {
        match self {
            Hyperplane::Coord(j) => Some(TypeBGen::C(j)),
            Hyperplane::Diag { i, j, p: 2 } => Some(TypeBGen::A(i, j)),
            Hyperplane::Diag { i, j, p: 1 } => Some(TypeBGen::B(i, j)),
            _ => None,
        }
    }
}

/// Hyperplanes of the monomial arrangement, level by level: `H_j` then
/// `H^{(p)}_{i,j}` for `i < j`, `p = 1..r`.
pub fn monomial_hyperplanes(r: usize, n: usize) -> Vec<Hyperplane> {
    let mut out = Vec::new();
    for j in 1..=n {
        out.push(Hyperplane::Coord(j));
        for i in 1..j {
            for p in 1..=r {
                out.push(Hyperplane::Diag { i, j, p });
            }
        }
    }
    out
}

/// A codimension two flat, as the hyperplanes containing it.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FlatC2 {
    hyperplanes: Vec<Hyperplane>,
}

impl FlatC2 {
    pub fn new(hyperplanes: Vec<Hyperplane>) -> Result<FlatC2, ArrangementError> {
        let mut seen = hyperplanes.clone();
        seen.sort_unstable();
        seen.dedup();
        if hyperplanes.len() < 2 || seen.len() != hyperplanes.len() {
            return Err(ArrangementError::Index(format!(
                "flat needs two or more distinct hyperplanes: {hyperplanes:?}"
            )));
        }
        Ok(FlatC2 { hyperplanes })
    }

    pub fn hyperplanes(&self) -> &[Hyperplane] {
        &self.hyperplanes
    }

    pub fn len(&self) -> usize {
        self.hyperplanes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.hyperplanes.is_empty()
    }
}

/// Maximal codimension two flats of the monomial arrangement.
pub fn monomial_flats(r: usize, n: usize) -> Result<Vec<FlatC2>, ArrangementError> {
    use Hyperplane::*;
    if r == 0 || n == 0 {
        return Err(ArrangementError::Params(format!("monomial flats need r, n >= 1; got r={r}, n={n}")));
    }
    let mut out = Vec::new();
    let d = |i, j, p| Diag { i, j, p };
    for j in 1..=n {
        for l in (j + 1)..=n {
            let mut big = vec![Coord(j)];
            big.extend((1..r).map(|p| d(j, l, p)));
            big.push(Coord(l));
            big.push(d(j, l, r));
            out.push(FlatC2::new(big)?);
        }
    }
    for m in 1..=n {
        for k in 1..=n {
            for l in (k + 1)..=n {
                if m != k && m != l {
                    for q in 1..=r {
                        out.push(FlatC2::new(vec![Coord(m), d(k, l, q)])?);
                    }
                }
            }
        }
    }
    let pairs: Vec<(usize, usize)> = (1..=n).flat_map(|i| ((i + 1)..=n).map(move |j| (i, j))).collect();
    for (x, &(i, j)) in pairs.iter().enumerate() {
        for &(k, l) in &pairs[x + 1..] {
            if i != k && i != l && j != k && j != l {
                for p in 1..=r {
                    for q in 1..=r {
                        out.push(FlatC2::new(vec![d(i, j, p), d(k, l, q)])?);
                    }
                }
            }
        }
    }
    for i in 1..=n {
        for j in (i + 1)..=n {
            for l in (j + 1)..=n {
                for p in 1..=r {
                    for q in 1..=r {
                        let m = (p + q - 1) % r + 1;
                        out.push(FlatC2::new(vec![d(i, j, p), d(i, l, m), d(j, l, q)])?);
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Maximal codimension two flats of a central arrangement given by integer
/// normal vectors, found by brute force: each pair spans a flat, and a
/// hyperplane lies on it when adding its normal keeps the rank at two.
pub fn flats_from_normals(normals: &[Vec<BigInt>]) -> Vec<Vec<usize>> {
    let m = normals.len();
    let mut seen = vec![vec![false; m]; m];
    let mut out = Vec::new();
    for a in 0..m {
        for b in (a + 1)..m {
            if seen[a][b] {
                continue;
            }
            let base = [normals[a].clone(), normals[b].clone()];
            let flat: Vec<usize> = (0..m)
                .filter(|&c| {
                    c == a
                        || c == b
                        || rank_bigint(&[base[0].clone(), base[1].clone(), normals[c].clone()]) == 2
                })
                .collect();
            for &x in &flat {
                for &y in &flat {
                    seen[x][y] = true;
                }
            }
            out.push(flat);
        }
    }
    out
}

/// Normal vectors of the type B arrangement, in [`TypeBGen::all`] order.
pub fn typeb_normals(n: usize) -> Vec<(TypeBGen, Vec<BigInt>)> {
    TypeBGen::all(n)
        .into_iter()
        .map(|g| {
            let mut v = vec![BigInt::zero(); n];
            match g {
                TypeBGen::C(j) => v[j - 1] = BigInt::one(),
                TypeBGen::A(i, j) => {
                    v[j - 1] = BigInt::one();
                    v[i - 1] = -BigInt::one();
                }
                TypeBGen::B(i, j) => {
                    v[j - 1] = BigInt::one();
                    v[i - 1] = BigInt::one();
                }
            }
            (g, v)
        })
        .collect()
}

/// Maximal codimension two flats of the type B arrangement, each sorted.
pub fn typeb_flats(n: usize) -> Vec<Vec<TypeBGen>> {
    let normals = typeb_normals(n);
    let vs: Vec<Vec<BigInt>> = normals.iter().map(|(_, v)| v.clone()).collect();
    flats_from_normals(&vs)
        .into_iter()
        .map(|f| {
            let mut g: Vec<TypeBGen> = f.into_iter().map(|k| normals[k].0).collect();
            g.sort();
            g
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    pub level: usize,
    pub position: usize,
}

/// One level `F_{d_j}` of a fiber-type tower with the monodromy braids of
/// all lower-level generators.
#[derive(Debug, Clone)]
pub struct TowerLevel {
    pub level: usize,
    pub rank: usize,
    /// Names of `x[1,j], …, x[d_j,j]`.
    pub names: Vec<String>,
    /// `(lower generator name, braid in P_{d_j})`, lower levels in order.
    pub monodromy: Vec<(String, BraidWord)>,
}

/// `x^-1 y x = rhs`, with `rhs` a word in the generators of `y`'s level.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relation {
    pub conjugator: usize,
    pub target: usize,
    pub rhs: Word,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    pub generators: Vec<Generator>,
    pub relations: Vec<Relation>,
}

impl Presentation {
    fn symbol(g: &Generator) -> String {
        format!("x[{},{}]", g.position, g.level)
    }

    /// Legend lines `# x[q,j] = name`, then one relation per line.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for g in &self.generators {
            out.push_str(&format!("# {} = {}\n", Self::symbol(g), g.name));
        }
        for rel in &self.relations {
            let x = &self.generators[rel.conjugator];
            let y = &self.generators[rel.target];
            let word = rel.rhs.render_with(|q| format!("x[{q},{}]", y.level));
            out.push_str(&format!(
                "{}^-1 {} {} = {word}\n",
                Self::symbol(x),
                Self::symbol(y),
                Self::symbol(x)
            ));
        }
        out
    }
}

/// Relations `x^-1 t_q x = artin(β_x)(t_q)` for every lower generator `x`
/// and every generator `t_q` of each level.
pub fn assemble_presentation(tower: &[TowerLevel]) -> Result<Presentation, ArrangementError> {
    let mut generators = Vec::new();
    let mut relations = Vec::new();
    for (k, lvl) in tower.iter().enumerate() {
        let bad = |msg: String| ArrangementError::Tower { level: lvl.level, msg };
        if lvl.level != k + 1 {
            return Err(bad(format!("expected level {}", k + 1)));
        }
        if lvl.names.len() != lvl.rank {
            return Err(bad(format!("{} names for rank {}", lvl.names.len(), lvl.rank)));
        }
        if lvl.monodromy.len() != generators.len() {
            return Err(bad(format!(
                "{} braids for {} lower generators",
                lvl.monodromy.len(),
                generators.len()
            )));
        }
        let first = generators.len();
        for (x, (name, braid)) in lvl.monodromy.iter().enumerate() {
            let lower: &Generator = &generators[x];
            if &lower.name != name {
                return Err(bad(format!("braid for {name} where {} was expected", lower.name)));
            }
            if braid.strands() != lvl.rank {
                return Err(bad(format!("braid for {name} has {} strands", braid.strands())));
            }
            if !is_pure(braid) {
                return Err(bad(format!("braid for {name} is not pure")));
            }
            let act = artin(braid)?;
            for q in 1..=lvl.rank {
                let rhs = act.apply(&Word::generator(q, lvl.rank))?;
                relations.push(Relation { conjugator: x, target: first + q - 1, rhs });
            }
        }
        for (q, name) in lvl.names.iter().enumerate() {
            generators.push(Generator { name: name.clone(), level: lvl.level, position: q + 1 });
        }
    }
    Ok(Presentation { generators, relations })
}

/// Tower of `PB_n`; level `l` uses the closed-form monodromy of
/// `PB_{l-1} → P_{2l-1}`.
pub fn typeb_tower(n: usize) -> Result<Vec<TowerLevel>, ArrangementError> {
    if n == 0 {
        return Err(ArrangementError::Params("type B needs n >= 1".into()));
    }
    (1..=n)
        .map(|l| {
            let monodromy = TypeBGen::all(l - 1)
                .into_iter()
                .map(|g| Ok((g.to_string(), typeb_closed(g, l - 1)?)))
                .collect::<Result<Vec<_>, ArrangementError>>()?;
            let names = TypeBGen::level_gens(l).iter().map(ToString::to_string).collect();
            Ok(TowerLevel { level: l, rank: 2 * l - 1, names, monodromy })
        })
        .collect()
}

/// Fiber hyperplanes of level `l` in strand order: `Z_l` at strand 1 (the
/// origin), then `A^{(p)}_{i,l}` at the strand of `iζ^s` with `ζ^s = ζ^{-p}`,
/// since `x_i = ζ^p x_l` puts `x_l` at `ζ^{-p} x_i`.
fn fiber_hyperplanes(r: usize, l: usize) -> Vec<Hyperplane> {
    let mut out = vec![Hyperplane::Coord(l)];
    for i in 1..l {
        for s in 1..=r {
            out.push(Hyperplane::Diag { i, j: l, p: if s == r { r } else { r - s } });
        }
    }
    out
}

/// Tower of the pure monomial braid group. The root map sends a point of
/// `M(A_{r,l-1})` to the `r(l-1)+1` points `0, ζ^s x_i`, so the monodromy of a
/// lower generator is its own monomial braid with `n = l - 1`.
pub fn monomial_tower(r: usize, n: usize) -> Result<Vec<TowerLevel>, ArrangementError> {
    if r == 0 || n == 0 {
        return Err(ArrangementError::Params(format!("monomial tower needs r, n >= 1; got r={r}, n={n}")));
    }
    (1..=n)
        .map(|l| {
            let names = fiber_hyperplanes(r, l).iter().map(|h| h.label()).collect();
            let mut monodromy = Vec::new();
            if l > 1 {
                let mp = MonomialParams::new(r, l - 1)?;
                for h in (1..l).flat_map(|k| fiber_hyperplanes(r, k)) {
                    let w = match h {
                        Hyperplane::Coord(j) => monomial::z(j, &mp)?,
                        Hyperplane::Diag { i, j, p } => monomial::a(i, j, p, &mp)?,
                    };
                    monodromy.push((h.label(), w));
                }
            }
            Ok(TowerLevel { level: l, rank: r * (l - 1) + 1, names, monodromy })
        })
        .collect()
}

// Words over the type B generators, for the relation table.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
struct Sym(Vec<(TypeBGen, bool)>);

impl Sym {
    fn one() -> Sym {
        Sym(vec![])
    }

    fn g(g: TypeBGen) -> Sym {
        Sym(vec![(g, false)])
    }

    fn inv(&self) -> Sym {
        Sym(self.0.iter().rev().map(|&(g, i)| (g, !i)).collect())
    }

    fn mul(&self, o: &Sym) -> Sym {
        Sym(self.0.iter().chain(&o.0).copied().collect())
    }

    fn prod(parts: &[Sym]) -> Sym {
        parts.iter().fold(Sym::one(), |acc, p| acc.mul(p))
    }

    // [u, v] = u v u^-1 v^-1
    fn comm(u: &Sym, v: &Sym) -> Sym {
        Sym::prod(&[u.clone(), v.clone(), u.inv(), v.inv()])
    }

    // u^v = v^-1 u v
    fn pow_conj(u: &Sym, v: &Sym) -> Sym {
        Sym::prod(&[v.inv(), u.clone(), v.clone()])
    }

    fn render(&self) -> String {
        if self.0.is_empty() {
            return "1".into();
        }
        self.0
            .iter()
            .map(|(g, i)| if *i { format!("{g}^-1") } else { g.to_string() })
            .collect::<Vec<_>>()
            .join(" ")
    }

    fn from_level_word(w: &Word, l: usize) -> Sym {
        Sym(w
            .letters()
            .iter()
            .map(|&x| (TypeBGen::at(l, x.unsigned_abs() as usize).expect("letter within level"), x < 0))
            .collect())
    }
}

fn bar_a(i: usize, l: usize) -> Sym {
    Sym::prod(&(1..i).map(|m| Sym::g(TypeBGen::A(m, l))).collect::<Vec<_>>())
}

fn bar_b(i: usize, l: usize) -> Sym {
    Sym::prod(&(1..i).rev().map(|m| Sym::g(TypeBGen::B(m, l))).collect::<Vec<_>>())
}

fn hat_b(i: usize, l: usize) -> Sym {
    Sym::pow_conj(&Sym::g(TypeBGen::B(i, l)), &bar_b(i, l))
}

/// The entries of the table whose printed form cannot be evaluated as is.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PbnFlag {
    /// `c_j^-1 b_{k,l} c_s`: stray subscript, and `y_j` contains `c_j`.
    StraySubscript,
    /// `q_i` contains `\bar b_{r+1,j}` with `r` unbound.
    UnboundIndex,
}

/// Conjugator `w` of the table entry `x^-1 y x = w y w^-1`, or a flag.
fn pbn_conjugator(x: TypeBGen, y: TypeBGen) -> Result<Sym, PbnFlag> {
    use TypeBGen::*;
    let g = Sym::g;
    let (k, l) = match y {
        A(k, l) | B(k, l) => (k, l),
        C(l) => (0, l),
    };
    Ok(match (x, y) {
        (A(i, j), A(..)) => {
            if k == i || k == j {
                g(A(i, l)).mul(&g(A(j, l)))
            } else if i < k && k < j {
                Sym::comm(&g(A(i, l)), &g(A(j, l)))
            } else {
                Sym::one()
            }
        }
        (A(i, j), B(..)) => {
            if k == i {
                return Err(PbnFlag::UnboundIndex);
            } else if k == j {
                g(B(j, l)).mul(&Sym::pow_conj(&hat_b(i, l), &bar_b(j, l).inv()))
            } else {
                Sym::one()
            }
        }
        (A(..), C(_)) => Sym::one(),
        (B(i, j), A(..)) => {
            let w = Sym::comm(&g(B(i, l)), &g(A(j, l)));
            if k < i || (i < k && k < j) {
                w
            } else if k == i {
                w.mul(&Sym::pow_conj(&hat_b(j, l), &g(C(l)).mul(&bar_a(i, l))))
            } else if k == j {
                g(B(i, l))
            } else {
                Sym::one()
            }
        }
        (B(i, j), B(..)) => {
            if k < i {
                Sym::comm(&g(B(i, l)), &g(A(j, l)))
            } else if k == i {
                g(B(i, l)).mul(&g(A(j, l)))
            } else if k == j {
                let inner = Sym::prod(&[bar_b(j, l), g(C(l)), bar_a(i, l)]);
                Sym::prod(&[g(B(j, l)), Sym::comm(&inner, &g(A(i, l))), g(A(i, l))])
            } else {
                Sym::one()
            }
        }
        (B(i, j), C(_)) => Sym::comm(&g(B(i, l)), &g(A(j, l))),
        (C(j), A(..)) => {
            let hc = hat_b(j, l).mul(&g(C(l)));
            if k < j {
                Sym::comm(&hc, &g(A(j, l)))
            } else if k == j {
                hc
            } else {
                Sym::one()
            }
        }
        (C(_), B(..)) => return Err(PbnFlag::StraySubscript),
        (C(j), C(_)) => Sym::prod(&[hat_b(j, l), g(C(l)), g(A(j, l))]),
    })
}

/// Readings tried for a flagged entry, as `(description, conjugator)`.
fn pbn_candidates(x: TypeBGen, y: TypeBGen) -> Vec<(String, Sym)> {
    use TypeBGen::*;
    let g = Sym::g;
    match (x, y) {
        (C(j), B(k, l)) if k == j => {
            let y_with =
                |c: TypeBGen| Sym::prod(&[g(B(j, l)), bar_b(j, l), g(c), g(A(j, l)), bar_b(j, l).inv()]);
            vec![("y_j with c_j as printed".into(), y_with(C(j))), ("y_j with c_l".into(), y_with(C(l)))]
        }
        (C(_), B(..)) => vec![("y_k = 1".into(), Sym::one())],
        (A(_, j), B(_, l)) => {
            let mut out = Vec::new();
            for lev in [j, l] {
                for m in 1..=j {
                    let by = bar_b(m, lev).inv();
                    out.push((format!("q_i with \\bar b_{{{m},{lev}}}"), Sym::pow_conj(&hat_b(j, l), &by)));
                }
            }
            out
        }
        _ => vec![],
    }
}

/// Evaluates `w y w^-1` inside the fiber `F_{2l-1}` of the semidirect
/// product: letters of level `l` multiply, and a lower-level letter `g` acts
/// through `g^-1 z g = η(g)(z)`.
struct Fiber {
    l: usize,
    // η(g) and η(g)^-1 for every lower generator
    act: BTreeMap<TypeBGen, (Endomorphism, Endomorphism)>,
}

impl Fiber {
    fn new(l: usize) -> Result<Fiber, ArrangementError> {
        let mut act = BTreeMap::new();
        for g in TypeBGen::all(l - 1) {
            let b = typeb_closed(g, l - 1)?;
            act.insert(g, (artin(&b)?, artin(&b.inverse())?));
        }
        Ok(Fiber { l, act })
    }

    fn rank(&self) -> usize {
        2 * self.l - 1
    }

    fn conj(&self, w: &Sym, y: TypeBGen) -> Result<Word, ArrangementError> {
        let rank = self.rank();
        let mut z = Word::generator(y.position(), rank);
        for &(g, inv) in w.0.iter().rev() {
            if g.level() == self.l {
                let t = Word::generator(g.position(), rank);
                let t = if inv { t.invert() } else { t };
                z = z.conjugate(&t.invert())?;
            } else {
                let (fwd, back) = self
                    .act
                    .get(&g)
                    .ok_or_else(|| ArrangementError::Index(format!("{g} above level {}", self.l)))?;
                z = if inv { fwd.apply(&z)? } else { back.apply(&z)? };
            }
        }
        Ok(z)
    }
}

struct PbnCase {
    x: TypeBGen,
    y: TypeBGen,
    family: String,
}

fn pbn_cases(n: usize) -> Vec<PbnCase> {
    let kind = |g: TypeBGen, lvl: &str| match g {
        TypeBGen::A(..) => format!("a_{{i,{lvl}}}"),
        TypeBGen::B(..) => format!("b_{{i,{lvl}}}"),
        TypeBGen::C(_) => format!("c_{lvl}"),
    };
    let mut out = Vec::new();
    for l in 2..=n {
        for x in TypeBGen::all(l - 1) {
            for y in TypeBGen::level_gens(l) {
                let family = format!("PBn {} on {}", kind(x, "j"), kind(y, "l").replace('i', "k"));
                out.push(PbnCase { x, y, family });
            }
        }
    }
    out
}

/// Check the type B action table against `η = artin ∘ typeb_closed`.
///
/// Every `x^-1 y x = w y w^-1` is evaluated as a reduced word in the fiber.
/// The two flagged entries are reported under `PBn flagged`, with the
/// computed conjugator and the candidate readings that match it.
pub fn verify_pbn_table(n: usize, exec: Exec) -> Report {
    let mut rep = Report::new();
    if !(2..=4).contains(&n) {
        rep.push("PBn", format!("n={n}"), false, "supported for 2 <= n <= 4");
        return rep;
    }
    let fibers: Result<Vec<Fiber>, _> = (2..=n).map(Fiber::new).collect();
    let fibers = match fibers {
        Ok(f) => f,
        Err(e) => {
            rep.push("PBn", format!("n={n}"), false, e.to_string());
            return rep;
        }
    };
    let cases = pbn_cases(n);
    let parts = exec.map(&cases, |c| {
        let mut rep = Report::new();
        let fib = &fibers[c.y.level() - 2];
        let inst = format!("n={n} {}^-1 {} {}", c.x, c.y, c.x);
        let computed = match fib.conj(&Sym::g(c.x).inv(), c.y) {
            Ok(w) => w,
            Err(e) => {
                rep.push(&c.family, inst, false, e.to_string());
                return rep;
            }
        };
        let check = |w: &Sym| fib.conj(w, c.y).map(|rhs| rhs == computed);
        match pbn_conjugator(c.x, c.y) {
            Ok(w) => match check(&w) {
                Ok(true) => rep.push(&c.family, inst, true, ""),
                Ok(false) => {
                    let detail =
                        format!("stated w = {}; computed {}", w.render(), render_conj(&computed, fib.l));
                    rep.push(&c.family, inst, false, detail);
                }
                Err(e) => rep.push(&c.family, inst, false, e.to_string()),
            },
            Err(flag) => {
                let matching: Vec<String> = pbn_candidates(c.x, c.y)
                    .into_iter()
                    .filter(|(_, w)| check(w).unwrap_or(false))
                    .map(|(d, _)| d)
                    .collect();
                let detail = format!(
                    "{flag:?}; computed {}; matching readings: {}",
                    render_conj(&computed, fib.l),
                    if matching.is_empty() { "none".to_string() } else { matching.join(", ") }
                );
                rep.push("PBn flagged", inst, true, detail);
            }
        }
        rep
    });
    for p in parts {
        rep.extend(p);
    }
    rep
}

fn render_conj(w: &Word, l: usize) -> String {
    match w.as_conjugate_of_letter() {
        Some((u, t)) => {
            let y = TypeBGen::at(l, t.unsigned_abs() as usize).expect("letter within level");
            format!("w = {} (w {y} w^-1)", Sym::from_level_word(&u, l).render())
        }
        None => format!("{} (not a conjugate of a generator)", Sym::from_level_word(w, l).render()),
    }
}

fn monomial_image(g: TypeBGen, p: &MonomialParams) -> Result<BraidWord, MonomialError> {
    match g {
        TypeBGen::C(j) => monomial::z(j, p),
        TypeBGen::A(i, j) => monomial::a(i, j, 2, p),
        TypeBGen::B(i, j) => monomial::a(i, j, 1, p),
    }
}

fn sym_braid(w: &Sym, p: &MonomialParams) -> Result<BraidWord, MonomialError> {
    let mut out = BraidWord::identity(p.strands());
    for &(g, inv) in &w.0 {
        let b = monomial_image(g, p)?;
        out = &out * &if inv { b.inverse() } else { b };
    }
    Ok(out)
}

/// The type B action table read in the pure monomial braid group `P(2, n)`
/// under `a = A^{(2)}`, `b = A^{(1)}`, `c = Z`, each entry checked as an
/// identity of braids. Flagged entries are checked with the conjugator
/// computed by [`verify_pbn_table`]'s free group route.
pub fn verify_pbn_monomial(n: usize, exec: Exec) -> Report {
    let mut rep = Report::new();
    let setup = (|| -> Result<_, ArrangementError> {
        let p = MonomialParams::new(2, n)?;
        let fibers: Vec<Fiber> = (2..=n).map(Fiber::new).collect::<Result<_, _>>()?;
        Ok((p, fibers))
    })();
    let (p, fibers) = match setup {
        Ok(s) if (2..=4).contains(&n) => s,
        Ok(_) => {
            rep.push("PBn monomial", format!("n={n}"), false, "supported for 2 <= n <= 4");
            return rep;
        }
        Err(e) => {
            rep.push("PBn monomial", format!("n={n}"), false, e.to_string());
            return rep;
        }
    };
    let cases = pbn_cases(n);
    let parts = exec.map(&cases, |c| {
        let mut rep = Report::new();
        let inst = format!("n={n} {}^-1 {} {}", c.x, c.y, c.x);
        let fib = &fibers[c.y.level() - 2];
        let outcome = (|| -> Result<(bool, String, bool), ArrangementError> {
            let (w, flagged) = match pbn_conjugator(c.x, c.y) {
                Ok(w) => (w, false),
                Err(_) => {
                    let computed = fib.conj(&Sym::g(c.x).inv(), c.y)?;
                    let (u, _) = computed
                        .as_conjugate_of_letter()
                        .ok_or_else(|| ArrangementError::Index("image is not a conjugate".into()))?;
                    (Sym::from_level_word(&u, fib.l), true)
                }
            };
            let y = Sym::g(c.y);
            let lhs = sym_braid(&Sym::pow_conj(&y, &Sym::g(c.x)), &p)?;
            let rhs = sym_braid(&Sym::prod(&[w.clone(), y, w.inv()]), &p)?;
            Ok((decide_equal(&lhs, &rhs)?.0, w.render(), flagged))
        })();
        match outcome {
            Ok((ok, _, false)) => rep.push(&c.family, inst, ok, if ok { "" } else { "braids differ" }),
            Ok((ok, w, true)) => rep.push("PBn flagged", inst, ok, format!("computed w = {w}")),
            Err(e) => rep.push(&c.family, inst, false, e.to_string()),
        }
        rep
    });
    for p in parts {
        rep.extend(p);
    }
    rep
}
