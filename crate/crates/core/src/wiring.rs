//! Braided wiring diagrams and their braid monodromy.
//!
//! A diagram is a sequence of events. Event `j` carries the partition `I(j)`
//! of the strand positions into consecutive blocks (the wires that meet)
//! and the braid `β_{j,j+1}` leading to the next event. The braid after the
//! last event is kept but never used.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::One;
use thiserror::Error;

use crate::braid::{
    artin, braid_equal, conjugator_of_image, linking_numbers, permutation, BraidError, BraidWord,
};
use crate::report::Report;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WiringError {
    #[error("missing `n <int>` header")]
    MissingHeader,
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("block {0:?} is not a run of consecutive integers")]
    NonConsecutive(Vec<usize>),
    #[error("blocks do not cover 1..={n} exactly once in ascending order")]
    NotCovering { n: usize },
    #[error("diagram must have at least one event")]
    NoEvents,
    #[error("need at least two lines")]
    TooFewLines,
    #[error("lines {0} and {1} are identical")]
    IdenticalLines(usize, usize),
    #[error("event index {0} out of range")]
    EventIndex(usize),
    #[error("monodromy braid of event {0} is not pure")]
    NotPure(usize),
    #[error(transparent)]
    Braid(#[from] BraidError),
}

/// Partition of `1..=n` into ascending runs of consecutive integers.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ConsecutivePartition {
    n: usize,
    /// Inclusive `(first, last)` of each block.
    blocks: Vec<(usize, usize)>,
}

impl ConsecutivePartition {
    pub fn new(n: usize, blocks: &[Vec<usize>]) -> Result<ConsecutivePartition, WiringError> {
        let mut out = Vec::with_capacity(blocks.len());
        let mut next = 1;
        for b in blocks {
            if b.is_empty() || b.windows(2).any(|p| p[1] != p[0] + 1) {
                return Err(WiringError::NonConsecutive(b.clone()));
            }
            if b[0] != next {
                return Err(WiringError::NotCovering { n });
            }
            next = b[b.len() - 1] + 1;
            out.push((b[0], b[b.len() - 1]));
        }
        if next != n + 1 {
            return Err(WiringError::NotCovering { n });
        }
        Ok(ConsecutivePartition { n, blocks: out })
    }

    pub fn singletons(n: usize) -> ConsecutivePartition {
        ConsecutivePartition { n, blocks: (1..=n).map(|i| (i, i)).collect() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn blocks(&self) -> &[(usize, usize)] {
        &self.blocks
    }

    pub fn block_sets(&self) -> Vec<Vec<usize>> {
        self.blocks.iter().map(|&(a, b)| (a..=b).collect()).collect()
    }
}

impl fmt::Display for ConsecutivePartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .block_sets()
            .iter()
            .map(|b| b.iter().map(usize::to_string).collect::<Vec<_>>().join(" "))
            .collect();
        f.write_str(&parts.join(" | "))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Event {
    pub partition: ConsecutivePartition,
    /// `β_{j,j+1}`; for the last event this is the trailing braid.
    pub braid: BraidWord,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WiringDiagram {
    n: usize,
    events: Vec<Event>,
}

impl WiringDiagram {
    pub fn new(n: usize, events: Vec<Event>) -> Result<WiringDiagram, WiringError> {
        if events.is_empty() {
            return Err(WiringError::NoEvents);
        }
        for e in &events {
            if e.partition.n != n {
                return Err(WiringError::NotCovering { n });
            }
            if e.braid.strands() != n {
                return Err(BraidError::StrandMismatch(n, e.braid.strands()).into());
            }
        }
        Ok(WiringDiagram { n, events })
    }

    /// Diagram with all intermediate braids trivial.
    pub fn unbraided(n: usize, partitions: Vec<ConsecutivePartition>) -> Result<WiringDiagram, WiringError> {
        let events =
            partitions.into_iter().map(|p| Event { partition: p, braid: BraidWord::identity(n) }).collect();
        WiringDiagram::new(n, events)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn events(&self) -> &[Event] {
        &self.events
    }

    pub fn len(&self) -> usize {
        self.events.len()
    }

    pub fn is_empty(&self) -> bool {
        self.events.is_empty()
    }
}

/// `μ` of the block `{first, …, last}`: the positive half twist
/// `(σ_i⋯σ_{i+s-1})(σ_i⋯σ_{i+s-2})⋯(σ_i)`.
pub fn permutation_braid_mu(first: usize, last: usize, n: usize) -> Result<BraidWord, WiringError> {
    if first < 1 || first > last || last > n {
        return Err(WiringError::NonConsecutive((first..=last).collect()));
    }
    let mut letters = Vec::new();
    for top in (first..last).rev() {
        letters.extend((first..=top).map(|k| k as i32));
    }
    Ok(BraidWord::new(n, letters)?)
}

/// `Υ_I`: product of the block half twists.
pub fn upsilon(p: &ConsecutivePartition) -> BraidWord {
    let mut out = BraidWord::identity(p.n);
    for &(a, b) in &p.blocks {
        out = &out * &permutation_braid_mu(a, b, p.n).expect("blocks lie in range");
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonodromyGenerator {
    /// 1-based event index.
    pub index: usize,
    /// `β_j^-1 Υ_{I(j)}^2 β_j`.
    pub braid: BraidWord,
    /// `V(j)`, including singletons, each block ascending.
    pub block_partition: Vec<Vec<usize>>,
    /// `β_j`.
    pub conjugator: BraidWord,
    pub partition: ConsecutivePartition,
}

impl MonodromyGenerator {
    /// Blocks of `V(j)` with at least two strands.
    pub fn twist_blocks(&self) -> Vec<&Vec<usize>> {
        self.block_partition.iter().filter(|b| b.len() > 1).collect()
    }
}

/// The conjugating braids `β_1 = base, β_{j+1} = β_{j,j+1} Υ_{I(j)} β_j`.
pub fn conjugators(w: &WiringDiagram, base: &BraidWord) -> Vec<BraidWord> {
    let mut out = Vec::with_capacity(w.events.len());
    let mut beta = base.clone();
    for e in &w.events {
        out.push(beta.clone());
        beta = &(&e.braid * &upsilon(&e.partition)) * &beta;
    }
    out
}

/// `V(j)`: the strands (labelled at the basepoint) carried into each block
/// of `I(j)` by `β_j`.
fn partition_v(beta: &BraidWord, p: &ConsecutivePartition) -> Vec<Vec<usize>> {
    let pi = permutation(beta);
    let mut out: Vec<Vec<usize>> = p
        .block_sets()
        .iter()
        .map(|b| {
            let mut v: Vec<usize> = b.iter().map(|&s| pi.image(s)).collect();
            v.sort_unstable();
            v
        })
        .collect();
    out.sort();
    out
}

pub fn block_partition_v(w: &WiringDiagram, j: usize) -> Result<Vec<Vec<usize>>, WiringError> {
    if j < 1 || j > w.events.len() {
        return Err(WiringError::EventIndex(j));
    }
    let betas = conjugators(w, &BraidWord::identity(w.n));
    Ok(partition_v(&betas[j - 1], &w.events[j - 1].partition))
}

pub fn braid_monodromy(w: &WiringDiagram) -> Result<Vec<MonodromyGenerator>, WiringError> {
    braid_monodromy_with_base(w, &BraidWord::identity(w.n))
}

/// Monodromy with `β_1 = base` instead of the trivial braid.
pub fn braid_monodromy_with_base(
    w: &WiringDiagram,
    base: &BraidWord,
) -> Result<Vec<MonodromyGenerator>, WiringError> {
    if base.strands() != w.n {
        return Err(BraidError::StrandMismatch(w.n, base.strands()).into());
    }
    let betas = conjugators(w, base);
    let mut out = Vec::with_capacity(betas.len());
    for (k, (e, beta)) in w.events.iter().zip(betas).enumerate() {
        let up = upsilon(&e.partition);
        let braid = (&up * &up).conj(&beta);
        if !permutation(&braid).is_identity() {
            return Err(WiringError::NotPure(k + 1));
        }
        out.push(MonodromyGenerator {
            index: k + 1,
            block_partition: partition_v(&beta, &e.partition),
            braid,
            conjugator: beta,
            partition: e.partition.clone(),
        });
    }
    Ok(out)
}

/// Shape checks on one monodromy generator: linking pattern, conjugator
/// abelianizations and commuting block factors.
pub fn verify_twist_shape(g: &MonodromyGenerator) -> Report {
    let mut rep = Report::new();
    let n = g.braid.strands();
    let fam = |s: &str| format!("twist-shape/{s}");
    let inst = |s: String| format!("u{} {s}", g.index);

    let mut block_of = vec![0usize; n + 1];
    for (k, b) in g.block_partition.iter().enumerate() {
        for &s in b {
            block_of[s] = k;
        }
    }

    match linking_numbers(&g.braid) {
        Ok(m) => {
            let mut bad = Vec::new();
            for a in 1..=n {
                for b in (a + 1)..=n {
                    let want = (block_of[a] == block_of[b]) as i64;
                    if m[a - 1][b - 1] != want {
                        bad.push(format!("({a},{b})={}", m[a - 1][b - 1]));
                    }
                }
            }
            rep.push(fam("linking"), inst(String::new()), bad.is_empty(), bad.join(" "));
        }
        Err(e) => rep.push(fam("linking"), inst(String::new()), false, e.to_string()),
    }

    match artin(&g.braid) {
        Ok(e) => {
            for j in 1..=n {
                let block = &g.block_partition[block_of[j]];
                let (ok, detail) = match conjugator_of_image(&e, j) {
                    Some((u, gen)) if gen == j => {
                        let ab = u.abelianize();
                        let ok = (1..=n).filter(|&i| i != j).all(|i| ab[i - 1] == block.contains(&i) as i64);
                        (ok, format!("conjugator {u}"))
                    }
                    _ => (false, format!("image {} is not a conjugate of t{j}", e.image(j))),
                };
                rep.push(
                    fam("conjugator"),
                    inst(format!("t{j}")),
                    ok,
                    if ok { String::new() } else { detail },
                );
            }
        }
        Err(err) => rep.push(fam("conjugator"), inst(String::new()), false, err.to_string()),
    }

    let factors: Vec<BraidWord> = g
        .partition
        .blocks()
        .iter()
        .filter(|&&(a, b)| b > a)
        .map(|&(a, b)| {
            let mu = permutation_braid_mu(a, b, n).expect("block in range");
            (&mu * &mu).conj(&g.conjugator)
        })
        .collect();
    for (k, order) in block_orders(factors.len()).into_iter().enumerate() {
        let prod = BraidWord::product(n, order.iter().map(|&i| &factors[i]));
        let (ok, detail) = match braid_equal(&prod, &g.braid) {
            Ok(true) => (true, String::new()),
            Ok(false) => (false, format!("order {order:?} differs")),
            Err(e) => (false, e.to_string()),
        };
        rep.push(fam("commuting-factors"), inst(format!("order#{k}")), ok, detail);
    }
    rep
}

/// All orderings for up to five blocks, otherwise forward and reverse.
fn block_orders(m: usize) -> Vec<Vec<usize>> {
    if m > 5 {
        return vec![(0..m).collect(), (0..m).rev().collect()];
    }
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..m).collect();
    permute(&mut cur, 0, &mut out);
    out.sort();
    out
}

fn permute(v: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
    if k == v.len() {
        out.push(v.clone());
        return;
    }
    for i in k..v.len() {
        v.swap(k, i);
        permute(v, k + 1, out);
        v.swap(k, i);
    }
}

/// The real line `z = slope·x + intercept`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RealLine {
    pub slope: BigRational,
    pub intercept: BigRational,
}

impl RealLine {
    pub fn new(slope: BigRational, intercept: BigRational) -> RealLine {
        RealLine { slope, intercept }
    }

    pub fn from_ints(slope: i64, intercept: i64) -> RealLine {
        RealLine::new(BigRational::from_integer(slope.into()), BigRational::from_integer(intercept.into()))
    }

    pub fn value(&self, x: &BigRational) -> BigRational {
        &self.slope * x + &self.intercept
    }

    /// `x` where the two lines meet, if they are not parallel.
    pub fn meet(&self, other: &RealLine) -> Option<BigRational> {
        if self.slope == other.slope {
            return None;
        }
        Some((&other.intercept - &self.intercept) / (&self.slope - &other.slope))
    }
}

/// Wiring diagram of a real line arrangement together with the bookkeeping
/// that ties strands and events back to the input lines.
#[derive(Debug, Clone)]
pub struct RealWiring {
    pub diagram: WiringDiagram,
    /// `strand_line[s-1]` is the input index of the line at basepoint strand `s`.
    pub strand_line: Vec<usize>,
    /// Event abscissae, decreasing.
    pub event_x: Vec<BigRational>,
    /// Input line indices of each nontrivial block at each event.
    pub event_lines: Vec<Vec<Vec<usize>>>,
}

/// Parse `slope intercept` pairs, one line each. Values are integers or
/// fractions `p/q`; `#` starts a comment.
pub fn parse_real_lines(text: &str) -> Result<Vec<RealLine>, WiringError> {
    let mut out = Vec::new();
    for (ln, raw) in text.lines().enumerate() {
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let bad = |msg: String| WiringError::Syntax { line: ln + 1, msg };
        let toks: Vec<&str> = body.split_whitespace().collect();
        if toks.len() != 2 {
            return Err(bad(format!("expected `slope intercept`, got {body:?}")));
        }
        let num = |t: &str| t.parse::<BigRational>().map_err(|_| bad(format!("not a rational: {t:?}")));
        out.push(RealLine::new(num(toks[0])?, num(toks[1])?));
    }
    Ok(out)
}

pub fn wiring_from_real_lines(lines: &[RealLine]) -> Result<WiringDiagram, WiringError> {
    Ok(real_wiring(lines)?.diagram)
}

pub fn real_wiring(lines: &[RealLine]) -> Result<RealWiring, WiringError> {
    let n = lines.len();
    if n < 2 {
        return Err(WiringError::TooFewLines);
    }
    let mut xs = Vec::new();
    for a in 0..n {
        for b in (a + 1)..n {
            if lines[a] == lines[b] {
                return Err(WiringError::IdenticalLines(a, b));
            }
            if let Some(x) = lines[a].meet(&lines[b]) {
                xs.push(x);
            }
        }
    }
    xs.sort_unstable_by(|p, q| q.cmp(p));
    xs.dedup();
    if xs.is_empty() {
        return Err(WiringError::NoEvents);
    }

    let order_at = |x: &BigRational| {
        let mut idx: Vec<usize> = (0..n).collect();
        idx.sort_by_key(|&i| lines[i].value(x));
        idx
    };
    let start = &xs[0] + BigRational::one();
    let strand_line = order_at(&start);

    let two = BigRational::from_integer(2.into());
    let mut prev = start;
    let mut events = Vec::with_capacity(xs.len());
    let mut event_lines = Vec::with_capacity(xs.len());
    for x in &xs {
        let mid = (&prev + x) / &two;
        let ord = order_at(&mid);
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        let mut named: Vec<Vec<usize>> = Vec::new();
        let mut pos = 0;
        while pos < n {
            let v = lines[ord[pos]].value(x);
            let mut end = pos + 1;
            while end < n && lines[ord[end]].value(x) == v {
                end += 1;
            }
            blocks.push(((pos + 1)..=end).collect());
            if end - pos > 1 {
                let mut ids: Vec<usize> = ord[pos..end].to_vec();
                ids.sort_unstable();
                named.push(ids);
            }
            pos = end;
        }
        events
            .push(Event { partition: ConsecutivePartition::new(n, &blocks)?, braid: BraidWord::identity(n) });
        event_lines.push(named);
        prev = x.clone();
    }
    Ok(RealWiring { diagram: WiringDiagram::new(n, events)?, strand_line, event_x: xs, event_lines })
}

/// Multiset of concurrency sizes (at least two lines) at each abscissa where
/// some lines meet, in decreasing `x` order.
pub fn concurrency_profile(lines: &[RealLine]) -> BTreeMap<BigRational, Vec<usize>> {
    let mut out: BTreeMap<BigRational, Vec<usize>> = BTreeMap::new();
    for a in 0..lines.len() {
        for b in (a + 1)..lines.len() {
            if let Some(x) = lines[a].meet(&lines[b]) {
                out.entry(x).or_default();
            }
        }
    }
    for (x, sizes) in out.iter_mut() {
        let mut groups: BTreeMap<BigRational, usize> = BTreeMap::new();
        for l in lines {
            *groups.entry(l.value(x)).or_insert(0) += 1;
        }
        *sizes = groups.into_values().filter(|&c| c > 1).collect();
        sizes.sort_unstable();
    }
    out
}

pub fn parse_wiring(text: &str) -> Result<WiringDiagram, WiringError> {
    let mut n: Option<usize> = None;
    let mut partitions: Vec<ConsecutivePartition> = Vec::new();
    let mut braids: Vec<Option<BraidWord>> = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line_no = k + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let syntax = |msg: &str| WiringError::Syntax { line: line_no, msg: msg.to_string() };
        if n.is_none() {
            let v = line
                .strip_prefix('n')
                .filter(|r| r.starts_with(char::is_whitespace))
                .ok_or(WiringError::MissingHeader)?;
            let v: usize = v.trim().parse().map_err(|_| syntax("bad strand count"))?;
            if v == 0 {
                return Err(syntax("strand count must be positive"));
            }
            n = Some(v);
            continue;
        }
        let n = n.unwrap();
        if let Some(rest) = line.strip_prefix("I:") {
            if braids.len() < partitions.len() {
                braids.push(None);
            }
            let blocks = rest
                .split('|')
                .map(|b| b.split_whitespace().map(|t| t.parse::<usize>()).collect::<Result<Vec<_>, _>>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|_| syntax("bad block entry"))?;
            partitions.push(ConsecutivePartition::new(n, &blocks)?);
        } else if let Some(rest) = line.strip_prefix("B:") {
            if braids.len() + 1 != partitions.len() {
                return Err(syntax("`B:` must follow an `I:` line"));
            }
            braids.push(Some(BraidWord::parse(rest, n)?));
        } else {
            return Err(syntax("expected `I:` or `B:`"));
        }
    }
    let n = n.ok_or(WiringError::MissingHeader)?;
    braids.resize(partitions.len(), None);
    let events = partitions
        .into_iter()
        .zip(braids)
        .map(|(partition, b)| Event { partition, braid: b.unwrap_or_else(|| BraidWord::identity(n)) })
        .collect();
    WiringDiagram::new(n, events)
}

pub fn serialize_wiring(w: &WiringDiagram) -> String {
    let mut out = format!("n {}\n", w.n);
    for e in &w.events {
        out.push_str(&format!("I: {}\n", e.partition));
        let b = e.braid.to_string();
        if b.is_empty() {
            out.push_str("B:\n");
        } else {
            out.push_str(&format!("B: {b}\n"));
        }
    }
    out
}
