//! Small exact linear algebra over the integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

/// Rank over the rationals of an integer matrix given by rows, by
/// fraction-free elimination.
pub fn rank_bigint(rows: &[Vec<BigInt>]) -> usize {
    let mut m: Vec<Vec<BigInt>> = rows.to_vec();
    let cols = m.iter().map(Vec::len).max().unwrap_or(0);
    let mut rank = 0;
    for col in 0..cols {
        let Some(piv) = (rank..m.len()).find(|&r| col < m[r].len() && !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, piv);
        let pivot_row = m[rank].clone();
        for row in m.iter_mut().skip(rank + 1) {
            if col >= row.len() || row[col].is_zero() {
                continue;
            }
            let g = pivot_row[col].gcd(&row[col]);
            let (a, b) = (&pivot_row[col] / &g, &row[col] / &g);
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                *x = &*x * &a - y * &b;
            }
            let c = row.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
            if !c.is_zero() && c.abs() != BigInt::from(1) {
                for x in row.iter_mut() {
                    *x = &*x / &c;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Diagonal of the Smith normal form (nonzero invariant factors), by
/// repeated row and column elimination over `i128`.
pub fn smith_invariants(rows: &[Vec<i64>]) -> Vec<i128> {
    let mut m: Vec<Vec<i128>> = rows.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let nr = m.len();
    let nc = m.iter().map(Vec::len).max().unwrap_or(0);
    for r in m.iter_mut() {
        r.resize(nc, 0);
    }
    let mut out = Vec::new();
    let mut t = 0;
    while t < nr.min(nc) {
        // smallest nonzero entry in the remaining block
        let mut best: Option<(usize, usize)> = None;
        for i in t..nr {
            for j in t..nc {
                if m[i][j] != 0 && best.is_none_or(|(bi, bj)| m[i][j].abs() < m[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        m.swap(t, bi);
        for row in m.iter_mut() {
            row.swap(t, bj);
        }
        loop {
            let p = m[t][t];
            let mut dirty = false;
            for i in (t + 1)..nr {
                let f = m[i][t] / p;
                if f != 0 {
                    for j in t..nc {
                        m[i][j] -= f * m[t][j];
                    }
                }
                if m[i][t] != 0 {
                    dirty = true;
                }
            }
            for j in (t + 1)..nc {
                let f = m[t][j] / p;
                if f != 0 {
                    for row in m.iter_mut().skip(t) {
                        row[j] -= f * row[t];
                    }
                }
                if m[t][j] != 0 {
                    dirty = true;
                }
            }
            if !dirty {
                // divisibility of the remaining block
                let bad = (t + 1..nr)
                    .flat_map(|i| (t + 1..nc).map(move |j| (i, j)))
                    .find(|&(i, j)| m[i][j] % p != 0);
                match bad {
                    Some((i, _)) => {
                        for j in t..nc {
                            let v = m[i][j];
                            m[t][j] += v;
                        }
                        continue;
                    }
                    None => break,
                }
            }
            // move the smallest nonzero of row/column t to the pivot
            let mut bi = (t, t);
            for i in t..nr {
                if m[i][t] != 0 && m[i][t].abs() < m[bi.0][bi.1].abs() {
                    bi = (i, t);
                }
            }
            for j in t..nc {
                if m[t][j] != 0 && m[t][j].abs() < m[bi.0][bi.1].abs() {
                    bi = (t, j);
                }
            }
            m.swap(t, bi.0);
            for row in m.iter_mut() {
                row.swap(t, bi.1);
            }
        }
        out.push(m[t][t].abs());
        t += 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bi(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank_bigint(&bi(&[&[1, 2], &[2, 4]])), 1);
        assert_eq!(rank_bigint(&bi(&[&[1, 2, 3], &[0, 1, 1], &[1, 3, 4]])), 2);
        assert_eq!(rank_bigint(&bi(&[&[0, 0], &[0, 0]])), 0);
        assert_eq!(rank_bigint(&[]), 0);
        assert_eq!(rank_bigint(&bi(&[&[2, 0, 0], &[0, 3, 0], &[0, 0, 5]])), 3);
    }

    #[test]
    fn smith_examples() {
        assert_eq!(smith_invariants(&[vec![2, 4], vec![6, 8]]), vec![2, 4]);
        assert_eq!(smith_invariants(&[vec![1, 0], vec![0, 1], vec![1, 1]]), vec![1, 1]);
        assert_eq!(smith_invariants(&[vec![2, 0], vec![0, 3]]), vec![1, 6]);
        assert!(smith_invariants(&[vec![0, 0]]).is_empty());
    }
}
