//! Dynnikov coordinates: a piecewise-linear right action of `B_n` on `Z^{2n}`
//! under which only the trivial braid fixes the point `(0,1,0,1,…,0,1)`.
//!
//! Applying a word costs a constant number of integer operations per letter,
//! so this stays cheap on braids whose Artin images are too large to
//! materialize. Arithmetic runs in `i128` and restarts with big integers on
//! overflow.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::braid::{BraidError, BraidWord};

trait Coord: Clone + Ord + Sized {
    fn zero() -> Self;
    fn one() -> Self;
    fn add(&self, o: &Self) -> Option<Self>;
    fn sub(&self, o: &Self) -> Option<Self>;

    fn pos(&self) -> Self {
        if *self > Self::zero() {
            self.clone()
        } else {
            Self::zero()
        }
    }
    fn neg_part(&self) -> Self {
        if *self < Self::zero() {
            self.clone()
        } else {
            Self::zero()
        }
    }
}

impl Coord for i128 {
    fn zero() -> Self {
        0
    }
    fn one() -> Self {
        1
    }
    fn add(&self, o: &Self) -> Option<Self> {
        self.checked_add(*o)
    }
    fn sub(&self, o: &Self) -> Option<Self> {
        self.checked_sub(*o)
    }
}

impl Coord for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        BigInt::from(1)
    }
    fn add(&self, o: &Self) -> Option<Self> {
        Some(self + o)
    }
    fn sub(&self, o: &Self) -> Option<Self> {
        Some(self - o)
    }
}

// One letter acting on (x_i, y_i, x_{i+1}, y_{i+1}).
fn step<T: Coord>(x: &mut [T], y: &mut [T], letter: i32) -> Option<()> {
    let i = letter.unsigned_abs() as usize - 1;
    let (x1, y1, x2, y2) = (x[i].clone(), y[i].clone(), x[i + 1].clone(), y[i + 1].clone());
    if letter > 0 {
        let z = x1.sub(&y1.neg_part())?.sub(&x2)?.add(&y2.pos())?;
        let nx1 = x1.add(&y1.pos())?.add(&y2.pos().sub(&z)?.pos())?;
        let ny1 = y2.sub(&z.pos())?;
        let nx2 = x2.add(&y2.neg_part())?.add(&y1.neg_part().add(&z)?.neg_part())?;
        let ny2 = y1.add(&z.pos())?;
        (x[i], y[i], x[i + 1], y[i + 1]) = (nx1, ny1, nx2, ny2);
    } else {
        let z = x1.add(&y1.neg_part())?.sub(&x2)?.sub(&y2.pos())?;
        let nx1 = x1.sub(&y1.pos())?.sub(&y2.pos().add(&z)?.pos())?;
        let ny1 = y2.add(&z.neg_part())?;
        let nx2 = x2.sub(&y2.neg_part())?.sub(&y1.neg_part().sub(&z)?.neg_part())?;
        let ny2 = y1.sub(&z.neg_part())?;
        (x[i], y[i], x[i + 1], y[i + 1]) = (nx1, ny1, nx2, ny2);
    }
    Some(())
}

fn run<T: Coord>(b: &BraidWord) -> Option<(Vec<T>, Vec<T>)> {
    let n = b.strands();
    let mut x = vec![T::zero(); n];
    let mut y = vec![T::one(); n];
    for &l in b.letters() {
        step(&mut x, &mut y, l)?;
    }
    Some((x, y))
}

/// Coordinates of `(0,1,…,0,1)·b`, interleaved as `x_1, y_1, …, x_n, y_n`.
pub fn coordinates(b: &BraidWord) -> Vec<BigInt> {
    let interleave = |x: Vec<BigInt>, y: Vec<BigInt>| -> Vec<BigInt> {
        x.into_iter().zip(y).flat_map(|(a, b)| [a, b]).collect()
    };
    match run::<i128>(b) {
        Some((x, y)) => {
            interleave(x.into_iter().map(BigInt::from).collect(), y.into_iter().map(BigInt::from).collect())
        }
        None => {
            let (x, y) = run::<BigInt>(b).expect("big integers do not overflow");
            interleave(x, y)
        }
    }
}

/// True when `b` is the trivial braid.
pub fn is_trivial(b: &BraidWord) -> bool {
    let one = BigInt::from(1);
    coordinates(b).iter().enumerate().all(|(k, c)| if k % 2 == 0 { c.is_zero() } else { *c == one })
}

/// Braid equality by comparing coordinates of the two orbit points.
pub fn braid_equal(a: &BraidWord, b: &BraidWord) -> Result<bool, BraidError> {
    if a.strands() != b.strands() {
        return Err(BraidError::StrandMismatch(a.strands(), b.strands()));
    }
    Ok(coordinates(a) == coordinates(b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid;
    use proptest::prelude::*;

    fn word(n: usize) -> impl Strategy<Value = BraidWord> {
        prop::collection::vec((1..n as i32, any::<bool>()), 0..=14).prop_map(move |v| {
            BraidWord::new(n, v.into_iter().map(|(i, s)| if s { i } else { -i }).collect()).unwrap()
        })
    }

    #[test]
    fn relations_fix_the_base_point() {
        for n in 2..=6usize {
            for i in 1..n as i32 {
                assert!(is_trivial(&BraidWord::new(n, vec![i, -i]).unwrap()));
                assert!(is_trivial(&BraidWord::new(n, vec![-i, i]).unwrap()));
                assert!(!is_trivial(&BraidWord::new(n, vec![i]).unwrap()));
                assert!(!is_trivial(&BraidWord::new(n, vec![i, i]).unwrap()));
                for j in 1..n as i32 {
                    let w = if (i - j).abs() == 1 { vec![i, j, i, -j, -i, -j] } else { vec![i, j, -i, -j] };
                    assert!(is_trivial(&BraidWord::new(n, w).unwrap()), "{i} {j}");
                }
            }
        }
    }

    #[test]
    fn overflow_falls_back_to_big_integers() {
        // σ1 σ2^-1 is pseudo-Anosov, so coordinates grow exponentially.
        let b = BraidWord::new(3, [1, -2].repeat(120)).unwrap();
        let c = coordinates(&b);
        assert!(c.iter().any(|v| v.bits() > 127));
        assert!(braid_equal(&b, &b.inverse().inverse()).unwrap());
        let w = b.concat(&b.inverse()).unwrap();
        assert!(is_trivial(&w));
        assert!(!is_trivial(&w.concat(&BraidWord::sigma(1, 3)).unwrap()));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(300))]

        #[test]
        fn commuting_agrees_with_artin((a, c) in (2usize..=5).prop_flat_map(|n| (word(n), word(n)))) {
            let n = a.strands();
            let ac = a.concat(&c).unwrap();
            let ca = c.concat(&a).unwrap();
            prop_assert_eq!(braid_equal(&ac, &ca).unwrap(), braid::braid_equal(&ac, &ca).unwrap());
            prop_assert_eq!(is_trivial(&a), braid::braid_equal(&a, &BraidWord::identity(n)).unwrap());
        }

        #[test]
        fn inserted_relators_are_invisible(a in word(5), at in 0usize..15, i in 1i32..=4, j in 1i32..=4) {
            let rel = if (i - j).abs() == 1 {
                vec![i, j, i, -j, -i, -j]
            } else {
                vec![i, j, -i, -j]
            };
            let at = at.min(a.len());
            let mut l = a.letters().to_vec();
            l.splice(at..at, rel);
            let b = BraidWord::new(5, l).unwrap();
            prop_assert!(braid_equal(&a, &b).unwrap());
            let c = b.concat(&BraidWord::sigma(i, 5)).unwrap();
            prop_assert!(!braid_equal(&a, &c).unwrap());
        }
    }
}
