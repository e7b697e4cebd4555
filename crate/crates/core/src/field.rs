//! Minimal algebraic traits shared by the exact kernels.

use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Zero};

/// Commutative ring with exact equality.
pub trait Ring:
    Clone
    + PartialEq
    + Debug
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn from_i64(n: i64) -> Self;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }
}

/// A ring in which every nonzero element is invertible.
pub trait Field: Ring {
    /// `None` exactly when `self` is zero.
    fn inv(&self) -> Option<Self>;

    fn div(&self, rhs: &Self) -> Option<Self> {
        rhs.inv().map(|r| self.clone() * r)
    }
}

impl Ring for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn from_i64(n: i64) -> Self {
        BigRational::from_integer(n.into())
    }
}

impl Field for BigRational {
    fn inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
}

/// Determinant over an arbitrary commutative ring by expansion with
/// memoization over column subsets (O(2^n n) ring operations).
pub fn det_ring<R: Ring>(m: &[Vec<R>]) -> R {
    let n = m.len();
    if n == 0 {
        return R::one();
    }
    assert!(n <= 20, "det_ring: dimension {n} too large for subset expansion");
    // dp[mask] = determinant of rows 0..popcount(mask) restricted to columns `mask`
    let size = 1usize << n;
    let mut dp: Vec<Option<R>> = vec![None; size];
    dp[0] = Some(R::one());
    for mask in 1..size {
        let row = mask.count_ones() as usize - 1;
        let mut acc = R::zero();
        for col in 0..n {
            if mask & (1 << col) == 0 {
                continue;
            }
            let rest = mask & !(1 << col);
            let entry = &m[row][col];
            if !entry.is_zero() {
                if let Some(sub) = &dp[rest] {
                    if !sub.is_zero() {
                        // column `col` is removed from `mask`; the number of selected
                        // columns after it determines the sign
                        let after = (mask >> (col + 1)).count_ones() as usize;
                        let term = entry.clone() * sub.clone();
                        if after % 2 == 0 {
                            acc = acc + term;
                        } else {
                            acc = acc - term;
                        }
                    }
                }
            }
        }
        dp[mask] = Some(acc);
    }
    dp[size - 1].take().unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_i64(n)
    }

    #[test]
    fn det_ring_small() {
        let m = vec![vec![q(1), q(2)], vec![q(3), q(4)]];
        assert_eq!(det_ring(&m), q(-2));
        let m3 = vec![
            vec![q(2), q(0), q(1)],
            vec![q(1), q(3), q(2)],
            vec![q(1), q(1), q(1)],
        ];
        // 2(3-2) - 0 + 1(1-3) = 0
        assert_eq!(det_ring(&m3), q(0));
        let p = vec![vec![q(0), q(1), q(0)], vec![q(0), q(0), q(1)], vec![q(1), q(0), q(0)]];
        assert_eq!(det_ring(&p), q(1));
        let swap = vec![vec![q(0), q(1)], vec![q(1), q(0)]];
        assert_eq!(det_ring(&swap), q(-1));
    }
}
