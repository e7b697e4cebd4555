//! Seeded generators for randomized checks. All randomness flows from a
//! ChaCha8 stream so results are reproducible from the seed alone.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::matrix::ScalarMatrix;
use crate::scalar::{qf, Scalar, Q};
use crate::zpoly::{ZMatrix, ZPoly};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Independent stream for shard `k` of a run seeded with `seed`.
pub fn shard(seed: u64, k: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(k + 1);
    r
}

/// Rational with numerator in `[-bound, bound]` and denominator in `1..=den`.
pub fn rational<R: Rng>(rng: &mut R, bound: i64, den: i64) -> Q {
    qf(rng.gen_range(-bound..=bound), rng.gen_range(1..=den))
}

pub fn gaussian<R: Rng>(rng: &mut R) -> Scalar {
    Scalar::gauss(rational(rng, 5, 3), rational(rng, 5, 3))
}

pub fn nonzero_gaussian<R: Rng>(rng: &mut R) -> Scalar {
    loop {
        let s = gaussian(rng);
        if !s.is_zero() {
            return s;
        }
    }
}

pub fn gaussian_vec<R: Rng>(rng: &mut R, n: usize) -> Vec<Scalar> {
    (0..n).map(|_| gaussian(rng)).collect()
}

/// Small Gaussian integer entries, useful where growth must stay bounded.
pub fn gaussian_int<R: Rng>(rng: &mut R, bound: i64) -> Scalar {
    Scalar::gi(rng.gen_range(-bound..=bound), rng.gen_range(-bound..=bound))
}

/// Random invertible constant matrix with small Gaussian integer entries.
pub fn invertible<R: Rng>(rng: &mut R, n: usize) -> ScalarMatrix {
    loop {
        let rows = (0..n).map(|_| (0..n).map(|_| gaussian_int(rng, 2)).collect()).collect();
        let m = ScalarMatrix::from_rows(rows);
        if !m.det().is_zero() {
            return m;
        }
    }
}

/// Product of elementary matrices `I + c z^{e} E_ij` with `e ≥ 0` (`chart_zero`)
/// or `e ≤ 0`; the result lies in `GL_n(F[z])` or `GL_n(F[z⁻¹])`.
pub fn unimodular<R: Rng>(rng: &mut R, n: usize, chart_zero: bool, factors: usize, max_deg: i64) -> ZMatrix<Scalar> {
    let mut m = ZMatrix::identity(n);
    if n < 2 {
        return m;
    }
    for _ in 0..factors {
        let i = rng.gen_range(0..n);
        let mut j = rng.gen_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        let e = rng.gen_range(0..=max_deg);
        let e = if chart_zero { e } else { -e };
        let c = Scalar::int(rng.gen_range(-2..=2));
        let el = ZMatrix::from_fn(n, |r, s| {
            if r == s {
                ZPoly::constant(Scalar::int(1))
            } else if r == i && s == j {
                ZPoly::monomial(c.clone(), e)
            } else {
                ZPoly::zero()
            }
        });
        m = &m * &el;
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reproducible() {
        let a: Vec<Scalar> = gaussian_vec(&mut rng(7), 5);
        let b: Vec<Scalar> = gaussian_vec(&mut rng(7), 5);
        assert_eq!(a, b);
        let c: Vec<Scalar> = gaussian_vec(&mut shard(7, 0), 5);
        let d: Vec<Scalar> = gaussian_vec(&mut shard(7, 1), 5);
        assert_ne!(c, d);
    }

    #[test]
    fn unimodular_is_unimodular() {
        let mut r = rng(3);
        for chart in [true, false] {
            let m = unimodular(&mut r, 3, chart, 6, 2);
            let (c, d) = m.det().as_monomial().unwrap();
            assert_eq!((c, d), (Scalar::int(1), 0));
            if chart {
                assert!(m.is_polynomial_in_z());
            } else {
                assert!(m.is_polynomial_in_zinv());
            }
        }
    }
}
