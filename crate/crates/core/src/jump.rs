//! Cohomology jump loci of a CW complex built from a `K(Z^a, 1)` by attaching
//! `m` two-spheres and `ℓ` three-cells along an `ℓ × m` matrix `A` over the
//! group ring `Z[t₁^{±1}, …, t_a^{±1}]`.
//!
//! For a nontrivial rank-one local system `ρ` the cohomology in degrees two and
//! three is the kernel and cokernel of `A(ρ) : C^m → C^ℓ`, so every jump locus
//! is cut out by minors of `A`.

use rand::seq::SliceRandom;

use crate::error::{Error, Result};
use crate::laurent::{LaurentMatrix, LaurentPoly};
use crate::matrix::Matrix;
use crate::par;
use crate::random;
use crate::scalar::{qf, Scalar, Q};

#[derive(Clone, Debug, PartialEq)]
pub struct CWPresentation {
    a: usize,
    m: usize,
    l: usize,
    matrix: LaurentMatrix,
}

impl CWPresentation {
    pub fn new(a: usize, m: usize, l: usize, matrix: LaurentMatrix) -> Result<Self> {
        if m == 0 || l == 0 {
            return Err(Error::Dimension("m and ℓ must be positive".into()));
        }
        if matrix.rows != l || matrix.cols != m {
            return Err(Error::Dimension(format!(
                "attaching matrix is {}x{}, expected ℓ x m = {l}x{m}",
                matrix.rows, matrix.cols
            )));
        }
        for row in &matrix.entries {
            for p in row {
                if !p.has_integer_coefficients() {
                    return Err(Error::Precondition(format!("entry {p} is not in the integral group ring")));
                }
                if p.support_rank() > a {
                    return Err(Error::Dimension(format!("entry {p} uses more than {a} variables")));
                }
            }
        }
        Ok(CWPresentation { a, m, l, matrix })
    }

    pub fn a(&self) -> usize {
        self.a
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn l(&self) -> usize {
        self.l
    }

    pub fn matrix(&self) -> &LaurentMatrix {
        &self.matrix
    }

    fn check_character(&self, rho: &[Scalar]) -> Result<()> {
        if rho.len() != self.a {
            return Err(Error::Dimension(format!(
                "character has {} components, the torus has rank {}",
                rho.len(),
                self.a
            )));
        }
        if let Some(j) = rho.iter().position(|r| r.is_zero()) {
            return Err(Error::ZeroCharacter(j));
        }
        Ok(())
    }

    pub fn rank_at(&self, rho: &[Scalar]) -> Result<usize> {
        self.check_character(rho)?;
        Ok(self.matrix.eval(rho)?.rank())
    }
}

pub fn is_trivial(rho: &[Scalar]) -> bool {
    rho.iter().all(|r| *r == r.one_like())
}

/// `(h², h³)` of the local system `ρ`.
pub fn betti_dims(p: &CWPresentation, rho: &[Scalar]) -> Result<(usize, usize)> {
    p.check_character(rho)?;
    if is_trivial(rho) {
        return Err(Error::TrivialCharacter);
    }
    let r = p.rank_at(rho)?;
    Ok((p.m - r, p.l - r))
}

/// Generators of `{ρ : rank A(ρ) ≤ r}` as the `(r+1)`-minors; `[0]` when the
/// condition holds everywhere.
fn rank_ideal(p: &CWPresentation, r: i64) -> Result<Vec<LaurentPoly>> {
    let size = r + 1;
    let full = p.l.min(p.m) as i64;
    if size > full {
        return Ok(vec![LaurentPoly::zero()]);
    }
    if size < 1 {
        // rank ≤ -1 never holds; the unit ideal
        return Ok(vec![LaurentPoly::constant(Scalar::int(1))]);
    }
    let minors: Vec<LaurentPoly> = p.matrix.minors(size as usize)?.into_iter().filter(|x| !x.is_zero()).collect();
    if minors.is_empty() {
        Ok(vec![LaurentPoly::zero()])
    } else {
        Ok(minors)
    }
}

/// `Σ²_k = {h² ≥ k} = {rank A(ρ) ≤ m - k}`.
pub fn jump_ideal(p: &CWPresentation, k: usize) -> Result<Vec<LaurentPoly>> {
    if k == 0 || k > p.m {
        return Err(Error::OutOfRange {
            what: "k",
            value: k as i64,
            lo: 1,
            hi: p.m as i64,
        });
    }
    rank_ideal(p, p.m as i64 - k as i64)
}

/// `Σ³_j = {h³ ≥ j} = {rank A(ρ) ≤ ℓ - j}`.
pub fn jump_ideal_h3(p: &CWPresentation, j: i64) -> Result<Vec<LaurentPoly>> {
    if j > p.l as i64 {
        return Err(Error::OutOfRange {
            what: "j",
            value: j,
            lo: i64::MIN,
            hi: p.l as i64,
        });
    }
    rank_ideal(p, p.l as i64 - j)
}

/// Translate `ζ · T` of the subtorus `T = {Π s_k^{E_{jk}}}` of `(C*)^a`.
#[derive(Clone, Debug, PartialEq)]
pub struct SubtorusParam {
    pub zeta: Vec<Scalar>,
    /// `a × b`, rank `b`.
    pub e: Vec<Vec<i64>>,
}

impl SubtorusParam {
    pub fn new(zeta: Vec<Scalar>, e: Vec<Vec<i64>>) -> Result<Self> {
        if zeta.len() != e.len() {
            return Err(Error::Dimension(format!(
                "translation has {} components but E has {} rows",
                zeta.len(),
                e.len()
            )));
        }
        if let Some(j) = zeta.iter().position(|z| z.is_zero()) {
            return Err(Error::ZeroCharacter(j));
        }
        let b = e.first().map_or(0, |r| r.len());
        if e.iter().any(|r| r.len() != b) {
            return Err(Error::Dimension("ragged exponent matrix".into()));
        }
        if b > 0 {
            let m: Matrix<Q> = Matrix::from_rows(e.iter().map(|r| r.iter().map(|&x| qf(x, 1)).collect()).collect());
            if m.rank() != b {
                return Err(Error::Precondition(format!("exponent matrix has rank below {b}")));
            }
        }
        Ok(SubtorusParam { zeta, e })
    }

    pub fn dim(&self) -> usize {
        self.e.first().map_or(0, |r| r.len())
    }
}

pub fn contains_subtorus(p: &CWPresentation, k: usize, s: &SubtorusParam) -> Result<bool> {
    if s.zeta.len() != p.a {
        return Err(Error::Dimension(format!(
            "subtorus lives in rank {}, presentation in rank {}",
            s.zeta.len(),
            p.a
        )));
    }
    for g in jump_ideal(p, k)? {
        if !g.substitute(&s.zeta, &s.e)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

pub const MAX_SCAN_SAMPLES: usize = 100_000;

/// Character values the scan draws from.
pub fn sample_pool() -> Vec<Scalar> {
    vec![
        Scalar::int(1),
        Scalar::int(-1),
        Scalar::i(),
        -Scalar::i(),
        Scalar::int(2),
        Scalar::rat(1, 2),
        Scalar::int(-2),
        Scalar::gi(1, 1),
        Scalar::gi(1, -1),
        Scalar::int(3),
    ]
}

/// Randomized exploration of `Σ²_k`: draws `samples` nontrivial characters
/// from [`sample_pool`] and keeps, in draw order and without repeats, those
/// with `rank A(ρ) ≤ m - k`.
pub fn character_scan(p: &CWPresentation, k: usize, samples: usize, seed: u64) -> Result<Vec<Vec<Scalar>>> {
    if k == 0 || k > p.m {
        return Err(Error::OutOfRange {
            what: "k",
            value: k as i64,
            lo: 1,
            hi: p.m as i64,
        });
    }
    if samples > MAX_SCAN_SAMPLES {
        return Err(Error::OutOfRange {
            what: "samples",
            value: samples as i64,
            lo: 0,
            hi: MAX_SCAN_SAMPLES as i64,
        });
    }
    let pool = sample_pool();
    let mut rng = random::rng(seed);
    let mut draws: Vec<Vec<Scalar>> = Vec::with_capacity(samples);
    for _ in 0..samples {
        let rho: Vec<Scalar> = (0..p.a).map(|_| pool.choose(&mut rng).unwrap().clone()).collect();
        if !is_trivial(&rho) && !draws.contains(&rho) {
            draws.push(rho);
        }
    }
    let bound = p.m - k;
    let hits = par::map(&draws, |rho| p.rank_at(rho).map(|r| r <= bound));
    let mut out = Vec::new();
    for (rho, hit) in draws.into_iter().zip(hits) {
        if hit? {
            out.push(rho);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(j: usize) -> LaurentPoly {
        LaurentPoly::var(j)
    }

    fn one() -> LaurentPoly {
        LaurentPoly::constant(Scalar::int(1))
    }

    fn single(a: usize) -> CWPresentation {
        CWPresentation::new(a, 1, 1, LaurentMatrix::new(vec![vec![t(0) - one()]]).unwrap()).unwrap()
    }

    #[test]
    fn betti_examples() {
        let zero = CWPresentation::new(1, 2, 3, LaurentMatrix::zeros(3, 2)).unwrap();
        assert_eq!(betti_dims(&zero, &[Scalar::int(2)]).unwrap(), (2, 3));
        let p = single(1);
        assert_eq!(betti_dims(&p, &[Scalar::int(2)]).unwrap(), (0, 0));
        assert_eq!(betti_dims(&p, &[Scalar::int(-1)]).unwrap(), (0, 0));
        assert_eq!(betti_dims(&p, &[Scalar::int(1)]), Err(Error::TrivialCharacter));
        assert_eq!(betti_dims(&p, &[Scalar::int(0)]), Err(Error::ZeroCharacter(0)));
        // the rank drops at the identity
        assert_eq!(p.rank_at(&[Scalar::int(1)]).unwrap(), 0);
    }

    #[test]
    fn cyclotomic_characters() {
        // t₁² + t₁ + 1 vanishes at a primitive cube root of unity
        let f = t(0) * t(0) + t(0) + one();
        let p = CWPresentation::new(1, 1, 1, LaurentMatrix::new(vec![vec![f]]).unwrap()).unwrap();
        assert_eq!(betti_dims(&p, &[Scalar::zeta(3)]).unwrap(), (1, 1));
        assert_eq!(betti_dims(&p, &[Scalar::i()]).unwrap(), (0, 0));
    }

    #[test]
    fn ideal_examples() {
        let p = single(1);
        assert_eq!(jump_ideal(&p, 1).unwrap(), vec![t(0) - one()]);
        let zero = CWPresentation::new(1, 2, 2, LaurentMatrix::zeros(2, 2)).unwrap();
        assert_eq!(jump_ideal(&zero, 1).unwrap(), vec![LaurentPoly::zero()]);
        assert_eq!(jump_ideal(&zero, 2).unwrap(), vec![LaurentPoly::zero()]);
        let d = LaurentMatrix::new(vec![vec![t(0) - one(), LaurentPoly::zero()], vec![LaurentPoly::zero(), t(1) - one()]]).unwrap();
        let p2 = CWPresentation::new(2, 2, 2, d).unwrap();
        assert_eq!(jump_ideal(&p2, 1).unwrap(), vec![(t(0) - one()) * (t(1) - one())]);
        assert!(jump_ideal(&p2, 0).is_err());
        assert!(jump_ideal(&p2, 3).is_err());
    }

    #[test]
    fn h2_and_h3_ideals_agree() {
        let a = LaurentMatrix::new(vec![
            vec![t(0) - one(), t(1), LaurentPoly::zero()],
            vec![one(), t(0) * t(1), t(1) - one()],
        ])
        .unwrap();
        let p = CWPresentation::new(2, 3, 2, a).unwrap();
        for k in 1..=3 {
            let j = k as i64 + p.l() as i64 - p.m() as i64;
            assert_eq!(jump_ideal(&p, k).unwrap(), jump_ideal_h3(&p, j).unwrap(), "k = {k}");
        }
    }

    #[test]
    fn subtorus_examples() {
        let p = single(2);
        let e = vec![vec![0], vec![1]];
        let s = |z: Vec<Scalar>| SubtorusParam::new(z, e.clone()).unwrap();
        assert!(contains_subtorus(&p, 1, &s(vec![Scalar::int(1), Scalar::int(1)])).unwrap());
        assert!(!contains_subtorus(&p, 1, &s(vec![Scalar::int(-1), Scalar::int(1)])).unwrap());
        assert!(!contains_subtorus(&p, 1, &s(vec![Scalar::i(), Scalar::int(1)])).unwrap());
        assert!(SubtorusParam::new(vec![Scalar::int(0), Scalar::int(1)], e.clone()).is_err());
        assert!(SubtorusParam::new(vec![Scalar::int(1), Scalar::int(1)], vec![vec![1, 2], vec![2, 4]]).is_err());
    }

    #[test]
    fn scan_examples() {
        let p = single(2);
        let hits = character_scan(&p, 1, 200, 17).unwrap();
        assert!(!hits.is_empty());
        assert!(hits.iter().all(|rho| rho[0] == Scalar::int(1)));
        assert_eq!(hits, character_scan(&p, 1, 200, 17).unwrap());
        let unit = CWPresentation::new(2, 1, 1, LaurentMatrix::new(vec![vec![t(0) * t(1)]]).unwrap()).unwrap();
        assert!(character_scan(&unit, 1, 200, 3).unwrap().is_empty());
    }

    #[test]
    fn euler_characteristic_and_monotonicity() {
        let a = LaurentMatrix::new(vec![
            vec![t(0) - one(), t(1) - one()],
            vec![t(0) * t(0) - one(), t(0) * t(1) - one()],
            vec![LaurentPoly::zero(), t(1) + one()],
        ])
        .unwrap();
        let p = CWPresentation::new(2, 2, 3, a).unwrap();
        for rho in character_scan(&p, 1, 300, 8).unwrap() {
            let (h2, h3) = betti_dims(&p, &rho).unwrap();
            assert_eq!(h2 as i64 - h3 as i64, 2 - 3);
            assert!(h2 >= 1);
        }
        let deeper = character_scan(&p, 2, 300, 8).unwrap();
        let shallow = character_scan(&p, 1, 300, 8).unwrap();
        assert!(deeper.iter().all(|r| shallow.contains(r)));
    }
}
