//! Semistable reduction for families of bundles on P¹ over a disk.
//!
//! The disk is `Spec` of the ring of rational functions in `s` regular at
//! `s = 0`; its fraction field is `Q(i)(s)`. A family is a transition matrix
//! `T(z, s)` with such coefficients and determinant `c(s) z^d`, `c(0) ≠ 0`.
//! On P¹ semistable means balanced splitting type, and the destabilizing
//! quotient of `⊕ O(a_i)` is the projection onto the summands with `a_i`
//! below average. One elementary modification normalizes the special fiber
//! to `diag(z^{-a_i})` and conjugates by `diag(s^{δ})`, `δ_i = 1` on those
//! summands.

use crate::birkhoff::P1Bundle;
use crate::error::{Error, Result};
use crate::ratfun::RatFun;
use crate::scalar::Scalar;
use crate::zpoly::{ZMatrix, ZPoly};

#[derive(Clone, Debug, PartialEq)]
pub struct DiskFamily {
    t: ZMatrix<RatFun>,
}

impl DiskFamily {
    pub fn new(t: ZMatrix<RatFun>) -> Result<Self> {
        for row in t.entries() {
            for p in row {
                if let Some((e, c)) = p.terms().find(|(_, c)| !c.is_regular_at_zero()) {
                    return Err(Error::Precondition(format!(
                        "coefficient {c:?} of z^{e} has a pole at s = 0"
                    )));
                }
            }
        }
        let det = t.det();
        let Some((c, _)) = det.as_monomial() else {
            return Err(Error::NonUnitDeterminant(format!("{det:?}")));
        };
        if c.at_zero().is_none_or(|x| x.is_zero()) {
            return Err(Error::NonUnitDeterminant(format!("{det:?} degenerates at s = 0")));
        }
        Ok(DiskFamily { t })
    }

    /// Constant in `s`.
    pub fn from_scalar(t: &ZMatrix<Scalar>) -> Result<Self> {
        Self::new(t.map(|c| RatFun::scalar(c.clone())))
    }

    pub fn rank(&self) -> usize {
        self.t.n()
    }

    pub fn transition(&self) -> &ZMatrix<RatFun> {
        &self.t
    }

    pub fn special_fiber(&self) -> ZMatrix<Scalar> {
        self.t.map(|c| c.at_zero().expect("regular at s = 0"))
    }
}

pub fn is_balanced(split: &[i64]) -> bool {
    split.windows(2).all(|w| w[0] == w[1])
}

/// `a₁ - a_n` for a non-increasing splitting type.
pub fn gap(split: &[i64]) -> i64 {
    split.first().zip(split.last()).map_or(0, |(a, b)| a - b)
}

/// Splitting type over the fraction field `Q(i)(s)`.
pub fn generic_splitting(f: &DiskFamily) -> Result<Vec<i64>> {
    P1Bundle::new(f.t.clone())?.splitting_type()
}

/// Splitting type of `T(z, 0)`.
pub fn special_splitting(f: &DiskFamily) -> Result<Vec<i64>> {
    P1Bundle::new(f.special_fiber())?.splitting_type()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HNRecord {
    pub step: usize,
    pub special_type: Vec<i64>,
}

/// `left · T · right = T′` with both factors invertible over `Q(i)(s)[z, z⁻¹]`.
#[derive(Clone, Debug, PartialEq)]
pub struct StepCertificate {
    pub left: ZMatrix<RatFun>,
    pub right: ZMatrix<RatFun>,
    pub delta: Vec<i64>,
}

impl StepCertificate {
    pub fn verify(&self, before: &DiskFamily, after: &DiskFamily) -> bool {
        let invertible = |m: &ZMatrix<RatFun>| m.det().as_monomial().is_some();
        invertible(&self.left)
            && invertible(&self.right)
            && &(&self.left * &before.t) * &self.right == after.t
    }
}

fn s_diag(exps: &[i64]) -> ZMatrix<RatFun> {
    ZMatrix::from_fn(exps.len(), |i, j| {
        if i == j {
            ZPoly::constant(RatFun::s_pow(exps[i]))
        } else {
            ZPoly::zero()
        }
    })
}

/// `(c_i, e_i)` when `t = diag(c_i z^{e_i})`.
fn diagonal_monomials(t: &ZMatrix<Scalar>) -> Option<(Vec<Scalar>, Vec<i64>)> {
    let n = t.n();
    let mut coeffs = Vec::with_capacity(n);
    let mut exps = Vec::with_capacity(n);
    for i in 0..n {
        for j in 0..n {
            if i != j && !t.get(i, j).is_zero() {
                return None;
            }
        }
        let (c, e) = t.get(i, i).as_monomial()?;
        coeffs.push(c);
        exps.push(e);
    }
    Some((coeffs, exps))
}

/// One elementary modification of an unbalanced special fiber.
pub fn langton_step(f: &DiskFamily) -> Result<(DiskFamily, StepCertificate)> {
    let generic = generic_splitting(f)?;
    if !is_balanced(&generic) {
        return Err(Error::Precondition("generic fiber not semistable".into()));
    }
    let special_t = f.special_fiber();
    let special = P1Bundle::new(special_t.clone())?;
    let split = special.splitting_type()?;
    if is_balanced(&split) {
        return Err(Error::Precondition("special fiber is already semistable".into()));
    }
    // a diagonal special fiber is its own factorization, which keeps the
    // summands in place; otherwise use the Birkhoff certificate
    let (a0, c0, exps) = match diagonal_monomials(&special_t) {
        Some((coeffs, exps)) => (
            ZMatrix::from_fn(coeffs.len(), |i, j| {
                if i == j {
                    ZPoly::constant(coeffs[i].clone())
                } else {
                    ZPoly::zero()
                }
            }),
            ZMatrix::identity(coeffs.len()),
            exps,
        ),
        None => {
            let cert = special
                .factorization_certificate()
                .ok_or_else(|| Error::Invariant("no factorization certificate for the special fiber".into()))?;
            (cert.a, cert.c, cert.d_exps)
        }
    };
    let lift = |m: &ZMatrix<Scalar>| m.map(|c| RatFun::scalar(c.clone()));
    let a_inv = lift(&a0.inverse().ok_or_else(|| Error::Invariant("A₀ not invertible".into()))?);
    let c_inv = lift(&c0.inverse().ok_or_else(|| Error::Invariant("C₀ not invertible".into()))?);
    let t1 = &(&a_inv * &f.t) * &c_inv;

    // summand i is O(-e_i); δ_i = 1 when it is below average: n · a_i < Σ a_j
    let n = exps.len() as i64;
    let total: i64 = exps.iter().map(|e| -e).sum();
    let delta: Vec<i64> = exps.iter().map(|&e| i64::from(-n * e < total)).collect();
    let minus: Vec<i64> = delta.iter().map(|d| -d).collect();
    let left = &s_diag(&minus) * &a_inv;
    let right = &c_inv * &s_diag(&delta);
    let t2 = &(&s_diag(&minus) * &t1) * &s_diag(&delta);
    let next = DiskFamily::new(t2).map_err(|e| Error::Invariant(format!("modified family invalid: {e}")))?;
    let certificate = StepCertificate { left, right, delta };
    if !certificate.verify(f, &next) {
        return Err(Error::Invariant("step certificate does not re-multiply".into()));
    }
    Ok((next, certificate))
}

#[derive(Clone, Debug, PartialEq)]
pub struct Reduction {
    pub family: DiskFamily,
    /// Special-fiber types, starting with the input.
    pub trail: Vec<HNRecord>,
    pub certificates: Vec<StepCertificate>,
}

impl Reduction {
    pub fn steps(&self) -> usize {
        self.certificates.len()
    }

    pub fn final_type(&self) -> &[i64] {
        &self.trail.last().expect("trail starts with the input").special_type
    }
}

/// Upper bound on the number of modifications; exceeding it is a bug.
pub fn step_bound(n: usize, initial_gap: i64) -> usize {
    let g = initial_gap.max(0) as usize;
    4 * n * (g + 1) * (g + 1)
}

pub fn langton_reduce(f: &DiskFamily) -> Result<Reduction> {
    let generic = generic_splitting(f)?;
    if !is_balanced(&generic) {
        return Err(Error::Precondition("generic fiber not semistable".into()));
    }
    let mut current = f.clone();
    let mut split = special_splitting(&current)?;
    let bound = step_bound(f.rank(), gap(&split));
    let mut trail = vec![HNRecord {
        step: 0,
        special_type: split.clone(),
    }];
    let mut certificates = Vec::new();
    while !is_balanced(&split) {
        if certificates.len() >= bound {
            return Err(Error::Invariant(format!("no semistable special fiber after {bound} steps")));
        }
        let (next, cert) = langton_step(&current)?;
        let next_split = special_splitting(&next)?;
        if gap(&next_split) > gap(&split) {
            return Err(Error::Invariant("special-fiber gap increased".into()));
        }
        if generic_splitting(&next)? != generic {
            return Err(Error::Invariant("generic fiber changed".into()));
        }
        certificates.push(cert);
        trail.push(HNRecord {
            step: certificates.len(),
            special_type: next_split.clone(),
        });
        current = next;
        split = next_split;
    }
    Ok(Reduction {
        family: current,
        trail,
        certificates,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::upoly::UPoly;

    fn zs(e: i64) -> ZPoly<RatFun> {
        ZPoly::z_pow(e)
    }

    fn s_term(k: i64) -> ZPoly<RatFun> {
        ZPoly::constant(RatFun::s_pow(k))
    }

    fn fam(rows: Vec<Vec<ZPoly<RatFun>>>) -> DiskFamily {
        DiskFamily::new(ZMatrix::new(rows)).unwrap()
    }

    fn extension(k: i64, sk: i64) -> DiskFamily {
        fam(vec![vec![zs(k), s_term(sk)], vec![ZPoly::zero(), zs(-k)]])
    }

    #[test]
    fn generic_and_special_examples() {
        let d = fam(vec![vec![zs(-1), ZPoly::zero()], vec![ZPoly::zero(), zs(1)]]);
        assert_eq!(generic_splitting(&d).unwrap(), vec![1, -1]);
        let e = extension(1, 1);
        assert_eq!(generic_splitting(&e).unwrap(), vec![0, 0]);
        assert_eq!(special_splitting(&e).unwrap(), vec![1, -1]);
        let id = DiskFamily::from_scalar(&ZMatrix::identity(3)).unwrap();
        assert_eq!(generic_splitting(&id).unwrap(), vec![0, 0, 0]);
        assert_eq!(special_splitting(&extension(2, 1)).unwrap(), vec![2, -2]);
    }

    #[test]
    fn rejects_bad_families() {
        let pole = ZPoly::constant(RatFun::s_pow(-1));
        assert!(DiskFamily::new(ZMatrix::new(vec![vec![pole]])).is_err());
        let vanishing = ZPoly::constant(RatFun::s());
        assert!(matches!(
            DiskFamily::new(ZMatrix::new(vec![vec![vanishing]])),
            Err(Error::NonUnitDeterminant(_))
        ));
    }

    #[test]
    fn step_example() {
        let (next, cert) = langton_step(&extension(1, 1)).unwrap();
        assert_eq!(next, fam(vec![vec![zs(1), s_term(0)], vec![ZPoly::zero(), zs(-1)]]));
        assert_eq!(cert.delta, vec![1, 0]);
        assert_eq!(special_splitting(&next).unwrap(), vec![0, 0]);
        assert!(langton_step(&next).is_err());
        let split_generic = fam(vec![vec![zs(-1), ZPoly::zero()], vec![ZPoly::zero(), zs(1)]]);
        assert!(matches!(langton_step(&split_generic), Err(Error::Precondition(_))));
    }

    #[test]
    fn reduce_examples() {
        let r = langton_reduce(&extension(1, 1)).unwrap();
        assert_eq!(r.steps(), 1);
        assert_eq!(r.final_type(), &[0, 0]);
        let r2 = langton_reduce(&extension(2, 1)).unwrap();
        assert!(is_balanced(r2.final_type()));
        assert_eq!(langton_reduce(&r2.family).unwrap().steps(), 0);
        let balanced = DiskFamily::from_scalar(&ZMatrix::identity(2)).unwrap();
        assert_eq!(langton_reduce(&balanced).unwrap().steps(), 0);
    }

    #[test]
    fn higher_order_extension_still_reduces() {
        let r = langton_reduce(&extension(1, 2)).unwrap();
        assert_eq!(r.final_type(), &[0, 0]);
        for w in r.trail.windows(2) {
            assert!(gap(&w[1].special_type) <= gap(&w[0].special_type));
        }
    }

    #[test]
    fn rational_coefficients() {
        // off-diagonal s (1 + s) / (1 - 2 s)
        let num = UPoly::new(vec![Scalar::int(0), Scalar::int(1), Scalar::int(1)]);
        let den = UPoly::new(vec![Scalar::int(1), Scalar::int(-2)]);
        let c = ZPoly::constant(RatFun::new(num, den));
        let f = fam(vec![vec![zs(1), c], vec![ZPoly::zero(), zs(-1)]]);
        let r = langton_reduce(&f).unwrap();
        assert_eq!(r.final_type(), &[0, 0]);
        let mut cur = f.clone();
        for cert in &r.certificates {
            let (next, _) = langton_step(&cur).unwrap();
            assert!(cert.verify(&cur, &next));
            cur = next;
        }
    }
}
