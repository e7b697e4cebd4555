//! Rational functions in one variable `s` over [`Scalar`].
//!
//! These stand in for the fraction field of a discrete valuation ring with
//! uniformizer `s`; the ring itself is the subset regular at `s = 0`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::field::{Field, Ring};
use crate::scalar::Scalar;
use crate::upoly::UPoly;

/// Always reduced with a monic denominator, so equality is structural.
#[derive(Clone, PartialEq)]
pub struct RatFun {
    num: UPoly<Scalar>,
    den: UPoly<Scalar>,
}

impl RatFun {
    /// Panics on a zero denominator.
    pub fn new(num: UPoly<Scalar>, den: UPoly<Scalar>) -> Self {
        assert!(!den.is_zero(), "rational function with zero denominator");
        if num.is_zero() {
            return RatFun {
                num,
                den: UPoly::one(),
            };
        }
        let g = UPoly::gcd(&num, &den);
        let (mut n, _) = num.div_rem(&g);
        let (mut d, _) = den.div_rem(&g);
        let lead = d.lead().unwrap().clone();
        let li = lead.inverse().unwrap();
        n = n.scale(&li);
        d = d.scale(&li);
        RatFun { num: n, den: d }
    }

    pub fn poly(p: UPoly<Scalar>) -> Self {
        RatFun { num: p, den: UPoly::one() }
    }

    pub fn scalar(c: Scalar) -> Self {
        Self::poly(UPoly::constant(c))
    }

    /// The uniformizer `s`.
    pub fn s() -> Self {
        Self::poly(UPoly::x())
    }

    /// `c * s^k` for any integer `k`.
    pub fn s_pow(k: i64) -> Self {
        if k >= 0 {
            Self::poly(UPoly::monomial(Scalar::int(1), k as usize))
        } else {
            RatFun {
                num: UPoly::one(),
                den: UPoly::monomial(Scalar::int(1), (-k) as usize),
            }
        }
    }

    pub fn num(&self) -> &UPoly<Scalar> {
        &self.num
    }

    pub fn den(&self) -> &UPoly<Scalar> {
        &self.den
    }

    /// Order of vanishing at `s = 0` (`None` for zero).
    pub fn valuation(&self) -> Option<i64> {
        let ord = |p: &UPoly<Scalar>| p.coeffs().iter().position(|c| !c.is_zero()).map(|k| k as i64);
        Some(ord(&self.num)? - ord(&self.den).unwrap())
    }

    pub fn is_regular_at_zero(&self) -> bool {
        !self.den.coeff(0).is_zero()
    }

    /// Value at `s = 0`, if regular there.
    pub fn at_zero(&self) -> Option<Scalar> {
        let d0 = self.den.coeff(0);
        if d0.is_zero() {
            None
        } else {
            Some(self.num.coeff(0) / d0)
        }
    }

    /// Value at a point where the denominator does not vanish.
    pub fn eval(&self, s: &Scalar) -> Option<Scalar> {
        let d = self.den.eval(s);
        if d.is_zero() {
            None
        } else {
            Some(self.num.eval(s) / d)
        }
    }

    pub fn is_constant(&self) -> bool {
        self.num.degree().unwrap_or(0) == 0 && self.den.degree() == Some(0)
    }
}

impl Add for RatFun {
    type Output = RatFun;
    fn add(self, rhs: RatFun) -> RatFun {
        if self.den == rhs.den {
            return RatFun::new(self.num + rhs.num, self.den);
        }
        RatFun::new(
            self.num * rhs.den.clone() + rhs.num * self.den.clone(),
            self.den * rhs.den,
        )
    }
}

impl Neg for RatFun {
    type Output = RatFun;
    fn neg(self) -> RatFun {
        RatFun {
            num: -self.num,
            den: self.den,
        }
    }
}

impl Sub for RatFun {
    type Output = RatFun;
    fn sub(self, rhs: RatFun) -> RatFun {
        self + (-rhs)
    }
}

impl Mul for RatFun {
    type Output = RatFun;
    fn mul(self, rhs: RatFun) -> RatFun {
        if self.num.is_zero() || rhs.num.is_zero() {
            return RatFun::scalar(Scalar::int(0));
        }
        RatFun::new(self.num * rhs.num, self.den * rhs.den)
    }
}

impl Ring for RatFun {
    fn zero() -> Self {
        RatFun::scalar(Scalar::int(0))
    }
    fn one() -> Self {
        RatFun::scalar(Scalar::int(1))
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn from_i64(n: i64) -> Self {
        RatFun::scalar(Scalar::int(n))
    }
}

impl Field for RatFun {
    fn inv(&self) -> Option<Self> {
        if self.num.is_zero() {
            None
        } else {
            Some(RatFun::new(self.den.clone(), self.num.clone()))
        }
    }
}

impl fmt::Debug for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |p: &UPoly<Scalar>| {
            if p.is_zero() {
                return "0".to_string();
            }
            p.coeffs()
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(k, c)| match k {
                    0 => format!("({c})"),
                    1 => format!("({c})s"),
                    _ => format!("({c})s^{k}"),
                })
                .collect::<Vec<_>>()
                .join("+")
        };
        if self.den == UPoly::one() {
            write!(f, "{}", show(&self.num))
        } else {
            write!(f, "[{}]/[{}]", show(&self.num), show(&self.den))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalization_and_valuation() {
        let s = RatFun::s();
        let one = RatFun::one();
        let x = (s.clone() * s.clone() - one.clone()) * (s.clone() - one.clone()).inv().unwrap();
        assert_eq!(x, s.clone() + one.clone());
        assert_eq!(RatFun::s_pow(-2).valuation(), Some(-2));
        assert_eq!((s.clone() * (s.clone() + one.clone())).valuation(), Some(1));
        assert!(!RatFun::s_pow(-1).is_regular_at_zero());
        let r = (s.clone() + one.clone()) * (s.clone() + RatFun::from_i64(2)).inv().unwrap();
        assert_eq!(r.at_zero(), Some(Scalar::rat(1, 2)));
    }
}
