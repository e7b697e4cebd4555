//! Exact scalars: Gaussian rationals Q(i) and cyclotomic fields Q(ζ_n).
//!
//! Values of different cyclotomic orders never mix. A Gaussian value can
//! enter a cyclotomic computation of order `n` when `4 | n` (then `i = ζ^{n/4}`)
//! or when it is rational; any other combination panics, and input parsers
//! check orders up front so the panic is unreachable from the CLI.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::Error;
use crate::field;
use crate::upoly::UPoly;

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qf(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Φ_n with rational coefficients.
pub fn cyclotomic_polynomial(n: u32) -> UPoly<Q> {
    assert!(n >= 1, "cyclotomic order must be positive");
    let mut num = UPoly::monomial(q(1), n as usize) - UPoly::one();
    for d in 1..n {
        if n % d == 0 {
            num = num.div_rem(&cyclotomic_polynomial(d)).0;
        }
    }
    num
}

/// Element of Q(ζ_n) stored as a polynomial in ζ of degree < φ(n).
#[derive(Clone, Debug)]
pub struct Cyclo {
    order: u32,
    modulus: Arc<UPoly<Q>>,
    value: UPoly<Q>,
}

impl Cyclo {
    fn from_poly(order: u32, modulus: Arc<UPoly<Q>>, p: UPoly<Q>) -> Self {
        let value = p.div_rem(&modulus).1;
        Cyclo { order, modulus, value }
    }

    pub fn new(order: u32, coeffs: Vec<Q>) -> Result<Self, Error> {
        if order == 0 {
            return Err(Error::Parse("cyclotomic order must be positive".into()));
        }
        let modulus = Arc::new(cyclotomic_polynomial(order));
        let phi = modulus.degree().unwrap();
        if coeffs.len() > phi {
            return Err(Error::Parse(format!(
                "order {order} takes at most {phi} coefficients, got {}",
                coeffs.len()
            )));
        }
        Ok(Self::from_poly(order, modulus, UPoly::new(coeffs)))
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// Coefficients in the power basis 1, ζ, …, ζ^{φ(n)-1}, padded to φ(n).
    pub fn coeffs(&self) -> Vec<Q> {
        let phi = self.modulus.degree().unwrap();
        (0..phi).map(|k| self.value.coeff(k)).collect()
    }

    fn with(&self, p: UPoly<Q>) -> Self {
        Self::from_poly(self.order, self.modulus.clone(), p)
    }

    fn embed_rational(&self, r: &Q) -> Self {
        self.with(UPoly::constant(r.clone()))
    }

    fn conj(&self) -> Self {
        let n = self.order as usize;
        let mut acc = UPoly::zero();
        for (k, c) in self.value.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            acc = acc + UPoly::monomial(c.clone(), (n - k % n) % n);
        }
        self.with(acc)
    }
}

impl PartialEq for Cyclo {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.value == other.value
    }
}

#[derive(Clone, Debug)]
pub enum Scalar {
    Gaussian { re: Q, im: Q },
    Cyclotomic(Cyclo),
}

enum Pair {
    G((Q, Q), (Q, Q)),
    C(Cyclo, Cyclo),
}

impl Scalar {
    pub fn int(n: i64) -> Self {
        Scalar::Gaussian { re: q(n), im: q(0) }
    }

    pub fn rat(n: i64, d: i64) -> Self {
        Scalar::Gaussian { re: qf(n, d), im: q(0) }
    }

    pub fn from_q(re: Q) -> Self {
        Scalar::Gaussian { re, im: q(0) }
    }

    pub fn gauss(re: Q, im: Q) -> Self {
        Scalar::Gaussian { re, im }
    }

    /// `a + b i` with integer parts.
    pub fn gi(a: i64, b: i64) -> Self {
        Scalar::Gaussian { re: q(a), im: q(b) }
    }

    pub fn i() -> Self {
        Self::gi(0, 1)
    }

    /// A primitive n-th root of unity in Q(ζ_n).
    pub fn zeta(order: u32) -> Self {
        let c = Cyclo::new(order, vec![]).unwrap();
        let z = c.with(UPoly::monomial(q(1), 1));
        Scalar::Cyclotomic(z)
    }

    pub fn cyclotomic(order: u32, coeffs: Vec<Q>) -> Result<Self, Error> {
        Cyclo::new(order, coeffs).map(Scalar::Cyclotomic)
    }

    /// Cyclotomic order, `None` for Gaussian values.
    pub fn order(&self) -> Option<u32> {
        match self {
            Scalar::Gaussian { .. } => None,
            Scalar::Cyclotomic(c) => Some(c.order),
        }
    }

    /// Real and imaginary parts when the value lies in Q(i).
    pub fn to_gaussian(&self) -> Option<(Q, Q)> {
        match self {
            Scalar::Gaussian { re, im } => Some((re.clone(), im.clone())),
            Scalar::Cyclotomic(c) => {
                let n = c.order;
                if c.value.degree().unwrap_or(0) == 0 {
                    return Some((c.value.coeff(0), q(0)));
                }
                if n % 4 != 0 {
                    return None;
                }
                // re = (c + c̄)/2, im = (c − c̄)/(2 ζ^{n/4}); both must be rational
                let zi = Scalar::Cyclotomic(c.with(UPoly::monomial(q(1), (n / 4) as usize)));
                let me = Scalar::Cyclotomic(c.clone());
                let half = Scalar::rat(1, 2);
                let re = (me.clone() + me.conj()) * half.clone();
                let im = (me.clone() - me.conj()) * half / zi;
                let rational = |x: &Scalar| match x {
                    Scalar::Cyclotomic(c) if c.value.degree().unwrap_or(0) == 0 => Some(c.value.coeff(0)),
                    _ => None,
                };
                Some((rational(&re)?, rational(&im)?))
            }
        }
    }

    pub fn conj(&self) -> Self {
        match self {
            Scalar::Gaussian { re, im } => Scalar::Gaussian {
                re: re.clone(),
                im: -im.clone(),
            },
            Scalar::Cyclotomic(c) => Scalar::Cyclotomic(c.conj()),
        }
    }

    /// `|s|^2 = s * conj(s)`.
    pub fn norm_sq(&self) -> Scalar {
        self.clone() * self.conj()
    }

    pub fn is_real(&self) -> bool {
        *self == self.conj()
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Gaussian { re, im } => re.is_zero() && im.is_zero(),
            Scalar::Cyclotomic(c) => c.value.is_zero(),
        }
    }

    /// Rational value when the scalar is rational.
    pub fn to_rational(&self) -> Option<Q> {
        match self.to_gaussian() {
            Some((re, im)) if im.is_zero() => Some(re),
            _ => None,
        }
    }

    pub fn pow(&self, e: i64) -> Option<Scalar> {
        let base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut b = base;
        let mut acc = self.one_like();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * b.clone();
            }
            b = b.clone() * b;
            e >>= 1;
        }
        Some(acc)
    }

    /// The multiplicative identity in the same field as `self`.
    pub fn one_like(&self) -> Scalar {
        match self {
            Scalar::Gaussian { .. } => Scalar::int(1),
            Scalar::Cyclotomic(c) => Scalar::Cyclotomic(c.embed_rational(&q(1))),
        }
    }

    pub fn inverse(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        match self {
            Scalar::Gaussian { re, im } => {
                let n = re.clone() * re.clone() + im.clone() * im.clone();
                Some(Scalar::Gaussian {
                    re: re.clone() / n.clone(),
                    im: -im.clone() / n,
                })
            }
            Scalar::Cyclotomic(c) => {
                let (g, s, _) = UPoly::ext_gcd(&c.value, &c.modulus);
                debug_assert_eq!(g, UPoly::one());
                Some(Scalar::Cyclotomic(c.with(s)))
            }
        }
    }

    /// Whether two scalars may be combined arithmetically.
    pub fn compatible(&self, other: &Scalar) -> bool {
        match (self, other) {
            (Scalar::Gaussian { .. }, Scalar::Gaussian { .. }) => true,
            (Scalar::Cyclotomic(a), Scalar::Cyclotomic(b)) => a.order == b.order,
            (Scalar::Gaussian { im, .. }, Scalar::Cyclotomic(c))
            | (Scalar::Cyclotomic(c), Scalar::Gaussian { im, .. }) => {
                im.is_zero() || c.order % 4 == 0
            }
        }
    }

    fn embed_into(re: &Q, im: &Q, c: &Cyclo) -> Cyclo {
        if im.is_zero() {
            return c.embed_rational(re);
        }
        assert!(
            c.order % 4 == 0,
            "cannot combine a non-real Gaussian value with cyclotomic order {}",
            c.order
        );
        let p = UPoly::constant(re.clone()) + UPoly::monomial(im.clone(), (c.order / 4) as usize);
        c.with(p)
    }

    fn unify(a: &Scalar, b: &Scalar) -> Pair {
        match (a, b) {
            (Scalar::Gaussian { re: ar, im: ai }, Scalar::Gaussian { re: br, im: bi }) => {
                Pair::G((ar.clone(), ai.clone()), (br.clone(), bi.clone()))
            }
            (Scalar::Cyclotomic(x), Scalar::Cyclotomic(y)) => {
                assert!(
                    x.order == y.order,
                    "mixed cyclotomic orders {} and {}",
                    x.order,
                    y.order
                );
                Pair::C(x.clone(), y.clone())
            }
            (Scalar::Gaussian { re, im }, Scalar::Cyclotomic(y)) => {
                Pair::C(Self::embed_into(re, im, y), y.clone())
            }
            (Scalar::Cyclotomic(x), Scalar::Gaussian { re, im }) => {
                Pair::C(x.clone(), Self::embed_into(re, im, x))
            }
        }
    }

    fn add_ref(&self, rhs: &Scalar) -> Scalar {
        match Self::unify(self, rhs) {
            Pair::G((a, b), (c, d)) => Scalar::Gaussian { re: a + c, im: b + d },
            Pair::C(x, y) => {
                let v = x.value.clone() + y.value;
                Scalar::Cyclotomic(x.with(v))
            }
        }
    }

    fn mul_ref(&self, rhs: &Scalar) -> Scalar {
        match Self::unify(self, rhs) {
            Pair::G((a, b), (c, d)) => Scalar::Gaussian {
                re: a.clone() * c.clone() - b.clone() * d.clone(),
                im: a * d + b * c,
            },
            Pair::C(x, y) => {
                let v = x.value.clone() * y.value;
                Scalar::Cyclotomic(x.with(v))
            }
        }
    }

    fn neg_ref(&self) -> Scalar {
        match self {
            Scalar::Gaussian { re, im } => Scalar::Gaussian {
                re: -re.clone(),
                im: -im.clone(),
            },
            Scalar::Cyclotomic(c) => Scalar::Cyclotomic(c.with(-c.value.clone())),
        }
    }
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Scalar::Gaussian { re: a, im: b }, Scalar::Gaussian { re: c, im: d }) => a == c && b == d,
            (Scalar::Cyclotomic(x), Scalar::Cyclotomic(y)) => x == y,
            (Scalar::Gaussian { re, im }, Scalar::Cyclotomic(c))
            | (Scalar::Cyclotomic(c), Scalar::Gaussian { re, im }) => {
                if !im.is_zero() && c.order % 4 != 0 {
                    return false;
                }
                Self::embed_into(re, im, c) == *c
            }
        }
    }
}

impl Eq for Scalar {}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::int(0)
    }
}

macro_rules! scalar_binop {
    ($tr:ident, $m:ident, $body:expr) => {
        impl $tr<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                let f: fn(&Scalar, &Scalar) -> Scalar = $body;
                f(self, rhs)
            }
        }
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                (&self).$m(rhs)
            }
        }
        impl $tr<Scalar> for &Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                self.$m(&rhs)
            }
        }
    };
}

scalar_binop!(Add, add, |a, b| a.add_ref(b));
scalar_binop!(Sub, sub, |a, b| a.add_ref(&b.neg_ref()));
scalar_binop!(Mul, mul, |a, b| a.mul_ref(b));
scalar_binop!(Div, div, |a, b| {
    a.mul_ref(&b.inverse().expect("division by zero scalar"))
});

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.neg_ref()
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.neg_ref()
    }
}

impl field::Ring for Scalar {
    fn zero() -> Self {
        Scalar::int(0)
    }
    fn one() -> Self {
        Scalar::int(1)
    }
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
    fn from_i64(n: i64) -> Self {
        Scalar::int(n)
    }
}

impl field::Field for Scalar {
    fn inv(&self) -> Option<Self> {
        self.inverse()
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::int(n)
    }
}

pub fn fmt_q(r: &Q) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Gaussian encoding `a/b+c/d*i` with zero parts omitted.
pub fn format_gaussian(re: &Q, im: &Q) -> String {
    let imag = |x: &Q| -> String {
        if x.is_one() {
            "i".to_string()
        } else if (-x.clone()).is_one() {
            "-i".to_string()
        } else {
            format!("{}*i", fmt_q(x))
        }
    };
    match (re.is_zero(), im.is_zero()) {
        (true, true) => "0".into(),
        (false, true) => fmt_q(re),
        (true, false) => imag(im),
        (false, false) => {
            let s = imag(im);
            if im.is_negative() {
                format!("{}{}", fmt_q(re), s)
            } else {
                format!("{}+{}", fmt_q(re), s)
            }
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Gaussian { re, im } => write!(f, "{}", format_gaussian(re, im)),
            Scalar::Cyclotomic(c) => {
                let parts: Vec<String> = c.coeffs().iter().map(fmt_q).collect();
                write!(f, "Q(z{})[{}]", c.order, parts.join(", "))
            }
        }
    }
}

fn parse_q(s: &str) -> Result<Q, Error> {
    let t = s.trim().trim_start_matches('+');
    Q::from_str(t).map_err(|_| Error::Parse(format!("bad rational '{s}'")))
}

impl FromStr for Scalar {
    type Err = Error;

    /// Parses `a/b`, `c/d*i`, `i`, `a/b+c/d*i`, `a-i` and similar.
    fn from_str(s: &str) -> Result<Self, Error> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if t.is_empty() {
            return Err(Error::Parse("empty scalar".into()));
        }
        if !t.ends_with('i') {
            return Ok(Scalar::from_q(parse_q(&t)?));
        }
        let body = &t[..t.len() - 1];
        let body = body.strip_suffix('*').unwrap_or(body);
        // split off the imaginary coefficient at the last sign not at position 0
        // and not directly after a '/'
        let bytes = body.as_bytes();
        let mut split = 0;
        for k in (1..bytes.len()).rev() {
            if (bytes[k] == b'+' || bytes[k] == b'-') && bytes[k - 1] != b'/' {
                split = k;
                break;
            }
        }
        let (re_s, im_s) = body.split_at(split);
        let im = match im_s {
            "" | "+" => q(1),
            "-" => q(-1),
            x => parse_q(x)?,
        };
        let re = if re_s.is_empty() { q(0) } else { parse_q(re_s)? };
        Ok(Scalar::Gaussian { re, im })
    }
}

/// Total order used only to make outputs deterministic; it has no algebraic meaning.
pub fn canonical_cmp(a: &Scalar, b: &Scalar) -> Ordering {
    match (a, b) {
        (Scalar::Gaussian { re: a, im: b }, Scalar::Gaussian { re: c, im: d }) => {
            a.cmp(c).then(b.cmp(d))
        }
        (Scalar::Gaussian { .. }, Scalar::Cyclotomic(_)) => Ordering::Less,
        (Scalar::Cyclotomic(_), Scalar::Gaussian { .. }) => Ordering::Greater,
        (Scalar::Cyclotomic(x), Scalar::Cyclotomic(y)) => x
            .order
            .cmp(&y.order)
            .then_with(|| x.coeffs().cmp(&y.coeffs())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(x: &str) -> Scalar {
        x.parse().unwrap()
    }

    #[test]
    fn conj_examples() {
        assert_eq!(Scalar::i().conj(), s("-i"));
        assert_eq!(Scalar::rat(2, 3).conj(), Scalar::rat(2, 3));
        let z8 = Scalar::zeta(8);
        assert_eq!(z8.conj(), z8.pow(7).unwrap());
        assert_eq!(z8.conj().conj(), z8);
    }

    #[test]
    fn parse_and_format() {
        for (inp, out) in [
            ("0", "0"),
            ("-1/2", "-1/2"),
            ("i", "i"),
            ("-i", "-i"),
            ("3/4*i", "3/4*i"),
            ("1+i", "1+i"),
            ("1/2-3/4*i", "1/2-3/4*i"),
            ("-1/2+2*i", "-1/2+2*i"),
            ("2 - i", "2-i"),
            ("-3/2-1/3*i", "-3/2-1/3*i"),
            ("4/2", "2"),
        ] {
            assert_eq!(s(inp).to_string(), out, "input {inp}");
        }
        assert!("1/0".parse::<Scalar>().is_err());
        assert!("".parse::<Scalar>().is_err());
        assert!("x".parse::<Scalar>().is_err());
    }

    #[test]
    fn gaussian_embeds_in_order_four() {
        let z4 = Scalar::zeta(4);
        assert_eq!(z4, Scalar::i());
        assert_eq!(Scalar::i(), z4);
        let mixed = Scalar::gi(2, 3) * Scalar::zeta(8);
        assert_eq!(mixed.order(), Some(8));
        // ζ_8^2 = i
        assert_eq!(Scalar::zeta(8).pow(2).unwrap(), Scalar::i());
        assert_eq!(
            Scalar::cyclotomic(4, vec![q(1), q(-2)]).unwrap().to_gaussian(),
            Some((q(1), q(-2)))
        );
    }

    #[test]
    fn cyclotomic_roots_of_unity() {
        for n in [3u32, 5, 6, 7, 12] {
            let z = Scalar::zeta(n);
            assert!(z.pow(n as i64).unwrap() == Scalar::int(1), "order {n}");
            assert!(z.pow(1).unwrap() != Scalar::int(1));
            assert_eq!(z.clone() * z.inverse().unwrap(), Scalar::int(1));
            assert_eq!(z.conj() * z, Scalar::int(1));
        }
        assert_eq!(cyclotomic_polynomial(6), UPoly::new(vec![q(1), q(-1), q(1)]));
    }

    #[test]
    #[should_panic(expected = "mixed cyclotomic orders")]
    fn mixed_orders_rejected() {
        let _ = Scalar::zeta(3) + Scalar::zeta(5);
    }

    #[test]
    fn compatibility() {
        assert!(Scalar::int(2).compatible(&Scalar::zeta(3)));
        assert!(!Scalar::i().compatible(&Scalar::zeta(3)));
        assert!(Scalar::i().compatible(&Scalar::zeta(12)));
    }

    #[test]
    fn division_by_zero_is_none() {
        assert!(Scalar::int(0).inverse().is_none());
        assert!(Scalar::cyclotomic(5, vec![]).unwrap().inverse().is_none());
    }
}
