//! One-variable Laurent polynomials in `z` over an exact field, and square
//! matrices of them (transition data of bundles on P¹).

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::field::{det_ring, Field, Ring};
use crate::matrix::Matrix;

#[derive(Clone, PartialEq)]
pub struct ZPoly<F> {
    terms: BTreeMap<i64, F>,
}

impl<F: Field> ZPoly<F> {
    pub fn zero() -> Self {
        ZPoly { terms: BTreeMap::new() }
    }

    pub fn monomial(c: F, e: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        ZPoly { terms }
    }

    pub fn constant(c: F) -> Self {
        Self::monomial(c, 0)
    }

    /// `z^e`
    pub fn z_pow(e: i64) -> Self {
        Self::monomial(F::one(), e)
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (i64, F)>) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    fn add_term(&mut self, e: i64, c: F) {
        if c.is_zero() {
            return;
        }
        let next = match self.terms.remove(&e) {
            Some(v) => v + c,
            None => c,
        };
        if !next.is_zero() {
            self.terms.insert(e, next);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &F)> {
        self.terms.iter().map(|(&e, c)| (e, c))
    }

    pub fn coeff(&self, e: i64) -> F {
        self.terms.get(&e).cloned().unwrap_or_else(F::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// `Some((c, d))` when the polynomial is the single term `c z^d`.
    pub fn as_monomial(&self) -> Option<(F, i64)> {
        if self.terms.len() == 1 {
            let (&e, c) = self.terms.iter().next().unwrap();
            Some((c.clone(), e))
        } else {
            None
        }
    }

    pub fn shift(&self, k: i64) -> Self {
        ZPoly {
            terms: self.terms.iter().map(|(&e, c)| (e + k, c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &F) -> Self {
        Self::from_terms(self.terms.iter().map(|(&e, x)| (e, x.clone() * c.clone())))
    }

    pub fn eval(&self, z: &F) -> F {
        let zi = z.inv();
        let mut acc = F::zero();
        for (&e, c) in &self.terms {
            let base = if e >= 0 {
                z.clone()
            } else {
                zi.clone().expect("negative power at z = 0")
            };
            let mut p = F::one();
            for _ in 0..e.unsigned_abs() {
                p = p * base.clone();
            }
            acc = acc + c.clone() * p;
        }
        acc
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> ZPoly<G> {
        ZPoly::from_terms(self.terms.iter().map(|(&e, c)| (e, f(c))))
    }
}

impl<F: fmt::Debug> fmt::Debug for ZPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(e, c)| format!("{c:?}*z^{e}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl<F: Field> Add for ZPoly<F> {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        for (e, c) in rhs.terms {
            self.add_term(e, c);
        }
        self
    }
}

impl<F: Field> Neg for ZPoly<F> {
    type Output = Self;
    fn neg(self) -> Self {
        ZPoly {
            terms: self.terms.into_iter().map(|(e, c)| (e, -c)).collect(),
        }
    }
}

impl<F: Field> Sub for ZPoly<F> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<F: Field> Mul for ZPoly<F> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let mut out = Self::zero();
        for (&ea, ca) in &self.terms {
            for (&eb, cb) in &rhs.terms {
                out.add_term(ea + eb, ca.clone() * cb.clone());
            }
        }
        out
    }
}

impl<F: Field> Ring for ZPoly<F> {
    fn zero() -> Self {
        ZPoly::zero()
    }
    fn one() -> Self {
        ZPoly::constant(F::one())
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn from_i64(n: i64) -> Self {
        ZPoly::constant(F::from_i64(n))
    }
}

/// Square matrix with entries in `F[z, z⁻¹]`.
#[derive(Clone, PartialEq)]
pub struct ZMatrix<F> {
    n: usize,
    entries: Vec<Vec<ZPoly<F>>>,
}

impl<F: fmt::Debug> fmt::Debug for ZMatrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ZMatrix {} [", self.n)?;
        for r in &self.entries {
            writeln!(f, "  {r:?}")?;
        }
        write!(f, "]")
    }
}

impl<F: Field> ZMatrix<F> {
    /// Panics unless `entries` is square.
    pub fn new(entries: Vec<Vec<ZPoly<F>>>) -> Self {
        let n = entries.len();
        assert!(entries.iter().all(|r| r.len() == n), "transition matrix must be square");
        ZMatrix { n, entries }
    }

    pub fn try_new(entries: Vec<Vec<ZPoly<F>>>) -> Option<Self> {
        let n = entries.len();
        entries.iter().all(|r| r.len() == n).then_some(ZMatrix { n, entries })
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, |i, j| if i == j { ZPoly::constant(F::one()) } else { ZPoly::zero() })
    }

    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> ZPoly<F>) -> Self {
        ZMatrix {
            n,
            entries: (0..n).map(|i| (0..n).map(|j| f(i, j)).collect()).collect(),
        }
    }

    /// Diagonal of monomials `z^{e_i}`.
    pub fn diag_z(exps: &[i64]) -> Self {
        Self::from_fn(exps.len(), |i, j| if i == j { ZPoly::z_pow(exps[i]) } else { ZPoly::zero() })
    }

    /// Constant matrix.
    pub fn from_matrix(m: &Matrix<F>) -> Self {
        assert!(m.is_square());
        Self::from_fn(m.rows(), |i, j| ZPoly::constant(m.get(i, j).clone()))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &ZPoly<F> {
        &self.entries[i][j]
    }

    pub fn entries(&self) -> &[Vec<ZPoly<F>>] {
        &self.entries
    }

    pub fn det(&self) -> ZPoly<F> {
        det_ring(&self.entries)
    }

    /// Classical adjugate: `adj * M = det * I`.
    pub fn adjugate(&self) -> Self {
        let n = self.n;
        if n == 1 {
            return Self::identity(1);
        }
        Self::from_fn(n, |i, j| {
            // cofactor C_{ji}
            let minor: Vec<Vec<ZPoly<F>>> = (0..n)
                .filter(|&r| r != j)
                .map(|r| (0..n).filter(|&c| c != i).map(|c| self.entries[r][c].clone()).collect())
                .collect();
            let d = det_ring(&minor);
            if (i + j) % 2 == 0 {
                d
            } else {
                -d
            }
        })
    }

    /// Inverse when the determinant is a monomial unit.
    pub fn inverse(&self) -> Option<Self> {
        let (c, d) = self.det().as_monomial()?;
        let scale = c.inv()?;
        let adj = self.adjugate();
        Some(Self::from_fn(self.n, |i, j| adj.entries[i][j].shift(-d).scale(&scale)))
    }

    /// Smallest and largest z-exponent over all entries.
    pub fn exp_range(&self) -> Option<(i64, i64)> {
        let mut lo = None::<i64>;
        let mut hi = None::<i64>;
        for r in &self.entries {
            for p in r {
                if let (Some(a), Some(b)) = (p.min_exp(), p.max_exp()) {
                    lo = Some(lo.map_or(a, |x| x.min(a)));
                    hi = Some(hi.map_or(b, |x| x.max(b)));
                }
            }
        }
        lo.zip(hi)
    }

    pub fn mul_vec(&self, v: &[ZPoly<F>]) -> Vec<ZPoly<F>> {
        self.entries
            .iter()
            .map(|r| {
                r.iter()
                    .zip(v)
                    .fold(ZPoly::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect()
    }

    /// Entrywise evaluation at a nonzero `z`.
    pub fn eval(&self, z: &F) -> Matrix<F> {
        Matrix::from_fn(self.n, self.n, |i, j| self.entries[i][j].eval(z))
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G + Copy) -> ZMatrix<G> {
        ZMatrix::from_fn(self.n, |i, j| self.entries[i][j].map(f))
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.n, |i, j| self.entries[j][i].clone())
    }

    /// All entries are polynomials in `z` (no negative exponents).
    pub fn is_polynomial_in_z(&self) -> bool {
        self.exp_range().is_none_or(|(lo, _)| lo >= 0)
    }

    /// All entries are polynomials in `z⁻¹`.
    pub fn is_polynomial_in_zinv(&self) -> bool {
        self.exp_range().is_none_or(|(_, hi)| hi <= 0)
    }
}

impl<F: Field> Mul for &ZMatrix<F> {
    type Output = ZMatrix<F>;
    fn mul(self, rhs: &ZMatrix<F>) -> ZMatrix<F> {
        assert_eq!(self.n, rhs.n, "transition product dimension mismatch");
        ZMatrix::from_fn(self.n, |i, j| {
            (0..self.n).fold(ZPoly::zero(), |acc, k| {
                acc + self.entries[i][k].clone() * rhs.entries[k][j].clone()
            })
        })
    }
}

impl<F: Field> Mul for ZMatrix<F> {
    type Output = ZMatrix<F>;
    fn mul(self, rhs: ZMatrix<F>) -> ZMatrix<F> {
        &self * &rhs
    }
}
