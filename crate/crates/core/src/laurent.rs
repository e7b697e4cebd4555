//! Multivariate Laurent polynomials over [`Scalar`]: the group algebra of Z^a.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::field::Ring;
use crate::scalar::Scalar;

/// Exponent vectors are stored with trailing zeros trimmed, so constants are
/// shared between ranks and the zero polynomial has no terms.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<Vec<i64>, Scalar>,
}

fn trim(mut e: Vec<i64>) -> Vec<i64> {
    while e.last() == Some(&0) {
        e.pop();
    }
    e
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Scalar) -> Self {
        Self::monomial(vec![], c)
    }

    pub fn monomial(exp: Vec<i64>, c: Scalar) -> Self {
        let mut p = Self::zero();
        p.add_term(exp, c);
        p
    }

    /// The generator `t_{j+1}` (zero-based `j`).
    pub fn var(j: usize) -> Self {
        let mut e = vec![0; j + 1];
        e[j] = 1;
        Self::monomial(e, Scalar::int(1))
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Vec<i64>, Scalar)>) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    fn add_term(&mut self, exp: Vec<i64>, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let e = trim(exp);
        match self.terms.get_mut(&e) {
            Some(v) => {
                let s = v.clone() + c;
                if s.is_zero() {
                    self.terms.remove(&e);
                } else {
                    *v = s;
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i64>, &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Number of variables actually used.
    pub fn support_rank(&self) -> usize {
        self.terms.keys().map(|e| e.len()).max().unwrap_or(0)
    }

    /// Units of the group algebra are exactly the monomials with nonzero coefficient.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn has_integer_coefficients(&self) -> bool {
        self.terms.values().all(|c| {
            c.to_rational()
                .is_some_and(|r| r.is_integer())
        })
    }

    /// Evaluation at a character `ρ`: `t_j ↦ ρ_j`.
    pub fn eval(&self, rho: &[Scalar]) -> Result<Scalar> {
        if let Some(j) = rho.iter().position(|r| r.is_zero()) {
            return Err(Error::ZeroCharacter(j));
        }
        if self.support_rank() > rho.len() {
            return Err(Error::Dimension(format!(
                "polynomial uses {} variables, character has {}",
                self.support_rank(),
                rho.len()
            )));
        }
        let mut acc = Scalar::int(0);
        for (e, c) in &self.terms {
            let mut m = c.clone();
            for (j, &k) in e.iter().enumerate() {
                if k != 0 {
                    m = m * rho[j].pow(k).expect("nonzero component");
                }
            }
            acc = acc + m;
        }
        Ok(acc)
    }

    /// Substitution `t_j ↦ ζ_j · Π_k s_k^{E[j][k]}`, giving a Laurent polynomial in the `s_k`.
    pub fn substitute(&self, zeta: &[Scalar], exps: &[Vec<i64>]) -> Result<LaurentPoly> {
        if let Some(j) = zeta.iter().position(|r| r.is_zero()) {
            return Err(Error::ZeroCharacter(j));
        }
        if zeta.len() != exps.len() || self.support_rank() > zeta.len() {
            return Err(Error::Dimension("substitution data does not match variable count".into()));
        }
        let b = exps.iter().map(|r| r.len()).max().unwrap_or(0);
        let mut out = LaurentPoly::zero();
        for (e, c) in &self.terms {
            let mut coeff = c.clone();
            let mut new_e = vec![0i64; b];
            for (j, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                coeff = coeff * zeta[j].pow(k).expect("nonzero translation");
                for (col, &ejk) in exps[j].iter().enumerate() {
                    new_e[col] += k * ejk;
                }
            }
            out.add_term(new_e, coeff);
        }
        Ok(out)
    }

    /// Exponent vectors padded to `rank` variables.
    pub fn padded_terms(&self, rank: usize) -> Vec<(Vec<i64>, Scalar)> {
        self.terms
            .iter()
            .map(|(e, c)| {
                let mut v = e.clone();
                v.resize(rank.max(v.len()), 0);
                (v, c.clone())
            })
            .collect()
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(mut self, rhs: LaurentPoly) -> LaurentPoly {
        for (e, c) in rhs.terms {
            self.add_term(e, c);
        }
        self
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.into_iter().map(|(e, c)| (e, -c)).collect(),
        }
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: LaurentPoly) -> LaurentPoly {
        self + (-rhs)
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let n = ea.len().max(eb.len());
                let e: Vec<i64> = (0..n)
                    .map(|k| ea.get(k).copied().unwrap_or(0) + eb.get(k).copied().unwrap_or(0))
                    .collect();
                out.add_term(e, ca.clone() * cb.clone());
            }
        }
        out
    }
}

impl Ring for LaurentPoly {
    fn zero() -> Self {
        LaurentPoly::zero()
    }
    fn one() -> Self {
        LaurentPoly::constant(Scalar::int(1))
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn from_i64(n: i64) -> Self {
        LaurentPoly::constant(Scalar::int(n))
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mono: Vec<String> = e
                    .iter()
                    .enumerate()
                    .filter(|(_, &k)| k != 0)
                    .map(|(j, &k)| if k == 1 { format!("t{}", j + 1) } else { format!("t{}^{}", j + 1, k) })
                    .collect();
                if mono.is_empty() {
                    format!("({c})")
                } else {
                    format!("({c})*{}", mono.join("*"))
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Matrix over the group algebra, stored row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct LaurentMatrix {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<LaurentPoly>>,
}

impl LaurentMatrix {
    pub fn new(entries: Vec<Vec<LaurentPoly>>) -> Result<Self> {
        let rows = entries.len();
        let cols = entries.first().map_or(0, |r| r.len());
        if entries.iter().any(|r| r.len() != cols) {
            return Err(Error::Dimension("ragged Laurent matrix".into()));
        }
        Ok(LaurentMatrix { rows, cols, entries })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        LaurentMatrix {
            rows,
            cols,
            entries: vec![vec![LaurentPoly::zero(); cols]; rows],
        }
    }

    /// Entrywise evaluation at a character.
    pub fn eval(&self, rho: &[Scalar]) -> Result<crate::matrix::ScalarMatrix> {
        let mut rows = Vec::with_capacity(self.rows);
        for r in &self.entries {
            rows.push(r.iter().map(|p| p.eval(rho)).collect::<Result<Vec<_>>>()?);
        }
        Ok(if self.rows == 0 {
            crate::matrix::ScalarMatrix::zeros(0, self.cols)
        } else {
            crate::matrix::ScalarMatrix::from_rows(rows)
        })
    }

    /// All `k × k` minors, ordered lexicographically by (row set, column set).
    pub fn minors(&self, k: usize) -> Result<Vec<LaurentPoly>> {
        let hi = self.rows.min(self.cols);
        if k == 0 || k > hi {
            return Err(Error::OutOfRange {
                what: "minor size",
                value: k as i64,
                lo: 1,
                hi: hi as i64,
            });
        }
        let row_sets = combinations(self.rows, k);
        let col_sets = combinations(self.cols, k);
        let mut out = Vec::with_capacity(row_sets.len() * col_sets.len());
        for rs in &row_sets {
            for cs in &col_sets {
                let sub: Vec<Vec<LaurentPoly>> = rs
                    .iter()
                    .map(|&r| cs.iter().map(|&c| self.entries[r][c].clone()).collect())
                    .collect();
                out.push(crate::field::det_ring(&sub));
            }
        }
        Ok(out)
    }
}

/// k-subsets of 0..n in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(x: &str) -> Scalar {
        x.parse().unwrap()
    }

    fn t(j: usize) -> LaurentPoly {
        LaurentPoly::var(j)
    }

    fn c(n: i64) -> LaurentPoly {
        LaurentPoly::from_i64(n)
    }

    fn tinv(j: usize) -> LaurentPoly {
        let mut e = vec![0; j + 1];
        e[j] = -1;
        LaurentPoly::monomial(e, Scalar::int(1))
    }

    #[test]
    fn eval_examples() {
        assert_eq!((t(0) - c(1)).eval(&[s("1")]).unwrap(), s("0"));
        assert_eq!((t(0) * tinv(1)).eval(&[s("2"), s("1+i")]).unwrap(), s("1-i"));
        assert_eq!(c(1).eval(&[s("3"), s("i")]).unwrap(), s("1"));
        assert_eq!(c(1).eval(&[s("0")]), Err(Error::ZeroCharacter(0)));
    }

    #[test]
    fn minors_examples() {
        let id = LaurentMatrix::new(vec![vec![c(1), c(0)], vec![c(0), c(1)]]).unwrap();
        assert_eq!(id.minors(2).unwrap(), vec![c(1)]);
        let a = LaurentMatrix::new(vec![vec![t(0) - c(1)]]).unwrap();
        assert_eq!(a.minors(1).unwrap(), vec![t(0) - c(1)]);
        let b = LaurentMatrix::new(vec![vec![t(0), c(1)], vec![c(1), tinv(0)]]).unwrap();
        assert_eq!(b.minors(2).unwrap(), vec![c(0)]);
        assert!(b.minors(3).is_err());
        assert!(b.minors(0).is_err());
    }

    #[test]
    fn minor_order_is_lexicographic() {
        // 2x3 matrix with distinct generic entries
        let m = LaurentMatrix::new(vec![
            vec![c(1), c(2), c(3)],
            vec![c(4), c(5), c(7)],
        ])
        .unwrap();
        let ms = m.minors(2).unwrap();
        // column sets {0,1}, {0,2}, {1,2}
        assert_eq!(ms, vec![c(5 - 8), c(7 - 12), c(14 - 15)]);
        let ones = m.minors(1).unwrap();
        assert_eq!(ones, vec![c(1), c(2), c(3), c(4), c(5), c(7)]);
    }

    #[test]
    fn units_are_monomials() {
        assert!(t(0).is_unit());
        assert!((t(0) * tinv(1) * c(3)).is_unit());
        assert!(!(t(0) - c(1)).is_unit());
        assert!(!LaurentPoly::zero().is_unit());
    }

    #[test]
    fn substitution_into_subtorus() {
        let p = t(0) - c(1);
        let e = vec![vec![0], vec![1]];
        assert!(p.substitute(&[s("1"), s("1")], &e).unwrap().is_zero());
        assert_eq!(p.substitute(&[s("-1"), s("1")], &e).unwrap(), c(-2));
        assert_eq!(
            p.substitute(&[s("i"), s("1")], &e).unwrap(),
            LaurentPoly::constant(s("-1+i"))
        );
    }

    #[test]
    fn combinations_count() {
        assert_eq!(combinations(5, 2).len(), 10);
        assert_eq!(combinations(3, 3), vec![vec![0, 1, 2]]);
        assert!(combinations(2, 3).is_empty());
    }
}
