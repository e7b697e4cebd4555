//! Dense matrices over an exact field.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::field::Field;
use crate::scalar::Scalar;

#[derive(Clone, PartialEq)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

pub type ScalarMatrix = Matrix<Scalar>;

impl<F: fmt::Debug> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", &self.data[r * self.cols..(r + 1) * self.cols])?;
        }
        write!(f, "]")
    }
}

impl<F: Field> Matrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![F::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, F::one());
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> F) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix { rows, cols, data }
    }

    /// Panics if the rows are ragged.
    pub fn from_rows(rows: Vec<Vec<F>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged matrix rows");
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    /// Matrix whose columns are the given vectors (all of length `dim`).
    pub fn from_cols(dim: usize, cols: &[Vec<F>]) -> Self {
        Self::from_fn(dim, cols.len(), |r, c| cols[c][r].clone())
    }

    pub fn diag(entries: Vec<F>) -> Self {
        let n = entries.len();
        let mut m = Self::zeros(n, n);
        for (i, e) in entries.into_iter().enumerate() {
            m.set(i, i, e);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &F {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: F) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> Vec<F> {
        self.data[r * self.cols..(r + 1) * self.cols].to_vec()
    }

    pub fn col(&self, c: usize) -> Vec<F> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<F>> {
        (0..self.rows).map(|r| self.row(r)).collect()
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> Matrix<G> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    pub fn scale(&self, s: &F) -> Self {
        self.map(|x| x.clone() * s.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn mul_vec(&self, v: &[F]) -> Vec<F> {
        assert_eq!(v.len(), self.cols, "mul_vec dimension");
        (0..self.rows)
            .map(|r| {
                let mut acc = F::zero();
                for (c, x) in v.iter().enumerate() {
                    let a = self.get(r, c);
                    if !a.is_zero() && !x.is_zero() {
                        acc = acc + a.clone() * x.clone();
                    }
                }
                acc
            })
            .collect()
    }

    pub fn hstack(&self, rhs: &Self) -> Self {
        assert_eq!(self.rows, rhs.rows, "hstack row mismatch");
        Self::from_fn(self.rows, self.cols + rhs.cols, |r, c| {
            if c < self.cols {
                self.get(r, c).clone()
            } else {
                rhs.get(r, c - self.cols).clone()
            }
        })
    }

    pub fn vstack(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.cols, "vstack column mismatch");
        Self::from_fn(self.rows + rhs.rows, self.cols, |r, c| {
            if r < self.rows {
                self.get(r, c).clone()
            } else {
                rhs.get(r - self.rows, c).clone()
            }
        })
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self::from_fn(rows.len(), cols.len(), |r, c| self.get(rows[r], cols[c]).clone())
    }

    /// Rank by fraction-free (Bareiss) elimination.
    pub fn rank(&self) -> usize {
        self.bareiss().0
    }

    /// Determinant by fraction-free elimination; panics if not square.
    pub fn det(&self) -> F {
        assert!(self.is_square(), "det of non-square matrix");
        if self.rows == 0 {
            return F::one();
        }
        let (rank, a, sign) = self.bareiss();
        if rank < self.rows {
            return F::zero();
        }
        let d = a[self.rows - 1][self.cols - 1].clone();
        if sign {
            -d
        } else {
            d
        }
    }

    /// Returns (rank, eliminated rows, odd number of swaps).
    fn bareiss(&self) -> (usize, Vec<Vec<F>>, bool) {
        let mut a = self.to_rows();
        let mut prev = F::one();
        let mut rank = 0;
        let mut odd = false;
        for col in 0..self.cols {
            if rank == self.rows {
                break;
            }
            let Some(p) = (rank..self.rows).find(|&r| !a[r][col].is_zero()) else {
                continue;
            };
            if p != rank {
                a.swap(p, rank);
                odd = !odd;
            }
            let inv_prev = prev.inv().expect("Bareiss pivot is nonzero");
            for i in rank + 1..self.rows {
                let factor = a[i][col].clone();
                for j in col + 1..self.cols {
                    let v = a[rank][col].clone() * a[i][j].clone() - factor.clone() * a[rank][j].clone();
                    a[i][j] = v * inv_prev.clone();
                }
                a[i][col] = F::zero();
            }
            prev = a[rank][col].clone();
            rank += 1;
        }
        (rank, a, odd)
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut a = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !a.get(i, c).is_zero()) else {
                continue;
            };
            a.swap_rows(p, r);
            let inv = a.get(r, c).inv().unwrap();
            for j in 0..self.cols {
                let v = a.get(r, j).clone() * inv.clone();
                a.set(r, j, v);
            }
            for i in 0..self.rows {
                if i == r || a.get(i, c).is_zero() {
                    continue;
                }
                let f = a.get(i, c).clone();
                for j in 0..self.cols {
                    let v = a.get(i, j).clone() - f.clone() * a.get(r, j).clone();
                    a.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (a, pivots)
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(i * self.cols + c, j * self.cols + c);
        }
    }

    /// Basis of the right kernel, one vector per free column, in column order.
    pub fn nullspace(&self) -> Vec<Vec<F>> {
        let (r, pivots) = self.rref();
        let mut out = Vec::new();
        for free in 0..self.cols {
            if pivots.contains(&free) {
                continue;
            }
            let mut v = vec![F::zero(); self.cols];
            v[free] = F::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -r.get(row, free).clone();
            }
            out.push(v);
        }
        out
    }

    pub fn inverse(&self) -> Option<Self> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let (r, pivots) = self.hstack(&Self::identity(n)).rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(Self::from_fn(n, n, |i, j| r.get(i, n + j).clone()))
    }

    /// Some solution of `self * x = b`, if any.
    pub fn solve(&self, b: &[F]) -> Option<Vec<F>> {
        assert_eq!(b.len(), self.rows);
        let aug = self.hstack(&Matrix::from_cols(self.rows, &[b.to_vec()]));
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![F::zero(); self.cols];
        for (row, &pc) in pivots.iter().enumerate() {
            x[pc] = r.get(row, self.cols).clone();
        }
        Some(x)
    }

    /// Indices of a maximal set of linearly independent columns, chosen greedily
    /// from the left.
    pub fn independent_columns(&self) -> Vec<usize> {
        self.rref().1
    }
}

impl Matrix<Scalar> {
    pub fn conj(&self) -> Self {
        self.map(|x| x.conj())
    }

    pub fn ints(rows: Vec<Vec<i64>>) -> Self {
        Self::from_rows(rows.into_iter().map(|r| r.into_iter().map(Scalar::int).collect()).collect())
    }
}

impl<F: Field> Mul for &Matrix<F> {
    type Output = Matrix<F>;
    fn mul(self, rhs: &Matrix<F>) -> Matrix<F> {
        assert_eq!(self.cols, rhs.rows, "matrix product dimension mismatch");
        let mut out: Matrix<F> = Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let v = out.get(i, j).clone() + a.clone() * b.clone();
                    out.set(i, j, v);
                }
            }
        }
        out
    }
}

impl<F: Field> Mul for Matrix<F> {
    type Output = Matrix<F>;
    fn mul(self, rhs: Matrix<F>) -> Matrix<F> {
        &self * &rhs
    }
}

impl<F: Field> Add for &Matrix<F> {
    type Output = Matrix<F>;
    fn add(self, rhs: &Matrix<F>) -> Matrix<F> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "matrix sum dimension mismatch");
        Matrix::from_fn(self.rows, self.cols, |r, c| self.get(r, c).clone() + rhs.get(r, c).clone())
    }
}

impl<F: Field> Add for Matrix<F> {
    type Output = Matrix<F>;
    fn add(self, rhs: Matrix<F>) -> Matrix<F> {
        &self + &rhs
    }
}

impl<F: Field> Neg for Matrix<F> {
    type Output = Matrix<F>;
    fn neg(self) -> Matrix<F> {
        self.map(|x| -x.clone())
    }
}

impl<F: Field> Sub for &Matrix<F> {
    type Output = Matrix<F>;
    fn sub(self, rhs: &Matrix<F>) -> Matrix<F> {
        self + &(-rhs.clone())
    }
}

impl<F: Field> Sub for Matrix<F> {
    type Output = Matrix<F>;
    fn sub(self, rhs: Matrix<F>) -> Matrix<F> {
        &self - &rhs
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(x: &str) -> Scalar {
        x.parse().unwrap()
    }

    #[test]
    fn rank_examples() {
        assert_eq!(ScalarMatrix::identity(3).rank(), 3);
        assert_eq!(ScalarMatrix::zeros(2, 5).rank(), 0);
        let m = Matrix::from_rows(vec![vec![s("1"), s("i")], vec![s("-i"), s("1")]]);
        assert_eq!(m.rank(), 1);
        assert_eq!(m.det(), s("0"));
    }

    #[test]
    fn det_and_inverse() {
        let m = Matrix::from_rows(vec![
            vec![s("2"), s("1+i"), s("0")],
            vec![s("0"), s("1"), s("i")],
            vec![s("1"), s("0"), s("3")],
        ]);
        // 2(3 - 0) - (1+i)(0 - i) + 0 = 6 + i(1+i) = 5 + i
        assert_eq!(m.det(), s("5+i"));
        let inv = m.inverse().unwrap();
        assert_eq!(&m * &inv, ScalarMatrix::identity(3));
        let sing = ScalarMatrix::ints(vec![vec![1, 2], vec![2, 4]]);
        assert!(sing.inverse().is_none());
        assert_eq!(sing.det(), s("0"));
        let swap = ScalarMatrix::ints(vec![vec![0, 1], vec![1, 0]]);
        assert_eq!(swap.det(), s("-1"));
    }

    #[test]
    fn nullspace_and_solve() {
        let m = ScalarMatrix::ints(vec![vec![1, 2, 3], vec![2, 4, 6]]);
        let ns = m.nullspace();
        assert_eq!(ns.len(), 2);
        for v in &ns {
            assert!(m.mul_vec(v).iter().all(|x| x.is_zero()));
        }
        let x = m.solve(&[s("1"), s("2")]).unwrap();
        assert_eq!(m.mul_vec(&x), vec![s("1"), s("2")]);
        assert!(m.solve(&[s("1"), s("3")]).is_none());
    }
}
