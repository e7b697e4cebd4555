//! Integer matrices and Smith normal form.

use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct IntMatrix {
    rows: Vec<Vec<i64>>,
}

impl IntMatrix {
    pub fn new(rows: Vec<Vec<i64>>) -> Self {
        let c = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == c), "ragged integer matrix");
        IntMatrix { rows }
    }

    pub fn zeros(r: usize, c: usize) -> Self {
        IntMatrix { rows: vec![vec![0; c]; r] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.rows[i][i] = 1;
        }
        m
    }

    pub fn diag(d: &[i64]) -> Self {
        let mut m = Self::zeros(d.len(), d.len());
        for (i, &x) in d.iter().enumerate() {
            m.rows[i][i] = x;
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.rows.first().map_or(0, |r| r.len())
    }

    pub fn get(&self, r: usize, c: usize) -> i64 {
        self.rows[r][c]
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        self.rows.clone()
    }

    pub fn mul(&self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.ncols(), rhs.nrows(), "integer product dimension mismatch");
        let mut out = Self::zeros(self.nrows(), rhs.ncols());
        for i in 0..self.nrows() {
            for k in 0..self.ncols() {
                let a = self.rows[i][k];
                if a == 0 {
                    continue;
                }
                for j in 0..rhs.ncols() {
                    out.rows[i][j] += a * rhs.rows[k][j];
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> IntMatrix {
        let (r, c) = (self.nrows(), self.ncols());
        let mut out = Self::zeros(c, r);
        for i in 0..r {
            for j in 0..c {
                out.rows[j][i] = self.rows[i][j];
            }
        }
        out
    }

    /// Determinant by Bareiss elimination (exact over Z).
    pub fn det(&self) -> i64 {
        let n = self.nrows();
        assert_eq!(n, self.ncols(), "det of non-square integer matrix");
        let mut a: Vec<Vec<i128>> = self.rows.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
        let mut sign = 1i128;
        let mut prev = 1i128;
        for k in 0..n {
            let Some(p) = (k..n).find(|&i| a[i][k] != 0) else {
                return 0;
            };
            if p != k {
                a.swap(p, k);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    a[i][j] = (a[k][k] * a[i][j] - a[i][k] * a[k][j]) / prev;
                }
                a[i][k] = 0;
            }
            prev = a[k][k];
        }
        if n == 0 {
            1
        } else {
            (sign * a[n - 1][n - 1]) as i64
        }
    }

    pub fn is_diagonal(&self) -> bool {
        self.rows
            .iter()
            .enumerate()
            .all(|(i, r)| r.iter().enumerate().all(|(j, &x)| i == j || x == 0))
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        self.rows.swap(i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        for r in &mut self.rows {
            r.swap(i, j);
        }
    }

    /// row_i += f * row_j
    fn add_row(&mut self, i: usize, j: usize, f: i64) {
        for c in 0..self.ncols() {
            let v = self.rows[j][c];
            self.rows[i][c] += f * v;
        }
    }

    /// col_i += f * col_j
    fn add_col(&mut self, i: usize, j: usize, f: i64) {
        for r in &mut self.rows {
            let v = r[j];
            r[i] += f * v;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for x in &mut self.rows[i] {
            *x = -*x;
        }
    }
}

/// Result of [`smith_normal_form`]: `u * e * v == d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Smith {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl Smith {
    pub fn invariant_factors(&self) -> Vec<i64> {
        let k = self.d.nrows().min(self.d.ncols());
        (0..k).map(|i| self.d.get(i, i)).collect()
    }
}

/// Smith normal form with unimodular transforms. Diagonal entries are
/// non-negative and each divides the next.
pub fn smith_normal_form(e: &IntMatrix) -> Smith {
    let (r, c) = (e.nrows(), e.ncols());
    let mut a = e.clone();
    let mut u = IntMatrix::identity(r);
    let mut v = IntMatrix::identity(c);
    for t in 0..r.min(c) {
        loop {
            // smallest nonzero pivot in the trailing block
            let mut best: Option<(usize, usize)> = None;
            for i in t..r {
                for j in t..c {
                    let x = a.rows[i][j];
                    if x != 0 && best.is_none_or(|(bi, bj)| x.abs() < a.rows[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                return finish(u, a, v);
            };
            a.swap_rows(t, pi);
            u.swap_rows(t, pi);
            a.swap_cols(t, pj);
            v.swap_cols(t, pj);

            let p = a.rows[t][t];
            let mut dirty = false;
            for i in t + 1..r {
                let q = a.rows[i][t].div_euclid(p);
                if q != 0 {
                    a.add_row(i, t, -q);
                    u.add_row(i, t, -q);
                }
                dirty |= a.rows[i][t] != 0;
            }
            for j in t + 1..c {
                let q = a.rows[t][j].div_euclid(p);
                if q != 0 {
                    a.add_col(j, t, -q);
                    v.add_col(j, t, -q);
                }
                dirty |= a.rows[t][j] != 0;
            }
            if dirty {
                continue;
            }
            // divisibility of the trailing block
            let bad = (t + 1..r).find(|&i| (t + 1..c).any(|j| a.rows[i][j] % p != 0));
            match bad {
                Some(i) => {
                    a.add_row(t, i, 1);
                    u.add_row(t, i, 1);
                }
                None => break,
            }
        }
        if a.rows[t][t] < 0 {
            a.negate_row(t);
            u.negate_row(t);
        }
    }
    finish(u, a, v)
}

fn finish(u: IntMatrix, d: IntMatrix, v: IntMatrix) -> Smith {
    Smith { u, d, v }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn check(e: &IntMatrix) -> Smith {
        let s = smith_normal_form(e);
        assert_eq!(s.u.mul(e).mul(&s.v), s.d, "U E V = D for {e:?}");
        assert!(s.d.is_diagonal());
        assert_eq!(s.u.det().abs(), 1);
        assert_eq!(s.v.det().abs(), 1);
        let f = s.invariant_factors();
        for w in f.windows(2) {
            assert!(w[0] >= 0 && w[1] >= 0);
            if w[0] == 0 {
                assert_eq!(w[1], 0);
            } else {
                assert_eq!(w[1] % w[0], 0, "divisibility chain {f:?}");
            }
        }
        s
    }

    #[test]
    fn snf_examples() {
        let s = check(&IntMatrix::identity(3));
        assert_eq!(s.d, IntMatrix::identity(3));
        assert_eq!(s.u, IntMatrix::identity(3));
        assert_eq!(s.v, IntMatrix::identity(3));
        let s = check(&IntMatrix::diag(&[2, 3]));
        assert_eq!(s.d, IntMatrix::diag(&[1, 6]));
        let s = check(&IntMatrix::zeros(2, 3));
        assert_eq!(s.d, IntMatrix::zeros(2, 3));
    }

    #[test]
    fn snf_rectangular() {
        let e = IntMatrix::new(vec![vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
        let s = check(&e);
        assert_eq!(s.invariant_factors(), vec![2, 6, 12]);
        let col = IntMatrix::new(vec![vec![4], vec![6], vec![-10]]);
        assert_eq!(check(&col).invariant_factors(), vec![2]);
    }

    proptest! {
        #[test]
        fn snf_determinant_matches(rows in proptest::collection::vec(proptest::collection::vec(-6i64..=6, 3), 3)) {
            let e = IntMatrix::new(rows);
            let s = check(&e);
            let prod: i64 = s.invariant_factors().iter().product();
            prop_assert_eq!(prod, e.det().abs());
        }

        #[test]
        fn snf_rectangular_random(rows in proptest::collection::vec(proptest::collection::vec(-9i64..=9, 4), 2)) {
            check(&IntMatrix::new(rows));
        }
    }
}
