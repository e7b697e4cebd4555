//! Splitting types of vector bundles on P¹.
//!
//! A bundle of rank `n` is given by an `n × n` transition matrix `G(z)` with
//! entries in `F[z, z⁻¹]` and unit determinant. A global section is a pair
//! `(f₀, f_∞)` with `f₀ ∈ F[z]ⁿ`, `f_∞ ∈ F[z⁻¹]ⁿ` and `f_∞ = G f₀`. Under this
//! convention the line bundle O(a) has transition `z^{-a}` and
//! `h⁰(O(a)) = max(0, a + 1)`.
//!
//! The splitting type is read off from the dimensions `h⁰(B(m))` over a window
//! of twists; a constructive factorization `G = A · D · C` is offered as an
//! optional certificate.

use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::Matrix;
use crate::par;
use crate::zpoly::{ZMatrix, ZPoly};

#[derive(Clone, Debug, PartialEq)]
pub struct P1Bundle<F> {
    transition: ZMatrix<F>,
    inverse: ZMatrix<F>,
    det_exp: i64,
}

impl<F: Field> P1Bundle<F> {
    pub fn new(transition: ZMatrix<F>) -> Result<Self> {
        let det = transition.det();
        let Some((_, det_exp)) = det.as_monomial() else {
            return Err(Error::NonUnitDeterminant(format!("{det:?}")));
        };
        let inverse = transition
            .inverse()
            .ok_or_else(|| Error::Invariant("monomial determinant but no inverse".into()))?;
        Ok(P1Bundle {
            transition,
            inverse,
            det_exp,
        })
    }

    pub fn rank(&self) -> usize {
        self.transition.n()
    }

    pub fn transition(&self) -> &ZMatrix<F> {
        &self.transition
    }

    /// Exponent `d` in `det G = c z^d`.
    pub fn det_exponent(&self) -> i64 {
        self.det_exp
    }

    /// Largest absolute z-exponent occurring in `G` or `G⁻¹`; every splitting
    /// exponent lies in `[-bound, bound]`.
    pub fn degree_bound(&self) -> i64 {
        let span = |m: &ZMatrix<F>| m.exp_range().map_or(0, |(lo, hi)| lo.abs().max(hi.abs()));
        span(&self.transition).max(span(&self.inverse))
    }

    /// Degree cap for sections of `B(m)`: `f₀ = G⁻¹ f_∞` with `f_∞` of
    /// z-degree at most `m`.
    fn section_degree(&self, m: i64) -> i64 {
        let hi_inv = self.inverse.exp_range().map_or(0, |(_, hi)| hi);
        m + hi_inv
    }

    /// Linear system whose kernel is `H⁰(B(m))`; unknowns are the coefficients
    /// `v[k][j]` of `z^k e_j` for `0 ≤ k ≤ deg`.
    fn section_system(&self, m: i64) -> Option<(Matrix<F>, i64)> {
        let deg = self.section_degree(m);
        if deg < 0 {
            return None;
        }
        let n = self.rank();
        let (_, hi) = self.transition.exp_range().unwrap_or((0, 0));
        // exponents of G v range up to hi + deg; constrain those above m
        let top = hi + deg;
        let unknowns = n * (deg as usize + 1);
        let mut rows: Vec<Vec<F>> = Vec::new();
        for i in 0..n {
            for e in (m + 1)..=top {
                let mut row = vec![F::zero(); unknowns];
                let mut any = false;
                for j in 0..n {
                    for (l, c) in self.transition.get(i, j).terms() {
                        let k = e - l;
                        if (0..=deg).contains(&k) {
                            row[k as usize * n + j] = c.clone();
                            any = true;
                        }
                    }
                }
                if any {
                    rows.push(row);
                }
            }
        }
        let mat = if rows.is_empty() {
            Matrix::zeros(0, unknowns)
        } else {
            Matrix::from_rows(rows)
        };
        Some((mat, deg))
    }

    /// `dim H⁰(B ⊗ O(m))`.
    pub fn h0_twist(&self, m: i64) -> usize {
        match self.section_system(m) {
            None => 0,
            Some((mat, _)) => mat.cols() - mat.rank(),
        }
    }

    /// Basis of `H⁰(B ⊗ O(m))` as polynomial vectors `f₀(z)`.
    pub fn sections(&self, m: i64) -> Vec<Vec<ZPoly<F>>> {
        let Some((mat, deg)) = self.section_system(m) else {
            return Vec::new();
        };
        let n = self.rank();
        mat.nullspace()
            .into_iter()
            .map(|v| {
                (0..n)
                    .map(|j| ZPoly::from_terms((0..=deg).map(|k| (k, v[k as usize * n + j].clone()))))
                    .collect()
            })
            .collect()
    }

    /// Grothendieck splitting type `a₁ ≥ … ≥ a_n`.
    pub fn splitting_type(&self) -> Result<Vec<i64>> {
        let bound = self.degree_bound();
        // h(m) for m in [-bound-1, bound+1]
        let lo = -bound - 1;
        let dims: Vec<usize> = par::map_range(lo..bound + 2, |m| self.h0_twist(m));
        let h = |m: i64| dims[(m - lo) as usize] as i64;
        if h(lo) != 0 {
            return Err(Error::Invariant(format!("h0(B({lo})) = {} but must vanish", h(lo))));
        }
        // #{a_i >= k} = h(-k) - h(-k-1)
        let count_ge = |k: i64| -> i64 {
            if k > bound {
                0
            } else {
                h(-k) - h(-k - 1)
            }
        };
        let mut out = Vec::with_capacity(self.rank());
        for k in (-bound..=bound).rev() {
            let mult = count_ge(k) - count_ge(k + 1);
            if mult < 0 {
                return Err(Error::Invariant("negative multiplicity in h0 differences".into()));
            }
            out.extend(std::iter::repeat_n(k, mult as usize));
        }
        if out.len() != self.rank() {
            return Err(Error::Invariant(format!(
                "recovered {} exponents for rank {}",
                out.len(),
                self.rank()
            )));
        }
        if out.iter().sum::<i64>() != -self.det_exp {
            return Err(Error::Invariant("splitting exponents do not sum to -deg det".into()));
        }
        Ok(out)
    }

    /// Constructive factorization `G = A · D · C`; see [`Certificate`].
    pub fn factorization_certificate(&self) -> Option<Certificate<F>> {
        let split = self.splitting_type().ok()?;
        let n = self.rank();
        let mut chosen: Vec<Vec<ZPoly<F>>> = Vec::with_capacity(n);
        let mut idx = 0;
        while idx < n {
            let a = split[idx];
            let mult = split.iter().filter(|&&x| x == a).count();
            let candidates = self.sections(-a);
            let mut got = 0;
            for cand in candidates {
                if got == mult {
                    break;
                }
                let mut trial = chosen.clone();
                trial.push(cand);
                if independent_over_fz(&trial) {
                    chosen = trial;
                    got += 1;
                }
            }
            if got < mult {
                return None;
            }
            idx += mult;
        }
        let cinv = ZMatrix::from_fn(n, |i, j| chosen[j][i].clone());
        let c = cinv.inverse()?;
        if !c.is_polynomial_in_z() || !cinv.is_polynomial_in_z() {
            return None;
        }
        let a = &(&self.transition * &cinv) * &ZMatrix::diag_z(&split);
        if !a.is_polynomial_in_zinv() {
            return None;
        }
        let d_exps: Vec<i64> = split.iter().map(|x| -x).collect();
        let cert = Certificate { a, d_exps, c };
        cert.verify(&self.transition).then_some(cert)
    }
}

/// `G = A · diag(z^{d_i}) · C` with `A ∈ GL_n(F[z⁻¹])` and `C ∈ GL_n(F[z])`.
/// The splitting type is `-d_i`.
#[derive(Clone, Debug, PartialEq)]
pub struct Certificate<F> {
    pub a: ZMatrix<F>,
    pub d_exps: Vec<i64>,
    pub c: ZMatrix<F>,
}

impl<F: Field> Certificate<F> {
    pub fn d(&self) -> ZMatrix<F> {
        ZMatrix::diag_z(&self.d_exps)
    }

    pub fn splitting(&self) -> Vec<i64> {
        self.d_exps.iter().map(|x| -x).collect()
    }

    /// Re-multiplies and checks both chart conditions.
    pub fn verify(&self, g: &ZMatrix<F>) -> bool {
        let unit_const = |m: &ZMatrix<F>| m.det().as_monomial().is_some_and(|(_, e)| e == 0);
        self.a.is_polynomial_in_zinv()
            && self.c.is_polynomial_in_z()
            && unit_const(&self.a)
            && unit_const(&self.c)
            && &(&self.a * &self.d()) * &self.c == *g
    }
}

/// Linear independence of polynomial vectors over the field of rational
/// functions `F(z)`: some maximal minor is a nonzero polynomial of degree at
/// most `k · maxdeg`, so it cannot vanish at `k · maxdeg + 1` distinct points.
pub fn independent_over_fz<F: Field>(vectors: &[Vec<ZPoly<F>>]) -> bool {
    let k = vectors.len();
    if k == 0 {
        return true;
    }
    let n = vectors[0].len();
    if k > n {
        return false;
    }
    let maxdeg = vectors
        .iter()
        .flat_map(|v| v.iter().filter_map(|p| p.max_exp()))
        .max()
        .unwrap_or(0)
        .max(0);
    let points = k as i64 * maxdeg + 1;
    (1..=points).any(|t| {
        let z = F::from_i64(t);
        let m = Matrix::from_fn(n, k, |r, c| vectors[c][r].eval(&z));
        m.rank() == k
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Scalar;

    fn z(e: i64) -> ZPoly<Scalar> {
        ZPoly::z_pow(e)
    }

    fn zero() -> ZPoly<Scalar> {
        ZPoly::zero()
    }

    fn bundle(rows: Vec<Vec<ZPoly<Scalar>>>) -> P1Bundle<Scalar> {
        P1Bundle::new(ZMatrix::new(rows)).unwrap()
    }

    #[test]
    fn h0_examples() {
        let id = P1Bundle::new(ZMatrix::<Scalar>::identity(3)).unwrap();
        assert_eq!(id.h0_twist(0), 3);
        assert_eq!(bundle(vec![vec![z(-1)]]).h0_twist(0), 2);
        assert_eq!(bundle(vec![vec![z(1)]]).h0_twist(0), 0);
        assert_eq!(bundle(vec![vec![z(-3)]]).h0_twist(-2), 2);
    }

    #[test]
    fn splitting_examples() {
        let id = P1Bundle::new(ZMatrix::<Scalar>::identity(2)).unwrap();
        assert_eq!(id.splitting_type().unwrap(), vec![0, 0]);
        let d = bundle(vec![vec![z(-2), zero()], vec![zero(), z(1)]]);
        assert_eq!(d.splitting_type().unwrap(), vec![2, -1]);
        let ext = bundle(vec![vec![z(1), z(0)], vec![zero(), z(-1)]]);
        assert_eq!(ext.splitting_type().unwrap(), vec![0, 0]);
    }

    #[test]
    fn worked_factorization_oracle() {
        // [[z,1],[0,z^-1]] · [[0,1],[1,-z]] = [[1, 0],[z^-1, -1]], invertible over F[z^-1]
        let g = ZMatrix::new(vec![vec![z(1), z(0)], vec![zero(), z(-1)]]);
        let r = ZMatrix::new(vec![vec![zero(), z(0)], vec![z(0), -z(1)]]);
        let prod = &g * &r;
        assert!(prod.is_polynomial_in_zinv());
        assert_eq!(prod.det().as_monomial().unwrap().1, 0);
        let cert = P1Bundle::new(g.clone()).unwrap().factorization_certificate().unwrap();
        assert_eq!(cert.d_exps, vec![0, 0]);
        assert!(cert.verify(&g));
    }

    #[test]
    fn diagonal_certificate() {
        let g = ZMatrix::<Scalar>::diag_z(&[-1, -1]);
        let cert = P1Bundle::new(g.clone()).unwrap().factorization_certificate().unwrap();
        assert_eq!(cert.d(), g);
        assert!(cert.verify(&g));
        assert_eq!(cert.splitting(), vec![1, 1]);
    }

    #[test]
    fn non_unit_determinant_rejected() {
        let g = ZMatrix::new(vec![vec![z(0) + z(1)]]);
        assert!(matches!(P1Bundle::new(g), Err(Error::NonUnitDeterminant(_))));
        let sing = ZMatrix::new(vec![vec![z(0), z(0)], vec![z(0), z(0)]]);
        assert!(P1Bundle::new(sing).is_err());
    }

    #[test]
    fn twist_count_matches_splitting() {
        let g = ZMatrix::new(vec![
            vec![z(2), z(0) + z(1), zero()],
            vec![zero(), z(-1), z(-2)],
            vec![zero(), zero(), z(0)],
        ]);
        let b = P1Bundle::new(g).unwrap();
        let a = b.splitting_type().unwrap();
        assert_eq!(a.iter().sum::<i64>(), -b.det_exponent());
        for m in -4..=4 {
            let expect: i64 = a.iter().map(|ai| (ai + m + 1).max(0)).sum();
            assert_eq!(b.h0_twist(m) as i64, expect, "m = {m}");
        }
    }

    #[test]
    fn independence_over_function_field() {
        let v1 = vec![z(0), z(1)];
        let v2 = vec![z(1), z(2)];
        assert!(!independent_over_fz(&[v1.clone(), v2]));
        let v3 = vec![z(0), zero()];
        assert!(independent_over_fz(&[v1, v3]));
    }
}
