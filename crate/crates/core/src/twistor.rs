//! Quaternionic linear algebra and the twistor line of a quaternionic vector
//! space.
//!
//! `W = C^{2r}` carries `I` (multiplication by `i`) and the antilinear
//! `J(v) = J_m · conj(v)` with `J² = -1`. Real-linear maps of `W` are stored as
//! pairs `(A, B)` acting by `v ↦ A v + B conj(v)`.
//!
//! The twistor line is modelled as `O(1)^{2r}` with sections `a + b λ` and the
//! antiholomorphic involution `σ(a + b λ) = -J(b) + J(a) λ` covering the
//! antipodal map `λ ↦ -1/λ̄`.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::birkhoff::P1Bundle;
use crate::error::{Error, Result};
use crate::matrix::{Matrix, ScalarMatrix};
use crate::scalar::{Scalar, Q};
use crate::zpoly::{ZMatrix, ZPoly};

/// `v ↦ A v + B conj(v)`.
#[derive(Clone, Debug, PartialEq)]
pub struct RealOp {
    pub a: ScalarMatrix,
    pub b: ScalarMatrix,
}

impl RealOp {
    pub fn new(a: ScalarMatrix, b: ScalarMatrix) -> Self {
        assert!(a.is_square() && a.rows() == b.rows() && a.cols() == b.cols());
        RealOp { a, b }
    }

    pub fn complex_linear(a: ScalarMatrix) -> Self {
        let n = a.rows();
        RealOp::new(a, ScalarMatrix::zeros(n, n))
    }

    pub fn identity(n: usize) -> Self {
        Self::complex_linear(ScalarMatrix::identity(n))
    }

    pub fn dim(&self) -> usize {
        self.a.rows()
    }

    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        let vb: Vec<Scalar> = v.iter().map(|x| x.conj()).collect();
        self.a
            .mul_vec(v)
            .into_iter()
            .zip(self.b.mul_vec(&vb))
            .map(|(x, y)| x + y)
            .collect()
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &RealOp) -> RealOp {
        RealOp {
            a: &(&self.a * &other.a) + &(&self.b * &other.b.conj()),
            b: &(&self.a * &other.b) + &(&self.b * &other.a.conj()),
        }
    }

    pub fn add(&self, other: &RealOp) -> RealOp {
        RealOp {
            a: &self.a + &other.a,
            b: &self.b + &other.b,
        }
    }

    pub fn scale_real(&self, t: &Q) -> RealOp {
        let s = Scalar::from_q(t.clone());
        RealOp {
            a: self.a.scale(&s),
            b: self.b.scale(&s),
        }
    }

    pub fn neg(&self) -> RealOp {
        self.scale_real(&-Q::one())
    }

    /// Complex-linear matrix `[[A, B], [B̄, Ā]]` on `(v, v̄)` coordinates.
    pub fn doubled(&self) -> ScalarMatrix {
        let top = self.a.hstack(&self.b);
        let bottom = self.b.conj().hstack(&self.a.conj());
        top.vstack(&bottom)
    }

    fn from_doubled(d: &ScalarMatrix) -> RealOp {
        let n = d.rows() / 2;
        let lo: Vec<usize> = (0..n).collect();
        let hi: Vec<usize> = (n..2 * n).collect();
        RealOp {
            a: d.submatrix(&lo, &lo),
            b: d.submatrix(&lo, &hi),
        }
    }

    pub fn inverse(&self) -> Option<RealOp> {
        self.doubled().inverse().map(|d| Self::from_doubled(&d))
    }

    /// Real dimension of the kernel; equals the complex kernel dimension of
    /// the doubled matrix.
    pub fn real_kernel_dim(&self) -> usize {
        let d = self.doubled();
        d.cols() - d.rank()
    }

    /// Real matrix in coordinates `(Re v, Im v)`. Needs Gaussian entries.
    pub fn real_matrix(&self) -> Option<Matrix<Q>> {
        let n = self.dim();
        // v = x + i y: A v + B v̄ = (A + B) x + i (A - B) y
        let m = &self.a + &self.b;
        let k = (&self.a - &self.b).scale(&Scalar::i());
        let mut out = Matrix::zeros(2 * n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                let (mr, mi) = m.get(r, c).to_gaussian()?;
                let (kr, ki) = k.get(r, c).to_gaussian()?;
                out.set(r, c, mr);
                out.set(r + n, c, mi);
                out.set(r, c + n, kr);
                out.set(r + n, c + n, ki);
            }
        }
        Some(out)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct QuaternionicSpace {
    r: usize,
    j: ScalarMatrix,
}

impl QuaternionicSpace {
    /// Validates `J_m · conj(J_m) = -1` on `C^{2r}`.
    pub fn new(r: usize, j: ScalarMatrix) -> Result<Self> {
        let n = 2 * r;
        if j.rows() != n || j.cols() != n {
            return Err(Error::Dimension(format!(
                "J must be {n}x{n} for quaternionic rank {r}, got {}x{}",
                j.rows(),
                j.cols()
            )));
        }
        let sq = &j * &j.conj();
        if sq != -ScalarMatrix::identity(n) {
            return Err(Error::Quaternionic("J_m conj(J_m) is not -1".into()));
        }
        Ok(QuaternionicSpace { r, j })
    }

    /// `J_m` block diagonal in copies of `[[0, -1], [1, 0]]`.
    pub fn standard(r: usize) -> Self {
        let n = 2 * r;
        let j = ScalarMatrix::from_fn(n, n, |a, b| {
            if a % 2 == 0 && b == a + 1 {
                Scalar::int(-1)
            } else if a % 2 == 1 && b + 1 == a {
                Scalar::int(1)
            } else {
                Scalar::int(0)
            }
        });
        QuaternionicSpace::new(r, j).expect("standard structure is valid")
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn complex_dim(&self) -> usize {
        2 * self.r
    }

    pub fn j_matrix(&self) -> &ScalarMatrix {
        &self.j
    }

    pub fn op_i(&self) -> RealOp {
        RealOp::complex_linear(ScalarMatrix::identity(self.complex_dim()).scale(&Scalar::i()))
    }

    pub fn op_j(&self) -> RealOp {
        let n = self.complex_dim();
        RealOp::new(ScalarMatrix::zeros(n, n), self.j.clone())
    }

    pub fn op_k(&self) -> RealOp {
        self.op_i().compose(&self.op_j())
    }

    pub fn apply_j(&self, v: &[Scalar]) -> Vec<Scalar> {
        self.op_j().apply(v)
    }

    /// `I² = J² = K² = -1` and `IJ = -JI` as operator identities.
    pub fn check_relations(&self) -> bool {
        let minus = RealOp::identity(self.complex_dim()).neg();
        let (i, j, k) = (self.op_i(), self.op_j(), self.op_k());
        i.compose(&i) == minus
            && j.compose(&j) == minus
            && k.compose(&k) == minus
            && i.compose(&j) == j.compose(&i).neg()
    }

    /// `x I + y J + z K`.
    pub fn combination(&self, p: &SpherePoint) -> RealOp {
        self.op_i()
            .scale_real(&p.x)
            .add(&self.op_j().scale_real(&p.y))
            .add(&self.op_k().scale_real(&p.z))
    }

    /// `I_λ = q⁻¹ I q` with `q = 1 - uK + vJ`, built from the quaternion units.
    pub fn structure_at(&self, lambda: &Scalar) -> Result<RealOp> {
        let (u, v) = gaussian_parts(lambda)?;
        let q = RealOp::identity(self.complex_dim())
            .add(&self.op_k().scale_real(&-u))
            .add(&self.op_j().scale_real(&v));
        self.conjugate_i(&q)
    }

    /// The same operator through `q = 1 - iλJ`, assembled directly as the
    /// pair `(1, -iλ J_m)`.
    pub fn structure_at_closed(&self, lambda: &Scalar) -> Result<RealOp> {
        gaussian_parts(lambda)?;
        let coef = -(Scalar::i() * lambda.clone());
        let q = RealOp::new(ScalarMatrix::identity(self.complex_dim()), self.j.scale(&coef));
        self.conjugate_i(&q)
    }

    /// `I_∞ = -I`.
    pub fn structure_at_infinity(&self) -> RealOp {
        self.op_i().neg()
    }

    fn conjugate_i(&self, q: &RealOp) -> Result<RealOp> {
        let qi = q
            .inverse()
            .ok_or_else(|| Error::Invariant("1 - iλJ is singular".into()))?;
        Ok(qi.compose(&self.op_i()).compose(q))
    }
}

fn gaussian_parts(lambda: &Scalar) -> Result<(Q, Q)> {
    lambda
        .to_gaussian()
        .ok_or_else(|| Error::Precondition(format!("λ = {lambda} is not in Q(i)")))
}

/// Rational point of the unit sphere.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpherePoint {
    pub x: Q,
    pub y: Q,
    pub z: Q,
}

impl SpherePoint {
    pub fn new(x: Q, y: Q, z: Q) -> Result<Self> {
        let n = x.clone() * x.clone() + y.clone() * y.clone() + z.clone() * z.clone();
        if !n.is_one() {
            return Err(Error::Precondition(format!("({x}, {y}, {z}) is not on the unit sphere")));
        }
        Ok(SpherePoint { x, y, z })
    }

    pub fn antipode(&self) -> SpherePoint {
        SpherePoint {
            x: -self.x.clone(),
            y: -self.y.clone(),
            z: -self.z.clone(),
        }
    }
}

/// `None` stands for `λ = ∞`.
pub fn stereographic(lambda: Option<&Scalar>) -> Result<SpherePoint> {
    let Some(l) = lambda else {
        return Ok(SpherePoint {
            x: -Q::one(),
            y: Q::zero(),
            z: Q::zero(),
        });
    };
    let (u, v) = gaussian_parts(l)?;
    let n = u.clone() * u.clone() + v.clone() * v.clone();
    let d = Q::one() + n.clone();
    let two = Q::from_integer(2.into());
    Ok(SpherePoint {
        x: (Q::one() - n) / d.clone(),
        y: two.clone() * u / d.clone(),
        z: two * v / d,
    })
}

/// `λ = (y + i z) / (1 + x)`; `None` at the point `(-1, 0, 0)`.
pub fn inverse_stereographic(p: &SpherePoint) -> Option<Scalar> {
    let d = Q::one() + p.x.clone();
    if d.is_zero() {
        return None;
    }
    Some(Scalar::gauss(p.y.clone() / d.clone(), p.z.clone() / d))
}

/// `-1/λ̄`, with `0 ↔ ∞`.
pub fn antipodal(lambda: Option<&Scalar>) -> Option<Scalar> {
    let l = lambda?;
    l.conj().inverse().map(|x| -x)
}

/// Section `λ ↦ a + b λ` of `O(1)^{2r}` in the chart at `0`.
#[derive(Clone, Debug, PartialEq)]
pub struct SectionO1 {
    pub a: Vec<Scalar>,
    pub b: Vec<Scalar>,
}

impl SectionO1 {
    pub fn eval(&self, lambda: &Scalar) -> Vec<Scalar> {
        self.a
            .iter()
            .zip(&self.b)
            .map(|(x, y)| x.clone() + y.clone() * lambda.clone())
            .collect()
    }

    /// Value in the chart at `∞` (`b + a μ` at `μ = 0`).
    pub fn at_infinity(&self) -> Vec<Scalar> {
        self.b.clone()
    }
}

impl QuaternionicSpace {
    pub fn sigma_section(&self, s: &SectionO1) -> SectionO1 {
        SectionO1 {
            a: self.apply_j(&s.b).into_iter().map(|x| -x).collect(),
            b: self.apply_j(&s.a),
        }
    }

    pub fn is_sigma_invariant(&self, s: &SectionO1) -> bool {
        self.sigma_section(s) == *s
    }

    /// `a + J(a) λ`.
    pub fn invariant_section(&self, a: Vec<Scalar>) -> SectionO1 {
        let b = self.apply_j(&a);
        SectionO1 { a, b }
    }

    /// The σ-invariant section taking the value `v` at `λ₀` (`None` = ∞).
    pub fn invariant_section_through(&self, v: &[Scalar], lambda0: Option<&Scalar>) -> Result<SectionO1> {
        let n = self.complex_dim();
        if v.len() != n {
            return Err(Error::Dimension(format!("vector of length {} in C^{n}", v.len())));
        }
        let a = match lambda0 {
            // b = J(a) = v, so a = -J(v)
            None => self.apply_j(v).into_iter().map(|x| -x).collect(),
            Some(l) => {
                // a + λ₀ J_m conj(a) = v
                let op = RealOp::new(ScalarMatrix::identity(n), self.j.scale(l));
                let inv = op
                    .inverse()
                    .ok_or_else(|| Error::Invariant("evaluation of invariant sections is singular".into()))?;
                inv.apply(v)
            }
        };
        let s = self.invariant_section(a);
        let hit = match lambda0 {
            None => s.at_infinity(),
            Some(l) => s.eval(l),
        };
        if hit != v {
            return Err(Error::Invariant("invariant section misses the prescribed value".into()));
        }
        Ok(s)
    }

    /// Real dimension of the σ-fixed sections inside all `(a, b) ∈ W²`.
    pub fn invariant_sections_real_dim(&self) -> usize {
        let n = self.complex_dim();
        let z = ScalarMatrix::zeros(n, n);
        // σ(a, b) = (-J_m b̄, J_m ā) as a real-linear map of C^{2n}
        let b = z.hstack(&-self.j.clone()).vstack(&self.j.hstack(&z));
        let sigma = RealOp::new(ScalarMatrix::zeros(2 * n, 2 * n), b);
        sigma.add(&RealOp::identity(2 * n).neg()).real_kernel_dim()
    }

    /// The twistor line of `W` as a bundle on P¹.
    ///
    /// Over `λ` the `-i` eigenspace of `I_λ` on `W ⊗ C = C^{2n}` is
    /// `q(λ)⁻¹ (0 ⊕ C^n) = {(iλ J_m w, w)}`, a copy of `O(-1)^n`. The bundle is
    /// the quotient of the trivial `C^{2n}` by it, with coordinates
    /// `x - iλ J_m y` near `0` and `μ x - i J_m y` near `∞`.
    pub fn twistor_bundle(&self) -> Result<P1Bundle<Scalar>> {
        let n = self.complex_dim();
        let i = Scalar::i();
        let ij = self.j.scale(&i);
        // eigenframe check at sample points
        for l in [Scalar::int(0), Scalar::int(1), Scalar::i(), Scalar::gi(1, 1), Scalar::rat(2, 3)] {
            let d = self.structure_at_closed(&l)?.doubled();
            let top = ij.scale(&l);
            let frame = top.vstack(&ScalarMatrix::identity(n));
            if frame.rank() != n || &d * &frame != frame.scale(&-Scalar::i()) {
                return Err(Error::Invariant(format!("eigenframe of I_λ degenerate at λ = {l}")));
            }
        }
        let minus_ij = ij.map(|x| -x.clone());
        // P0(z) = [1 | -iJ z],  P∞(z) = [z⁻¹ | -iJ]
        let p0: Vec<Vec<ZPoly<Scalar>>> = (0..n)
            .map(|r| {
                (0..2 * n)
                    .map(|c| {
                        if c < n {
                            ZPoly::constant(Scalar::int((r == c) as i64))
                        } else {
                            ZPoly::monomial(minus_ij.get(r, c - n).clone(), 1)
                        }
                    })
                    .collect()
            })
            .collect();
        let pinf: Vec<Vec<ZPoly<Scalar>>> = (0..n)
            .map(|r| {
                (0..2 * n)
                    .map(|c| {
                        if c < n {
                            ZPoly::monomial(Scalar::int((r == c) as i64), -1)
                        } else {
                            ZPoly::constant(minus_ij.get(r, c - n).clone())
                        }
                    })
                    .collect()
            })
            .collect();
        // P0 has the constant right inverse [1; 0], so G = P∞ [1; 0]
        let g = ZMatrix::from_fn(n, |r, c| pinf[r][c].clone());
        for r in 0..n {
            for c in 0..2 * n {
                let lhs = (0..n).fold(ZPoly::zero(), |acc, k| acc + g.get(r, k).clone() * p0[k][c].clone());
                if lhs != pinf[r][c] {
                    return Err(Error::Invariant("quotient coordinates do not glue".into()));
                }
            }
        }
        P1Bundle::new(g)
    }
}

/// Dimension of the space of symmetric real-bilinear `B : W × W → W'` with
/// `B(Av, w) = A B(v, w)` for `A = I, J` (`quaternionic = true`) or `A = I`
/// alone, where `W = H^r`, `W' = H^{r'}` carry the standard structure.
pub fn quaternionic_sff_space(r: usize, r_prime: usize, quaternionic: bool) -> usize {
    let src = QuaternionicSpace::standard(r);
    let dst = QuaternionicSpace::standard(r_prime);
    let mut ops = vec![(src.op_i(), dst.op_i())];
    if quaternionic {
        ops.push((src.op_j(), dst.op_j()));
    }
    let real = |o: &RealOp| o.real_matrix().expect("standard structure is Gaussian");
    let ops: Vec<(Matrix<Q>, Matrix<Q>)> = ops.iter().map(|(a, b)| (real(a), real(b))).collect();
    let n = 4 * r;
    let m = 4 * r_prime;
    let pairs = n * (n + 1) / 2;
    let unknown = |c: usize, a: usize, b: usize| {
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        // index of (lo, hi) among pairs with lo ≤ hi
        let p = lo * n - lo * (lo + 1) / 2 + hi;
        c * pairs + p
    };
    let cols = m * pairs;
    let mut echelon = SparseEchelon::default();
    for (sa, ta) in &ops {
        for a in 0..n {
            for b in 0..n {
                for c in 0..m {
                    // Σ_k A_{ka} B^c_{kb} - Σ_k A'_{ck} B^k_{ab} = 0
                    let mut row: BTreeMap<usize, Q> = BTreeMap::new();
                    for k in 0..n {
                        let coef = sa.get(k, a);
                        if !coef.is_zero() {
                            *row.entry(unknown(c, k, b)).or_insert_with(Q::zero) += coef;
                        }
                    }
                    for k in 0..m {
                        let coef = ta.get(c, k);
                        if !coef.is_zero() {
                            *row.entry(unknown(k, a, b)).or_insert_with(Q::zero) -= coef;
                        }
                    }
                    echelon.insert(row);
                }
            }
        }
    }
    cols - echelon.rank()
}

/// Incremental row echelon form over Q for sparse rows. The constraint
/// systems above have ±1 entries and stay sparse, where dense fraction-free
/// elimination would not.
#[derive(Default)]
struct SparseEchelon {
    /// Pivot column ↦ row whose smallest column is the pivot, with entry 1.
    pivots: BTreeMap<usize, BTreeMap<usize, Q>>,
}

impl SparseEchelon {
    fn insert(&mut self, mut row: BTreeMap<usize, Q>) {
        row.retain(|_, v| !v.is_zero());
        while let Some((&col, lead)) = row.iter().next() {
            let Some(p) = self.pivots.get(&col) else {
                let inv = lead.recip();
                for v in row.values_mut() {
                    *v *= &inv;
                }
                self.pivots.insert(col, row);
                return;
            };
            let f = lead.clone();
            for (&k, v) in p {
                let e = row.entry(k).or_insert_with(Q::zero);
                *e -= &f * v;
                if e.is_zero() {
                    row.remove(&k);
                }
            }
        }
    }

    fn rank(&self) -> usize {
        self.pivots.len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random;
    use crate::scalar::qf;

    fn v(xs: &[&str]) -> Vec<Scalar> {
        xs.iter().map(|x| x.parse().unwrap()).collect()
    }

    fn sp(x: (i64, i64), y: (i64, i64), z: (i64, i64)) -> SpherePoint {
        SpherePoint::new(qf(x.0, x.1), qf(y.0, y.1), qf(z.0, z.1)).unwrap()
    }

    #[test]
    fn stereographic_examples() {
        assert_eq!(stereographic(Some(&Scalar::int(0))).unwrap(), sp((1, 1), (0, 1), (0, 1)));
        assert_eq!(stereographic(Some(&Scalar::int(1))).unwrap(), sp((0, 1), (1, 1), (0, 1)));
        assert_eq!(stereographic(Some(&Scalar::i())).unwrap(), sp((0, 1), (0, 1), (1, 1)));
        assert_eq!(stereographic(None).unwrap(), sp((-1, 1), (0, 1), (0, 1)));
        let l = Scalar::gi(2, -3);
        assert_eq!(inverse_stereographic(&stereographic(Some(&l)).unwrap()), Some(l));
        assert_eq!(inverse_stereographic(&stereographic(None).unwrap()), None);
    }

    #[test]
    fn rejects_bad_j() {
        let not_q = ScalarMatrix::ints(vec![vec![0, 1], vec![1, 0]]);
        assert!(matches!(QuaternionicSpace::new(1, not_q), Err(Error::Quaternionic(_))));
        assert!(matches!(
            QuaternionicSpace::new(2, ScalarMatrix::identity(2)),
            Err(Error::Dimension(_))
        ));
    }

    #[test]
    fn quaternion_relations() {
        for r in 1..=3 {
            assert!(QuaternionicSpace::standard(r).check_relations());
        }
        // a non-standard J: conjugate the standard one by a complex-linear map
        let p = ScalarMatrix::from_rows(vec![v(&["1", "i"]), v(&["0", "2"])]);
        let j0 = QuaternionicSpace::standard(1).j_matrix().clone();
        let j = &(&p.inverse().unwrap() * &j0) * &p.conj();
        let qs = QuaternionicSpace::new(1, j).unwrap();
        assert!(qs.check_relations());
    }

    #[test]
    fn structure_examples() {
        let q = QuaternionicSpace::standard(1);
        assert_eq!(q.structure_at(&Scalar::int(0)).unwrap(), q.op_i());
        assert_eq!(q.structure_at(&Scalar::int(1)).unwrap(), q.op_j());
        assert_eq!(q.structure_at(&Scalar::i()).unwrap(), q.op_k());
    }

    #[test]
    fn structure_forms_agree_and_square_to_minus_one() {
        let mut rng = random::rng(11);
        let q = QuaternionicSpace::standard(2);
        let minus = RealOp::identity(4).neg();
        for _ in 0..10 {
            let l = random::gaussian(&mut rng);
            let a = q.structure_at(&l).unwrap();
            assert_eq!(a, q.structure_at_closed(&l).unwrap());
            assert_eq!(a, q.combination(&stereographic(Some(&l)).unwrap()));
            assert_eq!(a.compose(&a), minus);
        }
    }

    #[test]
    fn antipode_gives_conjugate_structure() {
        let q = QuaternionicSpace::standard(1);
        for l in [Scalar::i(), -Scalar::i(), Scalar::gi(1, 1), Scalar::gi(2, -1), Scalar::int(3)] {
            let anti = antipodal(Some(&l)).unwrap();
            assert_eq!(q.structure_at(&anti).unwrap(), q.structure_at(&l).unwrap().neg());
        }
        assert_eq!(q.structure_at_infinity(), q.structure_at(&Scalar::int(0)).unwrap().neg());
    }

    #[test]
    fn sigma_examples() {
        let q = QuaternionicSpace::standard(1);
        let e1 = v(&["1", "0"]);
        let zero = v(&["0", "0"]);
        let s = SectionO1 {
            a: e1.clone(),
            b: zero.clone(),
        };
        let t = q.sigma_section(&s);
        assert_eq!(t, SectionO1 { a: zero, b: q.apply_j(&e1) });
        let inv = q.invariant_section(e1);
        assert!(q.is_sigma_invariant(&inv));
        let mut rng = random::rng(5);
        for _ in 0..20 {
            let s = SectionO1 {
                a: random::gaussian_vec(&mut rng, 2),
                b: random::gaussian_vec(&mut rng, 2),
            };
            assert_eq!(q.sigma_section(&q.sigma_section(&s)), s);
        }
    }

    #[test]
    fn sigma_covers_antipodal_map() {
        // σ(s)(-1/λ̄) is J applied to s(λ), times -λ̄⁻¹
        let q = QuaternionicSpace::standard(1);
        let s = SectionO1 {
            a: v(&["1+i", "2"]),
            b: v(&["-1", "1/2*i"]),
        };
        let l = Scalar::gi(1, 2);
        let anti = antipodal(Some(&l)).unwrap();
        let lhs = q.sigma_section(&s).eval(&anti);
        let rhs: Vec<Scalar> = q
            .apply_j(&s.eval(&l))
            .into_iter()
            .map(|x| -(x * l.conj().inverse().unwrap()))
            .collect();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn invariant_section_examples() {
        let q = QuaternionicSpace::standard(1);
        let v0 = v(&["1", "0"]);
        let s = q.invariant_section_through(&v0, Some(&Scalar::int(1))).unwrap();
        assert_eq!(s.a, v(&["1/2", "-1/2"]));
        let w = v(&["2+i", "-3"]);
        assert_eq!(q.invariant_section_through(&w, Some(&Scalar::int(0))).unwrap().a, w);
        let at_inf = q.invariant_section_through(&w, None).unwrap();
        assert_eq!(at_inf.at_infinity(), w);
        assert!(q.is_sigma_invariant(&at_inf));
    }

    #[test]
    fn invariant_sections_are_unique_through_a_point() {
        let mut rng = random::rng(9);
        let q = QuaternionicSpace::standard(2);
        for _ in 0..10 {
            let l = random::gaussian(&mut rng);
            let w = random::gaussian_vec(&mut rng, 4);
            let s = q.invariant_section_through(&w, Some(&l)).unwrap();
            // the evaluation map a ↦ a + λ J(a) has trivial real kernel
            let op = RealOp::new(ScalarMatrix::identity(4), q.j_matrix().scale(&l));
            assert_eq!(op.real_kernel_dim(), 0);
            assert_eq!(s.eval(&l), w);
        }
        assert_eq!(q.invariant_sections_real_dim(), 8);
        assert_eq!(QuaternionicSpace::standard(1).invariant_sections_real_dim(), 4);
    }

    #[test]
    fn twistor_bundle_is_pure_of_weight_one() {
        for r in 1..=2 {
            let b = QuaternionicSpace::standard(r).twistor_bundle().unwrap();
            assert_eq!(b.splitting_type().unwrap(), vec![1; 2 * r]);
            assert_eq!(b.h0_twist(0), 4 * r);
        }
    }

    #[test]
    fn sff_examples() {
        assert_eq!(quaternionic_sff_space(1, 1, true), 0);
        assert_eq!(quaternionic_sff_space(1, 2, true), 0);
        // complex-bilinear symmetric maps C^2 x C^2 -> C^2: 3 * 2 complex dims
        assert_eq!(quaternionic_sff_space(1, 1, false), 12);
    }
}
