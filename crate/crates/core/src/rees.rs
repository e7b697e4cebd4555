//! Rees modules of filtered vector spaces.
//!
//! A decreasing filtration `F^p` of `V` becomes the `C[z]`-module spanned by
//! `z^{-p} v` for `v ∈ F^p`, with G_m acting on `z`. In an adapted basis
//! `v₁ … v_n` with weights `p_i` the module is free on the `z^{-p_i} v_i`.
//! Its fiber at `z = 1` is `V`, its fiber at `z = 0` is the associated graded.
//!
//! Two filtrations `F`, `F̄` glue to a bundle on P¹: `F` sits over the chart
//! with coordinate `z`, `F̄` over the chart with coordinate `z⁻¹`. A line with
//! `F`-weight `p` and `F̄`-weight `q` becomes `O(p + q)`.

use std::collections::BTreeMap;

use crate::birkhoff::P1Bundle;
use crate::error::{Error, Result};
use crate::matrix::ScalarMatrix;
use crate::scalar::Scalar;
use crate::zpoly::{ZMatrix, ZPoly};

/// Canonical basis (nonzero rows of the reduced echelon form) of a span.
pub fn span_basis(dim: usize, vectors: &[Vec<Scalar>]) -> Vec<Vec<Scalar>> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let m = ScalarMatrix::from_rows(vectors.to_vec());
    let (r, pivots) = m.rref();
    (0..pivots.len()).map(|i| r.row(i)).filter(|v| v.len() == dim).collect()
}

fn rank_of(vectors: &[Vec<Scalar>]) -> usize {
    if vectors.is_empty() {
        0
    } else {
        ScalarMatrix::from_rows(vectors.to_vec()).rank()
    }
}

/// `true` when every vector of `sub` lies in the span of `sup`.
fn contained(sub: &[Vec<Scalar>], sup: &[Vec<Scalar>]) -> bool {
    if sub.is_empty() {
        return true;
    }
    let r = rank_of(sup);
    let mut all = sup.to_vec();
    all.extend_from_slice(sub);
    rank_of(&all) == r
}

#[derive(Clone, Debug, PartialEq)]
pub struct FilteredSpace {
    dim: usize,
    p_min: i64,
    /// `steps[k]` spans `F^{p_min + k}`, stored in reduced echelon form.
    steps: Vec<Vec<Vec<Scalar>>>,
}

impl FilteredSpace {
    /// Validates completeness (`F^{p_min} = V`) and nesting.
    /// `F^{p_max + 1} = 0` is implicit.
    pub fn new(dim: usize, p_min: i64, steps: Vec<Vec<Vec<Scalar>>>) -> Result<Self> {
        if steps.is_empty() {
            return Err(Error::Filtration("no filtration steps".into()));
        }
        for (k, basis) in steps.iter().enumerate() {
            if let Some(v) = basis.iter().find(|v| v.len() != dim) {
                return Err(Error::Dimension(format!(
                    "vector of length {} in F^{} of a {dim}-dimensional space",
                    v.len(),
                    p_min + k as i64
                )));
            }
        }
        let steps: Vec<_> = steps.iter().map(|b| span_basis(dim, b)).collect();
        if steps[0].len() != dim {
            return Err(Error::Filtration(format!(
                "F^{p_min} has dimension {} but must be all of V (dimension {dim})",
                steps[0].len()
            )));
        }
        for k in 1..steps.len() {
            if !contained(&steps[k], &steps[k - 1]) {
                return Err(Error::Filtration(format!(
                    "F^{} is not contained in F^{}",
                    p_min + k as i64,
                    p_min + k as i64 - 1
                )));
            }
        }
        Ok(FilteredSpace { dim, p_min, steps })
    }

    /// From `(p, basis)` pairs; the indices must be contiguous.
    pub fn from_steps(dim: usize, mut steps: Vec<(i64, Vec<Vec<Scalar>>)>) -> Result<Self> {
        steps.sort_by_key(|(p, _)| *p);
        let Some(&(p_min, _)) = steps.first() else {
            return Err(Error::Filtration("no filtration steps".into()));
        };
        for (k, (p, _)) in steps.iter().enumerate() {
            if *p != p_min + k as i64 {
                return Err(Error::Filtration(format!(
                    "filtration indices must be contiguous; found {p} after {}",
                    p_min + k as i64 - 1
                )));
            }
        }
        Self::new(dim, p_min, steps.into_iter().map(|(_, b)| b).collect())
    }

    /// `F^0 = V`, `F^1 = 0`.
    pub fn trivial(dim: usize) -> Self {
        let id = ScalarMatrix::identity(dim).to_rows();
        FilteredSpace::new(dim, 0, vec![id]).unwrap()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn p_min(&self) -> i64 {
        self.p_min
    }

    pub fn p_max(&self) -> i64 {
        self.p_min + self.steps.len() as i64 - 1
    }

    /// Canonical basis of `F^p` for any integer `p`.
    pub fn subspace(&self, p: i64) -> Vec<Vec<Scalar>> {
        if p <= self.p_min {
            self.steps[0].clone()
        } else if p > self.p_max() {
            Vec::new()
        } else {
            self.steps[(p - self.p_min) as usize].clone()
        }
    }

    pub fn dim_at(&self, p: i64) -> usize {
        self.subspace(p).len()
    }

    /// Equality of all `F^p` as subspaces.
    pub fn same_filtration(&self, other: &FilteredSpace) -> bool {
        if self.dim != other.dim {
            return false;
        }
        let lo = self.p_min.min(other.p_min);
        let hi = self.p_max().max(other.p_max()) + 1;
        (lo..=hi).all(|p| self.subspace(p) == other.subspace(p))
    }

    /// The complex conjugate filtration.
    pub fn conj(&self) -> FilteredSpace {
        let steps = self
            .steps
            .iter()
            .map(|b| b.iter().map(|v| v.iter().map(|x| x.conj()).collect()).collect())
            .collect();
        FilteredSpace::new(self.dim, self.p_min, steps).expect("conjugation preserves validity")
    }

    /// Keeps only the steps whose index is in `keep`, merging each dropped
    /// step into the next kept one below it (a coarser filtration).
    pub fn coarsen(&self, keep: &[i64]) -> FilteredSpace {
        let steps = (self.p_min..=self.p_max())
            .map(|p| {
                let q = (p..=self.p_max()).find(|q| keep.contains(q));
                match q {
                    _ if p == self.p_min => self.subspace(p),
                    Some(q) => self.subspace(q),
                    None => Vec::new(),
                }
            })
            .collect();
        FilteredSpace::new(self.dim, self.p_min, steps).expect("coarsening stays nested")
    }

    pub fn steps(&self) -> Vec<(i64, Vec<Vec<Scalar>>)> {
        (self.p_min..=self.p_max()).map(|p| (p, self.subspace(p))).collect()
    }
}

/// Free module on `z^{-p_i} v_i`, listed by non-increasing weight.
#[derive(Clone, Debug, PartialEq)]
pub struct ReesModule {
    pub basis: Vec<Vec<Scalar>>,
    pub weights: Vec<i64>,
}

impl ReesModule {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Basis vectors as the columns of a matrix.
    pub fn basis_matrix(&self) -> ScalarMatrix {
        let n = self.dim();
        ScalarMatrix::from_cols(n, &self.basis)
    }

    /// Generators `z^{-p_i} v_i` as vectors over `C[z, z⁻¹]`.
    pub fn generators(&self) -> Vec<Vec<ZPoly<Scalar>>> {
        self.basis
            .iter()
            .zip(&self.weights)
            .map(|(v, &p)| v.iter().map(|x| ZPoly::monomial(x.clone(), -p)).collect())
            .collect()
    }
}

/// Adapted basis by echelon refinement from the top of the filtration down.
pub fn build_rees(fs: &FilteredSpace) -> ReesModule {
    let mut basis: Vec<Vec<Scalar>> = Vec::with_capacity(fs.dim);
    let mut weights = Vec::with_capacity(fs.dim);
    for p in (fs.p_min..=fs.p_max()).rev() {
        for v in fs.subspace(p) {
            let mut trial = basis.clone();
            trial.push(v.clone());
            if rank_of(&trial) > basis.len() {
                basis = trial;
                weights.push(p);
            }
        }
    }
    ReesModule { basis, weights }
}

/// Reads the filtration back off the pole orders of the generators.
pub fn recover_filtration(r: &ReesModule) -> Result<FilteredSpace> {
    let n = r.dim();
    if r.weights.len() != n {
        return Err(Error::Dimension("one weight per basis vector required".into()));
    }
    if n == 0 {
        return FilteredSpace::new(0, 0, vec![vec![]]);
    }
    let lo = *r.weights.iter().min().unwrap();
    let hi = *r.weights.iter().max().unwrap();
    let steps = (lo..=hi)
        .map(|p| {
            r.basis
                .iter()
                .zip(&r.weights)
                .filter(|(_, &w)| w >= p)
                .map(|(v, _)| v.clone())
                .collect()
        })
        .collect();
    FilteredSpace::new(n, lo, steps)
}

/// Fiber of the Rees module at `z = 0` or `z = 1`.
#[derive(Clone, Debug, PartialEq)]
pub enum Fiber {
    /// Graded pieces `p ↦` representatives of `F^p / F^{p+1}`.
    Graded(BTreeMap<i64, Vec<Vec<Scalar>>>),
    /// The underlying space `V` with the adapted basis.
    Plain(Vec<Vec<Scalar>>),
}

impl Fiber {
    pub fn dim(&self) -> usize {
        match self {
            Fiber::Graded(g) => g.values().map(|v| v.len()).sum(),
            Fiber::Plain(b) => b.len(),
        }
    }

    pub fn graded_dims(&self) -> Option<BTreeMap<i64, usize>> {
        match self {
            Fiber::Graded(g) => Some(g.iter().map(|(&p, v)| (p, v.len())).collect()),
            Fiber::Plain(_) => None,
        }
    }
}

pub fn fiber(r: &ReesModule, point: u8) -> Result<Fiber> {
    match point {
        0 => {
            let mut g: BTreeMap<i64, Vec<Vec<Scalar>>> = BTreeMap::new();
            for (v, &p) in r.basis.iter().zip(&r.weights) {
                g.entry(p).or_default().push(v.clone());
            }
            Ok(Fiber::Graded(g))
        }
        1 => Ok(Fiber::Plain(r.basis.clone())),
        _ => Err(Error::OutOfRange {
            what: "fiber point",
            value: point as i64,
            lo: 0,
            hi: 1,
        }),
    }
}

/// Griffiths transversality `∇ F^p ⊆ F^{p-1} ⊗ W`. The map `∇ : V → V ⊗ W`
/// is given by one `n × n` matrix per basis vector of `W`.
pub fn griffiths_check(fs: &FilteredSpace, nabla: &[ScalarMatrix]) -> Result<bool> {
    for (k, m) in nabla.iter().enumerate() {
        if m.rows() != fs.dim || m.cols() != fs.dim {
            return Err(Error::Dimension(format!(
                "component {k} of the connection is {}x{}, expected {}x{}",
                m.rows(),
                m.cols(),
                fs.dim,
                fs.dim
            )));
        }
    }
    for p in fs.p_min + 1..=fs.p_max() {
        let src = fs.subspace(p);
        let dst = fs.subspace(p - 1);
        for m in nabla {
            let images: Vec<Vec<Scalar>> = src.iter().map(|v| m.mul_vec(v)).collect();
            if !contained(&images, &dst) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PurityReport {
    pub splitting: Vec<i64>,
    pub pure: bool,
    pub weight: Option<i64>,
}

impl PurityReport {
    pub fn from_splitting(splitting: Vec<i64>) -> Self {
        let weight = match splitting.first() {
            Some(&w) if splitting.iter().all(|&a| a == w) => Some(w),
            _ => None,
        };
        PurityReport {
            pure: weight.is_some(),
            weight,
            splitting,
        }
    }
}

/// Glues `ξ(V, F)` over the `z` chart to `ξ(V, F̄)` over the `z⁻¹` chart.
///
/// With adapted bases `v_i` (weights `p_i`) and `u_j` (weights `q_j`) the
/// transition sending chart-0 coordinates to chart-∞ coordinates is
/// `diag(z^{-q}) · U⁻¹V · diag(z^{-p})`.
pub fn rees_p1(f: &FilteredSpace, fbar: &FilteredSpace) -> Result<(P1Bundle<Scalar>, PurityReport)> {
    if f.dim != fbar.dim {
        return Err(Error::Dimension(format!(
            "filtrations live on spaces of dimension {} and {}",
            f.dim, fbar.dim
        )));
    }
    let r = build_rees(f);
    let rb = build_rees(fbar);
    let n = f.dim;
    let v = r.basis_matrix();
    let u_inv = rb
        .basis_matrix()
        .inverse()
        .ok_or_else(|| Error::Invariant("adapted basis is not a basis".into()))?;
    let change = &u_inv * &v;
    let g = ZMatrix::from_fn(n, |j, i| {
        ZPoly::monomial(change.get(j, i).clone(), -rb.weights[j] - r.weights[i])
    });
    let bundle = P1Bundle::new(g)?;
    let split = bundle.splitting_type()?;
    Ok((bundle, PurityReport::from_splitting(split)))
}

/// [`rees_p1`] with `F̄` the complex conjugate of `F`.
pub fn rees_p1_conjugate(f: &FilteredSpace) -> Result<(P1Bundle<Scalar>, PurityReport)> {
    rees_p1(f, &f.conj())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(x: &str) -> Scalar {
        x.parse().unwrap()
    }

    fn e(n: usize, k: usize) -> Vec<Scalar> {
        (0..n).map(|i| Scalar::int((i == k) as i64)).collect()
    }

    fn full_flag_2() -> FilteredSpace {
        FilteredSpace::new(2, 0, vec![vec![e(2, 0), e(2, 1)], vec![e(2, 0)]]).unwrap()
    }

    #[test]
    fn build_examples() {
        assert_eq!(build_rees(&FilteredSpace::trivial(3)).weights, vec![0, 0, 0]);
        let r = build_rees(&full_flag_2());
        assert_eq!(r.weights, vec![1, 0]);
        assert_eq!(r.basis, vec![e(2, 0), e(2, 1)]);
        let shifted = FilteredSpace::new(1, 3, vec![vec![e(1, 0)]]).unwrap();
        assert_eq!(build_rees(&shifted).weights, vec![3]);
    }

    #[test]
    fn weights_count_filtration_dims() {
        let fs = FilteredSpace::new(
            3,
            -1,
            vec![
                vec![e(3, 0), e(3, 1), e(3, 2)],
                vec![vec![s("1"), s("i"), s("0")], e(3, 2)],
                vec![e(3, 2)],
                vec![e(3, 2)],
            ],
        )
        .unwrap();
        let r = build_rees(&fs);
        for p in -3..5 {
            let count = r.weights.iter().filter(|&&w| w >= p).count();
            assert_eq!(count, fs.dim_at(p), "p = {p}");
        }
    }

    #[test]
    fn recover_examples() {
        let triv = ReesModule {
            basis: vec![e(3, 0), e(3, 1), e(3, 2)],
            weights: vec![0, 0, 0],
        };
        assert!(recover_filtration(&triv).unwrap().same_filtration(&FilteredSpace::trivial(3)));
        let r = ReesModule {
            basis: vec![e(2, 0), e(2, 1)],
            weights: vec![1, 0],
        };
        let f = recover_filtration(&r).unwrap();
        assert_eq!(f.subspace(1), vec![e(2, 0)]);
        assert!(f.same_filtration(&full_flag_2()));
    }

    #[test]
    fn fiber_examples() {
        let r = build_rees(&full_flag_2());
        let g = fiber(&r, 0).unwrap().graded_dims().unwrap();
        assert_eq!(g, BTreeMap::from([(0, 1), (1, 1)]));
        assert_eq!(fiber(&r, 1).unwrap().dim(), 2);
        let t = fiber(&build_rees(&FilteredSpace::trivial(4)), 0).unwrap();
        assert_eq!(t.graded_dims().unwrap(), BTreeMap::from([(0, 4)]));
        assert!(fiber(&r, 2).is_err());
    }

    #[test]
    fn invalid_filtrations() {
        // F^0 not all of V
        assert!(matches!(
            FilteredSpace::new(2, 0, vec![vec![e(2, 0)]]),
            Err(Error::Filtration(_))
        ));
        // not nested
        assert!(matches!(
            FilteredSpace::new(2, 0, vec![vec![e(2, 0), e(2, 1)], vec![e(2, 0)], vec![e(2, 1)]]),
            Err(Error::Filtration(_))
        ));
        assert!(FilteredSpace::from_steps(2, vec![(0, vec![e(2, 0), e(2, 1)]), (2, vec![])]).is_err());
        assert!(matches!(
            FilteredSpace::new(2, 0, vec![vec![vec![s("1")]]]),
            Err(Error::Dimension(_))
        ));
    }

    #[test]
    fn griffiths_examples() {
        let f2 = full_flag_2();
        assert!(griffiths_check(&f2, &[ScalarMatrix::zeros(2, 2)]).unwrap());
        // ∇ e1 = e2 ⊗ w
        let drop_one = ScalarMatrix::ints(vec![vec![0, 0], vec![1, 0]]);
        assert!(griffiths_check(&f2, &[drop_one]).unwrap());
        // F^2 = <e1>, F^1 = <e1, e2>, ∇ e1 = e3 ⊗ w
        let f3 = FilteredSpace::new(
            3,
            0,
            vec![vec![e(3, 0), e(3, 1), e(3, 2)], vec![e(3, 0), e(3, 1)], vec![e(3, 0)]],
        )
        .unwrap();
        let drop_two = ScalarMatrix::ints(vec![vec![0, 0, 0], vec![0, 0, 0], vec![1, 0, 0]]);
        assert!(!griffiths_check(&f3, &[drop_two.clone()]).unwrap());
        // with the two-step filtration F^1 = <e1> it is transverse
        let f3_short =
            FilteredSpace::new(3, 0, vec![vec![e(3, 0), e(3, 1), e(3, 2)], vec![e(3, 0)]]).unwrap();
        assert!(griffiths_check(&f3_short, &[drop_two]).unwrap());
        assert_eq!(f3.coarsen(&[2]).dim_at(1), 1);
        assert!(griffiths_check(&f3, &[ScalarMatrix::zeros(2, 2)]).is_err());
    }

    #[test]
    fn purity_sign_audit() {
        // a line with F-weight p and F̄-weight q must come out as O(p + q)
        for (p, q) in [(1, 0), (0, 1), (2, -1), (-3, 1), (0, 0)] {
            let f = FilteredSpace::new(1, p, vec![vec![e(1, 0)]]).unwrap();
            let fb = FilteredSpace::new(1, q, vec![vec![e(1, 0)]]).unwrap();
            let (_, rep) = rees_p1(&f, &fb).unwrap();
            assert_eq!(rep.splitting, vec![p + q]);
            assert_eq!(rep.weight, Some(p + q));
        }
    }

    #[test]
    fn elliptic_and_degenerate_gluing() {
        // H^1 of an elliptic curve: F^1 = <(1, i)>, conjugate line transverse
        let f = FilteredSpace::new(
            2,
            0,
            vec![vec![e(2, 0), e(2, 1)], vec![vec![s("1"), s("i")]]],
        )
        .unwrap();
        let (_, rep) = rees_p1_conjugate(&f).unwrap();
        assert_eq!(rep.splitting, vec![1, 1]);
        assert!(rep.pure);
        assert_eq!(rep.weight, Some(1));
        let (_, deg) = rees_p1(&full_flag_2(), &full_flag_2()).unwrap();
        assert_eq!(deg.splitting, vec![2, 0]);
        assert!(!deg.pure);
        assert_eq!(deg.weight, None);
    }
}
