//! Linear G_m actions on projective space and the open set `U` whose quotient
//! is separated.
//!
//! `t · [x₀ : … : x_N] = [t^{w₀} x₀ : … : t^{w_N} x_N]`. The fixed locus splits
//! into one linear component per distinct weight. Over the component of
//! weight `w` the group acts on the linearization `O(1)` with weight
//! `α = -w`; a rational shift `a` splits the components into
//! `V₊ = {α > a}` and `V₋ = {α < a}`.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::intmat::{smith_normal_form, IntMatrix};
use crate::scalar::{Scalar, Q};
use crate::zpoly::ZPoly;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixedComponent {
    pub weight: i64,
    pub indices: Vec<usize>,
}

impl FixedComponent {
    pub fn alpha(&self) -> i64 {
        -self.weight
    }
}

/// Point of projective space, scaled so its first nonzero coordinate is 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjPoint {
    coords: Vec<Scalar>,
}

impl ProjPoint {
    pub fn new(coords: Vec<Scalar>) -> Result<Self> {
        let Some(lead) = coords.iter().find(|c| !c.is_zero()).cloned() else {
            return Err(Error::Precondition("projective point has all coordinates zero".into()));
        };
        let inv = lead.inverse().expect("nonzero");
        Ok(ProjPoint {
            coords: coords.into_iter().map(|c| c * inv.clone()).collect(),
        })
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.coords
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.coords.len()).filter(|&i| !self.coords[i].is_zero()).collect()
    }

    fn restrict(&self, keep: &[usize]) -> ProjPoint {
        let coords = (0..self.coords.len())
            .map(|i| {
                if keep.contains(&i) {
                    self.coords[i].clone()
                } else {
                    Scalar::int(0)
                }
            })
            .collect();
        ProjPoint::new(coords).expect("kept support is nonempty")
    }
}

/// Coordinates are Laurent polynomials in the uniformizer `s`.
#[derive(Clone, Debug, PartialEq)]
pub struct Arc {
    coords: Vec<ZPoly<Scalar>>,
}

impl Arc {
    pub fn new(coords: Vec<ZPoly<Scalar>>) -> Result<Self> {
        if coords.iter().all(|c| c.is_zero()) {
            return Err(Error::Precondition("arc is identically zero".into()));
        }
        Ok(Arc { coords })
    }

    pub fn coords(&self) -> &[ZPoly<Scalar>] {
        &self.coords
    }

    pub fn valuation(&self, i: usize) -> Option<i64> {
        self.coords[i].min_exp()
    }

    /// The point of leading coefficients `[c₀ : … : c_N]` (zero where the
    /// coordinate vanishes); it has the same support as the arc.
    pub fn leading_point(&self) -> ProjPoint {
        let coords = self
            .coords
            .iter()
            .map(|c| c.min_exp().map_or(Scalar::int(0), |e| c.coeff(e)))
            .collect();
        ProjPoint::new(coords).expect("arc is nonzero")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Membership {
    InYPlus,
    InYMinus,
    InU,
}

impl Membership {
    pub fn as_str(&self) -> &'static str {
        match self {
            Membership::InYPlus => "in_Y+",
            Membership::InYMinus => "in_Y-",
            Membership::InU => "in_U",
        }
    }
}

/// Reflexive relation on fixed components, indexed as in
/// [`WeightedAction::fixed_components`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompOrder {
    pub components: Vec<FixedComponent>,
    le: Vec<Vec<bool>>,
}

impl CompOrder {
    pub fn le(&self, i: usize, j: usize) -> bool {
        self.le[i][j]
    }

    /// Pairs `(i, j)` with `i ≤ j`, `i ≠ j`.
    pub fn relations(&self) -> Vec<(usize, usize)> {
        let n = self.components.len();
        (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .filter(|&(i, j)| i != j && self.le[i][j])
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub plus: Vec<FixedComponent>,
    pub minus: Vec<FixedComponent>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum NewtonPiece {
    /// Open gauge interval (unbounded ends are `None`); the limit lies in the
    /// fixed component of the given weight.
    Interval {
        lo: Option<Q>,
        hi: Option<Q>,
        component: FixedComponent,
        landing: ProjPoint,
    },
    Breakpoint {
        eps: Q,
        landing: ProjPoint,
    },
}

#[derive(Clone, Debug, PartialEq)]
pub struct GaugeChoice {
    pub eps: Q,
    pub landing: ProjPoint,
    pub below: FixedComponent,
    pub above: FixedComponent,
}

#[derive(Clone, Debug, PartialEq)]
pub struct WeightedAction {
    weights: Vec<i64>,
    a: Q,
}

impl WeightedAction {
    pub fn new(weights: Vec<i64>, a: Q) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::Dimension("at least one coordinate is required".into()));
        }
        Ok(WeightedAction { weights, a })
    }

    pub fn weights(&self) -> &[i64] {
        &self.weights
    }

    pub fn shift(&self) -> &Q {
        &self.a
    }

    pub fn dim(&self) -> usize {
        self.weights.len() - 1
    }

    pub fn alphas(&self) -> Vec<i64> {
        self.weights.iter().map(|w| -w).collect()
    }

    /// Fails when the shift equals some `α`.
    pub fn check_shift(&self) -> Result<()> {
        for w in &self.weights {
            if self.a == Q::from_integer((-w).into()) {
                return Err(Error::ShiftCollision(self.a.to_string()));
            }
        }
        Ok(())
    }

    fn check_point(&self, x: &ProjPoint) -> Result<()> {
        if x.coords.len() != self.weights.len() {
            return Err(Error::Dimension(format!(
                "point has {} coordinates, action has {}",
                x.coords.len(),
                self.weights.len()
            )));
        }
        Ok(())
    }

    /// One component per distinct weight, by increasing weight.
    pub fn fixed_components(&self) -> Vec<FixedComponent> {
        let mut by: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
        for (i, &w) in self.weights.iter().enumerate() {
            by.entry(w).or_default().push(i);
        }
        by.into_iter().map(|(weight, indices)| FixedComponent { weight, indices }).collect()
    }

    fn component_index(&self, weight: i64) -> usize {
        self.fixed_components()
            .iter()
            .position(|c| c.weight == weight)
            .expect("weight occurs")
    }

    fn component(&self, weight: i64) -> FixedComponent {
        self.fixed_components().swap_remove(self.component_index(weight))
    }

    /// Weight of the fixed component containing `x`, if `x` is fixed.
    pub fn fixed_weight(&self, x: &ProjPoint) -> Option<i64> {
        let s = x.support();
        let w = self.weights[s[0]];
        s.iter().all(|&i| self.weights[i] == w).then_some(w)
    }

    pub fn act(&self, t: &Scalar, x: &ProjPoint) -> Result<ProjPoint> {
        self.check_point(x)?;
        if t.is_zero() {
            return Err(Error::Precondition("t must be nonzero".into()));
        }
        let coords = x
            .coords
            .iter()
            .zip(&self.weights)
            .map(|(c, &w)| c.clone() * t.pow(w).expect("t is nonzero"))
            .collect();
        ProjPoint::new(coords)
    }

    fn extreme_weight(&self, x: &ProjPoint, min: bool) -> i64 {
        let ws = x.support().into_iter().map(|i| self.weights[i]);
        if min {
            ws.min().expect("nonzero point")
        } else {
            ws.max().expect("nonzero point")
        }
    }

    /// `lim_{t→0} t · x`.
    pub fn limit0(&self, x: &ProjPoint) -> Result<ProjPoint> {
        self.check_point(x)?;
        let w = self.extreme_weight(x, true);
        let keep: Vec<usize> = x.support().into_iter().filter(|&i| self.weights[i] == w).collect();
        Ok(x.restrict(&keep))
    }

    /// `lim_{t→∞} t · x`.
    pub fn limitinf(&self, x: &ProjPoint) -> Result<ProjPoint> {
        self.check_point(x)?;
        let w = self.extreme_weight(x, false);
        let keep: Vec<usize> = x.support().into_iter().filter(|&i| self.weights[i] == w).collect();
        Ok(x.restrict(&keep))
    }

    /// Without witnesses `u ≤ v` iff `weight(u) ≤ weight(v)`. With witnesses
    /// the order is generated by `limit0(x) ≤ limitinf(x)`.
    pub fn comp_order(&self, witnesses: Option<&[ProjPoint]>) -> Result<CompOrder> {
        let comps = self.fixed_components();
        let n = comps.len();
        let mut le = vec![vec![false; n]; n];
        match witnesses {
            None => {
                for i in 0..n {
                    for j in 0..n {
                        le[i][j] = comps[i].weight <= comps[j].weight;
                    }
                }
            }
            Some(ws) => {
                for (i, row) in le.iter_mut().enumerate() {
                    row[i] = true;
                }
                for x in ws {
                    self.check_point(x)?;
                    let lo = self.component_index(self.extreme_weight(x, true));
                    let hi = self.component_index(self.extreme_weight(x, false));
                    le[lo][hi] = true;
                }
                for k in 0..n {
                    for i in 0..n {
                        for j in 0..n {
                            if le[i][k] && le[k][j] {
                                le[i][j] = true;
                            }
                        }
                    }
                }
            }
        }
        Ok(CompOrder { components: comps, le })
    }

    fn in_plus(&self, weight: i64) -> bool {
        Q::from_integer((-weight).into()) > self.a
    }

    /// `V₊ = {α > a}`, `V₋ = {α < a}`, checked to be downward and upward closed
    /// for the order generated by `witnesses` (or the weight order).
    pub fn decompose(&self, witnesses: Option<&[ProjPoint]>) -> Result<Decomposition> {
        self.check_shift()?;
        let order = self.comp_order(witnesses)?;
        let comps = &order.components;
        for (u, v) in order.relations() {
            let (pu, pv) = (self.in_plus(comps[u].weight), self.in_plus(comps[v].weight));
            if pv && !pu {
                return Err(Error::Invariant(format!(
                    "component of weight {} lies below V₊ but is not in V₊",
                    comps[u].weight
                )));
            }
        }
        let (plus, minus): (Vec<_>, Vec<_>) = comps.iter().cloned().partition(|c| self.in_plus(c.weight));
        Ok(Decomposition { plus, minus })
    }

    /// `Y₊ = {lim_{t→∞} t x ∈ V₊}`, `Y₋ = {lim_{t→0} t x ∈ V₋}`, `U` the rest.
    pub fn in_u(&self, x: &ProjPoint) -> Result<Membership> {
        self.check_shift()?;
        self.check_point(x)?;
        let y_plus = self.in_plus(self.extreme_weight(x, false));
        let y_minus = !self.in_plus(self.extreme_weight(x, true));
        match (y_plus, y_minus) {
            (true, true) => Err(Error::Invariant("point lies in both Y₊ and Y₋".into())),
            (true, false) => Ok(Membership::InYPlus),
            (false, true) => Ok(Membership::InYMinus),
            (false, false) => Ok(Membership::InU),
        }
    }

    /// Whether some `t` in the algebraic closure carries `x` to `y`.
    ///
    /// With equal supports `S` and base index `i₀ ∈ S`, the conditions are
    /// `t^{d_i} = r_i` for `d_i = w_i - w_{i₀}` and
    /// `r_i = (y_i / x_i) / (y_{i₀} / x_{i₀})`. If `U d = (g, 0, …, 0)ᵀ` with
    /// `U` unimodular, the system is solvable iff `Π_i r_i^{U_{ki}} = 1` for
    /// every `k ≥ 1`, and also for `k = 0` when `g = 0`.
    pub fn orbit_equivalent(&self, x: &ProjPoint, y: &ProjPoint) -> Result<bool> {
        self.check_point(x)?;
        self.check_point(y)?;
        let s = x.support();
        if s != y.support() {
            return Ok(false);
        }
        let i0 = s[0];
        let base = y.coords[i0].clone() / x.coords[i0].clone();
        let r: Vec<Scalar> = s
            .iter()
            .map(|&i| y.coords[i].clone() / x.coords[i].clone() / base.clone())
            .collect();
        let d: Vec<Vec<i64>> = s.iter().map(|&i| vec![self.weights[i] - self.weights[i0]]).collect();
        let snf = smith_normal_form(&IntMatrix::new(d));
        let g = snf.d.get(0, 0);
        let first = if g == 0 { 0 } else { 1 };
        for k in first..s.len() {
            let mut prod = Scalar::int(1);
            for (idx, ri) in r.iter().enumerate() {
                let e = snf.u.get(k, idx);
                if e != 0 {
                    prod = prod * ri.pow(e).expect("ratios are nonzero");
                }
            }
            if prod != prod.one_like() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Lower envelope of `ε ↦ min_i (v_i - ε w_i)` over the support of the
    /// arc: where the gauge `t = s^{-ε}` sends the arc as `s → 0`.
    pub fn newton_limits(&self, arc: &Arc) -> Result<Vec<NewtonPiece>> {
        if arc.coords.len() != self.weights.len() {
            return Err(Error::Dimension(format!(
                "arc has {} coordinates, action has {}",
                arc.coords.len(),
                self.weights.len()
            )));
        }
        let lead = arc.leading_point();
        // for each weight, the smallest valuation among coordinates of that weight
        let mut lines: BTreeMap<i64, i64> = BTreeMap::new();
        for i in lead.support() {
            let v = arc.valuation(i).expect("supported coordinate");
            let e = lines.entry(self.weights[i]).or_insert(v);
            *e = (*e).min(v);
        }
        let on_line = |w: i64, v: i64| -> Vec<usize> {
            lead.support()
                .into_iter()
                .filter(|&i| self.weights[i] == w && arc.valuation(i) == Some(v))
                .collect()
        };
        let mut out = Vec::new();
        let (mut cw, mut cv) = lines.iter().next().map(|(&w, &v)| (w, v)).expect("nonempty support");
        let mut lo: Option<Q> = None;
        loop {
            // next crossing with a line of larger weight
            let mut best: Option<Q> = None;
            for (&w, &v) in lines.range(cw + 1..) {
                let eps = Q::new((v - cv).into(), (w - cw).into());
                if best.as_ref().is_none_or(|b| eps < *b) {
                    best = Some(eps);
                }
            }
            let interval_landing = lead.restrict(&on_line(cw, cv));
            match best {
                None => {
                    out.push(NewtonPiece::Interval {
                        lo,
                        hi: None,
                        component: self.component(cw),
                        landing: interval_landing,
                    });
                    break;
                }
                Some(eps) => {
                    out.push(NewtonPiece::Interval {
                        lo: lo.clone(),
                        hi: Some(eps.clone()),
                        component: self.component(cw),
                        landing: interval_landing,
                    });
                    let value = Q::from_integer(cv.into()) - eps.clone() * Q::from_integer(cw.into());
                    let mut tying: Vec<usize> = on_line(cw, cv);
                    let mut next = (cw, cv);
                    for (&w, &v) in lines.range(cw + 1..) {
                        let at = Q::from_integer(v.into()) - eps.clone() * Q::from_integer(w.into());
                        if at == value {
                            tying.extend(on_line(w, v));
                            next = next.max((w, v));
                        }
                    }
                    tying.sort_unstable();
                    out.push(NewtonPiece::Breakpoint {
                        eps: eps.clone(),
                        landing: lead.restrict(&tying),
                    });
                    (cw, cv) = next;
                    lo = Some(eps);
                }
            }
        }
        Ok(out)
    }

    /// The breakpoint where the envelope passes from `V₊` to `V₋`.
    pub fn choose_gauge(&self, arc: &Arc) -> Result<GaugeChoice> {
        self.check_shift()?;
        let generic = arc.leading_point();
        self.check_point(&generic)?;
        if self.in_u(&generic)? != Membership::InU {
            return Err(Error::Precondition("the generic point of the arc is not in U".into()));
        }
        let pieces = self.newton_limits(arc)?;
        let mut found: Vec<GaugeChoice> = Vec::new();
        for k in (1..pieces.len()).step_by(2) {
            let (NewtonPiece::Interval { component: below, .. }, NewtonPiece::Breakpoint { eps, landing }, NewtonPiece::Interval { component: above, .. }) =
                (&pieces[k - 1], &pieces[k], &pieces[k + 1])
            else {
                return Err(Error::Invariant("envelope pieces do not alternate".into()));
            };
            if self.in_plus(below.weight) && !self.in_plus(above.weight) {
                found.push(GaugeChoice {
                    eps: eps.clone(),
                    landing: landing.clone(),
                    below: below.clone(),
                    above: above.clone(),
                });
            }
        }
        if found.len() != 1 {
            return Err(Error::Invariant(format!("{} straddling breakpoints, expected one", found.len())));
        }
        let choice = found.pop().unwrap();
        if self.in_u(&choice.landing)? != Membership::InU {
            return Err(Error::Invariant("gauge landing point is not in U".into()));
        }
        Ok(choice)
    }

    /// Degree-`d` exponent vectors `m` with `Σ m_i w_i = d a`, ascending
    /// lexicographically.
    pub fn invariant_monomials(&self, d: usize) -> Vec<Vec<usize>> {
        let target = self.a.clone() * Q::from_integer((d as i64).into());
        if !target.is_integer() {
            return Vec::new();
        }
        let target = target.to_integer();
        let n = self.weights.len();
        let mut out = Vec::new();
        let mut cur = vec![0usize; n];
        fn rec(i: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>, w: &[i64], target: &num_bigint::BigInt) {
            if i + 1 == cur.len() {
                cur[i] = left;
                let total: i64 = cur.iter().zip(w).map(|(&m, &wi)| m as i64 * wi).sum();
                if num_bigint::BigInt::from(total) == *target {
                    out.push(cur.clone());
                }
                return;
            }
            for m in 0..=left {
                cur[i] = m;
                rec(i + 1, left - m, cur, out, w, target);
            }
        }
        rec(0, d, &mut cur, &mut out, &self.weights, &target);
        out
    }
}

/// Parses `"p/q"` or an integer.
pub fn parse_shift(s: &str) -> Result<Q> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: num_bigint::BigInt = n.parse().map_err(|_| Error::Parse(format!("bad shift {s:?}")))?;
    let d: num_bigint::BigInt = d.parse().map_err(|_| Error::Parse(format!("bad shift {s:?}")))?;
    if d.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(Q::new(n, d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random;
    use crate::scalar::qf;

    fn pt(xs: &[i64]) -> ProjPoint {
        ProjPoint::new(xs.iter().map(|&x| Scalar::int(x)).collect()).unwrap()
    }

    fn act(w: &[i64], a: (i64, i64)) -> WeightedAction {
        WeightedAction::new(w.to_vec(), qf(a.0, a.1)).unwrap()
    }

    fn arc(terms: &[&[(i64, i64)]]) -> Arc {
        Arc::new(
            terms
                .iter()
                .map(|t| ZPoly::from_terms(t.iter().map(|&(e, c)| (e, Scalar::int(c)))))
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn fixed_component_examples() {
        let comps = act(&[0, 1, 2], (0, 1)).fixed_components();
        assert_eq!(comps.len(), 3);
        assert_eq!(act(&[1, 1], (0, 1)).fixed_components(), vec![FixedComponent { weight: 1, indices: vec![0, 1] }]);
        let c = act(&[0, 0, 5], (0, 1)).fixed_components();
        assert_eq!(c[0].indices, vec![0, 1]);
        assert_eq!(c[1].indices, vec![2]);
    }

    #[test]
    fn limit_examples() {
        let w = act(&[0, 1, 2], (-1, 2));
        assert_eq!(w.limit0(&pt(&[1, 1, 1])).unwrap(), pt(&[1, 0, 0]));
        assert_eq!(w.limitinf(&pt(&[1, 1, 1])).unwrap(), pt(&[0, 0, 1]));
        assert_eq!(w.limit0(&pt(&[0, 1, 0])).unwrap(), pt(&[0, 1, 0]));
        assert_eq!(w.limitinf(&pt(&[0, 1, 0])).unwrap(), pt(&[0, 1, 0]));
        assert_eq!(w.limit0(&pt(&[0, 1, 1])).unwrap(), pt(&[0, 1, 0]));
    }

    #[test]
    fn order_examples() {
        let w = act(&[0, 1, 2], (-1, 2));
        assert_eq!(w.alphas(), vec![0, -1, -2]);
        let full = w.comp_order(None).unwrap();
        assert!(full.le(0, 1) && full.le(1, 2) && full.le(0, 2) && !full.le(2, 0));
        let orbits = [pt(&[1, 1, 1]), pt(&[0, 1, 1]), pt(&[1, 1, 0])];
        assert_eq!(w.comp_order(Some(&orbits)).unwrap(), full);
        let sparse = w.comp_order(Some(&[pt(&[1, 0, 1])])).unwrap();
        assert!(sparse.le(0, 2));
        assert!(!sparse.le(0, 1) && !sparse.le(1, 0) && !sparse.le(1, 2) && !sparse.le(2, 1));
        let single = act(&[3, 3], (0, 1)).comp_order(None).unwrap();
        assert!(single.relations().is_empty());
    }

    #[test]
    fn decompose_examples() {
        let d = act(&[0, 1, 2], (-1, 2)).decompose(None).unwrap();
        assert_eq!(d.plus.iter().map(|c| c.weight).collect::<Vec<_>>(), vec![0]);
        assert_eq!(d.minus.iter().map(|c| c.weight).collect::<Vec<_>>(), vec![1, 2]);
        let d = act(&[0, 1, 2], (-5, 2)).decompose(None).unwrap();
        assert_eq!(d.plus.len(), 3);
        assert!(d.minus.is_empty());
        assert!(matches!(act(&[0, 1, 2], (-1, 1)).decompose(None), Err(Error::ShiftCollision(_))));
    }

    #[test]
    fn membership_examples() {
        let w = act(&[0, 1, 2], (-1, 2));
        assert_eq!(w.in_u(&pt(&[1, 1, 0])).unwrap(), Membership::InU);
        assert_eq!(w.in_u(&pt(&[1, 0, 0])).unwrap(), Membership::InYPlus);
        assert_eq!(w.in_u(&pt(&[0, 1, 1])).unwrap(), Membership::InYMinus);
    }

    #[test]
    fn membership_is_invariant() {
        let w = act(&[0, 1, 2, 4], (-3, 2));
        let mut rng = random::rng(12);
        for _ in 0..30 {
            let x = ProjPoint::new(vec![
                random::gaussian_int(&mut rng, 1),
                random::gaussian_int(&mut rng, 1),
                random::gaussian_int(&mut rng, 1),
                random::gaussian_int(&mut rng, 1),
            ]);
            let Ok(x) = x else { continue };
            let t = random::nonzero_gaussian(&mut rng);
            let tx = w.act(&t, &x).unwrap();
            assert_eq!(w.in_u(&x).unwrap(), w.in_u(&tx).unwrap());
            assert!(w.orbit_equivalent(&x, &tx).unwrap());
            // limit0 ≤ limitinf
            let order = w.comp_order(None).unwrap();
            let lo = w.fixed_weight(&w.limit0(&x).unwrap()).unwrap();
            let hi = w.fixed_weight(&w.limitinf(&x).unwrap()).unwrap();
            assert!(order.le(w.component_index(lo), w.component_index(hi)));
        }
    }

    #[test]
    fn orbit_examples() {
        let w = act(&[0, 1, 2], (-1, 2));
        assert!(w.orbit_equivalent(&pt(&[1, 1, 1]), &pt(&[1, 2, 4])).unwrap());
        assert!(!w.orbit_equivalent(&pt(&[1, 1, 1]), &pt(&[1, 1, 2])).unwrap());
        assert!(!w.orbit_equivalent(&pt(&[1, 1, 0]), &pt(&[1, 0, 1])).unwrap());
        // t² = -1 has a solution over the closure: [1 : 0 : 1] ~ [1 : 0 : -1]
        assert!(w.orbit_equivalent(&pt(&[1, 0, 1]), &pt(&[1, 0, -1])).unwrap());
        // equal weights force the ratio to be 1
        let flat = act(&[1, 1], (0, 1));
        assert!(!flat.orbit_equivalent(&pt(&[1, 1]), &pt(&[1, 2])).unwrap());
        assert!(flat.orbit_equivalent(&pt(&[1, 2]), &pt(&[2, 4])).unwrap());
    }

    #[test]
    fn newton_examples() {
        let w = act(&[0, 1, 2], (-1, 2));
        let pieces = w.newton_limits(&arc(&[&[(0, 1)], &[(1, 1)], &[(3, 1)]])).unwrap();
        assert_eq!(pieces.len(), 5);
        let weights: Vec<i64> = pieces
            .iter()
            .filter_map(|p| match p {
                NewtonPiece::Interval { component, .. } => Some(component.weight),
                _ => None,
            })
            .collect();
        assert_eq!(weights, vec![0, 1, 2]);
        assert_eq!(pieces[1], NewtonPiece::Breakpoint { eps: qf(1, 1), landing: pt(&[1, 1, 0]) });
        assert_eq!(pieces[3], NewtonPiece::Breakpoint { eps: qf(2, 1), landing: pt(&[0, 1, 1]) });

        let w2 = act(&[0, 2], (-1, 2));
        let p2 = w2.newton_limits(&arc(&[&[(0, 1)], &[(1, 1)]])).unwrap();
        assert!(matches!(&p2[1], NewtonPiece::Breakpoint { eps, .. } if *eps == qf(1, 2)));

        let flat = act(&[4, 4], (0, 1));
        let p3 = flat.newton_limits(&arc(&[&[(0, 1)], &[(0, 2)]])).unwrap();
        assert_eq!(p3.len(), 1);
        assert!(Arc::new(vec![ZPoly::zero(), ZPoly::zero()]).is_err());
    }

    #[test]
    fn gauge_examples() {
        let the_arc = arc(&[&[(0, 1)], &[(1, 1)], &[(3, 1)]]);
        let g = act(&[0, 1, 2], (-1, 2)).choose_gauge(&the_arc).unwrap();
        assert_eq!(g.eps, qf(1, 1));
        assert_eq!(g.landing, pt(&[1, 1, 0]));
        let g = act(&[0, 1, 2], (-3, 2)).choose_gauge(&the_arc).unwrap();
        assert_eq!(g.eps, qf(2, 1));
        assert_eq!(g.landing, pt(&[0, 1, 1]));
        let constant = arc(&[&[(0, 1)], &[(0, 1)], &[]]);
        let g = act(&[0, 1, 2], (-1, 2)).choose_gauge(&constant).unwrap();
        assert_eq!(g.eps, qf(0, 1));
        let not_u = arc(&[&[], &[(0, 1)], &[(2, 1)]]);
        assert!(act(&[0, 1, 2], (-1, 2)).choose_gauge(&not_u).is_err());
    }

    #[test]
    fn invariant_monomial_examples() {
        let w = act(&[0, 1, 2], (1, 1));
        assert_eq!(w.invariant_monomials(2), vec![vec![0, 2, 0], vec![1, 0, 1]]);
        assert!(act(&[0, 1, 2], (1, 3)).invariant_monomials(2).is_empty());
        assert_eq!(act(&[0, 0, 0], (0, 1)).invariant_monomials(2).len(), 6);
    }

    #[test]
    fn shift_parsing() {
        assert_eq!(parse_shift("-1/2").unwrap(), qf(-1, 2));
        assert_eq!(parse_shift("3").unwrap(), qf(3, 1));
        assert!(parse_shift("1/0").is_err());
        assert!(parse_shift("x").is_err());
    }
}
