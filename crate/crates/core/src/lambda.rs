//! The rank-one λ-connection family in linear coordinates.
//!
//! A harmonic line is `(ν, θ′) ∈ C^g × C^g`; its conjugate Higgs part is
//! `θ″ = c(θ′)` with `c` componentwise conjugation. A point of the Hodge
//! family is `(β, η, λ)` where `β` is the `(0,1)`-operator datum and `η` the
//! `(1,0)`-operator datum of a λ-connection. The involution `σ′` covers
//! `λ ↦ -1/λ̄` and uses the rank-one conjugate dual `x ↦ -c(x)`.

use crate::error::{Error, Result};
use crate::matrix::ScalarMatrix;
use crate::scalar::Scalar;
use crate::twistor::RealOp;

fn c(v: &[Scalar]) -> Vec<Scalar> {
    v.iter().map(|x| x.conj()).collect()
}

fn axpy(x: &[Scalar], t: &Scalar, y: &[Scalar]) -> Vec<Scalar> {
    x.iter().zip(y).map(|(a, b)| a.clone() + t.clone() * b.clone()).collect()
}

fn scaled(t: &Scalar, v: &[Scalar]) -> Vec<Scalar> {
    v.iter().map(|x| t.clone() * x.clone()).collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct HarmonicLine {
    pub nu: Vec<Scalar>,
    pub theta_prime: Vec<Scalar>,
}

impl HarmonicLine {
    pub fn new(nu: Vec<Scalar>, theta_prime: Vec<Scalar>) -> Result<Self> {
        if nu.is_empty() || nu.len() != theta_prime.len() {
            return Err(Error::Dimension(format!(
                "ν and θ′ must have the same positive length, got {} and {}",
                nu.len(),
                theta_prime.len()
            )));
        }
        Ok(HarmonicLine { nu, theta_prime })
    }

    pub fn g(&self) -> usize {
        self.nu.len()
    }

    pub fn theta_double_prime(&self) -> Vec<Scalar> {
        c(&self.theta_prime)
    }

    /// Flat connection at `λ = 1`: `((0,1)` part, `(1,0)` part`)`.
    pub fn flat_coordinates(&self) -> (Vec<Scalar>, Vec<Scalar>) {
        let p = prefered_section(self, &Scalar::int(1));
        (p.beta, p.eta)
    }

    /// Inverts `h ↦ (c(θ′), -c(ν))`, the λ-coefficient of the prefered section.
    pub fn from_slope(beta1: &[Scalar], eta1: &[Scalar]) -> Result<Self> {
        let nu: Vec<Scalar> = c(eta1).into_iter().map(|x| -x).collect();
        HarmonicLine::new(nu, c(beta1))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct HodPoint {
    pub beta: Vec<Scalar>,
    pub eta: Vec<Scalar>,
    pub lambda: Scalar,
}

impl HodPoint {
    pub fn new(beta: Vec<Scalar>, eta: Vec<Scalar>, lambda: Scalar) -> Result<Self> {
        if beta.len() != eta.len() {
            return Err(Error::Dimension(format!(
                "β and η have lengths {} and {}",
                beta.len(),
                eta.len()
            )));
        }
        Ok(HodPoint { beta, eta, lambda })
    }
}

/// `(ν + λ c(θ′), θ′ - λ c(ν), λ)`.
pub fn prefered_section(h: &HarmonicLine, lambda: &Scalar) -> HodPoint {
    let minus = -lambda.clone();
    HodPoint {
        beta: axpy(&h.nu, lambda, &c(&h.theta_prime)),
        eta: axpy(&h.theta_prime, &minus, &c(&h.nu)),
        lambda: lambda.clone(),
    }
}

/// `(β, η, λ) ↦ (-λ̄⁻¹ c(η), λ̄⁻¹ c(β), -λ̄⁻¹)`.
pub fn sigma_prime(p: &HodPoint) -> Result<HodPoint> {
    let inv = p
        .lambda
        .conj()
        .inverse()
        .ok_or_else(|| Error::Precondition("σ′ is undefined at λ = 0".into()))?;
    let minus = -inv.clone();
    Ok(HodPoint {
        beta: scaled(&minus, &c(&p.eta)),
        eta: scaled(&inv, &c(&p.beta)),
        lambda: minus,
    })
}

/// `t · (β, η, λ) = (β, t η, t λ)`.
pub fn gm_act(t: &Scalar, p: &HodPoint) -> Result<HodPoint> {
    if t.is_zero() {
        return Err(Error::Precondition("t must be nonzero".into()));
    }
    Ok(HodPoint {
        beta: p.beta.clone(),
        eta: scaled(t, &p.eta),
        lambda: t.clone() * p.lambda.clone(),
    })
}

/// The real-linear evaluation `h ↦ pref(h, λ₀)` on `C^{2g}`, coordinates
/// `(ν, θ′) ↦ (β, η)`.
pub fn evaluation_op(g: usize, lambda: &Scalar) -> RealOp {
    let n = 2 * g;
    let b = ScalarMatrix::from_fn(n, n, |r, s| {
        if r < g && s == r + g {
            lambda.clone()
        } else if r >= g && s + g == r {
            -lambda.clone()
        } else {
            Scalar::int(0)
        }
    });
    RealOp::new(ScalarMatrix::identity(n), b)
}

/// Candidate section `λ ↦ (β(λ), η(λ))`; `beta[k]` is the coefficient of `λ^k`.
#[derive(Clone, Debug, PartialEq)]
pub struct PolySection {
    pub beta: Vec<Vec<Scalar>>,
    pub eta: Vec<Vec<Scalar>>,
}

impl PolySection {
    pub fn from_harmonic(h: &HarmonicLine) -> Self {
        let p0 = prefered_section(h, &Scalar::int(0));
        let p1 = prefered_section(h, &Scalar::int(1));
        let diff = |a: &[Scalar], b: &[Scalar]| -> Vec<Scalar> {
            a.iter().zip(b).map(|(x, y)| x.clone() - y.clone()).collect()
        };
        PolySection {
            beta: vec![p0.beta.clone(), diff(&p1.beta, &p0.beta)],
            eta: vec![p0.eta.clone(), diff(&p1.eta, &p0.eta)],
        }
    }

    pub fn degree(&self) -> usize {
        self.beta.len().max(self.eta.len()).saturating_sub(1)
    }

    pub fn eval(&self, lambda: &Scalar) -> HodPoint {
        let g = self.dim();
        let horner = |cs: &[Vec<Scalar>]| {
            let mut acc = vec![Scalar::int(0); g];
            for coef in cs.iter().rev() {
                acc = axpy(coef, &Scalar::int(1), &scaled(lambda, &acc));
            }
            acc
        };
        HodPoint {
            beta: horner(&self.beta),
            eta: horner(&self.eta),
            lambda: lambda.clone(),
        }
    }

    fn dim(&self) -> usize {
        self.beta.first().or(self.eta.first()).map_or(0, |v| v.len())
    }

    fn coeff(cs: &[Vec<Scalar>], k: i64, g: usize) -> Vec<Scalar> {
        usize::try_from(k)
            .ok()
            .and_then(|k| cs.get(k).cloned())
            .unwrap_or_else(|| vec![Scalar::int(0); g])
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Verdict {
    Prefered(HarmonicLine),
    NotInvariant,
    /// Never produced by a correct implementation; reserved for falsification.
    InvariantButNotPrefered,
}

pub const MAX_CANDIDATE_DEGREE: usize = 4;

/// Decides whether `σ′(s(λ)) = s(-λ̄⁻¹)` identically.
///
/// With `μ = -λ̄⁻¹` we have `λ̄ = -μ⁻¹`, so both sides are Laurent polynomials
/// in `μ` with coefficients affine in the (conjugated) coefficients of `s`:
/// the left side of the `β`-component is `Σ_k (-1)^k c(η_k) μ^{1-k}` and of
/// the `η`-component `Σ_k (-1)^{k+1} c(β_k) μ^{1-k}`.
pub fn classify_invariant_section(s: &PolySection) -> Result<Verdict> {
    let d = s.degree();
    if d > MAX_CANDIDATE_DEGREE {
        return Err(Error::OutOfRange {
            what: "candidate degree",
            value: d as i64,
            lo: 0,
            hi: MAX_CANDIDATE_DEGREE as i64,
        });
    }
    let g = s.dim();
    if s.beta.iter().chain(&s.eta).any(|v| v.len() != g) {
        return Err(Error::Dimension("coefficient vectors of unequal length".into()));
    }
    let sign = |k: i64| Scalar::int(if k % 2 == 0 { 1 } else { -1 });
    // left side spans μ^{1-d} ..= μ^1, right side μ^0 ..= μ^d
    let lo = (1 - d as i64).min(0);
    let hi = (d as i64).max(1);
    for e in lo..=hi {
        // coefficient of μ^e on the left comes from k = 1 - e
        let k = 1 - e;
        let lhs_beta = scaled(&sign(k), &c(&PolySection::coeff(&s.eta, k, g)));
        let lhs_eta = scaled(&-sign(k), &c(&PolySection::coeff(&s.beta, k, g)));
        if lhs_beta != PolySection::coeff(&s.beta, e, g) || lhs_eta != PolySection::coeff(&s.eta, e, g) {
            return Ok(Verdict::NotInvariant);
        }
    }
    let h = HarmonicLine::new(PolySection::coeff(&s.beta, 0, g), PolySection::coeff(&s.eta, 0, g))?;
    let expected = PolySection::from_harmonic(&h);
    let trimmed = |cs: &[Vec<Scalar>]| -> Vec<Vec<Scalar>> {
        (0..2).map(|k| PolySection::coeff(cs, k, g)).collect()
    };
    let high_zero = (2..=d as i64).all(|k| {
        PolySection::coeff(&s.beta, k, g).iter().all(|x| x.is_zero())
            && PolySection::coeff(&s.eta, k, g).iter().all(|x| x.is_zero())
    });
    if high_zero && trimmed(&s.beta) == expected.beta && trimmed(&s.eta) == expected.eta {
        Ok(Verdict::Prefered(h))
    } else {
        Ok(Verdict::InvariantButNotPrefered)
    }
}
