//! JSON encodings for every input and output object.
//!
//! Encoders are free functions returning [`Value`]. Decoders hang off
//! [`Decoder`], which carries the cap on cyclotomic orders accepted from
//! untrusted input. Every decoding failure is an [`Error::Parse`] naming the
//! offending field.

use serde_json::{json, Value};

use crate::birkhoff::{Certificate, P1Bundle};
use crate::error::{Error, Result};
use crate::gm::{Arc, FixedComponent, GaugeChoice, NewtonPiece, ProjPoint, WeightedAction};
use crate::intmat::IntMatrix;
use crate::jump::{CWPresentation, SubtorusParam};
use crate::lambda::{HarmonicLine, HodPoint, PolySection};
use crate::langton::{DiskFamily, HNRecord, StepCertificate};
use crate::laurent::{LaurentMatrix, LaurentPoly};
use crate::matrix::ScalarMatrix;
use crate::ratfun::RatFun;
use crate::rees::{FilteredSpace, ReesModule};
use crate::scalar::{fmt_q, Scalar, Q};
use crate::twistor::{QuaternionicSpace, RealOp, SectionO1, SpherePoint};
use crate::upoly::UPoly;
use crate::zpoly::{ZMatrix, ZPoly};

pub const DEFAULT_MAX_CYCLOTOMIC_ORDER: u32 = 720;

fn perr(path: &str, msg: impl std::fmt::Display) -> Error {
    Error::Parse(format!("{path}: {msg}"))
}

// ---------------------------------------------------------------- encoders

pub fn rational(x: &Q) -> Value {
    Value::String(fmt_q(x))
}

pub fn scalar(s: &Scalar) -> Value {
    match s {
        Scalar::Gaussian { .. } => Value::String(s.to_string()),
        Scalar::Cyclotomic(c) => json!({
            "order": c.order(),
            "coeffs": c.coeffs().iter().map(rational).collect::<Vec<_>>(),
        }),
    }
}

pub fn scalars(v: &[Scalar]) -> Value {
    Value::Array(v.iter().map(scalar).collect())
}

pub fn scalar_rows(rows: &[Vec<Scalar>]) -> Value {
    Value::Array(rows.iter().map(|r| scalars(r)).collect())
}

pub fn scalar_matrix(m: &ScalarMatrix) -> Value {
    scalar_rows(&m.to_rows())
}

pub fn int_matrix(m: &IntMatrix) -> Value {
    json!(m.to_rows())
}

pub fn laurent(p: &LaurentPoly, rank: usize) -> Value {
    Value::Array(
        p.padded_terms(rank)
            .iter()
            .map(|(e, c)| json!({"exp": e, "coeff": scalar(c)}))
            .collect(),
    )
}

pub fn laurent_list(ps: &[LaurentPoly], rank: usize) -> Value {
    Value::Array(ps.iter().map(|p| laurent(p, rank)).collect())
}

pub fn laurent_matrix(m: &LaurentMatrix, rank: usize) -> Value {
    Value::Array(m.entries.iter().map(|row| laurent_list(row, rank)).collect())
}

/// One-variable Laurent polynomial in the `{"exp": [e], "coeff"}` form.
pub fn zpoly(p: &ZPoly<Scalar>) -> Value {
    Value::Array(p.terms().map(|(e, c)| json!({"exp": [e], "coeff": scalar(c)})).collect())
}

pub fn upoly(p: &UPoly<Scalar>) -> Value {
    if p.is_zero() {
        return json!(["0"]);
    }
    scalars(p.coeffs())
}

pub fn ratfun(f: &RatFun) -> Value {
    json!({"num": upoly(f.num()), "den": upoly(f.den())})
}

fn zpoly_ratfun(p: &ZPoly<RatFun>) -> Value {
    Value::Array(p.terms().map(|(e, c)| json!({"exp": [e], "coeff": ratfun(c)})).collect())
}

pub fn zmatrix(m: &ZMatrix<Scalar>) -> Value {
    Value::Array(m.entries().iter().map(|r| Value::Array(r.iter().map(zpoly).collect())).collect())
}

pub fn bundle(b: &P1Bundle<Scalar>) -> Value {
    json!({"rank": b.rank(), "var": "z", "field": "gaussian", "entries": zmatrix(b.transition())})
}

pub fn bundle_ratfun(b: &P1Bundle<RatFun>) -> Value {
    let t = b.transition();
    let entries: Vec<Value> = t
        .entries()
        .iter()
        .map(|r| Value::Array(r.iter().map(zpoly_ratfun).collect()))
        .collect();
    json!({"rank": b.rank(), "var": "z", "field": "ratfun_s", "entries": entries})
}

pub fn certificate(c: &Certificate<Scalar>) -> Value {
    json!({"A": zmatrix(&c.a), "D": c.d_exps, "C": zmatrix(&c.c)})
}

pub fn filtration(f: &FilteredSpace) -> Value {
    let steps: Vec<Value> = f
        .steps()
        .iter()
        .map(|(p, b)| json!({"p": p, "basis": scalar_rows(b)}))
        .collect();
    json!({"dim": f.dim(), "steps": steps})
}

pub fn rees_module(r: &ReesModule) -> Value {
    json!({"dim": r.dim(), "basis": scalar_rows(&r.basis), "weights": r.weights})
}

pub fn quaternionic(q: &QuaternionicSpace) -> Value {
    json!({"r": q.r(), "J": scalar_matrix(q.j_matrix())})
}

pub fn real_op(op: &RealOp) -> Value {
    json!({"A": scalar_matrix(&op.a), "B": scalar_matrix(&op.b)})
}

pub fn section(s: &SectionO1) -> Value {
    json!({"a": scalars(&s.a), "b": scalars(&s.b)})
}

pub fn sphere_point(p: &SpherePoint) -> Value {
    json!({"x": rational(&p.x), "y": rational(&p.y), "z": rational(&p.z)})
}

pub fn harmonic(h: &HarmonicLine) -> Value {
    json!({"g": h.g(), "nu": scalars(&h.nu), "thetaPrime": scalars(&h.theta_prime)})
}

pub fn hod_point(p: &HodPoint) -> Value {
    json!({"beta": scalars(&p.beta), "eta": scalars(&p.eta), "lambda": scalar(&p.lambda)})
}

pub fn poly_section(s: &PolySection) -> Value {
    json!({"beta": scalar_rows(&s.beta), "eta": scalar_rows(&s.eta)})
}

pub fn presentation(p: &CWPresentation) -> Value {
    json!({"a": p.a(), "m": p.m(), "l": p.l(), "A": laurent_matrix(p.matrix(), p.a())})
}

pub fn subtorus(s: &SubtorusParam) -> Value {
    json!({"zeta": scalars(&s.zeta), "E": s.e})
}

pub fn action(w: &WeightedAction) -> Value {
    json!({"weights": w.weights(), "a": rational(w.shift())})
}

pub fn point(x: &ProjPoint) -> Value {
    scalars(x.coords())
}

pub fn component(c: &FixedComponent) -> Value {
    json!({"weight": c.weight, "alpha": c.alpha(), "indices": c.indices})
}

pub fn arc(a: &Arc) -> Value {
    Value::Array(a.coords().iter().map(zpoly).collect())
}

fn opt_rational(x: &Option<Q>) -> Value {
    x.as_ref().map_or(Value::Null, rational)
}

pub fn newton_piece(p: &NewtonPiece) -> Value {
    match p {
        NewtonPiece::Interval { lo, hi, component: c, landing } => json!({
            "kind": "interval",
            "lo": opt_rational(lo),
            "hi": opt_rational(hi),
            "component": component(c),
            "landing": point(landing),
        }),
        NewtonPiece::Breakpoint { eps, landing } => json!({
            "kind": "breakpoint",
            "eps": rational(eps),
            "landing": point(landing),
        }),
    }
}

pub fn gauge(g: &GaugeChoice) -> Value {
    json!({
        "eps": rational(&g.eps),
        "landing": point(&g.landing),
        "below": component(&g.below),
        "above": component(&g.above),
    })
}

fn langton_entry(p: &ZPoly<RatFun>) -> Value {
    Value::Array(p.terms().map(|(e, c)| json!({"zexp": e, "coeff": ratfun(c)})).collect())
}

pub fn disk_matrix(m: &ZMatrix<RatFun>) -> Value {
    Value::Array(
        m.entries()
            .iter()
            .map(|r| Value::Array(r.iter().map(langton_entry).collect()))
            .collect(),
    )
}

pub fn disk_family(f: &DiskFamily) -> Value {
    json!({"rank": f.rank(), "entries": disk_matrix(f.transition())})
}

pub fn hn_record(r: &HNRecord) -> Value {
    json!({"step": r.step, "special_type": r.special_type})
}

pub fn step_certificate(c: &StepCertificate) -> Value {
    json!({"left": disk_matrix(&c.left), "right": disk_matrix(&c.right), "delta": c.delta})
}

// ---------------------------------------------------------------- decoders

pub fn get<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| perr(key, "missing field"))
}

pub fn get_opt<'a>(v: &'a Value, key: &str) -> Option<&'a Value> {
    v.get(key).filter(|x| !x.is_null())
}

pub fn as_array<'a>(v: &'a Value, path: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| perr(path, "expected an array"))
}

pub fn as_i64(v: &Value, path: &str) -> Result<i64> {
    v.as_i64().ok_or_else(|| perr(path, "expected an integer"))
}

pub fn as_usize(v: &Value, path: &str) -> Result<usize> {
    v.as_u64()
        .and_then(|x| usize::try_from(x).ok())
        .ok_or_else(|| perr(path, "expected a non-negative integer"))
}

pub fn as_i64_list(v: &Value, path: &str) -> Result<Vec<i64>> {
    as_array(v, path)?.iter().map(|x| as_i64(x, path)).collect()
}

pub fn as_i64_rows(v: &Value, path: &str) -> Result<Vec<Vec<i64>>> {
    as_array(v, path)?.iter().map(|r| as_i64_list(r, path)).collect()
}

pub fn as_rational(v: &Value, path: &str) -> Result<Q> {
    match v {
        Value::Number(n) if n.is_i64() => Ok(crate::scalar::q(n.as_i64().unwrap())),
        Value::String(s) => crate::gm::parse_shift(s).map_err(|e| perr(path, e)),
        _ => Err(perr(path, "expected a rational \"p/q\"")),
    }
}

#[derive(Clone, Copy, Debug)]
pub struct Decoder {
    pub max_cyclotomic_order: u32,
}

impl Default for Decoder {
    fn default() -> Self {
        Decoder {
            max_cyclotomic_order: DEFAULT_MAX_CYCLOTOMIC_ORDER,
        }
    }
}

impl Decoder {
    pub fn scalar(&self, v: &Value, path: &str) -> Result<Scalar> {
        match v {
            Value::String(s) => s.parse().map_err(|e| perr(path, e)),
            Value::Number(n) if n.is_i64() => Ok(Scalar::int(n.as_i64().unwrap())),
            Value::Object(_) => {
                let order = as_usize(get(v, "order")?, path)?;
                if order == 0 || order > self.max_cyclotomic_order as usize {
                    return Err(perr(
                        path,
                        format!("cyclotomic order {order} outside 1..={}", self.max_cyclotomic_order),
                    ));
                }
                let coeffs = as_array(get(v, "coeffs")?, path)?
                    .iter()
                    .map(|c| as_rational(c, path))
                    .collect::<Result<Vec<_>>>()?;
                Scalar::cyclotomic(order as u32, coeffs).map_err(|e| perr(path, e))
            }
            _ => Err(perr(path, "expected a scalar")),
        }
    }

    pub fn scalars(&self, v: &Value, path: &str) -> Result<Vec<Scalar>> {
        let out = as_array(v, path)?
            .iter()
            .map(|x| self.scalar(x, path))
            .collect::<Result<Vec<_>>>()?;
        check_orders(&out, path)?;
        Ok(out)
    }

    pub fn scalar_rows(&self, v: &Value, path: &str) -> Result<Vec<Vec<Scalar>>> {
        let rows = as_array(v, path)?
            .iter()
            .map(|r| self.scalars(r, path))
            .collect::<Result<Vec<_>>>()?;
        check_orders(&rows.concat(), path)?;
        Ok(rows)
    }

    pub fn scalar_matrix(&self, v: &Value, path: &str) -> Result<ScalarMatrix> {
        let rows = self.scalar_rows(v, path)?;
        let cols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != cols) {
            return Err(perr(path, "ragged matrix"));
        }
        Ok(ScalarMatrix::from_rows(rows))
    }

    /// A list of `{"exp": [...], "coeff": scalar}` terms in `rank` variables.
    pub fn laurent(&self, v: &Value, rank: usize, path: &str) -> Result<LaurentPoly> {
        let mut terms = Vec::new();
        for t in as_array(v, path)? {
            let e = as_i64_list(get(t, "exp")?, path)?;
            if e.len() != rank {
                return Err(perr(path, format!("exponent {e:?} should have {rank} entries")));
            }
            terms.push((e, self.scalar(get(t, "coeff")?, path)?));
        }
        let cs: Vec<Scalar> = terms.iter().map(|(_, c)| c.clone()).collect();
        check_orders(&cs, path)?;
        Ok(LaurentPoly::from_terms(terms))
    }

    pub fn laurent_matrix(&self, v: &Value, rank: usize, path: &str) -> Result<LaurentMatrix> {
        let rows = as_array(v, path)?
            .iter()
            .map(|r| {
                as_array(r, path)?
                    .iter()
                    .map(|p| self.laurent(p, rank, path))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        LaurentMatrix::new(rows).map_err(|e| perr(path, e))
    }

    /// One-variable Laurent polynomial; a bare scalar is read as a constant.
    pub fn zpoly(&self, v: &Value, path: &str) -> Result<ZPoly<Scalar>> {
        if !v.is_array() {
            return Ok(ZPoly::constant(self.scalar(v, path)?));
        }
        let p = self.laurent(v, 1, path)?;
        Ok(ZPoly::from_terms(p.padded_terms(1).into_iter().map(|(e, c)| (e[0], c))))
    }

    pub fn zmatrix(&self, v: &Value, path: &str) -> Result<ZMatrix<Scalar>> {
        let rows = self.square(v, path, |x| self.zpoly(x, path))?;
        Ok(ZMatrix::new(rows))
    }

    fn square<T>(&self, v: &Value, path: &str, f: impl Fn(&Value) -> Result<T>) -> Result<Vec<Vec<T>>> {
        let rows = as_array(v, path)?;
        let n = rows.len();
        rows.iter()
            .map(|r| {
                let r = as_array(r, path)?;
                if r.len() != n {
                    return Err(perr(path, format!("expected a square {n}x{n} matrix")));
                }
                r.iter().map(&f).collect()
            })
            .collect()
    }

    /// Ascending coefficient list in `s`; a bare scalar is a constant.
    pub fn upoly(&self, v: &Value, path: &str) -> Result<UPoly<Scalar>> {
        if v.is_array() {
            Ok(UPoly::new(self.scalars(v, path)?))
        } else {
            Ok(UPoly::constant(self.scalar(v, path)?))
        }
    }

    pub fn ratfun(&self, v: &Value, path: &str) -> Result<RatFun> {
        if !v.is_object() || v.get("order").is_some() {
            return Ok(RatFun::scalar(self.scalar(v, path)?));
        }
        let num = self.upoly(get(v, "num")?, path)?;
        let den = match get_opt(v, "den") {
            Some(d) => self.upoly(d, path)?,
            None => UPoly::one(),
        };
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(RatFun::new(num, den))
    }

    fn zpoly_ratfun(&self, v: &Value, path: &str) -> Result<ZPoly<RatFun>> {
        let mut terms = Vec::new();
        for t in as_array(v, path)? {
            let e = as_i64_list(get(t, "exp")?, path)?;
            if e.len() != 1 {
                return Err(perr(path, "expected a one-variable exponent"));
            }
            terms.push((e[0], self.ratfun(get(t, "coeff")?, path)?));
        }
        Ok(ZPoly::from_terms(terms))
    }

    /// Accepts both the `gaussian` and `ratfun_s` field tags; the latter is
    /// returned through [`Decoder::bundle_ratfun`].
    pub fn bundle(&self, v: &Value) -> Result<P1Bundle<Scalar>> {
        let field = get_opt(v, "field").and_then(|f| f.as_str()).unwrap_or("gaussian");
        if field != "gaussian" {
            return Err(perr("field", format!("expected \"gaussian\", got {field:?}")));
        }
        let t = self.zmatrix(get(v, "entries")?, "entries")?;
        check_rank(v, t.n())?;
        P1Bundle::new(t)
    }

    pub fn bundle_ratfun(&self, v: &Value) -> Result<P1Bundle<RatFun>> {
        let rows = self.square(get(v, "entries")?, "entries", |x| self.zpoly_ratfun(x, "entries"))?;
        let t = ZMatrix::new(rows);
        check_rank(v, t.n())?;
        P1Bundle::new(t)
    }

    pub fn filtration(&self, v: &Value) -> Result<FilteredSpace> {
        let dim = as_usize(get(v, "dim")?, "dim")?;
        let steps = as_array(get(v, "steps")?, "steps")?
            .iter()
            .map(|s| {
                let p = as_i64(get(s, "p")?, "steps.p")?;
                Ok((p, self.scalar_rows(get(s, "basis")?, "steps.basis")?))
            })
            .collect::<Result<Vec<_>>>()?;
        FilteredSpace::from_steps(dim, steps)
    }

    pub fn rees_module(&self, v: &Value) -> Result<ReesModule> {
        Ok(ReesModule {
            basis: self.scalar_rows(get(v, "basis")?, "basis")?,
            weights: as_i64_list(get(v, "weights")?, "weights")?,
        })
    }

    /// `{"r": r}` alone selects the standard structure.
    pub fn quaternionic(&self, v: &Value) -> Result<QuaternionicSpace> {
        let r = as_usize(get(v, "r")?, "r")?;
        match get_opt(v, "J") {
            Some(j) => QuaternionicSpace::new(r, self.scalar_matrix(j, "J")?),
            None => Ok(QuaternionicSpace::standard(r)),
        }
    }

    pub fn section(&self, v: &Value) -> Result<SectionO1> {
        let a = self.scalars(get(v, "a")?, "a")?;
        let b = self.scalars(get(v, "b")?, "b")?;
        if a.len() != b.len() {
            return Err(Error::Dimension("section coefficients a and b differ in length".into()));
        }
        Ok(SectionO1 { a, b })
    }

    pub fn harmonic(&self, v: &Value) -> Result<HarmonicLine> {
        let nu = self.scalars(get(v, "nu")?, "nu")?;
        let tp = self.scalars(get(v, "thetaPrime")?, "thetaPrime")?;
        if let Some(g) = get_opt(v, "g") {
            let g = as_usize(g, "g")?;
            if g != nu.len() {
                return Err(Error::Dimension(format!("g = {g} but nu has {} entries", nu.len())));
            }
        }
        HarmonicLine::new(nu, tp)
    }

    pub fn hod_point(&self, v: &Value) -> Result<HodPoint> {
        HodPoint::new(
            self.scalars(get(v, "beta")?, "beta")?,
            self.scalars(get(v, "eta")?, "eta")?,
            self.scalar(get(v, "lambda")?, "lambda")?,
        )
    }

    /// Coefficient lists `[c₀, c₁, …]` of each polynomial map in λ.
    pub fn poly_section(&self, v: &Value) -> Result<PolySection> {
        let beta = self.scalar_rows(get(v, "beta")?, "beta")?;
        let eta = self.scalar_rows(get(v, "eta")?, "eta")?;
        if beta.len() != eta.len() || beta.iter().chain(&eta).any(|c| c.len() != beta[0].len()) {
            return Err(Error::Dimension("beta and eta coefficients must share degree and g".into()));
        }
        Ok(PolySection { beta, eta })
    }

    pub fn presentation(&self, v: &Value) -> Result<CWPresentation> {
        let a = as_usize(get(v, "a")?, "a")?;
        let m = as_usize(get(v, "m")?, "m")?;
        let l = as_usize(get(v, "l")?, "l")?;
        let mat = self.laurent_matrix(get(v, "A")?, a, "A")?;
        CWPresentation::new(a, m, l, mat)
    }

    pub fn subtorus(&self, v: &Value) -> Result<SubtorusParam> {
        SubtorusParam::new(self.scalars(get(v, "zeta")?, "zeta")?, as_i64_rows(get(v, "E")?, "E")?)
    }

    pub fn action(&self, v: &Value) -> Result<WeightedAction> {
        let w = as_i64_list(get(v, "weights")?, "weights")?;
        let a = as_rational(get(v, "a")?, "a")?;
        WeightedAction::new(w, a)
    }

    pub fn point(&self, v: &Value, path: &str) -> Result<ProjPoint> {
        ProjPoint::new(self.scalars(v, path)?)
    }

    pub fn arc(&self, v: &Value, path: &str) -> Result<Arc> {
        let coords = as_array(v, path)?
            .iter()
            .map(|c| self.zpoly(c, path))
            .collect::<Result<Vec<_>>>()?;
        Arc::new(coords)
    }

    /// An entry is a list of `{"zexp", "coeff": {"num", "den"}}` terms; a
    /// single term object is also accepted.
    fn langton_entry(&self, v: &Value, path: &str) -> Result<ZPoly<RatFun>> {
        let terms: Vec<&Value> = match v {
            Value::Array(ts) => ts.iter().collect(),
            Value::Object(_) => vec![v],
            _ => return Err(perr(path, "expected a term list")),
        };
        let mut out = Vec::new();
        for t in terms {
            let e = as_i64(get(t, "zexp")?, path)?;
            out.push((e, self.ratfun(get(t, "coeff")?, path)?));
        }
        Ok(ZPoly::from_terms(out))
    }

    pub fn disk_family(&self, v: &Value) -> Result<DiskFamily> {
        let rows = self.square(get(v, "entries")?, "entries", |x| self.langton_entry(x, "entries"))?;
        let t = ZMatrix::new(rows);
        check_rank(v, t.n())?;
        DiskFamily::new(t)
    }
}

fn check_rank(v: &Value, n: usize) -> Result<()> {
    if let Some(r) = get_opt(v, "rank") {
        let r = as_usize(r, "rank")?;
        if r != n {
            return Err(Error::Dimension(format!("rank {r} but the matrix is {n}x{n}")));
        }
    }
    Ok(())
}

/// Mixed cyclotomic orders are rejected up front so no arithmetic panics.
fn check_orders(v: &[Scalar], path: &str) -> Result<()> {
    let mut seen: Option<u32> = None;
    for s in v {
        if let Some(o) = s.order() {
            match seen {
                Some(p) if p != o => return Err(perr(path, format!("mixed cyclotomic orders {p} and {o}"))),
                _ => seen = Some(o),
            }
        }
    }
    if let Some(o) = seen {
        if let Some(g) = v.iter().find(|s| s.order().is_none() && !s.compatible(&Scalar::zeta(o))) {
            return Err(perr(path, format!("gaussian {g} does not embed in order {o}")));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::qf;

    fn dec() -> Decoder {
        Decoder::default()
    }

    #[test]
    fn scalar_strings_roundtrip() {
        for s in ["0", "3", "-1/2", "i", "-i", "2/3*i", "1/2+3/4*i", "-5-i"] {
            let x: Scalar = s.parse().unwrap();
            assert_eq!(scalar(&x), Value::String(s.into()));
            assert_eq!(dec().scalar(&scalar(&x), "x").unwrap(), x);
        }
    }

    #[test]
    fn cyclotomic_roundtrip_and_cap() {
        let z = Scalar::zeta(5);
        let v = scalar(&z);
        assert_eq!(v["order"], 5);
        assert_eq!(dec().scalar(&v, "x").unwrap(), z);
        let tight = Decoder { max_cyclotomic_order: 4 };
        assert!(matches!(tight.scalar(&v, "x"), Err(Error::Parse(_))));
    }

    #[test]
    fn mixed_orders_rejected() {
        let v = json!([scalar(&Scalar::zeta(5)), scalar(&Scalar::zeta(7))]);
        assert!(dec().scalars(&v, "v").is_err());
        let w = json!([scalar(&Scalar::zeta(3)), "i"]);
        assert!(dec().scalars(&w, "v").is_err());
    }

    #[test]
    fn laurent_roundtrip() {
        let p = LaurentPoly::from_terms([(vec![1, -2], Scalar::int(3)), (vec![0, 0], Scalar::gi(0, 1))]);
        let v = laurent(&p, 2);
        assert_eq!(dec().laurent(&v, 2, "p").unwrap(), p);
        assert!(dec().laurent(&v, 3, "p").is_err());
    }

    #[test]
    fn filtration_roundtrip() {
        let f = FilteredSpace::from_steps(
            2,
            vec![
                (0, vec![vec![Scalar::int(1), Scalar::int(0)], vec![Scalar::int(0), Scalar::int(1)]]),
                (1, vec![vec![Scalar::int(1), Scalar::gi(0, 1)]]),
            ],
        )
        .unwrap();
        let back = dec().filtration(&filtration(&f)).unwrap();
        assert!(back.same_filtration(&f));
    }

    #[test]
    fn disk_family_roundtrip() {
        let v = json!({"rank": 2, "entries": [
            [[{"zexp": 1, "coeff": {"num": ["1"], "den": ["1"]}}], [{"zexp": 0, "coeff": {"num": ["0", "1"], "den": ["1"]}}]],
            [[], {"zexp": -1, "coeff": {"num": ["1"]}}]
        ]});
        let f = dec().disk_family(&v).unwrap();
        let again = dec().disk_family(&disk_family(&f)).unwrap();
        assert_eq!(f.transition(), again.transition());
        let bad = json!({"rank": 3, "entries": v["entries"]});
        assert!(dec().disk_family(&bad).is_err());
    }

    #[test]
    fn ratfun_zero_denominator() {
        let v = json!({"num": ["1"], "den": ["0"]});
        assert_eq!(dec().ratfun(&v, "c").unwrap_err(), Error::DivisionByZero);
    }

    #[test]
    fn action_shift_forms() {
        let w = dec().action(&json!({"weights": [0, 1, 2], "a": "-1/2"})).unwrap();
        assert_eq!(w.shift(), &qf(-1, 2));
        assert_eq!(action(&w), json!({"weights": [0, 1, 2], "a": "-1/2"}));
        let w = dec().action(&json!({"weights": [0, 1], "a": 3})).unwrap();
        assert_eq!(w.shift(), &qf(3, 1));
    }

    #[test]
    fn bundle_roundtrip() {
        let t = ZMatrix::new(vec![
            vec![ZPoly::monomial(Scalar::int(1), -1), ZPoly::monomial(Scalar::gi(1, 1), 2)],
            vec![ZPoly::zero(), ZPoly::monomial(Scalar::int(1), 1)],
        ]);
        let b = P1Bundle::new(t).unwrap();
        let back = dec().bundle(&bundle(&b)).unwrap();
        assert_eq!(back.transition(), b.transition());
    }
}
