//! One handler per subcommand: decode the input, call the core, encode.

use nah_core::checks::{self, Scale};
use nah_core::error::{Error, Result};
use nah_core::gm::{self, ProjPoint, WeightedAction};
use nah_core::intmat::{smith_normal_form, IntMatrix};
use nah_core::json::{self as enc, as_array, as_i64, as_i64_rows, as_usize, get, get_opt, Decoder};
use nah_core::jump::{self, MAX_SCAN_SAMPLES};
use nah_core::lambda::{self, Verdict};
use nah_core::langton;
use nah_core::rees::{self, Fiber};
use nah_core::twistor::{self, QuaternionicSpace, RealOp, SpherePoint};
use nah_core::Scalar;
use serde_json::{json, Value};

use crate::{GmFlags, GmVerb, JumpVerb, LambdaVerb, LangtonVerb, ReesVerb, RingsVerb, TwistorVerb};

pub fn seed_required() -> Error {
    Error::Precondition("--seed is required for randomized verbs".into())
}

/// `v[key]` when present, otherwise `v` itself, so objects may be given
/// either wrapped or inline.
fn part<'a>(v: &'a Value, key: &str) -> &'a Value {
    get_opt(v, key).unwrap_or(v)
}

fn usize_field(v: &Value, key: &str) -> Result<usize> {
    as_usize(get(v, key)?, key)
}

pub fn rings(verb: RingsVerb, v: &Value, dec: &Decoder) -> Result<Value> {
    match verb {
        RingsVerb::Conj => {
            let s = dec.scalar(get(v, "scalar")?, "scalar")?;
            Ok(json!({"conj": enc::scalar(&s.conj())}))
        }
        RingsVerb::Eval => {
            let a = usize_field(v, "a")?;
            let p = dec.laurent(get(v, "p")?, a, "p")?;
            let rho = dec.scalars(get(v, "rho")?, "rho")?;
            if rho.len() != a {
                return Err(Error::Dimension(format!("rho has {} entries, a = {a}", rho.len())));
            }
            Ok(json!({"value": enc::scalar(&p.eval(&rho)?)}))
        }
        RingsVerb::Rank => {
            let m = dec.scalar_matrix(get(v, "M")?, "M")?;
            Ok(json!({"rank": m.rank()}))
        }
        RingsVerb::Minors => {
            let a = usize_field(v, "a")?;
            let m = dec.laurent_matrix(get(v, "M")?, a, "M")?;
            let k = usize_field(v, "k")?;
            Ok(json!({"k": k, "minors": enc::laurent_list(&m.minors(k)?, a)}))
        }
        RingsVerb::Snf => {
            let rows = as_i64_rows(get(v, "E")?, "E")?;
            let cols = rows.first().map_or(0, |r| r.len());
            if rows.is_empty() || cols == 0 || rows.iter().any(|r| r.len() != cols) {
                return Err(Error::Dimension("E must be a nonempty rectangular integer matrix".into()));
            }
            let s = smith_normal_form(&IntMatrix::new(rows));
            Ok(json!({
                "U": enc::int_matrix(&s.u),
                "D": enc::int_matrix(&s.d),
                "V": enc::int_matrix(&s.v),
                "invariant_factors": s.invariant_factors(),
            }))
        }
        RingsVerb::Split => {
            let b = part(v, "bundle");
            if get_opt(b, "field").and_then(Value::as_str) == Some("ratfun_s") {
                let bundle = dec.bundle_ratfun(b)?;
                return Ok(json!({
                    "splitting_type": bundle.splitting_type()?,
                    "det_exponent": bundle.det_exponent(),
                }));
            }
            let bundle = dec.bundle(b)?;
            let cert = bundle.factorization_certificate();
            Ok(json!({
                "splitting_type": bundle.splitting_type()?,
                "det_exponent": bundle.det_exponent(),
                "certificate": cert.as_ref().map_or(Value::Null, enc::certificate),
            }))
        }
        RingsVerb::H0 => {
            let bundle = dec.bundle(part(v, "bundle"))?;
            let m = as_i64(get(v, "m")?, "m")?;
            Ok(json!({"m": m, "h0": bundle.h0_twist(m)}))
        }
    }
}

fn fiber_value(point: u8, f: &Fiber) -> Value {
    match f {
        Fiber::Graded(g) => {
            let pieces: Vec<Value> = g
                .iter()
                .map(|(p, b)| json!({"p": p, "basis": enc::scalar_rows(b)}))
                .collect();
            json!({"point": point, "dim": f.dim(), "graded": pieces})
        }
        Fiber::Plain(b) => json!({"point": point, "dim": f.dim(), "basis": enc::scalar_rows(b)}),
    }
}

pub fn rees(verb: ReesVerb, v: &Value, dec: &Decoder) -> Result<Value> {
    match verb {
        ReesVerb::Build => {
            let f = dec.filtration(part(v, "filtration"))?;
            Ok(enc::rees_module(&rees::build_rees(&f)))
        }
        ReesVerb::Recover => {
            let m = dec.rees_module(part(v, "module"))?;
            Ok(enc::filtration(&rees::recover_filtration(&m)?))
        }
        ReesVerb::Fiber => {
            let point = as_usize(get(v, "point")?, "point")?;
            let point = u8::try_from(point).unwrap_or(u8::MAX);
            let module = match get_opt(v, "module") {
                Some(m) => dec.rees_module(m)?,
                None => rees::build_rees(&dec.filtration(part(v, "filtration"))?),
            };
            Ok(fiber_value(point, &rees::fiber(&module, point)?))
        }
        ReesVerb::Griffiths => {
            let f = dec.filtration(get(v, "filtration")?)?;
            let nabla = as_array(get(v, "nabla")?, "nabla")?
                .iter()
                .map(|m| dec.scalar_matrix(m, "nabla"))
                .collect::<Result<Vec<_>>>()?;
            Ok(json!({"transversal": rees::griffiths_check(&f, &nabla)?}))
        }
        ReesVerb::Glue => {
            let f = dec.filtration(get(v, "F")?)?;
            let (bundle, report) = match get_opt(v, "Fbar") {
                Some(fb) => rees::rees_p1(&f, &dec.filtration(fb)?)?,
                None => rees::rees_p1_conjugate(&f)?,
            };
            Ok(json!({
                "bundle": enc::bundle(&bundle),
                "splitting_type": report.splitting,
                "pure": report.pure,
                "weight": report.weight,
            }))
        }
    }
}

/// `λ` as a scalar, or `null` / `"inf"` for the point at infinity.
fn lambda_point(v: &Value, key: &str, dec: &Decoder) -> Result<Option<Scalar>> {
    match v.get(key) {
        None => Err(Error::Parse(format!("{key}: missing field"))),
        Some(Value::Null) => Ok(None),
        Some(Value::String(s)) if s == "inf" || s == "∞" => Ok(None),
        Some(x) => dec.scalar(x, key).map(Some),
    }
}

fn lambda_value(l: &Option<Scalar>) -> Value {
    l.as_ref().map_or(Value::String("inf".into()), enc::scalar)
}

pub fn twistor(verb: TwistorVerb, v: &Value, dec: &Decoder) -> Result<Value> {
    if let TwistorVerb::Sff = verb {
        let r = usize_field(v, "r")?;
        let rp = usize_field(v, "rPrime")?;
        let quaternionic = get_opt(v, "quaternionic").map_or(Some(true), Value::as_bool);
        let quaternionic = quaternionic.ok_or_else(|| Error::Parse("quaternionic: expected a boolean".into()))?;
        // the constraint system has 16 r² r′ unknowns; keep it at desk scale
        for (what, x) in [("r", r), ("rPrime", rp)] {
            if !(1..=3).contains(&x) {
                return Err(Error::OutOfRange {
                    what,
                    value: x as i64,
                    lo: 1,
                    hi: 3,
                });
            }
        }
        return Ok(json!({"r": r, "rPrime": rp, "quaternionic": quaternionic,
            "dim": twistor::quaternionic_sff_space(r, rp, quaternionic)}));
    }
    let qs: QuaternionicSpace = dec.quaternionic(part(v, "space"))?;
    match verb {
        TwistorVerb::Structure => {
            let l = match get_opt(v, "point") {
                Some(p) => {
                    let x = |k: &str| enc::as_rational(get(p, k)?, k);
                    twistor::inverse_stereographic(&SpherePoint::new(x("x")?, x("y")?, x("z")?)?)
                }
                None => lambda_point(v, "lambda", dec)?,
            };
            let op = match &l {
                Some(l) => qs.structure_at(l)?,
                None => qs.structure_at_infinity(),
            };
            let minus = RealOp::identity(qs.complex_dim()).neg();
            Ok(json!({
                "lambda": lambda_value(&l),
                "sphere": enc::sphere_point(&twistor::stereographic(l.as_ref())?),
                "operator": enc::real_op(&op),
                "squares_to_minus_one": op.compose(&op) == minus,
            }))
        }
        TwistorVerb::Section => {
            if let Some(s) = get_opt(v, "section") {
                let s = dec.section(s)?;
                if s.a.len() != qs.complex_dim() {
                    return Err(Error::Dimension(format!("section lives in C^{}", s.a.len())));
                }
                return Ok(json!({
                    "sigma": enc::section(&qs.sigma_section(&s)),
                    "sigma_invariant": qs.is_sigma_invariant(&s),
                }));
            }
            let w = dec.scalars(get(v, "v")?, "v")?;
            let l = lambda_point(v, "lambda0", dec)?;
            let s = qs.invariant_section_through(&w, l.as_ref())?;
            Ok(json!({
                "section": enc::section(&s),
                "sigma_invariant": qs.is_sigma_invariant(&s),
                "real_dim": qs.invariant_sections_real_dim(),
            }))
        }
        TwistorVerb::Bundle => {
            let b = qs.twistor_bundle()?;
            Ok(json!({
                "bundle": enc::bundle(&b),
                "splitting_type": b.splitting_type()?,
                "h0": b.h0_twist(0),
            }))
        }
        TwistorVerb::Sff => unreachable!("handled above"),
    }
}

pub fn lambda(verb: LambdaVerb, v: &Value, dec: &Decoder) -> Result<Value> {
    match verb {
        LambdaVerb::Pref => {
            let h = dec.harmonic(part(v, "h"))?;
            let l = dec.scalar(get(v, "lambda")?, "lambda")?;
            Ok(enc::hod_point(&lambda::prefered_section(&h, &l)))
        }
        LambdaVerb::Sigma => {
            let p = dec.hod_point(part(v, "point"))?;
            Ok(enc::hod_point(&lambda::sigma_prime(&p)?))
        }
        LambdaVerb::Act => {
            let t = dec.scalar(get(v, "t")?, "t")?;
            let p = dec.hod_point(get(v, "point")?)?;
            Ok(enc::hod_point(&lambda::gm_act(&t, &p)?))
        }
        LambdaVerb::Classify => {
            let s = dec.poly_section(part(v, "section"))?;
            Ok(match lambda::classify_invariant_section(&s)? {
                Verdict::Prefered(h) => json!({"verdict": "prefered", "h": enc::harmonic(&h)}),
                Verdict::NotInvariant => json!({"verdict": "not-invariant"}),
                Verdict::InvariantButNotPrefered => {
                    return Err(Error::Invariant("candidate is invariant but not prefered".into()))
                }
            })
        }
    }
}

pub fn jumploci(verb: JumpVerb, v: &Value, seed: Option<u64>, dec: &Decoder) -> Result<Value> {
    if matches!(verb, JumpVerb::Scan) && seed.is_none() {
        return Err(seed_required());
    }
    let p = dec.presentation(part(v, "presentation"))?;
    match verb {
        JumpVerb::Dims => {
            let rho = dec.scalars(get(v, "rho")?, "rho")?;
            let (h2, h3) = jump::betti_dims(&p, &rho)?;
            Ok(json!({"h2": h2, "h3": h3}))
        }
        JumpVerb::Ideal => {
            if let Some(j) = get_opt(v, "h3") {
                let j = as_i64(j, "h3")?;
                return Ok(json!({"h3": j, "generators": enc::laurent_list(&jump::jump_ideal_h3(&p, j)?, p.a())}));
            }
            let k = usize_field(v, "k")?;
            Ok(json!({"k": k, "generators": enc::laurent_list(&jump::jump_ideal(&p, k)?, p.a())}))
        }
        JumpVerb::Contains => {
            let k = usize_field(v, "k")?;
            let s = dec.subtorus(get(v, "subtorus")?)?;
            Ok(json!({"contains": jump::contains_subtorus(&p, k, &s)?}))
        }
        JumpVerb::Scan => {
            let seed = seed.expect("checked above");
            let k = usize_field(v, "k")?;
            let samples = usize_field(v, "samples")?;
            if samples > MAX_SCAN_SAMPLES {
                return Err(Error::OutOfRange {
                    what: "samples",
                    value: samples as i64,
                    lo: 0,
                    hi: MAX_SCAN_SAMPLES as i64,
                });
            }
            let hits = jump::character_scan(&p, k, samples, seed)?;
            let points: Vec<Value> = hits.iter().map(|rho| enc::scalars(rho)).collect();
            Ok(json!({"k": k, "samples": samples, "seed": seed, "points": points}))
        }
    }
}

fn flag_point(s: &str) -> Result<ProjPoint> {
    let coords = s
        .split(':')
        .map(|c| c.parse::<Scalar>())
        .collect::<std::result::Result<Vec<_>, _>>()?;
    ProjPoint::new(coords)
}

/// Points from `--point` flags, else from the input field `key`.
fn points(v: &Value, key: &str, flags: &GmFlags, dec: &Decoder) -> Result<Vec<ProjPoint>> {
    if !flags.point.is_empty() {
        return flags.point.iter().map(|s| flag_point(s)).collect();
    }
    match get_opt(v, key) {
        Some(x) => Ok(vec![dec.point(x, key)?]),
        None => Err(Error::Parse(format!("{key}: missing field (or pass --point)"))),
    }
}

fn action(v: &Value, flags: &GmFlags) -> Result<WeightedAction> {
    let weights = match &flags.weights {
        Some(w) => w.clone(),
        None => enc::as_i64_list(get(part(v, "action"), "weights")?, "weights")?,
    };
    let a = match &flags.a {
        Some(a) => gm::parse_shift(a)?,
        None => enc::as_rational(get(part(v, "action"), "a")?, "a")?,
    };
    WeightedAction::new(weights, a)
}

pub fn gmquot(verb: GmVerb, v: &Value, flags: &GmFlags, dec: &Decoder) -> Result<Value> {
    let w = action(v, flags)?;
    let comps = |cs: &[gm::FixedComponent]| Value::Array(cs.iter().map(enc::component).collect());
    let witnesses = match get_opt(v, "witnesses") {
        Some(ws) => Some(
            as_array(ws, "witnesses")?
                .iter()
                .map(|x| dec.point(x, "witnesses"))
                .collect::<Result<Vec<_>>>()?,
        ),
        None => None,
    };
    match verb {
        GmVerb::Fixed => Ok(json!({"components": comps(&w.fixed_components())})),
        GmVerb::Limits => {
            let x = &points(v, "point", flags, dec)?[0];
            Ok(json!({
                "point": enc::point(x),
                "limit0": enc::point(&w.limit0(x)?),
                "limitinf": enc::point(&w.limitinf(x)?),
            }))
        }
        GmVerb::Order => {
            let order = w.comp_order(witnesses.as_deref())?;
            Ok(json!({"components": comps(&order.components), "relations": order.relations()}))
        }
        GmVerb::Decompose => {
            let d = w.decompose(witnesses.as_deref())?;
            Ok(json!({"plus": comps(&d.plus), "minus": comps(&d.minus)}))
        }
        GmVerb::Membership => {
            let x = &points(v, "point", flags, dec)?[0];
            Ok(json!({"status": w.in_u(x)?.as_str()}))
        }
        GmVerb::OrbitEq => {
            let (x, y) = if flags.point.len() >= 2 {
                (flag_point(&flags.point[0])?, flag_point(&flags.point[1])?)
            } else {
                (dec.point(get(v, "x")?, "x")?, dec.point(get(v, "y")?, "y")?)
            };
            Ok(json!({"equivalent": w.orbit_equivalent(&x, &y)?}))
        }
        GmVerb::Arc => {
            let arc = dec.arc(get(v, "arc")?, "arc")?;
            let pieces: Vec<Value> = w.newton_limits(&arc)?.iter().map(enc::newton_piece).collect();
            let gauge = match w.choose_gauge(&arc) {
                Ok(g) => enc::gauge(&g),
                Err(e) if !e.is_internal() => json!({"error": {"kind": e.kind(), "message": e.to_string()}}),
                Err(e) => return Err(e),
            };
            Ok(json!({"pieces": pieces, "gauge": gauge}))
        }
        GmVerb::Invariants => {
            let d = match flags.degree {
                Some(d) => d,
                None => usize_field(v, "d")?,
            };
            Ok(json!({"d": d, "monomials": w.invariant_monomials(d)}))
        }
    }
}

pub fn langton(verb: LangtonVerb, v: &Value, dec: &Decoder) -> Result<Value> {
    let f = dec.disk_family(part(v, "family"))?;
    match verb {
        LangtonVerb::Generic => Ok(json!({"splitting_type": langton::generic_splitting(&f)?})),
        LangtonVerb::Special => {
            let sp = langton::special_splitting(&f)?;
            Ok(json!({"balanced": langton::is_balanced(&sp), "splitting_type": sp}))
        }
        LangtonVerb::Step => {
            let (next, cert) = langton::langton_step(&f)?;
            Ok(json!({
                "family": enc::disk_family(&next),
                "certificate": enc::step_certificate(&cert),
                "special_type": langton::special_splitting(&next)?,
            }))
        }
        LangtonVerb::Reduce => {
            let generic = langton::generic_splitting(&f)?;
            let red = langton::langton_reduce(&f)?;
            Ok(json!({
                "steps": red.steps(),
                "final_type": red.final_type(),
                "generic_type": generic,
                "trail": red.trail.iter().map(enc::hn_record).collect::<Vec<_>>(),
                "certificates": red.certificates.iter().map(enc::step_certificate).collect::<Vec<_>>(),
                "family": enc::disk_family(&red.family),
            }))
        }
    }
}

/// Returns the report and whether every criterion passed.
pub fn selftest(seed: u64, quick: bool) -> (Value, bool) {
    let scale = if quick { Scale::quick() } else { Scale::full() };
    let reports = checks::run_all(seed, scale);
    let ok = reports.iter().all(|r| r.passed());
    let criteria: Vec<Value> = reports
        .iter()
        .map(|r| {
            json!({
                "id": r.id,
                "name": r.name,
                "cases": r.cases,
                "passed": r.passed(),
                "failures": r.failures.iter().take(5).collect::<Vec<_>>(),
            })
        })
        .collect();
    (json!({"seed": seed, "quick": quick, "passed": ok, "criteria": criteria}), ok)
}
