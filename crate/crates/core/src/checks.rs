//! Randomized and fixture-based end-to-end checks, one per acceptance
//! criterion. Each returns a [`Report`] rather than panicking so the same code
//! drives the test suite and the `selftest` command.
//!
//! Randomized cases draw from `random::shard(seed, k)` for case `k`, so a
//! failing case can be replayed in isolation and the cases run in parallel.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::birkhoff::P1Bundle;
use crate::gm::{Arc, Membership, NewtonPiece, ProjPoint, WeightedAction};
use crate::jump::{self, CWPresentation, SubtorusParam};
use crate::lambda::{self, HarmonicLine, PolySection, Verdict};
use crate::langton::{self, DiskFamily};
use crate::laurent::{LaurentMatrix, LaurentPoly};
use crate::matrix::ScalarMatrix;
use crate::par;
use crate::random;
use crate::ratfun::RatFun;
use crate::rees::{self, FilteredSpace};
use crate::scalar::{q, qf, Scalar};
use crate::twistor::{self, QuaternionicSpace, RealOp, SpherePoint};
use crate::zpoly::{ZMatrix, ZPoly};

#[derive(Clone, Debug)]
pub struct Report {
    pub id: u8,
    pub name: &'static str,
    pub cases: usize,
    pub failures: Vec<String>,
}

impl Report {
    fn new(id: u8, name: &'static str) -> Self {
        Report {
            id,
            name,
            cases: 0,
            failures: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    /// Folds per-case outcomes (`None` = pass) computed elsewhere.
    fn absorb(&mut self, outcomes: Vec<Option<String>>) {
        self.cases += outcomes.len();
        self.failures.extend(outcomes.into_iter().flatten());
    }

    pub fn line(&self) -> String {
        let verdict = if self.passed() { "PASS" } else { "FAIL" };
        let mut s = format!("[{verdict}] {}. {} ({} checks)", self.id, self.name, self.cases);
        if let Some(f) = self.failures.first() {
            s.push_str(&format!(": {} failure(s), first: {f}", self.failures.len()));
        }
        s
    }
}

/// Case counts. `full` is the acceptance scale; `quick` divides the
/// randomized counts by ten for interactive use.
#[derive(Clone, Copy, Debug)]
pub struct Scale {
    divisor: usize,
}

impl Scale {
    pub fn full() -> Self {
        Scale { divisor: 1 }
    }

    pub fn quick() -> Self {
        Scale { divisor: 10 }
    }

    fn n(&self, count: usize) -> usize {
        (count / self.divisor).max(1)
    }
}

fn cases<F>(seed: u64, n: usize, f: F) -> Vec<Option<String>>
where
    F: Fn(u64, &mut ChaCha8Rng) -> Option<String> + Sync + Send,
{
    let ks: Vec<u64> = (0..n as u64).collect();
    par::map(&ks, |&k| f(k, &mut random::shard(seed, k)))
}

fn fail_if(bad: bool, msg: impl FnOnce() -> String) -> Option<String> {
    bad.then(msg)
}

// --------------------------------------------------------------- criteria

fn random_filtration(rng: &mut ChaCha8Rng) -> FilteredSpace {
    let n = rng.gen_range(1..=8);
    let len = rng.gen_range(1..=6);
    let p_min = rng.gen_range(-3..=3);
    let basis = loop {
        let rows: Vec<Vec<Scalar>> = (0..n).map(|_| random::gaussian_vec(rng, n)).collect();
        if ScalarMatrix::from_rows(rows.clone()).rank() == n {
            break rows;
        }
    };
    // F^{p_min + k} is spanned by the first d_k vectors, d non-increasing
    let mut dims = vec![n];
    for _ in 1..len {
        let last = *dims.last().unwrap();
        dims.push(rng.gen_range(0..=last));
    }
    let steps = dims.iter().map(|&d| basis[..d].to_vec()).collect();
    FilteredSpace::new(n, p_min, steps).expect("nested spans of a basis")
}

pub fn rees_roundtrip(seed: u64, scale: Scale) -> Report {
    let mut r = Report::new(1, "Rees roundtrip");
    r.absorb(cases(seed, scale.n(200), |k, rng| {
        let f = random_filtration(rng);
        let m = rees::build_rees(&f);
        let back = match rees::recover_filtration(&m) {
            Ok(b) => b,
            Err(e) => return Some(format!("case {k}: recover failed: {e}")),
        };
        if !back.same_filtration(&f) {
            return Some(format!("case {k}: recovered filtration differs"));
        }
        let d0 = rees::fiber(&m, 0).map(|x| x.dim());
        let d1 = rees::fiber(&m, 1).map(|x| x.dim());
        fail_if(d0 != d1 || d1 != Ok(f.dim()), || format!("case {k}: fiber dims {d0:?} vs {d1:?}"))
    }));
    r
}

pub fn purity(_seed: u64, _scale: Scale) -> Report {
    let mut r = Report::new(2, "Purity as splitting");
    let e = |n: usize, i: usize| -> Vec<Scalar> { (0..n).map(|j| Scalar::int((i == j) as i64)).collect() };
    let hodge = FilteredSpace::new(2, 0, vec![vec![e(2, 0), e(2, 1)], vec![vec![Scalar::int(1), Scalar::i()]]])
        .expect("valid filtration");
    let split = rees::rees_p1_conjugate(&hodge).map(|(_, rep)| rep.splitting);
    r.check(split == Ok(vec![1, 1]), || format!("transverse case gave {split:?}"));
    let flag = FilteredSpace::new(2, 0, vec![vec![e(2, 0), e(2, 1)], vec![e(2, 0)]]).expect("valid filtration");
    let split = rees::rees_p1(&flag, &flag).map(|(_, rep)| rep.splitting);
    r.check(split == Ok(vec![2, 0]), || format!("degenerate case gave {split:?}"));
    for rank in 1..=3 {
        let split = QuaternionicSpace::standard(rank)
            .twistor_bundle()
            .and_then(|b| b.splitting_type());
        r.check(split == Ok(vec![1; 2 * rank]), || format!("twistor r = {rank} gave {split:?}"));
    }
    r
}

/// Rational points of S² from Gaussian integers `(m + n i, p + q i)`.
fn pythagorean_point(rng: &mut ChaCha8Rng) -> SpherePoint {
    loop {
        let [m, n, p, qq]: [i64; 4] = std::array::from_fn(|_| rng.gen_range(-6..=6));
        let norm = m * m + n * n + p * p + qq * qq;
        if norm == 0 {
            continue;
        }
        let x = qf(m * m + n * n - p * p - qq * qq, norm);
        let y = qf(2 * (m * p + n * qq), norm);
        let z = qf(2 * (n * p - m * qq), norm);
        return SpherePoint::new(x, y, z).expect("unit norm by construction");
    }
}

pub fn twistor_identities(seed: u64, scale: Scale) -> Report {
    let mut r = Report::new(3, "Twistor structure identities");
    for rank in 1..=3 {
        let qs = QuaternionicSpace::standard(rank);
        let at = |l: Scalar| qs.structure_at(&l);
        r.check(at(Scalar::int(0)) == Ok(qs.op_i()), || format!("r = {rank}: I_0 != I"));
        r.check(at(Scalar::int(1)) == Ok(qs.op_j()), || format!("r = {rank}: I_1 != J"));
        r.check(at(Scalar::i()) == Ok(qs.op_k()), || format!("r = {rank}: I_i != K"));
        r.check(qs.check_relations(), || format!("r = {rank}: quaternion relations"));
    }
    r.absorb(cases(seed, scale.n(100), |k, rng| {
        let qs = QuaternionicSpace::standard(1 + (k % 3) as usize);
        let p = pythagorean_point(rng);
        let op = qs.combination(&p);
        let minus = RealOp::identity(qs.complex_dim()).neg();
        fail_if(op.compose(&op) != minus, || format!("sphere point {p:?}: square is not -1"))
    }));
    r.absorb(cases(seed ^ 0xa1, scale.n(20), |k, rng| {
        let qs = QuaternionicSpace::standard(1 + (k % 3) as usize);
        let l = random::nonzero_gaussian(rng);
        let anti = twistor::antipodal(Some(&l)).expect("λ is nonzero");
        let lhs = qs.structure_at(&anti);
        let rhs = qs.structure_at(&l).map(|o| o.neg());
        fail_if(lhs != rhs, || format!("antipode at λ = {l}"))
    }));
    r.absorb(cases(seed ^ 0xa2, scale.n(20), |k, rng| {
        let qs = QuaternionicSpace::standard(1 + (k % 3) as usize);
        let l = random::gaussian(rng);
        let ok = match (qs.structure_at(&l), qs.structure_at_closed(&l)) {
            (Ok(a), Ok(b)) => a == b && a == qs.combination(&twistor::stereographic(Some(&l)).unwrap()),
            _ => false,
        };
        fail_if(!ok, || format!("(u, v) and closed forms differ at λ = {l}"))
    }));
    r
}

pub fn section_uniqueness(seed: u64, scale: Scale) -> Report {
    let mut r = Report::new(4, "Invariant section uniqueness");
    r.absorb(cases(seed, 3 * scale.n(50), |k, rng| {
        let rank = 1 + (k % 3) as usize;
        let qs = QuaternionicSpace::standard(rank);
        let v = random::gaussian_vec(rng, 2 * rank);
        // every tenth base point is λ₀ = ∞
        let l = (k % 10 != 9).then(|| random::gaussian(rng));
        let s = match qs.invariant_section_through(&v, l.as_ref()) {
            Ok(s) => s,
            Err(e) => return Some(format!("case {k}: no section: {e}")),
        };
        let hits = match &l {
            Some(l) => s.eval(l) == v,
            None => s.at_infinity() == v,
        };
        if !hits || !qs.is_sigma_invariant(&s) {
            return Some(format!("case {k}: section misses v or is not invariant"));
        }
        if qs.invariant_sections_real_dim() != 4 * rank {
            return Some(format!("case {k}: invariant sections have the wrong dimension"));
        }
        // evaluation at a finite λ is a → a + λ J(a); at ∞ it is a → -J(a)
        let eval = match &l {
            Some(l) => RealOp::new(ScalarMatrix::identity(2 * rank), qs.j_matrix().scale(l)),
            None => qs.op_j().neg(),
        };
        fail_if(eval.real_kernel_dim() != 0, || format!("case {k}: evaluation not injective"))
    }));
    for rp in 1..=2 {
        for rr in 1..=2 {
            let quat = twistor::quaternionic_sff_space(rr, rp, true);
            let control = twistor::quaternionic_sff_space(rr, rp, false);
            r.check(quat == 0 && control > 0, || {
                format!("sff({rr}, {rp}): quaternionic {quat}, control {control}")
            });
        }
    }
    r
}

fn random_harmonic(rng: &mut ChaCha8Rng) -> HarmonicLine {
    let g = rng.gen_range(1..=5);
    HarmonicLine::new(random::gaussian_vec(rng, g), random::gaussian_vec(rng, g)).expect("equal lengths")
}

pub fn sigma_prime_identity(seed: u64, scale: Scale) -> Report {
    let mut r = Report::new(5, "Rank-one sigma' identity");
    r.absorb(cases(seed, scale.n(100), |k, rng| {
        let h = random_harmonic(rng);
        let l = random::nonzero_gaussian(rng);
        let mu = -l.conj().inverse().expect("nonzero");
        let lhs = lambda::sigma_prime(&lambda::prefered_section(&h, &l));
        if lhs != Ok(lambda::prefered_section(&h, &mu)) {
            return Some(format!("case {k}: pointwise identity fails at λ = {l}"));
        }
        // symbolic coefficients: β = ν + θ″ λ, η = θ′ - ν̄ λ
        let s = PolySection::from_harmonic(&h);
        let minus_nu_bar: Vec<Scalar> = h.nu.iter().map(|x| -x.conj()).collect();
        let symbolic = s.beta == vec![h.nu.clone(), h.theta_double_prime()]
            && s.eta == vec![h.theta_prime.clone(), minus_nu_bar];
        if !symbolic {
            return Some(format!("case {k}: coefficient form of the prefered section"));
        }
        let verdict = lambda::classify_invariant_section(&s);
        fail_if(verdict != Ok(Verdict::Prefered(h)), || format!("case {k}: polynomial identity"))
    }));
    r.absorb(cases(seed ^ 0xb5, scale.n(500), |k, rng| {
        let d = rng.gen_range(0..=lambda::MAX_CANDIDATE_DEGREE);
        let h = random_harmonic(rng);
        let g = h.g();
        let zero = vec![Scalar::int(0); g];
        let mut s = PolySection::from_harmonic(&h);
        let kind = k % 3;
        match kind {
            // prefered, padded with zero coefficients up to degree max(d, 1)
            0 => {
                while s.beta.len() <= d {
                    s.beta.push(zero.clone());
                    s.eta.push(zero.clone());
                }
            }
            // prefered with one coefficient perturbed
            1 => {
                while s.beta.len() <= d {
                    s.beta.push(zero.clone());
                    s.eta.push(zero.clone());
                }
                let deg = rng.gen_range(0..s.beta.len());
                let i = rng.gen_range(0..g);
                let bump = random::nonzero_gaussian(rng);
                if rng.gen_bool(0.5) {
                    s.beta[deg][i] = s.beta[deg][i].clone() + bump;
                } else {
                    s.eta[deg][i] = s.eta[deg][i].clone() + bump;
                }
            }
            _ => {
                s = PolySection {
                    beta: (0..=d).map(|_| random::gaussian_vec(rng, g)).collect(),
                    eta: (0..=d).map(|_| random::gaussian_vec(rng, g)).collect(),
                };
            }
        }
        let truly_prefered = {
            let cand = HarmonicLine::new(s.beta[0].clone(), s.eta[0].clone()).expect("equal lengths");
            let expect = PolySection::from_harmonic(&cand);
            let pad = |cs: &[Vec<Scalar>]| -> Vec<Vec<Scalar>> {
                (0..cs.len().max(2)).map(|j| cs.get(j).cloned().unwrap_or(zero.clone())).collect()
            };
            let mut eb = expect.beta.clone();
            let mut ee = expect.eta.clone();
            while eb.len() < s.beta.len().max(2) {
                eb.push(zero.clone());
                ee.push(zero.clone());
            }
            pad(&s.beta) == eb && pad(&s.eta) == ee
        };
        match lambda::classify_invariant_section(&s) {
            Ok(Verdict::InvariantButNotPrefered) => Some(format!("case {k}: forbidden verdict")),
            Ok(Verdict::Prefered(found)) if !truly_prefered || PolySection::from_harmonic(&found).beta[0] != s.beta[0] => {
                Some(format!("case {k}: prefered verdict on a non-prefered candidate"))
            }
            Ok(Verdict::NotInvariant) if truly_prefered => Some(format!("case {k}: prefered candidate rejected")),
            Ok(_) => None,
            Err(e) => Some(format!("case {k}: {e}")),
        }
    }));
    r
}

fn random_laurent(rng: &mut ChaCha8Rng, a: usize) -> LaurentPoly {
    if rng.gen_bool(0.2) {
        return LaurentPoly::zero();
    }
    let terms = rng.gen_range(1..=3);
    LaurentPoly::from_terms((0..terms).map(|_| {
        let e: Vec<i64> = (0..a).map(|_| rng.gen_range(-1..=1)).collect();
        (e, Scalar::int(rng.gen_range(-2..=2)))
    }))
}

fn random_presentation(rng: &mut ChaCha8Rng) -> CWPresentation {
    let a = rng.gen_range(1..=3);
    let m = rng.gen_range(1..=3);
    let l = rng.gen_range(1..=3);
    let rows = (0..l).map(|_| (0..m).map(|_| random_laurent(rng, a)).collect()).collect();
    CWPresentation::new(a, m, l, LaurentMatrix::new(rows).expect("rectangular")).expect("integral entries")
}

pub fn jump_loci(seed: u64, scale: Scale) -> Report {
    let mut r = Report::new(6, "Jump loci");
    r.absorb(cases(seed, scale.n(500), |k, rng| {
        let p = random_presentation(rng);
        let pool = jump::sample_pool();
        let rho: Vec<Scalar> = loop {
            let rho: Vec<Scalar> = (0..p.a())
                .map(|_| {
                    if rng.gen_bool(0.5) {
                        pool[rng.gen_range(0..pool.len())].clone()
                    } else {
                        random::nonzero_gaussian(rng)
                    }
                })
                .collect();
            if !jump::is_trivial(&rho) {
                break rho;
            }
        };
        match jump::betti_dims(&p, &rho) {
            Ok((h2, h3)) => fail_if(h2 as i64 - h3 as i64 != p.m() as i64 - p.l() as i64, || {
                format!("case {k}: h2 - h3 = {} - {}", h2, h3)
            }),
            Err(e) => Some(format!("case {k}: {e}")),
        }
    }));
    r.absorb(cases(seed ^ 0xc6, scale.n(50), |k, rng| {
        let p = random_presentation(rng);
        for kk in 1..=p.m() {
            let j = kk as i64 + p.l() as i64 - p.m() as i64;
            if jump::jump_ideal(&p, kk) != jump::jump_ideal_h3(&p, j) {
                return Some(format!("case {k}: Σ²_{kk} and Σ³_{j} differ"));
            }
        }
        None
    }));
    let t0 = LaurentPoly::var(0) - LaurentPoly::constant(Scalar::int(1));
    let p = CWPresentation::new(2, 1, 1, LaurentMatrix::new(vec![vec![t0]]).expect("1x1")).expect("valid");
    let e = vec![vec![0], vec![1]];
    for (zeta0, expect) in [(Scalar::int(1), true), (Scalar::int(-1), false), (Scalar::i(), false)] {
        let s = SubtorusParam::new(vec![zeta0.clone(), Scalar::int(1)], e.clone()).expect("rank one");
        let got = jump::contains_subtorus(&p, 1, &s);
        r.check(got == Ok(expect), || format!("subtorus t₁ = {zeta0}: got {got:?}"));
    }
    r
}

fn ints(xs: &[i64]) -> ProjPoint {
    ProjPoint::new(xs.iter().map(|&x| Scalar::int(x)).collect()).expect("nonzero")
}

pub fn gm_geometry(seed: u64, scale: Scale) -> Report {
    let mut r = Report::new(7, "G_m geometry");
    let w = WeightedAction::new(vec![0, 1, 2], qf(-1, 2)).expect("valid action");
    let weights = |cs: &[crate::gm::FixedComponent]| cs.iter().map(|c| c.weight).collect::<Vec<_>>();
    match w.decompose(None) {
        Ok(d) => r.check(weights(&d.plus) == vec![0] && weights(&d.minus) == vec![1, 2], || {
            format!("decomposition {:?} / {:?}", weights(&d.plus), weights(&d.minus))
        }),
        Err(e) => r.check(false, || format!("decompose: {e}")),
    }
    for (x, expect) in [
        (ints(&[1, 1, 0]), Membership::InU),
        (ints(&[1, 0, 0]), Membership::InYPlus),
        (ints(&[0, 1, 1]), Membership::InYMinus),
    ] {
        let got = w.in_u(&x);
        r.check(got == Ok(expect), || format!("membership of {:?}: {got:?}", x.coords()));
    }
    let arc = Arc::new(vec![
        ZPoly::constant(Scalar::int(1)),
        ZPoly::monomial(Scalar::int(1), 1),
        ZPoly::monomial(Scalar::int(1), 3),
    ])
    .expect("nonzero arc");
    match w.newton_limits(&arc) {
        Ok(pieces) => {
            let breaks: Vec<_> = pieces
                .iter()
                .filter_map(|p| match p {
                    NewtonPiece::Breakpoint { eps, landing } => Some((eps.clone(), landing.clone())),
                    _ => None,
                })
                .collect();
            let comps: Vec<_> = pieces
                .iter()
                .filter_map(|p| match p {
                    NewtonPiece::Interval { component, .. } => Some(component.weight),
                    _ => None,
                })
                .collect();
            let ok = breaks == vec![(q(1), ints(&[1, 1, 0])), (q(2), ints(&[0, 1, 1]))] && comps == vec![0, 1, 2];
            r.check(ok, || format!("arc breakpoints {breaks:?}, components {comps:?}"));
        }
        Err(e) => r.check(false, || format!("newton_limits: {e}")),
    }
    match w.choose_gauge(&arc) {
        Ok(g) => r.check(
            g.eps == q(1) && g.landing == ints(&[1, 1, 0]) && w.in_u(&g.landing) == Ok(Membership::InU),
            || format!("gauge {g:?}"),
        ),
        Err(e) => r.check(false, || format!("choose_gauge: {e}")),
    }

    // Y₊ ∩ Y₋ = ∅ on a grid, computed from the limits directly
    let plus: Vec<i64> = w.decompose(None).map(|d| weights(&d.plus)).unwrap_or_default();
    let grid: Vec<Scalar> = [(0, 1), (1, 1), (-1, 1), (1, 2), (-2, 3), (3, 1), (5, 4), (-7, 2), (2, 5), (-1, 3)]
        .iter()
        .map(|&(n, d)| Scalar::rat(n, d))
        .collect();
    let mut points = Vec::new();
    for a in &grid {
        for b in &grid {
            for c in &grid {
                points.push(vec![a.clone(), b.clone(), c.clone()]);
            }
        }
    }
    let outcomes = par::map(&points, |coords| {
        let Ok(x) = ProjPoint::new(coords.clone()) else {
            return None;
        };
        let lim_w = |y: ProjPoint| w.fixed_weight(&y).expect("limits are fixed");
        let y_plus = plus.contains(&lim_w(w.limitinf(&x).expect("valid")));
        let y_minus = !plus.contains(&lim_w(w.limit0(&x).expect("valid")));
        let label = w.in_u(&x);
        let expect = match (y_plus, y_minus) {
            (true, false) => Ok(Membership::InYPlus),
            (false, true) => Ok(Membership::InYMinus),
            (false, false) => Ok(Membership::InU),
            (true, true) => return Some(format!("{coords:?} lies in Y₊ ∩ Y₋")),
        };
        fail_if(label != expect, || format!("{coords:?}: label {label:?}"))
    });
    r.absorb(outcomes);

    r.absorb(cases(seed, scale.n(100), |k, rng| {
        let u_point = |rng: &mut ChaCha8Rng| loop {
            let c: Vec<Scalar> = (0..3).map(|_| random::gaussian_int(rng, 2)).collect();
            if let Ok(x) = ProjPoint::new(c) {
                if w.in_u(&x) == Ok(Membership::InU) {
                    return x;
                }
            }
        };
        let x = u_point(rng);
        let y = w.act(&random::nonzero_gaussian(rng), &x).expect("valid");
        let z = if rng.gen_bool(0.5) {
            w.act(&random::nonzero_gaussian(rng), &y).expect("valid")
        } else {
            u_point(rng)
        };
        let eq = |a: &ProjPoint, b: &ProjPoint| w.orbit_equivalent(a, b).expect("valid points");
        let reflexive = eq(&x, &x);
        let symmetric = eq(&x, &z) == eq(&z, &x) && eq(&y, &z) == eq(&z, &y);
        let transitive = !(eq(&x, &y) && eq(&y, &z)) || eq(&x, &z);
        let orbit = eq(&x, &y);
        fail_if(!(reflexive && symmetric && transitive && orbit), || {
            format!("case {k}: laws r={reflexive} s={symmetric} t={transitive} orbit={orbit}")
        })
    }));
    r
}

fn extension(k: i64, coeff: RatFun, n: usize) -> DiskFamily {
    let t = ZMatrix::from_fn(n, |i, j| match (i, j) {
        (0, 0) => ZPoly::z_pow(k),
        (1, 1) => ZPoly::z_pow(-k),
        (0, 1) => ZPoly::constant(coeff.clone()),
        _ if i == j => ZPoly::z_pow(0),
        _ => ZPoly::zero(),
    });
    DiskFamily::new(t).expect("valid extension family")
}

fn lift(m: &ZMatrix<Scalar>) -> ZMatrix<RatFun> {
    m.map(|c| RatFun::scalar(c.clone()))
}

/// Replays a reduction step by step, checking certificates and the generic
/// type; returns the number of steps.
fn audit_reduction(f: &DiskFamily) -> Result<usize, String> {
    let red = langton::langton_reduce(f).map_err(|e| e.to_string())?;
    let generic = langton::generic_splitting(f).map_err(|e| e.to_string())?;
    let mut cur = f.clone();
    for (i, cert) in red.certificates.iter().enumerate() {
        let (next, again) = langton::langton_step(&cur).map_err(|e| e.to_string())?;
        if &again != cert || !cert.verify(&cur, &next) {
            return Err(format!("certificate {i} does not re-multiply"));
        }
        if langton::generic_splitting(&next).map_err(|e| e.to_string())? != generic {
            return Err(format!("generic type changed at step {}", i + 1));
        }
        cur = next;
    }
    if cur != red.family {
        return Err("replayed family differs from the reported one".into());
    }
    if !langton::is_balanced(red.final_type()) {
        return Err(format!("final type {:?} is not balanced", red.final_type()));
    }
    Ok(red.steps())
}

pub fn langton_reduction(seed: u64, scale: Scale) -> Report {
    let mut r = Report::new(8, "Langton reduction");
    let first = extension(1, RatFun::s(), 2);
    match langton::langton_reduce(&first) {
        Ok(red) => r.check(red.steps() == 1 && red.final_type() == [0, 0], || {
            format!("[[z, s], [0, z⁻¹]]: {} steps to {:?}", red.steps(), red.final_type())
        }),
        Err(e) => r.check(false, || format!("[[z, s], [0, z⁻¹]]: {e}")),
    }
    let second = extension(2, RatFun::s(), 2);
    match langton::langton_reduce(&second) {
        Ok(red) => {
            let decreasing = red.trail.windows(2).all(|w| w[1].special_type < w[0].special_type);
            r.check(langton::is_balanced(red.final_type()) && decreasing, || {
                format!("[[z², s], [0, z⁻²]]: trail {:?}", red.trail)
            });
        }
        Err(e) => r.check(false, || format!("[[z², s], [0, z⁻²]]: {e}")),
    }
    for fam in [&first, &second] {
        let audit = audit_reduction(fam);
        r.check(audit.is_ok(), || format!("fixture audit: {audit:?}"));
    }
    r.absorb(cases(seed, scale.n(50), |k, rng| {
        let n = 2 + (k % 2) as usize;
        // s · u + s² · v with u ≠ 0 keeps the generic fiber balanced
        let u = random::nonzero_gaussian(rng);
        let v = random::gaussian(rng);
        let coeff = RatFun::s() * RatFun::scalar(u) + RatFun::s_pow(2) * RatFun::scalar(v);
        let core = extension(1, coeff, n);
        let a = lift(&random::unimodular(rng, n, false, 3, 1));
        let c = lift(&random::unimodular(rng, n, true, 3, 1));
        let t = &(&a * core.transition()) * &c;
        let f = match DiskFamily::new(t) {
            Ok(f) => f,
            Err(e) => return Some(format!("case {k}: {e}")),
        };
        match langton::special_splitting(&f) {
            Ok(sp) if langton::gap(&sp) == 2 => {}
            other => return Some(format!("case {k}: special type {other:?} does not have gap 2")),
        }
        audit_reduction(&f).err().map(|e| format!("case {k}: {e}"))
    }));
    r
}

pub fn birkhoff_consistency(seed: u64, scale: Scale) -> Report {
    let mut r = Report::new(9, "Birkhoff self-consistency");
    r.absorb(cases(seed, scale.n(200), |k, rng| {
        let n = rng.gen_range(1..=4);
        let exps: Vec<i64> = (0..n).map(|_| rng.gen_range(-3..=3)).collect();
        let u = random::unimodular(rng, n, false, 2 * n, 1);
        let v = random::unimodular(rng, n, true, 2 * n, 1);
        let g = &(&u * &ZMatrix::diag_z(&exps)) * &v;
        let b = match P1Bundle::new(g) {
            Ok(b) => b,
            Err(e) => return Some(format!("case {k}: {e}")),
        };
        // O(a) has transition z^{-a}
        let mut expect: Vec<i64> = exps.iter().map(|e| -e).collect();
        expect.sort_unstable_by(|x, y| y.cmp(x));
        let got = b.splitting_type();
        if got.as_ref() != Ok(&expect) {
            return Some(format!("case {k}: exponents {exps:?} gave {got:?}"));
        }
        let sum: i64 = expect.iter().sum();
        fail_if(sum != -b.det_exponent(), || format!("case {k}: degree {sum} vs det z^{}", b.det_exponent()))
    }));
    r
}

pub fn run_all(seed: u64, scale: Scale) -> Vec<Report> {
    vec![
        rees_roundtrip(seed, scale),
        purity(seed, scale),
        twistor_identities(seed, scale),
        section_uniqueness(seed, scale),
        sigma_prime_identity(seed, scale),
        jump_loci(seed, scale),
        gm_geometry(seed, scale),
        langton_reduction(seed, scale),
        birkhoff_consistency(seed, scale),
    ]
}
