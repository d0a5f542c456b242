//! Seeded property suites. Trial `t` of a run draws from the ChaCha stream
//! `(seed, t)`, so any failure replays from `(suite, seed, trial)` alone;
//! the report also carries the offending input in full.

use std::time::Instant;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::cocycles::{coboundary, coc, coco, pcoc, smi, sul, Coc, CocOptions, Coco, Pcoc, Sul};
use crate::error::{Error, Result};
use crate::exact::{
    frame_transform, hereditarily_spanning, ori, projective_normalize, Rational,
    RationalMatrix, RationalVector, Sign,
};
use crate::fixtures::{self, SurfaceTriangulation};
use crate::flags::{bracket, realize_points, OrientedFlag};
use crate::io::FlagTupleFile;
use crate::parallel::{map_collect, ExecPolicy};
use crate::random::{self, trial_rng};
use crate::simplicial::{euler_number, EulerMode, FlatBundleComplex};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Suite {
    Alternating,
    Equivariance,
    Descent,
    CocyclePcoc,
    CocycleCoco,
    CocycleCoc,
    CocycleSul,
    SmillieRelation,
    DeflationDiff,
    RealizePoints,
    Supnorm,
    Bundle,
}

impl Suite {
    pub const ALL: [Suite; 12] = [
        Suite::Alternating,
        Suite::Equivariance,
        Suite::Descent,
        Suite::CocyclePcoc,
        Suite::CocycleCoco,
        Suite::CocycleCoc,
        Suite::CocycleSul,
        Suite::SmillieRelation,
        Suite::DeflationDiff,
        Suite::RealizePoints,
        Suite::Supnorm,
        Suite::Bundle,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Alternating => "alternating",
            Suite::Equivariance => "equivariance",
            Suite::Descent => "descent",
            Suite::CocyclePcoc => "cocycle-pcoc",
            Suite::CocycleCoco => "cocycle-coco",
            Suite::CocycleCoc => "cocycle-coc",
            Suite::CocycleSul => "cocycle-sul",
            Suite::SmillieRelation => "smillie-relation",
            Suite::DeflationDiff => "deflation-diff",
            Suite::RealizePoints => "realize-points",
            Suite::Supnorm => "supnorm",
            Suite::Bundle => "bundle",
        }
    }

    /// `"all"` or a single suite name.
    pub fn parse(s: &str) -> Option<Vec<Suite>> {
        if s == "all" {
            return Some(Self::ALL.to_vec());
        }
        Self::ALL.iter().find(|x| x.name() == s).map(|&x| vec![x])
    }

    /// The identity the suite checks.
    pub fn identity(self) -> &'static str {
        match self {
            Suite::Alternating => "pcoc, sul, smi change sign under a transposition of arguments",
            Suite::Equivariance => {
                "f(g·x) = sig(g)·f(x) for pcoc, sul, smi, coco, coc; pcoc(x) = sig(h)·(-1)^(n/2) \
                 where h is the frame transform of a hereditarily spanning x"
            }
            Suite::Descent => {
                "pcoc and smi are invariant under rescaling each argument; pcoc ≠ 0 and \
                 |smi| = 2^-n exactly on hereditarily spanning tuples"
            }
            Suite::CocyclePcoc => {
                "d pcoc = 0 on hereditarily spanning (n+2)-tuples; orientation formulas at \
                 (e_0, …, e_n, x) with increasing nonzero coordinates of x"
            }
            Suite::CocycleCoco => "d coco = 0 on all (n+2)-tuples of oriented flags",
            Suite::CocycleCoc => "d coc = 0 on all (n+2)-tuples of flags (factorized evaluation)",
            Suite::CocycleSul => "d sul = 0 on hereditarily spanning (n+2)-tuples",
            Suite::SmillieRelation => "pcoc = (-1)^(n/2)·2^n·smi",
            Suite::DeflationDiff => "naive and factorized coc agree exactly",
            Suite::RealizePoints => {
                "realized points reproduce every pairwise-deleted bracket orientation"
            }
            Suite::Supnorm => {
                "|smi| ≤ 2^-n with equality on hereditarily spanning tuples; |coco| = 1; \
                 coc of flags with hereditarily spanning flagstaffs is pcoc of the flagstaffs"
            }
            Suite::Bundle => {
                "Euler numbers are integral and independent of base vertex, gauge and section; \
                 trivial bundle gives 0, the genus-2 holonomy gives 1"
            }
        }
    }

    fn default_dims(self) -> Vec<usize> {
        match self {
            Suite::DeflationDiff | Suite::Bundle => vec![2],
            _ => vec![2, 4],
        }
    }
}

#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub seed: u64,
    pub trials: u64,
    /// Dimensions cycled through by trial index; `None` uses the suite default.
    pub dims: Option<Vec<usize>>,
    pub range: i64,
    pub policy: ExecPolicy,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            seed: 0,
            trials: 100,
            dims: None,
            range: random::DEFAULT_RANGE,
            policy: ExecPolicy::default(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Failure {
    pub trial: u64,
    pub n: usize,
    pub input: Value,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifySuiteReport {
    pub suite: String,
    pub identity: String,
    pub seed: u64,
    pub trials: u64,
    pub dims: Vec<usize>,
    /// Trials whose input was deliberately degenerate.
    pub degenerate_inputs: u64,
    pub failures: Vec<Failure>,
    pub wall_time_ms: f64,
}

impl VerifySuiteReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

type VectorCochain = fn(&[RationalVector]) -> Result<Rational>;
type FlagCochain = fn(&[OrientedFlag]) -> Result<Rational>;

/// Per-trial result: whether the input was degenerate, or the failure.
type Trial = std::result::Result<bool, (Value, String)>;

fn points_json(n: usize, xs: &[RationalVector]) -> Value {
    json!({ "n": n, "points": xs })
}

fn flags_json(n: usize, fs: &[OrientedFlag]) -> Value {
    serde_json::to_value(FlagTupleFile::from_flags(n, fs)).expect("serializable")
}

fn matrix_json(g: &RationalMatrix) -> Value {
    serde_json::to_value(g).expect("serializable")
}

fn lib(input: &Value, e: Error) -> (Value, String) {
    (input.clone(), format!("evaluation error: {e}"))
}

fn check(cond: bool, input: &Value, detail: impl FnOnce() -> String) -> std::result::Result<(), (Value, String)> {
    if cond {
        Ok(())
    } else {
        Err((input.clone(), detail()))
    }
}

fn half_parity(n: usize) -> Rational {
    if (n / 2).is_multiple_of(2) {
        Rational::one()
    } else {
        -Rational::one()
    }
}

fn two_pow(k: usize) -> Rational {
    Rational::from_integer(BigInt::one() << k)
}

pub fn run_suite(suite: Suite, cfg: &VerifyConfig) -> VerifySuiteReport {
    let dims = cfg.dims.clone().unwrap_or_else(|| suite.default_dims());
    let start = Instant::now();
    let shared = match suite {
        Suite::Bundle => Some(BundleFixture::new()),
        _ => None,
    };
    let outcomes = map_collect(cfg.policy, cfg.trials as usize, |t| {
        let n = dims[t % dims.len()];
        let mut rng = trial_rng(cfg.seed, t as u64);
        let m = cfg.range;
        let r = match suite {
            Suite::Alternating => alternating(&mut rng, n, m),
            Suite::Equivariance => equivariance(&mut rng, n, m),
            Suite::Descent => descent(&mut rng, n, m),
            Suite::CocyclePcoc => cocycle_pcoc(&mut rng, n, m),
            Suite::CocycleCoco => cocycle_flags(&mut rng, n, m, false),
            Suite::CocycleCoc => cocycle_flags(&mut rng, n, m, true),
            Suite::CocycleSul => cocycle_sul(&mut rng, n, m),
            Suite::SmillieRelation => smillie_relation(&mut rng, n, m),
            Suite::DeflationDiff => deflation_diff(&mut rng, n, m),
            Suite::RealizePoints => realize(&mut rng, n, m),
            Suite::Supnorm => supnorm(&mut rng, n, m),
            Suite::Bundle => shared.as_ref().expect("built above").trial(&mut rng, n),
        };
        (t as u64, n, r)
    });
    let mut degenerate_inputs = 0;
    let mut failures = Vec::new();
    for (trial, n, r) in outcomes {
        match r {
            Ok(true) => degenerate_inputs += 1,
            Ok(false) => {}
            Err((input, detail)) => failures.push(Failure {
                trial,
                n,
                input,
                detail,
            }),
        }
    }
    VerifySuiteReport {
        suite: suite.name().to_string(),
        identity: suite.identity().to_string(),
        seed: cfg.seed,
        trials: cfg.trials,
        dims,
        degenerate_inputs,
        failures,
        wall_time_ms: start.elapsed().as_secs_f64() * 1e3,
    }
}

const DEGENERATE_SHARE: f64 = 0.3;

fn is_spanning(xs: &[RationalVector], n: usize) -> bool {
    hereditarily_spanning(xs, n).unwrap_or(false)
}

fn alternating(rng: &mut ChaCha8Rng, n: usize, m: i64) -> Trial {
    let xs = random::mixed_tuple(rng, n, n + 1, m, DEGENERATE_SHARE);
    let i = rng.random_range(0..=n);
    let j = (i + rng.random_range(1..=n)) % (n + 1);
    let mut ys = xs.clone();
    ys.swap(i, j);
    let input = json!({ "n": n, "points": xs, "swap": [i, j] });
    let cochains: [(&str, VectorCochain); 3] =
        [("pcoc", pcoc), ("sul", sul), ("smi", smi)];
    for (name, f) in cochains {
        let a = f(&xs).map_err(|e| lib(&input, e))?;
        let b = f(&ys).map_err(|e| lib(&input, e))?;
        check(b == -a.clone(), &input, || format!("{name}: {a} before, {b} after swap"))?;
    }
    Ok(!is_spanning(&xs, n))
}

fn equivariance(rng: &mut ChaCha8Rng, n: usize, m: i64) -> Trial {
    let xs = random::mixed_tuple(rng, n, n + 1, m, DEGENERATE_SHARE);
    let fs = random::flag_tuple(rng, n, n + 1, m, DEGENERATE_SHARE);
    let g = random::gl(rng, n, m);
    let input = json!({ "n": n, "points": xs, "flags": flags_json(n, &fs)["flags"], "g": matrix_json(&g) });
    let s = g.det_sign().map_err(|e| lib(&input, e))?.to_rational();
    let gxs: Vec<RationalVector> = xs.iter().map(|x| g.mul_vec(x)).collect();
    let cochains: [(&str, VectorCochain); 3] =
        [("pcoc", pcoc), ("sul", sul), ("smi", smi)];
    for (name, f) in cochains {
        let a = f(&xs).map_err(|e| lib(&input, e))?;
        let b = f(&gxs).map_err(|e| lib(&input, e))?;
        check(b == &s * &a, &input, || format!("{name}: f(x) = {a}, f(g·x) = {b}"))?;
    }
    let gfs = fs.iter().map(|f| f.transform(&g)).collect::<Result<Vec<_>>>().map_err(|e| lib(&input, e))?;
    let flag_cochains: [(&str, FlagCochain); 2] =
        [("coco", coco), ("coc", |f| coc(f, CocOptions::factorized()))];
    for (name, f) in flag_cochains {
        let a = f(&fs).map_err(|e| lib(&input, e))?;
        let b = f(&gfs).map_err(|e| lib(&input, e))?;
        check(b == &s * &a, &input, || format!("{name}: f(F) = {a}, f(g·F) = {b}"))?;
    }

    let spanning = is_spanning(&xs, n);
    if spanning {
        let h = frame_transform(&xs).map_err(|e| lib(&input, e))?;
        for (i, x) in xs.iter().enumerate() {
            let target = projective_normalize(&RationalVector::basis(n, i)).expect("nonzero");
            let got = projective_normalize(&h.mul_vec(x)).map_err(|e| lib(&input, e))?;
            check(got == target, &input, || format!("frame transform sends x_{i} to {got}"))?;
        }
        let p = pcoc(&xs).map_err(|e| lib(&input, e))?;
        let want = h.det_sign().map_err(|e| lib(&input, e))?.to_rational() * half_parity(n);
        check(p == want, &input, || format!("pcoc = {p} but orbit value is {want}"))?;
    }
    Ok(!spanning)
}

fn descent(rng: &mut ChaCha8Rng, n: usize, m: i64) -> Trial {
    let xs = random::mixed_tuple(rng, n, n + 1, m, DEGENERATE_SHARE);
    let cs: Vec<Rational> = (0..=n).map(|_| random::nonzero_rational(rng, m)).collect();
    let input = json!({ "n": n, "points": xs, "scalars": crate::io::rational_strings(&cs) });
    let ys: Vec<RationalVector> = xs.iter().zip(&cs).map(|(x, c)| x.scale(c)).collect();
    let spanning = is_spanning(&xs, n);
    let p = pcoc(&xs).map_err(|e| lib(&input, e))?;
    let q = smi(&xs).map_err(|e| lib(&input, e))?;
    check(pcoc(&ys).ok() == Some(p.clone()), &input, || "pcoc changed under rescaling".into())?;
    check(smi(&ys).ok() == Some(q.clone()), &input, || "smi changed under rescaling".into())?;
    check(spanning == !p.is_zero(), &input, || format!("pcoc = {p}, spanning = {spanning}"))?;
    let full = Rational::new(BigInt::one(), BigInt::one() << n);
    check(spanning == (q.abs() == full), &input, || format!("smi = {q}, spanning = {spanning}"))?;
    Ok(!spanning)
}

/// `x` with nonzero, pairwise distinct, increasing coordinates.
fn sorted_point(rng: &mut ChaCha8Rng, n: usize, m: i64) -> RationalVector {
    loop {
        let mut c: Vec<Rational> = (0..n).map(|_| random::nonzero_rational(rng, m)).collect();
        c.sort();
        if c.windows(2).all(|w| w[0] != w[1]) {
            return RationalVector::new(c);
        }
    }
}

fn cocycle_pcoc(rng: &mut ChaCha8Rng, n: usize, m: i64) -> Trial {
    let xs = random::spanning_tuple(rng, n, n + 2, m);
    let input = points_json(n, &xs);
    let d = coboundary(&Pcoc, &xs).map_err(|e| lib(&input, e))?;
    check(d.is_zero(), &input, || format!("d pcoc = {d}"))?;

    // explicit formulas at (e_0, …, e_n, x)
    let x = sorted_point(rng, n, m);
    let input = json!({ "n": n, "x": x });
    let e = |i: usize| RationalVector::basis(n, i);
    let sign = |r: &Rational| Sign::of(r);
    let par = Sign::parity;
    let k = x.coords().iter().filter(|c| c.is_negative()).count();
    let half = par(n / 2);
    let err = |e| lib(&input, e);
    for j in 1..=n {
        let mut t: Vec<_> = (1..=n).filter(|&i| i != j).map(e).collect();
        t.push(x.clone());
        let got = ori(&t).map_err(err)?;
        check(got == par(j) * sign(&x.coords()[j - 1]), &input, || format!("ori(e_1..^e_{j}..e_n, x) = {got}"))?;

        let mut t: Vec<_> = std::iter::once(0).chain(1..=n).filter(|&i| i != j).map(e).collect();
        let got = ori(&t).map_err(err)?;
        check(got == par(j + 1), &input, || format!("ori(e_0..^e_{j}..e_n) = {got}"))?;

        for l in j + 1..=n {
            t = std::iter::once(0).chain(1..=n).filter(|&i| i != j && i != l).map(e).collect();
            t.push(x.clone());
            let got = ori(&t).map_err(err)?;
            check(got == par(j + l + 1), &input, || format!("ori(e_0..^e_{j}..^e_{l}..e_n, x) = {got}"))?;
        }

        let mut t: Vec<_> = std::iter::once(0).chain(1..=n).filter(|&i| i != j).map(e).collect();
        t.push(x.clone());
        let got = pcoc(&t).map_err(err)?;
        let want = (half * sign(&x.coords()[j - 1])).to_rational();
        check(got == want, &input, || format!("pcoc(e_0..^e_{j}..e_n, x) = {got}, expected {want}"))?;
    }
    let mut t: Vec<_> = (1..=n).map(e).collect();
    t.push(x.clone());
    let got = pcoc(&t).map_err(err)?;
    check(got == (half * par(k)).to_rational(), &input, || format!("pcoc(e_1..e_n, x) = {got}"))?;
    let got = pcoc(&(0..=n).map(e).collect::<Vec<_>>()).map_err(err)?;
    check(got == half.to_rational(), &input, || format!("pcoc(e_0..e_n) = {got}"))?;
    Ok(false)
}

fn cocycle_flags(rng: &mut ChaCha8Rng, n: usize, m: i64, deflated: bool) -> Trial {
    let fs = random::flag_tuple(rng, n, n + 2, m, DEGENERATE_SHARE);
    let input = flags_json(n, &fs);
    let d = if deflated {
        coboundary(&Coc(CocOptions::factorized()), &fs)
    } else {
        coboundary(&Coco, &fs)
    }
    .map_err(|e| lib(&input, e))?;
    check(d.is_zero(), &input, || format!("coboundary = {d}"))?;
    Ok(has_shared_levels(&fs))
}

fn has_shared_levels(fs: &[OrientedFlag]) -> bool {
    let staffs: Vec<RationalVector> = fs.iter().map(|f| f.vector(1).clone()).collect();
    !is_spanning(&staffs, fs[0].dim())
}

fn cocycle_sul(rng: &mut ChaCha8Rng, n: usize, m: i64) -> Trial {
    let xs = random::spanning_tuple(rng, n, n + 2, m);
    let input = points_json(n, &xs);
    let d = coboundary(&Sul, &xs).map_err(|e| lib(&input, e))?;
    check(d.is_zero(), &input, || format!("d sul = {d}"))?;
    Ok(false)
}

fn smillie_relation(rng: &mut ChaCha8Rng, n: usize, m: i64) -> Trial {
    let xs = random::mixed_tuple(rng, n, n + 1, m, DEGENERATE_SHARE);
    let input = points_json(n, &xs);
    let p = pcoc(&xs).map_err(|e| lib(&input, e))?;
    let q = smi(&xs).map_err(|e| lib(&input, e))?;
    let want = half_parity(n) * two_pow(n) * &q;
    check(p == want, &input, || format!("pcoc = {p}, (-1)^(n/2) 2^n smi = {want}"))?;
    Ok(!is_spanning(&xs, n))
}

fn deflation_diff(rng: &mut ChaCha8Rng, n: usize, m: i64) -> Trial {
    let fs = random::flag_tuple(rng, n, n + 1, m, 0.5);
    let input = flags_json(n, &fs);
    let seq = CocOptions::naive().with_policy(ExecPolicy::Sequential);
    let a = coc(&fs, seq).map_err(|e| lib(&input, e))?;
    let b = coc(&fs, CocOptions::factorized()).map_err(|e| lib(&input, e))?;
    check(a == b, &input, || format!("naive {a}, factorized {b}"))?;
    check(
        a.is_zero() || a.abs() == Rational::one(),
        &input,
        || format!("coc = {a} outside {{-1, 0, 1}}"),
    )?;
    Ok(has_shared_levels(&fs))
}

fn realize(rng: &mut ChaCha8Rng, n: usize, m: i64) -> Trial {
    let fs = random::flag_tuple(rng, n, n + 2, m, DEGENERATE_SHARE);
    let input = flags_json(n, &fs);
    let pts = realize_points(&fs).map_err(|e| lib(&input, e))?;
    for i in 0..n + 2 {
        for j in i + 1..n + 2 {
            let keep = |t: &usize| *t != i && *t != j;
            let sub: Vec<OrientedFlag> = (0..n + 2).filter(keep).map(|t| fs[t].clone()).collect();
            let want = bracket(&sub).and_then(|b| b.ori()).map_err(|e| lib(&input, e))?;
            let xs: Vec<RationalVector> = (0..n + 2).filter(keep).map(|t| pts[t].clone()).collect();
            let got = ori(&xs).map_err(|e| lib(&input, e))?;
            check(got == want, &input, || format!("pair ({i},{j}): points give {got}, bracket {want}"))?;
        }
    }
    Ok(has_shared_levels(&fs))
}

fn supnorm(rng: &mut ChaCha8Rng, n: usize, m: i64) -> Trial {
    let xs = random::mixed_tuple(rng, n, n + 1, m, DEGENERATE_SHARE);
    let fs = random::flag_tuple(rng, n, n + 1, m, DEGENERATE_SHARE);
    let (sf, staffs) = random::flags_with_spanning_staffs(rng, n, n + 1, m);
    let input = json!({
        "n": n,
        "points": xs,
        "flags": flags_json(n, &fs)["flags"],
        "staff_flags": flags_json(n, &sf)["flags"],
    });
    let err = |e| lib(&input, e);
    let full = Rational::new(BigInt::one(), BigInt::one() << n);
    let q = smi(&xs).map_err(err)?;
    let spanning = is_spanning(&xs, n);
    check(q.abs() <= full, &input, || format!("|smi| = {q} exceeds 2^-n"))?;
    check(!spanning || q.abs() == full, &input, || format!("smi = {q} on a spanning tuple"))?;

    let c = coco(&fs).map_err(err)?;
    check(c.abs() == Rational::one(), &input, || format!("coco = {c}"))?;
    let d = coc(&fs, CocOptions::factorized()).map_err(err)?;
    let denom_ok = (BigInt::one() << (n * (n + 1))) % d.denom() == BigInt::zero();
    check(d.abs() <= Rational::one() && denom_ok, &input, || format!("coc = {d}"))?;

    let p = pcoc(&staffs).map_err(err)?;
    let cs = coc(&sf, CocOptions::factorized()).map_err(err)?;
    let cc = coco(&sf).map_err(err)?;
    check(cs == p && cc == p, &input, || {
        format!("staff flags: coc = {cs}, coco = {cc}, pcoc of flagstaffs = {p}")
    })?;
    Ok(!spanning)
}

/// The genus-2 surface with its exactly repaired `SL₂` holonomy, shared by
/// every trial of the bundle suite.
struct BundleFixture {
    surface: SurfaceTriangulation,
    holonomy: Vec<RationalMatrix>,
}

impl BundleFixture {
    fn new() -> Self {
        Self {
            surface: SurfaceTriangulation::new(2).expect("genus 2 is valid"),
            holonomy: fixtures::exact_surface_representation(&fixtures::fuchsian_generators(2))
                .expect("repair succeeds for the regular octagon"),
        }
    }

    fn trial(&self, rng: &mut ChaCha8Rng, n: usize) -> Trial {
        let range = 20;
        let v = self.surface.vertex_count;
        let section = fixtures::random_section(rng, v, n, range);
        let other = fixtures::random_section(rng, v, n, range);
        let gauge = fixtures::random_gauge(rng, v, n, range);
        let input = json!({
            "n": n,
            "section": section,
            "other_section": other,
            "gauge": gauge,
        });
        let err = |e| lib(&input, e);
        let (bundle, expected) = if n == 2 {
            (self.surface.bundle(&self.holonomy, section).map_err(err)?, 1)
        } else {
            (self.surface.trivial_bundle(n, section).map_err(err)?, 0)
        };
        let trivial = self.surface.trivial_bundle(n, other.clone()).map_err(err)?;
        let base = eval(&bundle, EulerMode::Smillie).map_err(err)?;
        let e = base.euler_number.clone();
        check(e == Some(BigInt::from(expected)), &input, || format!("Euler number {e:?}, expected {expected}"))?;
        let t = eval(&trivial, EulerMode::Smillie).map_err(err)?;
        check(t.euler_number == Some(BigInt::zero()), &input, || format!("trivial bundle gives {:?}", t.euler_number))?;

        let gauged = eval(&bundle.gauge(&gauge).map_err(err)?, EulerMode::Smillie).map_err(err)?;
        check(gauged.per_simplex == base.per_simplex, &input, || "gauge changed a per-simplex value".into())?;
        let moved = eval(&bundle.with_section(other), EulerMode::Smillie).map_err(err)?;
        check(moved.euler_number == e, &input, || format!("section change gives {:?}", moved.euler_number))?;
        match eval(&bundle, EulerMode::Sullivan) {
            Ok(s) => check(s.euler_number == e, &input, || format!("Sullivan mode gives {:?}", s.euler_number))?,
            Err(Error::NonGenericSection { .. }) => {}
            Err(e) => return Err(lib(&input, e)),
        }
        Ok(false)
    }
}

fn eval(b: &FlatBundleComplex, mode: EulerMode) -> Result<crate::simplicial::EulerReport> {
    euler_number(b, mode, ExecPolicy::Sequential)
}
