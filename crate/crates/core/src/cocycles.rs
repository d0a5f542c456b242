//! The projective almost-cocycle, the flag cocycle and its deflation, the
//! Sullivan and Smillie cocycles, the coboundary operator and two explicit
//! witness constructions.
//!
//! Every value is an exact rational. Sign-valued cochains return one of
//! `-1, 0, 1`; `smi` and `coc` return dyadic rationals.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{check_even_dimension, Rational, RationalMatrix, RationalVector, Sign};
use crate::flags::{bracket_levels, bracket_ori, FlagRows, Flipped, OrientedFlag};
use crate::kernel::{self, IntVec};
use crate::parallel::{map_reduce, ExecPolicy};

/// Default ceiling on `n(n+1)`, the log₂ of the naive deflation sum.
pub const DEFAULT_NAIVE_BUDGET_LOG2: usize = 20;

fn check_tuple(vs: &[RationalVector]) -> Result<usize> {
    let n = vs.len().checked_sub(1).ok_or(Error::TooFewVectors {
        needed: 3,
        found: 0,
    })?;
    check_even_dimension(n)?;
    if let Some(bad) = vs.iter().find(|v| v.dim() != n) {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: bad.dim(),
        });
    }
    Ok(n)
}

fn check_flag_tuple(fs: &[OrientedFlag]) -> Result<usize> {
    let n = fs.len().checked_sub(1).ok_or(Error::Arity {
        expected: 3,
        found: 0,
    })?;
    check_even_dimension(n)?;
    if let Some(bad) = fs.iter().find(|f| f.dim() != n) {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: bad.dim(),
        });
    }
    Ok(n)
}

fn int_rows(vs: &[RationalVector]) -> Vec<IntVec> {
    vs.iter().map(IntVec::from_rational).collect()
}

/// `ori` of the tuple with index `i` removed, for each `i`.
pub(crate) fn deleted_oris(rows: &[IntVec]) -> Vec<Sign> {
    let mut sub: Vec<&IntVec> = Vec::with_capacity(rows.len());
    (0..rows.len())
        .map(|i| {
            sub.clear();
            sub.extend(rows.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, r)| r));
            kernel::det_sign(&sub)
        })
        .collect()
}

pub(crate) fn pcoc_int(rows: &[IntVec]) -> Sign {
    deleted_oris(rows).into_iter().product()
}

pub(crate) fn sul_int(rows: &[IntVec]) -> Sign {
    sul_from_deleted(&deleted_oris(rows))
}

pub(crate) fn sul_from_deleted(deleted: &[Sign]) -> Sign {
    let mut common = None;
    for (i, &d) in deleted.iter().enumerate() {
        let s = Sign::parity(i) * d;
        if s.is_zero() || common.is_some_and(|c| c != s) {
            return Sign::Zero;
        }
        common = Some(s);
    }
    common.unwrap_or(Sign::Zero)
}

/// `2^{-(n+1)} Σ_σ sul(σv)`, from the `n+1` deleted orientations of `v`.
pub(crate) fn smi_int(rows: &[IntVec]) -> Result<Rational> {
    let total = smi_numerator(&deleted_oris(rows))?;
    Ok(Rational::new(BigInt::from(total), BigInt::one() << rows.len()))
}

/// `Σ_σ sul(σv)` over the `2^{n+1}` sign vectors. Flipping `v_j` flips
/// every deleted orientation except the `j`-th.
pub(crate) fn smi_numerator(deleted: &[Sign]) -> Result<i64> {
    let m = deleted.len();
    let mut total = 0i64;
    let mut hits = 0u32;
    let mut flipped = deleted.to_vec();
    for mask in 0u64..1 << m {
        let odd = mask.count_ones() % 2 == 1;
        for (i, (f, &d)) in flipped.iter_mut().zip(deleted).enumerate() {
            // product of σ_j over j ≠ i
            let others_odd = odd ^ (mask >> i & 1 == 1);
            *f = if others_odd { -d } else { d };
        }
        let s = sul_from_deleted(&flipped);
        if !s.is_zero() {
            hits += 1;
            total += s.to_i32() as i64;
        }
    }
    if hits != 0 && hits != 2 {
        return Err(Error::Internal(format!(
            "{hits} sign vectors give a nonzero Sullivan summand; expected 0 or 2"
        )));
    }
    Ok(total)
}

fn reject_zero(vs: &[RationalVector]) -> Result<()> {
    if vs.iter().any(RationalVector::is_zero) {
        Err(Error::ZeroVector)
    } else {
        Ok(())
    }
}

/// `Π_i ori(v_0, …, v̂_i, …, v_n)`.
pub fn pcoc(vs: &[RationalVector]) -> Result<Rational> {
    check_tuple(vs)?;
    reject_zero(vs)?;
    Ok(pcoc_int(&int_rows(vs)).to_rational())
}

/// Sullivan cocycle: `±1` when `0` lies in the open convex hull of the
/// (signed) tuple, by the Cramer criterion, else `0`. Zero vectors allowed.
pub fn sul(vs: &[RationalVector]) -> Result<Rational> {
    check_tuple(vs)?;
    Ok(sul_int(&int_rows(vs)).to_rational())
}

/// Smillie cocycle: the average of `sul` over all sign changes.
pub fn smi(vs: &[RationalVector]) -> Result<Rational> {
    check_tuple(vs)?;
    reject_zero(vs)?;
    smi_int(&int_rows(vs))
}

pub(crate) fn coco_rows<F: FlagRows + Copy>(flags: &[F], n: usize) -> Sign {
    let mut sub = Vec::with_capacity(n);
    let mut out = Sign::Positive;
    for i in 0..flags.len() {
        sub.clear();
        sub.extend(flags.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, f)| *f));
        out = out * bracket_ori(&sub, n);
        if out.is_zero() {
            break;
        }
    }
    out
}

/// `Π_i ori([F_0, …, F̂_i, …, F_n])`.
pub fn coco(fs: &[OrientedFlag]) -> Result<Rational> {
    let n = check_flag_tuple(fs)?;
    let refs: Vec<&OrientedFlag> = fs.iter().collect();
    Ok(coco_rows(&refs, n).to_rational())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CocMode {
    Naive,
    Factorized,
}

#[derive(Clone, Copy, Debug)]
pub struct CocOptions {
    pub mode: CocMode,
    /// Largest `n(n+1)` the naive sum will attempt.
    pub budget_log2: usize,
    pub policy: ExecPolicy,
}

impl Default for CocOptions {
    fn default() -> Self {
        Self {
            mode: CocMode::Factorized,
            budget_log2: DEFAULT_NAIVE_BUDGET_LOG2,
            policy: ExecPolicy::default(),
        }
    }
}

impl CocOptions {
    pub fn naive() -> Self {
        Self {
            mode: CocMode::Naive,
            ..Self::default()
        }
    }

    pub fn factorized() -> Self {
        Self::default()
    }

    pub fn with_policy(self, policy: ExecPolicy) -> Self {
        Self { policy, ..self }
    }
}

/// Deflation of `coco`: its average over every orientation of the flags.
pub fn coc(fs: &[OrientedFlag], opts: CocOptions) -> Result<Rational> {
    let n = check_flag_tuple(fs)?;
    match opts.mode {
        CocMode::Naive => coc_naive(fs, n, opts),
        CocMode::Factorized => Ok(coc_factorized(fs, n)),
    }
}

const NAIVE_CHUNK_LOG2: usize = 12;

fn coc_naive(fs: &[OrientedFlag], n: usize, opts: CocOptions) -> Result<Rational> {
    let bits = n * (n + 1);
    if bits > opts.budget_log2 {
        return Err(Error::BudgetExceeded {
            terms_log2: bits,
            budget_log2: opts.budget_log2,
        });
    }
    let level_mask = (1u64 << n) - 1;
    let chunk_log2 = NAIVE_CHUNK_LOG2.min(bits);
    let chunks = 1usize << (bits - chunk_log2);
    let sum = map_reduce(
        opts.policy,
        chunks,
        0i64,
        |c| {
            let mut views: Vec<Flipped> = fs.iter().map(|flag| Flipped { flag, mask: 0 }).collect();
            let mut acc = 0i64;
            let start = (c as u64) << chunk_log2;
            for mask in start..start + (1u64 << chunk_log2) {
                for (t, v) in views.iter_mut().enumerate() {
                    v.mask = mask >> (t * n) & level_mask;
                }
                acc += coco_rows(&views, n).to_i32() as i64;
            }
            acc
        },
        |a, b| a + b,
    );
    Ok(Rational::new(BigInt::from(sum), BigInt::one() << bits))
}

/// `(flag index, 0-based level)` chosen by the bracket for each deleted index.
pub fn coc_selections(fs: &[OrientedFlag]) -> Result<Vec<Vec<(usize, usize)>>> {
    let n = check_flag_tuple(fs)?;
    Ok(selections(fs, n))
}

fn selections(fs: &[OrientedFlag], n: usize) -> Vec<Vec<(usize, usize)>> {
    (0..=n)
        .map(|i| {
            let idx: Vec<usize> = (0..=n).filter(|&j| j != i).collect();
            let sub: Vec<&OrientedFlag> = idx.iter().map(|&j| &fs[j]).collect();
            idx.into_iter().zip(bracket_levels(&sub, n)).collect()
        })
        .collect()
}

/// The selected level spans do not depend on orientations, so each term of
/// the average is `coco(F)` times one sign per selection; the average of a
/// product of independent signs is `1` iff each occurs an even number of times.
fn coc_factorized(fs: &[OrientedFlag], n: usize) -> Rational {
    let mut mult = vec![0u32; (n + 1) * n];
    for sel in selections(fs, n) {
        for (t, d) in sel {
            mult[t * n + d] += 1;
        }
    }
    if mult.iter().all(|m| m % 2 == 0) {
        let refs: Vec<&OrientedFlag> = fs.iter().collect();
        coco_rows(&refs, n).to_rational()
    } else {
        Rational::zero()
    }
}

/// A cochain on configurations of type `X`.
pub trait Cochain<X>: Sync {
    /// Number of arguments when evaluated on configurations like `sample`.
    fn arity(&self, sample: &X) -> usize;
    fn eval(&self, xs: &[X]) -> Result<Rational>;
}

/// `d f (x_0, …, x_{k+1}) = Σ (−1)^i f(x_0, …, x̂_i, …, x_{k+1})`.
pub fn coboundary<X: Clone, C: Cochain<X> + ?Sized>(f: &C, xs: &[X]) -> Result<Rational> {
    let Some(first) = xs.first() else {
        return Err(Error::Arity {
            expected: 1,
            found: 0,
        });
    };
    let want = f.arity(first) + 1;
    if xs.len() != want {
        return Err(Error::Arity {
            expected: want,
            found: xs.len(),
        });
    }
    let mut total = Rational::zero();
    let mut sub: Vec<X> = Vec::with_capacity(xs.len() - 1);
    for i in 0..xs.len() {
        sub.clear();
        sub.extend(xs.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, x)| x.clone()));
        let v = f.eval(&sub)?;
        if i % 2 == 0 {
            total += v;
        } else {
            total -= v;
        }
    }
    Ok(total)
}

macro_rules! vector_cochain {
    ($name:ident, $f:path) => {
        #[derive(Clone, Copy, Debug, Default)]
        pub struct $name;

        impl Cochain<RationalVector> for $name {
            fn arity(&self, sample: &RationalVector) -> usize {
                sample.dim() + 1
            }
            fn eval(&self, xs: &[RationalVector]) -> Result<Rational> {
                $f(xs)
            }
        }
    };
}

vector_cochain!(Pcoc, pcoc);
vector_cochain!(Sul, sul);
vector_cochain!(Smi, smi);

#[derive(Clone, Copy, Debug, Default)]
pub struct Coco;

impl Cochain<OrientedFlag> for Coco {
    fn arity(&self, sample: &OrientedFlag) -> usize {
        sample.dim() + 1
    }
    fn eval(&self, xs: &[OrientedFlag]) -> Result<Rational> {
        coco(xs)
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct Coc(pub CocOptions);

impl Cochain<OrientedFlag> for Coc {
    fn arity(&self, sample: &OrientedFlag) -> usize {
        sample.dim() + 1
    }
    fn eval(&self, xs: &[OrientedFlag]) -> Result<Rational> {
        coc(xs, self.0)
    }
}

/// A cochain given by a closure of fixed arity.
pub struct FnCochain<F> {
    pub arity: usize,
    pub f: F,
}

impl<X, F: Fn(&[X]) -> Result<Rational> + Sync> Cochain<X> for FnCochain<F> {
    fn arity(&self, _: &X) -> usize {
        self.arity
    }
    fn eval(&self, xs: &[X]) -> Result<Rational> {
        (self.f)(xs)
    }
}

/// `(e_0, e_1, …, e_n, e_1 + e_2)` and `d pcoc` there.
pub fn obstruction_witness(n: usize) -> Result<(Vec<RationalVector>, Rational)> {
    check_even_dimension(n)?;
    let mut xs: Vec<RationalVector> = (0..=n).map(|i| RationalVector::basis(n, i)).collect();
    xs.push(RationalVector::basis(n, 1).add(&RationalVector::basis(n, 2)));
    let value = coboundary(&Pcoc, &xs)?;
    Ok((xs, value))
}

/// Flags `F_i = F(e_i, e_{i+1}, …)` read cyclically through `e_0, …, e_n`,
/// and orientation-reversing matrices `g_i` fixing every `F_j`, `j ≠ i`, as
/// unoriented flags.
pub fn coboundary_kill_witness(n: usize) -> Result<(Vec<OrientedFlag>, Vec<RationalMatrix>)> {
    check_even_dimension(n)?;
    let flags = (0..=n)
        .map(|i| OrientedFlag::new((0..n).map(|k| RationalVector::basis(n, (i + k) % (n + 1))).collect()))
        .collect::<Result<Vec<_>>>()?;

    let mut mats = Vec::with_capacity(n + 1);
    let mut g0 = RationalMatrix::identity(n);
    g0.set(n - 1, n - 1, Rational::from_integer((-1).into()));
    mats.push(g0);

    let mut g1 = RationalMatrix::identity(n);
    for r in 0..n {
        g1.set(r, 0, Rational::from_integer(if r == 0 { -1 } else { -2 }.into()));
    }
    mats.push(g1);

    for i in 2..=n {
        // columns i-1 and i (1-based): e_{i-1} ↦ −e_{i-1}, e_i ↦ 2e_{i-1} + e_i
        let mut g = RationalMatrix::identity(n);
        g.set(i - 2, i - 2, Rational::from_integer((-1).into()));
        g.set(i - 2, i - 1, Rational::from_integer(2.into()));
        mats.push(g);
    }

    for (i, g) in mats.iter().enumerate() {
        let det = g.det()?;
        if det != Rational::from_integer((-1).into()) {
            return Err(Error::Internal(format!("det g_{i} = {det}, expected -1")));
        }
        for (j, f) in flags.iter().enumerate() {
            if j != i && !g_fixes(g, f)? {
                return Err(Error::Internal(format!("g_{i} moves flag F_{j}")));
            }
        }
    }
    Ok((flags, mats))
}

fn g_fixes(g: &RationalMatrix, f: &OrientedFlag) -> Result<bool> {
    Ok(f.transform(g)?.equal_unoriented(f))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};

    fn v(xs: &[i64]) -> RationalVector {
        RationalVector::from_ints(xs)
    }

    fn e(n: usize, i: usize) -> RationalVector {
        RationalVector::basis(n, i)
    }

    fn flag(vs: &[&[i64]]) -> OrientedFlag {
        OrientedFlag::new(vs.iter().map(|x| v(x)).collect()).unwrap()
    }

    #[test]
    fn pcoc_examples() {
        assert_eq!(pcoc(&[e(2, 0), e(2, 1), e(2, 2)]).unwrap(), int(-1));
        assert_eq!(pcoc(&[e(2, 1), e(2, 2), v(&[1, 0])]).unwrap(), int(0));
        assert_eq!(pcoc(&[e(2, 1), e(2, 2), v(&[-1, 2])]).unwrap(), int(1));
        assert_eq!(
            pcoc(&[e(2, 1), e(2, 2), v(&[0, 0])]),
            Err(Error::ZeroVector)
        );
        assert!(matches!(
            pcoc(&[e(2, 1), e(2, 2)]),
            Err(Error::OddDimension(1))
        ));
    }

    #[test]
    fn sul_examples() {
        assert_eq!(sul(&[-&e(2, 0), e(2, 1), e(2, 2)]).unwrap(), int(1));
        assert_eq!(sul(&[e(2, 0), -&e(2, 1), -&e(2, 2)]).unwrap(), int(1));
        assert_eq!(sul(&[e(2, 0), e(2, 1), e(2, 2)]).unwrap(), int(0));
        assert_eq!(sul(&[v(&[0, 0]), e(2, 1), e(2, 2)]).unwrap(), int(0));
    }

    #[test]
    fn smi_examples() {
        let xs = [e(2, 0), e(2, 1), e(2, 2)];
        assert_eq!(smi(&xs).unwrap(), rat(1, 4));
        assert_eq!(smi(&[e(2, 1), e(2, 2), v(&[3, 0])]).unwrap(), int(0));
        // pcoc = (−1)^{n/2} 2^n smi
        assert_eq!(pcoc(&xs).unwrap(), int(-4) * smi(&xs).unwrap());
    }

    #[test]
    fn coco_examples() {
        let f = OrientedFlag::standard(2).unwrap();
        assert_eq!(coco(&[f.clone(), f.clone(), f.clone()]).unwrap(), int(1));

        let staffs = [v(&[1, 1]), v(&[1, 2]), v(&[-1, 3])];
        let fs: Vec<OrientedFlag> = staffs
            .iter()
            .map(|s| OrientedFlag::new(vec![s.clone(), v(&[1, 0])]).unwrap())
            .collect();
        assert_eq!(coco(&fs).unwrap(), pcoc(&staffs).unwrap());

        let g = RationalMatrix::from_int_rows(&[&[-1, 0], &[0, 1]]);
        let gfs: Vec<_> = fs.iter().map(|f| f.transform(&g).unwrap()).collect();
        assert_eq!(coco(&gfs).unwrap(), -coco(&fs).unwrap());
    }

    #[test]
    fn coc_spec_example_vanishes_in_both_modes() {
        let a = flag(&[&[1, 0], &[0, 1]]);
        let b = flag(&[&[0, 1], &[1, 0]]);
        let fs = [a.clone(), a, b];
        assert_eq!(coc(&fs, CocOptions::naive()).unwrap(), int(0));
        assert_eq!(coc(&fs, CocOptions::factorized()).unwrap(), int(0));
        let sel = coc_selections(&fs).unwrap();
        let count = |t, d| sel.iter().flatten().filter(|&&s| s == (t, d)).count();
        assert_eq!(count(1, 0), 1);
        assert_eq!(count(1, 1), 1);
    }

    #[test]
    fn coc_matches_pcoc_on_spanning_flagstaffs() {
        let staffs = [v(&[1, 1]), v(&[1, 2]), v(&[-1, 3])];
        let fs: Vec<OrientedFlag> = staffs
            .iter()
            .map(|s| OrientedFlag::new(vec![s.clone(), v(&[0, 1])]).unwrap())
            .collect();
        let p = pcoc(&staffs).unwrap();
        assert_eq!(coc(&fs, CocOptions::naive()).unwrap(), p);
        assert_eq!(coc(&fs, CocOptions::factorized()).unwrap(), p);
    }

    #[test]
    fn naive_budget_is_enforced() {
        let f = OrientedFlag::standard(6).unwrap();
        let fs = vec![f; 7];
        assert_eq!(
            coc(&fs, CocOptions::naive()),
            Err(Error::BudgetExceeded {
                terms_log2: 42,
                budget_log2: 20
            })
        );
        // (F_1, level 2) is picked n - 1 times, an odd number
        assert_eq!(coc(&fs, CocOptions::factorized()).unwrap(), int(0));
        let f2 = OrientedFlag::standard(2).unwrap();
        let same = vec![f2; 3];
        assert_eq!(coc(&same, CocOptions::naive()).unwrap(), int(0));
        assert_eq!(coco(&same).unwrap(), int(1));
    }

    #[test]
    fn sequential_and_parallel_naive_sums_agree() {
        let a = flag(&[&[1, 2], &[0, 1]]);
        let b = flag(&[&[3, -1], &[1, 1]]);
        let c = flag(&[&[1, 0], &[1, 1]]);
        let fs = [a, b, c];
        let s = coc(&fs, CocOptions::naive().with_policy(ExecPolicy::Sequential)).unwrap();
        let p = coc(&fs, CocOptions::naive().with_policy(ExecPolicy::Parallel)).unwrap();
        assert_eq!(s, p);
    }

    #[test]
    fn coboundary_arity_is_checked() {
        let xs = [e(2, 0), e(2, 1), e(2, 2)];
        assert_eq!(
            coboundary(&Pcoc, &xs),
            Err(Error::Arity {
                expected: 4,
                found: 3
            })
        );
        let counting = FnCochain {
            arity: 2,
            f: |xs: &[i64]| Ok(int(xs[0] * 10 + xs[1])),
        };
        // f(2,3) - f(1,3) + f(1,2) = 23 - 13 + 12
        assert_eq!(coboundary(&counting, &[1, 2, 3]).unwrap(), int(22));
    }

    #[test]
    fn obstruction_witness_values() {
        assert_eq!(obstruction_witness(2).unwrap().1, int(0));
        assert_eq!(obstruction_witness(4).unwrap().1, int(-1));
        assert_ne!(obstruction_witness(6).unwrap().1, int(0));
        assert_eq!(obstruction_witness(3), Err(Error::OddDimension(3)));
    }

    #[test]
    fn coboundary_kill_witness_shapes() {
        let (flags, mats) = coboundary_kill_witness(2).unwrap();
        assert_eq!(flags.len(), 3);
        assert_eq!(mats[0], RationalMatrix::from_int_rows(&[&[1, 0], &[0, -1]]));
        let (flags4, mats4) = coboundary_kill_witness(4).unwrap();
        assert_eq!(mats4.len(), 5);
        for g in &mats4 {
            assert_eq!(g.det().unwrap(), int(-1));
        }
        assert!(flags4[0].transform(&mats4[2]).unwrap().equal_unoriented(&flags4[0]));
        assert!(coboundary_kill_witness(6).is_ok());
    }
}
