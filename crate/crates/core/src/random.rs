//! Seeded random inputs: rationals with numerators in `[-M, M]` and
//! denominators in `[1, M]`, tuples with deliberately planted linear
//! dependencies, flags sharing levels, and random invertible matrices.

use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exact::{hereditarily_spanning, ori, Rational, RationalMatrix, RationalVector, Sign};
use crate::flags::OrientedFlag;

pub const DEFAULT_RANGE: i64 = 100;

/// The generator for trial `trial` of a run seeded with `seed`.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

pub fn rational<R: Rng>(rng: &mut R, m: i64) -> Rational {
    Rational::new(BigInt::from(rng.random_range(-m..=m)), BigInt::from(rng.random_range(1..=m)))
}

pub fn nonzero_rational<R: Rng>(rng: &mut R, m: i64) -> Rational {
    loop {
        let r = rational(rng, m);
        if r != Rational::from_integer(0.into()) {
            return r;
        }
    }
}

pub fn vector<R: Rng>(rng: &mut R, n: usize, m: i64) -> RationalVector {
    RationalVector::new((0..n).map(|_| rational(rng, m)).collect())
}

pub fn nonzero_vector<R: Rng>(rng: &mut R, n: usize, m: i64) -> RationalVector {
    loop {
        let v = vector(rng, n, m);
        if !v.is_zero() {
            return v;
        }
    }
}

/// `k` nonzero vectors, resampled until every `n` of them are independent.
pub fn spanning_tuple<R: Rng>(rng: &mut R, n: usize, k: usize, m: i64) -> Vec<RationalVector> {
    loop {
        let xs: Vec<_> = (0..k).map(|_| nonzero_vector(rng, n, m)).collect();
        if hereditarily_spanning(&xs, n).unwrap_or(false) {
            return xs;
        }
    }
}

/// `k` nonzero vectors of which some `n` are dependent: either one is a
/// combination of `n - 1` others, or two are proportional.
pub fn degenerate_tuple<R: Rng>(rng: &mut R, n: usize, k: usize, m: i64) -> Vec<RationalVector> {
    let mut xs: Vec<_> = (0..k).map(|_| nonzero_vector(rng, n, m)).collect();
    let mut idx: Vec<usize> = (0..k).collect();
    idx.shuffle(rng);
    loop {
        let planted = if rng.random_bool(0.5) {
            let c = nonzero_rational(rng, m);
            xs[idx[1]].scale(&c)
        } else {
            idx[1..n].iter().fold(RationalVector::zeros(n), |acc, &j| {
                acc.add(&xs[j].scale(&rational(rng, m)))
            })
        };
        if !planted.is_zero() {
            xs[idx[0]] = planted;
            return xs;
        }
    }
}

/// Hereditarily spanning with probability about `1 - degenerate`, otherwise
/// with a planted dependency.
pub fn mixed_tuple<R: Rng>(rng: &mut R, n: usize, k: usize, m: i64, degenerate: f64) -> Vec<RationalVector> {
    if rng.random_bool(degenerate) {
        degenerate_tuple(rng, n, k, m)
    } else {
        (0..k).map(|_| nonzero_vector(rng, n, m)).collect()
    }
}

pub fn matrix<R: Rng>(rng: &mut R, n: usize, m: i64) -> RationalMatrix {
    RationalMatrix::new(n, n, (0..n * n).map(|_| rational(rng, m)).collect())
}

/// A random invertible matrix of either orientation.
pub fn gl<R: Rng>(rng: &mut R, n: usize, m: i64) -> RationalMatrix {
    loop {
        let g = matrix(rng, n, m);
        if !g.det_sign().expect("square").is_zero() {
            return g;
        }
    }
}

/// A random matrix with positive determinant.
pub fn gl_plus<R: Rng>(rng: &mut R, n: usize, m: i64) -> RationalMatrix {
    let mut g = gl(rng, n, m);
    if g.det_sign().expect("square") == Sign::Negative {
        for j in 0..n {
            let x = -g.get(0, j).clone();
            g.set(0, j, x);
        }
    }
    g
}

pub fn flag<R: Rng>(rng: &mut R, n: usize, m: i64) -> OrientedFlag {
    loop {
        let basis: Vec<_> = (0..n).map(|_| vector(rng, n, m)).collect();
        if !ori(&basis).expect("square").is_zero() {
            return OrientedFlag::new(basis).expect("independent basis");
        }
    }
}

/// A flag agreeing with `base` (as unoriented flags) on levels `1..=r` and
/// random above, with random half-space choices throughout.
pub fn flag_sharing<R: Rng>(rng: &mut R, base: &OrientedFlag, r: usize, m: i64) -> OrientedFlag {
    let n = base.dim();
    loop {
        let mut basis = Vec::with_capacity(n);
        for k in 0..n {
            let v = if k < r {
                // triangular change of basis within the shared levels
                let lead = nonzero_rational(rng, m);
                (0..k).fold(base.basis()[k].scale(&lead), |acc, l| {
                    acc.add(&base.basis()[l].scale(&rational(rng, m)))
                })
            } else {
                vector(rng, n, m)
            };
            basis.push(v);
        }
        if let Ok(f) = OrientedFlag::new(basis) {
            return f;
        }
    }
}

/// `k` flags; with probability `degenerate` some share low levels with an
/// earlier flag, or repeat it up to orientation.
pub fn flag_tuple<R: Rng>(rng: &mut R, n: usize, k: usize, m: i64, degenerate: f64) -> Vec<OrientedFlag> {
    let mut out: Vec<OrientedFlag> = Vec::with_capacity(k);
    for _ in 0..k {
        let f = if !out.is_empty() && rng.random_bool(degenerate) {
            let base = out[rng.random_range(0..out.len())].clone();
            let r = rng.random_range(1..=n);
            flag_sharing(rng, &base, r, m)
        } else {
            flag(rng, n, m)
        };
        out.push(f);
    }
    out
}

/// Flags whose flagstaffs `(F_0^1, …)` are hereditarily spanning; the first
/// basis vector of each is the given positive representative.
pub fn flags_with_spanning_staffs<R: Rng>(
    rng: &mut R,
    n: usize,
    k: usize,
    m: i64,
) -> (Vec<OrientedFlag>, Vec<RationalVector>) {
    let staffs = spanning_tuple(rng, n, k, m);
    let flags = staffs
        .iter()
        .map(|s| loop {
            let mut basis = vec![s.clone()];
            basis.extend((1..n).map(|_| vector(rng, n, m)));
            if let Ok(f) = OrientedFlag::new(basis) {
                break f;
            }
        })
        .collect();
    (flags, staffs)
}
