//! Monte Carlo estimate of `∫ sul(g_0 v_0, …, g_n v_n)` over independent
//! uniform points of the unit ball, and of the equivalent average of
//! `smi(g_0 v_0, …, g_n v_n)` over uniform points of projective space.
//!
//! Samples are drawn in fixed-size chunks, each from its own ChaCha stream
//! keyed by `(seed, chunk index)`, and chunk sums are combined in chunk
//! order; sequential and parallel runs therefore agree bit for bit.

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::cocycles::{smi_numerator, sul_from_deleted};
use crate::error::{Error, Result};
use crate::exact::{check_even_dimension, Sign};
use crate::parallel::{map_collect, ExecPolicy};

pub const CHUNK: u64 = 4096;
pub const DEFAULT_SIGN_THRESHOLD: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SampleMode {
    Ball,
    Projective,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ItuEstimate {
    pub mean: f64,
    pub stderr: f64,
    pub samples: u64,
    pub seed: u64,
    pub mode: SampleMode,
    /// Draws discarded because some determinant sign was ambiguous.
    pub resampled: u64,
}

#[derive(Clone, Copy, Debug)]
pub struct ItuOptions {
    pub samples: u64,
    pub seed: u64,
    pub mode: SampleMode,
    /// Relative threshold against the product of column norms.
    pub sign_threshold: f64,
    pub policy: ExecPolicy,
}

impl ItuOptions {
    pub fn new(samples: u64, seed: u64, mode: SampleMode) -> Self {
        Self {
            samples,
            seed,
            mode,
            sign_threshold: DEFAULT_SIGN_THRESHOLD,
            policy: ExecPolicy::default(),
        }
    }

    pub fn with_policy(self, policy: ExecPolicy) -> Self {
        Self { policy, ..self }
    }
}

/// `n + 1` copies of the identity.
pub fn identity_tuple(n: usize) -> Vec<DMatrix<f64>> {
    vec![DMatrix::identity(n, n); n + 1]
}

/// Determinant sign, or `None` when `|det|` is below `threshold` times the
/// product of the column norms (Hadamard's bound).
fn float_sign(m: &DMatrix<f64>, threshold: f64) -> Option<Sign> {
    let det = m.clone().determinant();
    let scale: f64 = m.column_iter().map(|c| c.norm()).product();
    if !det.is_finite() || det.abs() <= threshold * scale {
        None
    } else {
        Some(Sign::of_f64(det))
    }
}

fn direction<R: Rng>(rng: &mut R, n: usize) -> DVector<f64> {
    loop {
        let v = DVector::from_fn(n, |_, _| rng.sample::<f64, _>(StandardNormal));
        let norm = v.norm();
        if norm > 0.0 {
            return v / norm;
        }
    }
}

fn ball_point<R: Rng>(rng: &mut R, n: usize) -> DVector<f64> {
    let r = (1.0 - rng.random::<f64>()).powf(1.0 / n as f64);
    direction(rng, n) * r
}

struct ChunkSum {
    sum: f64,
    sum_sq: f64,
    resampled: u64,
}

pub fn itu_estimate(gs: &[DMatrix<f64>], opts: ItuOptions) -> Result<ItuEstimate> {
    let n = gs.len().checked_sub(1).ok_or(Error::Arity {
        expected: 3,
        found: 0,
    })?;
    check_even_dimension(n)?;
    for (index, g) in gs.iter().enumerate() {
        if g.nrows() != n || g.ncols() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: g.ncols(),
            });
        }
        if float_sign(g, opts.sign_threshold).is_none() {
            return Err(Error::NearSingular {
                index,
                det: g.clone().determinant(),
            });
        }
    }
    if opts.samples == 0 {
        return Err(Error::NoSamples);
    }

    let chunks = opts.samples.div_ceil(CHUNK);
    let unit = match opts.mode {
        SampleMode::Ball => 1.0,
        SampleMode::Projective => 0.5f64.powi(n as i32 + 1),
    };
    let parts = map_collect(opts.policy, chunks as usize, |c| -> Result<ChunkSum> {
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
        rng.set_stream(c as u64);
        let count = CHUNK.min(opts.samples - c as u64 * CHUNK);
        let mut out = ChunkSum {
            sum: 0.0,
            sum_sq: 0.0,
            resampled: 0,
        };
        let mut w = DMatrix::<f64>::zeros(n, n + 1);
        let mut deleted = vec![Sign::Zero; n + 1];
        let mut done = 0;
        while done < count {
            for (i, g) in gs.iter().enumerate() {
                let v = match opts.mode {
                    SampleMode::Ball => ball_point(&mut rng, n),
                    SampleMode::Projective => direction(&mut rng, n),
                };
                w.set_column(i, &(g * v));
            }
            let mut ambiguous = false;
            for (i, d) in deleted.iter_mut().enumerate() {
                match float_sign(&w.clone().remove_column(i), opts.sign_threshold) {
                    Some(s) => *d = s,
                    None => {
                        ambiguous = true;
                        break;
                    }
                }
            }
            if ambiguous {
                out.resampled += 1;
                continue;
            }
            let x = match opts.mode {
                SampleMode::Ball => sul_from_deleted(&deleted).to_i32() as f64,
                SampleMode::Projective => smi_numerator(&deleted)? as f64 * unit,
            };
            out.sum += x;
            out.sum_sq += x * x;
            done += 1;
        }
        Ok(out)
    });

    let (mut sum, mut sum_sq, mut resampled) = (0.0, 0.0, 0);
    for p in parts {
        let p = p?;
        sum += p.sum;
        sum_sq += p.sum_sq;
        resampled += p.resampled;
    }
    let m = opts.samples as f64;
    let mean = sum / m;
    let var = if opts.samples > 1 {
        ((sum_sq - m * mean * mean) / (m - 1.0)).max(0.0)
    } else {
        0.0
    };
    Ok(ItuEstimate {
        mean,
        stderr: (var / m).sqrt(),
        samples: opts.samples,
        seed: opts.seed,
        mode: opts.mode,
        resampled,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_tuple_is_centred() {
        for mode in [SampleMode::Ball, SampleMode::Projective] {
            let est = itu_estimate(&identity_tuple(2), ItuOptions::new(20_000, 3, mode)).unwrap();
            assert!(est.mean.abs() <= 3.0 * est.stderr + 1e-12, "{est:?}");
            assert!(est.mean.abs() <= 0.25 + 3.0 * est.stderr);
        }
    }

    #[test]
    fn estimates_are_deterministic_and_policy_independent() {
        let gs = identity_tuple(2);
        let base = ItuOptions::new(10_000, 9, SampleMode::Ball);
        let a = itu_estimate(&gs, base.with_policy(ExecPolicy::Sequential)).unwrap();
        let b = itu_estimate(&gs, base.with_policy(ExecPolicy::Parallel)).unwrap();
        let c = itu_estimate(&gs, base).unwrap();
        assert_eq!(a, b);
        assert_eq!(a, c);
    }

    #[test]
    fn singular_matrices_and_empty_runs_are_rejected() {
        let mut gs = identity_tuple(2);
        gs[1] = DMatrix::from_row_slice(2, 2, &[1.0, 2.0, 2.0, 4.0]);
        assert!(matches!(
            itu_estimate(&gs, ItuOptions::new(10, 1, SampleMode::Ball)),
            Err(Error::NearSingular { index: 1, .. })
        ));
        assert_eq!(
            itu_estimate(&identity_tuple(2), ItuOptions::new(0, 1, SampleMode::Ball)),
            Err(Error::NoSamples)
        );
    }

    #[test]
    fn ball_points_stay_inside() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        for _ in 0..1000 {
            assert!(ball_point(&mut rng, 4).norm() <= 1.0);
        }
    }
}
