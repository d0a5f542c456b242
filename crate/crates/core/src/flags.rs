//! Complete oriented flags and the bracket construction on them.
//!
//! A flag is stored as an ordered basis `(w_1, …, w_n)`: level `i` is
//! `span(w_1, …, w_i)` and its positive half-space (bounded by level `i-1`)
//! is the side containing `w_i`. Flipping level `i` negates `w_i`.

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{
    check_even_dimension, ori, projective_normalize, Rational, RationalMatrix, RationalVector,
    ProjectivePoint, Sign,
};
use crate::kernel::{self, IntVec};

#[derive(Clone, Debug)]
pub struct OrientedFlag {
    basis: Vec<RationalVector>,
    rows: Vec<IntVec>,
    negated: Vec<IntVec>,
}

impl PartialEq for OrientedFlag {
    fn eq(&self, other: &Self) -> bool {
        self.basis == other.basis
    }
}

impl Eq for OrientedFlag {}

impl OrientedFlag {
    /// The flag `F(w_1, …, w_n)` with half-spaces chosen by the `w_i`.
    pub fn new(basis: Vec<RationalVector>) -> Result<Self> {
        let n = basis.len();
        check_even_dimension(n)?;
        if ori(&basis)?.is_zero() {
            return Err(Error::Singular);
        }
        Ok(Self::from_checked(basis))
    }

    fn from_checked(basis: Vec<RationalVector>) -> Self {
        let rows: Vec<IntVec> = basis.iter().map(IntVec::from_rational).collect();
        let negated = rows.iter().map(IntVec::negated).collect();
        Self {
            basis,
            rows,
            negated,
        }
    }

    pub fn standard(n: usize) -> Result<Self> {
        Self::new((1..=n).map(|i| RationalVector::basis(n, i)).collect())
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[RationalVector] {
        &self.basis
    }

    /// `w_level`, 1-based.
    pub fn vector(&self, level: usize) -> &RationalVector {
        &self.basis[level - 1]
    }

    /// Reverse the half-space at `level` (1-based).
    pub fn flip(&self, level: usize) -> Result<Self> {
        let n = self.dim();
        if level == 0 || level > n {
            return Err(Error::LevelOutOfRange { level, n });
        }
        let mut out = self.clone();
        let i = level - 1;
        out.basis[i] = -&self.basis[i];
        std::mem::swap(&mut out.rows[i], &mut out.negated[i]);
        Ok(out)
    }

    /// Apply the flips encoded by bit `i` of `mask` to level `i + 1`.
    pub fn flip_mask(&self, mask: u64) -> Self {
        let mut out = self.clone();
        for i in 0..self.dim() {
            if mask >> i & 1 == 1 {
                out.basis[i] = -&self.basis[i];
                std::mem::swap(&mut out.rows[i], &mut out.negated[i]);
            }
        }
        out
    }

    /// All `2ⁿ` oriented flags over the same underlying flag.
    pub fn orientation_orbit(&self) -> Vec<Self> {
        (0..1u64 << self.dim()).map(|m| self.flip_mask(m)).collect()
    }

    /// `g · F`.
    pub fn transform(&self, g: &RationalMatrix) -> Result<Self> {
        if g.cols() != self.dim() || g.rows() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: g.cols(),
            });
        }
        Self::new(self.basis.iter().map(|w| g.mul_vec(w)).collect())
    }

    /// Level spans agree at every level.
    pub fn equal_unoriented(&self, other: &Self) -> bool {
        if self.dim() != other.dim() {
            return false;
        }
        (1..self.dim()).all(|i| {
            let rows: Vec<&IntVec> = self.rows[..i].iter().chain(&other.rows[..i]).collect();
            kernel::rank(&rows) == i
        })
    }

    /// The line `F¹` as a projective point.
    pub fn flagstaff(&self) -> ProjectivePoint {
        projective_normalize(&self.basis[0]).expect("flag basis vectors are nonzero")
    }
}

/// Row access shared by concrete flags and sign-masked views of them.
pub(crate) trait FlagRows {
    fn level_row(&self, level0: usize) -> &IntVec;
}

impl FlagRows for OrientedFlag {
    fn level_row(&self, level0: usize) -> &IntVec {
        &self.rows[level0]
    }
}

/// A flag with the half-spaces in `mask` reversed, without copying it.
#[derive(Clone, Copy)]
pub(crate) struct Flipped<'a> {
    pub flag: &'a OrientedFlag,
    pub mask: u64,
}

impl FlagRows for Flipped<'_> {
    fn level_row(&self, level0: usize) -> &IntVec {
        if self.mask >> level0 & 1 == 1 {
            &self.flag.negated[level0]
        } else {
            &self.flag.rows[level0]
        }
    }
}

/// For each flag in order, the (0-based) level whose vector the iterated
/// bracket appends: the first level not already in the running span.
pub(crate) fn bracket_levels<F: FlagRows>(flags: &[F], n: usize) -> Vec<usize> {
    let mut levels = Vec::with_capacity(flags.len());
    let mut span: Vec<&IntVec> = Vec::with_capacity(flags.len());
    for f in flags {
        let d = (0..n)
            .find(|&j| !kernel::in_span(&span, f.level_row(j)))
            .expect("a proper subspace misses some flag level");
        levels.push(d);
        span.push(f.level_row(d));
    }
    levels
}

/// `ori([F_1, …, F_n])` for exactly `n` flags.
pub(crate) fn bracket_ori<F: FlagRows>(flags: &[F], n: usize) -> Sign {
    debug_assert_eq!(flags.len(), n);
    let levels = bracket_levels(flags, n);
    let rows: Vec<&IntVec> = flags
        .iter()
        .zip(&levels)
        .map(|(f, &d)| f.level_row(d))
        .collect();
    kernel::det_sign(&rows)
}

/// An oriented subspace spanned by an ordered independent tuple.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrientedSubspace {
    basis: Vec<RationalVector>,
}

impl OrientedSubspace {
    pub fn new(basis: Vec<RationalVector>) -> Result<Self> {
        if let Some(n) = basis.first().map(RationalVector::dim) {
            if let Some(bad) = basis.iter().find(|v| v.dim() != n) {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: bad.dim(),
                });
            }
            let rows: Vec<IntVec> = basis.iter().map(IntVec::from_rational).collect();
            let refs: Vec<&IntVec> = rows.iter().collect();
            if basis.len() > n || kernel::rank(&refs) != basis.len() {
                return Err(Error::Singular);
            }
        }
        Ok(Self { basis })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[RationalVector] {
        &self.basis
    }

    pub fn into_basis(self) -> Vec<RationalVector> {
        self.basis
    }

    /// Orientation relative to the canonical one; only for full subspaces.
    pub fn ori(&self) -> Result<Sign> {
        ori(&self.basis)
    }

    /// `[W, F]`: append the lowest level vector of `flag` outside `W`.
    /// Returns the extended space and the 1-based level used.
    pub fn extend(&self, flag: &OrientedFlag) -> Result<(Self, usize)> {
        let n = flag.dim();
        if self.dim() >= n {
            return Err(Error::TooManyFlags {
                n,
                found: self.dim() + 1,
            });
        }
        if let Some(v) = self.basis.first() {
            if v.dim() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: v.dim(),
                });
            }
        }
        let rows: Vec<IntVec> = self.basis.iter().map(IntVec::from_rational).collect();
        let refs: Vec<&IntVec> = rows.iter().collect();
        let d = (0..n)
            .find(|&j| !kernel::in_span(&refs, &flag.rows[j]))
            .expect("a proper subspace misses some flag level");
        let mut basis = self.basis.clone();
        basis.push(flag.basis[d].clone());
        Ok((Self { basis }, d + 1))
    }
}

/// Iterated bracket `[F_1, …, F_k]` for `1 ≤ k ≤ n`.
pub fn bracket(flags: &[OrientedFlag]) -> Result<OrientedSubspace> {
    let Some(first) = flags.first() else {
        return Err(Error::Arity {
            expected: 1,
            found: 0,
        });
    };
    let n = first.dim();
    if let Some(bad) = flags.iter().find(|f| f.dim() != n) {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: bad.dim(),
        });
    }
    if flags.len() > n {
        return Err(Error::TooManyFlags {
            n,
            found: flags.len(),
        });
    }
    Ok(OrientedSubspace {
        basis: bracket_vectors(flags.iter(), n),
    })
}

fn bracket_vectors<'a>(flags: impl Iterator<Item = &'a OrientedFlag> + Clone, n: usize) -> Vec<RationalVector> {
    let list: Vec<&OrientedFlag> = flags.collect();
    let levels = bracket_levels(&list, n);
    list.iter()
        .zip(levels)
        .map(|(f, d)| f.basis[d].clone())
        .collect()
}

impl<T: FlagRows + ?Sized> FlagRows for &T {
    fn level_row(&self, level0: usize) -> &IntVec {
        (**self).level_row(level0)
    }
}

/// Points `x_0, …, x_{n+1}` whose pairwise-deleted orientations reproduce the
/// pairwise-deleted bracket orientations of the given `n + 2` flags.
///
/// Built by downward induction: `x_k` is chosen, for `k = n+1` down to `0`,
/// against the hyperplanes spanned by the brackets of the flags before `k`
/// together with the points already found after `k`.
pub fn realize_points(flags: &[OrientedFlag]) -> Result<Vec<RationalVector>> {
    let m = flags.len();
    let n = m.checked_sub(2).ok_or(Error::Arity {
        expected: 4,
        found: m,
    })?;
    check_even_dimension(n)?;
    if let Some(bad) = flags.iter().find(|f| f.dim() != n) {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: bad.dim(),
        });
    }

    let mut points: Vec<Option<RationalVector>> = vec![None; m];
    for k in (0..m).rev() {
        let mut hyperplanes = Vec::new();
        for i in 0..m {
            for j in i + 1..m {
                if i == k || j == k {
                    continue;
                }
                let keep = |t: &usize| *t != i && *t != j;
                let mut span = bracket_vectors((0..k).filter(keep).map(|t| &flags[t]), n);
                span.extend(
                    (k + 1..m)
                        .filter(keep)
                        .map(|t| points[t].clone().expect("later points are already placed")),
                );
                hyperplanes.push(Hyperplane::spanned_by(&span)?);
            }
        }
        points[k] = Some(point_on_flag_side(&hyperplanes, &flags[k]));
    }
    let points: Vec<RationalVector> = points.into_iter().map(Option::unwrap).collect();

    for i in 0..m {
        for j in i + 1..m {
            let keep = |t: &usize| *t != i && *t != j;
            let fs: Vec<&OrientedFlag> = (0..m).filter(keep).map(|t| &flags[t]).collect();
            let target = bracket_ori(&fs, n);
            let xs: Vec<RationalVector> = (0..m).filter(keep).map(|t| points[t].clone()).collect();
            let got = ori(&xs)?;
            if got != target {
                return Err(Error::Internal(format!(
                    "realized orientation for deleted pair ({i},{j}) is {got}, bracket gives {target}"
                )));
            }
        }
    }
    Ok(points)
}

/// The oriented hyperplane `V`, as the linear form `y ↦ det[v_1, …, v_{n-1}, y]`.
struct Hyperplane {
    normal: RationalVector,
}

impl Hyperplane {
    fn spanned_by(span: &[RationalVector]) -> Result<Self> {
        // positive rescaling leaves every sign of the form unchanged
        let span: Vec<RationalVector> = span
            .iter()
            .map(|v| int_vector(&kernel::primitive_integer_scaling(v)))
            .collect();
        let n = span.len() + 1;
        let mut normal = Vec::with_capacity(n);
        for row in 0..n {
            let minor: Vec<Vec<Rational>> = (0..n)
                .filter(|&r| r != row)
                .map(|r| span.iter().map(|v| v.coords()[r].clone()).collect())
                .collect();
            let det = if minor.is_empty() {
                Rational::from_integer(1.into())
            } else {
                RationalMatrix::from_rows(&minor)?.det()?
            };
            // cofactor of entry (row, n-1)
            normal.push(if (row + n - 1).is_multiple_of(2) { det } else { -det });
        }
        Ok(Self {
            normal: RationalVector::new(normal),
        })
    }

    fn eval(&self, y: &RationalVector) -> Rational {
        self.normal.dot(y)
    }
}

/// `x_d = x_{d-1} + δ_d w_d` with `δ_d` small enough that the segment
/// `[x_{d-1}, x_d]` crosses none of the hyperplanes not already containing
/// `x_{d-1}`. The result lies, for every hyperplane `V`, on the side of the
/// first flag level not contained in `V`.
///
/// `δ_d = 2^{-k}` with `k` minimal such that `|ℓ(w_d)| < 2^k |ℓ(x_{d-1})|`
/// for every form `ℓ` not vanishing at `x_{d-1}`; the running point is kept
/// as the integer vector `2^k x_{d-1} + w_d`, a positive multiple.
fn point_on_flag_side(hyperplanes: &[Hyperplane], flag: &OrientedFlag) -> RationalVector {
    let n = flag.dim();
    let mut x = RationalVector::zeros(n);
    for level in 0..n {
        let w = int_vector(flag.rows[level].big());
        let k = hyperplanes
            .iter()
            .filter_map(|h| {
                let at = h.eval(&x);
                if at.is_zero() {
                    None
                } else {
                    Some((h.eval(&w).abs() / at.abs()).to_integer().bits())
                }
            })
            .max()
            .unwrap_or(0);
        let scale = Rational::from_integer(num_bigint::BigInt::from(1) << k);
        x = x.scale(&scale).add(&w);
    }
    // Only the ray matters downstream; keep the coordinates small.
    int_vector(&kernel::primitive_integer_scaling(&x))
}

fn int_vector(xs: &[num_bigint::BigInt]) -> RationalVector {
    RationalVector::new(xs.iter().cloned().map(Rational::from_integer).collect())
}
