//! Fraction-free integer kernels behind every orientation sign and span test.
//!
//! Vectors enter as primitive integer rows (a positive rescaling of the
//! rational input, which preserves both spans and orientation signs).
//! Elimination first runs in checked `i128`; on overflow the same Bareiss
//! pass is repeated over `BigInt`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::exact::{RationalVector, Sign};

/// A positively rescaled integer copy of a rational vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntVec {
    big: Vec<BigInt>,
    small: Option<Vec<i64>>,
}

impl IntVec {
    pub fn from_rational(v: &RationalVector) -> Self {
        Self::from_big(primitive_integer_scaling(v))
    }

    pub fn from_big(big: Vec<BigInt>) -> Self {
        let small = big.iter().map(|x| x.to_i64()).collect::<Option<Vec<_>>>();
        Self { big, small }
    }

    pub fn dim(&self) -> usize {
        self.big.len()
    }

    pub fn big(&self) -> &[BigInt] {
        &self.big
    }

    pub fn is_zero(&self) -> bool {
        self.big.iter().all(Zero::is_zero)
    }

    pub fn negated(&self) -> Self {
        Self {
            big: self.big.iter().map(|x| -x).collect(),
            small: self
                .small
                .as_ref()
                .and_then(|s| s.iter().map(|x| x.checked_neg()).collect()),
        }
    }
}

/// Multiply by the (positive) lcm of the denominators, then divide by the
/// content. The zero vector maps to the zero vector.
pub fn primitive_integer_scaling(v: &RationalVector) -> Vec<BigInt> {
    let lcm = v
        .coords()
        .iter()
        .fold(<BigInt as One>::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = v
        .coords()
        .iter()
        .map(|c| c.numer() * (&lcm / c.denom()))
        .collect();
    let content = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if Zero::is_zero(&content) || One::is_one(&content) {
        ints
    } else {
        ints.into_iter().map(|x| x / &content).collect()
    }
}

trait Entry: Clone {
    fn is_zero(&self) -> bool;
    fn sign(&self) -> Sign;
    /// `(a*b - c*d) / e`, exact by Sylvester's identity.
    fn cross_div(a: &Self, b: &Self, c: &Self, d: &Self, e: &Self) -> Option<Self>;
    fn one() -> Self;
}

impl Entry for i128 {
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn sign(&self) -> Sign {
        Sign::from_ordering(self.cmp(&0))
    }
    fn cross_div(a: &Self, b: &Self, c: &Self, d: &Self, e: &Self) -> Option<Self> {
        let p = a.checked_mul(*b)?;
        let q = c.checked_mul(*d)?;
        Some(p.checked_sub(q)? / e)
    }
    fn one() -> Self {
        1
    }
}

impl Entry for BigInt {
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn sign(&self) -> Sign {
        if Zero::is_zero(self) {
            Sign::Zero
        } else if self.is_positive() {
            Sign::Positive
        } else {
            Sign::Negative
        }
    }
    fn cross_div(a: &Self, b: &Self, c: &Self, d: &Self, e: &Self) -> Option<Self> {
        Some((a * b - c * d) / e)
    }
    fn one() -> Self {
        One::one()
    }
}

/// Row-echelon elimination shared by the determinant and rank routines.
/// Returns `(rank, parity_of_row_swaps, last_pivot)`.
fn bareiss<T: Entry>(m: &mut [T], rows: usize, cols: usize) -> Option<(usize, bool, T)> {
    let mut prev = T::one();
    let mut swapped = false;
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i * cols + c].is_zero()) else {
            continue;
        };
        if p != r {
            for j in 0..cols {
                m.swap(p * cols + j, r * cols + j);
            }
            swapped = !swapped;
        }
        for i in r + 1..rows {
            for j in c + 1..cols {
                let v = T::cross_div(
                    &m[i * cols + j],
                    &m[r * cols + c],
                    &m[i * cols + c],
                    &m[r * cols + j],
                    &prev,
                )?;
                m[i * cols + j] = v;
            }
        }
        prev = m[r * cols + c].clone();
        r += 1;
    }
    Some((r, swapped, prev))
}

fn small_matrix(rows: &[&IntVec]) -> Option<Vec<i128>> {
    let mut out = Vec::with_capacity(rows.len() * rows.first().map_or(0, |r| r.dim()));
    for r in rows {
        out.extend(r.small.as_ref()?.iter().map(|&x| x as i128));
    }
    Some(out)
}

fn big_matrix(rows: &[&IntVec]) -> Vec<BigInt> {
    rows.iter().flat_map(|r| r.big.iter().cloned()).collect()
}

/// Sign of the determinant of the square matrix with the given rows.
pub fn det_sign(rows: &[&IntVec]) -> Sign {
    let n = rows.len();
    debug_assert!(rows.iter().all(|r| r.dim() == n));
    if n == 0 {
        return Sign::Positive;
    }
    if let Some(mut m) = small_matrix(rows) {
        if let Some(s) = det_sign_in(&mut m, n) {
            return s;
        }
    }
    let mut m = big_matrix(rows);
    det_sign_in(&mut m, n).expect("BigInt elimination cannot overflow")
}

fn det_sign_in<T: Entry>(m: &mut [T], n: usize) -> Option<Sign> {
    let (rank, swapped, last) = bareiss(m, n, n)?;
    if rank < n {
        return Some(Sign::Zero);
    }
    let s = last.sign();
    Some(if swapped { -s } else { s })
}

/// Rank of the given rows (all of equal dimension).
pub fn rank(rows: &[&IntVec]) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let cols = rows[0].dim();
    if let Some(mut m) = small_matrix(rows) {
        if let Some((r, _, _)) = bareiss(&mut m, rows.len(), cols) {
            return r;
        }
    }
    let mut m = big_matrix(rows);
    bareiss(&mut m, rows.len(), cols)
        .expect("BigInt elimination cannot overflow")
        .0
}

/// Whether `v` lies in the span of the independent rows `basis`.
pub fn in_span(basis: &[&IntVec], v: &IntVec) -> bool {
    let mut rows: Vec<&IntVec> = Vec::with_capacity(basis.len() + 1);
    rows.extend_from_slice(basis);
    rows.push(v);
    rank(&rows) == basis.len()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iv(xs: &[i64]) -> IntVec {
        IntVec::from_big(xs.iter().map(|&x| BigInt::from(x)).collect())
    }

    #[test]
    fn det_sign_matches_cofactor_expansion_on_small_cases() {
        let a = iv(&[2, 1, 0]);
        let b = iv(&[0, 3, 1]);
        let c = iv(&[1, 0, 4]);
        // 2*(12-0) - 1*(0-1) + 0 = 25
        assert_eq!(det_sign(&[&a, &b, &c]), Sign::Positive);
        assert_eq!(det_sign(&[&b, &a, &c]), Sign::Negative);
        assert_eq!(det_sign(&[&a, &a, &c]), Sign::Zero);
    }

    #[test]
    fn overflowing_entries_fall_back_to_bigint() {
        let big = i64::MAX / 3;
        let a = iv(&[big, 1, 0, 0]);
        let b = iv(&[1, big, 1, 0]);
        let c = iv(&[0, 1, big, 1]);
        let d = iv(&[0, 0, 1, big]);
        assert_eq!(det_sign(&[&a, &b, &c, &d]), Sign::Positive);
        assert_eq!(det_sign(&[&b, &a, &c, &d]), Sign::Negative);
    }

    #[test]
    fn rank_skips_zero_columns() {
        let a = iv(&[0, 1, 2]);
        let b = iv(&[0, 2, 4]);
        let c = iv(&[0, 0, 1]);
        assert_eq!(rank(&[&a, &b]), 1);
        assert_eq!(rank(&[&a, &b, &c]), 2);
        assert!(in_span(&[&a], &b));
        assert!(!in_span(&[&a], &c));
    }
}
