//! Exact rational scalars, vectors and matrices, plus the orientation and
//! spanning predicates everything else is built on.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Mul, Neg};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::kernel::{self, IntVec};

/// Arbitrary-precision rational, always in lowest terms with a positive
/// denominator.
pub type Rational = BigRational;

pub fn rat(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

pub fn int(p: i64) -> Rational {
    Rational::from_integer(BigInt::from(p))
}

/// Parse `"p/q"` or `"p"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational literal: {s:?}"));
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Ok(Rational::new(p, q))
        }
        None => Ok(Rational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// `"p"` for integers, `"p/q"` otherwise.
pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

/// Sign of a real number, or of a determinant.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn from_ordering(o: Ordering) -> Self {
        match o {
            Ordering::Less => Sign::Negative,
            Ordering::Equal => Sign::Zero,
            Ordering::Greater => Sign::Positive,
        }
    }

    pub fn of(r: &Rational) -> Self {
        if r.is_zero() {
            Sign::Zero
        } else if r.is_positive() {
            Sign::Positive
        } else {
            Sign::Negative
        }
    }

    pub fn of_f64(x: f64) -> Self {
        Self::from_ordering(x.partial_cmp(&0.0).unwrap_or(Ordering::Equal))
    }

    /// `(-1)^k`.
    pub fn parity(k: usize) -> Self {
        if k.is_multiple_of(2) {
            Sign::Positive
        } else {
            Sign::Negative
        }
    }

    pub fn to_i32(self) -> i32 {
        match self {
            Sign::Negative => -1,
            Sign::Zero => 0,
            Sign::Positive => 1,
        }
    }

    pub fn to_rational(self) -> Rational {
        int(self.to_i32() as i64)
    }

    pub fn is_zero(self) -> bool {
        self == Sign::Zero
    }
}

impl Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        match (self, rhs) {
            (Sign::Zero, _) | (_, Sign::Zero) => Sign::Zero,
            (a, b) if a == b => Sign::Positive,
            _ => Sign::Negative,
        }
    }
}

impl Neg for Sign {
    type Output = Sign;
    fn neg(self) -> Sign {
        match self {
            Sign::Negative => Sign::Positive,
            Sign::Zero => Sign::Zero,
            Sign::Positive => Sign::Negative,
        }
    }
}

impl std::iter::Product for Sign {
    fn product<I: Iterator<Item = Sign>>(iter: I) -> Sign {
        iter.fold(Sign::Positive, |a, b| a * b)
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_i32())
    }
}

/// Rejects odd and zero dimensions.
pub fn check_even_dimension(n: usize) -> Result<()> {
    if n == 0 {
        Err(Error::ZeroDimension)
    } else if n % 2 == 1 {
        Err(Error::OddDimension(n))
    } else {
        Ok(())
    }
}

/// A vector in ℚⁿ.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalVector {
    coords: Vec<Rational>,
}

impl RationalVector {
    pub fn new(coords: Vec<Rational>) -> Self {
        Self { coords }
    }

    pub fn from_ints(xs: &[i64]) -> Self {
        Self::new(xs.iter().map(|&x| int(x)).collect())
    }

    pub fn zeros(n: usize) -> Self {
        Self::new(vec![Rational::zero(); n])
    }

    /// `e_i` for `1 ≤ i ≤ n`; `e_0` is `e_1 + … + e_n`.
    pub fn basis(n: usize, i: usize) -> Self {
        assert!(i <= n, "basis index {i} out of range for dimension {n}");
        if i == 0 {
            Self::new(vec![Rational::one(); n])
        } else {
            let mut v = Self::zeros(n);
            v.coords[i - 1] = Rational::one();
            v
        }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, s: &Rational) -> Self {
        Self::new(self.coords.iter().map(|c| c * s).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        debug_assert_eq!(self.dim(), other.dim());
        Self::new(
            self.coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        debug_assert_eq!(self.dim(), other.dim());
        Self::new(
            self.coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a - b)
                .collect(),
        )
    }

    pub fn dot(&self, other: &Self) -> Rational {
        self.coords
            .iter()
            .zip(&other.coords)
            .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.coords.iter().map(rational_to_f64).collect()
    }

    /// Exact conversion of finite floats.
    pub fn from_f64(xs: &[f64]) -> Option<Self> {
        xs.iter()
            .map(|&x| Rational::from_float(x))
            .collect::<Option<Vec<_>>>()
            .map(Self::new)
    }
}

impl Neg for &RationalVector {
    type Output = RationalVector;
    fn neg(self) -> RationalVector {
        RationalVector::new(self.coords.iter().map(|c| -c).collect())
    }
}

impl fmt::Display for RationalVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl Serialize for RationalVector {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let strs: Vec<String> = self.coords.iter().map(format_rational).collect();
        strs.serialize(s)
    }
}

impl<'de> Deserialize<'de> for RationalVector {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw: Vec<RationalLiteral> = Vec::deserialize(d)?;
        Ok(Self::new(raw.into_iter().map(|r| r.0).collect()))
    }
}

/// A rational read from JSON: either a `"p/q"` string or a bare integer.
#[derive(Clone, Debug, PartialEq)]
pub struct RationalLiteral(pub Rational);

impl<'de> Deserialize<'de> for RationalLiteral {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let v = serde_json::Value::deserialize(d)?;
        match v {
            serde_json::Value::String(s) => parse_rational(&s)
                .map(RationalLiteral)
                .map_err(D::Error::custom),
            serde_json::Value::Number(num) if num.is_i64() => {
                Ok(RationalLiteral(int(num.as_i64().unwrap())))
            }
            other => Err(D::Error::custom(format!(
                "expected a rational string or integer, got {other}"
            ))),
        }
    }
}

pub fn rational_to_f64(r: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or_else(|| {
        // Ratio::to_f64 gives up on huge parts; divide in lower precision instead.
        let n = r.numer().to_f64().unwrap_or(f64::NAN);
        let d = r.denom().to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

/// Dense row-major matrix over ℚ.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl RationalMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Rational>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data has the wrong length");
        Self { rows, cols, data }
    }

    pub fn from_rows(rows: &[Vec<Rational>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|row| row.len() != c) {
            return Err(Error::DimensionMismatch {
                expected: c,
                found: bad.len(),
            });
        }
        Ok(Self::new(r, c, rows.iter().flatten().cloned().collect()))
    }

    pub fn from_int_rows(rows: &[&[i64]]) -> Self {
        let r: Vec<Vec<Rational>> = rows
            .iter()
            .map(|row| row.iter().map(|&x| int(x)).collect())
            .collect();
        Self::from_rows(&r).expect("ragged integer matrix")
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(cols: &[RationalVector]) -> Result<Self> {
        let n = cols.first().map_or(0, RationalVector::dim);
        if let Some(bad) = cols.iter().find(|c| c.dim() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: bad.dim(),
            });
        }
        let mut data = Vec::with_capacity(n * cols.len());
        for i in 0..n {
            for c in cols {
                data.push(c.coords[i].clone());
            }
        }
        Ok(Self::new(n, cols.len(), data))
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::new(n, n, vec![Rational::zero(); n * n]);
        for i in 0..n {
            m.data[i * n + i] = Rational::one();
        }
        m
    }

    pub fn diagonal(d: &[Rational]) -> Self {
        let n = d.len();
        let mut m = Self::new(n, n, vec![Rational::zero(); n * n]);
        for (i, x) in d.iter().enumerate() {
            m.data[i * n + i] = x.clone();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> RationalVector {
        RationalVector::new((0..self.rows).map(|i| self.get(i, j).clone()).collect())
    }

    pub fn to_rows(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn mul_vec(&self, v: &RationalVector) -> RationalVector {
        assert_eq!(self.cols, v.dim(), "matrix-vector dimension mismatch");
        RationalVector::new(
            (0..self.rows)
                .map(|i| {
                    self.row(i)
                        .iter()
                        .zip(v.coords())
                        .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
                })
                .collect(),
        )
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matrix product dimension mismatch");
        let mut data = Vec::with_capacity(self.rows * other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = Rational::zero();
                for k in 0..self.cols {
                    acc += self.get(i, k) * other.get(k, j);
                }
                data.push(acc);
            }
        }
        Self::new(self.rows, other.cols, data)
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.get(i, j).clone());
            }
        }
        Self::new(self.cols, self.rows, data)
    }

    fn require_square(&self) -> Result<()> {
        if self.is_square() {
            Ok(())
        } else {
            Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            })
        }
    }

    /// Exact determinant by rational elimination.
    pub fn det(&self) -> Result<Rational> {
        self.require_square()?;
        let n = self.rows;
        let mut m = self.data.clone();
        let mut det = Rational::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| !m[r * n + c].is_zero()) else {
                return Ok(Rational::zero());
            };
            if p != c {
                for j in 0..n {
                    m.swap(p * n + j, c * n + j);
                }
                det = -det;
            }
            let pivot = m[c * n + c].clone();
            det *= &pivot;
            for r in c + 1..n {
                if m[r * n + c].is_zero() {
                    continue;
                }
                let f = &m[r * n + c] / &pivot;
                for j in c..n {
                    let t = &f * &m[c * n + j];
                    m[r * n + j] -= t;
                }
            }
        }
        Ok(det)
    }

    /// Sign of the determinant via the fraction-free integer kernel.
    pub fn det_sign(&self) -> Result<Sign> {
        self.require_square()?;
        let rows: Vec<IntVec> = (0..self.rows)
            .map(|i| IntVec::from_rational(&RationalVector::new(self.row(i).to_vec())))
            .collect();
        let refs: Vec<&IntVec> = rows.iter().collect();
        Ok(kernel::det_sign(&refs))
    }

    /// Gauss-Jordan inverse.
    pub fn inverse(&self) -> Result<Self> {
        self.require_square()?;
        let n = self.rows;
        let w = 2 * n;
        let mut m = vec![Rational::zero(); n * w];
        for i in 0..n {
            for j in 0..n {
                m[i * w + j] = self.get(i, j).clone();
            }
            m[i * w + n + i] = Rational::one();
        }
        for c in 0..n {
            let p = (c..n)
                .find(|&r| !m[r * w + c].is_zero())
                .ok_or(Error::Singular)?;
            if p != c {
                for j in 0..w {
                    m.swap(p * w + j, c * w + j);
                }
            }
            let pivot = m[c * w + c].clone();
            for j in 0..w {
                m[c * w + j] /= &pivot;
            }
            for r in 0..n {
                if r == c || m[r * w + c].is_zero() {
                    continue;
                }
                let f = m[r * w + c].clone();
                for j in 0..w {
                    let t = &f * &m[c * w + j];
                    m[r * w + j] -= t;
                }
            }
        }
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            data.extend_from_slice(&m[i * w + n..(i + 1) * w]);
        }
        Ok(Self::new(n, n, data))
    }

    /// Unique solution of `self · x = b` for square nonsingular `self`.
    pub fn solve(&self, b: &RationalVector) -> Result<RationalVector> {
        if b.dim() != self.rows {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                found: b.dim(),
            });
        }
        Ok(self.inverse()?.mul_vec(b))
    }

    /// Basis of `{x : self · x = 0}`, one vector per free column of the
    /// reduced row echelon form.
    pub fn nullspace(&self) -> Vec<RationalVector> {
        let (rows, cols) = (self.rows, self.cols);
        let mut m = self.data.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            let Some(p) = (r..rows).find(|&i| !m[i * cols + c].is_zero()) else {
                continue;
            };
            for j in 0..cols {
                m.swap(p * cols + j, r * cols + j);
            }
            let pivot = m[r * cols + c].clone();
            for j in 0..cols {
                m[r * cols + j] /= &pivot;
            }
            for i in 0..rows {
                if i == r || m[i * cols + c].is_zero() {
                    continue;
                }
                let f = m[i * cols + c].clone();
                for j in 0..cols {
                    let t = &f * &m[r * cols + j];
                    m[i * cols + j] -= t;
                }
            }
            pivots.push(c);
            r += 1;
            if r == rows {
                break;
            }
        }
        (0..cols)
            .filter(|c| !pivots.contains(c))
            .map(|free| {
                let mut x = vec![Rational::zero(); cols];
                x[free] = Rational::one();
                for (i, &p) in pivots.iter().enumerate() {
                    x[p] = -m[i * cols + free].clone();
                }
                RationalVector::new(x)
            })
            .collect()
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.data.iter().map(rational_to_f64).collect()
    }

    pub fn from_f64(rows: usize, cols: usize, data: &[f64]) -> Option<Self> {
        let data = data
            .iter()
            .map(|&x| Rational::from_float(x))
            .collect::<Option<Vec<_>>>()?;
        Some(Self::new(rows, cols, data))
    }
}

impl fmt::Display for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
        }
        write!(f, "]")
    }
}

impl Serialize for RationalMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Vec<String>> = (0..self.rows)
            .map(|i| self.row(i).iter().map(format_rational).collect())
            .collect();
        rows.serialize(s)
    }
}

impl<'de> Deserialize<'de> for RationalMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw: Vec<Vec<RationalLiteral>> = Vec::deserialize(d)?;
        let rows: Vec<Vec<Rational>> = raw
            .into_iter()
            .map(|r| r.into_iter().map(|x| x.0).collect())
            .collect();
        Self::from_rows(&rows).map_err(D::Error::custom)
    }
}

/// A point of P(ℚⁿ) in canonical form: primitive integer coordinates with
/// the first nonzero coordinate positive.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjectivePoint {
    rep: Vec<BigInt>,
}

impl ProjectivePoint {
    pub fn coords(&self) -> &[BigInt] {
        &self.rep
    }

    pub fn to_vector(&self) -> RationalVector {
        RationalVector::new(
            self.rep
                .iter()
                .map(|x| Rational::from_integer(x.clone()))
                .collect(),
        )
    }
}

impl fmt::Display for ProjectivePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.rep.iter().enumerate() {
            if i > 0 {
                write!(f, ":")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

pub fn projective_normalize(v: &RationalVector) -> Result<ProjectivePoint> {
    if v.is_zero() {
        return Err(Error::ZeroVector);
    }
    let mut rep = kernel::primitive_integer_scaling(v);
    let first = rep.iter().find(|x| !x.is_zero()).expect("nonzero vector");
    if first.is_negative() {
        rep.iter_mut().for_each(|x| *x = -&*x);
    }
    Ok(ProjectivePoint { rep })
}

/// Orientation sign of `k` vectors in ℚᵏ: the sign of the determinant of the
/// matrix with these columns, `0` exactly when they are dependent.
pub fn ori(vs: &[RationalVector]) -> Result<Sign> {
    let k = vs.len();
    if let Some(bad) = vs.iter().find(|v| v.dim() != k) {
        return Err(Error::DimensionMismatch {
            expected: k,
            found: bad.dim(),
        });
    }
    let ints: Vec<IntVec> = vs.iter().map(IntVec::from_rational).collect();
    let refs: Vec<&IntVec> = ints.iter().collect();
    Ok(kernel::det_sign(&refs))
}

/// Sign of the determinant of an invertible matrix.
pub fn sig(g: &RationalMatrix) -> Result<Sign> {
    match g.det_sign()? {
        Sign::Zero => Err(Error::Singular),
        s => Ok(s),
    }
}

/// Every `n`-element subcollection of `xs` is a basis of ℚⁿ.
pub fn hereditarily_spanning(xs: &[RationalVector], n: usize) -> Result<bool> {
    if xs.len() < n {
        return Err(Error::TooFewVectors {
            needed: n,
            found: xs.len(),
        });
    }
    if let Some(bad) = xs.iter().find(|v| v.dim() != n) {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: bad.dim(),
        });
    }
    let ints: Vec<IntVec> = xs.iter().map(IntVec::from_rational).collect();
    Ok(hereditarily_spanning_int(&ints, n))
}

pub(crate) fn hereditarily_spanning_int(ints: &[IntVec], n: usize) -> bool {
    let mut ok = true;
    for_each_subset(ints.len(), n, |subset| {
        let rows: Vec<&IntVec> = subset.iter().map(|&i| &ints[i]).collect();
        if kernel::det_sign(&rows).is_zero() {
            ok = false;
            return false;
        }
        true
    });
    ok
}

/// Visits every increasing `k`-subset of `0..m`; stops when `f` returns false.
pub(crate) fn for_each_subset(m: usize, k: usize, mut f: impl FnMut(&[usize]) -> bool) {
    if k > m {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        if !f(&idx) {
            return;
        }
        let Some(i) = (0..k).rev().find(|&i| idx[i] != i + m - k) else {
            return;
        };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// For a hereditarily spanning `(x_0, …, x_n)`, the matrix `g` sending each
/// `x_i` (`i ≥ 1`) onto the line of `e_i` and `x_0` onto the line of `e_0`.
pub fn frame_transform(xs: &[RationalVector]) -> Result<RationalMatrix> {
    let n = xs.len().checked_sub(1).ok_or(Error::TooFewVectors {
        needed: 1,
        found: 0,
    })?;
    if let Some(bad) = xs.iter().find(|v| v.dim() != n) {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: bad.dim(),
        });
    }
    let frame = RationalMatrix::from_columns(&xs[1..])?;
    let coeffs = frame
        .solve(&xs[0])
        .map_err(|_| Error::NotHereditarilySpanning)?;
    if coeffs.coords().iter().any(Zero::is_zero) {
        return Err(Error::NotHereditarilySpanning);
    }
    let scaled: Vec<RationalVector> = xs[1..]
        .iter()
        .zip(coeffs.coords())
        .map(|(x, c)| x.scale(c))
        .collect();
    RationalMatrix::from_columns(&scaled)?
        .inverse()
        .map_err(|_| Error::NotHereditarilySpanning)
}

/// `lcm` of all denominators; handy for keeping derived points integral.
pub fn common_denominator(v: &RationalVector) -> BigInt {
    v.coords()
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
}
