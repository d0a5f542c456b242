//! Flat `GL⁺ₙ` bundles over simplicial chains and their Euler numbers.
//!
//! A bundle is given by transition matrices `g_xy` on the ordered vertex
//! pairs of each simplex (`g_xy` maps fibre coordinates at `y` to fibre
//! coordinates at `x`) and one section vector per vertex. A simplex
//! `⟨x_0, …, x_n⟩` is evaluated by transporting every section vector to the
//! fibre at `x_0` and applying the Sullivan or Smillie cocycle there.
//!
//! The sign of the result follows the stored vertex order of each simplex;
//! reversing the orientation of the chain negates it.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::cocycles::{deleted_oris, smi_int, sul_int};
use crate::error::{Error, Result};
use crate::exact::{check_even_dimension, Rational, RationalMatrix, RationalVector, Sign};
use crate::kernel::IntVec;
use crate::parallel::{map_collect, ExecPolicy};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Simplex {
    pub v: Vec<usize>,
    pub c: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Transition {
    pub i: usize,
    pub j: usize,
    pub g: RationalMatrix,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlatBundleComplex {
    pub n: usize,
    #[serde(rename = "vertices")]
    pub vertex_count: usize,
    pub simplices: Vec<Simplex>,
    /// One direction per pair suffices; the reverse is the inverse.
    pub transitions: Vec<Transition>,
    pub section: Vec<RationalVector>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ViolationKind {
    Dimension,
    VertexIndex,
    SimplexArity,
    RepeatedVertex,
    ZeroSection,
    MissingTransition,
    Identity,
    Inverse,
    Orientation,
    CocycleCondition,
}

impl ViolationKind {
    pub fn label(self) -> &'static str {
        match self {
            ViolationKind::Dimension => "dimension",
            ViolationKind::VertexIndex => "vertex index",
            ViolationKind::SimplexArity => "simplex arity",
            ViolationKind::RepeatedVertex => "repeated vertex",
            ViolationKind::ZeroSection => "zero section",
            ViolationKind::MissingTransition => "missing transition",
            ViolationKind::Identity => "identity",
            ViolationKind::Inverse => "inverse",
            ViolationKind::Orientation => "orientation",
            ViolationKind::CocycleCondition => "cocycle condition",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub kind: ViolationKind,
    pub location: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn has(&self, kind: ViolationKind) -> bool {
        self.violations.iter().any(|v| v.kind == kind)
    }

    fn push(&mut self, kind: ViolationKind, location: impl Into<String>) {
        self.violations.push(Violation {
            kind,
            location: location.into(),
        });
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, v) in self.violations.iter().enumerate() {
            if k > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{} at {}", v.kind.label(), v.location)?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EulerMode {
    Sullivan,
    Smillie,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EulerReport {
    /// `Σ c_σ · value(σ)`.
    pub raw: Rational,
    /// `raw` as an integer; `None` when the chain is not closed.
    pub euler_number: Option<BigInt>,
    pub per_simplex: Vec<Rational>,
    pub closed: bool,
}

type Transitions = BTreeMap<(usize, usize), RationalMatrix>;

impl FlatBundleComplex {
    /// Every violated invariant, with its location.
    pub fn validate(&self) -> ValidationReport {
        self.checked_transitions().1
    }

    fn checked_transitions(&self) -> (Transitions, ValidationReport) {
        let mut report = ValidationReport::default();
        let n = self.n;
        if n == 0 || n % 2 == 1 {
            report.push(ViolationKind::Dimension, format!("bundle rank {n}"));
        }
        if self.section.len() != self.vertex_count {
            report.push(
                ViolationKind::Dimension,
                format!("{} section vectors for {} vertices", self.section.len(), self.vertex_count),
            );
        }
        for (x, s) in self.section.iter().enumerate() {
            if s.dim() != n {
                report.push(ViolationKind::Dimension, format!("section at vertex {x}"));
            } else if s.is_zero() {
                report.push(ViolationKind::ZeroSection, format!("vertex {x}"));
            }
        }

        let mut map = Transitions::new();
        for (t, tr) in self.transitions.iter().enumerate() {
            let at = format!("transition #{t} ({},{})", tr.i, tr.j);
            if tr.i >= self.vertex_count || tr.j >= self.vertex_count {
                report.push(ViolationKind::VertexIndex, at);
                continue;
            }
            if tr.g.rows() != n || tr.g.cols() != n {
                report.push(ViolationKind::Dimension, at);
                continue;
            }
            if tr.i == tr.j {
                if tr.g != RationalMatrix::identity(n) {
                    report.push(ViolationKind::Identity, at);
                }
                continue;
            }
            let det = tr.g.det().expect("square");
            if !det.is_positive() {
                report.push(ViolationKind::Orientation, format!("{at}: det = {det}"));
                continue;
            }
            let inv = tr.g.inverse().expect("nonzero determinant");
            for (key, m) in [((tr.i, tr.j), tr.g.clone()), ((tr.j, tr.i), inv)] {
                match map.get(&key) {
                    Some(old) if *old != m => {
                        report.push(ViolationKind::Inverse, format!("pair ({},{})", key.0, key.1));
                    }
                    Some(_) => {}
                    None => {
                        map.insert(key, m);
                    }
                }
            }
        }

        for (k, s) in self.simplices.iter().enumerate() {
            let at = format!("simplex #{k} {:?}", s.v);
            if s.v.len() != n + 1 {
                report.push(ViolationKind::SimplexArity, at);
                continue;
            }
            if s.v.iter().any(|&x| x >= self.vertex_count) {
                report.push(ViolationKind::VertexIndex, at);
                continue;
            }
            if s.v.iter().collect::<BTreeSet<_>>().len() != s.v.len() {
                report.push(ViolationKind::RepeatedVertex, at);
                continue;
            }
            let mut complete = true;
            for &x in &s.v {
                for &y in &s.v {
                    if x != y && !map.contains_key(&(x, y)) {
                        report.push(ViolationKind::MissingTransition, format!("{at}: pair ({x},{y})"));
                        complete = false;
                    }
                }
            }
            if !complete {
                continue;
            }
            for &x in &s.v {
                for &y in &s.v {
                    for &z in &s.v {
                        if x == y || y == z || x == z {
                            continue;
                        }
                        if map[&(x, y)].mul(&map[&(y, z)]) != map[&(x, z)] {
                            report.push(
                                ViolationKind::CocycleCondition,
                                format!("{at}: g_{x}{y}·g_{y}{z} ≠ g_{x}{z}"),
                            );
                        }
                    }
                }
            }
        }
        (map, report)
    }

    fn validated(&self) -> Result<Transitions> {
        let (map, report) = self.checked_transitions();
        if report.is_ok() {
            Ok(map)
        } else {
            Err(Error::InvalidBundle(report.to_string()))
        }
    }

    /// Re-trivialize: `s_x ↦ h_x s_x`, `g_xy ↦ h_x g_xy h_y⁻¹`.
    pub fn gauge(&self, h: &[RationalMatrix]) -> Result<Self> {
        if h.len() != self.vertex_count {
            return Err(Error::DimensionMismatch {
                expected: self.vertex_count,
                found: h.len(),
            });
        }
        let inv = h.iter().map(RationalMatrix::inverse).collect::<Result<Vec<_>>>()?;
        Ok(Self {
            transitions: self
                .transitions
                .iter()
                .map(|t| Transition {
                    i: t.i,
                    j: t.j,
                    g: h[t.i].mul(&t.g).mul(&inv[t.j]),
                })
                .collect(),
            section: self.section.iter().zip(h).map(|(s, m)| m.mul_vec(s)).collect(),
            ..self.clone()
        })
    }

    pub fn with_section(&self, section: Vec<RationalVector>) -> Self {
        Self {
            section,
            ..self.clone()
        }
    }
}

/// Formal boundary `Σ c_σ Σ_i (−1)^i ∂_i σ`, faces in increasing vertex order.
pub fn chain_boundary(bundle: &FlatBundleComplex) -> Vec<(Vec<usize>, i64)> {
    let mut faces: BTreeMap<Vec<usize>, i64> = BTreeMap::new();
    for s in &bundle.simplices {
        for i in 0..s.v.len() {
            let mut face: Vec<usize> = s.v.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &x)| x).collect();
            let parity = sort_parity(&mut face);
            let sign = if (i % 2 == 1) ^ parity { -1 } else { 1 };
            *faces.entry(face).or_insert(0) += sign * s.c;
        }
    }
    faces.into_iter().filter(|(_, c)| *c != 0).collect()
}

/// Sort in place, returning whether the permutation was odd.
fn sort_parity(xs: &mut [usize]) -> bool {
    let mut odd = false;
    for i in 1..xs.len() {
        let mut j = i;
        while j > 0 && xs[j - 1] > xs[j] {
            xs.swap(j - 1, j);
            odd = !odd;
            j -= 1;
        }
    }
    odd
}

fn transported(map: &Transitions, bundle: &FlatBundleComplex, v: &[usize], base: usize) -> Vec<IntVec> {
    let b = v[base];
    v.iter()
        .map(|&y| {
            let s = &bundle.section[y];
            IntVec::from_rational(&if y == b { s.clone() } else { map[&(b, y)].mul_vec(s) })
        })
        .collect()
}

fn simplex_value(
    map: &Transitions,
    bundle: &FlatBundleComplex,
    index: usize,
    mode: EulerMode,
) -> Result<Rational> {
    let v = &bundle.simplices[index].v;
    let eval = |rows: &[IntVec]| -> Result<Rational> {
        match mode {
            EulerMode::Smillie => smi_int(rows),
            EulerMode::Sullivan => {
                if deleted_oris(rows).contains(&Sign::Zero) {
                    return Err(Error::NonGenericSection { simplex: index });
                }
                Ok(sul_int(rows).to_rational())
            }
        }
    };
    let value = eval(&transported(map, bundle, v, 0))?;
    for base in 1..v.len() {
        let other = eval(&transported(map, bundle, v, base))?;
        if other != value {
            return Err(Error::Internal(format!(
                "simplex #{index}: base vertex {base} gives {other}, base vertex 0 gives {value}"
            )));
        }
    }
    if mode == EulerMode::Smillie {
        let bound = Rational::new(BigInt::one(), BigInt::one() << bundle.n);
        if value.abs() > bound {
            return Err(Error::Internal(format!("simplex #{index}: |smi| = {value} exceeds 2^-n")));
        }
    }
    Ok(value)
}

/// `Σ_σ c_σ · ssul(σ)` or `Σ_σ c_σ · ssmi(σ)`.
pub fn euler_number(bundle: &FlatBundleComplex, mode: EulerMode, policy: ExecPolicy) -> Result<EulerReport> {
    check_even_dimension(bundle.n)?;
    let map = bundle.validated()?;
    let per_simplex = map_collect(policy, bundle.simplices.len(), |k| {
        simplex_value(&map, bundle, k, mode)
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;
    let raw = bundle
        .simplices
        .iter()
        .zip(&per_simplex)
        .fold(Rational::zero(), |acc, (s, v)| acc + v * Rational::from_integer(s.c.into()));
    let closed = chain_boundary(bundle).is_empty();
    let euler_number = if closed {
        if !raw.is_integer() {
            return Err(Error::NonIntegral(raw.to_string()));
        }
        Some(raw.to_integer())
    } else {
        None
    };
    Ok(EulerReport {
        raw,
        euler_number,
        per_simplex,
        closed,
    })
}
