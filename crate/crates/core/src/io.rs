//! JSON file formats. All exact values travel as rational strings `"p/q"`
//! (integers may also be given as bare JSON numbers on input).

use std::path::Path;

use nalgebra::DMatrix;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{check_even_dimension, format_rational, Rational, RationalVector};
use crate::flags::OrientedFlag;
use crate::montecarlo::ItuEstimate;
use crate::simplicial::EulerReport;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TupleFile {
    pub n: usize,
    pub points: Vec<RationalVector>,
}

impl TupleFile {
    pub fn new(n: usize, points: Vec<RationalVector>) -> Self {
        Self { n, points }
    }

    /// The points, after checking that every one has dimension `n`.
    pub fn into_points(self) -> Result<Vec<RationalVector>> {
        check_even_dimension(self.n)?;
        if let Some(bad) = self.points.iter().find(|p| p.dim() != self.n) {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: bad.dim(),
            });
        }
        Ok(self.points)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlagTupleFile {
    pub n: usize,
    /// Each flag as its ordered basis `[w_1, …, w_n]`.
    pub flags: Vec<Vec<RationalVector>>,
}

impl FlagTupleFile {
    pub fn from_flags(n: usize, flags: &[OrientedFlag]) -> Self {
        Self {
            n,
            flags: flags.iter().map(|f| f.basis().to_vec()).collect(),
        }
    }

    pub fn into_flags(self) -> Result<Vec<OrientedFlag>> {
        check_even_dimension(self.n)?;
        self.flags
            .into_iter()
            .map(|basis| {
                if basis.len() != self.n {
                    return Err(Error::DimensionMismatch {
                        expected: self.n,
                        found: basis.len(),
                    });
                }
                if let Some(bad) = basis.iter().find(|w| w.dim() != self.n) {
                    return Err(Error::DimensionMismatch {
                        expected: self.n,
                        found: bad.dim(),
                    });
                }
                OrientedFlag::new(basis)
            })
            .collect()
    }
}

/// Float matrices for the sampler, row-major.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MatrixTupleFile {
    pub n: usize,
    pub gs: Vec<Vec<Vec<f64>>>,
}

impl MatrixTupleFile {
    pub fn from_matrices(n: usize, gs: &[DMatrix<f64>]) -> Self {
        Self {
            n,
            gs: gs
                .iter()
                .map(|g| g.row_iter().map(|r| r.iter().copied().collect()).collect())
                .collect(),
        }
    }

    pub fn into_matrices(self) -> Result<Vec<DMatrix<f64>>> {
        let n = self.n;
        self.gs
            .into_iter()
            .map(|rows| {
                if rows.len() != n || rows.iter().any(|r| r.len() != n) {
                    return Err(Error::NotSquare {
                        rows: rows.len(),
                        cols: rows.first().map_or(0, Vec::len),
                    });
                }
                Ok(DMatrix::from_row_iterator(n, n, rows.into_iter().flatten()))
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EulerOutput {
    pub euler_number: Option<String>,
    pub raw: String,
    pub per_simplex: Vec<String>,
    pub closed: bool,
}

impl From<&EulerReport> for EulerOutput {
    fn from(r: &EulerReport) -> Self {
        Self {
            euler_number: r.euler_number.as_ref().map(ToString::to_string),
            raw: format_rational(&r.raw),
            per_simplex: r.per_simplex.iter().map(format_rational).collect(),
            closed: r.closed,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ItuOutput {
    pub mean: f64,
    pub stderr: f64,
    pub samples: u64,
    pub resampled: u64,
}

impl From<&ItuEstimate> for ItuOutput {
    fn from(e: &ItuEstimate) -> Self {
        Self {
            mean: e.mean,
            stderr: e.stderr,
            samples: e.samples,
            resampled: e.resampled,
        }
    }
}

pub fn rational_strings(xs: &[Rational]) -> Vec<String> {
    xs.iter().map(format_rational).collect()
}

pub fn from_json_str<T: DeserializeOwned>(s: &str) -> Result<T> {
    serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    from_json_str(&text)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use crate::simplicial::FlatBundleComplex;

    #[test]
    fn tuple_files_accept_strings_and_integers() {
        let t: TupleFile = from_json_str(r#"{"n": 2, "points": [["1/2", 1], ["-3", "0"], [0, "7/3"]]}"#).unwrap();
        assert_eq!(t.points[0].coords()[0], rat(1, 2));
        assert_eq!(t.points[2].coords()[1], rat(7, 3));
        let back = serde_json::to_string(&t).unwrap();
        assert_eq!(from_json_str::<TupleFile>(&back).unwrap(), t);
    }

    #[test]
    fn malformed_input_is_a_parse_error() {
        assert!(matches!(from_json_str::<TupleFile>("{\"n\": 2}"), Err(Error::Parse(_))));
        assert!(matches!(
            from_json_str::<TupleFile>(r#"{"n": 2, "points": [["1/0", 1]]}"#),
            Err(Error::Parse(_))
        ));
        let t: TupleFile = from_json_str(r#"{"n": 2, "points": [["1", 1, 2]]}"#).unwrap();
        assert!(matches!(t.into_points(), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn flag_files_round_trip() {
        let f = OrientedFlag::standard(2).unwrap();
        let file = FlagTupleFile::from_flags(2, &[f.clone(), f.flip(1).unwrap()]);
        let text = serde_json::to_string(&file).unwrap();
        let back = from_json_str::<FlagTupleFile>(&text).unwrap().into_flags().unwrap();
        assert_eq!(back[0], f);
    }

    #[test]
    fn bundle_files_parse() {
        let text = r#"{
            "n": 2, "vertices": 3,
            "simplices": [{"v": [0, 1, 2], "c": 1}],
            "transitions": [{"i": 0, "j": 1, "g": [[1, 0], [0, 1]]}],
            "section": [[1, 0], [0, 1], [-1, -1]]
        }"#;
        let b: FlatBundleComplex = from_json_str(text).unwrap();
        assert_eq!(b.vertex_count, 3);
        assert_eq!(b.simplices[0].c, 1);
    }
}
