//! Shift equivalence of linear maps over ℚ.
//!
//! Over a field two endomorphisms are shift equivalent exactly when their
//! restrictions to the eventual image are similar.

use std::fmt;

use num_rational::BigRational;
use thiserror::Error;

use crate::homalg::rational::{inverse, is_invertible, rref};
use crate::homalg::{rational_canonical_form, IntMatrix, Poly, QMatrix};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ShiftEqError {
    #[error("matrix is {rows}x{cols}, expected a square matrix")]
    NotSquare { rows: usize, cols: usize },
    #[error("row {row} has {found} entries, expected {expected}")]
    Ragged { row: usize, expected: usize, found: usize },
    #[error("`{0}` is not a rational number")]
    BadEntry(String),
}

/// Square matrix over ℚ acting on column vectors.
#[derive(Clone, PartialEq)]
pub struct LinearEndo {
    matrix: QMatrix,
}

impl LinearEndo {
    pub fn new(matrix: QMatrix) -> Result<Self, ShiftEqError> {
        if !matrix.is_square() {
            return Err(ShiftEqError::NotSquare {
                rows: matrix.rows(),
                cols: matrix.cols(),
            });
        }
        Ok(LinearEndo { matrix })
    }

    /// The map on the zero space.
    pub fn empty() -> Self {
        LinearEndo {
            matrix: QMatrix::zeros(0, 0),
        }
    }

    pub fn identity(n: usize) -> Self {
        LinearEndo {
            matrix: QMatrix::identity(n),
        }
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Result<Self, ShiftEqError> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| BigRational::from_integer(v.into())).collect())
                .collect(),
        )
    }

    pub fn from_integer_matrix(m: &IntMatrix) -> Result<Self, ShiftEqError> {
        Self::new(m.to_rational())
    }

    pub fn from_rows(rows: Vec<Vec<BigRational>>) -> Result<Self, ShiftEqError> {
        let n = rows.len();
        for (row, r) in rows.iter().enumerate() {
            if r.len() != n {
                return Err(if row == 0 {
                    ShiftEqError::NotSquare { rows: n, cols: r.len() }
                } else {
                    ShiftEqError::Ragged {
                        row,
                        expected: n,
                        found: r.len(),
                    }
                });
            }
        }
        Ok(LinearEndo {
            matrix: QMatrix::from_rows(rows),
        })
    }

    /// Rows of string entries such as `"3"`, `"-1/2"`.
    pub fn from_strings(rows: &[Vec<String>]) -> Result<Self, ShiftEqError> {
        let parsed = rows
            .iter()
            .map(|r| r.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        Self::from_rows(parsed)
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &QMatrix {
        &self.matrix
    }

    pub fn to_strings(&self) -> Vec<Vec<String>> {
        self.matrix
            .to_rows()
            .into_iter()
            .map(|r| r.iter().map(ToString::to_string).collect())
            .collect()
    }

    pub fn is_invertible(&self) -> bool {
        is_invertible(&self.matrix)
    }

    pub fn canonical_form(&self) -> Vec<Poly> {
        rational_canonical_form(&self.matrix)
    }
}

impl fmt::Debug for LinearEndo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LinearEndo({:?})", self.to_strings())
    }
}

/// Accepts `p`, `p/q` and decimal literals like `0.25`.
pub fn parse_rational(s: &str) -> Result<BigRational, ShiftEqError> {
    crate::interval::parse_rational(s.trim()).map_err(|_| ShiftEqError::BadEntry(s.to_string()))
}

/// Basis of the column space of `m`, as columns.
fn column_basis(m: &QMatrix) -> QMatrix {
    let (_, pivots) = rref(m);
    m.select_cols(&pivots)
}

/// Restriction of `a` to its eventual image `im(aⁿ)`, in a basis of that
/// image. The result is invertible and may be 0×0.
pub fn invertible_part(a: &LinearEndo) -> LinearEndo {
    let n = a.dim();
    if n == 0 {
        return LinearEndo::empty();
    }
    let basis = column_basis(&a.matrix.pow(n as u32));
    let k = basis.cols();
    if k == 0 {
        return LinearEndo::empty();
    }
    // k rows on which the basis is invertible give a left inverse
    let (_, rows) = rref(&basis.transpose());
    let square = basis.select_rows(&rows);
    let left = inverse(&square).expect("pivot rows of a full-rank basis");
    let image = a.matrix.mul(&basis).select_rows(&rows);
    let m = left.mul(&image);
    assert!(is_invertible(&m), "restriction to the eventual image is invertible");
    LinearEndo { matrix: m }
}

/// Shift equivalence over ℚ: the invertible parts are similar.
pub fn shift_equivalent(a: &LinearEndo, b: &LinearEndo) -> bool {
    let (pa, pb) = (invertible_part(a), invertible_part(b));
    pa.dim() == pb.dim() && pa.canonical_form() == pb.canonical_form()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeVerdict {
    pub degree: usize,
    pub equivalent: bool,
    /// Invariant factors of the invertible parts.
    pub left: Vec<Poly>,
    pub right: Vec<Poly>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndexComparison {
    pub degrees: Vec<DegreeVerdict>,
}

impl IndexComparison {
    pub fn equivalent(&self) -> bool {
        self.degrees.iter().all(|d| d.equivalent)
    }

    /// First degree where the two sides differ.
    pub fn witness(&self) -> Option<usize> {
        self.degrees.iter().find(|d| !d.equivalent).map(|d| d.degree)
    }
}

/// Degree-wise comparison of two graded maps. A degree missing on one side
/// counts as the map on the zero space.
pub fn compare_homological_indices(a: &[LinearEndo], b: &[LinearEndo]) -> IndexComparison {
    let empty = LinearEndo::empty();
    let degrees = (0..a.len().max(b.len()))
        .map(|degree| {
            let x = a.get(degree).unwrap_or(&empty);
            let y = b.get(degree).unwrap_or(&empty);
            let (px, py) = (invertible_part(x), invertible_part(y));
            let (left, right) = (px.canonical_form(), py.canonical_form());
            DegreeVerdict {
                degree,
                equivalent: px.dim() == py.dim() && left == right,
                left,
                right,
            }
        })
        .collect();
    IndexComparison { degrees }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn endo(rows: &[Vec<i64>]) -> LinearEndo {
        LinearEndo::from_i64(rows).unwrap()
    }

    #[test]
    fn nilpotent_part_vanishes() {
        assert_eq!(invertible_part(&endo(&[vec![0, 1], vec![0, 0]])).dim(), 0);
    }

    #[test]
    fn idempotent_keeps_its_image() {
        let p = invertible_part(&endo(&[vec![1, 1], vec![0, 0]]));
        assert_eq!(p, endo(&[vec![1]]));
    }

    #[test]
    fn identity_is_its_own_part() {
        assert_eq!(invertible_part(&LinearEndo::identity(3)), LinearEndo::identity(3));
    }

    #[test]
    fn rationals_parse() {
        let r = |s: &str| parse_rational(s).unwrap();
        assert_eq!(r("-3/6"), BigRational::new((-1).into(), 2.into()));
        assert_eq!(r("0.25"), BigRational::new(1.into(), 4.into()));
        assert_eq!(r("-1.5"), BigRational::new((-3).into(), 2.into()));
        assert_eq!(r(" 7 "), BigRational::from_integer(7.into()));
        assert!(parse_rational("x").is_err());
        assert!(parse_rational("1/0").is_err());
    }

    #[test]
    fn shape_errors() {
        assert_eq!(
            LinearEndo::from_i64(&[vec![1, 2]]),
            Err(ShiftEqError::NotSquare { rows: 1, cols: 2 })
        );
        assert_eq!(
            LinearEndo::from_i64(&[vec![1, 2], vec![3]]),
            Err(ShiftEqError::Ragged { row: 1, expected: 2, found: 1 })
        );
    }
}
