//! Exact linear algebra over ℚ.

use num_rational::BigRational;

use super::matrix::{Matrix, QMatrix};
use super::poly::Poly;
use super::ring::Ring;
use super::smith::invariant_factors;

/// Reduced row echelon form and pivot columns.
pub fn rref(a: &QMatrix) -> (QMatrix, Vec<usize>) {
    let mut m = a.clone();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..m.cols() {
        if r == m.rows() {
            break;
        }
        let Some(p) = (r..m.rows()).find(|&i| !m[(i, c)].is_zero()) else {
            continue;
        };
        m.swap_rows(r, p);
        let inv = m[(r, c)].recip();
        m.scale_row(r, &inv);
        for i in 0..m.rows() {
            if i != r && !m[(i, c)].is_zero() {
                let f = -m[(i, c)].clone();
                m.add_row_multiple(i, r, &f);
            }
        }
        pivots.push(c);
        r += 1;
    }
    (m, pivots)
}

pub fn rank(a: &QMatrix) -> usize {
    rref(a).1.len()
}

pub fn is_invertible(a: &QMatrix) -> bool {
    a.is_square() && rank(a) == a.rows()
}

pub fn inverse(a: &QMatrix) -> Option<QMatrix> {
    if !a.is_square() {
        return None;
    }
    let n = a.rows();
    let aug = Matrix::from_fn(n, 2 * n, |i, j| {
        if j < n {
            a[(i, j)].clone()
        } else if j - n == i {
            <BigRational as Ring>::one()
        } else {
            <BigRational as Ring>::zero()
        }
    });
    let (r, piv) = rref(&aug);
    if piv.len() < n || piv[n - 1] >= n {
        return None;
    }
    Some(r.block(0, n, n, n))
}

/// Invariant factors of `A` (monic, each dividing the next, units dropped):
/// the rational canonical form up to the choice of companion blocks.
pub fn rational_canonical_form(a: &QMatrix) -> Vec<Poly> {
    assert!(a.is_square(), "rational canonical form needs a square matrix");
    let n = a.rows();
    let char_matrix: Matrix<Poly> = Matrix::from_fn(n, n, |i, j| {
        let entry = Poly::constant(-a[(i, j)].clone());
        if i == j {
            entry.add(&Poly::x())
        } else {
            entry
        }
    });
    invariant_factors(&char_matrix)
        .into_iter()
        .map(|p| p.monic())
        .filter(|p| p.degree() != Some(0))
        .collect()
}

/// Companion-block matrix with the given invariant factors.
pub fn companion_form(factors: &[Poly]) -> QMatrix {
    let n: usize = factors.iter().filter_map(Poly::degree).sum();
    let mut m = QMatrix::zeros(n, n);
    let mut off = 0;
    for p in factors {
        let d = p.degree().unwrap_or(0);
        for i in 1..d {
            m[(off + i, off + i - 1)] = <BigRational as Ring>::one();
        }
        for i in 0..d {
            m[(off + i, off + d - 1)] = -p.coeffs()[i].clone();
        }
        off += d;
    }
    m
}
