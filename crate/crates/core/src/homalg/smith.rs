//! Smith normal form over a Euclidean domain.
//!
//! Pivoting always picks an entry of minimal Euclidean size in the active
//! block, which keeps intermediate coefficients small for the boundary
//! matrices met in practice (mostly ±1 entries).

use super::matrix::Matrix;
use super::ring::EuclideanRing;

/// `U · A · V = D` with `U`, `V` invertible over the ring and `D` diagonal,
/// `dᵢ | dᵢ₊₁`, every nonzero `dᵢ` in canonical (positive or monic) form.
#[derive(Clone, Debug)]
pub struct Smith<R: EuclideanRing + std::fmt::Display> {
    pub u: Matrix<R>,
    pub u_inv: Matrix<R>,
    pub d: Matrix<R>,
    pub v: Matrix<R>,
    pub v_inv: Matrix<R>,
    pub rank: usize,
}

impl<R: EuclideanRing + std::fmt::Display> Smith<R> {
    /// Nonzero diagonal entries, in order.
    pub fn invariant_factors(&self) -> Vec<R> {
        (0..self.rank).map(|i| self.d[(i, i)].clone()).collect()
    }
}

struct Transforms<R> {
    u: Matrix<R>,
    u_inv: Matrix<R>,
    v: Matrix<R>,
    v_inv: Matrix<R>,
}

struct Reducer<R> {
    a: Matrix<R>,
    t: Option<Transforms<R>>,
}

impl<R: EuclideanRing> Reducer<R> {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        if let Some(t) = &mut self.t {
            t.u.swap_rows(i, j);
            t.u_inv.swap_cols(i, j);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        self.a.swap_cols(i, j);
        if let Some(t) = &mut self.t {
            t.v.swap_cols(i, j);
            t.v_inv.swap_rows(i, j);
        }
    }

    /// row[dst] += c · row[src]
    fn add_row(&mut self, dst: usize, src: usize, c: &R) {
        self.a.add_row_multiple(dst, src, c);
        if let Some(t) = &mut self.t {
            t.u.add_row_multiple(dst, src, c);
            t.u_inv.add_col_multiple(src, dst, &c.neg());
        }
    }

    /// col[dst] += c · col[src]
    fn add_col(&mut self, dst: usize, src: usize, c: &R) {
        self.a.add_col_multiple(dst, src, c);
        if let Some(t) = &mut self.t {
            t.v.add_col_multiple(dst, src, c);
            t.v_inv.add_row_multiple(src, dst, &c.neg());
        }
    }

    fn scale_row(&mut self, i: usize, unit: &R, unit_inv: &R) {
        self.a.scale_row(i, unit);
        if let Some(t) = &mut self.t {
            t.u.scale_row(i, unit);
            t.u_inv.scale_col(i, unit_inv);
        }
    }

    fn min_in_block(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<((usize, usize), R::Size)> = None;
        for i in t..self.a.rows() {
            for j in t..self.a.cols() {
                let v = &self.a[(i, j)];
                if v.is_zero() {
                    continue;
                }
                if v.is_unit() {
                    return Some((i, j));
                }
                let s = v.size();
                if best.as_ref().is_none_or(|(_, b)| s < *b) {
                    best = Some(((i, j), s));
                }
            }
        }
        best.map(|(p, _)| p)
    }

    /// Smallest nonzero entry in row `t` or column `t` from the diagonal on.
    fn min_in_cross(&self, t: usize) -> (usize, usize) {
        let mut best = ((t, t), None::<R::Size>);
        let mut consider = |i: usize, j: usize, v: &R| {
            if !v.is_zero() {
                let s = v.size();
                if best.1.as_ref().is_none_or(|b| s < *b) {
                    best = ((i, j), Some(s));
                }
            }
        };
        for i in t..self.a.rows() {
            consider(i, t, &self.a[(i, t)]);
        }
        for j in t + 1..self.a.cols() {
            consider(t, j, &self.a[(t, j)]);
        }
        best.0
    }

    fn reduce(&mut self) -> usize {
        let (m, n) = (self.a.rows(), self.a.cols());
        let mut t = 0;
        while t < m.min(n) {
            let Some((pi, pj)) = self.min_in_block(t) else {
                break;
            };
            self.swap_rows(t, pi);
            self.swap_cols(t, pj);
            loop {
                let pivot = self.a[(t, t)].clone();
                let mut clean = true;
                for i in t + 1..m {
                    if self.a[(i, t)].is_zero() {
                        continue;
                    }
                    let (q, r) = self.a[(i, t)].div_rem(&pivot);
                    self.add_row(i, t, &q.neg());
                    if !r.is_zero() {
                        clean = false;
                    }
                }
                for j in t + 1..n {
                    if self.a[(t, j)].is_zero() {
                        continue;
                    }
                    let (q, r) = self.a[(t, j)].div_rem(&pivot);
                    self.add_col(j, t, &q.neg());
                    if !r.is_zero() {
                        clean = false;
                    }
                }
                if !clean {
                    let (i, j) = self.min_in_cross(t);
                    self.swap_rows(t, i);
                    self.swap_cols(t, j);
                    continue;
                }
                if pivot.is_unit() {
                    break;
                }
                // divisibility of the remaining block by the pivot
                let offender = (t + 1..m).find(|&i| {
                    (t + 1..n).any(|j| {
                        let v = &self.a[(i, j)];
                        !v.is_zero() && !pivot.divides(v)
                    })
                });
                match offender {
                    Some(i) => self.add_row(t, i, &R::one()),
                    None => break,
                }
            }
            let (unit, unit_inv) = self.a[(t, t)].normalizer();
            if unit != R::one() {
                self.scale_row(t, &unit, &unit_inv);
            }
            t += 1;
        }
        t
    }
}

/// Full Smith decomposition with both transforms and their inverses.
pub fn smith_normal_form<R: EuclideanRing + std::fmt::Display>(a: &Matrix<R>) -> Smith<R> {
    let (m, n) = (a.rows(), a.cols());
    let mut red = Reducer {
        a: a.clone(),
        t: Some(Transforms {
            u: Matrix::identity(m),
            u_inv: Matrix::identity(m),
            v: Matrix::identity(n),
            v_inv: Matrix::identity(n),
        }),
    };
    let rank = red.reduce();
    let t = red.t.take().expect("transforms tracked");
    Smith {
        u: t.u,
        u_inv: t.u_inv,
        d: red.a,
        v: t.v,
        v_inv: t.v_inv,
        rank,
    }
}

/// Nonzero invariant factors only; skips transform bookkeeping.
pub fn invariant_factors<R: EuclideanRing>(a: &Matrix<R>) -> Vec<R> {
    let mut red = Reducer {
        a: a.clone(),
        t: None,
    };
    let rank = red.reduce();
    (0..rank).map(|i| red.a[(i, i)].clone()).collect()
}

/// Solves `A x = b` over the ring, or returns `None` when no solution exists.
pub fn solve<R: EuclideanRing + std::fmt::Display>(a: &Matrix<R>, b: &[R]) -> Option<Vec<R>> {
    smith_normal_form(a).solve(b)
}

impl<R: EuclideanRing + std::fmt::Display> Smith<R> {
    /// Solves `A x = b` for the decomposed matrix `A`.
    pub fn solve(&self, b: &[R]) -> Option<Vec<R>> {
        assert_eq!(self.u.cols(), b.len());
        let ub = self.u.mul_vec(b);
        let mut y = vec![R::zero(); self.v.rows()];
        for (i, ubi) in ub.iter().enumerate() {
            if i < self.rank {
                let (q, r) = ubi.div_rem(&self.d[(i, i)]);
                if !r.is_zero() {
                    return None;
                }
                y[i] = q;
            } else if !ubi.is_zero() {
                return None;
            }
        }
        Some(self.v.mul_vec(&y))
    }
}
