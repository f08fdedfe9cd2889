use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::homalg::IntMatrix;

/// Column-major sparse integer matrix. Each column holds `(row, value)`
/// pairs sorted by row with no explicit zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    cols: Vec<Vec<(usize, BigInt)>>,
}

impl SparseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseMatrix {
            rows,
            cols: vec![Vec::new(); cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        SparseMatrix {
            rows: n,
            cols: (0..n).map(|i| vec![(i, BigInt::from(1))]).collect(),
        }
    }

    /// Builds from `(row, col, value)` entries, summing duplicates.
    pub fn from_triplets(
        rows: usize,
        cols: usize,
        entries: impl IntoIterator<Item = (usize, usize, BigInt)>,
    ) -> Self {
        let mut acc: Vec<BTreeMap<usize, BigInt>> = vec![BTreeMap::new(); cols];
        for (r, c, v) in entries {
            assert!(r < rows && c < cols, "entry ({r}, {c}) out of range");
            *acc[c].entry(r).or_insert_with(BigInt::zero) += v;
        }
        SparseMatrix {
            rows,
            cols: acc
                .into_iter()
                .map(|col| col.into_iter().filter(|(_, v)| !v.is_zero()).collect())
                .collect(),
        }
    }

    /// Builds from per-column sparse chains.
    pub fn from_columns(rows: usize, columns: Vec<Vec<(usize, BigInt)>>) -> Self {
        let n = columns.len();
        Self::from_triplets(
            rows,
            n,
            columns
                .into_iter()
                .enumerate()
                .flat_map(|(c, col)| col.into_iter().map(move |(r, v)| (r, c, v))),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols.len()
    }

    pub fn column(&self, c: usize) -> &[(usize, BigInt)] {
        &self.cols[c]
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(Vec::is_empty)
    }

    pub fn get(&self, r: usize, c: usize) -> BigInt {
        self.cols[c]
            .binary_search_by_key(&r, |(i, _)| *i)
            .map(|k| self.cols[c][k].1.clone())
            .unwrap_or_default()
    }

    pub fn triplets(&self) -> impl Iterator<Item = (usize, usize, &BigInt)> + '_ {
        self.cols
            .iter()
            .enumerate()
            .flat_map(|(c, col)| col.iter().map(move |(r, v)| (*r, c, v)))
    }

    pub fn mul(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.cols(), other.rows, "sparse shapes do not compose");
        let columns = other
            .cols
            .iter()
            .map(|col| {
                let mut acc: BTreeMap<usize, BigInt> = BTreeMap::new();
                for (k, b) in col {
                    for (i, a) in &self.cols[*k] {
                        *acc.entry(*i).or_insert_with(BigInt::zero) += a * b;
                    }
                }
                acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
            })
            .collect();
        SparseMatrix {
            rows: self.rows,
            cols: columns,
        }
    }

    pub fn apply(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.cols());
        let mut out = vec![BigInt::zero(); self.rows];
        for (c, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (r, a) in &self.cols[c] {
                out[*r] += a * x;
            }
        }
        out
    }

    pub fn add(&self, other: &SparseMatrix) -> SparseMatrix {
        self.combine(other, BigInt::from(1))
    }

    pub fn sub(&self, other: &SparseMatrix) -> SparseMatrix {
        self.combine(other, BigInt::from(-1))
    }

    fn combine(&self, other: &SparseMatrix, sign: BigInt) -> SparseMatrix {
        assert_eq!((self.rows, self.cols()), (other.rows, other.cols()));
        let entries = self
            .triplets()
            .map(|(r, c, v)| (r, c, v.clone()))
            .chain(other.triplets().map(|(r, c, v)| (r, c, v * &sign)))
            .collect::<Vec<_>>();
        Self::from_triplets(self.rows, self.cols(), entries)
    }

    pub fn neg(&self) -> SparseMatrix {
        SparseMatrix {
            rows: self.rows,
            cols: self
                .cols
                .iter()
                .map(|col| col.iter().map(|(r, v)| (*r, -v)).collect())
                .collect(),
        }
    }

    pub fn transpose(&self) -> SparseMatrix {
        Self::from_triplets(
            self.cols(),
            self.rows,
            self.triplets().map(|(r, c, v)| (c, r, v.clone())),
        )
    }

    pub fn to_dense(&self) -> IntMatrix {
        let mut m = IntMatrix::zeros(self.rows, self.cols());
        for (r, c, v) in self.triplets() {
            m[(r, c)] = v.clone();
        }
        m
    }

    pub fn from_dense(m: &IntMatrix) -> SparseMatrix {
        Self::from_triplets(
            m.rows(),
            m.cols(),
            (0..m.rows()).flat_map(|i| {
                (0..m.cols())
                    .filter(move |&j| !m[(i, j)].is_zero())
                    .map(move |j| (i, j, m[(i, j)].clone()))
            }),
        )
    }

    /// Places `blocks[i][j]` (or zeros) into a block matrix with the given
    /// row and column block sizes.
    pub fn from_blocks(
        row_sizes: &[usize],
        col_sizes: &[usize],
        blocks: &[(usize, usize, &SparseMatrix)],
    ) -> SparseMatrix {
        let row_off: Vec<usize> = offsets(row_sizes);
        let col_off: Vec<usize> = offsets(col_sizes);
        let rows = row_sizes.iter().sum();
        let cols = col_sizes.iter().sum();
        let mut entries = Vec::new();
        for &(bi, bj, m) in blocks {
            assert_eq!(m.rows(), row_sizes[bi], "block row size");
            assert_eq!(m.cols(), col_sizes[bj], "block column size");
            entries.extend(
                m.triplets()
                    .map(|(r, c, v)| (row_off[bi] + r, col_off[bj] + c, v.clone())),
            );
        }
        Self::from_triplets(rows, cols, entries)
    }

    pub fn select_rows(&self, keep: &[usize]) -> SparseMatrix {
        let mut pos = vec![None; self.rows];
        for (new, &old) in keep.iter().enumerate() {
            pos[old] = Some(new);
        }
        Self::from_triplets(
            keep.len(),
            self.cols(),
            self.triplets()
                .filter_map(|(r, c, v)| pos[r].map(|nr| (nr, c, v.clone()))),
        )
    }

    pub fn select_cols(&self, keep: &[usize]) -> SparseMatrix {
        SparseMatrix {
            rows: self.rows,
            cols: keep.iter().map(|&c| self.cols[c].clone()).collect(),
        }
    }
}

fn offsets(sizes: &[usize]) -> Vec<usize> {
    sizes
        .iter()
        .scan(0, |acc, &s| {
            let o = *acc;
            *acc += s;
            Some(o)
        })
        .collect()
}
