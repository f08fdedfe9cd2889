use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Debug;

use num_bigint::BigInt;
use thiserror::Error;

use super::sparse::SparseMatrix;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ChainError {
    #[error("boundary matrices do not compose to zero in degree {degree}")]
    BoundarySquare { degree: usize },
    #[error("map does not commute with the boundary in degree {degree}")]
    NotChainMap { degree: usize },
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("boundary of cell {cell} refers to a cell outside the complex")]
    MissingFace { cell: String },
    #[error("image of cell {cell} contains a cell outside the target complex")]
    MissingImage { cell: String },
}

/// Free chain complex over ℤ: `dims[n]` generators in degree `n` and
/// boundary matrices `∂ₙ : Cₙ → Cₙ₋₁` stored column-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainComplex {
    dims: Vec<usize>,
    // boundaries[n] : C_n -> C_{n-1}; boundaries[0] is the empty 0 × dims[0] map
    boundaries: Vec<SparseMatrix>,
}

impl ChainComplex {
    /// `boundaries[k]` is `∂ₖ₊₁ : Cₖ₊₁ → Cₖ`.
    pub fn new(dims: Vec<usize>, boundaries: Vec<SparseMatrix>) -> Result<Self, ChainError> {
        if boundaries.len() + 1 != dims.len().max(1) {
            return Err(ChainError::Shape(format!(
                "{} degrees need {} boundary maps, got {}",
                dims.len(),
                dims.len().saturating_sub(1),
                boundaries.len()
            )));
        }
        let mut all = Vec::with_capacity(dims.len());
        if let Some(&d0) = dims.first() {
            all.push(SparseMatrix::zeros(0, d0));
        }
        for (k, b) in boundaries.into_iter().enumerate() {
            let n = k + 1;
            if b.rows() != dims[n - 1] || b.cols() != dims[n] {
                return Err(ChainError::Shape(format!(
                    "∂{n} is {}x{}, expected {}x{}",
                    b.rows(),
                    b.cols(),
                    dims[n - 1],
                    dims[n]
                )));
            }
            all.push(b);
        }
        let c = ChainComplex {
            dims,
            boundaries: all,
        };
        c.check()?;
        Ok(c)
    }

    pub fn zero() -> Self {
        ChainComplex {
            dims: Vec::new(),
            boundaries: Vec::new(),
        }
    }

    /// Verifies `∂ₙ₋₁ ∘ ∂ₙ = 0` in every degree by exact sparse multiplication.
    pub fn check(&self) -> Result<(), ChainError> {
        for n in 2..self.dims.len() {
            if !self.boundaries[n - 1].mul(&self.boundaries[n]).is_zero() {
                return Err(ChainError::BoundarySquare { degree: n });
            }
        }
        Ok(())
    }

    /// Number of stored degrees (top degree + 1).
    pub fn len(&self) -> usize {
        self.dims.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dims.iter().all(|&d| d == 0)
    }

    pub fn dim(&self, n: usize) -> usize {
        self.dims.get(n).copied().unwrap_or(0)
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    /// `∂ₙ : Cₙ → Cₙ₋₁`, an empty matrix of the right shape where nothing is stored.
    pub fn boundary(&self, n: usize) -> SparseMatrix {
        if n >= 1 && n < self.dims.len() {
            self.boundaries[n].clone()
        } else {
            SparseMatrix::zeros(if n == 0 { 0 } else { self.dim(n - 1) }, self.dim(n))
        }
    }

    pub(crate) fn boundary_ref(&self, n: usize) -> Option<&SparseMatrix> {
        (n >= 1 && n < self.dims.len()).then(|| &self.boundaries[n])
    }

    /// Same complex padded with zero groups up to `len` degrees.
    pub fn padded(&self, len: usize) -> ChainComplex {
        let mut dims = self.dims.clone();
        while dims.len() < len {
            dims.push(0);
        }
        let boundaries = (1..dims.len())
            .map(|n| {
                if n < self.dims.len() {
                    self.boundaries[n].clone()
                } else {
                    SparseMatrix::zeros(dims[n - 1], dims[n])
                }
            })
            .collect();
        ChainComplex::new(dims, boundaries).expect("padding keeps the complex valid")
    }
}

/// Degree-preserving map of chain complexes, one sparse matrix per degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainMap {
    maps: Vec<SparseMatrix>,
}

impl ChainMap {
    /// Validates shapes and `∂ ∘ φₙ = φₙ₋₁ ∘ ∂` in every degree.
    pub fn new(
        source: &ChainComplex,
        target: &ChainComplex,
        maps: Vec<SparseMatrix>,
    ) -> Result<Self, ChainError> {
        let len = source.len().max(target.len());
        let mut maps = maps;
        if maps.len() > len {
            return Err(ChainError::Shape(format!(
                "{} map degrees for complexes of length {len}",
                maps.len()
            )));
        }
        while maps.len() < len {
            let n = maps.len();
            maps.push(SparseMatrix::zeros(target.dim(n), source.dim(n)));
        }
        let m = ChainMap { maps };
        m.check(source, target)?;
        Ok(m)
    }

    pub fn identity(c: &ChainComplex) -> Self {
        ChainMap {
            maps: (0..c.len()).map(|n| SparseMatrix::identity(c.dim(n))).collect(),
        }
    }

    pub fn zero(source: &ChainComplex, target: &ChainComplex) -> Self {
        let len = source.len().max(target.len());
        ChainMap {
            maps: (0..len)
                .map(|n| SparseMatrix::zeros(target.dim(n), source.dim(n)))
                .collect(),
        }
    }

    pub fn check(&self, source: &ChainComplex, target: &ChainComplex) -> Result<(), ChainError> {
        for (n, m) in self.maps.iter().enumerate() {
            if m.rows() != target.dim(n) || m.cols() != source.dim(n) {
                return Err(ChainError::Shape(format!(
                    "map in degree {n} is {}x{}, expected {}x{}",
                    m.rows(),
                    m.cols(),
                    target.dim(n),
                    source.dim(n)
                )));
            }
        }
        for n in 1..self.maps.len() {
            let lhs = target.boundary(n).mul(&self.maps[n]);
            let rhs = self.maps[n - 1].mul(&source.boundary(n));
            if lhs != rhs {
                return Err(ChainError::NotChainMap { degree: n });
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.maps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.maps.is_empty()
    }

    /// Matrix in degree `n`, `None` beyond the stored range.
    pub fn degree(&self, n: usize) -> Option<&SparseMatrix> {
        self.maps.get(n)
    }

    pub fn matrix(&self, n: usize, source: &ChainComplex, target: &ChainComplex) -> SparseMatrix {
        self.maps
            .get(n)
            .cloned()
            .unwrap_or_else(|| SparseMatrix::zeros(target.dim(n), source.dim(n)))
    }

    pub fn matrices(&self) -> &[SparseMatrix] {
        &self.maps
    }

    fn zip_with(&self, other: &ChainMap, f: impl Fn(&SparseMatrix, &SparseMatrix) -> SparseMatrix) -> ChainMap {
        assert_eq!(self.maps.len(), other.maps.len(), "chain maps of different length");
        ChainMap {
            maps: self.maps.iter().zip(&other.maps).map(|(a, b)| f(a, b)).collect(),
        }
    }

    pub fn add(&self, other: &ChainMap) -> ChainMap {
        self.zip_with(other, SparseMatrix::add)
    }

    pub fn sub(&self, other: &ChainMap) -> ChainMap {
        self.zip_with(other, SparseMatrix::sub)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &ChainMap) -> ChainMap {
        self.zip_with(other, SparseMatrix::mul)
    }
}

/// A chain complex whose generators carry labels of type `C`, ordered by
/// degree and then by `Ord` on the labels.
#[derive(Clone, Debug)]
pub struct CellComplex<C> {
    basis: Vec<Vec<C>>,
    index: BTreeMap<C, (usize, usize)>,
    complex: ChainComplex,
}

impl<C: Ord + Clone + Debug> CellComplex<C> {
    /// Builds the complex on `cells` with the given dimension and boundary
    /// functions. Every face named by `boundary` must be among `cells`.
    pub fn build(
        cells: impl IntoIterator<Item = C>,
        dim: impl Fn(&C) -> usize,
        boundary: impl Fn(&C) -> Vec<(C, i64)>,
    ) -> Result<Self, ChainError> {
        let set: BTreeSet<C> = cells.into_iter().collect();
        let mut basis: Vec<Vec<C>> = Vec::new();
        for c in set {
            let d = dim(&c);
            if basis.len() <= d {
                basis.resize_with(d + 1, Vec::new);
            }
            basis[d].push(c);
        }
        let mut index = BTreeMap::new();
        for (n, cells) in basis.iter().enumerate() {
            for (i, c) in cells.iter().enumerate() {
                index.insert(c.clone(), (n, i));
            }
        }
        let dims: Vec<usize> = basis.iter().map(Vec::len).collect();
        let mut boundaries = Vec::new();
        for n in 1..basis.len() {
            let mut entries = Vec::new();
            for (j, c) in basis[n].iter().enumerate() {
                for (face, s) in boundary(c) {
                    match index.get(&face) {
                        Some(&(m, i)) if m + 1 == n => entries.push((i, j, BigInt::from(s))),
                        _ => {
                            return Err(ChainError::MissingFace {
                                cell: format!("{c:?}"),
                            })
                        }
                    }
                }
            }
            boundaries.push(SparseMatrix::from_triplets(dims[n - 1], dims[n], entries));
        }
        // degree-0 cells must not have faces
        for c in basis.first().into_iter().flatten() {
            if !boundary(c).is_empty() {
                return Err(ChainError::MissingFace {
                    cell: format!("{c:?}"),
                });
            }
        }
        let complex = ChainComplex::new(dims, boundaries)?;
        Ok(CellComplex {
            basis,
            index,
            complex,
        })
    }

    pub fn complex(&self) -> &ChainComplex {
        &self.complex
    }

    pub fn basis(&self, n: usize) -> &[C] {
        self.basis.get(n).map_or(&[], Vec::as_slice)
    }

    pub fn position(&self, c: &C) -> Option<(usize, usize)> {
        self.index.get(c).copied()
    }

    pub fn contains(&self, c: &C) -> bool {
        self.index.contains_key(c)
    }

    pub fn cells(&self) -> impl Iterator<Item = &C> + '_ {
        self.basis.iter().flatten()
    }

    pub fn len(&self) -> usize {
        self.index.len()
    }

    pub fn is_empty(&self) -> bool {
        self.index.is_empty()
    }

    /// Chain map defined on generators by `f`, validated against both complexes.
    pub fn chain_map_to<D: Ord + Clone + Debug>(
        &self,
        target: &CellComplex<D>,
        f: impl Fn(&C) -> Vec<(D, BigInt)>,
    ) -> Result<ChainMap, ChainError> {
        let len = self.complex.len().max(target.complex.len());
        let mut maps = Vec::with_capacity(len);
        for n in 0..len {
            let mut entries = Vec::new();
            for (j, c) in self.basis(n).iter().enumerate() {
                for (img, v) in f(c) {
                    match target.position(&img) {
                        Some((m, i)) if m == n => entries.push((i, j, v)),
                        _ => {
                            return Err(ChainError::MissingImage {
                                cell: format!("{c:?}"),
                            })
                        }
                    }
                }
            }
            maps.push(SparseMatrix::from_triplets(
                target.complex.dim(n),
                self.complex.dim(n),
                entries,
            ));
        }
        ChainMap::new(&self.complex, &target.complex, maps)
    }

    /// Coordinates of a labelled chain in degree `n`.
    pub fn vector(&self, n: usize, chain: &[(C, BigInt)]) -> Option<Vec<BigInt>> {
        let mut v = vec![BigInt::from(0); self.complex.dim(n)];
        for (c, x) in chain {
            let (m, i) = self.position(c)?;
            if m != n {
                return None;
            }
            v[i] += x;
        }
        Some(v)
    }
}
