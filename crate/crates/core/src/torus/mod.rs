//! Chain-level mapping tori: the algebraic torus of a self-map and the
//! two-projection torus `Tor(p,q)` of a graph enclosure.

mod graph;

use thiserror::Error;

use crate::chain::{ChainComplex, ChainError, ChainMap, SparseMatrix};
use crate::cubical::CubicalError;
use crate::homalg::{homology, HomologyGroup};

pub use graph::{check_fiber_acyclicity, graph_complex, FiberVerdict, GraphCell, GraphComplex};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TorusError {
    #[error("complex mismatch: {0}")]
    Mismatch(String),
    #[error(transparent)]
    Chain(#[from] ChainError),
    #[error(transparent)]
    Cubical(#[from] CubicalError),
}

/// Which construction produced a [`TorusComplex`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TorusKind {
    /// cone of `id − f♯`
    SelfMap,
    /// cone of `p♯ − q♯`
    TwoMaps,
}

/// Mapping cone of `δ : source → target` with the pieces it was built from.
///
/// Degree `n` is `targetₙ ⊕ sourceₙ₋₁` and `∂(x, y) = (∂x + δy, −∂y)`.
#[derive(Clone, Debug)]
pub struct TorusComplex {
    pub kind: TorusKind,
    pub complex: ChainComplex,
    pub source: ChainComplex,
    pub target: ChainComplex,
    pub delta: ChainMap,
}

impl TorusComplex {
    pub fn homology(&self) -> Vec<HomologyGroup> {
        let mut h = homology(&self.complex);
        while h.last().is_some_and(HomologyGroup::is_trivial) {
            h.pop();
        }
        h
    }

    /// Offset of the `source` block inside degree `n`.
    pub fn source_offset(&self, n: usize) -> usize {
        self.target.dim(n)
    }
}

pub fn mapping_cone(
    source: &ChainComplex,
    target: &ChainComplex,
    delta: &ChainMap,
) -> Result<ChainComplex, TorusError> {
    delta.check(source, target)?;
    let len = target.len().max(source.len() + 1);
    if target.is_empty() && source.is_empty() {
        return Ok(ChainComplex::zero());
    }
    let sdim = |n: usize| if n == 0 { 0 } else { source.dim(n - 1) };
    let dims: Vec<usize> = (0..len).map(|n| target.dim(n) + sdim(n)).collect();
    let mut boundaries = Vec::with_capacity(len.saturating_sub(1));
    for n in 1..len {
        let rows = [target.dim(n - 1), sdim(n - 1)];
        let cols = [target.dim(n), sdim(n)];
        let dt = target.boundary(n);
        let d = delta.matrix(n - 1, source, target);
        let ds = if n >= 2 {
            source.boundary(n - 1).neg()
        } else {
            SparseMatrix::zeros(0, source.dim(0))
        };
        boundaries.push(SparseMatrix::from_blocks(
            &rows,
            &cols,
            &[(0, 0, &dt), (0, 1, &d), (1, 1, &ds)],
        ));
    }
    Ok(ChainComplex::new(dims, boundaries)?)
}

/// Cone of `id − f♯` for a chain self-map of `c`.
pub fn algebraic_mapping_torus(c: &ChainComplex, f: &ChainMap) -> Result<TorusComplex, TorusError> {
    f.check(c, c)
        .map_err(|e| TorusError::Mismatch(format!("not a self-map: {e}")))?;
    let f = pad(f, c, c);
    let delta = ChainMap::identity(c).sub(&f);
    Ok(TorusComplex {
        kind: TorusKind::SelfMap,
        complex: mapping_cone(c, c, &delta)?,
        source: c.clone(),
        target: c.clone(),
        delta,
    })
}

/// Cone of `p♯ − q♯` for two chain maps `CZ → CX`.
pub fn torus_pq(
    cz: &ChainComplex,
    cx: &ChainComplex,
    p: &ChainMap,
    q: &ChainMap,
) -> Result<TorusComplex, TorusError> {
    for (name, m) in [("p", p), ("q", q)] {
        m.check(cz, cx)
            .map_err(|e| TorusError::Mismatch(format!("{name} is not a map CZ → CX: {e}")))?;
    }
    let delta = pad(p, cz, cx).sub(&pad(q, cz, cx));
    Ok(TorusComplex {
        kind: TorusKind::TwoMaps,
        complex: mapping_cone(cz, cx, &delta)?,
        source: cz.clone(),
        target: cx.clone(),
        delta,
    })
}

fn pad(m: &ChainMap, source: &ChainComplex, target: &ChainComplex) -> ChainMap {
    let len = source.len().max(target.len());
    let maps = (0..len).map(|n| m.matrix(n, source, target)).collect();
    ChainMap::new(source, target, maps).expect("padding a valid chain map")
}
