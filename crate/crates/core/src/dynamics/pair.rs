use std::collections::BTreeSet;
use std::sync::Arc;

use super::{invariant_part, neighbors, DynamicsError, MultivaluedMap};
use crate::cubical::{relative_chain_complex, Cell, CubicalError, CubicalSet, Grid, RelativeComplex};

/// A pair of top-cell sets `L ⊂ N`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct IndexPair {
    pub n: BTreeSet<Cell>,
    pub l: BTreeSet<Cell>,
}

impl IndexPair {
    pub fn new(n: impl IntoIterator<Item = Cell>, l: impl IntoIterator<Item = Cell>) -> Self {
        IndexPair {
            n: n.into_iter().collect(),
            l: l.into_iter().collect(),
        }
    }

    /// Cells of `N ∖ L`.
    pub fn interior(&self) -> BTreeSet<Cell> {
        self.n.difference(&self.l).cloned().collect()
    }

    pub fn is_trivial(&self) -> bool {
        self.n == self.l
    }

    pub fn cubical_sets(&self, grid: &Arc<Grid>) -> Result<(CubicalSet, CubicalSet), CubicalError> {
        Ok((
            CubicalSet::from_top_cells(grid.clone(), self.n.iter().cloned())?,
            CubicalSet::from_top_cells(grid.clone(), self.l.iter().cloned())?,
        ))
    }

    pub fn relative_complex(&self, grid: &Arc<Grid>) -> Result<RelativeComplex, CubicalError> {
        let (n, l) = self.cubical_sets(grid)?;
        relative_chain_complex(&n, &l)
    }
}

/// Outcome of [`verify_index_pair`] with the violating cells per condition.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct PairVerdict {
    /// cells of `L` outside `N`
    pub not_subset: Vec<Cell>,
    /// cells of `L` whose image meets `N ∖ L`
    pub exit_not_forward_invariant: Vec<Cell>,
    /// cells of `N ∖ L` whose image leaves `N`
    pub leaves_n: Vec<Cell>,
    /// invariant cells of `N ∖ L` touching `L` or the complement of `N`
    pub not_isolated: Vec<Cell>,
}

impl PairVerdict {
    pub fn passed(&self) -> bool {
        self.not_subset.is_empty()
            && self.exit_not_forward_invariant.is_empty()
            && self.leaves_n.is_empty()
            && self.not_isolated.is_empty()
    }
}

fn touching(cells: &BTreeSet<Cell>, bad: impl Fn(&Cell) -> bool) -> Vec<Cell> {
    cells
        .iter()
        .filter(|c| neighbors(c).iter().any(&bad))
        .cloned()
        .collect()
}

pub fn verify_index_pair(f: &MultivaluedMap, pair: &IndexPair) -> PairVerdict {
    let interior = pair.interior();
    let leaves = |c: &Cell| f.escapes(c) || f.image_or_empty(c).any(|t| !pair.n.contains(t));
    let inv = invariant_part(f, &interior);
    PairVerdict {
        not_subset: pair.l.difference(&pair.n).cloned().collect(),
        exit_not_forward_invariant: pair
            .l
            .iter()
            .filter(|c| f.image_or_empty(c).any(|t| interior.contains(t)))
            .cloned()
            .collect(),
        leaves_n: interior.iter().filter(|c| leaves(c)).cloned().collect(),
        not_isolated: touching(&inv, |c| pair.l.contains(c) || !pair.n.contains(c)),
    }
}

/// Grows an index pair around the invariant part of `seed`.
///
/// `N` is the forward closure of the invariant part inside the seed, `L`
/// starts with the cells of `N` mapping outside `N` and is closed under
/// `F(L) ∩ N ⊂ L`.
pub fn build_index_pair(
    f: &MultivaluedMap,
    seed: &BTreeSet<Cell>,
) -> Result<IndexPair, DynamicsError> {
    let s = invariant_part(f, seed);
    if s.is_empty() {
        return Ok(IndexPair::default());
    }
    let at_edge = touching(&s, |c| !seed.contains(c));
    if !at_edge.is_empty() {
        return Err(DynamicsError::IsolationFailure {
            region: "seed".into(),
            cells: at_edge,
        });
    }
    let mut n = s.clone();
    let mut frontier: Vec<Cell> = s.into_iter().collect();
    while let Some(c) = frontier.pop() {
        for t in f.image_or_empty(&c) {
            if seed.contains(t) && n.insert(t.clone()) {
                frontier.push(t.clone());
            }
        }
    }
    let mut l: BTreeSet<Cell> = n
        .iter()
        .filter(|c| f.escapes(c) || f.image_or_empty(c).any(|t| !n.contains(t)))
        .cloned()
        .collect();
    let mut frontier: Vec<Cell> = l.iter().rev().cloned().collect();
    while let Some(c) = frontier.pop() {
        for t in f.image_or_empty(&c) {
            if n.contains(t) && l.insert(t.clone()) {
                frontier.push(t.clone());
            }
        }
    }
    let pair = IndexPair { n, l };
    let inv = invariant_part(f, &pair.interior());
    let bad = touching(&inv, |c| pair.l.contains(c) || !pair.n.contains(c));
    if !bad.is_empty() {
        return Err(DynamicsError::IsolationFailure {
            region: "exit set".into(),
            cells: bad,
        });
    }
    Ok(pair)
}
