use std::fmt;

use num_bigint::BigInt;

use super::{Cube, CubicalError, CubicalSet};
use crate::chain::{CellComplex, ChainMap};

/// Cell of the quotient `N/L`: a cube of `N ∖ L` or the collapsed base point.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum QCell {
    Base,
    Cube(Cube),
}

impl QCell {
    pub fn dim(&self) -> usize {
        match self {
            QCell::Base => 0,
            QCell::Cube(c) => c.dim(),
        }
    }

    pub fn cube(&self) -> Option<&Cube> {
        match self {
            QCell::Base => None,
            QCell::Cube(c) => Some(c),
        }
    }
}

impl fmt::Display for QCell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QCell::Base => write!(f, "*"),
            QCell::Cube(c) => write!(f, "{c}"),
        }
    }
}

impl fmt::Debug for QCell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Boundary of `σ ∉ L` in the quotient `N/L`: vertices of `L` become the
/// base point and higher-dimensional faces in `L` vanish.
pub(crate) fn quotient_boundary(c: &QCell, l: &CubicalSet) -> Vec<(QCell, i64)> {
    let QCell::Cube(c) = c else {
        return Vec::new();
    };
    let mut out: Vec<(QCell, i64)> = Vec::new();
    for (f, s) in c.boundary() {
        if !l.contains(&f) {
            out.push((QCell::Cube(f), s));
        } else if f.dim() == 0 {
            match out.iter_mut().find(|(q, _)| *q == QCell::Base) {
                Some(e) => e.1 += s,
                None => out.push((QCell::Base, s)),
            }
        }
    }
    out.retain(|(_, s)| *s != 0);
    out
}

/// Cellular chain complex of a cubical set.
pub fn chain_complex(set: &CubicalSet) -> Result<CellComplex<Cube>, CubicalError> {
    Ok(CellComplex::build(
        set.cubes().iter().cloned(),
        Cube::dim,
        Cube::boundary,
    )?)
}

/// Chain models of the pair `(N, L)`.
#[derive(Clone, Debug)]
pub struct RelativeComplex {
    pub n: CubicalSet,
    pub l: CubicalSet,
    /// `C(N, L)`: cubes of `N ∖ L`, computing the reduced homology of `N/L`
    pub reduced: CellComplex<Cube>,
    /// cellular complex of `N/L` with an explicit base point
    pub unreduced: CellComplex<QCell>,
}

impl RelativeComplex {
    pub fn cells(&self) -> impl Iterator<Item = &Cube> + '_ {
        self.n.cubes().iter().filter(|c| !self.l.contains(c))
    }
}

pub fn relative_chain_complex(
    n: &CubicalSet,
    l: &CubicalSet,
) -> Result<RelativeComplex, CubicalError> {
    if !n.same_grid(l) {
        return Err(CubicalError::GridMismatch);
    }
    if !l.is_subset(n) {
        return Err(CubicalError::NotSubset);
    }
    let rel: Vec<Cube> = n.cubes().iter().filter(|c| !l.contains(c)).cloned().collect();
    let reduced = CellComplex::build(rel.iter().cloned(), Cube::dim, |c| {
        c.boundary()
            .into_iter()
            .filter(|(f, _)| !l.contains(f))
            .collect()
    })?;
    let unreduced = CellComplex::build(
        std::iter::once(QCell::Base).chain(rel.into_iter().map(QCell::Cube)),
        QCell::dim,
        |c| quotient_boundary(c, l),
    )?;
    Ok(RelativeComplex {
        n: n.clone(),
        l: l.clone(),
        reduced,
        unreduced,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Factor {
    First,
    Second,
}

/// Coordinate projection of a product set `Z ⊂ X × Y` onto one factor.
/// A cube maps to its projection when that keeps its dimension, else to 0.
pub fn projection_chain_map(
    z: &CubicalSet,
    which: Factor,
    target: &CubicalSet,
) -> Result<ChainMap, CubicalError> {
    let d = target.grid().dim();
    if z.grid().dim() != 2 * d {
        return Err(CubicalError::GridMismatch);
    }
    let range = match which {
        Factor::First => 0..d,
        Factor::Second => d..2 * d,
    };
    if z.grid().counts()[range.clone()] != *target.grid().counts()
        || z.grid().bounds().coords()[range] != *target.grid().bounds().coords()
    {
        return Err(CubicalError::GridMismatch);
    }
    let src = chain_complex(z)?;
    let tgt = chain_complex(target)?;
    Ok(src.chain_map_to(&tgt, |c| {
        let (a, b) = c.split_at(d);
        let (keep, other) = match which {
            Factor::First => (a, b),
            Factor::Second => (b, a),
        };
        if other.dim() == 0 {
            vec![(keep, BigInt::from(1))]
        } else {
            Vec::new()
        }
    })?)
}

/// Terms `(sign, a, b)` of the cubical diagonal `Δσ = Σ ± a ⊗ b`, built
/// from `Δ[v₀,v₁] = v₀ ⊗ [v₀,v₁] + [v₀,v₁] ⊗ v₁` with the Koszul sign.
pub fn diagonal_terms(c: &Cube) -> Vec<(i64, Cube, Cube)> {
    let nondeg: Vec<usize> = (0..c.0.len()).filter(|&i| c.0[i] % 2 != 0).collect();
    let k = nondeg.len();
    let mut out = Vec::with_capacity(1 << k);
    for mask in 0u64..(1u64 << k) {
        let mut a = c.0.clone();
        let mut b = c.0.clone();
        let mut inversions = 0usize;
        let mut b_edges_so_far = 0usize;
        for (t, &i) in nondeg.iter().enumerate() {
            if mask >> t & 1 == 1 {
                // edge goes to the first factor, second gets the upper end
                b[i] = c.0[i] + 1;
                inversions += b_edges_so_far;
            } else {
                a[i] = c.0[i] - 1;
                b_edges_so_far += 1;
            }
        }
        let sign = if inversions.is_multiple_of(2) { 1 } else { -1 };
        out.push((sign, Cube(a), Cube(b)));
    }
    out
}

/// Diagonal approximation `C(X) → C(Z)` for a product set `Z ⊂ X × X`
/// containing the needed cubes.
pub fn diagonal_chain_map(x: &CubicalSet, z: &CubicalSet) -> Result<ChainMap, CubicalError> {
    if z.grid().dim() != 2 * x.grid().dim() {
        return Err(CubicalError::GridMismatch);
    }
    let src = chain_complex(x)?;
    let tgt = chain_complex(z)?;
    Ok(src.chain_map_to(&tgt, |c| {
        diagonal_terms(c)
            .into_iter()
            .map(|(s, a, b)| (a.concat(&b), BigInt::from(s)))
            .collect()
    })?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cubical::{Cell, Grid};
    use crate::homalg::{homology, HomologyGroup};
    use crate::interval::rational;
    use std::sync::Arc;

    #[test]
    fn interval_pair_is_a_circle() {
        let g = Arc::new(Grid::interval(rational(-2, 1), rational(2, 1), 8).unwrap());
        let n = CubicalSet::from_top_cells(g.clone(), (0..8).map(|i| Cell(vec![i]))).unwrap();
        let l = CubicalSet::from_top_cells(g, [0, 1, 6, 7].map(|i| Cell(vec![i]))).unwrap();
        let r = relative_chain_complex(&n, &l).unwrap();
        assert_eq!(
            homology(r.reduced.complex()),
            vec![HomologyGroup::trivial(), HomologyGroup::free(1)]
        );
        assert_eq!(
            homology(r.unreduced.complex()),
            vec![HomologyGroup::free(1), HomologyGroup::free(1)]
        );
    }

    #[test]
    fn diagonal_of_square_has_four_terms() {
        let t = diagonal_terms(&Cube(vec![1, 1]));
        assert_eq!(t.len(), 4);
        // the mixed term pairing the first edge on the right with the second on the left
        assert!(t.contains(&(-1, Cube(vec![0, 1]), Cube(vec![1, 2]))));
    }
}
