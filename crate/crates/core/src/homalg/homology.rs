use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::IntMatrix;
use super::smith::{invariant_factors, smith_normal_form};
use crate::chain::{ChainComplex, ChainError, ChainMap};

/// Finitely generated abelian group `ℤ^betti ⊕ ℤ/t₁ ⊕ … ⊕ ℤ/tₖ` with
/// `tᵢ ≥ 2` and `tᵢ | tᵢ₊₁`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct HomologyGroup {
    pub betti: usize,
    pub torsion: Vec<BigInt>,
}

impl HomologyGroup {
    pub fn free(betti: usize) -> Self {
        HomologyGroup {
            betti,
            torsion: Vec::new(),
        }
    }

    pub fn trivial() -> Self {
        Self::free(0)
    }

    pub fn new(betti: usize, torsion: &[i64]) -> Self {
        HomologyGroup {
            betti,
            torsion: torsion.iter().map(|&t| BigInt::from(t)).collect(),
        }
    }

    /// Builds the group from the diagonal of a Smith form: zero entries are
    /// free summands, entries `>1` torsion, units vanish.
    pub fn from_diagonal(free_extra: usize, diagonal: &[BigInt]) -> Self {
        let mut betti = free_extra;
        let mut torsion = Vec::new();
        for d in diagonal {
            let d = d.abs();
            if d.is_zero() {
                betti += 1;
            } else if !d.is_one() {
                torsion.push(d);
            }
        }
        torsion.sort();
        HomologyGroup { betti, torsion }
    }

    pub fn is_trivial(&self) -> bool {
        self.betti == 0 && self.torsion.is_empty()
    }

    /// Invariants in the primary-decomposition style used by GAP's
    /// `AbelianInvariants`: one `0` per free summand followed by the
    /// prime-power orders of the torsion, ascending.
    pub fn primary_invariants(&self) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); self.betti];
        let mut powers = Vec::new();
        for t in &self.torsion {
            let mut rest = t.clone();
            let mut p = BigInt::from(2);
            while &p * &p <= rest {
                if rest.is_multiple_of(&p) {
                    let mut q = BigInt::one();
                    while rest.is_multiple_of(&p) {
                        rest /= &p;
                        q *= &p;
                    }
                    powers.push(q);
                }
                p += 1;
            }
            if rest > BigInt::one() {
                powers.push(rest);
            }
        }
        powers.sort();
        out.extend(powers);
        out
    }

    /// Inverse of [`primary_invariants`](Self::primary_invariants): accepts any
    /// list of cyclic orders (0 = ℤ) and returns the invariant-factor form.
    pub fn from_cyclic_orders(orders: &[BigInt]) -> Self {
        let n = orders.len();
        let mut m = IntMatrix::zeros(n, n);
        for (i, o) in orders.iter().enumerate() {
            m[(i, i)] = o.clone();
        }
        let f = invariant_factors(&m);
        HomologyGroup::from_diagonal(n - f.len(), &f)
    }
}

impl fmt::Display for HomologyGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        match self.betti {
            0 => {}
            1 => parts.push("Z".into()),
            b => parts.push(format!("Z^{b}")),
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

fn dense_boundary(c: &ChainComplex, n: usize) -> IntMatrix {
    c.boundary(n).to_dense()
}

/// Integral homology `Hₙ = ker ∂ₙ / im ∂ₙ₊₁` for every stored degree.
pub fn homology(c: &ChainComplex) -> Vec<HomologyGroup> {
    let ranks_and_factors: Vec<Vec<BigInt>> = (0..=c.len())
        .map(|n| {
            if c.boundary_ref(n).is_some_and(|b| !b.is_zero()) {
                invariant_factors(&dense_boundary(c, n))
            } else {
                Vec::new()
            }
        })
        .collect();
    (0..c.len())
        .map(|n| {
            let rank_out = ranks_and_factors[n].len();
            let incoming = &ranks_and_factors[n + 1];
            let betti = c.dim(n) - rank_out - incoming.len();
            HomologyGroup::from_diagonal(betti, incoming)
        })
        .collect()
}

/// Checks `∂∘∂ = 0` first and then computes homology.
pub fn try_homology(c: &ChainComplex) -> Result<Vec<HomologyGroup>, ChainError> {
    c.check()?;
    Ok(homology(c))
}

/// A basis of `Hₙ` fixed by the Smith transforms of `∂ₙ` and `∂ₙ₊₁`.
#[derive(Clone, Debug)]
pub struct HomologyBasis {
    degree: usize,
    /// `dim Zₙ × dim Cₙ`; coordinates of a cycle in the adapted cycle basis
    cycle_coords: IntMatrix,
    /// `dim Cₙ × dim Zₙ`; adapted cycle basis
    cycles: IntMatrix,
    /// diagonal of the Smith form of `∂ₙ₊₁` in cycle coordinates
    orders: Vec<BigInt>,
}

impl HomologyBasis {
    pub fn new(c: &ChainComplex, n: usize) -> Self {
        let dn = dense_boundary(c, n);
        let s1 = smith_normal_form(&dn);
        let dim = c.dim(n);
        let r = s1.rank;
        let kernel_rows: Vec<usize> = (r..dim).collect();
        let kernel_cols: Vec<usize> = (r..dim).collect();
        let v_inv_ker = s1.v_inv.select_rows(&kernel_rows);
        let k = s1.v.select_cols(&kernel_cols);
        let dn1 = c.boundary(n + 1).to_dense();
        let x = v_inv_ker.mul(&dn1);
        let s2 = smith_normal_form(&x);
        HomologyBasis {
            degree: n,
            cycle_coords: s2.u.mul(&v_inv_ker),
            cycles: k.mul(&s2.u_inv),
            orders: s2.invariant_factors(),
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    fn boundary_rank(&self) -> usize {
        self.orders.len()
    }

    fn cycle_dim(&self) -> usize {
        self.cycles.cols()
    }

    pub fn group(&self) -> HomologyGroup {
        HomologyGroup::from_diagonal(self.cycle_dim() - self.boundary_rank(), &self.orders)
    }

    pub fn free_rank(&self) -> usize {
        self.cycle_dim() - self.boundary_rank()
    }

    /// Indices into the adapted cycle basis of the torsion generators.
    fn torsion_indices(&self) -> Vec<usize> {
        (0..self.boundary_rank())
            .filter(|&i| !self.orders[i].is_one())
            .collect()
    }

    /// Orders of the torsion generators, aligned with the torsion rows of
    /// [`InducedMap::torsion`].
    pub fn torsion_orders(&self) -> Vec<BigInt> {
        self.torsion_indices()
            .into_iter()
            .map(|i| self.orders[i].clone())
            .collect()
    }

    /// Representative cycles (as chain vectors) of the free generators.
    pub fn free_generators(&self) -> Vec<Vec<BigInt>> {
        (self.boundary_rank()..self.cycle_dim())
            .map(|j| self.cycles.column(j))
            .collect()
    }

    pub fn torsion_generators(&self) -> Vec<Vec<BigInt>> {
        self.torsion_indices()
            .into_iter()
            .map(|j| self.cycles.column(j))
            .collect()
    }

    /// Coordinates of a cycle: `(free part, torsion part reduced mod orders)`.
    pub fn coordinates(&self, z: &[BigInt]) -> (Vec<BigInt>, Vec<BigInt>) {
        let coords = self.cycle_coords.mul_vec(z);
        let free = coords[self.boundary_rank()..].to_vec();
        let torsion = self
            .torsion_indices()
            .into_iter()
            .map(|i| coords[i].mod_floor(&self.orders[i]))
            .collect();
        (free, torsion)
    }
}

/// Matrix of `φ⋆` on `Hₙ`: the free block (free generators to free
/// coordinates) and, separately, the torsion coordinates of the images of
/// all source generators (free ones first, then torsion ones).
#[derive(Clone, Debug, PartialEq)]
pub struct InducedMap {
    pub free: IntMatrix,
    pub torsion: IntMatrix,
    pub source: HomologyGroup,
    pub target: HomologyGroup,
}

pub fn induced_map_on_homology(
    map: &ChainMap,
    source: &ChainComplex,
    target: &ChainComplex,
    n: usize,
) -> Result<InducedMap, ChainError> {
    map.check(source, target)?;
    let sb = HomologyBasis::new(source, n);
    let tb = HomologyBasis::new(target, n);
    let m = map.matrix(n, source, target);
    let gens: Vec<Vec<BigInt>> = sb
        .free_generators()
        .into_iter()
        .chain(sb.torsion_generators())
        .collect();
    let images: Vec<(Vec<BigInt>, Vec<BigInt>)> =
        gens.iter().map(|g| tb.coordinates(&m.apply(g))).collect();
    let free_src = sb.free_rank();
    let free = IntMatrix::from_fn(tb.free_rank(), free_src, |i, j| images[j].0[i].clone());
    let torsion = IntMatrix::from_fn(tb.torsion_orders().len(), gens.len(), |i, j| {
        images[j].1[i].clone()
    });
    Ok(InducedMap {
        free,
        torsion,
        source: sb.group(),
        target: tb.group(),
    })
}
