use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;

use super::{torus_pq, TorusComplex, TorusError};
use crate::chain::{CellComplex, ChainComplex, ChainMap};
use crate::cubical::{chain_complex, quotient_boundary, Cell, Cube, CubicalSet, QCell, RelativeComplex};
use crate::dynamics::MultivaluedMap;
use crate::homalg::{homology, HomologyGroup};

/// Product cell `a × b` of `N/L × N/L`.
pub type GraphCell = (QCell, QCell);

/// Chain model of the graph enclosure inside `N/L × N/L` with its two
/// projections, in the unreduced and the reduced (base fiber collapsed)
/// variants.
#[derive(Clone, Debug)]
pub struct GraphComplex {
    pub x: CellComplex<QCell>,
    pub z: CellComplex<GraphCell>,
    pub p: ChainMap,
    pub q: ChainMap,
    pub x_reduced: CellComplex<Cube>,
    pub z_reduced: CellComplex<GraphCell>,
    pub p_reduced: ChainMap,
    pub q_reduced: ChainMap,
}

/// Cells of the fiber complex whose homology is not that of a point.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct FiberVerdict<C> {
    pub failing: Vec<C>,
}

impl<C> FiberVerdict<C> {
    pub fn passed(&self) -> bool {
        self.failing.is_empty()
    }
}

fn is_acyclic(c: &ChainComplex) -> bool {
    let mut h = homology(c);
    while h.last().is_some_and(HomologyGroup::is_trivial) {
        h.pop();
    }
    h == vec![HomologyGroup::free(1)]
}

fn product_boundary(c: &GraphCell, l: &CubicalSet) -> Vec<(GraphCell, i64)> {
    let (a, b) = c;
    let sign = if a.dim() % 2 == 0 { 1 } else { -1 };
    let mut out: Vec<(GraphCell, i64)> = quotient_boundary(a, l)
        .into_iter()
        .map(|(fa, s)| ((fa, b.clone()), s))
        .collect();
    out.extend(
        quotient_boundary(b, l)
            .into_iter()
            .map(|(fb, s)| ((a.clone(), fb), sign * s)),
    );
    out
}

/// Quotient cells of the closure of `cells` in `N/L`, with the base point
/// standing for every cube outside `N ∖ L`.
fn quotient_cells(
    cells: impl IntoIterator<Item = Cell>,
    pair: &RelativeComplex,
    base: bool,
) -> Result<BTreeSet<QCell>, TorusError> {
    let closure = CubicalSet::from_top_cells(pair.n.grid().clone(), cells)?;
    let mut out = BTreeSet::new();
    let mut base = base;
    for q in closure.cubes() {
        if pair.n.contains(q) && !pair.l.contains(q) {
            out.insert(QCell::Cube(q.clone()));
        } else {
            base = true;
        }
    }
    if base {
        out.insert(QCell::Base);
    }
    Ok(out)
}

/// Builds the graph complex of `f` on the index pair `pair`.
///
/// For every top cell `c` of `N ∖ L` the block `c̄ × F(c)̄` is added in the
/// quotient, where cubes outside `N ∖ L` collapse to the base point and an
/// escaping image also contains it. The point `(∗, ∗)` is always present.
pub fn graph_complex(f: &MultivaluedMap, pair: &RelativeComplex) -> Result<GraphComplex, TorusError> {
    if f.grid().as_ref() != pair.n.grid().as_ref() {
        return Err(TorusError::Mismatch("map and pair live on different grids".into()));
    }
    let mut z: BTreeSet<GraphCell> = BTreeSet::new();
    z.insert((QCell::Base, QCell::Base));
    let interior: Vec<Cell> = pair
        .n
        .top_cells()
        .into_iter()
        .filter(|c| !pair.l.contains(&c.cube()))
        .collect();
    for c in interior {
        let src = quotient_cells([c.clone()], pair, false)?;
        let dst = quotient_cells(f.image_or_empty(&c).cloned(), pair, f.escapes(&c))?;
        for a in &src {
            for b in &dst {
                z.insert((a.clone(), b.clone()));
            }
        }
    }
    let l = &pair.l;
    let dim = |c: &GraphCell| c.0.dim() + c.1.dim();
    let zc = CellComplex::build(z.iter().cloned(), dim, |c| product_boundary(c, l))?;
    let one = || BigInt::from(1);
    let project = |first: bool| {
        move |(a, b): &GraphCell| {
            let (keep, other) = if first { (a, b) } else { (b, a) };
            if other.dim() == 0 {
                vec![(keep.clone(), one())]
            } else {
                Vec::new()
            }
        }
    };
    let x = &pair.unreduced;
    let p = zc.chain_map_to(x, project(true))?;
    let q = zc.chain_map_to(x, project(false))?;

    let base = (QCell::Base, QCell::Base);
    let zr = CellComplex::build(
        z.iter().filter(|c| **c != base).cloned(),
        dim,
        |c| {
            product_boundary(c, l)
                .into_iter()
                .filter(|(f, _)| *f != base)
                .collect()
        },
    )?;
    let reduce = |first: bool| {
        let full = project(first);
        move |c: &GraphCell| -> Vec<(Cube, BigInt)> {
            full(c)
                .into_iter()
                .filter_map(|(t, v)| t.cube().map(|t| (t.clone(), v)))
                .collect()
        }
    };
    let xr = &pair.reduced;
    let p_reduced = zr.chain_map_to(xr, reduce(true))?;
    let q_reduced = zr.chain_map_to(xr, reduce(false))?;
    Ok(GraphComplex {
        x: x.clone(),
        z: zc,
        p,
        q,
        x_reduced: xr.clone(),
        z_reduced: zr,
        p_reduced,
        q_reduced,
    })
}

impl GraphComplex {
    pub fn torus(&self) -> Result<TorusComplex, TorusError> {
        torus_pq(self.z.complex(), self.x.complex(), &self.p, &self.q)
    }

    pub fn reduced_torus(&self) -> Result<TorusComplex, TorusError> {
        torus_pq(
            self.z_reduced.complex(),
            self.x_reduced.complex(),
            &self.p_reduced,
            &self.q_reduced,
        )
    }

    /// `{b | (a, b) ∈ Z}` for every cell `a` of `N/L`.
    pub fn fibers(&self) -> BTreeMap<QCell, BTreeSet<QCell>> {
        let mut out: BTreeMap<QCell, BTreeSet<QCell>> = BTreeMap::new();
        for (a, b) in self.z.cells() {
            out.entry(a.clone()).or_default().insert(b.clone());
        }
        out
    }

    /// Vietoris condition for `p`: every fiber `p⁻¹(a)` is acyclic.
    pub fn fiber_verdict(&self, pair: &RelativeComplex) -> Result<FiberVerdict<QCell>, TorusError> {
        let fibers = self.fibers();
        let mut failing = Vec::new();
        for a in self.x.cells() {
            let ok = match fibers.get(a) {
                None => false,
                Some(cells) => {
                    let c = CellComplex::build(cells.iter().cloned(), QCell::dim, |c| {
                        quotient_boundary(c, &pair.l)
                    })?;
                    is_acyclic(c.complex())
                }
            };
            if !ok {
                failing.push(a.clone());
            }
        }
        Ok(FiberVerdict { failing })
    }
}

/// Checks that the closure of every nonempty image `F(c)` is acyclic.
/// Escaping cells with an empty image are skipped; a non-escaping cell
/// with an empty image fails.
pub fn check_fiber_acyclicity(f: &MultivaluedMap) -> Result<FiberVerdict<Cell>, TorusError> {
    let mut failing = Vec::new();
    for c in f.domain() {
        let img = f.image(c).expect("domain cell");
        if img.is_empty() {
            if !f.escapes(c) {
                failing.push(c.clone());
            }
            continue;
        }
        let set = CubicalSet::from_top_cells(f.grid().clone(), img.iter().cloned())?;
        if !is_acyclic(chain_complex(&set)?.complex()) {
            failing.push(c.clone());
        }
    }
    Ok(FiberVerdict { failing })
}
