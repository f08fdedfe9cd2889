//! Chain maps selected inside box-valued acyclic carriers.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;

use super::complex::quotient_boundary;
use super::{Cell, Cube, CubicalError, QCell, RelativeComplex};
use crate::chain::{CellComplex, ChainMap};
use crate::dynamics::MultivaluedMap;
use crate::homalg::{homology, smith_normal_form, HomologyGroup, Smith};

/// Chain maps induced on both models of the pair.
#[derive(Clone, Debug)]
pub struct CarrierMap {
    pub unreduced: ChainMap,
    pub reduced: ChainMap,
}

/// Vertex-index box `∏ [lo_i, hi_i]`.
type VBox = Vec<(i64, i64)>;

fn image_box(f: &MultivaluedMap, c: &Cell) -> Result<Option<VBox>, CubicalError> {
    let Some(img) = f.image(c).filter(|s| !s.is_empty()) else {
        return Ok(None);
    };
    let d = c.dim();
    let mut b: VBox = vec![(i64::MAX, i64::MIN); d];
    for t in img {
        for (i, &x) in t.0.iter().enumerate() {
            b[i].0 = b[i].0.min(x);
            b[i].1 = b[i].1.max(x + 1);
        }
    }
    let volume: i64 = b.iter().map(|(lo, hi)| hi - lo).product();
    if volume as usize != img.len() {
        return Err(CubicalError::CarrierNotBox(c.to_string()));
    }
    Ok(Some(b))
}

fn box_cubes(b: &VBox) -> Vec<Cube> {
    let mut out = vec![Vec::new()];
    for &(lo, hi) in b {
        out = out
            .into_iter()
            .flat_map(|p: Vec<i64>| {
                (2 * lo..=2 * hi).map(move |x| {
                    let mut q = p.clone();
                    q.push(x);
                    q
                })
            })
            .collect();
    }
    out.into_iter().map(Cube).collect()
}

struct Carrier {
    complex: CellComplex<QCell>,
    smith: BTreeMap<usize, Smith<BigInt>>,
}

impl Carrier {
    fn solve(&mut self, n: usize, rhs: &[BigInt]) -> Option<Vec<BigInt>> {
        let complex = &self.complex;
        let s = self
            .smith
            .entry(n)
            .or_insert_with(|| smith_normal_form(&complex.complex().boundary(n).to_dense()));
        s.solve(rhs)
    }
}

/// Chain selector of `F` on the pair models.
///
/// The carrier of a cube `σ` of `N ∖ L` is the intersection of the closed
/// image boxes of the top cells of `N` containing `σ`, read in the quotient
/// of the target pair (the base point joins when the box meets the target
/// exit set or leaves the target `N`). Carriers must be boxes and acyclic;
/// the selector sends vertices to the least vertex of their carrier and
/// solves `∂x = φ(∂σ)` inside the carrier in higher degrees. The base point
/// maps to the base point.
pub fn carrier_chain_map(
    f: &MultivaluedMap,
    src: &RelativeComplex,
    dst: &RelativeComplex,
) -> Result<CarrierMap, CubicalError> {
    let grid = f.grid();
    if !(src.n.grid().as_ref() == grid.as_ref() && dst.n.grid().as_ref() == grid.as_ref()) {
        return Err(CubicalError::GridMismatch);
    }
    let mut boxes: BTreeMap<Cell, Option<VBox>> = BTreeMap::new();
    let mut carriers: BTreeMap<Vec<QCell>, Carrier> = BTreeMap::new();
    let mut phi: BTreeMap<QCell, Vec<(QCell, BigInt)>> = BTreeMap::new();
    phi.insert(QCell::Base, vec![(QCell::Base, BigInt::from(1))]);

    let cx = src.unreduced.complex();
    for n in 0..cx.len() {
        for sigma in src.unreduced.basis(n) {
            let QCell::Cube(cube) = sigma else { continue };
            let key = carrier_cells(f, cube, src, dst, &mut boxes)?;
            if !carriers.contains_key(&key) {
                let complex = CellComplex::build(key.iter().cloned(), QCell::dim, |c| {
                    quotient_boundary(c, &dst.l)
                })?;
                let mut h = homology(complex.complex());
                while h.last().is_some_and(HomologyGroup::is_trivial) {
                    h.pop();
                }
                if h != vec![HomologyGroup::free(1)] {
                    return Err(CubicalError::CarrierNotAcyclic(cube.to_string()));
                }
                carriers.insert(
                    key.clone(),
                    Carrier {
                        complex,
                        smith: BTreeMap::new(),
                    },
                );
            }
            let carrier = carriers.get_mut(&key).expect("inserted above");
            let image = if n == 0 {
                vec![(carrier.complex.basis(0)[0].clone(), BigInt::from(1))]
            } else {
                let mut rhs: Vec<(QCell, BigInt)> = Vec::new();
                for (face, s) in quotient_boundary(sigma, &src.l) {
                    for (t, v) in &phi[&face] {
                        rhs.push((t.clone(), v * s));
                    }
                }
                let not_monotone = || CubicalError::CarrierNotAcyclic(cube.to_string());
                let b = carrier.complex.vector(n - 1, &rhs).ok_or_else(not_monotone)?;
                let x = carrier.solve(n, &b).ok_or_else(not_monotone)?;
                carrier
                    .complex
                    .basis(n)
                    .iter()
                    .zip(x)
                    .filter(|(_, v)| !v.is_zero())
                    .map(|(c, v)| (c.clone(), v))
                    .collect()
            };
            phi.insert(sigma.clone(), image);
        }
    }

    let unreduced = src
        .unreduced
        .chain_map_to(&dst.unreduced, |c| phi[c].clone())?;
    let reduced = src.reduced.chain_map_to(&dst.reduced, |c| {
        phi[&QCell::Cube(c.clone())]
            .iter()
            .filter_map(|(t, v)| t.cube().map(|t| (t.clone(), v.clone())))
            .collect()
    })?;
    Ok(CarrierMap { unreduced, reduced })
}

fn carrier_cells(
    f: &MultivaluedMap,
    cube: &Cube,
    src: &RelativeComplex,
    dst: &RelativeComplex,
    boxes: &mut BTreeMap<Cell, Option<VBox>>,
) -> Result<Vec<QCell>, CubicalError> {
    let tops: Vec<Cell> = cube
        .cofaces_top()
        .into_iter()
        .filter(|c| src.n.contains(&c.cube()))
        .collect();
    if tops.is_empty() {
        return Err(CubicalError::CarrierNotBox(cube.to_string()));
    }
    let mut meet: Option<VBox> = None;
    let mut empty = false;
    let mut all_escape = true;
    for c in &tops {
        if !boxes.contains_key(c) {
            boxes.insert(c.clone(), image_box(f, c)?);
        }
        let b = &boxes[c];
        all_escape &= f.escapes(c) || b.is_none();
        match b {
            None => empty = true,
            Some(b) => {
                meet = Some(match meet {
                    None => b.clone(),
                    Some(m) => m
                        .iter()
                        .zip(b)
                        .map(|(&(a0, a1), &(b0, b1))| (a0.max(b0), a1.min(b1)))
                        .collect(),
                })
            }
        }
    }
    let meet = meet.filter(|m| !empty && m.iter().all(|(lo, hi)| lo <= hi));
    let mut base = all_escape;
    let mut cells = Vec::new();
    if let Some(m) = &meet {
        for q in box_cubes(m) {
            if !dst.n.contains(&q) || dst.l.contains(&q) {
                base = true;
            } else {
                cells.push(QCell::Cube(q));
            }
        }
    }
    if base {
        cells.push(QCell::Base);
    }
    cells.sort();
    Ok(cells)
}
