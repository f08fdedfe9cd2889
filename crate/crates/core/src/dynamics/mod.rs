//! Combinatorial multivalued maps, invariant parts and index pairs.

mod pair;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::sync::Arc;

use rayon::prelude::*;
use thiserror::Error;

use crate::cubical::{Cell, CubicalError, CubicalSet, Grid};
use crate::interval::{evaluate_interval, IntervalError, MapExpr};

pub use pair::{build_index_pair, verify_index_pair, IndexPair, PairVerdict};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DynamicsError {
    #[error("isolation failure: invariant cells {} touch the boundary of the {region}; enlarge the seed or refine the grid", fmt_cells(.cells))]
    IsolationFailure { region: String, cells: Vec<Cell> },
    #[error("cell {0} lies outside the grid")]
    OutOfRange(Cell),
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error(transparent)]
    Interval(#[from] IntervalError),
    #[error(transparent)]
    Cubical(#[from] CubicalError),
}

pub(crate) fn fmt_cells(cells: &[Cell]) -> String {
    let parts: Vec<String> = cells.iter().map(Cell::to_string).collect();
    parts.join(", ")
}

/// Cell-to-cells map on one grid. Cells whose true image leaves the grid
/// box carry an escape flag.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultivaluedMap {
    grid: Arc<Grid>,
    images: BTreeMap<Cell, BTreeSet<Cell>>,
    escapes: BTreeSet<Cell>,
}

impl MultivaluedMap {
    pub fn new(grid: Arc<Grid>) -> Self {
        MultivaluedMap {
            grid,
            images: BTreeMap::new(),
            escapes: BTreeSet::new(),
        }
    }

    pub fn insert(
        &mut self,
        cell: Cell,
        image: impl IntoIterator<Item = Cell>,
        escapes: bool,
    ) -> Result<(), DynamicsError> {
        if !self.grid.contains_cell(&cell) {
            return Err(DynamicsError::OutOfRange(cell));
        }
        let image: BTreeSet<Cell> = image.into_iter().collect();
        if let Some(c) = image.iter().find(|c| !self.grid.contains_cell(c)) {
            return Err(DynamicsError::OutOfRange(c.clone()));
        }
        if escapes {
            self.escapes.insert(cell.clone());
        } else {
            self.escapes.remove(&cell);
        }
        self.images.insert(cell, image);
        Ok(())
    }

    pub fn grid(&self) -> &Arc<Grid> {
        &self.grid
    }

    pub fn image(&self, c: &Cell) -> Option<&BTreeSet<Cell>> {
        self.images.get(c)
    }

    /// Image cells, empty for cells outside the domain.
    pub fn image_or_empty(&self, c: &Cell) -> impl Iterator<Item = &Cell> + '_ {
        self.images.get(c).into_iter().flatten()
    }

    pub fn escapes(&self, c: &Cell) -> bool {
        self.escapes.contains(c)
    }

    pub fn escaping_cells(&self) -> &BTreeSet<Cell> {
        &self.escapes
    }

    pub fn domain(&self) -> impl Iterator<Item = &Cell> + '_ {
        self.images.keys()
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn max_fiber(&self) -> usize {
        self.images.values().map(BTreeSet::len).max().unwrap_or(0)
    }

    /// `size → number of cells` with an image of that size.
    pub fn fiber_histogram(&self) -> BTreeMap<usize, usize> {
        let mut h = BTreeMap::new();
        for v in self.images.values() {
            *h.entry(v.len()).or_insert(0) += 1;
        }
        h
    }

    pub fn preimages(&self) -> BTreeMap<Cell, BTreeSet<Cell>> {
        let mut inv: BTreeMap<Cell, BTreeSet<Cell>> = BTreeMap::new();
        for (c, img) in &self.images {
            for t in img {
                inv.entry(t.clone()).or_default().insert(c.clone());
            }
        }
        inv
    }

    /// Union of the image cells of `cells`.
    pub fn image_of<'a>(&self, cells: impl IntoIterator<Item = &'a Cell>) -> BTreeSet<Cell> {
        cells
            .into_iter()
            .flat_map(|c| self.image_or_empty(c).cloned())
            .collect()
    }

    /// The graph support `Z = ⋃ c × F(c)` as a cubical set in the product grid.
    pub fn graph_support(&self) -> Result<CubicalSet, CubicalError> {
        let grid = Arc::new(self.grid.product(&self.grid));
        let cells = self.images.iter().flat_map(|(c, img)| {
            img.iter()
                .map(move |t| Cell(c.0.iter().chain(&t.0).copied().collect()))
        });
        CubicalSet::from_top_cells(grid, cells)
    }

    /// Text form: a `grid:` header, then `(i) -> (j),(k)` per cell with a
    /// trailing `escapes` marker on escaping cells.
    pub fn to_text(&self) -> String {
        let mut s = format!("{}\n", self.grid);
        for (c, img) in &self.images {
            let parts: Vec<String> = img.iter().map(Cell::to_string).collect();
            let _ = write!(s, "{c} -> {}", parts.join(","));
            if self.escapes(c) {
                s.push_str(if img.is_empty() { "escapes" } else { " escapes" });
            }
            s.push('\n');
        }
        s
    }

    pub fn parse(text: &str) -> Result<MultivaluedMap, DynamicsError> {
        let mut map: Option<MultivaluedMap> = None;
        for (ln, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |message: String| DynamicsError::Parse {
                line: ln + 1,
                message,
            };
            if let Some(spec) = line.strip_prefix("grid:") {
                if map.is_some() {
                    return Err(err("duplicate grid header".into()));
                }
                let g = Grid::parse_spec(spec).map_err(|e| err(e.to_string()))?;
                map = Some(MultivaluedMap::new(Arc::new(g)));
                continue;
            }
            let Some(m) = map.as_mut() else {
                return Err(err("map entry before the grid header".into()));
            };
            let (lhs, rhs) = line
                .split_once("->")
                .ok_or_else(|| err(format!("expected `cell -> cells`, found `{line}`")))?;
            let src = Cell::parse(lhs).ok_or_else(|| err(format!("cannot read cell `{}`", lhs.trim())))?;
            let mut rhs = rhs.trim();
            let mut escapes = false;
            if let Some(r) = rhs.strip_suffix("escapes") {
                escapes = true;
                rhs = r.trim();
            }
            let mut image = Vec::new();
            for part in rhs.split(')').map(str::trim) {
                let part = part.trim_start_matches(',').trim();
                if part.is_empty() {
                    continue;
                }
                let c = Cell::parse(&format!("{part})"))
                    .ok_or_else(|| err(format!("cannot read cell `{part})`")))?;
                image.push(c);
            }
            if src.dim() != m.grid.dim() || image.iter().any(|c| c.dim() != m.grid.dim()) {
                return Err(err("cell dimension does not match the grid".into()));
            }
            m.insert(src, image, escapes).map_err(|e| err(e.to_string()))?;
        }
        map.ok_or(DynamicsError::Parse {
            line: 1,
            message: "missing grid header".into(),
        })
    }
}

/// Outer enclosure of `expr` on every cell of `grid`: `F(c)` holds all cells
/// whose closed box meets the interval image of `c`.
pub fn enclose_graph(expr: &MapExpr, grid: &Arc<Grid>) -> Result<MultivaluedMap, DynamicsError> {
    if expr.dim() != grid.dim() {
        return Err(IntervalError::DimensionMismatch {
            expected: grid.dim(),
            found: expr.dim(),
        }
        .into());
    }
    let cells = grid.cells();
    let images: Vec<Result<(Cell, Vec<Cell>, bool), IntervalError>> = cells
        .into_par_iter()
        .map(|c| {
            let img = evaluate_interval(expr, &grid.cell_box(&c))?;
            let (hit, escapes) = grid.cells_meeting(&img);
            Ok((c, hit, escapes))
        })
        .collect();
    let mut map = MultivaluedMap::new(grid.clone());
    for r in images {
        let (c, hit, escapes) = r?;
        map.insert(c, hit, escapes)?;
    }
    Ok(map)
}

/// Largest `A ⊂ M` in which every cell has a successor and a predecessor.
pub fn invariant_part(f: &MultivaluedMap, m: &BTreeSet<Cell>) -> BTreeSet<Cell> {
    let pre = f.preimages();
    let empty = BTreeSet::new();
    let mut alive: BTreeSet<Cell> = m.clone();
    let mut succ: BTreeMap<&Cell, usize> = BTreeMap::new();
    let mut pred: BTreeMap<&Cell, usize> = BTreeMap::new();
    for c in m {
        succ.insert(c, f.image_or_empty(c).filter(|t| m.contains(*t)).count());
        pred.insert(
            c,
            pre.get(c).unwrap_or(&empty).iter().filter(|s| m.contains(*s)).count(),
        );
    }
    let mut queue: Vec<&Cell> = m
        .iter()
        .filter(|c| succ[c] == 0 || pred[c] == 0)
        .collect();
    while let Some(c) = queue.pop() {
        if !alive.remove(c) {
            continue;
        }
        for t in f.image_or_empty(c) {
            if let Some(p) = pred.get_mut(t) {
                if alive.contains(t) {
                    *p -= 1;
                    if *p == 0 {
                        queue.push(m.get(t).expect("member of M"));
                    }
                }
            }
        }
        for s in pre.get(c).unwrap_or(&empty) {
            if let Some(n) = succ.get_mut(s) {
                if alive.contains(s) {
                    *n -= 1;
                    if *n == 0 {
                        queue.push(m.get(s).expect("member of M"));
                    }
                }
            }
        }
    }
    alive
}

/// Cells `y = x_n` of paths `x_0 → … → x_{2n}` that stay in `M`.
pub fn inv_n(f: &MultivaluedMap, m: &BTreeSet<Cell>, n: usize) -> BTreeSet<Cell> {
    let mut forward = m.clone();
    let mut backward = m.clone();
    for _ in 0..n {
        forward = f
            .image_of(&forward)
            .into_iter()
            .filter(|c| m.contains(c))
            .collect();
        backward = m
            .iter()
            .filter(|c| f.image_or_empty(c).any(|t| backward.contains(t)))
            .cloned()
            .collect();
    }
    forward.intersection(&backward).cloned().collect()
}

/// Cells sharing at least a vertex with `c` (excluding `c`), unbounded lattice.
pub(crate) fn neighbors(c: &Cell) -> Vec<Cell> {
    let mut out = vec![Vec::new()];
    for &i in &c.0 {
        out = out
            .into_iter()
            .flat_map(|p: Vec<i64>| {
                (i - 1..=i + 1).map(move |j| {
                    let mut q = p.clone();
                    q.push(j);
                    q
                })
            })
            .collect();
    }
    out.into_iter().map(Cell).filter(|n| n != c).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interval::{parse_map, rational};

    fn grid8() -> Arc<Grid> {
        Arc::new(Grid::interval(rational(-2, 1), rational(2, 1), 8).unwrap())
    }

    #[test]
    fn text_round_trip() {
        let f = enclose_graph(&parse_map("(mul 2 (var 0))").unwrap(), &grid8()).unwrap();
        let text = f.to_text();
        assert!(text.contains("(7) -> escapes"));
        assert_eq!(MultivaluedMap::parse(&text).unwrap(), f);
    }

    #[test]
    fn parse_errors_have_lines() {
        let e = MultivaluedMap::parse("grid: -2 2 8\n(3) -> (3),(4)\n(9) -> (1)\n").unwrap_err();
        assert!(matches!(e, DynamicsError::Parse { line: 3, .. }));
    }

    #[test]
    fn neighbors_in_two_dimensions() {
        assert_eq!(neighbors(&Cell(vec![0, 0])).len(), 8);
    }
}
