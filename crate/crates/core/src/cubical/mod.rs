//! Uniform cubical grids, elementary cubes and cubical sets.
//!
//! Cubes use doubled coordinates: an even entry `2k` is the grid vertex `k`,
//! an odd entry `2k + 1` is the edge from vertex `k` to `k + 1`. A top cell
//! with multi-index `(i₁, …, i_d)` is the cube `(2i₁ + 1, …, 2i_d + 1)`.

mod carrier;
mod complex;

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use thiserror::Error;

use crate::chain::ChainError;
use crate::interval::{parse_rational, Interval, IntervalBox, IntervalError, Rational};

pub use carrier::{carrier_chain_map, CarrierMap};
pub use complex::{
    chain_complex, diagonal_chain_map, projection_chain_map, relative_chain_complex, Factor, QCell,
    RelativeComplex,
};
pub(crate) use complex::quotient_boundary;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CubicalError {
    #[error("cubes come from different grids")]
    GridMismatch,
    #[error("cell {0} lies outside the grid")]
    OutOfRange(String),
    #[error("L is not contained in N")]
    NotSubset,
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("carrier of {0} is not a box")]
    CarrierNotBox(String),
    #[error("carrier of {0} is not acyclic")]
    CarrierNotAcyclic(String),
    #[error(transparent)]
    Chain(#[from] ChainError),
    #[error(transparent)]
    Interval(#[from] IntervalError),
}

/// Top-dimensional grid cell addressed by its multi-index.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cell(pub Vec<i64>);

impl Cell {
    pub fn new(idx: Vec<i64>) -> Self {
        Cell(idx)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn cube(&self) -> Cube {
        Cube(self.0.iter().map(|&i| 2 * i + 1).collect())
    }

    /// Parses `(3)` or `(1, 2)`; the parentheses are optional.
    pub fn parse(s: &str) -> Option<Cell> {
        let s = s.trim();
        let inner = s
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .unwrap_or(s);
        let idx: Option<Vec<i64>> = inner
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| t.parse().ok())
            .collect();
        idx.filter(|v| !v.is_empty()).map(Cell)
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Elementary cube in doubled coordinates.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cube(pub Vec<i64>);

impl Cube {
    pub fn vertex(idx: &[i64]) -> Cube {
        Cube(idx.iter().map(|&i| 2 * i).collect())
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn ambient_dim(&self) -> usize {
        self.0.len()
    }

    pub fn dim(&self) -> usize {
        self.0.iter().filter(|c| c.is_odd()).count()
    }

    /// Signed codimension-one faces. The face in a nondegenerate coordinate
    /// `i` carries `(-1)^k` (upper) or `-(-1)^k` (lower), `k` counting the
    /// nondegenerate coordinates before `i`.
    pub fn boundary(&self) -> Vec<(Cube, i64)> {
        let mut out = Vec::with_capacity(2 * self.dim());
        let mut sign = 1;
        for (i, &c) in self.0.iter().enumerate() {
            if c.is_even() {
                continue;
            }
            let mut up = self.0.clone();
            up[i] = c + 1;
            let mut down = self.0.clone();
            down[i] = c - 1;
            out.push((Cube(up), sign));
            out.push((Cube(down), -sign));
            sign = -sign;
        }
        out
    }

    /// All faces including the cube itself.
    pub fn faces(&self) -> Vec<Cube> {
        let mut out = vec![Vec::with_capacity(self.0.len())];
        for &c in &self.0 {
            let choices: &[i64] = if c.is_odd() { &[c - 1, c, c + 1] } else { &[c] };
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    choices.iter().map(move |&x| {
                        let mut p = prefix.clone();
                        p.push(x);
                        p
                    })
                })
                .collect();
        }
        out.into_iter().map(Cube).collect()
    }

    pub fn is_face_of(&self, other: &Cube) -> bool {
        self.0.len() == other.0.len()
            && self
                .0
                .iter()
                .zip(&other.0)
                .all(|(&a, &b)| a == b || (b.is_odd() && (a - b).abs() == 1))
    }

    /// Top cells of an unbounded grid having this cube as a face.
    pub fn cofaces_top(&self) -> Vec<Cell> {
        let mut out = vec![Vec::with_capacity(self.0.len())];
        for &c in &self.0 {
            let choices: Vec<i64> = if c.is_odd() {
                vec![c.div_euclid(2)]
            } else {
                vec![c / 2 - 1, c / 2]
            };
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    choices.iter().map(move |&x| {
                        let mut p: Vec<i64> = prefix.clone();
                        p.push(x);
                        p
                    })
                })
                .collect();
        }
        out.into_iter().map(Cell).collect()
    }

    /// Vertex index range `[lo, hi]` of the cube in coordinate `i`.
    pub fn extent(&self, i: usize) -> (i64, i64) {
        let c = self.0[i];
        (c.div_euclid(2), (c + 1).div_euclid(2))
    }

    pub fn concat(&self, other: &Cube) -> Cube {
        Cube(self.0.iter().chain(&other.0).copied().collect())
    }

    pub fn split_at(&self, d: usize) -> (Cube, Cube) {
        (Cube(self.0[..d].to_vec()), Cube(self.0[d..].to_vec()))
    }
}

impl fmt::Display for Cube {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, &c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, "x")?;
            }
            if c.is_odd() {
                write!(f, "[{},{}]", c.div_euclid(2), c.div_euclid(2) + 1)?;
            } else {
                write!(f, "[{}]", c / 2)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Cube {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Uniform subdivision of a box into `counts[i]` cells along coordinate `i`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Grid {
    bounds: IntervalBox,
    counts: Vec<usize>,
}

impl Grid {
    pub fn new(bounds: IntervalBox, counts: Vec<usize>) -> Result<Self, CubicalError> {
        if bounds.dim() != counts.len() {
            return Err(CubicalError::InvalidGrid(format!(
                "{} bounds but {} cell counts",
                bounds.dim(),
                counts.len()
            )));
        }
        for (i, (iv, &n)) in bounds.coords().iter().zip(&counts).enumerate() {
            if n == 0 || iv.lo() >= iv.hi() {
                return Err(CubicalError::InvalidGrid(format!(
                    "coordinate {i}: need lo < hi and a positive cell count"
                )));
            }
        }
        Ok(Grid { bounds, counts })
    }

    /// One-dimensional grid on `[lo, hi]`.
    pub fn interval(lo: Rational, hi: Rational, n: usize) -> Result<Self, CubicalError> {
        Grid::new(IntervalBox::new(vec![Interval::new(lo, hi)?])?, vec![n])
    }

    /// Parses `lo1 hi1 n1; lo2 hi2 n2; ...` (an optional `grid:` prefix is allowed).
    pub fn parse_spec(s: &str) -> Result<Self, CubicalError> {
        let bad = |m: String| CubicalError::Parse {
            line: 1,
            message: m,
        };
        let s = s.trim();
        let s = s.strip_prefix("grid:").unwrap_or(s);
        let mut coords = Vec::new();
        let mut counts = Vec::new();
        for part in s.split(';').map(str::trim).filter(|p| !p.is_empty()) {
            let toks: Vec<&str> = part.split_whitespace().collect();
            let [lo, hi, n] = toks.as_slice() else {
                return Err(bad(format!("expected `lo hi n`, found `{part}`")));
            };
            let lo = parse_rational(lo)?;
            let hi = parse_rational(hi)?;
            let n: usize = n
                .parse()
                .map_err(|_| bad(format!("cell count `{n}` is not a positive integer")))?;
            if lo >= hi {
                return Err(bad(format!("empty range `{part}`")));
            }
            coords.push(Interval::new(lo, hi)?);
            counts.push(n);
        }
        if coords.is_empty() {
            return Err(bad("empty grid specification".into()));
        }
        Grid::new(IntervalBox::new(coords)?, counts)
    }

    pub fn dim(&self) -> usize {
        self.counts.len()
    }

    pub fn counts(&self) -> &[usize] {
        &self.counts
    }

    pub fn bounds(&self) -> &IntervalBox {
        &self.bounds
    }

    pub fn width(&self, i: usize) -> Rational {
        self.bounds.coord(i).width() / BigInt::from(self.counts[i])
    }

    /// Coordinate of vertex `k` along axis `i`.
    pub fn vertex(&self, i: usize, k: i64) -> Rational {
        self.bounds.coord(i).lo() + self.width(i) * BigInt::from(k)
    }

    pub fn contains_cell(&self, c: &Cell) -> bool {
        c.0.len() == self.dim()
            && c.0
                .iter()
                .zip(&self.counts)
                .all(|(&i, &n)| 0 <= i && (i as usize) < n)
    }

    pub fn contains_cube(&self, c: &Cube) -> bool {
        c.0.len() == self.dim()
            && c.0
                .iter()
                .zip(&self.counts)
                .all(|(&x, &n)| 0 <= x && x <= 2 * n as i64)
    }

    pub fn cube_box(&self, c: &Cube) -> IntervalBox {
        IntervalBox::new(
            (0..self.dim())
                .map(|i| {
                    let (a, b) = c.extent(i);
                    Interval::new(self.vertex(i, a), self.vertex(i, b)).expect("ordered vertices")
                })
                .collect(),
        )
        .expect("positive dimension")
    }

    pub fn cell_box(&self, c: &Cell) -> IntervalBox {
        self.cube_box(&c.cube())
    }

    /// All top cells in lexicographic order.
    pub fn cells(&self) -> Vec<Cell> {
        let mut out = vec![Vec::new()];
        for &n in &self.counts {
            out = out
                .into_iter()
                .flat_map(|p: Vec<i64>| {
                    (0..n as i64).map(move |i| {
                        let mut q = p.clone();
                        q.push(i);
                        q
                    })
                })
                .collect();
        }
        out.into_iter().map(Cell).collect()
    }

    /// Top cells whose closed box meets `b`, and whether `b` leaves the grid box.
    pub fn cells_meeting(&self, b: &IntervalBox) -> (Vec<Cell>, bool) {
        assert_eq!(b.dim(), self.dim());
        let escapes = !self.bounds.contains_box(b);
        let mut ranges = Vec::with_capacity(self.dim());
        for i in 0..self.dim() {
            let lo = self.bounds.coord(i).lo();
            let w = self.width(i);
            let iv = b.coord(i);
            // cell k spans [lo + k w, lo + (k+1) w]
            let first: BigInt = ((iv.lo() - lo) / &w).ceil().to_integer() - 1;
            let last: BigInt = ((iv.hi() - lo) / &w).floor().to_integer();
            let n = BigInt::from(self.counts[i]);
            let first = first.max(BigInt::from(0));
            let last = last.min(&n - 1);
            if first > last {
                return (Vec::new(), escapes);
            }
            let to_i64 = |x: BigInt| i64::try_from(x).expect("grid index fits in i64");
            ranges.push((to_i64(first), to_i64(last)));
        }
        let mut out = vec![Vec::new()];
        for &(a, b) in &ranges {
            out = out
                .into_iter()
                .flat_map(|p: Vec<i64>| {
                    (a..=b).map(move |i| {
                        let mut q = p.clone();
                        q.push(i);
                        q
                    })
                })
                .collect();
        }
        (out.into_iter().map(Cell).collect(), escapes)
    }

    /// The grid of `self × other`.
    pub fn product(&self, other: &Grid) -> Grid {
        Grid {
            bounds: IntervalBox::new(
                self.bounds
                    .coords()
                    .iter()
                    .chain(other.bounds.coords())
                    .cloned()
                    .collect(),
            )
            .expect("positive dimension"),
            counts: self.counts.iter().chain(&other.counts).copied().collect(),
        }
    }

    /// `lo hi n; ...` as accepted by [`Grid::parse_spec`].
    pub fn spec(&self) -> String {
        self.bounds
            .coords()
            .iter()
            .zip(&self.counts)
            .map(|(iv, n)| format!("{} {} {}", iv.lo(), iv.hi(), n))
            .collect::<Vec<_>>()
            .join("; ")
    }
}

impl fmt::Display for Grid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "grid: {}", self.spec())
    }
}

/// Face-closed finite set of cubes of one grid.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CubicalSet {
    grid: Arc<Grid>,
    cubes: BTreeSet<Cube>,
}

impl CubicalSet {
    pub fn empty(grid: Arc<Grid>) -> Self {
        CubicalSet {
            grid,
            cubes: BTreeSet::new(),
        }
    }

    /// Closure of the given top cells.
    pub fn from_top_cells(
        grid: Arc<Grid>,
        cells: impl IntoIterator<Item = Cell>,
    ) -> Result<Self, CubicalError> {
        let mut cubes = Vec::new();
        for c in cells {
            if !grid.contains_cell(&c) {
                return Err(CubicalError::OutOfRange(c.to_string()));
            }
            cubes.push(c.cube());
        }
        CubicalSet::from_cubes(grid, cubes)
    }

    /// Closure of arbitrary cubes.
    pub fn from_cubes(
        grid: Arc<Grid>,
        cubes: impl IntoIterator<Item = Cube>,
    ) -> Result<Self, CubicalError> {
        let mut set = BTreeSet::new();
        for c in cubes {
            if !grid.contains_cube(&c) {
                return Err(CubicalError::OutOfRange(c.to_string()));
            }
            if set.contains(&c) {
                continue;
            }
            set.extend(c.faces());
        }
        Ok(CubicalSet { grid, cubes: set })
    }

    pub fn grid(&self) -> &Arc<Grid> {
        &self.grid
    }

    pub fn cubes(&self) -> &BTreeSet<Cube> {
        &self.cubes
    }

    pub fn contains(&self, c: &Cube) -> bool {
        self.cubes.contains(c)
    }

    pub fn len(&self) -> usize {
        self.cubes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cubes.is_empty()
    }

    /// Cubes of full dimension, as grid cells.
    pub fn top_cells(&self) -> BTreeSet<Cell> {
        let d = self.grid.dim();
        self.cubes
            .iter()
            .filter(|c| c.dim() == d)
            .map(|c| Cell(c.0.iter().map(|x| x.div_euclid(2)).collect()))
            .collect()
    }

    pub fn same_grid(&self, other: &CubicalSet) -> bool {
        Arc::ptr_eq(&self.grid, &other.grid) || self.grid == other.grid
    }

    pub fn is_subset(&self, other: &CubicalSet) -> bool {
        self.same_grid(other) && self.cubes.is_subset(&other.cubes)
    }

    pub fn union(&self, other: &CubicalSet) -> Result<CubicalSet, CubicalError> {
        if !self.same_grid(other) {
            return Err(CubicalError::GridMismatch);
        }
        Ok(CubicalSet {
            grid: self.grid.clone(),
            cubes: self.cubes.union(&other.cubes).cloned().collect(),
        })
    }

    /// Reads the text format: a `grid:` header, then one top cell per line
    /// as whitespace-separated indices; `#` starts a comment.
    pub fn parse(text: &str) -> Result<CubicalSet, CubicalError> {
        let mut grid: Option<Arc<Grid>> = None;
        let mut cells = Vec::new();
        for (ln, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |message: String| CubicalError::Parse {
                line: ln + 1,
                message,
            };
            if let Some(spec) = line.strip_prefix("grid:") {
                if grid.is_some() {
                    return Err(err("duplicate grid header".into()));
                }
                grid = Some(Arc::new(Grid::parse_spec(spec).map_err(|e| err(e.to_string()))?));
                continue;
            }
            let Some(g) = &grid else {
                return Err(err("cell listed before the grid header".into()));
            };
            let cell = Cell::parse(line).ok_or_else(|| err(format!("cannot read cell `{line}`")))?;
            if !g.contains_cell(&cell) {
                return Err(err(format!("cell {cell} lies outside the grid")));
            }
            cells.push(cell);
        }
        let grid = grid.ok_or(CubicalError::Parse {
            line: 1,
            message: "missing grid header".into(),
        })?;
        CubicalSet::from_top_cells(grid, cells)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("{}\n", self.grid);
        for c in self.top_cells() {
            let idx: Vec<String> = c.0.iter().map(i64::to_string).collect();
            s.push_str(&idx.join(" "));
            s.push('\n');
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interval::rational;

    fn line8() -> Arc<Grid> {
        Arc::new(Grid::interval(rational(-2, 1), rational(2, 1), 8).unwrap())
    }

    #[test]
    fn closure_of_cells() {
        let s = CubicalSet::from_top_cells(line8(), (0..8).map(|i| Cell(vec![i]))).unwrap();
        assert_eq!(s.len(), 17);
        assert_eq!(s.top_cells().len(), 8);
    }

    #[test]
    fn boundary_squares_to_zero_on_a_cube() {
        let c = Cube(vec![1, 3, 5]);
        let mut acc = std::collections::BTreeMap::new();
        for (f, s) in c.boundary() {
            for (g, t) in f.boundary() {
                *acc.entry(g).or_insert(0) += s * t;
            }
        }
        assert!(acc.values().all(|&v| v == 0));
        assert_eq!(c.faces().len(), 27);
    }

    #[test]
    fn cells_meeting_uses_closed_boxes() {
        let g = line8();
        let b = IntervalBox::new(vec![Interval::new(rational(0, 1), rational(1, 1)).unwrap()]).unwrap();
        let (cells, esc) = g.cells_meeting(&b);
        assert_eq!(cells, vec![Cell(vec![3]), Cell(vec![4]), Cell(vec![5]), Cell(vec![6])]);
        assert!(!esc);
        let point = IntervalBox::new(vec![Interval::point(rational(0, 1))]).unwrap();
        assert_eq!(g.cells_meeting(&point).0, vec![Cell(vec![3]), Cell(vec![4])]);
        let far = IntervalBox::new(vec![Interval::new(rational(3, 1), rational(4, 1)).unwrap()]).unwrap();
        assert_eq!(g.cells_meeting(&far), (vec![], true));
    }

    #[test]
    fn text_round_trip() {
        let text = "# square\ngrid: 0 1 5; 0 1 5\n0 0\n1 0 # trailing\n4 4\n";
        let s = CubicalSet::parse(text).unwrap();
        assert_eq!(s.top_cells().len(), 3);
        assert_eq!(CubicalSet::parse(&s.to_text()).unwrap(), s);
        assert!(matches!(
            CubicalSet::parse("grid: 0 1 5\n7\n"),
            Err(CubicalError::Parse { line: 2, .. })
        ));
    }

    #[test]
    fn cofaces_of_vertex() {
        let v = Cube::vertex(&[2, 0]);
        assert_eq!(
            v.cofaces_top(),
            vec![Cell(vec![1, -1]), Cell(vec![1, 0]), Cell(vec![2, -1]), Cell(vec![2, 0])]
        );
    }
}
