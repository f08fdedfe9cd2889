use std::collections::BTreeSet;

use serde_json::Value;
use thiserror::Error;
use torus_index::cubical::{Cell, Grid};
use torus_index::fpgroup::{Presentation, Word};
use torus_index::interval::{parse_rational, Interval, IntervalBox};
use torus_index::shifteq::LinearEndo;

/// Malformed command-line or file input.
#[derive(Debug, Error)]
#[error("{0}")]
pub struct InputError(pub String);

fn bad(msg: impl Into<String>) -> InputError {
    InputError(msg.into())
}

/// Seed region on a grid:
///
/// ```text
/// all
/// cells: 3..9, 12, 14..16        (one-dimensional index ranges)
/// cells: (1,2) (3,4)             (explicit cells)
/// box: -3/2 -1/2 | 1/2 3/2       (union of closed boxes, `lo hi; lo hi` per box)
/// ```
pub fn parse_seed(spec: &str, grid: &Grid) -> Result<BTreeSet<Cell>, InputError> {
    let spec = spec.trim();
    if spec == "all" {
        return Ok(grid.cells().into_iter().collect());
    }
    if let Some(rest) = spec.strip_prefix("cells:") {
        return parse_cells(rest, grid);
    }
    if let Some(rest) = spec.strip_prefix("box:") {
        let boxes = rest
            .split('|')
            .map(|b| parse_box(b, grid.dim()))
            .collect::<Result<Vec<_>, _>>()?;
        return Ok(grid
            .cells()
            .into_iter()
            .filter(|c| {
                let cb = grid.cell_box(c);
                boxes.iter().any(|b| b.contains_box(&cb))
            })
            .collect());
    }
    Err(bad(format!(
        "cannot read seed `{spec}`; expected `all`, `cells: ...` or `box: ...`"
    )))
}

fn parse_cells(rest: &str, grid: &Grid) -> Result<BTreeSet<Cell>, InputError> {
    let mut out = BTreeSet::new();
    let rest = rest.trim();
    if rest.contains('(') {
        for part in rest.split(')').map(str::trim).filter(|p| !p.is_empty()) {
            let c = Cell::parse(&format!("{})", part.trim_start_matches(',').trim()))
                .ok_or_else(|| bad(format!("cannot read cell `{part})`")))?;
            out.insert(c);
        }
    } else {
        if grid.dim() != 1 {
            return Err(bad("index ranges need a one-dimensional grid; list cells as (i,j)"));
        }
        for part in rest.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let num = |s: &str| {
                s.trim()
                    .parse::<i64>()
                    .map_err(|_| bad(format!("cannot read cell index `{s}`")))
            };
            match part.split_once("..") {
                Some((a, b)) => out.extend((num(a)?..num(b)?).map(|i| Cell(vec![i]))),
                None => {
                    out.insert(Cell(vec![num(part)?]));
                }
            }
        }
    }
    if let Some(c) = out.iter().find(|c| !grid.contains_cell(c)) {
        return Err(bad(format!("seed cell {c} lies outside the grid")));
    }
    Ok(out)
}

fn parse_box(s: &str, dim: usize) -> Result<IntervalBox, InputError> {
    let coords = s
        .split(';')
        .map(|part| {
            let toks: Vec<&str> = part.split_whitespace().collect();
            let [lo, hi] = toks.as_slice() else {
                return Err(bad(format!("expected `lo hi`, found `{}`", part.trim())));
            };
            let lo = parse_rational(lo).map_err(|e| bad(e.to_string()))?;
            let hi = parse_rational(hi).map_err(|e| bad(e.to_string()))?;
            Interval::new(lo, hi).map_err(|e| bad(e.to_string()))
        })
        .collect::<Result<Vec<_>, _>>()?;
    if coords.len() != dim {
        return Err(bad(format!(
            "seed box has {} coordinates, the grid has {dim}",
            coords.len()
        )));
    }
    IntervalBox::new(coords).map_err(|e| bad(e.to_string()))
}

/// Generator images, one `name -> word` per line or separated by `;`.
/// Generator names are the left-hand sides in order.
pub fn parse_images(text: &str) -> Result<(Vec<String>, Vec<Word>), InputError> {
    let mut names = Vec::new();
    let mut rhs = Vec::new();
    for (ln, raw) in text.split(['\n', ';']).enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (l, r) = line
            .split_once("->")
            .ok_or_else(|| bad(format!("entry {}: expected `generator -> word`", ln + 1)))?;
        let name = l.trim();
        if name.is_empty() || !name.chars().all(|c| c.is_alphanumeric() || c == '_') {
            return Err(bad(format!("entry {}: bad generator name `{name}`", ln + 1)));
        }
        if names.iter().any(|n| n == name) {
            return Err(bad(format!("generator `{name}` has two images")));
        }
        names.push(name.to_string());
        rhs.push(r.trim().to_string());
    }
    let free = Presentation::free(names.clone());
    let words = rhs
        .iter()
        .map(|w| free.parse_word(w).map_err(|e| bad(format!("in `{w}`: {e}"))))
        .collect::<Result<Vec<_>, _>>()?;
    Ok((names, words))
}

fn entry(v: &Value) -> Result<String, InputError> {
    match v {
        Value::Number(n) => Ok(n.to_string()),
        Value::String(s) => Ok(s.clone()),
        other => Err(bad(format!("matrix entry {other} is neither a number nor a string"))),
    }
}

fn matrix(v: &Value) -> Result<LinearEndo, InputError> {
    let rows = v
        .as_array()
        .ok_or_else(|| bad("a matrix is an array of rows"))?
        .iter()
        .map(|row| {
            row.as_array()
                .ok_or_else(|| bad("a matrix row is an array"))?
                .iter()
                .map(entry)
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    LinearEndo::from_strings(&rows).map_err(|e| bad(e.to_string()))
}

fn depth(v: &Value) -> usize {
    match v {
        Value::Array(a) => 1 + a.iter().map(depth).max().unwrap_or(0),
        _ => 0,
    }
}

/// One rational matrix `[[..],..]` or a graded list `[[[..]], ..]` of them,
/// entries as numbers or `"p/q"` strings.
pub fn parse_graded_matrices(text: &str) -> Result<Vec<LinearEndo>, InputError> {
    let v: Value = serde_json::from_str(text).map_err(|e| bad(format!("invalid JSON: {e}")))?;
    match depth(&v) {
        3 => v
            .as_array()
            .expect("depth 3")
            .iter()
            .map(matrix)
            .collect(),
        // `[]` and `[[]]` are the zero space
        1 | 2 => Ok(vec![matrix(&v)?]),
        _ => Err(bad("expected a matrix or a list of matrices")),
    }
}
