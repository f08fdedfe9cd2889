use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;
use std::time::Instant;

use anyhow::{anyhow, bail, Result};
use serde_json::Value;
use thiserror::Error;
use torus_index::chain::{ChainComplex, ChainMap, SparseMatrix};
use torus_index::cubical::{carrier_chain_map, Cell, Grid, RelativeComplex};
use torus_index::dynamics::{build_index_pair, enclose_graph, verify_index_pair, IndexPair, MultivaluedMap};
use torus_index::fpgroup::{
    abelianization, default_names, low_index_subgroups, pi1_reduced_torus, pi1_unreduced_torus,
    simplify, todd_coxeter, Presentation, Word, DEFAULT_COSET_CAP, DEFAULT_NODE_CAP,
};
use torus_index::homalg::{homology, induced_map_on_homology, HomologyGroup, IntMatrix};
use torus_index::interval::parse_map;
use torus_index::shifteq::{compare_homological_indices, LinearEndo};
use torus_index::torus::{algebraic_mapping_torus, graph_complex, TorusComplex};

use crate::fixtures::{self, Fixture};
use crate::input::{parse_seed, InputError};
use crate::report::{
    groups, integer, matrices, Comparison, EnclosureStats, FiberSummary, Group, GroupSummary,
    InvariantVerdict, PairSummary, Report, ShiftDegree, ShiftSummary, SubgroupSummary,
    TorusSummary,
};

/// The pair passed construction but failed a defining condition.
#[derive(Debug, Error)]
#[error("index pair rejected: {0}")]
pub struct PairRejected(pub String);

#[derive(Clone, Debug)]
pub struct Settings {
    pub max_index: usize,
    pub coset_cap: usize,
    pub node_cap: usize,
    pub timing: bool,
}

impl Default for Settings {
    fn default() -> Self {
        Settings {
            max_index: 3,
            coset_cap: DEFAULT_COSET_CAP,
            node_cap: DEFAULT_NODE_CAP,
            timing: false,
        }
    }
}

struct Clock {
    on: bool,
    last: Instant,
    laps: BTreeMap<String, f64>,
}

impl Clock {
    fn new(on: bool) -> Self {
        Clock {
            on,
            last: Instant::now(),
            laps: BTreeMap::new(),
        }
    }

    fn lap(&mut self, stage: &str) {
        let now = Instant::now();
        let ms = (now - self.last).as_secs_f64() * 1000.0;
        self.laps.insert(stage.into(), (ms * 10.0).round() / 10.0);
        self.last = now;
    }

    fn finish(self, r: &mut Report) {
        if self.on {
            r.timing_ms = Some(self.laps);
        }
    }
}

/// Where the map comes from.
#[derive(Clone, Debug)]
pub enum Source {
    /// Cubical enclosure with a seed for the index pair.
    Dynamics {
        map: MultivaluedMap,
        seed: BTreeSet<Cell>,
    },
    /// Cellular map of a wedge of circles given by generator images.
    Wedge { names: Vec<String>, images: Vec<Word> },
}

#[derive(Clone, Debug)]
pub struct System {
    pub label: String,
    pub source: Source,
    pub input: BTreeMap<String, String>,
}

pub fn fixture(name: &str) -> Result<&'static Fixture> {
    fixtures::find(name).ok_or_else(|| {
        let names: Vec<&str> = fixtures::FIXTURES.iter().map(|f| f.name).collect();
        InputError(format!("unknown example `{name}`; available: {}", names.join(", "))).into()
    })
}

pub fn enclose_expr(expr: &str, grid: &str) -> Result<MultivaluedMap> {
    let e = parse_map(expr)?;
    let g = Arc::new(Grid::parse_spec(grid)?);
    Ok(enclose_graph(&e, &g)?)
}

pub fn dynamics_system(label: &str, map: MultivaluedMap, seed: &str) -> Result<System> {
    let seed_cells = parse_seed(seed, map.grid())?;
    let mut input = BTreeMap::new();
    input.insert("grid".into(), map.grid().spec());
    input.insert("seed".into(), seed.into());
    Ok(System {
        label: label.into(),
        source: Source::Dynamics {
            map,
            seed: seed_cells,
        },
        input,
    })
}

pub fn wedge_system(label: &str, names: Vec<String>, images: Vec<Word>) -> System {
    let free = Presentation::free(names.clone());
    let text: Vec<String> = names
        .iter()
        .zip(&images)
        .map(|(n, w)| format!("{n} -> {}", free.format_word(w)))
        .collect();
    let mut input = BTreeMap::new();
    input.insert("images".into(), text.join("; "));
    System {
        label: label.into(),
        source: Source::Wedge { names, images },
        input,
    }
}

/// Named example; the dynamics model is used when present unless `words`
/// is set. `grid` and `seed` override the fixture's.
pub fn example_system(
    name: &str,
    words: bool,
    grid: Option<&str>,
    seed: Option<&str>,
) -> Result<System> {
    let fx = fixture(name)?;
    let mut sys = match (fx.dynamics, words) {
        (Some(d), false) => {
            let map = enclose_expr(d.expr, grid.unwrap_or(d.grid))?;
            let mut sys = dynamics_system(name, map, seed.unwrap_or(d.seed))?;
            sys.input.insert("expr".into(), d.expr.into());
            sys
        }
        _ => {
            if grid.is_some() || seed.is_some() {
                bail!(InputError(format!(
                    "example `{name}` has no interval map; --grid and --seed do not apply"
                )));
            }
            let images = fx
                .images
                .ok_or_else(|| InputError(format!("example `{name}` has no word images")))?;
            let names = default_names(images.len());
            let free = Presentation::free(names.clone());
            let words = images
                .iter()
                .map(|w| free.parse_word(w))
                .collect::<Result<Vec<_>, _>>()?;
            wedge_system(name, names, words)
        }
    };
    sys.input.insert("example".into(), name.into());
    Ok(sys)
}

pub fn enclose_report(map: &MultivaluedMap, input: BTreeMap<String, String>, output: Option<String>) -> Report {
    let mut r = Report::new("enclose", input);
    r.enclosure = Some(EnclosureStats {
        grid: map.grid().spec(),
        cells: map.len(),
        max_fiber: map.max_fiber(),
        fiber_histogram: map.fiber_histogram(),
        escaping: map.escaping_cells().iter().map(Cell::to_string).collect(),
        output,
    });
    r
}

/// Chain data of the pair `(N, L)`: unreduced and reduced complexes with
/// their self-maps.
struct PairChains {
    pair: PairSummary,
    unreduced: (ChainComplex, ChainMap),
    reduced: (ChainComplex, ChainMap),
    relative: Option<(MultivaluedMap, RelativeComplex)>,
}

fn cells(s: &BTreeSet<Cell>) -> Vec<String> {
    s.iter().map(Cell::to_string).collect()
}

fn dynamics_pair(map: &MultivaluedMap, seed: &BTreeSet<Cell>) -> Result<(IndexPair, RelativeComplex)> {
    let pair = build_index_pair(map, seed)?;
    let verdict = verify_index_pair(map, &pair);
    if !verdict.passed() {
        bail!(PairRejected(format!("{verdict:?}")));
    }
    let rc = pair.relative_complex(map.grid())?;
    Ok((pair, rc))
}

/// `⋁ₖ S¹` with one vertex and `k` edges, and the reduced complex.
fn wedge_complexes(k: usize) -> Result<(ChainComplex, ChainComplex)> {
    if k == 0 {
        return Ok((ChainComplex::new(vec![1], vec![])?, ChainComplex::zero()));
    }
    Ok((
        ChainComplex::new(vec![1, k], vec![SparseMatrix::zeros(1, k)])?,
        ChainComplex::new(vec![0, k], vec![SparseMatrix::zeros(0, k)])?,
    ))
}

fn pair_chains(sys: &System) -> Result<PairChains> {
    match &sys.source {
        Source::Dynamics { map, seed } => {
            let (pair, rc) = dynamics_pair(map, seed)?;
            let m = carrier_chain_map(map, &rc, &rc)?;
            Ok(PairChains {
                pair: PairSummary {
                    model: "dynamics".into(),
                    n_cells: pair.n.len(),
                    l_cells: pair.l.len(),
                    n: cells(&pair.n),
                    l: cells(&pair.l),
                },
                unreduced: (rc.unreduced.complex().clone(), m.unreduced),
                reduced: (rc.reduced.complex().clone(), m.reduced),
                relative: Some((map.clone(), rc)),
            })
        }
        Source::Wedge { names, images } => {
            let k = names.len();
            let (c, cr) = wedge_complexes(k)?;
            // column j holds the exponent sums of the image of generator j
            let e = IntMatrix::from_fn(k, k, |i, j| images[j].exponent_sum(i).into());
            let h1 = SparseMatrix::from_dense(&e);
            let f = if k == 0 {
                ChainMap::identity(&c)
            } else {
                ChainMap::new(&c, &c, vec![SparseMatrix::identity(1), h1.clone()])?
            };
            let fr = if k == 0 {
                ChainMap::identity(&cr)
            } else {
                ChainMap::new(&cr, &cr, vec![SparseMatrix::zeros(0, 0), h1])?
            };
            Ok(PairChains {
                pair: PairSummary {
                    model: "wedge".into(),
                    n_cells: k,
                    l_cells: 0,
                    n: names.clone(),
                    l: Vec::new(),
                },
                unreduced: (c, f),
                reduced: (cr, fr),
                relative: None,
            })
        }
    }
}

fn induced_maps(c: &ChainComplex, f: &ChainMap) -> Result<Vec<LinearEndo>> {
    (0..c.len())
        .map(|n| {
            let m = induced_map_on_homology(f, c, c, n)?;
            Ok(LinearEndo::from_integer_matrix(&m.free)?)
        })
        .collect()
}

pub fn index_report(sys: &System, settings: &Settings) -> Result<Report> {
    let mut clock = Clock::new(settings.timing);
    let chains = pair_chains(sys)?;
    clock.lap("pair");
    let mut r = Report::new("index", sys.input.clone());
    r.homology = Some(groups(&homology(&chains.reduced.0)));
    r.homological_index = Some(matrices(&induced_maps(&chains.reduced.0, &chains.reduced.1)?));
    r.pair = Some(chains.pair);
    clock.lap("homology");
    clock.finish(&mut r);
    Ok(r)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TorusMode {
    SelfMap,
    Pq,
}

fn torus_homology(t: &TorusComplex) -> Vec<HomologyGroup> {
    homology(&t.complex)
}

pub fn torus_report(sys: &System, mode: TorusMode, settings: &Settings) -> Result<Report> {
    let mut clock = Clock::new(settings.timing);
    let chains = pair_chains(sys)?;
    clock.lap("pair");
    let mut r = Report::new("torus", sys.input.clone());
    let summary = match mode {
        TorusMode::SelfMap => {
            let t = algebraic_mapping_torus(&chains.unreduced.0, &chains.unreduced.1)?;
            let tr = algebraic_mapping_torus(&chains.reduced.0, &chains.reduced.1)?;
            TorusSummary {
                mode: "self-map".into(),
                unreduced: groups(&torus_homology(&t)),
                reduced: groups(&torus_homology(&tr)),
                fiber_check: None,
            }
        }
        TorusMode::Pq => {
            let Some((map, rc)) = &chains.relative else {
                bail!(InputError(
                    "pq mode needs an interval map; this system is given by word images".into()
                ));
            };
            let g = graph_complex(map, rc)?;
            let verdict = g.fiber_verdict(rc)?;
            if !verdict.passed() {
                r.warnings.push(format!(
                    "fiber acyclicity fails at {} cells; p is not known to induce an isomorphism and the homology below may differ from the self-map model",
                    verdict.failing.len()
                ));
            }
            TorusSummary {
                mode: "pq".into(),
                unreduced: groups(&torus_homology(&g.torus()?)),
                reduced: groups(&torus_homology(&g.reduced_torus()?)),
                fiber_check: Some(FiberSummary {
                    passed: verdict.passed(),
                    failing: verdict.failing.iter().map(ToString::to_string).collect(),
                }),
            }
        }
    };
    clock.lap("torus");
    r.pair = Some(chains.pair);
    r.torus = Some(summary);
    clock.finish(&mut r);
    Ok(r)
}

fn words_of(sys: &System) -> Result<(&[String], &[Word])> {
    match &sys.source {
        Source::Wedge { names, images } => Ok((names, images)),
        Source::Dynamics { .. } => Err(anyhow!(InputError(
            "the fundamental group needs word images; use an example with images or --images".into()
        ))),
    }
}

fn group_summary(p: &Presentation, reduced: bool, order: bool, settings: &Settings, clock: &mut Clock) -> Result<GroupSummary> {
    let records = low_index_subgroups(p, settings.max_index, settings.node_cap)?;
    clock.lap("low-index");
    let order = if order {
        let t = todd_coxeter(p, &[], settings.coset_cap)?;
        clock.lap("cosets");
        Some(t.index())
    } else {
        None
    };
    let invariants: Vec<Vec<Value>> = records
        .iter()
        .map(|s| s.invariants().iter().map(integer).collect())
        .collect();
    Ok(GroupSummary {
        reduced,
        presentation: p.to_string(),
        simplified: simplify(p).to_string(),
        abelianization: Group::new(1, &abelianization(p)),
        max_index: settings.max_index,
        indices: records.iter().map(|s| s.index).collect(),
        abelian_invariants: invariants.clone(),
        subgroups: records
            .iter()
            .zip(invariants)
            .map(|(s, invariants)| SubgroupSummary {
                index: s.index,
                invariants,
                generators: s.generators.iter().map(|w| p.format_word(w)).collect(),
            })
            .collect(),
        order,
    })
}

pub fn pi1_report(sys: &System, reduced: bool, order: bool, settings: &Settings) -> Result<Report> {
    let mut clock = Clock::new(settings.timing);
    let (names, images) = words_of(sys)?;
    let p = if reduced {
        pi1_reduced_torus(names, images)?
    } else {
        pi1_unreduced_torus(names, images)?
    };
    let group = group_summary(&p, reduced, order, settings, &mut clock)?;
    let chains = pair_chains(sys)?;
    let mut r = Report::new("pi1", sys.input.clone());
    r.input.insert("reduced".into(), reduced.to_string());
    r.homological_index = Some(matrices(&induced_maps(&chains.reduced.0, &chains.reduced.1)?));
    r.group = Some(group);
    clock.finish(&mut r);
    Ok(r)
}

/// Group invariants of a presentation given directly.
pub fn presentation_report(
    p: &Presentation,
    input: BTreeMap<String, String>,
    order: bool,
    settings: &Settings,
) -> Result<Report> {
    let mut clock = Clock::new(settings.timing);
    let mut r = Report::new("pi1", input);
    r.group = Some(group_summary(p, false, order, settings, &mut clock)?);
    clock.finish(&mut r);
    Ok(r)
}

pub fn shift_eq_report(a: &[LinearEndo], b: &[LinearEndo], input: BTreeMap<String, String>) -> Report {
    let c = compare_homological_indices(a, b);
    let mut r = Report::new("shift-eq", input);
    r.shift_equivalence = Some(ShiftSummary {
        field: "Q".into(),
        equivalent: c.equivalent(),
        degrees: c
            .degrees
            .iter()
            .map(|d| ShiftDegree {
                degree: d.degree,
                equivalent: d.equivalent,
                left: d.left.iter().map(ToString::to_string).collect(),
                right: d.right.iter().map(ToString::to_string).collect(),
            })
            .collect(),
    });
    r
}

fn endos(ms: &[Vec<Vec<String>>]) -> Result<Vec<LinearEndo>> {
    ms.iter()
        .map(|m| LinearEndo::from_strings(m).map_err(|e| InputError(e.to_string()).into()))
        .collect()
}

fn texts(gs: &[Group]) -> String {
    let parts: Vec<&str> = significant(gs).iter().map(|g| g.text.as_str()).collect();
    format!("({})", parts.join(", "))
}

/// Drops trailing zero groups, so complexes of different lengths compare equal.
fn significant(gs: &[Group]) -> &[Group] {
    let end = gs
        .iter()
        .rposition(|g| g.betti > 0 || !g.torsion.is_empty())
        .map_or(0, |i| i + 1);
    &gs[..end]
}

/// Compares the invariants present in both reports.
pub fn compare(left: &Report, right: &Report, left_name: &str, right_name: &str) -> Result<Comparison> {
    for r in [left, right] {
        if r.schema != crate::report::SCHEMA {
            bail!(InputError(format!("unsupported report schema `{}`", r.schema)));
        }
    }
    if left.kind != right.kind {
        bail!(InputError(format!(
            "cannot compare a `{}` report with a `{}` report",
            left.kind, right.kind
        )));
    }
    let mut out = Vec::new();
    if let (Some(a), Some(b)) = (&left.homological_index, &right.homological_index) {
        let c = compare_homological_indices(&endos(a)?, &endos(b)?);
        let detail = match c.witness() {
            Some(n) => format!("shift inequivalent over Q in degree {n}"),
            None => "shift equivalent over Q in every degree".into(),
        };
        out.push(InvariantVerdict {
            invariant: "homological index".into(),
            distinguishable: !c.equivalent(),
            detail,
        });
    }
    if let (Some(a), Some(b)) = (&left.torus, &right.torus) {
        let differ = significant(&a.unreduced) != significant(&b.unreduced)
            || significant(&a.reduced) != significant(&b.reduced);
        out.push(InvariantVerdict {
            invariant: "torus homology".into(),
            distinguishable: differ,
            detail: format!("{} vs {}", texts(&a.unreduced), texts(&b.unreduced)),
        });
    }
    let mut depth = None;
    if let (Some(a), Some(b)) = (&left.group, &right.group) {
        if a.max_index != b.max_index {
            bail!(InputError(format!(
                "fingerprints computed to different depths ({} and {})",
                a.max_index, b.max_index
            )));
        }
        depth = Some(a.max_index);
        let (fa, fb) = (a.fingerprint(), b.fingerprint());
        let detail = if fa.0 != fb.0 {
            format!("abelianizations {} vs {}", fa.0.text, fb.0.text)
        } else if fa.1 != fb.1 {
            let only = |x: &[(usize, Vec<serde_json::Value>)], y: &[(usize, Vec<serde_json::Value>)]| {
                x.iter()
                    .find(|s| x.iter().filter(|t| t == s).count() != y.iter().filter(|t| t == s).count())
                    .map(|(i, inv)| format!("index {i} {}", serde_json::to_string(inv).expect("json")))
            };
            let w = only(&fa.1, &fb.1)
                .or_else(|| only(&fb.1, &fa.1))
                .unwrap_or_default();
            format!("low-index subgroups differ at {w}")
        } else {
            format!("equal abelianization and subgroups up to index {}", a.max_index)
        };
        out.push(InvariantVerdict {
            invariant: "fundamental group".into(),
            distinguishable: fa != fb,
            detail,
        });
    }
    if out.is_empty() {
        bail!(InputError("the reports share no comparable invariant".into()));
    }
    let verdict = if out.iter().any(|v| v.distinguishable) {
        "distinguishable".to_string()
    } else if let Some(k) = depth {
        format!("not distinguished at depth {k}")
    } else {
        "not distinguished".to_string()
    };
    Ok(Comparison {
        schema: crate::report::SCHEMA.into(),
        kind: "compare".into(),
        left: left_name.into(),
        right: right_name.into(),
        invariants: out,
        verdict,
    })
}
