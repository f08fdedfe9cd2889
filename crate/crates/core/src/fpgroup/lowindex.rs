use std::cmp::Ordering;

use num_bigint::BigInt;

use super::schreier::transversal;
use super::word::{inverse_column, Word};
use super::{abelianization, subgroup_presentation, CosetTable, FpGroupError, Presentation};
use crate::homalg::HomologyGroup;

pub const DEFAULT_NODE_CAP: usize = 5_000_000;

const UNDEF: usize = usize::MAX;

/// One conjugacy class of subgroups of finite index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubgroupRecord {
    pub index: usize,
    pub abelian_invariants: HomologyGroup,
    /// Schreier generators as words in the ambient generators.
    pub generators: Vec<Word>,
    pub table: CosetTable,
}

impl SubgroupRecord {
    /// Invariants in the `0 … p^k …` convention.
    pub fn invariants(&self) -> Vec<BigInt> {
        self.abelian_invariants.primary_invariants()
    }
}

/// Partial permutation representation during the search.
#[derive(Clone)]
struct Partial {
    rows: Vec<Vec<usize>>,
}

impl Partial {
    fn set(&mut self, c: usize, x: usize, d: usize) {
        self.rows[c][x] = d;
        self.rows[d][inverse_column(x)] = c;
    }

    /// Deduces entries forced by the relators; `false` on contradiction.
    fn close(&mut self, rels: &[Vec<usize>]) -> bool {
        loop {
            let mut changed = false;
            for c in 0..self.rows.len() {
                for r in rels {
                    match self.trace(c, r) {
                        Trace::Bad => return false,
                        Trace::Deduce(f, x, b) => {
                            self.set(f, x, b);
                            changed = true;
                        }
                        Trace::Ok => {}
                    }
                }
            }
            if !changed {
                return true;
            }
        }
    }

    fn trace(&self, c: usize, w: &[usize]) -> Trace {
        let (mut f, mut i) = (c, 0);
        let (mut b, mut j) = (c, w.len());
        while i < j && self.rows[f][w[i]] != UNDEF {
            f = self.rows[f][w[i]];
            i += 1;
        }
        if i == j {
            return if f == c { Trace::Ok } else { Trace::Bad };
        }
        while j > i && self.rows[b][inverse_column(w[j - 1])] != UNDEF {
            b = self.rows[b][inverse_column(w[j - 1])];
            j -= 1;
        }
        if j == i {
            return if f == b { Trace::Ok } else { Trace::Bad };
        }
        if j == i + 1 {
            let x = w[i];
            // the inverse slot of b may already be taken
            if self.rows[b][inverse_column(x)] != UNDEF {
                return Trace::Bad;
            }
            return Trace::Deduce(f, x, b);
        }
        Trace::Ok
    }

    fn first_gap(&self) -> Option<(usize, usize)> {
        self.rows.iter().enumerate().find_map(|(c, row)| {
            row.iter().position(|&v| v == UNDEF).map(|x| (c, x))
        })
    }
}

enum Trace {
    Ok,
    Bad,
    Deduce(usize, usize, usize),
}

fn compare_rows(a: &[Vec<usize>], b: &[Vec<usize>]) -> Ordering {
    a.iter().flatten().cmp(b.iter().flatten())
}

/// Keeps only the least table among all re-rootings, one per conjugacy class.
fn is_canonical(t: &CosetTable) -> bool {
    (1..t.index()).all(|root| {
        let r = t.standardized_from(root).expect("transitive");
        compare_rows(r.rows(), t.rows()) != Ordering::Less
    })
}

/// Conjugacy classes of subgroups of index at most `max_index`, sorted by
/// index and then by abelian invariants.
pub fn low_index_subgroups(
    p: &Presentation,
    max_index: usize,
    node_cap: usize,
) -> Result<Vec<SubgroupRecord>, FpGroupError> {
    let p = &p.normalized();
    let cols = 2 * p.ngens();
    let rels: Vec<Vec<usize>> = p.relators().iter().map(Word::columns).collect();
    let mut tables = Vec::new();
    let mut nodes = 0usize;
    let start = Partial {
        rows: vec![vec![UNDEF; cols]],
    };
    if max_index >= 1 {
        let mut start = start;
        if start.close(&rels) {
            search(&start, max_index, &rels, &mut tables, &mut nodes, node_cap)?;
        }
    }
    let mut out = Vec::with_capacity(tables.len());
    for t in tables {
        let sub = subgroup_presentation(p, &t)?;
        let tr = transversal(&t);
        let generators = (0..tr.gens.len()).map(|k| tr.generator_word(&t, k)).collect();
        out.push(SubgroupRecord {
            index: t.index(),
            abelian_invariants: abelianization(&sub),
            generators,
            table: t,
        });
    }
    out.sort_by(|a, b| {
        (a.index, a.invariants(), a.table.rows()).cmp(&(b.index, b.invariants(), b.table.rows()))
    });
    Ok(out)
}

fn search(
    t: &Partial,
    max_index: usize,
    rels: &[Vec<usize>],
    out: &mut Vec<CosetTable>,
    nodes: &mut usize,
    cap: usize,
) -> Result<(), FpGroupError> {
    *nodes += 1;
    if *nodes > cap {
        return Err(FpGroupError::NodeLimit { limit: cap });
    }
    let Some((c, x)) = t.first_gap() else {
        let table = CosetTable::from_rows(t.rows[0].len() / 2, t.rows.clone());
        if is_canonical(&table) {
            out.push(table);
        }
        return Ok(());
    };
    let xi = inverse_column(x);
    let n = t.rows.len();
    for d in 0..n {
        if t.rows[d][xi] != UNDEF {
            continue;
        }
        let mut next = t.clone();
        next.set(c, x, d);
        if next.close(rels) {
            search(&next, max_index, rels, out, nodes, cap)?;
        }
    }
    if n < max_index {
        let mut next = t.clone();
        next.rows.push(vec![UNDEF; t.rows[0].len()]);
        next.set(c, x, n);
        if next.close(rels) {
            search(&next, max_index, rels, out, nodes, cap)?;
        }
    }
    Ok(())
}

/// Comparable summary of a group: abelianization and the sorted
/// `(index, invariants)` pairs of its low-index subgroups.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fingerprint {
    pub max_index: usize,
    pub abelianization: HomologyGroup,
    pub subgroups: Vec<(usize, Vec<BigInt>)>,
}

impl Fingerprint {
    pub fn indices(&self) -> Vec<usize> {
        self.subgroups.iter().map(|(i, _)| *i).collect()
    }
}

pub fn fingerprint(
    p: &Presentation,
    max_index: usize,
    node_cap: usize,
) -> Result<Fingerprint, FpGroupError> {
    let records = low_index_subgroups(p, max_index, node_cap)?;
    Ok(Fingerprint {
        max_index,
        abelianization: abelianization(p),
        subgroups: records.iter().map(|r| (r.index, r.invariants())).collect(),
    })
}
