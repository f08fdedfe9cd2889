use super::word::{inverse_column, Word};
use super::{FpGroupError, Presentation};

pub const DEFAULT_COSET_CAP: usize = 1_000_000;

const UNDEF: usize = usize::MAX;

/// Action of the generators on the cosets of a subgroup. Column `2g` is
/// generator `g`, column `2g+1` its inverse; coset `0` is the subgroup.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetTable {
    ngens: usize,
    rows: Vec<Vec<usize>>,
}

impl CosetTable {
    pub(crate) fn from_rows(ngens: usize, rows: Vec<Vec<usize>>) -> Self {
        CosetTable { ngens, rows }
    }

    pub fn ngens(&self) -> usize {
        self.ngens
    }

    /// Number of cosets.
    pub fn index(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    pub fn get(&self, coset: usize, column: usize) -> Option<usize> {
        let v = self.rows[coset][column];
        (v != UNDEF).then_some(v)
    }

    pub fn is_closed(&self) -> bool {
        self.rows.iter().all(|r| r.iter().all(|&v| v != UNDEF))
    }

    /// Image of `coset` under `w`, if every step is defined.
    pub fn act(&self, coset: usize, w: &Word) -> Option<usize> {
        w.columns().into_iter().try_fold(coset, |c, x| self.get(c, x))
    }

    /// Closed, columns mutually inverse, and every relator fixes every coset.
    pub fn is_consistent_with(&self, p: &Presentation) -> bool {
        if !self.is_closed() || self.ngens != p.ngens() {
            return false;
        }
        for (c, row) in self.rows.iter().enumerate() {
            for (x, &d) in row.iter().enumerate() {
                if self.rows[d][inverse_column(x)] != c {
                    return false;
                }
            }
        }
        (0..self.index()).all(|c| p.relators().iter().all(|r| self.act(c, r) == Some(c)))
    }

    /// Renumbers cosets in order of first appearance scanning rows from
    /// `root`, column by column. Returns `None` if some coset is unreachable.
    pub fn standardized_from(&self, root: usize) -> Option<CosetTable> {
        let n = self.index();
        let mut new_of = vec![UNDEF; n];
        let mut order = vec![root];
        new_of[root] = 0;
        let mut i = 0;
        while i < order.len() {
            let c = order[i];
            for &d in &self.rows[c] {
                if d != UNDEF && new_of[d] == UNDEF {
                    new_of[d] = order.len();
                    order.push(d);
                }
            }
            i += 1;
        }
        if order.len() != n {
            return None;
        }
        let rows = order
            .iter()
            .map(|&c| {
                self.rows[c]
                    .iter()
                    .map(|&d| if d == UNDEF { UNDEF } else { new_of[d] })
                    .collect()
            })
            .collect();
        Some(CosetTable {
            ngens: self.ngens,
            rows,
        })
    }

    pub fn standardized(&self) -> CosetTable {
        self.standardized_from(0).expect("enumerated tables are connected")
    }
}

struct Enumerator<'a> {
    p: &'a Presentation,
    cols: usize,
    table: Vec<Vec<usize>>,
    parent: Vec<usize>,
    live: usize,
    cap: usize,
}

impl Enumerator<'_> {
    fn is_live(&self, c: usize) -> bool {
        self.parent[c] == c
    }

    fn new_coset(&mut self) -> usize {
        let c = self.table.len();
        self.table.push(vec![UNDEF; self.cols]);
        self.parent.push(c);
        self.live += 1;
        c
    }

    fn define(&mut self, c: usize, x: usize) -> Result<usize, FpGroupError> {
        if self.live >= self.cap {
            return Err(FpGroupError::CosetLimit { limit: self.cap });
        }
        let d = self.new_coset();
        self.table[c][x] = d;
        self.table[d][inverse_column(x)] = c;
        Ok(d)
    }

    fn rep(&mut self, c: usize) -> usize {
        let mut r = c;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut c = c;
        while self.parent[c] != r {
            let next = self.parent[c];
            self.parent[c] = r;
            c = next;
        }
        r
    }

    fn merge(&mut self, a: usize, b: usize, queue: &mut Vec<usize>) {
        let (a, b) = (self.rep(a), self.rep(b));
        if a == b {
            return;
        }
        let (keep, drop) = if a < b { (a, b) } else { (b, a) };
        self.parent[drop] = keep;
        self.live -= 1;
        queue.push(drop);
    }

    fn coincidence(&mut self, a: usize, b: usize) {
        let mut queue = Vec::new();
        self.merge(a, b, &mut queue);
        let mut i = 0;
        while i < queue.len() {
            let e = queue[i];
            i += 1;
            for x in 0..self.cols {
                let f = self.table[e][x];
                if f == UNDEF {
                    continue;
                }
                let xi = inverse_column(x);
                self.table[f][xi] = UNDEF;
                let e1 = self.rep(e);
                let f1 = self.rep(f);
                if self.table[e1][x] != UNDEF {
                    let t = self.table[e1][x];
                    self.merge(f1, t, &mut queue);
                } else if self.table[f1][xi] != UNDEF {
                    let t = self.table[f1][xi];
                    self.merge(e1, t, &mut queue);
                } else {
                    self.table[e1][x] = f1;
                    self.table[f1][xi] = e1;
                }
            }
        }
    }

    /// Traces `w` from `c` in both directions; defines cosets to close the
    /// gap when `fill` is set, otherwise only deduces.
    fn scan(&mut self, c: usize, w: &[usize], fill: bool) -> Result<(), FpGroupError> {
        if w.is_empty() {
            return Ok(());
        }
        let mut f = c;
        let mut b = c;
        let mut i = 0usize;
        let mut j = w.len();
        loop {
            while i < j && self.table[f][w[i]] != UNDEF {
                f = self.table[f][w[i]];
                i += 1;
            }
            if i == j {
                if f != c {
                    self.coincidence(f, c);
                }
                return Ok(());
            }
            while j > i && self.table[b][inverse_column(w[j - 1])] != UNDEF {
                b = self.table[b][inverse_column(w[j - 1])];
                j -= 1;
            }
            if j == i {
                self.coincidence(f, b);
                return Ok(());
            }
            if j == i + 1 {
                self.table[f][w[i]] = b;
                self.table[b][inverse_column(w[i])] = f;
                return Ok(());
            }
            if !fill {
                return Ok(());
            }
            self.define(f, w[i])?;
        }
    }

    fn lookahead(&mut self, rels: &[Vec<usize>]) -> Result<(), FpGroupError> {
        let mut c = 0;
        while c < self.table.len() {
            for r in rels {
                if !self.is_live(c) {
                    break;
                }
                self.scan(c, r, false)?;
            }
            c += 1;
        }
        Ok(())
    }

    fn finish(mut self) -> CosetTable {
        let mut new_of = vec![UNDEF; self.table.len()];
        let mut k = 0;
        for c in 0..self.table.len() {
            if self.is_live(c) {
                new_of[c] = k;
                k += 1;
            }
        }
        let rows = (0..self.table.len())
            .filter(|&c| self.parent[c] == c)
            .map(|c| {
                std::mem::take(&mut self.table[c])
                    .into_iter()
                    .map(|d| if d == UNDEF { UNDEF } else { new_of[d] })
                    .collect()
            })
            .collect();
        CosetTable::from_rows(self.p.ngens(), rows).standardized()
    }
}

/// Hasselgrove–Leech–Trotter enumeration of the cosets of `⟨subgroup⟩` with
/// a lookahead pass when `cap` live cosets are reached.
pub fn todd_coxeter(
    p: &Presentation,
    subgroup: &[Word],
    cap: usize,
) -> Result<CosetTable, FpGroupError> {
    let cap = cap.max(1);
    let p = &p.normalized();
    let cols = 2 * p.ngens();
    let mut e = Enumerator {
        p,
        cols,
        table: Vec::new(),
        parent: Vec::new(),
        live: 0,
        cap,
    };
    e.new_coset();
    let rels: Vec<Vec<usize>> = p.relators().iter().map(Word::columns).collect();
    let subs: Vec<Vec<usize>> = subgroup.iter().map(Word::columns).collect();
    for w in &subs {
        with_lookahead(&mut e, &rels, |e| e.scan(0, w, true))?;
    }
    let mut c = 0;
    while c < e.table.len() {
        for r in &rels {
            if !e.is_live(c) {
                break;
            }
            with_lookahead(&mut e, &rels, |e| {
                if e.is_live(c) {
                    e.scan(c, r, true)
                } else {
                    Ok(())
                }
            })?;
        }
        for x in 0..cols {
            if !e.is_live(c) {
                break;
            }
            if e.table[c][x] == UNDEF {
                with_lookahead(&mut e, &rels, |e| {
                    if e.is_live(c) && e.table[c][x] == UNDEF {
                        e.define(c, x)?;
                    }
                    Ok(())
                })?;
            }
        }
        c += 1;
    }
    Ok(e.finish())
}

fn with_lookahead(
    e: &mut Enumerator,
    rels: &[Vec<usize>],
    mut step: impl FnMut(&mut Enumerator) -> Result<(), FpGroupError>,
) -> Result<(), FpGroupError> {
    match step(e) {
        Err(FpGroupError::CosetLimit { .. }) => {
            e.lookahead(rels)?;
            if e.live >= e.cap {
                return Err(FpGroupError::CosetLimit { limit: e.cap });
            }
            step(e)
        }
        other => other,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pres(text: &str) -> Presentation {
        Presentation::parse(text).unwrap()
    }

    #[test]
    fn cyclic_groups() {
        let p = pres("gens: a\nrel: a^3");
        let t = todd_coxeter(&p, &[], 100).unwrap();
        assert_eq!(t.index(), 3);
        assert!(t.is_consistent_with(&p));
        let free = pres("gens: a");
        let t = todd_coxeter(&free, &[free.parse_word("a^2").unwrap()], 100).unwrap();
        assert_eq!(t.index(), 2);
    }

    #[test]
    fn whole_group_has_index_one() {
        let p = pres("gens: a, z\nrel: a z = z a^2");
        let gens = [Word::generator(0), Word::generator(1)];
        assert_eq!(todd_coxeter(&p, &gens, 100).unwrap().index(), 1);
    }

    #[test]
    fn symmetric_group_of_degree_three() {
        let p = pres("gens: s, t\nrel: s^2\nrel: t^3\nrel: s t s t");
        let t = todd_coxeter(&p, &[], 1000).unwrap();
        assert_eq!(t.index(), 6);
        assert!(t.is_consistent_with(&p));
        let t = todd_coxeter(&p, &[Word::generator(0)], 1000).unwrap();
        assert_eq!(t.index(), 3);
    }

    #[test]
    fn infinite_group_hits_the_cap() {
        let p = pres("gens: a, z\nrel: a z = z a^2");
        assert_eq!(
            todd_coxeter(&p, &[], 50),
            Err(FpGroupError::CosetLimit { limit: 50 })
        );
    }

    #[test]
    fn small_cap_recovers_through_lookahead() {
        // ⟨a, b | a^2, b^2, (ab)^3⟩ ≅ S₃; a tight cap forces lookahead passes
        let p = pres("gens: a, b\nrel: a^2\nrel: b^2\nrel: a b a b a b");
        let t = todd_coxeter(&p, &[], 12).unwrap();
        assert_eq!(t.index(), 6);
        assert!(t.is_consistent_with(&p));
    }

    #[test]
    fn standardization_is_canonical() {
        let p = pres("gens: a\nrel: a^4");
        let t = todd_coxeter(&p, &[], 100).unwrap();
        assert_eq!(t.standardized(), t);
        let rerooted = t.standardized_from(2).unwrap();
        assert_eq!(rerooted, t);
    }
}
