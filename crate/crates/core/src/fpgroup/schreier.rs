use std::collections::BTreeMap;

use super::word::{column, Word};
use super::{CosetTable, FpGroupError, Presentation};

/// Spanning tree of the coset graph and the Schreier generators it leaves.
pub(crate) struct Transversal {
    /// representative word of each coset
    pub reps: Vec<Word>,
    /// non-tree edge `(coset, generator)` → Schreier generator number
    pub gens: BTreeMap<(usize, usize), usize>,
}

pub(crate) fn transversal(t: &CosetTable) -> Transversal {
    let n = t.index();
    let mut reps: Vec<Option<Word>> = vec![None; n];
    let mut tree: Vec<(usize, usize)> = Vec::new();
    reps[0] = Some(Word::identity());
    let mut order = vec![0];
    let mut i = 0;
    while i < order.len() {
        let c = order[i];
        i += 1;
        for x in 0..2 * t.ngens() {
            let d = t.get(c, x).expect("closed table");
            if reps[d].is_none() {
                let g = x / 2;
                let step = if x % 2 == 0 {
                    Word::generator(g)
                } else {
                    Word::inverse_generator(g)
                };
                reps[d] = Some(reps[c].as_ref().expect("visited").mul(&step));
                // store the edge by its positive orientation
                tree.push(if x % 2 == 0 { (c, g) } else { (d, g) });
                order.push(d);
            }
        }
    }
    let mut gens = BTreeMap::new();
    for c in 0..n {
        for g in 0..t.ngens() {
            if !tree.contains(&(c, g)) {
                let k = gens.len();
                gens.insert((c, g), k);
            }
        }
    }
    Transversal {
        reps: reps.into_iter().map(|r| r.expect("connected table")).collect(),
        gens,
    }
}

impl Transversal {
    /// Rewrites `w` read from coset `c` as a word in the Schreier generators.
    pub fn rewrite(&self, t: &CosetTable, c: usize, w: &Word) -> Word {
        let mut out = Word::identity();
        let mut e = c;
        for &l in w.letters() {
            let g = l.unsigned_abs() as usize - 1;
            let next = t.get(e, column(l)).expect("closed table");
            let (from, inverse) = if l > 0 { (e, false) } else { (next, true) };
            if let Some(&k) = self.gens.get(&(from, g)) {
                out = out.mul(&if inverse {
                    Word::inverse_generator(k)
                } else {
                    Word::generator(k)
                });
            }
            e = next;
        }
        out
    }

    /// Schreier generator `k` as a word in the original generators.
    pub fn generator_word(&self, t: &CosetTable, k: usize) -> Word {
        let (&(c, g), _) = self.gens.iter().find(|(_, &v)| v == k).expect("generator exists");
        let d = t.get(c, 2 * g).expect("closed table");
        self.reps[c]
            .mul(&Word::generator(g))
            .mul(&self.reps[d].inverse())
    }
}

/// Reidemeister–Schreier presentation of the subgroup described by a closed
/// coset table: Schreier generators for the non-tree edges, relators every
/// relator rewritten from every coset.
pub fn subgroup_presentation(p: &Presentation, t: &CosetTable) -> Result<Presentation, FpGroupError> {
    if !t.is_closed() || t.ngens() != p.ngens() {
        return Err(FpGroupError::TableNotClosed);
    }
    let tr = transversal(t);
    let names: Vec<String> = tr
        .gens
        .keys()
        .map(|&(c, g)| format!("{}_{c}", p.gens()[g]))
        .collect();
    let mut relators = Vec::new();
    for r in p.relators() {
        for c in 0..t.index() {
            relators.push(tr.rewrite(t, c, r));
        }
    }
    Ok(Presentation::new(names, relators)?.normalized())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fpgroup::{abelianization, todd_coxeter};
    use crate::homalg::HomologyGroup;

    #[test]
    fn index_one_keeps_the_relators() {
        let p = Presentation::parse("gens: a, z\nrel: a z = z a^2").unwrap();
        let t = todd_coxeter(&p, &[Word::generator(0), Word::generator(1)], 10).unwrap();
        let s = subgroup_presentation(&p, &t).unwrap();
        assert_eq!(s.ngens(), 2);
        assert_eq!(s.relators().len(), 1);
        assert_eq!(abelianization(&s), abelianization(&p));
    }

    #[test]
    fn even_integers() {
        let p = Presentation::parse("gens: a").unwrap();
        let t = todd_coxeter(&p, &[Word::generator(0).pow(2)], 10).unwrap();
        let s = subgroup_presentation(&p, &t).unwrap();
        assert_eq!(s.ngens(), 1);
        assert!(s.relators().is_empty());
        let tr = transversal(&t);
        assert_eq!(tr.generator_word(&t, 0), Word::generator(0).pow(2));
    }

    #[test]
    fn index_two_subgroup_of_the_degree_two_group() {
        let p = Presentation::parse("gens: a, z\nrel: a z = z a^2").unwrap();
        // the kernel of z ↦ 1 ∈ ℤ/2 contains a and z²
        let t = todd_coxeter(&p, &[Word::generator(0), Word::generator(1).pow(2)], 100).unwrap();
        assert_eq!(t.index(), 2);
        let s = subgroup_presentation(&p, &t).unwrap();
        assert_eq!(abelianization(&s), HomologyGroup::new(1, &[3]));
    }

    #[test]
    fn open_tables_are_rejected() {
        let p = Presentation::parse("gens: a").unwrap();
        let t = CosetTable::from_rows(1, vec![vec![usize::MAX, usize::MAX]]);
        assert_eq!(subgroup_presentation(&p, &t), Err(FpGroupError::TableNotClosed));
    }
}
