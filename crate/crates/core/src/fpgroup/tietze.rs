use super::{Presentation, Word};

/// Removes generators that occur exactly once in some relator, substituting
/// the word they equal everywhere else. The group is unchanged.
pub fn simplify(p: &Presentation) -> Presentation {
    let mut gens = p.gens().to_vec();
    let mut rels: Vec<Word> = p.normalized().relators().to_vec();
    loop {
        let found = rels.iter().enumerate().find_map(|(ri, r)| {
            (0..gens.len())
                .find(|&g| r.occurrences(g) == 1)
                .map(|g| (ri, g))
        });
        let Some((ri, g)) = found else { break };
        let r = rels.remove(ri);
        let pos = r
            .letters()
            .iter()
            .position(|l| l.unsigned_abs() as usize == g + 1)
            .expect("occurs once");
        let rot = r.rotated(pos);
        let first = rot.letters()[0];
        let rest = Word::from_letters(&rot.letters()[1..]);
        // g^ε · rest = 1
        let value = if first > 0 { rest.inverse() } else { rest };
        let mut images: Vec<Word> = (0..gens.len()).map(Word::generator).collect();
        images[g] = value;
        // shift the generators above g down by one
        let renumber: Vec<Word> = (0..gens.len())
            .map(|h| match h.cmp(&g) {
                std::cmp::Ordering::Less => Word::generator(h),
                std::cmp::Ordering::Equal => Word::identity(),
                std::cmp::Ordering::Greater => Word::generator(h - 1),
            })
            .collect();
        rels = rels
            .iter()
            .map(|w| w.substitute(&images).substitute(&renumber).cyclically_reduced())
            .filter(|w| !w.is_empty())
            .collect();
        gens.remove(g);
        rels.dedup();
    }
    Presentation::new(gens, rels)
        .expect("generators renumbered consistently")
        .normalized()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fpgroup::abelianization;

    #[test]
    fn horseshoe_g_reduces_to_two_generators() {
        let p = Presentation::parse("gens: a, b, z\nrel: a z = z a b\nrel: b z = z a b").unwrap();
        let s = simplify(&p);
        assert!(s.ngens() <= 2);
        assert_eq!(abelianization(&s), abelianization(&p));
    }

    #[test]
    fn reduced_degree_two_is_trivial() {
        let p = Presentation::parse("gens: a\nrel: a = a^2").unwrap();
        let s = simplify(&p);
        assert_eq!(s.ngens(), 0);
        assert!(s.relators().is_empty());
    }

    #[test]
    fn nothing_to_remove() {
        let p = Presentation::parse("gens: a, z\nrel: a z = z a^2").unwrap();
        assert_eq!(simplify(&p), p.normalized());
    }
}
