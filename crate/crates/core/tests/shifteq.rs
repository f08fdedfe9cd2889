use num_rational::BigRational;
use num_traits::Zero;
use proptest::prelude::*;
use torus_index::homalg::rational::is_invertible;
use torus_index::homalg::{IntMatrix, Poly, QMatrix};
use torus_index::shifteq::{
    compare_homological_indices, invertible_part, shift_equivalent, LinearEndo,
};

fn endo(rows: &[Vec<i64>]) -> LinearEndo {
    LinearEndo::from_i64(rows).unwrap()
}

fn trace(m: &QMatrix) -> BigRational {
    (0..m.rows()).fold(BigRational::zero(), |acc, i| acc + m[(i, i)].clone())
}

/// Traces of Aᵏ for k = 1..=n see exactly the nonzero spectrum.
fn power_traces(a: &LinearEndo, n: usize) -> Vec<BigRational> {
    let mut p = a.matrix().clone();
    let mut out = Vec::new();
    for _ in 0..n {
        out.push(trace(&p));
        p = p.mul(a.matrix());
    }
    out
}

#[test]
fn circle_identity_against_an_invertible_plane_map() {
    let one = endo(&[vec![1]]);
    for b in [
        vec![vec![0, 1], vec![1, 0]],
        vec![vec![2, 1], vec![1, 1]],
        vec![vec![1, 0], vec![0, 1]],
        vec![vec![0, -1], vec![1, 1]],
    ] {
        assert!(!shift_equivalent(&one, &endo(&b)));
    }
}

#[test]
fn nilpotent_is_equivalent_to_the_zero_space() {
    let n = endo(&[vec![0, 1, 0], vec![0, 0, 1], vec![0, 0, 0]]);
    assert!(shift_equivalent(&n, &LinearEndo::empty()));
}

#[test]
fn identity_and_its_double_differ() {
    let id = LinearEndo::identity(2);
    let double = endo(&[vec![2, 0], vec![0, 2]]);
    assert!(!shift_equivalent(&id, &double));
    assert_eq!(id.canonical_form(), vec![Poly::from_i64(&[-1, 1]); 2]);
    assert_eq!(double.canonical_form(), vec![Poly::from_i64(&[-2, 1]); 2]);
}

#[test]
fn eventual_image_absorbs_nilpotent_blocks() {
    // [2] ⊕ Jordan nilpotent block vs [2]
    let a = endo(&[vec![2, 0, 0], vec![0, 0, 1], vec![0, 0, 0]]);
    assert!(shift_equivalent(&a, &endo(&[vec![2]])));
    assert_eq!(invertible_part(&a), endo(&[vec![2]]));
}

#[test]
fn rectangular_factorization_gives_shift_equivalent_products() {
    // A = RS and B = SR are shift equivalent with lag one
    let r = IntMatrix::from_i64(&[vec![1, 2], vec![0, 1], vec![1, 1]]);
    let s = IntMatrix::from_i64(&[vec![1, 0, 1], vec![2, 1, 0]]);
    let a = LinearEndo::from_integer_matrix(&r.mul(&s)).unwrap();
    let b = LinearEndo::from_integer_matrix(&s.mul(&r)).unwrap();
    assert_eq!(a.dim(), 3);
    assert!(shift_equivalent(&a, &b));
}

#[test]
fn doubling_against_cubic_index_data() {
    let f1 = vec![LinearEndo::empty(), endo(&[vec![1]])];
    let f2 = vec![LinearEndo::empty(), endo(&[vec![0, 1], vec![1, 0]])];
    let c = compare_homological_indices(&f1, &f2);
    assert!(!c.equivalent());
    assert_eq!(c.witness(), Some(1));
    assert!(compare_homological_indices(&f1, &f1).equivalent());
}

#[test]
fn zero_maps_look_like_the_empty_index() {
    let commutator = vec![endo(&[vec![0]]), endo(&[vec![0, 0], vec![0, 0]])];
    let c = compare_homological_indices(&commutator, &[]);
    assert!(c.equivalent());
    assert_eq!(c.degrees.len(), 2);
}

#[test]
fn rational_entries() {
    let strings = vec![
        vec!["1/2".to_string(), "0".to_string()],
        vec!["0".to_string(), "-3/4".to_string()],
    ];
    let a = LinearEndo::from_strings(&strings).unwrap();
    assert!(a.is_invertible());
    assert_eq!(a.to_strings(), vec![vec!["1/2", "0"], vec!["0", "-3/4"]]);
}

fn square(max: usize) -> impl Strategy<Value = LinearEndo> {
    (1..=max)
        .prop_flat_map(|n| prop::collection::vec(prop::collection::vec(-2i64..=2, n), n))
        .prop_map(|rows| endo(&rows))
}

/// Low-rank matrices, so eventual images are proper subspaces.
fn singular(max: usize) -> impl Strategy<Value = LinearEndo> {
    (2..=max)
        .prop_flat_map(|n| {
            let k = 1..n;
            (Just(n), k)
        })
        .prop_flat_map(|(n, k)| {
            (
                prop::collection::vec(prop::collection::vec(-2i64..=2, k), n),
                prop::collection::vec(prop::collection::vec(-2i64..=2, n), k),
            )
        })
        .prop_map(|(u, v)| {
            let m = IntMatrix::from_i64(&u).mul(&IntMatrix::from_i64(&v));
            LinearEndo::from_integer_matrix(&m).unwrap()
        })
}

fn unimodular(n: usize, ops: Vec<(usize, usize, i64)>) -> IntMatrix {
    let mut m = IntMatrix::identity(n);
    for (i, j, c) in ops {
        let (i, j) = (i % n, j % n);
        if i != j {
            let e = IntMatrix::from_fn(n, n, |r, s| {
                if r == s {
                    1.into()
                } else if r == i && s == j {
                    c.into()
                } else {
                    0.into()
                }
            });
            m = m.mul(&e);
        }
    }
    m
}

fn inverse_unimodular(n: usize, ops: &[(usize, usize, i64)]) -> IntMatrix {
    let inv: Vec<(usize, usize, i64)> = ops.iter().rev().map(|&(i, j, c)| (i, j, -c)).collect();
    unimodular(n, inv)
}

fn any_endo() -> impl Strategy<Value = LinearEndo> {
    prop_oneof![square(8), singular(8)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn invertible_part_is_invertible(a in any_endo()) {
        let p = invertible_part(&a);
        prop_assert!(p.dim() <= a.dim());
        prop_assert!(p.dim() == 0 || is_invertible(p.matrix()));
        prop_assert!(shift_equivalent(&a, &p));
        // nonzero spectrum is unchanged
        prop_assert_eq!(power_traces(&a, a.dim()), power_traces(&p, a.dim()));
    }

    #[test]
    fn reflexive_and_symmetric(a in any_endo(), b in any_endo()) {
        prop_assert!(shift_equivalent(&a, &a));
        prop_assert_eq!(shift_equivalent(&a, &b), shift_equivalent(&b, &a));
        if shift_equivalent(&a, &b) {
            let n = a.dim().max(b.dim());
            prop_assert_eq!(power_traces(&a, n), power_traces(&b, n));
        }
    }

    #[test]
    fn conjugate_matrices_are_equivalent(
        a in square(5),
        ops in prop::collection::vec((0usize..5, 0usize..5, -2i64..=2), 0..8),
    ) {
        let n = a.dim();
        let p = unimodular(n, ops.clone()).to_rational();
        let q = inverse_unimodular(n, &ops).to_rational();
        prop_assert!(p.mul(&q) == QMatrix::identity(n));
        let b = LinearEndo::new(p.mul(a.matrix()).mul(&q)).unwrap();
        prop_assert!(shift_equivalent(&a, &b));
    }

    #[test]
    fn transitive_on_conjugate_triples(
        a in singular(4),
        ops1 in prop::collection::vec((0usize..4, 0usize..4, -1i64..=1), 0..6),
        ops2 in prop::collection::vec((0usize..4, 0usize..4, -1i64..=1), 0..6),
        c in singular(4),
    ) {
        let n = a.dim();
        let conj = |ops: &[(usize, usize, i64)], m: &QMatrix| {
            let p = unimodular(n, ops.to_vec()).to_rational();
            let q = inverse_unimodular(n, ops).to_rational();
            LinearEndo::new(p.mul(m).mul(&q)).unwrap()
        };
        let b = conj(&ops1, a.matrix());
        let b2 = conj(&ops2, b.matrix());
        prop_assert!(shift_equivalent(&a, &b) && shift_equivalent(&b, &b2));
        prop_assert!(shift_equivalent(&a, &b2));
        if shift_equivalent(&a, &c) {
            prop_assert!(shift_equivalent(&b2, &c));
        }
    }
}
