use proptest::prelude::*;
use torus_index::interval::{
    evaluate_interval, parse_map, rational, Expr, Interval, IntervalBox, IntervalError, MapExpr,
    Rational,
};

fn q(n: i64, d: i64) -> Rational {
    rational(n, d)
}

fn box1(lo: Rational, hi: Rational) -> IntervalBox {
    IntervalBox::new(vec![Interval::new(lo, hi).unwrap()]).unwrap()
}

#[test]
fn affine_images_are_exact() {
    let f = parse_map("(mul 2 (var 0))").unwrap();
    let img = evaluate_interval(&f, &box1(q(0, 1), q(1, 2))).unwrap();
    assert_eq!(img, box1(q(0, 1), q(1, 1)));
    let img = evaluate_interval(&f, &box1(q(-2, 1), q(2, 1))).unwrap();
    assert_eq!(img, box1(q(-4, 1), q(4, 1)));
}

#[test]
fn negative_cube_on_monotone_box() {
    let f = parse_map("(neg (pow (var 0) 3))").unwrap();
    let img = evaluate_interval(&f, &box1(q(1, 1), q(5, 4))).unwrap();
    // monotone decreasing: endpoint images are −1 and −125/64
    assert!(img.contains_box(&box1(q(-125, 64), q(-1, 1))));
    assert_eq!(img, box1(q(-125, 64), q(-1, 1)));
}

#[test]
fn sign_case_hulls_both_branches() {
    // |x| written as a sign case
    let f = parse_map("(sign-case 0 (neg (var 0)) (var 0))").unwrap();
    let img = evaluate_interval(&f, &box1(q(-1, 1), q(2, 1))).unwrap();
    assert_eq!(img, box1(q(0, 1), q(2, 1)));
    let img = evaluate_interval(&f, &box1(q(-3, 1), q(-1, 1))).unwrap();
    assert_eq!(img, box1(q(1, 1), q(3, 1)));
}

#[test]
fn dimension_mismatch_is_reported() {
    let f = parse_map("(vec (var 0) (var 1))").unwrap();
    assert_eq!(
        evaluate_interval(&f, &box1(q(0, 1), q(1, 1))),
        Err(IntervalError::DimensionMismatch {
            expected: 2,
            found: 1
        })
    );
}

#[test]
fn non_rational_constant_is_rejected() {
    assert!(matches!(
        parse_map("(mul pi (var 0))"),
        Err(IntervalError::NonRationalConstant(s)) if s == "pi"
    ));
}

fn small_rational() -> impl Strategy<Value = Rational> {
    (-8i64..=8, 1i64..=4).prop_map(|(n, d)| q(n, d))
}

fn expr_strategy(dim: usize) -> impl Strategy<Value = Expr> {
    let leaf = prop_oneof![
        (0..dim).prop_map(Expr::Var),
        small_rational().prop_map(Expr::Const),
    ];
    leaf.prop_recursive(4, 24, 3, move |inner| {
        prop_oneof![
            prop::collection::vec(inner.clone(), 1..3).prop_map(Expr::Add),
            prop::collection::vec(inner.clone(), 1..3).prop_map(Expr::Mul),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::sub(a, b)),
            inner.clone().prop_map(Expr::neg),
            (inner.clone(), 0u32..4).prop_map(|(a, n)| Expr::pow(a, n)),
            (0..dim, inner.clone(), inner).prop_map(|(k, a, b)| Expr::sign_case(k, a, b)),
        ]
    })
}

fn box_strategy(dim: usize) -> impl Strategy<Value = IntervalBox> {
    prop::collection::vec((small_rational(), 0i64..=8), dim).prop_map(|v| {
        IntervalBox::new(
            v.into_iter()
                .map(|(lo, w)| {
                    let hi = &lo + q(w, 4);
                    Interval::new(lo, hi).unwrap()
                })
                .collect(),
        )
        .unwrap()
    })
}

fn point_in(b: &IntervalBox, t: &[u32]) -> Vec<Rational> {
    b.coords()
        .iter()
        .zip(t)
        .map(|(c, &t)| c.lo() + c.width() * q(t as i64, 64))
        .collect()
}

fn map_strategy() -> impl Strategy<Value = (MapExpr, IntervalBox)> {
    (1usize..=2).prop_flat_map(|dim| {
        (
            prop::collection::vec(expr_strategy(dim), dim)
                .prop_map(|c| MapExpr::new(c).unwrap()),
            box_strategy(dim),
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn enclosure_contains_point_images(
        (f, b) in map_strategy(),
        samples in prop::collection::vec(prop::collection::vec(0u32..=64, 2), 100),
    ) {
        let img = evaluate_interval(&f, &b).unwrap();
        for t in &samples {
            let x = point_in(&b, t);
            let y = f.eval_point(&x).unwrap();
            prop_assert!(img.contains(&y), "{f} at {x:?} gives {y:?} outside {img}");
        }
    }

    #[test]
    fn refinement_is_monotone((f, b) in map_strategy()) {
        let whole = evaluate_interval(&f, &b).unwrap();
        let (l, r) = b.bisect();
        let parts = evaluate_interval(&f, &l).unwrap().hull(&evaluate_interval(&f, &r).unwrap());
        prop_assert!(whole.contains_box(&parts));
    }

    #[test]
    fn evaluation_is_deterministic((f, b) in map_strategy()) {
        prop_assert_eq!(evaluate_interval(&f, &b).unwrap(), evaluate_interval(&f, &b).unwrap());
    }
}
