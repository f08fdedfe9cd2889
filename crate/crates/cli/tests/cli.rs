mod support;

use support::{comparison, homology, ints, report, run, run_binary};

#[test]
fn example_list_names_every_fixture() {
    let out = run(&["example", "list"]).stdout;
    for name in [
        "f1",
        "f2",
        "g-minus2x",
        "trivial",
        "degree2",
        "commutator",
        "horseshoe-u",
        "horseshoe-g",
    ] {
        assert!(out.lines().any(|l| l.starts_with(name)), "{name} missing");
    }
}

#[test]
fn enclose_statistics() {
    let r = report(&["enclose", "--expr", "(mul 2 (var 0))", "--grid", "-2 2 8"]);
    let e = r.enclosure.unwrap();
    // closed images of width 1 meet four cells; the outer cells escape
    assert_eq!(e.cells, 8);
    assert_eq!(e.max_fiber, 4);
    assert_eq!(e.escaping, vec!["(0)", "(1)", "(6)", "(7)"]);

    let id = report(&["enclose", "--expr", "(var 0)", "--grid", "-2 2 8"]).enclosure.unwrap();
    assert_eq!(id.max_fiber, 3);
    assert!(id.escaping.is_empty());

    let zero = report(&["enclose", "--expr", "0", "--grid", "-2 2 8"]).enclosure.unwrap();
    assert_eq!(zero.fiber_histogram.into_iter().collect::<Vec<_>>(), vec![(2, 8)]);
}

#[test]
fn enclosure_file_feeds_index() {
    let dir = std::env::temp_dir().join(format!("ctindex-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("doubling.map");
    let p = path.to_str().unwrap();
    let o = run(&["enclose", "--expr", "(mul 2 (var 0))", "--grid", "-2 2 16", "-o", p]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    let r = report(&["index", "--enclosure", p]);
    assert_eq!(homology(r.homology.as_ref().unwrap()), vec![vec![0], vec![1]]);
    let direct = report(&["index", "--example", "f1"]);
    assert_eq!(r.homology, direct.homology);
    assert_eq!(r.pair, direct.pair);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn index_examples() {
    let f1 = report(&["index", "--example", "f1"]);
    assert_eq!(homology(f1.homology.as_ref().unwrap()), vec![vec![0], vec![1]]);
    assert_eq!(f1.homological_index.unwrap()[1], vec![vec!["1"]]);

    let g = report(&["index", "--example", "g-minus2x"]);
    assert_eq!(homology(g.homology.as_ref().unwrap()), vec![vec![0], vec![1]]);
    assert_eq!(g.homological_index.unwrap()[1], vec![vec!["-1"]]);

    let f2 = report(&["index", "--example", "f2"]);
    assert_eq!(homology(f2.homology.as_ref().unwrap()), vec![vec![0], vec![2]]);
    assert_eq!(f2.homological_index.unwrap()[1], vec![vec!["0", "-1"], vec!["-1", "0"]]);

    let t = report(&["index", "--example", "trivial"]);
    let pair = t.pair.unwrap();
    assert_eq!((pair.n_cells, pair.l_cells), (0, 0));
    assert!(homology(t.homology.as_ref().unwrap()).is_empty());
}

#[test]
fn index_from_an_expression_and_seed() {
    let r = report(&[
        "--grid",
        "-2 2 32",
        "index",
        "--expr",
        "(mul 2 (var 0))",
        "--seed",
        "cells: 4..28",
    ]);
    assert_eq!(homology(r.homology.as_ref().unwrap()), vec![vec![0], vec![1]]);
    assert_eq!(r.input["seed"], "cells: 4..28");
}

#[test]
fn torus_examples() {
    let torus = |name: &str| report(&["torus", "--example", name]).torus.unwrap();
    assert_eq!(homology(&torus("f1").unreduced), vec![vec![1], vec![2], vec![1]]);
    assert_eq!(homology(&torus("g-minus2x").unreduced), vec![vec![1], vec![1, 2]]);
    assert_eq!(homology(&torus("trivial").unreduced), vec![vec![1], vec![1]]);
    assert_eq!(homology(&torus("degree2").unreduced), vec![vec![1], vec![1]]);
    assert_eq!(homology(&torus("f2").unreduced), vec![vec![1], vec![2], vec![1]]);
    let g = torus("g-minus2x");
    assert_eq!(g.unreduced.len(), 3);
    assert_eq!(g.unreduced[2].betti, 0);
    assert!(g.unreduced[2].torsion.is_empty());
    assert_eq!(homology(&g.reduced), vec![vec![0], vec![0, 2]]);
}

#[test]
fn pq_mode_matches_the_self_map() {
    for name in ["f1", "f2", "g-minus2x"] {
        let pq = report(&["torus", "--example", name, "--mode", "pq"]).torus.unwrap();
        let sm = report(&["torus", "--example", name]).torus.unwrap();
        assert!(pq.fiber_check.as_ref().unwrap().passed, "{name}");
        assert_eq!(homology(&pq.unreduced), homology(&sm.unreduced), "{name}");
        assert_eq!(homology(&pq.reduced), homology(&sm.reduced), "{name}");
    }
}

#[test]
fn pq_mode_warns_when_fibers_fail() {
    let o = run(&["--grid", "-2 2 32", "torus", "--example", "f1", "--mode", "pq", "--seed", "box: -1 1"]);
    assert_eq!(o.code, 0);
    assert!(o.stderr.contains("warning: fiber acyclicity fails"));
    assert!(o.stdout.contains("fiber acyclicity: FAILED"));
}

#[test]
fn pq_mode_needs_dynamics() {
    let o = run(&["torus", "--example", "degree2", "--mode", "pq"]);
    assert_eq!(o.code, 2);
}

#[test]
fn pi1_degree2_listing() {
    let g = report(&["pi1", "--example", "degree2", "--max-index", "3"]).group.unwrap();
    assert_eq!(g.presentation, "< a, z | a z a^-2 z^-1 >");
    assert_eq!(g.indices, vec![1, 2, 3, 3]);
    assert_eq!(ints(&g.abelian_invariants), vec![vec![0], vec![0, 3], vec![0], vec![0, 7]]);
    assert_eq!(g.abelianization.text, "Z");
}

#[test]
fn pi1_text_output() {
    let out = run(&["pi1", "--example", "degree2"]).stdout;
    assert!(out.contains("  indices [1, 2, 3, 3]"));
    assert!(out.contains("  invariants [[0], [0,3], [0], [0,7]]"));
}

#[test]
fn pi1_commutator_depth_five() {
    let g = report(&["pi1", "--example", "commutator", "--max-index", "5"]).group.unwrap();
    let records: Vec<(usize, Vec<i64>)> = g.indices.iter().copied().zip(ints(&g.abelian_invariants)).collect();
    assert!(records.contains(&(5, vec![0, 3, 8])));
    assert_eq!(g.abelianization.text, "Z");
}

#[test]
fn pi1_horseshoes() {
    let u = report(&["pi1", "--example", "horseshoe-u"]).group.unwrap();
    assert_eq!(u.indices, vec![1, 2, 3]);
    assert_eq!(ints(&u.abelian_invariants), vec![vec![0]; 3]);
    assert_eq!(u.simplified, "< z | >");

    let g = report(&["pi1", "--example", "horseshoe-g"]).group.unwrap();
    let d = report(&["pi1", "--example", "degree2"]).group.unwrap();
    assert_eq!(g.fingerprint(), d.fingerprint());

    let r = report(&["pi1", "--example", "horseshoe-g", "--reduced", "--order"]).group.unwrap();
    assert_eq!(r.order, Some(1));
    assert_eq!(r.indices, vec![1]);
    assert_eq!(r.simplified, "< | >");
}

#[test]
fn pi1_from_images_and_presentation_file() {
    let inline = report(&["pi1", "--images", "a -> a^2"]).group.unwrap();
    let d = report(&["pi1", "--example", "degree2"]).group.unwrap();
    assert_eq!(inline.fingerprint(), d.fingerprint());

    let dir = std::env::temp_dir().join(format!("ctindex-pres-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("g.txt");
    std::fs::write(&path, "gens: a, b, z\nrel: a z = z a b\nrel: b z = z a b\n").unwrap();
    let p = report(&["pi1", "--presentation", path.to_str().unwrap()]).group.unwrap();
    assert_eq!(p.fingerprint(), d.fingerprint());
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn shift_eq_command() {
    let r = report(&["shift-eq", "[[1]]", "[[0, 1], [1, 0]]"]).shift_equivalence.unwrap();
    assert!(!r.equivalent);
    assert_eq!(r.field, "Q");
    let r = report(&["shift-eq", "[[], [[2, 1], [0, 0]]]", "[[], [[2]]]"]).shift_equivalence.unwrap();
    assert!(r.equivalent);
    let r = report(&["shift-eq", "[[\"1/2\"]]", "[[0.5]]"]).shift_equivalence.unwrap();
    assert!(r.equivalent);
}

#[test]
fn compare_f1_f2() {
    let c = comparison(&["compare", "example:f1", "example:f2"]);
    assert_eq!(c.verdict, "distinguishable");
    let v = c.invariant("homological index").unwrap();
    assert!(v.distinguishable);
    assert!(v.detail.contains("degree 1"));
}

#[test]
fn compare_commutator_with_trivial() {
    let by_index = comparison(&["compare", "example:commutator", "example:trivial"]);
    assert_eq!(by_index.verdict, "not distinguished");
    let by_torus = comparison(&["compare", "example:commutator", "example:trivial", "--kind", "torus"]);
    assert_eq!(by_torus.verdict, "not distinguished");
    let by_group = comparison(&[
        "--max-index",
        "5",
        "compare",
        "example:commutator",
        "example:trivial",
        "--kind",
        "pi1",
    ]);
    assert_eq!(by_group.verdict, "distinguishable");
    assert!(by_group.invariant("fundamental group").unwrap().distinguishable);
    let shallow = comparison(&["compare", "example:commutator", "example:trivial", "--kind", "pi1"]);
    assert_eq!(shallow.verdict, "not distinguished at depth 3");
}

#[test]
fn compare_saved_reports() {
    let dir = std::env::temp_dir().join(format!("ctindex-cmp-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let a = dir.join("a.json");
    let b = dir.join("b.json");
    std::fs::write(&a, run(&["--json", "torus", "--example", "f1"]).stdout).unwrap();
    std::fs::write(&b, run(&["--json", "index", "--example", "f1"]).stdout).unwrap();
    let (a, b) = (a.to_str().unwrap(), b.to_str().unwrap());

    let same = comparison(&["compare", a, a]);
    assert_eq!(same.verdict, "not distinguished");
    let o = run(&["compare", a, b]);
    assert_eq!(o.code, 2);
    assert!(o.stderr.contains("cannot compare"));

    let mut bad: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(a).unwrap()).unwrap();
    bad["schema"] = "other/9".into();
    let c = dir.join("c.json");
    std::fs::write(&c, bad.to_string()).unwrap();
    let o = run(&["compare", a, c.to_str().unwrap()]);
    assert_eq!(o.code, 2);
    assert!(o.stderr.contains("schema"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn compare_rejects_different_depths() {
    let dir = std::env::temp_dir().join(format!("ctindex-depth-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let a = dir.join("a.json");
    let b = dir.join("b.json");
    std::fs::write(&a, run(&["--json", "pi1", "--example", "degree2"]).stdout).unwrap();
    std::fs::write(&b, run(&["--json", "--max-index", "2", "pi1", "--example", "degree2"]).stdout).unwrap();
    let o = run(&["compare", a.to_str().unwrap(), b.to_str().unwrap()]);
    assert_eq!(o.code, 2);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["index", "--expr", "(mul 2 (var 0)", "--grid", "-2 2 8"]).code, 2);
    assert_eq!(run(&["index", "--example", "nope"]).code, 2);
    assert_eq!(run(&["pi1", "--images", "a -> c"]).code, 2);
    assert_eq!(run(&["shift-eq", "[[1, 2]]", "[[1]]"]).code, 2);
    assert_eq!(run(&["frobnicate"]).code, 2);
    assert_eq!(run(&["index"]).code, 2);
    assert_eq!(run(&["pi1", "--images", "a -> a^2", "--order", "--coset-cap", "50"]).code, 3);
    assert_eq!(run(&["--node-cap", "10", "pi1", "--example", "commutator", "--max-index", "5"]).code, 3);
    assert_eq!(run(&["index", "--expr", "(mul 2 (var 0))", "--grid", "-2 2 8"]).code, 4);
    assert_eq!(run(&["index", "--expr", "(var 0)", "--grid", "-2 2 8"]).code, 4);
    let o = run(&["index", "--expr", "(mul 2 (var 0))", "--grid", "-2 2 8"]);
    assert!(o.stderr.contains("(2), (5)"));
}

#[test]
fn parse_errors_carry_positions() {
    let o = run(&["index", "--expr", "(mul 2 (vax 0))", "--grid", "-2 2 8"]);
    assert_eq!(o.code, 2);
    assert!(o.stderr.contains("column"), "{}", o.stderr);
}

#[test]
fn timing_only_on_request() {
    assert!(report(&["torus", "--example", "f1"]).timing_ms.is_none());
    let t = report(&["--timing", "torus", "--example", "f1"]).timing_ms.unwrap();
    assert!(t.contains_key("pair"));
}

#[test]
fn repeated_runs_are_byte_identical() {
    for args in [
        &["--json", "index", "--example", "f2"][..],
        &["--json", "torus", "--example", "g-minus2x", "--mode", "pq"],
        &["--json", "pi1", "--example", "commutator", "--max-index", "4"],
        &["compare", "example:f1", "example:f2"],
        &["enclose", "--expr", "(neg (pow (var 0) 3))", "--grid", "-2 2 16"],
    ] {
        let first = run_binary(args);
        assert_eq!(first.code, 0, "{args:?}: {}", first.stderr);
        for _ in 0..2 {
            let again = run_binary(args);
            assert_eq!(again.stdout, first.stdout, "{args:?}");
            assert_eq!(again.stderr, first.stderr, "{args:?}");
        }
    }
}

#[test]
fn binary_help_and_version() {
    let o = run_binary(&["--help"]);
    assert_eq!(o.code, 0);
    for sub in ["enclose", "index", "torus", "pi1", "shift-eq", "compare", "example"] {
        assert!(o.stdout.contains(sub), "{sub}");
    }
    assert_eq!(run_binary(&["--version"]).code, 0);
}
