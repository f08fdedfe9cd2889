//! Random free chain complexes and chain maps with known structure.
//!
//! A complex is a sum of spheres (a cycle in one degree) and disks
//! (`∂e = d·b`), written in a scrambled basis. Chain maps send spheres and
//! disk tops to arbitrary cycles, disk bottoms to zero, and add a random
//! null-homotopic term.

#![allow(dead_code)]

use num_bigint::BigInt;
use proptest::prelude::*;
use torus_index::chain::{ChainComplex, ChainMap, SparseMatrix};
use torus_index::homalg::IntMatrix;

pub const TOP: usize = 3;

#[derive(Clone, Debug)]
pub struct Shape {
    pub spheres: Vec<usize>,
    pub disks: Vec<(usize, i64)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Gen {
    Sphere,
    Top(usize),
    Bottom(usize),
}

/// Basis of each degree in the unscrambled form.
fn gens(s: &Shape) -> Vec<Vec<Gen>> {
    let mut out = vec![Vec::new(); TOP];
    for &d in &s.spheres {
        out[d].push(Gen::Sphere);
    }
    for (k, &(n, _)) in s.disks.iter().enumerate() {
        out[n].push(Gen::Bottom(k));
        out[n + 1].push(Gen::Top(k));
    }
    out
}

fn shape() -> impl Strategy<Value = Shape> {
    (
        prop::collection::vec(0..TOP, 0..6),
        prop::collection::vec((0..TOP - 1, 1i64..=3), 0..4),
    )
        .prop_map(|(spheres, disks)| Shape { spheres, disks })
}

struct Entries<'a> {
    data: &'a [i8],
    pos: usize,
}

impl Entries<'_> {
    fn next(&mut self) -> i64 {
        let v = self.data[self.pos % self.data.len()];
        self.pos += 1;
        i64::from(v)
    }
}

fn dense(rows: usize, cols: usize) -> IntMatrix {
    IntMatrix::zeros(rows, cols)
}

fn raw_boundary(s: &Shape, g: &[Vec<Gen>], n: usize) -> IntMatrix {
    let mut m = dense(g[n - 1].len(), g[n].len());
    for (j, t) in g[n].iter().enumerate() {
        if let Gen::Top(k) = t {
            let i = g[n - 1].iter().position(|x| *x == Gen::Bottom(*k)).unwrap();
            m[(i, j)] = BigInt::from(s.disks[*k].1);
        }
    }
    m
}

/// Random chain map in the unscrambled bases.
fn raw_map(sc: &Shape, sd: &Shape, e: &mut Entries) -> Vec<IntMatrix> {
    let gc = gens(sc);
    let gd = gens(sd);
    let mut maps: Vec<IntMatrix> = (0..TOP).map(|n| dense(gd[n].len(), gc[n].len())).collect();
    for n in 0..TOP {
        for (j, x) in gc[n].iter().enumerate() {
            if matches!(x, Gen::Bottom(_)) {
                continue;
            }
            for (i, y) in gd[n].iter().enumerate() {
                if matches!(y, Gen::Sphere | Gen::Bottom(_)) {
                    maps[n][(i, j)] = BigInt::from(e.next() / 2);
                }
            }
        }
    }
    // null-homotopic term ∂h + h∂ with h : Cₙ → Dₙ₊₁
    let h: Vec<IntMatrix> = (0..TOP - 1)
        .map(|n| {
            IntMatrix::from_fn(gd[n + 1].len(), gc[n].len(), |_, _| {
                BigInt::from(e.next().signum())
            })
        })
        .collect();
    for n in 0..TOP {
        if n + 1 < TOP {
            let dh = raw_boundary(sd, &gd, n + 1).mul(&h[n]);
            maps[n] = maps[n].add(&dh);
        }
        if n >= 1 {
            let hd = h[n - 1].mul(&raw_boundary(sc, &gc, n));
            maps[n] = maps[n].add(&hd);
        }
    }
    maps
}

/// Random unimodular matrix and its inverse.
fn unimodular(size: usize, e: &mut Entries) -> (IntMatrix, IntMatrix) {
    let mut p = IntMatrix::identity(size);
    let mut inv = IntMatrix::identity(size);
    if size < 2 {
        return (p, inv);
    }
    for _ in 0..size * 2 {
        let i = e.next().unsigned_abs() as usize % size;
        let j = (i + 1 + e.next().unsigned_abs() as usize % (size - 1)) % size;
        let k = e.next();
        let mut el = IntMatrix::identity(size);
        el[(i, j)] = BigInt::from(k);
        let mut el_inv = IntMatrix::identity(size);
        el_inv[(i, j)] = BigInt::from(-k);
        p = p.mul(&el);
        inv = el_inv.mul(&inv);
    }
    (p, inv)
}

fn sparse(m: &IntMatrix) -> SparseMatrix {
    SparseMatrix::from_dense(m)
}

/// A complex in a scrambled basis with the change-of-basis matrices.
struct Scrambled {
    complex: ChainComplex,
    p: Vec<IntMatrix>,
    p_inv: Vec<IntMatrix>,
}

fn scramble(s: &Shape, e: &mut Entries) -> Scrambled {
    let g = gens(s);
    let (p, p_inv): (Vec<_>, Vec<_>) = g.iter().map(|b| unimodular(b.len(), e)).unzip();
    let dims: Vec<usize> = g.iter().map(Vec::len).collect();
    let boundaries = (1..TOP)
        .map(|n| sparse(&p_inv[n - 1].mul(&raw_boundary(s, &g, n)).mul(&p[n])))
        .collect();
    Scrambled {
        complex: ChainComplex::new(dims, boundaries).unwrap(),
        p,
        p_inv,
    }
}

fn conjugate(raw: &[IntMatrix], src: &Scrambled, dst: &Scrambled) -> ChainMap {
    let maps = (0..TOP)
        .map(|n| sparse(&dst.p_inv[n].mul(&raw[n]).mul(&src.p[n])))
        .collect();
    ChainMap::new(&src.complex, &dst.complex, maps).unwrap()
}

fn noise() -> impl Strategy<Value = Vec<i8>> {
    prop::collection::vec(-3i8..=3, 64..=64)
}

pub fn self_map() -> impl Strategy<Value = (ChainComplex, ChainMap)> {
    (shape(), noise()).prop_map(|(s, data)| {
        let mut e = Entries { data: &data, pos: 0 };
        let c = scramble(&s, &mut e);
        let raw = raw_map(&s, &s, &mut e);
        let f = conjugate(&raw, &c, &c);
        (c.complex, f)
    })
}

/// Complexes `C`, `D` with chain maps `φ : C → D` and `ψ : D → C`.
pub fn map_pair() -> impl Strategy<Value = (ChainComplex, ChainComplex, ChainMap, ChainMap)> {
    (shape(), shape(), noise()).prop_map(|(sc, sd, data)| {
        let mut e = Entries { data: &data, pos: 0 };
        let c = scramble(&sc, &mut e);
        let d = scramble(&sd, &mut e);
        let phi = conjugate(&raw_map(&sc, &sd, &mut e), &c, &d);
        let psi = conjugate(&raw_map(&sd, &sc, &mut e), &d, &c);
        (c.complex, d.complex, phi, psi)
    })
}
