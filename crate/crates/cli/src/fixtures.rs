/// Map given by an expression, a grid and a seed region.
#[derive(Clone, Copy, Debug)]
pub struct DynamicsFixture {
    pub expr: &'static str,
    pub grid: &'static str,
    pub seed: &'static str,
}

/// A named system: interval dynamics, word images on a wedge of circles, or both.
#[derive(Clone, Copy, Debug)]
pub struct Fixture {
    pub name: &'static str,
    pub description: &'static str,
    pub dynamics: Option<DynamicsFixture>,
    /// Images of the generators `a, b, …` of the wedge `N/L`.
    pub images: Option<&'static [&'static str]>,
}

pub const FIXTURES: &[Fixture] = &[
    Fixture {
        name: "f1",
        description: "x -> 2x on [-2, 2]; unstable fixed point at 0",
        dynamics: Some(DynamicsFixture {
            expr: "(mul 2 (var 0))",
            grid: "-2 2 16",
            seed: "all",
        }),
        images: Some(&["a"]),
    },
    Fixture {
        name: "f2",
        description: "x -> -x^3 on [-2, 2]; period-two orbit {-1, 1}",
        dynamics: Some(DynamicsFixture {
            expr: "(neg (pow (var 0) 3))",
            grid: "-2 2 128",
            seed: "box: -3/2 -1/2 | 1/2 3/2",
        }),
        images: Some(&["b^-1", "a^-1"]),
    },
    Fixture {
        name: "g-minus2x",
        description: "x -> -2x on [-2, 2]; orientation-reversing unstable fixed point",
        dynamics: Some(DynamicsFixture {
            expr: "(mul -2 (var 0))",
            grid: "-2 2 16",
            seed: "all",
        }),
        images: Some(&["a^-1"]),
    },
    Fixture {
        name: "trivial",
        description: "x -> x + 1 on [-2, 2]; empty invariant set",
        dynamics: Some(DynamicsFixture {
            expr: "(add (var 0) 1)",
            grid: "-2 2 16",
            seed: "all",
        }),
        images: Some(&[]),
    },
    Fixture {
        name: "degree2",
        description: "degree-two map of the circle, a -> a^2",
        dynamics: None,
        images: Some(&["a^2"]),
    },
    Fixture {
        name: "commutator",
        description: "wedge of two circles, a -> [a, b], b -> a^-1 b a b^-1",
        dynamics: None,
        images: Some(&["a b a^-1 b^-1", "a^-1 b a b^-1"]),
    },
    Fixture {
        name: "horseshoe-u",
        description: "horseshoe with one folded branch, a -> a b, b -> b^-1 a^-1",
        dynamics: None,
        images: Some(&["a b", "b^-1 a^-1"]),
    },
    Fixture {
        name: "horseshoe-g",
        description: "horseshoe with parallel branches, a -> a b, b -> a b",
        dynamics: None,
        images: Some(&["a b", "a b"]),
    },
];

pub fn find(name: &str) -> Option<&'static Fixture> {
    FIXTURES.iter().find(|f| f.name == name)
}
