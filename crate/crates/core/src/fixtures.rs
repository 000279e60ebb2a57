//! Small k-graphs and presentations used throughout the tests, benches and
//! documentation.
//!
//! Each constructor returns the raw skeleton and square list so callers can
//! mutate them before validation.

use crate::kgraph::Square;
use crate::skeleton::Skeleton;

fn squares(sk: &Skeleton, words: &[(&str, &str, &str, &str)]) -> Vec<Square> {
    words
        .iter()
        .map(|(e, f, g, h)| {
            let id = |n: &str| sk.edge_id(n).unwrap_or_else(|| panic!("no edge {n}"));
            Square::new(id(e), id(f), id(g), id(h))
        })
        .collect()
}

const SINGLE_VERTEX_SQUARES: [(&str, &str, &str, &str); 6] = [
    ("a", "d", "d", "a"),
    ("c", "d", "e", "a"),
    ("c", "e", "e", "b"),
    ("b", "e", "d", "b"),
    ("a", "e", "d", "c"),
    ("b", "d", "e", "c"),
];

fn single_vertex_colored(abc: usize, de: usize) -> (Skeleton, Vec<Square>) {
    let mut sk = Skeleton::new(2).expect("rank 2");
    sk.add_vertex("v").unwrap();
    for n in ["a", "b", "c"] {
        sk.add_edge(n, "v", "v", abc).unwrap();
    }
    for n in ["d", "e"] {
        sk.add_edge(n, "v", "v", de).unwrap();
    }
    let sq = squares(&sk, &SINGLE_VERTEX_SQUARES);
    (sk, sq)
}

/// One vertex; `d, e` of degree (1,0), `a, b, c` of degree (0,1); the six
/// squares `ad=da, cd=ea, ce=eb, be=db, ae=dc, bd=ec`. The canonical functor
/// into the fundamental groupoid identifies `a` and `b`.
pub fn single_vertex() -> (Skeleton, Vec<Square>) {
    single_vertex_colored(2, 1)
}

/// [`single_vertex`] with the two colors exchanged.
pub fn single_vertex_swapped() -> (Skeleton, Vec<Square>) {
    single_vertex_colored(1, 2)
}

/// Four vertices and the four squares `af=gc, df=hc, di=he, bi=ge`. This is a
/// groupoid presentation, not a 2-graph: it has six (1,2)-paths but only four
/// (2,1)-paths.
pub fn four_vertex() -> (Skeleton, Vec<Square>) {
    let mut sk = Skeleton::new(2).expect("rank 2");
    for v in ["p", "q", "r", "t"] {
        sk.add_vertex(v).unwrap();
    }
    // name, range, source, color
    let edges = [
        ("a", "t", "q", 1),
        ("b", "t", "q", 1),
        ("c", "r", "p", 1),
        ("d", "t", "q", 1),
        ("e", "r", "p", 1),
        ("f", "q", "p", 2),
        ("g", "t", "r", 2),
        ("h", "t", "r", 2),
        ("i", "q", "p", 2),
    ];
    for (n, r, s, c) in edges {
        sk.add_edge(n, r, s, c).unwrap();
    }
    let sq = squares(
        &sk,
        &[
            ("a", "f", "g", "c"),
            ("d", "f", "h", "c"),
            ("d", "i", "h", "e"),
            ("b", "i", "g", "e"),
        ],
    );
    (sk, sq)
}

/// One vertex, loops `f` (color 1) and `g` (color 2), one square `fg = gf`.
pub fn torus() -> (Skeleton, Vec<Square>) {
    let mut sk = Skeleton::new(2).expect("rank 2");
    sk.add_vertex("v").unwrap();
    sk.add_edge("f", "v", "v", 1).unwrap();
    sk.add_edge("g", "v", "v", 2).unwrap();
    let sq = squares(&sk, &[("f", "g", "g", "f")]);
    (sk, sq)
}

/// Rank 1, one vertex, `n` loops `x1..xn`.
pub fn bouquet(n: usize) -> (Skeleton, Vec<Square>) {
    let mut sk = Skeleton::new(1).expect("rank 1");
    sk.add_vertex("v").unwrap();
    for i in 1..=n {
        sk.add_edge(&format!("x{i}"), "v", "v", 1).unwrap();
    }
    (sk, Vec::new())
}

/// Rank 2, one vertex: `x1, x2` of color 1 each commuting with `y` of
/// color 2. The fundamental group is F₂ × ℤ.
pub fn product() -> (Skeleton, Vec<Square>) {
    let mut sk = Skeleton::new(2).expect("rank 2");
    sk.add_vertex("v").unwrap();
    sk.add_edge("x1", "v", "v", 1).unwrap();
    sk.add_edge("x2", "v", "v", 1).unwrap();
    sk.add_edge("y", "v", "v", 2).unwrap();
    let sq = squares(&sk, &[("x1", "y", "y", "x1"), ("x2", "y", "y", "x2")]);
    (sk, sq)
}

/// Rank 3, one vertex, one loop per color, every pair commuting.
pub fn rank3_commuting() -> (Skeleton, Vec<Square>) {
    let mut sk = Skeleton::new(3).expect("rank 3");
    sk.add_vertex("v").unwrap();
    sk.add_edge("x", "v", "v", 1).unwrap();
    sk.add_edge("y", "v", "v", 2).unwrap();
    sk.add_edge("z", "v", "v", 3).unwrap();
    let sq = squares(&sk, &[("x", "y", "y", "x"), ("x", "z", "z", "x"), ("y", "z", "z", "y")]);
    (sk, sq)
}

/// Rank 3, one vertex. Every square set is a bijection, but passing `y`
/// permutes the color-1 edges by (x1 x2) and passing `z` by (x2 x3); these
/// permutations do not commute, so the cubes are inconsistent.
pub fn cube_inconsistent() -> (Skeleton, Vec<Square>) {
    let mut sk = Skeleton::new(3).expect("rank 3");
    sk.add_vertex("v").unwrap();
    for n in ["x1", "x2", "x3"] {
        sk.add_edge(n, "v", "v", 1).unwrap();
    }
    sk.add_edge("y", "v", "v", 2).unwrap();
    sk.add_edge("z", "v", "v", 3).unwrap();
    let sq = squares(
        &sk,
        &[
            ("x1", "y", "y", "x2"),
            ("x2", "y", "y", "x1"),
            ("x3", "y", "y", "x3"),
            ("x1", "z", "z", "x1"),
            ("x2", "z", "z", "x3"),
            ("x3", "z", "z", "x2"),
            ("y", "z", "z", "y"),
        ],
    );
    (sk, sq)
}
