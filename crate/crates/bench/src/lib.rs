//! Benchmark inputs.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use kgraph_core::{EdgePath, IntMatrix, KGraph};

/// A positive path of `len` edges chosen by a seeded random walk.
pub fn random_path(kg: &KGraph, len: usize, seed: u64) -> EdgePath {
    let sk = kg.skeleton();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let edges: Vec<_> = sk.edges().map(|(id, _)| id).collect();
    let mut out = vec![edges[rng.gen_range(0..edges.len())]];
    while out.len() < len {
        let at = sk.edge(*out.last().unwrap()).source;
        let next: Vec<_> = edges.iter().copied().filter(|&e| sk.edge(e).range == at).collect();
        out.push(next[rng.gen_range(0..next.len())]);
    }
    EdgePath::from_edges(sk, out).expect("walk is composable")
}

pub fn random_matrix(rows: usize, cols: usize, max: i64, seed: u64) -> IntMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let data: Vec<Vec<i64>> = (0..rows)
        .map(|_| (0..cols).map(|_| rng.gen_range(-max..=max)).collect())
        .collect();
    IntMatrix::from_rows(cols, &data)
}
