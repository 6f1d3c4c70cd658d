//! Fixed inputs shared by the benchmarks.

use oddcolor::corpus::{k7_star_embedding, random_one_plane, random_outerplanar};
use oddcolor::{Graph, OnePlaneGraph};

/// Seeded random 1-plane embeddings on `n` vertices with half the faces crossed.
pub fn one_plane(n: usize) -> OnePlaneGraph {
    random_one_plane(n, 0.5, n as u64).expect("valid parameters").0
}

pub fn k7_star() -> Graph {
    k7_star_embedding().underlying_graph().expect("valid embedding")
}

pub fn outerplanar(n: usize) -> Graph {
    random_outerplanar(n, n as u64).expect("valid parameters")
}
