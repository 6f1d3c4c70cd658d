//! Named graphs and embeddings, random 1-plane instances, and file formats.

mod io;
mod random;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::embedding::{OnePlaneGraph, VertexKind};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};
use crate::reduction::Thresholds;

pub use io::{
    coloring_to_string, embedding_from_str, embedding_to_string, export_dot, export_graph_dot, graph_from_str,
    graph_to_string, load_coloring, load_embedding, load_graph, parse_coloring, save_coloring, save_embedding,
    save_graph, FORMAT_VERSION,
};
pub use random::{
    inject_adjacent_crossing, random_one_plane, random_one_plane_with, random_outerplanar, random_tree, RandomReport,
    DEFAULT_DELETE_P,
};

/// Output of [`gen`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Generated {
    Graph(Graph),
    Embedding(OnePlaneGraph),
}

impl Generated {
    pub fn graph(&self) -> Result<Graph> {
        match self {
            Generated::Graph(g) => Ok(g.clone()),
            Generated::Embedding(e) => e.underlying_graph(),
        }
    }
}

/// Generators accepted by [`gen`], with their positional parameters.
pub const GENERATORS: &[(&str, &str)] = &[
    ("cycle", "n"),
    ("path", "n"),
    ("complete", "n"),
    ("subdivided_complete", "p"),
    ("cycle_embedding", "n"),
    ("k7_star_embedding", ""),
    ("six_four_pattern", ""),
    ("six_four_fuzzed", "(seed)"),
    ("random_one_plane", "n p_cross (seed)"),
    ("random_outerplanar", "n (seed)"),
    ("random_tree", "n (seed)"),
];

fn arg<T: std::str::FromStr>(args: &[&str], i: usize, name: &str) -> Result<T> {
    let s = args
        .get(i)
        .ok_or_else(|| Error::BadParameter(format!("missing parameter {name}")))?;
    s.parse()
        .map_err(|_| Error::BadParameter(format!("{name} = '{s}' is not a valid value")))
}

fn arity(args: &[&str], n: usize, name: &str) -> Result<()> {
    if args.len() != n {
        return Err(Error::BadParameter(format!(
            "{name} takes {n} parameters, got {}",
            args.len()
        )));
    }
    Ok(())
}

fn need_seed(seed: Option<u64>, name: &str) -> Result<u64> {
    seed.ok_or_else(|| Error::BadParameter(format!("{name} needs a seed")))
}

/// Builds a named generator. Random generators require `seed`.
pub fn gen(name: &str, args: &[&str], seed: Option<u64>) -> Result<Generated> {
    use Generated::{Embedding, Graph as G};
    Ok(match name {
        "cycle" | "path" | "complete" | "subdivided_complete" | "cycle_embedding" => {
            arity(args, 1, name)?;
            let n: usize = arg(args, 0, "n")?;
            match name {
                "cycle" => G(cycle(n)?),
                "path" => G(path(n)?),
                "complete" => G(complete(n)?),
                "subdivided_complete" => G(subdivided_complete(n)?),
                _ => Embedding(cycle_embedding(n)?),
            }
        }
        "k7_star_embedding" => {
            arity(args, 0, name)?;
            Embedding(k7_star_embedding())
        }
        "six_four_pattern" => {
            arity(args, 0, name)?;
            Embedding(six_four_pattern())
        }
        "six_four_fuzzed" => {
            arity(args, 0, name)?;
            Embedding(six_four_fuzzed(need_seed(seed, name)?))
        }
        "random_one_plane" => {
            arity(args, 2, name)?;
            let n = arg(args, 0, "n")?;
            let p = arg(args, 1, "p_cross")?;
            Embedding(random_one_plane(n, p, need_seed(seed, name)?)?.0)
        }
        "random_outerplanar" | "random_tree" => {
            arity(args, 1, name)?;
            let n = arg(args, 0, "n")?;
            let s = need_seed(seed, name)?;
            G(if name == "random_tree" {
                random_tree(n, s)?
            } else {
                random_outerplanar(n, s)?
            })
        }
        _ => return Err(Error::UnknownGenerator(name.to_string())),
    })
}

pub fn cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::BadParameter(format!("cycle needs n >= 3, got {n}")));
    }
    Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n)))
}

pub fn path(n: usize) -> Result<Graph> {
    if n == 0 {
        return Err(Error::BadParameter("path needs n >= 1".into()));
    }
    Graph::from_edges(n, (1..n).map(|i| (i - 1, i)))
}

pub fn complete(n: usize) -> Result<Graph> {
    if n == 0 {
        return Err(Error::BadParameter("complete needs n >= 1".into()));
    }
    Graph::from_edges(n, (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))))
}

/// `K_p` with every edge subdivided once. Vertices `0..p` are the original
/// ones; the subdivision vertex of the `i`-th edge `(a, b)`, `a < b`, in
/// lexicographic order is `p + i`.
pub fn subdivided_complete(p: usize) -> Result<Graph> {
    if p == 0 {
        return Err(Error::BadParameter("subdivided_complete needs p >= 1".into()));
    }
    let pairs: Vec<(VertexId, VertexId)> = (0..p).flat_map(|i| (i + 1..p).map(move |j| (i, j))).collect();
    let n = p + pairs.len();
    Graph::from_edges(
        n,
        pairs
            .iter()
            .enumerate()
            .flat_map(|(i, &(a, b))| [(a, p + i), (p + i, b)]),
    )
}

/// The cycle `C_n` drawn as a polygon.
pub fn cycle_embedding(n: usize) -> Result<OnePlaneGraph> {
    if n < 3 {
        return Err(Error::BadParameter(format!("cycle needs n >= 3, got {n}")));
    }
    let rot: Vec<Vec<VertexId>> = (0..n).map(|i| vec![(i + n - 1) % n, (i + 1) % n]).collect();
    OnePlaneGraph::from_neighbor_rotations(vec![VertexKind::Real; n], &rot)
}

/// Counterclockwise neighbor lists of the 1-plane drawing of `K_7^*`.
/// Vertices 0..7 are the branch vertices, 7..28 the subdivision vertices
/// and 28..37 the crossings.
const K7_STAR_ROTATION: [&[VertexId]; 37] = [
    &[7, 28, 32, 11, 33, 34],
    &[8, 29, 28, 7, 34, 20],
    &[36, 9, 30, 29, 8, 22],
    &[23, 10, 31, 30, 9, 36],
    &[31, 10, 18, 33, 11, 32],
    &[26, 22, 20, 19, 35, 21],
    &[18, 23, 27, 21, 35, 17],
    &[1, 0],
    &[2, 1],
    &[3, 2],
    &[3, 4],
    &[4, 0],
    &[29, 28],
    &[30, 29],
    &[30, 31],
    &[31, 32],
    &[32, 28],
    &[6, 33],
    &[4, 6],
    &[34, 5],
    &[1, 5],
    &[6, 5],
    &[2, 5],
    &[3, 6],
    &[34, 35],
    &[33, 35],
    &[36, 5],
    &[6, 36],
    &[12, 16, 0, 1],
    &[2, 13, 12, 1],
    &[2, 3, 14, 13],
    &[14, 3, 4, 15],
    &[15, 4, 0, 16],
    &[4, 17, 25, 0],
    &[1, 0, 24, 19],
    &[24, 25, 6, 5],
    &[27, 3, 2, 26],
];

/// The 1-plane drawing of `K_7^*` in which every edge of `K_7` is crossed
/// at most twice and its subdivision vertex sits between the crossings.
pub fn k7_star_embedding() -> OnePlaneGraph {
    let mut kinds = vec![VertexKind::Real; 28];
    kinds.extend([VertexKind::Virtual; 9]);
    let rot: Vec<Vec<VertexId>> = K7_STAR_ROTATION.iter().map(|r| r.to_vec()).collect();
    OnePlaneGraph::from_neighbor_rotations(kinds, &rot).expect("static rotation system")
}

/// Thresholds under which [`six_four_pattern`] has no configuration of
/// higher priority than the six-four swap.
pub fn six_four_thresholds() -> Thresholds {
    Thresholds::new(3, 1).expect("valid thresholds")
}

// Real vertices of the six-four drawing.
const SF_V: usize = 0;
const SF_U: usize = 1;
const SF_W: usize = 2;
const SF_A: usize = 3;
const SF_B: usize = 4;
const SF_C: usize = 5;
const SF_T: usize = 6;
const SF_S: usize = 7;
const SF_POINTS: [(f64, f64); 8] = [
    (0.0, -1.0),
    (-0.98, 0.17),
    (0.98, 0.17),
    (-2.61, -0.46),
    (2.61, -0.46),
    (0.0, -2.65),
    (-0.98, 2.1),
    (0.98, 2.1),
];
/// Edges crossing pairwise: `va` with `uc`, `vb` with `wc`, `us` with `wt`.
const SF_CROSSED: [[(usize, usize); 2]; 3] = [
    [(SF_V, SF_A), (SF_U, SF_C)],
    [(SF_V, SF_B), (SF_W, SF_C)],
    [(SF_U, SF_S), (SF_W, SF_T)],
];
/// The outer pentagon `a t s b c`.
const SF_RING: [(usize, usize); 5] = [(SF_A, SF_T), (SF_T, SF_S), (SF_S, SF_B), (SF_B, SF_C), (SF_C, SF_A)];

fn intersection(p: (f64, f64), q: (f64, f64), r: (f64, f64), s: (f64, f64)) -> (f64, f64) {
    let (dx1, dy1) = (q.0 - p.0, q.1 - p.1);
    let (dx2, dy2) = (s.0 - r.0, s.1 - r.1);
    let den = dx1 * dy2 - dy1 * dx2;
    let t = ((r.0 - p.0) * dy2 - (r.1 - p.1) * dx2) / den;
    (p.0 + t * dx1, p.1 + t * dy1)
}

/// Straight-line drawing with the crossings of `SF_CROSSED` planarized;
/// real vertex `i` gets id `perm[i]`.
fn six_four_drawing(points: &[(f64, f64)], plain: &[(usize, usize)], perm: &[usize]) -> OnePlaneGraph {
    let n = points.len();
    let mut pts = vec![(0.0, 0.0); n];
    for (old, &new) in perm.iter().enumerate() {
        pts[new] = points[old];
    }
    let mut segs: Vec<(usize, usize)> = plain.iter().map(|&(a, b)| (perm[a], perm[b])).collect();
    for [(a, b), (c, d)] in SF_CROSSED {
        let (a, b, c, d) = (perm[a], perm[b], perm[c], perm[d]);
        let x = pts.len();
        pts.push(intersection(pts[a], pts[b], pts[c], pts[d]));
        segs.extend([(a, x), (x, b), (c, x), (x, d)]);
    }
    let mut kinds = vec![VertexKind::Real; n];
    kinds.extend([VertexKind::Virtual; 3]);
    OnePlaneGraph::from_straight_line(kinds, &pts, &segs).expect("straight-line drawing")
}

/// A 2-vertex `v` (id 0) on a 4-face and a 6-face forming the six-four
/// pattern, closed off by an outer pentagon so that no other configuration
/// applies under [`six_four_thresholds`].
pub fn six_four_pattern() -> OnePlaneGraph {
    let id: Vec<usize> = (0..SF_POINTS.len()).collect();
    six_four_drawing(&SF_POINTS, &SF_RING, &id)
}

/// [`six_four_pattern`] with jittered coordinates, an optional mirror image,
/// random ears on the outer pentagon and shuffled real ids.
pub fn six_four_fuzzed(seed: u64) -> OnePlaneGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let flip = if rng.gen_bool(0.5) { -1.0 } else { 1.0 };
    let mut pts: Vec<(f64, f64)> = SF_POINTS
        .iter()
        .map(|&(x, y)| (flip * x + rng.gen_range(-0.05..0.05), y + rng.gen_range(-0.05..0.05)))
        .collect();
    let mut plain = SF_RING.to_vec();
    for (a, b) in SF_RING {
        if rng.gen_bool(0.5) {
            let (mx, my) = ((pts[a].0 + pts[b].0) / 2.0, (pts[a].1 + pts[b].1) / 2.0);
            let len = (mx * mx + my * my).sqrt();
            let x = pts.len();
            pts.push((mx + 0.4 * mx / len, my + 0.4 * my / len));
            plain.extend([(a, x), (x, b)]);
        }
    }
    let mut perm: Vec<usize> = (0..pts.len()).collect();
    perm.shuffle(&mut rng);
    six_four_drawing(&pts, &plain, &perm)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reduction::{find_reducible, ReducibleConfig};

    #[test]
    fn named_graphs() {
        let c5 = cycle(5).unwrap();
        assert_eq!((c5.n(), c5.edge_count()), (5, 5));
        assert!(c5.vertices().all(|v| c5.degree(v) == 2));
        assert_eq!(path(4).unwrap().edges(), vec![(0, 1), (1, 2), (2, 3)]);
        assert_eq!(complete(5).unwrap().edge_count(), 10);
        let k7s = subdivided_complete(7).unwrap();
        assert_eq!((k7s.n(), k7s.edge_count()), (28, 42));
        assert!(cycle(2).is_err());
    }

    #[test]
    fn k7_star_matches_subdivision() {
        let e = k7_star_embedding();
        assert_eq!(e.validate(), vec![]);
        assert_eq!(e.real_count(), 28);
        assert_eq!(e.crossing_count(), 9);
        let g = e.underlying_graph().unwrap();
        assert_eq!(g.edge_count(), 42);
        // Branch vertices have degree 6, subdivision vertices degree 2 with
        // two branch neighbors, and every branch pair is linked exactly once.
        let mut linked = std::collections::BTreeSet::new();
        for v in 0..7 {
            assert_eq!(g.degree(v), 6);
        }
        for s in 7..28 {
            let nb: Vec<VertexId> = g.neighbors(s).collect();
            assert_eq!(nb.len(), 2);
            assert!(nb.iter().all(|&x| x < 7));
            assert!(linked.insert((nb[0], nb[1])));
        }
        assert_eq!(linked.len(), 21);
    }

    #[test]
    fn pattern_matches_six_four() {
        let e = six_four_pattern();
        assert_eq!(e.validate(), vec![]);
        assert_eq!(e.crossing_count(), 3);
        let cfg = find_reducible(&e, &six_four_thresholds()).unwrap();
        let ReducibleConfig::SixFourSwap(p) = cfg else {
            panic!("expected six-four, got {cfg:?}");
        };
        assert_eq!((p.v, p.c), (SF_V, SF_C));
        assert_eq!(
            [p.u, p.w].iter().copied().collect::<std::collections::BTreeSet<_>>(),
            [SF_U, SF_W].into()
        );
    }

    #[test]
    fn six_four_fuzz_keeps_pattern() {
        for seed in 0..50 {
            let e = six_four_fuzzed(seed);
            assert_eq!(e.validate(), vec![], "seed {seed}");
            let cfg = find_reducible(&e, &six_four_thresholds()).unwrap();
            assert!(matches!(cfg, ReducibleConfig::SixFourSwap(_)), "seed {seed}: {cfg:?}");
        }
    }

    #[test]
    fn gen_dispatch() {
        assert_eq!(gen("cycle", &["5"], None).unwrap(), Generated::Graph(cycle(5).unwrap()));
        assert!(matches!(gen("nope", &[], None), Err(Error::UnknownGenerator(_))));
        assert!(matches!(gen("cycle", &["x"], None), Err(Error::BadParameter(_))));
        assert!(matches!(gen("cycle", &[], None), Err(Error::BadParameter(_))));
        assert!(matches!(gen("random_tree", &["5"], None), Err(Error::BadParameter(_))));
        assert!(matches!(
            gen("random_one_plane", &["10", "0"], Some(1)),
            Ok(Generated::Embedding(_))
        ));
    }
}
