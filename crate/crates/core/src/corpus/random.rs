//! Seeded random instances.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::embedding::{Dart, Editor, OnePlaneGraph, VertexKind};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};

/// Fraction of triangulation edges [`random_one_plane`] tries to delete.
pub const DEFAULT_DELETE_P: f64 = 0.3;

/// What the generator did, for cross-checking against the output.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RandomReport {
    pub triangulation_edges: usize,
    pub deleted_edges: usize,
    /// Crossing chord pairs inserted, one virtual vertex each.
    pub crossings: usize,
}

fn edge_key(u: VertexId, v: VertexId) -> (VertexId, VertexId) {
    (u.min(v), u.max(v))
}

/// Random plane triangulation on `n >= 3` vertices by repeatedly splitting
/// a uniformly chosen face with a new vertex. Returns counterclockwise
/// neighbor lists.
fn triangulation(n: usize, rng: &mut impl Rng) -> Vec<Vec<VertexId>> {
    let mut rot: Vec<Vec<VertexId>> = vec![vec![1, 2], vec![2, 0], vec![0, 1]];
    // Faces as boundary walks `a -> b -> c`.
    let mut faces: Vec<[VertexId; 3]> = vec![[0, 1, 2], [0, 2, 1]];
    let insert_after = |rot: &mut Vec<Vec<VertexId>>, v: VertexId, after: VertexId, x: VertexId| {
        let p = rot[v].iter().position(|&u| u == after).expect("neighbor");
        rot[v].insert(p + 1, x);
    };
    for x in 3..n {
        let i = rng.gen_range(0..faces.len());
        let [a, b, c] = faces.swap_remove(i);
        insert_after(&mut rot, b, a, x);
        insert_after(&mut rot, c, b, x);
        insert_after(&mut rot, a, c, x);
        rot.push(vec![a, c, b]);
        faces.extend([[a, b, x], [b, c, x], [c, a, x]]);
    }
    rot
}

/// [`random_one_plane_with`] using [`DEFAULT_DELETE_P`].
pub fn random_one_plane(n: usize, p_cross: f64, seed: u64) -> Result<(OnePlaneGraph, RandomReport)> {
    random_one_plane_with(n, p_cross, DEFAULT_DELETE_P, seed)
}

/// A random 1-plane embedding: a random plane triangulation on `n`
/// vertices, edge deletions (each with probability `p_delete`, skipped if
/// it would disconnect the graph), then in each face of length at least 4,
/// with probability `p_cross`, two crossing chords between four distinct
/// corners that are not yet adjacent.
pub fn random_one_plane_with(
    n: usize,
    p_cross: f64,
    p_delete: f64,
    seed: u64,
) -> Result<(OnePlaneGraph, RandomReport)> {
    if n < 3 {
        return Err(Error::BadParameter(format!("random_one_plane needs n >= 3, got {n}")));
    }
    for (name, p) in [("p_cross", p_cross), ("p_delete", p_delete)] {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::BadParameter(format!("{name} = {p} is not a probability")));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rot = triangulation(n, &mut rng);
    let mut g = Graph::from_edges(
        n,
        rot.iter().enumerate().flat_map(|(u, l)| l.iter().map(move |&v| (u, v))),
    )?;
    let triangulation_edges = g.edge_count();

    let mut edges = g.edges();
    edges.shuffle(&mut rng);
    let mut deleted_edges = 0;
    for (u, v) in edges {
        if !rng.gen_bool(p_delete) {
            continue;
        }
        g.remove_edge(u, v)?;
        if g.is_connected() {
            rot[u].retain(|&x| x != v);
            rot[v].retain(|&x| x != u);
            deleted_edges += 1;
        } else {
            g.add_edge(u, v)?;
        }
    }

    let plane = OnePlaneGraph::from_neighbor_rotations(vec![VertexKind::Real; n], &rot)?;
    let mut present: BTreeSet<(VertexId, VertexId)> = g.edges().into_iter().collect();
    let mut ed = Editor::new(&plane);
    let mut crossings = 0;
    for face in plane.faces().iter().filter(|f| f.len() >= 4) {
        if !rng.gen_bool(p_cross) {
            continue;
        }
        let corners = distinct_corners(&plane, face.darts());
        if corners.len() < 4 {
            continue;
        }
        for _ in 0..10 {
            let mut pick: Vec<usize> = rand::seq::index::sample(&mut rng, corners.len(), 4).into_vec();
            pick.sort_unstable();
            let c: Vec<(VertexId, Dart)> = pick.iter().map(|&i| corners[i]).collect();
            let (p, q) = (edge_key(c[0].0, c[2].0), edge_key(c[1].0, c[3].0));
            if present.contains(&p) || present.contains(&q) {
                continue;
            }
            present.extend([p, q]);
            let w = ed.add_vertex(VertexKind::Virtual);
            let darts: Vec<Dart> = c
                .iter()
                .map(|&(v, anchor)| {
                    let d = ed.new_edge(v, w);
                    ed.insert_after(anchor, d);
                    d
                })
                .collect();
            for d in darts.iter().rev() {
                ed.push_dart(d.twin());
            }
            crossings += 1;
            break;
        }
    }
    let (e, _) = ed.finish_with_real_map();
    Ok((
        e,
        RandomReport {
            triangulation_edges,
            deleted_edges,
            crossings,
        },
    ))
}

/// Corners of a face walk at distinct real vertices, in walk order: each is
/// the vertex and the dart after which a new dart into the face goes.
fn distinct_corners(e: &OnePlaneGraph, walk: &[Dart]) -> Vec<(VertexId, Dart)> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for (i, &d) in walk.iter().enumerate() {
        let v = e.origin(d);
        let prev = walk[(i + walk.len() - 1) % walk.len()];
        if !e.is_virtual(v) && seen.insert(v) {
            out.push((v, prev.twin()));
        }
    }
    out
}

/// Adds two new edges `va`, `vb` drawn so that they cross each other,
/// inside a random face with corners `v`, `a`, `b` and `va`, `vb` not yet
/// edges. Returns `None` if no face admits this.
pub fn inject_adjacent_crossing(e: &OnePlaneGraph, seed: u64) -> Result<Option<OnePlaneGraph>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let g = e.underlying_graph()?;
    let mut faces = e.faces();
    faces.shuffle(&mut rng);
    for face in &faces {
        let corners = distinct_corners(e, face.darts());
        if corners.len() < 3 {
            continue;
        }
        for _ in 0..20 {
            let mut pick: Vec<usize> = rand::seq::index::sample(&mut rng, corners.len(), 3).into_vec();
            pick.sort_unstable();
            pick.rotate_left(rng.gen_range(0..3));
            let [(v, anchor), (a, da), (b, db)] = [corners[pick[0]], corners[pick[1]], corners[pick[2]]];
            if g.has_edge(v, a) || g.has_edge(v, b) {
                continue;
            }
            let mut ed = Editor::new(e);
            let w = ed.add_vertex(VertexKind::Virtual);
            let x = ed.new_edge(v, w);
            let y = ed.new_edge(v, w);
            ed.insert_after(anchor, x);
            ed.insert_after(x, y);
            let to_a = ed.new_edge(a, w);
            ed.insert_after(da, to_a);
            let to_b = ed.new_edge(b, w);
            ed.insert_after(db, to_b);
            // Reverse walk order at w: b, a, then v's two darts.
            for d in [to_b, to_a, y, x] {
                ed.push_dart(d.twin());
            }
            return Ok(Some(ed.finish_with_real_map().0));
        }
    }
    Ok(None)
}

/// A random connected outerplanar graph on `n` vertices: a polygon with a
/// random subset of the diagonals of a random triangulation, possibly
/// minus one polygon edge, with shuffled ids.
pub fn random_outerplanar(n: usize, seed: u64) -> Result<Graph> {
    if n == 0 {
        return Err(Error::BadParameter("random_outerplanar needs n >= 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges: Vec<(VertexId, VertexId)> = (1..n).map(|i| (i - 1, i)).collect();
    if n >= 3 && rng.gen_bool(0.5) {
        edges.push((0, n - 1));
    }
    let mut stack = vec![(0, n.saturating_sub(1))];
    while let Some((lo, hi)) = stack.pop() {
        if hi < lo + 2 {
            continue;
        }
        let m = rng.gen_range(lo + 1..hi);
        for (a, b) in [(lo, m), (m, hi)] {
            if b > a + 1 && rng.gen_bool(0.5) {
                edges.push((a, b));
            }
        }
        stack.extend([(lo, m), (m, hi)]);
    }
    let mut perm: Vec<VertexId> = (0..n).collect();
    perm.shuffle(&mut rng);
    Graph::from_edges(n, edges.into_iter().map(|(a, b)| (perm[a], perm[b])))
}

/// A random tree on `n` vertices: each vertex attaches to a uniformly chosen
/// earlier one, then ids are shuffled.
pub fn random_tree(n: usize, seed: u64) -> Result<Graph> {
    if n == 0 {
        return Err(Error::BadParameter("random_tree needs n >= 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut perm: Vec<VertexId> = (0..n).collect();
    perm.shuffle(&mut rng);
    let parents: Vec<(VertexId, VertexId)> = (1..n).map(|i| (rng.gen_range(0..i), i)).collect();
    Graph::from_edges(n, parents.into_iter().map(|(a, b)| (perm[a], perm[b])))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::minor_closed::has_k4_minor;
    use crate::reduction::{find_two_face, uncross_two_face};

    #[test]
    fn triangulation_is_maximal_planar() {
        for seed in 0..20 {
            let (e, r) = random_one_plane_with(12, 0.0, 0.0, seed).unwrap();
            assert_eq!(e.validate(), vec![]);
            assert_eq!(r.triangulation_edges, 3 * 12 - 6);
            assert!(e.faces().iter().all(|f| f.len() == 3));
        }
    }

    #[test]
    fn crossing_free_when_p_zero() {
        let (e, r) = random_one_plane(10, 0.0, 1).unwrap();
        assert_eq!(e.validate(), vec![]);
        assert_eq!((e.crossing_count(), r.crossings), (0, 0));
        assert!(e.underlying_graph().unwrap().is_connected());
    }

    #[test]
    fn crossings_match_report() {
        let (e, r) = random_one_plane(30, 0.5, 7).unwrap();
        assert_eq!(e.validate(), vec![]);
        assert!(r.crossings > 0);
        assert_eq!(e.crossing_count(), r.crossings);
        let g = e.underlying_graph().unwrap();
        assert_eq!(
            g.edge_count(),
            r.triangulation_edges - r.deleted_edges + 2 * r.crossings
        );
    }

    #[test]
    fn deterministic_per_seed() {
        assert_eq!(
            random_one_plane(25, 0.7, 3).unwrap(),
            random_one_plane(25, 0.7, 3).unwrap()
        );
        assert_ne!(
            random_one_plane(25, 0.7, 3).unwrap().0,
            random_one_plane(25, 0.7, 4).unwrap().0
        );
    }

    #[test]
    fn bad_parameters() {
        assert!(random_one_plane(2, 0.5, 0).is_err());
        assert!(random_one_plane(5, 1.5, 0).is_err());
    }

    #[test]
    fn adjacent_crossing_is_uncrossable() {
        let mut hits = 0;
        for seed in 0..40 {
            let (e, _) = random_one_plane(15, 0.3, seed).unwrap();
            let Some(f) = inject_adjacent_crossing(&e, seed).unwrap() else {
                continue;
            };
            hits += 1;
            assert_eq!(f.validate(), vec![], "seed {seed}");
            assert_eq!(f.crossing_count(), e.crossing_count() + 1);
            let w = find_two_face(&f).unwrap();
            let r = uncross_two_face(&f, w).unwrap();
            assert_eq!(r.validate(), vec![]);
            assert_eq!(r.underlying_graph().unwrap(), f.underlying_graph().unwrap());
        }
        assert!(hits > 30);
    }

    #[test]
    fn outerplanar_and_trees() {
        for seed in 0..50 {
            let g = random_outerplanar(1 + seed as usize % 20, seed).unwrap();
            assert!(g.is_connected());
            assert!(g.degeneracy() <= 2);
            assert!(!has_k4_minor(&g));
            let t = random_tree(1 + seed as usize % 30, seed).unwrap();
            assert!(t.is_connected());
            assert_eq!(t.edge_count() + 1, t.n());
        }
    }
}
