//! Embedding surgery: removing crossings and contracting uncrossed edges.

use serde::Serialize;

use crate::embedding::{Editor, OnePlaneGraph};
use crate::error::{Error, Result};
use crate::graph::VertexId;

/// The first virtual vertex whose two crossing edges share an endpoint.
pub fn find_two_face(e: &OnePlaneGraph) -> Option<VertexId> {
    e.virtual_vertices().find(|&w| shared_endpoint(e, w).is_some())
}

/// Rotation positions `(i, j)` at `w` of the two darts leading to the common endpoint.
fn shared_endpoint(e: &OnePlaneGraph, w: VertexId) -> Option<(usize, usize)> {
    if !e.is_virtual(w) || e.degree(w) != 4 {
        return None;
    }
    let h: Vec<VertexId> = e.rotation(w).iter().map(|&d| e.head(d)).collect();
    for i in [0, 2] {
        for j in [1, 3] {
            if h[i] == h[j] {
                return Some((i, j));
            }
        }
    }
    None
}

/// Removes the crossing at `w` between two edges `va`, `vb`: the edges are
/// rerouted along each other so that neither is crossed there. The
/// underlying graph and all real ids are unchanged.
pub fn uncross_two_face(e: &OnePlaneGraph, w: VertexId) -> Result<OnePlaneGraph> {
    let (i, j) = shared_endpoint(e, w).ok_or(Error::PatternNotFound("crossing edges with a common endpoint"))?;
    let mut ed = Editor::new(e);
    // Pairing i with j would make a loop at the shared endpoint; take the
    // other non-crossing pairing.
    ed.resolve_virtual(w, i, (j + 2) % 4);
    Ok(ed.finish_with_real_map().0)
}

/// A 2-vertex `v` on a 4-face `v, y_w, c, y_u` and a 6-face
/// `v, y_u, u, z, w, y_w`, where `u`, `w` are 2-vertices joined to `c`
/// through `y_u`, `y_w` and whose other edges cross at `z`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SixFour {
    pub u: VertexId,
    pub w: VertexId,
    pub v: VertexId,
    pub z: VertexId,
    pub c: VertexId,
    pub y_u: VertexId,
    pub y_w: VertexId,
}

fn face_walk(e: &OnePlaneGraph, d: crate::embedding::Dart) -> Vec<VertexId> {
    let mut out = vec![e.origin(d)];
    let mut x = e.face_next(d);
    while x != d {
        out.push(e.origin(x));
        x = e.face_next(x);
    }
    out
}

fn is_two_vertex(e: &OnePlaneGraph, v: VertexId) -> bool {
    !e.is_virtual(v) && e.degree(v) == 2
}

/// The six-four configuration centered at `v`, if present.
pub fn find_six_four_at(e: &OnePlaneGraph, v: VertexId) -> Option<SixFour> {
    if !is_two_vertex(e, v) {
        return None;
    }
    let rot = e.rotation(v);
    if rot
        .iter()
        .any(|&d| !e.is_virtual(e.head(d)) || e.degree(e.head(d)) != 4)
    {
        return None;
    }
    for (a, b) in [(0, 1), (1, 0)] {
        let four = face_walk(e, rot[a]);
        let six = face_walk(e, rot[b]);
        if four.len() != 4 || six.len() != 6 {
            continue;
        }
        let c = four[2];
        let (y_u, u, z, w, y_w) = (six[1], six[2], six[3], six[4], six[5]);
        if e.is_virtual(c) || !is_two_vertex(e, u) || !is_two_vertex(e, w) || u == w {
            continue;
        }
        if !e.is_virtual(z) || e.degree(z) != 4 || four[1] != y_w || four[3] != y_u {
            continue;
        }
        let through = |from: VertexId, via: VertexId| {
            e.rotation(from)
                .iter()
                .find(|&&d| e.head(d) == via)
                .and_then(|&d| e.original_edge_from(d))
                .map(|oe| oe.v)
        };
        if through(u, y_u) != Some(c) || through(w, y_w) != Some(c) {
            continue;
        }
        // u and w must lie on the two different edges crossing at z.
        let pos = |x: VertexId| e.rotation(z).iter().position(|&d| e.head(d) == x);
        match (pos(u), pos(w)) {
            (Some(i), Some(j)) if (i + 4 - j) % 4 != 2 => {}
            _ => continue,
        }
        return Some(SixFour {
            u,
            w,
            v,
            z,
            c,
            y_u,
            y_w,
        });
    }
    None
}

/// The six-four configuration at the smallest possible `v`.
pub fn find_six_four(e: &OnePlaneGraph) -> Option<SixFour> {
    (0..e.real_count()).find_map(|v| find_six_four_at(e, v))
}

/// Removes the crossing at `z` by letting `u` and `w` trade places: the
/// edges through `z` are rerouted without crossing and the two 2-vertices
/// swap positions, which restores the original adjacencies.
pub fn uncross_six_four(e: &OnePlaneGraph, p: &SixFour) -> Result<OnePlaneGraph> {
    if find_six_four_at(e, p.v).as_ref() != Some(p) {
        return Err(Error::PatternNotFound("six-four configuration"));
    }
    let pos = |x: VertexId| e.rotation(p.z).iter().position(|&d| e.head(d) == x).expect("checked");
    let (iu, iw) = (pos(p.u), pos(p.w));
    let mut ed = Editor::new(e);
    // u is joined to w's far end and w to u's far end; swapping the two
    // vertices then gives each its own edges back.
    ed.resolve_virtual(p.z, iu, (iw + 2) % 4);
    ed.swap_positions(p.u, p.w);
    Ok(ed.finish_with_real_map().0)
}

/// Deletes `x` and joins `y` to every `z ∈ N(x) \ N(y)`, by removing the
/// edges `xz` for common neighbors `z` and contracting the uncrossed edge
/// `xy` in the planarization. Each new edge `yz` is crossed exactly when
/// `xz` was. Returns the embedding and the map from new real ids to old.
pub fn contract_small_edge(e: &OnePlaneGraph, x: VertexId, y: VertexId) -> Result<(OnePlaneGraph, Vec<VertexId>)> {
    let g = e.underlying_graph()?;
    g.check_vertex(x)?;
    g.check_vertex(y)?;
    match e.find_original_edge(x, y) {
        Some(oe) if oe.crossing.is_none() => {}
        Some(_) => return Err(Error::PatternNotFound("uncrossed edge")),
        None => return Err(Error::NotAnEdge(x, y)),
    }
    let mut ed = Editor::new(e);
    for z in g.neighbors(x).filter(|&z| g.has_edge(y, z)) {
        let d = ed
            .rotation(x)
            .iter()
            .copied()
            .find(|&d| ed.original_edge_from(d).v == z)
            .expect("edge xz present");
        let oe = ed.original_edge_from(d);
        ed.remove_original_edge(oe);
    }
    let d = ed
        .rotation(x)
        .iter()
        .copied()
        .find(|&d| ed.head(d) == y)
        .expect("edge xy present");
    ed.contract_dart(d);
    Ok(ed.finish_with_real_map())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embedding::VertexKind::{Real, Virtual};

    /// `v = 0` with edges to `a = 1` and `b = 2` that cross each other at
    /// virtual vertex 3 right next to `v`, plus the edge `ab`.
    fn self_crossing() -> OnePlaneGraph {
        // v at origin, a at (2, 1), b at (2, -1). The edge va leaves v heading
        // down, bends through the crossing (1, 0) and goes up to a; vb mirrors it.
        // Planarization: v-w twice, w-a, w-b, a-b.
        // ccw at w (1,0): to a (up-right), to v (left, upper strand), to v (left, lower strand), to b (down-right).
        // Positions 0,2 = a and v(lower) form va; 1,3 = v(upper) and b form vb.
        let rot_w = vec![1, 0, 0, 2];
        let rot = vec![vec![3, 3], vec![3, 2], vec![1, 3], rot_w];
        let mut kinds = vec![Real; 3];
        kinds.push(Virtual);
        OnePlaneGraph::from_neighbor_rotations(kinds, &rot).unwrap()
    }

    #[test]
    fn two_face_uncrossed() {
        let e = self_crossing();
        assert!(e.validate().is_empty(), "{:?}", e.validate());
        assert_eq!(find_two_face(&e), Some(3));
        let before = e.underlying_graph().unwrap();
        let r = uncross_two_face(&e, 3).unwrap();
        assert!(r.validate().is_empty(), "{:?}", r.validate());
        assert_eq!(r.crossing_count(), 0);
        assert_eq!(r.underlying_graph().unwrap(), before);
    }

    #[test]
    fn no_pattern_reported() {
        let rot: Vec<Vec<VertexId>> = (0..5).map(|i| vec![(i + 4) % 5, (i + 1) % 5]).collect();
        let c5 = OnePlaneGraph::from_neighbor_rotations(vec![Real; 5], &rot).unwrap();
        assert!(matches!(uncross_two_face(&c5, 0), Err(Error::PatternNotFound(_))));
        assert_eq!(find_six_four(&c5), None);
    }

    #[test]
    fn contraction_merges_neighborhoods() {
        // Triangle 0-1-2 plus pendant path 0-3: contract 0 into 1.
        let rot = vec![vec![1, 3, 2], vec![2, 0], vec![0, 1], vec![0]];
        let e = OnePlaneGraph::from_neighbor_rotations(vec![Real; 4], &rot).unwrap();
        assert!(e.validate().is_empty(), "{:?}", e.validate());
        let (r, map) = contract_small_edge(&e, 0, 1).unwrap();
        assert_eq!(map, vec![1, 2, 3]);
        assert!(r.validate().is_empty(), "{:?}", r.validate());
        let g = r.underlying_graph().unwrap();
        // Old 1 (new 0) keeps 2 and gains 3; the common neighbor 2 is not doubled.
        assert_eq!(g.edges(), vec![(0, 1), (0, 2)]);
    }
}
