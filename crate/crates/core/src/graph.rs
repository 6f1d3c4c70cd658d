//! Simple undirected graphs and the structural operations the coloring
//! algorithms are built from: degeneracy peeling, bridges, contraction and
//! vertex deletion.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type VertexId = usize;

/// A simple undirected graph on vertices `0..n`.
///
/// Adjacency sets are ordered so that every "pick the lowest id" rule in the
/// algorithms is deterministic.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Graph {
    adj: Vec<BTreeSet<VertexId>>,
}

impl Graph {
    pub fn new(n: usize) -> Self {
        Graph {
            adj: vec![BTreeSet::new(); n],
        }
    }

    /// Builds a graph from an edge list, rejecting loops and out-of-range ids.
    /// Repeated edges collapse.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (VertexId, VertexId)>) -> Result<Self> {
        let mut g = Graph::new(n);
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Adds `uv`; returns whether it was new.
    pub fn add_edge(&mut self, u: VertexId, v: VertexId) -> Result<bool> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(Error::NotAnEdge(u, v));
        }
        let fresh = self.adj[u].insert(v);
        self.adj[v].insert(u);
        Ok(fresh)
    }

    pub fn remove_edge(&mut self, u: VertexId, v: VertexId) -> Result<()> {
        if !self.has_edge(u, v) {
            return Err(Error::NotAnEdge(u, v));
        }
        self.adj[u].remove(&v);
        self.adj[v].remove(&u);
        Ok(())
    }

    pub fn add_vertex(&mut self) -> VertexId {
        self.adj.push(BTreeSet::new());
        self.adj.len() - 1
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(BTreeSet::len).sum::<usize>() / 2
    }

    pub fn vertices(&self) -> std::ops::Range<VertexId> {
        0..self.adj.len()
    }

    pub fn neighbors(&self, v: VertexId) -> impl DoubleEndedIterator<Item = VertexId> + '_ {
        self.adj[v].iter().copied()
    }

    pub fn neighbor_set(&self, v: VertexId) -> &BTreeSet<VertexId> {
        &self.adj[v]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        u < self.n() && self.adj[u].contains(&v)
    }

    /// All edges as `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(VertexId, VertexId)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for (u, nbrs) in self.adj.iter().enumerate() {
            out.extend(nbrs.range(u + 1..).map(|&v| (u, v)));
        }
        out
    }

    pub fn min_degree(&self) -> Option<usize> {
        self.adj.iter().map(BTreeSet::len).min()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(BTreeSet::len).max().unwrap_or(0)
    }

    pub fn check_vertex(&self, v: VertexId) -> Result<()> {
        if v < self.n() {
            Ok(())
        } else {
            Err(Error::NotAVertex(v))
        }
    }

    /// Connected components, each sorted, ordered by their smallest vertex.
    pub fn components(&self) -> Vec<Vec<VertexId>> {
        let mut seen = vec![false; self.n()];
        let mut comps = Vec::new();
        for s in self.vertices() {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut stack = vec![s];
            while let Some(u) = stack.pop() {
                for &w in &self.adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps
    }

    pub fn is_connected(&self) -> bool {
        self.n() <= 1 || self.components().len() == 1
    }

    /// Subgraph induced by `keep` (sorted or not); vertex `i` of the result is `keep[i]`.
    pub fn induced(&self, keep: &[VertexId]) -> Graph {
        let mut index = vec![usize::MAX; self.n()];
        for (i, &v) in keep.iter().enumerate() {
            index[v] = i;
        }
        let adj = keep
            .iter()
            .map(|&v| {
                self.adj[v]
                    .iter()
                    .filter(|&&w| index[w] != usize::MAX)
                    .map(|&w| index[w])
                    .collect()
            })
            .collect();
        Graph { adj }
    }

    /// Deletes the vertices in `remove`; returns the remaining graph together
    /// with the map from new ids to old ids (order preserving).
    pub fn delete_vertices(&self, remove: &[VertexId]) -> Result<(Graph, Vec<VertexId>)> {
        let mut gone = vec![false; self.n()];
        for &v in remove {
            self.check_vertex(v)?;
            gone[v] = true;
        }
        let keep: Vec<VertexId> = self.vertices().filter(|&v| !gone[v]).collect();
        Ok((self.induced(&keep), keep))
    }

    /// Contracts the edge `xy`. The merged vertex keeps `y`'s neighbors plus
    /// `x`'s; loops and parallel edges vanish. Vertex `x` is removed and ids
    /// above it shift down by one. Returns the new graph and the merged id.
    pub fn contract(&self, x: VertexId, y: VertexId) -> Result<(Graph, VertexId)> {
        if !self.has_edge(x, y) {
            return Err(Error::NotAnEdge(x, y));
        }
        let shift = |v: VertexId| if v > x { v - 1 } else { v };
        let w = shift(y);
        let mut adj: Vec<BTreeSet<VertexId>> = Vec::with_capacity(self.n() - 1);
        for (v, nbrs) in self.adj.iter().enumerate() {
            if v == x {
                continue;
            }
            let mut set: BTreeSet<VertexId> = nbrs
                .iter()
                .map(|&u| if u == x { y } else { u })
                .filter(|&u| u != v)
                .map(shift)
                .collect();
            if v == y {
                set.extend(self.adj[x].iter().filter(|&&u| u != y).map(|&u| shift(u)));
            }
            adj.push(set);
        }
        Ok((Graph { adj }, w))
    }

    /// Peels a minimum-degree vertex (lowest id on ties) until the graph is
    /// empty.
    ///
    /// Returns the degeneracy `d` (the largest degree seen at deletion time)
    /// and the deletion sequence. Convention: every vertex has at most `d`
    /// neighbors that appear *later* in the returned order, so a greedy
    /// coloring should walk the order back to front.
    pub fn degeneracy_order(&self) -> (usize, Vec<VertexId>) {
        let n = self.n();
        let mut deg: Vec<usize> = self.adj.iter().map(BTreeSet::len).collect();
        let mut buckets: Vec<BTreeSet<VertexId>> = vec![BTreeSet::new(); self.max_degree() + 1];
        for v in 0..n {
            buckets[deg[v]].insert(v);
        }
        let mut removed = vec![false; n];
        let mut order = Vec::with_capacity(n);
        let mut d = 0;
        let mut lo = 0;
        for _ in 0..n {
            lo = lo.min(buckets.len() - 1);
            while buckets[lo].is_empty() {
                lo += 1;
            }
            let v = buckets[lo].pop_first().expect("non-empty bucket");
            d = d.max(lo);
            removed[v] = true;
            order.push(v);
            for &u in &self.adj[v] {
                if !removed[u] {
                    buckets[deg[u]].remove(&u);
                    deg[u] -= 1;
                    buckets[deg[u]].insert(u);
                    lo = lo.min(deg[u]);
                }
            }
        }
        (d, order)
    }

    pub fn degeneracy(&self) -> usize {
        self.degeneracy_order().0
    }

    /// Bridges by the DFS low-point method, as sorted `(u, v)` with `u < v`.
    pub fn bridges(&self) -> Vec<(VertexId, VertexId)> {
        let n = self.n();
        let mut disc = vec![usize::MAX; n];
        let mut low = vec![0; n];
        let mut timer = 0;
        let mut out = Vec::new();
        let nbrs: Vec<Vec<VertexId>> = self.adj.iter().map(|s| s.iter().copied().collect()).collect();
        for root in 0..n {
            if disc[root] != usize::MAX {
                continue;
            }
            // (vertex, parent, next neighbor index)
            let mut stack = vec![(root, usize::MAX, 0usize)];
            disc[root] = timer;
            low[root] = timer;
            timer += 1;
            while let Some(top) = stack.last_mut() {
                let (v, parent, i) = *top;
                if i < nbrs[v].len() {
                    top.2 += 1;
                    let w = nbrs[v][i];
                    if w == parent {
                        continue;
                    }
                    if disc[w] == usize::MAX {
                        disc[w] = timer;
                        low[w] = timer;
                        timer += 1;
                        stack.push((w, v, 0));
                    } else {
                        low[v] = low[v].min(disc[w]);
                    }
                } else {
                    stack.pop();
                    if parent != usize::MAX {
                        low[parent] = low[parent].min(low[v]);
                        if low[v] > disc[parent] {
                            out.push((parent.min(v), parent.max(v)));
                        }
                    }
                }
            }
        }
        out.sort_unstable();
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn cycle(n: usize) -> Graph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edges(n, edges).unwrap()
    }

    fn path(n: usize) -> Graph {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edges(n, edges).unwrap()
    }

    #[test]
    fn degeneracy_small_cases() {
        assert_eq!(cycle(5).degeneracy(), 2);
        assert_eq!(path(6).degeneracy(), 1);
        let star = Graph::from_edges(5, [(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap();
        assert_eq!(star.degeneracy(), 1);
    }

    #[test]
    fn degeneracy_order_later_neighbors_bounded() {
        let g = Graph::from_edges(6, [(0, 1), (0, 2), (1, 2), (2, 3), (3, 4), (4, 5), (3, 5), (1, 3)]).unwrap();
        let (d, order) = g.degeneracy_order();
        let mut pos = vec![0; g.n()];
        for (i, &v) in order.iter().enumerate() {
            pos[v] = i;
        }
        for v in g.vertices() {
            let later = g.neighbors(v).filter(|&u| pos[u] > pos[v]).count();
            assert!(later <= d);
        }
    }

    #[test]
    fn bridges_examples() {
        assert_eq!(path(3).bridges(), vec![(0, 1), (1, 2)]);
        assert!(cycle(5).bridges().is_empty());
        let two_triangles = Graph::from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (2, 3)]).unwrap();
        assert_eq!(two_triangles.bridges(), vec![(2, 3)]);
    }

    #[test]
    fn contract_examples() {
        let (k2, w) = cycle(3).contract(0, 1).unwrap();
        assert_eq!(k2.n(), 2);
        assert_eq!(k2.edges(), vec![(0, 1)]);
        assert_eq!(w, 0);

        let (k1, _) = path(2).contract(0, 1).unwrap();
        assert_eq!(k1.n(), 1);
        assert_eq!(k1.edge_count(), 0);

        let (tri, _) = cycle(4).contract(1, 2).unwrap();
        assert_eq!(tri, cycle(3));

        assert!(matches!(cycle(4).contract(0, 2), Err(Error::NotAnEdge(0, 2))));
    }

    #[test]
    fn delete_vertex_of_cycle_gives_path() {
        let (p, map) = cycle(5).delete_vertices(&[0]).unwrap();
        assert_eq!(map, vec![1, 2, 3, 4]);
        assert_eq!(p, path(4));
        assert!(matches!(cycle(5).delete_vertices(&[9]), Err(Error::NotAVertex(9))));
    }

    #[test]
    fn loops_rejected() {
        assert!(Graph::from_edges(2, [(1, 1)]).is_err());
    }

    fn graph_from_mask(n: usize, mask: &[bool]) -> Graph {
        let mut edges = Vec::new();
        let mut i = 0;
        for u in 0..n {
            for v in u + 1..n {
                if mask[i] {
                    edges.push((u, v));
                }
                i += 1;
            }
        }
        Graph::from_edges(n, edges).unwrap()
    }

    fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
        (1..=max_n).prop_flat_map(|n| {
            proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |m| graph_from_mask(n, &m))
        })
    }

    /// Max over all nonempty vertex subsets of the induced minimum degree.
    fn brute_degeneracy(g: &Graph) -> usize {
        let n = g.n();
        let mut best = 0;
        for mask in 1u32..(1 << n) {
            let min = (0..n)
                .filter(|&v| mask >> v & 1 == 1)
                .map(|v| g.neighbors(v).filter(|&u| mask >> u & 1 == 1).count())
                .min()
                .unwrap();
            best = best.max(min);
        }
        best
    }

    fn brute_bridges(g: &Graph) -> Vec<(VertexId, VertexId)> {
        let base = g.components().len();
        g.edges()
            .into_iter()
            .filter(|&(u, v)| {
                let mut h = g.clone();
                h.remove_edge(u, v).unwrap();
                h.components().len() > base
            })
            .collect()
    }

    proptest! {
        #[test]
        fn degeneracy_matches_subgraph_oracle(g in arb_graph(8)) {
            prop_assert_eq!(g.degeneracy(), brute_degeneracy(&g));
        }

        #[test]
        fn bridges_match_removal_oracle(g in arb_graph(10)) {
            prop_assert_eq!(g.bridges(), brute_bridges(&g));
        }
    }
}
