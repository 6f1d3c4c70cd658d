#![allow(dead_code)]

use std::collections::BTreeSet;

use oddcolor::corpus::{cycle_embedding, k7_star_embedding, random_one_plane_with, six_four_pattern};
use oddcolor::embedding::OnePlaneGraph;
use oddcolor::graph::Graph;

/// Odd coloring straight from the definition: proper, and every vertex with
/// a neighbor sees some color an odd number of times.
pub fn recount_is_odd(g: &Graph, colors: &[usize]) -> bool {
    for v in g.vertices() {
        let nb: Vec<usize> = g.neighbors(v).map(|u| colors[u]).collect();
        if nb.contains(&colors[v]) {
            return false;
        }
        if !nb.is_empty() && !nb.iter().any(|c| nb.iter().filter(|&d| d == c).count() % 2 == 1) {
            return false;
        }
    }
    true
}

/// Smallest `k` such that some assignment in `[k]^n` passes [`recount_is_odd`].
pub fn naive_chi_o(g: &Graph) -> usize {
    let n = g.n();
    if n == 0 {
        return 0;
    }
    for k in 1..=n {
        let mut colors = vec![1; n];
        loop {
            if recount_is_odd(g, &colors) {
                return k;
            }
            let mut i = 0;
            while i < n && colors[i] == k {
                colors[i] = 1;
                i += 1;
            }
            if i == n {
                break;
            }
            colors[i] += 1;
        }
    }
    unreachable!("the rainbow coloring is odd")
}

fn adjacency_bits(g: &Graph, perm: &[usize]) -> u64 {
    let n = g.n();
    let mut pos = vec![0; n];
    for (i, &v) in perm.iter().enumerate() {
        pos[v] = i;
    }
    let mut bits = 0u64;
    for (u, v) in g.edges() {
        let (a, b) = (pos[u].min(pos[v]), pos[u].max(pos[v]));
        bits |= 1 << (b * (b - 1) / 2 + a);
    }
    bits
}

/// Canonical form: the largest adjacency bitmask over orderings that sort
/// vertices by (degree, neighbor degrees), permuting freely inside classes.
fn canonical(g: &Graph) -> (usize, u64) {
    let n = g.n();
    let key = |v: usize| {
        let mut nd: Vec<usize> = g.neighbors(v).map(|u| g.degree(u)).collect();
        nd.sort_unstable();
        (g.degree(v), nd)
    };
    let mut verts: Vec<usize> = (0..n).collect();
    verts.sort_by_key(|&v| key(v));
    let keys: Vec<_> = verts.iter().map(|&v| key(v)).collect();

    fn rec(
        g: &Graph,
        verts: &[usize],
        keys: &[(usize, Vec<usize>)],
        used: &mut [bool],
        perm: &mut Vec<usize>,
        best: &mut u64,
    ) {
        let p = perm.len();
        if p == verts.len() {
            *best = (*best).max(adjacency_bits(g, perm));
            return;
        }
        for i in 0..verts.len() {
            if !used[i] && keys[i] == keys[p] {
                used[i] = true;
                perm.push(verts[i]);
                rec(g, verts, keys, used, perm, best);
                perm.pop();
                used[i] = false;
            }
        }
    }
    let mut best = 0;
    rec(
        g,
        &verts,
        &keys,
        &mut vec![false; n],
        &mut Vec::with_capacity(n),
        &mut best,
    );
    (n, best)
}

/// All connected graphs on `1..=max_n` vertices, one per isomorphism class.
/// Each connected graph arises from a smaller one by adding a vertex that
/// is not a cut vertex, so extending every class by every neighbor set
/// reaches all classes.
pub fn connected_graphs(max_n: usize) -> Vec<Graph> {
    let mut all = vec![Graph::new(1)];
    let mut layer = vec![Graph::new(1)];
    for n in 2..=max_n {
        let mut seen = BTreeSet::new();
        let mut next = Vec::new();
        for g in &layer {
            for mask in 1u32..(1 << (n - 1)) {
                let mut h = g.clone();
                let x = h.add_vertex();
                for u in 0..n - 1 {
                    if mask >> u & 1 == 1 {
                        h.add_edge(u, x).unwrap();
                    }
                }
                if seen.insert(canonical(&h)) {
                    next.push(h);
                }
            }
        }
        all.extend(next.iter().cloned());
        layer = next;
    }
    all
}

/// The fixed-seed random corpus: `count` embeddings with `n` in `3..=60`
/// and crossing probability cycling through 0, 0.25, .., 1.
pub fn random_corpus(count: u64) -> Vec<(String, OnePlaneGraph)> {
    (0..count)
        .map(|seed| {
            let n = 3 + (seed as usize * 7) % 58;
            let p = (seed % 5) as f64 / 4.0;
            let pd = [0.0, 0.15, 0.3, 0.5][(seed / 5 % 4) as usize];
            let (e, _) = random_one_plane_with(n, p, pd, seed).unwrap();
            (format!("random(n={n}, p_cross={p}, p_delete={pd}, seed={seed})"), e)
        })
        .collect()
}

/// Named embeddings plus the random corpus.
pub fn corpus(count: u64) -> Vec<(String, OnePlaneGraph)> {
    let mut out = vec![
        ("k7_star".to_string(), k7_star_embedding()),
        ("six_four".to_string(), six_four_pattern()),
        ("c5".to_string(), cycle_embedding(5).unwrap()),
        ("c40".to_string(), cycle_embedding(40).unwrap()),
    ];
    out.extend(random_corpus(count));
    out
}
