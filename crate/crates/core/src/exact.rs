//! Exact backtracking search for odd colorings and `χ_o`.
//!
//! Vertices are colored in a fixed order (by default: component by
//! component, high degree first). A vertex may only open one new color
//! beyond those already used, and after every assignment each vertex of the
//! closed neighborhood whose neighborhood became fully colored must already
//! have an odd color.

use rayon::prelude::*;

use crate::coloring::{Color, Coloring, OddState};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub enum VertexOrder {
    #[default]
    Auto,
    Given(Vec<VertexId>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchConfig {
    /// Largest palette `chi_o` will try.
    pub max_k: usize,
    /// Search nodes (color trials) allowed per run; per prefix branch when `jobs > 1`.
    pub node_limit: Option<u64>,
    pub vertex_order: VertexOrder,
    /// Forward check on fully colored neighborhoods.
    pub prune: bool,
    /// Interchangeable-color symmetry breaking.
    pub symmetry_breaking: bool,
    /// Worker threads for the prefix split; `1` searches sequentially.
    pub jobs: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            max_k: 64,
            node_limit: None,
            vertex_order: VertexOrder::Auto,
            prune: true,
            symmetry_breaking: true,
            jobs: 1,
        }
    }
}

/// Result of one complete (or node-limited) search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchReport {
    pub witness: Option<Coloring>,
    pub nodes: u64,
}

/// Finds an odd `k`-coloring of `g` or proves none exists.
///
/// Hitting the node limit is reported as [`Error::Inconclusive`], never as `None`.
pub fn exists_odd_k_coloring(g: &Graph, k: usize, cfg: &SearchConfig) -> Result<Option<Coloring>> {
    Ok(search(g, k, cfg)?.witness)
}

/// The odd chromatic number, trying `k = 1, 2, …` up to `cfg.max_k`.
pub fn chi_o(g: &Graph, cfg: &SearchConfig) -> Result<usize> {
    Ok(chi_o_with_witness(g, cfg)?.0)
}

/// Like [`chi_o`], also returning an optimal coloring (`None` for the empty graph).
pub fn chi_o_with_witness(g: &Graph, cfg: &SearchConfig) -> Result<(usize, Option<Coloring>)> {
    if cfg.max_k == 0 {
        return Err(Error::BadParameter("max_k must be at least 1".into()));
    }
    if g.n() == 0 {
        return Ok((0, None));
    }
    for k in 1..=cfg.max_k.min(g.n()) {
        if let Some(c) = exists_odd_k_coloring(g, k, cfg)? {
            return Ok((k, Some(c)));
        }
    }
    Err(Error::AboveMaxK { max_k: cfg.max_k })
}

/// Runs the search and reports the node count alongside the answer.
pub fn search(g: &Graph, k: usize, cfg: &SearchConfig) -> Result<SearchReport> {
    let order = search_order(g, &cfg.vertex_order)?;
    if g.n() == 0 {
        return Ok(SearchReport {
            witness: Some(Coloring::new(0, k)),
            nodes: 0,
        });
    }
    if k == 0 {
        return Ok(SearchReport {
            witness: None,
            nodes: 0,
        });
    }
    if cfg.jobs <= 1 {
        let mut s = Search::new(g, k, cfg, order);
        let found = s.dfs(0, 0)?;
        return Ok(SearchReport {
            witness: found.then(|| s.st.into_coloring()),
            nodes: s.nodes,
        });
    }
    parallel_search(g, k, cfg, order)
}

/// Components in order of their smallest vertex; inside a component,
/// descending degree with ties broken by BFS discovery order.
pub fn search_order(g: &Graph, order: &VertexOrder) -> Result<Vec<VertexId>> {
    match order {
        VertexOrder::Given(list) => {
            let mut seen = vec![false; g.n()];
            for &v in list {
                g.check_vertex(v)?;
                if std::mem::replace(&mut seen[v], true) {
                    return Err(Error::BadParameter(format!("vertex {v} repeated in search order")));
                }
            }
            if let Some(v) = seen.iter().position(|s| !s) {
                return Err(Error::BadParameter(format!("vertex {v} missing from search order")));
            }
            Ok(list.clone())
        }
        VertexOrder::Auto => {
            let mut out = Vec::with_capacity(g.n());
            let mut seen = vec![false; g.n()];
            for comp in g.components() {
                let root = comp[0];
                let mut bfs = vec![root];
                seen[root] = true;
                let mut i = 0;
                while i < bfs.len() {
                    let u = bfs[i];
                    i += 1;
                    for w in g.neighbors(u) {
                        if !seen[w] {
                            seen[w] = true;
                            bfs.push(w);
                        }
                    }
                }
                let mut ranked: Vec<(usize, VertexId)> = bfs.into_iter().enumerate().collect();
                ranked.sort_by_key(|&(idx, v)| (std::cmp::Reverse(g.degree(v)), idx));
                out.extend(ranked.into_iter().map(|(_, v)| v));
            }
            Ok(out)
        }
    }
}

struct Search<'g> {
    st: OddState<'g>,
    order: Vec<VertexId>,
    prune: bool,
    symmetry: bool,
    limit: Option<u64>,
    nodes: u64,
}

impl<'g> Search<'g> {
    fn new(g: &'g Graph, k: usize, cfg: &SearchConfig, order: Vec<VertexId>) -> Self {
        Search {
            st: OddState::new(g, k),
            order,
            prune: cfg.prune,
            symmetry: cfg.symmetry_breaking,
            limit: cfg.node_limit,
            nodes: 0,
        }
    }

    fn candidates(&self, i: usize, max_used: usize) -> impl Iterator<Item = Color> + '_ {
        let v = self.order[i];
        let k = self.st.k();
        let top = if self.symmetry { k.min(max_used + 1) } else { k };
        // Proper: skip colors already on a neighbor.
        (1..=top).filter(move |&c| self.st.count(v, c) == 0)
    }

    /// Every vertex in `N[v]` with a fully colored neighborhood must see an odd color.
    fn forward_ok(&self, v: VertexId) -> bool {
        let g = self.st.graph();
        std::iter::once(v).chain(g.neighbors(v)).all(|u| self.settled_ok(u))
    }

    fn settled_ok(&self, u: VertexId) -> bool {
        let g = self.st.graph();
        g.degree(u) == 0 || self.st.uncolored_neighbors(u) > 0 || self.st.odd_count(u) > 0
    }

    fn tick(&mut self) -> Result<()> {
        self.nodes += 1;
        match self.limit {
            Some(limit) if self.nodes > limit => Err(Error::Inconclusive {
                k: self.st.k(),
                nodes: self.nodes - 1,
            }),
            _ => Ok(()),
        }
    }

    fn dfs(&mut self, i: usize, max_used: usize) -> Result<bool> {
        if i == self.order.len() {
            let g = self.st.graph();
            return Ok(g.vertices().all(|u| self.settled_ok(u)));
        }
        let v = self.order[i];
        let cands: Vec<Color> = self.candidates(i, max_used).collect();
        for c in cands {
            self.tick()?;
            self.st.assign(v, c)?;
            if (!self.prune || self.forward_ok(v)) && self.dfs(i + 1, max_used.max(c))? {
                return Ok(true);
            }
            self.st.unassign(v);
        }
        Ok(false)
    }
}

/// A partial assignment of the first `len` vertices of the order.
struct Prefix {
    colors: Vec<Color>,
    max_used: usize,
}

fn parallel_search(g: &Graph, k: usize, cfg: &SearchConfig, order: Vec<VertexId>) -> Result<SearchReport> {
    let target = cfg.jobs * 8;
    let mut prefixes = vec![Prefix {
        colors: Vec::new(),
        max_used: 0,
    }];
    let mut depth = 0;
    let mut nodes = 0u64;
    let mut s = Search::new(g, k, cfg, order.clone());
    s.limit = None;
    while depth < order.len() && prefixes.len() < target {
        let mut next = Vec::new();
        for p in &prefixes {
            for (i, &c) in p.colors.iter().enumerate() {
                s.st.assign(order[i], c)?;
            }
            let cands: Vec<Color> = s.candidates(depth, p.max_used).collect();
            for c in cands {
                nodes += 1;
                s.st.assign(order[depth], c)?;
                if !s.prune || s.forward_ok(order[depth]) {
                    let mut colors = p.colors.clone();
                    colors.push(c);
                    next.push(Prefix {
                        colors,
                        max_used: p.max_used.max(c),
                    });
                }
                s.st.unassign(order[depth]);
            }
            for &v in &order[..depth] {
                s.st.unassign(v);
            }
        }
        prefixes = next;
        depth += 1;
        if prefixes.is_empty() {
            return Ok(SearchReport { witness: None, nodes });
        }
    }

    let results: Vec<Result<SearchReport>> = prefixes
        .par_iter()
        .map(|p| {
            let mut s = Search::new(g, k, cfg, order.clone());
            for (i, &c) in p.colors.iter().enumerate() {
                s.st.assign(order[i], c)?;
            }
            let found = s.dfs(depth, p.max_used)?;
            Ok(SearchReport {
                witness: found.then(|| s.st.into_coloring()),
                nodes: s.nodes,
            })
        })
        .collect();
    // The first prefix (in search order) that is not a refutation decides.
    for r in results {
        let r = r?;
        nodes += r.nodes;
        if r.witness.is_some() {
            return Ok(SearchReport {
                witness: r.witness,
                nodes,
            });
        }
    }
    Ok(SearchReport { witness: None, nodes })
}
