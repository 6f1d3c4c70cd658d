//! Colorings, the odd-coloring verifier, `τ_o`, and greedy extension.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};

/// Colors are `1..=k`.
pub type Color = usize;

/// A partial assignment of colors from `1..=k` to vertices `0..n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Coloring {
    k: usize,
    assign: Vec<Option<Color>>,
}

impl Coloring {
    /// The empty coloring of `n` vertices with palette `1..=k`.
    pub fn new(n: usize, k: usize) -> Self {
        Coloring {
            k,
            assign: vec![None; n],
        }
    }

    /// A total coloring from a color list.
    pub fn from_colors(k: usize, colors: &[Color]) -> Result<Self> {
        let mut c = Coloring::new(colors.len(), k);
        for (v, &col) in colors.iter().enumerate() {
            c.set(v, col)?;
        }
        Ok(c)
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.assign.len()
    }

    pub fn get(&self, v: VertexId) -> Option<Color> {
        self.assign.get(v).copied().flatten()
    }

    pub fn set(&mut self, v: VertexId, color: Color) -> Result<()> {
        if v >= self.assign.len() {
            return Err(Error::NotAVertex(v));
        }
        if color == 0 || color > self.k {
            return Err(Error::ColorOutOfRange {
                vertex: v,
                color,
                k: self.k,
            });
        }
        self.assign[v] = Some(color);
        Ok(())
    }

    pub fn unset(&mut self, v: VertexId) {
        self.assign[v] = None;
    }

    pub fn is_total(&self) -> bool {
        self.assign.iter().all(Option::is_some)
    }

    /// The first uncolored vertex, if any.
    pub fn first_uncolored(&self) -> Option<VertexId> {
        self.assign.iter().position(Option::is_none)
    }

    pub fn assignment(&self) -> &[Option<Color>] {
        &self.assign
    }

    /// The color list of a total coloring.
    pub fn colors(&self) -> Result<Vec<Color>> {
        self.assign
            .iter()
            .enumerate()
            .map(|(v, c)| c.ok_or(Error::PartialColoring(v)))
            .collect()
    }

    /// Number of distinct colors in use.
    pub fn used_colors(&self) -> usize {
        self.assign.iter().flatten().collect::<BTreeSet<_>>().len()
    }

    /// Applies `perm` (indexed by old color, `perm[0]` unused) to every assigned color.
    pub fn permute(&mut self, perm: &[Color]) {
        for c in self.assign.iter_mut().flatten() {
            *c = perm[*c];
        }
    }

    pub fn with_k(mut self, k: usize) -> Result<Self> {
        if let Some((v, &c)) = self
            .assign
            .iter()
            .enumerate()
            .find_map(|(v, c)| c.as_ref().filter(|&&c| c > k).map(|c| (v, c)))
        {
            return Err(Error::ColorOutOfRange { vertex: v, color: c, k });
        }
        self.k = k;
        Ok(self)
    }
}

/// Odd-multiplicity colors on the colored part of a vertex's neighborhood.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OddStatus {
    pub vertex: VertexId,
    pub odd_colors: BTreeSet<Color>,
    /// Defined only when exactly one color has odd multiplicity.
    pub tau_o: Option<Color>,
}

pub fn odd_status(g: &Graph, c: &Coloring, v: VertexId) -> OddStatus {
    let mut odd = BTreeSet::new();
    for u in g.neighbors(v) {
        if let Some(col) = c.get(u) {
            if !odd.remove(&col) {
                odd.insert(col);
            }
        }
    }
    let tau_o = if odd.len() == 1 { odd.first().copied() } else { None };
    OddStatus {
        vertex: v,
        odd_colors: odd,
        tau_o,
    }
}

/// The unique color of odd multiplicity on `v`'s colored neighbors.
pub fn tau_o(g: &Graph, c: &Coloring, v: VertexId) -> Option<Color> {
    odd_status(g, c, v).tau_o
}

/// Whether a total coloring is proper and gives every non-isolated vertex
/// a color of odd multiplicity on its neighborhood.
pub fn is_odd_coloring(g: &Graph, c: &Coloring) -> Result<bool> {
    if c.n() != g.n() {
        return Err(Error::PartialColoring(c.n().min(g.n())));
    }
    if let Some(v) = c.first_uncolored() {
        return Err(Error::PartialColoring(v));
    }
    for (u, v) in g.edges() {
        if c.get(u) == c.get(v) {
            return Ok(false);
        }
    }
    Ok(g.vertices()
        .all(|v| g.degree(v) == 0 || !odd_status(g, c, v).odd_colors.is_empty()))
}

/// Colors `v` may not take: its neighbors' colors and their `τ_o`.
pub fn forbidden_set(g: &Graph, c: &Coloring, v: VertexId) -> BTreeSet<Color> {
    let mut out = BTreeSet::new();
    for u in g.neighbors(v) {
        if let Some(col) = c.get(u) {
            out.insert(col);
        }
        if let Some(t) = tau_o(g, c, u) {
            out.insert(t);
        }
    }
    out
}

/// Colors uncolored `v` with the smallest color of `1..=k` outside
/// `forbidden_set ∪ extra`. Returns `None` (and leaves `c` untouched) when
/// no color is available.
pub fn greedy_extend(g: &Graph, c: &mut Coloring, v: VertexId, extra: &BTreeSet<Color>) -> Option<Color> {
    debug_assert!(c.get(v).is_none(), "greedy_extend on colored vertex {v}");
    let forbidden = forbidden_set(g, c, v);
    let color = (1..=c.k()).find(|x| !forbidden.contains(x) && !extra.contains(x))?;
    c.set(v, color).ok()?;
    Some(color)
}

/// A coloring together with per-vertex neighborhood multiplicity tables,
/// updated in `O(d(v))` per (un)assignment.
///
/// `τ_o` is recovered from the XOR of the odd colors when exactly one is odd.
#[derive(Debug, Clone)]
pub struct OddState<'g> {
    g: &'g Graph,
    coloring: Coloring,
    counts: Vec<u32>,
    odd: Vec<u32>,
    odd_xor: Vec<usize>,
    uncolored_nbrs: Vec<u32>,
}

impl<'g> OddState<'g> {
    pub fn new(g: &'g Graph, k: usize) -> Self {
        let n = g.n();
        OddState {
            g,
            coloring: Coloring::new(n, k),
            counts: vec![0; n * (k + 1)],
            odd: vec![0; n],
            odd_xor: vec![0; n],
            uncolored_nbrs: g.vertices().map(|v| g.degree(v) as u32).collect(),
        }
    }

    /// Loads an existing (partial) coloring.
    pub fn from_coloring(g: &'g Graph, c: &Coloring) -> Result<Self> {
        let mut s = OddState::new(g, c.k());
        for v in g.vertices() {
            if let Some(col) = c.get(v) {
                s.assign(v, col)?;
            }
        }
        Ok(s)
    }

    pub fn graph(&self) -> &'g Graph {
        self.g
    }

    pub fn k(&self) -> usize {
        self.coloring.k()
    }

    pub fn coloring(&self) -> &Coloring {
        &self.coloring
    }

    pub fn into_coloring(self) -> Coloring {
        self.coloring
    }

    pub fn get(&self, v: VertexId) -> Option<Color> {
        self.coloring.get(v)
    }

    #[inline]
    fn slot(&self, v: VertexId, color: Color) -> usize {
        v * (self.k() + 1) + color
    }

    pub fn assign(&mut self, v: VertexId, color: Color) -> Result<()> {
        if let Some(old) = self.coloring.get(v) {
            if old == color {
                return Ok(());
            }
            self.unassign(v);
        }
        self.coloring.set(v, color)?;
        for u in self.g.neighbors(v) {
            let s = self.slot(u, color);
            self.counts[s] += 1;
            if self.counts[s] % 2 == 1 {
                self.odd[u] += 1;
            } else {
                self.odd[u] -= 1;
            }
            self.odd_xor[u] ^= color;
            self.uncolored_nbrs[u] -= 1;
        }
        Ok(())
    }

    pub fn unassign(&mut self, v: VertexId) {
        let Some(color) = self.coloring.get(v) else { return };
        self.coloring.unset(v);
        for u in self.g.neighbors(v) {
            let s = self.slot(u, color);
            self.counts[s] -= 1;
            if self.counts[s] % 2 == 1 {
                self.odd[u] += 1;
            } else {
                self.odd[u] -= 1;
            }
            self.odd_xor[u] ^= color;
            self.uncolored_nbrs[u] += 1;
        }
    }

    /// Multiplicity of `color` on the colored neighbors of `v`.
    pub fn count(&self, v: VertexId, color: Color) -> u32 {
        self.counts[self.slot(v, color)]
    }

    /// Number of colors with odd multiplicity on `v`'s colored neighbors.
    pub fn odd_count(&self, v: VertexId) -> u32 {
        self.odd[v]
    }

    pub fn uncolored_neighbors(&self, v: VertexId) -> u32 {
        self.uncolored_nbrs[v]
    }

    pub fn tau_o(&self, v: VertexId) -> Option<Color> {
        (self.odd[v] == 1).then_some(self.odd_xor[v])
    }

    pub fn forbidden(&self, v: VertexId) -> BTreeSet<Color> {
        let mut out = BTreeSet::new();
        for u in self.g.neighbors(v) {
            if let Some(col) = self.coloring.get(u) {
                out.insert(col);
            }
            if let Some(t) = self.tau_o(u) {
                out.insert(t);
            }
        }
        out
    }

    /// Incremental counterpart of [`greedy_extend`].
    pub fn greedy_extend(&mut self, v: VertexId, extra: &BTreeSet<Color>) -> Option<Color> {
        debug_assert!(self.get(v).is_none(), "greedy_extend on colored vertex {v}");
        let forbidden = self.forbidden(v);
        let color = (1..=self.k()).find(|x| !forbidden.contains(x) && !extra.contains(x))?;
        self.assign(v, color).ok()?;
        #[cfg(debug_assertions)]
        self.check_against_recount();
        Some(color)
    }

    /// Panics if the incremental tables disagree with a full recount.
    pub fn check_against_recount(&self) {
        for v in self.g.vertices() {
            let st = odd_status(self.g, &self.coloring, v);
            assert_eq!(st.odd_colors.len() as u32, self.odd[v], "odd count at {v}");
            assert_eq!(st.tau_o, self.tau_o(v), "tau_o at {v}");
            let unc = self.g.neighbors(v).filter(|&u| self.coloring.get(u).is_none()).count();
            assert_eq!(unc as u32, self.uncolored_nbrs[v], "uncolored neighbors at {v}");
        }
    }
}
