//! Odd `(2d+1)`-coloring of graphs from a `d`-degenerate minor-closed family.
//!
//! Repeatedly contract an edge `xy` at a minimum-degree vertex `x` until one
//! vertex is left, then undo the contractions: `y` inherits the color of the
//! merged vertex and `x` takes a color outside `τ(N(x)) ∪ τ_o(N(x))`, of
//! which there are at most `2d`.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::coloring::{forbidden_set, greedy_extend, is_odd_coloring, Coloring};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};

/// One contraction `G' = G/xy`. Neighbor lists are taken in `G` (before
/// contracting) and use original vertex ids; the merged vertex keeps `y`'s id.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContractionStep {
    pub x: VertexId,
    pub y: VertexId,
    pub x_neighbors: Vec<VertexId>,
    pub y_neighbors: Vec<VertexId>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct ContractionTrace {
    pub steps: Vec<ContractionStep>,
    /// The surviving vertex of each component, colored 1.
    pub base: Vec<VertexId>,
}

impl ContractionTrace {
    /// Undoes every contraction starting from the base vertices; yields the
    /// original graph on `n` vertices.
    pub fn replay(&self, n: usize) -> Graph {
        let mut g = Graph::new(n);
        for step in self.steps.iter().rev() {
            uncontract(&mut g, step);
        }
        g
    }
}

fn uncontract(g: &mut Graph, step: &ContractionStep) {
    let old: Vec<VertexId> = g.neighbors(step.y).collect();
    for z in old {
        g.remove_edge(step.y, z).expect("edge present");
    }
    for &z in &step.y_neighbors {
        g.add_edge(step.y, z).expect("valid step");
    }
    for &z in &step.x_neighbors {
        g.add_edge(step.x, z).expect("valid step");
    }
}

/// Odd coloring with palette `2d + 1`.
///
/// Fails with [`Error::NotDegenerate`] as soon as a contracted graph has
/// minimum degree above `d`.
pub fn odd_color_minor_closed(g: &Graph, d: usize) -> Result<Coloring> {
    Ok(odd_color_minor_closed_traced(g, d)?.0)
}

pub fn odd_color_minor_closed_traced(g: &Graph, d: usize) -> Result<(Coloring, ContractionTrace)> {
    let trace = contract_down(g, d)?;
    let k = 2 * d + 1;
    let mut c = Coloring::new(g.n(), k);
    let mut h = Graph::new(g.n());
    for &b in &trace.base {
        c.set(b, 1)?;
    }
    for step in trace.steps.iter().rev() {
        uncontract(&mut h, step);
        let (x, y) = (step.x, step.y);
        if greedy_extend(&h, &mut c, x, &BTreeSet::new()).is_none() {
            return Err(Error::ExtensionFailed {
                vertex: x,
                k,
                forbidden: forbidden_set(&h, &c, x).into_iter().collect(),
            });
        }
        let cy = c.get(y);
        let once = h.neighbors(x).filter(|&z| c.get(z) == cy).count();
        if once != 1 {
            return Err(Error::ProofStep(format!(
                "color {cy:?} of {y} occurs {once} times on N({x})"
            )));
        }
        log::trace!("uncontract {x}-{y}: c({x}) = {:?}", c.get(x));
    }
    debug_assert!(is_odd_coloring(g, &c).unwrap_or(false));
    Ok((c, trace))
}

/// Contracts each component down to a single vertex, checking `δ ≤ d` on the way.
fn contract_down(g: &Graph, d: usize) -> Result<ContractionTrace> {
    let mut trace = ContractionTrace::default();
    for comp in g.components() {
        let mut cur = g.induced(&comp);
        let mut labels = comp;
        while cur.n() > 1 {
            let min = cur.min_degree().unwrap_or(0);
            if min > d {
                return Err(Error::NotDegenerate {
                    d,
                    min_degree: min,
                    vertices: labels,
                });
            }
            let x = cur.vertices().find(|&v| cur.degree(v) == min).expect("nonempty");
            let y = cur.neighbors(x).next().expect("connected component");
            trace.steps.push(ContractionStep {
                x: labels[x],
                y: labels[y],
                x_neighbors: cur.neighbors(x).map(|z| labels[z]).collect(),
                y_neighbors: cur.neighbors(y).map(|z| labels[z]).collect(),
            });
            let (next, _) = cur.contract(x, y)?;
            labels.remove(x);
            cur = next;
        }
        trace.base.push(labels[0]);
    }
    Ok(trace)
}

/// Exact test for a `K4` minor: a simple graph has none iff deleting
/// vertices of degree at most 1 and suppressing degree-2 vertices empties it.
pub fn has_k4_minor(g: &Graph) -> bool {
    let mut h = g.clone();
    let mut alive = vec![true; h.n()];
    let mut stack: Vec<VertexId> = h.vertices().collect();
    while let Some(v) = stack.pop() {
        if !alive[v] || h.degree(v) > 2 {
            continue;
        }
        let nb: Vec<VertexId> = h.neighbors(v).collect();
        for &u in &nb {
            h.remove_edge(v, u).expect("edge present");
        }
        if let [a, b] = nb[..] {
            h.add_edge(a, b).expect("distinct endpoints");
        }
        alive[v] = false;
        stack.extend(nb);
    }
    alive.iter().any(|&a| a)
}

/// Odd 5-coloring of a graph with no `K4` minor.
pub fn check_k4_minor_free_pipeline(g: &Graph) -> Result<Coloring> {
    if has_k4_minor(g) {
        return Err(Error::HasK4Minor);
    }
    odd_color_minor_closed(g, 2)
}
