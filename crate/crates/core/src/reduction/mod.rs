//! Odd coloring of 1-plane graphs by reducible configurations.
//!
//! [`find_reducible`] locates, in a fixed priority order, a configuration
//! that either shrinks the graph or removes a crossing;
//! [`odd_color_1planar`] applies them until the base case and extends the
//! coloring back step by step.

mod engine;
mod surgery;

use serde::{Deserialize, Serialize};

use crate::discharging;
use crate::embedding::OnePlaneGraph;
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};

pub use engine::{odd_color_1planar, Action, Measure, ReductionTrace, TraceStep};
pub use surgery::{
    contract_small_edge, find_six_four, find_six_four_at, find_two_face, uncross_six_four, uncross_two_face, SixFour,
};

/// Smallest palette the engine accepts.
pub const MIN_K: usize = 23;

/// Palette size and degree thresholds.
///
/// `big = odd_max + 1` and `k >= 2 * odd_max + 1` always hold.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Thresholds {
    pub k: usize,
    /// Vertices of degree at least `big` are big; the rest are small.
    pub big: usize,
    /// Largest odd degree removed by `OddLowVertex`.
    pub odd_max: usize,
}

impl Default for Thresholds {
    fn default() -> Self {
        Thresholds {
            k: MIN_K,
            big: 12,
            odd_max: 11,
        }
    }
}

impl Thresholds {
    /// Thresholds with the given palette and odd-degree bound.
    pub fn new(k: usize, odd_max: usize) -> Result<Self> {
        let t = Thresholds {
            k,
            big: odd_max + 1,
            odd_max,
        };
        t.check()?;
        Ok(t)
    }

    /// Default degree thresholds with a larger palette.
    pub fn with_k(k: usize) -> Result<Self> {
        if k < MIN_K {
            return Err(Error::PaletteTooSmall { k, min: MIN_K });
        }
        Ok(Thresholds {
            k,
            ..Thresholds::default()
        })
    }

    pub fn check(&self) -> Result<()> {
        if self.big != self.odd_max + 1 {
            return Err(Error::BadThresholds(format!(
                "big = {} but odd_max = {}",
                self.big, self.odd_max
            )));
        }
        if self.k < 2 * self.odd_max + 1 {
            return Err(Error::BadThresholds(format!(
                "k = {} < 2 * {} + 1",
                self.k, self.odd_max
            )));
        }
        Ok(())
    }

    pub fn is_small(&self, degree: usize) -> bool {
        degree < self.big
    }
}

/// A configuration found by [`find_reducible`], with its witnesses.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "config", rename_all = "snake_case")]
pub enum ReducibleConfig {
    /// `xy` is a bridge of `G`.
    Bridge {
        x: VertexId,
        y: VertexId,
    },
    /// `v` has odd degree at most `odd_max`.
    OddLowVertex {
        v: VertexId,
    },
    /// Adjacent `v`, `w` of degree at most `odd_max - 1`.
    SmallPair {
        v: VertexId,
        w: VertexId,
    },
    /// Small `x` whose edge to `y` is uncrossed.
    UncrossedSmallEdge {
        x: VertexId,
        y: VertexId,
    },
    /// Virtual vertex `w` where two edges with a common endpoint cross.
    TwoFaceUncross {
        w: VertexId,
    },
    /// `d2(v) >= 1` and `2d(v) < d2(v) + k`.
    D2Vertex {
        v: VertexId,
    },
    SixFourSwap(SixFour),
}

impl ReducibleConfig {
    pub fn tag(&self) -> &'static str {
        match self {
            ReducibleConfig::Bridge { .. } => "bridge",
            ReducibleConfig::OddLowVertex { .. } => "odd_low_vertex",
            ReducibleConfig::SmallPair { .. } => "small_pair",
            ReducibleConfig::UncrossedSmallEdge { .. } => "uncrossed_small_edge",
            ReducibleConfig::TwoFaceUncross { .. } => "two_face_uncross",
            ReducibleConfig::D2Vertex { .. } => "d2_vertex",
            ReducibleConfig::SixFourSwap(_) => "six_four_swap",
        }
    }
}

fn d2(g: &Graph, v: VertexId) -> usize {
    g.neighbors(v).filter(|&u| g.degree(u) == 2).count()
}

fn d2_violated(g: &Graph, t: &Thresholds, v: VertexId) -> bool {
    let d2 = d2(g, v);
    d2 >= 1 && 2 * g.degree(v) < d2 + t.k
}

/// The first configuration in priority order: bridge, odd low vertex, small
/// pair, uncrossed small edge, crossing edges with a common endpoint, `d2`
/// vertex, six-four swap. Ties go to the smallest vertex ids.
///
/// Requires a valid embedding with connected underlying graph. Finding
/// nothing is an error carrying the discharging audit.
pub fn find_reducible(e: &OnePlaneGraph, t: &Thresholds) -> Result<ReducibleConfig> {
    t.check()?;
    let g = e.underlying_graph()?;
    if !g.is_connected() {
        return Err(Error::NotConnected);
    }
    if let Some(&(x, y)) = g.bridges().first() {
        return Ok(ReducibleConfig::Bridge { x, y });
    }
    if let Some(v) = g.vertices().find(|&v| g.degree(v) % 2 == 1 && g.degree(v) <= t.odd_max) {
        return Ok(ReducibleConfig::OddLowVertex { v });
    }
    let pair_max = t.odd_max.saturating_sub(1);
    for v in g.vertices().filter(|&v| g.degree(v) <= pair_max) {
        if let Some(w) = g.neighbors(v).find(|&w| g.degree(w) <= pair_max) {
            return Ok(ReducibleConfig::SmallPair { v, w });
        }
    }
    for x in g.vertices().filter(|&x| t.is_small(g.degree(x))) {
        let mut ys: Vec<VertexId> = e
            .rotation(x)
            .iter()
            .map(|&d| e.head(d))
            .filter(|&h| !e.is_virtual(h))
            .collect();
        ys.sort_unstable();
        if let Some(&y) = ys.first() {
            return Ok(ReducibleConfig::UncrossedSmallEdge { x, y });
        }
    }
    if let Some(w) = find_two_face(e) {
        return Ok(ReducibleConfig::TwoFaceUncross { w });
    }
    if let Some(v) = g.vertices().find(|&v| d2_violated(&g, t, v)) {
        return Ok(ReducibleConfig::D2Vertex { v });
    }
    if let Some(p) = find_six_four(e) {
        return Ok(ReducibleConfig::SixFourSwap(p));
    }
    let (_, _, report) = discharging::discharge(e, t)?;
    Err(Error::NoConfigFound(Box::new(report)))
}

/// Checks a configuration's defining hypothesis directly, independent of
/// the search that produced it.
pub fn check_hypothesis(e: &OnePlaneGraph, t: &Thresholds, cfg: &ReducibleConfig) -> Result<bool> {
    let g = e.underlying_graph()?;
    let real = |v: VertexId| v < g.n();
    Ok(match *cfg {
        ReducibleConfig::Bridge { x, y } => {
            real(x) && real(y) && g.has_edge(x, y) && {
                let mut h = g.clone();
                h.remove_edge(x, y)?;
                h.components().len() > g.components().len()
            }
        }
        ReducibleConfig::OddLowVertex { v } => real(v) && g.degree(v) % 2 == 1 && g.degree(v) <= t.odd_max,
        ReducibleConfig::SmallPair { v, w } => {
            real(v) && real(w) && g.has_edge(v, w) && g.degree(v) < t.odd_max && g.degree(w) < t.odd_max
        }
        ReducibleConfig::UncrossedSmallEdge { x, y } => {
            real(x)
                && real(y)
                && t.is_small(g.degree(x))
                && e.find_original_edge(x, y).is_some_and(|oe| oe.crossing.is_none())
        }
        ReducibleConfig::TwoFaceUncross { w } => match e.crossing_pair(w) {
            Some([(a, b), (c, d)]) => a == c || a == d || b == c || b == d,
            None => false,
        },
        ReducibleConfig::D2Vertex { v } => real(v) && d2_violated(&g, t, v),
        ReducibleConfig::SixFourSwap(p) => find_six_four_at(e, p.v) == Some(p),
    })
}
