//! The reduction driver: an explicit stack of instances to solve and
//! extension steps to run once their sub-instances are colored.

use std::collections::BTreeSet;

use serde::Serialize;

use super::{find_reducible, surgery, ReducibleConfig, Thresholds, MIN_K};
use crate::coloring::{forbidden_set, greedy_extend, is_odd_coloring, odd_status, tau_o, Color, Coloring};
use crate::embedding::OnePlaneGraph;
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};

/// Size of an instance: crossings first, then real vertices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Measure {
    pub crossings: usize,
    pub vertices: usize,
}

impl Measure {
    fn of(e: &OnePlaneGraph) -> Self {
        Measure {
            crossings: e.crossing_count(),
            vertices: e.real_count(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "action", rename_all = "snake_case")]
pub enum Action {
    Reduce { config: ReducibleConfig },
    SplitComponents,
    BaseCase,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TraceStep {
    #[serde(flatten)]
    pub action: Action,
    pub before: Measure,
    /// One entry per sub-instance produced (empty for the base case).
    pub after: Vec<Measure>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct ReductionTrace {
    pub steps: Vec<TraceStep>,
}

impl ReductionTrace {
    /// Every step strictly decreases the measure of each sub-instance.
    pub fn is_decreasing(&self) -> bool {
        self.steps.iter().all(|s| s.after.iter().all(|a| *a < s.before))
    }

    pub fn count(&self, tag: &str) -> usize {
        self.steps
            .iter()
            .filter(|s| matches!(&s.action, Action::Reduce { config } if config.tag() == tag))
            .count()
    }
}

/// An embedding whose real vertex `i` is input vertex `labels[i]`.
struct Instance {
    emb: OnePlaneGraph,
    labels: Vec<VertexId>,
}

/// The graph an extension runs in, over local ids mapped to input labels.
struct Level {
    graph: Graph,
    labels: Vec<VertexId>,
}

enum Finisher {
    OddLow {
        level: Level,
        v: VertexId,
    },
    SmallPair {
        level: Level,
        v: VertexId,
        w: VertexId,
    },
    Uncrossed {
        level: Level,
        x: VertexId,
        y: VertexId,
    },
    D2 {
        level: Level,
        v: VertexId,
        twos: Vec<VertexId>,
    },
    Bridge {
        level: Level,
        x: VertexId,
        y: VertexId,
        side_x: Vec<VertexId>,
        side_y: Vec<VertexId>,
    },
}

enum Task {
    Solve(Instance),
    Finish(Finisher),
}

/// Odd coloring with at most `t.k` colors of a valid 1-plane embedding.
///
/// Returns the coloring of the underlying graph and the trace of applied
/// reductions. `t.k` must be at least 23.
pub fn odd_color_1planar(e: &OnePlaneGraph, t: &Thresholds) -> Result<(Coloring, ReductionTrace)> {
    if t.k < MIN_K {
        return Err(Error::PaletteTooSmall { k: t.k, min: MIN_K });
    }
    t.check()?;
    let violations = e.validate();
    if !violations.is_empty() {
        return Err(Error::InvalidEmbedding(format!("{violations:?}")));
    }
    let g = e.underlying_graph()?;
    let mut coloring = Coloring::new(g.n(), t.k);
    let mut trace = ReductionTrace::default();
    let mut stack = vec![Task::Solve(Instance {
        emb: e.clone(),
        labels: (0..g.n()).collect(),
    })];
    while let Some(task) = stack.pop() {
        match task {
            Task::Solve(inst) => solve(inst, t, &mut coloring, &mut trace, &mut stack)?,
            Task::Finish(f) => finish(f, &mut coloring)?,
        }
    }
    if !is_odd_coloring(&g, &coloring)? {
        return Err(Error::ProofStep("final coloring is not odd".into()));
    }
    Ok((coloring, trace))
}

fn record(trace: &mut ReductionTrace, action: Action, before: Measure, after: Vec<Measure>) {
    log::debug!("{action:?}: {before:?} -> {after:?}");
    trace.steps.push(TraceStep { action, before, after });
}

fn relabel(inst: &Instance, emb: OnePlaneGraph, map: &[VertexId]) -> Instance {
    Instance {
        emb,
        labels: map.iter().map(|&i| inst.labels[i]).collect(),
    }
}

fn solve(
    inst: Instance,
    t: &Thresholds,
    coloring: &mut Coloring,
    trace: &mut ReductionTrace,
    stack: &mut Vec<Task>,
) -> Result<()> {
    let before = Measure::of(&inst.emb);
    let g = inst.emb.underlying_graph()?;
    if g.n() <= t.k {
        for (i, &label) in inst.labels.iter().enumerate() {
            coloring.set(label, i + 1)?;
        }
        record(trace, Action::BaseCase, before, Vec::new());
        return Ok(());
    }
    if !g.is_connected() {
        let parts = inst.emb.split_components();
        let after = parts.iter().map(|(p, _)| Measure::of(p)).collect();
        record(trace, Action::SplitComponents, before, after);
        for (p, map) in parts.into_iter().rev() {
            stack.push(Task::Solve(relabel(&inst, p, &map)));
        }
        return Ok(());
    }
    let config = find_reducible(&inst.emb, t)?;
    let level = || Level {
        graph: g.clone(),
        labels: inst.labels.clone(),
    };
    let mut children: Vec<Instance> = Vec::new();
    match config {
        ReducibleConfig::Bridge { x, y } => {
            let cut = inst.emb.remove_original_edge(x, y)?;
            let parts = cut.split_components();
            debug_assert_eq!(parts.len(), 2);
            let side = |v: VertexId| {
                parts
                    .iter()
                    .position(|(_, map)| map.contains(&v))
                    .expect("endpoint kept")
            };
            let (ix, iy) = (side(x), side(y));
            let side_x: Vec<VertexId> = parts[ix].1.clone();
            let side_y: Vec<VertexId> = parts[iy].1.clone();
            stack.push(Task::Finish(Finisher::Bridge {
                level: level(),
                x,
                y,
                side_x,
                side_y,
            }));
            for i in [ix, iy] {
                let (p, map) = &parts[i];
                children.push(relabel(&inst, p.clone(), map));
            }
        }
        ReducibleConfig::OddLowVertex { v } => {
            let (p, map) = inst.emb.delete_real_vertices(&[v])?;
            stack.push(Task::Finish(Finisher::OddLow { level: level(), v }));
            children.push(relabel(&inst, p, &map));
        }
        ReducibleConfig::SmallPair { v, w } => {
            let (p, map) = inst.emb.delete_real_vertices(&[v, w])?;
            stack.push(Task::Finish(Finisher::SmallPair { level: level(), v, w }));
            children.push(relabel(&inst, p, &map));
        }
        ReducibleConfig::UncrossedSmallEdge { x, y } => {
            let (p, map) = surgery::contract_small_edge(&inst.emb, x, y)?;
            stack.push(Task::Finish(Finisher::Uncrossed { level: level(), x, y }));
            children.push(relabel(&inst, p, &map));
        }
        ReducibleConfig::D2Vertex { v } => {
            let twos: Vec<VertexId> = g.neighbors(v).filter(|&u| g.degree(u) == 2).collect();
            let mut remove = twos.clone();
            remove.push(v);
            let (p, map) = inst.emb.delete_real_vertices(&remove)?;
            stack.push(Task::Finish(Finisher::D2 {
                level: level(),
                v,
                twos,
            }));
            children.push(relabel(&inst, p, &map));
        }
        ReducibleConfig::TwoFaceUncross { w } => {
            let p = surgery::uncross_two_face(&inst.emb, w)?;
            children.push(Instance {
                emb: p,
                labels: inst.labels.clone(),
            });
        }
        ReducibleConfig::SixFourSwap(pattern) => {
            let p = surgery::uncross_six_four(&inst.emb, &pattern)?;
            children.push(Instance {
                emb: p,
                labels: inst.labels.clone(),
            });
        }
    }
    if cfg!(debug_assertions) {
        for c in &children {
            let v = c.emb.validate();
            if !v.is_empty() {
                return Err(Error::ProofStep(format!(
                    "{} produced an invalid embedding: {v:?}",
                    config.tag()
                )));
            }
        }
    }
    let after = children.iter().map(|c| Measure::of(&c.emb)).collect();
    record(trace, Action::Reduce { config }, before, after);
    for c in children.into_iter().rev() {
        stack.push(Task::Solve(c));
    }
    Ok(())
}

/// The global coloring restricted to a level, over local ids.
fn local(level: &Level, global: &Coloring) -> Coloring {
    let mut c = Coloring::new(level.labels.len(), global.k());
    for (i, &label) in level.labels.iter().enumerate() {
        if let Some(col) = global.get(label) {
            c.set(i, col).expect("same palette");
        }
    }
    c
}

fn extend(level: &Level, c: &mut Coloring, v: VertexId, extra: &BTreeSet<Color>) -> Result<Color> {
    greedy_extend(&level.graph, c, v, extra).ok_or_else(|| {
        let mut forbidden = forbidden_set(&level.graph, c, v);
        forbidden.extend(extra);
        log::error!(
            "extension failed at {} (label {}): forbidden {forbidden:?}, neighbors {:?}",
            v,
            level.labels[v],
            level.graph.neighbors(v).map(|u| (u, c.get(u))).collect::<Vec<_>>()
        );
        Error::ExtensionFailed {
            vertex: level.labels[v],
            k: c.k(),
            forbidden: forbidden.into_iter().collect(),
        }
    })
}

fn write_back(level: &Level, c: &Coloring, global: &mut Coloring) -> Result<()> {
    if cfg!(debug_assertions) && !is_odd_coloring(&level.graph, c)? {
        return Err(Error::ProofStep("extension left a non-odd coloring".into()));
    }
    for (i, &label) in level.labels.iter().enumerate() {
        if let Some(col) = c.get(i) {
            global.set(label, col)?;
        }
    }
    Ok(())
}

fn finish(f: Finisher, global: &mut Coloring) -> Result<()> {
    match f {
        Finisher::OddLow { level, v } => {
            let mut c = local(&level, global);
            extend(&level, &mut c, v, &BTreeSet::new())?;
            write_back(&level, &c, global)
        }
        Finisher::SmallPair { level, v, w } => {
            let mut c = local(&level, global);
            let extra: BTreeSet<Color> = tau_o(&level.graph, &c, w).into_iter().collect();
            extend(&level, &mut c, v, &extra)?;
            extend(&level, &mut c, w, &BTreeSet::new())?;
            write_back(&level, &c, global)
        }
        Finisher::Uncrossed { level, x, y } => {
            let mut c = local(&level, global);
            extend(&level, &mut c, x, &BTreeSet::new())?;
            let cy = c.get(y);
            let times = level.graph.neighbors(x).filter(|&z| c.get(z) == cy).count();
            if times != 1 {
                return Err(Error::ProofStep(format!(
                    "color of {} occurs {times} times around {}",
                    level.labels[y], level.labels[x]
                )));
            }
            write_back(&level, &c, global)
        }
        Finisher::D2 { level, v, twos } => {
            let mut c = local(&level, global);
            let other = |w: VertexId| level.graph.neighbors(w).find(|&x| x != v).expect("2-vertex");
            let extra: BTreeSet<Color> = twos.iter().filter_map(|&w| c.get(other(w))).collect();
            extend(&level, &mut c, v, &extra)?;
            for &w in &twos {
                extend(&level, &mut c, w, &BTreeSet::new())?;
            }
            write_back(&level, &c, global)
        }
        Finisher::Bridge {
            level,
            x,
            y,
            side_x,
            side_y,
        } => {
            let k = global.k();
            let mut c = local(&level, global);
            anchor(&level.graph, &mut c, &side_x, x, y, [1, 2], k)?;
            anchor(&level.graph, &mut c, &side_y, y, x, [3, 4], k)?;
            let status = odd_status(&level.graph, &c, x);
            let ok_x = level.graph.degree(x) == 1 || {
                let without_y = level
                    .graph
                    .neighbors(x)
                    .filter(|&z| z != y && c.get(z) == Some(2))
                    .count();
                without_y % 2 == 1
            };
            if !ok_x || status.odd_colors.is_empty() {
                return Err(Error::ProofStep(format!(
                    "color 2 not odd around {} after bridge merge",
                    level.labels[x]
                )));
            }
            write_back(&level, &c, global)
        }
    }
}

/// Permutes the colors on one side of a bridge so that `x` gets `to[0]`
/// and (if `x` has other neighbors) its smallest odd color becomes `to[1]`.
fn anchor(
    g: &Graph,
    c: &mut Coloring,
    side: &[VertexId],
    x: VertexId,
    across: VertexId,
    to: [Color; 2],
    k: usize,
) -> Result<()> {
    let cx = c.get(x).ok_or(Error::PartialColoring(x))?;
    let mut pairs = vec![(cx, to[0])];
    let mut odd = BTreeSet::new();
    for z in g.neighbors(x).filter(|&z| z != across) {
        let col = c.get(z).ok_or(Error::PartialColoring(z))?;
        if !odd.remove(&col) {
            odd.insert(col);
        }
    }
    if g.degree(x) > 1 {
        let o = *odd
            .first()
            .ok_or_else(|| Error::ProofStep(format!("vertex {x} has no odd color on its side")))?;
        pairs.push((o, to[1]));
    }
    let perm = permutation(k, &pairs);
    for &v in side {
        if let Some(col) = c.get(v) {
            c.set(v, perm[col])?;
        }
    }
    Ok(())
}

/// A permutation of `1..=k` (indexed by old color) with the given images;
/// remaining colors fill the remaining images in increasing order.
fn permutation(k: usize, pairs: &[(Color, Color)]) -> Vec<Color> {
    let mut perm = vec![0; k + 1];
    let mut used = vec![false; k + 1];
    for &(from, to) in pairs {
        perm[from] = to;
        used[to] = true;
    }
    let mut free = (1..=k).filter(|&c| !used[c]);
    for (col, slot) in perm.iter_mut().enumerate().skip(1) {
        if *slot == 0 {
            *slot = free.next().expect("bijection");
        }
        debug_assert!(col <= k);
    }
    perm
}
