//! Line-oriented JSON files for graphs, embeddings and colorings, and DOT export.
//!
//! Every list entry sits on its own line and lists are sorted, so files are
//! canonical: loading and saving again reproduces the input byte for byte.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use serde::Deserialize;

use crate::coloring::Color;
use crate::embedding::{Dart, OnePlaneGraph, VertexKind};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};

pub const FORMAT_VERSION: u32 = 1;

fn json_error(e: serde_json::Error) -> Error {
    Error::parse(Some(e.line()), "json", e.to_string())
}

/// Line (1-based) of the `i`-th entry of the list under `key`, assuming one
/// entry per line as written by this module.
fn entry_line(text: &str, key: &str, i: usize) -> Option<usize> {
    let quoted = format!("\"{key}\"");
    let start = text.lines().position(|l| l.trim_start().starts_with(&quoted))?;
    let line = start + 2 + i;
    (line <= text.lines().count()).then_some(line)
}

fn check_version(version: u32) -> Result<()> {
    if version != FORMAT_VERSION {
        return Err(Error::parse(
            Some(2),
            "version",
            format!("unsupported version {version}"),
        ));
    }
    Ok(())
}

/// Writes `"key": [` entries `]` with one entry per line.
fn write_list(out: &mut String, key: &str, entries: impl IntoIterator<Item = String>, last: bool) {
    let entries: Vec<String> = entries.into_iter().collect();
    if entries.is_empty() {
        let _ = writeln!(out, "  \"{key}\": []{}", if last { "" } else { "," });
        return;
    }
    let _ = writeln!(out, "  \"{key}\": [");
    for (i, e) in entries.iter().enumerate() {
        let sep = if i + 1 == entries.len() { "" } else { "," };
        let _ = writeln!(out, "    {e}{sep}");
    }
    let _ = writeln!(out, "  ]{}", if last { "" } else { "," });
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphFile {
    version: u32,
    n: usize,
    edges: Vec<[VertexId; 2]>,
}

pub fn graph_to_string(g: &Graph) -> String {
    let mut out = String::from("{\n");
    let _ = writeln!(out, "  \"version\": {FORMAT_VERSION},");
    let _ = writeln!(out, "  \"n\": {},", g.n());
    write_list(
        &mut out,
        "edges",
        g.edges().into_iter().map(|(u, v)| format!("[{u}, {v}]")),
        true,
    );
    out.push_str("}\n");
    out
}

/// Parses a graph file. Edges must be `[u, v]` with `u < v < n`, sorted and
/// without duplicates.
pub fn graph_from_str(text: &str) -> Result<Graph> {
    let f: GraphFile = serde_json::from_str(text).map_err(json_error)?;
    check_version(f.version)?;
    let mut g = Graph::new(f.n);
    let mut prev = None;
    for (i, &[u, v]) in f.edges.iter().enumerate() {
        let err = |msg: String| Error::parse(entry_line(text, "edges", i), format!("edges[{i}]"), msg);
        if u >= v || v >= f.n {
            return Err(err(format!("need u < v < {}, got [{u}, {v}]", f.n)));
        }
        if prev.is_some_and(|p| p >= (u, v)) {
            return Err(err("edges must be sorted and distinct".into()));
        }
        prev = Some((u, v));
        g.add_edge(u, v)?;
    }
    Ok(g)
}

pub fn save_graph(path: impl AsRef<Path>, g: &Graph) -> Result<()> {
    Ok(fs::write(path, graph_to_string(g))?)
}

pub fn load_graph(path: impl AsRef<Path>) -> Result<Graph> {
    graph_from_str(&fs::read_to_string(path)?)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct VertexEntry {
    id: VertexId,
    kind: VertexKind,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PairEntry {
    id: VertexId,
    edges: [[VertexId; 2]; 2],
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct EmbeddingFile {
    version: u32,
    vertices: Vec<VertexEntry>,
    rotations: Vec<Vec<usize>>,
    twins: Vec<[usize; 2]>,
    virtual_pairs: Vec<PairEntry>,
}

fn sorted_pairs(p: [(VertexId, VertexId); 2]) -> [[VertexId; 2]; 2] {
    let mut out = p.map(|(a, b)| [a.min(b), a.max(b)]);
    out.sort_unstable();
    out
}

fn join(items: impl IntoIterator<Item = impl ToString>) -> String {
    items.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")
}

pub fn embedding_to_string(e: &OnePlaneGraph) -> String {
    let mut out = String::from("{\n");
    let _ = writeln!(out, "  \"version\": {FORMAT_VERSION},");
    let kind = |v| match e.kind(v) {
        VertexKind::Real => "real",
        VertexKind::Virtual => "virtual",
    };
    write_list(
        &mut out,
        "vertices",
        (0..e.vertex_count()).map(|v| format!("{{\"id\": {v}, \"kind\": \"{}\"}}", kind(v))),
        false,
    );
    write_list(
        &mut out,
        "rotations",
        (0..e.vertex_count()).map(|v| format!("[{}]", join(e.rotation(v).iter().map(|d| d.0)))),
        false,
    );
    write_list(
        &mut out,
        "twins",
        (0..e.edge_count()).map(|i| format!("[{}, {}]", 2 * i, 2 * i + 1)),
        false,
    );
    let pairs = e.virtual_vertices().filter_map(|w| {
        let [p, q] = sorted_pairs(e.crossing_pair(w)?);
        Some(format!(
            "{{\"id\": {w}, \"edges\": [[{}, {}], [{}, {}]]}}",
            p[0], p[1], q[0], q[1]
        ))
    });
    write_list(&mut out, "virtual_pairs", pairs, true);
    out.push_str("}\n");
    out
}

/// Parses an embedding file. Darts are renumbered so that the `i`-th twin
/// pair becomes `2i, 2i + 1`. The embedding is not validated beyond what is
/// needed to build it; call [`OnePlaneGraph::validate`] for that.
pub fn embedding_from_str(text: &str) -> Result<OnePlaneGraph> {
    let f: EmbeddingFile = serde_json::from_str(text).map_err(json_error)?;
    check_version(f.version)?;
    let n = f.vertices.len();
    for (i, v) in f.vertices.iter().enumerate() {
        if v.id != i {
            return Err(Error::parse(
                entry_line(text, "vertices", i),
                format!("vertices[{i}].id"),
                format!("expected id {i}, got {}", v.id),
            ));
        }
    }
    if f.rotations.len() != n {
        return Err(Error::parse(
            None,
            "rotations",
            format!("{} rotations for {n} vertices", f.rotations.len()),
        ));
    }
    let total = 2 * f.twins.len();
    let mut renumber = vec![usize::MAX; total];
    for (i, &[a, b]) in f.twins.iter().enumerate() {
        let err = |msg: String| Error::parse(entry_line(text, "twins", i), format!("twins[{i}]"), msg);
        if a == b {
            return Err(err(format!("dart {a} paired with itself")));
        }
        for (d, new) in [(a, 2 * i), (b, 2 * i + 1)] {
            if d >= total {
                return Err(err(format!("dart {d} out of range (darts are 0..{total})")));
            }
            if renumber[d] != usize::MAX {
                return Err(err(format!("twin mismatch: dart {d} is paired twice")));
            }
            renumber[d] = new;
        }
    }
    let mut seen = vec![false; total];
    let mut rotation = Vec::with_capacity(n);
    for (v, rot) in f.rotations.iter().enumerate() {
        let err = |msg: String| Error::parse(entry_line(text, "rotations", v), format!("rotations[{v}]"), msg);
        let mut out = Vec::with_capacity(rot.len());
        for &d in rot {
            if d >= total {
                return Err(err(format!("twin mismatch: dart {d} has no twin")));
            }
            if std::mem::replace(&mut seen[d], true) {
                return Err(err(format!("dart {d} appears twice")));
            }
            out.push(Dart(renumber[d]));
        }
        rotation.push(out);
    }
    if let Some(d) = seen.iter().position(|s| !s) {
        return Err(Error::parse(None, "rotations", format!("dart {d} is in no rotation")));
    }
    let kinds = f.vertices.iter().map(|v| v.kind).collect();
    let e = OnePlaneGraph::from_rotations(kinds, rotation)
        .map_err(|err| Error::parse(None, "rotations", err.to_string()))?;
    let listed: BTreeSet<VertexId> = f.virtual_pairs.iter().map(|p| p.id).collect();
    for (i, p) in f.virtual_pairs.iter().enumerate() {
        let err = |msg: String| Error::parse(entry_line(text, "virtual_pairs", i), format!("virtual_pairs[{i}]"), msg);
        if p.id >= n || !e.is_virtual(p.id) {
            return Err(err(format!("{} is not a virtual vertex", p.id)));
        }
        let mut given = p.edges.map(|[a, b]| [a.min(b), a.max(b)]);
        given.sort_unstable();
        match e.crossing_pair(p.id) {
            Some(actual) if sorted_pairs(actual) != given => {
                return Err(err(format!(
                    "edges {given:?} disagree with the rotation system {:?}",
                    sorted_pairs(actual)
                )));
            }
            _ => {}
        }
    }
    if let Some(w) = e.virtual_vertices().find(|&w| e.degree(w) == 4 && !listed.contains(&w)) {
        return Err(Error::parse(
            None,
            "virtual_pairs",
            format!("virtual vertex {w} is not listed"),
        ));
    }
    Ok(e)
}

pub fn save_embedding(path: impl AsRef<Path>, e: &OnePlaneGraph) -> Result<()> {
    Ok(fs::write(path, embedding_to_string(e))?)
}

pub fn load_embedding(path: impl AsRef<Path>) -> Result<OnePlaneGraph> {
    embedding_from_str(&fs::read_to_string(path)?)
}

/// A coloring as a JSON object from vertex id to color, in id order.
pub fn coloring_to_string(colors: &[Color]) -> String {
    let mut out = String::from("{\n");
    for (v, c) in colors.iter().enumerate() {
        let sep = if v + 1 == colors.len() { "" } else { "," };
        let _ = writeln!(out, "  \"{v}\": {c}{sep}");
    }
    out.push_str("}\n");
    out
}

/// Parses a coloring object; its keys must be exactly `0..n`.
pub fn parse_coloring(text: &str) -> Result<Vec<Color>> {
    let raw: BTreeMap<String, Color> = serde_json::from_str(text).map_err(json_error)?;
    let mut by_id = BTreeMap::new();
    for (k, c) in raw {
        let v: VertexId = k
            .parse()
            .map_err(|_| Error::parse(None, k.clone(), "key is not a vertex id"))?;
        by_id.insert(v, c);
    }
    by_id
        .iter()
        .enumerate()
        .map(|(i, (&v, &c))| {
            if v == i {
                Ok(c)
            } else {
                Err(Error::parse(None, i.to_string(), "vertex missing from coloring"))
            }
        })
        .collect()
}

pub fn save_coloring(path: impl AsRef<Path>, colors: &[Color]) -> Result<()> {
    Ok(fs::write(path, coloring_to_string(colors))?)
}

pub fn load_coloring(path: impl AsRef<Path>) -> Result<Vec<Color>> {
    parse_coloring(&fs::read_to_string(path)?)
}

/// DOT text of the planarization; crossings are drawn as small red points.
pub fn export_dot(e: &OnePlaneGraph) -> String {
    let mut out = String::from("graph embedding {\n  node [shape=circle];\n");
    for v in 0..e.vertex_count() {
        if e.is_virtual(v) {
            let _ = writeln!(out, "  {v} [shape=point, width=0.12, color=red];");
        } else {
            let _ = writeln!(out, "  {v};");
        }
    }
    for i in 0..e.edge_count() {
        let d = Dart(2 * i);
        let _ = writeln!(out, "  {} -- {};", e.origin(d), e.head(d));
    }
    out.push_str("}\n");
    out
}

pub fn export_graph_dot(g: &Graph) -> String {
    let mut out = String::from("graph g {\n  node [shape=circle];\n");
    for v in g.vertices() {
        let _ = writeln!(out, "  {v};");
    }
    for (u, v) in g.edges() {
        let _ = writeln!(out, "  {u} -- {v};");
    }
    out.push_str("}\n");
    out
}
