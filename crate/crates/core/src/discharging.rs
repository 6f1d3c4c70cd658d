//! Charges on the planarization, the three redistribution rules, and an
//! audit explaining every element that ends with negative charge.
//!
//! Initial charge is `d_H(x) - 4` for every vertex and `d(f) - 4` for every
//! face, which sums to `-8` on a connected plane graph. The rules:
//!
//! * `R1`: a face of length at least 5 splits its charge equally among its
//!   corners at 2-vertices (a vertex met twice on the walk gets two shares).
//! * `R2`: a big vertex sends 1/2 to each incident 3-face.
//! * `R3`: a big vertex sends 1/2 to each 2-vertex adjacent to it in `G`.
//!
//! Every transfer depends only on the structure, not on current charges, so
//! the rules commute.

use std::collections::BTreeSet;

use num_rational::Rational64;
use num_traits::Signed;
use serde::{Serialize, Serializer};

use crate::embedding::{Dart, Face, OnePlaneGraph};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};
use crate::reduction::{self, Thresholds};

pub type Charge = Rational64;

fn ser_charge<S: Serializer>(c: &Charge, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&c.to_string())
}

fn ser_charges<S: Serializer>(cs: &[Charge], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(cs.iter().map(|c| c.to_string()))
}

/// A vertex of `H` or a face identified by its smallest dart.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(tag = "kind", content = "id", rename_all = "lowercase")]
pub enum Element {
    Vertex(VertexId),
    Face(Dart),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChargeMap {
    #[serde(serialize_with = "ser_charges")]
    pub vertex_charge: Vec<Charge>,
    /// Face ids, aligned with `face_charge`.
    pub face_ids: Vec<Dart>,
    #[serde(serialize_with = "ser_charges")]
    pub face_charge: Vec<Charge>,
}

impl ChargeMap {
    pub fn total(&self) -> Charge {
        self.vertex_charge.iter().chain(&self.face_charge).copied().sum()
    }

    pub fn face(&self, id: Dart) -> Option<Charge> {
        self.face_ids.iter().position(|&f| f == id).map(|i| self.face_charge[i])
    }

    pub fn get(&self, e: Element) -> Option<Charge> {
        match e {
            Element::Vertex(v) => self.vertex_charge.get(v).copied(),
            Element::Face(f) => self.face(f),
        }
    }

    fn slot(&mut self, e: Element) -> &mut Charge {
        match e {
            Element::Vertex(v) => &mut self.vertex_charge[v],
            Element::Face(f) => {
                let i = self.face_ids.iter().position(|&x| x == f).expect("known face");
                &mut self.face_charge[i]
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Rule {
    R1,
    R2,
    R3,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Transfer {
    pub rule: Rule,
    pub from: Element,
    pub to: Element,
    #[serde(serialize_with = "ser_charge")]
    pub amount: Charge,
}

/// Initial charges. Requires a connected planarization with at least one edge.
pub fn initial_charges(e: &OnePlaneGraph, faces: &[Face]) -> Result<ChargeMap> {
    if e.edge_count() == 0 {
        return Err(Error::EmptyEmbedding);
    }
    if e.components().len() != 1 {
        return Err(Error::NotConnected);
    }
    let four = Charge::from_integer(4);
    Ok(ChargeMap {
        vertex_charge: (0..e.vertex_count())
            .map(|v| Charge::from_integer(e.degree(v) as i64) - four)
            .collect(),
        face_ids: faces.iter().map(Face::id).collect(),
        face_charge: faces
            .iter()
            .map(|f| Charge::from_integer(f.len() as i64) - four)
            .collect(),
    })
}

fn is_two_vertex(e: &OnePlaneGraph, v: VertexId) -> bool {
    !e.is_virtual(v) && e.degree(v) == 2
}

fn is_big(g: &Graph, t: &Thresholds, v: VertexId) -> bool {
    v < g.n() && g.degree(v) >= t.big
}

/// The transfers prescribed by one rule.
pub fn rule_transfers(e: &OnePlaneGraph, faces: &[Face], g: &Graph, t: &Thresholds, rule: Rule) -> Vec<Transfer> {
    let half = Charge::new(1, 2);
    let mut out = Vec::new();
    match rule {
        Rule::R1 => {
            for f in faces.iter().filter(|f| f.len() >= 5) {
                let corners: Vec<VertexId> = f
                    .darts()
                    .iter()
                    .map(|&d| e.origin(d))
                    .filter(|&v| is_two_vertex(e, v))
                    .collect();
                if corners.is_empty() {
                    continue;
                }
                let share = Charge::new(f.len() as i64 - 4, corners.len() as i64);
                for v in corners {
                    out.push(Transfer {
                        rule,
                        from: Element::Face(f.id()),
                        to: Element::Vertex(v),
                        amount: share,
                    });
                }
            }
        }
        Rule::R2 => {
            for f in faces.iter().filter(|f| f.len() == 3) {
                for &d in f.darts() {
                    let v = e.origin(d);
                    if is_big(g, t, v) {
                        out.push(Transfer {
                            rule,
                            from: Element::Vertex(v),
                            to: Element::Face(f.id()),
                            amount: half,
                        });
                    }
                }
            }
        }
        Rule::R3 => {
            for v in g.vertices().filter(|&v| is_big(g, t, v)) {
                for u in g.neighbors(v).filter(|&u| is_two_vertex(e, u)) {
                    out.push(Transfer {
                        rule,
                        from: Element::Vertex(v),
                        to: Element::Vertex(u),
                        amount: half,
                    });
                }
            }
        }
    }
    out
}

/// Final charges after applying the rules in the given order.
pub fn apply_rules_in_order(
    e: &OnePlaneGraph,
    faces: &[Face],
    cm: &ChargeMap,
    t: &Thresholds,
    order: &[Rule],
) -> Result<ChargeMap> {
    let g = e.underlying_graph()?;
    let mut out = cm.clone();
    for &rule in order {
        for tr in rule_transfers(e, faces, &g, t, rule) {
            *out.slot(tr.from) -= tr.amount;
            *out.slot(tr.to) += tr.amount;
        }
    }
    Ok(out)
}

/// Final charges `ch*` after `R1`, `R2`, `R3`.
pub fn apply_rules(e: &OnePlaneGraph, faces: &[Face], cm: &ChargeMap, t: &Thresholds) -> Result<ChargeMap> {
    apply_rules_in_order(e, faces, cm, t, &[Rule::R1, Rule::R2, Rule::R3])
}

/// Total charge a vertex gives away under `R2` and `R3`.
pub fn big_vertex_outflow(e: &OnePlaneGraph, faces: &[Face], g: &Graph, t: &Thresholds, v: VertexId) -> Charge {
    [Rule::R2, Rule::R3]
        .into_iter()
        .flat_map(|r| rule_transfers(e, faces, g, t, r))
        .filter(|tr| tr.from == Element::Vertex(v))
        .map(|tr| tr.amount)
        .sum()
}

/// A structural property the discharging argument relies on; a negative
/// element is explained by the properties that fail around it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum AuditTag {
    /// `G` has a bridge or a vertex of degree at most 1.
    TwoEdgeConnected,
    /// An odd vertex of degree at most `ODD_MAX`.
    OddDegree,
    /// Two adjacent small vertices.
    NoAdjacentSmall,
    /// An uncrossed edge at a small vertex.
    CrossedSmallEdges,
    /// A 2-face, loop, or two crossing edges with a common endpoint.
    NoTwoFace,
    /// A 3-face with fewer than two big vertices.
    ThreeFaceBig,
    /// A 2-vertex not incident to a 5+-face and another 4+-face.
    TwoVertexFaces,
    /// The 6-face/4-face configuration removable by swapping two 2-vertices.
    SixFour,
    /// A vertex with `d2(v) >= 1` and `2d(v) < d2(v) + K`.
    D2Inequality,
    /// None of the above; would indicate a gap in the argument or a bug.
    Unexplained,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AuditEntry {
    pub element: Element,
    #[serde(serialize_with = "ser_charge")]
    pub charge: Charge,
    pub violations: Vec<AuditTag>,
    /// Vertices of `H` involved in the violations.
    pub witness: Vec<VertexId>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AuditReport {
    #[serde(serialize_with = "ser_charge")]
    pub initial_total: Charge,
    #[serde(serialize_with = "ser_charge")]
    pub final_total: Charge,
    pub entries: Vec<AuditEntry>,
}

impl AuditReport {
    pub fn is_clean(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn unexplained(&self) -> impl Iterator<Item = &AuditEntry> {
        self.entries
            .iter()
            .filter(|e| e.violations.contains(&AuditTag::Unexplained))
    }
}

/// Computes charges, applies the rules, and explains every negative element.
pub fn discharge(e: &OnePlaneGraph, t: &Thresholds) -> Result<(ChargeMap, ChargeMap, AuditReport)> {
    let faces = e.faces();
    let initial = initial_charges(e, &faces)?;
    let fin = apply_rules(e, &faces, &initial, t)?;
    let report = audit(e, &faces, &initial, &fin, t)?;
    Ok((initial, fin, report))
}

/// Lists every element with negative final charge together with the
/// structural properties that fail around it.
pub fn audit(
    e: &OnePlaneGraph,
    faces: &[Face],
    initial: &ChargeMap,
    fin: &ChargeMap,
    t: &Thresholds,
) -> Result<AuditReport> {
    let g = e.underlying_graph()?;
    let ctx = AuditCtx::new(e, faces, &g, t);
    let mut entries = Vec::new();
    for v in 0..e.vertex_count() {
        let ch = fin.vertex_charge[v];
        if ch.is_negative() {
            entries.push(ctx.explain(Element::Vertex(v), ch));
        }
    }
    for (i, f) in faces.iter().enumerate() {
        let ch = fin.face_charge[i];
        if ch.is_negative() {
            entries.push(ctx.explain(Element::Face(f.id()), ch));
        }
    }
    Ok(AuditReport {
        initial_total: initial.total(),
        final_total: fin.total(),
        entries,
    })
}

struct AuditCtx<'a> {
    e: &'a OnePlaneGraph,
    faces: &'a [Face],
    face_of: Vec<usize>,
    g: &'a Graph,
    t: &'a Thresholds,
    bridge_ends: BTreeSet<VertexId>,
}

impl<'a> AuditCtx<'a> {
    fn new(e: &'a OnePlaneGraph, faces: &'a [Face], g: &'a Graph, t: &'a Thresholds) -> Self {
        let bridge_ends = g.bridges().into_iter().flat_map(|(a, b)| [a, b]).collect();
        AuditCtx {
            e,
            faces,
            face_of: e.face_index(faces),
            g,
            t,
            bridge_ends,
        }
    }

    fn small(&self, v: VertexId) -> bool {
        self.g.degree(v) < self.t.big
    }

    fn faces_at(&self, v: VertexId) -> Vec<usize> {
        self.e.rotation(v).iter().map(|d| self.face_of[d.0]).collect()
    }

    fn vertex_tags(&self, v: VertexId, tags: &mut BTreeSet<AuditTag>) {
        let (e, g, t) = (self.e, self.g, self.t);
        if e.is_virtual(v) {
            if let Some([(a, b), (c, d)]) = e.crossing_pair(v) {
                if a == c || a == d || b == c || b == d {
                    tags.insert(AuditTag::NoTwoFace);
                }
            }
            return;
        }
        let d = g.degree(v);
        if d <= 1 || self.bridge_ends.contains(&v) {
            tags.insert(AuditTag::TwoEdgeConnected);
        }
        if d % 2 == 1 && d <= t.odd_max {
            tags.insert(AuditTag::OddDegree);
        }
        if self.small(v) {
            if g.neighbors(v).any(|u| self.small(u)) {
                tags.insert(AuditTag::NoAdjacentSmall);
            }
            if e.rotation(v).iter().any(|&x| !e.is_virtual(e.head(x))) {
                tags.insert(AuditTag::CrossedSmallEdges);
            }
        }
        let d2 = g.neighbors(v).filter(|&u| g.degree(u) == 2).count();
        if d2 >= 1 && 2 * d < d2 + t.k {
            tags.insert(AuditTag::D2Inequality);
        }
        if d == 2 {
            let fs = self.faces_at(v);
            if fs[0] == fs[1] {
                tags.insert(AuditTag::TwoEdgeConnected);
            } else {
                let (a, b) = (self.faces[fs[0]].len(), self.faces[fs[1]].len());
                if !(a >= 5 && b >= 4 || b >= 5 && a >= 4) {
                    tags.insert(AuditTag::TwoVertexFaces);
                }
            }
            if reduction::find_six_four_at(e, v).is_some() {
                tags.insert(AuditTag::SixFour);
            }
        }
    }

    fn face_tags(&self, fi: usize, tags: &mut BTreeSet<AuditTag>) {
        let f = &self.faces[fi];
        if f.len() <= 2 {
            tags.insert(AuditTag::NoTwoFace);
        }
        if f.len() == 3 {
            let big = f
                .darts()
                .iter()
                .filter(|&&d| is_big(self.g, self.t, self.e.origin(d)))
                .count();
            if big < 2 {
                tags.insert(AuditTag::ThreeFaceBig);
            }
        }
    }

    /// Checks the element, the faces around it, and every vertex on those
    /// faces together with their `G`-neighbors.
    fn explain(&self, el: Element, charge: Charge) -> AuditEntry {
        let mut face_set = BTreeSet::new();
        let mut seeds = BTreeSet::new();
        match el {
            Element::Vertex(v) => {
                seeds.insert(v);
                face_set.extend(self.faces_at(v));
            }
            Element::Face(id) => {
                face_set.insert(self.face_of[id.0]);
            }
        }
        for &fi in &face_set {
            seeds.extend(self.faces[fi].darts().iter().map(|&d| self.e.origin(d)));
        }
        let mut around = seeds.clone();
        for &v in &seeds {
            if v < self.g.n() {
                around.extend(self.g.neighbors(v));
            }
            around.extend(self.e.rotation(v).iter().map(|&d| self.e.head(d)));
        }
        let mut tags = BTreeSet::new();
        let mut witness = Vec::new();
        for &fi in &face_set {
            let before = tags.len();
            self.face_tags(fi, &mut tags);
            if tags.len() > before {
                witness.extend(self.faces[fi].darts().iter().map(|&d| self.e.origin(d)));
            }
        }
        for &v in &around {
            let mut local = BTreeSet::new();
            self.vertex_tags(v, &mut local);
            if !local.is_empty() {
                witness.push(v);
                tags.extend(local);
            }
        }
        if tags.is_empty() {
            tags.insert(AuditTag::Unexplained);
        }
        witness.sort_unstable();
        witness.dedup();
        AuditEntry {
            element: el,
            charge,
            violations: tags.into_iter().collect(),
            witness,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embedding::VertexKind::Real;

    fn cycle(n: usize) -> OnePlaneGraph {
        let rot: Vec<Vec<VertexId>> = (0..n).map(|i| vec![(i + n - 1) % n, (i + 1) % n]).collect();
        OnePlaneGraph::from_neighbor_rotations(vec![Real; n], &rot).unwrap()
    }

    fn r(p: i64, q: i64) -> Charge {
        Charge::new(p, q)
    }

    #[test]
    fn triangle_and_pentagon_initial() {
        let tri = cycle(3);
        let cm = initial_charges(&tri, &tri.faces()).unwrap();
        assert_eq!(cm.vertex_charge, vec![r(-2, 1); 3]);
        assert_eq!(cm.face_charge, vec![r(-1, 1); 2]);
        assert_eq!(cm.total(), r(-8, 1));

        let c5 = cycle(5);
        let cm = initial_charges(&c5, &c5.faces()).unwrap();
        assert_eq!(cm.vertex_charge, vec![r(-2, 1); 5]);
        assert_eq!(cm.face_charge, vec![r(1, 1); 2]);
        assert_eq!(cm.total(), r(-8, 1));
    }

    #[test]
    fn disconnected_and_empty_rejected() {
        let rot = vec![vec![1], vec![0], vec![3], vec![2]];
        let e = OnePlaneGraph::from_neighbor_rotations(vec![Real; 4], &rot).unwrap();
        assert!(matches!(initial_charges(&e, &e.faces()), Err(Error::NotConnected)));
        let e = OnePlaneGraph::from_neighbor_rotations(vec![Real], &[vec![]]).unwrap();
        assert!(matches!(initial_charges(&e, &e.faces()), Err(Error::EmptyEmbedding)));
    }

    /// Wheel-like fan: hub 0 joined to every vertex of the cycle 1..=m, but
    /// with the rim cut between `m` and 1 so the outer face is long.
    fn big_hub(m: usize) -> OnePlaneGraph {
        let n = m + 1;
        let mut rot: Vec<Vec<VertexId>> = vec![Vec::new(); n];
        // Hub rotation: rim vertices in ccw order.
        rot[0] = (1..=m).collect();
        for (i, r) in rot.iter_mut().enumerate().skip(1) {
            // ccw at rim vertex i (rim on a circle around the hub): next rim, hub, previous rim.
            if i < m {
                r.push(i + 1);
            }
            r.push(0);
            if i > 1 {
                r.push(i - 1);
            }
        }
        OnePlaneGraph::from_neighbor_rotations(vec![Real; n], &rot).unwrap()
    }

    #[test]
    fn three_faces_with_two_big_corners_end_at_zero() {
        // Hub of degree 13, rim vertices 1 and 13 have degree 2; inner faces are triangles.
        let t = Thresholds::default();
        let e = big_hub(13);
        assert!(e.validate().is_empty(), "{:?}", e.validate());
        let faces = e.faces();
        let cm = initial_charges(&e, &faces).unwrap();
        let fin = apply_rules(&e, &faces, &cm, &t).unwrap();
        assert_eq!(fin.total(), r(-8, 1));
        // Triangles have only the hub as a big corner: -1 + 1/2.
        for (i, f) in faces.iter().enumerate() {
            if f.len() == 3 {
                assert_eq!(fin.face_charge[i], r(-1, 2));
            }
        }
    }

    #[test]
    fn seven_face_with_two_two_vertices_sends_three_halves() {
        // Heptagon 0..6; an inner hub 7 joined to 0..4 plus the chord 0-4 leaves
        // 5 and 6 as the only 2-vertices on the outer 7-face.
        let pts: Vec<(f64, f64)> = (0..7)
            .map(|i| {
                let a = i as f64 * std::f64::consts::TAU / 7.0;
                (a.cos(), a.sin())
            })
            .chain([(0.3, 0.4)])
            .collect();
        let mut segs: Vec<(VertexId, VertexId)> = (0..7).map(|i| (i, (i + 1) % 7)).collect();
        segs.extend([(0, 4), (7, 0), (7, 1), (7, 2), (7, 3), (7, 4)]);
        let e = OnePlaneGraph::from_straight_line(vec![Real; 8], &pts, &segs).unwrap();
        assert!(e.validate().is_empty(), "{:?}", e.validate());
        let faces = e.faces();
        let g = e.underlying_graph().unwrap();
        let tr = rule_transfers(&e, &faces, &g, &Thresholds::default(), Rule::R1);
        let seven = faces.iter().find(|f| f.len() == 7).unwrap().id();
        let mut got: Vec<(Element, Charge)> = tr
            .iter()
            .filter(|x| x.from == Element::Face(seven))
            .map(|x| (x.to, x.amount))
            .collect();
        got.sort();
        assert_eq!(got, vec![(Element::Vertex(5), r(3, 2)), (Element::Vertex(6), r(3, 2))]);
    }

    #[test]
    fn repeated_corner_gets_a_share_per_incidence() {
        // The single face of the path P4 walks 0,1,2,3,2,1 and meets 1 and 2 twice.
        let e =
            OnePlaneGraph::from_neighbor_rotations(vec![Real; 4], &[vec![1], vec![0, 2], vec![1, 3], vec![2]]).unwrap();
        let faces = e.faces();
        assert_eq!(faces.len(), 1);
        assert_eq!(faces[0].len(), 6);
        let g = e.underlying_graph().unwrap();
        let tr = rule_transfers(&e, &faces, &g, &Thresholds::default(), Rule::R1);
        // Corners at 2-vertices: 1 twice and 2 twice; 2 / 4 each.
        assert_eq!(tr.len(), 4);
        assert!(tr.iter().all(|x| x.amount == r(1, 2)));
    }

    #[test]
    fn five_face_with_one_two_vertex_sends_one() {
        // Wheel with rim 0..5 and hub 5, minus the spoke 0-5: the outer
        // 5-face has the single 2-vertex 0.
        let pts: Vec<(f64, f64)> = (0..5)
            .map(|i| {
                let a = std::f64::consts::TAU * i as f64 / 5.0;
                (a.cos(), a.sin())
            })
            .chain([(0.0, 0.0)])
            .collect();
        let edges = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (1, 5), (2, 5), (3, 5), (4, 5)];
        let e = OnePlaneGraph::from_straight_line(vec![Real; 6], &pts, &edges).unwrap();
        assert!(e.validate().is_empty(), "{:?}", e.validate());
        let faces = e.faces();
        let g = e.underlying_graph().unwrap();
        let tr = rule_transfers(&e, &faces, &g, &Thresholds::default(), Rule::R1);
        let fives: Vec<&Face> = faces.iter().filter(|f| f.len() == 5).collect();
        assert_eq!(fives.len(), 1);
        for f in fives {
            let got: Vec<(Element, Charge)> = tr
                .iter()
                .filter(|x| x.from == Element::Face(f.id()))
                .map(|x| (x.to, x.amount))
                .collect();
            assert_eq!(got, vec![(Element::Vertex(0), r(1, 1))]);
        }
    }

    #[test]
    fn rules_commute_and_conserve() {
        let e = big_hub(14);
        let faces = e.faces();
        let t = Thresholds::default();
        let cm = initial_charges(&e, &faces).unwrap();
        let base = apply_rules(&e, &faces, &cm, &t).unwrap();
        for order in [
            [Rule::R3, Rule::R2, Rule::R1],
            [Rule::R2, Rule::R1, Rule::R3],
            [Rule::R1, Rule::R3, Rule::R2],
        ] {
            assert_eq!(apply_rules_in_order(&e, &faces, &cm, &t, &order).unwrap(), base);
        }
        assert_eq!(base.total(), r(-8, 1));
    }

    #[test]
    fn triangle_audit_reports_three_face() {
        let tri = cycle(3);
        let (_, _, report) = discharge(&tri, &Thresholds::default()).unwrap();
        assert!(!report.is_clean());
        assert_eq!(report.final_total, r(-8, 1));
        let face = report
            .entries
            .iter()
            .find(|x| matches!(x.element, Element::Face(_)))
            .unwrap();
        assert!(face.violations.contains(&AuditTag::ThreeFaceBig));
        assert_eq!(report.unexplained().count(), 0);
    }

    #[test]
    fn two_vertex_on_two_four_faces_is_named() {
        // 2-vertex v = 0 with edges to 3 and 4 crossed at virtual vertices 5
        // and 6 by two edges 1-2. Both faces at v are 4-faces v,5,1,6 and v,6,2,5.
        use crate::embedding::VertexKind::Virtual;
        let pts = [
            (0.0, 0.0),
            (0.0, 1.0),
            (0.0, -1.0),
            (-2.0, 0.0),
            (2.0, 0.0),
            (-1.0, 0.0),
            (1.0, 0.0),
        ];
        let segs = [(0, 5), (5, 3), (0, 6), (6, 4), (1, 5), (5, 2), (1, 6), (6, 2)];
        let mut kinds = vec![Real; 5];
        kinds.extend([Virtual, Virtual]);
        let e = OnePlaneGraph::from_straight_line(kinds, &pts, &segs).unwrap();
        // The two 1-2 edges are parallel, so only the faces are meaningful here.
        assert!(e
            .validate()
            .contains(&crate::embedding::Violation::ParallelEdges { u: 1, v: 2 }));
        let faces = e.faces();
        let face_of = e.face_index(&faces);
        assert!(e.rotation(0).iter().all(|d| faces[face_of[d.0]].len() == 4));
        let g = Graph::from_edges(5, [(0, 3), (0, 4), (1, 2)]).unwrap();
        let t = Thresholds::default();
        let ctx = AuditCtx::new(&e, &faces, &g, &t);
        let entry = ctx.explain(Element::Vertex(0), r(-1, 1));
        assert!(entry.violations.contains(&AuditTag::TwoVertexFaces), "{entry:?}");
        assert!(entry.witness.contains(&0));
    }
}
