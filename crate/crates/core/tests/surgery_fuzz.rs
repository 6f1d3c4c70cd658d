use oddcolor::corpus::{inject_adjacent_crossing, random_one_plane_with, six_four_fuzzed};
use oddcolor::embedding::OnePlaneGraph;
use oddcolor::graph::Graph;
use oddcolor::reduction::{contract_small_edge, find_six_four, find_two_face, uncross_six_four, uncross_two_face};

fn two_face_instance(seed: u64) -> Option<OnePlaneGraph> {
    let n = 6 + seed as usize % 40;
    let (e, _) = random_one_plane_with(n, (seed % 4) as f64 / 3.0, 0.2, seed).ok()?;
    inject_adjacent_crossing(&e, seed).unwrap()
}

#[test]
fn two_face_uncross_fuzz() {
    let mut applied = 0;
    let mut seed = 0;
    while applied < 1000 {
        seed += 1;
        let Some(e) = two_face_instance(seed) else { continue };
        let w = find_two_face(&e).expect("injected crossing");
        let r = uncross_two_face(&e, w).unwrap();
        assert!(r.validate().is_empty(), "seed {seed}: {:?}", r.validate());
        assert_eq!(r.crossing_count() + 1, e.crossing_count(), "seed {seed}");
        assert_eq!(
            r.underlying_graph().unwrap(),
            e.underlying_graph().unwrap(),
            "seed {seed}"
        );
        applied += 1;
    }
    assert!(seed < 2000, "too few instances: {seed} seeds for 1000 hits");
}

#[test]
fn six_four_swap_fuzz() {
    for seed in 0..1000 {
        let e = six_four_fuzzed(seed);
        assert!(e.validate().is_empty(), "seed {seed}");
        let p = find_six_four(&e).unwrap_or_else(|| panic!("seed {seed}: pattern lost"));
        let r = uncross_six_four(&e, &p).unwrap();
        assert!(r.validate().is_empty(), "seed {seed}: {:?}", r.validate());
        assert_eq!(r.crossing_count() + 1, e.crossing_count(), "seed {seed}");
        assert_eq!(
            r.underlying_graph().unwrap(),
            e.underlying_graph().unwrap(),
            "seed {seed}"
        );
    }
}

/// `G - x` plus edges from `y` to `N(x) \ N[y]`, relabeled through `map`.
fn expected_contraction(g: &Graph, x: usize, y: usize, map: &[usize]) -> Graph {
    let mut pos = vec![usize::MAX; g.n()];
    for (i, &old) in map.iter().enumerate() {
        pos[old] = i;
    }
    let mut h = Graph::new(map.len());
    for (a, b) in g.edges() {
        if a != x && b != x {
            h.add_edge(pos[a], pos[b]).unwrap();
        }
    }
    for z in g.neighbors(x).filter(|&z| z != y) {
        h.add_edge(pos[y], pos[z]).unwrap();
    }
    h
}

#[test]
fn small_edge_contraction_fuzz() {
    for seed in 0..300 {
        let n = 5 + seed as usize % 30;
        let (e, _) = random_one_plane_with(n, 0.5, 0.3, seed).unwrap();
        let g = e.underlying_graph().unwrap();
        let Some(oe) = e.original_edges().into_iter().find(|oe| oe.crossing.is_none()) else {
            continue;
        };
        let (x, y) = (oe.u, oe.v);
        let lost = g
            .neighbors(x)
            .filter(|&z| g.has_edge(y, z))
            .filter(|&z| e.find_original_edge(x, z).unwrap().crossing.is_some())
            .count();
        let (r, map) = contract_small_edge(&e, x, y).unwrap();
        assert!(r.validate().is_empty(), "seed {seed}: {:?}", r.validate());
        assert!(!map.contains(&x));
        assert_eq!(r.crossing_count() + lost, e.crossing_count(), "seed {seed}");
        assert_eq!(
            r.underlying_graph().unwrap(),
            expected_contraction(&g, x, y, &map),
            "seed {seed}"
        );
    }
}
