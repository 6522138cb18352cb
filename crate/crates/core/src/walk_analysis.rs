//! Walk-level predicates: chord classification, effective crossing, F4s,
//! sinks, strong primitivity, mixedness and the minimality conditions M1–M4.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::blocks::{block_decomposition, BlockDecomposition};
use crate::error::WalkError;
use crate::graph::Graph;
use crate::walk::ClosedEvenWalk;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ChordKind {
    Bridge,
    Even,
    Odd,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChordReport {
    pub chord: usize,
    pub kind: ChordKind,
    /// Occurrence pairs `(s, j)`, `s < j`, of the chord's endpoints in the walk.
    pub positions: Vec<(usize, usize)>,
}

impl ChordReport {
    fn position(&self) -> (usize, usize) {
        self.positions[0]
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct F4Record {
    /// The two walk edges, in walk order.
    pub walk_edges: (usize, usize),
    /// The two odd chords, by edge index.
    pub chords: (usize, usize),
    pub edge_positions: (usize, usize),
    pub chord_positions: ((usize, usize), (usize, usize)),
    /// Vertices of the piece of the walk after the second walk edge.
    pub side_one: Vec<usize>,
    /// Vertices of the piece of the walk between the two walk edges.
    pub side_two: Vec<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum MinimalityCondition {
    M1,
    M2,
    M3,
    M4,
}

impl fmt::Display for MinimalityCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConditionFailure {
    pub condition: MinimalityCondition,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlockSinks {
    pub block_edges: Vec<usize>,
    pub sinks: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WalkAnalysis {
    pub chords: Vec<ChordReport>,
    pub f4s: Vec<F4Record>,
    pub sinks: Vec<BlockSinks>,
    pub strongly_primitive: bool,
    pub mixed: bool,
    pub failures: Vec<ConditionFailure>,
}

impl WalkAnalysis {
    /// The distinct failed conditions, sorted.
    pub fn failed_conditions(&self) -> Vec<MinimalityCondition> {
        let mut c: Vec<_> = self.failures.iter().map(|f| f.condition).collect();
        c.sort_unstable();
        c.dedup();
        c
    }

    pub fn is_minimal(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn odd_chords(&self) -> impl Iterator<Item = &ChordReport> {
        self.chords.iter().filter(|c| c.kind == ChordKind::Odd)
    }
}

fn walk_blocks(walk: &ClosedEvenWalk, graph: &Graph) -> Result<BlockDecomposition, WalkError> {
    Ok(block_decomposition(graph, Some(walk.edge_set()))?)
}

fn chords_with_blocks(
    walk: &ClosedEvenWalk,
    graph: &Graph,
    d: &BlockDecomposition,
) -> Result<Vec<ChordReport>, WalkError> {
    let on_walk = walk.edge_set();
    let vertices = walk.vertex_set();
    let mut reports = Vec::new();
    for (chord, &[a, b]) in graph.edges().iter().enumerate() {
        if on_walk.contains(chord) || vertices.binary_search(&a).is_err() || vertices.binary_search(&b).is_err() {
            continue;
        }
        let mut positions = Vec::new();
        for s in walk.occurrences(a) {
            for j in walk.occurrences(b) {
                positions.push((s.min(j), s.max(j)));
            }
        }
        positions.sort_unstable();
        let (ba, bb) = (d.blocks_of(a), d.blocks_of(b));
        let bridge = ba.iter().any(|x| bb.iter().any(|y| x != y));
        let kind = if bridge {
            ChordKind::Bridge
        } else {
            let odd = |&(s, j): &(usize, usize)| (j - s) % 2 == 0;
            let first = odd(&positions[0]);
            if positions.iter().any(|p| odd(p) != first) {
                return Err(WalkError::AmbiguousChordParity { chord });
            }
            if first {
                ChordKind::Odd
            } else {
                ChordKind::Even
            }
        };
        reports.push(ChordReport { chord, kind, positions });
    }
    Ok(reports)
}

/// Classifies every chord of the walk as a bridge, an even chord or an odd chord.
///
/// A chord is a bridge when its endpoints can be placed in two different
/// blocks of the walk's subgraph. Otherwise it splits the walk at positions
/// `s < j` into closed walks of lengths `j - s + 1` and `len - (j - s) + 1`,
/// both odd exactly when `j - s` is even.
pub fn classify_chords(walk: &ClosedEvenWalk, graph: &Graph) -> Result<Vec<ChordReport>, WalkError> {
    let d = walk_blocks(walk, graph)?;
    chords_with_blocks(walk, graph, &d)
}

/// Whether chords at positions `f = (s, j)` and `g = (s', j')` cross effectively.
pub fn cross_effectively(f: (usize, usize), g: (usize, usize)) -> bool {
    let (s, j) = (f.0.min(f.1), f.0.max(f.1));
    let (t, k) = (g.0.min(g.1), g.0.max(g.1));
    (s.abs_diff(t)) % 2 == 1 && ((s < t && t < j && j < k) || (t < s && s < k && k < j))
}

fn side(walk: &ClosedEvenWalk, from: usize, to: usize) -> Vec<usize> {
    let mut vs: Vec<usize> = (from..=to).map(|i| walk.vertex(i)).collect();
    vs.sort_unstable();
    vs.dedup();
    vs
}

fn f4s_from_chords(walk: &ClosedEvenWalk, graph: &Graph, chords: &[ChordReport]) -> Vec<F4Record> {
    let odd: Vec<&ChordReport> = chords.iter().filter(|c| c.kind == ChordKind::Odd).collect();
    let on_walk = walk.edge_set();
    let len = walk.len();
    let mut out = Vec::new();
    for (i, f) in odd.iter().enumerate() {
        for g in &odd[i + 1..] {
            let (pf, pg) = (f.position(), g.position());
            if !cross_effectively(pf, pg) {
                continue;
            }
            let [a, b] = graph.endpoints(f.chord);
            let [c, d] = graph.endpoints(g.chord);
            for [(x1, y1), (x2, y2)] in [[(a, c), (b, d)], [(a, d), (b, c)]] {
                let (Some(e1), Some(e2)) = (graph.edge_between(x1, y1), graph.edge_between(x2, y2)) else {
                    continue;
                };
                if !on_walk.contains(e1) || !on_walk.contains(e2) {
                    continue;
                }
                let (q1, q2) = (walk.edge_positions(e1), walk.edge_positions(e2));
                if q1.len() != 1 || q2.len() != 1 || q1[0] % 2 != q2[0] % 2 {
                    continue;
                }
                let (p1, p2) = (q1[0].min(q2[0]), q1[0].max(q2[0]));
                out.push(F4Record {
                    walk_edges: (walk.edges()[p1], walk.edges()[p2]),
                    chords: (f.chord, g.chord),
                    edge_positions: (p1, p2),
                    chord_positions: (pf, pg),
                    side_one: side(walk, p2 + 1, p1 + len),
                    side_two: side(walk, p1 + 1, p2),
                });
            }
        }
    }
    out
}

/// All F4s of the walk: 4-cycles made of two walk edges at positions of
/// equal parity and two effectively crossing odd chords.
pub fn find_f4s(walk: &ClosedEvenWalk, graph: &Graph) -> Result<Vec<F4Record>, WalkError> {
    let chords = classify_chords(walk, graph)?;
    Ok(f4s_from_chords(walk, graph, &chords))
}

/// Whether `chord` has one endpoint on each side of the F4.
pub fn chord_crosses_f4(graph: &Graph, chord: usize, f4: &F4Record) -> bool {
    if chord == f4.chords.0 || chord == f4.chords.1 {
        return false;
    }
    let [a, b] = graph.endpoints(chord);
    let one = |v: usize| f4.side_one.binary_search(&v).is_ok();
    let two = |v: usize| f4.side_two.binary_search(&v).is_ok();
    (one(a) && two(b)) || (one(b) && two(a))
}

fn parity_of(walk: &ClosedEvenWalk, e: usize) -> usize {
    walk.edge_positions(e)[0] % 2
}

fn sinks_with_blocks(walk: &ClosedEvenWalk, graph: &Graph, d: &BlockDecomposition) -> (Vec<BlockSinks>, bool) {
    let mut all = Vec::new();
    let mut strong = true;
    for block in d.blocks.iter().filter(|b| b.is_cycle()) {
        let edges = block.edge_set();
        let mut sinks = Vec::new();
        for &x in &block.vertices {
            let at: Vec<usize> = graph.incident(x).iter().copied().filter(|&e| edges.contains(e)).collect();
            if at.len() == 2 && parity_of(walk, at[0]) == parity_of(walk, at[1]) {
                sinks.push(x);
            }
        }
        for &e in &block.edges {
            let [u, v] = graph.endpoints(e);
            if sinks.contains(&u) && sinks.contains(&v) {
                strong = false;
            }
        }
        all.push(BlockSinks { block_edges: block.edges.clone(), sinks });
    }
    (all, strong)
}

/// Sinks of every cyclic block, and whether no cyclic block has two adjacent sinks.
pub fn sinks_and_strong_primitivity(
    walk: &ClosedEvenWalk,
    graph: &Graph,
) -> Result<(Vec<BlockSinks>, bool), WalkError> {
    let d = walk_blocks(walk, graph)?;
    Ok(sinks_with_blocks(walk, graph, &d))
}

fn mixed_with_blocks(walk: &ClosedEvenWalk, d: &BlockDecomposition) -> bool {
    d.blocks.iter().filter(|b| b.is_cycle()).all(|b| {
        let first = parity_of(walk, b.edges[0]);
        b.edges.iter().any(|&e| parity_of(walk, e) != first)
    })
}

/// True when no cyclic block lies entirely in one parity class.
pub fn is_mixed(walk: &ClosedEvenWalk, graph: &Graph) -> Result<bool, WalkError> {
    let d = walk_blocks(walk, graph)?;
    Ok(mixed_with_blocks(walk, &d))
}

/// Every walk-level predicate at once, plus the failed minimality conditions.
pub fn analyze_walk(walk: &ClosedEvenWalk, graph: &Graph) -> Result<WalkAnalysis, WalkError> {
    let d = walk_blocks(walk, graph)?;
    let chords = chords_with_blocks(walk, graph, &d)?;
    let f4s = f4s_from_chords(walk, graph, &chords);
    let (sinks, strongly_primitive) = sinks_with_blocks(walk, graph, &d);
    let mixed = mixed_with_blocks(walk, &d);
    let name = Graph::edge_name;

    let mut failures = Vec::new();
    for c in chords.iter().filter(|c| c.kind != ChordKind::Odd) {
        let kind = if c.kind == ChordKind::Bridge { "a bridge" } else { "an even chord" };
        failures.push(ConditionFailure {
            condition: MinimalityCondition::M1,
            detail: format!("{} is {kind}", name(c.chord)),
        });
    }
    let odd: Vec<&ChordReport> = chords.iter().filter(|c| c.kind == ChordKind::Odd).collect();
    for (i, f) in odd.iter().enumerate() {
        for g in &odd[i + 1..] {
            if !cross_effectively(f.position(), g.position()) {
                continue;
            }
            if !f4s.iter().any(|r| r.chords == (f.chord, g.chord)) {
                failures.push(ConditionFailure {
                    condition: MinimalityCondition::M2,
                    detail: format!(
                        "{} and {} cross effectively without forming an F4",
                        name(f.chord),
                        name(g.chord)
                    ),
                });
            }
        }
    }
    for r in &f4s {
        for c in &odd {
            if chord_crosses_f4(graph, c.chord, r) {
                failures.push(ConditionFailure {
                    condition: MinimalityCondition::M3,
                    detail: format!(
                        "{} crosses the F4 ({}, {}, {}, {})",
                        name(c.chord),
                        name(r.walk_edges.0),
                        name(r.chords.0),
                        name(r.walk_edges.1),
                        name(r.chords.1)
                    ),
                });
            }
        }
    }
    if !strongly_primitive {
        let block = sinks
            .iter()
            .find(|s| {
                s.block_edges.iter().any(|&e| {
                    let [u, v] = graph.endpoints(e);
                    s.sinks.contains(&u) && s.sinks.contains(&v)
                })
            })
            .expect("a block with adjacent sinks");
        let labels: Vec<&str> = block.sinks.iter().map(|&v| graph.label(v)).collect();
        failures.push(ConditionFailure {
            condition: MinimalityCondition::M4,
            detail: format!("adjacent sinks among {{{}}} in a cyclic block", labels.join(", ")),
        });
    }
    Ok(WalkAnalysis { chords, f4s, sinks, strongly_primitive, mixed, failures })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::walk::walk_from_primitive_subgraph;

    fn k4() -> Graph {
        Graph::from_edges(4, &[(0, 1), (2, 3), (0, 2), (1, 3), (0, 3), (1, 2)]).unwrap()
    }

    fn chain() -> Graph {
        Graph::from_edges(6, &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 5), (5, 3)]).unwrap()
    }

    /// Square 0-1-2-3 with triangles on the square edges' ends 0 and 1.
    fn tst_adjacent() -> Graph {
        Graph::from_edges(
            8,
            &[
                (0, 1), (1, 2), (2, 3), (3, 0),
                (0, 4), (4, 5), (5, 0),
                (1, 6), (6, 7), (7, 1),
            ],
        )
        .unwrap()
    }

    fn c8_with_chords() -> (Graph, ClosedEvenWalk) {
        let mut edges: Vec<(usize, usize)> = (0..8).map(|i| (i, (i + 1) % 8)).collect();
        edges.extend([(1, 5), (0, 4), (2, 6), (5, 7)]);
        let g = Graph::from_edges(8, &edges).unwrap();
        let w = ClosedEvenWalk::from_vertices(&g, (0..8).collect()).unwrap();
        (g, w)
    }

    #[test]
    fn k4_square_chords_are_odd_and_form_two_f4s() {
        let g = k4();
        let w = ClosedEvenWalk::from_edges(&g, 0, vec![0, 3, 1, 2]).unwrap();
        let chords = classify_chords(&w, &g).unwrap();
        assert_eq!(chords.len(), 2);
        assert!(chords.iter().all(|c| c.kind == ChordKind::Odd));
        assert_eq!((chords[0].chord, chords[1].chord), (4, 5));
        assert!(cross_effectively(chords[0].positions[0], chords[1].positions[0]));
        let f4s = find_f4s(&w, &g).unwrap();
        let shapes: Vec<_> = f4s.iter().map(|r| (r.walk_edges, r.chords)).collect();
        assert!(shapes.contains(&((0, 1), (4, 5))));
        assert!(shapes.contains(&((3, 2), (4, 5))));
        assert_eq!(f4s.len(), 2);
        for r in &f4s {
            assert_eq!(r.edge_positions.0 % 2, r.edge_positions.1 % 2);
            assert!(!chord_crosses_f4(&g, 4, r));
        }
        let a = analyze_walk(&w, &g).unwrap();
        assert!(a.is_minimal() && a.mixed && a.strongly_primitive);
    }

    #[test]
    fn cross_effectively_examples() {
        assert!(cross_effectively((1, 3), (2, 4)));
        assert!(!cross_effectively((1, 3), (1, 3)));
        assert!(!cross_effectively((1, 4), (5, 8)));
        assert!(!cross_effectively((0, 4), (2, 6)));
    }

    #[test]
    fn chain_with_far_edge_has_a_bridge() {
        let mut edges = vec![(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 5), (5, 3)];
        edges.push((0, 4));
        let g = Graph::from_edges(6, &edges).unwrap();
        let w = walk_from_primitive_subgraph(&g, (0..7).collect()).unwrap();
        let chords = classify_chords(&w, &g).unwrap();
        assert_eq!(chords.len(), 1);
        assert_eq!(chords[0].kind, ChordKind::Bridge);
        let a = analyze_walk(&w, &g).unwrap();
        assert_eq!(a.failed_conditions(), vec![MinimalityCondition::M1]);
    }

    #[test]
    fn chain_sinks_are_the_cut_vertices() {
        let g = chain();
        let w = walk_from_primitive_subgraph(&g, g.all_edges()).unwrap();
        let (sinks, strong) = sinks_and_strong_primitivity(&w, &g).unwrap();
        assert!(strong);
        let mut found: Vec<usize> = sinks.iter().flat_map(|s| s.sinks.clone()).collect();
        found.sort_unstable();
        assert_eq!(found, vec![2, 3]);
        assert!(is_mixed(&w, &g).unwrap());
    }

    #[test]
    fn adjacent_attachment_fails_strong_primitivity_only() {
        let g = tst_adjacent();
        let w = walk_from_primitive_subgraph(&g, g.all_edges()).unwrap();
        let a = analyze_walk(&w, &g).unwrap();
        assert!(a.mixed);
        assert!(!a.strongly_primitive);
        assert_eq!(a.failed_conditions(), vec![MinimalityCondition::M4]);
        let square = a.sinks.iter().find(|s| s.block_edges == vec![0, 1, 2, 3]).unwrap();
        assert_eq!(square.sinks, vec![0, 1]);
    }

    #[test]
    fn c4_and_bowtie_have_no_sinks_or_chords() {
        let g = Graph::from_edges(4, &[(0, 1), (2, 3), (1, 2), (3, 0)]).unwrap();
        let w = walk_from_primitive_subgraph(&g, g.all_edges()).unwrap();
        let a = analyze_walk(&w, &g).unwrap();
        assert!(a.chords.is_empty() && a.f4s.is_empty());
        assert!(a.sinks.iter().all(|s| s.sinks.is_empty()));
        let b = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 0)]).unwrap();
        let w = walk_from_primitive_subgraph(&b, b.all_edges()).unwrap();
        assert!(find_f4s(&w, &b).unwrap().is_empty());
        assert!(is_mixed(&w, &b).unwrap());
    }

    #[test]
    fn even_chord_of_a_hexagon() {
        let mut edges: Vec<(usize, usize)> = (0..6).map(|i| (i, (i + 1) % 6)).collect();
        edges.push((0, 3));
        let g = Graph::from_edges(6, &edges).unwrap();
        let w = ClosedEvenWalk::from_vertices(&g, (0..6).collect()).unwrap();
        let chords = classify_chords(&w, &g).unwrap();
        assert_eq!(chords[0].kind, ChordKind::Even);
        assert_eq!(analyze_walk(&w, &g).unwrap().failed_conditions(), vec![MinimalityCondition::M1]);
    }

    #[test]
    fn octagon_chord_crossing_an_f4() {
        let (g, w) = c8_with_chords();
        let a = analyze_walk(&w, &g).unwrap();
        let odd: Vec<usize> = a.odd_chords().map(|c| c.chord).collect();
        assert_eq!(odd, vec![8, 9, 10, 11]);
        let f4 = a.f4s.iter().find(|r| r.chords == (8, 9)).expect("v2v6 and v1v5 form an F4");
        assert_eq!(f4.walk_edges, (0, 4));
        assert_eq!(f4.side_two, vec![1, 2, 3, 4]);
        assert_eq!(f4.side_one, vec![0, 5, 6, 7]);
        assert!(chord_crosses_f4(&g, 10, f4));
        assert!(!chord_crosses_f4(&g, 11, f4));
        assert!(a.failed_conditions().contains(&MinimalityCondition::M3));
    }
}
