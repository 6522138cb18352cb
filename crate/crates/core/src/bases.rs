//! Circuits, Graver basis, universal Gröbner basis, universal Markov basis and
//! indispensable binomials of a graph, computed from primitive walks.

use std::collections::BTreeSet;

use rayon::prelude::*;

use crate::basis_set::{BasisElement, BasisKind, BasisSet, ElementTags};
use crate::binomial::Binomial;
use crate::error::Error;
use crate::graph::{EdgeSet, Graph};
use crate::oracle::{fiber_graph, ToricConfig};
use crate::walk::{is_primitive_subgraph, walk_from_primitive_subgraph, ClosedEvenWalk};
use crate::walk_analysis::{analyze_walk, WalkAnalysis};

/// Graphs with more edges are refused unless forced.
pub const SCALE_GUARD: usize = 20;

/// A primitive binomial together with its walk and walk analysis.
#[derive(Clone, Debug)]
pub struct PrimitiveElement {
    pub support: EdgeSet,
    pub walk: ClosedEvenWalk,
    pub binomial: Binomial,
    pub analysis: WalkAnalysis,
    pub circuit: bool,
}

impl PrimitiveElement {
    fn build(graph: &Graph, support: EdgeSet) -> Result<Self, Error> {
        let walk = walk_from_primitive_subgraph(graph, support)?.canonical();
        let binomial = walk.binomial(graph)?;
        let analysis = analyze_walk(&walk, graph)?;
        Ok(PrimitiveElement { support, walk, binomial, analysis, circuit: false })
    }

    pub fn tags(&self) -> ElementTags {
        ElementTags {
            circuit: self.circuit,
            primitive: true,
            mixed: self.analysis.mixed,
            minimal: self.analysis.is_minimal(),
            minimality_failures: self.analysis.failed_conditions(),
        }
    }

    pub fn is_mixed(&self) -> bool {
        self.analysis.mixed
    }

    pub fn is_minimal(&self) -> bool {
        self.analysis.is_minimal()
    }
}

fn line_adjacency(graph: &Graph) -> Vec<u64> {
    (0..graph.edge_count())
        .map(|e| {
            let [u, v] = graph.endpoints(e);
            graph.incident(u).iter().chain(graph.incident(v)).filter(|&&f| f != e).fold(0u64, |acc, &f| acc | 1 << f)
        })
        .collect()
}

fn above(root: usize) -> u64 {
    if root >= 63 {
        0
    } else {
        !((1u64 << (root + 1)) - 1)
    }
}

/// Every vertex of the subset meets at least two of its edges.
fn no_leaves(graph: &Graph, subset: EdgeSet) -> bool {
    let mut degree = vec![0u8; graph.vertex_count()];
    for e in subset.iter() {
        for v in graph.endpoints(e) {
            degree[v] = degree[v].saturating_add(1);
        }
    }
    degree.iter().all(|&d| d != 1)
}

struct SubsetSearch<'a> {
    graph: &'a Graph,
    adj: &'a [u64],
    root: usize,
    found: Vec<EdgeSet>,
}

impl SubsetSearch<'_> {
    /// Enumerates each connected edge set whose least edge is `root` once.
    fn extend(&mut self, sub: u64, mut ext: u64, closed: u64) {
        let subset = EdgeSet::from_bits(sub);
        if subset.len() >= 4 && no_leaves(self.graph, subset) {
            self.found.push(subset);
        }
        while ext != 0 {
            let w = ext.trailing_zeros() as usize;
            ext &= ext - 1;
            let exclusive = self.adj[w] & !closed & above(self.root);
            self.extend(sub | 1 << w, ext | exclusive, closed | self.adj[w] | 1 << w);
        }
    }
}

/// Connected edge subsets with at least four edges and no vertex of degree one.
fn candidate_subsets(graph: &Graph) -> Vec<EdgeSet> {
    let adj = line_adjacency(graph);
    let mut all: Vec<EdgeSet> = (0..graph.edge_count())
        .into_par_iter()
        .flat_map_iter(|root| {
            let mut search = SubsetSearch { graph, adj: &adj, root, found: Vec::new() };
            search.extend(1 << root, adj[root] & above(root), adj[root] | 1 << root);
            search.found
        })
        .collect();
    all.sort_by_key(|s| (s.len(), s.iter().collect::<Vec<_>>()));
    all
}

/// Supports of the circuits: even cycles, two odd cycles sharing exactly one
/// vertex, and two vertex-disjoint odd cycles with a path between them whose
/// inner vertices avoid both cycles.
pub fn circuit_supports(graph: &Graph) -> Vec<EdgeSet> {
    let cycles = graph.enumerate_cycles();
    let mut out: BTreeSet<u64> = BTreeSet::new();
    for c in cycles.iter().filter(|c| c.is_even()) {
        out.insert(c.edge_set().bits());
    }
    let odd: Vec<_> = cycles.iter().filter(|c| !c.is_even()).collect();
    for (i, c1) in odd.iter().enumerate() {
        for c2 in &odd[i + 1..] {
            let shared = c1.vertices.iter().filter(|v| c2.vertices.contains(v)).count();
            let both = c1.edge_set().union(c2.edge_set());
            if shared == 1 {
                out.insert(both.bits());
            } else if shared == 0 {
                let forbidden: Vec<usize> = c1.vertices.iter().chain(&c2.vertices).copied().collect();
                for &u in &c1.vertices {
                    for &v in &c2.vertices {
                        for p in graph.paths_between(u, v, &forbidden) {
                            let path: EdgeSet = p.edges.iter().copied().collect();
                            out.insert(both.union(path).bits());
                        }
                    }
                }
            }
        }
    }
    out.into_iter().map(EdgeSet::from_bits).collect()
}

/// The primitive binomials of a graph with their walk data.
#[derive(Clone, Debug)]
pub struct GraphBases {
    graph: Graph,
    elements: Vec<PrimitiveElement>,
}

impl GraphBases {
    /// Enumerates every primitive walk of `graph`. Graphs with more than
    /// [`SCALE_GUARD`] edges need `force`; more than 64 edges is unsupported.
    pub fn compute(graph: &Graph, force: bool) -> Result<Self, Error> {
        let m = graph.edge_count();
        if m > EdgeSet::CAPACITY {
            return Err(Error::TooLarge { edges: m, limit: EdgeSet::CAPACITY });
        }
        if m > SCALE_GUARD && !force {
            return Err(Error::ScaleGuard { edges: m, limit: SCALE_GUARD });
        }
        let subsets = candidate_subsets(graph);
        let verdicts: Vec<bool> = subsets
            .par_iter()
            .map(|&s| is_primitive_subgraph(graph, s).map(|v| v.primitive))
            .collect::<Result<_, _>>()?;
        let mut elements: Vec<PrimitiveElement> = subsets
            .par_iter()
            .zip(verdicts)
            .filter(|(_, primitive)| *primitive)
            .map(|(&s, _)| PrimitiveElement::build(graph, s))
            .collect::<Result<_, _>>()?;
        let circuits: BTreeSet<u64> = circuit_supports(graph).into_iter().map(EdgeSet::bits).collect();
        for e in &mut elements {
            e.circuit = circuits.contains(&e.support.bits());
        }
        let tagged = elements.iter().filter(|e| e.circuit).count();
        if tagged != circuits.len() {
            return Err(Error::Invariant(format!(
                "{} circuit supports built, {tagged} found among primitive walks",
                circuits.len()
            )));
        }
        elements.sort_by(|a, b| a.binomial.cmp(&b.binomial));
        Ok(GraphBases { graph: graph.clone(), elements })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    /// All primitive elements, in canonical binomial order.
    pub fn elements(&self) -> &[PrimitiveElement] {
        &self.elements
    }

    pub fn element(&self, b: &Binomial) -> Option<&PrimitiveElement> {
        self.elements.binary_search_by(|e| e.binomial.cmp(b)).ok().map(|i| &self.elements[i])
    }

    fn set(&self, kind: BasisKind, keep: impl Fn(&PrimitiveElement) -> bool) -> BasisSet {
        BasisSet::new(
            kind,
            Some(self.graph.digest()),
            self.elements
                .iter()
                .filter(|e| keep(e))
                .map(|e| BasisElement { binomial: e.binomial.clone(), tags: Some(e.tags()) })
                .collect(),
        )
    }

    pub fn circuits(&self) -> BasisSet {
        self.set(BasisKind::Circuits, |e| e.circuit)
    }

    pub fn graver(&self) -> BasisSet {
        self.set(BasisKind::Graver, |_| true)
    }

    /// Primitive walks with no pure cyclic block.
    pub fn universal_groebner(&self) -> BasisSet {
        self.set(BasisKind::Ugb, PrimitiveElement::is_mixed)
    }

    /// Primitive walks satisfying M1–M4.
    pub fn universal_markov(&self) -> BasisSet {
        self.set(BasisKind::Markov, PrimitiveElement::is_minimal)
    }

    /// Universal Markov elements whose degree has a fiber graph of exactly
    /// two isolated points.
    pub fn indispensable(&self) -> Result<BasisSet, Error> {
        let config = ToricConfig::from_graph(&self.graph);
        let markov: Vec<&PrimitiveElement> = self.elements.iter().filter(|e| e.is_minimal()).collect();
        let keep: Vec<bool> = markov
            .par_iter()
            .map(|e| {
                let g = fiber_graph(&config, e.binomial.degree())?;
                Ok(g.component_count() == 2 && g.is_minimal_degree())
            })
            .collect::<Result<_, Error>>()?;
        Ok(BasisSet::new(
            BasisKind::Indispensable,
            Some(self.graph.digest()),
            markov
                .iter()
                .zip(keep)
                .filter(|(_, k)| *k)
                .map(|(e, _)| BasisElement { binomial: e.binomial.clone(), tags: Some(e.tags()) })
                .collect(),
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::walk_analysis::MinimalityCondition;

    fn k4() -> Graph {
        Graph::from_edges(4, &[(0, 1), (2, 3), (0, 2), (1, 3), (0, 3), (1, 2)]).unwrap()
    }

    fn c4() -> Graph {
        Graph::from_edges(4, &[(0, 1), (2, 3), (1, 2), (3, 0)]).unwrap()
    }

    fn bowtie() -> Graph {
        Graph::from_edges(5, &[(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 0)]).unwrap()
    }

    fn tst_adjacent() -> Graph {
        Graph::from_edges(
            8,
            &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 4), (4, 5), (5, 0), (1, 6), (6, 7), (7, 1)],
        )
        .unwrap()
    }

    fn rendered(s: &BasisSet) -> Vec<String> {
        s.binomials().map(|b| b.render("e")).collect()
    }

    /// Every connected edge subset by brute force over bit masks.
    fn brute_connected(g: &Graph) -> Vec<EdgeSet> {
        (1u64..1 << g.edge_count())
            .map(EdgeSet::from_bits)
            .filter(|&s| g.is_connected_subset(s) && s.len() >= 4 && no_leaves(g, s))
            .collect()
    }

    #[test]
    fn subset_enumeration_is_exact() {
        for g in [k4(), bowtie(), tst_adjacent()] {
            let mut a: Vec<u64> = candidate_subsets(&g).into_iter().map(EdgeSet::bits).collect();
            let mut b: Vec<u64> = brute_connected(&g).into_iter().map(EdgeSet::bits).collect();
            a.sort_unstable();
            b.sort_unstable();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn k4_sets() {
        let b = GraphBases::compute(&k4(), false).unwrap();
        let squares = vec!["e1e2 - e3e4", "e1e2 - e5e6", "e3e4 - e5e6"];
        assert_eq!(rendered(&b.graver()), squares);
        assert_eq!(rendered(&b.circuits()), squares);
        assert_eq!(rendered(&b.universal_groebner()), squares);
        assert_eq!(rendered(&b.universal_markov()), squares);
        assert!(b.indispensable().unwrap().is_empty());
    }

    #[test]
    fn c4_sets() {
        let b = GraphBases::compute(&c4(), false).unwrap();
        for s in [b.graver(), b.circuits(), b.universal_groebner(), b.universal_markov(), b.indispensable().unwrap()] {
            assert_eq!(rendered(&s), vec!["e1e2 - e3e4"]);
        }
    }

    #[test]
    fn bowtie_has_one_circuit() {
        let b = GraphBases::compute(&bowtie(), false).unwrap();
        assert_eq!(b.circuits().len(), 1);
        assert_eq!(b.graver().len(), 1);
    }

    #[test]
    fn adjacent_attachment_rejects_the_full_walk_for_m4() {
        let g = tst_adjacent();
        let b = GraphBases::compute(&g, false).unwrap();
        let full = b.elements().iter().find(|e| e.support == g.all_edges()).expect("full support is primitive");
        assert_eq!(full.tags().minimality_failures, vec![MinimalityCondition::M4]);
        assert!(full.is_mixed());
        assert!(b.graver().contains(&full.binomial));
        assert!(!b.universal_markov().contains(&full.binomial));
    }

    #[test]
    fn scale_guard() {
        let edges: Vec<(usize, usize)> = (0..21).map(|i| (i, i + 1)).collect();
        let g = Graph::from_edges(22, &edges).unwrap();
        assert_eq!(GraphBases::compute(&g, false).unwrap_err(), Error::ScaleGuard { edges: 21, limit: 20 });
        assert!(GraphBases::compute(&g, true).unwrap().graver().is_empty());
    }

    #[test]
    fn sandwich_and_tag_consistency() {
        for g in [k4(), c4(), bowtie(), tst_adjacent()] {
            let b = GraphBases::compute(&g, false).unwrap();
            let (c, u, gr, m) = (b.circuits(), b.universal_groebner(), b.graver(), b.universal_markov());
            assert!(c.is_subset(&u) && u.is_subset(&gr) && m.is_subset(&u));
            assert!(gr.elements().iter().all(|e| e.tags.as_ref().unwrap().is_consistent()));
        }
    }
}
