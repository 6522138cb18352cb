//! Closed even walks, their binomials, and the graphs of primitive walks.
//!
//! A connected subgraph is the graph of a primitive walk exactly when it is an
//! even cycle, or when it is not biconnected, every block is a cycle or a cut
//! edge, every cut vertex lies in exactly two blocks, and each of the two sides
//! of every cut vertex carries an odd number of cycle edges.

use std::fmt;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::binomial::{Binomial, Monomial};
use crate::blocks::{block_decomposition, BlockDecomposition};
use crate::error::{GraphError, WalkError};
use crate::graph::{EdgeSet, Graph};

/// A closed walk of even length; `edges[i]` joins `vertices[i]` and
/// `vertices[i + 1]` (cyclically).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ClosedEvenWalk {
    edges: Vec<usize>,
    vertices: Vec<usize>,
}

impl ClosedEvenWalk {
    /// Walk through a cyclic vertex sequence; consecutive vertices must be adjacent.
    pub fn from_vertices(graph: &Graph, vertices: Vec<usize>) -> Result<Self, WalkError> {
        let len = vertices.len();
        let mut edges = Vec::with_capacity(len);
        for i in 0..len {
            let (u, v) = (vertices[i], vertices[(i + 1) % len]);
            let e = graph.edge_between(u, v).ok_or(WalkError::NotAdjacent { u, v })?;
            edges.push(e);
        }
        Self::validated(graph, edges, vertices)
    }

    /// Walk along `edges`, starting at vertex `start`.
    pub fn from_edges(graph: &Graph, start: usize, edges: Vec<usize>) -> Result<Self, WalkError> {
        let mut vertices = Vec::with_capacity(edges.len());
        let mut at = start;
        for (position, &e) in edges.iter().enumerate() {
            if e >= graph.edge_count() {
                return Err(GraphError::EdgeOutOfRange(e).into());
            }
            let [a, b] = graph.endpoints(e);
            if at != a && at != b {
                return Err(WalkError::Broken { position, edge: e, vertex: at });
            }
            vertices.push(at);
            at = graph.other_end(e, at);
        }
        Self::validated(graph, edges, vertices)
    }

    fn validated(graph: &Graph, edges: Vec<usize>, vertices: Vec<usize>) -> Result<Self, WalkError> {
        let len = edges.len();
        if len < 4 || len % 2 == 1 || vertices.len() != len {
            return Err(WalkError::BadLength(len));
        }
        for i in 0..len {
            let [a, b] = graph.endpoints(edges[i]);
            let (u, v) = (vertices[i], vertices[(i + 1) % len]);
            if !((a == u && b == v) || (a == v && b == u)) {
                return Err(WalkError::Broken { position: i, edge: edges[i], vertex: u });
            }
        }
        Ok(ClosedEvenWalk { edges, vertices })
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn edges(&self) -> &[usize] {
        &self.edges
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn vertex(&self, i: usize) -> usize {
        self.vertices[i % self.len()]
    }

    pub fn edge_set(&self) -> EdgeSet {
        self.edges.iter().copied().collect()
    }

    pub fn vertex_set(&self) -> Vec<usize> {
        let mut vs = self.vertices.clone();
        vs.sort_unstable();
        vs.dedup();
        vs
    }

    /// Positions at which the walk stands on `v`.
    pub fn occurrences(&self, v: usize) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.vertices[i] == v).collect()
    }

    /// Positions at which the walk traverses `e`.
    pub fn edge_positions(&self, e: usize) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.edges[i] == e).collect()
    }

    /// Exponent vectors of the edges at even and odd 0-based positions.
    pub fn parity_classes(&self, edge_count: usize) -> (Monomial, Monomial) {
        let mut even = vec![0u32; edge_count];
        let mut odd = vec![0u32; edge_count];
        for (i, &e) in self.edges.iter().enumerate() {
            if i % 2 == 0 {
                even[e] += 1;
            } else {
                odd[e] += 1;
            }
        }
        (Monomial(even), Monomial(odd))
    }

    /// The binomial of the walk: product of the edges at odd (1-based)
    /// positions minus the product at even positions, sign-normalized.
    pub fn binomial(&self, graph: &Graph) -> Result<Binomial, WalkError> {
        let (first, second) = self.parity_classes(graph.edge_count());
        if let Some(edge) = (0..graph.edge_count()).find(|&e| first.0[e] > 0 && second.0[e] > 0) {
            return Err(WalkError::NotCoprime { edge });
        }
        let degree = graph.degree_of(&first.0)?;
        debug_assert_eq!(degree, graph.degree_of(&second.0)?);
        Ok(Binomial::new(first, second, degree))
    }

    /// Lexicographically least rotation or reflection.
    pub fn canonical(&self) -> ClosedEvenWalk {
        let len = self.len();
        let mut reversed_vertices = vec![self.vertices[0]];
        reversed_vertices.extend(self.vertices[1..].iter().rev());
        let reversed_edges: Vec<usize> = self.edges.iter().rev().copied().collect();
        let mut best: Option<ClosedEvenWalk> = None;
        for (edges, vertices) in [(&self.edges, &self.vertices), (&reversed_edges, &reversed_vertices)] {
            for r in 0..len {
                let candidate = ClosedEvenWalk {
                    edges: edges[r..].iter().chain(&edges[..r]).copied().collect(),
                    vertices: vertices[r..].iter().chain(&vertices[..r]).copied().collect(),
                };
                let better = match &best {
                    None => true,
                    Some(b) => (&candidate.edges, &candidate.vertices) < (&b.edges, &b.vertices),
                };
                if better {
                    best = Some(candidate);
                }
            }
        }
        best.expect("walk is nonempty")
    }
}

impl fmt::Display for ClosedEvenWalk {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, &e) in self.edges.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", Graph::edge_name(e))?;
        }
        write!(f, ")")
    }
}

impl Serialize for ClosedEvenWalk {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("ClosedEvenWalk", 2)?;
        s.serialize_field("edges", &self.edges.iter().map(|e| e + 1).collect::<Vec<_>>())?;
        s.serialize_field("vertices", &self.vertices.iter().map(|v| v + 1).collect::<Vec<_>>())?;
        s.end()
    }
}

/// Why an edge subset is, or is not, the graph of a primitive walk.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "clause", rename_all = "snake_case")]
pub enum PrimitivityReason {
    /// The subgraph is an even cycle.
    EvenCycle,
    /// Not biconnected; blocks are cycles and cut edges with odd sides.
    BlockChain,
    OddCycle,
    /// Biconnected but not a cycle (this includes a single edge).
    Biconnected,
    NonCyclicBlock { block_edges: Vec<usize> },
    CutVertexBlocks { vertex: usize, blocks: usize },
    EvenSide { vertex: usize, cyclic_edges: usize },
}

impl fmt::Display for PrimitivityReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PrimitivityReason::EvenCycle => write!(f, "even cycle"),
            PrimitivityReason::BlockChain => {
                write!(f, "blocks are cycles and cut edges with odd sides at every cut vertex")
            }
            PrimitivityReason::OddCycle => write!(f, "odd cycle"),
            PrimitivityReason::Biconnected => write!(f, "biconnected but not a cycle"),
            PrimitivityReason::NonCyclicBlock { block_edges } => {
                write!(f, "block {block_edges:?} is neither a cycle nor a cut edge")
            }
            PrimitivityReason::CutVertexBlocks { vertex, blocks } => {
                write!(f, "cut vertex {vertex} lies in {blocks} blocks")
            }
            PrimitivityReason::EvenSide { vertex, cyclic_edges } => {
                write!(f, "cut vertex {vertex} has a side with {cyclic_edges} cycle edges")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PrimitivityVerdict {
    pub primitive: bool,
    pub reason: PrimitivityReason,
}

fn verdict(primitive: bool, reason: PrimitivityReason) -> PrimitivityVerdict {
    PrimitivityVerdict { primitive, reason }
}

/// Number of cycle edges on the side of `vertex` that contains `start`.
fn side_cyclic_edges(d: &BlockDecomposition, start: usize, vertex: usize) -> usize {
    let mut seen = vec![false; d.blocks.len()];
    seen[start] = true;
    let mut stack = vec![start];
    let mut total = 0;
    while let Some(b) = stack.pop() {
        if d.blocks[b].is_cycle() {
            total += d.blocks[b].edges.len();
        }
        for &(tb, cv) in &d.tree {
            if tb != b || cv == vertex {
                continue;
            }
            for &(ob, ocv) in &d.tree {
                if ocv == cv && !seen[ob] {
                    seen[ob] = true;
                    stack.push(ob);
                }
            }
        }
    }
    total
}

fn classify_subgraph(
    graph: &Graph,
    subset: EdgeSet,
) -> Result<(PrimitivityVerdict, BlockDecomposition), GraphError> {
    let d = block_decomposition(graph, Some(subset))?;
    if d.blocks.len() == 1 {
        let b = &d.blocks[0];
        let v = if !b.is_cycle() {
            verdict(false, PrimitivityReason::Biconnected)
        } else if b.edges.len() % 2 == 0 {
            verdict(true, PrimitivityReason::EvenCycle)
        } else {
            verdict(false, PrimitivityReason::OddCycle)
        };
        return Ok((v, d));
    }
    if let Some(b) = d.blocks.iter().find(|b| !b.is_cycle() && !b.is_edge()) {
        let reason = PrimitivityReason::NonCyclicBlock { block_edges: b.edges.clone() };
        return Ok((verdict(false, reason), d));
    }
    for &x in &d.cut_vertices {
        let blocks = d.blocks_of(x);
        if blocks.len() != 2 {
            let reason = PrimitivityReason::CutVertexBlocks { vertex: x, blocks: blocks.len() };
            return Ok((verdict(false, reason), d));
        }
        for &b in &blocks {
            let cyclic_edges = side_cyclic_edges(&d, b, x);
            if cyclic_edges.is_multiple_of(2) {
                let reason = PrimitivityReason::EvenSide { vertex: x, cyclic_edges };
                return Ok((verdict(false, reason), d));
            }
        }
    }
    Ok((verdict(true, PrimitivityReason::BlockChain), d))
}

/// Decides whether the subgraph spanned by `subset` is the graph of a primitive walk.
pub fn is_primitive_subgraph(graph: &Graph, subset: EdgeSet) -> Result<PrimitivityVerdict, GraphError> {
    classify_subgraph(graph, subset).map(|(v, _)| v)
}

struct Tour<'a> {
    graph: &'a Graph,
    d: &'a BlockDecomposition,
    steps: Vec<(usize, usize)>,
}

impl Tour<'_> {
    fn child_at(&self, v: usize, block: usize) -> Option<usize> {
        self.d.blocks_of(v).into_iter().find(|&b| b != block)
    }

    /// Appends a closed tour from `entry` through `block` and everything hanging off it.
    fn visit(&mut self, block: usize, entry: usize, parent: Option<usize>) {
        if let Some(c) = self.child_at(entry, block) {
            if Some(c) != parent {
                self.visit(c, entry, Some(block));
            }
        }
        let b = &self.d.blocks[block];
        if b.is_edge() {
            let e = b.edges[0];
            let y = self.graph.other_end(e, entry);
            self.steps.push((e, entry));
            if let Some(c) = self.child_at(y, block) {
                self.visit(c, y, Some(block));
            }
            self.steps.push((e, y));
            return;
        }
        let block_edges = b.edge_set();
        let mut prev: Option<usize> = None;
        let mut u = entry;
        loop {
            let e = self
                .graph
                .incident(u)
                .iter()
                .copied()
                .filter(|&e| block_edges.contains(e) && Some(e) != prev)
                .min()
                .expect("cycle block has two edges at each vertex");
            self.steps.push((e, u));
            let w = self.graph.other_end(e, u);
            if w == entry {
                break;
            }
            if let Some(c) = self.child_at(w, block) {
                self.visit(c, w, Some(block));
            }
            prev = Some(e);
            u = w;
        }
    }
}

/// Rebuilds the primitive walk whose graph is `subset`.
///
/// The block tree is toured from the smallest vertex of the lowest-indexed
/// block. Cycle blocks are walked once around, leaving at each cut vertex to
/// tour the subtree hanging there; cut edges are crossed out and back.
pub fn walk_from_primitive_subgraph(graph: &Graph, subset: EdgeSet) -> Result<ClosedEvenWalk, WalkError> {
    let (v, d) = classify_subgraph(graph, subset)?;
    if !v.primitive {
        return Err(WalkError::NotPrimitive(v.reason.to_string()));
    }
    let mut tour = Tour { graph, d: &d, steps: Vec::with_capacity(2 * subset.len()) };
    tour.visit(0, d.blocks[0].vertices[0], None);
    let (edges, vertices): (Vec<usize>, Vec<usize>) = tour.steps.into_iter().unzip();
    let walk = ClosedEvenWalk::validated(graph, edges, vertices)?;
    walk.binomial(graph)?;
    Ok(walk)
}
