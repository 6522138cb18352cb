//! Simple connected graphs with indexed edges.
//!
//! Edge `i` is the `i`-th edge of the input. Vertex labels from an edge list
//! are mapped to dense indices in numeric order when every label is an
//! integer, and in order of first appearance otherwise.

use std::collections::{HashMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::binomial::DegreeVector;
use crate::error::GraphError;

/// A set of edge indices, stored as a bitmask.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct EdgeSet(u64);

impl EdgeSet {
    pub const CAPACITY: usize = 64;

    pub const fn empty() -> Self {
        EdgeSet(0)
    }

    pub fn full(m: usize) -> Self {
        assert!(m <= Self::CAPACITY);
        if m == Self::CAPACITY {
            EdgeSet(u64::MAX)
        } else {
            EdgeSet((1u64 << m) - 1)
        }
    }

    pub const fn from_bits(bits: u64) -> Self {
        EdgeSet(bits)
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    pub fn contains(self, e: usize) -> bool {
        e < Self::CAPACITY && self.0 >> e & 1 == 1
    }

    pub fn with(self, e: usize) -> Self {
        EdgeSet(self.0 | 1u64 << e)
    }

    pub fn insert(&mut self, e: usize) {
        self.0 |= 1u64 << e;
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset(self, other: EdgeSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn intersection(self, other: EdgeSet) -> EdgeSet {
        EdgeSet(self.0 & other.0)
    }

    pub fn union(self, other: EdgeSet) -> EdgeSet {
        EdgeSet(self.0 | other.0)
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let e = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(e)
            }
        })
    }
}

impl FromIterator<usize> for EdgeSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = EdgeSet::empty();
        for e in iter {
            s.insert(e);
        }
        s
    }
}

impl fmt::Debug for EdgeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// A finite, simple, connected, undirected graph.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    labels: Vec<String>,
    edges: Vec<[usize; 2]>,
    incident: Vec<Vec<usize>>,
    lookup: HashMap<(usize, usize), usize>,
}

/// A simple cycle, as aligned vertex and edge sequences (`edges[i]` joins
/// `vertices[i]` and `vertices[i + 1]`, cyclically).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cycle {
    pub vertices: Vec<usize>,
    pub edges: Vec<usize>,
}

impl Cycle {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn is_even(&self) -> bool {
        self.edges.len().is_multiple_of(2)
    }

    pub fn edge_set(&self) -> EdgeSet {
        self.edges.iter().copied().collect()
    }
}

/// A simple path, as aligned vertex and edge sequences.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Path {
    pub vertices: Vec<usize>,
    pub edges: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct GraphJson {
    vertices: usize,
    edges: Vec<[usize; 2]>,
}

impl Graph {
    /// Builds a graph on `n` vertices labelled `1..=n` from 0-based endpoint pairs.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let labels = (1..=n).map(|i| i.to_string()).collect();
        let pairs = edges
            .iter()
            .enumerate()
            .map(|(i, &(u, v))| {
                for x in [u, v] {
                    if x >= n {
                        return Err(GraphError::VertexOutOfRange { vertex: x + 1, count: n });
                    }
                }
                Ok((i + 1, u, v))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::build(labels, pairs)
    }

    fn build(labels: Vec<String>, pairs: Vec<(usize, usize, usize)>) -> Result<Self, GraphError> {
        if pairs.is_empty() {
            return Err(GraphError::Empty);
        }
        let n = labels.len();
        let mut edges = Vec::with_capacity(pairs.len());
        let mut incident = vec![Vec::new(); n];
        let mut lookup = HashMap::new();
        for (line, u, v) in pairs {
            if u == v {
                return Err(GraphError::Loop { line, label: labels[u].clone() });
            }
            let key = (u.min(v), u.max(v));
            if lookup.contains_key(&key) {
                return Err(GraphError::DuplicateEdge {
                    line,
                    u: labels[u].clone(),
                    v: labels[v].clone(),
                });
            }
            let idx = edges.len();
            lookup.insert(key, idx);
            edges.push([u, v]);
            incident[u].push(idx);
            incident[v].push(idx);
        }
        let graph = Graph { labels, edges, incident, lookup };
        let components = graph.component_count();
        if components != 1 {
            return Err(GraphError::Disconnected { components });
        }
        Ok(graph)
    }

    /// Parses either the JSON form or the edge-list form, whichever `text` is.
    pub fn parse(text: &str) -> Result<Self, GraphError> {
        if text.trim_start().starts_with('{') {
            Self::from_json(text)
        } else {
            Self::parse_edge_list(text)
        }
    }

    /// One `u v` pair per line; `#` starts a comment; blank lines are ignored.
    pub fn parse_edge_list(text: &str) -> Result<Self, GraphError> {
        let mut raw = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let content = line.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let tokens: Vec<&str> = content.split_whitespace().collect();
            if tokens.len() != 2 {
                return Err(GraphError::Malformed { line: i + 1, found: content.to_string() });
            }
            raw.push((i + 1, tokens[0].to_string(), tokens[1].to_string()));
        }
        if raw.is_empty() {
            return Err(GraphError::Empty);
        }

        let mut order: Vec<String> = Vec::new();
        let mut seen = HashSet::new();
        for (_, u, v) in &raw {
            for x in [u, v] {
                if seen.insert(x.clone()) {
                    order.push(x.clone());
                }
            }
        }
        let numeric: Option<Vec<u64>> = order.iter().map(|s| s.parse::<u64>().ok()).collect();
        if let Some(values) = numeric {
            let mut paired: Vec<(u64, String)> = values.into_iter().zip(order).collect();
            paired.sort();
            order = paired.into_iter().map(|(_, s)| s).collect();
        }
        let index: HashMap<&str, usize> =
            order.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect();
        let pairs = raw
            .iter()
            .map(|(line, u, v)| (*line, index[u.as_str()], index[v.as_str()]))
            .collect();
        Self::build(order.clone(), pairs)
    }

    /// `{"vertices": N, "edges": [[u, v], ...]}` with 1-based vertex labels.
    pub fn from_json(text: &str) -> Result<Self, GraphError> {
        let parsed: GraphJson =
            serde_json::from_str(text).map_err(|e| GraphError::Json(e.to_string()))?;
        Self::from_json_value(parsed.vertices, &parsed.edges)
    }

    pub(crate) fn from_json_value(n: usize, edges: &[[usize; 2]]) -> Result<Self, GraphError> {
        let mut pairs = Vec::with_capacity(edges.len());
        for (i, &[u, v]) in edges.iter().enumerate() {
            for x in [u, v] {
                if x == 0 || x > n {
                    return Err(GraphError::VertexOutOfRange { vertex: x, count: n });
                }
            }
            pairs.push((i + 1, u - 1, v - 1));
        }
        let labels = (1..=n).map(|i| i.to_string()).collect();
        Self::build(labels, pairs)
    }

    pub fn to_json(&self) -> String {
        let json = GraphJson {
            vertices: self.vertex_count(),
            edges: self.edges.iter().map(|&[u, v]| [u + 1, v + 1]).collect(),
        };
        serde_json::to_string(&json).expect("graph serializes")
    }

    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        for &[u, v] in &self.edges {
            out.push_str(&format!("{} {}\n", self.labels[u], self.labels[v]));
        }
        out
    }

    /// SHA-256 over the vertex count and the 0-based edge list.
    pub fn digest(&self) -> String {
        let mut hasher = Sha256::new();
        hasher.update(format!("graph {}\n", self.vertex_count()));
        for &[u, v] in &self.edges {
            hasher.update(format!("{u} {v}\n"));
        }
        hex::encode(hasher.finalize())
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn label(&self, v: usize) -> &str {
        &self.labels[v]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn endpoints(&self, e: usize) -> [usize; 2] {
        self.edges[e]
    }

    pub fn edges(&self) -> &[[usize; 2]] {
        &self.edges
    }

    pub fn incident(&self, v: usize) -> &[usize] {
        &self.incident[v]
    }

    pub fn other_end(&self, e: usize, v: usize) -> usize {
        let [a, b] = self.edges[e];
        if a == v {
            b
        } else {
            debug_assert_eq!(b, v);
            a
        }
    }

    pub fn edge_between(&self, u: usize, v: usize) -> Option<usize> {
        self.lookup.get(&(u.min(v), u.max(v))).copied()
    }

    pub fn all_edges(&self) -> EdgeSet {
        EdgeSet::full(self.edge_count())
    }

    pub fn vertices_of(&self, subset: EdgeSet) -> Vec<usize> {
        let mut vs: Vec<usize> = subset.iter().flat_map(|e| self.edges[e]).collect();
        vs.sort_unstable();
        vs.dedup();
        vs
    }

    /// Vertex-edge incidence matrix: rows are vertices, columns are edges.
    pub fn incidence_matrix(&self) -> Vec<Vec<u32>> {
        let mut rows = vec![vec![0u32; self.edge_count()]; self.vertex_count()];
        for (e, &[u, v]) in self.edges.iter().enumerate() {
            rows[u][e] = 1;
            rows[v][e] = 1;
        }
        rows
    }

    /// The A-degree of the monomial with the given edge exponents.
    pub fn degree_of(&self, exponents: &[u32]) -> Result<DegreeVector, GraphError> {
        if exponents.len() != self.edge_count() {
            return Err(GraphError::LengthMismatch {
                expected: self.edge_count(),
                found: exponents.len(),
            });
        }
        let mut degree = vec![0u32; self.vertex_count()];
        for (e, &k) in exponents.iter().enumerate() {
            let [u, v] = self.edges[e];
            degree[u] += k;
            degree[v] += k;
        }
        Ok(DegreeVector(degree))
    }

    fn component_count(&self) -> usize {
        let n = self.vertex_count();
        let mut seen = vec![false; n];
        let mut count = 0;
        for s in 0..n {
            if seen[s] {
                continue;
            }
            count += 1;
            let mut stack = vec![s];
            seen[s] = true;
            while let Some(u) = stack.pop() {
                for &e in &self.incident[u] {
                    let w = self.other_end(e, u);
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
        }
        count
    }

    /// Whether the edges in `subset` form a connected subgraph.
    pub fn is_connected_subset(&self, subset: EdgeSet) -> bool {
        let Some(first) = subset.iter().next() else {
            return false;
        };
        let mut reached = EdgeSet::empty().with(first);
        let mut stack = vec![self.edges[first][0], self.edges[first][1]];
        let mut visited = HashSet::from([self.edges[first][0], self.edges[first][1]]);
        while let Some(u) = stack.pop() {
            for &e in &self.incident[u] {
                if !subset.contains(e) {
                    continue;
                }
                reached.insert(e);
                let w = self.other_end(e, u);
                if visited.insert(w) {
                    stack.push(w);
                }
            }
        }
        reached == subset
    }

    /// Every simple cycle once, up to rotation and reflection.
    ///
    /// A cycle is reported from its smallest vertex, in the direction whose
    /// second vertex is smaller than its last.
    pub fn enumerate_cycles(&self) -> Vec<Cycle> {
        let n = self.vertex_count();
        let mut cycles = Vec::new();
        let mut on_path = vec![false; n];
        for start in 0..n {
            let mut vertices = vec![start];
            let mut edges = Vec::new();
            on_path[start] = true;
            self.extend_cycles(start, &mut vertices, &mut edges, &mut on_path, &mut cycles);
            on_path[start] = false;
        }
        cycles
    }

    fn extend_cycles(
        &self,
        start: usize,
        vertices: &mut Vec<usize>,
        edges: &mut Vec<usize>,
        on_path: &mut [bool],
        out: &mut Vec<Cycle>,
    ) {
        let u = *vertices.last().expect("path is nonempty");
        for &e in &self.incident[u] {
            let w = self.other_end(e, u);
            if w == start && vertices.len() >= 3 && vertices[1] < u {
                let mut cycle_edges = edges.clone();
                cycle_edges.push(e);
                out.push(Cycle { vertices: vertices.clone(), edges: cycle_edges });
            } else if w > start && !on_path[w] {
                on_path[w] = true;
                vertices.push(w);
                edges.push(e);
                self.extend_cycles(start, vertices, edges, on_path, out);
                edges.pop();
                vertices.pop();
                on_path[w] = false;
            }
        }
    }

    /// All simple paths from `u` to `v` whose internal vertices avoid `forbidden`.
    pub fn paths_between(&self, u: usize, v: usize, forbidden: &[usize]) -> Vec<Path> {
        assert_ne!(u, v, "paths_between needs distinct endpoints");
        let n = self.vertex_count();
        let mut blocked = vec![false; n];
        for &f in forbidden {
            blocked[f] = true;
        }
        blocked[v] = false;
        let mut on_path = vec![false; n];
        on_path[u] = true;
        let mut out = Vec::new();
        let mut vertices = vec![u];
        let mut edges = Vec::new();
        self.extend_paths(v, &blocked, &mut on_path, &mut vertices, &mut edges, &mut out);
        out
    }

    fn extend_paths(
        &self,
        target: usize,
        blocked: &[bool],
        on_path: &mut [bool],
        vertices: &mut Vec<usize>,
        edges: &mut Vec<usize>,
        out: &mut Vec<Path>,
    ) {
        let u = *vertices.last().expect("path is nonempty");
        for &e in &self.incident[u] {
            let w = self.other_end(e, u);
            if on_path[w] {
                continue;
            }
            if w == target {
                let mut p_edges = edges.clone();
                p_edges.push(e);
                let mut p_vertices = vertices.clone();
                p_vertices.push(w);
                out.push(Path { vertices: p_vertices, edges: p_edges });
                continue;
            }
            if blocked[w] {
                continue;
            }
            on_path[w] = true;
            vertices.push(w);
            edges.push(e);
            self.extend_paths(target, blocked, on_path, vertices, edges, out);
            edges.pop();
            vertices.pop();
            on_path[w] = false;
        }
    }

    /// Whether the graph contains a cycle of length four.
    pub fn has_four_cycle(&self) -> bool {
        let n = self.vertex_count();
        for a in 0..n {
            for c in a + 1..n {
                let common = self.incident[a]
                    .iter()
                    .map(|&e| self.other_end(e, a))
                    .filter(|&b| self.edge_between(b, c).is_some())
                    .count();
                if common >= 2 {
                    return true;
                }
            }
        }
        false
    }

    /// Display name of an edge: `e{i+1}`.
    pub fn edge_name(e: usize) -> String {
        format!("e{}", e + 1)
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph({} vertices; ", self.vertex_count())?;
        for (i, &[u, v]) in self.edges.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}={{{},{}}}", Graph::edge_name(i), self.labels[u], self.labels[v])?;
        }
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c4() -> Graph {
        Graph::parse_edge_list("1 2\n3 4\n2 3\n4 1\n").unwrap()
    }

    fn k4() -> Graph {
        Graph::from_edges(4, &[(0, 1), (2, 3), (0, 2), (1, 3), (0, 3), (1, 2)]).unwrap()
    }

    #[test]
    fn parses_c4_in_input_order() {
        let g = c4();
        assert_eq!(g.vertex_count(), 4);
        assert_eq!(g.endpoints(0), [0, 1]);
        assert_eq!(g.endpoints(1), [2, 3]);
        assert_eq!(g.endpoints(2), [1, 2]);
        assert_eq!(g.endpoints(3), [3, 0]);
    }

    #[test]
    fn single_edge_is_a_graph() {
        let g = Graph::parse_edge_list("1 2").unwrap();
        assert_eq!(g.edge_count(), 1);
    }

    #[test]
    fn distinct_diagnostics() {
        assert!(matches!(Graph::parse_edge_list("1 1\n"), Err(GraphError::Loop { line: 1, .. })));
        assert!(matches!(
            Graph::parse_edge_list("1 2\n2 1\n"),
            Err(GraphError::DuplicateEdge { line: 2, .. })
        ));
        assert_eq!(
            Graph::parse_edge_list("1 2\n3 4\n"),
            Err(GraphError::Disconnected { components: 2 })
        );
        assert_eq!(Graph::parse_edge_list("# nothing\n\n"), Err(GraphError::Empty));
        assert!(matches!(Graph::parse_edge_list("1 2 3"), Err(GraphError::Malformed { .. })));
    }

    #[test]
    fn comments_and_labels() {
        let g = Graph::parse_edge_list("# square\n10 2 # first\n\n2 3\n3 4\n4 10\n").unwrap();
        assert_eq!(g.labels(), &["2", "3", "4", "10"]);
        assert_eq!(g.endpoints(0), [3, 0]);
        let named = Graph::parse_edge_list("a b\nb c\nc a\n").unwrap();
        assert_eq!(named.labels(), &["a", "b", "c"]);
    }

    #[test]
    fn json_form_round_trips() {
        let g = k4();
        let back = Graph::from_json(&g.to_json()).unwrap();
        assert_eq!(g, back);
        assert_eq!(
            Graph::from_json(r#"{"vertices": 3, "edges": [[1, 2]]}"#),
            Err(GraphError::Disconnected { components: 2 })
        );
        assert!(matches!(
            Graph::from_json(r#"{"vertices": 2, "edges": [[1, 3]]}"#),
            Err(GraphError::VertexOutOfRange { .. })
        ));
    }

    #[test]
    fn degrees() {
        let g = k4();
        let e1e2 = [1, 1, 0, 0, 0, 0];
        assert_eq!(g.degree_of(&e1e2).unwrap(), DegreeVector(vec![1, 1, 1, 1]));
        assert_eq!(g.degree_of(&[0; 6]).unwrap(), DegreeVector(vec![0; 4]));
        let c = c4();
        assert_eq!(c.degree_of(&[0, 0, 1, 1]).unwrap(), c.degree_of(&[1, 1, 0, 0]).unwrap());
        assert!(matches!(g.degree_of(&[1]), Err(GraphError::LengthMismatch { .. })));
        for e in 0..g.edge_count() {
            let mut x = vec![0; 6];
            x[e] = 1;
            let d = g.degree_of(&x).unwrap();
            let [u, v] = g.endpoints(e);
            for (i, &k) in d.0.iter().enumerate() {
                assert_eq!(k, u32::from(i == u || i == v));
            }
        }
    }

    #[test]
    fn cycles() {
        assert_eq!(c4().enumerate_cycles().len(), 1);
        assert!(c4().enumerate_cycles()[0].is_even());
        let k = k4().enumerate_cycles();
        assert_eq!(k.len(), 7);
        assert_eq!(k.iter().filter(|c| c.len() == 3).count(), 4);
        assert_eq!(k.iter().filter(|c| c.len() == 4).count(), 3);
        let bowtie =
            Graph::from_edges(5, &[(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 0)]).unwrap();
        let b = bowtie.enumerate_cycles();
        assert_eq!(b.len(), 2);
        assert!(b.iter().all(|c| !c.is_even()));
        let tree = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        assert!(tree.enumerate_cycles().is_empty());
    }

    #[test]
    fn paths() {
        let c = c4();
        let p = c.paths_between(0, 2, &[]);
        assert_eq!(p.len(), 2);
        assert!(p.iter().all(|p| p.edges.len() == 2));
        assert_eq!(k4().paths_between(0, 1, &[]).len(), 5);
        let path = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        assert!(path.paths_between(0, 2, &[1]).is_empty());
        // forbidden endpoints do not block the path itself
        assert_eq!(path.paths_between(0, 2, &[0, 2]).len(), 1);
    }

    #[test]
    fn four_cycles() {
        assert!(c4().has_four_cycle());
        assert!(k4().has_four_cycle());
        let triangle = Graph::from_edges(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        assert!(!triangle.has_four_cycle());
    }

    #[test]
    fn edge_sets() {
        let s: EdgeSet = [0, 3, 5].into_iter().collect();
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![0, 3, 5]);
        assert_eq!(s.len(), 3);
        assert!(s.contains(3) && !s.contains(4));
        assert!(EdgeSet::from_bits(0b1001).is_subset(s));
        assert_eq!(EdgeSet::full(64).len(), 64);
        let g = c4();
        assert!(g.is_connected_subset(g.all_edges()));
        assert!(!g.is_connected_subset([0, 1].into_iter().collect()));
    }
}
