//! Block (biconnected component) decomposition of a graph or of the subgraph
//! spanned by an edge subset.

use crate::error::GraphError;
use crate::graph::{EdgeSet, Graph};

const UNSEEN: usize = usize::MAX;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Block {
    /// Sorted edge indices.
    pub edges: Vec<usize>,
    /// Sorted vertex indices.
    pub vertices: Vec<usize>,
}

impl Block {
    pub fn edge_set(&self) -> EdgeSet {
        self.edges.iter().copied().collect()
    }

    /// A single-edge block; in a decomposition this is always a cut edge.
    pub fn is_edge(&self) -> bool {
        self.edges.len() == 1
    }

    /// A 2-connected block with as many edges as vertices is a cycle.
    pub fn is_cycle(&self) -> bool {
        self.edges.len() >= 3 && self.edges.len() == self.vertices.len()
    }

    pub fn contains_vertex(&self, v: usize) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockDecomposition {
    /// Blocks ordered by their smallest edge index.
    pub blocks: Vec<Block>,
    /// Sorted cut vertices.
    pub cut_vertices: Vec<usize>,
    /// Block-cut tree as (block index, cut vertex) incidences.
    pub tree: Vec<(usize, usize)>,
}

impl BlockDecomposition {
    /// Indices of the blocks containing `v`.
    pub fn blocks_of(&self, v: usize) -> Vec<usize> {
        (0..self.blocks.len()).filter(|&b| self.blocks[b].contains_vertex(v)).collect()
    }

    pub fn block_of_edge(&self, e: usize) -> Option<usize> {
        self.blocks.iter().position(|b| b.edges.binary_search(&e).is_ok())
    }

    pub fn is_cut_vertex(&self, v: usize) -> bool {
        self.cut_vertices.binary_search(&v).is_ok()
    }

    pub fn cut_edges(&self) -> Vec<usize> {
        self.blocks.iter().filter(|b| b.is_edge()).map(|b| b.edges[0]).collect()
    }
}

struct Search<'g> {
    graph: &'g Graph,
    subset: EdgeSet,
    disc: Vec<usize>,
    low: Vec<usize>,
    time: usize,
    stack: Vec<usize>,
    blocks: Vec<Vec<usize>>,
}

impl Search<'_> {
    fn visit(&mut self, u: usize, parent_edge: Option<usize>) {
        self.disc[u] = self.time;
        self.low[u] = self.time;
        self.time += 1;
        for &e in self.graph.incident(u) {
            if !self.subset.contains(e) || Some(e) == parent_edge {
                continue;
            }
            let w = self.graph.other_end(e, u);
            if self.disc[w] == UNSEEN {
                self.stack.push(e);
                self.visit(w, Some(e));
                self.low[u] = self.low[u].min(self.low[w]);
                if self.low[w] >= self.disc[u] {
                    let mut block = Vec::new();
                    while let Some(f) = self.stack.pop() {
                        block.push(f);
                        if f == e {
                            break;
                        }
                    }
                    self.blocks.push(block);
                }
            } else if self.disc[w] < self.disc[u] {
                self.stack.push(e);
                self.low[u] = self.low[u].min(self.disc[w]);
            }
        }
    }
}

/// Biconnected components of `graph`, or of the subgraph spanned by `subset`.
pub fn block_decomposition(
    graph: &Graph,
    subset: Option<EdgeSet>,
) -> Result<BlockDecomposition, GraphError> {
    let subset = subset.unwrap_or_else(|| graph.all_edges());
    if subset.is_empty() || !graph.is_connected_subset(subset) {
        return Err(GraphError::DisconnectedSubset);
    }
    let n = graph.vertex_count();
    let root = graph.vertices_of(subset)[0];
    let mut search = Search {
        graph,
        subset,
        disc: vec![UNSEEN; n],
        low: vec![UNSEEN; n],
        time: 0,
        stack: Vec::new(),
        blocks: Vec::new(),
    };
    search.visit(root, None);

    let mut blocks: Vec<Block> = search
        .blocks
        .into_iter()
        .map(|mut edges| {
            edges.sort_unstable();
            let vertices = graph.vertices_of(edges.iter().copied().collect());
            Block { edges, vertices }
        })
        .collect();
    blocks.sort_by_key(|b| b.edges[0]);

    let mut count = vec![0usize; n];
    for b in &blocks {
        for &v in &b.vertices {
            count[v] += 1;
        }
    }
    let cut_vertices: Vec<usize> = (0..n).filter(|&v| count[v] >= 2).collect();
    let mut tree = Vec::new();
    for (i, b) in blocks.iter().enumerate() {
        for &v in &b.vertices {
            if count[v] >= 2 {
                tree.push((i, v));
            }
        }
    }
    Ok(BlockDecomposition { blocks, cut_vertices, tree })
}
