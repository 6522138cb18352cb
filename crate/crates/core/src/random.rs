//! Seeded random connected graphs.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::Graph;

/// An Erdős–Rényi graph on `vertices` vertices conditioned on being connected
/// and having at most `max_edges` edges, by rejection sampling. The edge
/// probability is itself drawn so that edge counts spread over the feasible range.
pub fn random_connected_graph<R: Rng>(rng: &mut R, vertices: usize, max_edges: usize) -> Graph {
    assert!(vertices >= 2 && max_edges + 1 >= vertices, "no connected graph fits");
    let pairs: Vec<(usize, usize)> = (0..vertices).flat_map(|u| (u + 1..vertices).map(move |v| (u, v))).collect();
    let lo = (vertices - 1) as f64;
    let hi = max_edges.min(pairs.len()) as f64;
    loop {
        let p = rng.gen_range(lo..=hi) / pairs.len() as f64;
        let edges: Vec<(usize, usize)> = pairs.iter().copied().filter(|_| rng.gen_bool(p.min(1.0))).collect();
        if edges.len() > max_edges {
            continue;
        }
        if let Ok(g) = Graph::from_edges(vertices, &edges) {
            return g;
        }
    }
}

/// `count` graphs with between 4 (or fewer, if `max_vertices` is smaller) and
/// `max_vertices` vertices, reproducible from `seed`.
pub fn random_corpus(count: usize, max_vertices: usize, max_edges: usize, seed: u64) -> Vec<Graph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let lo = max_vertices.clamp(2, 4);
    (0..count)
        .map(|_| {
            let n = rng.gen_range(lo..=max_vertices.max(lo));
            random_connected_graph(&mut rng, n, max_edges.max(n - 1))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_is_reproducible_and_bounded() {
        let a = random_corpus(30, 8, 11, 7);
        let b = random_corpus(30, 8, 11, 7);
        assert_eq!(a.iter().map(Graph::digest).collect::<Vec<_>>(), b.iter().map(Graph::digest).collect::<Vec<_>>());
        assert!(a.iter().all(|g| g.vertex_count() <= 8 && g.vertex_count() >= 4 && g.edge_count() <= 11));
        let c = random_corpus(30, 8, 11, 8);
        assert_ne!(a[0].digest(), c[0].digest());
    }
}
