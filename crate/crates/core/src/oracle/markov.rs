use super::{fiber_graphs_up_to, FiberGraph, ToricConfig};
use crate::binomial::{Binomial, DegreeVector};
use crate::error::OracleError;

/// Betti data and the Markov bases read off the fiber graphs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MarkovAnalysis {
    /// Fiber graphs at the Betti degrees, in (total, lexicographic) order.
    pub betti: Vec<FiberGraph>,
    /// One minimal Markov basis: at each Betti degree, a star from the
    /// component of the lexicographically first fiber element.
    pub minimal_markov: Vec<Binomial>,
    /// Every binomial joining two different components of a Betti fiber.
    pub universal_markov: Vec<Binomial>,
    /// Binomials at Betti degrees whose fiber graph is two isolated points.
    pub indispensable: Vec<Binomial>,
    /// All Betti degrees are minimal and have a single missing edge.
    pub generated_by_indispensables: bool,
}

impl MarkovAnalysis {
    pub fn beta0_total(&self) -> usize {
        self.betti.iter().map(FiberGraph::beta0).sum()
    }

    pub fn betti_at(&self, b: &DegreeVector) -> Option<&FiberGraph> {
        self.betti.iter().find(|g| &g.degree == b)
    }
}

/// Runs the fiber pipeline over `candidates`, which must include every Betti
/// degree (the degrees of a Graver superset do).
pub fn markov_analysis(config: &ToricConfig, candidates: &[DegreeVector]) -> Result<MarkovAnalysis, OracleError> {
    let betti: Vec<FiberGraph> =
        fiber_graphs_up_to(config, candidates)?.into_iter().filter(FiberGraph::is_betti).collect();
    let mut minimal_markov = Vec::new();
    let mut universal_markov = Vec::new();
    let mut indispensable = Vec::new();
    for g in &betti {
        for c in 1..g.component_count() {
            minimal_markov.push(Binomial::new(
                g.representative(0).clone(),
                g.representative(c).clone(),
                g.degree.clone(),
            ));
        }
        for (a, ca) in g.components.iter().enumerate() {
            for cb in &g.components[a + 1..] {
                for &i in ca {
                    for &j in cb {
                        universal_markov.push(Binomial::new(
                            g.fiber[i].clone(),
                            g.fiber[j].clone(),
                            g.degree.clone(),
                        ));
                    }
                }
            }
        }
        if g.component_count() == 2 && g.is_minimal_degree() {
            indispensable.push(minimal_markov.last().expect("one star edge").clone());
        }
    }
    let generated_by_indispensables = betti.iter().all(|g| g.is_minimal_degree() && g.beta0() == 1);
    minimal_markov.sort();
    universal_markov.sort();
    universal_markov.dedup();
    indispensable.sort();
    Ok(MarkovAnalysis { betti, minimal_markov, universal_markov, indispensable, generated_by_indispensables })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use crate::oracle::graver_bounded;

    fn degrees(g: &[Binomial]) -> Vec<DegreeVector> {
        g.iter().map(|b| b.degree().clone()).collect()
    }

    #[test]
    fn k4_betti_data() {
        let g = Graph::from_edges(4, &[(0, 1), (2, 3), (0, 2), (1, 3), (0, 3), (1, 2)]).unwrap();
        let c = ToricConfig::from_graph(&g);
        let m = markov_analysis(&c, &degrees(&graver_bounded(&c, 2).unwrap())).unwrap();
        assert_eq!(m.betti.len(), 1);
        assert_eq!(m.betti[0].beta0(), 2);
        assert_eq!(m.minimal_markov.len(), 2);
        assert_eq!(m.universal_markov.len(), 3);
        assert!(m.indispensable.is_empty());
        assert!(!m.generated_by_indispensables);
        assert_eq!(m.beta0_total(), m.minimal_markov.len());
    }

    #[test]
    fn c4_is_generated_by_its_indispensable_binomial() {
        let g = Graph::from_edges(4, &[(0, 1), (2, 3), (1, 2), (3, 0)]).unwrap();
        let c = ToricConfig::from_graph(&g);
        let m = markov_analysis(&c, &degrees(&graver_bounded(&c, 2).unwrap())).unwrap();
        assert_eq!(m.minimal_markov, m.universal_markov);
        assert_eq!(m.indispensable, m.universal_markov);
        assert!(m.generated_by_indispensables);
        assert_eq!(m.betti_at(&DegreeVector(vec![1, 1, 1, 1])).unwrap().beta0(), 1);
    }
}
