use std::collections::HashMap;

use rayon::prelude::*;

use super::ToricConfig;
use crate::binomial::{DegreeVector, Monomial};
use crate::error::OracleError;

struct FiberSearch<'a> {
    config: &'a ToricConfig,
    last: Vec<usize>,
    residual: Vec<u32>,
    current: Vec<u32>,
    out: Vec<Monomial>,
}

impl FiberSearch<'_> {
    fn visit(&mut self, j: usize) {
        let m = self.config.variables();
        if j == m {
            if self.residual.iter().all(|&r| r == 0) {
                self.out.push(Monomial(self.current.clone()));
            }
            return;
        }
        let rows = self.config.rows();
        let max = (0..rows)
            .filter(|&i| self.config.entry(i, j) > 0)
            .map(|i| self.residual[i] / self.config.entry(i, j))
            .min()
            .expect("no zero columns");
        for k in (0..=max).rev() {
            for i in 0..rows {
                self.residual[i] -= k * self.config.entry(i, j);
            }
            if (0..rows).all(|i| self.last[i] != j || self.residual[i] == 0) {
                self.current[j] = k;
                self.visit(j + 1);
                self.current[j] = 0;
            }
            for i in 0..rows {
                self.residual[i] += k * self.config.entry(i, j);
            }
        }
    }
}

/// All monomials of A-degree `b`, in decreasing lexicographic order of
/// exponent vectors.
pub fn fiber(config: &ToricConfig, b: &DegreeVector) -> Result<Vec<Monomial>, OracleError> {
    config.check_degree(b)?;
    let m = config.variables();
    let last = (0..config.rows())
        .map(|i| (0..m).rev().find(|&j| config.entry(i, j) > 0).unwrap_or(usize::MAX))
        .collect::<Vec<_>>();
    if (0..config.rows()).any(|i| last[i] == usize::MAX && b.0[i] != 0) {
        return Ok(Vec::new());
    }
    let mut search = FiberSearch {
        config,
        last,
        residual: b.0.clone(),
        current: vec![0; m],
        out: Vec::new(),
    };
    search.visit(0);
    Ok(search.out)
}

/// The fiber of a degree `b` split into the connected components of `G(b)`,
/// where two monomials are adjacent when their difference lies in the ideal
/// generated by binomials of degree strictly below `b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberGraph {
    pub degree: DegreeVector,
    pub fiber: Vec<Monomial>,
    /// Indices into `fiber`; each sorted, ordered by first element.
    pub components: Vec<Vec<usize>>,
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }

    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let next = self.0[y];
            self.0[y] = r;
            y = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

impl FiberGraph {
    fn from_union_find(degree: DegreeVector, fiber: Vec<Monomial>, mut uf: UnionFind) -> Self {
        let mut by_root: HashMap<usize, Vec<usize>> = HashMap::new();
        for i in 0..fiber.len() {
            by_root.entry(uf.find(i)).or_default().push(i);
        }
        let mut components: Vec<Vec<usize>> = by_root.into_values().collect();
        components.sort_unstable();
        FiberGraph { degree, fiber, components }
    }

    pub fn component_count(&self) -> usize {
        self.components.len()
    }

    pub fn is_betti(&self) -> bool {
        self.components.len() > 1
    }

    pub fn beta0(&self) -> usize {
        self.components.len().saturating_sub(1)
    }

    pub fn is_minimal_degree(&self) -> bool {
        self.components.iter().all(|c| c.len() == 1)
    }

    /// First fiber element of component `c`.
    pub fn representative(&self, c: usize) -> &Monomial {
        &self.fiber[self.components[c][0]]
    }

    pub fn component_of(&self, u: &Monomial) -> Option<usize> {
        let i = self.fiber.iter().position(|x| x == u)?;
        self.components.iter().position(|c| c.contains(&i))
    }
}

/// `G(b)` computed directly: two monomials of the fiber are joined exactly
/// when they share a variable, and components are the classes of the
/// transitive closure.
pub fn fiber_graph(config: &ToricConfig, b: &DegreeVector) -> Result<FiberGraph, OracleError> {
    let elements = fiber(config, b)?;
    let mut uf = UnionFind::new(elements.len());
    for j in 0..config.variables() {
        let mut with_j = (0..elements.len()).filter(|&i| elements[i].0[j] > 0);
        if let Some(first) = with_j.next() {
            for i in with_j {
                uf.union(first, i);
            }
        }
    }
    Ok(FiberGraph::from_union_find(b.clone(), elements, uf))
}

/// Fiber graphs of the candidate degrees, processed in (total, lexicographic)
/// order. Components at each degree are closed under moves by the minimal
/// generators found at earlier degrees; after each Betti degree a star of
/// generators joining its components is added to the move set.
pub fn fiber_graphs_up_to(
    config: &ToricConfig,
    candidates: &[DegreeVector],
) -> Result<Vec<FiberGraph>, OracleError> {
    let mut degrees = candidates.to_vec();
    degrees.sort_by(|a, b| a.graded_cmp(b));
    degrees.dedup();
    let mut moves: Vec<(Monomial, Monomial)> = Vec::new();
    let mut out = Vec::with_capacity(degrees.len());
    for b in degrees {
        let elements = fiber(config, &b)?;
        let index: HashMap<&Monomial, usize> = elements.iter().enumerate().map(|(i, u)| (u, i)).collect();
        let edges: Vec<(usize, usize)> = elements
            .par_iter()
            .enumerate()
            .flat_map_iter(|(i, u)| {
                let mut found = Vec::new();
                for (p, q) in &moves {
                    for (from, to) in [(p, q), (q, p)] {
                        if from.divides(u) {
                            let v = u.div(from).mul(to);
                            found.push((i, index[&v]));
                        }
                    }
                }
                found
            })
            .collect();
        let mut uf = UnionFind::new(elements.len());
        for (i, j) in edges {
            uf.union(i, j);
        }
        let g = FiberGraph::from_union_find(b, elements, uf);
        for c in 1..g.component_count() {
            moves.push((g.representative(0).clone(), g.representative(c).clone()));
        }
        out.push(g);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;

    fn k4() -> ToricConfig {
        let g = Graph::from_edges(4, &[(0, 1), (2, 3), (0, 2), (1, 3), (0, 3), (1, 2)]).unwrap();
        ToricConfig::from_graph(&g)
    }

    #[test]
    fn k4_perfect_matchings() {
        let f = fiber(&k4(), &DegreeVector(vec![1, 1, 1, 1])).unwrap();
        let rendered: Vec<String> = f.iter().map(|u| u.render("e")).collect();
        assert_eq!(rendered, vec!["e1e2", "e3e4", "e5e6"]);
        let g = fiber_graph(&k4(), &DegreeVector(vec![1, 1, 1, 1])).unwrap();
        assert_eq!(g.component_count(), 3);
        assert!(g.is_betti() && g.is_minimal_degree());
        assert_eq!(g.beta0(), 2);
    }

    #[test]
    fn zero_degree_and_empty_fibers() {
        assert_eq!(fiber(&k4(), &DegreeVector(vec![0; 4])).unwrap(), vec![Monomial::one(6)]);
        assert!(fiber(&k4(), &DegreeVector(vec![1, 0, 0, 0])).unwrap().is_empty());
        assert!(matches!(fiber(&k4(), &DegreeVector(vec![1])), Err(OracleError::Dimension { .. })));
    }

    #[test]
    fn every_fiber_element_has_the_degree() {
        let c = k4();
        let b = DegreeVector(vec![2, 2, 1, 1]);
        let f = fiber(&c, &b).unwrap();
        assert!(!f.is_empty());
        assert!(f.iter().all(|u| c.degree_of(&u.0) == b));
        let mut sorted = f.clone();
        sorted.sort_by(|a, b| b.cmp(a));
        assert_eq!(f, sorted);
    }

    #[test]
    fn move_closure_matches_direct_components() {
        let c = k4();
        let mut candidates = Vec::new();
        for x in 0..=2u32 {
            for y in 0..=2u32 {
                candidates.push(DegreeVector(vec![x, y, 1, 2 - x.min(1)]));
                candidates.push(DegreeVector(vec![1, 1, x, y]));
                candidates.push(DegreeVector(vec![2, 2, x, y]));
            }
        }
        candidates.retain(|b| b.total() % 2 == 0);
        candidates.insert(0, DegreeVector(vec![1, 1, 1, 1]));
        for g in fiber_graphs_up_to(&c, &candidates).unwrap() {
            let direct = fiber_graph(&c, &g.degree).unwrap();
            assert_eq!(g.components, direct.components, "degree {}", g.degree);
        }
    }
}
