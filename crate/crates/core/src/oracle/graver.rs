use std::collections::HashSet;

use rayon::prelude::*;

use super::ToricConfig;
use crate::binomial::{Binomial, DegreeVector, Monomial};
use crate::error::OracleError;

struct KernelSearch<'a> {
    config: &'a ToricConfig,
    bound: i64,
    /// `slack[j][i]`: the most row `i` can still move using columns `j..`.
    slack: Vec<Vec<i64>>,
    residual: Vec<i64>,
    current: Vec<i64>,
    out: Vec<Vec<i64>>,
}

impl KernelSearch<'_> {
    fn visit(&mut self, j: usize, leading: bool) {
        let m = self.config.variables();
        if j == m {
            if leading && self.residual.iter().all(|&r| r == 0) {
                self.out.push(self.current.clone());
            }
            return;
        }
        let lo = if leading { -self.bound } else { 0 };
        for k in lo..=self.bound {
            let mut feasible = true;
            for i in 0..self.config.rows() {
                self.residual[i] += k * i64::from(self.config.entry(i, j));
                if self.residual[i].abs() > self.slack[j + 1][i] {
                    feasible = false;
                }
            }
            if feasible {
                self.current[j] = k;
                self.visit(j + 1, leading || k != 0);
                self.current[j] = 0;
            }
            for i in 0..self.config.rows() {
                self.residual[i] -= k * i64::from(self.config.entry(i, j));
            }
        }
    }
}

/// Nonzero kernel vectors with entries in `[-bound, bound]` whose first
/// nonzero entry is positive.
fn kernel_in_box(config: &ToricConfig, bound: u32) -> Vec<Vec<i64>> {
    let (n, m) = (config.rows(), config.variables());
    let bound = i64::from(bound);
    let mut slack = vec![vec![0i64; n]; m + 1];
    for j in (0..m).rev() {
        slack[j] = (0..n).map(|i| slack[j + 1][i] + bound * i64::from(config.entry(i, j))).collect();
    }
    let mut search = KernelSearch {
        config,
        bound,
        slack,
        residual: vec![0; n],
        current: vec![0; m],
        out: Vec::new(),
    };
    search.visit(0, false);
    search.out
}

fn support_mask(z: &[i64]) -> u128 {
    z.iter().enumerate().filter(|(_, &x)| x != 0).fold(0, |acc, (i, _)| acc | 1 << i)
}

/// `y` or `-y` lies conformally inside `z`.
fn fits_inside(y: &[i64], z: &[i64]) -> bool {
    let same = y.iter().zip(z).all(|(&a, &b)| a == 0 || (a.signum() == b.signum() && a.abs() <= b.abs()));
    let flipped = y.iter().zip(z).all(|(&a, &b)| a == 0 || (-a.signum() == b.signum() && a.abs() <= b.abs()));
    same || flipped
}

/// The conformally minimal kernel vectors with entries bounded by `bound`.
///
/// Any vector fitting inside a boxed vector is itself boxed, so the result is
/// exactly the set of primitive binomials whose exponents are all at most
/// `bound`; it is the whole Graver basis when `bound` exceeds every exponent
/// in it.
pub fn graver_bounded(config: &ToricConfig, bound: u32) -> Result<Vec<Binomial>, OracleError> {
    if bound == 0 {
        return Err(OracleError::EmptyBox);
    }
    if config.variables() > 128 {
        return Err(OracleError::Malformed("more than 128 variables".into()));
    }
    let mut kernel = kernel_in_box(config, bound);
    let norm = |z: &Vec<i64>| z.iter().map(|x| x.abs()).sum::<i64>();
    kernel.sort_by_key(norm);
    let masks: Vec<u128> = kernel.iter().map(|z| support_mask(z)).collect();
    let norms: Vec<i64> = kernel.iter().map(norm).collect();
    let mut out: Vec<Binomial> = (0..kernel.len())
        .into_par_iter()
        .filter(|&k| {
            let z = &kernel[k];
            !(0..k).any(|i| {
                norms[i] < norms[k] && masks[i] & !masks[k] == 0 && fits_inside(&kernel[i], z)
            })
        })
        .map(|k| {
            let z = &kernel[k];
            let plus: Vec<u32> = z.iter().map(|&x| x.max(0) as u32).collect();
            let degree = config.degree_of(&plus);
            Binomial::from_kernel_vector(z, degree)
        })
        .collect();
    out.sort();
    Ok(out)
}

fn proper_sub_degrees(config: &ToricConfig, u: &Monomial) -> HashSet<DegreeVector> {
    let mut out = HashSet::new();
    let mut current = vec![0u32; u.len()];
    fn go(config: &ToricConfig, u: &Monomial, j: usize, current: &mut Vec<u32>, out: &mut HashSet<DegreeVector>) {
        if j == u.len() {
            if current.iter().any(|&x| x > 0) && current != &u.0 {
                out.insert(config.degree_of(current));
            }
            return;
        }
        for k in 0..=u.0[j] {
            current[j] = k;
            go(config, u, j + 1, current, out);
        }
        current[j] = 0;
    }
    go(config, u, 0, &mut current, &mut out);
    out
}

/// Whether no other binomial of the ideal fits inside `x^u - x^v`, i.e. no
/// `x^p | x^u`, `x^q | x^v` with equal degree other than the trivial pairs.
pub fn primitivity_check(config: &ToricConfig, binomial: &Binomial) -> Result<bool, OracleError> {
    if binomial.variables() != config.variables() {
        return Err(OracleError::Dimension { expected: config.variables(), found: binomial.variables() });
    }
    let plus = proper_sub_degrees(config, binomial.plus());
    let minus = proper_sub_degrees(config, binomial.minus());
    Ok(plus.is_disjoint(&minus))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;

    fn k4() -> ToricConfig {
        let g = Graph::from_edges(4, &[(0, 1), (2, 3), (0, 2), (1, 3), (0, 3), (1, 2)]).unwrap();
        ToricConfig::from_graph(&g)
    }

    fn b(config: &ToricConfig, plus: &[u32], minus: &[u32]) -> Binomial {
        Binomial::new(Monomial(plus.to_vec()), Monomial(minus.to_vec()), config.degree_of(plus))
    }

    #[test]
    fn k4_graver() {
        let c = k4();
        let g = graver_bounded(&c, 2).unwrap();
        let rendered: Vec<String> = g.iter().map(|x| x.render("e")).collect();
        assert_eq!(rendered, vec!["e1e2 - e3e4", "e1e2 - e5e6", "e3e4 - e5e6"]);
        assert_eq!(graver_bounded(&c, 0), Err(OracleError::EmptyBox));
    }

    #[test]
    fn c4_graver() {
        let g = Graph::from_edges(4, &[(0, 1), (2, 3), (1, 2), (3, 0)]).unwrap();
        let gr = graver_bounded(&ToricConfig::from_graph(&g), 2).unwrap();
        assert_eq!(gr.len(), 1);
        assert_eq!(gr[0].render("e"), "e1e2 - e3e4");
    }

    #[test]
    fn primitivity_examples() {
        let c = k4();
        assert!(primitivity_check(&c, &b(&c, &[1, 1, 0, 0, 0, 0], &[0, 0, 1, 1, 0, 0])).unwrap());
        assert!(!primitivity_check(&c, &b(&c, &[2, 2, 0, 0, 0, 0], &[0, 0, 1, 1, 1, 1])).unwrap());
        let d = ToricConfig::new(vec![vec![1, 1, 2]]).unwrap();
        assert!(primitivity_check(&d, &b(&d, &[1, 0, 0], &[0, 1, 0])).unwrap());
    }

    #[test]
    fn twisted_cubic_graver() {
        let c = ToricConfig::new(vec![vec![3, 2, 1, 0], vec![0, 1, 2, 3]]).unwrap();
        let g = graver_bounded(&c, 3).unwrap();
        assert!(g.iter().all(|x| primitivity_check(&c, x).unwrap()));
        let rendered: Vec<String> = g.iter().map(|x| x.render("x")).collect();
        for expected in ["x1x3 - x2^2", "x2x4 - x3^2", "x1x4 - x2x3"] {
            assert!(rendered.contains(&expected.to_string()), "{expected} missing from {rendered:?}");
        }
    }
}
