use std::cmp::Ordering;
use std::collections::VecDeque;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::ToricConfig;
use crate::binomial::{Binomial, Monomial};
use crate::error::OracleError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroebnerSample {
    pub weights: Vec<u64>,
    pub basis: Vec<Binomial>,
}

struct TermOrder<'a> {
    weights: &'a [u64],
}

impl TermOrder<'_> {
    fn cmp(&self, a: &[u32], b: &[u32]) -> Ordering {
        let w = |x: &[u32]| x.iter().zip(self.weights).map(|(&e, &w)| u64::from(e) * w).sum::<u64>();
        w(a).cmp(&w(b)).then_with(|| a.cmp(b))
    }
}

#[derive(Clone, Debug)]
struct Rule {
    lead: Vec<u32>,
    tail: Vec<u32>,
}

fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

/// `x^a - x^b` with common factors removed and the larger term first.
fn rule(order: &TermOrder, mut a: Vec<u32>, mut b: Vec<u32>) -> Option<Rule> {
    for (x, y) in a.iter_mut().zip(b.iter_mut()) {
        let g = (*x).min(*y);
        *x -= g;
        *y -= g;
    }
    match order.cmp(&a, &b) {
        Ordering::Equal => None,
        Ordering::Greater => Some(Rule { lead: a, tail: b }),
        Ordering::Less => Some(Rule { lead: b, tail: a }),
    }
}

fn normal_form(mut x: Vec<u32>, rules: &[Rule], skip: Option<usize>) -> Vec<u32> {
    'outer: loop {
        for (k, r) in rules.iter().enumerate() {
            if Some(k) != skip && divides(&r.lead, &x) {
                for ((xi, l), t) in x.iter_mut().zip(&r.lead).zip(&r.tail) {
                    *xi = *xi - l + t;
                }
                continue 'outer;
            }
        }
        return x;
    }
}

/// The reduced Gröbner basis of the ideal generated by `generators` for the
/// weight order refined lexicographically (`x1 > x2 > ...`).
pub fn reduced_groebner(
    config: &ToricConfig,
    generators: &[Binomial],
    weights: &[u64],
) -> Result<Vec<Binomial>, OracleError> {
    let m = config.variables();
    if weights.len() != m {
        return Err(OracleError::Dimension { expected: m, found: weights.len() });
    }
    if let Some(i) = weights.iter().position(|&w| w == 0) {
        return Err(OracleError::ZeroWeight(i));
    }
    let order = TermOrder { weights };
    let mut rules: Vec<Rule> = Vec::new();
    for g in generators {
        if g.variables() != m {
            return Err(OracleError::Dimension { expected: m, found: g.variables() });
        }
        if let Some(r) = rule(&order, g.plus().0.clone(), g.minus().0.clone()) {
            rules.push(r);
        }
    }
    let mut pairs: VecDeque<(usize, usize)> =
        (0..rules.len()).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
    while let Some((i, j)) = pairs.pop_front() {
        let (a, b) = (&rules[i], &rules[j]);
        if a.lead.iter().zip(&b.lead).all(|(&x, &y)| x == 0 || y == 0) {
            continue;
        }
        let lcm: Vec<u32> = a.lead.iter().zip(&b.lead).map(|(&x, &y)| x.max(y)).collect();
        let s1: Vec<u32> = (0..m).map(|k| lcm[k] - a.lead[k] + a.tail[k]).collect();
        let s2: Vec<u32> = (0..m).map(|k| lcm[k] - b.lead[k] + b.tail[k]).collect();
        let h = rule(&order, normal_form(s1, &rules, None), normal_form(s2, &rules, None));
        if let Some(h) = h {
            let k = rules.len();
            rules.push(h);
            pairs.extend((0..k).map(|i| (i, k)));
        }
    }
    let keep: Vec<bool> = (0..rules.len())
        .map(|i| {
            !(0..rules.len()).any(|j| {
                j != i && divides(&rules[j].lead, &rules[i].lead) && (rules[j].lead != rules[i].lead || j < i)
            })
        })
        .collect();
    let minimal: Vec<Rule> = rules.into_iter().zip(keep).filter(|(_, k)| *k).map(|(r, _)| r).collect();
    let mut out: Vec<Binomial> = (0..minimal.len())
        .map(|i| {
            let tail = normal_form(minimal[i].tail.clone(), &minimal, Some(i));
            let lead = minimal[i].lead.clone();
            let degree = config.degree_of(&lead);
            Binomial::new(Monomial(lead), Monomial(tail), degree)
        })
        .collect();
    out.sort();
    Ok(out)
}

/// Reduced Gröbner bases for `samples` weight vectors drawn uniformly from
/// `1..=100` per variable with a seeded generator.
pub fn sample_groebner(
    config: &ToricConfig,
    generators: &[Binomial],
    samples: usize,
    seed: u64,
) -> Result<Vec<GroebnerSample>, OracleError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let weights: Vec<Vec<u64>> = (0..samples)
        .map(|_| (0..config.variables()).map(|_| rng.gen_range(1..=100)).collect())
        .collect();
    weights
        .into_iter()
        .map(|w| {
            let basis = reduced_groebner(config, generators, &w)?;
            Ok(GroebnerSample { weights: w, basis })
        })
        .collect()
}
