//! Robustness and generalized robustness, each decided by independent criteria.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::bases::{GraphBases, PrimitiveElement};
use crate::basis_set::BasisSet;
use crate::binomial::Binomial;
use crate::blocks::{block_decomposition, BlockDecomposition};
use crate::error::Error;
use crate::oracle::{fiber_graph, ToricConfig};
use crate::walk_analysis::MinimalityCondition;

pub const SETS: &str = "markov_equals_graver";
pub const CONDITIONS: &str = "primitive_m1_m2";
pub const CIRCUITS: &str = "circuit_rules";
pub const INDISPENSABLE: &str = "indispensable_equals_markov";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub criterion: String,
    pub binomial: Binomial,
    pub rules: Vec<String>,
    pub details: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CriterionResult {
    pub holds: bool,
    /// Rules broken anywhere, not only by the witness.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub rules_violated: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

impl CriterionResult {
    fn pass() -> Self {
        CriterionResult { holds: true, rules_violated: Vec::new(), witness: None }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RobustnessVerdict {
    pub generalized_robust: bool,
    pub robust: bool,
    pub criteria: BTreeMap<String, CriterionResult>,
    pub witnesses: Vec<Witness>,
}

impl RobustnessVerdict {
    /// The three generalized-robustness criteria return the same answer.
    pub fn checkers_agree(&self) -> bool {
        let v: Vec<bool> = [SETS, CONDITIONS, CIRCUITS].iter().map(|k| self.criteria[*k].holds).collect();
        v.iter().all(|&x| x == v[0])
    }
}

fn condition_witness(
    criterion: &str,
    e: &PrimitiveElement,
    keep: impl Fn(MinimalityCondition) -> bool,
) -> Witness {
    let failures: Vec<_> = e.analysis.failures.iter().filter(|f| keep(f.condition)).collect();
    let mut rules: Vec<String> = failures.iter().map(|f| f.condition.to_string()).collect();
    rules.dedup();
    Witness {
        criterion: criterion.into(),
        binomial: e.binomial.clone(),
        rules,
        details: failures.iter().map(|f| f.detail.clone()).collect(),
    }
}

/// Generalized robust iff the universal Markov basis is the whole Graver basis.
pub fn check_generalized_robust_sets(bases: &GraphBases) -> CriterionResult {
    let offending: Vec<&PrimitiveElement> = bases.elements().iter().filter(|e| !e.is_minimal()).collect();
    match offending.first() {
        None => CriterionResult::pass(),
        Some(e) => {
            let mut rules: Vec<String> =
                offending.iter().flat_map(|e| e.analysis.failed_conditions()).map(|c| c.to_string()).collect();
            rules.sort();
            rules.dedup();
            CriterionResult { holds: false, rules_violated: rules, witness: Some(condition_witness(SETS, e, |_| true)) }
        }
    }
}

/// Generalized robust iff every primitive walk satisfies M1 and M2.
pub fn check_generalized_robust_conditions(bases: &GraphBases) -> CriterionResult {
    let relevant = |c: MinimalityCondition| matches!(c, MinimalityCondition::M1 | MinimalityCondition::M2);
    let offending: Vec<&PrimitiveElement> = bases
        .elements()
        .iter()
        .filter(|e| e.analysis.failures.iter().any(|f| relevant(f.condition)))
        .collect();
    match offending.first() {
        None => CriterionResult::pass(),
        Some(e) => {
            let mut rules: Vec<String> = offending
                .iter()
                .flat_map(|e| e.analysis.failed_conditions())
                .filter(|&c| relevant(c))
                .map(|c| c.to_string())
                .collect();
            rules.sort();
            rules.dedup();
            CriterionResult {
                holds: false,
                rules_violated: rules,
                witness: Some(condition_witness(CONDITIONS, e, relevant)),
            }
        }
    }
}

fn circuit_violations(
    bases: &GraphBases,
    circuits: &[&PrimitiveElement],
    blocks: &[BlockDecomposition],
    i: usize,
) -> Vec<(String, String)> {
    let graph = bases.graph();
    let c = circuits[i];
    let mut out = Vec::new();
    for f in &c.analysis.failures {
        match f.condition {
            MinimalityCondition::M1 => out.push(("R1".to_string(), f.detail.clone())),
            MinimalityCondition::M2 => out.push(("R2".to_string(), f.detail.clone())),
            _ => {}
        }
    }
    let vertices = graph.vertices_of(c.support);
    for (j, other) in circuits.iter().enumerate() {
        if j == i {
            continue;
        }
        let shared = c.support.intersection(other.support);
        if shared.len() != 1 {
            continue;
        }
        let e = shared.iter().next().expect("one shared edge");
        let mut ends = graph.endpoints(e).to_vec();
        ends.sort_unstable();
        let other_vertices = graph.vertices_of(other.support);
        let common: Vec<usize> = vertices.iter().copied().filter(|v| other_vertices.contains(v)).collect();
        let cyclic = |d: &BlockDecomposition| d.block_of_edge(e).is_some_and(|b| d.blocks[b].is_cycle());
        if common == ends && cyclic(&blocks[i]) && cyclic(&blocks[j]) {
            out.push((
                "R3".to_string(),
                format!(
                    "shares only {} with the circuit {}, inside a cycle of both",
                    crate::graph::Graph::edge_name(e),
                    other.binomial.render("e")
                ),
            ));
        }
    }
    out
}

/// Generalized robust iff no circuit breaks R1 (even chords, bridges), R2
/// (effectively crossing odd chords outside an F4) or R3 (two circuits
/// sharing exactly one edge and its endpoints, the edge lying on a cycle of
/// both).
pub fn check_generalized_robust_circuits(bases: &GraphBases) -> Result<CriterionResult, Error> {
    let circuits: Vec<&PrimitiveElement> = bases.elements().iter().filter(|e| e.circuit).collect();
    let blocks: Vec<BlockDecomposition> = circuits
        .iter()
        .map(|c| block_decomposition(bases.graph(), Some(c.support)))
        .collect::<Result<_, _>>()?;
    let mut all_rules: Vec<String> = Vec::new();
    let mut witness = None;
    for i in 0..circuits.len() {
        let v = circuit_violations(bases, &circuits, &blocks, i);
        if v.is_empty() {
            continue;
        }
        all_rules.extend(v.iter().map(|(r, _)| r.clone()));
        if witness.is_none() {
            let mut rules: Vec<String> = v.iter().map(|(r, _)| r.clone()).collect();
            rules.dedup();
            witness = Some(Witness {
                criterion: CIRCUITS.into(),
                binomial: circuits[i].binomial.clone(),
                rules,
                details: v.into_iter().map(|(_, d)| d).collect(),
            });
        }
    }
    all_rules.sort();
    all_rules.dedup();
    Ok(CriterionResult { holds: witness.is_none(), rules_violated: all_rules, witness })
}

/// Whether every universal Markov element is indispensable. Robustness is this
/// together with generalized robustness.
pub fn check_robust(bases: &GraphBases, indispensable: &BasisSet) -> Result<CriterionResult, Error> {
    let markov = bases.universal_markov();
    let Some(b) = markov.binomials().find(|b| !indispensable.contains(b)) else {
        return Ok(CriterionResult { holds: true, rules_violated: Vec::new(), witness: None });
    };
    let g = fiber_graph(&ToricConfig::from_graph(bases.graph()), b.degree())?;
    let sizes: Vec<String> = g.components.iter().map(|c| c.len().to_string()).collect();
    Ok(CriterionResult {
        holds: false,
        rules_violated: vec!["dispensable".into()],
        witness: Some(Witness {
            criterion: INDISPENSABLE.into(),
            binomial: b.clone(),
            rules: vec!["dispensable".into()],
            details: vec![format!(
                "fiber of degree {} has {} components of sizes [{}]",
                b.degree(),
                g.component_count(),
                sizes.join(", ")
            )],
        }),
    })
}

/// All criteria at once.
pub fn verdict(bases: &GraphBases, indispensable: &BasisSet) -> Result<RobustnessVerdict, Error> {
    let sets = check_generalized_robust_sets(bases);
    let conditions = check_generalized_robust_conditions(bases);
    let circuits = check_generalized_robust_circuits(bases)?;
    let robust = check_robust(bases, indispensable)?;
    let generalized_robust = sets.holds;
    let robust_holds = robust.holds && generalized_robust;
    let mut criteria = BTreeMap::new();
    criteria.insert(SETS.to_string(), sets);
    criteria.insert(CONDITIONS.to_string(), conditions);
    criteria.insert(CIRCUITS.to_string(), circuits);
    criteria.insert(INDISPENSABLE.to_string(), robust);
    let witnesses = criteria.values().filter_map(|c| c.witness.clone()).collect();
    Ok(RobustnessVerdict { generalized_robust, robust: robust_holds, criteria, witnesses })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Implication {
    pub name: String,
    pub holds: bool,
    pub vacuous: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ImplicationReport {
    pub implications: Vec<Implication>,
}

impl ImplicationReport {
    pub fn all_hold(&self) -> bool {
        self.implications.iter().all(|i| i.holds)
    }

    pub fn violations(&self) -> Vec<&Implication> {
        self.implications.iter().filter(|i| !i.holds).collect()
    }

    pub fn get(&self, name: &str) -> Option<&Implication> {
        self.implications.iter().find(|i| i.name == name)
    }
}

fn implication(name: &str, premise: bool, conclusion: bool, detail: Option<String>) -> Implication {
    Implication {
        name: name.into(),
        holds: !premise || conclusion,
        vacuous: !premise,
        detail: if premise && !conclusion { detail } else { None },
    }
}

/// A pair of distinct elements where a term of one divides a term of the other.
fn term_division(set: &BasisSet) -> Option<(Binomial, Binomial)> {
    let elements: Vec<&Binomial> = set.binomials().collect();
    for a in &elements {
        for b in &elements {
            if a != b && a.term_divides_term_of(b) {
                return Some(((*a).clone(), (*b).clone()));
            }
        }
    }
    None
}

/// Checks the implications relating the sets and verdicts; any failure is a bug.
pub fn implication_suite(bases: &GraphBases, indispensable: &BasisSet, v: &RobustnessVerdict) -> ImplicationReport {
    let (circuits, ugb, graver, markov) =
        (bases.circuits(), bases.universal_groebner(), bases.graver(), bases.universal_markov());
    let no_square = !bases.graph().has_four_cycle();
    let division = term_division(&ugb);
    let same = |a: &BasisSet, b: &BasisSet| a.same_elements(b);
    let implications = vec![
        implication("robust_implies_generalized_robust", v.robust, v.generalized_robust, None),
        implication(
            "robust_implies_no_term_division_in_ugb",
            v.robust,
            division.is_none(),
            division.map(|(a, b)| format!("a term of {} divides a term of {}", a.render("e"), b.render("e"))),
        ),
        implication(
            "robust_implies_markov_indispensable",
            v.robust,
            same(indispensable, &markov),
            Some("a universal Markov element is dispensable".into()),
        ),
        implication(
            "no_four_cycle_implies_unique_generation",
            no_square,
            same(indispensable, &markov),
            Some(format!("{} indispensable of {} universal Markov", indispensable.len(), markov.len())),
        ),
        implication(
            "no_four_cycle_implies_robust_iff_generalized_robust",
            no_square,
            v.robust == v.generalized_robust,
            None,
        ),
        implication("checkers_agree", true, v.checkers_agree(), None),
        implication(
            "circuits_in_ugb_in_graver",
            true,
            circuits.is_subset(&ugb) && ugb.is_subset(&graver),
            None,
        ),
        implication("markov_in_ugb", true, markov.is_subset(&ugb), None),
        implication("indispensable_in_markov", true, indispensable.is_subset(&markov), None),
    ];
    ImplicationReport { implications }
}
