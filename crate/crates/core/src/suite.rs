//! Property checks for single graphs and corpora: checker agreement,
//! implications, circuit minimality, oracle equivalence and expected counts.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bases::GraphBases;
use crate::basis_set::BasisSet;
use crate::binomial::DegreeVector;
use crate::error::{Error, GraphError};
use crate::graph::Graph;
use crate::oracle::{fiber_graph, graver_bounded, markov_analysis, primitivity_check, ToricConfig};
use crate::robustness::{implication_suite, verdict, ImplicationReport, RobustnessVerdict};

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counts {
    pub circuits: usize,
    pub graver: usize,
    pub ugb: usize,
    pub markov: usize,
    pub indispensable: usize,
    pub generalized_robust: bool,
    pub robust: bool,
}

impl Counts {
    fn value(&self, key: &str) -> Option<String> {
        Some(match key {
            "circuits" => self.circuits.to_string(),
            "graver" => self.graver.to_string(),
            "ugb" => self.ugb.to_string(),
            "markov" => self.markov.to_string(),
            "indispensable" => self.indispensable.to_string(),
            "generalized_robust" => self.generalized_robust.to_string(),
            "robust" => self.robust.to_string(),
            _ => return None,
        })
    }
}

/// Expected values keyed by count name, e.g. `graver = "3"`, `robust = "false"`.
pub type Expectation = BTreeMap<String, String>;

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleComparison {
    pub graver: bool,
    pub markov: bool,
    pub indispensable: bool,
    pub primitivity: bool,
    pub mismatches: Vec<String>,
}

impl OracleComparison {
    pub fn all_match(&self) -> bool {
        self.mismatches.is_empty()
    }
}

fn describe_difference(name: &str, ours: &BasisSet, theirs: &BasisSet) -> String {
    let missing: Vec<String> = theirs.binomials().filter(|b| !ours.contains(b)).map(|b| b.render("e")).collect();
    let extra: Vec<String> = ours.binomials().filter(|b| !theirs.contains(b)).map(|b| b.render("e")).collect();
    format!("{name}: missing [{}], extra [{}]", missing.join(", "), extra.join(", "))
}

/// Compares the walk-based sets with the matrix oracle on the incidence configuration.
pub fn oracle_comparison(bases: &GraphBases, indispensable: &BasisSet) -> Result<OracleComparison, Error> {
    let config = ToricConfig::from_graph(bases.graph());
    let graver = bases.graver();
    let oracle_graver = BasisSet::untagged(graver.kind, None, graver_bounded(&config, 2)?);
    let candidates: Vec<DegreeVector> = oracle_graver.binomials().map(|b| b.degree().clone()).collect();
    let m = markov_analysis(&config, &candidates)?;
    let markov = bases.universal_markov();
    let oracle_markov = BasisSet::untagged(markov.kind, None, m.universal_markov.clone());
    let oracle_indispensable = BasisSet::untagged(indispensable.kind, None, m.indispensable.clone());
    let mut out = OracleComparison {
        graver: graver.same_elements(&oracle_graver),
        markov: markov.same_elements(&oracle_markov),
        indispensable: indispensable.same_elements(&oracle_indispensable),
        primitivity: true,
        mismatches: Vec::new(),
    };
    if !out.graver {
        out.mismatches.push(describe_difference("graver", &graver, &oracle_graver));
    }
    if !out.markov {
        out.mismatches.push(describe_difference("markov", &markov, &oracle_markov));
    }
    if !out.indispensable {
        out.mismatches.push(describe_difference("indispensable", indispensable, &oracle_indispensable));
    }
    for b in graver.binomials() {
        if !primitivity_check(&config, b)? {
            out.primitivity = false;
            out.mismatches.push(format!("primitivity: {} has a conformal divisor", b.render("e")));
        }
    }
    if m.beta0_total() != m.minimal_markov.len() {
        out.mismatches.push(format!(
            "betti: beta0 total {} but {} minimal generators",
            m.beta0_total(),
            m.minimal_markov.len()
        ));
    }
    for g in &m.betti {
        let direct = fiber_graph(&config, &g.degree)?;
        if direct.components != g.components {
            out.mismatches.push(format!("fiber graph at {}: move closure and support test disagree", g.degree));
        }
    }
    Ok(out)
}

/// Circuits are exactly the primitive elements of minimal support.
fn circuit_minimality(bases: &GraphBases) -> Option<String> {
    let supports: Vec<_> = bases.elements().iter().map(|e| e.support).collect();
    for e in bases.elements() {
        let minimal = !supports.iter().any(|&s| s != e.support && s.is_subset(e.support));
        if minimal != e.circuit {
            return Some(format!(
                "{} is {}a circuit but has {}minimal support",
                e.binomial.render("e"),
                if e.circuit { "" } else { "not " },
                if minimal { "" } else { "non-" }
            ));
        }
    }
    None
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphCheck {
    pub name: String,
    pub digest: String,
    pub vertices: usize,
    pub edges: usize,
    pub counts: Counts,
    pub failures: Vec<String>,
    /// The graph in JSON form, present when some property failed.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
}

impl GraphCheck {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Everything computed for one graph, as used by both reports and suites.
pub struct GraphRun {
    pub bases: GraphBases,
    pub indispensable: BasisSet,
    pub verdict: RobustnessVerdict,
    pub implications: ImplicationReport,
    pub counts: Counts,
}

pub fn run_graph(graph: &Graph, force: bool) -> Result<GraphRun, Error> {
    let bases = GraphBases::compute(graph, force)?;
    let indispensable = bases.indispensable()?;
    let verdict = verdict(&bases, &indispensable)?;
    let implications = implication_suite(&bases, &indispensable, &verdict);
    let counts = Counts {
        circuits: bases.circuits().len(),
        graver: bases.graver().len(),
        ugb: bases.universal_groebner().len(),
        markov: bases.universal_markov().len(),
        indispensable: indispensable.len(),
        generalized_robust: verdict.generalized_robust,
        robust: verdict.robust,
    };
    Ok(GraphRun { bases, indispensable, verdict, implications, counts })
}

/// Runs every property on one graph; `oracle` enables the matrix cross-checks.
pub fn check_graph(name: &str, graph: &Graph, oracle: bool, expect: Option<&Expectation>) -> Result<GraphCheck, Error> {
    let run = run_graph(graph, false)?;
    let mut failures = Vec::new();
    if !run.verdict.checkers_agree() {
        let each: Vec<String> = run.verdict.criteria.iter().map(|(k, c)| format!("{k}={}", c.holds)).collect();
        failures.push(format!("checkers disagree: {}", each.join(" ")));
    }
    for i in run.implications.violations() {
        failures.push(format!("implication {} violated{}", i.name, i.detail.as_ref().map(|d| format!(": {d}")).unwrap_or_default()));
    }
    if let Some(m) = circuit_minimality(&run.bases) {
        failures.push(m);
    }
    if oracle {
        failures.extend(oracle_comparison(&run.bases, &run.indispensable)?.mismatches);
    }
    if let Some(expect) = expect {
        for (key, want) in expect {
            match run.counts.value(key) {
                None => failures.push(format!("unknown expectation {key}")),
                Some(got) if &got != want => failures.push(format!("expected {key}={want}, got {got}")),
                Some(_) => {}
            }
        }
    }
    let counterexample = (!failures.is_empty()).then(|| graph.to_json());
    Ok(GraphCheck {
        name: name.into(),
        digest: graph.digest(),
        vertices: graph.vertex_count(),
        edges: graph.edge_count(),
        counts: run.counts,
        failures,
        counterexample,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub schema: u32,
    pub graphs: Vec<GraphCheck>,
    pub passed: usize,
    pub failed: usize,
}

impl SuiteReport {
    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }
}

pub struct CorpusEntry {
    pub name: String,
    pub graph: Graph,
    pub expect: Option<Expectation>,
}

/// Parses a corpus file: an edge list whose `# expect: key=value ...` comment
/// lines give expected counts, or a JSON graph with an `"expect"` object.
pub fn parse_corpus_entry(name: &str, text: &str) -> Result<CorpusEntry, GraphError> {
    let graph = Graph::parse(text)?;
    let mut expect = Expectation::new();
    if text.trim_start().starts_with('{') {
        let v: serde_json::Value = serde_json::from_str(text).map_err(|e| GraphError::Json(e.to_string()))?;
        if let Some(obj) = v.get("expect").and_then(|e| e.as_object()) {
            for (k, val) in obj {
                let s = match val {
                    serde_json::Value::String(s) => s.clone(),
                    other => other.to_string(),
                };
                expect.insert(k.clone(), s);
            }
        }
    } else {
        for line in text.lines() {
            let Some(rest) = line.trim().strip_prefix('#').map(str::trim) else {
                continue;
            };
            let Some(pairs) = rest.strip_prefix("expect:") else {
                continue;
            };
            for pair in pairs.split_whitespace() {
                let (k, v) = pair
                    .split_once('=')
                    .ok_or_else(|| GraphError::Json(format!("bad expectation {pair:?}")))?;
                expect.insert(k.into(), v.into());
            }
        }
    }
    Ok(CorpusEntry { name: name.into(), graph, expect: (!expect.is_empty()).then_some(expect) })
}

/// Checks every entry; order of the report follows the input order.
pub fn run_suite(entries: &[CorpusEntry], oracle: bool) -> Result<SuiteReport, Error> {
    let graphs: Vec<GraphCheck> = entries
        .par_iter()
        .map(|e| check_graph(&e.name, &e.graph, oracle, e.expect.as_ref()))
        .collect::<Result<_, _>>()?;
    let failed = graphs.iter().filter(|g| !g.passed()).count();
    Ok(SuiteReport { schema: 1, passed: graphs.len() - failed, failed, graphs })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::random_corpus;

    #[test]
    fn expectations_from_comments_and_json() {
        let e = parse_corpus_entry("c4", "# expect: graver=1 robust=true\n1 2\n3 4\n2 3\n4 1\n").unwrap();
        let ex = e.expect.unwrap();
        assert_eq!(ex["graver"], "1");
        assert_eq!(ex["robust"], "true");
        let j = parse_corpus_entry(
            "c4",
            r#"{"vertices": 4, "edges": [[1,2],[3,4],[2,3],[4,1]], "expect": {"markov": 1, "robust": true}}"#,
        )
        .unwrap();
        assert_eq!(j.expect.unwrap()["robust"], "true");
        assert_eq!(j.graph.edge_count(), 4);
    }

    #[test]
    fn tampered_expectation_fails() {
        let e = parse_corpus_entry("c4", "# expect: graver=2\n1 2\n3 4\n2 3\n4 1\n").unwrap();
        let r = run_suite(&[e], true).unwrap();
        assert_eq!(r.failed, 1);
        assert!(r.graphs[0].failures[0].contains("expected graver=2, got 1"));
        assert!(r.graphs[0].counterexample.is_some());
    }

    #[test]
    fn small_random_corpus_passes() {
        let entries: Vec<CorpusEntry> = random_corpus(40, 7, 10, 1)
            .into_iter()
            .enumerate()
            .map(|(i, graph)| CorpusEntry { name: format!("r{i}"), graph, expect: None })
            .collect();
        let r = run_suite(&entries, true).unwrap();
        let failures: Vec<_> = r.graphs.iter().filter(|g| !g.passed()).collect();
        assert!(failures.is_empty(), "{failures:#?}");
    }
}
