//! Serializable reports for a graph analysis and for a matrix oracle run.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::basis_set::{BasisKind, BasisSet};
use crate::binomial::DegreeVector;
use crate::error::Error;
use crate::graph::Graph;
use crate::oracle::{graver_bounded, markov_analysis, sample_groebner, ToricConfig};
use crate::robustness::{ImplicationReport, RobustnessVerdict};
use crate::suite::{oracle_comparison, run_graph, Counts, OracleComparison};

pub const SCHEMA: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeLabel {
    pub name: String,
    pub ends: [String; 2],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InputSummary {
    pub digest: String,
    pub vertices: usize,
    pub edges: Vec<EdgeLabel>,
}

impl InputSummary {
    fn of(graph: &Graph) -> Self {
        InputSummary {
            digest: graph.digest(),
            vertices: graph.vertex_count(),
            edges: (0..graph.edge_count())
                .map(|e| {
                    let [u, v] = graph.endpoints(e);
                    EdgeLabel { name: Graph::edge_name(e), ends: [graph.label(u).into(), graph.label(v).into()] }
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphSets {
    pub circuits: BasisSet,
    pub graver: BasisSet,
    pub ugb: BasisSet,
    pub markov: BasisSet,
    pub indispensable: BasisSet,
}

#[derive(Clone, Copy, Debug, Default)]
pub struct AnalyzeOptions {
    pub force: bool,
    pub oracle: bool,
    pub timings: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub schema: u32,
    pub input: InputSummary,
    pub counts: Counts,
    pub sets: GraphSets,
    pub verdict: RobustnessVerdict,
    pub implications: ImplicationReport,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleComparison>,
    /// Seconds per stage; only present when requested, so that reports are
    /// otherwise reproducible byte for byte.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timings: Option<BTreeMap<String, f64>>,
}

struct Stopwatch {
    enabled: bool,
    last: Instant,
    stages: BTreeMap<String, f64>,
}

impl Stopwatch {
    fn new(enabled: bool) -> Self {
        Stopwatch { enabled, last: Instant::now(), stages: BTreeMap::new() }
    }

    fn lap(&mut self, stage: &str) {
        let now = Instant::now();
        self.stages.insert(stage.into(), (now - self.last).as_secs_f64());
        self.last = now;
    }

    fn finish(self) -> Option<BTreeMap<String, f64>> {
        self.enabled.then_some(self.stages)
    }
}

/// Computes every set, verdict and implication for `graph`.
pub fn analyze(graph: &Graph, options: AnalyzeOptions) -> Result<AnalysisReport, Error> {
    let mut clock = Stopwatch::new(options.timings);
    let run = run_graph(graph, options.force)?;
    clock.lap("bases_and_verdicts");
    let oracle = if options.oracle { Some(oracle_comparison(&run.bases, &run.indispensable)?) } else { None };
    clock.lap("oracle");
    let b = &run.bases;
    Ok(AnalysisReport {
        schema: SCHEMA,
        input: InputSummary::of(graph),
        counts: run.counts.clone(),
        sets: GraphSets {
            circuits: b.circuits(),
            graver: b.graver(),
            ugb: b.universal_groebner(),
            markov: b.universal_markov(),
            indispensable: run.indispensable.clone(),
        },
        verdict: run.verdict,
        implications: run.implications,
        oracle,
        timings: clock.finish(),
    })
}

impl AnalysisReport {
    /// Problems that indicate a bug rather than a property of the input.
    pub fn invariant_breaches(&self) -> Vec<String> {
        let mut out = Vec::new();
        if !self.verdict.checkers_agree() {
            out.push("generalized robustness checkers disagree".to_string());
        }
        for i in self.implications.violations() {
            out.push(format!("implication {} violated", i.name));
        }
        if let Some(o) = &self.oracle {
            out.extend(o.mismatches.iter().map(|m| format!("oracle mismatch: {m}")));
        }
        let s = &self.sets;
        let c = &self.counts;
        if [s.circuits.len(), s.graver.len(), s.ugb.len(), s.markov.len(), s.indispensable.len()]
            != [c.circuits, c.graver, c.ugb, c.markov, c.indispensable]
        {
            out.push("counts do not match the sets".to_string());
        }
        out
    }

    pub fn set(&self, kind: BasisKind) -> Option<&BasisSet> {
        let s = &self.sets;
        match kind {
            BasisKind::Circuits => Some(&s.circuits),
            BasisKind::Graver => Some(&s.graver),
            BasisKind::Ugb => Some(&s.ugb),
            BasisKind::Markov => Some(&s.markov),
            BasisKind::Indispensable => Some(&s.indispensable),
            _ => None,
        }
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let c = &self.counts;
        let _ = writeln!(out, "graph {} ({} vertices, {} edges)", &self.input.digest[..12], self.input.vertices, self.input.edges.len());
        for e in &self.input.edges {
            let _ = writeln!(out, "  {} = {{{}, {}}}", e.name, e.ends[0], e.ends[1]);
        }
        let _ = writeln!(
            out,
            "circuits={} graver={} ugb={} markov={} indispensable={}",
            c.circuits, c.graver, c.ugb, c.markov, c.indispensable
        );
        let _ = writeln!(out, "generalized_robust={} robust={}", c.generalized_robust, c.robust);
        for (name, r) in &self.verdict.criteria {
            let _ = writeln!(out, "  {name}: {}", r.holds);
        }
        for w in &self.verdict.witnesses {
            let _ = writeln!(out, "witness [{}] {} breaks {}", w.criterion, w.binomial.render("e"), w.rules.join(","));
            for d in &w.details {
                let _ = writeln!(out, "    {d}");
            }
        }
        for s in [&self.sets.circuits, &self.sets.graver, &self.sets.ugb, &self.sets.markov, &self.sets.indispensable] {
            out.push_str(&render_set(s, "e"));
        }
        let held = self.implications.implications.iter().filter(|i| i.holds).count();
        let _ = writeln!(out, "implications: {held}/{} hold", self.implications.implications.len());
        for i in self.implications.violations() {
            let _ = writeln!(out, "  VIOLATED {}", i.name);
        }
        if let Some(o) = &self.oracle {
            let _ = writeln!(
                out,
                "oracle: graver={} markov={} indispensable={} primitivity={}",
                verdict_word(o.graver),
                verdict_word(o.markov),
                verdict_word(o.indispensable),
                verdict_word(o.primitivity)
            );
            for m in &o.mismatches {
                let _ = writeln!(out, "  {m}");
            }
        }
        if let Some(t) = &self.timings {
            for (stage, secs) in t {
                let _ = writeln!(out, "time {stage}: {secs:.3}s");
            }
        }
        out
    }
}

fn verdict_word(ok: bool) -> &'static str {
    if ok {
        "match"
    } else {
        "MISMATCH"
    }
}

/// One line per element, with tags when present.
pub fn render_set(s: &BasisSet, prefix: &str) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{} ({}):", s.kind, s.len());
    for e in s.elements() {
        let _ = write!(out, "  {}", e.binomial.render(prefix));
        if let Some(t) = &e.tags {
            let mut flags = Vec::new();
            if t.circuit {
                flags.push("circuit".to_string());
            }
            if t.mixed {
                flags.push("mixed".to_string());
            } else {
                flags.push("pure".to_string());
            }
            if t.minimal {
                flags.push("minimal".to_string());
            }
            for f in &t.minimality_failures {
                flags.push(format!("fails {f}"));
            }
            let _ = write!(out, "  [{}]", flags.join(", "));
        }
        out.push('\n');
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiSummary {
    pub degree: DegreeVector,
    pub fiber_size: usize,
    pub component_sizes: Vec<usize>,
    pub beta0: usize,
    pub minimal_degree: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroebnerSummary {
    pub samples: usize,
    pub seed: u64,
    pub distinct_bases: usize,
    pub union: BasisSet,
    pub union_in_universal_markov: bool,
    pub union_in_graver: bool,
}

#[derive(Clone, Copy, Debug)]
pub struct MatrixOptions {
    pub box_bound: u32,
    pub box_supplied: bool,
    pub samples: usize,
    pub seed: u64,
    pub timings: bool,
}

impl Default for MatrixOptions {
    fn default() -> Self {
        MatrixOptions { box_bound: 2, box_supplied: false, samples: 0, seed: 0, timings: false }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MatrixReport {
    pub schema: u32,
    pub matrix: Vec<Vec<u32>>,
    pub box_bound: u32,
    /// Sets are complete only within the exponent box.
    pub complete_within_box_only: bool,
    pub betti: Vec<BettiSummary>,
    pub minimal_markov: BasisSet,
    pub universal_markov: BasisSet,
    pub graver: BasisSet,
    pub indispensable: BasisSet,
    pub generated_by_indispensables: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub groebner: Option<GroebnerSummary>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timings: Option<BTreeMap<String, f64>>,
}

/// Runs the fiber pipeline on a matrix: bounded Graver basis, Betti data,
/// Markov bases, indispensability and optional Gröbner sampling.
pub fn analyze_matrix(config: &ToricConfig, options: MatrixOptions) -> Result<MatrixReport, Error> {
    let mut clock = Stopwatch::new(options.timings);
    let graver = graver_bounded(config, options.box_bound)?;
    clock.lap("graver");
    let candidates: Vec<DegreeVector> = graver.iter().map(|b| b.degree().clone()).collect();
    let m = markov_analysis(config, &candidates)?;
    clock.lap("fibers");
    let graver = BasisSet::untagged(BasisKind::Graver, None, graver);
    let universal_markov = BasisSet::untagged(BasisKind::Markov, None, m.universal_markov.clone());
    let groebner = if options.samples > 0 {
        let samples = sample_groebner(config, &m.minimal_markov, options.samples, options.seed)?;
        let mut distinct: Vec<_> = samples.iter().map(|s| s.basis.clone()).collect();
        distinct.sort();
        distinct.dedup();
        let union = BasisSet::untagged(BasisKind::Groebner, None, samples.into_iter().flat_map(|s| s.basis));
        Some(GroebnerSummary {
            samples: options.samples,
            seed: options.seed,
            distinct_bases: distinct.len(),
            union_in_universal_markov: union.is_subset(&universal_markov),
            union_in_graver: union.is_subset(&graver),
            union,
        })
    } else {
        None
    };
    clock.lap("groebner");
    Ok(MatrixReport {
        schema: SCHEMA,
        matrix: config.matrix().to_vec(),
        box_bound: options.box_bound,
        complete_within_box_only: options.box_supplied,
        betti: m
            .betti
            .iter()
            .map(|g| BettiSummary {
                degree: g.degree.clone(),
                fiber_size: g.fiber.len(),
                component_sizes: g.components.iter().map(Vec::len).collect(),
                beta0: g.beta0(),
                minimal_degree: g.is_minimal_degree(),
            })
            .collect(),
        minimal_markov: BasisSet::untagged(BasisKind::MinimalMarkov, None, m.minimal_markov.clone()),
        universal_markov,
        graver,
        indispensable: BasisSet::untagged(BasisKind::Indispensable, None, m.indispensable.clone()),
        generated_by_indispensables: m.generated_by_indispensables,
        groebner,
        timings: clock.finish(),
    })
}

impl MatrixReport {
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let cols = self.matrix.first().map_or(0, Vec::len);
        let _ = writeln!(out, "matrix {}x{}, box {}", self.matrix.len(), cols, self.box_bound);
        if self.complete_within_box_only {
            let _ = writeln!(out, "note: sets are complete only for exponents up to {}", self.box_bound);
        }
        let _ = writeln!(
            out,
            "minimal_markov={} universal_markov={} graver={} indispensable={}",
            self.minimal_markov.len(),
            self.universal_markov.len(),
            self.graver.len(),
            self.indispensable.len()
        );
        let _ = writeln!(
            out,
            "generated by indispensable binomials: {}",
            if self.generated_by_indispensables { "yes" } else { "no" }
        );
        for b in &self.betti {
            let _ = writeln!(
                out,
                "betti degree {}: fiber {}, components {:?}, beta0 {}{}",
                b.degree,
                b.fiber_size,
                b.component_sizes,
                b.beta0,
                if b.minimal_degree { ", minimal" } else { "" }
            );
        }
        for s in [&self.minimal_markov, &self.universal_markov, &self.graver, &self.indispensable] {
            out.push_str(&render_set(s, "x"));
        }
        if let Some(g) = &self.groebner {
            let _ = writeln!(
                out,
                "groebner: {} samples (seed {}), {} distinct bases, union in universal markov: {}, in graver: {}",
                g.samples, g.seed, g.distinct_bases, g.union_in_universal_markov, g.union_in_graver
            );
            out.push_str(&render_set(&g.union, "x"));
        }
        if let Some(t) = &self.timings {
            for (stage, secs) in t {
                let _ = writeln!(out, "time {stage}: {secs:.3}s");
            }
        }
        out
    }
}
