//! Canonically ordered, duplicate-free sets of binomials with per-element tags.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::binomial::Binomial;
use crate::walk_analysis::MinimalityCondition;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BasisKind {
    Circuits,
    Graver,
    Ugb,
    Markov,
    Indispensable,
    MinimalMarkov,
    Groebner,
}

impl fmt::Display for BasisKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            BasisKind::Circuits => "circuits",
            BasisKind::Graver => "graver",
            BasisKind::Ugb => "ugb",
            BasisKind::Markov => "markov",
            BasisKind::Indispensable => "indispensable",
            BasisKind::MinimalMarkov => "minimal_markov",
            BasisKind::Groebner => "groebner",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementTags {
    pub circuit: bool,
    pub primitive: bool,
    pub mixed: bool,
    pub minimal: bool,
    pub minimality_failures: Vec<MinimalityCondition>,
}

impl ElementTags {
    /// Minimal, mixed and circuit elements are all primitive.
    pub fn is_consistent(&self) -> bool {
        self.primitive || !(self.minimal || self.mixed || self.circuit)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisElement {
    #[serde(flatten)]
    pub binomial: Binomial,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tags: Option<ElementTags>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisSet {
    pub kind: BasisKind,
    pub digest: Option<String>,
    elements: Vec<BasisElement>,
}

#[derive(Serialize, Deserialize)]
struct BasisSetJson {
    kind: BasisKind,
    count: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    digest: Option<String>,
    elements: Vec<BasisElement>,
}

impl BasisSet {
    /// Sorts canonically and keeps the first copy of each binomial.
    pub fn new(kind: BasisKind, digest: Option<String>, mut elements: Vec<BasisElement>) -> Self {
        elements.sort_by(|a, b| a.binomial.cmp(&b.binomial));
        elements.dedup_by(|a, b| a.binomial == b.binomial);
        BasisSet { kind, digest, elements }
    }

    pub fn untagged(kind: BasisKind, digest: Option<String>, binomials: impl IntoIterator<Item = Binomial>) -> Self {
        Self::new(
            kind,
            digest,
            binomials.into_iter().map(|binomial| BasisElement { binomial, tags: None }).collect(),
        )
    }

    pub fn elements(&self) -> &[BasisElement] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn binomials(&self) -> impl Iterator<Item = &Binomial> {
        self.elements.iter().map(|e| &e.binomial)
    }

    pub fn to_set(&self) -> BTreeSet<Binomial> {
        self.binomials().cloned().collect()
    }

    pub fn contains(&self, b: &Binomial) -> bool {
        self.elements.binary_search_by(|e| e.binomial.cmp(b)).is_ok()
    }

    pub fn is_subset(&self, other: &BasisSet) -> bool {
        self.binomials().all(|b| other.contains(b))
    }

    pub fn same_elements(&self, other: &BasisSet) -> bool {
        self.len() == other.len() && self.is_subset(other)
    }

    pub fn get(&self, b: &Binomial) -> Option<&BasisElement> {
        self.elements.binary_search_by(|e| e.binomial.cmp(b)).ok().map(|i| &self.elements[i])
    }
}

impl Serialize for BasisSet {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        BasisSetJson {
            kind: self.kind,
            count: self.len(),
            digest: self.digest.clone(),
            elements: self.elements.clone(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for BasisSet {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = BasisSetJson::deserialize(deserializer)?;
        if raw.count != raw.elements.len() {
            return Err(serde::de::Error::custom(format!(
                "count {} does not match {} elements",
                raw.count,
                raw.elements.len()
            )));
        }
        Ok(BasisSet::new(raw.kind, raw.digest, raw.elements))
    }
}
