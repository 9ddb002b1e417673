//! Embedded requirement lists, interaction tables and reference partitions.
//!
//! Interaction tables are kept exactly as transcribed, one-way entries
//! included, so that auditing them stays possible.

use std::collections::BTreeMap;

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::graph::{parse_interactions, symmetrize, AsymmetryReport, Graph, RawInteractionTable, SymmetryRule};
use crate::partition::Partition;

const IV_TABLE: &str = include_str!("../data/indian_village.txt");
const IV_REQUIREMENTS: &str = include_str!("../data/indian_village_requirements.txt");
const CP_TABLE: &str = include_str!("../data/community_privacy.txt");
const CP_REQUIREMENTS: &str = include_str!("../data/community_privacy_requirements.txt");
const REFERENCE: &str = include_str!("../data/reference_partitions.json");

pub const DATASET_NAMES: [&str; 2] = ["indian-village", "community-privacy"];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Requirement {
    pub id: usize,
    pub text: String,
    pub group: Option<String>,
}

#[derive(Debug, Clone)]
pub struct DatasetBundle {
    pub name: &'static str,
    pub requirements: Vec<Requirement>,
    /// Group headings in order of first appearance; empty when ungrouped.
    pub groups: Vec<String>,
    pub raw: RawInteractionTable,
    pub provenance: &'static str,
}

impl DatasetBundle {
    /// Symmetric graph under the both-directions rule, labeled with the
    /// requirement texts.
    pub fn graph(&self) -> Graph {
        self.graph_with(SymmetryRule::Both).0
    }

    pub fn graph_with(&self, rule: SymmetryRule) -> (Graph, AsymmetryReport) {
        let (g, report) = symmetrize(&self.raw, rule);
        let labels = self.requirements.iter().map(|r| r.text.clone()).collect();
        (g.with_labels(labels).expect("one text per requirement"), report)
    }
}

pub fn load_dataset(name: &str) -> Result<DatasetBundle> {
    let (name, table, reqs, provenance) = match name {
        "indian-village" => (
            DATASET_NAMES[0],
            IV_TABLE,
            IV_REQUIREMENTS,
            "Indian Village: 141 requirements for a village in India, 13 groups, interaction table as printed",
        ),
        "community-privacy" => (
            DATASET_NAMES[1],
            CP_TABLE,
            CP_REQUIREMENTS,
            "Community and Privacy: 33 requirements for an urban house cluster, interaction table as printed",
        ),
        other => {
            return Err(Error::Unknown { kind: "dataset", name: other.to_string() });
        }
    };
    let requirements = parse_requirements(reqs)?;
    let raw = parse_interactions(table, Some(requirements.len()))?;
    let mut groups: Vec<String> = Vec::new();
    for g in requirements.iter().filter_map(|r| r.group.as_ref()) {
        if groups.last() != Some(g) {
            groups.push(g.clone());
        }
    }
    Ok(DatasetBundle { name, requirements, groups, raw, provenance })
}

/// `[Heading]` lines open a group; `<n>. <text>` lines are requirements
/// and must be numbered 1, 2, 3, ...
fn parse_requirements(text: &str) -> Result<Vec<Requirement>> {
    let mut out = Vec::new();
    let mut group = None;
    for (k, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if let Some(h) = line.strip_prefix('[').and_then(|l| l.strip_suffix(']')) {
            group = Some(h.to_string());
            continue;
        }
        let malformed = || Error::Malformed { line: k + 1, reason: "expected `<n>. <text>`".into() };
        let (num, rest) = line.split_once(". ").ok_or_else(malformed)?;
        let id: usize = num.parse().map_err(|_| malformed())?;
        if id != out.len() + 1 {
            return Err(Error::Malformed { line: k + 1, reason: format!("expected requirement {}", out.len() + 1) });
        }
        out.push(Requirement { id, text: rest.to_string(), group: group.clone() });
    }
    Ok(out)
}

/// A partition of the 141 Indian Village requirements, by 1-based id.
#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
pub struct NamedPartition {
    pub labels: Vec<String>,
    pub sets: Vec<Vec<usize>>,
}

impl NamedPartition {
    pub fn resolve(&self, g: &Graph) -> Result<Partition> {
        Partition::from_ids(g, &self.sets)
    }

    pub fn set(&self, label: &str) -> Option<&[usize]> {
        self.labels.iter().position(|l| l == label).map(|i| self.sets[i].as_slice())
    }
}

#[derive(Debug, Clone)]
pub struct ReferencePartitions {
    named: BTreeMap<String, NamedPartition>,
}

pub const REFERENCE_IDS: [&str; 6] = ["ca-pi1", "ca-pi2", "ca-pi4", "rpg1-pi4", "rpg2-pi4", "newman-4"];

impl ReferencePartitions {
    pub fn get(&self, id: &str) -> Result<&NamedPartition> {
        self.named.get(id).ok_or_else(|| Error::Unknown { kind: "partition", name: id.to_string() })
    }

    pub fn ids(&self) -> impl Iterator<Item = &str> {
        self.named.keys().map(String::as_str)
    }

    /// One of the sets A, B, C, D or A1 ... D3 of the reference
    /// decomposition.
    pub fn ca_set(&self, label: &str) -> Result<&[usize]> {
        let from = if label.len() == 1 { "ca-pi2" } else { "ca-pi4" };
        self.named[from].set(label).ok_or_else(|| Error::Unknown { kind: "reference set", name: label.to_string() })
    }
}

/// All named partitions, each checked to cover exactly 1..=141.
pub fn reference_partitions() -> ReferencePartitions {
    let mut named: BTreeMap<String, NamedPartition> =
        serde_json::from_str(REFERENCE).expect("embedded reference partitions are valid JSON");
    let letters = named.remove("ca-letters").expect("letter sets present");
    let union = |i: usize, j: usize| {
        let mut s = [letters.sets[i].clone(), letters.sets[j].clone()].concat();
        s.sort_unstable();
        s
    };
    named.insert(
        "ca-pi1".into(),
        NamedPartition { labels: vec!["A∪C".into(), "B∪D".into()], sets: vec![union(0, 2), union(1, 3)] },
    );
    named.insert("ca-pi2".into(), letters);
    for (id, p) in &named {
        let mut all: Vec<usize> = p.sets.iter().flatten().copied().collect();
        all.sort_unstable();
        assert!(all == (1..=141).collect::<Vec<_>>(), "reference partition {id} does not cover 1..=141");
        assert_eq!(p.labels.len(), p.sets.len(), "labels of {id}");
    }
    ReferencePartitions { named }
}
