//! The curated corpus of groups the checks run over.

use std::path::Path;

use forge_core::FiniteGroup;

use crate::spec::{GroupSpec, SpecError, SpecResult};

/// The shipped corpus, compiled into the binary.
pub const DEFAULT_CORPUS: &str = include_str!("../../../corpus/corpus.json");

#[derive(Debug, Clone)]
pub struct CorpusEntry {
    pub spec: GroupSpec,
    pub group: FiniteGroup,
}

impl CorpusEntry {
    pub fn label(&self) -> &str {
        self.group.label()
    }
}

/// Groups ordered by label.
#[derive(Debug, Clone, Default)]
pub struct Corpus {
    entries: Vec<CorpusEntry>,
}

impl Corpus {
    pub fn from_specs(specs: Vec<GroupSpec>) -> SpecResult<Corpus> {
        let mut entries = Vec::with_capacity(specs.len());
        for spec in specs {
            let group = spec.build()?.with_label(spec.label());
            entries.push(CorpusEntry { spec, group });
        }
        entries.sort_by(|a, b| a.label().cmp(b.label()));
        if let Some(w) = entries.windows(2).find(|w| w[0].label() == w[1].label()) {
            return Err(SpecError::Malformed(format!(
                "duplicate corpus label `{}`",
                w[0].label()
            )));
        }
        Ok(Corpus { entries })
    }

    pub fn parse(json: &str) -> SpecResult<Corpus> {
        let specs: Vec<GroupSpec> = serde_json::from_str(json).map_err(|e| SpecError::Malformed(e.to_string()))?;
        Corpus::from_specs(specs)
    }

    pub fn load(path: &Path) -> SpecResult<Corpus> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| SpecError::Malformed(format!("cannot read {}: {e}", path.display())))?;
        Corpus::parse(&text)
    }

    pub fn shipped() -> Corpus {
        Corpus::parse(DEFAULT_CORPUS).expect("the shipped corpus parses")
    }

    pub fn entries(&self) -> &[CorpusEntry] {
        &self.entries
    }

    pub fn groups(&self) -> Vec<FiniteGroup> {
        self.entries.iter().map(|e| e.group.clone()).collect()
    }

    pub fn get(&self, label: &str) -> Option<&FiniteGroup> {
        self.entries.iter().find(|e| e.label() == label).map(|e| &e.group)
    }

    /// Keeps the entries whose label is listed.
    pub fn filter(&self, labels: &[String]) -> Corpus {
        Corpus {
            entries: self
                .entries
                .iter()
                .filter(|e| labels.iter().any(|l| l == e.label()))
                .cloned()
                .collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}
