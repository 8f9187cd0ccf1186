//! Machine-readable verification reports.

use std::collections::BTreeMap;

use forge_core::{FiniteGroup, Subgroup};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    /// The group is beyond a configured bound, or the check does not apply.
    Skip,
    /// Exploratory output that never fails a run.
    Info,
}

/// One row of a report: `{check, formation, sigma, group, verdict, witness}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Record {
    pub check: String,
    pub formation: Option<String>,
    pub sigma: Option<String>,
    pub group: String,
    pub verdict: Verdict,
    pub witness: Value,
}

impl Record {
    fn sort_key(&self) -> (&str, Option<&str>, Option<&str>, &str) {
        (
            &self.check,
            self.formation.as_deref(),
            self.sigma.as_deref(),
            &self.group,
        )
    }

    /// Number of sampled instances behind a lemma-suite row.
    pub fn instances(&self) -> u64 {
        self.witness.get("instances").and_then(Value::as_u64).unwrap_or(0)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub records: Vec<Record>,
}

impl Report {
    pub fn new(mut records: Vec<Record>) -> Report {
        records.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));
        Report { records }
    }

    pub fn extend(&mut self, other: Report) {
        self.records.extend(other.records);
        self.records.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));
    }

    pub fn failures(&self) -> impl Iterator<Item = &Record> {
        self.records.iter().filter(|r| r.verdict == Verdict::Fail)
    }

    pub fn passed(&self) -> bool {
        self.failures().next().is_none()
    }

    pub fn count(&self, verdict: Verdict) -> usize {
        self.records.iter().filter(|r| r.verdict == verdict).count()
    }

    /// Sampled instances per check.
    pub fn instances_by_check(&self) -> BTreeMap<String, u64> {
        let mut out = BTreeMap::new();
        for r in &self.records {
            *out.entry(r.check.clone()).or_insert(0) += r.instances();
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.records).expect("reports serialize")
    }
}

/// A subgroup as element indices, order and the `(order, abelian, exponent)`
/// fingerprint of the subgroup viewed as a group.
pub fn subgroup_json(g: &FiniteGroup, h: &Subgroup) -> Value {
    let (local, _) = forge_core::kernel::induced_group(g, h);
    let (order, abelian, exponent) = local.fingerprint();
    json!({
        "elements": h.to_vec(),
        "order": h.order(),
        "fingerprint": {"order": order, "abelian": abelian, "exponent": exponent},
    })
}

/// Compact form used inside witnesses.
pub fn members(h: &Subgroup) -> Value {
    json!(h.to_vec())
}
