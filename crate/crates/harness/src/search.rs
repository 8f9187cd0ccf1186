//! Exploratory search for groups where the subnormalizer intersections and
//! the 𝔉-hypercenter part ways. Never fails.

use forge_core::formations::{f_hypercenter, wbar_member, Formation};
use forge_core::subnormality::{c_f_with, s_f_with, SubnormalityEngine};
use forge_core::{Error, Execution, FiniteGroup};
use serde_json::{json, Value};

use crate::corpus::Corpus;
use crate::report::{members, Record, Report, Verdict};

fn probe(g: &FiniteGroup, f: &Formation) -> forge_core::Result<Value> {
    let engine = SubnormalityEngine::new(g, f)?;
    let s = s_f_with(&engine)?;
    let c = c_f_with(&engine)?;
    let z = f_hypercenter(g, f)?;
    let member = f.member(g)?;
    let wbar = wbar_member(g, f)?;
    Ok(json!({
        "s_f": members(&s),
        "c_f": members(&c),
        "z_f": members(&z),
        "member": member,
        "wbar_member": wbar,
        "discrepancy": s != c || c != z || wbar != member,
    }))
}

pub fn search(f: &Formation, corpus: &Corpus, exec: Execution) -> Report {
    let groups = corpus.groups();
    let records = exec.map(&groups, |g| {
        let (verdict, witness) = match probe(g, f) {
            Ok(w) => (Verdict::Info, w),
            Err(e @ (Error::LatticeBound { .. } | Error::OrderBound { .. })) => {
                (Verdict::Skip, json!({"reason": e.to_string()}))
            }
            Err(e) => (Verdict::Info, json!({"error": e.to_string()})),
        };
        Record {
            check: "search".into(),
            formation: Some(f.name()),
            sigma: f.sigma().map(ToString::to_string),
            group: g.label().to_string(),
            verdict,
            witness,
        }
    });
    Report::new(records)
}

/// Labels of the groups flagged by a search.
pub fn discrepancies(report: &Report) -> Vec<&str> {
    report
        .records
        .iter()
        .filter(|r| r.witness["discrepancy"] == true)
        .map(|r| r.group.as_str())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spec::GroupSpec;

    fn corpus(names: &[&str]) -> Corpus {
        Corpus::from_specs(names.iter().map(|n| GroupSpec::Named(n.to_string())).collect()).unwrap()
    }

    #[test]
    fn sigma_nilpotent_has_no_discrepancies() {
        let c = corpus(&["S3", "S4", "A4", "D10"]);
        let report = search(&Formation::nilpotent(), &c, Execution::Sequential);
        assert!(discrepancies(&report).is_empty());
        assert!(report.passed());
    }

    #[test]
    fn supersoluble_on_s3_agrees() {
        let report = search(&Formation::supersoluble(), &corpus(&["S3"]), Execution::Sequential);
        assert!(discrepancies(&report).is_empty());
    }

    #[test]
    fn abelian_reports_candidates() {
        let report = search(&Formation::abelian(), &corpus(&["S3"]), Execution::Sequential);
        assert_eq!(report.records[0].verdict, Verdict::Info);
        assert!(report.records[0].witness.get("s_f").is_some());
    }
}
