//! Single invariants of a single group, for the `compute` command.

use forge_core::canonical::{f_tilde, fitting, frattini, generalized_fitting, hypercenter, socle};
use forge_core::formations::{delta_f, f_hypercenter, f_residual, int_f, Formation};
use forge_core::kernel::{center, subgroup_closure};
use forge_core::schmidt::{n_critical_graph, schmidt_signature};
use forge_core::subnormality::{c_f, s_f, weak_k_f_subnormalizers, SubnormalityEngine};
use forge_core::{FiniteGroup, Permutation, Subgroup};
use serde_json::{json, Value};

use crate::report::subgroup_json;

pub const INVARIANTS: [&str; 17] = [
    "center",
    "hypercenter",
    "frattini",
    "fitting",
    "socle",
    "fstar",
    "ftilde",
    "zf",
    "intf",
    "deltaf",
    "sf",
    "cf",
    "residual",
    "ncgraph",
    "schmidt",
    "ksn",
    "weaksub",
];

#[derive(Debug, thiserror::Error)]
pub enum ComputeError {
    #[error("unknown invariant `{0}`")]
    UnknownInvariant(String),
    #[error("invalid subgroup argument: {0}")]
    BadArgument(String),
    #[error(transparent)]
    Group(#[from] forge_core::Error),
}

/// Parses a subgroup given by generators: a JSON list of element indices or
/// of image lists on the group's points.
pub fn parse_subgroup(g: &FiniteGroup, text: &str) -> Result<Subgroup, ComputeError> {
    let bad = |m: String| ComputeError::BadArgument(m);
    let value: Value = serde_json::from_str(text).map_err(|e| bad(e.to_string()))?;
    let items = value.as_array().ok_or_else(|| bad("expected a JSON list".into()))?;
    let mut gens = Vec::with_capacity(items.len());
    for item in items {
        let x = match item {
            Value::Number(n) => n
                .as_u64()
                .map(|n| n as usize)
                .filter(|&n| n < g.order())
                .ok_or_else(|| bad(format!("{n} is not an element index")))?,
            Value::Array(_) => {
                let images: Vec<u32> = serde_json::from_value(item.clone()).map_err(|e| bad(e.to_string()))?;
                let p = Permutation::new(images).map_err(|e| bad(e.to_string()))?;
                g.find_permutation(&p)
                    .ok_or_else(|| bad(format!("{:?} is not in the group", p.images())))?
            }
            other => return Err(bad(format!("unexpected {other}"))),
        };
        gens.push(x);
    }
    Ok(subgroup_closure(g, &gens))
}

pub fn compute(invariant: &str, g: &FiniteGroup, f: &Formation, arg: Option<&str>) -> Result<Value, ComputeError> {
    let needs_arg = || {
        arg.ok_or_else(|| ComputeError::BadArgument(format!("`{invariant}` needs --arg")))
            .and_then(|a| parse_subgroup(g, a))
    };
    let value = match invariant {
        "center" => center(g),
        "hypercenter" => hypercenter(g),
        "frattini" => frattini(g)?,
        "fitting" => fitting(g),
        "socle" => socle(g),
        "fstar" => generalized_fitting(g)?,
        "ftilde" => f_tilde(g)?,
        "zf" => f_hypercenter(g, f)?,
        "intf" => int_f(g, f)?,
        "deltaf" => delta_f(g, f)?,
        "sf" => s_f(g, f)?,
        "cf" => c_f(g, f)?,
        "residual" => f_residual(g, f)?,
        "ncgraph" => {
            let graph = n_critical_graph(g)?;
            return Ok(json!({
                "edges": graph.edges(),
                "adjacency": graph.adjacency(),
                "display": graph.to_string(),
            }));
        }
        "schmidt" => {
            let sig = schmidt_signature(g)?;
            return Ok(json!({"schmidt": sig.is_some(), "signature": sig}));
        }
        "ksn" => {
            let h = needs_arg()?;
            let engine = SubnormalityEngine::new(g, f)?;
            let top = engine.lattice().top();
            let chain = engine.chain(engine.index(&h)?, top);
            return Ok(json!({
                "subgroup": subgroup_json(g, &h),
                "subnormal": chain.is_some(),
                "chain": chain.map(|c| c.links.iter().map(Subgroup::order).collect::<Vec<_>>()),
            }));
        }
        "weaksub" => {
            let h = needs_arg()?;
            let set = weak_k_f_subnormalizers(g, &h, f)?;
            let maximals: Vec<Value> = set.maximals.iter().map(|m| subgroup_json(g, m)).collect();
            return Ok(json!({"subgroup": subgroup_json(g, &h), "weak_subnormalizers": maximals}));
        }
        other => return Err(ComputeError::UnknownInvariant(other.to_string())),
    };
    Ok(subgroup_json(g, &value))
}
