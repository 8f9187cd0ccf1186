//! The check registry. Every check runs per corpus group and yields one
//! [`Record`]; lemma suites count their sampled instances in the witness.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::OnceLock;

use forge_core::canonical::{
    center, f_tilde, fitting, fitting_by_sylow_cores, frattini, frattini_by_non_generators, generalized_fitting,
    generalized_fitting_by_chief_factors, hypercenter, intersect_all, is_nilpotent, is_soluble, is_supersoluble,
    is_supersoluble_by_prime_index, join_all, socle,
};
use forge_core::formations::{delta_f, f_hypercenter, int_f, wbar_member, Formation, SigmaPartition};
use forge_core::kernel::{centralizer, induced_group, is_normal, join, normalizer, quotient_group};
use forge_core::lattice::{brute_force_subgroups, cyclic_primary_subgroups, normal_subgroups};
use forge_core::schmidt::{corpus_graph, n_critical_graph, sigma_decomposition_check, NCriticalGraph};
use forge_core::subnormality::{
    all_sylow_subgroups, c_f_with, is_conjugate_permutable, is_subnormal_classical, largest_subnormalizing_normal,
    s_f_with, SubnormalChain, SubnormalityEngine,
};
use forge_core::{arith, Error, Execution, FiniteGroup, Subgroup};
use serde_json::{json, Value};

use crate::corpus::Corpus;
use crate::report::{members, Record, Report, Verdict};

/// Cap on sampled factorizations per group.
pub const FACTORIZATION_CAP: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CheckId {
    Kernel,
    Canonical,
    Classical,
    Graph,
    T10_1,
    T10_2Neg,
    T11,
    Tgb,
    Tnew,
    Hall,
    Kramer,
    P1,
    P2,
    L31,
    L32,
    LemN,
    Lattice,
    L5,
    L51,
    Delt,
    Pr0,
    Forster,
    Sigma54,
}

const IDS: [(CheckId, &str); 23] = [
    (CheckId::Kernel, "Kernel"),
    (CheckId::Canonical, "Canonical"),
    (CheckId::Classical, "Classical"),
    (CheckId::Graph, "Graph"),
    (CheckId::T10_1, "T1.0-1"),
    (CheckId::T10_2Neg, "T1.0-2-neg"),
    (CheckId::T11, "T1.1"),
    (CheckId::Tgb, "Tgb"),
    (CheckId::Tnew, "Tnew"),
    (CheckId::Hall, "Hall"),
    (CheckId::Kramer, "Kramer"),
    (CheckId::P1, "P1"),
    (CheckId::P2, "P2"),
    (CheckId::L31, "L3.1"),
    (CheckId::L32, "L3.2"),
    (CheckId::LemN, "LemN"),
    (CheckId::Lattice, "Lattice"),
    (CheckId::L5, "L5"),
    (CheckId::L51, "L5.1"),
    (CheckId::Delt, "Delt"),
    (CheckId::Pr0, "Pr0"),
    (CheckId::Forster, "Forster"),
    (CheckId::Sigma54, "Sigma54"),
];

/// Which formations a check accepts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Needs {
    Nothing,
    /// σ-nilpotent formations only.
    Sigma,
    /// Saturated formations containing the nilpotent groups.
    SaturatedNilpotent,
    Saturated,
    Hereditary,
}

impl CheckId {
    pub fn all() -> impl Iterator<Item = CheckId> {
        IDS.iter().map(|&(id, _)| id)
    }

    pub fn id(self) -> &'static str {
        IDS.iter().find(|(c, _)| *c == self).map(|(_, s)| *s).unwrap()
    }

    pub fn parse(text: &str) -> Option<CheckId> {
        IDS.iter()
            .find(|(_, s)| s.eq_ignore_ascii_case(text.trim()))
            .map(|&(c, _)| c)
    }

    /// Exploratory checks report but never fail a run.
    pub fn is_hard(self) -> bool {
        self != CheckId::T10_2Neg
    }

    fn needs(self) -> Needs {
        use CheckId::*;
        match self {
            Kernel | Canonical | Classical | Graph | Hall | Kramer | Forster | Sigma54 => Needs::Nothing,
            T11 | Tgb | Tnew | Lattice => Needs::Sigma,
            T10_1 | T10_2Neg => Needs::SaturatedNilpotent,
            L51 | Delt | Pr0 => Needs::Saturated,
            P1 | P2 | L31 | L32 | LemN | L5 => Needs::Hereditary,
        }
    }

    /// The formations a full run uses.
    pub fn default_formations(self) -> Vec<Formation> {
        use CheckId::*;
        let n = Formation::nilpotent;
        let u = Formation::supersoluble;
        let s = Formation::soluble;
        match self {
            Kernel | Canonical | Classical | Graph | Hall | Kramer | Forster | Sigma54 => vec![],
            T11 | Tgb | Tnew | Lattice => standard_sigmas().into_iter().map(Formation::sigma_nilpotent).collect(),
            T10_1 | T10_2Neg => vec![n(), u(), s()],
            P1 | P2 => vec![n(), u(), sigma_formation("2,3")],
            L31 | L32 | LemN | L5 => {
                let mut out = vec![Formation::all(), n(), s(), u(), Formation::abelian()];
                out.extend(["2,3", "2,5/3"].map(sigma_formation));
                out
            }
            L51 | Delt | Pr0 => {
                let mut out = vec![Formation::all(), n(), s(), u()];
                out.extend(["2,3", "2,5/3"].map(sigma_formation));
                out
            }
        }
    }

    /// Rejects a formation the check's statement does not cover.
    pub fn accepts(self, f: &Formation) -> Result<(), String> {
        let ok = match self.needs() {
            Needs::Nothing => true,
            Needs::Sigma => f.sigma().is_some() || *f == Formation::nilpotent(),
            Needs::SaturatedNilpotent => f.saturated() && f.contains_nilpotent(),
            Needs::Saturated => f.saturated(),
            Needs::Hereditary => f.hereditary(),
        };
        if ok {
            Ok(())
        } else {
            Err(format!("check {} does not apply to formation {}", self.id(), f.name()))
        }
    }

    fn takes_formation(self) -> bool {
        self.needs() != Needs::Nothing
    }
}

impl fmt::Display for CheckId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

pub fn standard_sigmas() -> Vec<SigmaPartition> {
    ["", "2,3", "2,5/3"]
        .iter()
        .map(|s| SigmaPartition::parse(s).expect("standard partitions parse"))
        .collect()
}

fn sigma_formation(text: &str) -> Formation {
    Formation::sigma_nilpotent(SigmaPartition::parse(text).expect("standard partitions parse"))
}

/// A group together with lazily built views shared by all checks.
pub struct GroupContext {
    pub group: FiniteGroup,
    locals: OnceLock<forge_core::Result<Vec<Local>>>,
}

/// A subgroup as a group in its own right.
pub struct Local {
    pub group: FiniteGroup,
    /// Parent index of each local element.
    pub embed: Vec<usize>,
    /// Local index of each parent element, `usize::MAX` outside.
    pub index: Vec<usize>,
}

impl Local {
    fn new(g: &FiniteGroup, h: &Subgroup) -> Local {
        let (group, embed) = induced_group(g, h);
        let mut index = vec![usize::MAX; g.order()];
        for (i, &x) in embed.iter().enumerate() {
            index[x] = i;
        }
        Local { group, embed, index }
    }

    fn to_parent(&self, g: &FiniteGroup, s: &Subgroup) -> Subgroup {
        Subgroup::from_elements(g, s.elements().map(|x| self.embed[x])).expect("images of subgroups are subgroups")
    }

    fn to_local(&self, s: &Subgroup) -> Subgroup {
        Subgroup::from_elements(&self.group, s.elements().map(|x| self.index[x]))
            .expect("subgroups of the parent inside the local group")
    }
}

impl GroupContext {
    pub fn new(group: FiniteGroup) -> Self {
        GroupContext {
            group,
            locals: OnceLock::new(),
        }
    }

    /// Every subgroup of the group as a group, in lattice order.
    pub fn locals(&self) -> forge_core::Result<&[Local]> {
        self.locals
            .get_or_init(|| {
                let lat = self.group.lattice()?;
                Ok(lat.subgroups().iter().map(|h| Local::new(&self.group, h)).collect())
            })
            .as_deref()
            .map_err(Clone::clone)
    }
}

/// Data computed once per run from the whole corpus.
#[derive(Debug, Clone, Default)]
pub struct Shared {
    /// Components of the corpus N-critical graph, as a σ.
    pub corpus_sigma: Option<SigmaPartition>,
}

struct Outcome {
    verdict: Verdict,
    witness: Value,
}

fn outcome(ok: bool, witness: Value) -> forge_core::Result<Outcome> {
    Ok(Outcome {
        verdict: if ok { Verdict::Pass } else { Verdict::Fail },
        witness,
    })
}

fn skip(reason: impl Into<String>) -> forge_core::Result<Outcome> {
    Ok(Outcome {
        verdict: Verdict::Skip,
        witness: json!({"reason": reason.into()}),
    })
}

fn settle(result: forge_core::Result<Outcome>) -> Outcome {
    match result {
        Ok(o) => o,
        Err(e @ (Error::LatticeBound { .. } | Error::OrderBound { .. })) => Outcome {
            verdict: Verdict::Skip,
            witness: json!({"reason": e.to_string()}),
        },
        Err(e) => Outcome {
            verdict: Verdict::Fail,
            witness: json!({"error": e.to_string()}),
        },
    }
}

/// Violations of a lemma suite; only the first few are kept as witnesses.
#[derive(Default)]
struct Tally {
    instances: u64,
    violations: u64,
    examples: Vec<Value>,
}

impl Tally {
    fn check(&mut self, holds: bool, witness: impl FnOnce() -> Value) {
        self.instances += 1;
        if !holds {
            self.violations += 1;
            if self.examples.len() < 3 {
                self.examples.push(witness());
            }
        }
    }

    fn finish(self, mut extra: Value) -> forge_core::Result<Outcome> {
        extra["instances"] = json!(self.instances);
        if self.violations > 0 {
            extra["violations"] = json!(self.violations);
            extra["examples"] = json!(self.examples);
        }
        outcome(self.violations == 0, extra)
    }
}

/// Inputs a caller got wrong; the CLI maps these to exit code 2.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{0}")]
pub struct InputError(pub String);

/// Runs the checks over the corpus. `formation` replaces the defaults of
/// checks that take one and is rejected by checks it does not fit.
pub fn run(
    ids: &[CheckId],
    formation: Option<&Formation>,
    corpus: &Corpus,
    exec: Execution,
) -> Result<Report, InputError> {
    let mut jobs: Vec<(CheckId, Option<Formation>)> = Vec::new();
    for &id in ids {
        if !id.takes_formation() {
            jobs.push((id, None));
            continue;
        }
        match formation {
            Some(f) => {
                if let Err(e) = id.accepts(f) {
                    if ids.len() == 1 {
                        return Err(InputError(e));
                    }
                    continue;
                }
                jobs.push((id, Some(f.clone())));
            }
            None => jobs.extend(id.default_formations().into_iter().map(|f| (id, Some(f)))),
        }
    }
    let contexts: Vec<GroupContext> = corpus.groups().into_iter().map(GroupContext::new).collect();
    let shared = Shared {
        corpus_sigma: if ids.contains(&CheckId::Sigma54) {
            corpus_graph(&corpus.groups(), exec).ok().map(|g| component_sigma(&g))
        } else {
            None
        },
    };
    // Bigger groups first so the pool stays busy; the report is sorted anyway.
    let mut tasks: Vec<(usize, usize)> = (0..jobs.len())
        .flat_map(|j| (0..contexts.len()).map(move |c| (j, c)))
        .collect();
    tasks.sort_by_key(|&(j, c)| (std::cmp::Reverse(contexts[c].group.order()), j, c));
    let records = exec.map(&tasks, |&(j, c)| {
        let (id, f) = &jobs[j];
        run_one(*id, f.as_ref(), &contexts[c], &shared)
    });
    Ok(Report::new(records))
}

/// Runs one check on one group.
pub fn run_one(id: CheckId, f: Option<&Formation>, ctx: &GroupContext, shared: &Shared) -> Record {
    let result = match (id, f) {
        (CheckId::Kernel, _) => kernel(ctx),
        (CheckId::Canonical, _) => canonical(ctx),
        (CheckId::Classical, _) => classical(ctx),
        (CheckId::Graph, _) => graph(ctx),
        (CheckId::Hall, _) => hall(ctx),
        (CheckId::Kramer, _) => kramer(ctx),
        (CheckId::Forster, _) => forster(ctx),
        (CheckId::Sigma54, _) => sigma54(ctx, shared),
        (_, None) => Err(Error::Inconsistent(format!("check {id} needs a formation"))),
        (CheckId::T10_1, Some(f)) => maximal_criterion(ctx, f, true),
        (CheckId::T10_2Neg, Some(f)) => maximal_criterion(ctx, f, false),
        (CheckId::T11, Some(f)) => sylow_criterion(ctx, f),
        (CheckId::Tgb, Some(f)) => subnormalizer_intersections(ctx, f),
        (CheckId::Tnew, Some(f)) => factorizations(ctx, f),
        (CheckId::P1, Some(f)) => largest_normal(ctx, f),
        (CheckId::P2, Some(f)) => derived_classes(ctx, f),
        (CheckId::L31, Some(f)) => transitivity(ctx, f),
        (CheckId::L32, Some(f)) => intersections(ctx, f),
        (CheckId::LemN, Some(f)) => normal_products(ctx, f),
        (CheckId::Lattice, Some(f)) => lattice_property(ctx, f),
        (CheckId::L5, Some(f)) => hypercenter_in_subgroups(ctx, f),
        (CheckId::L51, Some(f)) => hypercenter_products(ctx, f),
        (CheckId::Delt, Some(f)) => delta_identity(ctx, f),
        (CheckId::Pr0, Some(f)) => fstar_criterion(ctx, f),
    };
    let mut o = settle(result);
    if !id.is_hard() && o.verdict != Verdict::Skip {
        o.verdict = Verdict::Info;
    }
    Record {
        check: id.id().to_string(),
        formation: f.map(Formation::name),
        sigma: f.and_then(Formation::sigma).map(ToString::to_string),
        group: ctx.group.label().to_string(),
        verdict: o.verdict,
        witness: o.witness,
    }
}

type CheckResult = forge_core::Result<Outcome>;

fn sorted_members(subs: &[Subgroup]) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = subs.iter().map(Subgroup::to_vec).collect();
    out.sort();
    out
}

fn kernel(ctx: &GroupContext) -> CheckResult {
    let g = &ctx.group;
    g.validate()?;
    let lat = g.lattice()?;
    let mut witness = json!({"order": g.order(), "subgroups": lat.len()});
    if g.order() <= 48 {
        let ours = sorted_members(lat.subgroups());
        let brute = sorted_members(&brute_force_subgroups(g));
        witness["brute_force"] = json!(brute.len());
        if ours != brute {
            return outcome(false, witness);
        }
    }
    outcome(true, witness)
}

/// Socle by scanning the lattice for normal subgroups.
pub fn socle_by_scan(g: &FiniteGroup) -> forge_core::Result<Subgroup> {
    let normals: Vec<Subgroup> = g.lattice()?.normal_subgroups();
    let minimal: Vec<&Subgroup> = normals
        .iter()
        .filter(|n| !n.is_trivial())
        .filter(|n| {
            !normals
                .iter()
                .any(|m| !m.is_trivial() && m != *n && m.is_subgroup_of(n))
        })
        .collect();
    Ok(join_all(g, minimal))
}

fn canonical(ctx: &GroupContext) -> CheckResult {
    let g = &ctx.group;
    let whole = Subgroup::whole(g);
    let f = fitting(g);
    let fstar = generalized_fitting(g)?;
    let ftilde = f_tilde(g)?;
    let phi = frattini(g)?;
    let soc = socle(g);
    let z = hypercenter(g);
    let mut bad = Vec::new();
    let mut expect = |holds: bool, what: &str| {
        if !holds {
            bad.push(what.to_string());
        }
    };
    expect(f == fitting_by_sylow_cores(g), "fitting routes differ");
    expect(
        fstar == generalized_fitting_by_chief_factors(g)?,
        "generalized Fitting routes differ",
    );
    expect(phi == frattini_by_non_generators(g)?, "Frattini routes differ");
    expect(soc == socle_by_scan(g)?, "socle routes differ");
    expect(
        f.is_subgroup_of(&fstar) && fstar.is_subgroup_of(&ftilde),
        "F <= F* <= F~ fails",
    );
    expect(phi.is_subgroup_of(&ftilde), "Phi not in F~");
    expect(centralizer(g, &fstar).is_subgroup_of(&fstar), "C(F*) not in F*");
    expect(centralizer(g, &ftilde).is_subgroup_of(&ftilde), "C(F~) not in F~");
    expect((z == whole) == is_nilpotent(g), "hypercenter vs nilpotency");
    if is_soluble(g) {
        expect(
            f == fstar && fstar == ftilde,
            "soluble group with F, F*, F~ not all equal",
        );
        expect(
            centralizer(g, &f).is_subgroup_of(&f),
            "soluble group with C(F) not in F",
        );
        expect(
            is_supersoluble(g) == is_supersoluble_by_prime_index(g)?,
            "supersolubility routes differ",
        );
    }
    outcome(
        bad.is_empty(),
        json!({
            "center": center(g).order(),
            "hypercenter": z.order(),
            "fitting": f.order(),
            "fstar": fstar.order(),
            "ftilde": ftilde.order(),
            "frattini": phi.order(),
            "socle": soc.order(),
            "violations": bad,
        }),
    )
}

fn classical(ctx: &GroupContext) -> CheckResult {
    let g = &ctx.group;
    let engine = SubnormalityEngine::new(g, &Formation::nilpotent())?;
    let lat = engine.lattice();
    let mut tally = Tally::default();
    for t in 0..lat.len() {
        for h in lat.below(t).ones() {
            let ours = engine.is_subnormal(h, t);
            let oracle = is_subnormal_classical(g, lat.get(h), lat.get(t));
            tally.check(
                ours == oracle,
                || json!({"h": members(lat.get(h)), "t": members(lat.get(t)), "k_n": ours, "classical": oracle}),
            );
        }
    }
    tally.finish(json!({}))
}

fn graph_json(graph: &NCriticalGraph) -> Value {
    json!({
        "vertices": graph.vertices(),
        "edges": graph.edges(),
    })
}

fn graph(ctx: &GroupContext) -> CheckResult {
    let g = &ctx.group;
    let graph = n_critical_graph(g)?;
    let primes: BTreeSet<usize> = g.primes().into_iter().collect();
    let ok = *graph.vertices() == primes
        && graph
            .edges()
            .iter()
            .all(|(p, q)| p != q && primes.contains(p) && primes.contains(q));
    outcome(ok, graph_json(&graph))
}

fn hall(ctx: &GroupContext) -> CheckResult {
    let g = &ctx.group;
    let normalizers: Vec<Subgroup> = all_sylow_subgroups(g)?.iter().map(|p| normalizer(g, p)).collect();
    let lhs = intersect_all(g, &normalizers);
    let rhs = hypercenter(g);
    outcome(
        lhs == rhs,
        json!({"normalizers": members(&lhs), "hypercenter": members(&rhs), "sylow_subgroups": normalizers.len()}),
    )
}

fn kramer(ctx: &GroupContext) -> CheckResult {
    let g = &ctx.group;
    if !is_soluble(g) {
        return skip("not soluble");
    }
    let lat = g.lattice()?;
    let fit = lat.index_of(&fitting(g)).expect("F(G) is in the lattice");
    let below_fit = lat.maximal_in(fit);
    let mut offending = None;
    for m in lat.maximal_in(lat.top()) {
        let meet = lat.meet(m, fit);
        if !(meet == fit || below_fit.contains(&meet)) {
            offending = Some(m);
            break;
        }
    }
    let condition = offending.is_none();
    let supersoluble = is_supersoluble(g);
    let mut witness = json!({"supersoluble": supersoluble, "condition": condition});
    if let Some(m) = offending {
        witness["maximal"] = members(lat.get(m));
    }
    outcome(condition == supersoluble, witness)
}

fn forster(ctx: &GroupContext) -> CheckResult {
    let g = &ctx.group;
    let phi = frattini_by_non_generators(g)?;
    let q = quotient_group(g, &phi)?;
    let lhs = q.preimage(&generalized_fitting_by_chief_factors(q.target())?);
    let by_socle = q.preimage(&socle_by_scan(q.target())?);
    let rhs = f_tilde(g)?;
    outcome(
        lhs == rhs && by_socle == rhs,
        json!({"pullback": members(&lhs), "ftilde": members(&rhs), "frattini": phi.order()}),
    )
}

/// The connected components of the undirected shadow of a graph.
pub fn component_sigma(graph: &NCriticalGraph) -> SigmaPartition {
    let mut blocks: Vec<BTreeSet<usize>> = graph.vertices().iter().map(|&p| BTreeSet::from([p])).collect();
    for (p, q) in graph.edges() {
        let a = blocks
            .iter()
            .position(|b| b.contains(&p))
            .expect("edge endpoints are vertices");
        let b = blocks
            .iter()
            .position(|b| b.contains(&q))
            .expect("edge endpoints are vertices");
        if a != b {
            let moved = blocks.remove(a.max(b));
            blocks[a.min(b)].extend(moved);
        }
    }
    SigmaPartition::new(blocks.into_iter().map(|b| b.into_iter().collect()).collect())
        .expect("graph components are disjoint prime sets")
}

fn sigma54(ctx: &GroupContext, shared: &Shared) -> CheckResult {
    let g = &ctx.group;
    let graph = n_critical_graph(g)?;
    let mut sigmas = standard_sigmas();
    sigmas.push(component_sigma(&graph));
    sigmas.extend(shared.corpus_sigma.clone());
    let mut rows = Vec::new();
    let mut ok = true;
    for sigma in sigmas {
        let separating = graph
            .edges()
            .iter()
            .all(|&(p, q)| sigma.block_of(p) == sigma.block_of(q));
        let holds = sigma_decomposition_check(g, &sigma)?;
        ok &= holds;
        rows.push(json!({"sigma": sigma.to_string(), "separating": separating, "holds": holds}));
    }
    outcome(ok, json!({"graph": graph_json(&graph), "partitions": rows}))
}

/// `T1.0-1` with `F̃(G)` as the permuting subgroup, or the exploratory
/// `T1.0-2` variant with `F*(G)`.
fn maximal_criterion(ctx: &GroupContext, f: &Formation, tilde: bool) -> CheckResult {
    let g = &ctx.group;
    let r = if tilde { f_tilde(g)? } else { generalized_fitting(g)? };
    let engine = SubnormalityEngine::new(g, f)?;
    let lat = engine.lattice();
    let mut offending = None;
    for m in lat.maximal_in(lat.top()) {
        let t = lat
            .index_of(&join(g, lat.get(m), &r))
            .expect("joins are in the lattice");
        if !engine.is_subnormal(m, t) {
            offending = Some(m);
            break;
        }
    }
    let condition = offending.is_none();
    let member = f.member(g)?;
    let mut witness = json!({"condition": condition, "member": member});
    if let Some(m) = offending {
        witness["maximal"] = members(lat.get(m));
    }
    if tilde {
        outcome(condition == member, witness)
    } else {
        witness["boundary_witness"] = json!(condition && !member);
        outcome(true, witness)
    }
}

/// Lattice indices of `subs`, each K-𝔉-subnormal in its join with `r`.
fn all_r_subnormal(
    engine: &SubnormalityEngine<'_>,
    subs: &[Subgroup],
    r: &Subgroup,
) -> forge_core::Result<Option<Subgroup>> {
    let g = engine.group();
    for s in subs {
        let t = join(g, s, r);
        if !engine.is_subnormal(engine.index(s)?, engine.index(&t)?) {
            return Ok(Some(s.clone()));
        }
    }
    Ok(None)
}

fn sylow_criterion(ctx: &GroupContext, f: &Formation) -> CheckResult {
    let g = &ctx.group;
    let fstar = generalized_fitting(g)?;
    let engine = SubnormalityEngine::new(g, f)?;
    let sylow = all_r_subnormal(&engine, &all_sylow_subgroups(g)?, &fstar)?;
    let cyclic = all_r_subnormal(&engine, &cyclic_primary_subgroups(g), &fstar)?;
    let member = f.member(g)?;
    let mut witness = json!({"sylow": sylow.is_none(), "cyclic_primary": cyclic.is_none(), "member": member});
    if let Some(s) = sylow.or(cyclic) {
        witness["offending"] = members(&s);
    }
    outcome(
        witness["sylow"] == witness["member"] && witness["cyclic_primary"] == witness["member"],
        witness,
    )
}

fn subnormalizer_intersections(ctx: &GroupContext, f: &Formation) -> CheckResult {
    let g = &ctx.group;
    let engine = SubnormalityEngine::new(g, f)?;
    let s = s_f_with(&engine)?;
    let c = c_f_with(&engine)?;
    let z = f_hypercenter(g, f)?;
    outcome(
        s == c && c == z,
        json!({"s_f": members(&s), "c_f": members(&c), "z_f": members(&z)}),
    )
}

fn factorizations(ctx: &GroupContext, f: &Formation) -> CheckResult {
    let g = &ctx.group;
    let engine = SubnormalityEngine::new(g, f)?;
    let lat = engine.lattice();
    let k = lat.len();
    let fstar = generalized_fitting(g)?;
    let fs = lat.index_of(&fstar).expect("F*(G) is in the lattice");
    let sn: Vec<bool> = (0..k).map(|i| engine.is_subnormal(i, lat.join(g, i, fs))).collect();
    let cyclic: Vec<usize> = cyclic_primary_subgroups(g)
        .iter()
        .map(|c| lat.index_of(c).expect("cyclic subgroups are in the lattice"))
        .collect();
    let sylows_of = |a: usize| -> Vec<usize> {
        let order = lat.get(a).order();
        lat.below(a)
            .ones()
            .filter(|&s| {
                let o = lat.get(s).order();
                o > 1 && arith::prime_power_base(o).is_some_and(|p| arith::p_part(order, p) == o)
            })
            .collect()
    };
    let sylow_ok: Vec<bool> = (0..k).map(|a| sylows_of(a).into_iter().all(|s| sn[s])).collect();
    let cyclic_ok: Vec<bool> = (0..k)
        .map(|a| cyclic.iter().filter(|&&c| lat.contains(c, a)).all(|&c| sn[c]))
        .collect();
    let mut pairs = Vec::new();
    for a in 0..k {
        for b in a..k {
            let (oa, ob) = (lat.get(a).order(), lat.get(b).order());
            if oa * ob == g.order() * lat.get(lat.meet(a, b)).order() {
                pairs.push((a, b));
            }
        }
    }
    let total = pairs.len();
    if total > FACTORIZATION_CAP {
        pairs = (0..FACTORIZATION_CAP)
            .map(|i| pairs[i * total / FACTORIZATION_CAP])
            .collect();
    }
    let member = f.member(g)?;
    let nilpotent = is_nilpotent(g);
    let corollary = f.sigma().is_some_and(|s| s.blocks().is_empty());
    let mut tally = Tally::default();
    let (mut sylow_premises, mut cyclic_premises, mut permutable_premises) = (0, 0, 0);
    for &(a, b) in &pairs {
        let (sa, sb) = (lat.get(a), lat.get(b));
        let product_is_g = forge_core::kernel::product_set(g, sa, sb).count_ones(..) == g.order();
        tally.check(
            product_is_g,
            || json!({"a": members(sa), "b": members(sb), "failed": "AB != G"}),
        );
        if sylow_ok[a] && sylow_ok[b] {
            sylow_premises += 1;
            tally.check(
                member,
                || json!({"a": members(sa), "b": members(sb), "premise": "sylow"}),
            );
        }
        if cyclic_ok[a] && cyclic_ok[b] {
            cyclic_premises += 1;
            tally.check(
                member,
                || json!({"a": members(sa), "b": members(sb), "premise": "cyclic_primary"}),
            );
        }
        if corollary {
            let rb = join(g, sb, &fstar);
            let ra = join(g, sa, &fstar);
            let permutes = sylows_of(a)
                .iter()
                .all(|&s| is_conjugate_permutable(g, lat.get(s), &rb))
                && sylows_of(b)
                    .iter()
                    .all(|&s| is_conjugate_permutable(g, lat.get(s), &ra));
            if permutes {
                permutable_premises += 1;
                tally.check(
                    nilpotent,
                    || json!({"a": members(sa), "b": members(sb), "premise": "conjugate_permutable"}),
                );
            }
        }
    }
    tally.finish(json!({
        "factorizations": total,
        "sampled": pairs.len(),
        "sylow_premises": sylow_premises,
        "cyclic_premises": cyclic_premises,
        "permutable_premises": permutable_premises,
        "member": member,
    }))
}

fn largest_normal(ctx: &GroupContext, f: &Formation) -> CheckResult {
    let g = &ctx.group;
    let engine = SubnormalityEngine::new(g, f)?;
    let lat = engine.lattice();
    let sylows = all_sylow_subgroups(g)?;
    let cyclic = cyclic_primary_subgroups(g);
    let s = s_f_with(&engine)?;
    let c = c_f_with(&engine)?;
    let mut tally = Tally::default();
    tally.check(
        s == largest_subnormalizing_normal(&engine, &sylows)?,
        || json!({"failed": "S_F is not the largest normal"}),
    );
    tally.check(
        c == largest_subnormalizing_normal(&engine, &cyclic)?,
        || json!({"failed": "C_F is not the largest normal"}),
    );
    tally.check(
        is_normal(g, &s) && is_normal(g, &c),
        || json!({"failed": "S_F or C_F not normal"}),
    );
    // No strictly larger normal subgroup subnormalizes every Sylow subgroup.
    let subnormalizes = |subs: &[Subgroup], n: &Subgroup| -> forge_core::Result<bool> {
        for x in subs {
            if !engine.is_subnormal(engine.index(x)?, engine.index(&join(g, x, n))?) {
                return Ok(false);
            }
        }
        Ok(true)
    };
    for n in normal_subgroups(g) {
        if s.is_subgroup_of(n) && *n != s {
            let fails = !subnormalizes(&sylows, n)?;
            tally.check(
                fails,
                || json!({"failed": "larger normal subnormalizes the Sylows", "n": members(n)}),
            );
        }
        if c.is_subgroup_of(n) && *n != c {
            let fails = !subnormalizes(&cyclic, n)?;
            tally.check(
                fails,
                || json!({"failed": "larger normal subnormalizes the cyclic primaries", "n": members(n)}),
            );
        }
    }
    // The trivial subgroup has G as its only weak subnormalizer.
    let trivial = engine.index(&Subgroup::trivial(g))?;
    tally.check(
        engine.weak_subnormalizers(trivial) == [lat.top()],
        || json!({"failed": "trivial subgroup"}),
    );
    tally.finish(json!({"s_f": members(&s), "c_f": members(&c)}))
}

/// Groups at most this large also get the Z-closure iteration check.
const Z_CLOSURE_LIMIT: usize = 24;

fn derived_classes(ctx: &GroupContext, f: &Formation) -> CheckResult {
    let g = &ctx.group;
    let whole = Subgroup::whole(g);
    let engine = SubnormalityEngine::new(g, f)?;
    let s = s_f_with(&engine)?;
    let c = c_f_with(&engine)?;
    let wbar = f.wbar()?;
    let int_w = int_f(g, &wbar)?;
    let int_v = int_f(g, &f.vstar()?)?;
    let mut tally = Tally::default();
    tally.check(
        s == int_w,
        || json!({"failed": "S_F != Int_wbar", "s_f": members(&s), "int": members(&int_w)}),
    );
    tally.check(
        c == int_v,
        || json!({"failed": "C_F != Int_vstar", "c_f": members(&c), "int": members(&int_v)}),
    );
    tally.check(s.is_subgroup_of(&c), || json!({"failed": "S_F not in C_F"}));
    let mut witness = json!({"s_f": members(&s), "c_f": members(&c)});
    // Z-saturation of the w̄-class; the test groups may exceed the bound.
    witness["z_saturation"] = match f_hypercenter(g, &wbar) {
        Ok(z) => {
            let covers = z == whole;
            if covers {
                let member = wbar_member(g, f)?;
                tally.check(member, || json!({"failed": "G = Z_wbar(G) but G not in wbar"}));
            }
            json!({"covers": covers})
        }
        Err(e @ (Error::LatticeBound { .. } | Error::OrderBound { .. })) => json!({"skipped": e.to_string()}),
        Err(e) => return Err(e),
    };
    let z = f_hypercenter(g, f)?;
    if f.saturated() {
        tally.check(
            (z == whole) == f.member(g)?,
            || json!({"failed": "saturated F with Z_F(G) = G not matching G in F"}),
        );
    }
    if g.order() <= Z_CLOSURE_LIMIT {
        let zz = f_hypercenter(g, &f.z_closure())?;
        tally.check(
            zz == z,
            || json!({"failed": "Z_ZF(G) != Z_F(G)", "z_zf": members(&zz), "z_f": members(&z)}),
        );
        witness["z_closure"] = json!(true);
    }
    tally.finish(witness)
}

/// Lattice index, inside the local group, of a parent subgroup.
fn local_index(local: &Local, h: &Subgroup) -> forge_core::Result<usize> {
    let lat = local.group.lattice()?;
    lat.index_of(&local.to_local(h)).ok_or(Error::NotASubgroup)
}

fn transitivity(ctx: &GroupContext, f: &Formation) -> CheckResult {
    let g = &ctx.group;
    let engine = SubnormalityEngine::new(g, f)?;
    let lat = engine.lattice();
    let top = lat.top();
    let locals = ctx.locals()?;
    let mut tally = Tally::default();
    let mut chains = 0u64;
    // (3): verdicts inside R computed in R itself, then composed with R in G.
    for (r, local) in locals.iter().enumerate() {
        let inner = SubnormalityEngine::new(&local.group, f)?;
        let inner_top = inner.lattice().top();
        for h in lat.below(r).ones() {
            let in_r = inner.is_subnormal(local_index(local, lat.get(h))?, inner_top);
            tally.check(in_r == engine.is_subnormal(h, r), || {
                json!({"failed": "local and ambient verdicts differ", "h": members(lat.get(h)), "r": members(lat.get(r))})
            });
            if in_r && engine.is_subnormal(r, top) {
                tally.check(
                    engine.is_subnormal(h, top),
                    || json!({"failed": "transitivity", "h": members(lat.get(h)), "r": members(lat.get(r))}),
                );
                if let (Some(lower), Some(upper)) = (engine.chain(h, r), engine.chain(r, top)) {
                    let mut links = lower.links;
                    links.extend(upper.links.into_iter().skip(1));
                    chains += 1;
                    let verified = SubnormalChain::new(g, links, f).is_ok();
                    tally.check(
                        verified,
                        || json!({"failed": "concatenated chain", "h": members(lat.get(h))}),
                    );
                }
            }
        }
    }
    // (1) and (2): images and preimages in every proper quotient.
    for n in normal_subgroups(g).iter().filter(|n| !n.is_trivial()) {
        let q = quotient_group(g, n)?;
        let outer = SubnormalityEngine::new(q.target(), f)?;
        let outer_top = outer.lattice().top();
        for h in 0..lat.len() {
            let image = outer.index(&q.image(lat.get(h)))?;
            let image_sn = outer.is_subnormal(image, outer_top);
            if engine.is_subnormal(h, top) {
                tally.check(
                    image_sn,
                    || json!({"failed": "image", "h": members(lat.get(h)), "n": members(n)}),
                );
            }
            if n.is_subgroup_of(lat.get(h)) && image_sn {
                tally.check(
                    engine.is_subnormal(h, top),
                    || json!({"failed": "preimage", "h": members(lat.get(h)), "n": members(n)}),
                );
            }
        }
    }
    tally.finish(json!({"chains": chains}))
}

fn intersections(ctx: &GroupContext, f: &Formation) -> CheckResult {
    let g = &ctx.group;
    let engine = SubnormalityEngine::new(g, f)?;
    let lat = engine.lattice();
    let top = lat.top();
    let mut tally = Tally::default();
    for h in 0..lat.len() {
        if !engine.is_subnormal(h, top) {
            continue;
        }
        for r in 0..lat.len() {
            let m = lat.meet(h, r);
            tally.check(
                engine.is_subnormal(m, r),
                || json!({"failed": "meet with R", "h": members(lat.get(h)), "r": members(lat.get(r))}),
            );
            if r > h && engine.is_subnormal(r, top) {
                tally.check(
                    engine.is_subnormal(m, top),
                    || json!({"failed": "meet of two", "h": members(lat.get(h)), "r": members(lat.get(r))}),
                );
            }
        }
    }
    tally.finish(json!({}))
}

fn normal_products(ctx: &GroupContext, f: &Formation) -> CheckResult {
    let g = &ctx.group;
    let engine = SubnormalityEngine::new(g, f)?;
    let lat = engine.lattice();
    let normals: Vec<usize> = (0..lat.len())
        .filter(|&i| lat.is_normal(i) && !lat.get(i).is_trivial())
        .collect();
    let mut tally = Tally::default();
    // Joins with a normal subgroup, cached per (subgroup, normal).
    let mut joined: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    let mut join_n = |i: usize, n: usize| *joined.entry((i, n)).or_insert_with(|| lat.join(g, i, n));
    for r in 0..lat.len() {
        for h in lat.below(r).ones() {
            if !engine.is_subnormal(h, r) {
                continue;
            }
            for &n in &normals {
                let (hn, rn) = (join_n(h, n), join_n(r, n));
                tally.check(
                    engine.is_subnormal(hn, rn),
                    || json!({"h": members(lat.get(h)), "r": members(lat.get(r)), "n": members(lat.get(n))}),
                );
            }
        }
    }
    tally.finish(json!({}))
}

fn lattice_property(ctx: &GroupContext, f: &Formation) -> CheckResult {
    let g = &ctx.group;
    let engine = SubnormalityEngine::new(g, f)?;
    let lat = engine.lattice();
    let mut tally = Tally::default();
    for t in 0..lat.len() {
        let sn: Vec<usize> = lat.below(t).ones().filter(|&h| engine.is_subnormal(h, t)).collect();
        for (i, &h) in sn.iter().enumerate() {
            for &r in &sn[i + 1..] {
                let (j, m) = (lat.join(g, h, r), lat.meet(h, r));
                tally.check(
                    engine.is_subnormal(j, t) && engine.is_subnormal(m, t),
                    || json!({"h": members(lat.get(h)), "r": members(lat.get(r)), "t": members(lat.get(t))}),
                );
            }
        }
    }
    tally.finish(json!({}))
}

fn hypercenter_in_subgroups(ctx: &GroupContext, f: &Formation) -> CheckResult {
    let g = &ctx.group;
    let z = f_hypercenter(g, f)?;
    let lat = g.lattice()?;
    let mut tally = Tally::default();
    for (i, local) in ctx.locals()?.iter().enumerate() {
        let h = lat.get(i);
        let zh = local.to_parent(g, &f_hypercenter(&local.group, f)?);
        tally.check(
            z.intersection(h).is_subgroup_of(&zh),
            || json!({"failed": "Z_F(G) meet H not in Z_F(H)", "h": members(h)}),
        );
    }
    let zl = Local::new(g, &z);
    let zz = zl.to_parent(g, &f_hypercenter(&zl.group, f)?);
    tally.check(zz == z, || json!({"failed": "Z_F(Z_F(G)) != Z_F(G)"}));
    tally.finish(json!({"z_f": members(&z)}))
}

fn hypercenter_products(ctx: &GroupContext, f: &Formation) -> CheckResult {
    let g = &ctx.group;
    let z = f_hypercenter(g, f)?;
    let lat = g.lattice()?;
    let mut tally = Tally::default();
    for h in lat.subgroups() {
        if f.member_subgroup(g, h)? {
            let hz = join(g, h, &z);
            tally.check(
                f.member_subgroup(g, &hz)?,
                || json!({"failed": "HZ_F(G) not in F", "h": members(h)}),
            );
        }
    }
    let int = int_f(g, f)?;
    tally.check(z.is_subgroup_of(&int), || json!({"failed": "Z_F(G) not in Int_F(G)"}));
    tally.finish(json!({"z_f": members(&z), "int_f": members(&int)}))
}

fn delta_identity(ctx: &GroupContext, f: &Formation) -> CheckResult {
    let mut tally = Tally::default();
    for local in ctx.locals()? {
        let x = &local.group;
        let delta = delta_f(x, f)?;
        let q = quotient_group(x, &frattini(x)?)?;
        let pulled = q.preimage(&f_hypercenter(q.target(), f)?);
        tally.check(
            delta == pulled,
            || json!({"subgroup": local.embed, "delta": delta.order(), "pullback": pulled.order()}),
        );
    }
    tally.finish(json!({}))
}

fn fstar_criterion(ctx: &GroupContext, f: &Formation) -> CheckResult {
    let mut tally = Tally::default();
    let mut premises = 0u64;
    for local in ctx.locals()? {
        let x = &local.group;
        let covered = generalized_fitting(x)?.is_subgroup_of(&f_hypercenter(x, f)?);
        let member = f.member(x)?;
        premises += covered as u64;
        tally.check(!covered || member, || json!({"subgroup": local.embed}));
    }
    tally.finish(json!({"premises": premises}))
}
