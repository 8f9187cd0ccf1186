//! Formations, σ-partitions, 𝔉-central chief factors and the subgroups
//! defined from them.

use std::fmt;

use crate::arith;
use crate::canonical::{
    intersect_all, is_nilpotent, is_nilpotent_subgroup, is_soluble, is_soluble_subgroup, is_supersoluble, join_all,
};
use crate::error::{Error, Result};
use crate::kernel::{
    closure_bits, generators_of, induced_group, normal_core, quotient_group, section_group, semidirect_unchecked,
    FiniteGroup, Subgroup,
};
use crate::lattice::{chief_factors, cyclic_primary_subgroups, maximal_subgroups, normal_subgroups, sylow_subgroups};
use crate::subnormality::SubnormalityEngine;

/// A partition of the primes given by finitely many blocks; every prime
/// outside the listed blocks forms a block on its own.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct SigmaPartition {
    blocks: Vec<Vec<usize>>,
}

impl SigmaPartition {
    pub fn new(blocks: Vec<Vec<usize>>) -> Result<Self> {
        let mut seen = Vec::new();
        let mut clean = Vec::new();
        for mut block in blocks {
            if block.is_empty() {
                return Err(Error::InvalidSigma("empty block".into()));
            }
            block.sort_unstable();
            block.dedup();
            for &p in &block {
                if !arith::is_prime(p) {
                    return Err(Error::InvalidSigma(format!("{p} is not prime")));
                }
                if seen.contains(&p) {
                    return Err(Error::InvalidSigma(format!("{p} appears in two blocks")));
                }
                seen.push(p);
            }
            if block.len() > 1 {
                clean.push(block);
            }
        }
        clean.sort();
        Ok(SigmaPartition { blocks: clean })
    }

    /// Every prime on its own; σ-nilpotency is then plain nilpotency.
    pub fn singletons() -> Self {
        SigmaPartition::default()
    }

    /// Blocks separated by `/`, primes by `,`: `"2,3/5"`. An empty string
    /// gives the singleton partition.
    pub fn parse(text: &str) -> Result<Self> {
        let text = text.trim();
        if text.is_empty() || text == "singletons" {
            return Ok(Self::singletons());
        }
        let blocks = text
            .split('/')
            .map(|block| {
                block
                    .split(',')
                    .map(|p| {
                        p.trim()
                            .parse::<usize>()
                            .map_err(|_| Error::InvalidSigma(format!("bad prime {p:?}")))
                    })
                    .collect::<Result<Vec<usize>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(blocks)
    }

    /// Blocks with more than one prime; all others are implicit singletons.
    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    /// A key identifying the block of `p`: its smallest prime.
    pub fn block_of(&self, p: usize) -> usize {
        self.blocks.iter().find(|b| b.contains(&p)).map_or(p, |b| b[0])
    }

    /// The blocks meeting `primes`, each restricted to `primes`.
    pub fn restrict(&self, primes: &[usize]) -> Vec<Vec<usize>> {
        let mut out: Vec<(usize, Vec<usize>)> = Vec::new();
        for &p in primes {
            let key = self.block_of(p);
            match out.iter_mut().find(|(k, _)| *k == key) {
                Some((_, block)) => block.push(p),
                None => out.push((key, vec![p])),
            }
        }
        out.into_iter().map(|(_, b)| b).collect()
    }
}

impl fmt::Display for SigmaPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.blocks.is_empty() {
            return write!(f, "singletons");
        }
        let parts: Vec<String> = self
            .blocks
            .iter()
            .map(|b| b.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(","))
            .collect();
        write!(f, "{}", parts.join("/"))
    }
}

/// The elements of `h` whose order is a `π`-number.
fn pi_elements(g: &FiniteGroup, h: &Subgroup, pi: &[usize]) -> Vec<usize> {
    h.elements()
        .filter(|&x| arith::prime_divisors(g.elem_order(x)).iter().all(|p| pi.contains(p)))
        .collect()
}

/// σ-nilpotency of `h ≤ g`: for each block meeting `π(h)` the `π_i`-elements
/// form a subgroup of the full `π_i`-order. Such a subgroup is the unique,
/// hence normal, Hall `π_i`-subgroup.
pub fn is_sigma_nilpotent_subgroup(g: &FiniteGroup, h: &Subgroup, sigma: &SigmaPartition) -> bool {
    sigma.restrict(&arith::prime_divisors(h.order())).iter().all(|pi| {
        let elems = pi_elements(g, h, pi);
        elems.len() == arith::pi_part(h.order(), |p| pi.contains(&p))
            && closure_bits(g, &elems).count_ones(..) == elems.len()
    })
}

pub fn is_sigma_nilpotent(g: &FiniteGroup, sigma: &SigmaPartition) -> bool {
    is_sigma_nilpotent_subgroup(g, &Subgroup::whole(g), sigma)
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum FormationKind {
    All,
    Nilpotent,
    SigmaNilpotent(SigmaPartition),
    Soluble,
    Supersoluble,
    Abelian,
    /// Groups all of whose Sylow subgroups are K-𝔉-subnormal.
    WBar(Box<Formation>),
    /// Groups all of whose cyclic primary subgroups are K-𝔉-subnormal.
    VStar(Box<Formation>),
    /// Groups `G` with `G = Z_𝔉(G)`.
    ZClosure(Box<Formation>),
}

/// A named class of groups with its declared closure properties.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Formation {
    kind: FormationKind,
}

impl Formation {
    pub fn new(kind: FormationKind) -> Self {
        Formation { kind }
    }

    pub fn all() -> Self {
        Self::new(FormationKind::All)
    }

    pub fn nilpotent() -> Self {
        Self::new(FormationKind::Nilpotent)
    }

    pub fn sigma_nilpotent(sigma: SigmaPartition) -> Self {
        Self::new(FormationKind::SigmaNilpotent(sigma))
    }

    pub fn soluble() -> Self {
        Self::new(FormationKind::Soluble)
    }

    pub fn supersoluble() -> Self {
        Self::new(FormationKind::Supersoluble)
    }

    pub fn abelian() -> Self {
        Self::new(FormationKind::Abelian)
    }

    pub fn wbar(&self) -> Result<Self> {
        self.require_hereditary()?;
        Ok(Self::new(FormationKind::WBar(Box::new(self.clone()))))
    }

    pub fn vstar(&self) -> Result<Self> {
        self.require_hereditary()?;
        Ok(Self::new(FormationKind::VStar(Box::new(self.clone()))))
    }

    pub fn z_closure(&self) -> Self {
        Self::new(FormationKind::ZClosure(Box::new(self.clone())))
    }

    pub fn kind(&self) -> &FormationKind {
        &self.kind
    }

    pub fn name(&self) -> String {
        match &self.kind {
            FormationKind::All => "all".into(),
            FormationKind::Nilpotent => "nilpotent".into(),
            FormationKind::SigmaNilpotent(s) => format!("sigma_nilpotent[{s}]"),
            FormationKind::Soluble => "soluble".into(),
            FormationKind::Supersoluble => "supersoluble".into(),
            FormationKind::Abelian => "abelian".into(),
            FormationKind::WBar(f) => format!("wbar({})", f.name()),
            FormationKind::VStar(f) => format!("vstar({})", f.name()),
            FormationKind::ZClosure(f) => format!("z({})", f.name()),
        }
    }

    pub fn sigma(&self) -> Option<&SigmaPartition> {
        match &self.kind {
            FormationKind::SigmaNilpotent(s) => Some(s),
            _ => None,
        }
    }

    /// Every registry formation is subgroup-closed, and so are the derived
    /// classes built from hereditary ones.
    pub fn hereditary(&self) -> bool {
        true
    }

    pub fn saturated(&self) -> bool {
        match &self.kind {
            FormationKind::Abelian | FormationKind::WBar(_) | FormationKind::VStar(_) => false,
            FormationKind::ZClosure(f) => f.saturated(),
            _ => true,
        }
    }

    pub fn contains_nilpotent(&self) -> bool {
        match &self.kind {
            FormationKind::Abelian => false,
            FormationKind::ZClosure(f) => f.contains_nilpotent(),
            _ => true,
        }
    }

    pub(crate) fn require_hereditary(&self) -> Result<()> {
        if self.hereditary() {
            Ok(())
        } else {
            Err(Error::NotHereditary(self.name()))
        }
    }

    /// Membership of a group. The derived classes need the group's lattice
    /// and fail with a bound error on large groups.
    pub fn member(&self, g: &FiniteGroup) -> Result<bool> {
        Ok(match &self.kind {
            FormationKind::All => true,
            FormationKind::Nilpotent => is_nilpotent(g),
            FormationKind::SigmaNilpotent(s) => is_sigma_nilpotent(g, s),
            FormationKind::Soluble => is_soluble(g),
            FormationKind::Supersoluble => is_supersoluble(g),
            FormationKind::Abelian => g.is_abelian(),
            FormationKind::WBar(f) => wbar_member(g, f)?,
            FormationKind::VStar(f) => vstar_member(g, f)?,
            FormationKind::ZClosure(f) => f_hypercenter(g, f)?.order() == g.order(),
        })
    }

    /// Membership of a subgroup `h ≤ g`, viewed as a group.
    pub fn member_subgroup(&self, g: &FiniteGroup, h: &Subgroup) -> Result<bool> {
        Ok(match &self.kind {
            FormationKind::All => true,
            FormationKind::Nilpotent => is_nilpotent_subgroup(g, h),
            FormationKind::SigmaNilpotent(s) => is_sigma_nilpotent_subgroup(g, h, s),
            FormationKind::Soluble => is_soluble_subgroup(g, h),
            FormationKind::Abelian => {
                let gens = generators_of(g, h);
                gens.iter().all(|&a| gens.iter().all(|&b| g.mul(a, b) == g.mul(b, a)))
            }
            _ => {
                if h.order() == g.order() {
                    return self.member(g);
                }
                self.member(&induced_group(g, h).0)?
            }
        })
    }
}

impl fmt::Display for Formation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

/// The base formations with a default (singleton) σ.
pub fn registry() -> Vec<Formation> {
    vec![
        Formation::all(),
        Formation::nilpotent(),
        Formation::sigma_nilpotent(SigmaPartition::singletons()),
        Formation::soluble(),
        Formation::supersoluble(),
        Formation::abelian(),
    ]
}

/// Looks a formation up by name. Accepts the long names, the one-letter
/// symbols `G N U S A`, `sigma`, and `wbar:<name>` / `vstar:<name>`.
pub fn by_name(name: &str, sigma: Option<&SigmaPartition>) -> Result<Formation> {
    let name = name.trim();
    if let Some(inner) = name.strip_prefix("wbar:") {
        return by_name(inner, sigma)?.wbar();
    }
    if let Some(inner) = name.strip_prefix("vstar:") {
        return by_name(inner, sigma)?.vstar();
    }
    Ok(match name {
        "all" | "G" => Formation::all(),
        "nilpotent" | "N" => Formation::nilpotent(),
        "sigma_nilpotent" | "sigma" | "Nsigma" => Formation::sigma_nilpotent(sigma.cloned().unwrap_or_default()),
        "soluble" | "S" => Formation::soluble(),
        "supersoluble" | "U" => Formation::supersoluble(),
        "abelian" | "A" => Formation::abelian(),
        other => return Err(Error::UnknownFormation(other.to_string())),
    })
}

/// The evidence behind an 𝔉-centrality verdict for a chief factor `H/K`.
#[derive(Debug, Clone)]
pub struct FCentralityWitness {
    pub factor: (Subgroup, Subgroup),
    pub centralizer: Subgroup,
    /// `(H/K) ⋊ (G/C_G(H/K))`.
    pub test_group: FiniteGroup,
    pub verdict: bool,
}

fn is_chief_factor(g: &FiniteGroup, h: &Subgroup, k: &Subgroup) -> bool {
    let normals = normal_subgroups(g);
    h.order() > k.order()
        && k.is_subgroup_of(h)
        && normals.contains(h)
        && normals.contains(k)
        && !normals
            .iter()
            .any(|m| m.order() > k.order() && m.order() < h.order() && k.is_subgroup_of(m) && m.is_subgroup_of(h))
}

/// Whether `(H/K) ⋊ (G/C_G(H/K))` lies in `f`, where `G` acts on the chief
/// factor by conjugation.
pub fn is_f_central_factor(g: &FiniteGroup, h: &Subgroup, k: &Subgroup, f: &Formation) -> Result<FCentralityWitness> {
    if !is_chief_factor(g, h, k) {
        return Err(Error::NotChiefFactor);
    }
    let section = section_group(g, h, k)?;
    let centralizer = section.centralizer(g)?;
    let top = quotient_group(g, &centralizer)?;
    let action = top
        .target()
        .elements()
        .map(|q| section.conjugation_action(g, top.lift(q)))
        .collect::<Result<Vec<_>>>()?;
    let label = format!("{}/{} : {}", h.order(), k.order(), top.target().order());
    let test_group = semidirect_unchecked(section.group(), top.target(), &action, label).into_group();
    let verdict = f.member(&test_group)?;
    Ok(FCentralityWitness {
        factor: (h.clone(), k.clone()),
        centralizer,
        test_group,
        verdict,
    })
}

/// `Z_𝔉(G)` by the ascending series: each step adjoins every 𝔉-central
/// minimal normal subgroup of `G/Z_i`. For `|G| ≤ 100` the result is checked
/// against [`f_hypercenter_by_definition`].
pub fn f_hypercenter(g: &FiniteGroup, f: &Formation) -> Result<Subgroup> {
    let z = f_hypercenter_by_series(g, f)?;
    if g.order() <= 100 {
        let check = f_hypercenter_by_definition(g, f)?;
        if check != z {
            return Err(Error::Inconsistent(format!(
                "Z_F series and definition differ for {} in {} ({} vs {})",
                f.name(),
                g.label(),
                z.order(),
                check.order()
            )));
        }
    }
    Ok(z)
}

pub fn f_hypercenter_by_series(g: &FiniteGroup, f: &Formation) -> Result<Subgroup> {
    let normals = normal_subgroups(g);
    let mut z = Subgroup::trivial(g);
    loop {
        let above: Vec<&Subgroup> = normals
            .iter()
            .filter(|n| n.order() > z.order() && z.is_subgroup_of(n))
            .collect();
        let minimal = above
            .iter()
            .filter(|n| !above.iter().any(|m| m.order() < n.order() && m.is_subgroup_of(n)));
        let mut central = vec![&z];
        for n in minimal {
            if is_f_central_factor(g, n, &z, f)?.verdict {
                central.push(n);
            }
        }
        if central.len() == 1 {
            return Ok(z);
        }
        z = join_all(g, central);
    }
}

/// The largest normal subgroup all of whose `G`-chief factors below it are
/// 𝔉-central, by scanning every normal subgroup.
pub fn f_hypercenter_by_definition(g: &FiniteGroup, f: &Formation) -> Result<Subgroup> {
    let factors = chief_factors(g);
    let mut central = Vec::with_capacity(factors.len());
    for (h, k) in &factors {
        central.push(is_f_central_factor(g, h, k, f)?.verdict);
    }
    let hypercentral: Vec<&Subgroup> = normal_subgroups(g)
        .iter()
        .filter(|n| {
            factors
                .iter()
                .zip(&central)
                .all(|((h, _), &c)| c || !h.is_subgroup_of(n))
        })
        .collect();
    let largest = *hypercentral.last().expect("the trivial subgroup qualifies");
    if hypercentral.iter().any(|n| !n.is_subgroup_of(largest)) {
        return Err(Error::Inconsistent(format!(
            "no largest hypercentral subgroup in {}",
            g.label()
        )));
    }
    Ok(largest.clone())
}

/// `G^𝔉`: the intersection of all normal `N` with `G/N ∈ 𝔉`.
pub fn f_residual(g: &FiniteGroup, f: &Formation) -> Result<Subgroup> {
    let mut result = Subgroup::whole(g);
    for n in normal_subgroups(g) {
        if f.member(quotient_group(g, n)?.target())? {
            result = result.intersection(n);
        }
    }
    if !f.member(quotient_group(g, &result)?.target())? {
        return Err(Error::Inconsistent(format!(
            "G/G^F is not in {} for {}",
            f.name(),
            g.label()
        )));
    }
    Ok(result)
}

/// Subgroups in `f` with no strictly larger `f`-subgroup above them.
pub fn f_maximal_subgroups(g: &FiniteGroup, f: &Formation) -> Result<Vec<Subgroup>> {
    let lat = g.lattice()?;
    let mut member = Vec::with_capacity(lat.len());
    for s in lat.subgroups() {
        member.push(f.member_subgroup(g, s)?);
    }
    Ok((0..lat.len())
        .filter(|&i| member[i] && !lat.above(i).ones().any(|j| j != i && member[j]))
        .map(|i| lat.get(i).clone())
        .collect())
}

/// `Int_𝔉(G)`.
pub fn int_f(g: &FiniteGroup, f: &Formation) -> Result<Subgroup> {
    Ok(intersect_all(g, &f_maximal_subgroups(g, f)?))
}

/// Intersection of the maximal subgroups `M` with `G/Core_G(M) ∉ 𝔉`; the
/// whole group when there are none.
pub fn delta_f(g: &FiniteGroup, f: &Formation) -> Result<Subgroup> {
    let mut result = Subgroup::whole(g);
    for m in maximal_subgroups(g)? {
        let core = normal_core(g, &m);
        if !f.member(quotient_group(g, &core)?.target())? {
            result = result.intersection(&m);
        }
    }
    Ok(result)
}

fn all_k_f_subnormal(g: &FiniteGroup, f: &Formation, subs: &[Subgroup]) -> Result<bool> {
    if subs.is_empty() {
        return Ok(true);
    }
    let engine = SubnormalityEngine::new(g, f)?;
    let top = engine.lattice().top();
    for s in subs {
        let i = engine.lattice().index_of(s).ok_or(Error::NotASubgroup)?;
        if !engine.is_subnormal(i, top) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Membership in `w̄𝔉`: every Sylow subgroup is K-𝔉-subnormal.
pub fn wbar_member(g: &FiniteGroup, f: &Formation) -> Result<bool> {
    f.require_hereditary()?;
    if f.member(g)? {
        return Ok(true);
    }
    let mut sylows = Vec::new();
    for p in g.primes() {
        sylows.extend(sylow_subgroups(g, p)?);
    }
    all_k_f_subnormal(g, f, &sylows)
}

/// Membership in `v*𝔉`: every cyclic primary subgroup is K-𝔉-subnormal.
pub fn vstar_member(g: &FiniteGroup, f: &Formation) -> Result<bool> {
    f.require_hereditary()?;
    if f.member(g)? {
        return Ok(true);
    }
    all_k_f_subnormal(g, f, &cyclic_primary_subgroups(g))
}

/// Whether the section `T/K` lies in `f`.
pub fn quotient_member(g: &FiniteGroup, f: &Formation, t: &Subgroup, k: &Subgroup) -> Result<bool> {
    if k.is_trivial() {
        return f.member_subgroup(g, t);
    }
    f.member(section_group(g, t, k)?.group())
}
