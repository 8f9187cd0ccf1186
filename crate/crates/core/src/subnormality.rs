//! K-𝔉-subnormality, weak K-𝔉-subnormalizers and the intersections
//! `S_𝔉(G)`, `C_𝔉(G)`.
//!
//! A step `M → T` (with `M < T`) is allowed when `M ⊴ T` or
//! `T/Core_T(M) ∈ 𝔉`. The step relation depends only on the pair, so one
//! graph over the lattice of `G` answers K-𝔉-subnormality of `H` in every
//! subgroup `T ≥ H`: it holds exactly when `T` is reachable from `H`.

use std::collections::HashMap;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::formations::{quotient_member, Formation};
use crate::kernel::{
    conjugate, core_in, is_normal_in, is_normal_in_with, join, normal_closure, product_set, FiniteGroup, Subgroup,
};
use crate::lattice::{cyclic_primary_subgroups, normal_subgroups, sylow_subgroups, SubgroupLattice};
use crate::par::Execution;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StepKind {
    Normal,
    /// `H_i / Core_{H_i}(H_{i-1}) ∈ 𝔉`.
    Quotient,
}

/// `H = H_0 < H_1 < … < H_n = T` with the justification of every link.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubnormalChain {
    pub links: Vec<Subgroup>,
    pub kinds: Vec<StepKind>,
}

impl SubnormalChain {
    /// Builds a chain from its links, re-deriving and checking every step.
    pub fn new(g: &FiniteGroup, links: Vec<Subgroup>, f: &Formation) -> Result<Self> {
        let mut kinds = Vec::with_capacity(links.len().saturating_sub(1));
        for pair in links.windows(2) {
            let (m, t) = (&pair[0], &pair[1]);
            if !m.is_subgroup_of(t) {
                return Err(Error::Inconsistent("chain is not increasing".into()));
            }
            if is_normal_in(g, m, t) {
                kinds.push(StepKind::Normal);
            } else {
                let core = core_in(g, m, &crate::kernel::generators_of(g, t));
                if quotient_member(g, f, t, &core)? {
                    kinds.push(StepKind::Quotient);
                } else {
                    return Err(Error::Inconsistent(format!(
                        "step {} -> {} is neither normal nor in {}",
                        m.order(),
                        t.order(),
                        f.name()
                    )));
                }
            }
        }
        Ok(SubnormalChain { links, kinds })
    }

    pub fn len(&self) -> usize {
        self.kinds.len()
    }

    pub fn is_empty(&self) -> bool {
        self.kinds.is_empty()
    }
}

/// Every allowed step between subgroups of one group for one formation,
/// with the reachability closure.
pub struct SubnormalityEngine<'g> {
    group: &'g FiniteGroup,
    lattice: &'g SubgroupLattice,
    formation: Formation,
    steps: Vec<Vec<(usize, StepKind)>>,
    reach: Vec<FixedBitSet>,
}

impl<'g> SubnormalityEngine<'g> {
    pub fn new(g: &'g FiniteGroup, f: &Formation) -> Result<Self> {
        Self::with_execution(g, f, Execution::default())
    }

    pub fn with_execution(g: &'g FiniteGroup, f: &Formation, exec: Execution) -> Result<Self> {
        let lattice = g.lattice()?;
        let k = lattice.len();
        // Cores of every non-normal pair, keyed by (T, Core_T(M)).
        let cores: Vec<Vec<(usize, Option<usize>)>> = exec.map_range(k, |i| {
            let m = lattice.get(i);
            lattice
                .above(i)
                .ones()
                .filter(|&j| j != i)
                .map(|j| {
                    if is_normal_in_with(g, m, lattice.generators(i), lattice.generators(j)) {
                        (j, None)
                    } else {
                        let core = core_in(g, m, lattice.generators(j));
                        (j, Some(lattice.index_of(&core).expect("cores are subgroups")))
                    }
                })
                .collect()
        });
        let mut keys: Vec<(usize, usize)> = cores.iter().flatten().filter_map(|&(j, c)| c.map(|c| (j, c))).collect();
        keys.sort_unstable();
        keys.dedup();
        let verdicts = exec.map(&keys, |&(j, c)| quotient_member(g, f, lattice.get(j), lattice.get(c)));
        let mut member = HashMap::with_capacity(keys.len());
        for (key, v) in keys.into_iter().zip(verdicts) {
            member.insert(key, v?);
        }
        let steps: Vec<Vec<(usize, StepKind)>> = cores
            .into_iter()
            .map(|row| {
                row.into_iter()
                    .filter_map(|(j, c)| match c {
                        None => Some((j, StepKind::Normal)),
                        Some(c) if member[&(j, c)] => Some((j, StepKind::Quotient)),
                        Some(_) => None,
                    })
                    .collect()
            })
            .collect();
        let mut reach = vec![FixedBitSet::with_capacity(k); k];
        for i in (0..k).rev() {
            let mut r = FixedBitSet::with_capacity(k);
            r.insert(i);
            for &(j, _) in &steps[i] {
                r.union_with(&reach[j]);
            }
            reach[i] = r;
        }
        Ok(SubnormalityEngine {
            group: g,
            lattice,
            formation: f.clone(),
            steps,
            reach,
        })
    }

    pub fn group(&self) -> &FiniteGroup {
        self.group
    }

    pub fn lattice(&self) -> &SubgroupLattice {
        self.lattice
    }

    pub fn formation(&self) -> &Formation {
        &self.formation
    }

    /// Lattice index of a subgroup.
    pub fn index(&self, h: &Subgroup) -> Result<usize> {
        self.lattice.index_of(h).ok_or(Error::NotASubgroup)
    }

    /// `S_h` K-𝔉-subnormal in `S_t`.
    pub fn is_subnormal(&self, h: usize, t: usize) -> bool {
        self.reach[h].contains(t)
    }

    /// The subgroups in which `S_h` is K-𝔉-subnormal.
    pub fn overgroups(&self, h: usize) -> &FixedBitSet {
        &self.reach[h]
    }

    /// A witness chain from `S_h` to `S_t`, if one exists.
    pub fn chain(&self, h: usize, t: usize) -> Option<SubnormalChain> {
        if !self.is_subnormal(h, t) {
            return None;
        }
        let mut links = vec![self.lattice.get(h).clone()];
        let mut kinds = Vec::new();
        let mut current = h;
        while current != t {
            let &(next, kind) = self.steps[current]
                .iter()
                .find(|&&(j, _)| self.reach[j].contains(t))
                .expect("reachability is closed under steps");
            links.push(self.lattice.get(next).clone());
            kinds.push(kind);
            current = next;
        }
        Some(SubnormalChain { links, kinds })
    }

    /// Inclusion-maximal subgroups in which `S_h` is K-𝔉-subnormal.
    pub fn weak_subnormalizers(&self, h: usize) -> Vec<usize> {
        let reach = &self.reach[h];
        reach
            .ones()
            .filter(|&t| self.lattice.above(t).intersection(reach).count() == 1)
            .collect()
    }

    /// Intersection of the weak subnormalizers of all the given subgroups.
    fn subnormalizer_intersection(&self, subs: &[Subgroup]) -> Result<Subgroup> {
        let mut result = Subgroup::whole(self.group);
        for s in subs {
            let i = self.index(s)?;
            for t in self.weak_subnormalizers(i) {
                result = result.intersection(self.lattice.get(t));
            }
        }
        Ok(result)
    }
}

/// A witness chain for `H` K-𝔉-subnormal in `G`, or `None`.
pub fn is_k_f_subnormal(g: &FiniteGroup, h: &Subgroup, f: &Formation) -> Result<Option<SubnormalChain>> {
    is_k_f_subnormal_in(g, h, &Subgroup::whole(g), f)
}

/// A witness chain for `H` K-𝔉-subnormal in `T`, for `H ≤ T ≤ G`.
pub fn is_k_f_subnormal_in(
    g: &FiniteGroup,
    h: &Subgroup,
    t: &Subgroup,
    f: &Formation,
) -> Result<Option<SubnormalChain>> {
    if !h.is_subgroup_of(t) {
        return Err(Error::NotASubgroup);
    }
    let engine = SubnormalityEngine::new(g, f)?;
    Ok(engine.chain(engine.index(h)?, engine.index(t)?))
}

/// `H` K-𝔉-subnormal in `⟨H, R⟩`.
pub fn is_r_k_f_subnormal(g: &FiniteGroup, h: &Subgroup, r: &Subgroup, f: &Formation) -> Result<bool> {
    let engine = SubnormalityEngine::new(g, f)?;
    is_r_k_f_subnormal_with(&engine, h, r)
}

pub fn is_r_k_f_subnormal_with(engine: &SubnormalityEngine<'_>, h: &Subgroup, r: &Subgroup) -> Result<bool> {
    let t = join(engine.group(), h, r);
    Ok(engine.is_subnormal(engine.index(h)?, engine.index(&t)?))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeakSubnormalizerSet {
    pub base: Subgroup,
    pub maximals: Vec<Subgroup>,
}

pub fn weak_k_f_subnormalizers(g: &FiniteGroup, h: &Subgroup, f: &Formation) -> Result<WeakSubnormalizerSet> {
    let engine = SubnormalityEngine::new(g, f)?;
    let i = engine.index(h)?;
    Ok(WeakSubnormalizerSet {
        base: h.clone(),
        maximals: engine
            .weak_subnormalizers(i)
            .into_iter()
            .map(|t| engine.lattice().get(t).clone())
            .collect(),
    })
}

pub fn all_sylow_subgroups(g: &FiniteGroup) -> Result<Vec<Subgroup>> {
    let mut out = Vec::new();
    for p in g.primes() {
        out.extend(sylow_subgroups(g, p)?);
    }
    Ok(out)
}

/// Intersection of all weak K-𝔉-subnormalizers of all Sylow subgroups.
pub fn s_f(g: &FiniteGroup, f: &Formation) -> Result<Subgroup> {
    f.require_hereditary()?;
    let engine = SubnormalityEngine::new(g, f)?;
    s_f_with(&engine)
}

pub fn s_f_with(engine: &SubnormalityEngine<'_>) -> Result<Subgroup> {
    engine.subnormalizer_intersection(&all_sylow_subgroups(engine.group())?)
}

/// Intersection of all weak K-𝔉-subnormalizers of all cyclic primary
/// subgroups.
pub fn c_f(g: &FiniteGroup, f: &Formation) -> Result<Subgroup> {
    f.require_hereditary()?;
    let engine = SubnormalityEngine::new(g, f)?;
    c_f_with(&engine)
}

pub fn c_f_with(engine: &SubnormalityEngine<'_>) -> Result<Subgroup> {
    engine.subnormalizer_intersection(&cyclic_primary_subgroups(engine.group()))
}

/// The largest normal `N` with `X` K-𝔉-subnormal in `XN` for every `X` in
/// `subs`, by scanning all normal subgroups. Fails if the qualifying normal
/// subgroups have no largest member.
pub fn largest_subnormalizing_normal(engine: &SubnormalityEngine<'_>, subs: &[Subgroup]) -> Result<Subgroup> {
    let g = engine.group();
    let mut qualifying = Vec::new();
    for n in normal_subgroups(g) {
        let mut ok = true;
        for x in subs {
            let xn = join(g, x, n);
            if !engine.is_subnormal(engine.index(x)?, engine.index(&xn)?) {
                ok = false;
                break;
            }
        }
        if ok {
            qualifying.push(n);
        }
    }
    let largest = *qualifying.last().expect("the trivial subgroup qualifies");
    if qualifying.iter().any(|n| !n.is_subgroup_of(largest)) {
        return Err(Error::Inconsistent(format!(
            "no largest subnormalizing normal subgroup in {}",
            g.label()
        )));
    }
    Ok(largest.clone())
}

/// `H^r H = H H^r` for every `r ∈ R`.
pub fn is_conjugate_permutable(g: &FiniteGroup, h: &Subgroup, r: &Subgroup) -> bool {
    r.elements().all(|x| {
        let hr = conjugate(g, h, x);
        product_set(g, &hr, h) == product_set(g, h, &hr)
    })
}

/// Classical subnormality of `H` in `T`: the series `T ⊵ H^T ⊵ H^{H^T} …`
/// of successive normal closures reaches `H`.
pub fn is_subnormal_classical(g: &FiniteGroup, h: &Subgroup, t: &Subgroup) -> bool {
    if !h.is_subgroup_of(t) {
        return false;
    }
    let h_gens = crate::kernel::generators_of(g, h);
    let mut current = t.clone();
    loop {
        if current == *h {
            return true;
        }
        let (next, _) = normal_closure(g, &crate::kernel::generators_of(g, &current), &h_gens);
        if next == current {
            return false;
        }
        current = next;
    }
}
