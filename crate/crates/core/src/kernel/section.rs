use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};

use super::group::{FiniteGroup, DEFAULT_ORDER_BOUND};
use super::subgroup::{generators_of, is_normal, is_normal_in, Subgroup};

const NO_COSET: u32 = u32::MAX;

/// The abstract group `H/K` for `K ⊴ H ≤ G`, with the coset bookkeeping
/// needed to move between `G` and the section.
#[derive(Debug, Clone)]
pub struct Section {
    group: FiniteGroup,
    coset: Vec<u32>,
    reps: Vec<usize>,
    top_gens: Vec<usize>,
    invariant: bool,
}

/// `H/K` as a table group. Coset `0` is `K` itself and every coset is
/// represented by its smallest member.
pub fn section_group(g: &FiniteGroup, h: &Subgroup, k: &Subgroup) -> Result<Section> {
    if !k.is_subgroup_of(h) || !is_normal_in(g, k, h) {
        return Err(Error::NotNormal("bottom of the section"));
    }
    let m = h.order() / k.order();
    if m > DEFAULT_ORDER_BOUND {
        return Err(Error::OrderBound {
            bound: DEFAULT_ORDER_BOUND,
        });
    }
    let mut coset = vec![NO_COSET; g.order()];
    let mut reps = Vec::with_capacity(m);
    for x in h.elements() {
        if coset[x] != NO_COSET {
            continue;
        }
        let id = reps.len() as u32;
        reps.push(x);
        for y in k.elements() {
            coset[g.mul(x, y)] = id;
        }
    }
    let mut table = Vec::with_capacity(m * m);
    for &a in &reps {
        for &b in &reps {
            table.push(coset[g.mul(a, b)] as u16);
        }
    }
    let top_gens = generators_of(g, h);
    let gens = top_gens.iter().map(|&x| coset[x] as usize).collect();
    let invariant = is_normal(g, h) && is_normal(g, k);
    let group = FiniteGroup::from_table_unchecked(format!("{}/{}", h.order(), k.order()), m, table, Some(gens));
    Ok(Section {
        group,
        coset,
        reps,
        top_gens,
        invariant,
    })
}

impl Section {
    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn into_group(self) -> FiniteGroup {
        self.group
    }

    /// The coset of a parent element, if it lies in the top subgroup.
    pub fn project(&self, x: usize) -> Option<usize> {
        match self.coset[x] {
            NO_COSET => None,
            c => Some(c as usize),
        }
    }

    pub fn representative(&self, s: usize) -> usize {
        self.reps[s]
    }

    /// Whether the parent group normalizes both ends of the section.
    pub fn is_invariant(&self) -> bool {
        self.invariant
    }

    /// The automorphism `hK ↦ (x h x⁻¹)K` induced by the parent element `x`.
    pub fn conjugation_action(&self, g: &FiniteGroup, x: usize) -> Result<Vec<usize>> {
        if !self.invariant {
            return Err(Error::SectionNotInvariant);
        }
        Ok(self.reps.iter().map(|&h| self.coset[g.conj(x, h)] as usize).collect())
    }

    /// `C_G(H/K)`: parent elements acting trivially on the section.
    pub fn centralizer(&self, g: &FiniteGroup) -> Result<Subgroup> {
        if !self.invariant {
            return Err(Error::SectionNotInvariant);
        }
        let mut bits = FixedBitSet::with_capacity(g.order());
        for x in g.elements() {
            if self.top_gens.iter().all(|&h| self.coset[g.conj(x, h)] == self.coset[h]) {
                bits.insert(x);
            }
        }
        Ok(Subgroup::from_bits(bits))
    }

    /// Preimage in the parent of a subgroup of the section.
    pub fn preimage(&self, s: &Subgroup) -> Subgroup {
        let mut bits = FixedBitSet::with_capacity(self.coset.len());
        for (x, &c) in self.coset.iter().enumerate() {
            if c != NO_COSET && s.contains(c as usize) {
                bits.insert(x);
            }
        }
        Subgroup::from_bits(bits)
    }

    /// Image `(A ∩ H)K/K` of a parent subgroup.
    pub fn image(&self, a: &Subgroup) -> Subgroup {
        let mut bits = FixedBitSet::with_capacity(self.group.order());
        bits.insert(0);
        for x in a.elements() {
            if let Some(c) = self.project(x) {
                bits.insert(c);
            }
        }
        Subgroup::from_bits(bits)
    }
}

/// The natural map `G → G/N`.
#[derive(Debug, Clone)]
pub struct QuotientMap {
    kernel: Subgroup,
    section: Section,
}

pub fn quotient_group(g: &FiniteGroup, n: &Subgroup) -> Result<QuotientMap> {
    if !is_normal(g, n) {
        return Err(Error::NotNormal("quotient kernel"));
    }
    let section = section_group(g, &Subgroup::whole(g), n)?;
    Ok(QuotientMap {
        kernel: n.clone(),
        section,
    })
}

impl QuotientMap {
    pub fn source_order(&self) -> usize {
        self.section.coset.len()
    }

    pub fn kernel(&self) -> &Subgroup {
        &self.kernel
    }

    pub fn target(&self) -> &FiniteGroup {
        &self.section.group
    }

    pub fn project(&self, x: usize) -> usize {
        self.section.coset[x] as usize
    }

    /// A coset representative of a target element.
    pub fn lift(&self, t: usize) -> usize {
        self.section.reps[t]
    }

    /// `AN/N`.
    pub fn image(&self, a: &Subgroup) -> Subgroup {
        self.section.image(a)
    }

    /// The full preimage of a target subgroup; it contains the kernel.
    pub fn preimage(&self, s: &Subgroup) -> Subgroup {
        self.section.preimage(s)
    }
}
