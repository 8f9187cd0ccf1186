//! Subgroup lattices and the standard subgroup families read off them.

use std::collections::HashMap;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Arc;

use fixedbitset::FixedBitSet;

use crate::arith;
use crate::error::{Error, Result};
use crate::kernel::{closure_bits, is_normal_in_with, normal_closure, FiniteGroup, Subgroup};

pub const DEFAULT_LATTICE_BOUND: usize = 200;

static LATTICE_BOUND: AtomicUsize = AtomicUsize::new(DEFAULT_LATTICE_BOUND);

/// Largest group order for which a full subgroup lattice is built.
pub fn lattice_bound() -> usize {
    LATTICE_BOUND.load(Ordering::Relaxed)
}

/// Changes the process-wide lattice bound. Lattices already cached on a
/// group are not rebuilt, so call this before any analysis.
pub fn set_lattice_bound(bound: usize) {
    LATTICE_BOUND.store(bound, Ordering::Relaxed);
}

/// Every subgroup of a group, sorted by order and then member list, with
/// inclusion and normality data.
#[derive(Debug, Clone)]
pub struct SubgroupLattice {
    subgroups: Vec<Subgroup>,
    gens: Vec<Vec<usize>>,
    index: HashMap<FixedBitSet, usize>,
    normal: Vec<bool>,
    above: Vec<FixedBitSet>,
    below: Vec<FixedBitSet>,
}

impl SubgroupLattice {
    pub fn len(&self) -> usize {
        self.subgroups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subgroups.is_empty()
    }

    pub fn subgroups(&self) -> &[Subgroup] {
        &self.subgroups
    }

    pub fn get(&self, i: usize) -> &Subgroup {
        &self.subgroups[i]
    }

    pub fn index_of(&self, h: &Subgroup) -> Option<usize> {
        self.index.get(h.members()).copied()
    }

    /// Index of the subgroup generated by `seed`.
    pub fn index_of_closure(&self, g: &FiniteGroup, seed: &[usize]) -> usize {
        self.index[&closure_bits(g, seed)]
    }

    pub fn generators(&self, i: usize) -> &[usize] {
        &self.gens[i]
    }

    pub fn top(&self) -> usize {
        self.subgroups.len() - 1
    }

    pub fn is_normal(&self, i: usize) -> bool {
        self.normal[i]
    }

    /// `S_i ≤ S_j`.
    pub fn contains(&self, i: usize, j: usize) -> bool {
        self.above[i].contains(j)
    }

    /// Indices of the subgroups containing `S_i` (including `i`).
    pub fn above(&self, i: usize) -> &FixedBitSet {
        &self.above[i]
    }

    /// Indices of the subgroups of `S_j` (including `j`).
    pub fn below(&self, j: usize) -> &FixedBitSet {
        &self.below[j]
    }

    /// Indices of the maximal subgroups of `S_j`.
    pub fn maximal_in(&self, j: usize) -> Vec<usize> {
        self.below[j]
            .ones()
            .filter(|&i| i != j && self.above[i].intersection(&self.below[j]).count() == 2)
            .collect()
    }

    pub fn is_maximal(&self, i: usize) -> bool {
        i != self.top() && self.above[i].count_ones(..) == 2
    }

    /// `⟨S_i, S_j⟩` as a lattice index.
    pub fn join(&self, g: &FiniteGroup, i: usize, j: usize) -> usize {
        let mut seed = self.gens[i].clone();
        seed.extend_from_slice(&self.gens[j]);
        self.index_of_closure(g, &seed)
    }

    pub fn meet(&self, i: usize, j: usize) -> usize {
        let s = self.subgroups[i].intersection(&self.subgroups[j]);
        self.index[s.members()]
    }

    pub fn normal_subgroups(&self) -> Vec<Subgroup> {
        (0..self.len())
            .filter(|&i| self.normal[i])
            .map(|i| self.subgroups[i].clone())
            .collect()
    }
}

impl FiniteGroup {
    /// The subgroup lattice under the process-wide bound, built once.
    pub fn lattice(&self) -> Result<&SubgroupLattice> {
        match self
            .lattice
            .get_or_init(|| all_subgroups_with_bound(self, lattice_bound()).map(Arc::new))
        {
            Ok(l) => Ok(l),
            Err(e) => Err(e.clone()),
        }
    }
}

/// The full subgroup lattice, built once per group.
pub fn all_subgroups(g: &FiniteGroup) -> Result<&SubgroupLattice> {
    g.lattice()
}

/// Builds the lattice by seeding every cyclic subgroup and closing under
/// joins with cyclic subgroups until nothing new appears. Every subgroup is
/// a join of cyclic ones, so the result is closed under all pairwise joins.
pub fn all_subgroups_with_bound(g: &FiniteGroup, bound: usize) -> Result<SubgroupLattice> {
    if g.order() > bound {
        return Err(Error::LatticeBound {
            order: g.order(),
            bound,
        });
    }
    let mut found: HashMap<FixedBitSet, usize> = HashMap::new();
    let mut list: Vec<(FixedBitSet, Vec<usize>)> = Vec::new();
    let trivial = closure_bits(g, &[]);
    found.insert(trivial.clone(), 0);
    list.push((trivial, Vec::new()));
    let mut cyclic_gens = Vec::new();
    for x in 1..g.order() {
        let bits = closure_bits(g, &[x]);
        if !found.contains_key(&bits) {
            found.insert(bits.clone(), list.len());
            list.push((bits, vec![x]));
            cyclic_gens.push(x);
        }
    }
    let mut next = 0;
    while next < list.len() {
        for &x in &cyclic_gens {
            if list[next].0.contains(x) {
                continue;
            }
            let mut gens = list[next].1.clone();
            gens.push(x);
            let bits = closure_bits(g, &gens);
            if !found.contains_key(&bits) {
                found.insert(bits.clone(), list.len());
                list.push((bits, gens));
            }
        }
        next += 1;
    }
    let mut entries: Vec<(Subgroup, Vec<usize>)> = list
        .into_iter()
        .map(|(bits, gens)| (Subgroup::from_bits(bits), gens))
        .collect();
    entries.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(assemble(g, entries))
}

fn assemble(g: &FiniteGroup, entries: Vec<(Subgroup, Vec<usize>)>) -> SubgroupLattice {
    let k = entries.len();
    let (subgroups, gens): (Vec<_>, Vec<_>) = entries.into_iter().unzip();
    let index = subgroups
        .iter()
        .enumerate()
        .map(|(i, s)| (s.members().clone(), i))
        .collect();
    let normal = subgroups
        .iter()
        .zip(&gens)
        .map(|(s, sg)| is_normal_in_with(g, s, sg, g.generators()))
        .collect();
    let mut above = vec![FixedBitSet::with_capacity(k); k];
    let mut below = vec![FixedBitSet::with_capacity(k); k];
    for i in 0..k {
        for j in i..k {
            if subgroups[j].order() % subgroups[i].order() == 0 && subgroups[i].is_subgroup_of(&subgroups[j]) {
                above[i].insert(j);
                below[j].insert(i);
            }
        }
    }
    SubgroupLattice {
        subgroups,
        gens,
        index,
        normal,
        above,
        below,
    }
}

/// Independent enumeration of all subsets closed under multiplication.
///
/// Elements are decided in index order; including one replaces the current
/// set by its closure and is pruned if that closure hits an excluded element.
/// Each surviving leaf is a distinct subgroup.
pub fn brute_force_subgroups(g: &FiniteGroup) -> Vec<Subgroup> {
    fn walk(
        g: &FiniteGroup,
        from: usize,
        current: &FixedBitSet,
        gens: &mut Vec<usize>,
        excluded: &mut FixedBitSet,
        out: &mut Vec<Subgroup>,
    ) {
        let next = (from..g.order()).find(|&x| !current.contains(x) && !excluded.contains(x));
        let Some(x) = next else {
            out.push(Subgroup::from_bits(current.clone()));
            return;
        };
        gens.push(x);
        let grown = closure_bits(g, gens);
        if grown.is_disjoint(excluded) {
            walk(g, x + 1, &grown, gens, excluded, out);
        }
        gens.pop();
        excluded.insert(x);
        walk(g, x + 1, current, gens, excluded, out);
        excluded.set(x, false);
    }
    let mut out = Vec::new();
    let start = closure_bits(g, &[]);
    let mut excluded = FixedBitSet::with_capacity(g.order());
    walk(g, 1, &start, &mut Vec::new(), &mut excluded, &mut out);
    out.sort();
    out
}

/// Normal subgroups, found as joins of normal closures of single elements
/// (no lattice needed). Cached on the group.
pub fn normal_subgroups(g: &FiniteGroup) -> &[Subgroup] {
    g.normals.get_or_init(|| {
        let mut found: HashMap<FixedBitSet, usize> = HashMap::new();
        let mut list: Vec<(Subgroup, Vec<usize>)> = Vec::new();
        let trivial = Subgroup::trivial(g);
        found.insert(trivial.members().clone(), 0);
        list.push((trivial, Vec::new()));
        let mut covered = FixedBitSet::with_capacity(g.order());
        covered.insert(0);
        let mut closures = Vec::new();
        for x in 1..g.order() {
            if covered.contains(x) {
                continue;
            }
            // Everything conjugate to x has the same normal closure.
            for y in g.elements() {
                covered.insert(g.conj(y, x));
            }
            let (n, gens) = normal_closure(g, g.generators(), &[x]);
            if !found.contains_key(n.members()) {
                found.insert(n.members().clone(), list.len());
                closures.push(gens.clone());
                list.push((n, gens));
            }
        }
        let mut next = 0;
        while next < list.len() {
            for c in &closures {
                if c.iter().all(|&y| list[next].0.contains(y)) {
                    continue;
                }
                let mut gens = list[next].1.clone();
                gens.extend_from_slice(c);
                let n = Subgroup::from_bits(closure_bits(g, &gens));
                if !found.contains_key(n.members()) {
                    found.insert(n.members().clone(), list.len());
                    list.push((n, gens));
                }
            }
            next += 1;
        }
        let mut out: Vec<Subgroup> = list.into_iter().map(|(n, _)| n).collect();
        out.sort();
        out
    })
}

/// Nontrivial normal subgroups containing no smaller nontrivial normal one.
pub fn minimal_normal_subgroups(g: &FiniteGroup) -> Vec<Subgroup> {
    let normals = normal_subgroups(g);
    normals
        .iter()
        .filter(|n| !n.is_trivial())
        .filter(|n| {
            !normals
                .iter()
                .any(|m| !m.is_trivial() && m.order() < n.order() && m.is_subgroup_of(n))
        })
        .cloned()
        .collect()
}

/// Every `G`-chief factor `H/K` (pairs of normal subgroups with nothing
/// normal strictly between), returned as `(H, K)`.
pub fn chief_factors(g: &FiniteGroup) -> Vec<(Subgroup, Subgroup)> {
    let normals = normal_subgroups(g);
    let mut out = Vec::new();
    for k in normals {
        for h in normals {
            if h.order() <= k.order() || !k.is_subgroup_of(h) {
                continue;
            }
            let between = normals
                .iter()
                .any(|m| m.order() > k.order() && m.order() < h.order() && k.is_subgroup_of(m) && m.is_subgroup_of(h));
            if !between {
                out.push((h.clone(), k.clone()));
            }
        }
    }
    out
}

pub fn maximal_subgroups(g: &FiniteGroup) -> Result<Vec<Subgroup>> {
    let lat = g.lattice()?;
    Ok(lat
        .maximal_in(lat.top())
        .into_iter()
        .map(|i| lat.get(i).clone())
        .collect())
}

/// All Sylow `p`-subgroups; empty when `p` does not divide the order.
pub fn sylow_subgroups(g: &FiniteGroup, p: usize) -> Result<Vec<Subgroup>> {
    if !g.order().is_multiple_of(p) {
        return Ok(Vec::new());
    }
    let target = arith::p_part(g.order(), p);
    Ok(g.lattice()?
        .subgroups()
        .iter()
        .filter(|s| s.order() == target)
        .cloned()
        .collect())
}

/// Every Hall `π`-subgroup (order equal to the `π`-part of `|G|`).
pub fn hall_subgroups(g: &FiniteGroup, pi: &[usize]) -> Result<Vec<Subgroup>> {
    let target = arith::pi_part(g.order(), |p| pi.contains(&p));
    Ok(g.lattice()?
        .subgroups()
        .iter()
        .filter(|s| s.order() == target)
        .cloned()
        .collect())
}

pub fn hall_subgroup(g: &FiniteGroup, pi: &[usize]) -> Result<Option<Subgroup>> {
    Ok(hall_subgroups(g, pi)?.into_iter().next())
}

/// `⟨x⟩` for every element of prime-power order greater than one.
pub fn cyclic_primary_subgroups(g: &FiniteGroup) -> Vec<Subgroup> {
    let mut seen = std::collections::HashSet::new();
    let mut out = Vec::new();
    for x in 1..g.order() {
        if arith::prime_power_base(g.elem_order(x)).is_none() {
            continue;
        }
        let c = Subgroup::from_bits(closure_bits(g, &[x]));
        if seen.insert(c.members().clone()) {
            out.push(c);
        }
    }
    out.sort();
    out
}

/// All `T` with `H ≤ T ≤ G`.
pub fn intermediate_subgroups(g: &FiniteGroup, h: &Subgroup) -> Result<Vec<Subgroup>> {
    let lat = g.lattice()?;
    let i = lat.index_of(h).ok_or(Error::NotASubgroup)?;
    Ok(lat.above(i).ones().map(|j| lat.get(j).clone()).collect())
}

/// A maximal chain `1 = N_0 < … < N_k = G` of normal subgroups.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChiefSeries {
    pub terms: Vec<Subgroup>,
}

impl ChiefSeries {
    pub fn factor_orders(&self) -> Vec<usize> {
        self.terms.windows(2).map(|w| w[1].order() / w[0].order()).collect()
    }

    /// Consecutive pairs `(N_i, N_{i-1})`.
    pub fn factors(&self) -> impl Iterator<Item = (&Subgroup, &Subgroup)> {
        self.terms.windows(2).map(|w| (&w[1], &w[0]))
    }
}

/// Climbs from `1` by always taking the smallest normal subgroup strictly
/// above the current term.
pub fn chief_series(g: &FiniteGroup) -> ChiefSeries {
    let normals = normal_subgroups(g);
    let mut terms = vec![Subgroup::trivial(g)];
    while terms.last().unwrap().order() < g.order() {
        let current = terms.last().unwrap();
        let next = normals
            .iter()
            .find(|n| n.order() > current.order() && current.is_subgroup_of(n))
            .expect("the whole group is normal")
            .clone();
        terms.push(next);
    }
    ChiefSeries { terms }
}

/// An element `x` with `x A x⁻¹ = B`, if one exists.
pub fn conjugating_element(g: &FiniteGroup, a: &Subgroup, b: &Subgroup) -> Option<usize> {
    if a.order() != b.order() {
        return None;
    }
    let gens = crate::kernel::generators_of(g, a);
    g.elements().find(|&x| gens.iter().all(|&y| b.contains(g.conj(x, y))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::{generate_group, subgroup_closure, Permutation};

    fn perm(images: &[u32]) -> Permutation {
        Permutation::new(images.to_vec()).unwrap()
    }

    fn group(gens: &[&[u32]]) -> FiniteGroup {
        let gens: Vec<Permutation> = gens.iter().map(|p| perm(p)).collect();
        generate_group(&gens, "g", 5000).unwrap()
    }

    fn s3() -> FiniteGroup {
        group(&[&[1, 2, 0], &[1, 0, 2]])
    }
    fn s4() -> FiniteGroup {
        group(&[&[1, 2, 3, 0], &[1, 0, 2, 3]])
    }
    fn a4() -> FiniteGroup {
        group(&[&[1, 2, 0, 3], &[0, 2, 3, 1]])
    }
    fn a5() -> FiniteGroup {
        group(&[&[1, 2, 3, 4, 0], &[1, 2, 0, 3, 4]])
    }
    fn cyclic(n: u32) -> FiniteGroup {
        let images: Vec<u32> = (0..n).map(|i| (i + 1) % n).collect();
        group(&[&images])
    }
    fn q8() -> FiniteGroup {
        // Left regular action of Q8 = <i, j> on {±1, ±i, ±j, ±k}.
        group(&[&[2, 3, 1, 0, 6, 7, 5, 4], &[4, 5, 7, 6, 1, 0, 2, 3]])
    }

    fn orders(subs: &[Subgroup]) -> Vec<usize> {
        let mut o: Vec<usize> = subs.iter().map(|s| s.order()).collect();
        o.sort();
        o
    }

    #[test]
    fn lattice_sizes() {
        assert_eq!(cyclic(1).lattice().unwrap().len(), 1);
        assert_eq!(s3().lattice().unwrap().len(), 6);
        assert_eq!(s4().lattice().unwrap().len(), 30);
        assert_eq!(a5().lattice().unwrap().len(), 59);
    }

    #[test]
    fn brute_force_agrees_on_small_groups() {
        for g in [cyclic(1), cyclic(6), s3(), s4(), a4(), q8()] {
            let lat = g.lattice().unwrap();
            assert_eq!(brute_force_subgroups(&g), lat.subgroups());
        }
    }

    #[test]
    fn lattice_bound_is_enforced() {
        assert_eq!(
            all_subgroups_with_bound(&s4(), 10).unwrap_err(),
            Error::LatticeBound { order: 24, bound: 10 }
        );
    }

    #[test]
    fn maximal_subgroups_of_small_groups() {
        let m = maximal_subgroups(&cyclic(5)).unwrap();
        assert_eq!(m.len(), 1);
        assert!(m[0].is_trivial());
        assert_eq!(
            orders(&maximal_subgroups(&s4()).unwrap()),
            vec![6, 6, 6, 6, 8, 8, 8, 12]
        );
        assert_eq!(orders(&maximal_subgroups(&a4()).unwrap()), vec![3, 3, 3, 3, 4]);
    }

    #[test]
    fn normal_subgroups_two_routes() {
        for g in [cyclic(6), s3(), s4(), a4(), a5(), q8()] {
            assert_eq!(normal_subgroups(&g), g.lattice().unwrap().normal_subgroups().as_slice());
        }
        let c12 = cyclic(12);
        assert_eq!(normal_subgroups(&c12).len(), c12.lattice().unwrap().len());
        assert_eq!(orders(normal_subgroups(&s4())), vec![1, 4, 12, 24]);
        assert_eq!(orders(&minimal_normal_subgroups(&s4())), vec![4]);
        assert_eq!(orders(&minimal_normal_subgroups(&a5())), vec![60]);
    }

    #[test]
    fn sylow_subgroups_of_s4() {
        let g = s4();
        assert_eq!(sylow_subgroups(&g, 2).unwrap().len(), 3);
        assert_eq!(sylow_subgroups(&g, 3).unwrap().len(), 4);
        assert!(sylow_subgroups(&g, 5).unwrap().is_empty());
        let d8 = group(&[&[1, 2, 3, 0], &[2, 1, 0, 3]]);
        let p = sylow_subgroups(&d8, 2).unwrap();
        assert_eq!(p, vec![Subgroup::whole(&d8)]);
        let sylows = sylow_subgroups(&g, 2).unwrap();
        for a in &sylows {
            for b in &sylows {
                assert!(conjugating_element(&g, a, b).is_some());
            }
        }
    }

    #[test]
    fn hall_subgroups_examples() {
        let g = s3();
        assert_eq!(hall_subgroup(&g, &[2, 3, 5]).unwrap().unwrap(), Subgroup::whole(&g));
        let h = hall_subgroup(&g, &[3]).unwrap().unwrap();
        assert_eq!(h.order(), 3);
        assert!(crate::kernel::is_normal(&g, &h));
        assert!(hall_subgroup(&a5(), &[3, 5]).unwrap().is_none());
    }

    #[test]
    fn cyclic_primary_examples() {
        assert!(cyclic_primary_subgroups(&cyclic(1)).is_empty());
        assert_eq!(orders(&cyclic_primary_subgroups(&cyclic(6))), vec![2, 3]);
        assert_eq!(orders(&cyclic_primary_subgroups(&q8())), vec![2, 4, 4, 4]);
    }

    #[test]
    fn chief_series_examples() {
        assert_eq!(chief_series(&a5()).factor_orders(), vec![60]);
        assert_eq!(chief_series(&s4()).factor_orders(), vec![4, 3, 2]);
        let c6 = chief_series(&cyclic(6)).factor_orders();
        assert!(c6 == vec![2, 3] || c6 == vec![3, 2]);
    }

    #[test]
    fn intermediate_subgroup_examples() {
        let g = s3();
        assert_eq!(intermediate_subgroups(&g, &Subgroup::whole(&g)).unwrap().len(), 1);
        let t = subgroup_closure(&g, &[g.find_permutation(&perm(&[1, 0, 2])).unwrap()]);
        assert_eq!(orders(&intermediate_subgroups(&g, &t).unwrap()), vec![2, 6]);
        let s = s4();
        let v4 = subgroup_closure(
            &s,
            &[
                s.find_permutation(&perm(&[1, 0, 3, 2])).unwrap(),
                s.find_permutation(&perm(&[2, 3, 0, 1])).unwrap(),
            ],
        );
        assert_eq!(
            orders(&intermediate_subgroups(&s, &v4).unwrap()),
            vec![4, 8, 8, 8, 12, 24]
        );
    }
}
