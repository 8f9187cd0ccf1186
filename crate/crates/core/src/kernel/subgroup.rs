use std::cmp::Ordering;
use std::fmt;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};

use super::group::FiniteGroup;

/// A subgroup of some parent [`FiniteGroup`], stored as the set of member
/// element indices. The parent is not referenced; every operation takes it
/// explicitly.
///
/// Subgroups order by size first and then by their sorted member lists.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subgroup {
    members: FixedBitSet,
    order: usize,
}

impl Subgroup {
    pub(crate) fn from_bits(members: FixedBitSet) -> Subgroup {
        let order = members.count_ones(..);
        Subgroup { members, order }
    }

    /// Validating constructor: the elements must form a subgroup of `g`.
    pub fn from_elements(g: &FiniteGroup, elements: impl IntoIterator<Item = usize>) -> Result<Subgroup> {
        let mut bits = FixedBitSet::with_capacity(g.order());
        for x in elements {
            if x >= g.order() {
                return Err(Error::NotASubgroup);
            }
            bits.insert(x);
        }
        bits.insert(0);
        let sub = Subgroup::from_bits(bits);
        let closed = sub
            .elements()
            .all(|a| sub.contains(g.inv(a)) && sub.elements().all(|b| sub.contains(g.mul(a, b))));
        if closed {
            Ok(sub)
        } else {
            Err(Error::NotASubgroup)
        }
    }

    pub fn trivial(g: &FiniteGroup) -> Subgroup {
        let mut bits = FixedBitSet::with_capacity(g.order());
        bits.insert(0);
        Subgroup::from_bits(bits)
    }

    pub fn whole(g: &FiniteGroup) -> Subgroup {
        let mut bits = FixedBitSet::with_capacity(g.order());
        bits.insert_range(..);
        Subgroup::from_bits(bits)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }

    pub fn contains(&self, x: usize) -> bool {
        self.members.contains(x)
    }

    pub fn members(&self) -> &FixedBitSet {
        &self.members
    }

    /// Members in increasing index order.
    pub fn elements(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.ones()
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.elements().collect()
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.order <= other.order && self.members.is_subset(&other.members)
    }

    pub fn intersection(&self, other: &Subgroup) -> Subgroup {
        let mut bits = self.members.clone();
        bits.intersect_with(&other.members);
        Subgroup::from_bits(bits)
    }

    pub fn index_in(&self, other: &Subgroup) -> usize {
        other.order / self.order
    }
}

impl Ord for Subgroup {
    fn cmp(&self, other: &Self) -> Ordering {
        self.order
            .cmp(&other.order)
            .then_with(|| self.members.ones().cmp(other.members.ones()))
    }
}

impl PartialOrd for Subgroup {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subgroup(order {}: {:?})", self.order, self.to_vec())
    }
}

pub(crate) fn closure_bits(g: &FiniteGroup, gens: &[usize]) -> FixedBitSet {
    let mut bits = FixedBitSet::with_capacity(g.order());
    bits.insert(0);
    let gens: Vec<usize> = gens.iter().copied().filter(|&x| x != 0).collect();
    let mut stack = vec![0];
    while let Some(x) = stack.pop() {
        for &s in &gens {
            let y = g.mul(x, s);
            if !bits.put(y) {
                stack.push(y);
            }
        }
    }
    bits
}

/// The subgroup generated by `seed` (the trivial subgroup for an empty seed).
pub fn subgroup_closure(g: &FiniteGroup, seed: &[usize]) -> Subgroup {
    Subgroup::from_bits(closure_bits(g, seed))
}

/// A small generating set of `h`, picked greedily by decreasing element order.
pub fn generators_of(g: &FiniteGroup, h: &Subgroup) -> Vec<usize> {
    let mut candidates: Vec<usize> = h.elements().filter(|&x| x != 0).collect();
    candidates.sort_by_key(|&x| (std::cmp::Reverse(g.elem_order(x)), x));
    let mut gens = Vec::new();
    let mut span = closure_bits(g, &gens);
    for x in candidates {
        if span.count_ones(..) == h.order() {
            break;
        }
        if !span.contains(x) {
            gens.push(x);
            span = closure_bits(g, &gens);
        }
    }
    gens
}

pub fn centralizer(g: &FiniteGroup, s: &Subgroup) -> Subgroup {
    let gens = generators_of(g, s);
    let mut bits = FixedBitSet::with_capacity(g.order());
    for x in g.elements() {
        if gens.iter().all(|&y| g.mul(x, y) == g.mul(y, x)) {
            bits.insert(x);
        }
    }
    Subgroup::from_bits(bits)
}

pub fn center(g: &FiniteGroup) -> Subgroup {
    centralizer(g, &Subgroup::whole(g))
}

/// `x h x⁻¹ ∈ h` for every generator of `h`.
fn normalizes(g: &FiniteGroup, x: usize, h: &Subgroup, h_gens: &[usize]) -> bool {
    h_gens.iter().all(|&y| h.contains(g.conj(x, y)))
}

pub fn normalizer(g: &FiniteGroup, h: &Subgroup) -> Subgroup {
    let gens = generators_of(g, h);
    let mut bits = FixedBitSet::with_capacity(g.order());
    for x in g.elements() {
        if normalizes(g, x, h, &gens) {
            bits.insert(x);
        }
    }
    Subgroup::from_bits(bits)
}

/// Whether `h` is normal in `g`.
pub fn is_normal(g: &FiniteGroup, h: &Subgroup) -> bool {
    let h_gens = generators_of(g, h);
    g.generators().iter().all(|&x| normalizes(g, x, h, &h_gens))
}

/// Whether `h` is normal in the subgroup `t` (both subgroups of `g`).
pub fn is_normal_in(g: &FiniteGroup, h: &Subgroup, t: &Subgroup) -> bool {
    if !h.is_subgroup_of(t) {
        return false;
    }
    let h_gens = generators_of(g, h);
    generators_of(g, t).iter().all(|&x| normalizes(g, x, h, &h_gens))
}

pub(crate) fn is_normal_in_with(g: &FiniteGroup, h: &Subgroup, h_gens: &[usize], t_gens: &[usize]) -> bool {
    t_gens.iter().all(|&x| normalizes(g, x, h, h_gens))
}

/// `x h x⁻¹`.
pub fn conjugate(g: &FiniteGroup, h: &Subgroup, x: usize) -> Subgroup {
    let mut bits = FixedBitSet::with_capacity(g.order());
    for y in h.elements() {
        bits.insert(g.conj(x, y));
    }
    Subgroup::from_bits(bits)
}

/// The largest normal subgroup of `g` inside `h`: the members whose whole
/// conjugacy class lies in `h`.
pub fn normal_core(g: &FiniteGroup, h: &Subgroup) -> Subgroup {
    let mut bits = FixedBitSet::with_capacity(g.order());
    for y in h.elements() {
        if g.elements().all(|x| h.contains(g.conj(x, y))) {
            bits.insert(y);
        }
    }
    Subgroup::from_bits(bits)
}

/// `Core_T(M)` for `m ≤ t`, given generators of `t`. Refines `m` until it
/// is closed under conjugation by the generators.
pub(crate) fn core_in(g: &FiniteGroup, m: &Subgroup, t_gens: &[usize]) -> Subgroup {
    let mut bits = m.members().clone();
    loop {
        let mut changed = false;
        for y in m.elements() {
            if bits.contains(y) && t_gens.iter().any(|&x| !bits.contains(g.conj(x, y))) {
                bits.set(y, false);
                changed = true;
            }
        }
        if !changed {
            return Subgroup::from_bits(bits);
        }
    }
}

pub fn join(g: &FiniteGroup, a: &Subgroup, b: &Subgroup) -> Subgroup {
    let mut gens = generators_of(g, a);
    gens.extend(generators_of(g, b));
    subgroup_closure(g, &gens)
}

/// The element set `{a b : a ∈ A, b ∈ B}`.
pub fn product_set(g: &FiniteGroup, a: &Subgroup, b: &Subgroup) -> FixedBitSet {
    let mut bits = FixedBitSet::with_capacity(g.order());
    for x in a.elements() {
        for y in b.elements() {
            bits.insert(g.mul(x, y));
        }
    }
    bits
}

/// The normal closure of `seeds` in the subgroup generated by `ambient_gens`,
/// with a generating set for it.
pub fn normal_closure(g: &FiniteGroup, ambient_gens: &[usize], seeds: &[usize]) -> (Subgroup, Vec<usize>) {
    let mut gens: Vec<usize> = seeds.iter().copied().filter(|&x| x != 0).collect();
    gens.dedup();
    let mut bits = closure_bits(g, &gens);
    let mut i = 0;
    while i < gens.len() {
        let s = gens[i];
        for &a in ambient_gens {
            let c = g.conj(a, s);
            if !bits.contains(c) {
                gens.push(c);
                bits = closure_bits(g, &gens);
            }
        }
        i += 1;
    }
    (Subgroup::from_bits(bits), gens)
}

/// The derived subgroup of the subgroup generated by `gens`, with generators.
pub(crate) fn derived_subgroup_of(g: &FiniteGroup, gens: &[usize]) -> (Subgroup, Vec<usize>) {
    let mut seeds = Vec::new();
    for (i, &a) in gens.iter().enumerate() {
        for &b in &gens[i + 1..] {
            let c = g.commutator(a, b);
            if c != 0 && !seeds.contains(&c) {
                seeds.push(c);
            }
        }
    }
    normal_closure(g, gens, &seeds)
}

pub fn derived_subgroup(g: &FiniteGroup) -> Subgroup {
    derived_subgroup_of(g, g.generators()).0
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::{generate_group, Permutation};

    fn perm(images: &[u32]) -> Permutation {
        Permutation::new(images.to_vec()).unwrap()
    }

    fn sym(n: u32) -> FiniteGroup {
        let cycle: Vec<u32> = (0..n).map(|i| (i + 1) % n).collect();
        let mut t: Vec<u32> = (0..n).collect();
        t.swap(0, 1);
        generate_group(&[perm(&cycle), perm(&t)], format!("S{n}"), 5000).unwrap()
    }

    fn elem(g: &FiniteGroup, images: &[u32]) -> usize {
        g.find_permutation(&perm(images)).unwrap()
    }

    fn sub(g: &FiniteGroup, gens: &[&[u32]]) -> Subgroup {
        let idx: Vec<usize> = gens.iter().map(|p| elem(g, p)).collect();
        subgroup_closure(g, &idx)
    }

    fn v4(g: &FiniteGroup) -> Subgroup {
        sub(g, &[&[1, 0, 3, 2], &[2, 3, 0, 1]])
    }

    fn d8(g: &FiniteGroup) -> Subgroup {
        sub(g, &[&[1, 2, 3, 0], &[2, 1, 0, 3]])
    }

    #[test]
    fn closures() {
        let s3 = sym(3);
        assert!(subgroup_closure(&s3, &[]).is_trivial());
        assert_eq!(subgroup_closure(&s3, s3.generators()).order(), 6);
        assert_eq!(sub(&s3, &[&[1, 0, 2], &[2, 1, 0]]).order(), 6);
    }

    #[test]
    fn centralizers() {
        let s3 = sym(3);
        assert_eq!(centralizer(&s3, &Subgroup::trivial(&s3)).order(), 6);
        let c3 = sub(&s3, &[&[1, 2, 0]]);
        assert_eq!(centralizer(&s3, &c3), c3);
        let s4 = sym(4);
        assert_eq!(centralizer(&s4, &v4(&s4)), v4(&s4));
    }

    #[test]
    fn normalizers() {
        let s3 = sym(3);
        let whole = Subgroup::whole(&s3);
        assert_eq!(normalizer(&s3, &whole), whole);
        let t = sub(&s3, &[&[1, 0, 2]]);
        assert_eq!(normalizer(&s3, &t), t);
        let s4 = sym(4);
        let p3 = sub(&s4, &[&[1, 2, 0, 3]]);
        assert_eq!(normalizer(&s4, &p3).order(), 6);
    }

    #[test]
    fn cores() {
        let s4 = sym(4);
        assert_eq!(normal_core(&s4, &v4(&s4)), v4(&s4));
        let s3 = sym(3);
        assert!(normal_core(&s3, &sub(&s3, &[&[1, 0, 2]])).is_trivial());
        assert_eq!(normal_core(&s4, &d8(&s4)), v4(&s4));
        let gens = s4.generators().to_vec();
        assert_eq!(core_in(&s4, &d8(&s4), &gens), v4(&s4));
    }

    #[test]
    fn normality_and_derived_subgroups() {
        let s4 = sym(4);
        assert!(is_normal(&s4, &v4(&s4)));
        assert!(!is_normal(&s4, &d8(&s4)));
        assert!(is_normal_in(&s4, &v4(&s4), &d8(&s4)));
        let a4 = derived_subgroup(&s4);
        assert_eq!(a4.order(), 12);
        let gens = generators_of(&s4, &a4);
        assert_eq!(derived_subgroup_of(&s4, &gens).0, v4(&s4));
    }

    #[test]
    fn from_elements_validates() {
        let s3 = sym(3);
        assert!(Subgroup::from_elements(&s3, [elem(&s3, &[1, 0, 2])]).is_ok());
        assert_eq!(
            Subgroup::from_elements(&s3, [elem(&s3, &[1, 2, 0])]).unwrap_err(),
            Error::NotASubgroup
        );
    }

    #[test]
    fn subgroup_ordering_is_by_size_then_members() {
        let s3 = sym(3);
        let a = sub(&s3, &[&[1, 0, 2]]);
        let b = sub(&s3, &[&[0, 2, 1]]);
        let c3 = sub(&s3, &[&[1, 2, 0]]);
        assert!(a < c3 && b < c3);
        assert_eq!(a.cmp(&b), a.to_vec().cmp(&b.to_vec()));
    }
}
