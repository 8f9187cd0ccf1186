use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::arith;
use crate::error::{Error, Result};
use crate::lattice::SubgroupLattice;

use super::perm::Permutation;
use super::subgroup::Subgroup;

/// Default cap on the number of elements enumerated from generators.
pub const DEFAULT_ORDER_BOUND: usize = 5000;

/// Groups up to this order get an explicit multiplication table; larger
/// products and permutation groups multiply on the fly.
pub(crate) const TABLE_LIMIT: usize = 2048;

/// Tables up to this order are checked for associativity on construction.
const ASSOCIATIVITY_CHECK_LIMIT: usize = 200;

#[derive(Clone)]
pub(crate) enum MulRep {
    Table(Vec<u16>),
    Perm(HashMap<Permutation, u32>),
    /// Pairs `(n, q)` stored at index `q * |N| + n`, multiplied as
    /// `(n1, q1)(n2, q2) = (n1 * act(q1)(n2), q1 q2)`. `action == None` is the
    /// trivial action.
    Product {
        normal: Arc<FiniteGroup>,
        top: Arc<FiniteGroup>,
        action: Option<Arc<Vec<u32>>>,
    },
}

/// An explicitly enumerated finite group. Elements are `0..order` and `0`
/// is always the identity.
#[derive(Clone)]
pub struct FiniteGroup {
    label: String,
    order: usize,
    mul: MulRep,
    inv: Vec<u32>,
    elem_orders: Vec<u32>,
    generators: Vec<usize>,
    realization: Option<Vec<Permutation>>,
    pub(crate) normals: OnceLock<Vec<Subgroup>>,
    pub(crate) lattice: OnceLock<Result<Arc<SubgroupLattice>>>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("label", &self.label)
            .field("order", &self.order)
            .finish()
    }
}

impl FiniteGroup {
    pub(crate) fn assemble(
        label: String,
        order: usize,
        mul: MulRep,
        generators: Option<Vec<usize>>,
        realization: Option<Vec<Permutation>>,
    ) -> FiniteGroup {
        let mut group = FiniteGroup {
            label,
            order,
            mul,
            inv: Vec::new(),
            elem_orders: Vec::new(),
            generators: Vec::new(),
            realization,
            normals: OnceLock::new(),
            lattice: OnceLock::new(),
        };
        let mut inv = vec![0u32; order];
        let mut elem_orders = vec![1u32; order];
        for x in 1..order {
            let mut power = x;
            let mut k = 1;
            let mut last = 0;
            while power != 0 {
                last = power;
                power = group.mul(power, x);
                k += 1;
            }
            elem_orders[x] = k;
            inv[x] = last as u32;
        }
        group.inv = inv;
        group.elem_orders = elem_orders;
        group.generators = match generators {
            Some(g) => g.into_iter().filter(|&x| x != 0).collect(),
            None => group.greedy_generators(),
        };
        group
    }

    /// Builds a group from a full multiplication table (`table[i * n + j]`).
    ///
    /// Checks that `0` is the identity and that every row and column is a
    /// permutation; tables of order at most 200 are also checked for
    /// associativity.
    pub fn from_table(label: impl Into<String>, order: usize, table: &[usize]) -> Result<Self> {
        if order == 0 || table.len() != order * order {
            return Err(Error::InvalidTable(format!(
                "expected {} entries for order {order}",
                order * order
            )));
        }
        if order > u16::MAX as usize + 1 {
            return Err(Error::OrderBound {
                bound: u16::MAX as usize + 1,
            });
        }
        for i in 0..order {
            if table[i] != i || table[i * order] != i {
                return Err(Error::InvalidTable("index 0 is not the identity".into()));
            }
            let mut row = vec![false; order];
            let mut col = vec![false; order];
            for j in 0..order {
                let r = table[i * order + j];
                let c = table[j * order + i];
                if r >= order || c >= order || row[r] || col[c] {
                    return Err(Error::InvalidTable(format!("row or column {i} is not a permutation")));
                }
                row[r] = true;
                col[c] = true;
            }
        }
        let group = FiniteGroup::assemble(
            label.into(),
            order,
            MulRep::Table(table.iter().map(|&x| x as u16).collect()),
            None,
            None,
        );
        if order <= ASSOCIATIVITY_CHECK_LIMIT {
            group.check_associative()?;
        }
        Ok(group)
    }

    /// Table constructor for internally produced tables that are correct by
    /// construction.
    pub(crate) fn from_table_unchecked(
        label: String,
        order: usize,
        table: Vec<u16>,
        generators: Option<Vec<usize>>,
    ) -> FiniteGroup {
        FiniteGroup::assemble(label, order, MulRep::Table(table), generators, None)
    }

    pub(crate) fn from_product(
        label: String,
        normal: Arc<FiniteGroup>,
        top: Arc<FiniteGroup>,
        action: Option<Arc<Vec<u32>>>,
    ) -> FiniteGroup {
        let n = normal.order();
        let order = n * top.order();
        let mut generators: Vec<usize> = normal.generators().to_vec();
        generators.extend(top.generators().iter().map(|&q| q * n));
        let lazy = MulRep::Product { normal, top, action };
        if order <= TABLE_LIMIT {
            let scratch = FiniteGroup {
                label: String::new(),
                order,
                mul: lazy,
                inv: Vec::new(),
                elem_orders: Vec::new(),
                generators: Vec::new(),
                realization: None,
                normals: OnceLock::new(),
                lattice: OnceLock::new(),
            };
            let mut table = Vec::with_capacity(order * order);
            for i in 0..order {
                for j in 0..order {
                    table.push(scratch.mul(i, j) as u16);
                }
            }
            FiniteGroup::from_table_unchecked(label, order, table, Some(generators))
        } else {
            FiniteGroup::assemble(label, order, lazy, Some(generators), None)
        }
    }

    pub(crate) fn from_permutations(
        label: String,
        elements: Vec<Permutation>,
        right_gen: Vec<Vec<u32>>,
        parent: Vec<(usize, usize)>,
        gen_indices: Vec<usize>,
    ) -> FiniteGroup {
        let order = elements.len();
        let mul = if order <= TABLE_LIMIT {
            // Row i is filled along the enumeration tree: element j = parent(j) * gen.
            let mut table = vec![0u16; order * order];
            for i in 0..order {
                table[i * order] = i as u16;
                for j in 1..order {
                    let (k, g) = parent[j];
                    let ik = table[i * order + k] as usize;
                    table[i * order + j] = right_gen[ik][g] as u16;
                }
            }
            MulRep::Table(table)
        } else {
            MulRep::Perm(
                elements
                    .iter()
                    .enumerate()
                    .map(|(i, p)| (p.clone(), i as u32))
                    .collect(),
            )
        };
        FiniteGroup::assemble(label, order, mul, Some(gen_indices), Some(elements))
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        match &self.mul {
            MulRep::Table(t) => t[a * self.order + b] as usize,
            MulRep::Perm(index) => {
                let perms = self.realization.as_ref().expect("permutation realization");
                index[&perms[a].compose_unchecked(&perms[b])] as usize
            }
            MulRep::Product { normal, top, action } => {
                let n = normal.order();
                let (q1, n1) = (a / n, a % n);
                let (q2, n2) = (b / n, b % n);
                let moved = match action {
                    Some(act) => act[q1 * n + n2] as usize,
                    None => n2,
                };
                top.mul(q1, q2) * n + normal.mul(n1, moved)
            }
        }
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    /// `g a g⁻¹`.
    #[inline]
    pub fn conj(&self, g: usize, a: usize) -> usize {
        self.mul(self.mul(g, a), self.inv(g))
    }

    /// `a⁻¹ b⁻¹ a b`.
    pub fn commutator(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b))
    }

    pub fn pow(&self, a: usize, k: usize) -> usize {
        let mut out = 0;
        for _ in 0..k % self.elem_order(a) {
            out = self.mul(out, a);
        }
        out
    }

    pub fn elem_order(&self, a: usize) -> usize {
        self.elem_orders[a] as usize
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn realization(&self) -> Option<&[Permutation]> {
        self.realization.as_deref()
    }

    /// Index of a permutation in the realization, if there is one.
    pub fn find_permutation(&self, p: &Permutation) -> Option<usize> {
        match &self.mul {
            MulRep::Perm(index) => index.get(p).map(|&i| i as usize),
            _ => self.realization.as_ref()?.iter().position(|q| q == p),
        }
    }

    pub fn is_abelian(&self) -> bool {
        let g = &self.generators;
        g.iter().all(|&a| g.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn exponent(&self) -> usize {
        self.elem_orders.iter().fold(1usize, |acc, &o| lcm(acc, o as usize))
    }

    /// Prime divisors of the order.
    pub fn primes(&self) -> Vec<usize> {
        arith::prime_divisors(self.order)
    }

    fn greedy_generators(&self) -> Vec<usize> {
        let mut candidates: Vec<usize> = (1..self.order).collect();
        candidates.sort_by_key(|&x| (std::cmp::Reverse(self.elem_order(x)), x));
        let mut gens = Vec::new();
        let mut span = super::subgroup::closure_bits(self, &gens);
        for x in candidates {
            if span.count_ones(..) == self.order {
                break;
            }
            if !span.contains(x) {
                gens.push(x);
                span = super::subgroup::closure_bits(self, &gens);
            }
        }
        gens
    }

    fn check_associative(&self) -> Result<()> {
        for a in 0..self.order {
            for b in 0..self.order {
                let ab = self.mul(a, b);
                for c in 0..self.order {
                    if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                        return Err(Error::InvalidTable(format!("not associative at ({a}, {b}, {c})")));
                    }
                }
            }
        }
        Ok(())
    }

    /// Exhaustive check of the group axioms and of the generating set.
    pub fn validate(&self) -> Result<()> {
        for a in 0..self.order {
            if self.mul(0, a) != a || self.mul(a, 0) != a {
                return Err(Error::InvalidTable(format!("0 is not an identity for {a}")));
            }
            if self.mul(a, self.inv(a)) != 0 || self.mul(self.inv(a), a) != 0 {
                return Err(Error::InvalidTable(format!("bad inverse for {a}")));
            }
        }
        self.check_associative()?;
        if super::subgroup::closure_bits(self, &self.generators).count_ones(..) != self.order {
            return Err(Error::InvalidTable("generators do not generate".into()));
        }
        Ok(())
    }

    /// A `(order, abelian, exponent)` fingerprint.
    pub fn fingerprint(&self) -> (usize, bool, usize) {
        (self.order, self.is_abelian(), self.exponent())
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

/// Enumerates the permutation group generated by `gens`.
///
/// Elements are numbered in breadth-first order of right multiplication by
/// the generators, starting with the identity at index 0.
pub fn generate_group(gens: &[Permutation], label: impl Into<String>, order_bound: usize) -> Result<FiniteGroup> {
    let degree = gens.first().ok_or(Error::EmptyGenerators)?.degree();
    if let Some(bad) = gens.iter().find(|g| g.degree() != degree) {
        return Err(Error::DegreeMismatch(degree, bad.degree()));
    }
    let identity = Permutation::identity(degree);
    let mut elements = vec![identity.clone()];
    let mut index: HashMap<Permutation, usize> = HashMap::from([(identity, 0)]);
    let mut parent = vec![(0usize, 0usize)];
    let mut right_gen: Vec<Vec<u32>> = Vec::new();
    let mut next = 0;
    while next < elements.len() {
        let mut row = Vec::with_capacity(gens.len());
        for (gi, g) in gens.iter().enumerate() {
            let product = elements[next].compose_unchecked(g);
            let idx = match index.get(&product) {
                Some(&i) => i,
                None => {
                    let i = elements.len();
                    if i >= order_bound {
                        return Err(Error::OrderBound { bound: order_bound });
                    }
                    index.insert(product.clone(), i);
                    elements.push(product);
                    parent.push((next, gi));
                    i
                }
            };
            row.push(idx as u32);
        }
        right_gen.push(row);
        next += 1;
    }
    let gen_indices = gens.iter().map(|g| index[g]).collect();
    Ok(FiniteGroup::from_permutations(
        label.into(),
        elements,
        right_gen,
        parent,
        gen_indices,
    ))
}
