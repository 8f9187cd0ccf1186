//! Explicit finite groups and element/subgroup arithmetic.

mod group;
mod perm;
mod product;
mod section;
mod subgroup;

pub use group::{generate_group, FiniteGroup, DEFAULT_ORDER_BOUND};
pub use perm::{compose_permutations, Permutation};
pub use product::{direct_product, semidirect_product, ProductGroup};
pub use section::{quotient_group, section_group, QuotientMap, Section};
pub use subgroup::{
    center, centralizer, conjugate, derived_subgroup, generators_of, is_normal, is_normal_in, join, normal_closure,
    normal_core, normalizer, product_set, subgroup_closure, Subgroup,
};

pub(crate) use product::semidirect_unchecked;
#[cfg(test)]
pub(crate) use product::validate_action;
pub(crate) use subgroup::{closure_bits, core_in, derived_subgroup_of, is_normal_in_with};

/// `H` as a group in its own right, with the embedding of its elements
/// into the parent (`embedding[i]` is the parent index of element `i`).
pub fn induced_group(g: &FiniteGroup, h: &Subgroup) -> (FiniteGroup, Vec<usize>) {
    let embedding: Vec<usize> = h.to_vec();
    let mut local = vec![u32::MAX; g.order()];
    for (i, &x) in embedding.iter().enumerate() {
        local[x] = i as u32;
    }
    let m = embedding.len();
    let mut table = Vec::with_capacity(m * m);
    for &a in &embedding {
        for &b in &embedding {
            table.push(local[g.mul(a, b)] as u16);
        }
    }
    let gens = generators_of(g, h).into_iter().map(|x| local[x] as usize).collect();
    let label = format!("{}<{}>", g.label(), m);
    (
        FiniteGroup::from_table_unchecked(label, m, table, Some(gens)),
        embedding,
    )
}
