use std::sync::Arc;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};

use super::group::FiniteGroup;
use super::subgroup::Subgroup;

/// A direct or semidirect product `N ⋊ Q`, with the coordinates of its
/// elements. The pair `(n, q)` lives at index `q * |N| + n`.
#[derive(Debug, Clone)]
pub struct ProductGroup {
    group: FiniteGroup,
    normal_order: usize,
    top_order: usize,
}

impl ProductGroup {
    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn into_group(self) -> FiniteGroup {
        self.group
    }

    pub fn element(&self, n: usize, q: usize) -> usize {
        q * self.normal_order + n
    }

    pub fn coordinates(&self, x: usize) -> (usize, usize) {
        (x % self.normal_order, x / self.normal_order)
    }

    /// The canonical copy `{(n, 1)}` of the normal factor.
    pub fn normal_factor(&self) -> Subgroup {
        let mut bits = FixedBitSet::with_capacity(self.group.order());
        bits.insert_range(0..self.normal_order);
        Subgroup::from_bits(bits)
    }

    /// The canonical complement `{(1, q)}`.
    pub fn top_factor(&self) -> Subgroup {
        let mut bits = FixedBitSet::with_capacity(self.group.order());
        for q in 0..self.top_order {
            bits.insert(self.element(0, q));
        }
        Subgroup::from_bits(bits)
    }
}

fn check_bound(order: usize, bound: usize) -> Result<()> {
    if order > bound {
        Err(Error::OrderBound { bound })
    } else {
        Ok(())
    }
}

/// `A × B` with componentwise multiplication.
pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup, bound: usize) -> Result<ProductGroup> {
    let order = a.order() * b.order();
    check_bound(order, bound)?;
    let label = format!("{} x {}", a.label(), b.label());
    Ok(ProductGroup {
        group: FiniteGroup::from_product(label, Arc::new(a.clone()), Arc::new(b.clone()), None),
        normal_order: a.order(),
        top_order: b.order(),
    })
}

/// `N ⋊ Q` where `action[q][n]` is the image of `n` under the automorphism
/// attached to `q`. Requires `action(q1 q2) = action(q1) ∘ action(q2)`;
/// everything is validated exhaustively.
pub fn semidirect_product(
    n: &FiniteGroup,
    q: &FiniteGroup,
    action: &[Vec<usize>],
    bound: usize,
) -> Result<ProductGroup> {
    let order = n.order() * q.order();
    check_bound(order, bound)?;
    validate_action(n, q, action)?;
    let label = format!("{} : {}", n.label(), q.label());
    Ok(semidirect_unchecked(n, q, action, label))
}

pub(crate) fn semidirect_unchecked(
    n: &FiniteGroup,
    q: &FiniteGroup,
    action: &[Vec<usize>],
    label: String,
) -> ProductGroup {
    let flat: Vec<u32> = action.iter().flatten().map(|&x| x as u32).collect();
    ProductGroup {
        group: FiniteGroup::from_product(label, Arc::new(n.clone()), Arc::new(q.clone()), Some(Arc::new(flat))),
        normal_order: n.order(),
        top_order: q.order(),
    }
}

pub(crate) fn validate_action(n: &FiniteGroup, q: &FiniteGroup, action: &[Vec<usize>]) -> Result<()> {
    if action.len() != q.order() {
        return Err(Error::InvalidAction(format!(
            "expected {} automorphisms, got {}",
            q.order(),
            action.len()
        )));
    }
    for (qi, map) in action.iter().enumerate() {
        if map.len() != n.order() {
            return Err(Error::InvalidAction(format!("map for {qi} has the wrong length")));
        }
        let mut seen = vec![false; n.order()];
        for &y in map {
            if y >= n.order() || seen[y] {
                return Err(Error::InvalidAction(format!("map for {qi} is not a bijection")));
            }
            seen[y] = true;
        }
        for a in n.elements() {
            for b in n.elements() {
                if map[n.mul(a, b)] != n.mul(map[a], map[b]) {
                    return Err(Error::InvalidAction(format!("map for {qi} is not a homomorphism")));
                }
            }
        }
    }
    if action[0].iter().enumerate().any(|(i, &x)| i != x) {
        return Err(Error::InvalidAction("identity does not act trivially".into()));
    }
    for q1 in q.elements() {
        for q2 in q.elements() {
            let composite = &action[q.mul(q1, q2)];
            if n.elements().any(|x| composite[x] != action[q1][action[q2][x]]) {
                return Err(Error::InvalidAction(format!(
                    "action is not a homomorphism at ({q1}, {q2})"
                )));
            }
        }
    }
    Ok(())
}
