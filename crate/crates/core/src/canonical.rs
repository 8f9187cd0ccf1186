//! Distinguished subgroups: center, hypercenter, Frattini, Fitting, socle,
//! `O_π`, the generalized Fitting subgroup `F*` and `F̃`.

use fixedbitset::FixedBitSet;

use crate::arith;
use crate::error::{Error, Result};
use crate::kernel::{
    centralizer, derived_subgroup_of, generators_of, quotient_group, section_group, subgroup_closure, FiniteGroup,
    Subgroup,
};
use crate::lattice::{chief_factors, chief_series, maximal_subgroups, minimal_normal_subgroups, normal_subgroups};

pub use crate::kernel::center;

/// Join of a family of subgroups (the trivial subgroup for an empty family).
pub fn join_all<'a>(g: &FiniteGroup, subs: impl IntoIterator<Item = &'a Subgroup>) -> Subgroup {
    let mut gens = Vec::new();
    for s in subs {
        gens.extend(generators_of(g, s));
    }
    subgroup_closure(g, &gens)
}

pub fn intersect_all<'a>(g: &FiniteGroup, subs: impl IntoIterator<Item = &'a Subgroup>) -> Subgroup {
    subs.into_iter().fold(Subgroup::whole(g), |acc, s| acc.intersection(s))
}

/// Terminal term of the upper central series. `Z_{i+1}` collects the `x`
/// whose commutators with every generator land in `Z_i`.
pub fn hypercenter(g: &FiniteGroup) -> Subgroup {
    let mut z = Subgroup::trivial(g);
    loop {
        let mut bits = FixedBitSet::with_capacity(g.order());
        for x in g.elements() {
            if g.generators().iter().all(|&y| z.contains(g.commutator(x, y))) {
                bits.insert(x);
            }
        }
        if bits.count_ones(..) == z.order() {
            return z;
        }
        z = subgroup_closure(g, &bits.ones().collect::<Vec<_>>());
    }
}

/// Intersection of all maximal subgroups (the whole group when trivial).
pub fn frattini(g: &FiniteGroup) -> Result<Subgroup> {
    Ok(intersect_all(g, &maximal_subgroups(g)?))
}

/// `Φ(G)` as the set of non-generators: `x` such that no proper subgroup
/// together with `x` generates `G`.
pub fn frattini_by_non_generators(g: &FiniteGroup) -> Result<Subgroup> {
    let lat = g.lattice()?;
    let top = lat.top();
    let mut bits = FixedBitSet::with_capacity(g.order());
    for x in g.elements() {
        let generates = (0..top).any(|i| {
            let mut seed = lat.generators(i).to_vec();
            seed.push(x);
            lat.index_of_closure(g, &seed) == top
        });
        if !generates {
            bits.insert(x);
        }
    }
    Subgroup::from_elements(g, bits.ones())
}

/// Nilpotency of `h ≤ g`: for every prime, the `p`-elements of `h` number
/// exactly the `p`-part of `|h|`, i.e. each Sylow subgroup is unique.
pub fn is_nilpotent_subgroup(g: &FiniteGroup, h: &Subgroup) -> bool {
    arith::prime_divisors(h.order()).into_iter().all(|p| {
        let count = h
            .elements()
            .filter(|&x| {
                let o = g.elem_order(x);
                o == 1 || arith::prime_power_base(o) == Some(p)
            })
            .count();
        count == arith::p_part(h.order(), p)
    })
}

pub fn is_nilpotent(g: &FiniteGroup) -> bool {
    is_nilpotent_subgroup(g, &Subgroup::whole(g))
}

pub fn is_abelian(g: &FiniteGroup) -> bool {
    g.is_abelian()
}

pub fn is_pi_group(g: &FiniteGroup, pi: &[usize]) -> bool {
    arith::prime_divisors(g.order()).iter().all(|p| pi.contains(p))
}

/// Solubility of `h ≤ g` via its derived series.
pub fn is_soluble_subgroup(g: &FiniteGroup, h: &Subgroup) -> bool {
    let mut current = h.clone();
    let mut gens = generators_of(g, h);
    loop {
        if current.is_trivial() {
            return true;
        }
        let (next, next_gens) = derived_subgroup_of(g, &gens);
        if next.order() == current.order() {
            return false;
        }
        current = next;
        gens = next_gens;
    }
}

pub fn is_soluble(g: &FiniteGroup) -> bool {
    is_soluble_subgroup(g, &Subgroup::whole(g))
}

/// Soluble with every chief factor of prime order.
pub fn is_supersoluble(g: &FiniteGroup) -> bool {
    is_soluble(g) && chief_series(g).factor_orders().into_iter().all(arith::is_prime)
}

/// Every maximal subgroup has prime index.
pub fn is_supersoluble_by_prime_index(g: &FiniteGroup) -> Result<bool> {
    Ok(maximal_subgroups(g)?
        .iter()
        .all(|m| arith::is_prime(g.order() / m.order())))
}

/// Largest normal `π`-subgroup.
pub fn o_pi(g: &FiniteGroup, pi: &[usize]) -> Subgroup {
    normal_subgroups(g)
        .iter()
        .rev()
        .find(|n| arith::prime_divisors(n.order()).iter().all(|p| pi.contains(p)))
        .cloned()
        .expect("the trivial subgroup is a normal π-subgroup")
}

/// Join of all normal nilpotent subgroups.
pub fn fitting(g: &FiniteGroup) -> Subgroup {
    let nilpotent: Vec<&Subgroup> = normal_subgroups(g)
        .iter()
        .filter(|n| is_nilpotent_subgroup(g, n))
        .collect();
    join_all(g, nilpotent)
}

/// `F(G)` as the product of the `O_p(G)`.
pub fn fitting_by_sylow_cores(g: &FiniteGroup) -> Subgroup {
    let parts: Vec<Subgroup> = g.primes().into_iter().map(|p| o_pi(g, &[p])).collect();
    join_all(g, &parts)
}

/// Join of the minimal normal subgroups.
pub fn socle(g: &FiniteGroup) -> Subgroup {
    join_all(g, &minimal_normal_subgroups(g))
}

/// `F*(G)` from `F*(G)/F(G) = Soc(F(G)C_G(F(G))/F(G))`, where the socle is
/// taken over the `G`-section: the join of the minimal normal subgroups of
/// `G` lying strictly above `F(G)` and inside `F(G)C_G(F(G))`.
pub fn generalized_fitting(g: &FiniteGroup) -> Result<Subgroup> {
    let f = fitting(g);
    let c = centralizer(g, &f);
    let n = join_all(g, [&f, &c]);
    let product_order = f.order() * c.order() / f.intersection(&c).order();
    if n.order() != product_order {
        return Err(Error::Inconsistent(format!(
            "F(G)C_G(F(G)) is not a subgroup in {}",
            g.label()
        )));
    }
    let above: Vec<&Subgroup> = normal_subgroups(g)
        .iter()
        .filter(|m| m.order() > f.order() && f.is_subgroup_of(m) && m.is_subgroup_of(&n))
        .collect();
    let minimal: Vec<&Subgroup> = above
        .iter()
        .copied()
        .filter(|m| !above.iter().any(|k| k.order() < m.order() && k.is_subgroup_of(m)))
        .collect();
    Ok(join_all(g, minimal.into_iter().chain([&f])))
}

/// `F*(G)` as the intersection of `H C_G(H/K)` over all chief factors.
pub fn generalized_fitting_by_chief_factors(g: &FiniteGroup) -> Result<Subgroup> {
    let mut result = Subgroup::whole(g);
    for (h, k) in chief_factors(g) {
        let c = section_group(g, &h, &k)?.centralizer(g)?;
        result = result.intersection(&join_all(g, [&h, &c]));
    }
    Ok(result)
}

/// `F̃(G)` as the preimage of `Soc(G/Φ(G))`. The Förster form
/// `F*(G/Φ(G))` is computed as well and must agree.
pub fn f_tilde(g: &FiniteGroup) -> Result<Subgroup> {
    let phi = frattini(g)?;
    let q = quotient_group(g, &phi)?;
    let by_socle = q.preimage(&socle(q.target()));
    let by_forster = q.preimage(&generalized_fitting(q.target())?);
    if by_socle != by_forster {
        return Err(Error::Inconsistent(format!(
            "Soc(G/Φ) and F*(G/Φ) pull back differently in {} ({} vs {})",
            g.label(),
            by_socle.order(),
            by_forster.order()
        )));
    }
    Ok(by_socle)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonicalReport {
    pub center: Subgroup,
    pub hypercenter: Subgroup,
    pub frattini: Subgroup,
    pub fitting: Subgroup,
    pub socle: Subgroup,
    pub generalized_fitting: Subgroup,
    pub f_tilde: Subgroup,
}

pub fn canonical_report(g: &FiniteGroup) -> Result<CanonicalReport> {
    Ok(CanonicalReport {
        center: center(g),
        hypercenter: hypercenter(g),
        frattini: frattini(g)?,
        fitting: fitting(g),
        socle: socle(g),
        generalized_fitting: generalized_fitting(g)?,
        f_tilde: f_tilde(g)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::is_normal;
    use crate::testing::*;

    #[test]
    fn centers_and_hypercenters() {
        let c12 = cyclic(12);
        assert_eq!(center(&c12).order(), 12);
        assert_eq!(hypercenter(&c12).order(), 12);
        let s3 = symmetric(3);
        assert!(center(&s3).is_trivial());
        assert!(hypercenter(&s3).is_trivial());
        let d8 = dihedral(4);
        assert_eq!(center(&d8).order(), 2);
        assert_eq!(hypercenter(&d8).order(), 8);
        let s3c2 = product(&s3, &cyclic(2));
        assert_eq!(hypercenter(&s3c2).order(), 2);
    }

    #[test]
    fn frattini_examples_two_routes() {
        let cases = [
            (product(&v4(), &cyclic(2)), 1),
            (symmetric(4), 1),
            (q8(), 2),
            (cyclic(4), 2),
            (cyclic(12), 2),
            (sl23(), 2),
            (cyclic(1), 1),
        ];
        for (g, order) in cases {
            let phi = frattini(&g).unwrap();
            assert_eq!(phi.order(), order, "{}", g.label());
            assert_eq!(frattini_by_non_generators(&g).unwrap(), phi);
        }
    }

    #[test]
    fn fitting_examples_two_routes() {
        for (g, order) in [(dihedral(4), 8), (symmetric(4), 4), (alternating(5), 1), (sl23(), 8)] {
            let f = fitting(&g);
            assert_eq!(f.order(), order, "{}", g.label());
            assert_eq!(fitting_by_sylow_cores(&g), f);
        }
    }

    #[test]
    fn socle_examples() {
        assert_eq!(socle(&alternating(5)).order(), 60);
        assert_eq!(socle(&symmetric(4)).order(), 4);
        assert_eq!(socle(&cyclic(6)).order(), 6);
        assert!(socle(&cyclic(1)).is_trivial());
    }

    #[test]
    fn o_pi_examples() {
        assert!(o_pi(&symmetric(3), &[5]).is_trivial());
        assert_eq!(o_pi(&symmetric(4), &[2]).order(), 4);
        assert_eq!(o_pi(&symmetric(3), &[3]).order(), 3);
    }

    #[test]
    fn generalized_fitting_examples() {
        let cases = [
            (symmetric(4), 4),
            (alternating(5), 60),
            (symmetric(5), 60),
            (sl23(), 8),
            (dihedral(6), 6),
        ];
        for (g, order) in cases {
            let f = generalized_fitting(&g).unwrap();
            assert_eq!(f.order(), order, "{}", g.label());
            assert_eq!(generalized_fitting_by_chief_factors(&g).unwrap(), f);
            assert!(is_normal(&g, &f));
        }
    }

    #[test]
    fn f_tilde_examples() {
        assert_eq!(f_tilde(&symmetric(4)).unwrap().order(), 4);
        assert_eq!(f_tilde(&q8()).unwrap().order(), 8);
        assert_eq!(f_tilde(&alternating(5)).unwrap().order(), 60);
        let g = product(&v4(), &cyclic(2));
        assert_eq!(f_tilde(&g).unwrap(), socle(&g));
    }

    #[test]
    fn structural_predicates() {
        let c12 = cyclic(12);
        assert!(is_nilpotent(&c12) && is_supersoluble(&c12) && is_soluble(&c12));
        let s3 = symmetric(3);
        assert!(is_supersoluble(&s3) && !is_nilpotent(&s3));
        let s4 = symmetric(4);
        assert!(is_soluble(&s4) && !is_supersoluble(&s4));
        assert!(!is_soluble(&alternating(5)));
        assert!(is_pi_group(&s3, &[2, 3]) && !is_pi_group(&s3, &[2]));
        for g in [c12, s3, s4, sl23(), metacyclic(7, 3, 2), alternating(4)] {
            assert_eq!(
                is_supersoluble_by_prime_index(&g).unwrap(),
                is_supersoluble(&g),
                "{}",
                g.label()
            );
            assert_eq!(hypercenter(&g).order() == g.order(), is_nilpotent(&g));
        }
    }

    #[test]
    fn report_inclusions() {
        for g in [
            symmetric(4),
            alternating(5),
            q8(),
            sl23(),
            product(&symmetric(3), &cyclic(5)),
        ] {
            let r = canonical_report(&g).unwrap();
            assert!(r.fitting.is_subgroup_of(&r.generalized_fitting));
            assert!(r.fitting.is_subgroup_of(&r.f_tilde));
            assert!(r.frattini.is_subgroup_of(&r.f_tilde));
            assert!(r.generalized_fitting.is_subgroup_of(&r.f_tilde));
            assert!(centralizer(&g, &r.generalized_fitting).is_subgroup_of(&r.generalized_fitting));
            assert!(centralizer(&g, &r.f_tilde).is_subgroup_of(&r.f_tilde));
        }
    }
}
