//! Schmidt subgroups and N-critical graphs.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::arith;
use crate::canonical::is_nilpotent_subgroup;
use crate::error::{Error, Result};
use crate::formations::SigmaPartition;
use crate::kernel::{closure_bits, FiniteGroup, Subgroup};
use crate::lattice::SubgroupLattice;
use crate::par::Execution;

fn p_elements(g: &FiniteGroup, h: &Subgroup, p: usize) -> Vec<usize> {
    h.elements()
        .filter(|&x| {
            let o = g.elem_order(x);
            o == 1 || arith::prime_power_base(o) == Some(p)
        })
        .collect()
}

/// `h` has a normal (equivalently, unique) Sylow `p`-subgroup.
fn has_normal_sylow(g: &FiniteGroup, h: &Subgroup, p: usize) -> bool {
    p_elements(g, h, p).len() == arith::p_part(h.order(), p)
}

/// The `(p, q)` signature of a Schmidt group `h`: `p` is the prime with a
/// normal Sylow subgroup.
fn signature_of(g: &FiniteGroup, h: &Subgroup) -> Result<(usize, usize)> {
    let primes = arith::prime_divisors(h.order());
    let [a, b] = primes[..] else {
        return Err(Error::Inconsistent(format!(
            "Schmidt subgroup of order {} has {} prime divisors",
            h.order(),
            primes.len()
        )));
    };
    match (has_normal_sylow(g, h, a), has_normal_sylow(g, h, b)) {
        (true, false) => Ok((a, b)),
        (false, true) => Ok((b, a)),
        _ => Err(Error::Inconsistent(format!(
            "Schmidt subgroup of order {} lacks a unique normal Sylow subgroup",
            h.order()
        ))),
    }
}

fn schmidt_in_lattice(lat: &SubgroupLattice, nilpotent: &[bool], i: usize) -> bool {
    !nilpotent[i] && lat.maximal_in(i).into_iter().all(|m| nilpotent[m])
}

/// Non-nilpotent with every maximal subgroup nilpotent.
pub fn is_schmidt(g: &FiniteGroup) -> Result<bool> {
    Ok(schmidt_signature(g)?.is_some())
}

pub fn schmidt_signature(g: &FiniteGroup) -> Result<Option<(usize, usize)>> {
    let lat = g.lattice()?;
    let top = lat.top();
    let whole = lat.get(top);
    if is_nilpotent_subgroup(g, whole) {
        return Ok(None);
    }
    if lat
        .maximal_in(top)
        .into_iter()
        .any(|m| !is_nilpotent_subgroup(g, lat.get(m)))
    {
        return Ok(None);
    }
    signature_of(g, whole).map(Some)
}

/// Two primes, a normal Sylow subgroup for exactly one of them and a cyclic
/// Sylow subgroup for the other. Reported for Schmidt subgroups, never
/// enforced.
pub fn schmidt_structure_holds(g: &FiniteGroup, h: &Subgroup) -> bool {
    let Ok((p, q)) = signature_of(g, h) else {
        return false;
    };
    let q_part = arith::p_part(h.order(), q);
    !has_normal_sylow(g, h, q) && has_normal_sylow(g, h, p) && h.elements().any(|x| g.elem_order(x) == q_part)
}

/// Directed graph on primes; every edge remembers which groups produced it.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct NCriticalGraph {
    vertices: BTreeSet<usize>,
    edges: BTreeMap<(usize, usize), BTreeSet<String>>,
}

impl NCriticalGraph {
    pub fn vertices(&self) -> &BTreeSet<usize> {
        &self.vertices
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.edges.keys().copied().collect()
    }

    pub fn has_edge(&self, p: usize, q: usize) -> bool {
        self.edges.contains_key(&(p, q))
    }

    /// Labels of the groups contributing the edge.
    pub fn provenance(&self, p: usize, q: usize) -> Option<&BTreeSet<String>> {
        self.edges.get(&(p, q))
    }

    pub fn adjacency(&self) -> BTreeMap<usize, Vec<usize>> {
        let mut adj: BTreeMap<usize, Vec<usize>> = self.vertices.iter().map(|&v| (v, Vec::new())).collect();
        for &(p, q) in self.edges.keys() {
            adj.entry(p).or_default().push(q);
        }
        adj
    }

    pub fn union_with(&mut self, other: &NCriticalGraph) {
        self.vertices.extend(other.vertices.iter().copied());
        for (edge, sources) in &other.edges {
            self.edges.entry(*edge).or_default().extend(sources.iter().cloned());
        }
    }
}

impl fmt::Display for NCriticalGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let edges: Vec<String> = self.edges.keys().map(|(p, q)| format!("({p},{q})")).collect();
        write!(f, "{{{}}}", edges.join(", "))
    }
}

/// `Γ_Nc(G)`: an edge `(p, q)` for every Schmidt `(p, q)`-subgroup.
pub fn n_critical_graph(g: &FiniteGroup) -> Result<NCriticalGraph> {
    let lat = g.lattice()?;
    let nilpotent: Vec<bool> = lat.subgroups().iter().map(|s| is_nilpotent_subgroup(g, s)).collect();
    let mut graph = NCriticalGraph {
        vertices: g.primes().into_iter().collect(),
        edges: BTreeMap::new(),
    };
    for i in 0..lat.len() {
        if schmidt_in_lattice(lat, &nilpotent, i) {
            let edge = signature_of(g, lat.get(i))?;
            graph.edges.entry(edge).or_default().insert(g.label().to_string());
        }
    }
    Ok(graph)
}

/// Union of the graphs of a family of groups.
pub fn corpus_graph(groups: &[FiniteGroup], exec: Execution) -> Result<NCriticalGraph> {
    let mut graph = NCriticalGraph::default();
    for part in exec.map(groups, n_critical_graph) {
        graph.union_with(&part?);
    }
    Ok(graph)
}

/// When no edge of `Γ_Nc(G)` joins two different blocks of `σ`, checks that
/// `G` is the internal direct product of its Hall `π_i`-subgroups over the
/// blocks meeting `π(G)`. Vacuously true otherwise.
pub fn sigma_decomposition_check(g: &FiniteGroup, sigma: &SigmaPartition) -> Result<bool> {
    let graph = n_critical_graph(g)?;
    if graph
        .edges()
        .iter()
        .any(|&(p, q)| sigma.block_of(p) != sigma.block_of(q))
    {
        return Ok(true);
    }
    let whole = Subgroup::whole(g);
    let mut factors = Vec::new();
    for pi in sigma.restrict(&g.primes()) {
        let elems: Vec<usize> = whole
            .elements()
            .filter(|&x| arith::prime_divisors(g.elem_order(x)).iter().all(|p| pi.contains(p)))
            .collect();
        if elems.len() != arith::pi_part(g.order(), |p| pi.contains(&p))
            || closure_bits(g, &elems).count_ones(..) != elems.len()
        {
            return Ok(false);
        }
        factors.push(elems);
    }
    // Pairwise commuting factors of coprime orders multiplying to |G|.
    let commute = factors.iter().enumerate().all(|(i, a)| {
        factors[i + 1..]
            .iter()
            .all(|b| a.iter().all(|&x| b.iter().all(|&y| g.mul(x, y) == g.mul(y, x))))
    });
    let product: usize = factors.iter().map(Vec::len).product();
    Ok(commute && product == g.order())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testing::*;

    fn sigma(text: &str) -> SigmaPartition {
        SigmaPartition::parse(text).unwrap()
    }

    #[test]
    fn schmidt_detection() {
        assert!(!is_schmidt(&cyclic(12)).unwrap());
        assert!(!is_schmidt(&q8()).unwrap());
        assert_eq!(schmidt_signature(&symmetric(3)).unwrap(), Some((3, 2)));
        assert_eq!(schmidt_signature(&alternating(4)).unwrap(), Some((2, 3)));
        assert_eq!(schmidt_signature(&sl23()).unwrap(), Some((2, 3)));
        assert_eq!(schmidt_signature(&symmetric(4)).unwrap(), None);
    }

    #[test]
    fn graphs() {
        let cases: [(FiniteGroup, Vec<(usize, usize)>); 6] = [
            (symmetric(3), vec![(3, 2)]),
            (alternating(4), vec![(2, 3)]),
            (symmetric(4), vec![(2, 3), (3, 2)]),
            (sl23(), vec![(2, 3)]),
            (dihedral(5), vec![(5, 2)]),
            (cyclic(12), vec![]),
        ];
        for (g, edges) in cases {
            let graph = n_critical_graph(&g).unwrap();
            assert_eq!(graph.edges(), edges, "{}", g.label());
            assert!(graph.vertices().iter().all(|p| g.order() % p == 0));
        }
    }

    #[test]
    fn corpus_union() {
        assert!(corpus_graph(&[], Execution::Sequential).unwrap().edges().is_empty());
        let g = corpus_graph(&[symmetric(3), alternating(4)], Execution::default()).unwrap();
        assert_eq!(g.edges(), vec![(2, 3), (3, 2)]);
        assert!(g.provenance(3, 2).unwrap().contains("S3"));
        assert!(corpus_graph(&[cyclic(6), q8()], Execution::Sequential)
            .unwrap()
            .edges()
            .is_empty());
        assert_eq!(g.to_string(), "{(2,3), (3,2)}");
    }

    #[test]
    fn sigma_decompositions() {
        assert!(sigma_decomposition_check(&cyclic(12), &sigma("")).unwrap());
        assert!(sigma_decomposition_check(&symmetric(3), &sigma("2,3")).unwrap());
        assert!(sigma_decomposition_check(&product(&symmetric(3), &cyclic(5)), &sigma("2,3/5")).unwrap());
        assert!(sigma_decomposition_check(&symmetric(4), &sigma("")).unwrap());
    }

    #[test]
    fn schmidt_structure_is_classical() {
        for g in [symmetric(4), sl23(), dihedral(5), metacyclic(7, 3, 2)] {
            let lat = g.lattice().unwrap();
            let nilpotent: Vec<bool> = lat.subgroups().iter().map(|s| is_nilpotent_subgroup(&g, s)).collect();
            for i in 0..lat.len() {
                if schmidt_in_lattice(lat, &nilpotent, i) {
                    assert!(schmidt_structure_holds(&g, lat.get(i)));
                }
            }
        }
    }
}
