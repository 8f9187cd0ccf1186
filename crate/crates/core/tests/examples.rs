mod common;

use common::*;
use forge_core::canonical::{
    center, f_tilde, fitting, fitting_by_sylow_cores, frattini, frattini_by_non_generators, generalized_fitting,
    generalized_fitting_by_chief_factors, hypercenter, is_supersoluble, o_pi, socle,
};
use forge_core::formations::{
    by_name, delta_f, f_hypercenter, f_residual, int_f, is_f_central_factor, is_sigma_nilpotent, wbar_member,
    Formation, SigmaPartition,
};
use forge_core::kernel::{
    compose_permutations, normal_core, normalizer, quotient_group, section_group, semidirect_product, subgroup_closure,
};
use forge_core::lattice::{
    cyclic_primary_subgroups, hall_subgroup, intermediate_subgroups, maximal_subgroups, minimal_normal_subgroups,
    normal_subgroups, sylow_subgroups,
};
use forge_core::schmidt::{corpus_graph, n_critical_graph, schmidt_signature, sigma_decomposition_check};
use forge_core::subnormality::{
    c_f, is_conjugate_permutable, is_k_f_subnormal, is_r_k_f_subnormal, s_f, weak_k_f_subnormalizers,
};
use forge_core::{Error, Execution, FiniteGroup, Permutation, Subgroup};

fn p(images: &[u32]) -> Permutation {
    Permutation::new(images.to_vec()).unwrap()
}

fn sub(g: &FiniteGroup, gens: &[&[u32]]) -> Subgroup {
    let idx: Vec<usize> = gens.iter().map(|x| g.find_permutation(&p(x)).unwrap()).collect();
    subgroup_closure(g, &idx)
}

fn sigma(text: &str) -> SigmaPartition {
    SigmaPartition::parse(text).unwrap()
}

#[test]
fn kernel_examples() {
    assert_eq!(
        compose_permutations(&p(&[1, 2, 0]), &p(&[1, 0, 2])).unwrap().images(),
        &[2, 1, 0]
    );
    assert!(matches!(
        compose_permutations(&p(&[1, 0]), &p(&[1, 2, 0])),
        Err(Error::DegreeMismatch { .. })
    ));
    let s4 = s4();
    let v4 = sub(&s4, &[&[1, 0, 3, 2], &[2, 3, 0, 1]]);
    let c3 = sub(&s4, &[&[1, 2, 0, 3]]);
    assert_eq!(normalizer(&s4, &c3).order(), 6);
    let d8 = sub(&s4, &[&[1, 2, 3, 0], &[0, 3, 2, 1]]);
    assert_eq!(normal_core(&s4, &d8), v4);
    let q = quotient_group(&s4, &v4).unwrap();
    assert_eq!(q.target().order(), 6);
    assert!(!q.target().is_abelian());
    let section = section_group(&s4, &v4, &Subgroup::trivial(&s4)).unwrap();
    assert_eq!(section.centralizer(&s4).unwrap(), v4);

    let c3g = c(3);
    let c2g = c(2);
    let inversion: Vec<Vec<usize>> = c2g
        .elements()
        .map(|q| c3g.elements().map(|n| if q == 0 { n } else { c3g.inv(n) }).collect())
        .collect();
    let s3_again = semidirect_product(&c3g, &c2g, &inversion, 5000).unwrap().into_group();
    assert_eq!(s3_again.order(), 6);
    assert_eq!(s3_again.elements().filter(|&x| s3_again.elem_order(x) == 2).count(), 3);
    assert_eq!(center(&product(&s3(), &c(2))).order(), 2);
}

#[test]
fn lattice_examples() {
    let s4 = s4();
    let orders: Vec<usize> = maximal_subgroups(&s4).unwrap().iter().map(Subgroup::order).collect();
    assert_eq!(orders.iter().filter(|&&o| o == 12).count(), 1);
    assert_eq!(orders.iter().filter(|&&o| o == 8).count(), 3);
    assert_eq!(orders.iter().filter(|&&o| o == 6).count(), 4);
    assert_eq!(normal_subgroups(&s4).len(), 4);
    assert_eq!(minimal_normal_subgroups(&a5()), vec![Subgroup::whole(&a5())]);
    assert_eq!(sylow_subgroups(&s4, 2).unwrap().len(), 3);
    assert_eq!(sylow_subgroups(&s4, 3).unwrap().len(), 4);
    assert!(hall_subgroup(&a5(), &[3, 5]).unwrap().is_none());
    let q8cp: Vec<usize> = cyclic_primary_subgroups(&q8()).iter().map(Subgroup::order).collect();
    assert_eq!(q8cp, vec![2, 4, 4, 4]);
    let v4 = sub(&s4, &[&[1, 0, 3, 2], &[2, 3, 0, 1]]);
    assert_eq!(intermediate_subgroups(&s4, &v4).unwrap().len(), 6);
}

#[test]
fn canonical_examples() {
    let s4 = s4();
    let v4 = sub(&s4, &[&[1, 0, 3, 2], &[2, 3, 0, 1]]);
    assert_eq!(fitting(&s4), v4);
    assert_eq!(fitting_by_sylow_cores(&s4), v4);
    assert_eq!(socle(&s4), v4);
    assert_eq!(o_pi(&s4, &[2]), v4);
    assert!(frattini(&s4).unwrap().is_trivial());
    assert_eq!(frattini_by_non_generators(&q8()).unwrap().order(), 2);
    assert_eq!(generalized_fitting(&a5()).unwrap().order(), 60);
    assert_eq!(generalized_fitting_by_chief_factors(&a5()).unwrap().order(), 60);
    assert_eq!(generalized_fitting(&s4).unwrap(), v4);
    assert_eq!(f_tilde(&q8()).unwrap().order(), 8);
    assert_eq!(hypercenter(&d8()).order(), 8);
    assert!(is_supersoluble(&s3()) && !is_supersoluble(&s4));
}

#[test]
fn formation_examples() {
    let s4 = s4();
    let u = Formation::supersoluble();
    let n = Formation::nilpotent();
    assert!(by_name("sigma", Some(&sigma("2,3"))).unwrap().member(&s3()).unwrap());
    assert!(!is_sigma_nilpotent(&a4(), &sigma("")));
    assert!(is_sigma_nilpotent(&product(&s3(), &c(5)), &sigma("2,3/5")));
    let v4 = sub(&s4, &[&[1, 0, 3, 2], &[2, 3, 0, 1]]);
    let w = is_f_central_factor(&s4, &v4, &Subgroup::trivial(&s4), &u).unwrap();
    assert!(!w.verdict);
    assert_eq!(w.test_group.order(), 24);
    assert!(f_hypercenter(&s3(), &n).unwrap().is_trivial());
    assert!(f_hypercenter(&s4, &u).unwrap().is_trivial());
    assert_eq!(f_residual(&s3(), &n).unwrap().order(), 3);
    assert_eq!(f_residual(&s4, &Formation::abelian()).unwrap().order(), 12);
    assert!(int_f(&s4, &n).unwrap().is_trivial());
    assert!(delta_f(&s3(), &n).unwrap().is_trivial());
    assert!(!wbar_member(&s3(), &n).unwrap());
    assert!(wbar_member(&s3(), &u).unwrap());
}

#[test]
fn subnormality_examples() {
    let s3 = s3();
    let n = Formation::nilpotent();
    let t = sub(&s3, &[&[1, 0, 2]]);
    assert!(is_k_f_subnormal(&s3, &t, &n).unwrap().is_none());
    assert_eq!(
        is_k_f_subnormal(&s3, &t, &Formation::supersoluble())
            .unwrap()
            .unwrap()
            .len(),
        1
    );
    assert_eq!(weak_k_f_subnormalizers(&s3, &t, &n).unwrap().maximals, vec![t.clone()]);
    assert!(!is_conjugate_permutable(&s3, &t, &Subgroup::whole(&s3)));
    assert!(s_f(&s3, &n).unwrap().is_trivial());
    assert!(c_f(&s3, &n).unwrap().is_trivial());
    assert_eq!(s_f(&s3, &Formation::sigma_nilpotent(sigma("2,3"))).unwrap().order(), 6);
    assert!(c_f(&s4(), &Formation::supersoluble()).unwrap().is_trivial());

    let s4 = s4();
    let v4 = sub(&s4, &[&[1, 0, 3, 2], &[2, 3, 0, 1]]);
    let d8 = sub(&s4, &[&[1, 2, 3, 0], &[0, 3, 2, 1]]);
    let c3 = sub(&s4, &[&[1, 2, 0, 3]]);
    assert!(is_r_k_f_subnormal(&s4, &d8, &v4, &n).unwrap());
    assert!(!is_r_k_f_subnormal(&s4, &c3, &v4, &n).unwrap());
}

#[test]
fn schmidt_examples() {
    assert_eq!(schmidt_signature(&s3()).unwrap(), Some((3, 2)));
    assert_eq!(schmidt_signature(&a4()).unwrap(), Some((2, 3)));
    assert_eq!(n_critical_graph(&s4()).unwrap().edges(), vec![(2, 3), (3, 2)]);
    assert_eq!(n_critical_graph(&sl23()).unwrap().edges(), vec![(2, 3)]);
    assert_eq!(n_critical_graph(&d10()).unwrap().edges(), vec![(5, 2)]);
    let seq = corpus_graph(&zoo(), Execution::Sequential).unwrap();
    let par = corpus_graph(&zoo(), Execution::Parallel).unwrap();
    assert_eq!(seq, par);
    assert!(sigma_decomposition_check(&product(&s3(), &c(5)), &sigma("2,3/5")).unwrap());
}
