#![allow(dead_code)]

use forge_core::kernel::{direct_product, generate_group};
use forge_core::{FiniteGroup, Permutation};
use proptest::prelude::*;

pub fn group(label: &str, gens: &[&[u32]]) -> FiniteGroup {
    let gens: Vec<Permutation> = gens.iter().map(|p| Permutation::new(p.to_vec()).unwrap()).collect();
    generate_group(&gens, label, 5000).unwrap()
}

pub fn s3() -> FiniteGroup {
    group("S3", &[&[1, 2, 0], &[1, 0, 2]])
}

pub fn a4() -> FiniteGroup {
    group("A4", &[&[1, 2, 0, 3], &[0, 2, 3, 1]])
}

pub fn s4() -> FiniteGroup {
    group("S4", &[&[1, 2, 3, 0], &[1, 0, 2, 3]])
}

pub fn d8() -> FiniteGroup {
    group("D8", &[&[1, 2, 3, 0], &[0, 3, 2, 1]])
}

pub fn q8() -> FiniteGroup {
    group("Q8", &[&[2, 3, 1, 0, 6, 7, 5, 4], &[4, 5, 7, 6, 1, 0, 2, 3]])
}

pub fn c(n: u32) -> FiniteGroup {
    let images: Vec<u32> = (0..n).map(|i| (i + 1) % n).collect();
    group(&format!("C{n}"), &[&images])
}

pub fn a5() -> FiniteGroup {
    group("A5", &[&[1, 2, 3, 4, 0], &[1, 2, 0, 3, 4]])
}

pub fn d10() -> FiniteGroup {
    group("D10", &[&[1, 2, 3, 4, 0], &[0, 4, 3, 2, 1]])
}

pub fn sl23() -> FiniteGroup {
    let vectors: Vec<(u32, u32)> = (0..9).map(|i| (i / 3, i % 3)).filter(|&v| v != (0, 0)).collect();
    let act = |m: [[u32; 2]; 2]| -> Vec<u32> {
        vectors
            .iter()
            .map(|&(a, b)| {
                let image = ((m[0][0] * a + m[0][1] * b) % 3, (m[1][0] * a + m[1][1] * b) % 3);
                vectors.iter().position(|&v| v == image).unwrap() as u32
            })
            .collect()
    };
    let (x, y) = (act([[1, 1], [0, 1]]), act([[1, 0], [1, 1]]));
    group("SL23", &[&x, &y])
}

pub fn product(a: &FiniteGroup, b: &FiniteGroup) -> FiniteGroup {
    direct_product(a, b, 5000).unwrap().into_group()
}

/// A handful of named groups covering the structural branches.
pub fn zoo() -> Vec<FiniteGroup> {
    vec![
        c(1),
        c(6),
        s3(),
        d8(),
        q8(),
        d10(),
        a4(),
        s4(),
        sl23(),
        product(&s3(), &c(2)),
    ]
}

fn permutation(degree: usize) -> impl Strategy<Value = Vec<u32>> {
    Just((0..degree as u32).collect::<Vec<u32>>()).prop_shuffle()
}

/// Groups generated by one to three random permutations of degree 2 to 5.
pub fn perm_group() -> impl Strategy<Value = FiniteGroup> {
    (2usize..=5)
        .prop_flat_map(|d| prop::collection::vec(permutation(d), 1..=3))
        .prop_map(|gens| {
            let gens: Vec<Permutation> = gens.into_iter().map(|p| Permutation::new(p).unwrap()).collect();
            generate_group(&gens, "random", 5000).unwrap()
        })
}
