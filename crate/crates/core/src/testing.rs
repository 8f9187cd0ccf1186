//! Small named groups for unit tests.

use crate::kernel::{direct_product, generate_group, semidirect_product, FiniteGroup, Permutation};

pub fn perm(images: &[u32]) -> Permutation {
    Permutation::new(images.to_vec()).unwrap()
}

pub fn group(label: &str, gens: &[Vec<u32>]) -> FiniteGroup {
    let gens: Vec<Permutation> = gens.iter().map(|p| perm(p)).collect();
    generate_group(&gens, label, 5000).unwrap()
}

fn cycle(n: u32, points: &[u32]) -> Vec<u32> {
    let mut images: Vec<u32> = (0..n).collect();
    for (i, &p) in points.iter().enumerate() {
        images[p as usize] = points[(i + 1) % points.len()];
    }
    images
}

pub fn cyclic(n: u32) -> FiniteGroup {
    let points: Vec<u32> = (0..n).collect();
    group(&format!("C{n}"), &[cycle(n, &points)])
}

pub fn symmetric(n: u32) -> FiniteGroup {
    let points: Vec<u32> = (0..n).collect();
    group(&format!("S{n}"), &[cycle(n, &points), cycle(n, &[0, 1])])
}

pub fn alternating(n: u32) -> FiniteGroup {
    let long: Vec<u32> = if n % 2 == 1 { (0..n).collect() } else { (1..n).collect() };
    group(&format!("A{n}"), &[cycle(n, &long), cycle(n, &[0, 1, 2])])
}

/// Dihedral group of order `2n` on `n` points.
pub fn dihedral(n: u32) -> FiniteGroup {
    let points: Vec<u32> = (0..n).collect();
    let reflection: Vec<u32> = (0..n).map(|i| (n - i) % n).collect();
    group(&format!("D{}", 2 * n), &[cycle(n, &points), reflection])
}

pub fn v4() -> FiniteGroup {
    group("V4", &[vec![1, 0, 3, 2], vec![2, 3, 0, 1]])
}

pub fn q8() -> FiniteGroup {
    group("Q8", &[vec![2, 3, 1, 0, 6, 7, 5, 4], vec![4, 5, 7, 6, 1, 0, 2, 3]])
}

/// `SL(2,3)` acting on the eight nonzero vectors of `F_3^2`.
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
    group("SL23", &[act([[1, 1], [0, 1]]), act([[1, 0], [1, 1]])])
}

pub fn product(a: &FiniteGroup, b: &FiniteGroup) -> FiniteGroup {
    direct_product(a, b, 5000).unwrap().into_group()
}

/// `C_n ⋊ C_m` where the generator of `C_m` acts as `x ↦ x^r`.
pub fn metacyclic(n: u32, m: u32, r: usize) -> FiniteGroup {
    let cn = cyclic(n);
    let cm = cyclic(m);
    let x = cn.generators()[0];
    let y = cm.generators()[0];
    let action: Vec<Vec<usize>> = cm
        .elements()
        .map(|q| {
            // q = y^k acts as the r^k-th power map
            let k = (0..m as usize).find(|&k| cm.pow(y, k) == q).unwrap();
            let e = (0..k).fold(1usize, |acc, _| acc * r % n as usize);
            cn.elements()
                .map(|a| {
                    let j = (0..n as usize).find(|&j| cn.pow(x, j) == a).unwrap();
                    cn.pow(x, j * e)
                })
                .collect()
        })
        .collect();
    semidirect_product(&cn, &cm, &action, 5000)
        .unwrap()
        .into_group()
        .with_label(format!("C{n}:C{m}"))
}
