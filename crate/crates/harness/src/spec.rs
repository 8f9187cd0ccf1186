//! Group specifications: named constructors, raw permutation generators and
//! explicit semidirect products.

use forge_core::kernel::{generate_group, semidirect_product, DEFAULT_ORDER_BOUND};
use forge_core::{FiniteGroup, Permutation};
use serde::{Deserialize, Serialize};

#[derive(Debug, thiserror::Error)]
pub enum SpecError {
    #[error("unknown group name `{0}`")]
    UnknownName(String),
    #[error("malformed group spec: {0}")]
    Malformed(String),
    #[error(transparent)]
    Group(#[from] forge_core::Error),
}

pub type SpecResult<T> = std::result::Result<T, SpecError>;

/// Permutation generators given as 0-based image lists.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawSpec {
    pub label: String,
    pub degree: usize,
    pub generators: Vec<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

/// `N ⋊ Q`. For every generator of `Q`, `action` lists the images of the
/// generators of `N`, written as permutations in the realization of `N`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SemidirectSpec {
    pub normal: Box<GroupSpec>,
    pub top: Box<GroupSpec>,
    pub action: Vec<Vec<Vec<u32>>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SemidirectEntry {
    pub label: String,
    pub semidirect: SemidirectSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GroupSpec {
    Named(String),
    Raw(RawSpec),
    Semidirect(SemidirectEntry),
}

impl GroupSpec {
    /// Parses command-line text: a JSON object or quoted string, or a bare
    /// constructor name such as `S4` or `S3xC5`.
    pub fn parse(text: &str) -> SpecResult<GroupSpec> {
        let text = text.trim();
        if text.starts_with('{') || text.starts_with('"') {
            serde_json::from_str(text).map_err(|e| SpecError::Malformed(e.to_string()))
        } else {
            Ok(GroupSpec::Named(text.to_string()))
        }
    }

    pub fn label(&self) -> &str {
        match self {
            GroupSpec::Named(name) => name,
            GroupSpec::Raw(raw) => &raw.label,
            GroupSpec::Semidirect(entry) => &entry.label,
        }
    }

    pub fn note(&self) -> Option<&str> {
        match self {
            GroupSpec::Named(_) => None,
            GroupSpec::Raw(raw) => raw.note.as_deref(),
            GroupSpec::Semidirect(entry) => entry.note.as_deref(),
        }
    }

    pub fn build(&self) -> SpecResult<FiniteGroup> {
        match self {
            GroupSpec::Named(name) => named(name),
            GroupSpec::Raw(raw) => raw.build(),
            GroupSpec::Semidirect(entry) => entry.build(),
        }
    }
}

impl RawSpec {
    pub fn build(&self) -> SpecResult<FiniteGroup> {
        if self.degree == 0 {
            return Err(SpecError::Malformed("degree must be at least 1".into()));
        }
        let mut gens = Vec::with_capacity(self.generators.len().max(1));
        for images in &self.generators {
            if images.len() != self.degree {
                return Err(SpecError::Malformed(format!(
                    "generator {images:?} does not have degree {}",
                    self.degree
                )));
            }
            gens.push(Permutation::new(images.clone())?);
        }
        if gens.is_empty() {
            gens.push(Permutation::identity(self.degree));
        }
        Ok(generate_group(&gens, self.label.clone(), DEFAULT_ORDER_BOUND)?)
    }

    /// The raw form of a permutation group.
    pub fn of(g: &FiniteGroup) -> SpecResult<RawSpec> {
        let realization = g
            .realization()
            .ok_or_else(|| SpecError::Malformed(format!("{} has no permutation realization", g.label())))?;
        let generators: Vec<Vec<u32>> = g
            .generators()
            .iter()
            .map(|&x| realization[x].images().to_vec())
            .collect();
        Ok(RawSpec {
            label: g.label().to_string(),
            degree: realization[0].degree(),
            generators,
            note: None,
        })
    }
}

impl SemidirectEntry {
    pub fn build(&self) -> SpecResult<FiniteGroup> {
        let spec = &self.semidirect;
        let n = spec.normal.build()?;
        let q = spec.top.build()?;
        if spec.action.len() != q.generators().len() {
            return Err(SpecError::Malformed(format!(
                "action lists {} maps but the top group has {} generators",
                spec.action.len(),
                q.generators().len()
            )));
        }
        let mut gen_maps = Vec::with_capacity(spec.action.len());
        for images in &spec.action {
            if images.len() != n.generators().len() {
                return Err(SpecError::Malformed(
                    "every map must give one image per generator of the normal factor".into(),
                ));
            }
            let targets = images
                .iter()
                .map(|p| {
                    let p = Permutation::new(p.clone())?;
                    n.find_permutation(&p)
                        .ok_or_else(|| SpecError::Malformed(format!("{p:?} is not an element of {}", n.label())))
                })
                .collect::<SpecResult<Vec<usize>>>()?;
            gen_maps.push(extend_to_map(&n, &targets)?);
        }
        // Extend from the generators of Q: act(x·t) = act(x) ∘ act(t).
        let mut action: Vec<Option<Vec<usize>>> = vec![None; q.order()];
        action[0] = Some(n.elements().collect());
        let mut queue = vec![0usize];
        while let Some(x) = queue.pop() {
            for (t, &gen) in q.generators().iter().enumerate() {
                let y = q.mul(x, gen);
                if action[y].is_none() {
                    let ax = action[x].as_ref().unwrap();
                    action[y] = Some(gen_maps[t].iter().map(|&a| ax[a]).collect());
                    queue.push(y);
                }
            }
        }
        let action: Vec<Vec<usize>> = action.into_iter().map(|a| a.unwrap()).collect();
        let product = semidirect_product(&n, &q, &action, DEFAULT_ORDER_BOUND)?;
        Ok(product.into_group().with_label(self.label.clone()))
    }
}

/// The endomorphism of `n` sending its `i`-th generator to `targets[i]`,
/// extended along words in the generators. Not checked to be well defined;
/// the semidirect product validates every map.
fn extend_to_map(n: &FiniteGroup, targets: &[usize]) -> SpecResult<Vec<usize>> {
    let mut map: Vec<Option<usize>> = vec![None; n.order()];
    map[0] = Some(0);
    let mut queue = vec![0usize];
    while let Some(x) = queue.pop() {
        for (i, &gen) in n.generators().iter().enumerate() {
            let y = n.mul(x, gen);
            if map[y].is_none() {
                map[y] = Some(n.mul(map[x].unwrap(), targets[i]));
                queue.push(y);
            }
        }
    }
    Ok(map.into_iter().map(|m| m.unwrap()).collect())
}

fn cycle(degree: usize, points: impl IntoIterator<Item = usize>) -> Vec<u32> {
    let points: Vec<usize> = points.into_iter().collect();
    let mut images: Vec<u32> = (0..degree as u32).collect();
    for (i, &p) in points.iter().enumerate() {
        images[p] = points[(i + 1) % points.len()] as u32;
    }
    images
}

fn perms(label: &str, degree: usize, gens: Vec<Vec<u32>>) -> SpecResult<FiniteGroup> {
    RawSpec {
        label: label.to_string(),
        degree,
        generators: gens,
        note: None,
    }
    .build()
}

fn parse_number(text: &str, name: &str) -> SpecResult<usize> {
    text.parse::<usize>()
        .ok()
        .filter(|&n| n >= 1)
        .ok_or_else(|| SpecError::UnknownName(name.to_string()))
}

/// `C_n ⋊ C_m` with the generator of `C_m` acting as `x ↦ x^r`, realized on
/// `n + m` points.
fn metacyclic(label: &str, n: usize, m: usize, r: Option<usize>) -> SpecResult<FiniteGroup> {
    let valid = |r: usize| gcd(r, n) == 1 && (0..m).fold(1usize, |acc, _| acc * r % n) == 1 % n;
    let r = match r {
        Some(r) if valid(r % n.max(1)) => r % n.max(1),
        Some(r) => {
            return Err(SpecError::Malformed(format!(
                "x -> x^{r} does not define an action of C{m} on C{n}"
            )))
        }
        None => (2..n).find(|&r| valid(r)).unwrap_or(1),
    };
    let degree = n + m;
    let x = cycle(degree, 0..n);
    let mut y = cycle(degree, n..n + m);
    for (i, image) in y.iter_mut().enumerate().take(n) {
        *image = (i * r % n) as u32;
    }
    perms(label, degree, vec![x, y])
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// `SL(2,3)` acting on the eight nonzero vectors of `F_3^2`.
fn sl23(label: &str) -> SpecResult<FiniteGroup> {
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
    perms(label, 8, vec![act([[1, 1], [0, 1]]), act([[1, 0], [1, 1]])])
}

fn factor(name: &str) -> SpecResult<FiniteGroup> {
    let unknown = || SpecError::UnknownName(name.to_string());
    match name {
        "V4" => return perms(name, 4, vec![vec![1, 0, 3, 2], vec![2, 3, 0, 1]]),
        "Q8" => {
            return perms(
                name,
                8,
                vec![vec![2, 3, 1, 0, 6, 7, 5, 4], vec![4, 5, 7, 6, 1, 0, 2, 3]],
            )
        }
        "SL23" | "SL(2,3)" => return sl23(name),
        "Dic12" => return metacyclic(name, 3, 4, Some(2)),
        "F20" => return metacyclic(name, 5, 4, Some(2)),
        _ => {}
    }
    if let Some((left, right)) = name.split_once(':') {
        let (right, r) = match right.split_once('@') {
            Some((right, r)) => (right, Some(parse_number(r, name)?)),
            None => (right, None),
        };
        let n = parse_number(left.strip_prefix('C').ok_or_else(unknown)?, name)?;
        let m = parse_number(right.strip_prefix('C').ok_or_else(unknown)?, name)?;
        return metacyclic(name, n, m, r);
    }
    let (kind, number) = name.split_at(name.find(|c: char| c.is_ascii_digit()).ok_or_else(unknown)?);
    let n = parse_number(number, name)?;
    match kind {
        "C" => perms(name, n, vec![cycle(n, 0..n)]),
        "S" if n <= 2 => perms(name, n, vec![cycle(n, 0..n)]),
        "S" => perms(name, n, vec![cycle(n, 0..n), cycle(n, [0, 1])]),
        "A" if n <= 2 => perms(name, n, vec![]),
        "A" => {
            let long: Vec<usize> = if n % 2 == 1 { (0..n).collect() } else { (1..n).collect() };
            perms(name, n, vec![cycle(n, long), cycle(n, [0, 1, 2])])
        }
        // Dihedral of order n.
        "D" if n == 2 => perms(name, 2, vec![cycle(2, [0, 1])]),
        "D" if n == 4 => factor("V4").map(|g| g.with_label(name)),
        "D" if n % 2 == 0 && n >= 6 => {
            let k = n / 2;
            let reflection: Vec<u32> = (0..k).map(|i| ((k - i) % k) as u32).collect();
            perms(name, k, vec![cycle(k, 0..k), reflection])
        }
        _ => Err(unknown()),
    }
}

/// Named constructors: `C<n>`, `D<order>`, `S<n>`, `A<n>`, `V4`, `Q8`,
/// `SL23`, `Dic12`, `F20`, `C<n>:C<m>` (optionally `@r` for the power map)
/// and direct products joined with `x`, realized on disjoint points.
pub fn named(name: &str) -> SpecResult<FiniteGroup> {
    let name = name.trim();
    let parts: Vec<&str> = name.split('x').map(str::trim).collect();
    if parts.len() == 1 {
        return factor(name);
    }
    let factors = parts.iter().map(|p| factor(p)).collect::<SpecResult<Vec<_>>>()?;
    let degrees: Vec<usize> = factors
        .iter()
        .map(|f| f.realization().map_or(1, |r| r[0].degree()))
        .collect();
    let total: usize = degrees.iter().sum();
    let mut gens = Vec::new();
    let mut offset = 0;
    for (f, &d) in factors.iter().zip(&degrees) {
        let realization = f.realization().expect("named factors are permutation groups");
        for &x in f.generators() {
            gens.push(realization[x].embed(offset, total).images().to_vec());
        }
        offset += d;
    }
    perms(name, total, gens)
}
