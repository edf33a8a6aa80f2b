//! Seeded random inputs: partial monoids, categories and coskeletal
//! negative controls.

use std::collections::HashMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::category::FinCategory;
use crate::delta::{codegeneracy, coface, SimplexMap};
use crate::error::{Error, Result};
use crate::monoid::{delooping, validate_partial_monoid, PartialMonoid};
use crate::sset::TruncatedSSet;

const MONOID_NAMES: [&str; 5] = ["e", "a", "b", "c", "d"];

/// Attempts made by [`random_partial_monoid`] before giving up.
pub const MONOID_REJECTION_BUDGET: usize = 200_000;

/// A random partial monoid on `size ≤ 5` elements, drawn by rejection
/// sampling of partial tables against [`validate_partial_monoid`]. Tables
/// are biased toward undefined products, which raises the acceptance rate.
pub fn random_partial_monoid(size: usize, seed: u64) -> Result<PartialMonoid> {
    if size == 0 || size > MONOID_NAMES.len() {
        return Err(Error::Generation(format!("monoid size must be in 1..=5, got {size}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let names: Vec<String> = MONOID_NAMES[..size].iter().map(|s| s.to_string()).collect();
    let mut last_law = String::new();
    for attempt in 0..MONOID_REJECTION_BUDGET {
        // lower the density of defined products as attempts accumulate
        let density = 0.7 / (1.0 + attempt as f64 / 2000.0);
        let mut products: Vec<(usize, usize, usize)> = (0..size).flat_map(|x| [(0, x, x), (x, 0, x)]).collect();
        for a in 1..size {
            for b in 1..size {
                if rng.gen_bool(density) {
                    products.push((a, b, rng.gen_range(0..size)));
                }
            }
        }
        let m = PartialMonoid::new(names.clone(), 0, &products)?;
        match validate_partial_monoid(&m).first() {
            None => return Ok(m),
            Some(v) => last_law = v.to_string(),
        }
    }
    Err(Error::Generation(format!(
        "no valid partial monoid of size {size} within {MONOID_REJECTION_BUDGET} attempts (seed {seed}); last rejection: {last_law}"
    )))
}

/// Every unital associative multiplication table on `{0, …, size-1}` with
/// unit 0, for `size ≤ 3`.
pub fn small_monoids(size: usize) -> Vec<PartialMonoid> {
    assert!((1..=3).contains(&size), "small_monoids enumerates sizes 1..=3");
    let free: Vec<(usize, usize)> = (1..size).flat_map(|a| (1..size).map(move |b| (a, b))).collect();
    let total = size.pow(free.len() as u32);
    let names: Vec<String> = MONOID_NAMES[..size].iter().map(|s| s.to_string()).collect();
    let mut out = Vec::new();
    for code in 0..total {
        let mut c = code;
        let mut table = vec![0; size * size];
        for x in 0..size {
            table[x] = x;
            table[x * size] = x;
        }
        for &(a, b) in &free {
            table[a * size + b] = c % size;
            c /= size;
        }
        let m = PartialMonoid::total(names.clone(), 0, |a, b| table[a * size + b]).unwrap();
        if validate_partial_monoid(&m).is_empty() {
            out.push(m);
        }
    }
    out
}

/// Bounds for [`random_category`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CategorySpec {
    pub max_objects: usize,
    pub max_morphisms: usize,
}

impl Default for CategorySpec {
    fn default() -> Self {
        Self { max_objects: 5, max_morphisms: 20 }
    }
}

fn random_poset(rng: &mut ChaCha8Rng, max_objects: usize) -> FinCategory {
    let size = rng.gen_range(1..=max_objects);
    let p = rng.gen_range(0.2..0.7);
    let relations: Vec<(usize, usize)> =
        (0..size).flat_map(|i| (i + 1..size).map(move |j| (i, j))).filter(|_| rng.gen_bool(p)).collect();
    FinCategory::poset(size, &relations)
}

fn random_monoid_category(rng: &mut ChaCha8Rng) -> FinCategory {
    let size = rng.gen_range(1..=3);
    let monoids = small_monoids(size);
    delooping(monoids.choose(rng).unwrap()).unwrap()
}

fn random_family(rng: &mut ChaCha8Rng, spec: &CategorySpec, depth: usize) -> FinCategory {
    match rng.gen_range(0..if depth == 0 { 3 } else { 2 }) {
        0 => random_poset(rng, spec.max_objects),
        1 => random_monoid_category(rng),
        _ => {
            let a = random_family(rng, spec, depth + 1);
            let b = random_family(rng, spec, depth + 1);
            FinCategory::product(&a, &b)
        }
    }
}

/// A random category from the families of posets, finite monoids and their
/// products, within the bounds of `spec`.
pub fn random_category(spec: &CategorySpec, seed: u64) -> Result<FinCategory> {
    if spec.max_objects == 0 || spec.max_morphisms == 0 {
        return Err(Error::Generation("category bounds must be positive".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..1000 {
        let c = random_family(&mut rng, spec, 0);
        if c.object_count() <= spec.max_objects && c.morphism_count() <= spec.max_morphisms {
            return Ok(c);
        }
    }
    Err(Error::Generation(format!("no category within {spec:?} after 1000 draws (seed {seed})")))
}

/// Bounds for [`random_coskeletal_sset`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CoskeletalSpec {
    pub vertices: usize,
    pub edges: usize,
    pub truncation: usize,
    /// Refuse to build more than this many cells in total.
    pub max_cells: usize,
}

impl CoskeletalSpec {
    pub fn new(vertices: usize, edges: usize, truncation: usize) -> Self {
        Self { vertices, edges, truncation, max_cells: 200_000 }
    }
}

/// An `n`-cell of the coskeleton: vertices and one edge for each pair
/// `a < b`, in lexicographic pair order. Edge ids below the vertex count
/// are degenerate edges.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct CoskCell {
    vertices: Vec<usize>,
    edges: Vec<usize>,
}

fn pair_index(a: usize, b: usize, n: usize) -> usize {
    // position of (a, b) among pairs of [n] in lexicographic order
    a * (2 * n + 1 - a) / 2 + (b - a - 1)
}

/// The 1-coskeleton of a random directed graph without loops, possibly with
/// parallel edges, up to `spec.truncation`. An `n`-cell is a choice of
/// vertices `v_0, …, v_n` and edges `v_a -> v_b` for all `a < b`.
pub fn random_coskeletal_sset(spec: &CoskeletalSpec, seed: u64) -> Result<TruncatedSSet> {
    let v = spec.vertices;
    if v == 0 || (spec.edges > 0 && v < 2) {
        return Err(Error::Generation("need a vertex, and two vertices to place an edge".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut ends = Vec::with_capacity(spec.edges);
    for _ in 0..spec.edges {
        let s = rng.gen_range(0..v);
        let mut t = rng.gen_range(0..v - 1);
        if t >= s {
            t += 1;
        }
        ends.push((s, t));
    }
    coskeleton(v, &ends, spec.truncation, spec.max_cells)
}

/// The 1-coskeleton of the graph with `vertex_count` vertices and
/// nondegenerate edges `ends[e] = (source, target)`.
pub fn coskeleton(vertex_count: usize, ends: &[(usize, usize)], truncation: usize, max_cells: usize) -> Result<TruncatedSSet> {
    if ends.iter().any(|&(s, t)| s == t || s >= vertex_count || t >= vertex_count) {
        return Err(Error::Generation("edges must join distinct existing vertices".into()));
    }
    let v = vertex_count;
    let mut between: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
    for x in 0..v {
        between.insert((x, x), vec![x]);
    }
    for (e, &st) in ends.iter().enumerate() {
        between.entry(st).or_default().push(v + e);
    }
    let mut levels: Vec<Vec<CoskCell>> = vec![(0..v).map(|x| CoskCell { vertices: vec![x], edges: vec![] }).collect()];
    let mut total = v;
    for n in 1..=truncation {
        let mut next = Vec::new();
        for c in &levels[n - 1] {
            for x in 0..v {
                // new vertex x at position n; choose edges from every earlier vertex
                let mut partial: Vec<Vec<usize>> = vec![Vec::new()];
                for a in 0..n {
                    let options = between.get(&(c.vertices[a], x)).map(Vec::as_slice).unwrap_or(&[]);
                    partial = partial
                        .into_iter()
                        .flat_map(|p| {
                            options.iter().map(move |&e| {
                                let mut q = p.clone();
                                q.push(e);
                                q
                            })
                        })
                        .collect();
                }
                for new_edges in partial {
                    let mut vertices = c.vertices.clone();
                    vertices.push(x);
                    // merge into lexicographic pair order of [n]
                    let mut edges = Vec::with_capacity(c.edges.len() + n);
                    for a in 0..=n {
                        for b in a + 1..=n {
                            edges.push(if b == n { new_edges[a] } else { c.edges[pair_index(a, b, n - 1)] });
                        }
                    }
                    next.push(CoskCell { vertices, edges });
                }
            }
        }
        total += next.len();
        if total > max_cells {
            return Err(Error::Limit(format!("coskeleton exceeds {max_cells} cells at level {n}")));
        }
        levels.push(next);
    }
    let act = |alpha: &SimplexMap, c: &CoskCell| -> CoskCell {
        let n = alpha.dom_dim();
        let m = alpha.cod_dim();
        let vertices: Vec<usize> = alpha.values().iter().map(|&a| c.vertices[a]).collect();
        let mut edges = Vec::new();
        for a in 0..=n {
            for b in a + 1..=n {
                let (x, y) = (alpha.apply(a), alpha.apply(b));
                edges.push(if x == y { c.vertices[x] } else { c.edges[pair_index(x, y, m)] });
            }
        }
        CoskCell { vertices, edges }
    };
    let edge_name = |e: usize| if e < v { format!("1_{e}") } else { format!("e{}", e - v) };
    TruncatedSSet::build(
        levels,
        |n, c| match n {
            0 => c.vertices[0].to_string(),
            1 => edge_name(c.edges[0]),
            _ => format!(
                "[{}|{}]",
                c.vertices.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","),
                c.edges.iter().map(|&e| edge_name(e)).collect::<Vec<_>>().join(",")
            ),
        },
        |n, i, c| Some(act(&coface(i, n).ok()?, c)),
        |n, i, c| Some(act(&codegeneracy(i, n).ok()?, c)),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::validate_category;

    #[test]
    fn trivial_monoid_for_size_one() {
        for seed in 0..5 {
            let m = random_partial_monoid(1, seed).unwrap();
            assert_eq!(m.size(), 1);
            assert!(m.is_total());
        }
    }

    #[test]
    fn random_monoids_are_valid_and_deterministic() {
        let m = random_partial_monoid(3, 42).unwrap();
        assert!(validate_partial_monoid(&m).is_empty());
        assert_eq!(m, random_partial_monoid(3, 42).unwrap());
        for seed in 0..10 {
            assert!(validate_partial_monoid(&random_partial_monoid(5, seed).unwrap()).is_empty());
        }
        assert!(random_partial_monoid(6, 0).is_err());
    }

    #[test]
    fn small_monoid_counts() {
        assert_eq!(small_monoids(1).len(), 1);
        assert_eq!(small_monoids(2).len(), 2);
        // up to isomorphism there are 1, 2 and 7 monoids of these orders
        let three = small_monoids(3);
        let swap = |m: &PartialMonoid| {
            let t = |x: usize| [0, 2, 1][x];
            PartialMonoid::total(m.elements().to_vec(), 0, |a, b| t(m.product(t(a), t(b)).unwrap())).unwrap()
        };
        let orbits = (0..three.len()).filter(|&i| !three[..i].contains(&swap(&three[i]))).count();
        assert_eq!(orbits, 7);
    }

    #[test]
    fn random_categories_are_valid() {
        let spec = CategorySpec::default();
        for seed in 0..30 {
            let c = random_category(&spec, seed).unwrap();
            assert!(validate_category(&c).is_empty());
            assert!(c.object_count() <= 5 && c.morphism_count() <= 20);
            assert_eq!(c, random_category(&spec, seed).unwrap());
        }
    }

    #[test]
    fn coskeleton_validates() {
        let x = random_coskeletal_sset(&CoskeletalSpec::new(2, 3, 4), 7).unwrap();
        assert!(x.validate().is_empty());
        assert_eq!(x.level_size(0), 2);
        assert_eq!(x.level_size(1), 5);
        for seed in 0..5 {
            let y = random_coskeletal_sset(&CoskeletalSpec::new(3, 4, 4), seed).unwrap();
            assert!(y.validate().is_empty());
        }
    }

    #[test]
    fn coskeleton_of_an_arrow_is_the_interval() {
        let x = coskeleton(2, &[(0, 1)], 4, 1000).unwrap();
        let d1 = crate::sset::standard_simplex(1, 4);
        assert_eq!(x.level_sizes(), d1.level_sizes());
        assert!(matches!(crate::iso::iso_search(&x, &d1, 10_000), crate::iso::IsoSearch::Found(_)));
    }

    #[test]
    fn pair_index_is_lexicographic() {
        let n = 4;
        let mut k = 0;
        for a in 0..=n {
            for b in a + 1..=n {
                assert_eq!(pair_index(a, b, n), k);
                k += 1;
            }
        }
    }
}
