//! A fixed corpus of simplicial sets: nerves, bar constructions of partial
//! monoids, coskeletal negative controls and standard simplices.

use crate::category::{nerve, nerve_level_sizes, FinCategory};
use crate::generate::{random_category, random_coskeletal_sset, random_partial_monoid, small_monoids, CategorySpec, CoskeletalSpec};
use crate::monoid::{bar, delooping, truncated_free_monoid, PartialMonoid};
use crate::sset::{standard_simplex, TruncatedSSet};

pub const CORPUS_NERVES: usize = 24;
pub const CORPUS_BARS: usize = 14;
pub const CORPUS_COSKELETAL: usize = 22;

#[derive(Clone, Debug)]
pub enum Source {
    Nerve(FinCategory),
    Bar(PartialMonoid),
    Coskeletal,
    Simplex(usize),
}

#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub name: String,
    pub source: Source,
    pub sset: TruncatedSSet,
}

/// Truncation used for a nerve: 7 when that stays small, else 5.
pub fn nerve_truncation(c: &FinCategory) -> usize {
    if nerve_level_sizes(c, 7).iter().sum::<u128>() <= 20_000 {
        7
    } else {
        5
    }
}

pub fn bar_truncation(m: &PartialMonoid) -> usize {
    if m.size() <= 3 {
        7
    } else {
        5
    }
}

fn fixed_categories() -> Vec<(String, FinCategory)> {
    let z = |n: usize| delooping(&PartialMonoid::cyclic(n)).unwrap();
    let mut out = vec![
        ("terminal".to_string(), FinCategory::terminal()),
        ("chain(1)".to_string(), FinCategory::chain(1)),
        ("chain(2)".to_string(), FinCategory::chain(2)),
        ("chain(3)".to_string(), FinCategory::chain(3)),
        ("discrete(2)".to_string(), FinCategory::discrete(2)),
        ("B(Z/2)".to_string(), z(2)),
        ("B(Z/3)".to_string(), z(3)),
        ("span poset".to_string(), FinCategory::poset(3, &[(0, 1), (0, 2)])),
        ("cospan poset".to_string(), FinCategory::poset(3, &[(0, 2), (1, 2)])),
        ("chain(1) x chain(1)".to_string(), FinCategory::product(&FinCategory::chain(1), &FinCategory::chain(1))),
        ("chain(1) x B(Z/2)".to_string(), FinCategory::product(&FinCategory::chain(1), &z(2))),
        ("chain(2) op".to_string(), FinCategory::chain(2).opposite()),
    ];
    for (i, m) in small_monoids(2).into_iter().enumerate() {
        out.push((format!("B(monoid of order 2, #{i})"), delooping(&m).unwrap()));
    }
    out
}

pub fn corpus_categories() -> Vec<(String, FinCategory)> {
    let mut out = fixed_categories();
    let spec = CategorySpec::default();
    let mut seed = 0u64;
    while out.len() < CORPUS_NERVES {
        if let Ok(c) = random_category(&spec, seed) {
            out.push((format!("random category (seed {seed})"), c));
        }
        seed += 1;
    }
    out
}

pub fn corpus_monoids() -> Vec<(String, PartialMonoid)> {
    let mut out: Vec<(String, PartialMonoid)> =
        (0..=4).map(|k| (format!("truncated_free_monoid({k})"), truncated_free_monoid(k))).collect();
    out.push(("Z/2".into(), PartialMonoid::cyclic(2)));
    out.push(("Z/3".into(), PartialMonoid::cyclic(3)));
    let mut seed = 0u64;
    while out.len() < CORPUS_BARS {
        if let Ok(m) = random_partial_monoid(2 + (seed % 3) as usize, seed) {
            out.push((format!("random partial monoid (seed {seed})"), m));
        }
        seed += 1;
    }
    out
}

pub fn corpus_coskeletal() -> Vec<(String, TruncatedSSet)> {
    let mut out = Vec::new();
    let mut seed = 0u64;
    while out.len() < CORPUS_COSKELETAL {
        let v = 2 + (seed % 2) as usize;
        let e = 1 + (seed / 2 % 3) as usize;
        if let Ok(x) = random_coskeletal_sset(&CoskeletalSpec::new(v, e, 5), seed) {
            out.push((format!("coskeleton({v} vertices, {e} edges, seed {seed})"), x));
        }
        seed += 1;
    }
    out
}

/// The whole corpus, in a fixed order.
pub fn standard_corpus() -> Vec<CorpusEntry> {
    let mut out = Vec::new();
    for (name, c) in corpus_categories() {
        let sset = nerve(&c, nerve_truncation(&c));
        out.push(CorpusEntry { name: format!("N({name})"), source: Source::Nerve(c), sset });
    }
    for (name, m) in corpus_monoids() {
        let sset = bar(&m, bar_truncation(&m)).expect("corpus monoids are strongly associative");
        out.push(CorpusEntry { name: format!("B({name})"), source: Source::Bar(m), sset });
    }
    for (name, sset) in corpus_coskeletal() {
        out.push(CorpusEntry { name, source: Source::Coskeletal, sset });
    }
    for k in 0..=3 {
        out.push(CorpusEntry { name: format!("Δ[{k}]"), source: Source::Simplex(k), sset: standard_simplex(k, 7) });
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_sizes() {
        let c = standard_corpus();
        let count = |f: fn(&Source) -> bool| c.iter().filter(|e| f(&e.source)).count();
        assert!(count(|s| matches!(s, Source::Nerve(_))) >= 20);
        assert!(count(|s| matches!(s, Source::Bar(_))) >= 10);
        assert!(count(|s| matches!(s, Source::Coskeletal)) >= 20);
        assert!(c.iter().all(|e| e.sset.validate().is_empty()));
    }
}
