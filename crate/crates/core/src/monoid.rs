//! Partial monoids, their bar constructions and span categories.

use std::collections::HashMap;
use std::fmt;

use crate::category::{FinCategory, LawViolation, Morphism};
use crate::error::{Error, Result};
use crate::sset::{SetMap, SimplicialMap, TruncatedSSet, Violation};

/// A finite set with a unit and a partially defined product, stored as a
/// dense table.
#[derive(Clone, PartialEq, Eq)]
pub struct PartialMonoid {
    elements: Vec<String>,
    unit: usize,
    table: Vec<Option<usize>>,
}

impl fmt::Debug for PartialMonoid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PartialMonoid({} elements, {} defined products)", self.size(), self.defined_pairs().len())
    }
}

impl PartialMonoid {
    /// `products` lists the defined entries `(a, b, a·b)` by index.
    pub fn new(elements: Vec<String>, unit: usize, products: &[(usize, usize, usize)]) -> Result<Self> {
        let n = elements.len();
        if unit >= n {
            return Err(Error::Malformed("unit is not an element".into()));
        }
        let mut table = vec![None; n * n];
        for &(a, b, c) in products {
            if a >= n || b >= n || c >= n {
                return Err(Error::Malformed(format!("product entry ({a}, {b}) -> {c} out of range")));
            }
            if table[a * n + b].replace(c).is_some_and(|old| old != c) {
                return Err(Error::Malformed(format!("product ({a}, {b}) defined twice")));
            }
        }
        Ok(Self { elements, unit, table })
    }

    /// A total monoid given by its multiplication function.
    pub fn total(elements: Vec<String>, unit: usize, mul: impl Fn(usize, usize) -> usize) -> Result<Self> {
        let n = elements.len();
        let products: Vec<_> = (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).map(|(a, b)| (a, b, mul(a, b))).collect();
        Self::new(elements, unit, &products)
    }

    /// The cyclic group of order `n` written multiplicatively.
    pub fn cyclic(n: usize) -> Self {
        let names = (0..n).map(|i| if i == 0 { "e".to_string() } else { format!("g{i}") }).collect();
        Self::total(names, 0, |a, b| (a + b) % n).unwrap()
    }

    pub fn size(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn element(&self, a: usize) -> &str {
        &self.elements[a]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.elements.iter().position(|e| e == name)
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    pub fn product(&self, a: usize, b: usize) -> Option<usize> {
        self.table[a * self.size() + b]
    }

    /// Multiply a nonempty word left to right, failing as soon as a partial
    /// product is undefined.
    pub fn product_of(&self, word: &[usize]) -> Option<usize> {
        let (&first, rest) = word.split_first()?;
        rest.iter().try_fold(first, |acc, &b| self.product(acc, b))
    }

    /// The defined pairs `(a, b, a·b)` in row-major order.
    pub fn defined_pairs(&self) -> Vec<(usize, usize, usize)> {
        let n = self.size();
        (0..n * n).filter_map(|k| self.table[k].map(|c| (k / n, k % n, c))).collect()
    }

    pub fn is_total(&self) -> bool {
        self.table.iter().all(Option::is_some)
    }

    /// Remove one entry of the table.
    pub fn with_undefined(&self, a: usize, b: usize) -> Self {
        let mut m = self.clone();
        let n = m.size();
        m.table[a * n + b] = None;
        m
    }

    /// Set one entry of the table.
    pub fn with_product(&self, a: usize, b: usize, c: usize) -> Self {
        let mut m = self.clone();
        let n = m.size();
        m.table[a * n + b] = Some(c);
        m
    }
}

/// Check unitality and strong associativity.
pub fn validate_partial_monoid(m: &PartialMonoid) -> Vec<LawViolation> {
    let mut out = Vec::new();
    let e = m.unit();
    let name = |a: usize| m.element(a);
    let mut seen = std::collections::HashSet::new();
    for x in m.elements() {
        if !seen.insert(x) {
            out.push(LawViolation::new("element names are unique", &[x]));
        }
    }
    for a in 0..m.size() {
        if m.product(e, a) != Some(a) || m.product(a, e) != Some(a) {
            out.push(LawViolation::new("unitality", &[name(a)]));
        }
    }
    for a in 0..m.size() {
        for b in 0..m.size() {
            for c in 0..m.size() {
                let left = m.product(a, b).and_then(|ab| m.product(ab, c));
                let right = m.product(b, c).and_then(|bc| m.product(a, bc));
                if left != right {
                    out.push(LawViolation::new("strong associativity", &[name(a), name(b), name(c)]));
                }
            }
        }
    }
    out
}

/// `k`-truncated free monoid on one generator: `a^i · a^j` is defined iff
/// `i + j ≤ k`.
pub fn truncated_free_monoid(k: usize) -> PartialMonoid {
    let names = (0..=k)
        .map(|i| match i {
            0 => "e".to_string(),
            1 => "a".to_string(),
            _ => format!("a^{i}"),
        })
        .collect();
    let products: Vec<_> = (0..=k).flat_map(|i| (0..=k - i).map(move |j| (i, j, i + j))).collect();
    PartialMonoid::new(names, 0, &products).unwrap()
}

/// Progressively multipliable tuples of each length up to `truncation`.
pub(crate) fn bar_keys(m: &PartialMonoid, truncation: usize) -> Vec<Vec<Vec<usize>>> {
    let mut levels = vec![vec![Vec::new()]];
    let mut running: Vec<Option<usize>> = vec![None];
    for _ in 1..=truncation {
        let mut next = Vec::new();
        let mut next_running = Vec::new();
        for (t, &p) in levels.last().unwrap().iter().zip(&running) {
            for a in 0..m.size() {
                let q = match p {
                    None => Some(a),
                    Some(p) => m.product(p, a),
                };
                if q.is_some() {
                    let mut u = t.clone();
                    u.push(a);
                    next.push(u);
                    next_running.push(q);
                }
            }
        }
        levels.push(next);
        running = next_running;
    }
    levels
}

fn bar_face(m: &PartialMonoid, n: usize, i: usize, t: &[usize]) -> Option<Vec<usize>> {
    let mut u = t.to_vec();
    if i == 0 {
        u.remove(0);
    } else if i == n {
        u.pop();
    } else {
        let p = m.product(t[i - 1], t[i])?;
        u.splice(i - 1..=i, [p]);
    }
    Some(u)
}

fn bar_name(m: &PartialMonoid, t: &[usize]) -> String {
    format!("({})", t.iter().map(|&a| m.element(a)).collect::<Vec<_>>().join(","))
}

/// The bar construction `BM` up to level `truncation`: level `n` holds the
/// tuples `(m_1, …, m_n)` whose left-to-right partial products are all
/// defined. Inner faces multiply neighbours, outer faces drop an end,
/// degeneracies insert the unit.
pub fn bar(m: &PartialMonoid, truncation: usize) -> Result<TruncatedSSet> {
    let levels = bar_keys(m, truncation);
    TruncatedSSet::build(
        levels,
        |_, t| bar_name(m, t),
        |n, i, t| bar_face(m, n, i, t),
        |_, i, t| {
            let mut u = t.clone();
            u.insert(i, m.unit());
            Some(u)
        },
    )
}

/// The face maps of `BM` that fail to be well defined: every tuple whose
/// `i`-th face is not itself a progressively multipliable tuple.
pub fn bar_defects(m: &PartialMonoid, truncation: usize) -> Vec<Violation> {
    let levels = bar_keys(m, truncation);
    let mut out = Vec::new();
    for n in 1..=truncation {
        let below: std::collections::HashSet<&Vec<usize>> = levels[n - 1].iter().collect();
        for t in &levels[n] {
            for i in 0..=n {
                let ok = bar_face(m, n, i, t).is_some_and(|u| below.contains(&u));
                if !ok {
                    out.push(Violation {
                        identity: "d_i lands in X_{n-1}".into(),
                        level: n,
                        indices: (i, i),
                        cell: bar_name(m, t),
                        detail: "the face of this tuple is not a cell".into(),
                    });
                }
            }
        }
    }
    out
}

/// Triples `(m_1, m, m_2)` with `(m_1·m)·m_2` defined.
fn span_keys(m: &PartialMonoid) -> Vec<(usize, usize, usize)> {
    let n = m.size();
    let mut keys = Vec::new();
    for x in 0..n {
        for a in 0..n {
            for b in 0..n {
                if m.product_of(&[a, x, b]).is_some() {
                    keys.push((a, x, b));
                }
            }
        }
    }
    keys
}

/// The category `𝒞(M)`: objects are the elements, a morphism `m -> m'` is a
/// triple `(m_1, m, m_2)` with `m_1·m·m_2 = m'`. Morphisms are named
/// `"(m_1;m;m_2)"`.
pub fn span_category(m: &PartialMonoid) -> Result<FinCategory> {
    let e = m.unit();
    FinCategory::from_keys(
        m.elements().to_vec(),
        span_keys(m),
        |&(a, x, b)| format!("({};{};{})", m.element(a), m.element(x), m.element(b)),
        |&(a, x, b)| (x, m.product_of(&[a, x, b]).unwrap()),
        |x| (e, x, e),
        |&(n1, _, n2), &(m1, x, m2)| Some((m.product(n1, m1)?, x, m.product(m2, n2)?)),
    )
}

/// The one-object category of a total monoid, with `g ∘ f := f·g` so that
/// its nerve is literally `BM` up to renaming.
pub fn delooping(m: &PartialMonoid) -> Result<FinCategory> {
    if !m.is_total() {
        return Err(Error::Construction("delooping needs a total monoid".into()));
    }
    let morphisms = m.elements().iter().map(|x| Morphism { name: x.clone(), src: 0, tgt: 0 }).collect();
    let compose: HashMap<(usize, usize), usize> =
        m.defined_pairs().into_iter().map(|(f, g, h)| ((g, f), h)).collect();
    FinCategory::new(vec!["*".into()], morphisms, vec![m.unit()], compose)
}

/// The comparison `esd(BM) -> N𝒞(M)` at truncation `truncation`. On level
/// `n` the tuple `(m_1, …, m_{2n+1})` is read outward from its middle entry.
pub fn canonical_partial_iso(m: &PartialMonoid, truncation: usize) -> Result<SimplicialMap> {
    let source_keys = bar_keys(m, 2 * truncation + 1);
    let source = bar(m, 2 * truncation + 1)?.esd()?;
    let c = span_category(m)?;
    let target = crate::category::nerve(&c, truncation);
    let target_keys = crate::category::nerve_keys(&c, truncation);
    let morphism_index: HashMap<(usize, usize, usize), usize> =
        span_keys(m).into_iter().enumerate().map(|(i, k)| (k, i)).collect();
    let mut components = Vec::new();
    for n in 0..=truncation {
        let index: HashMap<&Vec<usize>, usize> =
            target_keys[n].iter().enumerate().map(|(i, k)| (k, i)).collect();
        let values = source_keys[2 * n + 1]
            .iter()
            .map(|t| {
                let key = if n == 0 {
                    vec![t[0]]
                } else {
                    (0..n)
                        .map(|i| {
                            let middle = m.product_of(&t[n - i..=n + i]).unwrap();
                            morphism_index[&(t[n - i - 1], middle, t[n + i + 1])]
                        })
                        .collect()
                };
                index
                    .get(&key)
                    .copied()
                    .ok_or_else(|| Error::Construction(format!("{key:?} is not a string of spans")))
            })
            .collect::<Result<Vec<_>>>()?;
        components.push(SetMap::new(values, target.level_size(n))?);
    }
    SimplicialMap::new(source, target, components)
}

/// For a total monoid, the relabeling `BM -> N(delooping M)` sending a tuple
/// to the string with the same entries.
pub fn bar_nerve_relabeling(m: &PartialMonoid, truncation: usize) -> Result<SimplicialMap> {
    let c = delooping(m)?;
    let source = bar(m, truncation)?;
    let target = crate::category::nerve(&c, truncation);
    let components = (0..=truncation)
        .map(|n| {
            let values = source
                .cells(n)
                .iter()
                .map(|name| {
                    let inner = &name[1..name.len() - 1];
                    let relabeled = if n == 0 { "*".to_string() } else { inner.replace(',', "|") };
                    target
                        .cell_index(n, &relabeled)
                        .ok_or_else(|| Error::Construction(format!("{relabeled} is not a string")))
                })
                .collect::<Result<Vec<_>>>()?;
            SetMap::new(values, target.level_size(n))
        })
        .collect::<Result<Vec<_>>>()?;
    SimplicialMap::new(source, target, components)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::validate_category;
    use crate::iso::iso_check;

    #[test]
    fn truncated_free_monoid_examples() {
        assert_eq!(truncated_free_monoid(0).size(), 1);
        assert!(truncated_free_monoid(0).is_total());
        assert_eq!(truncated_free_monoid(1).defined_pairs().len(), 3);
        for k in 0..=5 {
            assert!(validate_partial_monoid(&truncated_free_monoid(k)).is_empty());
        }
    }

    #[test]
    fn missing_unit_product_is_reported() {
        let m = truncated_free_monoid(1).with_undefined(0, 1);
        let v = validate_partial_monoid(&m);
        assert!(v.iter().any(|v| v.law == "unitality" && v.witness == ["a"]));
    }

    #[test]
    fn deleting_an_entry_breaks_strong_associativity() {
        let z3 = PartialMonoid::cyclic(3);
        assert!(validate_partial_monoid(&z3).is_empty());
        let m = z3.with_undefined(1, 1);
        let v = validate_partial_monoid(&m);
        // (g1,g1) undefined but g1·(g1·g2) = g1·e is defined
        assert!(v.iter().any(|v| v.law == "strong associativity" && v.witness == ["g1", "g1", "g2"]));
    }

    #[test]
    fn bar_examples() {
        let x = bar(&truncated_free_monoid(1), 3).unwrap();
        assert_eq!(x.level_sizes(), vec![1, 2, 3, 4]);
        assert!(x.validate().is_empty());
        let z2 = PartialMonoid::cyclic(2);
        assert_eq!(bar(&z2, 4).unwrap().level_sizes(), vec![1, 2, 4, 8, 16]);
        for k in 0..=3 {
            let x = bar(&truncated_free_monoid(k), 5).unwrap();
            assert_eq!(x.level_size(0), 1);
            assert!(x.validate().is_empty());
        }
    }

    #[test]
    fn weak_associativity_mutant_breaks_bar() {
        // a·b = c, c·a = c, b·a undefined: associative whenever both sides
        // are defined, but (a,b,a) has no face d_2.
        let names = ["e", "a", "b", "c"].map(String::from).to_vec();
        let mut products: Vec<_> = (0..4).flat_map(|x| [(0, x, x), (x, 0, x)]).collect();
        products.extend([(1, 2, 3), (3, 1, 3)]);
        let m = PartialMonoid::new(names, 0, &products).unwrap();
        let v = validate_partial_monoid(&m);
        assert!(v.iter().all(|v| v.law == "strong associativity"));
        assert!(v.iter().any(|v| v.witness == ["a", "b", "a"]));
        assert!(bar(&m, 3).is_err());
        let defects = bar_defects(&m, 3);
        assert!(defects.iter().any(|d| d.level == 3 && d.indices == (2, 2) && d.cell == "(a,b,a)"));
        assert!(bar_defects(&truncated_free_monoid(2), 5).is_empty());
    }

    #[test]
    fn span_category_examples() {
        let c = span_category(&truncated_free_monoid(1)).unwrap();
        assert!(validate_category(&c).is_empty());
        assert_eq!(c.object_count(), 2);
        assert_eq!(c.morphism_count(), 4);
        let mut hom: Vec<&str> = c.hom(0, 1).iter().map(|&f| c.morphisms()[f].name.as_str()).collect();
        hom.sort();
        assert_eq!(hom, ["(a;e;e)", "(e;e;a)"]);
        let t = span_category(&truncated_free_monoid(0)).unwrap();
        assert_eq!((t.object_count(), t.morphism_count()), (1, 1));
    }

    #[test]
    fn canonical_partial_iso_examples() {
        let m = truncated_free_monoid(1);
        let f = canonical_partial_iso(&m, 2).unwrap();
        assert_eq!(f.source.level_sizes(), vec![2, 4, 6]);
        assert_eq!(f.target.level_sizes(), vec![2, 4, 6]);
        assert!(iso_check(&f).is_iso());
        for m in [truncated_free_monoid(2), truncated_free_monoid(3), PartialMonoid::cyclic(2)] {
            assert!(iso_check(&canonical_partial_iso(&m, 2).unwrap()).is_iso());
        }
    }

    #[test]
    fn total_monoid_bar_is_nerve_of_delooping() {
        for n in 1..=3 {
            let m = PartialMonoid::cyclic(n);
            let f = bar_nerve_relabeling(&m, 4).unwrap();
            assert!(iso_check(&f).is_iso());
            assert_eq!(f.source.level_size(3), n * n * n);
        }
    }
}
