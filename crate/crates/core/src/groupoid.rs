//! Finite groupoids, functors between them, equivalences and iso-comma
//! groupoids.

use std::collections::HashMap;
use std::fmt;

use crate::category::{validate_category, FinCategory, LawViolation, Morphism};
use crate::error::{Error, Result};
use crate::segal::Witness;

/// A finite category in which every morphism has a recorded inverse.
#[derive(Clone, PartialEq, Eq)]
pub struct FinGroupoid {
    cat: FinCategory,
    inverse: Vec<usize>,
}

impl fmt::Debug for FinGroupoid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FinGroupoid({} objects, {} morphisms)", self.object_count(), self.morphism_count())
    }
}

impl std::ops::Deref for FinGroupoid {
    type Target = FinCategory;

    fn deref(&self) -> &FinCategory {
        &self.cat
    }
}

impl FinGroupoid {
    pub fn new(cat: FinCategory, inverse: Vec<usize>) -> Result<Self> {
        if inverse.len() != cat.morphism_count() || inverse.iter().any(|&i| i >= cat.morphism_count()) {
            return Err(Error::Malformed("inverse table must name one morphism per morphism".into()));
        }
        Ok(Self { cat, inverse })
    }

    pub(crate) fn from_keys<K, C, I>(
        objects: Vec<String>,
        keys: Vec<K>,
        name: impl Fn(&K) -> String,
        endpoints: impl Fn(&K) -> (usize, usize),
        identity_of: impl Fn(usize) -> K,
        compose: C,
        invert: I,
    ) -> Result<Self>
    where
        K: std::hash::Hash + Eq + fmt::Debug,
        C: Fn(&K, &K) -> Option<K>,
        I: Fn(&K) -> K,
    {
        let index: HashMap<&K, usize> = keys.iter().enumerate().map(|(i, k)| (k, i)).collect();
        let inverse = keys
            .iter()
            .map(|k| {
                let inv = invert(k);
                index.get(&inv).copied().ok_or_else(|| Error::Construction(format!("{inv:?} is not a morphism")))
            })
            .collect::<Result<Vec<_>>>()?;
        let cat = FinCategory::from_keys(objects, keys, name, endpoints, identity_of, compose)?;
        Self::new(cat, inverse)
    }

    /// The groupoid with the given objects and only identity morphisms,
    /// named `"1_x"`.
    pub fn discrete(objects: Vec<String>) -> Self {
        let n = objects.len();
        let morphisms = objects.iter().enumerate().map(|(i, o)| Morphism { name: format!("1_{o}"), src: i, tgt: i }).collect();
        let compose = (0..n).map(|i| ((i, i), i)).collect();
        let cat = FinCategory::new(objects, morphisms, (0..n).collect(), compose).unwrap();
        Self { cat, inverse: (0..n).collect() }
    }

    /// A group as a one-object groupoid.
    pub fn group(elements: Vec<String>, unit: usize, mul: impl Fn(usize, usize) -> usize, inv: impl Fn(usize) -> usize) -> Result<Self> {
        let n = elements.len();
        let morphisms = elements.iter().map(|e| Morphism { name: e.clone(), src: 0, tgt: 0 }).collect();
        let compose = (0..n).flat_map(|g| (0..n).map(move |f| (g, f))).map(|(g, f)| ((g, f), mul(g, f))).collect();
        let cat = FinCategory::new(vec!["*".into()], morphisms, vec![unit], compose)?;
        Self::new(cat, (0..n).map(inv).collect())
    }

    /// Every pair of objects joined by exactly one morphism `"x>y"`.
    pub fn codiscrete(objects: Vec<String>) -> Self {
        let n = objects.len();
        let keys: Vec<(usize, usize)> = (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).collect();
        let names = objects.clone();
        Self::from_keys(
            objects,
            keys,
            |&(a, b)| format!("{}>{}", names[a], names[b]),
            |&k| k,
            |o| (o, o),
            |&(b, c), &(a, b2)| (b == b2).then_some((a, c)),
            |&(a, b)| (b, a),
        )
        .unwrap()
    }

    pub fn category(&self) -> &FinCategory {
        &self.cat
    }

    pub fn inverse(&self, f: usize) -> usize {
        self.inverse[f]
    }

    pub fn inverses(&self) -> &[usize] {
        &self.inverse
    }

    /// Connected component index of each object, numbered by first
    /// appearance.
    pub fn components(&self) -> Vec<usize> {
        let n = self.object_count();
        let mut comp = vec![usize::MAX; n];
        let mut next = 0;
        for start in 0..n {
            if comp[start] != usize::MAX {
                continue;
            }
            let mut stack = vec![start];
            comp[start] = next;
            while let Some(x) = stack.pop() {
                for &f in self.out_of(x) {
                    let y = self.tgt(f);
                    if comp[y] == usize::MAX {
                        comp[y] = next;
                        stack.push(y);
                    }
                }
            }
            next += 1;
        }
        comp
    }

    pub fn component_count(&self) -> usize {
        self.components().into_iter().max().map_or(0, |m| m + 1)
    }

    /// The full subgroupoid on `objects` (kept in the given order) with its
    /// inclusion functor.
    pub fn full_subgroupoid(&self, objects: &[usize]) -> (FinGroupoid, Functor) {
        let position: HashMap<usize, usize> = objects.iter().enumerate().map(|(i, &o)| (o, i)).collect();
        let kept: Vec<usize> = (0..self.morphism_count())
            .filter(|&f| position.contains_key(&self.src(f)) && position.contains_key(&self.tgt(f)))
            .collect();
        let new_index: HashMap<usize, usize> = kept.iter().enumerate().map(|(i, &f)| (f, i)).collect();
        let morphisms = kept
            .iter()
            .map(|&f| Morphism { name: self.morphisms()[f].name.clone(), src: position[&self.src(f)], tgt: position[&self.tgt(f)] })
            .collect();
        let compose = self
            .composition_table()
            .iter()
            .filter_map(|(&(g, f), &h)| Some(((*new_index.get(&g)?, *new_index.get(&f)?), new_index[&h])))
            .collect();
        let cat = FinCategory::new(
            objects.iter().map(|&o| self.objects()[o].clone()).collect(),
            morphisms,
            objects.iter().map(|&o| new_index[&self.identity(o)]).collect(),
            compose,
        )
        .unwrap();
        let inverse = kept.iter().map(|&f| new_index[&self.inverse(f)]).collect();
        (FinGroupoid { cat, inverse }, Functor { objects: objects.to_vec(), morphisms: kept })
    }

    /// A skeleton: the full subgroupoid on the first object of every
    /// component.
    pub fn skeleton(&self) -> (FinGroupoid, Functor) {
        let comp = self.components();
        let mut reps = Vec::new();
        for (x, &c) in comp.iter().enumerate() {
            if c == reps.len() {
                reps.push(x);
            }
        }
        self.full_subgroupoid(&reps)
    }

    /// The product groupoid.
    pub fn product(a: &FinGroupoid, b: &FinGroupoid) -> FinGroupoid {
        let cat = FinCategory::product(a, b);
        let nb = b.morphism_count();
        let inverse = (0..cat.morphism_count()).map(|k| a.inverse(k / nb) * nb + b.inverse(k % nb)).collect();
        FinGroupoid { cat, inverse }
    }
}

/// Category laws plus two-sided inverses.
pub fn validate_groupoid(g: &FinGroupoid) -> Vec<LawViolation> {
    let mut out = validate_category(g);
    for f in 0..g.morphism_count() {
        let inv = g.inverse(f);
        let name = g.morphisms()[f].name.as_str();
        let ok = g.compose(inv, f) == Some(g.identity(g.src(f))) && g.compose(f, inv) == Some(g.identity(g.tgt(f)));
        if !ok {
            out.push(LawViolation::new("inverse", &[name, &g.morphisms()[inv].name]));
        }
    }
    out
}

/// Object and morphism tables of a functor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Functor {
    pub objects: Vec<usize>,
    pub morphisms: Vec<usize>,
}

impl Functor {
    pub fn identity(g: &FinCategory) -> Self {
        Self { objects: (0..g.object_count()).collect(), morphisms: (0..g.morphism_count()).collect() }
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &Functor) -> Functor {
        Functor {
            objects: first.objects.iter().map(|&o| self.objects[o]).collect(),
            morphisms: first.morphisms.iter().map(|&f| self.morphisms[f]).collect(),
        }
    }
}

/// Check that `f` is a functor `a -> b`.
pub fn validate_functor(a: &FinCategory, b: &FinCategory, f: &Functor) -> Vec<LawViolation> {
    let mut out = Vec::new();
    if f.objects.len() != a.object_count()
        || f.morphisms.len() != a.morphism_count()
        || f.objects.iter().any(|&o| o >= b.object_count())
        || f.morphisms.iter().any(|&m| m >= b.morphism_count())
    {
        out.push(LawViolation::new("functor tables have the right shape", &[]));
        return out;
    }
    for (u, m) in a.morphisms().iter().enumerate() {
        let image = f.morphisms[u];
        if b.src(image) != f.objects[m.src] || b.tgt(image) != f.objects[m.tgt] {
            out.push(LawViolation::new("functor preserves endpoints", &[&m.name]));
        }
    }
    for (o, name) in a.objects().iter().enumerate() {
        if f.morphisms[a.identity(o)] != b.identity(f.objects[o]) {
            out.push(LawViolation::new("functor preserves identities", &[name]));
        }
    }
    for (&(g, h), &gh) in a.composition_table() {
        if b.compose(f.morphisms[g], f.morphisms[h]) != Some(f.morphisms[gh]) {
            out.push(LawViolation::new(
                "functor preserves composition",
                &[&a.morphisms()[g].name, &a.morphisms()[h].name],
            ));
        }
    }
    out
}

/// `Ok(())` if `f: a -> b` is full, faithful and essentially surjective;
/// otherwise a witness of the first failure found.
pub fn groupoid_equivalence(a: &FinGroupoid, b: &FinGroupoid, f: &Functor) -> std::result::Result<(), Witness> {
    let comp_a = a.components();
    let comp_b = b.components();
    let mut members: Vec<Vec<usize>> = vec![Vec::new(); a.component_count()];
    for (x, &c) in comp_a.iter().enumerate() {
        members[c].push(x);
    }
    // full and faithful within each component
    for objs in &members {
        for &x in objs {
            for &y in objs {
                let hom = a.hom(x, y);
                let target = b.hom(f.objects[x], f.objects[y]);
                let mut seen: HashMap<usize, usize> = HashMap::new();
                for &u in hom {
                    if let Some(&prev) = seen.get(&f.morphisms[u]) {
                        return Err(Witness::NotFaithful {
                            left: a.morphisms()[prev].name.clone(),
                            right: a.morphisms()[u].name.clone(),
                        });
                    }
                    seen.insert(f.morphisms[u], u);
                }
                if let Some(&missing) = target.iter().find(|v| !seen.contains_key(v)) {
                    return Err(Witness::NotFull {
                        source: a.objects()[x].clone(),
                        target: a.objects()[y].clone(),
                        morphism: b.morphisms()[missing].name.clone(),
                    });
                }
            }
        }
    }
    // distinct components must land in distinct components
    let mut reached: HashMap<usize, usize> = HashMap::new();
    for objs in &members {
        let x = objs[0];
        let c = comp_b[f.objects[x]];
        if let Some(&y) = reached.get(&c) {
            let target = b.hom(f.objects[y], f.objects[x]);
            return Err(Witness::NotFull {
                source: a.objects()[y].clone(),
                target: a.objects()[x].clone(),
                morphism: b.morphisms()[target[0]].name.clone(),
            });
        }
        reached.insert(c, x);
    }
    if let Some(y) = (0..b.object_count()).find(|&y| !reached.contains_key(&comp_b[y])) {
        return Err(Witness::NotEssentiallySurjective { object: b.objects()[y].clone() });
    }
    Ok(())
}

/// The iso-comma groupoid `F ↓≅ G` of `F: A -> C` and `G: B -> C`.
#[derive(Clone, Debug)]
pub struct IsoComma {
    pub groupoid: FinGroupoid,
    /// `(a, b, γ)` with `γ: F a -> G b`.
    pub objects: Vec<(usize, usize, usize)>,
    /// `(source object, u, v)`.
    pub morphisms: Vec<(usize, usize, usize)>,
    pub object_index: HashMap<(usize, usize, usize), usize>,
    pub morphism_index: HashMap<(usize, usize, usize), usize>,
    pub first_projection: Functor,
    pub second_projection: Functor,
}

/// Objects are triples `(a, b, γ: F a -> G b)`; a morphism
/// `(a, b, γ) -> (a', b', γ')` is a pair `(u, v)` with
/// `γ' ∘ F u = G v ∘ γ`.
pub fn iso_comma(a: &FinGroupoid, b: &FinGroupoid, c: &FinGroupoid, f: &Functor, g: &Functor) -> Result<IsoComma> {
    let mut objects = Vec::new();
    for x in 0..a.object_count() {
        for y in 0..b.object_count() {
            for &gamma in c.hom(f.objects[x], g.objects[y]) {
                objects.push((x, y, gamma));
            }
        }
    }
    let object_index: HashMap<(usize, usize, usize), usize> =
        objects.iter().enumerate().map(|(i, &o)| (o, i)).collect();
    let target_of = |o: usize, u: usize, v: usize| -> Option<usize> {
        let (_, _, gamma) = objects[o];
        let gamma2 = c.compose(c.compose(g.morphisms[v], gamma)?, c.inverse(f.morphisms[u]))?;
        object_index.get(&(a.tgt(u), b.tgt(v), gamma2)).copied()
    };
    let mut morphisms = Vec::new();
    for (o, &(x, y, _)) in objects.iter().enumerate() {
        for &u in a.out_of(x) {
            for &v in b.out_of(y) {
                target_of(o, u, v).ok_or_else(|| Error::Construction("iso-comma target is missing".into()))?;
                morphisms.push((o, u, v));
            }
        }
    }
    let object_name = |&(x, y, gamma): &(usize, usize, usize)| {
        format!("({};{};{})", a.objects()[x], b.objects()[y], c.morphisms()[gamma].name)
    };
    let names: Vec<String> = objects.iter().map(object_name).collect();
    let groupoid = FinGroupoid::from_keys(
        names.clone(),
        morphisms.clone(),
        |&(o, u, v)| format!("{};{}@{}", a.morphisms()[u].name, b.morphisms()[v].name, names[o]),
        |&(o, u, v)| (o, target_of(o, u, v).unwrap()),
        |o| (o, a.identity(objects[o].0), b.identity(objects[o].1)),
        |&(o2, u2, v2), &(o, u, v)| {
            (target_of(o, u, v) == Some(o2)).then_some((o, a.compose(u2, u)?, b.compose(v2, v)?))
        },
        |&(o, u, v)| (target_of(o, u, v).unwrap(), a.inverse(u), b.inverse(v)),
    )?;
    let morphism_index = morphisms.iter().enumerate().map(|(i, &m)| (m, i)).collect();
    let first_projection = Functor {
        objects: objects.iter().map(|o| o.0).collect(),
        morphisms: morphisms.iter().map(|m| m.1).collect(),
    };
    let second_projection = Functor {
        objects: objects.iter().map(|o| o.1).collect(),
        morphisms: morphisms.iter().map(|m| m.2).collect(),
    };
    Ok(IsoComma { groupoid, objects, morphisms, object_index, morphism_index, first_projection, second_projection })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z2() -> FinGroupoid {
        FinGroupoid::group(vec!["e".into(), "g".into()], 0, |a, b| (a + b) % 2, |a| a).unwrap()
    }

    #[test]
    fn examples_validate() {
        for g in [z2(), FinGroupoid::discrete(vec!["x".into(), "y".into()]), FinGroupoid::codiscrete(vec!["x".into(), "y".into()])] {
            assert!(validate_groupoid(&g).is_empty());
        }
        let p = FinGroupoid::product(&z2(), &FinGroupoid::codiscrete(vec!["x".into(), "y".into()]));
        assert!(validate_groupoid(&p).is_empty());
        assert_eq!(p.component_count(), 1);
    }

    #[test]
    fn identity_and_skeleton_are_equivalences() {
        let g = FinGroupoid::product(&z2(), &FinGroupoid::codiscrete(vec!["x".into(), "y".into(), "z".into()]));
        assert_eq!(groupoid_equivalence(&g, &g, &Functor::identity(&g)), Ok(()));
        let (s, incl) = g.skeleton();
        assert_eq!(s.object_count(), 1);
        assert!(validate_functor(&s, &g, &incl).is_empty());
        assert_eq!(groupoid_equivalence(&s, &g, &incl), Ok(()));
    }

    #[test]
    fn collapsing_functor_is_not_faithful() {
        let g = z2();
        let t = FinGroupoid::discrete(vec!["*".into()]);
        let f = Functor { objects: vec![0], morphisms: vec![0, 0] };
        assert!(validate_functor(&g, &t, &f).is_empty());
        assert!(matches!(groupoid_equivalence(&g, &t, &f), Err(Witness::NotFaithful { .. })));
    }

    #[test]
    fn missing_objects_and_morphisms_are_witnessed() {
        let two = FinGroupoid::discrete(vec!["x".into(), "y".into()]);
        let one = FinGroupoid::discrete(vec!["x".into()]);
        let incl = Functor { objects: vec![0], morphisms: vec![0] };
        assert_eq!(
            groupoid_equivalence(&one, &two, &incl),
            Err(Witness::NotEssentiallySurjective { object: "y".into() })
        );
        let fold = Functor { objects: vec![0, 0], morphisms: vec![0, 0] };
        assert!(matches!(groupoid_equivalence(&two, &one, &fold), Err(Witness::NotFull { .. })));
        let t = FinGroupoid::discrete(vec!["*".into()]);
        let aut = Functor { objects: vec![0], morphisms: vec![0] };
        assert!(matches!(groupoid_equivalence(&t, &z2(), &aut), Err(Witness::NotFull { .. })));
    }

    #[test]
    fn iso_comma_over_terminal_is_product() {
        let t = FinGroupoid::discrete(vec!["*".into()]);
        let a = z2();
        let b = FinGroupoid::codiscrete(vec!["x".into(), "y".into()]);
        let to_t = |g: &FinGroupoid| Functor { objects: vec![0; g.object_count()], morphisms: vec![0; g.morphism_count()] };
        let p = iso_comma(&a, &b, &t, &to_t(&a), &to_t(&b)).unwrap();
        assert!(validate_groupoid(&p.groupoid).is_empty());
        let prod = FinGroupoid::product(&a, &b);
        assert_eq!(p.groupoid.object_count(), prod.object_count());
        assert_eq!(p.groupoid.morphism_count(), prod.morphism_count());
        assert!(validate_functor(&p.groupoid, &a, &p.first_projection).is_empty());
        assert!(validate_functor(&p.groupoid, &b, &p.second_projection).is_empty());
    }

    #[test]
    fn iso_comma_of_identities_is_equivalent_to_base() {
        let g = FinGroupoid::codiscrete(vec!["x".into(), "y".into()]);
        let id = Functor::identity(&g);
        let p = iso_comma(&g, &g, &g, &id, &id).unwrap();
        assert!(validate_groupoid(&p.groupoid).is_empty());
        assert_eq!(groupoid_equivalence(&p.groupoid, &g, &p.first_projection), Ok(()));
    }
}
