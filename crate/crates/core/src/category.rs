//! Finite categories, their nerves and twisted arrow categories.
//!
//! `compose(g, f)` always means "g after f": it is defined exactly when
//! `src(g) = tgt(f)` and the result runs from `src(f)` to `tgt(g)`. The nerve
//! stores a string `a_0 -f_1-> a_1 -> … -f_n-> a_n` as the list
//! `[f_1, …, f_n]`, and every table in this crate follows that orientation.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sset::{SetMap, SimplicialMap, TruncatedSSet};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Morphism {
    pub name: String,
    pub src: usize,
    pub tgt: usize,
}

/// A failed law with the tuple that witnesses it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LawViolation {
    pub law: String,
    pub witness: Vec<String>,
}

impl LawViolation {
    pub(crate) fn new(law: &str, witness: &[&str]) -> Self {
        Self { law: law.to_string(), witness: witness.iter().map(|s| s.to_string()).collect() }
    }
}

impl fmt::Display for LawViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} fails at ({})", self.law, self.witness.join(", "))
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct FinCategory {
    objects: Vec<String>,
    morphisms: Vec<Morphism>,
    identity: Vec<usize>,
    compose: HashMap<(usize, usize), usize>,
    homs: HashMap<(usize, usize), Vec<usize>>,
    out_homs: Vec<Vec<usize>>,
    in_homs: Vec<Vec<usize>>,
}

impl fmt::Debug for FinCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FinCategory({} objects, {} morphisms)", self.objects.len(), self.morphisms.len())
    }
}

impl FinCategory {
    /// Assemble a category from its tables. Indices must be in range; the
    /// category laws are checked by [`validate_category`].
    pub fn new(
        objects: Vec<String>,
        morphisms: Vec<Morphism>,
        identity: Vec<usize>,
        compose: HashMap<(usize, usize), usize>,
    ) -> Result<Self> {
        let n_obj = objects.len();
        let n_mor = morphisms.len();
        if let Some(m) = morphisms.iter().find(|m| m.src >= n_obj || m.tgt >= n_obj) {
            return Err(Error::Malformed(format!("morphism {} has an unknown endpoint", m.name)));
        }
        if identity.len() != n_obj || identity.iter().any(|&i| i >= n_mor) {
            return Err(Error::Malformed("identity table must name one morphism per object".into()));
        }
        if compose.iter().any(|(&(g, f), &h)| g >= n_mor || f >= n_mor || h >= n_mor) {
            return Err(Error::Malformed("composition table refers to unknown morphisms".into()));
        }
        let mut homs: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
        let mut out_homs = vec![Vec::new(); n_obj];
        let mut in_homs = vec![Vec::new(); n_obj];
        for (k, m) in morphisms.iter().enumerate() {
            homs.entry((m.src, m.tgt)).or_default().push(k);
            out_homs[m.src].push(k);
            in_homs[m.tgt].push(k);
        }
        Ok(Self { objects, morphisms, identity, compose, homs, out_homs, in_homs })
    }

    /// Build from morphism keys with a total composition function on
    /// composable pairs.
    pub(crate) fn from_keys<K, C>(
        objects: Vec<String>,
        keys: Vec<K>,
        name: impl Fn(&K) -> String,
        endpoints: impl Fn(&K) -> (usize, usize),
        identity_of: impl Fn(usize) -> K,
        compose: C,
    ) -> Result<Self>
    where
        K: std::hash::Hash + Eq + fmt::Debug,
        C: Fn(&K, &K) -> Option<K>,
    {
        let index: HashMap<&K, usize> = keys.iter().enumerate().map(|(i, k)| (k, i)).collect();
        let find = |k: &K| -> Result<usize> {
            index
                .get(k)
                .copied()
                .ok_or_else(|| Error::Construction(format!("{k:?} is not a morphism")))
        };
        let morphisms: Vec<Morphism> = keys
            .iter()
            .map(|k| {
                let (src, tgt) = endpoints(k);
                Morphism { name: name(k), src, tgt }
            })
            .collect();
        let identity = (0..objects.len()).map(|o| find(&identity_of(o))).collect::<Result<Vec<_>>>()?;
        let mut out_homs = vec![Vec::new(); objects.len()];
        for (k, m) in morphisms.iter().enumerate() {
            out_homs[m.src].push(k);
        }
        let mut table = HashMap::new();
        for (fi, f) in keys.iter().enumerate() {
            for &gi in &out_homs[morphisms[fi].tgt] {
                let h = compose(&keys[gi], f).ok_or_else(|| {
                    Error::Construction(format!("composite of {:?} after {f:?} is undefined", keys[gi]))
                })?;
                table.insert((gi, fi), find(&h)?);
            }
        }
        Self::new(objects, morphisms, identity, table)
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn morphisms(&self) -> &[Morphism] {
        &self.morphisms
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn morphism_count(&self) -> usize {
        self.morphisms.len()
    }

    pub fn src(&self, f: usize) -> usize {
        self.morphisms[f].src
    }

    pub fn tgt(&self, f: usize) -> usize {
        self.morphisms[f].tgt
    }

    pub fn identity(&self, a: usize) -> usize {
        self.identity[a]
    }

    pub fn identities(&self) -> &[usize] {
        &self.identity
    }

    /// `g ∘ f`, when defined.
    pub fn compose(&self, g: usize, f: usize) -> Option<usize> {
        self.compose.get(&(g, f)).copied()
    }

    pub fn composition_table(&self) -> &HashMap<(usize, usize), usize> {
        &self.compose
    }

    pub fn hom(&self, a: usize, b: usize) -> &[usize] {
        self.homs.get(&(a, b)).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn out_of(&self, a: usize) -> &[usize] {
        &self.out_homs[a]
    }

    pub fn into(&self, b: usize) -> &[usize] {
        &self.in_homs[b]
    }

    pub fn object_index(&self, name: &str) -> Option<usize> {
        self.objects.iter().position(|o| o == name)
    }

    pub fn morphism_index(&self, name: &str) -> Option<usize> {
        self.morphisms.iter().position(|m| m.name == name)
    }

    /// Compose a nonempty path `[f_1, …, f_k]` to `f_k ∘ … ∘ f_1`.
    pub fn compose_path(&self, path: &[usize]) -> Option<usize> {
        let (&first, rest) = path.split_first()?;
        rest.iter().try_fold(first, |acc, &g| self.compose(g, acc))
    }

    /// The terminal category.
    pub fn terminal() -> Self {
        Self::poset(1, &[])
    }

    /// The ordinal `[n]` as a category.
    pub fn chain(n: usize) -> Self {
        let rel: Vec<(usize, usize)> = (0..n).map(|i| (i, i + 1)).collect();
        Self::poset(n + 1, &rel)
    }

    /// The poset on `size` objects generated by `relations` (reflexive
    /// transitive closure). Morphisms are named `"i-j"`.
    pub fn poset(size: usize, relations: &[(usize, usize)]) -> Self {
        let mut le = vec![vec![false; size]; size];
        for (i, row) in le.iter_mut().enumerate() {
            row[i] = true;
        }
        for &(a, b) in relations {
            le[a][b] = true;
        }
        for k in 0..size {
            for i in 0..size {
                for j in 0..size {
                    if le[i][k] && le[k][j] {
                        le[i][j] = true;
                    }
                }
            }
        }
        let keys: Vec<(usize, usize)> =
            (0..size).flat_map(|i| (0..size).map(move |j| (i, j))).filter(|&(i, j)| le[i][j]).collect();
        Self::from_keys(
            (0..size).map(|i| i.to_string()).collect(),
            keys,
            |&(i, j)| format!("{i}-{j}"),
            |&k| k,
            |o| (o, o),
            |&(b, c), &(a, b2)| if b == b2 { Some((a, c)) } else { None },
        )
        .expect("posets are categories")
    }

    /// A set with no non-identity morphisms.
    pub fn discrete(size: usize) -> Self {
        Self::poset(size, &[])
    }

    /// The product category; morphism names are `"(f;g)"`.
    pub fn product(a: &FinCategory, b: &FinCategory) -> Self {
        let nb = b.object_count();
        let objects = a
            .objects
            .iter()
            .flat_map(|x| b.objects.iter().map(move |y| format!("({x};{y})")))
            .collect();
        let keys: Vec<(usize, usize)> = (0..a.morphism_count())
            .flat_map(|f| (0..b.morphism_count()).map(move |g| (f, g)))
            .collect();
        Self::from_keys(
            objects,
            keys,
            |&(f, g)| format!("({};{})", a.morphisms[f].name, b.morphisms[g].name),
            |&(f, g)| (a.src(f) * nb + b.src(g), a.tgt(f) * nb + b.tgt(g)),
            |o| (a.identity(o / nb), b.identity(o % nb)),
            |&(f2, g2), &(f1, g1)| Some((a.compose(f2, f1)?, b.compose(g2, g1)?)),
        )
        .expect("products of categories are categories")
    }

    /// The opposite category.
    pub fn opposite(&self) -> Self {
        let morphisms = self
            .morphisms
            .iter()
            .map(|m| Morphism { name: m.name.clone(), src: m.tgt, tgt: m.src })
            .collect();
        let compose = self.compose.iter().map(|(&(g, f), &h)| ((f, g), h)).collect();
        Self::new(self.objects.clone(), morphisms, self.identity.clone(), compose).unwrap()
    }
}

/// Check unit laws, associativity and that composition is defined exactly on
/// composable pairs.
pub fn validate_category(a: &FinCategory) -> Vec<LawViolation> {
    let mut out = Vec::new();
    let name = |f: usize| a.morphisms[f].name.as_str();
    let mut seen = std::collections::HashSet::new();
    for m in &a.morphisms {
        if !seen.insert(&m.name) {
            out.push(LawViolation::new("morphism names are unique", &[&m.name]));
        }
    }
    for (o, &id) in a.identity.iter().enumerate() {
        if a.src(id) != o || a.tgt(id) != o {
            out.push(LawViolation::new("identity is an endomorphism", &[&a.objects[o], name(id)]));
        }
    }
    for (&(g, f), &h) in &a.compose {
        if a.src(g) != a.tgt(f) {
            out.push(LawViolation::new("composition defined only on composable pairs", &[name(g), name(f)]));
        } else if a.src(h) != a.src(f) || a.tgt(h) != a.tgt(g) {
            out.push(LawViolation::new("composite has the right endpoints", &[name(g), name(f), name(h)]));
        }
    }
    for f in 0..a.morphism_count() {
        for &g in a.out_of(a.tgt(f)) {
            if a.compose(g, f).is_none() {
                out.push(LawViolation::new("composition total on composable pairs", &[name(g), name(f)]));
            }
        }
        if a.compose(a.identity(a.tgt(f)), f) != Some(f) {
            out.push(LawViolation::new("left unit law", &[name(f)]));
        }
        if a.compose(f, a.identity(a.src(f))) != Some(f) {
            out.push(LawViolation::new("right unit law", &[name(f)]));
        }
    }
    for f in 0..a.morphism_count() {
        for &g in a.out_of(a.tgt(f)) {
            for &h in a.out_of(a.tgt(g)) {
                let lhs = a.compose(g, f).and_then(|gf| a.compose(h, gf));
                let rhs = a.compose(h, g).and_then(|hg| a.compose(hg, f));
                if lhs != rhs {
                    out.push(LawViolation::new("associativity", &[name(h), name(g), name(f)]));
                }
            }
        }
    }
    out
}

/// Composable strings of the nerve up to level `truncation`. Level 0 keys
/// are `[object]`, level `n > 0` keys are `[f_1, …, f_n]`.
pub(crate) fn nerve_keys(a: &FinCategory, truncation: usize) -> Vec<Vec<Vec<usize>>> {
    let mut levels: Vec<Vec<Vec<usize>>> = vec![(0..a.object_count()).map(|o| vec![o]).collect()];
    if truncation >= 1 {
        levels.push((0..a.morphism_count()).map(|f| vec![f]).collect());
    }
    for _ in 2..=truncation {
        let prev = levels.last().unwrap();
        let next = prev
            .iter()
            .flat_map(|s| {
                let end = a.tgt(*s.last().unwrap());
                a.out_of(end).iter().map(move |&g| {
                    let mut t = s.clone();
                    t.push(g);
                    t
                })
            })
            .collect();
        levels.push(next);
    }
    levels
}

/// Number of `n`-strings for `n = 0..=truncation`, without building them.
pub fn nerve_level_sizes(a: &FinCategory, truncation: usize) -> Vec<u128> {
    let mut ending: Vec<u128> = vec![1; a.object_count()];
    let mut sizes = vec![a.object_count() as u128];
    for _ in 1..=truncation {
        let mut next = vec![0u128; a.object_count()];
        for f in 0..a.morphism_count() {
            next[a.tgt(f)] += ending[a.src(f)];
        }
        sizes.push(next.iter().sum());
        ending = next;
    }
    sizes
}

/// The nerve of `a` up to level `truncation`. Inner faces compose, outer
/// faces drop, degeneracies insert identities.
pub fn nerve(a: &FinCategory, truncation: usize) -> TruncatedSSet {
    let levels = nerve_keys(a, truncation);
    let name = |n: usize, s: &Vec<usize>| {
        if n == 0 {
            a.objects[s[0]].clone()
        } else {
            s.iter().map(|&f| a.morphisms[f].name.as_str()).collect::<Vec<_>>().join("|")
        }
    };
    let face = |n: usize, i: usize, s: &Vec<usize>| -> Option<Vec<usize>> {
        if n == 1 {
            return Some(vec![if i == 0 { a.tgt(s[0]) } else { a.src(s[0]) }]);
        }
        let mut t = s.clone();
        if i == 0 {
            t.remove(0);
        } else if i == n {
            t.pop();
        } else {
            let h = a.compose(s[i], s[i - 1])?;
            t.splice(i - 1..=i, [h]);
        }
        Some(t)
    };
    let degeneracy = |n: usize, i: usize, s: &Vec<usize>| -> Option<Vec<usize>> {
        if n == 0 {
            return Some(vec![a.identity(s[0])]);
        }
        let object = if i < n { a.src(s[i]) } else { a.tgt(s[n - 1]) };
        let mut t = s.clone();
        t.insert(i, a.identity(object));
        Some(t)
    };
    TruncatedSSet::build(levels, name, face, degeneracy).expect("nerve tables are total for a valid category")
}

/// A morphism `f -> g` of the twisted arrow category: `g = v ∘ f ∘ u`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub(crate) struct Square {
    pub f: usize,
    pub u: usize,
    pub v: usize,
}

pub(crate) fn twisted_arrow_keys(a: &FinCategory) -> Vec<Square> {
    let mut keys = Vec::new();
    for f in 0..a.morphism_count() {
        for &u in a.into(a.src(f)) {
            for &v in a.out_of(a.tgt(f)) {
                keys.push(Square { f, u, v });
            }
        }
    }
    keys
}

/// The twisted arrow category `Tw(a)`: objects are the morphisms of `a`, a
/// morphism `f -> g` is a pair `(u, v)` with `g = v ∘ f ∘ u`. Morphisms are
/// named `"f[u;v]"`.
pub fn twisted_arrow(a: &FinCategory) -> Result<FinCategory> {
    let keys = twisted_arrow_keys(a);
    let target = |s: &Square| -> Option<usize> { a.compose(s.v, a.compose(s.f, s.u)?) };
    for s in &keys {
        target(s).ok_or_else(|| Error::Construction("composition table is not total".into()))?;
    }
    let mname = |f: usize| a.morphisms[f].name.as_str();
    FinCategory::from_keys(
        a.morphisms.iter().map(|m| m.name.clone()).collect(),
        keys,
        |s| format!("{}[{};{}]", mname(s.f), mname(s.u), mname(s.v)),
        |s| (s.f, target(s).unwrap()),
        |f| Square { f, u: a.identity(a.src(f)), v: a.identity(a.tgt(f)) },
        |second, first| {
            Some(Square { f: first.f, u: a.compose(first.u, second.u)?, v: a.compose(second.v, first.v)? })
        },
    )
}

/// The comparison `esd(N a) -> N Tw(a)` at truncation `truncation`.
///
/// On level `n` a string `a_0 -> … -> a_{2n+1}` goes to the `Tw`-string
/// whose `i`-th object is the composite `a_{n-i} -> a_{n+1+i}`.
pub fn canonical_tw_iso(a: &FinCategory, truncation: usize) -> Result<SimplicialMap> {
    let source_keys = nerve_keys(a, 2 * truncation + 1);
    let source = nerve(a, 2 * truncation + 1).esd()?;
    let tw = twisted_arrow(a)?;
    let target = nerve(&tw, truncation);
    let target_keys = nerve_keys(&tw, truncation);
    let square_index: HashMap<Square, usize> =
        twisted_arrow_keys(a).into_iter().enumerate().map(|(i, s)| (s, i)).collect();

    let mut components = Vec::new();
    for n in 0..=truncation {
        let index: HashMap<&Vec<usize>, usize> =
            target_keys[n].iter().enumerate().map(|(i, k)| (k, i)).collect();
        let values = source_keys[2 * n + 1]
            .iter()
            .map(|s| {
                let key = if n == 0 {
                    vec![s[0]]
                } else {
                    (0..n)
                        .map(|i| {
                            let f = a.compose_path(&s[n - i..=n + i]).unwrap();
                            square_index[&Square { f, u: s[n - i - 1], v: s[n + i + 1] }]
                        })
                        .collect()
                };
                index.get(&key).copied().ok_or_else(|| Error::Construction(format!("{key:?} is not a Tw-string")))
            })
            .collect::<Result<Vec<_>>>()?;
        components.push(SetMap::new(values, target.level_size(n))?);
    }
    SimplicialMap::new(source, target, components)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::iso::iso_check;

    fn z2() -> FinCategory {
        // one object, morphisms e and g with g∘g = e
        let compose = [((0, 0), 0), ((0, 1), 1), ((1, 0), 1), ((1, 1), 0)].into_iter().collect();
        FinCategory::new(
            vec!["*".into()],
            vec![
                Morphism { name: "e".into(), src: 0, tgt: 0 },
                Morphism { name: "g".into(), src: 0, tgt: 0 },
            ],
            vec![0],
            compose,
        )
        .unwrap()
    }

    #[test]
    fn poset_validates() {
        assert!(validate_category(&FinCategory::chain(2)).is_empty());
        assert!(validate_category(&z2()).is_empty());
        assert_eq!(FinCategory::chain(2).morphism_count(), 6);
    }

    #[test]
    fn broken_category_reports_laws() {
        let c = FinCategory::chain(1);
        let mut table = c.composition_table().clone();
        let id0 = c.identity(0);
        let f = c.morphism_index("0-1").unwrap();
        table.remove(&(f, id0));
        let broken = FinCategory::new(c.objects.clone(), c.morphisms.clone(), c.identity.clone(), table).unwrap();
        let v = validate_category(&broken);
        assert!(v.iter().any(|v| v.law == "right unit law" && v.witness == ["0-1"]));
        assert!(v.iter().any(|v| v.law == "composition total on composable pairs"));
    }

    #[test]
    fn nerve_examples() {
        assert_eq!(nerve(&FinCategory::chain(1), 2).level_sizes(), vec![2, 3, 4]);
        assert_eq!(nerve(&z2(), 2).level_sizes(), vec![1, 2, 4]);
        assert!(nerve(&z2(), 4).validate().is_empty());
        assert!(nerve(&FinCategory::chain(3), 5).validate().is_empty());
        let p = FinCategory::product(&FinCategory::chain(1), &z2());
        assert!(validate_category(&p).is_empty());
        let x = nerve(&p, 4);
        assert!(x.validate().is_empty());
        let sizes: Vec<u128> = x.level_sizes().iter().map(|&s| s as u128).collect();
        assert_eq!(nerve_level_sizes(&p, 4), sizes);
    }

    #[test]
    fn nerve_faces_compose() {
        let x = nerve(&FinCategory::chain(2), 2);
        let s = x.cell_index(2, "0-1|1-2").unwrap();
        assert_eq!(x.cell_name(1, x.face(2, 1).apply(s)), "0-2");
        assert_eq!(x.cell_name(1, x.face(2, 0).apply(s)), "1-2");
        assert_eq!(x.cell_name(1, x.face(2, 2).apply(s)), "0-1");
    }

    #[test]
    fn twisted_arrow_of_arrow() {
        let tw = twisted_arrow(&FinCategory::chain(1)).unwrap();
        assert_eq!(tw.object_count(), 3);
        assert_eq!(tw.morphism_count(), 5);
        assert!(validate_category(&tw).is_empty());
        let f = tw.object_index("0-1").unwrap();
        let id0 = tw.object_index("0-0").unwrap();
        let id1 = tw.object_index("1-1").unwrap();
        assert_eq!(tw.hom(id0, f).len(), 1);
        assert_eq!(tw.hom(id1, f).len(), 1);
        assert_eq!(tw.hom(f, id0).len(), 0);
    }

    #[test]
    fn twisted_arrow_of_terminal_is_terminal() {
        let tw = twisted_arrow(&FinCategory::terminal()).unwrap();
        assert_eq!((tw.object_count(), tw.morphism_count()), (1, 1));
    }

    #[test]
    fn twisted_arrow_objects_are_morphisms() {
        for c in [FinCategory::chain(3), z2(), FinCategory::product(&FinCategory::chain(1), &z2())] {
            let tw = twisted_arrow(&c).unwrap();
            assert_eq!(tw.object_count(), c.morphism_count());
            assert!(validate_category(&tw).is_empty());
        }
    }

    #[test]
    fn canonical_tw_iso_examples() {
        let f = canonical_tw_iso(&FinCategory::chain(1), 1).unwrap();
        assert_eq!(f.source.level_size(0), 3);
        assert_eq!(f.target.level_size(0), 3);
        assert!(f.components[0].is_bijective());
        assert!(iso_check(&f).is_iso());

        let t = canonical_tw_iso(&FinCategory::terminal(), 2).unwrap();
        assert!(t.source.level_sizes().iter().all(|&s| s == 1));
        assert!(iso_check(&t).is_iso());

        for c in [FinCategory::chain(2), z2()] {
            assert!(iso_check(&canonical_tw_iso(&c, 2).unwrap()).is_iso());
        }
    }

    #[test]
    fn opposite_is_involutive() {
        let c = FinCategory::chain(2);
        assert_eq!(c.opposite().opposite(), c);
        assert!(validate_category(&c.opposite()).is_empty());
    }
}
