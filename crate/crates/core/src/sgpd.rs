//! Truncated simplicial groupoids and their Segal and 2-Segal checks, where
//! weak equivalences are equivalences of groupoids and homotopy pullbacks
//! are iso-comma groupoids.

use std::collections::HashMap;
use std::fmt;
use std::hash::Hash;

use crate::delta::{segal_inclusions, two_segal_inclusions, SimplexMap};
use crate::error::{Error, Result};
use crate::groupoid::{groupoid_equivalence, iso_comma, validate_functor, validate_groupoid, FinGroupoid, Functor, IsoComma};
use crate::segal::{segal_indices, two_segal_indices, CheckEntry, CheckKind, CheckReport, Mode, Semantics, Verdict, Witness};
use crate::sset::{TruncatedSSet, Violation};

/// A simplicial groupoid up to level `truncation`. The object and morphism
/// parts are stored as two simplicial sets whose level-`n` cells are the
/// objects and morphisms of `levels[n]`, in the same order.
#[derive(Clone, PartialEq, Eq)]
pub struct TruncatedSGpd {
    levels: Vec<FinGroupoid>,
    ob: TruncatedSSet,
    mor: TruncatedSSet,
}

impl fmt::Debug for TruncatedSGpd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sizes: Vec<(usize, usize)> = self.levels.iter().map(|g| (g.object_count(), g.morphism_count())).collect();
        write!(f, "TruncatedSGpd(truncation {}, sizes {sizes:?})", self.truncation())
    }
}

impl TruncatedSGpd {
    pub fn new(levels: Vec<FinGroupoid>, ob: TruncatedSSet, mor: TruncatedSSet) -> Result<Self> {
        if levels.len() != ob.truncation() + 1 || ob.truncation() != mor.truncation() {
            return Err(Error::Malformed("object and morphism parts need the same truncation as the levels".into()));
        }
        for (n, g) in levels.iter().enumerate() {
            if ob.cells(n) != g.objects() {
                return Err(Error::Malformed(format!("object cells at level {n} do not match the groupoid")));
            }
            if mor.level_size(n) != g.morphism_count()
                || mor.cells(n).iter().zip(g.morphisms()).any(|(c, m)| *c != m.name)
            {
                return Err(Error::Malformed(format!("morphism cells at level {n} do not match the groupoid")));
            }
        }
        Ok(Self { levels, ob, mor })
    }

    /// Sets regarded as groupoids with only identities.
    pub fn discrete(x: &TruncatedSSet) -> Self {
        let levels: Vec<FinGroupoid> = x.levels().iter().map(|cells| FinGroupoid::discrete(cells.clone())).collect();
        let names = levels.iter().map(|g| g.morphisms().iter().map(|m| m.name.clone()).collect()).collect();
        let mor = x.renamed(names).expect("same shape");
        Self { levels, ob: x.clone(), mor }
    }

    /// Build from keyed objects and morphisms. The structure maps act on
    /// object keys and morphism keys separately.
    #[allow(clippy::too_many_arguments)]
    pub(crate) fn build<O, M>(
        levels: Vec<FinGroupoid>,
        object_keys: Vec<Vec<O>>,
        morphism_keys: Vec<Vec<M>>,
        object_face: impl Fn(usize, usize, &O) -> Option<O>,
        object_degeneracy: impl Fn(usize, usize, &O) -> Option<O>,
        morphism_face: impl Fn(usize, usize, &M) -> Option<M>,
        morphism_degeneracy: impl Fn(usize, usize, &M) -> Option<M>,
    ) -> Result<Self>
    where
        O: Hash + Eq + fmt::Debug,
        M: Hash + Eq + fmt::Debug,
    {
        let ob_names: Vec<Vec<String>> = levels.iter().map(|g| g.objects().to_vec()).collect();
        let mor_names: Vec<Vec<String>> =
            levels.iter().map(|g| g.morphisms().iter().map(|m| m.name.clone()).collect()).collect();
        let ob_pos: Vec<HashMap<&O, usize>> =
            object_keys.iter().map(|l| l.iter().enumerate().map(|(i, k)| (k, i)).collect()).collect();
        let mor_pos: Vec<HashMap<&M, usize>> =
            morphism_keys.iter().map(|l| l.iter().enumerate().map(|(i, k)| (k, i)).collect()).collect();
        let ob = TruncatedSSet::build(
            object_keys.iter().map(|l| l.iter().collect::<Vec<_>>()).collect(),
            |n, k| ob_names[n][ob_pos[n][*k]].clone(),
            |n, i, k| object_face(n, i, k).and_then(|o| ob_pos[n - 1].get_key_value(&o).map(|(k, _)| *k)),
            |n, i, k| object_degeneracy(n, i, k).and_then(|o| ob_pos[n + 1].get_key_value(&o).map(|(k, _)| *k)),
        )?;
        let mor = TruncatedSSet::build(
            morphism_keys.iter().map(|l| l.iter().collect::<Vec<_>>()).collect(),
            |n, k| mor_names[n][mor_pos[n][*k]].clone(),
            |n, i, k| morphism_face(n, i, k).and_then(|m| mor_pos[n - 1].get_key_value(&m).map(|(k, _)| *k)),
            |n, i, k| morphism_degeneracy(n, i, k).and_then(|m| mor_pos[n + 1].get_key_value(&m).map(|(k, _)| *k)),
        )?;
        Self::new(levels, ob, mor)
    }

    pub fn truncation(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn level(&self, n: usize) -> &FinGroupoid {
        &self.levels[n]
    }

    pub fn levels(&self) -> &[FinGroupoid] {
        &self.levels
    }

    pub fn objects(&self) -> &TruncatedSSet {
        &self.ob
    }

    pub fn morphisms(&self) -> &TruncatedSSet {
        &self.mor
    }

    /// The functor `Y(α)`.
    pub fn act(&self, alpha: &SimplexMap) -> Result<Functor> {
        Ok(Functor {
            objects: self.ob.act(alpha)?.values().to_vec(),
            morphisms: self.mor.act(alpha)?.values().to_vec(),
        })
    }

    pub fn face(&self, n: usize, i: usize) -> Functor {
        Functor { objects: self.ob.face(n, i).values().to_vec(), morphisms: self.mor.face(n, i).values().to_vec() }
    }

    pub fn degeneracy(&self, n: usize, i: usize) -> Functor {
        Functor {
            objects: self.ob.degeneracy(n, i).values().to_vec(),
            morphisms: self.mor.degeneracy(n, i).values().to_vec(),
        }
    }

    /// Groupoid laws at each level, functoriality of every structure map and
    /// the simplicial identities on objects and morphisms.
    pub fn validate(&self) -> Vec<String> {
        let mut out = Vec::new();
        for (n, g) in self.levels.iter().enumerate() {
            out.extend(validate_groupoid(g).into_iter().map(|v| format!("level {n}: {v}")));
        }
        for n in 1..=self.truncation() {
            for i in 0..=n {
                let v = validate_functor(&self.levels[n], &self.levels[n - 1], &self.face(n, i));
                out.extend(v.into_iter().map(|v| format!("d_{i} at level {n}: {v}")));
            }
        }
        for n in 0..self.truncation() {
            for i in 0..=n {
                let v = validate_functor(&self.levels[n], &self.levels[n + 1], &self.degeneracy(n, i));
                out.extend(v.into_iter().map(|v| format!("s_{i} at level {n}: {v}")));
            }
        }
        let tag = |part: &str, v: Violation| format!("{part}: {v}");
        out.extend(self.ob.validate().into_iter().map(|v| tag("objects", v)));
        out.extend(self.mor.validate().into_iter().map(|v| tag("morphisms", v)));
        out
    }

    /// Level `n` is `Y_{2n+1}` with structure functors through `ε`.
    pub fn esd(&self) -> Result<TruncatedSGpd> {
        let ob = self.ob.esd()?;
        let mor = self.mor.esd()?;
        let levels = (0..=ob.truncation()).map(|n| self.levels[2 * n + 1].clone()).collect();
        Self::new(levels, ob, mor)
    }

    pub fn op_reverse(&self) -> TruncatedSGpd {
        Self { levels: self.levels.clone(), ob: self.ob.op_reverse(), mor: self.mor.op_reverse() }
    }

    /// Number of isomorphism classes at each level.
    pub fn component_counts(&self) -> Vec<usize> {
        self.levels.iter().map(FinGroupoid::component_count).collect()
    }
}

/// A comparison functor `Y_n -> A ×^h_C B` into an iso-comma groupoid.
#[derive(Clone, Debug)]
pub struct ComparisonFunctor {
    pub level: usize,
    pub first: Functor,
    pub second: Functor,
    pub first_leg: Functor,
    pub second_leg: Functor,
    pub target: IsoComma,
    pub functor: Functor,
}

fn comparison(
    y: &TruncatedSGpd,
    level: usize,
    (first, first_level): (&SimplexMap, usize),
    (second, second_level): (&SimplexMap, usize),
    (first_leg, second_leg): (&SimplexMap, &SimplexMap),
    base_level: usize,
) -> Result<ComparisonFunctor> {
    let first = y.act(first)?;
    let second = y.act(second)?;
    let first_leg = y.act(first_leg)?;
    let second_leg = y.act(second_leg)?;
    let target = iso_comma(
        y.level(first_level),
        y.level(second_level),
        y.level(base_level),
        &first_leg,
        &second_leg,
    )?;
    let g = y.level(level);
    let base = y.level(base_level);
    let objects = (0..g.object_count())
        .map(|x| {
            let a = first.objects[x];
            let b = second.objects[x];
            let key = (a, b, base.identity(first_leg.objects[a]));
            target.object_index.get(&key).copied().ok_or_else(|| Error::Construction(format!("{key:?} is not in the iso-comma")))
        })
        .collect::<Result<Vec<_>>>()?;
    let morphisms = (0..g.morphism_count())
        .map(|u| {
            let key = (objects[g.src(u)], first.morphisms[u], second.morphisms[u]);
            target.morphism_index.get(&key).copied().ok_or_else(|| Error::Construction(format!("{key:?} is not in the iso-comma")))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ComparisonFunctor { level, first, second, first_leg, second_leg, target, functor: Functor { objects, morphisms } })
}

/// The groupoid Segal comparison for `β^m_j`.
pub fn sgpd_segal_map(y: &TruncatedSGpd, m: usize, j: usize) -> Result<ComparisonFunctor> {
    if m > y.truncation() {
        return Err(Error::Truncation { level: m, truncation: y.truncation() });
    }
    let (s, t) = segal_inclusions(m, j)?;
    let v_first = crate::delta::vertex(j, j)?;
    let v_second = crate::delta::vertex(0, m - j)?;
    comparison(y, m, (&s, j), (&t, m - j), (&v_first, &v_second), 0)
}

/// The groupoid 2-Segal comparison for `γ^n_{i,j}`.
pub fn sgpd_two_segal_map(y: &TruncatedSGpd, n: usize, i: usize, j: usize) -> Result<ComparisonFunctor> {
    if n > y.truncation() {
        return Err(Error::Truncation { level: n, truncation: y.truncation() });
    }
    let inc = two_segal_inclusions(n, i, j)?;
    comparison(
        y,
        n,
        (&inc.outer, inc.outer.dom_dim()),
        (&inc.inner, inc.inner.dom_dim()),
        (&inc.edge_in_outer, &inc.edge_in_inner),
        1,
    )
}

fn entry(kind: CheckKind, indices: Vec<usize>, y: &TruncatedSGpd, c: &ComparisonFunctor) -> CheckEntry {
    let source = y.level(c.level);
    let invalid = validate_functor(source, &c.target.groupoid, &c.functor);
    let witness = if let Some(v) = invalid.first() {
        Some(Witness::NotFaithful { left: v.law.clone(), right: v.witness.join(",") })
    } else {
        groupoid_equivalence(source, &c.target.groupoid, &c.functor).err()
    };
    CheckEntry {
        kind,
        indices,
        domain_size: source.object_count(),
        codomain_size: c.target.groupoid.object_count(),
        verdict: if witness.is_none() { Verdict::Pass } else { Verdict::Fail },
        witness,
    }
}

pub fn sgpd_segal_check(y: &TruncatedSGpd, subject: &str) -> CheckReport {
    let entries = segal_indices(y.truncation())
        .into_iter()
        .map(|(m, j)| entry(CheckKind::Segal, vec![m, j], y, &sgpd_segal_map(y, m, j).unwrap()))
        .collect();
    let levels = (y.truncation() >= 1).then_some((1, y.truncation()));
    CheckReport::assemble(subject, Semantics::Groupoid, CheckKind::Segal, None, entries, levels, y.truncation())
}

pub fn sgpd_two_segal_check(y: &TruncatedSGpd, mode: Mode, subject: &str) -> CheckReport {
    let entries = two_segal_indices(y.truncation(), mode)
        .into_iter()
        .map(|(n, i, j)| entry(CheckKind::TwoSegal, vec![n, i, j], y, &sgpd_two_segal_map(y, n, i, j).unwrap()))
        .collect();
    let levels = (y.truncation() >= 3).then_some((3, y.truncation()));
    CheckReport::assemble(subject, Semantics::Groupoid, CheckKind::TwoSegal, Some(mode), entries, levels, y.truncation())
}

/// Whether the comparison functors for `β^m_j` of `esd(y)` and
/// `γ^{2m+1}_{m-j,m+j+1}` of `y` agree on the nose, with factors swapped.
pub fn sgpd_beta_gamma_equality(y: &TruncatedSGpd, esd: &TruncatedSGpd, m: usize, j: usize) -> Result<bool> {
    let beta = sgpd_segal_map(esd, m, j)?;
    let gamma = sgpd_two_segal_map(y, 2 * m + 1, m - j, m + j + 1)?;
    Ok(beta.first == gamma.second
        && beta.second == gamma.first
        && beta.first_leg == gamma.second_leg
        && beta.second_leg == gamma.first_leg)
}

/// Largest universe size accepted by [`s_construction`].
pub const MAX_CARD: usize = 3;
/// Largest truncation accepted by [`s_construction`].
pub const MAX_S_TRUNCATION: usize = 4;

/// An object of `S_n`: for each non-basepoint element `u` of the universe,
/// the first index `t(u) ∈ {1, …, n}` with `u ∈ A_{0,t(u)}`, or `n + 1` if
/// `u` never enters. The array is recovered as `A_{ij} = A_{0j} / A_{0i}`.
type Flag = Vec<usize>;

/// A morphism of `S_n`: a bijection between the supports of two flags
/// preserving entry indices; `None` off the support.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct FlagIso {
    source: Flag,
    target: Flag,
    map: Vec<Option<usize>>,
}

fn flag_name(t: &Flag) -> String {
    if t.is_empty() {
        "*".into()
    } else {
        t.iter().map(|x| x.to_string()).collect()
    }
}

fn flags(universe: usize, n: usize) -> Vec<Flag> {
    let mut out = vec![Vec::new()];
    for _ in 0..universe {
        out = out.into_iter().flat_map(|t| (1..=n + 1).map(move |v| {
            let mut u = t.clone();
            u.push(v);
            u
        })).collect();
    }
    out
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(k - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, k - 1);
            out.push(q);
        }
    }
    out.sort();
    out
}

fn flag_isos(universe: usize, n: usize, objects: &[Flag]) -> Vec<FlagIso> {
    let perms = permutations(universe);
    let mut out = Vec::new();
    for s in objects {
        for t in objects {
            let mut maps: Vec<Vec<Option<usize>>> = Vec::new();
            for p in &perms {
                let ok = (0..universe).all(|u| {
                    let absent = s[u] == n + 1;
                    if absent {
                        true
                    } else {
                        t[p[u]] == s[u]
                    }
                });
                let supports_match = (0..universe).filter(|&u| s[u] <= n).count() == (0..universe).filter(|&u| t[u] <= n).count();
                if ok && supports_match {
                    let map: Vec<Option<usize>> = (0..universe).map(|u| (s[u] <= n).then_some(p[u])).collect();
                    if !maps.contains(&map) {
                        maps.push(map);
                    }
                }
            }
            out.extend(maps.into_iter().map(|map| FlagIso { source: s.clone(), target: t.clone(), map }));
        }
    }
    out
}

fn flag_face(n: usize, k: usize, t: &Flag) -> Flag {
    t.iter()
        .map(|&x| {
            if k == 0 {
                if x == 1 { n } else { x - 1 }
            } else if x <= k {
                x
            } else {
                x - 1
            }
        })
        .collect()
}

fn flag_degeneracy(k: usize, t: &Flag) -> Flag {
    t.iter().map(|&x| if x <= k { x } else { x + 1 }).collect()
}

fn restrict_iso(f: &FlagIso, source: Flag, target: Flag, level: usize) -> FlagIso {
    let map = f.map.iter().zip(&source).map(|(&m, &s)| if s <= level { m } else { None }).collect();
    FlagIso { source, target, map }
}

/// Waldhausen's construction on pointed sets with at most `max_card`
/// elements including the basepoint, up to level `truncation`.
///
/// Level `n` is the groupoid of arrays `A_{ij}` (`0 ≤ i ≤ j ≤ n`) of
/// pointed sets, where `A_{0,1} ↪ … ↪ A_{0,n}` is a chain of subsets of a
/// fixed universe and `A_{ij}` is the quotient `A_{0j} / A_{0i}`, realized
/// as the complement with the basepoint adjoined. Every square is then
/// bicartesian. Faces delete an index, which at `0` means quotienting by
/// `A_{01}`; degeneracies repeat one. Morphisms are isomorphisms of arrays,
/// which are determined by their restriction to `A_{0n}`.
pub fn s_construction(max_card: usize, truncation: usize) -> Result<TruncatedSGpd> {
    if max_card == 0 || max_card > MAX_CARD || truncation > MAX_S_TRUNCATION {
        return Err(Error::Limit(format!(
            "s_construction needs 1 <= max_card <= {MAX_CARD} and truncation <= {MAX_S_TRUNCATION}"
        )));
    }
    let universe = max_card - 1;
    let object_keys: Vec<Vec<Flag>> = (0..=truncation).map(|n| flags(universe, n)).collect();
    let morphism_keys: Vec<Vec<FlagIso>> =
        (0..=truncation).map(|n| flag_isos(universe, n, &object_keys[n])).collect();
    let levels = (0..=truncation)
        .map(|n| {
            let objects = &object_keys[n];
            let index: HashMap<&Flag, usize> = objects.iter().enumerate().map(|(i, t)| (t, i)).collect();
            FinGroupoid::from_keys(
                objects.iter().map(flag_name).collect(),
                morphism_keys[n].clone(),
                |f| {
                    let map: String = f.map.iter().map(|m| m.map_or("-".to_string(), |v| (v + 1).to_string())).collect();
                    format!("{}>{}:{}", flag_name(&f.source), flag_name(&f.target), if map.is_empty() { "*".into() } else { map })
                },
                |f| (index[&f.source], index[&f.target]),
                |o| FlagIso {
                    source: objects[o].clone(),
                    target: objects[o].clone(),
                    map: (0..universe).map(|u| (objects[o][u] <= n).then_some(u)).collect(),
                },
                |g, f| {
                    (g.source == f.target).then(|| FlagIso {
                        source: f.source.clone(),
                        target: g.target.clone(),
                        map: f.map.iter().map(|m| m.and_then(|v| g.map[v])).collect(),
                    })
                },
                |f| {
                    let mut map = vec![None; universe];
                    for (u, m) in f.map.iter().enumerate() {
                        if let Some(v) = m {
                            map[*v] = Some(u);
                        }
                    }
                    FlagIso { source: f.target.clone(), target: f.source.clone(), map }
                },
            )
        })
        .collect::<Result<Vec<_>>>()?;
    TruncatedSGpd::build(
        levels,
        object_keys,
        morphism_keys,
        |n, k, t| Some(flag_face(n, k, t)),
        |_, k, t| Some(flag_degeneracy(k, t)),
        |n, k, f| Some(restrict_iso(f, flag_face(n, k, &f.source), flag_face(n, k, &f.target), n - 1)),
        |n, k, f| Some(restrict_iso(f, flag_degeneracy(k, &f.source), flag_degeneracy(k, &f.target), n + 1)),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monoid::{bar, truncated_free_monoid};
    use crate::segal::{segal_check, two_segal_check};

    #[test]
    fn s_construction_levels() {
        let y = s_construction(2, 3).unwrap();
        assert!(y.validate().is_empty(), "{:?}", y.validate());
        assert_eq!(y.component_counts()[..3], [1, 2, 3]);
        let z = s_construction(3, 3).unwrap();
        assert!(z.validate().is_empty(), "{:?}", z.validate());
        // a two-element pointed set has a swap
        let one = z.level(1);
        let full = one.object_index("11").unwrap();
        assert_eq!(one.hom(full, full).len(), 2);
        assert!(s_construction(4, 2).is_err());
    }

    #[test]
    fn s_construction_is_two_segal() {
        for c in 1..=3 {
            let y = s_construction(c, 3).unwrap();
            let r = sgpd_two_segal_check(&y, Mode::Full, "S");
            assert!(r.passed(), "c={c}: {:?}", r.failures().collect::<Vec<_>>());
            let e = y.esd().unwrap();
            assert!(e.validate().is_empty());
            assert_eq!(e.level(0), y.level(1));
            assert!(sgpd_segal_check(&e, "esd S").passed());
        }
    }

    #[test]
    fn s_construction_fails_segal() {
        let y = s_construction(2, 2).unwrap();
        assert!(!sgpd_segal_check(&y, "S").passed());
    }

    #[test]
    fn discrete_agrees_with_set_checks() {
        for x in [bar(&truncated_free_monoid(1), 5).unwrap(), bar(&truncated_free_monoid(2), 4).unwrap()] {
            let y = TruncatedSGpd::discrete(&x);
            assert!(y.validate().is_empty());
            let verdicts = |r: &CheckReport| r.entries.iter().map(|e| (e.indices.clone(), e.verdict)).collect::<Vec<_>>();
            assert_eq!(verdicts(&sgpd_segal_check(&y, "x")), verdicts(&segal_check(&x, "x")));
            assert_eq!(
                verdicts(&sgpd_two_segal_check(&y, Mode::Full, "x")),
                verdicts(&two_segal_check(&x, Mode::Full, "x"))
            );
        }
    }

    #[test]
    fn beta_gamma_on_the_nose() {
        let y = s_construction(3, 3).unwrap();
        let e = y.esd().unwrap();
        assert!(sgpd_beta_gamma_equality(&y, &e, 1, 1).unwrap());
    }
}
