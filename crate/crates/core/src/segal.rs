//! Segal and 2-Segal maps and their checkers in the discrete semantics.
//!
//! A condition holds when the comparison map is a bijection. Bijectivity is
//! decided from fibers, and a failing check carries an explicit witness.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::delta::{segal_inclusions, two_segal_inclusions};
use crate::error::{Error, Result};
use crate::sset::{pullback, Pullback, SetMap, TruncatedSSet};

/// A map `X_n -> A ×_C B` together with the data describing its target.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComparisonMap {
    /// Level of the domain.
    pub level: usize,
    /// Levels of the two factors.
    pub factor_levels: (usize, usize),
    /// Level of the common base.
    pub base_level: usize,
    pub first: SetMap,
    pub second: SetMap,
    pub first_leg: SetMap,
    pub second_leg: SetMap,
    pub target: Pullback,
    /// `X_n -> P` as positions in `target`.
    pub map: SetMap,
}

impl ComparisonMap {
    fn assemble(
        level: usize,
        factor_levels: (usize, usize),
        base_level: usize,
        first: SetMap,
        second: SetMap,
        first_leg: SetMap,
        second_leg: SetMap,
    ) -> Result<Self> {
        let target = pullback(&first_leg, &second_leg)?;
        let values = (0..first.domain())
            .map(|x| {
                target.position((first.apply(x), second.apply(x))).ok_or_else(|| {
                    Error::Construction(format!("cell {x} does not land in the fiber product"))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let map = SetMap::new(values, target.len())?;
        Ok(Self { level, factor_levels, base_level, first, second, first_leg, second_leg, target, map })
    }

    pub fn domain_size(&self) -> usize {
        self.map.domain()
    }

    pub fn codomain_size(&self) -> usize {
        self.map.codomain()
    }

    /// `None` if bijective; otherwise the first collision if there is one,
    /// else the first uncovered pair.
    pub fn bijectivity_witness(&self, x: &TruncatedSSet) -> Option<Witness> {
        let mut hit: Vec<Option<usize>> = vec![None; self.codomain_size()];
        for (c, &p) in self.map.values().iter().enumerate() {
            if let Some(prev) = hit[p] {
                return Some(Witness::Collision {
                    left: x.cell_name(self.level, prev).to_string(),
                    right: x.cell_name(self.level, c).to_string(),
                });
            }
            hit[p] = Some(c);
        }
        hit.iter().position(Option::is_none).map(|p| {
            let (a, b) = self.target.pairs()[p];
            Witness::Uncovered {
                first: x.cell_name(self.factor_levels.0, a).to_string(),
                second: x.cell_name(self.factor_levels.1, b).to_string(),
            }
        })
    }

    pub fn is_bijective(&self) -> bool {
        self.map.is_bijective()
    }

    /// Re-check a witness against the map itself.
    pub fn confirms(&self, x: &TruncatedSSet, witness: &Witness) -> bool {
        match witness {
            Witness::Collision { left, right } => {
                match (x.cell_index(self.level, left), x.cell_index(self.level, right)) {
                    (Some(a), Some(b)) => a != b && self.map.apply(a) == self.map.apply(b),
                    _ => false,
                }
            }
            Witness::Uncovered { first, second } => {
                let pair = (x.cell_index(self.factor_levels.0, first), x.cell_index(self.factor_levels.1, second));
                match pair {
                    (Some(a), Some(b)) => match self.target.position((a, b)) {
                        Some(p) => !self.map.values().contains(&p),
                        None => false,
                    },
                    _ => false,
                }
            }
            _ => false,
        }
    }
}

/// The Segal map `β^m_j: X_m -> X_j ×_{X_0} X_{m-j}`.
pub fn segal_map(x: &TruncatedSSet, m: usize, j: usize) -> Result<ComparisonMap> {
    if m > x.truncation() {
        return Err(Error::Truncation { level: m, truncation: x.truncation() });
    }
    let (s, t) = segal_inclusions(m, j)?;
    ComparisonMap::assemble(
        m,
        (j, m - j),
        0,
        x.act(&s)?,
        x.act(&t)?,
        x.vertex_map(j, j)?,
        x.vertex_map(m - j, 0)?,
    )
}

/// The 2-Segal map `γ^n_{i,j}: X_n -> X_{outer} ×_{X_{i,j}} X_{inner}`.
pub fn two_segal_map(x: &TruncatedSSet, n: usize, i: usize, j: usize) -> Result<ComparisonMap> {
    if n > x.truncation() {
        return Err(Error::Truncation { level: n, truncation: x.truncation() });
    }
    let inc = two_segal_inclusions(n, i, j)?;
    let outer_level = inc.outer.dom_dim();
    let inner_level = inc.inner.dom_dim();
    ComparisonMap::assemble(
        n,
        (outer_level, inner_level),
        1,
        x.act(&inc.outer)?,
        x.act(&inc.inner)?,
        x.act(&inc.edge_in_outer)?,
        x.act(&inc.edge_in_inner)?,
    )
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Semantics {
    Set,
    Groupoid,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckKind {
    Segal,
    TwoSegal,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Full,
    Reduced,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
    OutOfTruncation,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::OutOfTruncation => "out of truncation",
        })
    }
}

/// Why a comparison map is not a bijection (sets) or not an equivalence
/// (groupoids).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "type")]
pub enum Witness {
    /// A pair in the fiber product with empty preimage.
    Uncovered { first: String, second: String },
    /// Two distinct cells with the same image.
    Collision { left: String, right: String },
    /// A hom-set between `source` and `target` missing `morphism` in the image.
    NotFull { source: String, target: String, morphism: String },
    /// Two morphisms `left`, `right` with equal images.
    NotFaithful { left: String, right: String },
    /// An object not isomorphic to anything in the image.
    NotEssentiallySurjective { object: String },
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::Uncovered { first, second } => write!(f, "uncovered pair ({first}, {second})"),
            Witness::Collision { left, right } => write!(f, "{left} and {right} have the same image"),
            Witness::NotFull { source, target, morphism } => {
                write!(f, "{morphism}: {source} -> {target} is not in the image")
            }
            Witness::NotFaithful { left, right } => write!(f, "{left} and {right} have the same image"),
            Witness::NotEssentiallySurjective { object } => {
                write!(f, "{object} is not isomorphic to an object in the image")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckEntry {
    pub kind: CheckKind,
    /// `(m, j)` or `(n, i, j)`.
    pub indices: Vec<usize>,
    pub domain_size: usize,
    pub codomain_size: usize,
    pub verdict: Verdict,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub verdict: Verdict,
    pub checked: usize,
    pub failed: usize,
    /// Levels at which every condition was decided, as an inclusive range.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certified_levels: Option<(usize, usize)>,
    pub truncation: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub subject: String,
    pub semantics: Semantics,
    pub kind: CheckKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mode: Option<Mode>,
    pub entries: Vec<CheckEntry>,
    pub summary: Summary,
}

impl CheckReport {
    pub(crate) fn assemble(
        subject: &str,
        semantics: Semantics,
        kind: CheckKind,
        mode: Option<Mode>,
        mut entries: Vec<CheckEntry>,
        levels: Option<(usize, usize)>,
        truncation: usize,
    ) -> Self {
        entries.sort_by(|a, b| a.indices.cmp(&b.indices));
        let failed = entries.iter().filter(|e| e.verdict == Verdict::Fail).count();
        Self {
            subject: subject.to_string(),
            semantics,
            kind,
            mode,
            summary: Summary {
                verdict: if failed == 0 { Verdict::Pass } else { Verdict::Fail },
                checked: entries.len(),
                failed,
                certified_levels: levels,
                truncation,
            },
            entries,
        }
    }

    pub fn passed(&self) -> bool {
        self.summary.verdict == Verdict::Pass
    }

    pub fn entry(&self, indices: &[usize]) -> Option<&CheckEntry> {
        self.entries.iter().find(|e| e.indices == indices)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckEntry> {
        self.entries.iter().filter(|e| e.verdict == Verdict::Fail)
    }
}

pub(crate) fn entry_for(kind: CheckKind, indices: Vec<usize>, c: &ComparisonMap, x: &TruncatedSSet) -> CheckEntry {
    let witness = c.bijectivity_witness(x);
    CheckEntry {
        kind,
        indices,
        domain_size: c.domain_size(),
        codomain_size: c.codomain_size(),
        verdict: if witness.is_none() { Verdict::Pass } else { Verdict::Fail },
        witness,
    }
}

/// Segal indices `(m, j)` with `1 ≤ j ≤ m ≤ top`.
pub fn segal_indices(top: usize) -> Vec<(usize, usize)> {
    (1..=top).flat_map(|m| (1..=m).map(move |j| (m, j))).collect()
}

/// 2-Segal indices `(n, i, j)` with `3 ≤ n ≤ top`, optionally restricted to
/// `i = 0` or `j = n`.
pub fn two_segal_indices(top: usize, mode: Mode) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::new();
    for n in 3..=top {
        for i in 0..n {
            for j in i + 1..=n {
                if mode == Mode::Full || i == 0 || j == n {
                    out.push((n, i, j));
                }
            }
        }
    }
    out
}

/// Check every Segal map `β^m_j` with `m` within the truncation.
pub fn segal_check(x: &TruncatedSSet, subject: &str) -> CheckReport {
    let entries = segal_indices(x.truncation())
        .into_iter()
        .map(|(m, j)| entry_for(CheckKind::Segal, vec![m, j], &segal_map(x, m, j).unwrap(), x))
        .collect();
    let levels = (x.truncation() >= 1).then_some((1, x.truncation()));
    CheckReport::assemble(subject, Semantics::Set, CheckKind::Segal, None, entries, levels, x.truncation())
}

/// Check the 2-Segal maps `γ^n_{i,j}` for `3 ≤ n ≤ truncation`.
pub fn two_segal_check(x: &TruncatedSSet, mode: Mode, subject: &str) -> CheckReport {
    let entries = two_segal_indices(x.truncation(), mode)
        .into_iter()
        .map(|(n, i, j)| entry_for(CheckKind::TwoSegal, vec![n, i, j], &two_segal_map(x, n, i, j).unwrap(), x))
        .collect();
    let levels = (x.truncation() >= 3).then_some((3, x.truncation()));
    CheckReport::assemble(subject, Semantics::Set, CheckKind::TwoSegal, Some(mode), entries, levels, x.truncation())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::{nerve, FinCategory};
    use crate::monoid::{bar, truncated_free_monoid};
    use crate::sset::standard_simplex;

    #[test]
    fn nerve_of_chain_is_segal() {
        let x = nerve(&FinCategory::chain(2), 4);
        let b = segal_map(&x, 2, 1).unwrap();
        assert!(b.is_bijective());
        assert_eq!(b.domain_size(), x.level_size(2));
        assert!(segal_check(&x, "N[2]").passed());
        assert!(two_segal_check(&x, Mode::Full, "N[2]").passed());
    }

    #[test]
    fn bar_of_truncated_free_monoid_fails_segal_at_2_1() {
        let x = bar(&truncated_free_monoid(1), 2).unwrap();
        let b = segal_map(&x, 2, 1).unwrap();
        assert_eq!((b.domain_size(), b.codomain_size()), (3, 4));
        let w = b.bijectivity_witness(&x).unwrap();
        assert_eq!(w, Witness::Uncovered { first: "(a)".into(), second: "(a)".into() });
        assert!(b.confirms(&x, &w));
    }

    #[test]
    fn segal_boundary_case() {
        let x = standard_simplex(2, 3);
        for m in 1..=3 {
            let b = segal_map(&x, m, m).unwrap();
            assert!(b.is_bijective());
            assert_eq!(b.factor_levels, (m, 0));
        }
    }

    #[test]
    fn adjacent_two_segal_indices_are_trivially_bijective() {
        let x = bar(&truncated_free_monoid(1), 5).unwrap();
        let y = crate::generate::random_coskeletal_sset(&crate::generate::CoskeletalSpec::new(2, 3, 4), 7).unwrap();
        for z in [x, y] {
            for n in 3..=4 {
                for i in 0..n {
                    assert!(two_segal_map(&z, n, i, i + 1).unwrap().is_bijective());
                }
            }
        }
    }

    #[test]
    fn bar_of_truncated_free_monoid_is_two_segal() {
        let x = bar(&truncated_free_monoid(1), 7).unwrap();
        let full = two_segal_check(&x, Mode::Full, "B");
        assert!(full.passed());
        assert_eq!(full.summary.certified_levels, Some((3, 7)));
        let s = segal_check(&x, "B");
        assert!(!s.passed());
        assert_eq!(s.entry(&[2, 1]).unwrap().verdict, Verdict::Fail);
        for e in s.failures() {
            assert!(0 < e.indices[1] && e.indices[1] < e.indices[0]);
            assert!(matches!(e.witness, Some(Witness::Uncovered { .. })));
        }
    }

    #[test]
    fn point_is_vacuously_fine() {
        let x = standard_simplex(0, 0);
        assert!(segal_check(&x, "pt").entries.is_empty());
        assert!(segal_check(&x, "pt").passed());
        assert!(two_segal_check(&x, Mode::Full, "pt").passed());
    }

    #[test]
    fn collisions_are_reported_first() {
        let x = crate::generate::random_coskeletal_sset(&crate::generate::CoskeletalSpec::new(2, 3, 3), 1).unwrap();
        let y = x.op_reverse();
        for z in [&x, &y] {
            for (m, j) in segal_indices(3) {
                let b = segal_map(z, m, j).unwrap();
                if let Some(w) = b.bijectivity_witness(z) {
                    assert!(b.confirms(z, &w));
                }
            }
        }
    }

    #[test]
    fn reduced_indices() {
        assert_eq!(two_segal_indices(3, Mode::Full).len(), 6);
        let reduced = two_segal_indices(4, Mode::Reduced);
        assert!(reduced.iter().all(|&(n, i, j)| i == 0 || j == n));
        assert!(reduced.contains(&(4, 0, 2)) && !reduced.contains(&(4, 1, 3)));
    }

    #[test]
    fn report_round_trips_through_json() {
        let x = bar(&truncated_free_monoid(1), 3).unwrap();
        let r = segal_check(&x, "B");
        let text = serde_json::to_string(&r).unwrap();
        assert_eq!(serde_json::from_str::<CheckReport>(&text).unwrap(), r);
    }
}
