//! Truncated simplicial sets over finite sets.
//!
//! Every cell is stored explicitly (degenerate ones included) and all
//! structure maps are total index tables, so evaluating `X(α)` for an
//! arbitrary monotone `α` is a composite of table lookups.

use std::collections::HashMap;
use std::fmt;
use std::hash::Hash;

use serde::{Deserialize, Serialize};

use crate::delta::{codegeneracy, coface, SimplexMap};
use crate::error::{Error, Result};

/// A total map between finite sets `{0..len} -> {0..codomain}`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SetMap {
    values: Vec<usize>,
    codomain: usize,
}

impl fmt::Debug for SetMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}->{}", self.values, self.codomain)
    }
}

impl SetMap {
    pub fn new(values: Vec<usize>, codomain: usize) -> Result<Self> {
        if let Some(v) = values.iter().find(|&&v| v >= codomain) {
            return Err(Error::IndexOutOfRange(format!("value {v} outside codomain of size {codomain}")));
        }
        Ok(Self { values, codomain })
    }

    pub fn identity(size: usize) -> Self {
        Self { values: (0..size).collect(), codomain: size }
    }

    pub fn domain(&self) -> usize {
        self.values.len()
    }

    pub fn codomain(&self) -> usize {
        self.codomain
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn apply(&self, x: usize) -> usize {
        self.values[x]
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &SetMap) -> Result<SetMap> {
        if first.codomain != self.domain() {
            return Err(Error::SizeMismatch(format!(
                "cannot compose map on {} elements after map into {}",
                self.domain(),
                first.codomain
            )));
        }
        Ok(SetMap {
            values: first.values.iter().map(|&x| self.values[x]).collect(),
            codomain: self.codomain,
        })
    }

    pub fn is_identity(&self) -> bool {
        self.codomain == self.values.len() && self.values.iter().enumerate().all(|(i, &v)| i == v)
    }

    pub fn is_bijective(&self) -> bool {
        if self.values.len() != self.codomain {
            return false;
        }
        let mut seen = vec![false; self.codomain];
        self.values.iter().all(|&v| !std::mem::replace(&mut seen[v], true))
    }

    /// Two-sided inverse, if bijective.
    pub fn inverse(&self) -> Option<SetMap> {
        if !self.is_bijective() {
            return None;
        }
        let mut inv = vec![0; self.codomain];
        for (x, &y) in self.values.iter().enumerate() {
            inv[y] = x;
        }
        Some(SetMap { values: inv, codomain: self.values.len() })
    }
}

/// The fiber product `A ×_C B` of two maps into a common set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pullback {
    pairs: Vec<(usize, usize)>,
    index: HashMap<(usize, usize), usize>,
}

impl Pullback {
    /// Pairs in lexicographic order.
    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn position(&self, pair: (usize, usize)) -> Option<usize> {
        self.index.get(&pair).copied()
    }

    pub fn project_first(&self) -> Vec<usize> {
        self.pairs.iter().map(|p| p.0).collect()
    }

    pub fn project_second(&self) -> Vec<usize> {
        self.pairs.iter().map(|p| p.1).collect()
    }
}

/// Strict pullback of `f: A -> C` and `g: B -> C`. In the discrete
/// semantics this is the homotopy pullback.
pub fn pullback(f: &SetMap, g: &SetMap) -> Result<Pullback> {
    if f.codomain != g.codomain {
        return Err(Error::SizeMismatch(format!(
            "pullback legs have codomains of size {} and {}",
            f.codomain, g.codomain
        )));
    }
    let mut fibers: Vec<Vec<usize>> = vec![Vec::new(); g.codomain];
    for (b, &c) in g.values.iter().enumerate() {
        fibers[c].push(b);
    }
    let mut pairs = Vec::new();
    for (a, &c) in f.values.iter().enumerate() {
        pairs.extend(fibers[c].iter().map(|&b| (a, b)));
    }
    let index = pairs.iter().enumerate().map(|(k, &p)| (p, k)).collect();
    Ok(Pullback { pairs, index })
}

/// A simplicial identity failing at a specific cell.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    /// e.g. `"d_i d_j = d_{j-1} d_i"`
    pub identity: String,
    pub level: usize,
    pub indices: (usize, usize),
    pub cell: String,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} fails at level {} with (i, j) = ({}, {}) on cell {}: {}",
            self.identity, self.level, self.indices.0, self.indices.1, self.cell, self.detail
        )
    }
}

/// A simplicial set known up to level `truncation`.
#[derive(Clone, PartialEq, Eq)]
pub struct TruncatedSSet {
    levels: Vec<Vec<String>>,
    /// `face[n][i]: X_n -> X_{n-1}`; `face[0]` is empty.
    face: Vec<Vec<SetMap>>,
    /// `degeneracy[n][i]: X_n -> X_{n+1}` for `n < truncation`.
    degeneracy: Vec<Vec<SetMap>>,
}

impl fmt::Debug for TruncatedSSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TruncatedSSet(truncation {}, sizes {:?})", self.truncation(), self.level_sizes())
    }
}

impl TruncatedSSet {
    /// Assemble from explicit tables. Tables must be total with values in
    /// range; the simplicial identities are checked separately by
    /// [`validate`](Self::validate).
    pub fn from_tables(
        levels: Vec<Vec<String>>,
        face: Vec<Vec<SetMap>>,
        degeneracy: Vec<Vec<SetMap>>,
    ) -> Result<Self> {
        if levels.is_empty() {
            return Err(Error::Malformed("a truncated simplicial set needs level 0".into()));
        }
        let top = levels.len() - 1;
        if face.len() != top + 1 || degeneracy.len() != top {
            return Err(Error::Malformed(format!(
                "expected {} face levels and {} degeneracy levels",
                top + 1,
                top
            )));
        }
        for (n, cells) in levels.iter().enumerate() {
            let mut names: Vec<&String> = cells.iter().collect();
            names.sort();
            if let Some(w) = names.windows(2).find(|w| w[0] == w[1]) {
                return Err(Error::Malformed(format!("duplicate cell {} at level {n}", w[0])));
            }
        }
        for n in 0..=top {
            let expected = if n == 0 { 0 } else { n + 1 };
            if face[n].len() != expected {
                return Err(Error::Malformed(format!("level {n} needs {expected} face maps")));
            }
            for (i, d) in face[n].iter().enumerate() {
                if d.domain() != levels[n].len() || d.codomain() != levels[n - 1].len() {
                    return Err(Error::Malformed(format!("face d_{i} at level {n} has the wrong shape")));
                }
            }
        }
        for n in 0..top {
            if degeneracy[n].len() != n + 1 {
                return Err(Error::Malformed(format!("level {n} needs {} degeneracy maps", n + 1)));
            }
            for (i, s) in degeneracy[n].iter().enumerate() {
                if s.domain() != levels[n].len() || s.codomain() != levels[n + 1].len() {
                    return Err(Error::Malformed(format!(
                        "degeneracy s_{i} at level {n} has the wrong shape"
                    )));
                }
            }
        }
        Ok(Self { levels, face, degeneracy })
    }

    /// Build from keyed cells: `face(n, i, key)` and `degeneracy(n, i, key)`
    /// compute the key of the image cell, which must exist at the adjacent
    /// level. `None` means the structure map is undefined on that cell and
    /// is reported as a construction error.
    pub fn build<K, N, F, D>(levels: Vec<Vec<K>>, name: N, face: F, degeneracy: D) -> Result<Self>
    where
        K: Hash + Eq + fmt::Debug,
        N: Fn(usize, &K) -> String,
        F: Fn(usize, usize, &K) -> Option<K>,
        D: Fn(usize, usize, &K) -> Option<K>,
    {
        let index: Vec<HashMap<&K, usize>> = levels
            .iter()
            .map(|cells| cells.iter().enumerate().map(|(k, c)| (c, k)).collect())
            .collect();
        let lookup = |n: usize, key: Option<K>, what: &str, from: &K| -> Result<usize> {
            let key = key.ok_or_else(|| Error::Construction(format!("{what} is undefined on {from:?}")))?;
            index[n].get(&key).copied().ok_or_else(|| {
                Error::Construction(format!("{what} of {from:?} is {key:?}, which is not a cell at level {n}"))
            })
        };
        let top = levels.len() - 1;
        let mut faces = vec![Vec::new()];
        for n in 1..=top {
            let mut row = Vec::with_capacity(n + 1);
            for i in 0..=n {
                let values = levels[n]
                    .iter()
                    .map(|c| lookup(n - 1, face(n, i, c), &format!("d_{i}"), c))
                    .collect::<Result<Vec<_>>>()?;
                row.push(SetMap { values, codomain: levels[n - 1].len() });
            }
            faces.push(row);
        }
        let mut degens = Vec::new();
        for n in 0..top {
            let mut row = Vec::with_capacity(n + 1);
            for i in 0..=n {
                let values = levels[n]
                    .iter()
                    .map(|c| lookup(n + 1, degeneracy(n, i, c), &format!("s_{i}"), c))
                    .collect::<Result<Vec<_>>>()?;
                row.push(SetMap { values, codomain: levels[n + 1].len() });
            }
            degens.push(row);
        }
        let names = levels
            .iter()
            .enumerate()
            .map(|(n, cells)| cells.iter().map(|c| name(n, c)).collect())
            .collect();
        Self::from_tables(names, faces, degens)
    }

    pub fn truncation(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn cells(&self, n: usize) -> &[String] {
        &self.levels[n]
    }

    pub fn levels(&self) -> &[Vec<String>] {
        &self.levels
    }

    pub fn level_size(&self, n: usize) -> usize {
        self.levels[n].len()
    }

    pub fn level_sizes(&self) -> Vec<usize> {
        self.levels.iter().map(Vec::len).collect()
    }

    pub fn cell_name(&self, n: usize, x: usize) -> &str {
        &self.levels[n][x]
    }

    pub fn cell_index(&self, n: usize, name: &str) -> Option<usize> {
        self.levels.get(n)?.iter().position(|c| c == name)
    }

    /// `d_i: X_n -> X_{n-1}`.
    pub fn face(&self, n: usize, i: usize) -> &SetMap {
        &self.face[n][i]
    }

    /// `s_i: X_n -> X_{n+1}`.
    pub fn degeneracy(&self, n: usize, i: usize) -> &SetMap {
        &self.degeneracy[n][i]
    }

    #[cfg(test)]
    pub(crate) fn face_mut(&mut self, n: usize, i: usize) -> &mut SetMap {
        &mut self.face[n][i]
    }

    fn check_level(&self, n: usize) -> Result<()> {
        if n > self.truncation() {
            return Err(Error::Truncation { level: n, truncation: self.truncation() });
        }
        Ok(())
    }

    /// `X(α): X_m -> X_n` for `α: [n] -> [m]`, evaluated through the
    /// canonical factorization of `α`.
    pub fn act(&self, alpha: &SimplexMap) -> Result<SetMap> {
        let n = alpha.dom_dim();
        let m = alpha.cod_dim();
        self.check_level(n)?;
        self.check_level(m)?;
        let (cofaces, codegeneracies) = alpha.epi_mono_factorize();
        let mut table = SetMap::identity(self.level_size(m));
        let mut level = m;
        for &i in cofaces.iter().rev() {
            table = self.face[level][i].after(&table)?;
            level -= 1;
        }
        for &j in &codegeneracies {
            table = self.degeneracy[level][j].after(&table)?;
            level += 1;
        }
        debug_assert_eq!(level, n);
        Ok(table)
    }

    /// Evaluate `X(α)` on a single cell.
    pub fn act_on(&self, alpha: &SimplexMap, x: usize) -> Result<usize> {
        Ok(self.act(alpha)?.apply(x))
    }

    /// The `v`-th vertex of every `n`-cell.
    pub fn vertex_map(&self, n: usize, v: usize) -> Result<SetMap> {
        self.act(&crate::delta::vertex(v, n)?)
    }

    /// Check every simplicial identity that lies within the truncation.
    pub fn validate(&self) -> Vec<Violation> {
        let top = self.truncation();
        let mut out = Vec::new();
        let mut check = |identity: &str, level: usize, i: usize, j: usize, lhs: SetMap, rhs: SetMap| {
            for x in 0..lhs.domain() {
                if lhs.apply(x) != rhs.apply(x) {
                    out.push(Violation {
                        identity: identity.to_string(),
                        level,
                        indices: (i, j),
                        cell: self.levels[level][x].clone(),
                        detail: format!("{} != {}", lhs.apply(x), rhs.apply(x)),
                    });
                }
            }
        };
        // d_i d_j = d_{j-1} d_i for i < j, on X_n with n >= 2
        for n in 2..=top {
            for j in 1..=n {
                for i in 0..j {
                    let lhs = self.face[n - 1][i].after(&self.face[n][j]).unwrap();
                    let rhs = self.face[n - 1][j - 1].after(&self.face[n][i]).unwrap();
                    check("d_i d_j = d_{j-1} d_i", n, i, j, lhs, rhs);
                }
            }
        }
        // s_i s_j = s_{j+1} s_i for i <= j, on X_n with n + 2 <= top
        for n in 0..top.saturating_sub(1) {
            for j in 0..=n {
                for i in 0..=j {
                    let lhs = self.degeneracy[n + 1][i].after(&self.degeneracy[n][j]).unwrap();
                    let rhs = self.degeneracy[n + 1][j + 1].after(&self.degeneracy[n][i]).unwrap();
                    check("s_i s_j = s_{j+1} s_i", n, i, j, lhs, rhs);
                }
            }
        }
        // d_i s_j on X_n with n + 1 <= top
        for n in 0..top {
            for j in 0..=n {
                for i in 0..=n + 1 {
                    let lhs = self.face[n + 1][i].after(&self.degeneracy[n][j]).unwrap();
                    let (identity, rhs) = if i < j {
                        ("d_i s_j = s_{j-1} d_i", self.degeneracy[n - 1][j - 1].after(&self.face[n][i]).unwrap())
                    } else if i == j || i == j + 1 {
                        ("d_i s_j = id", SetMap::identity(self.level_size(n)))
                    } else {
                        ("d_i s_j = s_j d_{i-1}", self.degeneracy[n - 1][j].after(&self.face[n][i - 1]).unwrap())
                    };
                    check(identity, n, i, j, lhs, rhs);
                }
            }
        }
        out
    }

    /// The edgewise subdivision: level `n` is `X_{2n+1}` and structure maps
    /// are `X(ε(δ_i))`, `X(ε(σ_i))`.
    pub fn esd(&self) -> Result<TruncatedSSet> {
        if self.truncation() < 1 {
            return Err(Error::Truncation { level: 1, truncation: self.truncation() });
        }
        let top = (self.truncation() - 1) / 2;
        let levels = (0..=top).map(|n| self.levels[2 * n + 1].clone()).collect();
        let mut face = vec![Vec::new()];
        for n in 1..=top {
            face.push((0..=n).map(|i| self.act(&coface(i, n)?.epsilon())).collect::<Result<_>>()?);
        }
        let degeneracy = (0..top)
            .map(|n| (0..=n).map(|i| self.act(&codegeneracy(i, n)?.epsilon())).collect::<Result<_>>())
            .collect::<Result<_>>()?;
        TruncatedSSet::from_tables(levels, face, degeneracy)
    }

    /// The same cells with vertex order reversed: `d_i ↦ d_{n-i}`,
    /// `s_i ↦ s_{n-i}`.
    pub fn op_reverse(&self) -> TruncatedSSet {
        let face = self
            .face
            .iter()
            .enumerate()
            .map(|(n, row)| (0..row.len()).map(|i| row[n - i].clone()).collect())
            .collect();
        let degeneracy = self
            .degeneracy
            .iter()
            .enumerate()
            .map(|(n, row)| (0..=n).map(|i| row[n - i].clone()).collect())
            .collect();
        TruncatedSSet { levels: self.levels.clone(), face, degeneracy }
    }

    /// Cells at level `n` outside the image of every degeneracy.
    pub fn nondegenerate_cells(&self, n: usize) -> Result<Vec<usize>> {
        self.check_level(n)?;
        let mut degenerate = vec![false; self.level_size(n)];
        if n > 0 {
            for s in &self.degeneracy[n - 1] {
                for &y in s.values() {
                    degenerate[y] = true;
                }
            }
        }
        Ok((0..self.level_size(n)).filter(|&x| !degenerate[x]).collect())
    }

    /// Lower the truncation by forgetting higher levels.
    pub fn truncate(&self, top: usize) -> TruncatedSSet {
        let top = top.min(self.truncation());
        TruncatedSSet {
            levels: self.levels[..=top].to_vec(),
            face: self.face[..=top].to_vec(),
            degeneracy: self.degeneracy[..top].to_vec(),
        }
    }

    /// The same tables with new cell names, given level by level.
    pub fn renamed(&self, levels: Vec<Vec<String>>) -> Result<TruncatedSSet> {
        if levels.len() != self.levels.len() || levels.iter().zip(&self.levels).any(|(a, b)| a.len() != b.len()) {
            return Err(Error::Malformed("renaming must keep every level size".into()));
        }
        TruncatedSSet::from_tables(levels, self.face.clone(), self.degeneracy.clone())
    }

    /// Total number of cells over all stored levels.
    pub fn total_cells(&self) -> usize {
        self.levels.iter().map(Vec::len).sum()
    }
}

/// Levelwise total maps between two truncated simplicial sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialMap {
    pub source: TruncatedSSet,
    pub target: TruncatedSSet,
    pub components: Vec<SetMap>,
}

impl SimplicialMap {
    pub fn new(source: TruncatedSSet, target: TruncatedSSet, components: Vec<SetMap>) -> Result<Self> {
        if source.truncation() != target.truncation() || components.len() != source.truncation() + 1 {
            return Err(Error::SizeMismatch("simplicial map needs one component per level".into()));
        }
        for (n, c) in components.iter().enumerate() {
            if c.domain() != source.level_size(n) || c.codomain() != target.level_size(n) {
                return Err(Error::SizeMismatch(format!("component at level {n} has the wrong shape")));
            }
        }
        Ok(Self { source, target, components })
    }

    /// Commutation failures with face and degeneracy tables, as
    /// `(level, "d_i" | "s_i", cell)`.
    pub fn naturality_failures(&self) -> Vec<(usize, String, String)> {
        let x = &self.source;
        let y = &self.target;
        let mut out = Vec::new();
        for n in 1..=x.truncation() {
            for i in 0..=n {
                for c in 0..x.level_size(n) {
                    let lhs = self.components[n - 1].apply(x.face(n, i).apply(c));
                    let rhs = y.face(n, i).apply(self.components[n].apply(c));
                    if lhs != rhs {
                        out.push((n, format!("d_{i}"), x.cell_name(n, c).to_string()));
                    }
                }
            }
        }
        for n in 0..x.truncation() {
            for i in 0..=n {
                for c in 0..x.level_size(n) {
                    let lhs = self.components[n + 1].apply(x.degeneracy(n, i).apply(c));
                    let rhs = y.degeneracy(n, i).apply(self.components[n].apply(c));
                    if lhs != rhs {
                        out.push((n, format!("s_{i}"), x.cell_name(n, c).to_string()));
                    }
                }
            }
        }
        out
    }

    /// Apply the subdivision levelwise: component `n` of `esd(f)` is
    /// component `2n+1` of `f`.
    pub fn esd(&self) -> Result<SimplicialMap> {
        let source = self.source.esd()?;
        let target = self.target.esd()?;
        let components = (0..=source.truncation()).map(|n| self.components[2 * n + 1].clone()).collect();
        SimplicialMap::new(source, target, components)
    }
}

/// The standard simplex `Δ[k]` up to level `truncation`: level `n` is the
/// set of monotone maps `[n] -> [k]`, named by their value strings.
pub fn standard_simplex(k: usize, truncation: usize) -> TruncatedSSet {
    let levels: Vec<Vec<SimplexMap>> = (0..=truncation)
        .map(|n| crate::delta::monotone_maps(n + 1, k + 1))
        .collect();
    let name = |_: usize, f: &SimplexMap| {
        if k < 10 {
            f.values().iter().map(|v| v.to_string()).collect()
        } else {
            f.values().iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")
        }
    };
    let face = |n: usize, i: usize, f: &SimplexMap| f.compose(&coface(i, n).ok()?).ok();
    let degen = |n: usize, i: usize, f: &SimplexMap| f.compose(&codegeneracy(i, n).ok()?).ok();
    TruncatedSSet::build(levels, name, face, degen).expect("standard simplex is closed under generators")
}
