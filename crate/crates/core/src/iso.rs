//! Certifying and searching for isomorphisms of truncated simplicial sets.

use serde::{Deserialize, Serialize};

use crate::sset::{SetMap, SimplicialMap, TruncatedSSet};

/// Outcome of [`iso_check`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsoVerdict {
    /// Levels whose component is not a bijection.
    pub non_bijective_levels: Vec<usize>,
    /// `(level, "d_i" | "s_i", cell)` where the map fails to commute.
    pub naturality_failures: Vec<(usize, String, String)>,
}

impl IsoVerdict {
    pub fn is_iso(&self) -> bool {
        self.non_bijective_levels.is_empty() && self.naturality_failures.is_empty()
    }
}

/// Check that every component of `f` is a bijection and that `f` commutes
/// with all structure maps.
pub fn iso_check(f: &SimplicialMap) -> IsoVerdict {
    IsoVerdict {
        non_bijective_levels: f
            .components
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_bijective())
            .map(|(n, _)| n)
            .collect(),
        naturality_failures: f.naturality_failures(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IsoSearch {
    Found(SimplicialMap),
    NotIsomorphic,
    /// The node budget ran out before the search space was exhausted.
    Inconclusive { nodes: u64 },
}

/// Per-cell invariants used to prune candidate images.
fn signatures(x: &TruncatedSSet) -> Vec<Vec<Vec<usize>>> {
    let top = x.truncation();
    (0..=top)
        .map(|n| {
            let mut sig = vec![Vec::new(); x.level_size(n)];
            if n < top {
                for i in 0..=n + 1 {
                    let mut count = vec![0; x.level_size(n)];
                    for &v in x.face(n + 1, i).values() {
                        count[v] += 1;
                    }
                    for (c, s) in sig.iter_mut().zip(count) {
                        c.push(s);
                    }
                }
            }
            if n > 0 {
                let mut degenerate = vec![0; x.level_size(n)];
                for i in 0..n {
                    for &v in x.degeneracy(n - 1, i).values() {
                        degenerate[v] += 1;
                    }
                }
                for (c, d) in sig.iter_mut().zip(degenerate) {
                    c.push(d);
                }
            }
            sig
        })
        .collect()
}

struct Search<'a> {
    x: &'a TruncatedSSet,
    y: &'a TruncatedSSet,
    sig_x: Vec<Vec<Vec<usize>>>,
    sig_y: Vec<Vec<Vec<usize>>>,
    /// For each level and cell of `x`, the pairs `(i, z)` with `s_i z = x`.
    degenerate_from: Vec<Vec<Vec<(usize, usize)>>>,
    order: Vec<(usize, usize)>,
    assignment: Vec<Vec<Option<usize>>>,
    used: Vec<Vec<bool>>,
    nodes: u64,
    budget: u64,
}

impl Search<'_> {
    fn candidates(&self, n: usize, c: usize) -> Vec<usize> {
        if let Some(&(i, z)) = self.degenerate_from[n][c].first() {
            let forced = self.y.degeneracy(n - 1, i).apply(self.assignment[n - 1][z].unwrap());
            return vec![forced];
        }
        if n > 0 {
            // Images must have the prescribed faces; search the fiber of d_0.
            let d0 = self.assignment[n - 1][self.x.face(n, 0).apply(c)].unwrap();
            return (0..self.y.level_size(n)).filter(|&y| self.y.face(n, 0).apply(y) == d0).collect();
        }
        (0..self.y.level_size(0)).collect()
    }

    fn admissible(&self, n: usize, c: usize, y: usize) -> bool {
        if self.used[n][y] || self.sig_x[n][c] != self.sig_y[n][y] {
            return false;
        }
        if n > 0 {
            for i in 0..=n {
                let want = self.assignment[n - 1][self.x.face(n, i).apply(c)].unwrap();
                if self.y.face(n, i).apply(y) != want {
                    return false;
                }
            }
        }
        self.degenerate_from[n][c]
            .iter()
            .all(|&(i, z)| self.y.degeneracy(n - 1, i).apply(self.assignment[n - 1][z].unwrap()) == y)
    }

    /// `Some(true)` on success, `Some(false)` if this branch is exhausted,
    /// `None` when the budget runs out.
    fn run(&mut self, pos: usize) -> Option<bool> {
        if pos == self.order.len() {
            return Some(true);
        }
        let (n, c) = self.order[pos];
        for y in self.candidates(n, c) {
            if !self.admissible(n, c, y) {
                continue;
            }
            self.nodes += 1;
            if self.nodes > self.budget {
                return None;
            }
            self.assignment[n][c] = Some(y);
            self.used[n][y] = true;
            if self.run(pos + 1)? {
                return Some(true);
            }
            self.assignment[n][c] = None;
            self.used[n][y] = false;
        }
        Some(false)
    }
}

/// Backtracking search for an isomorphism `x -> y`, assigning vertices first
/// and extending upward level by level. Each tentative assignment costs one
/// node of `budget`.
pub fn iso_search(x: &TruncatedSSet, y: &TruncatedSSet, budget: u64) -> IsoSearch {
    if x.truncation() != y.truncation() || x.level_sizes() != y.level_sizes() {
        return IsoSearch::NotIsomorphic;
    }
    let sig_x = signatures(x);
    let sig_y = signatures(y);
    for n in 0..=x.truncation() {
        let mut a = sig_x[n].clone();
        let mut b = sig_y[n].clone();
        a.sort();
        b.sort();
        if a != b {
            return IsoSearch::NotIsomorphic;
        }
    }
    let degenerate_from = (0..=x.truncation())
        .map(|n| {
            let mut from = vec![Vec::new(); x.level_size(n)];
            if n > 0 {
                for i in 0..n {
                    for (z, &c) in x.degeneracy(n - 1, i).values().iter().enumerate() {
                        from[c].push((i, z));
                    }
                }
            }
            from
        })
        .collect();
    let order = (0..=x.truncation()).flat_map(|n| (0..x.level_size(n)).map(move |c| (n, c))).collect();
    let mut search = Search {
        x,
        y,
        sig_x,
        sig_y,
        degenerate_from,
        order,
        assignment: x.level_sizes().iter().map(|&s| vec![None; s]).collect(),
        used: y.level_sizes().iter().map(|&s| vec![false; s]).collect(),
        nodes: 0,
        budget,
    };
    match search.run(0) {
        None => IsoSearch::Inconclusive { nodes: search.nodes },
        Some(false) => IsoSearch::NotIsomorphic,
        Some(true) => {
            let components = search
                .assignment
                .iter()
                .zip(y.level_sizes())
                .map(|(a, size)| SetMap::new(a.iter().map(|v| v.unwrap()).collect(), size).unwrap())
                .collect();
            let f = SimplicialMap::new(x.clone(), y.clone(), components).unwrap();
            debug_assert!(iso_check(&f).is_iso());
            IsoSearch::Found(f)
        }
    }
}
