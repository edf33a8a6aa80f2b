//! The simplex category: monotone maps between finite ordinals, their
//! canonical factorization, the edgewise functor and the index maps used by
//! the Segal and 2-Segal conditions.
//!
//! An ordinal `[n] = {0 < 1 < ... < n}` has size `n + 1`. Maps are stored as
//! explicit value sequences; generator words are only produced on demand by
//! [`SimplexMap::epi_mono_factorize`]. Composition follows the usual
//! convention: `g.compose(&f)` is "g after f".

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A weakly increasing map `[dom_size - 1] -> [cod_size - 1]`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SimplexMap {
    cod_size: usize,
    values: Vec<usize>,
}

impl fmt::Debug for SimplexMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]->[{}] {:?}", self.dom_dim(), self.cod_dim(), self.values)
    }
}

impl SimplexMap {
    pub fn new(values: Vec<usize>, cod_size: usize) -> Result<Self> {
        if values.is_empty() || cod_size == 0 {
            return Err(Error::InvalidMap("ordinals must be nonempty".into()));
        }
        if values.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::InvalidMap(format!("{values:?} is not weakly increasing")));
        }
        if let Some(v) = values.iter().find(|&&v| v >= cod_size) {
            return Err(Error::InvalidMap(format!(
                "value {v} outside codomain of size {cod_size}"
            )));
        }
        Ok(Self { cod_size, values })
    }

    /// Identity on `[n]`.
    pub fn identity(n: usize) -> Self {
        Self { cod_size: n + 1, values: (0..=n).collect() }
    }

    pub fn dom_size(&self) -> usize {
        self.values.len()
    }

    pub fn cod_size(&self) -> usize {
        self.cod_size
    }

    /// `n` for a map out of `[n]`.
    pub fn dom_dim(&self) -> usize {
        self.values.len() - 1
    }

    /// `m` for a map into `[m]`.
    pub fn cod_dim(&self) -> usize {
        self.cod_size - 1
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn apply(&self, i: usize) -> usize {
        self.values[i]
    }

    pub fn is_identity(&self) -> bool {
        self.cod_size == self.values.len() && self.values.iter().enumerate().all(|(i, &v)| i == v)
    }

    pub fn is_injective(&self) -> bool {
        self.values.windows(2).all(|w| w[0] < w[1])
    }

    pub fn is_surjective(&self) -> bool {
        self.values[0] == 0
            && *self.values.last().unwrap() == self.cod_size - 1
            && self.values.windows(2).all(|w| w[1] - w[0] <= 1)
    }

    /// `self ∘ f`.
    pub fn compose(&self, f: &SimplexMap) -> Result<SimplexMap> {
        if f.cod_size != self.dom_size() {
            return Err(Error::SizeMismatch(format!(
                "cannot compose {self:?} after {f:?}"
            )));
        }
        Ok(SimplexMap {
            cod_size: self.cod_size,
            values: f.values.iter().map(|&v| self.values[v]).collect(),
        })
    }

    /// The canonical factorization `δ_{i_s}∘…∘δ_{i_1}∘σ_{j_1}∘…∘σ_{j_t}`.
    ///
    /// Returns `(i_1 < … < i_s, j_1 < … < j_t)`: the values missed by the map
    /// and the positions `j` with `α(j) = α(j + 1)`.
    pub fn epi_mono_factorize(&self) -> (Vec<usize>, Vec<usize>) {
        let missed = (0..self.cod_size)
            .filter(|v| self.values.binary_search(v).is_err())
            .collect();
        let repeated = self
            .values
            .windows(2)
            .enumerate()
            .filter(|(_, w)| w[0] == w[1])
            .map(|(j, _)| j)
            .collect();
        (missed, repeated)
    }

    /// Rebuild a map from a factorization produced by
    /// [`epi_mono_factorize`](Self::epi_mono_factorize).
    pub fn from_factorization(dom_dim: usize, cofaces: &[usize], codegeneracies: &[usize]) -> Result<Self> {
        let mut map = SimplexMap::identity(dom_dim);
        for &j in codegeneracies.iter().rev() {
            let level = map.cod_dim();
            if level == 0 {
                return Err(Error::IndexOutOfRange("too many codegeneracies".into()));
            }
            map = codegeneracy(j, level - 1)?.compose(&map)?;
        }
        for &i in cofaces {
            map = coface(i, map.cod_dim() + 1)?.compose(&map)?;
        }
        Ok(map)
    }

    /// Apply the edgewise functor `[n] ↦ [n]^op ⋆ [n] ≅ [2n+1]`.
    ///
    /// Position `k ≤ n` of the image ordinal is the primed vertex `(n-k)'`,
    /// position `n+1+k` is the unprimed vertex `k`.
    pub fn epsilon(&self) -> SimplexMap {
        let n = self.dom_dim();
        let m = self.cod_dim();
        let values = (0..=2 * n + 1)
            .map(|k| {
                if k <= n {
                    m - self.values[n - k]
                } else {
                    m + 1 + self.values[k - n - 1]
                }
            })
            .collect();
        SimplexMap { cod_size: 2 * m + 2, values }
    }

    /// The map between subsets induced by `self`, where `sub_dom` and
    /// `sub_cod` are strictly increasing subsets of the domain and codomain
    /// and `self` sends the first into the second.
    pub fn restrict(&self, sub_dom: &[usize], sub_cod: &[usize]) -> Result<SimplexMap> {
        let values = sub_dom
            .iter()
            .map(|&d| {
                let v = *self.values.get(d).ok_or_else(|| {
                    Error::IndexOutOfRange(format!("{d} not in domain of {self:?}"))
                })?;
                sub_cod.binary_search(&v).map_err(|_| {
                    Error::InvalidMap(format!("{self:?} sends {d} outside {sub_cod:?}"))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        SimplexMap::new(values, sub_cod.len())
    }
}

/// The coface `δ_i: [n-1] -> [n]` missing `i`.
pub fn coface(i: usize, n: usize) -> Result<SimplexMap> {
    if n == 0 || i > n {
        return Err(Error::IndexOutOfRange(format!("coface δ_{i} into [{n}]")));
    }
    let values = (0..n).map(|k| if k < i { k } else { k + 1 }).collect();
    Ok(SimplexMap { cod_size: n + 1, values })
}

/// The codegeneracy `σ_i: [n+1] -> [n]` hitting `i` twice.
pub fn codegeneracy(i: usize, n: usize) -> Result<SimplexMap> {
    if i > n {
        return Err(Error::IndexOutOfRange(format!("codegeneracy σ_{i} onto [{n}]")));
    }
    let values = (0..=n + 1).map(|k| if k <= i { k } else { k - 1 }).collect();
    Ok(SimplexMap { cod_size: n + 1, values })
}

/// The vertex `v: [0] -> [n]`.
pub fn vertex(v: usize, n: usize) -> Result<SimplexMap> {
    SimplexMap::new(vec![v], n + 1)
}

/// Enumerate a strictly increasing subset of `[n]` as an injection.
pub fn subset_inclusion(subset: &[usize], n: usize) -> Result<SimplexMap> {
    if subset.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidMap(format!("{subset:?} is not strictly increasing")));
    }
    SimplexMap::new(subset.to_vec(), n + 1)
}

/// All monotone maps `[dom_size-1] -> [cod_size-1]`, in lexicographic order.
pub fn monotone_maps(dom_size: usize, cod_size: usize) -> Vec<SimplexMap> {
    fn extend(prefix: &mut Vec<usize>, dom_size: usize, cod_size: usize, out: &mut Vec<SimplexMap>) {
        if prefix.len() == dom_size {
            out.push(SimplexMap { cod_size, values: prefix.clone() });
            return;
        }
        let start = prefix.last().copied().unwrap_or(0);
        for v in start..cod_size {
            prefix.push(v);
            extend(prefix, dom_size, cod_size, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if dom_size > 0 && cod_size > 0 {
        extend(&mut Vec::with_capacity(dom_size), dom_size, cod_size, &mut out);
    }
    out
}

/// The maps `[j] -> [m] <- [m-j]` along which the Segal map is induced:
/// `i ↦ i` and `i ↦ i + j`.
pub fn segal_inclusions(m: usize, j: usize) -> Result<(SimplexMap, SimplexMap)> {
    if j == 0 || j > m {
        return Err(Error::IndexOutOfRange(format!("segal inclusions need 1 <= j <= m, got m={m}, j={j}")));
    }
    let first = SimplexMap { cod_size: m + 1, values: (0..=j).collect() };
    let second = SimplexMap { cod_size: m + 1, values: (j..=m).collect() };
    Ok((first, second))
}

/// Index data for the 2-Segal map `γ^n_{i,j}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoSegalInclusions {
    /// `{0, …, i, j, …, n} ↪ [n]`
    pub outer: SimplexMap,
    /// `{i, …, j} ↪ [n]`
    pub inner: SimplexMap,
    /// `{i, j} ↪ [n]`
    pub edge: SimplexMap,
    /// The diagonal inside the outer polygon.
    pub edge_in_outer: SimplexMap,
    /// The diagonal inside the inner polygon.
    pub edge_in_inner: SimplexMap,
}

impl TwoSegalInclusions {
    pub fn outer_subset(&self) -> &[usize] {
        self.outer.values()
    }

    pub fn inner_subset(&self) -> &[usize] {
        self.inner.values()
    }
}

pub fn two_segal_inclusions(n: usize, i: usize, j: usize) -> Result<TwoSegalInclusions> {
    if n < 3 || i >= j || j > n {
        return Err(Error::IndexOutOfRange(format!(
            "2-Segal indices need n >= 3 and 0 <= i < j <= n, got n={n}, i={i}, j={j}"
        )));
    }
    let outer_set: Vec<usize> = (0..=i).chain(j..=n).collect();
    let inner_set: Vec<usize> = (i..=j).collect();
    let outer = subset_inclusion(&outer_set, n)?;
    let inner = subset_inclusion(&inner_set, n)?;
    let edge = subset_inclusion(&[i, j], n)?;
    let edge_in_outer = SimplexMap { cod_size: outer_set.len(), values: vec![i, i + 1] };
    let edge_in_inner = SimplexMap { cod_size: inner_set.len(), values: vec![0, j - i] };
    Ok(TwoSegalInclusions { outer, inner, edge, edge_in_outer, edge_in_inner })
}

/// The section/retraction pair `δ: [n] -> [2n-1]`, `σ: [2n-1] -> [n]`
/// embedding the polygon cut by the diagonal `(0, k)` into the polygon cut
/// by `(n-k, n+k-1)`.
pub fn retract_maps(n: usize, k: usize) -> Result<(SimplexMap, SimplexMap)> {
    if n < 3 || k <= 1 || k >= n {
        return Err(Error::IndexOutOfRange(format!("retract maps need n >= 3 and 1 < k < n, got n={n}, k={k}")));
    }
    let delta: Vec<usize> = (0..=n).map(|i| if i == 0 { n - k } else { i + n - 1 }).collect();
    let sigma: Vec<usize> = (0..2 * n).map(|i| if i < n { 0 } else { i - n + 1 }).collect();
    Ok((
        SimplexMap { cod_size: 2 * n, values: delta },
        SimplexMap { cod_size: n + 1, values: sigma },
    ))
}

/// The order-reversing involution `i ↦ n - i` of `[n]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Reversal {
    n: usize,
}

impl Reversal {
    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn apply(&self, i: usize) -> usize {
        self.n - i
    }

    pub fn values(&self) -> Vec<usize> {
        (0..=self.n).map(|i| self.apply(i)).collect()
    }

    /// `ρ_m ∘ α ∘ ρ_n`, again monotone.
    pub fn conjugate(alpha: &SimplexMap) -> SimplexMap {
        let n = alpha.dom_dim();
        let m = alpha.cod_dim();
        SimplexMap {
            cod_size: alpha.cod_size,
            values: (0..=n).map(|i| m - alpha.values[n - i]).collect(),
        }
    }
}

pub fn reversal(n: usize) -> Reversal {
    Reversal { n }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// A vertex of `[n]^op ⋆ [n]`.
    #[derive(Clone, Copy, PartialEq, Eq, Debug)]
    enum JoinVertex {
        Primed(usize),
        Plain(usize),
    }

    /// The join `[n]^op ⋆ [n]` listed in increasing order:
    /// `n' < … < 0' < 0 < … < n`.
    fn join_order(n: usize) -> Vec<JoinVertex> {
        (0..=n)
            .rev()
            .map(JoinVertex::Primed)
            .chain((0..=n).map(JoinVertex::Plain))
            .collect()
    }

    /// Transport `α` through the join and read the result back as positions.
    fn epsilon_oracle(alpha: &SimplexMap) -> SimplexMap {
        let src = join_order(alpha.dom_dim());
        let dst = join_order(alpha.cod_dim());
        let values = src
            .iter()
            .map(|v| {
                let image = match *v {
                    JoinVertex::Primed(i) => JoinVertex::Primed(alpha.apply(i)),
                    JoinVertex::Plain(i) => JoinVertex::Plain(alpha.apply(i)),
                };
                dst.iter().position(|w| *w == image).unwrap()
            })
            .collect();
        SimplexMap::new(values, dst.len()).unwrap()
    }

    fn map(values: &[usize], cod_size: usize) -> SimplexMap {
        SimplexMap::new(values.to_vec(), cod_size).unwrap()
    }

    #[test]
    fn rejects_invalid_maps() {
        assert!(SimplexMap::new(vec![1, 0], 2).is_err());
        assert!(SimplexMap::new(vec![0, 2], 2).is_err());
        assert!(SimplexMap::new(vec![], 2).is_err());
    }

    #[test]
    fn compose_examples() {
        let id2 = SimplexMap::identity(2);
        assert_eq!(id2.compose(&id2).unwrap(), id2);

        let c = coface(2, 3).unwrap().compose(&coface(0, 2).unwrap()).unwrap();
        assert_eq!(c, map(&[1, 3], 4));
        // enumerate injections [1] -> [3]; the one missing {0, 2} is the composite
        let missing_0_2: Vec<_> = monotone_maps(2, 4)
            .into_iter()
            .filter(|f| f.is_injective())
            .filter(|f| f.epi_mono_factorize().0 == vec![0, 2])
            .collect();
        assert_eq!(missing_0_2, vec![c]);

        let sd = codegeneracy(0, 0).unwrap().compose(&coface(0, 1).unwrap()).unwrap();
        assert!(sd.is_identity());
        assert_eq!(sd.dom_dim(), 0);
    }

    #[test]
    fn compose_size_mismatch() {
        let err = codegeneracy(0, 1).unwrap().compose(&coface(0, 1).unwrap());
        assert!(matches!(err, Err(Error::SizeMismatch(_))));
    }

    #[test]
    fn generators() {
        assert_eq!(coface(0, 1).unwrap(), map(&[1], 2));
        assert_eq!(coface(2, 2).unwrap(), map(&[0, 1], 3));
        assert_eq!(codegeneracy(1, 1).unwrap(), map(&[0, 1, 1], 2));
        assert!(coface(3, 2).is_err());
        assert!(coface(0, 0).is_err());
        assert!(codegeneracy(2, 1).is_err());
    }

    #[test]
    fn factorization_examples() {
        assert_eq!(SimplexMap::identity(3).epi_mono_factorize(), (vec![], vec![]));
        assert_eq!(map(&[0, 0, 1], 2).epi_mono_factorize(), (vec![], vec![0]));
        let f = map(&[1, 2], 4);
        let (cofaces, codegens) = f.epi_mono_factorize();
        assert_eq!((cofaces.clone(), codegens.clone()), (vec![0, 3], vec![]));
        assert_eq!(SimplexMap::from_factorization(1, &cofaces, &codegens).unwrap(), f);
    }

    #[test]
    fn factorization_recomposes_exhaustively() {
        for d in 1..=5 {
            for c in 1..=5 {
                for f in monotone_maps(d, c) {
                    let (cofaces, codegens) = f.epi_mono_factorize();
                    assert!(cofaces.windows(2).all(|w| w[0] < w[1]));
                    assert!(codegens.windows(2).all(|w| w[0] < w[1]));
                    let g = SimplexMap::from_factorization(f.dom_dim(), &cofaces, &codegens).unwrap();
                    assert_eq!(g, f);
                }
            }
        }
    }

    #[test]
    fn factorization_is_unique() {
        // every strictly ordered word of the right shape recomposes to a
        // distinct map, so the canonical word is the only one
        for d in 1..=4 {
            for c in 1..=4 {
                let maps = monotone_maps(d, c);
                let words: std::collections::HashSet<_> =
                    maps.iter().map(|f| f.epi_mono_factorize()).collect();
                assert_eq!(words.len(), maps.len());
            }
        }
    }

    #[test]
    fn epsilon_examples() {
        assert_eq!(SimplexMap::identity(1).epsilon(), SimplexMap::identity(3));
        assert_eq!(coface(0, 1).unwrap().epsilon(), map(&[0, 3], 4));
        assert_eq!(coface(1, 1).unwrap().epsilon(), map(&[1, 2], 4));
        assert_eq!(codegeneracy(0, 0).unwrap().epsilon(), map(&[0, 0, 1, 1], 2));
        for f in [coface(0, 1).unwrap(), coface(1, 1).unwrap(), codegeneracy(0, 0).unwrap()] {
            assert_eq!(f.epsilon(), epsilon_oracle(&f));
        }
    }

    #[test]
    fn epsilon_matches_join_oracle_exhaustively() {
        for d in 1..=5 {
            for c in 1..=5 {
                for f in monotone_maps(d, c) {
                    assert_eq!(f.epsilon(), epsilon_oracle(&f), "{f:?}");
                }
            }
        }
    }

    #[test]
    fn epsilon_is_functorial() {
        for a in 1..=5 {
            assert!(SimplexMap::identity(a - 1).epsilon().is_identity());
            for b in 1..=5 {
                for c in 1..=5 {
                    for f in monotone_maps(a, b) {
                        for g in monotone_maps(b, c) {
                            let lhs = g.compose(&f).unwrap().epsilon();
                            let rhs = g.epsilon().compose(&f.epsilon()).unwrap();
                            assert_eq!(lhs, rhs);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn segal_inclusion_examples() {
        let (s, t) = segal_inclusions(2, 1).unwrap();
        assert_eq!((s, t), (map(&[0, 1], 3), map(&[1, 2], 3)));
        let (s, t) = segal_inclusions(3, 2).unwrap();
        assert_eq!((s, t), (map(&[0, 1, 2], 4), map(&[2, 3], 4)));
        for m in 1..6 {
            let (s, t) = segal_inclusions(m, m).unwrap();
            assert!(s.is_identity());
            assert_eq!(t, map(&[m], m + 1));
        }
        assert!(segal_inclusions(2, 0).is_err());
        assert!(segal_inclusions(2, 3).is_err());
    }

    #[test]
    fn two_segal_inclusion_examples() {
        let t = two_segal_inclusions(3, 0, 2).unwrap();
        assert_eq!(t.outer_subset(), &[0, 2, 3]);
        assert_eq!(t.inner_subset(), &[0, 1, 2]);
        assert_eq!(t.edge.values(), &[0, 2]);
        let t = two_segal_inclusions(4, 1, 4).unwrap();
        assert_eq!(t.outer_subset(), &[0, 1, 4]);
        assert_eq!(t.inner_subset(), &[1, 2, 3, 4]);
        assert_eq!(t.edge.values(), &[1, 4]);
        let t = two_segal_inclusions(5, 1, 2).unwrap();
        assert_eq!(t.inner_subset(), t.edge.values());
        assert!(two_segal_inclusions(2, 0, 1).is_err());
        assert!(two_segal_inclusions(4, 2, 2).is_err());
        assert!(two_segal_inclusions(4, 1, 5).is_err());
    }

    #[test]
    fn two_segal_triangles_commute() {
        for n in 3..=8 {
            for i in 0..n {
                for j in i + 1..=n {
                    let t = two_segal_inclusions(n, i, j).unwrap();
                    assert!(t.outer.is_injective() && t.inner.is_injective());
                    assert_eq!(t.outer.compose(&t.edge_in_outer).unwrap(), t.edge);
                    assert_eq!(t.inner.compose(&t.edge_in_inner).unwrap(), t.edge);
                }
            }
        }
    }

    #[test]
    fn epsilon_of_segal_inclusions_are_polygon_pieces() {
        for m in 1..=6 {
            for j in 1..=m {
                let (s, t) = segal_inclusions(m, j).unwrap();
                assert!(s.is_injective() && t.is_injective());
                let inner: Vec<usize> = (m - j..=m + j + 1).collect();
                let outer: Vec<usize> = (0..=m - j).chain(m + j + 1..=2 * m + 1).collect();
                assert_eq!(s.epsilon(), subset_inclusion(&inner, 2 * m + 1).unwrap());
                assert_eq!(t.epsilon(), subset_inclusion(&outer, 2 * m + 1).unwrap());
            }
        }
    }

    #[test]
    fn retract_map_examples() {
        let (d, s) = retract_maps(3, 2).unwrap();
        assert_eq!(d, map(&[1, 3, 4, 5], 6));
        assert_eq!(s, map(&[0, 0, 0, 1, 2, 3], 4));
        assert!(s.compose(&d).unwrap().is_identity());

        let (d, s) = retract_maps(4, 2).unwrap();
        assert_eq!(d, map(&[2, 4, 5, 6, 7], 8));
        assert!(s.compose(&d).unwrap().is_identity());

        assert!(retract_maps(3, 1).is_err());
        assert!(retract_maps(3, 3).is_err());
        assert!(retract_maps(2, 1).is_err());
    }

    #[test]
    fn retraction_is_left_inverse() {
        for n in 3..=8 {
            for k in 2..n {
                let (d, s) = retract_maps(n, k).unwrap();
                assert!(s.compose(&d).unwrap().is_identity(), "n={n} k={k}");
            }
        }
    }

    #[test]
    fn reversal_examples() {
        assert_eq!(reversal(1).values(), vec![1, 0]);
        assert_eq!(reversal(3).values(), vec![3, 2, 1, 0]);
        for n in 0..6 {
            let r = reversal(n);
            assert!((0..=n).all(|i| r.apply(r.apply(i)) == i));
        }
        for d in 1..=4 {
            for c in 1..=4 {
                for f in monotone_maps(d, c) {
                    assert_eq!(Reversal::conjugate(&Reversal::conjugate(&f)), f);
                }
            }
        }
    }

    #[test]
    fn restrict_between_subsets() {
        let (d, _) = retract_maps(3, 2).unwrap();
        // inner {0,1,2} ↦ {1,3,4} ⊂ inner of the big polygon {1,…,4}
        let r = d.restrict(&[0, 1, 2], &[1, 2, 3, 4]).unwrap();
        assert_eq!(r, map(&[0, 2, 3], 4));
        assert!(d.restrict(&[0, 1], &[3, 4]).is_err());
    }
}
