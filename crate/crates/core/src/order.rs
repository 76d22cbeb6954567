//! Posets on `[n]`, the two-dimensional order `P_σ` of a permutation, and the
//! comparability digraph `D_P`.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::combinatorics::{Partition, Permutation};
use crate::digraph::{Digraph, SUBSET_DP_CAP};
use crate::error::{check_cap, Error, Result};

/// Largest `n` for poset enumeration.
pub const DEFAULT_POSET_ENUM_CAP: usize = 6;

/// A strict partial order on `[n]`. Bit `j` of `above[i]` means
/// `i+1 <_P j+1`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Poset {
    n: usize,
    above: Vec<u64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RelationsKind {
    /// Generating relations, closed transitively on construction.
    Cover,
    /// The full strict order, validated as given.
    Full,
}

impl Poset {
    pub fn new(n: usize, relations: &[(usize, usize)], kind: RelationsKind) -> Result<Self> {
        check_cap("poset size", n, 64)?;
        let mut above = vec![0u64; n];
        for &(a, b) in relations {
            if a == 0 || b == 0 || a > n || b > n {
                return Err(Error::Validation(format!(
                    "relation {a} < {b} leaves [1,{n}]"
                )));
            }
            above[a - 1] |= 1 << (b - 1);
        }
        if kind == RelationsKind::Cover {
            // Warshall closure on bitsets
            for k in 0..n {
                for i in 0..n {
                    if above[i] >> k & 1 == 1 {
                        above[i] |= above[k];
                    }
                }
            }
        }
        let p = Poset { n, above };
        p.validate()?;
        Ok(p)
    }

    fn validate(&self) -> Result<()> {
        for i in 0..self.n {
            if self.above[i] >> i & 1 == 1 {
                return Err(Error::Validation(format!(
                    "relation is not irreflexive or not antisymmetric at {}",
                    i + 1
                )));
            }
            let mut m = self.above[i];
            while m != 0 {
                let j = m.trailing_zeros() as usize;
                m &= m - 1;
                if self.above[j] >> i & 1 == 1 {
                    return Err(Error::Validation(format!(
                        "{} < {} and {} < {}",
                        i + 1,
                        j + 1,
                        j + 1,
                        i + 1
                    )));
                }
                if self.above[j] & !self.above[i] != 0 {
                    return Err(Error::Validation(format!(
                        "relation is not transitive through {}",
                        j + 1
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn antichain(n: usize) -> Self {
        Poset {
            n,
            above: vec![0; n],
        }
    }

    /// The chain `L_n`: `i < j` iff `i < j` as integers.
    pub fn chain(n: usize) -> Self {
        let above = (0..n)
            .map(|i| {
                let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
                all & !((1u64 << (i + 1)) - 1)
            })
            .collect();
        Poset { n, above }
    }

    /// Disjoint union of chains of the given sizes, laid out on consecutive
    /// labels.
    pub fn chain_union(sizes: &[usize]) -> Self {
        let mut p = Poset::antichain(0);
        for &s in sizes {
            p = p.disjoint_union(&Poset::chain(s));
        }
        p
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn less(&self, a: usize, b: usize) -> bool {
        a >= 1 && b >= 1 && a <= self.n && b <= self.n && self.above[a - 1] >> (b - 1) & 1 == 1
    }

    pub fn comparable(&self, a: usize, b: usize) -> bool {
        self.less(a, b) || self.less(b, a)
    }

    /// 0-based strict upper sets.
    pub fn above_masks(&self) -> &[u64] {
        &self.above
    }

    /// 0-based strict lower sets.
    pub fn below_masks(&self) -> Vec<u64> {
        let mut below = vec![0u64; self.n];
        for i in 0..self.n {
            for (j, b) in below.iter_mut().enumerate() {
                if self.above[i] >> j & 1 == 1 {
                    *b |= 1 << i;
                }
            }
        }
        below
    }

    /// All pairs `a < b`, lexicographically.
    pub fn relations(&self) -> Vec<(usize, usize)> {
        let mut r = Vec::new();
        for a in 1..=self.n {
            for b in 1..=self.n {
                if self.less(a, b) {
                    r.push((a, b));
                }
            }
        }
        r
    }

    /// Pairs `a < b` with nothing strictly between.
    pub fn cover_relations(&self) -> Vec<(usize, usize)> {
        self.relations()
            .into_iter()
            .filter(|&(a, b)| !(1..=self.n).any(|c| self.less(a, c) && self.less(c, b)))
            .collect()
    }

    pub fn comparable_pairs(&self) -> usize {
        self.above.iter().map(|m| m.count_ones() as usize).sum()
    }

    pub fn incomparable_pairs(&self) -> usize {
        self.n * self.n.saturating_sub(1) / 2 - self.comparable_pairs()
    }

    /// Reverses the order.
    pub fn dual(&self) -> Poset {
        Poset {
            n: self.n,
            above: self.below_masks(),
        }
    }

    /// `(m_P, M_P)`: numbers of minimal and maximal elements.
    pub fn min_max_counts(&self) -> (usize, usize) {
        let below = self.below_masks();
        let minimal = below.iter().filter(|&&m| m == 0).count();
        let maximal = self.above.iter().filter(|&&m| m == 0).count();
        (minimal, maximal)
    }

    /// Restriction to a 0-based mask, relabelled order-preservingly.
    pub fn restrict_mask(&self, mask: u64) -> Poset {
        let keep: Vec<usize> = (0..self.n).filter(|&v| mask >> v & 1 == 1).collect();
        let above = keep
            .iter()
            .map(|&u| {
                keep.iter()
                    .enumerate()
                    .filter(|(_, &v)| self.above[u] >> v & 1 == 1)
                    .fold(0u64, |m, (j, _)| m | 1 << j)
            })
            .collect();
        Poset {
            n: keep.len(),
            above,
        }
    }

    /// Ordinal sum: everything in `self` below everything in `other`
    /// (shifted by `self.n()`).
    pub fn product(&self, other: &Poset) -> Result<Poset> {
        let n = self.n + other.n;
        check_cap("poset size", n, 64)?;
        let upper = if other.n == 0 {
            0
        } else {
            (u64::MAX >> (64 - other.n)) << self.n
        };
        let mut above: Vec<u64> = self.above.iter().map(|m| m | upper).collect();
        above.extend(other.above.iter().map(|m| m << self.n));
        Ok(Poset { n, above })
    }

    /// Disjoint union with `other` shifted by `self.n()`; no cross relations.
    pub fn disjoint_union(&self, other: &Poset) -> Poset {
        let mut above = self.above.clone();
        above.extend(other.above.iter().map(|m| m << self.n));
        Poset {
            n: self.n + other.n,
            above,
        }
    }

    /// Listings in which every element comes after all its predecessors,
    /// by DP over down-sets.
    pub fn linear_extensions_count(&self) -> Result<u64> {
        check_cap("linear extension DP size", self.n, SUBSET_DP_CAP)?;
        let below = self.below_masks();
        let states = 1usize << self.n;
        let mut dp = vec![0u64; states];
        dp[0] = 1;
        for s in 0..states {
            let c = dp[s];
            if c == 0 {
                continue;
            }
            for (x, &b) in below.iter().enumerate() {
                if s >> x & 1 == 0 && b & !(s as u64) == 0 {
                    dp[s | 1 << x] += c;
                }
            }
        }
        Ok(dp[states - 1])
    }

    /// Listings with no adjacent pair `a, b` such that `a <_P b`; this is the
    /// Hamiltonian path count of the complement of `D_P`.
    pub fn adjacent_ascent_free_count(&self) -> Result<u64> {
        poset_to_digraph(self).complement().count_hamiltonian_paths()
    }

    /// Number of `k`-element chains.
    pub fn count_chains(&self, k: usize) -> Result<u64> {
        if k == 0 || k > self.n {
            return Err(Error::Validation(format!(
                "chain size {k} outside [1,{}]",
                self.n
            )));
        }
        check_cap("chain enumeration size", self.n, SUBSET_DP_CAP)?;
        let mut count = 0;
        for s in 0u64..(1 << self.n) {
            if s.count_ones() as usize != k {
                continue;
            }
            let elems: Vec<usize> = (0..self.n).filter(|&i| s >> i & 1 == 1).collect();
            let total = elems.iter().enumerate().all(|(i, &a)| {
                elems[i + 1..]
                    .iter()
                    .all(|&b| self.above[a] >> b & 1 == 1 || self.above[b] >> a & 1 == 1)
            });
            if total {
                count += 1;
            }
        }
        Ok(count)
    }

    /// Chain sizes when the poset is a disjoint union of chains.
    pub fn chain_structure(&self) -> Option<Partition> {
        let below = self.below_masks();
        let mut seen = 0u64;
        let mut sizes = Vec::new();
        for start in 0..self.n {
            if seen >> start & 1 == 1 {
                continue;
            }
            // connected component of the comparability graph
            let mut comp = 1u64 << start;
            loop {
                let mut grown = comp;
                for v in 0..self.n {
                    if comp >> v & 1 == 1 {
                        grown |= self.above[v] | below[v];
                    }
                }
                if grown == comp {
                    break;
                }
                comp = grown;
            }
            seen |= comp;
            let size = comp.count_ones() as usize;
            let is_chain = (0..self.n)
                .filter(|&v| comp >> v & 1 == 1)
                .all(|v| ((self.above[v] | below[v]) & comp).count_ones() as usize == size - 1);
            if !is_chain {
                return None;
            }
            sizes.push(size);
        }
        Some(Partition::from_unsorted(sizes).expect("component sizes are positive"))
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(PosetJson {
            n: self.n,
            relations: self.relations().into_iter().map(|(a, b)| [a, b]).collect(),
            relations_kind: RelationsKind::Full,
        })
        .expect("plain data serializes")
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Poset> {
        let raw: PosetJson = serde_json::from_value(value.clone())
            .map_err(|e| Error::Validation(format!("bad poset JSON: {e}")))?;
        let rel: Vec<(usize, usize)> = raw.relations.iter().map(|r| (r[0], r[1])).collect();
        Poset::new(raw.n, &rel, raw.relations_kind)
    }
}

impl fmt::Debug for Poset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poset({}", self.n)?;
        for (a, b) in self.cover_relations() {
            write!(f, "; {a}<{b}")?;
        }
        write!(f, ")")
    }
}

#[derive(Serialize, Deserialize)]
struct PosetJson {
    n: usize,
    relations: Vec<[usize; 2]>,
    relations_kind: RelationsKind,
}

#[derive(Serialize, Deserialize)]
struct PermutationJson {
    one_line: Vec<usize>,
}

pub fn permutation_to_json(sigma: &Permutation) -> serde_json::Value {
    serde_json::to_value(PermutationJson {
        one_line: sigma.images().to_vec(),
    })
    .expect("plain data serializes")
}

pub fn permutation_from_json(value: &serde_json::Value) -> Result<Permutation> {
    let raw: PermutationJson = serde_json::from_value(value.clone())
        .map_err(|e| Error::Validation(format!("bad permutation JSON: {e}")))?;
    Permutation::new(raw.one_line)
}

/// `i <_{P_σ} j` iff `i < j` and `σ(i) < σ(j)`.
pub fn perm_to_poset(sigma: &Permutation) -> Poset {
    let n = sigma.len();
    let above = (1..=n)
        .map(|i| {
            ((i + 1)..=n)
                .filter(|&j| sigma.apply(i) < sigma.apply(j))
                .fold(0u64, |m, j| m | 1 << (j - 1))
        })
        .collect();
    Poset { n, above }
}

/// `D_P`: edge `(i, j)` iff `i <_P j`.
pub fn poset_to_digraph(p: &Poset) -> Digraph {
    Digraph::from_masks(p.above.clone()).expect("poset masks stay within [n]")
}

/// Reads a digraph back as a poset; fails unless the edge relation is a
/// strict order.
pub fn digraph_to_poset(x: &Digraph) -> Result<Poset> {
    let p = Poset {
        n: x.n(),
        above: x.out_masks().to_vec(),
    };
    p.validate()?;
    Ok(p)
}

/// Permutations `π` of `[n]` with `π(i) > π(i+1)` or `σ(π(i)) > σ(π(i+1))`
/// at every position.
pub fn sigma_reversing_count(sigma: &Permutation) -> Result<u64> {
    let n = sigma.len();
    let mut edges = Vec::new();
    for a in 1..=n {
        for b in 1..=n {
            if a != b && (a > b || sigma.apply(a) > sigma.apply(b)) {
                edges.push((a, b));
            }
        }
    }
    Digraph::new(n, &edges)?.count_hamiltonian_paths()
}

/// All posets on `[n]`, optionally one representative per isomorphism class.
///
/// Labelled posets are built by inserting element `n` into every poset on
/// `[n-1]` with a compatible (down-set, up-set) pair. Isomorphism classes are
/// built by adding a new maximal element above each down-set and keeping the
/// canonical form of `D_P`.
pub fn enumerate_posets(n: usize, up_to_iso: bool) -> Result<Vec<Poset>> {
    enumerate_posets_with_cap(n, up_to_iso, DEFAULT_POSET_ENUM_CAP)
}

pub fn enumerate_posets_with_cap(n: usize, up_to_iso: bool, cap: usize) -> Result<Vec<Poset>> {
    check_cap("poset enumeration size", n, cap)?;
    let mut level = vec![Poset::antichain(0)];
    for size in 1..=n {
        level = if up_to_iso {
            extend_up_to_iso(&level, size)?
        } else {
            extend_labelled(&level, size)
        };
    }
    Ok(level)
}

fn down_sets(p: &Poset) -> Vec<u64> {
    let below = p.below_masks();
    (0u64..(1 << p.n))
        .filter(|&s| (0..p.n).all(|x| s >> x & 1 == 0 || below[x] & !s == 0))
        .collect()
}

fn extend_labelled(level: &[Poset], size: usize) -> Vec<Poset> {
    let mut out = Vec::new();
    let new = size - 1;
    for p in level {
        let downs = down_sets(p);
        let full = (1u64 << p.n) - 1;
        for &d in &downs {
            for &u_complement in &downs {
                // up-sets are complements of down-sets
                let u = full & !u_complement;
                if d & u != 0 {
                    continue;
                }
                let compatible = (0..p.n)
                    .filter(|&x| d >> x & 1 == 1)
                    .all(|x| p.above[x] & u == u);
                if !compatible {
                    continue;
                }
                let mut above = p.above.clone();
                for (x, a) in above.iter_mut().enumerate() {
                    if d >> x & 1 == 1 {
                        *a |= 1 << new;
                    }
                }
                above.push(u);
                out.push(Poset { n: size, above });
            }
        }
    }
    out.sort();
    out
}

fn extend_up_to_iso(level: &[Poset], size: usize) -> Result<Vec<Poset>> {
    let mut seen = BTreeSet::new();
    let new = size - 1;
    for p in level {
        for d in down_sets(p) {
            let mut above = p.above.clone();
            for (x, a) in above.iter_mut().enumerate() {
                if d >> x & 1 == 1 {
                    *a |= 1 << new;
                }
            }
            above.push(0);
            let q = Poset { n: size, above };
            let canon = poset_to_digraph(&q).canonical_form()?;
            seen.insert(digraph_to_poset(&canon)?);
        }
    }
    Ok(seen.into_iter().collect())
}
