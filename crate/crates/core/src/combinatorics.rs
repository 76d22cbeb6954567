//! Compositions, partitions, descent subsets, set compositions and
//! permutations, together with the enumeration streams the rest of the crate
//! is built on.
//!
//! Enumeration orders are fixed so transcripts are reproducible:
//! compositions and partitions come out in reverse lexicographic order
//! (`(3), (2,1), (1,2), (1,1,1)`), subsets by increasing bitmask,
//! permutations in lexicographic order of their one-line notation, and set
//! compositions in lexicographic order of their block-assignment word.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest `n` for which [`permutations`] and friends may be materialized
/// into a `Vec` by helper functions.
pub const DEFAULT_MATERIALIZE_CAP: usize = 10;

fn fmt_list(f: &mut fmt::Formatter<'_>, parts: &[usize]) -> fmt::Result {
    write!(f, "[")?;
    for (i, p) in parts.iter().enumerate() {
        if i > 0 {
            write!(f, ",")?;
        }
        write!(f, "{p}")?;
    }
    write!(f, "]")
}

/// A finite sequence of positive integers.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Composition {
    parts: Vec<usize>,
}

impl Composition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.iter().any(|&p| p == 0) {
            return Err(Error::Validation(format!(
                "composition {parts:?} has a zero part"
            )));
        }
        Ok(Composition { parts })
    }

    /// The empty composition of 0.
    pub fn empty() -> Self {
        Composition { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// The integer being composed.
    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    /// The partition obtained by sorting the parts decreasingly.
    pub fn sorted(&self) -> Partition {
        let mut parts = self.parts.clone();
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    pub fn concat(&self, other: &Composition) -> Composition {
        let mut parts = self.parts.clone();
        parts.extend_from_slice(&other.parts);
        Composition { parts }
    }
}

impl TryFrom<Vec<usize>> for Composition {
    type Error = Error;
    fn try_from(parts: Vec<usize>) -> Result<Self> {
        Composition::new(parts)
    }
}

impl From<Composition> for Vec<usize> {
    fn from(c: Composition) -> Self {
        c.parts
    }
}

impl fmt::Debug for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_list(f, &self.parts)
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_list(f, &self.parts)
    }
}

/// A weakly decreasing sequence of positive integers.
///
/// `Ord` is reverse lexicographic: `(3) < (2,1) < (1,1,1)`. Sorting a list of
/// partitions therefore yields the decreasing-lexicographic order used for
/// serialization and transition matrices.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.iter().any(|&p| p == 0) {
            return Err(Error::Validation(format!(
                "partition {parts:?} has a zero part"
            )));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Validation(format!(
                "partition {parts:?} is not weakly decreasing"
            )));
        }
        Ok(Partition { parts })
    }

    /// Sorts arbitrary positive parts into a partition.
    pub fn from_unsorted(mut parts: Vec<usize>) -> Result<Self> {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition::new(parts)
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    /// `(n)` for `n >= 1`, the empty partition for `n = 0`.
    pub fn single(n: usize) -> Self {
        if n == 0 {
            Partition::empty()
        } else {
            Partition { parts: vec![n] }
        }
    }

    /// `(k, 1, ..., 1)` of size `n`.
    pub fn hook(k: usize, n: usize) -> Result<Self> {
        if k == 0 || k > n {
            return Err(Error::Validation(format!("no hook ({k},1,..) of {n}")));
        }
        let mut parts = vec![k];
        parts.extend(std::iter::repeat(1).take(n - k));
        Ok(Partition { parts })
    }

    pub fn ones(n: usize) -> Self {
        Partition { parts: vec![1; n] }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn as_composition(&self) -> Composition {
        Composition {
            parts: self.parts.clone(),
        }
    }

    /// Multiset union of the parts; this is the index of `p_self * p_other`.
    pub fn union(&self, other: &Partition) -> Partition {
        let mut parts = self.parts.clone();
        parts.extend_from_slice(&other.parts);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    /// Multiplicity of each part size, indexed by size.
    pub fn multiplicities(&self) -> Vec<usize> {
        let mut m = vec![0; self.parts.first().copied().unwrap_or(0) + 1];
        for &p in &self.parts {
            m[p] += 1;
        }
        m
    }
}

impl Ord for Partition {
    fn cmp(&self, other: &Self) -> Ordering {
        other.parts.cmp(&self.parts)
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl TryFrom<Vec<usize>> for Partition {
    type Error = Error;
    fn try_from(parts: Vec<usize>) -> Result<Self> {
        Partition::new(parts)
    }
}

impl From<Partition> for Vec<usize> {
    fn from(p: Partition) -> Self {
        p.parts
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_list(f, &self.parts)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_list(f, &self.parts)
    }
}

/// `true` iff `mu` is below `lambda` in dominance order.
pub fn dominance_leq(mu: &Partition, lambda: &Partition) -> Result<bool> {
    if mu.size() != lambda.size() {
        return Err(Error::Validation(format!(
            "dominance compares partitions of one integer, got {mu} and {lambda}"
        )));
    }
    let len = mu.len().max(lambda.len());
    let (mut a, mut b) = (0usize, 0usize);
    for j in 0..len {
        a += mu.parts.get(j).copied().unwrap_or(0);
        b += lambda.parts.get(j).copied().unwrap_or(0);
        if a > b {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A subset of `[n-1]`, stored as a bitmask where bit `i-1` stands for `i`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DescentSubset {
    n: usize,
    mask: u64,
}

impl DescentSubset {
    pub fn new(n: usize, elements: &[usize]) -> Result<Self> {
        let mut mask = 0u64;
        for &e in elements {
            if e == 0 || e >= n {
                return Err(Error::Validation(format!(
                    "descent element {e} is outside [1, {}]",
                    n.saturating_sub(1)
                )));
            }
            mask |= 1 << (e - 1);
        }
        Ok(DescentSubset { n, mask })
    }

    pub fn from_mask(n: usize, mask: u64) -> Result<Self> {
        let limit = if n <= 1 { 0 } else { (1u64 << (n - 1)) - 1 };
        if mask & !limit != 0 {
            return Err(Error::Validation(format!(
                "mask {mask:#b} has bits outside [n-1] for n = {n}"
            )));
        }
        Ok(DescentSubset { n, mask })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn mask(&self) -> u64 {
        self.mask
    }

    pub fn len(&self) -> usize {
        self.mask.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.mask == 0
    }

    pub fn elements(&self) -> Vec<usize> {
        (1..self.n).filter(|i| self.mask >> (i - 1) & 1 == 1).collect()
    }

    pub fn contains(&self, i: usize) -> bool {
        i >= 1 && i < self.n && self.mask >> (i - 1) & 1 == 1
    }
}

impl fmt::Debug for DescentSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, e) in self.elements().iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}}_{}", self.n)
    }
}

/// `I -> comp(I)`: cut `1..=n` after every element of `I`.
pub fn comp_of_subset(subset: &DescentSubset) -> Composition {
    let mut parts = Vec::new();
    let mut last = 0;
    for e in subset.elements() {
        parts.push(e - last);
        last = e;
    }
    if subset.n > 0 {
        parts.push(subset.n - last);
    }
    Composition { parts }
}

/// Partial sums of `alpha`, excluding the total.
pub fn subset_of_comp(alpha: &Composition) -> DescentSubset {
    let n = alpha.size();
    let mut mask = 0u64;
    let mut acc = 0;
    for &p in &alpha.parts[..alpha.parts.len().saturating_sub(1)] {
        acc += p;
        mask |= 1 << (acc - 1);
    }
    DescentSubset { n, mask }
}

/// An ordered sequence of disjoint blocks (bitmasks over `0..64`) covering a
/// ground set.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SetComposition {
    ground: u64,
    blocks: Vec<u64>,
    allow_empty: bool,
}

impl SetComposition {
    pub fn new(ground: u64, blocks: Vec<u64>, allow_empty: bool) -> Result<Self> {
        let mut seen = 0u64;
        for &b in &blocks {
            if b & seen != 0 {
                return Err(Error::Validation("blocks overlap".into()));
            }
            if b == 0 && !allow_empty {
                return Err(Error::Validation("empty block not permitted".into()));
            }
            seen |= b;
        }
        if seen != ground {
            return Err(Error::Validation(
                "blocks do not cover the ground set".into(),
            ));
        }
        Ok(SetComposition {
            ground,
            blocks,
            allow_empty,
        })
    }

    pub fn blocks(&self) -> &[u64] {
        &self.blocks
    }

    pub fn ground(&self) -> u64 {
        self.ground
    }

    pub fn allows_empty(&self) -> bool {
        self.allow_empty
    }

    /// `(|V_1|, ..., |V_k|)`; zero sizes are kept as-is.
    pub fn block_sizes(&self) -> Vec<usize> {
        self.blocks.iter().map(|b| b.count_ones() as usize).collect()
    }

    /// Blocks as sorted lists of 1-based elements.
    pub fn block_lists(&self) -> Vec<Vec<usize>> {
        self.blocks.iter().map(|&b| mask_elements(b)).collect()
    }
}

/// 1-based elements of a bitmask (bit `i` stands for `i + 1`).
pub fn mask_elements(mask: u64) -> Vec<usize> {
    (0..64).filter(|i| mask >> i & 1 == 1).map(|i| i + 1).collect()
}

/// A bijection of `[n]` in one-line notation, 1-based.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n + 1];
        for &v in &images {
            if v == 0 || v > n || seen[v] {
                return Err(Error::Validation(format!(
                    "{images:?} is not a permutation of [{n}]"
                )));
            }
            seen[v] = true;
        }
        Ok(Permutation { images })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (1..=n).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// `sigma(i)` for 1-based `i`.
    pub fn apply(&self, i: usize) -> usize {
        self.images[i - 1]
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.images.len()];
        for (i, &v) in self.images.iter().enumerate() {
            inv[v - 1] = i + 1;
        }
        Permutation { images: inv }
    }

    /// Cycles `(v, sigma(v), sigma^2(v), ...)`, each starting at its least
    /// element, ordered by that element. Fixed points are 1-cycles.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.images.len();
        let mut seen = vec![false; n + 1];
        let mut out = Vec::new();
        for start in 1..=n {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut v = start;
            while !seen[v] {
                seen[v] = true;
                cycle.push(v);
                v = self.images[v - 1];
            }
            out.push(cycle);
        }
        out
    }

    pub fn cycle_type(&self) -> Partition {
        let mut parts: Vec<usize> = self.cycles().iter().map(Vec::len).collect();
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    /// Shifted concatenation `(pi(1), ..., pi(m), sigma(1)+m, ..., sigma(n)+m)`.
    pub fn shift_concat(&self, other: &Permutation) -> Permutation {
        let m = self.images.len();
        let mut images = self.images.clone();
        images.extend(other.images.iter().map(|v| v + m));
        Permutation { images }
    }
}

impl TryFrom<Vec<usize>> for Permutation {
    type Error = Error;
    fn try_from(images: Vec<usize>) -> Result<Self> {
        Permutation::new(images)
    }
}

impl From<Permutation> for Vec<usize> {
    fn from(p: Permutation) -> Self {
        p.images
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, v) in self.images.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

/// Replaces every entry by its rank among the entries.
pub fn standardize<T: Ord + fmt::Debug>(word: &[T]) -> Result<Permutation> {
    let mut order: Vec<usize> = (0..word.len()).collect();
    order.sort_by(|&a, &b| word[a].cmp(&word[b]));
    if order.windows(2).any(|w| word[w[0]] == word[w[1]]) {
        return Err(Error::Validation(format!(
            "cannot standardize {word:?}: repeated entry"
        )));
    }
    let mut images = vec![0; word.len()];
    for (rank, &pos) in order.iter().enumerate() {
        images[pos] = rank + 1;
    }
    Ok(Permutation { images })
}

/// Rearranges `v` into the next lexicographically larger arrangement,
/// returning `false` (and leaving `v` sorted ascending) after the last one.
/// Handles repeated entries.
pub fn next_permutation<T: Ord>(v: &mut [T]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        v.reverse();
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Lexicographic stream over arrangements of a sorted starting sequence.
pub struct Arrangements<T> {
    current: Option<Vec<T>>,
}

impl<T: Ord + Clone> Iterator for Arrangements<T> {
    type Item = Vec<T>;
    fn next(&mut self) -> Option<Vec<T>> {
        let cur = self.current.take()?;
        let mut succ = cur.clone();
        if next_permutation(&mut succ) {
            self.current = Some(succ);
        }
        Some(cur)
    }
}

/// Every arrangement of `items` (sorted first) in lexicographic order.
pub fn arrangements<T: Ord + Clone>(mut items: Vec<T>) -> Arrangements<T> {
    items.sort();
    Arrangements {
        current: Some(items),
    }
}

/// All permutations of `[n]` in lexicographic order.
pub fn permutations(n: usize) -> impl Iterator<Item = Permutation> {
    arrangements((1..=n).collect::<Vec<_>>()).map(|images| Permutation { images })
}

/// Compositions of `n` in reverse lexicographic order.
pub struct Compositions {
    current: Option<Vec<usize>>,
}

impl Iterator for Compositions {
    type Item = Composition;
    fn next(&mut self) -> Option<Composition> {
        let cur = self.current.take()?;
        if let Some(i) = cur.iter().rposition(|&p| p > 1) {
            let rest: usize = cur[i + 1..].iter().sum();
            let mut succ = cur[..=i].to_vec();
            succ[i] -= 1;
            succ.push(rest + 1);
            self.current = Some(succ);
        }
        Some(Composition { parts: cur })
    }
}

pub fn compositions(n: usize) -> Compositions {
    Compositions {
        current: Some(if n == 0 { Vec::new() } else { vec![n] }),
    }
}

/// Partitions of `n` in reverse lexicographic order.
pub struct Partitions {
    current: Option<Vec<usize>>,
}

impl Iterator for Partitions {
    type Item = Partition;
    fn next(&mut self) -> Option<Partition> {
        let cur = self.current.take()?;
        if let Some(i) = cur.iter().rposition(|&p| p > 1) {
            let v = cur[i] - 1;
            let mut rest: usize = cur[i + 1..].iter().sum::<usize>() + 1;
            let mut succ = cur[..i].to_vec();
            succ.push(v);
            while rest > 0 {
                let p = rest.min(v);
                succ.push(p);
                rest -= p;
            }
            self.current = Some(succ);
        }
        Some(Partition { parts: cur })
    }
}

pub fn partitions(n: usize) -> Partitions {
    Partitions {
        current: Some(if n == 0 { Vec::new() } else { vec![n] }),
    }
}

/// All subsets of `[n-1]` by increasing mask.
pub fn descent_subsets(n: usize) -> impl Iterator<Item = DescentSubset> {
    let count = if n <= 1 { 1u64 } else { 1u64 << (n - 1) };
    (0..count).map(move |mask| DescentSubset { n, mask })
}

/// Set compositions of `ground` whose block sizes are `sizes` (zeros allowed
/// and produce empty blocks). Ordered lexicographically by the word assigning
/// each ground element, in increasing order, to its block index.
pub fn set_compositions_of_type(
    ground: u64,
    sizes: &[usize],
) -> impl Iterator<Item = SetComposition> {
    let elements: Vec<u32> = (0..64).filter(|i| ground >> i & 1 == 1).collect();
    let total: usize = sizes.iter().sum();
    let allow_empty = sizes.iter().any(|&s| s == 0);
    let k = sizes.len();
    let word: Option<Vec<usize>> = (total == elements.len()).then(|| {
        sizes
            .iter()
            .enumerate()
            .flat_map(|(b, &s)| std::iter::repeat(b).take(s))
            .collect()
    });
    word.into_iter().flat_map(move |w| {
        let elements = elements.clone();
        arrangements(w).map(move |word| {
            let mut blocks = vec![0u64; k];
            for (&e, &b) in elements.iter().zip(&word) {
                blocks[b] |= 1 << e;
            }
            SetComposition {
                ground,
                blocks,
                allow_empty,
            }
        })
    })
}

/// Set compositions of `ground` into exactly `k` nonempty blocks.
pub fn set_compositions(ground: u64, k: usize) -> impl Iterator<Item = SetComposition> {
    let n = ground.count_ones() as usize;
    compositions(n)
        .filter(move |c| c.len() == k)
        .flat_map(move |c| set_compositions_of_type(ground, c.parts()).collect::<Vec<_>>())
}

/// What [`enumerate`] should produce.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EnumKind {
    Compositions,
    Partitions,
    DescentSubsets,
    Permutations,
}

/// One item of an [`enumerate`] stream.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Enumerated {
    Composition(Composition),
    Partition(Partition),
    DescentSubset(DescentSubset),
    Permutation(Permutation),
}

pub fn enumerate(kind: EnumKind, n: usize) -> Box<dyn Iterator<Item = Enumerated>> {
    match kind {
        EnumKind::Compositions => Box::new(compositions(n).map(Enumerated::Composition)),
        EnumKind::Partitions => Box::new(partitions(n).map(Enumerated::Partition)),
        EnumKind::DescentSubsets => Box::new(descent_subsets(n).map(Enumerated::DescentSubset)),
        EnumKind::Permutations => Box::new(permutations(n).map(Enumerated::Permutation)),
    }
}

/// Collects all permutations of `[n]`, refusing above `cap`.
pub fn all_permutations(n: usize, cap: usize) -> Result<Vec<Permutation>> {
    crate::error::check_cap("permutation list", n, cap)?;
    Ok(permutations(n).collect())
}

pub fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}
