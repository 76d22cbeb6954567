//! Digraphs on `[n]` stored as one out-neighbour bitset per vertex.
//!
//! Loops and antiparallel pairs are allowed. Public APIs take and return
//! 1-based vertices; bit `j` of `out[i]` stands for the edge `(i+1, j+1)`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::combinatorics::{next_permutation, DescentSubset, Permutation};
use crate::error::{check_cap, Error, Result};

/// Hard limit imposed by the bitset representation.
pub const MAX_VERTICES: usize = 64;
/// Largest `n` for brute-force canonical labelling.
pub const DEFAULT_CANONICAL_CAP: usize = 8;
/// Largest `n` for subset dynamic programs over `2^n` states.
pub const SUBSET_DP_CAP: usize = 20;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Digraph {
    n: usize,
    out: Vec<u64>,
}

fn full_mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

impl Digraph {
    /// Builds a digraph from 1-based edges. Duplicate edges are rejected.
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::Capacity {
                what: "digraph vertex count",
                size: n,
                cap: MAX_VERTICES,
            });
        }
        let mut out = vec![0u64; n];
        for &(u, v) in edges {
            if u == 0 || v == 0 || u > n || v > n {
                return Err(Error::Validation(format!(
                    "edge ({u},{v}) has an endpoint outside [1,{n}]"
                )));
            }
            if out[u - 1] >> (v - 1) & 1 == 1 {
                return Err(Error::Validation(format!("edge ({u},{v}) listed twice")));
            }
            out[u - 1] |= 1 << (v - 1);
        }
        Ok(Digraph { n, out })
    }

    /// The digraph with `n` vertices and no edges.
    pub fn discrete(n: usize) -> Self {
        Digraph { n, out: vec![0; n] }
    }

    /// Builds from 0-based out-neighbour masks.
    pub fn from_masks(out: Vec<u64>) -> Result<Self> {
        let n = out.len();
        if n > MAX_VERTICES {
            return Err(Error::Capacity {
                what: "digraph vertex count",
                size: n,
                cap: MAX_VERTICES,
            });
        }
        if out.iter().any(|m| m & !full_mask(n) != 0) {
            return Err(Error::Validation("mask refers to a missing vertex".into()));
        }
        Ok(Digraph { n, out })
    }

    /// The complete digraph with all loops.
    pub fn complete(n: usize) -> Self {
        Digraph {
            n,
            out: vec![full_mask(n); n],
        }
    }

    /// Directed cycle `1 -> 2 -> ... -> n -> 1`.
    pub fn directed_cycle(n: usize) -> Self {
        let mut out = vec![0u64; n];
        for (i, o) in out.iter_mut().enumerate() {
            *o = 1 << ((i + 1) % n);
        }
        Digraph { n, out }
    }

    /// Directed path `1 -> 2 -> ... -> n`.
    pub fn directed_path(n: usize) -> Self {
        let mut out = vec![0u64; n];
        for (i, o) in out.iter_mut().enumerate().take(n.saturating_sub(1)) {
            *o = 1 << (i + 1);
        }
        Digraph { n, out }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// 0-based out-neighbour masks.
    pub fn out_masks(&self) -> &[u64] {
        &self.out
    }

    /// 0-based in-neighbour masks.
    pub fn in_masks(&self) -> Vec<u64> {
        let mut inm = vec![0u64; self.n];
        for (u, &m) in self.out.iter().enumerate() {
            for (v, slot) in inm.iter_mut().enumerate() {
                if m >> v & 1 == 1 {
                    *slot |= 1 << u;
                }
            }
        }
        inm
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u >= 1 && v >= 1 && u <= self.n && v <= self.n && self.out[u - 1] >> (v - 1) & 1 == 1
    }

    /// 0-based edge test without bounds checks beyond the slice.
    #[inline]
    pub(crate) fn edge0(&self, u: usize, v: usize) -> bool {
        self.out[u] >> v & 1 == 1
    }

    /// Edges in lexicographic order, 1-based.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut e = Vec::new();
        for u in 0..self.n {
            for v in 0..self.n {
                if self.edge0(u, v) {
                    e.push((u + 1, v + 1));
                }
            }
        }
        e
    }

    pub fn edge_count(&self) -> usize {
        self.out.iter().map(|m| m.count_ones() as usize).sum()
    }

    pub fn loop_count(&self) -> usize {
        (0..self.n).filter(|&v| self.edge0(v, v)).count()
    }

    pub fn nonloop_edge_count(&self) -> usize {
        self.edge_count() - self.loop_count()
    }

    pub fn has_loops(&self) -> bool {
        self.loop_count() > 0
    }

    pub fn with_edge(&self, u: usize, v: usize) -> Result<Digraph> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        let mut d = self.clone();
        d.out[u - 1] |= 1 << (v - 1);
        Ok(d)
    }

    /// Removes the listed edges; edges not present are an error.
    pub fn without_edges(&self, edges: &[(usize, usize)]) -> Result<Digraph> {
        let mut d = self.clone();
        for &(u, v) in edges {
            if !d.has_edge(u, v) {
                return Err(Error::Validation(format!("edge ({u},{v}) is not present")));
            }
            d.out[u - 1] &= !(1 << (v - 1));
        }
        Ok(d)
    }

    /// Adds the loop at `v` if absent, removes it if present.
    pub fn toggle_loop(&self, v: usize) -> Result<Digraph> {
        self.check_vertex(v)?;
        let mut d = self.clone();
        d.out[v - 1] ^= 1 << (v - 1);
        Ok(d)
    }

    /// Same digraph without loops. The Redei-Berge function does not see
    /// loops, so this is a normalization callers may opt into.
    pub fn strip_loops(&self) -> Digraph {
        let mut d = self.clone();
        for v in 0..self.n {
            d.out[v] &= !(1 << v);
        }
        d
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v == 0 || v > self.n {
            Err(Error::Validation(format!("vertex {v} outside [1,{}]", self.n)))
        } else {
            Ok(())
        }
    }

    /// Toggles every ordered pair, loops included.
    pub fn complement(&self) -> Digraph {
        let full = full_mask(self.n);
        Digraph {
            n: self.n,
            out: self.out.iter().map(|m| !m & full).collect(),
        }
    }

    /// Reverses every edge.
    pub fn opposite(&self) -> Digraph {
        Digraph {
            n: self.n,
            out: self.in_masks(),
        }
    }

    /// Restriction to a set of 1-based vertices, relabelled
    /// order-preservingly onto `[|S|]`.
    pub fn restrict(&self, vertices: &[usize]) -> Result<Digraph> {
        let mut mask = 0u64;
        for &v in vertices {
            self.check_vertex(v)?;
            mask |= 1 << (v - 1);
        }
        Ok(self.restrict_mask(mask))
    }

    /// Restriction to a 0-based vertex mask.
    pub fn restrict_mask(&self, mask: u64) -> Digraph {
        let keep: Vec<usize> = (0..self.n).filter(|&v| mask >> v & 1 == 1).collect();
        let out = keep
            .iter()
            .map(|&u| {
                let mut m = 0u64;
                for (j, &v) in keep.iter().enumerate() {
                    if self.edge0(u, v) {
                        m |= 1 << j;
                    }
                }
                m
            })
            .collect();
        Digraph {
            n: keep.len(),
            out,
        }
    }

    /// Disjoint union plus every edge from the first part to the second.
    pub fn product(&self, other: &Digraph) -> Result<Digraph> {
        let n = self.n + other.n;
        if n > MAX_VERTICES {
            return Err(Error::Capacity {
                what: "digraph vertex count",
                size: n,
                cap: MAX_VERTICES,
            });
        }
        let forward = full_mask(other.n) << self.n;
        let mut out: Vec<u64> = self.out.iter().map(|m| m | forward).collect();
        out.extend(other.out.iter().map(|m| m << self.n));
        Ok(Digraph { n, out })
    }

    /// `other` placed after `self` with no edges between the parts.
    pub fn disjoint_union(&self, other: &Digraph) -> Result<Digraph> {
        let n = self.n + other.n;
        check_cap("digraph vertex count", n, MAX_VERTICES)?;
        let mut out = self.out.clone();
        out.extend(other.out.iter().map(|m| m << self.n));
        Ok(Digraph { n, out })
    }

    /// Relabels vertex `v` as `perm(v)`.
    pub fn relabel(&self, perm: &Permutation) -> Result<Digraph> {
        if perm.len() != self.n {
            return Err(Error::Validation("relabelling has the wrong size".into()));
        }
        let mut out = vec![0u64; self.n];
        for u in 0..self.n {
            for v in 0..self.n {
                if self.edge0(u, v) {
                    out[perm.apply(u + 1) - 1] |= 1 << (perm.apply(v + 1) - 1);
                }
            }
        }
        Ok(Digraph { n: self.n, out })
    }

    /// `{ i : (pi_i, pi_{i+1}) in E }`.
    pub fn x_descent_set(&self, listing: &Listing) -> Result<DescentSubset> {
        if listing.len() != self.n {
            return Err(Error::Validation(format!(
                "listing of {} vertices for a digraph on {}",
                listing.len(),
                self.n
            )));
        }
        let order = listing.order();
        let mut mask = 0u64;
        for i in 1..self.n {
            if self.edge0(order[i - 1] - 1, order[i] - 1) {
                mask |= 1 << (i - 1);
            }
        }
        DescentSubset::from_mask(self.n, mask)
    }

    /// Whether every consecutive edge of the cyclic sequence, wrap-around
    /// included, is an edge. A single vertex needs its loop.
    pub fn is_cycle_of(&self, cycle: &[usize]) -> Result<bool> {
        let mut seen = 0u64;
        for &v in cycle {
            self.check_vertex(v)?;
            if seen >> (v - 1) & 1 == 1 {
                return Err(Error::Validation(format!("vertex {v} repeated in cycle")));
            }
            seen |= 1 << (v - 1);
        }
        if cycle.is_empty() {
            return Err(Error::Validation("empty cycle".into()));
        }
        let k = cycle.len();
        Ok((0..k).all(|i| self.has_edge(cycle[i], cycle[(i + 1) % k])))
    }

    /// Which side, if any, a cycle of a permutation lies on.
    pub fn cycle_side(&self, cycle: &[usize]) -> CycleSide {
        let k = cycle.len();
        let mut in_x = true;
        let mut in_xbar = true;
        for i in 0..k {
            if self.has_edge(cycle[i], cycle[(i + 1) % k]) {
                in_xbar = false;
            } else {
                in_x = false;
            }
        }
        if in_x {
            CycleSide::Digraph
        } else if in_xbar {
            CycleSide::Complement
        } else {
            CycleSide::Neither
        }
    }

    /// Classifies every permutation of the vertex set. Lexicographic order;
    /// `n!` items.
    pub fn admissible_permutations(&self) -> impl Iterator<Item = Admissibility> + '_ {
        crate::combinatorics::permutations(self.n).map(move |perm| {
            let cycles: Vec<(Vec<usize>, CycleSide)> = perm
                .cycles()
                .into_iter()
                .map(|c| {
                    let side = self.cycle_side(&c);
                    (c, side)
                })
                .collect();
            let in_x_xbar = cycles.iter().all(|(_, s)| *s != CycleSide::Neither);
            let in_x = cycles
                .iter()
                .all(|(c, s)| c.len() == 1 || *s == CycleSide::Digraph);
            Admissibility {
                permutation: perm,
                in_sigma_x_xbar: in_x_xbar,
                in_sigma_x: in_x,
                cycles,
            }
        })
    }

    /// Visits each permutation all of whose cycles lie in `X` or in its
    /// complement, building cycles one at a time from the least unused
    /// vertex and abandoning a partial cycle as soon as it has edges on both
    /// sides. The callback receives the cycles (1-based) and their sides.
    pub fn for_each_admissible<F>(&self, mut visit: F)
    where
        F: FnMut(&[Vec<usize>], &[CycleSide]),
    {
        let mut cycles: Vec<Vec<usize>> = Vec::new();
        let mut sides: Vec<CycleSide> = Vec::new();
        self.admissible_rec(full_mask(self.n), &mut cycles, &mut sides, &mut visit);
    }

    fn admissible_rec<F>(
        &self,
        unused: u64,
        cycles: &mut Vec<Vec<usize>>,
        sides: &mut Vec<CycleSide>,
        visit: &mut F,
    ) where
        F: FnMut(&[Vec<usize>], &[CycleSide]),
    {
        if unused == 0 {
            visit(cycles, sides);
            return;
        }
        let start = unused.trailing_zeros() as usize;
        let mut path = vec![start];
        self.extend_cycle(unused & !(1 << start), &mut path, true, true, cycles, sides, visit);
    }

    #[allow(clippy::too_many_arguments)]
    fn extend_cycle<F>(
        &self,
        unused: u64,
        path: &mut Vec<usize>,
        all_x: bool,
        all_xbar: bool,
        cycles: &mut Vec<Vec<usize>>,
        sides: &mut Vec<CycleSide>,
        visit: &mut F,
    ) where
        F: FnMut(&[Vec<usize>], &[CycleSide]),
    {
        let first = path[0];
        let last = *path.last().expect("nonempty");
        // close the cycle here
        let closing = self.edge0(last, first);
        let side = if all_x && closing {
            Some(CycleSide::Digraph)
        } else if all_xbar && !closing {
            Some(CycleSide::Complement)
        } else {
            None
        };
        if let Some(side) = side {
            cycles.push(path.iter().map(|v| v + 1).collect());
            sides.push(side);
            self.admissible_rec(unused, cycles, sides, visit);
            cycles.pop();
            sides.pop();
        }
        let mut rest = unused;
        while rest != 0 {
            let next = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let e = self.edge0(last, next);
            let (ax, axb) = (all_x && e, all_xbar && !e);
            if ax || axb {
                path.push(next);
                self.extend_cycle(unused & !(1 << next), path, ax, axb, cycles, sides, visit);
                path.pop();
            }
        }
    }

    /// Listings whose consecutive pairs are all edges, by subset DP.
    pub fn count_hamiltonian_paths(&self) -> Result<u64> {
        check_cap("subset DP vertex count", self.n, SUBSET_DP_CAP)?;
        Ok(self.hamiltonian_paths_within(full_mask(self.n)))
    }

    /// Hamiltonian path count of the restriction to a 0-based vertex mask.
    pub(crate) fn hamiltonian_paths_within(&self, mask: u64) -> u64 {
        let verts: Vec<usize> = (0..self.n).filter(|&v| mask >> v & 1 == 1).collect();
        let k = verts.len();
        if k <= 1 {
            return 1;
        }
        let local: Vec<u64> = verts
            .iter()
            .map(|&u| {
                verts
                    .iter()
                    .enumerate()
                    .filter(|(_, &v)| u != v && self.edge0(u, v))
                    .fold(0u64, |m, (j, _)| m | 1 << j)
            })
            .collect();
        let states = 1usize << k;
        let mut dp = vec![0u64; states * k];
        for v in 0..k {
            dp[(1 << v) * k + v] = 1;
        }
        for s in 1..states {
            for v in 0..k {
                let c = dp[s * k + v];
                if c == 0 {
                    continue;
                }
                let mut next = local[v] & !(s as u64);
                while next != 0 {
                    let w = next.trailing_zeros() as usize;
                    next &= next - 1;
                    dp[(s | 1 << w) * k + w] += c;
                }
            }
        }
        dp[(states - 1) * k..].iter().sum()
    }

    /// Cyclic sequences through every vertex with all edges present, counted
    /// once per rotation class (= n-cycle permutations lying in `X`). For
    /// `n = 1` this is 1 iff the loop is present; for `n = 0` it is 0.
    pub fn count_hamiltonian_cycles(&self) -> Result<u64> {
        check_cap("subset DP vertex count", self.n, SUBSET_DP_CAP)?;
        Ok(self.hamiltonian_cycles_within(full_mask(self.n)))
    }

    fn hamiltonian_cycles_within(&self, mask: u64) -> u64 {
        let verts: Vec<usize> = (0..self.n).filter(|&v| mask >> v & 1 == 1).collect();
        let k = verts.len();
        match k {
            0 => return 0,
            1 => return u64::from(self.edge0(verts[0], verts[0])),
            _ => {}
        }
        let local: Vec<u64> = verts
            .iter()
            .map(|&u| {
                verts
                    .iter()
                    .enumerate()
                    .filter(|(_, &v)| u != v && self.edge0(u, v))
                    .fold(0u64, |m, (j, _)| m | 1 << j)
            })
            .collect();
        // paths starting at local vertex 0
        let states = 1usize << k;
        let mut dp = vec![0u64; states * k];
        dp[k] = 1;
        for s in (1..states).step_by(2) {
            for v in 0..k {
                let c = dp[s * k + v];
                if c == 0 {
                    continue;
                }
                let mut next = local[v] & !(s as u64);
                while next != 0 {
                    let w = next.trailing_zeros() as usize;
                    next &= next - 1;
                    dp[(s | 1 << w) * k + w] += c;
                }
            }
        }
        (1..k)
            .filter(|&v| local[v] & 1 == 1)
            .map(|v| dp[(states - 1) * k + v])
            .sum()
    }

    /// Number of `k`-vertex directed cycles (rotation classes), any `k >= 1`.
    pub fn count_cycles(&self, k: usize) -> Result<u64> {
        if k == 0 || k > self.n {
            return Err(Error::Validation(format!(
                "cycle length {k} outside [1,{}]",
                self.n
            )));
        }
        check_cap("subset DP vertex count", self.n, SUBSET_DP_CAP)?;
        let mut total = 0;
        for mask in 0..(1u64 << self.n) {
            if mask.count_ones() as usize == k {
                total += self.hamiltonian_cycles_within(mask);
            }
        }
        Ok(total)
    }

    /// Sequences of `k` distinct vertices joined by edges; `k = 1` gives `n`.
    pub fn count_paths(&self, k: usize) -> Result<u64> {
        if k == 0 || k > self.n {
            return Err(Error::Validation(format!(
                "path vertex count {k} outside [1,{}]",
                self.n
            )));
        }
        check_cap("subset DP vertex count", self.n, SUBSET_DP_CAP)?;
        let n = self.n;
        let states = 1usize << n;
        let mut dp = vec![0u64; states * n];
        for v in 0..n {
            dp[(1 << v) * n + v] = 1;
        }
        let mut total = 0u64;
        for s in 1..states {
            let size = s.count_ones() as usize;
            if size > k {
                continue;
            }
            for v in 0..n {
                let c = dp[s * n + v];
                if c == 0 {
                    continue;
                }
                if size == k {
                    total += c;
                    continue;
                }
                let mut next = self.out[v] & !(s as u64) & !(1 << v);
                while next != 0 {
                    let w = next.trailing_zeros() as usize;
                    next &= next - 1;
                    dp[(s | 1 << w) * n + w] += c;
                }
            }
        }
        Ok(total)
    }

    /// No directed cycle of length at least 2; loops are allowed.
    pub fn is_acyclic(&self) -> bool {
        let stripped = self.strip_loops();
        let mut indeg: Vec<u32> = stripped.in_masks().iter().map(|m| m.count_ones()).collect();
        let mut queue: Vec<usize> = (0..self.n).filter(|&v| indeg[v] == 0).collect();
        let mut removed = 0;
        while let Some(u) = queue.pop() {
            removed += 1;
            let mut m = stripped.out[u];
            while m != 0 {
                let w = m.trailing_zeros() as usize;
                m &= m - 1;
                indeg[w] -= 1;
                if indeg[w] == 0 {
                    queue.push(w);
                }
            }
        }
        removed == self.n
    }

    /// Loopless, in- and out-degree at most 1, and acyclic. Isolated vertices
    /// count as one-vertex paths.
    pub fn is_disjoint_union_of_paths(&self) -> bool {
        if self.has_loops() {
            return false;
        }
        if self.out.iter().any(|m| m.count_ones() > 1) {
            return false;
        }
        if self.in_masks().iter().any(|m| m.count_ones() > 1) {
            return false;
        }
        self.is_acyclic()
    }

    /// Loopless with exactly one orientation per unordered pair.
    pub fn is_tournament(&self) -> bool {
        if self.has_loops() {
            return false;
        }
        (0..self.n).all(|u| (u + 1..self.n).all(|v| self.edge0(u, v) != self.edge0(v, u)))
    }

    /// Not a product `X_1 · X_2` of two nonempty digraphs.
    pub fn is_irreducible(&self) -> bool {
        self.factorization().is_none()
    }

    /// A bipartition `(V_1, V_2)` (0-based masks) witnessing reducibility.
    pub fn factorization(&self) -> Option<(u64, u64)> {
        if self.n < 2 {
            return None;
        }
        let full = full_mask(self.n);
        (1..full).find_map(|v1| {
            let v2 = full & !v1;
            let ok = (0..self.n).all(|u| {
                if v1 >> u & 1 == 1 {
                    self.out[u] & v2 == v2
                } else {
                    self.out[u] & v1 == 0
                }
            });
            ok.then_some((v1, v2))
        })
    }

    /// Lexicographically least adjacency matrix (row-major, `0 < 1`) over all
    /// relabellings. Brute force over `n!` relabellings.
    pub fn canonical_form(&self) -> Result<Digraph> {
        self.canonical_form_with_cap(DEFAULT_CANONICAL_CAP)
    }

    pub fn canonical_form_with_cap(&self, cap: usize) -> Result<Digraph> {
        check_cap("canonical form vertex count", self.n, cap.min(8))?;
        let n = self.n;
        if n == 0 {
            return Ok(self.clone());
        }
        let edges: Vec<(usize, usize)> = self.edges().iter().map(|&(u, v)| (u - 1, v - 1)).collect();
        let top = n * n - 1;
        let mut perm: Vec<usize> = (0..n).collect();
        let mut best = u64::MAX;
        let mut best_perm = perm.clone();
        loop {
            let mut code = 0u64;
            for &(u, v) in &edges {
                code |= 1 << (top - (perm[u] * n + perm[v]));
            }
            if code < best {
                best = code;
                best_perm.copy_from_slice(&perm);
            }
            if !next_permutation(&mut perm) {
                break;
            }
        }
        let mut out = vec![0u64; n];
        for &(u, v) in &edges {
            out[best_perm[u]] |= 1 << best_perm[v];
        }
        Ok(Digraph { n, out })
    }

    pub fn are_isomorphic(&self, other: &Digraph) -> Result<bool> {
        if self.n != other.n || self.edge_count() != other.edge_count() {
            return Ok(false);
        }
        Ok(self.canonical_form()? == other.canonical_form()?)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(DigraphJson {
            n: self.n,
            edges: self.edges().into_iter().map(|(u, v)| [u, v]).collect(),
        })
        .expect("plain data serializes")
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Digraph> {
        let raw: DigraphJson = serde_json::from_value(value.clone())
            .map_err(|e| Error::Validation(format!("bad digraph JSON: {e}")))?;
        let edges: Vec<(usize, usize)> = raw.edges.iter().map(|e| (e[0], e[1])).collect();
        Digraph::new(raw.n, &edges)
    }

    /// Parses `"n; u v; u v; ..."`.
    pub fn parse_text(text: &str) -> Result<Digraph> {
        let mut chunks = text.split(';').map(str::trim).filter(|s| !s.is_empty());
        let n: usize = chunks
            .next()
            .ok_or_else(|| Error::Validation("empty digraph text".into()))?
            .parse()
            .map_err(|_| Error::Validation("vertex count is not an integer".into()))?;
        let mut edges = Vec::new();
        for c in chunks {
            let nums: Vec<usize> = c
                .split_whitespace()
                .map(|t| {
                    t.parse()
                        .map_err(|_| Error::Validation(format!("bad vertex {t:?}")))
                })
                .collect::<Result<_>>()?;
            if nums.len() != 2 {
                return Err(Error::Validation(format!("edge {c:?} needs two vertices")));
            }
            edges.push((nums[0], nums[1]));
        }
        Digraph::new(n, &edges)
    }

    pub fn to_text(&self) -> String {
        let mut s = self.n.to_string();
        for (u, v) in self.edges() {
            s.push_str(&format!("; {u} {v}"));
        }
        s
    }
}

impl fmt::Debug for Digraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Digraph({})", self.to_text())
    }
}

impl fmt::Display for Digraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

#[derive(Serialize, Deserialize)]
struct DigraphJson {
    n: usize,
    edges: Vec<[usize; 2]>,
}

/// An arrangement of all vertices, 1-based.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Listing(Vec<usize>);

impl Listing {
    pub fn new(order: Vec<usize>) -> Result<Self> {
        Permutation::new(order.clone())?;
        Ok(Listing(order))
    }

    pub fn order(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl From<Permutation> for Listing {
    fn from(p: Permutation) -> Self {
        Listing(p.images().to_vec())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CycleSide {
    Digraph,
    Complement,
    Neither,
}

/// Membership report for one permutation of the vertex set.
#[derive(Clone, Debug)]
pub struct Admissibility {
    pub permutation: Permutation,
    /// Every cycle lies in `X` or in its complement.
    pub in_sigma_x_xbar: bool,
    /// Every non-trivial cycle lies in `X`.
    pub in_sigma_x: bool,
    pub cycles: Vec<(Vec<usize>, CycleSide)>,
}

/// Every listing checked edge by edge; the reference for the subset DP.
pub fn count_hamiltonian_paths_brute(x: &Digraph) -> u64 {
    crate::combinatorics::permutations(x.n())
        .filter(|p| p.images().windows(2).all(|w| x.has_edge(w[0], w[1])))
        .count() as u64
}
