//! Investigations built on `U`: algebraic bases of `Sym` from digraph
//! families, chain-union reconstruction, and searches for distinct objects
//! sharing a Redei-Berge function.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde_json::json;

use crate::combinatorics::{binomial, dominance_leq, partitions, Partition};
use crate::digraph::Digraph;
use crate::error::{check_cap, Error, Result};
use crate::order::{enumerate_posets, poset_to_digraph, Poset};
use crate::qsym::{QSymElement, SBasis, SymElement};
use crate::redei::{invariants_from_u, u_via_cycles, InvariantMode};

pub const DEFAULT_MATRIX_CAP: usize = 7;
pub const DEFAULT_DIGRAPH_SEARCH_CAP: usize = 4;
pub const DEFAULT_UNION_SEARCH_CAP: usize = 8;

/// A sequence `(X_n)` with `X_n` on `n` vertices.
#[derive(Clone)]
pub struct DigraphFamily {
    name: String,
    generator: Arc<dyn Fn(usize) -> Digraph + Send + Sync>,
}

impl fmt::Debug for DigraphFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DigraphFamily({})", self.name)
    }
}

impl DigraphFamily {
    pub fn from_fn<F>(name: impl Into<String>, generator: F) -> Self
    where
        F: Fn(usize) -> Digraph + Send + Sync + 'static,
    {
        DigraphFamily {
            name: name.into(),
            generator: Arc::new(generator),
        }
    }

    pub fn discrete() -> Self {
        Self::from_fn("discrete", Digraph::discrete)
    }

    /// `X_{n,k}`: edges `(1, 1+i)` for `1 ≤ i ≤ k`, with `k` lowered to
    /// `max(0, n-2)` for small `n`.
    pub fn xnk(k: usize) -> Self {
        Self::from_fn(format!("xnk{k}"), move |n| {
            let k = k.min(n.saturating_sub(2));
            let edges: Vec<_> = (1..=k).map(|i| (1, 1 + i)).collect();
            Digraph::new(n, &edges).expect("edges inside [n]")
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// `X_n`; fails if the generator returns the wrong vertex count.
    pub fn member(&self, n: usize) -> Result<Digraph> {
        let x = (self.generator)(n);
        if x.n() != n {
            return Err(Error::Validation(format!(
                "family {} returned {} vertices for n = {n}",
                self.name,
                x.n()
            )));
        }
        Ok(x)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisConditionRow {
    pub n: usize,
    /// Hamiltonian cycles of `X_n`.
    pub h: u64,
    /// Hamiltonian cycles of the complement.
    pub h_bar: u64,
    pub condition_holds: bool,
    /// `[p_(n)] U_{X_n}`.
    pub top_coefficient: BigInt,
    /// Whether the top coefficient equals `h + h̄` (odd `n`) or `h̄ - h`
    /// (even `n`).
    pub identity_holds: bool,
}

impl BasisConditionRow {
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "n": self.n,
            "h": self.h,
            "h_bar": self.h_bar,
            "condition_holds": self.condition_holds,
            "top_coefficient": self.top_coefficient.to_string(),
            "identity_holds": self.identity_holds,
        })
    }
}

/// For `1 ≤ n ≤ max_n`: some Hamiltonian cycle in `X_n` or its complement
/// when `n` is odd, different numbers of them when `n` is even.
pub fn check_basis_conditions(fam: &DigraphFamily, max_n: usize) -> Result<Vec<BasisConditionRow>> {
    check_cap("basis check degree", max_n, DEFAULT_MATRIX_CAP)?;
    (1..=max_n)
        .map(|n| {
            let x = fam.member(n)?;
            let h = x.count_hamiltonian_cycles()?;
            let h_bar = x.complement().count_hamiltonian_cycles()?;
            let condition_holds = if n % 2 == 1 { h + h_bar > 0 } else { h != h_bar };
            let top = u_via_cycles(&x)?.coefficient(&Partition::single(n));
            if !top.is_integer() {
                return Err(Error::Consistency(format!("[p_{n}] is not an integer")));
            }
            let top_coefficient = top.to_integer();
            let expected = if n % 2 == 1 {
                BigInt::from(h) + BigInt::from(h_bar)
            } else {
                BigInt::from(h_bar) - BigInt::from(h)
            };
            Ok(BasisConditionRow {
                n,
                h,
                h_bar,
                condition_holds,
                identity_holds: top_coefficient == expected,
                top_coefficient,
            })
        })
        .collect()
}

/// Coefficients of `U_{X_λ}` in the `p` basis, rows and columns indexed by
/// the partitions of `n` in decreasing lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransitionMatrix {
    pub n: usize,
    pub index: Vec<Partition>,
    pub entries: Vec<Vec<BigRational>>,
}

impl TransitionMatrix {
    pub fn dim(&self) -> usize {
        self.index.len()
    }

    /// Entry `(λ, μ)` vanishes unless `μ ≤ λ` in dominance order.
    pub fn is_dominance_triangular(&self) -> bool {
        self.index.iter().enumerate().all(|(i, lambda)| {
            self.index.iter().enumerate().all(|(j, mu)| {
                self.entries[i][j].is_zero() || dominance_leq(mu, lambda).unwrap_or(false)
            })
        })
    }

    pub fn diagonal(&self) -> Vec<BigRational> {
        (0..self.dim()).map(|i| self.entries[i][i].clone()).collect()
    }

    /// Exact determinant by fraction-valued Gaussian elimination.
    pub fn determinant(&self) -> BigRational {
        let mut a = self.entries.clone();
        let d = self.dim();
        let mut det = BigRational::one();
        for col in 0..d {
            let Some(pivot) = (col..d).find(|&r| !a[r][col].is_zero()) else {
                return BigRational::zero();
            };
            if pivot != col {
                a.swap(pivot, col);
                det = -det;
            }
            let p = a[col][col].clone();
            det *= &p;
            for r in col + 1..d {
                if a[r][col].is_zero() {
                    continue;
                }
                let factor = &a[r][col] / &p;
                for c in col..d {
                    let delta = &factor * &a[col][c];
                    a[r][c] -= delta;
                }
            }
        }
        det
    }

    pub fn is_invertible(&self) -> bool {
        !self.determinant().is_zero()
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "n": self.n,
            "index": self.index.iter().map(|p| p.parts().to_vec()).collect::<Vec<_>>(),
            "entries": self
                .entries
                .iter()
                .map(|row| row.iter().map(|v| v.to_string()).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
        })
    }
}

impl fmt::Display for TransitionMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<Vec<String>> = self
            .entries
            .iter()
            .map(|row| row.iter().map(|v| v.to_string()).collect())
            .collect();
        let width = cells.iter().flatten().map(String::len).max().unwrap_or(1);
        let label = self.index.iter().map(|p| p.to_string().len()).max().unwrap_or(1);
        for (lambda, row) in self.index.iter().zip(&cells) {
            write!(f, "{:>label$} |", lambda.to_string())?;
            for c in row {
                write!(f, " {c:>width$}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Row `λ` is `U_{X_{λ_1}} ⋯ U_{X_{λ_k}}` in the `p` basis.
pub fn transition_matrix(fam: &DigraphFamily, n: usize) -> Result<TransitionMatrix> {
    check_cap("transition matrix degree", n, DEFAULT_MATRIX_CAP)?;
    let members = (1..=n)
        .map(|i| u_via_cycles(&fam.member(i)?))
        .collect::<Result<Vec<_>>>()?;
    let index: Vec<Partition> = partitions(n).collect();
    let entries = index
        .iter()
        .map(|lambda| {
            let mut row = SymElement::one(SBasis::PowerSum);
            for &part in lambda.parts() {
                row = row.mul(&members[part - 1])?;
            }
            Ok(index.iter().map(|mu| row.coefficient(mu)).collect())
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(TransitionMatrix { n, index, entries })
}

/// Sizes of the chains in a disjoint union of chains, read from its `U`.
/// `c_m`, the number of `m`-element chains, is the `m`-vertex path count;
/// then `r_m = c_m - Σ_{i>m} C(i,m) r_i` for `m = n, …, 1`.
pub fn reconstruct_chain_multiset(u: &QSymElement, n: usize) -> Result<Partition> {
    let report = invariants_from_u(u, n, InvariantMode::Digraph)?;
    let mut r = vec![BigInt::zero(); n + 1];
    for m in (1..=n).rev() {
        let mut v = BigInt::from(report.path_counts[&m]);
        for i in m + 1..=n {
            v -= BigInt::from(binomial(i, m)) * &r[i];
        }
        if v.is_negative() {
            return Err(Error::Domain(format!(
                "negative count of {m}-chains: U is not from a disjoint union of chains"
            )));
        }
        r[m] = v;
    }
    let mut parts = Vec::new();
    for m in (1..=n).rev() {
        let k = r[m].to_usize().ok_or_else(|| Error::Domain("chain count overflow".into()))?;
        parts.extend(std::iter::repeat(m).take(k));
    }
    let lambda = Partition::new(parts)?;
    if lambda.size() != n {
        return Err(Error::Domain(format!(
            "chains cover {} elements, not {n}: U is not from a disjoint union of chains",
            lambda.size()
        )));
    }
    Ok(lambda)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SearchClass {
    Posets,
    Digraphs,
    PathUnions,
    ChainUnions,
}

impl SearchClass {
    pub fn name(self) -> &'static str {
        match self {
            SearchClass::Posets => "posets",
            SearchClass::Digraphs => "digraphs",
            SearchClass::PathUnions => "path-unions",
            SearchClass::ChainUnions => "chain-unions",
        }
    }

    pub fn parse(s: &str) -> Result<SearchClass> {
        match s {
            "posets" => Ok(SearchClass::Posets),
            "digraphs" => Ok(SearchClass::Digraphs),
            "path-unions" => Ok(SearchClass::PathUnions),
            "chain-unions" => Ok(SearchClass::ChainUnions),
            other => Err(Error::Validation(format!("unknown search class {other:?}"))),
        }
    }
}

/// Objects of one `n`, pairwise non-isomorphic, that share a `U`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CollisionGroup {
    pub class: SearchClass,
    pub n: usize,
    pub u_key: String,
    pub members: Vec<serde_json::Value>,
    /// `m_P + M_P` per member (posets only).
    pub m_plus_max: Option<Vec<usize>>,
    pub conjecture_ok: Option<bool>,
}

impl CollisionGroup {
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "class": self.class.name(),
            "n": self.n,
            "u_key": self.u_key,
            "members": self.members,
            "m_plus_M": self.m_plus_max,
            "conjecture_ok": self.conjecture_ok,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CollisionReport {
    pub class: SearchClass,
    pub n: usize,
    pub objects: usize,
    /// Sorted by `u_key`.
    pub groups: Vec<CollisionGroup>,
}

impl CollisionReport {
    pub fn collisions(&self) -> impl Iterator<Item = &CollisionGroup> {
        self.groups.iter().filter(|g| g.members.len() > 1)
    }

    pub fn all_singletons(&self) -> bool {
        self.collisions().next().is_none()
    }

    pub fn max_group_size(&self) -> usize {
        self.groups.iter().map(|g| g.members.len()).max().unwrap_or(0)
    }

    /// Groups violating `m_P + M_P` constancy.
    pub fn counterexamples(&self) -> impl Iterator<Item = &CollisionGroup> {
        self.groups.iter().filter(|g| g.conjecture_ok == Some(false))
    }

    pub fn summary_json(&self) -> serde_json::Value {
        json!({
            "class": self.class.name(),
            "n": self.n,
            "objects": self.objects,
            "groups": self.groups.len(),
            "collision_groups": self.collisions().count(),
            "max_group_size": self.max_group_size(),
        })
    }

    /// One JSON record per group.
    pub fn json_lines(&self) -> Vec<String> {
        self.groups.iter().map(|g| g.to_json().to_string()).collect()
    }
}

enum SearchObject {
    Digraph(Digraph),
    Poset(Poset),
}

impl SearchObject {
    fn digraph(&self) -> Digraph {
        match self {
            SearchObject::Digraph(x) => x.clone(),
            SearchObject::Poset(p) => poset_to_digraph(p),
        }
    }

    fn to_json(&self) -> serde_json::Value {
        match self {
            SearchObject::Digraph(x) => x.to_json(),
            SearchObject::Poset(p) => p.to_json(),
        }
    }
}

fn all_digraph_classes(n: usize) -> Result<Vec<Digraph>> {
    check_cap("digraph search vertex count", n, DEFAULT_DIGRAPH_SEARCH_CAP)?;
    let cells = n * n;
    let mut classes: Vec<Digraph> = (0u64..1 << cells)
        .into_par_iter()
        .map(|bits| {
            let masks = (0..n).map(|u| bits >> (u * n) & ((1 << n) - 1)).collect();
            Digraph::from_masks(masks)?.canonical_form()
        })
        .collect::<Result<Vec<_>>>()?;
    classes.sort();
    classes.dedup();
    Ok(classes)
}

fn path_union(lambda: &Partition) -> Digraph {
    let mut edges = Vec::new();
    let mut start = 1;
    for &len in lambda.parts() {
        edges.extend((start..start + len - 1).map(|v| (v, v + 1)));
        start += len;
    }
    Digraph::new(lambda.size(), &edges).expect("path edges are distinct")
}

/// Groups the objects of `class` on `n` vertices by their `U` (canonical
/// p-basis serialization). Posets and digraphs are taken up to
/// isomorphism, so every group with two or more members is a genuine
/// collision.
pub fn collision_search(class: SearchClass, n: usize) -> Result<CollisionReport> {
    let objects: Vec<SearchObject> = match class {
        SearchClass::Posets => enumerate_posets(n, true)?.into_iter().map(SearchObject::Poset).collect(),
        SearchClass::Digraphs => all_digraph_classes(n)?.into_iter().map(SearchObject::Digraph).collect(),
        SearchClass::PathUnions => {
            check_cap("path-union search vertex count", n, DEFAULT_UNION_SEARCH_CAP)?;
            partitions(n).map(|l| SearchObject::Digraph(path_union(&l))).collect()
        }
        SearchClass::ChainUnions => {
            check_cap("chain-union search vertex count", n, DEFAULT_UNION_SEARCH_CAP)?;
            partitions(n).map(|l| SearchObject::Poset(Poset::chain_union(l.parts()))).collect()
        }
    };
    let keys = objects
        .par_iter()
        .map(|o| Ok(u_via_cycles(&o.digraph())?.canonical_key()))
        .collect::<Result<Vec<String>>>()?;
    let mut grouped: BTreeMap<String, Vec<usize>> = BTreeMap::new();
    for (i, k) in keys.into_iter().enumerate() {
        grouped.entry(k).or_default().push(i);
    }
    let groups = grouped
        .into_iter()
        .map(|(u_key, idx)| {
            let m_plus_max: Option<Vec<usize>> = match class {
                SearchClass::Posets => Some(
                    idx.iter()
                        .map(|&i| match &objects[i] {
                            SearchObject::Poset(p) => {
                                let (mins, maxs) = p.min_max_counts();
                                mins + maxs
                            }
                            SearchObject::Digraph(_) => unreachable!("the poset class holds posets"),
                        })
                        .collect(),
                ),
                _ => None,
            };
            let conjecture_ok = m_plus_max.as_ref().map(|v| v.windows(2).all(|w| w[0] == w[1]));
            CollisionGroup {
                class,
                n,
                u_key,
                members: idx.iter().map(|&i| objects[i].to_json()).collect(),
                m_plus_max,
                conjecture_ok,
            }
        })
        .collect();
    Ok(CollisionReport {
        class,
        n,
        objects: objects.len(),
        groups,
    })
}

/// Outcome of scanning posets of every size up to `max_n`.
#[derive(Clone, Debug)]
pub struct ConjectureScan {
    pub max_n: usize,
    pub reports: Vec<CollisionReport>,
}

impl ConjectureScan {
    pub fn counterexample(&self) -> Option<&CollisionGroup> {
        self.reports.iter().flat_map(|r| r.counterexamples()).next()
    }

    /// Two members of one group with different `m_P + M_P`.
    pub fn counterexample_pair(&self) -> Option<(Poset, usize, Poset, usize)> {
        let g = self.counterexample()?;
        let sums = g.m_plus_max.as_ref()?;
        let j = sums.iter().position(|&s| s != sums[0])?;
        let p = Poset::from_json(&g.members[0]).ok()?;
        let q = Poset::from_json(&g.members[j]).ok()?;
        Some((p, sums[0], q, sums[j]))
    }

    pub fn verdict(&self) -> String {
        match self.counterexample_pair() {
            None => format!("no counterexample found for n ≤ {}", self.max_n),
            Some((p, a, q, b)) => format!(
                "counterexample at n = {}: P = {} and Q = {} share U but m_P + M_P = {a}, m_Q + M_Q = {b}",
                p.n(),
                p.to_json(),
                q.to_json()
            ),
        }
    }
}

/// Poset collision search for `n = 1, …, max_n`.
pub fn conjecture_scan(max_n: usize) -> Result<ConjectureScan> {
    let reports = (1..=max_n)
        .map(|n| collision_search(SearchClass::Posets, n))
        .collect::<Result<Vec<_>>>()?;
    Ok(ConjectureScan { max_n, reports })
}

/// `U` of every member `X_n`, `1 ≤ n ≤ max_n`, keyed for duplicate checks.
pub fn family_u_keys(fam: &DigraphFamily, max_n: usize) -> Result<HashMap<usize, String>> {
    (1..=max_n)
        .map(|n| Ok((n, u_via_cycles(&fam.member(n)?)?.canonical_key())))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qsym::p_to_m;
    use crate::redei::u_via_listings;

    fn dg(n: usize, e: &[(usize, usize)]) -> Digraph {
        Digraph::new(n, e).unwrap()
    }

    fn part(p: &[usize]) -> Partition {
        Partition::new(p.to_vec()).unwrap()
    }

    fn q(v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }

    #[test]
    fn xnk_members() {
        assert_eq!(DigraphFamily::xnk(1).member(3).unwrap(), dg(3, &[(1, 2)]));
        assert_eq!(DigraphFamily::xnk(0).member(4).unwrap(), Digraph::discrete(4));
        assert_eq!(DigraphFamily::xnk(5).member(3).unwrap(), dg(3, &[(1, 2)]));
        assert_eq!(DigraphFamily::xnk(2).member(1).unwrap(), Digraph::discrete(1));
        for n in 2..=6 {
            let x = DigraphFamily::xnk(2).member(n).unwrap();
            let cycle: Vec<usize> = (1..=n).rev().collect();
            assert!(x.complement().is_cycle_of(&cycle).unwrap());
        }
    }

    #[test]
    fn basis_condition_examples() {
        let rows = check_basis_conditions(&DigraphFamily::discrete(), 3).unwrap();
        let r3 = &rows[2];
        assert_eq!((r3.h, r3.h_bar), (0, 2));
        assert!(r3.condition_holds && r3.identity_holds);
        assert_eq!(r3.top_coefficient, BigInt::from(2));
        for k in 0..=2 {
            for r in check_basis_conditions(&DigraphFamily::xnk(k), 6).unwrap() {
                assert!(r.condition_holds && r.identity_holds, "k={k} {r:?}");
            }
        }
        // a single edge on two vertices: no Hamiltonian cycle on either side
        let bad = DigraphFamily::from_fn("edge", |n| {
            if n == 2 {
                Digraph::new(2, &[(1, 2)]).unwrap()
            } else {
                Digraph::discrete(n)
            }
        });
        let rows = check_basis_conditions(&bad, 2).unwrap();
        assert!(!rows[1].condition_holds && rows[1].identity_holds);
        // the 2-cycle has h = 1, h̄ = 0 and does satisfy the condition
        let two = DigraphFamily::from_fn("2-cycle", |n| {
            if n == 2 {
                Digraph::new(2, &[(1, 2), (2, 1)]).unwrap()
            } else {
                Digraph::discrete(n)
            }
        });
        let r = &check_basis_conditions(&two, 2).unwrap()[1];
        assert_eq!((r.h, r.h_bar), (1, 0));
        assert!(r.condition_holds);
        assert_eq!(r.top_coefficient, BigInt::from(-1));
    }

    #[test]
    fn transition_matrix_examples() {
        let m = transition_matrix(&DigraphFamily::discrete(), 2).unwrap();
        assert_eq!(m.index, vec![part(&[2]), part(&[1, 1])]);
        assert_eq!(m.entries, vec![vec![q(1), q(1)], vec![q(0), q(1)]]);
        assert_eq!(m.determinant(), q(1));
        let one = transition_matrix(&DigraphFamily::discrete(), 1).unwrap();
        assert_eq!(one.entries, vec![vec![q(1)]]);
    }

    #[test]
    fn families_give_bases() {
        let families = [
            DigraphFamily::discrete(),
            DigraphFamily::xnk(0),
            DigraphFamily::xnk(1),
            DigraphFamily::xnk(2),
        ];
        for fam in &families {
            for n in 1..=6 {
                let m = transition_matrix(fam, n).unwrap();
                assert!(m.is_dominance_triangular(), "{fam:?} {n}");
                let tops: Vec<BigInt> = (1..=n)
                    .map(|i| {
                        u_via_cycles(&fam.member(i).unwrap())
                            .unwrap()
                            .coefficient(&Partition::single(i))
                            .to_integer()
                    })
                    .collect();
                for (lambda, d) in m.index.iter().zip(m.diagonal()) {
                    let expected: BigInt = lambda.parts().iter().map(|&p| tops[p - 1].clone()).product();
                    assert_eq!(d, BigRational::from_integer(expected));
                }
                let det = m.determinant();
                assert!(!det.is_zero());
                let diag_product: BigRational = m.diagonal().into_iter().product();
                assert_eq!(det, diag_product);
            }
        }
    }

    #[test]
    fn xnk_members_are_distinct() {
        for n in 2..=6 {
            let keys: Vec<String> = (0..=n - 2)
                .map(|k| u_via_cycles(&DigraphFamily::xnk(k).member(n).unwrap()).unwrap().canonical_key())
                .collect();
            let mut sorted = keys.clone();
            sorted.sort();
            sorted.dedup();
            assert_eq!(sorted.len(), keys.len());
        }
    }

    #[test]
    fn determinant_of_singular_matrix() {
        let m = TransitionMatrix {
            n: 2,
            index: vec![part(&[2]), part(&[1, 1])],
            entries: vec![vec![q(1), q(2)], vec![q(2), q(4)]],
        };
        assert!(m.determinant().is_zero());
        let m = TransitionMatrix {
            n: 2,
            index: vec![part(&[2]), part(&[1, 1])],
            entries: vec![vec![q(0), q(2)], vec![q(3), q(4)]],
        };
        assert_eq!(m.determinant(), q(-6));
    }

    #[test]
    fn chain_reconstruction() {
        let u = u_via_listings(&poset_to_digraph(&Poset::chain_union(&[2, 1]))).unwrap();
        assert_eq!(reconstruct_chain_multiset(&u, 3).unwrap(), part(&[2, 1]));
        for n in 1..=7 {
            for lambda in partitions(n) {
                let x = poset_to_digraph(&Poset::chain_union(lambda.parts()));
                let u = p_to_m(&u_via_cycles(&x).unwrap()).unwrap();
                assert_eq!(reconstruct_chain_multiset(&u, n).unwrap(), lambda);
            }
        }
    }

    #[test]
    fn chain_reconstruction_rejects_other_u() {
        // the 2-cycle has 2 two-vertex paths on 2 vertices
        let u = u_via_listings(&dg(2, &[(1, 2), (2, 1)])).unwrap();
        assert!(matches!(reconstruct_chain_multiset(&u, 2), Err(Error::Domain(_))));
    }

    #[test]
    fn union_searches_are_collision_free() {
        for n in 1..=6 {
            assert!(collision_search(SearchClass::ChainUnions, n).unwrap().all_singletons());
            assert!(collision_search(SearchClass::PathUnions, n).unwrap().all_singletons());
        }
    }

    #[test]
    fn loop_and_reversal_collide_on_two_vertices() {
        let r = collision_search(SearchClass::Digraphs, 2).unwrap();
        assert_eq!(r.objects, 10);
        let x = dg(2, &[(1, 1), (1, 2)]);
        let y = x.opposite();
        assert!(!x.are_isomorphic(&y).unwrap());
        let key = u_via_cycles(&x).unwrap().canonical_key();
        let g = r.groups.iter().find(|g| g.u_key == key).unwrap();
        assert!(g.members.contains(&x.canonical_form().unwrap().to_json()));
        assert!(g.members.contains(&y.canonical_form().unwrap().to_json()));
    }

    #[test]
    fn poset_scan_report() {
        let scan = conjecture_scan(3).unwrap();
        assert_eq!(scan.reports.iter().map(|r| r.objects).collect::<Vec<_>>(), vec![1, 2, 5]);
        assert_eq!(scan.verdict(), "no counterexample found for n ≤ 3");
        let line: serde_json::Value = serde_json::from_str(&scan.reports[2].json_lines()[0]).unwrap();
        assert_eq!(line["class"], "posets");
        assert!(line["m_plus_M"].is_array());
        assert_eq!(line["conjecture_ok"], true);
    }

    #[test]
    fn diamond_and_y_share_u() {
        // 4 < 2, 3 < 1 against 4 < 3 < 1, 2
        let diamond = Poset::new(4, &[(4, 2), (4, 3), (2, 1), (3, 1)], crate::order::RelationsKind::Cover).unwrap();
        let y = Poset::new(4, &[(4, 3), (3, 1), (3, 2)], crate::order::RelationsKind::Cover).unwrap();
        let expected = SymElement::from_int_terms(SBasis::PowerSum, [(part(&[1, 1, 1, 1]), 1), (part(&[2, 1, 1]), 1)]);
        assert_eq!(u_via_cycles(&poset_to_digraph(&diamond)).unwrap(), expected);
        assert_eq!(u_via_cycles(&poset_to_digraph(&y)).unwrap(), expected);
        assert_eq!(diamond.min_max_counts(), (1, 1));
        assert_eq!(y.min_max_counts(), (1, 2));

        let scan = conjecture_scan(4).unwrap();
        let (p, a, q, b) = scan.counterexample_pair().unwrap();
        assert_eq!(p.n(), 4);
        assert_ne!(a, b);
        assert_eq!(u_via_cycles(&poset_to_digraph(&p)).unwrap(), u_via_cycles(&poset_to_digraph(&q)).unwrap());
        assert!(scan.verdict().starts_with("counterexample at n = 4"));
    }

    #[test]
    fn reducible_digraphs_have_no_hamiltonian_cycles() {
        for n in 2..=4 {
            for bits in 0u64..1 << (n * n) {
                let masks = (0..n).map(|u| bits >> (u * n) & ((1 << n) - 1)).collect();
                let x = Digraph::from_masks(masks).unwrap();
                if !x.is_irreducible() {
                    assert_eq!(x.count_hamiltonian_cycles().unwrap(), 0);
                    assert_eq!(x.complement().count_hamiltonian_cycles().unwrap(), 0);
                }
            }
        }
    }
}
