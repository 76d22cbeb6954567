//! The Redei-Berge symmetric function `U_X` computed two independent ways,
//! the Redei-Berge polynomial, deletion expansions, and the digraph
//! invariants that can be read back from `U_X`.
//!
//! * [`u_via_listings`]: `Σ_π F_{XDes(π)}` over all `n!` vertex listings.
//! * [`u_via_cycles`]: `Σ (-1)^{φ(π)} p_{type(π)}` over permutations whose
//!   cycles each lie in `X` or in its complement, where `φ(π)` sums
//!   `len - 1` over the cycles lying in `X`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde_json::json;

use crate::combinatorics::{
    arrangements, comp_of_subset, factorial, subset_of_comp, Composition, DescentSubset,
    Partition, Permutation,
};
use crate::digraph::{CycleSide, Digraph};
use crate::error::{check_cap, Error, Result};
use crate::order::{perm_to_poset, poset_to_digraph, Poset};
use crate::qsym::{f_to_m, m_to_p, p_to_m, QBasis, QSymElement, SBasis, SymElement};

pub const DEFAULT_LISTING_CAP: usize = 10;
pub const DEFAULT_CYCLE_CAP: usize = 10;
pub const DEFAULT_DELETION_EDGE_CAP: usize = 12;

/// `U_X` in the fundamental basis, from the X-descent sets of all listings.
pub fn u_via_listings(x: &Digraph) -> Result<QSymElement> {
    u_via_listings_with_cap(x, DEFAULT_LISTING_CAP)
}

pub fn u_via_listings_with_cap(x: &Digraph, cap: usize) -> Result<QSymElement> {
    let n = x.n();
    check_cap("listing enumeration vertex count", n, cap)?;
    if n == 0 {
        return Ok(QSymElement::one(QBasis::Fundamental));
    }
    let out = x.out_masks();
    // one worker per first vertex; each owns a table indexed by descent mask
    let counts = (0..n)
        .into_par_iter()
        .map(|first| {
            let mut table = vec![0u64; 1 << (n - 1)];
            let full = (1u64 << n) - 1;
            listing_dfs(out, n, full & !(1 << first), first, 1, 0, &mut table);
            table
        })
        .reduce(
            || vec![0u64; 1 << (n - 1)],
            |mut a, b| {
                for (x, y) in a.iter_mut().zip(b) {
                    *x += y;
                }
                a
            },
        );
    let mut u = QSymElement::zero(QBasis::Fundamental);
    for (mask, &c) in counts.iter().enumerate() {
        if c > 0 {
            let subset = DescentSubset::from_mask(n, mask as u64)?;
            u.add_term(comp_of_subset(&subset), BigInt::from(c));
        }
    }
    Ok(u)
}

fn listing_dfs(
    out: &[u64],
    n: usize,
    unused: u64,
    last: usize,
    placed: usize,
    descents: u64,
    table: &mut [u64],
) {
    if unused == 0 {
        table[descents as usize] += 1;
        return;
    }
    let mut rest = unused;
    while rest != 0 {
        let v = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        let d = if out[last] >> v & 1 == 1 {
            descents | 1 << (placed - 1)
        } else {
            descents
        };
        listing_dfs(out, n, unused & !(1 << v), v, placed + 1, d, table);
    }
}

/// `U_X` in the power-sum basis, from the admissible permutations.
pub fn u_via_cycles(x: &Digraph) -> Result<SymElement> {
    u_via_cycles_with_cap(x, DEFAULT_CYCLE_CAP)
}

pub fn u_via_cycles_with_cap(x: &Digraph, cap: usize) -> Result<SymElement> {
    check_cap("cycle enumeration vertex count", x.n(), cap)?;
    let mut tally: BTreeMap<Partition, i64> = BTreeMap::new();
    x.for_each_admissible(|cycles, sides| {
        let mut phi = 0;
        let mut lengths = Vec::with_capacity(cycles.len());
        for (c, s) in cycles.iter().zip(sides) {
            if *s == CycleSide::Digraph {
                phi += c.len() - 1;
            }
            lengths.push(c.len());
        }
        let key = Partition::from_unsorted(lengths).expect("cycle lengths are positive");
        *tally.entry(key).or_insert(0) += if phi % 2 == 0 { 1 } else { -1 };
    });
    Ok(SymElement::from_int_terms(
        SBasis::PowerSum,
        tally,
    ))
}

/// Both expansions of one `U`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UExpansions {
    pub fundamental: QSymElement,
    pub power_sum: SymElement,
}

pub fn u_of_digraph(x: &Digraph) -> Result<UExpansions> {
    Ok(UExpansions {
        fundamental: u_via_listings(x)?,
        power_sum: u_via_cycles(x)?,
    })
}

/// `U_P = U_{D_P}`.
pub fn u_of_poset(p: &Poset) -> Result<UExpansions> {
    u_of_digraph(&poset_to_digraph(p))
}

/// `U_σ = U_{D_{P_σ}}`.
pub fn u_of_perm(sigma: &Permutation) -> Result<UExpansions> {
    u_of_poset(&perm_to_poset(sigma))
}

/// `u_X(m)`, the principal specialization of `U_X`. Both expansions are
/// evaluated and must agree.
pub fn redei_berge_polynomial(x: &Digraph, m: usize) -> Result<BigInt> {
    let u = u_of_digraph(x)?;
    let a = u.fundamental.principal_specialization(m);
    let b = u.power_sum.principal_specialization(m);
    if BigRational::from_integer(a.clone()) != b {
        return Err(Error::Consistency(format!(
            "u_X({m}) is {a} from listings but {b} from cycles"
        )));
    }
    Ok(a)
}

/// Subsets of `0..k` of every size `1..=k`, by size then lexicographically.
fn nonempty_subsets_by_size(k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::with_capacity((1usize << k) - 1);
    for size in 1..=k {
        let mut idx: Vec<usize> = (0..size).collect();
        loop {
            out.push(idx.clone());
            // next size-combination in lex order
            let mut i = size;
            while i > 0 && idx[i - 1] == k - size + i - 1 {
                i -= 1;
            }
            if i == 0 {
                break;
            }
            idx[i - 1] += 1;
            for j in i..size {
                idx[j] = idx[j - 1] + 1;
            }
        }
    }
    out
}

fn signed_deletions(x: &Digraph, edges: &[(usize, usize)]) -> Result<Vec<(i8, Digraph)>> {
    nonempty_subsets_by_size(edges.len())
        .into_iter()
        .map(|s| {
            let removed: Vec<_> = s.iter().map(|&i| edges[i]).collect();
            let sign = if s.len() % 2 == 1 { 1 } else { -1 };
            Ok((sign, x.without_edges(&removed)?))
        })
        .collect()
}

/// `U_X = Σ_{∅≠S⊆E} (-1)^{|S|-1} U_{X∖S}`, valid when `X` is not a disjoint
/// union of paths. Returns the signed digraphs, subsets ordered by size then
/// lexicographically in the edge order of [`Digraph::edges`].
pub fn deletion_expansion(x: &Digraph) -> Result<Vec<(i8, Digraph)>> {
    deletion_expansion_with_cap(x, DEFAULT_DELETION_EDGE_CAP)
}

pub fn deletion_expansion_with_cap(x: &Digraph, cap: usize) -> Result<Vec<(i8, Digraph)>> {
    if x.is_disjoint_union_of_paths() {
        return Err(Error::Domain(
            "the deletion expansion needs a digraph that is not a disjoint union of paths".into(),
        ));
    }
    let edges = x.edges();
    check_cap("deletion edge count", edges.len(), cap)?;
    signed_deletions(x, &edges)
}

/// The same expansion restricted to the edges of one directed cycle of `X`
/// (given by its vertices in order, length at least 2).
pub fn cycle_deletion_expansion(x: &Digraph, cycle: &[usize]) -> Result<Vec<(i8, Digraph)>> {
    if cycle.len() < 2 {
        return Err(Error::Validation("a deletion cycle needs at least 2 vertices".into()));
    }
    if !x.is_cycle_of(cycle)? {
        return Err(Error::Domain(format!("{cycle:?} is not a directed cycle of the digraph")));
    }
    let k = cycle.len();
    let edges: Vec<_> = (0..k).map(|i| (cycle[i], cycle[(i + 1) % k])).collect();
    signed_deletions(x, &edges)
}

/// `Σ sign · U` over a deletion expansion, in the `M` basis.
pub fn sum_expansion(terms: &[(i8, Digraph)]) -> Result<QSymElement> {
    let mut total = QSymElement::zero(QBasis::Monomial);
    for (sign, y) in terms {
        let u = p_to_m(&u_via_cycles(y)?)?;
        total = total.add(&u.scale(&BigInt::from(*sign)))?;
    }
    Ok(total)
}

/// What extra quantities [`invariants_from_u`] should read off.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InvariantMode {
    Digraph,
    /// Also odd cycle counts.
    Tournament,
    /// Also incomparable pairs.
    Poset,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantReport {
    pub n: usize,
    pub nonloop_edges: u64,
    /// `k ↦` number of `k`-vertex directed paths.
    pub path_counts: BTreeMap<usize, u64>,
    pub p_coefficients: BTreeMap<Partition, BigRational>,
    /// Odd `k ↦` number of directed `k`-cycles (tournaments only).
    pub odd_cycles: Option<BTreeMap<usize, u64>>,
    pub incomparable_pairs: Option<u64>,
}

impl InvariantReport {
    pub fn to_json(&self) -> serde_json::Value {
        let paths: serde_json::Map<String, serde_json::Value> = self
            .path_counts
            .iter()
            .map(|(k, v)| (k.to_string(), json!(v)))
            .collect();
        let coeffs: serde_json::Map<String, serde_json::Value> = self
            .p_coefficients
            .iter()
            .map(|(k, v)| (k.to_string(), json!(v.to_string())))
            .collect();
        let cycles = self.odd_cycles.as_ref().map(|m| {
            m.iter()
                .map(|(k, v)| (k.to_string(), json!(v)))
                .collect::<serde_json::Map<_, _>>()
        });
        json!({
            "n": self.n,
            "nonloop_edges": self.nonloop_edges,
            "path_counts": paths,
            "p_coefficients": coeffs,
            "odd_cycles": cycles,
            "incomparable_pairs": self.incomparable_pairs,
        })
    }
}

fn exact_div(num: &BigInt, den: &BigInt, what: &str) -> Result<u64> {
    let (q, r) = num.div_rem(den);
    if !r.is_zero() {
        return Err(Error::Consistency(format!("{what}: {num} is not divisible by {den}")));
    }
    q.to_u64()
        .ok_or_else(|| Error::Consistency(format!("{what}: {q} is not a nonnegative count")))
}

fn integral_count(c: &BigRational, what: &str) -> Result<u64> {
    if !c.is_integer() || c.is_negative() {
        return Err(Error::Consistency(format!("{what}: coefficient {c} is not a count")));
    }
    exact_div(&c.to_integer(), &BigInt::from(1), what)
}

/// `ρ_S^j`: windows of `j` consecutive integers inside `S ⊆ [n-1]`.
fn runs(mask: u64, n: usize, j: usize) -> u64 {
    if j == 0 {
        return n as u64;
    }
    let w = (1u64 << j) - 1;
    (0..=(n - 1).saturating_sub(j))
        .filter(|&i| i + j < n && (mask >> i) & w == w)
        .count() as u64
}

/// Reads edge and path counts, and optionally cycle or incomparability
/// counts, from a degree-`n` `U` given in the `F` or `M` basis. Every
/// division must be exact; otherwise the input is not the `U` of any
/// digraph and a consistency error is returned.
pub fn invariants_from_u(u: &QSymElement, n: usize, mode: InvariantMode) -> Result<InvariantReport> {
    let f = u.to_fundamental();
    if f.terms().keys().any(|k| k.size() != n) {
        return Err(Error::Validation(format!("U must be homogeneous of degree {n}")));
    }
    if f.mass() != BigInt::from(factorial(n)) {
        return Err(Error::Consistency(format!(
            "coefficients of U sum to {}, not {n}!",
            f.mass()
        )));
    }
    let coeffs: Vec<(u64, &BigInt)> = f
        .terms()
        .iter()
        .map(|(k, c)| (subset_of_comp(k).mask(), c))
        .collect();

    let mut path_counts = BTreeMap::new();
    let mut nonloop_edges = 0;
    if n >= 1 {
        for k in 1..=n {
            let num: BigInt = coeffs
                .iter()
                .map(|(s, c)| *c * BigInt::from(runs(*s, n, k - 1)))
                .sum();
            let den = BigInt::from(factorial(n - k + 1));
            path_counts.insert(k, exact_div(&num, &den, &format!("{k}-vertex paths"))?);
        }
        let num: BigInt = coeffs
            .iter()
            .map(|(s, c)| *c * BigInt::from(s.count_ones()))
            .sum();
        nonloop_edges = exact_div(&num, &BigInt::from(factorial(n - 1)), "edges")?;
    }

    let p = m_to_p(&f_to_m(&f))?;
    let p_coefficients = p.terms().clone();
    let hook = |k: usize| Partition::hook(k, n).map(|l| p.coefficient(&l));

    let odd_cycles = if mode == InvariantMode::Tournament {
        let pairs = (n * n.saturating_sub(1) / 2) as u64;
        let two_cycle_balance = if n >= 2 { hook(2)? } else { BigRational::zero() };
        if nonloop_edges != pairs || !two_cycle_balance.is_zero() {
            return Err(Error::Domain("U is not the Redei-Berge function of a tournament".into()));
        }
        let mut m = BTreeMap::new();
        for k in (3..=n).step_by(2) {
            let c = hook(k)?;
            let twice = integral_count(&c, &format!("[p_({k},1..)]"))?;
            if twice % 2 != 0 {
                return Err(Error::Consistency(format!("[p_({k},1..)] = {twice} is odd")));
            }
            m.insert(k, twice / 2);
        }
        Some(m)
    } else {
        None
    };

    let incomparable_pairs = if mode == InvariantMode::Poset {
        Some(if n >= 2 { integral_count(&hook(2)?, "[p_(2,1..)]")? } else { 0 })
    } else {
        None
    };

    Ok(InvariantReport {
        n,
        nonloop_edges,
        path_counts,
        p_coefficients,
        odd_cycles,
        incomparable_pairs,
    })
}

/// Converts a symmetric element to the power-sum basis.
pub fn sym_to_p(u: &SymElement) -> Result<SymElement> {
    match u.basis() {
        SBasis::PowerSum => Ok(u.clone()),
        SBasis::MonomialSym => {
            let mut scale = BigInt::from(1);
            for c in u.terms().values() {
                scale = scale.lcm(c.denom());
            }
            let mut q = QSymElement::zero(QBasis::Monomial);
            for (lambda, c) in u.terms() {
                let c = (c * BigRational::from_integer(scale.clone())).to_integer();
                for alpha in arrangements(lambda.parts().to_vec()) {
                    q.add_term(Composition::new(alpha)?, c.clone());
                }
            }
            Ok(m_to_p(&q)?.scale(&BigRational::new(BigInt::from(1), scale)))
        }
    }
}

/// `true` iff every power-sum coefficient is nonnegative.
pub fn is_p_positive(u: &SymElement) -> bool {
    match sym_to_p(u) {
        Ok(p) => p.is_nonnegative(),
        Err(_) => false,
    }
}

/// Smallest pair `(X, Y)` of loopless digraphs, by total vertex count, with
/// `U_{X ⊔ Y} ≠ U_X U_Y`.
pub fn disjoint_union_counterexample(max_total: usize) -> Result<Option<(Digraph, Digraph)>> {
    for total in 2..=max_total {
        for a in 1..total {
            for x in loopless_digraphs(a) {
                for y in loopless_digraphs(total - a) {
                    let joint = u_via_cycles(&x.disjoint_union(&y)?)?;
                    let prod = u_via_cycles(&x)?.mul(&u_via_cycles(&y)?)?;
                    if joint != prod {
                        return Ok(Some((x, y)));
                    }
                }
            }
        }
    }
    Ok(None)
}

fn loopless_digraphs(n: usize) -> impl Iterator<Item = Digraph> {
    let pairs: Vec<(usize, usize)> = (1..=n)
        .flat_map(|u| (1..=n).filter(move |&v| v != u).map(move |v| (u, v)))
        .collect();
    (0u64..1 << pairs.len()).map(move |bits| {
        let e: Vec<_> = pairs
            .iter()
            .enumerate()
            .filter(|(i, _)| bits >> i & 1 == 1)
            .map(|(_, &p)| p)
            .collect();
        Digraph::new(n, &e).expect("distinct pairs")
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::permutations;
    use crate::digraph::Listing;
    use crate::hopf::psi_of_digraph;
    use crate::order::enumerate_posets;
    use proptest::prelude::*;

    fn dg(n: usize, e: &[(usize, usize)]) -> Digraph {
        Digraph::new(n, e).unwrap()
    }

    fn part(p: &[usize]) -> Partition {
        Partition::new(p.to_vec()).unwrap()
    }

    fn comp(p: &[usize]) -> Composition {
        Composition::new(p.to_vec()).unwrap()
    }

    fn p_terms(t: &[(&[usize], i64)]) -> SymElement {
        SymElement::from_int_terms(
            SBasis::PowerSum,
            t.iter().map(|(k, v)| (part(k), *v)),
        )
    }

    fn triangle() -> Digraph {
        dg(3, &[(1, 2), (2, 3), (3, 1)])
    }

    /// Listing oracle straight from the definition.
    fn u_listings_oracle(x: &Digraph) -> QSymElement {
        let mut u = QSymElement::zero(QBasis::Fundamental);
        for p in permutations(x.n()) {
            let d = x.x_descent_set(&Listing::from(p)).unwrap();
            u.add_term(comp_of_subset(&d), BigInt::from(1));
        }
        u
    }

    /// Cycle oracle over all `n!` permutations.
    fn u_cycles_oracle(x: &Digraph) -> SymElement {
        let mut u = SymElement::zero(SBasis::PowerSum);
        for a in x.admissible_permutations() {
            if !a.in_sigma_x_xbar {
                continue;
            }
            let phi: usize = a
                .cycles
                .iter()
                .filter(|(_, s)| *s == CycleSide::Digraph)
                .map(|(c, _)| c.len() - 1)
                .sum();
            let sign = if phi % 2 == 0 { 1 } else { -1 };
            u.add_term(a.permutation.cycle_type(), BigRational::from_integer(BigInt::from(sign)));
        }
        u
    }

    fn digraph_strategy(max_n: usize) -> impl Strategy<Value = Digraph> {
        (1..=max_n).prop_flat_map(|n| {
            proptest::collection::vec(any::<bool>(), n * n).prop_map(move |bits| {
                let masks = (0..n)
                    .map(|u| (0..n).filter(|&v| bits[u * n + v]).fold(0u64, |m, v| m | 1 << v))
                    .collect();
                Digraph::from_masks(masks).unwrap()
            })
        })
    }

    #[test]
    fn listing_examples() {
        let e = dg(2, &[(1, 2)]);
        assert_eq!(
            u_via_listings(&e).unwrap(),
            QSymElement::from_terms(QBasis::Fundamental, [(comp(&[2]), 1), (comp(&[1, 1]), 1)])
        );
        for n in 1..=5 {
            let u = u_via_listings(&Digraph::discrete(n)).unwrap();
            assert_eq!(
                u,
                QSymElement::from_terms(QBasis::Fundamental, [(comp(&[n]), factorial(n) as i64)])
            );
        }
        assert_eq!(u_via_listings(&Digraph::discrete(0)).unwrap(), QSymElement::one(QBasis::Fundamental));
        assert!(matches!(
            u_via_listings(&Digraph::discrete(11)),
            Err(Error::Capacity { .. })
        ));
    }

    #[test]
    fn cycle_examples() {
        assert_eq!(u_via_cycles(&dg(2, &[(1, 2)])).unwrap(), p_terms(&[(&[1, 1], 1)]));
        assert_eq!(
            u_via_cycles(&triangle()).unwrap(),
            p_terms(&[(&[1, 1, 1], 1), (&[3], 2)])
        );
        for n in 1..=6 {
            let l = poset_to_digraph(&Poset::chain(n));
            assert_eq!(u_via_cycles(&l).unwrap(), p_terms(&[(&vec![1; n], 1)]));
        }
    }

    #[test]
    fn poset_and_permutation_examples() {
        let u = u_of_poset(&Poset::chain(3)).unwrap();
        assert_eq!(u.power_sum, p_terms(&[(&[1, 1, 1], 1)]));
        let u = u_of_poset(&Poset::antichain(3)).unwrap();
        assert_eq!(u.power_sum, p_terms(&[(&[1, 1, 1], 1), (&[2, 1], 3), (&[3], 2)]));
        let u = u_of_perm(&Permutation::new(vec![2, 1]).unwrap()).unwrap();
        assert_eq!(u.power_sum, p_terms(&[(&[1, 1], 1), (&[2], 1)]));
    }

    #[test]
    fn discrete_is_cycle_index_sum() {
        for n in 1..=6 {
            let mut expected = SymElement::zero(SBasis::PowerSum);
            for p in permutations(n) {
                expected.add_term(p.cycle_type(), BigRational::from_integer(BigInt::from(1)));
            }
            assert_eq!(u_via_cycles(&Digraph::discrete(n)).unwrap(), expected);
        }
    }

    #[test]
    fn routes_agree_exhaustively_on_three_vertices() {
        for bits in 0u64..1 << 9 {
            let masks = (0..3).map(|u| bits >> (3 * u) & 7).collect();
            let x = Digraph::from_masks(masks).unwrap();
            let listing = u_via_listings(&x).unwrap();
            assert_eq!(listing, u_listings_oracle(&x));
            let cycles = u_via_cycles(&x).unwrap();
            assert_eq!(cycles, u_cycles_oracle(&x));
            let m = f_to_m(&listing);
            assert_eq!(m, p_to_m(&cycles).unwrap(), "{x:?}");
            assert_eq!(m, psi_of_digraph(&x).unwrap());
        }
    }

    #[test]
    fn polynomial_examples() {
        assert_eq!(redei_berge_polynomial(&dg(2, &[(1, 2)]), 2).unwrap(), BigInt::from(4));
        assert_eq!(redei_berge_polynomial(&Digraph::discrete(2), 2).unwrap(), BigInt::from(6));
        assert_eq!(redei_berge_polynomial(&triangle(), 0).unwrap(), BigInt::from(0));
        // m = 1 gives the Hamiltonian path count of the complement
        for x in [triangle(), dg(3, &[(1, 2)]), dg(4, &[(1, 2), (2, 3), (3, 1), (4, 4)])] {
            assert_eq!(
                redei_berge_polynomial(&x, 1).unwrap(),
                BigInt::from(x.complement().count_hamiltonian_paths().unwrap())
            );
        }
    }

    #[test]
    fn deletion_examples() {
        let t = deletion_expansion(&triangle()).unwrap();
        let signs: Vec<i8> = t.iter().map(|(s, _)| *s).collect();
        assert_eq!(signs, vec![1, 1, 1, -1, -1, -1, 1]);
        assert_eq!(sum_expansion(&t).unwrap(), f_to_m(&u_via_listings(&triangle()).unwrap()));

        let two = dg(2, &[(1, 2), (2, 1)]);
        let t = deletion_expansion(&two).unwrap();
        assert_eq!(t.len(), 3);
        assert_eq!(t[0], (1, dg(2, &[(2, 1)])));
        assert_eq!(t[1], (1, dg(2, &[(1, 2)])));
        assert_eq!(t[2], (-1, Digraph::discrete(2)));

        assert!(matches!(deletion_expansion(&dg(2, &[(1, 2)])), Err(Error::Domain(_))));
    }

    #[test]
    fn deletion_identity_on_three_vertices() {
        for bits in 0u64..1 << 9 {
            let masks = (0..3).map(|u| bits >> (3 * u) & 7).collect();
            let x = Digraph::from_masks(masks).unwrap();
            if x.is_disjoint_union_of_paths() {
                continue;
            }
            let u = p_to_m(&u_via_cycles(&x).unwrap()).unwrap();
            assert_eq!(sum_expansion(&deletion_expansion(&x).unwrap()).unwrap(), u, "{x:?}");
        }
    }

    #[test]
    fn cycle_deletion_on_planted_cycles() {
        let x = dg(4, &[(1, 2), (2, 3), (3, 1), (3, 4), (4, 4)]);
        let u = p_to_m(&u_via_cycles(&x).unwrap()).unwrap();
        assert_eq!(sum_expansion(&cycle_deletion_expansion(&x, &[1, 2, 3]).unwrap()).unwrap(), u);
        let y = dg(3, &[(1, 2), (2, 1), (2, 3)]);
        let u = p_to_m(&u_via_cycles(&y).unwrap()).unwrap();
        assert_eq!(sum_expansion(&cycle_deletion_expansion(&y, &[1, 2]).unwrap()).unwrap(), u);
        assert!(cycle_deletion_expansion(&y, &[2, 3]).is_err());
    }

    #[test]
    fn nonempty_subsets_order() {
        assert_eq!(
            nonempty_subsets_by_size(3),
            vec![vec![0], vec![1], vec![2], vec![0, 1], vec![0, 2], vec![1, 2], vec![0, 1, 2]]
        );
        assert_eq!(nonempty_subsets_by_size(5).len(), 31);
    }

    #[test]
    fn invariant_examples() {
        let u = QSymElement::from_terms(QBasis::Fundamental, [(comp(&[2]), 1), (comp(&[1, 1]), 1)]);
        let r = invariants_from_u(&u, 2, InvariantMode::Digraph).unwrap();
        assert_eq!(r.nonloop_edges, 1);
        assert_eq!(r.path_counts, BTreeMap::from([(1, 2), (2, 1)]));

        let r = invariants_from_u(&u_via_listings(&triangle()).unwrap(), 3, InvariantMode::Tournament)
            .unwrap();
        assert_eq!(r.odd_cycles, Some(BTreeMap::from([(3, 1)])));

        let u = u_of_poset(&Poset::antichain(2)).unwrap().fundamental;
        let r = invariants_from_u(&u, 2, InvariantMode::Poset).unwrap();
        assert_eq!(r.incomparable_pairs, Some(1));

        let d = u_via_listings(&Digraph::discrete(3)).unwrap();
        assert!(matches!(
            invariants_from_u(&d, 3, InvariantMode::Tournament),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn invariants_reject_fake_u() {
        // mass 3! but 5 descents cannot be spread evenly over 2! orders
        let fake = QSymElement::from_terms(QBasis::Fundamental, [(comp(&[1, 2]), 5), (comp(&[3]), 1)]);
        assert!(matches!(
            invariants_from_u(&fake, 3, InvariantMode::Digraph),
            Err(Error::Consistency(_))
        ));
        let wrong_mass = QSymElement::from_terms(QBasis::Fundamental, [(comp(&[2]), 1)]);
        assert!(matches!(
            invariants_from_u(&wrong_mass, 2, InvariantMode::Digraph),
            Err(Error::Consistency(_))
        ));
    }

    #[test]
    fn p_positivity() {
        assert!(!is_p_positive(&p_terms(&[(&[1, 1], 1), (&[2], -1)])));
        assert!(is_p_positive(&SymElement::zero(SBasis::PowerSum)));
        for p in (1..=4).flat_map(|n| enumerate_posets(n, false).unwrap()) {
            assert!(is_p_positive(&u_of_poset(&p).unwrap().power_sum));
        }
        // m_(1,1) = (p_11 - p_2)/2
        let m11 = SymElement::from_int_terms(SBasis::MonomialSym, [(part(&[1, 1]), 1)]);
        assert!(!is_p_positive(&m11));
        let m2 = SymElement::from_int_terms(SBasis::MonomialSym, [(part(&[2]), 1)]);
        assert!(is_p_positive(&m2));
    }

    #[test]
    fn two_isolated_vertices_break_multiplicativity() {
        let (x, y) = disjoint_union_counterexample(3).unwrap().unwrap();
        assert_eq!((x.n(), y.n()), (1, 1));
        let joint = u_via_cycles(&x.disjoint_union(&y).unwrap()).unwrap();
        assert_eq!(joint, p_terms(&[(&[1, 1], 1), (&[2], 1)]));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn routes_agree(x in digraph_strategy(5)) {
            let m = f_to_m(&u_via_listings(&x).unwrap());
            prop_assert_eq!(&m, &p_to_m(&u_via_cycles(&x).unwrap()).unwrap());
            prop_assert_eq!(m, psi_of_digraph(&x).unwrap());
        }

        #[test]
        fn opposite_and_loops_do_not_matter(x in digraph_strategy(5), v in 1usize..=5) {
            let u = u_via_cycles(&x).unwrap();
            prop_assert_eq!(&u, &u_via_cycles(&x.opposite()).unwrap());
            let v = (v - 1) % x.n() + 1;
            prop_assert_eq!(&u, &u_via_cycles(&x.toggle_loop(v).unwrap()).unwrap());
        }

        #[test]
        fn invariants_round_trip(x in digraph_strategy(5)) {
            let r = invariants_from_u(&u_via_listings(&x).unwrap(), x.n(), InvariantMode::Digraph).unwrap();
            prop_assert_eq!(r.nonloop_edges, x.nonloop_edge_count() as u64);
            for k in 1..=x.n() {
                prop_assert_eq!(r.path_counts[&k], x.count_paths(k).unwrap());
            }
        }

        #[test]
        fn mass_is_factorial(x in digraph_strategy(6)) {
            prop_assert_eq!(u_via_listings(&x).unwrap().mass(), BigInt::from(factorial(x.n())));
        }
    }
}
