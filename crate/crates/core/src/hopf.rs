//! The combinatorial Hopf algebras of digraph classes, posets and
//! permutations, their characters, the convolution functionals `ζ_α`, the
//! universal morphism `Ψ` to quasisymmetric functions, and the morphisms
//! `f: σ ↦ P_σ` and `g: P ↦ [D_P]`.
//!
//! Coproducts sum over ordered pairs of complementary subsets, empty blocks
//! included, so that the counit axioms hold.
//!
//! Characters: for digraphs the number of listings with empty descent set;
//! for permutations the number of σ-reversing permutations; for posets the
//! number of listings with no adjacent pair `a <_P b`. The poset character
//! is the one that makes `g` (and hence `f`) character-preserving. Counting
//! linear extensions instead is *not* compatible: for `P = {2 < 3}` on `[3]`
//! there are 3 linear extensions but 4 adjacent-ascent-free listings.

use std::collections::BTreeMap;
use std::fmt::Debug;
use std::hash::Hash;
use std::marker::PhantomData;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde_json::json;

use crate::combinatorics::{compositions, standardize, Composition, Permutation};
use crate::digraph::Digraph;
use crate::error::{Error, Result};
use crate::order::{perm_to_poset, permutation_to_json, poset_to_digraph, sigma_reversing_count, Poset};
use crate::qsym::{QBasis, QSymElement};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SpeciesTag {
    DigraphClasses,
    Posets,
    Permutations,
}

/// A graded family of combinatorial objects with the operations needed for
/// a combinatorial Hopf algebra whose coproduct is "restrict to complementary
/// subsets".
pub trait Species {
    type Obj: Clone + Ord + Hash + Debug + Send + Sync;
    const TAG: SpeciesTag;

    fn degree(obj: &Self::Obj) -> usize;
    fn unit() -> Self::Obj;
    /// Representative used as a basis key.
    fn normalize(obj: Self::Obj) -> Result<Self::Obj>;
    fn product(a: &Self::Obj, b: &Self::Obj) -> Result<Self::Obj>;
    /// Restriction to a 0-based subset of the ground set, standardized.
    fn restrict(obj: &Self::Obj, mask: u64) -> Self::Obj;
    fn character(obj: &Self::Obj) -> Result<u64>;
    fn obj_to_json(obj: &Self::Obj) -> serde_json::Value;
}

/// Isomorphism classes of digraphs, keyed by canonical form.
pub struct DigraphClasses;
/// Posets on `[n]`, labelled.
pub struct Posets;
/// Permutations of `[n]`.
pub struct Permutations;

impl Species for DigraphClasses {
    type Obj = Digraph;
    const TAG: SpeciesTag = SpeciesTag::DigraphClasses;

    fn degree(obj: &Digraph) -> usize {
        obj.n()
    }
    fn unit() -> Digraph {
        Digraph::discrete(0)
    }
    fn normalize(obj: Digraph) -> Result<Digraph> {
        obj.canonical_form()
    }
    fn product(a: &Digraph, b: &Digraph) -> Result<Digraph> {
        a.product(b)
    }
    fn restrict(obj: &Digraph, mask: u64) -> Digraph {
        obj.restrict_mask(mask)
    }
    fn character(obj: &Digraph) -> Result<u64> {
        obj.complement().count_hamiltonian_paths()
    }
    fn obj_to_json(obj: &Digraph) -> serde_json::Value {
        obj.to_json()
    }
}

impl Species for Posets {
    type Obj = Poset;
    const TAG: SpeciesTag = SpeciesTag::Posets;

    fn degree(obj: &Poset) -> usize {
        obj.n()
    }
    fn unit() -> Poset {
        Poset::antichain(0)
    }
    fn normalize(obj: Poset) -> Result<Poset> {
        Ok(obj)
    }
    fn product(a: &Poset, b: &Poset) -> Result<Poset> {
        a.product(b)
    }
    fn restrict(obj: &Poset, mask: u64) -> Poset {
        obj.restrict_mask(mask)
    }
    fn character(obj: &Poset) -> Result<u64> {
        obj.adjacent_ascent_free_count()
    }
    fn obj_to_json(obj: &Poset) -> serde_json::Value {
        obj.to_json()
    }
}

impl Species for Permutations {
    type Obj = Permutation;
    const TAG: SpeciesTag = SpeciesTag::Permutations;

    fn degree(obj: &Permutation) -> usize {
        obj.len()
    }
    fn unit() -> Permutation {
        Permutation::identity(0)
    }
    fn normalize(obj: Permutation) -> Result<Permutation> {
        Ok(obj)
    }
    fn product(a: &Permutation, b: &Permutation) -> Result<Permutation> {
        Ok(a.shift_concat(b))
    }
    fn restrict(obj: &Permutation, mask: u64) -> Permutation {
        let word: Vec<usize> = obj
            .images()
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &v)| v)
            .collect();
        standardize(&word).expect("permutation entries are distinct")
    }
    fn character(obj: &Permutation) -> Result<u64> {
        sigma_reversing_count(obj)
    }
    fn obj_to_json(obj: &Permutation) -> serde_json::Value {
        permutation_to_json(obj)
    }
}

/// A formal integer combination of basis objects.
pub struct FreeModuleElement<S: Species> {
    terms: BTreeMap<S::Obj, BigInt>,
    _species: PhantomData<S>,
}

impl<S: Species> Clone for FreeModuleElement<S> {
    fn clone(&self) -> Self {
        FreeModuleElement {
            terms: self.terms.clone(),
            _species: PhantomData,
        }
    }
}

impl<S: Species> PartialEq for FreeModuleElement<S> {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}

impl<S: Species> Eq for FreeModuleElement<S> {}

impl<S: Species> Debug for FreeModuleElement<S> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_map().entries(self.terms.iter()).finish()
    }
}

impl<S: Species> FreeModuleElement<S> {
    pub fn zero() -> Self {
        FreeModuleElement {
            terms: BTreeMap::new(),
            _species: PhantomData,
        }
    }

    /// A single basis object with coefficient 1.
    pub fn basis(obj: S::Obj) -> Result<Self> {
        let mut e = Self::zero();
        e.add_term(S::normalize(obj)?, BigInt::one());
        Ok(e)
    }

    pub fn unit() -> Self {
        Self::basis(S::unit()).expect("the empty object normalizes")
    }

    pub fn species(&self) -> SpeciesTag {
        S::TAG
    }

    pub fn terms(&self) -> &BTreeMap<S::Obj, BigInt> {
        &self.terms
    }

    /// Adds `coeff * obj`; `obj` must already be normalized.
    fn add_term(&mut self, obj: S::Obj, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        let slot = self.terms.entry(obj.clone()).or_insert_with(BigInt::zero);
        *slot += coeff;
        if slot.is_zero() {
            self.terms.remove(&obj);
        }
    }

    pub fn add_scaled(&mut self, obj: S::Obj, coeff: BigInt) -> Result<()> {
        self.add_term(S::normalize(obj)?, coeff);
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, v) in &other.terms {
            out.add_term(k.clone(), v.clone());
        }
        out
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        let mut out = Self::zero();
        for (k, v) in &self.terms {
            out.add_term(k.clone(), v * c);
        }
        out
    }

    pub fn is_homogeneous_of(&self, n: usize) -> bool {
        self.terms.keys().all(|o| S::degree(o) == n)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let terms: Vec<_> = self
            .terms
            .iter()
            .map(|(k, v)| json!({"key": S::obj_to_json(k), "num": v.to_string(), "den": "1"}))
            .collect();
        json!({"species": format!("{:?}", S::TAG), "terms": terms})
    }
}

/// Formal combination of `k`-fold tensors of basis objects.
pub struct TensorElement<S: Species> {
    terms: BTreeMap<Vec<S::Obj>, BigInt>,
    _species: PhantomData<S>,
}

impl<S: Species> Clone for TensorElement<S> {
    fn clone(&self) -> Self {
        TensorElement {
            terms: self.terms.clone(),
            _species: PhantomData,
        }
    }
}

impl<S: Species> PartialEq for TensorElement<S> {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}

impl<S: Species> Eq for TensorElement<S> {}

impl<S: Species> Debug for TensorElement<S> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_map().entries(self.terms.iter()).finish()
    }
}

impl<S: Species> TensorElement<S> {
    pub fn zero() -> Self {
        TensorElement {
            terms: BTreeMap::new(),
            _species: PhantomData,
        }
    }

    /// `x` viewed as a 1-fold tensor.
    pub fn from_element(x: &FreeModuleElement<S>) -> Self {
        let mut t = Self::zero();
        for (k, v) in &x.terms {
            t.add_term(vec![k.clone()], v.clone());
        }
        t
    }

    pub fn terms(&self) -> &BTreeMap<Vec<S::Obj>, BigInt> {
        &self.terms
    }

    fn add_term(&mut self, key: Vec<S::Obj>, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        let slot = self.terms.entry(key.clone()).or_insert_with(BigInt::zero);
        *slot += coeff;
        if slot.is_zero() {
            self.terms.remove(&key);
        }
    }

    /// Swaps the two factors of a 2-fold tensor.
    pub fn swap(&self) -> Self {
        let mut t = Self::zero();
        for (k, v) in &self.terms {
            let mut k = k.clone();
            k.reverse();
            t.add_term(k, v.clone());
        }
        t
    }

    /// Applies `id ⊗ ... ⊗ Δ ⊗ ... ⊗ id` with `Δ` in slot `position`.
    pub fn coproduct_at(&self, position: usize) -> Result<Self> {
        let mut t = Self::zero();
        for (key, c) in &self.terms {
            if position >= key.len() {
                return Err(Error::Validation(format!(
                    "tensor has {} factors, no slot {position}",
                    key.len()
                )));
            }
            for ((left, right), m) in binary_coproduct::<S>(&key[position])? {
                let mut k = key[..position].to_vec();
                k.push(left);
                k.push(right);
                k.extend_from_slice(&key[position + 1..]);
                t.add_term(k, c * BigInt::from(m));
            }
        }
        Ok(t)
    }

    /// Factorwise product `(x ⊗ y)(x' ⊗ y') = xx' ⊗ yy'`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        let mut t = Self::zero();
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                if a.len() != b.len() {
                    return Err(Error::Validation("tensors of different arity".into()));
                }
                let key = a
                    .iter()
                    .zip(b)
                    .map(|(p, q)| S::product(p, q).and_then(S::normalize))
                    .collect::<Result<Vec<_>>>()?;
                t.add_term(key, x * y);
            }
        }
        Ok(t)
    }

    /// Keeps only tensors whose factor degrees equal `degrees`.
    pub fn project(&self, degrees: &[usize]) -> Self {
        let mut t = Self::zero();
        for (k, v) in &self.terms {
            if k.len() == degrees.len() && k.iter().zip(degrees).all(|(o, &d)| S::degree(o) == d) {
                t.add_term(k.clone(), v.clone());
            }
        }
        t
    }

    /// `ζ^{⊗k}`.
    pub fn apply_character(&self) -> Result<BigInt> {
        let mut total = BigInt::zero();
        for (k, v) in &self.terms {
            let mut prod = v.clone();
            for o in k {
                prod *= BigInt::from(S::character(o)?);
            }
            total += prod;
        }
        Ok(total)
    }

    /// Counit on every factor.
    pub fn apply_counit_at(&self, position: usize) -> Self {
        let mut t = Self::zero();
        for (k, v) in &self.terms {
            if S::degree(&k[position]) == 0 {
                let mut k = k.clone();
                k.remove(position);
                t.add_term(k, v.clone());
            }
        }
        t
    }
}

/// Terms of `Δ(obj)` with multiplicities, keys normalized.
fn binary_coproduct<S: Species>(obj: &S::Obj) -> Result<BTreeMap<(S::Obj, S::Obj), u64>> {
    let n = S::degree(obj);
    let full = if n == 0 { 0 } else { u64::MAX >> (64 - n) };
    let mut out = BTreeMap::new();
    let mut s = 0u64;
    loop {
        let left = S::normalize(S::restrict(obj, s))?;
        let right = S::normalize(S::restrict(obj, full & !s))?;
        *out.entry((left, right)).or_insert(0) += 1;
        if s == full {
            break;
        }
        s = (s.wrapping_sub(full)) & full;
    }
    Ok(out)
}

pub fn hopf_product<S: Species>(
    a: &FreeModuleElement<S>,
    b: &FreeModuleElement<S>,
) -> Result<FreeModuleElement<S>> {
    let mut out = FreeModuleElement::zero();
    for (x, c) in &a.terms {
        for (y, d) in &b.terms {
            out.add_term(S::normalize(S::product(x, y)?)?, c * d);
        }
    }
    Ok(out)
}

/// `Δ(a) = Σ a|_{S} ⊗ a|_{V∖S}` over all subsets `S`, empty ones included.
pub fn hopf_coproduct<S: Species>(a: &FreeModuleElement<S>) -> Result<TensorElement<S>> {
    TensorElement::from_element(a).coproduct_at(0)
}

/// `Δ^{(k-1)}`, obtained by applying the binary coproduct to the last factor
/// `k - 1` times.
pub fn iterated_coproduct<S: Species>(
    a: &FreeModuleElement<S>,
    k: usize,
) -> Result<TensorElement<S>> {
    if k == 0 {
        return Err(Error::Validation("need at least one tensor factor".into()));
    }
    let mut t = TensorElement::from_element(a);
    for i in 0..k - 1 {
        t = t.coproduct_at(i)?;
    }
    Ok(t)
}

pub fn character<S: Species>(a: &FreeModuleElement<S>) -> Result<BigInt> {
    let mut total = BigInt::zero();
    for (o, c) in &a.terms {
        total += c * BigInt::from(S::character(o)?);
    }
    Ok(total)
}

/// `ζ` of every restriction of `obj`, indexed by 0-based subset mask.
fn restricted_characters<S: Species>(obj: &S::Obj) -> Result<Vec<u64>> {
    let n = S::degree(obj);
    crate::error::check_cap("restricted character table size", n, crate::digraph::SUBSET_DP_CAP)?;
    (0u64..(1u64 << n))
        .map(|mask| S::character(&S::restrict(obj, mask)))
        .collect()
}

/// `Σ ζ(obj|V_1) ⋯ ζ(obj|V_k)` over ordered set partitions of `ground` with
/// block sizes `sizes`. This is `Δ^{(k-1)}` projected to multidegree `sizes`
/// followed by `ζ^{⊗k}`, computed one split at a time.
fn convolve(table: &[u64], ground: u64, sizes: &[usize]) -> BigInt {
    match sizes.split_first() {
        None => BigInt::from(u64::from(ground == 0)),
        Some((&first, rest)) => {
            let mut total = BigInt::zero();
            // submasks of ground of size `first`
            let mut s = ground;
            loop {
                if s.count_ones() as usize == first {
                    let z = table[s as usize];
                    if z != 0 {
                        total += BigInt::from(z) * convolve(table, ground & !s, rest);
                    }
                }
                if s == 0 {
                    break;
                }
                s = (s - 1) & ground;
            }
            total
        }
    }
}

/// `ζ_α(a)` for `a` homogeneous of degree `|α|`.
pub fn zeta_alpha<S: Species>(a: &FreeModuleElement<S>, alpha: &Composition) -> Result<BigInt> {
    let n = alpha.size();
    if !a.is_homogeneous_of(n) {
        return Err(Error::Validation(format!(
            "ζ_α with |α| = {n} needs a homogeneous element of degree {n}"
        )));
    }
    let mut total = BigInt::zero();
    for (o, c) in &a.terms {
        let table = restricted_characters::<S>(o)?;
        let ground = if n == 0 { 0 } else { u64::MAX >> (64 - n) };
        total += c * convolve(&table, ground, alpha.parts());
    }
    Ok(total)
}

/// `ζ_α(a)` computed literally: full iterated coproduct, projection, `ζ^{⊗k}`.
/// Exponential in a way [`zeta_alpha`] is not; meant for cross-checks.
pub fn zeta_alpha_literal<S: Species>(
    a: &FreeModuleElement<S>,
    alpha: &Composition,
) -> Result<BigInt> {
    let n = alpha.size();
    if !a.is_homogeneous_of(n) {
        return Err(Error::Validation(format!(
            "ζ_α with |α| = {n} needs a homogeneous element of degree {n}"
        )));
    }
    if alpha.is_empty() {
        return character(a);
    }
    iterated_coproduct(a, alpha.len())?
        .project(alpha.parts())
        .apply_character()
}

/// The universal morphism: `Ψ(h) = Σ_{α ⊨ n} ζ_α(h) M_α` on each degree.
pub fn psi<S: Species>(a: &FreeModuleElement<S>) -> Result<QSymElement> {
    let mut out = QSymElement::zero(QBasis::Monomial);
    for (o, c) in &a.terms {
        let n = S::degree(o);
        let table = restricted_characters::<S>(o)?;
        let ground = if n == 0 { 0 } else { u64::MAX >> (64 - n) };
        for alpha in compositions(n) {
            let z = convolve(&table, ground, alpha.parts());
            out.add_term(alpha, c * z);
        }
    }
    Ok(out)
}

/// `Ψ` of a single labelled digraph, without canonicalizing it first.
pub fn psi_of_digraph(x: &Digraph) -> Result<QSymElement> {
    let mut out = QSymElement::zero(QBasis::Monomial);
    let n = x.n();
    let table = restricted_characters::<DigraphClasses>(x)?;
    let ground = if n == 0 { 0 } else { u64::MAX >> (64 - n) };
    for alpha in compositions(n) {
        let z = convolve(&table, ground, alpha.parts());
        out.add_term(alpha, z);
    }
    Ok(out)
}

/// `f(σ) = P_σ`.
pub fn morphism_f(sigma: &Permutation) -> FreeModuleElement<Posets> {
    FreeModuleElement::basis(perm_to_poset(sigma)).expect("posets need no normalization")
}

/// `g(P) = [D_P]`.
pub fn morphism_g(p: &Poset) -> Result<FreeModuleElement<DigraphClasses>> {
    FreeModuleElement::basis(poset_to_digraph(p))
}

/// Linear extension of `f`.
pub fn apply_f(a: &FreeModuleElement<Permutations>) -> FreeModuleElement<Posets> {
    let mut out = FreeModuleElement::zero();
    for (s, c) in &a.terms {
        out.add_term(perm_to_poset(s), c.clone());
    }
    out
}

/// Linear extension of `g`.
pub fn apply_g(a: &FreeModuleElement<Posets>) -> Result<FreeModuleElement<DigraphClasses>> {
    let mut out = FreeModuleElement::zero();
    for (p, c) in &a.terms {
        out.add_scaled(poset_to_digraph(p), c.clone())?;
    }
    Ok(out)
}

/// `f` applied factorwise to a tensor.
pub fn apply_f_tensor(t: &TensorElement<Permutations>) -> TensorElement<Posets> {
    let mut out = TensorElement::zero();
    for (k, c) in &t.terms {
        out.add_term(k.iter().map(perm_to_poset).collect(), c.clone());
    }
    out
}

/// `g` applied factorwise to a tensor.
pub fn apply_g_tensor(t: &TensorElement<Posets>) -> Result<TensorElement<DigraphClasses>> {
    let mut out = TensorElement::zero();
    for (k, c) in &t.terms {
        let key = k
            .iter()
            .map(|p| poset_to_digraph(p).canonical_form())
            .collect::<Result<Vec<_>>>()?;
        out.add_term(key, c.clone());
    }
    Ok(out)
}
