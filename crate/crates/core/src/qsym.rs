//! Sparse exact quasisymmetric and symmetric functions.
//!
//! [`QSymElement`] stores integer coefficients over compositions in either the
//! monomial (`M`) or fundamental (`F`) basis. [`SymElement`] stores rational
//! coefficients over partitions in the power-sum (`p`) or symmetric monomial
//! (`m`) basis. Elements may mix degrees.
//!
//! Products are only implemented in the `M` basis (quasi-shuffle) and in the
//! `p` basis (concatenation); `F` inputs are converted first.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::combinatorics::{
    binomial, comp_of_subset, partitions, subset_of_comp, Composition, DescentSubset, Partition,
};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum QBasis {
    #[serde(rename = "M")]
    Monomial,
    #[serde(rename = "F")]
    Fundamental,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SBasis {
    #[serde(rename = "p")]
    PowerSum,
    #[serde(rename = "m")]
    MonomialSym,
}

impl QBasis {
    pub fn symbol(self) -> &'static str {
        match self {
            QBasis::Monomial => "M",
            QBasis::Fundamental => "F",
        }
    }
}

impl SBasis {
    pub fn symbol(self) -> &'static str {
        match self {
            SBasis::PowerSum => "p",
            SBasis::MonomialSym => "m",
        }
    }
}

/// A quasisymmetric function with integer coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct QSymElement {
    basis: QBasis,
    terms: BTreeMap<Composition, BigInt>,
}

impl QSymElement {
    pub fn zero(basis: QBasis) -> Self {
        QSymElement {
            basis,
            terms: BTreeMap::new(),
        }
    }

    /// The unit, indexed by the empty composition.
    pub fn one(basis: QBasis) -> Self {
        Self::basis_element(basis, Composition::empty())
    }

    pub fn basis_element(basis: QBasis, key: Composition) -> Self {
        let mut e = Self::zero(basis);
        e.terms.insert(key, BigInt::one());
        e
    }

    /// `F_I` for a descent subset `I` of `[n-1]`.
    pub fn fundamental(subset: &DescentSubset) -> Self {
        Self::basis_element(QBasis::Fundamental, comp_of_subset(subset))
    }

    pub fn from_terms<I, C>(basis: QBasis, terms: I) -> Self
    where
        I: IntoIterator<Item = (Composition, C)>,
        C: Into<BigInt>,
    {
        let mut e = Self::zero(basis);
        for (k, c) in terms {
            e.add_term(k, c.into());
        }
        e
    }

    pub fn basis(&self) -> QBasis {
        self.basis
    }

    pub fn terms(&self) -> &BTreeMap<Composition, BigInt> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, key: Composition, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn coefficient(&self, key: &Composition) -> BigInt {
        self.terms.get(key).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Coefficient of `F_I`/`M_I` for a descent subset.
    pub fn coefficient_of_subset(&self, subset: &DescentSubset) -> BigInt {
        self.coefficient(&comp_of_subset(subset))
    }

    /// Degrees that carry at least one term.
    pub fn degrees(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self.terms.keys().map(Composition::size).collect();
        d.sort_unstable();
        d.dedup();
        d
    }

    /// The homogeneous component of degree `n`.
    pub fn component(&self, n: usize) -> QSymElement {
        QSymElement {
            basis: self.basis,
            terms: self
                .terms
                .iter()
                .filter(|(k, _)| k.size() == n)
                .map(|(k, v)| (k.clone(), v.clone()))
                .collect(),
        }
    }

    /// Sum of all coefficients.
    pub fn mass(&self) -> BigInt {
        self.terms.values().sum()
    }

    pub fn scale(&self, c: &BigInt) -> QSymElement {
        if c.is_zero() {
            return Self::zero(self.basis);
        }
        QSymElement {
            basis: self.basis,
            terms: self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect(),
        }
    }

    pub fn add(&self, other: &QSymElement) -> Result<QSymElement> {
        if self.basis != other.basis {
            return Err(Error::Validation(format!(
                "cannot add {} and {} expansions",
                self.basis.symbol(),
                other.basis.symbol()
            )));
        }
        let mut out = self.clone();
        for (k, v) in &other.terms {
            out.add_term(k.clone(), v.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &QSymElement) -> Result<QSymElement> {
        self.add(&other.scale(&BigInt::from(-1)))
    }

    /// Same element in the monomial basis.
    pub fn to_monomial(&self) -> QSymElement {
        match self.basis {
            QBasis::Monomial => self.clone(),
            QBasis::Fundamental => f_to_m(self),
        }
    }

    /// Same element in the fundamental basis.
    pub fn to_fundamental(&self) -> QSymElement {
        match self.basis {
            QBasis::Fundamental => self.clone(),
            QBasis::Monomial => m_to_f(self),
        }
    }

    /// Product, computed in the monomial basis.
    pub fn mul(&self, other: &QSymElement) -> QSymElement {
        m_product(&self.to_monomial(), &other.to_monomial())
    }

    /// Value at `x_1 = ... = x_m = 1`, all other variables 0.
    pub fn principal_specialization(&self, m: usize) -> BigInt {
        let mut total = BigInt::zero();
        for (alpha, c) in &self.terms {
            let n = alpha.size();
            let value = if n == 0 {
                1
            } else {
                match self.basis {
                    QBasis::Monomial => binomial(m, alpha.len()),
                    QBasis::Fundamental => {
                        // |I| = len - 1, so n - |I| + m - 1 = n - len + m
                        let top = n + m - alpha.len();
                        binomial(top, n)
                    }
                }
            };
            total += c * BigInt::from(value);
        }
        total
    }

    pub fn to_json(&self) -> serde_json::Value {
        let terms = self
            .terms
            .iter()
            .map(|(k, v)| JsonTerm {
                key: k.parts().to_vec(),
                num: v.to_string(),
                den: "1".into(),
            })
            .collect();
        serde_json::to_value(JsonElement {
            basis: self.basis.symbol().into(),
            terms,
        })
        .expect("plain data serializes")
    }

    pub fn from_json(value: &serde_json::Value) -> Result<QSymElement> {
        let raw: JsonElement = serde_json::from_value(value.clone())
            .map_err(|e| Error::Validation(format!("bad element JSON: {e}")))?;
        let basis = match raw.basis.as_str() {
            "M" => QBasis::Monomial,
            "F" => QBasis::Fundamental,
            other => {
                return Err(Error::Validation(format!(
                    "basis {other:?} is not a quasisymmetric basis"
                )))
            }
        };
        let mut out = QSymElement::zero(basis);
        for t in raw.terms {
            let q = t.coefficient()?;
            if !q.is_integer() {
                return Err(Error::Precision(format!(
                    "quasisymmetric coefficient {q} is not an integer"
                )));
            }
            out.add_term(Composition::new(t.key)?, q.to_integer());
        }
        Ok(out)
    }
}

impl fmt::Display for QSymElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, self.basis.symbol(), self.terms.iter().map(|(k, v)| (k.parts(), v.to_string())))
    }
}

impl fmt::Debug for QSymElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn write_terms<'a, I>(f: &mut fmt::Formatter<'_>, symbol: &str, terms: I) -> fmt::Result
where
    I: Iterator<Item = (&'a [usize], String)>,
{
    let mut any = false;
    for (i, (key, c)) in terms.enumerate() {
        any = true;
        if i > 0 {
            write!(f, ", ")?;
        }
        write!(f, "{symbol}[")?;
        for (j, p) in key.iter().enumerate() {
            if j > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "]: {c}")?;
    }
    if !any {
        write!(f, "0")?;
    }
    Ok(())
}

/// A symmetric function with rational coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct SymElement {
    basis: SBasis,
    terms: BTreeMap<Partition, BigRational>,
}

impl SymElement {
    pub fn zero(basis: SBasis) -> Self {
        SymElement {
            basis,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(basis: SBasis) -> Self {
        Self::basis_element(basis, Partition::empty())
    }

    pub fn basis_element(basis: SBasis, key: Partition) -> Self {
        let mut e = Self::zero(basis);
        e.terms.insert(key, BigRational::one());
        e
    }

    pub fn from_terms<I, C>(basis: SBasis, terms: I) -> Self
    where
        I: IntoIterator<Item = (Partition, C)>,
        C: Into<BigRational>,
    {
        let mut e = Self::zero(basis);
        for (k, c) in terms {
            e.add_term(k, c.into());
        }
        e
    }

    /// Integer coefficients convenience constructor.
    pub fn from_int_terms<I>(basis: SBasis, terms: I) -> Self
    where
        I: IntoIterator<Item = (Partition, i64)>,
    {
        Self::from_terms(
            basis,
            terms
                .into_iter()
                .map(|(k, c)| (k, BigRational::from_integer(BigInt::from(c)))),
        )
    }

    pub fn basis(&self) -> SBasis {
        self.basis
    }

    pub fn terms(&self) -> &BTreeMap<Partition, BigRational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, key: Partition, coeff: BigRational) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn coefficient(&self, key: &Partition) -> BigRational {
        self.terms.get(key).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|v| v.is_integer())
    }

    pub fn scale(&self, c: &BigRational) -> SymElement {
        if c.is_zero() {
            return Self::zero(self.basis);
        }
        SymElement {
            basis: self.basis,
            terms: self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect(),
        }
    }

    pub fn add(&self, other: &SymElement) -> Result<SymElement> {
        if self.basis != other.basis {
            return Err(Error::Validation(format!(
                "cannot add {} and {} expansions",
                self.basis.symbol(),
                other.basis.symbol()
            )));
        }
        let mut out = self.clone();
        for (k, v) in &other.terms {
            out.add_term(k.clone(), v.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &SymElement) -> Result<SymElement> {
        self.add(&other.scale(&BigRational::from_integer(BigInt::from(-1))))
    }

    /// Product in the power-sum basis: `p_lambda p_mu = p_(lambda ∪ mu)`.
    pub fn mul(&self, other: &SymElement) -> Result<SymElement> {
        if self.basis != SBasis::PowerSum || other.basis != SBasis::PowerSum {
            return Err(Error::Validation(
                "symmetric products are only implemented in the p basis".into(),
            ));
        }
        let mut out = SymElement::zero(SBasis::PowerSum);
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                out.add_term(a.union(b), x * y);
            }
        }
        Ok(out)
    }

    /// `true` iff every coefficient is nonnegative.
    pub fn is_nonnegative(&self) -> bool {
        self.terms.values().all(|v| !v.is_negative())
    }

    pub fn principal_specialization(&self, m: usize) -> BigRational {
        let mut total = BigRational::zero();
        for (lambda, c) in &self.terms {
            let value = match self.basis {
                SBasis::PowerSum => BigInt::from(m).pow(lambda.len() as u32),
                SBasis::MonomialSym => {
                    // number of distinct rearrangements times C(m, len)
                    let arr = rearrangement_count(lambda);
                    BigInt::from(arr) * BigInt::from(binomial(m, lambda.len()))
                }
            };
            total += c * BigRational::from_integer(value);
        }
        total
    }

    /// Canonical serialization: decreasing-lexicographic keys, reduced
    /// rationals. Equal elements produce equal strings.
    pub fn canonical_key(&self) -> String {
        serde_json::to_string(&self.to_json()).expect("plain data serializes")
    }

    pub fn to_json(&self) -> serde_json::Value {
        let terms = self
            .terms
            .iter()
            .map(|(k, v)| JsonTerm {
                key: k.parts().to_vec(),
                num: v.numer().to_string(),
                den: v.denom().to_string(),
            })
            .collect();
        serde_json::to_value(JsonElement {
            basis: self.basis.symbol().into(),
            terms,
        })
        .expect("plain data serializes")
    }

    pub fn from_json(value: &serde_json::Value) -> Result<SymElement> {
        let raw: JsonElement = serde_json::from_value(value.clone())
            .map_err(|e| Error::Validation(format!("bad element JSON: {e}")))?;
        let basis = match raw.basis.as_str() {
            "p" => SBasis::PowerSum,
            "m" => SBasis::MonomialSym,
            other => {
                return Err(Error::Validation(format!(
                    "basis {other:?} is not a symmetric basis"
                )))
            }
        };
        let mut out = SymElement::zero(basis);
        for t in raw.terms {
            let q = t.coefficient()?;
            out.add_term(Partition::new(t.key)?, q);
        }
        Ok(out)
    }
}

impl fmt::Display for SymElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(
            f,
            self.basis.symbol(),
            // increasing lexicographic order, matching compositions
            self.terms.iter().rev().map(|(k, v)| (k.parts(), v.to_string())),
        )
    }
}

impl fmt::Debug for SymElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Serialize, Deserialize)]
struct JsonTerm {
    key: Vec<usize>,
    num: String,
    den: String,
}

impl JsonTerm {
    fn coefficient(&self) -> Result<BigRational> {
        let num: BigInt = self
            .num
            .parse()
            .map_err(|_| Error::Validation(format!("bad numerator {:?}", self.num)))?;
        let den: BigInt = self
            .den
            .parse()
            .map_err(|_| Error::Validation(format!("bad denominator {:?}", self.den)))?;
        if den.is_zero() {
            return Err(Error::Validation("zero denominator".into()));
        }
        Ok(BigRational::new(num, den))
    }
}

#[derive(Serialize, Deserialize)]
struct JsonElement {
    basis: String,
    terms: Vec<JsonTerm>,
}

/// Number of distinct compositions that sort to `lambda`.
pub fn rearrangement_count(lambda: &Partition) -> u128 {
    let mut count = crate::combinatorics::factorial(lambda.len());
    for m in lambda.multiplicities() {
        count /= crate::combinatorics::factorial(m);
    }
    count
}

/// `F_I = sum over J ⊇ I of M_J`, applied termwise.
pub fn f_to_m(x: &QSymElement) -> QSymElement {
    assert_eq!(x.basis, QBasis::Fundamental, "f_to_m expects an F expansion");
    let mut out = QSymElement::zero(QBasis::Monomial);
    for (alpha, c) in &x.terms {
        let n = alpha.size();
        let i = subset_of_comp(alpha).mask();
        let full = if n <= 1 { 0 } else { (1u64 << (n - 1)) - 1 };
        let free = full & !i;
        // iterate over every submask of `free`
        let mut extra = free;
        loop {
            let j = DescentSubset::from_mask(n, i | extra).expect("within [n-1]");
            out.add_term(comp_of_subset(&j), c.clone());
            if extra == 0 {
                break;
            }
            extra = (extra - 1) & free;
        }
    }
    out
}

/// Inverse of [`f_to_m`]: `M_I = sum over J ⊇ I of (-1)^{|J - I|} F_J`.
pub fn m_to_f(x: &QSymElement) -> QSymElement {
    assert_eq!(x.basis, QBasis::Monomial, "m_to_f expects an M expansion");
    let mut out = QSymElement::zero(QBasis::Fundamental);
    for (alpha, c) in &x.terms {
        let n = alpha.size();
        let i = subset_of_comp(alpha).mask();
        let full = if n <= 1 { 0 } else { (1u64 << (n - 1)) - 1 };
        let free = full & !i;
        let mut extra = free;
        loop {
            let j = DescentSubset::from_mask(n, i | extra).expect("within [n-1]");
            let coeff = if extra.count_ones() % 2 == 0 {
                c.clone()
            } else {
                -c.clone()
            };
            out.add_term(comp_of_subset(&j), coeff);
            if extra == 0 {
                break;
            }
            extra = (extra - 1) & free;
        }
    }
    out
}

/// Quasi-shuffles of two compositions with multiplicities.
fn quasi_shuffle(a: &[usize], b: &[usize]) -> HashMap<Vec<usize>, u64> {
    // table[i][j] = quasi-shuffles of a[i..] and b[j..]
    let (la, lb) = (a.len(), b.len());
    let mut table: Vec<Vec<HashMap<Vec<usize>, u64>>> = vec![vec![HashMap::new(); lb + 1]; la + 1];
    for i in (0..=la).rev() {
        for j in (0..=lb).rev() {
            let mut cell: HashMap<Vec<usize>, u64> = HashMap::new();
            if i == la {
                cell.insert(b[j..].to_vec(), 1);
            } else if j == lb {
                cell.insert(a[i..].to_vec(), 1);
            } else {
                let mut extend = |head: usize, rest: &HashMap<Vec<usize>, u64>| {
                    for (w, &c) in rest {
                        let mut v = Vec::with_capacity(w.len() + 1);
                        v.push(head);
                        v.extend_from_slice(w);
                        *cell.entry(v).or_insert(0) += c;
                    }
                };
                extend(a[i], &table[i + 1][j]);
                extend(b[j], &table[i][j + 1]);
                extend(a[i] + b[j], &table[i + 1][j + 1]);
            }
            table[i][j] = cell;
        }
    }
    std::mem::take(&mut table[0][0])
}

/// Product of two `M` expansions by quasi-shuffle.
pub fn m_product(a: &QSymElement, b: &QSymElement) -> QSymElement {
    assert_eq!(a.basis, QBasis::Monomial, "m_product expects M expansions");
    assert_eq!(b.basis, QBasis::Monomial, "m_product expects M expansions");
    let mut out = QSymElement::zero(QBasis::Monomial);
    for (alpha, x) in &a.terms {
        for (beta, y) in &b.terms {
            let xy = x * y;
            for (gamma, mult) in quasi_shuffle(alpha.parts(), beta.parts()) {
                out.add_term(Composition::new(gamma).expect("positive parts"), &xy * BigInt::from(mult));
            }
        }
    }
    out
}

type PowerSumCache = Mutex<HashMap<Partition, Arc<QSymElement>>>;

fn power_sum_cache() -> &'static PowerSumCache {
    static CACHE: OnceLock<PowerSumCache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// `M` expansion of a single `p_lambda`, memoized.
pub fn power_sum_in_m(lambda: &Partition) -> Arc<QSymElement> {
    if let Some(hit) = power_sum_cache().lock().unwrap().get(lambda) {
        return hit.clone();
    }
    let value = match lambda.parts().split_last() {
        None => QSymElement::one(QBasis::Monomial),
        Some((&last, rest)) => {
            let head = power_sum_in_m(&Partition::new(rest.to_vec()).expect("prefix of a partition"));
            let single = QSymElement::basis_element(
                QBasis::Monomial,
                Composition::new(vec![last]).expect("positive"),
            );
            m_product(&head, &single)
        }
    };
    let value = Arc::new(value);
    power_sum_cache()
        .lock()
        .unwrap()
        .insert(lambda.clone(), value.clone());
    value
}

/// `M` expansion of an integral `p` expansion.
pub fn p_to_m(x: &SymElement) -> Result<QSymElement> {
    if x.basis != SBasis::PowerSum {
        return Err(Error::Validation("p_to_m expects a p expansion".into()));
    }
    let mut out = QSymElement::zero(QBasis::Monomial);
    for (lambda, c) in &x.terms {
        if !c.is_integer() {
            return Err(Error::Precision(format!(
                "coefficient {c} of p{lambda} is not an integer"
            )));
        }
        let c = c.to_integer();
        for (alpha, v) in power_sum_in_m(lambda).terms() {
            out.add_term(alpha.clone(), &c * v);
        }
    }
    Ok(out)
}

/// `true` iff the coefficients agree across every rearrangement class.
pub fn is_symmetric(x: &QSymElement) -> bool {
    let m = x.to_monomial();
    let mut classes: BTreeMap<Partition, (usize, Option<BigInt>, bool)> = BTreeMap::new();
    for (alpha, c) in &m.terms {
        let entry = classes.entry(alpha.sorted()).or_insert((0, None, true));
        entry.0 += 1;
        match &entry.1 {
            None => entry.1 = Some(c.clone()),
            Some(first) if first != c => entry.2 = false,
            _ => {}
        }
    }
    classes
        .iter()
        .all(|(lambda, (count, _, equal))| *equal && *count as u128 == rearrangement_count(lambda))
}

/// Rewrites a symmetric `M` expansion in the symmetric monomial basis.
pub fn to_monomial_sym(x: &QSymElement) -> Result<SymElement> {
    if !is_symmetric(x) {
        return Err(Error::Domain(format!("{x} is not symmetric")));
    }
    let m = x.to_monomial();
    let mut out = SymElement::zero(SBasis::MonomialSym);
    for (alpha, c) in &m.terms {
        let lambda = alpha.sorted();
        if lambda.parts() == alpha.parts() {
            out.add_term(lambda, BigRational::from_integer(c.clone()));
        }
    }
    Ok(out)
}

/// Rows `p_mu` of the p-to-m transition matrix in degree `n`:
/// `result[mu][lambda]` is the coefficient of `m_lambda` in `p_mu`.
fn p_to_msym_matrix(n: usize) -> Arc<HashMap<Partition, HashMap<Partition, BigInt>>> {
    type Cache = Mutex<HashMap<usize, Arc<HashMap<Partition, HashMap<Partition, BigInt>>>>>;
    static CACHE: OnceLock<Cache> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(hit) = cache.lock().unwrap().get(&n) {
        return hit.clone();
    }
    let mut rows = HashMap::new();
    for mu in partitions(n) {
        let expansion = power_sum_in_m(&mu);
        let row: HashMap<Partition, BigInt> = expansion
            .terms()
            .iter()
            .filter(|(alpha, _)| alpha.sorted().parts() == alpha.parts())
            .map(|(alpha, c)| (alpha.sorted(), c.clone()))
            .collect();
        rows.insert(mu, row);
    }
    let rows = Arc::new(rows);
    cache.lock().unwrap().insert(n, rows.clone());
    rows
}

/// Power-sum expansion of a symmetric `M` (or `F`) expansion.
///
/// Solves the dominance-triangular system `p_mu = sum R[mu][lambda] m_lambda`
/// degree by degree, from the lexicographically smallest partition upward.
pub fn m_to_p(x: &QSymElement) -> Result<SymElement> {
    let msym = to_monomial_sym(x)?;
    let mut out = SymElement::zero(SBasis::PowerSum);
    for n in x.degrees() {
        let rows = p_to_msym_matrix(n);
        let mut parts: Vec<Partition> = partitions(n).collect();
        // increasing lexicographic order: (1,...,1) first
        parts.reverse();
        let mut solved: Vec<(Partition, BigRational)> = Vec::new();
        for lambda in &parts {
            let mut rhs = msym.coefficient(lambda);
            for (mu, y) in &solved {
                if let Some(r) = rows[mu].get(lambda) {
                    rhs -= y * BigRational::from_integer(r.clone());
                }
            }
            let diag = rows[lambda]
                .get(lambda)
                .cloned()
                .expect("p to m transition matrix has a nonzero diagonal");
            let y = rhs / BigRational::from_integer(diag);
            if !y.is_zero() {
                solved.push((lambda.clone(), y));
            }
        }
        for (mu, y) in solved {
            out.add_term(mu, y);
        }
    }
    debug_assert!(!out.is_integral() || p_to_m(&out).ok().as_ref() == Some(&x.to_monomial()));
    Ok(out)
}

/// Exact conversion of a (small) coefficient to `i128`, if it fits.
pub fn to_i128(x: &BigInt) -> Option<i128> {
    x.to_i128()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn comp(p: &[usize]) -> Composition {
        Composition::new(p.to_vec()).unwrap()
    }

    fn part(p: &[usize]) -> Partition {
        Partition::new(p.to_vec()).unwrap()
    }

    fn m(terms: &[(&[usize], i64)]) -> QSymElement {
        QSymElement::from_terms(
            QBasis::Monomial,
            terms.iter().map(|(k, c)| (comp(k), BigInt::from(*c))),
        )
    }

    fn f(terms: &[(&[usize], i64)]) -> QSymElement {
        QSymElement::from_terms(
            QBasis::Fundamental,
            terms.iter().map(|(k, c)| (comp(k), BigInt::from(*c))),
        )
    }

    fn p(terms: &[(&[usize], i64)]) -> SymElement {
        SymElement::from_int_terms(SBasis::PowerSum, terms.iter().map(|(k, c)| (part(k), *c)))
    }

    /// Evaluates an M expansion as a polynomial in `vars` variables, keyed by
    /// exponent vectors. Independent of the quasi-shuffle code.
    fn expand_m(x: &QSymElement, vars: usize) -> BTreeMap<Vec<usize>, BigInt> {
        let mut out: BTreeMap<Vec<usize>, BigInt> = BTreeMap::new();
        for (alpha, c) in x.terms() {
            let k = alpha.len();
            for mask in 0u32..(1 << vars) {
                if mask.count_ones() as usize != k {
                    continue;
                }
                let mut exps = vec![0; vars];
                let mut idx = 0;
                for (v, e) in exps.iter_mut().enumerate() {
                    if mask >> v & 1 == 1 {
                        *e = alpha.parts()[idx];
                        idx += 1;
                    }
                }
                *out.entry(exps).or_insert_with(BigInt::zero) += c;
            }
        }
        out.retain(|_, v| !v.is_zero());
        out
    }

    fn poly_mul(
        a: &BTreeMap<Vec<usize>, BigInt>,
        b: &BTreeMap<Vec<usize>, BigInt>,
    ) -> BTreeMap<Vec<usize>, BigInt> {
        let mut out: BTreeMap<Vec<usize>, BigInt> = BTreeMap::new();
        for (ea, ca) in a {
            for (eb, cb) in b {
                let e: Vec<usize> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                *out.entry(e).or_insert_with(BigInt::zero) += ca * cb;
            }
        }
        out.retain(|_, v| !v.is_zero());
        out
    }

    #[test]
    fn f_to_m_examples() {
        assert_eq!(f_to_m(&f(&[(&[1, 1], 1)])), m(&[(&[1, 1], 1)]));
        assert_eq!(f_to_m(&f(&[(&[2], 1)])), m(&[(&[2], 1), (&[1, 1], 1)]));
        assert_eq!(f_to_m(&f(&[(&[1], 1)])), m(&[(&[1], 1)]));
    }

    #[test]
    fn m_to_f_inverts_f_to_m() {
        for n in 0..=6 {
            for s in crate::combinatorics::descent_subsets(n) {
                let x = QSymElement::fundamental(&s);
                assert_eq!(m_to_f(&f_to_m(&x)), x);
            }
        }
    }

    #[test]
    fn m_product_examples_against_polynomial_oracle() {
        let cases = [
            (m(&[(&[1], 1)]), m(&[(&[1], 1)])),
            (m(&[(&[2], 1)]), m(&[(&[1], 1)])),
        ];
        let expected = [
            m(&[(&[1, 1], 2), (&[2], 1)]),
            m(&[(&[2, 1], 1), (&[1, 2], 1), (&[3], 1)]),
        ];
        for ((a, b), want) in cases.iter().zip(&expected) {
            let got = m_product(a, b);
            assert_eq!(&got, want);
            assert_eq!(expand_m(&got, 3), poly_mul(&expand_m(a, 3), &expand_m(b, 3)));
        }
        let one = QSymElement::one(QBasis::Monomial);
        assert_eq!(m_product(&one, &m(&[(&[1], 1)])), m(&[(&[1], 1)]));
    }

    #[test]
    fn m_product_matches_polynomials_exhaustively() {
        // enough variables that no monomial of degree <= 5 is truncated
        for da in 1..=3 {
            for db in 1..=(5 - da).min(3) {
                for a in crate::combinatorics::compositions(da) {
                    for b in crate::combinatorics::compositions(db) {
                        let x = QSymElement::basis_element(QBasis::Monomial, a.clone());
                        let y = QSymElement::basis_element(QBasis::Monomial, b.clone());
                        let vars = da + db;
                        assert_eq!(
                            expand_m(&m_product(&x, &y), vars),
                            poly_mul(&expand_m(&x, vars), &expand_m(&y, vars))
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn m_product_is_commutative_and_associative() {
        let mut basis = Vec::new();
        for d in 0..=3 {
            for c in crate::combinatorics::compositions(d) {
                basis.push(QSymElement::basis_element(QBasis::Monomial, c));
            }
        }
        for a in &basis {
            for b in &basis {
                assert_eq!(m_product(a, b), m_product(b, a));
                for c in &basis {
                    let total = a.degrees()[0] + b.degrees()[0] + c.degrees()[0];
                    if total <= 6 {
                        assert_eq!(
                            m_product(&m_product(a, b), c),
                            m_product(a, &m_product(b, c))
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn p_to_m_examples() {
        assert_eq!(p_to_m(&p(&[(&[2], 1)])).unwrap(), m(&[(&[2], 1)]));
        assert_eq!(p_to_m(&p(&[(&[1, 1], 1)])).unwrap(), m(&[(&[2], 1), (&[1, 1], 2)]));
        assert_eq!(p_to_m(&p(&[(&[3], 1)])).unwrap(), m(&[(&[3], 1)]));
        let half = SymElement::from_terms(
            SBasis::PowerSum,
            [(part(&[2]), BigRational::new(1.into(), 2.into()))],
        );
        assert!(matches!(p_to_m(&half), Err(Error::Precision(_))));
    }

    #[test]
    fn symmetry_examples() {
        assert!(is_symmetric(&m(&[(&[2], 1), (&[1, 1], 2)])));
        assert!(is_symmetric(&m(&[(&[2, 1], 1), (&[1, 2], 1)])));
        assert!(!is_symmetric(&m(&[(&[2, 1], 1)])));
        assert!(!is_symmetric(&m(&[(&[2, 1], 1), (&[1, 2], 2)])));
        assert!(is_symmetric(&f(&[(&[2], 2)])));
    }

    #[test]
    fn m_to_p_examples() {
        assert_eq!(m_to_p(&m(&[(&[2], 1), (&[1, 1], 2)])).unwrap(), p(&[(&[1, 1], 1)]));
        assert_eq!(m_to_p(&m(&[(&[2], 1)])).unwrap(), p(&[(&[2], 1)]));
        assert_eq!(
            m_to_p(&m(&[(&[2], 2), (&[1, 1], 2)])).unwrap(),
            p(&[(&[1, 1], 1), (&[2], 1)])
        );
        assert!(matches!(m_to_p(&m(&[(&[2, 1], 1)])), Err(Error::Domain(_))));
        // m_(1,1) = (p_11 - p_2)/2
        let e2 = m_to_p(&m(&[(&[1, 1], 1)])).unwrap();
        assert_eq!(e2.coefficient(&part(&[2])), BigRational::new((-1).into(), 2.into()));
    }

    #[test]
    fn p_m_round_trips() {
        for n in 0..=8 {
            for lambda in partitions(n) {
                let x = SymElement::basis_element(SBasis::PowerSum, lambda.clone());
                let mx = p_to_m(&x).unwrap();
                assert!(is_symmetric(&mx));
                assert_eq!(m_to_p(&mx).unwrap(), x, "degree {n} partition {lambda}");
            }
        }
        // symmetric monomials of degree 5 round-trip through rationals
        for lambda in partitions(5) {
            let mut x = QSymElement::zero(QBasis::Monomial);
            for alpha in crate::combinatorics::compositions(5) {
                if alpha.sorted() == lambda {
                    x.add_term(alpha, BigInt::one());
                }
            }
            let y = m_to_p(&x).unwrap();
            let mut back = QSymElement::zero(QBasis::Monomial);
            let mut common = BigInt::one();
            for v in y.terms().values() {
                common = num_integer::Integer::lcm(&common, v.denom());
            }
            for (mu, v) in y.terms() {
                let scaled = (v * BigRational::from_integer(common.clone())).to_integer();
                for (alpha, c) in power_sum_in_m(mu).terms() {
                    back.add_term(alpha.clone(), &scaled * c);
                }
            }
            assert_eq!(back, x.scale(&common));
        }
    }

    /// Brute-force value of `F_I` at `m` ones from its defining sum.
    fn fundamental_brute(subset: &DescentSubset, m: usize) -> u64 {
        let n = subset.n();
        if n == 0 {
            return 1;
        }
        let mut count = 0;
        let mut idx = vec![1usize; n];
        if m == 0 {
            return 0;
        }
        loop {
            let ok = (1..n).all(|j| {
                let (a, b) = (idx[j - 1], idx[j]);
                if subset.contains(j) {
                    a < b
                } else {
                    a <= b
                }
            });
            if ok {
                count += 1;
            }
            let mut pos = n;
            loop {
                if pos == 0 {
                    return count;
                }
                pos -= 1;
                if idx[pos] < m {
                    idx[pos] += 1;
                    for later in idx.iter_mut().skip(pos + 1) {
                        *later = 1;
                    }
                    break;
                }
            }
        }
    }

    #[test]
    fn principal_specialization_examples() {
        assert_eq!(f(&[(&[1, 1], 1)]).principal_specialization(3), BigInt::from(3));
        assert_eq!(p(&[(&[1, 1], 1)]).principal_specialization(2), BigRational::from_integer(4.into()));
        assert_eq!(f(&[(&[2], 1)]).principal_specialization(2), BigInt::from(3));
    }

    #[test]
    fn principal_specialization_matches_defining_sum() {
        for n in 0..=5 {
            for s in crate::combinatorics::descent_subsets(n) {
                let x = QSymElement::fundamental(&s);
                for mm in 0..=3 {
                    let want = BigInt::from(fundamental_brute(&s, mm));
                    assert_eq!(x.principal_specialization(mm), want, "{s:?} m={mm}");
                    assert_eq!(f_to_m(&x).principal_specialization(mm), want);
                }
            }
        }
    }

    #[test]
    fn coefficient_lookup() {
        let x = p(&[(&[1, 1], 1), (&[3], 2)]);
        assert_eq!(x.coefficient(&part(&[3])), BigRational::from_integer(2.into()));
        assert_eq!(m(&[(&[2], 1)]).coefficient(&comp(&[1, 1])), BigInt::zero());
        assert_eq!(f(&[(&[2], 2)]).coefficient(&comp(&[2])), BigInt::from(2));
    }

    #[test]
    fn json_round_trip_and_text() {
        let x = p(&[(&[1, 1], 1), (&[2], -3)]);
        assert_eq!(SymElement::from_json(&x.to_json()).unwrap(), x);
        assert_eq!(x.to_string(), "p[1,1]: 1, p[2]: -3");
        let y = f(&[(&[2], 2), (&[1, 1], 1)]);
        assert_eq!(QSymElement::from_json(&y.to_json()).unwrap(), y);
        let bad = serde_json::json!({"basis": "p", "terms": []});
        assert!(QSymElement::from_json(&bad).is_err());
    }
}
