//! Symmetric functions in the power-sum and elementary bases.
//!
//! `SymExpr` is a rational linear combination of power-sum monomials
//! `p_mu`, truncated at a weight budget: terms heavier than the budget
//! are discarded by every operation, mirroring how truncated series
//! discard high-order coefficients. `ElemPoly` is an exact polynomial
//! in the elementary symmetric functions `e_1, e_2, ...` with monomials
//! `e_mu` indexed by partitions.
//!
//! The two universal polynomial families live here as well:
//! `ProductPoly(n)` expresses `e_n` of a product of two alphabets in the
//! elementaries of the factors (`e_n(xy) = P_n(e(x); f(y))`), and
//! `CompositionPoly(m, n)` expresses `e_m` of the degree-`n` exterior
//! alphabet (`e_m(wedge^n x) = P_{m,n}(e(x))`). Both are computed from
//! `p_k(xy) = p_k(x) p_k(y)` and plethysm and must have integer
//! coefficients; a non-integer coefficient is reported as
//! `IntegralityViolation` and means the construction itself is broken.
//!
//! Everything is capped at weight `MAX_WEIGHT`; beyond it the partition
//! index sets grow too fast for exact arithmetic to stay responsive.

use crate::number::Rat;
use crate::partitions::Partition;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};
use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};
use thiserror::Error;

/// Largest supported weight for any partition-indexed computation.
pub const MAX_WEIGHT: usize = 48;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SymFuncError {
    /// A computation would need partitions of weight beyond `MAX_WEIGHT`.
    #[error("weight {needed} exceeds the supported cap of {cap}")]
    WeightOverflow { needed: usize, cap: usize },
    /// A universal polynomial came out with a non-integer coefficient.
    /// This cannot happen for a correct construction; treat it as a bug.
    #[error("universal polynomial coefficient of {monomial} is {value}, not an integer")]
    IntegralityViolation { monomial: String, value: String },
}

fn check_weight(needed: usize) -> Result<(), SymFuncError> {
    if needed > MAX_WEIGHT {
        return Err(SymFuncError::WeightOverflow {
            needed,
            cap: MAX_WEIGHT,
        });
    }
    Ok(())
}

/// Adds `c` to the coefficient at `key`, dropping the entry if it
/// cancels to zero so that stored maps never hold zero terms.
fn add_term<K: Ord + Clone>(terms: &mut BTreeMap<K, Rat>, key: K, c: Rat) {
    if c.is_zero() {
        return;
    }
    let now_zero = {
        let entry = terms.entry(key.clone()).or_insert_with(Rat::zero);
        *entry += c;
        entry.is_zero()
    };
    if now_zero {
        terms.remove(&key);
    }
}

/// A symmetric function written in the power-sum basis, truncated at
/// a weight budget.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymExpr {
    budget: usize,
    terms: BTreeMap<Partition, Rat>,
}

impl SymExpr {
    pub fn zero(budget: usize) -> Result<Self, SymFuncError> {
        check_weight(budget)?;
        Ok(SymExpr {
            budget,
            terms: BTreeMap::new(),
        })
    }

    pub fn constant(c: Rat, budget: usize) -> Result<Self, SymFuncError> {
        let mut expr = SymExpr::zero(budget)?;
        if !c.is_zero() {
            expr.terms.insert(Partition::empty(), c);
        }
        Ok(expr)
    }

    /// The power sum `p_n`, `n >= 1`.
    pub fn power_sum(n: u32, budget: usize) -> Result<Self, SymFuncError> {
        assert!(n >= 1, "p_0 is not defined");
        check_weight(budget)?;
        check_weight(n as usize)?;
        let mut expr = SymExpr::zero(budget)?;
        if n as usize <= budget {
            expr.terms.insert(Partition::single(n), Rat::one());
        }
        Ok(expr)
    }

    /// The elementary symmetric function `e_n` in the power-sum basis,
    /// via the Newton recurrence `n e_n = sum_{i=1..n} (-1)^(i-1) p_i e_(n-i)`.
    pub fn elementary(n: u32, budget: usize) -> Result<Self, SymFuncError> {
        check_weight(n as usize)?;
        let mut e: Vec<SymExpr> = vec![SymExpr::constant(Rat::one(), budget)?];
        for m in 1..=n {
            let mut acc = SymExpr::zero(budget)?;
            for i in 1..=m {
                let p_i = SymExpr::power_sum(i, budget)?;
                let term = p_i.mul(&e[(m - i) as usize]);
                if i % 2 == 1 {
                    acc = acc.add(&term);
                } else {
                    acc = acc.sub(&term);
                }
            }
            e.push(acc.scale(&Rat::from_integer(m.into()).recip()));
        }
        Ok(e.pop().expect("vector holds e_0..e_n"))
    }

    pub fn budget(&self) -> usize {
        self.budget
    }

    pub fn terms(&self) -> &BTreeMap<Partition, Rat> {
        &self.terms
    }

    pub fn coeff(&self, mu: &Partition) -> Rat {
        self.terms.get(mu).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn add(&self, other: &SymExpr) -> SymExpr {
        let budget = self.budget.min(other.budget);
        let mut terms = BTreeMap::new();
        for (mu, c) in self.terms.iter().chain(other.terms.iter()) {
            if mu.weight() <= budget {
                add_term(&mut terms, mu.clone(), c.clone());
            }
        }
        SymExpr { budget, terms }
    }

    pub fn sub(&self, other: &SymExpr) -> SymExpr {
        self.add(&other.scale(&-Rat::one()))
    }

    pub fn scale(&self, c: &Rat) -> SymExpr {
        if c.is_zero() {
            return SymExpr {
                budget: self.budget,
                terms: BTreeMap::new(),
            };
        }
        SymExpr {
            budget: self.budget,
            terms: self
                .terms
                .iter()
                .map(|(mu, a)| (mu.clone(), a * c))
                .collect(),
        }
    }

    /// Product with graded truncation at the smaller budget.
    pub fn mul(&self, other: &SymExpr) -> SymExpr {
        let budget = self.budget.min(other.budget);
        let mut terms = BTreeMap::new();
        for (mu, a) in &self.terms {
            if mu.weight() > budget {
                continue;
            }
            for (nu, b) in &other.terms {
                if mu.weight() + nu.weight() > budget {
                    continue;
                }
                add_term(&mut terms, mu.concat(nu), a * b);
            }
        }
        SymExpr { budget, terms }
    }

    /// The plethysm substitution `p_j -> p_(kj)`, multiplying every
    /// weight by `k`. Fails if the scaled budget would exceed the cap.
    pub fn scale_parts(&self, k: u32) -> Result<SymExpr, SymFuncError> {
        assert!(k >= 1);
        let budget = self.budget * k as usize;
        check_weight(budget)?;
        Ok(SymExpr {
            budget,
            terms: self
                .terms
                .iter()
                .map(|(mu, c)| (mu.scaled(k), c.clone()))
                .collect(),
        })
    }

    /// Plethysm `self[g]`: substitutes `g` for the underlying alphabet,
    /// using `p_j[g] = g` with all parts scaled by `j`. The result is
    /// truncated at `out_budget`.
    pub fn plethysm(&self, g: &SymExpr, out_budget: usize) -> Result<SymExpr, SymFuncError> {
        check_weight(out_budget)?;
        let mut acc = SymExpr::zero(out_budget)?;
        for (mu, c) in &self.terms {
            let mut prod = SymExpr::constant(c.clone(), out_budget)?;
            for &j in mu.parts() {
                let factor = g.scale_parts(j)?;
                prod = prod.mul(&factor.with_budget(out_budget));
            }
            acc = acc.add(&prod);
        }
        Ok(acc)
    }

    fn with_budget(&self, budget: usize) -> SymExpr {
        let terms = self
            .terms
            .iter()
            .filter(|(mu, _)| mu.weight() <= budget)
            .map(|(mu, c)| (mu.clone(), c.clone()))
            .collect();
        SymExpr { budget, terms }
    }

    /// Evaluates by sending each `p_j` to `f(j)`.
    pub fn eval_power_sums(&self, f: impl Fn(u32) -> Rat) -> Rat {
        let mut acc = Rat::zero();
        for (mu, c) in &self.terms {
            let mut term = c.clone();
            for &j in mu.parts() {
                term *= f(j);
            }
            acc += term;
        }
        acc
    }

    /// Rewrites the expression exactly in the elementary basis.
    pub fn to_elementary(&self) -> ElemPoly {
        let max_part = self
            .terms
            .keys()
            .flat_map(|mu| mu.parts().iter().copied())
            .max()
            .unwrap_or(0);
        let table = p_to_e_table(max_part);
        let mut acc = ElemPoly::zero();
        for (mu, c) in &self.terms {
            let mut prod = ElemPoly::constant(c.clone());
            for &j in mu.parts() {
                prod = prod.mul(&table[j as usize]);
            }
            acc = acc.add(&prod);
        }
        acc
    }
}

/// An exact polynomial in the elementary symmetric functions; the
/// monomial `e_mu` stands for the product of `e_j` over the parts of `mu`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ElemPoly {
    terms: BTreeMap<Partition, Rat>,
}

impl ElemPoly {
    pub fn zero() -> Self {
        ElemPoly {
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: Rat) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Partition::empty(), c);
        }
        ElemPoly { terms }
    }

    /// The single elementary `e_n`; `e_0 = 1`.
    pub fn elementary(n: u32) -> Self {
        if n == 0 {
            return ElemPoly::constant(Rat::one());
        }
        let mut terms = BTreeMap::new();
        terms.insert(Partition::single(n), Rat::one());
        ElemPoly { terms }
    }

    pub fn terms(&self) -> &BTreeMap<Partition, Rat> {
        &self.terms
    }

    pub fn coeff(&self, mu: &Partition) -> Rat {
        self.terms.get(mu).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn add(&self, other: &ElemPoly) -> ElemPoly {
        let mut terms = self.terms.clone();
        for (mu, c) in &other.terms {
            add_term(&mut terms, mu.clone(), c.clone());
        }
        ElemPoly { terms }
    }

    pub fn scale(&self, c: &Rat) -> ElemPoly {
        if c.is_zero() {
            return ElemPoly::zero();
        }
        ElemPoly {
            terms: self
                .terms
                .iter()
                .map(|(mu, a)| (mu.clone(), a * c))
                .collect(),
        }
    }

    pub fn mul(&self, other: &ElemPoly) -> ElemPoly {
        let mut terms = BTreeMap::new();
        for (mu, a) in &self.terms {
            for (nu, b) in &other.terms {
                add_term(&mut terms, mu.concat(nu), a * b);
            }
        }
        ElemPoly { terms }
    }

    /// Evaluates by sending each `e_j` to `f(j)`.
    pub fn eval(&self, f: impl Fn(u32) -> Rat) -> Rat {
        let mut acc = Rat::zero();
        for (mu, c) in &self.terms {
            let mut term = c.clone();
            for &j in mu.parts() {
                term *= f(j);
            }
            acc += term;
        }
        acc
    }
}

/// `p_0 .. p_n` in the elementary basis via
/// `p_n = sum_{i=1..n-1} (-1)^(i-1) e_i p_(n-i) + (-1)^(n-1) n e_n`.
fn p_to_e_table(n: u32) -> Vec<ElemPoly> {
    let mut table: Vec<ElemPoly> = vec![ElemPoly::constant(Rat::one())];
    for m in 1..=n {
        let mut acc = ElemPoly::zero();
        for i in 1..m {
            let term = ElemPoly::elementary(i).mul(&table[(m - i) as usize]);
            let signed = if i % 2 == 1 {
                term
            } else {
                term.scale(&-Rat::one())
            };
            acc = acc.add(&signed);
        }
        let lead = ElemPoly::elementary(m).scale(&Rat::from_integer(m.into()));
        let lead = if m % 2 == 1 {
            lead
        } else {
            lead.scale(&-Rat::one())
        };
        table.push(acc.add(&lead));
    }
    table
}

fn format_monomial(out: &mut String, letter: char, mu: &Partition) {
    let mut parts: Vec<u32> = mu.parts().to_vec();
    parts.reverse();
    let mut i = 0;
    while i < parts.len() {
        let part = parts[i];
        let mut mult = 1;
        while i + mult < parts.len() && parts[i + mult] == part {
            mult += 1;
        }
        if !out.is_empty() {
            out.push('*');
        }
        out.push(letter);
        out.push_str(&part.to_string());
        if mult > 1 {
            out.push('^');
            out.push_str(&mult.to_string());
        }
        i += mult;
    }
}

fn write_integer_terms<K>(
    f: &mut fmt::Formatter<'_>,
    terms: &BTreeMap<K, BigInt>,
    monomial: impl Fn(&K) -> String,
) -> fmt::Result
where
    K: Ord,
{
    if terms.is_empty() {
        return write!(f, "0");
    }
    let mut first = true;
    for (key, c) in terms {
        let mono = monomial(key);
        let magnitude = c.abs();
        if first {
            if c.sign() == num_bigint::Sign::Minus {
                write!(f, "-")?;
            }
            first = false;
        } else if c.sign() == num_bigint::Sign::Minus {
            write!(f, " - ")?;
        } else {
            write!(f, " + ")?;
        }
        if mono.is_empty() {
            write!(f, "{magnitude}")?;
        } else if magnitude.is_one() {
            write!(f, "{mono}")?;
        } else {
            write!(f, "{magnitude}*{mono}")?;
        }
    }
    Ok(())
}

fn integer_terms<K: Ord + Clone>(
    terms: BTreeMap<K, Rat>,
    monomial: impl Fn(&K) -> String,
) -> Result<BTreeMap<K, BigInt>, SymFuncError> {
    let mut out = BTreeMap::new();
    for (key, c) in terms {
        if !c.is_integer() {
            return Err(SymFuncError::IntegralityViolation {
                monomial: monomial(&key),
                value: c.to_string(),
            });
        }
        out.insert(key, c.to_integer());
    }
    Ok(out)
}

/// The universal product polynomial `P_n`:
/// `e_n(x y) = P_n(e_1(x)..e_n(x); f_1(y)..f_n(y))`
/// where the `x` and `y` elementaries are written `e_j` and `f_j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductPoly {
    n: u32,
    terms: BTreeMap<(Partition, Partition), BigInt>,
}

impl ProductPoly {
    fn compute(n: u32) -> Result<Self, SymFuncError> {
        check_weight(n as usize)?;
        // e_n = sum c_mu p_mu and p_mu(xy) = p_mu(x) p_mu(y), so the
        // tensor expansion is diagonal in mu.
        let e_n = SymExpr::elementary(n, n as usize)?;
        let max_part = n;
        let table = p_to_e_table(max_part);
        let mut acc: BTreeMap<(Partition, Partition), Rat> = BTreeMap::new();
        for (mu, c) in e_n.terms() {
            let mut factor = ElemPoly::constant(Rat::one());
            for &j in mu.parts() {
                factor = factor.mul(&table[j as usize]);
            }
            for (alpha, a) in factor.terms() {
                for (beta, b) in factor.terms() {
                    add_term(&mut acc, (alpha.clone(), beta.clone()), c * a * b);
                }
            }
        }
        let terms = integer_terms(acc, |(alpha, beta)| Self::monomial(alpha, beta))?;
        Ok(ProductPoly { n, terms })
    }

    fn monomial(alpha: &Partition, beta: &Partition) -> String {
        let mut s = String::new();
        format_monomial(&mut s, 'e', alpha);
        format_monomial(&mut s, 'f', beta);
        s
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn terms(&self) -> &BTreeMap<(Partition, Partition), BigInt> {
        &self.terms
    }

    /// Evaluates at concrete elementaries: `e[i]` and `f[i]` hold
    /// `e_(i+1)` and `f_(i+1)`; entries beyond the slices are taken as 0.
    pub fn eval(&self, e: &[Rat], f: &[Rat]) -> Rat {
        let at = |vals: &[Rat], j: u32| -> Rat {
            vals.get((j - 1) as usize)
                .cloned()
                .unwrap_or_else(Rat::zero)
        };
        let mut acc = Rat::zero();
        for ((alpha, beta), c) in &self.terms {
            let mut term = Rat::from_integer(c.clone());
            for &j in alpha.parts() {
                term *= at(e, j);
            }
            for &j in beta.parts() {
                term *= at(f, j);
            }
            acc += term;
        }
        acc
    }
}

impl fmt::Display for ProductPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_integer_terms(f, &self.terms, |(alpha, beta)| Self::monomial(alpha, beta))
    }
}

impl Serialize for ProductPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(2))?;
        map.serialize_entry("n", &self.n)?;
        let terms: BTreeMap<String, String> = self
            .terms
            .iter()
            .map(|((a, b), c)| (Self::monomial(a, b), c.to_string()))
            .collect();
        map.serialize_entry("terms", &terms)?;
        map.end()
    }
}

/// The universal composition polynomial `P_(m,n)`:
/// `e_m(wedge^n x) = P_(m,n)(e_1(x)..e_(mn)(x))`, computed as the
/// plethysm `e_m[e_n]` rewritten in the elementary basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompositionPoly {
    m: u32,
    n: u32,
    terms: BTreeMap<Partition, BigInt>,
}

impl CompositionPoly {
    fn compute(m: u32, n: u32) -> Result<Self, SymFuncError> {
        let weight = (m as usize) * (n as usize);
        check_weight(weight)?;
        let e_m = SymExpr::elementary(m, m as usize)?;
        let e_n = SymExpr::elementary(n, n as usize)?;
        let composed = e_m.plethysm(&e_n, weight)?;
        let elem = composed.to_elementary();
        let terms = integer_terms(elem.terms.clone(), Self::monomial)?;
        Ok(CompositionPoly { m, n, terms })
    }

    fn monomial(mu: &Partition) -> String {
        let mut s = String::new();
        format_monomial(&mut s, 'e', mu);
        s
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn terms(&self) -> &BTreeMap<Partition, BigInt> {
        &self.terms
    }

    /// Evaluates at concrete elementaries, `e[i]` holding `e_(i+1)`.
    pub fn eval(&self, e: &[Rat]) -> Rat {
        let at = |j: u32| -> Rat { e.get((j - 1) as usize).cloned().unwrap_or_else(Rat::zero) };
        let mut acc = Rat::zero();
        for (mu, c) in &self.terms {
            let mut term = Rat::from_integer(c.clone());
            for &j in mu.parts() {
                term *= at(j);
            }
            acc += term;
        }
        acc
    }
}

impl fmt::Display for CompositionPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_integer_terms(f, &self.terms, Self::monomial)
    }
}

impl Serialize for CompositionPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(3))?;
        map.serialize_entry("m", &self.m)?;
        map.serialize_entry("n", &self.n)?;
        let terms: BTreeMap<String, String> = self
            .terms
            .iter()
            .map(|(mu, c)| (Self::monomial(mu), c.to_string()))
            .collect();
        map.serialize_entry("terms", &terms)?;
        map.end()
    }
}

type Cache<K, V> = OnceLock<Mutex<BTreeMap<K, Arc<V>>>>;

static PRODUCT_CACHE: Cache<u32, ProductPoly> = OnceLock::new();
static COMPOSITION_CACHE: Cache<(u32, u32), CompositionPoly> = OnceLock::new();

/// Returns `P_n` from the process-wide write-once table, computing it on
/// first use.
pub fn universal_product_poly(n: u32) -> Result<Arc<ProductPoly>, SymFuncError> {
    let cache = PRODUCT_CACHE.get_or_init(|| Mutex::new(BTreeMap::new()));
    let mut guard = cache.lock().expect("universal polynomial cache poisoned");
    if let Some(entry) = guard.get(&n) {
        return Ok(Arc::clone(entry));
    }
    let poly = Arc::new(ProductPoly::compute(n)?);
    guard.insert(n, Arc::clone(&poly));
    Ok(poly)
}

/// Returns `P_(m,n)` from the process-wide write-once table, computing
/// it on first use.
pub fn universal_composition_poly(m: u32, n: u32) -> Result<Arc<CompositionPoly>, SymFuncError> {
    let cache = COMPOSITION_CACHE.get_or_init(|| Mutex::new(BTreeMap::new()));
    let mut guard = cache.lock().expect("universal polynomial cache poisoned");
    if let Some(entry) = guard.get(&(m, n)) {
        return Ok(Arc::clone(entry));
    }
    let poly = Arc::new(CompositionPoly::compute(m, n)?);
    guard.insert((m, n), Arc::clone(&poly));
    Ok(poly)
}
