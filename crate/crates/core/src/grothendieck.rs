//! Classes of varieties and the point-counting measure.
//!
//! `ClassExpr` is an element of the free commutative ring on a small
//! vocabulary of atoms (point, affine and projective spaces, the torus,
//! curves given by an L-polynomial, and custom point-count sequences).
//! Nothing is quotiented: scissor-type relations such as
//! `P(1) = A(1) + pt` are *checked* by the measure, never imposed on
//! the representation.
//!
//! A `CountingMeasure` with parameter `q` sends a class to the sequence
//! of its point counts `N_m` over the degree-`m` extensions. The counts
//! are the ghost coordinates of the zeta function: addition of classes
//! adds counts, products multiply them, and
//! `zeta_sym = exp(sum N_m t^m / m)` is the Witt vector they determine.
//! The wedge-oriented zeta is recovered from the opposite identity
//! `zeta_wedge(t) = 1 / zeta_sym(-t)`.
//!
//! Effectivity is a user-managed flag, not something the engine infers:
//! sums and products of effective classes stay effective, negation
//! clears the flag, and `mark_effective` overrides it. The flag gates
//! the integrality check on closed-point counts.

use crate::number::Rat;
use crate::poly::Poly;
use crate::witt::{unghost, GhostSequence, WittVector};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassError {
    #[error("invalid L-polynomial: {reason}")]
    BadLPolynomial { reason: String },
    #[error("effective class has closed-point count {value} at degree {degree}, which is not a nonnegative integer")]
    NonIntegralClosedPoints { degree: usize, value: Rat },
    #[error("custom class lists {available} point counts but the computation needs {needed}")]
    CustomCountsExhausted { needed: usize, available: usize },
    #[error("counting measure needs q >= 2, got {q}")]
    InvalidMeasure { q: u64 },
    #[error("computation needs order {needed} but the measure is truncated at {available}")]
    InsufficientOrder { needed: usize, available: usize },
}

/// Generators of the class ring.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum Atom {
    /// A single rational point.
    Point,
    /// Affine space of the given dimension.
    Affine(u32),
    /// Projective space of the given dimension.
    Projective(u32),
    /// The multiplicative group, `A(1)` minus a point.
    Torus,
    /// A smooth projective curve presented by the coefficients of its
    /// L-polynomial, constant term first.
    CurveL { genus: u32, l_coeffs: Vec<BigInt> },
    /// Explicit point counts `N_1, N_2, ...`.
    Custom { counts: Vec<Rat> },
}

impl Atom {
    /// Validates an L-polynomial: degree exactly `2 * genus` and
    /// constant term 1.
    pub fn curve(genus: u32, l_coeffs: Vec<BigInt>) -> Result<Atom, ClassError> {
        let bad = |reason: String| ClassError::BadLPolynomial { reason };
        let expected = 2 * genus as usize + 1;
        if l_coeffs.len() != expected {
            return Err(bad(format!(
                "genus {genus} needs {expected} coefficients, got {}",
                l_coeffs.len()
            )));
        }
        if !l_coeffs[0].is_one() {
            return Err(bad(format!("constant term must be 1, got {}", l_coeffs[0])));
        }
        if genus > 0 && l_coeffs[expected - 1].is_zero() {
            return Err(bad(format!(
                "leading coefficient must be nonzero for genus {genus}"
            )));
        }
        Ok(Atom::CurveL { genus, l_coeffs })
    }

    pub fn custom(counts: Vec<Rat>) -> Atom {
        Atom::Custom { counts }
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Atom::Point => write!(f, "pt"),
            Atom::Affine(n) => write!(f, "A({n})"),
            Atom::Projective(n) => write!(f, "P({n})"),
            Atom::Torus => write!(f, "Gm"),
            Atom::CurveL { genus, l_coeffs } => {
                write!(f, "curve(g={genus}; L=[")?;
                for (i, c) in l_coeffs.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{c}")?;
                }
                write!(f, "])")
            }
            Atom::Custom { counts } => {
                write!(f, "custom(N=[")?;
                for (i, c) in counts.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{c}")?;
                }
                write!(f, "])")
            }
        }
    }
}

/// An integer combination of products of atoms, plus an effectivity flag.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassExpr {
    terms: BTreeMap<Vec<Atom>, BigInt>,
    effective: bool,
}

/// Sorts a product of atoms into canonical form, dropping `pt` factors
/// (the multiplicative identity has the empty monomial).
fn normalize_monomial(mut atoms: Vec<Atom>) -> Vec<Atom> {
    atoms.retain(|a| *a != Atom::Point);
    atoms.sort();
    atoms
}

impl ClassExpr {
    pub fn zero() -> ClassExpr {
        ClassExpr {
            terms: BTreeMap::new(),
            effective: true,
        }
    }

    pub fn atom(a: Atom) -> ClassExpr {
        let mut terms = BTreeMap::new();
        terms.insert(normalize_monomial(vec![a]), BigInt::one());
        ClassExpr {
            terms,
            effective: true,
        }
    }

    pub fn point() -> ClassExpr {
        ClassExpr::atom(Atom::Point)
    }

    /// The constant class `n * pt`.
    pub fn integer(n: BigInt) -> ClassExpr {
        let effective = !n.is_negative();
        let mut terms = BTreeMap::new();
        if !n.is_zero() {
            terms.insert(Vec::new(), n);
        }
        ClassExpr { terms, effective }
    }

    pub fn terms(&self) -> &BTreeMap<Vec<Atom>, BigInt> {
        &self.terms
    }

    pub fn is_effective(&self) -> bool {
        self.effective
    }

    /// Overrides the effectivity flag; the caller asserts (or retracts)
    /// that the class is the class of an actual variety.
    pub fn mark_effective(&self, effective: bool) -> ClassExpr {
        ClassExpr {
            terms: self.terms.clone(),
            effective,
        }
    }

    fn add_term(terms: &mut BTreeMap<Vec<Atom>, BigInt>, key: Vec<Atom>, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let now_zero = {
            let entry = terms.entry(key.clone()).or_insert_with(BigInt::zero);
            *entry += c;
            entry.is_zero()
        };
        if now_zero {
            terms.remove(&key);
        }
    }

    pub fn add(&self, other: &ClassExpr) -> ClassExpr {
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            Self::add_term(&mut terms, m.clone(), c.clone());
        }
        ClassExpr {
            terms,
            effective: self.effective && other.effective,
        }
    }

    pub fn neg(&self) -> ClassExpr {
        ClassExpr {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
            effective: false,
        }
    }

    pub fn sub(&self, other: &ClassExpr) -> ClassExpr {
        self.add(&other.neg())
    }

    /// Shift of the class: negation, so the zeta series of the result
    /// is the multiplicative inverse of the zeta series of the input.
    /// Applying it twice restores the original terms, though not the
    /// effectivity flag, since negation always drops the flag.
    pub fn suspend(&self) -> ClassExpr {
        self.neg()
    }

    pub fn mul(&self, other: &ClassExpr) -> ClassExpr {
        let mut terms = BTreeMap::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let mut monomial = m1.clone();
                monomial.extend_from_slice(m2);
                Self::add_term(&mut terms, normalize_monomial(monomial), c1 * c2);
            }
        }
        ClassExpr {
            terms,
            effective: self.effective && other.effective,
        }
    }

    pub fn scale(&self, n: &BigInt) -> ClassExpr {
        self.mul(&ClassExpr::integer(n.clone()))
    }
}

impl fmt::Display for ClassExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (monomial, c) in &self.terms {
            let magnitude = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mono = if monomial.is_empty() {
                "pt".to_owned()
            } else {
                monomial
                    .iter()
                    .map(Atom::to_string)
                    .collect::<Vec<_>>()
                    .join("*")
            };
            if magnitude.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{magnitude}*{mono}")?;
            }
        }
        Ok(())
    }
}

/// Outcome of one consistency check inside a triangle report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub pass: bool,
    /// Index of the first mismatch: a ghost index or a `t`-power.
    pub first_failure: Option<usize>,
}

impl Check {
    fn passing() -> Check {
        Check {
            pass: true,
            first_failure: None,
        }
    }

    fn failing_at(n: usize) -> Check {
        Check {
            pass: false,
            first_failure: Some(n),
        }
    }
}

/// Three independent views of the relation `Y = X + Z`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TriangleReport {
    /// Point counts add: `N_m(Y) = N_m(X) + N_m(Z)`.
    pub ghost: Check,
    /// Zeta functions multiply: `zeta_Y = zeta_X * zeta_Z` as series.
    pub series: Check,
    /// Symmetric-power counts convolve:
    /// `#Sym^n Y = sum_i #Sym^i X * #Sym^(n-i) Z`.
    pub kunneth: Check,
}

impl TriangleReport {
    pub fn pass(&self) -> bool {
        self.ghost.pass && self.series.pass && self.kunneth.pass
    }
}

/// The measure sending a class to its point counts over `F_(q^m)`.
///
/// `q >= 2` is required; the measure is a ring homomorphism to the big
/// Witt ring for any such `q`, prime power or not.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CountingMeasure {
    q: u64,
    order: usize,
}

impl CountingMeasure {
    pub fn new(q: u64, order: usize) -> Result<Self, ClassError> {
        if q < 2 {
            return Err(ClassError::InvalidMeasure { q });
        }
        Ok(CountingMeasure { q, order })
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Point counts `N_1 ..= N_order` of a single atom.
    pub fn atom_counts(&self, atom: &Atom) -> Result<Vec<Rat>, ClassError> {
        let q = BigInt::from(self.q);
        let q_pow = |e: usize| -> BigInt { num_traits::pow::pow(q.clone(), e) };
        Ok(match atom {
            Atom::Point => vec![Rat::one(); self.order],
            Atom::Affine(n) => (1..=self.order)
                .map(|m| Rat::from_integer(q_pow(*n as usize * m)))
                .collect(),
            Atom::Projective(n) => (1..=self.order)
                .map(|m| {
                    let mut acc = BigInt::zero();
                    for i in 0..=*n as usize {
                        acc += q_pow(i * m);
                    }
                    Rat::from_integer(acc)
                })
                .collect(),
            Atom::Torus => (1..=self.order)
                .map(|m| Rat::from_integer(q_pow(m) - 1))
                .collect(),
            Atom::CurveL { l_coeffs, .. } => {
                let traces = frobenius_traces(l_coeffs, self.order);
                (1..=self.order)
                    .map(|m| Rat::from_integer(q_pow(m) + 1 - &traces[m - 1]))
                    .collect()
            }
            Atom::Custom { counts } => {
                if counts.len() < self.order {
                    return Err(ClassError::CustomCountsExhausted {
                        needed: self.order,
                        available: counts.len(),
                    });
                }
                counts[..self.order].to_vec()
            }
        })
    }

    /// Point counts of a class: counts add over sums and multiply over
    /// products of classes.
    pub fn ghosts(&self, x: &ClassExpr) -> Result<GhostSequence, ClassError> {
        let mut totals = vec![Rat::zero(); self.order];
        for (monomial, coeff) in x.terms() {
            let mut term = vec![Rat::from_integer(coeff.clone()); self.order];
            for atom in monomial {
                let counts = self.atom_counts(atom)?;
                for (t, c) in term.iter_mut().zip(&counts) {
                    *t *= c;
                }
            }
            for (total, t) in totals.iter_mut().zip(term) {
                *total += t;
            }
        }
        Ok(GhostSequence::from_values(totals))
    }

    /// The zeta function in symmetric-power orientation:
    /// `exp(sum N_m t^m / m)`, whose `t^n` coefficient counts points of
    /// the n-th symmetric power.
    pub fn zeta_sym(&self, x: &ClassExpr) -> Result<WittVector, ClassError> {
        Ok(unghost(&self.ghosts(x)?))
    }

    /// The zeta function in wedge orientation, via the opposite
    /// identity `zeta_wedge(t) = 1 / zeta_sym(-t)`.
    pub fn zeta_wedge(&self, x: &ClassExpr) -> Result<WittVector, ClassError> {
        Ok(self.zeta_sym(x)?.scale_t(&-Rat::one()).inverse())
    }

    /// Number of points of the n-th symmetric power.
    pub fn sym_power_count(&self, x: &ClassExpr, n: usize) -> Result<Rat, ClassError> {
        if n > self.order {
            return Err(ClassError::InsufficientOrder {
                needed: n,
                available: self.order,
            });
        }
        Ok(self.zeta_sym(x)?.coeff(n).clone())
    }

    /// Closed-point counts `M_1 ..= M_max_degree` by Mobius inversion:
    /// `M_d = (1/d) sum_(e | d) mu(e) N_(d/e)`.
    ///
    /// For a class marked effective every `M_d` must be a nonnegative
    /// integer; a violation is reported as `NonIntegralClosedPoints`.
    pub fn closed_point_counts(
        &self,
        x: &ClassExpr,
        max_degree: usize,
    ) -> Result<Vec<Rat>, ClassError> {
        if max_degree > self.order {
            return Err(ClassError::InsufficientOrder {
                needed: max_degree,
                available: self.order,
            });
        }
        let counts = self.ghosts(x)?;
        let mut out = Vec::with_capacity(max_degree);
        for d in 1..=max_degree {
            let mut acc = Rat::zero();
            for e in 1..=d {
                if d % e != 0 {
                    continue;
                }
                let mu = mobius(e as u64);
                if mu != 0 {
                    acc += Rat::from_integer(mu.into()) * counts.value(d / e);
                }
            }
            acc /= Rat::from_integer(d.into());
            if x.is_effective() && (!acc.is_integer() || acc.is_negative()) {
                return Err(ClassError::NonIntegralClosedPoints {
                    degree: d,
                    value: acc,
                });
            }
            out.push(acc);
        }
        Ok(out)
    }

    /// Checks the relation `Y = X + Z` three ways: additivity of point
    /// counts, multiplicativity of zeta series, and the symmetric-power
    /// convolution identity evaluated by a direct coefficient loop.
    pub fn triangle_check(
        &self,
        x: &ClassExpr,
        y: &ClassExpr,
        z: &ClassExpr,
    ) -> Result<TriangleReport, ClassError> {
        let gx = self.ghosts(x)?;
        let gy = self.ghosts(y)?;
        let gz = self.ghosts(z)?;

        let mut ghost = Check::passing();
        for m in 1..=self.order {
            if gy.value(m) != &(gx.value(m) + gz.value(m)) {
                ghost = Check::failing_at(m);
                break;
            }
        }

        let zx = unghost(&gx);
        let zy = unghost(&gy);
        let zz = unghost(&gz);

        let product = &zx * &zz;
        let mut series = Check::passing();
        for n in 0..=self.order {
            if zy.coeff(n) != product.coeff(n) {
                series = Check::failing_at(n);
                break;
            }
        }

        let mut kunneth = Check::passing();
        'outer: for n in 0..=self.order {
            let mut acc = Rat::zero();
            for i in 0..=n {
                acc += zx.coeff(i) * zz.coeff(n - i);
            }
            if &acc != zy.coeff(n) {
                kunneth = Check::failing_at(n);
                break 'outer;
            }
        }

        Ok(TriangleReport {
            ghost,
            series,
            kunneth,
        })
    }
}

/// Power sums of the inverse roots of an L-polynomial, read off the
/// logarithmic derivative: `-t L'(t) / L(t) = sum_m s_m t^m`.
/// No root extraction takes place; everything stays rational.
fn frobenius_traces(l_coeffs: &[BigInt], order: usize) -> Vec<BigInt> {
    let l = Poly::from_bigints(l_coeffs);
    let minus_t_l_prime = {
        let mut coeffs = vec![Rat::zero()];
        for (k, c) in l_coeffs.iter().enumerate().skip(1) {
            coeffs.push(Rat::from_integer(-(c * BigInt::from(k))));
        }
        Poly::from_coeffs(coeffs)
    };
    let series = &minus_t_l_prime.to_series(order)
        * &l.to_series(order)
            .inverse()
            .expect("L(0) = 1 was validated at construction");
    (1..=order)
        .map(|m| {
            let c = series.coeff(m);
            debug_assert!(c.is_integer());
            c.to_integer()
        })
        .collect()
}

/// The Mobius function by trial factorization.
pub fn mobius(n: u64) -> i64 {
    assert!(n >= 1);
    let mut n = n;
    let mut factors = 0;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            factors += 1;
        }
        p += 1;
    }
    if n > 1 {
        factors += 1;
    }
    if factors % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Indices `i` where an alleged L-polynomial breaks the necessary bound
/// `a_i^2 <= C(2g, i)^2 q^i` on its coefficients. A nonempty result
/// means the Frobenius eigenvalues cannot all have absolute value
/// `sqrt(q)`; the check is exact and one-sided (an empty result proves
/// nothing).
pub fn weil_bound_violations(genus: u32, l_coeffs: &[BigInt], q: u64) -> Vec<usize> {
    let two_g = 2 * genus as usize;
    let mut out = Vec::new();
    for (i, a) in l_coeffs.iter().enumerate() {
        if i > two_g {
            out.push(i);
            continue;
        }
        let c = binomial(two_g, i);
        let bound = &c * &c * num_traits::pow::pow(BigInt::from(q), i);
        if a * a > bound {
            out.push(i);
        }
    }
    out
}

fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let mut acc = BigInt::one();
    for i in 0..k.min(n - k) {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::number::{rat_frac, rat_i64};
    use crate::witt::witt_add;

    fn measure(q: u64, order: usize) -> CountingMeasure {
        CountingMeasure::new(q, order).unwrap()
    }

    fn ints(values: &[i64]) -> Vec<Rat> {
        values.iter().map(|&v| rat_i64(v)).collect()
    }

    #[test]
    fn atom_counts_match_closed_forms() {
        let m = measure(2, 4);
        assert_eq!(m.atom_counts(&Atom::Point).unwrap(), ints(&[1, 1, 1, 1]));
        assert_eq!(
            m.atom_counts(&Atom::Affine(1)).unwrap(),
            ints(&[2, 4, 8, 16])
        );
        assert_eq!(
            m.atom_counts(&Atom::Affine(2)).unwrap(),
            ints(&[4, 16, 64, 256])
        );
        assert_eq!(
            m.atom_counts(&Atom::Projective(1)).unwrap(),
            ints(&[3, 5, 9, 17])
        );
        assert_eq!(
            m.atom_counts(&Atom::Projective(2)).unwrap(),
            ints(&[7, 21, 73, 273])
        );
        assert_eq!(m.atom_counts(&Atom::Torus).unwrap(), ints(&[1, 3, 7, 15]));
    }

    #[test]
    fn curve_counts_from_l_polynomial() {
        // Genus 1 over F_2 with L = 1 + 2t^2: no trace in degree 1.
        let curve = Atom::curve(1, vec![1.into(), 0.into(), 2.into()]).unwrap();
        let m = measure(2, 3);
        assert_eq!(m.atom_counts(&curve).unwrap(), ints(&[3, 9, 9]));

        // Genus 1 over F_5 with L = 1 - 2t + 5t^2: N_1 = 5 + 1 - 2 = 4.
        let curve = Atom::curve(1, vec![1.into(), (-2).into(), 5.into()]).unwrap();
        let m = measure(5, 2);
        assert_eq!(m.atom_counts(&curve).unwrap(), ints(&[4, 32]));
    }

    #[test]
    fn curve_validation() {
        assert!(matches!(
            Atom::curve(1, vec![1.into(), 2.into()]),
            Err(ClassError::BadLPolynomial { .. })
        ));
        assert!(matches!(
            Atom::curve(1, vec![2.into(), 0.into(), 2.into()]),
            Err(ClassError::BadLPolynomial { .. })
        ));
        assert!(matches!(
            Atom::curve(1, vec![1.into(), 2.into(), 0.into()]),
            Err(ClassError::BadLPolynomial { .. })
        ));
        assert!(Atom::curve(0, vec![1.into()]).is_ok());
    }

    #[test]
    fn class_ring_normalizes_monomials() {
        let a = ClassExpr::atom(Atom::Affine(1));
        let gm = ClassExpr::atom(Atom::Torus);
        let left = a.mul(&gm);
        let right = gm.mul(&a);
        assert_eq!(left, right);

        let with_point = a.mul(&ClassExpr::point());
        assert_eq!(with_point, a);

        assert_eq!(a.sub(&a), ClassExpr::zero().mark_effective(false));
    }

    #[test]
    fn effectivity_propagates_through_ring_ops() {
        let a = ClassExpr::atom(Atom::Affine(1));
        let p = ClassExpr::point();
        assert!(a.is_effective());
        assert!(a.add(&p).is_effective());
        assert!(a.mul(&p).is_effective());
        assert!(!a.sub(&p).is_effective());
        assert!(!a.neg().is_effective());
        assert!(a.sub(&p).mark_effective(true).is_effective());
        assert!(!ClassExpr::integer((-3).into()).is_effective());
    }

    #[test]
    fn display_is_canonical() {
        let a = ClassExpr::atom(Atom::Affine(2));
        let gm = ClassExpr::atom(Atom::Torus);
        let expr = a.mul(&gm).sub(&ClassExpr::integer(3.into()));
        assert_eq!(expr.to_string(), "-3*pt + A(2)*Gm");
        assert_eq!(ClassExpr::zero().to_string(), "0");
        assert_eq!(ClassExpr::point().to_string(), "pt");
    }

    #[test]
    fn zeta_of_projective_line_three_ways() {
        let m = measure(2, 4);
        let p1 = ClassExpr::atom(Atom::Projective(1));
        let zeta = m.zeta_sym(&p1).unwrap();
        assert_eq!(zeta.coeffs(), &ints(&[1, 3, 7, 15, 31])[..]);

        // Same series as the expansion of 1 / ((1-t)(1-2t)).
        let poly = Poly::from_integers(&[1, -3, 2]);
        let expansion = poly.to_series(4).inverse().unwrap();
        assert_eq!(zeta.as_series(), &expansion);
    }

    #[test]
    fn zeta_wedge_of_point_is_one_plus_t() {
        let m = measure(2, 5);
        let w = m.zeta_wedge(&ClassExpr::point()).unwrap();
        assert_eq!(w.coeffs(), &ints(&[1, 1, 0, 0, 0, 0])[..]);
    }

    #[test]
    fn suspension_inverts_zeta_and_squares_to_identity() {
        let m = measure(2, 5);

        let minus_pt = ClassExpr::point().suspend();
        let z = m.zeta_sym(&minus_pt).unwrap();
        assert_eq!(z.coeffs(), &ints(&[1, -1, 0, 0, 0, 0])[..]);

        let p1 = ClassExpr::atom(Atom::Projective(1));
        let z = m.zeta_sym(&p1.suspend()).unwrap();
        let expanded = Poly::from_integers(&[1, -3, 2]).to_series(5);
        assert_eq!(z.coeffs(), expanded.coeffs());
        assert_eq!(
            m.zeta_sym(&p1).unwrap().inverse(),
            m.zeta_sym(&p1.suspend()).unwrap()
        );

        let x = p1.sub(&ClassExpr::integer(BigInt::from(3)));
        assert_eq!(x.suspend().suspend().terms(), x.terms());
    }

    #[test]
    fn zeta_is_additive_and_multiplicative() {
        let m = measure(3, 6);
        let a = ClassExpr::atom(Atom::Affine(1));
        let gm = ClassExpr::atom(Atom::Torus);

        let sum_zeta = m.zeta_sym(&a.add(&gm)).unwrap();
        assert_eq!(
            sum_zeta,
            witt_add(&m.zeta_sym(&a).unwrap(), &m.zeta_sym(&gm).unwrap())
        );

        // ghosts of a product are componentwise products
        let prod = a.mul(&gm);
        let gp = m.ghosts(&prod).unwrap();
        let ga = m.ghosts(&a).unwrap();
        let gg = m.ghosts(&gm).unwrap();
        for i in 1..=6 {
            assert_eq!(gp.value(i), &(ga.value(i) * gg.value(i)));
        }
    }

    #[test]
    fn closed_points_of_affine_line_count_irreducible_polynomials() {
        let m = measure(2, 5);
        let a = ClassExpr::atom(Atom::Affine(1));
        // Monic irreducibles over F_2 by degree: 2, 1, 2, 3, 6.
        assert_eq!(
            m.closed_point_counts(&a, 5).unwrap(),
            ints(&[2, 1, 2, 3, 6])
        );
    }

    #[test]
    fn closed_points_of_torus() {
        let m = measure(2, 4);
        let gm = ClassExpr::atom(Atom::Torus);
        assert_eq!(m.closed_point_counts(&gm, 4).unwrap(), ints(&[1, 1, 2, 3]));
    }

    #[test]
    fn closed_points_reject_non_integral_effective_classes() {
        let m = measure(2, 2);
        let fake = ClassExpr::atom(Atom::custom(vec![rat_i64(2), rat_i64(3)]));
        let err = m.closed_point_counts(&fake, 2).unwrap_err();
        assert_eq!(
            err,
            ClassError::NonIntegralClosedPoints {
                degree: 2,
                value: rat_frac(1, 2)
            }
        );

        // The same class marked non-effective reports the rational value.
        let virtual_class = fake.mark_effective(false);
        assert_eq!(
            m.closed_point_counts(&virtual_class, 2).unwrap(),
            vec![rat_i64(2), rat_frac(1, 2)]
        );
    }

    #[test]
    fn closed_points_reject_negative_counts() {
        let m = measure(2, 2);
        let fake = ClassExpr::atom(Atom::custom(vec![rat_i64(2), rat_i64(0)]));
        assert!(matches!(
            m.closed_point_counts(&fake, 2),
            Err(ClassError::NonIntegralClosedPoints { degree: 2, .. })
        ));
    }

    #[test]
    fn order_limits_are_enforced() {
        let m = measure(2, 3);
        let a = ClassExpr::atom(Atom::Affine(1));
        assert!(matches!(
            m.closed_point_counts(&a, 4),
            Err(ClassError::InsufficientOrder {
                needed: 4,
                available: 3
            })
        ));
        assert!(matches!(
            m.sym_power_count(&a, 7),
            Err(ClassError::InsufficientOrder { .. })
        ));
        assert!(matches!(
            CountingMeasure::new(1, 4),
            Err(ClassError::InvalidMeasure { q: 1 })
        ));
    }

    #[test]
    fn custom_counts_must_cover_the_order() {
        let m = measure(2, 3);
        let short = ClassExpr::atom(Atom::custom(vec![rat_i64(1)]));
        assert!(matches!(
            m.ghosts(&short),
            Err(ClassError::CustomCountsExhausted {
                needed: 3,
                available: 1
            })
        ));
    }

    #[test]
    fn triangle_check_passes_for_scissor_decomposition() {
        let m = measure(2, 6);
        let report = m
            .triangle_check(
                &ClassExpr::atom(Atom::Affine(1)),
                &ClassExpr::atom(Atom::Projective(1)),
                &ClassExpr::point(),
            )
            .unwrap();
        assert!(report.pass());
    }

    #[test]
    fn triangle_check_locates_first_failure() {
        // P(1) = A(1) + Gm is wrong: counts differ by q^m - 2, which
        // vanishes at q = 2, m = 1 but not at m = 2.
        let m2 = measure(2, 4);
        let report = m2
            .triangle_check(
                &ClassExpr::atom(Atom::Affine(1)),
                &ClassExpr::atom(Atom::Projective(1)),
                &ClassExpr::atom(Atom::Torus),
            )
            .unwrap();
        assert!(!report.pass());
        assert_eq!(report.ghost.first_failure, Some(2));

        let m3 = measure(3, 4);
        let report = m3
            .triangle_check(
                &ClassExpr::atom(Atom::Affine(1)),
                &ClassExpr::atom(Atom::Projective(1)),
                &ClassExpr::atom(Atom::Torus),
            )
            .unwrap();
        assert!(!report.pass());
        assert_eq!(report.ghost.first_failure, Some(1));
        assert_eq!(report.series.first_failure, Some(1));
        assert_eq!(report.kunneth.first_failure, Some(1));
    }

    #[test]
    fn mobius_small_values() {
        let expected = [1, -1, -1, 0, -1, 1, -1, 0, 0, 1, -1, 0];
        for (i, &e) in expected.iter().enumerate() {
            assert_eq!(mobius(i as u64 + 1), e, "mu({})", i + 1);
        }
        assert_eq!(mobius(30), -1);
        assert_eq!(mobius(210), 1);
    }

    #[test]
    fn weil_bound_flags_impossible_traces() {
        // Genus 1, q = 2: |a_1| <= 2 * sqrt(2) means a_1^2 <= 8.
        assert!(weil_bound_violations(1, &[1.into(), 2.into(), 2.into()], 2).is_empty());
        assert_eq!(
            weil_bound_violations(1, &[1.into(), 5.into(), 2.into()], 2),
            vec![1]
        );
    }
}
