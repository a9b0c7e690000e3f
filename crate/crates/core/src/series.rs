//! Truncated power series over the exact rationals.
//!
//! A `TruncatedSeries` of order `N` stores the coefficients of
//! `c_0 + c_1 t + ... + c_N t^N`; everything past `t^N` is unknown, not
//! zero. Binary operations truncate to the smaller order of the two
//! operands, so a result is always correct to its stated order.
//!
//! `OneUnit` is the subtype with constant term exactly 1. One-units are
//! closed under multiplication and inversion and are the carrier of the
//! big Witt ring (see the `witt` module); `exp` lands in one-units and
//! `log` is their inverse.
//!
//! `exp` and `log` use the standard derivative recurrences
//! `n h_n = sum_{k=1..n} k g_k h_{n-k}` and its inversion, so each costs
//! O(N^2) exact rational operations. Time: O(N^2) multiplications for
//! every operation in this module.

use crate::number::{format_rat, parse_rat, Rat};
use num_traits::{One, Zero};
use serde::de::Error as DeError;
use serde::ser::SerializeStruct;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use thiserror::Error;

/// Errors from series operations whose domain is restricted by the
/// constant term.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum SeriesError {
    /// Inversion of a series with `c_0 = 0`.
    #[error("cannot invert a series with zero constant term")]
    ZeroConstantTerm,
    /// `exp` of a series whose constant term is not 0.
    #[error("exp requires zero constant term, found {0}")]
    NonzeroConstantTerm(Rat),
    /// Construction of a one-unit from a series whose constant term is not 1.
    #[error("one-unit requires constant term 1, found {0}")]
    ConstantTermNotOne(Rat),
}

/// A power series known exactly up to and including `t^order`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    coeffs: Vec<Rat>,
}

impl TruncatedSeries {
    /// Wraps an explicit coefficient vector `[c_0, ..., c_N]`.
    /// Panics on an empty vector: a series always has at least `c_0`.
    pub fn from_coeffs(coeffs: Vec<Rat>) -> Self {
        assert!(!coeffs.is_empty(), "series needs at least a constant term");
        TruncatedSeries { coeffs }
    }

    /// The zero series to the given order.
    pub fn zero(order: usize) -> Self {
        TruncatedSeries {
            coeffs: vec![Rat::zero(); order + 1],
        }
    }

    /// The constant series 1 to the given order.
    pub fn one(order: usize) -> Self {
        let mut coeffs = vec![Rat::zero(); order + 1];
        coeffs[0] = Rat::one();
        TruncatedSeries { coeffs }
    }

    /// Truncation order `N`: coefficients `0..=N` are known.
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficient of `t^n`. Panics if `n` exceeds the order.
    pub fn coeff(&self, n: usize) -> &Rat {
        &self.coeffs[n]
    }

    /// All known coefficients, `[c_0, ..., c_N]`.
    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    /// Discards coefficients beyond `order`. Panics if asked for more
    /// precision than the series carries.
    pub fn truncated(&self, order: usize) -> Self {
        assert!(
            order <= self.order(),
            "cannot extend a series of order {} to order {}",
            self.order(),
            order
        );
        TruncatedSeries {
            coeffs: self.coeffs[..=order].to_vec(),
        }
    }

    /// Substitutes `t -> c t`, i.e. multiplies `c_n` by `c^n`.
    pub fn scale_t(&self, c: &Rat) -> Self {
        let mut power = Rat::one();
        let coeffs = self
            .coeffs
            .iter()
            .map(|a| {
                let scaled = a * &power;
                power = &power * c;
                scaled
            })
            .collect();
        TruncatedSeries { coeffs }
    }

    /// Multiplicative inverse. Fails when `c_0 = 0`.
    pub fn inverse(&self) -> Result<TruncatedSeries, SeriesError> {
        if self.coeffs[0].is_zero() {
            return Err(SeriesError::ZeroConstantTerm);
        }
        let c0_inv = self.coeffs[0].recip();
        let n = self.order();
        let mut inv = Vec::with_capacity(n + 1);
        inv.push(c0_inv.clone());
        for k in 1..=n {
            let mut acc = Rat::zero();
            for j in 1..=k {
                acc += &self.coeffs[j] * &inv[k - j];
            }
            inv.push(-acc * &c0_inv);
        }
        Ok(TruncatedSeries { coeffs: inv })
    }

    /// Exponential. Requires `c_0 = 0`; the result is a one-unit of the
    /// same order.
    pub fn exp(&self) -> Result<OneUnit, SeriesError> {
        if !self.coeffs[0].is_zero() {
            return Err(SeriesError::NonzeroConstantTerm(self.coeffs[0].clone()));
        }
        let n = self.order();
        let mut h = Vec::with_capacity(n + 1);
        h.push(Rat::one());
        for m in 1..=n {
            // m h_m = sum_{k=1..m} k g_k h_{m-k}
            let mut acc = Rat::zero();
            for k in 1..=m {
                acc += Rat::from_integer(k.into()) * &self.coeffs[k] * &h[m - k];
            }
            h.push(acc / Rat::from_integer(m.into()));
        }
        Ok(OneUnit(TruncatedSeries { coeffs: h }))
    }
}

impl Add for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn add(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        let order = self.order().min(rhs.order());
        let coeffs = (0..=order)
            .map(|i| &self.coeffs[i] + &rhs.coeffs[i])
            .collect();
        TruncatedSeries { coeffs }
    }
}

impl Sub for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn sub(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        let order = self.order().min(rhs.order());
        let coeffs = (0..=order)
            .map(|i| &self.coeffs[i] - &rhs.coeffs[i])
            .collect();
        TruncatedSeries { coeffs }
    }
}

impl Neg for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn neg(self) -> TruncatedSeries {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn mul(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        let order = self.order().min(rhs.order());
        let mut coeffs = vec![Rat::zero(); order + 1];
        for (i, a) in self.coeffs.iter().take(order + 1).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().take(order + 1 - i).enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        TruncatedSeries { coeffs }
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote_term = false;
        for (n, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (sign, magnitude) = if c < &Rat::zero() {
                ("-", -c)
            } else {
                ("+", c.clone())
            };
            if wrote_term {
                write!(f, " {} ", sign)?;
            } else if sign == "-" {
                write!(f, "-")?;
            }
            wrote_term = true;
            let coeff_part = format_rat(&magnitude);
            match n {
                0 => write!(f, "{coeff_part}")?,
                _ => {
                    if magnitude.is_one() {
                        write!(f, "t")?;
                    } else {
                        write!(f, "{coeff_part}*t")?;
                    }
                    if n > 1 {
                        write!(f, "^{n}")?;
                    }
                }
            }
        }
        if !wrote_term {
            write!(f, "0")?;
        }
        write!(f, " + O(t^{})", self.order() + 1)
    }
}

#[derive(Deserialize)]
struct SeriesRepr {
    order: usize,
    coeffs: Vec<String>,
}

impl Serialize for TruncatedSeries {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("TruncatedSeries", 2)?;
        st.serialize_field("order", &self.order())?;
        let coeffs: Vec<String> = self.coeffs.iter().map(format_rat).collect();
        st.serialize_field("coeffs", &coeffs)?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for TruncatedSeries {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = SeriesRepr::deserialize(deserializer)?;
        if repr.coeffs.len() != repr.order + 1 {
            return Err(D::Error::custom(format!(
                "series of order {} must carry {} coefficients, found {}",
                repr.order,
                repr.order + 1,
                repr.coeffs.len()
            )));
        }
        let coeffs = repr
            .coeffs
            .iter()
            .map(|s| parse_rat(s).map_err(D::Error::custom))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(TruncatedSeries { coeffs })
    }
}

/// A truncated series with constant term exactly 1.
///
/// One-units form a group under series multiplication; this is the
/// additive group of the big Witt ring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OneUnit(TruncatedSeries);

impl OneUnit {
    /// Validates `c_0 = 1`.
    pub fn new(series: TruncatedSeries) -> Result<Self, SeriesError> {
        if !series.coeffs[0].is_one() {
            return Err(SeriesError::ConstantTermNotOne(series.coeffs[0].clone()));
        }
        Ok(OneUnit(series))
    }

    /// The constant one-unit `1` to the given order.
    pub fn one(order: usize) -> Self {
        OneUnit(TruncatedSeries::one(order))
    }

    pub fn order(&self) -> usize {
        self.0.order()
    }

    pub fn coeff(&self, n: usize) -> &Rat {
        self.0.coeff(n)
    }

    pub fn coeffs(&self) -> &[Rat] {
        self.0.coeffs()
    }

    /// The underlying plain series.
    pub fn as_series(&self) -> &TruncatedSeries {
        &self.0
    }

    pub fn truncated(&self, order: usize) -> Self {
        OneUnit(self.0.truncated(order))
    }

    /// `t -> c t` preserves the unit constant term.
    pub fn scale_t(&self, c: &Rat) -> Self {
        OneUnit(self.0.scale_t(c))
    }

    /// Inversion never fails for a one-unit.
    pub fn inverse(&self) -> Self {
        OneUnit(self.0.inverse().expect("one-unit has constant term 1"))
    }

    /// Logarithm; the result has zero constant term and the same order.
    ///
    /// Uses `g_n = f_n - (1/n) sum_{k=1..n-1} k g_k f_{n-k}`.
    pub fn log(&self) -> TruncatedSeries {
        let f = &self.0.coeffs;
        let n = self.order();
        let mut g = Vec::with_capacity(n + 1);
        g.push(Rat::zero());
        for m in 1..=n {
            let mut acc = Rat::zero();
            for k in 1..m {
                acc += Rat::from_integer(k.into()) * &g[k] * &f[m - k];
            }
            g.push(&f[m] - acc / Rat::from_integer(m.into()));
        }
        TruncatedSeries { coeffs: g }
    }
}

impl Mul for &OneUnit {
    type Output = OneUnit;
    fn mul(self, rhs: &OneUnit) -> OneUnit {
        OneUnit(&self.0 * &rhs.0)
    }
}

impl fmt::Display for OneUnit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl Serialize for OneUnit {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.0.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for OneUnit {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let series = TruncatedSeries::deserialize(deserializer)?;
        OneUnit::new(series).map_err(D::Error::custom)
    }
}
