//! Exact polynomials in one variable over the rationals.
//!
//! Coefficients are stored low degree first with no trailing zeros, so
//! the zero polynomial is the empty vector and `degree` is `None` for it.
//! Division and GCD are exact; GCD results are normalized monic.

use crate::number::{format_rat, parse_rat, Rat};
use crate::series::TruncatedSeries;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::de::Error as DeError;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly {
    coeffs: Vec<Rat>,
}

impl Poly {
    /// Builds a polynomial, trimming trailing zero coefficients.
    pub fn from_coeffs(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_integers(coeffs: &[i64]) -> Self {
        Poly::from_coeffs(
            coeffs
                .iter()
                .map(|&c| Rat::from_integer(BigInt::from(c)))
                .collect(),
        )
    }

    pub fn from_bigints(coeffs: &[BigInt]) -> Self {
        Poly::from_coeffs(
            coeffs
                .iter()
                .map(|c| Rat::from_integer(c.clone()))
                .collect(),
        )
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly {
            coeffs: vec![Rat::one()],
        }
    }

    pub fn constant(c: Rat) -> Self {
        Poly::from_coeffs(vec![c])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` exactly for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Coefficient of `t^n`, zero beyond the degree.
    pub fn coeff(&self, n: usize) -> Rat {
        self.coeffs.get(n).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn leading_coeff(&self) -> Option<&Rat> {
        self.coeffs.last()
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Poly::zero();
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(n, c)| c * Rat::from_integer(n.into()))
            .collect();
        Poly::from_coeffs(coeffs)
    }

    /// Reads the polynomial as a truncated series of the given order.
    /// Unlike the polynomial itself, the series has explicit zeros.
    pub fn to_series(&self, order: usize) -> TruncatedSeries {
        let coeffs = (0..=order).map(|n| self.coeff(n)).collect();
        TruncatedSeries::from_coeffs(coeffs)
    }

    /// Euclidean division: returns `(quotient, remainder)` with
    /// `self = q * divisor + r` and `deg r < deg divisor`.
    /// Panics on a zero divisor.
    pub fn divrem(&self, divisor: &Poly) -> (Poly, Poly) {
        let d = divisor.degree().expect("division by the zero polynomial");
        let lead_inv = divisor.coeffs[d].recip();
        let mut rem = self.coeffs.clone();
        if rem.len() <= d {
            return (Poly::zero(), self.clone());
        }
        let mut quot = vec![Rat::zero(); rem.len() - d];
        for k in (d..rem.len()).rev() {
            let factor = &rem[k] * &lead_inv;
            if factor.is_zero() {
                continue;
            }
            for j in 0..=d {
                let sub = &divisor.coeffs[j] * &factor;
                rem[k - d + j] -= sub;
            }
            quot[k - d] = factor;
        }
        (Poly::from_coeffs(quot), Poly::from_coeffs(rem))
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.divrem(&b);
            a = b;
            b = r;
        }
        match a.leading_coeff() {
            Some(lead) if !lead.is_one() => {
                let inv = lead.recip();
                a.scale(&inv)
            }
            _ => a,
        }
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..len).map(|i| self.coeff(i) + rhs.coeff(i)).collect();
        Poly::from_coeffs(coeffs)
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..len).map(|i| self.coeff(i) - rhs.coeff(i)).collect();
        Poly::from_coeffs(coeffs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![Rat::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        Poly::from_coeffs(coeffs)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
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
            match n {
                0 => write!(f, "{}", format_rat(&magnitude))?,
                _ => {
                    if magnitude.is_one() {
                        write!(f, "t")?;
                    } else {
                        write!(f, "{}*t", format_rat(&magnitude))?;
                    }
                    if n > 1 {
                        write!(f, "^{n}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl Serialize for Poly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let strings: Vec<String> = if self.is_zero() {
            vec!["0".to_owned()]
        } else {
            self.coeffs.iter().map(format_rat).collect()
        };
        strings.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Poly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let strings = Vec::<String>::deserialize(deserializer)?;
        if strings.is_empty() {
            return Err(D::Error::custom(
                "polynomial needs at least one coefficient",
            ));
        }
        let coeffs = strings
            .iter()
            .map(|s| parse_rat(s).map_err(D::Error::custom))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Poly::from_coeffs(coeffs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::number::{rat_frac, rat_i64};
    use proptest::prelude::*;

    #[test]
    fn trims_trailing_zeros() {
        let p = Poly::from_integers(&[1, 2, 0, 0]);
        assert_eq!(p.degree(), Some(1));
        assert_eq!(Poly::from_integers(&[0, 0]), Poly::zero());
        assert_eq!(Poly::zero().degree(), None);
    }

    #[test]
    fn divrem_reconstructs_dividend() {
        let a = Poly::from_integers(&[2, -3, 0, 1, 5]);
        let b = Poly::from_integers(&[1, 0, 2]);
        let (q, r) = a.divrem(&b);
        assert_eq!(&(&q * &b) + &r, a);
        assert!(r.degree() < b.degree());
    }

    #[test]
    fn gcd_of_products_with_common_factor() {
        // (1 - t)(1 - 2t) and (1 - t)(1 + 3t) share the monic factor t - 1.
        let common = Poly::from_integers(&[1, -1]);
        let a = &common * &Poly::from_integers(&[1, -2]);
        let b = &common * &Poly::from_integers(&[1, 3]);
        let g = a.gcd(&b);
        assert_eq!(g, Poly::from_coeffs(vec![rat_i64(-1), rat_i64(1)]));
    }

    #[test]
    fn gcd_of_coprime_is_one() {
        let a = Poly::from_integers(&[1, -1]);
        let b = Poly::from_integers(&[1, -2]);
        assert_eq!(a.gcd(&b), Poly::one());
    }

    #[test]
    fn eval_uses_exact_arithmetic() {
        let p = Poly::from_integers(&[1, -4, 3]);
        assert_eq!(p.eval(&rat_frac(1, 3)), rat_i64(0));
        assert_eq!(p.eval(&rat_i64(1)), rat_i64(0));
        assert_eq!(p.eval(&rat_i64(2)), rat_i64(5));
    }

    #[test]
    fn derivative_drops_degree() {
        let p = Poly::from_integers(&[7, 1, -2, 5]);
        assert_eq!(p.derivative(), Poly::from_integers(&[1, -4, 15]));
        assert_eq!(Poly::from_integers(&[3]).derivative(), Poly::zero());
    }

    #[test]
    fn display_matches_convention() {
        assert_eq!(
            Poly::from_integers(&[1, -4, 3]).to_string(),
            "1 - 4*t + 3*t^2"
        );
        assert_eq!(Poly::from_integers(&[0, 1]).to_string(), "t");
        assert_eq!(Poly::zero().to_string(), "0");
    }

    #[test]
    fn serde_uses_rational_strings() {
        let p = Poly::from_coeffs(vec![rat_i64(1), rat_frac(-1, 2)]);
        assert_eq!(serde_json::to_string(&p).unwrap(), r#"["1","-1/2"]"#);
        assert_eq!(serde_json::to_string(&Poly::zero()).unwrap(), r#"["0"]"#);
        let back: Poly = serde_json::from_str(r#"["1","-1/2"]"#).unwrap();
        assert_eq!(back, p);
    }

    fn arb_poly() -> impl Strategy<Value = Poly> {
        prop::collection::vec(-9i64..10, 0..7).prop_map(|v| Poly::from_integers(&v))
    }

    proptest! {
        #[test]
        fn divrem_invariant(a in arb_poly(), b in arb_poly()) {
            prop_assume!(!b.is_zero());
            let (q, r) = a.divrem(&b);
            prop_assert_eq!(&(&q * &b) + &r, a);
            prop_assert!(r.is_zero() || r.degree() < b.degree());
        }

        #[test]
        fn gcd_divides_both(a in arb_poly(), b in arb_poly()) {
            let g = a.gcd(&b);
            prop_assume!(!g.is_zero());
            prop_assert!(a.divrem(&g).1.is_zero());
            prop_assert!(b.divrem(&g).1.is_zero());
        }

        #[test]
        fn mul_matches_eval(a in arb_poly(), b in arb_poly(), x in -10i64..10) {
            let x = rat_i64(x);
            prop_assert_eq!((&a * &b).eval(&x), a.eval(&x) * b.eval(&x));
        }
    }
}
