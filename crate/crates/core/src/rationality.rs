//! Rationality detection and certificates for truncated series.
//!
//! A `RationalCertificate` asserts `xi = num / den` where both sides
//! agree up to the stated order. Certificates are kept reduced: the
//! polynomials are coprime and the denominator has constant term 1.
//!
//! Detection solves the homogeneous linear system asking for a
//! denominator `a` of degree `<= d` with `[t^k](a * xi) = 0` on a
//! window of coefficients past the numerator degree. The system matrix
//! consists of shifted windows of the coefficient sequence (a Hankel
//! matrix), and the per-degree diagnostics are reported as a
//! `HankelReport`. One solve is not taken as evidence: the candidate
//! is re-verified against every known coefficient, and the certificate
//! records the order that survived.
//!
//! Completeness rests on the cross-multiplication argument: if some
//! exact representation with degrees `(p, d)` exists, then for any
//! kernel solution `(a, b)` the polynomial `a * num - b * den` has
//! degree `<= p + d` yet vanishes to order `p + d + 1`, so it is zero
//! and the kernel solution is itself exact. Scanning denominator
//! degrees upward therefore finds the minimal one.

use crate::number::Rat;
use crate::poly::Poly;
use crate::series::{OneUnit, TruncatedSeries};
use crate::witt::{witt_mul, MulRoute};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::de::Error as DeError;
use serde::ser::SerializeStruct;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;
use thiserror::Error;

/// Surplus coefficients a detection must attest beyond the solved
/// window before a certificate is issued.
pub const DEFAULT_MARGIN: usize = 2;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RationalityError {
    #[error("no rational representation within the degree bounds{}", match first_failure {
        Some(k) => format!(", first nonzero residual at t^{k}"),
        None => String::new(),
    })]
    NoSolution { first_failure: Option<usize> },
    #[error("computation needs series order {needed} but only {available} is available")]
    InsufficientOrder { needed: usize, available: usize },
    #[error("certificates contradict the triangle relation, first mismatch at t^{first_failure}")]
    InconsistentRelation { first_failure: usize },
    #[error("invalid L-polynomial: {reason}")]
    BadLPolynomial { reason: String },
    #[error("certificate does not expand to a one-unit: {reason}")]
    NotOneUnit { reason: String },
}

/// A verified rational representation `num / den` of a series.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalCertificate {
    num: Poly,
    den: Poly,
    order: usize,
}

impl RationalCertificate {
    /// Normalizes a representation: removes the common polynomial
    /// factor and scales so the denominator has constant term 1.
    /// `order` records how many coefficients the representation has
    /// been checked against.
    pub fn new(num: Poly, den: Poly, order: usize) -> Result<Self, RationalityError> {
        if den.coeff(0).is_zero() {
            return Err(RationalityError::NotOneUnit {
                reason: "denominator has zero constant term".to_owned(),
            });
        }
        let g = num.gcd(&den);
        let (num, den) = if g.degree().unwrap_or(0) > 0 {
            (num.divrem(&g).0, den.divrem(&g).0)
        } else {
            (num, den)
        };
        let scale = den.coeff(0).recip();
        Ok(RationalCertificate {
            num: num.scale(&scale),
            den: den.scale(&scale),
            order,
        })
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    /// The order up to which `num / den` matched the source series.
    pub fn order(&self) -> usize {
        self.order
    }

    /// Degree of the numerator plus degree of the denominator; the
    /// zero polynomial counts as degree 0.
    pub fn total_degree(&self) -> usize {
        self.num.degree().unwrap_or(0) + self.den.degree().unwrap_or(0)
    }

    /// Expands the certificate back into a series of the given order.
    pub fn expand(&self, order: usize) -> TruncatedSeries {
        let den_inverse = self
            .den
            .to_series(order)
            .inverse()
            .expect("denominator constant term is 1");
        &self.num.to_series(order) * &den_inverse
    }

    /// Expansion as a one-unit; fails if the constant term is not 1.
    pub fn expand_one_unit(&self, order: usize) -> Result<OneUnit, RationalityError> {
        if !self.num.coeff(0).is_one() {
            return Err(RationalityError::NotOneUnit {
                reason: format!("expansion has constant term {}", self.num.coeff(0)),
            });
        }
        Ok(OneUnit::new(self.expand(order)).expect("constant term checked"))
    }
}

impl fmt::Display for RationalCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) / ({})", self.num, self.den)
    }
}

impl Serialize for RationalCertificate {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("RationalCertificate", 3)?;
        st.serialize_field("num", &self.num)?;
        st.serialize_field("den", &self.den)?;
        st.serialize_field("order", &self.order)?;
        st.end()
    }
}

#[derive(Deserialize)]
struct CertificateRepr {
    num: Poly,
    den: Poly,
    order: usize,
}

impl<'de> Deserialize<'de> for RationalCertificate {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = CertificateRepr::deserialize(deserializer)?;
        RationalCertificate::new(repr.num, repr.den, repr.order).map_err(D::Error::custom)
    }
}

/// Row-reduces the homogeneous system and returns its rank together
/// with a basis of the kernel.
fn kernel_basis(mut m: Vec<Vec<Rat>>, cols: usize) -> (usize, Vec<Vec<Rat>>) {
    let rows = m.len();
    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r >= rows {
            break;
        }
        let Some(pivot) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, pivot);
        let inv = m[r][c].recip();
        for x in &mut m[r] {
            *x *= &inv;
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let factor = row[c].clone();
            for (entry, pivot_entry) in row.iter_mut().zip(&pivot_row) {
                *entry -= pivot_entry * &factor;
            }
        }
        pivot_cols.push(c);
        r += 1;
    }
    let rank = r;
    let mut basis = Vec::new();
    for free in (0..cols).filter(|c| !pivot_cols.contains(c)) {
        let mut v = vec![Rat::zero(); cols];
        v[free] = Rat::one();
        for (row, &pc) in pivot_cols.iter().enumerate() {
            v[pc] = -m[row][free].clone();
        }
        basis.push(v);
    }
    (rank, basis)
}

/// Diagnostics from one denominator-degree attempt.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HankelEntry {
    /// Denominator degree bound that was tried.
    pub den_degree: usize,
    /// Rank of the Hankel system for this degree.
    pub rank: usize,
    /// Whether the kernel contained a denominator with nonzero
    /// constant term.
    pub unit_solution: bool,
    /// First coefficient where the candidate failed re-verification.
    pub first_failure: Option<usize>,
}

/// Why no certificate was issued, degree by degree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HankelReport {
    pub entries: Vec<HankelEntry>,
}

/// Result of a rationality scan.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DetectOutcome {
    Certified(RationalCertificate),
    NotDetected(HankelReport),
}

struct PadeAttempt {
    rank: usize,
    unit_solution: bool,
    first_failure: Option<usize>,
    certified: Option<(Poly, Poly)>,
}

/// Solves for a denominator of degree `<= den_deg` killing the window
/// `num_deg+1 ..= num_deg+den_deg`, then re-verifies the candidate
/// against every known coefficient.
fn try_pade(xi: &TruncatedSeries, num_deg: usize, den_deg: usize) -> PadeAttempt {
    let coeff_at = |k: isize| -> Rat {
        if k < 0 {
            Rat::zero()
        } else {
            xi.coeff(k as usize).clone()
        }
    };
    let cols = den_deg + 1;
    let matrix: Vec<Vec<Rat>> = (0..den_deg)
        .map(|r| {
            let k = (num_deg + 1 + r) as isize;
            (0..cols).map(|c| coeff_at(k - c as isize)).collect()
        })
        .collect();
    let (rank, basis) = kernel_basis(matrix, cols);
    let Some(candidate) = basis.iter().find(|v| !v[0].is_zero()) else {
        return PadeAttempt {
            rank,
            unit_solution: false,
            first_failure: None,
            certified: None,
        };
    };
    let den = Poly::from_coeffs(candidate.clone());
    let product = &den.to_series(xi.order()) * xi;
    let first_failure = (num_deg + 1..=xi.order()).find(|&k| !product.coeff(k).is_zero());
    let certified = if first_failure.is_none() {
        let num = Poly::from_coeffs(product.coeffs()[..=num_deg.min(xi.order())].to_vec());
        Some((num, den))
    } else {
        None
    };
    PadeAttempt {
        rank,
        unit_solution: true,
        first_failure,
        certified,
    }
}

/// Pade-style solve with explicit degree bounds `(p, q)` for the
/// numerator and denominator. The candidate must match the series on
/// every known coefficient, not just the solved window.
pub fn pade(
    xi: &TruncatedSeries,
    num_deg: usize,
    den_deg: usize,
) -> Result<RationalCertificate, RationalityError> {
    let needed = num_deg + den_deg;
    if needed > xi.order() {
        return Err(RationalityError::InsufficientOrder {
            needed,
            available: xi.order(),
        });
    }
    let attempt = try_pade(xi, num_deg, den_deg);
    match attempt.certified {
        Some((num, den)) => RationalCertificate::new(num, den, xi.order()),
        None => Err(RationalityError::NoSolution {
            first_failure: attempt.first_failure,
        }),
    }
}

/// Scans denominator degrees `0 ..= max_degree` and returns the first
/// certificate that survives full re-verification, or the per-degree
/// diagnostics if none does.
///
/// With `p = order - d - margin` coefficients granted to the numerator
/// at each denominator degree `d`, the precondition
/// `2 * max_degree + margin <= order` keeps the numerator bound at
/// least `max_degree` throughout, so every representation with both
/// degrees `<= max_degree` is found, and found at its minimal
/// denominator degree.
pub fn detect_rational(
    xi: &TruncatedSeries,
    max_degree: usize,
    margin: usize,
) -> Result<DetectOutcome, RationalityError> {
    let needed = 2 * max_degree + margin;
    if needed > xi.order() {
        return Err(RationalityError::InsufficientOrder {
            needed,
            available: xi.order(),
        });
    }
    let mut entries = Vec::with_capacity(max_degree + 1);
    for d in 0..=max_degree {
        let num_deg = xi.order() - d - margin;
        let attempt = try_pade(xi, num_deg, d);
        if let Some((num, den)) = attempt.certified {
            let cert = RationalCertificate::new(num, den, xi.order())?;
            return Ok(DetectOutcome::Certified(cert));
        }
        entries.push(HankelEntry {
            den_degree: d,
            rank: attempt.rank,
            unit_solution: attempt.unit_solution,
            first_failure: attempt.first_failure,
        });
    }
    Ok(DetectOutcome::NotDetected(HankelReport { entries }))
}

/// Outcome of replaying a certificate against a series.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub pass: bool,
    /// How many coefficients were compared: the smaller of the series
    /// order and the certificate's attested order. A certificate only
    /// claims agreement up to its own order, so longer series are not
    /// checked past the claim.
    pub checked_order: usize,
    /// True when the comparison covered less than either the series or
    /// the certificate's claimed order.
    pub partial: bool,
    pub first_failure: Option<usize>,
}

/// Replays `den * xi = num` coefficient by coefficient up to the
/// smaller of the series order and the attested order.
pub fn certificate_verify(xi: &TruncatedSeries, cert: &RationalCertificate) -> VerifyReport {
    let checked_order = xi.order().min(cert.order());
    let lhs = &cert.den().to_series(checked_order) * &xi.truncated(checked_order);
    let rhs = cert.num().to_series(checked_order);
    let first_failure = (0..=checked_order).find(|&k| lhs.coeff(k) != rhs.coeff(k));
    VerifyReport {
        pass: first_failure.is_none(),
        checked_order,
        partial: checked_order < xi.order() || checked_order < cert.order(),
        first_failure,
    }
}

/// Which two vertices of the triangle `Y = X + Z` carry certificates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KnownPair {
    XY,
    XZ,
    YZ,
}

/// Produces a certificate for the third vertex of a triangle from
/// certificates for the other two, using `zeta_Y = zeta_X * zeta_Z`.
///
/// When a series for the third vertex is supplied, the derived
/// certificate is verified against it and a mismatch is reported as
/// `InconsistentRelation`.
pub fn two_out_of_three(
    pair: KnownPair,
    first: &RationalCertificate,
    second: &RationalCertificate,
    third: Option<&TruncatedSeries>,
) -> Result<RationalCertificate, RationalityError> {
    let order = first.order().min(second.order());
    let (num, den) = match pair {
        // y = x * z
        KnownPair::XZ => (first.num() * second.num(), first.den() * second.den()),
        // z = y / x
        KnownPair::XY => (second.num() * first.den(), second.den() * first.num()),
        // x = y / z
        KnownPair::YZ => (first.num() * second.den(), first.den() * second.num()),
    };
    let cert = RationalCertificate::new(num, den, order)?;
    match third {
        None => Ok(cert),
        Some(series) => {
            let claim = RationalCertificate::new(
                cert.num.clone(),
                cert.den.clone(),
                order.max(series.order()),
            )?;
            let report = certificate_verify(series, &claim);
            match report.first_failure {
                Some(first_failure) => {
                    Err(RationalityError::InconsistentRelation { first_failure })
                }
                None => Ok(claim),
            }
        }
    }
}

/// Certifies that the Witt product of two rational one-units is again
/// rational: expands both certificates to `order`, multiplies in the
/// Witt ring, and detects a certificate for the product.
///
/// The degree bound comes from splitting each rational one-unit into
/// Teichmuller letters over a closure: a product of a `D1`-letter and
/// a `D2`-letter unit has at most `D1 * D2` letters, so total degree
/// at most that product. The caller must supply enough order for the
/// scan (`2 * D1 * D2 + margin`).
pub fn star_closure_check(
    cf: &RationalCertificate,
    cg: &RationalCertificate,
    order: usize,
    margin: usize,
) -> Result<RationalCertificate, RationalityError> {
    let max_degree = cf.total_degree() * cg.total_degree();
    let needed = 2 * max_degree + margin;
    if needed > order {
        return Err(RationalityError::InsufficientOrder {
            needed,
            available: order,
        });
    }
    let f = cf.expand_one_unit(order)?;
    let g = cg.expand_one_unit(order)?;
    let product = witt_mul(&f, &g, MulRoute::Ghost).expect("ghost route is total");
    match detect_rational(product.as_series(), max_degree, margin)? {
        DetectOutcome::Certified(cert) => Ok(cert),
        DetectOutcome::NotDetected(_) => Err(RationalityError::NoSolution {
            first_failure: None,
        }),
    }
}

/// Residuals of the curve functional equation
/// `L(t) = q^g t^(2g) L(1/(qt))`, i.e. `R_j = a_j - q^(j-g) a_(2g-j)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FuncEqReport {
    pub pass: bool,
    /// The residual polynomial `sum R_j t^j`; identically zero exactly
    /// when the functional equation holds.
    pub residual: Poly,
}

/// Checks the functional equation of an alleged genus-`g` L-polynomial
/// exactly, without extracting roots.
pub fn functional_equation_check(
    genus: u32,
    l_coeffs: &[BigInt],
    q: u64,
) -> Result<FuncEqReport, RationalityError> {
    assert!(q >= 1);
    let bad = |reason: String| RationalityError::BadLPolynomial { reason };
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
    let g = genus as usize;
    let q = BigInt::from(q);
    let residual_coeffs: Vec<Rat> = (0..expected)
        .map(|j| {
            let mirror = Rat::from_integer(l_coeffs[2 * g - j].clone());
            let factor = if j >= g {
                Rat::from_integer(num_traits::pow::pow(q.clone(), j - g))
            } else {
                Rat::new(BigInt::one(), num_traits::pow::pow(q.clone(), g - j))
            };
            Rat::from_integer(l_coeffs[j].clone()) - factor * mirror
        })
        .collect();
    let residual = Poly::from_coeffs(residual_coeffs);
    Ok(FuncEqReport {
        pass: residual.is_zero(),
        residual,
    })
}
