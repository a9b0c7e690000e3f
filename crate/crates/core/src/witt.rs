//! The big Witt ring structure on one-units.
//!
//! A one-unit `f = 1 + c_1 t + ... + c_N t^N` is a Witt vector truncated
//! at length `N`. The ring operations are:
//!
//! * addition: series multiplication, zero element the constant 1;
//! * negation: series inversion;
//! * multiplication: the unique functorial product with
//!   `(1-at)^-1 * (1-bt)^-1 = (1-abt)^-1` on Teichmuller elements,
//!   unit element `(1-t)^-1`.
//!
//! The ghost map `g_n = n [t^n] log f` turns addition into componentwise
//! addition and multiplication into componentwise multiplication, so the
//! product has two implementations: `Ghost` goes through log/exp, and
//! `Universal` stays in coefficient space by converting to elementary
//! coordinates and applying the integer universal polynomials `P_n`.
//! The two must agree; `Universal` additionally makes it evident that
//! integral inputs produce an integral product.
//!
//! `lambda(m)` is the m-th exterior-power operation: on a sum of
//! Teichmuller elements it picks out all m-fold products
//! `x_(i_1) ... x_(i_m)` with strictly increasing indices. Its ghosts
//! are `ghost_n(lambda^m f) = e_m` evaluated with `p_j -> ghost_(nj) f`,
//! so computing `lambda^m` to order `K` consumes the input up to order
//! `m K`; the operation fails loudly when that precision is missing
//! rather than silently truncating.

use crate::number::Rat;
use crate::series::{OneUnit, TruncatedSeries};
use crate::symfunc::{self, SymExpr, SymFuncError};
use num_traits::{One, Zero};
use thiserror::Error;

/// A truncated big Witt vector is exactly a one-unit series.
pub type WittVector = OneUnit;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WittError {
    /// The input series is too short to determine the requested output.
    #[error(
        "operation needs the input to order {needed} but it is only known to order {available}"
    )]
    WeightOverflow { needed: usize, available: usize },
    #[error(transparent)]
    Sym(#[from] SymFuncError),
}

/// Ghost coordinates `g_1, ..., g_N` of a Witt vector of order `N`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GhostSequence(Vec<Rat>);

impl GhostSequence {
    /// Wraps the values `g_1, ..., g_N` (note: 1-based, no `g_0`).
    pub fn from_values(values: Vec<Rat>) -> Self {
        GhostSequence(values)
    }

    /// Number of known components.
    pub fn order(&self) -> usize {
        self.0.len()
    }

    /// The component `g_n`, 1-based. Panics if out of range.
    pub fn value(&self, n: usize) -> &Rat {
        assert!(n >= 1, "ghost components are 1-based");
        &self.0[n - 1]
    }

    pub fn values(&self) -> &[Rat] {
        &self.0
    }
}

/// Additive zero: the constant series 1.
pub fn witt_zero(order: usize) -> WittVector {
    OneUnit::one(order)
}

/// Multiplicative unit: `(1-t)^-1`, the Teichmuller lift of 1.
pub fn witt_one(order: usize) -> WittVector {
    teichmuller(&Rat::one(), order)
}

/// Teichmuller element `[a] = (1-at)^-1 = 1 + at + a^2 t^2 + ...`.
pub fn teichmuller(a: &Rat, order: usize) -> WittVector {
    let mut coeffs = Vec::with_capacity(order + 1);
    let mut power = Rat::one();
    for _ in 0..=order {
        coeffs.push(power.clone());
        power = &power * a;
    }
    OneUnit::new(TruncatedSeries::from_coeffs(coeffs)).expect("starts with 1")
}

/// Witt addition is series multiplication.
pub fn witt_add(f: &WittVector, g: &WittVector) -> WittVector {
    f * g
}

/// Witt negation is series inversion.
pub fn witt_neg(f: &WittVector) -> WittVector {
    f.inverse()
}

/// Ghost coordinates: `g_n = n [t^n] log f`.
pub fn ghost(f: &WittVector) -> GhostSequence {
    let log = f.log();
    let values = (1..=f.order())
        .map(|n| log.coeff(n) * Rat::from_integer(n.into()))
        .collect();
    GhostSequence(values)
}

/// Inverse of the ghost map: `exp(sum g_n t^n / n)`.
pub fn unghost(g: &GhostSequence) -> WittVector {
    let mut coeffs = Vec::with_capacity(g.order() + 1);
    coeffs.push(Rat::zero());
    for (i, v) in g.0.iter().enumerate() {
        coeffs.push(v / Rat::from_integer((i + 1).into()));
    }
    TruncatedSeries::from_coeffs(coeffs)
        .exp()
        .expect("constant term is zero by construction")
}

/// Which implementation of the Witt product to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MulRoute {
    /// Componentwise product of ghost coordinates, then `unghost`.
    #[default]
    Ghost,
    /// Integer universal polynomials on elementary coordinates.
    /// Capped at order `symfunc::MAX_WEIGHT`.
    Universal,
}

/// The Witt product, truncated to the smaller input order.
pub fn witt_mul(f: &WittVector, g: &WittVector, route: MulRoute) -> Result<WittVector, WittError> {
    let order = f.order().min(g.order());
    match route {
        MulRoute::Ghost => {
            let gf = ghost(&f.truncated(order));
            let gg = ghost(&g.truncated(order));
            let values = gf
                .values()
                .iter()
                .zip(gg.values())
                .map(|(a, b)| a * b)
                .collect();
            Ok(unghost(&GhostSequence(values)))
        }
        MulRoute::Universal => {
            let e_f = elementary_coords(&f.truncated(order));
            let e_g = elementary_coords(&g.truncated(order));
            let mut e_coeffs = Vec::with_capacity(order + 1);
            e_coeffs.push(Rat::one());
            for n in 1..=order {
                let poly = symfunc::universal_product_poly(n as u32)?;
                e_coeffs.push(poly.eval(&e_f, &e_g));
            }
            let e_series =
                OneUnit::new(TruncatedSeries::from_coeffs(e_coeffs)).expect("starts with 1");
            Ok(from_elementary_coords(&e_series))
        }
    }
}

/// Elementary coordinates of `f`: with `f = prod (1 - x_i t)^-1`, the
/// series `E(t) = prod (1 + x_i t) = 1 / f(-t)`; returns `e_1 ..= e_N`.
fn elementary_coords(f: &WittVector) -> Vec<Rat> {
    let e = f.scale_t(&-Rat::one()).inverse();
    e.coeffs()[1..].to_vec()
}

fn from_elementary_coords(e: &OneUnit) -> WittVector {
    e.scale_t(&-Rat::one()).inverse()
}

/// The m-th exterior-power operation, computed to order `out_order`.
///
/// Requires the input to order `m * out_order` and caps that product at
/// `symfunc::MAX_WEIGHT`. `lambda(0)` is the multiplicative unit and
/// `lambda(1)` the identity (truncated).
pub fn lambda(m: u32, f: &WittVector, out_order: usize) -> Result<WittVector, WittError> {
    match m {
        0 => Ok(witt_one(out_order)),
        1 => {
            if out_order > f.order() {
                return Err(WittError::WeightOverflow {
                    needed: out_order,
                    available: f.order(),
                });
            }
            Ok(f.truncated(out_order))
        }
        _ => {
            let needed = (m as usize) * out_order;
            if needed > f.order() {
                return Err(WittError::WeightOverflow {
                    needed,
                    available: f.order(),
                });
            }
            if needed > symfunc::MAX_WEIGHT {
                return Err(SymFuncError::WeightOverflow {
                    needed,
                    cap: symfunc::MAX_WEIGHT,
                }
                .into());
            }
            let e_m = SymExpr::elementary(m, m as usize)?;
            let ghosts = ghost(f);
            let values = (1..=out_order)
                .map(|n| e_m.eval_power_sums(|j| ghosts.value(n * j as usize).clone()))
                .collect();
            Ok(unghost(&GhostSequence(values)))
        }
    }
}
