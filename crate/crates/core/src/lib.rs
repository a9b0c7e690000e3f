//! Exact arithmetic for the big Witt ring, lambda operations, and zeta
//! functions of varieties over finite fields.
//!
//! The library works throughout with truncated power series over the
//! rationals. A one-unit `1 + c_1 t + ... + c_N t^N` is simultaneously a
//! big Witt vector: addition of Witt vectors is multiplication of series,
//! and the Witt product is determined by `(1-at)^-1 * (1-bt)^-1 = (1-abt)^-1`
//! on Teichmuller elements. Ghost coordinates `g_n = n [t^n] log f`
//! linearize both operations and, for the zeta function of a variety,
//! are exactly the point counts over the field extensions.
//!
//! All arithmetic is exact: coefficients are arbitrary-precision rationals
//! and every result is either correct to the stated truncation order or an
//! error. There is no floating point anywhere in this crate.

pub mod grothendieck;
pub mod number;
pub mod partitions;
pub mod poly;
pub mod rationality;
pub mod series;
pub mod symfunc;
pub mod witt;

pub use number::{parse_rat, rat_frac, rat_i64, Rat};
pub use series::{OneUnit, SeriesError, TruncatedSeries};
