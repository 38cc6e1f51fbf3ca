//! Walsh spectra, derivative curves and APN checks for Boolean functions
//! `f(x) = Tr(G(x))` on GF(2^m).
//!
//! The main object is the family `G = a7 x^7 + sum b_i x^(2^i + 1)`. For odd
//! `m` the fourth moment of the Walsh spectrum of `Tr(G)` is computed twice:
//! once by a fast Walsh-Hadamard transform ([`boolfn`]) and once as
//! `q^2 + sum_alpha X_alpha`, where each `X_alpha` comes from the radical of
//! a quadratic form attached to a genus-2 Artin-Schreier curve ([`curves`],
//! [`xalpha`]). [`apn`] decides APN-ness by derivative histograms and by
//! spectral sums, and [`cli`] exposes everything as a command-line tool.
//!
//! All arithmetic is exact: integer spectra, `u128` power sums, and bounds
//! involving `sqrt(q)` are compared after squaring.

pub mod apn;
pub mod boolfn;
pub mod cli;
pub mod curves;
pub mod error;
pub mod gf2m;
pub mod xalpha;

pub use crate::error::{Error, Result};
pub use crate::gf2m::{field_params, FieldElement, FieldParams};
