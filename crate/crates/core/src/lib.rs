//! Complex-order fractional moments of probability distributions and the
//! generalized Taylor series that rebuild characteristic functions and densities
//! from them.

#![allow(clippy::excessive_precision, clippy::neg_cmp_op_on_partial_ord)]

pub mod csvio;
pub mod distributions;
pub mod error;
pub mod fracops;
pub mod moments;
pub mod quad;
pub mod reconstruct;
pub mod special;

pub use distributions::{DistributionSpec, Family, FundamentalStrip, Params};
pub use error::{Error, Result, POLE_TOLERANCE};
pub use fracops::{CompositionReport, OperatorKind, Side};
pub use moments::{make_grid, working_strip, Flavor, GridParams, Method, MomentGrid};
pub use num_complex::Complex64;
pub use reconstruct::{cf_series, pdf_series, sample_curve, CurveKind, CurveResult};
pub use special::{
    complex_gamma, dawson, gamma_modulus_asymptotic, ln_gamma, reflection_product, signed_complex_power, ComplexOrder,
    Sign,
};
