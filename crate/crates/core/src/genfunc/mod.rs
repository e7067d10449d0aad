//! Exact generating functions for `EMD_d` over all tuples of histograms.
//!
//! `H_n(z, t)` counts d-tuples of mass `s` by their EMD (`z`-exponent).
//! Its `z = 1` specialization has numerator `W_n(t)` (Simon Newcomb
//! numbers), and its `z`-derivative at `z = 1` has numerator `N_n(t)`.
//! Dividing coefficients gives discrete expected values; a lattice
//! recursion gives the continuous expected value `E_n`. All arithmetic is
//! exact.

mod bivariate;
mod expected;
mod newcomb;
mod numerator;
mod poly;

pub use bivariate::{h_bivariate, h_bivariate_with_budget, BivariateSeries, DEFAULT_BIVARIATE_BUDGET};
pub use expected::{
    continuous_expected, unit_normalized_expected, unit_normalized_expected_with,
    ExpectedValueCache,
};
pub use newcomb::{binomial, factorial, h_coeff, newcomb_coefficient, w_at_one, w_degree, w_poly};
pub use numerator::{
    discrete_expected, expected_from_numerator, hprime_coeff, hprime_coeff_with, n_poly,
    NumeratorCache, MAX_SUBSET_DIM,
};
pub use poly::RationalPoly;
