use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use super::compositions::enumerate_compositions;
use crate::cost::cost_of_sorted;
use crate::error::{Error, Result};
use crate::genfunc::{h_bivariate, h_coeff};
use crate::rational::{to_f64, Rational};
use crate::transport::rsk_word;
use crate::types::BinShape;

/// Default cap on the number of tuples enumerated for a histogram.
pub const DEFAULT_ENUMERATION_BUDGET: u128 = 1_000_000;

/// Distribution of `EMD_d^s` over every d-tuple of histograms with `n`
/// bins and mass `s`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmdHistogram {
    pub d: usize,
    pub n: usize,
    pub s: u64,
    /// EMD value to number of tuples attaining it.
    pub counts: BTreeMap<u64, u64>,
}

impl EmdHistogram {
    /// Number of tuples counted.
    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }

    /// `sum_r r * counts(r)`.
    pub fn value_sum(&self) -> BigInt {
        self.counts
            .iter()
            .map(|(&r, &c)| BigInt::from(r) * c)
            .sum()
    }

    pub fn mean(&self) -> Rational {
        Rational::new(self.value_sum(), BigInt::from(self.total()))
    }

    pub fn max_value(&self) -> Option<u64> {
        self.counts.keys().next_back().copied()
    }

    /// Exact `k`-th central moment (population).
    pub fn central_moment(&self, k: u32) -> Rational {
        let mean = self.mean();
        let total = Rational::from_integer(BigInt::from(self.total()));
        self.counts
            .iter()
            .map(|(&r, &c)| {
                let dev = Rational::from_integer(BigInt::from(r)) - &mean;
                num_traits::pow(dev, k as usize) * Rational::from_integer(BigInt::from(c))
            })
            .fold(Rational::zero(), |a, b| a + b)
            / total
    }
}

/// Population skewness; `degenerate` is set when the variance is zero.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Skewness {
    pub value: f64,
    pub degenerate: bool,
}

/// Standardized third central moment `m3 / m2^(3/2)` of the histogram.
pub fn skewness(h: &EmdHistogram) -> Skewness {
    let m2 = h.central_moment(2);
    if m2.is_zero() {
        return Skewness {
            value: 0.0,
            degenerate: true,
        };
    }
    let m3 = h.central_moment(3);
    Skewness {
        value: to_f64(&m3) / to_f64(&m2).powf(1.5),
        degenerate: false,
    }
}

/// Histogram by exhaustive enumeration of `C(s, n)^d`.
pub fn emd_histogram(d: usize, n: usize, s: u64, budget: u128) -> Result<EmdHistogram> {
    if d == 0 || n == 0 {
        return Err(Error::InvalidInput("need d >= 1 and n >= 1".into()));
    }
    let shape = BinShape::uniform(d, n)?;
    let needed = h_coeff(&shape, s).to_u128().unwrap_or(u128::MAX);
    if needed > budget {
        return Err(Error::CapacityExceeded {
            what: format!("enumeration of d = {d}, n = {n}, s = {s}"),
            needed,
            cap: budget,
        });
    }
    let words: Vec<Vec<usize>> = enumerate_compositions(s, n).map(|c| rsk_word(&c)).collect();
    let m = words.len();
    let mut counts = BTreeMap::new();
    let mut idx = vec![0usize; d];
    let mut column = vec![0usize; d];
    loop {
        let mut total = 0;
        #[allow(clippy::needless_range_loop)] // j indexes every word at once
        for j in 0..s as usize {
            for (slot, &w) in column.iter_mut().zip(&idx) {
                *slot = words[w][j];
            }
            column.sort_unstable();
            total += cost_of_sorted(&column);
        }
        *counts.entry(total).or_insert(0) += 1;
        // odometer over the d-fold product
        let mut axis = d;
        loop {
            if axis == 0 {
                return Ok(EmdHistogram { d, n, s, counts });
            }
            axis -= 1;
            idx[axis] += 1;
            if idx[axis] < m {
                break;
            }
            idx[axis] = 0;
        }
    }
}

/// Histogram read off the `t^s` coefficients of the bivariate generating
/// function instead of enumeration.
pub fn histogram_from_genfunc(d: usize, n: usize, s: u64) -> Result<EmdHistogram> {
    let shape = BinShape::uniform(d, n)?;
    let series = h_bivariate(&shape, s as usize)?;
    let counts = series
        .histogram_at(s as usize)
        .into_iter()
        .map(|(r, c)| {
            c.to_u64()
                .map(|c| (r, c))
                .ok_or_else(|| Error::CapacityExceeded {
                    what: "histogram bucket".into(),
                    needed: u128::MAX,
                    cap: u64::MAX as u128,
                })
        })
        .collect::<Result<_>>()?;
    Ok(EmdHistogram { d, n, s, counts })
}
