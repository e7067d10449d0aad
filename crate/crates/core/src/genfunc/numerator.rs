use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use num_bigint::BigInt;
use num_traits::Zero;

use super::newcomb::{factorial, h_coeff, w_poly};
use super::poly::RationalPoly;
use crate::cost::cost;
use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::types::BinShape;

/// Largest `d` for which the `2^d - 1` subset sum is attempted.
pub const MAX_SUBSET_DIM: usize = 20;

/// Shapes `n - e(A)` for every nonempty subset `A` of the axes, skipping
/// those with a zero coordinate, paired with `|A|`.
pub(crate) fn lower_neighbors(shape: &BinShape) -> Result<Vec<(BinShape, usize)>> {
    let d = shape.dim();
    if d > MAX_SUBSET_DIM {
        return Err(Error::CapacityExceeded {
            what: "subset recursion over axes".into(),
            needed: d as u128,
            cap: MAX_SUBSET_DIM as u128,
        });
    }
    let sizes = shape.sizes();
    let mut out = Vec::new();
    for mask in 1u32..(1u32 << d) {
        if (0..d).any(|i| mask & (1 << i) != 0 && sizes[i] == 1) {
            continue;
        }
        let lowered = (0..d)
            .map(|i| sizes[i] - ((mask >> i) & 1) as usize)
            .collect();
        out.push((BinShape::new(lowered)?, mask.count_ones() as usize));
    }
    Ok(out)
}

/// Memo table for `N_n`, keyed by the sorted shape. Entries are write-once;
/// concurrent fills of the same key compute the same value.
#[derive(Debug, Default)]
pub struct NumeratorCache {
    table: RwLock<HashMap<BinShape, Arc<RationalPoly>>>,
}

impl NumeratorCache {
    pub fn new() -> Self {
        Self::default()
    }

    /// `N_n(t)`, the numerator of `dH_n/dz` at `z = 1` over
    /// `(1 - t)^(|n| - d + 2)`, from
    /// `N_n = sum_A (t - 1)^(|A| - 1) N_{n - e(A)} + t C(n) W_n`
    /// with `N_(1,...,1) = 0`.
    pub fn get(&self, shape: &BinShape) -> Result<Arc<RationalPoly>> {
        let key = shape.canonical();
        if let Some(hit) = self.table.read().expect("poisoned cache").get(&key) {
            return Ok(hit.clone());
        }
        let value = if key.sizes().iter().all(|&n| n == 1) {
            RationalPoly::zero()
        } else {
            let t_minus_one = RationalPoly::t_minus_one();
            let mut acc = RationalPoly::zero();
            for (lower, size) in lower_neighbors(&key)? {
                let sub = self.get(&lower)?;
                if sub.is_zero() {
                    continue;
                }
                acc = &acc + &(&t_minus_one.pow(size - 1) * &sub);
            }
            let corner = cost(key.sizes());
            let last = w_poly(&key)
                .shift(1)
                .scale(&Rational::from_integer(BigInt::from(corner)));
            &acc + &last
        };
        let value = Arc::new(value);
        self.table
            .write()
            .expect("poisoned cache")
            .entry(key)
            .or_insert_with(|| value.clone());
        Ok(value)
    }

    pub fn len(&self) -> usize {
        self.table.read().expect("poisoned cache").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

pub fn n_poly(shape: &BinShape) -> Result<RationalPoly> {
    Ok((*NumeratorCache::new().get(shape)?).clone())
}

/// Sum of `EMD_d^s` over all tuples of mass `s`: `[t^s]` of
/// `N_n / (1 - t)^(|n| - d + 2)`.
pub fn hprime_coeff(shape: &BinShape, s: u64) -> Result<BigInt> {
    hprime_coeff_with(&NumeratorCache::new(), shape, s)
}

pub fn hprime_coeff_with(cache: &NumeratorCache, shape: &BinShape, s: u64) -> Result<BigInt> {
    let n = cache.get(shape)?;
    let exponent = shape.total() - shape.dim() + 2;
    let series = n.div_one_minus_t_pow(exponent, s as usize);
    let c = series.coeff(s as usize);
    debug_assert!(c.is_integer());
    Ok(c.to_integer())
}

/// Mean of `EMD_d^s` over all tuples of mass `s`; zero for `s = 0`.
pub fn discrete_expected(shape: &BinShape, s: u64) -> Result<Rational> {
    if s == 0 {
        return Ok(Rational::zero());
    }
    Ok(Rational::new(hprime_coeff(shape, s)?, h_coeff(shape, s)))
}

/// Continuous expected value read off the numerator:
/// `N_n(1) prod (n_i - 1)! / (|n| - d + 1)!`. Used to cross-check the
/// direct recursion in [`super::continuous_expected`].
pub fn expected_from_numerator(shape: &BinShape) -> Result<Rational> {
    let n_at_one = NumeratorCache::new().get(shape)?.eval_at_one();
    let num = shape
        .sizes()
        .iter()
        .fold(BigInt::from(1), |acc, &n| acc * factorial(n as u64 - 1));
    let den = factorial((shape.total() - shape.dim() + 1) as u64);
    Ok(n_at_one * Rational::new(num, den))
}
