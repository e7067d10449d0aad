use std::collections::HashMap;
use std::sync::RwLock;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::cost::cost;
use crate::error::{Error, Result};
use crate::rational::{ratio, Rational};
use crate::transport::max_emd;
use crate::types::BinShape;

/// Memo table for the continuous expected value, keyed by sorted shape.
#[derive(Debug, Default)]
pub struct ExpectedValueCache {
    table: RwLock<HashMap<BinShape, Rational>>,
}

impl ExpectedValueCache {
    pub fn new() -> Self {
        Self::default()
    }

    /// Expected `EMD_d` of `d` independent uniformly random probability
    /// distributions on `[n_1], ..., [n_d]`:
    ///
    /// `E_n = (sum_i (n_i - 1) E_{n - e(i)} + C(n)) / (|n| - d + 1)`,
    ///
    /// which is zero at `(1, ..., 1)`.
    pub fn get(&self, shape: &BinShape) -> Rational {
        let key = shape.canonical();
        if let Some(hit) = self.table.read().expect("poisoned cache").get(&key) {
            return hit.clone();
        }
        let sizes = key.sizes();
        let value = if sizes.iter().all(|&n| n == 1) {
            Rational::zero()
        } else {
            let mut acc = Rational::from_integer(BigInt::from(cost(sizes)));
            for i in 0..sizes.len() {
                if sizes[i] == 1 {
                    // weight n_i - 1 vanishes and n - e(i) has a zero coordinate
                    continue;
                }
                let mut lower = sizes.to_vec();
                lower[i] -= 1;
                let lower = BinShape::new(lower).expect("coordinates stay positive");
                acc += self.get(&lower) * Rational::from_integer(BigInt::from(sizes[i] - 1));
            }
            acc / Rational::from_integer(BigInt::from(key.total() - key.dim() + 1))
        };
        self.table
            .write()
            .expect("poisoned cache")
            .entry(key)
            .or_insert_with(|| value.clone());
        value
    }

    pub fn len(&self) -> usize {
        self.table.read().expect("poisoned cache").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

pub fn continuous_expected(shape: &BinShape) -> Rational {
    ExpectedValueCache::new().get(shape)
}

/// `E_(n^d) / (floor(d/2) (n - 1))`.
pub fn unit_normalized_expected(d: usize, n: usize) -> Result<Rational> {
    unit_normalized_expected_with(&ExpectedValueCache::new(), d, n)
}

pub fn unit_normalized_expected_with(cache: &ExpectedValueCache, d: usize, n: usize) -> Result<Rational> {
    if d < 2 || n < 2 {
        return Err(Error::DegenerateShape(format!(
            "unit normalization needs d >= 2 and n >= 2 (got d = {d}, n = {n})"
        )));
    }
    let shape = BinShape::uniform(d, n)?;
    Ok(cache.get(&shape) / ratio(max_emd(d, n), 1))
}
