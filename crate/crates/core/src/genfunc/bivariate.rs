use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::numerator::lower_neighbors;
use super::poly::RationalPoly;
use crate::cost::cost;
use crate::error::{Error, Result};
use crate::types::BinShape;

/// Default cap on `subshapes * (s_max + 1) * (r_max + 1)` grid cells.
pub const DEFAULT_BIVARIATE_BUDGET: u128 = 20_000_000;

/// `H_n(z, t)` truncated at `t`-order `s_max`: for each `z`-exponent `r`,
/// the polynomial in `t` whose `t^s` coefficient counts tuples of mass `s`
/// with `EMD = r`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BivariateSeries {
    order: usize,
    terms: BTreeMap<u64, RationalPoly>,
}

impl BivariateSeries {
    /// Truncation order in `t`.
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn terms(&self) -> &BTreeMap<u64, RationalPoly> {
        &self.terms
    }

    /// `[z^r t^s]`.
    pub fn coeff(&self, r: u64, s: usize) -> BigInt {
        self.terms
            .get(&r)
            .map(|p| p.coeff(s).to_integer())
            .unwrap_or_else(BigInt::zero)
    }

    /// `H_n(1, t)` truncated.
    pub fn at_z_one(&self) -> RationalPoly {
        self.terms
            .values()
            .fold(RationalPoly::zero(), |acc, p| &acc + p)
    }

    /// `dH_n/dz` at `z = 1`, truncated.
    pub fn z_derivative_at_one(&self) -> RationalPoly {
        self.terms.iter().fold(RationalPoly::zero(), |acc, (&r, p)| {
            &acc + &p.scale(&crate::rational::from_int(r))
        })
    }

    /// Nonzero `[z^r t^s]` for fixed `s`, keyed by `r`.
    pub fn histogram_at(&self, s: usize) -> BTreeMap<u64, BigInt> {
        self.terms
            .iter()
            .map(|(&r, p)| (r, p.coeff(s).to_integer()))
            .filter(|(_, c)| !c.is_zero())
            .collect()
    }
}

/// Largest cell cost in the shape. The cost is convex, so the maximum sits
/// at a vertex of the box.
fn max_cell_cost(shape: &BinShape) -> u64 {
    let sizes = shape.sizes();
    let d = sizes.len();
    let mut best = 0;
    let mut vertex = vec![1usize; d];
    for mask in 0u64..(1u64 << d) {
        for i in 0..d {
            vertex[i] = if mask >> i & 1 == 1 { sizes[i] } else { 1 };
        }
        best = best.max(cost(&vertex));
    }
    best
}

type Grid = Vec<Vec<BigInt>>;

struct Builder {
    order: usize,
    rows: usize,
    memo: HashMap<BinShape, Grid>,
}

impl Builder {
    fn grid(&mut self, shape: &BinShape) -> Result<Grid> {
        let key = shape.canonical();
        if let Some(hit) = self.memo.get(&key) {
            return Ok(hit.clone());
        }
        let cols = self.order + 1;
        let mut out = vec![vec![BigInt::zero(); cols]; self.rows];
        if key.sizes().iter().all(|&n| n == 1) {
            out[0].iter_mut().for_each(|c| *c = BigInt::one());
        } else {
            // inclusion-exclusion numerator
            for (lower, size) in lower_neighbors(&key)? {
                let sub = self.grid(&lower)?;
                let sign_positive = size % 2 == 1;
                for (row, sub_row) in out.iter_mut().zip(&sub) {
                    for (c, v) in row.iter_mut().zip(sub_row) {
                        if sign_positive {
                            *c += v;
                        } else {
                            *c -= v;
                        }
                    }
                }
            }
            // divide by 1 - z^C t: H[r][s] += H[r - C][s - 1]
            let step = cost(key.sizes()) as usize;
            for s in 1..cols {
                for r in step..self.rows {
                    let prev = out[r - step][s - 1].clone();
                    out[r][s] += prev;
                }
            }
        }
        self.memo.insert(key, out.clone());
        Ok(out)
    }
}

/// `H_n(z, t)` up to `t^s_max`, by the subset recursion
/// `H_n = sum_A (-1)^(|A|-1) H_{n - e(A)} / (1 - z^C(n) t)`
/// with `H_(1,...,1) = 1 / (1 - t)`.
pub fn h_bivariate(shape: &BinShape, s_max: usize) -> Result<BivariateSeries> {
    h_bivariate_with_budget(shape, s_max, DEFAULT_BIVARIATE_BUDGET)
}

pub fn h_bivariate_with_budget(shape: &BinShape, s_max: usize, budget: u128) -> Result<BivariateSeries> {
    let rows = s_max as u64 * max_cell_cost(shape) + 1;
    let subshapes: u128 = shape.sizes().iter().map(|&n| n as u128).product();
    let needed = subshapes
        .saturating_mul(s_max as u128 + 1)
        .saturating_mul(rows as u128);
    if needed > budget {
        return Err(Error::CapacityExceeded {
            what: format!("bivariate series for shape {shape} to order {s_max}"),
            needed,
            cap: budget,
        });
    }
    let mut builder = Builder {
        order: s_max,
        rows: rows as usize,
        memo: HashMap::new(),
    };
    let grid = builder.grid(shape)?;
    let terms = grid
        .into_iter()
        .enumerate()
        .filter_map(|(r, row)| {
            let poly = RationalPoly::from_big_ints(row);
            (!poly.is_zero()).then_some((r as u64, poly))
        })
        .collect();
    Ok(BivariateSeries {
        order: s_max,
        terms,
    })
}
