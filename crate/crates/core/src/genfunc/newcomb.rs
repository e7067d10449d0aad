use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::poly::RationalPoly;
use crate::types::BinShape;

/// `binom(n, k)` as a big integer; zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// Number of permutations of the multiset `{1^(n_1-1), ..., d^(n_d-1)}`
/// with exactly `i` descents, by the alternating binomial sum.
pub fn newcomb_coefficient(shape: &BinShape, i: usize) -> BigInt {
    let d = shape.dim() as u64;
    let top = shape.total() as u64 - d + 1;
    let mut acc = BigInt::zero();
    for j in 0..=i as u64 {
        let rest = i as u64 - j;
        let prod = shape
            .sizes()
            .iter()
            .fold(BigInt::one(), |p, &n| p * binomial(rest + n as u64 - 1, n as u64 - 1));
        let term = binomial(top, j) * prod;
        if j % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

/// Degree of [`w_poly`]: `sum (n_i - 1) - max (n_i - 1)`, the most descents
/// a permutation of the multiset can have.
pub fn w_degree(shape: &BinShape) -> usize {
    let parts = shape.sizes().iter().map(|n| n - 1);
    let max = parts.clone().max().unwrap_or(0);
    parts.sum::<usize>() - max
}

/// Numerator `W_n(t)` of `H_n(1, t) = W_n(t) / (1 - t)^(|n| - d + 1)`; its
/// coefficients are the Simon Newcomb numbers.
pub fn w_poly(shape: &BinShape) -> RationalPoly {
    let bound: usize = shape.sizes().iter().map(|n| n - 1).sum();
    RationalPoly::from_big_ints((0..=bound).map(|i| newcomb_coefficient(shape, i)))
}

/// `W_n(1) = (|n| - d)! / prod (n_i - 1)!`, the number of maximal chains in
/// `[n_1] x ... x [n_d]`.
pub fn w_at_one(shape: &BinShape) -> BigInt {
    let d = shape.dim() as u64;
    let num = factorial(shape.total() as u64 - d);
    let den = shape
        .sizes()
        .iter()
        .fold(BigInt::one(), |acc, &n| acc * factorial(n as u64 - 1));
    num / den
}

/// Number of d-tuples of histograms of mass `s` over the shape:
/// `prod binom(s + n_i - 1, n_i - 1)`.
pub fn h_coeff(shape: &BinShape, s: u64) -> BigInt {
    shape
        .sizes()
        .iter()
        .fold(BigInt::one(), |acc, &n| acc * binomial(s + n as u64 - 1, n as u64 - 1))
}
