use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::rational::Rational;

/// Dense polynomial in `t` with exact rational coefficients; also used as a
/// power series truncated at a stated order.
///
/// `coeffs[i]` is the coefficient of `t^i`. Trailing zeros are trimmed, so
/// the zero polynomial has no coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct RationalPoly {
    coeffs: Vec<Rational>,
}

impl RationalPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// `c * t^k`.
    pub fn monomial(c: Rational, k: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); k + 1];
        coeffs[k] = c;
        Self::from_coeffs(coeffs)
    }

    /// `t - 1`.
    pub fn t_minus_one() -> Self {
        Self::from_ints(&[-1, 1])
    }

    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::from_coeffs(
            coeffs
                .iter()
                .map(|&c| Rational::from_integer(BigInt::from(c)))
                .collect(),
        )
    }

    pub fn from_big_ints(coeffs: impl IntoIterator<Item = BigInt>) -> Self {
        Self::from_coeffs(coeffs.into_iter().map(Rational::from_integer).collect())
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// `[t^i]`.
    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|x| x * c).collect())
    }

    /// Multiplies by `t^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![Rational::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Self { coeffs }
    }

    /// Drops every term of degree above `order`.
    pub fn truncate(&self, order: usize) -> Self {
        Self::from_coeffs(self.coeffs.iter().take(order + 1).cloned().collect())
    }

    pub fn pow(&self, k: usize) -> Self {
        let mut out = Self::one();
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    /// Multiplies by `(1 - t)^k`, one factor at a time.
    pub fn mul_one_minus_t_pow(&self, k: usize) -> Self {
        let mut cur = self.coeffs.clone();
        for _ in 0..k {
            let mut next = vec![Rational::zero(); cur.len() + 1];
            for (i, c) in cur.iter().enumerate() {
                next[i] += c;
                next[i + 1] -= c;
            }
            cur = next;
        }
        Self::from_coeffs(cur)
    }

    /// The power series `self / (1 - t)^k`, truncated at `order`.
    /// Each division by `1 - t` is a running prefix sum.
    pub fn div_one_minus_t_pow(&self, k: usize, order: usize) -> Self {
        let mut cur: Vec<Rational> = (0..=order).map(|i| self.coeff(i)).collect();
        for _ in 0..k {
            for i in 1..cur.len() {
                let prev = cur[i - 1].clone();
                cur[i] += prev;
            }
        }
        Self::from_coeffs(cur)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    /// Value at `t = 1`: the coefficient sum.
    pub fn eval_at_one(&self) -> Rational {
        self.coeffs.iter().fold(Rational::zero(), |acc, c| acc + c)
    }

    pub fn is_palindromic(&self) -> bool {
        let c = &self.coeffs;
        (0..c.len() / 2).all(|i| c[i] == c[c.len() - 1 - i])
    }

    /// Nondecreasing up to some peak, nonincreasing after it.
    pub fn is_unimodal(&self) -> bool {
        let c = &self.coeffs;
        let mut i = 1;
        while i < c.len() && c[i] >= c[i - 1] {
            i += 1;
        }
        while i < c.len() && c[i] <= c[i - 1] {
            i += 1;
        }
        i >= c.len()
    }

    /// Whether every coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(Rational::is_integer)
    }
}

impl Add for &RationalPoly {
    type Output = RationalPoly;

    fn add(self, rhs: &RationalPoly) -> RationalPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        RationalPoly::from_coeffs((0..len).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &RationalPoly {
    type Output = RationalPoly;

    fn sub(self, rhs: &RationalPoly) -> RationalPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        RationalPoly::from_coeffs((0..len).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &RationalPoly {
    type Output = RationalPoly;

    fn mul(self, rhs: &RationalPoly) -> RationalPoly {
        if self.is_zero() || rhs.is_zero() {
            return RationalPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        RationalPoly::from_coeffs(out)
    }
}

impl Neg for &RationalPoly {
    type Output = RationalPoly;

    fn neg(self) -> RationalPoly {
        RationalPoly::from_coeffs(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl fmt::Display for RationalPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*t")?,
                _ => write!(f, "{c}*t^{i}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{from_int, ratio};

    #[test]
    fn arithmetic() {
        let p = RationalPoly::from_ints(&[1, 1]);
        let q = RationalPoly::from_ints(&[1, -1]);
        assert_eq!(&p * &q, RationalPoly::from_ints(&[1, 0, -1]));
        assert_eq!(&p + &q, RationalPoly::from_ints(&[2]));
        assert_eq!(&p - &p, RationalPoly::zero());
        assert_eq!(p.pow(3), RationalPoly::from_ints(&[1, 3, 3, 1]));
        assert_eq!(p.shift(2), RationalPoly::from_ints(&[0, 0, 1, 1]));
        assert_eq!(RationalPoly::t_minus_one().pow(2), RationalPoly::from_ints(&[1, -2, 1]));
        assert_eq!(p.eval(&ratio(1, 2)), ratio(3, 2));
        assert_eq!(p.eval_at_one(), from_int(2));
        assert_eq!(p.degree(), Some(1));
        assert_eq!(RationalPoly::zero().degree(), None);
        assert_eq!(-&p, RationalPoly::from_ints(&[-1, -1]));
    }

    #[test]
    fn one_minus_t_round_trip() {
        let p = RationalPoly::from_ints(&[3, 0, 2]);
        let prod = p.mul_one_minus_t_pow(3);
        assert_eq!(prod, &p * &RationalPoly::from_ints(&[1, -1]).pow(3));
        assert_eq!(prod.div_one_minus_t_pow(3, 10), p);
        // 1/(1-t)^2 = sum (s+1) t^s
        let series = RationalPoly::one().div_one_minus_t_pow(2, 4);
        assert_eq!(series, RationalPoly::from_ints(&[1, 2, 3, 4, 5]));
    }

    #[test]
    fn shape_predicates() {
        assert!(RationalPoly::from_ints(&[1, 4, 1]).is_palindromic());
        assert!(!RationalPoly::from_ints(&[1, 4, 2]).is_palindromic());
        assert!(RationalPoly::from_ints(&[1, 4, 4, 1]).is_unimodal());
        assert!(!RationalPoly::from_ints(&[2, 1, 2]).is_unimodal());
        assert!(RationalPoly::from_ints(&[1, 4, 1]).truncate(1) == RationalPoly::from_ints(&[1, 4]));
        assert_eq!(RationalPoly::from_ints(&[0, 2, 0, 0]).to_string(), "2*t");
    }
}
