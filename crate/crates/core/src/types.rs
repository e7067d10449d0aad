//! Histograms, multi-indices and bin shapes. All coordinates are 1-based.

use std::fmt;

use crate::error::{Error, Result};

/// A histogram: `n >= 1` nonnegative integer bin counts with total mass `s`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Composition {
    bins: Vec<u64>,
}

impl Composition {
    pub fn new(bins: Vec<u64>) -> Result<Self> {
        if bins.is_empty() {
            return Err(Error::InvalidInput(
                "a composition needs at least one bin".into(),
            ));
        }
        Ok(Self { bins })
    }

    /// Like [`Composition::new`], but also checks the total against `mass`.
    pub fn with_mass(bins: Vec<u64>, mass: u64) -> Result<Self> {
        let c = Self::new(bins)?;
        if c.mass() != mass {
            return Err(Error::MassMismatch {
                index: 0,
                expected: mass,
                found: c.mass(),
            });
        }
        Ok(c)
    }

    pub fn bins(&self) -> &[u64] {
        &self.bins
    }

    /// Number of bins `n`.
    pub fn len(&self) -> usize {
        self.bins.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bins.is_empty()
    }

    pub fn mass(&self) -> u64 {
        self.bins.iter().sum()
    }

    /// Count in bin `k` (1-based).
    pub fn get(&self, k: usize) -> u64 {
        self.bins[k - 1]
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, b) in self.bins.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{b}")?;
        }
        write!(f, ")")
    }
}

/// A position `(m_1, ..., m_d)` in `[n_1] x ... x [n_d]`, 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiIndex(Vec<usize>);

impl MultiIndex {
    pub fn new(coords: Vec<usize>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::InvalidInput("a multi-index needs d >= 1".into()));
        }
        if coords.contains(&0) {
            return Err(Error::InvalidInput(
                "multi-index coordinates are 1-based".into(),
            ));
        }
        Ok(Self(coords))
    }

    pub(crate) fn from_vec_unchecked(coords: Vec<usize>) -> Self {
        Self(coords)
    }

    pub fn coords(&self) -> &[usize] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.0
    }

    /// Product (componentwise) order: `self <= other` in every coordinate.
    pub fn le_product(&self, other: &MultiIndex) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// Whether the index lies inside `shape`.
    pub fn fits(&self, shape: &BinShape) -> bool {
        self.dim() == shape.dim()
            && self.0.iter().zip(shape.sizes()).all(|(&m, &n)| m >= 1 && m <= n)
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Bin counts `(n_1, ..., n_d)` of the compared histograms.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BinShape(Vec<usize>);

impl BinShape {
    pub fn new(sizes: Vec<usize>) -> Result<Self> {
        if sizes.is_empty() {
            return Err(Error::InvalidInput("a bin shape needs d >= 1".into()));
        }
        if sizes.contains(&0) {
            return Err(Error::InvalidInput("every bin count must be >= 1".into()));
        }
        Ok(Self(sizes))
    }

    /// The shape `(n, ..., n)` with `d` coordinates.
    pub fn uniform(d: usize, n: usize) -> Result<Self> {
        Self::new(vec![n; d])
    }

    pub fn sizes(&self) -> &[usize] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    /// `|n| = n_1 + ... + n_d`.
    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    /// Number of cells `n_1 * ... * n_d`, or `None` on overflow.
    pub fn cell_count(&self) -> Option<u128> {
        self.0
            .iter()
            .try_fold(1u128, |acc, &n| acc.checked_mul(n as u128))
    }

    /// Coordinates sorted ascending; all shape-indexed recursions are
    /// invariant under permuting coordinates.
    pub fn canonical(&self) -> BinShape {
        let mut v = self.0.clone();
        v.sort_unstable();
        BinShape(v)
    }

    /// The shape itself read as a multi-index (its top corner).
    pub fn corner(&self) -> MultiIndex {
        MultiIndex(self.0.clone())
    }

    /// Iterates every multi-index of the shape in row-major (lexicographic)
    /// order.
    pub fn indices(&self) -> impl Iterator<Item = MultiIndex> + '_ {
        let total = self.cell_count().unwrap_or(0);
        let mut cur: Vec<usize> = vec![1; self.dim()];
        let mut emitted: u128 = 0;
        std::iter::from_fn(move || {
            if emitted == total {
                return None;
            }
            let out = MultiIndex(cur.clone());
            emitted += 1;
            for axis in (0..cur.len()).rev() {
                if cur[axis] < self.0[axis] {
                    cur[axis] += 1;
                    break;
                }
                cur[axis] = 1;
            }
            Some(out)
        })
    }

    /// Row-major offset of `m` (which must fit the shape).
    pub fn offset(&self, m: &MultiIndex) -> usize {
        m.0.iter()
            .zip(&self.0)
            .fold(0usize, |acc, (&c, &n)| acc * n + (c - 1))
    }
}

impl fmt::Display for BinShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        MultiIndex(self.0.clone()).fmt(f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn composition_basics() {
        let c = Composition::new(vec![1, 2, 3, 4]).unwrap();
        assert_eq!(c.mass(), 10);
        assert_eq!(c.len(), 4);
        assert_eq!(c.get(2), 2);
        assert!(Composition::new(vec![]).is_err());
        assert!(Composition::with_mass(vec![1, 1], 3).is_err());
        assert_eq!(c.to_string(), "(1,2,3,4)");
    }

    #[test]
    fn multi_index_rejects_zero() {
        assert!(MultiIndex::new(vec![1, 0]).is_err());
        assert!(MultiIndex::new(vec![]).is_err());
    }

    #[test]
    fn shape_indices_row_major() {
        let shape = BinShape::new(vec![2, 3]).unwrap();
        let all: Vec<Vec<usize>> = shape.indices().map(MultiIndex::into_vec).collect();
        assert_eq!(
            all,
            vec![
                vec![1, 1],
                vec![1, 2],
                vec![1, 3],
                vec![2, 1],
                vec![2, 2],
                vec![2, 3]
            ]
        );
        for (i, m) in shape.indices().enumerate() {
            assert_eq!(shape.offset(&m), i);
        }
    }

    #[test]
    fn shape_validation() {
        assert!(BinShape::new(vec![]).is_err());
        assert!(BinShape::new(vec![2, 0]).is_err());
        let s = BinShape::new(vec![3, 1, 2]).unwrap();
        assert_eq!(s.total(), 6);
        assert_eq!(s.cell_count(), Some(6));
        assert_eq!(s.canonical().sizes(), &[1, 2, 3]);
    }
}
