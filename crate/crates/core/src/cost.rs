//! The transport cost of a cell: its taxicab distance to the main diagonal.
//!
//! [`cost`] (sorted, outside-in pairing) is the canonical form.
//! [`cost_min_form`] is the defining minimum over pivot coordinates and
//! exists as an oracle. [`cost_range`] is the alternative `max - min` cost,
//! which agrees with [`cost`] only for `d <= 3`.

use crate::error::{Error, Result};
use crate::types::{BinShape, MultiIndex};

/// Default cap on the number of cells of a dense cost array.
pub const DEFAULT_DENSE_CAP: u128 = 10_000_000;

/// Coordinates rearranged in nondecreasing order.
pub fn sort_coords(m: &MultiIndex) -> MultiIndex {
    let mut v = m.coords().to_vec();
    v.sort_unstable();
    MultiIndex::from_vec_unchecked(v)
}

/// `min_i sum_{j != i} |m_i - m_j|`. Quadratic in `d`.
pub fn cost_min_form(m: &[usize]) -> u64 {
    m.iter()
        .map(|&pivot| m.iter().map(|&x| pivot.abs_diff(x) as u64).sum::<u64>())
        .min()
        .unwrap_or(0)
}

/// Sum of outside-in gaps of already sorted coordinates.
#[inline]
pub fn cost_of_sorted(sorted: &[usize]) -> u64 {
    let d = sorted.len();
    (0..d / 2)
        .map(|i| (sorted[d - 1 - i] - sorted[i]) as u64)
        .sum()
}

/// Cost of a cell: sort the coordinates and sum `m~_{d-i+1} - m~_i` for
/// `i = 1..floor(d/2)`.
pub fn cost(m: &[usize]) -> u64 {
    let mut v = m.to_vec();
    v.sort_unstable();
    cost_of_sorted(&v)
}

/// `max m_i - min m_i`, shown for comparison only.
pub fn cost_range(m: &[usize]) -> u64 {
    match (m.iter().max(), m.iter().min()) {
        (Some(hi), Some(lo)) => (hi - lo) as u64,
        _ => 0,
    }
}

/// Effect on the cost of adding one to a single coordinate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CostStep {
    Increase,
    Decrease,
    Unchanged,
}

impl CostStep {
    pub fn delta(self) -> i64 {
        match self {
            CostStep::Increase => 1,
            CostStep::Decrease => -1,
            CostStep::Unchanged => 0,
        }
    }
}

/// Classifies `cost(m + e(i)) - cost(m)` from the rank of `m_i` alone,
/// without recomputing either cost. `i` is 1-based.
///
/// With `M = floor((d+1)/2) + 1` (1-based rank just above the median):
/// the cost rises if `m_i >= m~_M`; for even `d` it falls otherwise; for odd
/// `d` it falls if `m_i < m~_{M-1}` and is unchanged if
/// `m_i = m~_{M-1} < m~_M`.
pub fn cost_increment_case(m: &[usize], i: usize) -> Result<CostStep> {
    let d = m.len();
    if i == 0 || i > d {
        return Err(Error::InvalidInput(format!(
            "coordinate {i} out of range 1..={d}"
        )));
    }
    if d == 1 {
        return Ok(CostStep::Unchanged);
    }
    let mut sorted = m.to_vec();
    sorted.sort_unstable();
    let big_m = d.div_ceil(2) + 1;
    let above = sorted[big_m - 1];
    let mi = m[i - 1];
    if mi >= above {
        return Ok(CostStep::Increase);
    }
    if d.is_multiple_of(2) {
        return Ok(CostStep::Decrease);
    }
    let median = sorted[big_m - 2];
    if mi < median {
        Ok(CostStep::Decrease)
    } else {
        Ok(CostStep::Unchanged)
    }
}

/// A dense integer array over a [`BinShape`], stored row-major.
///
/// Holds the built-in cost array as well as user-supplied arrays for Monge
/// checking, so entries are signed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CostArray {
    shape: BinShape,
    entries: Vec<i64>,
}

impl CostArray {
    pub fn from_entries(shape: BinShape, entries: Vec<i64>) -> Result<Self> {
        let cells = shape.cell_count().ok_or_else(|| Error::CapacityExceeded {
            what: "dense array".into(),
            needed: u128::MAX,
            cap: DEFAULT_DENSE_CAP,
        })?;
        if cells != entries.len() as u128 {
            return Err(Error::ShapeMismatch(format!(
                "shape {shape} has {cells} cells but {} entries were given",
                entries.len()
            )));
        }
        Ok(Self { shape, entries })
    }

    /// Builds a 2-d array from rows.
    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map(Vec::len).unwrap_or(0);
        if r == 0 || c == 0 || rows.iter().any(|row| row.len() != c) {
            return Err(Error::ShapeMismatch("rows must be nonempty and equal length".into()));
        }
        Self::from_entries(BinShape::new(vec![r, c])?, rows.concat())
    }

    pub fn shape(&self) -> &BinShape {
        &self.shape
    }

    pub fn entries(&self) -> &[i64] {
        &self.entries
    }

    pub fn get(&self, m: &MultiIndex) -> i64 {
        self.entries[self.shape.offset(m)]
    }

    pub(crate) fn at_offset(&self, offset: usize) -> i64 {
        self.entries[offset]
    }
}

/// Materializes the cost of every cell of `shape`, refusing shapes with more
/// than `cap` cells.
pub fn build_cost_array(shape: &BinShape, cap: u128) -> Result<CostArray> {
    let cells = shape.cell_count().unwrap_or(u128::MAX);
    if cells > cap {
        return Err(Error::CapacityExceeded {
            what: format!("cost array of shape {shape}"),
            needed: cells,
            cap,
        });
    }
    let entries = shape.indices().map(|m| cost(m.coords()) as i64).collect();
    CostArray::from_entries(shape.clone(), entries)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mi(v: &[usize]) -> MultiIndex {
        MultiIndex::new(v.to_vec()).unwrap()
    }

    /// All of `[n]^d` in lexicographic order.
    fn cube(d: usize, n: usize) -> Vec<Vec<usize>> {
        BinShape::uniform(d, n)
            .unwrap()
            .indices()
            .map(MultiIndex::into_vec)
            .collect()
    }

    #[test]
    fn sort_examples() {
        assert_eq!(sort_coords(&mi(&[7, 4, 5, 3, 1])).coords(), &[1, 3, 4, 5, 7]);
        assert_eq!(sort_coords(&mi(&[2, 2, 2])).coords(), &[2, 2, 2]);
        assert_eq!(sort_coords(&mi(&[3, 1])).coords(), &[1, 3]);
    }

    #[test]
    fn cost_examples() {
        assert_eq!(cost_min_form(&[5, 4, 5, 5, 5, 7, 5]), 3);
        assert_eq!(cost_min_form(&[4, 4, 4, 4]), 0);
        assert_eq!(cost_min_form(&[5, 2, 2]), 3);
        assert_eq!(cost(&[7, 4, 5, 3, 1]), 8);
        assert_eq!(cost(&[1, 1, 2, 2]), 2);
        assert_eq!(cost(&[1, 3]), 2);
        assert_eq!(cost_range(&[1, 1, 2, 2]), 1);
        assert_eq!(cost_range(&[6, 6, 6]), 0);
        assert_eq!(cost_range(&[1, 3, 5]), 4);
        assert_eq!(cost(&[1, 3, 5]), 4);
    }

    #[test]
    fn min_form_equals_sorted_form_exhaustively() {
        for d in 1..=6 {
            for n in 1..=5 {
                for m in cube(d, n) {
                    assert_eq!(cost_min_form(&m), cost(&m), "m = {m:?}");
                }
            }
        }
    }

    #[test]
    fn range_form_agrees_only_up_to_three() {
        for d in 1..=3 {
            for m in cube(d, 6) {
                assert_eq!(cost_range(&m), cost(&m), "m = {m:?}");
            }
        }
        assert!(cube(4, 2).iter().any(|m| cost_range(m) < cost(m)));
        assert!(cost_range(&[1, 1, 2, 2]) < cost(&[1, 1, 2, 2]));
    }

    #[test]
    fn increment_examples() {
        // (5,4,5,5,5,7,5): bumping the 7 costs 3 -> 4.
        assert_eq!(
            cost_increment_case(&[5, 4, 5, 5, 5, 7, 5], 6).unwrap(),
            CostStep::Increase
        );
        assert_eq!(cost_increment_case(&[1, 3], 1).unwrap(), CostStep::Decrease);
        assert_eq!(cost_increment_case(&[2, 2, 2], 1).unwrap(), CostStep::Increase);
        assert_eq!(cost_increment_case(&[1, 1, 3], 1).unwrap(), CostStep::Unchanged);
        assert!(cost_increment_case(&[1, 2], 3).is_err());
        assert!(cost_increment_case(&[1, 2], 0).is_err());
    }

    #[test]
    fn increment_case_matches_recomputation() {
        for d in 1..=5 {
            for m in cube(d, 4) {
                let base = cost(&m) as i64;
                for i in 1..=d {
                    let mut bumped = m.clone();
                    bumped[i - 1] += 1;
                    let diff = cost(&bumped) as i64 - base;
                    assert!((-1..=1).contains(&diff));
                    assert_eq!(
                        cost_increment_case(&m, i).unwrap().delta(),
                        diff,
                        "m = {m:?}, i = {i}"
                    );
                }
            }
        }
    }

    #[test]
    fn built_arrays() {
        let a = build_cost_array(&BinShape::new(vec![2, 2]).unwrap(), DEFAULT_DENSE_CAP).unwrap();
        assert_eq!(a.entries(), &[0, 1, 1, 0]);
        let a = build_cost_array(&BinShape::new(vec![3, 3]).unwrap(), DEFAULT_DENSE_CAP).unwrap();
        assert_eq!(a.entries(), &[0, 1, 2, 1, 0, 1, 2, 1, 0]);
        let a = build_cost_array(&BinShape::uniform(4, 1).unwrap(), DEFAULT_DENSE_CAP).unwrap();
        assert_eq!(a.entries(), &[0]);
        assert_eq!(a.get(&mi(&[1, 1, 1, 1])), 0);
    }

    #[test]
    fn cost_array_cap() {
        let shape = BinShape::uniform(6, 10).unwrap();
        assert!(matches!(
            build_cost_array(&shape, 1000),
            Err(Error::CapacityExceeded { needed: 1_000_000, .. })
        ));
    }

    #[test]
    fn from_entries_checks_len() {
        let shape = BinShape::new(vec![2, 2]).unwrap();
        assert!(CostArray::from_entries(shape, vec![1, 2, 3]).is_err());
        assert!(CostArray::from_rows(&[vec![1, 2], vec![3]]).is_err());
    }

    mod props {
        use super::super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn permutation_invariant(mut m in prop::collection::vec(1usize..9, 1..8), seed in any::<u64>()) {
                let before = cost(&m);
                // deterministic shuffle from the seed
                let len = m.len();
                let mut s = seed;
                for i in (1..len).rev() {
                    s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                    let j = (s >> 33) as usize % (i + 1);
                    m.swap(i, j);
                }
                prop_assert_eq!(cost(&m), before);
            }

            #[test]
            fn sorted_form_matches_min_form(m in prop::collection::vec(1usize..20, 1..10)) {
                prop_assert_eq!(cost(&m), cost_min_form(&m));
            }
        }
    }
}
