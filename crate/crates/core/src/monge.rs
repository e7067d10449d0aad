//! Monge-property verification for finite d-dimensional arrays.
//!
//! An array `A` is Monge if `A(x ∧ y) + A(x ∨ y) <= A(x) + A(y)` for every
//! pair of cells, with `∧`/`∨` the componentwise min/max. [`check_planes`]
//! reduces this to adjacent 2x2 squares inside every two-axis plane and is
//! the checker to use; [`check_full`] tests every pair and serves as its
//! oracle.

use crate::cost::CostArray;
use crate::types::MultiIndex;

/// Outcome of a Monge check. On failure `witness` holds a violating pair
/// `(x, y)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MongeVerdict {
    pub holds: bool,
    pub witness: Option<(MultiIndex, MultiIndex)>,
}

impl MongeVerdict {
    fn ok() -> Self {
        Self {
            holds: true,
            witness: None,
        }
    }

    fn violated(x: MultiIndex, y: MultiIndex) -> Self {
        Self {
            holds: false,
            witness: Some((x, y)),
        }
    }
}

fn strides(sizes: &[usize]) -> Vec<usize> {
    let mut out = vec![1; sizes.len()];
    for axis in (0..sizes.len().saturating_sub(1)).rev() {
        out[axis] = out[axis + 1] * sizes[axis + 1];
    }
    out
}

/// Checks the pair inequality for all unordered pairs of cells, visiting
/// pairs in lexicographic order. Quadratic in the number of cells.
pub fn check_full(a: &CostArray) -> MongeVerdict {
    let shape = a.shape();
    let cells: Vec<MultiIndex> = shape.indices().collect();
    let mut lo = vec![0usize; shape.dim()];
    let mut hi = vec![0usize; shape.dim()];
    for (xo, x) in cells.iter().enumerate() {
        for (yo, y) in cells.iter().enumerate().skip(xo + 1) {
            let mut comparable = true;
            for (axis, (&xc, &yc)) in x.coords().iter().zip(y.coords()).enumerate() {
                lo[axis] = xc.min(yc);
                hi[axis] = xc.max(yc);
                if xc > yc {
                    comparable = false;
                }
            }
            // comparable pairs satisfy the inequality with equality
            if comparable {
                continue;
            }
            let lo_off = shape.offset(&MultiIndex::from_vec_unchecked(lo.clone()));
            let hi_off = shape.offset(&MultiIndex::from_vec_unchecked(hi.clone()));
            if a.at_offset(lo_off) + a.at_offset(hi_off) > a.at_offset(xo) + a.at_offset(yo) {
                return MongeVerdict::violated(x.clone(), y.clone());
            }
        }
    }
    MongeVerdict::ok()
}

/// Checks `A(m) + A(m + e_i + e_j) <= A(m + e_i) + A(m + e_j)` for every pair
/// of axes `i < j` and every cell `m` where both steps stay in range.
///
/// The witness of a failure is `(m + e_j, m + e_i)`, an incomparable pair
/// whose min and max are `m` and `m + e_i + e_j`.
pub fn check_planes(a: &CostArray) -> MongeVerdict {
    let shape = a.shape();
    let sizes = shape.sizes();
    let stride = strides(sizes);
    let d = shape.dim();
    for m in shape.indices() {
        let base = shape.offset(&m);
        let c = m.coords();
        for i in 0..d {
            if c[i] == sizes[i] {
                continue;
            }
            for j in (i + 1)..d {
                if c[j] == sizes[j] {
                    continue;
                }
                let lhs = a.at_offset(base) + a.at_offset(base + stride[i] + stride[j]);
                let rhs = a.at_offset(base + stride[i]) + a.at_offset(base + stride[j]);
                if lhs > rhs {
                    let mut x = c.to_vec();
                    x[j] += 1;
                    let mut y = c.to_vec();
                    y[i] += 1;
                    return MongeVerdict::violated(
                        MultiIndex::from_vec_unchecked(x),
                        MultiIndex::from_vec_unchecked(y),
                    );
                }
            }
        }
    }
    MongeVerdict::ok()
}

/// Whether `(x, y)` really violates the Monge inequality in `a`.
pub fn is_violation(a: &CostArray, x: &MultiIndex, y: &MultiIndex) -> bool {
    let lo: Vec<usize> = x.coords().iter().zip(y.coords()).map(|(p, q)| *p.min(q)).collect();
    let hi: Vec<usize> = x.coords().iter().zip(y.coords()).map(|(p, q)| *p.max(q)).collect();
    a.get(&MultiIndex::from_vec_unchecked(lo)) + a.get(&MultiIndex::from_vec_unchecked(hi))
        > a.get(x) + a.get(y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cost::{build_cost_array, DEFAULT_DENSE_CAP};
    use crate::types::BinShape;

    fn builtin(sizes: &[usize]) -> CostArray {
        build_cost_array(&BinShape::new(sizes.to_vec()).unwrap(), DEFAULT_DENSE_CAP).unwrap()
    }

    #[test]
    fn builtin_arrays_are_monge() {
        for sizes in [vec![3, 3], vec![4, 4, 4], vec![2, 2, 2, 2], vec![1, 1, 1]] {
            let a = builtin(&sizes);
            assert!(check_full(&a).holds, "{sizes:?}");
            assert!(check_planes(&a).holds, "{sizes:?}");
        }
    }

    #[test]
    fn anti_identity_is_not_monge() {
        let a = CostArray::from_rows(&[vec![1, 0], vec![0, 1]]).unwrap();
        let full = check_full(&a);
        assert!(!full.holds);
        let (x, y) = full.witness.unwrap();
        assert_eq!(x.coords(), &[1, 2]);
        assert_eq!(y.coords(), &[2, 1]);

        let planes = check_planes(&a);
        assert!(!planes.holds);
        let (x, y) = planes.witness.unwrap();
        assert_eq!(x.coords(), &[1, 2]);
        assert_eq!(y.coords(), &[2, 1]);
        assert!(is_violation(&a, &x, &y));
    }

    #[test]
    fn single_cell_is_monge() {
        let a = CostArray::from_entries(BinShape::uniform(3, 1).unwrap(), vec![42]).unwrap();
        assert!(check_full(&a).holds);
        assert!(check_planes(&a).holds);
    }

    #[test]
    fn three_d_violation_found_by_both() {
        let mut entries = builtin(&[3, 3, 3]).entries().to_vec();
        // raise the (1,1,1) corner: it is the minimum of many squares
        entries[0] += 5;
        let a = CostArray::from_entries(BinShape::uniform(3, 3).unwrap(), entries).unwrap();
        let full = check_full(&a);
        let planes = check_planes(&a);
        assert!(!full.holds && !planes.holds);
        let (x, y) = planes.witness.unwrap();
        assert!(is_violation(&a, &x, &y));
        let (x, y) = full.witness.unwrap();
        assert!(is_violation(&a, &x, &y));
    }
}
