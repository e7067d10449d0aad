use std::collections::BTreeMap;

use gemd::analysis::{emd_histogram, enumerate_compositions, histogram_from_genfunc};
use gemd::genfunc::{
    continuous_expected, discrete_expected, expected_from_numerator, h_bivariate, h_coeff,
    hprime_coeff, n_poly, w_poly, RationalPoly,
};
use gemd::transport::{discrete_emd, max_emd};
use gemd::{BinShape, DistTuple};
use num_bigint::BigInt;

fn shape(sizes: &[usize]) -> BinShape {
    BinShape::new(sizes.to_vec()).unwrap()
}

/// Exhaustive EMD histogram over every tuple of the given shape and mass.
fn enumerate(sizes: &[usize], s: u64) -> BTreeMap<u64, BigInt> {
    let axes: Vec<Vec<_>> = sizes
        .iter()
        .map(|&n| enumerate_compositions(s, n).collect())
        .collect();
    let mut hist = BTreeMap::new();
    let mut idx = vec![0usize; sizes.len()];
    'outer: loop {
        let t = DistTuple::new(idx.iter().zip(&axes).map(|(&i, a)| a[i].clone()).collect()).unwrap();
        *hist.entry(discrete_emd(&t)).or_insert_with(|| BigInt::from(0)) += 1;
        for k in (0..sizes.len()).rev() {
            idx[k] += 1;
            if idx[k] < axes[k].len() {
                continue 'outer;
            }
            idx[k] = 0;
        }
        return hist;
    }
}

const SHAPES: &[&[usize]] = &[
    &[1, 1, 1],
    &[2, 2],
    &[2, 3],
    &[3, 3],
    &[2, 2, 2],
    &[1, 2, 3],
    &[2, 2, 3],
    &[3, 3, 3],
    &[2, 2, 2, 2],
    &[4, 2],
];

#[test]
fn generating_function_matches_enumeration() {
    for sizes in SHAPES {
        let sh = shape(sizes);
        let series = h_bivariate(&sh, 4).unwrap();
        for s in 0..=4u64 {
            let hist = enumerate(sizes, s);
            let total: BigInt = hist.values().sum();
            let weighted: BigInt = hist.iter().map(|(r, c)| c * BigInt::from(*r)).sum();
            assert_eq!(total, h_coeff(&sh, s), "{sizes:?} s = {s}");
            assert_eq!(hprime_coeff(&sh, s).unwrap(), weighted, "{sizes:?} s = {s}");
            assert_eq!(series.histogram_at(s as usize), hist, "{sizes:?} s = {s}");
        }
    }
}

#[test]
fn derivative_series_has_polynomial_numerator() {
    // EMD sums from enumeration, times (1 - t)^(|n| - d + 2), must terminate
    for sizes in [&[2usize, 2][..], &[2, 3], &[3, 3], &[1, 2, 3], &[2, 2, 2]] {
        let sh = shape(sizes);
        let k = sh.total() - sh.dim() + 2;
        let order = 12;
        let sums = RationalPoly::from_big_ints((0..=order as u64).map(|s| {
            enumerate(sizes, s)
                .into_iter()
                .map(|(r, c)| c * BigInt::from(r))
                .sum::<BigInt>()
        }));
        let back = sums.mul_one_minus_t_pow(k).truncate(order);
        let numerator = n_poly(&sh).unwrap();
        assert!(numerator.degree().unwrap() + 2 < order, "{sizes:?}");
        assert_eq!(back, numerator, "{sizes:?}");
    }
}

#[test]
fn numerator_route_agrees_with_direct_recursion() {
    for sizes in SHAPES.iter().chain([&[5usize, 4, 3][..], &[6, 6]].iter()) {
        let sh = shape(sizes);
        assert_eq!(expected_from_numerator(&sh).unwrap(), continuous_expected(&sh), "{sizes:?}");
    }
}

#[test]
fn permuting_the_shape_changes_nothing() {
    for (a, b) in [(&[1usize, 2, 3][..], &[3usize, 1, 2][..]), (&[4, 2, 2], &[2, 4, 2])] {
        let (a, b) = (shape(a), shape(b));
        assert_eq!(w_poly(&a), w_poly(&b));
        assert_eq!(n_poly(&a).unwrap(), n_poly(&b).unwrap());
        assert_eq!(continuous_expected(&a), continuous_expected(&b));
    }
}

#[test]
fn histograms_tie_to_the_generating_function() {
    for (d, n, s) in [(2, 3, 4), (3, 3, 3), (4, 2, 5), (5, 3, 2)] {
        let h = emd_histogram(d, n, s, 1_000_000).unwrap();
        let g = histogram_from_genfunc(d, n, s).unwrap();
        assert_eq!(h, g, "d = {d}, n = {n}, s = {s}");
        let sh = BinShape::uniform(d, n).unwrap();
        assert_eq!(BigInt::from(h.total()), h_coeff(&sh, s));
        assert_eq!(h.value_sum(), hprime_coeff(&sh, s).unwrap());
        assert_eq!(h.mean(), discrete_expected(&sh, s).unwrap());
        assert_eq!(h.max_value(), Some(s * max_emd(d, n)));
    }
}

#[test]
fn enumeration_respects_its_budget() {
    assert!(emd_histogram(5, 3, 5, 1_000).is_err());
}
