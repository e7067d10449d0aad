//! Discrete and continuous `EMD_d` of a d-tuple of histograms.
//!
//! Stacking the nondecreasing "words" of the `d` histograms gives a `d x s`
//! word matrix whose columns form a chain in the product order. Counting its
//! columns yields an optimal chain-supported transport plan, and the EMD is
//! the sum of the column costs. The same plan is produced independently by a
//! d-dimensional northwest-corner rule ([`greedy_joint`]); both are checked
//! against an exhaustive search over all integer plans
//! ([`brute_force_emd`]).

use crate::cost::{cost, cost_of_sorted};
use crate::error::{Error, Result};
use crate::rational::{ratio, Rational};
use crate::types::{BinShape, Composition, MultiIndex};
use num_traits::Zero;

/// Default node budget for [`brute_force_emd`].
pub const DEFAULT_SEARCH_BUDGET: u64 = 50_000_000;

/// Default cap on the number of cells [`brute_force_emd`] will search over.
pub const DEFAULT_SEARCH_CELLS: u128 = 4096;

/// `d` histograms sharing one total mass `s`. Member `i` has `n_i` bins.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistTuple {
    members: Vec<Composition>,
    shape: BinShape,
    mass: u64,
}

impl DistTuple {
    pub fn new(members: Vec<Composition>) -> Result<Self> {
        let first = members
            .first()
            .ok_or_else(|| Error::InvalidInput("need at least one distribution".into()))?;
        let mass = first.mass();
        for (index, m) in members.iter().enumerate() {
            if m.mass() != mass {
                return Err(Error::MassMismatch {
                    index,
                    expected: mass,
                    found: m.mass(),
                });
            }
        }
        let shape = BinShape::new(members.iter().map(Composition::len).collect())?;
        Ok(Self {
            members,
            shape,
            mass,
        })
    }

    /// Convenience constructor from raw bin counts.
    pub fn from_rows(rows: Vec<Vec<u64>>) -> Result<Self> {
        Self::new(
            rows.into_iter()
                .map(Composition::new)
                .collect::<Result<Vec<_>>>()?,
        )
    }

    pub fn members(&self) -> &[Composition] {
        &self.members
    }

    pub fn shape(&self) -> &BinShape {
        &self.shape
    }

    pub fn mass(&self) -> u64 {
        self.mass
    }

    /// Number of distributions `d`.
    pub fn dim(&self) -> usize {
        self.members.len()
    }

    /// The common bin count, if every member has the same number of bins.
    pub fn common_bins(&self) -> Option<usize> {
        let n = self.shape.sizes()[0];
        self.shape.sizes().iter().all(|&x| x == n).then_some(n)
    }

    fn pair(&self, a: usize, b: usize) -> DistTuple {
        DistTuple {
            members: vec![self.members[a].clone(), self.members[b].clone()],
            shape: BinShape::new(vec![self.shape.sizes()[a], self.shape.sizes()[b]])
                .expect("sizes already validated"),
            mass: self.mass,
        }
    }
}

/// The nondecreasing word of a histogram: bin `k` repeated `mu(k)` times.
pub fn rsk_word(mu: &Composition) -> Vec<usize> {
    let mut out = Vec::with_capacity(mu.mass() as usize);
    for (k, &count) in mu.bins().iter().enumerate() {
        out.extend(std::iter::repeat_n(k + 1, count as usize));
    }
    out
}

/// `d` stacked words, one row per distribution.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WordMatrix {
    rows: Vec<Vec<usize>>,
}

impl WordMatrix {
    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    /// Number of columns, the shared mass `s`.
    pub fn width(&self) -> usize {
        self.rows.first().map(Vec::len).unwrap_or(0)
    }

    pub fn column(&self, j: usize) -> Vec<usize> {
        self.rows.iter().map(|r| r[j]).collect()
    }

    pub fn columns(&self) -> impl Iterator<Item = Vec<usize>> + '_ {
        (0..self.width()).map(|j| self.column(j))
    }
}

pub fn word_matrix(t: &DistTuple) -> WordMatrix {
    WordMatrix {
        rows: t.members.iter().map(rsk_word).collect(),
    }
}

/// A sparse integer transport plan: distinct cells with positive weights.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JointArray {
    shape: BinShape,
    support: Vec<(MultiIndex, u64)>,
}

impl JointArray {
    pub fn new(shape: BinShape, support: Vec<(MultiIndex, u64)>) -> Result<Self> {
        let mut seen = std::collections::HashSet::new();
        for (m, w) in &support {
            if *w == 0 {
                return Err(Error::InvalidInput(format!("zero weight at {m}")));
            }
            if !m.fits(&shape) {
                return Err(Error::ShapeMismatch(format!("{m} lies outside {shape}")));
            }
            if !seen.insert(m.clone()) {
                return Err(Error::InvalidInput(format!("duplicate cell {m}")));
            }
        }
        Ok(Self { shape, support })
    }

    pub fn shape(&self) -> &BinShape {
        &self.shape
    }

    pub fn support(&self) -> &[(MultiIndex, u64)] {
        &self.support
    }

    pub fn total_weight(&self) -> u64 {
        self.support.iter().map(|(_, w)| w).sum()
    }

    /// Weight at `m`, zero off the support.
    pub fn weight(&self, m: &MultiIndex) -> u64 {
        self.support
            .iter()
            .find(|(c, _)| c == m)
            .map(|(_, w)| *w)
            .unwrap_or(0)
    }

    /// Hyperplane sums: `marginals()[i][k-1]` is the total weight of cells
    /// whose `i`-th coordinate is `k`.
    pub fn marginals(&self) -> Vec<Vec<u64>> {
        let mut out: Vec<Vec<u64>> = self.shape.sizes().iter().map(|&n| vec![0; n]).collect();
        for (m, w) in &self.support {
            for (axis, &c) in m.coords().iter().enumerate() {
                out[axis][c - 1] += w;
            }
        }
        out
    }

    /// Whether every hyperplane sum reproduces the matching histogram.
    pub fn satisfies_marginals(&self, t: &DistTuple) -> bool {
        self.shape == t.shape
            && self
                .marginals()
                .iter()
                .zip(t.members())
                .all(|(got, mu)| got.as_slice() == mu.bins())
    }

    /// Whether the support is totally ordered by the product order.
    pub fn is_chain(&self) -> bool {
        let mut cells: Vec<&MultiIndex> = self.support.iter().map(|(m, _)| m).collect();
        cells.sort();
        cells.windows(2).all(|w| w[0].le_product(w[1]))
    }

    /// Row-major dense weights (for small shapes).
    pub fn to_dense(&self) -> Vec<u64> {
        let cells = self.shape.cell_count().expect("dense export of huge shape") as usize;
        let mut out = vec![0; cells];
        for (m, w) in &self.support {
            out[self.shape.offset(m)] += w;
        }
        out
    }
}

/// Plan whose weight at `m` is the number of word-matrix columns equal to
/// `m`. Equal columns are contiguous because every row is nondecreasing.
pub fn rsk_joint(t: &DistTuple) -> JointArray {
    let words = word_matrix(t);
    let mut support: Vec<(MultiIndex, u64)> = Vec::new();
    for col in words.columns() {
        match support.last_mut() {
            Some((m, w)) if m.coords() == col.as_slice() => *w += 1,
            _ => support.push((MultiIndex::from_vec_unchecked(col), 1)),
        }
    }
    JointArray {
        shape: t.shape.clone(),
        support,
    }
}

/// `sum_m C(m) J(m)`.
pub fn total_cost(j: &JointArray) -> u64 {
    j.support.iter().map(|(m, w)| cost(m.coords()) * w).sum()
}

/// Discrete `EMD_d^s`: the sum of the costs of the `s` word-matrix columns.
///
/// The word matrix is never materialized; one cursor per row walks the
/// histogram bins, giving `O(d (s + n))` cursor moves.
pub fn discrete_emd(t: &DistTuple) -> u64 {
    let d = t.dim();
    let mut bin = vec![0usize; d];
    let mut left: Vec<u64> = t.members.iter().map(|m| m.bins()[0]).collect();
    let mut scratch = vec![0usize; d];
    let mut total = 0;
    for _ in 0..t.mass {
        for i in 0..d {
            let bins = t.members[i].bins();
            while left[i] == 0 {
                bin[i] += 1;
                left[i] = bins[bin[i]];
            }
            left[i] -= 1;
            scratch[i] = bin[i] + 1;
        }
        scratch.sort_unstable();
        total += cost_of_sorted(&scratch);
    }
    total
}

/// d-dimensional northwest-corner rule.
///
/// Starting from `(1, ..., 1)`, place weight `w = min_i supply_i(p_i)` at the
/// current position `p`, subtract it from every axis, and advance every axis
/// whose current bin is exhausted (several at once on ties). Empty bins are
/// skipped before placing.
pub fn greedy_joint(t: &DistTuple) -> JointArray {
    let d = t.dim();
    let mut pos = vec![0usize; d];
    let mut supply: Vec<u64> = t.members.iter().map(|m| m.bins()[0]).collect();
    let mut support = Vec::new();
    let mut remaining = t.mass;
    while remaining > 0 {
        for i in 0..d {
            while supply[i] == 0 {
                pos[i] += 1;
                supply[i] = t.members[i].bins()[pos[i]];
            }
        }
        let w = *supply.iter().min().expect("d >= 1");
        support.push((
            MultiIndex::from_vec_unchecked(pos.iter().map(|p| p + 1).collect()),
            w,
        ));
        for s in supply.iter_mut() {
            *s -= w;
        }
        remaining -= w;
    }
    JointArray {
        shape: t.shape.clone(),
        support,
    }
}

struct Search<'a> {
    cells: Vec<Vec<usize>>,
    costs: Vec<u64>,
    /// `(axis, bin)` hyperplanes whose last cell (in search order) is this one.
    closes: Vec<Vec<(usize, usize)>>,
    residual: Vec<Vec<u64>>,
    best: Option<u64>,
    nodes: u64,
    budget: u64,
    tuple: &'a DistTuple,
}

impl Search<'_> {
    fn run(&mut self, idx: usize, spent: u64) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::CapacityExceeded {
                what: format!("exhaustive EMD search for shape {}", self.tuple.shape),
                needed: self.nodes as u128,
                cap: self.budget as u128,
            });
        }
        if self.best.is_some_and(|b| spent >= b) {
            return Ok(());
        }
        if idx == self.cells.len() {
            // every hyperplane has been closed at zero residual
            self.best = Some(spent);
            return Ok(());
        }
        let cap = self.cells[idx]
            .iter()
            .enumerate()
            .map(|(axis, &c)| self.residual[axis][c])
            .min()
            .unwrap_or(0);
        for w in (0..=cap).rev() {
            for (axis, &c) in self.cells[idx].iter().enumerate() {
                self.residual[axis][c] -= w;
            }
            let feasible = self.closes[idx]
                .iter()
                .all(|&(axis, bin)| self.residual[axis][bin] == 0);
            let result = if feasible {
                self.run(idx + 1, spent + w * self.costs[idx])
            } else {
                Ok(())
            };
            for (axis, &c) in self.cells[idx].iter().enumerate() {
                self.residual[axis][c] += w;
            }
            result?;
        }
        Ok(())
    }
}

/// Exact minimum of the plan cost over *all* nonnegative integer plans with
/// the right hyperplane sums, by depth-first search over cells in
/// lexicographic order with residual-marginal pruning.
pub fn brute_force_emd(t: &DistTuple) -> Result<u64> {
    brute_force_emd_with_budget(t, DEFAULT_SEARCH_CELLS, DEFAULT_SEARCH_BUDGET)
}

pub fn brute_force_emd_with_budget(t: &DistTuple, max_cells: u128, max_nodes: u64) -> Result<u64> {
    let shape = &t.shape;
    let cell_count = shape.cell_count().unwrap_or(u128::MAX);
    if cell_count > max_cells {
        return Err(Error::CapacityExceeded {
            what: format!("exhaustive EMD search for shape {shape}"),
            needed: cell_count,
            cap: max_cells,
        });
    }
    let cells: Vec<Vec<usize>> = shape
        .indices()
        .map(|m| m.coords().iter().map(|c| c - 1).collect())
        .collect();
    let costs = cells
        .iter()
        .map(|c| cost(&c.iter().map(|x| x + 1).collect::<Vec<_>>()))
        .collect();
    let mut last_of: Vec<Vec<usize>> = shape.sizes().iter().map(|&n| vec![0; n]).collect();
    for (idx, c) in cells.iter().enumerate() {
        for (axis, &bin) in c.iter().enumerate() {
            last_of[axis][bin] = idx;
        }
    }
    let mut closes = vec![Vec::new(); cells.len()];
    for (axis, per_bin) in last_of.iter().enumerate() {
        for (bin, &idx) in per_bin.iter().enumerate() {
            closes[idx].push((axis, bin));
        }
    }
    let mut search = Search {
        cells,
        costs,
        closes,
        residual: t.members.iter().map(|m| m.bins().to_vec()).collect(),
        best: None,
        nodes: 0,
        budget: max_nodes,
        tuple: t,
    };
    search.run(0, 0)?;
    search
        .best
        .ok_or_else(|| Error::InvalidInput("no feasible transport plan".into()))
}

/// `EMD_2(mu1,mu2) + EMD_2(mu1,mu3) + EMD_2(mu2,mu3)` for a triple; equals
/// twice `EMD_3` of the triple.
pub fn pairwise_emd_sum(t: &DistTuple) -> Result<u64> {
    if t.dim() != 3 {
        return Err(Error::WrongArity {
            expected: 3,
            found: t.dim(),
        });
    }
    Ok([(0, 1), (0, 2), (1, 2)]
        .iter()
        .map(|&(a, b)| discrete_emd(&t.pair(a, b)))
        .sum())
}

/// Largest per-unit-mass `EMD_d` over `n` bins: `floor(d/2) (n - 1)`.
pub fn max_emd(d: usize, n: usize) -> u64 {
    ((d / 2) * n.saturating_sub(1)) as u64
}

/// `EMD_d` of the histograms rescaled to probability distributions:
/// `discrete_emd / s`, exactly.
pub fn continuous_emd(t: &DistTuple) -> Result<Rational> {
    if t.mass == 0 {
        return Err(Error::InvalidInput(
            "continuous EMD needs a positive mass".into(),
        ));
    }
    Ok(ratio(discrete_emd(t), t.mass))
}

/// Continuous EMD divided by its maximum `floor(d/2)(n-1)`, in `[0, 1]`.
/// Returns zero when the maximum is zero (`n = 1` or `d = 1`).
pub fn unit_normalized_emd(t: &DistTuple) -> Result<Rational> {
    let n = t.common_bins().ok_or_else(|| {
        Error::ShapeMismatch(format!(
            "unit normalization needs equal bin counts, got {}",
            t.shape
        ))
    })?;
    let emd = continuous_emd(t)?;
    let max = max_emd(t.dim(), n);
    if max == 0 {
        return Ok(Rational::zero());
    }
    Ok(emd / ratio(max, 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tuple(rows: &[&[u64]]) -> DistTuple {
        DistTuple::from_rows(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    fn support(j: &JointArray) -> Vec<(Vec<usize>, u64)> {
        j.support()
            .iter()
            .map(|(m, w)| (m.coords().to_vec(), *w))
            .collect()
    }

    #[test]
    fn words() {
        let w = |v: &[u64]| rsk_word(&Composition::new(v.to_vec()).unwrap());
        assert_eq!(w(&[1, 2, 3, 4]), vec![1, 2, 2, 3, 3, 3, 4, 4, 4, 4]);
        assert_eq!(w(&[5, 0, 2, 3]), vec![1, 1, 1, 1, 1, 3, 3, 4, 4, 4]);
        assert_eq!(w(&[0, 5, 0]), vec![2, 2, 2, 2, 2]);
    }

    #[test]
    fn word_matrices() {
        let m = word_matrix(&tuple(&[&[4, 0, 1], &[1, 2, 2], &[0, 5, 0]]));
        assert_eq!(
            m.rows(),
            &[
                vec![1, 1, 1, 1, 3],
                vec![1, 2, 2, 3, 3],
                vec![2, 2, 2, 2, 2]
            ]
        );
        let m = word_matrix(&tuple(&[&[2, 0]]));
        assert_eq!(m.rows(), &[vec![1, 1]]);
        let m = word_matrix(&tuple(&[&[1, 2, 3, 4], &[5, 0, 2, 3]]));
        assert_eq!(
            m.rows(),
            &[
                vec![1, 2, 2, 3, 3, 3, 4, 4, 4, 4],
                vec![1, 1, 1, 1, 1, 3, 3, 4, 4, 4]
            ]
        );
    }

    #[test]
    fn mass_mismatch_is_rejected() {
        let err = DistTuple::from_rows(vec![vec![1, 2], vec![1, 1]]).unwrap_err();
        assert_eq!(
            err,
            Error::MassMismatch {
                index: 1,
                expected: 3,
                found: 2
            }
        );
        assert!(DistTuple::from_rows(vec![]).is_err());
    }

    #[test]
    fn rsk_joint_two_rows() {
        let j = rsk_joint(&tuple(&[&[1, 2, 3, 4], &[5, 0, 2, 3]]));
        assert_eq!(
            j.to_dense(),
            vec![1, 0, 0, 0, 2, 0, 0, 0, 2, 0, 1, 0, 0, 0, 1, 3]
        );
    }

    #[test]
    fn rsk_joint_three_rows() {
        let t = tuple(&[&[4, 0, 1], &[1, 2, 2], &[0, 5, 0]]);
        let j = rsk_joint(&t);
        assert_eq!(
            support(&j),
            vec![
                (vec![1, 1, 2], 1),
                (vec![1, 2, 2], 2),
                (vec![1, 3, 2], 1),
                (vec![3, 3, 2], 1)
            ]
        );
        assert!(j.is_chain());
        assert!(j.satisfies_marginals(&t));
        assert_eq!(total_cost(&j), 6);
    }

    #[test]
    fn identical_members_sit_on_the_diagonal() {
        let t = tuple(&[&[2, 0, 3], &[2, 0, 3], &[2, 0, 3]]);
        for j in [rsk_joint(&t), greedy_joint(&t)] {
            assert_eq!(support(&j), vec![(vec![1, 1, 1], 2), (vec![3, 3, 3], 3)]);
            assert_eq!(total_cost(&j), 0);
        }
        assert_eq!(discrete_emd(&t), 0);
        assert_eq!(brute_force_emd(&t).unwrap(), 0);
    }

    #[test]
    fn worked_examples() {
        assert_eq!(discrete_emd(&tuple(&[&[4, 0, 1], &[1, 2, 2], &[0, 5, 0]])), 6);
        let two = tuple(&[&[3, 3, 4], &[1, 0, 9]]);
        assert_eq!(discrete_emd(&two), 7);
        assert_eq!(brute_force_emd(&two).unwrap(), 7);
        assert_eq!(continuous_emd(&two).unwrap(), ratio(7, 10));
    }

    #[test]
    fn hand_built_plan_cost() {
        // 0.5/0.1/0.1/0.2/0.1 at (1,1,1),(2,2,1),(3,2,1),(3,3,2),(3,3,3), times 10
        let cells = [
            (vec![1, 1, 1], 5),
            (vec![2, 2, 1], 1),
            (vec![3, 2, 1], 1),
            (vec![3, 3, 2], 2),
            (vec![3, 3, 3], 1),
        ];
        let j = JointArray::new(
            BinShape::uniform(3, 3).unwrap(),
            cells
                .iter()
                .map(|(m, w)| (MultiIndex::new(m.clone()).unwrap(), *w))
                .collect(),
        )
        .unwrap();
        assert_eq!(total_cost(&j), 5);
        let t = tuple(&[&[5, 1, 4], &[5, 2, 3], &[7, 2, 1]]);
        assert!(j.satisfies_marginals(&t));
        let best = brute_force_emd(&t).unwrap();
        assert!(best <= 5);
        assert_eq!(best, discrete_emd(&t));
    }

    #[test]
    fn greedy_matches_rsk_value() {
        let t = tuple(&[&[1, 2, 3, 4], &[5, 0, 2, 3]]);
        let g = greedy_joint(&t);
        assert!(g.is_chain() && g.satisfies_marginals(&t));
        assert_eq!(total_cost(&g), discrete_emd(&t));
        assert_eq!(total_cost(&g), total_cost(&rsk_joint(&t)));
        let t = tuple(&[&[4, 0, 1], &[1, 2, 2], &[0, 5, 0]]);
        assert_eq!(total_cost(&greedy_joint(&t)), 6);
    }

    #[test]
    fn pairwise_sums() {
        let t = tuple(&[&[4, 0, 1], &[1, 2, 2], &[0, 5, 0]]);
        assert_eq!(pairwise_emd_sum(&t).unwrap(), 12);
        let t = tuple(&[&[1, 0], &[0, 1], &[1, 0]]);
        assert_eq!(pairwise_emd_sum(&t).unwrap(), 2);
        assert_eq!(discrete_emd(&t), 1);
        let t = tuple(&[&[1, 1], &[1, 1], &[1, 1]]);
        assert_eq!(pairwise_emd_sum(&t).unwrap(), 0);
        let t = tuple(&[&[1, 1], &[1, 1]]);
        assert_eq!(
            pairwise_emd_sum(&t),
            Err(Error::WrongArity {
                expected: 3,
                found: 2
            })
        );
    }

    #[test]
    fn maximum() {
        assert_eq!(max_emd(7, 5), 12);
        assert_eq!(max_emd(2, 1), 0);
        assert_eq!(max_emd(5, 3), 4);
    }

    #[test]
    fn normalization() {
        let t = tuple(&[&[3, 3, 4], &[1, 0, 9]]);
        assert_eq!(unit_normalized_emd(&t).unwrap(), ratio(7, 20));
        let t = tuple(&[&[3], &[3]]);
        assert_eq!(unit_normalized_emd(&t).unwrap(), Rational::zero());
        let t = tuple(&[&[3, 0], &[1, 1, 1]]);
        assert!(matches!(unit_normalized_emd(&t), Err(Error::ShapeMismatch(_))));
        let t = tuple(&[&[0, 0], &[0, 0]]);
        assert!(continuous_emd(&t).is_err());
    }

    #[test]
    fn search_budget_is_enforced() {
        let t = tuple(&[&[2, 2, 2], &[2, 2, 2], &[2, 2, 2]]);
        assert!(matches!(
            brute_force_emd_with_budget(&t, 4096, 10),
            Err(Error::CapacityExceeded { .. })
        ));
        assert!(matches!(
            brute_force_emd_with_budget(&t, 8, 1_000_000),
            Err(Error::CapacityExceeded { .. })
        ));
    }

    #[test]
    fn mixed_bin_counts() {
        // (2,1) shape: every unit in bin 2 of the first histogram costs 1
        let t = tuple(&[&[1, 3], &[4]]);
        assert_eq!(discrete_emd(&t), 3);
        assert_eq!(brute_force_emd(&t).unwrap(), 3);
        assert_eq!(total_cost(&greedy_joint(&t)), 3);
    }
}
