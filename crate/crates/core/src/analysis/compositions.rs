use crate::types::Composition;

/// Weak compositions of `s` into `n` parts, in descending lexicographic
/// order: `(s, 0, ..., 0)` first and `(0, ..., 0, s)` last.
pub fn enumerate_compositions(s: u64, n: usize) -> Compositions {
    Compositions {
        current: (n >= 1).then(|| {
            let mut v = vec![0; n];
            v[0] = s;
            v
        }),
    }
}

/// Iterator returned by [`enumerate_compositions`].
#[derive(Debug, Clone)]
pub struct Compositions {
    current: Option<Vec<u64>>,
}

impl Iterator for Compositions {
    type Item = Composition;

    fn next(&mut self) -> Option<Composition> {
        let cur = self.current.take()?;
        let n = cur.len();
        // successor: move one unit from the last nonzero non-final part
        // rightward, gathering the tail behind it
        if let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| cur[i] > 0) {
            let mut next = cur.clone();
            let tail: u64 = next[i + 1..].iter().sum();
            next[i] -= 1;
            next[i + 1] = tail + 1;
            next[i + 2..].iter_mut().for_each(|x| *x = 0);
            self.current = Some(next);
        }
        Some(Composition::new(cur).expect("n >= 1"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::genfunc::binomial;
    use num_bigint::BigInt;

    fn bins(s: u64, n: usize) -> Vec<Vec<u64>> {
        enumerate_compositions(s, n).map(|c| c.bins().to_vec()).collect()
    }

    #[test]
    fn small_cases() {
        assert_eq!(bins(2, 2), vec![vec![2, 0], vec![1, 1], vec![0, 2]]);
        assert_eq!(bins(0, 3), vec![vec![0, 0, 0]]);
        assert_eq!(bins(5, 3).len(), 21);
        assert_eq!(bins(4, 1), vec![vec![4]]);
        assert!(bins(3, 0).is_empty());
    }

    #[test]
    fn counts_distinctness_and_order() {
        for n in 1..=5 {
            for s in 0..=6u64 {
                let all = bins(s, n);
                assert_eq!(BigInt::from(all.len()), binomial(s + n as u64 - 1, n as u64 - 1));
                assert!(all.iter().all(|c| c.iter().sum::<u64>() == s));
                // strictly descending lexicographic order implies distinct
                assert!(all.windows(2).all(|w| w[0] > w[1]));
            }
        }
    }
}
