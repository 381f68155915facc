//! Brute-force enumeration of fixed-size subsets of `M^d`.
//!
//! Subsets come out in lexicographic order of their index vectors into the
//! lex-descending list of `M^d`, so the first subset is always the
//! lexsegment. Any rank range of that order can be produced on its own,
//! which is how sweeps are partitioned across workers.

use num_traits::ToPrimitive;

use super::{is_gotzmann, EngineError};
use crate::binomial::binom_u64;
use crate::monomial::{all_monomials, Monomial, MonomialSet};

/// Default cap on `C(|M^d|, a)` for one `(n, d, a)` cell.
pub const DEFAULT_BUDGET: u64 = 1 << 20;

/// Iterator over the `size`-subsets of `M^d` with ranks in `[start, end)`.
#[derive(Debug, Clone)]
pub struct Subsets {
    pool: Vec<Monomial>,
    n_vars: usize,
    degree: u32,
    size: usize,
    indices: Vec<usize>,
    next_rank: u64,
    end: u64,
    total: u64,
}

/// Every `size`-subset of `M^d`, refusing cells with more than `budget` subsets.
pub fn enumerate_subsets(
    n_vars: usize,
    degree: u32,
    size: usize,
    budget: u64,
) -> Result<Subsets, EngineError> {
    if n_vars == 0 {
        return Err(EngineError::BadRange("n must be positive".into()));
    }
    let pool = all_monomials(n_vars, degree).members().to_vec();
    if size > pool.len() {
        return Err(EngineError::BadRange(format!(
            "subset size {size} exceeds |M^{degree}| = {}",
            pool.len()
        )));
    }
    let count = binom_u64(pool.len() as u64, size as u32);
    let total = match count.to_u64() {
        Some(t) if t <= budget => t,
        _ => {
            return Err(EngineError::BudgetExceeded {
                n_vars,
                degree,
                size,
                count,
                budget,
            })
        }
    };
    Ok(Subsets {
        pool,
        n_vars,
        degree,
        size,
        indices: (0..size).collect(),
        next_rank: 0,
        end: total,
        total,
    })
}

/// The Gotzmann members of [`enumerate_subsets`].
pub fn enumerate_gotzmann(
    n_vars: usize,
    degree: u32,
    size: usize,
    budget: u64,
) -> Result<impl Iterator<Item = MonomialSet>, EngineError> {
    Ok(enumerate_subsets(n_vars, degree, size, budget)?.filter(is_gotzmann))
}

impl Subsets {
    /// Number of subsets in the whole cell, ignoring any rank restriction.
    pub fn total(&self) -> u64 {
        self.total
    }

    /// Restricts the iterator to ranks `[start, end)` of the full order.
    pub fn with_rank_range(mut self, start: u64, end: u64) -> Self {
        let end = end.min(self.total);
        let start = start.min(end);
        self.end = end;
        self.next_rank = start;
        if start < end {
            self.indices = unrank(start, self.pool.len(), self.size);
        }
        self
    }

    fn advance(&mut self) {
        let n = self.pool.len();
        let k = self.size;
        // rightmost slot that can still move
        let Some(pos) = (0..k).rev().find(|&p| self.indices[p] < n - k + p) else {
            return;
        };
        self.indices[pos] += 1;
        for p in pos + 1..k {
            self.indices[p] = self.indices[p - 1] + 1;
        }
    }
}

impl Iterator for Subsets {
    type Item = MonomialSet;

    fn next(&mut self) -> Option<MonomialSet> {
        if self.next_rank >= self.end {
            return None;
        }
        let members = self.indices.iter().map(|&k| self.pool[k].clone()).collect();
        let out = MonomialSet::from_sorted(self.n_vars, self.degree, members);
        self.next_rank += 1;
        if self.next_rank < self.end {
            self.advance();
        }
        Some(out)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = (self.end - self.next_rank) as usize;
        (left, Some(left))
    }
}

/// Index vector of the `rank`-th `k`-combination of `0..n` in lex order.
fn unrank(mut rank: u64, n: usize, k: usize) -> Vec<usize> {
    let mut out = Vec::with_capacity(k);
    let mut candidate = 0usize;
    for slot in 0..k {
        loop {
            let rest = binom_u64((n - candidate - 1) as u64, (k - slot - 1) as u32)
                .to_u64()
                .expect("rank fits in u64");
            if rank < rest {
                break;
            }
            rank -= rest;
            candidate += 1;
        }
        out.push(candidate);
        candidate += 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monomial::lexsegment;
    use std::collections::HashSet;

    #[test]
    fn subset_counts() {
        assert_eq!(
            enumerate_subsets(2, 2, 2, DEFAULT_BUDGET).unwrap().count(),
            3
        );
        let full: Vec<_> = enumerate_subsets(3, 1, 3, DEFAULT_BUDGET)
            .unwrap()
            .collect();
        assert_eq!(full, vec![all_monomials(3, 1)]);
        assert_eq!(
            enumerate_subsets(2, 3, 2, DEFAULT_BUDGET).unwrap().count(),
            6
        );
        let empty: Vec<_> = enumerate_subsets(2, 3, 0, DEFAULT_BUDGET)
            .unwrap()
            .collect();
        assert_eq!(empty, vec![MonomialSet::empty(2, 3)]);
    }

    #[test]
    fn first_subset_is_the_lexsegment() {
        for a in 0..=10 {
            let first = enumerate_subsets(3, 3, a, DEFAULT_BUDGET).unwrap().next();
            assert_eq!(first, Some(lexsegment(3, 3, a).unwrap()));
        }
    }

    #[test]
    fn every_subset_exactly_once() {
        let n_md = all_monomials(3, 2).len();
        for a in 0..=n_md {
            let all: Vec<_> = enumerate_subsets(3, 2, a, DEFAULT_BUDGET)
                .unwrap()
                .collect();
            let distinct: HashSet<_> = all.iter().cloned().collect();
            assert_eq!(all.len(), distinct.len());
            assert_eq!(
                all.len() as u64,
                binom_u64(n_md as u64, a as u32).to_u64().unwrap()
            );
            assert!(all.iter().all(|s| s.len() == a));
        }
    }

    #[test]
    fn rank_ranges_tile_the_stream() {
        let whole: Vec<_> = enumerate_subsets(3, 3, 4, DEFAULT_BUDGET)
            .unwrap()
            .collect();
        let total = whole.len() as u64;
        for chunk in [1u64, 7, 50, 1000] {
            let mut pieces = Vec::new();
            let mut start = 0;
            while start < total {
                let part = enumerate_subsets(3, 3, 4, DEFAULT_BUDGET)
                    .unwrap()
                    .with_rank_range(start, start + chunk);
                pieces.extend(part);
                start += chunk;
            }
            assert_eq!(pieces, whole, "chunk {chunk}");
        }
    }

    #[test]
    fn budget_is_enforced() {
        assert!(matches!(
            enumerate_subsets(3, 3, 5, 251),
            Err(EngineError::BudgetExceeded { .. })
        ));
        assert!(enumerate_subsets(3, 3, 5, 252).is_ok());
        assert!(matches!(
            enumerate_subsets(2, 2, 4, DEFAULT_BUDGET),
            Err(EngineError::BadRange(_))
        ));
    }

    #[test]
    fn gotzmann_filter() {
        let sets: Vec<_> = enumerate_gotzmann(2, 2, 2, DEFAULT_BUDGET)
            .unwrap()
            .collect();
        assert!(sets.contains(&lexsegment(2, 2, 2).unwrap()));
        let pair =
            MonomialSet::new(2, 2, [Monomial::new(vec![2, 0]), Monomial::new(vec![0, 2])]).unwrap();
        assert!(!sets.contains(&pair));
        for d in 0..=4 {
            for a in 0..=d as usize + 1 {
                let found: Vec<_> = enumerate_gotzmann(2, d, a, DEFAULT_BUDGET)
                    .unwrap()
                    .collect();
                assert!(found.contains(&lexsegment(2, d, a).unwrap()));
            }
        }
        let full: Vec<_> = enumerate_gotzmann(3, 2, 6, DEFAULT_BUDGET)
            .unwrap()
            .collect();
        assert_eq!(full, vec![all_monomials(3, 2)]);
    }
}
