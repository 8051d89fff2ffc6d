//! Exact Gaussian elimination over `Q(ζ_d)`.

use std::collections::BTreeMap;

use crate::cyclotomic::CycNumber;
use crate::poly::{Monomial, SparsePoly};

/// Rank of a list of sparse row vectors keyed by column.
pub fn rank_sparse<K: Ord + Clone>(rows: Vec<BTreeMap<K, CycNumber>>) -> usize {
    let mut pivots: BTreeMap<K, BTreeMap<K, CycNumber>> = BTreeMap::new();
    for mut row in rows {
        // reduce against existing pivots, largest column first
        loop {
            let hit = row
                .iter()
                .rev()
                .find(|(k, _)| pivots.contains_key(*k))
                .map(|(k, c)| (k.clone(), c.clone()));
            let Some((k, c)) = hit else { break };
            let pivot = &pivots[&k];
            for (col, val) in pivot {
                let entry = row.entry(col.clone()).or_insert_with(|| CycNumber::zero(c.context()));
                *entry = &*entry - &(&c * val);
                if entry.is_zero() {
                    row.remove(col);
                }
            }
        }
        if let Some((k, lead)) = row.iter().next_back().map(|(k, c)| (k.clone(), c.clone())) {
            let inv = lead.inverse().expect("nonzero pivot");
            let normalized = row.into_iter().map(|(col, v)| (col, &v * &inv)).collect();
            pivots.insert(k, normalized);
        }
    }
    pivots.len()
}

/// Rank of the span of a family of polynomials, viewed as vectors in the
/// monomial basis.
pub fn poly_rank<M: Monomial>(polys: &[SparsePoly<M, CycNumber>]) -> usize {
    rank_sparse(
        polys
            .iter()
            .map(|p| p.terms().map(|(m, c)| (*m, c.clone())).collect())
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclotomic::CycContext;

    #[test]
    fn rank_of_dependent_rows() {
        let ctx = CycContext::new(3).unwrap();
        let z = CycNumber::zeta_pow(&ctx, 1);
        let one = CycNumber::one(&ctx);
        let r1: BTreeMap<usize, CycNumber> = [(0, one.clone()), (1, z.clone())].into();
        let r2: BTreeMap<usize, CycNumber> = [(0, z.clone()), (1, &z * &z)].into();
        let r3: BTreeMap<usize, CycNumber> = [(2, one.clone())].into();
        assert_eq!(rank_sparse(vec![r1.clone(), r2.clone()]), 1);
        assert_eq!(rank_sparse(vec![r1, r2, r3]), 2);
        assert_eq!(rank_sparse::<usize>(vec![BTreeMap::new()]), 0);
    }
}
