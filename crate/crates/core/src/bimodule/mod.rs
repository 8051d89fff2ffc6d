//! Shifted indecomposables `O(A)[k]`, their tensor products, graded ranks and
//! Hom spaces, plus executable checks of the structural statements about
//! them.

mod cycset;
mod decompose;
mod hom;
mod verify;

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

pub use cycset::*;
pub use decompose::*;
pub use hom::*;
pub use verify::*;

use crate::laurent::{even_series, v_pow, LaurentInt};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BimoduleError {
    #[error("order must be at least 2, got {0}")]
    InvalidOrder(usize),
    #[error("arc length {len} is not in 1..={order}")]
    InvalidLength { order: usize, len: usize },
    #[error("objects of different orders: {0} and {1}")]
    OrderMismatch(usize, usize),
    #[error("index {index} outside the admissible range {range}")]
    InvalidIndex { index: usize, range: String },
    #[error("malformed object literal {0:?}")]
    Parse(String),
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
    #[error("{check} failed in degree {degree}: {detail}")]
    VerificationFailure {
        check: String,
        degree: usize,
        detail: String,
    },
}

/// A finite multiset of shifted indecomposables.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct DecompList {
    items: BTreeMap<ShiftedIndec, usize>,
}

impl DecompList {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn single(m: ShiftedIndec) -> Self {
        let mut out = Self::new();
        out.insert(m, 1);
        out
    }

    pub fn insert(&mut self, m: ShiftedIndec, mult: usize) {
        if mult > 0 {
            *self.items.entry(m).or_insert(0) += mult;
        }
    }

    pub fn extend(&mut self, other: &DecompList) {
        for (m, k) in &other.items {
            self.insert(*m, *k);
        }
    }

    /// Removes `other` from `self`; fails if `other` is not a sub-multiset.
    pub fn subtract(&mut self, other: &DecompList) -> Result<(), BimoduleError> {
        for (m, k) in &other.items {
            if self.multiplicity(m) < *k {
                return Err(BimoduleError::InternalInconsistency(format!(
                    "cannot cancel {k} copies of {m} from {self}"
                )));
            }
            let have = self.items.get_mut(m).expect("present");
            *have -= k;
            if *have == 0 {
                self.items.remove(m);
            }
        }
        Ok(())
    }

    pub fn multiplicity(&self, m: &ShiftedIndec) -> usize {
        self.items.get(m).copied().unwrap_or(0)
    }

    /// Distinct summands with multiplicities, in `(start, len, shift)` order.
    pub fn iter(&self) -> impl Iterator<Item = (&ShiftedIndec, usize)> + '_ {
        self.items.iter().map(|(m, k)| (m, *k))
    }

    /// Summands with repetition, in `(start, len, shift)` order.
    pub fn summands(&self) -> impl Iterator<Item = ShiftedIndec> + '_ {
        self.items.iter().flat_map(|(m, k)| std::iter::repeat_n(*m, *k))
    }

    /// Total number of summands, counted with multiplicity.
    pub fn len(&self) -> usize {
        self.items.values().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    /// Applies `M ↦ O(s^m) ⊗ M [k]` to every summand.
    pub fn rotate_shift(&self, m: i64, k: i64) -> DecompList {
        let mut out = DecompList::new();
        for (x, mult) in &self.items {
            out.insert(ShiftedIndec::new(x.set.rotate(m), x.shift + k), *mult);
        }
        out
    }

    pub fn to_records(&self) -> Vec<SummandRecord> {
        self.summands().map(|m| SummandRecord::from(&m)).collect()
    }

    pub fn from_records(order: usize, records: &[SummandRecord]) -> Result<Self, BimoduleError> {
        let mut out = DecompList::new();
        for r in records {
            out.insert(ShiftedIndec::new(CycSet::new(order, r.start as i64, r.len)?, r.shift), 1);
        }
        Ok(out)
    }
}

impl FromIterator<ShiftedIndec> for DecompList {
    fn from_iter<I: IntoIterator<Item = ShiftedIndec>>(iter: I) -> Self {
        let mut out = DecompList::new();
        for m in iter {
            out.insert(m, 1);
        }
        out
    }
}

/// `{s[0..2]{2}, s[1..1]{0}}`
impl fmt::Display for DecompList {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.summands().map(|m| m.to_string()).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// Graded rank of `O(A)[k]` as a left `R`-module: `v^{-k}(1 + v² + … + v^{2(|A|-1)})`.
pub fn graded_rank(m: &ShiftedIndec) -> LaurentInt {
    &v_pow(-(m.shift as i32)) * &even_series(m.set.len())
}

/// Sum of graded ranks over a decomposition.
pub fn total_graded_rank(list: &DecompList) -> LaurentInt {
    let mut acc = LaurentInt::zero();
    for (m, k) in list.iter() {
        acc = &acc + &graded_rank(m).scale(&(k as i64).into());
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::int;

    #[test]
    fn graded_rank_examples() {
        assert_eq!(graded_rank(&ShiftedIndec::unshifted(CycSet::identity(4))), int(1));
        let p2 = ShiftedIndec::unshifted(CycSet::prefix(5, 2));
        assert_eq!(graded_rank(&p2).to_string(), "1 + v^2 + v^4");
        let w = ShiftedIndec::new(CycSet::whole(3), -2);
        assert_eq!(graded_rank(&w), &v_pow(2) * &even_series(3));
    }

    #[test]
    fn multiset_arithmetic() {
        let a = ShiftedIndec::parse(4, "s[0..1]{0}").unwrap();
        let b = ShiftedIndec::parse(4, "W{-2}").unwrap();
        let mut l: DecompList = [a, b, a].into_iter().collect();
        assert_eq!(l.len(), 3);
        assert_eq!(l.multiplicity(&a), 2);
        l.subtract(&DecompList::single(a)).unwrap();
        assert_eq!(l.to_string(), "{s[0..1]{0}, W{-2}}");
        assert!(matches!(
            l.subtract(&DecompList::single(ShiftedIndec::parse(4, "e").unwrap())),
            Err(BimoduleError::InternalInconsistency(_))
        ));
        let recs = l.to_records();
        assert_eq!(DecompList::from_records(4, &recs).unwrap(), l);
    }
}
