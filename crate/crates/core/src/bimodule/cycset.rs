use std::fmt;

use serde::{Deserialize, Serialize};

use super::BimoduleError;

/// A cyclically connected subset `{s^start, …, s^{start+len-1}}` of the
/// cyclic group of order `order`.
///
/// The whole group is stored with `start = 0`, so each subset has exactly one
/// representation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CycSet {
    start: usize,
    len: usize,
    order: usize,
}

impl CycSet {
    pub fn new(order: usize, start: i64, len: usize) -> Result<Self, BimoduleError> {
        if order < 2 {
            return Err(BimoduleError::InvalidOrder(order));
        }
        if len == 0 || len > order {
            return Err(BimoduleError::InvalidLength { order, len });
        }
        let start = if len == order {
            0
        } else {
            start.rem_euclid(order as i64) as usize
        };
        Ok(CycSet { start, len, order })
    }

    /// `{e}`, the monoidal unit.
    pub fn identity(order: usize) -> Self {
        Self::new(order, 0, 1).expect("valid order")
    }

    pub fn whole(order: usize) -> Self {
        Self::new(order, 0, order).expect("valid order")
    }

    /// `{s^i}`.
    pub fn single(order: usize, i: i64) -> Self {
        Self::new(order, i, 1).expect("valid order")
    }

    /// `s^{≤j} = {e, s, …, s^j}`.
    pub fn prefix(order: usize, j: usize) -> Self {
        Self::new(order, 0, j + 1).expect("valid order")
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn is_whole(&self) -> bool {
        self.len == self.order
    }

    /// Exponents of the elements, in arc order.
    pub fn elements(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).map(move |r| (self.start + r) % self.order)
    }

    pub fn contains(&self, x: usize) -> bool {
        (x + self.order - self.start) % self.order < self.len
    }

    /// The arc rotated by `m`; the whole group is fixed.
    pub fn rotate(&self, m: i64) -> Self {
        Self::new(self.order, self.start as i64 + m, self.len).expect("rotation preserves validity")
    }

    /// Parses `e`, `W` or `s[i..j]` (indices read modulo the order).
    pub fn parse(order: usize, s: &str) -> Result<Self, BimoduleError> {
        let s = s.trim();
        let err = || BimoduleError::Parse(s.to_string());
        match s {
            "e" => return Ok(Self::identity(order)),
            "W" => return Ok(Self::whole(order)),
            _ => {}
        }
        let inner = s
            .strip_prefix("s[")
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(err)?;
        let (a, b) = inner.split_once("..").ok_or_else(err)?;
        let a: i64 = a.trim().parse().map_err(|_| err())?;
        let b: i64 = b.trim().parse().map_err(|_| err())?;
        if b < a || a < 0 {
            return Err(err());
        }
        Self::new(order, a, (b - a + 1) as usize)
    }
}

/// `e`, `W`, or `s[i..j]` with `j = i + len - 1` (not reduced modulo d).
impl fmt::Display for CycSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_whole() {
            write!(f, "W")
        } else if self.start == 0 && self.len == 1 {
            write!(f, "e")
        } else {
            write!(f, "s[{}..{}]", self.start, self.start + self.len - 1)
        }
    }
}

/// Rotates the start of `a` by `m`.
pub fn twist_product(a: &CycSet, m: i64) -> CycSet {
    a.rotate(m)
}

/// All cyclically connected subsets, ordered by length and then start, with
/// the whole group last.
pub fn enumerate_indecomposables(order: usize) -> Result<Vec<CycSet>, BimoduleError> {
    if order < 2 {
        return Err(BimoduleError::InvalidOrder(order));
    }
    let mut out = Vec::with_capacity(order * (order - 1) + 1);
    for len in 1..order {
        for start in 0..order {
            out.push(CycSet::new(order, start as i64, len)?);
        }
    }
    out.push(CycSet::whole(order));
    Ok(out)
}

/// An indecomposable `O(A)[shift]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ShiftedIndec {
    pub set: CycSet,
    pub shift: i64,
}

impl ShiftedIndec {
    pub fn new(set: CycSet, shift: i64) -> Self {
        ShiftedIndec { set, shift }
    }

    pub fn unshifted(set: CycSet) -> Self {
        Self::new(set, 0)
    }

    /// `O(A)[|A| - 1]`, whose class is the basis element `s^i C_j`.
    pub fn standard(set: CycSet) -> Self {
        Self::new(set, set.len() as i64 - 1)
    }

    /// Parses `e{k}`, `W{k}` or `s[i..j]{k}`; the `{k}` suffix may be omitted.
    pub fn parse(order: usize, s: &str) -> Result<Self, BimoduleError> {
        let s = s.trim();
        let err = || BimoduleError::Parse(s.to_string());
        let (set, shift) = match s.find('{') {
            Some(pos) => {
                let shift = s[pos + 1..].strip_suffix('}').ok_or_else(err)?;
                (&s[..pos], shift.trim().parse::<i64>().map_err(|_| err())?)
            }
            None => (s, 0),
        };
        Ok(Self::new(CycSet::parse(order, set)?, shift))
    }
}

impl fmt::Display for ShiftedIndec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{{{}}}", self.set, self.shift)
    }
}

/// Wire form of a summand: `{start, len, shift}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SummandRecord {
    pub start: usize,
    pub len: usize,
    pub shift: i64,
}

impl From<&ShiftedIndec> for SummandRecord {
    fn from(m: &ShiftedIndec) -> Self {
        SummandRecord {
            start: m.set.start(),
            len: m.set.len(),
            shift: m.shift,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn census_counts() {
        for d in 2..=12 {
            let all = enumerate_indecomposables(d).unwrap();
            assert_eq!(all.len(), d * (d - 1) + 1);
            let mut dedup = all.clone();
            dedup.sort();
            dedup.dedup();
            assert_eq!(dedup.len(), all.len());
        }
        assert_eq!(enumerate_indecomposables(7).unwrap().len(), 43);
        let d2: Vec<String> = enumerate_indecomposables(2)
            .unwrap()
            .iter()
            .map(ToString::to_string)
            .collect();
        assert_eq!(d2, ["e", "s[1..1]", "W"]);
    }

    #[test]
    fn whole_group_is_canonical() {
        let w = CycSet::new(5, 3, 5).unwrap();
        assert_eq!(w, CycSet::whole(5));
        assert_eq!(w.rotate(2), w);
        assert!(CycSet::new(5, 0, 0).is_err());
        assert!(CycSet::new(5, 0, 6).is_err());
    }

    #[test]
    fn rotation() {
        let a = CycSet::prefix(4, 1);
        assert_eq!(twist_product(&a, 0), a);
        let r = twist_product(&a, 2);
        assert_eq!(r.elements().collect::<Vec<_>>(), vec![2, 3]);
        assert_eq!(r.to_string(), "s[2..3]");
        let wrap = CycSet::new(4, 3, 2).unwrap();
        assert_eq!(wrap.elements().collect::<Vec<_>>(), vec![3, 0]);
        assert!(wrap.contains(0) && wrap.contains(3) && !wrap.contains(1));
    }

    #[test]
    fn literals() {
        assert_eq!(CycSet::parse(4, "s[3..4]").unwrap(), CycSet::new(4, 3, 2).unwrap());
        assert_eq!(CycSet::parse(4, "s[0..3]").unwrap(), CycSet::whole(4));
        assert_eq!(CycSet::parse(4, "e").unwrap(), CycSet::identity(4));
        assert!(CycSet::parse(4, "s[2..1]").is_err());
        assert!(CycSet::parse(4, "s[0..4]").is_err());
        assert!(CycSet::parse(4, "t[0..1]").is_err());
        let m = ShiftedIndec::parse(5, "s[0..1]{1}").unwrap();
        assert_eq!(m, ShiftedIndec::new(CycSet::prefix(5, 1), 1));
        assert_eq!(m.to_string(), "s[0..1]{1}");
        assert_eq!(ShiftedIndec::parse(5, "W").unwrap().shift, 0);
        assert_eq!(ShiftedIndec::parse(5, "e{-2}").unwrap().to_string(), "e{-2}");
        assert!(ShiftedIndec::parse(5, "e{x}").is_err());
    }
}
