//! Sparse polynomials over an arbitrary coefficient ring.
//!
//! A [`SparsePoly`] is a map from monomials to nonzero coefficients. The same
//! type backs the bivariate and trivariate polynomials over `Q(ζ_d)`, the
//! Laurent polynomials in `v`, and the auxiliary polynomials in `λ`.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::cyclotomic::CycNumber;

/// Ring operations needed by [`SparsePoly`]. Zero is never stored, so the
/// trait does not need a `zero()` constructor.
pub trait Coefficient: Clone + PartialEq + Debug {
    fn is_zero(&self) -> bool;
    fn add_ref(&self, other: &Self) -> Self;
    fn mul_ref(&self, other: &Self) -> Self;
    fn neg_ref(&self) -> Self;

    fn sub_ref(&self, other: &Self) -> Self {
        self.add_ref(&other.neg_ref())
    }
}

impl Coefficient for BigInt {
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self - other
    }
}

impl Coefficient for BigRational {
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn neg_ref(&self) -> Self {
        -self
    }
}

impl Coefficient for CycNumber {
    fn is_zero(&self) -> bool {
        CycNumber::is_zero(self)
    }
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self - other
    }
}

/// Exponent data of a monomial; multiplication of monomials adds exponents.
pub trait Monomial: Copy + Ord + Debug {
    fn mul(self, other: Self) -> Self;
    fn one() -> Self;
}

impl<const N: usize> Monomial for [u32; N] {
    fn mul(self, other: Self) -> Self {
        let mut out = self;
        for (a, b) in out.iter_mut().zip(other) {
            *a += b;
        }
        out
    }
    fn one() -> Self {
        [0; N]
    }
}

impl Monomial for i32 {
    fn mul(self, other: Self) -> Self {
        self + other
    }
    fn one() -> Self {
        0
    }
}

impl Monomial for u32 {
    fn mul(self, other: Self) -> Self {
        self + other
    }
    fn one() -> Self {
        0
    }
}

#[derive(Clone, PartialEq, Debug)]
pub struct SparsePoly<M: Monomial, C: Coefficient> {
    terms: BTreeMap<M, C>,
}

impl<M: Monomial, C: Coefficient> Default for SparsePoly<M, C> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<M: Monomial, C: Coefficient> SparsePoly<M, C> {
    pub fn zero() -> Self {
        SparsePoly {
            terms: BTreeMap::new(),
        }
    }

    pub fn term(m: M, c: C) -> Self {
        let mut p = Self::zero();
        p.add_term(m, c);
        p
    }

    pub fn constant(c: C) -> Self {
        Self::term(M::one(), c)
    }

    pub fn from_terms<I: IntoIterator<Item = (M, C)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&M, &C)> + '_ {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (M, C)> {
        self.terms.into_iter()
    }

    pub fn coeff(&self, m: &M) -> Option<&C> {
        self.terms.get(m)
    }

    /// Largest monomial in the map order.
    pub fn max_monomial(&self) -> Option<M> {
        self.terms.keys().next_back().copied()
    }

    pub fn min_monomial(&self) -> Option<M> {
        self.terms.keys().next().copied()
    }

    pub fn add_term(&mut self, m: M, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let sum = e.get().add_ref(&c);
                if sum.is_zero() {
                    e.remove();
                } else {
                    e.insert(sum);
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Self, shift: M, scale: &C) {
        for (m, c) in &other.terms {
            self.add_term(m.mul(shift), c.mul_ref(scale));
        }
    }

    pub fn scale(&self, c: &C) -> Self {
        Self::from_terms(self.terms.iter().map(|(m, x)| (*m, x.mul_ref(c))))
    }

    pub fn shift(&self, m: M) -> Self {
        SparsePoly {
            terms: self.terms.iter().map(|(k, c)| (k.mul(m), c.clone())).collect(),
        }
    }

    pub fn map_coeffs<D: Coefficient>(&self, f: impl Fn(&C) -> D) -> SparsePoly<M, D> {
        SparsePoly::from_terms(self.terms.iter().map(|(m, c)| (*m, f(c))))
    }

    pub fn map_monomials<N: Monomial>(&self, f: impl Fn(M) -> N) -> SparsePoly<N, C> {
        SparsePoly::from_terms(self.terms.iter().map(|(m, c)| (f(*m), c.clone())))
    }

    pub fn pow(&self, e: u32, one: &C) -> Self {
        let mut acc = Self::constant(one.clone());
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }
}

impl<const N: usize, C: Coefficient> SparsePoly<[u32; N], C> {
    /// Total degree of the monomials if they all agree.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degs = self.terms.keys().map(|m| m.iter().sum::<u32>());
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.homogeneous_degree().is_some()
    }

    pub fn degree_in(&self, var: usize) -> Option<u32> {
        self.terms.keys().map(|m| m[var]).max()
    }

    pub fn var(var: usize, one: C) -> Self {
        let mut m = [0; N];
        m[var] = 1;
        Self::term(m, one)
    }
}

impl<M: Monomial, C: Coefficient> Coefficient for SparsePoly<M, C> {
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self - other
    }
}

impl<'a, M: Monomial, C: Coefficient> Add<&'a SparsePoly<M, C>> for &'a SparsePoly<M, C> {
    type Output = SparsePoly<M, C>;
    fn add(self, rhs: &SparsePoly<M, C>) -> SparsePoly<M, C> {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, c.clone());
        }
        out
    }
}

impl<'a, M: Monomial, C: Coefficient> Sub<&'a SparsePoly<M, C>> for &'a SparsePoly<M, C> {
    type Output = SparsePoly<M, C>;
    fn sub(self, rhs: &SparsePoly<M, C>) -> SparsePoly<M, C> {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, c.neg_ref());
        }
        out
    }
}

impl<M: Monomial, C: Coefficient> Neg for &SparsePoly<M, C> {
    type Output = SparsePoly<M, C>;
    fn neg(self) -> SparsePoly<M, C> {
        SparsePoly {
            terms: self.terms.iter().map(|(m, c)| (*m, c.neg_ref())).collect(),
        }
    }
}

impl<'a, M: Monomial, C: Coefficient> Mul<&'a SparsePoly<M, C>> for &'a SparsePoly<M, C> {
    type Output = SparsePoly<M, C>;
    fn mul(self, rhs: &SparsePoly<M, C>) -> SparsePoly<M, C> {
        let mut out = SparsePoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(*mb), ca.mul_ref(cb));
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl<M: Monomial, C: Coefficient> $tr<SparsePoly<M, C>> for SparsePoly<M, C> {
            type Output = SparsePoly<M, C>;
            fn $m(self, rhs: SparsePoly<M, C>) -> SparsePoly<M, C> {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

/// Univariate polynomials over a field, with Euclidean division.
pub type UniPoly<C> = SparsePoly<u32, C>;

impl UniPoly<CycNumber> {
    pub fn degree(&self) -> Option<u32> {
        self.max_monomial()
    }

    pub fn leading_coeff(&self) -> Option<&CycNumber> {
        self.terms.values().next_back()
    }

    pub fn derivative(&self) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .filter(|(e, _)| **e > 0)
                .map(|(e, c)| (e - 1, c.scale(&BigRational::from_integer((*e).into())))),
        )
    }

    /// Quotient and remainder; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lc_inv = divisor
            .leading_coeff()
            .unwrap()
            .inverse()
            .expect("leading coefficient is nonzero");
        let mut rem = self.clone();
        let mut quot = Self::zero();
        while let Some(rd) = rem.degree() {
            if rd < dd {
                break;
            }
            let c = rem.leading_coeff().unwrap() * &lc_inv;
            let shift = rd - dd;
            quot.add_term(shift, c.clone());
            rem.add_scaled(divisor, shift, &(-&c));
        }
        (quot, rem)
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        match a.leading_coeff() {
            Some(lc) => {
                let inv = lc.inverse().unwrap();
                a.scale(&inv)
            }
            None => a,
        }
    }
}
