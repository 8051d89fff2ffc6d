//! Exact arithmetic in the cyclotomic field `Q(ζ_d)`.
//!
//! Elements are stored in the power basis `1, ζ, …, ζ^{φ(d)-1}` and kept fully
//! reduced modulo the cyclotomic polynomial `Φ_d`, so two elements are equal
//! exactly when their coefficient vectors are equal.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CycError {
    #[error("division by zero in Q(zeta_{0})")]
    DivisionByZero(usize),
    #[error("context mismatch: Q(zeta_{0}) vs Q(zeta_{1})")]
    ContextMismatch(usize, usize),
    #[error("order must be at least 2, got {0}")]
    InvalidOrder(usize),
    #[error("malformed rational {0:?}")]
    Parse(String),
    #[error("expected {expected} coefficients, got {got}")]
    Length { expected: usize, got: usize },
}

/// Reduction data for `Q(ζ_d)`. Built once per `d` and shared behind an `Arc`.
#[derive(Debug)]
pub struct CycContext {
    order: usize,
    /// Coefficients of `Φ_d`, lowest degree first; monic.
    modulus: Vec<BigInt>,
    /// Reduced power-basis vectors of `ζ^k` for `k = 0..d`.
    zeta_powers: Vec<Vec<BigRational>>,
}

impl CycContext {
    pub fn new(order: usize) -> Result<Arc<Self>, CycError> {
        if order < 2 {
            return Err(CycError::InvalidOrder(order));
        }
        let modulus = cyclotomic_polynomial(order);
        let degree = modulus.len() - 1;
        let mut zeta_powers = Vec::with_capacity(order);
        let mut current = vec![BigRational::zero(); degree];
        current[0] = BigRational::one();
        for _ in 0..order {
            zeta_powers.push(current.clone());
            // multiply by x and reduce the overflowing top coefficient
            let top = current[degree - 1].clone();
            for k in (1..degree).rev() {
                current[k] = current[k - 1].clone();
            }
            current[0] = BigRational::zero();
            if !top.is_zero() {
                for (k, c) in modulus.iter().take(degree).enumerate() {
                    current[k] -= &top * BigRational::from_integer(c.clone());
                }
            }
        }
        Ok(Arc::new(CycContext {
            order,
            modulus,
            zeta_powers,
        }))
    }

    /// The order `d` of ζ.
    pub fn order(&self) -> usize {
        self.order
    }

    /// `φ(d)`, the dimension of the field over `Q`.
    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    /// Integer coefficients of `Φ_d`, lowest degree first.
    pub fn modulus(&self) -> &[BigInt] {
        &self.modulus
    }
}

/// `Φ_n` by dividing `x^n - 1` by `Φ_e` for every proper divisor `e` of `n`.
pub fn cyclotomic_polynomial(n: usize) -> Vec<BigInt> {
    let mut num = vec![BigInt::zero(); n + 1];
    num[0] = BigInt::from(-1);
    num[n] = BigInt::one();
    for e in (1..n).filter(|e| n.is_multiple_of(*e)) {
        num = exact_monic_div(&num, &cyclotomic_polynomial(e));
    }
    num
}

fn exact_monic_div(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let qd = num.len() - 1 - dd;
    let mut quot = vec![BigInt::zero(); qd + 1];
    for k in (0..=qd).rev() {
        let c = rem[k + dd].clone();
        if c.is_zero() {
            continue;
        }
        for (t, dc) in den.iter().enumerate() {
            rem[k + t] -= &c * dc;
        }
        quot[k] = c;
    }
    debug_assert!(rem.iter().all(Zero::is_zero));
    quot
}

/// An element of `Q(ζ_d)` in canonical power-basis form.
#[derive(Clone)]
pub struct CycNumber {
    ctx: Arc<CycContext>,
    coeffs: Vec<BigRational>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Checked field arithmetic: the only entry point that reports context
/// mismatches instead of panicking.
pub fn field_arith(a: &CycNumber, b: &CycNumber, op: FieldOp) -> Result<CycNumber, CycError> {
    a.check_same(b)?;
    Ok(match op {
        FieldOp::Add => a + b,
        FieldOp::Sub => a - b,
        FieldOp::Mul => a * b,
        FieldOp::Div => a.checked_div(b)?,
    })
}

impl CycNumber {
    pub fn zero(ctx: &Arc<CycContext>) -> Self {
        CycNumber {
            ctx: ctx.clone(),
            coeffs: vec![BigRational::zero(); ctx.degree()],
        }
    }

    pub fn one(ctx: &Arc<CycContext>) -> Self {
        Self::from_integer(ctx, 1)
    }

    pub fn from_integer(ctx: &Arc<CycContext>, n: i64) -> Self {
        Self::from_rational(ctx, BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_rational(ctx: &Arc<CycContext>, q: BigRational) -> Self {
        let mut out = Self::zero(ctx);
        out.coeffs[0] = q;
        out
    }

    /// Builds an element from an arbitrary-length coefficient vector in the
    /// monomial basis `1, ζ, ζ², …`, reducing it into canonical form.
    pub fn from_coeffs(ctx: &Arc<CycContext>, coeffs: Vec<BigRational>) -> Self {
        let mut out = Self::zero(ctx);
        for (k, c) in coeffs.into_iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (t, z) in ctx.zeta_powers[k % ctx.order].iter().enumerate() {
                if !z.is_zero() {
                    out.coeffs[t] += &c * z;
                }
            }
        }
        out
    }

    /// Canonical form of `ζ^{m mod d}`.
    pub fn zeta_pow(ctx: &Arc<CycContext>, m: i64) -> Self {
        let d = ctx.order as i64;
        let k = m.rem_euclid(d) as usize;
        CycNumber {
            ctx: ctx.clone(),
            coeffs: ctx.zeta_powers[k].clone(),
        }
    }

    /// `σ_i = 1 + ζ + … + ζ^i`.
    pub fn sigma(ctx: &Arc<CycContext>, i: usize) -> Self {
        let mut acc = Self::zero(ctx);
        for r in 0..=i {
            acc += &Self::zeta_pow(ctx, r as i64);
        }
        if i + 1 < ctx.order {
            assert!(!acc.is_zero(), "sigma_{i} vanished in Q(zeta_{})", ctx.order);
        }
        acc
    }

    pub fn context(&self) -> &Arc<CycContext> {
        &self.ctx
    }

    pub fn order(&self) -> usize {
        self.ctx.order
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    /// Rational value if the element lies in `Q`.
    pub fn as_rational(&self) -> Option<&BigRational> {
        self.coeffs[1..]
            .iter()
            .all(Zero::is_zero)
            .then_some(&self.coeffs[0])
    }

    fn check_same(&self, other: &CycNumber) -> Result<(), CycError> {
        if Arc::ptr_eq(&self.ctx, &other.ctx) || self.ctx.order == other.ctx.order {
            Ok(())
        } else {
            Err(CycError::ContextMismatch(self.ctx.order, other.ctx.order))
        }
    }

    fn assert_same(&self, other: &CycNumber) {
        if let Err(e) = self.check_same(other) {
            panic!("{e}");
        }
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        CycNumber {
            ctx: self.ctx.clone(),
            coeffs: self.coeffs.iter().map(|c| c * q).collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(&self.ctx);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse, found by solving `self · c = 1` as a linear
    /// system in the power basis.
    pub fn inverse(&self) -> Result<Self, CycError> {
        if self.is_zero() {
            return Err(CycError::DivisionByZero(self.ctx.order));
        }
        let n = self.ctx.degree();
        // column k of the multiplication matrix is self·ζ^k
        let cols: Vec<CycNumber> = (0..n)
            .map(|k| self * &Self::zeta_pow(&self.ctx, k as i64))
            .collect();
        let mut rows: Vec<Vec<BigRational>> = (0..n)
            .map(|r| {
                let mut row: Vec<BigRational> = cols.iter().map(|c| c.coeffs[r].clone()).collect();
                row.push(if r == 0 {
                    BigRational::one()
                } else {
                    BigRational::zero()
                });
                row
            })
            .collect();
        for col in 0..n {
            let pivot = (col..n)
                .find(|&r| !rows[r][col].is_zero())
                .expect("multiplication by a nonzero field element is invertible");
            rows.swap(col, pivot);
            let inv = rows[col][col].recip();
            for x in rows[col].iter_mut() {
                *x *= &inv;
            }
            for r in 0..n {
                if r != col && !rows[r][col].is_zero() {
                    let f = rows[r][col].clone();
                    for k in col..=n {
                        let delta = &f * &rows[col][k];
                        rows[r][k] -= delta;
                    }
                }
            }
        }
        Ok(CycNumber {
            ctx: self.ctx.clone(),
            coeffs: rows.into_iter().map(|mut r| r.pop().unwrap()).collect(),
        })
    }

    pub fn checked_div(&self, other: &CycNumber) -> Result<Self, CycError> {
        self.check_same(other)?;
        Ok(self * &other.inverse()?)
    }

    /// Value at `ζ = exp(2πi/d)` in double precision.
    ///
    /// Each coefficient is rounded once and each `exp(2πik/d)` is accurate
    /// to a few ulps, so the absolute error is at most about
    /// `4·φ(d)·ε·Σ|c_k|` with `ε` the f64 machine epsilon.
    pub fn embed_complex(&self) -> Complex64 {
        let d = self.ctx.order as f64;
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| {
                let theta = 2.0 * std::f64::consts::PI * k as f64 / d;
                Complex64::from_polar(rational_to_f64(c), theta)
            })
            .sum()
    }

    /// Serialized coefficients, each `"p/q"`.
    pub fn to_strings(&self) -> Vec<String> {
        self.coeffs
            .iter()
            .map(|c| format!("{}/{}", c.numer(), c.denom()))
            .collect()
    }

    pub fn from_strings<S: AsRef<str>>(ctx: &Arc<CycContext>, parts: &[S]) -> Result<Self, CycError> {
        if parts.len() != ctx.degree() {
            return Err(CycError::Length {
                expected: ctx.degree(),
                got: parts.len(),
            });
        }
        let coeffs = parts
            .iter()
            .map(|p| parse_rational(p.as_ref()))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(CycNumber {
            ctx: ctx.clone(),
            coeffs,
        })
    }
}

pub(crate) fn rational_to_f64(q: &BigRational) -> f64 {
    match (q.numer().to_f64(), q.denom().to_f64()) {
        (Some(n), Some(d)) if n.is_finite() && d.is_finite() => n / d,
        _ => q.to_f64().unwrap_or(f64::NAN),
    }
}

pub fn parse_rational(s: &str) -> Result<BigRational, CycError> {
    let s = s.trim();
    let err = || CycError::Parse(s.to_string());
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| err())?;
            let d: BigInt = d.trim().parse().map_err(|_| err())?;
            if d.is_zero() {
                return Err(err());
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| err())?)),
    }
}

impl PartialEq for CycNumber {
    fn eq(&self, other: &Self) -> bool {
        self.ctx.order == other.ctx.order && self.coeffs == other.coeffs
    }
}

impl Eq for CycNumber {}

impl std::hash::Hash for CycNumber {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.ctx.order.hash(state);
        self.coeffs.hash(state);
    }
}

impl fmt::Debug for CycNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyc{}{}", self.ctx.order, self)
    }
}

/// Bracketed power-basis notation, e.g. `[1, -1/2]` for `1 - ζ/2`.
impl fmt::Display for CycNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (k, c) in self.coeffs.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

impl Serialize for CycNumber {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.to_strings().serialize(serializer)
    }
}

impl<'a> Add<&'a CycNumber> for &'a CycNumber {
    type Output = CycNumber;
    fn add(self, rhs: &CycNumber) -> CycNumber {
        self.assert_same(rhs);
        CycNumber {
            ctx: self.ctx.clone(),
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl AddAssign<&CycNumber> for CycNumber {
    fn add_assign(&mut self, rhs: &CycNumber) {
        self.assert_same(rhs);
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a += b;
        }
    }
}

impl<'a> Sub<&'a CycNumber> for &'a CycNumber {
    type Output = CycNumber;
    fn sub(self, rhs: &CycNumber) -> CycNumber {
        self.assert_same(rhs);
        CycNumber {
            ctx: self.ctx.clone(),
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Neg for &CycNumber {
    type Output = CycNumber;
    fn neg(self) -> CycNumber {
        CycNumber {
            ctx: self.ctx.clone(),
            coeffs: self.coeffs.iter().map(|a| -a).collect(),
        }
    }
}

impl<'a> Mul<&'a CycNumber> for &'a CycNumber {
    type Output = CycNumber;
    fn mul(self, rhs: &CycNumber) -> CycNumber {
        self.assert_same(rhs);
        let n = self.ctx.degree();
        let mut raw = vec![BigRational::zero(); 2 * n - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    raw[i + j] += a * b;
                }
            }
        }
        let mut coeffs: Vec<BigRational> = raw.drain(..n).collect();
        // x^k ≡ ζ^k for k ≥ φ(d)
        for (off, c) in raw.into_iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (t, z) in self.ctx.zeta_powers[(n + off) % self.ctx.order]
                .iter()
                .enumerate()
            {
                if !z.is_zero() {
                    coeffs[t] += &c * z;
                }
            }
        }
        CycNumber {
            ctx: self.ctx.clone(),
            coeffs,
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<CycNumber> for CycNumber {
            type Output = CycNumber;
            fn $m(self, rhs: CycNumber) -> CycNumber {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for CycNumber {
    type Output = CycNumber;
    fn neg(self) -> CycNumber {
        -&self
    }
}

impl CycNumber {
    /// `Σ|c_k|`, the scale entering the embedding error bound.
    pub fn coefficient_l1(&self) -> f64 {
        self.coeffs.iter().map(|c| rational_to_f64(&c.abs())).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ctx(d: usize) -> Arc<CycContext> {
        CycContext::new(d).unwrap()
    }

    fn int_vec(v: &[i64]) -> Vec<BigRational> {
        v.iter().map(|&x| BigRational::from_integer(x.into())).collect()
    }

    #[test]
    fn cyclotomic_polynomials() {
        let phi = |n| {
            cyclotomic_polynomial(n)
                .into_iter()
                .map(|c| c.to_i64().unwrap())
                .collect::<Vec<_>>()
        };
        assert_eq!(phi(1), vec![-1, 1]);
        assert_eq!(phi(2), vec![1, 1]);
        assert_eq!(phi(3), vec![1, 1, 1]);
        assert_eq!(phi(4), vec![1, 0, 1]);
        assert_eq!(phi(6), vec![1, -1, 1]);
        assert_eq!(phi(12), vec![1, 0, -1, 0, 1]);
        // degree is Euler's totient
        let totient = [0, 1, 1, 2, 2, 4, 2, 6, 4, 6, 4, 10, 4];
        for d in 2..=12 {
            assert_eq!(ctx(d).degree(), totient[d]);
        }
    }

    #[test]
    fn rejects_small_order() {
        assert_eq!(CycContext::new(1).unwrap_err(), CycError::InvalidOrder(1));
    }

    #[test]
    fn i_squared_is_minus_one() {
        let c = ctx(4);
        let z = CycNumber::zeta_pow(&c, 1);
        assert_eq!(&z * &z, CycNumber::from_integer(&c, -1));
    }

    #[test]
    fn zeta_to_the_d() {
        for d in 2..=12 {
            let c = ctx(d);
            let prod = &CycNumber::zeta_pow(&c, d as i64 - 1) * &CycNumber::zeta_pow(&c, 1);
            assert!(prod.is_one(), "d={d}");
            assert!(CycNumber::zeta_pow(&c, d as i64).is_one());
            assert!(CycNumber::zeta_pow(&c, 0).is_one());
        }
    }

    #[test]
    fn d3_products() {
        let c = ctx(3);
        let one = CycNumber::one(&c);
        let a = &one + &CycNumber::zeta_pow(&c, 1);
        let b = &one + &CycNumber::zeta_pow(&c, 2);
        assert!((&a * &b).is_one());
        // ζ² = -1 - ζ
        assert_eq!(CycNumber::zeta_pow(&c, 2).coeffs(), &int_vec(&[-1, -1])[..]);
    }

    #[test]
    fn sigma_values() {
        let c = ctx(4);
        assert!(CycNumber::sigma(&c, 0).is_one());
        assert!(CycNumber::sigma(&c, 3).is_zero());
        assert_eq!(CycNumber::sigma(&c, 1).coeffs(), &int_vec(&[1, 1])[..]);
        for d in 2..=12 {
            let c = ctx(d);
            for i in 0..d - 1 {
                assert!(!CycNumber::sigma(&c, i).is_zero(), "d={d} i={i}");
            }
            assert!(CycNumber::sigma(&c, d - 1).is_zero());
        }
    }

    #[test]
    fn embedding_values() {
        let c = ctx(4);
        let z = CycNumber::zeta_pow(&c, 1).embed_complex();
        assert!((z - Complex64::new(0.0, 1.0)).norm() < 1e-12);
        let one = CycNumber::one(&c).embed_complex();
        assert_eq!(one, Complex64::new(1.0, 0.0));
        let c3 = ctx(3);
        let s1 = CycNumber::sigma(&c3, 1).embed_complex();
        assert!((s1 - Complex64::new(0.5, 0.866_025_403_784_438_6)).norm() < 1e-9);
    }

    #[test]
    fn division_errors() {
        let c = ctx(5);
        let z = CycNumber::zero(&c);
        let one = CycNumber::one(&c);
        assert_eq!(
            field_arith(&one, &z, FieldOp::Div).unwrap_err(),
            CycError::DivisionByZero(5)
        );
        let other = CycNumber::one(&ctx(7));
        assert_eq!(
            field_arith(&one, &other, FieldOp::Add).unwrap_err(),
            CycError::ContextMismatch(5, 7)
        );
    }

    #[test]
    fn string_round_trip() {
        let c = ctx(5);
        let x = CycNumber::from_coeffs(
            &c,
            vec![
                BigRational::new(1.into(), 2.into()),
                BigRational::from_integer((-3).into()),
                BigRational::zero(),
                BigRational::new(7.into(), 3.into()),
            ],
        );
        let s = x.to_strings();
        assert_eq!(s[0], "1/2");
        assert_eq!(s[1], "-3/1");
        assert_eq!(CycNumber::from_strings(&c, &s).unwrap(), x);
        assert!(CycNumber::from_strings(&c, &["1/0", "0", "0", "0"]).is_err());
    }

    fn element(d: usize) -> impl Strategy<Value = CycNumber> {
        let c = ctx(d);
        let n = c.degree();
        proptest::collection::vec((-6i64..=6, 1i64..=4), n).prop_map(move |v| {
            CycNumber::from_coeffs(
                &c,
                v.into_iter()
                    .map(|(p, q)| BigRational::new(p.into(), q.into()))
                    .collect(),
            )
        })
    }

    fn triple() -> impl Strategy<Value = (CycNumber, CycNumber, CycNumber)> {
        (2usize..=12).prop_flat_map(|d| (element(d), element(d), element(d)))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(96))]

        #[test]
        fn field_axioms((a, b, c) in triple()) {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            if !a.is_zero() {
                prop_assert!((&a * &a.inverse().unwrap()).is_one());
                let q = field_arith(&b, &a, FieldOp::Div).unwrap();
                prop_assert_eq!(&q * &a, b.clone());
            }
        }

        #[test]
        fn embedding_is_multiplicative((a, b, _c) in triple()) {
            let lhs = (&a * &b).embed_complex();
            let rhs = a.embed_complex() * b.embed_complex();
            prop_assert!((lhs - rhs).norm() < 1e-9);
        }

        #[test]
        fn zeta_powers_add(d in 2usize..=12, m in 0i64..24, n in 0i64..24) {
            let c = ctx(d);
            let m = m % (2 * d as i64);
            let n = n % (2 * d as i64);
            prop_assert_eq!(
                &CycNumber::zeta_pow(&c, m) * &CycNumber::zeta_pow(&c, n),
                CycNumber::zeta_pow(&c, m + n)
            );
        }
    }
}
