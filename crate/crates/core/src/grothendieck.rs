//! The split Grothendieck ring `A_W` over `Z[v, v^{-1}]`.
//!
//! Elements are stored in the basis `s^i C_j`, `(i, j) ∈ Σ` with
//! `Σ = {0..d-1} × {0..d-2} ∪ {(0, d-1)}`. Multiplication uses only the
//! relations `C_1 C_i = C_{i+1} + s C_{i-1}`, `C_1 C_{d-1} = (v + v^{-1}) C_{d-1}`,
//! `s C_{d-1} = C_{d-1}` and `s^d = 1`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_traits::One;
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::bimodule::{BimoduleError, DecompList, Decomposer, ShiftedIndec, enumerate_indecomposables};
use crate::laurent::{int, quantum_integer, v_plus_v_inv, v_pow, LaurentInt};
use crate::poly::SparsePoly;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GrothendieckError {
    #[error("order must be at least 2, got {0}")]
    InvalidOrder(usize),
    #[error("elements of different orders: {0} and {1}")]
    OrderMismatch(usize, usize),
    #[error("malformed ring element: {0}")]
    Parse(String),
    #[error("{check} failed: {detail}")]
    VerificationFailure { check: String, detail: String },
    #[error(transparent)]
    Bimodule(#[from] BimoduleError),
}

fn failure(check: &str, detail: String) -> GrothendieckError {
    GrothendieckError::VerificationFailure {
        check: check.to_string(),
        detail,
    }
}

/// Index `(i, j)` of the basis element `s^i C_j`; ordered by `j`, then `i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BasisIdx {
    pub j: usize,
    pub i: usize,
}

impl BasisIdx {
    /// Canonical index of `s^i C_j`, absorbing `s` into `C_{d-1}`.
    pub fn new(order: usize, i: i64, j: usize) -> Self {
        assert!(j < order, "C_{j} is not a basis element for d={order}");
        let i = if j + 1 == order { 0 } else { i.rem_euclid(order as i64) as usize };
        BasisIdx { j, i }
    }

    /// Parses `s^i C_j`.
    pub fn parse(order: usize, s: &str) -> Result<Self, GrothendieckError> {
        let err = || GrothendieckError::Parse(s.to_string());
        let (a, b) = s.trim().split_once(' ').ok_or_else(err)?;
        let i: i64 = a.strip_prefix("s^").ok_or_else(err)?.parse().map_err(|_| err())?;
        let j: usize = b.trim().strip_prefix("C_").ok_or_else(err)?.parse().map_err(|_| err())?;
        if j >= order || i < 0 || i as usize >= order {
            return Err(err());
        }
        Ok(Self::new(order, i, j))
    }
}

impl fmt::Display for BasisIdx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "s^{} C_{}", self.i, self.j)
    }
}

/// The basis `Σ` in the order used for tables and the module `U`.
pub fn aw_basis(order: usize) -> Vec<BasisIdx> {
    let mut out: Vec<BasisIdx> = (0..order - 1)
        .flat_map(|j| (0..order).map(move |i| BasisIdx { j, i }))
        .collect();
    out.push(BasisIdx { j: order - 1, i: 0 });
    out
}

/// Position of a basis element in [`aw_basis`].
pub fn basis_position(order: usize, b: BasisIdx) -> usize {
    b.j * order + b.i
}

#[derive(Debug, Clone, PartialEq)]
pub struct AWElement {
    order: usize,
    coeffs: BTreeMap<BasisIdx, LaurentInt>,
}

impl AWElement {
    pub fn zero(order: usize) -> Self {
        AWElement {
            order,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn one(order: usize) -> Self {
        Self::basis(order, 0, 0)
    }

    /// `s^i C_j`.
    pub fn basis(order: usize, i: i64, j: usize) -> Self {
        let mut out = Self::zero(order);
        out.add_term(BasisIdx::new(order, i, j), int(1));
        out
    }

    pub fn s_pow(order: usize, i: i64) -> Self {
        Self::basis(order, i, 0)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn add_term(&mut self, b: BasisIdx, c: LaurentInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(b).or_insert_with(LaurentInt::zero);
        *entry = &*entry + &c;
        if entry.is_zero() {
            self.coeffs.remove(&b);
        }
    }

    pub fn coeff(&self, b: BasisIdx) -> LaurentInt {
        self.coeffs.get(&b).cloned().unwrap_or_else(LaurentInt::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (BasisIdx, &LaurentInt)> + '_ {
        self.coeffs.iter().map(|(b, c)| (*b, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn scale(&self, c: &LaurentInt) -> Self {
        let mut out = Self::zero(self.order);
        for (b, x) in self.terms() {
            out.add_term(b, x * c);
        }
        out
    }

    /// Multiplication by `s^k`.
    pub fn s_shift(&self, k: i64) -> Self {
        let mut out = Self::zero(self.order);
        for (b, x) in self.terms() {
            out.add_term(BasisIdx::new(self.order, b.i as i64 + k, b.j), x.clone());
        }
        out
    }

    /// Image in `A_W / (s - 1)`, in the basis `C_0, …, C_{d-1}`.
    pub fn collapse_s(&self) -> Vec<LaurentInt> {
        let mut out = vec![LaurentInt::zero(); self.order];
        for (b, x) in self.terms() {
            out[b.j] = &out[b.j] + x;
        }
        out
    }

    /// Reads the map form `{"s^i C_j": "<Laurent>"}`.
    pub fn from_string_map<'a, I>(order: usize, entries: I) -> Result<Self, GrothendieckError>
    where
        I: IntoIterator<Item = (&'a str, &'a str)>,
    {
        let mut out = Self::zero(order);
        for (k, v) in entries {
            let b = BasisIdx::parse(order, k)?;
            let c: LaurentInt = v.parse().map_err(|_| GrothendieckError::Parse(v.to_string()))?;
            out.add_term(b, c);
        }
        Ok(out)
    }

    /// `(key, Laurent string)` pairs in basis order.
    pub fn to_string_pairs(&self) -> Vec<(String, String)> {
        self.terms().map(|(b, c)| (b.to_string(), c.to_string())).collect()
    }
}

impl Serialize for AWElement {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.coeffs.len()))?;
        for (k, v) in self.to_string_pairs() {
            map.serialize_entry(&k, &v)?;
        }
        map.end()
    }
}

/// `(v^-1 + v) s^0 C_3 + s^1 C_0`; a unit coefficient is omitted.
impl fmt::Display for AWElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms()
            .map(|(b, c)| if *c == int(1) { b.to_string() } else { format!("({c}) {b}") })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl<'a> Add<&'a AWElement> for &'a AWElement {
    type Output = AWElement;
    fn add(self, rhs: &AWElement) -> AWElement {
        assert_eq!(self.order, rhs.order, "order mismatch");
        let mut out = self.clone();
        for (b, x) in rhs.terms() {
            out.add_term(b, x.clone());
        }
        out
    }
}

impl Neg for &AWElement {
    type Output = AWElement;
    fn neg(self) -> AWElement {
        self.scale(&int(-1))
    }
}

impl<'a> Sub<&'a AWElement> for &'a AWElement {
    type Output = AWElement;
    fn sub(self, rhs: &AWElement) -> AWElement {
        self + &(-rhs)
    }
}

/// `A_W` for a fixed order with the table of products `C_b · C_e`.
#[derive(Debug, Clone)]
pub struct AwRing {
    order: usize,
    /// `cc[b][e] = C_b · C_e`
    cc: Vec<Vec<AWElement>>,
}

impl AwRing {
    pub fn new(order: usize) -> Result<Self, GrothendieckError> {
        if order < 2 {
            return Err(GrothendieckError::InvalidOrder(order));
        }
        let basis_c: Vec<AWElement> = (0..order).map(|e| AWElement::basis(order, 0, e)).collect();
        let mut cc: Vec<Vec<AWElement>> = vec![basis_c.clone()];
        cc.push(basis_c.iter().map(c1_times).collect());
        // C_b = C_1 C_{b-1} - s C_{b-2}
        for b in 2..order {
            let row = (0..order)
                .map(|e| &c1_times(&cc[b - 1][e]) - &cc[b - 2][e].s_shift(1))
                .collect();
            cc.push(row);
        }
        Ok(AwRing { order, cc })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn basis_product(&self, x: BasisIdx, y: BasisIdx) -> AWElement {
        self.cc[x.j][y.j].s_shift((x.i + y.i) as i64)
    }

    pub fn multiply(&self, x: &AWElement, y: &AWElement) -> AWElement {
        assert_eq!(x.order, self.order, "order mismatch");
        assert_eq!(y.order, self.order, "order mismatch");
        let mut out = AWElement::zero(self.order);
        for (bx, cx) in x.terms() {
            for (by, cy) in y.terms() {
                let coeff = cx * cy;
                for (b, c) in self.basis_product(bx, by).terms() {
                    out.add_term(b, c * &coeff);
                }
            }
        }
        out
    }

    pub fn pow(&self, x: &AWElement, e: u32) -> AWElement {
        let mut acc = AWElement::one(self.order);
        for _ in 0..e {
            acc = self.multiply(&acc, x);
        }
        acc
    }

    /// Evaluates a polynomial in two commuting variables at `(C_1, s)`.
    pub fn eval_at_c1_s(&self, q: &ComPoly) -> AWElement {
        let c1 = AWElement::basis(self.order, 0, 1);
        let mut out = AWElement::zero(self.order);
        for (&[a, b], coeff) in q.terms() {
            let term = self.pow(&c1, a).s_shift(b as i64);
            out = &out + &term.scale(&LaurentInt::constant(coeff.clone()));
        }
        out
    }

    /// Every product of two basis elements, in basis order.
    pub fn structure_table(&self) -> Vec<(BasisIdx, BasisIdx, AWElement)> {
        let basis = aw_basis(self.order);
        let mut out = Vec::with_capacity(basis.len() * basis.len());
        for &x in &basis {
            for &y in &basis {
                out.push((x, y, self.basis_product(x, y)));
            }
        }
        out
    }
}

/// `C_1 · x` from the defining relations alone.
fn c1_times(x: &AWElement) -> AWElement {
    let d = x.order;
    let mut out = AWElement::zero(d);
    for (b, c) in x.terms() {
        let i = b.i as i64;
        if b.j + 1 == d {
            out.add_term(b, c * &v_plus_v_inv());
        } else {
            out.add_term(BasisIdx::new(d, i, b.j + 1), c.clone());
            if b.j >= 1 {
                out.add_term(BasisIdx::new(d, i + 1, b.j - 1), c.clone());
            }
        }
    }
    out
}

/// One-off product in `A_W`.
pub fn aw_multiply(x: &AWElement, y: &AWElement) -> Result<AWElement, GrothendieckError> {
    if x.order != y.order {
        return Err(GrothendieckError::OrderMismatch(x.order, y.order));
    }
    Ok(AwRing::new(x.order)?.multiply(x, y))
}

/// Integer polynomials in two commuting variables `X, Y`.
pub type ComPoly = SparsePoly<[u32; 2], BigInt>;

/// `Q_0 = 1`, `Q_1 = X`, `Q_{i+1} = X Q_i - Y Q_{i-1}`.
pub fn q_poly(i: usize) -> ComPoly {
    let x = ComPoly::term([1, 0], BigInt::one());
    let y = ComPoly::term([0, 1], BigInt::one());
    let (mut prev, mut cur) = (ComPoly::zero(), ComPoly::constant(BigInt::one()));
    for _ in 0..i {
        let next = &(&x * &cur) - &(&y * &prev);
        prev = cur;
        cur = next;
    }
    cur
}

fn binomial(n: usize, k: usize) -> BigInt {
    let mut acc = BigInt::one();
    for t in 0..k {
        acc = acc * BigInt::from(n - t) / BigInt::from(t + 1);
    }
    acc
}

/// `Σ_{i=0}^{⌊k/2⌋} binom(k-i, i) (-Y)^i X^{k-2i}`.
pub fn binomial_poly(k: usize) -> ComPoly {
    ComPoly::from_terms((0..=k / 2).map(|i| {
        let sign = if i % 2 == 0 { BigInt::one() } else { -BigInt::one() };
        ([(k - 2 * i) as u32, i as u32], sign * binomial(k - i, i))
    }))
}

/// The binomial sum for `C_{d-1}`, evaluated in `A_W`; fails unless every
/// `C_k` (`1 ≤ k ≤ d-1`) equals its binomial sum.
pub fn presentation2_cd1(ring: &AwRing) -> Result<AWElement, GrothendieckError> {
    let d = ring.order();
    let mut last = AWElement::one(d);
    for k in 1..d {
        let value = ring.eval_at_c1_s(&binomial_poly(k));
        let expected = AWElement::basis(d, 0, k);
        if value != expected {
            return Err(failure("binomial formula", format!("C_{k} evaluates to {value}")));
        }
        last = value;
    }
    Ok(last)
}

/// Checks `C_i = Q_i(C_1, s)` for `1 ≤ i ≤ d-1`.
pub fn verify_q_recursion(ring: &AwRing) -> Result<(), GrothendieckError> {
    let d = ring.order();
    for i in 1..d {
        let value = ring.eval_at_c1_s(&q_poly(i));
        if value != AWElement::basis(d, 0, i) {
            return Err(failure("Q recursion", format!("Q_{i}(C_1, s) = {value}")));
        }
    }
    Ok(())
}

/// `⟨O(s^{[i,i+j]})[k]⟩ = v^{j-k} s^i C_j`.
pub fn decat_indec(m: &ShiftedIndec) -> AWElement {
    let d = m.set.order();
    let j = m.set.len() - 1;
    AWElement::basis(d, m.set.start() as i64, j).scale(&v_pow(j as i32 - m.shift as i32))
}

pub fn decat(list: &DecompList, order: usize) -> AWElement {
    let mut out = AWElement::zero(order);
    for (m, mult) in list.iter() {
        out = &out + &decat_indec(m).scale(&int(mult as i64));
    }
    out
}

/// Report of a passed ring-level check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub name: String,
    pub checks: usize,
}

/// Compares `⟨a ⊗ b⟩` with `⟨a⟩⟨b⟩` for all pairs of basis objects
/// `O(A)[|A| - 1]`.
pub fn categorification_check(order: usize) -> Result<CheckReport, GrothendieckError> {
    let ring = AwRing::new(order)?;
    let dec = Decomposer::new(order)?;
    let objs: Vec<ShiftedIndec> = enumerate_indecomposables(order)?
        .into_iter()
        .map(ShiftedIndec::standard)
        .collect();
    let mut checks = 0;
    for a in &objs {
        for b in &objs {
            let lhs = decat(&dec.decompose(a, b)?, order);
            let rhs = ring.multiply(&decat_indec(a), &decat_indec(b));
            if lhs != rhs {
                return Err(failure("categorification", format!("{a} ⊗ {b}: {lhs} vs {rhs}")));
            }
            checks += 1;
        }
    }
    Ok(CheckReport {
        name: format!("categorification d={order}"),
        checks,
    })
}

/// Sparse vector over `Z[v, v^{-1}]`, keyed by basis position.
pub type LVec = BTreeMap<usize, LaurentInt>;

fn vec_add_scaled(acc: &mut LVec, x: &LVec, c: &LaurentInt) {
    for (k, v) in x {
        let entry = acc.entry(*k).or_insert_with(LaurentInt::zero);
        *entry = &*entry + &(v * c);
        if entry.is_zero() {
            acc.remove(k);
        }
    }
}

fn unit_vec(k: usize) -> LVec {
    [(k, int(1))].into()
}

/// The module `U` with basis `E_{i,j}`, `(i, j) ∈ Σ`: sparse columns of the
/// operators `s` and `C`.
#[derive(Debug, Clone)]
pub struct UModule {
    order: usize,
    pub s: Vec<LVec>,
    pub c: Vec<LVec>,
}

impl UModule {
    pub fn dim(&self) -> usize {
        self.s.len()
    }

    fn apply(cols: &[LVec], x: &LVec) -> LVec {
        let mut out = LVec::new();
        for (k, v) in x {
            vec_add_scaled(&mut out, &cols[*k], v);
        }
        out
    }

    pub fn apply_s(&self, x: &LVec) -> LVec {
        Self::apply(&self.s, x)
    }

    pub fn apply_c(&self, x: &LVec) -> LVec {
        Self::apply(&self.c, x)
    }

    /// Applies a polynomial in `(C, s)`.
    pub fn apply_poly(&self, q: &ComPoly, x: &LVec) -> LVec {
        let mut out = LVec::new();
        for (&[a, b], coeff) in q.terms() {
            let mut y = x.clone();
            for _ in 0..b {
                y = self.apply_s(&y);
            }
            for _ in 0..a {
                y = self.apply_c(&y);
            }
            vec_add_scaled(&mut out, &y, &LaurentInt::constant(coeff.clone()));
        }
        out
    }

    /// Applies `s^i C_j`, with `C_j` given by the binomial sum.
    pub fn apply_basis(&self, b: BasisIdx, x: &LVec) -> LVec {
        let mut y = self.apply_poly(&binomial_poly(b.j), x);
        for _ in 0..b.i {
            y = self.apply_s(&y);
        }
        y
    }
}

/// Operators of `s` and `C` on `U`:
/// `C E_{i,0} = E_{i,1}`, `C E_{i,j} = E_{i,j+1} + E_{i+1,j-1}`,
/// `C E_{d-1} = (v + v^{-1}) E_{d-1}`, `s E_{i,j} = E_{i+1,j}`, `s E_{d-1} = E_{d-1}`.
pub fn u_module_matrices(order: usize) -> Result<UModule, GrothendieckError> {
    if order < 2 {
        return Err(GrothendieckError::InvalidOrder(order));
    }
    let pos = |i: i64, j: usize| basis_position(order, BasisIdx::new(order, i, j));
    let basis = aw_basis(order);
    let mut s = Vec::with_capacity(basis.len());
    let mut c = Vec::with_capacity(basis.len());
    for b in &basis {
        let (i, j) = (b.i as i64, b.j);
        s.push(unit_vec(pos(i + 1, j)));
        let mut col = LVec::new();
        if j + 1 == order {
            col.insert(pos(0, j), v_plus_v_inv());
        } else {
            vec_add_scaled(&mut col, &unit_vec(pos(i, j + 1)), &int(1));
            if j >= 1 {
                vec_add_scaled(&mut col, &unit_vec(pos(i + 1, j - 1)), &int(1));
            }
        }
        c.push(col);
    }
    Ok(UModule { order, s, c })
}

/// Checks the relations of the second presentation on `U` and that
/// `s^i C_j E_{0,0} = E_{i,j}`.
pub fn verify_u_module(u: &UModule) -> Result<CheckReport, GrothendieckError> {
    let d = u.order;
    let n = u.dim();
    let name = "U-module relations";
    let top = binomial_poly(d - 1);
    let mut checks = 0;
    for k in 0..n {
        let e = unit_vec(k);
        let mut y = e.clone();
        for step in 1..=d {
            y = u.apply_s(&y);
            if k == 0 && step < d && y == e {
                return Err(failure(name, format!("s has order {step} on E_0,0")));
            }
        }
        if y != e {
            return Err(failure(name, format!("s^d E_{k} ≠ E_{k}")));
        }
        if u.apply_s(&u.apply_c(&e)) != u.apply_c(&u.apply_s(&e)) {
            return Err(failure(name, format!("sC ≠ Cs on E_{k}")));
        }
        let top_e = u.apply_poly(&top, &e);
        if u.apply_s(&top_e) != top_e {
            return Err(failure(name, format!("s C_{{d-1}} ≠ C_{{d-1}} on E_{k}")));
        }
        let mut scaled = LVec::new();
        vec_add_scaled(&mut scaled, &top_e, &v_plus_v_inv());
        if u.apply_c(&top_e) != scaled {
            return Err(failure(name, format!("C C_{{d-1}} ≠ (v+v^-1) C_{{d-1}} on E_{k}")));
        }
        checks += 4;
    }
    let basis = aw_basis(d);
    let e00 = unit_vec(0);
    for (k, b) in basis.iter().enumerate() {
        if u.apply_basis(*b, &e00) != unit_vec(k) {
            return Err(failure(name, format!("{b} E_0,0 is not E_{k}")));
        }
        // C_{d-1} E_{i,j} = [v]_j E_{d-1}
        let image = u.apply_poly(&top, &unit_vec(k));
        let expected: LVec = [(n - 1, quantum_integer(b.j as u32))].into();
        if image != expected {
            return Err(failure(name, format!("C_{{d-1}} E_{k} ≠ [v]_{} E_d-1", b.j)));
        }
        checks += 2;
    }
    Ok(CheckReport {
        name: format!("U-module d={d}"),
        checks,
    })
}

/// Products of basis elements computed through the second presentation:
/// `x y E_{0,0}` read off in the basis `E`.
pub fn product_via_u(u: &UModule, x: BasisIdx, y: BasisIdx) -> AWElement {
    let v = u.apply_basis(x, &u.apply_basis(y, &unit_vec(0)));
    let basis = aw_basis(u.order);
    let mut out = AWElement::zero(u.order);
    for (k, c) in v {
        out.add_term(basis[k], c);
    }
    out
}

/// Checks that both presentations give the same product on every pair of
/// basis elements.
pub fn verify_presentations_agree(ring: &AwRing, u: &UModule) -> Result<CheckReport, GrothendieckError> {
    let basis = aw_basis(ring.order());
    let mut checks = 0;
    for &x in &basis {
        for &y in &basis {
            let a = ring.basis_product(x, y);
            let b = product_via_u(u, x, y);
            if a != b {
                return Err(failure("presentations agree", format!("{x} · {y}: {a} vs {b}")));
            }
            checks += 1;
        }
    }
    Ok(CheckReport {
        name: format!("presentations d={}", ring.order()),
        checks,
    })
}

/// Polynomials in `T` over `Z[v, v^{-1}]`.
pub type HeckePoly = SparsePoly<u32, LaurentInt>;

/// `(T - v^{-1}) Σ_i binom(d-1-i, i) (-1)^i (T + v)^{d-1-2i}`, expanded.
pub fn hecke_polynomial(order: usize) -> HeckePoly {
    let t = HeckePoly::term(1, int(1));
    let t_plus_v = &t + &HeckePoly::constant(v_pow(1));
    let one = int(1);
    let mut sum = HeckePoly::zero();
    for i in 0..=(order - 1) / 2 {
        let sign: i64 = if i % 2 == 0 { 1 } else { -1 };
        let c = LaurentInt::constant(binomial(order - 1 - i, i) * BigInt::from(sign));
        sum = &sum + &t_plus_v.pow((order - 1 - 2 * i) as u32, &one).scale(&c);
    }
    &(&t - &HeckePoly::constant(v_pow(-1))) * &sum
}

/// The coefficients `a_0, …, a_{d-1}` of the monic relation
/// `T^d + a_{d-1} T^{d-1} + … + a_0 = 0`.
pub fn hecke_quotient_poly(order: usize) -> Result<Vec<LaurentInt>, GrothendieckError> {
    if order < 2 {
        return Err(GrothendieckError::InvalidOrder(order));
    }
    let p = hecke_polynomial(order);
    if p.max_monomial() != Some(order as u32) || p.coeff(&(order as u32)) != Some(&int(1)) {
        return Err(failure("Hecke relation", format!("not monic of degree {order}")));
    }
    Ok((0..order as u32)
        .map(|k| p.coeff(&k).cloned().unwrap_or_else(LaurentInt::zero))
        .collect())
}

/// Matrix of `C_1` on `A_W / (s - 1)` in the basis `C_0, …, C_{d-1}`
/// (columns are images).
pub fn c1_matrix_s1(order: usize) -> Vec<Vec<LaurentInt>> {
    let mut cols = vec![vec![LaurentInt::zero(); order]; order];
    for j in 0..order {
        if j + 1 == order {
            cols[j][j] = v_plus_v_inv();
        } else {
            cols[j][j + 1] = int(1);
            if j >= 1 {
                cols[j][j - 1] = &cols[j][j - 1] + &int(1);
            }
        }
    }
    cols
}

/// Checks that the relation annihilates `T = C_1 - v` on every basis
/// vector of `A_W / (s - 1)`, and that the `C_1` matrix agrees with the ring
/// product after setting `s = 1`.
pub fn verify_hecke_relation(ring: &AwRing) -> Result<CheckReport, GrothendieckError> {
    let d = ring.order();
    let name = "Hecke relation";
    let cols = c1_matrix_s1(d);
    let c1 = AWElement::basis(d, 0, 1);
    for (j, col) in cols.iter().enumerate() {
        let collapsed = ring.multiply(&c1, &AWElement::basis(d, 0, j)).collapse_s();
        if &collapsed != col {
            return Err(failure(name, format!("C_1 C_{j} differs after s = 1")));
        }
    }
    let apply_t = |x: &[LaurentInt]| -> Vec<LaurentInt> {
        let mut out: Vec<LaurentInt> = x.iter().map(|c| -&(c * &v_pow(1))).collect();
        for (j, c) in x.iter().enumerate() {
            for (r, m) in cols[j].iter().enumerate() {
                out[r] = &out[r] + &(m * c);
            }
        }
        out
    };
    let p = hecke_polynomial(d);
    for k in 0..d {
        let mut power = vec![LaurentInt::zero(); d];
        power[k] = int(1);
        let mut acc = vec![LaurentInt::zero(); d];
        for e in 0..=d as u32 {
            if let Some(c) = p.coeff(&e) {
                for r in 0..d {
                    acc[r] = &acc[r] + &(c * &power[r]);
                }
            }
            power = apply_t(&power);
        }
        if acc.iter().any(|c| !c.is_zero()) {
            return Err(failure(name, format!("p(C_1 - v) C_{k} ≠ 0")));
        }
    }
    Ok(CheckReport {
        name: format!("Hecke relation d={d}"),
        checks: 2 * d,
    })
}
