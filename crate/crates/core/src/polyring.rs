//! Graded polynomials in `X, Y` (and `Z`) over `Q(ζ_d)`, the generators
//! `P_i` and `P_A` of the ideals cutting out unions of graphs, normal forms
//! modulo those ideals, and the splitting coefficients relating
//! `P_k(X, Y)` to `P_i(X, Z)` and `P_j(Z, Y)`.
//!
//! Grading convention: `deg X = deg Y = deg Z = 2`. Polynomial degrees below
//! are counted per variable, so a polynomial of degree `n` lives in grading
//! degree `2n`.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::bimodule::CycSet;
use crate::cyclotomic::{CycContext, CycError, CycNumber};
use crate::poly::SparsePoly;

pub const X: usize = 0;
pub const Y: usize = 1;
pub const Z: usize = 2;

pub type BiPoly = SparsePoly<[u32; 2], CycNumber>;
pub type TriPoly = SparsePoly<[u32; 3], CycNumber>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("invalid split: need 0 <= i <= k <= d-1, got k={k}, i={i}, d={d}")]
    InvalidSplit { k: usize, i: usize, d: usize },
    #[error("index {index} out of range for d={d}")]
    IndexOutOfRange { index: usize, d: usize },
    #[error("malformed polynomial {0:?}")]
    Parse(String),
    #[error(transparent)]
    Cyc(#[from] CycError),
}

/// `U - ζ^e V` for variable indices `u`, `v`.
fn linear<const N: usize>(ctx: &Arc<CycContext>, u: usize, v: usize, e: i64) -> SparsePoly<[u32; N], CycNumber> {
    let mut mu = [0; N];
    mu[u] = 1;
    let mut mv = [0; N];
    mv[v] = 1;
    SparsePoly::from_terms([
        (mu, CycNumber::one(ctx)),
        (mv, -&CycNumber::zeta_pow(ctx, e)),
    ])
}

/// `P_n(U, ζ^offset V) = ∏_{t=0}^{n} (U - ζ^{t+offset} V)`.
pub fn p_in<const N: usize>(
    ctx: &Arc<CycContext>,
    n: usize,
    u: usize,
    v: usize,
    offset: i64,
) -> SparsePoly<[u32; N], CycNumber> {
    product_of_linears(ctx, u, v, (0..=n as i64).map(|t| t + offset))
}

fn product_of_linears<const N: usize>(
    ctx: &Arc<CycContext>,
    u: usize,
    v: usize,
    exps: impl Iterator<Item = i64>,
) -> SparsePoly<[u32; N], CycNumber> {
    let mut acc = SparsePoly::constant(CycNumber::one(ctx));
    for e in exps {
        acc = &acc * &linear(ctx, u, v, e);
    }
    acc
}

/// `P_i(X, Y) = (X - Y)(X - ζY)⋯(X - ζ^i Y)`.
pub fn p_poly(ctx: &Arc<CycContext>, i: usize) -> Result<BiPoly, PolyError> {
    if i >= ctx.order() {
        return Err(PolyError::IndexOutOfRange { index: i, d: ctx.order() });
    }
    Ok(p_in(ctx, i, X, Y, 0))
}

/// Monic-in-`U` generator of the ideal of `⋃_{x ∈ A} Gr(x)`, written in the
/// variables `U, V`: `∏_{t ∈ A} (U - ζ^t V)`.
pub fn p_for_set_in<const N: usize>(
    ctx: &Arc<CycContext>,
    set: &CycSet,
    u: usize,
    v: usize,
) -> SparsePoly<[u32; N], CycNumber> {
    product_of_linears(ctx, u, v, set.elements().map(|t| t as i64))
}

/// `P_A(X, Y)`, normalized to be monic in `X`.
pub fn p_for_set(ctx: &Arc<CycContext>, set: &CycSet) -> BiPoly {
    p_for_set_in(ctx, set, X, Y)
}

/// Normal form of `f` modulo `g`, eliminating powers of `var` of degree at
/// least `deg_var(g)`.
///
/// `g` must contain exactly one term of top `var`-degree, and that term must
/// be a pure power of `var`. All generators used here satisfy this, which is
/// what makes the normal form unique.
pub fn reduce_in_var<const N: usize>(
    f: &SparsePoly<[u32; N], CycNumber>,
    g: &SparsePoly<[u32; N], CycNumber>,
    var: usize,
) -> SparsePoly<[u32; N], CycNumber> {
    let lead_deg = g.degree_in(var).expect("nonzero divisor");
    let mut leads = g.terms().filter(|(m, _)| m[var] == lead_deg);
    let (lead_mono, lead_coeff) = leads.next().unwrap();
    assert!(leads.next().is_none(), "divisor has several leading terms");
    assert!(
        lead_mono.iter().enumerate().all(|(k, e)| k == var || *e == 0),
        "leading term is not a pure power"
    );
    let lead_inv = lead_coeff.inverse().expect("leading coefficient is nonzero");

    let mut rem = f.clone();
    loop {
        let top = rem
            .terms()
            .filter(|(m, _)| m[var] >= lead_deg)
            .max_by_key(|(m, _)| m[var])
            .map(|(m, c)| (*m, c.clone()));
        let Some((m, c)) = top else { break };
        let mut shift = m;
        shift[var] -= lead_deg;
        rem.add_scaled(g, shift, &(-&(&c * &lead_inv)));
    }
    rem
}

/// An element of `O(A) = C[X, Y] / I_A` in normal form (`deg_Y < |A|`).
#[derive(Debug, Clone, PartialEq)]
pub struct QuotElem {
    set: CycSet,
    poly: BiPoly,
}

impl QuotElem {
    pub fn set(&self) -> &CycSet {
        &self.set
    }

    pub fn poly(&self) -> &BiPoly {
        &self.poly
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }
}

/// Normal form of `f` in `O(A)`: the unique representative with `Y`-degree
/// below `|A|`, i.e. a left `C[X]`-combination of `1, Y, …, Y^{|A|-1}`.
pub fn reduce_mod(ctx: &Arc<CycContext>, set: &CycSet, f: &BiPoly) -> QuotElem {
    QuotElem {
        set: *set,
        poly: reduce_in_var(f, &p_for_set(ctx, set), Y),
    }
}

/// Normal form in `O(A) ⊗_R O(B) = C[X, Y, Z] / (P_A(X, Z), P_B(Z, Y))`.
///
/// The leading monomials `Z^{|A|}` and `Y^{|B|}` are coprime, so reducing `Y`
/// first and then `Z` yields the unique combination of `Z^α Y^β`
/// (`α < |A|`, `β < |B|`) over `C[X]`.
pub fn reduce_tensor(ctx: &Arc<CycContext>, a: &CycSet, b: &CycSet, f: &TriPoly) -> TriPoly {
    let pb: TriPoly = p_for_set_in(ctx, b, Z, Y);
    let pa: TriPoly = p_for_set_in(ctx, a, X, Z);
    let f = reduce_in_var(f, &pb, Y);
    reduce_in_var(&f, &pa, Z)
}

/// Replaces each variable `k` by `scale_k · target_k`.
pub fn substitute<const N: usize, const M: usize>(
    p: &SparsePoly<[u32; N], CycNumber>,
    map: [(usize, CycNumber); N],
) -> SparsePoly<[u32; M], CycNumber> {
    let mut out = SparsePoly::zero();
    for (m, c) in p.terms() {
        let mut target = [0u32; M];
        let mut coeff = c.clone();
        for (k, (var, scale)) in map.iter().enumerate() {
            target[*var] += m[k];
            if m[k] > 0 {
                coeff = &coeff * &scale.pow(m[k]);
            }
        }
        out.add_term(target, coeff);
    }
    out
}

/// Embeds a bivariate polynomial into three variables, sending `X`, `Y` to
/// the given variable indices.
pub fn embed(p: &BiPoly, first: usize, second: usize) -> TriPoly {
    p.map_monomials(|[a, b]| {
        let mut m = [0; 3];
        m[first] += a;
        m[second] += b;
        m
    })
}

/// The coefficients `(c_k^i, d_k^{k-i})` for every `0 ≤ i ≤ k ≤ k_max`,
/// built by the two closed sums and the inductive rules.
pub struct SplitTable {
    ctx: Arc<CycContext>,
    /// `rows[k][i] = (c_k^i, d_k^{k-i})`
    rows: Vec<Vec<(TriPoly, TriPoly)>>,
}

impl SplitTable {
    pub fn new(ctx: &Arc<CycContext>, k_max: usize) -> Result<Self, PolyError> {
        let d = ctx.order();
        if k_max >= d {
            return Err(PolyError::InvalidSplit { k: k_max, i: 0, d });
        }
        let one = TriPoly::constant(CycNumber::one(ctx));
        let mut rows: Vec<Vec<(TriPoly, TriPoly)>> = vec![vec![(one.clone(), one.clone())]];
        for k in 1..=k_max {
            let mut row = Vec::with_capacity(k + 1);
            row.push((c_closed_sum(ctx, k), one.clone()));
            for i in 1..k {
                let j = k - i;
                let prev = &rows[k - 1];
                // split (k-1; i-1, j) and split (k-1; i, j-1)
                let (c_a, d_a) = &prev[i - 1];
                let (c_b, d_b) = &prev[i];
                let zi = CycNumber::zeta_pow(ctx, i as i64);
                let c = c_a + &(c_b * &linear::<3>(ctx, Z, Y, j as i64)).scale(&zi);
                let d = &(d_a * &linear::<3>(ctx, X, Z, i as i64)) + &d_b.scale(&zi);
                row.push((c, d));
            }
            row.push((one.clone(), d_closed_sum(ctx, k)));
            rows.push(row);
        }
        Ok(SplitTable {
            ctx: ctx.clone(),
            rows,
        })
    }

    pub fn k_max(&self) -> usize {
        self.rows.len() - 1
    }

    /// `(c_k^i, d_k^{k-i})`.
    pub fn get(&self, k: usize, i: usize) -> Result<&(TriPoly, TriPoly), PolyError> {
        self.rows
            .get(k)
            .and_then(|r| r.get(i))
            .ok_or(PolyError::InvalidSplit { k, i, d: self.ctx.order() })
    }
}

/// `c_k^0 = P_{k-1}(X, ζY) + Σ_{r=0}^{k-2} P_r(Z, Y) P_{k-2-r}(X, ζ^{r+2} Y) + P_{k-1}(Z, Y)`.
fn c_closed_sum(ctx: &Arc<CycContext>, k: usize) -> TriPoly {
    let mut acc: TriPoly = p_in(ctx, k - 1, X, Y, 1);
    for r in 0..k.saturating_sub(1) {
        let a: TriPoly = p_in(ctx, r, Z, Y, 0);
        let b: TriPoly = p_in(ctx, k - 2 - r, X, Y, r as i64 + 2);
        acc = &acc + &(&a * &b);
    }
    &acc + &p_in(ctx, k - 1, Z, Y, 0)
}

/// `d_k^0 = P_{k-1}(X, ζY) + Σ_{r=0}^{k-2} ζ^{r+1} P_r(X, Z) P_{k-2-r}(X, ζ^{r+2} Y) + ζ^k P_{k-1}(X, Z)`.
fn d_closed_sum(ctx: &Arc<CycContext>, k: usize) -> TriPoly {
    let mut acc: TriPoly = p_in(ctx, k - 1, X, Y, 1);
    for r in 0..k.saturating_sub(1) {
        let a: TriPoly = p_in(ctx, r, X, Z, 0);
        let b: TriPoly = p_in(ctx, k - 2 - r, X, Y, r as i64 + 2);
        acc = &acc + &(&a * &b).scale(&CycNumber::zeta_pow(ctx, r as i64 + 1));
    }
    let last: TriPoly = p_in(ctx, k - 1, X, Z, 0);
    &acc + &last.scale(&CycNumber::zeta_pow(ctx, k as i64))
}

/// `(c_k^i, d_k^{k-i})` with `P_k(X,Y) = c_k^i P_i(X,Z) + d_k^{k-i} P_{k-i}(Z,Y)`.
pub fn split_coeffs(ctx: &Arc<CycContext>, k: usize, i: usize) -> Result<(TriPoly, TriPoly), PolyError> {
    if i > k || k >= ctx.order() {
        return Err(PolyError::InvalidSplit { k, i, d: ctx.order() });
    }
    Ok(SplitTable::new(ctx, k)?.get(k, i)?.clone())
}

/// Closed forms `c_{i+1}^i = X + σ_i Z - σ_{i+1} Y` and
/// `d_{i+1}^i = σ_{i+1} X - (σ_{i+1} - 1) Z - ζ^{i+1} Y`.
///
/// `c_{i+1}^i` belongs to the split `P_{i+1} = c P_i(X,Z) + d P_1(Z,Y)`, while
/// `d_{i+1}^i` belongs to `P_{i+1} = c P_1(X,Z) + d P_i(Z,Y)`.
pub fn split_coeffs_closed(ctx: &Arc<CycContext>, i: usize) -> Result<(TriPoly, TriPoly), PolyError> {
    let d = ctx.order();
    if i + 2 > d {
        return Err(PolyError::IndexOutOfRange { index: i, d });
    }
    let one = CycNumber::one(ctx);
    let s_i = CycNumber::sigma(ctx, i);
    let s_next = CycNumber::sigma(ctx, i + 1);
    let c = TriPoly::from_terms([
        ([1, 0, 0], one.clone()),
        ([0, 0, 1], s_i),
        ([0, 1, 0], -&s_next),
    ]);
    let d_poly = TriPoly::from_terms([
        ([1, 0, 0], s_next.clone()),
        ([0, 0, 1], -&(&s_next - &one)),
        ([0, 1, 0], -&CycNumber::zeta_pow(ctx, i as i64 + 1)),
    ]);
    Ok((c, d_poly))
}

/// Checks `P_k(X,Y) = c·P_i(X,Z) + d·P_{k-i}(Z,Y)` exactly.
pub fn split_identity_holds(ctx: &Arc<CycContext>, k: usize, i: usize, c: &TriPoly, d: &TriPoly) -> bool {
    let lhs: TriPoly = p_in(ctx, k, X, Y, 0);
    let left: TriPoly = p_in(ctx, i, X, Z, 0);
    let right: TriPoly = p_in(ctx, k - i, Z, Y, 0);
    lhs == &(c * &left) + &(d * &right)
}

const VAR_NAMES: [&str; 3] = ["X", "Y", "Z"];

/// `c * X^a Y^b Z^c + …` with bracketed power-basis coefficients, highest
/// monomial (lexicographic in `X, Y, Z`) first.
impl<const N: usize> fmt::Display for SparsePoly<[u32; N], CycNumber> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (n, (m, c)) in self.terms().rev().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}")?;
            let vars: Vec<String> = m
                .iter()
                .enumerate()
                .filter(|(_, e)| **e > 0)
                .map(|(k, e)| format!("{}^{e}", VAR_NAMES[k]))
                .collect();
            if !vars.is_empty() {
                write!(f, " * {}", vars.join(" "))?;
            }
        }
        Ok(())
    }
}

/// Parses the textual form produced by `Display`.
pub fn parse_poly<const N: usize>(
    ctx: &Arc<CycContext>,
    s: &str,
) -> Result<SparsePoly<[u32; N], CycNumber>, PolyError> {
    let err = || PolyError::Parse(s.to_string());
    let s = s.trim();
    if s == "0" {
        return Ok(SparsePoly::zero());
    }
    let mut out = SparsePoly::zero();
    for term in s.split(" + ") {
        let (coeff, mono) = match term.split_once(" * ") {
            Some((c, m)) => (c.trim(), m.trim()),
            None => (term.trim(), ""),
        };
        let inner = coeff
            .strip_prefix('[')
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(err)?;
        let parts: Vec<&str> = inner.split(',').collect();
        let c = CycNumber::from_strings(ctx, &parts)?;
        let mut m = [0u32; N];
        for factor in mono.split_whitespace() {
            let (name, e) = factor.split_once('^').ok_or_else(err)?;
            let k = VAR_NAMES[..N].iter().position(|v| *v == name).ok_or_else(err)?;
            m[k] += e.parse::<u32>().map_err(|_| err())?;
        }
        out.add_term(m, c);
    }
    Ok(out)
}
