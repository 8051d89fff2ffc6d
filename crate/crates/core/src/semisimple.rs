//! Spectral analysis of `C_1` on the eigenspaces of `s` in `A_W ⊗ C`.
//!
//! For `η = ζ^m` the elements `D_i^η = S(η) C_i` with
//! `S(η) = 1 + η^{-1} s + … + η^{-d+1} s^{d-1}` (and `D_{d-1}^1 = C_{d-1}`)
//! span the `η`-eigenspace of `s`. `C_1` acts on them by a tridiagonal matrix
//! whose characteristic polynomial is a Chebyshev-type polynomial `Q_{d-1}`.

use std::f64::consts::PI;
use std::sync::Arc;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;
use thiserror::Error;

use crate::cyclotomic::{CycContext, CycNumber};
use crate::grothendieck::{q_poly, AWElement, AwRing, BasisIdx};
use crate::laurent::{to_cyc, v_plus_v_inv, CycLaurent};
use crate::poly::{SparsePoly, UniPoly};

/// Default tolerance for root membership.
pub const ROOT_TOLERANCE: f64 = 1e-9;

/// Eigenvalues closer than this count as coincident. A defective double
/// eigenvalue splits by about `sqrt(ε) ≈ 1e-8` in double precision, so the
/// threshold sits well above that.
pub const COINCIDENCE_THRESHOLD: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SemisimpleError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("eigenvalue computation did not converge for d={d}, m={m}")]
    NoConvergence { d: usize, m: usize },
    #[error("{check} failed: {detail}")]
    VerificationFailure { check: String, detail: String },
}

/// Polynomials in `λ` with coefficients in `Q(ζ_d)[v, v^{-1}]`.
pub type LamPoly = SparsePoly<u32, CycLaurent>;

/// Matrix of `C_1` on the `ζ^m`-eigenspace of `s` in the basis `D_i`;
/// `matrix[r][c]` is the coefficient of `D_r` in `C_1 D_c`.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenBlock {
    pub order: usize,
    pub eta_exp: usize,
    pub matrix: Vec<Vec<CycLaurent>>,
}

fn cyc_const(c: CycNumber) -> CycLaurent {
    CycLaurent::constant(c)
}

pub fn eigen_block(ctx: &Arc<CycContext>, m: usize) -> Result<EigenBlock, SemisimpleError> {
    let d = ctx.order();
    if m >= d {
        return Err(SemisimpleError::InvalidParameter(format!("η exponent {m} not in 0..{d}")));
    }
    let dim = if m == 0 { d } else { d - 1 };
    let mut matrix = vec![vec![CycLaurent::zero(); dim]; dim];
    let eta = CycNumber::zeta_pow(ctx, m as i64);
    for i in 0..d - 1 {
        if m == 0 {
            let up = if i + 2 == d { d as i64 } else { 1 };
            matrix[i + 1][i] = cyc_const(CycNumber::from_integer(ctx, up));
            if i >= 1 {
                matrix[i - 1][i] = cyc_const(CycNumber::one(ctx));
            }
        } else {
            if i + 2 < d {
                matrix[i + 1][i] = cyc_const(CycNumber::one(ctx));
            }
            if i >= 1 {
                matrix[i - 1][i] = cyc_const(eta.clone());
            }
        }
    }
    if m == 0 {
        matrix[d - 1][d - 1] = to_cyc(&v_plus_v_inv(), ctx);
    }
    Ok(EigenBlock {
        order: d,
        eta_exp: m,
        matrix,
    })
}

/// The same matrix computed inside `A_W`: expands `C_1 · S(η) C_i` and reads
/// off its coordinates in the `D`-basis, checking that it lies in their span.
pub fn eigen_block_from_ring(ctx: &Arc<CycContext>, ring: &AwRing, m: usize) -> Result<EigenBlock, SemisimpleError> {
    let d = ctx.order();
    let dim = if m == 0 { d } else { d - 1 };
    let eta_inv = |r: i64| CycNumber::zeta_pow(ctx, -(m as i64) * r);
    // D_k as a map basis -> coefficient
    let d_elem = |k: usize| -> Vec<(BasisIdx, CycLaurent)> {
        if k + 1 == d {
            vec![(BasisIdx::new(d, 0, k), cyc_const(CycNumber::one(ctx)))]
        } else {
            (0..d as i64)
                .map(|r| (BasisIdx::new(d, r, k), cyc_const(eta_inv(r))))
                .collect()
        }
    };
    let c1 = AWElement::basis(d, 0, 1);
    let mut matrix = vec![vec![CycLaurent::zero(); dim]; dim];
    for col in 0..dim {
        let product = ring.multiply(&c1, &AWElement::basis(d, 0, col));
        let mut acc: std::collections::BTreeMap<BasisIdx, CycLaurent> = Default::default();
        let mut add = |b: BasisIdx, c: CycLaurent| {
            let e = acc.entry(b).or_insert_with(CycLaurent::zero);
            *e = &*e + &c;
        };
        if col + 1 == d {
            for (b, c) in product.terms() {
                add(b, to_cyc(c, ctx));
            }
        } else {
            for r in 0..d as i64 {
                for (b, c) in product.s_shift(r).terms() {
                    add(b, to_cyc(c, ctx).scale(&eta_inv(r)));
                }
            }
        }
        acc.retain(|_, c| !c.is_zero());
        let mut rebuilt: std::collections::BTreeMap<BasisIdx, CycLaurent> = Default::default();
        for row in 0..dim {
            let coeff = acc.get(&BasisIdx::new(d, 0, row)).cloned().unwrap_or_else(CycLaurent::zero);
            for (b, c) in d_elem(row) {
                let e = rebuilt.entry(b).or_insert_with(CycLaurent::zero);
                *e = &*e + &(&c * &coeff);
            }
            matrix[row][col] = coeff;
        }
        rebuilt.retain(|_, c| !c.is_zero());
        if rebuilt != acc {
            return Err(SemisimpleError::VerificationFailure {
                check: "eigenspace basis".into(),
                detail: format!("C_1 D_{col} is not in the span of the D_i (m={m})"),
            });
        }
    }
    Ok(EigenBlock {
        order: d,
        eta_exp: m,
        matrix,
    })
}

impl EigenBlock {
    pub fn dim(&self) -> usize {
        self.matrix.len()
    }

    /// Numeric matrix at a complex `v`.
    pub fn eval(&self, v: Complex64) -> DMatrix<Complex64> {
        let n = self.dim();
        DMatrix::from_fn(n, n, |r, c| {
            self.matrix[r][c]
                .terms()
                .map(|(e, x)| x.embed_complex() * v.powi(*e))
                .sum()
        })
    }

    /// `det(λ I - M)` by Laplace expansion over column subsets.
    pub fn char_poly_det(&self) -> LamPoly {
        let n = self.dim();
        let entry = |r: usize, c: usize| -> LamPoly {
            let mut p = LamPoly::zero();
            if !self.matrix[r][c].is_zero() {
                p.add_term(0, -&self.matrix[r][c]);
            }
            if r == c {
                let ctx = self.context();
                p.add_term(1, cyc_const(CycNumber::one(&ctx)));
            }
            p
        };
        // dp[mask]: signed sum over assignments of the first popcount(mask)
        // rows to the columns in mask
        let mut dp = vec![LamPoly::zero(); 1 << n];
        dp[0] = LamPoly::constant(cyc_const(CycNumber::one(&self.context())));
        for mask in 0usize..(1 << n) {
            if dp[mask].is_zero() {
                continue;
            }
            let r = mask.count_ones() as usize;
            if r == n {
                continue;
            }
            for c in 0..n {
                if mask & (1 << c) != 0 {
                    continue;
                }
                let e = entry(r, c);
                if e.is_zero() {
                    continue;
                }
                let above = (mask >> (c + 1)).count_ones();
                let mut term = &dp[mask] * &e;
                if above % 2 == 1 {
                    term = -&term;
                }
                let next = mask | (1 << c);
                dp[next] = &dp[next] + &term;
            }
        }
        dp[(1 << n) - 1].clone()
    }

    fn context(&self) -> Arc<CycContext> {
        CycContext::new(self.order).expect("valid order")
    }
}

/// `Q_i(λ, η)` with `η = ζ^m`.
pub fn q_in_lambda(ctx: &Arc<CycContext>, i: usize, m: usize) -> UniPoly<CycNumber> {
    let eta = CycNumber::zeta_pow(ctx, m as i64);
    let mut out = UniPoly::zero();
    for (&[a, b], c) in q_poly(i).terms() {
        let coeff = eta.pow(b).scale(&num_rational::BigRational::from_integer(c.clone()));
        out.add_term(a, coeff);
    }
    out
}

/// Closed form of `det(λ I - M)`: `Q_{d-1}(λ, η)` for `η ≠ 1`, and
/// `(λ - (v + v^{-1})) Q_{d-1}(λ, 1)` for `η = 1`.
pub fn char_poly_block(ctx: &Arc<CycContext>, m: usize) -> Result<LamPoly, SemisimpleError> {
    let d = ctx.order();
    if m >= d {
        return Err(SemisimpleError::InvalidParameter(format!("η exponent {m} not in 0..{d}")));
    }
    let q: LamPoly = q_in_lambda(ctx, d - 1, m).map_coeffs(|c| cyc_const(c.clone()));
    if m != 0 {
        return Ok(q);
    }
    let factor = LamPoly::from_terms([
        (1, cyc_const(CycNumber::one(ctx))),
        (0, -&to_cyc(&v_plus_v_inv(), ctx)),
    ]);
    Ok(&factor * &q)
}

fn sqrt_eta(d: usize, m: usize) -> Complex64 {
    Complex64::from_polar(1.0, 2.0 * PI * m as f64 / d as f64).sqrt()
}

/// `2 √η cos(kπ/(i+1))`, `k = 1..i`, with the principal square root.
pub fn chebyshev_roots(ctx: &Arc<CycContext>, i: usize, m: usize) -> Vec<Complex64> {
    let root = sqrt_eta(ctx.order(), m);
    (1..=i)
        .map(|k| root * 2.0 * (k as f64 * PI / (i + 1) as f64).cos())
        .collect()
}

/// Evaluates `Q_i(λ, η)` numerically.
pub fn eval_q(ctx: &Arc<CycContext>, i: usize, m: usize, lambda: Complex64) -> Complex64 {
    q_in_lambda(ctx, i, m)
        .terms()
        .map(|(a, c)| c.embed_complex() * lambda.powi(*a as i32))
        .sum()
}

/// `Q_i(λ, ζ^m)` has no multiple root: the analytic roots are pairwise
/// separated and `gcd(Q_i, Q_i')` is a unit over `Q(ζ_d)`.
pub fn distinct_roots_check(ctx: &Arc<CycContext>, i: usize, m: usize) -> Result<bool, SemisimpleError> {
    if i == 0 {
        return Err(SemisimpleError::InvalidParameter("i must be at least 1".into()));
    }
    let roots = chebyshev_roots(ctx, i, m);
    let separated = min_gap(&roots) > COINCIDENCE_THRESHOLD;
    let q = q_in_lambda(ctx, i, m);
    let g = q.gcd(&q.derivative());
    Ok(separated && g.degree() == Some(0))
}

fn min_gap(values: &[Complex64]) -> f64 {
    let mut gap = f64::INFINITY;
    for (a, x) in values.iter().enumerate() {
        for y in &values[a + 1..] {
            gap = gap.min((x - y).norm());
        }
    }
    gap
}

/// Eigenvalues of a block at a complex `v`, sorted by real then imaginary part.
pub fn block_eigenvalues(block: &EigenBlock, v: Complex64) -> Result<Vec<Complex64>, SemisimpleError> {
    let n = block.dim();
    let fail = || SemisimpleError::NoConvergence {
        d: block.order,
        m: block.eta_exp,
    };
    let mut values: Vec<Complex64> = if n == 1 {
        vec![block.eval(v)[(0, 0)]]
    } else {
        let m = block.eval(v);
        let schur = nalgebra::Schur::try_new(scrambled(&m), f64::EPSILON, 1_000)
            .or_else(|| nalgebra::Schur::try_new(m, f64::EPSILON, 1_000))
            .ok_or_else(fail)?;
        quasi_triangular_eigenvalues(&schur.unpack().1)
    };
    values.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    Ok(values)
}

/// `Q^* M Q` for a fixed unitary `Q`. The blocks are sparse with many zero
/// diagonal entries, a pattern on which the shifted QR iteration can stall.
/// A unitary change of basis keeps the spectrum and removes the pattern.
fn scrambled(m: &DMatrix<Complex64>) -> DMatrix<Complex64> {
    let n = m.nrows();
    let mut state: u64 = 0x9e37_79b9_7f4a_7c15;
    let mut next = || {
        state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        (state >> 11) as f64 / (1u64 << 53) as f64 - 0.5
    };
    let g = DMatrix::from_fn(n, n, |_, _| Complex64::new(next(), next()));
    let q = g.qr().q();
    q.adjoint() * m * q
}

/// Eigenvalues of a Schur form that may keep unreduced `2 × 2` diagonal
/// blocks; those are solved by the quadratic formula.
fn quasi_triangular_eigenvalues(t: &DMatrix<Complex64>) -> Vec<Complex64> {
    let n = t.nrows();
    let mut out = Vec::with_capacity(n);
    let mut k = 0;
    while k < n {
        if k + 1 < n && t[(k + 1, k)] != Complex64::new(0.0, 0.0) {
            let (a, b, c, d) = (t[(k, k)], t[(k, k + 1)], t[(k + 1, k)], t[(k + 1, k + 1)]);
            let half_trace = (a + d) * 0.5;
            let disc = ((a - d) * 0.5 * ((a - d) * 0.5) + b * c).sqrt();
            out.push(half_trace + disc);
            out.push(half_trace - disc);
            k += 2;
        } else {
            out.push(t[(k, k)]);
            k += 1;
        }
    }
    out
}

/// `min_k |v + v^{-1} - 2 cos(kπ/d)|`, `k = 1..d-1`.
pub fn criterion_distance(order: usize, v: Complex64) -> f64 {
    let w = v + v.inv();
    (1..order)
        .map(|k| (w - 2.0 * (k as f64 * PI / order as f64).cos()).norm())
        .fold(f64::INFINITY, f64::min)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BlockReport {
    pub eta_exp: usize,
    pub dim: usize,
    pub eigenvalues: Vec<[f64; 2]>,
    pub distinct: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectralReport {
    pub d: usize,
    pub v: [f64; 2],
    pub criterion: bool,
    pub blocks: Vec<BlockReport>,
    pub verdict: String,
}

impl SpectralReport {
    pub fn total_dim(&self) -> usize {
        self.blocks.iter().map(|b| b.dim).sum()
    }
}

pub const VERDICT_SEMISIMPLE: &str = "semisimple";
pub const VERDICT_VIOLATED: &str = "criterion violated";
pub const VERDICT_INCONCLUSIVE: &str = "inconclusive";

/// Evaluates the semisimplicity criterion at `v` and, independently, the
/// spectra of all blocks.
///
/// The criterion holds when `v + v^{-1}` stays farther than `tolerance`
/// from every `2 cos(kπ/d)`. The verdict is `semisimple` only if it holds and
/// every block has pairwise-distinct eigenvalues; a violated criterion yields
/// no verdict on semisimplicity.
pub fn semisimple_check(ctx: &Arc<CycContext>, v: Complex64, tolerance: f64) -> Result<SpectralReport, SemisimpleError> {
    if v.norm() == 0.0 || !v.re.is_finite() || !v.im.is_finite() {
        return Err(SemisimpleError::InvalidParameter(format!("v must be a nonzero finite number, got {v}")));
    }
    let d = ctx.order();
    let criterion = criterion_distance(d, v) > tolerance;
    let mut blocks = Vec::with_capacity(d);
    for m in 0..d {
        let block = eigen_block(ctx, m)?;
        let values = block_eigenvalues(&block, v)?;
        blocks.push(BlockReport {
            eta_exp: m,
            dim: block.dim(),
            distinct: min_gap(&values) > COINCIDENCE_THRESHOLD,
            eigenvalues: values.iter().map(|z| [z.re, z.im]).collect(),
        });
    }
    let all_distinct = blocks.iter().all(|b| b.distinct);
    let verdict = match (criterion, all_distinct) {
        (false, _) => VERDICT_VIOLATED,
        (true, true) => VERDICT_SEMISIMPLE,
        (true, false) => VERDICT_INCONCLUSIVE,
    };
    Ok(SpectralReport {
        d,
        v: [v.re, v.im],
        criterion,
        blocks,
        verdict: verdict.to_string(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(d: usize) -> Arc<CycContext> {
        CycContext::new(d).unwrap()
    }

    fn c(z: f64) -> Complex64 {
        Complex64::new(z, 0.0)
    }

    #[test]
    fn documented_blocks() {
        let c3 = ctx(3);
        let b = eigen_block(&c3, 0).unwrap();
        let n = b.eval(c(2.0));
        let expected = DMatrix::from_row_slice(3, 3, &[
            c(0.0), c(1.0), c(0.0),
            c(1.0), c(0.0), c(0.0),
            c(0.0), c(3.0), c(2.5),
        ]);
        assert!((n - expected).norm() < 1e-12);
        let b = eigen_block(&c3, 1).unwrap();
        assert_eq!(b.dim(), 2);
        assert_eq!(b.matrix[1][0], cyc_const(CycNumber::one(&c3)));
        assert_eq!(b.matrix[0][1], cyc_const(CycNumber::zeta_pow(&c3, 1)));
        for d in 2..=12 {
            let c = ctx(d);
            let total: usize = (0..d).map(|m| eigen_block(&c, m).unwrap().dim()).sum();
            assert_eq!(total, d * (d - 1) + 1);
        }
    }

    #[test]
    fn blocks_match_ring() {
        for d in 2..=7 {
            let c = ctx(d);
            let ring = AwRing::new(d).unwrap();
            for m in 0..d {
                assert_eq!(eigen_block_from_ring(&c, &ring, m).unwrap(), eigen_block(&c, m).unwrap(), "d={d} m={m}");
            }
        }
    }

    #[test]
    fn characteristic_polynomials() {
        let c3 = ctx(3);
        let q = char_poly_block(&c3, 1).unwrap();
        let expected = LamPoly::from_terms([
            (2, cyc_const(CycNumber::one(&c3))),
            (0, cyc_const(-&CycNumber::zeta_pow(&c3, 1))),
        ]);
        assert_eq!(q, expected);
        let p = char_poly_block(&c3, 0).unwrap();
        assert_eq!(p.max_monomial(), Some(3));
        for d in 2..=6 {
            let c = ctx(d);
            for m in 0..d {
                let block = eigen_block(&c, m).unwrap();
                assert_eq!(block.char_poly_det(), char_poly_block(&c, m).unwrap(), "d={d} m={m}");
            }
        }
    }

    #[test]
    fn chebyshev() {
        let c5 = ctx(5);
        let r = chebyshev_roots(&c5, 2, 0);
        assert!((r[0] - c(1.0)).norm() < 1e-12 && (r[1] - c(-1.0)).norm() < 1e-12);
        assert!(chebyshev_roots(&c5, 1, 0)[0].norm() < 1e-12);
        let r = chebyshev_roots(&c5, 3, 0);
        let s2 = 2f64.sqrt();
        for (x, y) in r.iter().zip([s2, 0.0, -s2]) {
            assert!((x - c(y)).norm() < 1e-12);
        }
        for d in 2..=9 {
            let cx = ctx(d);
            for m in 0..d {
                for i in 1..=d {
                    for root in chebyshev_roots(&cx, i, m) {
                        assert!(eval_q(&cx, i, m, root).norm() < ROOT_TOLERANCE);
                    }
                }
            }
        }
    }

    #[test]
    fn distinct_roots() {
        for d in 2..=8 {
            let cx = ctx(d);
            for m in 0..d {
                assert!(distinct_roots_check(&cx, d - 1, m).unwrap());
                assert!(distinct_roots_check(&cx, 1, m).unwrap());
            }
        }
        assert!(distinct_roots_check(&ctx(3), 0, 0).is_err());
    }

    #[test]
    fn complex_eigenvalues_of_rotated_block() {
        let c5 = ctx(5);
        let block = eigen_block(&c5, 2).unwrap();
        let values = block_eigenvalues(&block, c(2.0)).unwrap();
        let mut expected = chebyshev_roots(&c5, 4, 2);
        expected.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
        for (x, y) in values.iter().zip(&expected) {
            assert!((x - y).norm() < 1e-9, "{x} vs {y}");
        }
    }

    #[test]
    fn documented_reports() {
        let r = semisimple_check(&ctx(3), c(1.0), ROOT_TOLERANCE).unwrap();
        assert!(r.criterion);
        assert_eq!(r.verdict, VERDICT_SEMISIMPLE);
        assert_eq!(r.total_dim(), 7);

        let v = Complex64::from_polar(1.0, PI / 3.0);
        let r = semisimple_check(&ctx(3), v, ROOT_TOLERANCE).unwrap();
        assert!(!r.criterion);
        assert_eq!(r.verdict, VERDICT_VIOLATED);

        let r = semisimple_check(&ctx(4), c(2.0), ROOT_TOLERANCE).unwrap();
        assert_eq!(r.verdict, VERDICT_SEMISIMPLE);
        assert!(semisimple_check(&ctx(4), c(0.0), ROOT_TOLERANCE).is_err());
    }

    #[test]
    fn numeric_spectra_match_closed_form() {
        let samples = [c(2.0), Complex64::new(0.5, 0.3), Complex64::from_polar(1.0, 0.7), c(-1.3)];
        for d in 2..=12 {
            let cx = ctx(d);
            for m in 0..d {
                let block = eigen_block(&cx, m).unwrap();
                for v in samples {
                    let mut expected = chebyshev_roots(&cx, d - 1, m);
                    if m == 0 {
                        expected.push(v + v.inv());
                    }
                    let values = block_eigenvalues(&block, v).unwrap();
                    assert_eq!(values.len(), expected.len());
                    for x in &values {
                        let nearest = expected.iter().map(|y| (x - y).norm()).fold(f64::INFINITY, f64::min);
                        assert!(nearest < 1e-9, "d={d} m={m} v={v}: {x} off by {nearest}");
                    }
                }
            }
        }
    }

    #[test]
    fn trivial_block_spectrum() {
        let d = 6;
        let cx = ctx(d);
        let v = c(2.0);
        let values = block_eigenvalues(&eigen_block(&cx, 0).unwrap(), v).unwrap();
        let mut expected: Vec<Complex64> = (1..d).map(|k| c(2.0 * (k as f64 * PI / d as f64).cos())).collect();
        expected.push(v + v.inv());
        expected.sort_by(|a, b| a.re.total_cmp(&b.re));
        for (x, y) in values.iter().zip(&expected) {
            assert!((x - y).norm() < 1e-9);
        }
    }
}
