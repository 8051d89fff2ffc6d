use std::sync::Arc;

use serde::Serialize;

use super::{BimoduleError, CycSet, ShiftedIndec};
use crate::cyclotomic::{CycContext, CycNumber};
use crate::laurent::{even_series, v_pow};
use crate::linalg::poly_rank;
use crate::polyring::{
    p_in, p_poly, reduce_mod, reduce_tensor, split_coeffs_closed, split_identity_holds, substitute, BiPoly,
    SplitTable, TriPoly, X, Y, Z,
};

/// Summary of a passed verification: which statement, how many individual
/// checks ran, and the highest grading degree examined.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub name: String,
    pub checks: usize,
    pub max_degree: usize,
}

/// Default grading-degree bound `2(2d + 2)`.
pub fn default_degree_bound(order: usize) -> usize {
    2 * (2 * order + 2)
}

struct Checker {
    name: String,
    checks: usize,
}

impl Checker {
    fn new(name: String) -> Self {
        Checker { name, checks: 0 }
    }

    fn ensure(&mut self, ok: bool, degree: usize, detail: impl FnOnce() -> String) -> Result<(), BimoduleError> {
        self.checks += 1;
        if ok {
            Ok(())
        } else {
            Err(BimoduleError::VerificationFailure {
                check: self.name.clone(),
                degree,
                detail: detail(),
            })
        }
    }

    fn finish(self, max_degree: usize) -> VerifyReport {
        VerifyReport {
            name: self.name,
            checks: self.checks,
            max_degree,
        }
    }
}

fn mono2(ctx: &Arc<CycContext>, x: usize, y: usize) -> BiPoly {
    BiPoly::term([x as u32, y as u32], CycNumber::one(ctx))
}

fn mono3(ctx: &Arc<CycContext>, x: usize, y: usize, z: usize) -> TriPoly {
    TriPoly::term([x as u32, y as u32, z as u32], CycNumber::one(ctx))
}

/// Checks exactness of
/// `0 → O(s^i)[-2i] → O(s^{≤i}) → O(s^{≤i-1}) → 0`, with the injection
/// `r ↦ r P_{i-1}` and the restriction map, in every grading degree up to
/// `degree_bound`.
pub fn verify_ses(ctx: &Arc<CycContext>, i: usize, degree_bound: usize) -> Result<VerifyReport, BimoduleError> {
    let d = ctx.order();
    if i == 0 || i >= d {
        return Err(BimoduleError::InvalidIndex {
            index: i,
            range: format!("1..={}", d - 1),
        });
    }
    let mut ck = Checker::new(format!("short exact sequence i={i}"));
    let big = CycSet::prefix(d, i);
    let small = CycSet::prefix(d, i - 1);
    let p_prev = p_poly(ctx, i - 1).expect("i - 1 < d");

    // ι is well defined: (X - ζ^i Y) P_{i-1} = P_i lies in I_{s^{≤i}}
    let twisted = BiPoly::from_terms([
        ([1, 0], CycNumber::one(ctx)),
        ([0, 1], -&CycNumber::zeta_pow(ctx, i as i64)),
    ]);
    ck.ensure(reduce_mod(ctx, &big, &(&twisted * &p_prev)).is_zero(), 2 * (i + 1), || {
        "(X - ζ^i Y) P_{i-1} is not zero in O(s^{≤i})".into()
    })?;

    for n in 0..=degree_bound / 2 {
        let degree = 2 * n;
        // ι on the basis X^m of O(s^i), landing in polynomial degree n
        let iota_dim = if n >= i {
            let image = reduce_mod(ctx, &big, &(&mono2(ctx, n - i, 0) * &p_prev));
            ck.ensure(!image.is_zero(), degree, || format!("ι(X^{}) = 0", n - i))?;
            ck.ensure(reduce_mod(ctx, &small, image.poly()).is_zero(), degree, || {
                format!("π(ι(X^{})) ≠ 0", n - i)
            })?;
            1
        } else {
            0
        };
        // π on the normal-form basis X^{n-b} Y^b of O(s^{≤i})
        let dim_big = n.min(i) + 1;
        let dim_small = n.min(i - 1) + 1;
        let images: Vec<BiPoly> = (0..dim_big)
            .map(|b| reduce_mod(ctx, &small, &mono2(ctx, n - b, b)).poly().clone())
            .collect();
        let rank = poly_rank(&images);
        ck.ensure(rank == dim_small, degree, || format!("π has rank {rank}, expected {dim_small}"))?;
        ck.ensure(dim_big - rank == iota_dim, degree, || {
            format!("dim ker π = {} but dim im ι = {iota_dim}", dim_big - rank)
        })?;
    }

    let lhs = even_series(i + 1);
    let rhs = &v_pow(2 * i as i32) + &even_series(i);
    ck.ensure(lhs == rhs, 0, || format!("graded ranks: {lhs} vs {rhs}"))?;
    Ok(ck.finish(degree_bound))
}

/// `m = σ_i Z - σ_{i-1} X - ζ^i Y`.
pub fn soergel_m(ctx: &Arc<CycContext>, i: usize) -> TriPoly {
    TriPoly::from_terms([
        ([0, 0, 1], CycNumber::sigma(ctx, i)),
        ([1, 0, 0], -&CycNumber::sigma(ctx, i - 1)),
        ([0, 1, 0], -&CycNumber::zeta_pow(ctx, i as i64)),
    ])
}

/// Checks `O(s^{≤1}) ⊗ O(s^{≤i}) ≅ O(s^{≤i+1}) ⊕ O(s^{[1,i]})[-2]` inside the
/// quotient `C[X,Y,Z] / (P_1(X,Z), P_i(Z,Y))`: both maps are well defined and
/// their images are complementary in every degree up to `degree_bound`.
pub fn verify_soergel_splitting(
    ctx: &Arc<CycContext>,
    i: usize,
    degree_bound: usize,
) -> Result<VerifyReport, BimoduleError> {
    let d = ctx.order();
    if i == 0 || i + 2 > d {
        return Err(BimoduleError::InvalidIndex {
            index: i,
            range: format!("1..={}", d.saturating_sub(2)),
        });
    }
    let mut ck = Checker::new(format!("splitting i={i}"));
    let a = CycSet::prefix(d, 1);
    let b = CycSet::prefix(d, i);
    let shifted = CycSet::new(d, 1, i)?;
    let nf = |f: &TriPoly| reduce_tensor(ctx, &a, &b, f);

    // φ(1) = 1 kills P_{i+1}(X, Y), with an explicit certificate
    let p_next: TriPoly = p_in(ctx, i + 1, X, Y, 0);
    ck.ensure(nf(&p_next).is_zero(), 2 * (i + 2), || "φ does not kill P_{i+1}(X,Y)".into())?;
    let table = SplitTable::new(ctx, i + 1).map_err(|e| BimoduleError::InternalInconsistency(e.to_string()))?;
    let (c, dd) = table.get(i + 1, 1).expect("1 ≤ i + 1");
    ck.ensure(split_identity_holds(ctx, i + 1, 1, c, dd), 2 * (i + 2), || {
        "P_{i+1} splitting identity fails".into()
    })?;

    // ψ(1) = m kills P_{s^{[1,i]}}(X, Y)
    let m = soergel_m(ctx, i);
    let p_shifted: TriPoly = crate::polyring::p_for_set_in(ctx, &shifted, X, Y);
    ck.ensure(nf(&(&m * &p_shifted)).is_zero(), 2 * (i + 1), || {
        "ψ does not kill P_{[1,i]}(X,Y)".into()
    })?;
    // m is d_i^{i-1}(Z, Y, ζ^{-1} X)
    let (_, d_coeff) = split_coeffs_closed(ctx, i - 1).map_err(|e| BimoduleError::InternalInconsistency(e.to_string()))?;
    let one = CycNumber::one(ctx);
    let substituted: TriPoly = substitute(
        &d_coeff,
        [(Z, one.clone()), (Y, one), (X, CycNumber::zeta_pow(ctx, -1))],
    );
    ck.ensure(substituted == m, 2, || format!("m = {m} differs from {substituted}"))?;

    for n in 0..=degree_bound / 2 {
        let degree = 2 * n;
        let mut images: Vec<TriPoly> = (0..=n.min(i + 1)).map(|k| nf(&mono3(ctx, n - k, k, 0))).collect();
        let phi_count = images.len();
        if n >= 1 {
            for k in 0..=(n - 1).min(i - 1) {
                images.push(nf(&(&mono3(ctx, n - 1 - k, k, 0) * &m)));
            }
        }
        let psi_count = images.len() - phi_count;
        // dimension of the degree-n part: X^x Z^α Y^β with α ≤ 1, β ≤ i
        let dim: usize = (0..=1usize)
            .flat_map(|alpha| (0..=i).map(move |beta| alpha + beta))
            .filter(|&s| s <= n)
            .count();
        let rank = poly_rank(&images);
        ck.ensure(rank == phi_count + psi_count, degree, || {
            format!("images are dependent: rank {rank} < {phi_count} + {psi_count}")
        })?;
        ck.ensure(rank == dim, degree, || format!("images span {rank} of {dim} dimensions"))?;
    }
    Ok(ck.finish(degree_bound))
}

/// `O(s^{≤1})[1] ⊗ O(s^{≤i})[i]` as predicted by the splitting.
pub fn soergel_prediction(order: usize, i: usize) -> Result<super::DecompList, BimoduleError> {
    Ok([
        ShiftedIndec::new(CycSet::prefix(order, i + 1), i as i64 + 1),
        ShiftedIndec::new(CycSet::new(order, 1, i)?, i as i64 - 1),
    ]
    .into_iter()
    .collect())
}

#[cfg(test)]
mod tests {
    use super::super::tensor_decompose;
    use super::*;

    #[test]
    fn ses_small() {
        for (d, i) in [(3, 1), (3, 2), (4, 3), (4, 1), (2, 1)] {
            let ctx = CycContext::new(d).unwrap();
            let r = verify_ses(&ctx, i, default_degree_bound(d)).unwrap();
            assert!(r.checks > 0);
        }
        let ctx = CycContext::new(4).unwrap();
        assert!(verify_ses(&ctx, 0, 8).is_err());
        assert!(verify_ses(&ctx, 4, 8).is_err());
    }

    #[test]
    fn splitting_small() {
        let ctx = CycContext::new(4).unwrap();
        let one = CycNumber::one(&ctx);
        let z = CycNumber::zeta_pow(&ctx, 1);
        let expected = TriPoly::from_terms([([0, 0, 1], &one + &z), ([1, 0, 0], -&one), ([0, 1, 0], -&z)]);
        assert_eq!(soergel_m(&ctx, 1), expected);
        for (d, i) in [(4, 1), (4, 2), (5, 3), (3, 1)] {
            let ctx = CycContext::new(d).unwrap();
            verify_soergel_splitting(&ctx, i, default_degree_bound(d)).unwrap();
        }
        assert!(verify_soergel_splitting(&ctx, 3, 8).is_err());
    }

    #[test]
    fn wrong_m_is_rejected() {
        // replacing m by Z must break either well-definedness or the splitting
        let ctx = CycContext::new(4).unwrap();
        let a = CycSet::prefix(4, 1);
        let b = CycSet::prefix(4, 1);
        let shifted = CycSet::new(4, 1, 1).unwrap();
        let p: TriPoly = crate::polyring::p_for_set_in(&ctx, &shifted, X, Y);
        let z = TriPoly::var(Z, CycNumber::one(&ctx));
        assert!(!reduce_tensor(&ctx, &a, &b, &(&z * &p)).is_zero());
    }

    #[test]
    fn prediction_matches_decomposition() {
        for d in 3..=7 {
            for i in 1..=d - 2 {
                let a = ShiftedIndec::standard(CycSet::prefix(d, 1));
                let b = ShiftedIndec::standard(CycSet::prefix(d, i));
                assert_eq!(tensor_decompose(&a, &b).unwrap(), soergel_prediction(d, i).unwrap());
            }
        }
    }
}
