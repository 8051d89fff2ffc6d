use std::sync::Arc;

use serde::Serialize;

use super::{BimoduleError, CycSet};
use crate::cyclotomic::{CycContext, CycNumber};
use crate::linalg::poly_rank;
use crate::polyring::{p_for_set, reduce_mod, BiPoly};

/// `Hom(O(A), O(B))` as a free right `R`-module.
#[derive(Debug, Clone, PartialEq)]
pub struct HomDescription {
    pub rank: usize,
    /// `g_{A,B} = ∏_{s^t ∈ B \ A} (X - ζ^t Y)`
    pub generator: BiPoly,
    /// Degrees of `g, Xg, …, X^{rank-1} g`.
    pub degrees: Vec<usize>,
}

impl HomDescription {
    /// Dimension in each even degree `0, 2, …, bound`.
    pub fn dims_up_to(&self, bound: usize) -> Vec<usize> {
        (0..=bound / 2)
            .map(|n| self.degrees.iter().filter(|&&g| g <= 2 * n).count())
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HomRank {
    pub source: String,
    pub target: String,
    pub rank: usize,
}

fn check_orders(a: &CycSet, b: &CycSet) -> Result<(), BimoduleError> {
    if a.order() != b.order() {
        return Err(BimoduleError::OrderMismatch(a.order(), b.order()));
    }
    Ok(())
}

pub fn hom_describe(ctx: &Arc<CycContext>, a: &CycSet, b: &CycSet) -> Result<HomDescription, BimoduleError> {
    check_orders(a, b)?;
    let rank = b.elements().filter(|&t| a.contains(t)).count();
    let outside: Vec<usize> = b.elements().filter(|&t| !a.contains(t)).collect();
    let mut g = BiPoly::constant(CycNumber::one(ctx));
    for &t in &outside {
        let factor = BiPoly::from_terms([
            ([1, 0], CycNumber::one(ctx)),
            ([0, 1], -&CycNumber::zeta_pow(ctx, t as i64)),
        ]);
        g = &g * &factor;
    }
    let degrees = (0..rank).map(|t| 2 * outside.len() + 2 * t).collect();
    Ok(HomDescription {
        rank,
        generator: g,
        degrees,
    })
}

/// Dimension of the space of degree-`δ` bimodule maps `O(A) → O(B)` for
/// `δ = 0, 2, …, degree_bound`, by solving `Q · P_A ≡ 0` in `O(B)`.
pub fn hom_oracle(
    ctx: &Arc<CycContext>,
    a: &CycSet,
    b: &CycSet,
    degree_bound: usize,
) -> Result<Vec<usize>, BimoduleError> {
    check_orders(a, b)?;
    let pa = p_for_set(ctx, a);
    let mut dims = Vec::with_capacity(degree_bound / 2 + 1);
    for n in 0..=degree_bound / 2 {
        let top = n.min(b.len() - 1);
        let images: Vec<BiPoly> = (0..=top)
            .map(|k| {
                let q = BiPoly::term([(n - k) as u32, k as u32], CycNumber::one(ctx));
                reduce_mod(ctx, b, &(&q * &pa)).poly().clone()
            })
            .collect();
        dims.push(top + 1 - poly_rank(&images));
    }
    Ok(dims)
}
