use std::sync::Arc;

use super::{BimoduleError, CycSet, DecompList, ShiftedIndec};
use crate::cyclotomic::{CycContext, CycNumber};
use crate::laurent::{v_pow, LaurentInt};
use crate::polyring::{p_for_set_in, reduce_tensor, TriPoly, X, Y, Z};

/// Decomposes tensor products of shifted indecomposables for a fixed order.
///
/// `table[j'][j]` holds the summands of `O(s^{≤j}) ⊗ O(s^{≤j'})`; everything
/// else follows by rotating and shifting.
#[derive(Debug, Clone)]
pub struct Decomposer {
    order: usize,
    table: Vec<Vec<DecompList>>,
}

impl Decomposer {
    pub fn new(order: usize) -> Result<Self, BimoduleError> {
        if order < 2 {
            return Err(BimoduleError::InvalidOrder(order));
        }
        let prefix = |j: usize| ShiftedIndec::unshifted(CycSet::prefix(order, j));
        let mut table: Vec<Vec<DecompList>> = Vec::with_capacity(order);
        table.push((0..order).map(|j| DecompList::single(prefix(j))).collect());

        let mut with_one = Vec::with_capacity(order);
        for j in 0..order {
            let mut l = DecompList::new();
            if j == 0 {
                l.insert(prefix(1), 1);
            } else if j + 1 < order {
                l.insert(prefix(j + 1), 1);
                l.insert(ShiftedIndec::new(CycSet::new(order, 1, j)?, -2), 1);
            } else {
                let w = CycSet::whole(order);
                l.insert(ShiftedIndec::new(w, 0), 1);
                l.insert(ShiftedIndec::new(w, -2), 1);
            }
            with_one.push(l);
        }
        if order > 1 {
            table.push(with_one);
        }

        // O(s^{≤1}) ⊗ O(s^{≤j'-1}) ≅ O(s^{≤j'}) ⊕ O(s) ⊗ O(s^{≤j'-2})[-2], tensored
        // with O(s^{≤j}) on the left, then cancelled by Krull-Schmidt.
        for jp in 2..order {
            let mut row = Vec::with_capacity(order);
            for j in 0..order {
                let mut acc = DecompList::new();
                for (x, mult) in table[1][j].iter() {
                    let part = table[jp - 1][x.set.len() - 1].rotate_shift(x.set.start() as i64, x.shift);
                    for _ in 0..mult {
                        acc.extend(&part);
                    }
                }
                acc.subtract(&table[jp - 2][j].rotate_shift(1, -2))?;
                row.push(acc);
            }
            table.push(row);
        }
        Ok(Decomposer { order, table })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Krull-Schmidt decomposition of `a ⊗_R b`.
    pub fn decompose(&self, a: &ShiftedIndec, b: &ShiftedIndec) -> Result<DecompList, BimoduleError> {
        for m in [a, b] {
            if m.set.order() != self.order {
                return Err(BimoduleError::OrderMismatch(self.order, m.set.order()));
            }
        }
        let base = &self.table[b.set.len() - 1][a.set.len() - 1];
        Ok(base.rotate_shift((a.set.start() + b.set.start()) as i64, a.shift + b.shift))
    }

    /// Decomposes `x ⊗ b` summand by summand.
    pub fn decompose_list(&self, x: &DecompList, b: &ShiftedIndec) -> Result<DecompList, BimoduleError> {
        let mut out = DecompList::new();
        for (m, mult) in x.iter() {
            let part = self.decompose(m, b)?;
            for _ in 0..mult {
                out.extend(&part);
            }
        }
        Ok(out)
    }
}

/// One-off decomposition of `a ⊗_R b`.
pub fn tensor_decompose(a: &ShiftedIndec, b: &ShiftedIndec) -> Result<DecompList, BimoduleError> {
    if a.set.order() != b.set.order() {
        return Err(BimoduleError::OrderMismatch(a.set.order(), b.set.order()));
    }
    Decomposer::new(a.set.order())?.decompose(a, b)
}

/// Checks that `g` has a unique term of top `var`-degree, that it is a pure
/// power of `var`, and returns its coefficient.
fn pure_leading_term(g: &TriPoly, var: usize) -> Option<([u32; 3], CycNumber)> {
    let top = g.degree_in(var)?;
    let mut leads = g.terms().filter(|(m, _)| m[var] == top);
    let (m, c) = leads.next()?;
    let pure = m.iter().enumerate().all(|(k, e)| k == var || *e == 0);
    (leads.next().is_none() && pure).then(|| (*m, c.clone()))
}

/// Graded left `R`-rank of `a ⊗_R b` from the quotient
/// `C[X,Y,Z] / (P_a(X,Z), P_b(Z,Y))`.
///
/// In lex order with `Y > Z > X` the generators have leading monomials
/// `Y^{|b|}` and `Z^{|a|}`. The check below confirms this and that the
/// S-polynomial reduces to zero, so the two generators form a Gröbner basis
/// and `Z^α Y^β` (`α < |a|`, `β < |b|`) is a free `C[X]`-basis.
pub fn tensor_rank_oracle(
    ctx: &Arc<CycContext>,
    a: &ShiftedIndec,
    b: &ShiftedIndec,
) -> Result<LaurentInt, BimoduleError> {
    let fail = |detail: String| BimoduleError::VerificationFailure {
        check: "tensor rank oracle".into(),
        degree: 0,
        detail,
    };
    let pa: TriPoly = p_for_set_in(ctx, &a.set, X, Z);
    let pb: TriPoly = p_for_set_in(ctx, &b.set, Z, Y);
    let (ma, ca) = pure_leading_term(&pa, Z).ok_or_else(|| fail(format!("bad leading term in {pa}")))?;
    let (mb, cb) = pure_leading_term(&pb, Y).ok_or_else(|| fail(format!("bad leading term in {pb}")))?;
    if ma[Z] as usize != a.set.len() || mb[Y] as usize != b.set.len() {
        return Err(fail("leading degrees differ from the arc lengths".into()));
    }
    let lead_a = TriPoly::term(ma, CycNumber::one(ctx));
    let lead_b = TriPoly::term(mb, CycNumber::one(ctx));
    let s_poly = &(&lead_b * &pa).scale(&cb) - &(&lead_a * &pb).scale(&ca);
    if !reduce_tensor(ctx, &a.set, &b.set, &s_poly).is_zero() {
        return Err(fail("S-polynomial does not reduce to zero".into()));
    }
    let mut rank = LaurentInt::zero();
    for alpha in 0..a.set.len() {
        for beta in 0..b.set.len() {
            rank = &rank + &v_pow(2 * (alpha + beta) as i32);
        }
    }
    Ok(&rank * &v_pow(-((a.shift + b.shift) as i32)))
}
