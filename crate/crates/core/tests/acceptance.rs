//! One line per acceptance criterion. Runs without the libtest harness so the
//! lines are always visible; exits non-zero if any criterion fails.

use std::panic::{self, AssertUnwindSafe};
use std::sync::Arc;
use std::time::Instant;

use cyclic_soergel::bimodule::{
    default_degree_bound, enumerate_indecomposables, hom_describe, hom_oracle, soergel_prediction, tensor_decompose,
    tensor_rank_oracle, total_graded_rank, verify_ses, verify_soergel_splitting, CycSet, Decomposer, ShiftedIndec,
};
use cyclic_soergel::cyclotomic::{CycContext, CycNumber};
use cyclic_soergel::grothendieck::{
    aw_multiply, decat, decat_indec, hecke_quotient_poly, presentation2_cd1, u_module_matrices, verify_presentations_agree,
    verify_q_recursion, verify_u_module, AWElement, AwRing,
};
use cyclic_soergel::laurent::{int, v_pow, CycLaurent, LaurentInt};
use cyclic_soergel::polyring::{p_poly, split_coeffs_closed, BiPoly, SplitTable, TriPoly, X, Y, Z};
use cyclic_soergel::semisimple::{
    char_poly_block, chebyshev_roots, eigen_block, semisimple_check, LamPoly, COINCIDENCE_THRESHOLD, ROOT_TOLERANCE,
    VERDICT_SEMISIMPLE, VERDICT_VIOLATED,
};
use num_complex::Complex64;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ctx(d: usize) -> Arc<CycContext> {
    CycContext::new(d).unwrap()
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

// 1
fn census() -> Outcome {
    for d in 2..=12 {
        let all = enumerate_indecomposables(d).map_err(|e| e.to_string())?;
        ensure(all.len() == d * (d - 1) + 1, || format!("d={d}: {} sets", all.len()))?;
        let mut dedup = all.clone();
        dedup.sort();
        dedup.dedup();
        ensure(dedup.len() == all.len(), || format!("d={d}: duplicates"))?;
    }
    // {e}, {s}, {s²}, {s³}, {e,s}, {s,s²}, {s²,s³}, {s³,e}, {e,s,s²}, {s,s²,s³}, {s²,s³,e}, {s³,e,s}, W
    let listed: [&[usize]; 13] = [
        &[0],
        &[1],
        &[2],
        &[3],
        &[0, 1],
        &[1, 2],
        &[2, 3],
        &[3, 0],
        &[0, 1, 2],
        &[1, 2, 3],
        &[2, 3, 0],
        &[3, 0, 1],
        &[0, 1, 2, 3],
    ];
    let got: Vec<Vec<usize>> = enumerate_indecomposables(4)
        .unwrap()
        .iter()
        .map(|a| a.elements().collect())
        .collect();
    let want: Vec<Vec<usize>> = listed.iter().map(|s| s.to_vec()).collect();
    ensure(got == want, || format!("d=4 list {got:?}"))?;
    Ok("d(d-1)+1 sets for d=2..12; d=4 list verbatim".into())
}

// 2
fn generator_identity() -> Outcome {
    for d in 2..=12 {
        let c = ctx(d);
        let one = CycNumber::one(&c);
        let expected = BiPoly::from_terms([([d as u32, 0], one.clone()), ([0, d as u32], -&one)]);
        let p = p_poly(&c, d - 1).map_err(|e| e.to_string())?;
        ensure(p == expected, || format!("d={d}: P_(d-1) = {p}"))?;
    }
    Ok("P_(d-1) = X^d - Y^d for d=2..12".into())
}

/// `∏_{t=0}^{n} (U - ζ^t V)` multiplied out term by term.
fn linear_product(c: &Arc<CycContext>, n: usize, u: usize, v: usize) -> TriPoly {
    let mut acc = TriPoly::constant(CycNumber::one(c));
    for t in 0..=n {
        let (mut mu, mut mv) = ([0u32; 3], [0u32; 3]);
        mu[u] = 1;
        mv[v] = 1;
        let f = TriPoly::from_terms([(mu, CycNumber::one(c)), (mv, -&CycNumber::zeta_pow(c, t as i64))]);
        acc = &acc * &f;
    }
    acc
}

// 3
fn splitting_identities() -> Outcome {
    let mut count = 0;
    for d in 2..=12 {
        let c = ctx(d);
        let table = SplitTable::new(&c, d - 1).map_err(|e| e.to_string())?;
        let pxy: Vec<TriPoly> = (0..d).map(|k| linear_product(&c, k, X, Y)).collect();
        let pxz: Vec<TriPoly> = (0..d).map(|k| linear_product(&c, k, X, Z)).collect();
        let pzy: Vec<TriPoly> = (0..d).map(|k| linear_product(&c, k, Z, Y)).collect();
        for k in 0..d {
            for i in 0..=k {
                let (ck, dk) = table.get(k, i).map_err(|e| e.to_string())?;
                let rhs = &(ck * &pxz[i]) + &(dk * &pzy[k - i]);
                ensure(rhs == pxy[k], || format!("d={d} k={k} i={i}"))?;
                count += 1;
            }
        }
        for i in 0..=d - 2 {
            let (c_closed, d_closed) = split_coeffs_closed(&c, i).map_err(|e| e.to_string())?;
            ensure(c_closed == table.get(i + 1, i).unwrap().0, || format!("d={d}: closed c_(i+1)^i, i={i}"))?;
            ensure(d_closed == table.get(i + 1, 1).unwrap().1, || format!("d={d}: closed d_(i+1)^i, i={i}"))?;
        }
    }
    Ok(format!("{count} identities for d<=12; closed forms agree"))
}

// 4
fn soergel_splitting() -> Outcome {
    let mut checks = 0;
    for d in 3..=8 {
        let c = ctx(d);
        for i in 1..=d - 2 {
            let r = verify_soergel_splitting(&c, i, default_degree_bound(d)).map_err(|e| e.to_string())?;
            checks += r.checks;
            let a = ShiftedIndec::standard(CycSet::prefix(d, 1));
            let b = ShiftedIndec::standard(CycSet::prefix(d, i));
            let got = tensor_decompose(&a, &b).map_err(|e| e.to_string())?;
            ensure(got == soergel_prediction(d, i).unwrap(), || format!("d={d} i={i}: {got}"))?;
        }
    }
    Ok(format!("{checks} checks, d=3..8, degree bound 2(2d+2)"))
}

// 5
fn short_exact_sequence() -> Outcome {
    let mut checks = 0;
    for d in 3..=8 {
        let c = ctx(d);
        for i in 1..d {
            checks += verify_ses(&c, i, default_degree_bound(d)).map_err(|e| e.to_string())?.checks;
        }
    }
    Ok(format!("{checks} checks, d=3..8"))
}

// 6
fn tensor_oracle() -> Outcome {
    let mut pairs = 0;
    for d in 3..=8 {
        let c = ctx(d);
        let objs: Vec<ShiftedIndec> = enumerate_indecomposables(d).unwrap().into_iter().map(ShiftedIndec::unshifted).collect();
        for a in &objs {
            for b in &objs {
                let oracle = tensor_rank_oracle(&c, a, b).map_err(|e| e.to_string())?;
                let list = tensor_decompose(a, b).map_err(|e| e.to_string())?;
                let predicted = total_graded_rank(&list);
                ensure(oracle == predicted, || format!("d={d} {a} ⊗ {b}: {oracle} vs {predicted}"))?;
                pairs += 1;
            }
        }
    }
    Ok(format!("{pairs} pairs, d=3..8"))
}

// 7
fn hom_spaces() -> Outcome {
    let mut pairs = 0;
    for d in 3..=6 {
        let c = ctx(d);
        let bound = 4 * d;
        let objs = enumerate_indecomposables(d).unwrap();
        for a in &objs {
            for b in &objs {
                let desc = hom_describe(&c, a, b).map_err(|e| e.to_string())?;
                let common = a.elements().filter(|t| b.contains(*t)).count();
                ensure(desc.rank == common, || format!("d={d} Hom({a}, {b}) rank {}", desc.rank))?;
                let dims = hom_oracle(&c, a, b, bound).map_err(|e| e.to_string())?;
                let expected = desc.dims_up_to(bound);
                ensure(dims == expected, || format!("d={d} Hom({a}, {b}): {dims:?} vs {expected:?}"))?;
                pairs += 1;
            }
        }
    }
    Ok(format!("{pairs} pairs, d=3..6, degree bound 4d"))
}

// 8
fn categorification() -> Outcome {
    let mut pairs = 0;
    for d in 3..=8 {
        let dec = Decomposer::new(d).map_err(|e| e.to_string())?;
        let objs: Vec<ShiftedIndec> = enumerate_indecomposables(d).unwrap().into_iter().map(ShiftedIndec::standard).collect();
        for a in &objs {
            for b in &objs {
                let lhs = decat(&dec.decompose(a, b).map_err(|e| e.to_string())?, d);
                let rhs = aw_multiply(&decat_indec(a), &decat_indec(b)).map_err(|e| e.to_string())?;
                ensure(lhs == rhs, || format!("d={d} {a} ⊗ {b}: {lhs} vs {rhs}"))?;
                pairs += 1;
            }
        }
    }
    Ok(format!("{pairs} pairs, d=3..8"))
}

// 9
fn presentations() -> Outcome {
    for d in 2..=12 {
        let ring = AwRing::new(d).map_err(|e| e.to_string())?;
        let cd1 = presentation2_cd1(&ring).map_err(|e| format!("d={d}: {e}"))?;
        ensure(cd1 == AWElement::basis(d, 0, d - 1), || format!("d={d}: C_(d-1) = {cd1}"))?;
        verify_q_recursion(&ring).map_err(|e| format!("d={d}: {e}"))?;
    }
    let mut checks = 0;
    for d in 2..=10 {
        let u = u_module_matrices(d).map_err(|e| e.to_string())?;
        checks += verify_u_module(&u).map_err(|e| format!("d={d}: {e}"))?.checks;
        let ring = AwRing::new(d).unwrap();
        checks += verify_presentations_agree(&ring, &u).map_err(|e| format!("d={d}: {e}"))?.checks;
    }
    Ok(format!("binomial formula d=2..12; U-module d=2..10 ({checks} checks)"))
}

// 10
fn hecke_quotient() -> Outcome {
    for d in 2..=12 {
        let a = hecke_quotient_poly(d).map_err(|e| format!("d={d}: {e}"))?;
        ensure(a.len() == d, || format!("d={d}: {} lower coefficients", a.len()))?;
        let ring = AwRing::new(d).unwrap();
        let c1 = AWElement::basis(d, 0, 1);
        // columns of C_1 on A_W/(s-1), read off the ring products
        let cols: Vec<Vec<LaurentInt>> = (0..d).map(|j| ring.multiply(&c1, &AWElement::basis(d, 0, j)).collapse_s()).collect();
        let t_apply = |x: &[LaurentInt]| -> Vec<LaurentInt> {
            let mut y: Vec<LaurentInt> = x.iter().map(|c| -&(c * &v_pow(1))).collect();
            for (j, xj) in x.iter().enumerate() {
                for (r, m) in cols[j].iter().enumerate() {
                    y[r] = &y[r] + &(m * xj);
                }
            }
            y
        };
        for j in 0..d {
            let e: Vec<LaurentInt> = (0..d).map(|r| if r == j { int(1) } else { LaurentInt::zero() }).collect();
            let mut acc = e.clone();
            for i in (0..d).rev() {
                acc = t_apply(&acc);
                for r in 0..d {
                    acc[r] = &acc[r] + &(&a[i] * &e[r]);
                }
            }
            ensure(acc.iter().all(|c| c.is_zero()), || format!("d={d}: relation fails on C_{j}"))?;
        }
    }
    let a3: Vec<String> = hecke_quotient_poly(3).unwrap().iter().map(|c| c.to_string()).collect();
    ensure(a3 == ["v^-1 - v", "-3 + v^2", "-v^-1 + 2v"], || format!("d=3: {a3:?}"))?;
    Ok("monic of degree d, annihilates C_1 - v, d=2..12; d=3 coefficients match".into())
}

fn lam_const(c: CycNumber) -> LamPoly {
    LamPoly::constant(CycLaurent::constant(c))
}

/// `Q_0 = 1`, `Q_1 = λ`, `Q_{i+1} = λ Q_i - η Q_{i-1}`.
fn q_recursive(c: &Arc<CycContext>, i: usize, m: usize) -> LamPoly {
    let lambda = LamPoly::term(1, CycLaurent::constant(CycNumber::one(c)));
    let eta = lam_const(CycNumber::zeta_pow(c, m as i64));
    let (mut prev, mut cur) = (LamPoly::zero(), lam_const(CycNumber::one(c)));
    for _ in 0..i {
        let next = &(&lambda * &cur) - &(&eta * &prev);
        prev = cur;
        cur = next;
    }
    cur
}

fn q_numeric(i: usize, eta: Complex64, lambda: Complex64) -> Complex64 {
    let (mut prev, mut cur) = (Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0));
    for _ in 0..i {
        let next = lambda * cur - eta * prev;
        prev = cur;
        cur = next;
    }
    cur
}

// 11
fn spectra() -> Outcome {
    for d in 2..=8 {
        let c = ctx(d);
        let one = CycNumber::one(&c);
        for m in 0..d {
            let mut closed = q_recursive(&c, d - 1, m);
            if m == 0 {
                let w = CycLaurent::from_terms([(1, -&one), (-1, -&one)]);
                let factor = LamPoly::from_terms([(1, CycLaurent::constant(one.clone())), (0, w)]);
                closed = &factor * &closed;
            }
            let det = eigen_block(&c, m).map_err(|e| e.to_string())?.char_poly_det();
            ensure(det == closed, || format!("d={d} m={m}: determinant differs from closed form"))?;
            let block = char_poly_block(&c, m).map_err(|e| e.to_string())?;
            ensure(block == closed, || format!("d={d} m={m}: char_poly_block differs"))?;
        }
    }
    let mut worst: f64 = 0.0;
    for d in 2..=12 {
        let c = ctx(d);
        for m in 0..d {
            let eta = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * m as f64 / d as f64);
            for r in chebyshev_roots(&c, d - 1, m) {
                let residual = q_numeric(d - 1, eta, r).norm();
                worst = worst.max(residual);
                ensure(residual <= ROOT_TOLERANCE, || format!("d={d} m={m}: |Q({r})| = {residual:e}"))?;
            }
        }
        let report = semisimple_check(&c, Complex64::new(2.0, 0.0), ROOT_TOLERANCE).map_err(|e| e.to_string())?;
        ensure(report.blocks.iter().all(|b| b.distinct), || format!("d={d}: repeated eigenvalue at v=2"))?;
        ensure(report.verdict == VERDICT_SEMISIMPLE, || format!("d={d}: verdict {}", report.verdict))?;
        ensure(report.total_dim() == d * (d - 1) + 1, || format!("d={d}: blocks sum to {}", report.total_dim()))?;
    }
    Ok(format!("closed forms d=2..8; max root residual {worst:.1e}; distinct at v=2, d=2..12"))
}

// 12
fn criterion_boundary() -> Outcome {
    let mut points = 0;
    let mut widest: f64 = 0.0;
    for d in 3..=8 {
        let c = ctx(d);
        let roots = chebyshev_roots(&c, d - 1, 0);
        for k in 1..d {
            let v = Complex64::from_polar(1.0, k as f64 * std::f64::consts::PI / d as f64);
            let report = semisimple_check(&c, v, ROOT_TOLERANCE).map_err(|e| e.to_string())?;
            ensure(report.verdict == VERDICT_VIOLATED, || format!("d={d} k={k}: verdict {}", report.verdict))?;
            let w = v + v.inv();
            ensure(roots.iter().any(|r| (r - w).norm() < COINCIDENCE_THRESHOLD), || {
                format!("d={d} k={k}: v+1/v is no Chebyshev root")
            })?;
            let near: Vec<f64> = report.blocks[0]
                .eigenvalues
                .iter()
                .map(|z| (Complex64::new(z[0], z[1]) - w).norm())
                .filter(|&g| g < COINCIDENCE_THRESHOLD)
                .collect();
            ensure(near.len() >= 2, || format!("d={d} k={k}: m=0 block has {} eigenvalue(s) at v+1/v", near.len()))?;
            widest = near.iter().copied().fold(widest, f64::max);
            points += 1;
        }
    }
    Ok(format!("{points} boundary points violate; coincidence spread <= {widest:.1e}"))
}

fn main() {
    let criteria: [Criterion; 12] = [
        ("census", census),
        ("generator identity", generator_identity),
        ("splitting identities", splitting_identities),
        ("Soergel splitting", soergel_splitting),
        ("short exact sequence", short_exact_sequence),
        ("tensor rank oracle", tensor_oracle),
        ("Hom oracle", hom_spaces),
        ("categorification", categorification),
        ("presentations", presentations),
        ("Hecke quotient", hecke_quotient),
        ("spectra", spectra),
        ("criterion boundary", criterion_boundary),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (n, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail} [{secs:.2}s]", n + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {detail} [{secs:.2}s]", n + 1);
            }
        }
    }
    println!("{}/{} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
