use std::io::Write;
use std::sync::Arc;

use cyclic_soergel::bimodule::{
    enumerate_indecomposables, hom_describe, hom_oracle, soergel_prediction, tensor_decompose,
    tensor_rank_oracle, total_graded_rank, verify_ses, verify_soergel_splitting, CycSet,
    ShiftedIndec,
};
use cyclic_soergel::grothendieck::{
    categorification_check, presentation2_cd1, u_module_matrices, verify_hecke_relation,
    verify_presentations_agree, verify_q_recursion, verify_u_module, AwRing,
};
use rayon::prelude::*;
use serde::Serialize;

use crate::{write_json, Config, Failure, Format, Suite};

type Job = Box<dyn Fn() -> Result<String, String> + Send + Sync>;

struct Item {
    name: String,
    job: Job,
}

#[derive(Debug, Serialize)]
pub struct ItemResult {
    pub suite: &'static str,
    pub item: String,
    pub passed: bool,
    pub detail: String,
}

fn item(
    name: impl Into<String>,
    job: impl Fn() -> Result<String, String> + Send + Sync + 'static,
) -> Item {
    Item {
        name: name.into(),
        job: Box::new(job),
    }
}

fn presentation_items(cfg: &Config) -> Vec<Item> {
    let d = cfg.d();
    vec![
        item("binomial formula for C_1..C_{d-1}", move || {
            let ring = AwRing::new(d).map_err(|e| e.to_string())?;
            let cd1 = presentation2_cd1(&ring).map_err(|e| e.to_string())?;
            Ok(format!("C_{} = {cd1}", d - 1))
        }),
        item("C_i = Q_i(C_1, s)", move || {
            let ring = AwRing::new(d).map_err(|e| e.to_string())?;
            verify_q_recursion(&ring).map_err(|e| e.to_string())?;
            Ok(format!("{} identities", d - 1))
        }),
        item("Hecke relation on A_W/(s-1)", move || {
            let ring = AwRing::new(d).map_err(|e| e.to_string())?;
            let r = verify_hecke_relation(&ring).map_err(|e| e.to_string())?;
            Ok(format!("{} checks", r.checks))
        }),
    ]
}

fn umodule_items(cfg: &Config) -> Vec<Item> {
    let d = cfg.d();
    vec![
        item("U-module relations and basis vectors", move || {
            let u = u_module_matrices(d).map_err(|e| e.to_string())?;
            let r = verify_u_module(&u).map_err(|e| e.to_string())?;
            Ok(format!("{} checks", r.checks))
        }),
        item("products via U agree with A_W", move || {
            let ring = AwRing::new(d).map_err(|e| e.to_string())?;
            let u = u_module_matrices(d).map_err(|e| e.to_string())?;
            let r = verify_presentations_agree(&ring, &u).map_err(|e| e.to_string())?;
            Ok(format!("{} products", r.checks))
        }),
    ]
}

fn soergel_items(cfg: &Config) -> Vec<Item> {
    let d = cfg.d();
    let mut items = Vec::new();
    for i in 1..=d.saturating_sub(2) {
        let (ctx, bound) = (Arc::clone(&cfg.ctx), cfg.degree_bound);
        items.push(item(
            format!("splitting O(s^≤1) ⊗ O(s^≤{i})"),
            move || {
                let r = verify_soergel_splitting(&ctx, i, bound).map_err(|e| e.to_string())?;
                let a = ShiftedIndec::standard(CycSet::prefix(d, 1));
                let b = ShiftedIndec::standard(CycSet::prefix(d, i));
                let got = tensor_decompose(&a, &b).map_err(|e| e.to_string())?;
                let want = soergel_prediction(d, i).map_err(|e| e.to_string())?;
                if got != want {
                    return Err(format!("decomposition {got} differs from {want}"));
                }
                Ok(format!("{} checks up to degree {}", r.checks, r.max_degree))
            },
        ));
    }
    items
}

fn ses_items(cfg: &Config) -> Vec<Item> {
    (1..cfg.d())
        .map(|i| {
            let (ctx, bound) = (Arc::clone(&cfg.ctx), cfg.degree_bound);
            item(format!("short exact sequence i={i}"), move || {
                let r = verify_ses(&ctx, i, bound).map_err(|e| e.to_string())?;
                Ok(format!("{} checks up to degree {}", r.checks, r.max_degree))
            })
        })
        .collect()
}

fn hom_items(cfg: &Config) -> Result<Vec<Item>, Failure> {
    let objs = enumerate_indecomposables(cfg.d()).map_err(|e| Failure::Usage(e.to_string()))?;
    let mut items = Vec::new();
    for &a in &objs {
        for &b in &objs {
            let (ctx, bound) = (Arc::clone(&cfg.ctx), cfg.degree_bound);
            items.push(item(format!("Hom({a}, {b})"), move || {
                let desc = hom_describe(&ctx, &a, &b).map_err(|e| e.to_string())?;
                let oracle = hom_oracle(&ctx, &a, &b, bound).map_err(|e| e.to_string())?;
                let expected = desc.dims_up_to(bound);
                if oracle != expected {
                    return Err(format!("dimensions {oracle:?}, expected {expected:?}"));
                }
                Ok(format!("rank {}", desc.rank))
            }));
        }
    }
    Ok(items)
}

fn categorification_items(cfg: &Config) -> Result<Vec<Item>, Failure> {
    let d = cfg.d();
    let mut items = vec![item(
        "⟨A ⊗ B⟩ = ⟨A⟩⟨B⟩ on all basis pairs",
        move || {
            let r = categorification_check(d).map_err(|e| e.to_string())?;
            Ok(format!("{} pairs", r.checks))
        },
    )];
    let objs = enumerate_indecomposables(d).map_err(|e| Failure::Usage(e.to_string()))?;
    for &a in &objs {
        for &b in &objs {
            let ctx = Arc::clone(&cfg.ctx);
            let (a, b) = (ShiftedIndec::unshifted(a), ShiftedIndec::unshifted(b));
            items.push(item(format!("graded rank of {a} ⊗ {b}"), move || {
                let oracle = tensor_rank_oracle(&ctx, &a, &b).map_err(|e| e.to_string())?;
                let list = tensor_decompose(&a, &b).map_err(|e| e.to_string())?;
                let predicted = total_graded_rank(&list);
                if oracle != predicted {
                    return Err(format!(
                        "oracle {oracle}, decomposition {list} gives {predicted}"
                    ));
                }
                Ok(oracle.to_string())
            }));
        }
    }
    Ok(items)
}

fn suite_name(s: Suite) -> &'static str {
    match s {
        Suite::Presentation => "presentation",
        Suite::Soergel => "soergel",
        Suite::Ses => "ses",
        Suite::Hom => "hom",
        Suite::Categorification => "categorification",
        Suite::Umodule => "umodule",
        Suite::All => "all",
    }
}

fn items_for(cfg: &Config, suite: Suite) -> Result<Vec<Item>, Failure> {
    Ok(match suite {
        Suite::Presentation => presentation_items(cfg),
        Suite::Soergel => soergel_items(cfg),
        Suite::Ses => ses_items(cfg),
        Suite::Hom => hom_items(cfg)?,
        Suite::Categorification => categorification_items(cfg)?,
        Suite::Umodule => umodule_items(cfg),
        Suite::All => unreachable!(),
    })
}

/// Runs every item of the suite on the current pool; results keep item order.
pub fn run_suite(cfg: &Config, suite: Suite) -> Result<Vec<ItemResult>, Failure> {
    let suites = match suite {
        Suite::All => vec![
            Suite::Presentation,
            Suite::Umodule,
            Suite::Soergel,
            Suite::Ses,
            Suite::Hom,
            Suite::Categorification,
        ],
        s => vec![s],
    };
    let mut tagged = Vec::new();
    for s in suites {
        for it in items_for(cfg, s)? {
            tagged.push((suite_name(s), it));
        }
    }
    Ok(tagged
        .par_iter()
        .map(|(s, it)| {
            let (passed, detail) = match (it.job)() {
                Ok(d) => (true, d),
                Err(d) => (false, d),
            };
            ItemResult {
                suite: s,
                item: it.name.clone(),
                passed,
                detail,
            }
        })
        .collect())
}

pub fn print_results(
    results: &Result<Vec<ItemResult>, Failure>,
    format: Format,
    out: &mut impl Write,
) -> Result<(), Failure> {
    let results = match results {
        Ok(r) => r,
        Err(Failure::Usage(m)) => return Err(Failure::Usage(m.clone())),
        Err(Failure::Verification(m)) => return Err(Failure::Verification(m.clone())),
        Err(Failure::Io(m)) => return Err(Failure::Io(m.clone())),
    };
    match format {
        Format::Json => write_json(out, results)?,
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            for r in results {
                w.serialize(r).map_err(|e| Failure::Io(e.to_string()))?;
            }
            w.flush()?;
        }
        Format::Text => {
            for r in results {
                let tag = if r.passed { "PASS" } else { "FAIL" };
                writeln!(out, "{tag} [{}] {}: {}", r.suite, r.item, r.detail)?;
            }
            let passed = results.iter().filter(|r| r.passed).count();
            writeln!(out, "{passed}/{} passed", results.len())?;
        }
    }
    match results.iter().find(|r| !r.passed) {
        Some(r) => Err(Failure::Verification(format!(
            "[{}] {}: {}",
            r.suite, r.item, r.detail
        ))),
        None => Ok(()),
    }
}
