use std::fs;
use std::io::Write;
use std::path::Path;

use cyclic_soergel::bimodule::{enumerate_indecomposables, hom_describe, HomRank, ShiftedIndec};
use cyclic_soergel::grothendieck::{
    aw_basis, decat_indec, hecke_quotient_poly, AWElement, AwRing, BasisIdx,
};
use rayon::prelude::*;
use serde::Serialize;

use crate::{write_json, Config, Failure, Format};

#[derive(Serialize)]
pub struct ProductRow {
    left: String,
    right: String,
    product: AWElement,
}

#[derive(Serialize)]
pub struct CensusRow {
    index: usize,
    object: String,
    start: usize,
    len: usize,
    class: String,
}

#[derive(Serialize)]
pub struct HeckeRow {
    power: usize,
    coefficient: String,
}

pub struct Tables {
    d: usize,
    basis: Vec<BasisIdx>,
    products: Vec<ProductRow>,
    census: Vec<CensusRow>,
    hom: Vec<HomRank>,
    hecke: Vec<HeckeRow>,
}

pub fn build(cfg: &Config) -> Result<Tables, String> {
    let d = cfg.d();
    let ring = AwRing::new(d).map_err(|e| e.to_string())?;
    let basis = aw_basis(d);
    let pairs: Vec<(BasisIdx, BasisIdx)> = basis
        .iter()
        .flat_map(|&x| basis.iter().map(move |&y| (x, y)))
        .collect();
    let products = pairs
        .par_iter()
        .map(|&(x, y)| ProductRow {
            left: x.to_string(),
            right: y.to_string(),
            product: ring.basis_product(x, y),
        })
        .collect();
    let objs = enumerate_indecomposables(d).map_err(|e| e.to_string())?;
    let census = objs
        .iter()
        .enumerate()
        .map(|(index, a)| CensusRow {
            index,
            object: a.to_string(),
            start: a.start(),
            len: a.len(),
            class: decat_indec(&ShiftedIndec::standard(*a)).to_string(),
        })
        .collect();
    let hom = objs
        .par_iter()
        .flat_map_iter(|a| {
            objs.iter().map(move |b| {
                hom_describe(&cfg.ctx, a, b).map(|h| HomRank {
                    source: a.to_string(),
                    target: b.to_string(),
                    rank: h.rank,
                })
            })
        })
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| e.to_string())?;
    let mut hecke: Vec<HeckeRow> = hecke_quotient_poly(d)
        .map_err(|e| e.to_string())?
        .iter()
        .enumerate()
        .map(|(power, c)| HeckeRow {
            power,
            coefficient: c.to_string(),
        })
        .collect();
    hecke.push(HeckeRow {
        power: d,
        coefficient: "1".into(),
    });
    Ok(Tables {
        d,
        basis,
        products,
        census,
        hom,
        hecke,
    })
}

fn csv_err(e: csv::Error) -> Failure {
    Failure::Io(e.to_string())
}

fn products_csv(t: &Tables, out: &mut impl Write) -> Result<(), Failure> {
    let mut w = csv::Writer::from_writer(out);
    let mut header = vec!["left".to_string(), "right".to_string()];
    header.extend(t.basis.iter().map(|b| b.to_string()));
    w.write_record(&header).map_err(csv_err)?;
    for row in &t.products {
        let mut rec = vec![row.left.clone(), row.right.clone()];
        rec.extend(t.basis.iter().map(|&b| row.product.coeff(b).to_string()));
        w.write_record(&rec).map_err(csv_err)?;
    }
    w.flush()?;
    Ok(())
}

fn rows_csv<T: Serialize>(rows: &[T], out: &mut impl Write) -> Result<(), Failure> {
    let mut w = csv::Writer::from_writer(out);
    for r in rows {
        w.serialize(r).map_err(csv_err)?;
    }
    w.flush()?;
    Ok(())
}

fn hecke_text(t: &Tables) -> String {
    let terms: Vec<String> = t
        .hecke
        .iter()
        .rev()
        .filter(|r| r.coefficient != "0")
        .map(|r| match (r.power, r.coefficient.as_str()) {
            (0, c) => format!("({c})"),
            (p, "1") => format!("T^{p}"),
            (p, c) => format!("({c}) T^{p}"),
        })
        .collect();
    format!("{} = 0", terms.join(" + "))
}

#[derive(Clone, Copy)]
enum Section {
    Products,
    Census,
    Hom,
    Hecke,
}

const SECTIONS: [(Section, &str); 4] = [
    (Section::Products, "products"),
    (Section::Census, "census"),
    (Section::Hom, "hom_ranks"),
    (Section::Hecke, "hecke"),
];

fn write_section(
    t: &Tables,
    s: Section,
    format: Format,
    out: &mut impl Write,
) -> Result<(), Failure> {
    match (format, s) {
        (Format::Json, Section::Products) => write_json(out, &t.products),
        (Format::Json, Section::Census) => write_json(out, &t.census),
        (Format::Json, Section::Hom) => write_json(out, &t.hom),
        (Format::Json, Section::Hecke) => write_json(out, &t.hecke),
        (Format::Csv, Section::Products) => products_csv(t, out),
        (Format::Csv, Section::Census) => rows_csv(&t.census, out),
        (Format::Csv, Section::Hom) => rows_csv(&t.hom, out),
        (Format::Csv, Section::Hecke) => rows_csv(&t.hecke, out),
        (Format::Text, Section::Products) => {
            for r in &t.products {
                writeln!(out, "({}) * ({}) = {}", r.left, r.right, r.product)?;
            }
            Ok(())
        }
        (Format::Text, Section::Census) => {
            for r in &t.census {
                writeln!(out, "{:>3}  {:<12} {}", r.index, r.object, r.class)?;
            }
            Ok(())
        }
        (Format::Text, Section::Hom) => {
            for r in &t.hom {
                writeln!(out, "rank Hom({}, {}) = {}", r.source, r.target, r.rank)?;
            }
            Ok(())
        }
        (Format::Text, Section::Hecke) => {
            writeln!(out, "{}", hecke_text(t))?;
            Ok(())
        }
    }
}

#[derive(Serialize)]
struct AllJson<'a> {
    d: usize,
    basis: Vec<String>,
    products: &'a [ProductRow],
    census: &'a [CensusRow],
    hom_ranks: &'a [HomRank],
    hecke: &'a [HeckeRow],
}

/// Writes one file per section into `dir`, or every section to `out`.
pub fn emit(
    t: &Tables,
    format: Format,
    dir: Option<&Path>,
    out: &mut impl Write,
) -> Result<(), Failure> {
    let ext = match format {
        Format::Json => "json",
        Format::Csv => "csv",
        Format::Text => "txt",
    };
    if let Some(dir) = dir {
        fs::create_dir_all(dir)?;
        for (s, name) in SECTIONS {
            let path = dir.join(format!("{name}.{ext}"));
            let mut buf = Vec::new();
            write_section(t, s, format, &mut buf)?;
            fs::write(&path, buf).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
            writeln!(out, "wrote {}", path.display())?;
        }
        return Ok(());
    }
    if format == Format::Json {
        return write_json(
            out,
            &AllJson {
                d: t.d,
                basis: t.basis.iter().map(|b| b.to_string()).collect(),
                products: &t.products,
                census: &t.census,
                hom_ranks: &t.hom,
                hecke: &t.hecke,
            },
        );
    }
    for (k, (s, name)) in SECTIONS.into_iter().enumerate() {
        if k > 0 {
            writeln!(out)?;
        }
        writeln!(out, "# {name} d={}", t.d)?;
        write_section(t, s, format, out)?;
    }
    Ok(())
}
