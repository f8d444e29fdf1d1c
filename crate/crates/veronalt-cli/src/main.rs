//! Batch command-line surface over the veronalt engine.
//!
//! Exit codes: 0 on success, 1 when a check-style command answers "false",
//! 2 on usage or parse errors. JSON output is byte-identical across
//! identical invocations; pass `--timings` to include (non-deterministic)
//! wall-clock timings. Progress goes to standard error only.

use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num::BigRational;
use serde_json::{json, Value};

use veronalt::poly::format_rational;
use veronalt::{
    invariant_generators, new_generators, parse, pigeonhole_witness, IdentitySet, LinearGroupAction, StructureEngine, SubspaceSlice, TIdealEngine,
    VeroneseConfig,
};

#[derive(Parser)]
#[command(name = "veronalt", version, about = "Exact computations in relatively free algebras")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
    Csv,
}

#[derive(Args)]
struct Common {
    /// Variety: alt | assoc | ralt | nonassoc | custom:<path>
    #[arg(long, default_value = "alt")]
    variety: String,
    /// Number of free generators
    #[arg(long, default_value_t = 2)]
    rank: usize,
    /// Override the per-rank default total-degree cap
    #[arg(long)]
    degree_cap: Option<u32>,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Seed for randomized property checks (recorded in the config)
    #[arg(long)]
    seed: Option<u64>,
    /// Cap on internal parallelism
    #[arg(long)]
    threads: Option<usize>,
    /// Include wall-clock timings in the output (non-deterministic)
    #[arg(long)]
    timings: bool,
}

#[derive(Subcommand)]
enum Cmd {
    /// Graded dimension table of the relatively free algebra
    Dims {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        max_degree: u32,
    },
    /// Check whether an expression is an identity of the variety
    Check {
        #[command(flatten)]
        common: Common,
        expr: String,
    },
    /// Normal form of an expression, per multihomogeneous component
    Nf {
        #[command(flatten)]
        common: Common,
        expr: String,
    },
    /// Veronese n-subalgebra generator report
    Veronese {
        #[command(flatten)]
        common: Common,
        #[arg(short)]
        n: u32,
        #[arg(long)]
        max_degree: u32,
    },
    /// Invariant-subalgebra generator report for a finite linear group
    Invariants {
        #[command(flatten)]
        common: Common,
        /// Group file: matrices of rationals, blocks separated by blank lines
        #[arg(long, conflicts_with = "scalar_order")]
        group_file: Option<PathBuf>,
        /// Use the scalar group of this order instead of a file
        #[arg(long)]
        scalar_order: Option<u32>,
        #[arg(long)]
        max_degree: u32,
    },
    /// Truncated nucleus dimensions at one degree
    Nucleus {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        degree: u32,
        #[arg(long)]
        cutoff: u32,
    },
    /// Truncated center dimensions at one degree
    Center {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        degree: u32,
        #[arg(long)]
        cutoff: u32,
    },
    /// Dimensions of the D_i chain at one total degree
    Dchain {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        index: u32,
        #[arg(long)]
        degree: u32,
    },
    /// Zero test on the rank-3 split representation
    SplitCheck {
        #[command(flatten)]
        common: Common,
        expr: String,
    },
    /// Residue class containing at least n elements, if any
    Pigeonhole {
        #[command(flatten)]
        common: Common,
        #[arg(short)]
        n: u32,
        residues: Vec<u32>,
    },
}

struct Output {
    command: &'static str,
    config: Value,
    results: Value,
    headers: Vec<&'static str>,
    rows: Vec<Vec<String>>,
    /// Some(false) exits with code 1.
    verdict: Option<bool>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let t0 = Instant::now();
    match run(cli.cmd) {
        Ok((out, common)) => {
            render(&out, &common, t0);
            if out.verdict == Some(false) {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn variety(name: &str) -> Result<IdentitySet, veronalt::Error> {
    match name {
        "alt" => Ok(IdentitySet::alternative()),
        "assoc" => Ok(IdentitySet::associative()),
        "ralt" => Ok(IdentitySet::right_alternative()),
        "nonassoc" => Ok(IdentitySet::nonassoc_free()),
        other => match other.strip_prefix("custom:") {
            Some(path) => IdentitySet::from_file("custom", std::path::Path::new(path)),
            None => Err(veronalt::Error::InvalidInput(format!(
                "unknown variety '{other}' (expected alt|assoc|ralt|nonassoc|custom:<path>)"
            ))),
        },
    }
}

fn engine(common: &Common) -> Result<TIdealEngine, veronalt::Error> {
    let ids = variety(&common.variety)?;
    Ok(match common.degree_cap {
        Some(cap) => TIdealEngine::with_cap(ids, common.rank, cap),
        None => TIdealEngine::new(ids, common.rank),
    })
}

fn config_json(common: &Common, eng: Option<&TIdealEngine>, extra: Value) -> Value {
    let mut cfg = serde_json::Map::new();
    cfg.insert("variety".into(), json!(common.variety));
    cfg.insert("rank".into(), json!(common.rank));
    if let Some(eng) = eng {
        cfg.insert("degree_cap".into(), json!(eng.degree_cap()));
    }
    if let Some(seed) = common.seed {
        cfg.insert("seed".into(), json!(seed));
    }
    if let Value::Object(map) = extra {
        cfg.extend(map);
    }
    Value::Object(cfg)
}

fn rationals(coords: &[BigRational]) -> Vec<String> {
    coords.iter().map(format_rational).collect()
}

fn slice_rows(slices: &[SubspaceSlice]) -> (Vec<Vec<String>>, Value) {
    let rows: Vec<Vec<String>> = slices
        .iter()
        .map(|s| {
            vec![
                s.multidegree.to_string(),
                s.ambient_dim.to_string(),
                s.dim().to_string(),
            ]
        })
        .collect();
    let json_rows: Vec<Value> = slices
        .iter()
        .map(|s| {
            json!({
                "multidegree": s.multidegree.to_string(),
                "ambient_dim": s.ambient_dim,
                "dim": s.dim(),
            })
        })
        .collect();
    (rows, Value::Array(json_rows))
}

fn run(cmd: Cmd) -> Result<(Output, Common), veronalt::Error> {
    match cmd {
        Cmd::Dims { common, max_degree } => {
            setup_threads(&common)?;
            let eng = engine(&common)?;
            let table = eng.dim_table(max_degree)?;
            let rows = table
                .iter()
                .map(|(d, n)| vec![d.to_string(), n.to_string()])
                .collect();
            let results = json!({
                "dims": table.iter().map(|(d, n)| json!({"degree": d, "dim": n})).collect::<Vec<_>>(),
            });
            let out = Output {
                command: "dims",
                config: config_json(&common, Some(&eng), json!({"max_degree": max_degree})),
                results,
                headers: vec!["degree", "dim"],
                rows,
                verdict: None,
            };
            Ok((out, common))
        }
        Cmd::Check { common, expr } => {
            setup_threads(&common)?;
            let eng = engine(&common)?;
            let p = parse(&expr, common.rank)?;
            let verdict = eng.is_identity(&p)?;
            let out = Output {
                command: "check",
                config: config_json(&common, Some(&eng), json!({"expr": expr})),
                results: json!({"verdict": verdict}),
                headers: vec!["verdict"],
                rows: vec![vec![verdict.to_string()]],
                verdict: Some(verdict),
            };
            Ok((out, common))
        }
        Cmd::Nf { common, expr } => {
            setup_threads(&common)?;
            let eng = engine(&common)?;
            let p = parse(&expr, common.rank)?;
            let mut rows = Vec::new();
            let mut json_rows = Vec::new();
            for (m, comp) in p.components(common.rank) {
                let norm = eng.normalizer(&m)?;
                let nf = norm.normal_form(&comp)?;
                let rep = veronalt::format(&norm.lift(&nf));
                rows.push(vec![m.to_string(), rep.clone()]);
                json_rows.push(json!({
                    "multidegree": m.to_string(),
                    "normal_form": rep,
                    "coordinates": rationals(&nf.coords),
                }));
            }
            let out = Output {
                command: "nf",
                config: config_json(&common, Some(&eng), json!({"expr": expr})),
                results: json!({"components": json_rows}),
                headers: vec!["multidegree", "normal_form"],
                rows,
                verdict: None,
            };
            Ok((out, common))
        }
        Cmd::Veronese {
            common,
            n,
            max_degree,
        } => {
            setup_threads(&common)?;
            let eng = engine(&common)?;
            let cfg = VeroneseConfig::new(n, max_degree)?;
            eprintln!("veronese: n={n}, degrees up to {max_degree}");
            let report = new_generators(&eng, &cfg)?;
            let (rows, results) = report_rows(&report);
            let out = Output {
                command: "veronese",
                config: config_json(
                    &common,
                    Some(&eng),
                    json!({"n": n, "max_degree": max_degree}),
                ),
                results,
                headers: vec!["degree", "dim_target", "dim_generated", "new_count"],
                rows,
                verdict: None,
            };
            Ok((out, common))
        }
        Cmd::Invariants {
            common,
            group_file,
            scalar_order,
            max_degree,
        } => {
            setup_threads(&common)?;
            let eng = engine(&common)?;
            let (action, group_desc) = match (&group_file, scalar_order) {
                (Some(path), None) => (
                    LinearGroupAction::from_file(path)?,
                    path.display().to_string(),
                ),
                (None, Some(order)) => (
                    LinearGroupAction::scalar(common.rank, order)?,
                    format!("scalar:{order}"),
                ),
                _ => {
                    return Err(veronalt::Error::InvalidInput(
                        "pass exactly one of --group-file or --scalar-order".into(),
                    ))
                }
            };
            eprintln!(
                "invariants: group of order {}, degrees up to {max_degree}",
                action.order()
            );
            let report = invariant_generators(&action, &eng, max_degree)?;
            let (rows, results) = report_rows(&report);
            let out = Output {
                command: "invariants",
                config: config_json(
                    &common,
                    Some(&eng),
                    json!({"group": group_desc, "group_order": action.order(), "max_degree": max_degree}),
                ),
                results,
                headers: vec!["degree", "dim_target", "dim_generated", "new_count"],
                rows,
                verdict: None,
            };
            Ok((out, common))
        }
        Cmd::Nucleus {
            common,
            degree,
            cutoff,
        } => {
            setup_threads(&common)?;
            let eng = Arc::new(engine(&common)?);
            let se = StructureEngine::new(eng.clone());
            let slices = se.nucleus_component(degree, cutoff)?;
            let (rows, json_rows) = slice_rows(&slices);
            let out = Output {
                command: "nucleus",
                config: config_json(
                    &common,
                    Some(&eng),
                    json!({"degree": degree, "cutoff": cutoff}),
                ),
                results: json!({"components": json_rows}),
                headers: vec!["multidegree", "ambient_dim", "dim"],
                rows,
                verdict: None,
            };
            Ok((out, common))
        }
        Cmd::Center {
            common,
            degree,
            cutoff,
        } => {
            setup_threads(&common)?;
            let eng = Arc::new(engine(&common)?);
            let se = StructureEngine::new(eng.clone());
            let slices = se.center_component(degree, cutoff)?;
            let (rows, json_rows) = slice_rows(&slices);
            let out = Output {
                command: "center",
                config: config_json(
                    &common,
                    Some(&eng),
                    json!({"degree": degree, "cutoff": cutoff}),
                ),
                results: json!({"components": json_rows}),
                headers: vec!["multidegree", "ambient_dim", "dim"],
                rows,
                verdict: None,
            };
            Ok((out, common))
        }
        Cmd::Dchain {
            common,
            index,
            degree,
        } => {
            setup_threads(&common)?;
            let eng = Arc::new(engine(&common)?);
            let se = StructureEngine::new(eng.clone());
            let mut slices = Vec::new();
            for m in veronalt::MultiDegree::all_of_degree(common.rank, degree) {
                slices.push((*se.d_chain_component(index, &m)?).clone());
            }
            let (rows, json_rows) = slice_rows(&slices);
            let out = Output {
                command: "dchain",
                config: config_json(
                    &common,
                    Some(&eng),
                    json!({"index": index, "degree": degree}),
                ),
                results: json!({"components": json_rows}),
                headers: vec!["multidegree", "ambient_dim", "dim"],
                rows,
                verdict: None,
            };
            Ok((out, common))
        }
        Cmd::SplitCheck { common, expr } => {
            let p = parse(&expr, 3)?;
            let verdict = veronalt::is_zero_split(&p)?;
            let out = Output {
                command: "split-check",
                config: config_json(&common, None, json!({"expr": expr})),
                results: json!({"verdict": verdict}),
                headers: vec!["verdict"],
                rows: vec![vec![verdict.to_string()]],
                verdict: Some(verdict),
            };
            Ok((out, common))
        }
        Cmd::Pigeonhole { common, n, residues } => {
            let witness = pigeonhole_witness(n, &residues)?;
            let shown = match witness {
                Some(c) => c.to_string(),
                None => "none".to_string(),
            };
            let out = Output {
                command: "pigeonhole",
                config: config_json(&common, None, json!({"n": n, "residues": residues})),
                results: json!({"witness": witness}),
                headers: vec!["witness"],
                rows: vec![vec![shown]],
                verdict: None,
            };
            Ok((out, common))
        }
    }
}

fn report_rows(report: &veronalt::GeneratorReport) -> (Vec<Vec<String>>, Value) {
    let rows = report
        .rows
        .iter()
        .map(|r| {
            vec![
                r.degree.to_string(),
                r.dim_target.to_string(),
                r.dim_generated.to_string(),
                r.new_count.to_string(),
            ]
        })
        .collect();
    let json_rows: Vec<Value> = report
        .rows
        .iter()
        .map(|r| {
            json!({
                "degree": r.degree,
                "dim_target": r.dim_target,
                "dim_generated": r.dim_generated,
                "new_count": r.new_count,
                "new_generators": r.new_generators.iter().map(veronalt::format).collect::<Vec<_>>(),
            })
        })
        .collect();
    (rows, json!({"degrees": json_rows}))
}

fn setup_threads(common: &Common) -> Result<(), veronalt::Error> {
    if let Some(t) = common.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
            .map_err(|e| veronalt::Error::InvalidInput(format!("--threads: {e}")))?;
    }
    Ok(())
}

fn render(out: &Output, common: &Common, t0: Instant) {
    match common.format {
        Format::Json => {
            let timings = if common.timings {
                json!({"total_ms": t0.elapsed().as_millis() as u64})
            } else {
                json!({})
            };
            let doc = json!({
                "command": out.command,
                "config": out.config,
                "results": out.results,
                "timings": timings,
            });
            println!("{}", serde_json::to_string_pretty(&doc).unwrap());
        }
        Format::Table => {
            let mut widths: Vec<usize> = out.headers.iter().map(|h| h.len()).collect();
            for row in &out.rows {
                for (w, cell) in widths.iter_mut().zip(row.iter()) {
                    *w = (*w).max(cell.len());
                }
            }
            let line = |cells: Vec<String>| {
                let padded: Vec<String> = cells
                    .iter()
                    .zip(widths.iter())
                    .map(|(c, w)| format!("{c:<w$}"))
                    .collect();
                println!("{}", padded.join("  ").trim_end());
            };
            line(out.headers.iter().map(|h| h.to_string()).collect());
            for row in &out.rows {
                line(row.clone());
            }
            if common.timings {
                eprintln!("total: {:?}", t0.elapsed());
            }
        }
        Format::Csv => {
            println!("{}", out.headers.join(","));
            for row in &out.rows {
                let escaped: Vec<String> = row.iter().map(|c| csv_escape(c)).collect();
                println!("{}", escaped.join(","));
            }
        }
    }
}

fn csv_escape(s: &str) -> String {
    if s.contains(',') || s.contains('"') || s.contains('\n') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}
