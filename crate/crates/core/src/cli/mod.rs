//! The `ncproj` command line: every verb builds a JSON report, writes it to `--json` when
//! given, and prints a table rendered from that JSON.
//!
//! Exit codes: 0 success, 1 usage or parse error, 2 a mathematical hypothesis or checked
//! identity failed, 3 a window or cutoff was too small.

pub mod modspec;
pub mod report;
pub mod spec_file;
pub mod suites;

use std::path::PathBuf;
use std::sync::Arc;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::bigr::{
    beta_window, delta_bimodule, input_window, q_bibi, q_compose_check, saturation_margin, segre,
    segre_generation_check, BetaSide, BiWindow, Exhaust,
};
use crate::error::{Error, Result};
use crate::exactla::FieldSpec;
use crate::freealg::{graded_dim, groebner_truncated, Algebra, Presentation};
use crate::grmod::{ext_kk_bounded, q_windowed, torsion_submodule, DegreeWindow};

use report::{render, Input, Report, Status};
pub use spec_file::{parse_spec, print_spec};
use suites::Suite;

#[derive(Parser, Debug)]
#[command(name = "ncproj", version, about = "Exact computations with graded algebras, their module categories and small dg categories")]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
    /// Coefficient field: 0, a prime p, QQ or GF(p); overrides the spec files
    #[arg(long, global = true)]
    field: Option<String>,
    #[arg(long, global = true)]
    max_degree: Option<u32>,
    /// Degree window lo:hi (a square window for bigraded verbs)
    #[arg(long, global = true, allow_hyphen_values = true)]
    window: Option<String>,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Write the JSON report here
    #[arg(long, global = true)]
    json: Option<PathBuf>,
    /// Record wall-clock time in the report (makes it non-reproducible)
    #[arg(long, global = true)]
    timing: bool,
    /// Do not print the table
    #[arg(long, global = true)]
    quiet: bool,
}

#[derive(Subcommand, Debug)]
enum Verb {
    /// Graded dimensions and normal-word counts up to --max-degree
    Hilbert { spec: PathBuf },
    /// Truncated Gröbner basis up to --max-degree
    Gb { spec: PathBuf },
    /// Saturation QM = colim_n Hom(A_{>=n}, M) on --window
    Saturate {
        spec: PathBuf,
        #[arg(long, default_value = "A")]
        module: String,
        #[arg(long, default_value_t = 4)]
        n_max: u32,
        /// Window on which the module itself is computed; by default wide enough for --window
        #[arg(long, allow_hyphen_values = true)]
        input_window: Option<String>,
    },
    /// Torsion submodule of a module given on --window
    Torsion {
        spec: PathBuf,
        #[arg(long, default_value = "A")]
        module: String,
    },
    /// Segre product of two algebras generated in weight 1
    Segre {
        spec_a: PathBuf,
        spec_b: PathBuf,
        #[arg(long)]
        check_generation: bool,
    },
    /// The diagonal bimodule and its saturation on a square --window
    Delta {
        spec: PathBuf,
        #[arg(long, default_value_t = 3)]
        n_max: u32,
    },
    /// Comparison Q_A M -> Q_{A⊗A} M for the diagonal M on a square --window
    Beta {
        spec: PathBuf,
        #[arg(long, default_value_t = 3)]
        n_max: u32,
        #[arg(long, value_enum, default_value_t = Side::Left)]
        side: Side,
    },
    /// Q_{A⊗B} against Q_A∘Q_B and Q_B∘Q_A on a square --window
    Qcompose {
        spec_a: PathBuf,
        spec_b: PathBuf,
        #[arg(long, default_value = "free")]
        module: String,
        #[arg(long, default_value_t = 4)]
        n_max: u32,
    },
    /// dim Ext^p(k, k) by internal weight
    Ext {
        spec: PathBuf,
        #[arg(long, default_value_t = 3)]
        p_max: usize,
        #[arg(long, default_value_t = 6)]
        d_max: u32,
    },
    /// Seeded checks of dg module identities
    DgCheck {
        #[arg(long, value_enum)]
        suite: Suite,
        #[arg(long, default_value_t = 10)]
        count: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Side {
    Left,
    Right,
}

struct Context {
    field: Option<FieldSpec>,
    inputs: Vec<Input>,
    warnings: Vec<String>,
}

impl Context {
    fn load(&mut self, path: &PathBuf) -> Result<Presentation> {
        let name = path.display().to_string();
        let bytes = std::fs::read(path).map_err(|e| Error::Usage(format!("cannot read {}: {}", name, e)))?;
        let text = String::from_utf8(bytes.clone())
            .map_err(|_| Error::Parse { file: name.clone(), line: 1, col: 1, msg: "file is not UTF-8".into() })?;
        self.inputs.push(Input { path: name.clone(), bytes });
        let (p, warnings) = spec_file::parse_spec_with_warnings(&text, &name, self.field)?;
        self.warnings.extend(warnings);
        Ok(p)
    }

    fn field(&self) -> FieldSpec {
        self.field.unwrap_or(FieldSpec::RATIONALS)
    }
}

/// Verb output: the result payload and whether a checked property failed.
struct Outcome {
    result: Value,
    status: Status,
}

fn ok(result: Value) -> Outcome {
    Outcome { result, status: Status::Ok }
}

fn checked(result: Value, passed: bool) -> Outcome {
    Outcome { result, status: if passed { Status::Ok } else { Status::Hypothesis } }
}

fn parse_window(s: &str) -> Result<(i64, i64)> {
    let bad = || Error::Usage(format!("window must look like lo:hi, found '{}'", s));
    let (a, b) = s.split_once(':').ok_or_else(bad)?;
    let lo: i64 = a.trim().parse().map_err(|_| bad())?;
    let hi: i64 = b.trim().parse().map_err(|_| bad())?;
    if lo > hi {
        return Err(Error::Usage(format!("empty window {}", s)));
    }
    Ok((lo, hi))
}

fn presentation_json(p: &Presentation) -> Value {
    let names = p.names();
    json!({
        "field": p.field().describe(),
        "generators": p.generators().iter().map(|g| json!({ "name": g.name, "weight": g.weight })).collect::<Vec<_>>(),
        "relations": p.relations().iter().map(|r| r.display(&names)).collect::<Vec<_>>(),
    })
}

/// Algebra whose cutoff reaches `needed`.
fn algebra(p: &Presentation, needed: i64) -> Arc<Algebra> {
    Arc::new(Algebra::new(p.clone(), needed.max(1) as u32))
}

fn cmd_hilbert(ctx: &mut Context, spec: &PathBuf, d_max: u32) -> Result<Outcome> {
    let p = ctx.load(spec)?;
    let mut dims = Vec::new();
    for d in 0..=d_max {
        dims.push(graded_dim(&p, d, d_max)?.0);
    }
    let gb = groebner_truncated(&p, d_max)?;
    let counts: Vec<usize> = gb.normal_words().iter().map(Vec::len).collect();
    Ok(ok(json!({
        "algebra": presentation_json(&p),
        "max_degree": d_max,
        "dims": dims,
        "normal_word_counts": counts,
    })))
}

fn cmd_gb(ctx: &mut Context, spec: &PathBuf, d_max: u32) -> Result<Outcome> {
    let p = ctx.load(spec)?;
    let gb = groebner_truncated(&p, d_max)?;
    let names = p.names();
    let elements: Vec<Value> = gb
        .elements()
        .iter()
        .zip(gb.leading_words())
        .map(|(g, w)| json!({ "element": g.display(&names), "leading_word": w.display(&names), "weight": p.word_weight(w) }))
        .collect();
    Ok(ok(json!({
        "algebra": presentation_json(&p),
        "cutoff": d_max,
        "order": "degree-lexicographic in generator order",
        "basis": elements,
    })))
}

fn cmd_saturate(
    ctx: &mut Context,
    spec: &PathBuf,
    module: &str,
    window: (i64, i64),
    input_window: Option<(i64, i64)>,
    n_max: u32,
) -> Result<Outcome> {
    let p = ctx.load(spec)?;
    let summands = modspec::parse_graded(module)?;
    if n_max == 0 {
        return Err(Error::Usage("--n-max must be positive".into()));
    }
    let out = DegreeWindow::new(window.0, window.1)?;
    let margin = saturation_margin(&algebra(&p, 1), n_max) as i64;
    let lowest = summands.iter().map(|s| s.lowest_degree()).min().unwrap_or(0);
    let input = match input_window {
        Some((lo, hi)) => DegreeWindow::new(lo, hi)?,
        None => DegreeWindow::new(lowest.min(out.lo), out.hi + margin)?,
    };
    let alg = algebra(&p, input.hi - lowest.min(0));
    let m = modspec::build_graded(&alg, &summands, input)?;
    let q = q_windowed(&m, n_max, Some(out))?;
    let rows: Vec<Value> = q
        .report
        .iter()
        .map(|r| {
            json!({
                "degree": r.degree,
                "dim": q.module.dim(r.degree).unwrap_or(0),
                "certified": r.certified,
                "stabilized_at": r.stabilized_at,
            })
        })
        .collect();
    Ok(ok(json!({
        "algebra": presentation_json(&p),
        "module": module,
        "n_max": n_max,
        "input_window": [input.lo, input.hi],
        "window": [out.lo, out.hi],
        "dims": q.module.dims(),
        "degrees": rows,
        "fully_certified": q.fully_certified(),
    })))
}

fn cmd_torsion(ctx: &mut Context, spec: &PathBuf, module: &str, window: (i64, i64)) -> Result<Outcome> {
    let p = ctx.load(spec)?;
    let summands = modspec::parse_graded(module)?;
    let win = DegreeWindow::new(window.0, window.1)?;
    let lowest = summands.iter().map(|s| s.lowest_degree()).min().unwrap_or(0);
    let alg = algebra(&p, win.hi - lowest.min(0));
    let m = modspec::build_graded(&alg, &summands, win)?;
    let t = torsion_submodule(&m)?;
    let rows: Vec<Value> = t
        .degrees
        .iter()
        .map(|d| {
            json!({
                "degree": d.degree,
                "dim": d.dim,
                "torsion_dim": d.torsion_dim,
                "certified": d.certified,
                "stabilized_at": d.stabilized_at,
            })
        })
        .collect();
    Ok(ok(json!({
        "algebra": presentation_json(&p),
        "module": module,
        "window": [win.lo, win.hi],
        "degrees": rows,
        "bound": t.bound,
        "is_torsion": t.is_everything(),
        "fully_certified": t.fully_certified(),
    })))
}

fn cmd_segre(ctx: &mut Context, a: &PathBuf, b: &PathBuf, d_max: u32, check_generation: bool) -> Result<Outcome> {
    let pa = ctx.load(a)?;
    let pb = ctx.load(b)?;
    let s = segre(&pa, &pb, d_max)?;
    let mut result = json!({
        "factors": [presentation_json(&pa), presentation_json(&pb)],
        "max_degree": d_max,
        "dims": s.dims,
        "expected_dims": s.expected,
        "relation_counts": s.relation_counts,
        "kernel_dims": s.kernel_dims,
        "generators": s.presentation.num_generators(),
    });
    let mut passed = s.dims == s.expected;
    if check_generation {
        let steps = segre_generation_check(&pa, &pb, d_max)?;
        passed &= steps.iter().all(|st| st.surjective);
        result["generation"] = steps
            .iter()
            .map(|st| json!({ "degree": st.degree, "rank": st.rank, "target_dim": st.target_dim, "surjective": st.surjective }))
            .collect();
    }
    Ok(checked(result, passed))
}

fn square(window: (i64, i64)) -> Result<BiWindow> {
    BiWindow::square(window.0, window.1)
}

fn cmd_delta(ctx: &mut Context, spec: &PathBuf, window: (i64, i64), n_max: u32) -> Result<Outcome> {
    let p = ctx.load(spec)?;
    let out = square(window)?;
    let probe = algebra(&p, 1);
    let input = input_window(&probe, &probe, out, Exhaust::Both, n_max)?;
    let alg = algebra(&p, input.hi1 + input.hi2);
    let delta = delta_bimodule(alg, input)?;
    let q = q_bibi(&delta, out, n_max)?;
    let cells: Vec<Value> = q
        .report
        .iter()
        .map(|r| {
            json!({
                "bidegree": [r.bidegree.0, r.bidegree.1],
                "delta_dim": delta.dim(r.bidegree).unwrap_or(0),
                "q_dim": q.module.dim(r.bidegree).unwrap_or(0),
                "certified": r.certified,
            })
        })
        .collect();
    Ok(ok(json!({
        "algebra": presentation_json(&p),
        "n_max": n_max,
        "window": [out.lo1, out.hi1],
        "cells": cells,
    })))
}

fn cmd_beta(ctx: &mut Context, spec: &PathBuf, window: (i64, i64), n_max: u32, side: Side) -> Result<Outcome> {
    let p = ctx.load(spec)?;
    let out = square(window)?;
    let probe = algebra(&p, 1);
    let input = input_window(&probe, &probe, out, Exhaust::Both, n_max)?;
    let alg = algebra(&p, input.hi1 + input.hi2);
    let delta = delta_bimodule(alg, input)?;
    let side = match side {
        Side::Left => BetaSide::Left,
        Side::Right => BetaSide::Right,
    };
    let r = beta_window(&delta, side, out, n_max)?;
    let cells: Vec<Value> = r
        .cells
        .iter()
        .map(|c| {
            json!({
                "bidegree": [c.bidegree.0, c.bidegree.1],
                "source_dim": c.source_dim,
                "target_dim": c.target_dim,
                "certified": c.certified,
                "iso": c.iso,
            })
        })
        .collect();
    let iso = r.iso_on_certified();
    Ok(checked(
        json!({
            "algebra": presentation_json(&p),
            "module": "diagonal",
            "side": if side == BetaSide::Left { "left" } else { "right" },
            "n_max": n_max,
            "window": [out.lo1, out.hi1],
            "cells": cells,
            "certified_count": r.certified_count(),
            "iso_on_certified": iso,
        }),
        iso,
    ))
}

fn cmd_qcompose(ctx: &mut Context, a: &PathBuf, b: &PathBuf, module: &str, window: (i64, i64), n_max: u32) -> Result<Outcome> {
    let pa = ctx.load(a)?;
    let pb = ctx.load(b)?;
    pa.field().check_same(&pb.field())?;
    let kind = modspec::parse_bigraded(module)?;
    let out = square(window)?;
    let input = input_window(&algebra(&pa, 1), &algebra(&pb, 1), out, Exhaust::Both, n_max)?;
    let alg_a = algebra(&pa, input.hi1);
    let alg_b = algebra(&pb, input.hi2);
    let m = modspec::build_bigraded(&alg_a, &alg_b, kind, input)?;
    let r = q_compose_check(&m, out, n_max)?;
    let cells: Vec<Value> = r
        .cells
        .iter()
        .map(|c| {
            json!({
                "bidegree": [c.bidegree.0, c.bidegree.1],
                "dim_both": c.dim_both,
                "dim_a_then_b": c.dim_a_then_b,
                "dim_b_then_a": c.dim_b_then_a,
                "certified": c.certified,
                "maps_iso": c.maps_iso,
            })
        })
        .collect();
    let passes = r.passes();
    Ok(checked(
        json!({
            "factors": [presentation_json(&pa), presentation_json(&pb)],
            "module": module,
            "n_max": n_max,
            "window": [out.lo1, out.hi1],
            "cells": cells,
            "certified_count": r.certified_count(),
            "agree_on_certified": passes,
        }),
        passes,
    ))
}

fn cmd_ext(ctx: &mut Context, spec: &PathBuf, p_max: usize, d_max: u32) -> Result<Outcome> {
    let p = ctx.load(spec)?;
    let alg = algebra(&p, d_max as i64);
    let t = ext_kk_bounded(&alg, p_max, d_max)?;
    let rows: Vec<Value> = t
        .dims
        .iter()
        .enumerate()
        .map(|(k, row)| {
            let weights: Vec<usize> = (0..row.len()).filter(|&d| row[d] > 0).collect();
            let dims: Vec<usize> = weights.iter().map(|&d| row[d]).collect();
            json!({ "p": k, "total": t.total(k), "weights": weights, "dims": dims })
        })
        .collect();
    Ok(ok(json!({
        "algebra": presentation_json(&p),
        "p_max": p_max,
        "d_max": d_max,
        "table": rows,
        "by_weight": t.dims,
    })))
}

fn cmd_dg_check(ctx: &Context, suite: Suite, seed: u64, count: usize) -> Result<Outcome> {
    let field = ctx.field();
    let mut rows = Vec::new();
    let mut failures = 0;
    for i in 0..count as u64 {
        let o = suites::run_instance(suite, field, seed.wrapping_add(i));
        if !o.passed {
            failures += 1;
        }
        rows.push(json!({ "instance": i, "seed": o.seed, "passed": o.passed, "detail": o.detail }));
    }
    let name = suite.to_possible_value().expect("named suite").get_name().to_string();
    Ok(checked(
        json!({
            "suite": name,
            "field": field.describe(),
            "seed": seed,
            "count": count,
            "failures": failures,
            "instances": rows,
        }),
        failures == 0,
    ))
}

fn dispatch(cli: &Cli, ctx: &mut Context) -> Result<Outcome> {
    let d_max = cli.max_degree;
    let window = |default: (i64, i64)| -> Result<(i64, i64)> {
        cli.window.as_deref().map_or(Ok(default), parse_window)
    };
    match &cli.verb {
        Verb::Hilbert { spec } => cmd_hilbert(ctx, spec, d_max.unwrap_or(6)),
        Verb::Gb { spec } => cmd_gb(ctx, spec, d_max.unwrap_or(6)),
        Verb::Saturate { spec, module, n_max, input_window } => {
            let input = input_window.as_deref().map(parse_window).transpose()?;
            cmd_saturate(ctx, spec, module, window((-2, 4))?, input, *n_max)
        }
        Verb::Torsion { spec, module } => cmd_torsion(ctx, spec, module, window((0, 6))?),
        Verb::Segre { spec_a, spec_b, check_generation } => {
            cmd_segre(ctx, spec_a, spec_b, d_max.unwrap_or(4), *check_generation)
        }
        Verb::Delta { spec, n_max } => cmd_delta(ctx, spec, window((-1, 3))?, *n_max),
        Verb::Beta { spec, n_max, side } => cmd_beta(ctx, spec, window((-1, 3))?, *n_max, *side),
        Verb::Qcompose { spec_a, spec_b, module, n_max } => {
            cmd_qcompose(ctx, spec_a, spec_b, module, window((-2, 3))?, *n_max)
        }
        Verb::Ext { spec, p_max, d_max } => cmd_ext(ctx, spec, *p_max, *d_max),
        Verb::DgCheck { suite, count } => cmd_dg_check(ctx, *suite, cli.seed, *count),
    }
}

/// Command echo: the arguments minus the report destination.
fn echo(args: &[String]) -> Vec<String> {
    let mut out = Vec::new();
    let mut skip = false;
    for a in args {
        if skip {
            skip = false;
            continue;
        }
        if a == "--json" {
            skip = true;
            continue;
        }
        if a.starts_with("--json=") {
            continue;
        }
        out.push(a.clone());
    }
    out
}

fn failure_status(e: &Error) -> Option<Status> {
    match e {
        Error::Hypothesis(_) => Some(Status::Hypothesis),
        Error::WindowTooSmall { .. } | Error::CutoffTooSmall { .. } | Error::EmptyWindow(_) => Some(Status::Window),
        _ => None,
    }
}

/// Runs the CLI on the given arguments (without the program name) and returns the exit code.
pub fn run_with(args: &[String]) -> i32 {
    let argv = std::iter::once("ncproj".to_string()).chain(args.iter().cloned());
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let field = match cli.field.as_deref().map(spec_file::parse_field_flag).transpose() {
        Ok(f) => f,
        Err(e) => {
            eprintln!("ncproj: {}", e);
            return 1;
        }
    };
    let mut ctx = Context { field, inputs: Vec::new(), warnings: Vec::new() };
    let start = Instant::now();
    let (status, result, error) = match dispatch(&cli, &mut ctx) {
        Ok(o) => (o.status, o.result, None),
        Err(e) => match failure_status(&e) {
            Some(s) => (s, Value::Null, Some(e.to_string())),
            None => {
                eprintln!("ncproj: {}", e);
                return 1;
            }
        },
    };
    let report = Report {
        command: echo(args),
        inputs: ctx.inputs,
        status,
        result,
        error,
        warnings: ctx.warnings,
        timing_ms: cli.timing.then(|| start.elapsed().as_millis()),
    };
    let text = report.to_json();
    if let Some(path) = &cli.json {
        if let Err(e) = std::fs::write(path, &text) {
            eprintln!("ncproj: cannot write {}: {}", path.display(), e);
            return 1;
        }
    }
    if !cli.quiet {
        print!("{}", render(&report.to_value()));
    }
    status.exit_code()
}

pub fn run() -> i32 {
    let args: Vec<String> = std::env::args().skip(1).collect();
    run_with(&args)
}
