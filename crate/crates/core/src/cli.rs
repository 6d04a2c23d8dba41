//! The `lab` command line.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value as Json};

use crate::catalan::{
    catalan, catalan_table, check_lemma_6_1, conjecture_report, multi_edge_closed_form,
    multi_edge_count_enum, multi_edge_gf_series, root_subcluster_conv_table, root_subcluster_table,
    HeightTable, DEFAULT_TREE_CAP,
};
use crate::error::{Error, Result};
use crate::oracle::{
    class_weight_audit, exact_moment, format_rational, parse_rational, MomentSpec, OracleLaw,
    OracleMethod,
};
use crate::report::{Format, ReportWriter, RunManifest, Value};
use crate::sim::{
    crossover_point, crossover_scan, edge_tail, estimate_moments, with_threads, CrossoverPlan,
    EnsembleConfig, EntryDist, Truncation,
};
use crate::verify::run_suite;
use crate::walks::{
    bts_and_cells, diagram_params, label_steps, max_exit_degree, strong_reduce,
    walk_from_trajectory, walk_graph, weak_reduce, EvenWalks, Trajectory, Walk, DEFAULT_WALK_CAP,
};

#[derive(Parser, Debug)]
#[command(name = "lab", version, about = "Walk combinatorics, exact moments and simulation of dilute Wigner matrices")]
struct Cli {
    /// Worker threads (falls back to LAB_THREADS, then all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Canonical walks, reductions and cells.
    #[command(subcommand)]
    Walk(WalkCmd),
    /// Exact tree and multi-edge counts.
    #[command(subcommand)]
    Count(CountCmd),
    /// Exact moments and the class-weight audit.
    #[command(subcommand)]
    Oracle(OracleCmd),
    /// Monte Carlo experiments.
    #[command(subcommand)]
    Sim(SimCmd),
    /// Invariant suites.
    Verify {
        /// walks, catalan, oracle, sim or all.
        #[arg(default_value = "all")]
        suite: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
enum WalkCmd {
    /// Canonicalizes a trajectory and prints its walk data.
    FromTrajectory {
        trajectory: String,
        #[arg(long)]
        n: Option<u32>,
        #[arg(long)]
        json: bool,
    },
    /// Prints the arrival cells of an even walk as JSON.
    Cells { walk: String },
    /// Lists all even walks of half-length s.
    Enumerate {
        #[arg(long)]
        s: usize,
        #[arg(long, default_value_t = 4)]
        k0: usize,
        #[arg(long, default_value_t = DEFAULT_WALK_CAP)]
        cap: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
enum CountCmd {
    /// t_s by formula and by recurrence.
    Catalan {
        #[arg(long)]
        s_max: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// N^(l)_s from the generating function.
    MultiEdge {
        #[arg(long)]
        l: usize,
        #[arg(long)]
        s_max: usize,
        #[arg(long)]
        check_closed_form: bool,
        /// Also count by running over all trees (s <= --cap).
        #[arg(long)]
        enumerate: bool,
        #[arg(long, default_value_t = DEFAULT_TREE_CAP)]
        cap: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Trees by number of root children, with the subcluster inequality.
    Subcluster {
        #[arg(long)]
        s_max: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Trees by exact height.
    Height {
        #[arg(long)]
        s_max: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Closed-form match grid for multi-edge counts.
    Conjecture {
        #[arg(long, default_value_t = 10)]
        l_max: usize,
        #[arg(long, default_value_t = 10)]
        s_max: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
enum MethodArg {
    Trajectory,
    Walk,
    Both,
}

impl From<MethodArg> for OracleMethod {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Trajectory => OracleMethod::Trajectory,
            MethodArg::Walk => OracleMethod::Walk,
            MethodArg::Both => OracleMethod::Both,
        }
    }
}

#[derive(Args, Debug, Clone)]
struct OracleArgs {
    /// JSON file with MomentSpec fields (n, rho, s, moments, truncation).
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    n: Option<u32>,
    /// Rational dilution, e.g. 2 or 1/2.
    #[arg(long)]
    rho: Option<String>,
    #[arg(long)]
    s: Option<usize>,
    #[arg(long, value_enum, default_value = "rademacher")]
    dist: LawArg,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum LawArg {
    Rademacher,
    Gaussian,
}

#[derive(Subcommand, Debug)]
enum OracleCmd {
    /// Exact E Tr H^{2s} as JSON.
    Moment {
        #[command(flatten)]
        spec: OracleArgs,
        #[arg(long, value_enum, default_value = "both")]
        method: MethodArg,
    },
    /// Per-class weights against the class bound, as CSV.
    Audit {
        #[command(flatten)]
        spec: OracleArgs,
        #[arg(long, default_value_t = 4)]
        k0: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum DistArg {
    Rademacher,
    Gaussian,
    StudentT,
}

#[derive(Args, Debug, Clone)]
struct EnsembleArgs {
    /// JSON file with EnsembleConfig fields.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, conflicts_with = "eps")]
    rho: Option<f64>,
    /// Sets rho = n^{2/3 (1 + eps)}.
    #[arg(long)]
    eps: Option<f64>,
    #[arg(long, value_enum)]
    dist: Option<DistArg>,
    /// Tail parameter of the Student-t law.
    #[arg(long)]
    phi: Option<f64>,
    #[arg(long)]
    v: Option<f64>,
    #[arg(long)]
    seed: Option<u64>,
    /// Truncate entries at n^δ, δ = (3/(6+φ) + ε)/6, with this φ.
    #[arg(long)]
    trunc_phi: Option<f64>,
    #[arg(long, default_value_t = 0.0)]
    trunc_eps: f64,
    #[arg(long, default_value_t = 1000)]
    samples: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum SimCmd {
    /// Sample means of Tr H^{2s}.
    Moments {
        #[command(flatten)]
        ens: EnsembleArgs,
        /// Comma-separated list of s.
        #[arg(long, value_delimiter = ',', conflicts_with = "chi")]
        s: Vec<u32>,
        /// Sets s = floor(chi n^{2/3}).
        #[arg(long)]
        chi: Option<f64>,
    },
    /// Tail of λ_max at 2v(1 + x n^{-2/3}).
    Edge {
        #[command(flatten)]
        ens: EnsembleArgs,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, default_value = "-5,-3,-2,-1,0,1,2,3,5,10")]
        x: Vec<f64>,
    },
    /// Rademacher vs Gaussian moments across dilution exponents.
    Crossover {
        #[arg(long, value_delimiter = ',', required = true)]
        n: Vec<usize>,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, default_value = "0,0.25,0.5")]
        eps: Vec<f64>,
        #[arg(long, default_value_t = 1.0)]
        chi: f64,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Parses `argv` (including the program name), runs the command and returns the exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let threads = cli.threads.or_else(|| std::env::var("LAB_THREADS").ok()?.parse().ok());
    let out = with_threads(threads, move || dispatch(cli.command)).and_then(|r| r);
    match out {
        Ok(code) => code,
        Err(e) => {
            eprintln!("lab: {e}");
            e.exit_code()
        }
    }
}

fn dispatch(cmd: Command) -> Result<i32> {
    match cmd {
        Command::Walk(c) => walk_cmd(c),
        Command::Count(c) => count_cmd(c),
        Command::Oracle(c) => oracle_cmd(c),
        Command::Sim(c) => sim_cmd(c),
        Command::Verify { suite, out } => verify_cmd(&suite, out.as_deref()),
    }
}

fn writer(out: Option<&Path>, columns: &[&str], manifest: &mut RunManifest) -> Result<ReportWriter> {
    match out {
        Some(p) => {
            manifest.outputs.push(p.to_path_buf());
            ReportWriter::create(p, Format::from_path(p), columns, Some(manifest))
        }
        None => ReportWriter::stdout(Format::Csv, columns, None),
    }
}

fn read_json(path: &Path) -> Result<Json> {
    let text = fs::read_to_string(path)?;
    serde_json::from_str(&text).map_err(|e| Error::Config(format!("{}: {e}", path.display())))
}

fn print_json(value: &Json) -> Result<()> {
    let mut out = std::io::stdout().lock();
    writeln!(out, "{}", serde_json::to_string_pretty(value)?)?;
    Ok(())
}

fn walk_cmd(cmd: WalkCmd) -> Result<i32> {
    match cmd {
        WalkCmd::FromTrajectory { trajectory, n, json } => {
            let t = Trajectory::parse(&trajectory, n)?;
            let w = walk_from_trajectory(&t);
            let labels = label_steps(&w);
            let (beta, d) = max_exit_degree(&w);
            let even = labels.is_even;
            let strong = even.then(|| strong_reduce(&w));
            let weak = even.then(|| weak_reduce(&w));
            let theta = labels.max_height();
            if json {
                print_json(&json!({
                    "walk": w.to_string(),
                    "even": even,
                    "theta_star": theta,
                    "D": d,
                    "breve_beta": beta,
                    "strong": strong.as_ref().map(|r| r.to_string()),
                    "strong_kept": strong.as_ref().map(|r| r.kept.clone()),
                    "weak": weak.as_ref().map(|r| r.to_string()),
                    "weak_equals_strong": even.then(|| strong == weak),
                }))?;
            } else {
                println!("walk: {w}");
                println!("even: {even}");
                println!("theta*: {theta}");
                println!("D: {d} at letter {beta}");
                if let (Some(s), Some(wk)) = (&strong, &weak) {
                    println!("strongly reduced: {s}");
                    println!("weakly reduced: {wk}");
                    println!("weak = strong: {}", s == wk);
                }
            }
            Ok(0)
        }
        WalkCmd::Cells { walk } => {
            let w = Walk::parse(&walk)?;
            let r = bts_and_cells(&w)?;
            let checks: serde_json::Map<String, Json> =
                r.checks(&w).into_iter().map(|(k, v)| (k.to_string(), json!(v))).collect();
            print_json(&json!({"walk": w.to_string(), "cells": r, "checks": checks}))?;
            Ok(0)
        }
        WalkCmd::Enumerate { s, k0, cap, out } => {
            let mut m = RunManifest::new("walk enumerate", json!({"s": s, "k0": k0, "cap": cap}), None);
            let cols = [
                "walk", "s", "vertices", "theta_star", "breve_beta", "D", "sigma", "mu1", "mu2", "mu3",
                "u2", "u3", "nu_norm", "strong_reduced", "weak_reduced",
            ];
            let mut w = writer(out.as_deref(), &cols, &mut m)?;
            for walk in EvenWalks::with_cap(s, cap)? {
                let p = diagram_params(&walk, k0)?;
                let (beta, d) = max_exit_degree(&walk);
                w.write(vec![
                    walk.to_string().into(),
                    s.into(),
                    walk.vertex_count().into(),
                    label_steps(&walk).max_height().into(),
                    beta.into(),
                    d.into(),
                    walk_graph(&walk).sigma().into(),
                    p.mu1.into(),
                    p.mu2().into(),
                    p.mu3().into(),
                    p.u2.into(),
                    p.u3.into(),
                    p.nu_norm().into(),
                    strong_reduce(&walk).to_string().into(),
                    weak_reduce(&walk).to_string().into(),
                ])?;
            }
            w.finish()?;
            Ok(0)
        }
    }
}

fn count_cmd(cmd: CountCmd) -> Result<i32> {
    match cmd {
        CountCmd::Catalan { s_max, out } => {
            let mut m = RunManifest::new("count catalan", json!({"s_max": s_max}), None);
            let mut w = writer(out.as_deref(), &["s", "value", "closed_form", "match"], &mut m)?;
            for (s, rec) in catalan_table(s_max).into_iter().enumerate() {
                let closed = catalan(s);
                let ok = closed == rec;
                w.write(vec![s.into(), rec.into(), closed.into(), ok.into()])?;
            }
            w.finish()?;
            Ok(0)
        }
        CountCmd::MultiEdge { l, s_max, check_closed_form, enumerate, cap, out } => {
            if l == 0 {
                return Err(Error::InvalidParameter("l must be at least 1".into()));
            }
            let cfg = json!({"l": l, "s_max": s_max, "check_closed_form": check_closed_form, "enumerate": enumerate});
            let mut m = RunManifest::new("count multi-edge", cfg, None);
            let mut cols = vec!["s", "l", "value", "closed_form", "match"];
            if enumerate {
                cols.push("enumerated");
            }
            let series = multi_edge_gf_series(l, s_max);
            let mut w = writer(out.as_deref(), &cols, &mut m)?;
            let mut all = true;
            for s in l..=s_max {
                let v = series.coeffs()[s].clone();
                let closed = check_closed_form.then(|| multi_edge_closed_form(l, s));
                let ok = closed.as_ref().map(|c| *c == v);
                all &= ok.unwrap_or(true);
                let mut row = vec![s.into(), l.into(), Value::from(&v), closed.into(), ok.into()];
                if enumerate {
                    let e = if s <= cap { Some(multi_edge_count_enum(l, s, cap)?[l - 1].clone()) } else { None };
                    row.push(e.into());
                }
                w.write(row)?;
            }
            w.finish()?;
            Ok(if all { 0 } else { 1 })
        }
        CountCmd::Subcluster { s_max, out } => {
            let mut m = RunManifest::new("count subcluster", json!({"s_max": s_max}), None);
            let cols = ["s", "d", "value", "closed_form", "match", "lemma_lhs", "lemma_rhs", "lemma_holds", "boundary"];
            let conv = root_subcluster_conv_table(s_max);
            let rec = root_subcluster_table(s_max);
            let lemma = check_lemma_6_1(s_max);
            let lookup = |s: usize, d: usize| {
                lemma.violations.iter().chain(&lemma.boundary).any(|r| r.s == s && r.d == d && !r.holds)
            };
            let t = catalan_table(s_max);
            let mut w = writer(out.as_deref(), &cols, &mut m)?;
            let (mut p3, mut p4) = (BigInt::from(1), BigInt::from(1));
            let mut pow = vec![(p3.clone(), p4.clone())];
            for _ in 0..s_max {
                p3 *= 3;
                p4 *= 4;
                pow.push((p3.clone(), p4.clone()));
            }
            for s in 1..=s_max {
                for d in 1..=s {
                    let lhs = &pow[d].1 * &rec[s][d];
                    let rhs = &pow[d].0 * &t[s];
                    w.write(vec![
                        s.into(),
                        d.into(),
                        (&rec[s][d]).into(),
                        (&conv[s][d]).into(),
                        (conv[s][d] == rec[s][d]).into(),
                        lhs.into(),
                        rhs.into(),
                        (!lookup(s, d)).into(),
                        (d <= 2).into(),
                    ])?;
                }
            }
            w.finish()?;
            Ok(if lemma.holds() { 0 } else { 1 })
        }
        CountCmd::Height { s_max, out } => {
            let mut m = RunManifest::new("count height", json!({"s_max": s_max}), None);
            let table = HeightTable::new(s_max);
            let mut w = writer(out.as_deref(), &["s", "u", "value", "at_most"], &mut m)?;
            for s in 0..=s_max {
                for u in 0..=s {
                    w.write(vec![s.into(), u.into(), table.exactly(u, s).into(), table.at_most(u, s).into()])?;
                }
            }
            w.finish()?;
            Ok(0)
        }
        CountCmd::Conjecture { l_max, s_max, out } => {
            let mut m = RunManifest::new("count conjecture", json!({"l_max": l_max, "s_max": s_max}), None);
            let r = conjecture_report(l_max, s_max);
            let cols = ["s", "l", "value", "closed_form", "match", "within_power_bound", "within_linear_bound"];
            let mut w = writer(out.as_deref(), &cols, &mut m)?;
            for row in &r.rows {
                w.write(vec![
                    row.s.into(),
                    row.l.into(),
                    row.value.clone().into(),
                    row.closed_form.clone().into(),
                    row.matches.into(),
                    row.within_power_bound.into(),
                    row.within_linear_bound.into(),
                ])?;
            }
            w.finish()?;
            eprintln!(
                "{} rows, {} mismatches, power bound {}",
                r.rows.len(),
                r.mismatches().count(),
                if r.power_bound_holds() { "holds" } else { "FAILS" }
            );
            Ok(if r.power_bound_holds() { 0 } else { 1 })
        }
    }
}

/// Overlays command-line flags on an optional JSON config file and builds the spec.
fn moment_spec(args: &OracleArgs) -> Result<MomentSpec> {
    let law = match args.dist {
        LawArg::Rademacher => OracleLaw::Rademacher,
        LawArg::Gaussian => OracleLaw::Gaussian,
    };
    if let Some(path) = &args.config {
        let mut spec: MomentSpec = serde_json::from_value(read_json(path)?)
            .map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
        if let Some(n) = args.n {
            spec.n = n;
        }
        if let Some(r) = &args.rho {
            spec.rho = parse_rational(r)?;
        }
        if let Some(s) = args.s {
            spec.s = s;
        }
        spec.validate()?;
        return Ok(spec);
    }
    let missing = |f: &str| Error::Config(format!("--{f} is required without --config"));
    let n = args.n.ok_or_else(|| missing("n"))?;
    let s = args.s.ok_or_else(|| missing("s"))?;
    let rho = parse_rational(args.rho.as_deref().ok_or_else(|| missing("rho"))?)?;
    MomentSpec::with_law(n, rho, s, law)
}

fn oracle_cmd(cmd: OracleCmd) -> Result<i32> {
    match cmd {
        OracleCmd::Moment { spec, method } => {
            let spec = moment_spec(&spec)?;
            let r = exact_moment(&spec, method.into())?;
            print_json(&json!({
                "n": spec.n,
                "rho": format_rational(&spec.rho),
                "s": spec.s,
                "method": method,
                "value": format_rational(&r.value),
                "value_num": r.value.numer().to_string(),
                "value_den": r.value.denom().to_string(),
                "value_f64": r.value.to_f64(),
                "method_agreement": r.agreement(),
            }))?;
            Ok(if r.agreement() == Some(false) { 1 } else { 0 })
        }
        OracleCmd::Audit { spec, k0, out } => {
            let spec = moment_spec(&spec)?;
            let cfg = serde_json::to_value(&spec)?;
            let mut m = RunManifest::new("oracle audit", json!({"spec": cfg, "k0": k0}), None);
            let r = class_weight_audit(&spec, k0)?;
            let cols = [
                "u", "D", "mu1", "r", "p", "q", "mu2_pp", "u2", "mu3_p", "mu3_pp", "u3", "nu_bar", "sigma",
                "walks", "vertices", "weight", "weight_f64", "bound", "within_bound",
            ];
            let mut w = writer(out.as_deref(), &cols, &mut m)?;
            for row in &r.rows {
                let p = &row.params;
                let nu: Vec<String> = p.nu_bar.iter().map(|(k, v)| format!("{k}:{v}")).collect();
                w.write(vec![
                    row.u.into(),
                    row.d.into(),
                    p.mu1.into(),
                    p.r.into(),
                    p.p.into(),
                    p.q.into(),
                    p.mu2_pp.into(),
                    p.u2.into(),
                    p.mu3_p.into(),
                    p.mu3_pp.into(),
                    p.u3.into(),
                    nu.join(";").into(),
                    p.sigma.into(),
                    row.walks.into(),
                    row.vertices.into(),
                    row.weight.clone().into(),
                    row.weight_f64.into(),
                    row.bound.into(),
                    row.within_bound.into(),
                ])?;
            }
            w.finish()?;
            eprintln!(
                "{} classes, total {}, tree share {:.3}, {} violations",
                r.rows.len(),
                r.total,
                r.tree_share,
                r.violations().count()
            );
            Ok(if r.all_within() { 0 } else { 1 })
        }
    }
}

fn ensemble(args: &EnsembleArgs) -> Result<EnsembleConfig> {
    let mut cfg: Json = match &args.config {
        Some(p) => read_json(p)?,
        None => json!({}),
    };
    let obj = cfg
        .as_object_mut()
        .ok_or_else(|| Error::Config("config file must hold a JSON object".into()))?;
    if let Some(n) = args.n {
        obj.insert("n".into(), json!(n));
    }
    let n = obj.get("n").and_then(Json::as_u64).ok_or_else(|| Error::Config("n is required".into()))?;
    if let Some(eps) = args.eps {
        obj.insert("rho".into(), json!(crossover_point(n as usize, eps, 0.0).0));
    }
    if let Some(rho) = args.rho {
        obj.insert("rho".into(), json!(rho));
    }
    if let Some(d) = args.dist {
        let dist = match d {
            DistArg::Rademacher => EntryDist::Rademacher,
            DistArg::Gaussian => EntryDist::Gaussian,
            DistArg::StudentT => EntryDist::StudentT { phi: args.phi.unwrap_or(0.0) },
        };
        obj.insert("dist".into(), serde_json::to_value(dist)?);
    }
    if let Some(v) = args.v {
        obj.insert("v".into(), json!(v));
    }
    if let Some(seed) = args.seed {
        obj.insert("seed".into(), json!(seed));
    }
    if let Some(phi) = args.trunc_phi {
        obj.insert("truncation".into(), serde_json::to_value(Truncation { phi, eps: args.trunc_eps })?);
    }
    if !obj.contains_key("rho") {
        return Err(Error::Config("one of --rho or --eps is required".into()));
    }
    let cfg: EnsembleConfig = serde_json::from_value(cfg).map_err(|e| Error::Config(e.to_string()))?;
    cfg.validate()?;
    Ok(cfg)
}

fn sim_cmd(cmd: SimCmd) -> Result<i32> {
    match cmd {
        SimCmd::Moments { ens, s, chi } => {
            let cfg = ensemble(&ens)?;
            let s_list = match chi {
                Some(chi) => vec![crossover_point(cfg.n, 0.0, chi).1],
                None if s.is_empty() => return Err(Error::Config("give --s or --chi".into())),
                None => s,
            };
            let manifest_cfg = json!({"ensemble": cfg, "s": s_list, "samples": ens.samples});
            let mut m = RunManifest::new("sim moments", manifest_cfg, Some(cfg.seed));
            let stats = estimate_moments(&cfg, &s_list, ens.samples)?;
            let cols = [
                "n", "rho", "dist", "s", "mean", "stderr", "n_samples", "min", "max", "mean_over_n", "semicircle",
                "discarded",
            ];
            let mut w = writer(ens.out.as_deref(), &cols, &mut m)?;
            for (s, st) in s_list.iter().zip(&stats) {
                let semi = catalan(*s as usize).to_f64().unwrap_or(f64::INFINITY) * cfg.v.powi(2 * *s as i32);
                w.write(vec![
                    cfg.n.into(),
                    cfg.rho.into(),
                    cfg.dist.name().into(),
                    (*s).into(),
                    st.mean.into(),
                    st.stderr.into(),
                    st.n_samples.into(),
                    st.min.into(),
                    st.max.into(),
                    (st.mean / cfg.n as f64).into(),
                    semi.into(),
                    st.discarded.into(),
                ])?;
            }
            w.finish()?;
            Ok(0)
        }
        SimCmd::Edge { ens, x } => {
            let cfg = ensemble(&ens)?;
            let mut m = RunManifest::new("sim edge", json!({"ensemble": cfg, "x": x, "samples": ens.samples}), Some(cfg.seed));
            let c = edge_tail(&cfg, &x, ens.samples)?;
            let mut w = writer(ens.out.as_deref(), &["x", "threshold", "exceed", "bin", "tail_prob", "stderr"], &mut m)?;
            for k in 0..c.x_grid.len() {
                w.write(vec![
                    c.x_grid[k].into(),
                    c.thresholds[k].into(),
                    c.exceed[k].into(),
                    c.bins[k].into(),
                    c.tail_prob[k].into(),
                    c.stderr[k].into(),
                ])?;
            }
            w.finish()?;
            Ok(0)
        }
        SimCmd::Crossover { n, eps, chi, samples, seed, out } => {
            let plan = CrossoverPlan::new(n, eps, chi, samples, seed);
            let mut m = RunManifest::new("sim crossover", serde_json::to_value(&plan)?, Some(seed));
            let rows = crossover_scan(&plan)?;
            let cols = [
                "n", "eps", "rho", "s", "chi", "zeta", "mean_rademacher", "stderr_rademacher", "mean_gaussian",
                "stderr_gaussian", "diff", "diff_z", "thm71_rhs", "thm71_ratio", "thm71_holds", "v4_ordering",
            ];
            let mut w = writer(out.as_deref(), &cols, &mut m)?;
            for r in &rows {
                w.write(vec![
                    r.n.into(),
                    r.eps.into(),
                    r.rho.into(),
                    r.s.into(),
                    r.chi.into(),
                    r.zeta.into(),
                    r.rademacher.mean.into(),
                    r.rademacher.stderr.into(),
                    r.gaussian.mean.into(),
                    r.gaussian.stderr.into(),
                    r.diff.into(),
                    r.diff_z.into(),
                    r.thm71_rhs.into(),
                    r.thm71_ratio.into(),
                    r.thm71_holds(0.1).into(),
                    r.v4_ordering_holds().into(),
                ])?;
            }
            w.finish()?;
            Ok(0)
        }
    }
}

fn verify_cmd(suite: &str, out: Option<&Path>) -> Result<i32> {
    let report = run_suite(suite)?;
    for c in &report.checks {
        let tag = match c.status {
            crate::verify::Status::Pass => "pass",
            crate::verify::Status::Fail => "FAIL",
            crate::verify::Status::Report => "report",
        };
        println!("{tag:>6}  {:<40} {:>7.2}s  {}", c.id, c.seconds, c.detail);
    }
    println!(
        "{}: {} passed, {} failed, {} report-only",
        report.suite, report.passed, report.failed, report.reported
    );
    if let Some(p) = out {
        let mut m = RunManifest::new("verify", json!({"suite": suite}), None);
        m.outputs.push(p.to_path_buf());
        m.finish();
        let body = json!({"manifest": m, "report": report});
        fs::write(p, serde_json::to_string_pretty(&body)?)?;
    }
    Ok(report.exit_code())
}
