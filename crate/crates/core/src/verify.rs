//! Invariant suites run by `lab verify`.

use std::collections::HashMap;
use std::time::Instant;

use log::info;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::catalan::{
    b_s, catalan, catalan_table, check_lemma_6_1, conjecture_report, height_distribution_brute,
    multi_edge_closed_form, multi_edge_count_enum, multi_edge_count_gf, multi_edge_gf_series,
    root_subcluster_conv_table, root_subcluster_table, HeightTable,
};
use crate::error::{Error, Result};
use crate::oracle::{
    class_weight_audit, exact_moment, format_rational, moment_by_trajectories, moment_by_walks,
    theorem_7_1_rhs, walk_weight, MomentSpec, OracleLaw, OracleMethod, DEFAULT_TRAJECTORY_BUDGET,
};
use crate::sim::{
    crossover_scan, edge_tail, estimate_moments, eigenvalues, frobenius_sq, sample_matrix, trace_power,
    CrossoverPlan, EnsembleConfig, EntryDist,
};
use crate::walks::{
    bts_and_cells, census, class_size, dyck_from_tree, enumerate_even_walks, label_steps,
    max_exit_degree, strong_reduce, tree_from_dyck, walk_from_trajectory, walk_graph, weak_reduce,
    DyckPath, Trajectory, Walk,
};

pub const SUITES: [&str; 4] = ["walks", "catalan", "oracle", "sim"];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// Finite-size evidence for an asymptotic claim; never affects the exit code.
    Report,
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub id: String,
    pub status: Status,
    pub detail: String,
    pub seconds: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub suite: String,
    pub checks: Vec<Check>,
    pub passed: usize,
    pub failed: usize,
    pub reported: usize,
}

impl VerifyReport {
    fn new(suite: &str, checks: Vec<Check>) -> Self {
        let count = |s| checks.iter().filter(|c| c.status == s).count();
        VerifyReport {
            suite: suite.to_string(),
            passed: count(Status::Pass),
            failed: count(Status::Fail),
            reported: count(Status::Report),
            checks,
        }
    }

    pub fn ok(&self) -> bool {
        self.failed == 0
    }

    pub fn exit_code(&self) -> i32 {
        if self.ok() {
            0
        } else {
            1
        }
    }

    pub fn get(&self, id: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.id == id)
    }
}

type Outcome = Result<(Status, String)>;

fn pass_if(ok: bool, detail: impl Into<String>) -> Outcome {
    Ok((if ok { Status::Pass } else { Status::Fail }, detail.into()))
}

fn run_check(id: &str, f: impl FnOnce() -> Outcome) -> Check {
    let start = Instant::now();
    let (status, detail) = f().unwrap_or_else(|e| (Status::Fail, format!("error: {e}")));
    let seconds = start.elapsed().as_secs_f64();
    info!("{id}: {status:?} ({seconds:.2}s) {detail}");
    Check {
        id: id.to_string(),
        status,
        detail,
        seconds,
    }
}

fn first_failure<T: std::fmt::Display>(items: impl IntoIterator<Item = (T, bool)>) -> Option<String> {
    items.into_iter().find(|(_, ok)| !ok).map(|(x, _)| x.to_string())
}

/// Runs one suite by name, or all of them for `"all"`.
pub fn run_suite(name: &str) -> Result<VerifyReport> {
    let checks = match name {
        "walks" => walks_checks(),
        "catalan" => catalan_checks(),
        "oracle" => oracle_checks(),
        "sim" => sim_checks(),
        "all" => {
            let mut all = walks_checks();
            all.extend(catalan_checks());
            all.extend(oracle_checks());
            all.extend(sim_checks());
            all
        }
        other => {
            return Err(Error::InvalidParameter(format!(
                "unknown suite {other:?}; expected one of walks, catalan, oracle, sim, all"
            )))
        }
    };
    Ok(VerifyReport::new(name, checks))
}

/// Every closed trajectory of `2s` steps over `n` labels, in lexicographic order.
pub fn all_trajectories(s: usize, n: u32) -> impl Iterator<Item = Trajectory> {
    let len = 2 * s;
    let total = (n as u64).pow(len as u32);
    (0..total).map(move |mut code| {
        let mut steps = vec![0u32; len];
        for x in steps.iter_mut().rev() {
            *x = (code % n as u64) as u32 + 1;
            code /= n as u64;
        }
        Trajectory::new(steps, n).expect("labels in range")
    })
}

/// Groups all trajectories by canonical walk and compares each even, loop-free
/// group with its class size. Returns `(groups_match, even_total, rest)`.
pub fn trajectory_partition(s: usize, n: u32) -> Result<(bool, BigInt, u64)> {
    let mut groups: HashMap<Walk, u64> = HashMap::new();
    for t in all_trajectories(s, n) {
        *groups.entry(walk_from_trajectory(&t)).or_default() += 1;
    }
    let mut even = BigInt::zero();
    let mut rest = 0u64;
    let mut matches = true;
    for (w, count) in &groups {
        if !w.has_loops() && label_steps(w).is_even {
            if class_size(w, n as u64) != BigInt::from(*count) {
                matches = false;
            }
            even += *count;
        } else {
            rest += count;
        }
    }
    let enumerated: BigInt = enumerate_even_walks(s)?.iter().map(|w| class_size(w, n as u64)).sum();
    Ok((matches && enumerated == even, even, rest))
}

fn walks_upto(s_max: usize) -> Result<Vec<Walk>> {
    let mut out = Vec::new();
    for s in 1..=s_max {
        out.extend(enumerate_even_walks(s)?);
    }
    Ok(out)
}

fn pair_counts_even(letters: &[u32]) -> bool {
    let mut counts: HashMap<(u32, u32), usize> = HashMap::new();
    for w in letters.windows(2) {
        let key = (w[0].min(w[1]), w[0].max(w[1]));
        *counts.entry(key).or_default() += 1;
    }
    counts.values().all(|c| c % 2 == 0)
}

pub const REFERENCE_TRAJECTORY: &str = "5,2,7,9,7,1,2,7,9,7,2,7,2,1,7,2,5";
pub const REFERENCE_WALK: &str = "1,2,3,4,3,5,2,3,4,3,2,3,2,5,3,2,1";
pub const REFERENCE_REDUCED: &str = "1,2,3,5,2,3,2,4,3,2,1";

fn walks_checks() -> Vec<Check> {
    let walks5 = walks_upto(5);
    let walks = || walks5.as_ref().map_err(|e| Error::InvalidParameter(e.to_string()));
    vec![
        run_check("walks.reference_example", || {
            let t = Trajectory::parse(REFERENCE_TRAJECTORY, None)?;
            let w = walk_from_trajectory(&t);
            let labels = label_steps(&w);
            let (beta, d) = max_exit_degree(&w);
            let strong = strong_reduce(&w);
            let ok = w.to_string() == REFERENCE_WALK
                && labels.max_height() == 4
                && (beta, d) == (3, 5)
                && strong.kept == vec![1, 2, 5, 6, 7, 12, 13, 14, 15, 16]
                && weak_reduce(&w) == strong;
            pass_if(ok, format!("walk {w}, theta* = {}, D = {d} at letter {beta}, reduced {strong}", labels.max_height()))
        }),
        run_check("walks.reference_reduced_literal", || {
            let w = Walk::parse(REFERENCE_WALK)?;
            let got = strong_reduce(&w).to_string();
            // the printed letters name an edge the walk never uses; kept steps are checked above
            Ok((
                if got == REFERENCE_REDUCED { Status::Pass } else { Status::Report },
                format!("replayed {got}, printed {REFERENCE_REDUCED}"),
            ))
        }),
        run_check("walks.canonical_idempotence", || {
            let mut count = 0;
            for (s, n) in [(1, 5), (2, 5), (3, 4)] {
                for t in all_trajectories(s, n) {
                    let w = walk_from_trajectory(&t);
                    if walk_from_trajectory(&w.as_trajectory()) != w {
                        return pass_if(false, format!("not idempotent on {t}"));
                    }
                    count += 1;
                }
            }
            pass_if(true, format!("{count} trajectories"))
        }),
        run_check("walks.partition", || {
            for s in 1..=3 {
                for n in 1..=7u32 {
                    let (ok, even, rest) = trajectory_partition(s, n)?;
                    let total = BigInt::from(n).pow(2 * s as u32);
                    if !ok || &even + rest != total {
                        return pass_if(false, format!("s = {s}, n = {n}: even {even}, rest {rest}"));
                    }
                }
            }
            pass_if(true, "s <= 3, n <= 7")
        }),
        run_check("walks.marked_count_and_dyck", || {
            let ws = walks()?;
            let bad = first_failure(ws.iter().map(|w| {
                let l = label_steps(w);
                (w, l.marked_count() == w.half_len() && l.dyck.is_some())
            }));
            pass_if(bad.is_none(), bad.unwrap_or(format!("{} walks, s <= 5", ws.len())))
        }),
        run_check("walks.dyck_tree_bijection", || {
            for s in 0..=8 {
                let paths = DyckPath::all(s);
                if BigInt::from(paths.len()) != catalan(s) {
                    return pass_if(false, format!("{} paths at s = {s}", paths.len()));
                }
                if let Some(p) = paths.iter().find(|p| dyck_from_tree(&tree_from_dyck(p)) != **p) {
                    return pass_if(false, format!("round trip fails on {:?}", p.steps()));
                }
            }
            pass_if(true, "s <= 8, 1430 trees at s = 8")
        }),
        run_check("walks.vertex_count_identity", || {
            let ws = walks()?;
            let bad = first_failure(ws.iter().map(|w| {
                let g = walk_graph(w);
                (w, w.vertex_count() + g.sigma() == w.half_len() + 1)
            }));
            pass_if(bad.is_none(), bad.unwrap_or("|V| = s - sigma + 1 on all walks, s <= 5".into()))
        }),
        run_check("walks.census_identity", || {
            let ws = walks()?;
            for k0 in [2, 4, 12] {
                for w in ws {
                    let c = census(w, k0)?;
                    if c.params.edge_total() != w.half_len() {
                        return pass_if(false, format!("{w} at k0 = {k0}"));
                    }
                }
            }
            pass_if(true, "k0 in {2, 4, 12}, s <= 5")
        }),
        run_check("walks.reduction_soundness", || {
            let ws = walks()?;
            let bad = first_failure(ws.iter().map(|w| {
                let r = strong_reduce(w);
                let tree = w.vertex_count() == w.half_len() + 1;
                let ok = pair_counts_even(&r.letters)
                    && r.letters.first() == r.letters.last()
                    && r.kept.len() + 2 * r.removals == w.len_steps()
                    && (!tree || r.is_empty());
                (w, ok)
            }));
            pass_if(bad.is_none(), bad.unwrap_or("even, closed, length drops by 2 per removal".into()))
        }),
        run_check("walks.exit_arrival_balance", || {
            let ws = walks()?;
            for w in ws {
                let r = bts_and_cells(w)?;
                if let Some((name, _)) = r.checks(w).into_iter().find(|(_, ok)| !ok) {
                    return pass_if(false, format!("{name} fails on {w}"));
                }
            }
            pass_if(true, "all cell checks hold, s <= 5")
        }),
    ]
}

fn catalan_checks() -> Vec<Check> {
    vec![
        run_check("catalan.formula_vs_recurrence", || {
            let table = catalan_table(2000);
            let bad = first_failure((0..=2000).map(|s| (s, catalan(s) == table[s])));
            pass_if(bad.is_none(), bad.map_or("0 <= s <= 2000".into(), |s| format!("s = {s}")))
        }),
        run_check("catalan.subcluster_conv_vs_recurrence", || {
            let s_max = 500;
            let conv = root_subcluster_conv_table(s_max);
            let rec = root_subcluster_table(s_max);
            let t = catalan_table(s_max);
            for s in 1..=s_max {
                for d in 1..=s {
                    if conv[s][d] != rec[s][d] || rec[s][d] > t[s - 1] {
                        return pass_if(false, format!("s = {s}, d = {d}"));
                    }
                }
            }
            pass_if(true, "1 <= d <= s <= 500, and t~_s(d) <= t_{s-1}")
        }),
        run_check("catalan.multi_edge_enum_vs_gf", || {
            for s in 1..=12 {
                let e = multi_edge_count_enum(5, s, 12)?;
                for l in 1..=5.min(s) {
                    if e[l - 1] != multi_edge_count_gf(l, s) {
                        return pass_if(false, format!("l = {l}, s = {s}"));
                    }
                }
            }
            pass_if(true, "1 <= l <= 5, l <= s <= 12")
        }),
        run_check("catalan.multi_edge_closed_forms", || {
            let t = catalan_table(200);
            for l in 1..=3 {
                let series = multi_edge_gf_series(l, 200);
                for s in l..=200 {
                    let v = &series.coeffs()[s];
                    let want = if l == 1 { BigInt::from(s) * &t[s] } else { multi_edge_closed_form(l, s) };
                    if *v != want {
                        return pass_if(false, format!("l = {l}, s = {s}"));
                    }
                }
            }
            pass_if(true, "l in {1, 2, 3}, s <= 200")
        }),
        run_check("catalan.multi_edge_lower_bound", || {
            let t = catalan_table(300);
            let series = multi_edge_gf_series(2, 300);
            let two = BigInt::from(2);
            let bad = first_failure((4..=300).map(|s| (s, &two * &series.coeffs()[s] >= BigInt::from(s) * &t[s])));
            let eq4 = &series.coeffs()[4] * &two == BigInt::from(4) * &t[4];
            pass_if(bad.is_none() && eq4, format!("2 N2_s >= s t_s on 4..300, N2_4 = {}", series.coeffs()[4]))
        }),
        run_check("catalan.subcluster_bound", || {
            let r = check_lemma_6_1(300);
            pass_if(r.holds() && r.below_previous_catalan, format!("{} pairs, {} violations", r.checked, r.violations.len()))
        }),
        run_check("catalan.subcluster_bound_boundary", || {
            let r = check_lemma_6_1(300);
            let bad: Vec<String> = r.boundary.iter().filter(|b| !b.holds).map(|b| format!("({}, {})", b.s, b.d)).collect();
            Ok((Status::Report, format!("d <= 2 violations at (s, d) = {}", if bad.is_empty() { "none".into() } else { bad.join(" ") })))
        }),
        run_check("catalan.conjecture_grid", || {
            let r = conjecture_report(10, 10);
            let mism = r.mismatches().count();
            Ok((Status::Report, format!("{} rows, {mism} mismatches with (2s)!/((s-l)!(s+l)!)", r.rows.len())))
        }),
        run_check("catalan.power_bound", || {
            let r = conjecture_report(10, 10);
            pass_if(r.power_bound_holds(), "N^(l)_s <= 2^l s t_s on l, s <= 10")
        }),
        run_check("catalan.height_marginals", || {
            let s_max = 500;
            let table = HeightTable::new(s_max);
            let t = catalan_table(s_max);
            for s in 0..=s_max {
                let sum: BigInt = (0..=s).map(|u| table.exactly(u, s)).sum();
                if sum != t[s] {
                    return pass_if(false, format!("marginal at s = {s}"));
                }
            }
            for s in 0..=10 {
                let brute = height_distribution_brute(s);
                if (0..brute.len()).any(|u| brute[u] != table.exactly(u, s)) {
                    return pass_if(false, format!("brute mismatch at s = {s}"));
                }
            }
            pass_if(true, "sum over u equals t_s for s <= 500; brute agrees for s <= 10")
        }),
        run_check("catalan.b_s_monotone", || {
            let table = HeightTable::new(60);
            for s in [1, 5, 20, 60] {
                let vals: Vec<f64> = (0..=40).map(|k| b_s(&table, k as f64 * 0.25, s)).collect();
                if vals.windows(2).any(|w| w[1] < w[0]) {
                    return pass_if(false, format!("s = {s}"));
                }
            }
            pass_if(true, "x in [0, 10], s in {1, 5, 20, 60}")
        }),
    ]
}

fn rat(a: i64, b: i64) -> BigRational {
    BigRational::new(a.into(), b.into())
}

fn rademacher(n: u32, rho: BigRational, s: usize) -> Result<MomentSpec> {
    MomentSpec::with_law(n, rho, s, OracleLaw::Rademacher)
}

fn oracle_checks() -> Vec<Check> {
    vec![
        run_check("oracle.closed_forms", || {
            let v2 = rat(1, 4);
            for n in 2..=6u32 {
                let spec = rademacher(n, BigRational::from_integer(n.into()), 1)?;
                if exact_moment(&spec, OracleMethod::Both)?.value != &v2 * BigRational::from_integer((n - 1).into()) {
                    return pass_if(false, format!("s = 1, n = {n}"));
                }
            }
            for rho in [rat(1, 2), rat(1, 1), rat(2, 1)] {
                for s in 1..=4 {
                    let spec = rademacher(2, rho.clone(), s)?;
                    let want = spec.v(2 * s)? * num_traits::pow(rho.recip(), s - 1);
                    if exact_moment(&spec, OracleMethod::Both)?.value != want {
                        return pass_if(false, format!("n = 2, s = {s}, rho = {}", format_rational(&rho)));
                    }
                }
            }
            pass_if(true, "(n-1)V2 at s = 1; V_2s rho^(1-s) at n = 2")
        }),
        run_check("oracle.dual_method", || {
            let mut points: Vec<(u32, usize)> = (1..=6).flat_map(|n| (1..=3).map(move |s| (n, s))).collect();
            points.push((4, 4));
            for (n, s) in points {
                for law in [OracleLaw::Rademacher, OracleLaw::Gaussian] {
                    let spec = MomentSpec::with_law(n, rat(1, 1), s, law)?;
                    let a = moment_by_trajectories(&spec, DEFAULT_TRAJECTORY_BUDGET)?;
                    let b = moment_by_walks(&spec, 6)?;
                    if a != b {
                        return pass_if(false, format!("n = {n}, s = {s}, {law:?}"));
                    }
                }
            }
            pass_if(true, "n <= 6, s <= 3 and (n, s) = (4, 4)")
        }),
        run_check("oracle.scaling_law", || {
            let c = rat(3, 2);
            for (n, s) in [(3u32, 2usize), (4, 3), (5, 2)] {
                let spec = MomentSpec::with_law(n, rat(2, 1), s, OracleLaw::Gaussian)?;
                let base = moment_by_walks(&spec, 6)?;
                let scaled = moment_by_walks(&spec.scaled(&c), 6)?;
                if scaled != base * num_traits::pow(c.clone(), 2 * s) {
                    return pass_if(false, format!("n = {n}, s = {s}"));
                }
            }
            pass_if(true, "V_2l -> c^2l V_2l multiplies M_2s by c^2s")
        }),
        run_check("oracle.tree_classes", || {
            let n = 6u32;
            for s in 1..=3usize {
                let spec = rademacher(n, BigRational::from_integer(n.into()), s)?;
                let mut tree = BigRational::zero();
                for w in enumerate_even_walks(s)? {
                    if w.vertex_count() == s + 1 {
                        tree += BigRational::from_integer(class_size(&w, n as u64)) * walk_weight(&w, &spec)?;
                    }
                }
                let falling: BigInt = (0..=s).map(|k| BigInt::from(n as usize - k)).product();
                let want = BigRational::from_integer(falling * catalan(s))
                    * num_traits::pow(rat(1, 4), s)
                    / BigRational::from_integer(BigInt::from(n).pow(s as u32));
                if tree != want {
                    return pass_if(false, format!("s = {s}: {} vs {}", format_rational(&tree), format_rational(&want)));
                }
            }
            pass_if(true, "n = 6, s <= 3")
        }),
        run_check("oracle.wigner_direction", || {
            let n = 6u32;
            let mut parts = Vec::new();
            for s in 1..=3usize {
                let spec = rademacher(n, BigRational::from_integer(n.into()), s)?;
                let m = exact_moment(&spec, OracleMethod::Walk)?.value / BigRational::from_integer(n.into());
                let target = BigRational::from_integer(catalan(s)) * num_traits::pow(rat(1, 4), s);
                parts.push(format!("s={s}: {:.5} vs {:.5}", m.to_f64().unwrap(), target.to_f64().unwrap()));
            }
            Ok((Status::Report, format!("(1/n) M_2s vs t_s/4^s at n = 6: {}", parts.join(", "))))
        }),
        run_check("oracle.v4_monotone", || {
            for n in 2..=6u32 {
                let mk = |v4: BigRational| MomentSpec::new(n, rat(1, 1), 2, vec![rat(1, 4), v4]);
                let lo = moment_by_walks(&mk(rat(1, 16))?, 6)?;
                let hi = moment_by_walks(&mk(rat(3, 16))?, 6)?;
                if hi <= lo {
                    return pass_if(false, format!("n = {n}"));
                }
            }
            pass_if(true, "M_4 strictly increasing in V4, n = 2..6")
        }),
        run_check("oracle.class_audit", || {
            let mut classes = 0;
            for s in 1..=4 {
                for n in 2..=6u32 {
                    for rho in [rat(1, 2), rat(1, 1), rat(2, 1), BigRational::from_integer(n.into())] {
                        let spec = rademacher(n, rho.clone(), s)?;
                        let r = class_weight_audit(&spec, 4)?;
                        if let Some(v) = r.violations().next() {
                            return pass_if(false, format!("s = {s}, n = {n}, rho = {}: {:?}", format_rational(&rho), v.params));
                        }
                        classes += r.rows.len();
                    }
                }
            }
            pass_if(true, format!("{classes} classes within bound, s <= 4, n <= 6, k0 = 4"))
        }),
        run_check("oracle.tree_share", || {
            let spec = rademacher(6, rat(6, 1), 3)?;
            let r = class_weight_audit(&spec, 4)?;
            Ok((Status::Report, format!("tree-type share of M_6 at n = rho = 6: {:.3}", r.tree_share)))
        }),
    ]
}

fn sim_checks() -> Vec<Check> {
    vec![
        run_check("sim.determinism", || {
            let cfg = EnsembleConfig::new(30, 5.0, EntryDist::Gaussian, 17)?;
            let a = estimate_moments(&cfg, &[1, 2, 3], 20)?;
            let b = estimate_moments(&cfg, &[1, 2, 3], 20)?;
            let bits = |v: &[crate::sim::SampleStats]| v.iter().map(|x| (x.mean.to_bits(), x.stderr.to_bits())).collect::<Vec<_>>();
            pass_if(bits(&a) == bits(&b), "identical statistics on rerun")
        }),
        run_check("sim.symmetry", || {
            let cfg = EnsembleConfig::new(40, 6.0, EntryDist::StudentT { phi: 1.0 }, 3)?;
            for idx in 0..5 {
                let h = sample_matrix(&cfg, idx)?;
                for i in 0..40 {
                    if h[(i, i)] != 0.0 || (0..40).any(|j| h[(i, j)].to_bits() != h[(j, i)].to_bits()) {
                        return pass_if(false, format!("sample {idx}, row {i}"));
                    }
                }
            }
            pass_if(true, "H = H^T exactly, zero diagonal")
        }),
        run_check("sim.entry_second_moment", || {
            let n = 200;
            let cfg = EnsembleConfig::new(n, 10.0, EntryDist::Gaussian, 5)?;
            let (mut sum, mut sq, mut count) = (0.0, 0.0, 0usize);
            let mut idx = 0;
            while count < 1_000_000 {
                let h = sample_matrix(&cfg, idx)?;
                for i in 0..n {
                    for j in i + 1..n {
                        let x = h[(i, j)] * h[(i, j)];
                        sum += x;
                        sq += x * x;
                        count += 1;
                    }
                }
                idx += 1;
            }
            let mean = sum / count as f64;
            let se = ((sq / count as f64 - mean * mean) / count as f64).sqrt();
            let target = cfg.v * cfg.v / n as f64;
            let z = (mean - target).abs() / se;
            pass_if(z <= 4.0, format!("{count} draws: {mean:.6e} vs {target:.6e}, z = {z:.2}"))
        }),
        run_check("sim.oracle_consistency", || {
            let mut worst: f64 = 0.0;
            for n in 2..=4u32 {
                for rho in [1u32, n] {
                    let spec = rademacher(n, BigRational::from_integer(rho.into()), 3)?;
                    let cfg = EnsembleConfig::new(n as usize, rho as f64, EntryDist::Rademacher, 1000 + n as u64 * 10 + rho as u64)?;
                    let stats = estimate_moments(&cfg, &[1, 2, 3], 20_000)?;
                    for (k, st) in stats.iter().enumerate() {
                        let mut sp = spec.clone();
                        sp.s = k + 1;
                        let exact = exact_moment(&sp, OracleMethod::Walk)?.value.to_f64().unwrap();
                        let z = st.z_score(exact);
                        worst = worst.max(z);
                        if z > 4.0 {
                            return pass_if(false, format!("n = {n}, rho = {rho}, s = {}: z = {z:.2}", k + 1));
                        }
                    }
                }
            }
            pass_if(true, format!("n <= 4, s <= 3, largest z = {worst:.2}"))
        }),
        run_check("sim.trace_square_identity", || {
            for (n, rho) in [(4usize, 2.0), (60, 8.0)] {
                let cfg = EnsembleConfig::new(n, rho, EntryDist::Gaussian, 9)?;
                for idx in 0..50 {
                    let h = sample_matrix(&cfg, idx)?;
                    let f = frobenius_sq(&h);
                    let tr = trace_power(&eigenvalues(&h)?, 1);
                    if (tr - f).abs() > 1e-10 * f.max(f64::MIN_POSITIVE) {
                        return pass_if(false, format!("n = {n}, sample {idx}: {tr} vs {f}"));
                    }
                }
            }
            pass_if(true, "sum of squared eigenvalues = Frobenius norm to 1e-10")
        }),
        run_check("sim.edge_tail_extremes", || {
            let cfg = EnsembleConfig::new(200, 200.0, EntryDist::Rademacher, 2)?;
            let c = edge_tail(&cfg, &[-5.0, 0.0, 50.0], 40)?;
            pass_if(c.tail_prob[0] == 1.0 && c.tail_prob[2] == 0.0, format!("tail {:?}", c.tail_prob))
        }),
        run_check("sim.semicircle_small", || {
            let n = 400;
            let cfg = EnsembleConfig::new(n, n as f64, EntryDist::Rademacher, 4)?;
            let st = estimate_moments(&cfg, &[1, 2, 3, 4, 5], 10)?;
            let parts: Vec<String> = st
                .iter()
                .enumerate()
                .map(|(k, x)| {
                    let s = k + 1;
                    let target = catalan(s).to_f64().unwrap() / 4f64.powi(s as i32);
                    format!("s={s}: {:+.3}%", 100.0 * (x.mean / n as f64 - target) / target)
                })
                .collect();
            Ok((Status::Report, format!("n = {n}: {}", parts.join(", "))))
        }),
        run_check("sim.critical_lower_bound_small", || {
            let rows = crossover_scan(&CrossoverPlan::new(vec![125], vec![0.0], 1.0, 40, 8))?;
            let r = &rows[0];
            Ok((
                Status::Report,
                format!(
                    "n = 125, s = {}: M = {:.4} +- {:.4}, bound {:.4}, gaussian - rademacher z = {:.2}",
                    r.s, r.rademacher.mean, r.rademacher.stderr, theorem_7_1_rhs(r.chi, r.zeta, r.v4_rademacher), r.diff_z
                ),
            ))
        }),
    ]
}
