use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{anyhow, Context};
use bcolor::cocluster::{cluster_modulator, solve_cocluster, CoclusterCaps};
use bcolor::fen::{compute_fen_core, main_branch_threshold};
use bcolor::fuzz::{run_trial, summarize, FuzzConfig, TrialResult};
use bcolor::reference::brute_force_b_coloring;
use bcolor::smallk::{solve_twdp, td_narrowest};
use bcolor::{gen, solve_fen_with, verify_b_coloring, Graph, PartialColoring, SolveError};
use rayon::prelude::*;
use serde::Serialize;

use crate::input::{read_graph, write_text};
use crate::{Algo, Caps, CliError, CliResult, FuzzArgs, GenArgs, GenKind, ParamsArgs, SolveArgs, VerifyArgs};

fn exit(code: u8) -> CliResult {
    Ok(ExitCode::from(code))
}

fn print_json(value: &impl Serialize) {
    println!("{}", serde_json::to_string_pretty(value).expect("reports serialize"));
}

#[derive(Serialize, Debug)]
struct Parameters {
    n: usize,
    m: usize,
    fen: usize,
    m_degree: usize,
    fen_core: usize,
    /// `None` when the capped search found no modulator.
    cocluster_modulator: Option<usize>,
}

fn parameters(g: &Graph, modulator_cap: Option<usize>) -> Parameters {
    Parameters {
        n: g.n(),
        m: g.m(),
        fen: g.feedback_edge_number(),
        m_degree: g.m_degree(),
        fen_core: compute_fen_core(g).p,
        cocluster_modulator: modulator_cap.and_then(|cap| cluster_modulator(&g.complement(), cap)).map(|s| s.len()),
    }
}

#[derive(Serialize, Debug)]
struct SolveReport {
    answer: &'static str,
    k: usize,
    algo: Algo,
    parameters: Parameters,
    wall_time_ms: f64,
    witness: Option<PathBuf>,
}

fn cocluster_caps(caps: &Caps) -> CoclusterCaps {
    CoclusterCaps { max_s: caps.cocluster_s, max_p: caps.cocluster_p }
}

fn run_forced(g: &Graph, k: usize, algo: Algo, caps: &Caps) -> Result<Option<PartialColoring>, SolveError> {
    match algo {
        Algo::Brute => brute_force_b_coloring(g, k, caps.brute_n),
        Algo::Twdp => solve_twdp(g, k, &td_narrowest(g), caps.states),
        Algo::Fen => solve_fen_with(g, k, caps.states, caps.brute_n),
        Algo::Cocluster => solve_cocluster(g, k, cocluster_caps(caps)),
        Algo::Auto => unreachable!("auto is resolved by the caller"),
    }
}

/// Core-based branch when `k` is large enough, otherwise the DP, then the
/// co-cluster solver, then brute force, each tried when the previous one
/// runs out of its caps.
fn run_auto(g: &Graph, k: usize, caps: &Caps) -> Result<(Algo, Option<PartialColoring>), SolveError> {
    if k >= main_branch_threshold(g.feedback_edge_number()) {
        return run_forced(g, k, Algo::Fen, caps).map(|r| (Algo::Fen, r));
    }
    let mut last = None;
    for algo in [Algo::Twdp, Algo::Cocluster, Algo::Brute] {
        match run_forced(g, k, algo, caps) {
            Ok(r) => return Ok((algo, r)),
            Err(e @ (SolveError::Budget { .. } | SolveError::TooLarge { .. })) => {
                log::info!("{algo:?} gave up: {e}");
                last = Some(e);
            }
            Err(e) => return Err(e),
        }
    }
    Err(last.expect("at least one solver ran"))
}

fn solve_error(e: SolveError) -> CliError {
    if e.is_invariant() {
        CliError::invariant(e)
    } else {
        CliError::usage(e)
    }
}

fn default_witness_path(input: &Path, k: usize) -> PathBuf {
    let mut name = input.file_name().map(|s| s.to_os_string()).unwrap_or_default();
    name.push(format!(".k{k}.bcol"));
    input.with_file_name(name)
}

pub fn solve(a: SolveArgs) -> CliResult {
    let (path, g) = a.input.read()?;
    let start = Instant::now();
    let (algo, found) = match a.algo {
        Algo::Auto => run_auto(&g, a.k, &a.caps),
        forced => run_forced(&g, a.k, forced, &a.caps).map(|r| (forced, r)),
    }
    .map_err(solve_error)?;
    let wall_time_ms = start.elapsed().as_secs_f64() * 1e3;
    let mut witness = None;
    if let Some(c) = &found {
        let rep = verify_b_coloring(&g, c, a.k);
        if !rep.is_b_coloring {
            return Err(CliError::invariant(anyhow!("{algo:?} returned an invalid witness: {:?}", rep.violations)));
        }
        let out = a.out.clone().unwrap_or_else(|| default_witness_path(&path, a.k));
        write_text(Some(&out), &c.to_text())?;
        witness = Some(out);
    }
    let modulator_cap = (algo == Algo::Cocluster).then_some(a.caps.cocluster_s);
    let report = SolveReport {
        answer: if found.is_some() { "yes" } else { "no" },
        k: a.k,
        algo,
        parameters: parameters(&g, modulator_cap),
        wall_time_ms,
        witness,
    };
    if a.json {
        print_json(&report);
    } else {
        println!("answer: {}", report.answer);
        println!("k: {}", report.k);
        println!("algo: {:?}", report.algo);
        let p = &report.parameters;
        println!("n: {}  m: {}  fen: {}  m-degree: {}  fen-core: {}", p.n, p.m, p.fen, p.m_degree, p.fen_core);
        if let Some(s) = p.cocluster_modulator {
            println!("cocluster-modulator: {s}");
        }
        println!("time: {:.1} ms", report.wall_time_ms);
        if let Some(w) = &report.witness {
            println!("witness: {}", w.display());
        }
    }
    exit(if found.is_some() { 0 } else { 1 })
}

fn check(ok: bool, msg: &str) -> Result<(), CliError> {
    if ok {
        Ok(())
    } else {
        Err(CliError::usage(anyhow!("{msg}")))
    }
}

pub fn gen(a: GenArgs) -> CliResult {
    let mut r = gen::rng(a.seed);
    let g = match &a.kind {
        GenKind::Tree { n } => {
            check(*n >= 1, "--n must be at least 1")?;
            gen::random_tree(*n, &mut r)
        }
        GenKind::PivotedTree { k, unpivot, vary } => {
            check(*k >= 4, "--k must be at least 4")?;
            if *vary {
                gen::random_pivoted_tree(*k, !unpivot, &mut r)
            } else {
                let base = bcolor::fixtures::PivotedTreeSpec::balanced(*k);
                bcolor::fixtures::PivotedTreeSpec { unpivot_leaves: *unpivot as usize, ..base }.build()
            }
        }
        GenKind::Fen { n, extra } => {
            check(*n >= 1, "--n must be at least 1")?;
            check(*extra <= n * (n - 1) / 2 - (n - 1), "--extra exceeds the number of non-tree pairs")?;
            gen::random_fen_graph(*n, *extra, &mut r)
        }
        GenKind::Cocluster { parts, max_side, s } => {
            check(*parts >= 1 && *max_side >= 1, "--parts and --max-side must be at least 1")?;
            gen::random_cocluster(*parts, *max_side, *s, &mut r)
        }
        GenKind::Planted { k, density, witness } => {
            check(*k >= 1, "--k must be at least 1")?;
            check((0.0..=1.0).contains(density), "--density must lie in [0, 1]")?;
            let (g, w) = gen::planted(*k, *density, &mut r);
            let wpath = witness.clone().or_else(|| {
                a.out.as_ref().map(|o| {
                    let mut s = o.as_os_str().to_os_string();
                    s.push(".bcol");
                    PathBuf::from(s)
                })
            });
            if let Some(p) = wpath {
                write_text(Some(&p), &w.to_text())?;
            }
            g
        }
    };
    write_text(a.out.as_deref(), &g.to_text())?;
    exit(0)
}

#[derive(Serialize)]
struct FuzzReport<'a> {
    summary: bcolor::fuzz::FuzzSummary,
    dumps: Vec<PathBuf>,
    config: &'a FuzzConfig,
}

pub fn fuzz(a: FuzzArgs) -> CliResult {
    check(a.max_n >= 1, "--max-n must be at least 1")?;
    let cfg = FuzzConfig {
        trials: a.trials,
        max_n: a.max_n,
        seed: a.seed,
        brute_cap: a.caps.brute_n,
        state_budget: a.caps.states,
        cocluster: cocluster_caps(&a.caps),
    };
    let results: Vec<TrialResult> = (0..cfg.trials).into_par_iter().map(|t| run_trial(&cfg, t)).collect();
    let summary = summarize(&results);
    let mut dumps = Vec::new();
    for d in results.iter().filter_map(|r| r.dump.as_ref()) {
        fs::create_dir_all(&a.out).with_context(|| format!("creating {}", a.out.display())).map_err(CliError::usage)?;
        let path = a.out.join(format!("trial-{}-seed-{}.json", d.trial, d.seed));
        let json = serde_json::to_string_pretty(d).expect("dumps serialize");
        write_text(Some(&path), &json)?;
        dumps.push(path);
    }
    if a.json {
        print_json(&FuzzReport { summary: summary.clone(), dumps: dumps.clone(), config: &cfg });
    } else {
        println!("trials: {}  failures: {}  yes: {}", summary.trials, summary.failures, summary.yes);
        for (solver, n) in &summary.decided {
            let skipped = summary.skipped.get(solver).copied().unwrap_or(0);
            println!("{solver:?}: decided {n}, skipped {skipped}");
        }
        for d in &dumps {
            println!("dump: {}", d.display());
        }
    }
    exit(if summary.failures == 0 { 0 } else { 1 })
}

pub fn params(a: ParamsArgs) -> CliResult {
    let (_, g) = a.input.read()?;
    let p = parameters(&g, Some(a.caps.cocluster_s));
    if a.json {
        print_json(&p);
    } else {
        println!("n={}", p.n);
        println!("m={}", p.m);
        println!("fen={}", p.fen);
        println!("m-degree={}", p.m_degree);
        println!("fen-core={}", p.fen_core);
        match p.cocluster_modulator {
            Some(s) => println!("cocluster-modulator={s}"),
            None => println!("cocluster-modulator>{}", a.caps.cocluster_s),
        }
    }
    exit(0)
}

#[derive(Serialize)]
struct VerifyOutput {
    valid: bool,
    k: usize,
    report: Option<bcolor::VerifyReport>,
    error: Option<String>,
}

pub fn verify(a: VerifyArgs) -> CliResult {
    let (graph_path, coloring_path) = match (&a.input, a.files.as_slice()) {
        (Some(g), [c]) => (g.clone(), c.clone()),
        (None, [g, c]) => (g.clone(), c.clone()),
        _ => return Err(CliError::usage(anyhow!("expected a graph and a coloring file"))),
    };
    let g = read_graph(&graph_path)?;
    let text = fs::read_to_string(&coloring_path)
        .with_context(|| format!("reading {}", coloring_path.display()))
        .map_err(CliError::usage)?;
    let (k, result) = match PartialColoring::parse(&text, g.n()) {
        Ok(c) => {
            let k = a.k.unwrap_or(c.k);
            (k, Ok(verify_b_coloring(&g, &c, k)))
        }
        Err(e) => (a.k.unwrap_or(0), Err(format!("invalid coloring {}: {e}", coloring_path.display()))),
    };
    let valid = matches!(&result, Ok(r) if r.is_b_coloring);
    if a.json {
        let (report, error) = match result {
            Ok(r) => (Some(r), None),
            Err(e) => (None, Some(e)),
        };
        print_json(&VerifyOutput { valid, k, report, error });
    } else {
        match result {
            Ok(r) if r.is_b_coloring => println!("ok: b-coloring with {k} colors"),
            Ok(r) => eprintln!("not a b-coloring with {k} colors: {:?}", r.violations),
            Err(e) => eprintln!("{e}"),
        }
    }
    exit(if valid { 0 } else { 1 })
}
