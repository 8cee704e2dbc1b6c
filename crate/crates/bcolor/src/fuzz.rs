//! Oracle fuzzing: every solver against brute force on small random graphs,
//! with greedy minimization of anything that goes wrong.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::cocluster::{solve_cocluster, CoclusterCaps};
use crate::coloring::{verify_b_coloring, PartialColoring};
use crate::error::SolveError;
use crate::fen::{self, Diagnostic};
use crate::graph::Graph;
use crate::reference::brute_force_b_coloring;
use crate::smallk::{solve_twdp, td_forest};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Solver {
    Brute,
    Twdp,
    Fen,
    Cocluster,
}

impl Solver {
    pub const ALL: [Solver; 4] = [Solver::Brute, Solver::Twdp, Solver::Fen, Solver::Cocluster];
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct FuzzConfig {
    pub trials: usize,
    pub max_n: usize,
    pub seed: u64,
    pub brute_cap: usize,
    pub state_budget: usize,
    pub cocluster: CoclusterCaps,
}

impl Default for FuzzConfig {
    fn default() -> Self {
        FuzzConfig {
            trials: 500,
            max_n: 10,
            seed: 0,
            brute_cap: 16,
            state_budget: crate::smallk::DEFAULT_STATE_BUDGET,
            cocluster: CoclusterCaps::default(),
        }
    }
}

/// What one solver said on one instance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase", tag = "status")]
pub enum Answer {
    Yes,
    No,
    /// Outside the solver's caps.
    Skipped { reason: String },
    /// A yes whose witness failed verification.
    BadWitness { reason: String },
    /// An internal assertion fired.
    Invariant { id: String, detail: String },
}

impl Answer {
    fn decided(&self) -> Option<bool> {
        match self {
            Answer::Yes => Some(true),
            Answer::No => Some(false),
            _ => None,
        }
    }

    fn is_failure(&self) -> bool {
        matches!(self, Answer::BadWitness { .. } | Answer::Invariant { .. })
    }
}

fn judge(g: &Graph, k: usize, r: Result<Option<PartialColoring>, SolveError>) -> Answer {
    match r {
        Ok(None) => Answer::No,
        Ok(Some(c)) => {
            let rep = verify_b_coloring(g, &c, k);
            if rep.is_b_coloring {
                Answer::Yes
            } else {
                Answer::BadWitness { reason: format!("{:?}", rep.violations) }
            }
        }
        Err(SolveError::Invariant { id, detail }) => Answer::Invariant { id: id.to_string(), detail },
        Err(e) => Answer::Skipped { reason: e.to_string() },
    }
}

pub fn run_solver(g: &Graph, k: usize, s: Solver, cfg: &FuzzConfig) -> Answer {
    let r = match s {
        Solver::Brute => brute_force_b_coloring(g, k, cfg.brute_cap),
        Solver::Twdp => solve_twdp(g, k, &td_forest(g), cfg.state_budget),
        Solver::Fen => fen::solve_fen_with(g, k, cfg.state_budget, cfg.brute_cap),
        Solver::Cocluster => solve_cocluster(g, k, cfg.cocluster),
    };
    judge(g, k, r)
}

pub fn run_all(g: &Graph, k: usize, cfg: &FuzzConfig) -> BTreeMap<Solver, Answer> {
    Solver::ALL.iter().map(|&s| (s, run_solver(g, k, s, cfg))).collect()
}

/// The first thing wrong with a set of answers, if any.
pub fn problem(answers: &BTreeMap<Solver, Answer>) -> Option<String> {
    if let Some((s, a)) = answers.iter().find(|(_, a)| a.is_failure()) {
        return Some(format!("{s:?}: {a:?}"));
    }
    let decided: Vec<(Solver, bool)> = answers.iter().filter_map(|(&s, a)| a.decided().map(|d| (s, d))).collect();
    let first = decided.first()?;
    decided
        .iter()
        .find(|x| x.1 != first.1)
        .map(|x| format!("{:?} says {}, {:?} says {}", first.0, yes_no(first.1), x.0, yes_no(x.1)))
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

/// Greedily deletes vertices, then edges, while `still_bad` holds.
pub fn minimize(g: &Graph, mut still_bad: impl FnMut(&Graph) -> bool) -> Graph {
    let mut cur = g.clone();
    let mut changed = true;
    while changed {
        changed = false;
        let mut v = 0;
        while v < cur.n() {
            let keep: Vec<usize> = cur.vertices().filter(|&x| x != v).collect();
            let smaller = cur.induced(&keep);
            if still_bad(&smaller) {
                cur = smaller;
                changed = true;
            } else {
                v += 1;
            }
        }
        let mut i = 0;
        while i < cur.m() {
            let e = cur.edges().nth(i).expect("edge index in range");
            let smaller = cur.without_edges(&[e]);
            if still_bad(&smaller) {
                cur = smaller;
                changed = true;
            } else {
                i += 1;
            }
        }
    }
    cur
}

/// Reproducer written for every failing trial.
#[derive(Clone, Debug, Serialize)]
pub struct FuzzDump {
    pub trial: usize,
    pub seed: u64,
    pub k: usize,
    pub problem: String,
    /// Minimized graph in the text format.
    pub instance: String,
    pub original: String,
    pub answers: BTreeMap<Solver, Answer>,
    /// Profile, plan, realization trace and assertion id when the
    /// core-based branch failed.
    pub diagnostic: Option<Diagnostic>,
}

#[derive(Clone, Debug, Serialize)]
pub struct TrialResult {
    pub trial: usize,
    pub n: usize,
    pub m: usize,
    pub k: usize,
    pub answers: BTreeMap<Solver, Answer>,
    pub dump: Option<FuzzDump>,
}

/// Random instance of a trial: density and size drawn per trial, `k` in
/// `1..=n`. Each trial uses its own ChaCha stream, so trials replay
/// independently of each other.
pub fn trial_instance(cfg: &FuzzConfig, trial: usize) -> (Graph, usize) {
    let mut r = ChaCha8Rng::seed_from_u64(cfg.seed);
    r.set_stream(trial as u64);
    let n = r.gen_range(1..=cfg.max_n.max(1));
    let p = r.gen_range(0.1..0.9);
    let g = crate::gen::random_graph(n, p, &mut r);
    let k = r.gen_range(1..=n);
    (g, k)
}

pub fn run_trial(cfg: &FuzzConfig, trial: usize) -> TrialResult {
    let (g, k) = trial_instance(cfg, trial);
    let answers = run_all(&g, k, cfg);
    let dump = problem(&answers).map(|p| {
        log::warn!("trial {trial}: {p}; minimizing");
        let small = minimize(&g, |h| problem(&run_all(h, k, cfg)).is_some());
        let small_answers = run_all(&small, k, cfg);
        let fen_failed = matches!(small_answers.get(&Solver::Fen), Some(Answer::Invariant { .. }));
        let diagnostic = if fen_failed { fen::run_pipeline(&small, k).err().map(|d| *d) } else { None };
        FuzzDump {
            trial,
            seed: cfg.seed,
            k,
            problem: problem(&small_answers).unwrap_or(p),
            instance: small.to_text(),
            original: g.to_text(),
            answers: small_answers,
            diagnostic,
        }
    });
    TrialResult { trial, n: g.n(), m: g.m(), k, answers, dump }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct FuzzSummary {
    pub trials: usize,
    pub failures: usize,
    /// Per solver: decided answers and skips.
    pub decided: BTreeMap<Solver, usize>,
    pub skipped: BTreeMap<Solver, usize>,
    pub yes: usize,
}

pub fn summarize(results: &[TrialResult]) -> FuzzSummary {
    let mut s = FuzzSummary { trials: results.len(), ..Default::default() };
    for r in results {
        s.failures += r.dump.is_some() as usize;
        if r.answers.get(&Solver::Brute) == Some(&Answer::Yes) {
            s.yes += 1;
        }
        for (&solver, a) in &r.answers {
            match a {
                Answer::Yes | Answer::No => *s.decided.entry(solver).or_default() += 1,
                Answer::Skipped { .. } => *s.skipped.entry(solver).or_default() += 1,
                _ => {}
            }
        }
    }
    s
}
