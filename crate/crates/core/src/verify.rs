//! Executable checks of the locker algebra's claims, with counterexamples.
//!
//! Every randomized check draws its inputs up front from a `ChaCha8Rng`
//! seeded with the caller's `seed`, so a report is reproducible from
//! `(n, trials, seed)` alone. Trials then run in parallel; when several fail,
//! the reported counterexample is the one with the smallest key, never the
//! first observed.

use std::fmt;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::bits::{IndexSet, LockerState, MoveSequence};
use crate::engine::{
    basis_set, closed_all, closed_all_but_one, closed_single, count_open_prefix, forward,
    forward_basis, forward_divisor_parity, inverse_map, simulate, torrence_open_state, ProblemSpec,
};
use crate::number_theory::{sigma_set, MultiplesOf};

/// Universes up to this size are swept over all `2^n` subsets.
pub const EXHAUSTIVE_MAX_N: usize = 12;

/// A failing input. `key` orders counterexamples; `detail` replays one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    key: Vec<usize>,
    detail: String,
}

impl Counterexample {
    pub fn new(key: Vec<usize>, detail: impl Into<String>) -> Self {
        Self {
            key,
            detail: detail.into(),
        }
    }

    pub fn key(&self) -> &[usize] {
        &self.key
    }

    pub fn detail(&self) -> &str {
        &self.detail
    }
}

impl fmt::Display for Counterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.detail)
    }
}

/// Outcome of one claim.
#[derive(Clone, Debug)]
pub struct CheckReport {
    pub claim: String,
    pub attempted: u64,
    pub passed: u64,
    pub counterexample: Option<Counterexample>,
    pub elapsed: Duration,
    /// Advisory claims are reported but never count as suite failures.
    pub advisory: bool,
}

impl CheckReport {
    pub fn all_passed(&self) -> bool {
        self.passed == self.attempted
    }

    /// A failure that should fail the suite.
    pub fn is_failure(&self) -> bool {
        !self.advisory && !self.all_passed()
    }

    /// `claim=<id> attempted=<k> passed=<k> [counterexample=<...>]`
    pub fn summary_line(&self) -> String {
        let mut line = format!(
            "claim={} attempted={} passed={}",
            self.claim, self.attempted, self.passed
        );
        if let Some(cx) = &self.counterexample {
            line.push_str(" counterexample=");
            line.push_str(cx.detail());
        }
        line
    }

    fn merge(claim: &str, parts: Vec<CheckReport>) -> CheckReport {
        let mut out = CheckReport {
            claim: claim.to_string(),
            attempted: 0,
            passed: 0,
            counterexample: None,
            elapsed: Duration::ZERO,
            advisory: parts.iter().all(|p| p.advisory),
        };
        for p in parts {
            out.attempted += p.attempted;
            out.passed += p.passed;
            out.elapsed += p.elapsed;
            out.counterexample = smaller(out.counterexample, p.counterexample);
        }
        out
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = match (self.all_passed(), self.advisory) {
            (true, _) => "PASS",
            (false, false) => "FAIL",
            (false, true) => "NOTE",
        };
        write!(
            f,
            "[{status}] {}: {}/{} passed in {:.3?}",
            self.claim, self.passed, self.attempted, self.elapsed
        )?;
        if let Some(cx) = &self.counterexample {
            write!(f, "\n       first counterexample: {cx}")?;
        }
        Ok(())
    }
}

fn smaller(a: Option<Counterexample>, b: Option<Counterexample>) -> Option<Counterexample> {
    match (a, b) {
        (Some(a), Some(b)) => Some(if b.key < a.key { b } else { a }),
        (a, None) => a,
        (None, b) => b,
    }
}

/// Runs `check` over every input in parallel and folds the results.
fn run_trials<I, F>(claim: &str, inputs: &[I], check: F) -> CheckReport
where
    I: Sync,
    F: Fn(&I) -> Option<Counterexample> + Sync,
{
    let start = Instant::now();
    let (failed, counterexample) = inputs
        .par_iter()
        .map(|input| match check(input) {
            Some(cx) => (1u64, Some(cx)),
            None => (0, None),
        })
        .reduce(
            || (0, None),
            |(fa, ca), (fb, cb)| (fa + fb, smaller(ca, cb)),
        );
    let attempted = inputs.len() as u64;
    CheckReport {
        claim: claim.to_string(),
        attempted,
        passed: attempted - failed,
        counterexample,
        elapsed: start.elapsed(),
        advisory: false,
    }
}

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Each student independently with probability 1/2.
pub fn random_subset<R: Rng + ?Sized>(n: usize, rng: &mut R) -> IndexSet {
    let members: Vec<usize> = (1..=n).filter(|_| rng.random::<bool>()).collect();
    IndexSet::from_members(n, members).expect("members lie in 1..=n")
}

pub fn random_state<R: Rng + ?Sized>(n: usize, rng: &mut R) -> LockerState {
    LockerState::from_bools((0..n).map(|_| rng.random::<bool>())).expect("n >= 1")
}

/// Subset whose members are the set bits of `mask` (bit 0 is student 1).
pub fn subset_from_mask(n: usize, mask: u64) -> IndexSet {
    IndexSet::from_members(n, (1..=n).filter(|i| mask >> (i - 1) & 1 == 1))
        .expect("members lie in 1..=n")
}

fn state_from_mask(n: usize, mask: u64) -> LockerState {
    LockerState::from_bools((0..n).map(|b| mask >> b & 1 == 1)).expect("n >= 1")
}

/// Compact list rendering for counterexample text: `{2,3,9}`.
fn braces(items: impl IntoIterator<Item = usize>) -> String {
    let body: Vec<String> = items.into_iter().map(|i| i.to_string()).collect();
    format!("{{{}}}", body.join(","))
}

/// Flattened sort key for a tuple of sets: each set's length, then members.
fn sets_key(sets: &[&IndexSet]) -> Vec<usize> {
    let mut key = Vec::new();
    for s in sets {
        key.push(s.len());
        key.extend(s.iter());
    }
    key
}

fn all_closed_run(u: &IndexSet) -> LockerState {
    let spec = ProblemSpec::all_closed(u.universe(), u.to_moves()).expect("n >= 1");
    simulate(&spec)
}

/// Forward-map agreement for one student set: basis peeling, divisor parity
/// and the simulator agree, the peeled indices are the open lockers, and the
/// inverse map recovers `u`.
fn forward_agrees(u: &IndexSet) -> bool {
    let (by_basis, peeled) = forward_basis(u);
    let by_parity = forward_divisor_parity(u);
    let by_game = all_closed_run(u);
    by_basis == by_parity
        && by_parity == by_game
        && peeled == by_game.open_indices()
        && inverse_map(&by_game) == *u
}

enum ForwardTrial {
    Subset(IndexSet),
    Singletons,
}

/// Forward-map equivalence and invertibility. Exhaustive over all `2^n`
/// subsets when `n <= 12`; otherwise `trials` random subsets plus three
/// fixed trials: the empty set, the full set, and a sweep of every
/// singleton (counted as one trial).
pub fn check_forward_equivalence(n: usize, trials: usize, seed: u64) -> CheckReport {
    let inputs: Vec<ForwardTrial> = if n <= EXHAUSTIVE_MAX_N {
        (0..1u64 << n)
            .map(|mask| ForwardTrial::Subset(subset_from_mask(n, mask)))
            .collect()
    } else {
        let mut rng = rng_from_seed(seed);
        let mut v: Vec<ForwardTrial> = (0..trials)
            .map(|_| ForwardTrial::Subset(random_subset(n, &mut rng)))
            .collect();
        v.push(ForwardTrial::Subset(IndexSet::empty(n).expect("n >= 1")));
        v.push(ForwardTrial::Subset(IndexSet::full(n).expect("n >= 1")));
        v.push(ForwardTrial::Singletons);
        v
    };
    run_trials("forward_equivalence", &inputs, |trial| match trial {
        ForwardTrial::Subset(u) => (!forward_agrees(u)).then(|| {
            Counterexample::new(
                sets_key(&[u]),
                format!("n={n};seed={seed};u={}", braces(u.iter())),
            )
        }),
        ForwardTrial::Singletons => (1..=n).find_map(|i| {
            let u = IndexSet::from_members(n, [i]).expect("1 <= i <= n");
            (!forward_agrees(&u))
                .then(|| Counterexample::new(vec![1, i], format!("n={n};seed={seed};u={{{i}}}")))
        }),
    })
}

struct Triple {
    sets: [IndexSet; 3],
    states: [LockerState; 3],
}

fn group_laws_hold(t: &Triple) -> bool {
    let [a, b, c] = &t.sets;
    let e = IndexSet::empty(a.universe()).expect("n >= 1");
    let sd = |x: &IndexSet, y: &IndexSet| x.sym_diff(y).expect("same universe");
    let sets_ok = sd(a, b) == sd(b, a)
        && sd(&sd(a, b), c) == sd(a, &sd(b, c))
        && sd(a, &e) == *a
        && sd(&e, a) == *a
        && sd(a, a).is_empty();

    let [x, y, z] = &t.states;
    let zero = LockerState::zeros(x.len()).expect("n >= 1");
    let xs = |p: &LockerState, q: &LockerState| p.xor(q).expect("same length");
    let states_ok = xs(x, y) == xs(y, x)
        && xs(&xs(x, y), z) == xs(x, &xs(y, z))
        && xs(x, &zero) == *x
        && xs(&zero, x) == *x
        && xs(x, x).is_all_closed();

    let hom_ok = forward(&sd(a, b)) == xs(&forward(a), &forward(b));
    sets_ok && states_ok && hom_ok
}

/// Group laws for `Δ` on student sets and `+` on states, plus
/// `f(u Δ u') = f(u) + f(u')`. Exhaustive over all triples when `n <= 4`.
pub fn check_group_and_homomorphism(n: usize, trials: usize, seed: u64) -> CheckReport {
    let inputs: Vec<Triple> = if n <= 4 {
        let size = 1u64 << n;
        let mut v = Vec::with_capacity((size * size * size) as usize);
        for a in 0..size {
            for b in 0..size {
                for c in 0..size {
                    v.push(Triple {
                        sets: [a, b, c].map(|m| subset_from_mask(n, m)),
                        states: [a, b, c].map(|m| state_from_mask(n, m)),
                    });
                }
            }
        }
        v
    } else {
        let mut rng = rng_from_seed(seed);
        (0..trials)
            .map(|_| {
                let sets = [(); 3].map(|_| random_subset(n, &mut rng));
                let states = [(); 3].map(|_| random_state(n, &mut rng));
                Triple { sets, states }
            })
            .collect()
    };
    run_trials("group_homomorphism", &inputs, |t| {
        (!group_laws_hold(t)).then(|| {
            let [a, b, c] = &t.sets;
            let [x, y, z] = &t.states;
            Counterexample::new(
                sets_key(&[a, b, c]),
                format!(
                    "n={n};seed={seed};u1={};u2={};u3={};v1={x};v2={y};v3={z}",
                    braces(a.iter()),
                    braces(b.iter()),
                    braces(c.iter())
                ),
            )
        })
    })
}

fn run_moves(n: usize, moves: Vec<usize>) -> LockerState {
    let ms = MoveSequence::new(moves).expect("moves are positive");
    simulate(&ProblemSpec::all_closed(n, ms).expect("n >= 1"))
}

/// Family codes order closed-form counterexamples deterministically.
const SQUARES: usize = 0;
const SINGLE: usize = 1;
const ALL_BUT_ONE: usize = 2;
const PREFIX: usize = 3;
const BASIS: usize = 4;

fn closed_form_cx(family: usize, name: &str, n: usize, param: usize) -> Counterexample {
    Counterexample::new(
        vec![family, n, param],
        format!("family={name};n={n};param={param}"),
    )
}

/// Everyone marching opens exactly the squares, for every `n <= n_max`.
pub fn check_squares(n_max: usize) -> CheckReport {
    let ns: Vec<usize> = (1..=n_max).collect();
    run_trials("squares", &ns, |&n| {
        let oracle = run_moves(n, (1..=n).collect());
        (closed_all(n).ok() != Some(oracle)).then(|| closed_form_cx(SQUARES, "squares", n, 0))
    })
}

/// A lone student `i` opens its multiples; `i = n + 1` opens nothing.
pub fn check_single(n_max: usize) -> CheckReport {
    let cases: Vec<(usize, usize)> = (1..=n_max)
        .flat_map(|n| (1..=n + 1).map(move |i| (n, i)))
        .collect();
    run_trials("single", &cases, |&(n, i)| {
        let oracle = run_moves(n, vec![i]);
        (closed_single(i, n).ok() != Some(oracle)).then(|| closed_form_cx(SINGLE, "single", n, i))
    })
}

/// Everyone but student `i` marches.
pub fn check_all_but_one(n_max: usize) -> CheckReport {
    let cases: Vec<(usize, usize)> = (1..=n_max)
        .flat_map(|n| (1..=n).map(move |i| (n, i)))
        .collect();
    run_trials("all_but_one", &cases, |&(n, i)| {
        let oracle = run_moves(n, (1..=n).filter(|&s| s != i).collect());
        (closed_all_but_one(i, n).ok() != Some(oracle))
            .then(|| closed_form_cx(ALL_BUT_ONE, "all_but_one", n, i))
    })
}

/// Open count after the prefix `1..=p` marches, for every `n/2 < p <= n`.
pub fn check_prefix_count(n_max: usize) -> CheckReport {
    let cases: Vec<(usize, usize)> = (1..=n_max)
        .flat_map(|n| (n / 2 + 1..=n).map(move |p| (n, p)))
        .collect();
    run_trials("prefix_count", &cases, |&(n, p)| {
        let oracle = run_moves(n, (1..=p).collect()).count_open();
        (count_open_prefix(p, n).ok() != Some(oracle))
            .then(|| closed_form_cx(PREFIX, "prefix_count", n, p))
    })
}

/// `f(u_k)` opens locker `k` and nothing else, for all `1 <= k <= n <= n_max`.
pub fn check_basis_unit(n_max: usize) -> CheckReport {
    let cases: Vec<(usize, usize)> = (1..=n_max)
        .flat_map(|n| (1..=n).map(move |k| (n, k)))
        .collect();
    run_trials("basis_unit", &cases, |&(n, k)| {
        let ok = basis_set(k, n)
            .map(|u| forward(&u).open_indices() == [k])
            .unwrap_or(false);
        (!ok).then(|| closed_form_cx(BASIS, "basis_unit", n, k))
    })
}

/// Every closed form against the simulator over its full parameter range,
/// for each `n <= n_max`.
pub fn check_closed_forms(n_max: usize) -> CheckReport {
    CheckReport::merge(
        "closed_forms",
        vec![
            check_squares(n_max),
            check_single(n_max),
            check_all_but_one(n_max),
            check_prefix_count(n_max),
            check_basis_unit(n_max),
        ],
    )
}

/// Residue-filter prediction for the "T = multiples of m" marchers, one
/// report per `m <= m_max`. Each of the `n` lockers is one trial; for
/// `m = 1` a locker must also match the all-students state. Reports for
/// `m >= 3` are advisory.
pub fn check_torrence_states(m_max: u32, n: usize) -> Vec<CheckReport> {
    (1..=m_max).map(|m| check_torrence(m, n)).collect()
}

fn check_torrence(m: u32, n: usize) -> CheckReport {
    let start = Instant::now();
    let marchers: Vec<usize> = sigma_set(&MultiplesOf(m), n as u64)
        .into_iter()
        .map(|x| x as usize)
        .collect();
    let oracle = run_moves(n, marchers);
    let predicted = torrence_open_state(m, n).expect("m >= 1, n >= 1");
    let squares = closed_all(n).expect("n >= 1");
    let lockers: Vec<usize> = (1..=n).collect();
    let mut report = run_trials(&format!("torrence/m={m}"), &lockers, |&j| {
        let mut ok = predicted.is_open(j) == oracle.is_open(j);
        if m == 1 {
            ok &= predicted.is_open(j) == squares.is_open(j);
        }
        (!ok).then(|| {
            Counterexample::new(
                vec![m as usize, j],
                format!(
                    "m={m};n={n};j={j};predicted={};simulated={}",
                    predicted.is_open(j) as u8,
                    oracle.is_open(j) as u8
                ),
            )
        })
    });
    report.advisory = m >= 3;
    report.elapsed = start.elapsed();
    report
}

/// Parameters for [`run_suite`].
#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub n: usize,
    pub trials: usize,
    pub seed: u64,
    pub torrence_m_max: u32,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            n: 100,
            trials: 200,
            seed: 42,
            torrence_m_max: 5,
        }
    }
}

/// Every check, closed forms split per family.
pub fn run_suite(cfg: &SuiteConfig) -> Vec<CheckReport> {
    let mut reports = vec![
        check_forward_equivalence(cfg.n, cfg.trials, cfg.seed),
        check_group_and_homomorphism(cfg.n, cfg.trials, cfg.seed),
        check_squares(cfg.n),
        check_single(cfg.n),
        check_all_but_one(cfg.n),
        check_prefix_count(cfg.n),
        check_basis_unit(cfg.n),
    ];
    reports.extend(check_torrence_states(cfg.torrence_m_max, cfg.n));
    reports
}
