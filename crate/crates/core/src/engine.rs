//! The locker game and the maps between student sets and locker states.
//!
//! [`simulate`] is the definitional toggle-by-toggle oracle. The forward map
//! `f: S -> L` is available three ways that share no code path beyond the
//! bit storage: the game rule per student ([`forward`]), divisor parity per
//! locker ([`forward_divisor_parity`]), and peeling basis sets
//! ([`forward_basis`]). [`inverse_map`] combines basis sets `u_k`, the
//! student sets that open locker `k` and nothing else.

use crate::bits::{Bits, IndexSet, LockerState, MoveSequence};
use crate::error::{LockerError, Result};
use crate::number_theory::{
    is_perfect_square, squarefree_flags, theta, upsilon_predicate, ExponentFilter, MultiplesOf,
    SmallestFactorSieve,
};

/// A game: `n` lockers starting in `initial`, then the student turns in `moves`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProblemSpec {
    initial: LockerState,
    moves: MoveSequence,
}

impl ProblemSpec {
    pub fn new(initial: LockerState, moves: MoveSequence) -> Self {
        Self { initial, moves }
    }

    /// The classic start: every locker closed.
    pub fn all_closed(n: usize, moves: MoveSequence) -> Result<Self> {
        Ok(Self {
            initial: LockerState::zeros(n)?,
            moves,
        })
    }

    pub fn n(&self) -> usize {
        self.initial.len()
    }

    pub fn initial(&self) -> &LockerState {
        &self.initial
    }

    pub fn moves(&self) -> &MoveSequence {
        &self.moves
    }
}

/// Plays the moves in order: student `i` toggles every locker `j` with `i | j`.
/// Students past `n` touch nothing.
pub fn simulate(spec: &ProblemSpec) -> LockerState {
    let n = spec.n();
    let mut bits = spec.initial.clone().into_bits();
    for i in spec.moves.iter().filter(|&i| i <= n) {
        for j in (i..=n).step_by(i) {
            bits.toggle(j);
        }
    }
    LockerState::from_bits(bits)
}

/// `f(u)` by the game rule, each member marching once from all-closed.
pub fn forward(u: &IndexSet) -> LockerState {
    let n = u.universe();
    let mut bits = Bits::zeros(n);
    for i in u.iter() {
        for j in (i..=n).step_by(i) {
            bits.toggle(j);
        }
    }
    LockerState::from_bits(bits)
}

/// `f(u)` locker by locker: `s_j` is the parity of `|{i ∈ u : i | j}|`.
pub fn forward_divisor_parity(u: &IndexSet) -> LockerState {
    let n = u.universe();
    let mut bits = Bits::zeros(n);
    for j in 1..=n {
        let mut hits = 0usize;
        let mut d = 1;
        while d * d <= j {
            if j % d == 0 {
                hits += u.contains(d) as usize;
                let e = j / d;
                if e != d {
                    hits += u.contains(e) as usize;
                }
            }
            d += 1;
        }
        if hits % 2 == 1 {
            bits.set(j);
        }
    }
    LockerState::from_bits(bits)
}

/// Basis sets `u_k = { k·s : s squarefree, k·s <= n }` for one universe.
///
/// Holds the squarefree table once so repeated lookups do not re-sieve.
#[derive(Clone, Debug)]
pub struct Basis {
    n: usize,
    squarefree: Vec<bool>,
}

impl Basis {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(LockerError::EmptyUniverse);
        }
        Ok(Self {
            n,
            squarefree: squarefree_flags(n),
        })
    }

    pub fn universe(&self) -> usize {
        self.n
    }

    /// Members of `u_k` in ascending order; `k` itself comes first.
    pub fn members(&self, k: usize) -> impl Iterator<Item = usize> + '_ {
        let top = self.n.checked_div(k).unwrap_or(0);
        (1..=top)
            .filter(move |&s| self.squarefree[s])
            .map(move |s| k * s)
    }

    pub fn set(&self, k: usize) -> Result<IndexSet> {
        self.check(k)?;
        let mut bits = Bits::zeros(self.n);
        for i in self.members(k) {
            bits.set(i);
        }
        Ok(IndexSet::from_bits(bits))
    }

    fn check(&self, k: usize) -> Result<()> {
        if k == 0 || k > self.n {
            return Err(LockerError::IndexOutOfRange {
                index: k,
                universe: self.n,
            });
        }
        Ok(())
    }

    fn toggle_into(&self, k: usize, bits: &mut Bits) {
        for i in self.members(k) {
            bits.toggle(i);
        }
    }
}

/// `u_k` over the universe `1..=n`; `f(u_k)` opens locker `k` alone.
pub fn basis_set(k: usize, n: usize) -> Result<IndexSet> {
    Basis::new(n)?.set(k)
}

/// `f(u)` by repeatedly removing the basis set of the smallest remaining
/// student. Returns the state and the peeled indices in order; those are
/// exactly the open lockers.
///
/// Every member of `u_k` other than `k` exceeds `k`, so each step strictly
/// raises the working set's minimum and the loop runs at most `n` times.
pub fn forward_basis(u: &IndexSet) -> (LockerState, Vec<usize>) {
    let n = u.universe();
    let basis = Basis::new(n).expect("IndexSet universe is positive");
    let mut working = u.bits().clone();
    let mut state = Bits::zeros(n);
    let mut peeled = Vec::new();
    let mut from = 1;
    while let Some(k) = working.first_set_from(from) {
        basis.toggle_into(k, &mut working);
        state.set(k);
        peeled.push(k);
        from = k + 1;
    }
    (LockerState::from_bits(state), peeled)
}

/// `f⁻¹(v)`: the symmetric difference of `u_j` over the open lockers `j`.
pub fn inverse_map(v: &LockerState) -> IndexSet {
    let n = v.len();
    let basis = Basis::new(n).expect("LockerState length is positive");
    let mut bits = Bits::zeros(n);
    for j in v.open_indices() {
        basis.toggle_into(j, &mut bits);
    }
    IndexSet::from_bits(bits)
}

/// Students that turn `from` into `to`: `f⁻¹(from + to)`.
pub fn solve_from_initial(from: &LockerState, to: &LockerState) -> Result<IndexSet> {
    Ok(inverse_map(&from.xor(to)?))
}

/// Every student marches: the perfect squares are open.
pub fn closed_all(n: usize) -> Result<LockerState> {
    let mut bits = LockerState::zeros(n)?.into_bits();
    for t in 1..=theta(n as u64) as usize {
        bits.set(t * t);
    }
    Ok(LockerState::from_bits(bits))
}

/// Only student `i` marches: the multiples of `i` are open. A student past
/// `n` leaves everything closed.
pub fn closed_single(i: usize, n: usize) -> Result<LockerState> {
    if i == 0 {
        return Err(LockerError::NotPositive);
    }
    let mut bits = LockerState::zeros(n)?.into_bits();
    for j in (i..=n).step_by(i) {
        bits.set(j);
    }
    Ok(LockerState::from_bits(bits))
}

/// Everyone but student `i` marches.
///
/// Locker `j` is open iff exactly one of "j is a square" and "i | j" holds.
pub fn closed_all_but_one(i: usize, n: usize) -> Result<LockerState> {
    if i == 0 || i > n {
        return Err(LockerError::IndexOutOfRange {
            index: i,
            universe: n,
        });
    }
    let mut bits = LockerState::zeros(n)?.into_bits();
    for j in 1..=n {
        if is_perfect_square(j as u64) != (j % i == 0) {
            bits.set(j);
        }
    }
    Ok(LockerState::from_bits(bits))
}

/// Open-locker count `ω` after students `1..=p` march, for `n/2 < p <= n`:
/// `θ(p) + ((n - p) - (θ(n) - θ(p)))`.
///
/// Below `n/2` the formula does not hold and is refused.
pub fn count_open_prefix(p: usize, n: usize) -> Result<usize> {
    if p > n || 2 * p <= n {
        return Err(LockerError::PrefixOutOfRange { p, n });
    }
    let tp = theta(p as u64) as usize;
    let tn = theta(n as u64) as usize;
    Ok(tp + ((n - p) - (tn - tp)))
}

/// Marchers for the `T = {m, 2m, 3m, ...}` case: every `j <= n` whose
/// exponents are all multiples of `m`, i.e. the perfect `m`-th powers.
pub fn torrence_marchers(m: u32, n: usize) -> Result<IndexSet> {
    if m == 0 {
        return Err(LockerError::NotPositive);
    }
    let filter = MultiplesOf(m);
    exponent_filtered_set(n, |e| filter.admits(e))
}

/// Predicted final state when [`torrence_marchers`] march: locker `j` is open
/// iff every exponent `α` of `j` has `α mod 2m < m`.
pub fn torrence_open_state(m: u32, n: usize) -> Result<LockerState> {
    let upsilon = upsilon_predicate(m as u64)?;
    let set = exponent_filtered_set(n, |e| upsilon.admits(e))?;
    Ok(LockerState::from_bits(set.bits().clone()))
}

fn exponent_filtered_set(n: usize, admits: impl Fn(u32) -> bool) -> Result<IndexSet> {
    let mut bits = IndexSet::empty(n)?.bits().clone();
    let sieve = SmallestFactorSieve::new(n);
    for j in 1..=n {
        if sieve.exponents(j).all(&admits) {
            bits.set(j);
        }
    }
    Ok(IndexSet::from_bits(bits))
}

pub fn count_open(v: &LockerState) -> usize {
    v.count_open()
}
