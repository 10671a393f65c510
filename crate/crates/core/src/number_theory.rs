//! Exact integer arithmetic: factorization, divisor counts, integer square
//! roots, the squarefree sieve, and the signature sets `σ(T)` / `υ`.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{LockerError, Result};

/// Canonical prime factorization, primes strictly increasing.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Factorization {
    factors: Vec<(u64, u32)>,
}

impl Factorization {
    /// `(prime, exponent)` pairs; empty exactly for 1.
    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    pub fn product(&self) -> u64 {
        self.factors.iter().map(|&(p, e)| p.pow(e)).product()
    }

    pub fn exponents(&self) -> impl Iterator<Item = u32> + '_ {
        self.factors.iter().map(|&(_, e)| e)
    }
}

/// Trial division up to `√n`.
pub fn factorize(n: u64) -> Result<Factorization> {
    if n == 0 {
        return Err(LockerError::NotPositive);
    }
    let mut factors = Vec::new();
    let mut rest = n;
    let mut push = |rest: &mut u64, p: u64| {
        let mut e = 0;
        while (*rest).is_multiple_of(p) {
            *rest /= p;
            e += 1;
        }
        if e > 0 {
            factors.push((p, e));
        }
    };
    push(&mut rest, 2);
    let mut p = 3;
    while p <= rest / p {
        push(&mut rest, p);
        p += 2;
    }
    if rest > 1 {
        factors.push((rest, 1));
    }
    Ok(Factorization { factors })
}

/// `d(n) = ∏ (α_i + 1)`.
pub fn divisor_count(n: u64) -> Result<u64> {
    Ok(factorize(n)?.exponents().map(|e| e as u64 + 1).product())
}

/// `⌊√n⌋`, exact for every `u64`. Also the number of perfect squares in `1..=n`.
pub fn theta(n: u64) -> u64 {
    n.isqrt()
}

pub fn is_perfect_square(n: u64) -> bool {
    let t = theta(n);
    t * t == n
}

/// All squarefree `m <= n`, ascending.
///
/// Sieves out multiples of `d²` for each squarefree `d >= 2`; this is the
/// same as sieving by prime squares since every other `d²` is already a
/// multiple of one.
pub fn squarefree_upto(n: u64) -> Vec<u64> {
    let flags = squarefree_flags(n as usize);
    (1..=n).filter(|&m| flags[m as usize]).collect()
}

/// `flags[m]` is true iff `m` is squarefree, for `1 <= m <= n`; `flags[0]` is false.
pub(crate) fn squarefree_flags(n: usize) -> Vec<bool> {
    let mut flags = vec![true; n + 1];
    flags[0] = false;
    let mut d = 2usize;
    while d * d <= n {
        if flags[d] {
            let sq = d * d;
            for m in (sq..=n).step_by(sq) {
                flags[m] = false;
            }
        }
        d += 1;
    }
    flags
}

/// A set of prime exponents, the signature `ς(n)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SignatureSet(BTreeSet<u32>);

impl SignatureSet {
    pub fn new<I: IntoIterator<Item = u32>>(exponents: I) -> Result<Self> {
        let set: BTreeSet<u32> = exponents.into_iter().collect();
        if set.contains(&0) {
            return Err(LockerError::NotPositive);
        }
        Ok(Self(set))
    }

    pub fn contains(&self, e: u32) -> bool {
        self.0.contains(&e)
    }

    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        self.0.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_subset_of<F: ExponentFilter + ?Sized>(&self, filter: &F) -> bool {
        self.iter().all(|e| filter.admits(e))
    }
}

impl fmt::Display for SignatureSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, e) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str("}")
    }
}

/// Set of exponents, given either explicitly or as a membership test.
/// `σ(T)` is computed against this, so `T` may be infinite.
pub trait ExponentFilter {
    fn admits(&self, exponent: u32) -> bool;
}

impl ExponentFilter for SignatureSet {
    fn admits(&self, exponent: u32) -> bool {
        self.contains(exponent)
    }
}

impl<F: Fn(u32) -> bool> ExponentFilter for F {
    fn admits(&self, exponent: u32) -> bool {
        self(exponent)
    }
}

/// The positive multiples of `m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MultiplesOf(pub u32);

impl ExponentFilter for MultiplesOf {
    fn admits(&self, exponent: u32) -> bool {
        self.0 != 0 && exponent.is_multiple_of(self.0)
    }
}

/// The residue filter `x mod 2m ∈ {0, ..., m-1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Upsilon {
    m: u64,
}

impl Upsilon {
    pub fn modulus(&self) -> u64 {
        self.m
    }

    pub fn holds(&self, x: u64) -> bool {
        x % (2 * self.m) < self.m
    }
}

impl ExponentFilter for Upsilon {
    fn admits(&self, exponent: u32) -> bool {
        self.holds(exponent as u64)
    }
}

pub fn upsilon_predicate(m: u64) -> Result<Upsilon> {
    if m == 0 {
        return Err(LockerError::NotPositive);
    }
    Ok(Upsilon { m })
}

/// `ς(n)`: the distinct exponents of `n`'s factorization.
pub fn signature(n: u64) -> Result<SignatureSet> {
    Ok(SignatureSet(factorize(n)?.exponents().collect()))
}

/// `σ(T) ∩ [1, n]`, ascending. Always contains 1.
pub fn sigma_set<F: ExponentFilter + ?Sized>(filter: &F, n: u64) -> Vec<u64> {
    let spf = SmallestFactorSieve::new(n as usize);
    (1..=n)
        .filter(|&m| spf.exponents(m as usize).all(|e| filter.admits(e)))
        .collect()
}

/// Smallest-prime-factor table for batch factorization of `1..=n`.
pub(crate) struct SmallestFactorSieve {
    spf: Vec<u32>,
}

impl SmallestFactorSieve {
    pub(crate) fn new(n: usize) -> Self {
        let mut spf = vec![0u32; n + 1];
        for i in 2..=n {
            if spf[i] == 0 {
                for j in (i..=n).step_by(i) {
                    if spf[j] == 0 {
                        spf[j] = i as u32;
                    }
                }
            }
        }
        Self { spf }
    }

    /// Exponents of `m`'s factorization, in increasing prime order.
    pub(crate) fn exponents(&self, m: usize) -> impl Iterator<Item = u32> + '_ {
        let mut rest = m;
        std::iter::from_fn(move || {
            if rest <= 1 {
                return None;
            }
            let p = self.spf[rest] as usize;
            let mut e = 0;
            while rest.is_multiple_of(p) {
                rest /= p;
                e += 1;
            }
            Some(e)
        })
    }
}
