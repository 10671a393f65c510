//! Student sets and locker states as packed bit vectors over GF(2).
//!
//! Both types speak 1-based indices: bit `i - 1` of the packed storage holds
//! student (or locker) `i`. Bits past the universe size are always zero, so
//! word-wise equality, XOR and popcount need no masking.

use std::fmt;

use crate::error::{LockerError, Result};

const WORD: usize = 64;

#[derive(Clone, PartialEq, Eq, Hash)]
pub(crate) struct Bits {
    len: usize,
    words: Vec<u64>,
}

impl Bits {
    pub(crate) fn zeros(len: usize) -> Self {
        Self {
            len,
            words: vec![0; len.div_ceil(WORD)],
        }
    }

    pub(crate) fn ones(len: usize) -> Self {
        let mut bits = Self {
            len,
            words: vec![u64::MAX; len.div_ceil(WORD)],
        };
        bits.clear_tail();
        bits
    }

    fn clear_tail(&mut self) {
        let rem = self.len % WORD;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }

    #[inline]
    pub(crate) fn len(&self) -> usize {
        self.len
    }

    /// `index` is 1-based.
    #[inline]
    pub(crate) fn get(&self, index: usize) -> bool {
        debug_assert!(index >= 1 && index <= self.len);
        let b = index - 1;
        self.words[b / WORD] >> (b % WORD) & 1 == 1
    }

    #[inline]
    pub(crate) fn set(&mut self, index: usize) {
        debug_assert!(index >= 1 && index <= self.len);
        let b = index - 1;
        self.words[b / WORD] |= 1 << (b % WORD);
    }

    #[inline]
    pub(crate) fn toggle(&mut self, index: usize) {
        debug_assert!(index >= 1 && index <= self.len);
        let b = index - 1;
        self.words[b / WORD] ^= 1 << (b % WORD);
    }

    pub(crate) fn xor_assign(&mut self, other: &Bits) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= *b;
        }
    }

    pub(crate) fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub(crate) fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Smallest set index that is `>= from` (1-based), if any.
    pub(crate) fn first_set_from(&self, from: usize) -> Option<usize> {
        if from > self.len {
            return None;
        }
        let b = from.max(1) - 1;
        let mut wi = b / WORD;
        let mut word = self.words[wi] & (u64::MAX << (b % WORD));
        loop {
            if word != 0 {
                return Some(wi * WORD + word.trailing_zeros() as usize + 1);
            }
            wi += 1;
            if wi == self.words.len() {
                return None;
            }
            word = self.words[wi];
        }
    }

    pub(crate) fn ones_iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut rest = w;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let tz = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(wi * WORD + tz + 1)
            })
        })
    }
}

/// A subset of the students `{1, ..., universe}`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IndexSet {
    bits: Bits,
}

impl IndexSet {
    pub fn empty(universe: usize) -> Result<Self> {
        check_universe(universe)?;
        Ok(Self {
            bits: Bits::zeros(universe),
        })
    }

    /// Every student `1..=universe`.
    pub fn full(universe: usize) -> Result<Self> {
        check_universe(universe)?;
        Ok(Self {
            bits: Bits::ones(universe),
        })
    }

    /// Builds a set from members, rejecting anything outside `1..=universe`.
    /// Repeated members collapse.
    pub fn from_members<I>(universe: usize, members: I) -> Result<Self>
    where
        I: IntoIterator<Item = usize>,
    {
        let mut bits = Self::empty(universe)?.bits;
        for i in members {
            if i == 0 || i > universe {
                return Err(LockerError::IndexOutOfRange { index: i, universe });
            }
            bits.set(i);
        }
        Ok(Self { bits })
    }

    /// Like [`IndexSet::from_members`], but students past the last locker are
    /// dropped: they toggle nothing. Zero is still rejected.
    pub fn from_members_truncated<I>(universe: usize, members: I) -> Result<Self>
    where
        I: IntoIterator<Item = usize>,
    {
        let mut bits = Self::empty(universe)?.bits;
        for i in members {
            if i == 0 {
                return Err(LockerError::NotPositive);
            }
            if i <= universe {
                bits.set(i);
            }
        }
        Ok(Self { bits })
    }

    pub(crate) fn from_bits(bits: Bits) -> Self {
        Self { bits }
    }

    pub(crate) fn bits(&self) -> &Bits {
        &self.bits
    }

    pub fn universe(&self) -> usize {
        self.bits.len()
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_zero()
    }

    pub fn contains(&self, i: usize) -> bool {
        i >= 1 && i <= self.universe() && self.bits.get(i)
    }

    /// Members in ascending order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.ones_iter()
    }

    pub fn members(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn min_element(&self) -> Option<usize> {
        self.bits.first_set_from(1)
    }

    pub fn sym_diff(&self, other: &IndexSet) -> Result<IndexSet> {
        if self.universe() != other.universe() {
            return Err(LockerError::UniverseMismatch {
                left: self.universe(),
                right: other.universe(),
            });
        }
        let mut bits = self.bits.clone();
        bits.xor_assign(&other.bits);
        Ok(Self { bits })
    }

    /// The members as a move list, ascending.
    pub fn to_moves(&self) -> MoveSequence {
        MoveSequence {
            moves: self.members(),
        }
    }
}

impl fmt::Display for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_joined(f, self.iter())
    }
}

impl fmt::Debug for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IndexSet(n={}, {{", self.universe())?;
        write_joined(f, self.iter())?;
        write!(f, "}})")
    }
}

/// The locker states `s_1 .. s_n`; `true` is open.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LockerState {
    bits: Bits,
}

impl LockerState {
    /// All lockers closed.
    pub fn zeros(len: usize) -> Result<Self> {
        check_universe(len)?;
        Ok(Self {
            bits: Bits::zeros(len),
        })
    }

    pub fn from_bools<I>(bools: I) -> Result<Self>
    where
        I: IntoIterator<Item = bool>,
    {
        let bools: Vec<bool> = bools.into_iter().collect();
        let mut bits = Self::zeros(bools.len())?.bits;
        for (j, &b) in bools.iter().enumerate() {
            if b {
                bits.set(j + 1);
            }
        }
        Ok(Self { bits })
    }

    /// State of length `len` with exactly the listed lockers open.
    pub fn from_open<I>(len: usize, open: I) -> Result<Self>
    where
        I: IntoIterator<Item = usize>,
    {
        let set = IndexSet::from_members(len, open)?;
        Ok(Self { bits: set.bits })
    }

    /// Parses the text encoding: `'0'`/`'1'` characters, leftmost is locker 1.
    pub fn parse(text: &str, expected_len: usize) -> Result<Self> {
        let text = text.trim();
        let mut bools = Vec::with_capacity(text.len());
        for (pos, c) in text.chars().enumerate() {
            match c {
                '0' => bools.push(false),
                '1' => bools.push(true),
                other => {
                    return Err(LockerError::InvalidStateChar {
                        position: pos + 1,
                        found: other,
                    })
                }
            }
        }
        if bools.len() != expected_len {
            return Err(LockerError::StateLength {
                expected: expected_len,
                found: bools.len(),
            });
        }
        Self::from_bools(bools)
    }

    pub(crate) fn from_bits(bits: Bits) -> Self {
        Self { bits }
    }

    pub(crate) fn into_bits(self) -> Bits {
        self.bits
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    /// Always false: a state covers at least one locker.
    pub fn is_empty(&self) -> bool {
        self.bits.len() == 0
    }

    /// Whether locker `j` (1-based) is open.
    pub fn is_open(&self, j: usize) -> bool {
        j >= 1 && j <= self.len() && self.bits.get(j)
    }

    pub fn open_indices(&self) -> Vec<usize> {
        self.bits.ones_iter().collect()
    }

    pub fn count_open(&self) -> usize {
        self.bits.count_ones()
    }

    pub fn is_all_closed(&self) -> bool {
        self.bits.is_zero()
    }

    pub fn to_bools(&self) -> Vec<bool> {
        (1..=self.len()).map(|j| self.bits.get(j)).collect()
    }

    pub fn xor(&self, other: &LockerState) -> Result<LockerState> {
        if self.len() != other.len() {
            return Err(LockerError::LengthMismatch {
                left: self.len(),
                right: other.len(),
            });
        }
        let mut bits = self.bits.clone();
        bits.xor_assign(&other.bits);
        Ok(Self { bits })
    }
}

impl fmt::Display for LockerState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = (1..=self.len())
            .map(|j| if self.bits.get(j) { '1' } else { '0' })
            .collect();
        f.write_str(&s)
    }
}

impl fmt::Debug for LockerState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LockerState({self})")
    }
}

/// Student turns in the order they are taken; repeats are allowed.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct MoveSequence {
    moves: Vec<usize>,
}

impl MoveSequence {
    pub fn new(moves: Vec<usize>) -> Result<Self> {
        if moves.contains(&0) {
            return Err(LockerError::NotPositive);
        }
        Ok(Self { moves })
    }

    /// Parses whitespace- or comma-separated positive integers, keeping order
    /// and repeats. A token `a..b` expands to the inclusive run `a, a+1, ..., b`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut moves = Vec::new();
        for token in text
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
        {
            let invalid = || LockerError::InvalidMove {
                token: token.to_string(),
            };
            if let Some((lo, hi)) = token.split_once("..") {
                let lo = parse_positive(lo).ok_or_else(invalid)?;
                let hi = parse_positive(hi).ok_or_else(invalid)?;
                moves.extend(lo..=hi);
            } else {
                moves.push(parse_positive(token).ok_or_else(invalid)?);
            }
        }
        Ok(Self { moves })
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.moves
    }

    pub fn len(&self) -> usize {
        self.moves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.moves.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.moves.iter().copied()
    }

    /// `self` followed by `other`.
    pub fn concat(&self, other: &MoveSequence) -> MoveSequence {
        let mut moves = self.moves.clone();
        moves.extend_from_slice(&other.moves);
        MoveSequence { moves }
    }
}

impl fmt::Display for MoveSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_joined(f, self.iter())
    }
}

fn parse_positive(token: &str) -> Option<usize> {
    match token.parse::<usize>() {
        Ok(0) | Err(_) => None,
        Ok(v) => Some(v),
    }
}

fn write_joined(f: &mut fmt::Formatter<'_>, it: impl Iterator<Item = usize>) -> fmt::Result {
    for (pos, i) in it.enumerate() {
        if pos > 0 {
            f.write_str(" ")?;
        }
        write!(f, "{i}")?;
    }
    Ok(())
}

fn check_universe(n: usize) -> Result<()> {
    if n == 0 {
        Err(LockerError::EmptyUniverse)
    } else {
        Ok(())
    }
}

/// Symmetric difference of two student sets over the same universe.
pub fn sym_diff(u1: &IndexSet, u2: &IndexSet) -> Result<IndexSet> {
    u1.sym_diff(u2)
}

/// Position-wise addition mod 2.
pub fn xor_states(v1: &LockerState, v2: &LockerState) -> Result<LockerState> {
    v1.xor(v2)
}

pub fn min_element(u: &IndexSet) -> Option<usize> {
    u.min_element()
}

/// Collapses a move list to the students that act an odd number of times.
/// Students past `n` are dropped.
pub fn reduce_moves(moves: &MoveSequence, n: usize) -> Result<IndexSet> {
    let mut bits = IndexSet::empty(n)?.bits;
    for i in moves.iter().filter(|&i| i <= n) {
        bits.toggle(i);
    }
    Ok(IndexSet { bits })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(n: usize, m: &[usize]) -> IndexSet {
        IndexSet::from_members(n, m.iter().copied()).unwrap()
    }

    fn state(s: &str) -> LockerState {
        LockerState::parse(s, s.len()).unwrap()
    }

    #[test]
    fn sym_diff_examples() {
        let u = set(5, &[2, 3]);
        assert_eq!(sym_diff(&u, &set(5, &[3, 4])).unwrap(), set(5, &[2, 4]));
        assert!(sym_diff(&u, &u).unwrap().is_empty());
        assert_eq!(sym_diff(&u, &IndexSet::empty(5).unwrap()).unwrap(), u);
    }

    #[test]
    fn sym_diff_rejects_universe_mismatch() {
        let err = sym_diff(&set(5, &[1]), &set(6, &[1])).unwrap_err();
        assert_eq!(err, LockerError::UniverseMismatch { left: 5, right: 6 });
    }

    #[test]
    fn xor_examples() {
        assert_eq!(
            xor_states(&state("0110"), &state("0011")).unwrap(),
            state("0101")
        );
        let v = state("1011001");
        assert!(xor_states(&v, &v).unwrap().is_all_closed());
        assert_eq!(xor_states(&v, &LockerState::zeros(7).unwrap()).unwrap(), v);
        assert!(matches!(
            xor_states(&state("01"), &state("011")),
            Err(LockerError::LengthMismatch { .. })
        ));
    }

    #[test]
    fn min_element_examples() {
        assert_eq!(min_element(&set(10, &[5, 2, 9])), Some(2));
        assert_eq!(min_element(&IndexSet::empty(10).unwrap()), None);
        assert_eq!(min_element(&set(10, &[7])), Some(7));
        assert_eq!(min_element(&set(200, &[130, 199])), Some(130));
    }

    #[test]
    fn reduce_moves_examples() {
        let ms = MoveSequence::new(vec![2, 3, 2]).unwrap();
        assert_eq!(reduce_moves(&ms, 10).unwrap(), set(10, &[3]));
        let ms = MoveSequence::new(vec![1, 1]).unwrap();
        assert!(reduce_moves(&ms, 5).unwrap().is_empty());
        let ms = MoveSequence::new(vec![3, 150]).unwrap();
        assert_eq!(reduce_moves(&ms, 100).unwrap(), set(100, &[3]));
    }

    #[test]
    fn members_range_checked() {
        assert!(matches!(
            IndexSet::from_members(4, [5]),
            Err(LockerError::IndexOutOfRange {
                index: 5,
                universe: 4
            })
        ));
        assert!(IndexSet::from_members(4, [0]).is_err());
        assert_eq!(IndexSet::empty(0).unwrap_err(), LockerError::EmptyUniverse);
        assert_eq!(
            IndexSet::from_members_truncated(4, [2, 9, 2]).unwrap(),
            set(4, &[2])
        );
    }

    #[test]
    fn word_boundaries() {
        for n in [63, 64, 65, 128, 129] {
            let full = IndexSet::full(n).unwrap();
            assert_eq!(full.len(), n);
            assert_eq!(full.members(), (1..=n).collect::<Vec<_>>());
            let u = set(n, &[n]);
            assert_eq!(u.min_element(), Some(n));
            assert!(full.sym_diff(&full).unwrap().is_empty());
        }
    }

    #[test]
    fn parse_state_examples() {
        let v = LockerState::parse("0101", 4).unwrap();
        assert_eq!(v.open_indices(), vec![2, 4]);
        assert_eq!(
            LockerState::parse("01012", 5).unwrap_err(),
            LockerError::InvalidStateChar {
                position: 5,
                found: '2'
            }
        );
        assert_eq!(
            LockerState::parse("01", 3).unwrap_err(),
            LockerError::StateLength {
                expected: 3,
                found: 2
            }
        );
    }

    #[test]
    fn parse_moves_examples() {
        assert_eq!(
            MoveSequence::parse("2, 3 2").unwrap().as_slice(),
            &[2, 3, 2]
        );
        assert!(MoveSequence::parse("").unwrap().is_empty());
        assert!(matches!(
            MoveSequence::parse("0 1"),
            Err(LockerError::InvalidMove { .. })
        ));
        assert!(MoveSequence::parse("-3").is_err());
        assert!(MoveSequence::parse("x").is_err());
        assert_eq!(
            MoveSequence::parse("1..4 2").unwrap().as_slice(),
            &[1, 2, 3, 4, 2]
        );
    }

    #[test]
    fn display_formats() {
        assert_eq!(set(10, &[10, 1, 3]).to_string(), "1 3 10");
        assert_eq!(IndexSet::empty(3).unwrap().to_string(), "");
        assert_eq!(
            LockerState::from_open(5, [1, 5]).unwrap().to_string(),
            "10001"
        );
    }
}
