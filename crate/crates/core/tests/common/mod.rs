//! Reference implementations that share no code with the crate under test.
#![allow(dead_code)]

/// Toggle-by-toggle game on a plain `Vec<bool>`; index 0 is locker 1.
pub fn naive_run(n: usize, initial: &[bool], moves: &[usize]) -> Vec<bool> {
    let mut lockers = initial.to_vec();
    assert_eq!(lockers.len(), n);
    for &i in moves {
        for j in 1..=n {
            if j % i == 0 {
                lockers[j - 1] = !lockers[j - 1];
            }
        }
    }
    lockers
}

pub fn naive_closed_run(n: usize, moves: &[usize]) -> Vec<bool> {
    naive_run(n, &vec![false; n], moves)
}

pub fn open_of(bits: &[bool]) -> Vec<usize> {
    bits.iter()
        .enumerate()
        .filter(|(_, &b)| b)
        .map(|(j, _)| j + 1)
        .collect()
}

pub fn bit_string(bits: &[bool]) -> String {
    bits.iter().map(|&b| if b { '1' } else { '0' }).collect()
}

pub fn enumerate_divisors(n: u64) -> u64 {
    (1..=n).filter(|d| n.is_multiple_of(*d)).count() as u64
}

pub fn has_square_factor(m: u64) -> bool {
    let mut d = 2;
    while d * d <= m {
        if m.is_multiple_of(d * d) {
            return true;
        }
        d += 1;
    }
    false
}

/// Small xorshift64 stream for test inputs, independent of the crate's RNG.
pub struct XorShift(pub u64);

impl XorShift {
    pub fn next(&mut self) -> u64 {
        let mut x = self.0;
        x ^= x << 13;
        x ^= x >> 7;
        x ^= x << 17;
        self.0 = x;
        x
    }

    pub fn below(&mut self, bound: u64) -> u64 {
        self.next() % bound
    }

    pub fn coin(&mut self) -> bool {
        self.next() & 1 == 1
    }

    pub fn subset(&mut self, n: usize) -> Vec<usize> {
        (1..=n).filter(|_| self.coin()).collect()
    }

    pub fn bools(&mut self, n: usize) -> Vec<bool> {
        (0..n).map(|_| self.coin()).collect()
    }

    pub fn shuffle<T>(&mut self, v: &mut [T]) {
        for i in (1..v.len()).rev() {
            let j = self.below(i as u64 + 1) as usize;
            v.swap(i, j);
        }
    }
}
