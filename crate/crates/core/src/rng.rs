//! Deterministic generator for test-instance construction.
//!
//! A 64-bit linear congruential generator with Knuth's MMIX constants:
//!
//! ```text
//! state <- state * 6364136223846793005 + 1442695040888963407   (mod 2^64)
//! output = state >> 33
//! ```
//!
//! The initial state is the seed. `below(n)` returns `output mod n`. The
//! recurrence is fixed so that chains can be reproduced in other languages.

#[derive(Clone, Debug)]
pub struct Lcg {
    state: u64,
}

const MUL: u64 = 6364136223846793005;
const INC: u64 = 1442695040888963407;

impl Lcg {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    pub fn next_u32(&mut self) -> u32 {
        self.state = self.state.wrapping_mul(MUL).wrapping_add(INC);
        (self.state >> 33) as u32
    }

    /// Uniform-ish index in `0..n`; `n` must be positive.
    pub fn below(&mut self, n: usize) -> usize {
        assert!(n > 0, "empty range");
        self.next_u32() as usize % n
    }

    /// Integer in `-bound..=bound`.
    pub fn symmetric(&mut self, bound: i64) -> i64 {
        self.below((2 * bound + 1) as usize) as i64 - bound
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixed_sequence() {
        let mut g = Lcg::new(0);
        // state1 = INC; output = INC >> 33
        assert_eq!(g.next_u32(), (INC >> 33) as u32);
        let mut a = Lcg::new(42);
        let mut b = Lcg::new(42);
        for _ in 0..10 {
            assert_eq!(a.below(7), b.below(7));
        }
    }
}
