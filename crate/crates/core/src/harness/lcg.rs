//! The coefficient generator used by sweeps.
//!
//! A 64-bit linear congruential generator with Knuth's MMIX constants:
//!
//! ```text
//! state <- state * 6364136223846793005 + 1442695040888963407   (mod 2^64)
//! draw   = (state >> 32) mod q
//! ```
//!
//! The state is advanced before each draw and starts at the seed. Nonzero
//! field elements are drawn by rejecting code 0. The scheme is short enough
//! to reimplement in any language, which keeps sweep instances portable.

pub const MULTIPLIER: u64 = 6_364_136_223_846_793_005;
pub const INCREMENT: u64 = 1_442_695_040_888_963_407;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lcg {
    state: u64,
}

impl Lcg {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self
            .state
            .wrapping_mul(MULTIPLIER)
            .wrapping_add(INCREMENT);
        self.state
    }

    /// Uniform-ish draw from `0..q` using the high 32 bits.
    pub fn draw(&mut self, q: u32) -> u32 {
        ((self.next_u64() >> 32) % q as u64) as u32
    }

    /// A code in `1..q`, by rejection of 0.
    pub fn draw_nonzero(&mut self, q: u32) -> u32 {
        assert!(q >= 2, "no nonzero elements in a field of size {q}");
        loop {
            let c = self.draw(q);
            if c != 0 {
                return c;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_states() {
        let mut g = Lcg::new(0);
        assert_eq!(g.next_u64(), INCREMENT);
        assert_eq!(
            g.next_u64(),
            INCREMENT.wrapping_mul(MULTIPLIER).wrapping_add(INCREMENT)
        );
    }

    #[test]
    fn draws_are_reproducible_and_nonzero() {
        let a: Vec<u32> = {
            let mut g = Lcg::new(42);
            (0..100).map(|_| g.draw_nonzero(5)).collect()
        };
        let mut g = Lcg::new(42);
        let b: Vec<u32> = (0..100).map(|_| g.draw_nonzero(5)).collect();
        assert_eq!(a, b);
        assert!(a.iter().all(|&c| (1..5).contains(&c)));
        // all four units show up
        for c in 1..5 {
            assert!(a.contains(&c));
        }
    }
}
