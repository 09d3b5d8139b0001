//! Deterministic seeded generator for randomized exact checks.
//!
//! Property checks draw elements with small integer coefficients in
//! `[-9, 9]` so that every identity stays in exact rational arithmetic.
//! The generator is a plain splitmix64: identical seeds yield identical
//! streams on every platform, which keeps reports byte-reproducible.

use alloc::vec::Vec;

use crate::compalg::{CompElement, StructureTable};
use crate::exactlin::ExactScalar;

/// Splitmix64 stream.
#[derive(Debug, Clone)]
pub struct SeededRng {
    state: u64,
}

impl SeededRng {
    pub fn new(seed: u64) -> Self {
        SeededRng { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e37_79b9_7f4a_7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ (z >> 31)
    }

    /// Uniform integer in `[lo, hi]` (inclusive).
    pub fn int_in(&mut self, lo: i64, hi: i64) -> i64 {
        debug_assert!(lo <= hi);
        let span = (hi - lo + 1) as u64;
        lo + (self.next_u64() % span) as i64
    }

    /// Small integer coefficient in `[-9, 9]`.
    pub fn coeff(&mut self) -> ExactScalar {
        ExactScalar::from_int(self.int_in(-9, 9))
    }

    pub fn coeff_vec(&mut self, len: usize) -> Vec<ExactScalar> {
        (0..len).map(|_| self.coeff()).collect()
    }

    /// Random element of a composition algebra.
    pub fn comp_element(&mut self, table: &StructureTable) -> CompElement {
        CompElement {
            coeffs: self.coeff_vec(table.dim()),
        }
    }

    /// Random purely imaginary element (zero `e_0` coefficient).
    pub fn imaginary_element(&mut self, table: &StructureTable) -> CompElement {
        let mut e = self.comp_element(table);
        e.coeffs[0] = ExactScalar::zero();
        e
    }
}
