use std::fmt;
use std::str::FromStr;

use rand::Rng;

use crate::error::{DwpError, Result};

/// A string of one or two bits emitted when a state is entered.
///
/// Bits are packed MSB-first into the low `len` bits of `bits`, so the
/// emission "10" is stored as `bits = 0b10, len = 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Emission {
    bits: u8,
    len: u8,
}

impl Emission {
    pub fn new(bits: &[bool]) -> Result<Self> {
        if bits.is_empty() || bits.len() > 2 {
            return Err(DwpError::InvalidParameter(format!(
                "emission length must be 1 or 2, got {}",
                bits.len()
            )));
        }
        let packed = bits.iter().fold(0u8, |acc, &b| (acc << 1) | b as u8);
        Ok(Emission { bits: packed, len: bits.len() as u8 })
    }

    pub fn single(bit: bool) -> Self {
        Emission { bits: bit as u8, len: 1 }
    }

    pub fn pair(first: bool, second: bool) -> Self {
        Emission { bits: ((first as u8) << 1) | second as u8, len: 2 }
    }

    /// Length drawn uniformly from {1, 2}, then each bit uniformly.
    pub fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        let len = rng.gen_range(1..=2u8);
        let bits = rng.gen_range(0..(1u8 << len));
        Emission { bits, len }
    }

    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.len as usize
    }

    pub fn bit(&self, i: usize) -> bool {
        assert!(i < self.len(), "emission bit index {i} out of range");
        (self.bits >> (self.len() - 1 - i)) & 1 == 1
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len()).map(move |i| self.bit(i))
    }
}

impl fmt::Display for Emission {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in self.iter() {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for Emission {
    type Err = DwpError;

    fn from_str(s: &str) -> Result<Self> {
        let bits = s
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(DwpError::InvalidParameter(format!(
                    "emission contains non-bit character {other:?}"
                ))),
            })
            .collect::<Result<Vec<_>>>()?;
        Emission::new(&bits)
    }
}

/// One state of a self-driving automaton: what it emits on entry and where it
/// goes on each input bit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct StateRecord {
    pub emission: Emission,
    pub next_on_0: usize,
    pub next_on_1: usize,
}

impl StateRecord {
    pub fn next(&self, input: bool) -> usize {
        if input {
            self.next_on_1
        } else {
            self.next_on_0
        }
    }
}

/// Self-driving automaton stored as a linear list of Moore states.
///
/// State 0 is the initial state. `initial_emission` is what the machine
/// emits before it has seen any input; it travels with state 0 under
/// crossover.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SdaGenome {
    initial_emission: Emission,
    states: Vec<StateRecord>,
}

impl SdaGenome {
    pub fn new(initial_emission: Emission, states: Vec<StateRecord>) -> Result<Self> {
        let genome = SdaGenome { initial_emission, states };
        genome.validate()?;
        Ok(genome)
    }

    pub fn random<R: Rng + ?Sized>(num_states: usize, rng: &mut R) -> Result<Self> {
        if num_states == 0 {
            return Err(DwpError::InvalidParameter("num_states must be at least 1".into()));
        }
        let initial_emission = Emission::random(rng);
        let states = (0..num_states)
            .map(|_| StateRecord {
                emission: Emission::random(rng),
                next_on_0: rng.gen_range(0..num_states),
                next_on_1: rng.gen_range(0..num_states),
            })
            .collect();
        Ok(SdaGenome { initial_emission, states })
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.states.len();
        if n == 0 {
            return Err(DwpError::InvalidParameter("genome has no states".into()));
        }
        for (i, s) in self.states.iter().enumerate() {
            if s.next_on_0 >= n || s.next_on_1 >= n {
                return Err(DwpError::InvalidParameter(format!(
                    "state {i} transitions to ({}, {}) but only {n} states exist",
                    s.next_on_0, s.next_on_1
                )));
            }
        }
        Ok(())
    }

    pub fn num_states(&self) -> usize {
        self.states.len()
    }

    pub fn initial_emission(&self) -> Emission {
        self.initial_emission
    }

    pub fn states(&self) -> &[StateRecord] {
        &self.states
    }

    pub fn state(&self, i: usize) -> &StateRecord {
        &self.states[i]
    }

    pub(crate) fn parts_mut(&mut self) -> (&mut Emission, &mut [StateRecord]) {
        (&mut self.initial_emission, &mut self.states)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn emission_packing_is_msb_first() {
        let e: Emission = "10".parse().unwrap();
        assert!(e.bit(0));
        assert!(!e.bit(1));
        assert_eq!(e.to_string(), "10");
        assert_eq!(e, Emission::pair(true, false));
    }

    #[test]
    fn emission_rejects_bad_lengths_and_chars() {
        assert!("".parse::<Emission>().is_err());
        assert!("101".parse::<Emission>().is_err());
        assert!("1x".parse::<Emission>().is_err());
    }

    #[test]
    fn random_genome_holds_invariants() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let g = SdaGenome::random(12, &mut rng).unwrap();
        assert_eq!(g.num_states(), 12);
        g.validate().unwrap();
        assert!((1..=2).contains(&g.initial_emission().len()));
    }

    #[test]
    fn single_state_genome_points_at_itself() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let g = SdaGenome::random(1, &mut rng).unwrap();
        assert_eq!(g.state(0).next_on_0, 0);
        assert_eq!(g.state(0).next_on_1, 0);
    }

    #[test]
    fn random_genome_is_seed_deterministic() {
        let a = SdaGenome::random(4, &mut ChaCha8Rng::seed_from_u64(99)).unwrap();
        let b = SdaGenome::random(4, &mut ChaCha8Rng::seed_from_u64(99)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn zero_states_is_rejected() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        assert!(matches!(SdaGenome::random(0, &mut rng), Err(DwpError::InvalidParameter(_))));
    }

    #[test]
    fn out_of_range_transition_is_rejected() {
        let s = StateRecord { emission: Emission::single(true), next_on_0: 0, next_on_1: 1 };
        assert!(SdaGenome::new(Emission::single(true), vec![s]).is_err());
    }

    #[test]
    fn random_emission_lengths_are_balanced() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let n = 20_000;
        let twos = (0..n).filter(|_| Emission::random(&mut rng).len() == 2).count();
        let frac = twos as f64 / n as f64;
        assert!((frac - 0.5).abs() < 0.02, "fraction of length-2 emissions {frac}");
    }
}
