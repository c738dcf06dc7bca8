use std::collections::VecDeque;

use crate::error::{DwpError, Result};
use crate::sda::SdaGenome;

/// Largest integer width `next_int` will assemble.
pub const MAX_INT_BITS: u32 = 16;

/// Running bit source driven by its own output.
///
/// The queue holds bits the machine has emitted but not yet handed out.
/// Handing out a bit also feeds it back as the machine's next input, so the
/// output order and the input order are the same FIFO.
#[derive(Debug, Clone)]
pub struct SdaStream<'g> {
    genome: &'g SdaGenome,
    current_state: usize,
    queue: VecDeque<bool>,
    emitted: u64,
    consumed: u64,
}

impl<'g> SdaStream<'g> {
    pub fn new(genome: &'g SdaGenome) -> Self {
        let init = genome.initial_emission();
        let mut queue = VecDeque::with_capacity(16);
        queue.extend(init.iter());
        SdaStream {
            genome,
            current_state: 0,
            queue,
            emitted: init.len() as u64,
            consumed: 0,
        }
    }

    pub fn next_bit(&mut self) -> bool {
        // Each transition pushes at least one bit, so the queue never drains.
        let bit = self.queue.pop_front().expect("self-drive queue is never empty");
        self.consumed += 1;
        self.current_state = self.genome.state(self.current_state).next(bit);
        let emission = self.genome.state(self.current_state).emission;
        self.queue.extend(emission.iter());
        self.emitted += emission.len() as u64;
        bit
    }

    /// Reads `k` bits and folds them into an integer, first bit most significant.
    pub fn next_int(&mut self, k: u32) -> Result<u32> {
        if !(1..=MAX_INT_BITS).contains(&k) {
            return Err(DwpError::InvalidParameter(format!(
                "integer width must be in 1..={MAX_INT_BITS}, got {k}"
            )));
        }
        Ok(self.read_bits(k))
    }

    /// Unchecked variant for callers with compile-time widths.
    pub(crate) fn read_bits(&mut self, k: u32) -> u32 {
        debug_assert!((1..=MAX_INT_BITS).contains(&k));
        (0..k).fold(0u32, |acc, _| (acc << 1) | self.next_bit() as u32)
    }

    pub fn current_state(&self) -> usize {
        self.current_state
    }

    pub fn queue_len(&self) -> usize {
        self.queue.len()
    }

    /// Total bits the machine has emitted, including the initial emission.
    pub fn emitted_count(&self) -> u64 {
        self.emitted
    }

    /// Total bits handed out through `next_bit`.
    pub fn consumed_count(&self) -> u64 {
        self.consumed
    }

    pub fn genome(&self) -> &'g SdaGenome {
        self.genome
    }
}

impl Iterator for SdaStream<'_> {
    type Item = bool;

    fn next(&mut self) -> Option<bool> {
        Some(self.next_bit())
    }
}
