//! Crossover and mutation on the linear state list.

use rand::Rng;

use crate::error::{DwpError, Result};
use crate::sda::{Emission, SdaGenome};

/// Exchanges the states in `[lo, hi)` between two parents.
///
/// The initial emission is part of state 0's gene, so it is swapped exactly
/// when the exchanged segment covers index 0.
pub fn crossover_at(
    a: &SdaGenome,
    b: &SdaGenome,
    lo: usize,
    hi: usize,
) -> Result<(SdaGenome, SdaGenome)> {
    let n = a.num_states();
    if n != b.num_states() {
        return Err(DwpError::InvalidParameter(format!(
            "crossover parents differ in size ({n} vs {})",
            b.num_states()
        )));
    }
    let (lo, hi) = (lo.min(hi), lo.max(hi));
    if hi > n {
        return Err(DwpError::InvalidParameter(format!(
            "crossover cut {hi} exceeds state count {n}"
        )));
    }
    let mut c1 = a.clone();
    let mut c2 = b.clone();
    {
        let (init1, states1) = c1.parts_mut();
        let (init2, states2) = c2.parts_mut();
        states1[lo..hi].swap_with_slice(&mut states2[lo..hi]);
        if lo == 0 && hi > 0 {
            std::mem::swap(init1, init2);
        }
    }
    Ok((c1, c2))
}

/// Two-point crossover with both cuts drawn uniformly from `[0, n]`.
pub fn two_point_crossover<R: Rng + ?Sized>(
    a: &SdaGenome,
    b: &SdaGenome,
    rng: &mut R,
) -> Result<(SdaGenome, SdaGenome)> {
    if a.num_states() != b.num_states() {
        return Err(DwpError::InvalidParameter(format!(
            "crossover parents differ in size ({} vs {})",
            a.num_states(),
            b.num_states()
        )));
    }
    let n = a.num_states();
    let c1 = rng.gen_range(0..=n);
    let c2 = rng.gen_range(0..=n);
    crossover_at(a, b, c1, c2)
}

/// A single mutable position in a genome.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Locus {
    InitialEmission,
    Emission(usize),
    NextOn0(usize),
    NextOn1(usize),
}

impl Locus {
    pub fn count(num_states: usize) -> usize {
        3 * num_states + 1
    }

    /// Maps `0..3n+1` onto loci: the initial emission, then state emissions,
    /// then the two transition tables.
    pub fn from_index(index: usize, num_states: usize) -> Self {
        let n = num_states;
        match index {
            0 => Locus::InitialEmission,
            i if i <= n => Locus::Emission(i - 1),
            i if i <= 2 * n => Locus::NextOn0(i - n - 1),
            i if i <= 3 * n => Locus::NextOn1(i - 2 * n - 1),
            _ => panic!("locus index {index} out of range for {n} states"),
        }
    }

    pub fn is_emission(&self) -> bool {
        matches!(self, Locus::InitialEmission | Locus::Emission(_))
    }
}

/// Point mutation at a locus chosen uniformly over all `3n + 1` loci.
pub fn mutate<R: Rng + ?Sized>(g: &SdaGenome, rng: &mut R) -> SdaGenome {
    mutate_traced(g, rng).0
}

/// Like [`mutate`], also reporting which locus was hit.
///
/// An emission is regenerated until it differs from the old one, and a
/// transition is redirected to a different state whenever another state
/// exists. A one-state genome hit at a transition is returned unchanged.
pub fn mutate_traced<R: Rng + ?Sized>(g: &SdaGenome, rng: &mut R) -> (SdaGenome, Locus) {
    let n = g.num_states();
    let locus = Locus::from_index(rng.gen_range(0..Locus::count(n)), n);
    let mut child = g.clone();
    {
        let (init, states) = child.parts_mut();
        match locus {
            Locus::InitialEmission => *init = fresh_emission(*init, rng),
            Locus::Emission(i) => states[i].emission = fresh_emission(states[i].emission, rng),
            Locus::NextOn0(i) => states[i].next_on_0 = fresh_target(states[i].next_on_0, n, rng),
            Locus::NextOn1(i) => states[i].next_on_1 = fresh_target(states[i].next_on_1, n, rng),
        }
    }
    (child, locus)
}

fn fresh_emission<R: Rng + ?Sized>(old: Emission, rng: &mut R) -> Emission {
    loop {
        let e = Emission::random(rng);
        if e != old {
            return e;
        }
    }
}

fn fresh_target<R: Rng + ?Sized>(old: usize, n: usize, rng: &mut R) -> usize {
    if n == 1 {
        return 0;
    }
    let t = rng.gen_range(0..n - 1);
    if t >= old {
        t + 1
    } else {
        t
    }
}

/// Loci at which two same-sized genomes differ.
pub fn differing_loci(a: &SdaGenome, b: &SdaGenome) -> Vec<Locus> {
    assert_eq!(a.num_states(), b.num_states());
    let mut out = Vec::new();
    if a.initial_emission() != b.initial_emission() {
        out.push(Locus::InitialEmission);
    }
    for (i, (sa, sb)) in a.states().iter().zip(b.states()).enumerate() {
        if sa.emission != sb.emission {
            out.push(Locus::Emission(i));
        }
        if sa.next_on_0 != sb.next_on_0 {
            out.push(Locus::NextOn0(i));
        }
        if sa.next_on_1 != sb.next_on_1 {
            out.push(Locus::NextOn1(i));
        }
    }
    out
}
