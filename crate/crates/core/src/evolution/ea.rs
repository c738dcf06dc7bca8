use std::cmp::Ordering;

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{DwpError, Result};
use crate::evolution::{EaConfig, TOURNAMENT_SIZE};
use crate::map::{build_map, BuilderConfig};
use crate::sda::{mutate, two_point_crossover, SdaGenome};

/// Fitness of the map a genome builds.
pub fn evaluate(genome: &SdaGenome, builder: &BuilderConfig) -> Result<f64> {
    build_map(genome, builder)?.fitness()
}

#[derive(Debug, Clone)]
pub struct Population {
    members: Vec<SdaGenome>,
    fitness: Vec<f64>,
}

impl Population {
    pub fn random<R: Rng + ?Sized>(cfg: &EaConfig, rng: &mut R) -> Result<Self> {
        let members = (0..cfg.population_size)
            .map(|_| SdaGenome::random(cfg.num_states, rng))
            .collect::<Result<Vec<_>>>()?;
        Population::evaluated(members, &cfg.builder)
    }

    pub fn evaluated(members: Vec<SdaGenome>, builder: &BuilderConfig) -> Result<Self> {
        let fitness = members.iter().map(|g| evaluate(g, builder)).collect::<Result<_>>()?;
        Ok(Population { members, fitness })
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn members(&self) -> &[SdaGenome] {
        &self.members
    }

    pub fn fitness(&self) -> &[f64] {
        &self.fitness
    }

    /// Index of the fittest member, lowest index on ties.
    pub fn best(&self) -> usize {
        (0..self.len()).min_by(|&a, &b| self.rank(a, b)).expect("population is non-empty")
    }

    /// Total order used everywhere selection happens: higher fitness first,
    /// then lower index first.
    fn rank(&self, a: usize, b: usize) -> Ordering {
        self.fitness[b].total_cmp(&self.fitness[a]).then(a.cmp(&b))
    }
}

/// What one mating event did, for inspection and tests.
#[derive(Debug, Clone, PartialEq)]
pub struct MatingRecord {
    /// Sampled members, best first.
    pub ranked: [usize; TOURNAMENT_SIZE],
    /// Indices that received the two children (worst, then second worst).
    pub replaced: [usize; 2],
    pub child_fitness: [f64; 2],
}

/// One steady-state update: sample seven distinct members, cross the best two
/// and write their mutated children over the worst two.
pub fn tournament_event<R: Rng + ?Sized>(
    pop: &mut Population,
    rng: &mut R,
    cfg: &EaConfig,
) -> Result<MatingRecord> {
    if pop.len() < TOURNAMENT_SIZE {
        return Err(DwpError::Config(format!(
            "population of {} cannot hold a tournament of {TOURNAMENT_SIZE}",
            pop.len()
        )));
    }
    let mut ranked = [0usize; TOURNAMENT_SIZE];
    for (slot, i) in ranked.iter_mut().zip(index::sample(rng, pop.len(), TOURNAMENT_SIZE)) {
        *slot = i;
    }
    ranked.sort_by(|&a, &b| pop.rank(a, b));

    let (first, second) = (&pop.members[ranked[0]], &pop.members[ranked[1]]);
    let (mut c1, mut c2) = two_point_crossover(first, second, rng)?;
    for child in [&mut c1, &mut c2] {
        let m = rng.gen_range(1..=cfg.mnm);
        for _ in 0..m {
            *child = mutate(child, rng);
        }
    }

    let replaced = [ranked[TOURNAMENT_SIZE - 1], ranked[TOURNAMENT_SIZE - 2]];
    let mut child_fitness = [0.0; 2];
    for ((slot, child), f) in replaced.into_iter().zip([c1, c2]).zip(child_fitness.iter_mut()) {
        *f = evaluate(&child, &cfg.builder)?;
        pop.members[slot] = child;
        pop.fitness[slot] = *f;
    }
    Ok(MatingRecord { ranked, replaced, child_fitness })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TracePoint {
    /// Mating events completed when this value was reached.
    pub event: usize,
    pub best_fitness: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunResult {
    pub seed: u64,
    pub best_genome: SdaGenome,
    pub best_fitness: f64,
    /// Best-so-far fitness, recorded at event 0 and at every improvement.
    pub fitness_trace: Vec<TracePoint>,
    pub rooms_placed: usize,
    pub area: u64,
    pub bbox_area: u64,
}

/// One complete evolutionary run, fully determined by `(cfg, run_seed)`.
pub fn run_ea(cfg: &EaConfig, run_seed: u64) -> Result<RunResult> {
    cfg.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(run_seed);
    let mut pop = Population::random(cfg, &mut rng)?;

    let mut best = pop.best();
    let mut best_genome = pop.members[best].clone();
    let mut best_fitness = pop.fitness[best];
    let mut fitness_trace = vec![TracePoint { event: 0, best_fitness }];

    for event in 1..=cfg.mating_events {
        let rec = tournament_event(&mut pop, &mut rng, cfg)?;
        if rec.child_fitness.iter().any(|&f| f > best_fitness) {
            best = pop.best();
            best_genome = pop.members[best].clone();
            best_fitness = pop.fitness[best];
            fitness_trace.push(TracePoint { event, best_fitness });
        }
    }

    let map = build_map(&best_genome, &cfg.builder)?;
    Ok(RunResult {
        seed: run_seed,
        best_genome,
        best_fitness,
        fitness_trace,
        rooms_placed: map.rooms().len(),
        area: map.area(),
        bbox_area: map.bounding_box()?.area(),
    })
}
