use serde::{Deserialize, Serialize};

use crate::error::{DwpError, Result};
use crate::map::{BuilderConfig, DEFAULT_MAX_ROOMS, DEFAULT_PROPOSAL_BUDGET};

pub const TOURNAMENT_SIZE: usize = 7;
pub const DEFAULT_MATING_EVENTS: usize = 10_000;
pub const DEFAULT_RUNS: usize = 30;
pub const DEFAULT_SEED: u64 = 1;

/// Number of built-in experiments.
pub const TABLE_ROWS: u32 = 23;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct EaConfig {
    pub population_size: usize,
    /// Maximum number of mutations applied to each child.
    pub mnm: usize,
    pub num_states: usize,
    pub mating_events: usize,
    pub builder: BuilderConfig,
    /// Master seed; per-run seeds are derived from it.
    pub seed: u64,
    pub runs: usize,
}

impl Default for EaConfig {
    fn default() -> Self {
        EaConfig {
            population_size: 32,
            mnm: 1,
            num_states: 12,
            mating_events: DEFAULT_MATING_EVENTS,
            builder: BuilderConfig::default(),
            seed: DEFAULT_SEED,
            runs: DEFAULT_RUNS,
        }
    }
}

impl EaConfig {
    pub fn validate(&self) -> Result<()> {
        if self.population_size < TOURNAMENT_SIZE {
            return Err(DwpError::Config(format!(
                "population_size {} is smaller than the tournament ({TOURNAMENT_SIZE})",
                self.population_size
            )));
        }
        if self.mnm == 0 {
            return Err(DwpError::Config("mnm must be at least 1".into()));
        }
        if self.num_states == 0 {
            return Err(DwpError::Config("num_states must be at least 1".into()));
        }
        self.builder.validate()
    }

    /// Built-in experiment `id` (1..=23).
    ///
    /// Rows 1-15 sweep population {10, 32, 100, 320, 1000} against
    /// MNM {1, 3, 5} without the recent-room hack. Row 16 adds the hack to
    /// the best of those, rows 17-21 sweep {4, 8, 12, 16, 20} states with it,
    /// row 22 is the long run on a 120x120 grid with 800 rooms and row 23
    /// starts from a 40x2 room.
    pub fn table(id: u32) -> Result<EaConfig> {
        const POPS: [usize; 5] = [10, 32, 100, 320, 1000];
        const MNMS: [usize; 3] = [1, 3, 5];
        const STATES: [usize; 5] = [4, 8, 12, 16, 20];

        let base = EaConfig::default();
        let rrh = BuilderConfig::default().with_rrh(true);
        let cfg = match id {
            1..=15 => {
                let i = (id - 1) as usize;
                EaConfig { population_size: POPS[i % 5], mnm: MNMS[i / 5], ..base }
            }
            16 => EaConfig { builder: rrh, ..base },
            17..=21 => EaConfig { num_states: STATES[(id - 17) as usize], builder: rrh, ..base },
            22 => {
                let max_rooms = 800;
                let builder = rrh
                    .with_grid(120, 120)
                    .with_max_rooms(max_rooms)
                    .with_proposal_budget(DEFAULT_PROPOSAL_BUDGET * max_rooms / DEFAULT_MAX_ROOMS);
                EaConfig { num_states: 16, mating_events: 100_000, builder, ..base }
            }
            23 => {
                let start = rrh.centered(40, 2);
                EaConfig { num_states: 16, builder: rrh.with_initial_rooms(vec![start]), ..base }
            }
            _ => {
                return Err(DwpError::Config(format!(
                    "unknown experiment {id}; built-in experiments are 1..={TABLE_ROWS}"
                )))
            }
        };
        Ok(cfg)
    }
}
