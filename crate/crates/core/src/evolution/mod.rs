//! Steady-state evolutionary search over self-driving automata.

mod config;
mod ea;
mod experiment;

pub use config::{
    EaConfig, DEFAULT_MATING_EVENTS, DEFAULT_RUNS, DEFAULT_SEED, TABLE_ROWS, TOURNAMENT_SIZE,
};
pub use ea::{
    evaluate, run_ea, tournament_event, MatingRecord, Population, RunResult, TracePoint,
};
pub use experiment::{
    derive_run_seed, run_experiment, run_table_experiment, ExperimentResult, Summary,
};
