//! CSV tables for experiment output.

use std::io::Write;

use serde::Serialize;

use crate::evolution::{ExperimentResult, Summary};

#[derive(Debug, Serialize)]
struct RunRow<'a> {
    experiment: &'a str,
    run: usize,
    seed: u64,
    best_fitness: f64,
    rooms_placed: usize,
    area: u64,
    bbox_area: u64,
}

#[derive(Debug, Serialize)]
struct SummaryRow<'a> {
    experiment: &'a str,
    min: f64,
    q1: f64,
    median: f64,
    q3: f64,
    max: f64,
}

impl<'a> SummaryRow<'a> {
    fn new(experiment: &'a str, s: Summary) -> Self {
        SummaryRow { experiment, min: s.min, q1: s.q1, median: s.median, q3: s.q3, max: s.max }
    }
}

pub const RESULTS_HEADER: &str = "experiment,run,seed,best_fitness,rooms_placed,area,bbox_area";
pub const SUMMARY_HEADER: &str = "experiment,min,q1,median,q3,max";

/// One row per run.
pub fn write_results_csv<W: Write>(w: W, experiments: &[&ExperimentResult]) -> csv::Result<()> {
    let mut wtr = csv::Writer::from_writer(w);
    if experiments.iter().all(|e| e.runs.is_empty()) {
        wtr.write_record(RESULTS_HEADER.split(','))?;
    }
    for e in experiments {
        for (run, r) in e.runs.iter().enumerate() {
            wtr.serialize(RunRow {
                experiment: &e.id,
                run,
                seed: r.seed,
                best_fitness: r.best_fitness,
                rooms_placed: r.rooms_placed,
                area: r.area,
                bbox_area: r.bbox_area,
            })?;
        }
    }
    wtr.flush()?;
    Ok(())
}

/// One five-number summary row per experiment.
pub fn write_summary_csv<W: Write>(w: W, experiments: &[&ExperimentResult]) -> csv::Result<()> {
    let mut wtr = csv::Writer::from_writer(w);
    if experiments.is_empty() {
        wtr.write_record(SUMMARY_HEADER.split(','))?;
    }
    for e in experiments {
        wtr.serialize(SummaryRow::new(&e.id, e.summary))?;
    }
    wtr.flush()?;
    Ok(())
}
