use std::fs;
use std::io::Write;
use std::path::Path;

use anyhow::{bail, ensure, Context, Result};
use dwp::evolution::{run_ea, run_experiment, EaConfig, ExperimentResult, RunResult, DEFAULT_MATING_EVENTS};
use dwp::io::{
    parse_genome, parse_map_text, render_class_grid, render_image, render_text, serialize_genome,
    write_results_csv, write_summary_csv, RenderStyle,
};
use dwp::map::{build_map, BuilderConfig, LevelMap};
use serde::{Deserialize, Serialize};

use crate::args::{EvolveArgs, ExperimentArgs, RenderArgs, ReplayArgs, RunArgs, SweepArgs};

fn write_file(path: &Path, bytes: impl AsRef<[u8]>) -> Result<()> {
    fs::write(path, bytes).with_context(|| format!("writing {}", path.display()))
}

fn write_toml<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    write_file(path, toml::to_string(value).context("serializing config")?)
}

fn with_pool<T: Send>(jobs: usize, f: impl FnOnce() -> T + Send) -> Result<T> {
    let pool = rayon::ThreadPoolBuilder::new().num_threads(jobs).build()?;
    Ok(pool.install(f))
}

/// Writes the text dump and image of a map under `stem`.
fn write_map(dir: &Path, stem: &str, map: &LevelMap, cell_size: usize) -> Result<()> {
    write_file(&dir.join(format!("{stem}.txt")), render_text(map))?;
    let style = RenderStyle::default().with_cell_size(cell_size);
    write_file(&dir.join(format!("{stem}.ppm")), render_image(map, &style)?)
}

fn write_trace(path: &Path, runs: &[RunResult]) -> Result<()> {
    let mut out = String::from("run,event,best_fitness\n");
    for (i, r) in runs.iter().enumerate() {
        for p in &r.fitness_trace {
            out.push_str(&format!("{i},{},{}\n", p.event, p.best_fitness));
        }
    }
    write_file(path, out)
}

fn write_run_artifacts(dir: &Path, e: &ExperimentResult, cell_size: usize) -> Result<()> {
    for (i, r) in e.runs.iter().enumerate() {
        let stem = format!("run_{i:02}");
        write_file(&dir.join(format!("{stem}.genome")), serialize_genome(&r.best_genome))?;
        let map = build_map(&r.best_genome, &e.config.builder)?;
        write_map(dir, &stem, &map, cell_size)?;
    }
    Ok(())
}

fn write_tables(dir: &Path, experiments: &[&ExperimentResult]) -> Result<()> {
    let mut results = Vec::new();
    write_results_csv(&mut results, experiments)?;
    write_file(&dir.join("results.csv"), results)?;
    let mut summary = Vec::new();
    write_summary_csv(&mut summary, experiments)?;
    write_file(&dir.join("summary.csv"), summary)
}

fn apply_run_overrides(cfg: &mut EaConfig, run: &RunArgs) {
    if let Some(runs) = run.runs {
        cfg.runs = runs;
    }
    if let Some(seed) = run.seed {
        cfg.seed = seed;
    }
    if let Some(events) = run.events {
        cfg.mating_events = events;
    }
}

pub fn experiment(args: &ExperimentArgs) -> Result<()> {
    let (id, mut cfg) = match (&args.id, &args.config) {
        (Some(id), _) => (id.to_string(), EaConfig::table(*id)?),
        (None, Some(path)) => {
            let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            let cfg: EaConfig = toml::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
            let id = path.file_stem().map_or("custom".into(), |s| s.to_string_lossy().into_owned());
            (id, cfg)
        }
        (None, None) => bail!("either --id or --config is required"),
    };
    apply_run_overrides(&mut cfg, &args.run);
    cfg.validate()?;

    let dir = &args.run.out;
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    write_toml(&dir.join("config.toml"), &cfg)?;

    let result = with_pool(args.run.jobs, || run_experiment(id, &cfg))??;
    write_tables(dir, &[&result])?;
    write_trace(&dir.join("trace.csv"), &result.runs)?;
    write_run_artifacts(dir, &result, args.run.cell_size)?;

    let s = result.summary;
    println!(
        "experiment {}: {} runs, best fitness min {:.2} q1 {:.2} median {:.2} q3 {:.2} max {:.2}",
        result.id,
        result.runs.len(),
        s.min,
        s.q1,
        s.median,
        s.q3,
        s.max
    );
    Ok(())
}

pub fn evolve(args: &EvolveArgs) -> Result<()> {
    let cfg = EaConfig {
        population_size: args.population,
        mnm: args.mnm,
        num_states: args.states,
        mating_events: args.events,
        builder: args.builder.resolve()?,
        seed: args.seed,
        runs: 1,
    };
    cfg.validate()?;
    let dir = &args.out;
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    write_toml(&dir.join("config.toml"), &cfg)?;

    let run = run_ea(&cfg, cfg.seed)?;
    write_file(&dir.join("best.genome"), serialize_genome(&run.best_genome))?;
    let map = build_map(&run.best_genome, &cfg.builder)?;
    write_map(dir, "best", &map, args.cell_size)?;
    write_trace(&dir.join("trace.csv"), std::slice::from_ref(&run))?;
    println!(
        "best fitness {} with {} rooms (A {}, B {})",
        run.best_fitness, run.rooms_placed, run.area, run.bbox_area
    );
    Ok(())
}

/// Builder settings and render size recorded next to replay output.
#[derive(Serialize)]
struct ReplayRecord<'a> {
    genome: String,
    cell_size: usize,
    builder: &'a BuilderConfig,
}

pub fn replay(args: &ReplayArgs) -> Result<()> {
    let text = fs::read_to_string(&args.genome)
        .with_context(|| format!("reading {}", args.genome.display()))?;
    let genome = parse_genome(&text).with_context(|| format!("parsing {}", args.genome.display()))?;
    let builder = args.builder.resolve()?;
    let map = build_map(&genome, &builder)?;

    let stem = args
        .genome
        .file_stem()
        .map_or("replay".into(), |s| s.to_string_lossy().into_owned());
    let dir = &args.out;
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let record = ReplayRecord {
        genome: args.genome.display().to_string(),
        cell_size: args.cell_size,
        builder: &builder,
    };
    write_toml(&dir.join(format!("{stem}.replay.toml")), &record)?;
    write_map(dir, &format!("{stem}.map"), &map, args.cell_size)?;

    let bbox = map.bounding_box()?;
    let mut out = std::io::stdout().lock();
    writeln!(out, "A {}", map.area())?;
    writeln!(out, "B {}", bbox.area())?;
    writeln!(out, "fitness {}", map.fitness()?)?;
    writeln!(out, "rooms {}", map.rooms().len())?;
    writeln!(out, "proposals {}", map.proposed())?;
    writeln!(out, "rejected {}", map.rejected())?;
    Ok(())
}

#[derive(Serialize)]
struct RenderRecord {
    map: String,
    cell_size: usize,
    outline: bool,
}

pub fn render(args: &RenderArgs) -> Result<()> {
    let text = fs::read_to_string(&args.map).with_context(|| format!("reading {}", args.map.display()))?;
    let grid = parse_map_text(&text).with_context(|| format!("parsing {}", args.map.display()))?;
    let mut style = RenderStyle::default().with_cell_size(args.cell_size);
    if args.no_outline {
        style.outline = None;
    }
    write_file(&args.out, render_class_grid(&grid, &style)?)?;
    let record = RenderRecord {
        map: args.map.display().to_string(),
        cell_size: args.cell_size,
        outline: !args.no_outline,
    };
    write_toml(&args.out.with_extension("toml"), &record)
}

/// Parameter grid for `sweep`. Every listed key must be non-empty; missing
/// keys keep the single default value.
#[derive(Debug, Default, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct SweepGrid {
    pub population_size: Option<Vec<usize>>,
    pub mnm: Option<Vec<usize>>,
    pub num_states: Option<Vec<usize>>,
    pub rrh: Option<Vec<bool>>,
    pub mating_events: Option<Vec<usize>>,
}

impl SweepGrid {
    pub fn parse(text: &str) -> Result<Self> {
        let grid: SweepGrid = toml::from_str(text)?;
        let lists = [
            ("population_size", grid.population_size.as_ref().map(Vec::len)),
            ("mnm", grid.mnm.as_ref().map(Vec::len)),
            ("num_states", grid.num_states.as_ref().map(Vec::len)),
            ("rrh", grid.rrh.as_ref().map(Vec::len)),
            ("mating_events", grid.mating_events.as_ref().map(Vec::len)),
        ];
        ensure!(lists.iter().any(|(_, l)| l.is_some()), "parameter grid lists no parameters");
        if let Some((key, _)) = lists.iter().find(|(_, l)| *l == Some(0)) {
            bail!("parameter grid key `{key}` has no values");
        }
        Ok(grid)
    }

    /// Cartesian product over `base`, in row-major order of the fields above.
    pub fn expand(&self, base: &EaConfig) -> Vec<EaConfig> {
        let pick = |v: &Option<Vec<usize>>, d: usize| v.clone().unwrap_or_else(|| vec![d]);
        let pops = pick(&self.population_size, base.population_size);
        let mnms = pick(&self.mnm, base.mnm);
        let states = pick(&self.num_states, base.num_states);
        let rrhs = self.rrh.clone().unwrap_or_else(|| vec![base.builder.rrh_enabled]);
        let events = pick(&self.mating_events, base.mating_events);
        let mut out = Vec::new();
        for &population_size in &pops {
            for &mnm in &mnms {
                for &num_states in &states {
                    for &rrh in &rrhs {
                        for &mating_events in &events {
                            out.push(EaConfig {
                                population_size,
                                mnm,
                                num_states,
                                mating_events,
                                builder: base.builder.clone().with_rrh(rrh),
                                ..base.clone()
                            });
                        }
                    }
                }
            }
        }
        out
    }
}

#[derive(Serialize)]
struct SweepRecord<'a> {
    base: &'a EaConfig,
    grid: &'a SweepGrid,
}

pub fn sweep(args: &SweepArgs) -> Result<()> {
    let text = fs::read_to_string(&args.params).with_context(|| format!("reading {}", args.params.display()))?;
    let grid = SweepGrid::parse(&text).with_context(|| format!("parsing {}", args.params.display()))?;

    let mut base = EaConfig {
        builder: args.builder.resolve()?,
        mating_events: DEFAULT_MATING_EVENTS,
        ..Default::default()
    };
    apply_run_overrides(&mut base, &args.run);
    let configs = grid.expand(&base);
    for c in &configs {
        c.validate()?;
    }

    let dir = &args.run.out;
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    write_toml(&dir.join("config.toml"), &SweepRecord { base: &base, grid: &grid })?;

    let results = with_pool(args.run.jobs, || {
        configs
            .iter()
            .enumerate()
            .map(|(i, c)| run_experiment((i + 1).to_string(), c))
            .collect::<dwp::Result<Vec<_>>>()
    })??;

    let refs: Vec<&ExperimentResult> = results.iter().collect();
    write_tables(dir, &refs)?;

    let mut out = String::from("experiment,population_size,mnm,num_states,rrh,mating_events,min,q1,median,q3,max\n");
    for e in &results {
        let (c, s) = (&e.config, &e.summary);
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{},{}\n",
            e.id,
            c.population_size,
            c.mnm,
            c.num_states,
            c.builder.rrh_enabled,
            c.mating_events,
            s.min,
            s.q1,
            s.median,
            s.q3,
            s.max
        ));
    }
    write_file(&dir.join("sweep_summary.csv"), out)?;
    println!("sweep: {} experiments written to {}", results.len(), dir.display());
    Ok(())
}
