use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use dwp::io::parse_mask;
use dwp::map::{BuilderConfig, Rect, DEFAULT_MAX_ROOMS, DEFAULT_PROPOSAL_BUDGET, DEFAULT_RRH_WINDOW};

#[derive(Debug, Parser)]
#[command(name = "dwp", version, about = "Evolve and replay self-driving-automaton level-map generators")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run a built-in experiment (1-23) or a custom config file.
    Experiment(ExperimentArgs),
    /// Run a single evolutionary search with explicit parameters.
    Evolve(EvolveArgs),
    /// Rebuild the map of a saved genome and render it.
    Replay(ReplayArgs),
    /// Render a map text dump to an image.
    Render(RenderArgs),
    /// Run every combination in a parameter grid file.
    Sweep(SweepArgs),
}

fn seed_parser() -> clap::builder::RangedU64ValueParser {
    // Seeds are recorded in TOML, whose integers are signed 64-bit.
    clap::value_parser!(u64).range(0..=i64::MAX as u64)
}

#[derive(Debug, Args)]
pub struct RunArgs {
    /// Independent runs.
    #[arg(long)]
    pub runs: Option<usize>,
    /// Master seed.
    #[arg(long, value_parser = seed_parser())]
    pub seed: Option<u64>,
    /// Override the number of mating events.
    #[arg(long)]
    pub events: Option<usize>,
    /// Worker threads for independent runs (0 = one per core).
    #[arg(long, default_value_t = 0)]
    pub jobs: usize,
    /// Output directory.
    #[arg(long, short)]
    pub out: PathBuf,
    /// Pixels per grid cell in rendered maps.
    #[arg(long, default_value_t = 6)]
    pub cell_size: usize,
}

#[derive(Debug, Args)]
pub struct ExperimentArgs {
    /// Built-in experiment number.
    #[arg(long, conflicts_with = "config", required_unless_present = "config")]
    pub id: Option<u32>,
    /// TOML experiment config (as written to `config.toml` by earlier runs).
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[command(flatten)]
    pub run: RunArgs,
}

#[derive(Debug, Args)]
pub struct EvolveArgs {
    #[arg(long, default_value_t = 32)]
    pub population: usize,
    /// Maximum mutations per child.
    #[arg(long, default_value_t = 1)]
    pub mnm: usize,
    #[arg(long, default_value_t = 12)]
    pub states: usize,
    #[arg(long, default_value_t = 10_000)]
    pub events: usize,
    #[arg(long, default_value_t = 1, value_parser = seed_parser())]
    pub seed: u64,
    #[arg(long, short)]
    pub out: PathBuf,
    #[arg(long, default_value_t = 6)]
    pub cell_size: usize,
    #[command(flatten)]
    pub builder: BuilderArgs,
}

#[derive(Debug, Args)]
pub struct ReplayArgs {
    /// Genome file.
    pub genome: PathBuf,
    /// Directory for the text dump and image.
    #[arg(long, short, default_value = ".")]
    pub out: PathBuf,
    #[arg(long, default_value_t = 6)]
    pub cell_size: usize,
    #[command(flatten)]
    pub builder: BuilderArgs,
}

#[derive(Debug, Args)]
pub struct RenderArgs {
    /// Map text dump.
    pub map: PathBuf,
    /// Output image (PPM).
    #[arg(long, short)]
    pub out: PathBuf,
    #[arg(long, default_value_t = 6)]
    pub cell_size: usize,
    /// Skip room outlines.
    #[arg(long)]
    pub no_outline: bool,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    /// TOML parameter grid.
    pub params: PathBuf,
    #[command(flatten)]
    pub run: RunArgs,
    #[command(flatten)]
    pub builder: BuilderArgs,
}

#[derive(Debug, Args, Clone)]
pub struct BuilderArgs {
    /// Grid size as WIDTHxHEIGHT.
    #[arg(long, default_value = "80x80", value_parser = parse_grid)]
    pub grid: (usize, usize),
    #[arg(long, default_value_t = DEFAULT_MAX_ROOMS)]
    pub max_rooms: usize,
    #[arg(long, default_value_t = DEFAULT_PROPOSAL_BUDGET)]
    pub proposal_budget: usize,
    /// Enable the recent-room hack.
    #[arg(long)]
    pub rrh: bool,
    #[arg(long, default_value_t = DEFAULT_RRH_WINDOW)]
    pub rrh_window: usize,
    /// Initial room as x,y,w,h; repeat for several. Defaults to a centred 4x4.
    #[arg(long = "initial-room", value_parser = parse_rect)]
    pub initial_rooms: Vec<Rect>,
    /// Arena mask file.
    #[arg(long)]
    pub mask: Option<PathBuf>,
}

impl BuilderArgs {
    pub fn resolve(&self) -> Result<BuilderConfig> {
        let (width, height) = self.grid;
        let forbidden_mask = match &self.mask {
            Some(path) => {
                let text = std::fs::read_to_string(path)
                    .with_context(|| format!("reading mask {}", path.display()))?;
                Some(parse_mask(&text).with_context(|| format!("parsing mask {}", path.display()))?)
            }
            None => None,
        };
        let cfg = BuilderConfig {
            width,
            height,
            max_rooms: self.max_rooms,
            proposal_budget: self.proposal_budget,
            rrh_enabled: self.rrh,
            rrh_window: self.rrh_window,
            initial_rooms: self.initial_rooms.clone(),
            forbidden_mask,
        };
        cfg.validate()?;
        Ok(cfg)
    }
}

fn parse_grid(s: &str) -> Result<(usize, usize)> {
    let Some((w, h)) = s.split_once(['x', 'X']) else {
        bail!("expected WIDTHxHEIGHT, got {s:?}");
    };
    Ok((w.trim().parse()?, h.trim().parse()?))
}

fn parse_rect(s: &str) -> Result<Rect> {
    let v: Vec<i32> = s.split(',').map(|t| t.trim().parse()).collect::<Result<_, _>>()?;
    let [x, y, w, h] = v[..] else {
        bail!("expected x,y,w,h, got {s:?}");
    };
    Ok(Rect::new(x, y, w, h))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_and_rect_parsing() {
        assert_eq!(parse_grid("120x120").unwrap(), (120, 120));
        assert_eq!(parse_grid("40X8").unwrap(), (40, 8));
        assert!(parse_grid("40").is_err());
        assert_eq!(parse_rect("20,39,40,2").unwrap(), Rect::new(20, 39, 40, 2));
        assert!(parse_rect("1,2,3").is_err());
    }

    #[test]
    fn argument_definitions_are_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}

