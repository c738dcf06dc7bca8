use serde::{Deserialize, Serialize};

use crate::error::{DwpError, Result};
use crate::map::proposal::{propose_room, RoomProposal, FOCAL_BITS, RECENT_FOCAL_BITS};
use crate::map::{CellState, ForbiddenMask, Grid, Rect, Room, RoomKind};
use crate::sda::{SdaGenome, SdaStream};

pub const DEFAULT_GRID: usize = 80;
pub const DEFAULT_MAX_ROOMS: usize = 256;
pub const DEFAULT_PROPOSAL_BUDGET: usize = 5000;
pub const DEFAULT_RRH_WINDOW: usize = 10;
pub const DEFAULT_START_SIDE: i32 = 4;

/// Everything that shapes map construction apart from the genome.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct BuilderConfig {
    pub width: usize,
    pub height: usize,
    /// Cap on rooms, counting the initial ones.
    pub max_rooms: usize,
    /// Cap on proposals, accepted or rejected.
    pub proposal_budget: usize,
    /// Recent-room hack: choose focal rooms only among the newest few.
    pub rrh_enabled: bool,
    pub rrh_window: usize,
    /// Empty means one 4x4 room centred on the grid.
    pub initial_rooms: Vec<Rect>,
    pub forbidden_mask: Option<ForbiddenMask>,
}

impl Default for BuilderConfig {
    fn default() -> Self {
        BuilderConfig {
            width: DEFAULT_GRID,
            height: DEFAULT_GRID,
            max_rooms: DEFAULT_MAX_ROOMS,
            proposal_budget: DEFAULT_PROPOSAL_BUDGET,
            rrh_enabled: false,
            rrh_window: DEFAULT_RRH_WINDOW,
            initial_rooms: Vec::new(),
            forbidden_mask: None,
        }
    }
}

impl BuilderConfig {
    pub fn with_grid(mut self, width: usize, height: usize) -> Self {
        self.width = width;
        self.height = height;
        self
    }

    pub fn with_max_rooms(mut self, max_rooms: usize) -> Self {
        self.max_rooms = max_rooms;
        self
    }

    pub fn with_rrh(mut self, enabled: bool) -> Self {
        self.rrh_enabled = enabled;
        self
    }

    pub fn with_initial_rooms(mut self, rooms: Vec<Rect>) -> Self {
        self.initial_rooms = rooms;
        self
    }

    pub fn with_mask(mut self, mask: ForbiddenMask) -> Self {
        self.forbidden_mask = Some(mask);
        self
    }

    pub fn with_proposal_budget(mut self, budget: usize) -> Self {
        self.proposal_budget = budget;
        self
    }

    /// A `w` x `h` rectangle centred on the grid, rounding toward the origin.
    pub fn centered(&self, w: i32, h: i32) -> Rect {
        Rect::new((self.width as i32 - w) / 2, (self.height as i32 - h) / 2, w, h)
    }

    pub fn resolved_initial_rooms(&self) -> Vec<Rect> {
        if self.initial_rooms.is_empty() {
            vec![self.centered(DEFAULT_START_SIDE, DEFAULT_START_SIDE)]
        } else {
            self.initial_rooms.clone()
        }
    }

    pub fn bits_per_proposal(&self) -> u32 {
        super::proposal::bits_per_proposal(self.rrh_enabled)
    }

    pub fn validate(&self) -> Result<()> {
        let cfg_err = |m: String| Err(DwpError::Config(m));
        if self.width == 0 || self.height == 0 {
            return cfg_err(format!("grid must be non-empty, got {}x{}", self.width, self.height));
        }
        if i32::try_from(self.width * self.height).is_err() {
            return cfg_err("grid too large".into());
        }
        if self.max_rooms == 0 {
            return cfg_err("max_rooms must be at least 1".into());
        }
        if self.rrh_enabled {
            let reach = 1usize << RECENT_FOCAL_BITS;
            if !(1..=reach).contains(&self.rrh_window) {
                return cfg_err(format!("rrh_window must be in 1..={reach}, got {}", self.rrh_window));
            }
        } else if self.max_rooms > 1 << FOCAL_BITS {
            return cfg_err(format!(
                "max_rooms {} exceeds the {} rooms an {FOCAL_BITS}-bit selector can reach; enable the recent-room hack",
                self.max_rooms,
                1 << FOCAL_BITS
            ));
        }
        if let Some(mask) = &self.forbidden_mask {
            if mask.width() != self.width || mask.height() != self.height {
                return cfg_err(format!(
                    "mask is {}x{} but grid is {}x{}",
                    mask.width(),
                    mask.height(),
                    self.width,
                    self.height
                ));
            }
        }
        let rooms = self.resolved_initial_rooms();
        for (i, r) in rooms.iter().enumerate() {
            if r.w < 1 || r.h < 1 {
                return cfg_err(format!("initial room {i} has empty extent {}x{}", r.w, r.h));
            }
            if r.x < 0 || r.y < 0 || r.right() as usize > self.width || r.bottom() as usize > self.height {
                return cfg_err(format!("initial room {i} at {r:?} is off the grid"));
            }
            if let Some(mask) = &self.forbidden_mask {
                if r.cells().any(|(x, y)| mask.is_forbidden(x as usize, y as usize)) {
                    return cfg_err(format!("initial room {i} covers forbidden cells"));
                }
            }
            if let Some(j) = rooms[..i].iter().position(|o| o.intersects(r)) {
                return cfg_err(format!("initial rooms {j} and {i} overlap"));
            }
        }
        Ok(())
    }
}

/// A level map under construction: occupancy plus the ordered room list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelMap {
    grid: Grid,
    rooms: Vec<Room>,
    area: u64,
    bbox: Option<Rect>,
    proposed: u64,
    rejected: u64,
}

impl LevelMap {
    /// Empty map honouring the mask, without any rooms.
    pub fn empty(cfg: &BuilderConfig) -> Self {
        let grid = match &cfg.forbidden_mask {
            Some(mask) => Grid::with_mask(mask),
            None => Grid::new(cfg.width, cfg.height),
        };
        LevelMap { grid, rooms: Vec::new(), area: 0, bbox: None, proposed: 0, rejected: 0 }
    }

    /// Map holding just the configured initial rooms.
    pub fn seeded(cfg: &BuilderConfig) -> Result<Self> {
        cfg.validate()?;
        let mut map = LevelMap::empty(cfg);
        for r in cfg.resolved_initial_rooms() {
            map.insert(r, RoomKind::Start);
        }
        Ok(map)
    }

    fn insert(&mut self, rect: Rect, kind: RoomKind) -> usize {
        let id = self.rooms.len();
        self.grid.fill(&rect, id as u32);
        self.rooms.push(Room { id, rect, kind });
        self.area += rect.area();
        self.bbox = Some(match self.bbox {
            Some(b) => b.union(&rect),
            None => rect,
        });
        id
    }

    /// Generative possibility filter: the footprint is on the grid and
    /// touches only empty, non-forbidden cells.
    pub fn admissible(&self, p: &RoomProposal) -> bool {
        self.grid.is_free(&p.rect)
    }

    pub fn place(&mut self, p: &RoomProposal) -> Result<usize> {
        if !self.admissible(p) {
            return Err(DwpError::Contract(format!("proposal at {:?} is not admissible", p.rect)));
        }
        let focal = self.rooms.get(p.focal_room_id).ok_or_else(|| {
            DwpError::Contract(format!("focal room {} does not exist", p.focal_room_id))
        })?;
        if p.rect.shared_wall(&focal.rect) < 1 {
            return Err(DwpError::Contract(format!(
                "proposal at {:?} shares no wall with focal room {}",
                p.rect, p.focal_room_id
            )));
        }
        Ok(self.insert(p.rect, p.kind))
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn width(&self) -> usize {
        self.grid.width()
    }

    pub fn height(&self) -> usize {
        self.grid.height()
    }

    pub fn rooms(&self) -> &[Room] {
        &self.rooms
    }

    pub fn room(&self, id: usize) -> &Room {
        &self.rooms[id]
    }

    /// Occupied cell count `A`.
    pub fn area(&self) -> u64 {
        self.area
    }

    pub fn proposed(&self) -> u64 {
        self.proposed
    }

    pub fn rejected(&self) -> u64 {
        self.rejected
    }

    pub fn cell(&self, x: usize, y: usize) -> CellState {
        self.grid.get(x, y)
    }

    pub fn kind_at(&self, x: usize, y: usize) -> Option<RoomKind> {
        match self.grid.get(x, y) {
            CellState::Occupied(id) => Some(self.rooms[id as usize].kind),
            _ => None,
        }
    }

    /// Smallest rectangle containing every occupied cell.
    pub fn bounding_box(&self) -> Result<Rect> {
        self.bbox.ok_or_else(|| DwpError::Contract("bounding box of an empty map".into()))
    }

    /// `A^2 / B`: total occupied area squared over bounding-box area.
    pub fn fitness(&self) -> Result<f64> {
        let b = self.bounding_box()?.area();
        let a = self.area;
        Ok((a * a) as f64 / b as f64)
    }
}

pub fn admissible(map: &LevelMap, p: &RoomProposal) -> bool {
    map.admissible(p)
}

pub fn place(map: &mut LevelMap, p: &RoomProposal) -> Result<usize> {
    map.place(p)
}

pub fn bounding_box(map: &LevelMap) -> Result<Rect> {
    map.bounding_box()
}

pub fn fitness(map: &LevelMap) -> Result<f64> {
    map.fitness()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StepOutcome {
    Placed(usize),
    Rejected,
    Finished,
}

/// Drives one genome's stream through the propose/filter/place loop.
#[derive(Debug, Clone)]
pub struct MapBuilder<'a> {
    stream: SdaStream<'a>,
    map: LevelMap,
    cfg: &'a BuilderConfig,
}

impl<'a> MapBuilder<'a> {
    pub fn new(genome: &'a SdaGenome, cfg: &'a BuilderConfig) -> Result<Self> {
        Ok(MapBuilder { stream: SdaStream::new(genome), map: LevelMap::seeded(cfg)?, cfg })
    }

    pub fn is_finished(&self) -> bool {
        self.map.rooms.len() >= self.cfg.max_rooms
            || self.map.proposed >= self.cfg.proposal_budget as u64
    }

    pub fn step(&mut self) -> StepOutcome {
        if self.is_finished() {
            return StepOutcome::Finished;
        }
        let p = propose_room(&mut self.stream, &self.map, self.cfg);
        self.map.proposed += 1;
        if self.map.admissible(&p) {
            StepOutcome::Placed(self.map.insert(p.rect, p.kind))
        } else {
            self.map.rejected += 1;
            StepOutcome::Rejected
        }
    }

    pub fn run(mut self) -> LevelMap {
        while self.step() != StepOutcome::Finished {}
        self.map
    }

    pub fn map(&self) -> &LevelMap {
        &self.map
    }

    pub fn stream(&self) -> &SdaStream<'a> {
        &self.stream
    }
}

/// Runs a genome until the room cap or proposal budget is reached.
pub fn build_map(genome: &SdaGenome, cfg: &BuilderConfig) -> Result<LevelMap> {
    Ok(MapBuilder::new(genome, cfg)?.run())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::map::Side;
    use crate::sda::StateRecord;

    fn constant_genome(bit: bool) -> SdaGenome {
        let e = crate::sda::Emission::single(bit);
        SdaGenome::new(e, vec![StateRecord { emission: e, next_on_0: 0, next_on_1: 0 }]).unwrap()
    }

    fn proposal(focal: usize, rect: Rect) -> RoomProposal {
        RoomProposal { focal_room_id: focal, side: Side::Above, offset_value: 0, kind: RoomKind::Room, rect }
    }

    #[test]
    fn default_start_room_is_centred() {
        let cfg = BuilderConfig::default();
        assert_eq!(cfg.resolved_initial_rooms(), vec![Rect::new(38, 38, 4, 4)]);
        let cfg = BuilderConfig::default().with_grid(6, 6);
        assert_eq!(cfg.resolved_initial_rooms(), vec![Rect::new(1, 1, 4, 4)]);
        let cfg = BuilderConfig::default().with_grid(7, 9);
        assert_eq!(cfg.resolved_initial_rooms(), vec![Rect::new(1, 2, 4, 4)]);
    }

    #[test]
    fn single_start_room_fitness_is_sixteen() {
        let map = LevelMap::seeded(&BuilderConfig::default()).unwrap();
        assert_eq!(map.area(), 16);
        assert_eq!(map.bounding_box().unwrap().area(), 16);
        assert_eq!(map.fitness().unwrap(), 16.0);
    }

    #[test]
    fn bounding_box_of_two_rooms() {
        let cfg = BuilderConfig::default()
            .with_grid(10, 10)
            .with_initial_rooms(vec![Rect::new(0, 0, 4, 4), Rect::new(4, 0, 2, 2)]);
        let map = LevelMap::seeded(&cfg).unwrap();
        assert_eq!(map.bounding_box().unwrap(), Rect::new(0, 0, 6, 4));
        assert_eq!(map.bounding_box().unwrap().area(), 24);
        assert_eq!(map.fitness().unwrap(), 400.0 / 24.0);
    }

    #[test]
    fn empty_map_has_no_fitness() {
        let map = LevelMap::empty(&BuilderConfig::default());
        assert!(matches!(map.bounding_box(), Err(DwpError::Contract(_))));
        assert!(matches!(map.fitness(), Err(DwpError::Contract(_))));
    }

    #[test]
    fn place_accounts_area_and_ids() {
        let cfg = BuilderConfig::default().with_grid(10, 10);
        let mut map = LevelMap::seeded(&cfg).unwrap();
        let start = map.room(0).rect;
        let p = proposal(0, Rect::new(start.right(), start.y, 2, 2));
        assert!(admissible(&map, &p));
        let before = map.rooms().len();
        assert_eq!(place(&mut map, &p).unwrap(), before);
        assert_eq!(map.area(), 20);
        assert_eq!(map.grid().occupied_count(), 20);
    }

    #[test]
    fn overlapping_or_off_grid_proposals_are_inadmissible() {
        let cfg = BuilderConfig::default().with_grid(10, 10);
        let mut map = LevelMap::seeded(&cfg).unwrap();
        let start = map.room(0).rect;
        let overlap = proposal(0, Rect::new(start.right() - 1, start.y, 2, 2));
        assert!(!map.admissible(&overlap));
        assert!(matches!(map.place(&overlap), Err(DwpError::Contract(_))));
        let off = proposal(0, Rect::new(9, 0, 2, 1));
        assert!(!map.admissible(&off));
        let free = proposal(0, Rect::new(0, 0, 2, 1));
        assert!(map.admissible(&free));
        // Admissible but detached from its focal room.
        assert!(matches!(map.place(&free), Err(DwpError::Contract(_))));
        assert_eq!(map.rooms().len(), 1);
    }

    #[test]
    fn max_rooms_one_makes_no_proposals() {
        let g = constant_genome(true);
        let cfg = BuilderConfig::default().with_max_rooms(1);
        let map = build_map(&g, &cfg).unwrap();
        assert_eq!(map.rooms().len(), 1);
        assert_eq!(map.proposed(), 0);
    }

    #[test]
    fn all_zero_genome_stalls_after_one_corridor() {
        // Every proposal decodes to: focal 0, above, corridor, length 1,
        // offset 0. The first lands directly above the start room's
        // top-left cell; every later one hits the same cell.
        let g = constant_genome(false);
        let cfg = BuilderConfig::default();
        let map = build_map(&g, &cfg).unwrap();
        let start = map.room(0).rect;
        assert_eq!(map.rooms().len(), 2);
        assert_eq!(map.room(1).kind, RoomKind::Corridor);
        assert_eq!(map.room(1).rect, Rect::new(start.x, start.y - 1, 1, 1));
        assert_eq!(map.proposed(), DEFAULT_PROPOSAL_BUDGET as u64);
        assert_eq!(map.rejected(), DEFAULT_PROPOSAL_BUDGET as u64 - 1);
    }

    #[test]
    fn config_errors() {
        let bad = [
            BuilderConfig::default().with_grid(0, 5),
            BuilderConfig::default().with_max_rooms(0),
            BuilderConfig::default().with_max_rooms(257),
            BuilderConfig { rrh_enabled: true, rrh_window: 0, ..Default::default() },
            BuilderConfig { rrh_enabled: true, rrh_window: 17, ..Default::default() },
            BuilderConfig::default().with_grid(3, 3),
            BuilderConfig::default().with_initial_rooms(vec![Rect::new(0, 0, 4, 4), Rect::new(3, 3, 2, 2)]),
            BuilderConfig::default().with_initial_rooms(vec![Rect::new(78, 0, 4, 4)]),
            BuilderConfig::default().with_mask(ForbiddenMask::open(10, 10)),
        ];
        for cfg in bad {
            assert!(matches!(cfg.validate(), Err(DwpError::Config(_))), "{cfg:?}");
        }
        let mut mask = ForbiddenMask::open(80, 80);
        mask.set(40, 40, true);
        let cfg = BuilderConfig::default().with_mask(mask);
        assert!(matches!(build_map(&constant_genome(true), &cfg), Err(DwpError::Config(_))));
        assert!(BuilderConfig::default().with_rrh(true).with_max_rooms(800).validate().is_ok());
    }
}
