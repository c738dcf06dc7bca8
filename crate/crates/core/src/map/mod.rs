//! Turning a bit stream into a level map.

mod builder;
pub mod connectivity;
mod geom;
mod grid;
pub mod proposal;
mod room;

pub use builder::{
    admissible, bounding_box, build_map, fitness, place, BuilderConfig, LevelMap, MapBuilder,
    StepOutcome, DEFAULT_GRID, DEFAULT_MAX_ROOMS, DEFAULT_PROPOSAL_BUDGET, DEFAULT_RRH_WINDOW,
};
pub use geom::{Rect, Side};
pub use grid::{CellState, ForbiddenMask, Grid};
pub use proposal::{propose_room, resolve_offset, RoomProposal};
pub use room::{Room, RoomKind, MAX_CORRIDOR_LEN, MAX_ROOM_SIDE, MIN_ROOM_SIDE};
