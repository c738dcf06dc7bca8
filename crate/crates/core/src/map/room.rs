use serde::{Deserialize, Serialize};

use crate::map::Rect;

pub const MIN_ROOM_SIDE: i32 = 2;
pub const MAX_ROOM_SIDE: i32 = 4;
pub const MAX_CORRIDOR_LEN: i32 = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RoomKind {
    Start,
    Room,
    Corridor,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Room {
    pub id: usize,
    pub rect: Rect,
    pub kind: RoomKind,
}

impl Room {
    pub fn area(&self) -> u64 {
        self.rect.area()
    }

    /// Shape constraint for generated rooms; start rooms are unconstrained.
    pub fn has_valid_shape(&self) -> bool {
        let Rect { w, h, .. } = self.rect;
        match self.kind {
            RoomKind::Start => w >= 1 && h >= 1,
            RoomKind::Room => {
                (MIN_ROOM_SIDE..=MAX_ROOM_SIDE).contains(&w)
                    && (MIN_ROOM_SIDE..=MAX_ROOM_SIDE).contains(&h)
            }
            RoomKind::Corridor => {
                (w == 1 && (1..=MAX_CORRIDOR_LEN).contains(&h))
                    || (h == 1 && (1..=MAX_CORRIDOR_LEN).contains(&w))
            }
        }
    }
}
