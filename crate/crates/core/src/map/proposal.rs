//! Decoding the bit stream into candidate rooms.
//!
//! Each proposal reads, in order:
//!
//! | field          | bits | meaning                                          |
//! |----------------|------|--------------------------------------------------|
//! | focal selector | 8    | index mod room count (4 bits into the recent-room window when enabled) |
//! | side           | 2    | above, below, left, right                        |
//! | kind           | 3    | corridor iff all zero                            |
//! | shape          | 4    | room: two 2-bit extents; corridor: 4-bit length  |
//! | offset         | 3    | lateral position along the shared wall           |
//!
//! so every proposal costs 20 bits, or 16 with the recent-room window.

use crate::map::{BuilderConfig, LevelMap, Rect, RoomKind, Side};
use crate::sda::SdaStream;

pub const FOCAL_BITS: u32 = 8;
pub const RECENT_FOCAL_BITS: u32 = 4;
pub const SIDE_BITS: u32 = 2;
pub const KIND_BITS: u32 = 3;
pub const EXTENT_BITS: u32 = 2;
pub const CORRIDOR_LEN_BITS: u32 = 4;
pub const OFFSET_BITS: u32 = 3;

/// Bits one proposal consumes.
pub const fn bits_per_proposal(recent_rooms: bool) -> u32 {
    let focal = if recent_rooms { RECENT_FOCAL_BITS } else { FOCAL_BITS };
    focal + SIDE_BITS + KIND_BITS + 2 * EXTENT_BITS + OFFSET_BITS
}

/// 2-bit extent code to side length; 2 is twice as likely as 3 or 4.
pub const fn extent_from_code(code: u32) -> i32 {
    match code & 3 {
        0 | 1 => 2,
        2 => 3,
        _ => 4,
    }
}

/// A decoded candidate room, already resolved to grid coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RoomProposal {
    pub focal_room_id: usize,
    pub side: Side,
    pub offset_value: u32,
    pub kind: RoomKind,
    pub rect: Rect,
}

/// Reads one proposal's worth of bits and builds the candidate room.
///
/// Bits are consumed whether or not the proposal will later be admitted.
pub fn propose_room(stream: &mut SdaStream<'_>, map: &LevelMap, cfg: &BuilderConfig) -> RoomProposal {
    let rooms = map.rooms();
    assert!(!rooms.is_empty(), "proposals need at least one existing room");

    let focal_room_id = if cfg.rrh_enabled {
        let window = cfg.rrh_window.min(rooms.len());
        let back = stream.read_bits(RECENT_FOCAL_BITS) as usize % window;
        rooms.len() - 1 - back
    } else {
        stream.read_bits(FOCAL_BITS) as usize % rooms.len()
    };
    let side = Side::from_bits(stream.read_bits(SIDE_BITS));
    let corridor = stream.read_bits(KIND_BITS) == 0;

    let (kind, w, h) = if corridor {
        let len = stream.read_bits(CORRIDOR_LEN_BITS) as i32 + 1;
        if side.is_vertical() {
            (RoomKind::Corridor, 1, len)
        } else {
            (RoomKind::Corridor, len, 1)
        }
    } else {
        let w = extent_from_code(stream.read_bits(EXTENT_BITS));
        let h = extent_from_code(stream.read_bits(EXTENT_BITS));
        (RoomKind::Room, w, h)
    };
    let offset_value = stream.read_bits(OFFSET_BITS);
    let focal = rooms[focal_room_id].rect;
    let (x, y) = resolve_offset(&focal, side, w, h, offset_value);

    RoomProposal { focal_room_id, side, offset_value, kind, rect: Rect::new(x, y, w, h) }
}

/// Places a `w` x `h` shape against `side` of `focal`.
///
/// Along the shared wall there are `E + W - 1` positions that overlap the
/// focal wall by at least one cell, where `E` and `W` are the focal and new
/// extents on that axis. Position 0 is the one furthest toward negative
/// coordinates; `offset_value` picks one modulo the count.
pub fn resolve_offset(focal: &Rect, side: Side, w: i32, h: i32, offset_value: u32) -> (i32, i32) {
    let (focal_start, focal_extent, new_extent) = if side.is_vertical() {
        (focal.x, focal.w, w)
    } else {
        (focal.y, focal.h, h)
    };
    let positions = (focal_extent + new_extent - 1) as u32;
    let lateral = focal_start - new_extent + 1 + (offset_value % positions) as i32;
    match side {
        Side::Above => (lateral, focal.y - h),
        Side::Below => (lateral, focal.bottom()),
        Side::Left => (focal.x - w, lateral),
        Side::Right => (focal.right(), lateral),
    }
}
