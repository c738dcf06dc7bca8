//! Raster output as binary PPM (`P6`): uncompressed, byte-deterministic and
//! readable by most image tools.

use crate::error::{DwpError, Result};
use crate::io::map_text::{CellClass, ClassGrid};
use crate::map::{CellState, LevelMap};

pub type Rgb = [u8; 3];

pub const START_RED: Rgb = [220, 30, 30];
pub const ROOM_GREY: Rgb = [150, 150, 150];
pub const CORRIDOR_BLUE: Rgb = [30, 60, 220];
pub const FORBIDDEN_LIGHT_BLUE: Rgb = [173, 216, 230];
pub const EMPTY_WHITE: Rgb = [255, 255, 255];
pub const OUTLINE_BLACK: Rgb = [0, 0, 0];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RenderStyle {
    pub cell_pixel_size: usize,
    pub start: Rgb,
    pub room: Rgb,
    pub corridor: Rgb,
    pub forbidden: Rgb,
    pub empty: Rgb,
    /// Draw a 1-pixel border around each room when cells are at least 3px.
    pub outline: Option<Rgb>,
}

impl Default for RenderStyle {
    fn default() -> Self {
        RenderStyle {
            cell_pixel_size: 8,
            start: START_RED,
            room: ROOM_GREY,
            corridor: CORRIDOR_BLUE,
            forbidden: FORBIDDEN_LIGHT_BLUE,
            empty: EMPTY_WHITE,
            outline: Some(OUTLINE_BLACK),
        }
    }
}

impl RenderStyle {
    pub fn with_cell_size(mut self, px: usize) -> Self {
        self.cell_pixel_size = px;
        self
    }

    pub fn color(&self, class: CellClass) -> Rgb {
        match class {
            CellClass::Empty => self.empty,
            CellClass::Forbidden => self.forbidden,
            CellClass::Start => self.start,
            CellClass::Room => self.room,
            CellClass::Corridor => self.corridor,
        }
    }
}

/// Renders a built map; room borders come from the room list.
pub fn render_image(map: &LevelMap, style: &RenderStyle) -> Result<Vec<u8>> {
    let classes = ClassGrid::of(map);
    let owner = |x: i64, y: i64| -> Option<u32> {
        if x < 0 || y < 0 || x as usize >= map.width() || y as usize >= map.height() {
            return None;
        }
        match map.cell(x as usize, y as usize) {
            CellState::Occupied(id) => Some(id),
            _ => None,
        }
    };
    rasterize(&classes, style, owner)
}

/// Renders a parsed map dump. Room identity is not stored in dumps, so
/// borders are drawn between cells of different classes.
pub fn render_class_grid(grid: &ClassGrid, style: &RenderStyle) -> Result<Vec<u8>> {
    let owner = |x: i64, y: i64| -> Option<u32> {
        if x < 0 || y < 0 || x as usize >= grid.width || y as usize >= grid.height {
            return None;
        }
        let c = grid.get(x as usize, y as usize);
        c.is_occupied().then_some(c as u32)
    };
    rasterize(grid, style, owner)
}

fn rasterize(
    grid: &ClassGrid,
    style: &RenderStyle,
    owner: impl Fn(i64, i64) -> Option<u32>,
) -> Result<Vec<u8>> {
    let s = style.cell_pixel_size;
    if s == 0 {
        return Err(DwpError::InvalidParameter("cell pixel size must be at least 1".into()));
    }
    let (pw, ph) = (grid.width * s, grid.height * s);
    let header = format!("P6\n{pw} {ph}\n255\n");
    let mut out = Vec::with_capacity(header.len() + pw * ph * 3);
    out.extend_from_slice(header.as_bytes());
    let outline = style.outline.filter(|_| s >= 3);

    for py in 0..ph {
        let (cy, sub_y) = (py / s, py % s);
        for px in 0..pw {
            let (cx, sub_x) = (px / s, px % s);
            let class = grid.get(cx, cy);
            let mut color = style.color(class);
            if let (Some(line), Some(id)) = (outline, owner(cx as i64, cy as i64)) {
                let (x, y) = (cx as i64, cy as i64);
                let edge = (sub_x == 0 && owner(x - 1, y) != Some(id))
                    || (sub_x == s - 1 && owner(x + 1, y) != Some(id))
                    || (sub_y == 0 && owner(x, y - 1) != Some(id))
                    || (sub_y == s - 1 && owner(x, y + 1) != Some(id));
                if edge {
                    color = line;
                }
            }
            out.extend_from_slice(&color);
        }
    }
    Ok(out)
}
