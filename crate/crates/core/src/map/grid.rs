use serde::{Deserialize, Serialize};

use crate::error::{DwpError, Result};
use crate::map::Rect;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CellState {
    Empty,
    Forbidden,
    Occupied(u32),
}

/// Cells where rooms may never be placed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "MaskRows", into = "MaskRows")]
pub struct ForbiddenMask {
    width: usize,
    height: usize,
    cells: Vec<bool>,
}

impl ForbiddenMask {
    pub fn open(width: usize, height: usize) -> Self {
        ForbiddenMask { width, height, cells: vec![false; width * height] }
    }

    pub fn from_cells(width: usize, height: usize, cells: Vec<bool>) -> Result<Self> {
        if cells.len() != width * height {
            return Err(DwpError::InvalidParameter(format!(
                "mask has {} cells, expected {width}x{height}",
                cells.len()
            )));
        }
        Ok(ForbiddenMask { width, height, cells })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn is_forbidden(&self, x: usize, y: usize) -> bool {
        self.cells[y * self.width + x]
    }

    pub fn set(&mut self, x: usize, y: usize, forbidden: bool) {
        self.cells[y * self.width + x] = forbidden;
    }

    pub fn forbid_rect(&mut self, r: Rect) {
        for (x, y) in r.cells() {
            if x >= 0 && y >= 0 && (x as usize) < self.width && (y as usize) < self.height {
                self.set(x as usize, y as usize, true);
            }
        }
    }

    pub fn forbidden_count(&self) -> usize {
        self.cells.iter().filter(|&&c| c).count()
    }

    pub fn rows(&self) -> Vec<String> {
        self.cells
            .chunks(self.width.max(1))
            .take(self.height)
            .map(|row| row.iter().map(|&f| if f { '#' } else { '.' }).collect())
            .collect()
    }
}

/// Serialized form of a mask: one `.`/`#` string per row.
#[derive(Serialize, Deserialize)]
struct MaskRows {
    rows: Vec<String>,
}

impl From<ForbiddenMask> for MaskRows {
    fn from(m: ForbiddenMask) -> Self {
        MaskRows { rows: m.rows() }
    }
}

impl TryFrom<MaskRows> for ForbiddenMask {
    type Error = DwpError;

    fn try_from(r: MaskRows) -> Result<Self> {
        let height = r.rows.len();
        let width = r.rows.first().map_or(0, |s| s.len());
        let mut cells = Vec::with_capacity(width * height);
        for (i, row) in r.rows.iter().enumerate() {
            if row.len() != width {
                return Err(DwpError::parse(i + 1, "ragged mask row"));
            }
            for c in row.chars() {
                cells.push(match c {
                    '#' => true,
                    '.' => false,
                    other => return Err(DwpError::parse(i + 1, format!("illegal mask character {other:?}"))),
                });
            }
        }
        ForbiddenMask::from_cells(width, height, cells)
    }
}

/// Dense occupancy grid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Grid {
    width: usize,
    height: usize,
    cells: Vec<CellState>,
}

impl Grid {
    pub fn new(width: usize, height: usize) -> Self {
        Grid { width, height, cells: vec![CellState::Empty; width * height] }
    }

    pub fn with_mask(mask: &ForbiddenMask) -> Self {
        let cells = mask
            .cells
            .iter()
            .map(|&f| if f { CellState::Forbidden } else { CellState::Empty })
            .collect();
        Grid { width: mask.width, height: mask.height, cells }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn get(&self, x: usize, y: usize) -> CellState {
        self.cells[y * self.width + x]
    }

    /// Cell state at signed coordinates, `None` when off the grid.
    pub fn at(&self, x: i32, y: i32) -> Option<CellState> {
        if x < 0 || y < 0 || x as usize >= self.width || y as usize >= self.height {
            None
        } else {
            Some(self.get(x as usize, y as usize))
        }
    }

    /// True iff every cell of `r` is on the grid and empty.
    pub fn is_free(&self, r: &Rect) -> bool {
        if r.w <= 0 || r.h <= 0 || r.x < 0 || r.y < 0 {
            return false;
        }
        if r.right() as usize > self.width || r.bottom() as usize > self.height {
            return false;
        }
        (r.y as usize..r.bottom() as usize).all(|y| {
            let row = &self.cells[y * self.width..(y + 1) * self.width];
            row[r.x as usize..r.right() as usize].iter().all(|c| *c == CellState::Empty)
        })
    }

    pub(crate) fn fill(&mut self, r: &Rect, id: u32) {
        for (x, y) in r.cells() {
            self.cells[y as usize * self.width + x as usize] = CellState::Occupied(id);
        }
    }

    pub fn occupied_count(&self) -> usize {
        self.cells.iter().filter(|c| matches!(c, CellState::Occupied(_))).count()
    }

    pub fn cells(&self) -> &[CellState] {
        &self.cells
    }
}
