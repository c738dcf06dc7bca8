use crate::error::{DwpError, Result};
use crate::map::{CellState, LevelMap, RoomKind};

/// What a cell shows in a map dump or render.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CellClass {
    Empty,
    Forbidden,
    Start,
    Room,
    Corridor,
}

impl CellClass {
    pub fn symbol(self) -> char {
        match self {
            CellClass::Empty => '.',
            CellClass::Forbidden => '#',
            CellClass::Start => 'S',
            CellClass::Room => 'R',
            CellClass::Corridor => 'C',
        }
    }

    pub fn from_symbol(c: char) -> Option<Self> {
        Some(match c {
            '.' => CellClass::Empty,
            '#' => CellClass::Forbidden,
            'S' => CellClass::Start,
            'R' => CellClass::Room,
            'C' => CellClass::Corridor,
            _ => return None,
        })
    }

    pub fn is_occupied(self) -> bool {
        matches!(self, CellClass::Start | CellClass::Room | CellClass::Corridor)
    }
}

impl From<RoomKind> for CellClass {
    fn from(k: RoomKind) -> Self {
        match k {
            RoomKind::Start => CellClass::Start,
            RoomKind::Room => CellClass::Room,
            RoomKind::Corridor => CellClass::Corridor,
        }
    }
}

/// Per-cell classes of a map, as stored in a text dump.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassGrid {
    pub width: usize,
    pub height: usize,
    pub cells: Vec<CellClass>,
}

impl ClassGrid {
    pub fn of(map: &LevelMap) -> Self {
        let (width, height) = (map.width(), map.height());
        let cells = map
            .grid()
            .cells()
            .iter()
            .map(|c| match *c {
                CellState::Empty => CellClass::Empty,
                CellState::Forbidden => CellClass::Forbidden,
                CellState::Occupied(id) => map.room(id as usize).kind.into(),
            })
            .collect();
        ClassGrid { width, height, cells }
    }

    pub fn get(&self, x: usize, y: usize) -> CellClass {
        self.cells[y * self.width + x]
    }
}

pub fn render_text(map: &LevelMap) -> String {
    render_classes(&ClassGrid::of(map))
}

pub fn render_classes(grid: &ClassGrid) -> String {
    let mut out = String::with_capacity((grid.width + 1) * (grid.height + 1) + 16);
    out.push_str(&format!("{} {}\n", grid.width, grid.height));
    for row in grid.cells.chunks(grid.width) {
        out.extend(row.iter().map(|c| c.symbol()));
        out.push('\n');
    }
    out
}

pub fn parse_map_text(text: &str) -> Result<ClassGrid> {
    let mut lines = text.lines();
    let header = lines.next().ok_or_else(|| DwpError::parse(1, "missing header"))?;
    let dims: Vec<usize> = header
        .split_whitespace()
        .map(|t| t.parse().map_err(|_| DwpError::parse(1, format!("bad dimension {t:?}"))))
        .collect::<Result<_>>()?;
    let [width, height] = dims[..] else {
        return Err(DwpError::parse(1, "header must be `<width> <height>`"));
    };
    let mut cells = Vec::with_capacity(width * height);
    for row in 0..height {
        let line_no = row + 2;
        let line = lines
            .next()
            .ok_or_else(|| DwpError::parse(line_no, format!("expected {height} rows, found {row}")))?;
        if line.chars().count() != width {
            return Err(DwpError::parse(line_no, format!("row length differs from width {width}")));
        }
        for c in line.chars() {
            cells.push(
                CellClass::from_symbol(c)
                    .ok_or_else(|| DwpError::parse(line_no, format!("illegal map character {c:?}")))?,
            );
        }
    }
    if lines.any(|l| !l.trim().is_empty()) {
        return Err(DwpError::parse(height + 2, "more rows than the header declares"));
    }
    Ok(ClassGrid { width, height, cells })
}
