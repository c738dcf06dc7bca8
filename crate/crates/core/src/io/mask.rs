use crate::error::{DwpError, Result};
use crate::map::ForbiddenMask;

fn parse_header(line: Option<&str>) -> Result<(usize, usize)> {
    let line = line.ok_or_else(|| DwpError::parse(1, "missing `<width> <height>` header"))?;
    let dims: Vec<usize> = line
        .split_whitespace()
        .map(|t| t.parse().map_err(|_| DwpError::parse(1, format!("bad dimension {t:?}"))))
        .collect::<Result<_>>()?;
    match dims[..] {
        [w, h] if w > 0 && h > 0 => Ok((w, h)),
        _ => Err(DwpError::parse(1, "header must be two positive integers `<width> <height>`")),
    }
}

/// Reads an arena mask: a `<width> <height>` header, then `height` rows of
/// `width` characters, `.` open and `#` forbidden.
pub fn parse_mask(text: &str) -> Result<ForbiddenMask> {
    let mut lines = text.lines();
    let (width, height) = parse_header(lines.next())?;
    let mut cells = Vec::with_capacity(width * height);
    for row in 0..height {
        let line_no = row + 2;
        let line = lines
            .next()
            .ok_or_else(|| DwpError::parse(line_no, format!("expected {height} rows, found {row}")))?;
        if line.chars().count() != width {
            return Err(DwpError::parse(
                line_no,
                format!("row has {} cells, expected {width}", line.chars().count()),
            ));
        }
        for c in line.chars() {
            cells.push(match c {
                '.' => false,
                '#' => true,
                other => return Err(DwpError::parse(line_no, format!("illegal mask character {other:?}"))),
            });
        }
    }
    if lines.any(|l| !l.trim().is_empty()) {
        return Err(DwpError::parse(height + 2, "more rows than the header declares"));
    }
    ForbiddenMask::from_cells(width, height, cells)
}

pub fn serialize_mask(mask: &ForbiddenMask) -> String {
    let mut out = format!("{} {}\n", mask.width(), mask.height());
    for row in mask.rows() {
        out.push_str(&row);
        out.push('\n');
    }
    out
}
