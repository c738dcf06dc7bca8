use serde::{Deserialize, Serialize};

/// Axis-aligned cell rectangle; `x` grows right, `y` grows down.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Rect {
    pub x: i32,
    pub y: i32,
    pub w: i32,
    pub h: i32,
}

impl Rect {
    pub const fn new(x: i32, y: i32, w: i32, h: i32) -> Self {
        Rect { x, y, w, h }
    }

    pub fn area(&self) -> u64 {
        self.w.max(0) as u64 * self.h.max(0) as u64
    }

    pub fn right(&self) -> i32 {
        self.x + self.w
    }

    pub fn bottom(&self) -> i32 {
        self.y + self.h
    }

    pub fn intersects(&self, other: &Rect) -> bool {
        self.x < other.right()
            && other.x < self.right()
            && self.y < other.bottom()
            && other.y < self.bottom()
    }

    /// Number of unit wall segments the two rectangles have in common.
    pub fn shared_wall(&self, other: &Rect) -> i32 {
        let x_overlap = self.right().min(other.right()) - self.x.max(other.x);
        let y_overlap = self.bottom().min(other.bottom()) - self.y.max(other.y);
        if (self.right() == other.x || other.right() == self.x) && y_overlap > 0 {
            y_overlap
        } else if (self.bottom() == other.y || other.bottom() == self.y) && x_overlap > 0 {
            x_overlap
        } else {
            0
        }
    }

    pub fn union(&self, other: &Rect) -> Rect {
        let x = self.x.min(other.x);
        let y = self.y.min(other.y);
        Rect::new(x, y, self.right().max(other.right()) - x, self.bottom().max(other.bottom()) - y)
    }

    pub fn cells(&self) -> impl Iterator<Item = (i32, i32)> + '_ {
        (self.y..self.bottom()).flat_map(move |y| (self.x..self.right()).map(move |x| (x, y)))
    }
}

/// Which side of the focal room a new room is attached to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Side {
    Above,
    Below,
    Left,
    Right,
}

impl Side {
    pub fn from_bits(v: u32) -> Side {
        match v & 3 {
            0 => Side::Above,
            1 => Side::Below,
            2 => Side::Left,
            _ => Side::Right,
        }
    }

    /// True when the shared wall runs horizontally (lateral axis is x).
    pub fn is_vertical(&self) -> bool {
        matches!(self, Side::Above | Side::Below)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shared_wall_counts_overlap() {
        let a = Rect::new(0, 0, 4, 4);
        assert_eq!(a.shared_wall(&Rect::new(4, 0, 2, 2)), 2);
        assert_eq!(a.shared_wall(&Rect::new(3, -2, 2, 2)), 1);
        // Corner contact only.
        assert_eq!(a.shared_wall(&Rect::new(4, 4, 2, 2)), 0);
        assert_eq!(a.shared_wall(&Rect::new(5, 0, 2, 2)), 0);
        assert_eq!(Rect::new(-1, 0, 1, 3).shared_wall(&a), 3);
    }

    #[test]
    fn intersection_is_half_open() {
        let a = Rect::new(0, 0, 4, 4);
        assert!(!a.intersects(&Rect::new(4, 0, 1, 1)));
        assert!(a.intersects(&Rect::new(3, 3, 1, 1)));
    }

    #[test]
    fn union_covers_both() {
        let u = Rect::new(0, 0, 4, 4).union(&Rect::new(4, 0, 2, 2));
        assert_eq!(u, Rect::new(0, 0, 6, 4));
        assert_eq!(u.area(), 24);
    }
}
