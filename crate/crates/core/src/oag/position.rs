//! Index set of the direct sums.
//!
//! Left to right the positions read
//!
//! ```text
//! ⋯ G2[1].c G2[1].s G2[0].c G2[0].s | G1[0].s[0] G1[0].s[1] ⋯ G1[0].c G1[1].s[0] ⋯ G1[1].c ⋯
//! ```
//!
//! and the `Ord` impl on [`Position`] is exactly this left-to-right order,
//! so the leading entry of an element is its least position.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum G2Slot {
    Circle,
    Square,
}

/// Slots inside a `G1` block: infinitely many squares, then the circle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum G1Slot {
    Square(u32),
    Circle,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Position {
    G2 { pair: u32, slot: G2Slot },
    G1 { block: u32, slot: G1Slot },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SlotKind {
    Circle,
    Square,
}

impl Position {
    pub const fn g2_circle(pair: u32) -> Self {
        Position::G2 {
            pair,
            slot: G2Slot::Circle,
        }
    }

    pub const fn g2_square(pair: u32) -> Self {
        Position::G2 {
            pair,
            slot: G2Slot::Square,
        }
    }

    pub const fn g1_square(block: u32, index: u32) -> Self {
        Position::G1 {
            block,
            slot: G1Slot::Square(index),
        }
    }

    pub const fn g1_circle(block: u32) -> Self {
        Position::G1 {
            block,
            slot: G1Slot::Circle,
        }
    }

    /// The circle that the image of `f₁` forces to zero.
    pub const CRITICAL_CIRCLE: Position = Position::g2_circle(0);

    pub fn kind(&self) -> SlotKind {
        match self {
            Position::G2 {
                slot: G2Slot::Circle,
                ..
            }
            | Position::G1 {
                slot: G1Slot::Circle,
                ..
            } => SlotKind::Circle,
            _ => SlotKind::Square,
        }
    }

    pub fn is_circle(&self) -> bool {
        self.kind() == SlotKind::Circle
    }

    pub fn is_square(&self) -> bool {
        self.kind() == SlotKind::Square
    }

    pub fn in_g1(&self) -> bool {
        matches!(self, Position::G1 { .. })
    }

    /// Immediate successor. Every position has one.
    pub fn successor(&self) -> Position {
        match *self {
            Position::G2 {
                pair,
                slot: G2Slot::Circle,
            } => Position::g2_square(pair),
            Position::G2 {
                pair: 0,
                slot: G2Slot::Square,
            } => Position::g1_square(0, 0),
            Position::G2 {
                pair,
                slot: G2Slot::Square,
            } => Position::g2_circle(pair - 1),
            Position::G1 {
                block,
                slot: G1Slot::Square(p),
            } => Position::g1_square(block, p + 1),
            Position::G1 {
                block,
                slot: G1Slot::Circle,
            } => Position::g1_square(block + 1, 0),
        }
    }

    /// Immediate predecessor; a block circle has none.
    pub fn predecessor(&self) -> Option<Position> {
        Some(match *self {
            Position::G2 {
                pair,
                slot: G2Slot::Circle,
            } => Position::g2_square(pair + 1),
            Position::G2 {
                pair,
                slot: G2Slot::Square,
            } => Position::g2_circle(pair),
            Position::G1 {
                block: 0,
                slot: G1Slot::Square(0),
            } => Position::g2_square(0),
            Position::G1 {
                block,
                slot: G1Slot::Square(0),
            } => Position::g1_circle(block - 1),
            Position::G1 {
                block,
                slot: G1Slot::Square(p),
            } => Position::g1_square(block, p - 1),
            Position::G1 {
                slot: G1Slot::Circle,
                ..
            } => return None,
        })
    }

    /// First circle strictly after this position.
    pub fn next_circle(&self) -> Position {
        match *self {
            Position::G2 {
                pair,
                slot: G2Slot::Circle,
            } => {
                if pair == 0 {
                    Position::g1_circle(0)
                } else {
                    Position::g2_circle(pair - 1)
                }
            }
            Position::G2 { pair: 0, .. } => Position::g1_circle(0),
            Position::G2 { pair, .. } => Position::g2_circle(pair - 1),
            Position::G1 {
                block,
                slot: G1Slot::Square(_),
            } => Position::g1_circle(block),
            Position::G1 {
                block,
                slot: G1Slot::Circle,
            } => Position::g1_circle(block + 1),
        }
    }

    /// First square strictly after this position.
    pub fn next_square(&self) -> Position {
        let s = self.successor();
        if s.is_square() {
            s
        } else {
            s.successor()
        }
    }
}

impl Ord for Position {
    fn cmp(&self, other: &Self) -> Ordering {
        use Position::*;
        match (self, other) {
            (G2 { .. }, G1 { .. }) => Ordering::Less,
            (G1 { .. }, G2 { .. }) => Ordering::Greater,
            // larger pair index sits further left
            (G2 { pair: a, slot: s }, G2 { pair: b, slot: t }) => b.cmp(a).then(s.cmp(t)),
            (G1 { block: a, slot: s }, G1 { block: b, slot: t }) => a.cmp(b).then(s.cmp(t)),
        }
    }
}

impl PartialOrd for Position {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Position::G2 {
                pair,
                slot: G2Slot::Circle,
            } => write!(f, "G2[{pair}].c"),
            Position::G2 {
                pair,
                slot: G2Slot::Square,
            } => write!(f, "G2[{pair}].s"),
            Position::G1 {
                block,
                slot: G1Slot::Square(p),
            } => write!(f, "G1[{block}].s[{p}]"),
            Position::G1 {
                block,
                slot: G1Slot::Circle,
            } => write!(f, "G1[{block}].c"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn window() -> Vec<Position> {
        let mut v = Vec::new();
        for m in 0..3 {
            v.push(Position::g2_circle(m));
            v.push(Position::g2_square(m));
        }
        for b in 0..3 {
            for p in 0..3 {
                v.push(Position::g1_square(b, p));
            }
            v.push(Position::g1_circle(b));
        }
        v
    }

    #[test]
    fn order_matches_picture() {
        let ordered = [
            Position::g2_circle(1),
            Position::g2_square(1),
            Position::g2_circle(0),
            Position::g2_square(0),
            Position::g1_square(0, 0),
            Position::g1_square(0, 7),
            Position::g1_circle(0),
            Position::g1_square(1, 0),
            Position::g1_circle(1),
        ];
        for w in ordered.windows(2) {
            assert!(w[0] < w[1], "{} < {}", w[0], w[1]);
        }
    }

    #[test]
    fn order_is_strict_total() {
        let v = window();
        for a in &v {
            assert!(!(a < a));
            for b in &v {
                assert!(a == b || (a < b) ^ (b < a));
                for c in &v {
                    if a < b && b < c {
                        assert!(a < c);
                    }
                }
            }
        }
    }

    #[test]
    fn successor_and_predecessor_are_adjacent() {
        let v = window();
        for p in &v {
            let s = p.successor();
            assert!(*p < s);
            assert!(!v.iter().any(|q| *p < *q && *q < s), "gap after {p}");
            if let Some(q) = p.predecessor() {
                assert_eq!(q.successor(), *p);
            }
        }
        assert_eq!(Position::g1_circle(2).predecessor(), None);
    }

    #[test]
    fn next_circle_and_square() {
        assert_eq!(Position::g2_square(0).next_circle(), Position::g1_circle(0));
        assert_eq!(Position::g2_square(2).next_circle(), Position::g2_circle(1));
        assert_eq!(Position::g1_square(3, 9).next_circle(), Position::g1_circle(3));
        assert_eq!(Position::g2_circle(0).next_square(), Position::g2_square(0));
        assert_eq!(Position::g1_circle(0).next_square(), Position::g1_square(1, 0));
    }
}
