//! The 2×2 Rubik's square: four 4-cycles on twelve edges.
//!
//! Edge labels 1..12 and faces:
//!
//! ```text
//!   +--1--+--2--+
//!   3  M1 4  M2 5
//!   +--6--+--7--+
//!   8  M3 9  M4 10
//!   +-11--+-12--+
//! ```
//!
//! Internally edge `n` is point `n - 1`.

mod bfs;
mod color;
mod macros;

use std::fmt;

pub use bfs::{
    bfs_colors, color_complete, multinomial, solve_color, BfsError, BfsOptions, BfsReport,
};
pub use color::{Color, ColorState, ColorStateError};
pub use macros::{
    published_macros, synthesize_macro, verify_macro, Contract, Grade, MacroDef, MacroError,
    MacroTable, Source, VerificationReport, square_group, from_published_notation, ConventionResult,
};

use crate::shape::Shape;

/// Face cycles in edge labels.
pub const FACES: [[usize; 4]; 4] = [[1, 4, 6, 3], [2, 5, 7, 4], [6, 9, 11, 8], [7, 10, 12, 9]];

/// The standard initial coloring, positions 1..12.
pub const STANDARD_COLORS: &str = "rrbrwbwbgwgg";

/// The grid built by gluing: top-left square, then top-right, bottom-left
/// and bottom-right, with edges relabeled to 1..12.
pub fn square_shape() -> Shape {
    Shape::base_cycle(4)
        .and_then(|s| s.attach(&[2, 1], 2))
        .and_then(|s| s.attach(&[3, 2], 2))
        .and_then(|s| s.attach(&[6, 2, 5], 1))
        .and_then(|s| s.relabel(&[1, 4, 6, 3, 2, 5, 7, 9, 11, 8, 10, 12]))
        .expect("the 2x2 grid is a valid shape")
}

pub fn standard_square() -> (Shape, ColorState) {
    (square_shape(), standard_state())
}

pub fn standard_state() -> ColorState {
    ColorState::square(STANDARD_COLORS).expect("standard coloring is valid")
}

/// The three edges meeting at one of the degree-3 vertices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ColorGroup {
    T,
    L,
    R,
    B,
}

impl ColorGroup {
    pub const ALL: [ColorGroup; 4] = [ColorGroup::T, ColorGroup::L, ColorGroup::R, ColorGroup::B];

    /// Edge labels (1-based).
    pub fn edges(self) -> [usize; 3] {
        match self {
            ColorGroup::T => [1, 2, 4],
            ColorGroup::L => [3, 6, 8],
            ColorGroup::R => [5, 7, 10],
            ColorGroup::B => [9, 11, 12],
        }
    }

    pub fn from_char(c: char) -> Option<ColorGroup> {
        match c {
            'T' => Some(ColorGroup::T),
            'L' => Some(ColorGroup::L),
            'R' => Some(ColorGroup::R),
            'B' => Some(ColorGroup::B),
            _ => None,
        }
    }
}

impl fmt::Display for ColorGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

pub fn color_groups() -> [(ColorGroup, [usize; 3]); 4] {
    ColorGroup::ALL.map(|g| (g, g.edges()))
}

/// True when every color group is monochromatic and the four groups use
/// four different colors.
pub fn is_initial(cs: &ColorState) -> bool {
    if cs.len() != 12 {
        return false;
    }
    let mut used = Vec::new();
    for g in ColorGroup::ALL {
        let [a, b, c] = g.edges().map(|e| cs.colors()[e - 1]);
        if a != b || b != c || used.contains(&a) {
            return false;
        }
        used.push(a);
    }
    true
}

/// All 24 initial states, sorted by the (T, L, R, B) color letters.
pub fn initial_states() -> Vec<ColorState> {
    let mut assignments: Vec<[Color; 4]> = Vec::with_capacity(24);
    for a in Color::ALL {
        for b in Color::ALL {
            for c in Color::ALL {
                for d in Color::ALL {
                    let v = [a, b, c, d];
                    if (0..4).all(|i| (i + 1..4).all(|j| v[i] != v[j])) {
                        assignments.push(v);
                    }
                }
            }
        }
    }
    assignments.sort_by_key(|v| v.map(Color::to_char));
    assignments
        .into_iter()
        .map(|v| {
            let mut colors = vec![Color::R; 12];
            for (g, c) in ColorGroup::ALL.iter().zip(v) {
                for e in g.edges() {
                    colors[e - 1] = c;
                }
            }
            ColorState::new(colors)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::movelang::Direction;
    use crate::shape::EdgeId;
    use std::collections::BTreeSet;

    #[test]
    fn faces_match_labels() {
        let (shape, state) = standard_square();
        assert_eq!(shape.cycle_count(), 4);
        assert_eq!(shape.edge_count(), 12);
        for (i, face) in FACES.iter().enumerate() {
            let pts = face.map(|l| l - 1);
            assert_eq!(
                shape.cycle_perm(i, Direction::Forward).unwrap(),
                crate::perm::Permutation::cycle(12, &pts).unwrap()
            );
        }
        assert_eq!(
            shape.cycle_perm(0, Direction::Forward).unwrap().to_cycles(),
            vec![vec![0, 3, 5, 2]]
        );
        assert_eq!(state.colors()[3], Color::R);
        assert_eq!(state.to_string(), "rrbrwbwbgwgg");
        assert_eq!(shape.shared_edges(0, 1).unwrap(), BTreeSet::from([EdgeId(3)]));
        assert!(!shape.all_cycles_odd());
    }

    #[test]
    fn groups_partition_edges() {
        assert_eq!(ColorGroup::T.edges(), [1, 2, 4]);
        assert_eq!(ColorGroup::L.edges(), [3, 6, 8]);
        let all: BTreeSet<usize> = color_groups().iter().flat_map(|(_, e)| *e).collect();
        assert_eq!(all, (1..=12).collect());
    }

    #[test]
    fn twenty_four_initial_states() {
        let states = initial_states();
        assert_eq!(states.len(), 24);
        assert!(states.contains(&standard_state()));
        assert!(states.iter().all(is_initial));
        let distinct: BTreeSet<_> = states.iter().collect();
        assert_eq!(distinct.len(), 24);
        assert_eq!(states[0].to_string(), "bbgbrgrgwrww");
    }

    #[test]
    fn initial_state_checks() {
        assert!(is_initial(&standard_state()));
        let mut colors = standard_state().colors().to_vec();
        colors.swap(0, 2);
        assert!(!is_initial(&ColorState::new(colors)));
        // T and L colors exchanged
        assert!(is_initial(&ColorState::square("bbrbwrwrgwgg").unwrap()));
    }
}
