use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::perm::Permutation;

/// The four sticker colors: red, blue, white, green.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Color {
    R,
    B,
    W,
    G,
}

impl Color {
    pub const ALL: [Color; 4] = [Color::R, Color::B, Color::W, Color::G];

    pub fn from_char(c: char) -> Option<Color> {
        match c {
            'r' => Some(Color::R),
            'b' => Some(Color::B),
            'w' => Some(Color::W),
            'g' => Some(Color::G),
            _ => None,
        }
    }

    pub fn to_char(self) -> char {
        match self {
            Color::R => 'r',
            Color::B => 'b',
            Color::W => 'w',
            Color::G => 'g',
        }
    }

    pub(crate) fn code(self) -> u32 {
        self as u32
    }

    pub(crate) fn from_code(code: u32) -> Color {
        Color::ALL[(code & 3) as usize]
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ColorStateError {
    #[error("bad color character `{0}`")]
    BadChar(char),
    #[error("expected {expected} colors, got {found}")]
    Length { expected: usize, found: usize },
    #[error("each color must appear exactly 3 times")]
    Multiset,
}

/// One color per edge position, indexed by edge id.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ColorState {
    colors: Vec<Color>,
}

impl ColorState {
    pub fn new(colors: Vec<Color>) -> Self {
        ColorState { colors }
    }

    /// A 12-edge square coloring with every color used exactly 3 times.
    pub fn square(text: &str) -> Result<Self, ColorStateError> {
        let s: ColorState = text.parse()?;
        if s.len() != 12 {
            return Err(ColorStateError::Length {
                expected: 12,
                found: s.len(),
            });
        }
        if Color::ALL.iter().any(|&c| s.count(c) != 3) {
            return Err(ColorStateError::Multiset);
        }
        Ok(s)
    }

    pub fn colors(&self) -> &[Color] {
        &self.colors
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    pub fn count(&self, c: Color) -> usize {
        self.colors.iter().filter(|&&x| x == c).count()
    }

    /// Moves the sticker at position `x` to position `p(x)`.
    pub fn apply(&self, p: &Permutation) -> ColorState {
        assert_eq!(p.degree(), self.len(), "permutation degree must match edge count");
        let mut colors = self.colors.clone();
        for (x, &c) in self.colors.iter().enumerate() {
            colors[p.apply(x)] = c;
        }
        ColorState { colors }
    }

    /// Two bits per edge, edge `i` in bits `2i..2i+2`.
    pub fn pack(&self) -> u32 {
        assert!(self.len() <= 16, "packing supports at most 16 edges");
        self.colors
            .iter()
            .enumerate()
            .fold(0, |acc, (i, c)| acc | (c.code() << (2 * i)))
    }

    pub fn unpack(code: u32, len: usize) -> ColorState {
        ColorState {
            colors: (0..len).map(|i| Color::from_code(code >> (2 * i))).collect(),
        }
    }
}

impl FromStr for ColorState {
    type Err = ColorStateError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.trim()
            .chars()
            .map(|c| Color::from_char(c).ok_or(ColorStateError::BadChar(c)))
            .collect::<Result<Vec<_>, _>>()
            .map(ColorState::new)
    }
}

impl fmt::Display for ColorState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.colors.iter().try_for_each(|c| write!(f, "{}", c.to_char()))
    }
}
