//! Exhaustive breadth-first search over colorings.
//!
//! A coloring of up to 12 edges packs into 24 bits (two per edge), so the
//! visited set is a dense byte table indexed by the packed state.

use std::fmt::Write as _;

use num_bigint::BigUint;
use rayon::prelude::*;
use thiserror::Error;

use super::{Color, ColorState};
use crate::group::factorial;
use crate::movelang::{move_name, Direction, MoveWord};
use crate::shape::Shape;

pub const MAX_EDGES: usize = 12;
const UNSEEN: u8 = u8::MAX;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BfsError {
    #[error("color BFS supports at most {MAX_EDGES} edges, shape has {0}")]
    TooManyEdges(usize),
    #[error("state has {found} colors, shape has {expected} edges")]
    Length { expected: usize, found: usize },
    #[error("the two colorings use different color multisets")]
    DifferentMultisets,
    #[error("target coloring is unreachable from the start")]
    Unreachable,
    #[error("cycle index {0} out of range")]
    BadCycle(usize),
    #[error("distance exceeded {0}")]
    TooDeep(usize),
}

#[derive(Debug, Clone, Default)]
pub struct BfsOptions {
    /// Cycles whose rotations are allowed; `None` means all of them.
    pub cycles: Option<Vec<usize>>,
    pub parallel: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BfsReport {
    pub metric: String,
    pub start: String,
    pub reachable: u64,
    /// Number of colorings with the start's color multiset.
    pub total_colorings: BigUint,
    /// `histogram[d]` is the number of states at distance `d`.
    pub histogram: Vec<u64>,
}

impl BfsReport {
    /// Maximum distance from the start (God's number for the metric).
    pub fn eccentricity(&self) -> usize {
        self.histogram.len().saturating_sub(1)
    }

    pub fn color_complete(&self) -> bool {
        BigUint::from(self.reachable) == self.total_colorings
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "metric: {}", self.metric).unwrap();
        writeln!(out, "start: {}", self.start).unwrap();
        writeln!(out, "reachable: {}", self.reachable).unwrap();
        writeln!(out, "colorings: {}", self.total_colorings).unwrap();
        writeln!(out, "color-complete: {}", self.color_complete()).unwrap();
        writeln!(out, "eccentricity: {}", self.eccentricity()).unwrap();
        for (d, n) in self.histogram.iter().enumerate() {
            writeln!(out, "distance {d}: {n}").unwrap();
        }
        out
    }
}

/// `n! / prod(count_c!)` for the color counts of `state`.
pub fn multinomial(state: &ColorState) -> BigUint {
    let denom = Color::ALL
        .iter()
        .fold(BigUint::from(1u8), |acc, &c| acc * factorial(state.count(c)));
    factorial(state.len()) / denom
}

struct Move {
    name: String,
    inverse: bool,
    image: Vec<usize>,
}

fn moves(shape: &Shape, cycles: &[usize]) -> Result<Vec<Move>, BfsError> {
    let mut out = Vec::new();
    for &i in cycles {
        for (dir, inverse) in [(Direction::Forward, false), (Direction::Backward, true)] {
            let p = shape.cycle_perm(i, dir).map_err(|_| BfsError::BadCycle(i))?;
            out.push(Move {
                name: move_name(i),
                inverse,
                image: p.images().to_vec(),
            });
        }
    }
    Ok(out)
}

#[inline]
fn apply_packed(state: u32, image: &[usize]) -> u32 {
    image
        .iter()
        .enumerate()
        .fold(0, |acc, (x, &to)| acc | (((state >> (2 * x)) & 3) << (2 * to)))
}

fn check(shape: &Shape, state: &ColorState) -> Result<(), BfsError> {
    if shape.edge_count() > MAX_EDGES {
        return Err(BfsError::TooManyEdges(shape.edge_count()));
    }
    if state.len() != shape.edge_count() {
        return Err(BfsError::Length {
            expected: shape.edge_count(),
            found: state.len(),
        });
    }
    Ok(())
}

fn cycle_list(shape: &Shape, opts: &BfsOptions) -> Vec<usize> {
    opts.cycles
        .clone()
        .unwrap_or_else(|| (0..shape.cycle_count()).collect())
}

/// Breadth-first search from `start` using each allowed cycle turned one
/// step either way (quarter-turn metric). The parallel run expands each
/// frontier concurrently and merges in frontier order, so both modes
/// produce the same report.
pub fn bfs_colors(shape: &Shape, start: &ColorState, opts: &BfsOptions) -> Result<BfsReport, BfsError> {
    check(shape, start)?;
    let cycles = cycle_list(shape, opts);
    let moves = moves(shape, &cycles)?;
    let mut dist = vec![UNSEEN; 1usize << (2 * shape.edge_count())];
    let s0 = start.pack();
    dist[s0 as usize] = 0;
    let mut frontier = vec![s0];
    let mut histogram = vec![1u64];
    let moves = &moves;
    let expand = |s: &u32| {
        let s = *s;
        moves.iter().map(move |m| apply_packed(s, &m.image))
    };
    while !frontier.is_empty() {
        let d = histogram.len();
        if d >= UNSEEN as usize {
            return Err(BfsError::TooDeep(d));
        }
        let successors: Vec<u32> = if opts.parallel {
            frontier.par_iter().flat_map_iter(expand).collect()
        } else {
            frontier.iter().flat_map(expand).collect()
        };
        let mut next = Vec::new();
        for s in successors {
            let slot = &mut dist[s as usize];
            if *slot == UNSEEN {
                *slot = d as u8;
                next.push(s);
            }
        }
        if !next.is_empty() {
            histogram.push(next.len() as u64);
        }
        frontier = next;
    }
    Ok(BfsReport {
        metric: format!("quarter-turn-{}", moves.len()),
        start: start.to_string(),
        reachable: histogram.iter().sum(),
        total_colorings: multinomial(start),
        histogram,
    })
}

/// Whether every coloring with the start's color multiset is reachable.
pub fn color_complete(shape: &Shape, start: &ColorState, opts: &BfsOptions) -> Result<bool, BfsError> {
    Ok(bfs_colors(shape, start, opts)?.color_complete())
}

/// A shortest word over the allowed moves taking `from` to `to`.
pub fn solve_color(
    shape: &Shape,
    from: &ColorState,
    to: &ColorState,
    opts: &BfsOptions,
) -> Result<MoveWord, BfsError> {
    check(shape, from)?;
    check(shape, to)?;
    if Color::ALL.iter().any(|&c| from.count(c) != to.count(c)) {
        return Err(BfsError::DifferentMultisets);
    }
    let cycles = cycle_list(shape, opts);
    let moves = moves(shape, &cycles)?;
    let inverse_image: Vec<Vec<usize>> = moves
        .iter()
        .map(|m| {
            let mut inv = vec![0; m.image.len()];
            for (x, &y) in m.image.iter().enumerate() {
                inv[y] = x;
            }
            inv
        })
        .collect();
    // parent[s] = index of the move that first reached s
    let mut parent = vec![UNSEEN; 1usize << (2 * shape.edge_count())];
    let (s0, goal) = (from.pack(), to.pack());
    parent[s0 as usize] = moves.len() as u8;
    let mut frontier = vec![s0];
    let mut found = s0 == goal;
    while !found && !frontier.is_empty() {
        let mut next = Vec::new();
        'level: for &s in &frontier {
            for (mi, m) in moves.iter().enumerate() {
                let t = apply_packed(s, &m.image);
                if parent[t as usize] == UNSEEN {
                    parent[t as usize] = mi as u8;
                    if t == goal {
                        found = true;
                        break 'level;
                    }
                    next.push(t);
                }
            }
        }
        frontier = next;
    }
    if !found {
        return Err(BfsError::Unreachable);
    }
    let mut path = Vec::new();
    let mut s = goal;
    while s != s0 {
        let mi = parent[s as usize] as usize;
        path.push(mi);
        s = apply_packed(s, &inverse_image[mi]);
    }
    path.reverse();
    Ok(MoveWord::seq(path.into_iter().map(|mi| {
        let a = MoveWord::atom(moves[mi].name.clone());
        if moves[mi].inverse {
            a.inverse()
        } else {
            a
        }
    })))
}
