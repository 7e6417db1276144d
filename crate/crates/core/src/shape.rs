//! Planar Rubik's shapes built inductively: start from a polygon, then
//! repeatedly glue a new polygon onto a path of existing edges.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigUint;
use thiserror::Error;

use crate::group::{factorial, GroupBsgs};
use crate::movelang::{move_name, Direction};
use crate::perm::Permutation;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeId(pub usize);

impl EdgeId {
    pub fn index(self) -> usize {
        self.0
    }
}

/// Shown as the 1-based edge label.
impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0 + 1)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ShapeError {
    #[error("a base cycle needs at least 3 sides, got {0}")]
    TooFewSides(usize),
    #[error("invalid path: {0}")]
    InvalidPath(String),
    #[error("attach needs at least one new vertex")]
    NoNewVertices,
    #[error("edge {0} already lies on two distinguished cycles")]
    SharedEdgeViolation(EdgeId),
    #[error("new cycle would share {shared} edges with cycle {cycle}")]
    SingleShareViolation { cycle: usize, shared: usize },
    #[error("cycle index {0} out of range")]
    BadCycleIndex(usize),
    #[error("cycle {0} given twice")]
    SameCycle(usize),
    #[error("relabeling must be a permutation of 1..={0}")]
    BadRelabel(usize),
}

/// One step of a construction trace.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Step {
    Base(usize),
    Attach { path: Vec<usize>, new_vertices: usize },
    /// `labels[i]` is the new 1-based label of the i-th created edge.
    Relabel(Vec<usize>),
}

/// A graph with distinguished edge cycles. Edge ids are dense and follow
/// creation order unless a relabel step reorders them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Shape {
    vertex_count: usize,
    edges: Vec<(usize, usize)>,
    cycles: Vec<Vec<EdgeId>>,
    single_share: bool,
    trace: Vec<Step>,
}

impl Shape {
    pub fn base_cycle(n: usize) -> Result<Shape, ShapeError> {
        if n < 3 {
            return Err(ShapeError::TooFewSides(n));
        }
        Ok(Shape {
            vertex_count: n,
            edges: (0..n).map(|i| (i, (i + 1) % n)).collect(),
            cycles: vec![(0..n).map(EdgeId).collect()],
            single_share: true,
            trace: vec![Step::Base(n)],
        })
    }

    /// Turns the at-most-one-shared-edge rule off (or back on).
    pub fn with_single_share(mut self, enforce: bool) -> Shape {
        self.single_share = enforce;
        self
    }

    pub fn single_share(&self) -> bool {
        self.single_share
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn cycle_count(&self) -> usize {
        self.cycles.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn cycle(&self, i: usize) -> Result<&[EdgeId], ShapeError> {
        self.cycles
            .get(i)
            .map(Vec::as_slice)
            .ok_or(ShapeError::BadCycleIndex(i))
    }

    pub fn cycles(&self) -> &[Vec<EdgeId>] {
        &self.cycles
    }

    pub fn cycle_lengths(&self) -> Vec<usize> {
        self.cycles.iter().map(Vec::len).collect()
    }

    pub fn trace(&self) -> &[Step] {
        &self.trace
    }

    fn edge_between(&self, a: usize, b: usize) -> Option<EdgeId> {
        self.edges
            .iter()
            .position(|&(x, y)| (x, y) == (a, b) || (x, y) == (b, a))
            .map(EdgeId)
    }

    /// Indices of the distinguished cycles through `e`.
    pub fn cycles_through(&self, e: EdgeId) -> Vec<usize> {
        (0..self.cycles.len())
            .filter(|&i| self.cycles[i].contains(&e))
            .collect()
    }

    /// Glues a new polygon onto `path`: `new_vertices` fresh vertices are
    /// chained from the last path vertex back to the first. The new cycle
    /// lists the path edges in order, then the new edges.
    pub fn attach(&self, path: &[usize], new_vertices: usize) -> Result<Shape, ShapeError> {
        if path.len() < 2 {
            return Err(ShapeError::InvalidPath("needs at least two vertices".into()));
        }
        if new_vertices == 0 {
            return Err(ShapeError::NoNewVertices);
        }
        let mut seen = BTreeSet::new();
        for &v in path {
            if v >= self.vertex_count {
                return Err(ShapeError::InvalidPath(format!("vertex v{v} does not exist")));
            }
            if !seen.insert(v) {
                return Err(ShapeError::InvalidPath(format!("vertex v{v} repeated")));
            }
        }
        let mut path_edges = Vec::with_capacity(path.len() - 1);
        for w in path.windows(2) {
            let e = self.edge_between(w[0], w[1]).ok_or_else(|| {
                ShapeError::InvalidPath(format!("no edge between v{} and v{}", w[0], w[1]))
            })?;
            if self.cycles_through(e).len() >= 2 {
                return Err(ShapeError::SharedEdgeViolation(e));
            }
            path_edges.push(e);
        }
        if self.single_share {
            for (i, c) in self.cycles.iter().enumerate() {
                let shared = path_edges.iter().filter(|e| c.contains(e)).count();
                if shared > 1 {
                    return Err(ShapeError::SingleShareViolation { cycle: i, shared });
                }
            }
        }

        let mut next = self.clone();
        let first_new = next.vertex_count;
        next.vertex_count += new_vertices;
        let mut chain = vec![*path.last().unwrap()];
        chain.extend(first_new..first_new + new_vertices);
        chain.push(path[0]);
        let mut cycle = path_edges;
        for w in chain.windows(2) {
            cycle.push(EdgeId(next.edges.len()));
            next.edges.push((w[0], w[1]));
        }
        next.cycles.push(cycle);
        next.trace.push(Step::Attach {
            path: path.to_vec(),
            new_vertices,
        });
        Ok(next)
    }

    /// Renames edges: the edge currently numbered `i` (0-based) gets the
    /// 1-based label `labels[i]`, i.e. id `labels[i] - 1`.
    pub fn relabel(&self, labels: &[usize]) -> Result<Shape, ShapeError> {
        let n = self.edges.len();
        let ids: Vec<usize> = labels.iter().map(|&l| l.wrapping_sub(1)).collect();
        if labels.len() != n || Permutation::from_images(ids.clone()).is_err() {
            return Err(ShapeError::BadRelabel(n));
        }
        let mut edges = vec![(0, 0); n];
        for (old, &new) in ids.iter().enumerate() {
            edges[new] = self.edges[old];
        }
        let cycles = self
            .cycles
            .iter()
            .map(|c| c.iter().map(|e| EdgeId(ids[e.0])).collect())
            .collect();
        let mut trace = self.trace.clone();
        trace.push(Step::Relabel(labels.to_vec()));
        Ok(Shape {
            vertex_count: self.vertex_count,
            edges,
            cycles,
            single_share: self.single_share,
            trace,
        })
    }

    /// Replays a construction trace.
    pub fn from_trace(steps: &[Step]) -> Result<Shape, ShapeError> {
        let mut iter = steps.iter();
        let mut shape = match iter.next() {
            Some(Step::Base(n)) => Shape::base_cycle(*n)?,
            _ => return Err(ShapeError::InvalidPath("trace must start with a base step".into())),
        };
        for step in iter {
            shape = match step {
                Step::Base(_) => {
                    return Err(ShapeError::InvalidPath("only the first step may be a base".into()))
                }
                Step::Attach { path, new_vertices } => shape.attach(path, *new_vertices)?,
                Step::Relabel(labels) => shape.relabel(labels)?,
            };
        }
        Ok(shape)
    }

    /// Rotation of cycle `i` by one step; forward follows the listed order.
    pub fn cycle_perm(&self, i: usize, direction: Direction) -> Result<Permutation, ShapeError> {
        let c = self.cycle(i)?;
        let mut points: Vec<usize> = c.iter().map(|e| e.0).collect();
        if direction == Direction::Backward {
            points.reverse();
        }
        Ok(Permutation::cycle(self.edge_count(), &points).expect("cycle edges are distinct"))
    }

    /// Forward rotations named `M1..Mn`.
    pub fn generators(&self) -> Vec<(String, Permutation)> {
        (0..self.cycle_count())
            .map(|i| (move_name(i), self.cycle_perm(i, Direction::Forward).unwrap()))
            .collect()
    }

    pub fn shared_edges(&self, i: usize, j: usize) -> Result<BTreeSet<EdgeId>, ShapeError> {
        if i == j {
            return Err(ShapeError::SameCycle(i));
        }
        let a = self.cycle(i)?;
        let b = self.cycle(j)?;
        Ok(a.iter().filter(|e| b.contains(e)).copied().collect())
    }

    /// True when every pair of cycles shares at most one edge.
    pub fn satisfies_single_share(&self) -> bool {
        (0..self.cycle_count()).all(|i| {
            (i + 1..self.cycle_count()).all(|j| self.shared_edges(i, j).unwrap().len() <= 1)
        })
    }

    pub fn all_cycles_odd(&self) -> bool {
        self.cycles.iter().all(|c| c.len() % 2 == 1)
    }

    /// Schreier-Sims group of the forward rotations.
    pub fn group(&self) -> GroupBsgs {
        GroupBsgs::new(self.edge_count(), self.generators()).expect("generators share the edge degree")
    }

    /// Whether the rotations generate every permutation of the edges.
    pub fn label_complete(&self) -> bool {
        self.group().order() == factorial(self.edge_count())
    }

    pub fn label_group_order(&self) -> BigUint {
        self.group().order()
    }

    /// One-line summary, e.g. `edges=6 cycles=2 lengths=[4,3]`.
    pub fn describe(&self) -> String {
        let lens: Vec<String> = self.cycle_lengths().iter().map(usize::to_string).collect();
        format!(
            "vertices={} edges={} cycles={} lengths=[{}]",
            self.vertex_count,
            self.edge_count(),
            self.cycle_count(),
            lens.join(",")
        )
    }

    /// Two polygons with `p` and `q` sides glued along one edge.
    pub fn glued_pair(p: usize, q: usize) -> Result<Shape, ShapeError> {
        if q < 3 {
            return Err(ShapeError::TooFewSides(q));
        }
        Shape::base_cycle(p)?.attach(&[0, 1], q - 2)
    }
}
