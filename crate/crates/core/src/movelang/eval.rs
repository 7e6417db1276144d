use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use super::MoveWord;
use crate::perm::Permutation;
use crate::shape::Shape;

/// Which end of a word acts first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Order {
    /// The first-written move acts first.
    LeftToRight,
    RightToLeft,
}

/// Which way an `M_i` atom turns its cycle, relative to the listed order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Direction {
    Forward,
    Backward,
}

impl Direction {
    pub fn flip(self) -> Self {
        match self {
            Direction::Forward => Direction::Backward,
            Direction::Backward => Direction::Forward,
        }
    }

    pub fn id(self) -> &'static str {
        match self {
            Direction::Forward => "fwd",
            Direction::Backward => "bwd",
        }
    }
}

impl Order {
    pub fn id(self) -> &'static str {
        match self {
            Order::LeftToRight => "ltr",
            Order::RightToLeft => "rtl",
        }
    }
}

/// Reading convention for a word over the `M_i` moves.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Convention {
    pub order: Order,
    pub direction: Direction,
}

impl Convention {
    pub const CANONICAL: Convention = Convention {
        order: Order::LeftToRight,
        direction: Direction::Forward,
    };

    pub const ALL: [Convention; 4] = [
        Convention::CANONICAL,
        Convention {
            order: Order::LeftToRight,
            direction: Direction::Backward,
        },
        Convention {
            order: Order::RightToLeft,
            direction: Direction::Forward,
        },
        Convention {
            order: Order::RightToLeft,
            direction: Direction::Backward,
        },
    ];

    pub fn id(&self) -> String {
        format!("{}-{}", self.order.id(), self.direction.id())
    }

    pub fn parse(text: &str) -> Option<Convention> {
        Convention::ALL.into_iter().find(|c| c.id() == text)
    }
}

impl fmt::Display for Convention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.id())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("unbound name `{0}`")]
    Unbound(String),
    #[error("binding `{name}` has degree {found}, expected {expected}")]
    Degree {
        name: String,
        expected: usize,
        found: usize,
    },
}

/// Name → permutation environment for evaluation.
#[derive(Debug, Clone)]
pub struct Bindings {
    degree: usize,
    map: BTreeMap<String, Permutation>,
}

impl Bindings {
    pub fn new(degree: usize) -> Self {
        Bindings {
            degree,
            map: BTreeMap::new(),
        }
    }

    /// Binds `M1..Mn` to the shape's cycle rotations in `direction`.
    pub fn for_shape(shape: &Shape, direction: Direction) -> Self {
        let mut b = Bindings::new(shape.edge_count());
        for i in 0..shape.cycle_count() {
            let p = shape.cycle_perm(i, direction).expect("index in range");
            b.map.insert(move_name(i), p);
        }
        b
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn bind(&mut self, name: impl Into<String>, p: Permutation) -> Result<(), EvalError> {
        let name = name.into();
        if p.degree() != self.degree {
            return Err(EvalError::Degree {
                name,
                expected: self.degree,
                found: p.degree(),
            });
        }
        self.map.insert(name, p);
        Ok(())
    }

    /// Evaluates each macro in order and binds its name to the result.
    pub fn bind_macros<'a>(
        &mut self,
        macros: impl IntoIterator<Item = (&'a str, &'a MoveWord)>,
        order: Order,
    ) -> Result<(), EvalError> {
        for (name, word) in macros {
            let p = eval_word(word, self, order)?;
            self.map.insert(name.to_string(), p);
        }
        Ok(())
    }

    pub fn get(&self, name: &str) -> Option<&Permutation> {
        self.map.get(name)
    }

    pub fn contains(&self, name: &str) -> bool {
        self.map.contains_key(name)
    }
}

/// Generator name for the rotation of cycle `index` (0-based): `M1`, `M2`, ...
pub fn move_name(index: usize) -> String {
    format!("M{}", index + 1)
}

/// Homomorphic evaluation of `w` under `order`.
pub fn eval_word(w: &MoveWord, env: &Bindings, order: Order) -> Result<Permutation, EvalError> {
    match w {
        MoveWord::Atom(name) => env
            .map
            .get(name)
            .cloned()
            .ok_or_else(|| EvalError::Unbound(name.clone())),
        MoveWord::Inverse(x) => Ok(eval_word(x, env, order)?.inverse()),
        MoveWord::Power(x, e) => Ok(eval_word(x, env, order)?.pow(*e)),
        MoveWord::Sequence(items) => {
            let mut acc = Permutation::identity(env.degree);
            for item in items {
                let p = eval_word(item, env, order)?;
                acc = match order {
                    Order::LeftToRight => acc.then(&p),
                    Order::RightToLeft => p.then(&acc),
                };
            }
            Ok(acc)
        }
    }
}
