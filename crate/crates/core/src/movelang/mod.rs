//! The move-word language and the `.shape` file format.
//!
//! Words are juxtaposed terms read left to right, with `'` for inverse and
//! `^n` for powers: `M1 M3 M1 M2^3 (M3 M1)' G_TL'`.

mod eval;
mod shapefile;
mod syntax;
mod word;

pub use eval::{eval_word, move_name, Bindings, Convention, Direction, EvalError, Order};
pub use shapefile::{format_shape_file, parse_shape_file, ShapeDoc, ShapeFileError};
pub use syntax::{format_word, parse_word, parse_word_any, ParseError};
pub use word::{fold_runs, MoveWord};

#[cfg(test)]
mod tests;
