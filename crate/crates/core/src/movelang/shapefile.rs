//! Line-oriented `.shape` files:
//!
//! ```text
//! # comment
//! base 4
//! attach path v0 v1 new 1
//! relabel 1 2 3 4 5 6
//! color 1 r
//! let X = M1 M2'
//! ```

use std::collections::BTreeMap;
use std::fmt::Write as _;

use thiserror::Error;

use super::{format_word, parse_word, MoveWord, ParseError};
use crate::shape::{Shape, ShapeError, Step};
use crate::square::{Color, ColorState};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ShapeFileError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: {source}")]
    Shape { line: usize, source: ShapeError },
    #[error("line {line}: {source}")]
    Word { line: usize, source: ParseError },
    #[error("line {line}: macro `{name}` is already defined")]
    Redefinition { line: usize, name: String },
    #[error("line {line}: macro name `{name}` shadows a move")]
    ShadowsMove { line: usize, name: String },
    #[error("edge {edge} has no color")]
    MissingColor { edge: usize },
    #[error("no `base` directive")]
    Empty,
}

impl ShapeFileError {
    pub fn line(&self) -> Option<usize> {
        match self {
            ShapeFileError::Syntax { line, .. }
            | ShapeFileError::Shape { line, .. }
            | ShapeFileError::Word { line, .. }
            | ShapeFileError::Redefinition { line, .. }
            | ShapeFileError::ShadowsMove { line, .. } => Some(*line),
            _ => None,
        }
    }
}

/// A parsed `.shape` file.
#[derive(Debug, Clone)]
pub struct ShapeDoc {
    pub shape: Shape,
    pub colors: Option<ColorState>,
    /// Macro definitions in file order.
    pub macros: Vec<(String, MoveWord)>,
}

impl ShapeDoc {
    pub fn macro_map(&self) -> BTreeMap<String, MoveWord> {
        self.macros.iter().cloned().collect()
    }

    pub fn is_known(&self, name: &str) -> bool {
        is_move_name(name, self.shape.cycle_count()) || self.macros.iter().any(|(n, _)| n == name)
    }
}

fn is_move_name(name: &str, cycles: usize) -> bool {
    name.strip_prefix('M')
        .and_then(|d| d.parse::<usize>().ok())
        .is_some_and(|i| i >= 1 && i <= cycles && !name[1..].starts_with('0'))
}

fn looks_like_move(name: &str) -> bool {
    name.strip_prefix('M')
        .is_some_and(|d| !d.is_empty() && d.chars().all(|c| c.is_ascii_digit()))
}

fn vertex(tok: &str) -> Option<usize> {
    tok.strip_prefix('v').unwrap_or(tok).parse().ok()
}

pub fn parse_shape_file(text: &str) -> Result<ShapeDoc, ShapeFileError> {
    let mut shape: Option<Shape> = None;
    let mut colors: BTreeMap<usize, Color> = BTreeMap::new();
    let mut macros: Vec<(String, MoveWord)> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let syntax = |message: &str| ShapeFileError::Syntax {
            line,
            message: message.to_string(),
        };
        let lift = |source: ShapeError| ShapeFileError::Shape { line, source };
        let toks: Vec<&str> = content.split_whitespace().collect();
        match toks[0] {
            "base" => {
                if shape.is_some() {
                    return Err(syntax("`base` may appear only once"));
                }
                let n = match toks.as_slice() {
                    [_, n] => n.parse().map_err(|_| syntax("expected `base N`"))?,
                    _ => return Err(syntax("expected `base N`")),
                };
                shape = Some(Shape::base_cycle(n).map_err(lift)?);
            }
            "attach" => {
                let s = shape.as_ref().ok_or_else(|| syntax("`attach` before `base`"))?;
                let new_at = toks
                    .iter()
                    .position(|&t| t == "new")
                    .ok_or_else(|| syntax("expected `attach path <vertices> new K`"))?;
                if toks.get(1) != Some(&"path") || new_at + 2 != toks.len() {
                    return Err(syntax("expected `attach path <vertices> new K`"));
                }
                let path = toks[2..new_at]
                    .iter()
                    .map(|t| vertex(t).ok_or_else(|| syntax(&format!("bad vertex `{t}`"))))
                    .collect::<Result<Vec<_>, _>>()?;
                let k = toks[new_at + 1]
                    .parse()
                    .map_err(|_| syntax("bad new-vertex count"))?;
                shape = Some(s.attach(&path, k).map_err(lift)?);
            }
            "relabel" => {
                let s = shape.as_ref().ok_or_else(|| syntax("`relabel` before `base`"))?;
                let labels = toks[1..]
                    .iter()
                    .map(|t| t.parse().map_err(|_| syntax(&format!("bad label `{t}`"))))
                    .collect::<Result<Vec<usize>, _>>()?;
                shape = Some(s.relabel(&labels).map_err(lift)?);
            }
            "color" => {
                let s = shape.as_ref().ok_or_else(|| syntax("`color` before `base`"))?;
                let [_, edge, c] = toks.as_slice() else {
                    return Err(syntax("expected `color <edge> <r|b|w|g>`"));
                };
                let edge: usize = edge.parse().map_err(|_| syntax("bad edge label"))?;
                if edge == 0 || edge > s.edge_count() {
                    return Err(syntax(&format!("edge {edge} out of range")));
                }
                let color = match c.chars().collect::<Vec<_>>().as_slice() {
                    [ch] => Color::from_char(*ch),
                    _ => None,
                }
                .ok_or_else(|| syntax(&format!("bad color `{c}`")))?;
                if colors.insert(edge, color).is_some() {
                    return Err(syntax(&format!("edge {edge} colored twice")));
                }
            }
            "let" => {
                let s = shape.as_ref().ok_or_else(|| syntax("`let` before `base`"))?;
                let (lhs, rhs) = content[3..]
                    .split_once('=')
                    .ok_or_else(|| syntax("expected `let NAME = word`"))?;
                let name = lhs.trim().to_string();
                let valid = name.chars().next().is_some_and(|c| c.is_ascii_alphabetic())
                    && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
                if !valid {
                    return Err(syntax(&format!("bad macro name `{name}`")));
                }
                if looks_like_move(&name) {
                    return Err(ShapeFileError::ShadowsMove { line, name });
                }
                if macros.iter().any(|(n, _)| *n == name) {
                    return Err(ShapeFileError::Redefinition { line, name });
                }
                let cycles = s.cycle_count();
                let word = parse_word(rhs, |n| {
                    is_move_name(n, cycles) || macros.iter().any(|(m, _)| m == n)
                })
                .map_err(|source| ShapeFileError::Word { line, source })?;
                macros.push((name, word));
            }
            other => return Err(syntax(&format!("unknown directive `{other}`"))),
        }
    }

    let shape = shape.ok_or(ShapeFileError::Empty)?;
    let colors = if colors.is_empty() {
        None
    } else {
        let mut v = Vec::with_capacity(shape.edge_count());
        for edge in 1..=shape.edge_count() {
            v.push(*colors.get(&edge).ok_or(ShapeFileError::MissingColor { edge })?);
        }
        Some(ColorState::new(v))
    };
    Ok(ShapeDoc {
        shape,
        colors,
        macros,
    })
}

/// Canonical text for a document; re-parsing it gives the same document.
pub fn format_shape_file(doc: &ShapeDoc) -> String {
    let mut out = String::new();
    for step in doc.shape.trace() {
        match step {
            Step::Base(n) => writeln!(out, "base {n}").unwrap(),
            Step::Attach { path, new_vertices } => {
                let vs: Vec<String> = path.iter().map(|v| format!("v{v}")).collect();
                writeln!(out, "attach path {} new {new_vertices}", vs.join(" ")).unwrap();
            }
            Step::Relabel(labels) => {
                let ls: Vec<String> = labels.iter().map(usize::to_string).collect();
                writeln!(out, "relabel {}", ls.join(" ")).unwrap();
            }
        }
    }
    if let Some(colors) = &doc.colors {
        for (i, c) in colors.colors().iter().enumerate() {
            writeln!(out, "color {} {}", i + 1, c.to_char()).unwrap();
        }
    }
    for (name, word) in &doc.macros {
        writeln!(out, "let {name} = {}", format_word(word)).unwrap();
    }
    out
}
