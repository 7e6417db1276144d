//! Published macro words for the square, a grader that runs them under
//! every reading convention, and a synthesizer backed by Schreier-Sims.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};

use thiserror::Error;

use super::{square_shape, standard_state, ColorGroup};
use crate::group::{GroupBsgs, GroupError};
use crate::movelang::{eval_word, parse_word_any, Bindings, Convention, EvalError, MoveWord};
use crate::perm::Permutation;
use crate::shape::Shape;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MacroError {
    #[error("edge swap needs two distinct edges in 1..=12, got {0} and {1}")]
    DegenerateContract(usize, usize),
    #[error("bad published notation: {0}")]
    Notation(String),
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// What a macro is supposed to do, in edge labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Contract {
    /// Exchange two color groups; `pairing` lists where each edge of the
    /// first group goes in the second.
    GroupSwap {
        first: ColorGroup,
        second: ColorGroup,
        pairing: [(usize, usize); 3],
    },
    /// Exchange two edges.
    EdgeSwap(usize, usize),
}

impl Contract {
    /// A group swap pairing the edges of both groups in ascending order,
    /// except T↔L which uses the observed G_TL outcome (1 8)(2 6)(3 4).
    pub fn group_swap(first: ColorGroup, second: ColorGroup) -> Contract {
        let pairing = match (first, second) {
            (ColorGroup::T, ColorGroup::L) => [(1, 8), (2, 6), (4, 3)],
            (ColorGroup::L, ColorGroup::T) => [(8, 1), (6, 2), (3, 4)],
            _ => {
                let (a, b) = (first.edges(), second.edges());
                [(a[0], b[0]), (a[1], b[1]), (a[2], b[2])]
            }
        };
        Contract::GroupSwap {
            first,
            second,
            pairing,
        }
    }

    pub fn edge_swap(a: usize, b: usize) -> Result<Contract, MacroError> {
        if a == b || !(1..=12).contains(&a) || !(1..=12).contains(&b) {
            return Err(MacroError::DegenerateContract(a, b));
        }
        Ok(Contract::EdgeSwap(a.min(b), a.max(b)))
    }

    /// The exact permutation a label-exact realization should produce.
    pub fn target(&self) -> Permutation {
        match self {
            Contract::GroupSwap { pairing, .. } => {
                let cycles: Vec<[usize; 2]> = pairing.iter().map(|&(a, b)| [a - 1, b - 1]).collect();
                Permutation::from_cycles(12, &cycles).expect("pairing is a matching")
            }
            Contract::EdgeSwap(a, b) => Permutation::transposition(12, a - 1, b - 1).unwrap(),
        }
    }

    pub fn sign(&self) -> i8 {
        self.target().sign()
    }

    /// Label-exact: the group swap exchanges the two edge sets (in any
    /// pairing) and fixes the rest; the edge swap is exactly the transposition.
    pub fn is_label_exact(&self, p: &Permutation) -> bool {
        match self {
            Contract::GroupSwap { first, second, .. } => {
                let (a, b) = (first.edges(), second.edges());
                (1..=12).all(|e| {
                    let img = p.apply(e - 1) + 1;
                    if a.contains(&e) {
                        b.contains(&img)
                    } else if b.contains(&e) {
                        a.contains(&img)
                    } else {
                        img == e
                    }
                })
            }
            Contract::EdgeSwap(..) => *p == self.target(),
        }
    }

    pub fn name(&self) -> String {
        match self {
            Contract::GroupSwap { first, second, .. } => format!("group-swap {first} {second}"),
            Contract::EdgeSwap(a, b) => format!("edge-swap {a} {b}"),
        }
    }
}

impl fmt::Display for Contract {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Source {
    Published,
    /// Reflection of a published word through a symmetry of the grid.
    Mirrored,
    DerivedComposition,
    Synthesized,
}

impl Source {
    pub fn id(self) -> &'static str {
        match self {
            Source::Published => "published",
            Source::Mirrored => "mirrored",
            Source::DerivedComposition => "derived-composition",
            Source::Synthesized => "synthesized",
        }
    }
}

#[derive(Debug, Clone)]
pub struct MacroDef {
    pub name: String,
    pub word: MoveWord,
    pub contract: Contract,
    pub source: Source,
    /// Original notation for published words, e.g. `M_1M_3M_1...`.
    pub notation: Option<&'static str>,
}

/// Converts `M_1M_3`, `G_{TL}`, `L_{1\,3}` and `X^{-1}` notation into the
/// word grammar.
pub fn from_published_notation(text: &str) -> Result<MoveWord, MacroError> {
    let bad = || MacroError::Notation(text.to_string());
    let chars: Vec<char> = text.chars().filter(|c| !c.is_whitespace()).collect();
    let mut i = 0;
    let mut tokens = Vec::new();
    while i < chars.len() {
        let head = chars[i];
        if !head.is_ascii_alphabetic() || chars.get(i + 1) != Some(&'_') {
            return Err(bad());
        }
        i += 2;
        let sub = match chars.get(i) {
            Some('{') => {
                let close = chars[i..].iter().position(|&c| c == '}').ok_or_else(bad)? + i;
                let inner: String = chars[i + 1..close].iter().collect();
                i = close + 1;
                let parts: Vec<&str> = inner.split("\\,").filter(|p| !p.is_empty()).collect();
                if parts.iter().all(|p| p.chars().count() == 1) {
                    parts.concat()
                } else {
                    parts.join("_")
                }
            }
            Some(c) if c.is_ascii_alphanumeric() => {
                i += 1;
                c.to_string()
            }
            _ => return Err(bad()),
        };
        let mut tok = if head == 'M' {
            format!("M{sub}")
        } else {
            format!("{head}_{sub}")
        };
        let rest: String = chars[i..].iter().take(5).collect();
        if rest == "^{-1}" {
            tok.push('\'');
            i += 5;
        }
        tokens.push(tok);
    }
    parse_word_any(&tokens.join(" ")).map_err(|_| bad())
}

/// Left-right reflection of the grid: faces M1↔M2, M3↔M4, turning reversed.
fn mirror_left_right(name: &str) -> MoveWord {
    let to = match name {
        "M1" => "M2",
        "M2" => "M1",
        "M3" => "M4",
        "M4" => "M3",
        other => return MoveWord::atom(other),
    };
    MoveWord::atom(to).inverse()
}

/// Top-bottom reflection: faces M1↔M3, M2↔M4, turning reversed.
fn mirror_top_bottom(name: &str) -> MoveWord {
    let to = match name {
        "M1" => "M3",
        "M3" => "M1",
        "M2" => "M4",
        "M4" => "M2",
        other => return MoveWord::atom(other),
    };
    MoveWord::atom(to).inverse()
}

/// Named macros evaluated in definition order.
#[derive(Debug, Clone)]
pub struct MacroTable {
    defs: Vec<MacroDef>,
}

impl MacroTable {
    pub fn new(defs: Vec<MacroDef>) -> Self {
        MacroTable { defs }
    }

    pub fn defs(&self) -> &[MacroDef] {
        &self.defs
    }

    pub fn get(&self, name: &str) -> Option<&MacroDef> {
        self.defs.iter().find(|d| d.name == name)
    }

    pub fn word_map(&self) -> BTreeMap<String, MoveWord> {
        self.defs.iter().map(|d| (d.name.clone(), d.word.clone())).collect()
    }

    /// `M1..M4` for the convention's direction plus every macro evaluated
    /// under its order.
    pub fn bindings(&self, shape: &Shape, convention: Convention) -> Result<Bindings, EvalError> {
        let mut env = Bindings::for_shape(shape, convention.direction);
        env.bind_macros(
            self.defs.iter().map(|d| (d.name.as_str(), &d.word)),
            convention.order,
        )?;
        Ok(env)
    }
}

/// Every published color-group and line move, plus the two mirrored line
/// moves the derived ones are defined through.
pub fn published_macros() -> MacroTable {
    use ColorGroup::*;
    let published: [(&str, &'static str, Contract); 6] = [
        ("G_TL", "M_1M_3M_1M_2M_2M_2M_3M_3M_3M_1M_2", Contract::group_swap(T, L)),
        (
            "G_TR",
            "M_2M_1M_2M_4M_2M_4M_2M_4M_2M_1M_1M_1M_2M_4M_4M_4M_2M_4M_4M_4M_2M_2M_2",
            Contract::group_swap(T, R),
        ),
        (
            "G_LB",
            "M_3M_4M_3M_1M_3M_1M_3M_1M_3M_3M_1M_3M_1M_1M_3M_3M_3M_4M_4M_4",
            Contract::group_swap(L, B),
        ),
        (
            "G_RB",
            "M_4M_2M_4M_3M_3M_3M_2M_4M_2M_2M_4M_4M_4M_2M_4M_3",
            Contract::group_swap(R, B),
        ),
        ("G_TB", "G_{TL}G_{LB}G_{TL}", Contract::group_swap(T, B)),
        ("G_LR", "G_{TL}G_{TR}G_{TL}", Contract::group_swap(L, R)),
    ];
    let mut defs: Vec<MacroDef> = published
        .into_iter()
        .map(|(name, notation, contract)| MacroDef {
            name: name.into(),
            word: from_published_notation(notation).expect("valid notation"),
            contract,
            source: Source::Published,
            notation: Some(notation),
        })
        .collect();

    let l13_notation = "M_2M_1M_2M_4M_4M_4M_3M_3M_1M_1M_1M_3M_1M_3M_3M_4M_2M_2M_1M_2";
    let l13 = from_published_notation(l13_notation).expect("valid notation");
    defs.push(MacroDef {
        name: "L_13".into(),
        word: l13.clone(),
        contract: Contract::EdgeSwap(1, 3),
        source: Source::Published,
        notation: Some(l13_notation),
    });
    defs.push(MacroDef {
        name: "L_25".into(),
        word: l13.substitute(&mirror_left_right),
        contract: Contract::EdgeSwap(2, 5),
        source: Source::Mirrored,
        notation: None,
    });
    defs.push(MacroDef {
        name: "L_8_11".into(),
        word: l13.substitute(&mirror_top_bottom),
        contract: Contract::EdgeSwap(8, 11),
        source: Source::Mirrored,
        notation: None,
    });
    let line_moves: [(&str, &'static str, (usize, usize)); 5] = [
        ("L_48", "G_{TL}L_{1\\,3}G_{TL}^{-1}", (4, 8)),
        ("L_56", "G_{TL}L_{2\\,5}G_{TL}^{-1}", (5, 6)),
        ("L_1_11", "G_{TB}L_{8\\,11}G_{TB}^{-1}", (1, 11)),
        ("L_3_11", "L_{1\\,3}L_{1\\,11}L_{1\\,3}", (3, 11)),
        ("L_47", "G_{TR}L_{2\\,5}G_{TR}^{-1}", (4, 7)),
    ];
    for (name, notation, (a, b)) in line_moves {
        defs.push(MacroDef {
            name: name.into(),
            word: from_published_notation(notation).expect("valid notation"),
            contract: Contract::EdgeSwap(a, b),
            source: Source::Published,
            notation: Some(notation),
        });
    }
    MacroTable::new(defs)
}

/// Outcome of one macro under one convention.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Grade {
    Failed,
    ColorOnly,
    LabelExact,
}

impl Grade {
    pub fn id(self) -> &'static str {
        match self {
            Grade::Failed => "failed",
            Grade::ColorOnly => "color-only",
            Grade::LabelExact => "label-exact",
        }
    }
}

#[derive(Debug, Clone)]
pub struct ConventionResult {
    pub convention: Convention,
    pub grade: Grade,
    pub permutation: Permutation,
}

#[derive(Debug, Clone)]
pub struct VerificationReport {
    pub name: String,
    pub source: Source,
    pub word: MoveWord,
    /// Quarter turns after macro expansion.
    pub atoms: u64,
    pub contract: Contract,
    pub results: Vec<ConventionResult>,
    pub contract_sign: i8,
    pub word_sign: i8,
    pub synthesized: Option<MoveWord>,
}

impl VerificationReport {
    /// Whether the word's sign allows a label-exact result. A group swap
    /// may exchange the two sets with either sign, so only its specific
    /// pairing is ruled out by a sign mismatch.
    pub fn parity_feasible(&self) -> bool {
        self.contract_sign == self.word_sign || matches!(self.contract, Contract::GroupSwap { .. })
    }

    pub fn best_grade(&self) -> Grade {
        self.results.iter().map(|r| r.grade).max().unwrap_or(Grade::Failed)
    }

    pub fn label_exact_conventions(&self) -> Vec<Convention> {
        self.results
            .iter()
            .filter(|r| r.grade == Grade::LabelExact)
            .map(|r| r.convention)
            .collect()
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "macro: {}", self.name).unwrap();
        writeln!(out, "source: {}", self.source.id()).unwrap();
        writeln!(out, "word: {}", self.word).unwrap();
        writeln!(out, "atoms: {}", self.atoms).unwrap();
        writeln!(out, "contract: {}", self.contract).unwrap();
        writeln!(out, "contract-permutation: {}", self.contract.target().cycle_string(true)).unwrap();
        for r in &self.results {
            writeln!(
                out,
                "convention {}: {} {}",
                r.convention,
                r.grade.id(),
                r.permutation.cycle_string(true)
            )
            .unwrap();
        }
        writeln!(
            out,
            "parity: contract sign {:+}, word sign {:+} ({} quarter-turns): {}",
            self.contract_sign,
            self.word_sign,
            self.atoms,
            match (self.contract_sign == self.word_sign, self.parity_feasible()) {
                (true, _) => "feasible",
                (false, true) => "pairing impossible, set exchange feasible",
                (false, false) => "label-exact impossible",
            }
        )
        .unwrap();
        writeln!(out, "best-grade: {}", self.best_grade().id()).unwrap();
        if let Some(w) = &self.synthesized {
            writeln!(out, "synthesized: {w}").unwrap();
        }
        out
    }
}

/// Evaluates `m` under each convention and grades it against its contract.
/// When no convention is label-exact a replacement word is synthesized
/// from `group` (if given).
pub fn verify_macro(
    m: &MacroDef,
    table: &MacroTable,
    conventions: &[Convention],
    group: Option<&GroupBsgs>,
) -> Result<VerificationReport, MacroError> {
    let shape = square_shape();
    let start = standard_state();
    let wanted_colors = start.apply(&m.contract.target());
    let mut results = Vec::with_capacity(conventions.len());
    for &convention in conventions {
        let env = table.bindings(&shape, convention)?;
        let p = eval_word(&m.word, &env, convention.order)?;
        let grade = if m.contract.is_label_exact(&p) {
            Grade::LabelExact
        } else if start.apply(&p) == wanted_colors {
            Grade::ColorOnly
        } else {
            Grade::Failed
        };
        results.push(ConventionResult {
            convention,
            grade,
            permutation: p,
        });
    }

    let macros = table.word_map();
    let expanded = m.word.expanded(&macros);
    let atoms = m.word.atom_count(&macros);
    let word_sign = expanded
        .letters()
        .iter()
        .map(|(name, _)| {
            let i: usize = name[1..].parse().expect("expanded words contain only moves");
            shape.cycle_perm(i - 1, crate::movelang::Direction::Forward).unwrap().sign()
        })
        .product();

    let mut report = VerificationReport {
        name: m.name.clone(),
        source: m.source,
        word: m.word.clone(),
        atoms,
        contract: m.contract.clone(),
        results,
        contract_sign: m.contract.sign(),
        word_sign,
        synthesized: None,
    };
    if report.best_grade() != Grade::LabelExact {
        if let Some(g) = group {
            report.synthesized = Some(synthesize_macro(&m.contract, g)?.word);
        }
    }
    Ok(report)
}

/// The square's rotation group with generators `M1..M4`.
pub fn square_group() -> GroupBsgs {
    square_shape().group()
}

/// A word over `M1..M4` (and inverses) that performs the contract exactly
/// under the left-to-right, forward convention.
pub fn synthesize_macro(contract: &Contract, group: &GroupBsgs) -> Result<MacroDef, MacroError> {
    if let Contract::EdgeSwap(a, b) = contract {
        Contract::edge_swap(*a, *b)?;
    }
    let word = group.factor_word(&contract.target())?;
    let name = match contract {
        Contract::GroupSwap { first, second, .. } => format!("X_{first}{second}"),
        Contract::EdgeSwap(a, b) => format!("X_{a}_{b}"),
    };
    Ok(MacroDef {
        name,
        word,
        contract: contract.clone(),
        source: Source::Synthesized,
        notation: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::movelang::format_word;

    #[test]
    fn notation_conversion() {
        let w = from_published_notation("M_1M_3M_1M_2M_2M_2").unwrap();
        assert_eq!(format_word(&w), "M1 M3 M1 M2 M2 M2");
        let w = from_published_notation("G_{TL}L_{1\\,3}G_{TL}^{-1}").unwrap();
        assert_eq!(format_word(&w), "G_TL L_13 G_TL'");
        let w = from_published_notation("G_{TB}L_{8\\,11}G_{TB}^{-1}").unwrap();
        assert_eq!(format_word(&w), "G_TB L_8_11 G_TB'");
        assert!(from_published_notation("M1").is_err());
    }

    #[test]
    fn published_lengths() {
        let t = published_macros();
        let macros = t.word_map();
        let count = |n: &str| t.get(n).unwrap().word.atom_count(&macros);
        assert_eq!(count("G_TL"), 11);
        assert_eq!(count("L_13"), 20);
        assert_eq!(count("G_LB"), 20);
        assert_eq!(count("G_TB"), 42);
        assert_eq!(t.defs().len(), 14);
    }

    #[test]
    fn mirrored_words_hit_their_edges() {
        // the mirror of an exact swap of 1,3 would be an exact swap of 2,5:
        // check the symmetry on a transposition word directly
        let g = square_group();
        let w13 = g.factor_word(&Contract::EdgeSwap(1, 3).target()).unwrap();
        let shape = square_shape();
        let env = Bindings::for_shape(&shape, crate::movelang::Direction::Forward);
        let order = crate::movelang::Order::LeftToRight;
        let p = eval_word(&w13.substitute(&mirror_left_right), &env, order).unwrap();
        assert_eq!(p, Contract::EdgeSwap(2, 5).target());
        let p = eval_word(&w13.substitute(&mirror_top_bottom), &env, order).unwrap();
        assert_eq!(p, Contract::EdgeSwap(8, 11).target());
    }

    #[test]
    fn parity_lines() {
        let t = published_macros();
        let conv = Convention::ALL;
        let gtl = verify_macro(t.get("G_TL").unwrap(), &t, &conv, None).unwrap();
        assert_eq!((gtl.contract_sign, gtl.word_sign), (-1, -1));
        assert!(gtl.parity_feasible());
        let l13 = verify_macro(t.get("L_13").unwrap(), &t, &conv, None).unwrap();
        assert_eq!((l13.contract_sign, l13.word_sign), (-1, 1));
        assert!(!l13.parity_feasible());
        assert_ne!(l13.best_grade(), Grade::LabelExact);
    }

    #[test]
    fn identity_word_fails_everywhere() {
        let t = published_macros();
        let m = MacroDef {
            name: "I".into(),
            word: MoveWord::empty(),
            contract: Contract::EdgeSwap(1, 3),
            source: Source::Synthesized,
            notation: None,
        };
        let r = verify_macro(&m, &t, &Convention::ALL, None).unwrap();
        assert!(r.results.iter().all(|r| r.grade == Grade::Failed));
    }

    #[test]
    fn recorded_permutations_re_evaluate() {
        let t = published_macros();
        let shape = square_shape();
        for m in t.defs() {
            let r = verify_macro(m, &t, &Convention::ALL, None).unwrap();
            for res in &r.results {
                let env = t.bindings(&shape, res.convention).unwrap();
                assert_eq!(eval_word(&m.word, &env, res.convention.order).unwrap(), res.permutation);
            }
        }
    }

    #[test]
    fn synthesis() {
        let g = square_group();
        let shape = square_shape();
        let env = Bindings::for_shape(&shape, crate::movelang::Direction::Forward);
        for c in [
            Contract::edge_swap(1, 3).unwrap(),
            Contract::group_swap(ColorGroup::T, ColorGroup::L),
        ] {
            let m = synthesize_macro(&c, &g).unwrap();
            let p = eval_word(&m.word, &env, crate::movelang::Order::LeftToRight).unwrap();
            assert_eq!(p, c.target());
            assert!(c.is_label_exact(&p));
        }
        assert_eq!(
            Contract::group_swap(ColorGroup::T, ColorGroup::L).target().cycle_string(true),
            "(1 8)(2 6)(3 4)"
        );
        assert!(matches!(
            synthesize_macro(&Contract::EdgeSwap(1, 1), &g),
            Err(MacroError::DegenerateContract(1, 1))
        ));
    }
}
