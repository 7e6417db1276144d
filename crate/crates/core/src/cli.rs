//! Command-line front end. `run` never panics on bad input; it writes one
//! `error:` line and returns the exit code.

use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use crate::group::factorial;
use crate::ledger::{self, Discrepancy};
use crate::movelang::{eval_word, parse_shape_file, parse_word, Bindings, Convention, ShapeDoc};
use crate::square::{
    bfs_colors, published_macros, solve_color, square_group, square_shape, verify_macro, BfsOptions,
    ColorState, Grade,
};
use crate::theorem::{classify_text, constructive_completeness, parity_obstruction, verify_base_case};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

const METRICS: [&str; 1] = ["quarter-turn"];

#[derive(Debug, Parser)]
#[command(name = "rubik-shapes", version, about = "Permutation-group tools for polygon puzzles")]
pub struct Config {
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Append confirmed discrepancies to this file.
    #[arg(long, global = true)]
    pub ledger: Option<PathBuf>,
    /// Reading convention: ltr-fwd, ltr-bwd, rtl-fwd or rtl-bwd.
    #[arg(long, global = true, default_value = "ltr-fwd")]
    pub convention: String,
    /// Search metric for `bfs` and `solve`.
    #[arg(long, global = true, default_value = "quarter-turn")]
    pub metric: String,
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    pub verbose: u8,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Replay a shape file and check its construction.
    Validate { file: PathBuf },
    /// Evaluate a move word on a shape.
    Apply { file: PathBuf, word: String },
    /// Grade the published square macros under every convention.
    VerifyMacros { file: PathBuf },
    /// Order of the rotation group.
    GroupOrder { file: PathBuf },
    /// Label and color completeness verdicts.
    Completeness { file: PathBuf },
    /// Breadth-first search over colorings.
    Bfs { file: PathBuf },
    /// Shortest move word between two colorings.
    Solve { file: PathBuf, from: String, to: String },
    /// Audit the base-case transposition word for cycles (0..k) and an l+1 cycle.
    #[command(name = "theorem1-audit")]
    Theorem1Audit { k: usize, l: usize },
    /// Whether every rotation is even.
    Parity { file: PathBuf },
}

struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }

    fn invalid(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_FAILURE,
            message: message.into(),
        }
    }
}

struct Output {
    text: String,
    code: i32,
    ledger: Vec<Discrepancy>,
}

impl Output {
    fn ok(text: String) -> Self {
        Output {
            text,
            code: EXIT_OK,
            ledger: Vec::new(),
        }
    }
}

/// Runs the CLI with `argv` (including the program name). Reports go to
/// `out` unless `--out` is given; errors go to `err`.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let config = match Config::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{}", e.render());
                return EXIT_OK;
            }
            let msg = e.to_string();
            let line = msg.lines().next().unwrap_or("usage error");
            let _ = writeln!(err, "error: {}", line.trim_start_matches("error: "));
            return EXIT_USAGE;
        }
    };
    match execute(&config) {
        Ok(output) => {
            if let Some(path) = &config.ledger {
                if !output.ledger.is_empty() {
                    if let Err(e) = ledger::append_ledger(path, &output.ledger) {
                        let _ = writeln!(err, "error: {}: {e}", path.display());
                        return EXIT_USAGE;
                    }
                }
            }
            let written = match &config.out {
                Some(path) => std::fs::write(path, &output.text).map_err(|e| (path.clone(), e)),
                None => out.write_all(output.text.as_bytes()).map_err(|e| (PathBuf::from("-"), e)),
            };
            if let Err((path, e)) = written {
                let _ = writeln!(err, "error: {}: {e}", path.display());
                return EXIT_USAGE;
            }
            output.code
        }
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message.replace('\n', " "));
            f.code
        }
    }
}

fn execute(config: &Config) -> Result<Output, Failure> {
    let convention = Convention::parse(&config.convention).ok_or_else(|| {
        Failure::usage(format!(
            "unknown convention `{}` (expected ltr-fwd, ltr-bwd, rtl-fwd or rtl-bwd)",
            config.convention
        ))
    })?;
    if !METRICS.contains(&config.metric.as_str()) {
        return Err(Failure::usage(format!(
            "unknown metric `{}` (expected {})",
            config.metric,
            METRICS.join(", ")
        )));
    }
    let verbose = config.verbose > 0;
    match &config.command {
        Command::Validate { file } => validate(&load(file)?, file),
        Command::Apply { file, word } => apply(&load(file)?, word, convention),
        Command::VerifyMacros { file } => verify_macros(&load(file)?, verbose),
        Command::GroupOrder { file } => group_order(&load(file)?, verbose),
        Command::Completeness { file } => completeness(&load(file)?, verbose),
        Command::Bfs { file } => bfs(&load(file)?, &config.metric),
        Command::Solve { file, from, to } => solve(&load(file)?, from, to),
        Command::Theorem1Audit { k, l } => theorem1_audit(*k, *l),
        Command::Parity { file } => parity(&load(file)?),
    }
}

fn load(path: &Path) -> Result<ShapeDoc, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
    parse_shape_file(&text).map_err(|e| Failure::invalid(format!("{}: {e}", path.display())))
}

fn colors_of(doc: &ShapeDoc) -> Result<&ColorState, Failure> {
    doc.colors
        .as_ref()
        .ok_or_else(|| Failure::invalid("the shape file has no `color` lines"))
}

fn parse_state(doc: &ShapeDoc, text: &str) -> Result<ColorState, Failure> {
    let state: ColorState = text
        .parse()
        .map_err(|e| Failure::invalid(format!("bad coloring `{text}`: {e}")))?;
    if state.len() != doc.shape.edge_count() {
        return Err(Failure::invalid(format!(
            "coloring `{text}` has {} edges, shape has {}",
            state.len(),
            doc.shape.edge_count()
        )));
    }
    Ok(state)
}

fn validate(doc: &ShapeDoc, path: &Path) -> Result<Output, Failure> {
    let s = &doc.shape;
    let mut text = String::new();
    writeln!(text, "file: {}", path.display()).unwrap();
    writeln!(text, "shape: {}", s.describe()).unwrap();
    for (i, c) in s.cycles().iter().enumerate() {
        let labels: Vec<String> = c.iter().map(|e| (e.0 + 1).to_string()).collect();
        writeln!(text, "C{}: ({})", i + 1, labels.join(" ")).unwrap();
    }
    writeln!(text, "single-share: {}", s.satisfies_single_share()).unwrap();
    if let Some(c) = &doc.colors {
        writeln!(text, "colors: {c}").unwrap();
    }
    for (name, w) in &doc.macros {
        writeln!(text, "macro {name}: {w}").unwrap();
    }
    writeln!(text, "valid: true").unwrap();
    Ok(Output::ok(text))
}

fn apply(doc: &ShapeDoc, word: &str, convention: Convention) -> Result<Output, Failure> {
    let w = parse_word(word, |n| doc.is_known(n)).map_err(|e| Failure::invalid(format!("word: {e}")))?;
    let mut env = Bindings::for_shape(&doc.shape, convention.direction);
    env.bind_macros(doc.macros.iter().map(|(n, w)| (n.as_str(), w)), convention.order)
        .map_err(|e| Failure::invalid(e.to_string()))?;
    let p = eval_word(&w, &env, convention.order).map_err(|e| Failure::invalid(e.to_string()))?;
    let mut text = String::new();
    writeln!(text, "word: {w}").unwrap();
    writeln!(text, "convention: {convention}").unwrap();
    writeln!(text, "quarter-turns: {}", w.atom_count(&doc.macro_map())).unwrap();
    writeln!(text, "permutation: {}", p.cycle_string(true)).unwrap();
    writeln!(text, "sign: {:+}", p.sign()).unwrap();
    if let Some(c) = &doc.colors {
        writeln!(text, "before: {c}").unwrap();
        writeln!(text, "after: {}", c.apply(&p)).unwrap();
    }
    Ok(Output::ok(text))
}

fn require_square(doc: &ShapeDoc) -> Result<(), Failure> {
    if doc.shape.generators() != square_shape().generators() {
        return Err(Failure::invalid("the published macros are defined only on the 2x2 square"));
    }
    Ok(())
}

fn verify_macros(doc: &ShapeDoc, verbose: bool) -> Result<Output, Failure> {
    require_square(doc)?;
    let table = published_macros();
    let group = square_group();
    let mut text = String::new();
    let mut summary = Vec::new();
    for m in table.defs() {
        let r = verify_macro(m, &table, &Convention::ALL, Some(&group))
            .map_err(|e| Failure::invalid(format!("{}: {e}", m.name)))?;
        text.push_str(&r.to_text());
        text.push('\n');
        let repaired = r.best_grade() == Grade::LabelExact || r.synthesized.is_some();
        summary.push((m.name.clone(), r.best_grade(), repaired));
    }
    let mut code = EXIT_OK;
    for (name, grade, repaired) in &summary {
        writeln!(text, "summary {name}: {}{}", grade.id(), if *repaired { "" } else { " (unrepaired)" }).unwrap();
        if !repaired {
            code = EXIT_FAILURE;
        }
    }
    if verbose {
        writeln!(text, "square-group-order: {}", group.order()).unwrap();
    }
    Ok(Output {
        text,
        code,
        ledger: vec![ledger::line_move_parity(), ledger::macro_grades()],
    })
}

fn group_order(doc: &ShapeDoc, verbose: bool) -> Result<Output, Failure> {
    let g = doc.shape.group();
    let n = doc.shape.edge_count();
    let mut text = String::new();
    writeln!(text, "edges: {n}").unwrap();
    writeln!(text, "order: {}", g.order()).unwrap();
    writeln!(text, "symmetric-order: {}", factorial(n)).unwrap();
    writeln!(text, "group: {}", classify_text(&g.classify(), n)).unwrap();
    if verbose {
        let base: Vec<String> = g.base().iter().map(|b| (b + 1).to_string()).collect();
        let sizes: Vec<String> = g.transversal_sizes().iter().map(usize::to_string).collect();
        writeln!(text, "base: {}", base.join(" ")).unwrap();
        writeln!(text, "transversal-sizes: {}", sizes.join(" ")).unwrap();
        writeln!(text, "strong-generators: {}", g.strong_generator_count()).unwrap();
        writeln!(text, "longest-transversal-word: {}", g.max_word_len()).unwrap();
    }
    Ok(Output::ok(text))
}

fn completeness(doc: &ShapeDoc, verbose: bool) -> Result<Output, Failure> {
    let s = &doc.shape;
    let n = s.edge_count();
    let order = s.group().order();
    let mut text = String::new();
    writeln!(text, "edges: {n}").unwrap();
    writeln!(text, "label-order: {order}").unwrap();
    writeln!(text, "label-complete: {}", order == factorial(n)).unwrap();
    if let Some(c) = &doc.colors {
        let r = bfs_colors(s, c, &BfsOptions::default()).map_err(|e| Failure::invalid(e.to_string()))?;
        writeln!(text, "color-reachable: {}", r.reachable).unwrap();
        writeln!(text, "color-total: {}", r.total_colorings).unwrap();
        writeln!(text, "color-complete: {}", r.color_complete()).unwrap();
    }
    let t = constructive_completeness(s);
    let conclusion = t.to_text().lines().find(|l| l.starts_with("conclusion:")).unwrap_or_default().to_string();
    writeln!(text, "constructive-{conclusion}").unwrap();
    if verbose {
        text.push_str(&t.to_text());
    }
    Ok(Output::ok(text))
}

fn bfs(doc: &ShapeDoc, metric: &str) -> Result<Output, Failure> {
    let start = colors_of(doc)?;
    let opts = BfsOptions {
        cycles: None,
        parallel: true,
    };
    let r = bfs_colors(&doc.shape, start, &opts).map_err(|e| Failure::invalid(e.to_string()))?;
    let mut text = format!("requested-metric: {metric}\n");
    text.push_str(&r.to_text());
    writeln!(text, "gods-number: {}", r.eccentricity()).unwrap();
    Ok(Output::ok(text))
}

fn solve(doc: &ShapeDoc, from: &str, to: &str) -> Result<Output, Failure> {
    let a = parse_state(doc, from)?;
    let b = parse_state(doc, to)?;
    let w = solve_color(&doc.shape, &a, &b, &BfsOptions::default()).map_err(|e| Failure::invalid(e.to_string()))?;
    let mut text = String::new();
    writeln!(text, "from: {a}").unwrap();
    writeln!(text, "to: {b}").unwrap();
    writeln!(text, "length: {}", w.letters().len()).unwrap();
    writeln!(text, "word: {w}").unwrap();
    Ok(Output::ok(text))
}

fn theorem1_audit(k: usize, l: usize) -> Result<Output, Failure> {
    let r = verify_base_case(k, l).map_err(|e| Failure::usage(e.to_string()))?;
    Ok(Output {
        text: r.to_text(),
        code: EXIT_OK,
        ledger: vec![ledger::base_exponent_parity(), ledger::inductive_k()],
    })
}

fn parity(doc: &ShapeDoc) -> Result<Output, Failure> {
    let (all_even, cert) = parity_obstruction(&doc.shape);
    let mut text = cert.to_text();
    if all_even {
        writeln!(
            text,
            "all generators even: not complete (group inside the alternating group on {} edges)",
            cert.edges
        )
        .unwrap();
    } else {
        writeln!(text, "all generators even: false (no parity obstruction)").unwrap();
    }
    writeln!(text, "verdict: {}", !all_even).unwrap();
    let ledger = if all_even && doc.shape.cycle_count() == 2 {
        vec![ledger::odd_pair_degree()]
    } else {
        Vec::new()
    };
    Ok(Output {
        text,
        code: EXIT_OK,
        ledger,
    })
}
