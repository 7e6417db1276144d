//! Transposition words for shapes with an even cycle, checked by
//! evaluation, and the parity bound for shapes whose cycles are all odd.
//!
//! Base-case labels: the even cycle is `(0, 1, .., k)` and its neighbour is
//! `(0, k+l, k+l-1, .., k+1)`, sharing edge `0`.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt::{self, Write as _};

use num_bigint::BigUint;
use itertools::Itertools;
use rayon::prelude::*;
use thiserror::Error;

use crate::group::{factorial, GroupClass};
use crate::movelang::{eval_word, move_name, Bindings, Convention, Direction, EvalError, MoveWord, Order};
use crate::perm::Permutation;
use crate::shape::{EdgeId, Shape};

/// Largest `k` and `l` the base-case audit accepts.
pub const MAX_AUDIT: usize = 8;

const S1: &str = "s1";
const S2: &str = "s2";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TheoremError {
    #[error("exponent {rule} is not a nonnegative integer for k = {k}")]
    InapplicableVariant { rule: &'static str, k: usize },
    #[error("need k, l in 2..={MAX_AUDIT}, got k = {k}, l = {l}")]
    OutOfScope { k: usize, l: usize },
    #[error("need 1 <= j <= {k}, got {j}")]
    BadIndex { j: usize, k: usize },
    #[error("no verified word for index {0}")]
    MissingWord(usize),
    #[error("edge {edge} outside {range}")]
    EdgeRange { edge: usize, range: String },
    #[error("cycle {0} shares no edge with another cycle")]
    NoSharedEdge(usize),
    #[error("word for the shared edge is not a transposition of it with a neighbour")]
    UnverifiedPsi,
    #[error(transparent)]
    Eval(#[from] EvalError),
}

/// Candidate formulas for the repeat count of the middle block.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ExponentRule {
    /// `(k-2)/2`, as printed.
    HalfKMinus2,
    /// `(k-1)/2`.
    HalfKMinus1,
    /// `(m-2)/2` with `m = k+1` the length of the first cycle.
    HalfMMinus2,
}

impl ExponentRule {
    pub const ALL: [ExponentRule; 3] = [
        ExponentRule::HalfKMinus2,
        ExponentRule::HalfKMinus1,
        ExponentRule::HalfMMinus2,
    ];

    pub fn id(self) -> &'static str {
        match self {
            ExponentRule::HalfKMinus2 => "(k-2)/2",
            ExponentRule::HalfKMinus1 => "(k-1)/2",
            ExponentRule::HalfMMinus2 => "(m-2)/2",
        }
    }

    pub fn eval(self, k: usize) -> Option<usize> {
        let num = match self {
            ExponentRule::HalfKMinus2 => k as i64 - 2,
            ExponentRule::HalfKMinus1 => k as i64 - 1,
            ExponentRule::HalfMMinus2 => (k + 1) as i64 - 2,
        };
        (num >= 0 && num % 2 == 0).then_some((num / 2) as usize)
    }
}

/// One reading of the base-case word.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VariantSpec {
    pub order: Order,
    pub exponent: ExponentRule,
    pub sigma1: Direction,
    pub sigma2: Direction,
}

impl VariantSpec {
    pub const PRINTED: VariantSpec = VariantSpec {
        order: Order::LeftToRight,
        exponent: ExponentRule::HalfKMinus2,
        sigma1: Direction::Forward,
        sigma2: Direction::Forward,
    };

    /// All 24 variants in a fixed order.
    pub fn all() -> Vec<VariantSpec> {
        let orders = [Order::LeftToRight, Order::RightToLeft];
        let dirs = [Direction::Forward, Direction::Backward];
        let mut out = Vec::with_capacity(24);
        for order in orders {
            for exponent in ExponentRule::ALL {
                for sigma1 in dirs {
                    for sigma2 in dirs {
                        out.push(VariantSpec {
                            order,
                            exponent,
                            sigma1,
                            sigma2,
                        });
                    }
                }
            }
        }
        out
    }
}

impl fmt::Display for VariantSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} e={} s1={} s2={}",
            self.order.id(),
            self.exponent.id(),
            self.sigma1.id(),
            self.sigma2.id()
        )
    }
}

fn check_scope(k: usize, l: usize) -> Result<(), TheoremError> {
    if !(2..=MAX_AUDIT).contains(&k) || !(2..=MAX_AUDIT).contains(&l) {
        return Err(TheoremError::OutOfScope { k, l });
    }
    Ok(())
}

/// The base-case word for swapping `j-1` and `j`, over atoms `s1`, `s2`.
pub fn base_psi_word(k: usize, l: usize, j: usize, v: VariantSpec) -> Result<MoveWord, TheoremError> {
    check_scope(k, l)?;
    if !(1..=k).contains(&j) {
        return Err(TheoremError::BadIndex { j, k });
    }
    let e = v.exponent.eval(k).ok_or(TheoremError::InapplicableVariant {
        rule: v.exponent.id(),
        k,
    })?;
    let s1 = || MoveWord::atom(S1);
    let s2 = || MoveWord::atom(S2);
    let block = MoveWord::seq([s2().inverse(), s1(), s2(), s1()]);
    Ok(MoveWord::seq([
        s1().pow((j + 1) as i64),
        block.pow(e as i64),
        s2().inverse(),
        s1().pow(2),
        s2(),
        s1().pow((k + 1 - j) as i64),
    ]))
}

/// `s1` and `s2` on `k + l + 1` points, turned per the variant.
pub fn base_bindings(k: usize, l: usize, v: VariantSpec) -> Bindings {
    let n = k + l + 1;
    let c1: Vec<usize> = (0..=k).collect();
    let c2: Vec<usize> = std::iter::once(0).chain((k + 1..=k + l).rev()).collect();
    let turn = |p: Permutation, d: Direction| match d {
        Direction::Forward => p,
        Direction::Backward => p.inverse(),
    };
    let mut env = Bindings::new(n);
    env.bind(S1, turn(Permutation::cycle(n, &c1).unwrap(), v.sigma1))
        .expect("degree matches");
    env.bind(S2, turn(Permutation::cycle(n, &c2).unwrap(), v.sigma2))
        .expect("degree matches");
    env
}

/// `(w_{b+2} .. w_a)' w_{b+1} (w_{b+2} .. w_a)`, the same chain serving
/// for both cycle-internal swaps and the inductive ones.
pub fn big_psi_word(a: usize, b: usize, psi: &BTreeMap<usize, MoveWord>) -> Result<MoveWord, TheoremError> {
    if b >= a {
        return Err(TheoremError::EdgeRange {
            edge: b,
            range: format!("0..{a}"),
        });
    }
    let get = |j: usize| psi.get(&j).cloned().ok_or(TheoremError::MissingWord(j));
    let conj = MoveWord::seq((b + 2..=a).map(get).collect::<Result<Vec<_>, _>>()?);
    Ok(get(b + 1)?.conjugated_by(conj))
}

/// How the printed power `k - b` of `s2` is brought into `0..=l`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PowerNormalization {
    /// `(k - b) mod (l + 1)`.
    ModOrder,
    /// `(b - k) mod (l + 1)`.
    Negated,
}

impl PowerNormalization {
    pub const ALL: [PowerNormalization; 2] = [PowerNormalization::ModOrder, PowerNormalization::Negated];

    pub fn id(self) -> &'static str {
        match self {
            PowerNormalization::ModOrder => "mod-order",
            PowerNormalization::Negated => "negated",
        }
    }

    pub fn exponent(self, k: usize, l: usize, b: usize) -> i64 {
        let raw = k as i64 - b as i64;
        let raw = match self {
            PowerNormalization::ModOrder => raw,
            PowerNormalization::Negated => -raw,
        };
        raw.rem_euclid(l as i64 + 1)
    }
}

/// `(s2^e)' psi_a0 s2^e`, swapping `a` on the first cycle with `b` on the
/// second, given a word `psi_a0` for `(a 0)`.
pub fn cross_cycle_word(
    a: usize,
    b: usize,
    k: usize,
    l: usize,
    psi_a0: &MoveWord,
    norm: PowerNormalization,
) -> Result<MoveWord, TheoremError> {
    if !(1..=k).contains(&a) {
        return Err(TheoremError::EdgeRange {
            edge: a,
            range: format!("1..={k}"),
        });
    }
    if !(k + 1..=k + l).contains(&b) {
        return Err(TheoremError::EdgeRange {
            edge: b,
            range: format!("{}..={}", k + 1, k + l),
        });
    }
    let e = norm.exponent(k, l, b);
    let conj = if e == 0 {
        MoveWord::empty()
    } else {
        MoveWord::atom(S2).pow(e)
    };
    Ok(psi_a0.clone().conjugated_by(conj))
}

/// Where a newly attached cycle meets an earlier one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InductiveSetup {
    pub new_cycle: usize,
    pub neighbor: usize,
    pub shared: EdgeId,
    /// The new cycle's edges starting at the shared one, in listing order.
    pub positions: Vec<EdgeId>,
}

impl InductiveSetup {
    /// Uses the lowest-numbered other cycle that shares an edge.
    pub fn new(shape: &Shape, new_cycle: usize) -> Result<InductiveSetup, TheoremError> {
        let others = (0..shape.cycle_count()).filter(|&i| i != new_cycle);
        for i in others {
            let shared = shape
                .shared_edges(i, new_cycle)
                .map_err(|_| TheoremError::NoSharedEdge(new_cycle))?;
            if let Some(&e) = shared.iter().next() {
                return Self::with_neighbor(shape, new_cycle, i, e);
            }
        }
        Err(TheoremError::NoSharedEdge(new_cycle))
    }

    fn with_neighbor(shape: &Shape, new_cycle: usize, neighbor: usize, shared: EdgeId) -> Result<Self, TheoremError> {
        let cyc = shape
            .cycle(new_cycle)
            .map_err(|_| TheoremError::NoSharedEdge(new_cycle))?;
        let at = cyc.iter().position(|&e| e == shared).expect("shared edge on cycle");
        let positions = cyc[at..].iter().chain(&cyc[..at]).copied().collect();
        Ok(InductiveSetup {
            new_cycle,
            neighbor,
            shared,
            positions,
        })
    }

    /// `|C_new|`, the `k` of the inductive word.
    pub fn size(&self) -> usize {
        self.positions.len()
    }
}

/// What `k` stands for in the inductive word.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum InductiveK {
    /// The number of edges on the new cycle, as printed.
    Size,
    /// The largest label on the new cycle, as in the base case.
    LastLabel,
}

impl InductiveK {
    pub const ALL: [InductiveK; 2] = [InductiveK::Size, InductiveK::LastLabel];

    pub fn id(self) -> &'static str {
        match self {
            InductiveK::Size => "k=size",
            InductiveK::LastLabel => "k=size-1",
        }
    }

    pub fn k(self, size: usize) -> usize {
        match self {
            InductiveK::Size => size,
            InductiveK::LastLabel => size - 1,
        }
    }
}

/// `(N Mi N^(k+1-j))' psi (N Mi N^(k+1-j))` where `N` turns the new cycle
/// and `psi` swaps the shared edge with a neighbour on `Mi`.
pub fn inductive_phi_word(
    shape: &Shape,
    setup: &InductiveSetup,
    j: usize,
    psi_shared: &MoveWord,
    convention: Convention,
    reading: InductiveK,
) -> Result<MoveWord, TheoremError> {
    let last = setup.size() - 1;
    if !(1..=last).contains(&j) {
        return Err(TheoremError::BadIndex { j, k: last });
    }
    let k = reading.k(setup.size());
    let env = Bindings::for_shape(shape, convention.direction);
    let p = eval_word(psi_shared, &env, convention.order)?;
    let neighbor_edges = shape.cycle(setup.neighbor).expect("valid neighbour");
    match p.as_transposition() {
        Some((x, y))
            if (x == setup.shared.0 || y == setup.shared.0)
                && neighbor_edges.contains(&EdgeId(x))
                && neighbor_edges.contains(&EdgeId(y)) => {}
        _ => return Err(TheoremError::UnverifiedPsi),
    }
    let n = || MoveWord::atom(move_name(setup.new_cycle));
    let conj = MoveWord::seq([n(), MoveWord::atom(move_name(setup.neighbor)), n().pow((k + 1 - j) as i64)]);
    Ok(psi_shared.clone().conjugated_by(conj))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stage {
    Base,
    Chain,
    Cross,
    Inductive,
    InductiveChain,
    Filled,
}

impl Stage {
    pub fn id(self) -> &'static str {
        match self {
            Stage::Base => "psi",
            Stage::Chain => "Psi",
            Stage::Cross => "cross",
            Stage::Inductive => "phi",
            Stage::InductiveChain => "Phi",
            Stage::Filled => "filled",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    /// Exactly the claimed transposition.
    Claimed,
    OtherTransposition(usize, usize),
    Other(Permutation),
    Inapplicable,
}

/// One evaluated word. The outcome is recomputed from `result` and `claim`.
#[derive(Debug, Clone)]
pub struct Entry {
    pub stage: Stage,
    pub variant: Option<VariantSpec>,
    pub index: usize,
    pub claim: (usize, usize),
    pub word: Option<MoveWord>,
    pub result: Option<Permutation>,
}

impl Entry {
    pub fn outcome(&self) -> Outcome {
        let Some(p) = &self.result else {
            return Outcome::Inapplicable;
        };
        match p.as_transposition() {
            Some((x, y)) if (x, y) == sorted(self.claim) => Outcome::Claimed,
            Some((x, y)) => Outcome::OtherTransposition(x, y),
            None => Outcome::Other(p.clone()),
        }
    }

    pub fn word_len(&self) -> usize {
        self.word.as_ref().map_or(0, |w| w.letters().len())
    }
}

fn sorted((a, b): (usize, usize)) -> (usize, usize) {
    (a.min(b), a.max(b))
}

/// Sign of the base word computed two ways.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignCheck {
    pub variant: VariantSpec,
    pub s1_count: u64,
    pub s2_count: u64,
    /// `sign(s1)^c1 * sign(s2)^c2`.
    pub predicted: i8,
    /// Sign of the evaluated word for `j = 1`.
    pub evaluated: i8,
    /// `sign(s2)^k`, the closed form that holds when `s1` occurs `2k+2` times.
    pub closed_form: Option<i8>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Conclusion {
    BaseCaseVerified(Vec<VariantSpec>),
    BaseCaseUnverified,
    FullSymmetric { constructive: bool },
    NotFullSymmetric,
    NotAttempted(String),
}

#[derive(Debug, Clone)]
pub struct TheoremReport {
    pub subject: String,
    /// Print points from 1 (shape edges) rather than 0 (proof labels).
    pub one_based: bool,
    pub convention: Option<Convention>,
    pub entries: Vec<Entry>,
    pub sign_checks: Vec<SignCheck>,
    pub notes: Vec<String>,
    pub group_order: Option<BigUint>,
    pub degree: usize,
    pub conclusion: Conclusion,
}

impl TheoremReport {
    /// Whether the conclusion matches the Schreier-Sims order, when known.
    pub fn agrees_with_group(&self) -> Option<bool> {
        let order = self.group_order.as_ref()?;
        let full = *order == factorial(self.degree);
        match self.conclusion {
            Conclusion::FullSymmetric { .. } => Some(full),
            Conclusion::NotFullSymmetric => Some(!full),
            _ => None,
        }
    }

    pub fn entries_for(&self, v: VariantSpec) -> impl Iterator<Item = &Entry> {
        self.entries.iter().filter(move |e| e.variant == Some(v))
    }

    pub fn to_text(&self) -> String {
        let off = usize::from(self.one_based);
        let mut out = String::new();
        writeln!(out, "subject: {}", self.subject).unwrap();
        if let Some(c) = self.convention {
            writeln!(out, "convention: {c}").unwrap();
        }
        for e in &self.entries {
            let (a, b) = e.claim;
            let head = match e.variant {
                Some(v) => format!("{} {} [{v}]", e.stage.id(), e.index),
                None => format!("{} {}", e.stage.id(), e.index),
            };
            let verdict = match e.outcome() {
                Outcome::Claimed => "transposition".to_string(),
                Outcome::OtherTransposition(x, y) => format!("other-transposition ({} {})", x + off, y + off),
                Outcome::Other(p) => format!("other {}", p.cycle_string(self.one_based)),
                Outcome::Inapplicable => "inapplicable".to_string(),
            };
            writeln!(
                out,
                "{head}: claim ({} {}) -> {verdict} len={}",
                a + off,
                b + off,
                e.word_len()
            )
            .unwrap();
        }
        for s in &self.sign_checks {
            write!(
                out,
                "sign [{}]: s1 x{} s2 x{} predicted {:+} evaluated {:+}",
                s.variant, s.s1_count, s.s2_count, s.predicted, s.evaluated
            )
            .unwrap();
            if let Some(c) = s.closed_form {
                write!(out, " closed-form {c:+}").unwrap();
            }
            if s.evaluated == 1 {
                write!(out, " (even: cannot be a transposition)").unwrap();
            }
            out.push('\n');
        }
        for n in &self.notes {
            writeln!(out, "note: {n}").unwrap();
        }
        if let Some(o) = &self.group_order {
            writeln!(out, "group-order: {o}").unwrap();
            writeln!(out, "symmetric-order: {}", factorial(self.degree)).unwrap();
        }
        let conclusion = match &self.conclusion {
            Conclusion::BaseCaseVerified(vs) => {
                let vs: Vec<String> = vs.iter().map(|v| format!("[{v}]")).collect();
                format!("constructive base case verified under {}", vs.join(" "))
            }
            Conclusion::BaseCaseUnverified => "no variant yields every adjacent transposition".into(),
            Conclusion::FullSymmetric { constructive: true } => "full-symmetric (constructive)".into(),
            Conclusion::FullSymmetric { constructive: false } => "full-symmetric (with filled gaps)".into(),
            Conclusion::NotFullSymmetric => "not full-symmetric".into(),
            Conclusion::NotAttempted(why) => format!("not attempted: {why}"),
        };
        writeln!(out, "conclusion: {conclusion}").unwrap();
        if let Some(agree) = self.agrees_with_group() {
            writeln!(out, "agrees-with-group-order: {agree}").unwrap();
        }
        out
    }
}

fn sign_pow(sign: i8, e: u64) -> i8 {
    if sign == -1 && e % 2 == 1 {
        -1
    } else {
        1
    }
}

fn audit_variant(k: usize, l: usize, v: VariantSpec) -> (Vec<Entry>, Option<SignCheck>) {
    let env = base_bindings(k, l, v);
    let mut entries = Vec::with_capacity(k);
    let mut check = None;
    for j in 1..=k {
        let word = base_psi_word(k, l, j, v).ok();
        let result = word
            .as_ref()
            .map(|w| eval_word(w, &env, v.order).expect("base atoms are bound"));
        if let (Some(w), Some(p), None) = (&word, &result, &check) {
            let (c1, c2) = (w.count_atom(S1), w.count_atom(S2));
            let (g1, g2) = (env.get(S1).unwrap().sign(), env.get(S2).unwrap().sign());
            check = Some(SignCheck {
                variant: v,
                s1_count: c1,
                s2_count: c2,
                predicted: sign_pow(g1, c1) * sign_pow(g2, c2),
                evaluated: p.sign(),
                closed_form: (c1 == 2 * k as u64 + 2).then(|| sign_pow(g2, k as u64)),
            });
        }
        entries.push(Entry {
            stage: Stage::Base,
            variant: Some(v),
            index: j,
            claim: (j - 1, j),
            word,
            result,
        });
    }
    (entries, check)
}

/// Evaluates the base word for every `j` under every variant.
pub fn verify_base_case(k: usize, l: usize) -> Result<TheoremReport, TheoremError> {
    check_scope(k, l)?;
    let variants = VariantSpec::all();
    let audited: Vec<(Vec<Entry>, Option<SignCheck>)> =
        variants.par_iter().map(|&v| audit_variant(k, l, v)).collect();
    let mut entries = Vec::new();
    let mut sign_checks = Vec::new();
    let mut verified = Vec::new();
    for (v, (es, check)) in variants.iter().zip(audited) {
        if es.iter().all(|e| e.outcome() == Outcome::Claimed) {
            verified.push(*v);
        }
        entries.extend(es);
        sign_checks.extend(check);
    }
    let mut notes = Vec::new();
    if k % 2 == 0 {
        notes.push(format!(
            "k = {k} is even: s1 occurs 2k+2 = {} times and s2 occurs k = {k} times, so the printed word has sign sign(s2)^k = +1",
            2 * k + 2
        ));
    } else {
        notes.push(format!("k = {k} is odd: (k-2)/2 is not an integer"));
    }
    Ok(TheoremReport {
        subject: format!("base case k={k} l={l} (first cycle {} edges, second {})", k + 1, l + 1),
        one_based: false,
        convention: None,
        entries,
        sign_checks,
        notes,
        group_order: None,
        degree: k + l + 1,
        conclusion: if verified.is_empty() {
            Conclusion::BaseCaseUnverified
        } else {
            Conclusion::BaseCaseVerified(verified)
        },
    })
}

/// Verified transpositions with the words that produce them.
struct Known {
    words: BTreeMap<(usize, usize), MoveWord>,
}

impl Known {
    fn add(&mut self, p: &Permutation, w: &MoveWord) {
        if let Some(key) = p.as_transposition() {
            let better = self.words.get(&key).is_none_or(|old| old.letters().len() > w.letters().len());
            if better {
                self.words.insert(key, w.clone());
            }
        }
    }

    fn component(&self, root: usize) -> BTreeSet<usize> {
        let mut seen = BTreeSet::from([root]);
        let mut queue = VecDeque::from([root]);
        while let Some(x) = queue.pop_front() {
            for &(a, b) in self.words.keys() {
                let y = if a == x {
                    b
                } else if b == x {
                    a
                } else {
                    continue;
                };
                if seen.insert(y) {
                    queue.push_back(y);
                }
            }
        }
        seen
    }

    fn path(&self, from: usize, to: usize) -> Option<Vec<usize>> {
        let mut prev = BTreeMap::from([(from, from)]);
        let mut queue = VecDeque::from([from]);
        while let Some(x) = queue.pop_front() {
            if x == to {
                let mut path = vec![to];
                let mut cur = to;
                while cur != from {
                    cur = prev[&cur];
                    path.push(cur);
                }
                path.reverse();
                return Some(path);
            }
            for &(a, b) in self.words.keys() {
                let y = if a == x {
                    b
                } else if b == x {
                    a
                } else {
                    continue;
                };
                if let std::collections::btree_map::Entry::Vacant(slot) = prev.entry(y) {
                    slot.insert(x);
                    queue.push_back(y);
                }
            }
        }
        None
    }

    /// A word for `(from to)`: the last hop conjugated by the hops before
    /// it, which carry the path's start onto its second-to-last point.
    fn transposition_word(&self, from: usize, to: usize, order: Order) -> Option<MoveWord> {
        let path = self.path(from, to)?;
        let hop = |i: usize| self.words[&sorted((path[i], path[i + 1]))].clone();
        let m = path.len() - 1;
        let mut carry: Vec<MoveWord> = (0..m - 1).rev().map(hop).collect();
        if order == Order::RightToLeft {
            carry.reverse();
        }
        Some(hop(m - 1).conjugated_by(MoveWord::seq(carry)))
    }
}

/// Tries to build transpositions joining every edge using the constructive
/// words, in the first convention where the base case works. Edges left
/// unjoined are filled in with Schreier-Sims factorizations. The verdict
/// is checked against the group order.
pub fn constructive_completeness(shape: &Shape) -> TheoremReport {
    let n = shape.edge_count();
    let group = shape.group();
    let order = group.order();
    let mut report = TheoremReport {
        subject: shape.describe(),
        one_based: true,
        convention: None,
        entries: Vec::new(),
        sign_checks: Vec::new(),
        notes: Vec::new(),
        group_order: Some(order),
        degree: n,
        conclusion: Conclusion::NotAttempted(String::new()),
    };
    if !shape.satisfies_single_share() {
        report.conclusion = Conclusion::NotAttempted("two cycles share more than one edge".into());
        return report;
    }
    let Some(c1) = (0..shape.cycle_count()).find(|&i| shape.cycle_lengths()[i] % 2 == 0) else {
        let (bound, cert) = parity_obstruction(shape);
        report.notes.push(format!(
            "every generator even: {bound}; group lies in the alternating group on {} edges",
            cert.edges
        ));
        report.conclusion = Conclusion::NotAttempted("no even cycle".into());
        return report;
    };
    let Some(c2) = (0..shape.cycle_count())
        .find(|&i| i != c1 && shape.shared_edges(c1, i).is_ok_and(|s| s.len() == 1))
    else {
        report.conclusion = Conclusion::NotAttempted("the even cycle has no neighbour".into());
        return report;
    };

    let attempts: Vec<Attempt> = Convention::ALL
        .iter()
        .map(|&conv| Attempt::run(shape, c1, c2, conv))
        .collect();
    let mut chosen = attempts
        .into_iter()
        .enumerate()
        .min_by_key(|(i, a)| (a.missing(n), a.misses(), *i))
        .map(|(_, a)| a)
        .expect("four conventions");

    let root = chosen.known.component(0);
    let mut filled = 0;
    for e in 0..n {
        if chosen.known.component(0).contains(&e) {
            continue;
        }
        let target = Permutation::transposition(n, 0, e).unwrap();
        let Ok(w) = group.factor_word(&target) else {
            continue;
        };
        // factor words are left-to-right over forward turns
        let env = Bindings::for_shape(shape, Direction::Forward);
        let p = eval_word(&w, &env, Order::LeftToRight).expect("moves are bound");
        chosen.entries.push(Entry {
            stage: Stage::Filled,
            variant: None,
            index: e,
            claim: (0, e),
            word: Some(w),
            result: Some(p.clone()),
        });
        chosen.known.words.insert(sorted((0, e)), MoveWord::empty());
        filled += 1;
    }
    let joined = chosen.known.component(0).len() == n;
    if root.len() < n {
        report
            .notes
            .push(format!("{} of {n} edges joined by constructive words", root.len()));
    }
    report.notes.extend(chosen.notes);
    report.convention = Some(chosen.convention);
    report.entries = chosen.entries;
    report.sign_checks = chosen.sign_checks;
    report.conclusion = if joined {
        Conclusion::FullSymmetric { constructive: filled == 0 }
    } else {
        Conclusion::NotFullSymmetric
    };
    report
}

struct Attempt {
    convention: Convention,
    known: Known,
    entries: Vec<Entry>,
    sign_checks: Vec<SignCheck>,
    notes: Vec<String>,
}

impl Attempt {
    fn missing(&self, n: usize) -> usize {
        n - self.known.component(0).len()
    }

    fn misses(&self) -> usize {
        self.entries.iter().filter(|e| e.outcome() != Outcome::Claimed).count()
    }

    fn run(shape: &Shape, c1: usize, c2: usize, convention: Convention) -> Attempt {
        let mut att = Attempt {
            convention,
            known: Known { words: BTreeMap::new() },
            entries: Vec::new(),
            sign_checks: Vec::new(),
            notes: Vec::new(),
        };
        let env = Bindings::for_shape(shape, convention.direction);
        let eval = |w: &MoveWord| eval_word(w, &env, convention.order).expect("moves are bound");

        // proof labels -> shape edges
        let shared = *shape.shared_edges(c1, c2).unwrap().iter().next().unwrap();
        let first = InductiveSetup::with_neighbor(shape, c1, c2, shared).unwrap().positions;
        let second = InductiveSetup::with_neighbor(shape, c2, c1, shared).unwrap().positions;
        let (k, l) = (first.len() - 1, second.len() - 1);
        let mut label = vec![0; k + l + 1];
        for (i, e) in first.iter().enumerate() {
            label[i] = e.0;
        }
        for (t, e) in second.iter().enumerate().skip(1) {
            label[k + l + 1 - t] = e.0;
        }
        let rename = |w: &MoveWord| {
            w.substitute(&|a| match a {
                S1 => MoveWord::atom(move_name(c1)),
                S2 => MoveWord::atom(move_name(c2)),
                other => MoveWord::atom(other),
            })
        };
        att.notes.push(format!(
            "base labels 0..{} are edges {}",
            k + l,
            label.iter().map(|e| (e + 1).to_string()).collect::<Vec<_>>().join(" ")
        ));

        let mut psi = BTreeMap::new();
        for rule in ExponentRule::ALL {
            let v = VariantSpec {
                order: convention.order,
                exponent: rule,
                sigma1: convention.direction,
                sigma2: convention.direction,
            };
            if rule.eval(k).is_none() {
                continue;
            }
            let words: Vec<MoveWord> = (1..=k)
                .map(|j| rename(&base_psi_word(k, l, j, v).expect("applicable rule")))
                .collect();
            let results: Vec<Permutation> = words.iter().map(eval).collect();
            let ok = results
                .iter()
                .enumerate()
                .all(|(i, p)| p.as_transposition() == Some(sorted((label[i], label[i + 1]))));
            if ok || rule == ExponentRule::HalfMMinus2 {
                for (i, (w, p)) in words.into_iter().zip(results).enumerate() {
                    att.known.add(&p, &w);
                    att.entries.push(Entry {
                        stage: Stage::Base,
                        variant: Some(v),
                        index: i + 1,
                        claim: (label[i], label[i + 1]),
                        word: Some(w.clone()),
                        result: Some(p),
                    });
                    psi.insert(i + 1, w);
                }
                let base_env = base_bindings(k, l, v);
                let w = base_psi_word(k, l, 1, v).unwrap();
                let (c1n, c2n) = (w.count_atom(S1), w.count_atom(S2));
                let (g1, g2) = (base_env.get(S1).unwrap().sign(), base_env.get(S2).unwrap().sign());
                att.sign_checks.push(SignCheck {
                    variant: v,
                    s1_count: c1n,
                    s2_count: c2n,
                    predicted: sign_pow(g1, c1n) * sign_pow(g2, c2n),
                    evaluated: eval_word(&w, &base_env, v.order).unwrap().sign(),
                    closed_form: (c1n == 2 * k as u64 + 2).then(|| sign_pow(g2, k as u64)),
                });
                break;
            }
        }
        if psi.len() < k {
            att.notes.push("no exponent rule applies".into());
            return att;
        }

        // chained swaps (a 0) on the first cycle, then across to the second
        let mut chained = BTreeMap::new();
        for a in 1..=k {
            let w = big_psi_word(a, 0, &psi).expect("all psi present");
            let p = eval(&w);
            att.known.add(&p, &w);
            att.entries.push(Entry {
                stage: Stage::Chain,
                variant: None,
                index: a,
                claim: (label[a], label[0]),
                word: Some(w.clone()),
                result: Some(p),
            });
            chained.insert(a, w);
        }
        let a = k;
        for b in k + 1..=k + l {
            let claim = (label[a], label[b]);
            let mut tried = Vec::new();
            for norm in PowerNormalization::ALL {
                let w = cross_cycle_word(a, b, k, l, &chained[&a], norm).expect("ranges checked");
                let w = rename(&w);
                let p = eval(&w);
                let hit = p.as_transposition() == Some(sorted(claim));
                tried.push((norm, w, p));
                if hit {
                    break;
                }
            }
            let (norm, w, p) = tried.pop().unwrap();
            att.known.add(&p, &w);
            att.entries.push(Entry {
                stage: Stage::Cross,
                variant: None,
                index: b,
                claim,
                word: Some(w),
                result: Some(p),
            });
            att.notes.push(format!("cross {b}: power normalization {}", norm.id()));
        }

        // remaining cycles in attachment order of the sharing graph
        let mut done = BTreeSet::from([c1, c2]);
        while done.len() < shape.cycle_count() {
            let next = (0..shape.cycle_count()).filter(|c| !done.contains(c)).find_map(|c| {
                done.iter().find_map(|&i| {
                    let s = shape.shared_edges(i, c).ok()?;
                    s.iter().next().map(|&e| (c, i, e))
                })
            });
            let Some((c, i, e)) = next else {
                att.notes.push("some cycles share no edge with the rest".into());
                break;
            };
            done.insert(c);
            let setup = InductiveSetup::with_neighbor(shape, c, i, e).unwrap();
            att.inductive(shape, &setup, &eval);
        }
        att
    }

    /// Adds the inductive words for one new cycle, trying both neighbours
    /// of the shared edge on the old cycle as the swap partner.
    fn inductive(&mut self, shape: &Shape, setup: &InductiveSetup, eval: &dyn Fn(&MoveWord) -> Permutation) {
        let old = shape.cycle(setup.neighbor).unwrap();
        let at = old.iter().position(|&x| x == setup.shared).unwrap();
        let partners = [old[(at + 1) % old.len()], old[(at + old.len() - 1) % old.len()]];
        let new_edges: BTreeSet<usize> = setup.positions.iter().map(|e| e.0).collect();
        let mut best: Option<((usize, usize), InductiveK, Vec<Entry>)> = None;
        for (partner, reading) in partners.into_iter().cartesian_product(InductiveK::ALL) {
            let Some(psi) = self
                .known
                .transposition_word(setup.shared.0, partner.0, self.convention.order)
            else {
                continue;
            };
            let mut entries = Vec::new();
            for j in 1..setup.size() {
                let Ok(w) = inductive_phi_word(shape, setup, j, &psi, self.convention, reading) else {
                    break;
                };
                let p = eval(&w);
                entries.push(Entry {
                    stage: Stage::Inductive,
                    variant: None,
                    index: j,
                    claim: (setup.positions[j - 1].0, setup.positions[j].0),
                    word: Some(w),
                    result: Some(p),
                });
            }
            let useful = entries
                .iter()
                .filter(|e| {
                    e.result
                        .as_ref()
                        .and_then(Permutation::as_transposition)
                        .is_some_and(|(x, y)| new_edges.contains(&x) && new_edges.contains(&y))
                })
                .count();
            let claimed = entries.iter().filter(|e| e.outcome() == Outcome::Claimed).count();
            if best.as_ref().is_none_or(|(score, ..)| (useful, claimed) > *score) {
                best = Some(((useful, claimed), reading, entries));
            }
        }
        let Some(((useful, claimed), reading, entries)) = best else {
            self.notes.push(format!("cycle {}: no word for the shared edge", setup.new_cycle + 1));
            return;
        };
        self.notes.push(format!(
            "cycle {}: {} of {} phi words are transpositions on the new cycle, {claimed} as claimed ({})",
            setup.new_cycle + 1,
            useful,
            setup.size() - 1,
            reading.id()
        ));
        let all_claimed = claimed == setup.size() - 1;
        let phi: BTreeMap<usize, MoveWord> = entries
            .iter()
            .map(|e| (e.index, e.word.clone().unwrap()))
            .collect();
        for e in entries {
            if let Some(p) = &e.result {
                self.known.add(p, e.word.as_ref().unwrap());
            }
            self.entries.push(e);
        }
        if all_claimed {
            for a in 2..setup.size() {
                let w = big_psi_word(a, 0, &phi).expect("every phi present");
                let p = eval(&w);
                self.entries.push(Entry {
                    stage: Stage::InductiveChain,
                    variant: None,
                    index: a,
                    claim: (setup.positions[a].0, setup.positions[0].0),
                    word: Some(w),
                    result: Some(p),
                });
            }
        }
    }
}

/// Cycle length and sign of each generator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParityCertificate {
    pub edges: usize,
    pub generators: Vec<(String, usize, i8)>,
}

impl ParityCertificate {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "edges: {}", self.edges).unwrap();
        for (name, len, sign) in &self.generators {
            writeln!(out, "{name}: {len}-cycle sign {sign:+}").unwrap();
        }
        out
    }
}

/// True when every rotation is even, so the group sits inside the
/// alternating group and the shape cannot be label complete.
pub fn parity_obstruction(shape: &Shape) -> (bool, ParityCertificate) {
    let generators: Vec<(String, usize, i8)> = shape
        .generators()
        .into_iter()
        .zip(shape.cycle_lengths())
        .map(|((name, p), len)| (name, len, p.sign()))
        .collect();
    let all_even = generators.iter().all(|g| g.2 == 1);
    (
        all_even,
        ParityCertificate {
            edges: shape.edge_count(),
            generators,
        },
    )
}

/// Human-readable group verdict for a shape.
pub fn classify_text(class: &GroupClass, n: usize) -> String {
    match class {
        GroupClass::FullSymmetric => format!("full symmetric group on {n} edges"),
        GroupClass::Alternating => format!("alternating group on {n} edges"),
        GroupClass::Other(o) => format!("proper subgroup of order {o}"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn eval_base(k: usize, l: usize, j: usize, v: VariantSpec) -> Permutation {
        let w = base_psi_word(k, l, j, v).unwrap();
        eval_word(&w, &base_bindings(k, l, v), v.order).unwrap()
    }

    #[test]
    fn printed_word_shape() {
        let w = base_psi_word(4, 3, 1, VariantSpec::PRINTED).unwrap();
        assert_eq!(w.to_string(), "s1^2 (s2' s1 s2 s1)^1 s2' s1^2 s2 s1^4");
        let last = base_psi_word(4, 3, 4, VariantSpec::PRINTED).unwrap();
        assert!(last.to_string().ends_with("s1^1"));
        assert_eq!(
            base_psi_word(3, 3, 1, VariantSpec::PRINTED),
            Err(TheoremError::InapplicableVariant { rule: "(k-2)/2", k: 3 })
        );
    }

    #[test]
    fn printed_word_is_even_for_even_k() {
        for k in (2..=8).step_by(2) {
            for l in 2..=8 {
                for j in 1..=k {
                    let p = eval_base(k, l, j, VariantSpec::PRINTED);
                    assert_eq!(p.sign(), 1);
                    assert!(p.as_transposition().is_none());
                }
            }
        }
    }

    #[test]
    fn sign_identity_holds() {
        for k in 2..=8 {
            for l in 2..=8 {
                let r = verify_base_case(k, l).unwrap();
                for s in &r.sign_checks {
                    assert_eq!(s.predicted, s.evaluated);
                    if s.variant.exponent == ExponentRule::HalfKMinus2 {
                        assert_eq!(s.s1_count, 2 * k as u64 + 2);
                        assert_eq!(s.s2_count, k as u64);
                        let sigma2_sign = if l % 2 == 0 { 1 } else { -1 };
                        assert_eq!(s.closed_form, Some(sign_pow(sigma2_sign, k as u64)));
                        assert_eq!(s.evaluated, s.closed_form.unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn odd_k_shifted_exponent_works() {
        let v = VariantSpec {
            order: Order::LeftToRight,
            exponent: ExponentRule::HalfKMinus1,
            sigma1: Direction::Backward,
            sigma2: Direction::Forward,
        };
        for k in [3, 5, 7] {
            for l in 2..=6 {
                for j in 1..=k {
                    assert_eq!(eval_base(k, l, j, v).as_transposition(), Some((j - 1, j)));
                }
                let r = verify_base_case(k, l).unwrap();
                let Conclusion::BaseCaseVerified(vs) = &r.conclusion else {
                    panic!("k={k} l={l} unverified");
                };
                assert!(vs.contains(&v));
            }
        }
    }

    #[test]
    fn outcomes_rederive() {
        let r = verify_base_case(3, 4).unwrap();
        for e in &r.entries {
            if let (Some(w), Some(v)) = (&e.word, e.variant) {
                let p = eval_word(w, &base_bindings(3, 4, v), v.order).unwrap();
                assert_eq!(Some(&p), e.result.as_ref());
            }
        }
        assert_eq!(r.entries.len(), 24 * 3);
    }

    #[test]
    fn chain_conjugates() {
        let psi: BTreeMap<usize, MoveWord> = (1..=4).map(|j| (j, MoveWord::atom(format!("t{j}")))).collect();
        assert_eq!(big_psi_word(3, 2, &psi).unwrap(), MoveWord::atom("t3"));
        let mut env = Bindings::new(5);
        for j in 1..=4 {
            env.bind(format!("t{j}"), Permutation::transposition(5, j - 1, j).unwrap())
                .unwrap();
        }
        for b in 0..4 {
            for a in b + 1..=4 {
                let p = eval_word(&big_psi_word(a, b, &psi).unwrap(), &env, Order::LeftToRight).unwrap();
                assert_eq!(p.as_transposition(), Some((b, a)));
                assert_eq!(p.sign(), -1);
            }
        }
        assert_eq!(big_psi_word(2, 2, &psi).map(|_| ()), Err(TheoremError::EdgeRange {
            edge: 2,
            range: "0..2".into()
        }));
    }

    #[test]
    fn cross_cycle_powers() {
        let psi = MoveWord::atom("x");
        let w = cross_cycle_word(1, 4, 3, 4, &psi, PowerNormalization::Negated).unwrap();
        assert_eq!(w, MoveWord::atom("x").conjugated_by(MoveWord::atom(S2).pow(1)));
        // k - b is never a multiple of l + 1 for b on the second cycle
        for (k, l) in [(3, 4), (5, 2), (2, 8)] {
            for b in k + 1..=k + l {
                for norm in PowerNormalization::ALL {
                    assert!((1..=l as i64).contains(&norm.exponent(k, l, b)));
                }
            }
        }
        assert!(cross_cycle_word(0, 4, 3, 4, &psi, PowerNormalization::ModOrder).is_err());
        assert!(cross_cycle_word(1, 3, 3, 4, &psi, PowerNormalization::ModOrder).is_err());
    }

    #[test]
    fn square_triangle_is_constructively_complete() {
        let s = Shape::glued_pair(4, 3).unwrap();
        let r = constructive_completeness(&s);
        assert_eq!(r.group_order, Some(BigUint::from(720u32)));
        assert!(matches!(r.conclusion, Conclusion::FullSymmetric { .. }));
        assert_eq!(r.agrees_with_group(), Some(true));
        for e in &r.entries {
            let w = e.word.as_ref().unwrap();
            let conv = if e.stage == Stage::Filled { Convention::CANONICAL } else { r.convention.unwrap() };
            let p = eval_word(w, &Bindings::for_shape(&s, conv.direction), conv.order).unwrap();
            assert_eq!(Some(&p), e.result.as_ref());
        }
    }

    #[test]
    fn triangles_are_not_attempted() {
        let s = Shape::glued_pair(3, 3).unwrap();
        let r = constructive_completeness(&s);
        assert!(matches!(r.conclusion, Conclusion::NotAttempted(_)));
        let (even, cert) = parity_obstruction(&s);
        assert!(even);
        assert_eq!(cert.generators.iter().map(|g| (g.1, g.2)).collect::<Vec<_>>(), [(3, 1), (3, 1)]);
    }

    #[test]
    fn parity_examples() {
        let (sq, _) = crate::square::standard_square();
        let (even, cert) = parity_obstruction(&sq);
        assert!(!even);
        assert!(cert.generators.iter().all(|g| g.1 == 4 && g.2 == -1));
        assert!(parity_obstruction(&Shape::glued_pair(5, 5).unwrap()).0);
    }
}
