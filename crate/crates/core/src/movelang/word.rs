use std::collections::BTreeMap;
use std::fmt;

/// Abstract syntax of a move word.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum MoveWord {
    Atom(String),
    Inverse(Box<MoveWord>),
    Power(Box<MoveWord>, i64),
    Sequence(Vec<MoveWord>),
}

impl MoveWord {
    pub fn atom(name: impl Into<String>) -> Self {
        MoveWord::Atom(name.into())
    }

    /// The empty word.
    pub fn empty() -> Self {
        MoveWord::Sequence(Vec::new())
    }

    pub fn seq(items: impl IntoIterator<Item = MoveWord>) -> Self {
        MoveWord::Sequence(items.into_iter().collect())
    }

    pub fn inverse(self) -> Self {
        MoveWord::Inverse(Box::new(self))
    }

    pub fn pow(self, e: i64) -> Self {
        MoveWord::Power(Box::new(self), e)
    }

    /// `conj' self conj`: conjugation as written left to right.
    pub fn conjugated_by(self, conj: MoveWord) -> Self {
        if conj.is_empty() {
            return self;
        }
        MoveWord::seq([conj.clone().inverse(), self, conj])
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, MoveWord::Sequence(v) if v.iter().all(MoveWord::is_empty))
    }

    /// Collapses `Power(x, 1)` to `x` and one-element sequences to their
    /// element, bottom up. Everything else is kept as written.
    pub fn normalize(&self) -> MoveWord {
        match self {
            MoveWord::Atom(_) => self.clone(),
            MoveWord::Inverse(x) => MoveWord::Inverse(Box::new(x.normalize())),
            MoveWord::Power(x, 1) => x.normalize(),
            MoveWord::Power(x, e) => MoveWord::Power(Box::new(x.normalize()), *e),
            MoveWord::Sequence(items) => {
                let mut items: Vec<MoveWord> = items.iter().map(MoveWord::normalize).collect();
                if items.len() == 1 {
                    items.pop().unwrap()
                } else {
                    MoveWord::Sequence(items)
                }
            }
        }
    }

    /// Flattens to a list of `(atom, inverted)` letters, expanding powers
    /// and inverses. Macro names are left as letters.
    pub fn letters(&self) -> Vec<(String, bool)> {
        let mut out = Vec::new();
        self.push_letters(false, &mut out);
        out
    }

    fn push_letters(&self, inverted: bool, out: &mut Vec<(String, bool)>) {
        match self {
            MoveWord::Atom(name) => out.push((name.clone(), inverted)),
            MoveWord::Inverse(x) => x.push_letters(!inverted, out),
            MoveWord::Power(x, e) => {
                let inv = inverted ^ (*e < 0);
                for _ in 0..e.unsigned_abs() {
                    x.push_letters(inv, out);
                }
            }
            MoveWord::Sequence(items) => {
                if inverted {
                    for item in items.iter().rev() {
                        item.push_letters(true, out);
                    }
                } else {
                    for item in items {
                        item.push_letters(false, out);
                    }
                }
            }
        }
    }

    /// Number of atoms after expanding powers, and expanding any macro
    /// names found in `macros` recursively.
    pub fn atom_count(&self, macros: &BTreeMap<String, MoveWord>) -> u64 {
        match self {
            MoveWord::Atom(name) => match macros.get(name) {
                Some(def) => def.atom_count(macros),
                None => 1,
            },
            MoveWord::Inverse(x) => x.atom_count(macros),
            MoveWord::Power(x, e) => x.atom_count(macros) * e.unsigned_abs(),
            MoveWord::Sequence(items) => items.iter().map(|i| i.atom_count(macros)).sum(),
        }
    }

    /// Counts occurrences of one atom after power expansion.
    pub fn count_atom(&self, atom: &str) -> u64 {
        match self {
            MoveWord::Atom(name) => u64::from(name == atom),
            MoveWord::Inverse(x) => x.count_atom(atom),
            MoveWord::Power(x, e) => x.count_atom(atom) * e.unsigned_abs(),
            MoveWord::Sequence(items) => items.iter().map(|i| i.count_atom(atom)).sum(),
        }
    }

    /// Replaces every atom by the word `f` returns for it.
    pub fn substitute(&self, f: &dyn Fn(&str) -> MoveWord) -> MoveWord {
        match self {
            MoveWord::Atom(name) => f(name),
            MoveWord::Inverse(x) => MoveWord::Inverse(Box::new(x.substitute(f))),
            MoveWord::Power(x, e) => MoveWord::Power(Box::new(x.substitute(f)), *e),
            MoveWord::Sequence(items) => {
                MoveWord::Sequence(items.iter().map(|i| i.substitute(f)).collect())
            }
        }
    }

    /// Macro-expanded, fully flattened word with runs of one letter folded
    /// into powers, e.g. `M1 M1 M1 M2'` becomes `M1^3 M2'`.
    pub fn expanded(&self, macros: &BTreeMap<String, MoveWord>) -> MoveWord {
        let mut letters = Vec::new();
        expand_into(self, macros, false, &mut letters);
        fold_runs(&letters)
    }

    /// Every distinct atom name, in first-occurrence order.
    pub fn atom_names(&self) -> Vec<String> {
        let mut names: Vec<String> = Vec::new();
        for (n, _) in self.letters() {
            if !names.contains(&n) {
                names.push(n);
            }
        }
        names
    }
}

fn expand_into(
    w: &MoveWord,
    macros: &BTreeMap<String, MoveWord>,
    inverted: bool,
    out: &mut Vec<(String, bool)>,
) {
    match w {
        MoveWord::Atom(name) => match macros.get(name) {
            Some(def) => expand_into(def, macros, inverted, out),
            None => out.push((name.clone(), inverted)),
        },
        MoveWord::Inverse(x) => expand_into(x, macros, !inverted, out),
        MoveWord::Power(x, e) => {
            for _ in 0..e.unsigned_abs() {
                expand_into(x, macros, inverted ^ (*e < 0), out);
            }
        }
        MoveWord::Sequence(items) => {
            if inverted {
                items.iter().rev().for_each(|i| expand_into(i, macros, true, out));
            } else {
                items.iter().for_each(|i| expand_into(i, macros, false, out));
            }
        }
    }
}

/// Builds a flat word from letters, folding equal neighbours into powers.
pub fn fold_runs(letters: &[(String, bool)]) -> MoveWord {
    let mut items = Vec::new();
    let mut i = 0;
    while i < letters.len() {
        let mut j = i + 1;
        while j < letters.len() && letters[j] == letters[i] {
            j += 1;
        }
        let (name, inv) = &letters[i];
        let run = (j - i) as i64;
        let atom = MoveWord::atom(name.clone());
        items.push(match (run, inv) {
            (1, false) => atom,
            (1, true) => atom.inverse(),
            (r, false) => atom.pow(r),
            (r, true) => atom.inverse().pow(r),
        });
        i = j;
    }
    MoveWord::Sequence(items).normalize()
}

impl fmt::Display for MoveWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&super::format_word(self))
    }
}
