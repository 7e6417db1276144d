//! Permutation groups given by named generators.
//!
//! [`GroupBsgs`] runs a deterministic Schreier-Sims and keeps, next to every
//! coset representative, a word over the original generators that
//! evaluates to it. Sifting a member therefore yields a factorization over
//! the generators. Among candidate representatives for the same coset the
//! one with the shortest word is kept.

use std::collections::{HashSet, VecDeque};

use num_bigint::BigUint;
use num_traits::One;
use thiserror::Error;

use crate::movelang::{fold_runs, MoveWord};
use crate::perm::Permutation;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("generator `{name}` has degree {found}, expected {expected}")]
    DegreeMismatch {
        name: String,
        expected: usize,
        found: usize,
    },
    #[error("permutation is not a member of the group")]
    NotAMember,
}

pub fn factorial(n: usize) -> BigUint {
    (2..=n).fold(BigUint::one(), |acc, k| acc * BigUint::from(k))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
struct Letter {
    gen: usize,
    inv: bool,
}

impl Letter {
    fn inverse(self) -> Letter {
        Letter {
            gen: self.gen,
            inv: !self.inv,
        }
    }
}

#[derive(Debug, Clone)]
struct Coset {
    perm: Permutation,
    inv: Permutation,
    word: Vec<Letter>,
}

impl Coset {
    fn new(perm: Permutation, word: Vec<Letter>) -> Self {
        Coset {
            inv: perm.inverse(),
            perm,
            word,
        }
    }
}

#[derive(Debug, Clone)]
struct Level {
    base: usize,
    table: Vec<Option<Coset>>,
}

/// Group classification relative to the full symmetric group on the degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupClass {
    FullSymmetric,
    Alternating,
    Other(BigUint),
}

/// Base and strong generating set with word-tracked transversals.
#[derive(Debug, Clone)]
pub struct GroupBsgs {
    degree: usize,
    names: Vec<String>,
    generators: Vec<Permutation>,
    gen_orders: Vec<u128>,
    levels: Vec<Level>,
    strong: Vec<Coset>,
}

impl GroupBsgs {
    pub fn new(degree: usize, generators: Vec<(String, Permutation)>) -> Result<Self, GroupError> {
        for (name, p) in &generators {
            if p.degree() != degree {
                return Err(GroupError::DegreeMismatch {
                    name: name.clone(),
                    expected: degree,
                    found: p.degree(),
                });
            }
        }
        let gen_orders = generators.iter().map(|(_, p)| p.order()).collect();
        let (names, generators): (Vec<_>, Vec<_>) = generators.into_iter().unzip();
        let mut g = GroupBsgs {
            degree,
            names,
            generators,
            gen_orders,
            levels: Vec::new(),
            strong: Vec::new(),
        };
        g.build();
        Ok(g)
    }

    /// Convenience constructor naming generators `g0, g1, ...`.
    pub fn from_perms(degree: usize, perms: &[Permutation]) -> Result<Self, GroupError> {
        let named = perms
            .iter()
            .enumerate()
            .map(|(i, p)| (format!("g{i}"), p.clone()))
            .collect();
        Self::new(degree, named)
    }

    fn build(&mut self) {
        for idx in 0..self.generators.len() {
            let p = self.generators[idx].clone();
            if !p.is_identity() {
                let c = Coset::new(p, vec![Letter { gen: idx, inv: false }]);
                self.strong.push(c.clone());
                self.sift_insert(c, 0);
            }
        }
        loop {
            let mut changed = false;
            let mut i = 0;
            while i < self.levels.len() {
                let fixed: Vec<usize> = self.levels[..i].iter().map(|l| l.base).collect();
                let strong: Vec<Coset> = self
                    .strong
                    .iter()
                    .filter(|s| fixed.iter().all(|&b| s.perm.apply(b) == b))
                    .cloned()
                    .collect();
                let reps: Vec<Coset> = self.levels[i].table.iter().flatten().cloned().collect();
                for u in &reps {
                    for s in &strong {
                        let mut word = u.word.clone();
                        word.extend_from_slice(&s.word);
                        let c = Coset::new(u.perm.then(&s.perm), self.reduce(word));
                        changed |= self.sift_insert(c, i);
                    }
                }
                i += 1;
            }
            if !changed {
                break;
            }
        }
    }

    /// Sifts `g` from `start`, inserting it where its coset is missing or
    /// where it beats the stored word. Returns whether anything changed.
    fn sift_insert(&mut self, mut g: Coset, start: usize) -> bool {
        let mut changed = false;
        let mut i = start;
        while i < self.levels.len() {
            if g.perm.is_identity() {
                return changed;
            }
            let x = g.perm.apply(self.levels[i].base);
            match &mut self.levels[i].table[x] {
                slot @ None => {
                    if i > start {
                        self.strong.push(g.clone());
                    }
                    *slot = Some(g);
                    return true;
                }
                Some(u) => {
                    if g.word.len() < u.word.len() {
                        std::mem::swap(u, &mut g);
                        changed = true;
                    }
                    let u = self.levels[i].table[x].as_ref().unwrap();
                    let perm = g.perm.then(&u.inv);
                    let mut word = g.word;
                    word.extend(u.word.iter().rev().map(|l| l.inverse()));
                    g = Coset::new(perm, self.reduce(word));
                }
            }
            i += 1;
        }
        if g.perm.is_identity() {
            return changed;
        }
        let base = g.perm.support()[0];
        let mut table = vec![None; self.degree];
        table[base] = Some(Coset::new(Permutation::identity(self.degree), Vec::new()));
        let x = g.perm.apply(base);
        self.strong.push(g.clone());
        table[x] = Some(g);
        self.levels.push(Level { base, table });
        true
    }

    /// Free cancellation plus folding runs of one generator modulo its order.
    fn reduce(&self, word: Vec<Letter>) -> Vec<Letter> {
        let mut cur = word;
        loop {
            let mut stack: Vec<Letter> = Vec::with_capacity(cur.len());
            for l in cur.iter().copied() {
                if stack.last() == Some(&l.inverse()) {
                    stack.pop();
                } else {
                    stack.push(l);
                }
            }
            let mut out: Vec<Letter> = Vec::with_capacity(stack.len());
            let mut i = 0;
            while i < stack.len() {
                let mut j = i + 1;
                while j < stack.len() && stack[j] == stack[i] {
                    j += 1;
                }
                let run = (j - i) as u128;
                let order = self.gen_orders[stack[i].gen];
                let r = run % order;
                let (count, letter) = if 2 * r > order {
                    (order - r, stack[i].inverse())
                } else {
                    (r, stack[i])
                };
                out.extend(std::iter::repeat_n(letter, count as usize));
                i = j;
            }
            if out.len() == cur.len() {
                return out;
            }
            cur = out;
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> impl Iterator<Item = (&str, &Permutation)> {
        self.names.iter().map(String::as_str).zip(self.generators.iter())
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base).collect()
    }

    /// Basic orbit sizes, one per base point.
    pub fn transversal_sizes(&self) -> Vec<usize> {
        self.levels
            .iter()
            .map(|l| l.table.iter().flatten().count())
            .collect()
    }

    pub fn strong_generator_count(&self) -> usize {
        self.strong.len()
    }

    pub fn order(&self) -> BigUint {
        self.transversal_sizes()
            .into_iter()
            .fold(BigUint::one(), |acc, s| acc * BigUint::from(s))
    }

    fn sift(&self, p: &Permutation) -> (Permutation, Vec<&Coset>) {
        let mut g = p.clone();
        let mut used = Vec::new();
        for level in &self.levels {
            let x = g.apply(level.base);
            match &level.table[x] {
                Some(u) => {
                    g = g.then(&u.inv);
                    used.push(u);
                }
                None => return (g, used),
            }
        }
        (g, used)
    }

    pub fn contains(&self, p: &Permutation) -> Result<bool, GroupError> {
        self.check_degree(p)?;
        Ok(self.sift(p).0.is_identity())
    }

    fn check_degree(&self, p: &Permutation) -> Result<(), GroupError> {
        if p.degree() != self.degree {
            return Err(GroupError::DegreeMismatch {
                name: "argument".into(),
                expected: self.degree,
                found: p.degree(),
            });
        }
        Ok(())
    }

    /// A word over the generator names that evaluates (left to right) to `p`.
    pub fn factor_word(&self, p: &Permutation) -> Result<MoveWord, GroupError> {
        self.check_degree(p)?;
        let (residue, used) = self.sift(p);
        if !residue.is_identity() {
            return Err(GroupError::NotAMember);
        }
        // p = u_k ... u_1 u_0, applied left to right
        let mut word = Vec::new();
        for u in used.iter().rev() {
            word.extend_from_slice(&u.word);
        }
        Ok(self.to_move_word(&self.reduce(word)))
    }

    fn to_move_word(&self, word: &[Letter]) -> MoveWord {
        let letters: Vec<(String, bool)> = word
            .iter()
            .map(|l| (self.names[l.gen].clone(), l.inv))
            .collect();
        fold_runs(&letters)
    }

    /// Every stored coset representative with its word, level by level.
    pub fn transversal_words(&self) -> Vec<Vec<(usize, Permutation, MoveWord)>> {
        self.levels
            .iter()
            .map(|l| {
                l.table
                    .iter()
                    .enumerate()
                    .filter_map(|(x, c)| {
                        c.as_ref()
                            .map(|c| (x, c.perm.clone(), self.to_move_word(&c.word)))
                    })
                    .collect()
            })
            .collect()
    }

    /// Longest stored transversal word, in letters.
    pub fn max_word_len(&self) -> usize {
        self.levels
            .iter()
            .flat_map(|l| l.table.iter().flatten())
            .map(|c| c.word.len())
            .max()
            .unwrap_or(0)
    }

    pub fn all_generators_even(&self) -> bool {
        self.generators.iter().all(|g| g.sign() == 1)
    }

    pub fn classify(&self) -> GroupClass {
        let order = self.order();
        let full = factorial(self.degree);
        if order == full {
            GroupClass::FullSymmetric
        } else if self.degree >= 2
            && order.clone() * BigUint::from(2u8) == full
            && self.all_generators_even()
        {
            GroupClass::Alternating
        } else {
            GroupClass::Other(order)
        }
    }
}

/// Result of naive closure: every product of generators, up to a cap.
#[derive(Debug, Clone)]
pub struct ClosureSet {
    pub elements: HashSet<Permutation>,
    pub generators: Vec<Permutation>,
    pub cap: usize,
    pub truncated: bool,
}

impl ClosureSet {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

/// Breadth-first closure of `generators` under right multiplication,
/// stopping once `cap` elements are known.
pub fn brute_closure(degree: usize, generators: &[Permutation], cap: usize) -> ClosureSet {
    let cap = cap.max(1);
    let id = Permutation::identity(degree);
    let mut elements = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    let mut truncated = false;
    'outer: while let Some(x) = queue.pop_front() {
        for g in generators {
            let y = x.then(g);
            if !elements.contains(&y) {
                if elements.len() >= cap {
                    truncated = true;
                    break 'outer;
                }
                elements.insert(y.clone());
                queue.push_back(y);
            }
        }
    }
    ClosureSet {
        elements,
        generators: generators.to_vec(),
        cap,
        truncated,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::movelang::{eval_word, Bindings, Order};

    fn c(n: usize, cycles: &[&[usize]]) -> Permutation {
        Permutation::from_cycles(n, cycles).unwrap()
    }

    fn eval(g: &GroupBsgs, w: &MoveWord) -> Permutation {
        let mut env = Bindings::new(g.degree());
        for (n, p) in g.generators() {
            env.bind(n, p.clone()).unwrap();
        }
        eval_word(w, &env, Order::LeftToRight).unwrap()
    }

    #[test]
    fn small_orders() {
        let z3 = GroupBsgs::from_perms(3, &[c(3, &[&[0, 1, 2]])]).unwrap();
        assert_eq!(z3.order(), BigUint::from(3u8));
        let s3 = GroupBsgs::from_perms(3, &[c(3, &[&[0, 1]]), c(3, &[&[0, 1, 2]])]).unwrap();
        assert_eq!(s3.order(), BigUint::from(6u8));
        assert_eq!(s3.classify(), GroupClass::FullSymmetric);
        let trivial = GroupBsgs::from_perms(4, &[]).unwrap();
        assert_eq!(trivial.order(), BigUint::one());
    }

    #[test]
    fn a5_matches_closure() {
        let gens = [c(5, &[&[0, 1, 2]]), c(5, &[&[2, 3, 4]])];
        let g = GroupBsgs::from_perms(5, &gens).unwrap();
        let closure = brute_closure(5, &gens, 1000);
        assert!(!closure.truncated);
        assert_eq!(closure.len(), 60);
        assert_eq!(g.order(), BigUint::from(closure.len()));
        assert!(closure.elements.iter().all(|p| p.sign() == 1));
        assert_eq!(g.classify(), GroupClass::Alternating);
    }

    #[test]
    fn membership() {
        let z3 = GroupBsgs::from_perms(3, &[c(3, &[&[0, 1, 2]])]).unwrap();
        assert!(z3.contains(&c(3, &[&[0, 1, 2]])).unwrap());
        assert!(z3.contains(&Permutation::identity(3)).unwrap());
        assert!(!z3.contains(&c(3, &[&[0, 1]])).unwrap());
        assert!(z3.contains(&Permutation::identity(4)).is_err());
        assert_eq!(
            z3.factor_word(&c(3, &[&[0, 1]])),
            Err(GroupError::NotAMember)
        );
    }

    #[test]
    fn factor_words_evaluate_exactly() {
        let g = GroupBsgs::new(
            3,
            vec![("a".into(), c(3, &[&[0, 1]])), ("b".into(), c(3, &[&[1, 2]]))],
        )
        .unwrap();
        assert!(g.factor_word(&Permutation::identity(3)).unwrap().is_empty());
        let target = c(3, &[&[0, 2, 1]]);
        let w = g.factor_word(&target).unwrap();
        assert_eq!(eval(&g, &w), target);
        for e in brute_closure(3, &[c(3, &[&[0, 1]]), c(3, &[&[1, 2]])], 10).elements {
            assert_eq!(eval(&g, &g.factor_word(&e).unwrap()), e);
        }
    }

    #[test]
    fn stored_words_reproduce_representatives() {
        let gens = [c(6, &[&[0, 1, 2, 3]]), c(6, &[&[0, 4, 5]])];
        let g = GroupBsgs::from_perms(6, &gens).unwrap();
        for level in g.transversal_words() {
            for (_, perm, word) in level {
                assert_eq!(eval(&g, &word), perm);
            }
        }
        assert_eq!(g.order(), factorial(6));
    }

    #[test]
    fn classify_other() {
        let z4 = GroupBsgs::from_perms(4, &[c(4, &[&[0, 1, 2, 3]])]).unwrap();
        assert_eq!(z4.classify(), GroupClass::Other(BigUint::from(4u8)));
    }

    #[test]
    fn closure_cases() {
        let t = brute_closure(2, &[c(2, &[&[0, 1]])], 10);
        assert_eq!(t.len(), 2);
        let s3 = brute_closure(3, &[c(3, &[&[0, 1, 2]]), c(3, &[&[0, 1]])], 10);
        assert_eq!(s3.len(), 6);
        let capped = brute_closure(5, &[c(5, &[&[0, 1, 2, 3, 4]]), c(5, &[&[0, 1]])], 10);
        assert!(capped.truncated);
        assert_eq!(capped.len(), 10);
    }

    #[test]
    fn degree_mismatch_rejected() {
        let err = GroupBsgs::from_perms(3, &[c(4, &[&[0, 1]])]).unwrap_err();
        assert!(matches!(err, GroupError::DegreeMismatch { .. }));
    }
}
