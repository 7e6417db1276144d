//! Exact permutations on `{0, ..., n-1}`.
//!
//! Composition is written left to right: `a.then(&b)` first applies `a`,
//! then `b`, so `a.then(&b).apply(x) == b.apply(a.apply(x))`.

use std::fmt;

use num_integer::Integer;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PermError {
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("point {point} out of range for degree {degree}")]
    OutOfRange { point: usize, degree: usize },
    #[error("point {0} repeated in cycle list")]
    RepeatedPoint(usize),
    #[error("image list is not a bijection")]
    NotBijective,
    #[error("malformed cycle notation: {0}")]
    Syntax(String),
}

/// A bijection of `{0, ..., degree-1}` stored as its image table.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    image: Vec<usize>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            image: (0..degree).collect(),
        }
    }

    /// Builds a permutation from an image table, checking bijectivity.
    pub fn from_images(image: Vec<usize>) -> Result<Self, PermError> {
        let n = image.len();
        let mut seen = vec![false; n];
        for &x in &image {
            if x >= n {
                return Err(PermError::OutOfRange {
                    point: x,
                    degree: n,
                });
            }
            if std::mem::replace(&mut seen[x], true) {
                return Err(PermError::NotBijective);
            }
        }
        Ok(Permutation { image })
    }

    /// Product of disjoint cycles. Each cycle `[a, b, c]` sends a→b→c→a.
    pub fn from_cycles<C: AsRef<[usize]>>(degree: usize, cycles: &[C]) -> Result<Self, PermError> {
        let mut image: Vec<usize> = (0..degree).collect();
        let mut used = vec![false; degree];
        for cycle in cycles {
            let cycle = cycle.as_ref();
            for &x in cycle {
                if x >= degree {
                    return Err(PermError::OutOfRange { point: x, degree });
                }
                if std::mem::replace(&mut used[x], true) {
                    return Err(PermError::RepeatedPoint(x));
                }
            }
            for (i, &x) in cycle.iter().enumerate() {
                image[x] = cycle[(i + 1) % cycle.len()];
            }
        }
        Ok(Permutation { image })
    }

    /// A single cycle through `points`.
    pub fn cycle(degree: usize, points: &[usize]) -> Result<Self, PermError> {
        Self::from_cycles(degree, &[points])
    }

    /// Transposition of two distinct points.
    pub fn transposition(degree: usize, a: usize, b: usize) -> Result<Self, PermError> {
        Self::from_cycles(degree, &[[a, b]])
    }

    /// Parses cycle notation such as `(1 4 6 3)(2 5)`. `()` is the identity.
    /// With `one_based`, labels are shifted down by one.
    pub fn parse_cycles(degree: usize, text: &str, one_based: bool) -> Result<Self, PermError> {
        let mut cycles = Vec::new();
        let mut rest = text.trim();
        while !rest.is_empty() {
            let body = rest
                .strip_prefix('(')
                .ok_or_else(|| PermError::Syntax(text.to_string()))?;
            let close = body
                .find(')')
                .ok_or_else(|| PermError::Syntax(text.to_string()))?;
            let mut cycle = Vec::new();
            for tok in body[..close].split(|c: char| c.is_whitespace() || c == ',') {
                if tok.is_empty() {
                    continue;
                }
                let v: usize = tok.parse().map_err(|_| PermError::Syntax(text.to_string()))?;
                if one_based {
                    if v == 0 {
                        return Err(PermError::OutOfRange { point: 0, degree });
                    }
                    cycle.push(v - 1);
                } else {
                    cycle.push(v);
                }
            }
            if !cycle.is_empty() {
                cycles.push(cycle);
            }
            rest = body[close + 1..].trim_start();
        }
        Self::from_cycles(degree, &cycles)
    }

    pub fn degree(&self) -> usize {
        self.image.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.image
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.image[x]
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// `self` followed by `next`.
    ///
    /// Panics if the degrees differ; see [`compose`] for the checked form.
    pub fn then(&self, next: &Permutation) -> Permutation {
        assert_eq!(self.degree(), next.degree(), "degree mismatch in composition");
        Permutation {
            image: self.image.iter().map(|&x| next.image[x]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut image = vec![0; self.degree()];
        for (i, &x) in self.image.iter().enumerate() {
            image[x] = i;
        }
        Permutation { image }
    }

    pub fn pow(&self, e: i64) -> Permutation {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        let mut n = e.unsigned_abs();
        let mut acc = Permutation::identity(self.degree());
        let mut sq = base;
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.then(&sq);
            }
            sq = sq.then(&sq);
            n >>= 1;
        }
        acc
    }

    /// Canonical disjoint cycles: fixed points dropped, each cycle starting
    /// at its smallest point, cycles ordered by that point.
    pub fn to_cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] || self.image[start] == start {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut x = self.image[start];
            while x != start {
                seen[x] = true;
                cycle.push(x);
                x = self.image[x];
            }
            out.push(cycle);
        }
        out
    }

    /// +1 for even permutations, -1 for odd ones.
    pub fn sign(&self) -> i8 {
        let transpositions: usize = self.to_cycles().iter().map(|c| c.len() - 1).sum();
        if transpositions % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// Least common multiple of the cycle lengths.
    pub fn order(&self) -> u128 {
        self.to_cycles()
            .iter()
            .fold(1u128, |acc, c| acc.lcm(&(c.len() as u128)))
    }

    /// Points not fixed by the permutation, in increasing order.
    pub fn support(&self) -> Vec<usize> {
        (0..self.degree()).filter(|&i| self.image[i] != i).collect()
    }

    /// If this is a transposition, the swapped pair in increasing order.
    pub fn as_transposition(&self) -> Option<(usize, usize)> {
        match self.to_cycles().as_slice() {
            [c] if c.len() == 2 => Some((c[0], c[1])),
            _ => None,
        }
    }

    /// Cycle notation, optionally shifted to 1-based labels.
    pub fn cycle_string(&self, one_based: bool) -> String {
        let cycles = self.to_cycles();
        if cycles.is_empty() {
            return "()".to_string();
        }
        let shift = usize::from(one_based);
        cycles
            .iter()
            .map(|c| {
                let body: Vec<String> = c.iter().map(|x| (x + shift).to_string()).collect();
                format!("({})", body.join(" "))
            })
            .collect()
    }
}

/// Checked `first` then `then`.
pub fn compose(first: &Permutation, then: &Permutation) -> Result<Permutation, PermError> {
    if first.degree() != then.degree() {
        return Err(PermError::DegreeMismatch(first.degree(), then.degree()));
    }
    Ok(first.then(then))
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.cycle_string(false))
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation[{}]{}", self.degree(), self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(n: usize, cycles: &[&[usize]]) -> Permutation {
        Permutation::from_cycles(n, cycles).unwrap()
    }

    #[test]
    fn identity_cases() {
        assert_eq!(Permutation::identity(3).images(), &[0, 1, 2]);
        assert_eq!(Permutation::identity(0).degree(), 0);
        assert!(Permutation::identity(0).is_identity());
    }

    #[test]
    fn compose_left_to_right() {
        let p = c(3, &[&[0, 1]]).then(&c(3, &[&[1, 2]]));
        assert_eq!(p, c(3, &[&[0, 2, 1]]));
        assert_eq!(
            compose(&c(3, &[&[0, 1]]), &Permutation::identity(4)),
            Err(PermError::DegreeMismatch(3, 4))
        );
    }

    #[test]
    fn square_face_twice_is_double_swap() {
        // 1-based labels (1 4 6 3) shifted down by one
        let sigma1 = c(12, &[&[0, 3, 5, 2]]);
        let twice = sigma1.then(&sigma1);
        // oracle: walk the 4-cycle two steps from each point
        let ring = [0, 3, 5, 2];
        let mut expect: Vec<usize> = (0..12).collect();
        for i in 0..4 {
            expect[ring[i]] = ring[(i + 2) % 4];
        }
        assert_eq!(twice.images(), expect.as_slice());
        assert_eq!(twice, c(12, &[&[0, 5], &[2, 3]]));
    }

    #[test]
    fn inverse_and_power() {
        assert_eq!(c(4, &[&[0, 1, 2, 3]]).inverse(), c(4, &[&[0, 3, 2, 1]]));
        assert!(Permutation::identity(4).inverse().is_identity());
        assert_eq!(c(2, &[&[0, 1]]).inverse(), c(2, &[&[0, 1]]));
        assert_eq!(c(4, &[&[0, 1, 2, 3]]).pow(2), c(4, &[&[0, 2], &[1, 3]]));
        assert_eq!(c(4, &[&[0, 1, 2, 3]]).pow(-1), c(4, &[&[0, 3, 2, 1]]));
        assert!(c(3, &[&[0, 1, 2]]).pow(3).is_identity());
        assert!(c(3, &[&[0, 1, 2]]).pow(0).is_identity());
    }

    #[test]
    fn from_cycles_errors() {
        assert!(Permutation::from_cycles::<[usize; 0]>(5, &[]).unwrap().is_identity());
        assert_eq!(
            Permutation::from_cycles(4, &[vec![0, 1], vec![1, 2]]),
            Err(PermError::RepeatedPoint(1))
        );
        assert_eq!(
            Permutation::from_cycles(3, &[[0, 3]]),
            Err(PermError::OutOfRange { point: 3, degree: 3 })
        );
        assert_eq!(Permutation::from_cycles(3, &[[1, 1]]), Err(PermError::RepeatedPoint(1)));
    }

    #[test]
    fn signs_and_cycles() {
        assert_eq!(c(4, &[&[0, 1, 2, 3]]).sign(), -1);
        assert_eq!(c(3, &[&[0, 1, 2]]).sign(), 1);
        assert!(Permutation::identity(6).to_cycles().is_empty());
        assert_eq!(c(4, &[&[2, 0], &[3, 1]]).to_cycles(), vec![vec![0, 2], vec![1, 3]]);
        assert_eq!(c(4, &[&[0, 1, 2, 3]]).pow(2).to_cycles(), vec![vec![0, 2], vec![1, 3]]);
        assert_eq!(c(5, &[&[3, 1, 4]]).to_cycles(), vec![vec![1, 4, 3]]);
    }

    #[test]
    fn cycle_notation_round_trip() {
        let p = Permutation::parse_cycles(12, "(1 4 6 3)", true).unwrap();
        assert_eq!(p, c(12, &[&[0, 3, 5, 2]]));
        assert_eq!(p.cycle_string(true), "(1 4 6 3)");
        assert_eq!(Permutation::identity(3).to_string(), "()");
        assert!(Permutation::parse_cycles(3, "(1 2", true).is_err());
    }

    fn arb_perm(max: usize) -> impl Strategy<Value = Permutation> {
        (1..=max).prop_flat_map(|n| {
            Just((0..n).collect::<Vec<_>>())
                .prop_shuffle()
                .prop_map(|v| Permutation::from_images(v).unwrap())
        })
    }

    proptest! {
        #[test]
        fn cycles_round_trip(p in arb_perm(20)) {
            let back = Permutation::from_cycles(p.degree(), &p.to_cycles()).unwrap();
            prop_assert_eq!(back, p);
        }

        #[test]
        fn power_of_order_is_identity(p in arb_perm(20)) {
            prop_assert!(p.pow(p.order() as i64).is_identity());
        }

        #[test]
        fn m_cycle_sign(m in 1usize..20) {
            let pts: Vec<usize> = (0..m).collect();
            let p = Permutation::cycle(m, &pts).unwrap();
            prop_assert_eq!(p.sign(), if (m - 1) % 2 == 0 { 1 } else { -1 });
        }
    }
}
