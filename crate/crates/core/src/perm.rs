//! Permutations of `{0, .., n-1}`.
//!
//! Composition follows the right-action convention: `a * b` applies `a`
//! first, then `b`. Cycle notation on input and output is 1-indexed.

use std::fmt;
use std::ops::Mul;

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree).collect(),
        }
    }

    /// Builds a permutation from its image list, rejecting non-bijections.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for (i, &x) in images.iter().enumerate() {
            if x >= n {
                return Err(Error::input(format!(
                    "image {x} of point {i} is outside degree {n}"
                )));
            }
            if std::mem::replace(&mut seen[x], true) {
                return Err(Error::input(format!("point {x} is hit twice")));
            }
        }
        Ok(Permutation { images })
    }

    pub(crate) fn from_images_unchecked(images: Vec<usize>) -> Self {
        debug_assert!(Self::from_images(images.clone()).is_ok());
        Permutation { images }
    }

    /// Builds a permutation from 0-indexed cycles.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut images: Vec<usize> = (0..degree).collect();
        let mut touched = vec![false; degree];
        for cycle in cycles {
            for (k, &p) in cycle.iter().enumerate() {
                if p >= degree {
                    return Err(Error::input(format!(
                        "point {} exceeds degree {degree}",
                        p + 1
                    )));
                }
                if std::mem::replace(&mut touched[p], true) {
                    return Err(Error::input(format!(
                        "point {} appears in more than one cycle",
                        p + 1
                    )));
                }
                images[p] = cycle[(k + 1) % cycle.len()];
            }
        }
        Ok(Permutation { images })
    }

    /// Parses 1-indexed cycle notation such as `(1 2 3 4)(5 6)`.
    ///
    /// Entries may be separated by spaces or commas; `()` is the identity.
    pub fn parse_cycles(degree: usize, text: &str) -> Result<Self> {
        parse_cycles_at(degree, text, 1)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, point: usize) -> usize {
        self.images[point]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x)
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x] = i;
        }
        Permutation { images: inv }
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &Permutation) -> Self {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation {
            images: self.images.iter().map(|&x| other.images[x]).collect(),
        }
    }

    /// `g^-1 * self * g`.
    pub fn conjugate_by(&self, g: &Permutation) -> Self {
        let mut images = vec![0; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            images[g.images[i]] = g.images[x];
        }
        Permutation { images }
    }

    /// `self^-1 * other^-1 * self * other`.
    pub fn commutator(&self, other: &Permutation) -> Self {
        self.inverse()
            .then(&other.inverse())
            .then(self)
            .then(other)
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Permutation::identity(self.degree());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.then(&base);
            }
            base = base.then(&base);
            e >>= 1;
        }
        acc
    }

    /// Cycles of length at least two, each starting at its smallest point,
    /// ordered by that point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        self.all_cycles().into_iter().filter(|c| c.len() > 1).collect()
    }

    /// All cycles including fixed points.
    pub fn all_cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut p = self.images[start];
            while p != start {
                seen[p] = true;
                cycle.push(p);
                p = self.images[p];
            }
            out.push(cycle);
        }
        out
    }

    pub fn cycle_count(&self) -> usize {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut count = 0;
        for start in 0..n {
            if seen[start] {
                continue;
            }
            count += 1;
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                p = self.images[p];
            }
        }
        count
    }

    /// Cycle lengths in descending order, fixed points included.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut lens: Vec<usize> = self.all_cycles().iter().map(Vec::len).collect();
        lens.sort_unstable_by(|a, b| b.cmp(a));
        lens
    }

    pub fn order(&self) -> u64 {
        self.all_cycles()
            .iter()
            .fold(1u64, |acc, c| num_integer::lcm(acc, c.len() as u64))
    }

    /// Smallest point moved by the permutation.
    pub fn first_moved(&self) -> Option<usize> {
        self.images.iter().enumerate().find(|(i, &x)| *i != x).map(|(i, _)| i)
    }

    /// Restriction to the points `offset .. offset + len`, which must be
    /// an invariant interval.
    pub fn restrict(&self, offset: usize, len: usize) -> Option<Permutation> {
        let mut images = Vec::with_capacity(len);
        for i in offset..offset + len {
            let x = self.images[i];
            if x < offset || x >= offset + len {
                return None;
            }
            images.push(x - offset);
        }
        Some(Permutation { images })
    }

    /// Embeds into a larger degree, acting on `offset .. offset + degree`.
    pub fn shifted(&self, offset: usize, total: usize) -> Permutation {
        let mut images: Vec<usize> = (0..total).collect();
        for (i, &x) in self.images.iter().enumerate() {
            images[offset + i] = offset + x;
        }
        Permutation { images }
    }

    /// 1-indexed cycle notation; the identity prints as `()`.
    pub fn to_cycle_string(&self) -> String {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return "()".to_string();
        }
        let mut s = String::new();
        for c in cycles {
            s.push('(');
            let parts: Vec<String> = c.iter().map(|p| (p + 1).to_string()).collect();
            s.push_str(&parts.join(" "));
            s.push(')');
        }
        s
    }
}

impl Mul for &Permutation {
    type Output = Permutation;

    fn mul(self, rhs: &Permutation) -> Permutation {
        self.then(rhs)
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_cycle_string())
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_cycle_string())
    }
}

/// Parses cycle notation, reporting columns relative to `line`.
pub(crate) fn parse_cycles_at(degree: usize, text: &str, line: usize) -> Result<Permutation> {
    let mut cycles: Vec<Vec<usize>> = Vec::new();
    let mut current: Option<Vec<usize>> = None;
    let mut number = String::new();
    let mut number_col = 0;

    let flush = |number: &mut String, col: usize, current: &mut Option<Vec<usize>>| -> Result<()> {
        if number.is_empty() {
            return Ok(());
        }
        let value: usize = number
            .parse()
            .map_err(|_| Error::parse(line, col, format!("bad point {number:?}")))?;
        if value == 0 || value > degree {
            return Err(Error::parse(
                line,
                col,
                format!("point {value} outside 1..={degree}"),
            ));
        }
        match current {
            Some(c) => c.push(value - 1),
            None => return Err(Error::parse(line, col, "point outside a cycle")),
        }
        number.clear();
        Ok(())
    };

    for (idx, ch) in text.chars().enumerate() {
        let col = idx + 1;
        match ch {
            '(' => {
                if current.is_some() {
                    return Err(Error::parse(line, col, "nested '('"));
                }
                current = Some(Vec::new());
            }
            ')' => {
                flush(&mut number, number_col, &mut current)?;
                match current.take() {
                    Some(c) => cycles.push(c),
                    None => return Err(Error::parse(line, col, "unmatched ')'")),
                }
            }
            '0'..='9' => {
                if number.is_empty() {
                    number_col = col;
                }
                number.push(ch);
            }
            ' ' | ',' | '\t' => flush(&mut number, number_col, &mut current)?,
            _ => return Err(Error::parse(line, col, format!("unexpected character {ch:?}"))),
        }
    }
    if current.is_some() {
        return Err(Error::parse(line, text.len() + 1, "unterminated cycle"));
    }
    if !number.is_empty() {
        return Err(Error::parse(line, number_col, "point outside a cycle"));
    }
    Permutation::from_cycles(degree, &cycles).map_err(|e| match e {
        Error::Input(msg) => Error::parse(line, 1, msg),
        other => other,
    })
}
