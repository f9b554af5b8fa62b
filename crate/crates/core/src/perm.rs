//! Permutations of `{0, …, degree-1}`.
//!
//! Products follow the apply-first convention: `a.then(&b)` maps a point
//! `i` to `b(a(i))`. Every table built from permutations uses it.
//!
//! The text format is cycle notation with 1-based points, e.g. `(1 2 3)(4 5)`,
//! and `()` for the identity.

use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    images: Vec<usize>,
}

impl Perm {
    pub fn identity(degree: usize) -> Self {
        Perm {
            images: (0..degree).collect(),
        }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; images.len()];
        for &x in &images {
            if x >= images.len() || seen[x] {
                return Err(Error::InvalidPerm(format!(
                    "image list {images:?} is not a bijection"
                )));
            }
            seen[x] = true;
        }
        Ok(Perm { images })
    }

    /// Builds a permutation from 0-based cycles. Overlapping cycles are
    /// multiplied left to right.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut acc = Perm::identity(degree);
        for cycle in cycles {
            let mut images: Vec<usize> = (0..degree).collect();
            for (k, &pt) in cycle.iter().enumerate() {
                if pt >= degree {
                    return Err(Error::InvalidPerm(format!(
                        "point {} exceeds degree {degree}",
                        pt + 1
                    )));
                }
                if cycle[..k].contains(&pt) {
                    return Err(Error::InvalidPerm(format!(
                        "point {} repeated within a cycle",
                        pt + 1
                    )));
                }
                images[pt] = cycle[(k + 1) % cycle.len()];
            }
            acc = acc.then(&Perm { images });
        }
        Ok(acc)
    }

    /// Parses 1-based cycle notation. With `degree = None` the degree is the
    /// largest point mentioned.
    pub fn parse(text: &str, degree: Option<usize>) -> Result<Self> {
        let cycles = parse_cycles(text)?;
        let needed = cycles.iter().flatten().map(|&p| p + 1).max().unwrap_or(0);
        let degree = match degree {
            Some(d) if d < needed => {
                return Err(Error::InvalidPerm(format!(
                    "point {needed} exceeds degree {d} in {text:?}"
                )))
            }
            Some(d) => d,
            None => needed,
        };
        Perm::from_cycles(degree, &cycles)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, point: usize) -> usize {
        self.images[point]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// `self` first, then `other`.
    pub fn then(&self, other: &Perm) -> Perm {
        assert_eq!(self.degree(), other.degree(), "degree mismatch");
        Perm {
            images: self.images.iter().map(|&x| other.images[x]).collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut images = vec![0; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            images[x] = i;
        }
        Perm { images }
    }

    /// Embeds into a larger degree, moving points by `offset`.
    pub fn shifted(&self, offset: usize, degree: usize) -> Perm {
        let mut images: Vec<usize> = (0..degree).collect();
        for (i, &x) in self.images.iter().enumerate() {
            images[i + offset] = x + offset;
        }
        Perm { images }
    }

    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] || self.images[start] == start {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut x = self.images[start];
            while x != start {
                seen[x] = true;
                cycle.push(x);
                x = self.images[x];
            }
            out.push(cycle);
        }
        out
    }
}

fn parse_cycles(text: &str) -> Result<Vec<Vec<usize>>> {
    let text = text.trim();
    let mut cycles = Vec::new();
    let mut rest = text;
    while !rest.is_empty() {
        let body = rest
            .strip_prefix('(')
            .ok_or_else(|| Error::Parse(format!("expected '(' in cycle notation {text:?}")))?;
        let close = body
            .find(')')
            .ok_or_else(|| Error::Parse(format!("unclosed cycle in {text:?}")))?;
        let mut cycle = Vec::new();
        for tok in body[..close].split(|c: char| c.is_whitespace() || c == ',') {
            if tok.is_empty() {
                continue;
            }
            let pt: usize = tok
                .parse()
                .map_err(|_| Error::Parse(format!("bad point {tok:?} in {text:?}")))?;
            if pt == 0 {
                return Err(Error::Parse(format!(
                    "points are 1-based, got 0 in {text:?}"
                )));
            }
            cycle.push(pt - 1);
        }
        if !cycle.is_empty() {
            cycles.push(cycle);
        }
        rest = body[close + 1..].trim_start();
    }
    Ok(cycles)
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for cycle in cycles {
            f.write_str("(")?;
            for (k, pt) in cycle.iter().enumerate() {
                if k > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{}", pt + 1)?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm{}", self)
    }
}
