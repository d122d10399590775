//! Permutations of `{0, …, degree-1}`.
//!
//! Composition is left to right: `(f * g)(x) = g(f(x))`. Cycle notation
//! follows the same convention, so `(0 1)(1 2)` applies `(0 1)` first.

use std::fmt;
use std::ops::Mul;

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree as u32).collect(),
        }
    }

    /// Builds a permutation from its image list, checking bijectivity.
    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        let n = images.len();
        if n == 0 {
            return Err(Error::Domain("permutation degree must be positive".into()));
        }
        let mut seen = vec![false; n];
        for &i in &images {
            let i = i as usize;
            if i >= n || seen[i] {
                return Err(Error::Domain(format!(
                    "image list {images:?} is not a bijection"
                )));
            }
            seen[i] = true;
        }
        Ok(Permutation { images })
    }

    /// Parses cycle notation such as `(0 1)(2 3)` or `()` on `degree` points.
    pub fn parse_cycles(s: &str, degree: usize) -> Result<Self> {
        let mut perm = Permutation::identity(degree);
        let mut rest = s.trim();
        if rest.is_empty() {
            return Err(Error::Parse("empty cycle string".into()));
        }
        while !rest.is_empty() {
            let body = rest
                .strip_prefix('(')
                .ok_or_else(|| Error::Parse(format!("expected '(' in {s:?}")))?;
            let close = body
                .find(')')
                .ok_or_else(|| Error::Parse(format!("unclosed cycle in {s:?}")))?;
            let points = body[..close]
                .split(|c: char| c.is_whitespace() || c == ',')
                .filter(|t| !t.is_empty())
                .map(|t| {
                    t.parse::<u32>()
                        .map_err(|_| Error::Parse(format!("bad point {t:?} in {s:?}")))
                })
                .collect::<Result<Vec<_>>>()?;
            let mut cycle = Permutation::identity(degree);
            for (k, &pt) in points.iter().enumerate() {
                if pt as usize >= degree {
                    return Err(Error::Parse(format!(
                        "point {pt} out of range for degree {degree}"
                    )));
                }
                if points[..k].contains(&pt) {
                    return Err(Error::Parse(format!("repeated point {pt} in {s:?}")));
                }
                cycle.images[pt as usize] = points[(k + 1) % points.len()];
            }
            perm = &perm * &cycle;
            rest = body[close + 1..].trim_start();
        }
        Ok(perm)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    #[inline]
    pub fn apply(&self, point: u32) -> u32 {
        self.images[point as usize]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i as u32 == j)
    }

    pub fn inverse(&self) -> Self {
        let mut images = vec![0; self.images.len()];
        for (i, &j) in self.images.iter().enumerate() {
            images[j as usize] = i as u32;
        }
        Permutation { images }
    }

    /// Left-to-right product, rejecting permutations of different degree.
    pub fn compose(&self, other: &Permutation) -> Result<Self> {
        if self.degree() != other.degree() {
            return Err(Error::AmbientMismatch {
                left: self.degree(),
                right: other.degree(),
            });
        }
        Ok(Permutation {
            images: self.images.iter().map(|&i| other.apply(i)).collect(),
        })
    }

    /// `[self, other] = self⁻¹ other⁻¹ self other`.
    pub fn commutator(&self, other: &Permutation) -> Result<Self> {
        let a_inv = self.inverse();
        let b_inv = other.inverse();
        a_inv.compose(&b_inv)?.compose(self)?.compose(other)
    }

    pub fn pow(&self, k: i64) -> Self {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut acc = Permutation::identity(self.degree());
        for _ in 0..k.unsigned_abs() {
            acc = &acc * &base;
        }
        acc
    }

    pub fn order(&self) -> u64 {
        let mut seen = vec![false; self.degree()];
        let mut order = 1u64;
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut len = 0u64;
            let mut pt = start;
            while !seen[pt] {
                seen[pt] = true;
                pt = self.images[pt] as usize;
                len += 1;
            }
            order = lcm(order, len);
        }
        order
    }

    /// Nontrivial cycles, each starting at its least point.
    pub fn cycles(&self) -> Vec<Vec<u32>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] || self.images[start] as usize == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut pt = start;
            while !seen[pt] {
                seen[pt] = true;
                cycle.push(pt as u32);
                pt = self.images[pt] as usize;
            }
            out.push(cycle);
        }
        out
    }
}

impl Mul for &Permutation {
    type Output = Permutation;

    /// Panics on degree mismatch; use [`Permutation::compose`] to get an error instead.
    fn mul(self, rhs: &Permutation) -> Permutation {
        self.compose(rhs).expect("permutation degrees differ")
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            write!(f, "(")?;
            for (k, p) in c.iter().enumerate() {
                if k > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{p}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation{self}")
    }
}

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub(crate) fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}
