use std::fmt;

use serde::{Deserialize, Serialize};

/// A generator or its inverse.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct Letter {
    pub gen: u32,
    pub inverse: bool,
}

impl Letter {
    pub fn new(gen: u32) -> Self {
        Letter {
            gen,
            inverse: false,
        }
    }

    pub fn inv(self) -> Self {
        Letter {
            gen: self.gen,
            inverse: !self.inverse,
        }
    }

    /// Column in a coset table: `2·gen` for the generator, `2·gen + 1` for its inverse.
    #[inline]
    pub fn column(self) -> u32 {
        2 * self.gen + self.inverse as u32
    }
}

/// A word in the free group, stored as a letter sequence (not necessarily reduced).
#[derive(Clone, Default, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn gen(g: u32) -> Self {
        Word(vec![Letter::new(g)])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn max_generator(&self) -> Option<u32> {
        self.0.iter().map(|l| l.gen).max()
    }

    /// Cancels adjacent inverse pairs until none remain.
    pub fn free_reduce(&self) -> Word {
        let mut out: Vec<Letter> = Vec::with_capacity(self.0.len());
        for &l in &self.0 {
            if out.last() == Some(&l.inv()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word(out)
    }

    /// Free reduction followed by cancellation between the two ends.
    pub fn cyclic_reduce(&self) -> Word {
        let w = self.free_reduce().0;
        let (mut lo, mut hi) = (0, w.len());
        while hi - lo >= 2 && w[lo] == w[hi - 1].inv() {
            lo += 1;
            hi -= 1;
        }
        Word(w[lo..hi].to_vec())
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inv()).collect())
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn pow(&self, k: i64) -> Word {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut v = Vec::with_capacity(base.len() * k.unsigned_abs() as usize);
        for _ in 0..k.unsigned_abs() {
            v.extend_from_slice(&base.0);
        }
        Word(v)
    }

    /// `self^by = by⁻¹ · self · by`.
    pub fn conj(&self, by: &Word) -> Word {
        by.inverse().concat(self).concat(by)
    }

    /// `[self, other] = self⁻¹ other⁻¹ self other`.
    pub fn commutator(&self, other: &Word) -> Word {
        self.inverse()
            .concat(&other.inverse())
            .concat(self)
            .concat(other)
    }

    /// Renames generators, e.g. to move a word onto the second copy of a group.
    pub fn map_gens(&self, f: impl Fn(u32) -> u32) -> Word {
        Word(
            self.0
                .iter()
                .map(|l| Letter {
                    gen: f(l.gen),
                    inverse: l.inverse,
                })
                .collect(),
        )
    }

    /// Renders the word with run-length exponents, e.g. `a^2 b^-1`.
    pub fn display<'a>(&'a self, names: &'a [String]) -> impl fmt::Display + 'a {
        WordDisplay { word: self, names }
    }
}

struct WordDisplay<'a> {
    word: &'a Word,
    names: &'a [String],
}

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w = &self.word.0;
        if w.is_empty() {
            return write!(f, "1");
        }
        let mut i = 0;
        let mut first = true;
        while i < w.len() {
            let mut j = i;
            while j < w.len() && w[j] == w[i] {
                j += 1;
            }
            if !first {
                write!(f, " ")?;
            }
            first = false;
            let name = self
                .names
                .get(w[i].gen as usize)
                .cloned()
                .unwrap_or_else(|| format!("x{}", w[i].gen));
            let exp = (j - i) as i64 * if w[i].inverse { -1 } else { 1 };
            if exp == 1 {
                write!(f, "{name}")?;
            } else {
                write!(f, "{name}^{exp}")?;
            }
            i = j;
        }
        Ok(())
    }
}
