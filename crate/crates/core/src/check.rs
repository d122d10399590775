//! Outcome of a finite-scale verification.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::group::{Elem, FiniteGroup};

/// Elements witnessing a failure: indices into the deterministic element
/// order plus generator words.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub elements: Vec<u32>,
    pub words: Vec<String>,
}

impl Witness {
    pub fn new(g: &FiniteGroup, elems: &[Elem]) -> Self {
        Witness {
            elements: elems.iter().map(|e| e.0).collect(),
            words: elems.iter().map(|&e| g.format_word(e)).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verification {
    pub check: String,
    pub statement: String,
    pub passed: bool,
    /// Whether every case was examined (as opposed to a random sample).
    pub exhaustive: bool,
    pub cases: u64,
    pub counterexample: Option<Witness>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl Verification {
    pub fn new(check: impl Into<String>, statement: impl Into<String>) -> Self {
        Verification {
            check: check.into(),
            statement: statement.into(),
            passed: true,
            exhaustive: true,
            cases: 0,
            counterexample: None,
            notes: Vec::new(),
        }
    }

    /// Records one case; the first failure is kept as the counterexample.
    pub fn record(&mut self, ok: bool, witness: impl FnOnce() -> Witness) {
        self.cases += 1;
        if !ok && self.passed {
            self.passed = false;
            self.counterexample = Some(witness());
        }
    }

    /// Records a whole-structure condition that has no element witness.
    pub fn require(&mut self, ok: bool, note: impl Into<String>) {
        self.cases += 1;
        if !ok {
            self.passed = false;
            self.notes.push(note.into());
        }
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }
}

/// How tuples of group elements are chosen for a check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sampling {
    /// Exhaustive when `|G|` is at most this.
    pub exhaustive_cap: usize,
    /// Number of random tuples otherwise.
    pub samples: usize,
    pub seed: u64,
}

impl Default for Sampling {
    fn default() -> Self {
        Sampling {
            exhaustive_cap: 8,
            samples: 10_000,
            seed: 0,
        }
    }
}

/// Visits `arity`-tuples drawn from `pool`, all of them or a seeded sample.
/// Stops early once `f` returns `false`. Returns whether the run was
/// exhaustive.
pub(crate) fn for_tuples(
    pool: &[Elem],
    arity: usize,
    exhaustive: bool,
    sampling: &Sampling,
    mut f: impl FnMut(&[Elem]) -> bool,
) -> bool {
    let mut tuple = vec![Elem::IDENTITY; arity];
    if exhaustive {
        let n = pool.len();
        let mut idx = vec![0usize; arity];
        loop {
            for (t, &i) in tuple.iter_mut().zip(&idx) {
                *t = pool[i];
            }
            if !f(&tuple) {
                return true;
            }
            let mut k = arity;
            loop {
                if k == 0 {
                    return true;
                }
                k -= 1;
                idx[k] += 1;
                if idx[k] < n {
                    break;
                }
                idx[k] = 0;
            }
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(sampling.seed);
        for _ in 0..sampling.samples {
            for t in tuple.iter_mut() {
                *t = pool[rng.gen_range(0..pool.len())];
            }
            if !f(&tuple) {
                break;
            }
        }
        false
    }
}
