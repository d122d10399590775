//! Left Engel conditions in `G` and in ν(G).
//!
//! For fixed `y` the map `c ↦ [c, y]` is a function on the ambient group, so
//! each orbit `x, [x,y], [x,y,y], …` either reaches the identity (a fixed
//! point) or enters a cycle avoiding it. Walking the functional graph once
//! gives the exact Engel degree of `y`.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::catalog::prime_of_power;
use crate::check::{Verification, Witness};
use crate::error::{Error, Result};
use crate::group::{Elem, FiniteGroup};
use crate::nu::NuGroup;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind", content = "n")]
pub enum EngelDegree {
    /// Least `n >= 1` with `[x, _n y] = 1` for every `x`.
    Exact(usize),
    /// Left Engel, but the least `n` is above the configured search bound.
    Undetermined,
    /// Some orbit cycles without reaching the identity.
    Never,
}

impl EngelDegree {
    pub fn is_at_most(self, n: usize) -> bool {
        matches!(self, EngelDegree::Exact(k) if k <= n)
    }
}

/// Exact Engel degree of `y` in `g`.
pub fn engel_degree(g: &FiniteGroup, y: Elem) -> EngelDegree {
    const UNSEEN: u32 = u32::MAX;
    const ON_PATH: u32 = u32::MAX - 1;
    const NEVER: u32 = u32::MAX - 2;
    let n = g.order();
    // depth[c]: steps from c to the identity under c ↦ [c, y]
    let mut depth = vec![UNSEEN; n];
    depth[0] = 0;
    let mut worst = 1u32;
    let mut path = Vec::new();
    for start in 0..n {
        if depth[start] != UNSEEN {
            continue;
        }
        let mut c = start;
        while depth[c] == UNSEEN {
            depth[c] = ON_PATH;
            path.push(c);
            c = g.comm(Elem(c as u32), y).index();
        }
        let tail = match depth[c] {
            ON_PATH | NEVER => NEVER,
            d => d,
        };
        let mut d = tail;
        while let Some(p) = path.pop() {
            if d != NEVER {
                d += 1;
            }
            depth[p] = d;
            if d == NEVER {
                return EngelDegree::Never;
            }
            worst = worst.max(d);
        }
    }
    EngelDegree::Exact(worst as usize)
}

/// Whether `[x, _n y] = 1` for every `x` in `g`.
pub fn is_left_n_engel(g: &FiniteGroup, y: Elem, n: usize) -> Result<bool> {
    if n == 0 {
        return Err(Error::Domain("Engel depth must be at least 1".into()));
    }
    for x in g.elements() {
        if !g.iterated_commutator(x, y, n)?.is_identity() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Elements that are left `n`-Engel for some `n <= bound`.
pub fn left_engel_set(g: &FiniteGroup, bound: usize) -> Vec<Elem> {
    g.elements()
        .filter(|&y| engel_degree(g, y).is_at_most(bound))
        .collect()
}

/// Engel degrees in one ambient group, remembered by element.
pub struct EngelCache<'a> {
    group: &'a FiniteGroup,
    degrees: HashMap<Elem, EngelDegree>,
}

impl<'a> EngelCache<'a> {
    pub fn new(group: &'a FiniteGroup) -> Self {
        EngelCache {
            group,
            degrees: HashMap::new(),
        }
    }

    pub fn degree(&mut self, y: Elem) -> EngelDegree {
        let g = self.group;
        *self.degrees.entry(y).or_insert_with(|| engel_degree(g, y))
    }

    pub fn is_left_n_engel(&mut self, y: Elem, n: usize) -> bool {
        self.degree(y).is_at_most(n)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EngelProjection {
    /// `[x, y^φ]^q` is left `n`-Engel in ν(G).
    pub hypothesis: bool,
    /// `[x, y]^q` is left `n`-Engel in `G`.
    pub conclusion: bool,
    pub implication_holds: bool,
}

/// Evaluates hypothesis and conclusion of the Engel projection through ρ.
pub fn engel_projection_check(
    nu: &NuGroup,
    x: Elem,
    y: Elem,
    q: u64,
    n: usize,
) -> Result<EngelProjection> {
    let a = nu.ambient();
    let g = nu.group();
    let hyp = is_left_n_engel(a, a.pow(nu.tensor_element(x, y), q as i64), n)?;
    let con = is_left_n_engel(g, g.pow(g.comm(x, y), q as i64), n)?;
    Ok(EngelProjection {
        hypothesis: hyp,
        conclusion: con,
        implication_holds: !hyp || con,
    })
}

/// [`engel_projection_check`] over every pair of `G` and every `q` in `qs`.
pub fn engel_projection_scan(nu: &NuGroup, qs: &[u64], n: usize) -> Verification {
    let a = nu.ambient();
    let g = nu.group();
    let mut v = Verification::new(
        "engel-projection",
        format!("[x,y^φ]^q left {n}-Engel in ν(G) implies [x,y]^q left {n}-Engel in G"),
    );
    let mut in_nu = EngelCache::new(a);
    let mut in_g = EngelCache::new(g);
    let mut hypotheses = 0u64;
    for x in g.elements() {
        for y in g.elements() {
            for &q in qs {
                let hyp = in_nu.is_left_n_engel(a.pow(nu.tensor_element(x, y), q as i64), n);
                let con = in_g.is_left_n_engel(g.pow(g.comm(x, y), q as i64), n);
                hypotheses += hyp as u64;
                v.record(!hyp || con, || Witness::new(g, &[x, y]));
            }
        }
    }
    v.note(format!(
        "q in {qs:?}; hypothesis true in {hypotheses} cases"
    ));
    v
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EngelScanConfig {
    pub p: u64,
    pub m: u32,
    pub n: usize,
    /// Largest Engel degree reported exactly.
    pub search_bound: usize,
}

impl EngelScanConfig {
    pub fn new(p: u64, m: u32, n: usize) -> Result<Self> {
        if prime_of_power(p) != Some(p) {
            return Err(Error::Domain(format!("{p} is not prime")));
        }
        if m == 0 || n == 0 {
            return Err(Error::Domain("m and n must be at least 1".into()));
        }
        Ok(EngelScanConfig {
            p,
            m,
            n,
            search_bound: 10,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairEntry {
    pub x: u32,
    pub y: u32,
    /// Least `q` in `1, p, …, p^m` with `[x,y^φ]^q` left `n`-Engel.
    pub q: Option<u64>,
    /// Engel degree of `[x,y^φ]` itself in ν(G).
    pub tensor_degree: EngelDegree,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EngelScanResult {
    pub config: EngelScanConfig,
    pub pairs: Vec<PairEntry>,
    pub all_pairs_satisfied: bool,
}

impl EngelScanResult {
    /// Re-tests each recorded `q` by direct iteration rather than through
    /// the functional-graph degrees: `q` works and, when `q > 1`, `q/p` fails.
    pub fn verify_minimality(&self, nu: &NuGroup) -> bool {
        let a = nu.ambient();
        let n = self.config.n;
        let engel = |t: Elem, q: u64| is_left_n_engel(a, a.pow(t, q as i64), n).unwrap_or(false);
        self.pairs.iter().all(|e| {
            let t = nu.tensor_element(Elem(e.x), Elem(e.y));
            match e.q {
                Some(1) => engel(t, 1),
                Some(q) => engel(t, q) && !engel(t, q / self.config.p),
                None => true,
            }
        })
    }
}

/// For every pair, the least divisor `q` of `p^m` with `[x,y^φ]^q` left
/// `n`-Engel in ν(G), tested against every element of ν(G).
pub fn engel_power_scan(nu: &NuGroup, cfg: &EngelScanConfig) -> EngelScanResult {
    let a = nu.ambient();
    let g = nu.group();
    let mut cache = EngelCache::new(a);
    let mut pairs = Vec::with_capacity(g.order() * g.order());
    for x in g.elements() {
        for y in g.elements() {
            let t = nu.tensor_element(x, y);
            let mut q = 1u64;
            let mut found = None;
            for _ in 0..=cfg.m {
                if cache.is_left_n_engel(a.pow(t, q as i64), cfg.n) {
                    found = Some(q);
                    break;
                }
                q *= cfg.p;
            }
            let tensor_degree = match cache.degree(t) {
                EngelDegree::Exact(k) if k > cfg.search_bound => EngelDegree::Undetermined,
                d => d,
            };
            pairs.push(PairEntry {
                x: x.0,
                y: y.0,
                q: found,
                tensor_degree,
            });
        }
    }
    let all_pairs_satisfied = pairs.iter().all(|e| e.q.is_some());
    EngelScanResult {
        config: *cfg,
        pairs,
        all_pairs_satisfied,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityFReport {
    pub n: usize,
    pub p: u64,
    pub m: u32,
    pub holds: bool,
    pub cases: u64,
    pub counterexample: Option<Witness>,
}

/// Evaluates `f = [z, _n c, _n c^p, …, _n c^{p^m}]` with `c = [x, y]` on
/// every triple `(z, x, y)`.
pub fn identity_f_check(g: &FiniteGroup, n: usize, p: u64, m: u32) -> Result<IdentityFReport> {
    if n == 0 {
        return Err(Error::Domain("Engel depth must be at least 1".into()));
    }
    let mut report = IdentityFReport {
        n,
        p,
        m,
        holds: true,
        cases: 0,
        counterexample: None,
    };
    for x in g.elements() {
        for y in g.elements() {
            let c = g.comm(x, y);
            let mut powers = Vec::with_capacity(m as usize + 1);
            let mut q = c;
            for _ in 0..=m {
                powers.push(q);
                q = g.pow(q, p as i64);
            }
            for z in g.elements() {
                let mut w = z;
                for &d in &powers {
                    for _ in 0..n {
                        w = g.comm(w, d);
                    }
                }
                report.cases += 1;
                if !w.is_identity() {
                    report.holds = false;
                    report.counterexample = Some(Witness::new(g, &[z, x, y]));
                    return Ok(report);
                }
            }
        }
    }
    Ok(report)
}
