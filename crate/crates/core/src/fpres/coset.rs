//! Todd–Coxeter coset enumeration.
//!
//! Two strategies are available. [`Strategy::Hlt`] scans every relator at
//! every coset in order, defining cosets to fill gaps; when the table is
//! full it runs a lookahead pass (scan without definitions) and compacts.
//! [`Strategy::Felsch`] defines the first undefined entry and then follows
//! every consequence through a deduction stack. Coincidences are merged with
//! a union-find and replayed row by row.
//!
//! Columns are `2·g` for generator `g` and `2·g + 1` for its inverse.

use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use super::presentation::Presentation;
use super::word::Word;
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::perm::Permutation;

const NONE: u32 = u32::MAX;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Strategy {
    #[default]
    Hlt,
    Felsch,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EnumerationLimits {
    pub max_cosets: usize,
    pub time_limit: Duration,
    pub strategy: Strategy,
}

impl Default for EnumerationLimits {
    fn default() -> Self {
        EnumerationLimits {
            max_cosets: 2_000_000,
            time_limit: Duration::from_secs(60),
            strategy: Strategy::Hlt,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TableStatus {
    InProgress,
    Closed,
}

/// A coset table. Once closed, cosets are numbered `0..coset_count()` in
/// order of definition and coset 0 is the subgroup itself.
#[derive(Clone, Debug)]
pub struct CosetTable {
    ngens: usize,
    rows: Vec<u32>,
    count: usize,
    status: TableStatus,
    trivial_subgroup: bool,
}

impl CosetTable {
    pub fn status(&self) -> TableStatus {
        self.status
    }

    pub fn is_closed(&self) -> bool {
        self.status == TableStatus::Closed
    }

    pub fn coset_count(&self) -> usize {
        self.count
    }

    pub fn num_generators(&self) -> usize {
        self.ngens
    }

    /// Image of `coset` under generator `gen` (or its inverse).
    pub fn entry(&self, coset: usize, gen: usize, inverse: bool) -> Option<usize> {
        let v = self.rows[coset * 2 * self.ngens + 2 * gen + inverse as usize];
        (v != NONE).then_some(v as usize)
    }

    /// Traces `w` from `coset`, returning `None` on an undefined entry.
    pub fn trace(&self, coset: usize, w: &Word) -> Option<usize> {
        let mut c = coset;
        for l in w.letters() {
            c = self.entry(c, l.gen as usize, l.inverse)?;
        }
        Some(c)
    }

    /// Independent soundness check: the table is complete, inverse columns
    /// agree, and every relator traces a closed loop at every coset.
    pub fn verify(&self, p: &Presentation, subgroup: &[Word]) -> bool {
        if !self.is_closed() || p.num_generators() != self.ngens {
            return false;
        }
        for c in 0..self.count {
            for g in 0..self.ngens {
                match (self.entry(c, g, false), self.entry(c, g, true)) {
                    (Some(d), Some(_)) if self.entry(d, g, true) == Some(c) => {}
                    _ => return false,
                }
            }
            for r in p.relators() {
                if self.trace(c, r) != Some(c) {
                    return false;
                }
            }
        }
        subgroup.iter().all(|w| self.trace(0, w) == Some(0))
    }

    /// The permutation action of the presentation's generators on the cosets.
    pub fn to_perm_group(&self, capacity: usize) -> Result<FiniteGroup> {
        if !self.is_closed() {
            return Err(Error::State("coset table is not closed".into()));
        }
        let gens = (0..self.ngens.max(1))
            .map(|g| {
                if self.ngens == 0 {
                    return Permutation::from_images((0..self.count as u32).collect());
                }
                let images = (0..self.count)
                    .map(|c| self.entry(c, g, false).unwrap() as u32)
                    .collect();
                Permutation::from_images(images)
            })
            .collect::<Result<Vec<_>>>()?;
        if self.trivial_subgroup {
            FiniteGroup::from_regular_action(gens, capacity)
        } else {
            FiniteGroup::with_capacity(gens, capacity)
        }
    }
}

/// Enumeration gave up; the partially built table is kept for inspection.
#[derive(Debug)]
pub struct LimitExceeded {
    pub reason: String,
    pub table: CosetTable,
}

impl From<LimitExceeded> for Error {
    fn from(e: LimitExceeded) -> Self {
        Error::EnumerationLimit {
            reason: e.reason,
            cosets: e.table.count,
        }
    }
}

/// Enumerates the cosets of `⟨subgroup⟩` in the group presented by `p`.
pub fn tc_enumerate(
    p: &Presentation,
    subgroup: &[Word],
    limits: &EnumerationLimits,
) -> std::result::Result<CosetTable, LimitExceeded> {
    let mut e = Enumerator::new(p, subgroup, limits);
    let outcome = match limits.strategy {
        Strategy::Hlt => e.run_hlt(),
        Strategy::Felsch => e.run_felsch(),
    };
    let trivial_subgroup = subgroup.iter().all(|w| w.free_reduce().is_empty());
    match outcome {
        Ok(()) => Ok(e.into_table(TableStatus::Closed, trivial_subgroup)),
        Err(reason) => Err(LimitExceeded {
            reason,
            table: e.into_table(TableStatus::InProgress, trivial_subgroup),
        }),
    }
}

enum Stop {
    Full,
    Limit(String),
}

struct Enumerator {
    ngens: usize,
    ncols: usize,
    table: Vec<u32>,
    parent: Vec<u32>,
    live: usize,
    relators: Vec<Vec<u32>>,
    subgroup: Vec<Vec<u32>>,
    /// Cyclic conjugates of relators and their inverses, keyed by first column.
    conjugates: Vec<Vec<Vec<u32>>>,
    deductions: Vec<(u32, u32)>,
    track_deductions: bool,
    queue: Vec<u32>,
    max_cosets: usize,
    deadline: Instant,
    time_limit: Duration,
    defs_since_check: u32,
}

#[inline]
fn inv(col: u32) -> u32 {
    col ^ 1
}

impl Enumerator {
    fn new(p: &Presentation, subgroup: &[Word], limits: &EnumerationLimits) -> Self {
        let ngens = p.num_generators();
        let ncols = 2 * ngens;
        let to_cols = |w: &Word| -> Vec<u32> { w.letters().iter().map(|l| l.column()).collect() };
        let mut relators: Vec<Vec<u32>> = Vec::new();
        let mut distinct = std::collections::HashSet::new();
        for r in p.relators() {
            let c = to_cols(&r.cyclic_reduce());
            if !c.is_empty() && distinct.insert(c.clone()) {
                relators.push(c);
            }
        }
        let subgroup: Vec<Vec<u32>> = subgroup
            .iter()
            .map(|w| to_cols(&w.free_reduce()))
            .filter(|w| !w.is_empty())
            .collect();
        let felsch = limits.strategy == Strategy::Felsch;
        let mut conjugates = vec![Vec::new(); ncols];
        if felsch {
            let mut seen = std::collections::HashSet::new();
            for r in &relators {
                let rinv: Vec<u32> = r.iter().rev().map(|&c| inv(c)).collect();
                for w in [r, &rinv] {
                    for k in 0..w.len() {
                        let rot: Vec<u32> = w[k..].iter().chain(&w[..k]).copied().collect();
                        if seen.insert(rot.clone()) {
                            conjugates[rot[0] as usize].push(rot);
                        }
                    }
                }
            }
        }
        let mut table = Vec::with_capacity(ncols * 1024);
        table.resize(ncols.max(1), NONE);
        Enumerator {
            ngens,
            ncols,
            table,
            parent: vec![0],
            live: 1,
            relators,
            subgroup,
            conjugates,
            deductions: Vec::new(),
            track_deductions: felsch,
            queue: Vec::new(),
            max_cosets: limits.max_cosets,
            deadline: Instant::now() + limits.time_limit,
            time_limit: limits.time_limit,
            defs_since_check: 0,
        }
    }

    #[inline]
    fn get(&self, c: u32, col: u32) -> u32 {
        self.table[c as usize * self.ncols + col as usize]
    }

    #[inline]
    fn set(&mut self, c: u32, col: u32, v: u32) {
        self.table[c as usize * self.ncols + col as usize] = v;
    }

    #[inline]
    fn is_live(&self, c: u32) -> bool {
        self.parent[c as usize] == c
    }

    fn rows(&self) -> usize {
        self.parent.len()
    }

    fn define(&mut self, c: u32, col: u32) -> std::result::Result<u32, Stop> {
        if self.rows() >= self.max_cosets {
            return Err(Stop::Full);
        }
        self.defs_since_check += 1;
        if self.defs_since_check >= 4096 {
            self.defs_since_check = 0;
            if Instant::now() > self.deadline {
                return Err(Stop::Limit(format!(
                    "time limit of {:?} exceeded",
                    self.time_limit
                )));
            }
        }
        let n = self.rows() as u32;
        self.parent.push(n);
        self.table.resize(self.table.len() + self.ncols, NONE);
        self.live += 1;
        self.set(c, col, n);
        self.set(n, inv(col), c);
        if self.track_deductions {
            self.deductions.push((c, col));
        }
        Ok(n)
    }

    fn rep(&mut self, mut c: u32) -> u32 {
        let mut root = c;
        while self.parent[root as usize] != root {
            root = self.parent[root as usize];
        }
        while self.parent[c as usize] != root {
            let next = self.parent[c as usize];
            self.parent[c as usize] = root;
            c = next;
        }
        root
    }

    fn merge(&mut self, a: u32, b: u32) {
        let (ra, rb) = (self.rep(a), self.rep(b));
        if ra != rb {
            let (keep, kill) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[kill as usize] = keep;
            self.live -= 1;
            self.queue.push(kill);
        }
    }

    fn coincidence(&mut self, a: u32, b: u32) {
        self.queue.clear();
        self.merge(a, b);
        let mut i = 0;
        while i < self.queue.len() {
            let g = self.queue[i];
            i += 1;
            for x in 0..self.ncols as u32 {
                let d = self.get(g, x);
                if d == NONE {
                    continue;
                }
                self.set(d, inv(x), NONE);
                let mu = self.rep(g);
                let nu = self.rep(d);
                let mux = self.get(mu, x);
                if mux != NONE {
                    self.merge(nu, mux);
                    continue;
                }
                let nux = self.get(nu, inv(x));
                if nux != NONE {
                    self.merge(mu, nux);
                    continue;
                }
                self.set(mu, x, nu);
                self.set(nu, inv(x), mu);
                if self.track_deductions {
                    self.deductions.push((mu, x));
                }
            }
        }
    }

    /// Scans `w` at `c`, filling gaps by definition when `fill` is set.
    fn scan(&mut self, c: u32, w: &[u32], fill: bool) -> std::result::Result<(), Stop> {
        let n = w.len();
        let (mut f, mut i) = (c, 0usize);
        let (mut b, mut j) = (c, n);
        loop {
            while i < n {
                let next = self.get(f, w[i]);
                if next == NONE {
                    break;
                }
                f = next;
                i += 1;
            }
            if i == n {
                if f != c {
                    self.coincidence(f, c);
                }
                return Ok(());
            }
            while j > i {
                let prev = self.get(b, inv(w[j - 1]));
                if prev == NONE {
                    break;
                }
                b = prev;
                j -= 1;
            }
            if j == i {
                if f != b {
                    self.coincidence(f, b);
                }
                return Ok(());
            }
            if j == i + 1 {
                self.set(f, w[i], b);
                self.set(b, inv(w[i]), f);
                if self.track_deductions {
                    self.deductions.push((f, w[i]));
                }
                return Ok(());
            }
            if !fill {
                return Ok(());
            }
            self.define(f, w[i])?;
        }
    }

    fn scan_subgroup(&mut self) -> std::result::Result<(), Stop> {
        let subgroup = std::mem::take(&mut self.subgroup);
        let mut result = Ok(());
        for w in &subgroup {
            let root = self.rep(0);
            if let Err(e) = self.scan(root, w, true) {
                result = Err(e);
                break;
            }
        }
        self.subgroup = subgroup;
        result
    }

    fn run_hlt(&mut self) -> std::result::Result<(), String> {
        let relators = std::mem::take(&mut self.relators);
        let result = self.hlt_loop(&relators);
        self.relators = relators;
        result
    }

    fn hlt_loop(&mut self, relators: &[Vec<u32>]) -> std::result::Result<(), String> {
        loop {
            match self.scan_subgroup() {
                Ok(()) => break,
                Err(Stop::Limit(r)) => return Err(r),
                Err(Stop::Full) => {
                    self.lookahead(relators)?;
                }
            }
        }
        let mut c = 0u32;
        while (c as usize) < self.rows() {
            if !self.is_live(c) {
                c += 1;
                continue;
            }
            match self.hlt_coset(c, relators) {
                Ok(()) => c += 1,
                Err(Stop::Limit(r)) => return Err(r),
                Err(Stop::Full) => {
                    let map = self.lookahead(relators)?;
                    // resume at the first live coset at or after c
                    c = map[..c as usize].iter().filter(|&&m| m != NONE).count() as u32;
                }
            }
        }
        self.compact();
        Ok(())
    }

    fn hlt_coset(&mut self, c: u32, relators: &[Vec<u32>]) -> std::result::Result<(), Stop> {
        for r in relators {
            if !self.is_live(c) {
                return Ok(());
            }
            self.scan(c, r, true)?;
        }
        for col in 0..self.ncols as u32 {
            if !self.is_live(c) {
                return Ok(());
            }
            if self.get(c, col) == NONE {
                self.define(c, col)?;
            }
        }
        Ok(())
    }

    /// Scans everything without defining, then compacts. Returns the old ->
    /// new coset map, or an error if no space was recovered.
    fn lookahead(&mut self, relators: &[Vec<u32>]) -> std::result::Result<Vec<u32>, String> {
        let before = self.rows();
        for c in 0..before as u32 {
            for r in relators {
                if !self.is_live(c) {
                    break;
                }
                if let Err(Stop::Limit(r)) = self.scan(c, r, false) {
                    return Err(r);
                }
            }
        }
        let map = self.compact();
        if self.rows() >= self.max_cosets {
            return Err(format!("coset limit of {} reached", self.max_cosets));
        }
        if Instant::now() > self.deadline {
            return Err(format!("time limit of {:?} exceeded", self.time_limit));
        }
        Ok(map)
    }

    /// Renumbers live cosets in definition order and drops dead rows.
    fn compact(&mut self) -> Vec<u32> {
        let n = self.rows();
        let mut map = vec![NONE; n];
        let mut next = 0u32;
        for c in 0..n {
            if self.is_live(c as u32) {
                map[c] = next;
                next += 1;
            }
        }
        let mut table = vec![NONE; next as usize * self.ncols];
        for c in 0..n {
            if map[c] == NONE {
                continue;
            }
            let new = map[c] as usize;
            for col in 0..self.ncols {
                let v = self.table[c * self.ncols + col];
                table[new * self.ncols + col] = if v == NONE { NONE } else { map[v as usize] };
            }
        }
        self.table = table;
        self.parent = (0..next).collect();
        self.live = next as usize;
        for d in self.deductions.iter_mut() {
            d.0 = map[d.0 as usize];
        }
        self.deductions.retain(|d| d.0 != NONE);
        map
    }

    fn run_felsch(&mut self) -> std::result::Result<(), String> {
        let max = self.max_cosets;
        let stop_to_string = move |s: Stop| match s {
            Stop::Full => format!("coset limit of {max} reached"),
            Stop::Limit(r) => r,
        };
        self.scan_subgroup().map_err(stop_to_string)?;
        self.process_deductions().map_err(stop_to_string)?;
        let mut c = 0u32;
        let mut col = 0u32;
        loop {
            // first undefined entry in row-major order
            while (c as usize) < self.rows() {
                if self.is_live(c) {
                    while col < self.ncols as u32 && self.get(c, col) != NONE {
                        col += 1;
                    }
                    if col < self.ncols as u32 {
                        break;
                    }
                }
                c += 1;
                col = 0;
            }
            if c as usize >= self.rows() {
                break;
            }
            self.define(c, col).map_err(stop_to_string)?;
            self.process_deductions().map_err(stop_to_string)?;
        }
        self.compact();
        Ok(())
    }

    fn process_deductions(&mut self) -> std::result::Result<(), Stop> {
        let conjugates = std::mem::take(&mut self.conjugates);
        let mut result = Ok(());
        'outer: while let Some((c, x)) = self.deductions.pop() {
            if !self.is_live(c) {
                continue;
            }
            for w in &conjugates[x as usize] {
                if !self.is_live(c) {
                    continue 'outer;
                }
                if let Err(e) = self.scan(c, w, false) {
                    result = Err(e);
                    break 'outer;
                }
            }
            let d = self.get(c, x);
            if d == NONE {
                continue;
            }
            let d = self.rep(d);
            for w in &conjugates[inv(x) as usize] {
                if !self.is_live(d) {
                    break;
                }
                if let Err(e) = self.scan(d, w, false) {
                    result = Err(e);
                    break 'outer;
                }
            }
        }
        self.conjugates = conjugates;
        result
    }

    fn into_table(self, status: TableStatus, trivial_subgroup: bool) -> CosetTable {
        let count = if status == TableStatus::Closed {
            self.rows()
        } else {
            self.live
        };
        CosetTable {
            ngens: self.ngens,
            rows: self.table,
            count,
            status,
            trivial_subgroup,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fpres::presentation::multiplication_table_presentation;

    fn pres(s: &str) -> Presentation {
        Presentation::parse(s).unwrap()
    }

    fn both() -> [EnumerationLimits; 2] {
        [
            EnumerationLimits::default(),
            EnumerationLimits {
                strategy: Strategy::Felsch,
                ..Default::default()
            },
        ]
    }

    #[test]
    fn cyclic_of_order_two() {
        let p = pres("gens: a\nrels: a^2");
        for lim in both() {
            let t = tc_enumerate(&p, &[], &lim).unwrap();
            assert_eq!(t.coset_count(), 2);
            assert!(t.verify(&p, &[]));
            let a = p.parse_word("a").unwrap();
            let t = tc_enumerate(&p, &[a.clone()], &lim).unwrap();
            assert_eq!(t.coset_count(), 1);
            assert!(t.verify(&p, &[a]));
            assert_eq!(t.to_perm_group(100).unwrap().order(), 1);
        }
    }

    #[test]
    fn s3_has_six_cosets() {
        let p = pres("gens: a b\nrels: a^2, b^2, (a b)^3");
        for lim in both() {
            let t = tc_enumerate(&p, &[], &lim).unwrap();
            assert_eq!(t.coset_count(), 6);
            assert!(t.verify(&p, &[]));
            let g = t.to_perm_group(100).unwrap();
            assert_eq!(g.order(), 6);
            let mut census: Vec<u64> = g.elements().map(|e| g.element_order(e)).collect();
            census.sort();
            assert_eq!(census, vec![1, 2, 2, 2, 3, 3]);
        }
    }

    #[test]
    fn c4_is_a_four_cycle() {
        let p = pres("gens: a\nrels: a^4");
        let g = tc_enumerate(&p, &[], &Default::default())
            .unwrap()
            .to_perm_group(100)
            .unwrap();
        assert_eq!(g.order(), 4);
        assert_eq!(g.generators()[0].cycles().len(), 1);
    }

    #[test]
    fn index_of_a_subgroup() {
        // <b> has index 3 in S_3
        let p = pres("gens: a b\nrels: a^3, b^2, (a b)^2");
        let b = p.parse_word("b").unwrap();
        for lim in both() {
            let t = tc_enumerate(&p, &[b.clone()], &lim).unwrap();
            assert_eq!(t.coset_count(), 3);
            assert!(t.verify(&p, &[b.clone()]));
            assert_eq!(t.to_perm_group(100).unwrap().order(), 6);
        }
    }

    #[test]
    fn coincidences_collapse_redundant_presentations() {
        // Trivial group in disguise.
        let p = pres("gens: a b\nrels: a b a^-1 b^-2, b a b^-1 a^-2");
        for lim in both() {
            let t = tc_enumerate(&p, &[], &lim).unwrap();
            assert_eq!(t.coset_count(), 1);
        }
    }

    #[test]
    fn limits_are_reported_with_table() {
        let p = pres("gens: a b\nrels: a^2, b^3");
        let lim = EnumerationLimits {
            max_cosets: 200,
            ..Default::default()
        };
        let err = tc_enumerate(&p, &[], &lim).unwrap_err();
        assert_eq!(err.table.status(), TableStatus::InProgress);
        assert!(err.table.coset_count() > 0);
        assert!(matches!(Error::from(err), Error::EnumerationLimit { .. }));
    }

    #[test]
    fn multiplication_tables_enumerate_to_group_order() {
        let s3 = FiniteGroup::new(vec![
            Permutation::parse_cycles("(0 1)", 3).unwrap(),
            Permutation::parse_cycles("(0 1 2)", 3).unwrap(),
        ])
        .unwrap();
        let mt = multiplication_table_presentation(&s3).unwrap();
        assert_eq!(mt.presentation().num_generators(), 6);
        assert_eq!(mt.presentation().relators().len(), 36);
        for lim in both() {
            let t = tc_enumerate(mt.presentation(), &[], &lim).unwrap();
            assert_eq!(t.coset_count(), 6);
        }
    }

    #[test]
    fn deterministic() {
        let p = pres("gens: a b\nrels: a^4, b^2, (a b)^2");
        let t1 = tc_enumerate(&p, &[], &Default::default()).unwrap();
        let t2 = tc_enumerate(&p, &[], &Default::default()).unwrap();
        assert_eq!(t1.rows, t2.rows);
    }
}
