//! Finite permutation groups with fully enumerated element sets.
//!
//! A [`FiniteGroup`] enumerates its elements once, breadth-first from the
//! identity with generators in declared order, and then does all arithmetic
//! on element indices ([`Elem`]). Products are computed by tracing the
//! Schreier word of the right factor through a right-multiplication table,
//! so no element ever has to be stored as a full permutation. This keeps the
//! regular representations produced by coset enumeration (degree = order)
//! affordable.

use std::collections::HashMap;
use std::fmt;
use std::sync::OnceLock;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::Permutation;

/// Default cap on the number of elements any enumeration may produce.
pub const DEFAULT_CAPACITY: usize = 100_000;

const NONE: u32 = u32::MAX;

/// Groups at most this large get a full Cayley table on first use.
const CAYLEY_TABLE_LIMIT: usize = 1024;

/// An element of a [`FiniteGroup`], by index in its deterministic element order.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Elem(pub u32);

impl Elem {
    pub const IDENTITY: Elem = Elem(0);

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn is_identity(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Debug for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}", self.0)
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}", self.0)
    }
}

#[derive(Clone)]
enum KeyIndex {
    /// Base is a single point and the group acts regularly: point -> element.
    Point(Vec<u32>),
    Map(HashMap<Box<[u32]>, u32>),
}

#[derive(Clone)]
struct Table {
    ngens: usize,
    /// `right[e * 2k + s]` is `e * gen_s` for `s < k`, `e * gen_{s-k}^-1` otherwise.
    right: Vec<u32>,
    parent: Vec<u32>,
    parent_gen: Vec<u16>,
    word_start: Vec<u32>,
    words: Vec<u16>,
    base_len: usize,
    keys: Vec<u32>,
    index: KeyIndex,
}

impl Table {
    #[inline]
    fn len(&self) -> usize {
        self.parent.len()
    }

    #[inline]
    fn step(&self, e: u32, col: usize) -> u32 {
        self.right[e as usize * 2 * self.ngens + col]
    }

    #[inline]
    fn word(&self, e: u32) -> &[u16] {
        let e = e as usize;
        &self.words[self.word_start[e] as usize..self.word_start[e + 1] as usize]
    }
}

/// A finite group given by permutation generators.
#[derive(Clone)]
pub struct FiniteGroup {
    degree: usize,
    generators: Vec<Permutation>,
    names: Vec<String>,
    base: Vec<u32>,
    table: Table,
    inverses: OnceLock<Vec<u32>>,
    cayley: OnceLock<Option<Vec<u32>>>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("degree", &self.degree)
            .field("order", &self.order())
            .field("generators", &self.generators)
            .finish()
    }
}

impl FiniteGroup {
    /// Enumerates the group generated by `generators` under [`DEFAULT_CAPACITY`].
    pub fn new(generators: Vec<Permutation>) -> Result<Self> {
        Self::with_capacity(generators, DEFAULT_CAPACITY)
    }

    pub fn with_capacity(generators: Vec<Permutation>, capacity: usize) -> Result<Self> {
        let degree = check_generators(&generators)?;
        let base = (0..degree as u32).collect();
        Self::build(generators, base, capacity)
    }

    /// Builds a group known to act regularly (for instance on the cosets of the
    /// trivial subgroup, or of a normal subgroup). Elements are then keyed by
    /// the image of point 0 alone.
    pub(crate) fn from_regular_action(
        generators: Vec<Permutation>,
        capacity: usize,
    ) -> Result<Self> {
        check_generators(&generators)?;
        Self::build(generators, vec![0], capacity)
    }

    fn build(generators: Vec<Permutation>, base: Vec<u32>, capacity: usize) -> Result<Self> {
        let degree = generators[0].degree();
        let table = enumerate(&generators, &base, capacity)?;
        let names = default_names(generators.len());
        Ok(FiniteGroup {
            degree,
            generators,
            names,
            base,
            table,
            inverses: OnceLock::new(),
            cayley: OnceLock::new(),
        })
    }

    /// Replaces the generator names used when printing words.
    pub fn with_names(mut self, names: Vec<String>) -> Result<Self> {
        if names.len() != self.generators.len() {
            return Err(Error::Domain(format!(
                "{} names given for {} generators",
                names.len(),
                self.generators.len()
            )));
        }
        self.names = names;
        Ok(self)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn generator_names(&self) -> &[String] {
        &self.names
    }

    pub fn num_generators(&self) -> usize {
        self.generators.len()
    }

    /// The element equal to generator `i`.
    pub fn generator(&self, i: usize) -> Elem {
        Elem(self.table.step(0, i))
    }

    pub fn generator_elems(&self) -> Vec<Elem> {
        (0..self.num_generators())
            .map(|i| self.generator(i))
            .collect()
    }

    pub fn identity(&self) -> Elem {
        Elem::IDENTITY
    }

    pub fn elements(&self) -> impl ExactSizeIterator<Item = Elem> + Clone {
        (0..self.order() as u32).map(Elem)
    }

    /// Right multiplication by generator `i` (or its inverse).
    #[inline]
    pub fn mul_gen(&self, e: Elem, i: usize, inverse: bool) -> Elem {
        let col = if inverse { self.table.ngens + i } else { i };
        Elem(self.table.step(e.0, col))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if let Some(t) = self.cayley_table() {
            return Elem(t[a.index() * self.order() + b.index()]);
        }
        self.trace(a, b)
    }

    #[inline]
    fn trace(&self, a: Elem, b: Elem) -> Elem {
        let mut cur = a.0;
        for &s in self.table.word(b.0) {
            cur = self.table.step(cur, s as usize);
        }
        Elem(cur)
    }

    fn cayley_table(&self) -> Option<&Vec<u32>> {
        self.cayley
            .get_or_init(|| {
                let n = self.order();
                (n <= CAYLEY_TABLE_LIMIT).then(|| {
                    let mut t = Vec::with_capacity(n * n);
                    for a in 0..n as u32 {
                        for b in 0..n as u32 {
                            t.push(self.trace(Elem(a), Elem(b)).0);
                        }
                    }
                    t
                })
            })
            .as_ref()
    }

    #[inline]
    pub fn inv(&self, a: Elem) -> Elem {
        let inv = self.inverses.get_or_init(|| {
            let k = self.table.ngens;
            (0..self.order() as u32)
                .map(|e| {
                    let mut cur = 0u32;
                    for &s in self.table.word(e).iter().rev() {
                        cur = self.table.step(cur, s as usize + k);
                    }
                    cur
                })
                .collect()
        });
        Elem(inv[a.index()])
    }

    /// `a^b = b⁻¹ a b`.
    #[inline]
    pub fn conj(&self, a: Elem, b: Elem) -> Elem {
        self.mul(self.mul(self.inv(b), a), b)
    }

    /// `[a, b] = a⁻¹ b⁻¹ a b`.
    #[inline]
    pub fn comm(&self, a: Elem, b: Elem) -> Elem {
        let ab = self.mul(a, b);
        let ba = self.mul(b, a);
        self.mul(self.inv(ba), ab)
    }

    /// Left-normed `[x, y, …, y]` with `n` copies of `y`.
    pub fn iterated_commutator(&self, x: Elem, y: Elem, n: usize) -> Result<Elem> {
        if n == 0 {
            return Err(Error::Domain("iterated commutator needs n >= 1".into()));
        }
        let mut c = x;
        for _ in 0..n {
            c = self.comm(c, y);
        }
        Ok(c)
    }

    pub fn pow(&self, a: Elem, k: i64) -> Elem {
        let base = if k < 0 { self.inv(a) } else { a };
        let mut k = k.unsigned_abs();
        let mut acc = Elem::IDENTITY;
        let mut sq = base;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, sq);
            }
            sq = self.mul(sq, sq);
            k >>= 1;
        }
        acc
    }

    pub fn element_order(&self, a: Elem) -> u64 {
        let mut n = 1;
        let mut cur = a;
        while !cur.is_identity() {
            cur = self.mul(cur, a);
            n += 1;
        }
        n
    }

    /// The Schreier word of `e` as generator indices (all positive letters).
    pub fn word(&self, e: Elem) -> &[u16] {
        self.table.word(e.0)
    }

    pub fn format_word(&self, e: Elem) -> String {
        let w = self.word(e);
        if w.is_empty() {
            return "1".into();
        }
        let mut out = String::new();
        let mut i = 0;
        while i < w.len() {
            let mut j = i;
            while j < w.len() && w[j] == w[i] {
                j += 1;
            }
            if !out.is_empty() {
                out.push(' ');
            }
            out.push_str(&self.names[w[i] as usize]);
            if j - i > 1 {
                out.push_str(&format!("^{}", j - i));
            }
            i = j;
        }
        out
    }

    /// The element as an explicit permutation.
    pub fn permutation(&self, e: Elem) -> Permutation {
        let mut p = Permutation::identity(self.degree);
        for &s in self.word(e) {
            p = &p * &self.generators[s as usize];
        }
        p
    }

    /// Looks up a permutation among the group's elements.
    pub fn find(&self, p: &Permutation) -> Option<Elem> {
        if p.degree() != self.degree {
            return None;
        }
        let key: Vec<u32> = self.base.iter().map(|&b| p.apply(b)).collect();
        let e = lookup(&self.table.index, &key)?;
        (self.permutation(e) == *p).then_some(e)
    }

    /// Image of every element under the homomorphism sending generator `i` to
    /// `images[i]`, computed along the breadth-first spanning tree. The caller
    /// is responsible for the images actually defining a homomorphism.
    pub fn map_generators<T: Clone>(
        &self,
        identity: T,
        images: &[T],
        mut mul: impl FnMut(&T, &T) -> T,
    ) -> Vec<T> {
        let mut out: Vec<T> = Vec::with_capacity(self.order());
        out.push(identity);
        for e in 1..self.order() {
            let p = self.table.parent[e] as usize;
            let g = self.table.parent_gen[e] as usize;
            let v = mul(&out[p], &images[g]);
            out.push(v);
        }
        out
    }

    pub fn whole(&self) -> Subgroup {
        let mut members = FixedBitSet::with_capacity(self.order());
        members.insert_range(..);
        Subgroup {
            gens: self.generator_elems(),
            elems: self.elements().collect(),
            members,
        }
    }

    pub fn trivial(&self) -> Subgroup {
        let mut members = FixedBitSet::with_capacity(self.order());
        members.insert(0);
        Subgroup {
            gens: Vec::new(),
            elems: vec![Elem::IDENTITY],
            members,
        }
    }

    /// Smallest subgroup containing `gens`.
    pub fn closure(&self, gens: &[Elem]) -> Subgroup {
        let mut sub = self.trivial();
        self.extend(&mut sub, gens);
        sub
    }

    /// Adds `extra` to the generators of `sub` and recloses.
    pub fn extend(&self, sub: &mut Subgroup, extra: &[Elem]) {
        let old_len = sub.elems.len();
        let first_new = sub.gens.len();
        for &g in extra {
            if !sub.contains(g) && !sub.gens[first_new..].contains(&g) {
                sub.gens.push(g);
            }
        }
        if sub.gens.len() == first_new {
            return;
        }
        for i in 0..old_len {
            for gi in first_new..sub.gens.len() {
                let f = self.mul(sub.elems[i], sub.gens[gi]);
                sub.push(f);
            }
        }
        let mut i = old_len;
        while i < sub.elems.len() {
            for gi in 0..sub.gens.len() {
                let f = self.mul(sub.elems[i], sub.gens[gi]);
                sub.push(f);
            }
            i += 1;
        }
    }

    /// Smallest subgroup containing `gens` and normalized by `within`.
    pub fn normal_closure(&self, gens: &[Elem], within: &Subgroup) -> Subgroup {
        let mut sub = self.trivial();
        for &g in gens {
            if !sub.contains(g) {
                self.extend(&mut sub, &[g]);
            }
        }
        let mut i = 0;
        while i < sub.gens.len() {
            let x = sub.gens[i];
            for &w in &within.gens {
                let c = self.conj(x, w);
                if !sub.contains(c) {
                    self.extend(&mut sub, &[c]);
                }
            }
            i += 1;
        }
        sub
    }

    /// `[A, B]`, the normal closure in `⟨A, B⟩` of the generator commutators.
    pub fn commutator_subgroup(&self, a: &Subgroup, b: &Subgroup) -> Subgroup {
        let mut comms = Vec::new();
        for &x in &a.gens {
            for &y in &b.gens {
                comms.push(self.comm(x, y));
            }
        }
        let mut joined = a.clone();
        self.extend(&mut joined, &b.gens);
        self.normal_closure(&comms, &joined)
    }

    pub fn derived_subgroup(&self, h: &Subgroup) -> Subgroup {
        self.commutator_subgroup(h, h)
    }

    pub fn center(&self, h: &Subgroup) -> Subgroup {
        let central: Vec<Elem> = h
            .elems
            .iter()
            .copied()
            .filter(|&z| h.gens.iter().all(|&g| self.mul(z, g) == self.mul(g, z)))
            .collect();
        self.closure(&central)
    }

    pub fn centralizes(&self, a: &Subgroup, b: &Subgroup) -> bool {
        a.gens
            .iter()
            .all(|&x| b.gens.iter().all(|&y| self.mul(x, y) == self.mul(y, x)))
    }

    pub fn lower_central_series(&self, h: &Subgroup) -> SeriesReport {
        let mut terms = vec![h.clone()];
        loop {
            let next = self.commutator_subgroup(terms.last().unwrap(), h);
            if &next == terms.last().unwrap() {
                break;
            }
            terms.push(next);
        }
        SeriesReport {
            kind: SeriesKind::LowerCentral,
            terms,
            stabilized: true,
        }
    }

    pub fn derived_series(&self, h: &Subgroup) -> SeriesReport {
        let mut terms = vec![h.clone()];
        loop {
            let last = terms.last().unwrap();
            let next = self.derived_subgroup(last);
            if &next == last {
                break;
            }
            terms.push(next);
        }
        SeriesReport {
            kind: SeriesKind::Derived,
            terms,
            stabilized: true,
        }
    }

    /// Subgroup generated by the `k`-th powers of the elements of `h`.
    pub fn power_subgroup(&self, h: &Subgroup, k: u64) -> Result<Subgroup> {
        if k == 0 {
            return Err(Error::Domain("power subgroup needs k >= 1".into()));
        }
        let mut sub = self.trivial();
        for &x in &h.elems {
            let y = self.pow(x, k as i64);
            if !sub.contains(y) {
                self.extend(&mut sub, &[y]);
            }
        }
        Ok(sub)
    }

    pub fn is_normal(&self, n: &Subgroup, h: &Subgroup) -> bool {
        n.gens
            .iter()
            .all(|&x| h.gens.iter().all(|&w| n.contains(self.conj(x, w))))
    }

    pub fn is_abelian(&self, h: &Subgroup) -> bool {
        self.centralizes(h, h)
    }

    /// The action of `h` on the right cosets of its normal subgroup `n`.
    pub fn quotient_action(&self, h: &Subgroup, n: &Subgroup) -> Result<Quotient> {
        if !n.is_subset_of(h) {
            return Err(Error::Domain("quotient by a non-subgroup".into()));
        }
        if !self.is_normal(n, h) {
            return Err(Error::Domain("quotient by a non-normal subgroup".into()));
        }
        let mut coset_of = vec![NONE; self.order()];
        let mut reps = Vec::new();
        for &x in &h.elems {
            if coset_of[x.index()] != NONE {
                continue;
            }
            let label = reps.len() as u32;
            reps.push(x);
            for &m in &n.elems {
                coset_of[self.mul(m, x).index()] = label;
            }
        }
        let index = reps.len();
        let gens = if h.gens.is_empty() {
            vec![Permutation::identity(index)]
        } else {
            h.gens
                .iter()
                .map(|&g| {
                    let images = reps
                        .iter()
                        .map(|&r| coset_of[self.mul(r, g).index()])
                        .collect();
                    Permutation::from_images(images)
                })
                .collect::<Result<Vec<_>>>()?
        };
        let group = FiniteGroup::from_regular_action(gens, usize::MAX)?;
        Ok(Quotient { group, coset_of })
    }
}

/// The permutation group `h / n` together with the coset labelling of `h`.
pub struct Quotient {
    pub group: FiniteGroup,
    coset_of: Vec<u32>,
}

impl Quotient {
    /// Index of the coset containing `e`, or `None` if `e` lies outside the
    /// subgroup that was factored.
    pub fn coset(&self, e: Elem) -> Option<u32> {
        let c = self.coset_of[e.index()];
        (c != NONE).then_some(c)
    }
}

/// A subgroup of some [`FiniteGroup`], stored by element indices of the parent.
///
/// Equality is equality of element sets.
#[derive(Clone)]
pub struct Subgroup {
    gens: Vec<Elem>,
    elems: Vec<Elem>,
    members: FixedBitSet,
}

impl Subgroup {
    #[inline]
    fn push(&mut self, e: Elem) {
        if !self.members.put(e.index()) {
            self.elems.push(e);
        }
    }

    pub fn order(&self) -> usize {
        self.elems.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.elems.len() == 1
    }

    #[inline]
    pub fn contains(&self, e: Elem) -> bool {
        self.members.contains(e.index())
    }

    pub fn generators(&self) -> &[Elem] {
        &self.gens
    }

    /// Elements in closure order (breadth-first from the identity).
    pub fn elements(&self) -> &[Elem] {
        &self.elems
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.members.is_subset(&other.members)
    }

    pub fn intersection_order(&self, other: &Subgroup) -> usize {
        self.members.intersection_count(&other.members)
    }
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.members == other.members
    }
}

impl Eq for Subgroup {}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Subgroup")
            .field("order", &self.order())
            .field("gens", &self.gens)
            .finish()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SeriesKind {
    LowerCentral,
    Derived,
    Dimension,
}

/// A descending series, listed until its first repetition.
#[derive(Clone, Debug)]
pub struct SeriesReport {
    pub kind: SeriesKind,
    pub terms: Vec<Subgroup>,
    pub stabilized: bool,
}

impl SeriesReport {
    pub fn orders(&self) -> Vec<usize> {
        self.terms.iter().map(Subgroup::order).collect()
    }

    pub fn reaches_identity(&self) -> bool {
        self.terms.last().is_some_and(Subgroup::is_trivial)
    }

    /// Nilpotency class for a lower central series ending in 1.
    pub fn class(&self) -> Option<usize> {
        self.reaches_identity().then(|| self.terms.len() - 1)
    }
}

fn check_generators(generators: &[Permutation]) -> Result<usize> {
    let first = generators
        .first()
        .ok_or_else(|| Error::Domain("a group needs at least one generator".into()))?;
    let degree = first.degree();
    for g in generators {
        if g.degree() != degree {
            return Err(Error::AmbientMismatch {
                left: degree,
                right: g.degree(),
            });
        }
    }
    if generators.len() > u16::MAX as usize {
        return Err(Error::Domain("too many generators".into()));
    }
    Ok(degree)
}

fn default_names(k: usize) -> Vec<String> {
    (0..k)
        .map(|i| {
            if k <= 26 {
                ((b'a' + i as u8) as char).to_string()
            } else {
                format!("g{i}")
            }
        })
        .collect()
}

fn lookup(index: &KeyIndex, key: &[u32]) -> Option<Elem> {
    match index {
        KeyIndex::Point(v) => v
            .get(key[0] as usize)
            .copied()
            .filter(|&e| e != NONE)
            .map(Elem),
        KeyIndex::Map(m) => m.get(key).copied().map(Elem),
    }
}

fn enumerate(generators: &[Permutation], base: &[u32], capacity: usize) -> Result<Table> {
    let k = generators.len();
    let degree = generators[0].degree();
    let base_len = base.len();
    let mut index = if base_len == 1 {
        KeyIndex::Point(vec![NONE; degree])
    } else {
        KeyIndex::Map(HashMap::new())
    };
    let mut keys: Vec<u32> = base.to_vec();
    let mut parent = vec![NONE];
    let mut parent_gen = vec![0u16];
    let mut word_start = vec![0u32, 0u32];
    let mut words: Vec<u16> = Vec::new();
    let mut right: Vec<u32> = Vec::new();
    insert_key(&mut index, base, 0);

    let mut next_key = vec![0u32; base_len];
    let mut e = 0usize;
    while e < parent.len() {
        right.resize((e + 1) * 2 * k, NONE);
        for (s, g) in generators.iter().enumerate() {
            for i in 0..base_len {
                next_key[i] = g.apply(keys[e * base_len + i]);
            }
            let f = match lookup(&index, &next_key) {
                Some(f) => f.0,
                None => {
                    let f = parent.len();
                    if f >= capacity {
                        return Err(Error::Capacity { cap: capacity });
                    }
                    insert_key(&mut index, &next_key, f as u32);
                    keys.extend_from_slice(&next_key);
                    parent.push(e as u32);
                    parent_gen.push(s as u16);
                    let (a, b) = (word_start[e] as usize, word_start[e + 1] as usize);
                    words.extend_from_within(a..b);
                    words.push(s as u16);
                    word_start.push(words.len() as u32);
                    f as u32
                }
            };
            right[e * 2 * k + s] = f;
        }
        e += 1;
    }
    let n = parent.len();
    for e in 0..n {
        for s in 0..k {
            let f = right[e * 2 * k + s] as usize;
            right[f * 2 * k + k + s] = e as u32;
        }
    }
    Ok(Table {
        ngens: k,
        right,
        parent,
        parent_gen,
        word_start,
        words,
        base_len,
        keys,
        index,
    })
}

fn insert_key(index: &mut KeyIndex, key: &[u32], e: u32) {
    match index {
        KeyIndex::Point(v) => v[key[0] as usize] = e,
        KeyIndex::Map(m) => {
            m.insert(key.into(), e);
        }
    }
}

impl FiniteGroup {
    /// Images of the base points under `e`; these determine `e`.
    pub fn base_images(&self, e: Elem) -> &[u32] {
        let b = self.table.base_len;
        &self.table.keys[e.index() * b..(e.index() + 1) * b]
    }
}
