//! Dimension subgroups of a finite p-group and the graded Lie ring
//! `L(G) = ⊕ D_i/D_{i+1}` over `F_p`.

use serde::{Deserialize, Serialize};

use crate::catalog::prime_of_power;
use crate::check::{Verification, Witness};
use crate::error::{Error, Result};
use crate::group::{Elem, FiniteGroup, SeriesReport, Subgroup};

/// `D_1 = G ⊇ D_2 ⊇ … ⊇ D_{c+1} = 1`; the trivial last term is included.
#[derive(Clone, Debug)]
pub struct PGroupSeries {
    pub p: u64,
    pub terms: Vec<Subgroup>,
    pub gamma: SeriesReport,
}

impl PGroupSeries {
    /// `D_i` for any `i >= 1`, trivial past the end.
    pub fn term(&self, i: usize) -> &Subgroup {
        assert!(i >= 1, "dimension subgroups are indexed from 1");
        self.terms
            .get(i - 1)
            .unwrap_or_else(|| self.terms.last().unwrap())
    }

    /// Index of the last nontrivial term (0 for the trivial group).
    pub fn length(&self) -> usize {
        self.terms.len() - 1
    }

    pub fn orders(&self) -> Vec<usize> {
        self.terms.iter().map(Subgroup::order).collect()
    }
}

fn check_p_group(g: &FiniteGroup, p: u64) -> Result<()> {
    if prime_of_power(p) != Some(p) {
        return Err(Error::Domain(format!("{p} is not prime")));
    }
    if g.order() > 1 && prime_of_power(g.order() as u64) != Some(p) {
        return Err(Error::Domain(format!(
            "group of order {} is not a {p}-group",
            g.order()
        )));
    }
    Ok(())
}

fn join(g: &FiniteGroup, parts: &[&Subgroup]) -> Subgroup {
    let gens: Vec<Elem> = parts
        .iter()
        .flat_map(|s| s.generators().iter().copied())
        .collect();
    g.closure(&gens)
}

/// `D_i = ∏_{j·p^k >= i} γ_j(G)^{p^k}`, evaluated term by term.
pub fn dimension_subgroups(g: &FiniteGroup, p: u64) -> Result<PGroupSeries> {
    check_p_group(g, p)?;
    let whole = g.whole();
    let gamma = g.lower_central_series(&whole);
    // powers[j-1][k] = γ_j^{p^k}, listed until trivial
    let mut powers: Vec<Vec<(usize, Subgroup)>> = Vec::new();
    for (j0, gj) in gamma.terms.iter().enumerate() {
        let j = j0 + 1;
        let mut row = Vec::new();
        let mut cur = gj.clone();
        let mut pk = 1usize;
        while !cur.is_trivial() {
            row.push((j * pk, cur.clone()));
            cur = g.power_subgroup(&cur, p)?;
            pk *= p as usize;
        }
        powers.push(row);
    }
    let mut terms = Vec::new();
    for i in 1.. {
        let parts: Vec<&Subgroup> = powers
            .iter()
            .flatten()
            .filter(|(weight, _)| *weight >= i)
            .map(|(_, s)| s)
            .collect();
        let d = join(g, &parts);
        let done = d.is_trivial();
        terms.push(d);
        if done {
            break;
        }
    }
    Ok(PGroupSeries { p, terms, gamma })
}

/// `D_1 = G`, `D_i = [D_{i-1}, G]·(D_{⌈i/p⌉})^p`.
pub fn jennings_recursion(g: &FiniteGroup, p: u64) -> Result<PGroupSeries> {
    check_p_group(g, p)?;
    let whole = g.whole();
    let gamma = g.lower_central_series(&whole);
    let mut terms = vec![whole.clone()];
    while !terms.last().unwrap().is_trivial() {
        let i = terms.len() + 1;
        let comm = g.commutator_subgroup(terms.last().unwrap(), &whole);
        let src = &terms[i.div_ceil(p as usize) - 1];
        let pow = g.power_subgroup(src, p)?;
        terms.push(join(g, &[&comm, &pow]));
    }
    Ok(PGroupSeries { p, terms, gamma })
}

/// `[D_i, D_j] ⊆ D_{i+j}`, `(D_i)^p ⊆ D_{ip}` and `D_{i+1}` normal in `G`.
pub fn verify_series(g: &FiniteGroup, s: &PGroupSeries) -> Result<Verification> {
    let mut v = Verification::new(
        "dimension-series",
        "[D_i, D_j] ⊆ D_{i+j}, (D_i)^p ⊆ D_{ip}, each D_i normal in G",
    );
    let c = s.length();
    let whole = g.whole();
    for i in 1..=c {
        v.require(
            g.is_normal(s.term(i), &whole),
            format!("D_{i} is not normal"),
        );
        let pow = g.power_subgroup(s.term(i), s.p)?;
        v.require(
            pow.is_subset_of(s.term(i * s.p as usize)),
            format!("(D_{i})^p is not inside D_{}", i * s.p as usize),
        );
        for j in 1..=c {
            // elementwise, not only on generators
            let target = s.term(i + j);
            for &x in s.term(i).elements() {
                for &y in s.term(j).elements() {
                    let ok = target.contains(g.comm(x, y));
                    v.record(ok, || Witness::new(g, &[x, y]));
                }
            }
        }
    }
    Ok(v)
}

/// `L(G)`: per degree a transversal basis of `D_i/D_{i+1}` and brackets from
/// group commutators.
#[derive(Clone, Debug)]
pub struct GradedLieRing<'g> {
    group: &'g FiniteGroup,
    p: u64,
    /// `basis[i-1]`: lifts in `D_i` whose images form a basis of degree `i`.
    basis: Vec<Vec<Elem>>,
    offsets: Vec<usize>,
    dim: usize,
    /// Per element: deepest `i` with the element in `D_i` (`c+1` for the
    /// identity) and its coordinate index in base `p` within that degree.
    depth: Vec<u16>,
    coord: Vec<u32>,
    /// `brackets[s * dim + t]` is `[e_s, e_t]` in full coordinates.
    brackets: Vec<Vec<u64>>,
}

/// A homogeneous or mixed element of `L(G)` in full coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradedElement {
    /// The degree when homogeneous and nonzero.
    pub degree: Option<usize>,
    pub coords: Vec<u64>,
    /// A group element mapping onto this one, when known.
    pub lift: Option<Elem>,
}

impl GradedElement {
    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }
}

/// Square matrix over `F_p`, acting on column vectors.
pub type Matrix = Vec<Vec<u64>>;

pub fn lie_ring<'g>(g: &'g FiniteGroup, s: &PGroupSeries) -> GradedLieRing<'g> {
    build_ring(g, s, false)
}

fn build_ring<'g>(g: &'g FiniteGroup, s: &PGroupSeries, shifted: bool) -> GradedLieRing<'g> {
    let p = s.p;
    let c = s.length();
    let mut basis = Vec::with_capacity(c);
    for i in 1..=c {
        let next = s.term(i + 1);
        let mut span = next.clone();
        let mut chosen = Vec::new();
        for &x in s.term(i).elements() {
            if !span.contains(x) {
                chosen.push(x);
                g.extend(&mut span, &[x]);
            }
        }
        if shifted {
            // Move every representative within its coset of D_{i+1}.
            if let Some(&d) = next.elements().last() {
                for x in chosen.iter_mut() {
                    *x = g.mul(*x, d);
                }
            }
        }
        basis.push(chosen);
    }
    let mut offsets = Vec::with_capacity(c + 1);
    let mut dim = 0;
    for b in &basis {
        offsets.push(dim);
        dim += b.len();
    }
    offsets.push(dim);

    let mut depth = vec![(c + 1) as u16; g.order()];
    let mut coord = vec![0u32; g.order()];
    for i in 1..=c {
        let b = &basis[i - 1];
        let next = s.term(i + 1);
        let cosets = (p as usize).pow(b.len() as u32);
        for v in 0..cosets {
            let mut rep = Elem::IDENTITY;
            let mut rest = v;
            for &bk in b {
                rep = g.mul(rep, g.pow(bk, (rest % p as usize) as i64));
                rest /= p as usize;
            }
            for &e in next.elements() {
                let x = g.mul(rep, e);
                if v != 0 {
                    depth[x.index()] = i as u16;
                    coord[x.index()] = v as u32;
                }
            }
        }
    }

    let mut ring = GradedLieRing {
        group: g,
        p,
        basis,
        offsets,
        dim,
        depth,
        coord,
        brackets: Vec::new(),
    };
    let mut brackets = Vec::with_capacity(dim * dim);
    for s_ in 0..dim {
        for t in 0..dim {
            let (i, x) = ring.basis_element(s_);
            let (j, y) = ring.basis_element(t);
            brackets.push(ring.coords_in_degree(g.comm(x, y), i + j));
        }
    }
    ring.brackets = brackets;
    ring
}

impl<'g> GradedLieRing<'g> {
    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn group(&self) -> &'g FiniteGroup {
        self.group
    }

    /// Dimension of each degree, starting at degree 1.
    pub fn dims(&self) -> Vec<usize> {
        self.basis.iter().map(Vec::len).collect()
    }

    pub fn total_dim(&self) -> usize {
        self.dim
    }

    pub fn top_degree(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self, degree: usize) -> &[Elem] {
        &self.basis[degree - 1]
    }

    /// `(degree, lift)` of the `s`-th vector of the full basis.
    pub fn basis_element(&self, s: usize) -> (usize, Elem) {
        let i = self.offsets.partition_point(|&o| o <= s);
        (i, self.basis[i - 1][s - self.offsets[i - 1]])
    }

    /// Deepest `i` with `x ∈ D_i`; one past the top degree for the identity.
    pub fn depth(&self, x: Elem) -> usize {
        self.depth[x.index()] as usize
    }

    /// Full coordinates of `x·D_{k+1}` for `x ∈ D_k`.
    fn coords_in_degree(&self, x: Elem, k: usize) -> Vec<u64> {
        let mut out = vec![0; self.dim];
        if x.is_identity() || k > self.top_degree() {
            return out;
        }
        let d = self.depth(x);
        debug_assert!(d >= k, "element lies above the requested degree");
        if d != k {
            return out;
        }
        let mut v = self.coord[x.index()] as u64;
        for slot in &mut out[self.offsets[k - 1]..self.offsets[k]] {
            *slot = v % self.p;
            v /= self.p;
        }
        out
    }

    /// `x̃ = x·D_{i+1}` where `i` is the depth of `x`.
    pub fn element(&self, x: Elem) -> GradedElement {
        let d = self.depth(x);
        if d > self.top_degree() {
            return GradedElement {
                degree: None,
                coords: vec![0; self.dim],
                lift: Some(x),
            };
        }
        GradedElement {
            degree: Some(d),
            coords: self.coords_in_degree(x, d),
            lift: Some(x),
        }
    }

    pub fn basis_vector(&self, s: usize) -> GradedElement {
        let mut coords = vec![0; self.dim];
        coords[s] = 1;
        let (i, x) = self.basis_element(s);
        GradedElement {
            degree: Some(i),
            coords,
            lift: Some(x),
        }
    }

    /// Structure constants: `[e_s, e_t]` in full coordinates.
    pub fn bracket_basis(&self, s: usize, t: usize) -> &[u64] {
        &self.brackets[s * self.dim + t]
    }

    pub fn bracket(&self, u: &[u64], v: &[u64]) -> Vec<u64> {
        let p = self.p;
        let mut out = vec![0; self.dim];
        for (s, &us) in u.iter().enumerate() {
            if us == 0 {
                continue;
            }
            for (t, &vt) in v.iter().enumerate() {
                if vt == 0 {
                    continue;
                }
                let w = us * vt % p;
                for (o, &b) in out.iter_mut().zip(self.bracket_basis(s, t)) {
                    *o = (*o + w * b) % p;
                }
            }
        }
        out
    }

    /// Matrix of `x ↦ [x, a]`; column `s` is the image of `e_s`.
    pub fn ad(&self, a: &[u64]) -> Matrix {
        let mut m = vec![vec![0; self.dim]; self.dim];
        for s in 0..self.dim {
            let mut e = vec![0; self.dim];
            e[s] = 1;
            let col = self.bracket(&e, a);
            for (r, &x) in col.iter().enumerate() {
                m[r][s] = x;
            }
        }
        m
    }

    /// Nonzero structure constants as `(s, t, [e_s, e_t])`.
    pub fn structure_constants(&self) -> Vec<(usize, usize, Vec<u64>)> {
        let mut out = Vec::new();
        for s in 0..self.dim {
            for t in 0..self.dim {
                let b = self.bracket_basis(s, t);
                if b.iter().any(|&x| x != 0) {
                    out.push((s, t, b.to_vec()));
                }
            }
        }
        out
    }

    /// Antisymmetry, alternation, Jacobi on basis triples, additivity of the
    /// bracket in each argument at the group level, and independence of the
    /// structure constants from the choice of coset representatives.
    pub fn verify_axioms(&self, s: &PGroupSeries) -> Verification {
        let g = self.group;
        let p = self.p;
        let mut v = Verification::new(
            "lie-axioms",
            "bilinear, antisymmetric, alternating, Jacobi; brackets independent of representatives",
        );
        let n = self.dim;
        let unit = |k: usize| {
            let mut e = vec![0; n];
            e[k] = 1;
            e
        };
        let add = |a: &[u64], b: &[u64]| {
            a.iter()
                .zip(b)
                .map(|(x, y)| (x + y) % p)
                .collect::<Vec<_>>()
        };
        for a in 0..n {
            v.record(self.bracket_basis(a, a).iter().all(|&x| x == 0), || {
                Witness::new(g, &[self.basis_element(a).1])
            });
            for b in 0..n {
                let sum = add(self.bracket_basis(a, b), self.bracket_basis(b, a));
                v.record(sum.iter().all(|&x| x == 0), || {
                    Witness::new(g, &[self.basis_element(a).1, self.basis_element(b).1])
                });
                for c in 0..n {
                    let (ea, eb, ec) = (unit(a), unit(b), unit(c));
                    let j1 = self.bracket(&self.bracket(&ea, &eb), &ec);
                    let j2 = self.bracket(&self.bracket(&eb, &ec), &ea);
                    let j3 = self.bracket(&self.bracket(&ec, &ea), &eb);
                    let total = add(&add(&j1, &j2), &j3);
                    v.record(total.iter().all(|&x| x == 0), || {
                        Witness::new(
                            g,
                            &[
                                self.basis_element(a).1,
                                self.basis_element(b).1,
                                self.basis_element(c).1,
                            ],
                        )
                    });
                }
            }
        }
        // Group-level additivity: [xy, z] ≡ [x, z] + [y, z] for x, y in the
        // same degree. Together with the F_p-linear extension this is
        // bilinearity of the induced bracket.
        for a in 0..n {
            let (i, x) = self.basis_element(a);
            for b in 0..n {
                let (i2, y) = self.basis_element(b);
                if i2 != i {
                    continue;
                }
                for c in 0..n {
                    let (j, z) = self.basis_element(c);
                    let lhs = self.coords_in_degree(g.comm(g.mul(x, y), z), i + j);
                    let rhs = add(
                        &self.coords_in_degree(g.comm(x, z), i + j),
                        &self.coords_in_degree(g.comm(y, z), i + j),
                    );
                    v.record(lhs == rhs, || Witness::new(g, &[x, y, z]));
                    let lhs = self.coords_in_degree(g.comm(z, g.mul(x, y)), i + j);
                    let rhs = add(
                        &self.coords_in_degree(g.comm(z, x), i + j),
                        &self.coords_in_degree(g.comm(z, y), i + j),
                    );
                    v.record(lhs == rhs, || Witness::new(g, &[z, x, y]));
                }
            }
        }
        let shifted = build_ring(g, s, true);
        v.require(
            shifted.brackets == self.brackets,
            "structure constants change with shifted representatives",
        );
        v
    }
}

/// Least `n` with `(ad a)^n = 0`, or `None` if no power up to `dim + 1`
/// vanishes.
pub fn ad_nilpotency_index(l: &GradedLieRing, a: &GradedElement) -> Option<usize> {
    let m = l.ad(&a.coords);
    let mut power = m.clone();
    for n in 1..=l.total_dim() + 1 {
        if is_zero(&power) {
            return Some(n);
        }
        power = mat_mul(&power, &m, l.p());
    }
    None
}

fn is_zero(m: &Matrix) -> bool {
    m.iter().all(|r| r.iter().all(|&x| x == 0))
}

fn mat_mul(a: &Matrix, b: &Matrix, p: u64) -> Matrix {
    let n = a.len();
    let mut out = vec![vec![0; n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k] == 0 {
                continue;
            }
            for j in 0..n {
                out[i][j] = (out[i][j] + a[i][k] * b[k][j]) % p;
            }
        }
    }
    out
}

fn mat_pow(m: &Matrix, mut k: u64, p: u64) -> Matrix {
    let n = m.len();
    let mut acc: Matrix = (0..n)
        .map(|i| (0..n).map(|j| (i == j) as u64).collect())
        .collect();
    let mut base = m.clone();
    while k > 0 {
        if k & 1 == 1 {
            acc = mat_mul(&acc, &base, p);
        }
        base = mat_mul(&base, &base, p);
        k >>= 1;
    }
    acc
}

/// Row-reduced basis of a subspace of `F_p^n`.
#[derive(Clone, Debug, Default)]
struct Span {
    rows: Vec<Vec<u64>>,
    pivots: Vec<usize>,
}

impl Span {
    fn reduce(&self, v: &[u64], p: u64) -> Vec<u64> {
        let mut v = v.to_vec();
        for (r, &c) in self.rows.iter().zip(&self.pivots) {
            let f = v[c];
            if f != 0 {
                for (x, &y) in v.iter_mut().zip(r) {
                    *x = (*x + (p - f) * y) % p;
                }
            }
        }
        v
    }

    /// Adds `v` if independent; returns whether it was added.
    fn insert(&mut self, v: &[u64], p: u64) -> bool {
        let mut v = self.reduce(v, p);
        let Some(c) = v.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = mod_inverse(v[c], p);
        for x in v.iter_mut() {
            *x = *x * inv % p;
        }
        for (r, _) in self.rows.iter_mut().zip(&self.pivots) {
            let f = r[c];
            if f != 0 {
                for (x, &y) in r.iter_mut().zip(&v) {
                    *x = (*x + (p - f) * y) % p;
                }
            }
        }
        self.rows.push(v);
        self.pivots.push(c);
        true
    }

    fn dim(&self) -> usize {
        self.rows.len()
    }
}

fn mod_inverse(a: u64, p: u64) -> u64 {
    // p is prime, so a^(p-2) inverts a
    let (mut acc, mut base, mut e) = (1u64, a % p, p - 2);
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    acc
}

/// The subalgebra generated by degree one, by degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LpSubalgebra {
    /// Dimension in each degree, starting at degree 1.
    pub dims: Vec<usize>,
    /// Basis vectors in full coordinates, grouped by degree.
    pub basis: Vec<Vec<Vec<u64>>>,
}

impl LpSubalgebra {
    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }
}

/// `L_p`: degree one, then left-normed brackets with degree one.
pub fn subalgebra_lp(l: &GradedLieRing) -> LpSubalgebra {
    let p = l.p();
    let mut layers: Vec<Span> = Vec::new();
    if l.top_degree() == 0 {
        return LpSubalgebra {
            dims: Vec::new(),
            basis: Vec::new(),
        };
    }
    let mut first = Span::default();
    for s in 0..l.basis(1).len() {
        first.insert(&l.basis_vector(s).coords, p);
    }
    layers.push(first);
    for _ in 2..=l.top_degree() {
        let mut next = Span::default();
        let prev = layers.last().unwrap();
        for u in &prev.rows {
            for e in &layers[0].rows {
                next.insert(&l.bracket(u, e), p);
            }
        }
        layers.push(next);
    }
    LpSubalgebra {
        dims: layers.iter().map(Span::dim).collect(),
        basis: layers.into_iter().map(|s| s.rows).collect(),
    }
}

/// Least `c` with every `(c+1)`-fold bracket zero; 0 for the zero ring.
pub fn lie_nilpotency_class(l: &GradedLieRing) -> Option<usize> {
    let p = l.p();
    let n = l.total_dim();
    if n == 0 {
        return Some(0);
    }
    let mut current = Span::default();
    for s in 0..n {
        current.insert(&l.basis_vector(s).coords, p);
    }
    for c in 1..=n + 1 {
        let mut next = Span::default();
        for u in &current.rows {
            for s in 0..n {
                next.insert(&l.bracket(u, &l.basis_vector(s).coords), p);
            }
        }
        if next.dim() == 0 {
            return Some(c);
        }
        if next.dim() == current.dim() {
            return None;
        }
        current = next;
    }
    None
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LazardEntry {
    pub basis_index: usize,
    pub degree: usize,
    pub lift: u32,
    /// Depth of `x^q`, or `None` when `x^q = 1`.
    pub power_depth: Option<usize>,
    /// `(ad x̃)^q = ad(x^q~)` with `x^q~` taken at the depth of `x^q`.
    pub holds: bool,
    /// `(ad x̃)^q` against the image of `x^q` in degree `i·q` (zero when
    /// `x^q` lies deeper).
    pub holds_in_degree_iq: bool,
    pub ad_index: Option<usize>,
    /// When `x^q = 1`: whether the ad-index is at most the `p`-part of `q`.
    pub power_bound: Option<bool>,
    /// Order of the lift and whether the ad-index is at most its `p`-part.
    pub lift_order: u64,
    pub order_bound_holds: bool,
}

/// Compares `(ad x̃)^q` with `ad(x^q~)` for every basis lift and checks the
/// ad-index bound coming from powers that vanish.
pub fn verify_lazard(l: &GradedLieRing, q: u64) -> Result<(Verification, Vec<LazardEntry>)> {
    if q == 0 {
        return Err(Error::Domain("q must be positive".into()));
    }
    let g = l.group();
    let p = l.p();
    let mut v = Verification::new(
        "lazard",
        format!("(ad x̃)^{q} = ad(x^{q}~) for every basis lift; ad-index bound when x^q = 1"),
    );
    let p_part = |mut k: u64| {
        let mut out = 1;
        while k % p == 0 && k > 0 {
            k /= p;
            out *= p;
        }
        out
    };
    let mut entries = Vec::new();
    for s in 0..l.total_dim() {
        let (i, x) = l.basis_element(s);
        let xt = l.basis_vector(s);
        let lhs = mat_pow(&l.ad(&xt.coords), q, p);
        let y = g.pow(x, q as i64);
        let yt = l.element(y);
        let rhs = l.ad(&yt.coords);
        let holds = lhs == rhs;
        let iq = i as u64 * q;
        let graded = if iq as usize <= l.top_degree() && l.depth(y) == iq as usize {
            l.ad(&l.coords_in_degree(y, iq as usize))
        } else {
            vec![vec![0; l.total_dim()]; l.total_dim()]
        };
        let ad_index = ad_nilpotency_index(l, &xt);
        let power_bound = y
            .is_identity()
            .then(|| ad_index.is_some_and(|k| k as u64 <= p_part(q)));
        let lift_order = g.element_order(x);
        let order_bound_holds = ad_index.is_some_and(|k| k as u64 <= p_part(lift_order));
        v.record(holds, || Witness::new(g, &[x]));
        if let Some(b) = power_bound {
            v.record(b, || Witness::new(g, &[x]));
        }
        v.record(order_bound_holds, || Witness::new(g, &[x]));
        entries.push(LazardEntry {
            basis_index: s,
            degree: i,
            lift: x.0,
            power_depth: (!y.is_identity()).then(|| l.depth(y)),
            holds,
            holds_in_degree_iq: lhs == graded,
            ad_index,
            power_bound,
            lift_order,
            order_bound_holds,
        });
    }
    Ok((v, entries))
}

/// Serializable summary of `L(G)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LieSummary {
    pub p: u64,
    pub series_orders: Vec<usize>,
    pub dims: Vec<usize>,
    pub total_dim: usize,
    /// Basis lifts per degree, as element indices.
    pub basis: Vec<Vec<u32>>,
    /// Nonzero `[e_s, e_t]` as `(s, t, coordinates)`.
    pub structure_constants: Vec<(usize, usize, Vec<u64>)>,
    pub lp_dims: Vec<usize>,
    pub nilpotency_class: Option<usize>,
}

pub fn summarize(l: &GradedLieRing, s: &PGroupSeries) -> LieSummary {
    LieSummary {
        p: l.p(),
        series_orders: s.orders(),
        dims: l.dims(),
        total_dim: l.total_dim(),
        basis: (1..=l.top_degree())
            .map(|i| l.basis(i).iter().map(|e| e.0).collect())
            .collect(),
        structure_constants: l.structure_constants(),
        lp_dims: subalgebra_lp(l).dims,
        nilpotency_class: lie_nilpotency_class(l),
    }
}
