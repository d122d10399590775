//! The group ν(G) on two copies of `G` and the tensor square `[G, G^φ]` inside it.
//!
//! ν(G) is presented by the relators of `G` on both copies plus, for triples
//! `(g1, g2, g3)`,
//!
//! ```text
//! [g1, g2^φ]^{g3} = [g1^{g3}, (g2^{g3})^φ] = [g1, g2^φ]^{g3^φ}
//! ```
//!
//! Triples run over all elements (multiplication-table presentation) or over
//! the generators of a compact presentation. The second route is only trusted
//! after [`NuGroup::triple_relations_hold`] confirms the full relations.

use std::collections::HashMap;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::abelian::abelian_invariants;
use crate::error::{Error, Result};
use crate::fpres::{
    cayley_presentation, multiplication_table_presentation, tc_enumerate, EnumerationLimits,
    Presentation, Word,
};
use crate::group::{Elem, FiniteGroup, Subgroup};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum NuMode {
    /// Relations imposed for every triple of elements.
    #[default]
    AllElements,
    /// Relations imposed for triples drawn from the generators of a compact
    /// presentation and their inverses.
    GeneratorTriples,
}

impl NuMode {
    pub fn as_str(self) -> &'static str {
        match self {
            NuMode::AllElements => "all",
            NuMode::GeneratorTriples => "gens",
        }
    }
}

/// Default element cap for an enumerated ν(G).
pub const NU_CAPACITY: usize = 2_000_000;

#[derive(Clone, Debug)]
pub struct NuOptions {
    pub mode: NuMode,
    pub limits: EnumerationLimits,
    /// Largest `|G|` accepted without an explicit override.
    pub max_group_order: usize,
    /// Element cap for the enumerated ν(G).
    pub capacity: usize,
    /// Compact presentation on `G`'s generators for the generator-triples
    /// route. When absent one is read off the Cayley graph of `G`.
    pub compact: Option<Presentation>,
}

impl Default for NuOptions {
    fn default() -> Self {
        NuOptions {
            mode: NuMode::AllElements,
            limits: EnumerationLimits::default(),
            max_group_order: 16,
            capacity: NU_CAPACITY,
            compact: None,
        }
    }
}

/// Name of the φ-copy of generator `name`.
pub fn phi_name(name: &str) -> String {
    format!("{name}φ")
}

/// Doubles the generators of `p` and adds the ν(G) triple relators.
///
/// In [`NuMode::AllElements`] `p` must be a multiplication-table
/// presentation (generator `i` is element `i`, generator 0 the identity);
/// the table is recovered from its relators.
pub fn nu_presentation(p: &Presentation, mode: NuMode) -> Result<Presentation> {
    let k = p.num_generators() as u32;
    let mut names = p.names().to_vec();
    names.extend(p.names().iter().map(|n| phi_name(n)));
    let mut relators: Vec<Word> = p.relators().to_vec();
    relators.extend(p.relators().iter().map(|r| r.map_gens(|g| g + k)));
    let phi = |w: &Word| w.map_gens(|g| g + k);

    match mode {
        NuMode::GeneratorTriples => {
            // Generators and their inverses; conjugating by an inverse is not
            // a consequence of the positive triples in general. An inverse is
            // skipped when `g^2` is itself a relator, since then g⁻¹ = g.
            let letters: Vec<Word> = (0..k)
                .flat_map(|g| {
                    let square = Word::gen(g).concat(&Word::gen(g));
                    let involution = p
                        .relators()
                        .iter()
                        .any(|r| *r == square || *r == square.inverse());
                    let mut out = vec![Word::gen(g)];
                    if !involution {
                        out.push(Word::gen(g).inverse());
                    }
                    out
                })
                .collect();
            for ga in &letters {
                for gb in &letters {
                    let t = ga.commutator(&phi(gb));
                    for gc in &letters {
                        let lhs = t.conj(gc);
                        let mid = ga.conj(gc).commutator(&phi(&gb.conj(gc)));
                        let rhs = t.conj(&phi(gc));
                        relators.push(lhs.concat(&mid.inverse()));
                        relators.push(lhs.concat(&rhs.inverse()));
                    }
                }
            }
        }
        NuMode::AllElements => {
            let table = recover_table(p)?;
            let n = k as usize;
            let inverse: Vec<u32> = (0..n)
                .map(|a| {
                    (0..n as u32)
                        .find(|&b| table[a * n + b as usize] == 0)
                        .ok_or_else(|| Error::Domain("multiplication table has no inverses".into()))
                })
                .collect::<Result<_>>()?;
            let mul = |a: u32, b: u32| table[a as usize * n + b as usize];
            let conj = |a: u32, c: u32| mul(mul(inverse[c as usize], a), c);
            for a in 0..k {
                for b in 0..k {
                    let t = Word::gen(a).commutator(&Word::gen(b + k));
                    for c in 0..k {
                        let lhs = t.conj(&Word::gen(c));
                        let mid = Word::gen(conj(a, c)).commutator(&Word::gen(conj(b, c) + k));
                        let rhs = t.conj(&Word::gen(c + k));
                        relators.push(lhs.concat(&mid.inverse()));
                        relators.push(lhs.concat(&rhs.inverse()));
                    }
                }
            }
        }
    }
    Presentation::new(names, relators)
}

/// Reads `a·b = c` off relators of the form `a b c⁻¹` and checks that every
/// product is present, generator 0 is the identity and the rows are
/// permutations.
fn recover_table(p: &Presentation) -> Result<Vec<u32>> {
    let n = p.num_generators();
    let bad =
        || Error::Domain("all-elements mode needs a multiplication-table presentation".into());
    let mut table = vec![u32::MAX; n * n];
    for r in p.relators() {
        match r.letters() {
            [x, y, z] if !x.inverse && !y.inverse && z.inverse => {
                let slot = &mut table[x.gen as usize * n + y.gen as usize];
                if *slot != u32::MAX && *slot != z.gen {
                    return Err(bad());
                }
                *slot = z.gen;
            }
            _ => return Err(bad()),
        }
    }
    if table.contains(&u32::MAX) {
        return Err(bad());
    }
    for a in 0..n {
        if table[a] != a as u32 || table[a * n] != a as u32 {
            return Err(bad());
        }
        let mut seen = vec![false; n];
        for b in 0..n {
            seen[table[a * n + b] as usize] = true;
        }
        if seen.contains(&false) {
            return Err(bad());
        }
    }
    Ok(table)
}

/// The enumerated ν(G) together with its distinguished pieces.
#[derive(Debug)]
pub struct NuGroup {
    group: FiniteGroup,
    ambient: FiniteGroup,
    presentation: Presentation,
    mode: NuMode,
    left: Vec<Elem>,
    right: Vec<Elem>,
    rho: Vec<Elem>,
    tensor: Subgroup,
    mu: Subgroup,
    tensor_is_plain_closure: bool,
    enumeration_millis: u128,
}

/// Enumerates ν(G) and locates `[G, G^φ]` and μ(G) in it.
pub fn build_nu(g: FiniteGroup, opts: &NuOptions) -> Result<NuGroup> {
    if g.order() > opts.max_group_order {
        return Err(Error::Domain(format!(
            "|G| = {} exceeds the ν(G) size cap {}; raise it explicitly to proceed",
            g.order(),
            opts.max_group_order
        )));
    }
    let k = g.num_generators();
    let n = g.order();
    let presentation = match opts.mode {
        NuMode::AllElements => {
            let mt = multiplication_table_presentation(&g)?;
            nu_presentation(mt.presentation(), NuMode::AllElements)?
        }
        NuMode::GeneratorTriples => {
            let compact = match &opts.compact {
                Some(p) => {
                    check_compact(&g, p, &opts.limits)?;
                    p.clone()
                }
                None => cayley_presentation(&g),
            };
            nu_presentation(&compact, NuMode::GeneratorTriples)?
        }
    };

    let start = Instant::now();
    let table = tc_enumerate(&presentation, &[], &opts.limits)?;
    let ambient = table.to_perm_group(opts.capacity)?;
    let enumeration_millis = start.elapsed().as_millis();

    // Source of each ν generator in G, and the image of each G element in ν.
    let (left, right, sources): (Vec<Elem>, Vec<Elem>, Vec<Elem>) = match opts.mode {
        NuMode::AllElements => {
            let left: Vec<Elem> = (0..n).map(|i| ambient.generator(i)).collect();
            let right: Vec<Elem> = (0..n).map(|i| ambient.generator(n + i)).collect();
            let sources = (0..2 * n).map(|i| Elem((i % n) as u32)).collect();
            (left, right, sources)
        }
        NuMode::GeneratorTriples => {
            let lgens: Vec<Elem> = (0..k).map(|i| ambient.generator(i)).collect();
            let rgens: Vec<Elem> = (0..k).map(|i| ambient.generator(k + i)).collect();
            let left = g.map_generators(Elem::IDENTITY, &lgens, |a, b| ambient.mul(*a, *b));
            let right = g.map_generators(Elem::IDENTITY, &rgens, |a, b| ambient.mul(*a, *b));
            let sources = (0..2 * k).map(|i| g.generator(i % k)).collect();
            (left, right, sources)
        }
    };
    let rho = ambient.map_generators(Elem::IDENTITY, &sources, |a, b| g.mul(*a, *b));

    let gens = g.generator_elems();
    let mut comms = Vec::with_capacity(gens.len() * gens.len());
    for &a in &gens {
        for &b in &gens {
            comms.push(ambient.comm(left[a.index()], right[b.index()]));
        }
    }
    let tensor = ambient.normal_closure(&comms, &ambient.whole());
    let tensor_is_plain_closure = ambient.closure(&comms) == tensor;
    let kernel: Vec<Elem> = tensor
        .elements()
        .iter()
        .copied()
        .filter(|e| rho[e.index()].is_identity())
        .collect();
    let mu = ambient.closure(&kernel);

    Ok(NuGroup {
        group: g,
        ambient,
        presentation,
        mode: opts.mode,
        left,
        right,
        rho,
        tensor,
        mu,
        tensor_is_plain_closure,
        enumeration_millis,
    })
}

/// A user-supplied compact presentation must be a presentation of `G` on
/// `G`'s own generators.
fn check_compact(g: &FiniteGroup, p: &Presentation, limits: &EnumerationLimits) -> Result<()> {
    if p.num_generators() != g.num_generators() || !p.satisfied_by(g.generators()) {
        return Err(Error::Domain(
            "compact presentation does not match the group's generators".into(),
        ));
    }
    let t = tc_enumerate(p, &[], limits)?;
    if t.coset_count() != g.order() {
        return Err(Error::Domain(format!(
            "compact presentation defines a group of order {}, expected {}",
            t.coset_count(),
            g.order()
        )));
    }
    Ok(())
}

impl NuGroup {
    /// The group `G` itself.
    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn ambient(&self) -> &FiniteGroup {
        &self.ambient
    }

    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn mode(&self) -> NuMode {
        self.mode
    }

    /// `g ↦ g`.
    pub fn left(&self, g: Elem) -> Elem {
        self.left[g.index()]
    }

    /// `g ↦ g^φ`.
    pub fn right(&self, g: Elem) -> Elem {
        self.right[g.index()]
    }

    /// The homomorphism ν(G) → G identifying both copies.
    pub fn rho(&self, e: Elem) -> Elem {
        self.rho[e.index()]
    }

    /// `[G, G^φ]`, identified with `G ⊗ G`.
    pub fn tensor(&self) -> &Subgroup {
        &self.tensor
    }

    /// μ(G), the kernel of ρ restricted to `[G, G^φ]`.
    pub fn mu(&self) -> &Subgroup {
        &self.mu
    }

    /// `[x, y^φ]`.
    pub fn tensor_element(&self, x: Elem, y: Elem) -> Elem {
        self.ambient.comm(self.left(x), self.right(y))
    }

    /// Whether the generator commutators already generate `[G, G^φ]` without
    /// taking conjugates.
    pub fn tensor_is_plain_closure(&self) -> bool {
        self.tensor_is_plain_closure
    }

    pub fn enumeration_millis(&self) -> u128 {
        self.enumeration_millis
    }

    pub fn left_image(&self, h: &Subgroup) -> Subgroup {
        let gens: Vec<Elem> = h.generators().iter().map(|&e| self.left(e)).collect();
        self.ambient.closure(&gens)
    }

    pub fn right_image(&self, h: &Subgroup) -> Subgroup {
        let gens: Vec<Elem> = h.generators().iter().map(|&e| self.right(e)).collect();
        self.ambient.closure(&gens)
    }

    /// Checks both displayed relations for every element triple, and that the
    /// embeddings and ρ are homomorphisms with `ρ(g) = ρ(g^φ) = g`. This is
    /// what makes a group built from generator triples trustworthy.
    pub fn triple_relations_hold(&self) -> Option<[Elem; 3]> {
        let g = &self.group;
        let a = &self.ambient;
        for x in g.elements() {
            for y in g.elements() {
                let t = self.tensor_element(x, y);
                for z in g.elements() {
                    let lhs = a.conj(t, self.left(z));
                    let mid = self.tensor_element(g.conj(x, z), g.conj(y, z));
                    let rhs = a.conj(t, self.right(z));
                    if lhs != mid || lhs != rhs {
                        return Some([x, y, z]);
                    }
                }
            }
        }
        None
    }

    /// Structural sanity: embeddings are injective homomorphisms, ρ inverts
    /// them, and the relators of ν(G) hold in the enumerated group.
    pub fn embeddings_consistent(&self) -> bool {
        let g = &self.group;
        let a = &self.ambient;
        let injective = |m: &[Elem]| {
            let mut seen = std::collections::HashSet::new();
            m.iter().all(|e| seen.insert(*e))
        };
        if !injective(&self.left) || !injective(&self.right) {
            return false;
        }
        for x in g.elements() {
            if self.rho(self.left(x)) != x || self.rho(self.right(x)) != x {
                return false;
            }
            for y in g.elements() {
                let xy = g.mul(x, y);
                if a.mul(self.left(x), self.left(y)) != self.left(xy)
                    || a.mul(self.right(x), self.right(y)) != self.right(xy)
                {
                    return false;
                }
            }
        }
        true
    }

    pub fn report(&self) -> Result<TensorReport> {
        let a = &self.ambient;
        let derived = self.group.derived_subgroup(&self.group.whole());
        let tensor_abelian = a.is_abelian(&self.tensor);
        let tensor_invariants = if tensor_abelian {
            Some(abelian_invariants(a, &self.tensor)?)
        } else {
            None
        };
        let lcs = a.lower_central_series(&self.tensor);
        Ok(TensorReport {
            mode: self.mode,
            group_order: self.group.order(),
            derived_order: derived.order(),
            nu_order: a.order(),
            tensor_order: self.tensor.order(),
            mu_order: self.mu.order(),
            tensor_abelian,
            tensor_invariants,
            tensor_class: lcs.class(),
            tensor_is_plain_closure: self.tensor_is_plain_closure,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TensorReport {
    pub mode: NuMode,
    pub group_order: usize,
    pub derived_order: usize,
    pub nu_order: usize,
    pub tensor_order: usize,
    pub mu_order: usize,
    pub tensor_abelian: bool,
    pub tensor_invariants: Option<Vec<u64>>,
    /// Nilpotency class of `[G, G^φ]`, if nilpotent.
    pub tensor_class: Option<usize>,
    pub tensor_is_plain_closure: bool,
}

impl TensorReport {
    /// `|ν(G)| = |G ⊗ G|·|G|²`.
    pub fn order_law_holds(&self) -> bool {
        self.nu_order == self.tensor_order * self.group_order * self.group_order
    }

    /// `|G ⊗ G| = |μ(G)|·|G′|`.
    pub fn derived_law_holds(&self) -> bool {
        self.tensor_order == self.mu_order * self.derived_order
    }
}

/// Builds ν(G) and summarizes the tensor square.
pub fn tensor_square(g: FiniteGroup, opts: &NuOptions) -> Result<TensorReport> {
    build_nu(g, opts)?.report()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TensorOrder {
    pub order: u64,
    /// Least `p^s` with `[x, y^φ]^{p^s} = 1`, when the order is a power of `p`.
    pub min_p_power: Option<u64>,
}

/// Order of `[x, y^φ]` in ν(G).
pub fn tensor_order(nu: &NuGroup, x: Elem, y: Elem, p: u64) -> TensorOrder {
    let order = nu.ambient.element_order(nu.tensor_element(x, y));
    let mut q = 1;
    while q < order {
        q *= p;
    }
    TensorOrder {
        order,
        min_p_power: (q == order).then_some(q),
    }
}

/// Counts `[x, y^φ]` by element order over all pairs.
pub fn tensor_order_census(nu: &NuGroup) -> HashMap<u64, usize> {
    let g = &nu.group;
    let mut census = HashMap::new();
    for x in g.elements() {
        for y in g.elements() {
            *census
                .entry(nu.ambient.element_order(nu.tensor_element(x, y)))
                .or_default() += 1;
        }
    }
    census
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::lookup;

    fn build(name: &str, mode: NuMode) -> NuGroup {
        let e = lookup(name).unwrap();
        let opts = NuOptions {
            mode,
            compact: e.compact_presentation(),
            ..Default::default()
        };
        build_nu(e.group().unwrap(), &opts).unwrap()
    }

    #[test]
    fn trivial_group() {
        let nu = build("C1", NuMode::AllElements);
        let r = nu.report().unwrap();
        assert_eq!((r.nu_order, r.tensor_order, r.mu_order), (1, 1, 1));
    }

    #[test]
    fn c2_both_modes() {
        for mode in [NuMode::AllElements, NuMode::GeneratorTriples] {
            let nu = build("C2", mode);
            let r = nu.report().unwrap();
            assert_eq!((r.nu_order, r.tensor_order, r.mu_order), (8, 2, 2));
            let x = Elem(1);
            assert_eq!(
                tensor_order(&nu, x, x, 2),
                TensorOrder {
                    order: 2,
                    min_p_power: Some(2)
                }
            );
            assert_eq!(tensor_order(&nu, Elem::IDENTITY, x, 2).order, 1);
        }
    }

    #[test]
    fn s3_routes_agree() {
        let a = build("S3", NuMode::AllElements).report().unwrap();
        let b = build("S3", NuMode::GeneratorTriples).report().unwrap();
        assert_eq!(a.nu_order, b.nu_order);
        assert_eq!(a.tensor_order, 6);
        assert_eq!(a.mu_order, 2);
        assert_eq!(a.tensor_invariants, Some(vec![6]));
    }

    #[test]
    fn generator_route_satisfies_full_relations() {
        let nu = build("S3", NuMode::GeneratorTriples);
        assert_eq!(nu.triple_relations_hold(), None);
        assert!(nu.embeddings_consistent());
    }

    #[test]
    fn cap_is_enforced() {
        let e = lookup("S4").unwrap();
        let err = build_nu(e.group().unwrap(), &NuOptions::default()).unwrap_err();
        assert!(matches!(err, Error::Domain(_)));
    }

    #[test]
    fn rejects_non_table_presentation() {
        let p = Presentation::parse("gens: a\nrels: a^2").unwrap();
        assert!(nu_presentation(&p, NuMode::AllElements).is_err());
        assert!(nu_presentation(&p, NuMode::GeneratorTriples).is_ok());
    }
}
