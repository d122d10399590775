//! Checks of the identities that hold in ν(G) and of the structure of
//! `[G, G^φ]` inside it.

use std::fmt;
use std::str::FromStr;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::catalog::prime_of_power;
use crate::check::{for_tuples, Sampling, Verification, Witness};
use crate::error::Error;
use crate::group::Elem;
use crate::nu::NuGroup;

/// The five families of relations in ν(G), labelled `i` to `v`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NuRelation {
    I,
    II,
    III,
    IV,
    V,
}

impl NuRelation {
    pub const ALL: [NuRelation; 5] = [
        NuRelation::I,
        NuRelation::II,
        NuRelation::III,
        NuRelation::IV,
        NuRelation::V,
    ];

    pub fn label(self) -> &'static str {
        match self {
            NuRelation::I => "i",
            NuRelation::II => "ii",
            NuRelation::III => "iii",
            NuRelation::IV => "iv",
            NuRelation::V => "v",
        }
    }

    pub fn statement(self) -> &'static str {
        match self {
            NuRelation::I => "[g,h^φ]^[x,y^φ] = [g,h^φ]^[x,y]",
            NuRelation::II => {
                "[g,h^φ,x^φ] = [g,h,x^φ] = [g,h^φ,x] = [g^φ,h,x^φ] = [g^φ,h^φ,x] = [g^φ,h,x]"
            }
            NuRelation::III => "[g,h^φ][h,g^φ] = 1 when g or h lies in G'",
            NuRelation::IV => "[g,[h,x]^φ] = [[h,x],g^φ]^-1",
            NuRelation::V => "[[g,h^φ],[x,y^φ]] = [[g,h],[x,y]^φ]",
        }
    }

    fn arity(self) -> usize {
        match self {
            NuRelation::I | NuRelation::V => 4,
            NuRelation::II | NuRelation::IV => 3,
            NuRelation::III => 2,
        }
    }
}

impl fmt::Display for NuRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for NuRelation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        NuRelation::ALL
            .into_iter()
            .find(|r| r.label() == s)
            .ok_or_else(|| Error::Parse(format!("unknown relation family {s:?}")))
    }
}

/// Evaluates one family on one tuple of `G` elements.
fn holds(nu: &NuGroup, rel: NuRelation, t: &[Elem]) -> bool {
    let g = nu.group();
    let a = nu.ambient();
    let (l, r) = (|e| nu.left(e), |e| nu.right(e));
    match rel {
        NuRelation::I => {
            let (gg, h, x, y) = (t[0], t[1], t[2], t[3]);
            let u = nu.tensor_element(gg, h);
            a.conj(u, nu.tensor_element(x, y)) == a.conj(u, l(g.comm(x, y)))
        }
        NuRelation::II => {
            let (gg, h, x) = (t[0], t[1], t[2]);
            let c = |p: Elem, q: Elem, s: Elem| a.comm(a.comm(p, q), s);
            let gh = g.comm(gg, h);
            let e1 = c(l(gg), r(h), r(x));
            [
                a.comm(l(gh), r(x)),
                c(l(gg), r(h), l(x)),
                c(r(gg), l(h), r(x)),
                a.comm(r(gh), l(x)),
                c(r(gg), l(h), l(x)),
            ]
            .iter()
            .all(|&e| e == e1)
        }
        NuRelation::III => {
            // t[1] is drawn from G'; both orders are checked.
            let (u, d) = (t[0], t[1]);
            let one = a.mul(nu.tensor_element(u, d), nu.tensor_element(d, u));
            let two = a.mul(nu.tensor_element(d, u), nu.tensor_element(u, d));
            one.is_identity() && two.is_identity()
        }
        NuRelation::IV => {
            let (gg, h, x) = (t[0], t[1], t[2]);
            let hx = g.comm(h, x);
            a.comm(l(gg), r(hx)) == a.inv(a.comm(l(hx), r(gg)))
        }
        NuRelation::V => {
            let (gg, h, x, y) = (t[0], t[1], t[2], t[3]);
            let lhs = a.comm(nu.tensor_element(gg, h), nu.tensor_element(x, y));
            lhs == nu.tensor_element(g.comm(gg, h), g.comm(x, y))
        }
    }
}

/// Checks the chosen relation families, exhaustively when
/// `|G| <= sampling.exhaustive_cap` and on seeded random tuples otherwise.
pub fn verify_nu_relations(
    nu: &NuGroup,
    families: &[NuRelation],
    sampling: &Sampling,
) -> Vec<Verification> {
    let g = nu.group();
    let all: Vec<Elem> = g.elements().collect();
    let derived: Vec<Elem> = g.derived_subgroup(&g.whole()).elements().to_vec();
    let exhaustive = g.order() <= sampling.exhaustive_cap;
    families
        .iter()
        .map(|&rel| {
            let mut v = Verification::new(format!("relation-{}", rel.label()), rel.statement());
            v.exhaustive = if rel == NuRelation::III {
                // pairs (u, d) with d in G'
                run_pairs_with_derived(nu, &all, &derived, exhaustive, sampling, &mut v)
            } else {
                for_tuples(&all, rel.arity(), exhaustive, sampling, |t| {
                    let ok = holds(nu, rel, t);
                    v.record(ok, || Witness::new(g, t));
                    ok
                })
            };
            v
        })
        .collect()
}

fn run_pairs_with_derived(
    nu: &NuGroup,
    all: &[Elem],
    derived: &[Elem],
    exhaustive: bool,
    sampling: &Sampling,
    v: &mut Verification,
) -> bool {
    let g = nu.group();
    let mut check = |u: Elem, d: Elem| {
        let ok = holds(nu, NuRelation::III, &[u, d]);
        v.record(ok, || Witness::new(g, &[u, d]));
        ok
    };
    if exhaustive {
        for &u in all {
            for &d in derived {
                if !check(u, d) {
                    return true;
                }
            }
        }
        true
    } else {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(sampling.seed);
        for _ in 0..sampling.samples {
            let u = all[rng.gen_range(0..all.len())];
            let d = derived[rng.gen_range(0..derived.len())];
            if !check(u, d) {
                break;
            }
        }
        false
    }
}

/// The set `X = {[a, b^φ]}` is closed under conjugation by ν(G) and under
/// commutators. Also confirms `[[a,b^φ],[c,d^φ]] = [[a,b],[c,d]^φ]`
/// elementwise when `|G|^4` is small enough, and records whether every
/// member of `X` is a p-element when `G` is a p-group.
pub fn verify_tensor_set_closed(nu: &NuGroup) -> Verification {
    let g = nu.group();
    let a = nu.ambient();
    let mut v = Verification::new(
        "tensor-set-closed",
        "X = {[a,b^φ]} is a normal commutator-closed subset of ν(G)",
    );
    let mut members = FixedBitSet::with_capacity(a.order());
    let mut xs = Vec::new();
    let mut origin = Vec::new();
    for x in g.elements() {
        for y in g.elements() {
            let t = nu.tensor_element(x, y);
            if !members.put(t.index()) {
                xs.push(t);
                origin.push((x, y));
            }
        }
    }
    v.note(format!("|X| = {}", xs.len()));
    for (i, &x) in xs.iter().enumerate() {
        for w in 0..a.num_generators() {
            let c = a.conj(x, a.generator(w));
            let (p, q) = origin[i];
            v.record(members.contains(c.index()), || Witness::new(g, &[p, q]));
        }
    }
    for (i, &x) in xs.iter().enumerate() {
        for (j, &y) in xs.iter().enumerate() {
            let c = a.comm(x, y);
            let ((p, q), (r, s)) = (origin[i], origin[j]);
            v.record(members.contains(c.index()), || {
                Witness::new(g, &[p, q, r, s])
            });
        }
    }
    if g.order().pow(4) <= 100_000 {
        let all: Vec<Elem> = g.elements().collect();
        for_tuples(&all, 4, true, &Sampling::default(), |t| {
            let ok = holds(nu, NuRelation::V, t);
            v.record(ok, || Witness::new(g, t));
            ok
        });
        v.note("commutators of members witnessed elementwise over all of G^4");
    }
    if let Some(p) = prime_of_power(g.order() as u64) {
        let all_p = xs
            .iter()
            .all(|&x| prime_of_power(a.element_order(x)).is_none_or(|q| q == p));
        v.note(format!("every member of X is a {p}-element: {all_p}"));
    }
    v
}

/// `ν(G)' = ([G,G^φ]·G')·(G')^φ` with trivial intersections.
pub fn verify_decomposition(nu: &NuGroup) -> Verification {
    let g = nu.group();
    let a = nu.ambient();
    let mut v = Verification::new(
        "decomposition",
        "ν(G)' = ([G,G^φ]·G')·(G')^φ, each product semidirect",
    );
    let derived_nu = a.derived_subgroup(&a.whole());
    let gd = g.derived_subgroup(&g.whole());
    let left = nu.left_image(&gd);
    let right = nu.right_image(&gd);
    let tensor = nu.tensor();

    let mut tl = tensor.clone();
    a.extend(&mut tl, left.generators());
    v.require(
        tensor.intersection_order(&left) == 1,
        "[G,G^φ] meets the left copy of G' nontrivially",
    );
    v.require(
        tl.order() == tensor.order() * left.order(),
        "|[G,G^φ]·G'| is not the product of the orders",
    );
    v.require(
        tl.intersection_order(&right) == 1,
        "[G,G^φ]·G' meets (G')^φ nontrivially",
    );
    v.require(
        a.is_normal(&tl, &derived_nu),
        "[G,G^φ]·G' is not normal in ν(G)'",
    );
    v.require(
        a.is_normal(tensor, &tl),
        "[G,G^φ] is not normal in [G,G^φ]·G'",
    );
    v.require(
        derived_nu.order() == tensor.order() * gd.order() * gd.order(),
        format!(
            "|ν(G)'| = {} but |[G,G^φ]|·|G'|² = {}",
            derived_nu.order(),
            tensor.order() * gd.order() * gd.order()
        ),
    );

    // Set product, element by element.
    let mut product = FixedBitSet::with_capacity(a.order());
    for &t in tensor.elements() {
        for &l in left.elements() {
            let tl = a.mul(t, l);
            for &r in right.elements() {
                product.insert(a.mul(tl, r).index());
            }
        }
    }
    let mut derived_set = FixedBitSet::with_capacity(a.order());
    for &e in derived_nu.elements() {
        derived_set.insert(e.index());
    }
    v.require(product == derived_set, "the set product differs from ν(G)'");
    v.note(format!(
        "|ν(G)'| = {}, |[G,G^φ]| = {}, |G'| = {}",
        derived_nu.order(),
        tensor.order(),
        gd.order()
    ));
    v
}

/// ρ' maps `[a, b^φ]` to `[a, b]`, `[G,G^φ]/μ(G) ≅ G'` through it, and μ(G)
/// is central in ν(G).
pub fn derived_map_check(nu: &NuGroup) -> Verification {
    let g = nu.group();
    let a = nu.ambient();
    let mut v = Verification::new(
        "derived-map",
        "ρ'([a,b^φ]) = [a,b], [G,G^φ]/μ(G) ≅ G', μ(G) central in ν(G)",
    );
    for x in g.elements() {
        for y in g.elements() {
            let ok = nu.rho(nu.tensor_element(x, y)) == g.comm(x, y);
            v.record(ok, || Witness::new(g, &[x, y]));
        }
    }
    let gd = g.derived_subgroup(&g.whole());
    let tensor = nu.tensor();
    let mu = nu.mu();

    let mut image = FixedBitSet::with_capacity(g.order());
    for &t in tensor.elements() {
        image.insert(nu.rho(t).index());
    }
    let image_is_derived = image.count_ones(..) == gd.order()
        && gd.elements().iter().all(|e| image.contains(e.index()));
    v.require(image_is_derived, "ρ([G,G^φ]) differs from G'");
    v.require(
        tensor.order() == mu.order() * gd.order(),
        format!(
            "|[G,G^φ]| = {} but |μ(G)|·|G'| = {}",
            tensor.order(),
            mu.order() * gd.order()
        ),
    );
    match a.quotient_action(tensor, mu) {
        Ok(q) => {
            v.require(
                q.group.order() == gd.order(),
                format!("[G,G^φ]/μ(G) has order {}", q.group.order()),
            );
            // The induced map is well defined: ρ is constant on cosets of μ(G).
            let mut coset_image: Vec<Option<Elem>> = vec![None; q.group.order()];
            let mut consistent = true;
            for &t in tensor.elements() {
                let c = q.coset(t).expect("tensor element") as usize;
                let r = nu.rho(t);
                match coset_image[c] {
                    None => coset_image[c] = Some(r),
                    Some(prev) => consistent &= prev == r,
                }
            }
            v.require(consistent, "ρ is not constant on cosets of μ(G)");
        }
        Err(e) => v.require(false, format!("quotient by μ(G) failed: {e}")),
    }
    let central = mu
        .generators()
        .iter()
        .all(|&m| (0..a.num_generators()).all(|w| a.comm(m, a.generator(w)).is_identity()));
    v.require(central, "μ(G) is not central in ν(G)");
    v
}
