use nutensor::abelian::abelian_invariants;
use nutensor::catalog::catalog;
use nutensor::{Elem, FiniteGroup, Permutation};
use proptest::prelude::*;

fn perm(degree: usize) -> impl Strategy<Value = Permutation> {
    Just((0..degree as u32).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(|v| Permutation::from_images(v).unwrap())
}

fn small_group() -> impl Strategy<Value = FiniteGroup> {
    (2usize..=6)
        .prop_flat_map(|d| prop::collection::vec(perm(d), 1..=3))
        .prop_map(|gens| FiniteGroup::new(gens).unwrap())
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn lagrange(g in small_group(), picks in prop::collection::vec(any::<prop::sample::Index>(), 1..3)) {
        let elems: Vec<Elem> = g.elements().collect();
        let gens: Vec<Elem> = picks.iter().map(|i| *i.get(&elems)).collect();
        let h = g.closure(&gens);
        prop_assert_eq!(g.order() % h.order(), 0);
        for &x in &gens {
            prop_assert_eq!(h.order() as u64 % g.element_order(x), 0);
        }
    }

    #[test]
    fn lower_central_series_descends(g in small_group()) {
        let whole = g.whole();
        let lcs = g.lower_central_series(&whole);
        for w in lcs.terms.windows(2) {
            prop_assert!(w[1].is_subset_of(&w[0]));
            prop_assert!(g.is_normal(&w[1], &whole));
            // each factor is central in the quotient
            let c = g.commutator_subgroup(&w[0], &whole);
            prop_assert!(c.is_subset_of(&w[1]));
        }
    }

    #[test]
    fn quotient_orders(g in small_group()) {
        let whole = g.whole();
        let d = g.derived_subgroup(&whole);
        let q = g.quotient_action(&whole, &d).unwrap();
        prop_assert_eq!(q.group.order() * d.order(), g.order());
        prop_assert!(q.group.is_abelian(&q.group.whole()));
        for x in g.elements() {
            prop_assert!(q.coset(x).is_some());
        }
    }

    #[test]
    fn abelian_invariants_count_elements(g in small_group()) {
        // the abelianization always qualifies
        let whole = g.whole();
        let d = g.derived_subgroup(&whole);
        let q = g.quotient_action(&whole, &d).unwrap().group;
        let inv = abelian_invariants(&q, &q.whole()).unwrap();
        prop_assert_eq!(inv.iter().product::<u64>(), q.order() as u64);
        for w in inv.windows(2) {
            prop_assert_eq!(w[1] % w[0], 0);
        }
        // #{x : x^k = 1} = prod gcd(k, d_i)
        for k in 1..=12u64 {
            let count = q.elements().filter(|&x| k % q.element_order(x) == 0).count() as u64;
            let expected: u64 = inv.iter().map(|&d| gcd(k, d)).product();
            prop_assert_eq!(count, expected, "k = {}", k);
        }
    }
}

#[test]
fn commutator_expansion_small_catalog() {
    for e in catalog().iter().filter(|e| e.order <= 12) {
        let g = e.group().unwrap();
        for x in g.elements() {
            for y in g.elements() {
                for z in g.elements() {
                    // [xy, z] = [x, z]^y [y, z] and [x, yz] = [x, z] [x, y]^z
                    let left = g.comm(g.mul(x, y), z);
                    let right = g.mul(g.conj(g.comm(x, z), y), g.comm(y, z));
                    assert_eq!(left, right, "{}", e.name);
                    let left = g.comm(x, g.mul(y, z));
                    let right = g.mul(g.comm(x, z), g.conj(g.comm(x, y), z));
                    assert_eq!(left, right, "{}", e.name);
                }
            }
        }
    }
}

#[test]
fn catalog_orders_match_entries() {
    for e in catalog() {
        let g = e.group().unwrap();
        assert_eq!(g.order(), e.order, "{}", e.name);
        if let Some(p) = e.compact_presentation() {
            assert!(p.satisfied_by(g.generators()), "{}", e.name);
        }
    }
}
