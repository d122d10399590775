use nutensor::catalog::catalog;
use nutensor::fpres::{
    multiplication_table_presentation, tc_enumerate, EnumerationLimits, Presentation, Strategy,
};

fn felsch() -> EnumerationLimits {
    EnumerationLimits {
        strategy: Strategy::Felsch,
        ..Default::default()
    }
}

#[test]
fn compact_presentations_enumerate_to_catalog_orders() {
    for e in catalog() {
        let Some(p) = e.compact_presentation() else {
            continue;
        };
        for limits in [EnumerationLimits::default(), felsch()] {
            let t = tc_enumerate(&p, &[], &limits).unwrap();
            assert!(t.is_closed());
            assert!(t.verify(&p, &[]));
            assert_eq!(t.coset_count(), e.order, "{} {:?}", e.name, limits.strategy);
        }
    }
}

#[test]
fn multiplication_table_presentations() {
    for e in catalog().iter().filter(|e| e.order <= 16) {
        let g = e.group().unwrap();
        let m = multiplication_table_presentation(&g).unwrap();
        let t = tc_enumerate(m.presentation(), &[], &EnumerationLimits::default()).unwrap();
        assert_eq!(t.coset_count(), g.order(), "{}", e.name);
        assert_eq!(m.order(), g.order());
    }
}

#[test]
fn enumeration_is_deterministic() {
    let p = Presentation::parse("gens: a b\nrels: a^4, b^2, (a b)^2").unwrap();
    let limits = EnumerationLimits::default();
    let a = tc_enumerate(&p, &[], &limits).unwrap();
    let b = tc_enumerate(&p, &[], &limits).unwrap();
    assert_eq!(a.coset_count(), b.coset_count());
    for c in 0..a.coset_count() {
        for gen in 0..a.num_generators() {
            for inverse in [false, true] {
                assert_eq!(a.entry(c, gen, inverse), b.entry(c, gen, inverse));
            }
        }
    }
    let ga = a.to_perm_group(1000).unwrap();
    let gb = b.to_perm_group(1000).unwrap();
    assert_eq!(ga.generators(), gb.generators());
}

#[test]
fn subgroup_index() {
    let p = Presentation::parse("gens: a b\nrels: a^2, b^3, (a b)^2").unwrap();
    let b = p.parse_word("b").unwrap();
    let t = tc_enumerate(&p, &[b], &EnumerationLimits::default()).unwrap();
    assert_eq!(t.coset_count(), 2);
}

#[test]
fn infinite_groups_hit_the_limit() {
    let p = Presentation::parse("gens: a b\nrels: a^2").unwrap();
    let limits = EnumerationLimits {
        max_cosets: 5_000,
        ..Default::default()
    };
    assert!(tc_enumerate(&p, &[], &limits).is_err());
}
