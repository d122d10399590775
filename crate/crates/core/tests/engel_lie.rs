use nutensor::catalog::{catalog, lookup};
use nutensor::engel::{engel_degree, is_left_n_engel, left_engel_set, EngelDegree};
use nutensor::lie::{
    dimension_subgroups, lie_nilpotency_class, lie_ring, subalgebra_lp, verify_lazard,
};

#[test]
fn engel_sets_grow_with_n() {
    for e in catalog().iter().filter(|e| e.order <= 16) {
        let g = e.group().unwrap();
        let mut prev = left_engel_set(&g, 1);
        for n in 2..=6 {
            let cur = left_engel_set(&g, n);
            assert!(prev.iter().all(|x| cur.contains(x)), "{} n={n}", e.name);
            prev = cur;
        }
    }
}

#[test]
fn engel_degree_agrees_with_pointwise_test() {
    for name in ["S3", "D4", "Q8", "A4", "D6"] {
        let g = lookup(name).unwrap().group().unwrap();
        for y in g.elements() {
            let d = engel_degree(&g, y);
            for n in 1..=6 {
                let expected = match d {
                    EngelDegree::Exact(k) => k <= n,
                    EngelDegree::Never => false,
                    EngelDegree::Undetermined => continue,
                };
                assert_eq!(is_left_n_engel(&g, y, n).unwrap(), expected, "{name} n={n}");
            }
        }
    }
}

#[test]
fn nilpotent_groups_are_engel_everywhere() {
    for e in catalog().iter().filter(|e| e.prime().is_some()) {
        let g = e.group().unwrap();
        assert_eq!(left_engel_set(&g, g.order()).len(), g.order(), "{}", e.name);
    }
}

#[test]
fn lie_dimensions_add_up() {
    for e in catalog() {
        let Some(p) = e.prime() else { continue };
        let g = e.group().unwrap();
        let s = dimension_subgroups(&g, p).unwrap();
        let l = lie_ring(&g, &s);
        assert_eq!(p.pow(l.total_dim() as u32), g.order() as u64, "{}", e.name);
        let lp = subalgebra_lp(&l);
        assert!(lp.total_dim() <= l.total_dim());
        // degree-1 generators: d_1 is the rank of the Frattini quotient
        assert_eq!(lp.dims.first(), l.dims().first(), "{}", e.name);
        assert!(lie_nilpotency_class(&l).is_some(), "{}", e.name);
    }
}

#[test]
fn lazard_beyond_the_exponent() {
    for e in catalog() {
        let Some(p) = e.prime() else { continue };
        let g = e.group().unwrap();
        let s = dimension_subgroups(&g, p).unwrap();
        let l = lie_ring(&g, &s);
        for q in [p.pow(3), p.pow(5)] {
            let (v, entries) = verify_lazard(&l, q).unwrap();
            assert!(v.passed, "{} q={q}", e.name);
            assert!(entries.iter().all(|z| z.order_bound_holds));
        }
    }
}

#[test]
fn representative_choice_does_not_matter() {
    // verify_axioms recomputes the brackets from shifted representatives
    for name in ["D4", "Q8", "M16", "C4:C4", "Heis3"] {
        let g = lookup(name).unwrap().group().unwrap();
        let p = lookup(name).unwrap().prime().unwrap();
        let s = dimension_subgroups(&g, p).unwrap();
        let v = lie_ring(&g, &s).verify_axioms(&s);
        assert!(v.passed, "{name}: {:?}", v.notes);
    }
}
