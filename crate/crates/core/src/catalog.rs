//! Built-in groups.
//!
//! Every entry carries permutation generators; most also carry a compact
//! presentation on the same generators in the same order, which is used for
//! the generator-triples construction of ν(G). Entries without one are those
//! whose all-elements construction of ν(G) is out of reach; their
//! generator-triples construction goes through the Cayley presentation.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fpres::Presentation;
use crate::group::FiniteGroup;
use crate::perm::Permutation;

#[derive(Clone, Debug, Serialize)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub description: &'static str,
    pub order: usize,
    pub degree: usize,
    pub generators: &'static [&'static str],
    pub presentation: Option<&'static str>,
}

impl CatalogEntry {
    pub fn group(&self) -> Result<FiniteGroup> {
        let gens = self
            .generators
            .iter()
            .map(|s| Permutation::parse_cycles(s, self.degree))
            .collect::<Result<Vec<_>>>()?;
        let names = match self.compact_presentation() {
            Some(p) => p.names().to_vec(),
            None => (0..gens.len())
                .map(|i| ((b'a' + i as u8) as char).to_string())
                .collect(),
        };
        FiniteGroup::new(gens)?.with_names(names)
    }

    pub fn compact_presentation(&self) -> Option<Presentation> {
        self.presentation
            .map(|text| Presentation::parse(text).expect("catalog presentations parse"))
    }

    /// The prime `p` if the order is a positive power of `p`.
    pub fn prime(&self) -> Option<u64> {
        prime_of_power(self.order as u64)
    }
}

/// The prime `p` if `n = p^k` with `k >= 1`.
pub fn prime_of_power(n: u64) -> Option<u64> {
    if n < 2 {
        return None;
    }
    let p = (2..=n).find(|d| n % d == 0)?;
    let mut m = n;
    while m % p == 0 {
        m /= p;
    }
    (m == 1).then_some(p)
}

macro_rules! entry {
    ($name:expr, $desc:expr, $order:expr, $degree:expr, [$($g:expr),*], $pres:expr) => {
        CatalogEntry {
            name: $name,
            description: $desc,
            order: $order,
            degree: $degree,
            generators: &[$($g),*],
            presentation: $pres,
        }
    };
}

static CATALOG: &[CatalogEntry] = &[
    entry!(
        "C1",
        "trivial group",
        1,
        1,
        ["()"],
        Some("gens: a\nrels: a")
    ),
    entry!(
        "C2",
        "cyclic of order 2",
        2,
        2,
        ["(0 1)"],
        Some("gens: a\nrels: a^2")
    ),
    entry!(
        "C3",
        "cyclic of order 3",
        3,
        3,
        ["(0 1 2)"],
        Some("gens: a\nrels: a^3")
    ),
    entry!(
        "C4",
        "cyclic of order 4",
        4,
        4,
        ["(0 1 2 3)"],
        Some("gens: a\nrels: a^4")
    ),
    entry!(
        "C2xC2",
        "Klein four-group",
        4,
        4,
        ["(0 1)", "(2 3)"],
        Some("gens: a b\nrels: a^2, b^2, [a, b]")
    ),
    entry!(
        "C5",
        "cyclic of order 5",
        5,
        5,
        ["(0 1 2 3 4)"],
        Some("gens: a\nrels: a^5")
    ),
    entry!(
        "C6",
        "cyclic of order 6",
        6,
        6,
        ["(0 1 2 3 4 5)"],
        Some("gens: a\nrels: a^6")
    ),
    entry!(
        "S3",
        "symmetric group on 3 points",
        6,
        3,
        ["(0 1)", "(0 1 2)"],
        Some("gens: a b\nrels: a^2, b^3, (a b)^2")
    ),
    entry!(
        "C7",
        "cyclic of order 7",
        7,
        7,
        ["(0 1 2 3 4 5 6)"],
        Some("gens: a\nrels: a^7")
    ),
    entry!(
        "C8",
        "cyclic of order 8",
        8,
        8,
        ["(0 1 2 3 4 5 6 7)"],
        Some("gens: a\nrels: a^8")
    ),
    entry!(
        "C2xC4",
        "direct product of cyclic groups of orders 2 and 4",
        8,
        6,
        ["(0 1)", "(2 3 4 5)"],
        Some("gens: a b\nrels: a^2, b^4, [a, b]")
    ),
    entry!(
        "C2xC2xC2",
        "elementary abelian of order 8",
        8,
        6,
        ["(0 1)", "(2 3)", "(4 5)"],
        Some("gens: a b c\nrels: a^2, b^2, c^2, [a, b], [a, c], [b, c]")
    ),
    entry!(
        "D4",
        "dihedral of order 8",
        8,
        4,
        ["(0 1 2 3)", "(0 2)"],
        Some("gens: a b\nrels: a^4, b^2, (a b)^2")
    ),
    entry!(
        "Q8",
        "quaternion group",
        8,
        8,
        ["(0 1 2 3)(4 5 6 7)", "(0 4 2 6)(1 7 3 5)"],
        Some("gens: a b\nrels: a^4, a^2 b^-2, b^-1 a b a")
    ),
    entry!(
        "C9",
        "cyclic of order 9",
        9,
        9,
        ["(0 1 2 3 4 5 6 7 8)"],
        Some("gens: a\nrels: a^9")
    ),
    entry!(
        "C3xC3",
        "elementary abelian of order 9",
        9,
        6,
        ["(0 1 2)", "(3 4 5)"],
        Some("gens: a b\nrels: a^3, b^3, [a, b]")
    ),
    entry!(
        "D5",
        "dihedral of order 10",
        10,
        5,
        ["(0 1 2 3 4)", "(1 4)(2 3)"],
        Some("gens: a b\nrels: a^5, b^2, (a b)^2")
    ),
    entry!(
        "C10",
        "cyclic of order 10",
        10,
        10,
        ["(0 1 2 3 4 5 6 7 8 9)"],
        Some("gens: a\nrels: a^10")
    ),
    entry!(
        "C11",
        "cyclic of order 11",
        11,
        11,
        ["(0 1 2 3 4 5 6 7 8 9 10)"],
        Some("gens: a\nrels: a^11")
    ),
    entry!(
        "C12",
        "cyclic of order 12",
        12,
        12,
        ["(0 1 2 3 4 5 6 7 8 9 10 11)"],
        Some("gens: a\nrels: a^12")
    ),
    entry!(
        "A4",
        "alternating group on 4 points",
        12,
        4,
        ["(0 1 2)", "(0 1)(2 3)"],
        Some("gens: a b\nrels: a^3, b^2, (a b)^3")
    ),
    entry!(
        "D6",
        "dihedral of order 12",
        12,
        6,
        ["(0 1 2 3 4 5)", "(1 5)(2 4)"],
        Some("gens: a b\nrels: a^6, b^2, (a b)^2")
    ),
    entry!(
        "Dic3",
        "dicyclic group of order 12",
        12,
        7,
        ["(0 1 2)(3 4)(5 6)", "(1 2)(3 5 4 6)"],
        Some("gens: a b\nrels: a^6, a^3 b^-2, b^-1 a b a")
    ),
    entry!(
        "C2xC6",
        "direct product of cyclic groups of orders 2 and 6",
        12,
        8,
        ["(0 1)", "(2 3 4 5 6 7)"],
        Some("gens: a b\nrels: a^2, b^6, [a, b]")
    ),
    entry!(
        "C13",
        "cyclic of order 13",
        13,
        13,
        ["(0 1 2 3 4 5 6 7 8 9 10 11 12)"],
        Some("gens: a\nrels: a^13")
    ),
    entry!(
        "C14",
        "cyclic of order 14",
        14,
        14,
        ["(0 1 2 3 4 5 6 7 8 9 10 11 12 13)"],
        Some("gens: a\nrels: a^14")
    ),
    entry!(
        "D7",
        "dihedral of order 14",
        14,
        7,
        ["(0 1 2 3 4 5 6)", "(1 6)(2 5)(3 4)"],
        Some("gens: a b\nrels: a^7, b^2, (a b)^2")
    ),
    entry!(
        "C15",
        "cyclic of order 15",
        15,
        15,
        ["(0 1 2 3 4 5 6 7 8 9 10 11 12 13 14)"],
        Some("gens: a\nrels: a^15")
    ),
    entry!(
        "C16",
        "cyclic of order 16",
        16,
        16,
        ["(0 1 2 3 4 5 6 7 8 9 10 11 12 13 14 15)"],
        Some("gens: a\nrels: a^16")
    ),
    entry!(
        "C2xC8",
        "direct product of cyclic groups of orders 2 and 8",
        16,
        10,
        ["(0 1)", "(2 3 4 5 6 7 8 9)"],
        Some("gens: a b\nrels: a^2, b^8, [a, b]")
    ),
    entry!(
        "C4xC4",
        "direct product of two cyclic groups of order 4",
        16,
        8,
        ["(0 1 2 3)", "(4 5 6 7)"],
        Some("gens: a b\nrels: a^4, b^4, [a, b]")
    ),
    entry!(
        "D8",
        "dihedral of order 16",
        16,
        8,
        ["(0 1 2 3 4 5 6 7)", "(1 7)(2 6)(3 5)"],
        Some("gens: a b\nrels: a^8, b^2, (a b)^2")
    ),
    entry!(
        "Q16",
        "generalized quaternion of order 16",
        16,
        16,
        [
            "(0 1 2 3 4 5 6 7)(8 15 14 13 12 11 10 9)",
            "(0 8 4 12)(1 9 5 13)(2 10 6 14)(3 11 7 15)"
        ],
        Some("gens: a b\nrels: a^8, a^4 b^-2, b^-1 a b a")
    ),
    entry!(
        "SD16",
        "semidihedral of order 16",
        16,
        8,
        ["(0 1 2 3 4 5 6 7)", "(1 3)(2 6)(5 7)"],
        Some("gens: a b\nrels: a^8, b^2, b a b a^-3")
    ),
    entry!(
        "M16",
        "modular group of order 16",
        16,
        8,
        ["(0 1 2 3 4 5 6 7)", "(1 5)(3 7)"],
        Some("gens: a b\nrels: a^8, b^2, b a b a^-5")
    ),
    entry!(
        "C4:C4",
        "semidirect product of two cyclic groups of order 4",
        16,
        16,
        [
            "(0 1 2 3)(4 14 11 8)(5 9 12 15)(6 7 13 10)",
            "(0 4 5 6)(1 8 9 10)(2 11 12 13)(3 14 15 7)"
        ],
        Some("gens: a b\nrels: a^4, b^4, b^-1 a b a")
    ),
    entry!(
        "C2^2:C4",
        "semidirect product (C4 x C2) : C2",
        16,
        16,
        [
            "(0 1 2 3)(4 9 12 6)(5 8 13 14)(7 10 11 15)",
            "(0 4)(1 9)(2 12)(3 6)(5 7)(8 10)(11 13)(14 15)",
            "(0 5)(1 10)(2 13)(3 15)(4 7)(6 14)(8 9)(11 12)"
        ],
        Some("gens: a b c\nrels: a^4, b^2, c^2, [a, b], [b, c], c a c a^-1 b^-1")
    ),
    entry!(
        "C2xC2xC4",
        "direct product C2 x C2 x C4",
        16,
        8,
        ["(0 1)", "(2 3)", "(4 5 6 7)"],
        None
    ),
    entry!(
        "C2xD4",
        "direct product of C2 and the dihedral group of order 8",
        16,
        6,
        ["(0 1 2 3)", "(0 2)", "(4 5)"],
        None
    ),
    entry!(
        "C2xQ8",
        "direct product of C2 and the quaternion group",
        16,
        10,
        ["(0 1 2 3)(4 5 6 7)", "(0 4 2 6)(1 7 3 5)", "(8 9)"],
        None
    ),
    entry!(
        "C4oD4",
        "central product of C4 and D4 (Pauli group)",
        16,
        16,
        [
            "(0 1 2 3)(4 13 10 5)(6 8 7 11)(9 15 14 12)",
            "(0 4)(1 5)(2 10)(3 13)(6 14)(7 9)(8 15)(11 12)",
            "(0 6 2 7)(1 8 3 11)(4 14 10 9)(5 15 13 12)"
        ],
        None
    ),
    entry!(
        "S4",
        "symmetric group on 4 points",
        24,
        4,
        ["(0 1 2 3)", "(0 1)"],
        None
    ),
    entry!(
        "Heis3",
        "Heisenberg group mod 3 (extraspecial of order 27, exponent 3)",
        27,
        9,
        ["(0 3 6)(1 4 7)(2 5 8)", "(3 4 5)(6 8 7)"],
        None
    ),
];

pub fn catalog() -> &'static [CatalogEntry] {
    CATALOG
}

pub fn lookup(name: &str) -> Result<&'static CatalogEntry> {
    CATALOG
        .iter()
        .find(|e| e.name.eq_ignore_ascii_case(name))
        .ok_or_else(|| Error::UnknownGroup(name.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fpres::{tc_enumerate, EnumerationLimits};

    #[test]
    fn orders_match_enumeration() {
        for e in catalog() {
            let g = e.group().unwrap();
            assert_eq!(g.order(), e.order, "{}", e.name);
        }
    }

    #[test]
    fn presentations_match_permutations() {
        for e in catalog() {
            let Some(p) = e.compact_presentation() else {
                continue;
            };
            assert_eq!(p.num_generators(), e.generators.len(), "{}", e.name);
            let g = e.group().unwrap();
            assert!(p.satisfied_by(g.generators()), "{}", e.name);
            let t = tc_enumerate(&p, &[], &EnumerationLimits::default()).unwrap();
            assert_eq!(t.coset_count(), e.order, "{}", e.name);
        }
    }

    #[test]
    fn at_least_twelve_entries() {
        assert!(catalog().len() >= 12);
        assert!(lookup("d4").is_ok());
        assert!(matches!(lookup("nope"), Err(Error::UnknownGroup(_))));
    }

    #[test]
    fn primes() {
        assert_eq!(prime_of_power(1), None);
        assert_eq!(prime_of_power(8), Some(2));
        assert_eq!(prime_of_power(27), Some(3));
        assert_eq!(prime_of_power(12), None);
    }

    #[test]
    fn structure_spot_checks() {
        // Q8 and Dic3 each have a unique involution; Heis3 has exponent 3.
        for (name, involutions) in [("Q8", 1), ("Dic3", 1), ("Q16", 1), ("D4", 5)] {
            let g = lookup(name).unwrap().group().unwrap();
            let n = g.elements().filter(|&e| g.element_order(e) == 2).count();
            assert_eq!(n, involutions, "{name}");
        }
        let h = lookup("Heis3").unwrap().group().unwrap();
        assert!(h.elements().all(|e| h.element_order(e) <= 3));
        assert!(!h.is_abelian(&h.whole()));
    }
}
