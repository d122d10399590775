//! Acceptance suite: one pass/fail line per criterion.
//!
//! Runs without the libtest harness so the lines always print. Each group's
//! ν(G) is built once per route and every criterion that needs it is
//! evaluated before it is dropped.

use std::collections::{BTreeMap, HashMap};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use nutensor::catalog::{catalog, CatalogEntry};
use nutensor::check::Sampling;
use nutensor::engel::{
    engel_power_scan, engel_projection_scan, identity_f_check, left_engel_set, EngelScanConfig,
};
use nutensor::lie::{
    dimension_subgroups, jennings_recursion, lie_ring, verify_lazard, verify_series,
};
use nutensor::nu::{build_nu, tensor_order_census, NuGroup, NuMode, NuOptions, TensorReport};
use nutensor::verify::{
    derived_map_check, verify_decomposition, verify_nu_relations, verify_tensor_set_closed,
    NuRelation,
};
use nutensor::{Elem, FiniteGroup, Subgroup};

const TITLES: [&str; 13] = [
    "order law |nu(G)| = |G(x)G|*|G|^2, catalog groups of order <= 16, within 120 s",
    "abelian tensor squares match prod gcd(d_i, d_j) and its invariant factors",
    "defining identities (i)-(v): exhaustive for |G| <= 8, 10^4 samples up to 16",
    "tensor set normal and commutator-closed, |G| <= 12",
    "|nu(G)'| = |G(x)G|*|G'|^2 and set-product decomposition, |G| <= 12",
    "|G(x)G| = |mu(G)|*|G'| and mu(G) central, |G| <= 16",
    "all-elements and generator-triples routes agree",
    "dimension subgroups: product formula = recursion; series compatibility",
    "Lie axioms; Lazard comparison for q in {p, p^2}; ad-index bound",
    "Engel projection, Engel set = Fitting subgroup, power scan on D4 and Q8",
    "tensors [x, y^phi] have p-power order in every catalog p-group",
    "identity f holds on class-2 groups (n = 2) and abelian groups",
    "nu(D4) all-elements within 10 s; whole suite within 10 min",
];

#[derive(Default)]
struct Criterion {
    cases: usize,
    failures: Vec<String>,
    notes: Vec<String>,
    elapsed: Duration,
}

impl Criterion {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures.push(what());
        }
    }
}

struct Suite {
    criteria: Vec<Criterion>,
}

impl Suite {
    fn c(&mut self, id: usize) -> &mut Criterion {
        &mut self.criteria[id - 1]
    }

    /// Runs `f` and charges its wall time to criterion `id`.
    fn timed<T>(&mut self, id: usize, f: impl FnOnce(&mut Criterion) -> T) -> T {
        let t = Instant::now();
        let out = f(self.c(id));
        self.c(id).elapsed += t.elapsed();
        out
    }
}

fn options(mode: NuMode, e: &CatalogEntry) -> NuOptions {
    NuOptions {
        mode,
        compact: e.compact_presentation(),
        max_group_order: 27,
        ..Default::default()
    }
}

fn primes_dividing(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Invariant factors of `⊕ C_{gcd(d_i, d_j)}`, via elementary divisors.
fn abelian_oracle(d: &[u64]) -> (u64, Vec<u64>) {
    let mut order = 1;
    let mut by_prime: BTreeMap<u64, Vec<u64>> = BTreeMap::new();
    for &a in d {
        for &b in d {
            let mut g = gcd(a, b);
            order *= g;
            for p in primes_dividing(g) {
                let mut q = 1;
                while g % p == 0 {
                    g /= p;
                    q *= p;
                }
                by_prime.entry(p).or_default().push(q);
            }
        }
    }
    let width = by_prime.values().map(Vec::len).max().unwrap_or(0);
    let mut factors = vec![1u64; width];
    for powers in by_prime.values_mut() {
        powers.sort_unstable();
        // largest powers go into the last factors
        for (slot, q) in factors.iter_mut().rev().zip(powers.iter().rev()) {
            *slot *= q;
        }
    }
    (order, factors)
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Largest nilpotent normal subgroup, found among all normal subgroups.
fn fitting_oracle(g: &FiniteGroup) -> Vec<Elem> {
    let whole = g.whole();
    let mut normals: Vec<Subgroup> = Vec::new();
    let push = |s: Subgroup, normals: &mut Vec<Subgroup>| {
        if !normals.contains(&s) {
            normals.push(s);
        }
    };
    for x in g.elements() {
        push(g.normal_closure(&[x], &whole), &mut normals);
    }
    // close under products
    let mut i = 0;
    while i < normals.len() {
        for j in 0..i {
            let gens: Vec<Elem> = normals[i]
                .generators()
                .iter()
                .chain(normals[j].generators())
                .copied()
                .collect();
            let s = g.normal_closure(&gens, &whole);
            push(s, &mut normals);
        }
        i += 1;
    }
    let nilpotent: Vec<&Subgroup> = normals
        .iter()
        .filter(|n| g.lower_central_series(n).reaches_identity())
        .collect();
    let top = nilpotent.iter().max_by_key(|n| n.order()).unwrap();
    assert!(
        nilpotent.iter().all(|n| n.is_subset_of(top)),
        "nilpotent normal subgroups have a largest member"
    );
    let mut out: Vec<Elem> = top.elements().to_vec();
    out.sort();
    out
}

fn nu_checks(s: &mut Suite, e: &CatalogEntry, nu: &NuGroup, r: &TensorReport) {
    let name = e.name;
    let order = e.order;
    if order <= 16 {
        s.timed(3, |c| {
            let sampling = Sampling {
                exhaustive_cap: 8,
                samples: 10_000,
                seed: 2024,
            };
            for v in verify_nu_relations(nu, &NuRelation::ALL, &sampling) {
                let enough = v.exhaustive || v.cases >= 10_000;
                c.check(v.passed && enough && v.exhaustive == (order <= 8), || {
                    format!("{name} {}: {:?}", v.check, v.counterexample)
                });
            }
        });
    }
    if order <= 12 {
        s.timed(4, |c| {
            let v = verify_tensor_set_closed(nu);
            c.check(v.passed && v.exhaustive, || format!("{name}: {:?}", v.notes));
        });
        s.timed(5, |c| {
            let v = verify_decomposition(nu);
            let derived = nu.ambient().derived_subgroup(&nu.ambient().whole()).order();
            let expected = r.tensor_order * r.derived_order * r.derived_order;
            c.check(v.passed && derived == expected, || {
                format!("{name}: |nu'| = {derived}, expected {expected}; {:?}", v.notes)
            });
        });
    }
    if order <= 16 {
        s.timed(6, |c| {
            let v = derived_map_check(nu);
            let amb = nu.ambient();
            let central = nu.mu().elements().iter().all(|&m| {
                amb.generator_elems().iter().all(|&g| amb.mul(m, g) == amb.mul(g, m))
            });
            c.check(
                v.passed && central && r.tensor_order == r.mu_order * r.derived_order,
                || format!("{name}: {:?}", v.notes),
            );
        });
    }
    if order <= 12 {
        s.timed(10, |c| {
            let primes = if order == 1 {
                vec![2]
            } else {
                primes_dividing(order as u64)
            };
            for p in primes {
                for n in 1..=3 {
                    let v = engel_projection_scan(nu, &[1, p, p * p], n);
                    c.check(v.passed && v.exhaustive, || {
                        format!("{name} p={p} n={n}: {:?}", v.counterexample)
                    });
                }
            }
        });
    }
    if matches!(name, "D4" | "Q8") {
        s.timed(10, |c| {
            let cfg = EngelScanConfig::new(2, 3, 2).unwrap();
            let scan = engel_power_scan(nu, &cfg);
            let every_pair = scan.pairs.len() == order * order
                && scan.pairs.iter().all(|p| p.q.is_some());
            c.check(every_pair && scan.verify_minimality(nu), || {
                format!("{name}: power scan incomplete")
            });
            c.notes.push(format!(
                "{name}: q recorded for {}/{} pairs",
                scan.pairs.iter().filter(|p| p.q.is_some()).count(),
                scan.pairs.len()
            ));
        });
    }
    if let Some(p) = e.prime() {
        s.timed(11, |c| {
            let census = tensor_order_census(nu);
            let ok = census.keys().all(|&o| {
                let mut o = o;
                while o % p == 0 {
                    o /= p;
                }
                o == 1
            });
            c.check(ok, || format!("{name}: tensor orders {census:?}"));
        });
    }
}

fn group_checks(s: &mut Suite, e: &CatalogEntry, g: &FiniteGroup) {
    let name = e.name;
    if let Some(p) = e.prime() {
        s.timed(8, |c| {
            let a = dimension_subgroups(g, p).unwrap();
            let b = jennings_recursion(g, p).unwrap();
            c.check(a.terms == b.terms, || format!("{name}: {:?} vs {:?}", a.orders(), b.orders()));
            let v = verify_series(g, &a).unwrap();
            c.check(v.passed && v.exhaustive, || format!("{name}: {:?}", v.counterexample));
        });
        s.timed(9, |c| {
            let series = dimension_subgroups(g, p).unwrap();
            let l = lie_ring(g, &series);
            let ax = l.verify_axioms(&series);
            c.check(ax.passed, || format!("{name}: axioms {:?} {:?}", ax.counterexample, ax.notes));
            for q in [p, p * p] {
                let (v, entries) = verify_lazard(&l, q).unwrap();
                let bound = entries.iter().all(|z| z.order_bound_holds);
                c.check(v.passed && bound, || format!("{name} q={q}: {entries:?}"));
            }
        });
    }
    if e.order <= 16 {
        s.timed(10, |c| {
            let mut engel = left_engel_set(g, g.order());
            engel.sort();
            c.check(engel == fitting_oracle(g), || format!("{name}: Engel set differs"));
        });
    }
    let whole = g.whole();
    let class = g.lower_central_series(&whole).class();
    let abelian = g.is_abelian(&whole);
    if class == Some(2) || abelian {
        s.timed(12, |c| {
            let combos: Vec<(usize, u64, u32)> = if abelian {
                iproduct(&[1, 2], &[2, 3], &[1, 2])
            } else {
                iproduct(&[2], &[2, 3], &[1, 2])
            };
            for (n, p, m) in combos {
                let r = identity_f_check(g, n, p, m).unwrap();
                c.check(r.holds, || format!("{name} n={n} p={p} m={m}: {:?}", r.counterexample));
            }
        });
    }
}

fn iproduct(ns: &[usize], ps: &[u64], ms: &[u32]) -> Vec<(usize, u64, u32)> {
    let mut out = Vec::new();
    for &n in ns {
        for &p in ps {
            for &m in ms {
                out.push((n, p, m));
            }
        }
    }
    out
}

fn main() -> ExitCode {
    let suite_start = Instant::now();
    let mut s = Suite {
        criteria: (0..13).map(|_| Criterion::default()).collect(),
    };
    let abelian_cases: HashMap<&str, &[u64]> = [
        ("C2", &[2][..]),
        ("C3", &[3]),
        ("C4", &[4]),
        ("C6", &[6]),
        ("C2xC2", &[2, 2]),
        ("C2xC4", &[2, 4]),
    ]
    .into_iter()
    .collect();

    for e in catalog() {
        let g = e.group().unwrap();
        group_checks(&mut s, e, &g);
        if e.order > 16 && e.prime().is_none() {
            continue;
        }
        // generator-triples route, certified against all element triples;
        // larger p-groups are built only for the census
        let id = if e.order <= 16 { 1 } else { 11 };
        let gens = s.timed(id, |c| {
            let nu = build_nu(e.group().unwrap(), &options(NuMode::GeneratorTriples, e));
            let nu = match nu {
                Ok(nu) => nu,
                Err(err) => {
                    c.check(false, || format!("{}: {err}", e.name));
                    return None;
                }
            };
            if e.order > 16 {
                let r = nu.report().unwrap();
                return Some((nu, r));
            }
            let r = nu.report().unwrap();
            let cert = nu.triple_relations_hold();
            c.check(r.order_law_holds() && cert.is_none(), || {
                format!("{}: {r:?} certificate {cert:?}", e.name)
            });
            Some((nu, r))
        });
        let Some((gens_nu, gens_r)) = gens else {
            continue;
        };
        let all = e.compact_presentation().is_some().then(|| {
            s.timed(7, |c| {
                let t = Instant::now();
                let nu = build_nu(e.group().unwrap(), &options(NuMode::AllElements, e)).unwrap();
                let elapsed = t.elapsed();
                let r = nu.report().unwrap();
                let same = r.nu_order == gens_r.nu_order
                    && r.tensor_order == gens_r.tensor_order
                    && r.mu_order == gens_r.mu_order
                    && r.tensor_invariants == gens_r.tensor_invariants
                    && r.tensor_class == gens_r.tensor_class;
                c.check(same, || format!("{}: {r:?} vs {gens_r:?}", e.name));
                (nu, r, elapsed)
            })
        });
        if let Some(d) = abelian_cases.get(e.name) {
            s.timed(2, |c| {
                let (order, factors) = abelian_oracle(d);
                let r = all.as_ref().map_or(&gens_r, |a| &a.1);
                c.check(
                    r.tensor_order as u64 == order && r.tensor_invariants.as_ref() == Some(&factors),
                    || format!("{}: {:?} vs oracle {order} {factors:?}", e.name, r.tensor_invariants),
                );
            });
        }
        if e.name == "D4" {
            let (_, _, elapsed) = all.as_ref().unwrap();
            let c = s.c(13);
            c.check(*elapsed <= Duration::from_secs(10), || {
                format!("nu(D4) all-elements took {elapsed:?}")
            });
            c.notes.push(format!("nu(D4) all-elements: {} ms", elapsed.as_millis()));
        }
        match &all {
            Some((nu, r, _)) => nu_checks(&mut s, e, nu, r),
            None => nu_checks(&mut s, e, &gens_nu, &gens_r),
        }
    }

    let c1 = s.c(1).elapsed;
    s.c(1)
        .check(c1 <= Duration::from_secs(120), || format!("took {c1:?}"));
    let total = suite_start.elapsed();
    let c13 = s.c(13);
    c13.check(total <= Duration::from_secs(600), || format!("suite took {total:?}"));
    c13.notes.push(format!("suite: {:.1} s", total.as_secs_f64()));

    let mut failed = 0;
    for (i, (c, title)) in s.criteria.iter().zip(TITLES).enumerate() {
        let status = if c.failures.is_empty() && c.cases > 0 {
            "PASS"
        } else {
            failed += 1;
            "FAIL"
        };
        println!(
            "[{status}] {:>2} {title} ({} cases, {:.1} s)",
            i + 1,
            c.cases,
            c.elapsed.as_secs_f64()
        );
        for n in &c.notes {
            println!("       {n}");
        }
        for f in c.failures.iter().take(5) {
            println!("       failure: {f}");
        }
    }
    println!(
        "acceptance: {} of 13 criteria passed in {:.1} s",
        13 - failed,
        total.as_secs_f64()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
