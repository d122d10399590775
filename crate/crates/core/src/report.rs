//! Versioned JSON reports, one per command.
//!
//! Every report carries `schema: 1`. Two runs with the same inputs and seed
//! give byte-identical [`Report::canonical_json`]; only `timing` varies.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::catalog::catalog;
use crate::check::{Sampling, Verification};
use crate::engel::{
    engel_power_scan, engel_projection_scan, identity_f_check, EngelScanConfig, EngelScanResult,
    IdentityFReport,
};
use crate::error::{Error, Result};
use crate::input::{GroupInput, InputDescriptor};
use crate::lie::{
    dimension_subgroups, jennings_recursion, lie_ring, summarize, verify_lazard, verify_series,
    LazardEntry, LieSummary,
};
use crate::nu::{build_nu, NuGroup, NuMode, NuOptions, TensorReport};
use crate::verify::{
    derived_map_check, verify_decomposition, verify_nu_relations, verify_tensor_set_closed,
    NuRelation,
};

pub const SCHEMA: u32 = 1;
pub const TOOL: &str = "nutensor";
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema: u32,
    pub tool: String,
    pub tool_version: String,
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub input: Option<InputDescriptor>,
    pub parameters: BTreeMap<String, Value>,
    /// False when any check in the result found a counterexample.
    pub passed: bool,
    /// Excluded from determinism comparisons.
    pub timing: Timing,
    pub result: ReportBody,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Timing {
    pub total_millis: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub enumeration_millis: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "data", rename_all = "kebab-case")]
pub enum ReportBody {
    Tensor(TensorReport),
    Nu(NuReport),
    Verify(VerifyReport),
    Engel(EngelReport),
    Lie(LieReport),
    Catalog(Vec<CatalogRow>),
    IdentityF(IdentityFReport),
}

impl Report {
    fn new(
        command: &str,
        input: Option<&GroupInput>,
        parameters: BTreeMap<String, Value>,
        passed: bool,
        result: ReportBody,
        started: Instant,
        enumeration_millis: Option<u64>,
    ) -> Self {
        Report {
            schema: SCHEMA,
            tool: TOOL.into(),
            tool_version: TOOL_VERSION.into(),
            command: command.into(),
            input: input.map(|i| i.descriptor.clone()),
            parameters,
            passed,
            timing: Timing {
                total_millis: started.elapsed().as_millis() as u64,
                enumeration_millis,
            },
            result,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    /// JSON with the timing zeroed.
    pub fn canonical_json(&self) -> String {
        let mut r = self.clone();
        r.timing = Timing::default();
        r.to_json()
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let r: Report = serde_json::from_str(text)?;
        if r.schema != SCHEMA {
            return Err(Error::Parse(format!(
                "unsupported report schema {}",
                r.schema
            )));
        }
        Ok(r)
    }
}

fn params(pairs: &[(&str, Value)]) -> BTreeMap<String, Value> {
    pairs
        .iter()
        .map(|(k, v)| (k.to_string(), v.clone()))
        .collect()
}

fn nu_params(opts: &NuOptions) -> Vec<(&'static str, Value)> {
    vec![
        ("mode", opts.mode.as_str().into()),
        ("max_cosets", opts.limits.max_cosets.into()),
        ("time_limit_secs", opts.limits.time_limit.as_secs().into()),
        ("max_group_order", opts.max_group_order.into()),
    ]
}

fn build(input: &GroupInput, opts: &NuOptions) -> Result<NuGroup> {
    let mut opts = opts.clone();
    if opts.compact.is_none() {
        opts.compact = input.compact.clone();
    }
    build_nu(input.group.clone(), &opts)
}

/// `tensor <group>`: orders of ν(G), G⊗G, μ(G) and the tensor invariants.
pub fn tensor(input: &GroupInput, opts: &NuOptions) -> Result<Report> {
    let started = Instant::now();
    let nu = build(input, opts)?;
    let r = nu.report()?;
    let passed = r.order_law_holds() && r.derived_law_holds();
    Ok(Report::new(
        "tensor",
        Some(input),
        params(&nu_params(opts)),
        passed,
        ReportBody::Tensor(r),
        started,
        Some(nu.enumeration_millis() as u64),
    ))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NuReport {
    pub mode: NuMode,
    pub group_order: usize,
    pub nu_order: usize,
    pub generators: Vec<String>,
    pub relator_count: usize,
    /// Generator-triples route: whether all element triples satisfy the
    /// defining relations in the enumerated group.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub triple_certificate: Option<bool>,
    pub embeddings_consistent: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub routes: Option<RouteCheck>,
}

/// Comparison with the other construction route.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RouteCheck {
    pub other_mode: NuMode,
    pub nu_order: usize,
    pub tensor_order: usize,
    pub tensor_invariants: Option<Vec<u64>>,
    pub agree: bool,
}

/// Compares two constructions of ν(G): orders, μ(G), and the structure of
/// the tensor subgroup.
pub fn compare_routes(a: &NuGroup, b: &NuGroup) -> Result<RouteCheck> {
    let (ra, rb) = (a.report()?, b.report()?);
    Ok(RouteCheck {
        other_mode: b.mode(),
        nu_order: rb.nu_order,
        tensor_order: rb.tensor_order,
        tensor_invariants: rb.tensor_invariants.clone(),
        agree: ra.nu_order == rb.nu_order
            && ra.tensor_order == rb.tensor_order
            && ra.mu_order == rb.mu_order
            && ra.tensor_abelian == rb.tensor_abelian
            && ra.tensor_invariants == rb.tensor_invariants
            && ra.tensor_class == rb.tensor_class,
    })
}

/// `nu <group>`: ν(G) by the chosen route, compared with the other route
/// when `check_routes` is set and the group has a compact presentation.
pub fn nu(input: &GroupInput, opts: &NuOptions, check_routes: bool) -> Result<Report> {
    let started = Instant::now();
    let nu = build(input, opts)?;
    let triple_certificate =
        (nu.mode() == NuMode::GeneratorTriples).then(|| nu.triple_relations_hold().is_none());
    let routes = if check_routes && input.compact.is_some() {
        let other = NuOptions {
            mode: match nu.mode() {
                NuMode::AllElements => NuMode::GeneratorTriples,
                NuMode::GeneratorTriples => NuMode::AllElements,
            },
            ..opts.clone()
        };
        Some(compare_routes(&nu, &build(input, &other)?)?)
    } else {
        None
    };
    let body = NuReport {
        mode: nu.mode(),
        group_order: nu.group().order(),
        nu_order: nu.ambient().order(),
        generators: nu.presentation().names().to_vec(),
        relator_count: nu.presentation().relators().len(),
        triple_certificate,
        embeddings_consistent: nu.embeddings_consistent(),
        routes,
    };
    let passed = body.embeddings_consistent
        && body.triple_certificate != Some(false)
        && body.routes.as_ref().is_none_or(|r| r.agree);
    let mut p = nu_params(opts);
    p.push(("check_routes", check_routes.into()));
    Ok(Report::new(
        "nu",
        Some(input),
        params(&p),
        passed,
        ReportBody::Nu(body),
        started,
        Some(nu.enumeration_millis() as u64),
    ))
}

/// One item of `verify --lemmas`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum VerifyCheck {
    Relation(NuRelation),
    /// The set of tensors is normal and closed under commutators.
    Closed,
    /// Decomposition of ν(G)′.
    Decomp,
    /// The derived map and μ(G).
    Rho,
}

impl VerifyCheck {
    pub fn all() -> Vec<VerifyCheck> {
        let mut v: Vec<_> = NuRelation::ALL
            .iter()
            .map(|&r| VerifyCheck::Relation(r))
            .collect();
        v.extend([VerifyCheck::Closed, VerifyCheck::Decomp, VerifyCheck::Rho]);
        v
    }

    /// Parses a comma-separated list such as `i..v,closed,decomp,rho` or
    /// `ii,iv`. Duplicates are dropped; order is canonical.
    pub fn parse_list(s: &str) -> Result<Vec<VerifyCheck>> {
        let mut out = Vec::new();
        for item in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            match item {
                "all" => out.extend(VerifyCheck::all()),
                "closed" => out.push(VerifyCheck::Closed),
                "decomp" => out.push(VerifyCheck::Decomp),
                "rho" => out.push(VerifyCheck::Rho),
                _ => {
                    if let Some((a, b)) = item.split_once("..") {
                        let (a, b) = (NuRelation::from_str(a)?, NuRelation::from_str(b)?);
                        if a > b {
                            return Err(Error::Parse(format!("empty range {item:?}")));
                        }
                        out.extend(
                            NuRelation::ALL
                                .iter()
                                .filter(|&&r| a <= r && r <= b)
                                .map(|&r| VerifyCheck::Relation(r)),
                        );
                    } else {
                        out.push(VerifyCheck::Relation(NuRelation::from_str(item)?));
                    }
                }
            }
        }
        if out.is_empty() {
            return Err(Error::Parse("no checks selected".into()));
        }
        out.sort();
        out.dedup();
        Ok(out)
    }
}

impl fmt::Display for VerifyCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VerifyCheck::Relation(r) => write!(f, "{}", r.label()),
            VerifyCheck::Closed => f.write_str("closed"),
            VerifyCheck::Decomp => f.write_str("decomp"),
            VerifyCheck::Rho => f.write_str("rho"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub group_order: usize,
    pub nu_order: usize,
    pub checks: Vec<Verification>,
}

/// `verify <group> --lemmas …`.
pub fn verify(
    input: &GroupInput,
    opts: &NuOptions,
    checks: &[VerifyCheck],
    sampling: &Sampling,
) -> Result<Report> {
    let started = Instant::now();
    let nu = build(input, opts)?;
    let relations: Vec<NuRelation> = checks
        .iter()
        .filter_map(|c| match c {
            VerifyCheck::Relation(r) => Some(*r),
            _ => None,
        })
        .collect();
    let mut results = verify_nu_relations(&nu, &relations, sampling);
    for c in checks {
        match c {
            VerifyCheck::Relation(_) => {}
            VerifyCheck::Closed => results.push(verify_tensor_set_closed(&nu)),
            VerifyCheck::Decomp => results.push(verify_decomposition(&nu)),
            VerifyCheck::Rho => results.push(derived_map_check(&nu)),
        }
    }
    let passed = results.iter().all(|v| v.passed);
    let mut p = nu_params(opts);
    let list: Vec<String> = checks.iter().map(ToString::to_string).collect();
    p.push(("checks", list.into()));
    p.push(("seed", sampling.seed.into()));
    p.push(("samples", sampling.samples.into()));
    p.push(("exhaustive_cap", sampling.exhaustive_cap.into()));
    Ok(Report::new(
        "verify",
        Some(input),
        params(&p),
        passed,
        ReportBody::Verify(VerifyReport {
            group_order: nu.group().order(),
            nu_order: nu.ambient().order(),
            checks: results,
        }),
        started,
        Some(nu.enumeration_millis() as u64),
    ))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EngelReport {
    pub scan: EngelScanResult,
    /// Each recorded `q` re-tested by direct iteration.
    pub minimality_holds: bool,
    /// Projection of Engel conditions from ν(G) to G for `q ∈ {1, p, p²}`.
    pub projection: Verification,
}

/// `engel <group> -p P -m M -n N`.
pub fn engel(input: &GroupInput, opts: &NuOptions, cfg: &EngelScanConfig) -> Result<Report> {
    let started = Instant::now();
    let nu = build(input, opts)?;
    let scan = engel_power_scan(&nu, cfg);
    let minimality_holds = scan.verify_minimality(&nu);
    let projection = engel_projection_scan(&nu, &[1, cfg.p, cfg.p * cfg.p], cfg.n);
    let passed = scan.all_pairs_satisfied && minimality_holds && projection.passed;
    let mut p = nu_params(opts);
    p.extend([
        ("p", cfg.p.into()),
        ("m", cfg.m.into()),
        ("n", cfg.n.into()),
    ]);
    Ok(Report::new(
        "engel",
        Some(input),
        params(&p),
        passed,
        ReportBody::Engel(EngelReport {
            scan,
            minimality_holds,
            projection,
        }),
        started,
        Some(nu.enumeration_millis() as u64),
    ))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LieReport {
    pub summary: LieSummary,
    /// The product formula and the recursion give the same series.
    pub formula_matches_recursion: bool,
    pub series: Verification,
    pub axioms: Verification,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lazard: Option<LazardReport>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LazardReport {
    pub q: u64,
    pub check: Verification,
    pub entries: Vec<LazardEntry>,
}

/// `lie <group> -p P [--lazard Q]`.
pub fn lie(input: &GroupInput, p: u64, lazard: Option<u64>) -> Result<Report> {
    let started = Instant::now();
    let g = &input.group;
    let s = dimension_subgroups(g, p)?;
    let formula_matches_recursion = jennings_recursion(g, p)?.terms == s.terms;
    let l = lie_ring(g, &s);
    let series = verify_series(g, &s)?;
    let axioms = l.verify_axioms(&s);
    let lazard = match lazard {
        Some(q) => {
            let (check, entries) = verify_lazard(&l, q)?;
            Some(LazardReport { q, check, entries })
        }
        None => None,
    };
    let passed = formula_matches_recursion
        && series.passed
        && axioms.passed
        && lazard.as_ref().is_none_or(|z| z.check.passed);
    let mut pr = vec![("p", Value::from(p))];
    if let Some(q) = lazard.as_ref().map(|z| z.q) {
        pr.push(("lazard", q.into()));
    }
    Ok(Report::new(
        "lie",
        Some(input),
        params(&pr),
        passed,
        ReportBody::Lie(LieReport {
            summary: summarize(&l, &s),
            formula_matches_recursion,
            series,
            axioms,
            lazard,
        }),
        started,
        None,
    ))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogRow {
    pub name: String,
    pub order: usize,
    pub description: String,
    pub compact_presentation: bool,
}

/// `catalog list`.
pub fn catalog_list() -> Report {
    let started = Instant::now();
    let rows = catalog()
        .iter()
        .map(|e| CatalogRow {
            name: e.name.into(),
            order: e.order,
            description: e.description.into(),
            compact_presentation: e.presentation.is_some(),
        })
        .collect();
    Report::new(
        "catalog",
        None,
        BTreeMap::new(),
        true,
        ReportBody::Catalog(rows),
        started,
        None,
    )
}

/// `identity-f <group> -n N -p P -m M`.
pub fn identity_f(input: &GroupInput, n: usize, p: u64, m: u32) -> Result<Report> {
    let started = Instant::now();
    let r = identity_f_check(&input.group, n, p, m)?;
    Ok(Report::new(
        "identity-f",
        Some(input),
        params(&[("n", n.into()), ("p", p.into()), ("m", m.into())]),
        r.holds,
        ReportBody::IdentityF(r),
        started,
        None,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fpres::EnumerationLimits;
    use crate::input::resolve;

    fn input(name: &str) -> GroupInput {
        resolve(name, &EnumerationLimits::default()).unwrap()
    }

    #[test]
    fn check_lists() {
        assert_eq!(
            VerifyCheck::parse_list("i..v,closed,decomp,rho").unwrap(),
            VerifyCheck::all()
        );
        assert_eq!(
            VerifyCheck::parse_list("iv, ii,ii").unwrap(),
            vec![
                VerifyCheck::Relation(NuRelation::II),
                VerifyCheck::Relation(NuRelation::IV)
            ]
        );
        assert_eq!(VerifyCheck::parse_list("ii..iii").unwrap().len(), 2);
        assert!(VerifyCheck::parse_list("iv..ii").is_err());
        assert!(VerifyCheck::parse_list("vi").is_err());
        assert!(VerifyCheck::parse_list("").is_err());
    }

    #[test]
    fn tensor_c2() {
        let r = tensor(&input("C2"), &NuOptions::default()).unwrap();
        assert!(r.passed);
        let ReportBody::Tensor(t) = &r.result else {
            panic!()
        };
        assert_eq!((t.tensor_order, t.nu_order), (2, 8));
    }

    #[test]
    fn json_round_trip_and_determinism() {
        let i = input("S3");
        let a = verify(
            &i,
            &NuOptions::default(),
            &VerifyCheck::all(),
            &Sampling::default(),
        )
        .unwrap();
        let b = verify(
            &i,
            &NuOptions::default(),
            &VerifyCheck::all(),
            &Sampling::default(),
        )
        .unwrap();
        assert!(a.passed);
        assert_eq!(a.canonical_json(), b.canonical_json());
        let back = Report::from_json(&a.to_json()).unwrap();
        assert_eq!(back, a);
        let v: Value = serde_json::from_str(&a.to_json()).unwrap();
        assert_eq!(v["schema"], 1);
        assert_eq!(v["result"]["kind"], "verify");
    }

    #[test]
    fn nu_with_routes() {
        let r = nu(&input("D4"), &NuOptions::default(), true).unwrap();
        assert!(r.passed);
        let ReportBody::Nu(n) = &r.result else {
            panic!()
        };
        assert_eq!(n.nu_order, 32 * 64);
        assert!(n.routes.as_ref().unwrap().agree);
    }

    #[test]
    fn lie_and_identity_f() {
        let r = lie(&input("D4"), 2, Some(2)).unwrap();
        assert!(r.passed);
        assert!(lie(&input("S3"), 2, None).is_err());
        assert!(identity_f(&input("D4"), 2, 2, 1).unwrap().passed);
        assert!(catalog_list().passed);
    }
}
