use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Parser, Subcommand, ValueEnum};
use nutensor::cache::{cache_key, Cache, Lookup};
use nutensor::check::{Sampling, Verification};
use nutensor::engel::EngelScanConfig;
use nutensor::fpres::EnumerationLimits;
use nutensor::input::{resolve, GroupInput};
use nutensor::nu::{NuMode, NuOptions};
use nutensor::report::{self, Report, ReportBody, VerifyCheck};
use nutensor::Error;

/// Non-abelian tensor squares and the group ν(G) of finite groups.
///
/// GROUP is a catalog name (see `nutensor catalog list`), `@file.perm` or
/// `@file.pres`. Exit status: 0 when every check passes, 1 when a
/// counterexample is found, 2 on usage, input or limit errors.
#[derive(Parser, Debug)]
#[command(name = "nutensor", version)]
struct Cli {
    /// Write the JSON report to PATH (`-` for standard output).
    #[arg(long, global = true, value_name = "PATH")]
    json: Option<PathBuf>,
    /// Seed for sampled checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Neither read nor write the result cache.
    #[arg(long, global = true)]
    no_cache: bool,
    /// Coset limit for enumerating ν(G).
    #[arg(long, global = true, default_value_t = 2_000_000)]
    max_cosets: usize,
    /// Time limit in seconds for enumerating ν(G).
    #[arg(long, global = true, default_value_t = 60)]
    time_limit: u64,
    /// Largest |G| for which ν(G) is attempted.
    #[arg(long, global = true, default_value_t = 16)]
    max_order: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Mode {
    /// Relations over all triples of elements.
    All,
    /// Relations over triples of generators and their inverses.
    Gens,
}

impl From<Mode> for NuMode {
    fn from(m: Mode) -> Self {
        match m {
            Mode::All => NuMode::AllElements,
            Mode::Gens => NuMode::GeneratorTriples,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Orders of ν(G), G⊗G and μ(G), and the structure of G⊗G.
    Tensor {
        group: String,
        #[arg(long, value_enum, default_value_t = Mode::All)]
        mode: Mode,
    },
    /// Build ν(G) and compare the two construction routes.
    Nu {
        group: String,
        #[arg(long, value_enum, default_value_t = Mode::All)]
        mode: Mode,
        /// Skip building ν(G) by the other route.
        #[arg(long)]
        no_route_check: bool,
    },
    /// Check the defining identities and structure of ν(G).
    Verify {
        group: String,
        /// Comma-separated: relations `i`..`v` (ranges like `i..v`),
        /// `closed`, `decomp`, `rho`, or `all`.
        #[arg(long, default_value = "all")]
        lemmas: String,
        #[arg(long, value_enum, default_value_t = Mode::All)]
        mode: Mode,
        /// Random tuples per identity when not exhaustive.
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        /// Check every tuple when |G| is at most this.
        #[arg(long, default_value_t = 8)]
        exhaustive_cap: usize,
    },
    /// Least q | p^m with [x,y^φ]^q left n-Engel, for every pair x, y.
    Engel {
        group: String,
        #[arg(short)]
        p: u64,
        #[arg(short)]
        m: u32,
        #[arg(short)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Mode::All)]
        mode: Mode,
    },
    /// Dimension subgroups and the graded Lie ring over F_p.
    Lie {
        group: String,
        #[arg(short)]
        p: u64,
        /// Also compare (ad x̃)^Q with ad of the image of x^Q.
        #[arg(long, value_name = "Q")]
        lazard: Option<u64>,
    },
    /// Built-in groups.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Evaluate [z, _n c, _n c^p, …, _n c^(p^m)] with c = [x, y] on all triples.
    IdentityF {
        group: String,
        #[arg(short)]
        n: usize,
        #[arg(short)]
        p: u64,
        #[arg(short)]
        m: u32,
    },
}

#[derive(Subcommand, Debug)]
enum CatalogAction {
    /// List every entry with its order.
    List,
}

fn nu_options(cli: &Cli, mode: Mode) -> NuOptions {
    NuOptions {
        mode: mode.into(),
        limits: EnumerationLimits {
            max_cosets: cli.max_cosets,
            time_limit: Duration::from_secs(cli.time_limit),
            ..Default::default()
        },
        max_group_order: cli.max_order,
        ..Default::default()
    }
}

fn limits(cli: &Cli) -> EnumerationLimits {
    nu_options(cli, Mode::All).limits
}

/// Runs the command, going through the cache for group computations.
fn run(cli: &Cli) -> nutensor::Result<Report> {
    let group_of = |spec: &str| resolve(spec, &limits(cli));
    let cached = |input: &GroupInput, f: &dyn Fn() -> nutensor::Result<Report>| {
        let options = format!(
            "{:?} seed={} max_cosets={} time_limit={} max_order={}",
            cli.command, cli.seed, cli.max_cosets, cli.time_limit, cli.max_order
        );
        with_cache(
            cli,
            &cli.command_name(),
            &input.canonical_text(),
            &options,
            f,
        )
    };
    match &cli.command {
        Command::Tensor { group, mode } => {
            let input = group_of(group)?;
            cached(&input, &|| report::tensor(&input, &nu_options(cli, *mode)))
        }
        Command::Nu {
            group,
            mode,
            no_route_check,
        } => {
            let input = group_of(group)?;
            cached(&input, &|| {
                report::nu(&input, &nu_options(cli, *mode), !no_route_check)
            })
        }
        Command::Verify {
            group,
            lemmas,
            mode,
            samples,
            exhaustive_cap,
        } => {
            let checks = VerifyCheck::parse_list(lemmas)?;
            let input = group_of(group)?;
            let sampling = Sampling {
                exhaustive_cap: *exhaustive_cap,
                samples: *samples,
                seed: cli.seed,
            };
            cached(&input, &|| {
                report::verify(&input, &nu_options(cli, *mode), &checks, &sampling)
            })
        }
        Command::Engel {
            group,
            p,
            m,
            n,
            mode,
        } => {
            let cfg = EngelScanConfig::new(*p, *m, *n)?;
            let input = group_of(group)?;
            cached(&input, &|| {
                report::engel(&input, &nu_options(cli, *mode), &cfg)
            })
        }
        Command::Lie { group, p, lazard } => {
            let input = group_of(group)?;
            cached(&input, &|| report::lie(&input, *p, *lazard))
        }
        Command::Catalog {
            action: CatalogAction::List,
        } => Ok(report::catalog_list()),
        Command::IdentityF { group, n, p, m } => {
            let input = group_of(group)?;
            report::identity_f(&input, *n, *p, *m)
        }
    }
}

impl Cli {
    fn command_name(&self) -> String {
        match &self.command {
            Command::Tensor { .. } => "tensor",
            Command::Nu { .. } => "nu",
            Command::Verify { .. } => "verify",
            Command::Engel { .. } => "engel",
            Command::Lie { .. } => "lie",
            Command::Catalog { .. } => "catalog",
            Command::IdentityF { .. } => "identity-f",
        }
        .to_string()
    }
}

fn with_cache(
    cli: &Cli,
    command: &str,
    group: &str,
    options: &str,
    f: &dyn Fn() -> nutensor::Result<Report>,
) -> nutensor::Result<Report> {
    let cache = if cli.no_cache {
        None
    } else {
        Cache::from_env()
    };
    let Some(cache) = cache else {
        return f();
    };
    let key = cache_key(command, group, options);
    match cache.load(&key) {
        Lookup::Hit(r) => return Ok(*r),
        Lookup::Miss => {}
        Lookup::Corrupt(why) => eprintln!("warning: ignoring corrupt cache entry: {why}"),
    }
    let r = f()?;
    if let Err(e) = cache.store(&key, &r) {
        eprintln!("warning: could not write cache entry: {e}");
    }
    Ok(r)
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "ok"
    } else {
        "FAILED"
    }
}

fn verification_line(out: &mut String, v: &Verification) {
    let how = if v.exhaustive {
        "exhaustive"
    } else {
        "sampled"
    };
    let _ = writeln!(
        out,
        "  {:<14} {:<6} {} cases, {how}",
        v.check,
        verdict(v.passed),
        v.cases
    );
    if let Some(w) = &v.counterexample {
        let _ = writeln!(out, "    counterexample: {}", w.words.join(", "));
    }
    for n in &v.notes {
        let _ = writeln!(out, "    {n}");
    }
}

fn summary(r: &Report) -> String {
    let mut out = String::new();
    match &r.result {
        ReportBody::Tensor(t) => {
            let _ = writeln!(
                out,
                "|G| = {}  |G'| = {}  |ν(G)| = {}  |G⊗G| = {}  |μ(G)| = {}",
                t.group_order, t.derived_order, t.nu_order, t.tensor_order, t.mu_order
            );
            match &t.tensor_invariants {
                Some(inv) => {
                    let _ = writeln!(out, "G⊗G abelian with invariants {inv:?}");
                }
                None => {
                    let _ = writeln!(
                        out,
                        "G⊗G non-abelian, nilpotency class {:?}",
                        t.tensor_class
                    );
                }
            }
            let _ = writeln!(out, "|ν(G)| = |G⊗G|·|G|²: {}", verdict(t.order_law_holds()));
            let _ = writeln!(
                out,
                "|G⊗G| = |μ(G)|·|G'|: {}",
                verdict(t.derived_law_holds())
            );
        }
        ReportBody::Nu(n) => {
            let _ = writeln!(
                out,
                "|G| = {}  |ν(G)| = {}  ({} route, {} generators, {} relators)",
                n.group_order,
                n.nu_order,
                n.mode.as_str(),
                n.generators.len(),
                n.relator_count
            );
            if let Some(c) = n.triple_certificate {
                let _ = writeln!(
                    out,
                    "all element triples satisfy the relations: {}",
                    verdict(c)
                );
            }
            let _ = writeln!(out, "embeddings of G: {}", verdict(n.embeddings_consistent));
            if let Some(rc) = &n.routes {
                let _ = writeln!(
                    out,
                    "{} route: |ν(G)| = {}, |G⊗G| = {}: {}",
                    rc.other_mode.as_str(),
                    rc.nu_order,
                    rc.tensor_order,
                    if rc.agree { "agrees" } else { "DISAGREES" }
                );
            }
        }
        ReportBody::Verify(v) => {
            let _ = writeln!(out, "|G| = {}  |ν(G)| = {}", v.group_order, v.nu_order);
            for c in &v.checks {
                verification_line(&mut out, c);
            }
        }
        ReportBody::Engel(e) => {
            let c = &e.scan.config;
            let found = e.scan.pairs.iter().filter(|p| p.q.is_some()).count();
            let _ = writeln!(
                out,
                "p = {} m = {} n = {}: q found for {}/{} pairs",
                c.p,
                c.m,
                c.n,
                found,
                e.scan.pairs.len()
            );
            let mut qs: Vec<u64> = e.scan.pairs.iter().filter_map(|p| p.q).collect();
            qs.sort_unstable();
            qs.dedup();
            let _ = writeln!(out, "distinct q: {qs:?}");
            let _ = writeln!(out, "minimality of q: {}", verdict(e.minimality_holds));
            verification_line(&mut out, &e.projection);
        }
        ReportBody::Lie(l) => {
            let s = &l.summary;
            let _ = writeln!(out, "p = {}  |D_i| = {:?}", s.p, s.series_orders);
            let _ = writeln!(
                out,
                "dim L = {} by degree {:?}; L_p by degree {:?}; class {:?}",
                s.total_dim, s.dims, s.lp_dims, s.nilpotency_class
            );
            let _ = writeln!(
                out,
                "product formula = recursion: {}",
                verdict(l.formula_matches_recursion)
            );
            verification_line(&mut out, &l.series);
            verification_line(&mut out, &l.axioms);
            if let Some(z) = &l.lazard {
                verification_line(&mut out, &z.check);
            }
        }
        ReportBody::Catalog(rows) => {
            for e in rows {
                let _ = writeln!(out, "{:<10} {:>3}  {}", e.name, e.order, e.description);
            }
        }
        ReportBody::IdentityF(f) => {
            let _ = writeln!(
                out,
                "n = {} p = {} m = {}: {} over {} triples",
                f.n,
                f.p,
                f.m,
                if f.holds { "holds" } else { "FAILS" },
                f.cases
            );
            if let Some(w) = &f.counterexample {
                let _ = writeln!(out, "  counterexample: {}", w.words.join(", "));
            }
        }
    }
    out
}

fn exit_for_error(e: &Error) -> ExitCode {
    match e {
        Error::EnumerationLimit { .. } | Error::Capacity { .. } => {
            eprintln!("nutensor: limit exceeded: {e}")
        }
        Error::Domain(_) => eprintln!("nutensor: invalid input: {e}"),
        _ => eprintln!("nutensor: {e}"),
    }
    ExitCode::from(2)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let report = match run(&cli) {
        Ok(r) => r,
        Err(e) => return exit_for_error(&e),
    };
    match &cli.json {
        Some(p) if p.as_os_str() == "-" => print!("{}", report.to_json()),
        Some(p) => {
            if let Err(e) = std::fs::write(p, report.to_json()) {
                return exit_for_error(&e.into());
            }
            print!("{}", summary(&report));
        }
        None => print!("{}", summary(&report)),
    }
    if report.passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
