//! Command-line surface: reproducible batch runs over the strata, weight,
//! verification and identity layers. Exit codes: 0 all-pass, 1 verification
//! failure, 2 usage error.

use clap::{Args, Parser, Subcommand};
use serde::Deserialize;
use serde_json::{json, Value};
use std::io::Write;
use std::process::ExitCode;
use zipstrata::poly;
use zipstrata::poset::{flag_orbit_poset, zip_orbit_poset};
use zipstrata::realize::{verify_ev1_expansion, GroupRealization, SuiteReport};
use zipstrata::rep::vgs_full;
use zipstrata::root::{Character, Family, RootDatum};
use zipstrata::weight;
use zipstrata::weyl::CosetSide;
use zipstrata::zip::{build_zip_datum, levi_from_cocharacter, signature_cocharacter};

#[derive(Parser, Debug)]
#[command(name = "zipstrata", version, about = "strata, weights and exact verification for zip stratifications")]
struct Cli {
    /// JSON config file supplying defaults; explicit flags win.
    #[arg(long, global = true)]
    config: Option<String>,
    /// Write the artifact here instead of stdout.
    #[arg(long, global = true)]
    output: Option<String>,
    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Subcommand, Debug, Clone)]
enum Command {
    /// Zip or flag stratification poset, as JSON or DOT.
    Strata(StrataArgs),
    /// Schubert weight tables lambda_d (and lambda_det).
    Weights(GroupArgs),
    /// Sampling verification suites over F_{q^2}.
    Verify(VerifyArgs),
    /// Exact identities: the alternating binomial sum or the socle
    /// counter-example expansion.
    Identity(IdentityArgs),
    /// Griffiths-Schmid cone and Verschiebung admissibility of a weight.
    GsCone(WeightArgs),
    /// Steinberg digit decomposition of a weight.
    Steinberg(WeightArgs),
}

#[derive(Args, Debug, Clone, Default)]
struct GroupArgs {
    #[arg(long)]
    family: Option<String>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    r: Option<usize>,
    #[arg(long)]
    s: Option<usize>,
    #[arg(long)]
    q: Option<u64>,
}

#[derive(Args, Debug, Clone, Default)]
struct StrataArgs {
    #[command(flatten)]
    group: GroupArgs,
    /// zip | flag
    #[arg(long)]
    kind: Option<String>,
    /// json | dot
    #[arg(long)]
    format: Option<String>,
    /// Weyl-group enumeration guard (default 10^7 elements).
    #[arg(long)]
    limit: Option<usize>,
}

#[derive(Args, Debug, Clone, Default)]
struct VerifyArgs {
    #[command(flatten)]
    group: GroupArgs,
    /// Restrict to one minor index d (default: all).
    #[arg(long)]
    d: Option<usize>,
    #[arg(long)]
    samples: Option<usize>,
    /// Mandatory: sampling commands must be reproducible.
    #[arg(long)]
    seed: Option<u64>,
    /// eigen | vanishing | ev1 | strata | all
    #[arg(long)]
    suite: Option<String>,
}

#[derive(Args, Debug, Clone, Default)]
struct IdentityArgs {
    /// Sweep the binomial sum for all n <= this bound.
    #[arg(long)]
    binomial: Option<i64>,
    /// Run the socle counter-example expansion for this q.
    #[arg(long)]
    socle: Option<u64>,
}

#[derive(Args, Debug, Clone, Default)]
struct WeightArgs {
    #[command(flatten)]
    group: GroupArgs,
    /// Comma-separated character, e.g. 1,0,-2.
    #[arg(long)]
    lambda: Option<String>,
}

/// Config-file mirror of the CLI; any present field acts as a default.
#[derive(Deserialize, Debug, Default)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    command: Option<String>,
    family: Option<String>,
    n: Option<usize>,
    r: Option<usize>,
    s: Option<usize>,
    q: Option<u64>,
    d: Option<usize>,
    samples: Option<usize>,
    seed: Option<u64>,
    suite: Option<String>,
    kind: Option<String>,
    format: Option<String>,
    binomial: Option<i64>,
    socle: Option<u64>,
    lambda: Option<String>,
    limit: Option<usize>,
    output: Option<String>,
}

#[derive(Debug)]
struct UsageError(String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

fn parse_family(s: &str) -> Result<Family, UsageError> {
    match s {
        "gl" | "gl-split" => Ok(Family::GlSplit),
        "sp" | "sp-split" => Ok(Family::SpSplit),
        "u-inert" | "u" => Ok(Family::UInert),
        other => Err(UsageError(format!("unknown family '{other}'"))),
    }
}

fn parse_lambda(s: &str, rank: usize) -> Result<Character, UsageError> {
    let coords: Result<Vec<i64>, _> = s.split(',').map(|t| t.trim().parse::<i64>()).collect();
    let coords = coords.map_err(|e| UsageError(format!("malformed vector '{s}': {e}")))?;
    if coords.len() != rank {
        return Err(UsageError(format!("vector '{s}' has length {} but rank is {rank}", coords.len())));
    }
    Ok(Character(coords))
}

struct GroupSpec {
    family: Family,
    n: usize,
    signature: Option<(usize, usize)>,
    q: u64,
}

fn resolve_group(g: &GroupArgs, cfg: &FileConfig) -> Result<GroupSpec, UsageError> {
    let fam_str = g
        .family
        .clone()
        .or_else(|| cfg.family.clone())
        .ok_or_else(|| UsageError("missing --family".into()))?;
    let family = parse_family(&fam_str)?;
    let q = g.q.or(cfg.q).ok_or_else(|| UsageError("missing --q".into()))?;
    let r = g.r.or(cfg.r);
    let s = g.s.or(cfg.s);
    let n = match (g.n.or(cfg.n), r, s) {
        (Some(n), _, _) => n,
        (None, Some(r), Some(s)) => r + s,
        _ => return Err(UsageError("missing --n (or --r/--s)".into())),
    };
    let signature = match (family, r, s) {
        (Family::SpSplit, _, _) => None,
        (_, Some(r), Some(s)) => Some((r, s)),
        (Family::UInert, _, _) => return Err(UsageError("u-inert requires --r and --s".into())),
        // A split GL datum defaults to the balanced signature.
        (Family::GlSplit, _, _) => Some((n - n / 2, n / 2)),
    };
    if let Some((r, s)) = signature {
        if r + s != n || r < s {
            return Err(UsageError(format!("signature ({r},{s}) inconsistent with n={n}")));
        }
    }
    Ok(GroupSpec { family, n, signature, q })
}

fn build_datum(spec: &GroupSpec) -> Result<RootDatum, UsageError> {
    RootDatum::build_classical(spec.family, spec.n, spec.q, spec.signature)
        .map_err(|e| UsageError(e.to_string()))
}

fn zip_datum_for(spec: &GroupSpec) -> Result<zipstrata::ZipDatum, UsageError> {
    let d = build_datum(spec)?;
    let mu = signature_cocharacter(&d);
    let levi = levi_from_cocharacter(&d, &mu);
    Ok(build_zip_datum(&d, &levi))
}

fn run_strata(a: &StrataArgs, cfg: &FileConfig) -> Result<(String, bool), UsageError> {
    let spec = resolve_group(&a.group, cfg)?;
    let zd = zip_datum_for(&spec)?;
    let kind = a.kind.clone().or_else(|| cfg.kind.clone()).unwrap_or_else(|| "zip".into());
    let limit = a.limit.or(cfg.limit);
    let poset = match kind.as_str() {
        "zip" => zip_orbit_poset(&zd, limit),
        "flag" => flag_orbit_poset(&zd, limit),
        other => return Err(UsageError(format!("unknown kind '{other}'"))),
    }
    .map_err(|e| UsageError(e.to_string()))?;
    let format = a.format.clone().or_else(|| cfg.format.clone()).unwrap_or_else(|| "json".into());
    match format.as_str() {
        "json" => Ok((serde_json::to_string_pretty(&poset.to_json()).unwrap(), true)),
        "dot" => Ok((poset.to_dot(), true)),
        other => Err(UsageError(format!("unknown format '{other}'"))),
    }
}

fn run_weights(g: &GroupArgs, cfg: &FileConfig) -> Result<(String, bool), UsageError> {
    let spec = resolve_group(g, cfg)?;
    let zd = zip_datum_for(&spec)?;
    let n = spec.n;
    let rows: Vec<Value> = (1..=n)
        .map(|d| {
            let mut chi = vec![0i64; n];
            for x in chi.iter_mut().take(d) {
                *x = 1;
            }
            let lam = weight::schubert_weight(&zd, &Character(chi.clone()));
            json!({"d": d, "chi": chi, "lambda": lam.0})
        })
        .collect();
    let q = spec.q as i64;
    let lambda_det: Option<Vec<i64>> = match spec.family {
        Family::GlSplit => Some(vec![-(q - 1); n]),
        Family::UInert => Some(vec![q + 1; n]),
        Family::SpSplit => None,
    };
    let out = json!({
        "family": spec.family,
        "n": n,
        "q": spec.q,
        "signature": spec.signature,
        "rows": rows,
        "lambda_det": lambda_det,
    });
    Ok((serde_json::to_string_pretty(&out).unwrap(), true))
}

fn run_verify(a: &VerifyArgs, cfg: &FileConfig) -> Result<(String, bool), UsageError> {
    let spec = resolve_group(&a.group, cfg)?;
    let samples = a.samples.or(cfg.samples).unwrap_or(200);
    let seed = a
        .seed
        .or(cfg.seed)
        .ok_or_else(|| UsageError("--seed is mandatory for sampling commands".into()))?;
    let which = a.suite.clone().or_else(|| cfg.suite.clone()).unwrap_or_else(|| "all".into());
    let rz = GroupRealization::new(spec.family, spec.n, spec.signature, spec.q, None);
    let ds: Vec<usize> = match a.d.or(cfg.d) {
        Some(d) => {
            if d == 0 || d > spec.n {
                return Err(UsageError(format!("d={d} out of range 1..={}", spec.n)));
            }
            vec![d]
        }
        None => (1..=spec.n).collect(),
    };

    let mut suites: Vec<SuiteReport> = Vec::new();
    let run_eigen = which == "all" || which == "eigen";
    let run_vanishing = which == "all" || which == "vanishing";
    let run_ev1 = which == "all" || which == "ev1";
    let run_strata = which == "all" || which == "strata";

    if run_eigen {
        for &d in &ds {
            let chi = rz.chi_d(d);
            let nu = rz.minus_w0_chi(&chi);
            let name = format!("eigen.borel.delta{}.{}.n{}.q{}", d, spec.family, spec.n, spec.q);
            suites.push(rz.verify_borel_eigen(&name, &|x| rz.sbt_delta(x, d), &chi, &nu, samples, seed ^ d as u64));
        }
        let name = format!("eigen.zip.hasse_mu.{}.n{}.q{}", spec.family, spec.n, spec.q);
        suites.push(rz.verify_zip_eigen(&name, &|g| rz.hasse_mu(g), &rz.hasse_mu_weight(), samples, seed ^ 0x51));
        let name = format!("eigen.zip.det.{}.n{}.q{}", spec.family, spec.n, spec.q);
        suites.push(rz.verify_zip_eigen(&name, &|g| g.det(&rz.ctx), &rz.det_weight(), samples, seed ^ 0x52));
    }
    if run_vanishing {
        for &d in &ds {
            suites.push(rz.verify_vanishing_pattern(d, samples, seed ^ (0x100 + d as u64)));
        }
    }
    if run_ev1 && spec.family != Family::UInert {
        // The expansion identity is a GL_n (Levi) statement.
        let (rep, _sign) = verify_ev1_expansion(spec.n, spec.q, samples.min(100), seed ^ 0x200);
        suites.push(rep);
    }
    if run_strata {
        suites.push(strata_vanishing_suite(&rz));
    }

    let pass = suites.iter().all(|s| s.pass);
    let out = json!({
        "family": spec.family,
        "n": spec.n,
        "signature": spec.signature,
        "q": spec.q,
        "samples": samples,
        "seed": seed,
        "suites": suites,
        "pass": pass,
    });
    Ok((serde_json::to_string_pretty(&out).unwrap(), pass))
}

/// Exact, deterministic check: hasse_mu vanishes at the representative
/// point of every non-open stratum and is nonzero at the open one.
fn strata_vanishing_suite(rz: &GroupRealization) -> SuiteReport {
    let d = &rz.zd.datum;
    let suite = format!("strata.hasse_mu.{}.n{}", rz.family, rz.n);
    let reps = match d.min_coset_reps(&rz.zd.levi, CosetSide::Left, None) {
        Ok(r) => r,
        Err(e) => {
            return SuiteReport {
                suite,
                pass: false,
                samples_used: 0,
                counterexample: Some(e.to_string()),
                inconclusive: 0,
            }
        }
    };
    let max = rz.zd.max_zip_element();
    let total = reps.len();
    for w in reps {
        let v = rz.hasse_mu(&rz.zip_point(&w));
        let vanishes = rz.ctx.is_zero(&v);
        if (w == max) == vanishes {
            return SuiteReport {
                suite,
                pass: false,
                samples_used: total,
                counterexample: Some(format!("stratum {w:?}")),
                inconclusive: 0,
            };
        }
    }
    SuiteReport { suite, pass: true, samples_used: total, counterexample: None, inconclusive: 0 }
}

fn run_identity(a: &IdentityArgs, cfg: &FileConfig) -> Result<(String, bool), UsageError> {
    let binomial = a.binomial.or(cfg.binomial);
    let socle = a.socle.or(cfg.socle);
    match (binomial, socle) {
        (Some(nmax), None) => {
            use num_traits::Zero;
            let mut cases = 0u64;
            let mut failures: Vec<Value> = Vec::new();
            let mut nominal: Vec<Value> = Vec::new();
            for n in 0..=nmax {
                for i in 0..=n {
                    for d in -n..=n {
                        let sum = poly::binomial_identity_sum(n, i, d);
                        if poly::sharp_vanishing_region(n, i, d) {
                            cases += 1;
                            if !sum.is_zero() {
                                failures.push(json!({"n": n, "i": i, "d": d, "sum": sum.to_string()}));
                            }
                        }
                        if poly::nominal_vanishing_region(n, i, d) && !sum.is_zero() {
                            nominal.push(json!({"n": n, "i": i, "d": d, "sum": sum.to_string()}));
                        }
                    }
                }
            }
            let pass = failures.is_empty();
            let out = json!({
                "cases_checked": cases,
                "failures": failures,
                "nominal_region_counterexamples": nominal,
            });
            Ok((serde_json::to_string_pretty(&out).unwrap(), pass))
        }
        (None, Some(q)) => {
            let rep = poly::socle_counterexample(q);
            let mono = poly::steinberg_monomial_check(q);
            // The verified prediction is non-containment.
            let pass = !rep.contained
                && mono.degrees_homogeneous
                && mono.weights_distinct
                && mono.digits_match
                && mono.weights_match_tensor
                && mono.basis_size == 4;
            let out = json!({
                "q": q,
                "m": rep.m,
                "support": rep.support.iter().map(|(a, b)| vec![a.to_string(), b.to_string()]).collect::<Vec<_>>(),
                "basis": rep.basis.iter().map(|(a, b)| vec![a.to_string(), b.to_string()]).collect::<Vec<_>>(),
                "contained": rep.contained,
                "monomial_check": {
                    "basis_size": mono.basis_size,
                    "degrees_homogeneous": mono.degrees_homogeneous,
                    "weights_distinct": mono.weights_distinct,
                    "digits_match": mono.digits_match,
                    "weights_match_tensor": mono.weights_match_tensor,
                },
            });
            Ok((serde_json::to_string_pretty(&out).unwrap(), pass))
        }
        _ => Err(UsageError("identity needs exactly one of --binomial or --socle".into())),
    }
}

fn run_gs_cone(a: &WeightArgs, cfg: &FileConfig) -> Result<(String, bool), UsageError> {
    let spec = resolve_group(&a.group, cfg)?;
    let zd = zip_datum_for(&spec)?;
    let lam_str = a
        .lambda
        .clone()
        .or_else(|| cfg.lambda.clone())
        .ok_or_else(|| UsageError("missing --lambda".into()))?;
    let lam = parse_lambda(&lam_str, spec.n)?;
    let in_cone = weight::in_gs_cone(&zd, &lam);
    let via_w0i = weight::in_gs_cone_via_w0i(&zd, &lam);
    let filter = weight::weight_filter_member(&zd, &lam);
    let vgs = vgs_full(&zd, &lam).ok();
    let out = json!({
        "family": spec.family,
        "n": spec.n,
        "q": spec.q,
        "lambda": lam.0,
        "in_cone": in_cone,
        "minus_w0i_dominant": via_w0i,
        "filter_member": filter,
        "vgs_full": vgs,
    });
    Ok((serde_json::to_string_pretty(&out).unwrap(), in_cone == via_w0i))
}

fn run_steinberg(a: &WeightArgs, cfg: &FileConfig) -> Result<(String, bool), UsageError> {
    let spec = resolve_group(&a.group, cfg)?;
    let d = build_datum(&spec)?;
    let lam_str = a
        .lambda
        .clone()
        .or_else(|| cfg.lambda.clone())
        .ok_or_else(|| UsageError("missing --lambda".into()))?;
    let lam = parse_lambda(&lam_str, spec.n)?;
    let digits = weight::steinberg_decompose(&d, &lam);
    let ok = match &digits {
        Some(ds) => weight::validate_steinberg_digits(&d, &lam, ds, &d.all_simple()),
        None => false,
    };
    let out = json!({
        "family": spec.family,
        "n": spec.n,
        "q": spec.q,
        "lambda": lam.0,
        "ok": ok,
        "digits": digits.map(|ds| ds.into_iter().map(|c| c.0).collect::<Vec<_>>()),
    });
    Ok((serde_json::to_string_pretty(&out).unwrap(), ok))
}

fn dispatch(cli: &Cli, cfg: &FileConfig) -> Result<(String, bool), UsageError> {
    let command = match &cli.command {
        Some(c) => c.clone(),
        None => match cfg.command.as_deref() {
            Some("strata") => Command::Strata(StrataArgs::default()),
            Some("weights") => Command::Weights(GroupArgs::default()),
            Some("verify") => Command::Verify(VerifyArgs::default()),
            Some("identity") => Command::Identity(IdentityArgs::default()),
            Some("gs-cone") => Command::GsCone(WeightArgs::default()),
            Some("steinberg") => Command::Steinberg(WeightArgs::default()),
            Some(other) => return Err(UsageError(format!("unknown command '{other}' in config"))),
            None => return Err(UsageError("no command given".into())),
        },
    };
    match &command {
        Command::Strata(a) => run_strata(a, cfg),
        Command::Weights(g) => run_weights(g, cfg),
        Command::Verify(a) => run_verify(a, cfg),
        Command::Identity(a) => run_identity(a, cfg),
        Command::GsCone(a) => run_gs_cone(a, cfg),
        Command::Steinberg(a) => run_steinberg(a, cfg),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Ok(threads) = std::env::var("ZIPSTRATA_THREADS") {
        if let Ok(k) = threads.parse::<usize>() {
            let _ = rayon::ThreadPoolBuilder::new().num_threads(k).build_global();
        }
    }
    let cfg: FileConfig = match &cli.config {
        Some(path) => match std::fs::read_to_string(path)
            .map_err(|e| e.to_string())
            .and_then(|s| serde_json::from_str(&s).map_err(|e| e.to_string()))
        {
            Ok(c) => c,
            Err(e) => {
                eprintln!("error: cannot read config {path}: {e}");
                return ExitCode::from(2);
            }
        },
        None => FileConfig::default(),
    };
    let output = cli.output.clone().or_else(|| cfg.output.clone());
    match dispatch(&cli, &cfg) {
        Ok((text, pass)) => {
            match output {
                Some(path) => {
                    if let Err(e) = std::fs::write(&path, text.as_bytes()) {
                        eprintln!("error: cannot write {path}: {e}");
                        return ExitCode::from(2);
                    }
                }
                None => {
                    let mut stdout = std::io::stdout().lock();
                    let _ = stdout.write_all(text.as_bytes());
                    let _ = stdout.write_all(b"\n");
                }
            }
            if pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
