//! `natspec`: exact truncated spectra of flat tori and compact Lie groups from the command line.

mod inputs;
mod output;

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use natspec_core::branching::validate_embedding;
use natspec_core::group::normal_quotient_spectrum;
use natspec_core::isolation::{
    finiteness_window, group_gamma, homothety_invariant, isolation_scan, lattice_gamma, torus_search, Volume,
};
use natspec_core::lattice::Lattice;
use natspec_core::linalg;
use natspec_core::natred::{containment_check, natred_spectrum, natred_terms, BiInvariantOperator};
use natspec_core::rational::{fmt_q, parse_q, q, qi, sqrt_exact};
use natspec_core::roots::{RootSystem, Weight};
use natspec_core::weights;
use natspec_core::Q;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use output::Format;

#[derive(Debug)]
pub enum CliError {
    Io(String),
    Usage(String),
    Core(natspec_core::Error),
}

impl From<natspec_core::Error> for CliError {
    fn from(e: natspec_core::Error) -> Self {
        CliError::Core(e)
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Io(m) | CliError::Usage(m) => f.write_str(m),
            CliError::Core(e) => write!(f, "{e}"),
        }
    }
}

impl CliError {
    fn kind(&self) -> &'static str {
        match self {
            CliError::Io(_) => "io",
            CliError::Usage(_) => "usage",
            CliError::Core(e) => e.kind(),
        }
    }

    fn exit_code(&self) -> u8 {
        match self {
            CliError::Io(_) => 1,
            _ => 2,
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "natspec", version, about = "Exact truncated Laplace spectra of flat tori and compact Lie groups")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value = "json", global = true)]
    format: Format,
    /// Write output to this file instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Worker threads (affects speed only).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct LatticeArgs {
    /// Lattice file: {"dim":m,"basis":[[..]]} or {"dim":m,"gram":[[..]]}.
    #[arg(long, conflicts_with = "gram")]
    lattice: Option<PathBuf>,
    /// Builtin lattice: identity<m> or hexagonal.
    #[arg(long)]
    gram: Option<String>,
}

#[derive(Args, Debug)]
struct GroupArgs {
    /// Group file: {"factors":[..],"scales":[..],"gamma":[..]}.
    #[arg(long, conflicts_with = "group")]
    spec: Option<PathBuf>,
    /// Builtin group: su2, su3 or so3.
    #[arg(long)]
    group: Option<String>,
}

#[derive(Args, Debug)]
struct MetricArgs {
    /// Metric file: {"group":..,"embedding":..,"t":..,"t_i":[..]}.
    #[arg(long, conflicts_with_all = ["embedding", "t"])]
    metric: Option<PathBuf>,
    /// Embedding file or builtin name (e.g. a1-in-a2-standard, identity:A2, trivial:A2).
    #[arg(long)]
    embedding: Option<String>,
    /// Scale on the complement of the subgroup.
    #[arg(long)]
    t: Option<String>,
    /// Per-factor fiber scales, comma separated.
    #[arg(long = "t-i", value_delimiter = ',')]
    t_i: Vec<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Spectrum of a flat torus, in units of 4π².
    TorusSpectrum {
        #[command(flatten)]
        lattice: LatticeArgs,
        #[arg(long)]
        cutoff: String,
    },
    /// Spectrum of a bi-invariant metric on a compact semisimple group.
    GroupSpectrum {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long)]
        cutoff: String,
    },
    /// Spectrum of G/K with the normal metric t(−B).
    QuotientSpectrum {
        #[arg(long)]
        embedding: String,
        #[arg(long, default_value = "1")]
        t: String,
        #[arg(long)]
        cutoff: String,
    },
    /// Spectrum of a naturally reductive metric.
    NatredSpectrum {
        #[command(flatten)]
        metric: MetricArgs,
        #[arg(long)]
        cutoff: String,
        /// Emit the isotypic blocks instead of the merged table.
        #[arg(long)]
        blocks: bool,
    },
    /// Restriction of an irreducible representation to the subgroup.
    Branch {
        #[arg(long)]
        embedding: String,
        /// Highest weight in fundamental-weight coordinates, e.g. 1,0.
        #[arg(long)]
        weight: String,
    },
    /// Complete spectral invariants of a torus or a bi-invariant metric.
    Gamma {
        #[command(flatten)]
        lattice: LatticeArgs,
        #[command(flatten)]
        group: GroupArgs,
    },
    /// Compare spectra on a multiplicative grid around a metric.
    Scan {
        #[command(flatten)]
        metric: MetricArgs,
        #[arg(long)]
        radius: String,
        #[arg(long)]
        steps: usize,
        #[arg(long)]
        cutoff: String,
    },
    /// Reconstruct all tori whose invariants lie in a finite set.
    TorusSearch {
        /// Allowed invariant values (units of 4π²), comma separated.
        #[arg(long, value_delimiter = ',')]
        values: Vec<String>,
        #[arg(long)]
        dim: usize,
        #[arg(long, default_value = "0")]
        lambda_min: String,
        #[arg(long, default_value = "0")]
        vol_min: String,
    },
    /// Finiteness window C / (λⁿ v²).
    Window {
        #[arg(long)]
        lambda: String,
        #[arg(long)]
        vol: String,
        #[arg(long)]
        dim: u32,
        #[arg(long)]
        constant: String,
    },
    /// λ₁ⁿ vol² of a torus or bi-invariant metric (group volumes relative to −B).
    Homothety {
        #[command(flatten)]
        lattice: LatticeArgs,
        #[command(flatten)]
        group: GroupArgs,
    },
    /// Check an embedding and report its indices and Killing ratios.
    ValidateEmbedding {
        #[arg(long)]
        embedding: String,
    },
    /// Weyl dimension of an irreducible representation.
    Dim {
        /// Root system label, e.g. A2, E6.
        #[arg(long = "type")]
        kind: String,
        #[arg(long)]
        weight: String,
    },
    /// Weight multiplicities of an irreducible representation.
    Weights {
        #[arg(long = "type")]
        kind: String,
        #[arg(long)]
        weight: String,
        /// Only dominant weights.
        #[arg(long)]
        dominant: bool,
    },
    /// Check that ζ_p + γ_p(h̃) is an eigenvalue for fiber parameter b.
    Containment {
        #[command(flatten)]
        metric: MetricArgs,
        /// Factor index, starting at 0.
        #[arg(long, default_value_t = 0)]
        factor: usize,
        #[arg(long)]
        b: String,
        #[arg(long)]
        cutoff: String,
    },
    /// Randomized internal consistency checks.
    Selfcheck {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 50)]
        count: usize,
    },
}

fn rationals(xs: &[String]) -> Result<Vec<Q>, CliError> {
    Ok(xs.iter().map(|x| parse_q(x)).collect::<Result<Vec<_>, _>>()?)
}

fn root_system(label: &str) -> Result<RootSystem, CliError> {
    Ok(label.parse::<RootSystem>()?)
}

enum Subject {
    Torus(Lattice),
    Group(natspec_core::group::GroupSpec),
}

fn subject(l: &LatticeArgs, g: &GroupArgs) -> Result<Subject, CliError> {
    if l.lattice.is_some() || l.gram.is_some() {
        Ok(Subject::Torus(inputs::lattice(l.lattice.as_ref(), l.gram.as_deref())?))
    } else {
        Ok(Subject::Group(inputs::group(g.spec.as_ref(), g.group.as_deref())?))
    }
}

fn run(cli: &Cli) -> Result<String, CliError> {
    let f = cli.format;
    match &cli.command {
        Command::TorusSpectrum { lattice, cutoff } => {
            let l = inputs::lattice(lattice.lattice.as_ref(), lattice.gram.as_deref())?;
            Ok(output::table(&l.torus_spectrum(&parse_q(cutoff)?)?, f))
        }
        Command::GroupSpectrum { group, cutoff } => {
            let g = inputs::group(group.spec.as_ref(), group.group.as_deref())?;
            Ok(output::table(&g.biinvariant_spectrum(&parse_q(cutoff)?)?, f))
        }
        Command::QuotientSpectrum { embedding, t, cutoff } => {
            let e = inputs::embedding(embedding)?;
            let s = normal_quotient_spectrum(&e, &parse_q(t)?, &parse_q(cutoff)?)?;
            inputs::store_cache(&e)?;
            Ok(output::table(&s, f))
        }
        Command::NatredSpectrum { metric, cutoff, blocks } => {
            let m = inputs::metric(metric.metric.as_ref(), metric.embedding.as_deref(), metric.t.as_deref(), &metric.t_i)?;
            let cutoff = parse_q(cutoff)?;
            let out = if *blocks {
                let terms = natred_terms(&m, &cutoff)?;
                output::report(&json!({"mode": m.mode(), "cutoff": fmt_q(&cutoff), "blocks": terms}), f)
            } else {
                output::table(&natred_spectrum(&m, &cutoff)?, f)
            };
            inputs::store_cache(m.embedding())?;
            Ok(out)
        }
        Command::Branch { embedding, weight } => {
            let e = inputs::embedding(embedding)?;
            let w = Weight::parse(weight)?;
            let r = e.branch(&w)?;
            inputs::store_cache(&e)?;
            let rows: Vec<_> = r
                .terms
                .iter()
                .map(|(t, m)| {
                    json!({
                        "tau": t.iter().map(|x| x.0.clone()).collect::<Vec<_>>(),
                        "multiplicity": m,
                        "dim": e.data().tuple_dim(t).to_string(),
                    })
                })
                .collect();
            let dim = weights::weyl_dim(e.ambient(), &w)?;
            Ok(output::report(
                &json!({"embedding": e.name(), "source": w.0, "dim": dim.to_string(), "terms": rows}),
                f,
            ))
        }
        Command::Gamma { lattice, group } => {
            let g = match subject(lattice, group)? {
                Subject::Torus(l) => lattice_gamma(&l),
                Subject::Group(g) => group_gamma(&g),
            };
            Ok(output::report(&g, f))
        }
        Command::Scan { metric, radius, steps, cutoff } => {
            let m = inputs::metric(metric.metric.as_ref(), metric.embedding.as_deref(), metric.t.as_deref(), &metric.t_i)?;
            let rep = isolation_scan(&m, &parse_q(radius)?, *steps, &parse_q(cutoff)?)?;
            for s in &rep.grid.skipped {
                eprintln!("skipped {}: {}", natspec_core::isolation::describe_point(&s.point), s.reason);
            }
            inputs::store_cache(m.embedding())?;
            Ok(output::report(&rep, f))
        }
        Command::TorusSearch { values, dim, lambda_min, vol_min } => {
            let found = torus_search(&rationals(values)?, *dim, &parse_q(lambda_min)?, &parse_q(vol_min)?)?;
            let list: Vec<_> = found
                .iter()
                .map(|l| json!({"lattice": l.to_wire(), "gamma": lattice_gamma(l)}))
                .collect();
            Ok(output::report(&json!({"count": found.len(), "tori": list}), f))
        }
        Command::Window { lambda, vol, dim, constant } => {
            let a = finiteness_window(&parse_q(lambda)?, &parse_q(vol)?, *dim, &parse_q(constant)?)?;
            Ok(output::report(&json!({"window": fmt_q(&a)}), f))
        }
        Command::Homothety { lattice, group } => {
            let (table, n, vol) = match subject(lattice, group)? {
                Subject::Torus(l) => {
                    let cutoff = l.lambda1();
                    (l.torus_spectrum(&cutoff)?, l.dim() as u32, Volume::Squared(l.volume_squared()))
                }
                Subject::Group(g) => {
                    let cutoff = (0..g.factors().len()).map(|i| g.factor_lambda1(i)).min().expect("nonempty group");
                    (g.biinvariant_spectrum(&cutoff)?, g.dim() as u32, Volume::Squared(g.volume_scale_squared()))
                }
            };
            // Use the exact volume when its square is a rational square.
            let vol = match vol {
                Volume::Squared(v2) => sqrt_exact(&v2).map_or(Volume::Squared(v2), Volume::Exact),
                exact => exact,
            };
            let h = homothety_invariant(&table, n, &vol)?;
            Ok(output::report(&h, f))
        }
        Command::ValidateEmbedding { embedding } => {
            let data = inputs::embedding_data(embedding)?;
            let rep = validate_embedding(&data);
            if !rep.valid {
                return Err(CliError::Core(natspec_core::Error::MalformedEmbedding(rep.failures.join("; "))));
            }
            Ok(output::report(&rep, f))
        }
        Command::Dim { kind, weight } => {
            let rs = root_system(kind)?;
            let d = weights::weyl_dim(&rs, &Weight::parse(weight)?)?;
            Ok(output::report(&json!({"type": rs.label(), "dim": d.to_string()}), f))
        }
        Command::Weights { kind, weight, dominant } => {
            let rs = root_system(kind)?;
            let w = Weight::parse(weight)?;
            let mults = if *dominant {
                weights::dominant_multiplicities(&rs, &w)?
            } else {
                weights::freudenthal(&rs, &w)?.mults
            };
            let rows: Vec<_> = mults.iter().map(|(k, m)| json!({"weight": k.0, "multiplicity": m})).collect();
            Ok(output::report(&json!({"type": rs.label(), "highest": w.0, "weights": rows}), f))
        }
        Command::Containment { metric, factor, b, cutoff } => {
            let m = inputs::metric(metric.metric.as_ref(), metric.embedding.as_deref(), metric.t.as_deref(), &metric.t_i)?;
            let rep = containment_check(&m, *factor, &parse_q(b)?, &parse_q(cutoff)?)?;
            inputs::store_cache(m.embedding())?;
            Ok(output::report(&rep, f))
        }
        Command::Selfcheck { seed, count } => selfcheck(*seed, *count, f),
    }
}

/// Basis-change invariance of torus spectra, the dual-systole identity, and F-map round trips.
fn selfcheck(seed: u64, count: usize, f: Format) -> Result<String, CliError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    let mut checks = 0usize;
    let mut done = 0;
    while done < count {
        let m = rng.gen_range(1..=3usize);
        let den = rng.gen_range(1..=3i64);
        let basis: Vec<Vec<Q>> = (0..m)
            .map(|i| (0..m).map(|j| q(if i == j { rng.gen_range(1..=3) } else { rng.gen_range(-2..=2) }, den)).collect())
            .collect();
        let Ok(lat) = Lattice::from_basis(basis.clone()) else { continue };
        let mut u = linalg::identity(m);
        for _ in 0..4 {
            let (i, j) = (rng.gen_range(0..m), rng.gen_range(0..m));
            if i != j {
                let k = qi(rng.gen_range(-2..=2));
                for row in u.iter_mut() {
                    let add = &row[i] * &k;
                    row[j] += add;
                }
            }
        }
        let other = Lattice::from_basis(linalg::mul(&basis, &u))?;
        let cutoff = qi(12);
        if lat.torus_spectrum(&cutoff)?.entries != other.torus_spectrum(&cutoff)?.entries {
            failures.push(format!("basis change altered the spectrum of {:?}", lat.gram()));
        }
        if lat.lambda1() != lat.dual().systole() {
            failures.push("lambda1 differs from the dual systole".to_string());
        }
        let a = q(rng.gen_range(1..=100), rng.gen_range(1..=30));
        let b = &a + q(rng.gen_range(1..=100), rng.gen_range(1..=30));
        let op = BiInvariantOperator::new(vec![a.clone()])?;
        if op.f_map(&b)?.f_inverse(&b)?.a != vec![a] {
            failures.push(format!("F-map round trip failed for b={b}"));
        }
        checks += 3;
        done += 1;
    }
    if !failures.is_empty() {
        return Err(CliError::Core(natspec_core::Error::Domain(format!("selfcheck: {}", failures.join("; ")))));
    }
    Ok(output::report(&json!({"seed": seed, "count": count, "checks": checks, "passed": true}), f))
}

fn emit_error(e: &CliError) {
    let obj = json!({"error": {"kind": e.kind(), "message": e.to_string()}});
    eprintln!("{obj}");
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if !e.use_stderr() => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            emit_error(&CliError::Usage(e.to_string().trim().to_string()));
            return ExitCode::from(2);
        }
    };
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            emit_error(&CliError::Usage(e.to_string()));
            return ExitCode::from(2);
        }
    }
    let result = run(&cli).and_then(|text| match &cli.out {
        Some(p) => fs::write(p, text).map_err(|e| CliError::Io(format!("{}: {e}", p.display()))),
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| CliError::Io(e.to_string())),
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            emit_error(&e);
            ExitCode::from(e.exit_code())
        }
    }
}
