//! `hyperspectra`: spectral radii, named-family construction, certificate
//! solving, subnormality witnesses, exhaustive enumeration, and claim
//! verification for k-uniform hypergraphs.
//!
//! Exit codes are a stable contract for scripting: 0 success or claim
//! confirmed, 2 input error, 3 numeric failure, 4 claim refuted, 5 claim
//! out of range, 6 instance beyond a capacity cap.
//!
//! All subcommands are deterministic: identical inputs and tolerance
//! settings produce byte-identical outputs. `HYPERSPECTRA_CAP` overrides
//! the enumeration vertex cap.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use hyperspectra_core::{
    build_family, enumerate_unicyclic_pm, resolve_open_comparison, solve_certificate_with_tol,
    spectral_radius, subnormal_witness_with_tol, verify_theorem, CertFamily, EnumFilter,
    EnumerationConfig, EnumerationResult, Error, Family, FamilySpec, OpenComparisonReport,
    TheoremId, TheoremReport, UniformHypergraph, Verdict, VerifyMode, WitnessPair,
    DEFAULT_ALPHA_TOL, DEFAULT_ENUM_VERTEX_CAP, DEFAULT_MAX_ITER, DEFAULT_POWER_TOL,
};

const EXIT_INPUT: u8 = 2;
const EXIT_NUMERIC: u8 = 3;
const EXIT_REFUTED: u8 = 4;
const EXIT_OUT_OF_RANGE: u8 = 5;
const EXIT_CAPACITY: u8 = 6;

#[derive(Parser)]
#[command(
    name = "hyperspectra",
    version,
    about = "Spectral radii, certificates, and exhaustive extremality checks for k-uniform hypergraphs"
)]
struct Cli {
    /// Output format for reports and computed values.
    #[arg(long, global = true, value_enum, default_value_t = Format::Human)]
    format: Format,

    /// Power-iteration bracket tolerance.
    #[arg(long, global = true, default_value_t = DEFAULT_POWER_TOL)]
    tol_power: f64,

    /// Certificate bisection tolerance on alpha.
    #[arg(long, global = true, default_value_t = DEFAULT_ALPHA_TOL)]
    tol_alpha: f64,

    /// Maximum allowed certificate/power-iteration disagreement.
    #[arg(long, global = true, default_value_t = 1e-6)]
    tol_agree: f64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the spectral radius of a hypergraph JSON file.
    Rho {
        /// Path to a hypergraph in the JSON normal form.
        file: PathBuf,
    },
    /// Construct a named family and write it (plus a label sidecar) to disk.
    Build {
        /// Family name: S, C, C2, A, B, D, I, J, or L.
        family: String,
        /// Size parameter: edge count for S, cycle length for C, matching
        /// size factor for the decorated families; omit for C2.
        #[arg(long)]
        m: Option<usize>,
        /// Uniformity (edge size).
        #[arg(long)]
        k: usize,
        /// Output path for the hypergraph JSON.
        #[arg(short, long)]
        out: PathBuf,
    },
    /// Solve a family's certificate system and cross-check against power
    /// iteration; exits 0 only when the two radii agree within --tol-agree.
    Certify {
        /// Family name: A, D, L, or I.
        family: String,
        /// Matching size factor.
        #[arg(long)]
        m: usize,
        /// Uniformity (edge size).
        #[arg(long)]
        k: usize,
    },
    /// Build the strict-subnormality witness for an ordered family pair.
    Witness {
        /// Pair name: B-under-A, A-under-D, I-under-L, or J-under-I.
        pair: String,
        /// Matching size factor.
        #[arg(long)]
        m: usize,
        /// Uniformity (edge size).
        #[arg(long)]
        k: usize,
    },
    /// Enumerate unicyclic perfect-matching hypergraphs up to isomorphism.
    Enumerate {
        /// Vertex count; must be a positive multiple of k(k-1).
        #[arg(long)]
        n: usize,
        /// Uniformity (edge size).
        #[arg(long)]
        k: usize,
        /// Keep only linear members.
        #[arg(long, conflicts_with = "nonlinear_only")]
        linear_only: bool,
        /// Keep only nonlinear members.
        #[arg(long)]
        nonlinear_only: bool,
        /// Write the result here instead of printing it.
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Check a claim from the catalog over a size range.
    Verify {
        /// Claim id, e.g. 5.1, C3.1, or L4.4.
        #[arg(long)]
        id: String,
        /// Uniformity (edge size).
        #[arg(long)]
        k: usize,
        /// Size range A..B (or a single size).
        #[arg(long)]
        m_range: String,
        /// Force exhaustive mode (the default for every id except the
        /// pairwise ordering claims L*).
        #[arg(long)]
        exhaustive: bool,
        /// Write the report here in addition to printing the verdict.
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Report the signed radius gap between the two triangle families over
    /// a size range; informational, asserts nothing about the sign.
    CompareAd {
        /// Uniformity (edge size).
        #[arg(long)]
        k: usize,
        /// Size range A..B with A >= 3 (or a single size).
        #[arg(long)]
        m_range: String,
    },
}

struct Failure {
    code: u8,
    message: String,
}

fn fail(code: u8, message: impl Into<String>) -> Failure {
    Failure { code, message: message.into() }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::InvalidInput(_)
            | Error::Format(_)
            | Error::Structure(_)
            | Error::Classification(_)
            | Error::Unsupported(_) => EXIT_INPUT,
            Error::Solver(_) | Error::Convergence { .. } => EXIT_NUMERIC,
            Error::Capacity(_) => EXIT_CAPACITY,
        };
        Failure { code, message: e.to_string() }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: &Cli) -> Result<u8, Failure> {
    match &cli.command {
        Command::Rho { file } => cmd_rho(cli, file),
        Command::Build { family, m, k, out } => cmd_build(family, *m, *k, out),
        Command::Certify { family, m, k } => cmd_certify(cli, family, *m, *k),
        Command::Witness { pair, m, k } => cmd_witness(cli, pair, *m, *k),
        Command::Enumerate { n, k, linear_only, nonlinear_only, out } => {
            let filter = if *linear_only {
                EnumFilter::LinearOnly
            } else if *nonlinear_only {
                EnumFilter::NonlinearOnly
            } else {
                EnumFilter::All
            };
            cmd_enumerate(cli, *n, *k, filter, out.as_deref())
        }
        Command::Verify { id, k, m_range, exhaustive, out } => {
            cmd_verify(cli, id, *k, m_range, *exhaustive, out.as_deref())
        }
        Command::CompareAd { k, m_range } => cmd_compare_ad(cli, *k, m_range),
    }
}

/// Enumeration vertex cap: `HYPERSPECTRA_CAP` when set, else the default.
fn vertex_cap() -> Result<usize, Failure> {
    match std::env::var("HYPERSPECTRA_CAP") {
        Err(_) => Ok(DEFAULT_ENUM_VERTEX_CAP),
        Ok(raw) => raw.trim().parse().map_err(|_| {
            fail(EXIT_INPUT, format!("HYPERSPECTRA_CAP must be a vertex count, got {raw:?}"))
        }),
    }
}

fn enumeration_config(cli: &Cli) -> Result<EnumerationConfig, Failure> {
    Ok(EnumerationConfig {
        vertex_cap: vertex_cap()?,
        tol: cli.tol_power,
        max_iter: DEFAULT_MAX_ITER,
        parallel: true,
    })
}

/// Parses `A..B` or a single integer into an inclusive range.
fn parse_range(raw: &str) -> Result<(usize, usize), Failure> {
    let bad = || fail(EXIT_INPUT, format!("size range must look like A..B or a single size, got {raw:?}"));
    match raw.split_once("..") {
        Some((lo, hi)) => {
            let lo = lo.trim().parse().map_err(|_| bad())?;
            let hi = hi.trim().parse().map_err(|_| bad())?;
            Ok((lo, hi))
        }
        None => {
            let v = raw.trim().parse().map_err(|_| bad())?;
            Ok((v, v))
        }
    }
}

fn csv_quote(field: &str) -> String {
    format!("\"{}\"", field.replace('"', "\"\""))
}

fn write_or_print(out: Option<&Path>, payload: &str, what: &str) -> Result<(), Failure> {
    match out {
        Some(path) => {
            let mut text = payload.to_string();
            if !text.ends_with('\n') {
                text.push('\n');
            }
            fs::write(path, text)
                .map_err(|e| fail(EXIT_INPUT, format!("cannot write {}: {e}", path.display())))?;
            println!("wrote {} to {}", what, path.display());
            Ok(())
        }
        None => {
            println!("{payload}");
            Ok(())
        }
    }
}

fn cmd_rho(cli: &Cli, file: &Path) -> Result<u8, Failure> {
    let text = fs::read_to_string(file)
        .map_err(|e| fail(EXIT_INPUT, format!("cannot read {}: {e}", file.display())))?;
    let g = UniformHypergraph::from_json(&text)?;
    let pair = spectral_radius(&g, cli.tol_power, DEFAULT_MAX_ITER)?;
    match cli.format {
        Format::Human => {
            println!("rho        = {:.12}", pair.rho);
            println!("residual   = {:.3e}", pair.residual);
            println!("iterations = {}", pair.iterations);
            println!("bracket    = [{:.12}, {:.12}]", pair.lambda_min, pair.lambda_max);
        }
        Format::Json => {
            println!("{}", serde_json::to_string_pretty(&pair).expect("eigenpair serializes"));
        }
        Format::Csv => {
            println!("rho,residual,iterations");
            println!("{:.12e},{:.3e},{}", pair.rho, pair.residual, pair.iterations);
        }
    }
    Ok(0)
}

/// Sidecar path: `foo.json` becomes `foo.labels.json`, anything else gets
/// `.labels.json` appended.
fn sidecar_path(out: &Path) -> PathBuf {
    let name = out.file_name().and_then(|s| s.to_str()).unwrap_or_default();
    let new_name = match name.strip_suffix(".json") {
        Some(stem) => format!("{stem}.labels.json"),
        None => format!("{name}.labels.json"),
    };
    out.with_file_name(new_name)
}

fn cmd_build(family: &str, m: Option<usize>, k: usize, out: &Path) -> Result<u8, Failure> {
    let family = Family::from_str(family)?;
    let lh = build_family(&FamilySpec::new(family, k, m))?;
    let labels = sidecar_path(out);
    fs::write(out, lh.graph.to_json() + "\n")
        .map_err(|e| fail(EXIT_INPUT, format!("cannot write {}: {e}", out.display())))?;
    fs::write(&labels, lh.sidecar().to_json() + "\n")
        .map_err(|e| fail(EXIT_INPUT, format!("cannot write {}: {e}", labels.display())))?;
    println!(
        "wrote {} ({} vertices, {} edges) and {}",
        out.display(),
        lh.graph.n(),
        lh.graph.num_edges(),
        labels.display()
    );
    Ok(0)
}

fn cmd_certify(cli: &Cli, family: &str, m: usize, k: usize) -> Result<u8, Failure> {
    let family = CertFamily::from_str(family).map_err(|e| {
        match family.to_ascii_uppercase().as_str() {
            "B" => fail(
                EXIT_INPUT,
                "family B has no normal certificate; compare it with `witness B-under-A`",
            ),
            "J" => fail(
                EXIT_INPUT,
                "family J has no normal certificate; compare it with `witness J-under-I`",
            ),
            _ => e.into(),
        }
    })?;
    let sol = solve_certificate_with_tol(family, m, k, cli.tol_alpha)?;
    let lh = build_family(&FamilySpec::new(family.family(), k, Some(m)))?;
    let power = spectral_radius(&lh.graph, cli.tol_power, DEFAULT_MAX_ITER)?;
    let gap = (sol.rho - power.rho).abs();
    match cli.format {
        Format::Human => {
            println!("family     = {family}, m = {m}, k = {k}");
            println!("alpha      = {:.15}", sol.alpha);
            println!("rho_cert   = {:.15}", sol.rho);
            println!("rho_power  = {:.15}", power.rho);
            println!("gap        = {gap:.3e}");
        }
        Format::Json => {
            let certificate: serde_json::Value =
                serde_json::from_str(&sol.to_json()).expect("certificate JSON parses");
            let doc = serde_json::json!({
                "certificate": certificate,
                "rho_power": power.rho,
                "gap": gap,
            });
            println!("{}", serde_json::to_string_pretty(&doc).expect("document serializes"));
        }
        Format::Csv => {
            println!("family,m,k,alpha,rho_cert,rho_power,gap");
            println!("{family},{m},{k},{:.15e},{:.15e},{:.15e},{gap:.3e}", sol.alpha, sol.rho, power.rho);
        }
    }
    if gap <= cli.tol_agree {
        Ok(0)
    } else {
        Err(fail(
            EXIT_NUMERIC,
            format!("certificate and power iteration disagree: gap {gap:.3e} exceeds {:.0e}", cli.tol_agree),
        ))
    }
}

fn cmd_witness(cli: &Cli, pair: &str, m: usize, k: usize) -> Result<u8, Failure> {
    let pair = WitnessPair::from_str(pair)?;
    let w = subnormal_witness_with_tol(pair, m, k, cli.tol_alpha)?;
    match cli.format {
        Format::Human => {
            println!("pair       = {pair}, m = {m}, k = {k}");
            println!("alpha      = {:.15}", w.alpha);
            println!("rho_bound  = {:.15}", w.rho);
            println!("slack      = {:.6e}", w.slack);
            println!("guaranteed = {}", w.guaranteed);
            println!("verdict    = {}", w.verdict);
        }
        Format::Json => println!("{}", w.to_json()),
        Format::Csv => {
            println!("pair,m,k,alpha,rho,slack,guaranteed,verdict");
            println!(
                "{pair},{m},{k},{:.15e},{:.15e},{:.6e},{},{}",
                w.alpha, w.rho, w.slack, w.guaranteed, w.verdict
            );
        }
    }
    Ok(0)
}

fn enumeration_human(result: &EnumerationResult) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "enumeration n = {}, k = {}, filter = {}: {} member(s)",
        result.n,
        result.k,
        result.filter,
        result.members.len()
    );
    for (i, member) in result.members.iter().enumerate() {
        let marker = if result.maximizer == Some(i) { " <- maximizer" } else { "" };
        let _ = writeln!(
            out,
            "  {:016x}  {:<24}  rho = {:.12}{}",
            member.canonical.digest(),
            member.label.tag_string(),
            member.rho,
            marker
        );
    }
    let _ = writeln!(
        out,
        "stats: {} candidates, {} pruned branches, {} evaluated, {} distinct",
        result.stats.candidates_generated,
        result.stats.pruned,
        result.stats.evaluated,
        result.stats.distinct
    );
    if result.co_maximizers.len() > 1 {
        let _ = writeln!(out, "co-maximizers within tolerance: {:?}", result.co_maximizers);
    }
    out.trim_end().to_string()
}

fn cmd_enumerate(
    cli: &Cli,
    n: usize,
    k: usize,
    filter: EnumFilter,
    out: Option<&Path>,
) -> Result<u8, Failure> {
    let config = enumeration_config(cli)?;
    let result = enumerate_unicyclic_pm(n, k, filter, &config)?;
    let payload = match cli.format {
        Format::Human => enumeration_human(&result),
        Format::Json => result.to_json(),
        Format::Csv => result.to_csv().trim_end().to_string(),
    };
    write_or_print(out, &payload, "enumeration")?;
    Ok(0)
}

fn report_human(report: &TheoremReport) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "claim {} (k = {}, m = {}..{}, {} mode): {}",
        report.id, report.k, report.m_lo, report.m_hi, report.mode, report.verdict
    );
    for e in &report.entries {
        let mut extras = String::new();
        if let Some(gap) = e.gap {
            let _ = write!(extras, ", gap {gap:.3e}");
        }
        if let Some(members) = e.members {
            let _ = write!(extras, ", {members} member(s)");
        }
        let _ = writeln!(out, "  [{}] m={}: {}{} -- {}", report.id, e.m, e.verdict, extras, e.detail);
    }
    if let Some(gap) = report.min_gap {
        let _ = writeln!(out, "minimum confirmed gap: {gap:.3e}");
    }
    if let Some(cx) = &report.counterexample {
        let _ = writeln!(out, "counterexample: {cx}");
    }
    for note in &report.notes {
        let _ = writeln!(out, "note: {note}");
    }
    out.trim_end().to_string()
}

fn report_csv(report: &TheoremReport) -> String {
    let mut out = String::from("m,verdict,gap,members,detail\n");
    for e in &report.entries {
        let gap = e.gap.map(|g| format!("{g:.12e}")).unwrap_or_default();
        let members = e.members.map(|m| m.to_string()).unwrap_or_default();
        let _ = writeln!(out, "{},{},{},{},{}", e.m, e.verdict, gap, members, csv_quote(&e.detail));
    }
    out.trim_end().to_string()
}

fn cmd_verify(
    cli: &Cli,
    id: &str,
    k: usize,
    m_range: &str,
    exhaustive: bool,
    out: Option<&Path>,
) -> Result<u8, Failure> {
    let id = TheoremId::from_str(id)?;
    let (m_lo, m_hi) = parse_range(m_range)?;
    let mode = if exhaustive {
        VerifyMode::Exhaustive
    } else if id.is_family_mode() {
        VerifyMode::Family
    } else {
        VerifyMode::Exhaustive
    };
    let config = enumeration_config(cli)?;
    let report = verify_theorem(id, k, m_lo, m_hi, mode, &config)?;
    let payload = match cli.format {
        Format::Human => report_human(&report),
        Format::Json => report.to_json(),
        Format::Csv => report_csv(&report),
    };
    match out {
        Some(path) => {
            write_or_print(Some(path), &payload, "report")?;
            println!("claim {}: {}", report.id, report.verdict);
        }
        None => println!("{payload}"),
    }
    Ok(match report.verdict {
        Verdict::Confirmed => 0,
        Verdict::Refuted => EXIT_REFUTED,
        Verdict::OutOfRange => EXIT_OUT_OF_RANGE,
    })
}

fn comparison_human(report: &OpenComparisonReport) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "triangle-family comparison, k = {}, m = {}..{} (signed gap = rho(D) - rho(A))",
        report.k, report.m_lo, report.m_hi
    );
    for e in &report.entries {
        let _ = writeln!(
            out,
            "  m={}: rho(A) = {:.9}, rho(D) = {:.9}, gap = {:+.3e}, favors {}",
            e.m, e.rho_a, e.rho_d, e.gap, e.favors
        );
    }
    out.trim_end().to_string()
}

fn cmd_compare_ad(cli: &Cli, k: usize, m_range: &str) -> Result<u8, Failure> {
    let (m_lo, m_hi) = parse_range(m_range)?;
    let report = resolve_open_comparison(k, m_lo, m_hi, cli.tol_power, cli.tol_agree)?;
    match cli.format {
        Format::Human => println!("{}", comparison_human(&report)),
        Format::Json => println!("{}", report.to_json()),
        Format::Csv => {
            println!("m,rho_a,rho_d,gap,favors");
            for e in &report.entries {
                println!("{},{:.12e},{:.12e},{:+.12e},{}", e.m, e.rho_a, e.rho_d, e.gap, e.favors);
            }
        }
    }
    Ok(0)
}
