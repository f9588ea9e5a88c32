//! Command dispatch for the `spinc4` binary.
//!
//! Exit codes: 0 on success, 1 for invalid input (syntax, validation,
//! non-characteristic `c1`, bad flags), 2 when the input is valid but a
//! theorem's hypotheses are not met.

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use crate::atlas::{ManifoldData, Summand};
use crate::bordism::{certify_family, sigma0, FamilyCertificate};
use crate::error::{Error, Result};
use crate::expr::parse;
use crate::lattice::LatticeVector;
use crate::obstruction::{
    einstein_nonexistence, embedding_obstructed, example_scan, hitchin_thorpe, min_genus, yamabe_value,
    SurfaceCandidate,
};
use crate::report::{
    AdjunctionEntry, EinsteinEntry, ManifoldSummary, Report, Sigma0Entry, SpinCSource, SpinCSummary, YamabeEntry,
    CAVEAT_SIGMA0_LOOKUP, CAVEAT_YAMABE_HYPOTHESIS,
};
use crate::spinc::{
    c1_squared, c_matrix, condition_star, dirac_index, moduli_dimension, square_root_exists, w2_classes,
    SpinCStructure,
};

#[derive(Debug, Parser)]
#[command(name = "spinc4", version, about = "Spin^c parity, spin-bordism and Einstein/Yamabe obstructions for 4-manifolds")]
struct Cli {
    /// Emit the JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Target {
    /// Manifold expression, e.g. "K3 # 2*SP(3,3)".
    expr: String,

    /// c1(det L) coordinates; defaults to the canonical class.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    c1: Option<Vec<i64>>,
}

#[derive(Debug, Args, Default)]
struct SurfaceArgs {
    /// Self-intersection of the surface.
    #[arg(long = "self-int", allow_negative_numbers = true)]
    self_int: Option<i64>,

    /// Pairing of c1 with the surface class.
    #[arg(long, allow_negative_numbers = true)]
    pairing: Option<i64>,

    /// Genus of a candidate surface to test.
    #[arg(long)]
    genus: Option<u32>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Everything applicable to the manifold.
    Analyze {
        #[command(flatten)]
        target: Target,
        #[arg(long)]
        n1: Option<String>,
        #[arg(long)]
        n2: Option<String>,
        #[arg(long = "nonneg-scalar")]
        nonneg_scalar: bool,
        #[command(flatten)]
        surface: SurfaceArgs,
    },
    /// Condition (*) and the w2 parities.
    Star {
        #[command(flatten)]
        target: Target,
    },
    /// The spin-bordism invariant sigma0.
    Sigma0 {
        #[command(flatten)]
        target: Target,
    },
    /// Adjunction bound for embedded surfaces.
    Genus {
        #[command(flatten)]
        target: Target,
        #[command(flatten)]
        surface: SurfaceArgs,
    },
    /// Yamabe invariant of M # N1.
    Yamabe {
        #[command(flatten)]
        target: Target,
        #[arg(long)]
        n1: String,
        #[arg(long = "nonneg-scalar")]
        nonneg_scalar: bool,
    },
    /// Einstein non-existence on M # N2.
    Einstein {
        #[command(flatten)]
        target: Target,
        #[arg(long)]
        n2: String,
    },
    /// Sweep r for (two odd surface products) # r*~CP2 # s*S1xS3.
    Scan {
        #[arg(long = "G-from")]
        g_from: String,
        #[arg(long, default_value_t = 0)]
        s: u32,
        #[arg(long = "r-max", default_value_t = 100)]
        r_max: u32,
    },
}

/// Captured result of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Runs the command line `args` (including the program name).
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let rendered = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Outcome {
                    code: 0,
                    stdout: rendered,
                    stderr: String::new(),
                },
                _ => Outcome {
                    code: 1,
                    stdout: String::new(),
                    stderr: rendered,
                },
            };
        }
    };
    let json = cli.json;
    match execute(cli.command) {
        Ok(report) => Outcome {
            code: 0,
            stdout: if json { report.to_json() + "\n" } else { report.to_string() },
            stderr: String::new(),
        },
        Err(e) => {
            let stdout = if json {
                let doc = json!({
                    "schema": crate::report::SCHEMA_VERSION,
                    "error": { "kind": e.kind(), "message": e.to_string(), "exit_code": e.exit_code() },
                });
                serde_json::to_string_pretty(&doc).expect("error serializes") + "\n"
            } else {
                String::new()
            };
            Outcome {
                code: e.exit_code(),
                stdout,
                stderr: format!("error: {e}\n"),
            }
        }
    }
}

struct Loaded {
    input: String,
    manifold: ManifoldData,
}

fn load(expr: &str) -> Result<Loaded> {
    let parsed = parse(expr)?;
    Ok(Loaded {
        input: parsed.to_string(),
        manifold: parsed.resolve()?,
    })
}

fn spinc_for(m: &ManifoldData, c1: &Option<Vec<i64>>) -> Result<Option<(SpinCStructure, SpinCSource)>> {
    match c1 {
        Some(v) => Ok(Some((SpinCStructure::new(m, LatticeVector::new(v.clone()))?, SpinCSource::User))),
        None if m.canonical_c1().is_some() => Ok(Some((SpinCStructure::canonical(m)?, SpinCSource::Canonical))),
        None => Ok(None),
    }
}

fn require_spinc(m: &ManifoldData, c1: &Option<Vec<i64>>) -> Result<(SpinCStructure, SpinCSource)> {
    spinc_for(m, c1)?.ok_or_else(|| {
        Error::Validation("the manifold has no canonical spin^c structure; pass --c1".into())
    })
}

fn spinc_summary(m: &ManifoldData, s: &SpinCStructure, source: SpinCSource) -> Result<SpinCSummary> {
    Ok(SpinCSummary {
        source,
        c1: s.c1().clone(),
        c1_squared: c1_squared(m, s)?,
        dirac_index: dirac_index(m, s)?,
        moduli_dimension: moduli_dimension(m, s)?,
        c_matrix: c_matrix(m, s)?,
        square_root_exists: square_root_exists(m, s)?,
    })
}

fn sigma0_entry(m: &ManifoldData, s: &SpinCStructure) -> Result<Sigma0Entry> {
    let certificate: FamilyCertificate = certify_family(m, s)?;
    let class = sigma0(m, s)?;
    Ok(Sigma0Entry { certificate, class })
}

fn adjunction_entry(m: &ManifoldData, s: &SpinCStructure, surface: &SurfaceArgs) -> Result<AdjunctionEntry> {
    let (Some(n), Some(p)) = (surface.self_int, surface.pairing) else {
        return Err(Error::Validation("--self-int and --pairing are both required".into()));
    };
    let obstructed = match surface.genus {
        Some(genus) => Some(embedding_obstructed(
            m,
            s,
            &SurfaceCandidate {
                self_intersection: n,
                genus,
                pairing: p,
            },
        )?),
        None => None,
    };
    Ok(AdjunctionEntry {
        self_intersection: n,
        pairing: p,
        genus: surface.genus,
        obstructed,
        min_genus: min_genus(m, s, n, p)?,
    })
}

fn einstein_entry(m: &ManifoldData, s: &SpinCStructure, n2_expr: &str) -> Result<EinsteinEntry> {
    let n2 = load(n2_expr)?;
    let obstructed = einstein_nonexistence(m, s, &n2.manifold)?;
    Ok(EinsteinEntry {
        n2: n2.input,
        n2_euler: n2.manifold.euler(),
        n2_signature: n2.manifold.signature(),
        obstructed,
        sum_hitchin_thorpe: hitchin_thorpe(&m.connected_sum(&n2.manifold)),
    })
}

fn yamabe_entry(m: &ManifoldData, s: &SpinCStructure, n1_expr: &str, nonneg: bool) -> Result<YamabeEntry> {
    let n1 = load(n1_expr)?;
    let value = yamabe_value(m, s, &n1.manifold, nonneg)?;
    Ok(YamabeEntry {
        n1: n1.input,
        nonneg_scalar_asserted: nonneg,
        value,
        exact: value.to_string(),
        approx: value.approx(),
    })
}

/// Records an inapplicable result as a note; other errors propagate.
fn soft<T>(notes: &mut Vec<String>, what: &str, r: Result<T>) -> Result<Option<T>> {
    match r {
        Ok(v) => Ok(Some(v)),
        Err(e) if e.is_inapplicable() => {
            notes.push(format!("{what}: {e}"));
            Ok(None)
        }
        Err(e) => Err(e),
    }
}

fn base_report(command: &str, target: &Target) -> Result<(Report, ManifoldData)> {
    let loaded = load(&target.expr)?;
    let mut report = Report::new(command, &loaded.input);
    report.manifold = Some(ManifoldSummary::new(&loaded.input, &loaded.manifold));
    Ok((report, loaded.manifold))
}

fn execute(command: Command) -> Result<Report> {
    match command {
        Command::Analyze {
            target,
            n1,
            n2,
            nonneg_scalar,
            surface,
        } => {
            let (mut report, m) = base_report("analyze", &target)?;
            report.hitchin_thorpe = Some(hitchin_thorpe(&m));
            let Some((s, source)) = spinc_for(&m, &target.c1)? else {
                report
                    .notes
                    .push("no canonical spin^c structure; pass --c1 for spin^c results".into());
                return Ok(report);
            };
            report.spinc = Some(spinc_summary(&m, &s, source)?);
            report.condition_star = Some(condition_star(&m, &s)?);
            report.w2 = Some(w2_classes(&m, &s, 0)?);
            let mut notes = Vec::new();
            report.sigma0 = soft(&mut notes, "sigma0", sigma0_entry(&m, &s))?;
            report.caveats.push(CAVEAT_SIGMA0_LOOKUP.into());
            if surface.self_int.is_some() || surface.pairing.is_some() {
                report.adjunction = soft(&mut notes, "adjunction", adjunction_entry(&m, &s, &surface))?;
            }
            if let Some(n2) = &n2 {
                report.einstein = soft(&mut notes, "einstein", einstein_entry(&m, &s, n2))?;
            }
            if let Some(n1) = &n1 {
                report.yamabe = soft(&mut notes, "yamabe", yamabe_entry(&m, &s, n1, nonneg_scalar))?;
                report.caveats.push(CAVEAT_YAMABE_HYPOTHESIS.into());
            }
            report.notes = notes;
            Ok(report)
        }
        Command::Star { target } => {
            let (mut report, m) = base_report("star", &target)?;
            let (s, source) = require_spinc(&m, &target.c1)?;
            report.spinc = Some(spinc_summary(&m, &s, source)?);
            report.condition_star = Some(condition_star(&m, &s)?);
            report.w2 = Some(w2_classes(&m, &s, 0)?);
            Ok(report)
        }
        Command::Sigma0 { target } => {
            let (mut report, m) = base_report("sigma0", &target)?;
            let (s, source) = require_spinc(&m, &target.c1)?;
            report.spinc = Some(spinc_summary(&m, &s, source)?);
            report.condition_star = Some(condition_star(&m, &s)?);
            report.sigma0 = Some(sigma0_entry(&m, &s)?);
            report.caveats.push(CAVEAT_SIGMA0_LOOKUP.into());
            Ok(report)
        }
        Command::Genus { target, surface } => {
            let (mut report, m) = base_report("genus", &target)?;
            let (s, _) = require_spinc(&m, &target.c1)?;
            report.adjunction = Some(adjunction_entry(&m, &s, &surface)?);
            report.caveats.push(CAVEAT_SIGMA0_LOOKUP.into());
            Ok(report)
        }
        Command::Yamabe {
            target,
            n1,
            nonneg_scalar,
        } => {
            let (mut report, m) = base_report("yamabe", &target)?;
            let (s, _) = require_spinc(&m, &target.c1)?;
            report.yamabe = Some(yamabe_entry(&m, &s, &n1, nonneg_scalar)?);
            report.caveats.push(CAVEAT_SIGMA0_LOOKUP.into());
            report.caveats.push(CAVEAT_YAMABE_HYPOTHESIS.into());
            Ok(report)
        }
        Command::Einstein { target, n2 } => {
            let (mut report, m) = base_report("einstein", &target)?;
            let (s, _) = require_spinc(&m, &target.c1)?;
            report.einstein = Some(einstein_entry(&m, &s, &n2)?);
            report.caveats.push(CAVEAT_SIGMA0_LOOKUP.into());
            Ok(report)
        }
        Command::Scan { g_from, s, r_max } => {
            let loaded = load(&g_from)?;
            let genera = scan_genera(&loaded.manifold)?;
            let mut report = Report::new("scan", &loaded.input);
            report.manifold = Some(ManifoldSummary::new(&loaded.input, &loaded.manifold));
            report.scan = Some(example_scan(genera, s, r_max)?);
            report.caveats.push(CAVEAT_SIGMA0_LOOKUP.into());
            Ok(report)
        }
    }
}

/// Genera of the two surface-product summands of a scan base.
fn scan_genera(m: &ManifoldData) -> Result<[(u32, u32); 2]> {
    let mut genera = Vec::new();
    for summand in m.summands() {
        match *summand {
            Summand::SurfaceProduct { g, g_prime } => genera.push((g, g_prime)),
            Summand::S4 => {}
            ref other => {
                return Err(Error::UnsupportedFamily(format!(
                    "scan base must be two surface products, found {other}"
                )))
            }
        }
    }
    match genera.as_slice() {
        &[a, b] => Ok([a, b]),
        _ => Err(Error::UnsupportedFamily(format!(
            "scan base must have exactly two surface-product summands, found {}",
            genera.len()
        ))),
    }
}
