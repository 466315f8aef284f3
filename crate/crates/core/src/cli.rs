//! Command-line front end shared by the `repfactor` binary and the tests.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::error::Error;
use crate::factorization::{factorize, FactorizationCertificate};
use crate::group::{direct_product, parse_group_spec, save_table_file, standard_subgroups, GroupRef};
use crate::numerics::Tolerances;
use crate::report::FORMAT_VERSION;
use crate::repr::{unitary_dual, CharacterTableDocument};
use crate::suites::{self, Suite, SuiteConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;
pub const EXIT_INTERNAL: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "repfactor", version, about = "Unitary duals, isotypes and tensor factorization for finite groups")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Seed for every sampled quantity.
    #[arg(long, global = true, env = "REPFACTOR_SEED", default_value_t = 42)]
    pub seed: u64,

    /// Residual threshold override.
    #[arg(long, global = true)]
    pub tol: Option<f64>,

    /// Write the output document here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Human)]
    pub format: Format,

    /// First group spec (C<n>, D<n>, S<n>, A<n>, Q8, table:<path>, prod(a,b)).
    #[arg(long, global = true)]
    pub g: Option<String>,

    /// Second group spec.
    #[arg(long, global = true)]
    pub h: Option<String>,

    /// Comma-separated generator indices of K inside G.
    #[arg(long, global = true)]
    pub k: Option<String>,

    /// Comma-separated generator indices of L inside H.
    #[arg(long, global = true)]
    pub l: Option<String>,

    /// Irrep index into the catalog of G×H.
    #[arg(long, global = true)]
    pub index: Option<usize>,

    /// Verification suite name.
    #[arg(long, global = true)]
    pub suite: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Human,
    Structured,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Describe groups: order, conjugacy classes, generators, sweep subgroups.
    Groups {
        specs: Vec<String>,
        /// Also write the Cayley table of the (single) group to this file.
        #[arg(long)]
        cayley: Option<PathBuf>,
    },
    /// Character table of a group.
    Irreps { spec: Option<String> },
    /// Factor an irreducible of G×H as π⊗τ and emit a certificate.
    Factor {
        #[arg(value_name = "G")]
        g_spec: Option<String>,
        #[arg(value_name = "H")]
        h_spec: Option<String>,
    },
    /// Run a named verification suite.
    Verify {
        #[arg(value_name = "SUITE")]
        suite_name: Option<String>,
    },
}

/// A failed command: message plus exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure { code: EXIT_USAGE, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure { code: exit_code(&e), message: e.to_string() }
    }
}

/// Exit code for a library error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse { .. } | Error::File { .. } | Error::Validation(_) => EXIT_USAGE,
        Error::NotHermitian { .. }
        | Error::NonFinite
        | Error::ClassInconsistent { .. }
        | Error::Convergence { .. }
        | Error::NonIntegralMultiplicity { .. }
        | Error::WitnessFailure { .. }
        | Error::NotCommuting { .. }
        | Error::LargeResidual { .. }
        | Error::NotScalar { .. }
        | Error::FactorizationResidual { .. } => EXIT_NUMERICAL,
        _ => EXIT_INTERNAL,
    }
}

/// Parses `args` (including the program name), runs the command, and
/// returns the exit code. Documents go to `stdout` (or `--out`), diagnostics
/// to `stderr`.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK { stdout.write_all(text.as_bytes()) } else { stderr.write_all(text.as_bytes()) };
            return code;
        }
    };
    match execute(&cli) {
        Ok((doc, code)) => {
            if let Err(f) = emit(&cli.common, &doc, stdout) {
                let _ = writeln!(stderr, "error: {}", f.message);
                return f.code;
            }
            code
        }
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.message);
            f.code
        }
    }
}

fn emit(common: &Common, doc: &str, stdout: &mut dyn Write) -> Result<(), Failure> {
    match &common.out {
        Some(path) => std::fs::write(path, doc)
            .map_err(|e| Failure::usage(format!("cannot write `{}`: {e}", path.display()))),
        None => stdout.write_all(doc.as_bytes()).map_err(|e| Failure { code: EXIT_INTERNAL, message: e.to_string() }),
    }
}

fn structured<T: Serialize>(doc: &T) -> String {
    serde_json::to_string_pretty(doc).expect("serialisable") + "\n"
}

fn group(spec: &str) -> Result<GroupRef, Failure> {
    Ok(Arc::new(parse_group_spec(spec)?))
}

fn pick_spec<'a>(positional: Option<&'a String>, flag: Option<&'a String>, what: &str) -> Result<&'a str, Failure> {
    match (positional, flag) {
        (Some(a), Some(b)) if a != b => Err(Failure::usage(format!("{what} given twice (`{a}` and `{b}`)"))),
        (Some(a), _) | (None, Some(a)) => Ok(a),
        (None, None) => Err(Failure::usage(format!("missing {what}"))),
    }
}

/// Comma-separated element indices, checked against the group order.
pub fn parse_generators(text: &str, g: &GroupRef) -> Result<Vec<usize>, Failure> {
    let text = text.trim();
    if text.is_empty() {
        return Ok(Vec::new());
    }
    text.split(',')
        .map(|s| {
            let x: usize = s.trim().parse().map_err(|_| Failure::usage(format!("bad generator index `{s}`")))?;
            if x >= g.order() {
                return Err(Failure::usage(format!("generator {x} out of range for {} (order {})", g.label(), g.order())));
            }
            Ok(x)
        })
        .collect()
}

fn execute(cli: &Cli) -> Result<(String, i32), Failure> {
    let c = &cli.common;
    match &cli.command {
        Command::Groups { specs, cayley } => cmd_groups(c, specs, cayley.as_ref()),
        Command::Irreps { spec } => cmd_irreps(c, pick_spec(spec.as_ref(), c.g.as_ref(), "group spec")?),
        Command::Factor { g_spec, h_spec } => cmd_factor(
            c,
            pick_spec(g_spec.as_ref(), c.g.as_ref(), "group spec G")?,
            pick_spec(h_spec.as_ref(), c.h.as_ref(), "group spec H")?,
        ),
        Command::Verify { suite_name } => {
            cmd_verify(c, pick_spec(suite_name.as_ref(), c.suite.as_ref(), "suite name")?)
        }
    }
}

#[derive(Serialize)]
struct GroupSummary {
    spec: String,
    order: usize,
    abelian: bool,
    identity: usize,
    generators: Vec<usize>,
    class_sizes: Vec<usize>,
    class_representatives: Vec<usize>,
    sweep_subgroups: Vec<Vec<usize>>,
}

#[derive(Serialize)]
struct GroupsDocument {
    format_version: u32,
    groups: Vec<GroupSummary>,
}

fn cmd_groups(c: &Common, specs: &[String], cayley: Option<&PathBuf>) -> Result<(String, i32), Failure> {
    let mut specs = specs.to_vec();
    specs.extend(c.g.iter().cloned());
    specs.extend(c.h.iter().cloned());
    if specs.is_empty() {
        return Err(Failure::usage("no group specs given"));
    }
    let mut groups = Vec::new();
    for s in &specs {
        let g = group(s)?;
        groups.push(GroupSummary {
            spec: g.label().to_string(),
            order: g.order(),
            abelian: g.is_abelian(),
            identity: g.identity(),
            generators: g.generators().to_vec(),
            class_sizes: g.conjugacy_classes().iter().map(|k| k.len()).collect(),
            class_representatives: g.conjugacy_classes().iter().map(|k| k[0]).collect(),
            sweep_subgroups: standard_subgroups(&g).iter().map(|k| k.elements().to_vec()).collect(),
        });
        if let Some(path) = cayley {
            if specs.len() != 1 {
                return Err(Failure::usage("--cayley needs exactly one group"));
            }
            save_table_file(&g, path)?;
        }
    }
    let doc = GroupsDocument { format_version: FORMAT_VERSION, groups };
    let text = match c.format {
        Format::Structured => structured(&doc),
        Format::Human => {
            let mut s = String::new();
            for g in &doc.groups {
                let _ = writeln!(s, "{}: order {}, {} classes{}", g.spec, g.order, g.class_sizes.len(), if g.abelian { ", abelian" } else { "" });
                let _ = writeln!(s, "  generators {:?}", g.generators);
                let _ = writeln!(s, "  class sizes {:?}", g.class_sizes);
                let _ = writeln!(s, "  class representatives {:?}", g.class_representatives);
                let _ = writeln!(s, "  sweep subgroups {:?}", g.sweep_subgroups);
            }
            s
        }
    };
    Ok((text, EXIT_OK))
}

fn format_complex(v: [f64; 2]) -> String {
    let (re, im) = (v[0], v[1]);
    if im == 0.0 {
        format!("{re:.4}")
    } else {
        format!("{re:.4}{:+.4}i", im)
    }
}

/// Plain-text rendering of a character table.
pub fn render_character_table(doc: &CharacterTableDocument) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "{}: order {}, {} irreps", doc.group, doc.order, doc.irreps.len());
    let _ = write!(s, "{:>6} {:>4}", "irrep", "dim");
    for (size, rep) in doc.class_sizes.iter().zip(&doc.class_representatives) {
        let _ = write!(s, " {:>16}", format!("{size}x[{rep}]"));
    }
    s.push('\n');
    for row in &doc.irreps {
        let _ = write!(s, "{:>6} {:>4}", row.index, row.dim);
        for v in &row.values {
            let _ = write!(s, " {:>16}", format_complex(*v));
        }
        s.push('\n');
    }
    s
}

fn cmd_irreps(c: &Common, spec: &str) -> Result<(String, i32), Failure> {
    let g = group(spec)?;
    let cat = unitary_dual(&g, c.seed)?;
    let tol = c.tol.unwrap_or(Tolerances::default().character);
    let residual = cat.orthonormality_residual();
    if residual > tol {
        return Err(Failure {
            code: EXIT_NUMERICAL,
            message: format!("character orthonormality residual {residual:.3e} exceeds {tol:e}"),
        });
    }
    let doc = cat.character_table();
    let text = match c.format {
        Format::Structured => structured(&doc),
        Format::Human => render_character_table(&doc),
    };
    Ok((text, EXIT_OK))
}

fn cmd_factor(c: &Common, g_spec: &str, h_spec: &str) -> Result<(String, i32), Failure> {
    let g = group(g_spec)?;
    let h = group(h_spec)?;
    let index = c.index.ok_or_else(|| Failure::usage("missing --index"))?;
    let product: GroupRef = Arc::new(direct_product(&g, &h));
    let cat = unitary_dual(&product, c.seed)?;
    let Some(eta) = cat.irreps.get(index) else {
        return Err(Failure::usage(format!("index {index} out of range: {} has {} irreps", product.label(), cat.len())));
    };
    let result = factorize(eta, &g, &h, c.seed)?;
    let cert = FactorizationCertificate::new(eta, &result, index)?;
    let tol = c.tol.unwrap_or(Tolerances::default().intertwine);
    let ok = result.residual_intertwine <= tol && result.residual_unitary <= tol;
    let text = match c.format {
        Format::Structured => structured(&cert),
        Format::Human => {
            let mut s = String::new();
            let _ = writeln!(s, "{} irrep {index} (dim {}) = pi (dim {}) (x) tau (dim {})", product.label(), cert.eta_dim, cert.pi_dim, cert.tau_dim);
            let row = |v: &[[f64; 2]]| v.iter().map(|z| format_complex(*z)).collect::<Vec<_>>().join(" ");
            let _ = writeln!(s, "  chi_eta: {}", row(&cert.eta_character));
            let _ = writeln!(s, "  chi_pi:  {}", row(&cert.pi_character));
            let _ = writeln!(s, "  chi_tau: {}", row(&cert.tau_character));
            let _ = writeln!(
                s,
                "  residuals: intertwine {:.2e}, unitary {:.2e}, character {:.2e}",
                cert.residual_intertwine, cert.residual_unitary, cert.residual_character
            );
            let _ = writeln!(s, "  seed {}", cert.seed);
            s
        }
    };
    Ok((text, if ok { EXIT_OK } else { EXIT_NUMERICAL }))
}

fn cmd_verify(c: &Common, name: &str) -> Result<(String, i32), Failure> {
    let suite = Suite::from_name(name).ok_or_else(|| Failure::usage(format!("unknown suite `{name}`")))?;
    let g = group(c.g.as_deref().unwrap_or("S3"))?;
    let h = group(c.h.as_deref().unwrap_or("C2"))?;
    let mut cfg = SuiteConfig::new(g.clone(), h.clone()).with_seed(c.seed);
    cfg.tol = c.tol;
    cfg.k = c.k.as_deref().map(|t| parse_generators(t, &g)).transpose()?;
    cfg.l = c.l.as_deref().map(|t| parse_generators(t, &h)).transpose()?;
    let report = suites::run(suite, &cfg)?;
    let text = match c.format {
        Format::Structured => report.to_structured(),
        Format::Human => report.to_human(),
    };
    Ok((text, if report.passed() { EXIT_OK } else { EXIT_NUMERICAL }))
}

/// Entry point for the binary.
pub fn main_from_env() -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let mut full = vec!["repfactor"];
        full.extend_from_slice(args);
        let code = run(full, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn irreps_documents() {
        let (code, out, _) = call(&["irreps", "S3", "--format", "structured"]);
        assert_eq!(code, 0);
        let doc: CharacterTableDocument = serde_json::from_str(&out).unwrap();
        assert_eq!(doc.irreps.iter().map(|r| r.dim).collect::<Vec<_>>(), vec![1, 1, 2]);
        let (code, out, _) = call(&["irreps", "C1"]);
        assert_eq!(code, 0);
        assert!(out.contains("1 irreps"));
        let (code, out, _) = call(&["irreps", "--g", "prod(C2,C2)", "--format", "structured"]);
        assert_eq!(code, 0);
        let doc: CharacterTableDocument = serde_json::from_str(&out).unwrap();
        assert!(doc.irreps.iter().all(|r| r.dim == 1) && doc.irreps.len() == 4);
    }

    #[test]
    fn usage_errors() {
        assert_eq!(call(&["irreps", "X9"]).0, EXIT_USAGE);
        assert_eq!(call(&["verify", "no-such-suite"]).0, EXIT_USAGE);
        assert_eq!(call(&["factor", "S3", "C4", "--index", "99"]).0, EXIT_USAGE);
        assert_eq!(call(&["factor", "S3", "C4"]).0, EXIT_USAGE);
        assert_eq!(call(&["verify", "all", "--g", "S3", "--k", "7"]).0, EXIT_USAGE);
        assert_eq!(call(&["bogus"]).0, EXIT_USAGE);
        assert_eq!(call(&["--help"]).0, EXIT_OK);
    }

    #[test]
    fn factor_and_verify() {
        let (code, out, _) = call(&["factor", "C2", "C2", "--index", "3", "--format", "structured"]);
        assert_eq!(code, 0);
        let cert: FactorizationCertificate = serde_json::from_str(&out).unwrap();
        assert_eq!((cert.pi_dim, cert.tau_dim), (1, 1));
        let (code, out, _) = call(&["verify", "theorem-459", "--g", "S3", "--h", "C4"]);
        assert_eq!(code, 0, "{out}");
        assert!(out.contains("12/12 factorizations"));
        let (code, _, _) = call(&["verify", "--suite", "lemma-7510", "--g", "D4", "--k", "1"]);
        assert_eq!(code, 0);
        let (code, _, _) = call(&["factor", "--g", "S3", "--h", "C4", "--index", "0"]);
        assert_eq!(code, 0);
    }

    #[test]
    fn exit_code_classes() {
        assert_eq!(exit_code(&Error::Convergence { dim: 2, attempts: 6 }), EXIT_NUMERICAL);
        assert_eq!(exit_code(&Error::Parse { spec: "x".into(), reason: "y".into() }), EXIT_USAGE);
        assert_eq!(exit_code(&Error::MeasureMismatch), EXIT_INTERNAL);
    }
}
