//! Command dispatch. Everything here is pure: a parsed command line goes in,
//! a report text and an exit code come out.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use mgce_core::ce::{
    betti, ce_coefficients, ce_cohomological, ce_homological, duality_check, monoidality_check, window_warnings, CeSide,
};
use mgce_core::enveloping::{koszul_resolution, nested_window_exactness, pbw_truncate, u_cone_mixed};
use mgce_core::lie::{bar_name, fixtures, validate_lie, validate_rep, DgLieAlgebra, Representation};
use mgce_core::linalg::rank;
use mgce_core::sym::Monomial;
use mgce_core::{rat, MixedGradedModule, Rat, RatMatrix};
use serde_json::{json, Value};
use thiserror::Error;

use crate::manifest::{parse_manifest, Manifest, ManifestError};
use crate::report::{Check, Report, Table};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_TRUNCATED: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "mgce", version, about = "Mixed graded Chevalley-Eilenberg complexes of dg Lie algebras over Q")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the dg Lie axioms and every declared representation.
    Validate(Common),
    /// Cell dimensions and ranks of CE_ε (hom) or CE^ε (cohom).
    Ce(Common),
    /// Betti numbers of the Tate realization.
    Betti(Common),
    /// The Tate total complex, optionally with a weight floor.
    Tate {
        #[command(flatten)]
        common: Common,
        /// Lowest weight kept, as in `M_{-p}` with `p >= floor`; must be <= 0.
        #[arg(long, allow_hyphen_values = true)]
        floor: Option<i64>,
    },
    /// Check CE^ε = dual ∘ CE_ε.
    Duality(Common),
    /// Check CE_ε(g×h) = CE_ε(g) ⊗ CE_ε(h).
    Monoidality {
        #[command(flatten)]
        common: Common,
        /// Manifest of the second factor.
        #[arg(long = "with", value_name = "MANIFEST")]
        with: PathBuf,
    },
    /// Recompute the aff(1) example on U(Cn(aff(1))) and compare with the
    /// hardcoded assignment.
    CheckPaperExample(Flags),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SideArg {
    Hom,
    Cohom,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutArg {
    Json,
    Tsv,
}

#[derive(Debug, Clone, Args)]
pub struct Flags {
    /// Largest weight p of Sym^p kept (default: dim g).
    #[arg(long)]
    pub max_weight: Option<usize>,
    /// PBW word-length bound D (default: dim g + 2).
    #[arg(long)]
    pub pbw_degree: Option<usize>,
    /// Degree window `a..b`, bounds inclusive.
    #[arg(long, value_parser = parse_range, allow_hyphen_values = true)]
    pub degrees: Option<(i64, i64)>,
    /// Shorthand for `--degrees 0..N`.
    #[arg(long, conflicts_with = "degrees")]
    pub max_degree: Option<i64>,
    /// Representation to use as coefficients (cohomological side only).
    #[arg(long)]
    pub coeff: Option<String>,
    #[arg(long, value_enum, default_value = "hom")]
    pub side: SideArg,
    #[arg(long, value_enum, default_value = "json")]
    pub out: OutArg,
    /// Exit 0 instead of 3 when the weight window is a visible truncation.
    #[arg(long)]
    pub allow_truncated: bool,
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    #[command(flatten)]
    pub flags: Flags,
    pub manifest: PathBuf,
}

fn parse_range(s: &str) -> Result<(i64, i64), String> {
    let (a, b) = s.split_once("..").ok_or_else(|| format!("expected a..b, got {s:?}"))?;
    let a: i64 = a.trim().parse().map_err(|e| format!("{a:?}: {e}"))?;
    let b: i64 = b.trim().parse().map_err(|e| format!("{b:?}: {e}"))?;
    if a > b {
        return Err(format!("empty range {s}"));
    }
    Ok((a, b))
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("{path}: {source}")]
    Manifest { path: String, source: ManifestError },
    #[error(transparent)]
    Core(#[from] mgce_core::Error),
}

/// The result of one invocation.
#[derive(Debug)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn load_manifest(path: &Path) -> Result<Manifest, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Io { path: path.display().to_string(), message: e.to_string() })?;
    parse_manifest(&text).map_err(|source| CliError::Manifest { path: path.display().to_string(), source })
}

/// Truncation parameters after applying defaults, manifest requests and flags.
struct Window {
    max_weight: usize,
    pbw_degree: usize,
    degrees: Option<(i64, i64)>,
}

fn window(flags: &Flags, m: &Manifest, dim: usize) -> Window {
    let req = m.requests.clone().unwrap_or_default();
    Window {
        max_weight: flags.max_weight.or(req.max_weight).unwrap_or(dim),
        pbw_degree: flags.pbw_degree.or(req.pbw_degree).unwrap_or(dim + 2),
        degrees: flags.degrees.or(flags.max_degree.map(|n| (0, n))).or(req.degrees),
    }
}

fn side(flags: &Flags) -> CeSide {
    match flags.side {
        SideArg::Hom => CeSide::Homological,
        SideArg::Cohom => CeSide::Cohomological,
    }
}

fn side_name(flags: &Flags) -> &'static str {
    match flags.side {
        SideArg::Hom => "hom",
        SideArg::Cohom => "cohom",
    }
}

fn base_report(command: &str, path: &Path, m: &Manifest, g: &DgLieAlgebra, flags: &Flags, w: &Window) -> Report {
    let mut r = Report::default();
    r.input.insert("manifest".into(), json!(path.display().to_string()));
    r.input.insert("name".into(), json!(m.name));
    r.input.insert("dim".into(), json!(g.dim()));
    r.params.insert("command".into(), json!(command));
    r.params.insert("side".into(), json!(side_name(flags)));
    r.params.insert("max_weight".into(), json!(w.max_weight));
    r.params.insert("pbw_degree".into(), json!(w.pbw_degree));
    r.params.insert("degrees".into(), w.degrees.map_or(Value::Null, |(a, b)| json!([a, b])));
    r.params.insert("coeff".into(), flags.coeff.as_ref().map_or(Value::Null, |c| json!(c)));
    r.params.insert("allow_truncated".into(), json!(flags.allow_truncated));
    r
}

fn cells_table(m: &MixedGradedModule) -> Table {
    let mut t = Table::new(&["weight", "degree", "dim", "d_rank", "eps_rank"]);
    for (&(p, n), &k) in &m.cell_dims() {
        let d = m.weight(p).differential(n);
        let e = m.epsilon(p, n);
        t.push(vec![json!(p), json!(n), json!(k), json!(rank(&d)), json!(rank(&e))]);
    }
    t
}

fn coefficients(m: &Manifest, flags: &Flags) -> Result<Option<Representation>, CliError> {
    match &flags.coeff {
        None => Ok(None),
        Some(name) => {
            m.representation(name).map(Some).map_err(|source| CliError::Manifest { path: "--coeff".into(), source })
        }
    }
}

fn finish(report: Report, flags: &Flags) -> Outcome {
    let code = if report.has_violation() {
        EXIT_VIOLATION
    } else if !report.warnings.is_empty() && !flags.allow_truncated {
        EXIT_TRUNCATED
    } else {
        EXIT_OK
    };
    let stdout = match flags.out {
        OutArg::Json => report.to_json(),
        OutArg::Tsv => report.to_tsv(),
    };
    let stderr = if code == EXIT_TRUNCATED {
        "window is a visible truncation; pass --allow-truncated to accept\n".to_string()
    } else {
        String::new()
    };
    Outcome { code, stdout, stderr }
}

fn input_error(e: CliError) -> Outcome {
    Outcome { code: EXIT_INPUT, stdout: String::new(), stderr: format!("error: {e}\n") }
}

/// Runs a parsed command line.
pub fn execute(cli: &Cli) -> Outcome {
    match dispatch(cli) {
        Ok(o) => o,
        Err(e) => input_error(e),
    }
}

/// Parses `args` (including the program name) and runs them; clap usage
/// errors exit with 2.
pub fn run_args<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => execute(&cli),
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            if code == EXIT_OK {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            }
        }
    }
}

fn dispatch(cli: &Cli) -> Result<Outcome, CliError> {
    let (name, common) = match &cli.command {
        Command::CheckPaperExample(flags) => return Ok(paper_example(flags)),
        Command::Validate(c) => ("validate", c),
        Command::Ce(c) => ("ce", c),
        Command::Betti(c) => ("betti", c),
        Command::Tate { common, .. } => ("tate", common),
        Command::Duality(c) => ("duality", c),
        Command::Monoidality { common, .. } => ("monoidality", common),
    };
    let flags = &common.flags;
    let m = load_manifest(&common.manifest)?;
    let g = m.lie();
    let w = window(flags, &m, g.dim());
    let mut report = base_report(name, &common.manifest, &m, &g, flags, &w);
    let coeff = coefficients(&m, flags)?;

    let lie_check = Check::from(validate_lie(&g));
    let lie_ok = !lie_check.is_violation();
    report.checks.insert("lie_algebra".into(), lie_check);
    if let Some(rep) = &coeff {
        report
            .checks
            .insert(format!("representation:{}", flags.coeff.as_deref().unwrap_or("")), validate_rep(&g, rep).into());
    }
    if report.has_violation() {
        return Ok(finish(report, flags));
    }
    debug_assert!(lie_ok);

    match &cli.command {
        Command::Validate(_) => {
            let mut t = Table::new(&["generator", "degree"]);
            for (n, d) in g.names().iter().zip(g.degrees()) {
                t.push(vec![json!(n), json!(d)]);
            }
            report.tables.insert("generators".into(), t);
            for rep in m.representations.keys() {
                let r = m.representation(rep).expect("declared");
                report.checks.insert(format!("representation:{rep}"), validate_rep(&g, &r).into());
            }
        }
        Command::Ce(_) => {
            let module = ce_module(&g, flags, coeff.as_ref(), w.max_weight)?;
            report.checks.insert("square_zero".into(), module.validate().into());
            match (side(flags), &coeff) {
                (CeSide::Homological, _) => {
                    let ce = ce_homological(&g, w.max_weight);
                    report.checks.insert("coderivations".into(), ce.check_coderivations().into());
                    report.checks.insert("coalgebra".into(), ce.check_coalgebra().into());
                }
                (CeSide::Cohomological, None) => {
                    report.checks.insert("algebra".into(), ce_cohomological(&g, w.max_weight).check_algebra().into());
                }
                (CeSide::Cohomological, Some(_)) => {}
            }
            report.tables.insert("cells".into(), cells_table(&module));
            report.warnings = warnings(&g, w.max_weight);
        }
        Command::Betti(_) => {
            let b = betti(&g, side(flags), coeff.as_ref(), w.max_weight, w.degrees)?;
            let mut t = Table::new(&["degree", "betti"]);
            for (n, k) in &b.betti {
                t.push(vec![json!(n), json!(k)]);
            }
            report.tables.insert("betti".into(), t);
            report.warnings = b.warnings.iter().map(|x| x.to_string()).collect();
        }
        Command::Tate { floor, .. } => {
            let module = ce_module(&g, flags, coeff.as_ref(), w.max_weight)?;
            let total = match floor {
                Some(f) => {
                    report.params.insert("floor".into(), json!(f));
                    module.tate_total(*f)?
                }
                None => module.tate_realization(),
            };
            report.checks.insert("square_zero".into(), total.validate().into());
            let h = total.homology()?;
            let mut t = Table::new(&["degree", "dim", "homology"]);
            for (&n, &k) in total.dims() {
                t.push(vec![json!(n), json!(k), json!(h.get(&n).copied().unwrap_or(0))]);
            }
            report.tables.insert("total".into(), t);
            if flags.pbw_degree.is_some() && g.is_discrete() {
                report.checks.insert("resolution_nested_windows".into(), resolution_check(&g, w.pbw_degree)?);
            }
            report.warnings = warnings(&g, w.max_weight);
        }
        Command::Duality(_) => {
            report.checks.insert("duality".into(), duality_check(&g, w.max_weight).into());
            report.tables.insert("cells".into(), cells_table(ce_cohomological(&g, w.max_weight).module()));
            report.warnings = warnings(&g, w.max_weight);
        }
        Command::Monoidality { with, .. } => {
            let other = load_manifest(with)?;
            let h = other.lie();
            report.input.insert("with".into(), json!(with.display().to_string()));
            report.input.insert("with_name".into(), json!(other.name));
            let h_check = Check::from(validate_lie(&h));
            let h_ok = !h_check.is_violation();
            report.checks.insert("second_factor".into(), h_check);
            if h_ok {
                report.checks.insert("monoidality".into(), monoidality_check(&g, &h, w.max_weight).into());
                let product =
                    ce_homological(&g, w.max_weight).module().tensor(ce_homological(&h, w.max_weight).module());
                let mut t = Table::new(&["weight", "degree", "dim"]);
                for (&(p, n), &k) in &product.cell_dims() {
                    if p <= w.max_weight as i64 {
                        t.push(vec![json!(p), json!(n), json!(k)]);
                    }
                }
                report.tables.insert("tensor_cells".into(), t);
                report.warnings = warnings(&g, w.max_weight);
                report.warnings.extend(warnings(&h, w.max_weight));
            }
        }
        Command::CheckPaperExample(_) => unreachable!(),
    }
    Ok(finish(report, flags))
}

fn warnings(g: &DgLieAlgebra, max_weight: usize) -> Vec<String> {
    window_warnings(g, max_weight).iter().map(|w| w.to_string()).collect()
}

fn ce_module(
    g: &DgLieAlgebra,
    flags: &Flags,
    coeff: Option<&Representation>,
    max_weight: usize,
) -> Result<MixedGradedModule, CliError> {
    Ok(match (side(flags), coeff) {
        (CeSide::Homological, None) => ce_homological(g, max_weight).module().clone(),
        (CeSide::Homological, Some(_)) => {
            return Err(mgce_core::Error::RepInvalid(
                "coefficients are supported on the cohomological side only".into(),
            )
            .into())
        }
        (CeSide::Cohomological, None) => ce_cohomological(g, max_weight).module().clone(),
        (CeSide::Cohomological, Some(m)) => ce_coefficients(g, m, max_weight)?,
    })
}

fn resolution_check(g: &DgLieAlgebra, d: usize) -> Result<Check, CliError> {
    let small = koszul_resolution(g, d, g.dim())?;
    let large = koszul_resolution(g, d + 1, g.dim())?;
    Ok(nested_window_exactness((small.complex(), small.basis()), (large.complex(), large.basis())).into())
}

fn word(names: &[String], m: &Monomial, empty: &str) -> String {
    if m.is_empty() {
        empty.to_string()
    } else {
        m.iter().map(|&i| names[i].as_str()).collect::<Vec<_>>().join(" ")
    }
}

/// The aff(1) example: `ε(1⊗ē₁ē₂) = e1⊗ē₂ - e2⊗ē₁ - 1⊗ē₁`, and the weight-2
/// `ε` of `CE_ε` sending `ē₁ē₂` to `ē₁`.
fn paper_example(flags: &Flags) -> Outcome {
    let g = fixtures::aff1();
    let max_word = flags.pbw_degree.unwrap_or(3);
    let max_weight = flags.max_weight.unwrap_or(2);
    let mut report = Report::default();
    report.input.insert("name".into(), json!("aff1"));
    report.input.insert("dim".into(), json!(2));
    report.params.insert("command".into(), json!("check-paper-example"));
    report.params.insert("max_weight".into(), json!(max_weight));
    report.params.insert("pbw_degree".into(), json!(max_word));
    let u = match u_cone_mixed(&g, max_word, max_weight) {
        Ok(u) => u,
        Err(e) => return input_error(e.into()),
    };
    let names: Vec<String> = g.names().to_vec();
    let bars: Vec<String> = names.iter().map(|n| bar_name(n)).collect();
    let mut t = Table::new(&["u", "term", "coefficient"]);
    let mut computed: BTreeMap<(Monomial, Monomial), Rat> = BTreeMap::new();
    for w in pbw_truncate(&g, 2).basis() {
        let Some(terms) = u.eps_of(&w, &vec![0, 1]) else {
            continue;
        };
        for ((u2, s), c) in terms {
            let term = format!("{} ⊗ {}", word(&names, &u2, "1"), word(&bars, &s, "1"));
            t.push(vec![json!(word(&names, &w, "1")), json!(term), json!(c.to_string())]);
            if w.is_empty() {
                computed.insert((u2, s), c);
            }
        }
    }
    report.tables.insert("eps_of_u_e1e2".into(), t);
    let expected: BTreeMap<(Monomial, Monomial), Rat> =
        BTreeMap::from([((vec![0], vec![1]), rat(1)), ((vec![1], vec![0]), rat(-1)), ((vec![], vec![0]), rat(-1))]);
    report.checks.insert(
        "example_assignment".into(),
        if computed == expected {
            Check::ok()
        } else {
            Check::violated("ε(1⊗ē₁ē₂) = e1⊗ē₂ - e2⊗ē₁ - 1⊗ē₁", format!("{computed:?}"))
        },
    );
    let eps = ce_homological(&g, 2).module().epsilon(2, -2);
    report.checks.insert(
        "ce_weight_2".into(),
        if eps == RatMatrix::from_i64(&[&[1], &[0]]) {
            Check::ok()
        } else {
            Check::violated("ε(ē₁ē₂) = ē₁", format!("{eps:?}"))
        },
    );
    report.checks.insert("module".into(), u.module().validate().into());
    finish(report, flags)
}
