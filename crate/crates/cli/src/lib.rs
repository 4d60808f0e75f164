//! Command-line front end: `verify`, `expand`, `reduce` and `guess`.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or data error.

pub mod parse;
pub mod registry;
pub mod report;
pub mod verify;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use holoproof_core::oeis::{builtin_case, builtin_cases, BFile, CaseDefinition, Egf};
use holoproof_core::recurrence::{guess, sweep};
use holoproof_core::series::{egf_coefficients, SequenceTable};
use thiserror::Error;

use report::{GuessOutput, PassResult, RunReport, Status};
use verify::{load_reference, reduction_output, VerifyOptions};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

const DEFAULT_SEED: u64 = 0x5eed_2021;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Data(String),
}

#[derive(Debug, Parser)]
#[command(
    name = "holoproof",
    version,
    about = "Exact verification of P-recursive integer sequences"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run the closed-form, egf, reduce and sweep passes for a case.
    Verify(VerifyArgs),
    /// Print a(n) from a built-in e.g.f. for n = offset..terms.
    Expand(ExpandArgs),
    /// Reduce a case's harmonic expression to alpha * H + beta.
    Reduce(ReduceArgs),
    /// Guess polynomial-coefficient recurrences from sequence terms.
    Guess(GuessArgs),
}

#[derive(Debug, Args)]
struct VerifyArgs {
    /// Built-in sequence id or path to a registry file.
    case: String,
    /// First n of the residual sweep.
    #[arg(long, allow_hyphen_values = true)]
    from: Option<i64>,
    /// Last n of the residual sweep.
    #[arg(long, allow_hyphen_values = true)]
    to: Option<i64>,
    /// Local b-file to use as reference data.
    #[arg(long, conflicts_with = "fetch")]
    bfile: Option<PathBuf>,
    /// Download the reference b-file (cached).
    #[arg(long)]
    fetch: bool,
    /// Seed for the sweep's random spot checks.
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[arg(long)]
    json: bool,
}

#[derive(Debug, Args)]
struct ExpandArgs {
    /// Built-in e.g.f. name.
    egf: String,
    /// Largest index to print.
    #[arg(long)]
    terms: i64,
    /// Also write the rows as a b-file.
    #[arg(long)]
    bfile_out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct ReduceArgs {
    /// Built-in sequence id or path to a registry file.
    case: String,
    #[arg(long)]
    json: bool,
}

#[derive(Debug, Args)]
struct GuessArgs {
    /// B-file with the terms.
    #[arg(long, conflicts_with = "case", required_unless_present = "case")]
    bfile: Option<PathBuf>,
    /// Built-in sequence id or registry file; uses its reference data.
    #[arg(long)]
    case: Option<String>,
    #[arg(long)]
    order: usize,
    #[arg(long)]
    degree: usize,
    /// Use only the first N terms.
    #[arg(long)]
    terms: Option<usize>,
    /// Sweep each candidate up to this n with closed-form values.
    #[arg(long)]
    verify_range: Option<i64>,
    #[arg(long)]
    json: bool,
}

/// Built-in id or registry file path.
pub fn resolve_case(arg: &str) -> Result<CaseDefinition, CliError> {
    if let Some(case) = builtin_case(arg) {
        return Ok(case);
    }
    let path = Path::new(arg);
    if path.is_file() {
        return registry::load_registry(path).map_err(|e| CliError::Data(format!("{arg}: {e}")));
    }
    let known: Vec<String> = builtin_cases()
        .iter()
        .map(|c| c.sequence_id.to_string())
        .collect();
    Err(CliError::Usage(format!(
        "{arg:?} is neither a built-in case ({}) nor a registry file",
        known.join(", ")
    )))
}

fn emit(report: &RunReport, json: bool, out: &mut dyn Write) -> i32 {
    let text = if json {
        report.to_json() + "\n"
    } else {
        report.to_human()
    };
    let _ = out.write_all(text.as_bytes());
    report.exit_code
}

fn cmd_verify(a: VerifyArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let case = resolve_case(&a.case)?;
    let opts = VerifyOptions {
        from: a.from,
        to: a.to,
        bfile: a.bfile,
        fetch: a.fetch,
        seed: a.seed,
    };
    let report = verify::verify(&case, &opts)?;
    Ok(emit(&report, a.json, out))
}

fn cmd_expand(a: ExpandArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, CliError> {
    let egf: Egf = a.egf.parse().map_err(|e| CliError::Usage(format!("{e}")))?;
    if a.terms < egf.offset() {
        return Err(CliError::Usage(format!(
            "--terms must be at least {} (the offset of {egf})",
            egf.offset()
        )));
    }
    let f = egf
        .build(a.terms as usize)
        .map_err(|e| CliError::Usage(e.to_string()))?;
    let table =
        egf_coefficients(&f, egf.offset() as usize).map_err(|e| CliError::Data(e.to_string()))?;
    let rendered = BFile::from_table(&table).render();
    let _ = out.write_all(rendered.as_bytes());
    if let Some(path) = a.bfile_out {
        std::fs::write(&path, &rendered)
            .map_err(|e| CliError::Data(format!("cannot write {}: {e}", path.display())))?;
        let _ = writeln!(err, "wrote {} terms to {}", table.len(), path.display());
    }
    Ok(EXIT_OK)
}

fn cmd_reduce(a: ReduceArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let case = resolve_case(&a.case)?;
    let Some((output, _)) = reduction_output(&case) else {
        return Err(CliError::Data(format!(
            "{} has no reduction expression",
            a.case
        )));
    };
    let mut report = RunReport::new("reduce", case.sequence_id.as_str());
    report.push(verify::reduce_pass(&case));
    report.reduction = Some(output);
    Ok(emit(&report, a.json, out))
}

fn cmd_guess(a: GuessArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let (label, case, table): (String, Option<CaseDefinition>, SequenceTable) =
        match (&a.bfile, &a.case) {
            (Some(path), _) => {
                let bytes = std::fs::read(path)
                    .map_err(|e| CliError::Data(format!("cannot read {}: {e}", path.display())))?;
                let b = holoproof_core::oeis::parse_bfile(&bytes)
                    .map_err(|e| CliError::Data(format!("{}: {e}", path.display())))?;
                (path.display().to_string(), None, b.to_table())
            }
            (None, Some(id)) => {
                let case = resolve_case(id)?;
                let reference =
                    load_reference(&case, &VerifyOptions::default())?.ok_or_else(|| {
                        CliError::Data(format!("{id} has no reference data to guess from"))
                    })?;
                (case.sequence_id.to_string(), Some(case), reference.table)
            }
            (None, None) => unreachable!("clap requires --bfile or --case"),
        };
    if table.is_empty() {
        return Err(CliError::Data(format!("{label}: no terms")));
    }
    let table = match a.terms {
        Some(k) if k < table.len() => table.take_first(k),
        _ => table,
    };
    let found = guess(&table, a.order, a.degree).map_err(|e| CliError::Data(e.to_string()))?;

    let mut report = RunReport::new("guess", label);
    let detail = if found.is_empty() {
        format!(
            "no recurrence of order {} and degree {} fits the {} terms",
            a.order,
            a.degree,
            table.len()
        )
    } else {
        format!(
            "{} candidate(s), each re-verified on all {} terms",
            found.len(),
            table.len()
        )
    };
    report.push(PassResult::new("guess", Status::Pass, detail));

    if let Some(hi) = a.verify_range {
        let cf = case.as_ref().and_then(|c| c.closed_form).ok_or_else(|| {
            CliError::Usage("--verify-range needs --case with a closed form".into())
        })?;
        for rec in &found {
            let lo = rec.valid_from().max(cf.min_index() + rec.order() as i64);
            let values = cf
                .table(lo - rec.order() as i64, hi)
                .map_err(|e| CliError::Data(e.to_string()))?;
            let r = sweep(rec, &values, lo, hi).map_err(|e| CliError::Data(e.to_string()))?;
            let status = if r.passed() {
                Status::Pass
            } else {
                Status::Fail
            };
            let detail = match r.failures.first() {
                None => format!("residual 0 for n = {lo}..{hi} with closed-form values"),
                Some((n, v)) => format!("residual {v} at n = {n} ({} failures)", r.failures.len()),
            };
            report.push(PassResult::new("verify-range", status, detail));
        }
    }
    report.guess = Some(GuessOutput {
        order: a.order,
        degree: a.degree,
        terms: table.len(),
        range: (table.offset(), table.last_index()),
        candidates: found.iter().map(ToString::to_string).collect(),
    });
    Ok(emit(&report, a.json, out))
}

/// Runs one command. Reports go to `out`, diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = sink.write_all(text.as_bytes());
            return code;
        }
    };
    let result = match cli.command {
        Command::Verify(a) => cmd_verify(a, out),
        Command::Expand(a) => cmd_expand(a, out, err),
        Command::Reduce(a) => cmd_reduce(a, out),
        Command::Guess(a) => cmd_guess(a, out),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}
