//! The four verification passes: closed form against reference data, e.g.f.
//! against closed form, symbolic reduction, and the residual sweep.

use std::path::PathBuf;

use holoproof_core::oeis::{fetch_bfile, CaseDefinition, ClosedForm, Egf, FetchConfig};
use holoproof_core::recurrence::sweep;
use holoproof_core::series::{egf_coefficients, Provenance, SequenceTable};
use holoproof_core::symbolic::harmonic_atom;
use num_bigint::BigInt;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::report::{PassResult, ReductionOutput, RunReport, Status};
use crate::CliError;

/// Highest index compared between the e.g.f. and the closed form.
pub const EGF_CHECK_MAX: i64 = 200;
pub const SPOT_CHECKS: usize = 50;
const MAX_LISTED: usize = 5;

#[derive(Debug, Clone, Default)]
pub struct VerifyOptions {
    pub from: Option<i64>,
    pub to: Option<i64>,
    pub bfile: Option<PathBuf>,
    pub fetch: bool,
    pub seed: u64,
}

/// Reference values and where they came from.
pub struct Reference {
    pub origin: String,
    pub table: SequenceTable,
}

pub fn load_reference(
    case: &CaseDefinition,
    opts: &VerifyOptions,
) -> Result<Option<Reference>, CliError> {
    if let Some(path) = &opts.bfile {
        let bytes = std::fs::read(path)
            .map_err(|e| CliError::Data(format!("cannot read {}: {e}", path.display())))?;
        let b = holoproof_core::oeis::parse_bfile(&bytes)
            .map_err(|e| CliError::Data(format!("{}: {e}", path.display())))?;
        return Ok(Some(Reference {
            origin: path.display().to_string(),
            table: b.to_table(),
        }));
    }
    let config = FetchConfig::from_env(opts.fetch);
    if config.network {
        let b = fetch_bfile(case.sequence_id.as_str(), &config)
            .map_err(|e| CliError::Data(e.to_string()))?;
        return Ok(Some(Reference {
            origin: config.url_for(&case.sequence_id),
            table: b.to_table(),
        }));
    }
    match &case.reference {
        None => Ok(None),
        Some(r) => {
            let b = r.load().map_err(|e| CliError::Data(e.to_string()))?;
            Ok(Some(Reference {
                origin: r.to_string(),
                table: b.to_table(),
            }))
        }
    }
}

fn mismatch_detail(
    what: &str,
    mismatches: &[(i64, BigInt, BigInt)],
    labels: (&str, &str),
) -> String {
    let listed: Vec<String> = mismatches
        .iter()
        .take(MAX_LISTED)
        .map(|(n, a, b)| format!("n = {n}: {} {a}, {} {b}", labels.0, labels.1))
        .collect();
    let more = mismatches.len().saturating_sub(MAX_LISTED);
    let tail = if more > 0 {
        format!(" (+{more} more)")
    } else {
        String::new()
    };
    format!("{what} mismatch at {}{tail}", listed.join("; "))
}

fn closed_form_pass(
    cf: Option<ClosedForm>,
    reference: Option<&Reference>,
) -> Result<PassResult, CliError> {
    const NAME: &str = "closed-form";
    let Some(cf) = cf else {
        return Ok(PassResult::new(
            NAME,
            Status::Skipped,
            "case has no closed form",
        ));
    };
    let Some(reference) = reference else {
        return Ok(PassResult::new(NAME, Status::Skipped, "no reference data"));
    };
    let lo = cf.min_index().max(reference.table.offset());
    let hi = reference.table.last_index();
    if lo > hi {
        return Ok(PassResult::new(
            NAME,
            Status::Fail,
            format!(
                "{} has no terms at n >= {}",
                reference.origin,
                cf.min_index()
            ),
        ));
    }
    let closed = cf
        .table(lo, hi)
        .map_err(|e| CliError::Data(e.to_string()))?;
    let mismatches: Vec<(i64, BigInt, BigInt)> = closed
        .iter()
        .filter_map(|(n, v)| {
            let r = reference.table.get(n).expect("within reference");
            (r != v).then(|| (n, v.clone(), r.clone()))
        })
        .collect();
    if mismatches.is_empty() {
        let mut detail = format!(
            "agrees with {} at n = {lo}..{hi} ({} values)",
            reference.origin,
            hi - lo + 1
        );
        if reference.table.offset() < lo {
            detail.push_str(&format!(
                "; n < {} is outside the closed form's domain",
                cf.min_index()
            ));
        }
        Ok(PassResult::new(NAME, Status::Pass, detail))
    } else {
        Ok(PassResult::new(
            NAME,
            Status::Fail,
            mismatch_detail(
                "closed form vs reference",
                &mismatches,
                ("closed form", "reference"),
            ),
        ))
    }
}

fn egf_pass(
    egf: Option<Egf>,
    cf: Option<ClosedForm>,
    reference: Option<&Reference>,
    id: &str,
) -> Result<PassResult, CliError> {
    const NAME: &str = "egf";
    let Some(egf) = egf else {
        return Ok(PassResult::new(
            NAME,
            Status::Skipped,
            format!("no e.g.f. registered for {id}"),
        ));
    };
    let f = egf
        .build(EGF_CHECK_MAX as usize)
        .map_err(|e| CliError::Data(e.to_string()))?;
    let table =
        egf_coefficients(&f, egf.offset() as usize).map_err(|e| CliError::Data(e.to_string()))?;
    let mut mismatches = Vec::new();
    let mut checks = Vec::new();
    let cf_lo = cf.map_or(i64::MAX, |c| c.min_index().max(egf.offset()));
    if let Some(cf) = cf {
        let closed = cf
            .table(cf_lo, EGF_CHECK_MAX)
            .map_err(|e| CliError::Data(e.to_string()))?;
        for (n, v) in closed.iter() {
            let e = table.get(n).expect("egf covers closed-form range");
            if e != v {
                mismatches.push((n, e.clone(), v.clone()));
            }
        }
        checks.push(format!(
            "n!·[x^n]F = closed form for n = {cf_lo}..{EGF_CHECK_MAX}"
        ));
    }
    if let Some(reference) = reference {
        let below: Vec<i64> = (egf.offset()..cf_lo.min(EGF_CHECK_MAX + 1))
            .filter(|&n| reference.table.contains(n))
            .collect();
        for &n in &below {
            let e = table.get(n).expect("egf covers offset range");
            let r = reference.table.get(n).expect("filtered");
            if e != r {
                mismatches.push((n, e.clone(), r.clone()));
            }
        }
        if let (Some(first), Some(last)) = (below.first(), below.last()) {
            let values = if first == last {
                format!("a({first}) = {}", table.get(*first).expect("present"))
            } else {
                format!("n = {first}..{last}")
            };
            checks.push(format!("{values} matches {}", reference.origin));
        }
    }
    if checks.is_empty() {
        return Ok(PassResult::new(
            NAME,
            Status::Skipped,
            "nothing to compare the e.g.f. against",
        ));
    }
    mismatches.sort_by_key(|m| m.0);
    if mismatches.is_empty() {
        Ok(PassResult::new(NAME, Status::Pass, checks.join("; ")))
    } else {
        Ok(PassResult::new(
            NAME,
            Status::Fail,
            mismatch_detail("e.g.f.", &mismatches, ("e.g.f.", "expected")),
        ))
    }
}

pub fn reduction_output(case: &CaseDefinition) -> Option<(ReductionOutput, bool)> {
    let red = case.reduction.as_ref()?;
    let (alpha, beta) = red.expr.reduce_to_alpha_beta(red.anchor);
    let atom = harmonic_atom(red.anchor);
    let ok = alpha == red.expected_alpha && beta == red.expected_beta;
    Some((
        ReductionOutput {
            expression: red.expr.to_string(),
            normalized: format!("({alpha}) * {atom} + ({beta})"),
            anchor: atom,
            alpha: alpha.to_string(),
            beta: beta.to_string(),
            expected_alpha: red.expected_alpha.to_string(),
            expected_beta: red.expected_beta.to_string(),
        },
        ok,
    ))
}

pub fn reduce_pass(case: &CaseDefinition) -> PassResult {
    const NAME: &str = "reduce";
    let Some((out, ok)) = reduction_output(case) else {
        return PassResult::new(NAME, Status::Skipped, "case has no reduction");
    };
    let mut detail = format!(
        "alpha = {}, beta = {} at anchor {}",
        out.alpha, out.beta, out.anchor
    );
    if !ok {
        detail.push_str(&format!(
            "; expected alpha = {}, beta = {}",
            out.expected_alpha, out.expected_beta
        ));
    }
    if let Some(p) = case.reduction.as_ref().and_then(|r| r.prefactor) {
        detail.push_str(&format!("; prefactor {}", p.description));
    }
    PassResult::new(NAME, if ok { Status::Pass } else { Status::Fail }, detail)
}

/// Values on `lo..=hi`: closed form where defined, reference data below its
/// domain (or everywhere without one), e.g.f. as a last resort.
fn assemble(
    case: &CaseDefinition,
    reference: Option<&Reference>,
    lo: i64,
    hi: i64,
) -> Result<SequenceTable, String> {
    let cf_lo = case.closed_form.map_or(i64::MAX, |c| c.min_index());
    let split = cf_lo.clamp(lo, hi + 1);
    let egf_table = || -> Option<SequenceTable> {
        let egf = case.egf?;
        if split <= egf.offset() {
            return None;
        }
        let f = egf.build((split - 1).max(2) as usize).ok()?;
        egf_coefficients(&f, egf.offset() as usize).ok()
    };
    let egf_table = if split > lo { egf_table() } else { None };
    let mut values = Vec::with_capacity((hi - lo + 1) as usize);
    for n in lo..split {
        let v = reference
            .and_then(|r| r.table.get(n).ok())
            .or_else(|| egf_table.as_ref().and_then(|t| t.get(n).ok()))
            .ok_or_else(|| format!("no value for a({n})"))?;
        values.push(v.clone());
    }
    if split <= hi {
        let cf = case
            .closed_form
            .expect("split below hi implies a closed form");
        values.extend(
            cf.table(split, hi)
                .map_err(|e| e.to_string())?
                .values()
                .iter()
                .cloned(),
        );
    }
    Ok(SequenceTable::new(lo, values, Provenance::ClosedForm))
}

fn sweep_pass(
    case: &CaseDefinition,
    reference: Option<&Reference>,
    lo: i64,
    hi: i64,
    seed: u64,
) -> Result<PassResult, CliError> {
    const NAME: &str = "sweep";
    let rec = &case.recurrence;
    let order = rec.order() as i64;
    let seq = assemble(case, reference, lo - order, hi)
        .map_err(|e| CliError::Data(format!("sweep over n = {lo}..{hi}: {e}")))?;
    let report = sweep(rec, &seq, lo, hi).map_err(|e| CliError::Data(e.to_string()))?;
    let mut parts = Vec::new();
    let status = if report.passed() {
        parts.push(format!(
            "residual 0 for n = {lo}..{hi} ({} values, {:.2} s)",
            report.checked(),
            report.elapsed.as_secs_f64()
        ));
        Status::Pass
    } else {
        let listed: Vec<String> = report
            .failures
            .iter()
            .take(MAX_LISTED)
            .map(|(n, r)| format!("n = {n}: {r}"))
            .collect();
        let more = report.failures.len().saturating_sub(MAX_LISTED);
        let tail = if more > 0 {
            format!(" (+{more} more)")
        } else {
            String::new()
        };
        parts.push(format!("nonzero residual at {}{tail}", listed.join("; ")));
        Status::Fail
    };

    let mut status = status;
    if let Some(cf) = case.closed_form {
        let spot_lo = lo.max(cf.min_index());
        if spot_lo <= hi {
            let mut rng = StdRng::seed_from_u64(seed);
            let mut bad = Vec::new();
            for _ in 0..SPOT_CHECKS {
                let n = rng.random_range(spot_lo..=hi);
                let direct = cf.eval(n).map_err(|e| CliError::Data(e.to_string()))?;
                if seq.get(n).expect("within sweep range") != &direct {
                    bad.push(n);
                }
            }
            if bad.is_empty() {
                parts.push(format!(
                    "{SPOT_CHECKS} spot checks against the direct closed form agree"
                ));
            } else {
                status = Status::Fail;
                parts.push(format!("spot checks disagree at n = {bad:?}"));
            }
        }
    }

    let below = rec.valid_from() - 1;
    if below >= case.offset + order {
        if let Ok(window) = assemble(case, reference, below - order, below) {
            if let Ok(r) = rec.raw_residual(&window, below) {
                parts.push(format!(
                    "informational: residual at n = {below} is {r} (outside pass/fail)"
                ));
            }
        }
    }
    Ok(PassResult::new(NAME, status, parts.join("; ")))
}

pub fn verify(case: &CaseDefinition, opts: &VerifyOptions) -> Result<RunReport, CliError> {
    let (lo, hi) = (
        opts.from.unwrap_or(case.check_range.0),
        opts.to.unwrap_or(case.check_range.1),
    );
    if lo > hi {
        return Err(CliError::Usage(format!("empty sweep range {lo}..{hi}")));
    }
    if lo < case.recurrence.valid_from() {
        return Err(CliError::Usage(format!(
            "sweep start {lo} is below the recurrence's threshold (from = {})",
            case.recurrence.valid_from()
        )));
    }
    let reference = load_reference(case, opts)?;
    let id = case.sequence_id.as_str();
    let mut report = RunReport::new("verify", id);
    report.push(closed_form_pass(case.closed_form, reference.as_ref())?);
    report.push(egf_pass(
        case.egf,
        case.closed_form,
        reference.as_ref(),
        id,
    )?);
    report.push(reduce_pass(case));
    report.push(sweep_pass(case, reference.as_ref(), lo, hi, opts.seed)?);
    Ok(report)
}
