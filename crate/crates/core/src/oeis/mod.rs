//! b-file ingestion and persistence, the optional OEIS fetch client, and the
//! built-in case registry.

mod bfile;
mod cases;
mod fetch;

pub use bfile::{parse_bfile, BFile, BFileError, SequenceId};
pub use cases::{
    a001711_recurrence, a001711_reduced_lhs, builtin_case, builtin_cases, egf_bracket_a045406,
    egf_bracket_denominator, mathar_recurrence, mathar_reduced_lhs, CaseDefinition, CaseError,
    ClosedForm, Egf, Prefactor, Reduction, ReferenceData,
};
pub use fetch::{
    fetch_bfile, FetchConfig, FetchError, BASE_URL_ENV, CACHE_DIR_ENV, DEFAULT_BASE_URL,
    NETWORK_ENV,
};
