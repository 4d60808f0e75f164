//! User-supplied cases: one `key = value` per line, `#` comments.
//!
//! ```text
//! id = A045406
//! offset = 2
//! closed_form = A045406
//! egf = A045406
//! recurrence = p0 = 1; p1 = 2*n - 7; p2 = (n-4)^2; from = 5
//! reduction_expr = (n-3)*h[n-3] - (2*n-7)*h[n-4] + (n-4)*h[n-5]
//! reduction_anchor = -4
//! expect_alpha = 0
//! expect_beta = 0
//! check_from = 5
//! check_to = 5000
//! bfile = b045406.txt
//! ```
//!
//! `id`, `recurrence`, `check_from` and `check_to` are required. A relative
//! `bfile` path is resolved against the registry file's directory.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use holoproof_core::exact::RationalFunction;
use holoproof_core::oeis::{CaseDefinition, Reduction, ReferenceData};
use thiserror::Error;

use crate::parse::{parse_harmonic_expr, parse_rational_function, parse_recurrence, ParseError};

const KEYS: &[&str] = &[
    "id",
    "offset",
    "closed_form",
    "egf",
    "recurrence",
    "reduction_expr",
    "reduction_anchor",
    "expect_alpha",
    "expect_beta",
    "check_from",
    "check_to",
    "bfile",
];

#[derive(Debug, Error)]
pub enum RegistryError {
    #[error("cannot read registry {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("line {line}: {message}")]
    Line { line: usize, message: String },
    #[error("missing required key `{0}`")]
    Missing(&'static str),
    #[error("`{key}`: {source}")]
    Value {
        key: &'static str,
        source: ParseError,
    },
    #[error("`{key}`: {message}")]
    Invalid { key: &'static str, message: String },
}

struct Entries(BTreeMap<&'static str, (usize, String)>);

impl Entries {
    fn get(&self, key: &'static str) -> Option<&str> {
        self.0.get(key).map(|(_, v)| v.as_str())
    }

    fn required(&self, key: &'static str) -> Result<&str, RegistryError> {
        self.get(key).ok_or(RegistryError::Missing(key))
    }

    fn int(&self, key: &'static str) -> Result<Option<i64>, RegistryError> {
        self.get(key)
            .map(|v| {
                v.parse().map_err(|_| RegistryError::Invalid {
                    key,
                    message: format!("expected an integer, got {v:?}"),
                })
            })
            .transpose()
    }

    fn named<T: std::str::FromStr>(&self, key: &'static str) -> Result<Option<T>, RegistryError>
    where
        T::Err: std::fmt::Display,
    {
        match self.get(key) {
            None | Some("none") => Ok(None),
            Some(v) => v
                .parse()
                .map(Some)
                .map_err(|e: T::Err| RegistryError::Invalid {
                    key,
                    message: e.to_string(),
                }),
        }
    }

    fn rational_function(&self, key: &'static str) -> Result<RationalFunction, RegistryError> {
        self.get(key).map_or(Ok(RationalFunction::zero()), |v| {
            parse_rational_function(v).map_err(|source| RegistryError::Value { key, source })
        })
    }
}

fn split_lines(text: &str) -> Result<Entries, RegistryError> {
    let mut map = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let Some((key, value)) = trimmed.split_once('=') else {
            return Err(RegistryError::Line {
                line,
                message: format!("expected `key = value`, got {trimmed:?}"),
            });
        };
        let key = key.trim();
        let Some(&known) = KEYS.iter().find(|k| **k == key) else {
            return Err(RegistryError::Line {
                line,
                message: format!("unknown key {key:?}"),
            });
        };
        if let Some((first, _)) = map.insert(known, (line, value.trim().to_string())) {
            return Err(RegistryError::Line {
                line,
                message: format!("`{key}` already set on line {first}"),
            });
        }
    }
    Ok(Entries(map))
}

pub fn parse_registry(text: &str, base_dir: &Path) -> Result<CaseDefinition, RegistryError> {
    let e = split_lines(text)?;
    let sequence_id =
        e.required("id")?
            .parse()
            .map_err(
                |err: holoproof_core::oeis::BFileError| RegistryError::Invalid {
                    key: "id",
                    message: err.to_string(),
                },
            )?;
    let recurrence =
        parse_recurrence(e.required("recurrence")?).map_err(|source| RegistryError::Value {
            key: "recurrence",
            source,
        })?;
    let check_from = e
        .int("check_from")?
        .ok_or(RegistryError::Missing("check_from"))?;
    let check_to = e
        .int("check_to")?
        .ok_or(RegistryError::Missing("check_to"))?;

    let reduction = match e.get("reduction_expr") {
        None => None,
        Some(src) => {
            let expr = parse_harmonic_expr(src).map_err(|source| RegistryError::Value {
                key: "reduction_expr",
                source,
            })?;
            let anchor = match e.int("reduction_anchor")? {
                Some(a) => a,
                None => expr.min_shift().ok_or(RegistryError::Invalid {
                    key: "reduction_expr",
                    message: "no harmonic term to anchor on; give reduction_anchor".into(),
                })?,
            };
            Some(Reduction {
                expr,
                anchor,
                expected_alpha: e.rational_function("expect_alpha")?,
                expected_beta: e.rational_function("expect_beta")?,
                prefactor: None,
            })
        }
    };

    Ok(CaseDefinition {
        sequence_id,
        offset: e.int("offset")?.unwrap_or(0),
        closed_form: e.named("closed_form")?,
        egf: e.named("egf")?,
        recurrence,
        reduction,
        check_range: (check_from, check_to),
        reference: e
            .get("bfile")
            .map(|p| ReferenceData::File(base_dir.join(p))),
    })
}

pub fn load_registry(path: &Path) -> Result<CaseDefinition, RegistryError> {
    let text = std::fs::read_to_string(path).map_err(|source| RegistryError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_registry(&text, path.parent().unwrap_or(Path::new(".")))
}
