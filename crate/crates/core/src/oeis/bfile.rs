use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use thiserror::Error;

use crate::series::{Provenance, SequenceTable};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BFileError {
    #[error("b-file is not valid UTF-8")]
    InvalidUtf8,
    #[error("line {line}: expected `<index> <value>`, got {content:?}")]
    Malformed { line: usize, content: String },
    #[error("line {line}: duplicate index {index}")]
    Duplicate { line: usize, index: i64 },
    #[error("line {line}: index {found} is out of order (expected {expected})")]
    OutOfOrder {
        line: usize,
        expected: i64,
        found: i64,
    },
    #[error("line {line}: gap in indices, expected {expected}, found {found}")]
    Gap {
        line: usize,
        expected: i64,
        found: i64,
    },
    #[error("invalid sequence id {0:?} (expected `A` followed by six digits)")]
    InvalidId(String),
}

/// OEIS A-number such as `A045406`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SequenceId(String);

impl SequenceId {
    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn digits(&self) -> &str {
        &self.0[1..]
    }

    /// `b045406.txt`
    pub fn bfile_name(&self) -> String {
        format!("b{}.txt", self.digits())
    }
}

impl FromStr for SequenceId {
    type Err = BFileError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let ok = s.len() == 7 && s.starts_with('A') && s[1..].bytes().all(|b| b.is_ascii_digit());
        if ok {
            Ok(SequenceId(s.to_string()))
        } else {
            Err(BFileError::InvalidId(s.to_string()))
        }
    }
}

impl fmt::Display for SequenceId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Parsed b-file: contiguous, strictly increasing `(index, value)` pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BFile {
    pub sequence_id: Option<SequenceId>,
    entries: Vec<(i64, BigInt)>,
}

impl BFile {
    pub fn parse(bytes: &[u8]) -> Result<BFile, BFileError> {
        let text = std::str::from_utf8(bytes).map_err(|_| BFileError::InvalidUtf8)?;
        let mut entries: Vec<(i64, BigInt)> = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let trimmed = raw.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let malformed = || BFileError::Malformed {
                line,
                content: raw.to_string(),
            };
            let mut fields = trimmed.split_whitespace();
            let (Some(idx), Some(val), None) = (fields.next(), fields.next(), fields.next()) else {
                return Err(malformed());
            };
            let index: i64 = idx.parse().map_err(|_| malformed())?;
            let value: BigInt = val.parse().map_err(|_| malformed())?;
            if let Some(&(prev, _)) = entries.last() {
                let expected = prev + 1;
                if index == prev {
                    return Err(BFileError::Duplicate { line, index });
                } else if index < prev {
                    return Err(BFileError::OutOfOrder {
                        line,
                        expected,
                        found: index,
                    });
                } else if index != expected {
                    return Err(BFileError::Gap {
                        line,
                        expected,
                        found: index,
                    });
                }
            }
            entries.push((index, value));
        }
        Ok(BFile {
            sequence_id: None,
            entries,
        })
    }

    pub fn with_id(mut self, id: SequenceId) -> Self {
        self.sequence_id = Some(id);
        self
    }

    pub fn from_table(table: &SequenceTable) -> BFile {
        BFile {
            sequence_id: None,
            entries: table.iter().map(|(n, v)| (n, v.clone())).collect(),
        }
    }

    pub fn entries(&self) -> &[(i64, BigInt)] {
        &self.entries
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// One `index value` line per entry, `\n`-terminated, no comments.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for (n, v) in &self.entries {
            out.push_str(&format!("{n} {v}\n"));
        }
        out
    }

    pub fn to_table(&self) -> SequenceTable {
        let offset = self.entries.first().map_or(0, |(n, _)| *n);
        SequenceTable::new(
            offset,
            self.entries.iter().map(|(_, v)| v.clone()).collect(),
            Provenance::BFile,
        )
    }
}

pub fn parse_bfile(text: &[u8]) -> Result<BFile, BFileError> {
    BFile::parse(text)
}
