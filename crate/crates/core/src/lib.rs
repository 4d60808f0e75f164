//! Exact verification toolkit for P-recursive integer sequences.

pub mod exact;
pub mod linalg;
pub mod oeis;
pub mod recurrence;
pub mod series;
pub mod symbolic;
