//! Recompute the bundled tables and compare them bit for bit.

use std::fmt;

use num_bigint::BigUint;

use super::reference::{ReferenceTable, TableKind};
use crate::error::TransferError;
use crate::transfer::{EngineOptions, OneSidedPropagator, Propagator};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scope {
    Fast,
    Full,
}

impl Scope {
    pub fn cap(self, table: &ReferenceTable) -> usize {
        match self {
            Scope::Fast => table.fast_cap(),
            Scope::Full => table.len(),
        }
    }
}

/// Recomputed values at one `N`; `None` where the table has no column.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Row {
    pub n: usize,
    pub z: Option<BigUint>,
    pub y: Option<BigUint>,
    pub g: Option<BigUint>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mismatch {
    pub table: &'static str,
    pub family: String,
    pub column: &'static str,
    pub n: usize,
    pub expected: BigUint,
    pub got: BigUint,
}

impl fmt::Display for Mismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} ({}): {}_{} differs\n  - expected {}\n  + computed {}",
            self.family, self.table, self.column, self.n, self.expected, self.got
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Pass { checked: usize },
    Mismatch(Mismatch),
    Exhausted { completed: usize, error: TransferError },
}

/// Compares computed rows against `table`, stopping at the first
/// difference. Rows must arrive in order `N = 1, 2, ...`.
pub fn compare_rows<I>(table: &ReferenceTable, rows: I) -> Outcome
where
    I: IntoIterator<Item = Result<Row, TransferError>>,
{
    let mut checked = 0;
    for row in rows {
        let row = match row {
            Ok(r) => r,
            Err(error) => {
                return Outcome::Exhausted {
                    completed: checked,
                    error,
                }
            }
        };
        let i = row.n - 1;
        let pairs = [
            ("z", Some(&table.z), &row.z),
            ("y", table.y.as_ref(), &row.y),
            ("g", Some(&table.g), &row.g),
        ];
        for (column, expected, got) in pairs {
            let (Some(expected), Some(got)) = (expected.and_then(|v| v.get(i)), got) else {
                continue;
            };
            if expected != got {
                return Outcome::Mismatch(Mismatch {
                    table: table.id,
                    family: table.family.to_string(),
                    column,
                    n: row.n,
                    expected: expected.clone(),
                    got: got.clone(),
                });
            }
        }
        checked = row.n;
    }
    Outcome::Pass { checked }
}

/// Recomputes `table` up to `cap` with the transfer engine.
pub fn verify_table(table: &ReferenceTable, cap: usize, options: EngineOptions) -> Outcome {
    let cap = cap.min(table.len());
    match table.kind {
        TableKind::Series => {
            let mut prop = Propagator::new(&table.family, options);
            let want_y = table.y.is_some();
            compare_rows(
                table,
                (0..cap).map(|_| {
                    let step = prop.advance()?;
                    log::debug!("{}: N = {} ({} states)", table.id, step.n, step.states);
                    Ok(Row {
                        n: step.n,
                        z: Some(step.z),
                        y: want_y.then_some(step.y),
                        g: None,
                    })
                }),
            )
        }
        TableKind::OneSidedG => {
            let q = table.family.rigid_q().expect("g tables belong to rigid families");
            let mut prop = match OneSidedPropagator::new(q) {
                Ok(p) => p,
                Err(error) => return Outcome::Exhausted { completed: 0, error },
            };
            compare_rows(
                table,
                (0..cap).map(|_| {
                    let step = prop.advance()?;
                    Ok(Row {
                        n: step.n,
                        g: Some(step.g),
                        ..Row::default()
                    })
                }),
            )
        }
    }
}
