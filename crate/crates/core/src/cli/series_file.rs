//! `N,z,y` CSV files with `#` header lines, plus a JSON rendering.

use std::fmt::Write as _;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::family::FamilySpec;
use crate::transfer::{ExactSeries, Observable};

pub const VERSION: &str = concat!("fplmap ", env!("CARGO_PKG_VERSION"));

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum FormatError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("missing `# family:` header")]
    MissingFamily,
    #[error("rows must run 1, 2, 3, ...; found N = {found} where {expected} was expected")]
    NotContiguous { expected: usize, found: usize },
    #[error("series has no {0} column")]
    MissingColumn(Observable),
}

/// One enumeration result: the family, the observables present, and rows
/// `N = 1, 2, ...`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeriesFile {
    pub family: FamilySpec,
    pub version: String,
    pub z: Option<Vec<BigUint>>,
    pub y: Option<Vec<BigUint>>,
}

fn observable_name(o: Observable) -> &'static str {
    match o {
        Observable::Z => "z",
        Observable::Y => "y",
    }
}

impl SeriesFile {
    pub fn new(family: FamilySpec, z: Option<Vec<BigUint>>, y: Option<Vec<BigUint>>) -> Self {
        SeriesFile {
            family,
            version: VERSION.to_string(),
            z,
            y,
        }
    }

    pub fn observables(&self) -> Vec<Observable> {
        let mut out = Vec::new();
        if self.z.is_some() {
            out.push(Observable::Z);
        }
        if self.y.is_some() {
            out.push(Observable::Y);
        }
        out
    }

    pub fn len(&self) -> usize {
        let z = self.z.as_ref().map_or(0, Vec::len);
        let y = self.y.as_ref().map_or(0, Vec::len);
        z.max(y)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn series(&self, observable: Observable) -> Result<ExactSeries, FormatError> {
        let values = match observable {
            Observable::Z => &self.z,
            Observable::Y => &self.y,
        };
        values
            .as_ref()
            .map(|v| ExactSeries::new(self.family.clone(), observable, v.clone()))
            .ok_or(FormatError::MissingColumn(observable))
    }

    pub fn to_csv(&self) -> String {
        let observables: Vec<&str> = self.observables().into_iter().map(observable_name).collect();
        let mut out = String::new();
        writeln!(out, "# family: {}", self.family).unwrap();
        writeln!(out, "# observables: {}", observables.join(",")).unwrap();
        writeln!(out, "# version: {}", self.version).unwrap();
        writeln!(out, "N,{}", observables.join(",")).unwrap();
        for i in 0..self.len() {
            out += &(i + 1).to_string();
            for col in [&self.z, &self.y].into_iter().flatten() {
                out.push(',');
                if let Some(v) = col.get(i) {
                    out += &v.to_string();
                }
            }
            out.push('\n');
        }
        out
    }

    pub fn from_csv(text: &str) -> Result<Self, FormatError> {
        let mut family = None;
        let mut version = String::new();
        let mut columns: Option<Vec<Observable>> = None;
        let mut z = Vec::new();
        let mut y = Vec::new();
        for (k, raw) in text.lines().enumerate() {
            let line = raw.trim();
            let err = |message: String| FormatError::Syntax { line: k + 1, message };
            if line.is_empty() {
                continue;
            }
            if let Some(comment) = line.strip_prefix('#') {
                if let Some((key, value)) = comment.split_once(':') {
                    match key.trim() {
                        "family" => {
                            family = Some(
                                value
                                    .trim()
                                    .parse::<FamilySpec>()
                                    .map_err(|e| err(e.to_string()))?,
                            )
                        }
                        "version" => version = value.trim().to_string(),
                        _ => {}
                    }
                }
                continue;
            }
            let cells: Vec<&str> = line.split(',').map(str::trim).collect();
            let Some(cols) = &columns else {
                if cells.first() != Some(&"N") {
                    return Err(err(format!("expected a `N,...` header, got `{line}`")));
                }
                let cols = cells[1..]
                    .iter()
                    .map(|c| match *c {
                        "z" => Ok(Observable::Z),
                        "y" => Ok(Observable::Y),
                        other => Err(err(format!("unknown column `{other}`"))),
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                columns = Some(cols);
                continue;
            };
            if cells.len() != cols.len() + 1 {
                return Err(err(format!(
                    "expected {} cells, got {}",
                    cols.len() + 1,
                    cells.len()
                )));
            }
            let n: usize = cells[0]
                .parse()
                .map_err(|_| err(format!("bad N `{}`", cells[0])))?;
            for (col, cell) in cols.iter().zip(&cells[1..]) {
                let target = match col {
                    Observable::Z => &mut z,
                    Observable::Y => &mut y,
                };
                if cell.is_empty() {
                    continue;
                }
                let value: BigUint = cell.parse().map_err(|_| err(format!("bad integer `{cell}`")))?;
                if target.len() + 1 != n {
                    return Err(FormatError::NotContiguous {
                        expected: target.len() + 1,
                        found: n,
                    });
                }
                target.push(value);
            }
        }
        let cols = columns.unwrap_or_default();
        Ok(SeriesFile {
            family: family.ok_or(FormatError::MissingFamily)?,
            version,
            z: cols.contains(&Observable::Z).then_some(z),
            y: cols.contains(&Observable::Y).then_some(y),
        })
    }

    pub fn to_json(&self) -> String {
        let doc = JsonDoc {
            family: self.family.to_string(),
            observables: self
                .observables()
                .into_iter()
                .map(observable_name)
                .map(String::from)
                .collect(),
            version: self.version.clone(),
            rows: (0..self.len())
                .map(|i| JsonRow {
                    n: i + 1,
                    z: self.z.as_ref().and_then(|v| v.get(i)).map(ToString::to_string),
                    y: self.y.as_ref().and_then(|v| v.get(i)).map(ToString::to_string),
                })
                .collect(),
        };
        serde_json::to_string_pretty(&doc).expect("plain data serializes")
    }
}

#[derive(Serialize, Deserialize)]
struct JsonDoc {
    family: String,
    observables: Vec<String>,
    version: String,
    rows: Vec<JsonRow>,
}

/// Integers as decimal strings, so nothing is lost to doubles.
#[derive(Serialize, Deserialize)]
struct JsonRow {
    #[serde(rename = "N")]
    n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    z: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    y: Option<String>,
}
