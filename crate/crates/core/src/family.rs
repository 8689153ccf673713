//! Bicolored map families and the per-vertex half-edge splits they allow.
//!
//! A family is written in a small textual grammar that is also used in the
//! headers of series files:
//!
//! ```text
//! regular:<p>                 every vertex has valency p
//! mixed:<p1>=<w1>,<p2>=<w2>   valencies p_i, each vertex weighted by w_i
//! rigid:<2q>                  2q-regular, unvisited edges split q-1 / q-1
//! ```

use std::fmt;
use std::str::FromStr;

use crate::error::FamilyError;

/// Vertex color. Edges only join vertices of opposite colors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Color {
    Black,
    White,
}

impl Color {
    pub fn opposite(self) -> Color {
        match self {
            Color::Black => Color::White,
            Color::White => Color::Black,
        }
    }

    /// Color of the vertex at 0-based position `index` along the line.
    /// Position 0 is black.
    pub fn at_position(index: usize) -> Color {
        if index.is_multiple_of(2) {
            Color::Black
        } else {
            Color::White
        }
    }
}

/// One allowed valency together with its (integer) vertex weight.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Valency {
    pub p: u32,
    pub weight: u64,
}

/// A validated family of bicolored maps.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FamilySpec {
    valencies: Vec<Valency>,
    rigid: bool,
    /// Written as `regular:` rather than `mixed:`.
    regular_form: bool,
}

/// A way of distributing the `p - 2` unvisited half-edges of one vertex
/// between the two sides of the line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SplitOption {
    pub p: u32,
    pub weight: u64,
    pub up: u32,
    pub down: u32,
}

impl FamilySpec {
    /// Non-rigid p-regular family.
    pub fn regular(p: u32) -> Result<Self, FamilyError> {
        check_valency(p)?;
        Ok(FamilySpec {
            valencies: vec![Valency { p, weight: 1 }],
            rigid: false,
            regular_form: true,
        })
    }

    /// Rigid `valency`-regular family; `valency` must be even and at least 4.
    pub fn rigid(valency: u32) -> Result<Self, FamilyError> {
        check_valency(valency)?;
        if !valency.is_multiple_of(2) || valency < 4 {
            return Err(FamilyError::BadRigidValency(valency));
        }
        Ok(FamilySpec {
            valencies: vec![Valency {
                p: valency,
                weight: 1,
            }],
            rigid: true,
            regular_form: false,
        })
    }

    /// Mixed valencies with integer weights. Entries are sorted by valency;
    /// zero weights are kept but never contribute a split.
    pub fn mixed(entries: &[(u32, u64)]) -> Result<Self, FamilyError> {
        if entries.is_empty() {
            return Err(FamilyError::Malformed("empty valency list".into()));
        }
        let mut valencies: Vec<Valency> = entries
            .iter()
            .map(|&(p, weight)| check_valency(p).map(|_| Valency { p, weight }))
            .collect::<Result<_, _>>()?;
        valencies.sort_by_key(|v| v.p);
        if let Some(w) = valencies.windows(2).find(|w| w[0].p == w[1].p) {
            return Err(FamilyError::DuplicateValency(w[0].p));
        }
        if valencies.iter().all(|v| v.weight == 0) {
            return Err(FamilyError::AllWeightsZero);
        }
        Ok(FamilySpec {
            valencies,
            rigid: false,
            regular_form: false,
        })
    }

    pub fn valencies(&self) -> &[Valency] {
        &self.valencies
    }

    pub fn is_rigid(&self) -> bool {
        self.rigid
    }

    /// `q` for a rigid `2q`-regular family.
    pub fn rigid_q(&self) -> Option<u32> {
        self.rigid.then(|| self.valencies[0].p / 2)
    }

    pub fn max_valency(&self) -> u32 {
        self.valencies
            .iter()
            .filter(|v| v.weight > 0)
            .map(|v| v.p)
            .max()
            .unwrap_or(0)
    }

    /// All splits, sorted by valency then by the number of half-edges above
    /// the line.
    pub fn split_options(&self) -> Vec<SplitOption> {
        let mut out = Vec::new();
        for v in self.valencies.iter().filter(|v| v.weight > 0) {
            let free = v.p - 2;
            if self.rigid {
                let side = free / 2;
                out.push(SplitOption {
                    p: v.p,
                    weight: v.weight,
                    up: side,
                    down: side,
                });
            } else {
                out.extend((0..=free).map(|up| SplitOption {
                    p: v.p,
                    weight: v.weight,
                    up,
                    down: free - up,
                }));
            }
        }
        out
    }
}

fn check_valency(p: u32) -> Result<(), FamilyError> {
    if p < 2 {
        Err(FamilyError::ValencyTooSmall(p))
    } else {
        Ok(())
    }
}

fn parse_int<T: FromStr>(text: &str, what: &str) -> Result<T, FamilyError> {
    text.trim()
        .parse()
        .map_err(|_| FamilyError::Malformed(format!("bad {what} `{text}`")))
}

impl FromStr for FamilySpec {
    type Err = FamilyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (kind, body) = s
            .trim()
            .split_once(':')
            .ok_or_else(|| FamilyError::Malformed(format!("missing `:` in `{s}`")))?;
        match kind {
            "regular" => FamilySpec::regular(parse_int(body, "valency")?),
            "rigid" => FamilySpec::rigid(parse_int(body, "valency")?),
            "mixed" => {
                let entries = body
                    .split(',')
                    .map(|item| {
                        let (p, w) = item
                            .split_once('=')
                            .ok_or_else(|| FamilyError::Malformed(format!("expected `p=w`, got `{item}`")))?;
                        Ok((parse_int(p, "valency")?, parse_int(w, "weight")?))
                    })
                    .collect::<Result<Vec<_>, FamilyError>>()?;
                FamilySpec::mixed(&entries)
            }
            other => Err(FamilyError::Malformed(format!("unknown family kind `{other}`"))),
        }
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.rigid {
            return write!(f, "rigid:{}", self.valencies[0].p);
        }
        if self.regular_form {
            return write!(f, "regular:{}", self.valencies[0].p);
        }
        write!(f, "mixed:")?;
        for (i, v) in self.valencies.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}={}", v.p, v.weight)?;
        }
        Ok(())
    }
}
