//! Exponent extraction from exact series in extended precision.
//!
//! Every estimator is built from finite differences of slowly converging
//! sequences, so values are carried as binary floats with at least 50
//! significant decimal digits. `FPLMAP_PRECISION` raises the digit count.

mod contacts;
mod gamma;

use std::fmt;

use dashu_float::round::mode::HalfEven;
use dashu_float::FBig;
use dashu_int::UBig;
use num_bigint::{BigUint, Sign};
use num_rational::BigRational;

use crate::error::AnalysisError;
use crate::transfer::ExactSeries;

pub use contacts::{k_series, nu_hat, nu_tilde, solve_shift, Parity, ShiftSolution};
pub use gamma::{accel_bar, accel_tilde, b_series, mu2_estimate, BarSeries};

/// Extended-precision real.
pub type Real = FBig<HalfEven, 2>;

/// Working precision shared by every value of one analysis run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Precision {
    digits: usize,
}

impl Precision {
    pub const MIN_DIGITS: usize = 50;
    pub const DEFAULT_DIGITS: usize = 60;
    pub const ENV_VAR: &'static str = "FPLMAP_PRECISION";

    pub fn new(digits: usize) -> Result<Self, AnalysisError> {
        if digits < Self::MIN_DIGITS {
            return Err(AnalysisError::Precision(digits));
        }
        Ok(Precision { digits })
    }

    /// The default, or the digit count in `FPLMAP_PRECISION`. Values that do
    /// not parse or fall below the minimum are ignored with a warning.
    pub fn from_env() -> Self {
        let fallback = Precision {
            digits: Self::DEFAULT_DIGITS,
        };
        let Ok(raw) = std::env::var(Self::ENV_VAR) else {
            return fallback;
        };
        match raw.trim().parse::<usize>().map(Precision::new) {
            Ok(Ok(p)) => p,
            _ => {
                log::warn!(
                    "ignoring {}={raw:?}; need an integer >= {}",
                    Self::ENV_VAR,
                    Self::MIN_DIGITS
                );
                fallback
            }
        }
    }

    pub fn digits(&self) -> usize {
        self.digits
    }

    /// Binary digits, with a few guard bits.
    pub fn bits(&self) -> usize {
        (self.digits as f64 * std::f64::consts::LOG2_10).ceil() as usize + 8
    }

    fn fix(&self, x: Real) -> Real {
        x.with_precision(self.bits()).value()
    }

    pub fn int(&self, v: u64) -> Real {
        self.fix(Real::from(UBig::from(v)))
    }

    pub fn big(&self, v: &BigUint) -> Real {
        self.fix(Real::from(UBig::from_le_bytes(&v.to_bytes_le())))
    }

    pub fn rational(&self, v: &BigRational) -> Real {
        let magnitude = |x: &num_bigint::BigInt| self.big(x.magnitude());
        let r = magnitude(v.numer()) / magnitude(v.denom());
        // denominators are kept positive
        if v.numer().sign() == Sign::Minus {
            -r
        } else {
            r
        }
    }

    /// Exact conversion of a double, then widened to working precision.
    pub fn f64(&self, v: f64) -> Real {
        self.fix(Real::try_from(v).expect("finite double"))
    }

    /// `z_N` (or any exact series) at working precision.
    pub fn series(&self, s: &ExactSeries) -> RealSeries {
        RealSeries::contiguous(1, s.values.iter().map(|v| self.big(v)).collect())
    }
}

impl Default for Precision {
    fn default() -> Self {
        Precision::from_env()
    }
}

pub fn to_f64(x: &Real) -> f64 {
    x.to_f64().value()
}

/// A real sequence with strictly increasing indices.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct RealSeries {
    entries: Vec<(usize, Real)>,
}

impl RealSeries {
    pub fn new(entries: Vec<(usize, Real)>) -> Self {
        assert!(
            entries.windows(2).all(|w| w[0].0 < w[1].0),
            "indices must increase"
        );
        RealSeries { entries }
    }

    pub fn contiguous(first: usize, values: Vec<Real>) -> Self {
        RealSeries {
            entries: values
                .into_iter()
                .enumerate()
                .map(|(i, v)| (first + i, v))
                .collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Real)> {
        self.entries.iter().map(|(i, v)| (*i, v))
    }

    pub fn get(&self, index: usize) -> Option<&Real> {
        self.entries
            .binary_search_by_key(&index, |e| e.0)
            .ok()
            .map(|k| &self.entries[k].1)
    }

    pub fn first_index(&self) -> Option<usize> {
        self.entries.first().map(|e| e.0)
    }

    pub fn last(&self) -> Option<(usize, &Real)> {
        self.entries.last().map(|(i, v)| (*i, v))
    }

    pub fn is_contiguous(&self) -> bool {
        self.entries.windows(2).all(|w| w[0].0 + 1 == w[1].0)
    }

    /// Entries with `lo <= index <= hi`.
    pub fn range(&self, lo: usize, hi: usize) -> Self {
        RealSeries {
            entries: self
                .entries
                .iter()
                .filter(|(i, _)| (lo..=hi).contains(i))
                .cloned()
                .collect(),
        }
    }

    pub fn to_f64(&self) -> Vec<(usize, f64)> {
        self.iter().map(|(i, v)| (i, to_f64(v))).collect()
    }

    fn values(&self) -> impl Iterator<Item = &Real> {
        self.entries.iter().map(|e| &e.1)
    }

    fn require_contiguous(&self, what: &'static str, needed: usize) -> Result<(), AnalysisError> {
        if self.len() < needed {
            return Err(AnalysisError::InsufficientData {
                what,
                needed,
                got: self.len(),
            });
        }
        if !self.is_contiguous() {
            return Err(AnalysisError::NotContiguous);
        }
        Ok(())
    }
}

/// `(Delta f)_N = f_{N+1} - f_N` over consecutive entries.
pub fn forward_difference(f: &RealSeries) -> Result<RealSeries, AnalysisError> {
    f.require_contiguous("forward difference", 2)?;
    Ok(RealSeries::new(
        f.entries
            .windows(2)
            .map(|w| (w[0].0, &w[1].1 - &w[0].1))
            .collect(),
    ))
}

/// `(Delta^3 f)_N / 6`, labelled by the first index of each window.
pub(crate) fn third_difference_over_six(f: &RealSeries, p: &Precision) -> Result<RealSeries, AnalysisError> {
    f.require_contiguous("third difference", 4)?;
    let three = p.int(3);
    let six = p.int(6);
    let v: Vec<&Real> = f.values().collect();
    let entries = f
        .entries
        .windows(4)
        .enumerate()
        .map(|(k, w)| {
            let d = (v[k + 3] - v[k]) - &three * (v[k + 2] - v[k + 1]);
            (w[0].0, d / &six)
        })
        .collect();
    Ok(RealSeries::new(entries))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EstimatorName {
    B,
    BTilde,
    BBar,
    NuTildeEven,
    NuTildeOdd,
    Mu2,
}

impl fmt::Display for EstimatorName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EstimatorName::B => "b",
            EstimatorName::BTilde => "b_tilde",
            EstimatorName::BBar => "b_bar",
            EstimatorName::NuTildeEven => "nu_tilde_even",
            EstimatorName::NuTildeOdd => "nu_tilde_odd",
            EstimatorName::Mu2 => "mu2",
        })
    }
}

/// An estimator sequence and the limit read off its last entry.
#[derive(Debug, Clone, PartialEq)]
pub struct EstimatorReport {
    pub name: EstimatorName,
    pub sequence: RealSeries,
    pub final_value: f64,
    pub shift: Option<f64>,
    /// The `N_max` the estimate is quoted at.
    pub n_max: usize,
}

impl EstimatorReport {
    pub fn new(
        name: EstimatorName,
        sequence: RealSeries,
        shift: Option<f64>,
        n_max: usize,
    ) -> Result<Self, AnalysisError> {
        let final_value = match sequence.last() {
            Some((_, v)) => to_f64(v),
            None => {
                return Err(AnalysisError::InsufficientData {
                    what: "estimator report",
                    needed: 1,
                    got: 0,
                })
            }
        };
        Ok(EstimatorReport {
            name,
            sequence,
            final_value,
            shift,
            n_max,
        })
    }

    /// Tab-separated `index<TAB>value` lines with a header.
    pub fn to_tsv(&self) -> String {
        let mut out = format!("# {} n_max={}", self.name, self.n_max);
        if let Some(s) = self.shift {
            out += &format!(" s={s:.6}");
        }
        out += "\nN\tvalue\n";
        for (i, v) in self.sequence.iter() {
            out += &format!("{i}\t{}\n", v.clone().with_base_and_precision::<10>(20).value());
        }
        out
    }
}
