//! Estimators for the configuration exponent and the growth factor.

use super::{third_difference_over_six, to_f64, EstimatorName, EstimatorReport, Precision, Real, RealSeries};
use crate::error::AnalysisError;

/// `b_N = N^2 ln(z_{N+2} z_N / z_{N+1}^2)`, which tends to `2 - gamma`.
pub fn b_series(z: &RealSeries, p: &Precision) -> Result<RealSeries, AnalysisError> {
    z.require_contiguous("b series", 3)?;
    if let Some((i, _)) = z.iter().find(|(_, v)| **v <= Real::ZERO) {
        return Err(AnalysisError::NonPositive { index: i });
    }
    let v: Vec<(usize, &Real)> = z.iter().collect();
    let entries = v
        .windows(3)
        .map(|w| {
            let n = w[0].0 as u64;
            let ratio = (w[2].1 * w[0].1) / (w[1].1 * w[1].1);
            (w[0].0, p.int(n * n) * ratio.ln())
        })
        .collect();
    Ok(RealSeries::new(entries))
}

/// `(1/3!) Delta^3 (N^3 b_N)`; entry `N` uses `b_N .. b_{N+3}`.
pub fn accel_tilde(b: &RealSeries, p: &Precision) -> Result<RealSeries, AnalysisError> {
    b.require_contiguous("tilde acceleration", 4)?;
    let scaled = RealSeries::new(
        b.iter()
            .map(|(n, v)| {
                let n3 = (n as u64).pow(3);
                (n, p.int(n3) * v)
            })
            .collect(),
    );
    third_difference_over_six(&scaled, p)
}

/// Output of [`accel_bar`]: the usable entries, plus the indices skipped
/// because the second difference vanished there.
#[derive(Debug, Clone, PartialEq)]
pub struct BarSeries {
    pub series: RealSeries,
    pub flagged: Vec<usize>,
}

/// `b_{N+2} - 2 (Delta b)_{N+2} (Delta b)_{N+1} / (Delta^2 b)_{N+1}`.
pub fn accel_bar(b: &RealSeries) -> Result<BarSeries, AnalysisError> {
    b.require_contiguous("bar acceleration", 4)?;
    let v: Vec<(usize, &Real)> = b.iter().collect();
    let mut entries = Vec::new();
    let mut flagged = Vec::new();
    for w in v.windows(4) {
        let n = w[0].0;
        let (b1, b2, b3) = (w[1].1, w[2].1, w[3].1);
        let d1 = b2 - b1;
        let d2 = b3 - b2;
        let dd = &d2 - &d1;
        if dd == Real::ZERO {
            flagged.push(n);
            continue;
        }
        let two_d2 = &d2 + &d2;
        entries.push((n, b2 - two_d2 * d1 / dd));
    }
    if !flagged.is_empty() {
        log::warn!("bar acceleration skipped indices {flagged:?}: vanishing second difference");
    }
    Ok(BarSeries {
        series: RealSeries::new(entries),
        flagged,
    })
}

/// Growth factor `mu^2` from power-law corrected ratios with one
/// Richardson step:
///
/// `r_N = (z_{N+1}/z_N) ((N+1)/N)^(2-gamma)`,
/// `r'_N = ((N+1)^2 r_{N+1} - N^2 r_N) / (2N + 1)`.
///
/// With the exact power law divided out, a `1/N` correction to `z_N` only
/// shows up at order `1/N^2` in `r_N`, which is the order the step removes.
///
/// The estimate is `r'_{n_max-1}`, which reads `z_1 ..= z_{n_max+1}`.
pub fn mu2_estimate(
    z: &RealSeries,
    gamma_theory: f64,
    n_max: usize,
    p: &Precision,
) -> Result<EstimatorReport, AnalysisError> {
    let z = z.range(1, n_max + 1);
    z.require_contiguous("mu^2 estimate", 3)?;
    if z.first_index() != Some(1) || z.last().map(|(i, _)| i) != Some(n_max + 1) {
        return Err(AnalysisError::InsufficientData {
            what: "mu^2 estimate",
            needed: n_max + 1,
            got: z.last().map_or(0, |(i, _)| i),
        });
    }
    let exponent = p.int(2) - p.f64(gamma_theory);
    let v: Vec<(usize, &Real)> = z.iter().collect();
    let mut r = Vec::with_capacity(v.len());
    for w in v.windows(2) {
        let n = w[0].0 as u64;
        if *w[0].1 <= Real::ZERO {
            return Err(AnalysisError::NonPositive { index: w[0].0 });
        }
        let correction = ((&exponent) * (p.int(n + 1) / p.int(n)).ln()).exp();
        r.push((w[0].0, w[1].1 / w[0].1 * correction));
    }
    let accelerated = r
        .windows(2)
        .map(|w| {
            let n = w[0].0 as u64;
            let weighted = p.int((n + 1) * (n + 1)) * &w[1].1 - p.int(n * n) * &w[0].1;
            (w[0].0, weighted / p.int(2 * n + 1))
        })
        .collect();
    let report = EstimatorReport::new(EstimatorName::Mu2, RealSeries::new(accelerated), None, n_max)?;
    log::debug!("mu^2 estimate {} from n_max {n_max}", report.final_value);
    debug_assert!(to_f64(report.sequence.last().unwrap().1).is_finite());
    Ok(report)
}
