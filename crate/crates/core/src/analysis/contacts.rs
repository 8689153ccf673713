//! Contact exponent: `k_N = y_N / z_N ~ rho N^nu`, estimated separately on
//! even and odd `N` after a shift `k_N -> k_N + 2s`.

use std::fmt;

use rayon::prelude::*;

use super::{third_difference_over_six, to_f64, EstimatorName, EstimatorReport, Precision, Real, RealSeries};
use crate::error::AnalysisError;
use crate::transfer::ExactSeries;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of(n: usize) -> Self {
        if n.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    fn name(self) -> &'static str {
        match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        }
    }

    /// The pair `(lower, upper)` of `k` indices read by the `M`-th term.
    fn pair(self, m: usize) -> (usize, usize) {
        match self {
            Parity::Even => (2 * m, 2 * m + 2),
            Parity::Odd => (2 * m - 1, 2 * m + 1),
        }
    }

    /// `N` of the accelerated term built from `M, .., M + 3`: `2M` or
    /// `2M - 1`. It reads `k` up to `N + 8`.
    fn label(self, m: usize) -> usize {
        self.pair(m).0
    }

    pub fn estimator(self) -> EstimatorName {
        match self {
            Parity::Even => EstimatorName::NuTildeEven,
            Parity::Odd => EstimatorName::NuTildeOdd,
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// `k_N = y_N / z_N` at working precision.
pub fn k_series(z: &ExactSeries, y: &ExactSeries, p: &Precision) -> Result<RealSeries, AnalysisError> {
    if z.len() != y.len() {
        return Err(AnalysisError::MismatchedSeries);
    }
    let mut values = Vec::with_capacity(z.len());
    for (i, (zn, yn)) in z.values.iter().zip(&y.values).enumerate() {
        if num_traits::Zero::is_zero(zn) {
            return Err(AnalysisError::NonPositive { index: i + 1 });
        }
        values.push(p.big(yn) / p.big(zn));
    }
    Ok(RealSeries::contiguous(1, values))
}

/// `M^3 (M ln((k_b + 2s) / (k_a + 2s)))` for each `M` whose index pair
/// `(a, b)` is present in `k`.
pub fn nu_hat(k: &RealSeries, parity: Parity, s: &Real, p: &Precision) -> Result<RealSeries, AnalysisError> {
    let two_s = s + s;
    let Some((last, _)) = k.last() else {
        return Ok(RealSeries::default());
    };
    let mut entries = Vec::new();
    for m in 1.. {
        let (a, b) = parity.pair(m);
        if b > last {
            break;
        }
        let (Some(ka), Some(kb)) = (k.get(a), k.get(b)) else {
            continue;
        };
        let lo = ka + &two_s;
        let hi = kb + &two_s;
        for (index, v) in [(a, &lo), (b, &hi)] {
            if *v <= Real::ZERO {
                return Err(AnalysisError::NonPositiveLogArgument { index });
            }
        }
        let m4 = (m as u64).pow(4);
        entries.push((m, p.int(m4) * (hi / lo).ln()));
    }
    Ok(RealSeries::new(entries))
}

/// `(1/3!) Delta^3` of [`nu_hat`], labelled `2M` (even) or `2M - 1` (odd).
pub fn nu_tilde(k: &RealSeries, parity: Parity, s: f64, p: &Precision) -> Result<RealSeries, AnalysisError> {
    let hat = nu_hat(k, parity, &p.f64(s), p)?;
    let tilde = third_difference_over_six(&hat, p)?;
    Ok(RealSeries::new(
        tilde.iter().map(|(m, v)| (parity.label(m), v.clone())).collect(),
    ))
}

#[derive(Debug, Clone, PartialEq)]
pub struct ShiftSolution {
    pub s_star: f64,
    pub nu: f64,
    pub parity: Parity,
    pub n_max: usize,
}

impl ShiftSolution {
    /// The full accelerated sequence at `s*`.
    pub fn report(&self, k: &RealSeries, p: &Precision) -> Result<EstimatorReport, AnalysisError> {
        let seq = nu_tilde(&k.range(1, self.n_max + 8), self.parity, self.s_star, p)?;
        EstimatorReport::new(self.parity.estimator(), seq, Some(self.s_star), self.n_max)
    }
}

const SCAN: (f64, f64, f64) = (-2.0, 4.0, 0.25);

/// Shift `s*` at which the last two estimates of one parity agree:
/// `nu~_{n_max}(s*) = nu~_{n_max - 2}(s*)`. Among several roots in the scan
/// range the one closest to `s = 1` is taken. Reads `k_{n_max-2} ..= k_{n_max+8}`.
pub fn solve_shift(
    k: &RealSeries,
    parity: Parity,
    n_max: usize,
    p: &Precision,
) -> Result<ShiftSolution, AnalysisError> {
    if Parity::of(n_max) != parity {
        return Err(AnalysisError::ParityMismatch {
            parity: parity.name(),
            n_max,
        });
    }
    if n_max < 3 || (parity == Parity::Even && n_max < 4) {
        return Err(AnalysisError::InsufficientData {
            what: "shift stabilization",
            needed: 4,
            got: n_max,
        });
    }
    let window = k.range(n_max - 2, n_max + 8);
    if window.len() != 11 || !window.is_contiguous() {
        return Err(AnalysisError::InsufficientData {
            what: "shift stabilization",
            needed: n_max + 8,
            got: k.last().map_or(0, |(i, _)| i),
        });
    }
    let gap = |s: f64| -> Result<(f64, Real), AnalysisError> {
        let t = nu_tilde(&window, parity, s, p)?;
        let (Some(hi), Some(lo)) = (t.get(n_max), t.get(n_max - 2)) else {
            unreachable!("window covers both estimates");
        };
        Ok((to_f64(&(hi - lo)), hi.clone()))
    };

    let (lo, hi, step) = SCAN;
    let grid: Vec<f64> = (0..=((hi - lo) / step) as usize)
        .map(|i| lo + step * i as f64)
        .collect();
    let values: Vec<Option<f64>> = grid.par_iter().map(|&s| gap(s).ok().map(|g| g.0)).collect();

    let mut best: Option<(f64, f64)> = None;
    for i in 0..grid.len() - 1 {
        let (Some(fa), Some(fb)) = (values[i], values[i + 1]) else {
            continue;
        };
        if fa == 0.0 || fa.signum() != fb.signum() {
            let mid = 0.5 * (grid[i] + grid[i + 1]);
            if best.is_none_or(|(a, b)| (mid - 1.0).abs() < (0.5 * (a + b) - 1.0).abs()) {
                best = Some((grid[i], grid[i + 1]));
            }
        }
    }
    let Some((mut a, mut b)) = best else {
        return Err(AnalysisError::NoStabilizingShift { lo, hi });
    };

    let mut fa = gap(a)?.0;
    let (mut s, mut nu) = (a, Real::ZERO);
    for _ in 0..200 {
        s = 0.5 * (a + b);
        let (fs, value) = gap(s)?;
        nu = value;
        if fs.abs() <= 1e-10 && b - a <= 1e-6 {
            break;
        }
        if fs == 0.0 {
            break;
        }
        if fs.signum() == fa.signum() {
            a = s;
            fa = fs;
        } else {
            b = s;
        }
        if b - a < 1e-15 {
            break;
        }
    }
    log::debug!(
        "{parity} shift s* = {s:.6}, nu = {:.6} at N = {n_max}",
        to_f64(&nu)
    );
    Ok(ShiftSolution {
        s_star: s,
        nu: to_f64(&nu),
        parity,
        n_max,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rigid4_k;

    fn p() -> Precision {
        Precision::new(60).unwrap()
    }

    fn rigid4(n_max: u64, p: &Precision) -> RealSeries {
        RealSeries::contiguous(1, (1..=n_max).map(|n| p.rational(&rigid4_k(n))).collect())
    }

    /// `k_N = c N^nu - 2 s0`.
    fn synthetic(nu: f64, s0: f64, n_max: usize, p: &Precision) -> RealSeries {
        let c = p.f64(1.7);
        let exp = p.f64(nu);
        RealSeries::contiguous(
            1,
            (1..=n_max as u64)
                .map(|n| &c * (&exp * p.int(n).ln()).exp() - p.f64(2.0 * s0))
                .collect(),
        )
    }

    #[test]
    fn labels_follow_the_largest_index() {
        let p = p();
        let k = rigid4(30, &p);
        let even = nu_tilde(&k, Parity::Even, 1.0, &p).unwrap();
        assert_eq!(even.first_index(), Some(2));
        assert_eq!(even.last().unwrap().0, 22);
        let odd = nu_tilde(&k, Parity::Odd, 1.0, &p).unwrap();
        assert_eq!(odd.first_index(), Some(1));
        assert_eq!(odd.last().unwrap().0, 21);
    }

    #[test]
    fn pure_power_law_after_the_right_shift() {
        let p = p();
        for nu in [0.3, 0.5, 0.7] {
            let k = synthetic(nu, 0.4, 40, &p);
            let t = nu_tilde(&k, Parity::Even, 0.4, &p).unwrap();
            // M = 10
            let v = to_f64(t.get(Parity::Even.label(10)).unwrap());
            assert!((v - nu).abs() < 1e-3, "nu={nu}: {v}");
        }
    }

    #[test]
    fn rigid_shift_tends_to_one() {
        let p = p();
        let k = rigid4(35, &p);
        let mut previous = 0.0;
        for n_max in [10, 14, 18, 22, 26] {
            let odd = solve_shift(&k, Parity::Odd, n_max + 1, &p).unwrap();
            assert!((odd.s_star - 1.0).abs() < 1e-3, "{n_max}: {odd:?}");
            assert!((odd.nu - 0.5).abs() < 1e-5, "{n_max}: {odd:?}");
            // the even series stabilizes slightly below 1 and creeps up
            let even = solve_shift(&k, Parity::Even, n_max, &p).unwrap();
            assert!(even.s_star > previous && even.s_star < 1.0, "{n_max}: {even:?}");
            assert!(1.0 - even.s_star < 0.7 / n_max as f64, "{n_max}: {even:?}");
            previous = even.s_star;
        }
        let sol = solve_shift(&k, Parity::Even, 26, &p).unwrap();
        assert!((sol.nu - 0.5).abs() < 2e-4);
        let report = sol.report(&k, &p).unwrap();
        assert_eq!(report.final_value, sol.nu);
        assert_eq!(report.shift, Some(sol.s_star));
        assert_eq!(report.sequence.last().unwrap().0, 26);
    }

    #[test]
    fn k_of_exact_series() {
        use crate::transfer::Observable;
        let p = p();
        let f = crate::FamilySpec::rigid(4).unwrap();
        let z = ExactSeries::new(f.clone(), Observable::Z, vec![1u32.into(), 4u32.into()]);
        let y = ExactSeries::new(f.clone(), Observable::Y, vec![2u32.into(), 8u32.into()]);
        let k = k_series(&z, &y, &p).unwrap();
        assert_eq!(k.to_f64(), vec![(1, 2.0), (2, 2.0)]);
        let short = z.truncated(1);
        assert_eq!(k_series(&short, &y, &p), Err(AnalysisError::MismatchedSeries));
    }

    #[test]
    fn errors() {
        let p = p();
        let k = rigid4(34, &p);
        assert!(matches!(
            solve_shift(&k, Parity::Odd, 26, &p),
            Err(AnalysisError::ParityMismatch { .. })
        ));
        assert!(solve_shift(&k, Parity::Even, 26, &p).is_ok());
        assert!(solve_shift(&k, Parity::Even, 28, &p).is_err());
        assert!(matches!(
            nu_tilde(&k, Parity::Even, -5.0, &p),
            Err(AnalysisError::NonPositiveLogArgument { .. })
        ));
    }
}
