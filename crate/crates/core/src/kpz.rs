//! Predictions from conformal field theory coupled to gravity: central
//! charges, KPZ dimensions, SLE watermelon exponents and the contact
//! exponent. Plain `f64` throughout.

use std::f64::consts::PI;
use std::fmt;

use crate::error::DomainError;

const TOL: f64 = 1e-9;

fn domain(msg: impl Into<String>) -> DomainError {
    DomainError(msg.into())
}

fn require_c(c: f64) -> Result<(), DomainError> {
    if c.is_finite() && c <= 1.0 + TOL {
        Ok(())
    } else {
        Err(domain(format!("central charge {c} is above 1")))
    }
}

fn require_kappa(kappa: f64) -> Result<(), DomainError> {
    if kappa.is_finite() && kappa > 0.0 {
        Ok(())
    } else {
        Err(domain(format!("kappa must be positive, got {kappa}")))
    }
}

/// `sqrt(1 - c)`, clamped at `c = 1` against rounding.
fn root_one_minus(c: f64) -> f64 {
    (1.0 - c).max(0.0).sqrt()
}

/// String susceptibility `gamma(c) = (c - 1 - sqrt((1-c)(25-c))) / 12`.
pub fn gamma_of_c(c: f64) -> Result<f64, DomainError> {
    require_c(c)?;
    Ok((c - 1.0 - root_one_minus(c) * (25.0 - c).sqrt()) / 12.0)
}

/// Coupling `g` in `[0, 1]` with `n = -2 cos(pi g)`.
pub fn g_of_n(n: f64) -> Result<f64, DomainError> {
    if !(-2.0..=2.0).contains(&n) {
        return Err(domain(format!("loop weight {n} outside [-2, 2]")));
    }
    Ok((-n / 2.0).acos() / PI)
}

/// Central charge of fully packed loops on bicolored `p`-regular maps.
pub fn c_fpl(n: f64) -> Result<f64, DomainError> {
    c_dense(n).map(|c| c + 1.0)
}

/// Central charge of the dense O(n) phase.
pub fn c_dense(n: f64) -> Result<f64, DomainError> {
    let g = g_of_n(n)?;
    if g == 0.0 {
        return Err(domain("n = -2 sends the central charge to minus infinity"));
    }
    Ok(1.0 - 6.0 * (1.0 - g).powi(2) / g)
}

/// SLE parameter of the dense phase with loop weight `n`: `4 pi / arccos(-n/2)`.
pub fn kappa_of_n(n: f64) -> Result<f64, DomainError> {
    let g = g_of_n(n)?;
    if g == 0.0 {
        return Err(domain("n = -2 has no finite kappa"));
    }
    Ok(4.0 / g)
}

/// Dense-branch `kappa >= 4` with `c_sle(kappa) = c`.
pub fn kappa_of_c(c: f64) -> Result<f64, DomainError> {
    require_c(c)?;
    let b = 26.0 - 2.0 * c;
    Ok((b + (b * b - 576.0).max(0.0).sqrt()) / 6.0)
}

pub fn c_sle(kappa: f64) -> Result<f64, DomainError> {
    require_kappa(kappa)?;
    Ok((6.0 - kappa) * (6.0 - 16.0 / kappa) / 4.0)
}

pub fn dual_kappa(kappa: f64) -> Result<f64, DomainError> {
    require_kappa(kappa)?;
    Ok(16.0 / kappa)
}

/// Hausdorff dimension of SLE: `min(1 + kappa/8, 2)`.
pub fn hausdorff_dimension(kappa: f64) -> Result<f64, DomainError> {
    require_kappa(kappa)?;
    Ok((1.0 + kappa / 8.0).min(2.0))
}

/// Liouville parameter `(sqrt(25 - c) - sqrt(1 - c)) / sqrt(6)`.
pub fn gamma_l_of_c(c: f64) -> Result<f64, DomainError> {
    require_c(c)?;
    Ok(((25.0 - c).sqrt() - root_one_minus(c)) / 6f64.sqrt())
}

/// `(gamma, gamma_L)` for central charge `c_sle(kappa)`:
/// `1 - max(4/kappa, kappa/4)` and `min(sqrt(kappa), sqrt(16/kappa))`.
pub fn gamma_gamma_l_of_kappa(kappa: f64) -> Result<(f64, f64), DomainError> {
    require_kappa(kappa)?;
    let gamma = 1.0 - (4.0 / kappa).max(kappa / 4.0);
    let gamma_l = kappa.sqrt().min((16.0 / kappa).sqrt());
    Ok((gamma, gamma_l))
}

/// Liouville parameter for `c = 1 + c_sle(kappa)`, `kappa` in `[6, 8]`.
pub fn gamma_l_bicubic(kappa: f64) -> Result<f64, DomainError> {
    if !(6.0..=8.0).contains(&kappa) {
        return Err(domain(format!("kappa {kappa} outside [6, 8]")));
    }
    let u = 3.0 * (kappa + 16.0 / kappa);
    Ok(((u + 22.0).sqrt() - (u - 26.0).max(0.0).sqrt()) / 12f64.sqrt())
}

/// KPZ quantum dimension of a Euclidean weight `h` at central charge `c`.
pub fn delta_of(h: f64, c: f64) -> Result<f64, DomainError> {
    require_c(c)?;
    let disc = 1.0 - c + 24.0 * h;
    if disc < 0.0 {
        return Err(domain(format!("1 - c + 24h < 0 for h = {h}, c = {c}")));
    }
    let r = root_one_minus(c);
    Ok((disc.sqrt() - r) / ((25.0 - c).sqrt() - r))
}

/// Inverse of [`delta_of`]: `h = (gamma_L^2/4) Delta^2 + (1 - gamma_L^2/4) Delta`.
pub fn h_of_delta(delta: f64, c: f64) -> Result<f64, DomainError> {
    let a = gamma_l_of_c(c)?.powi(2) / 4.0;
    Ok(a * delta * delta + (1.0 - a) * delta)
}

/// Watermelon exponent of `ell` SLE strands: `(4 ell^2 - (4 - kappa)^2) / (16 kappa)`.
pub fn watermelon_h(kappa: f64, ell: u32) -> Result<f64, DomainError> {
    require_kappa(kappa)?;
    if ell == 0 {
        return Err(domain("a watermelon needs at least one strand"));
    }
    let l = f64::from(ell);
    Ok((4.0 * l * l - (4.0 - kappa).powi(2)) / (16.0 * kappa))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Lattice {
    Hexagonal,
    Square,
}

/// Fully packed lattice value: odd `ell` is shifted by `3/(4 kappa)` on the
/// hexagonal lattice and `1/(6 + kappa)` on the square lattice.
pub fn fpl_watermelon_h(kappa: f64, ell: u32, lattice: Lattice) -> Result<f64, DomainError> {
    let h = watermelon_h(kappa, ell)?;
    if ell.is_multiple_of(2) {
        return Ok(h);
    }
    Ok(h + match lattice {
        Lattice::Hexagonal => 3.0 / (4.0 * kappa),
        Lattice::Square => 1.0 / (6.0 + kappa),
    })
}

/// Gravitational watermelon dimension in the dense phase,
/// `ell/4 + (4 - kappa)/8`, for `kappa >= 4`. Below 4 the KPZ image of
/// [`watermelon_h`] is `(2 ell - 4 + kappa) / (2 kappa)` instead.
pub fn dense_gravitational_watermelon(kappa: f64, ell: u32) -> Result<f64, DomainError> {
    if !(kappa >= 4.0 && kappa.is_finite()) {
        return Err(domain(format!("dense phase needs kappa >= 4, got {kappa}")));
    }
    let closed = f64::from(ell) / 4.0 + (4.0 - kappa) / 8.0;
    let kpz = delta_of(watermelon_h(kappa, ell)?, c_sle(kappa)?)?;
    if (closed - kpz).abs() > TOL {
        return Err(domain(format!(
            "dense watermelon mismatch at kappa {kappa}, ell {ell}: {closed} vs {kpz}"
        )));
    }
    Ok(closed)
}

/// Euclidean weight shared by the contact set of the two half-cycles: the
/// four-strand weight at `kappa = 8` and the two-strand weight at `kappa = 2`.
pub const CONTACT_WEIGHT: f64 = 3.0 / 8.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContactPrediction {
    pub h: f64,
    pub delta: f64,
    pub nu: f64,
}

impl ContactPrediction {
    /// Exponent of the Euclidean contact count, `1 - h`.
    pub fn euclidean_exponent(&self) -> f64 {
        1.0 - self.h
    }
}

/// `nu = 1 - Delta(3/8, c)`.
pub fn predicted_nu(c: f64) -> Result<ContactPrediction, DomainError> {
    let delta = delta_of(CONTACT_WEIGHT, c)?;
    Ok(ContactPrediction {
        h: CONTACT_WEIGHT,
        delta,
        nu: 1.0 - delta,
    })
}

/// Which central charge a loop weight maps to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ModelClass {
    /// `c_dense(n)`: mixed valencies, rigid loops, dense O(n) loops.
    Dense,
    /// `c_fpl(n) = 1 + c_dense(n)`: fully packed loops on `p`-regular maps.
    Fpl,
}

impl fmt::Display for ModelClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ModelClass::Dense => "dense",
            ModelClass::Fpl => "fpl",
        })
    }
}

impl std::str::FromStr for ModelClass {
    type Err = DomainError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "dense" => Ok(ModelClass::Dense),
            "fpl" => Ok(ModelClass::Fpl),
            _ => Err(domain(format!("unknown model class {s:?}; use dense or fpl"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CriticalData {
    pub class: ModelClass,
    pub n: f64,
    pub g: f64,
    pub kappa: f64,
    pub c: f64,
    pub gamma: f64,
    pub gamma_l: f64,
}

impl CriticalData {
    pub fn from_n(n: f64, class: ModelClass) -> Result<Self, DomainError> {
        let g = g_of_n(n)?;
        let kappa = kappa_of_n(n)?;
        let c = match class {
            ModelClass::Dense => c_dense(n)?,
            ModelClass::Fpl => c_fpl(n)?,
        };
        Self::assemble(class, n, g, kappa, c)
    }

    pub fn from_kappa(kappa: f64, class: ModelClass) -> Result<Self, DomainError> {
        let n = -2.0 * (4.0 * PI / kappa).cos();
        let g = g_of_n(n.clamp(-2.0, 2.0))?;
        let c = match class {
            ModelClass::Dense => c_sle(kappa)?,
            ModelClass::Fpl => 1.0 + c_sle(kappa)?,
        };
        Self::assemble(class, n, g, kappa, c)
    }

    fn assemble(class: ModelClass, n: f64, g: f64, kappa: f64, c: f64) -> Result<Self, DomainError> {
        Ok(CriticalData {
            class,
            n,
            g,
            kappa,
            c,
            gamma: gamma_of_c(c)?,
            gamma_l: gamma_l_of_c(c)?,
        })
    }

    pub fn contact(&self) -> Result<ContactPrediction, DomainError> {
        predicted_nu(self.c)
    }
}
