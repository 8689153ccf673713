//! Half-line propagation producing `z_N` and `y_N` for every `N` in turn.
//!
//! Every family is symmetric under exchanging the two sides of the line,
//! so the coefficient of `|a, b>` equals that of `|b, a>`. The propagator
//! stores only states with `up <= down` and routes each branch of a
//! non-symmetric source to both its target and the mirror of its target.

use num_bigint::BigUint;

use super::coefficient::SquareSum;
use super::engine::{step_with, StepError, Targets, VertexKernel};
use super::{Coefficient, EngineOptions, StateVector};
use crate::arch_state::ProductState;
use crate::error::TransferError;
use crate::family::{Color, FamilySpec};

fn is_canonical(s: ProductState) -> bool {
    s.up <= s.down
}

/// Branch routing on mirror-reduced vectors.
fn reduced_route(source: ProductState, t: ProductState) -> Targets {
    let source_symmetric = source.up == source.down;
    [
        (t.up <= t.down).then_some(t),
        (!source_symmetric && t.up >= t.down).then(|| t.mirrored()),
    ]
}

#[derive(Debug, Clone)]
enum Reduced {
    Fast(StateVector<u128>),
    Big(StateVector<BigUint>),
}

/// Values harvested after one vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HalfStep {
    pub n: usize,
    pub z: BigUint,
    pub y: BigUint,
    /// Stored (mirror-reduced) states.
    pub states: usize,
}

/// Incremental half propagation: the `n`-th call to [`Propagator::advance`]
/// returns `z_n` and `y_n`.
pub struct Propagator {
    kernels: [VertexKernel; 2],
    vector: Reduced,
    position: usize,
    options: EngineOptions,
    pool: Option<rayon::ThreadPool>,
}

impl Propagator {
    pub fn new(family: &FamilySpec, options: EngineOptions) -> Self {
        Propagator {
            kernels: [
                VertexKernel::new(family, Color::Black),
                VertexKernel::new(family, Color::White),
            ],
            vector: Reduced::Fast(StateVector::vacuum()),
            position: 0,
            options,
            pool: options.pool(),
        }
    }

    /// Number of vertices processed so far.
    pub fn position(&self) -> usize {
        self.position
    }

    pub fn state_count(&self) -> usize {
        match &self.vector {
            Reduced::Fast(v) => v.len(),
            Reduced::Big(v) => v.len(),
        }
    }

    /// Rough resident size of the stored vector.
    pub fn memory_estimate(&self) -> usize {
        let per_entry = match &self.vector {
            Reduced::Fast(_) => std::mem::size_of::<(ProductState, u128)>() + 1,
            Reduced::Big(_) => std::mem::size_of::<(ProductState, BigUint)>() + 1 + 16,
        };
        self.state_count() * per_entry * 8 / 7
    }

    /// Whether coefficients have outgrown 128 bits.
    pub fn uses_big_integers(&self) -> bool {
        matches!(self.vector, Reduced::Big(_))
    }

    pub fn advance(&mut self) -> Result<HalfStep, TransferError> {
        let kernel = &self.kernels[self.position % 2];
        let pool = self.pool.as_ref();
        let next = match &self.vector {
            Reduced::Fast(v) => match step_with(v, kernel, pool, &reduced_route) {
                Ok(out) => Reduced::Fast(out),
                Err(StepError::Overflow) => {
                    log::debug!("coefficients exceed 128 bits at step {}", self.position + 1);
                    let big = v.to_big();
                    Reduced::Big(
                        step_with(&big, kernel, pool, &reduced_route).map_err(StepError::into_transfer)?,
                    )
                }
                Err(StepError::Transfer(e)) => return Err(e),
            },
            Reduced::Big(v) => {
                Reduced::Big(step_with(v, kernel, pool, &reduced_route).map_err(StepError::into_transfer)?)
            }
        };
        self.vector = next;
        self.position += 1;
        self.options.check_size(self.position, self.state_count())?;
        let (z, y) = match &self.vector {
            Reduced::Fast(v) => harvest(v),
            Reduced::Big(v) => harvest(v),
        };
        Ok(HalfStep {
            n: self.position,
            z,
            y,
            states: self.state_count(),
        })
    }

    /// The full (un-reduced) vector after the vertices processed so far.
    pub fn expanded(&self) -> StateVector {
        let big = match &self.vector {
            Reduced::Fast(v) => v.to_big(),
            Reduced::Big(v) => v.clone(),
        };
        let mut full = StateVector::with_capacity(big.len() * 2);
        for (s, c) in big.iter() {
            full.add(*s, c).expect("big integers do not overflow");
            if s.up != s.down {
                full.add(s.mirrored(), c).expect("big integers do not overflow");
            }
        }
        full
    }
}

/// `(sum c^2, sum depth c^2)` over the full vector represented by `v`.
fn harvest<C: Coefficient>(v: &StateVector<C>) -> (BigUint, BigUint) {
    let mut z = SquareSum::default();
    let mut y = SquareSum::default();
    for (s, c) in v.iter() {
        debug_assert!(is_canonical(*s));
        let mult = if s.up == s.down { 1 } else { 2 };
        z.add_square(c, mult);
        y.add_square(c, mult * u64::from(s.depth()));
    }
    (z.finish(), y.finish())
}

/// `(z_N, y_N)` from a single half propagation of `N` vertices.
pub fn contact_sums(
    family: &FamilySpec,
    n: usize,
    options: EngineOptions,
) -> Result<(BigUint, BigUint), TransferError> {
    if n == 0 {
        return Err(TransferError::InvalidArgument("N must be at least 1".into()));
    }
    let mut p = Propagator::new(family, options);
    let mut last = None;
    for _ in 0..n {
        last = Some(p.advance()?);
    }
    let last = last.expect("n >= 1");
    Ok((last.z, last.y))
}

pub fn z_of(family: &FamilySpec, n: usize) -> Result<BigUint, TransferError> {
    contact_sums(family, n, EngineOptions::default()).map(|(z, _)| z)
}

pub fn y_of(family: &FamilySpec, n: usize) -> Result<BigUint, TransferError> {
    contact_sums(family, n, EngineOptions::default()).map(|(_, y)| y)
}
