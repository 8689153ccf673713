use num_bigint::BigUint;
use rayon::prelude::*;

use super::coefficient::{Coefficient, Overflow};
use super::StateVector;
use crate::arch_state::{EncodedState, ProductState};
use crate::error::TransferError;
use crate::family::{Color, FamilySpec, SplitOption};

/// Knobs shared by every propagation entry point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EngineOptions {
    /// Worker threads for a single step; 1 runs sequentially.
    pub threads: usize,
    /// Abort with [`TransferError::ResourceExhausted`] above this many states.
    pub max_states: Option<usize>,
}

impl Default for EngineOptions {
    fn default() -> Self {
        EngineOptions {
            threads: 1,
            max_states: None,
        }
    }
}

impl EngineOptions {
    pub fn all_cores() -> Self {
        EngineOptions {
            threads: rayon::current_num_threads(),
            max_states: None,
        }
    }

    pub(crate) fn check_size(&self, step: usize, states: usize) -> Result<(), TransferError> {
        match self.max_states {
            Some(limit) if states > limit => Err(TransferError::ResourceExhausted { step, states, limit }),
            _ => Ok(()),
        }
    }

    pub(crate) fn pool(&self) -> Option<rayon::ThreadPool> {
        (self.threads > 1).then(|| {
            rayon::ThreadPoolBuilder::new()
                .num_threads(self.threads)
                .build()
                .expect("failed to build thread pool")
        })
    }
}

#[derive(Debug)]
pub(crate) enum StepError {
    Transfer(TransferError),
    Overflow,
}

impl From<TransferError> for StepError {
    fn from(e: TransferError) -> Self {
        StepError::Transfer(e)
    }
}

impl From<Overflow> for StepError {
    fn from(_: Overflow) -> Self {
        StepError::Overflow
    }
}

impl StepError {
    /// Only valid where overflow cannot happen (big-integer coefficients).
    pub(crate) fn into_transfer(self) -> TransferError {
        match self {
            StepError::Transfer(e) => e,
            StepError::Overflow => unreachable!("overflow with big-integer coefficients"),
        }
    }
}

/// Stacks reachable on one side of a vertex of color `color` that carries
/// `m` half-edges on that side: `k` closings of opposite-colored arches,
/// then `m - k` openings, for every feasible `k`.
pub(crate) fn side_outcomes(
    stack: EncodedState,
    m: u32,
    color: Color,
    out: &mut Vec<EncodedState>,
) -> Result<(), TransferError> {
    out.clear();
    let closing = color.opposite();
    let mut closed = stack;
    for k in 0..=m {
        if k > 0 {
            match closed.pop_expect(closing) {
                Some(s) => closed = s,
                None => break,
            }
        }
        let mut st = closed;
        for _ in k..m {
            st = st.push(color)?;
        }
        out.push(st);
    }
    Ok(())
}

/// Transfer matrix of one vertex of a given color.
pub(crate) struct VertexKernel {
    color: Color,
    splits: Vec<SplitOption>,
    max_side: usize,
}

/// Per-thread buffers for [`VertexKernel::expand`].
#[derive(Default)]
pub(crate) struct Scratch {
    up: Vec<Vec<EncodedState>>,
    down: Vec<Vec<EncodedState>>,
    up_ready: Vec<bool>,
    down_ready: Vec<bool>,
}

impl VertexKernel {
    pub fn new(family: &FamilySpec, color: Color) -> Self {
        let splits = family.split_options();
        let max_side = splits
            .iter()
            .map(|s| s.up.max(s.down) as usize)
            .max()
            .unwrap_or(0);
        VertexKernel {
            color,
            splits,
            max_side,
        }
    }

    /// Calls `emit(target, weight)` once per surviving branch out of `state`.
    pub fn expand<E: From<TransferError>>(
        &self,
        state: ProductState,
        scratch: &mut Scratch,
        mut emit: impl FnMut(ProductState, u64) -> Result<(), E>,
    ) -> Result<(), E> {
        let sides = self.max_side + 1;
        scratch.up.resize_with(sides, Vec::new);
        scratch.down.resize_with(sides, Vec::new);
        scratch.up_ready.clear();
        scratch.up_ready.resize(sides, false);
        scratch.down_ready.clear();
        scratch.down_ready.resize(sides, false);
        for split in &self.splits {
            let (mu, md) = (split.up as usize, split.down as usize);
            if !scratch.up_ready[mu] {
                side_outcomes(state.up, split.up, self.color, &mut scratch.up[mu])?;
                scratch.up_ready[mu] = true;
            }
            if !scratch.down_ready[md] {
                side_outcomes(state.down, split.down, self.color, &mut scratch.down[md])?;
                scratch.down_ready[md] = true;
            }
            for &u in &scratch.up[mu] {
                for &d in &scratch.down[md] {
                    emit(ProductState::new(u, d), split.weight)?;
                }
            }
        }
        Ok(())
    }
}

pub(crate) fn weighted<C: Coefficient>(c: &C, w: u64) -> Result<C, Overflow> {
    if w == 1 {
        Ok(c.clone())
    } else {
        c.mul_small(w)
    }
}

/// Where one branch `source -> target` deposits its weight: up to two
/// states of the output vector (the same state twice counts double).
pub(crate) type Targets = [Option<ProductState>; 2];

/// Keeps every branch as is.
pub(crate) fn identity_route(_: ProductState, t: ProductState) -> Targets {
    [Some(t), None]
}

/// One step. `route` maps each branch to the output entries it feeds, which
/// lets the same loop drive full vectors, pruned vectors and the
/// mirror-reduced vectors of the half propagator.
pub(crate) fn step_with<C, R>(
    v: &StateVector<C>,
    kernel: &VertexKernel,
    pool: Option<&rayon::ThreadPool>,
    route: &R,
) -> Result<StateVector<C>, StepError>
where
    C: Coefficient,
    R: Fn(ProductState, ProductState) -> Targets + Sync,
{
    let expand_into = |out: &mut StateVector<C>,
                       scratch: &mut Scratch,
                       state: ProductState,
                       c: &C|
     -> Result<(), StepError> {
        kernel.expand(state, scratch, |t, w| {
            let targets = route(state, t);
            if targets.iter().any(Option::is_some) {
                let value = weighted(c, w)?;
                for target in targets.into_iter().flatten() {
                    out.add(target, &value)?;
                }
            }
            Ok::<(), StepError>(())
        })
    };
    match pool {
        None => {
            let mut out = StateVector::with_capacity(v.len() * 2);
            let mut scratch = Scratch::default();
            for (s, c) in v.iter() {
                expand_into(&mut out, &mut scratch, *s, c)?;
            }
            Ok(out)
        }
        Some(pool) => pool.install(|| {
            let entries: Vec<(&ProductState, &C)> = v.iter().collect();
            let chunk = (entries.len() / (4 * pool.current_num_threads())).max(1024);
            entries
                .par_chunks(chunk)
                .map(|part| {
                    let mut out = StateVector::with_capacity(part.len() * 2);
                    let mut scratch = Scratch::default();
                    for (s, c) in part {
                        expand_into(&mut out, &mut scratch, **s, c)?;
                    }
                    Ok(out)
                })
                .try_reduce(StateVector::new, |a, b| {
                    let (mut big, small) = if a.len() >= b.len() { (a, b) } else { (b, a) };
                    big.merge(small)?;
                    Ok(big)
                })
        }),
    }
}

/// Applies the transfer matrix of one vertex of color `color`.
pub fn step_vertex(v: &StateVector, color: Color, family: &FamilySpec) -> Result<StateVector, TransferError> {
    let kernel = VertexKernel::new(family, color);
    step_with(v, &kernel, None, &identity_route).map_err(StepError::into_transfer)
}

/// Applies `steps` vertices, colors alternating black first.
pub fn propagate(
    family: &FamilySpec,
    steps: usize,
    start: &StateVector,
    options: EngineOptions,
) -> Result<StateVector, TransferError> {
    propagate_from(family, 0, steps, start, options, None)
}

/// Propagates through vertices `first .. first + steps`; when `total` is set,
/// states deeper than what the remaining `total - position` vertices can
/// close are dropped.
fn propagate_from(
    family: &FamilySpec,
    first: usize,
    steps: usize,
    start: &StateVector,
    options: EngineOptions,
    total: Option<usize>,
) -> Result<StateVector, TransferError> {
    let kernels = [
        VertexKernel::new(family, Color::Black),
        VertexKernel::new(family, Color::White),
    ];
    let per_vertex = family.max_valency().saturating_sub(2) as usize;
    let pool = options.pool();
    let mut v = start.clone();
    for i in first..first + steps {
        let remaining = total.map(|t| t.saturating_sub(i + 1) * per_vertex);
        let route = move |_: ProductState, t: ProductState| -> Targets {
            [
                remaining.is_none_or(|r| t.depth() as usize <= r).then_some(t),
                None,
            ]
        };
        v = step_with(&v, &kernels[i % 2], pool.as_ref(), &route).map_err(StepError::into_transfer)?;
        options.check_size(i + 1, v.len())?;
    }
    Ok(v)
}

fn check_n(n: usize) -> Result<(), TransferError> {
    if n == 0 {
        Err(TransferError::InvalidArgument("N must be at least 1".into()))
    } else {
        Ok(())
    }
}

/// `z_N` read off the vacuum coefficient after all `2N` vertices.
pub fn full_z(family: &FamilySpec, n: usize, options: EngineOptions) -> Result<BigUint, TransferError> {
    check_n(n)?;
    let v = propagate_from(family, 0, 2 * n, &StateVector::vacuum(), options, Some(2 * n))?;
    Ok(v.coefficient(&ProductState::VACUUM))
}

/// `y_N` from a full propagation in which every middle state is weighted by
/// the number of arches crossing the middle.
pub fn full_y(family: &FamilySpec, n: usize, options: EngineOptions) -> Result<BigUint, TransferError> {
    check_n(n)?;
    let half = propagate_from(family, 0, n, &StateVector::vacuum(), options, Some(2 * n))?;
    let weighted: StateVector = half
        .iter()
        .map(|(s, c)| (*s, c * BigUint::from(s.depth())))
        .filter(|(_, c)| !num_traits::Zero::is_zero(c))
        .collect();
    let v = propagate_from(family, n, n, &weighted, options, Some(2 * n))?;
    Ok(v.coefficient(&ProductState::VACUUM))
}
