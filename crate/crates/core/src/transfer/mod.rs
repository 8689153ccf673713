//! Transfer-matrix enumeration over encoded arch states.
//!
//! A configuration of size `2N` is a line of alternating black and white
//! vertices (black first) whose unvisited half-edges are paired by
//! non-crossing arches above and below the line. Sweeping the line from
//! left to right, the state between two vertices is the pair of open-arch
//! color stacks; [`step_vertex`] applies the transfer matrix of one vertex.
//!
//! `z_N` and `y_N` only need the vector after `N` vertices: by the combined
//! left-right reversal and color inversion, the right half of a
//! configuration is counted by the same coefficients, so
//! `z_N = sum c^2` and `y_N = sum depth * c^2` over the middle states.

mod brute;
mod coefficient;
mod engine;
mod half;
mod one_sided;

use std::fmt;

use num_bigint::BigUint;

pub use brute::brute_force_z;
pub use coefficient::Coefficient;
pub use engine::{full_y, full_z, propagate, step_vertex, EngineOptions};
pub use half::{contact_sums, y_of, z_of, HalfStep, Propagator};
pub use one_sided::{one_sided_counts, OneSidedPropagator, OneSidedStep};

use crate::arch_state::ProductState;
use crate::family::FamilySpec;

/// Sparse vector over product states. Zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StateVector<C = BigUint> {
    entries: rustc_hash::FxHashMap<ProductState, C>,
}

impl<C: Coefficient> StateVector<C> {
    pub fn new() -> Self {
        StateVector {
            entries: Default::default(),
        }
    }

    pub fn with_capacity(n: usize) -> Self {
        StateVector {
            entries: rustc_hash::FxHashMap::with_capacity_and_hasher(n, Default::default()),
        }
    }

    /// The empty configuration with coefficient one.
    pub fn vacuum() -> Self {
        let mut v = Self::new();
        v.entries.insert(ProductState::VACUUM, C::one());
        v
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, state: &ProductState) -> Option<&C> {
        self.entries.get(state)
    }

    /// Coefficient as a big integer, zero when absent.
    pub fn coefficient(&self, state: &ProductState) -> BigUint {
        self.entries
            .get(state)
            .map(Coefficient::to_biguint)
            .unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&ProductState, &C)> {
        self.entries.iter()
    }

    /// Adds `value` to the coefficient of `state`.
    pub fn add(&mut self, state: ProductState, value: &C) -> Result<(), coefficient::Overflow> {
        if value.is_zero() {
            return Ok(());
        }
        match self.entries.get_mut(&state) {
            Some(c) => c.add_assign_checked(value),
            None => {
                self.entries.insert(state, value.clone());
                Ok(())
            }
        }
    }

    /// Merges `other` into `self` by exact addition.
    pub(crate) fn merge(&mut self, other: Self) -> Result<(), coefficient::Overflow> {
        for (s, c) in other.entries {
            self.add(s, &c)?;
        }
        Ok(())
    }

    /// `sum c^2` over all states.
    pub fn sum_of_squares(&self) -> BigUint {
        let mut acc = coefficient::SquareSum::default();
        for c in self.entries.values() {
            acc.add_square(c, 1);
        }
        acc.finish()
    }

    /// `sum (depth_up + depth_down) c^2` over all states.
    pub fn depth_weighted_squares(&self) -> BigUint {
        let mut acc = coefficient::SquareSum::default();
        for (s, c) in &self.entries {
            acc.add_square(c, u64::from(s.depth()));
        }
        acc.finish()
    }

    pub fn to_big(&self) -> StateVector<BigUint> {
        StateVector {
            entries: self.entries.iter().map(|(s, c)| (*s, c.to_biguint())).collect(),
        }
    }
}

impl<C: Coefficient> Default for StateVector<C> {
    fn default() -> Self {
        Self::new()
    }
}

impl<C: Coefficient> FromIterator<(ProductState, C)> for StateVector<C> {
    fn from_iter<I: IntoIterator<Item = (ProductState, C)>>(iter: I) -> Self {
        let mut v = Self::new();
        for (s, c) in iter {
            v.add(s, &c).expect("coefficient overflow while collecting");
        }
        v
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Observable {
    Z,
    Y,
}

impl fmt::Display for Observable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Observable::Z => "z",
            Observable::Y => "y",
        })
    }
}

/// `values[i]` is the term for `N = i + 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactSeries {
    pub family: FamilySpec,
    pub observable: Observable,
    pub values: Vec<BigUint>,
}

impl ExactSeries {
    pub fn new(family: FamilySpec, observable: Observable, values: Vec<BigUint>) -> Self {
        ExactSeries {
            family,
            observable,
            values,
        }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Term of index `n` (1-based).
    pub fn get(&self, n: usize) -> Option<&BigUint> {
        n.checked_sub(1).and_then(|i| self.values.get(i))
    }

    pub fn max_n(&self) -> usize {
        self.values.len()
    }

    /// Keeps the terms with `N <= n_max`.
    pub fn truncated(&self, n_max: usize) -> Self {
        ExactSeries {
            family: self.family.clone(),
            observable: self.observable,
            values: self.values.iter().take(n_max).cloned().collect(),
        }
    }
}
