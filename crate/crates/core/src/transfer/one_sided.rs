//! Single-stack transfer for rigid families, where the two sides of the line
//! decouple and every vertex carries exactly `q - 1` half-edges per side.

use num_bigint::BigUint;
use rustc_hash::FxHashMap;

use super::coefficient::{Coefficient, Overflow, SquareSum};
use super::engine::side_outcomes;
use crate::arch_state::EncodedState;
use crate::error::TransferError;
use crate::family::Color;

type StackVector<C> = FxHashMap<EncodedState, C>;

enum StepFailure {
    Transfer(TransferError),
    Overflow,
}

fn step<C: Coefficient>(
    v: &StackVector<C>,
    half_edges: u32,
    color: Color,
    max_depth: Option<usize>,
) -> Result<StackVector<C>, StepFailure> {
    let mut out = StackVector::<C>::with_capacity_and_hasher(v.len() * 2, Default::default());
    let mut buf = Vec::new();
    for (s, c) in v {
        side_outcomes(*s, half_edges, color, &mut buf).map_err(StepFailure::Transfer)?;
        for t in &buf {
            if max_depth.is_some_and(|d| t.depth() as usize > d) {
                continue;
            }
            match out.get_mut(t) {
                Some(acc) => acc
                    .add_assign_checked(c)
                    .map_err(|Overflow| StepFailure::Overflow)?,
                None => {
                    out.insert(*t, c.clone());
                }
            }
        }
    }
    Ok(out)
}

fn vacuum<C: Coefficient>() -> StackVector<C> {
    let mut v = StackVector::default();
    v.insert(EncodedState::EMPTY, C::one());
    v
}

fn to_big(v: &StackVector<u128>) -> StackVector<BigUint> {
    v.iter().map(|(s, c)| (*s, BigUint::from(*c))).collect()
}

/// Values after the first `n` vertices of a one-sided rigid system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OneSidedStep {
    pub n: usize,
    /// `c_n`, as the sum of squared half coefficients.
    pub c: BigUint,
    /// `g_n`: configurations weighted by the arches over the middle.
    pub g: BigUint,
    pub states: usize,
}

enum Stack {
    Fast(StackVector<u128>),
    Big(StackVector<BigUint>),
}

pub struct OneSidedPropagator {
    half_edges: u32,
    vector: Stack,
    position: usize,
}

impl OneSidedPropagator {
    pub fn new(q: u32) -> Result<Self, TransferError> {
        if q < 2 {
            return Err(TransferError::InvalidArgument(format!(
                "q must be at least 2, got {q}"
            )));
        }
        Ok(OneSidedPropagator {
            half_edges: q - 1,
            vector: Stack::Fast(vacuum()),
            position: 0,
        })
    }

    pub fn advance(&mut self) -> Result<OneSidedStep, TransferError> {
        let color = Color::at_position(self.position);
        let next = match &self.vector {
            Stack::Fast(v) => match step(v, self.half_edges, color, None) {
                Ok(out) => Stack::Fast(out),
                Err(StepFailure::Overflow) => Stack::Big(big_step(&to_big(v), self.half_edges, color, None)?),
                Err(StepFailure::Transfer(e)) => return Err(e),
            },
            Stack::Big(v) => Stack::Big(big_step(v, self.half_edges, color, None)?),
        };
        self.vector = next;
        self.position += 1;
        let (c, g, states) = match &self.vector {
            Stack::Fast(v) => harvest(v),
            Stack::Big(v) => harvest(v),
        };
        Ok(OneSidedStep {
            n: self.position,
            c,
            g,
            states,
        })
    }
}

fn big_step(
    v: &StackVector<BigUint>,
    half_edges: u32,
    color: Color,
    max_depth: Option<usize>,
) -> Result<StackVector<BigUint>, TransferError> {
    match step(v, half_edges, color, max_depth) {
        Ok(out) => Ok(out),
        Err(StepFailure::Transfer(e)) => Err(e),
        Err(StepFailure::Overflow) => unreachable!("overflow with big-integer coefficients"),
    }
}

fn harvest<C: Coefficient>(v: &StackVector<C>) -> (BigUint, BigUint, usize) {
    let mut c_sum = SquareSum::default();
    let mut g_sum = SquareSum::default();
    for (s, c) in v {
        c_sum.add_square(c, 1);
        g_sum.add_square(c, u64::from(s.depth()));
    }
    (c_sum.finish(), g_sum.finish(), v.len())
}

/// `(c_N, g_N)` for one side of a rigid `2q`-regular family. `c_N` is the
/// empty-stack coefficient after all `2N` vertices; `g_N` comes from the
/// middle states after `N` vertices.
pub fn one_sided_counts(q: u32, n: usize) -> Result<(BigUint, BigUint), TransferError> {
    if n == 0 {
        return Err(TransferError::InvalidArgument("N must be at least 1".into()));
    }
    let mut p = OneSidedPropagator::new(q)?;
    let mut g = BigUint::default();
    for _ in 0..n {
        g = p.advance()?.g;
    }

    let per_vertex = (q - 1) as usize;
    let mut v: StackVector<BigUint> = vacuum();
    for i in 0..2 * n {
        let remaining = (2 * n - i - 1) * per_vertex;
        v = big_step(&v, q - 1, Color::at_position(i), Some(remaining))?;
    }
    let c = v.get(&EncodedState::EMPTY).cloned().unwrap_or_default();
    Ok((c, g))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pair(c: u64, g: u64) -> (BigUint, BigUint) {
        (BigUint::from(c), BigUint::from(g))
    }

    #[test]
    fn small_cases() {
        assert_eq!(one_sided_counts(2, 1).unwrap(), pair(1, 1));
        assert_eq!(one_sided_counts(2, 2).unwrap(), pair(2, 2));
        assert_eq!(one_sided_counts(2, 3).unwrap(), pair(5, 7));
        assert_eq!(one_sided_counts(3, 1).unwrap(), pair(1, 2));
        assert_eq!(one_sided_counts(3, 3).unwrap(), pair(12, 32));
    }

    #[test]
    fn squared_half_matches_full_count() {
        for q in 2..=4 {
            let mut p = OneSidedPropagator::new(q).unwrap();
            for n in 1..=8 {
                let step = p.advance().unwrap();
                assert_eq!(step.c, one_sided_counts(q, n).unwrap().0, "q={q} n={n}");
            }
        }
    }

    #[test]
    fn rejects_bad_arguments() {
        assert!(one_sided_counts(1, 3).is_err());
        assert!(one_sided_counts(2, 0).is_err());
    }
}
