//! Integer encoding of open-arch color stacks.
//!
//! A stack of `s` open arches with colors `a_1..a_s` (1 = black, 0 = white)
//! is stored as `2^s + sum a_j 2^(j-1)`. Bit 0 holds the most recently
//! opened arch, so pushing and popping are single shifts, and the leading
//! one bit marks the depth.

use std::fmt;

use crate::error::TransferError;
use crate::family::Color;

/// Deepest stack representable in the 64-bit encoding.
pub const MAX_DEPTH: u32 = 62;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EncodedState(u64);

impl EncodedState {
    pub const EMPTY: EncodedState = EncodedState(1);

    /// Wraps a raw code; `None` for 0 or for a code deeper than `MAX_DEPTH`.
    pub fn from_code(code: u64) -> Option<Self> {
        (code != 0 && 63 - code.leading_zeros() <= MAX_DEPTH).then_some(EncodedState(code))
    }

    pub fn code(self) -> u64 {
        self.0
    }

    /// Number of open arches, `floor(log2 code)`.
    pub fn depth(self) -> u32 {
        63 - self.0.leading_zeros()
    }

    pub fn is_empty(self) -> bool {
        self.0 == 1
    }

    /// Color of the most recently opened arch.
    pub fn top(self) -> Option<Color> {
        if self.is_empty() {
            None
        } else if self.0 & 1 == 1 {
            Some(Color::Black)
        } else {
            Some(Color::White)
        }
    }

    pub fn push(self, color: Color) -> Result<Self, TransferError> {
        if self.depth() >= MAX_DEPTH {
            return Err(TransferError::Capacity { depth: MAX_DEPTH });
        }
        let bit = u64::from(color == Color::Black);
        Ok(EncodedState((self.0 << 1) | bit))
    }

    /// Closes the innermost arch if it has color `color`.
    pub fn pop_expect(self, color: Color) -> Option<Self> {
        (self.top()? == color).then_some(EncodedState(self.0 >> 1))
    }

    /// Builds a stack from colors listed oldest first.
    pub fn from_colors(colors: &[Color]) -> Result<Self, TransferError> {
        colors.iter().try_fold(EncodedState::EMPTY, |st, &c| st.push(c))
    }

    /// Colors of the open arches, oldest first.
    pub fn colors(self) -> Vec<Color> {
        let d = self.depth();
        (0..d)
            .rev()
            .map(|j| {
                if (self.0 >> j) & 1 == 1 {
                    Color::Black
                } else {
                    Color::White
                }
            })
            .collect()
    }
}

impl Default for EncodedState {
    fn default() -> Self {
        EncodedState::EMPTY
    }
}

impl fmt::Display for EncodedState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Upper and lower stacks at one cut of the line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct ProductState {
    pub up: EncodedState,
    pub down: EncodedState,
}

impl ProductState {
    pub const VACUUM: ProductState = ProductState {
        up: EncodedState::EMPTY,
        down: EncodedState::EMPTY,
    };

    pub fn new(up: EncodedState, down: EncodedState) -> Self {
        ProductState { up, down }
    }

    /// Convenience constructor from raw codes; panics on an invalid code.
    pub fn from_codes(up: u64, down: u64) -> Self {
        ProductState {
            up: EncodedState::from_code(up).expect("invalid upper code"),
            down: EncodedState::from_code(down).expect("invalid lower code"),
        }
    }

    /// Total number of arches crossing this cut.
    pub fn depth(self) -> u32 {
        self.up.depth() + self.down.depth()
    }

    pub fn mirrored(self) -> Self {
        ProductState {
            up: self.down,
            down: self.up,
        }
    }
}

impl fmt::Display for ProductState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "|{},{}>", self.up, self.down)
    }
}
