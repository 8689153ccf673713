//! Exhaustive depth-first enumeration of arch configurations, used as an
//! oracle for the transfer engine. It works on plain color stacks and lets
//! every half-edge independently open or close, in any order, so the
//! closings-before-openings rule of the engine is checked rather than
//! assumed.

use num_bigint::BigUint;

use crate::error::TransferError;
use crate::family::{Color, FamilySpec};

struct Search {
    /// `(up, down, weight)` per allowed vertex type.
    choices: Vec<(u32, u32, u64)>,
    vertices: usize,
    max_half_edges: usize,
    above: Vec<Color>,
    below: Vec<Color>,
    total: u128,
}

impl Search {
    /// Whether the open arches of color `c` can still all be closed: they
    /// end at vertices of the other color, each offering at most
    /// `max_half_edges` endings, among vertices `from..`.
    fn closable(&self, c: Color, from: usize) -> bool {
        let open = self.above.iter().chain(&self.below).filter(|&&x| x == c).count();
        let left = self.vertices - from;
        // black vertices sit at even positions
        let black = (left + 1 - from % 2) / 2;
        let closers = match c {
            Color::Black => left - black,
            Color::White => black,
        };
        open <= closers * self.max_half_edges
    }

    fn vertex(&mut self, index: usize, weight: u128) {
        if !(self.closable(Color::Black, index) && self.closable(Color::White, index)) {
            return;
        }
        if index == self.vertices {
            if self.above.is_empty() && self.below.is_empty() {
                self.total += weight;
            }
            return;
        }
        let color = if index.is_multiple_of(2) {
            Color::Black
        } else {
            Color::White
        };
        for k in 0..self.choices.len() {
            let (up, down, w) = self.choices[k];
            self.half_edges(index, color, up, down, weight * u128::from(w));
        }
    }

    /// Places the remaining `up` half-edges above, then `down` below.
    fn half_edges(&mut self, index: usize, color: Color, up: u32, down: u32, weight: u128) {
        if up == 0 && down == 0 {
            self.vertex(index + 1, weight);
            return;
        }
        let above = up > 0;
        let (rest_up, rest_down) = if above { (up - 1, down) } else { (0, down - 1) };

        // open a new arch of this vertex's color
        self.stack(above).push(color);
        if self.closable(color, index + 1) {
            self.half_edges(index, color, rest_up, rest_down, weight);
        }
        self.stack(above).pop();

        // or end the innermost open arch here, if it starts at the other color
        if self.stack(above).last() == Some(&color.opposite()) {
            let c = self.stack(above).pop().expect("checked non-empty");
            self.half_edges(index, color, rest_up, rest_down, weight);
            self.stack(above).push(c);
        }
    }

    fn stack(&mut self, above: bool) -> &mut Vec<Color> {
        if above {
            &mut self.above
        } else {
            &mut self.below
        }
    }
}

/// Weighted number of configurations of size `2N`, for `N` in `1..=5`.
pub fn brute_force_z(family: &FamilySpec, n: usize) -> Result<BigUint, TransferError> {
    if !(1..=5).contains(&n) {
        return Err(TransferError::InvalidArgument(format!(
            "brute force supports 1 <= N <= 5, got {n}"
        )));
    }
    let mut choices = Vec::new();
    for v in family.valencies().iter().filter(|v| v.weight > 0) {
        let free = v.p - 2;
        if family.is_rigid() {
            choices.push((free / 2, free / 2, v.weight));
        } else {
            for up in 0..=free {
                choices.push((up, free - up, v.weight));
            }
        }
    }
    let mut search = Search {
        choices,
        vertices: 2 * n,
        max_half_edges: family.max_valency().saturating_sub(2) as usize,
        above: Vec::new(),
        below: Vec::new(),
        total: 0,
    };
    search.vertex(0, 1);
    Ok(BigUint::from(search.total))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bf(f: &str, n: usize) -> u64 {
        let z = brute_force_z(&f.parse().unwrap(), n).unwrap();
        u64::try_from(z).unwrap()
    }

    #[test]
    fn small_values() {
        assert_eq!(bf("regular:3", 1), 2);
        assert_eq!(bf("mixed:2=1,3=1", 1), 3);
        assert_eq!(bf("rigid:4", 1), 1);
        assert_eq!(bf("rigid:4", 2), 4);
        assert_eq!(bf("regular:3", 3), 40);
    }

    #[test]
    fn p_regular_n1_is_p_minus_1() {
        for p in 2u32..=8 {
            assert_eq!(bf(&format!("regular:{p}"), 1), u64::from(p - 1));
        }
    }

    #[test]
    fn n_out_of_range() {
        let f: FamilySpec = "regular:3".parse().unwrap();
        assert!(brute_force_z(&f, 0).is_err());
        assert!(brute_force_z(&f, 6).is_err());
    }
}
