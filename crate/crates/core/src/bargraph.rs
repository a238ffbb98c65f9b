//! Words, their bargraph drawing, and the per-word cell statistics.
//!
//! A word u_1 u_2 ... u_n over the positive integers is drawn as a bargraph:
//! column i is a stack of u_i unit cells. Cells are colored like a
//! chessboard with the southwest cell black, so the bottom cell of column i
//! is black when i is odd and white when i is even, and colors alternate up
//! each column. Positions and heights are 1-indexed throughout; the parity
//! of the position decides which color a column favors, so an off-by-one in
//! the index silently swaps black and white.

use num_bigint::BigUint;

use crate::error::{Error, Result};

/// Black cells in a single column of height `height` at 1-indexed
/// `position`: ceil(h/2) at odd positions, floor(h/2) at even ones.
pub fn black_at(position: u64, height: u64) -> Result<u64> {
    if position == 0 || height == 0 {
        return Err(Error::ZeroPositionOrHeight { position, height });
    }
    Ok(column_black(position, height))
}

/// White cells in a single column; mirrors [`black_at`] with the parities
/// swapped, so black_at(i, h) + white_at(i, h) = h.
pub fn white_at(position: u64, height: u64) -> Result<u64> {
    if position == 0 || height == 0 {
        return Err(Error::ZeroPositionOrHeight { position, height });
    }
    Ok(column_white(position, height))
}

/// `black_at` without the zero checks, for enumeration inner loops.
pub(crate) fn column_black(position: u64, height: u64) -> u64 {
    if position % 2 == 1 {
        height.div_ceil(2)
    } else {
        height / 2
    }
}

pub(crate) fn column_white(position: u64, height: u64) -> u64 {
    if position % 2 == 1 {
        height / 2
    } else {
        height.div_ceil(2)
    }
}

/// Black and white cells of a run of letters whose first letter sits at
/// 1-indexed position `offset + 1`. Enumeration kernels use this to combine
/// counts of word fragments.
pub(crate) fn fragment_cells(letters: &[u32], offset: usize) -> (u64, u64) {
    let mut black = 0u64;
    let mut white = 0u64;
    for (j, &h) in letters.iter().enumerate() {
        let pos = (offset + j + 1) as u64;
        black += column_black(pos, h as u64);
        white += column_white(pos, h as u64);
    }
    (black, white)
}

/// Total black and white cells of a word's bargraph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellCount {
    pub black: BigUint,
    pub white: BigUint,
}

/// A word over the positive integers. The empty word is valid and counts
/// as balanced (zero cells of each color).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Word {
    letters: Vec<u32>,
}

impl Word {
    /// Validates that every letter is at least 1.
    pub fn new(letters: Vec<u32>) -> Result<Self> {
        for (j, &h) in letters.iter().enumerate() {
            if h == 0 {
                return Err(Error::InvalidLetter { position: j + 1 });
            }
        }
        Ok(Word { letters })
    }

    pub fn letters(&self) -> &[u32] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// True when every letter is at most k.
    pub fn is_kary(&self, k: u32) -> bool {
        self.letters.iter().all(|&h| h <= k)
    }

    /// True when the letters are a rearrangement of 1..=n.
    pub fn is_permutation(&self) -> bool {
        let n = self.letters.len();
        let mut seen = vec![false; n];
        for &h in &self.letters {
            let h = h as usize;
            if h > n || seen[h - 1] {
                return false;
            }
            seen[h - 1] = true;
        }
        true
    }

    pub fn cell_count(&self) -> CellCount {
        let mut black = 0u128;
        let mut white = 0u128;
        for (j, &h) in self.letters.iter().enumerate() {
            let pos = (j + 1) as u64;
            black += column_black(pos, h as u64) as u128;
            white += column_white(pos, h as u64) as u128;
        }
        CellCount {
            black: BigUint::from(black),
            white: BigUint::from(white),
        }
    }

    /// A word is balanced when its bargraph has as many black cells as
    /// white ones.
    pub fn is_balanced(&self) -> bool {
        let c = self.cell_count();
        c.black == c.white
    }

    /// Number of positions i with i - u_i odd. Only defined for
    /// permutations; always even there, since odd values at even positions
    /// and even values at odd positions pair up.
    pub fn odd_displacements(&self) -> Result<u64> {
        if !self.is_permutation() {
            return Err(Error::NotAPermutation {
                len: self.letters.len(),
            });
        }
        let mut count = 0u64;
        for (j, &h) in self.letters.iter().enumerate() {
            let pos = (j + 1) as u64;
            if (pos + h as u64) % 2 == 1 {
                count += 1;
            }
        }
        Ok(count)
    }
}
