//! Sliding-window token counts and closed-form bounds on penult sizes.

use std::fmt;
use std::str::FromStr;

use crate::board::Board;
use crate::constructions::snake_tokens;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum WindowKind {
    /// Five-cell plus in a 3×3 window.
    Cross,
    /// Twelve-cell plus in a 4×4 window.
    ThickCross,
    /// 5×5 window: central plus weighs 2, corners 0, the rest 1.
    WeightedCross,
}

impl WindowKind {
    pub const ALL: [WindowKind; 3] = [WindowKind::Cross, WindowKind::ThickCross, WindowKind::WeightedCross];

    pub fn side(self) -> usize {
        match self {
            WindowKind::Cross => 3,
            WindowKind::ThickCross => 4,
            WindowKind::WeightedCross => 5,
        }
    }

    /// Weight of cell `(r, c)` of the window.
    pub fn weight(self, r: usize, c: usize) -> u32 {
        let s = self.side();
        let edge = |x: usize| x == 0 || x == s - 1;
        match self {
            WindowKind::Cross => u32::from(r == 1 || c == 1),
            WindowKind::ThickCross => u32::from(!(edge(r) && edge(c))),
            WindowKind::WeightedCross => {
                if edge(r) && edge(c) {
                    0
                } else if (r == 2 && (1..=3).contains(&c)) || (c == 2 && (1..=3).contains(&r)) {
                    2
                } else {
                    1
                }
            }
        }
    }

    /// Least weighted token sum of the window anywhere inside a penult.
    pub fn penult_minimum(self) -> u32 {
        match self {
            WindowKind::Cross => 1,
            WindowKind::ThickCross => 3,
            WindowKind::WeightedCross => 7,
        }
    }

    pub fn total_weight(self) -> u32 {
        let s = self.side();
        (0..s).flat_map(|r| (0..s).map(move |c| self.weight(r, c))).sum()
    }
}

impl fmt::Display for WindowKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            WindowKind::Cross => "cross",
            WindowKind::ThickCross => "thick-cross",
            WindowKind::WeightedCross => "weighted-cross",
        })
    }
}

impl FromStr for WindowKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        WindowKind::ALL
            .into_iter()
            .find(|w| w.to_string() == s)
            .ok_or_else(|| Error::Parse(format!("unknown window kind {s:?}")))
    }
}

/// Weighted token sum of the window whose top-left corner is `(top, left)`.
pub fn window_sum(b: &Board, w: WindowKind, top: usize, left: usize) -> u32 {
    let (n, s) = (b.n(), w.side());
    let mut sum = 0;
    for r in 0..s {
        for c in 0..s {
            if b.is_occupied((top + r) * n + left + c) {
                sum += w.weight(r, c);
            }
        }
    }
    sum
}

/// Minimum weighted token sum over every placement of `w` inside the board.
pub fn window_min(b: &Board, w: WindowKind) -> Result<u32> {
    if !b.game().is_grid() {
        return Err(Error::Unsupported(format!("windows need a grid board, not {}", b.game())));
    }
    let (n, s) = (b.n(), w.side());
    if n < s {
        return Err(Error::Domain(format!("a {w} window needs n >= {s}, got {n}")));
    }
    let min = (0..=n - s).flat_map(|r| (0..=n - s).map(move |c| (r, c))).map(|(r, c)| window_sum(b, w, r, c)).min();
    Ok(min.unwrap_or(0))
}

/// Lower bound `ceil(7(n-4)^2 / 26)` on the size of a Tak penult; 0 when
/// `n <= 4`.
pub fn tak_lower_bound(n: usize) -> usize {
    let d = n.saturating_sub(4);
    (7 * d * d).div_ceil(26)
}

/// Largest dual-Tic penult size.
pub fn tic_dual_upper_bound(n: usize) -> usize {
    match n {
        0 | 1 => 0,
        2 => 4,
        3 => 6,
        4 => 9,
        _ => 4 * (n - 2),
    }
}

/// Size of the Snake penult, an upper bound on the smallest Tak penult.
pub fn snake_upper_bound(n: usize) -> Result<usize> {
    if n < 6 {
        return Err(Error::Domain(format!("the Snake bound needs n >= 6, got {n}")));
    }
    Ok(snake_tokens(n))
}

/// Largest Tak penult size, `n^2 - 2n`, attained by the Variable Diamond.
pub fn tak_upper_bound(n: usize) -> usize {
    (n * n).saturating_sub(2 * n)
}
