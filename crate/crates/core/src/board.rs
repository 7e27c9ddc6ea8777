//! Board representation and the symmetries of the square.
//!
//! Cells are indexed row-major from the top-left corner. Dots-and-boxes
//! boards index edges instead: every horizontal edge row-major, then every
//! vertical edge row-major.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::bits::{lex_cmp, Bits, Mask};
use crate::error::{Error, Result};

/// Largest supported side length for grid games.
pub const MAX_SIDE: usize = 18;
/// Largest supported dot count per side for dots-and-boxes.
pub const MAX_DOTS: usize = 14;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RuleSet {
    /// Placement game won by an orthogonal road between opposite edges.
    Tak,
    /// Placement game won by completing a row or column.
    Tic,
    /// Removal game won by emptying a row or column. Occupancy records the
    /// tokens still on the board.
    #[serde(rename = "dualtic")]
    DualTic,
    /// Abbreviated dots-and-boxes, won by completing any box.
    #[serde(rename = "db")]
    DotsBoxes,
}

impl RuleSet {
    pub const ALL: [RuleSet; 4] = [RuleSet::Tak, RuleSet::Tic, RuleSet::DualTic, RuleSet::DotsBoxes];

    pub fn name(self) -> &'static str {
        match self {
            RuleSet::Tak => "tak",
            RuleSet::Tic => "tic",
            RuleSet::DualTic => "dualtic",
            RuleSet::DotsBoxes => "db",
        }
    }

    pub fn is_grid(self) -> bool {
        self != RuleSet::DotsBoxes
    }

    /// Size of the move universe at side length `n`.
    pub fn universe_len(self, n: usize) -> usize {
        match self {
            RuleSet::DotsBoxes => 2 * n * n.saturating_sub(1),
            _ => n * n,
        }
    }

    pub fn check_side(self, n: usize) -> Result<()> {
        let ok = match self {
            RuleSet::DotsBoxes => (2..=MAX_DOTS).contains(&n),
            _ => (1..=MAX_SIDE).contains(&n),
        };
        if ok {
            Ok(())
        } else {
            Err(Error::SideOutOfRange { game: self, n })
        }
    }
}

impl fmt::Display for RuleSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for RuleSet {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        RuleSet::ALL.into_iter().find(|g| g.name() == s).ok_or_else(|| Error::Parse(format!("unknown game '{s}'")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cell {
    pub row: usize,
    pub col: usize,
}

impl Cell {
    pub fn new(row: usize, col: usize) -> Self {
        Cell { row, col }
    }

    pub fn index(self, n: usize) -> usize {
        self.row * n + self.col
    }

    pub fn from_index(index: usize, n: usize) -> Self {
        Cell { row: index / n, col: index % n }
    }
}

/// An edge of a dots-and-boxes board. `H { row, col }` joins dots
/// `(row, col)` and `(row, col + 1)`; `V { row, col }` joins `(row, col)`
/// and `(row + 1, col)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Edge {
    H { row: usize, col: usize },
    V { row: usize, col: usize },
}

impl Edge {
    pub fn index(self, dots: usize) -> usize {
        match self {
            Edge::H { row, col } => row * (dots - 1) + col,
            Edge::V { row, col } => dots * (dots - 1) + row * dots + col,
        }
    }

    pub fn from_index(index: usize, dots: usize) -> Self {
        let horizontal = dots * (dots - 1);
        if index < horizontal {
            Edge::H { row: index / (dots - 1), col: index % (dots - 1) }
        } else {
            let i = index - horizontal;
            Edge::V { row: i / dots, col: i % dots }
        }
    }

    pub fn is_valid(self, dots: usize) -> bool {
        match self {
            Edge::H { row, col } => row < dots && col + 1 < dots,
            Edge::V { row, col } => row + 1 < dots && col < dots,
        }
    }

    fn endpoints(self) -> [(usize, usize); 2] {
        match self {
            Edge::H { row, col } => [(row, col), (row, col + 1)],
            Edge::V { row, col } => [(row, col), (row + 1, col)],
        }
    }

    fn from_endpoints(a: (usize, usize), b: (usize, usize)) -> Self {
        let (a, b) = if a <= b { (a, b) } else { (b, a) };
        if a.0 == b.0 {
            Edge::H { row: a.0, col: a.1 }
        } else {
            Edge::V { row: a.0, col: a.1 }
        }
    }
}

/// Element of the dihedral group of the square: an optional column flip
/// followed by `quarter_turns` clockwise rotations `(r, c) -> (c, n-1-r)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Transform {
    quarter_turns: u8,
    flip: bool,
}

impl Transform {
    pub const IDENTITY: Transform = Transform { quarter_turns: 0, flip: false };

    pub const ALL: [Transform; 8] = [
        Transform { quarter_turns: 0, flip: false },
        Transform { quarter_turns: 1, flip: false },
        Transform { quarter_turns: 2, flip: false },
        Transform { quarter_turns: 3, flip: false },
        Transform { quarter_turns: 0, flip: true },
        Transform { quarter_turns: 1, flip: true },
        Transform { quarter_turns: 2, flip: true },
        Transform { quarter_turns: 3, flip: true },
    ];

    pub fn new(quarter_turns: u8, flip: bool) -> Self {
        Transform { quarter_turns: quarter_turns % 4, flip }
    }

    pub fn rotate_cw() -> Self {
        Transform::new(1, false)
    }

    /// Reflection in the main diagonal, `(r, c) -> (c, r)`.
    pub fn transpose() -> Self {
        Transform::new(3, true)
    }

    /// Image of point `(r, c)` on a side of `n` points.
    pub fn map(self, n: usize, (mut r, mut c): (usize, usize)) -> (usize, usize) {
        if self.flip {
            c = n - 1 - c;
        }
        for _ in 0..self.quarter_turns {
            (r, c) = (c, n - 1 - r);
        }
        (r, c)
    }

    /// `self` followed by `then`.
    pub fn then(self, then: Transform) -> Transform {
        // Probe points with distinct orbits pin the group element.
        let probe = [(0, 1), (1, 3)];
        *Transform::ALL
            .iter()
            .find(|t| probe.iter().all(|&p| t.map(5, p) == then.map(5, self.map(5, p))))
            .expect("dihedral group is closed")
    }

    pub fn inverse(self) -> Transform {
        *Transform::ALL.iter().find(|t| self.then(**t) == Transform::IDENTITY).expect("every element has an inverse")
    }

    /// Index permutation induced on the move universe of `game` at side `n`.
    pub fn permutation(self, game: RuleSet, n: usize) -> Vec<usize> {
        match game {
            RuleSet::DotsBoxes => (0..game.universe_len(n))
                .map(|i| {
                    let [a, b] = Edge::from_index(i, n).endpoints();
                    Edge::from_endpoints(self.map(n, a), self.map(n, b)).index(n)
                })
                .collect(),
            _ => (0..n * n)
                .map(|i| {
                    let (r, c) = self.map(n, (i / n, i % n));
                    r * n + c
                })
                .collect(),
        }
    }
}

/// Precomputed permutations for all eight symmetries at one board size.
#[derive(Clone, Debug)]
pub struct Symmetries {
    perms: Vec<Vec<usize>>,
}

impl Symmetries {
    pub fn new(game: RuleSet, n: usize) -> Self {
        Symmetries { perms: Transform::ALL.iter().map(|t| t.permutation(game, n)).collect() }
    }

    pub fn apply<B: Bits>(&self, t: usize, mask: B) -> B {
        let perm = &self.perms[t];
        mask.ones().fold(B::ZERO, |m, i| m.with(perm[i]))
    }

    pub fn images<B: Bits + 'static>(&self, mask: B) -> impl Iterator<Item = B> + '_ {
        (0..self.perms.len()).map(move |t| self.apply(t, mask))
    }

    /// Lexicographically least image under [`lex_cmp`].
    pub fn canonical<B: Bits + 'static>(&self, mask: B) -> B {
        self.images(mask).min_by(|a, b| lex_cmp(*a, *b)).expect("eight images")
    }
}

/// Byte-indexed lookup tables for the eight symmetries of universes of at
/// most 64 elements.
#[derive(Clone)]
pub struct SymTable {
    /// `tables[t][k][byte]` is the image of `byte << 8k` under symmetry `t`.
    tables: Vec<Vec<[u64; 256]>>,
}

impl SymTable {
    pub fn new(game: RuleSet, n: usize) -> Self {
        let len = game.universe_len(n);
        assert!(len <= 64, "universe of {len} does not fit in a u64");
        let chunks = len.div_ceil(8);
        let tables = Transform::ALL
            .iter()
            .map(|t| {
                let perm = t.permutation(game, n);
                (0..chunks)
                    .map(|k| {
                        let mut table = [0u64; 256];
                        for (byte, slot) in table.iter_mut().enumerate() {
                            for bit in 0..8 {
                                let i = 8 * k + bit;
                                if byte >> bit & 1 == 1 && i < len {
                                    *slot |= 1 << perm[i];
                                }
                            }
                        }
                        table
                    })
                    .collect()
            })
            .collect();
        SymTable { tables }
    }

    #[inline]
    pub fn apply(&self, t: usize, mask: u64) -> u64 {
        self.tables[t].iter().enumerate().fold(0, |acc, (k, table)| acc | table[(mask >> (8 * k)) as usize & 0xff])
    }

    /// Same result as [`Symmetries::canonical`].
    #[inline]
    pub fn canonical(&self, mask: u64) -> u64 {
        (1..8).map(|t| self.apply(t, mask)).fold(mask, |best, m| if lex_cmp(m, best).is_lt() { m } else { best })
    }
}

/// A position: rule set, side length and occupancy over the move universe.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Board {
    game: RuleSet,
    n: u8,
    mask: Mask,
}

impl Board {
    pub fn empty(game: RuleSet, n: usize) -> Result<Board> {
        game.check_side(n)?;
        Ok(Board { game, n: n as u8, mask: Mask::ZERO })
    }

    pub fn full(game: RuleSet, n: usize) -> Result<Board> {
        let b = Board::empty(game, n)?;
        Ok(Board { mask: b.universe(), ..b })
    }

    pub fn from_mask<B: Bits + Into<Mask>>(game: RuleSet, n: usize, mask: B) -> Result<Board> {
        let b = Board::empty(game, n)?;
        let mask: Mask = mask.into();
        if let Some(i) = (mask & !b.universe()).lowest() {
            return Err(Error::OutsideUniverse { index: i, size: b.universe_len() });
        }
        Ok(Board { mask, ..b })
    }

    pub fn from_indices(game: RuleSet, n: usize, indices: impl IntoIterator<Item = usize>) -> Result<Board> {
        let mut b = Board::empty(game, n)?;
        for i in indices {
            b = b.with(i)?;
        }
        Ok(b)
    }

    pub fn from_cells(game: RuleSet, n: usize, cells: impl IntoIterator<Item = (usize, usize)>) -> Result<Board> {
        if !game.is_grid() {
            return Err(Error::Unsupported("cell coordinates on a dots-and-boxes board".into()));
        }
        let mut b = Board::empty(game, n)?;
        for (r, c) in cells {
            if r >= n || c >= n {
                return Err(Error::Parse(format!("cell ({r},{c}) is off a {n}x{n} board")));
            }
            b = b.with(r * n + c)?;
        }
        Ok(b)
    }

    pub fn from_edges(dots: usize, edges: impl IntoIterator<Item = Edge>) -> Result<Board> {
        let mut b = Board::empty(RuleSet::DotsBoxes, dots)?;
        for e in edges {
            if !e.is_valid(dots) {
                return Err(Error::Parse(format!("edge {e:?} is off a {dots}-dot board")));
            }
            b = b.with(e.index(dots))?;
        }
        Ok(b)
    }

    pub fn game(&self) -> RuleSet {
        self.game
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    pub fn mask(&self) -> Mask {
        self.mask
    }

    pub fn universe_len(&self) -> usize {
        self.game.universe_len(self.n())
    }

    pub fn universe(&self) -> Mask {
        Mask::low(self.universe_len())
    }

    pub fn is_occupied(&self, index: usize) -> bool {
        index < self.universe_len() && self.mask.get(index)
    }

    pub fn occupied(&self) -> impl Iterator<Item = usize> {
        self.mask.ones()
    }

    pub fn vacant(&self) -> impl Iterator<Item = usize> {
        (self.universe() & !self.mask).ones()
    }

    pub fn with(self, index: usize) -> Result<Board> {
        self.check_index(index)?;
        Ok(Board { mask: self.mask.with(index), ..self })
    }

    pub fn without(self, index: usize) -> Result<Board> {
        self.check_index(index)?;
        Ok(Board { mask: self.mask.without(index), ..self })
    }

    fn check_index(&self, index: usize) -> Result<()> {
        if index < self.universe_len() {
            Ok(())
        } else {
            Err(Error::OutsideUniverse { index, size: self.universe_len() })
        }
    }

    /// Number of tokens (occupied cells or drawn edges).
    pub fn token_count(&self) -> usize {
        self.mask.count() as usize
    }

    pub fn cells(&self) -> Vec<Cell> {
        self.occupied().map(|i| Cell::from_index(i, self.n())).collect()
    }

    pub fn edges(&self) -> Vec<Edge> {
        self.occupied().map(|i| Edge::from_index(i, self.n())).collect()
    }

    pub fn with_game(self, game: RuleSet) -> Result<Board> {
        if self.game.is_grid() != game.is_grid() {
            return Err(Error::Unsupported(format!("reinterpreting a {} board as {game}", self.game)));
        }
        Ok(Board { game, ..self })
    }

    pub fn apply_transform(&self, t: Transform) -> Board {
        let perm = t.permutation(self.game, self.n());
        let mask = self.mask.ones().fold(Mask::ZERO, |m, i| m.with(perm[i]));
        Board { mask, ..*self }
    }

    /// Least of the eight images in row-major lexicographic order.
    pub fn canonical_form(&self) -> Board {
        let mask = Symmetries::new(self.game, self.n()).canonical(self.mask);
        Board { mask, ..*self }
    }

    pub fn is_canonical(&self) -> bool {
        self.canonical_form() == *self
    }

    /// Swaps Tic and DualTic while inverting occupancy.
    pub fn complement(&self) -> Result<Board> {
        let game = match self.game {
            RuleSet::Tic => RuleSet::DualTic,
            RuleSet::DualTic => RuleSet::Tic,
            g => return Err(Error::NoDual(g)),
        };
        Ok(Board { game, n: self.n, mask: self.universe() & !self.mask })
    }

    /// Total order used for sorted output: token count, then mask.
    pub fn sort_key_cmp(&self, other: &Board) -> std::cmp::Ordering {
        self.token_count().cmp(&other.token_count()).then_with(|| lex_cmp(self.mask, other.mask))
    }
}

impl fmt::Debug for Board {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", crate::render::ascii(self))
    }
}

pub fn token_count(b: &Board) -> usize {
    b.token_count()
}

pub fn apply_transform(b: &Board, t: Transform) -> Board {
    b.apply_transform(t)
}

pub fn canonical_form(b: &Board) -> Board {
    b.canonical_form()
}

pub fn complement(b: &Board) -> Result<Board> {
    b.complement()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn arb_board() -> impl Strategy<Value = Board> {
        (
            prop_oneof![Just(RuleSet::Tak), Just(RuleSet::Tic), Just(RuleSet::DualTic), Just(RuleSet::DotsBoxes)],
            2usize..7,
        )
            .prop_flat_map(|(g, n)| {
                let len = g.universe_len(n);
                proptest::collection::vec(any::<bool>(), len).prop_map(move |bits| {
                    Board::from_indices(g, n, bits.iter().enumerate().filter(|(_, b)| **b).map(|(i, _)| i)).unwrap()
                })
            })
    }

    #[test]
    fn identity_leaves_board_alone() {
        let b = Board::from_cells(RuleSet::Tak, 4, [(0, 1), (2, 3)]).unwrap();
        assert_eq!(b.apply_transform(Transform::IDENTITY), b);
    }

    #[test]
    fn quarter_turn_convention() {
        let b = Board::from_cells(RuleSet::Tak, 3, [(0, 1)]).unwrap();
        let turned = b.apply_transform(Transform::rotate_cw());
        assert_eq!(turned, Board::from_cells(RuleSet::Tak, 3, [(1, 2)]).unwrap());
    }

    #[test]
    fn main_diagonal_is_transpose_invariant() {
        let b = Board::from_cells(RuleSet::Tak, 3, [(0, 0), (1, 1), (2, 2)]).unwrap();
        assert_eq!(b.apply_transform(Transform::transpose()), b);
    }

    #[test]
    fn diagonals_share_a_canonical_form() {
        let main = Board::from_cells(RuleSet::Tak, 3, [(0, 0), (1, 1), (2, 2)]).unwrap();
        let anti = Board::from_cells(RuleSet::Tak, 3, [(0, 2), (1, 1), (2, 0)]).unwrap();
        // Minimum over the 8 images by direct enumeration.
        let least = |b: &Board| {
            Transform::ALL.iter().map(|t| b.apply_transform(*t)).min_by(|x, y| lex_cmp(x.mask(), y.mask())).unwrap()
        };
        assert_eq!(least(&main), least(&anti));
        assert_eq!(main.canonical_form(), anti.canonical_form());
        // Cells (0,2),(1,1),(2,0): bit 0 is clear, the main diagonal sets it.
        assert_eq!(main.canonical_form(), anti);
    }

    #[test]
    fn group_is_closed_with_inverses() {
        for a in Transform::ALL {
            assert!(Transform::ALL.contains(&a.inverse()));
            assert_eq!(a.then(a.inverse()), Transform::IDENTITY);
            for b in Transform::ALL {
                let ab = a.then(b);
                for p in [(0, 0), (0, 3), (2, 1), (4, 4)] {
                    assert_eq!(ab.map(5, p), b.map(5, a.map(5, p)));
                }
            }
        }
    }

    #[test]
    fn dots_boxes_edges_permute() {
        let b = Board::from_edges(3, [Edge::H { row: 0, col: 0 }]).unwrap();
        let t = b.apply_transform(Transform::rotate_cw());
        // Dots (0,0)-(0,1) rotate to (0,2)-(1,2).
        assert_eq!(t.edges(), vec![Edge::V { row: 0, col: 2 }]);
    }

    #[test]
    fn complement_of_empty_tic_is_full_dualtic() {
        let b = Board::empty(RuleSet::Tic, 3).unwrap().complement().unwrap();
        assert_eq!(b.game(), RuleSet::DualTic);
        assert_eq!(b.token_count(), 9);
        assert!(Board::empty(RuleSet::Tak, 3).unwrap().complement().is_err());
        assert!(Board::empty(RuleSet::DotsBoxes, 3).unwrap().complement().is_err());
    }

    #[test]
    fn rejects_bits_outside_universe() {
        assert!(Board::from_mask(RuleSet::Tak, 2, 1u64 << 4).is_err());
        assert!(Board::empty(RuleSet::Tak, 19).is_err());
        assert!(Board::empty(RuleSet::DotsBoxes, 1).is_err());
    }

    proptest! {
        #[test]
        fn transforms_preserve_token_count(b in arb_board(), t in 0usize..8) {
            prop_assert_eq!(b.apply_transform(Transform::ALL[t]).token_count(), b.token_count());
        }

        #[test]
        fn canonical_form_is_orbit_invariant(b in arb_board(), t in 0usize..8) {
            let c = b.canonical_form();
            prop_assert_eq!(c.canonical_form(), c);
            prop_assert_eq!(b.apply_transform(Transform::ALL[t]).canonical_form(), c);
        }

        #[test]
        fn lookup_tables_agree_with_permutations(n in 1usize..=8, seed in any::<u64>(), g in 0usize..4) {
            let game = RuleSet::ALL[g];
            prop_assume!(game.check_side(n).is_ok() && game.universe_len(n) <= 64);
            let mask = seed & u64::low(game.universe_len(n));
            let (fast, slow) = (SymTable::new(game, n), Symmetries::new(game, n));
            for t in 0..8 {
                prop_assert_eq!(fast.apply(t, mask), slow.apply(t, mask));
            }
            prop_assert_eq!(fast.canonical(mask), slow.canonical(mask));
        }

        #[test]
        fn complement_is_an_involution(b in arb_board()) {
            if let Ok(c) = b.complement() {
                prop_assert_eq!(c.complement().unwrap(), b);
            }
        }
    }
}
