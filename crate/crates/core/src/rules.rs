//! Win predicates, move generation and terminal/ult/penult classification.
//!
//! Every rule set is evaluated in *marked* space: a set of claimed universe
//! elements whose win predicate is monotone. For Tak, Tic and dots-and-boxes
//! the marks are the tokens; for the dual of Tic the marks are the removed
//! tokens, so the position is won once some row or column is fully marked.

use serde::{Deserialize, Serialize};

use crate::bits::{Bits, Mask};
use crate::board::{Board, Edge, RuleSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Classification {
    Terminal,
    Ult,
    Penult,
    Other,
}

impl Classification {
    pub fn name(self) -> &'static str {
        match self {
            Classification::Terminal => "terminal",
            Classification::Ult => "ult",
            Classification::Penult => "penult",
            Classification::Other => "other",
        }
    }
}

impl std::str::FromStr for Classification {
    type Err = crate::Error;

    fn from_str(s: &str) -> crate::Result<Self> {
        [Classification::Terminal, Classification::Ult, Classification::Penult, Classification::Other]
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| crate::Error::Parse(format!("unknown classification '{s}'")))
    }
}

#[derive(Clone, Debug)]
enum Shape<B> {
    /// Road connection with 4-neighbour adjacency.
    Road { stride: u32, left: B, right: B, top: B, bottom: B, not_left: B, not_right: B },
    /// Won once any listed line is fully marked (Tic rows and columns, boxes).
    Lines(Vec<B>),
}

/// Precomputed masks for one rule set at one side length, in marked space.
#[derive(Clone, Debug)]
pub struct Geometry<B> {
    game: RuleSet,
    n: usize,
    universe: B,
    shape: Shape<B>,
}

impl<B: Bits> Geometry<B> {
    pub fn new(game: RuleSet, n: usize) -> Self {
        let len = game.universe_len(n);
        assert!(len <= B::CAPACITY, "universe of {len} does not fit the mask width");
        let universe = B::low(len);
        let cells =
            |f: &dyn Fn(usize, usize) -> bool| (0..n * n).filter(|&i| f(i / n, i % n)).fold(B::ZERO, |m, i| m.with(i));
        let shape = match game {
            RuleSet::Tak => Shape::Road {
                stride: n as u32,
                left: cells(&|_, c| c == 0),
                right: cells(&|_, c| c == n - 1),
                top: cells(&|r, _| r == 0),
                bottom: cells(&|r, _| r == n - 1),
                not_left: cells(&|_, c| c != 0),
                not_right: cells(&|_, c| c != n - 1),
            },
            RuleSet::Tic | RuleSet::DualTic => {
                let rows = (0..n).map(|k| cells(&|r, _| r == k));
                let cols = (0..n).map(|k| cells(&|_, c| c == k));
                Shape::Lines(rows.chain(cols).collect())
            }
            RuleSet::DotsBoxes => {
                let mut boxes = Vec::new();
                for r in 0..n - 1 {
                    for c in 0..n - 1 {
                        let sides = [
                            Edge::H { row: r, col: c },
                            Edge::H { row: r + 1, col: c },
                            Edge::V { row: r, col: c },
                            Edge::V { row: r, col: c + 1 },
                        ];
                        boxes.push(sides.iter().fold(B::ZERO, |m, e| m.with(e.index(n))));
                    }
                }
                Shape::Lines(boxes)
            }
        };
        Geometry { game, n, universe, shape }
    }

    pub fn game(&self) -> RuleSet {
        self.game
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn universe(&self) -> B {
        self.universe
    }

    /// Converts board occupancy to marks.
    pub fn marks_of(&self, occupancy: B) -> B {
        if self.game == RuleSet::DualTic {
            self.universe & !occupancy
        } else {
            occupancy
        }
    }

    #[inline]
    fn dilate(&self, m: B) -> B {
        match &self.shape {
            Shape::Road { stride, not_left, not_right, .. } => {
                (m | ((m << 1) & *not_left) | ((m >> 1) & *not_right) | (m << *stride) | (m >> *stride)) & self.universe
            }
            Shape::Lines(_) => m,
        }
    }

    /// Marked cells reachable from `seeds` through marked cells.
    #[inline]
    fn flood(&self, marks: B, seeds: B) -> B {
        let mut reach = seeds & marks;
        loop {
            let next = self.dilate(reach) & marks;
            if next == reach {
                return reach;
            }
            reach = next;
        }
    }

    pub fn is_won(&self, marks: B) -> bool {
        match &self.shape {
            Shape::Road { left, right, top, bottom, .. } => {
                !(self.flood(marks, *left) & *right).is_zero() || !(self.flood(marks, *top) & *bottom).is_zero()
            }
            Shape::Lines(lines) => lines.iter().any(|l| *l & marks == *l),
        }
    }

    /// Unmarked elements whose marking wins immediately. Only meaningful for
    /// positions that are not already won.
    pub fn winning_moves(&self, marks: B) -> B {
        let free = self.universe & !marks;
        match &self.shape {
            Shape::Road { left, right, top, bottom, .. } => {
                let touch = |edge: B| edge | self.dilate(self.flood(marks, edge));
                let horizontal = touch(*left) & touch(*right);
                let vertical = touch(*top) & touch(*bottom);
                (horizontal | vertical) & free
            }
            Shape::Lines(lines) => lines.iter().fold(B::ZERO, |acc, l| {
                let missing = *l & !marks;
                if missing.count() == 1 {
                    acc | missing
                } else {
                    acc
                }
            }),
        }
    }

    /// Classification of a marked set.
    pub fn classify_marks(&self, marks: B) -> Classification {
        if self.is_won(marks) {
            return Classification::Terminal;
        }
        if !self.winning_moves(marks).is_zero() {
            return Classification::Ult;
        }
        if self.every_option_is_ult(marks) {
            Classification::Penult
        } else {
            Classification::Other
        }
    }

    /// Assuming no single mark wins, whether every option has a winning reply.
    #[inline]
    pub fn every_option_is_ult(&self, marks: B) -> bool {
        (self.universe & !marks).ones().all(|i| !self.winning_moves(marks.with(i)).is_zero())
    }

    pub fn is_penult_marks(&self, marks: B) -> bool {
        self.classify_marks(marks) == Classification::Penult
    }
}

fn with_geometry<T>(
    b: &Board,
    small: impl FnOnce(&Geometry<u64>, u64) -> T,
    wide: impl FnOnce(&Geometry<Mask>, Mask) -> T,
) -> T {
    if b.universe_len() <= 64 {
        let g = Geometry::<u64>::new(b.game(), b.n());
        let marks = g.marks_of(b.mask().to_u64());
        small(&g, marks)
    } else {
        let g = Geometry::<Mask>::new(b.game(), b.n());
        let marks = g.marks_of(b.mask());
        wide(&g, marks)
    }
}

pub fn is_won(b: &Board) -> bool {
    with_geometry(b, |g, m| g.is_won(m), |g, m| g.is_won(m))
}

/// Options as universe indices, ascending: empty once the game is won,
/// otherwise the vacant indices (placement games) or the occupied ones
/// (the removal game).
pub fn legal_moves(b: &Board) -> Vec<usize> {
    if is_won(b) {
        return Vec::new();
    }
    if b.game() == RuleSet::DualTic {
        b.occupied().collect()
    } else {
        b.vacant().collect()
    }
}

/// Board after playing `index`, which must be one of [`legal_moves`].
pub fn play(b: &Board, index: usize) -> crate::Result<Board> {
    if b.game() == RuleSet::DualTic {
        b.without(index)
    } else {
        b.with(index)
    }
}

pub fn options(b: &Board) -> Vec<Board> {
    legal_moves(b).into_iter().map(|i| play(b, i).expect("legal move")).collect()
}

pub fn classify(b: &Board) -> Classification {
    with_geometry(b, |g, m| g.classify_marks(m), |g, m| g.classify_marks(m))
}

pub fn is_penult(b: &Board) -> bool {
    classify(b) == Classification::Penult
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn tak(n: usize, cells: &[(usize, usize)]) -> Board {
        Board::from_cells(RuleSet::Tak, n, cells.iter().copied()).unwrap()
    }

    /// Definition-level classification: recompute options and their options.
    fn classify_by_definition(b: &Board) -> Classification {
        let opts = options(b);
        if opts.is_empty() {
            return Classification::Terminal;
        }
        if opts.iter().any(|o| options(o).is_empty()) {
            return Classification::Ult;
        }
        let is_ult = |o: &Board| !options(o).is_empty() && options(o).iter().any(|p| options(p).is_empty());
        if opts.iter().all(is_ult) {
            Classification::Penult
        } else {
            Classification::Other
        }
    }

    #[test]
    fn diagonal_is_not_a_road() {
        assert!(!is_won(&tak(3, &[(0, 0), (1, 1), (2, 2)])));
    }

    #[test]
    fn a_full_column_is_a_road() {
        for n in 1..=9 {
            for c in 0..n {
                assert!(is_won(&tak(n, &(0..n).map(|r| (r, c)).collect::<Vec<_>>())));
            }
        }
    }

    #[test]
    fn figure_penults_are_not_won() {
        for b in fixtures::tak_4x4_examples().iter().chain(&fixtures::tak_3x3_penults()) {
            assert!(!is_won(b));
            assert_eq!(classify(b), Classification::Penult);
        }
    }

    #[test]
    fn move_lists() {
        let won = tak(2, &[(0, 0), (1, 0)]);
        assert!(legal_moves(&won).is_empty());
        assert_eq!(legal_moves(&Board::empty(RuleSet::Tak, 2).unwrap()).len(), 4);
        assert_eq!(legal_moves(&Board::empty(RuleSet::DotsBoxes, 3).unwrap()).len(), 12);
        let full = Board::full(RuleSet::DualTic, 3).unwrap();
        assert_eq!(legal_moves(&full), (0..9).collect::<Vec<_>>());
    }

    #[test]
    fn small_boards() {
        assert_eq!(classify(&Board::empty(RuleSet::Tak, 2).unwrap()), Classification::Penult);
        assert_eq!(classify(&Board::empty(RuleSet::Tak, 1).unwrap()), Classification::Ult);
        assert_eq!(classify(&tak(1, &[(0, 0)])), Classification::Terminal);
        assert_eq!(classify(&fixtures::min_5x5_penult()), Classification::Penult);
    }

    #[test]
    fn fast_classification_matches_definition() {
        for game in [RuleSet::Tak, RuleSet::Tic, RuleSet::DualTic] {
            for n in 1..=3 {
                for m in 0u64..(1 << (n * n)) {
                    let b = Board::from_mask(game, n, m).unwrap();
                    assert_eq!(classify(&b), classify_by_definition(&b), "{b:?}");
                }
            }
        }
        for m in 0u64..(1 << 12) {
            let b = Board::from_mask(RuleSet::DotsBoxes, 3, m).unwrap();
            assert_eq!(classify(&b), classify_by_definition(&b), "{b:?}");
        }
    }

    #[test]
    fn wide_and_narrow_masks_agree() {
        for game in [RuleSet::Tak, RuleSet::Tic, RuleSet::DotsBoxes] {
            let n = 4;
            let narrow = Geometry::<u64>::new(game, n);
            let wide = Geometry::<Mask>::new(game, n);
            let len = game.universe_len(n);
            let mut x = 0x9E37_79B9_7F4A_7C15u64;
            for _ in 0..2000 {
                x ^= x << 13;
                x ^= x >> 7;
                x ^= x << 17;
                let m = x & u64::low(len);
                assert_eq!(narrow.is_won(m), wide.is_won(Mask::from_u64(m)));
                assert_eq!(Mask::from_u64(narrow.winning_moves(m)), wide.winning_moves(Mask::from_u64(m)));
            }
        }
    }

    #[test]
    fn win_predicates_are_monotone_on_small_boards() {
        for game in RuleSet::ALL {
            let sides: &[usize] = if game == RuleSet::DotsBoxes { &[2, 3] } else { &[1, 2, 3] };
            for &n in sides {
                let g = Geometry::<u64>::new(game, n);
                let len = game.universe_len(n);
                for m in 0u64..(1 << len) {
                    if g.is_won(m) {
                        for i in 0..len {
                            assert!(g.is_won(m.with(i)));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn win_predicates_are_monotone_by_sampling() {
        let mut x = 0x2545_F491_4F6C_DD1Du64;
        let mut next = move || {
            x ^= x << 13;
            x ^= x >> 7;
            x ^= x << 17;
            x
        };
        for game in RuleSet::ALL {
            for n in 4..=6 {
                let g = Geometry::<u64>::new(game, n);
                let len = game.universe_len(n);
                for _ in 0..3000 {
                    let m = next() & next() & u64::low(len);
                    if g.is_won(m) {
                        let i = (next() % len as u64) as usize;
                        assert!(g.is_won(m.with(i)));
                    }
                }
            }
        }
    }

    #[test]
    fn penult_definition_holds_directly() {
        for n in 2..=4 {
            for m in 0u64..(1 << (n * n)) {
                let b = Board::from_mask(RuleSet::Tak, n, m).unwrap();
                if classify(&b) == Classification::Penult {
                    assert!(!is_won(&b));
                    for o in options(&b) {
                        assert!(!is_won(&o));
                        assert!(options(&o).iter().any(is_won));
                    }
                }
            }
        }
    }

    #[test]
    fn saturated_placement_boards_are_won() {
        for n in 1..=8 {
            assert!(is_won(&Board::full(RuleSet::Tak, n).unwrap()));
            assert!(is_won(&Board::full(RuleSet::Tic, n).unwrap()));
            assert!(is_won(&Board::empty(RuleSet::DualTic, n).unwrap()));
        }
    }

    #[test]
    fn tic_and_its_dual_classify_alike() {
        for n in 1..=4 {
            for m in 0u64..(1 << (n * n)) {
                let b = Board::from_mask(RuleSet::Tic, n, m).unwrap();
                assert_eq!(classify(&b), classify(&b.complement().unwrap()));
            }
        }
    }
}
