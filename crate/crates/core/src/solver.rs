//! Normal-play outcomes and mate-in-k depths.
//!
//! Positions of the grid games are keyed by their canonical mark set, so
//! isometric positions share one table entry. The auxiliary heap games are
//! small enough to key on their literal state.

use std::collections::HashMap;
use std::fmt;
use std::hash::Hash;

use serde::{Deserialize, Serialize};

use crate::bits::Bits;
use crate::board::{Board, RuleSet, SymTable};
use crate::error::{Error, Result};
use crate::rules::Geometry;

pub const DEFAULT_STATE_BUDGET: u64 = 50_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Outcome {
    /// The player to move wins.
    W,
    /// The player to move loses.
    L,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// A finite, loop-free impartial game under normal play.
pub trait ImpartialGame {
    type Position: Clone + Eq + Hash;

    fn options(&self, p: &Self::Position) -> Vec<Self::Position>;

    /// Table key; isometric positions may share one.
    fn key(&self, p: &Self::Position) -> Self::Position {
        p.clone()
    }

    /// Outcome known without expanding the options.
    fn shortcut(&self, _p: &Self::Position) -> Option<Outcome> {
        None
    }
}

/// Memoized outcome and mate-depth search over one game.
pub struct Solver<G: ImpartialGame> {
    game: G,
    outcomes: HashMap<G::Position, Outcome>,
    mates: HashMap<G::Position, u32>,
    budget: u64,
}

impl<G: ImpartialGame> Solver<G> {
    pub fn new(game: G) -> Self {
        Solver { game, outcomes: HashMap::new(), mates: HashMap::new(), budget: DEFAULT_STATE_BUDGET }
    }

    /// Most table entries before giving up.
    pub fn budget(mut self, states: u64) -> Self {
        self.budget = states;
        self
    }

    pub fn game(&self) -> &G {
        &self.game
    }

    /// Every position solved so far, by key.
    pub fn table(&self) -> &HashMap<G::Position, Outcome> {
        &self.outcomes
    }

    fn check_budget(&self) -> Result<()> {
        if (self.outcomes.len() + self.mates.len()) as u64 >= self.budget {
            return Err(Error::BudgetExceeded { budget: self.budget });
        }
        Ok(())
    }

    pub fn outcome(&mut self, p: &G::Position) -> Result<Outcome> {
        if let Some(o) = self.game.shortcut(p) {
            return Ok(o);
        }
        let key = self.game.key(p);
        if let Some(&o) = self.outcomes.get(&key) {
            return Ok(o);
        }
        self.check_budget()?;
        let mut result = Outcome::L;
        for o in self.game.options(p) {
            if self.outcome(&o)? == Outcome::L {
                result = Outcome::W;
                break;
            }
        }
        self.outcomes.insert(key, result);
        Ok(result)
    }

    /// Largest `k` such that the losing side can force `2k` further moves.
    pub fn mate_in(&mut self, p: &G::Position) -> Result<u32> {
        if self.outcome(p)? != Outcome::L {
            return Err(Error::NotLosing);
        }
        self.mate_l(p)
    }

    fn mate_l(&mut self, p: &G::Position) -> Result<u32> {
        let key = self.game.key(p);
        if let Some(&k) = self.mates.get(&key) {
            return Ok(k);
        }
        self.check_budget()?;
        let mut worst = 0;
        for o in self.game.options(p) {
            let mut best: Option<u32> = None;
            for r in self.game.options(&o) {
                if self.outcome(&r)? == Outcome::L {
                    let k = self.mate_l(&r)?;
                    best = Some(best.map_or(k, |b| b.min(k)));
                }
            }
            let best = best.expect("a W option has an L reply");
            worst = worst.max(best + 1);
        }
        self.mates.insert(key, worst);
        Ok(worst)
    }
}

/// A grid or dots-and-boxes game in marked space on a universe of at most
/// 64 elements.
#[derive(Clone)]
pub struct GridGame {
    geo: Geometry<u64>,
    sym: SymTable,
    canonical: bool,
    shortcuts: bool,
}

impl GridGame {
    pub fn new(game: RuleSet, n: usize) -> Result<Self> {
        game.check_side(n)?;
        let len = game.universe_len(n);
        if len > 64 {
            return Err(Error::Unsupported(format!("solving {game} at n = {n} ({len} elements)")));
        }
        Ok(GridGame { geo: Geometry::new(game, n), sym: SymTable::new(game, n), canonical: true, shortcuts: true })
    }

    /// Keys positions by their literal mark set.
    pub fn without_symmetry(mut self) -> Self {
        self.canonical = false;
        self
    }

    /// Expands every position, even one with an immediate win.
    pub fn without_shortcuts(mut self) -> Self {
        self.shortcuts = false;
        self
    }

    pub fn rule_set(&self) -> RuleSet {
        self.geo.game()
    }

    pub fn n(&self) -> usize {
        self.geo.n()
    }

    /// Marks of a board position.
    pub fn marks(&self, b: &Board) -> Result<u64> {
        if b.game() != self.rule_set() || b.n() != self.n() {
            return Err(Error::Mismatch(format!(
                "{} {} board for a {} {} game",
                b.game(),
                b.n(),
                self.rule_set(),
                self.n()
            )));
        }
        Ok(self.geo.marks_of(b.mask().to_u64()))
    }

    pub fn board(&self, marks: u64) -> Board {
        Board::from_mask(self.rule_set(), self.n(), self.geo.marks_of(marks)).expect("marks inside universe")
    }

    /// The opening position: empty, or full for the removal game.
    pub fn start(&self) -> u64 {
        0
    }

    pub fn is_won(&self, marks: u64) -> bool {
        self.geo.is_won(marks)
    }

    pub fn winning_moves(&self, marks: u64) -> u64 {
        self.geo.winning_moves(marks)
    }
}

impl ImpartialGame for GridGame {
    type Position = u64;

    fn options(&self, &marks: &u64) -> Vec<u64> {
        if self.geo.is_won(marks) {
            return Vec::new();
        }
        (self.geo.universe() & !marks).ones().map(|i| marks | 1 << i).collect()
    }

    fn key(&self, &marks: &u64) -> u64 {
        if self.canonical {
            self.sym.canonical(marks)
        } else {
            marks
        }
    }

    fn shortcut(&self, &marks: &u64) -> Option<Outcome> {
        if !self.shortcuts {
            None
        } else if self.geo.is_won(marks) {
            Some(Outcome::L)
        } else if self.geo.winning_moves(marks) != 0 {
            Some(Outcome::W)
        } else {
            None
        }
    }
}

/// Outcome of the opening position.
pub fn solve(game: RuleSet, n: usize) -> Result<Outcome> {
    let g = GridGame::new(game, n)?;
    let start = g.start();
    Solver::new(g).outcome(&start)
}

/// Outcome of every position reachable from the opening, keyed by canonical
/// marks and computed without shortcuts.
pub fn full_table(game: RuleSet, n: usize) -> Result<Vec<(u64, Outcome)>> {
    let g = GridGame::new(game, n)?.without_shortcuts();
    let len = game.universe_len(n);
    if len > 25 {
        return Err(Error::Unsupported(format!("full tables stop at 25 elements, {game} {n} has {len}")));
    }
    let mut solver = Solver::new(g.clone()).budget(u64::MAX);
    let mut table = std::collections::BTreeMap::new();
    for marks in 0..1u64 << len {
        let key = g.key(&marks);
        if table.contains_key(&key) {
            continue;
        }
        let reachable = !g.is_won(marks) || marks.ones().any(|i| !g.is_won(marks & !(1 << i)));
        if reachable {
            table.insert(key, solver.outcome(&marks)?);
        }
    }
    Ok(table.into_iter().collect())
}

/// Heap game with moves removing one, two or three tokens.
#[derive(Clone, Copy, Debug)]
pub struct Subtract123;

impl ImpartialGame for Subtract123 {
    type Position = u32;

    fn options(&self, &h: &u32) -> Vec<u32> {
        (1..=3.min(h)).map(|k| h - k).collect()
    }
}

/// Nim on any number of heaps; positions are kept sorted.
#[derive(Clone, Copy, Debug)]
pub struct Nim;

impl ImpartialGame for Nim {
    type Position = Vec<u32>;

    fn options(&self, heaps: &Vec<u32>) -> Vec<Vec<u32>> {
        let mut out = Vec::new();
        for (i, &h) in heaps.iter().enumerate() {
            if i > 0 && heaps[i - 1] == h {
                continue;
            }
            for smaller in 0..h {
                let mut next = heaps.clone();
                next[i] = smaller;
                next.sort_unstable();
                out.push(next);
            }
        }
        out
    }

    fn key(&self, heaps: &Vec<u32>) -> Vec<u32> {
        let mut k = heaps.clone();
        k.sort_unstable();
        k
    }
}

/// Two piles; remove any amount from one pile or the same from both.
#[derive(Clone, Copy, Debug)]
pub struct Wythoff;

impl ImpartialGame for Wythoff {
    type Position = (u32, u32);

    fn options(&self, &(a, b): &(u32, u32)) -> Vec<(u32, u32)> {
        let mut out: Vec<(u32, u32)> = (0..a).map(|x| (x, b)).chain((0..b).map(|y| (a, y))).collect();
        out.extend((1..=a.min(b)).map(|k| (a - k, b - k)));
        out
    }

    fn key(&self, &(a, b): &(u32, u32)) -> (u32, u32) {
        (a.min(b), a.max(b))
    }
}

/// The `k`-th Wythoff L-position `(floor(k phi), floor(k phi) + k)`, from
/// `floor(k phi) = (k + isqrt(5 k^2)) / 2`.
pub fn wythoff_l(k: u64) -> (u64, u64) {
    let a = (k + (5 * k * k).isqrt()) / 2;
    (a, a + k)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Plain negamax straight from the rules, no table and no shortcuts.
    fn negamax(g: &GridGame, marks: u64) -> Outcome {
        if g.is_won(marks) {
            return Outcome::L;
        }
        let len = g.rule_set().universe_len(g.n());
        for i in 0..len {
            if marks >> i & 1 == 0 && negamax(g, marks | 1 << i) == Outcome::L {
                return Outcome::W;
            }
        }
        Outcome::L
    }

    #[test]
    fn small_tak() {
        assert_eq!(solve(RuleSet::Tak, 1).unwrap(), Outcome::W);
        assert_eq!(solve(RuleSet::Tak, 2).unwrap(), Outcome::L);
        assert_eq!(solve(RuleSet::Tak, 3).unwrap(), Outcome::W);
        assert_eq!(solve(RuleSet::Tak, 4).unwrap(), Outcome::L);
    }

    #[test]
    fn tic_parity() {
        for n in 1..=4 {
            let want = if n % 2 == 0 { Outcome::L } else { Outcome::W };
            assert_eq!(solve(RuleSet::Tic, n).unwrap(), want, "tic {n}");
        }
    }

    #[test]
    fn memoized_matches_negamax() {
        for game in [RuleSet::Tak, RuleSet::Tic, RuleSet::DualTic] {
            for n in 1..=3 {
                let g = GridGame::new(game, n).unwrap();
                assert_eq!(solve(game, n).unwrap(), negamax(&g, 0), "{game} {n}");
            }
        }
        let g = GridGame::new(RuleSet::DotsBoxes, 3).unwrap();
        assert_eq!(solve(RuleSet::DotsBoxes, 3).unwrap(), negamax(&g, 0));
    }

    #[test]
    fn memoized_matches_negamax_on_every_small_position() {
        for game in [RuleSet::Tak, RuleSet::Tic] {
            let g = GridGame::new(game, 3).unwrap();
            let mut s = Solver::new(g.clone());
            for marks in 0..1u64 << 9 {
                assert_eq!(s.outcome(&marks).unwrap(), negamax(&g, marks), "{game} {marks:b}");
            }
        }
    }

    #[test]
    fn full_tables_satisfy_the_outcome_recursion() {
        for (game, n) in [(RuleSet::Tak, 3), (RuleSet::Tak, 4), (RuleSet::Tic, 4)] {
            let g = GridGame::new(game, n).unwrap();
            let table: HashMap<u64, Outcome> = full_table(game, n).unwrap().into_iter().collect();
            for (&key, &o) in &table {
                let options = g.options(&key);
                let want = if options.iter().any(|p| table[&g.key(p)] == Outcome::L) { Outcome::W } else { Outcome::L };
                assert_eq!(o, want);
                assert_eq!(options.is_empty(), g.is_won(key));
            }
            assert_eq!(table[&0], solve(game, n).unwrap());
        }
    }

    #[test]
    fn budget_is_enforced() {
        let g = GridGame::new(RuleSet::Tak, 4).unwrap();
        assert!(matches!(Solver::new(g).budget(10).outcome(&0), Err(Error::BudgetExceeded { budget: 10 })));
    }

    #[test]
    fn subtract_mates() {
        let mut s = Solver::new(Subtract123);
        assert_eq!(s.mate_in(&12).unwrap(), 3);
        assert_eq!(s.mate_in(&0).unwrap(), 0);
        assert!(matches!(s.mate_in(&5), Err(Error::NotLosing)));
    }

    #[test]
    fn nim_and_wythoff_mates() {
        assert_eq!(Solver::new(Nim).mate_in(&vec![1, 1]).unwrap(), 1);
        assert_eq!(Solver::new(Nim).mate_in(&vec![2, 3, 1]).unwrap(), 3);
        assert_eq!(Solver::new(Wythoff).mate_in(&(3, 5)).unwrap(), 2);
        assert_eq!(Solver::new(Wythoff).mate_in(&(5, 3)).unwrap(), 2);
        assert!(Solver::new(Wythoff).mate_in(&(1, 1)).is_err());
    }

    #[test]
    fn wythoff_pairs() {
        assert_eq!(wythoff_l(0), (0, 0));
        assert_eq!(wythoff_l(1), (1, 2));
        assert_eq!(wythoff_l(2), (3, 5));
        assert_eq!(wythoff_l(3), (4, 7));
        // Beatty check against a float-free sieve: each positive integer is
        // used exactly once across both coordinates.
        let mut used = std::collections::HashSet::new();
        for k in 1..=200 {
            let (a, b) = wythoff_l(k);
            assert!(used.insert(a) && used.insert(b), "k = {k}");
        }
        assert!((1..=300).all(|x| used.contains(&x)));
    }
}
