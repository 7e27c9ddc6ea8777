//! Mirroring strategies and their exhaustive validation.
//!
//! The strategy player takes an immediate win whenever one exists, otherwise
//! restores the symmetry of the marked set across a fixed axis. The
//! validator plays every adversary reply against it and reports either that
//! the strategy wins every line or the shortest losing line, breaking ties
//! by the lexicographically least sequence of cell indices. Lines where the
//! adversary actually wins are preferred over lines that stop because no
//! cell restores symmetry.

use std::collections::HashMap;
use std::fmt;
use std::rc::Rc;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::bits::Bits;
use crate::board::{Board, Cell, RuleSet};
use crate::error::{Error, Result};
use crate::rules::Geometry;

pub const DEFAULT_STATE_BUDGET: u64 = 10_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Axis {
    Origin,
    VerticalCenterLine,
    HorizontalCenterLine,
    MainDiagonal,
    AntiDiagonal,
}

impl Axis {
    pub const ALL: [Axis; 5] =
        [Axis::Origin, Axis::VerticalCenterLine, Axis::HorizontalCenterLine, Axis::MainDiagonal, Axis::AntiDiagonal];

    pub fn name(self) -> &'static str {
        match self {
            Axis::Origin => "origin",
            Axis::VerticalCenterLine => "vline",
            Axis::HorizontalCenterLine => "hline",
            Axis::MainDiagonal => "diag",
            Axis::AntiDiagonal => "antidiag",
        }
    }
}

impl FromStr for Axis {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Axis::ALL.into_iter().find(|a| a.name() == s).ok_or_else(|| Error::Parse(format!("unknown axis '{s}'")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Role {
    First,
    Second,
}

impl Role {
    pub fn other(self) -> Role {
        match self {
            Role::First => Role::Second,
            Role::Second => Role::First,
        }
    }

    /// Player to move after `moves` moves.
    pub fn to_move(moves: u32) -> Role {
        if moves.is_multiple_of(2) {
            Role::First
        } else {
            Role::Second
        }
    }
}

impl FromStr for Role {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "first" => Ok(Role::First),
            "second" => Ok(Role::Second),
            _ => Err(Error::Parse(format!("unknown role '{s}'"))),
        }
    }
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Role::First => "first",
            Role::Second => "second",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Opening {
    None,
    Center,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct MirrorStrategy {
    pub axis: Axis,
    pub opening: Opening,
    pub role: Role,
}

impl MirrorStrategy {
    pub fn new(axis: Axis, opening: Opening, role: Role) -> Self {
        MirrorStrategy { axis, opening, role }
    }

    /// Rejects a centre opening except for the first player on odd boards.
    pub fn check(&self, n: usize) -> Result<()> {
        if self.opening == Opening::Center && (self.role != Role::First || n.is_multiple_of(2)) {
            return Err(Error::Domain("a centre opening needs the first player and odd n".into()));
        }
        Ok(())
    }
}

impl fmt::Display for MirrorStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.opening == Opening::Center {
            f.write_str("centre then ")?;
        }
        write!(f, "{} mirror as {}", self.axis.name(), self.role)
    }
}

pub fn mirror_image(n: usize, cell: Cell, axis: Axis) -> Cell {
    let Cell { row: r, col: c } = cell;
    let (row, col) = match axis {
        Axis::Origin => (n - 1 - r, n - 1 - c),
        Axis::VerticalCenterLine => (r, n - 1 - c),
        Axis::HorizontalCenterLine => (n - 1 - r, c),
        Axis::MainDiagonal => (c, r),
        Axis::AntiDiagonal => (n - 1 - c, n - 1 - r),
    };
    Cell { row, col }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StrategyMove {
    /// An immediate win.
    Win(Cell),
    /// The centre opening.
    Open(Cell),
    /// The cell restoring symmetry.
    Mirror(Cell),
    /// No winning move and no unique cell restores symmetry.
    Breakdown,
}

impl StrategyMove {
    pub fn cell(self) -> Option<Cell> {
        match self {
            StrategyMove::Win(c) | StrategyMove::Open(c) | StrategyMove::Mirror(c) => Some(c),
            StrategyMove::Breakdown => None,
        }
    }
}

/// Mirroring context for one game and board size, in marked space.
struct Mirror {
    n: usize,
    geo: Geometry<u64>,
    image: Vec<usize>,
    strategy: MirrorStrategy,
}

impl Mirror {
    fn new(game: RuleSet, n: usize, strategy: MirrorStrategy) -> Result<Self> {
        if !game.is_grid() {
            return Err(Error::Unsupported(format!("mirroring strategies on {game}")));
        }
        game.check_side(n)?;
        if n * n > 64 {
            return Err(Error::Unsupported(format!("strategy validation at n = {n}")));
        }
        strategy.check(n)?;
        let image = (0..n * n).map(|i| mirror_image(n, Cell::from_index(i, n), strategy.axis).index(n)).collect();
        Ok(Mirror { n, geo: Geometry::new(game, n), image, strategy })
    }

    fn reflect(&self, marks: u64) -> u64 {
        marks.ones().fold(0, |m, i| m | 1 << self.image[i])
    }

    fn next(&self, marks: u64) -> StrategyMove {
        let cell = |i: usize| Cell::from_index(i, self.n);
        if let Some(i) = self.geo.winning_moves(marks).lowest() {
            return StrategyMove::Win(cell(i));
        }
        if self.strategy.opening == Opening::Center && marks == 0 {
            return StrategyMove::Open(Cell::new(self.n / 2, self.n / 2));
        }
        let lonely = marks & !self.reflect(marks);
        if lonely.count() == 1 {
            let target = self.image[lonely.trailing_zeros() as usize];
            if marks >> target & 1 == 0 {
                return StrategyMove::Mirror(cell(target));
            }
        }
        StrategyMove::Breakdown
    }
}

/// The strategy's move in the position `b`, which must be the strategy
/// player's turn.
pub fn strategy_move(b: &Board, s: &MirrorStrategy) -> Result<StrategyMove> {
    let m = Mirror::new(b.game(), b.n(), *s)?;
    let marks = m.geo.marks_of(b.mask().to_u64());
    if m.geo.is_won(marks) {
        return Err(Error::Domain("the game is already over".into()));
    }
    if Role::to_move(marks.count()) != s.role {
        return Err(Error::Domain(format!("it is not the {} player's turn", s.role)));
    }
    Ok(m.next(marks))
}

/// A line of play from the opening position.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlayLine {
    pub game: RuleSet,
    pub n: usize,
    pub moves: Vec<[usize; 2]>,
    pub winner: Role,
    /// Positions in `moves` played by the strategy.
    pub strategy_moves: Vec<usize>,
    /// Whether the line ends where the strategy has no move.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub breakdown: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    WinsAll,
    Counterexample(PlayLine),
}

/// One strategy move seen during validation.
#[derive(Clone, Copy, Debug)]
pub struct StrategyStep {
    pub before: Board,
    pub after: Board,
    pub adversary: Option<Cell>,
    pub played: StrategyMove,
}

/// Continuation found below a position: the moves that follow and whether
/// it ends in a breakdown.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Loss {
    moves: Vec<usize>,
    breakdown: bool,
}

impl Loss {
    /// Lines ending in a real win come before breakdowns, then shorter
    /// lines. Candidates at one node differ in their first move, which the
    /// caller visits in ascending order, so ties keep the least line.
    fn rank(&self) -> (bool, usize) {
        (self.breakdown, self.moves.len())
    }
}

struct Validator<'a> {
    mirror: Mirror,
    memo: HashMap<u64, Option<Rc<Loss>>>,
    budget: u64,
    observer: Option<&'a mut dyn FnMut(&StrategyStep)>,
}

impl Validator<'_> {
    fn board(&self, marks: u64) -> Board {
        let g = &self.mirror.geo;
        Board::from_mask(g.game(), g.n(), g.marks_of(marks)).expect("marks inside universe")
    }

    /// Strategy player to move.
    fn strategy_turn(&mut self, marks: u64, adversary: Option<usize>) -> Result<Option<Rc<Loss>>> {
        if let Some(r) = self.memo.get(&marks) {
            return Ok(r.clone());
        }
        if self.memo.len() as u64 >= self.budget {
            return Err(Error::BudgetExceeded { budget: self.budget });
        }
        let played = self.mirror.next(marks);
        let result = match played.cell() {
            None => Some(Rc::new(Loss { moves: Vec::new(), breakdown: true })),
            Some(cell) => {
                let i = cell.index(self.mirror.n);
                let next = marks | 1 << i;
                if self.observer.is_some() {
                    let step = StrategyStep {
                        before: self.board(marks),
                        after: self.board(next),
                        adversary: adversary.map(|a| Cell::from_index(a, self.mirror.n)),
                        played,
                    };
                    if let Some(observe) = &mut self.observer {
                        observe(&step);
                    }
                }
                if self.mirror.geo.is_won(next) {
                    None
                } else {
                    self.adversary_turn(next)?.map(|rest| {
                        let mut moves = vec![i];
                        moves.extend(&rest.moves);
                        Rc::new(Loss { moves, breakdown: rest.breakdown })
                    })
                }
            }
        };
        self.memo.insert(marks, result.clone());
        Ok(result)
    }

    /// Adversary to move: the shortest, then least, losing line for the
    /// strategy, if any.
    fn adversary_turn(&mut self, marks: u64) -> Result<Option<Rc<Loss>>> {
        let mut best: Option<Loss> = None;
        for a in (self.mirror.geo.universe() & !marks).ones() {
            let next = marks | 1 << a;
            let line = if self.mirror.geo.is_won(next) {
                Some(Loss { moves: vec![a], breakdown: false })
            } else {
                self.strategy_turn(next, Some(a))?.map(|rest| {
                    let mut moves = vec![a];
                    moves.extend(&rest.moves);
                    Loss { moves, breakdown: rest.breakdown }
                })
            };
            if let Some(line) = line {
                if best.as_ref().is_none_or(|b| line.rank() < b.rank()) {
                    best = Some(line);
                }
            }
        }
        Ok(best.map(Rc::new))
    }
}

/// Plays the strategy against every adversary line.
pub fn validate_strategy(game: RuleSet, n: usize, s: &MirrorStrategy) -> Result<Verdict> {
    validate_with(game, n, s, DEFAULT_STATE_BUDGET, None)
}

/// As [`validate_strategy`], with a state budget and an observer called on
/// every strategy move of the explored tree.
pub fn validate_with(
    game: RuleSet,
    n: usize,
    s: &MirrorStrategy,
    budget: u64,
    observer: Option<&mut dyn FnMut(&StrategyStep)>,
) -> Result<Verdict> {
    let mirror = Mirror::new(game, n, *s)?;
    let mut v = Validator { mirror, memo: HashMap::new(), budget, observer };
    let found = match s.role {
        Role::First => v.strategy_turn(0, None)?,
        Role::Second => v.adversary_turn(0)?,
    };
    Ok(match found {
        None => Verdict::WinsAll,
        Some(loss) => {
            let first_strategy = usize::from(s.role == Role::Second);
            let moves: Vec<[usize; 2]> = loss.moves.iter().map(|&i| [i / n, i % n]).collect();
            let strategy_moves = (first_strategy..moves.len()).step_by(2).collect();
            Verdict::Counterexample(PlayLine {
                game,
                n,
                moves,
                winner: s.role.other(),
                strategy_moves,
                breakdown: loss.breakdown,
            })
        }
    })
}

/// Replays a line and checks that it is legal and ends at its first won
/// position, or at a strategy breakdown.
pub fn replay(line: &PlayLine) -> Result<Board> {
    let geo = Geometry::<u64>::new(line.game, line.n);
    let mut marks = 0u64;
    for (k, &[r, c]) in line.moves.iter().enumerate() {
        if geo.is_won(marks) {
            return Err(Error::Domain(format!("move {k} is played after the game ended")));
        }
        if r >= line.n || c >= line.n || marks >> (r * line.n + c) & 1 == 1 {
            return Err(Error::Domain(format!("move {k} at ({r},{c}) is not legal")));
        }
        marks |= 1 << (r * line.n + c);
    }
    let won = geo.is_won(marks);
    if won == line.breakdown {
        return Err(Error::Domain("line does not end where it claims to".into()));
    }
    if won && Role::to_move(marks.count() - 1) != line.winner {
        return Err(Error::Domain("winner does not match the last move".into()));
    }
    Ok(Board::from_mask(line.game, line.n, geo.marks_of(marks)).expect("marks inside universe"))
}
