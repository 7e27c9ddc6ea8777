//! Generators for the named penult families.
//!
//! Each generator reproduces the published diagram at the depicted size and
//! extends it to other sizes by translating the repeating unit. Outputs keep
//! the diagram orientation; canonicalize before comparing against
//! enumerations.

use std::collections::BTreeSet;
use std::fmt;

use crate::board::{Board, RuleSet, MAX_SIDE};
use crate::error::{Error, Result};
use crate::fixtures;
use crate::rules::is_penult;

/// The three basic dual-Tic families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TicFamily {
    /// Two tokens per row and column on a wrapped diagonal band; `2n` tokens.
    A,
    /// A full first row and first column less their corner, plus the
    /// diagonal; `3(n-1)` tokens.
    B,
    /// Two complementary rectangles; `4(n-2)` tokens.
    C,
}

/// Every named family, with its parameters.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    Tic(TicFamily),
    /// Sporadic dual-Tic family with `4n - m` tokens, `9 <= m <= 13`.
    D(u8),
    /// `A_k` beside `B_{n-k}`, or `B_k` beside `C_{n-k}` when `b_with_c`.
    Compose {
        k: usize,
        b_with_c: bool,
    },
    VariableDiamond {
        k: usize,
        l: usize,
    },
    LSnake(u8),
    Snake,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Tic(t) => write!(f, "{t:?}"),
            Family::D(m) => write!(f, "D(m={m})"),
            Family::Compose { k, b_with_c: false } => write!(f, "A_{k} + B"),
            Family::Compose { k, b_with_c: true } => write!(f, "B_{k} + C"),
            Family::VariableDiamond { k, l } => write!(f, "VariableDiamond(k={k}, l={l})"),
            Family::LSnake(v) => write!(f, "LSnake({v})"),
            Family::Snake => write!(f, "Snake"),
        }
    }
}

impl Family {
    pub fn game(self) -> RuleSet {
        match self {
            Family::Tic(_) | Family::D(_) | Family::Compose { .. } => RuleSet::DualTic,
            _ => RuleSet::Tak,
        }
    }

    /// Whether the family is defined at side `n`.
    pub fn in_domain(self, n: usize) -> bool {
        if n > MAX_SIDE {
            return false;
        }
        match self {
            Family::Tic(TicFamily::A | TicFamily::B) => n >= 3,
            Family::Tic(TicFamily::C) => n >= 4,
            Family::D(9) => n >= 5,
            Family::D(10..=12) => n >= 6,
            Family::D(13) => n >= 7,
            Family::D(_) => false,
            Family::Compose { k, b_with_c: false } => k >= 3 && n >= k + 3,
            Family::Compose { k, b_with_c: true } => k >= 3 && n >= k + 4,
            Family::VariableDiamond { k, l } => n >= 4 && (2..=n - 2).contains(&k) && (2..=n - 2).contains(&l),
            Family::LSnake(v) => n >= 4 && (v == 1 || v == 2),
            Family::Snake => n >= 6,
        }
    }

    /// Closed-form token count.
    pub fn expected_tokens(self, n: usize) -> usize {
        match self {
            Family::Tic(TicFamily::A) => 2 * n,
            Family::Tic(TicFamily::B) => 3 * (n - 1),
            Family::Tic(TicFamily::C) => 4 * (n - 2),
            Family::D(m) => 4 * n - m as usize,
            Family::Compose { k, b_with_c: false } => 3 * n - k - 3,
            Family::Compose { k, b_with_c: true } => 4 * n - k - 11,
            Family::VariableDiamond { k, l } => n * n - 2 * n + 4 - k - l,
            Family::LSnake(v) => (n - 2) * (n - 2) + 1 + v as usize,
            Family::Snake => snake_tokens(n),
        }
    }

    pub fn build(self, n: usize) -> Result<Board> {
        if !self.in_domain(n) {
            return Err(Error::Domain(format!("{self} is not defined for n = {n}")));
        }
        match self {
            Family::Tic(t) => tic_dual_family(t, n),
            Family::D(m) => tic_dual_d(n, m),
            Family::Compose { k, b_with_c: false } => {
                tic_dual_compose(&tic_dual_family(TicFamily::A, k)?, &tic_dual_family(TicFamily::B, n - k)?)
            }
            Family::Compose { k, b_with_c: true } => {
                tic_dual_compose(&tic_dual_family(TicFamily::B, k)?, &tic_dual_family(TicFamily::C, n - k)?)
            }
            Family::VariableDiamond { k, l } => tak_variable_diamond(n, k, l),
            Family::LSnake(v) => tak_l_snake(n, v),
            Family::Snake => tak_snake(n),
        }
    }
}

/// Token count of the Snake diagram at side `n >= 6`, by residue mod 6.
pub fn snake_tokens(n: usize) -> usize {
    match n % 6 {
        1 | 4 => 2 * n + (n + 2) * (n - 4) / 3,
        2 => 2 * (n - 2) + n * (n - 2) / 3,
        3 => (n - 2) + (n - 1) + (n + 1) * (n - 3) / 3,
        5 => 2 * n + (n - 2) + (n + 2) * (n - 5) / 3,
        _ => 3 * (n - 2) + n * (n - 3) / 3,
    }
}

#[derive(Default)]
struct Cells(BTreeSet<(usize, usize)>);

impl Cells {
    fn put(&mut self, r: usize, c: usize) {
        self.0.insert((r, c));
    }

    fn rect(&mut self, rows: impl IntoIterator<Item = usize> + Clone, cols: impl IntoIterator<Item = usize> + Clone) {
        for r in rows {
            for c in cols.clone() {
                self.put(r, c);
            }
        }
    }

    fn board(self, game: RuleSet, n: usize) -> Result<Board> {
        Board::from_cells(game, n, self.0)
    }
}

pub fn tic_dual_family(f: TicFamily, n: usize) -> Result<Board> {
    if !Family::Tic(f).in_domain(n) {
        return Err(Error::Domain(format!("{f:?} is not defined for n = {n}")));
    }
    let mut s = Cells::default();
    match f {
        TicFamily::A => {
            for i in 0..n {
                s.put(i, i);
                s.put(i, (i + n - 1) % n);
            }
        }
        TicFamily::B => {
            s.rect([0], 1..n);
            for i in 1..n {
                s.put(i, 0);
                s.put(i, i);
            }
        }
        TicFamily::C => {
            s.rect(0..2, 2..n);
            s.rect(2..n, 0..2);
        }
    }
    s.board(RuleSet::DualTic, n)
}

pub fn tic_dual_d(n: usize, m: u8) -> Result<Board> {
    if !Family::D(m).in_domain(n) {
        return Err(Error::Domain(format!("D(n={n}, m={m}) is outside its domain")));
    }
    let mut s = Cells::default();
    match m {
        9 => {
            s.put(0, 0);
            s.put(0, 1);
            s.put(1, 0);
            s.rect(1..3, 3..n);
            s.rect(3..n, 1..3);
        }
        10 => {
            s.rect(0..2, 0..2);
            s.rect(1..3, 4..n);
            s.rect(3..n, 2..4);
        }
        11 => {
            for (r, c) in [(0, 0), (0, 1), (1, 0), (1, 2), (2, 1)] {
                s.put(r, c);
            }
            s.rect(2..4, 4..n);
            s.rect(4..n, 2..4);
        }
        12 => {
            s.rect(0..2, 0..2);
            s.rect(2..4, 4..n);
            s.rect(4..n, 2..4);
        }
        _ => {
            s.rect(0..2, 0..2);
            for (r, c) in [(2, 2), (2, 3), (3, 2)] {
                s.put(r, c);
            }
            s.rect(3..5, 5..n);
            s.rect(5..n, 3..5);
        }
    }
    s.board(RuleSet::DualTic, n)
}

/// Places `upper` in the top-left corner and `lower` in the bottom-right
/// corner of an otherwise empty dual-Tic board.
pub fn tic_dual_compose(upper: &Board, lower: &Board) -> Result<Board> {
    for b in [upper, lower] {
        if b.game() != RuleSet::DualTic || !is_penult(b) {
            return Err(Error::NotPenult(format!("compose needs dual-Tic penults, got {} {}", b.game(), b.n())));
        }
    }
    let (k, n) = (upper.n(), upper.n() + lower.n());
    let mut s = Cells::default();
    for c in upper.cells() {
        s.put(c.row, c.col);
    }
    for c in lower.cells() {
        s.put(c.row + k, c.col + k);
    }
    s.board(RuleSet::DualTic, n)
}

/// Tak penult whose vacant cells form a closed ring of straight runs and
/// diagonal steps, with `k` vacant cells in the top row and `l` in the left
/// column.
pub fn tak_variable_diamond(n: usize, k: usize, l: usize) -> Result<Board> {
    if !(Family::VariableDiamond { k, l }).in_domain(n) {
        return Err(Error::Domain(format!("VariableDiamond(n={n}, k={k}, l={l}) needs 2 <= k, l <= n-2")));
    }
    let mut ring = BTreeSet::new();
    ring.extend((1..=k).map(|c| (0, c)));
    ring.extend((0..n - k).map(|i| (i, k + i)));
    ring.extend((n - 1 - k..n - 1).map(|r| (r, n - 1)));
    ring.extend((n - 1 - l..n - 1).map(|c| (n - 1, c)));
    ring.extend((0..n - l).map(|j| (l + j, j)));
    ring.extend((1..=l).map(|r| (r, 0)));
    let cells = (0..n).flat_map(|r| (0..n).map(move |c| (r, c))).filter(|p| !ring.contains(p));
    Board::from_cells(RuleSet::Tak, n, cells)
}

/// A full `(n-2)×(n-2)` corner block with a two- or three-cell tail.
pub fn tak_l_snake(n: usize, variant: u8) -> Result<Board> {
    if !Family::LSnake(variant).in_domain(n) {
        return Err(Error::Domain(format!("LSnake(n={n}, variant={variant}) needs n >= 4 and variant 1 or 2")));
    }
    let mut s = Cells::default();
    s.rect(2..n, 0..n - 2);
    if variant == 1 {
        s.put(1, n - 2);
        s.put(0, n - 1);
    } else {
        s.put(1, n - 1);
        s.put(0, n - 2);
        s.put(0, n - 1);
    }
    s.board(RuleSet::Tak, n)
}

/// A vertical strip of the Snake diagram: column, occupied rows, and the
/// two rows its diagonal steps occupy moving away from the strip's open end.
struct Strip {
    col: usize,
    rows: std::ops::RangeInclusive<usize>,
    steps: [usize; 2],
}

/// Near-full columns every third column, alternately anchored at the top
/// and bottom, joined by two-cell diagonal steps; some residues add full
/// boundary rows. Verified as a penult before it is returned.
pub fn tak_snake(n: usize) -> Result<Board> {
    if !Family::Snake.in_domain(n) {
        return Err(Error::Domain(format!("Snake needs 6 <= n <= {MAX_SIDE}, got {n}")));
    }
    let mut s = Cells::default();
    let down = |col| Strip { col, rows: 0..=n - 3, steps: [n - 2, n - 1] };
    let up = |col| Strip { col, rows: 2..=n - 1, steps: [1, 0] };
    let strips: Vec<Strip> = match n % 6 {
        1 | 4 => (0..n).step_by(3).enumerate().map(|(j, c)| if j % 2 == 0 { down(c) } else { up(c) }).collect(),
        2 => {
            s.rect([0], 2..n);
            s.rect([n - 1], 0..n - 2);
            (2..n - 2)
                .step_by(3)
                .enumerate()
                .map(|(j, col)| {
                    if j % 2 == 0 {
                        Strip { col, rows: 1..=n - 4, steps: [n - 3, n - 2] }
                    } else {
                        Strip { col, rows: 3..=n - 2, steps: [2, 1] }
                    }
                })
                .collect()
        }
        3 => {
            s.rect([n - 1], 0..n - 2);
            (0..n - 2)
                .step_by(3)
                .enumerate()
                .map(|(j, col)| {
                    if j % 2 == 0 {
                        Strip { col, rows: 2..=n - 2, steps: [1, 0] }
                    } else {
                        Strip { col, rows: 0..=n - 4, steps: [n - 3, n - 2] }
                    }
                })
                .collect()
        }
        5 => {
            s.rect(2..n, [0]);
            (1..n).step_by(3).enumerate().map(|(j, c)| if j % 2 == 0 { up(c) } else { down(c) }).collect()
        }
        _ => {
            s.rect([0], 0..n - 2);
            s.rect([n - 1], 0..n - 2);
            (0..n - 2)
                .step_by(3)
                .enumerate()
                .map(|(j, col)| {
                    if j % 2 == 0 {
                        Strip { col, rows: 1..=n - 4, steps: [n - 3, n - 2] }
                    } else {
                        Strip { col, rows: 3..=n - 2, steps: [2, 1] }
                    }
                })
                .collect()
        }
    };
    for strip in &strips {
        s.rect(strip.rows.clone(), [strip.col]);
        let [near, far] = strip.steps;
        if strip.col >= 2 {
            s.put(near, strip.col - 1);
            s.put(far, strip.col - 2);
        }
        if strip.col + 2 < n {
            s.put(near, strip.col + 1);
            s.put(far, strip.col + 2);
        }
    }
    let board = s.board(RuleSet::Tak, n)?;
    if board.token_count() != snake_tokens(n) || !is_penult(&board) {
        return Err(Error::ConstructionFailed(format!(
            "Snake at n = {n} has {} tokens and does not verify as a penult",
            board.token_count()
        )));
    }
    Ok(board)
}

/// Representative dots-and-boxes penults, one per token count.
pub fn db_fixtures(dots: usize) -> Result<Vec<Board>> {
    match dots {
        3 => Ok(fixtures::db_3_dots()),
        4 => Ok(fixtures::db_4_dots()),
        _ => Err(Error::Domain(format!("dots-and-boxes fixtures exist for 3 and 4 dots, not {dots}"))),
    }
}

/// Every dual-Tic family instance at side `n` used to cover the token
/// interval.
pub fn dualtic_cover(n: usize) -> Vec<Family> {
    let mut out = vec![Family::Tic(TicFamily::A), Family::Tic(TicFamily::C)];
    out.extend((9..=13).map(Family::D));
    out.extend((3..=n.saturating_sub(3)).map(|k| Family::Compose { k, b_with_c: false }));
    out.extend((3..=n.saturating_sub(4)).map(|k| Family::Compose { k, b_with_c: true }));
    out.retain(|f| f.in_domain(n));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rules::classify;
    use crate::Classification;

    #[test]
    fn tic_family_counts() {
        assert_eq!(tic_dual_family(TicFamily::A, 5).unwrap().token_count(), 10);
        assert_eq!(tic_dual_family(TicFamily::B, 5).unwrap().token_count(), 12);
        assert_eq!(tic_dual_family(TicFamily::C, 4).unwrap().token_count(), 8);
        assert_eq!(tic_dual_family(TicFamily::C, 5).unwrap().token_count(), 12);
        assert!(tic_dual_family(TicFamily::C, 3).is_err());
        assert!(tic_dual_family(TicFamily::A, 2).is_err());
    }

    #[test]
    fn d_family_counts_and_domain() {
        assert_eq!(tic_dual_d(7, 11).unwrap().token_count(), 17);
        assert_eq!(tic_dual_d(5, 9).unwrap().token_count(), 11);
        assert!(matches!(tic_dual_d(6, 13), Err(Error::Domain(_))));
        assert!(tic_dual_d(5, 10).is_err());
        assert!(tic_dual_d(9, 8).is_err());
    }

    #[test]
    fn generators_reproduce_the_diagrams() {
        let abc = fixtures::dualtic_abc_5();
        for (f, want) in [TicFamily::A, TicFamily::B, TicFamily::C].into_iter().zip(abc) {
            assert_eq!(tic_dual_family(f, 5).unwrap(), want, "{f:?}");
        }
        for (m, want) in (9..=13).zip(fixtures::dualtic_d_7()) {
            assert_eq!(tic_dual_d(7, m).unwrap(), want, "D(7,{m})");
        }
        assert_eq!(tak_variable_diamond(7, 3, 4).unwrap(), fixtures::diamond_7());
        for (v, want) in [1, 2].into_iter().zip(fixtures::l_snakes_5()) {
            assert_eq!(tak_l_snake(5, v).unwrap(), want);
        }
        for (n, want) in (13..=18).zip(fixtures::snakes_13_to_18()) {
            assert_eq!(tak_snake(n).unwrap(), want, "snake {n}");
        }
    }

    #[test]
    fn compose_examples() {
        let a3 = tic_dual_family(TicFamily::A, 3).unwrap();
        let b3 = tic_dual_family(TicFamily::B, 3).unwrap();
        let c4 = tic_dual_family(TicFamily::C, 4).unwrap();
        let ab = tic_dual_compose(&a3, &b3).unwrap();
        assert_eq!((ab.n(), ab.token_count()), (6, 12));
        assert_eq!(classify(&ab), Classification::Penult);
        let bc = tic_dual_compose(&b3, &c4).unwrap();
        assert_eq!((bc.n(), bc.token_count()), (7, 14));
        assert_eq!(classify(&bc), Classification::Penult);
        let not_penult = Board::full(RuleSet::DualTic, 3).unwrap();
        assert!(matches!(tic_dual_compose(&not_penult, &b3), Err(Error::NotPenult(_))));
    }

    #[test]
    fn compose_of_small_penults_is_a_penult() {
        let families = [TicFamily::A, TicFamily::B, TicFamily::C];
        for f in families {
            for g in families {
                for k in 3..=5 {
                    for m in 3..=5 {
                        let (Ok(p), Ok(q)) = (tic_dual_family(f, k), tic_dual_family(g, m)) else { continue };
                        let c = tic_dual_compose(&p, &q).unwrap();
                        assert_eq!(c.token_count(), p.token_count() + q.token_count());
                        assert!(is_penult(&c), "{f:?}_{k} + {g:?}_{m}");
                    }
                }
            }
        }
    }

    #[test]
    fn tak_family_examples() {
        assert_eq!(tak_variable_diamond(7, 2, 2).unwrap().token_count(), 35);
        assert_eq!(tak_variable_diamond(5, 3, 3).unwrap().token_count(), 13);
        assert!(tak_variable_diamond(4, 3, 3).is_err());
        assert_eq!(tak_l_snake(5, 1).unwrap().token_count(), 11);
        assert_eq!(tak_l_snake(5, 2).unwrap().token_count(), 12);
        assert!(is_penult(&tak_l_snake(5, 1).unwrap()));
        assert!(is_penult(&tak_l_snake(5, 2).unwrap()));
        assert!(tak_l_snake(3, 1).is_err());
        assert!(tak_l_snake(5, 3).is_err());
    }

    #[test]
    fn snake_counts() {
        assert_eq!(tak_snake(13).unwrap().token_count(), 71);
        assert_eq!(tak_snake(14).unwrap().token_count(), 80);
        assert_eq!(tak_snake(18).unwrap().token_count(), 138);
        assert!(tak_snake(5).is_err());
    }

    #[test]
    fn dots_boxes_fixtures() {
        let counts = |d| db_fixtures(d).unwrap().iter().map(Board::token_count).collect::<Vec<_>>();
        assert_eq!(counts(3), vec![4, 5, 6, 7, 8]);
        assert_eq!(counts(4), (8..=14).collect::<Vec<_>>());
        for b in db_fixtures(3).unwrap().iter().chain(&db_fixtures(4).unwrap()) {
            assert!(is_penult(b));
        }
        assert!(db_fixtures(5).is_err());
    }
}
