//! Board tables transcribed from published diagrams, shipped as JSON data.

use crate::board::Board;
use crate::render::parse_boards;

fn load(text: &str) -> Vec<Board> {
    parse_boards(text).expect("fixture data parses")
}

/// Both 3×3 Tak penults up to symmetry.
pub fn tak_3x3_penults() -> Vec<Board> {
    load(include_str!("../data/fixtures/tak3_penults.json"))
}

/// 4×4 Tak penults with 6, 7 and 8 tokens.
pub fn tak_4x4_examples() -> Vec<Board> {
    load(include_str!("../data/fixtures/tak4_examples.json"))
}

/// The dual-Tic penults A, B and C on a 5×5 board.
pub fn dualtic_abc_5() -> Vec<Board> {
    load(include_str!("../data/fixtures/dualtic5_abc.json"))
}

/// The dual-Tic penults D(7, m) for m = 9..=13.
pub fn dualtic_d_7() -> Vec<Board> {
    load(include_str!("../data/fixtures/dualtic7_d.json"))
}

/// Variable Diamond on a 7×7 board with k = 3, l = 4.
pub fn diamond_7() -> Board {
    load(include_str!("../data/fixtures/tak7_diamond.json"))[0]
}

/// The two 5×5 L-Snakes.
pub fn l_snakes_5() -> Vec<Board> {
    load(include_str!("../data/fixtures/tak5_lsnakes.json"))
}

/// Snake diagrams for n = 13..=18.
pub fn snakes_13_to_18() -> Vec<Board> {
    load(include_str!("../data/fixtures/tak_snakes.json"))
}

/// Final positions of failed mirroring lines on 4×4, 5×5 and 7×7 Tak.
pub fn mirroring_failures() -> Vec<Board> {
    load(include_str!("../data/fixtures/mirroring_failures.json"))
}

/// The unique 10-token 5×5 Tak penult.
pub fn min_5x5_penult() -> Board {
    load(include_str!("../data/fixtures/tak5_minimal.json"))[0]
}

pub fn db_3_dots() -> Vec<Board> {
    load(include_str!("../data/fixtures/db3_penults.json"))
}

pub fn db_4_dots() -> Vec<Board> {
    load(include_str!("../data/fixtures/db4_penults.json"))
}
