//! Penults of impartial positional games on square boards.
//!
//! A *penult* is a position that is not over, in which every move hands the
//! opponent an immediate win. This crate classifies positions, enumerates
//! penults up to the symmetries of the square, builds the known penult
//! families, checks lower and upper bounds on their sizes, solves small
//! boards, validates mirroring strategies, and computes mate-in-k depths.

pub mod bits;
pub mod board;
pub mod bounds;
pub mod constructions;
pub mod enumerate;
mod error;
pub mod fixtures;
pub mod render;
pub mod rules;
pub mod solver;
pub mod strategy;

pub use bits::{Bits, Mask};
pub use board::{
    apply_transform, canonical_form, complement, token_count, Board, Cell, Edge, RuleSet, SymTable, Transform,
};
pub use error::{Error, Result};
pub use render::{parse_board, render, Format};
pub use rules::{classify, is_won, legal_moves, Classification};
