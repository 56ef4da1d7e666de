//! Witt vectors over `F_q((t))` and the ramification breaks of the cyclic
//! extensions they define through Artin-Schreier-Witt theory.

pub mod arith;
pub mod asw;
pub mod breaks;
pub mod cli;
pub mod field;
pub mod oracle;
pub mod problem;
pub mod ring;
pub mod sample;
pub mod verify;
pub mod witt;
pub mod wittpoly;
