//! Exact symbolic engine for the quantum 4-sphere algebra: normal forms,
//! the instanton idempotent, Chern-Connes characters and the operators of
//! the reduced (b, B) bicomplex, with truncated representations as a
//! numeric cross-check.

pub mod algebra;
pub mod chains;
pub mod cli;
pub mod matrix;
pub mod parse;
pub mod reps;
pub mod scalars;
pub mod verify;
