//! Graded relational structures over finite residuated chains.
//!
//! The crate is organised bottom-up: [`algebra`] holds the truth-value
//! chains, [`logic`] the formulas and their evaluation, [`structure`] the
//! finite structures with embeddings and canonical forms, [`classes`] the
//! example classes and their property checkers, and [`fraisse`] the
//! amalgamation constructions, limit stages and the random weighted graph.
//! [`cli`] wires everything to the `graded` binary.

pub mod algebra;
pub mod logic;
pub mod structure;
pub mod classes;
pub mod fraisse;
pub mod cli;
