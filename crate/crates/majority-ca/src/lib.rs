//! Majority-rule cellular automata and opinion dynamics on tori, grids,
//! cycles, and general graphs.
//!
//! The crate has four layers:
//!
//! - [`topology`] builds the immutable graphs the dynamics run on;
//! - [`dynamics`] is the synchronous update engine for the four local rules
//!   (majority, biased majority, random majority, conservative majority),
//!   with cycle detection and outcome classification;
//! - [`analysis`] verifies structural properties: Moore clusters, covering
//!   rectangles and their iterative merging, robust and eternal vertex sets,
//!   and the closed-form survival/consensus-time/threshold calculators;
//! - [`experiments`] drives reproducible seeded Monte-Carlo trials and
//!   density sweeps that exhibit the phase transitions empirically.
//!
//! Everything is deterministic: random colorings and tie-breaks flow through
//! splitmix64 ([`rng`]), so identical seeds give bit-identical results across
//! runs and machines.

#![forbid(unsafe_code)]

pub mod analysis;
pub mod dynamics;
pub mod experiments;
pub mod rng;
pub mod topology;

use thiserror::Error;

/// Position-carrying error for the text file formats (generations, patterns,
/// edge lists). Lines and columns are 1-based.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: Option<usize>,
    pub column: Option<usize>,
    pub message: String,
}

impl ParseError {
    pub fn new(message: impl Into<String>) -> Self {
        Self {
            line: None,
            column: None,
            message: message.into(),
        }
    }

    pub fn at_line(line: usize, message: impl Into<String>) -> Self {
        Self {
            line: Some(line),
            column: None,
            message: message.into(),
        }
    }

    pub fn at(line: usize, column: usize, message: impl Into<String>) -> Self {
        Self {
            line: Some(line),
            column: Some(column),
            message: message.into(),
        }
    }
}

impl std::fmt::Display for ParseError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match (self.line, self.column) {
            (Some(l), Some(c)) => write!(f, "line {l}, column {c}: {}", self.message),
            (Some(l), None) => write!(f, "line {l}: {}", self.message),
            _ => f.write_str(&self.message),
        }
    }
}
