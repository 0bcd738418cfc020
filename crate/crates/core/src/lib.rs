//! Synthesis and minimization of quantum combinational logic circuits.
//!
//! A single-output Boolean function `f` is realized either as an
//! f-controlled-NOT (`|x>|y> -> |x>|y ^ f(x)>`) or as an
//! f-controlled-phase-shift (`|x> -> (-1)^f(x) |x>`). Circuits are built from
//! exclusive-or covers of `f`: each cube becomes one mixed-polarity
//! controlled gate, and since every such gate squares to the identity, a
//! cover is valid when each 1-cell is hit an odd number of times and each
//! 0-cell an even number of times.
//!
//! Modules:
//! - [`logic`]: truth tables, cubes, covers, Karnaugh-map geometry
//! - [`circuit`]: gate IR, construction from covers, text formats
//! - [`sim`]: exhaustive classical, signed and state-vector simulation
//! - [`minimize`]: merge rules, exact and heuristic cover search, rewrite traces
//! - [`hardware`]: coupling-graph cost model and variant selection

pub mod circuit;
pub mod error;
pub mod hardware;
pub mod logic;
pub mod minimize;
pub mod sim;

pub use error::{Error, Result};
