//! Boolean functions, cubes, exclusive-or covers and Karnaugh-map geometry.

mod cover;
mod cube;
mod kmap;
mod table;

pub use cover::{minterms_of, ParityCover, Validation};
pub use cube::{Cube, Literal, ParityFactor, Phase};
pub use kmap::{gray_sequence, KMapLayout};
pub use table::{var_mask, Assignment, TruthTable, MAX_ARITY};

pub(crate) use cube::full_mask;
