//! Two-complexes `K_φ` built from a word in the free group on `a, b`:
//! word invariants, the van Kampen obstruction in `R^4`, and exact PL
//! geometry for the embedded part `H` and the three-component link read
//! from `φ`.

pub mod certificate;
pub mod complex;
pub mod geometry;
pub mod solver;
pub mod vk;
pub mod word;

pub use certificate::{certify, Certificate, Level};
pub use complex::{attach_disk, build_z, Complex2};
pub use vk::{obstruction_verdict, ObstructionVerdict};
pub use word::{milnor_invariants, Word};
