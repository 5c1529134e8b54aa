//! Exact integer linear algebra, permutations and free-group words.

pub mod abelian;
pub mod complex;
pub mod lattice;
pub mod matrix;
pub mod perm;
pub mod snf;
pub mod word;

pub use abelian::{cokernel_invariants, AbelianGroup};
pub use complex::{chain_homology, ChainComplex};
pub use lattice::{kernel_lattice, lattice_intersect, Lattice};
pub use matrix::IntegerMatrix;
pub use perm::{cycle_count, Permutation};
pub use snf::{smith_normal_form, SmithForm};
pub use word::{Abelianization, FPGroup, Letter, Word};
