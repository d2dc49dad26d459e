//! Combinatorial toolkit for cusp singularities carrying a free antisymplectic
//! involution.
//!
//! A cusp is handled entirely through its cycle of integers `(e_1, ..., e_n)`,
//! the negated self-intersections of the exceptional curves. On top of that
//! representation the crate provides:
//!
//! * [`cycle`]: validation, the dual cycle, reflections (symmetric structures)
//!   and the resolution graph of the quotient singularity;
//! * [`sl2`]: the monodromy matrix `A`, the involution matrix `B` and the
//!   admissible torsion translations;
//! * [`lattice`]: Smith normal form over arbitrary-precision integers,
//!   cokernels, class groups and toric fans;
//! * [`pair`]: boundary cycles of Looijenga pairs with a reflection, blowup
//!   moves, equivariant toric models and the decision procedure for the
//!   existence of an equivariant pair.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;

pub mod cycle;
pub mod error;
pub mod lattice;
pub mod pair;
pub mod sl2;

pub use cycle::{CycleWord, Reflection, Relabel, SymmetricStructure};
pub use error::{Error, Result};
pub use lattice::{FinAbGroup, IntMatrix, SmithForm};
pub use pair::{Decision, EquivariantStep, PairCycle, ToricWitness};
pub use sl2::{InvolutionDatum, LatticeVec, Mat2Z};
