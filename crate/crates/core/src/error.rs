use alloc::vec::Vec;

use crate::cycle::CuspViolation;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("empty cycle")]
    EmptyCycle,

    #[error("not a cusp cycle: {}", describe(.0))]
    NotACusp(Vec<CuspViolation>),

    #[error("cycle has no entry >= 3")]
    NoAnchor,

    #[error("cycle length {0} is odd")]
    OddLength(usize),

    #[error("cycle length {len} is below the required minimum {min}")]
    TooShort { len: usize, min: usize },

    #[error("axis {axis} is not a vertex reflection of a cycle of length {len}")]
    BadAxis { axis: usize, len: usize },

    #[error("cycle is not symmetric under axis {axis}")]
    NotSymmetric { axis: usize },

    #[error("index {index} out of range for length {len}")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("step does not respect the reflection: {0}")]
    OrbitMismatch(&'static str),

    #[error("determinant is {0}, expected 1")]
    BadDeterminant(i128),

    #[error("integer overflow in 2x2 arithmetic")]
    Overflow,

    #[error("target is not negative (semi)definite: entry {value} at index {index}")]
    Indefinite { index: usize, value: i64 },

    #[error("length {n} outside the supported range [4, {max}] or odd")]
    LengthOutOfRange { n: usize, max: usize },

    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("search budget of {0} states exhausted")]
    BudgetExceeded(usize),

    #[error("ray ({0}, {1}) is not primitive")]
    NonPrimitiveRay(i128, i128),

    #[error("witness does not replay: {0}")]
    WitnessReplay(&'static str),

    #[error("cached toric cycle {0:?} is not reachable from the seed")]
    CacheInconsistent(Vec<i64>),
}

fn describe(v: &[CuspViolation]) -> alloc::string::String {
    use alloc::string::ToString;
    let parts: Vec<_> = v.iter().map(|x| x.to_string()).collect();
    parts.join("; ")
}
