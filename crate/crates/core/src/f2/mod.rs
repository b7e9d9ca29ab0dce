//! Binary symplectic algebra: packed bit vectors, Pauli words with exact
//! phases, and dense linear algebra over F2.
//!
//! A Pauli word on `n` qubits is stored as two packed bit vectors (its X and
//! Z supports) plus a phase exponent `k` so that the operator reads
//! `i^k · σ_0 ⊗ … ⊗ σ_{n-1}` with `σ = I, X, Z, Y` for `(x, z) = (0,0), (1,0),
//! (0,1), (1,1)`. Hermitian words therefore carry `k ∈ {0, 2}`.

mod bitvec;
mod matrix;
mod pauli;

pub use bitvec::BitVec;
pub use matrix::{f2_nullspace, f2_rank, f2_solve, F2Matrix, SpanBasis};
pub use pauli::{commutes, pauli_mul, Pauli, PauliWord, SymplecticForm};
