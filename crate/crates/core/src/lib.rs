//! Stochastic series expansion (SSE) quantum Monte Carlo for Hamiltonians
//! built from controlled-not unitaries and Pauli-string projectors.
//!
//! Standard SSE sampling requires every Hamiltonian term to map a computational
//! basis state to a single basis state (the no-branching condition). The terms
//! handled here branch freely: the intermediate states created by an operator
//! string are tracked as stabilizer states, so a string matrix element
//! `<s| O_1 ... O_L |s>` is evaluated in polynomial time and always comes out
//! as an exact power of 1/sqrt(2), or exactly zero. The Markov chain then
//! samples (basis state, operator string) configurations with Metropolis
//! updates, and the mean energy follows from the average operator count,
//! `<H> = -<n>/beta`.
//!
//! Modules:
//!
//! * [`gf2`] — bit-packed vectors over GF(2).
//! * [`pauli`] — signed X/Z Pauli strings and their product rule.
//! * [`stabilizer`] — generator tableaus, CX conjugation, projector updates,
//!   basis overlaps.
//! * [`model`] — operator-term catalogs: CNOT chain, transverse-field Ising
//!   chain, Z2 star/plaquette lattice.
//! * [`sse`] — the Markov chain: configuration weights, detailed-balance
//!   updates, annealing schedule, binning errors.
//! * [`ed`] — dense exact-diagonalization reference: Jacobi eigenvalues, full
//!   and truncated thermal mean energies, trace moments.
//!
//! The crate is `no_std` (with `alloc`); file IO and the command-line driver
//! live in the companion `stabsse-cli` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod ed;
pub mod error;
pub mod gf2;
pub mod model;
pub mod pauli;
pub mod sse;
pub mod stabilizer;

pub use error::Error;
pub use model::{HamiltonianCatalog, OperatorTerm, TermKind};
pub use pauli::{PauliString, Sign};
pub use stabilizer::{BasisState, MatrixElement, StabilizerState};
