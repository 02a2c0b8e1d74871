//! Reversible circuit synthesis over Z_k.
//!
//! * [`affine`]: invertible linear and affine maps on Z_k^n (any k >= 2)
//!   to circuits over D, U, H_a and V.
//! * [`perm_synth`]: arbitrary bijections of Z_k^n (odd k >= 3) to
//!   circuits whose gates touch at most two wires.
//! * [`verify`]: exhaustive equivalence checking with an evaluator
//!   independent of [`circuit`].
//!
//! Gate lists are read first gate first. Permutation composition uses the
//! same order: `f.compose(&g)` applies `f` and then `g`.

pub mod affine;
pub mod circuit;
pub mod error;
pub mod matrix;
pub mod par;
pub mod perm_synth;
pub mod residue;
pub mod text;
pub mod verify;

pub use affine::{detect_affine, matrix_of_circuit, pivot_unitize, synth_affine, synth_linear, RowAdd};
pub use circuit::{random_circuit, Circuit, Gate, GateKind, GateStats};
pub use error::{Error, Result};
pub use matrix::{AffineMap, MatrixModK};
pub use par::Strategy;
pub use perm_synth::{
    adjacent_to_circuit, build_t, build_u_ladder, expand_controls, perm_to_transpositions,
    reduce_controls_once, synthesize, synthesize_batch, transposition_to_adjacent, AdjacentStep,
    SynthOptions, Transposition,
};
pub use residue::{Modulus, PermTable, SizeGuard, Word};
pub use text::{parse_circuit, serialize_circuit};
pub use verify::{certify, oracle_table, VerificationReport};
