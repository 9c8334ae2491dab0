//! Negativity-based entanglement analysis for multipartite qubit states.
//!
//! The crate computes global partial-transpose negativities, K-way
//! negativities (the partial transpose restricted to the block of matrix
//! elements whose bra and ket labels differ in exactly K subsystems) and the
//! partial K-way negativities that split the global negativity of a subsystem
//! into K-way contributions. A derivative-free optimizer minimizes total
//! K-way negativity over local qubit rotations.
//!
//! Subsystems are addressed by zero-based index in this API. Subsystem `0` is
//! the least significant digit of a flat basis index, so for three qubits
//! `|i1 i2 i3>` sits at flat index `i1 + 2 i2 + 4 i3`.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod eigen;
mod error;
pub mod families;
pub mod index;
pub mod matrix;
pub mod negativity;
pub mod optimize;
pub mod state;
pub mod transpose;

pub use error::{Error, Result};
pub use families::{amplitudes_of, make_state, Family, FamilyPoint};
pub use index::{coherence_weight, digits_of, flat_index, BasisLabel, SubsystemDims};
pub use matrix::{CMatrix, C64};
pub use negativity::{
    full_report, genuine_tripartite_measure, global_negativity, kway_negativity, negativity_of,
    partial_kway_negativities, NegativityReport, PartialNegativities, TransposeClass,
    NEGATIVE_EIGENVALUE_CUTOFF,
};
pub use optimize::{
    compare_to_psi1_canonical, minimize_total_kway, total_kway_negativity, CanonicalComparison,
    OptimizationOptions, OptimizationResult, RotationMode,
};
pub use state::{
    apply_local_unitary, coherence_split, pure_state_density, validate_density, CoherenceSplit,
    DensityOperator, LocalRotation, LocalRotationSet, PureState, RotationParams,
    ValidationTolerances,
};
pub use transpose::{
    global_partial_transpose, kway_partial_transpose, reconstruction_residual, TransposeSpec,
};
