//! Invariants of the symplectic or orthogonal Lie algebra of `H_g` in tensor spaces and in the
//! Chevalley–Eilenberg complex of `𝔤_g`, computed in the basis of matching diagrams, and the
//! stable cohomology ring assembled from Borel classes and `λ`-classes.

pub mod explicit;
pub mod invariant;
pub mod matching;
pub mod perm;
pub mod ring;
pub mod tensor;

pub use explicit::{invariants_kernel, invariants_of, Explicit};
pub use invariant::{invariant_ce_complex, min_stable_genus, Component, InvariantComplex};
pub use matching::{gram_matrix, gram_rank, matchings_span, MatchingDiagram, Matchings};
pub use ring::{kontsevich_degree, poincare_series, stable_ring, Generator, OutFnTable, Provenance, StableRing};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum InvError {
    #[error("matchings need an even number of slots, got {0}")]
    OddSlots(usize),
    #[error("decoration has {got} entries for {slots} slots")]
    Decoration { slots: usize, got: usize },
    #[error("genus {g} is below the stable range; need g ≥ {needed}")]
    UnstableRange { g: usize, needed: usize },
    #[error("dimension d = {0} must be at least 3")]
    Dimension(i64),
    #[error("degree 2nd − k = {0} is not positive")]
    NonpositiveDegree(i64),
    #[error("quadratic module: {0}")]
    Module(String),
    #[error("table: {0}")]
    Table(String),
}
