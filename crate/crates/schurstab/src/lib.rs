//! Characters of the symmetric groups attached to the Lie operad: `𝓛ie(k)`, the kernel
//! `𝒰(k)` of the bracketing map and its sign twist, Schur functor dimensions, the
//! Chevalley–Eilenberg plethysm `𝒞 = Λ∘𝒰̃`, and homological stability ranges.

pub mod partition;
mod rep;
mod stability;

pub use partition::{class_size, cycle_type, partitions, sign, z, Partition};
pub use rep::{
    ce_functor, ce_schur_dims, ce_total_dim, der_omega_dim, induced_lie, lie_rep, representative, schur_dim,
    u_rep, u_tilde, u_tilde_degree, u_tilde_functor, GradedSchurFunctor, SymRep,
};
pub use stability::{
    block_bound, ce_page_bound, ce_polynomial_degree, d_degrees, e2_page_bound, is_stable, pi_degrees,
    stability_bounds, total_bound,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SchurError {
    #[error("character has no value on class {0:?}")]
    MissingClass(Partition),
    #[error("character has classes that are not partitions of {0}")]
    NotAPartition(usize),
}

/// Stability bound as a value type.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StabilityBound {
    pub k: usize,
    pub ell: usize,
}

impl StabilityBound {
    pub fn value(&self) -> usize {
        stability_bounds(self.k, self.ell).0
    }
}
