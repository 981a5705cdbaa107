//! Characteristic-class bookkeeping: Newton classes, Bernoulli numbers and the `L̃`-genus, the
//! relation between Borel classes and `κ`-classes, and a generator-level comparison of the stable
//! cohomology of diffeomorphisms with that of homotopy automorphisms.

pub mod compare;
pub mod genus;
pub mod poly;
pub mod series;
pub mod symmetric;

pub use compare::{compare_rings, DegreeCount, RingComparison};
pub use genus::{
    bernoulli, grw_kappa_degrees, kappa_borel_relation, lambda, ltilde_coeffs, ltilde_polynomial, newton_class,
    KappaBorelRelation, KappaGenerator,
};
pub use poly::{Monomial, SymPoly, Var};
pub use series::Series;
pub use symmetric::s_class;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ClassError {
    #[error("index must be at least 1")]
    ZeroIndex,
    #[error("dimension d = {0} must be at least 3")]
    Dimension(i64),
    #[error("d = {0} is even; only odd d is supported")]
    EvenDimension(i64),
    #[error(transparent)]
    Ring(spinvariants::InvError),
}
