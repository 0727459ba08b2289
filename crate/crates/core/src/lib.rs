//! Exact computations in Nichols algebras of diagonal type and their braided
//! Lie algebras: cyclotomic scalars, generalized Dynkin diagrams, the free
//! braided algebra, a skew-derivation engine for `B(V)` and `L(V)`, and
//! dimension counts for finite Cartan types.

pub mod braided;
pub mod diagram;
pub mod engine;
pub mod formula;
pub mod roots;
pub mod scalars;
pub mod suites;
