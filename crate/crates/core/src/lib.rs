//! Exact computations on sponges: graded face posets with signed incidences
//! that model the orbit-type skeleta of complexity-one torus actions.
//!
//! The crate is layered bottom-up:
//!
//! * [`exactalg`]: integer Smith normal form, ranks, kernels, rational solving.
//! * [`complexes`]: chain complexes, (co)homology, quotients, induced maps.
//! * [`poset`]: graded posets, order complexes, links, Cohen–Macaulay test.
//! * [`sponge`]: the sponge type, its validation and homological checks.
//! * [`cosheaf`]: the local-cohomology cosheaf and the dihomology comparison.
//! * [`enumerative`]: extended f-vectors, h-numbers, Hilbert series.
//! * [`generators`]: example sponges and generated families.
//! * [`search`]: scans of families for h-vector symmetry and nonnegativity.
//! * [`format`]: the JSON document formats shared with the command line tool.

pub mod complexes;
pub mod cosheaf;
pub mod enumerative;
pub mod exactalg;
pub mod format;
pub mod generators;
pub mod par;
pub mod poset;
pub mod search;
pub mod sponge;

pub use complexes::{ChainComplex, Coefficients, HomologyGroup, HomologyProfile};
pub use enumerative::{ExtendedFVector, HVector, HilbertSeries};
pub use par::Strategy;
pub use poset::{GradedPoset, SimplicialComplex};
pub use sponge::SpongeComplex;
