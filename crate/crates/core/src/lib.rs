//! Characteristic pairs over orbit complexes of torus manifolds: validity,
//! face-ring cohomology, and classification up to equivalence.

pub mod casestudy;
pub mod cohomology;
pub mod complex;
pub mod document;
pub mod equivalence;
pub mod linalg;
pub mod pair;
pub mod random;

pub use casestudy::{CaseReport, CaseStudy, CaseStudyError, Claim};
pub use cohomology::{CohomologyError, CohomologyRing, FacetTypeCount, GradedPiece, RingClass};
pub use complex::{shapes, ComplexError, Edge, EdgeKind, FacetId, OrbitComplex, VertexId};
pub use document::{DocumentError, PairDocument, WitnessDocument};
pub use equivalence::{
    are_equivalent, enumerate_pairs, fingerprint, verify_witness, EquivalenceError, EquivalenceWitness, Mode,
};
pub use linalg::{IntMatrix, LinalgError};
pub use pair::{CharacteristicMatrix, CharacteristicPair, PairError, SquareKind, ValidationReport};
