//! 1-planar embeddings, 4-map witnesses and exhaustive recognizers for the
//! classes between them.

pub mod augment;
pub mod certificate;
pub mod decomposition;
pub mod density;
pub mod embedding;
pub mod fixtures;
pub mod format;
pub mod generators;
pub mod graph;
pub mod outer;
pub mod planarity;
pub mod recognition;
pub mod registry;
pub mod rotation;
pub mod search;
pub mod separated;
pub mod witness;

pub use certificate::{Certificate, Verdict, Violation, Witness};
pub use density::{check_density, DensityCheck, DensityClass};
pub use embedding::{Crossing, EmbeddingError, OnePlanarEmbedding, OpenClosed, Planarization};
pub use graph::{Edge, GraphError, SeparationPair, SimpleGraph};
pub use rotation::RotationSystem;
pub use witness::BipartiteMapWitness;
