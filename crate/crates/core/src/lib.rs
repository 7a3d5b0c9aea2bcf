//! Orientable genus of multigraphs: rotation systems, an exact minimum-genus
//! search, Xuong-tree maximum genus, Milgram's scaffolding construction and
//! a census of small cubic graphs.

pub mod embedding;
pub mod error;
pub mod exec;
pub mod genus;
pub mod graph;
pub mod graph6;
pub mod named;
pub mod scaffold;
pub mod survey;

pub use embedding::{
    enumerate_rotation_systems, face_with_vertices, genus_of_embedding, induced_embedding,
    trace_faces, FaceDecomposition, RotationSystem, SubgraphMap,
};
pub use error::{Error, Result};
pub use exec::Exec;
pub use graph::{bar_amalgamation, GraphInvariants, MultiGraph};
pub use graph6::{emit_graph6, parse_graph6};
