//! Minimum genus, planarity, chord certificates and maximum genus.

pub mod chords;
pub mod search;
pub mod xuong;

pub use chords::{chords_overlap, overlapping_triples, Chord};
pub use search::{
    embed_with_genus_at_most, is_planar, is_planar_with, min_genus, min_genus_capped,
    GenusBound, GenusResult, SolverOptions, DEFAULT_NODE_BUDGET,
};
pub use xuong::{
    deficiency_of_tree, is_upper_embeddable, max_genus, max_genus_with, verify_xuong_tree,
    XuongCertificate, XuongOptions,
};
