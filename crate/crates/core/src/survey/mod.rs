//! Cubic-graph census and the composition table of Betti-number bounds.

pub mod canon;
pub mod census;
pub mod generate;
pub mod gtable;

pub use canon::{are_isomorphic, canonical_form, CanonicalForm};
pub use census::{
    census, census_graph6, census_violations, duke_check, ingest_graph6, CensusOptions,
    CensusReport, Checkpoint, IngestIssue, IngestItem, Telemetry,
};
pub use generate::{generate_cubic, CubicFilters, DEFAULT_STATE_BUDGET};
pub use gtable::{default_blocks, g_table, Block, GkRow, GkTable};
