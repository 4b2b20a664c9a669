//! Loading, windowing, and descriptive statistics for interaction records,
//! plus annotation ingestion and inter-annotator agreement.

mod annotations;
mod kappa;
mod records;
mod stats;
mod windows;

pub use annotations::{read_annotations, resolve_majority, Stance, StanceLabel};
pub use kappa::{cohen_kappa, KappaResult};
pub use records::{
    load_records, write_records, InteractionRecord, LoadReport, RecordFormat,
};
pub use stats::{engagement_span, posting_stats, GroupPostingStats, SpanReport};
pub use windows::{segment, Segmented, TimeWindow, WindowsConfig};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum IngestError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("{path}: {malformed} of {total} rows malformed (more than half); first errors: {sample}")]
    TooManyMalformed {
        path: String,
        malformed: usize,
        total: usize,
        sample: String,
    },
    #[error("invalid window config: {0}")]
    InvalidWindows(String),
    #[error("{path} line {line}: {message}")]
    BadRow {
        path: String,
        line: usize,
        message: String,
    },
    #[error("label sets share no users")]
    DisjointLabelSets,
}
