//! Analysis toolkit for polarized discussion networks built from endorsement
//! (retweet) interactions.
//!
//! The pipeline goes: ingest interaction records -> build weighted directed
//! endorsement/mention graphs -> agglomerative community detection with an
//! edge-sampling stability ensemble -> stance propagation from annotated
//! samples -> polarization metrics (random-walk controversy, mention shares,
//! cross-window membership flow, domain rankings) -> group-conditioned
//! nonnegative topic models with per-topic side shares.
//!
//! Every stage is deterministic given its inputs and an explicit seed.

pub mod communities;
pub mod ingest;
pub mod network;
pub mod pipeline;
pub mod polarization;
pub mod topics;
