//! File formats, corpus execution and report writing on top of
//! `mutapath-core`.
//!
//! - [`manifest`]: loading a corpus manifest and the program pairs it lists.
//! - [`runner`]: searching every pair of a corpus, optionally in parallel.
//! - [`emit`]: writing CSV and JSON reports.

pub mod emit;
pub mod manifest;
pub mod runner;

pub use emit::{emit, Format};
pub use manifest::{load_manifest, CorpusManifest, CorpusPair, ManifestError, PairSource};
pub use runner::{run_corpus, run_corpus_with, RunError, RunOptions};
