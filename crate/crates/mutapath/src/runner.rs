//! Running the search over every pair of a corpus.

use mutapath_core::search::{find_mutation_path_with, Clock, StdClock};
use mutapath_core::{OperatorSet, PairResult, SearchBudget, SearchError};

use crate::manifest::{CorpusManifest, PairSource};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RunOptions {
    pub budget: SearchBudget,
    /// Worker threads; results keep manifest order regardless.
    pub parallelism: usize,
    /// Report measured wall time. Off by default so that reports are a pure
    /// function of their inputs; the time limit is enforced either way.
    pub record_timing: bool,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            budget: SearchBudget::default(),
            parallelism: 1,
            record_timing: false,
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum RunError {
    #[error("parallelism must be at least 1")]
    ZeroParallelism,
    #[error(transparent)]
    Budget(#[from] SearchError),
    #[error("cannot start worker threads: {0}")]
    ThreadPool(#[from] rayon::ThreadPoolBuildError),
}

/// One result per manifest pair, in manifest order. Pairs that could not be
/// loaded or are too large to diff come back with `excluded` set.
pub fn run_corpus(
    manifest: &CorpusManifest,
    opset: &OperatorSet,
    budget: &SearchBudget,
    parallelism: usize,
) -> Result<Vec<PairResult>, RunError> {
    run_corpus_with(
        manifest,
        opset,
        &RunOptions {
            budget: *budget,
            parallelism,
            record_timing: false,
        },
    )
}

pub fn run_corpus_with(
    manifest: &CorpusManifest,
    opset: &OperatorSet,
    options: &RunOptions,
) -> Result<Vec<PairResult>, RunError> {
    if options.parallelism == 0 {
        return Err(RunError::ZeroParallelism);
    }
    options.budget.validate()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(options.parallelism)
        .build()?;
    let results = pool.install(|| {
        use rayon::prelude::*;
        manifest
            .pairs
            .par_iter()
            .map(|pair| run_pair(pair, opset, options))
            .collect()
    });
    Ok(results)
}

fn run_pair(
    pair: &crate::manifest::CorpusPair,
    opset: &OperatorSet,
    options: &RunOptions,
) -> PairResult {
    let (id, project) = (pair.id.clone(), pair.project.clone());
    let (fixed, buggy) = match &pair.source {
        PairSource::Loaded { fixed, buggy } => (fixed, buggy),
        PairSource::Excluded { reason } => {
            return PairResult::excluded(id, project, opset.name, reason.clone())
        }
    };
    let clock = StdClock::start();
    match find_mutation_path_with(
        fixed,
        buggy,
        opset,
        &options.budget,
        &clock as &dyn Clock,
        None,
    ) {
        Ok(mut result) => {
            if !options.record_timing {
                result.wall_time = 0.0;
            }
            PairResult::from_search(id, project, opset.name, &result)
        }
        Err(e) => PairResult::excluded(id, project, opset.name, e.to_string()),
    }
}
