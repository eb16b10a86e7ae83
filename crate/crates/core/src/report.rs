//! Per-pair records and corpus-level aggregates.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::mutops::{OperatorName, OperatorSetName};
use crate::search::{classify, MutationPath, SearchResult};

pub use crate::search::ReproClass;

/// Outcome for one bug pair under one operator set.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairResult {
    pub id: String,
    pub project: String,
    pub ops: OperatorSetName,
    /// `None` for excluded pairs.
    pub status: Option<ReproClass>,
    /// Length of the (possibly partial) path found.
    pub k: usize,
    pub initial_diff: usize,
    pub remaining_diff: usize,
    pub progress: f64,
    pub operator_usage: BTreeMap<OperatorName, usize>,
    pub path: MutationPath,
    pub expansions: usize,
    pub wall_time: f64,
    pub excluded: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exclusion_reason: Option<String>,
}

impl PairResult {
    pub fn from_search(
        id: String,
        project: String,
        ops: OperatorSetName,
        result: &SearchResult,
    ) -> Self {
        let mut operator_usage = BTreeMap::new();
        for step in &result.path.steps {
            *operator_usage.entry(step.operator).or_insert(0) += 1;
        }
        PairResult {
            id,
            project,
            ops,
            status: Some(classify(result)),
            k: result.path.order(),
            initial_diff: result.initial_diff,
            remaining_diff: result.remaining_diff,
            progress: result.progress,
            operator_usage,
            path: result.path.clone(),
            expansions: result.expansions,
            wall_time: result.wall_time,
            excluded: false,
            exclusion_reason: None,
        }
    }

    pub fn excluded(id: String, project: String, ops: OperatorSetName, reason: String) -> Self {
        PairResult {
            id,
            project,
            ops,
            status: None,
            k: 0,
            initial_diff: 0,
            remaining_diff: 0,
            progress: 0.0,
            operator_usage: BTreeMap::new(),
            path: MutationPath::default(),
            expansions: 0,
            wall_time: 0.0,
            excluded: true,
            exclusion_reason: Some(reason),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProjectRow {
    pub project: String,
    pub ops: OperatorSetName,
    pub r: usize,
    pub p: usize,
    pub u: usize,
    pub excluded: usize,
}

impl ProjectRow {
    pub fn included(&self) -> usize {
        self.r + self.p + self.u
    }

    /// Shares of R, P and U among included pairs, in percent. All zero when
    /// nothing was included.
    pub fn percentages(&self) -> [f64; 3] {
        let n = self.included();
        if n == 0 {
            return [0.0; 3];
        }
        [self.r, self.p, self.u].map(|c| 100.0 * c as f64 / n as f64)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UsageRow {
    pub operator: OperatorName,
    pub count_pitest: usize,
    pub count_extended: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LengthRow {
    pub ops: OperatorSetName,
    pub status: ReproClass,
    pub k: usize,
    pub count: usize,
}

/// Count of partial reproductions with progress in `[lower, upper)` tenths;
/// the last bucket also holds progress exactly 1.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProgressRow {
    pub ops: OperatorSetName,
    pub bucket: usize,
    pub count: usize,
}

pub const PROGRESS_BUCKETS: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtrapolationRow {
    pub ops: OperatorSetName,
    pub percentile: u32,
    pub expected_k: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SummaryTables {
    pub per_project: Vec<ProjectRow>,
    pub operator_usage: Vec<UsageRow>,
    pub length_histogram: Vec<LengthRow>,
    pub progress_histogram: Vec<ProgressRow>,
    pub extrapolation: Vec<ExtrapolationRow>,
}

pub fn summarize(results: &[PairResult]) -> SummaryTables {
    let mut projects: BTreeMap<(String, OperatorSetName), ProjectRow> = BTreeMap::new();
    let mut usage: BTreeMap<OperatorName, [usize; 2]> = BTreeMap::new();
    let mut lengths: BTreeMap<(OperatorSetName, ReproClass, usize), usize> = BTreeMap::new();
    let mut progress: BTreeMap<OperatorSetName, [usize; PROGRESS_BUCKETS]> = BTreeMap::new();

    for res in results {
        let row = projects
            .entry((res.project.clone(), res.ops))
            .or_insert_with(|| ProjectRow {
                project: res.project.clone(),
                ops: res.ops,
                r: 0,
                p: 0,
                u: 0,
                excluded: 0,
            });
        let Some(status) = res.status.filter(|_| !res.excluded) else {
            row.excluded += 1;
            continue;
        };
        match status {
            ReproClass::R => row.r += 1,
            ReproClass::P => row.p += 1,
            ReproClass::U => row.u += 1,
        }
        let column = match res.ops {
            OperatorSetName::Pitest => 0,
            OperatorSetName::Extended => 1,
        };
        for (op, n) in &res.operator_usage {
            usage.entry(*op).or_default()[column] += n;
        }
        if status != ReproClass::U {
            *lengths.entry((res.ops, status, res.k)).or_default() += 1;
        }
        if status == ReproClass::P {
            progress.entry(res.ops).or_default()[progress_bucket(res.progress)] += 1;
        }
    }

    let mut extrapolation = Vec::new();
    for ops in [OperatorSetName::Pitest, OperatorSetName::Extended] {
        let subset: Vec<PairResult> = results.iter().filter(|r| r.ops == ops).cloned().collect();
        if let Ok(curve) = extrapolate_expected_lengths(&subset) {
            extrapolation.extend(curve.into_iter().map(|(percentile, expected_k)| {
                ExtrapolationRow {
                    ops,
                    percentile,
                    expected_k,
                }
            }));
        }
    }

    SummaryTables {
        per_project: projects.into_values().collect(),
        operator_usage: OperatorName::ALL
            .iter()
            .map(|op| {
                let [count_pitest, count_extended] = usage.get(op).copied().unwrap_or_default();
                UsageRow {
                    operator: *op,
                    count_pitest,
                    count_extended,
                }
            })
            .collect(),
        length_histogram: lengths
            .into_iter()
            .map(|((ops, status, k), count)| LengthRow {
                ops,
                status,
                k,
                count,
            })
            .collect(),
        progress_histogram: progress
            .into_iter()
            .flat_map(|(ops, buckets)| {
                buckets
                    .into_iter()
                    .enumerate()
                    .map(move |(bucket, count)| ProgressRow { ops, bucket, count })
            })
            .collect(),
        extrapolation,
    }
}

fn progress_bucket(progress: f64) -> usize {
    let b = (progress * PROGRESS_BUCKETS as f64) as usize;
    b.min(PROGRESS_BUCKETS - 1)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
#[error("no fully or partially reproduced results to extrapolate from")]
pub struct EmptyInput;

/// Percentile grid of the expected-length curve.
pub const PERCENTILES: [u32; 20] = [
    5, 10, 15, 20, 25, 30, 35, 40, 45, 50, 55, 60, 65, 70, 75, 80, 85, 90, 95, 100,
];

/// Expected path lengths by percentile, assuming a partial reproduction
/// found half of the mutations it needs: the sample is `k` for each full
/// reproduction and `2k` for each partial one. Uses nearest-rank percentiles.
pub fn extrapolate_expected_lengths(
    results: &[PairResult],
) -> Result<Vec<(u32, usize)>, EmptyInput> {
    let mut sample: Vec<usize> = results
        .iter()
        .filter(|r| !r.excluded)
        .filter_map(|r| match r.status {
            Some(ReproClass::R) => Some(r.k),
            Some(ReproClass::P) => Some(2 * r.k),
            _ => None,
        })
        .collect();
    if sample.is_empty() {
        return Err(EmptyInput);
    }
    sample.sort_unstable();
    let n = sample.len();
    Ok(PERCENTILES
        .iter()
        .map(|&p| {
            let rank = (p as usize * n).div_ceil(100).max(1);
            (p, sample[rank - 1])
        })
        .collect())
}
