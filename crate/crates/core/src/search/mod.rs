//! Best-first search for a shortest mutation path between two ASTs.
//!
//! The graph is implicit: nodes are trees, edges are mutation applications.
//! Path cost `g` is the number of applications so far; the heuristic `h` is the
//! tree edit distance to the target. Because one application can remove many
//! nodes at once, `h` may overestimate; scaling it by the largest touched
//! subtree restores admissibility at the price of a wider search.

use alloc::collections::{BTreeMap, BinaryHeap};
use alloc::vec::Vec;
use core::cmp::Reverse;
use core::fmt;

use serde::{Deserialize, Serialize};

use crate::minilang::{canonical_hash, Ast, Digest};
use crate::mutops::{
    apply_in_place, build_pool, enumerate_applications, MutationApplication, OperatorSet,
};
use crate::treediff::{SizeLimit, TreeDiffer};

mod bfs;
mod clock;

pub use bfs::{bfs_oracle, bfs_oracle_with_cap, Exhausted, DEFAULT_STATE_CAP};
#[cfg(feature = "std")]
pub use clock::StdClock;
pub use clock::{Clock, NoClock};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SearchBudget {
    pub max_expansions: usize,
    pub max_frontier: usize,
    /// Seconds; only enforced when the search runs with a real clock.
    pub time_limit: f64,
    pub heuristic_scale: f64,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            max_expansions: 50_000,
            max_frontier: 200_000,
            time_limit: 60.0,
            heuristic_scale: 1.0,
        }
    }
}

impl SearchBudget {
    pub fn validate(&self) -> Result<(), SearchError> {
        if self.max_expansions == 0 || self.max_frontier == 0 {
            return Err(SearchError::InvalidBudget(
                "expansion and frontier limits must be positive",
            ));
        }
        if self.time_limit.is_nan() || self.time_limit <= 0.0 {
            return Err(SearchError::InvalidBudget("time limit must be positive"));
        }
        if !(self.heuristic_scale > 0.0 && self.heuristic_scale.is_finite()) {
            return Err(SearchError::InvalidBudget(
                "heuristic scale must be a positive number",
            ));
        }
        Ok(())
    }

    fn scaled(&self, h: usize) -> u64 {
        if self.heuristic_scale == 1.0 {
            h as u64
        } else {
            libm_ceil(h as f64 / self.heuristic_scale) as u64
        }
    }
}

// core has no float ceil without std
fn libm_ceil(x: f64) -> f64 {
    let t = x as u64 as f64;
    if t < x {
        t + 1.0
    } else {
        t
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MutationPath {
    pub steps: Vec<MutationApplication>,
}

impl MutationPath {
    /// Mutant order.
    pub fn order(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Applies the steps in order, failing on the first stale one.
    pub fn replay(&self, start: &Ast) -> Result<Ast, crate::mutops::StaleApplication> {
        let mut ast = start.clone();
        for step in &self.steps {
            apply_in_place(step, &mut ast)?;
        }
        Ok(ast)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SearchStatus {
    Full,
    Partial,
    Unreproducible,
}

/// Membership in the fully / partially / not reproduced sets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ReproClass {
    R,
    P,
    U,
}

impl ReproClass {
    pub fn as_str(self) -> &'static str {
        match self {
            ReproClass::R => "R",
            ReproClass::P => "P",
            ReproClass::U => "U",
        }
    }
}

impl fmt::Display for ReproClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchResult {
    pub status: SearchStatus,
    pub path: MutationPath,
    pub initial_diff: usize,
    pub remaining_diff: usize,
    pub progress: f64,
    pub expansions: usize,
    pub wall_time: f64,
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SearchError {
    #[error(transparent)]
    SizeLimit(#[from] SizeLimit),
    #[error("invalid search budget: {0}")]
    InvalidBudget(&'static str),
}

pub fn classify(result: &SearchResult) -> ReproClass {
    match result.status {
        SearchStatus::Full => ReproClass::R,
        SearchStatus::Partial => ReproClass::P,
        SearchStatus::Unreproducible => ReproClass::U,
    }
}

/// Runs the search with the default clock: wall time under `std`, none
/// otherwise (the time limit is then not enforced).
pub fn find_mutation_path(
    fixed: &Ast,
    buggy: &Ast,
    opset: &OperatorSet,
    budget: &SearchBudget,
) -> Result<SearchResult, SearchError> {
    #[cfg(feature = "std")]
    let clock = StdClock::start();
    #[cfg(not(feature = "std"))]
    let clock = NoClock;
    find_mutation_path_with(fixed, buggy, opset, budget, &clock, None)
}

struct Entry {
    parent: Option<usize>,
    app: Option<MutationApplication>,
    digest: Digest,
    g: usize,
    h: usize,
}

/// Search with an explicit clock. When `popped_f` is given, the `f` value of
/// every expanded node is appended to it in expansion order.
pub fn find_mutation_path_with(
    fixed: &Ast,
    buggy: &Ast,
    opset: &OperatorSet,
    budget: &SearchBudget,
    clock: &dyn Clock,
    mut popped_f: Option<&mut Vec<u64>>,
) -> Result<SearchResult, SearchError> {
    budget.validate()?;
    let differ = TreeDiffer::default();
    let target = differ.target(buggy);
    let d0 = target.distance_from(fixed)?;
    let finish = |status, path: MutationPath, remaining: usize, expansions| {
        let progress = if d0 == 0 {
            1.0
        } else {
            (d0 - remaining) as f64 / d0 as f64
        };
        SearchResult {
            status,
            path,
            initial_diff: d0,
            remaining_diff: remaining,
            progress,
            expansions,
            wall_time: clock.elapsed_secs(),
        }
    };
    if d0 == 0 {
        return Ok(finish(SearchStatus::Full, MutationPath::default(), 0, 0));
    }

    let pool = build_pool(fixed, buggy);
    let start = canonical_hash(fixed);
    let mut entries = alloc::vec![Entry {
        parent: None,
        app: None,
        digest: start,
        g: 0,
        h: d0
    }];
    // best known g and the cached heuristic per state
    let mut seen: BTreeMap<Digest, (usize, usize)> = BTreeMap::new();
    seen.insert(start, (0, d0));
    // (f, h, insertion order) gives smallest f, then smallest h, then FIFO
    let mut open = BinaryHeap::new();
    open.push(Reverse((budget.scaled(d0), d0, 0usize)));
    let mut best = 0usize;
    let mut expansions = 0usize;

    'search: while let Some(Reverse((f, h, idx))) = open.pop() {
        let entry = &entries[idx];
        if seen.get(&entry.digest).is_some_and(|(g, _)| *g < entry.g) {
            continue;
        }
        if h == 0 {
            let path = path_to(&entries, idx);
            return Ok(finish(SearchStatus::Full, path, 0, expansions));
        }
        if expansions >= budget.max_expansions || clock.elapsed_secs() > budget.time_limit {
            break;
        }
        expansions += 1;
        if let Some(trace) = popped_f.as_deref_mut() {
            trace.push(f);
        }

        let g = entry.g + 1;
        let ast = path_to(&entries, idx)
            .replay(fixed)
            .expect("stored paths replay");
        for app in enumerate_applications(opset, &ast, &pool) {
            let mut child = ast.clone();
            if apply_in_place(&app, &mut child).is_err() {
                continue;
            }
            let digest = canonical_hash(&child);
            let h = match seen.get(&digest) {
                Some((best_g, _)) if *best_g <= g => continue,
                Some((_, h)) => *h,
                None => match target.distance_from(&child) {
                    Ok(h) => h,
                    // successor grew past the differ's bound; not explored
                    Err(_) => continue,
                },
            };
            seen.insert(digest, (g, h));
            let child_idx = entries.len();
            entries.push(Entry {
                parent: Some(idx),
                app: Some(app),
                digest,
                g,
                h,
            });
            open.push(Reverse((g as u64 + budget.scaled(h), h, child_idx)));
            if (h, g) < (entries[best].h, entries[best].g) {
                best = child_idx;
            }
            if open.len() > budget.max_frontier {
                break 'search;
            }
        }
    }

    let remaining = entries[best].h;
    if remaining < d0 {
        Ok(finish(
            SearchStatus::Partial,
            path_to(&entries, best),
            remaining,
            expansions,
        ))
    } else {
        Ok(finish(
            SearchStatus::Unreproducible,
            MutationPath::default(),
            d0,
            expansions,
        ))
    }
}

fn path_to(entries: &[Entry], mut idx: usize) -> MutationPath {
    let mut steps = Vec::new();
    while let Some(app) = &entries[idx].app {
        steps.push(app.clone());
        idx = entries[idx].parent.expect("non-root entries have parents");
    }
    steps.reverse();
    MutationPath { steps }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::minilang::parse;
    use crate::mutops::OperatorName;

    fn run(fixed: &str, buggy: &str, opset: OperatorSet) -> SearchResult {
        let (a, b) = (parse(fixed).unwrap(), parse(buggy).unwrap());
        find_mutation_path(&a, &b, &opset, &SearchBudget::default()).unwrap()
    }

    #[test]
    fn second_order_mutant() {
        let r = run(
            "int f(int a,int b){return a + a;}",
            "int f(int a,int b){return a - b;}",
            OperatorSet::extended(),
        );
        assert_eq!(r.status, SearchStatus::Full);
        assert_eq!(r.path.order(), 2);
        let mut ops: Vec<_> = r.path.steps.iter().map(|s| s.operator).collect();
        ops.sort();
        assert_eq!(ops, [OperatorName::Math, OperatorName::Rename]);
        assert_eq!((r.initial_diff, r.remaining_diff, r.progress), (2, 0, 1.0));
        assert_eq!(classify(&r), ReproClass::R);
    }

    #[test]
    fn identical_pair() {
        let src = "int f(int a){ return a; }";
        let r = run(src, src, OperatorSet::pitest());
        assert_eq!(
            (r.status, r.path.order(), r.progress, r.expansions),
            (SearchStatus::Full, 0, 1.0, 0)
        );
    }

    #[test]
    fn pure_insertion_is_unreproducible_under_pitest() {
        let r = run(
            "void f(int a){ a = 1; }",
            "void f(int a){ a = 1; g(a); }",
            OperatorSet::pitest(),
        );
        assert_eq!(r.status, SearchStatus::Unreproducible);
        assert!(r.path.is_empty());
        assert_eq!((r.initial_diff, r.remaining_diff, r.progress), (3, 3, 0.0));
        assert_eq!(classify(&r), ReproClass::U);
    }

    #[test]
    fn partial_when_a_block_is_added() {
        // the call deletion is reproducible, the new if-block (5 nodes) is not
        let fixed = "void f(int a){ log(a); a = 1; }";
        let buggy = "void f(int a){ a = 1; if (a) { } }";
        let r = run(fixed, buggy, OperatorSet::pitest());
        assert_eq!(r.status, SearchStatus::Partial);
        assert_eq!(r.remaining_diff, 3);
        assert_eq!(r.path.order(), 1);
        assert_eq!(r.path.steps[0].operator, OperatorName::VoidMethodCalls);
        assert!(r.progress > 0.0 && r.progress < 1.0);
        assert_eq!(classify(&r), ReproClass::P);
    }

    #[test]
    fn invalid_budget() {
        let a = parse("int f(){ return 1; }").unwrap();
        let budget = SearchBudget {
            heuristic_scale: 0.0,
            ..SearchBudget::default()
        };
        assert!(matches!(
            find_mutation_path(&a, &a, &OperatorSet::pitest(), &budget),
            Err(SearchError::InvalidBudget(_))
        ));
    }

    #[test]
    fn size_limit_propagates() {
        let mut big = alloc::string::String::from("int f(int a){ return a");
        for _ in 0..1200 {
            big.push_str(" + a");
        }
        big.push_str("; }");
        let a = parse(&big).unwrap();
        assert!(matches!(
            find_mutation_path(
                &a,
                &a.clone(),
                &OperatorSet::pitest(),
                &SearchBudget::default()
            ),
            Err(SearchError::SizeLimit(_))
        ));
    }

    #[test]
    fn ceil_helper() {
        assert_eq!(libm_ceil(2.0), 2.0);
        assert_eq!(libm_ceil(2.01), 3.0);
        assert_eq!(libm_ceil(0.0), 0.0);
    }
}
