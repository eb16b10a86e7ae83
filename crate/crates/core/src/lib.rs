//! Search for shortest chains of mutation-operator applications that turn the
//! AST of a fixed program into the AST of its buggy counterpart.
//!
//! The crate is `no_std` + `alloc`. The `std` feature only adds a wall-clock
//! implementation used to enforce search time limits.
//!
//! Layout:
//! - [`minilang`]: the toy imperative language (parser, printer, digests).
//! - [`mutops`]: the mutation operator catalog and its rewrites.
//! - [`treediff`]: ordered tree edit distance with edit scripts.
//! - [`search`]: A* over the mutation graph, plus a breadth-first oracle.
//! - [`seed`]: seeded bug generation with a known ground-truth path.
//! - [`report`]: per-pair results and corpus-level summaries.
#![no_std]

extern crate alloc;
#[cfg(feature = "std")]
extern crate std;

pub mod minilang;
pub mod mutops;
pub mod report;
pub mod search;
pub mod seed;
pub mod treediff;

pub use minilang::{
    canonical_hash, parse, pretty_print, Ast, Digest, Node, NodeKind, NodePath, ParseError,
};
pub use mutops::{
    apply, build_pool, enumerate_applications, CandidatePool, MutationApplication, OperatorName,
    OperatorSet, OperatorSetName, Rewrite, StaleApplication,
};
pub use report::{extrapolate_expected_lengths, summarize, PairResult, ReproClass, SummaryTables};
pub use search::{
    bfs_oracle, classify, find_mutation_path, MutationPath, SearchBudget, SearchError,
    SearchResult, SearchStatus,
};
pub use seed::{seed_bug, SeedError, SeededBug};
pub use treediff::{ast_diff, replay, DiffResult, EditOp, SizeLimit};
