//! Exhaustive breadth-first search for the exact minimal mutant order.
//!
//! Used as a reference for small inputs; it explores every state up to a depth
//! bound and gives up once a state cap is exceeded.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use crate::minilang::{canonical_hash, Ast};
use crate::mutops::{apply_in_place, build_pool, enumerate_applications, OperatorSet};

pub const DEFAULT_STATE_CAP: usize = 2_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
#[error("breadth-first search exceeded {cap} states at depth {depth}")]
pub struct Exhausted {
    pub cap: usize,
    pub depth: usize,
}

/// Minimal number of applications turning `fixed` into `buggy`, or `None` if
/// no path of at most `max_depth` applications exists.
pub fn bfs_oracle(
    fixed: &Ast,
    buggy: &Ast,
    opset: &OperatorSet,
    max_depth: usize,
) -> Result<Option<usize>, Exhausted> {
    bfs_oracle_with_cap(fixed, buggy, opset, max_depth, DEFAULT_STATE_CAP)
}

pub fn bfs_oracle_with_cap(
    fixed: &Ast,
    buggy: &Ast,
    opset: &OperatorSet,
    max_depth: usize,
    cap: usize,
) -> Result<Option<usize>, Exhausted> {
    let goal = canonical_hash(buggy);
    let start = canonical_hash(fixed);
    if start == goal {
        return Ok(Some(0));
    }
    let pool = build_pool(fixed, buggy);
    let mut seen = BTreeSet::from([start]);
    let mut layer = alloc::vec![fixed.clone()];
    for depth in 1..=max_depth {
        let mut next = Vec::new();
        for ast in &layer {
            for app in enumerate_applications(opset, ast, &pool) {
                let mut child = ast.clone();
                if apply_in_place(&app, &mut child).is_err() {
                    continue;
                }
                let digest = canonical_hash(&child);
                if digest == goal {
                    return Ok(Some(depth));
                }
                if seen.insert(digest) {
                    if seen.len() > cap {
                        return Err(Exhausted { cap, depth });
                    }
                    next.push(child);
                }
            }
        }
        if next.is_empty() {
            break;
        }
        layer = next;
    }
    Ok(None)
}
