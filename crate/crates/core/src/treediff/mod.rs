//! Ordered labeled tree edit distance between ASTs.
//!
//! The distance is the minimum number of unit-cost node insertions, deletions
//! and relabels. Relabelling only changes a label; nodes of different kinds are
//! never matched, so such changes cost a deletion plus an insertion. There is
//! no move operation.
//!
//! Edit scripts address nodes inside a forest: the first path step selects a
//! top-level tree (always `0` for a single AST), the remaining steps are child
//! indices. Intermediate states of a script may be forests, e.g. after the
//! root has been deleted.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use serde::{Deserialize, Serialize};

use crate::minilang::{Ast, Node, NodeKind, NodePath};

mod script;
mod zs;

use zs::{Dp, Flat, Interner};

/// Default bound on `|a| * |b|` for a single distance computation.
pub const DEFAULT_MAX_PAIR_PRODUCT: usize = 4_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
#[error("tree pair too large to diff: {left} x {right} nodes exceeds the limit of {limit}")]
pub struct SizeLimit {
    pub left: usize,
    pub right: usize,
    pub limit: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("edit script step {step} is not applicable: {reason}")]
pub struct InvalidScript {
    pub step: usize,
    pub reason: &'static str,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "op")]
pub enum EditOp {
    Relabel {
        site: NodePath,
        label: String,
    },
    /// Remove one node; its children take its place in the parent.
    Delete {
        site: NodePath,
    },
    /// Insert a node at `site`, adopting the `adopt` siblings that currently
    /// start at that position as its children.
    Insert {
        site: NodePath,
        kind: NodeKind,
        label: String,
        adopt: usize,
    },
}

impl fmt::Display for EditOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EditOp::Relabel { site, label } => write!(f, "relabel {site} -> {label:?}"),
            EditOp::Delete { site } => write!(f, "delete {site}"),
            EditOp::Insert {
                site,
                kind,
                label,
                adopt,
            } => {
                write!(f, "insert {site} {kind}")?;
                if !label.is_empty() {
                    write!(f, "({label:?})")?;
                }
                if *adopt > 0 {
                    write!(f, " adopting {adopt}")?;
                }
                Ok(())
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiffResult {
    pub distance: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub script: Option<Vec<EditOp>>,
}

/// Edit-distance calculator with a configurable size bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TreeDiffer {
    pub max_pair_product: usize,
}

impl Default for TreeDiffer {
    fn default() -> Self {
        TreeDiffer {
            max_pair_product: DEFAULT_MAX_PAIR_PRODUCT,
        }
    }
}

impl TreeDiffer {
    pub fn new(max_pair_product: usize) -> Self {
        TreeDiffer { max_pair_product }
    }

    fn check(&self, left: usize, right: usize) -> Result<(), SizeLimit> {
        if left.saturating_mul(right) > self.max_pair_product {
            Err(SizeLimit {
                left,
                right,
                limit: self.max_pair_product,
            })
        } else {
            Ok(())
        }
    }

    pub fn distance(&self, a: &Ast, b: &Ast) -> Result<usize, SizeLimit> {
        self.check(a.size(), b.size())?;
        let mut interner = Interner::default();
        let fa = Flat::build(&a.root, &mut |s| interner.intern(s));
        let fb = Flat::build(&b.root, &mut |s| interner.intern(s));
        Ok(Dp::new(&fa, &fb).distance())
    }

    /// Distance plus a minimal edit script from `a` to `b`.
    pub fn diff(&self, a: &Ast, b: &Ast) -> Result<DiffResult, SizeLimit> {
        self.check(a.size(), b.size())?;
        let mut interner = Interner::default();
        let fa = Flat::build(&a.root, &mut |s| interner.intern(s));
        let fb = Flat::build(&b.root, &mut |s| interner.intern(s));
        let mut dp = Dp::new(&fa, &fb);
        let distance = dp.distance();
        let mapping = dp.mapping();
        let script = script::from_mapping(&a.root, &b.root, &mapping);
        debug_assert_eq!(script.len(), distance);
        Ok(DiffResult {
            distance,
            script: Some(script),
        })
    }

    /// Prepares `target` for repeated distance queries against it.
    pub fn target(&self, target: &Ast) -> DiffTarget {
        let mut interner = Interner::default();
        let flat = Flat::build(&target.root, &mut |s| interner.intern(s));
        DiffTarget {
            flat,
            interner,
            differ: *self,
        }
    }
}

/// A fixed right-hand tree with its post-order arrays precomputed.
#[derive(Debug, Clone)]
pub struct DiffTarget {
    flat: Flat,
    interner: Interner,
    differ: TreeDiffer,
}

impl DiffTarget {
    pub fn size(&self) -> usize {
        self.flat.len()
    }

    pub fn distance_from(&self, a: &Ast) -> Result<usize, SizeLimit> {
        self.differ.check(a.size(), self.flat.len())?;
        let fa = Flat::build(&a.root, &mut |s| self.interner.lookup(s));
        Ok(Dp::new(&fa, &self.flat).distance())
    }
}

/// Edit distance between two ASTs under the default size bound. The script
/// is not computed; use [`ast_diff_with_script`] for that.
pub fn ast_diff(a: &Ast, b: &Ast) -> Result<DiffResult, SizeLimit> {
    let distance = TreeDiffer::default().distance(a, b)?;
    Ok(DiffResult {
        distance,
        script: None,
    })
}

pub fn ast_diff_with_script(a: &Ast, b: &Ast) -> Result<DiffResult, SizeLimit> {
    TreeDiffer::default().diff(a, b)
}

/// Replays an edit script on `a`. The script must leave exactly one tree.
pub fn replay(script: &[EditOp], a: &Ast) -> Result<Ast, InvalidScript> {
    let mut forest = alloc::vec![a.root.clone()];
    for (step, op) in script.iter().enumerate() {
        script::apply_op(&mut forest, op).map_err(|reason| InvalidScript { step, reason })?;
    }
    if forest.len() != 1 {
        return Err(InvalidScript {
            step: script.len(),
            reason: "script does not end in a single tree",
        });
    }
    Ok(Ast::new(forest.pop().expect("one tree")))
}

/// Edit distance between bare nodes, for callers outside the MiniLang grammar.
pub fn node_distance(a: &Node, b: &Node) -> usize {
    let mut interner = Interner::default();
    let fa = Flat::build(a, &mut |s| interner.intern(s));
    let fb = Flat::build(b, &mut |s| interner.intern(s));
    Dp::new(&fa, &fb).distance()
}
