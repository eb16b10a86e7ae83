//! Mutation operators as enumerable AST rewrites.
//!
//! Each operator yields [`MutationApplication`]s: one operator bound to one
//! node site with one concrete replacement. Applications are the edges of the
//! mutation graph searched by [`crate::search`].

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::minilang::{Ast, Node, NodeKind, NodePath};

mod enumerate;
mod pool;

pub use enumerate::{enumerate_applications, enumerate_operator};
pub use pool::{build_pool, CandidatePool};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum OperatorName {
    ConditionalBoundary,
    Increments,
    InvertNegative,
    Math,
    NegateConditionals,
    VoidMethodCalls,
    EmptyReturns,
    FalseReturns,
    TrueReturns,
    NullReturns,
    PrimitiveReturns,
    MethodCalls,
    RelaxedEmptyReturns,
    RelaxedInlineConstants,
    RelaxedReturnValues,
    Rename,
}

impl OperatorName {
    pub const ALL: [OperatorName; 16] = [
        OperatorName::ConditionalBoundary,
        OperatorName::Increments,
        OperatorName::InvertNegative,
        OperatorName::Math,
        OperatorName::NegateConditionals,
        OperatorName::VoidMethodCalls,
        OperatorName::EmptyReturns,
        OperatorName::FalseReturns,
        OperatorName::TrueReturns,
        OperatorName::NullReturns,
        OperatorName::PrimitiveReturns,
        OperatorName::MethodCalls,
        OperatorName::RelaxedEmptyReturns,
        OperatorName::RelaxedInlineConstants,
        OperatorName::RelaxedReturnValues,
        OperatorName::Rename,
    ];

    pub fn name(self) -> &'static str {
        match self {
            OperatorName::ConditionalBoundary => "ConditionalBoundary",
            OperatorName::Increments => "Increments",
            OperatorName::InvertNegative => "InvertNegative",
            OperatorName::Math => "Math",
            OperatorName::NegateConditionals => "NegateConditionals",
            OperatorName::VoidMethodCalls => "VoidMethodCalls",
            OperatorName::EmptyReturns => "EmptyReturns",
            OperatorName::FalseReturns => "FalseReturns",
            OperatorName::TrueReturns => "TrueReturns",
            OperatorName::NullReturns => "NullReturns",
            OperatorName::PrimitiveReturns => "PrimitiveReturns",
            OperatorName::MethodCalls => "MethodCalls",
            OperatorName::RelaxedEmptyReturns => "RelaxedEmptyReturns",
            OperatorName::RelaxedInlineConstants => "RelaxedInlineConstants",
            OperatorName::RelaxedReturnValues => "RelaxedReturnValues",
            OperatorName::Rename => "Rename",
        }
    }
}

impl fmt::Display for OperatorName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OperatorSetName {
    Pitest,
    Extended,
}

impl OperatorSetName {
    pub fn as_str(self) -> &'static str {
        match self {
            OperatorSetName::Pitest => "pitest",
            OperatorSetName::Extended => "extended",
        }
    }
}

impl fmt::Display for OperatorSetName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown operator set `{0}` (expected `pitest` or `extended`)")]
pub struct UnknownOperatorSet(pub String);

impl FromStr for OperatorSetName {
    type Err = UnknownOperatorSet;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "pitest" => Ok(OperatorSetName::Pitest),
            "extended" => Ok(OperatorSetName::Extended),
            other => Err(UnknownOperatorSet(other.into())),
        }
    }
}

/// An ordered list of operators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OperatorSet {
    pub name: OperatorSetName,
    pub operators: Vec<OperatorName>,
}

impl OperatorSet {
    /// The eleven default operators of the Pitest tool.
    pub fn pitest() -> Self {
        OperatorSet {
            name: OperatorSetName::Pitest,
            operators: OperatorName::ALL[..11].to_vec(),
        }
    }

    /// Pitest plus the five additional operators. `VoidMethodCalls` is left
    /// out because `MethodCalls` produces the same deletions.
    pub fn extended() -> Self {
        let operators = OperatorName::ALL
            .iter()
            .copied()
            .filter(|o| *o != OperatorName::VoidMethodCalls)
            .collect();
        OperatorSet {
            name: OperatorSetName::Extended,
            operators,
        }
    }

    pub fn named(name: OperatorSetName) -> Self {
        match name {
            OperatorSetName::Pitest => OperatorSet::pitest(),
            OperatorSetName::Extended => OperatorSet::extended(),
        }
    }
}

/// The concrete change an application performs at its site.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "rewrite")]
pub enum Rewrite {
    /// Change the label of the site node; kind and children stay.
    Relabel { from: String, to: String },
    /// Replace the subtree at the site.
    Replace {
        kind: NodeKind,
        label: String,
        with: Node,
    },
    /// Remove the statement at the site. Inside a block the statement is
    /// dropped, elsewhere (a brace-less if/while body) it becomes `{}`.
    DeleteStatement { kind: NodeKind, label: String },
    /// Wrap the site expression in a unary minus.
    Negate { kind: NodeKind, label: String },
    /// The site is a unary minus; replace it by its operand.
    Unnegate,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MutationApplication {
    pub operator: OperatorName,
    pub site: NodePath,
    pub detail: Rewrite,
}

impl fmt::Display for MutationApplication {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at {}: ", self.operator, self.site)?;
        match &self.detail {
            Rewrite::Relabel { from, to } => write!(f, "{from} -> {to}"),
            Rewrite::Replace { kind, label, with } => {
                write!(
                    f,
                    "replace {kind}({label}) with {}({})",
                    with.kind, with.label
                )
            }
            Rewrite::DeleteStatement { kind, .. } => write!(f, "delete {kind}"),
            Rewrite::Negate { label, .. } => write!(f, "negate {label}"),
            Rewrite::Unnegate => f.write_str("remove negation"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("stale application at {site}: {reason}")]
pub struct StaleApplication {
    pub site: NodePath,
    pub reason: &'static str,
}

fn stale(site: &NodePath, reason: &'static str) -> StaleApplication {
    StaleApplication {
        site: site.clone(),
        reason,
    }
}

fn matches(node: &Node, kind: NodeKind, label: &str) -> bool {
    node.kind == kind && node.label == label
}

/// Applies one mutation, returning a new tree. The input is left untouched.
pub fn apply(app: &MutationApplication, ast: &Ast) -> Result<Ast, StaleApplication> {
    let mut out = ast.clone();
    apply_in_place(app, &mut out)?;
    Ok(out)
}

/// In-place variant of [`apply`]. On error the tree is unchanged.
pub fn apply_in_place(app: &MutationApplication, ast: &mut Ast) -> Result<(), StaleApplication> {
    let site = &app.site;
    let node = ast
        .root
        .get_mut(&site.0)
        .ok_or_else(|| stale(site, "no node at site"))?;
    match &app.detail {
        Rewrite::Relabel { from, to } => {
            if node.label != *from {
                return Err(stale(site, "label mismatch"));
            }
            node.label.clone_from(to);
        }
        Rewrite::Replace { kind, label, with } => {
            if !matches(node, *kind, label) {
                return Err(stale(site, "node mismatch"));
            }
            *node = with.clone();
        }
        Rewrite::Negate { kind, label } => {
            if !matches(node, *kind, label) {
                return Err(stale(site, "node mismatch"));
            }
            let inner = core::mem::replace(node, Node::leaf(NodeKind::UnaryExpr, "-"));
            node.children.push(inner);
        }
        Rewrite::Unnegate => {
            if !(matches(node, NodeKind::UnaryExpr, "-") && node.children.len() == 1) {
                return Err(stale(site, "not a negation"));
            }
            let inner = node.children.pop().expect("checked arity");
            *node = inner;
        }
        Rewrite::DeleteStatement { kind, label } => {
            if !matches(node, *kind, label) {
                return Err(stale(site, "node mismatch"));
            }
            let (parent_path, index) = site
                .parent()
                .ok_or_else(|| stale(site, "cannot delete the root"))?;
            let parent = ast
                .root
                .get_mut(&parent_path.0)
                .expect("parent of an existing node");
            if parent.kind == NodeKind::Block {
                parent.children.remove(index);
            } else {
                parent.children[index] = Node::leaf(NodeKind::Block, "");
            }
        }
    }
    Ok(())
}

/// Upper bound on the edit distance between a tree and the result of applying
/// `app` to it.
pub fn touched_size(app: &MutationApplication, ast: &Ast) -> usize {
    let Some(node) = ast.get(&app.site) else {
        return 0;
    };
    match &app.detail {
        Rewrite::Relabel { .. } | Rewrite::Negate { .. } | Rewrite::Unnegate => 1,
        Rewrite::Replace { with, .. } => {
            let shared_root = usize::from(with.kind == node.kind);
            node.size() + with.size() - shared_root
        }
        Rewrite::DeleteStatement { .. } => {
            let in_block = app
                .site
                .parent()
                .and_then(|(p, _)| ast.get(&p))
                .is_some_and(|p| p.kind == NodeKind::Block);
            if in_block {
                node.size()
            } else {
                node.size() + 1
            }
        }
    }
}

/// Largest [`touched_size`] among the applications enumerable from `ast`.
pub fn max_touched_size(opset: &OperatorSet, ast: &Ast, pool: &CandidatePool) -> usize {
    enumerate_applications(opset, ast, pool)
        .iter()
        .map(|a| touched_size(a, ast))
        .max()
        .unwrap_or(1)
}
