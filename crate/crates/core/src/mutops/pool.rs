use alloc::collections::BTreeSet;
use alloc::string::String;

use crate::minilang::{Ast, LiteralKind, NodeKind};

/// Replacement candidates for the relaxed operators and `Rename`, harvested
/// from the pair under analysis.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CandidatePool {
    /// Literals occurring in the buggy tree.
    pub literals: BTreeSet<(LiteralKind, String)>,
    /// Names occurring in either tree.
    pub identifiers: BTreeSet<String>,
}

impl CandidatePool {
    pub fn literals_of(&self, kind: LiteralKind) -> impl Iterator<Item = &str> {
        self.literals
            .iter()
            .filter(move |(k, _)| *k == kind)
            .map(|(_, l)| l.as_str())
    }
}

pub fn build_pool(fixed: &Ast, buggy: &Ast) -> CandidatePool {
    let mut pool = CandidatePool::default();
    for (ast, take_literals) in [(fixed, false), (buggy, true)] {
        ast.root.walk(&mut |_, node| match node.kind {
            NodeKind::Literal if take_literals => {
                if let Some(kind) = LiteralKind::of(&node.label) {
                    pool.literals.insert((kind, node.label.clone()));
                }
            }
            NodeKind::Identifier | NodeKind::Call | NodeKind::FunctionDecl | NodeKind::VarDecl => {
                pool.identifiers.insert(node.label.clone());
            }
            _ => {}
        });
    }
    pool
}
