use core::fmt;

use sha2::{Digest as _, Sha256};

use super::ast::{Ast, Node};

/// 128-bit structural digest of a tree.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Digest(pub [u8; 16]);

impl fmt::Debug for Digest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in self.0 {
            write!(f, "{b:02x}")?;
        }
        Ok(())
    }
}

impl fmt::Display for Digest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

pub fn canonical_hash(ast: &Ast) -> Digest {
    node_digest(&ast.root)
}

/// Merkle-style digest over `(kind, label, child digests)`.
pub fn node_digest(node: &Node) -> Digest {
    let mut h = Sha256::new();
    h.update([node.kind.index()]);
    h.update((node.label.len() as u32).to_le_bytes());
    h.update(node.label.as_bytes());
    h.update((node.children.len() as u32).to_le_bytes());
    for c in &node.children {
        h.update(node_digest(c).0);
    }
    let full = h.finalize();
    let mut out = [0u8; 16];
    out.copy_from_slice(&full[..16]);
    Digest(out)
}
