//! Reference implementations used as test oracles.
//!
//! Shared between this crate's integration tests and the acceptance suite of
//! the CLI crate, so it depends only on the core crate's public API and `rand`.
#![allow(dead_code)]

use mutapath_core::{Ast, Node, NodeKind};
use rand::Rng;

/// A node of a tree flattened in pre-order.
struct Flat {
    kind: NodeKind,
    label: String,
    /// Pre-order index one past the last descendant.
    end: usize,
}

fn flatten(root: &Node) -> Vec<Flat> {
    fn go(n: &Node, out: &mut Vec<Flat>) {
        let me = out.len();
        out.push(Flat {
            kind: n.kind,
            label: n.label.clone(),
            end: 0,
        });
        for c in &n.children {
            go(c, out);
        }
        out[me].end = out.len();
    }
    let mut out = Vec::new();
    go(root, &mut out);
    out
}

fn is_ancestor(t: &[Flat], anc: usize, desc: usize) -> bool {
    anc < desc && desc < t[anc].end
}

/// Minimum edit cost over every valid mapping between the two trees, found
/// by exhaustive backtracking.
///
/// A mapping pairs nodes one-to-one, only nodes of equal kind, and preserves
/// ancestry and left-to-right order. Its cost is one per unmatched node on
/// either side plus one per matched pair with different labels. The minimum
/// over such mappings equals the unit-cost edit distance. Exponential; meant
/// for trees of at most about eight nodes.
pub fn brute_force_distance(a: &Node, b: &Node) -> usize {
    let (ta, tb) = (flatten(a), flatten(b));
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    let mut used = vec![false; tb.len()];
    let mut best = ta.len() + tb.len();
    search(&ta, &tb, 0, &mut pairs, &mut used, 0, &mut best);
    best
}

fn search(
    ta: &[Flat],
    tb: &[Flat],
    i: usize,
    pairs: &mut Vec<(usize, usize)>,
    used: &mut [bool],
    relabels: usize,
    best: &mut usize,
) {
    let cost = |matched: usize| relabels + (ta.len() - matched) + (tb.len() - matched);
    // Optimistic bound: every remaining left node still gets matched for free.
    let reachable = (pairs.len() + (ta.len() - i)).min(tb.len());
    if cost(reachable) >= *best && i < ta.len() {
        return;
    }
    if i == ta.len() {
        *best = (*best).min(cost(pairs.len()));
        return;
    }
    search(ta, tb, i + 1, pairs, used, relabels, best);
    for j in 0..tb.len() {
        if used[j] || ta[i].kind != tb[j].kind {
            continue;
        }
        let consistent = pairs.iter().all(|&(pi, pj)| {
            // pi precedes i in pre-order, so pj must precede j and
            // ancestry must agree in both trees
            pj < j && is_ancestor(ta, pi, i) == is_ancestor(tb, pj, j)
        });
        if !consistent {
            continue;
        }
        used[j] = true;
        pairs.push((i, j));
        let extra = usize::from(ta[i].label != tb[j].label);
        search(ta, tb, i + 1, pairs, used, relabels + extra, best);
        pairs.pop();
        used[j] = false;
    }
}

/// Kinds and labels for random abstract trees: few enough that matches and
/// kind clashes are both common.
const KINDS: [NodeKind; 3] = [NodeKind::Block, NodeKind::BinaryExpr, NodeKind::Identifier];
const LABELS: [&str; 3] = ["a", "b", "c"];

/// A random ordered labelled tree with `1..=max_nodes` nodes. Not a valid
/// MiniLang program; the differ does not require one.
pub fn random_tree<R: Rng + ?Sized>(rng: &mut R, max_nodes: usize) -> Ast {
    let n = rng.gen_range(1..=max_nodes);
    // parent[i] < i for a random recursive tree in pre-order-compatible shape
    let mut nodes: Vec<(NodeKind, String, Vec<usize>)> = Vec::with_capacity(n);
    for i in 0..n {
        let kind = KINDS[rng.gen_range(0..KINDS.len())];
        let label = LABELS[rng.gen_range(0..LABELS.len())].to_string();
        nodes.push((kind, label, Vec::new()));
        if i > 0 {
            let parent = rng.gen_range(0..i);
            nodes[parent].2.push(i);
        }
    }
    fn build(nodes: &[(NodeKind, String, Vec<usize>)], i: usize) -> Node {
        let (kind, label, kids) = &nodes[i];
        Node::new(
            *kind,
            label.clone(),
            kids.iter().map(|&k| build(nodes, k)).collect(),
        )
    }
    Ast::new(build(&nodes, 0))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn leaf(label: &str) -> Node {
        Node::new(NodeKind::Block, label, vec![])
    }

    #[test]
    fn hand_computed_distances() {
        let a = Node::new(NodeKind::Block, "r", vec![leaf("x"), leaf("y")]);
        assert_eq!(brute_force_distance(&a, &a), 0);
        let b = Node::new(NodeKind::Block, "r", vec![leaf("y")]);
        assert_eq!(brute_force_distance(&a, &b), 1);
        let c = Node::new(
            NodeKind::Block,
            "r",
            vec![Node::new(NodeKind::Block, "x", vec![leaf("y")])],
        );
        assert_eq!(brute_force_distance(&a, &c), 2);
        assert_eq!(
            brute_force_distance(&Node::ident("x"), &Node::literal("x")),
            2
        );
    }
}
