//! Zhang–Shasha ordered tree edit distance over post-order flattened trees.
//!
//! Unit costs for insert, delete and relabel. Nodes of different kinds can
//! never be relabelled into each other.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::minilang::Node;

// Larger than any reachable distance for trees the size limit admits, small
// enough that adding it to a distance cannot overflow.
const FORBIDDEN: u32 = 1 << 28;

/// Label strings mapped to dense ids. Lookups of unknown labels return
/// `UNKNOWN`, which never equals an interned id.
#[derive(Debug, Clone, Default)]
pub(crate) struct Interner {
    ids: BTreeMap<String, u32>,
}

pub(crate) const UNKNOWN: u32 = u32::MAX;

impl Interner {
    pub(crate) fn intern(&mut self, s: &str) -> u32 {
        if let Some(id) = self.ids.get(s) {
            return *id;
        }
        let id = self.ids.len() as u32;
        self.ids.insert(s.into(), id);
        id
    }

    pub(crate) fn lookup(&self, s: &str) -> u32 {
        self.ids.get(s).copied().unwrap_or(UNKNOWN)
    }
}

/// A tree in post-order with the arrays the DP needs.
#[derive(Debug, Clone)]
pub(crate) struct Flat {
    pub kinds: Vec<u8>,
    pub labels: Vec<u32>,
    /// Leftmost leaf descendant (post-order index) of each node.
    pub lmd: Vec<usize>,
    pub keyroots: Vec<usize>,
}

impl Flat {
    pub(crate) fn len(&self) -> usize {
        self.kinds.len()
    }

    pub(crate) fn build(root: &Node, label_id: &mut impl FnMut(&str) -> u32) -> Flat {
        let mut flat = Flat {
            kinds: Vec::new(),
            labels: Vec::new(),
            lmd: Vec::new(),
            keyroots: Vec::new(),
        };
        fn go(n: &Node, flat: &mut Flat, label_id: &mut impl FnMut(&str) -> u32) -> usize {
            let mut leftmost = None;
            for c in &n.children {
                let l = go(c, flat, label_id);
                leftmost.get_or_insert(l);
            }
            let me = flat.kinds.len();
            flat.kinds.push(n.kind.index());
            flat.labels.push(label_id(&n.label));
            let l = leftmost.unwrap_or(me);
            flat.lmd.push(l);
            l
        }
        go(root, &mut flat, label_id);
        // A keyroot is the highest node for its leftmost leaf.
        let n = flat.len();
        let mut seen = vec![false; n];
        for i in (0..n).rev() {
            let l = flat.lmd[i];
            if !seen[l] {
                seen[l] = true;
                flat.keyroots.push(i);
            }
        }
        flat.keyroots.reverse();
        flat
    }
}

fn relabel_cost(a: &Flat, i: usize, b: &Flat, j: usize) -> u32 {
    if a.kinds[i] != b.kinds[j] {
        FORBIDDEN
    } else if a.labels[i] == b.labels[j] && a.labels[i] != UNKNOWN {
        0
    } else {
        1
    }
}

/// Reusable DP state for one tree pair.
pub(crate) struct Dp<'t> {
    a: &'t Flat,
    b: &'t Flat,
    /// Subtree-to-subtree distances, row-major `a.len() x b.len()`.
    td: Vec<u32>,
    fd: Vec<u32>,
    cols: usize,
}

impl<'t> Dp<'t> {
    pub(crate) fn new(a: &'t Flat, b: &'t Flat) -> Self {
        let (n, m) = (a.len(), b.len());
        Dp {
            a,
            b,
            td: vec![0; n * m],
            fd: vec![0; (n + 1) * (m + 1)],
            cols: m + 1,
        }
    }

    fn td(&self, i: usize, j: usize) -> u32 {
        self.td[i * self.b.len() + j]
    }

    /// Fills the forest-distance table for the subtrees rooted at `i` and `j`,
    /// recording subtree distances along the way.
    fn forest(&mut self, i: usize, j: usize) {
        let (a, b, cols) = (self.a, self.b, self.cols);
        let (li, lj) = (a.lmd[i], b.lmd[j]);
        let (rows_n, cols_n) = (i - li + 1, j - lj + 1);
        let m = b.len();
        self.fd[0] = 0;
        for x in 1..=rows_n {
            self.fd[x * cols] = x as u32;
        }
        for y in 1..=cols_n {
            self.fd[y] = y as u32;
        }
        for x in 1..=rows_n {
            let i1 = li + x - 1;
            let li1 = a.lmd[i1];
            for y in 1..=cols_n {
                let j1 = lj + y - 1;
                let lj1 = b.lmd[j1];
                let del = self.fd[(x - 1) * cols + y] + 1;
                let ins = self.fd[x * cols + y - 1] + 1;
                let best = if li1 == li && lj1 == lj {
                    let rel = self.fd[(x - 1) * cols + y - 1] + relabel_cost(a, i1, b, j1);
                    let v = del.min(ins).min(rel);
                    self.td[i1 * m + j1] = v;
                    v
                } else {
                    let sub = self.fd[(li1 - li) * cols + (lj1 - lj)] + self.td[i1 * m + j1];
                    del.min(ins).min(sub)
                };
                self.fd[x * cols + y] = best;
            }
        }
    }

    pub(crate) fn distance(&mut self) -> usize {
        if self.a.len() == 0 || self.b.len() == 0 {
            return self.a.len() + self.b.len();
        }
        for ki in 0..self.a.keyroots.len() {
            for kj in 0..self.b.keyroots.len() {
                let (i, j) = (self.a.keyroots[ki], self.b.keyroots[kj]);
                self.forest(i, j);
            }
        }
        self.td(self.a.len() - 1, self.b.len() - 1) as usize
    }

    /// An optimal mapping as (a, b) post-order index pairs. Must be called
    /// after [`Dp::distance`].
    pub(crate) fn mapping(&mut self) -> Vec<(usize, usize)> {
        let mut pairs = Vec::new();
        if self.a.len() == 0 || self.b.len() == 0 {
            return pairs;
        }
        let cols = self.cols;
        let mut stack = vec![(self.a.len() - 1, self.b.len() - 1)];
        while let Some((i, j)) = stack.pop() {
            self.forest(i, j);
            let (li, lj) = (self.a.lmd[i], self.b.lmd[j]);
            let (mut x, mut y) = (i - li + 1, j - lj + 1);
            while x > 0 || y > 0 {
                let here = self.fd[x * cols + y];
                if x > 0 && here == self.fd[(x - 1) * cols + y] + 1 {
                    x -= 1;
                } else if y > 0 && here == self.fd[x * cols + y - 1] + 1 {
                    y -= 1;
                } else {
                    let (i1, j1) = (li + x - 1, lj + y - 1);
                    let (li1, lj1) = (self.a.lmd[i1], self.b.lmd[j1]);
                    if li1 == li && lj1 == lj {
                        pairs.push((i1, j1));
                        x -= 1;
                        y -= 1;
                    } else {
                        stack.push((i1, j1));
                        x = li1 - li;
                        y = lj1 - lj;
                    }
                }
            }
        }
        pairs.sort_unstable();
        pairs
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::minilang::{Node, NodeKind};

    fn flat_pair(a: &Node, b: &Node) -> (Flat, Flat) {
        let mut interner = Interner::default();
        let fa = Flat::build(a, &mut |s| interner.intern(s));
        let fb = Flat::build(b, &mut |s| interner.intern(s));
        (fa, fb)
    }

    fn t(label: &str, children: Vec<Node>) -> Node {
        Node::new(NodeKind::Block, label, children)
    }

    #[test]
    fn classic_example() {
        // The textbook Zhang-Shasha example has distance 2:
        // f(d(a c(b)) e) vs f(c(d(a b)) e)
        let a = t(
            "f",
            vec![
                t("d", vec![t("a", vec![]), t("c", vec![t("b", vec![])])]),
                t("e", vec![]),
            ],
        );
        let b = t(
            "f",
            vec![
                t("c", vec![t("d", vec![t("a", vec![]), t("b", vec![])])]),
                t("e", vec![]),
            ],
        );
        let (fa, fb) = flat_pair(&a, &b);
        assert_eq!(Dp::new(&fa, &fb).distance(), 2);
    }

    #[test]
    fn keyroots_and_leftmost_leaves() {
        let a = t("r", vec![t("x", vec![t("y", vec![])]), t("z", vec![])]);
        let (fa, _) = flat_pair(&a, &a);
        // post-order: y x z r
        assert_eq!(fa.lmd, [0, 0, 2, 0]);
        assert_eq!(fa.keyroots, [2, 3]);
    }

    #[test]
    fn kind_mismatch_forces_delete_and_insert() {
        let a = Node::ident("x");
        let b = Node::literal("x");
        let (fa, fb) = flat_pair(&a, &b);
        let mut dp = Dp::new(&fa, &fb);
        assert_eq!(dp.distance(), 2);
        assert!(dp.mapping().is_empty());
    }

    #[test]
    fn unknown_labels_never_match() {
        let mut interner = Interner::default();
        let fb = Flat::build(&Node::ident("b"), &mut |s| interner.intern(s));
        let fa = Flat::build(&Node::ident("a"), &mut |s| interner.lookup(s));
        assert_eq!(fa.labels[0], UNKNOWN);
        assert_eq!(Dp::new(&fa, &fb).distance(), 1);
    }
}
