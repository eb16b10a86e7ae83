//! Turning an optimal node mapping into a replayable edit script.
//!
//! The script is produced by executing it on a working copy of the left tree:
//! relabel mapped nodes, delete unmapped left nodes, then insert unmapped
//! right nodes in pre-order. Because the mapping preserves ancestry and
//! sibling order, after the deletions the working forest is exactly the right
//! tree restricted to mapped nodes, and each insertion keeps it the right tree
//! restricted to the nodes present so far.

use alloc::string::String;
use alloc::vec::Vec;

use super::EditOp;
use crate::minilang::{Node, NodePath};

struct Info<'a> {
    node: &'a Node,
    parent: Option<usize>,
    pre: usize,
    size: usize,
}

// Post-order numbering, matching `Flat::build`.
fn index(root: &Node) -> Vec<Info<'_>> {
    fn go<'a>(n: &'a Node, out: &mut Vec<Info<'a>>, pre: &mut usize) -> usize {
        let my_pre = *pre;
        *pre += 1;
        let kids: Vec<usize> = n.children.iter().map(|c| go(c, out, pre)).collect();
        let me = out.len();
        out.push(Info {
            node: n,
            parent: None,
            pre: my_pre,
            size: *pre - my_pre,
        });
        for k in kids {
            out[k].parent = Some(me);
        }
        me
    }
    let mut out = Vec::new();
    go(root, &mut out, &mut 0);
    out
}

struct Work {
    label: String,
    a_id: Option<usize>,
    b_id: Option<usize>,
    children: Vec<Work>,
}

fn working_copy(root: &Node) -> Work {
    fn go(n: &Node, next: &mut usize) -> Work {
        let children: Vec<Work> = n.children.iter().map(|c| go(c, next)).collect();
        let id = *next;
        *next += 1;
        Work {
            label: n.label.clone(),
            a_id: Some(id),
            b_id: None,
            children,
        }
    }
    go(root, &mut 0)
}

fn find(forest: &[Work], pred: &impl Fn(&Work) -> bool) -> Option<Vec<usize>> {
    for (i, w) in forest.iter().enumerate() {
        if pred(w) {
            return Some(alloc::vec![i]);
        }
        if let Some(mut rest) = find(&w.children, pred) {
            rest.insert(0, i);
            return Some(rest);
        }
    }
    None
}

fn at_mut<'a>(forest: &'a mut [Work], path: &[usize]) -> &'a mut Work {
    let (first, rest) = path.split_first().expect("non-empty path");
    let mut w = &mut forest[*first];
    for &i in rest {
        w = &mut w.children[i];
    }
    w
}

fn container_mut<'a>(forest: &'a mut Vec<Work>, parent: &[usize]) -> &'a mut Vec<Work> {
    if parent.is_empty() {
        forest
    } else {
        &mut at_mut(forest, parent).children
    }
}

pub(super) fn from_mapping(a: &Node, b: &Node, mapping: &[(usize, usize)]) -> Vec<EditOp> {
    let ai = index(a);
    let bi = index(b);
    let mut a_to_b = alloc::vec![None; ai.len()];
    let mut b_mapped = alloc::vec![false; bi.len()];
    for &(i, j) in mapping {
        a_to_b[i] = Some(j);
        b_mapped[j] = true;
    }
    let mut a_pre: Vec<usize> = (0..ai.len()).collect();
    a_pre.sort_by_key(|&i| ai[i].pre);
    let mut b_pre: Vec<usize> = (0..bi.len()).collect();
    b_pre.sort_by_key(|&j| bi[j].pre);

    let mut forest = alloc::vec![working_copy(a)];
    let mut script = Vec::new();

    for &i in &a_pre {
        let Some(j) = a_to_b[i] else { continue };
        let path = find(&forest, &|w| w.a_id == Some(i)).expect("mapped node present");
        let w = at_mut(&mut forest, &path);
        w.b_id = Some(j);
        let label = &bi[j].node.label;
        if w.label != *label {
            w.label.clone_from(label);
            script.push(EditOp::Relabel {
                site: NodePath(path),
                label: label.clone(),
            });
        }
    }

    for &i in &a_pre {
        if a_to_b[i].is_some() {
            continue;
        }
        let path = find(&forest, &|w| w.a_id == Some(i)).expect("unmapped node present");
        let (idx, parent) = path.split_last().expect("non-empty path");
        let siblings = container_mut(&mut forest, parent);
        let removed = siblings.remove(*idx);
        for (k, c) in removed.children.into_iter().enumerate() {
            siblings.insert(idx + k, c);
        }
        script.push(EditOp::Delete {
            site: NodePath(path),
        });
    }

    for &j in &b_pre {
        if b_mapped[j] {
            continue;
        }
        let parent_path = match bi[j].parent {
            None => Vec::new(),
            Some(p) => find(&forest, &|w| w.b_id == Some(p)).expect("parent inserted before child"),
        };
        let (lo, hi) = (bi[j].pre, bi[j].pre + bi[j].size);
        let siblings = container_mut(&mut forest, &parent_path);
        let pre_of = |w: &Work| bi[w.b_id.expect("all present nodes are mapped")].pre;
        let pos = siblings.iter().filter(|w| pre_of(w) < lo).count();
        let adopt = siblings
            .iter()
            .filter(|w| (lo..hi).contains(&pre_of(w)))
            .count();
        let adopted: Vec<Work> = siblings.drain(pos..pos + adopt).collect();
        let node = bi[j].node;
        siblings.insert(
            pos,
            Work {
                label: node.label.clone(),
                a_id: None,
                b_id: Some(j),
                children: adopted,
            },
        );
        let mut site = parent_path;
        site.push(pos);
        script.push(EditOp::Insert {
            site: NodePath(site),
            kind: node.kind,
            label: node.label.clone(),
            adopt,
        });
    }
    script
}

fn node_mut<'a>(forest: &'a mut [Node], path: &[usize]) -> Option<&'a mut Node> {
    let (first, rest) = path.split_first()?;
    forest.get_mut(*first)?.get_mut(rest)
}

fn siblings_mut<'a>(forest: &'a mut Vec<Node>, parent: &[usize]) -> Option<&'a mut Vec<Node>> {
    if parent.is_empty() {
        Some(forest)
    } else {
        node_mut(forest, parent).map(|n| &mut n.children)
    }
}

pub(super) fn apply_op(forest: &mut Vec<Node>, op: &EditOp) -> Result<(), &'static str> {
    match op {
        EditOp::Relabel { site, label } => {
            let n = node_mut(forest, &site.0).ok_or("relabel site does not exist")?;
            n.label.clone_from(label);
        }
        EditOp::Delete { site } => {
            let (idx, parent) = site.0.split_last().ok_or("empty delete site")?;
            let siblings = siblings_mut(forest, parent).ok_or("delete site does not exist")?;
            if *idx >= siblings.len() {
                return Err("delete site does not exist");
            }
            let removed = siblings.remove(*idx);
            for (k, c) in removed.children.into_iter().enumerate() {
                siblings.insert(idx + k, c);
            }
        }
        EditOp::Insert {
            site,
            kind,
            label,
            adopt,
        } => {
            let (idx, parent) = site.0.split_last().ok_or("empty insert site")?;
            let siblings = siblings_mut(forest, parent).ok_or("insert parent does not exist")?;
            if idx + adopt > siblings.len() {
                return Err("insert position out of range");
            }
            let children: Vec<Node> = siblings.drain(*idx..idx + adopt).collect();
            siblings.insert(*idx, Node::new(*kind, label.clone(), children));
        }
    }
    Ok(())
}
