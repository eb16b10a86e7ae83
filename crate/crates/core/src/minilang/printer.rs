use alloc::string::String;

use super::ast::{Ast, Node, NodeKind};

/// Renders an AST as canonical MiniLang text: two-space indentation, one
/// statement per line, minimal parentheses.
pub fn pretty_print(ast: &Ast) -> String {
    let mut out = String::new();
    for (i, f) in ast.root.children.iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        function(f, &mut out);
    }
    out
}

fn function(f: &Node, out: &mut String) {
    let n = f.children.len();
    out.push_str(&f.children[0].label);
    out.push(' ');
    out.push_str(&f.label);
    out.push('(');
    for (i, p) in f.children[1..n - 1].iter().enumerate() {
        if i > 0 {
            out.push_str(", ");
        }
        out.push_str(&p.children[0].label);
        out.push(' ');
        out.push_str(&p.children[1].label);
    }
    out.push_str(") ");
    block(&f.children[n - 1], 0, out);
    out.push('\n');
}

fn indent(depth: usize, out: &mut String) {
    for _ in 0..depth {
        out.push_str("  ");
    }
}

// Writes `{ ... }` starting at the current column; no trailing newline.
fn block(b: &Node, depth: usize, out: &mut String) {
    out.push_str("{\n");
    for s in &b.children {
        statement(s, depth + 1, out);
    }
    indent(depth, out);
    out.push('}');
}

// Body of an if/while: blocks stay on the header line, anything else goes on
// its own indented line.
fn body(s: &Node, depth: usize, out: &mut String) {
    if s.kind == NodeKind::Block {
        out.push(' ');
        block(s, depth, out);
    } else {
        out.push('\n');
        statement_inline(s, depth + 1, out);
    }
}

fn statement(s: &Node, depth: usize, out: &mut String) {
    statement_inline(s, depth, out);
    out.push('\n');
}

fn statement_inline(s: &Node, depth: usize, out: &mut String) {
    indent(depth, out);
    match s.kind {
        NodeKind::Block => block(s, depth, out),
        NodeKind::VarDecl => {
            out.push_str(&s.children[0].label);
            out.push(' ');
            out.push_str(&s.label);
            if let Some(init) = s.children.get(1) {
                out.push_str(" = ");
                expr(init, out);
            }
            out.push(';');
        }
        NodeKind::Assign => {
            out.push_str(&s.children[0].label);
            out.push_str(" = ");
            expr(&s.children[1], out);
            out.push(';');
        }
        NodeKind::If => {
            out.push_str("if (");
            expr(&s.children[0], out);
            out.push(')');
            body(&s.children[1], depth, out);
            if let Some(alt) = s.children.get(2) {
                if s.children[1].kind == NodeKind::Block {
                    out.push(' ');
                } else {
                    out.push('\n');
                    indent(depth, out);
                }
                out.push_str("else");
                body(alt, depth, out);
            }
        }
        NodeKind::While => {
            out.push_str("while (");
            expr(&s.children[0], out);
            out.push(')');
            body(&s.children[1], depth, out);
        }
        NodeKind::Return => {
            out.push_str("return");
            if let Some(v) = s.children.first() {
                out.push(' ');
                expr(v, out);
            }
            out.push(';');
        }
        NodeKind::ExprStmt => {
            expr(&s.children[0], out);
            out.push(';');
        }
        _ => expr(s, out),
    }
}

pub(crate) fn precedence(op: &str) -> u8 {
    match op {
        "||" => 1,
        "&&" => 2,
        "|" => 3,
        "^" => 4,
        "&" => 5,
        "==" | "!=" => 6,
        "<" | "<=" | ">" | ">=" => 7,
        "<<" | ">>" => 8,
        "+" | "-" => 9,
        _ => 10,
    }
}

fn parenthesized(e: &Node, wrap: bool, out: &mut String) {
    if wrap {
        out.push('(');
        expr(e, out);
        out.push(')');
    } else {
        expr(e, out);
    }
}

fn expr(e: &Node, out: &mut String) {
    match e.kind {
        NodeKind::BinaryExpr => {
            let p = precedence(&e.label);
            let (l, r) = (&e.children[0], &e.children[1]);
            let binds = |c: &Node| (c.kind == NodeKind::BinaryExpr).then(|| precedence(&c.label));
            parenthesized(l, binds(l).is_some_and(|cp| cp < p), out);
            out.push(' ');
            out.push_str(&e.label);
            out.push(' ');
            parenthesized(r, binds(r).is_some_and(|cp| cp <= p), out);
        }
        NodeKind::UnaryExpr => {
            out.push_str(&e.label);
            let c = &e.children[0];
            // `- -x` would otherwise lex as a decrement
            let wrap = c.kind == NodeKind::BinaryExpr
                || (c.kind == NodeKind::UnaryExpr && c.label == e.label);
            parenthesized(c, wrap, out);
        }
        NodeKind::IncDecExpr => {
            let c = &e.children[0];
            parenthesized(
                c,
                matches!(c.kind, NodeKind::BinaryExpr | NodeKind::UnaryExpr),
                out,
            );
            out.push_str(&e.label);
        }
        NodeKind::Call => {
            out.push_str(&e.label);
            out.push('(');
            for (i, a) in e.children.iter().enumerate() {
                if i > 0 {
                    out.push_str(", ");
                }
                expr(a, out);
            }
            out.push(')');
        }
        _ => out.push_str(&e.label),
    }
}
