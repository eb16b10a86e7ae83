use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use serde::{Deserialize, Serialize};

/// Closed set of MiniLang node kinds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum NodeKind {
    Program,
    FunctionDecl,
    Param,
    TypeRef,
    Block,
    VarDecl,
    Assign,
    If,
    While,
    Return,
    ExprStmt,
    BinaryExpr,
    UnaryExpr,
    IncDecExpr,
    Call,
    Identifier,
    Literal,
}

impl NodeKind {
    pub const ALL: [NodeKind; 17] = [
        NodeKind::Program,
        NodeKind::FunctionDecl,
        NodeKind::Param,
        NodeKind::TypeRef,
        NodeKind::Block,
        NodeKind::VarDecl,
        NodeKind::Assign,
        NodeKind::If,
        NodeKind::While,
        NodeKind::Return,
        NodeKind::ExprStmt,
        NodeKind::BinaryExpr,
        NodeKind::UnaryExpr,
        NodeKind::IncDecExpr,
        NodeKind::Call,
        NodeKind::Identifier,
        NodeKind::Literal,
    ];

    pub fn name(self) -> &'static str {
        match self {
            NodeKind::Program => "Program",
            NodeKind::FunctionDecl => "FunctionDecl",
            NodeKind::Param => "Param",
            NodeKind::TypeRef => "TypeRef",
            NodeKind::Block => "Block",
            NodeKind::VarDecl => "VarDecl",
            NodeKind::Assign => "Assign",
            NodeKind::If => "If",
            NodeKind::While => "While",
            NodeKind::Return => "Return",
            NodeKind::ExprStmt => "ExprStmt",
            NodeKind::BinaryExpr => "BinaryExpr",
            NodeKind::UnaryExpr => "UnaryExpr",
            NodeKind::IncDecExpr => "IncDecExpr",
            NodeKind::Call => "Call",
            NodeKind::Identifier => "Identifier",
            NodeKind::Literal => "Literal",
        }
    }

    /// Stable small integer used by digests and the tree differ.
    pub fn index(self) -> u8 {
        self as u8
    }

    pub fn is_statement(self) -> bool {
        matches!(
            self,
            NodeKind::Block
                | NodeKind::VarDecl
                | NodeKind::Assign
                | NodeKind::If
                | NodeKind::While
                | NodeKind::Return
                | NodeKind::ExprStmt
        )
    }

    pub fn is_expression(self) -> bool {
        matches!(
            self,
            NodeKind::BinaryExpr
                | NodeKind::UnaryExpr
                | NodeKind::IncDecExpr
                | NodeKind::Call
                | NodeKind::Identifier
                | NodeKind::Literal
        )
    }

    /// Kinds whose label must be non-empty. All others carry an empty label.
    pub fn is_labelled(self) -> bool {
        matches!(
            self,
            NodeKind::Identifier
                | NodeKind::Literal
                | NodeKind::BinaryExpr
                | NodeKind::UnaryExpr
                | NodeKind::IncDecExpr
                | NodeKind::Call
                | NodeKind::FunctionDecl
                | NodeKind::VarDecl
                | NodeKind::TypeRef
        )
    }
}

impl fmt::Display for NodeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Child-index sequence from the root. The empty path addresses the root.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct NodePath(pub Vec<usize>);

impl NodePath {
    pub fn root() -> Self {
        NodePath(Vec::new())
    }

    pub fn child(&self, index: usize) -> Self {
        let mut steps = self.0.clone();
        steps.push(index);
        NodePath(steps)
    }

    pub fn parent(&self) -> Option<(NodePath, usize)> {
        let (last, rest) = self.0.split_last()?;
        Some((NodePath(rest.to_vec()), *last))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for NodePath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("/")?;
        for (i, step) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str("/")?;
            }
            write!(f, "{step}")?;
        }
        Ok(())
    }
}

/// A generic (kind, label, children) tree node.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Node {
    pub kind: NodeKind,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub label: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub children: Vec<Node>,
}

impl Node {
    pub fn new(kind: NodeKind, label: impl Into<String>, children: Vec<Node>) -> Self {
        Node {
            kind,
            label: label.into(),
            children,
        }
    }

    pub fn leaf(kind: NodeKind, label: impl Into<String>) -> Self {
        Node::new(kind, label, Vec::new())
    }

    pub fn ident(name: impl Into<String>) -> Self {
        Node::leaf(NodeKind::Identifier, name)
    }

    pub fn literal(lexeme: impl Into<String>) -> Self {
        Node::leaf(NodeKind::Literal, lexeme)
    }

    /// Number of nodes in this subtree.
    pub fn size(&self) -> usize {
        1 + self.children.iter().map(Node::size).sum::<usize>()
    }

    pub fn get(&self, path: &[usize]) -> Option<&Node> {
        let mut node = self;
        for &i in path {
            node = node.children.get(i)?;
        }
        Some(node)
    }

    pub fn get_mut(&mut self, path: &[usize]) -> Option<&mut Node> {
        let mut node = self;
        for &i in path {
            node = node.children.get_mut(i)?;
        }
        Some(node)
    }

    /// Pre-order traversal with paths.
    pub fn walk<'a>(&'a self, f: &mut impl FnMut(&NodePath, &'a Node)) {
        fn go<'a>(node: &'a Node, path: &mut Vec<usize>, f: &mut impl FnMut(&NodePath, &'a Node)) {
            let p = NodePath(path.clone());
            f(&p, node);
            for (i, c) in node.children.iter().enumerate() {
                path.push(i);
                go(c, path, f);
                path.pop();
            }
        }
        go(self, &mut Vec::new(), f);
    }
}

/// An ordered labeled MiniLang syntax tree.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Ast {
    pub root: Node,
}

impl Ast {
    pub fn new(root: Node) -> Self {
        Ast { root }
    }

    pub fn size(&self) -> usize {
        self.root.size()
    }

    pub fn get(&self, path: &NodePath) -> Option<&Node> {
        self.root.get(&path.0)
    }

    /// Checks the node-kind table: labels, arities and child kinds.
    pub fn validate(&self) -> Result<(), ValidationError> {
        if self.root.kind != NodeKind::Program {
            return Err(ValidationError::new(
                NodePath::root(),
                "root must be a Program",
            ));
        }
        let mut err = None;
        self.root.walk(&mut |path, node| {
            if err.is_none() {
                if let Err(msg) = check_node(node) {
                    err = Some(ValidationError::new(path.clone(), msg));
                }
            }
        });
        match err {
            Some(e) => Err(e),
            None => Ok(()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid node at {path}: {message}")]
pub struct ValidationError {
    pub path: NodePath,
    pub message: &'static str,
}

impl ValidationError {
    fn new(path: NodePath, message: &'static str) -> Self {
        ValidationError { path, message }
    }
}

pub const TYPE_NAMES: [&str; 6] = ["int", "float", "bool", "string", "void", "ref"];

pub const BINARY_OPS: [&str; 18] = [
    "||", "&&", "|", "^", "&", "==", "!=", "<", "<=", ">", ">=", "<<", ">>", "+", "-", "*", "/",
    "%",
];

fn check_node(node: &Node) -> Result<(), &'static str> {
    use NodeKind::*;
    let kinds: Vec<NodeKind> = node.children.iter().map(|c| c.kind).collect();
    let n = kinds.len();
    if node.kind.is_labelled() == node.label.is_empty() {
        return Err("label presence does not match node kind");
    }
    let all_exprs = |ks: &[NodeKind]| ks.iter().all(|k| k.is_expression());
    let all_stmts = |ks: &[NodeKind]| ks.iter().all(|k| k.is_statement());
    let ok = match node.kind {
        Program => kinds.iter().all(|k| *k == FunctionDecl),
        FunctionDecl => {
            n >= 2
                && kinds[0] == TypeRef
                && kinds[n - 1] == Block
                && kinds[1..n - 1].iter().all(|k| *k == Param)
        }
        Param => kinds == [TypeRef, Identifier],
        TypeRef => n == 0 && TYPE_NAMES.contains(&node.label.as_str()),
        Block => all_stmts(&kinds),
        VarDecl => (n == 1 || n == 2) && kinds[0] == TypeRef && all_exprs(&kinds[1..]),
        Assign => n == 2 && kinds[0] == Identifier && kinds[1].is_expression(),
        If => (n == 2 || n == 3) && kinds[0].is_expression() && all_stmts(&kinds[1..]),
        While => n == 2 && kinds[0].is_expression() && kinds[1].is_statement(),
        Return => n <= 1 && all_exprs(&kinds),
        ExprStmt => n == 1 && kinds[0].is_expression(),
        BinaryExpr => n == 2 && all_exprs(&kinds) && BINARY_OPS.contains(&node.label.as_str()),
        UnaryExpr => n == 1 && all_exprs(&kinds) && (node.label == "-" || node.label == "!"),
        IncDecExpr => n == 1 && all_exprs(&kinds) && (node.label == "++" || node.label == "--"),
        Call => all_exprs(&kinds),
        Identifier => n == 0,
        Literal => n == 0 && LiteralKind::of(&node.label).is_some(),
    };
    if ok {
        Ok(())
    } else {
        Err("children do not match the arity table")
    }
}

/// Lexical category of a literal, derived from its lexeme.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum LiteralKind {
    Int,
    Float,
    Bool,
    String,
    Null,
}

impl LiteralKind {
    pub fn of(lexeme: &str) -> Option<LiteralKind> {
        match lexeme {
            "true" | "false" => return Some(LiteralKind::Bool),
            "null" => return Some(LiteralKind::Null),
            _ => {}
        }
        if lexeme.len() >= 2 && lexeme.starts_with('"') && lexeme.ends_with('"') {
            return Some(LiteralKind::String);
        }
        let bytes = lexeme.as_bytes();
        if bytes.is_empty() || !bytes[0].is_ascii_digit() {
            return None;
        }
        match lexeme.split_once('.') {
            None if bytes.iter().all(u8::is_ascii_digit) => Some(LiteralKind::Int),
            Some((int, frac))
                if !frac.is_empty()
                    && int.bytes().all(|b| b.is_ascii_digit())
                    && frac.bytes().all(|b| b.is_ascii_digit()) =>
            {
                Some(LiteralKind::Float)
            }
            _ => None,
        }
    }

    /// Literal kind that a value of the declared type takes.
    pub fn for_type(ty: &str) -> Option<LiteralKind> {
        match ty {
            "int" => Some(LiteralKind::Int),
            "float" => Some(LiteralKind::Float),
            "bool" => Some(LiteralKind::Bool),
            "string" => Some(LiteralKind::String),
            "ref" => Some(LiteralKind::Null),
            _ => None,
        }
    }

    pub fn is_numeric(self) -> bool {
        matches!(self, LiteralKind::Int | LiteralKind::Float)
    }
}

/// Default literal for a declared type: `0`, `0.0`, `false`, `""`, `null`.
pub fn default_literal(ty: &str) -> Option<&'static str> {
    match ty {
        "int" => Some("0"),
        "float" => Some("0.0"),
        "bool" => Some("false"),
        "string" => Some("\"\""),
        "ref" => Some("null"),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn literal_kinds() {
        assert_eq!(LiteralKind::of("0"), Some(LiteralKind::Int));
        assert_eq!(LiteralKind::of("12.50"), Some(LiteralKind::Float));
        assert_eq!(LiteralKind::of("\"\""), Some(LiteralKind::String));
        assert_eq!(LiteralKind::of("null"), Some(LiteralKind::Null));
        assert_eq!(LiteralKind::of("1."), None);
        assert_eq!(LiteralKind::of("x"), None);
    }

    #[test]
    fn arity_violations_are_reported() {
        let bad = Ast::new(Node::new(
            NodeKind::Program,
            "",
            vec![Node::new(
                NodeKind::FunctionDecl,
                "f",
                vec![
                    Node::leaf(NodeKind::TypeRef, "int"),
                    Node::new(
                        NodeKind::Block,
                        "",
                        vec![Node::new(
                            NodeKind::Return,
                            "",
                            vec![Node::new(NodeKind::BinaryExpr, "+", vec![Node::ident("a")])],
                        )],
                    ),
                ],
            )],
        ));
        let err = bad.validate().unwrap_err();
        assert_eq!(err.path, NodePath(vec![0, 1, 0, 0]));
    }

    #[test]
    fn path_display() {
        assert_eq!(alloc::format!("{}", NodePath(vec![0, 2, 1])), "/0/2/1");
        assert_eq!(alloc::format!("{}", NodePath::root()), "/");
    }
}
