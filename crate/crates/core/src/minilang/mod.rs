//! MiniLang: a small typed imperative language whose syntax trees are the
//! search space of the mutation engine.
//!
//! Every tree is stored as generic `(kind, label, children)` nodes so that
//! mutations and tree differencing are uniform rewrites. Operator tokens are
//! folded into the label of their expression node.
//!
//! | kind         | label            | children                        |
//! |--------------|------------------|---------------------------------|
//! | Program      |                  | FunctionDecl*                   |
//! | FunctionDecl | name             | TypeRef, Param*, Block          |
//! | Param        |                  | TypeRef, Identifier             |
//! | TypeRef      | type name        |                                 |
//! | Block        |                  | statement*                      |
//! | VarDecl      | name             | TypeRef, expr?                  |
//! | Assign       |                  | Identifier, expr                |
//! | If           |                  | expr, stmt, stmt?               |
//! | While        |                  | expr, stmt                      |
//! | Return       |                  | expr?                           |
//! | ExprStmt     |                  | expr                            |
//! | BinaryExpr   | operator         | expr, expr                      |
//! | UnaryExpr    | `-` or `!`       | expr                            |
//! | IncDecExpr   | `++` or `--`     | expr                            |
//! | Call         | callee           | expr*                           |
//! | Identifier   | name             |                                 |
//! | Literal      | lexeme           |                                 |

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

mod ast;
pub mod gen;
mod hash;
mod lexer;
mod parser;
mod printer;

pub use ast::{
    default_literal, Ast, LiteralKind, Node, NodeKind, NodePath, ValidationError, BINARY_OPS,
    TYPE_NAMES,
};
pub use hash::{canonical_hash, node_digest, Digest};
pub use parser::parse;
pub use printer::pretty_print;

/// Syntax error with 1-based position and the set of tokens that would have
/// been accepted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub expected: Vec<String>,
    pub found: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: expected ", self.line, self.column)?;
        for (i, e) in self.expected.iter().enumerate() {
            if i > 0 {
                f.write_str(" | ")?;
            }
            write!(f, "`{e}`")?;
        }
        write!(f, ", found `{}`", self.found)
    }
}

impl core::error::Error for ParseError {}

/// A fixed/buggy source pair as loaded from a corpus.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SourcePair {
    pub id: String,
    pub project: String,
    pub fixed_source: String,
    pub buggy_source: String,
}

impl SourcePair {
    pub fn parse(&self) -> Result<(Ast, Ast), ParseError> {
        Ok((parse(&self.fixed_source)?, parse(&self.buggy_source)?))
    }
}
