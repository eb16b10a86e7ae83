use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use super::ast::{Ast, Node, NodeKind, TYPE_NAMES};
use super::lexer::{tokenize, Tok, Token};
use super::ParseError;

/// Parses MiniLang source into its AST. Whitespace and comments are dropped.
pub fn parse(source: &str) -> Result<Ast, ParseError> {
    let tokens = tokenize(source)?;
    let mut p = Parser {
        tokens,
        pos: 0,
        returns_value: false,
    };
    let mut functions = Vec::new();
    while !p.at_eof() {
        functions.push(p.function()?);
    }
    Ok(Ast::new(Node::new(NodeKind::Program, "", functions)))
}

// Binary operator precedence, loosest first.
const LEVELS: [&[&str]; 10] = [
    &["||"],
    &["&&"],
    &["|"],
    &["^"],
    &["&"],
    &["==", "!="],
    &["<", "<=", ">", ">="],
    &["<<", ">>"],
    &["+", "-"],
    &["*", "/", "%"],
];

const EXPR_START: &[&str] = &["expression"];

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    // Whether the enclosing function is non-void, which makes `return;` illegal.
    returns_value: bool,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.tokens[self.pos].tok
    }

    fn peek_at(&self, offset: usize) -> &Tok {
        let i = (self.pos + offset).min(self.tokens.len() - 1);
        &self.tokens[i].tok
    }

    fn at_eof(&self) -> bool {
        *self.peek() == Tok::Eof
    }

    fn bump(&mut self) -> Tok {
        let t = self.tokens[self.pos].tok.clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    fn is_sym(&self, s: &str) -> bool {
        matches!(self.peek(), Tok::Sym(t) if *t == s)
    }

    fn eat(&mut self, s: &str) -> bool {
        if self.is_sym(s) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn error(&self, expected: &[&str]) -> ParseError {
        let t = &self.tokens[self.pos];
        ParseError {
            line: t.line,
            column: t.column,
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found: t.tok.describe(),
        }
    }

    fn expect(&mut self, s: &str) -> Result<(), ParseError> {
        if self.eat(s) {
            Ok(())
        } else {
            Err(self.error(&[s]))
        }
    }

    fn ident(&mut self) -> Result<String, ParseError> {
        match self.peek() {
            Tok::Ident(name) => {
                let name = name.clone();
                self.bump();
                Ok(name)
            }
            _ => Err(self.error(&["identifier"])),
        }
    }

    fn at_type(&self) -> bool {
        matches!(self.peek(), Tok::Sym(t) if TYPE_NAMES.contains(t))
    }

    fn type_ref(&mut self) -> Result<Node, ParseError> {
        match self.peek() {
            Tok::Sym(t) if TYPE_NAMES.contains(t) => {
                let t = *t;
                self.bump();
                Ok(Node::leaf(NodeKind::TypeRef, t))
            }
            _ => Err(self.error(&TYPE_NAMES)),
        }
    }

    fn function(&mut self) -> Result<Node, ParseError> {
        let ret = self.type_ref()?;
        let name = self.ident()?;
        self.expect("(")?;
        let mut children = vec![];
        self.returns_value = ret.label != "void";
        children.push(ret);
        if !self.is_sym(")") {
            loop {
                let ty = self.type_ref()?;
                let pname = self.ident()?;
                children.push(Node::new(NodeKind::Param, "", vec![ty, Node::ident(pname)]));
                if !self.eat(",") {
                    break;
                }
            }
        }
        self.expect(")")?;
        children.push(self.block()?);
        Ok(Node::new(NodeKind::FunctionDecl, name, children))
    }

    fn block(&mut self) -> Result<Node, ParseError> {
        self.expect("{")?;
        let mut stmts = Vec::new();
        while !self.is_sym("}") {
            if self.at_eof() {
                return Err(self.error(&["}"]));
            }
            stmts.push(self.statement()?);
        }
        self.bump();
        Ok(Node::new(NodeKind::Block, "", stmts))
    }

    fn statement(&mut self) -> Result<Node, ParseError> {
        if self.is_sym("{") {
            return self.block();
        }
        if self.at_type() {
            let ty = self.type_ref()?;
            let name = self.ident()?;
            let mut children = vec![ty];
            if self.eat("=") {
                children.push(self.expr()?);
            }
            self.expect(";")?;
            return Ok(Node::new(NodeKind::VarDecl, name, children));
        }
        if self.eat("if") {
            self.expect("(")?;
            let cond = self.expr()?;
            self.expect(")")?;
            let then = self.statement()?;
            let mut children = vec![cond, then];
            if self.eat("else") {
                children.push(self.statement()?);
            }
            return Ok(Node::new(NodeKind::If, "", children));
        }
        if self.eat("while") {
            self.expect("(")?;
            let cond = self.expr()?;
            self.expect(")")?;
            let body = self.statement()?;
            return Ok(Node::new(NodeKind::While, "", vec![cond, body]));
        }
        if self.eat("return") {
            if !self.returns_value && self.eat(";") {
                return Ok(Node::new(NodeKind::Return, "", vec![]));
            }
            let value = self.expr()?;
            self.expect(";")?;
            return Ok(Node::new(NodeKind::Return, "", vec![value]));
        }
        if matches!(self.peek(), Tok::Ident(_)) && matches!(self.peek_at(1), Tok::Sym("=")) {
            let target = self.ident()?;
            self.bump();
            let value = self.expr()?;
            self.expect(";")?;
            return Ok(Node::new(
                NodeKind::Assign,
                "",
                vec![Node::ident(target), value],
            ));
        }
        let e = self.expr()?;
        self.expect(";")?;
        Ok(Node::new(NodeKind::ExprStmt, "", vec![e]))
    }

    fn expr(&mut self) -> Result<Node, ParseError> {
        self.binary(0)
    }

    fn binary(&mut self, level: usize) -> Result<Node, ParseError> {
        if level == LEVELS.len() {
            return self.unary();
        }
        let mut lhs = self.binary(level + 1)?;
        loop {
            let op = match self.peek() {
                Tok::Sym(s) if LEVELS[level].contains(s) => *s,
                _ => break,
            };
            self.bump();
            let rhs = self.binary(level + 1)?;
            lhs = Node::new(NodeKind::BinaryExpr, op, vec![lhs, rhs]);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Node, ParseError> {
        for op in ["-", "!"] {
            if self.eat(op) {
                let operand = self.unary()?;
                return Ok(Node::new(NodeKind::UnaryExpr, op, vec![operand]));
            }
        }
        let mut e = self.primary()?;
        loop {
            let op = if self.is_sym("++") {
                "++"
            } else if self.is_sym("--") {
                "--"
            } else {
                break;
            };
            self.bump();
            e = Node::new(NodeKind::IncDecExpr, op, vec![e]);
        }
        Ok(e)
    }

    fn primary(&mut self) -> Result<Node, ParseError> {
        match self.peek().clone() {
            Tok::Int(s) | Tok::Float(s) | Tok::Str(s) => {
                self.bump();
                Ok(Node::literal(s))
            }
            Tok::Sym(kw @ ("true" | "false" | "null")) => {
                self.bump();
                Ok(Node::literal(kw))
            }
            Tok::Ident(name) => {
                self.bump();
                if self.eat("(") {
                    let mut args = Vec::new();
                    if !self.is_sym(")") {
                        loop {
                            args.push(self.expr()?);
                            if !self.eat(",") {
                                break;
                            }
                        }
                    }
                    self.expect(")")?;
                    Ok(Node::new(NodeKind::Call, name, args))
                } else {
                    Ok(Node::ident(name))
                }
            }
            Tok::Sym("(") => {
                self.bump();
                let e = self.expr()?;
                self.expect(")")?;
                Ok(e)
            }
            _ => Err(self.error(EXPR_START)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ret_expr(src: &str) -> Node {
        let ast = parse(src).unwrap();
        let block = ast.root.children[0].children.last().unwrap();
        block.children[0].children[0].clone()
    }

    #[test]
    fn minimal_function() {
        let ast = parse("int f(){ return 0; }").unwrap();
        let f = &ast.root.children[0];
        assert_eq!((f.kind, f.label.as_str()), (NodeKind::FunctionDecl, "f"));
        let ret = &f.children[1].children[0];
        assert_eq!(ret.kind, NodeKind::Return);
        assert_eq!(ret.children[0], Node::literal("0"));
        ast.validate().unwrap();
    }

    #[test]
    fn binary_over_identifiers() {
        let e = ret_expr("int f(int a){ return a + a; }");
        assert_eq!(
            e,
            Node::new(
                NodeKind::BinaryExpr,
                "+",
                vec![Node::ident("a"), Node::ident("a")]
            )
        );
    }

    #[test]
    fn missing_return_value_is_an_error() {
        let err = parse("int f(){ return ; }").unwrap_err();
        assert_eq!((err.line, err.column), (1, 17));
        assert_eq!(err.found, ";");
        assert_eq!(err.expected, vec!["expression".to_string()]);
        // void functions may return without a value
        parse("void f(){ return ; }").unwrap();
    }

    #[test]
    fn precedence_and_associativity() {
        let e = ret_expr("int f(){ return 1 - 2 - 3 * 4; }");
        assert_eq!(e.label, "-");
        assert_eq!(e.children[0].label, "-");
        assert_eq!(e.children[1].label, "*");
        let e = ret_expr("bool f(){ return a < b || c && !d; }");
        assert_eq!(e.label, "||");
        assert_eq!(e.children[1].label, "&&");
        assert_eq!(e.children[1].children[1].kind, NodeKind::UnaryExpr);
        let e = ret_expr("int f(){ return -x++; }");
        assert_eq!(e.kind, NodeKind::UnaryExpr);
        assert_eq!(e.children[0].kind, NodeKind::IncDecExpr);
    }

    #[test]
    fn statements() {
        let src = "void main(int n, ref r) {\n  int i = 0;\n  while (i < n) { i++; log(i, \"x\"); }\n  if (r == null) return; else { r = r; }\n  { }\n}";
        let ast = parse(src).unwrap();
        ast.validate().unwrap();
        let body = ast.root.children[0].children.last().unwrap();
        let kinds: Vec<_> = body.children.iter().map(|c| c.kind).collect();
        assert_eq!(
            kinds,
            vec![
                NodeKind::VarDecl,
                NodeKind::While,
                NodeKind::If,
                NodeKind::Block
            ]
        );
    }

    #[test]
    fn errors_carry_positions() {
        let err = parse("int f() {\n  x = ;\n}").unwrap_err();
        assert_eq!((err.line, err.column), (2, 7));
        assert!(parse("int f() { return 1 }").is_err());
        assert!(parse("int f( { }").is_err());
        assert!(parse("f() {}").is_err());
        assert!(parse("int f() {").is_err());
    }

    #[test]
    fn empty_program() {
        assert_eq!(parse("  // nothing\n").unwrap().root.children.len(), 0);
    }
}
