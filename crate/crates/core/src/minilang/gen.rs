//! Seeded random MiniLang programs for property tests and synthetic corpora.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::Rng;

use super::ast::{Ast, Node, NodeKind};

#[derive(Debug, Clone)]
pub struct GenConfig {
    /// Inclusive bounds on the AST node count; programs outside are rejected.
    pub min_nodes: usize,
    pub max_nodes: usize,
    pub max_functions: usize,
    pub max_statements: usize,
    pub max_expr_depth: usize,
}

impl Default for GenConfig {
    fn default() -> Self {
        GenConfig {
            min_nodes: 15,
            max_nodes: 40,
            max_functions: 2,
            max_statements: 3,
            max_expr_depth: 2,
        }
    }
}

const RET_TYPES: [&str; 7] = ["int", "int", "bool", "float", "string", "ref", "void"];
const PARAM_TYPES: [&str; 6] = ["int", "int", "float", "bool", "ref", "string"];
const PARAM_NAMES: [&str; 3] = ["a", "b", "c"];
const LOCAL_NAMES: [&str; 3] = ["x", "y", "z"];
const INT_OPS: [&str; 10] = ["+", "-", "*", "/", "%", "&", "|", "^", "<<", ">>"];
const FLOAT_OPS: [&str; 4] = ["+", "-", "*", "/"];
const REL_OPS: [&str; 6] = ["==", "!=", "<", "<=", ">", ">="];
const VOID_CALLEES: [&str; 3] = ["log", "emit", "reset"];

#[derive(Clone)]
struct Sig {
    name: String,
    ret: &'static str,
    params: Vec<&'static str>,
}

struct Gen<'r, R: Rng + ?Sized> {
    rng: &'r mut R,
    cfg: &'r GenConfig,
    sigs: Vec<Sig>,
    scope: Vec<(String, &'static str)>,
}

/// Draws programs until one falls inside the configured node-count range.
///
/// Panics if no program of the requested size is found after 10,000 draws,
/// which only happens with contradictory configurations.
pub fn random_program<R: Rng + ?Sized>(rng: &mut R, cfg: &GenConfig) -> Ast {
    for _ in 0..10_000 {
        let ast = draw(rng, cfg);
        let n = ast.size();
        if (cfg.min_nodes..=cfg.max_nodes).contains(&n) {
            return ast;
        }
    }
    panic!(
        "no program with {}..={} nodes found",
        cfg.min_nodes, cfg.max_nodes
    );
}

fn draw<R: Rng + ?Sized>(rng: &mut R, cfg: &GenConfig) -> Ast {
    let mut g = Gen {
        rng,
        cfg,
        sigs: Vec::new(),
        scope: Vec::new(),
    };
    let n = g.rng.gen_range(1..=cfg.max_functions.max(1));
    let mut functions = Vec::new();
    for i in 0..n {
        functions.push(g.function(i));
    }
    Ast::new(Node::new(NodeKind::Program, "", functions))
}

impl<R: Rng + ?Sized> Gen<'_, R> {
    fn pick<T: Copy>(&mut self, xs: &[T]) -> T {
        *xs.choose(self.rng).expect("non-empty choice")
    }

    fn chance(&mut self, p: f64) -> bool {
        self.rng.gen_bool(p)
    }

    fn function(&mut self, index: usize) -> Node {
        let ret = self.pick(&RET_TYPES);
        let name = format!("f{index}");
        let nparams = self.rng.gen_range(0..=2);
        self.scope.clear();
        let mut children = vec![Node::leaf(NodeKind::TypeRef, ret)];
        let mut params = Vec::new();
        for pname in PARAM_NAMES.iter().take(nparams) {
            let ty = self.pick(&PARAM_TYPES);
            params.push(ty);
            self.scope.push((pname.to_string(), ty));
            children.push(Node::new(
                NodeKind::Param,
                "",
                vec![Node::leaf(NodeKind::TypeRef, ty), Node::ident(*pname)],
            ));
        }
        let mut stmts = Vec::new();
        let count = self.rng.gen_range(0..=self.cfg.max_statements);
        for _ in 0..count {
            stmts.push(self.statement(0));
        }
        if ret != "void" {
            let value = self.expr(ret, self.cfg.max_expr_depth);
            stmts.push(Node::new(NodeKind::Return, "", vec![value]));
        } else if self.chance(0.2) {
            stmts.push(Node::new(NodeKind::Return, "", vec![]));
        }
        children.push(Node::new(NodeKind::Block, "", stmts));
        // Later functions may call this one, recursion is not generated.
        self.sigs.push(Sig {
            name: name.clone(),
            ret,
            params,
        });
        Node::new(NodeKind::FunctionDecl, name, children)
    }

    fn vars_of(&self, ty: &str) -> Vec<String> {
        self.scope
            .iter()
            .filter(|(_, t)| *t == ty)
            .map(|(n, _)| n.clone())
            .collect()
    }

    fn block(&mut self, depth: usize, max: usize) -> Node {
        let n = self.rng.gen_range(1..=max);
        let mark = self.scope.len();
        let stmts = (0..n).map(|_| self.statement(depth + 1)).collect();
        self.scope.truncate(mark);
        Node::new(NodeKind::Block, "", stmts)
    }

    fn statement(&mut self, depth: usize) -> Node {
        let choice = if depth >= 2 {
            self.rng.gen_range(0..3)
        } else {
            self.rng.gen_range(0..6)
        };
        match choice {
            0 => {
                let free: Vec<&str> = LOCAL_NAMES
                    .iter()
                    .copied()
                    .filter(|n| !self.scope.iter().any(|(s, _)| s == n))
                    .collect();
                if free.is_empty() {
                    return self.call_stmt();
                }
                let name = self.pick(&free);
                let ty = self.pick(&["int", "int", "bool", "float"]);
                let mut children = vec![Node::leaf(NodeKind::TypeRef, ty)];
                if self.chance(0.8) {
                    children.push(self.expr(ty, 1));
                }
                self.scope.push((name.to_string(), ty));
                Node::new(NodeKind::VarDecl, name, children)
            }
            1 => {
                if self.scope.is_empty() {
                    return self.call_stmt();
                }
                let i = self.rng.gen_range(0..self.scope.len());
                let (name, ty) = self.scope[i].clone();
                if ty == "int" && self.chance(0.3) {
                    let op = self.pick(&["++", "--"]);
                    let inc = Node::new(NodeKind::IncDecExpr, op, vec![Node::ident(name)]);
                    return Node::new(NodeKind::ExprStmt, "", vec![inc]);
                }
                let value = self.expr(ty, 1);
                Node::new(NodeKind::Assign, "", vec![Node::ident(name), value])
            }
            2 => self.call_stmt(),
            3 => {
                let cond = self.expr("bool", 1);
                if self.chance(0.2) {
                    // brace-less body; never combined with an else branch
                    let body = self.call_stmt();
                    return Node::new(NodeKind::If, "", vec![cond, body]);
                }
                let then = self.block(depth, 2);
                let mut children = vec![cond, then];
                if self.chance(0.3) {
                    children.push(self.block(depth, 1));
                }
                Node::new(NodeKind::If, "", children)
            }
            4 => {
                let cond = self.expr("bool", 1);
                let body = self.block(depth, 1);
                Node::new(NodeKind::While, "", vec![cond, body])
            }
            _ => self.block(depth, 2),
        }
    }

    fn call_stmt(&mut self) -> Node {
        let voids: Vec<Sig> = self
            .sigs
            .iter()
            .filter(|s| s.ret == "void")
            .cloned()
            .collect();
        let call = if !voids.is_empty() && self.chance(0.5) {
            let sig = self.pick_sig(&voids);
            self.call(&sig)
        } else if !self.sigs.is_empty() && self.chance(0.3) {
            let all = self.sigs.clone();
            let sig = self.pick_sig(&all);
            self.call(&sig)
        } else {
            let callee = self.pick(&VOID_CALLEES);
            let args = if self.chance(0.5) {
                let ty = self.pick(&["int", "string", "bool"]);
                vec![self.expr(ty, 0)]
            } else {
                vec![]
            };
            Node::new(NodeKind::Call, callee, args)
        };
        Node::new(NodeKind::ExprStmt, "", vec![call])
    }

    fn pick_sig(&mut self, sigs: &[Sig]) -> Sig {
        sigs[self.rng.gen_range(0..sigs.len())].clone()
    }

    fn call(&mut self, sig: &Sig) -> Node {
        let args = sig.params.iter().map(|t| self.expr(t, 0)).collect();
        Node::new(NodeKind::Call, sig.name.clone(), args)
    }

    fn leaf(&mut self, ty: &str) -> Node {
        let vars = self.vars_of(ty);
        if !vars.is_empty() && self.chance(0.6) {
            return Node::ident(vars[self.rng.gen_range(0..vars.len())].clone());
        }
        let lexeme = match ty {
            "int" => format!("{}", self.rng.gen_range(0..10)),
            "float" => format!(
                "{}.{}",
                self.rng.gen_range(0..10),
                self.rng.gen_range(1..10)
            ),
            "bool" => self.pick(&["true", "false"]).to_string(),
            "string" => self.pick(&["\"\"", "\"ok\"", "\"err\""]).to_string(),
            _ => "null".to_string(),
        };
        Node::literal(lexeme)
    }

    fn expr(&mut self, ty: &str, depth: usize) -> Node {
        if depth == 0 || self.chance(0.35) {
            return self.leaf(ty);
        }
        let d = depth - 1;
        let callable: Vec<Sig> = self.sigs.iter().filter(|s| s.ret == ty).cloned().collect();
        if !callable.is_empty() && self.chance(0.25) {
            let sig = self.pick_sig(&callable);
            return self.call(&sig);
        }
        match ty {
            "int" | "float" => {
                if self.chance(0.15) {
                    let e = self.expr(ty, d);
                    return Node::new(NodeKind::UnaryExpr, "-", vec![e]);
                }
                let op = if ty == "int" {
                    self.pick(&INT_OPS)
                } else {
                    self.pick(&FLOAT_OPS)
                };
                let (l, r) = (self.expr(ty, d), self.expr(ty, d));
                Node::new(NodeKind::BinaryExpr, op, vec![l, r])
            }
            "bool" => match self.rng.gen_range(0..4) {
                0 | 1 => {
                    let op = self.pick(&REL_OPS);
                    let (l, r) = (self.expr("int", d), self.expr("int", d));
                    Node::new(NodeKind::BinaryExpr, op, vec![l, r])
                }
                2 => {
                    let op = self.pick(&["&&", "||"]);
                    let (l, r) = (self.expr("bool", d), self.expr("bool", d));
                    Node::new(NodeKind::BinaryExpr, op, vec![l, r])
                }
                _ => {
                    let e = self.expr("bool", d);
                    Node::new(NodeKind::UnaryExpr, "!", vec![e])
                }
            },
            "string" => {
                let l = self.leaf("string");
                let r = self.expr("int", d);
                Node::new(NodeKind::BinaryExpr, "+", vec![l, r])
            }
            _ => self.leaf(ty),
        }
    }
}
