use alloc::collections::BTreeMap;
use alloc::string::ToString;
use alloc::vec::Vec;

use super::{CandidatePool, MutationApplication, OperatorName, OperatorSet, Rewrite};
use crate::minilang::{default_literal, Ast, LiteralKind, Node, NodeKind, NodePath};

const ARITHMETIC: [&str; 5] = ["+", "-", "*", "/", "%"];
const BITWISE: [&str; 5] = ["&", "|", "^", "<<", ">>"];

/// All applications of every operator in `opset`, in set order, each
/// operator's sites in pre-order.
pub fn enumerate_applications(
    opset: &OperatorSet,
    ast: &Ast,
    pool: &CandidatePool,
) -> Vec<MutationApplication> {
    let ctx = Context::new(ast);
    let mut out = Vec::new();
    for &op in &opset.operators {
        ctx.enumerate(op, pool, &mut out);
    }
    out
}

/// Applications of a single operator.
pub fn enumerate_operator(
    op: OperatorName,
    ast: &Ast,
    pool: &CandidatePool,
) -> Vec<MutationApplication> {
    let mut out = Vec::new();
    Context::new(ast).enumerate(op, pool, &mut out);
    out
}

struct Site<'a> {
    path: NodePath,
    node: &'a Node,
    parent: Option<&'a Node>,
    index: usize,
}

struct Context<'a> {
    sites: Vec<Site<'a>>,
    /// Declared return type per function name; first declaration wins.
    returns: BTreeMap<&'a str, &'a str>,
    /// Per function (by position in the program): return type and the types of
    /// its parameters and locals.
    functions: Vec<(&'a str, BTreeMap<&'a str, &'a str>)>,
}

impl<'a> Context<'a> {
    fn new(ast: &'a Ast) -> Self {
        let mut sites = Vec::new();
        collect(&ast.root, None, 0, &mut Vec::new(), &mut sites);

        let mut returns = BTreeMap::new();
        let mut functions = Vec::new();
        for f in &ast.root.children {
            let ret = f.children.first().map_or("void", |t| t.label.as_str());
            returns.entry(f.label.as_str()).or_insert(ret);
            let mut vars = BTreeMap::new();
            f.walk(&mut |_, n| match n.kind {
                NodeKind::Param if n.children.len() == 2 => {
                    vars.entry(n.children[1].label.as_str())
                        .or_insert(n.children[0].label.as_str());
                }
                NodeKind::VarDecl if !n.children.is_empty() => {
                    vars.entry(n.label.as_str())
                        .or_insert(n.children[0].label.as_str());
                }
                _ => {}
            });
            functions.push((ret, vars));
        }
        Context {
            sites,
            returns,
            functions,
        }
    }

    fn function_of(&self, site: &Site<'_>) -> Option<&(&'a str, BTreeMap<&'a str, &'a str>)> {
        site.path.0.first().and_then(|i| self.functions.get(*i))
    }

    fn var_type(&self, site: &Site<'_>, name: &str) -> Option<&'a str> {
        self.function_of(site)
            .and_then(|(_, vars)| vars.get(name).copied())
    }

    fn return_type(&self, site: &Site<'_>) -> Option<&'a str> {
        self.function_of(site).map(|(ret, _)| *ret)
    }

    fn is_numeric_operand(&self, site: &Site<'_>, node: &Node) -> bool {
        match node.kind {
            NodeKind::Literal => LiteralKind::of(&node.label).is_some_and(LiteralKind::is_numeric),
            NodeKind::Identifier => self
                .var_type(site, &node.label)
                .is_some_and(|t| t == "int" || t == "float"),
            _ => false,
        }
    }

    fn is_string_operand(&self, site: &Site<'_>, node: &Node) -> bool {
        match node.kind {
            NodeKind::Literal => LiteralKind::of(&node.label) == Some(LiteralKind::String),
            NodeKind::Identifier => self.var_type(site, &node.label) == Some("string"),
            _ => false,
        }
    }

    fn enumerate(
        &self,
        op: OperatorName,
        pool: &CandidatePool,
        out: &mut Vec<MutationApplication>,
    ) {
        use OperatorName::*;
        for site in &self.sites {
            let node = site.node;
            let mut emit = |path: &NodePath, detail: Rewrite| {
                out.push(MutationApplication {
                    operator: op,
                    site: path.clone(),
                    detail,
                });
            };
            let relabel = |to: &str| Rewrite::Relabel {
                from: node.label.clone(),
                to: to.to_string(),
            };
            match op {
                ConditionalBoundary if node.kind == NodeKind::BinaryExpr => {
                    let to = match node.label.as_str() {
                        "<" => "<=",
                        "<=" => "<",
                        ">" => ">=",
                        ">=" => ">",
                        _ => continue,
                    };
                    emit(&site.path, relabel(to));
                }
                NegateConditionals if node.kind == NodeKind::BinaryExpr => {
                    let to = match node.label.as_str() {
                        "==" => "!=",
                        "!=" => "==",
                        "<" => ">=",
                        "<=" => ">",
                        ">" => "<=",
                        ">=" => "<",
                        _ => continue,
                    };
                    emit(&site.path, relabel(to));
                }
                Increments if node.kind == NodeKind::IncDecExpr => {
                    let to = if node.label == "++" { "--" } else { "++" };
                    emit(&site.path, relabel(to));
                }
                Math if node.kind == NodeKind::BinaryExpr => {
                    let l = node.label.as_str();
                    let category: &[&str] = if ARITHMETIC.contains(&l) {
                        if l == "+"
                            && node
                                .children
                                .iter()
                                .any(|c| self.is_string_operand(site, c))
                        {
                            continue;
                        }
                        &ARITHMETIC
                    } else if BITWISE.contains(&l) {
                        &BITWISE
                    } else {
                        continue;
                    };
                    for to in category.iter().filter(|o| **o != l) {
                        emit(&site.path, relabel(to));
                    }
                }
                InvertNegative => {
                    if node.kind == NodeKind::UnaryExpr && node.label == "-" {
                        if node.children.len() == 1
                            && self.is_numeric_operand(site, &node.children[0])
                        {
                            emit(&site.path, Rewrite::Unnegate);
                        }
                        continue;
                    }
                    let wrapped = site
                        .parent
                        .is_some_and(|p| p.kind == NodeKind::UnaryExpr && p.label == "-");
                    if !wrapped && is_value_position(site) && self.is_numeric_operand(site, node) {
                        emit(
                            &site.path,
                            Rewrite::Negate {
                                kind: node.kind,
                                label: node.label.clone(),
                            },
                        );
                    }
                }
                VoidMethodCalls | MethodCalls if node.kind == NodeKind::ExprStmt => {
                    let Some(call) = node.children.first().filter(|c| c.kind == NodeKind::Call)
                    else {
                        continue;
                    };
                    let void = self
                        .returns
                        .get(call.label.as_str())
                        .is_none_or(|t| *t == "void");
                    if op == MethodCalls || void {
                        emit(
                            &site.path,
                            Rewrite::DeleteStatement {
                                kind: node.kind,
                                label: node.label.clone(),
                            },
                        );
                    }
                }
                MethodCalls if node.kind == NodeKind::Call => {
                    if site.parent.is_some_and(|p| p.kind == NodeKind::ExprStmt) {
                        continue;
                    }
                    let Some(ret) = self.returns.get(node.label.as_str()) else {
                        continue;
                    };
                    if let Some(lit) = default_literal(ret) {
                        emit(&site.path, replace(node, Node::literal(lit)));
                    }
                }
                EmptyReturns | FalseReturns | TrueReturns | NullReturns | PrimitiveReturns
                    if node.kind == NodeKind::Return =>
                {
                    let (Some(expr), Some(ret)) = (node.children.first(), self.return_type(site))
                    else {
                        continue;
                    };
                    let lit = match (op, ret) {
                        (EmptyReturns, "ref") => continue,
                        (EmptyReturns, t) => default_literal(t),
                        (FalseReturns, "bool") => Some("false"),
                        (TrueReturns, "bool") => Some("true"),
                        (NullReturns, "ref") => Some("null"),
                        (PrimitiveReturns, "int" | "float") => default_literal(ret),
                        _ => None,
                    };
                    if let Some(lit) = lit {
                        let with = Node::literal(lit);
                        if *expr != with {
                            emit(&site.path.child(0), replace(expr, with));
                        }
                    }
                }
                RelaxedEmptyReturns | RelaxedReturnValues if node.kind == NodeKind::Return => {
                    let (Some(expr), Some(ret)) = (node.children.first(), self.return_type(site))
                    else {
                        continue;
                    };
                    let path = site.path.child(0);
                    if let Some(kind) = LiteralKind::for_type(ret) {
                        for lit in pool.literals_of(kind) {
                            let with = Node::literal(lit);
                            if *expr != with {
                                emit(&path, replace(expr, with));
                            }
                        }
                    }
                    if op == RelaxedReturnValues {
                        for name in &pool.identifiers {
                            let with = Node::ident(name.as_str());
                            if *expr != with {
                                emit(&path, replace(expr, with));
                            }
                        }
                    }
                }
                RelaxedInlineConstants if node.kind == NodeKind::Literal => {
                    let Some(kind) = LiteralKind::of(&node.label) else {
                        continue;
                    };
                    for lit in pool.literals_of(kind).filter(|l| *l != node.label) {
                        emit(&site.path, relabel(lit));
                    }
                }
                Rename if matches!(node.kind, NodeKind::Identifier | NodeKind::Call) => {
                    for name in pool.identifiers.iter().filter(|n| **n != node.label) {
                        emit(&site.path, relabel(name));
                    }
                }
                _ => {}
            }
        }
    }
}

fn replace(node: &Node, with: Node) -> Rewrite {
    Rewrite::Replace {
        kind: node.kind,
        label: node.label.clone(),
        with,
    }
}

// Identifiers that name a declaration or an assignment/increment target are
// not values that can be negated.
fn is_value_position(site: &Site<'_>) -> bool {
    match site.parent {
        None => false,
        Some(p) => match p.kind {
            NodeKind::Param | NodeKind::IncDecExpr => false,
            NodeKind::Assign => site.index == 1,
            _ => true,
        },
    }
}

fn collect<'a>(
    node: &'a Node,
    parent: Option<&'a Node>,
    index: usize,
    path: &mut Vec<usize>,
    out: &mut Vec<Site<'a>>,
) {
    out.push(Site {
        path: NodePath(path.clone()),
        node,
        parent,
        index,
    });
    for (i, c) in node.children.iter().enumerate() {
        path.push(i);
        collect(c, Some(node), i, path, out);
        path.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::minilang::{canonical_hash, parse};
    use crate::mutops::{apply, build_pool};
    use alloc::string::String;
    use alloc::vec;

    fn apps_for(op: OperatorName, src: &str) -> Vec<MutationApplication> {
        let ast = parse(src).unwrap();
        enumerate_operator(op, &ast, &build_pool(&ast, &ast))
    }

    fn targets(apps: &[MutationApplication]) -> Vec<String> {
        apps.iter()
            .map(|a| match &a.detail {
                Rewrite::Relabel { to, .. } => to.clone(),
                Rewrite::Replace { with, .. } => with.label.clone(),
                Rewrite::DeleteStatement { .. } => "<delete>".into(),
                Rewrite::Negate { .. } => "<negate>".into(),
                Rewrite::Unnegate => "<unnegate>".into(),
            })
            .collect()
    }

    #[test]
    fn sum_to_difference_successors() {
        let fixed = parse("int f(int a, int b){ return a + a; }").unwrap();
        let buggy = parse("int f(int a, int b){ return a - b; }").unwrap();
        let pool = build_pool(&fixed, &buggy);
        let apps = enumerate_applications(&OperatorSet::extended(), &fixed, &pool);
        let math: Vec<_> = apps
            .iter()
            .filter(|a| a.operator == OperatorName::Math)
            .cloned()
            .collect();
        assert_eq!(targets(&math), ["-", "*", "/", "%"]);
        let renames_to_b: Vec<_> = apps
            .iter()
            .filter(|a| {
                a.operator == OperatorName::Rename
                    && a.detail
                        == Rewrite::Relabel {
                            from: "a".into(),
                            to: "b".into(),
                        }
                    && a.site.0.starts_with(&[0, 3, 0, 0])
            })
            .collect();
        assert_eq!(renames_to_b.len(), 2);
    }

    #[test]
    fn boundary_needs_relational_operators() {
        assert!(apps_for(
            OperatorName::ConditionalBoundary,
            "int f(int a){ return a + 1; }"
        )
        .is_empty());
        let apps = apps_for(
            OperatorName::ConditionalBoundary,
            "bool f(int a){ return a < 1 && a >= 0 || a == 3; }",
        );
        assert_eq!(targets(&apps), ["<=", ">"]);
    }

    #[test]
    fn negate_conditionals_table() {
        let apps = apps_for(
            OperatorName::NegateConditionals,
            "bool f(int a){ return a == 1 && a != 2 && a < 3 && a <= 4 && a > 5 && a >= 6; }",
        );
        assert_eq!(targets(&apps), ["!=", "==", ">=", ">", "<=", "<"]);
    }

    #[test]
    fn void_call_deletion_single() {
        let apps = apps_for(OperatorName::VoidMethodCalls, "void f(){ g(); }");
        assert_eq!(apps.len(), 1);
        assert_eq!(apps[0].site, NodePath(vec![0, 1, 0]));
        assert!(matches!(
            apps[0].detail,
            Rewrite::DeleteStatement {
                kind: NodeKind::ExprStmt,
                ..
            }
        ));
    }

    #[test]
    fn void_calls_skip_valued_callees() {
        let src = "int g(){ return 1; } void h(){ } void f(){ g(); h(); k(); }";
        assert_eq!(apps_for(OperatorName::VoidMethodCalls, src).len(), 2);
        assert_eq!(apps_for(OperatorName::MethodCalls, src).len(), 3);
    }

    #[test]
    fn method_calls_replace_valued_expressions() {
        let src = "string s(){ return \"x\"; } int f(){ return g(1) + len(s()); } int g(int v){ return v; }";
        let apps = apps_for(OperatorName::MethodCalls, src);
        // g is declared int; len is undeclared; s is declared string
        assert_eq!(targets(&apps), ["0", "\"\""]);
    }

    #[test]
    fn returns_use_declared_types() {
        let src = "int i(){ return 5; } float r(){ return 2.5; } bool b(){ return x; } string s(){ return \"a\"; } ref o(){ return p; }";
        assert_eq!(
            targets(&apps_for(OperatorName::EmptyReturns, src)),
            ["0", "0.0", "false", "\"\""]
        );
        assert_eq!(
            targets(&apps_for(OperatorName::FalseReturns, src)),
            ["false"]
        );
        assert_eq!(targets(&apps_for(OperatorName::TrueReturns, src)), ["true"]);
        assert_eq!(targets(&apps_for(OperatorName::NullReturns, src)), ["null"]);
        assert_eq!(
            targets(&apps_for(OperatorName::PrimitiveReturns, src)),
            ["0", "0.0"]
        );
        // already the default: no identity application
        assert!(apps_for(OperatorName::EmptyReturns, "int f(){ return 0; }").is_empty());
    }

    #[test]
    fn increments_flip() {
        assert_eq!(
            targets(&apps_for(
                OperatorName::Increments,
                "void f(int i){ i++; i--; }"
            )),
            ["--", "++"]
        );
    }

    #[test]
    fn invert_negative_toggles() {
        let src = "int f(int a, bool c){ int x = -a; a = 3; x++; return x + -2 + c; }";
        let apps = apps_for(OperatorName::InvertNegative, src);
        // -a unwraps, 3 and x (in return) wrap, -2 unwraps; c is bool, the
        // assignment target and the increment operand are skipped
        assert_eq!(
            targets(&apps),
            ["<unnegate>", "<negate>", "<negate>", "<unnegate>"]
        );
    }

    #[test]
    fn math_categories_and_string_concat() {
        let apps = apps_for(OperatorName::Math, "int f(int a){ return a << 2; }");
        assert_eq!(targets(&apps), ["&", "|", "^", ">>"]);
        assert!(apps_for(OperatorName::Math, "string f(int a){ return \"n=\" + a; }").is_empty());
        assert!(apps_for(OperatorName::Math, "string f(string s){ return s + 1; }").is_empty());
        assert!(apps_for(OperatorName::Math, "bool f(bool a){ return a && a; }").is_empty());
    }

    #[test]
    fn relaxed_operators_use_the_pool() {
        let fixed = parse("int f(int a){ int y = 1; return 1; }").unwrap();
        let buggy = parse("int f(int a){ int y = 2; return 7; }").unwrap();
        let pool = build_pool(&fixed, &buggy);
        let inline = enumerate_operator(OperatorName::RelaxedInlineConstants, &fixed, &pool);
        assert_eq!(targets(&inline), ["2", "7", "2", "7"]);
        let empty = enumerate_operator(OperatorName::RelaxedEmptyReturns, &fixed, &pool);
        assert_eq!(targets(&empty), ["2", "7"]);
        let values = enumerate_operator(OperatorName::RelaxedReturnValues, &fixed, &pool);
        assert_eq!(targets(&values), ["2", "7", "a", "f", "y"]);
    }

    #[test]
    fn every_application_changes_the_tree() {
        let src = "int g(int v){ return v; } ref o(){ return null; } int f(int a, bool c){ int x = -a; while (x < 10) { x++; log(x); } if (c) x = g(x) * 2; return x % 3; }";
        let ast = parse(src).unwrap();
        let other = parse("int f(int b){ return 4; }").unwrap();
        let pool = build_pool(&ast, &other);
        let apps = enumerate_applications(&OperatorSet::extended(), &ast, &pool);
        assert!(apps.len() > 40);
        for app in &apps {
            let out = apply(app, &ast).unwrap();
            out.validate().unwrap_or_else(|e| panic!("{app}: {e}"));
            assert_ne!(canonical_hash(&out), canonical_hash(&ast), "{app}");
        }
    }
}
