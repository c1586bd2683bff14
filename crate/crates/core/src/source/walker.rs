//! Shared AST traversal: definition collection and statement/expression
//! visitors. Every consumer of qualified entity names goes through
//! `collect_defs` so naming stays consistent across extraction, metrics, and
//! detectors.

use rustpython_parser::ast::{self, Expr, Pattern, Stmt};
use rustpython_parser::text_size::TextRange;

/// A function definition, sync or async.
#[derive(Clone, Copy)]
pub enum FuncNode<'a> {
    Sync(&'a ast::StmtFunctionDef),
    Async(&'a ast::StmtAsyncFunctionDef),
}

impl<'a> FuncNode<'a> {
    pub fn name(&self) -> &'a str {
        match self {
            FuncNode::Sync(f) => f.name.as_str(),
            FuncNode::Async(f) => f.name.as_str(),
        }
    }

    pub fn args(&self) -> &'a ast::Arguments {
        match self {
            FuncNode::Sync(f) => &f.args,
            FuncNode::Async(f) => &f.args,
        }
    }

    pub fn body(&self) -> &'a [Stmt] {
        match self {
            FuncNode::Sync(f) => &f.body,
            FuncNode::Async(f) => &f.body,
        }
    }

    pub fn decorator_list(&self) -> &'a [Expr] {
        match self {
            FuncNode::Sync(f) => &f.decorator_list,
            FuncNode::Async(f) => &f.decorator_list,
        }
    }

    pub fn range(&self) -> TextRange {
        match self {
            FuncNode::Sync(f) => f.range,
            FuncNode::Async(f) => f.range,
        }
    }
}

/// One collected function or method.
pub struct FunctionDefInfo<'a> {
    pub node: FuncNode<'a>,
    /// Module-relative dotted name, e.g. `C.m` or `outer.inner`.
    pub qualified_name: String,
    /// Qualified name of the immediately enclosing class when this is a method.
    pub class_qualified: Option<String>,
    /// Receiver parameter name (`self`, `cls`, ...) for methods; absent for
    /// staticmethods and plain functions.
    pub receiver: Option<String>,
}

impl FunctionDefInfo<'_> {
    pub fn is_method(&self) -> bool {
        self.class_qualified.is_some()
    }
}

/// One collected class.
pub struct ClassDefInfo<'a> {
    pub node: &'a ast::StmtClassDef,
    pub qualified_name: String,
}

/// All definitions of one module, in document order.
pub struct Defs<'a> {
    pub functions: Vec<FunctionDefInfo<'a>>,
    pub classes: Vec<ClassDefInfo<'a>>,
}

impl<'a> Defs<'a> {
    /// Methods belonging to the given class, in document order.
    pub fn methods_of<'s>(
        &'s self,
        class_qualified: &'s str,
    ) -> impl Iterator<Item = &'s FunctionDefInfo<'a>> + 's {
        self.functions
            .iter()
            .filter(move |f| f.class_qualified.as_deref() == Some(class_qualified))
    }
}

pub fn collect_defs(suite: &[Stmt]) -> Defs<'_> {
    let mut defs = Defs { functions: Vec::new(), classes: Vec::new() };
    let mut stack: Vec<String> = Vec::new();
    collect_into(suite, &mut stack, None, &mut defs);
    defs
}

fn qualify(stack: &[String], name: &str) -> String {
    if stack.is_empty() {
        name.to_string()
    } else {
        format!("{}.{}", stack.join("."), name)
    }
}

fn collect_into<'a>(
    stmts: &'a [Stmt],
    stack: &mut Vec<String>,
    enclosing_class: Option<&str>,
    out: &mut Defs<'a>,
) {
    for stmt in stmts {
        match stmt {
            Stmt::FunctionDef(f) => {
                collect_function(FuncNode::Sync(f), stack, enclosing_class, out);
            }
            Stmt::AsyncFunctionDef(f) => {
                collect_function(FuncNode::Async(f), stack, enclosing_class, out);
            }
            Stmt::ClassDef(c) => {
                let qualified = qualify(stack, c.name.as_str());
                out.classes.push(ClassDefInfo { node: c, qualified_name: qualified.clone() });
                stack.push(c.name.to_string());
                collect_into(&c.body, stack, Some(&qualified.clone()), out);
                stack.pop();
            }
            // Definitions nested in compound statements keep the enclosing scope.
            other => {
                for body in nested_bodies(other) {
                    collect_into(body, stack, enclosing_class, out);
                }
            }
        }
    }
}

fn collect_function<'a>(
    node: FuncNode<'a>,
    stack: &mut Vec<String>,
    enclosing_class: Option<&str>,
    out: &mut Defs<'a>,
) {
    let qualified = qualify(stack, node.name());
    let is_static = node
        .decorator_list()
        .iter()
        .any(|d| dotted_name(d).as_deref() == Some("staticmethod"));
    let receiver = match enclosing_class {
        Some(_) if !is_static => first_positional(node.args()),
        _ => None,
    };
    out.functions.push(FunctionDefInfo {
        node,
        qualified_name: qualified,
        class_qualified: enclosing_class.map(str::to_string),
        receiver,
    });
    stack.push(node.name().to_string());
    collect_into(node.body(), stack, None, out);
    stack.pop();
}

fn first_positional(args: &ast::Arguments) -> Option<String> {
    args.posonlyargs
        .first()
        .or_else(|| args.args.first())
        .map(|a| a.def.arg.to_string())
}

/// Statement bodies nested in a compound statement (excluding def/class).
fn nested_bodies(stmt: &Stmt) -> Vec<&[Stmt]> {
    match stmt {
        Stmt::For(s) => vec![&s.body, &s.orelse],
        Stmt::AsyncFor(s) => vec![&s.body, &s.orelse],
        Stmt::While(s) => vec![&s.body, &s.orelse],
        Stmt::If(s) => vec![&s.body, &s.orelse],
        Stmt::With(s) => vec![&s.body],
        Stmt::AsyncWith(s) => vec![&s.body],
        Stmt::Match(s) => s.cases.iter().map(|c| c.body.as_slice()).collect(),
        Stmt::Try(s) => {
            let mut bodies: Vec<&[Stmt]> = vec![&s.body, &s.orelse, &s.finalbody];
            for h in &s.handlers {
                let ast::ExceptHandler::ExceptHandler(h) = h;
                bodies.push(&h.body);
            }
            bodies
        }
        Stmt::TryStar(s) => {
            let mut bodies: Vec<&[Stmt]> = vec![&s.body, &s.orelse, &s.finalbody];
            for h in &s.handlers {
                let ast::ExceptHandler::ExceptHandler(h) = h;
                bodies.push(&h.body);
            }
            bodies
        }
        _ => Vec::new(),
    }
}

/// Visit `stmts` and everything nested in compound statements, in document
/// order. With `enter_defs` false, nested function/class definitions are
/// reported but their bodies are not descended into.
pub fn visit_stmts<'a>(stmts: &'a [Stmt], enter_defs: bool, f: &mut dyn FnMut(&'a Stmt)) {
    for stmt in stmts {
        f(stmt);
        match stmt {
            Stmt::FunctionDef(d) => {
                if enter_defs {
                    visit_stmts(&d.body, enter_defs, f);
                }
            }
            Stmt::AsyncFunctionDef(d) => {
                if enter_defs {
                    visit_stmts(&d.body, enter_defs, f);
                }
            }
            Stmt::ClassDef(d) => {
                if enter_defs {
                    visit_stmts(&d.body, enter_defs, f);
                }
            }
            other => {
                for body in nested_bodies(other) {
                    visit_stmts(body, enter_defs, f);
                }
            }
        }
    }
}

/// Visit every expression reachable from `stmts`: tests, values, targets,
/// annotations, decorators, defaults. With `enter_defs` false, nested defs
/// (including their decorators and defaults) are skipped entirely.
pub fn visit_exprs<'a>(stmts: &'a [Stmt], enter_defs: bool, f: &mut dyn FnMut(&'a Expr)) {
    for stmt in stmts {
        match stmt {
            Stmt::FunctionDef(_) | Stmt::AsyncFunctionDef(_) | Stmt::ClassDef(_) if !enter_defs => {}
            _ => {
                for expr in stmt_exprs(stmt) {
                    visit_expr(expr, f);
                }
                match stmt {
                    Stmt::FunctionDef(d) => visit_exprs(&d.body, enter_defs, f),
                    Stmt::AsyncFunctionDef(d) => visit_exprs(&d.body, enter_defs, f),
                    Stmt::ClassDef(d) => visit_exprs(&d.body, enter_defs, f),
                    other => {
                        for body in nested_bodies(other) {
                            visit_exprs(body, enter_defs, f);
                        }
                        if let Stmt::Match(m) = other {
                            for case in &m.cases {
                                visit_pattern_exprs(&case.pattern, f);
                                if let Some(guard) = &case.guard {
                                    visit_expr(guard, f);
                                }
                            }
                        }
                    }
                }
            }
        }
    }
}

/// Top-level expressions attached directly to one statement.
fn stmt_exprs(stmt: &Stmt) -> Vec<&Expr> {
    match stmt {
        Stmt::FunctionDef(d) => def_signature_exprs(d.decorator_list.iter(), &d.args, d.returns.as_deref()),
        Stmt::AsyncFunctionDef(d) => def_signature_exprs(d.decorator_list.iter(), &d.args, d.returns.as_deref()),
        Stmt::ClassDef(d) => {
            let mut out: Vec<&Expr> = d.decorator_list.iter().collect();
            out.extend(d.bases.iter());
            out.extend(d.keywords.iter().map(|k| &k.value));
            out
        }
        Stmt::Return(s) => s.value.iter().map(|v| v.as_ref()).collect(),
        Stmt::Delete(s) => s.targets.iter().collect(),
        Stmt::Assign(s) => s.targets.iter().chain(std::iter::once(&*s.value)).collect(),
        Stmt::AugAssign(s) => vec![&s.target, &s.value],
        Stmt::AnnAssign(s) => {
            let mut out: Vec<&Expr> = vec![&s.target, &s.annotation];
            if let Some(v) = &s.value {
                out.push(v);
            }
            out
        }
        Stmt::For(s) => vec![&s.target, &s.iter],
        Stmt::AsyncFor(s) => vec![&s.target, &s.iter],
        Stmt::While(s) => vec![&s.test],
        Stmt::If(s) => vec![&s.test],
        Stmt::With(s) => with_item_exprs(&s.items),
        Stmt::AsyncWith(s) => with_item_exprs(&s.items),
        Stmt::Match(s) => vec![&s.subject],
        Stmt::Raise(s) => s.exc.iter().chain(s.cause.iter()).map(|v| v.as_ref()).collect(),
        Stmt::Try(s) => handler_type_exprs(&s.handlers),
        Stmt::TryStar(s) => handler_type_exprs(&s.handlers),
        Stmt::Assert(s) => std::iter::once(&*s.test).chain(s.msg.iter().map(|v| v.as_ref())).collect(),
        Stmt::Expr(s) => vec![&s.value],
        _ => Vec::new(),
    }
}

fn def_signature_exprs<'a>(
    decorators: impl Iterator<Item = &'a Expr>,
    args: &'a ast::Arguments,
    returns: Option<&'a Expr>,
) -> Vec<&'a Expr> {
    let mut out: Vec<&Expr> = decorators.collect();
    for a in args.posonlyargs.iter().chain(&args.args).chain(&args.kwonlyargs) {
        if let Some(ann) = &a.def.annotation {
            out.push(ann);
        }
        if let Some(d) = &a.default {
            out.push(d);
        }
    }
    for a in args.vararg.iter().chain(args.kwarg.iter()) {
        if let Some(ann) = &a.annotation {
            out.push(ann);
        }
    }
    if let Some(r) = returns {
        out.push(r);
    }
    out
}

fn with_item_exprs(items: &[ast::WithItem]) -> Vec<&Expr> {
    let mut out = Vec::new();
    for item in items {
        out.push(&item.context_expr);
        if let Some(v) = &item.optional_vars {
            out.push(v.as_ref());
        }
    }
    out
}

fn handler_type_exprs(handlers: &[ast::ExceptHandler]) -> Vec<&Expr> {
    handlers
        .iter()
        .filter_map(|h| {
            let ast::ExceptHandler::ExceptHandler(h) = h;
            h.type_.as_deref()
        })
        .collect()
}

fn visit_pattern_exprs<'a>(pattern: &'a Pattern, f: &mut dyn FnMut(&'a Expr)) {
    match pattern {
        Pattern::MatchValue(p) => visit_expr(&p.value, f),
        Pattern::MatchSingleton(_) => {}
        Pattern::MatchSequence(p) => p.patterns.iter().for_each(|p| visit_pattern_exprs(p, f)),
        Pattern::MatchMapping(p) => {
            p.keys.iter().for_each(|k| visit_expr(k, f));
            p.patterns.iter().for_each(|p| visit_pattern_exprs(p, f));
        }
        Pattern::MatchClass(p) => {
            visit_expr(&p.cls, f);
            p.patterns.iter().for_each(|p| visit_pattern_exprs(p, f));
            p.kwd_patterns.iter().for_each(|p| visit_pattern_exprs(p, f));
        }
        Pattern::MatchStar(_) => {}
        Pattern::MatchAs(p) => {
            if let Some(inner) = &p.pattern {
                visit_pattern_exprs(inner, f);
            }
        }
        Pattern::MatchOr(p) => p.patterns.iter().for_each(|p| visit_pattern_exprs(p, f)),
    }
}

/// Pre-order visit of an expression and all sub-expressions, including lambda
/// bodies and comprehension clauses.
pub fn visit_expr<'a>(expr: &'a Expr, f: &mut dyn FnMut(&'a Expr)) {
    f(expr);
    match expr {
        Expr::BoolOp(e) => e.values.iter().for_each(|v| visit_expr(v, f)),
        Expr::NamedExpr(e) => {
            visit_expr(&e.target, f);
            visit_expr(&e.value, f);
        }
        Expr::BinOp(e) => {
            visit_expr(&e.left, f);
            visit_expr(&e.right, f);
        }
        Expr::UnaryOp(e) => visit_expr(&e.operand, f),
        Expr::Lambda(e) => {
            for a in e.args.posonlyargs.iter().chain(&e.args.args).chain(&e.args.kwonlyargs) {
                if let Some(d) = &a.default {
                    visit_expr(d, f);
                }
            }
            visit_expr(&e.body, f);
        }
        Expr::IfExp(e) => {
            visit_expr(&e.test, f);
            visit_expr(&e.body, f);
            visit_expr(&e.orelse, f);
        }
        Expr::Dict(e) => {
            e.keys.iter().flatten().for_each(|k| visit_expr(k, f));
            e.values.iter().for_each(|v| visit_expr(v, f));
        }
        Expr::Set(e) => e.elts.iter().for_each(|v| visit_expr(v, f)),
        Expr::ListComp(e) => {
            visit_expr(&e.elt, f);
            visit_comprehensions(&e.generators, f);
        }
        Expr::SetComp(e) => {
            visit_expr(&e.elt, f);
            visit_comprehensions(&e.generators, f);
        }
        Expr::DictComp(e) => {
            visit_expr(&e.key, f);
            visit_expr(&e.value, f);
            visit_comprehensions(&e.generators, f);
        }
        Expr::GeneratorExp(e) => {
            visit_expr(&e.elt, f);
            visit_comprehensions(&e.generators, f);
        }
        Expr::Await(e) => visit_expr(&e.value, f),
        Expr::Yield(e) => {
            if let Some(v) = &e.value {
                visit_expr(v, f);
            }
        }
        Expr::YieldFrom(e) => visit_expr(&e.value, f),
        Expr::Compare(e) => {
            visit_expr(&e.left, f);
            e.comparators.iter().for_each(|c| visit_expr(c, f));
        }
        Expr::Call(e) => {
            visit_expr(&e.func, f);
            e.args.iter().for_each(|a| visit_expr(a, f));
            e.keywords.iter().for_each(|k| visit_expr(&k.value, f));
        }
        Expr::FormattedValue(e) => {
            visit_expr(&e.value, f);
            if let Some(spec) = &e.format_spec {
                visit_expr(spec, f);
            }
        }
        Expr::JoinedStr(e) => e.values.iter().for_each(|v| visit_expr(v, f)),
        Expr::Constant(_) | Expr::Name(_) => {}
        Expr::Attribute(e) => visit_expr(&e.value, f),
        Expr::Subscript(e) => {
            visit_expr(&e.value, f);
            visit_expr(&e.slice, f);
        }
        Expr::Starred(e) => visit_expr(&e.value, f),
        Expr::List(e) => e.elts.iter().for_each(|v| visit_expr(v, f)),
        Expr::Tuple(e) => e.elts.iter().for_each(|v| visit_expr(v, f)),
        Expr::Slice(e) => {
            for part in [&e.lower, &e.upper, &e.step].into_iter().flatten() {
                visit_expr(part, f);
            }
        }
    }
}

fn visit_comprehensions<'a>(gens: &'a [ast::Comprehension], f: &mut dyn FnMut(&'a Expr)) {
    for g in gens {
        visit_expr(&g.target, f);
        visit_expr(&g.iter, f);
        g.ifs.iter().for_each(|c| visit_expr(c, f));
    }
}

/// Dotted name of a Name / Attribute chain: `a.b.c` -> "a.b.c".
pub fn dotted_name(expr: &Expr) -> Option<String> {
    match expr {
        Expr::Name(n) => Some(n.id.to_string()),
        Expr::Attribute(a) => dotted_name(&a.value).map(|base| format!("{base}.{}", a.attr)),
        _ => None,
    }
}

/// Base-name reference of a class base: unwraps subscripts (`Generic[T]`)
/// and calls before taking the dotted name.
pub fn base_name(expr: &Expr) -> Option<String> {
    match expr {
        Expr::Subscript(s) => base_name(&s.value),
        Expr::Call(c) => base_name(&c.func),
        other => dotted_name(other),
    }
}
