//! Function-level metrics: cyclomatic complexity, nesting depth, branch and
//! return counts. Nested definitions are measured as their own entities and
//! never contribute to the enclosing function.

use rustpython_parser::ast::{Expr, Stmt};

use crate::source::walker::{visit_exprs, visit_stmts, FunctionDefInfo};

/// CC = 1 + decision points. Decision points: if/elif, while, for (incl.
/// async), each exception handler, each boolean operand beyond the first in
/// and/or chains, conditional expressions, each comprehension for-clause and
/// if-clause, each match case arm.
pub fn cyclomatic_complexity(func: &FunctionDefInfo<'_>) -> u64 {
    cyclomatic_complexity_of_body(func.node.body())
}

pub fn cyclomatic_complexity_of_body(body: &[Stmt]) -> u64 {
    let mut points = 0u64;
    visit_stmts(body, false, &mut |stmt| match stmt {
        Stmt::If(_) | Stmt::While(_) | Stmt::For(_) | Stmt::AsyncFor(_) => points += 1,
        Stmt::Try(t) => points += t.handlers.len() as u64,
        Stmt::TryStar(t) => points += t.handlers.len() as u64,
        Stmt::Match(m) => points += m.cases.len() as u64,
        _ => {}
    });
    visit_exprs(body, false, &mut |expr| match expr {
        Expr::BoolOp(b) => points += b.values.len().saturating_sub(1) as u64,
        Expr::IfExp(_) => points += 1,
        Expr::ListComp(c) => points += comprehension_points(&c.generators),
        Expr::SetComp(c) => points += comprehension_points(&c.generators),
        Expr::DictComp(c) => points += comprehension_points(&c.generators),
        Expr::GeneratorExp(c) => points += comprehension_points(&c.generators),
        _ => {}
    });
    1 + points
}

fn comprehension_points(generators: &[rustpython_parser::ast::Comprehension]) -> u64 {
    generators.iter().map(|g| 1 + g.ifs.len() as u64).sum()
}

/// (max_nesting, branch_count).
///
/// max_nesting counts the deepest stack of nested block statements
/// (if/for/while/with/try) with the body itself at depth 0; an elif
/// continues its chain at the same depth. branch_count counts branching
/// statements: each if, each elif, a final else with a body, match case
/// arms, and exception handlers.
pub fn nesting_and_branches(func: &FunctionDefInfo<'_>) -> (u64, u64) {
    nesting_and_branches_of_body(func.node.body())
}

pub fn nesting_and_branches_of_body(body: &[Stmt]) -> (u64, u64) {
    let mut max = 0;
    nesting(body, 0, &mut max);

    let mut branches = 0u64;
    visit_stmts(body, false, &mut |stmt| match stmt {
        Stmt::If(s) => {
            branches += 1;
            // A trailing non-elif orelse is the else arm.
            if !s.orelse.is_empty() && !is_elif(&s.orelse) {
                branches += 1;
            }
        }
        Stmt::Match(m) => branches += m.cases.len() as u64,
        Stmt::Try(t) => branches += t.handlers.len() as u64,
        Stmt::TryStar(t) => branches += t.handlers.len() as u64,
        _ => {}
    });
    (max, branches)
}

fn is_elif(orelse: &[Stmt]) -> bool {
    matches!(orelse, [Stmt::If(_)])
}

fn nesting(stmts: &[Stmt], depth: u64, max: &mut u64) {
    for stmt in stmts {
        match stmt {
            Stmt::If(s) => {
                enter(&s.body, depth, max);
                if is_elif(&s.orelse) {
                    // elif: same visual depth as the owning if.
                    nesting(&s.orelse, depth, max);
                } else if !s.orelse.is_empty() {
                    enter(&s.orelse, depth, max);
                }
            }
            Stmt::For(s) => {
                enter(&s.body, depth, max);
                enter_nonempty(&s.orelse, depth, max);
            }
            Stmt::AsyncFor(s) => {
                enter(&s.body, depth, max);
                enter_nonempty(&s.orelse, depth, max);
            }
            Stmt::While(s) => {
                enter(&s.body, depth, max);
                enter_nonempty(&s.orelse, depth, max);
            }
            Stmt::With(s) => enter(&s.body, depth, max),
            Stmt::AsyncWith(s) => enter(&s.body, depth, max),
            Stmt::Try(s) => {
                enter(&s.body, depth, max);
                for h in &s.handlers {
                    let rustpython_parser::ast::ExceptHandler::ExceptHandler(h) = h;
                    enter(&h.body, depth, max);
                }
                enter_nonempty(&s.orelse, depth, max);
                enter_nonempty(&s.finalbody, depth, max);
            }
            Stmt::TryStar(s) => {
                enter(&s.body, depth, max);
                for h in &s.handlers {
                    let rustpython_parser::ast::ExceptHandler::ExceptHandler(h) = h;
                    enter(&h.body, depth, max);
                }
                enter_nonempty(&s.orelse, depth, max);
                enter_nonempty(&s.finalbody, depth, max);
            }
            // match is not in the nesting block list; case bodies stay at depth.
            Stmt::Match(s) => {
                for case in &s.cases {
                    nesting(&case.body, depth, max);
                }
            }
            Stmt::FunctionDef(_) | Stmt::AsyncFunctionDef(_) | Stmt::ClassDef(_) => {}
            _ => {}
        }
    }
}

fn enter(body: &[Stmt], depth: u64, max: &mut u64) {
    let depth = depth + 1;
    if depth > *max {
        *max = depth;
    }
    nesting(body, depth, max);
}

fn enter_nonempty(body: &[Stmt], depth: u64, max: &mut u64) {
    if !body.is_empty() {
        enter(body, depth, max);
    }
}

pub fn return_count(body: &[Stmt]) -> u64 {
    let mut count = 0;
    visit_stmts(body, false, &mut |stmt| {
        if matches!(stmt, Stmt::Return(_)) {
            count += 1;
        }
    });
    count
}
