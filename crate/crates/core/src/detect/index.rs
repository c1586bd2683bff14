//! Project-wide name and definition index shared by cross-module detectors.

use std::collections::{BTreeMap, BTreeSet};

use rustpython_parser::ast::{Expr, ExprContext, Stmt};

use crate::source::walker::{collect_defs, visit_exprs, visit_stmts, Defs};
use crate::source::SourceModule;

/// One name reference: which module saw it and on which line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct RefSite {
    pub module_idx: usize,
    pub line: u32,
}

pub struct ProjectIndex<'a> {
    /// Definitions per parse_ok module, keyed by module index.
    pub defs: BTreeMap<usize, Defs<'a>>,
    /// Simple name -> every load-context reference site (names, attribute
    /// reads, imported member names).
    pub references: BTreeMap<String, Vec<RefSite>>,
    /// Names exported through any module's `__all__`.
    pub all_exports: BTreeSet<String>,
    /// module name -> module index.
    pub module_idx: BTreeMap<&'a str, usize>,
}

impl<'a> ProjectIndex<'a> {
    pub fn build(modules: &'a [SourceModule]) -> ProjectIndex<'a> {
        let mut index = ProjectIndex {
            defs: BTreeMap::new(),
            references: BTreeMap::new(),
            all_exports: BTreeSet::new(),
            module_idx: BTreeMap::new(),
        };
        for (i, module) in modules.iter().enumerate() {
            index.module_idx.insert(module.module_name.as_str(), i);
            let Some(tree) = &module.tree else { continue };
            index.defs.insert(i, collect_defs(tree));
            collect_references(module, i, tree, &mut index.references);
            collect_all_exports(tree, &mut index.all_exports);
        }
        index
    }

    /// Reference sites for a simple name.
    pub fn refs(&self, name: &str) -> &[RefSite] {
        self.references.get(name).map(Vec::as_slice).unwrap_or(&[])
    }
}

fn collect_references(
    module: &SourceModule,
    module_idx: usize,
    tree: &[Stmt],
    references: &mut BTreeMap<String, Vec<RefSite>>,
) {
    let mut push = |name: &str, line: u32| {
        references
            .entry(name.to_string())
            .or_default()
            .push(RefSite { module_idx, line });
    };
    visit_exprs(tree, true, &mut |expr| match expr {
        Expr::Name(n) if matches!(n.ctx, ExprContext::Load) => {
            push(n.id.as_str(), module.line_of(n.range));
        }
        Expr::Attribute(a) if matches!(a.ctx, ExprContext::Load) => {
            push(a.attr.as_str(), module.line_of(a.range));
        }
        _ => {}
    });
    // Imported names keep their targets alive.
    visit_stmts(tree, true, &mut |stmt| match stmt {
        Stmt::Import(imp) => {
            for alias in &imp.names {
                let line = module.line_of(imp.range);
                for segment in alias.name.split('.') {
                    push(segment, line);
                }
            }
        }
        Stmt::ImportFrom(imp) => {
            for alias in &imp.names {
                if alias.name.as_str() != "*" {
                    push(alias.name.as_str(), module.line_of(imp.range));
                }
            }
        }
        _ => {}
    });
}

fn collect_all_exports(tree: &[Stmt], exports: &mut BTreeSet<String>) {
    for stmt in tree {
        let Stmt::Assign(assign) = stmt else { continue };
        let exports_target = assign
            .targets
            .iter()
            .any(|t| matches!(t, Expr::Name(n) if n.id.as_str() == "__all__"));
        if !exports_target {
            continue;
        }
        let elts: &[Expr] = match &*assign.value {
            Expr::List(l) => &l.elts,
            Expr::Tuple(t) => &t.elts,
            _ => continue,
        };
        for elt in elts {
            if let Expr::Constant(c) = elt {
                if let rustpython_parser::ast::Constant::Str(s) = &c.value {
                    exports.insert(s.clone());
                }
            }
        }
    }
}
