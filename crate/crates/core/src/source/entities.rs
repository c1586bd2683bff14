//! Entity extraction: one record per module, class, function, and method.

use rustpython_parser::ast::{Expr, Stmt};

use super::walker::{self, ClassDefInfo, FunctionDefInfo};
use super::SourceModule;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum EntityKind {
    Module,
    Class,
    Function,
    Method,
}

impl EntityKind {
    pub fn as_str(self) -> &'static str {
        match self {
            EntityKind::Module => "module",
            EntityKind::Class => "class",
            EntityKind::Function => "function",
            EntityKind::Method => "method",
        }
    }
}

/// A function, method, class, or module with location and signature facts.
#[derive(Debug, Clone)]
pub struct Entity {
    pub kind: EntityKind,
    pub module: String,
    /// Module-relative dotted name; for module entities, the module name itself.
    pub qualified_name: String,
    pub line_start: u32,
    pub line_end: u32,
    /// Ordered parameter names; methods exclude the receiver parameter.
    pub parameters: Vec<String>,
    /// Base-name references as written (classes only).
    pub bases: Vec<String>,
    pub docstring_present: bool,
    pub decorators: Vec<String>,
}

impl Entity {
    /// Fully qualified dotted name including the module.
    pub fn full_name(&self) -> String {
        if self.kind == EntityKind::Module {
            self.module.clone()
        } else {
            format!("{}.{}", self.module, self.qualified_name)
        }
    }

    pub fn line_count(&self) -> u64 {
        (self.line_end - self.line_start + 1) as u64
    }

    pub fn is_public(&self) -> bool {
        let simple = self.qualified_name.rsplit('.').next().unwrap_or(&self.qualified_name);
        !simple.starts_with('_')
    }
}

/// Extract entities from a parsed module: the module itself first, then
/// classes, functions, and methods in document order.
pub fn extract_entities(module: &SourceModule) -> Vec<Entity> {
    let Some(tree) = &module.tree else {
        return Vec::new();
    };
    let defs = walker::collect_defs(tree);
    let mut out = Vec::with_capacity(1 + defs.functions.len() + defs.classes.len());

    out.push(Entity {
        kind: EntityKind::Module,
        module: module.module_name.clone(),
        qualified_name: module.module_name.clone(),
        line_start: 1,
        line_end: module.lines.len().max(1) as u32,
        parameters: Vec::new(),
        bases: Vec::new(),
        docstring_present: has_docstring(tree),
        decorators: Vec::new(),
    });

    // Interleave classes and functions back into document order.
    let mut positioned: Vec<(u32, Entity)> = Vec::new();
    for class in &defs.classes {
        positioned.push((u32::from(class.node.range.start()), class_entity(module, class)));
    }
    for func in &defs.functions {
        positioned.push((u32::from(func.node.range().start()), function_entity(module, func)));
    }
    positioned.sort_by(|a, b| a.0.cmp(&b.0).then_with(|| a.1.qualified_name.cmp(&b.1.qualified_name)));
    out.extend(positioned.into_iter().map(|(_, e)| e));
    out
}

fn class_entity(module: &SourceModule, class: &ClassDefInfo<'_>) -> Entity {
    let (line_start, line_end) = module.span_of(class.node.range);
    Entity {
        kind: EntityKind::Class,
        module: module.module_name.clone(),
        qualified_name: class.qualified_name.clone(),
        line_start,
        line_end,
        parameters: Vec::new(),
        bases: class.node.bases.iter().filter_map(base_label).collect(),
        docstring_present: has_docstring(&class.node.body),
        decorators: decorator_names(&class.node.decorator_list),
    }
}

fn function_entity(module: &SourceModule, func: &FunctionDefInfo<'_>) -> Entity {
    let (line_start, line_end) = module.span_of(func.node.range());
    Entity {
        kind: if func.is_method() { EntityKind::Method } else { EntityKind::Function },
        module: module.module_name.clone(),
        qualified_name: func.qualified_name.clone(),
        line_start,
        line_end,
        parameters: parameter_names(func),
        bases: Vec::new(),
        docstring_present: has_docstring(func.node.body()),
        decorators: decorator_names(func.node.decorator_list()),
    }
}

/// Ordered parameter names, excluding the receiver of a method.
pub fn parameter_names(func: &FunctionDefInfo<'_>) -> Vec<String> {
    let args = func.node.args();
    let mut names: Vec<String> = Vec::new();
    for a in args.posonlyargs.iter().chain(&args.args) {
        names.push(a.def.arg.to_string());
    }
    if let Some(v) = &args.vararg {
        names.push(v.arg.to_string());
    }
    for a in &args.kwonlyargs {
        names.push(a.def.arg.to_string());
    }
    if let Some(k) = &args.kwarg {
        names.push(k.arg.to_string());
    }
    if let Some(receiver) = &func.receiver {
        if names.first() == Some(receiver) {
            names.remove(0);
        }
    }
    names
}

fn decorator_names(decorators: &[Expr]) -> Vec<String> {
    decorators.iter().filter_map(walker::base_name).collect()
}

fn base_label(base: &Expr) -> Option<String> {
    // Dynamic bases still count as one unresolvable base.
    Some(walker::base_name(base).unwrap_or_else(|| "<dynamic>".to_string()))
}

pub fn has_docstring(body: &[Stmt]) -> bool {
    matches!(
        body.first(),
        Some(Stmt::Expr(e)) if matches!(&*e.value, Expr::Constant(c) if c.value.is_str())
    )
}
