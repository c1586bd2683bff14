//! Class-level metric machinery: cohesion (LCOM), the inheritance hierarchy
//! (DIT/NOC), coupling (CBO/MPC/RFC), and receiver-attribute analysis.

use std::collections::{BTreeMap, BTreeSet};

use rustpython_parser::ast::{Expr, ExprContext, Stmt};
use rustpython_parser::text_size::TextRange;

use crate::findings::{Diagnostic, DiagnosticKind};
use crate::source::walker::{self, visit_expr, visit_exprs, ClassDefInfo, Defs, FunctionDefInfo};
use crate::source::{ImportKind, ImportRecord, SourceModule};

/// (module_name, class qualified name).
pub type ClassKey = (String, String);

/// CK LCOM1 over method attribute-use sets: P = pairs sharing no instance
/// attribute, Q = pairs sharing at least one; LCOM = max(P - Q, 0). Methods
/// with empty attribute sets participate in P. Classes with fewer than two
/// methods score 0.
pub fn lcom(attribute_uses: &[BTreeSet<String>]) -> u64 {
    if attribute_uses.len() < 2 {
        return 0;
    }
    let mut disjoint = 0i64;
    let mut sharing = 0i64;
    for i in 0..attribute_uses.len() {
        for j in i + 1..attribute_uses.len() {
            if attribute_uses[i].intersection(&attribute_uses[j]).next().is_some() {
                sharing += 1;
            } else {
                disjoint += 1;
            }
        }
    }
    (disjoint - sharing).max(0) as u64
}

/// Instance attributes a method touches through its receiver parameter.
/// Names that are methods of the class are treated as calls, not attributes.
pub fn method_attribute_uses(func: &FunctionDefInfo<'_>, method_names: &BTreeSet<&str>) -> BTreeSet<String> {
    let mut uses = BTreeSet::new();
    let Some(receiver) = &func.receiver else {
        return uses;
    };
    visit_exprs(func.node.body(), true, &mut |expr| {
        if let Expr::Attribute(a) = expr {
            if is_name(&a.value, receiver) && !method_names.contains(a.attr.as_str()) {
                uses.insert(a.attr.to_string());
            }
        }
    });
    uses
}

/// Every attribute access through the receiver: (attr, is_store, range).
pub fn receiver_attr_accesses<'a>(func: &FunctionDefInfo<'a>) -> Vec<(&'a str, bool, TextRange)> {
    let mut out = Vec::new();
    let Some(receiver) = &func.receiver else {
        return out;
    };
    visit_exprs(func.node.body(), true, &mut |expr| {
        if let Expr::Attribute(a) = expr {
            if is_name(&a.value, receiver) {
                out.push((a.attr.as_str(), matches!(a.ctx, ExprContext::Store), a.range));
            }
        }
    });
    out
}

/// Attribute accesses grouped by the simple name they hang off: `x.attr`
/// counts one access for `x`.
pub fn attribute_access_counts(func: &FunctionDefInfo<'_>) -> BTreeMap<String, u64> {
    let mut counts = BTreeMap::new();
    visit_exprs(func.node.body(), true, &mut |expr| {
        if let Expr::Attribute(a) = expr {
            if let Expr::Name(n) = &*a.value {
                *counts.entry(n.id.to_string()).or_insert(0) += 1;
            }
        }
    });
    counts
}

fn is_name(expr: &Expr, name: &str) -> bool {
    matches!(expr, Expr::Name(n) if n.id.as_str() == name)
}

/// Distinct attribute names of a class: class-level assignments plus
/// receiver-attribute stores in its methods.
pub fn class_attr_names(class: &ClassDefInfo<'_>, methods: &[&FunctionDefInfo<'_>]) -> BTreeSet<String> {
    let mut names = BTreeSet::new();
    for stmt in &class.node.body {
        match stmt {
            Stmt::Assign(a) => {
                for target in &a.targets {
                    collect_simple_targets(target, &mut names);
                }
            }
            Stmt::AnnAssign(a) => collect_simple_targets(&a.target, &mut names),
            _ => {}
        }
    }
    for method in methods {
        for (attr, is_store, _) in receiver_attr_accesses(method) {
            if is_store {
                names.insert(attr.to_string());
            }
        }
    }
    names
}

fn collect_simple_targets(target: &Expr, names: &mut BTreeSet<String>) {
    match target {
        Expr::Name(n) => {
            names.insert(n.id.to_string());
        }
        Expr::Tuple(t) => t.elts.iter().for_each(|e| collect_simple_targets(e, names)),
        _ => {}
    }
}

/// Distinct names invoked by the class's methods (callee simple names).
pub fn called_method_names(methods: &[&FunctionDefInfo<'_>]) -> BTreeSet<String> {
    let mut names = BTreeSet::new();
    for method in methods {
        visit_exprs(method.node.body(), false, &mut |expr| {
            if let Expr::Call(c) = expr {
                match &*c.func {
                    Expr::Name(n) => {
                        names.insert(n.id.to_string());
                    }
                    Expr::Attribute(a) => {
                        names.insert(a.attr.to_string());
                    }
                    _ => {}
                }
            }
        });
    }
    names
}

/// Message-passing coupling: call expressions whose immediate receiver is
/// not the method's receiver parameter. Plain function calls carry no
/// receiver and do not count.
pub fn message_passing_calls(methods: &[&FunctionDefInfo<'_>]) -> u64 {
    let mut count = 0;
    for method in methods {
        let receiver = method.receiver.as_deref();
        visit_exprs(method.node.body(), false, &mut |expr| {
            if let Expr::Call(c) = expr {
                if let Expr::Attribute(a) = &*c.func {
                    let own = receiver.is_some_and(|r| is_name(&a.value, r));
                    if !own {
                        count += 1;
                    }
                }
            }
        });
    }
    count
}

/// Local name bound by a project import.
#[derive(Debug, Clone)]
pub struct Binding {
    pub module: String,
    pub member: Option<String>,
}

/// Per-module project-import bindings used for cross-module class resolution.
pub fn project_bindings(
    records: &[ImportRecord],
    module_set: &BTreeSet<&str>,
) -> BTreeMap<String, BTreeMap<String, Binding>> {
    let mut bindings: BTreeMap<String, BTreeMap<String, Binding>> = BTreeMap::new();
    for record in records {
        if record.kind != ImportKind::Project {
            continue;
        }
        let (Some(binding), Some(resolved)) = (&record.binding, &record.resolved) else {
            continue;
        };
        let entry = match &record.member {
            Some(member) => {
                // `from pkg import x` may bind a submodule or a member.
                if resolved == &record.target {
                    Binding { module: resolved.clone(), member: None }
                } else {
                    Binding { module: resolved.clone(), member: Some(member.clone()) }
                }
            }
            None => {
                let top = record.target.split('.').next().unwrap_or(&record.target);
                if binding != top {
                    // Aliased plain import refers to the resolved module.
                    Binding { module: resolved.clone(), member: None }
                } else if module_set.contains(top) {
                    Binding { module: top.to_string(), member: None }
                } else {
                    continue;
                }
            }
        };
        bindings.entry(record.importer.clone()).or_default().insert(binding.clone(), entry);
    }
    bindings
}

/// Resolve a dotted reference inside `module` to a project class, if any.
pub fn resolve_class_ref(
    module: &str,
    dotted: &str,
    class_keys: &BTreeSet<ClassKey>,
    module_set: &BTreeSet<&str>,
    bindings: &BTreeMap<String, BTreeMap<String, Binding>>,
) -> Option<ClassKey> {
    let local = (module.to_string(), dotted.to_string());
    if class_keys.contains(&local) {
        return Some(local);
    }

    let (root, rest) = match dotted.split_once('.') {
        Some((r, rest)) => (r, Some(rest)),
        None => (dotted, None),
    };
    if let Some(binding) = bindings.get(module).and_then(|b| b.get(root)) {
        let name = match (&binding.member, rest) {
            (Some(m), Some(r)) => Some(format!("{m}.{r}")),
            (Some(m), None) => Some(m.clone()),
            (None, Some(r)) => Some(r.to_string()),
            (None, None) => None,
        };
        if let Some(name) = name {
            let key = (binding.module.clone(), name);
            if class_keys.contains(&key) {
                return Some(key);
            }
        }
    }

    // Absolute dotted path: longest module prefix, remainder names the class.
    let mut prefix_end = dotted.len();
    while let Some(idx) = dotted[..prefix_end].rfind('.') {
        let (prefix, rest) = (&dotted[..idx], &dotted[idx + 1..]);
        let key = (prefix.to_string(), rest.to_string());
        if module_set.contains(prefix) && class_keys.contains(&key) {
            return Some(key);
        }
        prefix_end = idx;
    }
    None
}

/// Project-wide class hierarchy resolved over project-local bases.
#[derive(Debug, Default)]
pub struct ClassHierarchy {
    pub resolved_bases: BTreeMap<ClassKey, Vec<ClassKey>>,
    pub unresolved_base_counts: BTreeMap<ClassKey, usize>,
    pub dit: BTreeMap<ClassKey, u64>,
    pub noc: BTreeMap<ClassKey, u64>,
    pub diagnostics: Vec<Diagnostic>,
}

pub fn build_class_hierarchy(
    modules: &[SourceModule],
    defs_per_module: &[(usize, Defs<'_>)],
    records: &[ImportRecord],
) -> ClassHierarchy {
    let module_set: BTreeSet<&str> = modules.iter().filter(|m| m.parse_ok).map(|m| m.module_name.as_str()).collect();
    let bindings = project_bindings(records, &module_set);

    let mut class_keys: BTreeSet<ClassKey> = BTreeSet::new();
    for (idx, defs) in defs_per_module {
        let module = &modules[*idx];
        for class in &defs.classes {
            class_keys.insert((module.module_name.clone(), class.qualified_name.clone()));
        }
    }

    let mut hierarchy = ClassHierarchy::default();
    for (idx, defs) in defs_per_module {
        let module = &modules[*idx];
        for class in &defs.classes {
            let key = (module.module_name.clone(), class.qualified_name.clone());
            let mut resolved = Vec::new();
            let mut unresolved = 0usize;
            for base in &class.node.bases {
                match walker::base_name(base)
                    .and_then(|name| resolve_class_ref(&module.module_name, &name, &class_keys, &module_set, &bindings))
                {
                    Some(base_key) if base_key != key => resolved.push(base_key),
                    Some(_) => unresolved += 1,
                    None => unresolved += 1,
                }
            }
            hierarchy.unresolved_base_counts.insert(key.clone(), unresolved);
            hierarchy.resolved_bases.insert(key, resolved);
        }
    }

    // NOC: direct project subclasses.
    for key in &class_keys {
        hierarchy.noc.insert(key.clone(), 0);
    }
    for (child, bases) in &hierarchy.resolved_bases {
        let _ = child;
        for base in bases {
            *hierarchy.noc.entry(base.clone()).or_insert(0) += 1;
        }
    }

    // DIT with cycle edges ignored.
    let keys: Vec<ClassKey> = class_keys.iter().cloned().collect();
    let mut memo: BTreeMap<ClassKey, u64> = BTreeMap::new();
    let mut cycle_msgs: BTreeSet<String> = BTreeSet::new();
    for key in &keys {
        let mut on_stack = BTreeSet::new();
        dit_of(key, &hierarchy.resolved_bases, &hierarchy.unresolved_base_counts, &mut memo, &mut on_stack, &mut cycle_msgs);
    }
    hierarchy.dit = memo;
    hierarchy.diagnostics = cycle_msgs
        .into_iter()
        .map(|msg| Diagnostic::new(DiagnosticKind::BaseClassCycle, String::new(), None, msg))
        .collect();
    hierarchy
}

fn dit_of(
    key: &ClassKey,
    bases: &BTreeMap<ClassKey, Vec<ClassKey>>,
    unresolved: &BTreeMap<ClassKey, usize>,
    memo: &mut BTreeMap<ClassKey, u64>,
    on_stack: &mut BTreeSet<ClassKey>,
    cycles: &mut BTreeSet<String>,
) -> u64 {
    if let Some(v) = memo.get(key) {
        return *v;
    }
    on_stack.insert(key.clone());
    let mut depth = 0u64;
    if unresolved.get(key).copied().unwrap_or(0) > 0 {
        depth = 1;
    }
    if let Some(base_keys) = bases.get(key) {
        for base in base_keys {
            if on_stack.contains(base) {
                cycles.insert(format!(
                    "base-class cycle between {}.{} and {}.{}; edge ignored for DIT",
                    key.0, key.1, base.0, base.1
                ));
                continue;
            }
            depth = depth.max(1 + dit_of(base, bases, unresolved, memo, on_stack, cycles));
        }
    }
    on_stack.remove(key);
    memo.insert(key.clone(), depth);
    depth
}

/// Distinct other project classes referenced in the class body: bases,
/// constructor calls, and name/attribute references that resolve to a class.
pub fn coupled_classes(
    module: &str,
    class: &ClassDefInfo<'_>,
    class_keys: &BTreeSet<ClassKey>,
    module_set: &BTreeSet<&str>,
    bindings: &BTreeMap<String, BTreeMap<String, Binding>>,
) -> BTreeSet<ClassKey> {
    let own_key = (module.to_string(), class.qualified_name.clone());
    let mut candidates: BTreeSet<String> = BTreeSet::new();
    let mut record = |expr: &Expr| match expr {
        Expr::Name(n) => {
            candidates.insert(n.id.to_string());
        }
        Expr::Attribute(_) => {
            if let Some(dotted) = walker::dotted_name(expr) {
                candidates.insert(dotted);
            }
        }
        _ => {}
    };
    for expr in class
        .node
        .bases
        .iter()
        .chain(class.node.keywords.iter().map(|k| &k.value))
        .chain(class.node.decorator_list.iter())
    {
        visit_expr(expr, &mut record);
    }
    visit_exprs(&class.node.body, true, &mut record);

    candidates
        .iter()
        .filter_map(|name| resolve_class_ref(module, name, class_keys, module_set, bindings))
        .filter(|key| *key != own_key)
        .collect()
}
