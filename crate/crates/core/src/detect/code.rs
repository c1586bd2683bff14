//! The code-level detector bank (24 detectors).

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use rustpython_parser::ast::{self, Expr, ExprContext, Ranged, Stmt};

use super::{duplicates, finding, sort_findings, AnalysisCtx};
use crate::findings::{Measured, SmellFinding, SmellId};
use crate::metrics::comments::{comment_blocks, comment_flags};
use crate::metrics::{classes, MetricId};
use crate::source::walker::{visit_expr, visit_exprs, visit_stmts, Defs, FunctionDefInfo};
use crate::source::{Entity, EntityKind, SourceModule};

const PRIMITIVE_TYPES: &[&str] = &["int", "float", "str", "bool", "bytes"];

pub fn detect_code_smells(ctx: &AnalysisCtx<'_>) -> Vec<SmellFinding> {
    let entities_by_module = group_entities(ctx);

    let mut out: Vec<SmellFinding> = ctx
        .modules
        .par_iter()
        .enumerate()
        .filter(|(_, m)| m.parse_ok)
        .map(|(idx, module)| {
            let empty = Vec::new();
            let entities = entities_by_module.get(module.module_name.as_str()).unwrap_or(&empty);
            per_module_smells(ctx, idx, module, entities)
        })
        .reduce(Vec::new, |mut acc, v| {
            acc.extend(v);
            acc
        });

    if ctx.config.enabled(SmellId::DuplicateCode) {
        let min_lines = ctx.config.value("DUPLICATE_CODE_MIN_LINES") as usize;
        out.extend(duplicates::detect_duplicates(ctx.modules, min_lines, ctx.config));
    }
    dead_code(ctx, &mut out);
    shotgun_surgery(ctx, &mut out);
    data_clumps(ctx, &mut out);

    sort_findings(&mut out);
    out
}

fn group_entities<'a>(ctx: &AnalysisCtx<'a>) -> BTreeMap<&'a str, Vec<&'a Entity>> {
    let mut map: BTreeMap<&str, Vec<&Entity>> = BTreeMap::new();
    for e in ctx.entities {
        map.entry(e.module.as_str()).or_default().push(e);
    }
    map
}

fn per_module_smells(
    ctx: &AnalysisCtx<'_>,
    module_idx: usize,
    module: &SourceModule,
    entities: &[&Entity],
) -> Vec<SmellFinding> {
    let mut out = Vec::new();
    let cfg = ctx.config;
    let defs = &ctx.index.defs[&module_idx];
    let tree = module.tree.as_ref().expect("parse_ok module has a tree");

    // Size and documentation smells straight off the metric table.
    for entity in entities {
        let metric = |id: MetricId| ctx.metrics.value(&entity.module, &entity.qualified_name, id);
        let callable = matches!(entity.kind, EntityKind::Function | EntityKind::Method);

        if callable && cfg.enabled(SmellId::LongMethod) {
            let limit = cfg.value("LONG_METHOD_LINES");
            let lines = entity.line_count() as f64;
            if lines > limit {
                out.push(finding(
                    cfg,
                    SmellId::LongMethod,
                    &module.rel_path,
                    (entity.line_start, entity.line_end),
                    entity.full_name(),
                    lines.into(),
                    Some(limit),
                    format!("{} spans {lines} lines (limit {limit}); consider extracting helpers", entity.qualified_name),
                ));
            }
        }
        if callable && cfg.enabled(SmellId::LongParameterList) {
            let limit = cfg.value("LONG_PARAMETER_LIST_PARAMS");
            let params = entity.parameters.len() as f64;
            if params > limit {
                out.push(finding(
                    cfg,
                    SmellId::LongParameterList,
                    &module.rel_path,
                    (entity.line_start, entity.line_end),
                    entity.full_name(),
                    params.into(),
                    Some(limit),
                    format!("{} takes {params} parameters (limit {limit}); group related ones into an object", entity.qualified_name),
                ));
            }
        }
        if callable && cfg.enabled(SmellId::TooManyReturns) {
            let limit = cfg.value("TOO_MANY_RETURNS_COUNT");
            if let Some(returns) = metric(MetricId::ReturnCount) {
                if returns > limit {
                    out.push(finding(
                        cfg,
                        SmellId::TooManyReturns,
                        &module.rel_path,
                        (entity.line_start, entity.line_end),
                        entity.full_name(),
                        returns.into(),
                        Some(limit),
                        format!("{} has {returns} return statements (limit {limit})", entity.qualified_name),
                    ));
                }
            }
        }
        if entity.kind == EntityKind::Class && cfg.enabled(SmellId::LargeClass) {
            let limit = cfg.value("LARGE_CLASS_METHODS");
            if let Some(methods) = metric(MetricId::Nom) {
                if methods > limit {
                    out.push(finding(
                        cfg,
                        SmellId::LargeClass,
                        &module.rel_path,
                        (entity.line_start, entity.line_end),
                        entity.full_name(),
                        methods.into(),
                        Some(limit),
                        format!("class {} has {methods} methods (limit {limit}); split responsibilities", entity.qualified_name),
                    ));
                }
            }
        }
        if entity.kind != EntityKind::Module && cfg.enabled(SmellId::LowCommentRatio) {
            let min_lines = cfg.value("LOW_COMMENT_MIN_LINES");
            let floor = cfg.value("LOW_COMMENT_RATIO");
            let lines = entity.line_count() as f64;
            if lines > min_lines {
                if let Some(ratio) = metric(MetricId::CommentRatio) {
                    if ratio < floor {
                        out.push(finding(
                            cfg,
                            SmellId::LowCommentRatio,
                            &module.rel_path,
                            (entity.line_start, entity.line_end),
                            entity.full_name(),
                            ratio.into(),
                            Some(floor),
                            format!(
                                "{} spans {lines} lines with comment ratio {ratio:.4} (< {floor}); document the intent",
                                entity.qualified_name
                            ),
                        ));
                    }
                }
            }
        }
        if cfg.enabled(SmellId::MissingDocstring)
            && entity.kind != EntityKind::Module
            && entity.is_public()
            && !entity.docstring_present
            && !(entity.kind == EntityKind::Function && entity.qualified_name.contains('.'))
        {
            out.push(finding(
                cfg,
                SmellId::MissingDocstring,
                &module.rel_path,
                (entity.line_start, entity.line_end),
                entity.full_name(),
                Measured::Text("missing docstring".into()),
                None,
                format!("public {} {} has no docstring", entity.kind.as_str(), entity.qualified_name),
            ));
        }
    }

    primitive_obsession(ctx, module, defs, &mut out);
    speculative_generality(ctx, module, defs, &mut out);
    divergent_change(ctx, module, defs, &mut out);
    complex_conditionals(ctx, module, tree, &mut out);
    message_chains(ctx, module, tree, &mut out);
    feature_envy(ctx, module, defs, &mut out);
    temporary_fields(ctx, module, defs, &mut out);
    comment_block_smells(ctx, module, &mut out);
    magic_numbers(ctx, module, tree, &mut out);
    global_abuse(ctx, module, defs, &mut out);
    long_lambdas(ctx, module, tree, &mut out);
    mutable_defaults(ctx, module, defs, &mut out);
    broad_excepts(ctx, module, tree, &mut out);
    unused_imports(ctx, module, tree, &mut out);
    out
}

fn span_of_func(module: &SourceModule, func: &FunctionDefInfo<'_>) -> (u32, u32) {
    module.span_of(func.node.range())
}

fn primitive_obsession(ctx: &AnalysisCtx<'_>, module: &SourceModule, defs: &Defs<'_>, out: &mut Vec<SmellFinding>) {
    if !ctx.config.enabled(SmellId::PrimitiveObsession) {
        return;
    }
    let floor = ctx.config.value("PRIMITIVE_OBSESSION_MIN_PARAMS");
    for func in &defs.functions {
        let args = func.node.args();
        let mut primitive = 0u64;
        let mut positional: Vec<&ast::ArgWithDefault> = args.posonlyargs.iter().chain(&args.args).collect();
        if func.receiver.is_some() && !positional.is_empty() {
            positional.remove(0);
        }
        for arg in positional.into_iter().chain(args.kwonlyargs.iter()) {
            let by_annotation = arg
                .def
                .annotation
                .as_deref()
                .and_then(crate::source::walker::dotted_name)
                .is_some_and(|n| PRIMITIVE_TYPES.contains(&n.as_str()));
            let by_default = arg.default.as_deref().is_some_and(is_primitive_literal);
            if by_annotation || by_default {
                primitive += 1;
            }
        }
        if primitive as f64 >= floor {
            out.push(finding(
                ctx.config,
                SmellId::PrimitiveObsession,
                &module.rel_path,
                span_of_func(module, func),
                format!("{}.{}", module.module_name, func.qualified_name),
                primitive.into(),
                Some(floor),
                format!(
                    "{} declares {primitive} primitive-typed parameters (floor {floor}); consider a value object",
                    func.qualified_name
                ),
            ));
        }
    }
}

fn is_primitive_literal(expr: &Expr) -> bool {
    matches!(
        expr,
        Expr::Constant(c) if matches!(
            c.value,
            ast::Constant::Int(_) | ast::Constant::Float(_) | ast::Constant::Str(_) | ast::Constant::Bool(_) | ast::Constant::Bytes(_)
        )
    )
}

fn speculative_generality(ctx: &AnalysisCtx<'_>, module: &SourceModule, defs: &Defs<'_>, out: &mut Vec<SmellFinding>) {
    if !ctx.config.enabled(SmellId::SpeculativeGenerality) {
        return;
    }
    // Rule (a): parameters never read in the body.
    for func in &defs.functions {
        if is_noop_or_abstract(func) {
            continue;
        }
        let args = func.node.args();
        let mut named: Vec<&str> = Vec::new();
        let mut positional: Vec<&ast::ArgWithDefault> = args.posonlyargs.iter().chain(&args.args).collect();
        if func.receiver.is_some() && !positional.is_empty() {
            positional.remove(0);
        }
        named.extend(positional.iter().map(|a| a.def.arg.as_str()));
        named.extend(args.kwonlyargs.iter().map(|a| a.def.arg.as_str()));

        let mut read: BTreeSet<&str> = BTreeSet::new();
        visit_exprs(func.node.body(), true, &mut |expr| {
            if let Expr::Name(n) = expr {
                if matches!(n.ctx, ExprContext::Load) {
                    read.insert(n.id.as_str());
                }
            }
        });
        let unused: Vec<&str> = named
            .into_iter()
            .filter(|p| !p.starts_with('_') && !read.contains(p))
            .collect();
        if !unused.is_empty() {
            out.push(finding(
                ctx.config,
                SmellId::SpeculativeGenerality,
                &module.rel_path,
                span_of_func(module, func),
                format!("{}.{}", module.module_name, func.qualified_name),
                Measured::Num(unused.len() as f64),
                None,
                format!("{} never reads parameter(s) {}", func.qualified_name, unused.join(", ")),
            ));
        }
    }
    // Rule (b): classes made only of no-op/abstract methods with no subclasses.
    for class in &defs.classes {
        let methods: Vec<_> = defs.methods_of(&class.qualified_name).collect();
        if methods.is_empty() || !methods.iter().all(|m| is_noop_or_abstract(m)) {
            continue;
        }
        let noc = ctx
            .metrics
            .value(&module.module_name, &class.qualified_name, MetricId::Noc)
            .unwrap_or(0.0);
        if noc == 0.0 {
            let span = module.span_of(class.node.range);
            out.push(finding(
                ctx.config,
                SmellId::SpeculativeGenerality,
                &module.rel_path,
                span,
                format!("{}.{}", module.module_name, class.qualified_name),
                Measured::Num(methods.len() as f64),
                None,
                format!(
                    "class {} has only no-op/abstract methods and no subclasses",
                    class.qualified_name
                ),
            ));
        }
    }
}

fn is_noop_or_abstract(func: &FunctionDefInfo<'_>) -> bool {
    let abstract_decorator = func
        .node
        .decorator_list()
        .iter()
        .filter_map(crate::source::walker::base_name)
        .any(|d| d == "abstractmethod" || d.ends_with(".abstractmethod"));
    if abstract_decorator {
        return true;
    }
    func.node.body().iter().all(|stmt| match stmt {
        Stmt::Pass(_) => true,
        Stmt::Expr(e) => matches!(&*e.value, Expr::Constant(_)),
        Stmt::Raise(r) => r
            .exc
            .as_deref()
            .and_then(raised_name)
            .is_some_and(|n| n == "NotImplementedError"),
        _ => false,
    })
}

fn raised_name(expr: &Expr) -> Option<String> {
    match expr {
        Expr::Call(c) => crate::source::walker::dotted_name(&c.func),
        other => crate::source::walker::dotted_name(other),
    }
}

fn divergent_change(ctx: &AnalysisCtx<'_>, module: &SourceModule, defs: &Defs<'_>, out: &mut Vec<SmellFinding>) {
    if !ctx.config.enabled(SmellId::DivergentChange) {
        return;
    }
    let floor = ctx.config.value("DIVERGENT_CHANGE_MIN_CLUSTERS");

    // Names resolvable at module scope: imports plus top-level definitions.
    let mut module_scope: BTreeSet<String> = ctx
        .records
        .iter()
        .filter(|r| r.importer == module.module_name)
        .filter_map(|r| r.binding.clone())
        .collect();
    for func in &defs.functions {
        if !func.qualified_name.contains('.') {
            module_scope.insert(func.qualified_name.clone());
        }
    }
    for class in &defs.classes {
        if !class.qualified_name.contains('.') {
            module_scope.insert(class.qualified_name.clone());
        }
    }

    for class in &defs.classes {
        module_scope.remove(&class.qualified_name);
        let methods: Vec<_> = defs.methods_of(&class.qualified_name).collect();
        let refs: Vec<BTreeSet<&str>> = methods
            .iter()
            .map(|m| {
                let mut set = BTreeSet::new();
                visit_exprs(m.node.body(), true, &mut |expr| {
                    if let Expr::Name(n) = expr {
                        if matches!(n.ctx, ExprContext::Load) && module_scope.contains(n.id.as_str()) {
                            set.insert(n.id.as_str());
                        }
                    }
                });
                set
            })
            .collect();
        module_scope.insert(class.qualified_name.clone());

        let clusters = count_clusters(&refs);
        if clusters as f64 >= floor {
            let span = module.span_of(class.node.range);
            out.push(finding(
                ctx.config,
                SmellId::DivergentChange,
                &module.rel_path,
                span,
                format!("{}.{}", module.module_name, class.qualified_name),
                Measured::Num(clusters as f64),
                Some(floor),
                format!(
                    "methods of {} split into {clusters} disjoint external-reference clusters",
                    class.qualified_name
                ),
            ));
        }
    }
}

/// Connected components among methods with non-empty reference sets, merging
/// methods that share any external reference.
fn count_clusters(refs: &[BTreeSet<&str>]) -> usize {
    let active: Vec<&BTreeSet<&str>> = refs.iter().filter(|s| !s.is_empty()).collect();
    let mut parent: Vec<usize> = (0..active.len()).collect();
    fn root(parent: &mut Vec<usize>, mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for i in 0..active.len() {
        for j in i + 1..active.len() {
            if active[i].intersection(active[j]).next().is_some() {
                let (ri, rj) = (root(&mut parent, i), root(&mut parent, j));
                if ri != rj {
                    parent[ri] = rj;
                }
            }
        }
    }
    let mut roots = BTreeSet::new();
    for i in 0..active.len() {
        let r = root(&mut parent, i);
        roots.insert(r);
    }
    roots.len()
}

fn complex_conditionals(ctx: &AnalysisCtx<'_>, module: &SourceModule, tree: &[Stmt], out: &mut Vec<SmellFinding>) {
    if !ctx.config.enabled(SmellId::ComplexConditional) {
        return;
    }
    let limit = ctx.config.value("COMPLEX_CONDITIONAL_OPERATORS");
    visit_stmts(tree, true, &mut |stmt| {
        let test = match stmt {
            Stmt::If(s) => &s.test,
            Stmt::While(s) => &s.test,
            _ => return,
        };
        let mut operators = 0u64;
        visit_expr(test, &mut |e| {
            if let Expr::BoolOp(b) = e {
                operators += b.values.len().saturating_sub(1) as u64;
            }
        });
        if operators as f64 > limit {
            let line = module.line_of(test.range());
            out.push(finding(
                ctx.config,
                SmellId::ComplexConditional,
                &module.rel_path,
                (line, line),
                module.module_name.clone(),
                operators.into(),
                Some(limit),
                format!("condition combines {operators} boolean operators (limit {limit}); name the sub-conditions"),
            ));
        }
    });
}

fn message_chains(ctx: &AnalysisCtx<'_>, module: &SourceModule, tree: &[Stmt], out: &mut Vec<SmellFinding>) {
    if !ctx.config.enabled(SmellId::MessageChain) {
        return;
    }
    let limit = ctx.config.value("MESSAGE_CHAIN_LENGTH");

    // An attribute node is a chain head unless it sits on the value side of
    // an enclosing attribute/call/subscript chain.
    let mut interior: BTreeSet<(u32, u32)> = BTreeSet::new();
    let mut heads: Vec<&ast::ExprAttribute> = Vec::new();
    visit_exprs(tree, true, &mut |expr| {
        if let Expr::Attribute(a) = expr {
            heads.push(a);
            let mut value: &Expr = &a.value;
            loop {
                match value {
                    Expr::Attribute(inner) => {
                        interior.insert(range_key(inner.range));
                        value = &inner.value;
                    }
                    Expr::Call(c) => value = &c.func,
                    Expr::Subscript(s) => value = &s.value,
                    _ => break,
                }
            }
        }
    });

    for head in heads {
        if interior.contains(&range_key(head.range)) {
            continue;
        }
        let length = chain_length(&Expr::Attribute(head.clone()));
        if length as f64 > limit {
            let (start, end) = module.span_of(head.range);
            out.push(finding(
                ctx.config,
                SmellId::MessageChain,
                &module.rel_path,
                (start, end),
                module.module_name.clone(),
                length.into(),
                Some(limit),
                format!(
                    "message chain of {length} attribute hops (limit {limit}): {}",
                    module.text_of(head.range)
                ),
            ));
        }
    }
}

fn range_key(range: rustpython_parser::text_size::TextRange) -> (u32, u32) {
    (u32::from(range.start()), u32::from(range.end()))
}

fn chain_length(expr: &Expr) -> u64 {
    match expr {
        Expr::Attribute(a) => 1 + chain_length(&a.value),
        Expr::Call(c) => chain_length(&c.func),
        Expr::Subscript(s) => chain_length(&s.value),
        _ => 0,
    }
}

fn feature_envy(ctx: &AnalysisCtx<'_>, module: &SourceModule, defs: &Defs<'_>, out: &mut Vec<SmellFinding>) {
    if !ctx.config.enabled(SmellId::FeatureEnvy) {
        return;
    }
    let floor = ctx.config.value("FEATURE_ENVY_MIN_ACCESSES");
    // Imported names are modules/helpers, not envied objects.
    let import_bindings: BTreeSet<&str> = ctx
        .records
        .iter()
        .filter(|r| r.importer == module.module_name)
        .filter_map(|r| r.binding.as_deref())
        .collect();

    for func in &defs.functions {
        let Some(receiver) = func.receiver.as_deref() else { continue };
        let counts = classes::attribute_access_counts(func);
        let own = counts.get(receiver).copied().unwrap_or(0);
        let foreign = counts
            .iter()
            .filter(|(name, _)| name.as_str() != receiver && !import_bindings.contains(name.as_str()))
            .max_by(|a, b| a.1.cmp(b.1).then(b.0.cmp(a.0)));
        let Some((envied, accesses)) = foreign else { continue };
        if *accesses > own && *accesses as f64 >= floor {
            out.push(finding(
                ctx.config,
                SmellId::FeatureEnvy,
                &module.rel_path,
                span_of_func(module, func),
                format!("{}.{}", module.module_name, func.qualified_name),
                (*accesses).into(),
                Some(floor),
                format!(
                    "{} touches {envied} {accesses} times but its own receiver only {own}; move it closer to {envied}",
                    func.qualified_name
                ),
            ));
        }
    }
}

fn temporary_fields(ctx: &AnalysisCtx<'_>, module: &SourceModule, defs: &Defs<'_>, out: &mut Vec<SmellFinding>) {
    if !ctx.config.enabled(SmellId::TemporaryField) {
        return;
    }
    let max_methods = ctx.config.value("TEMPORARY_FIELD_MAX_METHODS");
    for class in &defs.classes {
        let methods: Vec<_> = defs.methods_of(&class.qualified_name).collect();
        let mut assigned_in_init: BTreeSet<&str> = BTreeSet::new();
        let mut assigned_outside: BTreeMap<&str, u32> = BTreeMap::new();
        let mut used_by: BTreeMap<&str, BTreeSet<&str>> = BTreeMap::new();
        for method in &methods {
            for (attr, is_store, range) in classes::receiver_attr_accesses(method) {
                used_by.entry(attr).or_default().insert(method.qualified_name.as_str());
                if is_store {
                    if method.node.name() == "__init__" {
                        assigned_in_init.insert(attr);
                    } else {
                        let line = module.line_of(range);
                        let entry = assigned_outside.entry(attr).or_insert(line);
                        *entry = (*entry).min(line);
                    }
                }
            }
        }
        for (attr, line) in assigned_outside {
            if assigned_in_init.contains(attr) || attr.starts_with("__") {
                continue;
            }
            let uses = used_by.get(attr).map(|s| s.len()).unwrap_or(0);
            if uses as f64 <= max_methods {
                out.push(finding(
                    ctx.config,
                    SmellId::TemporaryField,
                    &module.rel_path,
                    (line, line),
                    format!("{}.{}.{attr}", module.module_name, class.qualified_name),
                    uses.into(),
                    Some(max_methods),
                    format!(
                        "attribute {attr} of {} is set outside __init__ and used in {uses} method(s)",
                        class.qualified_name
                    ),
                ));
            }
        }
    }
}

fn comment_block_smells(ctx: &AnalysisCtx<'_>, module: &SourceModule, out: &mut Vec<SmellFinding>) {
    if !ctx.config.enabled(SmellId::LargeCommentBlock) {
        return;
    }
    let limit = ctx.config.value("LARGE_COMMENT_BLOCK_LINES");
    let flags = comment_flags(module);
    for (start, end, len) in comment_blocks(&flags) {
        if len as f64 > limit {
            out.push(finding(
                ctx.config,
                SmellId::LargeCommentBlock,
                &module.rel_path,
                (start, end),
                module.module_name.clone(),
                len.into(),
                Some(limit),
                format!("{len} consecutive comment lines (limit {limit}); consider moving prose to docs"),
            ));
        }
    }
}

fn magic_numbers(ctx: &AnalysisCtx<'_>, module: &SourceModule, tree: &[Stmt], out: &mut Vec<SmellFinding>) {
    if !ctx.config.enabled(SmellId::MagicNumber) {
        return;
    }
    // Literals assigned directly to CONSTANT_CASE names are allowed.
    let mut allowed: BTreeSet<(u32, u32)> = BTreeSet::new();
    visit_stmts(tree, true, &mut |stmt| {
        let (targets_const, value): (bool, &Expr) = match stmt {
            Stmt::Assign(a) => (
                a.targets.iter().all(|t| matches!(t, Expr::Name(n) if is_const_name(n.id.as_str()))),
                &a.value,
            ),
            Stmt::AnnAssign(a) => match (&a.target, &a.value) {
                (t, Some(v)) => (matches!(&**t, Expr::Name(n) if is_const_name(n.id.as_str())), v),
                _ => return,
            },
            _ => return,
        };
        if !targets_const {
            return;
        }
        allowed.insert(range_key(value.range()));
        if let Expr::Tuple(t) = value {
            for elt in &t.elts {
                allowed.insert(range_key(elt.range()));
            }
        }
    });

    visit_exprs(tree, true, &mut |expr| {
        let Expr::Constant(c) = expr else { return };
        let trivial = match &c.value {
            ast::Constant::Int(i) => matches!(i.to_string().as_str(), "0" | "1" | "2"),
            ast::Constant::Float(f) => *f == 0.0 || *f == 1.0 || *f == 2.0,
            _ => return,
        };
        if trivial || allowed.contains(&range_key(c.range)) {
            return;
        }
        let line = module.line_of(c.range);
        out.push(finding(
            ctx.config,
            SmellId::MagicNumber,
            &module.rel_path,
            (line, line),
            module.module_name.clone(),
            Measured::Text(module.text_of(c.range).to_string()),
            None,
            format!("magic number {}; extract a named constant", module.text_of(c.range)),
        ));
    });
}

fn is_const_name(name: &str) -> bool {
    name.chars().any(|c| c.is_ascii_uppercase()) && !name.chars().any(|c| c.is_ascii_lowercase())
}

fn global_abuse(ctx: &AnalysisCtx<'_>, module: &SourceModule, defs: &Defs<'_>, out: &mut Vec<SmellFinding>) {
    if !ctx.config.enabled(SmellId::GlobalVariableAbuse) {
        return;
    }
    let limit = ctx.config.value("GLOBAL_VARIABLE_ABUSE_COUNT");
    for func in &defs.functions {
        let mut declarations = 0u64;
        visit_stmts(func.node.body(), false, &mut |stmt| {
            if let Stmt::Global(g) = stmt {
                declarations += g.names.len() as u64;
            }
        });
        if declarations as f64 > limit {
            out.push(finding(
                ctx.config,
                SmellId::GlobalVariableAbuse,
                &module.rel_path,
                span_of_func(module, func),
                format!("{}.{}", module.module_name, func.qualified_name),
                declarations.into(),
                Some(limit),
                format!("{} declares {declarations} global names (limit {limit})", func.qualified_name),
            ));
        }
    }
}

fn long_lambdas(ctx: &AnalysisCtx<'_>, module: &SourceModule, tree: &[Stmt], out: &mut Vec<SmellFinding>) {
    if !ctx.config.enabled(SmellId::LongLambda) {
        return;
    }
    let limit = ctx.config.value("LONG_LAMBDA_CHARS");
    visit_exprs(tree, true, &mut |expr| {
        if let Expr::Lambda(l) = expr {
            let body_len = module.text_of(l.body.range()).chars().count() as u64;
            if body_len as f64 > limit {
                let line = module.line_of(l.range);
                out.push(finding(
                    ctx.config,
                    SmellId::LongLambda,
                    &module.rel_path,
                    (line, line),
                    module.module_name.clone(),
                    body_len.into(),
                    Some(limit),
                    format!("lambda body is {body_len} characters long (limit {limit}); use a named function"),
                ));
            }
        }
    });
}

fn mutable_defaults(ctx: &AnalysisCtx<'_>, module: &SourceModule, defs: &Defs<'_>, out: &mut Vec<SmellFinding>) {
    if !ctx.config.enabled(SmellId::MutableDefaultArgument) {
        return;
    }
    for func in &defs.functions {
        let args = func.node.args();
        for arg in args.posonlyargs.iter().chain(&args.args).chain(&args.kwonlyargs) {
            let Some(default) = arg.default.as_deref() else { continue };
            let literal = match default {
                Expr::List(_) => "list",
                Expr::Dict(_) => "dict",
                Expr::Set(_) => "set",
                _ => continue,
            };
            let line = module.line_of(default.range());
            out.push(finding(
                ctx.config,
                SmellId::MutableDefaultArgument,
                &module.rel_path,
                (line, line),
                format!("{}.{}", module.module_name, func.qualified_name),
                Measured::Text(format!("{literal} literal")),
                None,
                format!(
                    "parameter {} of {} defaults to a mutable {literal} literal; use None and initialize inside",
                    arg.def.arg, func.qualified_name
                ),
            ));
        }
    }
}

fn broad_excepts(ctx: &AnalysisCtx<'_>, module: &SourceModule, tree: &[Stmt], out: &mut Vec<SmellFinding>) {
    if !ctx.config.enabled(SmellId::BroadExcept) {
        return;
    }
    let mut handlers: Vec<&ast::ExceptHandlerExceptHandler> = Vec::new();
    visit_stmts(tree, true, &mut |stmt| {
        let hs = match stmt {
            Stmt::Try(t) => &t.handlers,
            Stmt::TryStar(t) => &t.handlers,
            _ => return,
        };
        for h in hs {
            let ast::ExceptHandler::ExceptHandler(h) = h;
            handlers.push(h);
        }
    });
    for h in handlers {
        let label = match h.type_.as_deref() {
            None => Some("bare except"),
            Some(t) => match crate::source::walker::dotted_name(t).as_deref() {
                Some("Exception") | Some("builtins.Exception") => Some("except Exception"),
                Some("BaseException") | Some("builtins.BaseException") => Some("except BaseException"),
                _ => None,
            },
        };
        if let Some(label) = label {
            let line = module.line_of(h.range);
            out.push(finding(
                ctx.config,
                SmellId::BroadExcept,
                &module.rel_path,
                (line, line),
                module.module_name.clone(),
                Measured::Text(label.to_string()),
                None,
                format!("{label} swallows unrelated failures; catch specific exceptions"),
            ));
        }
    }
}

fn unused_imports(ctx: &AnalysisCtx<'_>, module: &SourceModule, tree: &[Stmt], out: &mut Vec<SmellFinding>) {
    if !ctx.config.enabled(SmellId::UnusedImport) {
        return;
    }
    let mut loads: BTreeSet<&str> = BTreeSet::new();
    visit_exprs(tree, true, &mut |expr| {
        if let Expr::Name(n) = expr {
            if matches!(n.ctx, ExprContext::Load) {
                loads.insert(n.id.as_str());
            }
        }
    });
    for record in ctx.records.iter().filter(|r| r.importer == module.module_name) {
        let Some(binding) = record.binding.as_deref() else { continue };
        if record.target.starts_with("__future__") || binding == "_" {
            continue;
        }
        if !loads.contains(binding) && !ctx.index.all_exports.contains(binding) {
            out.push(finding(
                ctx.config,
                SmellId::UnusedImport,
                &module.rel_path,
                (record.line, record.line),
                format!("{}.{binding}", module.module_name),
                Measured::Text(binding.to_string()),
                None,
                format!("imported name {binding} is never used"),
            ));
        }
    }
}

fn dead_code(ctx: &AnalysisCtx<'_>, out: &mut Vec<SmellFinding>) {
    if !ctx.config.enabled(SmellId::DeadCode) {
        return;
    }
    for entity in ctx.entities {
        if !matches!(entity.kind, EntityKind::Function | EntityKind::Method | EntityKind::Class) {
            continue;
        }
        let simple = simple_name(entity);
        if is_dunder(simple)
            || !entity.decorators.is_empty()
            || ctx.config.is_whitelisted_name(simple)
            || ctx.index.all_exports.contains(simple)
        {
            continue;
        }
        let own_module_idx = ctx.index.module_idx.get(entity.module.as_str()).copied();
        let referenced = ctx.index.refs(simple).iter().any(|site| {
            let inside_own_span = Some(site.module_idx) == own_module_idx
                && site.line >= entity.line_start
                && site.line <= entity.line_end;
            !inside_own_span
        });
        if !referenced {
            out.push(finding(
                ctx.config,
                SmellId::DeadCode,
                ctx.rel_path(&entity.module),
                (entity.line_start, entity.line_end),
                entity.full_name(),
                Measured::Text("never referenced".into()),
                None,
                format!("{} {} is never referenced in the project", entity.kind.as_str(), entity.qualified_name),
            ));
        }
    }
}

fn shotgun_surgery(ctx: &AnalysisCtx<'_>, out: &mut Vec<SmellFinding>) {
    if !ctx.config.enabled(SmellId::PotentialShotgunSurgery) {
        return;
    }
    let limit = ctx.config.value("SHOTGUN_SURGERY_MODULES");
    for entity in ctx.entities {
        if !matches!(entity.kind, EntityKind::Function | EntityKind::Method) {
            continue;
        }
        let simple = simple_name(entity);
        if is_dunder(simple) {
            continue;
        }
        let mut modules: BTreeSet<&str> = BTreeSet::new();
        for site in ctx.index.refs(simple) {
            let module_name = ctx.modules[site.module_idx].module_name.as_str();
            if module_name != entity.module {
                modules.insert(module_name);
            }
        }
        if modules.len() as f64 > limit {
            out.push(finding(
                ctx.config,
                SmellId::PotentialShotgunSurgery,
                ctx.rel_path(&entity.module),
                (entity.line_start, entity.line_end),
                entity.full_name(),
                Measured::Num(modules.len() as f64),
                Some(limit),
                format!(
                    "{} is referenced from {} other modules (limit {limit}); changes ripple widely",
                    entity.qualified_name,
                    modules.len()
                ),
            ));
        }
    }
}

fn data_clumps(ctx: &AnalysisCtx<'_>, out: &mut Vec<SmellFinding>) {
    if !ctx.config.enabled(SmellId::DataClumps) {
        return;
    }
    let floor = ctx.config.value("DATA_CLUMPS_MIN_PARAMS") as usize;
    let callables: Vec<&Entity> = ctx
        .entities
        .iter()
        .filter(|e| matches!(e.kind, EntityKind::Function | EntityKind::Method))
        .filter(|e| e.parameters.len() >= floor)
        .collect();

    let sets: Vec<BTreeSet<&str>> = callables
        .iter()
        .map(|e| e.parameters.iter().map(String::as_str).collect())
        .collect();

    // group of parameter names -> participating entities.
    let mut groups: BTreeMap<Vec<&str>, BTreeSet<usize>> = BTreeMap::new();
    for i in 0..callables.len() {
        for j in i + 1..callables.len() {
            let shared: Vec<&str> = sets[i].intersection(&sets[j]).copied().collect();
            if shared.len() >= floor {
                let entry = groups.entry(shared).or_default();
                entry.insert(i);
                entry.insert(j);
            }
        }
    }

    for (group, members) in groups {
        let mut participants: Vec<&Entity> = members.iter().map(|i| callables[*i]).collect();
        participants.sort_by(|a, b| {
            ctx.rel_path(&a.module)
                .cmp(ctx.rel_path(&b.module))
                .then(a.line_start.cmp(&b.line_start))
        });
        let first = participants[0];
        let names: Vec<String> = participants.iter().map(|e| e.full_name()).collect();
        out.push(finding(
            ctx.config,
            SmellId::DataClumps,
            ctx.rel_path(&first.module),
            (first.line_start, first.line_end),
            names.join(", "),
            Measured::Num(group.len() as f64),
            Some(floor as f64),
            format!(
                "parameter group ({}) recurs in {} signatures: {}",
                group.join(", "),
                participants.len(),
                names.join(", ")
            ),
        ));
    }
}

fn simple_name(entity: &Entity) -> &str {
    entity.qualified_name.rsplit('.').next().unwrap_or(&entity.qualified_name)
}

fn is_dunder(name: &str) -> bool {
    name.starts_with("__") && name.ends_with("__")
}
