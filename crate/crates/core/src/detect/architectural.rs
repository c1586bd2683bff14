//! The architectural detector bank: system-level smells over the dependency
//! graph and project-wide entity index.

use std::collections::{BTreeMap, BTreeSet};

use rustpython_parser::ast::{self, Expr, Stmt};

use super::{finding, sort_findings, AnalysisCtx};
use crate::findings::{Diagnostic, Measured, SmellFinding, SmellId};
use crate::graph::find_cycles;
use crate::source::walker::visit_exprs;
use crate::source::{Entity, EntityKind, ImportKind, SourceModule};

pub fn detect_architectural(ctx: &AnalysisCtx<'_>) -> (Vec<SmellFinding>, Vec<Diagnostic>) {
    let mut out = Vec::new();
    let mut diagnostics = Vec::new();

    detect_cycles(ctx, &mut out, &mut diagnostics);
    detect_hubs(ctx, &mut out);
    detect_unstable_dependencies(ctx, &mut out);
    detect_god_objects(ctx, &mut out);
    detect_scattered_functionality(ctx, &mut out);
    detect_redundant_abstractions(ctx, &mut out);
    detect_improper_api_usage(ctx, &mut out);

    sort_findings(&mut out);
    (out, diagnostics)
}

fn module_span(module: &SourceModule) -> (u32, u32) {
    (1, module.lines.len().max(1) as u32)
}

fn detect_cycles(ctx: &AnalysisCtx<'_>, out: &mut Vec<SmellFinding>, diagnostics: &mut Vec<Diagnostic>) {
    if !ctx.config.enabled(SmellId::CyclicDependency) {
        return;
    }
    let max_length = ctx.config.value("MAX_CYCLE_LENGTH") as usize;
    let cap = ctx.config.value("MAX_CYCLES_PER_SCC") as usize;
    let (cycles, diags) = find_cycles(ctx.graph, max_length, cap);
    diagnostics.extend(diags);
    for cycle in cycles {
        let first = &cycle[0];
        out.push(finding(
            ctx.config,
            SmellId::CyclicDependency,
            ctx.rel_path(first),
            (1, 1),
            cycle.join(" -> "),
            Measured::Num(cycle.len() as f64),
            Some(max_length as f64),
            format!("cyclic dependency: {} -> {}", cycle.join(" -> "), first),
        ));
    }
}

fn detect_hubs(ctx: &AnalysisCtx<'_>, out: &mut Vec<SmellFinding>) {
    if !ctx.config.enabled(SmellId::HubLikeDependency) || ctx.graph.nodes.len() < 2 {
        return;
    }
    let min_degree = ctx.config.value("HUB_MIN_DEGREE");
    let ratio = ctx.config.value("HUB_RATIO");
    let fan = ctx.graph.fan_in_out();
    let mean_total: f64 =
        fan.values().map(|(fi, fo)| (fi + fo) as f64).sum::<f64>() / fan.len() as f64;

    for (module, (fan_in, fan_out)) in &fan {
        let total = (fan_in + fan_out) as f64;
        if *fan_in as f64 > min_degree && *fan_out as f64 > min_degree && total > ratio * mean_total {
            let span = ctx.module_by_name(module).map(module_span).unwrap_or((1, 1));
            out.push(finding(
                ctx.config,
                SmellId::HubLikeDependency,
                ctx.rel_path(module),
                span,
                module.clone(),
                total.into(),
                Some(ratio * mean_total),
                format!(
                    "{module} is a hub: fan-in {fan_in}, fan-out {fan_out}, total degree {total} vs mean {mean_total:.2}"
                ),
            ));
        }
    }
}

fn detect_unstable_dependencies(ctx: &AnalysisCtx<'_>, out: &mut Vec<SmellFinding>) {
    if !ctx.config.enabled(SmellId::UnstableDependency) {
        return;
    }
    let gap = ctx.config.value("INSTABILITY_GAP");
    let instability = ctx.graph.instability();
    for ((from, to), lines) in &ctx.graph.edges {
        let (Some(i_from), Some(i_to)) = (instability.get(from), instability.get(to)) else {
            continue;
        };
        let delta = i_to - i_from;
        if delta > gap {
            let line = lines.first().copied().unwrap_or(1);
            out.push(finding(
                ctx.config,
                SmellId::UnstableDependency,
                ctx.rel_path(from),
                (line, line),
                format!("{from} -> {to}"),
                Measured::Num(delta),
                Some(gap),
                format!(
                    "stable module {from} (I={i_from:.2}) depends on less stable {to} (I={i_to:.2})"
                ),
            ));
        }
    }
}

fn detect_god_objects(ctx: &AnalysisCtx<'_>, out: &mut Vec<SmellFinding>) {
    if !ctx.config.enabled(SmellId::GodObject) {
        return;
    }
    let fn_limit = ctx.config.value("GOD_OBJECT_FUNCTIONS");
    let method_limit = ctx.config.value("GOD_OBJECT_METHODS");

    let mut per_module: BTreeMap<&str, u64> = BTreeMap::new();
    for entity in ctx.entities {
        let counts = match entity.kind {
            EntityKind::Function => !entity.qualified_name.contains('.'),
            EntityKind::Method => true,
            _ => false,
        };
        if counts {
            *per_module.entry(entity.module.as_str()).or_insert(0) += 1;
        }
    }
    for (module, count) in per_module {
        if count as f64 > fn_limit {
            let span = ctx.module_by_name(module).map(module_span).unwrap_or((1, 1));
            out.push(finding(
                ctx.config,
                SmellId::GodObject,
                ctx.rel_path(module),
                span,
                module.to_string(),
                count.into(),
                Some(fn_limit),
                format!("module {module} concentrates {count} functions/methods (limit {fn_limit})"),
            ));
        }
    }

    for entity in ctx.entities.iter().filter(|e| e.kind == EntityKind::Class) {
        let Some(methods) = ctx
            .metrics
            .value(&entity.module, &entity.qualified_name, crate::metrics::MetricId::Nom)
        else {
            continue;
        };
        if methods > method_limit {
            out.push(finding(
                ctx.config,
                SmellId::GodObject,
                ctx.rel_path(&entity.module),
                (entity.line_start, entity.line_end),
                entity.full_name(),
                methods.into(),
                Some(method_limit),
                format!("class {} concentrates {methods} methods (limit {method_limit})", entity.qualified_name),
            ));
        }
    }
}

fn detect_scattered_functionality(ctx: &AnalysisCtx<'_>, out: &mut Vec<SmellFinding>) {
    if !ctx.config.enabled(SmellId::ScatteredFunctionality) {
        return;
    }
    let limit = ctx.config.value("SCATTER_MODULES");

    let mut sites: BTreeMap<&str, Vec<&Entity>> = BTreeMap::new();
    for entity in ctx.entities {
        if entity.kind != EntityKind::Function || entity.qualified_name.contains('.') {
            continue;
        }
        let name = entity.qualified_name.as_str();
        if (name.starts_with("__") && name.ends_with("__")) || ctx.config.is_whitelisted_name(name) {
            continue;
        }
        sites.entry(name).or_default().push(entity);
    }

    for (name, defs) in sites {
        let modules: BTreeSet<&str> = defs.iter().map(|e| e.module.as_str()).collect();
        if modules.len() as f64 > limit {
            let mut ordered = defs.clone();
            ordered.sort_by(|a, b| {
                ctx.rel_path(&a.module)
                    .cmp(ctx.rel_path(&b.module))
                    .then(a.line_start.cmp(&b.line_start))
            });
            let first = ordered[0];
            let listed: Vec<String> = ordered
                .iter()
                .map(|e| format!("{}:{}", ctx.rel_path(&e.module), e.line_start))
                .collect();
            out.push(finding(
                ctx.config,
                SmellId::ScatteredFunctionality,
                ctx.rel_path(&first.module),
                (first.line_start, first.line_end),
                name.to_string(),
                Measured::Num(modules.len() as f64),
                Some(limit),
                format!(
                    "function {name} is defined in {} modules (limit {limit}): {}",
                    modules.len(),
                    listed.join(", ")
                ),
            ));
        }
    }
}

fn detect_redundant_abstractions(ctx: &AnalysisCtx<'_>, out: &mut Vec<SmellFinding>) {
    if !ctx.config.enabled(SmellId::RedundantAbstraction) {
        return;
    }
    let similarity_floor = ctx.config.value("SIMILARITY_THRESHOLD");
    let min_methods = ctx.config.value("REDUNDANCY_MIN_METHODS") as usize;

    let classes: Vec<&Entity> = ctx.entities.iter().filter(|e| e.kind == EntityKind::Class).collect();
    let method_sets: Vec<BTreeSet<&str>> = classes
        .iter()
        .map(|class| public_method_names(ctx, class))
        .collect();

    for i in 0..classes.len() {
        for j in i + 1..classes.len() {
            let (a, b) = (classes[i], classes[j]);
            if a.module == b.module {
                continue;
            }
            let (sa, sb) = (&method_sets[i], &method_sets[j]);
            if sa.len() < min_methods || sb.len() < min_methods {
                continue;
            }
            let intersection = sa.intersection(sb).count();
            let union = sa.union(sb).count();
            let jaccard = intersection as f64 / union as f64;
            if jaccard >= similarity_floor {
                out.push(finding(
                    ctx.config,
                    SmellId::RedundantAbstraction,
                    ctx.rel_path(&a.module),
                    (a.line_start, a.line_end),
                    format!("{} ~ {}", a.full_name(), b.full_name()),
                    Measured::Num(jaccard),
                    Some(similarity_floor),
                    format!(
                        "classes {} and {} expose near-identical interfaces (Jaccard {jaccard:.2}); consider merging",
                        a.full_name(),
                        b.full_name()
                    ),
                ));
            }
        }
    }
}

fn public_method_names<'a>(ctx: &AnalysisCtx<'a>, class: &Entity) -> BTreeSet<&'a str> {
    let prefix = format!("{}.", class.qualified_name);
    ctx.entities
        .iter()
        .filter(|e| e.kind == EntityKind::Method && e.module == class.module)
        .filter_map(|e| e.qualified_name.strip_prefix(&prefix))
        .filter(|rest| !rest.contains('.') && !rest.starts_with('_'))
        .collect()
}

fn detect_improper_api_usage(ctx: &AnalysisCtx<'_>, out: &mut Vec<SmellFinding>) {
    if !ctx.config.enabled(SmellId::ImproperApiUsage) {
        return;
    }
    let repeat_limit = ctx.config.value("API_REPEAT_CALLS");

    for (idx, module) in ctx.modules.iter().enumerate() {
        let Some(tree) = &module.tree else { continue };
        // Names bound by stdlib/third-party imports in this module.
        let external: BTreeSet<&str> = ctx
            .records
            .iter()
            .filter(|r| r.importer == module.module_name)
            .filter(|r| matches!(r.kind, ImportKind::Stdlib | ImportKind::ThirdParty))
            .filter_map(|r| r.binding.as_deref())
            .collect();

        underscore_access(ctx, module, tree, &external, out);
        dynamic_imports(ctx, module, tree, out);
        repeated_calls(ctx, idx, module, &external, repeat_limit, out);
    }
}

/// Rule (a): reaching into underscore-prefixed internals of external imports.
fn underscore_access(
    ctx: &AnalysisCtx<'_>,
    module: &SourceModule,
    tree: &[Stmt],
    external: &BTreeSet<&str>,
    out: &mut Vec<SmellFinding>,
) {
    let mut interior: BTreeSet<(u32, u32)> = BTreeSet::new();
    let mut heads: Vec<&ast::ExprAttribute> = Vec::new();
    visit_exprs(tree, true, &mut |expr| {
        if let Expr::Attribute(a) = expr {
            heads.push(a);
            let mut value: &Expr = &a.value;
            loop {
                match value {
                    Expr::Attribute(inner) => {
                        interior.insert((u32::from(inner.range.start()), u32::from(inner.range.end())));
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
        let key = (u32::from(head.range.start()), u32::from(head.range.end()));
        if interior.contains(&key) {
            continue;
        }
        let Some((root, segments)) = chain_segments(&Expr::Attribute(head.clone())) else {
            continue;
        };
        if !external.contains(root.as_str()) {
            continue;
        }
        let private = segments
            .iter()
            .find(|s| s.starts_with('_') && !(s.starts_with("__") && s.ends_with("__")));
        if let Some(private) = private {
            let line = module.line_of(head.range);
            out.push(finding(
                ctx.config,
                SmellId::ImproperApiUsage,
                &module.rel_path,
                (line, line),
                module.module_name.clone(),
                Measured::Text(format!("{root}.{private}")),
                None,
                format!("access to non-public external attribute {root}.{private}"),
            ));
        }
    }
}

/// Root name and attribute segments of an attribute/call chain.
fn chain_segments(expr: &Expr) -> Option<(String, Vec<String>)> {
    match expr {
        Expr::Attribute(a) => {
            let (root, mut segments) = chain_segments(&a.value)?;
            segments.push(a.attr.to_string());
            Some((root, segments))
        }
        Expr::Call(c) => chain_segments(&c.func),
        Expr::Subscript(s) => chain_segments(&s.value),
        Expr::Name(n) => Some((n.id.to_string(), Vec::new())),
        _ => None,
    }
}

/// Rule (b): dynamic import calls.
fn dynamic_imports(ctx: &AnalysisCtx<'_>, module: &SourceModule, tree: &[Stmt], out: &mut Vec<SmellFinding>) {
    visit_exprs(tree, true, &mut |expr| {
        let Expr::Call(call) = expr else { return };
        let Some(name) = crate::source::walker::dotted_name(&call.func) else { return };
        if name == "__import__" || name == "importlib.import_module" || name.ends_with(".import_module") {
            let line = module.line_of(call.range);
            out.push(finding(
                ctx.config,
                SmellId::ImproperApiUsage,
                &module.rel_path,
                (line, line),
                module.module_name.clone(),
                Measured::Text(name.clone()),
                None,
                format!("dynamic import via {name} bypasses static dependency analysis"),
            ));
        }
    });
}

/// Rule (c): the same external call expression repeated inside one function.
fn repeated_calls(
    ctx: &AnalysisCtx<'_>,
    module_idx: usize,
    module: &SourceModule,
    external: &BTreeSet<&str>,
    repeat_limit: f64,
    out: &mut Vec<SmellFinding>,
) {
    let Some(defs) = ctx.index.defs.get(&module_idx) else { return };
    for func in &defs.functions {
        let mut counts: BTreeMap<&str, (u64, u32)> = BTreeMap::new();
        visit_exprs(func.node.body(), false, &mut |expr| {
            let Expr::Call(call) = expr else { return };
            let Some((root, _)) = chain_segments(&call.func) else { return };
            if !external.contains(root.as_str()) {
                return;
            }
            let text = module.text_of(call.range);
            let line = module.line_of(call.range);
            let entry = counts.entry(text).or_insert((0, line));
            entry.0 += 1;
            entry.1 = entry.1.min(line);
        });
        for (text, (count, line)) in counts {
            if count as f64 > repeat_limit {
                out.push(finding(
                    ctx.config,
                    SmellId::ImproperApiUsage,
                    &module.rel_path,
                    (line, line),
                    format!("{}.{}", module.module_name, func.qualified_name),
                    Measured::Num(count as f64),
                    Some(repeat_limit),
                    format!("{count} identical external calls `{text}` in {} (limit {repeat_limit}); hoist the result", func.qualified_name),
                ));
            }
        }
    }
}
