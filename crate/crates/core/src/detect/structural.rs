//! The structural detector bank: 19 threshold detectors over the metric
//! table and graph quantities.

use super::{finding, sort_findings, AnalysisCtx};
use crate::findings::{SmellFinding, SmellId};
use crate::metrics::MetricId;
use crate::source::EntityKind;

/// Scope a detector reads its metric at.
#[derive(Clone, Copy, PartialEq)]
enum Scope {
    Callable,
    Class,
    Module,
}

/// Metric-bound detectors: (id, threshold key, metric, scope).
const METRIC_BINDINGS: &[(SmellId, &str, MetricId, Scope)] = &[
    (SmellId::TooManyBranches, "TOO_MANY_BRANCHES", MetricId::BranchCount, Scope::Callable),
    (SmellId::HighCyclomatic, "HIGH_CYCLOMATIC", MetricId::Cc, Scope::Callable),
    (SmellId::DeepNesting, "DEEP_NESTING", MetricId::MaxNesting, Scope::Callable),
    (SmellId::HighRfc, "HIGH_RFC", MetricId::Rfc, Scope::Class),
    (SmellId::HighNom, "HIGH_NOM", MetricId::Nom, Scope::Class),
    (SmellId::HighWmpc1, "HIGH_WMPC1", MetricId::Wmpc1, Scope::Class),
    (SmellId::HighWmpc2, "HIGH_WMPC2", MetricId::Wmpc2, Scope::Class),
    (SmellId::HighLcom, "HIGH_LCOM", MetricId::Lcom, Scope::Class),
    (SmellId::HighCbo, "HIGH_CBO", MetricId::Cbo, Scope::Class),
    (SmellId::HighMpc, "HIGH_MPC", MetricId::Mpc, Scope::Class),
    (SmellId::DeepInheritance, "DEEP_INHERITANCE", MetricId::Dit, Scope::Class),
    (SmellId::ManyChildren, "MANY_CHILDREN", MetricId::Noc, Scope::Class),
    (SmellId::HighSize2, "HIGH_SIZE2", MetricId::Size2, Scope::Class),
    (SmellId::HighAttrCount, "HIGH_ATTR_COUNT", MetricId::AttrCount, Scope::Class),
    (SmellId::HighLoc, "HIGH_LOC", MetricId::Loc, Scope::Module),
];

pub fn detect_structural(ctx: &AnalysisCtx<'_>) -> Vec<SmellFinding> {
    let mut out = Vec::new();
    let cfg = ctx.config;

    for entity in ctx.entities {
        let scope = match entity.kind {
            EntityKind::Function | EntityKind::Method => Scope::Callable,
            EntityKind::Class => Scope::Class,
            EntityKind::Module => Scope::Module,
        };
        for (id, key, metric, binding_scope) in METRIC_BINDINGS {
            if *binding_scope != scope || !cfg.enabled(*id) {
                continue;
            }
            let Some(measured) = ctx.metrics.value(&entity.module, &entity.qualified_name, *metric) else {
                continue;
            };
            let limit = cfg.value(key);
            if measured > limit {
                out.push(finding(
                    cfg,
                    *id,
                    ctx.rel_path(&entity.module),
                    (entity.line_start, entity.line_end),
                    entity.full_name(),
                    measured.into(),
                    Some(limit),
                    format!("{} = {measured} exceeds {limit} for {}", metric.as_str(), entity.qualified_name),
                ));
            }
        }
    }

    // File length reads the physical line count.
    if cfg.enabled(SmellId::LongFile) {
        let limit = cfg.value("LONG_FILE");
        for module in ctx.modules.iter().filter(|m| m.parse_ok) {
            let lines = module.lines.len() as f64;
            if lines > limit {
                out.push(finding(
                    cfg,
                    SmellId::LongFile,
                    &module.rel_path,
                    (1, module.lines.len().max(1) as u32),
                    module.module_name.clone(),
                    lines.into(),
                    Some(limit),
                    format!("file is {lines} lines long (limit {limit}); split the module"),
                ));
            }
        }
    }

    // Graph quantities.
    let fan = ctx.graph.fan_in_out();
    for module in ctx.modules.iter().filter(|m| m.parse_ok) {
        let Some((fan_in, fan_out)) = fan.get(&module.module_name).copied() else { continue };
        let span = (1, module.lines.len().max(1) as u32);
        if cfg.enabled(SmellId::HighFanIn) {
            let limit = cfg.value("HIGH_FAN_IN");
            if fan_in as f64 > limit {
                out.push(finding(
                    cfg,
                    SmellId::HighFanIn,
                    &module.rel_path,
                    span,
                    module.module_name.clone(),
                    fan_in.into(),
                    Some(limit),
                    format!("{} is imported by {fan_in} modules (limit {limit})", module.module_name),
                ));
            }
        }
        if cfg.enabled(SmellId::HighFanOut) {
            let limit = cfg.value("HIGH_FAN_OUT");
            if fan_out as f64 > limit {
                out.push(finding(
                    cfg,
                    SmellId::HighFanOut,
                    &module.rel_path,
                    span,
                    module.module_name.clone(),
                    fan_out.into(),
                    Some(limit),
                    format!("{} depends on {fan_out} modules (limit {limit})", module.module_name),
                ));
            }
        }
    }

    if cfg.enabled(SmellId::LongModuleImports) {
        let limit = cfg.value("LONG_MODULE_IMPORTS");
        let by_importer = ctx.records_by_importer();
        for module in ctx.modules.iter().filter(|m| m.parse_ok) {
            let count = by_importer.get(module.module_name.as_str()).map(|v| v.len()).unwrap_or(0);
            if count as f64 > limit {
                out.push(finding(
                    cfg,
                    SmellId::LongModuleImports,
                    &module.rel_path,
                    (1, module.lines.len().max(1) as u32),
                    module.module_name.clone(),
                    count.into(),
                    Some(limit),
                    format!("{} declares {count} imports (limit {limit})", module.module_name),
                ));
            }
        }
    }

    sort_findings(&mut out);
    out
}
