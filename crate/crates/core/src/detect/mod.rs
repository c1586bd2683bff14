//! The three detector banks and their shared context.

pub mod architectural;
pub mod code;
pub mod duplicates;
pub mod index;
pub mod structural;

pub use architectural::detect_architectural;
pub use code::detect_code_smells;
pub use structural::detect_structural;

use std::collections::BTreeMap;

use crate::config::ThresholdConfig;
use crate::findings::{Measured, SmellFinding, SmellId};
use crate::graph::DependencyGraph;
use crate::metrics::ProjectMetrics;
use crate::source::{Entity, ImportRecord, SourceModule};
use index::ProjectIndex;

/// Immutable inputs shared by every detector.
pub struct AnalysisCtx<'a> {
    pub modules: &'a [SourceModule],
    pub entities: &'a [Entity],
    pub records: &'a [ImportRecord],
    pub graph: &'a DependencyGraph,
    pub metrics: &'a ProjectMetrics,
    pub index: &'a ProjectIndex<'a>,
    pub config: &'a ThresholdConfig,
}

impl<'a> AnalysisCtx<'a> {
    pub fn module_by_name(&self, name: &str) -> Option<&'a SourceModule> {
        self.index.module_idx.get(name).map(|idx| &self.modules[*idx])
    }

    pub fn rel_path(&self, module_name: &str) -> &'a str {
        self.module_by_name(module_name).map(|m| m.rel_path.as_str()).unwrap_or("")
    }

    /// Import records grouped by importer, in input order.
    pub fn records_by_importer(&self) -> BTreeMap<&'a str, Vec<&'a ImportRecord>> {
        let mut map: BTreeMap<&str, Vec<&ImportRecord>> = BTreeMap::new();
        for r in self.records {
            map.entry(r.importer.as_str()).or_default().push(r);
        }
        map
    }
}

/// Construct one finding with severity taken from the config.
#[allow(clippy::too_many_arguments)]
pub(crate) fn finding(
    config: &ThresholdConfig,
    id: SmellId,
    file: &str,
    span: (u32, u32),
    entity: String,
    measured: Measured,
    threshold: Option<f64>,
    message: String,
) -> SmellFinding {
    SmellFinding {
        catalog_id: id,
        category: id.category(),
        file: file.to_string(),
        line_start: span.0,
        line_end: span.1,
        entity,
        measured,
        threshold,
        severity: config.severity(id),
        message,
    }
}

/// Final report ordering.
pub(crate) fn sort_findings(findings: &mut [SmellFinding]) {
    findings.sort_by(|a, b| {
        a.file
            .cmp(&b.file)
            .then(a.line_start.cmp(&b.line_start))
            .then(a.catalog_id.as_str().cmp(b.catalog_id.as_str()))
            .then(a.entity.cmp(&b.entity))
            .then(a.message.cmp(&b.message))
    });
}
