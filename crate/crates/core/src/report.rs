//! Deterministic report assembly, rendering (text/json/csv), and corpus
//! aggregation.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::config::ThresholdConfig;
use crate::error::{Error, Result};
use crate::findings::{Category, Diagnostic, Severity, SmellFinding};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Text,
    Json,
    Csv,
}

impl ReportFormat {
    pub fn parse(s: &str) -> Result<ReportFormat> {
        match s {
            "text" => Ok(ReportFormat::Text),
            "json" => Ok(ReportFormat::Json),
            "csv" => Ok(ReportFormat::Csv),
            other => Err(Error::UnknownFormat(other.to_string())),
        }
    }
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct ReportSummary {
    pub total: usize,
    pub by_category: BTreeMap<Category, usize>,
    pub by_detector: BTreeMap<String, usize>,
    pub by_severity: BTreeMap<Severity, usize>,
}

/// One project's complete analysis result. Identical inputs produce
/// byte-identical serialized reports.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub schema_version: u32,
    pub tool_version: String,
    pub project_root: String,
    pub config_digest: String,
    pub module_count: usize,
    pub summary: ReportSummary,
    pub findings: Vec<SmellFinding>,
    pub diagnostics: Vec<Diagnostic>,
}

impl AnalysisReport {
    pub fn assemble(
        project_root: String,
        config: &ThresholdConfig,
        module_count: usize,
        findings: Vec<SmellFinding>,
        diagnostics: Vec<Diagnostic>,
    ) -> AnalysisReport {
        let mut summary = ReportSummary { total: findings.len(), ..Default::default() };
        for category in Category::ALL {
            summary.by_category.insert(category, 0);
        }
        for finding in &findings {
            *summary.by_category.entry(finding.category).or_insert(0) += 1;
            *summary.by_detector.entry(finding.catalog_id.as_str().to_string()).or_insert(0) += 1;
            *summary.by_severity.entry(finding.severity).or_insert(0) += 1;
        }
        AnalysisReport {
            schema_version: SCHEMA_VERSION,
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            project_root,
            config_digest: config.digest(),
            module_count,
            summary,
            findings,
            diagnostics,
        }
    }
}

/// Render a finalized report. Identical reports render byte-identically.
pub fn render(report: &AnalysisReport, format: ReportFormat) -> Result<String> {
    match format {
        ReportFormat::Json => {
            let mut s = serde_json::to_string_pretty(report).expect("report serializes");
            s.push('\n');
            Ok(s)
        }
        ReportFormat::Csv => render_csv(report),
        ReportFormat::Text => Ok(render_text(report)),
    }
}

fn render_csv(report: &AnalysisReport) -> Result<String> {
    let mut writer = csv::Writer::from_writer(Vec::new());
    writer
        .write_record([
            "catalog_id", "category", "file", "line_start", "line_end", "entity", "measured",
            "threshold", "severity", "message",
        ])
        .expect("csv header");
    for f in &report.findings {
        let threshold = f.threshold.map(|t| t.to_string()).unwrap_or_else(|| "n/a".to_string());
        writer
            .write_record([
                f.catalog_id.as_str(),
                f.category.as_str(),
                f.file.as_str(),
                &f.line_start.to_string(),
                &f.line_end.to_string(),
                f.entity.as_str(),
                &f.measured.to_string(),
                &threshold,
                f.severity.as_str(),
                f.message.as_str(),
            ])
            .expect("csv row");
    }
    let bytes = writer.into_inner().expect("csv flush");
    Ok(String::from_utf8(bytes).expect("csv is utf-8"))
}

fn render_text(report: &AnalysisReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "analysis of {}", report.project_root);
    let _ = writeln!(out, "config digest {}", &report.config_digest[..12]);
    let _ = writeln!(out);

    for category in Category::ALL {
        let in_category: Vec<&SmellFinding> =
            report.findings.iter().filter(|f| f.category == category).collect();
        if in_category.is_empty() {
            continue;
        }
        let _ = writeln!(out, "== {} smells ({}) ==", category, in_category.len());
        let mut current_file = "";
        for f in &in_category {
            if f.file != current_file {
                current_file = &f.file;
                let _ = writeln!(out, "  {current_file}");
            }
            let _ = writeln!(
                out,
                "    {}:{} [{}][{}] {}",
                f.line_start, f.line_end, f.catalog_id, f.severity, f.message
            );
        }
        let _ = writeln!(out);
    }

    let files: BTreeSet<&str> = report.findings.iter().map(|f| f.file.as_str()).collect();
    let sev = |s: Severity| report.summary.by_severity.get(&s).copied().unwrap_or(0);
    let _ = writeln!(
        out,
        "{} smells detected in {} files (high: {}, medium: {}, low: {})",
        report.summary.total,
        files.len(),
        sev(Severity::High),
        sev(Severity::Medium),
        sev(Severity::Low),
    );
    if !report.diagnostics.is_empty() {
        let _ = writeln!(out, "diagnostics ({}):", report.diagnostics.len());
        for d in &report.diagnostics {
            let loc = match (d.file.is_empty(), d.line) {
                (true, _) => String::new(),
                (false, Some(line)) => format!("{}:{line} ", d.file),
                (false, None) => format!("{} ", d.file),
            };
            let _ = writeln!(out, "  {loc}{:?}: {}", d.kind, d.message);
        }
    }
    out
}

// --- corpus aggregation ---

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct CorpusTotals {
    pub total_smells: usize,
    pub total_files_affected: usize,
    pub unique_smell_names: usize,
    pub total_projects: usize,
    pub total_modules: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DetectorShare {
    pub catalog_id: String,
    pub count: usize,
    /// Share of this detector within its category, percent, 2 decimals.
    pub percent: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ProjectRow {
    pub project: String,
    pub total_smells: usize,
    pub architectural_pct: f64,
    pub code_pct: f64,
    pub structural_pct: f64,
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct CorpusSummary {
    pub totals: CorpusTotals,
    pub by_category: BTreeMap<Category, Vec<DetectorShare>>,
    pub per_project: Vec<ProjectRow>,
}

fn round2(x: f64) -> f64 {
    (x * 100.0).round() / 100.0
}

/// Aggregate per-project reports into corpus-level tables.
pub fn aggregate_corpus(projects: &[(String, AnalysisReport)]) -> CorpusSummary {
    let mut totals = CorpusTotals { total_projects: projects.len(), ..Default::default() };
    let mut files: BTreeSet<(String, String)> = BTreeSet::new();
    let mut detector_counts: BTreeMap<Category, BTreeMap<String, usize>> = BTreeMap::new();
    let mut per_project = Vec::new();

    for (name, report) in projects {
        totals.total_smells += report.summary.total;
        totals.total_modules += report.module_count;
        for f in &report.findings {
            files.insert((name.clone(), f.file.clone()));
            *detector_counts
                .entry(f.category)
                .or_default()
                .entry(f.catalog_id.as_str().to_string())
                .or_insert(0) += 1;
        }
        let total = report.summary.total;
        let pct = |c: Category| {
            let n = report.summary.by_category.get(&c).copied().unwrap_or(0);
            if total == 0 {
                0.0
            } else {
                round2(n as f64 / total as f64 * 100.0)
            }
        };
        per_project.push(ProjectRow {
            project: name.clone(),
            total_smells: total,
            architectural_pct: pct(Category::Architectural),
            code_pct: pct(Category::Code),
            structural_pct: pct(Category::Structural),
        });
    }
    totals.total_files_affected = files.len();
    totals.unique_smell_names = detector_counts.values().map(|m| m.len()).sum();

    let mut by_category = BTreeMap::new();
    for (category, counts) in detector_counts {
        let category_total: usize = counts.values().sum();
        let mut shares: Vec<DetectorShare> = counts
            .into_iter()
            .map(|(catalog_id, count)| DetectorShare {
                catalog_id,
                count,
                percent: round2(count as f64 / category_total as f64 * 100.0),
            })
            .collect();
        shares.sort_by(|a, b| b.count.cmp(&a.count).then(a.catalog_id.cmp(&b.catalog_id)));
        by_category.insert(category, shares);
    }

    per_project.sort_by(|a, b| a.project.cmp(&b.project));
    CorpusSummary { totals, by_category, per_project }
}

impl CorpusSummary {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("summary serializes");
        s.push('\n');
        s
    }

    /// Summary statistics table: metric,value rows.
    pub fn totals_csv(&self) -> String {
        let mut out = String::from("metric,value\n");
        let _ = writeln!(out, "Total Smells Detected,{}", self.totals.total_smells);
        let _ = writeln!(out, "Total Files Affected,{}", self.totals.total_files_affected);
        let _ = writeln!(out, "Unique Smell Names,{}", self.totals.unique_smell_names);
        let _ = writeln!(out, "Total Projects,{}", self.totals.total_projects);
        let _ = writeln!(out, "Total Modules,{}", self.totals.total_modules);
        out
    }

    /// Per-category detector distribution table.
    pub fn distribution_csv(&self) -> String {
        let mut out = String::from("category,catalog_id,count,percent\n");
        for (category, shares) in &self.by_category {
            for share in shares {
                let _ = writeln!(out, "{category},{},{},{:.2}", share.catalog_id, share.count, share.percent);
            }
        }
        out
    }

    /// Per-project distribution table.
    pub fn projects_csv(&self) -> String {
        let mut out = String::from("project,total_smells,architectural_pct,code_pct,structural_pct\n");
        for row in &self.per_project {
            let _ = writeln!(
                out,
                "{},{},{:.2},{:.2},{:.2}",
                row.project, row.total_smells, row.architectural_pct, row.code_pct, row.structural_pct
            );
        }
        out
    }
}
