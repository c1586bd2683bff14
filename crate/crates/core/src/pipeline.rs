//! The full analysis pipeline: discovery -> parse -> resolve -> graph ->
//! metrics -> detector banks -> report; plus corpus mode.

use std::collections::BTreeSet;
use std::path::Path;

use crate::config::ThresholdConfig;
use crate::detect::index::ProjectIndex;
use crate::detect::{detect_architectural, detect_code_smells, detect_structural, sort_findings, AnalysisCtx};
use crate::error::{Error, Result};
use crate::findings::{Category, Diagnostic, DiagnosticKind};
use crate::graph::build_graph;
use crate::metrics::compute_project_metrics;
use crate::report::{aggregate_corpus, AnalysisReport, CorpusSummary};
use crate::source::stdlib::stdlib_names;
use crate::source::{discover_project, extract_entities, resolve_imports, Entity};

#[derive(Debug, Clone, Default)]
pub struct AnalysisOptions {
    pub config: ThresholdConfig,
    /// Per-file parallelism; None uses the default thread pool.
    pub jobs: Option<usize>,
    /// Restrict to a subset of detector banks; None runs all three.
    pub only: Option<BTreeSet<Category>>,
}

impl AnalysisOptions {
    fn bank_enabled(&self, category: Category) -> bool {
        self.only.as_ref().map(|set| set.contains(&category)).unwrap_or(true)
    }
}

/// Analyze one project root into a finalized report.
pub fn analyze_project(root: &Path, options: &AnalysisOptions) -> Result<AnalysisReport> {
    match options.jobs {
        Some(jobs) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(jobs.max(1))
                .build()
                .expect("thread pool");
            pool.install(|| run_pipeline(root, options))
        }
        None => run_pipeline(root, options),
    }
}

fn run_pipeline(root: &Path, options: &AnalysisOptions) -> Result<AnalysisReport> {
    let config = &options.config;
    let modules = discover_project(root, &config.excludes)?;

    let mut diagnostics: Vec<Diagnostic> = modules
        .iter()
        .filter(|m| !m.parse_ok)
        .map(|m| {
            Diagnostic::new(
                DiagnosticKind::ParseFailure,
                m.rel_path.clone(),
                None,
                m.parse_error.clone().unwrap_or_else(|| "parse failure".to_string()),
            )
        })
        .collect();

    let stdlib = stdlib_names(config.stdlib_override.as_deref());
    let (records, import_diags) = resolve_imports(&modules, &stdlib);
    diagnostics.extend(import_diags);

    let (graph, graph_diags) = build_graph(&records, &modules);
    diagnostics.extend(graph_diags);

    let (metrics, metric_diags) = compute_project_metrics(&modules, &records);
    diagnostics.extend(metric_diags);

    let entities: Vec<Entity> = modules.iter().flat_map(extract_entities).collect();
    let index = ProjectIndex::build(&modules);
    let ctx = AnalysisCtx {
        modules: &modules,
        entities: &entities,
        records: &records,
        graph: &graph,
        metrics: &metrics,
        index: &index,
        config,
    };

    let mut findings = Vec::new();
    if options.bank_enabled(Category::Code) {
        findings.extend(detect_code_smells(&ctx));
    }
    if options.bank_enabled(Category::Structural) {
        findings.extend(detect_structural(&ctx));
    }
    if options.bank_enabled(Category::Architectural) {
        let (arch, arch_diags) = detect_architectural(&ctx);
        findings.extend(arch);
        diagnostics.extend(arch_diags);
    }
    sort_findings(&mut findings);
    diagnostics.sort();
    diagnostics.dedup();

    Ok(AnalysisReport::assemble(
        root.display().to_string(),
        config,
        modules.len(),
        findings,
        diagnostics,
    ))
}

#[derive(Debug)]
pub struct CorpusOutcome {
    /// (project directory name, report), sorted by name.
    pub projects: Vec<(String, AnalysisReport)>,
    pub summary: CorpusSummary,
    /// Projects that failed analysis; recorded, never fatal.
    pub failures: Vec<Diagnostic>,
}

/// Analyze every subdirectory of `corpus_root` as an independent project.
pub fn analyze_corpus(corpus_root: &Path, options: &AnalysisOptions) -> Result<CorpusOutcome> {
    if !corpus_root.is_dir() {
        return Err(Error::RootMissing(corpus_root.to_path_buf()));
    }
    let mut candidates: Vec<(String, std::path::PathBuf)> = Vec::new();
    let entries = std::fs::read_dir(corpus_root)
        .map_err(|source| Error::Io { path: corpus_root.to_path_buf(), source })?;
    for entry in entries.flatten() {
        let path = entry.path();
        let is_symlink = path.symlink_metadata().map(|m| m.file_type().is_symlink()).unwrap_or(false);
        if path.is_dir() || is_symlink {
            let name = entry.file_name().to_string_lossy().to_string();
            candidates.push((name, path));
        }
    }
    candidates.sort();
    if candidates.is_empty() {
        return Err(Error::EmptyCorpus(corpus_root.to_path_buf()));
    }

    let mut projects = Vec::new();
    let mut failures = Vec::new();
    for (name, path) in candidates {
        match analyze_project(&path, options) {
            Ok(report) => projects.push((name, report)),
            Err(err) => failures.push(Diagnostic::new(
                DiagnosticKind::ProjectFailure,
                name,
                None,
                err.to_string(),
            )),
        }
    }
    let summary = aggregate_corpus(&projects);
    Ok(CorpusOutcome { projects, summary, failures })
}
