//! Multi-level smell detection for Python 3 source trees.
//!
//! The pipeline: discover and parse files into a source model, resolve
//! imports into a module dependency graph, compute per-entity metrics, run
//! the code / structural / architectural detector banks under a YAML-driven
//! threshold configuration, and render deterministic reports.

pub mod catalog;
pub mod config;
pub mod detect;
pub mod error;
pub mod findings;
pub mod graph;
pub mod metrics;
pub mod pipeline;
pub mod report;
pub mod source;

pub use config::{ThresholdConfig, ThresholdEntry};
pub use error::{Error, Result};
pub use findings::{Category, Diagnostic, DiagnosticKind, Measured, Severity, SmellFinding, SmellId};
pub use graph::{build_graph, find_cycles, DependencyGraph};
pub use pipeline::{analyze_corpus, analyze_project, AnalysisOptions, CorpusOutcome};
pub use report::{aggregate_corpus, render, AnalysisReport, CorpusSummary, ReportFormat};
pub use source::{
    discover_project, extract_entities, resolve_imports, Entity, EntityKind, ImportKind,
    ImportRecord, SourceModule,
};
