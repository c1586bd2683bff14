//! Shared helpers for the acceptance criteria.

use std::path::{Path, PathBuf};

use pysniff_core::{analyze_project, AnalysisOptions, AnalysisReport, SmellFinding, SmellId, ThresholdConfig};
use tempfile::TempDir;

pub fn fixtures_corpus() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/corpus")
}

pub fn write_project(root: &Path, files: &[(String, String)]) {
    for (rel, src) in files {
        let full = root.join(rel);
        std::fs::create_dir_all(full.parent().unwrap()).unwrap();
        std::fs::write(full, src).unwrap();
    }
}

pub fn analyze_files(files: &[(String, String)]) -> AnalysisReport {
    analyze_files_with(files, ThresholdConfig::default())
}

pub fn analyze_files_with(files: &[(String, String)], config: ThresholdConfig) -> AnalysisReport {
    let dir = TempDir::new().unwrap();
    write_project(dir.path(), files);
    let options = AnalysisOptions { config, jobs: Some(1), only: None };
    analyze_project(dir.path(), &options).unwrap()
}

pub fn findings_of(report: &AnalysisReport, id: SmellId) -> Vec<&SmellFinding> {
    report.findings.iter().filter(|f| f.catalog_id == id).collect()
}

pub fn files(list: &[(&str, &str)]) -> Vec<(String, String)> {
    list.iter().map(|(p, s)| (p.to_string(), s.to_string())).collect()
}

pub fn pass(criterion: &str) {
    println!("ACCEPTANCE {criterion}: PASS");
}
