//! Import resolution: classify every import statement as project, stdlib,
//! or third-party, with hierarchical project-first precedence.

use std::collections::BTreeSet;

use rustpython_parser::ast::{self, Stmt};

use super::walker;
use super::SourceModule;
use crate::findings::{Diagnostic, DiagnosticKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum ImportKind {
    Project,
    Stdlib,
    ThirdParty,
    UnresolvedRelative,
}

impl ImportKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ImportKind::Project => "project",
            ImportKind::Stdlib => "stdlib",
            ImportKind::ThirdParty => "third_party",
            ImportKind::UnresolvedRelative => "unresolved_relative",
        }
    }
}

/// One import binding produced by an import statement.
#[derive(Debug, Clone)]
pub struct ImportRecord {
    pub importer: String,
    /// Dotted target; relative imports are recorded in resolved absolute form
    /// when resolution succeeds (`from . import a` in pkg -> `pkg.a`).
    pub target: String,
    /// Canonical project module name; present iff kind == Project.
    pub resolved: Option<String>,
    pub kind: ImportKind,
    pub line: u32,
    pub is_relative: bool,
    pub level: u32,
    /// Local name bound in the importing module (absent for `import *`).
    pub binding: Option<String>,
    /// Member name for from-imports, as written.
    pub member: Option<String>,
}

/// Resolve every import statement of every parse_ok module.
///
/// Precedence: project > stdlib > third_party. `from X import Y` resolves to
/// project module `X.Y` when that module exists, else to `X`.
pub fn resolve_imports(
    modules: &[SourceModule],
    stdlib_names: &BTreeSet<String>,
) -> (Vec<ImportRecord>, Vec<Diagnostic>) {
    let module_set: BTreeSet<&str> = modules
        .iter()
        .filter(|m| m.parse_ok)
        .map(|m| m.module_name.as_str())
        .collect();

    let mut records = Vec::new();
    let mut diagnostics = Vec::new();
    for module in modules {
        let Some(tree) = &module.tree else { continue };
        walker::visit_stmts(tree, true, &mut |stmt| match stmt {
            Stmt::Import(imp) => {
                for alias in &imp.names {
                    records.push(plain_import(module, alias, imp.range, &module_set, stdlib_names));
                }
            }
            Stmt::ImportFrom(imp) => {
                from_import(module, imp, &module_set, stdlib_names, &mut records, &mut diagnostics);
            }
            _ => {}
        });
    }
    diagnostics.sort();
    (records, diagnostics)
}

fn plain_import(
    module: &SourceModule,
    alias: &ast::Alias,
    range: rustpython_parser::text_size::TextRange,
    module_set: &BTreeSet<&str>,
    stdlib_names: &BTreeSet<String>,
) -> ImportRecord {
    let written = alias.name.to_string();
    let (kind, resolved) = resolve_absolute(&written, module_set, stdlib_names);
    let binding = alias
        .asname
        .as_ref()
        .map(|a| a.to_string())
        .unwrap_or_else(|| written.split('.').next().unwrap_or(&written).to_string());
    ImportRecord {
        importer: module.module_name.clone(),
        target: written,
        resolved,
        kind,
        line: module.line_of(range),
        is_relative: false,
        level: 0,
        binding: Some(binding),
        member: None,
    }
}

fn from_import(
    module: &SourceModule,
    imp: &ast::StmtImportFrom,
    module_set: &BTreeSet<&str>,
    stdlib_names: &BTreeSet<String>,
    records: &mut Vec<ImportRecord>,
    diagnostics: &mut Vec<Diagnostic>,
) {
    let level = imp.level.map(|l| l.to_u32()).unwrap_or(0);
    let line = module.line_of(imp.range);
    let written_module = imp.module.as_ref().map(|m| m.to_string());

    let base = if level == 0 {
        Some(written_module.clone().unwrap_or_default())
    } else {
        relative_base(module, level).map(|base| match &written_module {
            Some(m) if base.is_empty() => m.clone(),
            Some(m) => format!("{base}.{m}"),
            None => base,
        })
    };

    for alias in &imp.names {
        let name = alias.name.to_string();
        let binding = if name == "*" {
            None
        } else {
            Some(alias.asname.as_ref().map(|a| a.to_string()).unwrap_or_else(|| name.clone()))
        };
        let member = (name != "*").then(|| name.clone());

        let record = match &base {
            None => {
                // Relative import that walks above the project root.
                let written = format!("{}{}", ".".repeat(level as usize), written_module.clone().unwrap_or_default());
                diagnostics.push(Diagnostic::new(
                    DiagnosticKind::UnresolvedRelativeImport,
                    module.rel_path.clone(),
                    Some(line),
                    format!("relative import {written:?} escapes the project root"),
                ));
                ImportRecord {
                    importer: module.module_name.clone(),
                    target: written,
                    resolved: None,
                    kind: ImportKind::UnresolvedRelative,
                    line,
                    is_relative: true,
                    level,
                    binding,
                    member,
                }
            }
            Some(base) => {
                let candidate = if name == "*" || base.is_empty() {
                    if base.is_empty() { name.clone() } else { base.clone() }
                } else {
                    format!("{base}.{name}")
                };
                let (kind, resolved) = if level == 0 {
                    resolve_from(base, &candidate, module_set, stdlib_names)
                } else if name != "*" && module_set.contains(candidate.as_str()) {
                    (ImportKind::Project, Some(candidate.clone()))
                } else if module_set.contains(base.as_str()) {
                    (ImportKind::Project, Some(base.clone()))
                } else {
                    diagnostics.push(Diagnostic::new(
                        DiagnosticKind::UnresolvedRelativeImport,
                        module.rel_path.clone(),
                        Some(line),
                        format!("relative import target {base:?} is not a discovered module"),
                    ));
                    (ImportKind::UnresolvedRelative, None)
                };
                ImportRecord {
                    importer: module.module_name.clone(),
                    target: candidate,
                    resolved,
                    kind,
                    line,
                    is_relative: level > 0,
                    level,
                    binding,
                    member,
                }
            }
        };
        records.push(record);
    }
}

/// Package path the relative import is anchored at, or None when the dots
/// climb above the project root.
fn relative_base(module: &SourceModule, level: u32) -> Option<String> {
    let mut parts: Vec<&str> = module.module_name.split('.').collect();
    if !module.is_package {
        parts.pop();
    }
    // Level 1 is the current package; each further dot climbs one package.
    for _ in 1..level {
        if parts.is_empty() {
            return None;
        }
        parts.pop();
    }
    Some(parts.join("."))
}

fn resolve_from(
    base: &str,
    candidate: &str,
    module_set: &BTreeSet<&str>,
    stdlib_names: &BTreeSet<String>,
) -> (ImportKind, Option<String>) {
    if module_set.contains(candidate) {
        return (ImportKind::Project, Some(candidate.to_string()));
    }
    resolve_absolute(base, module_set, stdlib_names)
}

/// Project (exact, then longest dotted prefix), then stdlib by top-level
/// name, then third-party.
fn resolve_absolute(
    name: &str,
    module_set: &BTreeSet<&str>,
    stdlib_names: &BTreeSet<String>,
) -> (ImportKind, Option<String>) {
    let mut prefix = name;
    loop {
        if module_set.contains(prefix) {
            return (ImportKind::Project, Some(prefix.to_string()));
        }
        match prefix.rfind('.') {
            Some(idx) => prefix = &prefix[..idx],
            None => break,
        }
    }
    let top = name.split('.').next().unwrap_or(name);
    if stdlib_names.contains(top) {
        (ImportKind::Stdlib, None)
    } else {
        (ImportKind::ThirdParty, None)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::source::discover_project;
    use crate::source::stdlib::stdlib_names;
    use std::fs;
    use tempfile::TempDir;

    fn project(files: &[(&str, &str)]) -> (Vec<SourceModule>, Vec<ImportRecord>, Vec<Diagnostic>) {
        let dir = TempDir::new().unwrap();
        for (path, src) in files {
            let full = dir.path().join(path);
            fs::create_dir_all(full.parent().unwrap()).unwrap();
            fs::write(full, src).unwrap();
        }
        let modules = discover_project(dir.path(), &[]).unwrap();
        let names = stdlib_names(None);
        let (records, diags) = resolve_imports(&modules, &names);
        (modules, records, diags)
    }

    #[test]
    fn relative_import_resolves_within_package() {
        let (_, records, diags) = project(&[
            ("pkg/__init__.py", ""),
            ("pkg/a.py", ""),
            ("pkg/b.py", "from . import a\n"),
        ]);
        let rec = records.iter().find(|r| r.importer == "pkg.b").unwrap();
        assert_eq!(rec.target, "pkg.a");
        assert_eq!(rec.kind, ImportKind::Project);
        assert_eq!(rec.resolved.as_deref(), Some("pkg.a"));
        assert!(rec.is_relative);
        assert_eq!(rec.level, 1);
        assert!(diags.is_empty());
    }

    #[test]
    fn stdlib_and_third_party_precedence() {
        let (_, records, _) = project(&[("m.py", "import os\nimport numpy_like_ext\n")]);
        assert_eq!(records[0].kind, ImportKind::Stdlib);
        assert_eq!(records[0].target, "os");
        assert_eq!(records[1].kind, ImportKind::ThirdParty);
    }

    #[test]
    fn project_beats_stdlib() {
        let (_, records, _) = project(&[("os.py", ""), ("m.py", "import os\n")]);
        let rec = records.iter().find(|r| r.importer == "m").unwrap();
        assert_eq!(rec.kind, ImportKind::Project);
        assert_eq!(rec.resolved.as_deref(), Some("os"));
    }

    #[test]
    fn from_import_prefers_submodule() {
        let (_, records, _) = project(&[
            ("pkg/__init__.py", ""),
            ("pkg/x.py", ""),
            ("m.py", "from pkg import x\nfrom pkg import helper\n"),
        ]);
        let by_target: Vec<(&str, ImportKind)> = records
            .iter()
            .filter(|r| r.importer == "m")
            .map(|r| (r.target.as_str(), r.kind))
            .collect();
        assert_eq!(by_target[0], ("pkg.x", ImportKind::Project));
        assert_eq!(records.iter().find(|r| r.target == "pkg.x").unwrap().resolved.as_deref(), Some("pkg.x"));
        // pkg.helper is not a module; falls back to pkg itself.
        assert_eq!(by_target[1], ("pkg.helper", ImportKind::Project));
        assert_eq!(records.iter().find(|r| r.target == "pkg.helper").unwrap().resolved.as_deref(), Some("pkg"));
    }

    #[test]
    fn escaping_relative_import_is_diagnosed() {
        let (_, records, diags) = project(&[("pkg/__init__.py", ""), ("pkg/a.py", "from ... import x\n")]);
        let rec = records.iter().find(|r| r.importer == "pkg.a").unwrap();
        assert_eq!(rec.kind, ImportKind::UnresolvedRelative);
        assert!(rec.resolved.is_none());
        assert_eq!(diags.len(), 1);
        assert_eq!(diags[0].kind, DiagnosticKind::UnresolvedRelativeImport);
    }

    #[test]
    fn aliases_record_local_binding() {
        let (_, records, _) = project(&[
            ("pkg/__init__.py", ""),
            ("pkg/mod.py", ""),
            ("m.py", "import pkg.mod as pm\nfrom pkg import mod as m2\n"),
        ]);
        let plain = &records.iter().find(|r| r.target == "pkg.mod" && !r.is_relative && r.member.is_none()).unwrap();
        assert_eq!(plain.binding.as_deref(), Some("pm"));
        let from = &records.iter().find(|r| r.member.is_some()).unwrap();
        assert_eq!(from.binding.as_deref(), Some("m2"));
        assert_eq!(from.member.as_deref(), Some("mod"));
    }

    #[test]
    fn every_import_statement_yields_records() {
        let (_, records, _) = project(&[(
            "m.py",
            "import a, b\nfrom c import d, e\n\ndef f():\n    import inner_only\n",
        )]);
        assert_eq!(records.len(), 5);
    }
}
