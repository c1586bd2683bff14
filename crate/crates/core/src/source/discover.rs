//! File discovery and per-file loading.

use std::path::Path;

use globset::{Glob, GlobSet, GlobSetBuilder};
use rayon::prelude::*;
use rustpython_parser::{ast, Parse};

use super::{LineIndex, SourceModule};
use crate::error::{Error, Result};

/// Discover every `*.py` file under `root` not matched by `excludes`, parse
/// each, and return the modules in lexicographic path order.
///
/// Parse failures are recorded on the module, never fatal. Symbolic links are
/// not followed.
pub fn discover_project(root: &Path, excludes: &[String]) -> Result<Vec<SourceModule>> {
    if !root.is_dir() {
        return Err(Error::RootMissing(root.to_path_buf()));
    }
    let exclude_set = build_globset(excludes)?;

    let mut rel_paths: Vec<String> = Vec::new();
    for entry in walkdir::WalkDir::new(root).follow_links(false).sort_by_file_name() {
        let entry = match entry {
            Ok(e) => e,
            // Unreadable directories are skipped; unreadable files surface
            // later as parse_ok=false modules.
            Err(_) => continue,
        };
        if !entry.file_type().is_file() {
            continue;
        }
        let path = entry.path();
        if path.extension().and_then(|e| e.to_str()) != Some("py") {
            continue;
        }
        let rel = path
            .strip_prefix(root)
            .unwrap_or(path)
            .to_string_lossy()
            .replace('\\', "/");
        if exclude_set.is_match(&rel) {
            continue;
        }
        rel_paths.push(rel);
    }
    rel_paths.sort();

    Ok(rel_paths
        .par_iter()
        .map(|rel| load_module(root, rel))
        .collect())
}

fn build_globset(patterns: &[String]) -> Result<GlobSet> {
    let mut builder = GlobSetBuilder::new();
    for p in patterns {
        let glob = Glob::new(p).map_err(|e| Error::BadExcludePattern {
            pattern: p.clone(),
            reason: e.to_string(),
        })?;
        builder.add(glob);
    }
    builder.build().map_err(|e| Error::BadExcludePattern {
        pattern: patterns.join(","),
        reason: e.to_string(),
    })
}

fn module_name_for(rel_path: &str) -> (String, bool) {
    let without_ext = rel_path.strip_suffix(".py").unwrap_or(rel_path);
    let mut parts: Vec<&str> = without_ext.split('/').collect();
    let is_package = parts.last() == Some(&"__init__");
    if is_package {
        parts.pop();
    }
    if parts.is_empty() {
        // A root-level __init__.py has no package component to name it.
        ("__init__".to_string(), true)
    } else {
        (parts.join("."), is_package)
    }
}

fn load_module(root: &Path, rel_path: &str) -> SourceModule {
    let file_path = root.join(rel_path);
    let (module_name, is_package) = module_name_for(rel_path);

    let failed = |error: String| SourceModule {
        file_path: file_path.clone(),
        rel_path: rel_path.to_string(),
        module_name: module_name.clone(),
        is_package,
        source: String::new(),
        lines: Vec::new(),
        line_index: LineIndex::default(),
        tree: None,
        parse_ok: false,
        parse_error: Some(error),
    };

    let bytes = match std::fs::read(&file_path) {
        Ok(b) => b,
        Err(e) => return failed(format!("read error: {e}")),
    };
    let source = match decode_source(&bytes) {
        Ok(s) => s,
        Err(e) => return failed(e),
    };

    let lines: Vec<String> = source.lines().map(str::to_string).collect();
    let line_index = LineIndex::new(&source);

    match ast::Suite::parse(&source, rel_path) {
        Ok(tree) => SourceModule {
            file_path,
            rel_path: rel_path.to_string(),
            module_name,
            is_package,
            source,
            lines,
            line_index,
            tree: Some(tree),
            parse_ok: true,
            parse_error: None,
        },
        Err(e) => {
            let line = line_index.line_of(u32::from(e.offset));
            SourceModule {
                file_path,
                rel_path: rel_path.to_string(),
                module_name,
                is_package,
                source,
                lines,
                line_index,
                tree: None,
                parse_ok: false,
                parse_error: Some(format!("line {line}: {}", e.error)),
            }
        }
    }
}

/// Decode file bytes: UTF-8 first, then any PEP 263 coding declaration.
fn decode_source(bytes: &[u8]) -> std::result::Result<String, String> {
    let bytes = bytes.strip_prefix(b"\xef\xbb\xbf").unwrap_or(bytes);
    if let Ok(s) = std::str::from_utf8(bytes) {
        return Ok(s.to_string());
    }
    let label = pep263_coding(bytes).ok_or_else(|| "not valid UTF-8 and no coding declaration".to_string())?;
    let encoding = lookup_encoding(&label).ok_or_else(|| format!("unknown source encoding {label:?}"))?;
    let (decoded, _, had_errors) = encoding.decode(bytes);
    if had_errors {
        Err(format!("decode error with declared encoding {label:?}"))
    } else {
        Ok(decoded.into_owned())
    }
}

/// Python aliases use underscores and hyphens more freely than the WHATWG
/// label registry; try a few spellings.
fn lookup_encoding(label: &str) -> Option<&'static encoding_rs::Encoding> {
    let lower = label.to_ascii_lowercase();
    for candidate in [lower.clone(), lower.replace('_', "-"), lower.replace(['-', '_'], "")] {
        if let Some(enc) = encoding_rs::Encoding::for_label(candidate.as_bytes()) {
            return Some(enc);
        }
    }
    None
}

/// Extract the coding name from a PEP 263 declaration. Only the first two
/// lines are considered, and a code line ends the search.
fn pep263_coding(bytes: &[u8]) -> Option<String> {
    for line in bytes.split(|b| *b == b'\n').take(2) {
        let line = String::from_utf8_lossy(line);
        let trimmed = line.trim_start();
        if trimmed.is_empty() {
            continue;
        }
        if !trimmed.starts_with('#') {
            return None;
        }
        if let Some(pos) = trimmed.find("coding") {
            let rest = &trimmed[pos + "coding".len()..];
            let rest = rest.strip_prefix([':', '=']).map(str::trim_start)?;
            let name: String = rest
                .chars()
                .take_while(|c| c.is_ascii_alphanumeric() || matches!(c, '-' | '_' | '.'))
                .collect();
            if !name.is_empty() {
                return Some(name);
            }
        }
    }
    None
}
