//! Duplicate-code detection over normalized statement-line windows.
//!
//! Each physical line is normalized (identifiers -> `i`, numbers -> `n`,
//! strings -> `s`, comments and whitespace stripped, keywords kept) and
//! consecutive windows of `min_lines` normalized lines are matched across the
//! project. Matching windows are extended to maximal regions; each region is
//! reported once per occurrence, cross-referencing the others.

use std::collections::BTreeMap;

use crate::config::ThresholdConfig;
use crate::findings::{Measured, SmellFinding, SmellId};
use crate::metrics::comments::string_line_mask;
use crate::source::SourceModule;

const KEYWORDS: &[&str] = &[
    "False", "None", "True", "and", "as", "assert", "async", "await", "break", "case", "class",
    "continue", "def", "del", "elif", "else", "except", "finally", "for", "from", "global", "if",
    "import", "in", "is", "lambda", "match", "nonlocal", "not", "or", "pass", "raise", "return",
    "try", "while", "with", "yield",
];

/// Normalize one physical line; None when nothing remains (blank lines,
/// comment-only lines).
fn normalize_line(line: &str) -> Option<String> {
    let mut out = String::new();
    let bytes = line.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if c == '#' {
            break;
        }
        if !out.is_empty() {
            out.push(' ');
        }
        if c == '"' || c == '\'' {
            i = skip_string(bytes, i);
            out.push('s');
        } else if c.is_ascii_digit() {
            while i < bytes.len()
                && ((bytes[i] as char).is_ascii_alphanumeric() || matches!(bytes[i], b'.' | b'_'))
            {
                i += 1;
            }
            out.push('n');
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < bytes.len() && ((bytes[i] as char).is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            let word = &line[start..i];
            if KEYWORDS.contains(&word) {
                out.push_str(word);
            } else if matches!(bytes.get(i), Some(b'"') | Some(b'\'')) && word.len() <= 2 {
                // String prefix (r, b, f, rb, ...): fold into the literal.
                i = skip_string(bytes, i);
                out.push('s');
            } else {
                out.push('i');
            }
        } else {
            out.push(c);
            i += 1;
        }
    }
    if out.is_empty() {
        None
    } else {
        Some(out)
    }
}

/// Advance past a (possibly triple-quoted) string literal starting at `i`.
/// A literal left open at end of line consumes the rest of the line.
fn skip_string(bytes: &[u8], mut i: usize) -> usize {
    let quote = bytes[i];
    let triple = bytes.len() >= i + 3 && bytes[i + 1] == quote && bytes[i + 2] == quote;
    if triple {
        i += 3;
        while i + 2 < bytes.len() {
            if bytes[i] == quote && bytes[i + 1] == quote && bytes[i + 2] == quote {
                return i + 3;
            }
            i += 1;
        }
        return bytes.len();
    }
    i += 1;
    while i < bytes.len() {
        match bytes[i] {
            b'\\' => i += 2,
            b if b == quote => return i + 1,
            _ => i += 1,
        }
    }
    bytes.len()
}

struct StatementLines {
    module_idx: usize,
    normalized: Vec<String>,
    line_numbers: Vec<u32>,
}

fn statement_lines(module: &SourceModule, module_idx: usize) -> StatementLines {
    let mask = string_line_mask(module);
    let mut normalized = Vec::new();
    let mut line_numbers = Vec::new();
    for (i, line) in module.lines.iter().enumerate() {
        if mask[i] {
            continue;
        }
        if let Some(n) = normalize_line(line) {
            normalized.push(n);
            line_numbers.push(i as u32 + 1);
        }
    }
    StatementLines { module_idx, normalized, line_numbers }
}

pub fn detect_duplicates(
    modules: &[SourceModule],
    min_lines: usize,
    config: &ThresholdConfig,
) -> Vec<SmellFinding> {
    let min_lines = min_lines.max(2);
    let tables: Vec<StatementLines> = modules
        .iter()
        .enumerate()
        .filter(|(_, m)| m.parse_ok)
        .map(|(i, m)| statement_lines(m, i))
        .collect();

    // Window content -> occurrences (table index, statement index).
    let mut windows: BTreeMap<String, Vec<(usize, usize)>> = BTreeMap::new();
    for (t, table) in tables.iter().enumerate() {
        if table.normalized.len() < min_lines {
            continue;
        }
        for i in 0..=table.normalized.len() - min_lines {
            let key = table.normalized[i..i + min_lines].join("\n");
            windows.entry(key).or_default().push((t, i));
        }
    }

    let mut findings = Vec::new();
    for occurrences in windows.values() {
        if occurrences.len() < 2 {
            continue;
        }
        // Report each region only from its leftmost window.
        let left_extendable = occurrences.iter().all(|(_t, i)| *i > 0)
            && same_line_at(&tables, occurrences, -1);
        if left_extendable {
            continue;
        }
        // Extend right while all occurrences keep matching.
        let mut len = min_lines;
        while same_line_at_offset(&tables, occurrences, len) {
            len += 1;
        }
        let occs = drop_overlaps(occurrences, len);
        if occs.len() < 2 {
            continue;
        }

        let locations: Vec<(String, u32, u32)> = occs
            .iter()
            .map(|(t, i)| {
                let table = &tables[*t];
                let module = &modules[table.module_idx];
                (module.rel_path.clone(), table.line_numbers[*i], table.line_numbers[i + len - 1])
            })
            .collect();

        for (k, (file, start, end)) in locations.iter().enumerate() {
            let others: Vec<String> = locations
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != k)
                .map(|(_, (f, s, _))| format!("{f}:{s}"))
                .collect();
            let module = &modules[tables[occs[k].0].module_idx];
            findings.push(SmellFinding {
                catalog_id: SmellId::DuplicateCode,
                category: SmellId::DuplicateCode.category(),
                file: file.clone(),
                line_start: *start,
                line_end: *end,
                entity: module.module_name.clone(),
                measured: Measured::Num(len as f64),
                threshold: Some(min_lines as f64),
                severity: config.severity(SmellId::DuplicateCode),
                message: format!(
                    "{len} duplicated statement lines ({} occurrences; also at {})",
                    locations.len(),
                    others.join(", ")
                ),
            });
        }
    }
    findings
}

/// All occurrences share an identical normalized line at `offset` relative to
/// the window start (-1 for the preceding line).
fn same_line_at(tables: &[StatementLines], occurrences: &[(usize, usize)], offset: i64) -> bool {
    let mut expected: Option<&str> = None;
    for (t, i) in occurrences {
        let idx = *i as i64 + offset;
        if idx < 0 {
            return false;
        }
        match tables[*t].normalized.get(idx as usize) {
            None => return false,
            Some(line) => match expected {
                None => expected = Some(line),
                Some(e) if e == line => {}
                Some(_) => return false,
            },
        }
    }
    true
}

fn same_line_at_offset(tables: &[StatementLines], occurrences: &[(usize, usize)], offset: usize) -> bool {
    same_line_at(tables, occurrences, offset as i64)
}

/// Drop occurrences that overlap an earlier one in the same table.
fn drop_overlaps(occurrences: &[(usize, usize)], len: usize) -> Vec<(usize, usize)> {
    let mut sorted = occurrences.to_vec();
    sorted.sort_unstable();
    let mut kept: Vec<(usize, usize)> = Vec::new();
    for (t, i) in sorted {
        let overlaps = kept
            .iter()
            .any(|(kt, ki)| *kt == t && i < ki + len);
        if !overlaps {
            kept.push((t, i));
        }
    }
    kept
}
