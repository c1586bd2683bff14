//! Source model: discovery, decoding, parsing, and per-file bookkeeping.

mod discover;
pub mod entities;
pub mod imports;
pub mod stdlib;
pub mod walker;

pub use discover::discover_project;
pub use entities::{extract_entities, Entity, EntityKind};
pub use imports::{resolve_imports, ImportKind, ImportRecord};

use rustpython_parser::ast;

/// Maps byte offsets to 1-based physical line numbers.
#[derive(Debug, Clone, Default)]
pub struct LineIndex {
    starts: Vec<u32>,
}

impl LineIndex {
    pub fn new(text: &str) -> Self {
        let mut starts = vec![0u32];
        for (i, b) in text.bytes().enumerate() {
            if b == b'\n' {
                starts.push(i as u32 + 1);
            }
        }
        LineIndex { starts }
    }

    /// 1-based line containing the byte offset.
    pub fn line_of(&self, offset: u32) -> u32 {
        self.starts.partition_point(|s| *s <= offset) as u32
    }

    /// 1-based line of the last byte of a half-open range.
    pub fn end_line_of(&self, start: u32, end: u32) -> u32 {
        self.line_of(if end > start { end - 1 } else { start })
    }
}

/// One discovered Python file.
#[derive(Debug)]
pub struct SourceModule {
    pub file_path: std::path::PathBuf,
    /// Root-relative path with forward slashes.
    pub rel_path: String,
    /// Dotted name derived from the relative path (`a/b.py` -> `a.b`,
    /// `a/__init__.py` -> `a`).
    pub module_name: String,
    pub is_package: bool,
    pub source: String,
    /// Raw physical lines; length equals the physical line count.
    pub lines: Vec<String>,
    pub line_index: LineIndex,
    pub tree: Option<ast::Suite>,
    pub parse_ok: bool,
    pub parse_error: Option<String>,
}

impl SourceModule {
    pub fn span_of(&self, range: rustpython_parser::text_size::TextRange) -> (u32, u32) {
        let start = u32::from(range.start());
        let end = u32::from(range.end());
        (self.line_index.line_of(start), self.line_index.end_line_of(start, end))
    }

    pub fn line_of(&self, range: rustpython_parser::text_size::TextRange) -> u32 {
        self.line_index.line_of(u32::from(range.start()))
    }

    /// Source text of a node.
    pub fn text_of(&self, range: rustpython_parser::text_size::TextRange) -> &str {
        let start = u32::from(range.start()) as usize;
        let end = u32::from(range.end()) as usize;
        self.source.get(start..end).unwrap_or("")
    }
}
