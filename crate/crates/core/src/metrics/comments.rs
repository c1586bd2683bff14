//! Comment-line classification over raw source lines.
//!
//! A comment line is a line whose first non-blank character starts a `#`
//! comment. Lines that begin inside a multi-line string literal are masked
//! out so string contents are never miscounted; docstrings are strings and
//! therefore never count as comments.

use rustpython_parser::ast::Expr;

use crate::source::walker::visit_exprs;
use crate::source::SourceModule;

/// Per-line flag: line begins inside a string literal.
pub fn string_line_mask(module: &SourceModule) -> Vec<bool> {
    let mut mask = vec![false; module.lines.len()];
    let Some(tree) = &module.tree else {
        return mask;
    };
    visit_exprs(tree, true, &mut |expr| {
        let range = match expr {
            Expr::Constant(c) if c.value.is_str() || c.value.is_bytes() => c.range,
            Expr::JoinedStr(j) => j.range,
            _ => return,
        };
        let (start, end) = module.span_of(range);
        // Continuation lines of a multi-line literal begin inside it.
        for line in start + 1..=end {
            if let Some(slot) = mask.get_mut(line as usize - 1) {
                *slot = true;
            }
        }
    });
    mask
}

/// Per-line comment flags for one module.
pub fn comment_flags(module: &SourceModule) -> Vec<bool> {
    let mask = string_line_mask(module);
    module
        .lines
        .iter()
        .zip(&mask)
        .map(|(line, in_string)| !in_string && line.trim_start().starts_with('#'))
        .collect()
}

/// Comment lines / physical lines over an inclusive 1-based line span.
pub fn comment_ratio(flags: &[bool], line_start: u32, line_end: u32) -> f64 {
    let start = line_start.saturating_sub(1) as usize;
    let end = (line_end as usize).min(flags.len());
    if start >= end {
        return 0.0;
    }
    let comments = flags[start..end].iter().filter(|f| **f).count();
    comments as f64 / (end - start) as f64
}

/// Maximal runs of consecutive comment lines: (start_line, end_line, length).
pub fn comment_blocks(flags: &[bool]) -> Vec<(u32, u32, u32)> {
    let mut blocks = Vec::new();
    let mut run_start: Option<usize> = None;
    for (i, flag) in flags.iter().enumerate() {
        match (flag, run_start) {
            (true, None) => run_start = Some(i),
            (false, Some(start)) => {
                blocks.push((start as u32 + 1, i as u32, (i - start) as u32));
                run_start = None;
            }
            _ => {}
        }
    }
    if let Some(start) = run_start {
        blocks.push((start as u32 + 1, flags.len() as u32, (flags.len() - start) as u32));
    }
    blocks
}
