//! Module dependency graph and the queries the architectural detectors need.

use std::collections::{BTreeMap, BTreeSet};

use petgraph::graph::{DiGraph, NodeIndex};

use crate::findings::{Diagnostic, DiagnosticKind};
use crate::source::{ImportKind, ImportRecord, SourceModule};

/// Directed module graph over project-kind import edges.
///
/// Nodes are exactly the parse_ok module names. Self-loops are dropped at
/// build time with a diagnostic. `external_edges` tracks the multiset of
/// third-party top-level names each module imports.
#[derive(Debug, Clone, Default)]
pub struct DependencyGraph {
    pub nodes: BTreeSet<String>,
    /// (importer, imported) -> source lines of the import statements.
    pub edges: BTreeMap<(String, String), Vec<u32>>,
    /// module -> third-party top-level name -> import count.
    pub external_edges: BTreeMap<String, BTreeMap<String, u32>>,
}

pub fn build_graph(records: &[ImportRecord], modules: &[SourceModule]) -> (DependencyGraph, Vec<Diagnostic>) {
    let mut graph = DependencyGraph::default();
    let mut diagnostics = Vec::new();

    for module in modules.iter().filter(|m| m.parse_ok) {
        graph.nodes.insert(module.module_name.clone());
    }
    let rel_path_of: BTreeMap<&str, &str> = modules
        .iter()
        .map(|m| (m.module_name.as_str(), m.rel_path.as_str()))
        .collect();

    for record in records {
        match record.kind {
            ImportKind::Project => {
                let resolved = record.resolved.as_deref().expect("project records are resolved");
                if resolved == record.importer {
                    diagnostics.push(Diagnostic::new(
                        DiagnosticKind::SelfLoopImport,
                        rel_path_of.get(record.importer.as_str()).copied().unwrap_or_default(),
                        Some(record.line),
                        format!("module {:?} imports itself; edge dropped", record.importer),
                    ));
                    continue;
                }
                if graph.nodes.contains(&record.importer) && graph.nodes.contains(resolved) {
                    graph
                        .edges
                        .entry((record.importer.clone(), resolved.to_string()))
                        .or_default()
                        .push(record.line);
                }
            }
            ImportKind::ThirdParty => {
                let top = record.target.split('.').next().unwrap_or(&record.target).to_string();
                *graph
                    .external_edges
                    .entry(record.importer.clone())
                    .or_default()
                    .entry(top)
                    .or_insert(0) += 1;
            }
            ImportKind::Stdlib | ImportKind::UnresolvedRelative => {}
        }
    }
    for lines in graph.edges.values_mut() {
        lines.sort_unstable();
    }
    diagnostics.sort();
    (graph, diagnostics)
}

impl DependencyGraph {
    /// Project-edge adjacency, deterministically ordered.
    pub fn adjacency(&self) -> BTreeMap<&str, Vec<&str>> {
        let mut adj: BTreeMap<&str, Vec<&str>> = self.nodes.iter().map(|n| (n.as_str(), Vec::new())).collect();
        for (from, to) in self.edges.keys() {
            adj.entry(from.as_str()).or_default().push(to.as_str());
        }
        adj
    }

    /// fan_in = project in-degree; fan_out = project out-degree plus the
    /// number of distinct third-party top-level names imported.
    pub fn fan_in_out(&self) -> BTreeMap<String, (u64, u64)> {
        let mut result: BTreeMap<String, (u64, u64)> =
            self.nodes.iter().map(|n| (n.clone(), (0, 0))).collect();
        for (from, to) in self.edges.keys() {
            if let Some(entry) = result.get_mut(to) {
                entry.0 += 1;
            }
            if let Some(entry) = result.get_mut(from) {
                entry.1 += 1;
            }
        }
        for (module, externals) in &self.external_edges {
            if let Some(entry) = result.get_mut(module) {
                entry.1 += externals.len() as u64;
            }
        }
        result
    }

    /// Instability I = Ce / (Ca + Ce), with I = 0 for isolated modules.
    pub fn instability(&self) -> BTreeMap<String, f64> {
        self.fan_in_out()
            .into_iter()
            .map(|(module, (ca, ce))| {
                let i = if ca + ce == 0 { 0.0 } else { ce as f64 / (ca + ce) as f64 };
                (module, i)
            })
            .collect()
    }

    /// Sorted `importer -> target` edge list, one edge per line.
    pub fn edge_list_dump(&self) -> String {
        let mut out = String::new();
        for (from, to) in self.edges.keys() {
            out.push_str(from);
            out.push_str(" -> ");
            out.push_str(to);
            out.push('\n');
        }
        out
    }
}

/// Every simple directed cycle of length <= `max_length`, each reported once
/// in canonical rotation (lexicographically smallest node first). Enumeration
/// runs per strongly connected component and stops after `max_per_scc` cycles
/// per component with a truncation diagnostic.
pub fn find_cycles(
    graph: &DependencyGraph,
    max_length: usize,
    max_per_scc: usize,
) -> (Vec<Vec<String>>, Vec<Diagnostic>) {
    let nodes: Vec<&str> = graph.nodes.iter().map(String::as_str).collect();
    let index_of: BTreeMap<&str, NodeIndex> = {
        let mut pg: DiGraph<(), ()> = DiGraph::new();
        let mut map = BTreeMap::new();
        for n in &nodes {
            map.insert(*n, pg.add_node(()));
        }
        map
    };
    // Rebuild petgraph with edges for SCC computation.
    let mut pg: DiGraph<&str, ()> = DiGraph::new();
    let mut map: BTreeMap<&str, NodeIndex> = BTreeMap::new();
    for n in &nodes {
        map.insert(*n, pg.add_node(*n));
    }
    let _ = index_of;
    for (from, to) in graph.edges.keys() {
        pg.add_edge(map[from.as_str()], map[to.as_str()], ());
    }

    let mut cycles: Vec<Vec<String>> = Vec::new();
    let mut diagnostics = Vec::new();

    for scc in petgraph::algo::tarjan_scc(&pg) {
        if scc.len() < 2 {
            continue;
        }
        let members: BTreeSet<&str> = scc.iter().map(|ix| pg[*ix]).collect();
        let mut adj: BTreeMap<&str, Vec<&str>> = members.iter().map(|m| (*m, Vec::new())).collect();
        for (from, to) in graph.edges.keys() {
            if members.contains(from.as_str()) && members.contains(to.as_str()) {
                adj.get_mut(from.as_str()).unwrap().push(to.as_str());
            }
        }

        let mut found = 0usize;
        let mut truncated = false;
        // Each cycle is discovered exactly once: from its smallest node, never
        // revisiting smaller nodes.
        'starts: for start in &members {
            let mut path = vec![*start];
            let mut on_path: BTreeSet<&str> = BTreeSet::from([*start]);
            if dfs_cycles(start, start, &adj, max_length, max_per_scc, &mut path, &mut on_path, &mut cycles, &mut found) {
                truncated = true;
                break 'starts;
            }
        }
        if truncated {
            let smallest = members.iter().next().unwrap();
            diagnostics.push(Diagnostic::new(
                DiagnosticKind::CycleTruncation,
                String::new(),
                None,
                format!(
                    "cycle enumeration truncated at {max_per_scc} cycles in the component containing {smallest:?}"
                ),
            ));
        }
    }

    cycles.sort();
    diagnostics.sort();
    (cycles, diagnostics)
}

#[allow(clippy::too_many_arguments)]
fn dfs_cycles<'a>(
    current: &'a str,
    start: &'a str,
    adj: &BTreeMap<&'a str, Vec<&'a str>>,
    max_length: usize,
    max_per_scc: usize,
    path: &mut Vec<&'a str>,
    on_path: &mut BTreeSet<&'a str>,
    cycles: &mut Vec<Vec<String>>,
    found: &mut usize,
) -> bool {
    for next in &adj[current] {
        if *next == start {
            if path.len() >= 2 {
                if *found >= max_per_scc {
                    return true;
                }
                cycles.push(path.iter().map(|s| s.to_string()).collect());
                *found += 1;
            }
        } else if *next > start && !on_path.contains(next) && path.len() < max_length {
            path.push(next);
            on_path.insert(next);
            let truncated =
                dfs_cycles(next, start, adj, max_length, max_per_scc, path, on_path, cycles, found);
            on_path.remove(next);
            path.pop();
            if truncated {
                return true;
            }
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph_of(nodes: &[&str], edges: &[(&str, &str)]) -> DependencyGraph {
        let mut g = DependencyGraph::default();
        for n in nodes {
            g.nodes.insert(n.to_string());
        }
        for (i, (from, to)) in edges.iter().enumerate() {
            g.edges.insert((from.to_string(), to.to_string()), vec![i as u32 + 1]);
        }
        g
    }

    #[test]
    fn two_cycle_is_canonical() {
        let g = graph_of(&["a", "b"], &[("a", "b"), ("b", "a")]);
        let (cycles, diags) = find_cycles(&g, 10, 100);
        assert_eq!(cycles, vec![vec!["a".to_string(), "b".to_string()]]);
        assert!(diags.is_empty());
    }

    #[test]
    fn acyclic_graph_has_no_cycles() {
        let g = graph_of(&["a", "b", "c"], &[("a", "b"), ("b", "c")]);
        let (cycles, _) = find_cycles(&g, 10, 100);
        assert!(cycles.is_empty());
    }

    #[test]
    fn length_filter_drops_long_cycles() {
        let g = graph_of(&["a", "b", "c"], &[("a", "b"), ("b", "c"), ("c", "a")]);
        let (cycles, _) = find_cycles(&g, 2, 100);
        assert!(cycles.is_empty());
        let (cycles, _) = find_cycles(&g, 3, 100);
        assert_eq!(cycles.len(), 1);
    }

    #[test]
    fn truncation_cap_applies_per_scc() {
        // Complete digraph on 4 nodes has 20 simple cycles.
        let names = ["a", "b", "c", "d"];
        let mut edges = Vec::new();
        for x in names {
            for y in names {
                if x != y {
                    edges.push((x, y));
                }
            }
        }
        let g = graph_of(&names, &edges);
        let (all, diags) = find_cycles(&g, 4, 100);
        assert_eq!(all.len(), 20);
        assert!(diags.is_empty());
        let (capped, diags) = find_cycles(&g, 4, 5);
        assert_eq!(capped.len(), 5);
        assert_eq!(diags.len(), 1);
        assert_eq!(diags[0].kind, DiagnosticKind::CycleTruncation);
    }

    #[test]
    fn fan_in_out_counts_project_and_external() {
        let mut g = graph_of(&["a", "b", "c"], &[("a", "b"), ("c", "b")]);
        g.external_edges
            .entry("a".to_string())
            .or_default()
            .extend([("numpy".to_string(), 2), ("requests".to_string(), 1), ("attrs".to_string(), 1)]);
        let fio = g.fan_in_out();
        assert_eq!(fio["b"], (2, 0));
        assert_eq!(fio["a"], (0, 4)); // 1 project + 3 distinct third-party
        assert_eq!(fio["c"], (0, 1));
    }

    #[test]
    fn instability_formula_and_conventions() {
        let mut g = graph_of(&["a", "b", "c", "iso"], &[("a", "b"), ("a", "c"), ("b", "c")]);
        g.external_edges
            .entry("a".to_string())
            .or_default()
            .insert("numpy".to_string(), 1);
        let inst = g.instability();
        assert_eq!(inst["a"], 1.0); // Ca=0, Ce=3
        assert_eq!(inst["b"], 0.5); // Ca=1, Ce=1
        assert_eq!(inst["c"], 0.0); // Ca=2, Ce=0
        assert_eq!(inst["iso"], 0.0); // convention for isolated modules
    }

    #[test]
    fn degree_conservation() {
        let g = graph_of(&["a", "b", "c", "d"], &[("a", "b"), ("b", "c"), ("c", "a"), ("d", "a")]);
        let fio = g.fan_in_out();
        let fan_in_sum: u64 = fio.values().map(|(ca, _)| ca).sum();
        assert_eq!(fan_in_sum, g.edges.len() as u64);
    }
}
