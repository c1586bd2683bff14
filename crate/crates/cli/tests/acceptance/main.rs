//! Acceptance suite: one test per criterion, each printing a pass line.

mod planted;
mod support;

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;
use std::process::{Command, Output};
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tempfile::TempDir;

use pysniff_core::graph::{find_cycles, DependencyGraph};
use pysniff_core::metrics::{compute_project_metrics, lcom, MetricId};
use pysniff_core::source::stdlib::stdlib_names;
use pysniff_core::{
    analyze_project, discover_project, resolve_imports, AnalysisOptions, SmellId,
    ThresholdConfig,
};

use support::{analyze_files, files, findings_of, fixtures_corpus, pass, write_project};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_pysniff"))
}

fn run_bin(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

/// Criterion 1: every detector's smelly fixture fires exactly once at the
/// planted location; its clean twin stays silent.
#[test]
fn criterion_01_planted_smell_suite() {
    let started = Instant::now();
    let cases = planted::all_cases();
    assert_eq!(cases.len(), SmellId::ALL.len(), "one fixture pair per detector");
    let mut covered: BTreeSet<&str> = BTreeSet::new();
    for case in &cases {
        assert!(covered.insert(case.id.as_str()), "duplicate fixture for {}", case.id);

        let smelly = analyze_files(&case.smelly);
        let hits = findings_of(&smelly, case.id);
        assert_eq!(
            hits.len(),
            case.expect_total,
            "{}: expected {} finding(s), got {:?}",
            case.id,
            case.expect_total,
            hits
        );
        let at_planted: Vec<_> = hits
            .iter()
            .filter(|f| f.file == case.expect_file && f.line_start == case.expect_line)
            .collect();
        assert_eq!(
            at_planted.len(),
            1,
            "{}: no single finding at {}:{}; got {:?}",
            case.id,
            case.expect_file,
            case.expect_line,
            hits
        );

        let clean = analyze_files(&case.clean);
        let clean_hits = findings_of(&clean, case.id);
        assert!(
            clean_hits.is_empty(),
            "{}: clean twin still fires: {:?}",
            case.id,
            clean_hits
        );
    }
    assert!(started.elapsed().as_secs() < 30, "planted suite took too long");
    pass("criterion 1 (planted-smell suite, 50 detectors)");
}

/// Criterion 2: the calibrated defaults 45/15 apply with strict >.
#[test]
fn criterion_02_calibrated_thresholds() {
    let method = |total: usize| {
        let mut src = String::from("class C:\n    def m(self):\n");
        for _ in 0..total - 1 {
            src.push_str("        value = 1\n");
        }
        src
    };
    let flagged = analyze_files(&[("m.py".into(), method(46))]);
    assert_eq!(findings_of(&flagged, SmellId::LongMethod).len(), 1);
    let boundary = analyze_files(&[("m.py".into(), method(45))]);
    assert!(findings_of(&boundary, SmellId::LongMethod).is_empty());

    let class = |methods: usize| {
        let mut src = String::from("class C:\n");
        for i in 0..methods {
            src.push_str(&format!("    def m{i}(self):\n        return None\n"));
        }
        src
    };
    let flagged = analyze_files(&[("m.py".into(), class(16))]);
    assert_eq!(findings_of(&flagged, SmellId::LargeClass).len(), 1);
    let boundary = analyze_files(&[("m.py".into(), class(15))]);
    assert!(findings_of(&boundary, SmellId::LargeClass).is_empty());
    pass("criterion 2 (LONG_METHOD_LINES=45 / LARGE_CLASS_METHODS=15, strict >)");
}

const CK_SHAPES: &str = r#"class Base:
    kind = "base"

    def __init__(self):
        self.name = "base"
        self.size = 0

    def describe(self):
        return self.name

    def measure(self):
        return self.size


class Circle(Base):
    def __init__(self, radius):
        self.radius = radius

    def area(self):
        return 3 * self.radius * self.radius

    def grow(self, factor):
        if factor:
            self.radius = self.radius * factor
        return self.radius
"#;

const CK_EXTRA: &str = r#"from shapes import Base, Circle


class Square(Base):
    def __init__(self, side):
        self.side = side

    def area(self):
        return self.side * self.side

    def name_of(self):
        return self.label


class Painter:
    def __init__(self):
        self.canvas = []
        self.log = []

    def paint(self, shape):
        self.canvas.append(shape.area())
        return len(self.canvas)

    def reset(self):
        self.canvas = []

    def note(self, message):
        self.log.append(message)


class Registry:
    def __init__(self):
        self.items = []

    def add_circle(self, radius):
        circle = Circle(radius)
        self.items.append(circle)
        return circle

    def add_square(self, side):
        square = Square(side)
        self.items.append(square)
        return square
"#;

/// Criterion 3: CK metrics on a five-class fixture equal hand-computed
/// values exactly.
#[test]
fn criterion_03_ck_metric_oracle() {
    let dir = TempDir::new().unwrap();
    write_project(
        dir.path(),
        &files(&[("shapes.py", CK_SHAPES), ("extra.py", CK_EXTRA)]),
    );
    let modules = discover_project(dir.path(), &[]).unwrap();
    let (records, _) = resolve_imports(&modules, &stdlib_names(None));
    let (metrics, diags) = compute_project_metrics(&modules, &records);
    assert!(diags.is_empty(), "{diags:?}");

    // (module, class) -> [LCOM, CBO, DIT, NOC, RFC, WMPC1, WMPC2, SIZE2]
    // Hand-computed:
    //   Base:     pairs (init,describe)+name, (init,measure)+size share;
    //             (describe,measure) disjoint -> P=1,Q=2 -> LCOM 0.
    //             attrs {kind,name,size}=3, NOM 3 -> SIZE2 6; no calls -> RFC 3.
    //   Circle:   all methods touch radius -> LCOM 0; base Base -> CBO 1,
    //             DIT 1; grow has one if -> WMPC1 4; SIZE2 1+3=4.
    //   Square:   uses {side},{side},{label} -> P=2,Q=1 -> LCOM 1; DIT 1.
    //   Painter:  uses {canvas,log},{canvas},{canvas},{log} -> P=2,Q=4 -> 0;
    //             calls {append, area, len} -> RFC 4+3=7; SIZE2 2+4=6.
    //   Registry: all methods touch items -> LCOM 0; references Circle and
    //             Square -> CBO 2; calls {Circle, Square, append} -> RFC 6.
    let expected: &[(&str, &str, [f64; 8])] = &[
        ("shapes", "Base", [0.0, 0.0, 0.0, 2.0, 3.0, 3.0, 3.0, 6.0]),
        ("shapes", "Circle", [0.0, 1.0, 1.0, 0.0, 3.0, 4.0, 3.0, 4.0]),
        ("extra", "Square", [1.0, 1.0, 1.0, 0.0, 3.0, 3.0, 3.0, 4.0]),
        ("extra", "Painter", [0.0, 0.0, 0.0, 0.0, 7.0, 4.0, 4.0, 6.0]),
        ("extra", "Registry", [0.0, 2.0, 0.0, 0.0, 6.0, 3.0, 3.0, 4.0]),
    ];
    let ids = [
        MetricId::Lcom,
        MetricId::Cbo,
        MetricId::Dit,
        MetricId::Noc,
        MetricId::Rfc,
        MetricId::Wmpc1,
        MetricId::Wmpc2,
        MetricId::Size2,
    ];
    for (module, class, values) in expected {
        for (id, want) in ids.iter().zip(values) {
            let got = metrics.value(module, class, *id);
            assert_eq!(
                got,
                Some(*want),
                "{module}.{class} {}: got {got:?}, want {want}",
                id.as_str()
            );
        }
    }
    pass("criterion 3 (CK oracle on five-class fixture, exact)");
}

fn graph_from_edges(n: usize, edges: &[(usize, usize)]) -> DependencyGraph {
    let mut g = DependencyGraph::default();
    for i in 0..n {
        g.nodes.insert(format!("m{i:02}"));
    }
    for (k, (a, b)) in edges.iter().enumerate() {
        g.edges.insert((format!("m{a:02}"), format!("m{b:02}")), vec![k as u32 + 1]);
    }
    g
}

fn brute_force_cycles(n: usize, edges: &[(usize, usize)], max_length: usize) -> Vec<Vec<String>> {
    let mut adjacency = vec![Vec::new(); n];
    for (a, b) in edges {
        adjacency[*a].push(*b);
    }
    fn extend(
        current: usize,
        start: usize,
        adjacency: &[Vec<usize>],
        max_length: usize,
        path: &mut Vec<usize>,
        on_path: &mut [bool],
        found: &mut BTreeSet<Vec<usize>>,
    ) {
        for &next in &adjacency[current] {
            if next == start && path.len() >= 2 && path.len() <= max_length {
                let min_pos = path.iter().enumerate().min_by_key(|(_, v)| **v).map(|(i, _)| i).unwrap();
                let mut rotated = Vec::with_capacity(path.len());
                rotated.extend_from_slice(&path[min_pos..]);
                rotated.extend_from_slice(&path[..min_pos]);
                found.insert(rotated);
            } else if !on_path[next] && path.len() < max_length {
                path.push(next);
                on_path[next] = true;
                extend(next, start, adjacency, max_length, path, on_path, found);
                on_path[next] = false;
                path.pop();
            }
        }
    }
    let mut found = BTreeSet::new();
    for start in 0..n {
        let mut path = vec![start];
        let mut on_path = vec![false; n];
        on_path[start] = true;
        extend(start, start, &adjacency, max_length, &mut path, &mut on_path, &mut found);
    }
    found
        .into_iter()
        .map(|cycle| cycle.into_iter().map(|i| format!("m{i:02}")).collect())
        .collect()
}

/// Criterion 4: cycle enumeration equals brute force on 100 seeded random
/// digraphs with up to 10 nodes, in under 10 seconds.
#[test]
fn criterion_04_cycle_oracle() {
    let started = Instant::now();
    for seed in 0..100u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rng.gen_range(2..=10usize);
        let mut edges = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if a != b && rng.gen_bool(0.25) {
                    edges.push((a, b));
                }
            }
        }
        let graph = graph_from_edges(n, &edges);
        let (mut got, _) = find_cycles(&graph, n, usize::MAX);
        got.sort();
        let expected = brute_force_cycles(n, &edges, n);
        assert_eq!(got, expected, "seed {seed}");
    }
    let elapsed = started.elapsed();
    assert!(elapsed.as_secs() < 10, "cycle oracle took {elapsed:?}");
    pass("criterion 4 (cycle oracle, 100 seeded digraphs)");
}

/// Criterion 5: LCOM equals the independent pair-counting oracle on 200
/// random attribute-use tables.
#[test]
fn criterion_05_lcom_oracle() {
    for seed in 0..200u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let methods = rng.gen_range(0..=8usize);
        let attrs = rng.gen_range(0..=6u32);
        let mut masks: Vec<u64> = Vec::new();
        let mut sets: Vec<BTreeSet<String>> = Vec::new();
        for _ in 0..methods {
            let mut mask = 0u64;
            let mut set = BTreeSet::new();
            for a in 0..attrs {
                if rng.gen_bool(0.4) {
                    mask |= 1 << a;
                    set.insert(format!("attr{a}"));
                }
            }
            masks.push(mask);
            sets.push(set);
        }
        let mut disjoint = 0i64;
        let mut sharing = 0i64;
        for i in 0..masks.len() {
            for j in i + 1..masks.len() {
                if masks[i] & masks[j] != 0 {
                    sharing += 1;
                } else {
                    disjoint += 1;
                }
            }
        }
        let expected = if masks.len() < 2 { 0 } else { (disjoint - sharing).max(0) as u64 };
        assert_eq!(lcom(&sets), expected, "seed {seed}");
    }
    pass("criterion 5 (LCOM oracle, 200 random tables)");
}

/// Criterion 6: instability bounds and conventions, and the 4-node
/// stable-depends-on-unstable fixture flags exactly one edge.
#[test]
fn criterion_06_instability() {
    for seed in 0..50u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rng.gen_range(2..=10usize);
        let mut edges = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if a != b && rng.gen_bool(0.25) {
                    edges.push((a, b));
                }
            }
        }
        let graph = graph_from_edges(n, &edges);
        let instability = graph.instability();
        let fan = graph.fan_in_out();
        for (module, i) in &instability {
            assert!((0.0..=1.0).contains(i));
            let (ca, ce) = fan[module];
            if ca == 0 && ce > 0 {
                assert_eq!(*i, 1.0, "zero-fan-in module with outgoing edges");
            }
            if ca == 0 && ce == 0 {
                assert_eq!(*i, 0.0, "isolated module");
            }
        }
    }

    // I(x) = 1/3, I(y) = 2/3: only x -> y exceeds the 0.3 gap.
    let report = analyze_files(&files(&[
        ("a.py", "import x\n"),
        ("b.py", "import x\n"),
        ("x.py", "import y\n"),
        ("y.py", "import a\nimport b\n"),
    ]));
    let unstable = findings_of(&report, SmellId::UnstableDependency);
    assert_eq!(unstable.len(), 1);
    assert_eq!(unstable[0].entity, "x -> y");
    pass("criterion 6 (instability bounds and gap fixture)");
}

/// Criterion 7: repeated runs and different --jobs produce byte-identical
/// JSON reports over the fixture corpus.
#[test]
fn criterion_07_determinism() {
    for project in ["alpha", "beta", "gamma"] {
        let root = fixtures_corpus().join(project);
        let root = root.to_str().unwrap();
        let first = run_bin(&["analyze", root, "--format", "json", "--jobs", "1"]);
        let second = run_bin(&["analyze", root, "--format", "json", "--jobs", "1"]);
        let parallel = run_bin(&["analyze", root, "--format", "json", "--jobs", "8"]);
        assert_eq!(first.status.code(), Some(0));
        assert_eq!(first.stdout, second.stdout, "{project}: rerun differs");
        assert_eq!(first.stdout, parallel.stdout, "{project}: --jobs changed the report");
    }
    pass("criterion 7 (byte-identical reports across runs and --jobs)");
}

/// Criterion 8: config behavior end to end.
#[test]
fn criterion_08_config_behavior() {
    let dir = TempDir::new().unwrap();
    std::fs::write(dir.path().join("m.py"), "x = 1\n").unwrap();

    // Unknown key: exit 2, key named on stderr.
    let bad = dir.path().join("bad.yaml");
    std::fs::write(&bad, "code_smells:\n  LONG_METHOD_LINEZ:\n    value: 45\n").unwrap();
    let out = run_bin(&["analyze", dir.path().to_str().unwrap(), "--config", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("LONG_METHOD_LINEZ"));

    // --set beats the file value.
    let cfg = dir.path().join("cfg.yaml");
    std::fs::write(&cfg, "code_smells:\n  LONG_METHOD_LINES:\n    value: 50\n").unwrap();
    let out = run_bin(&["dump-config", "--config", cfg.to_str().unwrap(), "--set", "LONG_METHOD_LINES=60"]);
    let dumped: serde_yaml::Value = serde_yaml::from_str(&String::from_utf8_lossy(&out.stdout)).unwrap();
    assert_eq!(dumped["code_smells"]["LONG_METHOD_LINES"]["value"].as_f64(), Some(60.0));

    // dump-config round-trips byte-identically.
    let first = run_bin(&["dump-config", "--set", "HIGH_LCOM=4"]);
    let dumped_path = dir.path().join("dumped.yaml");
    std::fs::write(&dumped_path, &first.stdout).unwrap();
    let second = run_bin(&["dump-config", "--config", dumped_path.to_str().unwrap()]);
    assert_eq!(first.stdout, second.stdout);
    pass("criterion 8 (config: unknown key, --set precedence, round-trip)");
}

/// Criterion 9: corpus aggregation matches the per-project reports.
#[test]
fn criterion_09_corpus_aggregation() {
    let out_dir = TempDir::new().unwrap();
    let out = run_bin(&[
        "analyze-corpus",
        fixtures_corpus().to_str().unwrap(),
        "--output-dir",
        out_dir.path().to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));

    let summary: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(out_dir.path().join("corpus_summary.json")).unwrap())
            .unwrap();

    let mut total = 0u64;
    let mut affected: BTreeSet<(String, String)> = BTreeSet::new();
    for project in ["alpha", "beta", "gamma"] {
        let report: serde_json::Value = serde_json::from_str(
            &std::fs::read_to_string(out_dir.path().join(format!("{project}.json"))).unwrap(),
        )
        .unwrap();
        total += report["summary"]["total"].as_u64().unwrap();
        for finding in report["findings"].as_array().unwrap() {
            affected.insert((project.to_string(), finding["file"].as_str().unwrap().to_string()));
        }
    }
    assert!(total > 0, "fixture corpus should contain smells");
    assert_eq!(summary["totals"]["total_smells"].as_u64().unwrap(), total);
    assert_eq!(summary["totals"]["total_files_affected"].as_u64().unwrap(), affected.len() as u64);
    assert_eq!(summary["totals"]["total_projects"], 3);

    for (_, shares) in summary["by_category"].as_object().unwrap() {
        let sum: f64 = shares.as_array().unwrap().iter().map(|s| s["percent"].as_f64().unwrap()).sum();
        assert!((sum - 100.0).abs() <= 0.05, "category percentages sum to {sum}");
    }
    pass("criterion 9 (corpus totals, percentages, affected files)");
}

/// Criterion 10: doubling every numeric threshold never increases any
/// detector's finding count on the fixture corpus.
#[test]
fn criterion_10_threshold_monotonicity() {
    let mut doubled = ThresholdConfig::default();
    for det in pysniff_core::catalog::DETECTORS {
        for key in det.keys {
            doubled.apply_set(&format!("{}={}", key.key, key.default * 2.0)).unwrap();
        }
    }
    for project in ["alpha", "beta", "gamma"] {
        let root = fixtures_corpus().join(project);
        let baseline = analyze_project(&root, &AnalysisOptions::default()).unwrap();
        let relaxed = analyze_project(
            &root,
            &AnalysisOptions { config: doubled.clone(), jobs: None, only: None },
        )
        .unwrap();
        let count = |report: &pysniff_core::AnalysisReport| -> BTreeMap<String, usize> {
            let mut map = BTreeMap::new();
            for f in &report.findings {
                *map.entry(f.catalog_id.as_str().to_string()).or_insert(0) += 1;
            }
            map
        };
        let base_counts = count(&baseline);
        let relaxed_counts = count(&relaxed);
        for (detector, relaxed_count) in &relaxed_counts {
            let base = base_counts.get(detector).copied().unwrap_or(0);
            assert!(
                *relaxed_count <= base,
                "{project}: {detector} grew from {base} to {relaxed_count} after doubling thresholds"
            );
        }
    }
    pass("criterion 10 (doubling thresholds never adds findings)");
}

fn synthetic_project(root: &Path, target_lines: usize) -> usize {
    let mut written = 0usize;
    let mut file_index = 0usize;
    while written < target_lines {
        let mut src = format!("\"\"\"Generated module {file_index}.\"\"\"\nimport json\nimport os\n");
        if file_index > 0 {
            src.push_str(&format!("import gen_{:03}\n", file_index - 1));
        }
        src.push('\n');
        for j in 0..8 {
            src.push_str(&format!(
                "class Widget{file_index}_{j}:\n    def __init__(self):\n        self.state_{j} = {j}\n\n    def read_{j}(self):\n        return self.state_{j}\n\n"
            ));
            match j % 3 {
                0 => src.push_str(&format!(
                    "def helper_{file_index}_{j}(value):\n    if value:\n        return json.dumps(value)\n    return os.sep\n\n"
                )),
                1 => src.push_str(&format!(
                    "def helper_{file_index}_{j}(items):\n    result = []\n    for item in items:\n        result.append(item)\n    return result\n\n"
                )),
                _ => src.push_str(&format!(
                    "def helper_{file_index}_{j}(count):\n    total = 0\n    while count:\n        count = count - 1\n        total = total + count\n    return total\n\n"
                )),
            }
        }
        written += src.lines().count();
        std::fs::write(root.join(format!("gen_{file_index:03}.py")), src).unwrap();
        file_index += 1;
    }
    written
}

/// Criterion 11: a ~10,000-line synthetic project analyzes in under 10 s.
#[test]
fn criterion_11_performance() {
    let dir = TempDir::new().unwrap();
    let lines = synthetic_project(dir.path(), 10_000);
    assert!(lines >= 10_000, "generated only {lines} lines");

    let started = Instant::now();
    let report = analyze_project(dir.path(), &AnalysisOptions::default()).unwrap();
    let elapsed = started.elapsed();
    assert!(report.module_count > 0);
    assert!(
        elapsed.as_secs_f64() < 10.0,
        "analysis of {lines} lines took {elapsed:?}"
    );
    pass(&format!(
        "criterion 11 (performance: {lines} lines in {:.2}s)",
        elapsed.as_secs_f64()
    ));
}
