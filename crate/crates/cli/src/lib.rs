//! Command-line front end: argument parsing, pipeline orchestration, exit
//! codes.
//!
//! Exit codes: 0 clean run, 1 findings at or above `--fail-on`, 2 fatal
//! errors (bad config, missing root, IO failures).

use std::collections::BTreeSet;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};

use pysniff_core::source::stdlib::stdlib_names;
use pysniff_core::{
    analyze_corpus, analyze_project, build_graph, discover_project, render, resolve_imports,
    AnalysisOptions, Category, ReportFormat, Severity, ThresholdConfig,
};

#[derive(Parser)]
#[command(name = "pysniff", version, about = "Multi-level smell analyzer for Python projects")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze a project tree and write a report.
    Analyze {
        /// Project root directory.
        root: PathBuf,
        /// YAML threshold configuration file.
        #[arg(long)]
        config: Option<PathBuf>,
        /// Override one threshold (KEY=VALUE, KEY.enabled=BOOL,
        /// KEY.severity=LEVEL); repeatable, applied after the file merge.
        #[arg(long = "set", value_name = "KEY=VALUE")]
        set: Vec<String>,
        /// Comma-separated subset of detector banks
        /// (code,structural,architectural).
        #[arg(long)]
        only: Option<String>,
        /// Report format: text, json, or csv.
        #[arg(long, default_value = "text")]
        format: String,
        /// Write the report here instead of standard output.
        #[arg(long)]
        output: Option<PathBuf>,
        /// Exit 1 when findings at or above this severity exist:
        /// never, low, medium, high.
        #[arg(long, default_value = "never")]
        fail_on: String,
        /// Per-file parallelism.
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Analyze every subdirectory of a corpus root as its own project.
    AnalyzeCorpus {
        /// Directory containing one subdirectory per project.
        corpus_root: PathBuf,
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long = "set", value_name = "KEY=VALUE")]
        set: Vec<String>,
        /// Directory for per-project reports and corpus summary tables.
        #[arg(long)]
        output_dir: PathBuf,
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Print the effective merged configuration as YAML.
    DumpConfig {
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long = "set", value_name = "KEY=VALUE")]
        set: Vec<String>,
    },
    /// Print the module dependency edge list, one "importer -> target" per line.
    DumpGraph {
        root: PathBuf,
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long = "set", value_name = "KEY=VALUE")]
        set: Vec<String>,
    },
}

/// Parse argv and run; returns the process exit code.
pub fn run_main() -> i32 {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            2
        }
    }
}

fn run(cli: Cli) -> Result<i32> {
    match cli.command {
        Command::Analyze { root, config, set, only, format, output, fail_on, jobs } => {
            let config = load_config(config.as_deref(), &set)?;
            let format = ReportFormat::parse(&format)?;
            let fail_on = parse_fail_on(&fail_on)?;
            let options = AnalysisOptions { config, jobs, only: parse_only(only.as_deref())? };
            let report = analyze_project(&root, &options)?;
            let rendered = render(&report, format)?;
            write_output(output.as_deref(), &rendered)?;
            let gate = fail_on
                .map(|level| report.findings.iter().any(|f| f.severity >= level))
                .unwrap_or(false);
            Ok(if gate { 1 } else { 0 })
        }
        Command::AnalyzeCorpus { corpus_root, config, set, output_dir, jobs } => {
            let config = load_config(config.as_deref(), &set)?;
            let options = AnalysisOptions { config, jobs, only: None };
            let outcome = analyze_corpus(&corpus_root, &options)?;
            std::fs::create_dir_all(&output_dir)
                .with_context(|| format!("creating {}", output_dir.display()))?;
            for (name, report) in &outcome.projects {
                let path = output_dir.join(format!("{name}.json"));
                std::fs::write(&path, render(report, ReportFormat::Json)?)
                    .with_context(|| format!("writing {}", path.display()))?;
            }
            write_file(&output_dir.join("corpus_summary.json"), &outcome.summary.to_json())?;
            write_file(&output_dir.join("corpus_summary.csv"), &outcome.summary.totals_csv())?;
            write_file(&output_dir.join("corpus_distribution.csv"), &outcome.summary.distribution_csv())?;
            write_file(&output_dir.join("corpus_projects.csv"), &outcome.summary.projects_csv())?;
            for failure in &outcome.failures {
                eprintln!("warning: project {} skipped: {}", failure.file, failure.message);
            }
            println!(
                "analyzed {} projects ({} skipped), {} smells total; reports in {}",
                outcome.projects.len(),
                outcome.failures.len(),
                outcome.summary.totals.total_smells,
                output_dir.display()
            );
            Ok(0)
        }
        Command::DumpConfig { config, set } => {
            let config = load_config(config.as_deref(), &set)?;
            print!("{}", config.dump_yaml());
            Ok(0)
        }
        Command::DumpGraph { root, config, set } => {
            let config = load_config(config.as_deref(), &set)?;
            let modules = discover_project(&root, &config.excludes)?;
            let stdlib = stdlib_names(config.stdlib_override.as_deref());
            let (records, _) = resolve_imports(&modules, &stdlib);
            let (graph, _) = build_graph(&records, &modules);
            print!("{}", graph.edge_list_dump());
            Ok(0)
        }
    }
}

fn load_config(path: Option<&Path>, sets: &[String]) -> Result<ThresholdConfig> {
    let mut config = ThresholdConfig::load(path)?;
    for spec in sets {
        config.apply_set(spec)?;
    }
    Ok(config)
}

fn parse_only(only: Option<&str>) -> Result<Option<BTreeSet<Category>>> {
    let Some(only) = only else { return Ok(None) };
    let mut banks = BTreeSet::new();
    for part in only.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        match Category::parse(part) {
            Some(c) => {
                banks.insert(c);
            }
            None => bail!("--only: unknown bank {part:?} (expected code, structural, architectural)"),
        }
    }
    if banks.is_empty() {
        bail!("--only requires at least one bank");
    }
    Ok(Some(banks))
}

fn parse_fail_on(value: &str) -> Result<Option<Severity>> {
    match value {
        "never" => Ok(None),
        other => Severity::parse(other)
            .map(Some)
            .ok_or_else(|| anyhow::anyhow!("--fail-on: expected never, low, medium, or high, got {other:?}")),
    }
}

fn write_output(path: Option<&Path>, content: &str) -> Result<()> {
    match path {
        Some(path) => write_file(path, content),
        None => {
            std::io::stdout().write_all(content.as_bytes())?;
            Ok(())
        }
    }
}

fn write_file(path: &Path, content: &str) -> Result<()> {
    std::fs::write(path, content).with_context(|| format!("writing {}", path.display()))
}
