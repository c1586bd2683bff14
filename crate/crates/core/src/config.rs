//! Threshold configuration: shipped defaults, YAML loading, validation,
//! key-by-key merging, and `--set` overrides.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::catalog::{self, DetectorSpec};
use crate::error::{Error, Result};
use crate::findings::{Category, Severity, SmellId};

/// One configured threshold: numeric value, enable flag, severity label.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ThresholdEntry {
    pub value: f64,
    pub enabled: bool,
    pub severity: Severity,
}

/// The complete validated configuration for all three detector banks.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ThresholdConfig {
    pub code_smells: BTreeMap<String, ThresholdEntry>,
    pub structural_smells: BTreeMap<String, ThresholdEntry>,
    pub architectural_smells: BTreeMap<String, ThresholdEntry>,
    /// Glob patterns (matched against root-relative paths) excluded from discovery.
    pub excludes: Vec<String>,
    /// Replaces the bundled standard-library module list when present.
    pub stdlib_override: Option<Vec<String>>,
    /// Name patterns exempt from DEAD_CODE and SCATTERED_FUNCTIONALITY.
    pub whitelist_patterns: Vec<String>,
}

impl Default for ThresholdConfig {
    fn default() -> Self {
        let mut cfg = ThresholdConfig {
            code_smells: BTreeMap::new(),
            structural_smells: BTreeMap::new(),
            architectural_smells: BTreeMap::new(),
            excludes: Vec::new(),
            stdlib_override: None,
            whitelist_patterns: vec!["test_*".into(), "Test*".into(), "main".into()],
        };
        for spec in catalog::DETECTORS {
            let section = cfg.section_mut(spec.id.category());
            for key in spec.keys {
                section.insert(
                    key.key.to_string(),
                    ThresholdEntry { value: key.default, enabled: true, severity: spec.default_severity },
                );
            }
        }
        cfg
    }
}

impl ThresholdConfig {
    /// Load a config: shipped defaults, then the user file (if any) merged
    /// key-by-key on top.
    pub fn load(path: Option<&Path>) -> Result<ThresholdConfig> {
        let mut cfg = ThresholdConfig::default();
        if let Some(path) = path {
            let text = std::fs::read_to_string(path)
                .map_err(|source| Error::Io { path: path.to_path_buf(), source })?;
            cfg.merge_yaml(&text)?;
        }
        Ok(cfg)
    }

    /// Merge a YAML document over the current config. Unknown keys, wrong
    /// sections, and non-numeric values are fatal.
    pub fn merge_yaml(&mut self, text: &str) -> Result<()> {
        let doc: serde_yaml::Value =
            serde_yaml::from_str(text).map_err(|e| Error::Config(format!("invalid YAML: {e}")))?;
        if doc.is_null() {
            return Ok(());
        }
        let map = doc
            .as_mapping()
            .ok_or_else(|| Error::Config("top level must be a mapping".into()))?;

        for (k, v) in map {
            let section_name = k
                .as_str()
                .ok_or_else(|| Error::Config("top-level keys must be strings".into()))?;
            match section_name {
                "code_smells" => self.merge_section(Category::Code, v)?,
                "structural_smells" => self.merge_section(Category::Structural, v)?,
                "architectural_smells" => self.merge_section(Category::Architectural, v)?,
                "excludes" if v.is_null() => self.excludes = Vec::new(),
                "excludes" => self.excludes = string_list(v, "excludes")?,
                "stdlib_override" if v.is_null() => self.stdlib_override = None,
                "stdlib_override" => self.stdlib_override = Some(string_list(v, "stdlib_override")?),
                "whitelist_patterns" if v.is_null() => self.whitelist_patterns = Vec::new(),
                "whitelist_patterns" => self.whitelist_patterns = string_list(v, "whitelist_patterns")?,
                other => return Err(Error::Config(format!("unknown key {other:?} at top level"))),
            }
        }
        Ok(())
    }

    fn merge_section(&mut self, category: Category, value: &serde_yaml::Value) -> Result<()> {
        let section = section_name(category);
        if value.is_null() {
            return Ok(());
        }
        let map = value
            .as_mapping()
            .ok_or_else(|| Error::Config(format!("{section} must be a mapping")))?;
        for (k, v) in map {
            let key = k
                .as_str()
                .ok_or_else(|| Error::Config(format!("{section}: keys must be strings")))?;
            match catalog::detector_for_key(key) {
                None => {
                    return Err(Error::Config(format!("unknown key {key:?} in {section}")));
                }
                Some(spec) if spec.id.category() != category => {
                    return Err(Error::Config(format!(
                        "key {key:?} belongs to {}, not {section}",
                        section_name(spec.id.category())
                    )));
                }
                Some(_) => {}
            }
            let entry = self
                .section_mut(category)
                .get_mut(key)
                .expect("defaults cover every catalog key");
            apply_patch(entry, v, &format!("{section}.{key}"))?;
        }
        Ok(())
    }

    /// Apply one `--set` override. Accepted forms: `KEY=NUMBER`,
    /// `KEY.enabled=BOOL`, `KEY.severity=low|medium|high`.
    pub fn apply_set(&mut self, spec: &str) -> Result<()> {
        let (lhs, rhs) = spec
            .split_once('=')
            .ok_or_else(|| Error::Config(format!("--set {spec:?}: expected KEY=VALUE")))?;
        let (key, field) = match lhs.split_once('.') {
            Some((k, f)) => (k, f),
            None => (lhs, "value"),
        };
        let det = catalog::detector_for_key(key)
            .ok_or_else(|| Error::Config(format!("unknown key {key:?} in --set")))?;
        let entry = self
            .section_mut(det.id.category())
            .get_mut(key)
            .expect("defaults cover every catalog key");
        match field {
            "value" => {
                entry.value = parse_number(rhs)
                    .ok_or_else(|| Error::Config(format!("--set {key}: {rhs:?} is not a non-negative number")))?;
            }
            "enabled" => {
                entry.enabled = rhs
                    .parse::<bool>()
                    .map_err(|_| Error::Config(format!("--set {key}.enabled: {rhs:?} is not a boolean")))?;
            }
            "severity" => {
                entry.severity = Severity::parse(rhs)
                    .ok_or_else(|| Error::Config(format!("--set {key}.severity: {rhs:?} is not low/medium/high")))?;
            }
            other => return Err(Error::Config(format!("--set {key}.{other}: unknown field"))),
        }
        Ok(())
    }

    fn section_mut(&mut self, category: Category) -> &mut BTreeMap<String, ThresholdEntry> {
        match category {
            Category::Code => &mut self.code_smells,
            Category::Structural => &mut self.structural_smells,
            Category::Architectural => &mut self.architectural_smells,
        }
    }

    fn section(&self, category: Category) -> &BTreeMap<String, ThresholdEntry> {
        match category {
            Category::Code => &self.code_smells,
            Category::Structural => &self.structural_smells,
            Category::Architectural => &self.architectural_smells,
        }
    }

    fn entry(&self, key: &str) -> &ThresholdEntry {
        let det = catalog::detector_for_key(key).expect("key must come from the catalog");
        self.section(det.id.category())
            .get(key)
            .expect("defaults cover every catalog key")
    }

    /// Configured numeric value of a threshold key.
    pub fn value(&self, key: &str) -> f64 {
        self.entry(key).value
    }

    /// A detector is enabled iff all of its keys are enabled.
    pub fn enabled(&self, id: SmellId) -> bool {
        detector_entries(self, catalog::detector(id)).all(|e| e.enabled)
    }

    /// Severity of a detector: the configured severity of its first key.
    pub fn severity(&self, id: SmellId) -> Severity {
        let spec = catalog::detector(id);
        self.entry(spec.keys[0].key).severity
    }

    /// Canonical YAML rendering of the effective config. Reloading the
    /// output reproduces this config exactly.
    pub fn dump_yaml(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "# effective configuration (merged defaults + overrides)");
        out.push_str(&serde_yaml::to_string(self).expect("config serializes"));
        out
    }

    /// Stable hex digest of the effective config.
    pub fn digest(&self) -> String {
        let mut hasher = Sha256::new();
        hasher.update(self.dump_yaml().as_bytes());
        let out = hasher.finalize();
        out.iter().fold(String::with_capacity(64), |mut s, b| {
            let _ = write!(s, "{b:02x}");
            s
        })
    }

    /// Match an entity name against the whitelist patterns (`*` wildcard at
    /// either end, or an exact name).
    pub fn is_whitelisted_name(&self, name: &str) -> bool {
        self.whitelist_patterns.iter().any(|p| glob_name_match(p, name))
    }
}

fn detector_entries<'a>(
    cfg: &'a ThresholdConfig,
    spec: &'static DetectorSpec,
) -> impl Iterator<Item = &'a ThresholdEntry> {
    spec.keys.iter().map(move |k| cfg.entry(k.key))
}

fn section_name(category: Category) -> &'static str {
    match category {
        Category::Code => "code_smells",
        Category::Structural => "structural_smells",
        Category::Architectural => "architectural_smells",
    }
}

fn apply_patch(entry: &mut ThresholdEntry, value: &serde_yaml::Value, path: &str) -> Result<()> {
    // Shorthand: a bare number sets the value.
    if let Some(n) = yaml_number(value) {
        entry.value = validate_number(n, path)?;
        return Ok(());
    }
    let map = value
        .as_mapping()
        .ok_or_else(|| Error::Config(format!("{path}: expected a number or a mapping with a value field")))?;
    for (k, v) in map {
        let field = k
            .as_str()
            .ok_or_else(|| Error::Config(format!("{path}: field names must be strings")))?;
        match field {
            "value" => {
                let n = yaml_number(v)
                    .ok_or_else(|| Error::Config(format!("{path}.value: expected a number")))?;
                entry.value = validate_number(n, path)?;
            }
            "enabled" => {
                entry.enabled = v
                    .as_bool()
                    .ok_or_else(|| Error::Config(format!("{path}.enabled: expected a boolean")))?;
            }
            "severity" => {
                let s = v
                    .as_str()
                    .ok_or_else(|| Error::Config(format!("{path}.severity: expected low/medium/high")))?;
                entry.severity = Severity::parse(s)
                    .ok_or_else(|| Error::Config(format!("{path}.severity: {s:?} is not low/medium/high")))?;
            }
            other => return Err(Error::Config(format!("{path}.{other}: unknown field"))),
        }
    }
    Ok(())
}

fn yaml_number(v: &serde_yaml::Value) -> Option<f64> {
    v.as_f64().or_else(|| v.as_u64().map(|n| n as f64)).or_else(|| v.as_i64().map(|n| n as f64))
}

fn validate_number(n: f64, path: &str) -> Result<f64> {
    if n.is_finite() && n >= 0.0 {
        Ok(n)
    } else {
        Err(Error::Config(format!("{path}: value must be a non-negative number, got {n}")))
    }
}

fn parse_number(s: &str) -> Option<f64> {
    s.parse::<f64>().ok().filter(|n| n.is_finite() && *n >= 0.0)
}

fn string_list(v: &serde_yaml::Value, path: &str) -> Result<Vec<String>> {
    let seq = v
        .as_sequence()
        .ok_or_else(|| Error::Config(format!("{path}: expected a list of strings")))?;
    seq.iter()
        .map(|item| {
            item.as_str()
                .map(str::to_string)
                .ok_or_else(|| Error::Config(format!("{path}: expected a list of strings")))
        })
        .collect()
}

fn glob_name_match(pattern: &str, name: &str) -> bool {
    match (pattern.strip_prefix('*'), pattern.strip_suffix('*')) {
        (Some(suffix), None) => name.ends_with(suffix),
        (None, Some(prefix)) => name.starts_with(prefix),
        (Some(_), Some(_)) => {
            let inner = &pattern[1..pattern.len() - 1];
            name.contains(inner)
        }
        (None, None) => name == pattern,
    }
}
