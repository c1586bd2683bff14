//! Finding and diagnostic records emitted by the detector banks.

use std::fmt;

use serde::{Deserialize, Serialize};

/// Severity labels are ordinal: `low < medium < high`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Severity {
    Low,
    Medium,
    High,
}

impl Severity {
    pub fn as_str(self) -> &'static str {
        match self {
            Severity::Low => "low",
            Severity::Medium => "medium",
            Severity::High => "high",
        }
    }

    pub fn parse(s: &str) -> Option<Severity> {
        match s {
            "low" => Some(Severity::Low),
            "medium" => Some(Severity::Medium),
            "high" => Some(Severity::High),
            _ => None,
        }
    }
}

impl fmt::Display for Severity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// The three detector banks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Category {
    Code,
    Structural,
    Architectural,
}

impl Category {
    pub const ALL: [Category; 3] = [Category::Code, Category::Structural, Category::Architectural];

    pub fn as_str(self) -> &'static str {
        match self {
            Category::Code => "code",
            Category::Structural => "structural",
            Category::Architectural => "architectural",
        }
    }

    pub fn parse(s: &str) -> Option<Category> {
        match s {
            "code" => Some(Category::Code),
            "structural" => Some(Category::Structural),
            "architectural" => Some(Category::Architectural),
            _ => None,
        }
    }
}

impl fmt::Display for Category {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

macro_rules! smell_ids {
    ($($variant:ident => ($name:literal, $cat:ident)),+ $(,)?) => {
        /// Catalog identifier of one detector. The category of a finding is
        /// determined solely by its id.
        #[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
        pub enum SmellId {
            $($variant,)+
        }

        impl SmellId {
            pub const ALL: &'static [SmellId] = &[$(SmellId::$variant,)+];

            pub fn as_str(self) -> &'static str {
                match self {
                    $(SmellId::$variant => $name,)+
                }
            }

            pub fn category(self) -> Category {
                match self {
                    $(SmellId::$variant => Category::$cat,)+
                }
            }

            pub fn parse(s: &str) -> Option<SmellId> {
                match s {
                    $($name => Some(SmellId::$variant),)+
                    _ => None,
                }
            }
        }
    };
}

smell_ids! {
    // Code-level bank.
    LongMethod => ("LONG_METHOD", Code),
    LargeClass => ("LARGE_CLASS", Code),
    LongParameterList => ("LONG_PARAMETER_LIST", Code),
    PrimitiveObsession => ("PRIMITIVE_OBSESSION", Code),
    DuplicateCode => ("DUPLICATE_CODE", Code),
    DeadCode => ("DEAD_CODE", Code),
    SpeculativeGenerality => ("SPECULATIVE_GENERALITY", Code),
    DivergentChange => ("DIVERGENT_CHANGE", Code),
    ComplexConditional => ("COMPLEX_CONDITIONAL", Code),
    MessageChain => ("MESSAGE_CHAIN", Code),
    FeatureEnvy => ("FEATURE_ENVY", Code),
    DataClumps => ("DATA_CLUMPS", Code),
    TemporaryField => ("TEMPORARY_FIELD", Code),
    PotentialShotgunSurgery => ("POTENTIAL_SHOTGUN_SURGERY", Code),
    LowCommentRatio => ("LOW_COMMENT_RATIO", Code),
    LargeCommentBlock => ("LARGE_COMMENT_BLOCK", Code),
    MissingDocstring => ("MISSING_DOCSTRING", Code),
    MagicNumber => ("MAGIC_NUMBER", Code),
    GlobalVariableAbuse => ("GLOBAL_VARIABLE_ABUSE", Code),
    TooManyReturns => ("TOO_MANY_RETURNS", Code),
    LongLambda => ("LONG_LAMBDA", Code),
    MutableDefaultArgument => ("MUTABLE_DEFAULT_ARGUMENT", Code),
    BroadExcept => ("BROAD_EXCEPT", Code),
    UnusedImport => ("UNUSED_IMPORT", Code),

    // Structural bank.
    TooManyBranches => ("TOO_MANY_BRANCHES", Structural),
    HighLoc => ("HIGH_LOC", Structural),
    HighRfc => ("HIGH_RFC", Structural),
    HighCyclomatic => ("HIGH_CYCLOMATIC", Structural),
    HighNom => ("HIGH_NOM", Structural),
    HighWmpc1 => ("HIGH_WMPC1", Structural),
    HighWmpc2 => ("HIGH_WMPC2", Structural),
    HighLcom => ("HIGH_LCOM", Structural),
    HighCbo => ("HIGH_CBO", Structural),
    HighMpc => ("HIGH_MPC", Structural),
    DeepInheritance => ("DEEP_INHERITANCE", Structural),
    ManyChildren => ("MANY_CHILDREN", Structural),
    HighFanIn => ("HIGH_FAN_IN", Structural),
    HighFanOut => ("HIGH_FAN_OUT", Structural),
    DeepNesting => ("DEEP_NESTING", Structural),
    LongFile => ("LONG_FILE", Structural),
    HighSize2 => ("HIGH_SIZE2", Structural),
    HighAttrCount => ("HIGH_ATTR_COUNT", Structural),
    LongModuleImports => ("LONG_MODULE_IMPORTS", Structural),

    // Architectural bank.
    CyclicDependency => ("CYCLIC_DEPENDENCY", Architectural),
    HubLikeDependency => ("HUB_LIKE_DEPENDENCY", Architectural),
    UnstableDependency => ("UNSTABLE_DEPENDENCY", Architectural),
    GodObject => ("GOD_OBJECT", Architectural),
    ScatteredFunctionality => ("SCATTERED_FUNCTIONALITY", Architectural),
    RedundantAbstraction => ("REDUNDANT_ABSTRACTION", Architectural),
    ImproperApiUsage => ("IMPROPER_API_USAGE", Architectural),
}

impl fmt::Display for SmellId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl Serialize for SmellId {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

impl<'de> Deserialize<'de> for SmellId {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        SmellId::parse(&s).ok_or_else(|| serde::de::Error::custom(format!("unknown smell id {s:?}")))
    }
}

/// Measured value of a finding: a number for threshold detectors, free text
/// for pattern detectors.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Measured {
    Num(f64),
    Text(String),
}

impl fmt::Display for Measured {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Measured::Num(n) => write!(f, "{n}"),
            Measured::Text(t) => f.write_str(t),
        }
    }
}

impl From<f64> for Measured {
    fn from(n: f64) -> Self {
        Measured::Num(n)
    }
}

impl From<u64> for Measured {
    fn from(n: u64) -> Self {
        Measured::Num(n as f64)
    }
}

impl From<u32> for Measured {
    fn from(n: u32) -> Self {
        Measured::Num(n as f64)
    }
}

impl From<usize> for Measured {
    fn from(n: usize) -> Self {
        Measured::Num(n as f64)
    }
}

impl From<String> for Measured {
    fn from(t: String) -> Self {
        Measured::Text(t)
    }
}

/// One detected smell.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SmellFinding {
    pub catalog_id: SmellId,
    pub category: Category,
    /// Path relative to the project root, forward slashes.
    pub file: String,
    pub line_start: u32,
    pub line_end: u32,
    /// Fully qualified entity name (module-prefixed) or module name.
    pub entity: String,
    pub measured: Measured,
    /// Absent for detectors with no numeric threshold.
    pub threshold: Option<f64>,
    pub severity: Severity,
    pub message: String,
}

impl SmellFinding {
    /// Report ordering: (file, line_start, catalog_id).
    pub fn sort_key(&self) -> (&str, u32, &'static str) {
        (&self.file, self.line_start, self.catalog_id.as_str())
    }
}

/// Non-smell observations surfaced alongside findings.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DiagnosticKind {
    ParseFailure,
    SelfLoopImport,
    UnresolvedRelativeImport,
    CycleTruncation,
    BaseClassCycle,
    ProjectFailure,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Diagnostic {
    pub file: String,
    pub line: Option<u32>,
    pub kind: DiagnosticKind,
    pub message: String,
}

impl Diagnostic {
    pub fn new(kind: DiagnosticKind, file: impl Into<String>, line: Option<u32>, message: impl Into<String>) -> Self {
        Diagnostic { file: file.into(), line, kind, message: message.into() }
    }
}
