//! Static detector catalog: every detector id, its threshold keys, shipped
//! default values, and default severities.
//!
//! Comparison conventions, applied uniformly and covered by tests:
//! - plain threshold keys flag when `measured > value` (strictly greater);
//! - `*_MIN_*` keys are inclusive floors (`measured >= value` passes the floor);
//! - `*_MAX_*` keys are inclusive caps (`measured <= value` stays inside);
//! - ratio minima (`LOW_COMMENT_RATIO`) flag when `measured < value`;
//! - `SIMILARITY_THRESHOLD` flags at `similarity >= value`.
//!
//! `LONG_METHOD_LINES = 45` and `LARGE_CLASS_METHODS = 15` are calibrated
//! values; everything else is a conventional linter default and carries no
//! external calibration claim. All values are overridable per project.

use crate::findings::{Severity, SmellId};

/// One configurable threshold key.
#[derive(Debug, Clone, Copy)]
pub struct KeySpec {
    pub key: &'static str,
    pub default: f64,
}

/// One detector: catalog id plus the keys that parameterize it. Detectors
/// without a numeric parameter still get one key (value unused, fixed at 0)
/// so they can be disabled and re-prioritized like every other detector.
#[derive(Debug, Clone, Copy)]
pub struct DetectorSpec {
    pub id: SmellId,
    pub keys: &'static [KeySpec],
    pub default_severity: Severity,
}

macro_rules! keys {
    ($(($key:literal, $default:expr)),* $(,)?) => {
        &[$(KeySpec { key: $key, default: $default },)*]
    };
}

use Severity::{High, Low, Medium};

pub const DETECTORS: &[DetectorSpec] = &[
    // --- code bank ---
    DetectorSpec { id: SmellId::LongMethod, keys: keys![("LONG_METHOD_LINES", 45.0)], default_severity: Medium },
    DetectorSpec { id: SmellId::LargeClass, keys: keys![("LARGE_CLASS_METHODS", 15.0)], default_severity: Medium },
    DetectorSpec { id: SmellId::LongParameterList, keys: keys![("LONG_PARAMETER_LIST_PARAMS", 5.0)], default_severity: Low },
    DetectorSpec { id: SmellId::PrimitiveObsession, keys: keys![("PRIMITIVE_OBSESSION_MIN_PARAMS", 4.0)], default_severity: Low },
    DetectorSpec { id: SmellId::DuplicateCode, keys: keys![("DUPLICATE_CODE_MIN_LINES", 6.0)], default_severity: High },
    DetectorSpec { id: SmellId::DeadCode, keys: keys![("DEAD_CODE", 0.0)], default_severity: Medium },
    DetectorSpec { id: SmellId::SpeculativeGenerality, keys: keys![("SPECULATIVE_GENERALITY", 0.0)], default_severity: Low },
    DetectorSpec { id: SmellId::DivergentChange, keys: keys![("DIVERGENT_CHANGE_MIN_CLUSTERS", 3.0)], default_severity: Medium },
    DetectorSpec { id: SmellId::ComplexConditional, keys: keys![("COMPLEX_CONDITIONAL_OPERATORS", 3.0)], default_severity: Medium },
    DetectorSpec { id: SmellId::MessageChain, keys: keys![("MESSAGE_CHAIN_LENGTH", 4.0)], default_severity: Low },
    DetectorSpec { id: SmellId::FeatureEnvy, keys: keys![("FEATURE_ENVY_MIN_ACCESSES", 5.0)], default_severity: Medium },
    DetectorSpec { id: SmellId::DataClumps, keys: keys![("DATA_CLUMPS_MIN_PARAMS", 3.0)], default_severity: Low },
    DetectorSpec { id: SmellId::TemporaryField, keys: keys![("TEMPORARY_FIELD_MAX_METHODS", 1.0)], default_severity: Medium },
    DetectorSpec { id: SmellId::PotentialShotgunSurgery, keys: keys![("SHOTGUN_SURGERY_MODULES", 5.0)], default_severity: High },
    DetectorSpec {
        id: SmellId::LowCommentRatio,
        keys: keys![("LOW_COMMENT_RATIO", 0.02), ("LOW_COMMENT_MIN_LINES", 30.0)],
        default_severity: Low,
    },
    DetectorSpec { id: SmellId::LargeCommentBlock, keys: keys![("LARGE_COMMENT_BLOCK_LINES", 10.0)], default_severity: Low },
    DetectorSpec { id: SmellId::MissingDocstring, keys: keys![("MISSING_DOCSTRING", 0.0)], default_severity: Low },
    DetectorSpec { id: SmellId::MagicNumber, keys: keys![("MAGIC_NUMBER", 0.0)], default_severity: Low },
    DetectorSpec { id: SmellId::GlobalVariableAbuse, keys: keys![("GLOBAL_VARIABLE_ABUSE_COUNT", 2.0)], default_severity: Medium },
    DetectorSpec { id: SmellId::TooManyReturns, keys: keys![("TOO_MANY_RETURNS_COUNT", 4.0)], default_severity: Low },
    DetectorSpec { id: SmellId::LongLambda, keys: keys![("LONG_LAMBDA_CHARS", 80.0)], default_severity: Low },
    DetectorSpec { id: SmellId::MutableDefaultArgument, keys: keys![("MUTABLE_DEFAULT_ARGUMENT", 0.0)], default_severity: High },
    DetectorSpec { id: SmellId::BroadExcept, keys: keys![("BROAD_EXCEPT", 0.0)], default_severity: Medium },
    DetectorSpec { id: SmellId::UnusedImport, keys: keys![("UNUSED_IMPORT", 0.0)], default_severity: Low },
    // --- structural bank ---
    DetectorSpec { id: SmellId::TooManyBranches, keys: keys![("TOO_MANY_BRANCHES", 12.0)], default_severity: Medium },
    DetectorSpec { id: SmellId::HighLoc, keys: keys![("HIGH_LOC", 750.0)], default_severity: Medium },
    DetectorSpec { id: SmellId::HighRfc, keys: keys![("HIGH_RFC", 50.0)], default_severity: Medium },
    DetectorSpec { id: SmellId::HighCyclomatic, keys: keys![("HIGH_CYCLOMATIC", 10.0)], default_severity: Medium },
    DetectorSpec { id: SmellId::HighNom, keys: keys![("HIGH_NOM", 20.0)], default_severity: Medium },
    DetectorSpec { id: SmellId::HighWmpc1, keys: keys![("HIGH_WMPC1", 50.0)], default_severity: Medium },
    DetectorSpec { id: SmellId::HighWmpc2, keys: keys![("HIGH_WMPC2", 30.0)], default_severity: Medium },
    DetectorSpec { id: SmellId::HighLcom, keys: keys![("HIGH_LCOM", 10.0)], default_severity: Medium },
    DetectorSpec { id: SmellId::HighCbo, keys: keys![("HIGH_CBO", 14.0)], default_severity: Medium },
    DetectorSpec { id: SmellId::HighMpc, keys: keys![("HIGH_MPC", 20.0)], default_severity: Medium },
    DetectorSpec { id: SmellId::DeepInheritance, keys: keys![("DEEP_INHERITANCE", 5.0)], default_severity: Medium },
    DetectorSpec { id: SmellId::ManyChildren, keys: keys![("MANY_CHILDREN", 7.0)], default_severity: Medium },
    DetectorSpec { id: SmellId::HighFanIn, keys: keys![("HIGH_FAN_IN", 20.0)], default_severity: Medium },
    DetectorSpec { id: SmellId::HighFanOut, keys: keys![("HIGH_FAN_OUT", 15.0)], default_severity: Medium },
    DetectorSpec { id: SmellId::DeepNesting, keys: keys![("DEEP_NESTING", 4.0)], default_severity: Medium },
    DetectorSpec { id: SmellId::LongFile, keys: keys![("LONG_FILE", 500.0)], default_severity: Low },
    DetectorSpec { id: SmellId::HighSize2, keys: keys![("HIGH_SIZE2", 40.0)], default_severity: Medium },
    DetectorSpec { id: SmellId::HighAttrCount, keys: keys![("HIGH_ATTR_COUNT", 15.0)], default_severity: Medium },
    DetectorSpec { id: SmellId::LongModuleImports, keys: keys![("LONG_MODULE_IMPORTS", 15.0)], default_severity: Low },
    // --- architectural bank ---
    DetectorSpec {
        id: SmellId::CyclicDependency,
        keys: keys![("MAX_CYCLE_LENGTH", 10.0), ("MAX_CYCLES_PER_SCC", 100.0)],
        default_severity: High,
    },
    DetectorSpec {
        id: SmellId::HubLikeDependency,
        keys: keys![("HUB_MIN_DEGREE", 3.0), ("HUB_RATIO", 2.0)],
        default_severity: Medium,
    },
    DetectorSpec { id: SmellId::UnstableDependency, keys: keys![("INSTABILITY_GAP", 0.3)], default_severity: Medium },
    DetectorSpec {
        id: SmellId::GodObject,
        keys: keys![("GOD_OBJECT_FUNCTIONS", 30.0), ("GOD_OBJECT_METHODS", 25.0)],
        default_severity: High,
    },
    DetectorSpec { id: SmellId::ScatteredFunctionality, keys: keys![("SCATTER_MODULES", 3.0)], default_severity: Medium },
    DetectorSpec {
        id: SmellId::RedundantAbstraction,
        keys: keys![("SIMILARITY_THRESHOLD", 0.8), ("REDUNDANCY_MIN_METHODS", 3.0)],
        default_severity: Medium,
    },
    DetectorSpec { id: SmellId::ImproperApiUsage, keys: keys![("API_REPEAT_CALLS", 5.0)], default_severity: Medium },
];

/// Look up the detector spec for an id.
pub fn detector(id: SmellId) -> &'static DetectorSpec {
    DETECTORS
        .iter()
        .find(|d| d.id == id)
        .expect("every SmellId has a catalog entry")
}

/// All keys belonging to one bank, in catalog order.
pub fn bank_keys(category: crate::findings::Category) -> impl Iterator<Item = (&'static DetectorSpec, &'static KeySpec)> {
    DETECTORS
        .iter()
        .filter(move |d| d.id.category() == category)
        .flat_map(|d| d.keys.iter().map(move |k| (d, k)))
}

/// Detector owning a threshold key, if the key exists.
pub fn detector_for_key(key: &str) -> Option<&'static DetectorSpec> {
    DETECTORS.iter().find(|d| d.keys.iter().any(|k| k.key == key))
}
