//! Per-entity base metrics shared by the detector banks.

pub mod classes;
pub mod comments;
pub mod function_metrics;

pub use classes::{build_class_hierarchy, lcom, ClassHierarchy, ClassKey};
pub use function_metrics::{cyclomatic_complexity, nesting_and_branches};

use std::collections::{BTreeMap, BTreeSet};

use crate::findings::Diagnostic;
use crate::source::walker::{collect_defs, Defs};
use crate::source::{ImportRecord, SourceModule};

macro_rules! metric_ids {
    ($($variant:ident => $name:literal),+ $(,)?) => {
        /// Identifier of one base metric.
        #[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
        pub enum MetricId {
            $($variant,)+
        }

        impl MetricId {
            pub const ALL: &'static [MetricId] = &[$(MetricId::$variant,)+];

            pub fn as_str(self) -> &'static str {
                match self { $(MetricId::$variant => $name,)+ }
            }
        }
    };
}

metric_ids! {
    Cc => "CC",
    Loc => "LOC",
    Nom => "NOM",
    Size2 => "SIZE2",
    Wmpc1 => "WMPC1",
    Wmpc2 => "WMPC2",
    Lcom => "LCOM",
    Cbo => "CBO",
    Mpc => "MPC",
    Rfc => "RFC",
    Dit => "DIT",
    Noc => "NOC",
    MaxNesting => "MAX_NESTING",
    BranchCount => "BRANCH_COUNT",
    ParamCount => "PARAM_COUNT",
    CommentRatio => "COMMENT_RATIO",
    ReturnCount => "RETURN_COUNT",
    AttrCount => "ATTR_COUNT",
}

/// Metric values of one entity.
#[derive(Debug, Clone, Default)]
pub struct MetricVector {
    values: BTreeMap<MetricId, f64>,
}

impl MetricVector {
    pub fn set(&mut self, id: MetricId, value: f64) {
        self.values.insert(id, value);
    }

    pub fn get(&self, id: MetricId) -> Option<f64> {
        self.values.get(&id).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (MetricId, f64)> + '_ {
        self.values.iter().map(|(k, v)| (*k, *v))
    }
}

/// Entity key: (module name, module-relative qualified name).
pub type EntityKey = (String, String);

#[derive(Debug, Default)]
pub struct ProjectMetrics {
    pub by_entity: BTreeMap<EntityKey, MetricVector>,
}

impl ProjectMetrics {
    pub fn get(&self, module: &str, qualified: &str) -> Option<&MetricVector> {
        self.by_entity.get(&(module.to_string(), qualified.to_string()))
    }

    pub fn value(&self, module: &str, qualified: &str, id: MetricId) -> Option<f64> {
        self.get(module, qualified).and_then(|v| v.get(id))
    }
}

/// Compute the full metric table for every entity of every parse_ok module.
pub fn compute_project_metrics(
    modules: &[SourceModule],
    records: &[ImportRecord],
) -> (ProjectMetrics, Vec<Diagnostic>) {
    let defs_per_module: Vec<(usize, Defs<'_>)> = modules
        .iter()
        .enumerate()
        .filter_map(|(i, m)| m.tree.as_ref().map(|tree| (i, collect_defs(tree))))
        .collect();

    let hierarchy = build_class_hierarchy(modules, &defs_per_module, records);

    let module_set: BTreeSet<&str> = modules
        .iter()
        .filter(|m| m.parse_ok)
        .map(|m| m.module_name.as_str())
        .collect();
    let bindings = classes::project_bindings(records, &module_set);
    let mut class_keys: BTreeSet<ClassKey> = BTreeSet::new();
    for (idx, defs) in &defs_per_module {
        for class in &defs.classes {
            class_keys.insert((modules[*idx].module_name.clone(), class.qualified_name.clone()));
        }
    }

    let mut pm = ProjectMetrics::default();
    for (idx, defs) in &defs_per_module {
        let module = &modules[*idx];
        let flags = comments::comment_flags(module);
        let module_lines = module.lines.len().max(1) as u32;

        // Module entity.
        let mut mv = MetricVector::default();
        mv.set(MetricId::Loc, module.lines.len() as f64);
        mv.set(MetricId::CommentRatio, comments::comment_ratio(&flags, 1, module_lines));
        pm.by_entity.insert((module.module_name.clone(), module.module_name.clone()), mv);

        // Functions and methods.
        let mut cc_by_name: BTreeMap<&str, u64> = BTreeMap::new();
        for func in &defs.functions {
            let (start, end) = module.span_of(func.node.range());
            let cc = function_metrics::cyclomatic_complexity(func);
            cc_by_name.insert(func.qualified_name.as_str(), cc);
            let (nesting, branches) = function_metrics::nesting_and_branches(func);
            let params = crate::source::entities::parameter_names(func).len();

            let mut mv = MetricVector::default();
            mv.set(MetricId::Cc, cc as f64);
            mv.set(MetricId::Loc, (end - start + 1) as f64);
            mv.set(MetricId::MaxNesting, nesting as f64);
            mv.set(MetricId::BranchCount, branches as f64);
            mv.set(MetricId::ParamCount, params as f64);
            mv.set(MetricId::ReturnCount, function_metrics::return_count(func.node.body()) as f64);
            mv.set(MetricId::CommentRatio, comments::comment_ratio(&flags, start, end));
            pm.by_entity.insert((module.module_name.clone(), func.qualified_name.clone()), mv);
        }

        // Classes.
        for class in &defs.classes {
            let key: ClassKey = (module.module_name.clone(), class.qualified_name.clone());
            let methods: Vec<_> = defs.methods_of(&class.qualified_name).collect();
            let method_names: BTreeSet<&str> =
                methods.iter().map(|m| m.node.name()).collect();

            let nom = methods.len() as u64;
            let wmpc1: u64 = methods
                .iter()
                .map(|m| cc_by_name.get(m.qualified_name.as_str()).copied().unwrap_or(1))
                .sum();
            let uses: Vec<BTreeSet<String>> = methods
                .iter()
                .map(|m| classes::method_attribute_uses(m, &method_names))
                .collect();
            let attr_names = classes::class_attr_names(class, &methods);
            let called = classes::called_method_names(&methods);
            let mpc = classes::message_passing_calls(&methods);
            let cbo = classes::coupled_classes(&module.module_name, class, &class_keys, &module_set, &bindings).len();

            let (start, end) = module.span_of(class.node.range);
            let mut mv = MetricVector::default();
            mv.set(MetricId::Nom, nom as f64);
            mv.set(MetricId::Wmpc1, wmpc1 as f64);
            mv.set(MetricId::Wmpc2, nom as f64);
            mv.set(MetricId::Lcom, classes::lcom(&uses) as f64);
            mv.set(MetricId::AttrCount, attr_names.len() as f64);
            mv.set(MetricId::Size2, (attr_names.len() as u64 + nom) as f64);
            mv.set(MetricId::Rfc, (nom + called.len() as u64) as f64);
            mv.set(MetricId::Mpc, mpc as f64);
            mv.set(MetricId::Cbo, cbo as f64);
            mv.set(MetricId::Dit, hierarchy.dit.get(&key).copied().unwrap_or(0) as f64);
            mv.set(MetricId::Noc, hierarchy.noc.get(&key).copied().unwrap_or(0) as f64);
            mv.set(MetricId::Loc, (end - start + 1) as f64);
            mv.set(MetricId::CommentRatio, comments::comment_ratio(&flags, start, end));
            pm.by_entity.insert(key, mv);
        }
    }

    (pm, hierarchy.diagnostics)
}
