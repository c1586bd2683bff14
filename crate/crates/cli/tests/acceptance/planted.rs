//! One planted fixture pair per detector: the smelly variant triggers the
//! detector exactly once at a known location, the clean twin not at all.

use pysniff_core::SmellId;

use crate::support::files;

pub struct PlantedCase {
    pub id: SmellId,
    pub smelly: Vec<(String, String)>,
    pub clean: Vec<(String, String)>,
    pub expect_file: &'static str,
    pub expect_line: u32,
    /// Findings the smelly fixture yields for this detector (cross-referenced
    /// detectors like DUPLICATE_CODE report once per occurrence).
    pub expect_total: usize,
}

fn case(
    id: SmellId,
    smelly: Vec<(String, String)>,
    clean: Vec<(String, String)>,
    expect_file: &'static str,
    expect_line: u32,
) -> PlantedCase {
    PlantedCase { id, smelly, clean, expect_file, expect_line, expect_total: 1 }
}

fn method_of_lines(total: usize) -> String {
    let mut src = String::from("class C:\n    def m(self):\n");
    for _ in 0..total - 1 {
        src.push_str("        value = 1\n");
    }
    src
}

fn class_with_methods(count: usize) -> String {
    let mut src = String::from("class C:\n");
    for i in 0..count {
        src.push_str(&format!("    def m{i}(self):\n        return None\n"));
    }
    src
}

fn module_with_functions(count: usize) -> String {
    (0..count).map(|i| format!("def f{i}():\n    return None\n")).collect()
}

fn pass_lines(count: usize) -> String {
    "pass\n".repeat(count)
}

fn importers(target: &str, count: usize) -> Vec<(String, String)> {
    let mut out = vec![(format!("{target}.py"), String::new())];
    for i in 0..count {
        out.push((format!("u{i:02}.py"), format!("import {target}\n")));
    }
    out
}

fn star(spokes: usize) -> Vec<(String, String)> {
    let mut out = Vec::new();
    let hub_imports: String = (0..spokes).map(|i| format!("import out{i}\n")).collect();
    out.push(("hub.py".to_string(), hub_imports));
    for i in 0..spokes {
        out.push((format!("out{i}.py"), String::new()));
        out.push((format!("in{i}.py"), "import hub\n".to_string()));
    }
    out
}

fn class_chain(len: usize) -> String {
    let mut blocks = vec!["class A:\n    pass\n".to_string()];
    for i in 1..len {
        let name = (b'A' + i as u8) as char;
        let base = (b'A' + i as u8 - 1) as char;
        blocks.push(format!("class {name}({base}):\n    pass\n"));
    }
    blocks.join("\n")
}

const DUP_BODY: &str = "    total = 0\n    for item in data:\n        total = total + 1\n    if total:\n        total = total - 1\n    return total\n";

pub fn all_cases() -> Vec<PlantedCase> {
    let mut cases = Vec::new();

    // --- code bank ---

    cases.push(case(
        SmellId::LongMethod,
        vec![("m.py".into(), method_of_lines(46))],
        vec![("m.py".into(), method_of_lines(45))],
        "m.py",
        2,
    ));

    cases.push(case(
        SmellId::LargeClass,
        vec![("m.py".into(), class_with_methods(16))],
        vec![("m.py".into(), class_with_methods(15))],
        "m.py",
        1,
    ));

    cases.push(case(
        SmellId::LongParameterList,
        files(&[("m.py", "def f(a, b, c, d, e, g):\n    return a\n")]),
        files(&[("m.py", "def f(a, b, c, d, e):\n    return a\n")]),
        "m.py",
        1,
    ));

    cases.push(case(
        SmellId::PrimitiveObsession,
        files(&[("m.py", "def f(a: int, b: str, c: float, d: bool):\n    return a\n")]),
        files(&[("m.py", "def f(a: int, b: str, c: float, d):\n    return a\n")]),
        "m.py",
        1,
    ));

    let dup_smelly = format!("def first(data):\n{DUP_BODY}\n\ndef second(data, flag):\n{DUP_BODY}");
    let dup_clean = format!(
        "def first(data):\n{DUP_BODY}\n\ndef second(data, flag):\n{}",
        DUP_BODY.replace("total = total - 1", "total -= 1")
    );
    cases.push(PlantedCase {
        id: SmellId::DuplicateCode,
        smelly: vec![("m.py".into(), dup_smelly)],
        clean: vec![("m.py".into(), dup_clean)],
        expect_file: "m.py",
        expect_line: 2,
        expect_total: 2,
    });

    cases.push(case(
        SmellId::DeadCode,
        files(&[("m.py", "def orphan_helper():\n    return 1\n")]),
        files(&[("m.py", "def orphan_helper():\n    return 1\n\n\nvalue = orphan_helper()\n")]),
        "m.py",
        1,
    ));

    cases.push(case(
        SmellId::SpeculativeGenerality,
        files(&[("m.py", "def f(used, spare):\n    return used\n")]),
        files(&[("m.py", "def f(used, spare):\n    return used + spare\n")]),
        "m.py",
        1,
    ));

    cases.push(case(
        SmellId::DivergentChange,
        files(&[(
            "m.py",
            "import os\nimport json\nimport re\n\n\nclass Dispatcher:\n    def read(self):\n        return os.sep\n\n    def encode(self):\n        return json.dumps\n\n    def scan(self):\n        return re.escape\n",
        )]),
        files(&[(
            "m.py",
            "import os\nimport json\nimport re\n\n\nclass Dispatcher:\n    def read(self):\n        return os.sep\n\n    def encode(self):\n        return os.sep + str(json.dumps)\n\n    def scan(self):\n        return os.sep + str(re.escape)\n",
        )]),
        "m.py",
        6,
    ));

    cases.push(case(
        SmellId::ComplexConditional,
        files(&[("m.py", "def f(a, b, c, d, e):\n    if a and b and c and d and e:\n        return 1\n    return 0\n")]),
        files(&[("m.py", "def f(a, b, c, d):\n    if a and b and c and d:\n        return 1\n    return 0\n")]),
        "m.py",
        2,
    ));

    cases.push(case(
        SmellId::MessageChain,
        files(&[("m.py", "def f(obj):\n    return obj.a.b.c.d.e\n")]),
        files(&[("m.py", "def f(obj):\n    return obj.a.b.c.d\n")]),
        "m.py",
        2,
    ));

    cases.push(case(
        SmellId::FeatureEnvy,
        files(&[(
            "m.py",
            "class Wallet:\n    def total(self, other):\n        first = other.a\n        second = other.b\n        third = other.c\n        fourth = other.d\n        fifth = other.e + other.f\n        return self.base + first + second + third + fourth + fifth\n",
        )]),
        files(&[(
            "m.py",
            "class Wallet:\n    def total(self, other):\n        first = other.a\n        second = other.b\n        third = other.c\n        return self.base + first + second + third\n",
        )]),
        "m.py",
        2,
    ));

    cases.push(case(
        SmellId::DataClumps,
        files(&[(
            "m.py",
            "def connect(host, port, timeout):\n    return (host, port, timeout)\n\n\ndef retry(host, port, timeout, attempts):\n    return (host, port, timeout, attempts)\n",
        )]),
        files(&[(
            "m.py",
            "def connect(host, port, timeout):\n    return (host, port, timeout)\n\n\ndef retry(host, port, attempts):\n    return (host, port, attempts)\n",
        )]),
        "m.py",
        1,
    ));

    cases.push(case(
        SmellId::TemporaryField,
        files(&[(
            "m.py",
            "class Job:\n    def __init__(self):\n        self.name = \"job\"\n\n    def prepare(self):\n        self._scratch = []\n        return self._scratch\n",
        )]),
        files(&[(
            "m.py",
            "class Job:\n    def __init__(self):\n        self.name = \"job\"\n        self._scratch = []\n\n    def prepare(self):\n        self._scratch = []\n        return self._scratch\n",
        )]),
        "m.py",
        6,
    ));

    let mut shotgun_smelly = vec![("target.py".to_string(), "def api_call():\n    return 1\n".to_string())];
    for i in 0..6 {
        shotgun_smelly.push((format!("u{i}.py"), "import target\n\nvalue = target.api_call()\n".to_string()));
    }
    let shotgun_clean = shotgun_smelly[..6].to_vec();
    cases.push(case(SmellId::PotentialShotgunSurgery, shotgun_smelly, shotgun_clean, "target.py", 1));

    let low_comment_smelly = format!("def f():\n{}", "    value = 1\n".repeat(31));
    let low_comment_clean = format!(
        "def f():\n    # setup\n    # phase one\n{}",
        "    value = 1\n".repeat(31)
    );
    cases.push(case(
        SmellId::LowCommentRatio,
        vec![("m.py".into(), low_comment_smelly)],
        vec![("m.py".into(), low_comment_clean)],
        "m.py",
        1,
    ));

    let comment_block = |n: usize| {
        let mut src: String = (0..n).map(|i| format!("# note {i}\n")).collect();
        src.push_str("value = 1\n");
        src
    };
    cases.push(case(
        SmellId::LargeCommentBlock,
        vec![("m.py".into(), comment_block(11))],
        vec![("m.py".into(), comment_block(10))],
        "m.py",
        1,
    ));

    cases.push(case(
        SmellId::MissingDocstring,
        files(&[("m.py", "def visible():\n    return 1\n")]),
        files(&[("m.py", "def visible():\n    \"\"\"Documented.\"\"\"\n    return 1\n")]),
        "m.py",
        1,
    ));

    cases.push(case(
        SmellId::MagicNumber,
        files(&[("m.py", "timeout = 86400\n")]),
        files(&[("m.py", "TIMEOUT = 86400\n")]),
        "m.py",
        1,
    ));

    cases.push(case(
        SmellId::GlobalVariableAbuse,
        files(&[(
            "m.py",
            "def configure():\n    global first, second, third\n    first = 1\n    second = 1\n    third = 1\n",
        )]),
        files(&[("m.py", "def configure():\n    global first, second\n    first = 1\n    second = 1\n")]),
        "m.py",
        1,
    ));

    cases.push(case(
        SmellId::TooManyReturns,
        files(&[(
            "m.py",
            "def pick(x):\n    if x == 1:\n        return 1\n    if x == 2:\n        return 2\n    if x == 0:\n        return 0\n    if x:\n        return 1\n    return 0\n",
        )]),
        files(&[(
            "m.py",
            "def pick(x):\n    if x == 1:\n        return 1\n    if x == 2:\n        return 2\n    if x:\n        return 1\n    return 0\n",
        )]),
        "m.py",
        1,
    ));

    let long_body = ["value"; 12].join(" + ");
    cases.push(case(
        SmellId::LongLambda,
        vec![("m.py".into(), format!("handler = lambda value: {long_body}\n"))],
        vec![("m.py".into(), "handler = lambda value: value + value\n".to_string())],
        "m.py",
        1,
    ));

    cases.push(case(
        SmellId::MutableDefaultArgument,
        files(&[("m.py", "def f(items=[]):\n    return items\n")]),
        files(&[("m.py", "def f(items=None):\n    return items\n")]),
        "m.py",
        1,
    ));

    cases.push(case(
        SmellId::BroadExcept,
        files(&[("m.py", "def safe(x):\n    try:\n        return int(x)\n    except Exception:\n        return 0\n")]),
        files(&[("m.py", "def safe(x):\n    try:\n        return int(x)\n    except ValueError:\n        return 0\n")]),
        "m.py",
        4,
    ));

    cases.push(case(
        SmellId::UnusedImport,
        files(&[("m.py", "import os\n\nVALUE = 1\n")]),
        files(&[("m.py", "import os\n\nVALUE = os.sep\n")]),
        "m.py",
        1,
    ));

    // --- structural bank ---

    let branches = |elifs: usize| {
        let mut src = String::from("def route(x):\n    if x == 0:\n        return 0\n");
        for i in 1..=elifs {
            src.push_str(&format!("    elif x == {i}:\n        return {i}\n"));
        }
        src.push_str("    else:\n        return 0\n");
        src
    };
    // if + 11 elifs + else = 13 branches.
    cases.push(case(
        SmellId::TooManyBranches,
        vec![("m.py".into(), branches(11))],
        vec![("m.py".into(), branches(10))],
        "m.py",
        1,
    ));

    cases.push(case(
        SmellId::HighLoc,
        vec![("m.py".into(), pass_lines(751))],
        vec![("m.py".into(), pass_lines(750))],
        "m.py",
        1,
    ));

    let rfc_class = |calls: usize| {
        let mut src = String::from("class C:\n    def run(self):\n");
        for i in 0..calls {
            src.push_str(&format!("        f{i}()\n"));
        }
        src
    };
    cases.push(case(
        SmellId::HighRfc,
        vec![("m.py".into(), rfc_class(51))],
        vec![("m.py".into(), rfc_class(45))],
        "m.py",
        1,
    ));

    let sequential_ifs = |n: usize| {
        let mut src = String::from("def check(x):\n");
        for _ in 0..n {
            src.push_str("    if x:\n        x = x + 1\n");
        }
        src.push_str("    return x\n");
        src
    };
    cases.push(case(
        SmellId::HighCyclomatic,
        vec![("m.py".into(), sequential_ifs(10))],
        vec![("m.py".into(), sequential_ifs(9))],
        "m.py",
        1,
    ));

    cases.push(case(
        SmellId::HighNom,
        vec![("m.py".into(), class_with_methods(21))],
        vec![("m.py".into(), class_with_methods(20))],
        "m.py",
        1,
    ));

    let heavy_methods = |count: usize| {
        let mut src = String::from("class C:\n");
        for i in 0..count {
            src.push_str(&format!("    def m{i}(self, flag):\n        count = 0\n"));
            for _ in 0..8 {
                src.push_str("        if flag:\n            count = count + 1\n");
            }
            src.push_str("        return count\n");
        }
        src
    };
    // 6 methods x CC 9 = WMPC1 54.
    cases.push(case(
        SmellId::HighWmpc1,
        vec![("m.py".into(), heavy_methods(6))],
        vec![("m.py".into(), heavy_methods(5))],
        "m.py",
        1,
    ));

    cases.push(case(
        SmellId::HighWmpc2,
        vec![("m.py".into(), class_with_methods(31))],
        vec![("m.py".into(), class_with_methods(30))],
        "m.py",
        1,
    ));

    let lcom_class = |shared: bool| {
        let mut src = String::from("class C:\n");
        for i in 0..6 {
            src.push_str(&format!("    def m{i}(self):\n        self.a{i} = {i}\n"));
            if shared {
                src.push_str(&format!("        return self.a{i} + self.shared\n"));
            } else {
                src.push_str(&format!("        return self.a{i}\n"));
            }
        }
        src
    };
    // Six methods with pairwise-disjoint attributes: P=15, Q=0.
    cases.push(case(
        SmellId::HighLcom,
        vec![("m.py".into(), lcom_class(false))],
        vec![("m.py".into(), lcom_class(true))],
        "m.py",
        1,
    ));

    let cbo_project = |classes: usize| {
        let helpers: String = (0..classes).map(|i| format!("class C{i}:\n    pass\n")).collect();
        let names: Vec<String> = (0..classes).map(|i| format!("C{i}")).collect();
        let ctor_calls: Vec<String> = names.iter().map(|n| format!("{n}()")).collect();
        let main = format!(
            "from helpers import {}\n\n\nclass User:\n    def build(self):\n        return [{}]\n",
            names.join(", "),
            ctor_calls.join(", ")
        );
        vec![("helpers.py".to_string(), helpers), ("main.py".to_string(), main)]
    };
    cases.push(case(SmellId::HighCbo, cbo_project(15), cbo_project(14), "main.py", 4));

    let mpc_class = |calls: usize| {
        let mut src = String::from("class C:\n    def run(self, conn):\n");
        for i in 0..calls {
            src.push_str(&format!("        conn.f{i}()\n"));
        }
        src
    };
    cases.push(case(
        SmellId::HighMpc,
        vec![("m.py".into(), mpc_class(21))],
        vec![("m.py".into(), mpc_class(20))],
        "m.py",
        1,
    ));

    // Chain of 7 classes: the last has DIT 6.
    cases.push(case(
        SmellId::DeepInheritance,
        vec![("m.py".into(), class_chain(7))],
        vec![("m.py".into(), class_chain(6))],
        "m.py",
        19,
    ));

    let many_children = |subs: usize| {
        let mut blocks = vec!["class Base:\n    pass\n".to_string()];
        for i in 0..subs {
            blocks.push(format!("class S{i}(Base):\n    pass\n"));
        }
        blocks.join("\n")
    };
    cases.push(case(
        SmellId::ManyChildren,
        vec![("m.py".into(), many_children(8))],
        vec![("m.py".into(), many_children(7))],
        "m.py",
        1,
    ));

    cases.push(case(SmellId::HighFanIn, importers("target", 21), importers("target", 20), "target.py", 1));

    let fan_out_project = |count: usize| {
        let mut out = Vec::new();
        let imports: String = (0..count).map(|i| format!("import p{i:02}\n")).collect();
        out.push(("m.py".to_string(), imports));
        for i in 0..count {
            out.push((format!("p{i:02}.py"), String::new()));
        }
        out
    };
    cases.push(case(SmellId::HighFanOut, fan_out_project(16), fan_out_project(15), "m.py", 1));

    let nested_ifs = |depth: usize| {
        let mut src = String::from("def deep(x):\n");
        for level in 0..depth {
            src.push_str(&"    ".repeat(level + 1));
            src.push_str("if x:\n");
        }
        src.push_str(&"    ".repeat(depth + 1));
        src.push_str("return 1\n    return 0\n");
        src
    };
    cases.push(case(
        SmellId::DeepNesting,
        vec![("m.py".into(), nested_ifs(5))],
        vec![("m.py".into(), nested_ifs(4))],
        "m.py",
        1,
    ));

    cases.push(case(
        SmellId::LongFile,
        vec![("m.py".into(), pass_lines(501))],
        vec![("m.py".into(), pass_lines(500))],
        "m.py",
        1,
    ));

    let attr_class = |attrs: usize| {
        let mut src = String::from("class C:\n");
        for i in 0..attrs {
            src.push_str(&format!("    a{i} = 0\n"));
        }
        src
    };
    cases.push(case(
        SmellId::HighSize2,
        vec![("m.py".into(), attr_class(41))],
        vec![("m.py".into(), attr_class(40))],
        "m.py",
        1,
    ));

    cases.push(case(
        SmellId::HighAttrCount,
        vec![("m.py".into(), attr_class(16))],
        vec![("m.py".into(), attr_class(15))],
        "m.py",
        1,
    ));

    const STDLIB_NAMES: [&str; 16] = [
        "os", "sys", "json", "re", "math", "time", "abc", "io", "csv", "enum", "array", "bisect",
        "cmath", "copy", "dis", "errno",
    ];
    let import_block = |count: usize| {
        STDLIB_NAMES[..count].iter().map(|n| format!("import {n}\n")).collect::<String>()
    };
    cases.push(case(
        SmellId::LongModuleImports,
        vec![("m.py".into(), import_block(16))],
        vec![("m.py".into(), import_block(15))],
        "m.py",
        1,
    ));

    // --- architectural bank ---

    cases.push(case(
        SmellId::CyclicDependency,
        files(&[("a.py", "import b\n"), ("b.py", "import a\n")]),
        files(&[("a.py", "import b\n"), ("b.py", "")]),
        "a.py",
        1,
    ));

    cases.push(case(SmellId::HubLikeDependency, star(6), star(3), "hub.py", 1));

    cases.push(case(
        SmellId::UnstableDependency,
        files(&[
            ("a.py", "import x\n"),
            ("b.py", "import x\n"),
            ("x.py", "import y\n"),
            ("y.py", "import a\nimport b\n"),
        ]),
        files(&[("a.py", "import x\n"), ("b.py", "import x\n"), ("x.py", "import y\n"), ("y.py", "")]),
        "x.py",
        1,
    ));

    cases.push(case(
        SmellId::GodObject,
        vec![("m.py".into(), module_with_functions(31))],
        vec![("m.py".into(), module_with_functions(30))],
        "m.py",
        1,
    ));

    let scattered = |modules: usize| {
        (0..modules)
            .map(|i| (format!("p{i}.py"), format!("def process_data():\n    return {i}\n")))
            .collect::<Vec<_>>()
    };
    cases.push(case(SmellId::ScatteredFunctionality, scattered(4), scattered(3), "p0.py", 1));

    let store_class = |name: &str, last_method: &str| {
        format!(
            "class {name}:\n    def load(self):\n        return 1\n\n    def save(self):\n        return 2\n\n    def reset(self):\n        return 3\n\n    def {last_method}(self):\n        return 4\n"
        )
    };
    cases.push(case(
        SmellId::RedundantAbstraction,
        vec![
            ("depot.py".into(), store_class("Depot", "close")),
            ("store.py".into(), store_class("Store", "close")),
        ],
        vec![
            ("depot.py".into(), store_class("Depot", "shutdown")),
            ("store.py".into(), store_class("Store", "close")),
        ],
        "depot.py",
        1,
    ));

    cases.push(case(
        SmellId::ImproperApiUsage,
        files(&[("m.py", "import extlib\n\nvalue = extlib._internal_utils\n")]),
        files(&[("m.py", "import extlib\n\nvalue = extlib.public_api\n")]),
        "m.py",
        3,
    ));

    cases
}
