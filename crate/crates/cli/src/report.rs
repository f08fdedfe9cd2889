use std::collections::BTreeMap;
use std::fmt::{self, Write as _};

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use serde_json::Value;
use torus_index::homalg::HomologyGroup;
use torus_index::shifteq::LinearEndo;

pub const SCHEMA: &str = "ctindex-report/1";

/// `ℤ^betti ⊕ ℤ/t…` in machine-readable form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Group {
    pub degree: usize,
    pub betti: usize,
    pub torsion: Vec<Value>,
    pub text: String,
}

pub fn integer(b: &BigInt) -> Value {
    i64::try_from(b).map_or_else(|_| Value::String(b.to_string()), Value::from)
}

impl Group {
    pub fn new(degree: usize, g: &HomologyGroup) -> Self {
        Group {
            degree,
            betti: g.betti,
            torsion: g.torsion.iter().map(integer).collect(),
            text: g.to_string(),
        }
    }
}

pub fn groups(gs: &[HomologyGroup]) -> Vec<Group> {
    gs.iter().enumerate().map(|(n, g)| Group::new(n, g)).collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EnclosureStats {
    pub grid: String,
    pub cells: usize,
    pub max_fiber: usize,
    /// fiber size → number of cells
    pub fiber_histogram: BTreeMap<usize, usize>,
    pub escaping: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PairSummary {
    /// `dynamics` for a computed pair, `wedge` for a wedge of circles
    pub model: String,
    pub n_cells: usize,
    pub l_cells: usize,
    pub n: Vec<String>,
    pub l: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FiberSummary {
    pub passed: bool,
    pub failing: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TorusSummary {
    pub mode: String,
    pub unreduced: Vec<Group>,
    pub reduced: Vec<Group>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fiber_check: Option<FiberSummary>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SubgroupSummary {
    pub index: usize,
    pub invariants: Vec<Value>,
    pub generators: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GroupSummary {
    pub reduced: bool,
    pub presentation: String,
    pub simplified: String,
    pub abelianization: Group,
    pub max_index: usize,
    /// subgroup indices, one per conjugacy class
    pub indices: Vec<usize>,
    /// abelian invariants of each subgroup, `0` for a free factor
    pub abelian_invariants: Vec<Vec<Value>>,
    pub subgroups: Vec<SubgroupSummary>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<usize>,
}

impl GroupSummary {
    /// The part compared between groups: abelianization and the sorted
    /// `(index, invariants)` list.
    pub fn fingerprint(&self) -> (Group, Vec<(usize, Vec<Value>)>) {
        (
            self.abelianization.clone(),
            self.indices
                .iter()
                .copied()
                .zip(self.abelian_invariants.iter().cloned())
                .collect(),
        )
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ShiftDegree {
    pub degree: usize,
    pub equivalent: bool,
    pub left: Vec<String>,
    pub right: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ShiftSummary {
    pub field: String,
    pub equivalent: bool,
    pub degrees: Vec<ShiftDegree>,
}

pub type MatrixText = Vec<Vec<String>>;

pub fn matrices(ms: &[LinearEndo]) -> Vec<MatrixText> {
    ms.iter().map(LinearEndo::to_strings).collect()
}

/// Output of every command except `compare`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema: String,
    pub kind: String,
    pub input: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub enclosure: Option<EnclosureStats>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pair: Option<PairSummary>,
    /// `H(N, L)` per degree
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub homology: Option<Vec<Group>>,
    /// rational matrices of the induced map on `H̃(N/L)` per degree
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub homological_index: Option<Vec<MatrixText>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub torus: Option<TorusSummary>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group: Option<GroupSummary>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub shift_equivalence: Option<ShiftSummary>,
    #[serde(default)]
    pub warnings: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<BTreeMap<String, f64>>,
}

impl Report {
    pub fn new(kind: &str, input: BTreeMap<String, String>) -> Self {
        Report {
            schema: SCHEMA.into(),
            kind: kind.into(),
            input,
            enclosure: None,
            pair: None,
            homology: None,
            homological_index: None,
            torus: None,
            group: None,
            shift_equivalence: None,
            warnings: Vec::new(),
            timing_ms: None,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}

fn group_list(gs: &[Group]) -> String {
    if gs.is_empty() {
        return "0".into();
    }
    let parts: Vec<&str> = gs.iter().map(|g| g.text.as_str()).collect();
    format!("({})", parts.join(", "))
}

fn json_list(v: &[Value]) -> String {
    serde_json::to_string(v).expect("values serialize")
}

fn matrix_text(m: &MatrixText) -> String {
    if m.is_empty() {
        return "0x0".into();
    }
    let rows: Vec<String> = m.iter().map(|r| r.join(" ")).collect();
    format!("[{}]", rows.join("; "))
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        let _ = writeln!(s, "{}", self.kind);
        for (k, v) in &self.input {
            let _ = writeln!(s, "  {k}: {v}");
        }
        if let Some(e) = &self.enclosure {
            let _ = writeln!(s, "enclosure on {}: {} cells, max fiber {}", e.grid, e.cells, e.max_fiber);
            let hist: Vec<String> = e.fiber_histogram.iter().map(|(k, v)| format!("{k}:{v}")).collect();
            let _ = writeln!(s, "  fiber sizes {}", hist.join(" "));
            let _ = writeln!(s, "  escaping cells: {}", e.escaping.len());
            if let Some(o) = &e.output {
                let _ = writeln!(s, "  written to {o}");
            }
        }
        if let Some(p) = &self.pair {
            let _ = writeln!(s, "pair ({}): |N| = {}, |L| = {}", p.model, p.n_cells, p.l_cells);
        }
        if let Some(h) = &self.homology {
            let _ = writeln!(s, "H(N,L) = {}", group_list(h));
        }
        if let Some(m) = &self.homological_index {
            for (n, mat) in m.iter().enumerate() {
                let _ = writeln!(s, "map on H{n}: {}", matrix_text(mat));
            }
        }
        if let Some(t) = &self.torus {
            let _ = writeln!(s, "torus ({}): H = {}", t.mode, group_list(&t.unreduced));
            let _ = writeln!(s, "reduced torus: H = {}", group_list(&t.reduced));
            if let Some(fc) = &t.fiber_check {
                let verdict = if fc.passed { "passed" } else { "FAILED" };
                let _ = writeln!(s, "fiber acyclicity: {verdict}");
            }
        }
        if let Some(g) = &self.group {
            let _ = writeln!(s, "presentation: {}", g.presentation);
            let _ = writeln!(s, "simplified: {}", g.simplified);
            let _ = writeln!(s, "abelianization: {}", g.abelianization.text);
            let _ = writeln!(s, "subgroups up to index {}:", g.max_index);
            let _ = writeln!(s, "  indices {:?}", g.indices);
            let inv: Vec<String> = g.abelian_invariants.iter().map(|v| json_list(v)).collect();
            let _ = writeln!(s, "  invariants [{}]", inv.join(", "));
            if let Some(o) = g.order {
                let _ = writeln!(s, "order: {o}");
            }
        }
        if let Some(se) = &self.shift_equivalence {
            for d in &se.degrees {
                let v = if d.equivalent { "shift equivalent" } else { "not shift equivalent" };
                let _ = writeln!(
                    s,
                    "degree {}: {v} (invariant factors [{}] vs [{}])",
                    d.degree,
                    d.left.join(", "),
                    d.right.join(", ")
                );
            }
            let v = if se.equivalent { "shift equivalent" } else { "not shift equivalent" };
            let _ = writeln!(s, "over {}: {v}", se.field);
        }
        for w in &self.warnings {
            let _ = writeln!(s, "warning: {w}");
        }
        if let Some(t) = &self.timing_ms {
            for (k, v) in t {
                let _ = writeln!(s, "time {k}: {v:.1} ms");
            }
        }
        f.write_str(s.trim_end())
    }
}

/// One invariant compared between two reports.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantVerdict {
    pub invariant: String,
    pub distinguishable: bool,
    pub detail: String,
}

impl InvariantVerdict {
    pub fn wording(&self) -> &'static str {
        if self.distinguishable {
            "distinguishable"
        } else {
            "not distinguished"
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Comparison {
    pub schema: String,
    pub kind: String,
    pub left: String,
    pub right: String,
    pub invariants: Vec<InvariantVerdict>,
    pub verdict: String,
}

impl Comparison {
    pub fn distinguishable(&self) -> bool {
        self.invariants.iter().any(|v| v.distinguishable)
    }

    pub fn invariant(&self, name: &str) -> Option<&InvariantVerdict> {
        self.invariants.iter().find(|v| v.invariant == name)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("comparisons serialize")
    }
}

impl fmt::Display for Comparison {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "compare {} vs {}", self.left, self.right)?;
        for v in &self.invariants {
            writeln!(f, "  {}: {} ({})", v.invariant, v.wording(), v.detail)?;
        }
        write!(f, "verdict: {}", self.verdict)
    }
}
