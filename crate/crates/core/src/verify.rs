//! Exhaustive check of the constructions: for every admissible
//! `(genus, index)` in range, build the model and compare its index, its
//! splitting table from the edge-stabilizer rule, the promised splitting
//! pattern, and the blowup oracle.

use serde::Serialize;

use crate::action::validate;
use crate::arith::divisors;
use crate::blowup::oracle_splits;
use crate::constructions::{
    check_realizability, construct, RealizabilityMode, RealizabilityReport, ResidueField,
};
use crate::invariants::{
    case_classification, expected_case, index, main_theorem_prediction, splits, Case, ExtensionSpec,
};
use crate::model::{CurveModel, ModelDocument};

#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub genus_max: usize,
    /// Largest ramification index compared against the oracle.
    pub e_max: usize,
    pub residues: Vec<ResidueField>,
    /// Largest index tried in genus 1, where every index is admissible.
    /// Defaults to `2·genus_max + 2`.
    pub genus_one_cap: Option<usize>,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            genus_max: 12,
            e_max: 6,
            residues: vec![ResidueField::Infinite],
            genus_one_cap: None,
        }
    }
}

impl VerifyConfig {
    pub fn genus_one_cap(&self) -> usize {
        self.genus_one_cap.unwrap_or(2 * self.genus_max + 2)
    }

    /// All `(g, I)` cells, sorted.
    pub fn cells(&self) -> Vec<(usize, usize)> {
        let mut cells = Vec::new();
        for genus in 0..=self.genus_max {
            let indices = match genus {
                0 => vec![1, 2],
                1 => (1..=self.genus_one_cap()).collect(),
                _ => divisors(2 * genus - 2),
            };
            cells.extend(indices.into_iter().map(|i| (genus, i)));
        }
        cells
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ConstructionSummary {
    pub vertices: usize,
    pub edges: usize,
    pub euler_characteristic: i64,
    pub genus: Option<usize>,
    pub max_degree: usize,
    pub connected: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct CellComparison {
    pub d: usize,
    pub e: usize,
    pub classifier: bool,
    /// Present for `e ≤ 2`.
    pub prediction: Option<bool>,
    pub oracle: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct CellReport {
    pub genus: usize,
    pub index: usize,
    pub summary: Option<ConstructionSummary>,
    pub action_valid: bool,
    pub problems: Vec<String>,
    pub computed_index: Option<usize>,
    pub case: Option<Case>,
    pub expected_case: Case,
    pub table: Vec<CellComparison>,
    pub structure_ok: bool,
    pub index_ok: bool,
    pub prediction_ok: bool,
    pub oracle_ok: bool,
    pub realizability: Vec<RealizabilityReport>,
}

impl CellReport {
    pub fn passed(&self) -> bool {
        self.action_valid
            && self.structure_ok
            && self.index_ok
            && self.prediction_ok
            && self.oracle_ok
    }

    fn failed(genus: usize, index: usize, problem: String) -> Self {
        CellReport {
            genus,
            index,
            summary: None,
            action_valid: false,
            problems: vec![problem],
            computed_index: None,
            case: None,
            expected_case: expected_case(genus, index),
            table: Vec::new(),
            structure_ok: false,
            index_ok: false,
            prediction_ok: false,
            oracle_ok: false,
            realizability: Vec::new(),
        }
    }

    pub fn to_line(&self) -> String {
        let verdict = if self.passed() { "PASS" } else { "FAIL" };
        let shape = self
            .summary
            .as_ref()
            .map(|s| {
                format!(
                    "V={:<3} E={:<3} chi={:<4} maxdeg={}",
                    s.vertices, s.edges, s.euler_characteristic, s.max_degree
                )
            })
            .unwrap_or_else(|| "-".into());
        let case = self
            .case
            .map(|c| c.to_string())
            .unwrap_or_else(|| "-".into());
        let mut line = format!(
            "{verdict} g={:<2} I={:<3} {shape}  index={}  {case}",
            self.genus,
            self.index,
            self.computed_index
                .map(|i| i.to_string())
                .unwrap_or_else(|| "-".into()),
        );
        for p in &self.problems {
            line.push_str("\n      ");
            line.push_str(p);
        }
        line
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub cells: Vec<CellReport>,
    pub passed: bool,
}

impl VerificationReport {
    pub fn to_text(&self) -> String {
        let mut out: String = self.cells.iter().map(|c| c.to_line() + "\n").collect();
        let failures = self.cells.iter().filter(|c| !c.passed()).count();
        out.push_str(&format!(
            "{} cells, {} failed: {}\n",
            self.cells.len(),
            failures,
            if self.passed {
                "VERIFIED"
            } else {
                "DISAGREEMENT"
            }
        ));
        out
    }
}

/// Checks a model document against the claim that it realizes
/// `(genus, index)`. Invalid actions are reported, not raised.
pub fn verify_document(
    doc: ModelDocument,
    genus: usize,
    index: usize,
    cfg: &VerifyConfig,
) -> CellReport {
    let report = validate(&doc.graph, &doc.action);
    if !report.is_valid() {
        return CellReport::failed(genus, index, format!("action: {report}"));
    }
    match doc.into_model() {
        Ok(m) => verify_model(&m, genus, index, cfg),
        Err(err) => CellReport::failed(genus, index, err.to_string()),
    }
}

pub fn verify_model(
    m: &CurveModel,
    genus: usize,
    claimed_index: usize,
    cfg: &VerifyConfig,
) -> CellReport {
    let g = m.graph();
    let mut problems = Vec::new();
    let summary = ConstructionSummary {
        vertices: g.vertex_count(),
        edges: g.edge_count(),
        euler_characteristic: g.euler_characteristic(),
        genus: g.arithmetic_genus().ok(),
        max_degree: g.max_degree(),
        connected: g.is_connected(),
    };
    let mut structure_ok = true;
    if !summary.connected {
        structure_ok = false;
        problems.push("graph is disconnected".into());
    }
    if summary.max_degree > 3 {
        structure_ok = false;
        problems.push(format!("max degree {} exceeds 3", summary.max_degree));
    }
    if summary.genus != Some(genus) {
        structure_ok = false;
        problems.push(format!(
            "arithmetic genus {:?}, expected {genus}",
            summary.genus
        ));
    }
    if m.order() != claimed_index {
        structure_ok = false;
        problems.push(format!(
            "group order {} differs from claimed index {claimed_index}",
            m.order()
        ));
    }

    let computed_index = index(m);
    let index_ok = computed_index == claimed_index;
    if !index_ok {
        problems.push(format!("index {computed_index}, expected {claimed_index}"));
    }

    let expected = expected_case(genus, claimed_index);
    let mut table = Vec::new();
    let mut prediction_ok = true;
    let mut oracle_ok = true;
    for d in divisors(m.order()) {
        for e in 1..=cfg.e_max.max(2) {
            let x = ExtensionSpec::new(d, e);
            let classifier = splits(m, x).expect("divisor of the order");
            let oracle = oracle_splits(m, x).expect("divisor of the order");
            let prediction = (e <= 2 && structure_ok)
                .then(|| main_theorem_prediction(genus, claimed_index, x, expected).ok())
                .flatten();
            if e <= 2 && prediction != Some(classifier) {
                prediction_ok = false;
                problems.push(format!(
                    "(d={d}, e={e}): classifier says {classifier}, predicted {prediction:?}"
                ));
            }
            if e <= cfg.e_max && oracle != classifier {
                oracle_ok = false;
                problems.push(format!(
                    "(d={d}, e={e}): classifier says {classifier}, oracle says {oracle}"
                ));
            }
            table.push(CellComparison {
                d,
                e,
                classifier,
                prediction,
                oracle,
            });
        }
    }

    let mode = if claimed_index == 1 {
        RealizabilityMode::Weak
    } else {
        RealizabilityMode::Full
    };
    let realizability = cfg
        .residues
        .iter()
        .map(|&q| check_realizability(m, q, mode))
        .collect();

    CellReport {
        genus,
        index: claimed_index,
        summary: Some(summary),
        action_valid: true,
        problems,
        computed_index: Some(computed_index),
        case: Some(case_classification(m)),
        expected_case: expected,
        table,
        structure_ok,
        index_ok,
        prediction_ok,
        oracle_ok,
        realizability,
    }
}

pub fn verify_all(cfg: &VerifyConfig) -> VerificationReport {
    let cells: Vec<CellReport> = cfg
        .cells()
        .into_iter()
        .map(|(genus, i)| match construct(genus, i) {
            Ok(m) => verify_model(&m, genus, i, cfg),
            Err(err) => CellReport::failed(genus, i, err.to_string()),
        })
        .collect();
    let passed = cells.iter().all(CellReport::passed);
    VerificationReport { cells, passed }
}
