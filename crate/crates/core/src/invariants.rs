//! Index, splitting fields and the m-invariant, read off the dual graph.
//!
//! A finite extension `L/K` is abstracted to an [`ExtensionSpec`] `(d, e)`:
//! its residue field meets the degree-`I` unramified extension in degree `d`,
//! so the absolute Galois group of the residue field acts through `H_d`, and
//! `e` is its ramification index. `L` splits the curve exactly when `H_d`
//! fixes a component, or `e` is even and `H_d` stabilizes a node (an edge),
//! in which case the middle component of the blown-up chain is rational.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::action::{ActionError, Subgroup};
use crate::arith::{divisors, gcd, gcd_all};
use crate::model::CurveModel;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InvariantError {
    #[error(transparent)]
    Action(#[from] ActionError),
    #[error("ramification index must be at least 1")]
    ZeroRamification,
    #[error("case 2 requires an even index, got {0}")]
    OddIndexInCase2(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ExtensionSpec {
    /// Degree of the residue extension's intersection with `k_I`.
    pub d: usize,
    /// Ramification index.
    pub e: usize,
}

impl ExtensionSpec {
    pub fn new(d: usize, e: usize) -> Self {
        ExtensionSpec { d, e }
    }

    pub(crate) fn check(&self, order: usize) -> Result<Subgroup, InvariantError> {
        if self.e == 0 {
            return Err(InvariantError::ZeroRamification);
        }
        if self.d == 0 || !order.is_multiple_of(self.d) {
            return Err(ActionError::NotADivisor { d: self.d, order }.into());
        }
        Ok(Subgroup::with_index(self.d))
    }
}

/// Case 1: ramification never helps. Case 2: some residue extension splits
/// the curve only after an even ramified base change.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Case {
    Case1,
    Case2,
}

impl std::fmt::Display for Case {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Case::Case1 => f.write_str("Case 1"),
            Case::Case2 => f.write_str("Case 2"),
        }
    }
}

/// gcd over components of orbit size × nonsingular index.
pub fn index(m: &CurveModel) -> usize {
    weighted_orbit_gcd(m, |c| c.ns_index)
}

/// gcd over components of orbit size × multiplicity × nonsingular index.
/// Conjectural for non-reduced fibers; equals [`index`] when every
/// multiplicity is 1.
pub fn snc_index(m: &CurveModel) -> usize {
    weighted_orbit_gcd(m, |c| c.multiplicity * c.ns_index)
}

fn weighted_orbit_gcd(
    m: &CurveModel,
    weight: impl Fn(crate::model::ComponentData) -> usize,
) -> usize {
    let sizes = m
        .resolved()
        .orbit_sizes(Subgroup::full())
        .expect("full group always divides");
    let terms = m
        .graph()
        .vertices()
        .iter()
        .zip(sizes)
        .map(|(v, size)| size * weight(m.component(&v.id)));
    gcd_all(terms).expect("models are nonempty")
}

/// Whether an extension with data `x` acquires a smooth rational point.
/// Assumes the rational-point hypothesis on components holds.
pub fn splits(m: &CurveModel, x: ExtensionSpec) -> Result<bool, InvariantError> {
    let h = x.check(m.order())?;
    let r = m.resolved();
    if !r.fixed_vertices(h)?.is_empty() {
        return Ok(true);
    }
    Ok(x.e.is_multiple_of(2) && !r.stabilized_edges(m.graph(), h)?.is_empty())
}

pub fn case_classification(m: &CurveModel) -> Case {
    let r = m.resolved();
    let rescued = divisors(m.order()).into_iter().any(|d| {
        let h = Subgroup::with_index(d);
        r.fixed_vertices(h).expect("divisor").is_empty()
            && !r
                .stabilized_edges(m.graph(), h)
                .expect("divisor")
                .is_empty()
    });
    if rescued {
        Case::Case2
    } else {
        Case::Case1
    }
}

/// Splitting behaviour promised for the curve built for `(genus, index)`:
/// only `d = I` in Case 1; additionally `d = I/2` with even `e` in Case 2.
/// The verdict depends on the genus only through the case; callers are
/// expected to pass an admissible pair.
pub fn main_theorem_prediction(
    _genus: usize,
    index: usize,
    x: ExtensionSpec,
    case: Case,
) -> Result<bool, InvariantError> {
    x.check(index)?;
    match case {
        Case::Case1 => Ok(x.d == index),
        Case::Case2 => {
            if !index.is_multiple_of(2) {
                return Err(InvariantError::OddIndexInCase2(index));
            }
            Ok(x.d == index || (2 * x.d == index && x.e.is_multiple_of(2)))
        }
    }
}

/// The case the construction for `(genus, index)` is expected to land in.
pub fn expected_case(genus: usize, index: usize) -> Case {
    if index % 2 == 1 || genus == 1 {
        Case::Case1
    } else {
        Case::Case2
    }
}

/// Least `f·e` over residue degrees `f` and ramification `e` that split the
/// curve, for a finite residue field (where a degree-`f` residue extension
/// meets `k_I` in degree `gcd(f, I)`).
pub fn m_invariant(m: &CurveModel) -> usize {
    let order = m.order();
    let mut best = usize::MAX;
    for f in 1..=order {
        for e in [1, 2] {
            let x = ExtensionSpec::new(gcd(f, order), e);
            if f * e < best && splits(m, x).expect("gcd divides the order") {
                best = f * e;
            }
        }
    }
    best
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitCell {
    pub d: usize,
    pub e: usize,
    pub splits: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplittingReport {
    pub order: usize,
    pub index: usize,
    pub case: Case,
    /// One cell per divisor `d` of the order and `e ∈ {1, 2}`.
    pub table: Vec<SplitCell>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m_invariant: Option<usize>,
}

impl SplittingReport {
    /// Verdict for any `(d, e)`; only the parity of `e` matters.
    pub fn lookup(&self, d: usize, e: usize) -> Option<bool> {
        let parity = if e.is_multiple_of(2) { 2 } else { 1 };
        self.table
            .iter()
            .find(|c| c.d == d && c.e == parity)
            .map(|c| c.splits)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("order {}  index {}  {}", self.order, self.index, self.case);
        if let Some(m) = self.m_invariant {
            out.push_str(&format!("  m-invariant {m}"));
        }
        out.push('\n');
        out.push_str(&format!("{:>6}  {:>9}  {:>9}\n", "d", "e odd", "e even"));
        for d in divisors(self.order) {
            let cell = |e| match self.lookup(d, e) {
                Some(true) => "yes",
                Some(false) => "no",
                None => "?",
            };
            out.push_str(&format!("{:>6}  {:>9}  {:>9}\n", d, cell(1), cell(2)));
        }
        out
    }
}

/// `with_m_invariant` should only be set for finite residue fields.
pub fn splitting_report(m: &CurveModel, with_m_invariant: bool) -> SplittingReport {
    let table = divisors(m.order())
        .into_iter()
        .flat_map(|d| [1, 2].map(|e| (d, e)))
        .map(|(d, e)| SplitCell {
            d,
            e,
            splits: splits(m, ExtensionSpec::new(d, e)).expect("divisor"),
        })
        .collect();
    SplittingReport {
        order: m.order(),
        index: index(m),
        case: case_classification(m),
        table,
        m_invariant: with_m_invariant.then(|| m_invariant(m)),
    }
}
