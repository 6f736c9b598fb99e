//! Graph-with-action families realizing every admissible `(genus, index)`:
//! Cayley graphs of `Z/I`, cycles, Möbius ladders and coathanger chains, plus
//! the realizability checks a graph must pass before it can be the dual graph
//! of a totally degenerate curve over a given residue field.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::action::{CyclicAction, Subgroup};
use crate::arith::{gcd, is_admissible};
use crate::model::{Claimed, CurveModel, ModelError};
use crate::multigraph::{EdgeId, MultiGraph, VertexId};

#[derive(Debug, Error)]
pub enum ConstructionError {
    #[error("index {index} does not divide 2g-2 = {canonical} for genus {genus}")]
    Inadmissible {
        genus: usize,
        index: usize,
        canonical: i64,
    },
    #[error("generating set contains the identity")]
    ContainsIdentity,
    #[error("generating set is not closed under inverses: {0} is present but -{0} is not")]
    NotSymmetric(usize),
    #[error("generating set does not generate Z/{0}")]
    DoesNotGenerate(usize),
    #[error("group order must be positive")]
    ZeroOrder,
    #[error("{family} needs {what}, got {got}")]
    OutOfRange {
        family: &'static str,
        what: &'static str,
        got: usize,
    },
    #[error(transparent)]
    Model(#[from] ModelError),
}

/// A symmetric generating set of `Z/I` avoiding 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratingSet {
    order: usize,
    elements: BTreeSet<usize>,
}

impl GeneratingSet {
    /// Elements are reduced mod `order`.
    pub fn new(
        order: usize,
        elements: impl IntoIterator<Item = usize>,
    ) -> Result<Self, ConstructionError> {
        if order == 0 {
            return Err(ConstructionError::ZeroOrder);
        }
        let elements: BTreeSet<usize> = elements.into_iter().map(|s| s % order).collect();
        if elements.contains(&0) {
            return Err(ConstructionError::ContainsIdentity);
        }
        if let Some(&s) = elements.iter().find(|&&s| !elements.contains(&(order - s))) {
            return Err(ConstructionError::NotSymmetric(s));
        }
        if elements.iter().fold(order, |acc, &s| gcd(acc, s)) != 1 {
            return Err(ConstructionError::DoesNotGenerate(order));
        }
        Ok(GeneratingSet { order, elements })
    }

    /// Uniformly chosen symmetric subset of `Z/I` for a uniform `I ≤ max_order`,
    /// redrawn until it generates.
    pub fn random<R: Rng + ?Sized>(rng: &mut R, max_order: usize) -> Self {
        let order = rng.gen_range(1..=max_order);
        loop {
            let mut elements = BTreeSet::new();
            for s in 1..=order / 2 {
                if rng.gen_bool(0.5) {
                    elements.insert(s);
                    elements.insert(order - s);
                }
            }
            if let Ok(gs) = GeneratingSet::new(order, elements) {
                return gs;
            }
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn elements(&self) -> &BTreeSet<usize> {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Whether some element is an involution, i.e. `I` is even and `I/2 ∈ S`.
    pub fn has_involution(&self) -> bool {
        self.order.is_multiple_of(2) && self.elements.contains(&(self.order / 2))
    }
}

fn vid(i: usize) -> VertexId {
    VertexId(i.to_string())
}

fn rotation(n: usize) -> BTreeMap<VertexId, VertexId> {
    (0..n).map(|i| (vid(i), vid((i + 1) % n))).collect()
}

/// Cayley graph of `Z/I` with respect to `S`: vertices `0..I`, one edge per
/// unordered pair `{x, x+s}`, and the generator acting by `x ↦ x+1`.
///
/// Edge `s<s>:<x>` runs from `x` to `x+s` for each representative
/// `s < I/2`; an involution `s = I/2` contributes the `I/2` edges
/// `s<s>:<x>` with `x < I/2`, the last of which the rotation carries onto
/// the first with its ends swapped.
pub fn cayley_graph(gs: &GeneratingSet) -> (MultiGraph, CyclicAction) {
    let n = gs.order;
    let mut edges = Vec::new();
    let mut edge_map = BTreeMap::new();
    let name = |s: usize, x: usize| EdgeId(format!("s{s}:{x}"));
    for &s in gs.elements.iter().filter(|&&s| 2 * s <= n) {
        let count = if 2 * s == n { s } else { n };
        for x in 0..count {
            edges.push((name(s, x), vid(x), vid((x + s) % n)));
            edge_map.insert(name(s, x), name(s, (x + 1) % count));
        }
    }
    let graph = MultiGraph::new((0..n).map(vid), edges).expect("well-formed Cayley graph");
    let action = CyclicAction {
        order: n,
        vertex_map: rotation(n),
        edge_map,
    };
    (graph, action)
}

/// The Möbius ladder of genus `g ≥ 2`: a `(2g−2)`-cycle with its antipodal
/// pairs joined by rungs, rotated by one step.
///
/// Cycle edge `c<i>` runs `i → i+1`; rung `r<i>` runs `i → i+g−1` for
/// `0 ≤ i ≤ g−2`. Rotation sends `c<i>` to `c<i+1>` and `r<i>` to `r<i+1>`,
/// except that `r<g−2>` lands on `r<0>` reversed. At `g = 2` this is two
/// vertices joined by three parallel edges.
pub fn mobius_ladder(genus: usize) -> Result<(MultiGraph, CyclicAction), ConstructionError> {
    if genus < 2 {
        return Err(ConstructionError::OutOfRange {
            family: "mobius_ladder",
            what: "genus >= 2",
            got: genus,
        });
    }
    let n = 2 * genus - 2;
    let rungs = genus - 1;
    let mut edges = Vec::with_capacity(3 * genus - 3);
    let mut edge_map = BTreeMap::new();
    let c = |i: usize| EdgeId(format!("c{i}"));
    let r = |i: usize| EdgeId(format!("r{i}"));
    for i in 0..n {
        edges.push((c(i), vid(i), vid((i + 1) % n)));
        edge_map.insert(c(i), c((i + 1) % n));
    }
    for i in 0..rungs {
        edges.push((r(i), vid(i), vid(i + rungs)));
        edge_map.insert(r(i), r((i + 1) % rungs));
    }
    let graph = MultiGraph::new((0..n).map(vid), edges).expect("well-formed ladder");
    Ok((
        graph,
        CyclicAction {
            order: n,
            vertex_map: rotation(n),
            edge_map,
        },
    ))
}

/// The `I`-cycle rotated by one step; for `I = 2` two vertices joined by two
/// parallel edges, both vertices and both edges exchanged.
pub fn cycle_model(order: usize) -> Result<(MultiGraph, CyclicAction), ConstructionError> {
    if order < 2 {
        return Err(ConstructionError::OutOfRange {
            family: "cycle_model",
            what: "index >= 2",
            got: order,
        });
    }
    let c = |i: usize| EdgeId(format!("c{i}"));
    let graph = MultiGraph::new(
        (0..order).map(vid),
        (0..order).map(|i| (c(i), vid(i), vid((i + 1) % order))),
    )
    .expect("well-formed cycle");
    let edge_map = (0..order).map(|i| (c(i), c((i + 1) % order))).collect();
    Ok((
        graph,
        CyclicAction {
            order,
            vertex_map: rotation(order),
            edge_map,
        },
    ))
}

/// `g` coathangers (`0–1, 0–2, 0–3, 2–3`) chained through their pendant
/// vertices `1`, with the trivial action. `g = 0` is a single vertex.
///
/// Vertices are `h<i>.<j>`, coathanger edges `h<i>.a..d`, bridges `b<i>`.
pub fn coathanger_chain(genus: usize) -> (MultiGraph, CyclicAction) {
    if genus == 0 {
        let g = MultiGraph::new(["0"], []).expect("single vertex");
        let a = CyclicAction::trivial(&g);
        return (g, a);
    }
    let v = |i: usize, j: usize| VertexId(format!("h{i}.{j}"));
    let mut vertices = Vec::with_capacity(4 * genus);
    let mut edges = Vec::with_capacity(5 * genus - 1);
    for i in 0..genus {
        vertices.extend((0..4).map(|j| v(i, j)));
        for (label, a, b) in [("a", 0, 1), ("b", 0, 2), ("c", 0, 3), ("d", 2, 3)] {
            edges.push((EdgeId(format!("h{i}.{label}")), v(i, a), v(i, b)));
        }
        if i > 0 {
            edges.push((EdgeId(format!("b{}", i - 1)), v(i - 1, 1), v(i, 1)));
        }
    }
    let g = MultiGraph::new(vertices, edges).expect("well-formed chain");
    let a = CyclicAction::trivial(&g);
    (g, a)
}

/// A model realizing genus `genus` and index `index`, for `index | 2g−2`.
pub fn construct(genus: usize, index: usize) -> Result<CurveModel, ConstructionError> {
    if !is_admissible(genus, index) {
        return Err(ConstructionError::Inadmissible {
            genus,
            index,
            canonical: 2 * genus as i64 - 2,
        });
    }
    let (graph, action) = match (genus, index) {
        (_, 1) => coathanger_chain(genus),
        (0, 2) => cayley_graph(&GeneratingSet::new(2, [1])?),
        (1, _) => cycle_model(index)?,
        _ => {
            let (graph, full) = mobius_ladder(genus)?;
            let step = (2 * genus - 2) / index;
            let action = full.restrict(step).expect("index divides 2g-2");
            (graph, action)
        }
    };
    let claimed = Claimed { genus, index };
    Ok(CurveModel::with_unit_components(
        graph,
        action,
        Some(claimed),
    )?)
}

/// Cardinality of the residue field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ResidueField {
    Finite(u64),
    Infinite,
}

impl FromStr for ResidueField {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "inf" | "infinite" | "∞" => Ok(ResidueField::Infinite),
            t => match t.parse::<u64>() {
                Ok(q) if q >= 2 => Ok(ResidueField::Finite(q)),
                _ => Err(format!("expected a field size >= 2 or `inf`, got `{s}`")),
            },
        }
    }
}

impl fmt::Display for ResidueField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ResidueField::Finite(q) => write!(f, "{q}"),
            ResidueField::Infinite => f.write_str("inf"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum RealizabilityMode {
    /// Every component defined over `l` has fewer nodes than `#l` allows.
    Full,
    /// Only some component defined over `k` needs a spare `k`-point.
    Weak,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RealizabilityReport {
    pub residue: ResidueField,
    pub mode: RealizabilityMode,
    pub connected: bool,
    pub max_degree: usize,
    /// Every vertex has degree at most 3.
    pub degree_bound: bool,
    pub hypothesis_a: bool,
    /// Vertices breaking the node-count bound (full mode only).
    pub failing_vertices: Vec<VertexId>,
}

impl RealizabilityReport {
    pub fn passed(&self) -> bool {
        self.connected && self.degree_bound && self.hypothesis_a
    }
}

/// Checks that `m` can be the dual graph of a totally degenerate curve over a
/// residue field of the given size with the rational-point hypothesis holding.
///
/// In full mode a vertex whose orbit has size `d` (so the component is
/// defined over the degree-`d` extension) may carry at most `q^d` nodes. In
/// weak mode it is enough that some vertex fixed by the whole group has at
/// most `q` nodes. An infinite residue field always passes.
pub fn check_realizability(
    m: &CurveModel,
    residue: ResidueField,
    mode: RealizabilityMode,
) -> RealizabilityReport {
    let g = m.graph();
    let degrees = g.degrees();
    let max_degree = degrees.iter().copied().max().unwrap_or(0);
    let mut failing_vertices = Vec::new();
    let hypothesis_a = match residue {
        ResidueField::Infinite => true,
        ResidueField::Finite(q) => {
            let orbit = m
                .resolved()
                .orbit_sizes(Subgroup::full())
                .expect("full group always divides");
            match mode {
                RealizabilityMode::Full => {
                    for (i, v) in g.vertices().iter().enumerate() {
                        let points = q.checked_pow(orbit[i] as u32).unwrap_or(u64::MAX);
                        if degrees[i] as u64 > points {
                            failing_vertices.push(v.id.clone());
                        }
                    }
                    failing_vertices.is_empty()
                }
                RealizabilityMode::Weak => {
                    (0..degrees.len()).any(|i| orbit[i] == 1 && degrees[i] as u64 <= q)
                }
            }
        }
    };
    RealizabilityReport {
        residue,
        mode,
        connected: g.is_connected(),
        max_degree,
        degree_bound: max_degree <= 3,
        hypothesis_a,
        failing_vertices,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::{stabilized_edges, validate, vertex_orbit_sizes};
    use crate::multigraph::are_isomorphic;

    fn complete(n: usize) -> MultiGraph {
        let mut pairs = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                pairs.push((a, b));
            }
        }
        MultiGraph::from_index_pairs(n, &pairs).unwrap()
    }

    fn k33() -> MultiGraph {
        let pairs: Vec<_> = (0..3).flat_map(|a| (3..6).map(move |b| (a, b))).collect();
        MultiGraph::from_index_pairs(6, &pairs).unwrap()
    }

    #[test]
    fn generating_set_laws() {
        assert!(GeneratingSet::new(6, [1, 5]).is_ok());
        assert!(matches!(
            GeneratingSet::new(6, [0, 1, 5]),
            Err(ConstructionError::ContainsIdentity)
        ));
        assert!(matches!(
            GeneratingSet::new(6, [1]),
            Err(ConstructionError::NotSymmetric(1))
        ));
        assert!(matches!(
            GeneratingSet::new(6, [2, 4]),
            Err(ConstructionError::DoesNotGenerate(6))
        ));
        assert!(GeneratingSet::new(6, [2, 4, 3]).is_ok());
        assert!(GeneratingSet::new(1, []).is_ok());
    }

    #[test]
    fn cayley_examples() {
        let (g, a) = cayley_graph(&GeneratingSet::new(6, [1, 5]).unwrap());
        assert!(validate(&g, &a).is_valid());
        assert_eq!(g.euler_characteristic(), 0);
        assert!(are_isomorphic(&g, &cycle_model(6).unwrap().0));

        let (g, a) = cayley_graph(&GeneratingSet::new(2, [1]).unwrap());
        assert!(validate(&g, &a).is_valid());
        assert_eq!((g.vertex_count(), g.edge_count()), (2, 1));

        let (g, a) = cayley_graph(&GeneratingSet::new(8, [1, 7, 4]).unwrap());
        assert!(validate(&g, &a).is_valid());
        assert_eq!((g.vertex_count(), g.edge_count()), (8, 12));
        assert_eq!(g.euler_characteristic(), -4);
    }

    #[test]
    fn ladder_examples() {
        let (g4, a4) = mobius_ladder(4).unwrap();
        assert!(validate(&g4, &a4).is_valid());
        assert!(are_isomorphic(&g4, &k33()));

        let (g2, a2) = mobius_ladder(2).unwrap();
        assert!(validate(&g2, &a2).is_valid());
        assert_eq!((g2.vertex_count(), g2.edge_count()), (2, 3));
        assert!(g2.edges().iter().all(|e| !e.is_loop()));

        let (g5, _) = mobius_ladder(5).unwrap();
        let (cay, _) = cayley_graph(&GeneratingSet::new(8, [1, 7, 4]).unwrap());
        assert!(are_isomorphic(&g5, &cay));

        let (g3, _) = mobius_ladder(3).unwrap();
        assert!(are_isomorphic(&g3, &complete(4)));

        assert!(mobius_ladder(1).is_err());
    }

    #[test]
    fn ladder_rungs_flip_under_antipode() {
        for genus in 2..8 {
            let (g, a) = mobius_ladder(genus).unwrap();
            let antipode = Subgroup::with_index(genus - 1);
            let stab = stabilized_edges(&g, &a, antipode).unwrap();
            let rungs: Vec<_> = stab.iter().filter(|s| s.edge.0.starts_with('r')).collect();
            assert_eq!(rungs.len(), genus - 1);
            assert!(rungs.iter().all(|s| s.flipped));
        }
    }

    #[test]
    fn ladder_g4_antipodal_orbits_have_size_two() {
        let (g, a) = mobius_ladder(4).unwrap();
        let sizes = vertex_orbit_sizes(&g, &a, Subgroup::with_index(3)).unwrap();
        assert!(sizes.values().all(|&s| s == 2));
    }

    #[test]
    fn cycle_examples() {
        let (g, a) = cycle_model(5).unwrap();
        assert!(validate(&g, &a).is_valid());
        assert_eq!(g.euler_characteristic(), 0);
        let (g, a) = cycle_model(2).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (2, 2));
        assert_eq!(a.edge_map[&EdgeId::from("c0")], EdgeId::from("c1"));
        assert!(stabilized_edges(&g, &a, Subgroup::full())
            .unwrap()
            .is_empty());
        assert!(cycle_model(1).is_err());
    }

    #[test]
    fn coathanger_examples() {
        let (g, _) = coathanger_chain(0);
        assert_eq!((g.vertex_count(), g.edge_count()), (1, 0));
        let (g, _) = coathanger_chain(1);
        assert_eq!((g.vertex_count(), g.edge_count()), (4, 4));
        assert_eq!(g.euler_characteristic(), 0);
        let (g, a) = coathanger_chain(3);
        assert!(validate(&g, &a).is_valid());
        assert_eq!((g.vertex_count(), g.edge_count()), (12, 14));
        assert_eq!(g.euler_characteristic(), -2);
        assert_eq!(g.max_degree(), 3);
        assert_eq!(g.degree(&"h0.1".into()).unwrap(), 2);
        assert_eq!(g.degree(&"h1.1".into()).unwrap(), 3);
    }

    #[test]
    fn construct_dispatch() {
        let m = construct(7, 3).unwrap();
        assert_eq!(m.graph().vertex_count(), 12);
        assert_eq!(m.order(), 3);
        assert_eq!(
            m.action().vertex_map[&VertexId::from("0")],
            VertexId::from("4")
        );

        let m = construct(0, 1).unwrap();
        assert_eq!(m.graph().vertex_count(), 1);

        let m = construct(3, 4).unwrap();
        assert!(are_isomorphic(m.graph(), &complete(4)));
        assert_eq!(m.order(), 4);

        let m = construct(1, 2).unwrap();
        assert_eq!(m.graph().edge_count(), 2);

        assert!(matches!(
            construct(2, 3),
            Err(ConstructionError::Inadmissible { canonical: 2, .. })
        ));
        assert!(construct(0, 3).is_err());
        assert!(construct(4, 0).is_err());
    }

    #[test]
    fn realizability_examples() {
        let m = construct(5, 8).unwrap();
        let r = check_realizability(&m, ResidueField::Infinite, RealizabilityMode::Full);
        assert!(r.passed());

        let (g, a) = coathanger_chain(3);
        let m = CurveModel::with_unit_components(g, a, None).unwrap();
        let weak = check_realizability(&m, ResidueField::Finite(2), RealizabilityMode::Weak);
        assert!(weak.passed());
        let full = check_realizability(&m, ResidueField::Finite(2), RealizabilityMode::Full);
        assert!(!full.passed());
        let hubs: Vec<_> = full.failing_vertices.iter().map(|v| v.0.as_str()).collect();
        assert_eq!(hubs, vec!["h0.0", "h1.0", "h1.1", "h2.0"]);
    }

    #[test]
    fn residue_field_parsing() {
        assert_eq!("inf".parse::<ResidueField>(), Ok(ResidueField::Infinite));
        assert_eq!("4".parse::<ResidueField>(), Ok(ResidueField::Finite(4)));
        assert!("1".parse::<ResidueField>().is_err());
        assert!("x".parse::<ResidueField>().is_err());
    }
}
