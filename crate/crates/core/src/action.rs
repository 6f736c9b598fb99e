//! Actions of a cyclic group `Z/I = ⟨σ⟩` on a multigraph.
//!
//! An action is given by the image of the generator on vertices and on edges.
//! Edge images are recorded separately because the vertex map does not pin
//! down where parallel edges go.
//!
//! Subgroups of `Z/I` are named by their index `d`: `H_d = ⟨σ^d⟩` has order
//! `I/d`, so `H_1` is the whole group and `H_I` is trivial. A residue field
//! extension meeting the degree-`I` cyclic extension in degree `d` acts on the
//! dual graph through `H_d`.

use std::collections::{BTreeMap, BTreeSet};

use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::multigraph::{EdgeId, GraphError, MultiGraph, VertexId};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CyclicAction {
    pub order: usize,
    pub vertex_map: BTreeMap<VertexId, VertexId>,
    pub edge_map: BTreeMap<EdgeId, EdgeId>,
}

impl CyclicAction {
    /// The trivial action of the group of order 1.
    pub fn trivial(g: &MultiGraph) -> Self {
        CyclicAction {
            order: 1,
            vertex_map: g
                .vertices()
                .iter()
                .map(|v| (v.id.clone(), v.id.clone()))
                .collect(),
            edge_map: g
                .edges()
                .iter()
                .map(|e| (e.id.clone(), e.id.clone()))
                .collect(),
        }
    }

    /// The action of `Z/(I/k)` obtained by pulling back along `σ ↦ σ^k`.
    /// Requires `k | I`. Maps must be total on their own keys.
    pub fn restrict(&self, k: usize) -> Result<CyclicAction, ActionError> {
        if k == 0 || !self.order.is_multiple_of(k) {
            return Err(ActionError::NotADivisor {
                d: k,
                order: self.order,
            });
        }
        let vertex_map = self
            .vertex_map
            .keys()
            .map(|v| Ok((v.clone(), iterate(&self.vertex_map, v, k)?)))
            .collect::<Result<_, ActionError>>()?;
        let edge_map = self
            .edge_map
            .keys()
            .map(|e| Ok((e.clone(), iterate(&self.edge_map, e, k)?)))
            .collect::<Result<_, ActionError>>()?;
        Ok(CyclicAction {
            order: self.order / k,
            vertex_map,
            edge_map,
        })
    }
}

fn iterate<K: Ord + Clone + std::fmt::Display>(
    map: &BTreeMap<K, K>,
    start: &K,
    times: usize,
) -> Result<K, ActionError> {
    let mut x = start.clone();
    for _ in 0..times {
        x = map
            .get(&x)
            .cloned()
            .ok_or_else(|| ActionError::PartialMap(x.to_string()))?;
    }
    Ok(x)
}

/// The subgroup `H_d = ⟨σ^d⟩` of index `d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Subgroup {
    d: usize,
}

impl Subgroup {
    pub fn with_index(d: usize) -> Self {
        Subgroup { d }
    }

    pub fn full() -> Self {
        Subgroup { d: 1 }
    }

    pub fn trivial(order: usize) -> Self {
        Subgroup { d: order }
    }

    pub fn index(&self) -> usize {
        self.d
    }

    fn check(&self, order: usize) -> Result<(), ActionError> {
        if self.d == 0 || !order.is_multiple_of(self.d) {
            Err(ActionError::NotADivisor { d: self.d, order })
        } else {
            Ok(())
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ActionError {
    #[error("{d} does not divide the group order {order}")]
    NotADivisor { d: usize, order: usize },
    #[error("group order must be positive")]
    ZeroOrder,
    #[error("map is not defined at `{0}`")]
    PartialMap(String),
    #[error("invalid action: {0}")]
    Invalid(ValidationReport),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// One failed law of a cyclic action.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "law", rename_all = "snake_case")]
pub enum Violation {
    ZeroOrder,
    VertexNotMapped {
        vertex: VertexId,
    },
    VertexImageUnknown {
        vertex: VertexId,
        image: VertexId,
    },
    VertexKeyUnknown {
        vertex: VertexId,
    },
    VertexImageRepeated {
        image: VertexId,
    },
    EdgeNotMapped {
        edge: EdgeId,
    },
    EdgeImageUnknown {
        edge: EdgeId,
        image: EdgeId,
    },
    EdgeKeyUnknown {
        edge: EdgeId,
    },
    EdgeImageRepeated {
        image: EdgeId,
    },
    /// The image edge does not join the images of the endpoints.
    Incompatible {
        edge: EdgeId,
        image: EdgeId,
        expected: [VertexId; 2],
        found: [VertexId; 2],
    },
    VertexOrder {
        vertex: VertexId,
        order: usize,
    },
    EdgeOrder {
        edge: EdgeId,
        order: usize,
    },
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl std::fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_valid() {
            return f.write_str("valid");
        }
        let parts: Vec<String> = self
            .violations
            .iter()
            .map(|v| serde_json::to_string(v).unwrap_or_else(|_| format!("{v:?}")))
            .collect();
        write!(f, "{} violation(s): {}", parts.len(), parts.join("; "))
    }
}

/// Resolves a map over identifiers into a total function on positions,
/// recording every way it fails to be a bijection.
#[allow(clippy::too_many_arguments)]
fn resolve_map<K: Clone + Ord>(
    keys: impl Iterator<Item = K>,
    map: &BTreeMap<K, K>,
    position: impl Fn(&K) -> Option<usize>,
    size: usize,
    violations: &mut Vec<Violation>,
    not_mapped: impl Fn(K) -> Violation,
    unknown_image: impl Fn(K, K) -> Violation,
    unknown_key: impl Fn(K) -> Violation,
    repeated: impl Fn(K) -> Violation,
) -> Option<Vec<usize>> {
    let before = violations.len();
    let mut perm = Vec::with_capacity(size);
    let mut hit = vec![false; size];
    for k in keys {
        match map.get(&k) {
            None => violations.push(not_mapped(k)),
            Some(img) => match position(img) {
                None => violations.push(unknown_image(k, img.clone())),
                Some(j) => {
                    if hit[j] {
                        violations.push(repeated(img.clone()));
                    }
                    hit[j] = true;
                    perm.push(j);
                }
            },
        }
    }
    for k in map.keys() {
        if position(k).is_none() {
            violations.push(unknown_key(k.clone()));
        }
    }
    (violations.len() == before).then_some(perm)
}

/// Checks bijectivity, edge/endpoint compatibility and `σ^I = id`.
pub fn validate(g: &MultiGraph, a: &CyclicAction) -> ValidationReport {
    let mut violations = Vec::new();
    if a.order == 0 {
        violations.push(Violation::ZeroOrder);
    }
    let vperm = resolve_map(
        g.vertices().iter().map(|v| v.id.clone()),
        &a.vertex_map,
        |v| g.vertex_position(v),
        g.vertex_count(),
        &mut violations,
        |vertex| Violation::VertexNotMapped { vertex },
        |vertex, image| Violation::VertexImageUnknown { vertex, image },
        |vertex| Violation::VertexKeyUnknown { vertex },
        |image| Violation::VertexImageRepeated { image },
    );
    let eperm = resolve_map(
        g.edges().iter().map(|e| e.id.clone()),
        &a.edge_map,
        |e| g.edge_position(e),
        g.edge_count(),
        &mut violations,
        |edge| Violation::EdgeNotMapped { edge },
        |edge, image| Violation::EdgeImageUnknown { edge, image },
        |edge| Violation::EdgeKeyUnknown { edge },
        |image| Violation::EdgeImageRepeated { image },
    );

    if let (Some(vperm), Some(eperm)) = (&vperm, &eperm) {
        for (i, edge) in g.edges().iter().enumerate() {
            let [t, h] = g.incidence(i);
            let j = eperm[i];
            let [t2, h2] = g.incidence(j);
            let moved = (vperm[t], vperm[h]);
            if moved != (t2, h2) && moved != (h2, t2) {
                let name = |p: usize| g.vertices()[p].id.clone();
                violations.push(Violation::Incompatible {
                    edge: edge.id.clone(),
                    image: g.edges()[j].id.clone(),
                    expected: [name(moved.0), name(moved.1)],
                    found: [name(t2), name(h2)],
                });
            }
        }
        if a.order > 0 {
            let vpow = perm_power(vperm, a.order);
            for (i, &p) in vpow.iter().enumerate() {
                if p != i {
                    violations.push(Violation::VertexOrder {
                        vertex: g.vertices()[i].id.clone(),
                        order: a.order,
                    });
                }
            }
            let epow = perm_power(eperm, a.order);
            for (i, &p) in epow.iter().enumerate() {
                if p != i {
                    violations.push(Violation::EdgeOrder {
                        edge: g.edges()[i].id.clone(),
                        order: a.order,
                    });
                }
            }
        }
    }
    ValidationReport { violations }
}

fn perm_power(perm: &[usize], k: usize) -> Vec<usize> {
    let mut result: Vec<usize> = (0..perm.len()).collect();
    let mut base = perm.to_vec();
    let mut k = k;
    while k > 0 {
        if k & 1 == 1 {
            result = result.iter().map(|&x| base[x]).collect();
        }
        base = base.iter().map(|&x| base[x]).collect();
        k >>= 1;
    }
    result
}

/// A validated action in position form, for repeated queries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResolvedAction {
    order: usize,
    vertex_perm: Vec<usize>,
    edge_perm: Vec<usize>,
}

impl ResolvedAction {
    pub fn new(g: &MultiGraph, a: &CyclicAction) -> Result<Self, ActionError> {
        let report = validate(g, a);
        if !report.is_valid() {
            return Err(ActionError::Invalid(report));
        }
        let vertex_perm = g
            .vertices()
            .iter()
            .map(|v| g.vertex_position(&a.vertex_map[&v.id]).expect("validated"))
            .collect();
        let edge_perm = g
            .edges()
            .iter()
            .map(|e| g.edge_position(&a.edge_map[&e.id]).expect("validated"))
            .collect();
        Ok(ResolvedAction {
            order: a.order,
            vertex_perm,
            edge_perm,
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    fn generator(&self, h: Subgroup) -> Result<(Vec<usize>, Vec<usize>), ActionError> {
        h.check(self.order)?;
        Ok((
            perm_power(&self.vertex_perm, h.d),
            perm_power(&self.edge_perm, h.d),
        ))
    }

    /// `H_d`-orbit size of every vertex, by position.
    pub fn orbit_sizes(&self, h: Subgroup) -> Result<Vec<usize>, ActionError> {
        let (tau, _) = self.generator(h)?;
        Ok((0..tau.len())
            .map(|v| {
                let mut size = 1;
                let mut x = tau[v];
                while x != v {
                    x = tau[x];
                    size += 1;
                }
                size
            })
            .collect())
    }

    /// Positions of vertices fixed by `σ^d`.
    pub fn fixed_vertices(&self, h: Subgroup) -> Result<Vec<usize>, ActionError> {
        let (tau, _) = self.generator(h)?;
        Ok((0..tau.len()).filter(|&v| tau[v] == v).collect())
    }

    /// Positions of edges fixed by `σ^d`, with whether their ends are swapped.
    pub fn stabilized_edges(
        &self,
        g: &MultiGraph,
        h: Subgroup,
    ) -> Result<Vec<(usize, bool)>, ActionError> {
        let (tau, eta) = self.generator(h)?;
        Ok((0..eta.len())
            .filter(|&e| eta[e] == e)
            .map(|e| {
                let [t, hd] = g.incidence(e);
                (e, t != hd && tau[t] == hd)
            })
            .collect())
    }

    /// Full-group orbit number of each vertex, numbered in order of first
    /// appearance.
    pub fn orbit_labels(&self) -> Vec<usize> {
        let mut label = vec![usize::MAX; self.vertex_perm.len()];
        let mut next = 0;
        for v in 0..label.len() {
            if label[v] != usize::MAX {
                continue;
            }
            let mut x = v;
            while label[x] == usize::MAX {
                label[x] = next;
                x = self.vertex_perm[x];
            }
            next += 1;
        }
        label
    }

    /// Order of the generator as a permutation of vertices and edges.
    pub fn exact_order(&self) -> usize {
        let mut k = 1;
        loop {
            let v = perm_power(&self.vertex_perm, k);
            let e = perm_power(&self.edge_perm, k);
            if v.iter().enumerate().all(|(i, &x)| i == x)
                && e.iter().enumerate().all(|(i, &x)| i == x)
            {
                return k;
            }
            k += 1;
        }
    }
}

pub fn vertex_orbit_sizes(
    g: &MultiGraph,
    a: &CyclicAction,
    h: Subgroup,
) -> Result<BTreeMap<VertexId, usize>, ActionError> {
    let sizes = ResolvedAction::new(g, a)?.orbit_sizes(h)?;
    Ok(g.vertices()
        .iter()
        .map(|v| v.id.clone())
        .zip(sizes)
        .collect())
}

pub fn fixed_vertices(
    g: &MultiGraph,
    a: &CyclicAction,
    h: Subgroup,
) -> Result<BTreeSet<VertexId>, ActionError> {
    let fixed = ResolvedAction::new(g, a)?.fixed_vertices(h)?;
    Ok(fixed
        .into_iter()
        .map(|i| g.vertices()[i].id.clone())
        .collect())
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct StabilizedEdge {
    pub edge: EdgeId,
    pub flipped: bool,
}

pub fn stabilized_edges(
    g: &MultiGraph,
    a: &CyclicAction,
    h: Subgroup,
) -> Result<BTreeSet<StabilizedEdge>, ActionError> {
    let stab = ResolvedAction::new(g, a)?.stabilized_edges(g, h)?;
    Ok(stab
        .into_iter()
        .map(|(i, flipped)| StabilizedEdge {
            edge: g.edges()[i].id.clone(),
            flipped,
        })
        .collect())
}

/// Derived graph of a voltage assignment: the `Z/I`-cover of `quotient` in
/// which edge `ε: u → v` lifts to `(u, j) — (v, j + voltage(ε))`. Vertices are
/// named `x@j` and edges `ε@j`. Missing voltages count as 0. The generator
/// shifts every sheet by one, so the action is free on vertices.
pub fn lift_voltage_graph(
    quotient: &MultiGraph,
    voltages: &BTreeMap<EdgeId, usize>,
    order: usize,
) -> Result<(MultiGraph, CyclicAction), ActionError> {
    if order == 0 {
        return Err(ActionError::ZeroOrder);
    }
    let vname = |x: &VertexId, j: usize| VertexId(format!("{}@{}", x, j % order));
    let ename = |e: &EdgeId, j: usize| EdgeId(format!("{}@{}", e, j % order));

    let mut vertices = Vec::new();
    let mut vertex_map = BTreeMap::new();
    for v in quotient.vertices() {
        for j in 0..order {
            vertices.push(vname(&v.id, j));
            vertex_map.insert(vname(&v.id, j), vname(&v.id, j + 1));
        }
    }
    let mut edges = Vec::new();
    let mut edge_map = BTreeMap::new();
    for e in quotient.edges() {
        let shift = voltages.get(&e.id).copied().unwrap_or(0) % order;
        for j in 0..order {
            edges.push((
                ename(&e.id, j),
                vname(e.tail(), j),
                vname(e.head(), j + shift),
            ));
            edge_map.insert(ename(&e.id, j), ename(&e.id, j + 1));
        }
    }
    let graph = MultiGraph::new(vertices, edges)?;
    Ok((
        graph,
        CyclicAction {
            order,
            vertex_map,
            edge_map,
        },
    ))
}

/// A connected quotient graph with voltages, ready to be lifted.
#[derive(Clone, Debug)]
pub struct VoltageGraph {
    pub quotient: MultiGraph,
    pub voltages: BTreeMap<EdgeId, usize>,
    pub order: usize,
}

impl VoltageGraph {
    /// Random connected quotient (spanning tree plus extra edges, loops and
    /// parallels allowed) with uniform voltages. The lift may still be
    /// disconnected. Requires `max_vertices ≥ 1`, `max_edges ≥ max_vertices − 1`
    /// and `max_order ≥ 1`.
    pub fn random<R: Rng + ?Sized>(
        rng: &mut R,
        max_vertices: usize,
        max_edges: usize,
        max_order: usize,
    ) -> Self {
        assert!(max_vertices >= 1 && max_order >= 1 && max_edges + 1 >= max_vertices);
        let n = rng.gen_range(1..=max_vertices);
        let m = rng.gen_range(n - 1..=max_edges);
        let order = rng.gen_range(1..=max_order);
        let mut pairs = Vec::with_capacity(m);
        for v in 1..n {
            pairs.push((rng.gen_range(0..v), v));
        }
        while pairs.len() < m {
            pairs.push((rng.gen_range(0..n), rng.gen_range(0..n)));
        }
        let quotient = MultiGraph::from_index_pairs(n, &pairs).expect("indices in range");
        let voltages = quotient
            .edges()
            .iter()
            .map(|e| (e.id.clone(), rng.gen_range(0..order)))
            .collect();
        VoltageGraph {
            quotient,
            voltages,
            order,
        }
    }

    pub fn lift(&self) -> (MultiGraph, CyclicAction) {
        lift_voltage_graph(&self.quotient, &self.voltages, self.order)
            .expect("positive order and fresh identifiers")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rotation_cycle(n: usize, order: usize) -> (MultiGraph, CyclicAction) {
        let pairs: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        let g = MultiGraph::from_index_pairs(n, &pairs).unwrap();
        let a = CyclicAction {
            order,
            vertex_map: (0..n)
                .map(|i| (VertexId(i.to_string()), VertexId(((i + 1) % n).to_string())))
                .collect(),
            edge_map: (0..n)
                .map(|i| (EdgeId(format!("e{i}")), EdgeId(format!("e{}", (i + 1) % n))))
                .collect(),
        };
        (g, a)
    }

    fn single_edge_swap() -> (MultiGraph, CyclicAction) {
        let g = MultiGraph::from_index_pairs(2, &[(0, 1)]).unwrap();
        let a = CyclicAction {
            order: 2,
            vertex_map: BTreeMap::from([("0".into(), "1".into()), ("1".into(), "0".into())]),
            edge_map: BTreeMap::from([("e0".into(), "e0".into())]),
        };
        (g, a)
    }

    fn two_cycle_swap() -> (MultiGraph, CyclicAction) {
        let g = MultiGraph::from_index_pairs(2, &[(0, 1), (1, 0)]).unwrap();
        let a = CyclicAction {
            order: 2,
            vertex_map: BTreeMap::from([("0".into(), "1".into()), ("1".into(), "0".into())]),
            edge_map: BTreeMap::from([("e0".into(), "e1".into()), ("e1".into(), "e0".into())]),
        };
        (g, a)
    }

    #[test]
    fn rotation_validates() {
        let (g, a) = rotation_cycle(6, 6);
        assert!(validate(&g, &a).is_valid());
    }

    #[test]
    fn wrong_order_is_reported() {
        let (g, a) = rotation_cycle(6, 4);
        let report = validate(&g, &a);
        assert!(!report.is_valid());
        assert!(report.violations.iter().all(|v| matches!(
            v,
            Violation::VertexOrder { .. } | Violation::EdgeOrder { .. }
        )));
        assert_eq!(report.violations.len(), 12);
    }

    #[test]
    fn non_incident_edge_image_is_reported() {
        // 4-cycle; send e0 = {0,1} to e2 = {2,3} while vertices rotate by one
        let (g, mut a) = rotation_cycle(4, 4);
        a.edge_map.insert("e0".into(), "e2".into());
        a.edge_map.insert("e1".into(), "e1".into());
        let report = validate(&g, &a);
        assert!(report.violations.iter().any(|v| matches!(
            v,
            Violation::Incompatible { edge, .. } if edge.0 == "e0"
        )));
    }

    #[test]
    fn non_bijective_and_partial_maps() {
        let (g, mut a) = rotation_cycle(3, 3);
        a.vertex_map.insert("0".into(), "2".into());
        a.edge_map.remove(&EdgeId::from("e1"));
        a.edge_map.insert("zz".into(), "e0".into());
        let report = validate(&g, &a);
        assert!(report
            .violations
            .contains(&Violation::VertexImageRepeated { image: "2".into() }));
        assert!(report
            .violations
            .contains(&Violation::EdgeNotMapped { edge: "e1".into() }));
        assert!(report
            .violations
            .contains(&Violation::EdgeKeyUnknown { edge: "zz".into() }));
    }

    #[test]
    fn orbit_sizes_of_cycle() {
        let (g, a) = rotation_cycle(5, 5);
        let sizes = vertex_orbit_sizes(&g, &a, Subgroup::full()).unwrap();
        assert!(sizes.values().all(|&s| s == 5));
        let sizes = vertex_orbit_sizes(&g, &a, Subgroup::trivial(5)).unwrap();
        assert!(sizes.values().all(|&s| s == 1));
        assert!(matches!(
            vertex_orbit_sizes(&g, &a, Subgroup::with_index(2)),
            Err(ActionError::NotADivisor { d: 2, order: 5 })
        ));
    }

    #[test]
    fn fixed_vertices_examples() {
        let g = MultiGraph::from_index_pairs(3, &[(0, 1), (1, 2)]).unwrap();
        let mut a = CyclicAction::trivial(&g);
        a.order = 4;
        for d in [1, 2, 4] {
            assert_eq!(
                fixed_vertices(&g, &a, Subgroup::with_index(d))
                    .unwrap()
                    .len(),
                3
            );
        }
        let (g, a) = two_cycle_swap();
        assert!(fixed_vertices(&g, &a, Subgroup::full()).unwrap().is_empty());
        assert_eq!(
            fixed_vertices(&g, &a, Subgroup::trivial(2)).unwrap().len(),
            2
        );
    }

    #[test]
    fn stabilized_edge_examples() {
        let (g, a) = single_edge_swap();
        let stab = stabilized_edges(&g, &a, Subgroup::full()).unwrap();
        assert_eq!(
            stab.into_iter().collect::<Vec<_>>(),
            vec![StabilizedEdge {
                edge: "e0".into(),
                flipped: true
            }]
        );
        let (g, a) = two_cycle_swap();
        assert!(stabilized_edges(&g, &a, Subgroup::full())
            .unwrap()
            .is_empty());
    }

    #[test]
    fn stabilized_loop_is_unflipped() {
        let g = MultiGraph::from_index_pairs(1, &[(0, 0)]).unwrap();
        let a = CyclicAction::trivial(&g);
        let stab = stabilized_edges(&g, &a, Subgroup::full()).unwrap();
        assert_eq!(stab.len(), 1);
        assert!(!stab.iter().next().unwrap().flipped);
    }

    #[test]
    fn restriction() {
        let (g, a) = rotation_cycle(6, 6);
        let r = a.restrict(2).unwrap();
        assert_eq!(r.order, 3);
        assert_eq!(r.vertex_map[&VertexId::from("5")], VertexId::from("1"));
        assert!(validate(&g, &r).is_valid());
        assert!(a.restrict(4).is_err());
    }

    #[test]
    fn voltage_loop_unrolls_to_cycle() {
        let q = MultiGraph::from_index_pairs(1, &[(0, 0)]).unwrap();
        let volts = BTreeMap::from([("e0".into(), 1)]);
        let (g, a) = lift_voltage_graph(&q, &volts, 6).unwrap();
        assert!(validate(&g, &a).is_valid());
        let pairs: Vec<_> = (0..6).map(|i| (i, (i + 1) % 6)).collect();
        let six = MultiGraph::from_index_pairs(6, &pairs).unwrap();
        assert!(crate::multigraph::are_isomorphic(&g, &six));
        let sizes = vertex_orbit_sizes(&g, &a, Subgroup::full()).unwrap();
        assert!(sizes.values().all(|&s| s == 6));
    }

    #[test]
    fn voltage_zero_loop_is_disconnected() {
        let q = MultiGraph::from_index_pairs(1, &[(0, 0)]).unwrap();
        let (g, a) = lift_voltage_graph(&q, &BTreeMap::new(), 3).unwrap();
        assert!(validate(&g, &a).is_valid());
        assert!(!g.is_connected());
        assert!(g.edges().iter().all(|e| e.is_loop()));
    }

    #[test]
    fn voltage_edge_zero_gives_swapped_pair() {
        let q = MultiGraph::from_index_pairs(2, &[(0, 1)]).unwrap();
        let (g, a) = lift_voltage_graph(&q, &BTreeMap::new(), 2).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (4, 2));
        assert!(!g.is_connected());
        assert!(validate(&g, &a).is_valid());
        assert!(fixed_vertices(&g, &a, Subgroup::full()).unwrap().is_empty());
    }

    #[test]
    fn orbit_labels_number_orbits() {
        let (g, a) = rotation_cycle(4, 4);
        let r = ResolvedAction::new(&g, &a).unwrap().restrict_labels(2);
        assert_eq!(r, vec![0, 1, 0, 1]);
    }

    impl ResolvedAction {
        fn restrict_labels(&self, k: usize) -> Vec<usize> {
            let r = ResolvedAction {
                order: self.order / k,
                vertex_perm: perm_power(&self.vertex_perm, k),
                edge_perm: perm_power(&self.edge_perm, k),
            };
            r.orbit_labels()
        }
    }
}
