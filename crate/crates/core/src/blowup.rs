//! Brute-force splitting oracle.
//!
//! A totally ramified base change of ramification `e` makes every node
//! singular on the total space; resolving it replaces the node by a chain of
//! `e − 1` rational curves. Combinatorially, every edge of the dual graph is
//! subdivided into `e` segments and the Galois action is transported to the
//! chains. The extension splits the curve iff the resolved fiber has a
//! component fixed by the acting subgroup. Nothing here consults the
//! edge-stabilizer rule in [`crate::invariants`]; the two are compared in tests.

use std::collections::BTreeMap;

use crate::action::{validate, ActionError, CyclicAction};
use crate::invariants::{ExtensionSpec, InvariantError};
use crate::model::CurveModel;
use crate::multigraph::{chain_segment_id, chain_vertex_id, EdgeId, MultiGraph, VertexId};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlownUpModel {
    pub graph: MultiGraph,
    /// The generator `σ^d` of the acting subgroup, of order `I/d`.
    pub action: CyclicAction,
    /// Parent edge and position (from the tail) of every new vertex.
    pub provenance: BTreeMap<VertexId, (EdgeId, usize)>,
}

impl BlownUpModel {
    pub fn fixed_vertices(&self) -> Vec<VertexId> {
        self.action
            .vertex_map
            .iter()
            .filter(|(v, w)| v == w)
            .map(|(v, _)| v.clone())
            .collect()
    }
}

/// Resolves the base change with data `x`.
pub fn base_change(m: &CurveModel, x: ExtensionSpec) -> Result<BlownUpModel, InvariantError> {
    x.check(m.order())?;
    let acting = m.action().restrict(x.d)?;
    let e = x.e;
    if e == 1 {
        return Ok(BlownUpModel {
            graph: m.graph().clone(),
            action: acting,
            provenance: BTreeMap::new(),
        });
    }

    let original = m.graph();
    let graph = original.subdivide(e).map_err(ActionError::from)?;
    let mut vertex_map = acting.vertex_map.clone();
    let mut edge_map = BTreeMap::new();
    let mut provenance = BTreeMap::new();
    for edge in original.edges() {
        let image_id = &acting.edge_map[&edge.id];
        let image = original.edge(image_id).expect("validated edge map");
        let keeps_orientation = acting.vertex_map[edge.tail()] == *image.tail();
        for p in 1..e {
            let target = if keeps_orientation { p } else { e - p };
            let v = chain_vertex_id(&edge.id, p);
            vertex_map.insert(v.clone(), chain_vertex_id(image_id, target));
            provenance.insert(v, (edge.id.clone(), p));
        }
        for k in 0..e {
            let target = if keeps_orientation { k } else { e - 1 - k };
            edge_map.insert(
                chain_segment_id(&edge.id, k),
                chain_segment_id(image_id, target),
            );
        }
    }
    let action = CyclicAction {
        order: acting.order,
        vertex_map,
        edge_map,
    };
    debug_assert!(validate(&graph, &action).is_valid());
    Ok(BlownUpModel {
        graph,
        action,
        provenance,
    })
}

/// Whether the resolved fiber has a component fixed by the acting subgroup.
pub fn oracle_splits(m: &CurveModel, x: ExtensionSpec) -> Result<bool, InvariantError> {
    let blown = base_change(m, x)?;
    Ok(blown.action.vertex_map.iter().any(|(v, w)| v == w))
}
