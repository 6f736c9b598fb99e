//! Curve models: a dual graph, the Galois action on it, and per-component
//! data. This is also the on-disk model file format.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::action::{validate, ActionError, CyclicAction, ResolvedAction, ValidationReport};
use crate::multigraph::{GraphError, MultiGraph, VertexId};

fn one() -> usize {
    1
}

/// Data attached to a component. Both values are 1 for the genus-0
/// components of a totally degenerate reduced fiber.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentData {
    /// Nonsingular index of the component over its field of definition.
    #[serde(default = "one")]
    pub ns_index: usize,
    /// Multiplicity of the component in the special fiber.
    #[serde(default = "one")]
    pub multiplicity: usize,
}

impl Default for ComponentData {
    fn default() -> Self {
        ComponentData {
            ns_index: 1,
            multiplicity: 1,
        }
    }
}

/// Genus and index the model was built to realize.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Claimed {
    pub genus: usize,
    pub index: usize,
}

#[derive(Debug, Error)]
pub enum ModelError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Action(#[from] ActionError),
    #[error("dual graph must be connected")]
    Disconnected,
    #[error("component data given for unknown vertex `{0}`")]
    UnknownComponent(VertexId),
    #[error("component `{0}` has a zero ns_index or multiplicity")]
    ZeroComponentValue(VertexId),
    #[error("{0}")]
    Json(#[from] serde_json::Error),
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

/// A model file as written on disk, before the action is checked.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ModelDocument {
    pub graph: MultiGraph,
    pub action: CyclicAction,
    #[serde(default)]
    pub components: BTreeMap<VertexId, ComponentData>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub claimed: Option<Claimed>,
}

impl ModelDocument {
    pub fn from_json(text: &str) -> Result<Self, ModelError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn load(path: &Path) -> Result<Self, ModelError> {
        Self::from_json(&read(path)?)
    }

    pub fn into_model(self) -> Result<CurveModel, ModelError> {
        CurveModel::try_from(self)
    }
}

fn read(path: &Path) -> Result<String, ModelError> {
    std::fs::read_to_string(path).map_err(|source| ModelError::Io {
        path: path.display().to_string(),
        source,
    })
}

/// A validated model of a semistable special fiber with a cyclic Galois
/// action. The graph is connected and the action passes [`validate`].
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(try_from = "ModelDocument", into = "ModelDocument")]
pub struct CurveModel {
    graph: MultiGraph,
    action: CyclicAction,
    components: BTreeMap<VertexId, ComponentData>,
    claimed: Option<Claimed>,
    resolved: ResolvedAction,
}

impl PartialEq for CurveModel {
    fn eq(&self, other: &Self) -> bool {
        self.graph == other.graph
            && self.action == other.action
            && self.components == other.components
            && self.claimed == other.claimed
    }
}

impl TryFrom<ModelDocument> for CurveModel {
    type Error = ModelError;

    fn try_from(raw: ModelDocument) -> Result<Self, ModelError> {
        CurveModel::new(raw.graph, raw.action, raw.components, raw.claimed)
    }
}

impl From<CurveModel> for ModelDocument {
    fn from(m: CurveModel) -> Self {
        ModelDocument {
            graph: m.graph,
            action: m.action,
            components: m.components,
            claimed: m.claimed,
        }
    }
}

impl CurveModel {
    /// Missing component entries default to `ns_index = multiplicity = 1`.
    pub fn new(
        graph: MultiGraph,
        action: CyclicAction,
        mut components: BTreeMap<VertexId, ComponentData>,
        claimed: Option<Claimed>,
    ) -> Result<Self, ModelError> {
        let report = validate(&graph, &action);
        if !report.is_valid() {
            return Err(ActionError::Invalid(report).into());
        }
        if !graph.is_connected() {
            return Err(ModelError::Disconnected);
        }
        for (v, data) in &components {
            if graph.vertex_position(v).is_none() {
                return Err(ModelError::UnknownComponent(v.clone()));
            }
            if data.ns_index == 0 || data.multiplicity == 0 {
                return Err(ModelError::ZeroComponentValue(v.clone()));
            }
        }
        for v in graph.vertices() {
            components.entry(v.id.clone()).or_default();
        }
        let resolved = ResolvedAction::new(&graph, &action)?;
        Ok(CurveModel {
            graph,
            action,
            components,
            claimed,
            resolved,
        })
    }

    pub fn with_unit_components(
        graph: MultiGraph,
        action: CyclicAction,
        claimed: Option<Claimed>,
    ) -> Result<Self, ModelError> {
        Self::new(graph, action, BTreeMap::new(), claimed)
    }

    pub fn graph(&self) -> &MultiGraph {
        &self.graph
    }

    pub fn action(&self) -> &CyclicAction {
        &self.action
    }

    pub fn order(&self) -> usize {
        self.action.order
    }

    pub fn components(&self) -> &BTreeMap<VertexId, ComponentData> {
        &self.components
    }

    pub fn component(&self, v: &VertexId) -> ComponentData {
        self.components.get(v).copied().unwrap_or_default()
    }

    pub fn claimed(&self) -> Option<Claimed> {
        self.claimed
    }

    pub fn resolved(&self) -> &ResolvedAction {
        &self.resolved
    }

    pub fn validation(&self) -> ValidationReport {
        validate(&self.graph, &self.action)
    }

    /// Full-group orbit number per vertex, for coloring exports.
    pub fn orbit_colors(&self) -> BTreeMap<VertexId, usize> {
        self.graph
            .vertices()
            .iter()
            .map(|v| v.id.clone())
            .zip(self.resolved.orbit_labels())
            .collect()
    }

    pub fn from_json(text: &str) -> Result<Self, ModelError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("model serializes")
    }

    pub fn load(path: &Path) -> Result<Self, ModelError> {
        Self::from_json(&read(path)?)
    }
}
