//! The JSON documents read and written by the CLI. Every document carries
//! a schema version `"v": 1`.

use std::path::Path;

use effdom_core::domination::DominatingFunction;
use effdom_core::graph::Graph;
use effdom_core::partition::VertexPartition;
use serde::{Deserialize, Serialize};

use crate::CliError;

pub const SCHEMA_VERSION: u32 = 1;

fn default_version() -> u32 {
    SCHEMA_VERSION
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphDoc {
    #[serde(default = "default_version")]
    pub v: u32,
    pub name: String,
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
}

impl GraphDoc {
    pub fn from_graph(x: &Graph) -> Self {
        GraphDoc {
            v: SCHEMA_VERSION,
            name: x.name().to_string(),
            n: x.n(),
            edges: x.edges().collect(),
        }
    }

    pub fn to_graph(&self) -> Result<Graph, CliError> {
        check_version(self.v)?;
        Graph::from_edges(self.name.clone(), self.n, &self.edges)
            .map_err(|e| CliError::Usage(format!("invalid graph: {e}")))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FunctionDoc {
    #[serde(default = "default_version")]
    pub v: u32,
    pub j: u64,
    pub k: u64,
    pub values: Vec<u64>,
}

impl FunctionDoc {
    pub fn from_function(f: &DominatingFunction) -> Self {
        FunctionDoc {
            v: SCHEMA_VERSION,
            j: f.j(),
            k: f.k(),
            values: f.values().to_vec(),
        }
    }

    pub fn to_function(&self) -> Result<DominatingFunction, CliError> {
        check_version(self.v)?;
        DominatingFunction::new(self.j, self.k, self.values.clone())
            .map_err(|e| CliError::Usage(format!("invalid function: {e}")))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionDoc {
    #[serde(default = "default_version")]
    pub v: u32,
    pub cells: Vec<Vec<usize>>,
}

impl PartitionDoc {
    /// Canonical order: cells sorted by their smallest vertex.
    pub fn from_partition(pi: &VertexPartition) -> Self {
        PartitionDoc {
            v: SCHEMA_VERSION,
            cells: pi.canonicalized().cells().to_vec(),
        }
    }

    /// Keeps the cell order of the file, which fixes the fibre to base
    /// vertex correspondence for covers.
    pub fn to_partition(&self, n: usize) -> Result<VertexPartition, CliError> {
        check_version(self.v)?;
        VertexPartition::new(n, self.cells.clone())
            .map_err(|e| CliError::Usage(format!("invalid partition: {e}")))
    }
}

fn check_version(v: u32) -> Result<(), CliError> {
    if v != SCHEMA_VERSION {
        return Err(CliError::Usage(format!(
            "unsupported schema version {v} (expected {SCHEMA_VERSION})"
        )));
    }
    Ok(())
}

pub fn read_doc<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| CliError::Usage(format!("cannot parse {}: {e}", path.display())))
}

pub fn read_graph(path: &Path) -> Result<Graph, CliError> {
    read_doc::<GraphDoc>(path)?.to_graph()
}

pub fn read_function(path: &Path) -> Result<DominatingFunction, CliError> {
    read_doc::<FunctionDoc>(path)?.to_function()
}

pub fn read_partition(path: &Path, n: usize) -> Result<VertexPartition, CliError> {
    read_doc::<PartitionDoc>(path)?.to_partition(n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use effdom_core::graph::cycle;

    #[test]
    fn graph_round_trip() {
        let c6 = cycle(6).unwrap();
        let doc = GraphDoc::from_graph(&c6);
        let text = serde_json::to_string(&doc).unwrap();
        assert!(text.starts_with(r#"{"v":1,"name":"#));
        let back: GraphDoc = serde_json::from_str(&text).unwrap();
        assert_eq!(back.to_graph().unwrap(), c6);
    }

    #[test]
    fn version_is_checked() {
        let doc: FunctionDoc = serde_json::from_str(r#"{"v":2,"j":1,"k":1,"values":[1]}"#).unwrap();
        assert!(doc.to_function().is_err());
        let doc: FunctionDoc = serde_json::from_str(r#"{"j":1,"k":1,"values":[1,0]}"#).unwrap();
        assert_eq!(doc.to_function().unwrap().values(), &[1, 0]);
    }

    #[test]
    fn partitions_are_canonical() {
        let pi = VertexPartition::new(4, vec![vec![3, 1], vec![2, 0]]).unwrap();
        assert_eq!(
            PartitionDoc::from_partition(&pi).cells,
            vec![vec![0, 2], vec![1, 3]]
        );
    }
}
