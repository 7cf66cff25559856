use serde::{Deserialize, Serialize};

use super::Graph;
use crate::error::{Error, Result};

/// Wire form `{"n": 4, "edges": [[0, 1], ...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeList {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
}

impl From<&Graph> for EdgeList {
    fn from(g: &Graph) -> Self {
        Self {
            n: g.order(),
            edges: g.edges().iter().map(|&(u, v)| [u, v]).collect(),
        }
    }
}

impl TryFrom<EdgeList> for Graph {
    type Error = Error;

    fn try_from(list: EdgeList) -> Result<Graph> {
        Graph::new(list.n, list.edges.into_iter().map(|[u, v]| (u, v)))
    }
}

pub fn parse_edge_json(text: &str) -> Result<Graph> {
    let list: EdgeList = serde_json::from_str(text).map_err(|e| Error::EdgeList(e.to_string()))?;
    list.try_into()
}

/// A JSON array of edge-list objects.
pub fn parse_edge_json_list(text: &str) -> Result<Vec<Graph>> {
    let lists: Vec<EdgeList> =
        serde_json::from_str(text).map_err(|e| Error::EdgeList(e.to_string()))?;
    lists.into_iter().map(Graph::try_from).collect()
}

pub fn to_edge_json(g: &Graph) -> String {
    serde_json::to_string(&EdgeList::from(g)).expect("edge lists serialize")
}
