use std::collections::VecDeque;

use super::Graph;
use crate::error::{Error, Result};

/// All-pairs hop distances by breadth-first search from every vertex.
pub fn distances(g: &Graph) -> Result<Vec<Vec<usize>>> {
    let n = g.order();
    let mut out = Vec::with_capacity(n);
    for s in 0..n {
        let mut dist = vec![usize::MAX; n];
        dist[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            for &w in g.neighbors(v) {
                if dist[w] == usize::MAX {
                    dist[w] = dist[v] + 1;
                    queue.push_back(w);
                }
            }
        }
        if let Some(t) = dist.iter().position(|&d| d == usize::MAX) {
            return Err(Error::Disconnected(s.min(t), s.max(t)));
        }
        out.push(dist);
    }
    Ok(out)
}
