use std::path::Path;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{parse_graph6, EdgeList, Graph};

pub const DEFAULT_ORDER_LIMIT: usize = 10;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorpusEntry {
    pub graph: Graph,
    pub source: String,
    /// 1-based line number for graph6 files, 1-based array index for JSON.
    pub line: usize,
}

impl CorpusEntry {
    pub fn provenance(&self) -> String {
        format!("{}:{}", self.source, self.line)
    }
}

/// An entry that could not be used, with where it came from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SkippedEntry {
    pub source: String,
    pub line: usize,
    pub reason: String,
}

/// Ordered graphs with provenance. Unusable records are kept aside rather
/// than aborting the load.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Corpus {
    pub entries: Vec<CorpusEntry>,
    pub skipped: Vec<SkippedEntry>,
}

impl Corpus {
    pub fn from_graphs(source: &str, graphs: impl IntoIterator<Item = Graph>) -> Self {
        let entries = graphs
            .into_iter()
            .enumerate()
            .map(|(i, graph)| CorpusEntry {
                graph,
                source: source.to_string(),
                line: i + 1,
            })
            .collect();
        Self {
            entries,
            skipped: Vec::new(),
        }
    }

    fn admit(&mut self, source: &str, line: usize, parsed: Result<Graph>, limit: usize) {
        let result = parsed.and_then(|g| {
            if g.order() > limit {
                Err(Error::SizeLimit {
                    what: "graph order",
                    actual: g.order(),
                    limit,
                })
            } else {
                Ok(g)
            }
        });
        match result {
            Ok(graph) => self.entries.push(CorpusEntry {
                graph,
                source: source.to_string(),
                line,
            }),
            Err(e) => self.skipped.push(SkippedEntry {
                source: source.to_string(),
                line,
                reason: e.to_string(),
            }),
        }
    }

    /// One graph6 record per line; blank lines are ignored.
    pub fn add_graph6_text(&mut self, source: &str, text: &str, limit: usize) {
        for (i, line) in text.lines().enumerate() {
            let line_text = line.trim();
            if line_text.is_empty() {
                continue;
            }
            self.admit(source, i + 1, parse_graph6(line_text), limit);
        }
    }

    /// A JSON array of `{"n": .., "edges": [..]}` objects.
    pub fn add_json_text(&mut self, source: &str, text: &str, limit: usize) -> Result<()> {
        let items: Vec<serde_json::Value> =
            serde_json::from_str(text).map_err(|e| Error::EdgeList(e.to_string()))?;
        for (i, item) in items.into_iter().enumerate() {
            let parsed = serde_json::from_value::<EdgeList>(item)
                .map_err(|e| Error::EdgeList(e.to_string()))
                .and_then(Graph::try_from);
            self.admit(source, i + 1, parsed, limit);
        }
        Ok(())
    }

    /// Adds a file; JSON when the content starts with `[`, graph6 otherwise.
    pub fn add_file(&mut self, path: &Path, limit: usize) -> std::io::Result<Result<()>> {
        let text = std::fs::read_to_string(path)?;
        let source = path.display().to_string();
        if text.trim_start().starts_with('[') {
            Ok(self.add_json_text(&source, &text, limit))
        } else {
            self.add_graph6_text(&source, &text, limit);
            Ok(Ok(()))
        }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn graphs(&self) -> impl Iterator<Item = &Graph> {
        self.entries.iter().map(|e| &e.graph)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn skips_bad_records_with_provenance() {
        let mut c = Corpus::default();
        c.add_graph6_text("mem", "Bg\n\nC\nA_\nJ??????????\n", 10);
        assert_eq!(c.len(), 2);
        assert_eq!(c.entries[1].provenance(), "mem:4");
        assert_eq!(c.skipped.len(), 2);
        assert_eq!(c.skipped[0].line, 3);
        assert!(c.skipped[1].reason.contains("limit"));
    }

    #[test]
    fn json_corpus() {
        let mut c = Corpus::default();
        c.add_json_text(
            "j",
            r#"[{"n":2,"edges":[[0,1]]},{"n":2,"edges":[[0,0]]}]"#,
            10,
        )
        .unwrap();
        assert_eq!(c.len(), 1);
        assert_eq!(c.skipped[0].line, 2);
        assert!(c.add_json_text("j", "{", 10).is_err());
    }
}
