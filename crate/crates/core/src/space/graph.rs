//! Undirected unit-edge graphs in compressed adjacency form.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};

/// A connected, simple, undirected graph with named basepoints.
///
/// Vertices are `0..vertex_count()`. Adjacency is stored in CSR form and each
/// neighbor list is sorted ascending, so traversal order is deterministic.
/// Graphs are immutable once built and safe to share across threads.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    offsets: Vec<usize>,
    targets: Vec<u32>,
    basepoints: BTreeMap<String, usize>,
    coords: Option<Vec<[i64; 2]>>,
}

impl Graph {
    /// Builds a graph from an undirected edge list, validating every invariant.
    pub fn from_edges(vertex_count: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut builder = GraphBuilder::with_vertices(vertex_count);
        for &(u, v) in edges {
            builder.add_edge(u, v);
        }
        builder.build()
    }

    pub fn vertex_count(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn edge_count(&self) -> usize {
        self.targets.len() / 2
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> impl ExactSizeIterator<Item = usize> + '_ {
        self.targets[self.offsets[v]..self.offsets[v + 1]]
            .iter()
            .map(|&t| t as usize)
    }

    #[inline]
    pub(crate) fn neighbor_slice(&self, v: usize) -> &[u32] {
        &self.targets[self.offsets[v]..self.offsets[v + 1]]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }

    /// Undirected edges `(u, v)` with `u < v`, ascending.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.vertex_count())
            .flat_map(move |u| self.neighbors(u).filter(move |&v| u < v).map(move |v| (u, v)))
    }

    pub fn basepoints(&self) -> &BTreeMap<String, usize> {
        &self.basepoints
    }

    pub fn basepoint(&self, label: &str) -> Result<usize> {
        self.basepoints
            .get(label)
            .copied()
            .ok_or_else(|| Error::InvalidParameter(format!("unknown basepoint `{label}`")))
    }

    /// Planar grid coordinates, present for graphs embedded in `Z^2`.
    pub fn coords(&self) -> Option<&[[i64; 2]]> {
        self.coords.as_deref()
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.vertex_count() {
            Ok(())
        } else {
            Err(Error::InvalidVertex {
                vertex: v,
                count: self.vertex_count(),
            })
        }
    }

    /// Re-checks symmetry, simplicity, basepoint range and connectivity.
    pub fn validate(&self) -> Result<()> {
        let n = self.vertex_count();
        for u in 0..n {
            let nbrs = self.neighbor_slice(u);
            for w in nbrs.windows(2) {
                if w[0] >= w[1] {
                    return Err(Error::InvalidGraph(format!(
                        "adjacency of {u} is unsorted or has duplicates"
                    )));
                }
            }
            for &v in nbrs {
                let v = v as usize;
                if v == u {
                    return Err(Error::InvalidGraph(format!("self-loop at {u}")));
                }
                if self.neighbor_slice(v).binary_search(&(u as u32)).is_err() {
                    return Err(Error::InvalidGraph(format!("edge {u}->{v} is not symmetric")));
                }
            }
        }
        for (label, &v) in &self.basepoints {
            if v >= n {
                return Err(Error::InvalidGraph(format!(
                    "basepoint `{label}` = {v} out of range"
                )));
            }
        }
        if let Some(coords) = &self.coords {
            if coords.len() != n {
                return Err(Error::InvalidGraph("coordinate count mismatch".into()));
            }
        }
        if n > 0 {
            let reached = crate::space::bfs::component_size(self, 0);
            if reached != n {
                return Err(Error::InvalidGraph(format!(
                    "graph is disconnected: {reached} of {n} vertices reachable from 0"
                )));
            }
        }
        Ok(())
    }

    /// Serializes to the line-oriented text format
    /// (`vertices N`, `edge u v`, `basepoint LABEL v`).
    pub fn to_text(&self) -> String {
        let mut out = String::with_capacity(16 * self.edge_count() + 32);
        let _ = writeln!(out, "vertices {}", self.vertex_count());
        for (u, v) in self.edges() {
            let _ = writeln!(out, "edge {u} {v}");
        }
        for (label, v) in &self.basepoints {
            let _ = writeln!(out, "basepoint {label} {v}");
        }
        out
    }

    /// Parses the text format. Duplicate edges, self-loops, out-of-range
    /// indices and disconnected graphs are rejected. Blank lines and lines
    /// starting with `#` are ignored.
    pub fn parse(text: &str) -> Result<Self> {
        let mut builder: Option<GraphBuilder> = None;
        let mut seen = rustc_hash::FxHashSet::default();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let trimmed = raw.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let parts: Vec<&str> = trimmed.split_whitespace().collect();
            let parse_index = |s: &str| -> Result<usize> {
                s.parse::<usize>().map_err(|_| Error::Parse {
                    line,
                    message: format!("expected a vertex index, found `{s}`"),
                })
            };
            match parts.as_slice() {
                ["vertices", n] => {
                    if builder.is_some() {
                        return Err(Error::Parse {
                            line,
                            message: "repeated `vertices` header".into(),
                        });
                    }
                    builder = Some(GraphBuilder::with_vertices(parse_index(n)?));
                }
                ["edge", u, v] => {
                    let b = builder.as_mut().ok_or_else(|| Error::Parse {
                        line,
                        message: "`edge` before `vertices` header".into(),
                    })?;
                    let (u, v) = (parse_index(u)?, parse_index(v)?);
                    let n = b.vertex_count();
                    if u >= n || v >= n {
                        return Err(Error::Parse {
                            line,
                            message: format!("edge {u} {v} out of range for {n} vertices"),
                        });
                    }
                    if u == v {
                        return Err(Error::Parse {
                            line,
                            message: format!("self-loop at {u}"),
                        });
                    }
                    if !seen.insert((u.min(v), u.max(v))) {
                        return Err(Error::Parse {
                            line,
                            message: format!("duplicate edge {u} {v}"),
                        });
                    }
                    b.add_edge(u, v);
                }
                ["basepoint", label, v] => {
                    let b = builder.as_mut().ok_or_else(|| Error::Parse {
                        line,
                        message: "`basepoint` before `vertices` header".into(),
                    })?;
                    let v = parse_index(v)?;
                    if v >= b.vertex_count() {
                        return Err(Error::Parse {
                            line,
                            message: format!("basepoint {label} = {v} out of range"),
                        });
                    }
                    b.set_basepoint(label, v);
                }
                _ => {
                    return Err(Error::Parse {
                        line,
                        message: format!("unrecognized line `{trimmed}`"),
                    })
                }
            }
        }
        builder
            .ok_or_else(|| Error::Parse {
                line: 0,
                message: "missing `vertices` header".into(),
            })?
            .build()
    }
}

/// Incremental graph construction used by the generators.
#[derive(Debug, Default, Clone)]
pub struct GraphBuilder {
    vertex_count: usize,
    edges: Vec<(u32, u32)>,
    basepoints: BTreeMap<String, usize>,
    coords: Option<Vec<[i64; 2]>>,
}

impl GraphBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_vertices(n: usize) -> Self {
        Self {
            vertex_count: n,
            ..Self::default()
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn add_vertex(&mut self) -> usize {
        self.vertex_count += 1;
        self.vertex_count - 1
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        self.edges.push((u as u32, v as u32));
    }

    /// Appends a path of `len` unit edges starting at `from`. The last vertex
    /// is `end` if given, otherwise a fresh vertex. Returns the last vertex
    /// and pushes every fresh vertex onto `fresh` when provided.
    pub fn add_path(
        &mut self,
        from: usize,
        len: usize,
        end: Option<usize>,
        mut fresh: Option<&mut Vec<usize>>,
    ) -> usize {
        assert!(len >= 1, "paths have at least one edge");
        let mut prev = from;
        for step in 0..len {
            let next = match end {
                Some(e) if step + 1 == len => e,
                _ => {
                    let v = self.add_vertex();
                    if let Some(f) = fresh.as_deref_mut() {
                        f.push(v);
                    }
                    v
                }
            };
            self.add_edge(prev, next);
            prev = next;
        }
        prev
    }

    pub fn set_basepoint(&mut self, label: &str, v: usize) {
        self.basepoints.insert(label.to_string(), v);
    }

    pub fn set_coords(&mut self, coords: Vec<[i64; 2]>) {
        self.coords = Some(coords);
    }

    pub fn build(self) -> Result<Graph> {
        let n = self.vertex_count;
        if n > u32::MAX as usize {
            return Err(Error::InvalidGraph(format!("{n} vertices exceed the u32 index space")));
        }
        let mut degree = vec![0usize; n];
        for &(u, v) in &self.edges {
            let (u, v) = (u as usize, v as usize);
            if u >= n || v >= n {
                return Err(Error::InvalidVertex {
                    vertex: u.max(v),
                    count: n,
                });
            }
            if u == v {
                return Err(Error::InvalidGraph(format!("self-loop at {u}")));
            }
            degree[u] += 1;
            degree[v] += 1;
        }
        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0);
        for d in &degree {
            offsets.push(offsets.last().unwrap() + d);
        }
        let mut fill = offsets.clone();
        let mut targets = vec![0u32; offsets[n]];
        for &(u, v) in &self.edges {
            targets[fill[u as usize]] = v;
            fill[u as usize] += 1;
            targets[fill[v as usize]] = u;
            fill[v as usize] += 1;
        }
        for u in 0..n {
            let slice = &mut targets[offsets[u]..offsets[u + 1]];
            slice.sort_unstable();
            if slice.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidGraph(format!("duplicate edge at vertex {u}")));
            }
        }
        let graph = Graph {
            offsets,
            targets,
            basepoints: self.basepoints,
            coords: self.coords,
        };
        graph.validate()?;
        Ok(graph)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn path_graph_roundtrip() {
        let mut b = GraphBuilder::with_vertices(1);
        let end = b.add_path(0, 3, None, None);
        b.set_basepoint("start", 0);
        b.set_basepoint("end", end);
        let g = b.build().unwrap();
        assert_eq!(g.vertex_count(), 4);
        assert_eq!(g.edge_count(), 3);
        let text = g.to_text();
        assert_eq!(
            text,
            "vertices 4\nedge 0 1\nedge 1 2\nedge 2 3\nbasepoint end 3\nbasepoint start 0\n"
        );
        assert_eq!(Graph::parse(&text).unwrap(), g);
    }

    #[test]
    fn loader_rejects_bad_input() {
        let dup = "vertices 3\nedge 0 1\nedge 1 0\nedge 1 2\n";
        assert!(matches!(Graph::parse(dup), Err(Error::Parse { line: 3, .. })));
        let looped = "vertices 2\nedge 0 1\nedge 1 1\n";
        assert!(matches!(Graph::parse(looped), Err(Error::Parse { line: 3, .. })));
        let range = "vertices 2\nedge 0 2\n";
        assert!(matches!(Graph::parse(range), Err(Error::Parse { line: 2, .. })));
        let base = "vertices 2\nedge 0 1\nbasepoint x 5\n";
        assert!(matches!(Graph::parse(base), Err(Error::Parse { line: 3, .. })));
        let split = "vertices 4\nedge 0 1\nedge 2 3\n";
        assert!(matches!(Graph::parse(split), Err(Error::InvalidGraph(_))));
        assert!(Graph::parse("edge 0 1\n").is_err());
        assert!(Graph::parse("vertices 2\nbogus\n").is_err());
    }

    #[test]
    fn builder_rejects_self_loops_and_duplicates() {
        assert!(Graph::from_edges(2, &[(0, 0)]).is_err());
        assert!(Graph::from_edges(2, &[(0, 1), (1, 0)]).is_err());
        assert!(Graph::from_edges(2, &[(0, 2)]).is_err());
    }

    #[test]
    fn single_vertex_is_valid() {
        let g = Graph::from_edges(1, &[]).unwrap();
        assert_eq!(g.vertex_count(), 1);
        assert_eq!(g.to_text(), "vertices 1\n");
    }
}
