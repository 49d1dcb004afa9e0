//! Finite directed multigraphs, their adjacency data and the graph moves used
//! by the rest of the crate.
//!
//! Vertices and edges keep the order in which they were declared; every
//! matrix produced here is indexed by that order.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::IntMatrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeId(pub usize);

#[derive(Debug, Clone, PartialEq, Eq)]
struct EdgeData {
    name: String,
    source: VertexId,
    range: VertexId,
    weight: i64,
}

/// A finite directed graph with named vertices and edges and integer edge
/// weights (weight 1 everywhere gives the standard grading).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    name: String,
    vertices: Vec<String>,
    edges: Vec<EdgeData>,
    vertex_index: HashMap<String, VertexId>,
    edge_index: HashMap<String, EdgeId>,
    out_edges: Vec<Vec<EdgeId>>,
    in_edges: Vec<Vec<EdgeId>>,
}

/// An edge declaration: name, source, range, weight.
pub type EdgeSpec = (String, String, String, i64);

fn valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    name != "t" && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Graph {
    pub fn new(name: &str, vertices: &[&str], edges: &[(&str, &str, &str)]) -> Result<Graph> {
        let specs: Vec<EdgeSpec> = edges
            .iter()
            .map(|(n, s, r)| (n.to_string(), s.to_string(), r.to_string(), 1))
            .collect();
        let vs: Vec<String> = vertices.iter().map(|v| v.to_string()).collect();
        Graph::with_weights(name, vs, specs)
    }

    pub fn with_weights(name: &str, vertices: Vec<String>, edges: Vec<EdgeSpec>) -> Result<Graph> {
        let mut vertex_index = HashMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if !valid_name(v) {
                return Err(Error::InvalidGraph(format!("invalid vertex name `{v}`")));
            }
            if vertex_index.insert(v.clone(), VertexId(i)).is_some() {
                return Err(Error::InvalidGraph(format!("duplicate vertex `{v}`")));
            }
        }
        let mut edge_index = HashMap::new();
        let mut data = Vec::with_capacity(edges.len());
        let mut out_edges = vec![Vec::new(); vertices.len()];
        let mut in_edges = vec![Vec::new(); vertices.len()];
        for (i, (name, src, dst, weight)) in edges.into_iter().enumerate() {
            if !valid_name(&name) {
                return Err(Error::InvalidGraph(format!("invalid edge name `{name}`")));
            }
            if vertex_index.contains_key(&name) {
                return Err(Error::InvalidGraph(format!("edge `{name}` shadows a vertex")));
            }
            if weight == 0 {
                return Err(Error::InvalidGraph(format!("edge `{name}` has weight 0")));
            }
            let source = *vertex_index
                .get(&src)
                .ok_or_else(|| Error::UnknownVertex(src.clone()))?;
            let range = *vertex_index
                .get(&dst)
                .ok_or_else(|| Error::UnknownVertex(dst.clone()))?;
            if edge_index.insert(name.clone(), EdgeId(i)).is_some() {
                return Err(Error::InvalidGraph(format!("duplicate edge `{name}`")));
            }
            out_edges[source.0].push(EdgeId(i));
            in_edges[range.0].push(EdgeId(i));
            data.push(EdgeData { name, source, range, weight });
        }
        Ok(Graph {
            name: name.to_string(),
            vertices,
            edges: data,
            vertex_index,
            edge_index,
            out_edges,
            in_edges,
        })
    }

    /// The rose with `n` petals: one vertex `v` and loops `e1..en`
    /// (`e`, `f` for two petals, `e`, `f`, `g` for three).
    pub fn rose(n: usize) -> Graph {
        let names: Vec<String> = if n <= 3 {
            ["e", "f", "g"][..n].iter().map(|s| s.to_string()).collect()
        } else {
            (1..=n).map(|i| format!("e{i}")).collect()
        };
        let edges = names
            .into_iter()
            .map(|e| (e, "v".to_string(), "v".to_string(), 1))
            .collect();
        Graph::with_weights(&format!("rose{n}"), vec!["v".into()], edges).expect("rose")
    }

    /// `v -> v`, `v -> w`, `w -> v`.
    pub fn fibonacci() -> Graph {
        Graph::new(
            "fibonacci",
            &["v", "w"],
            &[("a", "v", "v"), ("b", "v", "w"), ("c", "w", "v")],
        )
        .expect("fibonacci")
    }

    /// Two vertices with all four possible edges.
    pub fn complete2() -> Graph {
        Graph::new(
            "j2",
            &["a", "b"],
            &[("x", "a", "a"), ("y", "a", "b"), ("z", "b", "a"), ("w", "b", "b")],
        )
        .expect("j2")
    }

    /// The cycle `v1 -> v2 -> ... -> vn -> v1`.
    pub fn cycle(n: usize) -> Graph {
        let vs: Vec<String> = (1..=n).map(|i| format!("v{i}")).collect();
        let edges = (0..n)
            .map(|i| (format!("c{}", i + 1), vs[i].clone(), vs[(i + 1) % n].clone(), 1))
            .collect();
        Graph::with_weights(&format!("cycle{n}"), vs, edges).expect("cycle")
    }

    /// A three-cycle with a loop at one vertex; primitive with exponent 4.
    pub fn triangle_with_loop() -> Graph {
        Graph::new(
            "triloop",
            &["a", "b", "c"],
            &[("l", "a", "a"), ("p", "a", "b"), ("q", "b", "c"), ("r", "c", "a")],
        )
        .expect("triloop")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.vertices.len()).map(VertexId)
    }

    pub fn edges(&self) -> impl Iterator<Item = EdgeId> + '_ {
        (0..self.edges.len()).map(EdgeId)
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.vertices[v.0]
    }

    pub fn edge_name(&self, e: EdgeId) -> &str {
        &self.edges[e.0].name
    }

    pub fn vertex(&self, name: &str) -> Option<VertexId> {
        self.vertex_index.get(name).copied()
    }

    pub fn edge(&self, name: &str) -> Option<EdgeId> {
        self.edge_index.get(name).copied()
    }

    pub fn source(&self, e: EdgeId) -> VertexId {
        self.edges[e.0].source
    }

    pub fn range(&self, e: EdgeId) -> VertexId {
        self.edges[e.0].range
    }

    pub fn weight(&self, e: EdgeId) -> i64 {
        self.edges[e.0].weight
    }

    pub fn has_standard_weights(&self) -> bool {
        self.edges.iter().all(|e| e.weight == 1)
    }

    /// Edges with source `v`, in declaration order.
    pub fn out_edges(&self, v: VertexId) -> &[EdgeId] {
        &self.out_edges[v.0]
    }

    /// Edges with range `v`, in declaration order.
    pub fn in_edges(&self, v: VertexId) -> &[EdgeId] {
        &self.in_edges[v.0]
    }

    pub fn is_sink(&self, v: VertexId) -> bool {
        self.out_edges[v.0].is_empty()
    }

    pub fn is_source(&self, v: VertexId) -> bool {
        self.in_edges[v.0].is_empty()
    }

    pub fn regular_vertices(&self) -> Vec<VertexId> {
        self.vertices().filter(|&v| !self.is_sink(v)).collect()
    }

    pub fn is_regular(&self) -> bool {
        self.vertices().all(|v| !self.is_sink(v))
    }

    pub fn is_essential(&self) -> bool {
        self.is_regular() && self.vertices().all(|v| !self.is_source(v))
    }

    /// Strongly connected with at least one edge.
    pub fn is_irreducible(&self) -> bool {
        let n = self.vertex_count();
        if n == 0 || self.edges.is_empty() {
            return false;
        }
        let reach = |forward: bool| {
            let mut seen = vec![false; n];
            let mut stack = vec![0usize];
            seen[0] = true;
            while let Some(u) = stack.pop() {
                let next = if forward { &self.out_edges[u] } else { &self.in_edges[u] };
                for &e in next {
                    let w = if forward { self.range(e).0 } else { self.source(e).0 };
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
            seen.into_iter().all(|s| s)
        };
        reach(true) && reach(false)
    }

    /// Reduced adjacency matrix: rows are the regular vertices, columns all
    /// vertices. Square when the graph is regular.
    pub fn adjacency_matrix(&self) -> IntMatrix {
        let rows = self.regular_vertices();
        let mut m = IntMatrix::zeros(rows.len(), self.vertex_count());
        for (i, &v) in rows.iter().enumerate() {
            for &e in self.out_edges(v) {
                m.add_to(i, self.range(e).0, 1);
            }
        }
        m
    }

    /// Full square adjacency matrix (sink rows are zero).
    pub fn square_adjacency(&self) -> IntMatrix {
        let n = self.vertex_count();
        let mut m = IntMatrix::zeros(n, n);
        for e in self.edges() {
            m.add_to(self.source(e).0, self.range(e).0, 1);
        }
        m
    }

    pub fn classify(&self) -> VertexClassification {
        let sinks: Vec<VertexId> = self.vertices().filter(|&v| self.is_sink(v)).collect();
        let sources: Vec<VertexId> = self.vertices().filter(|&v| self.is_source(v)).collect();
        let regular = self.regular_vertices();
        VertexClassification {
            is_regular: sinks.is_empty(),
            is_essential: sinks.is_empty() && sources.is_empty(),
            sinks,
            sources,
            regular,
        }
    }

    /// Least `N >= 1` with every entry of `A^N` positive, searching up to the
    /// Wielandt bound `n^2 - 2n + 2`. `None` means not primitive.
    pub fn primitivity_exponent(&self) -> Result<Option<usize>> {
        if !self.is_regular() {
            return Err(Error::NonRegularGraph);
        }
        let n = self.vertex_count();
        let base: Vec<Vec<bool>> = {
            let a = self.square_adjacency();
            (0..n).map(|i| (0..n).map(|j| a.get(i, j).sign() == num_bigint::Sign::Plus).collect()).collect()
        };
        let bound = (n * n + 2).saturating_sub(2 * n).max(1);
        let mut power = base.clone();
        for exponent in 1..=bound {
            if power.iter().all(|row| row.iter().all(|&b| b)) {
                return Ok(Some(exponent));
            }
            power = (0..n)
                .map(|i| (0..n).map(|j| (0..n).any(|k| power[i][k] && base[k][j])).collect())
                .collect();
        }
        Ok(None)
    }

    /// The dual graph: same vertices, every edge reversed. Edge `e` becomes
    /// `e_t`; an edge already named `x_t` becomes `x`, so dualizing twice
    /// returns the original graph.
    pub fn dual(&self) -> Graph {
        let flip = |s: &str| match s.strip_suffix("_t") {
            Some(base) if !base.is_empty() => base.to_string(),
            _ => format!("{s}_t"),
        };
        let edges = self
            .edges
            .iter()
            .map(|e| {
                (
                    flip(&e.name),
                    self.vertices[e.range.0].clone(),
                    self.vertices[e.source.0].clone(),
                    e.weight,
                )
            })
            .collect();
        Graph::with_weights(&flip(&self.name), self.vertices.clone(), edges)
            .expect("dual of a valid graph is valid")
    }

    /// Removes a source `v` that is not a sink, together with every edge
    /// leaving it.
    pub fn eliminate_source(&self, v: VertexId) -> Result<Graph> {
        if !self.is_source(v) || self.is_sink(v) {
            return Err(Error::NotAnEliminableSource(self.vertex_name(v).to_string()));
        }
        if self.vertex_count() < 2 {
            return Err(Error::LastVertex);
        }
        let vertices = self
            .vertices()
            .filter(|&w| w != v)
            .map(|w| self.vertex_name(w).to_string())
            .collect();
        let edges = self
            .edges
            .iter()
            .filter(|e| e.source != v)
            .map(|e| {
                (
                    e.name.clone(),
                    self.vertices[e.source.0].clone(),
                    self.vertices[e.range.0].clone(),
                    e.weight,
                )
            })
            .collect();
        Graph::with_weights(&self.name, vertices, edges)
    }

    /// All paths of length `n` ending at `v`, in lexicographic order of
    /// their edge sequences.
    pub fn paths_into(&self, v: VertexId, n: usize) -> Vec<Path> {
        let mut current = vec![Path::vertex(v)];
        for _ in 0..n {
            let mut next = Vec::new();
            for p in &current {
                for &e in self.in_edges(p.start) {
                    let mut edges = Vec::with_capacity(p.edges.len() + 1);
                    edges.push(e);
                    edges.extend_from_slice(&p.edges);
                    next.push(Path { start: self.source(e), edges });
                }
            }
            current = next;
        }
        current.sort_by(|a, b| a.edges.cmp(&b.edges));
        current
    }

    /// All paths starting at `v` of length at most `bound`, shortest first.
    pub fn paths_from(&self, v: VertexId, bound: usize) -> Vec<Path> {
        let mut all = vec![Path::vertex(v)];
        let mut frontier = all.clone();
        for _ in 0..bound {
            let mut next = Vec::new();
            for p in &frontier {
                for &e in self.out_edges(p.range(self)) {
                    let mut q = p.clone();
                    q.edges.push(e);
                    next.push(q);
                }
            }
            all.extend(next.iter().cloned());
            frontier = next;
        }
        all
    }

    /// Paths of length `n` from `from` to `to`, lexicographically ordered.
    pub fn paths_between(&self, from: VertexId, to: VertexId, n: usize) -> Vec<Path> {
        self.paths_into(to, n).into_iter().filter(|p| p.start == from).collect()
    }

    /// Parses the line-oriented graph format.
    pub fn parse(text: &str) -> Result<Graph> {
        let err = |line: usize, message: String| Error::Parse { line, message };
        let mut name: Option<String> = None;
        let mut vertices: Option<Vec<String>> = None;
        let mut edges = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let lineno = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            if name.is_none() {
                let rest = line
                    .strip_prefix("graph")
                    .filter(|r| r.starts_with(char::is_whitespace))
                    .ok_or_else(|| err(lineno, "expected `graph <name>`".into()))?;
                let n = rest.trim();
                if n.is_empty() || n.contains(char::is_whitespace) {
                    return Err(err(lineno, "graph name must be a single word".into()));
                }
                name = Some(n.to_string());
            } else if let Some(rest) = line.strip_prefix("vertices:") {
                if vertices.is_some() {
                    return Err(err(lineno, "duplicate `vertices:` line".into()));
                }
                vertices = Some(rest.split_whitespace().map(str::to_string).collect());
            } else if let Some(rest) = line.strip_prefix("edge ") {
                if vertices.is_none() {
                    return Err(err(lineno, "`edge` before `vertices:`".into()));
                }
                let (ename, body) = rest
                    .split_once(':')
                    .ok_or_else(|| err(lineno, "expected `edge <name>: <src> -> <dst>`".into()))?;
                let tokens: Vec<&str> = body.split_whitespace().collect();
                let weight = match tokens.as_slice() {
                    [_, "->", _] => 1,
                    [_, "->", _, "weight", k] => k
                        .parse::<i64>()
                        .map_err(|_| err(lineno, format!("invalid weight `{k}`")))?,
                    _ => return Err(err(lineno, "expected `<src> -> <dst> [weight <k>]`".into())),
                };
                edges.push((ename.trim().to_string(), tokens[0].to_string(), tokens[2].to_string(), weight, lineno));
            } else {
                return Err(err(lineno, format!("unrecognized line `{line}`")));
            }
        }
        let name = name.ok_or_else(|| err(1, "empty graph file".into()))?;
        let vertices = vertices.ok_or_else(|| err(1, "missing `vertices:` line".into()))?;
        // re-validate edge by edge so errors carry the right line number
        let mut accepted: Vec<EdgeSpec> = Vec::new();
        for (ename, s, r, w, lineno) in edges {
            accepted.push((ename, s, r, w));
            if let Err(e) = Graph::with_weights(&name, vertices.clone(), accepted.clone()) {
                return Err(err(lineno, e.to_string()));
            }
        }
        Graph::with_weights(&name, vertices, accepted).map_err(|e| err(1, e.to_string()))
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "graph {}", self.name)?;
        writeln!(f, "vertices: {}", self.vertices.join(" "))?;
        for e in &self.edges {
            write!(
                f,
                "edge {}: {} -> {}",
                e.name, self.vertices[e.source.0], self.vertices[e.range.0]
            )?;
            if e.weight != 1 {
                write!(f, " weight {}", e.weight)?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexClassification {
    pub sinks: Vec<VertexId>,
    pub sources: Vec<VertexId>,
    pub regular: Vec<VertexId>,
    pub is_regular: bool,
    pub is_essential: bool,
}

/// A path in a graph. The empty path at a vertex is stored with no edges and
/// `start` set to that vertex.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Path {
    pub start: VertexId,
    pub edges: Vec<EdgeId>,
}

impl Path {
    pub fn vertex(v: VertexId) -> Path {
        Path { start: v, edges: Vec::new() }
    }

    pub fn edge(g: &Graph, e: EdgeId) -> Path {
        Path { start: g.source(e), edges: vec![e] }
    }

    pub fn from_edges(g: &Graph, edges: Vec<EdgeId>) -> Option<Path> {
        let first = *edges.first()?;
        if edges.windows(2).any(|w| g.range(w[0]) != g.source(w[1])) {
            return None;
        }
        Some(Path { start: g.source(first), edges })
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn source(&self) -> VertexId {
        self.start
    }

    pub fn range(&self, g: &Graph) -> VertexId {
        self.edges.last().map_or(self.start, |&e| g.range(e))
    }

    pub fn weighted_degree(&self, g: &Graph) -> i64 {
        self.edges.iter().map(|&e| g.weight(e)).sum()
    }

    /// `self` followed by `other`; the caller guarantees the endpoints meet.
    pub fn concat(&self, other: &Path) -> Path {
        let mut edges = self.edges.clone();
        edges.extend_from_slice(&other.edges);
        Path { start: self.start, edges }
    }

    /// If `self` is a prefix of `other`, the remainder of `other`.
    pub fn strip_prefix_of(&self, other: &Path, g: &Graph) -> Option<Path> {
        if self.start != other.start || !other.edges.starts_with(&self.edges) {
            return None;
        }
        Some(Path { start: self.range(g), edges: other.edges[self.edges.len()..].to_vec() })
    }

    pub fn display(&self, g: &Graph) -> String {
        if self.edges.is_empty() {
            g.vertex_name(self.start).to_string()
        } else {
            self.edges.iter().map(|&e| g.edge_name(e)).collect::<Vec<_>>().join(" ")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int_rows(m: &IntMatrix) -> Vec<Vec<i64>> {
        m.to_i64_rows()
    }

    #[test]
    fn adjacency_examples() {
        assert_eq!(int_rows(&Graph::rose(2).adjacency_matrix()), vec![vec![2]]);
        assert_eq!(
            int_rows(&Graph::fibonacci().adjacency_matrix()),
            vec![vec![1, 1], vec![1, 0]]
        );
        let g = Graph::new("s", &["u", "w"], &[("e", "u", "w")]).unwrap();
        assert_eq!(int_rows(&g.adjacency_matrix()), vec![vec![0, 1]]);
    }

    #[test]
    fn classification_examples() {
        let c = Graph::rose(2).classify();
        assert!(c.is_regular && c.is_essential);
        let point = Graph::new("p", &["v"], &[]).unwrap().classify();
        assert_eq!(point.sinks, vec![VertexId(0)]);
        assert!(!point.is_regular);
        let g = Graph::new("s", &["v", "w"], &[("e", "v", "w")]).unwrap().classify();
        assert_eq!(g.sources, vec![VertexId(0)]);
        assert_eq!(g.sinks, vec![VertexId(1)]);
        assert_eq!(g.regular, vec![VertexId(0)]);
    }

    #[test]
    fn row_sums_count_out_edges() {
        for g in [Graph::rose(3), Graph::fibonacci(), Graph::complete2(), Graph::triangle_with_loop()] {
            let a = g.adjacency_matrix();
            for (i, v) in g.regular_vertices().into_iter().enumerate() {
                let sum: i64 = (0..g.vertex_count()).map(|j| a.get_i64(i, j)).sum();
                assert_eq!(sum as usize, g.out_edges(v).len());
            }
        }
    }

    #[test]
    fn primitivity() {
        assert_eq!(Graph::rose(2).primitivity_exponent().unwrap(), Some(1));
        assert_eq!(Graph::fibonacci().primitivity_exponent().unwrap(), Some(2));
        assert_eq!(Graph::cycle(2).primitivity_exponent().unwrap(), None);
        assert_eq!(Graph::triangle_with_loop().primitivity_exponent().unwrap(), Some(4));
        let g = Graph::new("s", &["v", "w"], &[("e", "v", "w")]).unwrap();
        assert_eq!(g.primitivity_exponent(), Err(Error::NonRegularGraph));
    }

    #[test]
    fn dual_examples() {
        let r = Graph::rose(2);
        assert_eq!(r.dual().adjacency_matrix(), r.adjacency_matrix());
        let g = Graph::new("s", &["v", "w"], &[("e", "v", "w")]).unwrap();
        let d = g.dual();
        let e = d.edge("e_t").unwrap();
        assert_eq!(d.vertex_name(d.source(e)), "w");
        assert_eq!(d.vertex_name(d.range(e)), "v");
        assert_eq!(d.dual(), g);
        let f = Graph::fibonacci();
        assert_eq!(f.dual().square_adjacency(), f.square_adjacency().transpose());
    }

    #[test]
    fn source_elimination() {
        let g = Graph::new("s", &["u", "w"], &[("e", "u", "w"), ("l", "w", "w")]).unwrap();
        let h = g.eliminate_source(g.vertex("u").unwrap()).unwrap();
        assert_eq!(h.vertex_count(), 1);
        assert_eq!(h.edge_count(), 1);
        assert_eq!(h.adjacency_matrix().to_i64_rows(), vec![vec![1]]);
        assert!(matches!(
            g.eliminate_source(g.vertex("w").unwrap()),
            Err(Error::NotAnEliminableSource(_))
        ));
        let iso = Graph::new("i", &["x", "y"], &[("l", "y", "y")]).unwrap();
        assert!(matches!(
            iso.eliminate_source(iso.vertex("x").unwrap()),
            Err(Error::NotAnEliminableSource(_))
        ));
    }

    #[test]
    fn path_enumeration_examples() {
        let r = Graph::rose(2);
        let v = r.vertex("v").unwrap();
        let ps: Vec<String> = r.paths_into(v, 2).iter().map(|p| p.display(&r)).collect();
        assert_eq!(ps, vec!["e e", "e f", "f e", "f f"]);
        let f = Graph::fibonacci();
        let w = f.vertex("w").unwrap();
        let ps: Vec<String> = f.paths_into(w, 1).iter().map(|p| p.display(&f)).collect();
        assert_eq!(ps, vec!["b"]);
        assert_eq!(f.paths_into(w, 0), vec![Path::vertex(w)]);
    }

    #[test]
    fn path_recursion_matches_enumeration() {
        for g in [Graph::rose(2), Graph::fibonacci(), Graph::complete2(), Graph::triangle_with_loop(), Graph::cycle(2)] {
            let a = g.square_adjacency();
            for n in 0..5 {
                for v in g.vertices() {
                    let next = g.paths_into(v, n + 1).len() as i64;
                    let rec: i64 = g
                        .vertices()
                        .map(|w| a.get_i64(w.0, v.0) * g.paths_into(w, n).len() as i64)
                        .sum();
                    assert_eq!(next, rec);
                }
            }
        }
    }

    #[test]
    fn parse_round_trip_and_errors() {
        let text = "# fib\ngraph fib\nvertices: v w\nedge a: v -> v\nedge b: v -> w weight 3\nedge c: w -> v\n";
        let g = Graph::parse(text).unwrap();
        assert_eq!(g.weight(g.edge("b").unwrap()), 3);
        assert_eq!(Graph::parse(&g.to_string()).unwrap(), g);
        let bad = "graph x\nvertices: v\nedge e: v -> q\n";
        assert_eq!(Graph::parse(bad).unwrap_err().code(), "parse");
        match Graph::parse(bad).unwrap_err() {
            Error::Parse { line, .. } => assert_eq!(line, 3),
            other => panic!("{other:?}"),
        }
        assert!(Graph::parse("vertices: v\n").is_err());
    }
}
