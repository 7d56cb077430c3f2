//! Simple undirected graphs with O(1) adjacency probes.

use std::fmt::Write as _;

use thiserror::Error;

pub type Vertex = usize;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {0} out of range (n = {1})")]
    VertexOutOfRange(Vertex, usize),
    #[error("self-loop on vertex {0}")]
    SelfLoop(Vertex),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(Vertex, Vertex),
    #[error("vertex set is empty")]
    EmptySet,
    #[error("vertex set is not a clique")]
    NotClique,
    #[error("vertices must be distinct (got {0} twice)")]
    SameVertex(Vertex),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// Immutable simple graph on vertices `0..n`.
///
/// Keeps sorted neighbor lists alongside a bit matrix so that both iteration
/// and edge probes are cheap.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    m: usize,
    adj: Vec<Vec<Vertex>>,
    words: usize,
    bits: Vec<u64>,
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("edges", &self.edges())
            .finish()
    }
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        let words = n.div_ceil(64);
        Graph {
            n,
            m: 0,
            adj: vec![Vec::new(); n],
            words,
            bits: vec![0; n * words],
        }
    }

    /// Builds a graph from an edge list, rejecting loops and repeated edges.
    pub fn from_edges(n: usize, edges: &[(Vertex, Vertex)]) -> Result<Self, GraphError> {
        let mut g = Graph::empty(n);
        for &(u, v) in edges {
            g.check_vertex(u)?;
            g.check_vertex(v)?;
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            if g.has_edge(u, v) {
                return Err(GraphError::DuplicateEdge(u.min(v), u.max(v)));
            }
            g.set_bit(u, v);
            g.set_bit(v, u);
            g.adj[u].push(v);
            g.adj[v].push(u);
            g.m += 1;
        }
        for list in &mut g.adj {
            list.sort_unstable();
        }
        Ok(g)
    }

    /// Like [`Graph::from_edges`] but silently skips loops and repeats.
    pub fn from_edges_dedup(n: usize, edges: impl IntoIterator<Item = (Vertex, Vertex)>) -> Self {
        let mut g = Graph::empty(n);
        for (u, v) in edges {
            assert!(u < n && v < n, "vertex out of range");
            if u == v || g.has_edge(u, v) {
                continue;
            }
            g.set_bit(u, v);
            g.set_bit(v, u);
            g.adj[u].push(v);
            g.adj[v].push(u);
            g.m += 1;
        }
        for list in &mut g.adj {
            list.sort_unstable();
        }
        g
    }

    fn set_bit(&mut self, u: Vertex, v: Vertex) {
        self.bits[u * self.words + v / 64] |= 1 << (v % 64);
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.m
    }

    pub fn check_vertex(&self, v: Vertex) -> Result<(), GraphError> {
        if v < self.n {
            Ok(())
        } else {
            Err(GraphError::VertexOutOfRange(v, self.n))
        }
    }

    #[inline]
    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.bits[u * self.words + v / 64] >> (v % 64) & 1 == 1
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    /// Edges as `(u, v)` with `u < v`, sorted lexicographically.
    pub fn edges(&self) -> Vec<(Vertex, Vertex)> {
        let mut out = Vec::with_capacity(self.m);
        for u in 0..self.n {
            for &v in &self.adj[u] {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn is_clique(&self, s: &[Vertex]) -> Result<bool, GraphError> {
        for &v in s {
            self.check_vertex(v)?;
        }
        Ok(self.is_clique_unchecked(s))
    }

    pub(crate) fn is_clique_unchecked(&self, s: &[Vertex]) -> bool {
        for (i, &u) in s.iter().enumerate() {
            for &v in &s[i + 1..] {
                if u == v || !self.has_edge(u, v) {
                    return false;
                }
            }
        }
        true
    }

    /// Splits `V \ q` into vertices complete, anticomplete and proper to `q`.
    pub fn classify_against_clique(&self, q: &[Vertex]) -> Result<NeighborClassification, GraphError> {
        if q.is_empty() {
            return Err(GraphError::EmptySet);
        }
        if !self.is_clique(q)? {
            return Err(GraphError::NotClique);
        }
        Ok(self.classify_unchecked(q))
    }

    /// Classification without the clique precondition; callers that already
    /// know `q` is a clique use this to skip the quadratic check.
    pub(crate) fn classify_unchecked(&self, q: &[Vertex]) -> NeighborClassification {
        let inside = self.membership(q);
        let mut out = NeighborClassification::default();
        for v in 0..self.n {
            if inside[v] {
                continue;
            }
            let hits = q.iter().filter(|&&x| self.has_edge(v, x)).count();
            if hits == q.len() {
                out.complete.push(v);
            } else if hits == 0 {
                out.anticomplete.push(v);
            } else {
                out.proper.push(v);
            }
        }
        out
    }

    /// Vertices outside `q` with at least one but not all neighbors in `q`.
    pub fn proper_set(&self, q: &[Vertex]) -> Vec<Vertex> {
        let inside = self.membership(q);
        (0..self.n)
            .filter(|&v| {
                if inside[v] {
                    return false;
                }
                let hits = q.iter().filter(|&&x| self.has_edge(v, x)).count();
                hits > 0 && hits < q.len()
            })
            .collect()
    }

    pub fn membership(&self, s: &[Vertex]) -> Vec<bool> {
        let mut inside = vec![false; self.n];
        for &v in s {
            inside[v] = true;
        }
        inside
    }

    /// Components ordered by their smallest vertex; each sorted ascending.
    pub fn connected_components(&self) -> Vec<Vec<Vertex>> {
        let mut seen = vec![false; self.n];
        let mut comps = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut head = 0;
            while head < comp.len() {
                let v = comp[head];
                head += 1;
                for &w in &self.adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                    }
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps
    }

    pub fn is_connected(&self) -> bool {
        self.connected_components().len() <= 1
    }

    /// True iff `v ~ u` and every other neighbor of `u` is a neighbor of `v`.
    pub fn is_universal_to(&self, v: Vertex, u: Vertex) -> Result<bool, GraphError> {
        self.check_vertex(v)?;
        self.check_vertex(u)?;
        if u == v {
            return Err(GraphError::SameVertex(u));
        }
        Ok(self.universal_unchecked(v, u))
    }

    pub(crate) fn universal_unchecked(&self, v: Vertex, u: Vertex) -> bool {
        self.has_edge(v, u) && self.adj[u].iter().all(|&w| w == v || self.has_edge(v, w))
    }

    /// Adjacent pair where neither endpoint is universal to the other.
    pub fn is_candidate_pair(&self, u: Vertex, v: Vertex) -> bool {
        u != v
            && self.has_edge(u, v)
            && !self.universal_unchecked(u, v)
            && !self.universal_unchecked(v, u)
    }

    /// All candidate pairs `(u, v)`, `u < v`, in lexicographic order.
    pub fn candidate_pairs(&self) -> Vec<(Vertex, Vertex)> {
        self.edges()
            .into_iter()
            .filter(|&(u, v)| self.is_candidate_pair(u, v))
            .collect()
    }

    /// Subgraph induced by `vs`; vertex `vs[i]` becomes `i`.
    pub fn induced(&self, vs: &[Vertex]) -> Graph {
        let mut pos = vec![usize::MAX; self.n];
        for (i, &v) in vs.iter().enumerate() {
            pos[v] = i;
        }
        let mut edges = Vec::new();
        for (i, &v) in vs.iter().enumerate() {
            for &w in &self.adj[v] {
                let j = pos[w];
                if j != usize::MAX && i < j {
                    edges.push((i, j));
                }
            }
        }
        Graph::from_edges_dedup(vs.len(), edges)
    }

    /// Canonical text form: `p n m` followed by sorted `e u v` lines, 1-based.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        writeln!(s, "p {} {}", self.n, self.m).unwrap();
        for (u, v) in self.edges() {
            writeln!(s, "e {} {}", u + 1, v + 1).unwrap();
        }
        s
    }

    /// Parses the text form. Blank lines and lines starting with `c` or `#`
    /// are ignored.
    pub fn parse(text: &str) -> Result<Graph, GraphError> {
        let err = |line: usize, msg: &str| GraphError::Parse { line, msg: msg.to_string() };
        let mut header: Option<(usize, usize)> = None;
        let mut edges = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let t = raw.trim();
            if t.is_empty() || t.starts_with('c') || t.starts_with('#') {
                continue;
            }
            let mut parts = t.split_whitespace();
            let tag = parts.next().unwrap();
            let nums: Vec<usize> = parts
                .map(|p| p.parse::<usize>().map_err(|_| err(line, "expected a nonnegative integer")))
                .collect::<Result<_, _>>()?;
            match tag {
                "p" => {
                    if header.is_some() {
                        return Err(err(line, "duplicate header"));
                    }
                    if nums.len() != 2 {
                        return Err(err(line, "header must be `p <n> <m>`"));
                    }
                    header = Some((nums[0], nums[1]));
                }
                "e" => {
                    let (n, _) = header.ok_or_else(|| err(line, "edge before header"))?;
                    if nums.len() != 2 {
                        return Err(err(line, "edge must be `e <u> <v>`"));
                    }
                    if nums[0] == 0 || nums[1] == 0 || nums[0] > n || nums[1] > n {
                        return Err(err(line, "vertex id out of range"));
                    }
                    edges.push((nums[0] - 1, nums[1] - 1));
                }
                _ => return Err(err(line, "unknown line tag")),
            }
        }
        let (n, m) = header.ok_or_else(|| err(0, "missing `p` header"))?;
        if edges.len() != m {
            return Err(err(0, &format!("header declares {m} edges, found {}", edges.len())));
        }
        Graph::from_edges(n, &edges)
    }
}

/// Tri-partition of `V \ Q` relative to a clique `Q`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct NeighborClassification {
    pub complete: Vec<Vertex>,
    pub anticomplete: Vec<Vertex>,
    pub proper: Vec<Vertex>,
}

/// Small named graphs used by tests, examples and the CLI.
pub mod named {
    use super::Graph;

    pub fn cycle(n: usize) -> Graph {
        Graph::from_edges_dedup(n, (0..n).map(|i| (i, (i + 1) % n)))
    }

    pub fn path(n: usize) -> Graph {
        Graph::from_edges_dedup(n, (1..n).map(|i| (i - 1, i)))
    }

    pub fn complete(n: usize) -> Graph {
        Graph::from_edges_dedup(n, (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))))
    }

    /// Center 0, leaves 1..=3.
    pub fn claw() -> Graph {
        Graph::from_edges_dedup(4, [(0, 1), (0, 2), (0, 3)])
    }

    pub fn disjoint_union(a: &Graph, b: &Graph) -> Graph {
        let off = a.vertex_count();
        let edges = a
            .edges()
            .into_iter()
            .chain(b.edges().into_iter().map(|(u, v)| (u + off, v + off)));
        Graph::from_edges_dedup(off + b.vertex_count(), edges)
    }
}

#[cfg(test)]
mod tests {
    use super::named::*;
    use super::*;

    #[test]
    fn classification_on_c4() {
        let g = cycle(4);
        let c = g.classify_against_clique(&[0, 1]).unwrap();
        assert!(c.complete.is_empty() && c.anticomplete.is_empty());
        assert_eq!(c.proper, vec![2, 3]);
        let all = g.classify_against_clique(&[0, 1, 2, 3]);
        assert_eq!(all, Err(GraphError::NotClique));
    }

    #[test]
    fn classification_of_whole_clique_is_empty() {
        let g = complete(5);
        let c = g.classify_against_clique(&[0, 1, 2, 3, 4]).unwrap();
        assert_eq!(c, NeighborClassification::default());
    }

    #[test]
    fn classification_on_claw() {
        let g = claw();
        let c = g.classify_against_clique(&[0, 1]).unwrap();
        assert_eq!(c.proper, vec![2, 3]);
        assert_eq!(g.classify_against_clique(&[]), Err(GraphError::EmptySet));
    }

    #[test]
    fn clique_checks() {
        let g = cycle(4);
        assert!(g.is_clique(&[]).unwrap());
        assert!(g.is_clique(&[0, 1]).unwrap());
        assert!(!g.is_clique(&[0, 2]).unwrap());
        assert!(g.is_clique(&[7]).is_err());
    }

    #[test]
    fn components() {
        assert!(Graph::empty(0).connected_components().is_empty());
        assert_eq!(cycle(4).connected_components(), vec![vec![0, 1, 2, 3]]);
        let two = Graph::from_edges(4, &[(0, 2), (1, 3)]).unwrap();
        assert_eq!(two.connected_components(), vec![vec![0, 2], vec![1, 3]]);
    }

    #[test]
    fn universality() {
        let k3 = complete(3);
        for u in 0..3 {
            for v in 0..3 {
                if u != v {
                    assert!(k3.is_universal_to(u, v).unwrap());
                }
            }
        }
        assert!(!cycle(4).is_universal_to(0, 1).unwrap());
        let star = claw();
        assert!(star.is_universal_to(0, 1).unwrap());
        assert!(!star.is_universal_to(1, 0).unwrap());
        assert_eq!(star.is_universal_to(2, 2), Err(GraphError::SameVertex(2)));
    }

    #[test]
    fn rejects_bad_edges() {
        assert_eq!(Graph::from_edges(3, &[(1, 1)]), Err(GraphError::SelfLoop(1)));
        assert_eq!(Graph::from_edges(3, &[(0, 1), (1, 0)]), Err(GraphError::DuplicateEdge(0, 1)));
        assert!(Graph::from_edges(3, &[(0, 3)]).is_err());
    }

    #[test]
    fn text_round_trip() {
        let g = Graph::from_edges(5, &[(3, 4), (0, 2), (2, 1)]).unwrap();
        let text = g.to_text();
        assert_eq!(text, "p 5 3\ne 1 3\ne 2 3\ne 4 5\n");
        assert_eq!(Graph::parse(&text).unwrap(), g);
        let commented = "c hello\n\np 2 1\n# step\ne 2 1\n";
        assert_eq!(Graph::parse(commented).unwrap(), path(2));
        assert!(Graph::parse("p 2 2\ne 1 2\n").is_err());
        assert!(Graph::parse("e 1 2\n").is_err());
        assert!(Graph::parse("p 2 1\ne 1 3\n").is_err());
    }

    #[test]
    fn degree_sum() {
        let g = cycle(7);
        let total: usize = (0..7).map(|v| g.degree(v)).sum();
        assert_eq!(total, 2 * g.edge_count());
    }
}
