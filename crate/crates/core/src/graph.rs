//! The signed graph type, switching, connectivity and path signs.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;
use std::ops::{Mul, Neg};

use crate::{Error, Result};

/// An edge sign.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Neg,
    Pos,
}

impl Sign {
    pub fn from_int(value: i64) -> Result<Sign> {
        match value {
            1 => Ok(Sign::Pos),
            -1 => Ok(Sign::Neg),
            other => Err(Error::BadSign(other)),
        }
    }

    pub fn to_int(self) -> i64 {
        match self {
            Sign::Pos => 1,
            Sign::Neg => -1,
        }
    }

    pub fn is_positive(self) -> bool {
        self == Sign::Pos
    }
}

impl Mul for Sign {
    type Output = Sign;

    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Pos
        } else {
            Sign::Neg
        }
    }
}

impl Neg for Sign {
    type Output = Sign;

    fn neg(self) -> Sign {
        match self {
            Sign::Pos => Sign::Neg,
            Sign::Neg => Sign::Pos,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Pos => "+",
            Sign::Neg => "-",
        })
    }
}

/// A path given by its vertex sequence. Vertices are pairwise distinct.
///
/// Whether consecutive vertices are adjacent is a property relative to a
/// graph and is checked by [`SignedGraph::path_sign`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexPath(Vec<usize>);

impl VertexPath {
    pub fn new(vertices: Vec<usize>) -> Result<VertexPath> {
        if vertices.is_empty() {
            return Err(Error::NotAPath("empty vertex sequence".into()));
        }
        let mut seen = vertices.clone();
        seen.sort_unstable();
        if let Some(w) = seen.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::NotAPath(format!("vertex {} repeated", w[0])));
        }
        Ok(VertexPath(vertices))
    }

    pub fn single(vertex: usize) -> VertexPath {
        VertexPath(vec![vertex])
    }

    pub fn vertices(&self) -> &[usize] {
        &self.0
    }

    /// Number of edges.
    pub fn len(&self) -> usize {
        self.0.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn start(&self) -> usize {
        self.0[0]
    }

    pub fn end(&self) -> usize {
        self.0[self.0.len() - 1]
    }

    pub fn into_walk(self) -> Walk {
        Walk(self.0)
    }
}

impl fmt::Display for VertexPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_vertices(f, &self.0)
    }
}

/// A vertex sequence in which vertices may repeat. Closed walks (first vertex
/// equal to the last) represent cycles.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Walk(Vec<usize>);

impl Walk {
    pub fn new(vertices: Vec<usize>) -> Result<Walk> {
        if vertices.is_empty() {
            return Err(Error::NotAPath("empty vertex sequence".into()));
        }
        Ok(Walk(vertices))
    }

    pub fn vertices(&self) -> &[usize] {
        &self.0
    }

    /// Number of edges traversed.
    pub fn len(&self) -> usize {
        self.0.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn is_closed(&self) -> bool {
        self.0.len() > 1 && self.0[0] == self.0[self.0.len() - 1]
    }

    /// True for a closed walk of length at least 3 whose vertices, apart
    /// from the repeated endpoint, are pairwise distinct.
    pub fn is_cycle(&self) -> bool {
        if !self.is_closed() || self.len() < 3 {
            return false;
        }
        VertexPath::new(self.0[..self.0.len() - 1].to_vec()).is_ok()
    }
}

impl fmt::Display for Walk {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_vertices(f, &self.0)
    }
}

fn write_vertices(f: &mut fmt::Formatter<'_>, vertices: &[usize]) -> fmt::Result {
    for (i, v) in vertices.iter().enumerate() {
        if i > 0 {
            f.write_str(" ")?;
        }
        write!(f, "{v}")?;
    }
    Ok(())
}

/// A simple, finite signed graph on vertices `0..vertex_count`.
///
/// Immutable after construction. Edges are keyed on the unordered pair with
/// the smaller endpoint first; each vertex also keeps a neighbor list sorted
/// by neighbor index.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SignedGraph {
    order: usize,
    edges: BTreeMap<(usize, usize), Sign>,
    adjacency: Vec<Vec<(usize, Sign)>>,
}

fn canonical(u: usize, v: usize) -> (usize, usize) {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

impl SignedGraph {
    /// Builds a graph from integer signs, rejecting anything outside {+1, -1}.
    pub fn new<I>(vertex_count: usize, edges: I) -> Result<SignedGraph>
    where
        I: IntoIterator<Item = (usize, usize, i64)>,
    {
        let mut signed = Vec::new();
        for (u, v, s) in edges {
            signed.push((u, v, Sign::from_int(s)?));
        }
        SignedGraph::from_edges(vertex_count, signed)
    }

    pub fn from_edges<I>(vertex_count: usize, edges: I) -> Result<SignedGraph>
    where
        I: IntoIterator<Item = (usize, usize, Sign)>,
    {
        if vertex_count == 0 {
            return Err(Error::NoVertices);
        }
        let mut map = BTreeMap::new();
        for (u, v, s) in edges {
            for w in [u, v] {
                if w >= vertex_count {
                    return Err(Error::VertexOutOfRange {
                        vertex: w,
                        order: vertex_count,
                    });
                }
            }
            if u == v {
                return Err(Error::LoopEdge(u));
            }
            let key = canonical(u, v);
            if map.insert(key, s).is_some() {
                return Err(Error::DuplicateEdge(key.0, key.1));
            }
        }
        Ok(SignedGraph::from_map(vertex_count, map))
    }

    fn from_map(order: usize, edges: BTreeMap<(usize, usize), Sign>) -> SignedGraph {
        let mut adjacency = vec![Vec::new(); order];
        for (&(u, v), &s) in &edges {
            adjacency[u].push((v, s));
            adjacency[v].push((u, s));
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        SignedGraph {
            order,
            edges,
            adjacency,
        }
    }

    /// The cycle on `k` vertices `0-1-...-(k-1)-0`, all edges carrying `sign`.
    pub fn cycle(k: usize, sign: Sign) -> Result<SignedGraph> {
        if k < 3 {
            return Err(Error::PreconditionViolated(format!(
                "a cycle needs at least 3 vertices, got {k}"
            )));
        }
        SignedGraph::from_edges(k, (0..k).map(|i| (i, (i + 1) % k, sign)))
    }

    /// The complete graph on `k` vertices with all edges carrying `sign`.
    pub fn complete(k: usize, sign: Sign) -> Result<SignedGraph> {
        let edges = (0..k).flat_map(|u| (u + 1..k).map(move |v| (u, v, sign)));
        SignedGraph::from_edges(k, edges)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges as `(u, v, sign)` with `u < v`, in increasing order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, Sign)> + '_ {
        self.edges.iter().map(|(&(u, v), &s)| (u, v, s))
    }

    pub fn sign(&self, u: usize, v: usize) -> Option<Sign> {
        self.edges.get(&canonical(u, v)).copied()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edges.contains_key(&canonical(u, v))
    }

    /// Neighbors of `v` with edge signs, sorted by neighbor.
    pub fn neighbors(&self, v: usize) -> &[(usize, Sign)] {
        &self.adjacency[v]
    }

    pub fn is_complete(&self) -> bool {
        self.edges.len() == self.order * (self.order - 1) / 2
    }

    /// The same underlying graph with every edge positive.
    pub fn unsigned(&self) -> SignedGraph {
        let edges = self.edges.keys().map(|&k| (k, Sign::Pos)).collect();
        SignedGraph::from_map(self.order, edges)
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.order {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange {
                vertex: v,
                order: self.order,
            })
        }
    }

    pub fn is_connected(&self) -> bool {
        let mut seen = vec![false; self.order];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        let mut reached = 1;
        while let Some(u) = queue.pop_front() {
            for &(w, _) in &self.adjacency[u] {
                if !seen[w] {
                    seen[w] = true;
                    reached += 1;
                    queue.push_back(w);
                }
            }
        }
        reached == self.order
    }

    /// Connected, at least three vertices and no articulation vertex.
    pub fn is_two_connected(&self) -> bool {
        self.order >= 3 && self.is_connected() && self.articulation_points().is_empty()
    }

    /// Cut vertices by the DFS low-link method, in increasing order.
    pub fn articulation_points(&self) -> Vec<usize> {
        const UNVISITED: usize = usize::MAX;
        let n = self.order;
        let mut disc = vec![UNVISITED; n];
        let mut low = vec![0; n];
        let mut is_cut = vec![false; n];
        let mut timer = 0;

        for root in 0..n {
            if disc[root] != UNVISITED {
                continue;
            }
            disc[root] = timer;
            low[root] = timer;
            timer += 1;
            let mut root_children = 0;
            // (vertex, parent, next neighbor index)
            let mut stack = vec![(root, UNVISITED, 0usize)];
            while let Some(frame) = stack.last_mut() {
                let (v, parent, idx) = *frame;
                if idx < self.adjacency[v].len() {
                    frame.2 += 1;
                    let w = self.adjacency[v][idx].0;
                    if disc[w] == UNVISITED {
                        disc[w] = timer;
                        low[w] = timer;
                        timer += 1;
                        if v == root {
                            root_children += 1;
                        }
                        stack.push((w, v, 0));
                    } else if w != parent {
                        low[v] = low[v].min(disc[w]);
                    }
                } else {
                    stack.pop();
                    if parent != UNVISITED {
                        low[parent] = low[parent].min(low[v]);
                        if parent != root && low[v] >= disc[parent] {
                            is_cut[parent] = true;
                        }
                    }
                }
            }
            if root_children > 1 {
                is_cut[root] = true;
            }
        }
        (0..n).filter(|&v| is_cut[v]).collect()
    }

    /// Product of edge signs along a path; `+` for a single vertex.
    pub fn path_sign(&self, path: &VertexPath) -> Result<Sign> {
        self.sequence_sign(path.vertices())
    }

    /// Product of edge signs along a walk, counting repeated edges each time.
    pub fn walk_sign(&self, walk: &Walk) -> Result<Sign> {
        self.sequence_sign(walk.vertices())
    }

    fn sequence_sign(&self, vertices: &[usize]) -> Result<Sign> {
        for &v in vertices {
            self.check_vertex(v)?;
        }
        vertices.windows(2).try_fold(Sign::Pos, |acc, w| {
            self.sign(w[0], w[1])
                .map(|s| acc * s)
                .ok_or_else(|| Error::NotAPath(format!("{}-{} is not an edge", w[0], w[1])))
        })
    }

    /// Negates every edge with exactly one endpoint in `set`.
    pub fn switch(&self, set: &[usize]) -> Result<SignedGraph> {
        let mut inside = vec![false; self.order];
        for &v in set {
            self.check_vertex(v)?;
            inside[v] = true;
        }
        let edges = self
            .edges
            .iter()
            .map(|(&(u, v), &s)| ((u, v), if inside[u] != inside[v] { -s } else { s }))
            .collect();
        Ok(SignedGraph::from_map(self.order, edges))
    }

    /// Switching by a vertex labeling: `σ'(uv) = label(u)·σ(uv)·label(v)`.
    pub fn switch_by_labels(&self, labels: &[Sign]) -> Result<SignedGraph> {
        if labels.len() != self.order {
            return Err(Error::PreconditionViolated(format!(
                "expected {} labels, got {}",
                self.order,
                labels.len()
            )));
        }
        let set: Vec<usize> = (0..self.order)
            .filter(|&v| labels[v] == Sign::Neg)
            .collect();
        self.switch(&set)
    }
}
