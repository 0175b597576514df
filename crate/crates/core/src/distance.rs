//! Signed distances.
//!
//! For a fixed source, a BFS assigns levels and the shortest-path DAG is the
//! set of edges going from one level to the next. Walking the vertices in BFS
//! order, the set of signs achievable over shortest paths to `w` is the union
//! over DAG predecessors `p` of `signs(p) · σ(pw)`. Each source costs
//! `O(V + E)`, so the all-pairs table costs `O(V·(V + E))`.

use std::collections::VecDeque;
use std::fmt;

use crate::graph::{Sign, SignedGraph, VertexPath};
use crate::{Error, Result};

/// Which signs occur among the shortest paths of a pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct PathSigns {
    pub has_positive: bool,
    pub has_negative: bool,
}

impl PathSigns {
    pub const NONE: PathSigns = PathSigns {
        has_positive: false,
        has_negative: false,
    };
    pub const POSITIVE: PathSigns = PathSigns {
        has_positive: true,
        has_negative: false,
    };
    pub const NEGATIVE: PathSigns = PathSigns {
        has_positive: false,
        has_negative: true,
    };
    pub const BOTH: PathSigns = PathSigns {
        has_positive: true,
        has_negative: true,
    };

    pub fn of(sign: Sign) -> PathSigns {
        match sign {
            Sign::Pos => PathSigns::POSITIVE,
            Sign::Neg => PathSigns::NEGATIVE,
        }
    }

    pub fn contains(self, sign: Sign) -> bool {
        match sign {
            Sign::Pos => self.has_positive,
            Sign::Neg => self.has_negative,
        }
    }

    pub fn insert(&mut self, sign: Sign) {
        match sign {
            Sign::Pos => self.has_positive = true,
            Sign::Neg => self.has_negative = true,
        }
    }

    pub fn union(self, other: PathSigns) -> PathSigns {
        PathSigns {
            has_positive: self.has_positive || other.has_positive,
            has_negative: self.has_negative || other.has_negative,
        }
    }

    /// Multiplies every member by `sign`.
    pub fn times(self, sign: Sign) -> PathSigns {
        match sign {
            Sign::Pos => self,
            Sign::Neg => PathSigns {
                has_positive: self.has_negative,
                has_negative: self.has_positive,
            },
        }
    }

    pub fn is_empty(self) -> bool {
        !self.has_positive && !self.has_negative
    }

    /// Exactly one sign is achievable.
    pub fn is_singleton(self) -> bool {
        self.has_positive != self.has_negative
    }

    /// The common sign when the set is a singleton.
    pub fn unique(self) -> Option<Sign> {
        match (self.has_positive, self.has_negative) {
            (true, false) => Some(Sign::Pos),
            (false, true) => Some(Sign::Neg),
            _ => None,
        }
    }

    pub fn max(self) -> Option<Sign> {
        if self.has_positive {
            Some(Sign::Pos)
        } else if self.has_negative {
            Some(Sign::Neg)
        } else {
            None
        }
    }

    pub fn min(self) -> Option<Sign> {
        if self.has_negative {
            Some(Sign::Neg)
        } else if self.has_positive {
            Some(Sign::Pos)
        } else {
            None
        }
    }

    pub fn extreme(self, which: Extremum) -> Option<Sign> {
        match which {
            Extremum::Max => self.max(),
            Extremum::Min => self.min(),
        }
    }
}

impl fmt::Display for PathSigns {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.has_positive, self.has_negative) {
            (true, true) => f.write_str("{+,-}"),
            (true, false) => f.write_str("{+}"),
            (false, true) => f.write_str("{-}"),
            (false, false) => f.write_str("{}"),
        }
    }
}

/// Selects σ_max or σ_min.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Extremum {
    Max,
    Min,
}

/// Hop distance and achievable shortest-path signs from one source.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Reach {
    pub distance: usize,
    pub signs: PathSigns,
}

/// Single-source sign reachability over the shortest-path DAG.
pub fn sign_reachability(g: &SignedGraph, source: usize) -> Result<Vec<Reach>> {
    g.check_vertex(source)?;
    let n = g.order();
    let mut level = vec![usize::MAX; n];
    let mut signs = vec![PathSigns::NONE; n];
    let mut queue = VecDeque::with_capacity(n);
    level[source] = 0;
    signs[source] = PathSigns::POSITIVE;
    queue.push_back(source);
    while let Some(p) = queue.pop_front() {
        let next = level[p] + 1;
        for &(w, s) in g.neighbors(p) {
            if level[w] == usize::MAX {
                level[w] = next;
                queue.push_back(w);
            }
            if level[w] == next {
                signs[w] = signs[w].union(signs[p].times(s));
            }
        }
    }
    if level.contains(&usize::MAX) {
        return Err(Error::Disconnected);
    }
    Ok(level
        .into_iter()
        .zip(signs)
        .map(|(distance, signs)| Reach { distance, signs })
        .collect())
}

/// An `order × order` matrix of signed distances `σ·d(u, v)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SignedDistanceMatrix {
    order: usize,
    entries: Vec<i64>,
}

impl SignedDistanceMatrix {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, u: usize, v: usize) -> i64 {
        self.entries[u * self.order + v]
    }

    pub fn row(&self, u: usize) -> &[i64] {
        &self.entries[u * self.order..(u + 1) * self.order]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[i64]> {
        self.entries.chunks(self.order)
    }

    /// Entrywise absolute values: the unsigned distance matrix.
    pub fn magnitudes(&self) -> Vec<i64> {
        self.entries.iter().map(|e| e.abs()).collect()
    }
}

/// All-pairs distances and achievable shortest-path signs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceTable {
    order: usize,
    reach: Vec<Reach>,
}

impl DistanceTable {
    /// Builds the table, one independent BFS per source. Sources run on the
    /// rayon pool when the `parallel` feature is on.
    pub fn new(g: &SignedGraph) -> Result<DistanceTable> {
        #[cfg(feature = "parallel")]
        {
            use rayon::prelude::*;
            let rows: Result<Vec<Vec<Reach>>> = (0..g.order())
                .into_par_iter()
                .map(|s| sign_reachability(g, s))
                .collect();
            Ok(DistanceTable::from_rows(g.order(), rows?))
        }
        #[cfg(not(feature = "parallel"))]
        {
            DistanceTable::new_sequential(g)
        }
    }

    pub fn new_sequential(g: &SignedGraph) -> Result<DistanceTable> {
        let rows = (0..g.order())
            .map(|s| sign_reachability(g, s))
            .collect::<Result<Vec<_>>>()?;
        Ok(DistanceTable::from_rows(g.order(), rows))
    }

    fn from_rows(order: usize, rows: Vec<Vec<Reach>>) -> DistanceTable {
        DistanceTable {
            order,
            reach: rows.into_iter().flatten().collect(),
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn reach(&self, u: usize, v: usize) -> Reach {
        self.reach[u * self.order + v]
    }

    pub fn distance(&self, u: usize, v: usize) -> usize {
        self.reach(u, v).distance
    }

    pub fn signs(&self, u: usize, v: usize) -> PathSigns {
        self.reach(u, v).signs
    }

    pub fn sigma(&self, u: usize, v: usize, which: Extremum) -> Sign {
        self.signs(u, v)
            .extreme(which)
            .expect("connected pairs always have a shortest path")
    }

    pub fn is_compatible_pair(&self, u: usize, v: usize) -> bool {
        self.signs(u, v).is_singleton()
    }

    pub fn diameter(&self) -> usize {
        self.reach.iter().map(|r| r.distance).max().unwrap_or(0)
    }

    /// Unordered pairs `u < v` with shortest paths of both signs, in
    /// lexicographic order.
    pub fn incompatible_pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.order;
        (0..n)
            .flat_map(move |u| (u + 1..n).map(move |v| (u, v)))
            .filter(move |&(u, v)| !self.is_compatible_pair(u, v))
    }

    pub fn is_compatible(&self) -> bool {
        self.incompatible_pairs().next().is_none()
    }

    pub fn matrix(&self, which: Extremum) -> SignedDistanceMatrix {
        let entries = self
            .reach
            .iter()
            .map(|r| {
                let s = r.signs.extreme(which).expect("connected");
                s.to_int() * r.distance as i64
            })
            .collect();
        SignedDistanceMatrix {
            order: self.order,
            entries,
        }
    }

    /// The lexicographically least shortest `u`–`v` path of the given sign,
    /// if one exists.
    ///
    /// Greedy from `u`: step to the smallest neighbor one hop closer to `v`
    /// from which the remaining sign is still achievable.
    pub fn shortest_path_with_sign(
        &self,
        g: &SignedGraph,
        u: usize,
        v: usize,
        sign: Sign,
    ) -> Option<VertexPath> {
        if !self.signs(u, v).contains(sign) {
            return None;
        }
        let mut vertices = vec![u];
        let mut at = u;
        let mut needed = sign;
        while at != v {
            let d = self.distance(at, v);
            let &(next, s) = g.neighbors(at).iter().find(|&&(w, s)| {
                self.distance(w, v) + 1 == d && self.signs(w, v).contains(needed * s)
            })?;
            needed = needed * s;
            vertices.push(next);
            at = next;
        }
        Some(VertexPath::new(vertices).expect("shortest paths are simple"))
    }
}

/// `(D^max, D^min)`.
pub fn distance_matrices(g: &SignedGraph) -> Result<(SignedDistanceMatrix, SignedDistanceMatrix)> {
    let table = DistanceTable::new(g)?;
    Ok((table.matrix(Extremum::Max), table.matrix(Extremum::Min)))
}

pub fn is_compatible_pair(g: &SignedGraph, u: usize, v: usize) -> Result<bool> {
    g.check_vertex(v)?;
    let row = sign_reachability(g, u)?;
    Ok(row[v].signs.is_singleton())
}

pub fn is_compatible(g: &SignedGraph) -> Result<bool> {
    Ok(DistanceTable::new(g)?.is_compatible())
}

pub fn diameter(g: &SignedGraph) -> Result<usize> {
    Ok(DistanceTable::new(g)?.diameter())
}
