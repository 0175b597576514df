//! Brute-force ground truth and seeded random corpora.
//!
//! The oracle enumerates every shortest path explicitly and never consults the
//! sign-propagation code in [`crate::distance`].
//!
//! Randomness comes from ChaCha8 (`rand_chacha::ChaCha8Rng`), seeded with
//! `seed_from_u64(seed)`. Trial `i` of a corpus uses stream `i` of that
//! generator, so a trial is reproducible on its own and independent of how
//! many trials run or in what order.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::balance::is_balanced;
use crate::distance::{DistanceTable, PathSigns};
use crate::graph::{Sign, SignedGraph, VertexPath};
use crate::{Error, Result};

pub const MAX_ORACLE_PATHS: usize = 1_000_000;

fn bfs_levels(g: &SignedGraph, source: usize) -> Result<Vec<usize>> {
    let mut level = vec![usize::MAX; g.order()];
    level[source] = 0;
    let mut queue = VecDeque::from([source]);
    while let Some(u) = queue.pop_front() {
        for &(w, _) in g.neighbors(u) {
            if level[w] == usize::MAX {
                level[w] = level[u] + 1;
                queue.push_back(w);
            }
        }
    }
    if level.contains(&usize::MAX) {
        Err(Error::Disconnected)
    } else {
        Ok(level)
    }
}

/// All shortest `u`–`v` paths, by DFS from `v` toward `u` over the BFS levels
/// of `u`. Output is sorted lexicographically.
pub fn enumerate_shortest_paths(g: &SignedGraph, u: usize, v: usize) -> Result<Vec<VertexPath>> {
    g.check_vertex(u)?;
    g.check_vertex(v)?;
    let level = bfs_levels(g, u)?;
    let mut out = Vec::new();
    let mut stack = vec![v];
    collect_paths(g, &level, &mut stack, &mut out)?;
    out.sort();
    Ok(out)
}

fn collect_paths(
    g: &SignedGraph,
    level: &[usize],
    stack: &mut Vec<usize>,
    out: &mut Vec<VertexPath>,
) -> Result<()> {
    let at = *stack.last().expect("non-empty");
    if level[at] == 0 {
        if out.len() == MAX_ORACLE_PATHS {
            return Err(Error::TooManyPaths(MAX_ORACLE_PATHS));
        }
        let mut vs = stack.clone();
        vs.reverse();
        out.push(VertexPath::new(vs)?);
        return Ok(());
    }
    for &(w, _) in g.neighbors(at) {
        if level[w] + 1 == level[at] {
            stack.push(w);
            collect_paths(g, level, stack, out)?;
            stack.pop();
        }
    }
    Ok(())
}

/// Number of shortest `u`–`v` paths by counting over the levels of `u`.
pub fn count_shortest_paths(g: &SignedGraph, u: usize, v: usize) -> Result<u128> {
    let level = bfs_levels(g, u)?;
    let mut order: Vec<usize> = (0..g.order()).collect();
    order.sort_by_key(|&x| level[x]);
    let mut count = vec![0u128; g.order()];
    count[u] = 1;
    for &x in &order {
        for &(w, _) in g.neighbors(x) {
            if level[w] == level[x] + 1 {
                count[w] += count[x];
            }
        }
    }
    Ok(count[v])
}

/// Achievable shortest-path signs by explicit enumeration.
pub fn oracle_signs(g: &SignedGraph, u: usize, v: usize) -> Result<PathSigns> {
    let mut signs = PathSigns::NONE;
    for p in enumerate_shortest_paths(g, u, v)? {
        signs.insert(g.path_sign(&p)?);
    }
    Ok(signs)
}

/// Properties a generated graph must have.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Requirement {
    Connected,
    TwoConnected,
    Balanced,
    Compatible,
}

impl Requirement {
    pub fn name(self) -> &'static str {
        match self {
            Requirement::Connected => "connected",
            Requirement::TwoConnected => "two_connected",
            Requirement::Balanced => "balanced",
            Requirement::Compatible => "compatible",
        }
    }
}

impl FromStr for Requirement {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "connected" => Ok(Requirement::Connected),
            "two_connected" => Ok(Requirement::TwoConnected),
            "balanced" => Ok(Requirement::Balanced),
            "compatible" => Ok(Requirement::Compatible),
            other => Err(Error::BadCorpusSpec(format!(
                "unknown requirement `{other}`"
            ))),
        }
    }
}

/// Parameters of a random corpus.
#[derive(Debug, Clone, PartialEq)]
pub struct CorpusSpec {
    pub seed: u64,
    pub vertex_range: (usize, usize),
    pub edge_probability: f64,
    pub require: BTreeSet<Requirement>,
    pub trials: usize,
    /// Rejection-sampling attempts per trial before giving up.
    pub max_attempts: usize,
}

pub const DEFAULT_MAX_ATTEMPTS: usize = 10_000;

impl CorpusSpec {
    pub fn new(
        seed: u64,
        vertex_range: (usize, usize),
        edge_probability: f64,
        trials: usize,
    ) -> Self {
        CorpusSpec {
            seed,
            vertex_range,
            edge_probability,
            require: BTreeSet::from([Requirement::Connected]),
            trials,
            max_attempts: DEFAULT_MAX_ATTEMPTS,
        }
    }

    pub fn requiring(mut self, r: Requirement) -> Self {
        self.require.insert(r);
        self
    }

    pub fn validate(&self) -> Result<()> {
        let (lo, hi) = self.vertex_range;
        if lo < 2 || hi < lo {
            return Err(Error::BadCorpusSpec(format!(
                "vertex range {lo}..={hi} must satisfy 2 <= min <= max"
            )));
        }
        if !(self.edge_probability > 0.0 && self.edge_probability <= 1.0) {
            return Err(Error::BadCorpusSpec(format!(
                "edge probability {} outside (0, 1]",
                self.edge_probability
            )));
        }
        if self.trials == 0 {
            return Err(Error::BadCorpusSpec("trials must be positive".into()));
        }
        if self.require.contains(&Requirement::TwoConnected) && hi < 3 {
            return Err(Error::BadCorpusSpec(
                "two_connected needs at least 3 vertices".into(),
            ));
        }
        Ok(())
    }

    /// Parses `key=value` lines; blank lines and `#` comments are ignored.
    ///
    /// Keys: `seed`, `min_vertices`, `max_vertices`, `edge_probability`,
    /// `require` (comma-separated), `trials`, `max_attempts`.
    pub fn parse(text: &str) -> Result<CorpusSpec> {
        let mut spec = CorpusSpec::new(0, (2, 8), 0.3, 1);
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let syntax = |message: String| Error::Syntax {
                line: i + 1,
                message,
            };
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| syntax(format!("expected key=value, got `{line}`")))?;
            let (key, value) = (key.trim(), value.trim());
            let bad =
                |_: std::num::ParseIntError| syntax(format!("bad value `{value}` for `{key}`"));
            match key {
                "seed" => spec.seed = value.parse().map_err(bad)?,
                "min_vertices" => spec.vertex_range.0 = value.parse().map_err(bad)?,
                "max_vertices" => spec.vertex_range.1 = value.parse().map_err(bad)?,
                "edge_probability" => {
                    spec.edge_probability = value
                        .parse()
                        .map_err(|_| syntax(format!("bad value `{value}` for `{key}`")))?
                }
                "trials" => spec.trials = value.parse().map_err(bad)?,
                "max_attempts" => spec.max_attempts = value.parse().map_err(bad)?,
                "require" => {
                    for r in value.split(',').map(str::trim).filter(|r| !r.is_empty()) {
                        spec.require.insert(r.parse().map_err(|e| Error::AtLine {
                            line: i + 1,
                            source: Box::new(e),
                        })?);
                    }
                }
                other => return Err(syntax(format!("unknown key `{other}`"))),
            }
        }
        spec.validate()?;
        Ok(spec)
    }
}

impl fmt::Display for CorpusSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "seed={}", self.seed)?;
        writeln!(f, "min_vertices={}", self.vertex_range.0)?;
        writeln!(f, "max_vertices={}", self.vertex_range.1)?;
        writeln!(f, "edge_probability={}", self.edge_probability)?;
        let names: Vec<_> = self.require.iter().map(|r| r.name()).collect();
        writeln!(f, "require={}", names.join(","))?;
        writeln!(f, "trials={}", self.trials)?;
        writeln!(f, "max_attempts={}", self.max_attempts)
    }
}

/// The generator for trial `trial` of base seed `seed`.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

fn random_sign<R: Rng>(rng: &mut R) -> Sign {
    if rng.gen_bool(0.5) {
        Sign::Pos
    } else {
        Sign::Neg
    }
}

/// Random spanning tree plus independent extra edges, signs uniform.
pub fn random_connected<R: Rng>(rng: &mut R, order: usize, edge_probability: f64) -> SignedGraph {
    let mut perm: Vec<usize> = (0..order).collect();
    perm.shuffle(rng);
    let mut edges = BTreeSet::new();
    for i in 1..order {
        let j = rng.gen_range(0..i);
        let (a, b) = (perm[i], perm[j]);
        edges.insert((a.min(b), a.max(b)));
    }
    for u in 0..order {
        for v in u + 1..order {
            if !edges.contains(&(u, v)) && rng.gen_bool(edge_probability) {
                edges.insert((u, v));
            }
        }
    }
    let signed: Vec<_> = edges
        .into_iter()
        .map(|(u, v)| (u, v, random_sign(rng)))
        .collect();
    SignedGraph::from_edges(order, signed).expect("generated edges are valid")
}

/// Random vertex subset to switch by.
pub fn random_switch<R: Rng>(rng: &mut R, g: &SignedGraph) -> SignedGraph {
    let set: Vec<usize> = (0..g.order()).filter(|_| rng.gen_bool(0.5)).collect();
    g.switch(&set).expect("vertices in range")
}

/// One graph satisfying `spec`, drawn from `rng`.
pub fn generate_one<R: Rng>(spec: &CorpusSpec, rng: &mut R) -> Result<SignedGraph> {
    let need_two = spec.require.contains(&Requirement::TwoConnected);
    let need_balanced = spec.require.contains(&Requirement::Balanced);
    let need_compatible = spec.require.contains(&Requirement::Compatible);
    let mut failing = "connected";
    for _ in 0..spec.max_attempts {
        let lo = if need_two {
            spec.vertex_range.0.max(3)
        } else {
            spec.vertex_range.0
        };
        let order = rng.gen_range(lo..=spec.vertex_range.1);
        let mut g = random_connected(rng, order, spec.edge_probability);
        if need_balanced {
            g = random_switch(rng, &g.unsigned());
        }
        if need_two && !g.is_two_connected() {
            failing = Requirement::TwoConnected.name();
            continue;
        }
        if need_compatible && !need_balanced && !DistanceTable::new(&g)?.is_compatible() {
            failing = Requirement::Compatible.name();
            continue;
        }
        debug_assert!(!need_balanced || is_balanced(&g)?.balanced);
        return Ok(g);
    }
    Err(Error::GenerationExhausted {
        constraint: failing,
        attempts: spec.max_attempts,
    })
}

/// The corpus as a deterministic stream, trial `i` drawn from
/// [`trial_rng`]`(spec.seed, i)`.
pub fn generate(spec: &CorpusSpec) -> impl Iterator<Item = Result<SignedGraph>> + '_ {
    (0..spec.trials).map(move |i| generate_one(spec, &mut trial_rng(spec.seed, i as u64)))
}

/// Uniformly random shortest path starting at `u`: repeatedly step to a random
/// neighbor one hop closer to `v`. Every returned path is a geodesic.
pub fn random_geodesic<R: Rng>(
    rng: &mut R,
    g: &SignedGraph,
    table: &DistanceTable,
    u: usize,
    v: usize,
) -> VertexPath {
    let mut vs = vec![u];
    let mut at = u;
    while at != v {
        let d = table.distance(at, v);
        let options: Vec<usize> = g
            .neighbors(at)
            .iter()
            .map(|&(w, _)| w)
            .filter(|&w| table.distance(w, v) + 1 == d)
            .collect();
        at = *options.choose(rng).expect("connected");
        vs.push(at);
    }
    VertexPath::new(vs).expect("geodesics are simple")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[usize]) -> VertexPath {
        VertexPath::new(v.to_vec()).unwrap()
    }

    #[test]
    fn enumeration_examples() {
        let c4 = SignedGraph::cycle(4, Sign::Pos).unwrap();
        let paths = enumerate_shortest_paths(&c4, 0, 2).unwrap();
        assert_eq!(paths, vec![p(&[0, 1, 2]), p(&[0, 3, 2])]);

        let p5 = SignedGraph::new(5, (0..4).map(|i| (i, i + 1, 1))).unwrap();
        assert_eq!(enumerate_shortest_paths(&p5, 0, 4).unwrap().len(), 1);

        let c7 = SignedGraph::cycle(7, Sign::Pos).unwrap();
        assert_eq!(
            enumerate_shortest_paths(&c7, 0, 3).unwrap(),
            vec![p(&[0, 1, 2, 3])]
        );
        assert_eq!(enumerate_shortest_paths(&c7, 2, 2).unwrap(), vec![p(&[2])]);

        let split = SignedGraph::new(3, [(0, 1, 1)]).unwrap();
        assert_eq!(
            enumerate_shortest_paths(&split, 0, 1),
            Err(Error::Disconnected)
        );
    }

    #[test]
    fn oracle_sign_examples() {
        let c4 = SignedGraph::new(4, [(0, 1, -1), (1, 2, 1), (2, 3, 1), (0, 3, 1)]).unwrap();
        assert_eq!(oracle_signs(&c4, 0, 2), Ok(PathSigns::BOTH));
        let c7 = SignedGraph::cycle(7, Sign::Neg).unwrap();
        assert_eq!(oracle_signs(&c7, 0, 3), Ok(PathSigns::NEGATIVE));
        assert_eq!(oracle_signs(&c4, 0, 1), Ok(PathSigns::NEGATIVE));
    }

    #[test]
    fn path_counts() {
        // hypercube Q3: 3! shortest paths between antipodes
        let mut edges = Vec::new();
        for u in 0..8usize {
            for b in 0..3 {
                let v = u ^ (1 << b);
                if u < v {
                    edges.push((u, v, 1));
                }
            }
        }
        let q3 = SignedGraph::new(8, edges).unwrap();
        assert_eq!(count_shortest_paths(&q3, 0, 7), Ok(6));
        assert_eq!(enumerate_shortest_paths(&q3, 0, 7).unwrap().len(), 6);
    }

    #[test]
    fn corpus_spec_parsing() {
        let text = "# corpus\nseed=7\nmin_vertices=3\nmax_vertices=9\nedge_probability=0.25\nrequire=two_connected, balanced\ntrials=4\n";
        let spec = CorpusSpec::parse(text).unwrap();
        assert_eq!(spec.seed, 7);
        assert_eq!(spec.vertex_range, (3, 9));
        assert!(spec.require.contains(&Requirement::Balanced));
        assert!(spec.require.contains(&Requirement::Connected));
        assert_eq!(CorpusSpec::parse(&spec.to_string()).unwrap(), spec);

        assert!(matches!(
            CorpusSpec::parse("colour=red\n"),
            Err(Error::Syntax { line: 1, .. })
        ));
        assert!(matches!(
            CorpusSpec::parse("min_vertices=1\n"),
            Err(Error::BadCorpusSpec(_))
        ));
        assert_eq!(
            CorpusSpec::parse("seed=1\nrequire=planar\n")
                .unwrap_err()
                .name(),
            "BadCorpusSpec"
        );
    }

    #[test]
    fn generation() {
        let spec = CorpusSpec::new(11, (3, 9), 0.3, 30).requiring(Requirement::Balanced);
        for g in generate(&spec) {
            let g = g.unwrap();
            let r = is_balanced(&g).unwrap();
            assert!(r.balanced && r.validate(&g));
        }
        let complete = CorpusSpec::new(3, (2, 7), 1.0, 10);
        for g in generate(&complete) {
            assert!(g.unwrap().is_complete());
        }
        let a: Vec<_> = generate(&spec).collect();
        let b: Vec<_> = generate(&spec).collect();
        assert_eq!(a, b);

        let two = CorpusSpec::new(5, (3, 8), 0.4, 20).requiring(Requirement::TwoConnected);
        assert!(generate(&two).all(|g| g.unwrap().is_two_connected()));

        let compat = CorpusSpec::new(5, (3, 8), 0.3, 20).requiring(Requirement::Compatible);
        assert!(generate(&compat).all(|g| DistanceTable::new(&g.unwrap()).unwrap().is_compatible()));
    }

    #[test]
    fn exhausted_generation() {
        let mut spec = CorpusSpec::new(1, (3, 3), 0.01, 1).requiring(Requirement::TwoConnected);
        spec.max_attempts = 3;
        // a 3-vertex tree plus an edge at p = 0.01 is almost never a triangle
        let r = generate_one(&spec, &mut trial_rng(1, 0));
        assert_eq!(
            r.unwrap_err(),
            Error::GenerationExhausted {
                constraint: "two_connected",
                attempts: 3
            }
        );
    }

    #[test]
    fn geodesics() {
        let mut rng = trial_rng(9, 0);
        let g = SignedGraph::cycle(8, Sign::Pos).unwrap();
        let t = DistanceTable::new(&g).unwrap();
        for _ in 0..20 {
            let p = random_geodesic(&mut rng, &g, &t, 0, 4);
            assert_eq!(p.len(), 4);
            assert!(g.path_sign(&p).is_ok());
        }
    }
}
