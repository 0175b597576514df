//! Balance certificates, path lifting into powers and projection back, and
//! checkers for the balance and compatibility statements about powers.

use std::collections::VecDeque;

use crate::distance::{DistanceTable, Extremum};
use crate::graph::{Sign, SignedGraph, VertexPath, Walk};
use crate::power::{
    self, first_incompatible_within, power_from_table, CompleteMode, PowerWitnesses,
};
use crate::{Error, Result};

/// Outcome of a balance test with a certificate either way.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BalanceReport {
    pub balanced: bool,
    /// A closed walk through a negative cycle, present when unbalanced.
    pub witness: Option<Walk>,
    /// `σ(uv) = label(u)·label(v)` for every edge, present when balanced.
    pub switching_labels: Option<Vec<Sign>>,
}

impl BalanceReport {
    /// Re-checks the certificate against `g`.
    pub fn validate(&self, g: &SignedGraph) -> bool {
        match (self.balanced, &self.switching_labels, &self.witness) {
            (true, Some(labels), None) => {
                labels.len() == g.order() && g.edges().all(|(u, v, s)| s == labels[u] * labels[v])
            }
            (false, None, Some(cycle)) => cycle.is_cycle() && g.walk_sign(cycle) == Ok(Sign::Neg),
            _ => false,
        }
    }
}

/// Spanning-tree labeling: label the BFS root `+`, propagate
/// `label(v) = label(parent)·σ(parent, v)`, then test every edge.
pub fn is_balanced(g: &SignedGraph) -> Result<BalanceReport> {
    let n = g.order();
    let mut label = vec![Sign::Pos; n];
    let mut parent = vec![usize::MAX; n];
    let mut depth = vec![usize::MAX; n];
    let mut queue = VecDeque::from([0]);
    depth[0] = 0;
    while let Some(u) = queue.pop_front() {
        for &(w, s) in g.neighbors(u) {
            if depth[w] == usize::MAX {
                depth[w] = depth[u] + 1;
                parent[w] = u;
                label[w] = label[u] * s;
                queue.push_back(w);
            }
        }
    }
    if depth.contains(&usize::MAX) {
        return Err(Error::Disconnected);
    }
    let violation = g.edges().find(|&(u, v, s)| s != label[u] * label[v]);
    Ok(match violation {
        None => BalanceReport {
            balanced: true,
            witness: None,
            switching_labels: Some(label),
        },
        Some((u, v, _)) => BalanceReport {
            balanced: false,
            witness: Some(tree_cycle(&parent, &depth, u, v)),
            switching_labels: None,
        },
    })
}

/// The cycle formed by the tree paths from `u` and `v` to their lowest
/// common ancestor plus the non-tree edge `vu`.
fn tree_cycle(parent: &[usize], depth: &[usize], u: usize, v: usize) -> Walk {
    let (mut a, mut b) = (u, v);
    let mut up = vec![a];
    let mut down = vec![b];
    while depth[a] > depth[b] {
        a = parent[a];
        up.push(a);
    }
    while depth[b] > depth[a] {
        b = parent[b];
        down.push(b);
    }
    while a != b {
        a = parent[a];
        b = parent[b];
        up.push(a);
        down.push(b);
    }
    down.pop();
    up.extend(down.into_iter().rev());
    up.push(u);
    Walk::new(up).expect("non-empty")
}

/// Cuts `path` into consecutive blocks of `n` edges (the last block keeps the
/// remainder) and joins the block endpoints by power edges.
///
/// The result has `⌈k/n⌉` edges. Its sign in the unique power equals the sign
/// of `path` provided each block is a shortest path of `g`, which is checked:
/// a block that is not geodesic takes the sign of a different path.
pub fn lift_path(g: &SignedGraph, path: &VertexPath, n: usize) -> Result<VertexPath> {
    if n == 0 {
        return Err(Error::BadExponent(n));
    }
    g.path_sign(path)?;
    let table = DistanceTable::new(g)?;
    if let Some((u, v)) = first_incompatible_within(&table, n) {
        return Err(Error::NonUniquePower { n, u, v });
    }
    let vs = path.vertices();
    let k = path.len();
    let mut lifted = vec![vs[0]];
    let mut start = 0;
    while start < k {
        let end = (start + n).min(k);
        let (a, b) = (vs[start], vs[end]);
        if table.distance(a, b) != end - start {
            return Err(Error::NonGeodesicBlock(a, b));
        }
        lifted.push(b);
        start = end;
    }
    VertexPath::new(lifted)
}

/// Replaces every edge of a power path by its recorded witness path.
///
/// For a path of `k` power edges the walk has between `k` and `k·n` edges and
/// the same sign. When `path` is a shortest path of the power the length is
/// at least `(k−1)·n + 1`. The concatenation may revisit vertices, so a
/// [`Walk`] is returned.
pub fn project_path(witnesses: &PowerWitnesses, path: &VertexPath) -> Result<Walk> {
    let vs = path.vertices();
    let mut out = vec![vs[0]];
    for w in vs.windows(2) {
        let piece = witnesses
            .witness(w[0], w[1])
            .ok_or(Error::MissingWitness(w[0], w[1]))?;
        out.extend_from_slice(&piece.vertices()[1..]);
    }
    Walk::new(out)
}

/// An incompatible pair with one shortest path of each sign.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IncompatiblePair {
    pub u: usize,
    pub v: usize,
    pub positive: VertexPath,
    pub negative: VertexPath,
}

/// The lexicographically first incompatible pair, with the least shortest
/// path of each sign.
pub fn first_incompatible_pair(g: &SignedGraph) -> Result<Option<IncompatiblePair>> {
    let table = DistanceTable::new(g)?;
    Ok(incompatible_pair_in(g, &table))
}

fn incompatible_pair_in(g: &SignedGraph, table: &DistanceTable) -> Option<IncompatiblePair> {
    let (u, v) = table.incompatible_pairs().next()?;
    Some(IncompatiblePair {
        u,
        v,
        positive: table.shortest_path_with_sign(g, u, v, Sign::Pos)?,
        negative: table.shortest_path_with_sign(g, u, v, Sign::Neg)?,
    })
}

/// Result of a theorem check. `holds == false` means an implementation bug
/// or a false statement; `detail` says which part disagreed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub holds: bool,
    pub detail: Option<String>,
}

impl Verdict {
    fn pass() -> Verdict {
        Verdict {
            holds: true,
            detail: None,
        }
    }

    fn pass_with(detail: String) -> Verdict {
        Verdict {
            holds: true,
            detail: Some(detail),
        }
    }

    fn fail(detail: String) -> Verdict {
        Verdict {
            holds: false,
            detail: Some(detail),
        }
    }
}

/// Evaluates the four equivalent balance statements: the graph, `K^{D^max}`,
/// `K^{D^min}`, and `D^max = D^min` together with `K^{D^±}`.
pub fn verify_nbc(g: &SignedGraph) -> Result<Verdict> {
    let table = DistanceTable::new(g)?;
    let s1 = is_balanced(g)?.balanced;
    let k_max = power::complete_from_table(g, &table, CompleteMode::Max)?;
    let k_min = power::complete_from_table(g, &table, CompleteMode::Min)?;
    let s2 = is_balanced(&k_max)?.balanced;
    let s3 = is_balanced(&k_min)?.balanced;
    let s4 = table.matrix(Extremum::Max) == table.matrix(Extremum::Min)
        && is_balanced(&power::complete_from_table(g, &table, CompleteMode::Pm)?)?.balanced;
    let all = [s1, s2, s3, s4];
    if all.iter().all(|&s| s == s1) {
        Ok(Verdict::pass())
    } else {
        Ok(Verdict::fail(format!(
            "statements disagree: balanced={s1} K^max={s2} K^min={s3} D^max=D^min&K^pm={s4}"
        )))
    }
}

fn require_two_connected(g: &SignedGraph) -> Result<()> {
    if g.is_two_connected() {
        Ok(())
    } else {
        Err(Error::NotTwoConnected)
    }
}

/// A 2-connected graph is balanced exactly when its n-th power is.
///
/// For a non-unique power (possible only when `g` is unbalanced) both the max
/// and the min power must be unbalanced.
pub fn verify_power_balance(g: &SignedGraph, n: usize) -> Result<Verdict> {
    require_two_connected(g)?;
    let table = DistanceTable::new(g)?;
    let balanced = is_balanced(g)?.balanced;
    let p = power_from_table(g, &table, n)?;
    if p.unique {
        let power_balanced = is_balanced(&p.power_max)?.balanced;
        return Ok(if balanced == power_balanced {
            Verdict::pass()
        } else {
            Verdict::fail(format!(
                "graph balanced={balanced} but unique power balanced={power_balanced}"
            ))
        });
    }
    if balanced {
        return Ok(Verdict::fail(
            "balanced graph has a non-unique power".into(),
        ));
    }
    let max_balanced = is_balanced(&p.power_max)?.balanced;
    let min_balanced = is_balanced(&p.power_min)?.balanced;
    Ok(if !max_balanced && !min_balanced {
        Verdict::pass_with("non-unique power: max and min powers both unbalanced".into())
    } else {
        Verdict::fail(format!(
            "unbalanced graph with balanced power (max={max_balanced}, min={min_balanced})"
        ))
    })
}

/// A balanced 2-connected graph has a compatible power.
pub fn verify_balanced_implies_power_compatible(g: &SignedGraph, n: usize) -> Result<Verdict> {
    require_two_connected(g)?;
    if !is_balanced(g)?.balanced {
        return Err(Error::NotBalanced);
    }
    let p = power::power(g, n)?;
    if !p.unique {
        return Ok(Verdict::fail(
            "balanced graph has a non-unique power".into(),
        ));
    }
    Ok(match first_incompatible_pair(&p.power_max)? {
        None => Verdict::pass(),
        Some(pair) => Verdict::fail(format!(
            "power pair {}-{} incompatible: + {} / - {}",
            pair.u, pair.v, pair.positive, pair.negative
        )),
    })
}

/// With diameter above `n` and a unique power, compatibility of the power
/// forces compatibility of the graph. When the converse fails the detail
/// names the incompatible pair of the power.
pub fn verify_power_compat_implies_compat(g: &SignedGraph, n: usize) -> Result<Verdict> {
    if n == 0 {
        return Err(Error::BadExponent(n));
    }
    let table = DistanceTable::new(g)?;
    let diameter = table.diameter();
    if diameter <= n {
        return Err(Error::PreconditionViolated(format!(
            "diameter {diameter} does not exceed exponent {n}"
        )));
    }
    if let Some((u, v)) = first_incompatible_within(&table, n) {
        return Err(Error::PreconditionViolated(format!(
            "power is not unique: pair {u}-{v} is incompatible"
        )));
    }
    let p = power_from_table(g, &table, n)?;
    let power_table = DistanceTable::new(&p.power_max)?;
    let graph_compatible = table.is_compatible();
    let power_pair = incompatible_pair_in(&p.power_max, &power_table);
    Ok(match (power_pair, graph_compatible) {
        (None, false) => Verdict::fail("power compatible but graph incompatible".into()),
        (None, true) => Verdict::pass(),
        (Some(pair), true) => Verdict::pass_with(format!(
            "converse fails: graph compatible, power pair {}-{} incompatible (+ {} / - {})",
            pair.u, pair.v, pair.positive, pair.negative
        )),
        (Some(_), false) => Verdict::pass(),
    })
}
