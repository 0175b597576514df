//! n-th powers of a signed graph and associated signed complete graphs.
//!
//! The n-th power joins every pair at distance at most `n`. The max power signs
//! the new edge `uv` with σ_max(u, v), the min power with σ_min(u, v). The two
//! coincide exactly when no pair within distance `n` is incompatible.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::distance::{DistanceTable, Extremum};
use crate::graph::{Sign, SignedGraph, VertexPath};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowerResult {
    pub n: usize,
    pub power_max: SignedGraph,
    pub power_min: SignedGraph,
    pub unique: bool,
}

impl PowerResult {
    pub fn get(&self, which: Extremum) -> &SignedGraph {
        match which {
            Extremum::Max => &self.power_max,
            Extremum::Min => &self.power_min,
        }
    }

    /// The power when it is unique.
    pub fn unique_power(&self) -> Option<&SignedGraph> {
        self.unique.then_some(&self.power_max)
    }
}

fn check_exponent(n: usize) -> Result<()> {
    if n == 0 {
        Err(Error::BadExponent(n))
    } else {
        Ok(())
    }
}

fn power_graph(g: &SignedGraph, table: &DistanceTable, n: usize, which: Extremum) -> SignedGraph {
    let order = g.order();
    let edges = (0..order).flat_map(|u| {
        (u + 1..order)
            .filter(move |&v| table.distance(u, v) <= n)
            .map(move |v| (u, v, table.sigma(u, v, which)))
    });
    SignedGraph::from_edges(order, edges).expect("pairs are distinct and in range")
}

/// First pair `u < v` with `0 < d(u, v) ≤ n` whose shortest paths carry
/// both signs.
pub fn first_incompatible_within(table: &DistanceTable, n: usize) -> Option<(usize, usize)> {
    table
        .incompatible_pairs()
        .find(|&(u, v)| table.distance(u, v) <= n)
}

pub fn power_from_table(g: &SignedGraph, table: &DistanceTable, n: usize) -> Result<PowerResult> {
    check_exponent(n)?;
    let power_max = power_graph(g, table, n, Extremum::Max);
    let power_min = power_graph(g, table, n, Extremum::Min);
    let unique = power_max == power_min;
    debug_assert_eq!(unique, first_incompatible_within(table, n).is_none());
    Ok(PowerResult {
        n,
        power_max,
        power_min,
        unique,
    })
}

pub fn power(g: &SignedGraph, n: usize) -> Result<PowerResult> {
    check_exponent(n)?;
    power_from_table(g, &DistanceTable::new(g)?, n)
}

/// Pair condition for uniqueness: no incompatible pair within distance `n`.
pub fn is_power_unique(g: &SignedGraph, n: usize) -> Result<bool> {
    check_exponent(n)?;
    let table = DistanceTable::new(g)?;
    Ok(first_incompatible_within(&table, n).is_none())
}

/// How non-adjacent pairs are signed in an associated signed complete graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CompleteMode {
    Max,
    Min,
    /// The common value of σ_max and σ_min; requires a compatible graph.
    Pm,
}

impl FromStr for CompleteMode {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "max" => Ok(CompleteMode::Max),
            "min" => Ok(CompleteMode::Min),
            "pm" => Ok(CompleteMode::Pm),
            other => Err(format!("unknown mode `{other}`, expected max, min or pm")),
        }
    }
}

impl fmt::Display for CompleteMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CompleteMode::Max => "max",
            CompleteMode::Min => "min",
            CompleteMode::Pm => "pm",
        })
    }
}

pub fn complete_from_table(
    g: &SignedGraph,
    table: &DistanceTable,
    mode: CompleteMode,
) -> Result<SignedGraph> {
    let which = match mode {
        CompleteMode::Max => Extremum::Max,
        CompleteMode::Min => Extremum::Min,
        CompleteMode::Pm => {
            if let Some((u, v)) = table.incompatible_pairs().next() {
                return Err(Error::NotCompatible(u, v));
            }
            Extremum::Max
        }
    };
    let order = g.order();
    let edges = (0..order).flat_map(|u| {
        (u + 1..order).map(move |v| {
            let s = g.sign(u, v).unwrap_or_else(|| table.sigma(u, v, which));
            (u, v, s)
        })
    });
    Ok(SignedGraph::from_edges(order, edges).expect("complete edge set is valid"))
}

/// The associated signed complete graph `K^{D^max}`, `K^{D^min}` or `K^{D^±}`.
pub fn associated_complete(g: &SignedGraph, mode: CompleteMode) -> Result<SignedGraph> {
    complete_from_table(g, &DistanceTable::new(g)?, mode)
}

/// When `diameter(g) ≤ n` each power must equal the matching associated
/// complete graph. Returns whether both equalities hold.
pub fn check_diameter_power_theorem(g: &SignedGraph, n: usize) -> Result<bool> {
    check_exponent(n)?;
    let table = DistanceTable::new(g)?;
    let diameter = table.diameter();
    if diameter > n {
        return Err(Error::PreconditionViolated(format!(
            "diameter {diameter} exceeds exponent {n}"
        )));
    }
    let p = power_from_table(g, &table, n)?;
    Ok(
        p.power_max == complete_from_table(g, &table, CompleteMode::Max)?
            && p.power_min == complete_from_table(g, &table, CompleteMode::Min)?,
    )
}

/// A mismatch between the associated complete graph of `g` and that of one
/// of its powers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompletionMismatch {
    pub mode: CompleteMode,
    pub u: usize,
    pub v: usize,
    pub in_graph: Sign,
    pub in_power: Sign,
}

impl fmt::Display for CompletionMismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "K^{} differs at {}-{}: {} in the graph, {} in the power",
            self.mode, self.u, self.v, self.in_graph, self.in_power
        )
    }
}

/// Compares `K^{D^max}(g)` with `K^{D^max}(power_max)`, the min analogue, and
/// for balanced `g` also the `pm` completions. Returns every differing pair.
pub fn completion_mismatches(
    g: &SignedGraph,
    n: usize,
    balanced: bool,
) -> Result<Vec<CompletionMismatch>> {
    let table = DistanceTable::new(g)?;
    let p = power_from_table(g, &table, n)?;
    let mut modes = vec![
        (CompleteMode::Max, &p.power_max),
        (CompleteMode::Min, &p.power_min),
    ];
    if balanced {
        modes.push((CompleteMode::Pm, &p.power_max));
    }
    let mut out = Vec::new();
    for (mode, pg) in modes {
        let k_graph = complete_from_table(g, &table, mode)?;
        let k_power = complete_from_table(pg, &DistanceTable::new(pg)?, mode)?;
        for ((u, v, a), (_, _, b)) in k_graph.edges().zip(k_power.edges()) {
            if a != b {
                out.push(CompletionMismatch {
                    mode,
                    u,
                    v,
                    in_graph: a,
                    in_power: b,
                });
            }
        }
    }
    Ok(out)
}

/// One of the two powers together with, for every power edge, a shortest
/// path in the base graph whose sign equals the power edge's sign.
///
/// The witness for `uv` is the lexicographically least shortest `u`–`v` path
/// achieving σ_max (or σ_min), stored oriented from the smaller endpoint.
#[derive(Debug, Clone)]
pub struct PowerWitnesses {
    pub n: usize,
    pub which: Extremum,
    pub power: SignedGraph,
    paths: BTreeMap<(usize, usize), VertexPath>,
}

impl PowerWitnesses {
    pub fn new(g: &SignedGraph, n: usize, which: Extremum) -> Result<PowerWitnesses> {
        check_exponent(n)?;
        let table = DistanceTable::new(g)?;
        Ok(PowerWitnesses::from_table(g, &table, n, which))
    }

    pub fn from_table(
        g: &SignedGraph,
        table: &DistanceTable,
        n: usize,
        which: Extremum,
    ) -> PowerWitnesses {
        let power = power_graph(g, table, n, which);
        let paths = power
            .edges()
            .map(|(u, v, s)| {
                let p = table
                    .shortest_path_with_sign(g, u, v, s)
                    .expect("power edge signs are achieved by some shortest path");
                ((u, v), p)
            })
            .collect();
        PowerWitnesses {
            n,
            which,
            power,
            paths,
        }
    }

    /// Witness path for the power edge `uv`, oriented from `u` to `v`.
    pub fn witness(&self, u: usize, v: usize) -> Option<VertexPath> {
        if u < v {
            self.paths.get(&(u, v)).cloned()
        } else {
            self.paths.get(&(v, u)).map(|p| {
                let mut vs = p.vertices().to_vec();
                vs.reverse();
                VertexPath::new(vs).expect("reversal keeps vertices distinct")
            })
        }
    }

    pub fn len(&self) -> usize {
        self.paths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.paths.is_empty()
    }
}
