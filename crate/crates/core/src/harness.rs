//! Randomized checking of the statements about powers of signed graphs.
//!
//! Each trial draws one graph from [`oracle::trial_rng`]`(seed, trial)` and
//! checks one statement on it for every relevant exponent. Trials are
//! independent, so running them concurrently gives the same tallies as
//! running them in order.

use std::fmt;
use std::fs;
use std::io;
use std::path::Path;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::balance::{
    is_balanced, lift_path, project_path, verify_balanced_implies_power_compatible, verify_nbc,
    verify_power_balance, verify_power_compat_implies_compat, Verdict,
};
use crate::distance::{DistanceTable, Extremum};
use crate::format::serialize_graph;
use crate::graph::SignedGraph;
use crate::oracle::{self, CorpusSpec, Requirement};
use crate::power::{
    check_diameter_power_theorem, complete_from_table, completion_mismatches,
    first_incompatible_within, power_from_table, CompleteMode, PowerWitnesses,
};
use crate::spectra::{balanced_spectrum_test, power_balance_spectrum_test, DEFAULT_TOL};
use crate::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Theorem {
    /// Uniqueness of the n-th power.
    T1,
    /// Powers of exponent at least the diameter are the associated complete graphs.
    Diam,
    /// Lifting a path into the power.
    L1,
    /// Projecting a power path back into the graph.
    Le,
    /// Compatible unique power forces a compatible graph.
    T27,
    /// Balanced 2-connected graphs have compatible powers.
    Blcm,
    /// Associated complete graphs of a graph and of its powers coincide.
    L3,
    /// A 2-connected graph is balanced iff its power is.
    Cbp,
    /// Spectral balance test, for the graph and for its powers.
    Sgs,
    /// Equivalent balance statements via associated complete graphs.
    Nbc,
}

impl Theorem {
    pub const ALL: [Theorem; 10] = [
        Theorem::T1,
        Theorem::Diam,
        Theorem::L1,
        Theorem::Le,
        Theorem::T27,
        Theorem::Blcm,
        Theorem::L3,
        Theorem::Cbp,
        Theorem::Sgs,
        Theorem::Nbc,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Theorem::T1 => "t1",
            Theorem::Diam => "diam",
            Theorem::L1 => "l1",
            Theorem::Le => "le",
            Theorem::T27 => "t27",
            Theorem::Blcm => "blcm",
            Theorem::L3 => "l3",
            Theorem::Cbp => "cbp",
            Theorem::Sgs => "sgs",
            Theorem::Nbc => "nbc",
        }
    }
}

impl FromStr for Theorem {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Theorem::ALL
            .into_iter()
            .find(|t| t.id() == s)
            .ok_or_else(|| format!("unknown theorem `{s}`"))
    }
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HarnessConfig {
    pub trials: usize,
    pub seed: u64,
    pub max_vertices: usize,
}

impl Default for HarnessConfig {
    fn default() -> Self {
        HarnessConfig {
            trials: 200,
            seed: 42,
            max_vertices: 10,
        }
    }
}

/// A failed check with everything needed to replay it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    pub theorem: Theorem,
    pub trial: usize,
    pub graph: SignedGraph,
    pub n: Option<usize>,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TrialOutcome {
    Pass,
    Fail(Counterexample),
    Skip(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TheoremTally {
    pub theorem: Theorem,
    pub trials: usize,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
    pub counterexamples: Vec<Counterexample>,
}

impl TheoremTally {
    fn from_outcomes(theorem: Theorem, outcomes: Vec<TrialOutcome>) -> TheoremTally {
        let mut tally = TheoremTally {
            theorem,
            trials: outcomes.len(),
            passed: 0,
            failed: 0,
            skipped: 0,
            counterexamples: Vec::new(),
        };
        for o in outcomes {
            match o {
                TrialOutcome::Pass => tally.passed += 1,
                TrialOutcome::Skip(_) => tally.skipped += 1,
                TrialOutcome::Fail(c) => {
                    tally.failed += 1;
                    tally.counterexamples.push(c);
                }
            }
        }
        tally
    }
}

impl fmt::Display for TheoremTally {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}\t{}\t{}\t{}\t{}",
            self.theorem, self.trials, self.passed, self.failed, self.skipped
        )
    }
}

pub fn run_theorem(theorem: Theorem, config: &HarnessConfig) -> TheoremTally {
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        let outcomes = (0..config.trials)
            .into_par_iter()
            .map(|i| run_trial(theorem, config, i))
            .collect();
        TheoremTally::from_outcomes(theorem, outcomes)
    }
    #[cfg(not(feature = "parallel"))]
    {
        run_theorem_sequential(theorem, config)
    }
}

pub fn run_theorem_sequential(theorem: Theorem, config: &HarnessConfig) -> TheoremTally {
    let outcomes = (0..config.trials)
        .map(|i| run_trial(theorem, config, i))
        .collect();
    TheoremTally::from_outcomes(theorem, outcomes)
}

/// The corpus each statement is checked on. Odd trials of the
/// balance-related statements drop the balanced requirement so both sides
/// of each equivalence are exercised.
pub fn corpus_for(
    theorem: Theorem,
    trial: usize,
    edge_probability: f64,
    config: &HarnessConfig,
) -> CorpusSpec {
    let hi = config.max_vertices.max(3);
    let mut spec = CorpusSpec::new(config.seed, (2, hi), edge_probability, config.trials);
    let even = trial.is_multiple_of(2);
    match theorem {
        Theorem::T1 | Theorem::Diam | Theorem::L1 | Theorem::Le | Theorem::T27 | Theorem::Nbc => {}
        Theorem::Blcm => {
            spec = spec
                .requiring(Requirement::TwoConnected)
                .requiring(Requirement::Balanced)
        }
        Theorem::L3 | Theorem::Cbp => {
            spec = spec.requiring(Requirement::TwoConnected);
            if even {
                spec = spec.requiring(Requirement::Balanced);
            }
        }
        Theorem::Sgs => {
            spec = spec.requiring(Requirement::Compatible);
            if even {
                spec = spec.requiring(Requirement::Balanced);
            }
        }
    }
    spec
}

pub fn run_trial(theorem: Theorem, config: &HarnessConfig, trial: usize) -> TrialOutcome {
    let mut rng = oracle::trial_rng(config.seed, trial as u64);
    let p = rng.gen_range(0.05..0.5);
    let spec = corpus_for(theorem, trial, p, config);
    let g = match oracle::generate_one(&spec, &mut rng) {
        Ok(g) => g,
        Err(e) => return TrialOutcome::Skip(e.to_string()),
    };
    let fail = |n: Option<usize>, message: String| {
        TrialOutcome::Fail(Counterexample {
            theorem,
            trial,
            graph: g.clone(),
            n,
            message,
        })
    };
    match check(theorem, &g, &mut rng) {
        Ok(Check::Holds) => TrialOutcome::Pass,
        Ok(Check::Vacuous(why)) => TrialOutcome::Skip(why),
        Ok(Check::Fails(n, message)) => fail(n, message),
        Err(e) => fail(None, format!("{}: {e}", e.name())),
    }
}

enum Check {
    Holds,
    Vacuous(String),
    Fails(Option<usize>, String),
}

fn verdict(n: usize, v: Verdict) -> Option<Check> {
    (!v.holds).then(|| Check::Fails(Some(n), v.detail.unwrap_or_default()))
}

fn check<R: Rng>(theorem: Theorem, g: &SignedGraph, rng: &mut R) -> Result<Check> {
    let table = DistanceTable::new(g)?;
    let diameter = table.diameter();
    match theorem {
        Theorem::T1 => {
            for n in 1..=diameter + 1 {
                let by_pairs = first_incompatible_within(&table, n).is_none();
                let by_signs = power_from_table(g, &table, n)?.unique;
                let by_oracle = oracle_unique(g, &table, n)?;
                if by_pairs != by_signs || by_signs != by_oracle {
                    return Ok(Check::Fails(
                        Some(n),
                        format!(
                            "pair condition={by_pairs} equal powers={by_signs} oracle={by_oracle}"
                        ),
                    ));
                }
            }
        }
        Theorem::Diam => {
            let compatible = table.is_compatible();
            for n in diameter.max(1)..=diameter + 1 {
                if !check_diameter_power_theorem(g, n)? {
                    return Ok(Check::Fails(
                        Some(n),
                        "power differs from K^max or K^min".into(),
                    ));
                }
                if compatible {
                    let p = power_from_table(g, &table, n)?;
                    if !p.unique || p.power_max != complete_from_table(g, &table, CompleteMode::Pm)?
                    {
                        return Ok(Check::Fails(
                            Some(n),
                            "unique power differs from K^pm".into(),
                        ));
                    }
                }
            }
        }
        Theorem::L1 => {
            let pairs = distinct_pairs(g.order());
            for n in 1..=diameter.max(1) {
                if first_incompatible_within(&table, n).is_some() {
                    continue;
                }
                let &(u, v) = pairs.choose(rng).expect("at least two vertices");
                let path = oracle::random_geodesic(rng, g, &table, u, v);
                if let Some(c) = check_lift(g, &table, &path, n)? {
                    return Ok(c);
                }
            }
        }
        Theorem::Le => {
            let pairs = distinct_pairs(g.order());
            for n in 1..=diameter + 1 {
                let w = PowerWitnesses::from_table(g, &table, n, Extremum::Max);
                let power_table = DistanceTable::new(&w.power)?;
                let &(u, v) = pairs.choose(rng).expect("at least two vertices");
                let path = oracle::random_geodesic(rng, &w.power, &power_table, u, v);
                if let Some(c) = check_projection(g, &w, &path)? {
                    return Ok(c);
                }
            }
        }
        Theorem::T27 => {
            let mut applicable = 0;
            for n in 1..diameter {
                if first_incompatible_within(&table, n).is_some() {
                    continue;
                }
                applicable += 1;
                if let Some(c) = verdict(n, verify_power_compat_implies_compat(g, n)?) {
                    return Ok(c);
                }
            }
            if applicable == 0 {
                return Ok(Check::Vacuous(
                    "no exponent below the diameter with a unique power".into(),
                ));
            }
        }
        Theorem::Blcm => {
            for n in 1..=diameter {
                if let Some(c) = verdict(n, verify_balanced_implies_power_compatible(g, n)?) {
                    return Ok(c);
                }
                if let Some(c) = verdict(n, verify_power_balance(g, n)?) {
                    return Ok(c);
                }
            }
        }
        Theorem::Cbp => {
            for n in 1..=diameter {
                if let Some(c) = verdict(n, verify_power_balance(g, n)?) {
                    return Ok(c);
                }
            }
        }
        Theorem::L3 => {
            let balanced = is_balanced(g)?.balanced;
            for n in 1..=diameter {
                if let Some(m) = completion_mismatches(g, n, balanced)?.first() {
                    return Ok(Check::Fails(Some(n), m.to_string()));
                }
            }
        }
        Theorem::Sgs => {
            let balanced = is_balanced(g)?.balanced;
            let spectral = balanced_spectrum_test(g, DEFAULT_TOL)?;
            if balanced != spectral {
                return Ok(Check::Fails(
                    None,
                    format!("balanced={balanced} but spectral test={spectral}"),
                ));
            }
            if g.is_two_connected() {
                for n in 1..=diameter {
                    if let Some(c) = verdict(n, power_balance_spectrum_test(g, n, DEFAULT_TOL)?) {
                        return Ok(c);
                    }
                }
            }
        }
        Theorem::Nbc => {
            if let Some(c) = verdict(0, verify_nbc(g)?) {
                return Ok(match c {
                    Check::Fails(_, m) => Check::Fails(None, m),
                    other => other,
                });
            }
        }
    }
    Ok(Check::Holds)
}

fn distinct_pairs(order: usize) -> Vec<(usize, usize)> {
    (0..order)
        .flat_map(|u| (0..order).filter(move |&v| v != u).map(move |v| (u, v)))
        .collect()
}

/// Uniqueness decided from explicit path enumeration only.
fn oracle_unique(g: &SignedGraph, table: &DistanceTable, n: usize) -> Result<bool> {
    for u in 0..g.order() {
        for v in u + 1..g.order() {
            if table.distance(u, v) <= n && !oracle::oracle_signs(g, u, v)?.is_singleton() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn check_lift(
    g: &SignedGraph,
    table: &DistanceTable,
    path: &crate::VertexPath,
    n: usize,
) -> Result<Option<Check>> {
    let lifted = lift_path(g, path, n)?;
    let power = power_from_table(g, table, n)?.power_max;
    let k = path.len();
    if lifted.len() != k.div_ceil(n) {
        return Ok(Some(Check::Fails(
            Some(n),
            format!(
                "lift of {path} has {} edges, expected {}",
                lifted.len(),
                k.div_ceil(n)
            ),
        )));
    }
    if power.path_sign(&lifted)? != g.path_sign(path)? {
        return Ok(Some(Check::Fails(
            Some(n),
            format!("lift of {path} changes sign"),
        )));
    }
    Ok(None)
}

fn check_projection(
    g: &SignedGraph,
    w: &PowerWitnesses,
    path: &crate::VertexPath,
) -> Result<Option<Check>> {
    let n = w.n;
    let k = path.len();
    let walk = project_path(w, path)?;
    let lo = if k == 0 { 0 } else { (k - 1) * n + 1 };
    if walk.len() < lo || walk.len() > k * n {
        return Ok(Some(Check::Fails(
            Some(n),
            format!(
                "projection of {path} has {} edges, outside [{lo}, {}]",
                walk.len(),
                k * n
            ),
        )));
    }
    if g.walk_sign(&walk)? != w.power.path_sign(path)? {
        return Ok(Some(Check::Fails(
            Some(n),
            format!("projection of {path} changes sign"),
        )));
    }
    Ok(None)
}

/// Writes one graph file per counterexample plus `manifest.txt`
/// (`file, theorem, trial, n, message`, tab-separated).
pub fn write_bundle(dir: &Path, counterexamples: &[Counterexample]) -> io::Result<()> {
    fs::create_dir_all(dir)?;
    let mut manifest = String::from("file\ttheorem\ttrial\tn\tmessage\n");
    for c in counterexamples {
        let file = format!("{}-trial{}.sg", c.theorem, c.trial);
        fs::write(dir.join(&file), serialize_graph(&c.graph))?;
        let n = c.n.map(|n| n.to_string()).unwrap_or_else(|| "-".into());
        manifest.push_str(&format!(
            "{file}\t{}\t{}\t{n}\t{}\n",
            c.theorem, c.trial, c.message
        ));
    }
    fs::write(dir.join("manifest.txt"), manifest)
}
