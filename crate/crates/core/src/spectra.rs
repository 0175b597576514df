//! Signed adjacency matrices, a cyclic Jacobi eigensolver and the spectral
//! balance test.

use std::fmt;

use crate::balance::{is_balanced, Verdict};
use crate::distance::DistanceTable;
use crate::graph::SignedGraph;
use crate::power::{complete_from_table, first_incompatible_within, CompleteMode};
use crate::{Error, Result};

pub const DEFAULT_TOL: f64 = 1e-10;
pub const MAX_SWEEPS: usize = 100;

/// Dense row-major square matrix with exact integer entries.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    order: usize,
    entries: Vec<i64>,
}

impl IntMatrix {
    pub fn from_rows(rows: Vec<Vec<i64>>) -> Result<IntMatrix> {
        let order = rows.len();
        if order == 0 || rows.iter().any(|r| r.len() != order) {
            return Err(Error::BadMatrixShape);
        }
        Ok(IntMatrix {
            order,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn zeros(order: usize) -> IntMatrix {
        IntMatrix {
            order,
            entries: vec![0; order * order],
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i * self.order + j]
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.entries[i * self.order..(i + 1) * self.order]
    }

    pub fn trace(&self) -> i64 {
        (0..self.order).map(|i| self.get(i, i)).sum()
    }

    fn set(&mut self, i: usize, j: usize, value: i64) {
        self.entries[i * self.order + j] = value;
    }

    pub fn check_symmetric(&self) -> Result<()> {
        for i in 0..self.order {
            for j in i + 1..self.order {
                if self.get(i, j) != self.get(j, i) {
                    return Err(Error::NotSymmetric(i, j));
                }
            }
        }
        Ok(())
    }
}

pub fn adjacency_matrix(g: &SignedGraph) -> IntMatrix {
    let mut m = IntMatrix::zeros(g.order());
    for (u, v, s) in g.edges() {
        m.set(u, v, s.to_int());
        m.set(v, u, s.to_int());
    }
    m
}

/// Eigenvalues sorted in descending order and grouped by multiplicity.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    pub eigenvalues: Vec<f64>,
    pub groups: Vec<(f64, usize)>,
    pub tol: f64,
}

impl Spectrum {
    fn from_eigenvalues(mut eigenvalues: Vec<f64>, tol: f64) -> Spectrum {
        eigenvalues.sort_by(|a, b| b.total_cmp(a));
        let mut groups: Vec<(f64, usize)> = Vec::new();
        let mut sum = 0.0;
        let mut prev = f64::NAN;
        for &x in &eigenvalues {
            match groups.last_mut() {
                Some((mean, count)) if prev - x < 10.0 * tol => {
                    sum += x;
                    *count += 1;
                    *mean = sum / *count as f64;
                }
                _ => {
                    sum = x;
                    groups.push((x, 1));
                }
            }
            prev = x;
        }
        Spectrum {
            eigenvalues,
            groups,
            tol,
        }
    }

    pub fn order(&self) -> usize {
        self.eigenvalues.len()
    }

    /// Compares against a multiset of `(value, multiplicity)` targets,
    /// eigenvalue by eigenvalue, within `10·tol`.
    pub fn matches(&self, targets: &[(f64, usize)]) -> bool {
        let mut expected: Vec<f64> = targets
            .iter()
            .flat_map(|&(x, m)| std::iter::repeat_n(x, m))
            .collect();
        expected.sort_by(|a, b| b.total_cmp(a));
        expected.len() == self.eigenvalues.len()
            && expected
                .iter()
                .zip(&self.eigenvalues)
                .all(|(e, x)| (e - x).abs() < 10.0 * self.tol)
    }
}

impl fmt::Display for Spectrum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &(x, m) in &self.groups {
            let x = if x.abs() < 10.0 * self.tol { 0.0 } else { x };
            writeln!(f, "{}\t{}", format_significant(x, 12), m)?;
        }
        Ok(())
    }
}

/// Rounds to `digits` significant digits and prints the shortest decimal
/// that reads back to the rounded value.
pub fn format_significant(x: f64, digits: usize) -> String {
    let rounded: f64 = format!("{:.*e}", digits.saturating_sub(1), x)
        .parse()
        .expect("scientific notation parses");
    if rounded == 0.0 {
        "0".to_string()
    } else {
        format!("{rounded}")
    }
}

/// Spectrum of a symmetric integer matrix.
pub fn eigenvalues(m: &IntMatrix, tol: f64) -> Result<Spectrum> {
    m.check_symmetric()?;
    let a: Vec<f64> = m.entries.iter().map(|&x| x as f64).collect();
    let values = jacobi_eigenvalues(a, m.order, tol)?;
    Ok(Spectrum::from_eigenvalues(values, tol))
}

fn off_diagonal_norm(a: &[f64], n: usize) -> f64 {
    let mut sum = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                sum += a[i * n + j] * a[i * n + j];
            }
        }
    }
    sum.sqrt()
}

/// Cyclic Jacobi: sweep all `(p, q)` pairs with plane rotations zeroing
/// `a[p][q]` until the off-diagonal Frobenius norm drops below `tol`.
fn jacobi_eigenvalues(mut a: Vec<f64>, n: usize, tol: f64) -> Result<Vec<f64>> {
    for _ in 0..MAX_SWEEPS {
        if off_diagonal_norm(&a, n) < tol {
            return Ok((0..n).map(|i| a[i * n + i]).collect());
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let theta = (a[q * n + q] - a[p * n + p]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p * n + k];
                    let aqk = a[q * n + k];
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
                a[p * n + q] = 0.0;
                a[q * n + p] = 0.0;
            }
        }
    }
    if off_diagonal_norm(&a, n) < tol {
        return Ok((0..n).map(|i| a[i * n + i]).collect());
    }
    Err(Error::NoConvergence(MAX_SWEEPS))
}

/// Spectrum of the all-positive complete graph of order `m`.
pub fn balanced_complete_spectrum(m: usize) -> Vec<(f64, usize)> {
    if m == 1 {
        vec![(0.0, 1)]
    } else {
        vec![(m as f64 - 1.0, 1), (-1.0, m - 1)]
    }
}

/// Spectrum of `K^{D^±}(g)` compared to `{m−1: ×1, −1: ×(m−1)}`.
pub fn balanced_spectrum_test(g: &SignedGraph, tol: f64) -> Result<bool> {
    let table = DistanceTable::new(g)?;
    let k = complete_from_table(g, &table, CompleteMode::Pm)?;
    let spectrum = eigenvalues(&adjacency_matrix(&k), tol)?;
    Ok(spectrum.matches(&balanced_complete_spectrum(g.order())))
}

/// For a 2-connected compatible graph with unique n-th power: the power is
/// balanced exactly when the spectral test on `K^{D^±}(g)` passes.
pub fn power_balance_spectrum_test(g: &SignedGraph, n: usize, tol: f64) -> Result<Verdict> {
    if !g.is_two_connected() {
        return Err(Error::NotTwoConnected);
    }
    if n == 0 {
        return Err(Error::BadExponent(n));
    }
    let table = DistanceTable::new(g)?;
    if let Some((u, v)) = table.incompatible_pairs().next() {
        return Err(Error::NotCompatible(u, v));
    }
    if let Some((u, v)) = first_incompatible_within(&table, n) {
        return Err(Error::NonUniquePower { n, u, v });
    }
    let power = crate::power::power_from_table(g, &table, n)?;
    let power_balanced = is_balanced(&power.power_max)?.balanced;
    let spectral = balanced_spectrum_test(g, tol)?;
    Ok(Verdict {
        holds: power_balanced == spectral,
        detail: (power_balanced != spectral)
            .then(|| format!("power balanced={power_balanced} but spectral test={spectral}")),
    })
}
