//! Closed forms for `K`, `Kf*` and `t` of an operation's output in terms of
//! base-graph data.
//!
//! `AsPrinted` reproduces the published formulas term for term, including
//! their summation bounds. `Corrected` is the form confirmed against the
//! eigenvalue oracle; for the shadow graph the two coincide.
//!
//! Randić eigenvalues are indexed in descending order, so `ρ_1 = 1` for a
//! connected base graph and "i ≥ 2" skips exactly that eigenvalue.

use std::fmt;

use serde::Serialize;

use super::{kemeny_from_laplacian, require_connected, trees_from_laplacian};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::ops::OperationKind;
use crate::spectral::{self, MatrixKind};
use crate::tolerance::Tolerances;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Invariant {
    Kemeny,
    Kirchhoff,
    Trees,
}

impl Invariant {
    pub const ALL: [Invariant; 3] = [Invariant::Kemeny, Invariant::Kirchhoff, Invariant::Trees];

    pub fn name(&self) -> &'static str {
        match self {
            Invariant::Kemeny => "kemeny",
            Invariant::Kirchhoff => "kirchhoff",
            Invariant::Trees => "trees",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FormulaMode {
    AsPrinted,
    Corrected,
}

impl FormulaMode {
    pub fn name(&self) -> &'static str {
        match self {
            FormulaMode::AsPrinted => "as_printed",
            FormulaMode::Corrected => "corrected",
        }
    }
}

impl fmt::Display for FormulaMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Everything the closed forms need to know about the base graph.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BaseGraphData {
    pub p: usize,
    pub q: usize,
    pub degrees: Vec<usize>,
    pub kemeny: f64,
    pub kirchhoff: f64,
    pub trees: f64,
    /// Randić eigenvalues, descending.
    pub randic: Vec<f64>,
}

impl BaseGraphData {
    pub fn from_graph(g: &Graph, tol: &Tolerances) -> Result<Self> {
        require_connected(g)?;
        let mut randic = spectral::eigenvalues(g, MatrixKind::Randic, tol)?;
        randic.reverse();
        let mu: Vec<f64> = randic.iter().map(|r| 1.0 - r).collect();
        let kemeny = kemeny_from_laplacian(&mu);
        let degrees = g.degrees();
        Ok(BaseGraphData {
            p: g.order(),
            q: g.size(),
            kemeny,
            kirchhoff: 2.0 * g.size() as f64 * kemeny,
            trees: trees_from_laplacian(&degrees, &mu),
            degrees,
            randic,
        })
    }

    fn ln_degree_product(&self) -> f64 {
        self.degrees.iter().map(|&d| (d as f64).ln()).sum()
    }

    /// `Σ f(ρ_i)` over all eigenvalues.
    fn sum_all(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.randic.iter().map(|&r| f(r)).sum()
    }

    /// `Σ_{i=2}^{p} f(ρ_i)`.
    fn sum_tail(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.randic.iter().skip(1).map(|&r| f(r)).sum()
    }

    /// `ln Π_{i=1}^{p} f(ρ_i)`; every factor used here is positive.
    fn ln_prod_all(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.randic.iter().map(|&r| f(r).ln()).sum()
    }
}

/// Smallest `m` for which the closed forms are evaluated. Errors for the
/// iterated duplicate, which has none (it is disconnected for `m ≥ 2`).
pub fn invariant_min_m(op: &OperationKind) -> Result<usize> {
    match op {
        OperationKind::Splitting { .. } | OperationKind::Shadow { .. } => Ok(1),
        OperationKind::H1 { .. } | OperationKind::H2 { .. } => Ok(4),
        OperationKind::H3 { .. } => Ok(3),
        OperationKind::DuplicateIter { .. } => {
            Err(Error::NoClosedForm(format!("walk invariants of {op}")))
        }
    }
}

pub fn closed_form_invariant(
    base: &BaseGraphData,
    op: &OperationKind,
    which: Invariant,
    mode: FormulaMode,
) -> Result<f64> {
    op.validate()?;
    let min = invariant_min_m(op)?;
    if op.m() < min {
        return Err(Error::MOutOfTheoremRange {
            op: op.name(),
            m: op.m(),
            min,
        });
    }
    let printed = mode == FormulaMode::AsPrinted;
    let value = match op {
        OperationKind::Splitting { m } => splitting(base, *m as f64, which, printed),
        OperationKind::Shadow { m } => shadow(base, *m as f64, which),
        OperationKind::H1 { m, .. } => h1(base, *m as f64, which, printed),
        OperationKind::H2 { m } => h2(base, *m as f64, which, printed),
        OperationKind::H3 { m } => h3(base, *m as f64, which, printed),
        OperationKind::DuplicateIter { .. } => unreachable!("rejected by invariant_min_m"),
    };
    Ok(value)
}

fn splitting(b: &BaseGraphData, m: f64, which: Invariant, printed: bool) -> f64 {
    let (p, q) = (b.p as f64, b.q as f64);
    let term = |r: f64| (m + 1.0) / (1.0 + m * (1.0 + r));
    match which {
        Invariant::Kemeny if printed => p * (m - 1.0) + b.kemeny + b.sum_tail(term),
        Invariant::Kemeny => p * (m - 1.0) + b.kemeny + b.sum_all(term),
        Invariant::Kirchhoff if printed => {
            2.0 * (m + 1.0) * q * (p * (m - 1.0) + b.sum_tail(term)) + (m + 1.0) * b.kirchhoff
        }
        Invariant::Kirchhoff => {
            2.0 * (2.0 * m + 1.0) * q * splitting(b, m, Invariant::Kemeny, false)
        }
        Invariant::Trees => {
            let ln = p * (m + 1.0).ln()
                + m * b.ln_degree_product()
                + b.trees.ln()
                + b.ln_prod_all(|r| 1.0 + m * r / (m + 1.0))
                - (2.0 * m + 1.0).ln();
            ln.exp()
        }
    }
}

fn shadow(b: &BaseGraphData, m: f64, which: Invariant) -> f64 {
    let (p, q) = (b.p as f64, b.q as f64);
    match which {
        Invariant::Kemeny => p * (m - 1.0) + b.kemeny,
        Invariant::Kirchhoff => 2.0 * m * m * q * (p * (m - 1.0)) + m * m * b.kirchhoff,
        Invariant::Trees => {
            let ln =
                m * p * m.ln() + (m - 1.0) * b.ln_degree_product() + b.trees.ln() - 2.0 * m.ln();
            ln.exp()
        }
    }
}

fn h1(b: &BaseGraphData, m: f64, which: Invariant, printed: bool) -> f64 {
    let (p, q) = (b.p as f64, b.q as f64);
    let first = |r: f64| (m - 1.0) / (m - 1.0 + r);
    let second = |r: f64| m * (m - 1.0) / (m * m - m + (m - 2.0) * r);
    let size = m * m - 2.0;
    match which {
        Invariant::Kemeny if printed => m - 3.0 + b.kemeny + b.sum_tail(first) + b.sum_tail(second),
        Invariant::Kemeny => p * (m - 3.0) + b.kemeny + b.sum_all(first) + b.sum_all(second),
        Invariant::Kirchhoff if printed => {
            2.0 * size * q * (m - 3.0 + b.sum_tail(first) + b.sum_tail(second)) + size * b.kirchhoff
        }
        Invariant::Kirchhoff => 2.0 * size * q * h1(b, m, Invariant::Kemeny, false),
        Invariant::Trees => {
            let stripped_copies = if printed { 2.0 } else { 2.0 * p };
            let ln = (m - 2.0) * p * m.ln()
                + stripped_copies * (m - 1.0).ln()
                + (m - 1.0) * b.ln_degree_product()
                + b.trees.ln()
                + b.ln_prod_all(|r| 1.0 + r / (m - 1.0))
                + b.ln_prod_all(|r| 1.0 + (m - 2.0) * r / (m * (m - 1.0)))
                - size.ln();
            ln.exp()
        }
    }
}

fn h2(b: &BaseGraphData, m: f64, which: Invariant, printed: bool) -> f64 {
    let (p, q) = (b.p as f64, b.q as f64);
    let first = |r: f64| 2.0 * m / (2.0 * m + (m - 2.0) * r);
    let second = |r: f64| 2.0 / (2.0 - r);
    let size = 3.0 * m - 2.0;
    match which {
        Invariant::Kemeny if printed => m - 3.0 + b.kemeny + b.sum_tail(first) + b.sum_tail(second),
        Invariant::Kemeny => b.kemeny + b.sum_all(first) + (m - 2.0) * b.sum_all(second),
        Invariant::Kirchhoff if printed => {
            2.0 * size * q * (m - 3.0 + b.sum_tail(first) + b.sum_tail(second)) + size * b.kirchhoff
        }
        Invariant::Kirchhoff => 2.0 * size * q * h2(b, m, Invariant::Kemeny, false),
        Invariant::Trees => {
            let satellites = if printed {
                b.ln_prod_all(|r| 1.0 + r / 2.0)
            } else {
                (m - 2.0) * b.ln_prod_all(|r| 1.0 - r / 2.0)
            };
            let ln = (m - 1.0) * p * 2f64.ln()
                + p * m.ln()
                + (m - 1.0) * b.ln_degree_product()
                + b.trees.ln()
                + b.ln_prod_all(|r| 1.0 + (m - 2.0) * r / (2.0 * m))
                + satellites
                - size.ln();
            ln.exp()
        }
    }
}

fn h3(b: &BaseGraphData, m: f64, which: Invariant, printed: bool) -> f64 {
    let (p, q) = (b.p as f64, b.q as f64);
    let first = |r: f64| 2.0 / (2.0 + r);
    let second = |r: f64| 2.0 / (2.0 - r);
    let size = 3.0 * (m - 1.0);
    match which {
        Invariant::Kemeny if printed => {
            6.0 * (m - 1.0) * q * (b.kemeny + b.sum_tail(first) + b.sum_tail(second))
        }
        Invariant::Kemeny => b.kemeny + b.sum_all(first) + (m - 2.0) * b.sum_all(second),
        Invariant::Kirchhoff if printed => {
            6.0 * (m - 1.0) * q * (b.sum_tail(first) + b.sum_tail(second))
                + 3.0 * (m - 1.0) * b.kirchhoff
        }
        Invariant::Kirchhoff => 2.0 * size * q * h3(b, m, Invariant::Kemeny, false),
        Invariant::Trees => {
            let satellite_power = if printed { 1.0 } else { m - 2.0 };
            let ln = (m - 1.0) * p * 2f64.ln()
                + p * (m - 1.0).ln()
                + (m - 1.0) * b.ln_degree_product()
                + b.trees.ln()
                + satellite_power * b.ln_prod_all(|r| 1.0 - r / 2.0)
                + b.ln_prod_all(|r| 1.0 + r / 2.0)
                - (3.0 * m - 3.0).ln();
            ln.exp()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn base(g: &Graph) -> BaseGraphData {
        BaseGraphData::from_graph(g, &Tolerances::default()).unwrap()
    }

    fn eval(g: &Graph, op: OperationKind, which: Invariant, mode: FormulaMode) -> f64 {
        closed_form_invariant(&base(g), &op, which, mode).unwrap()
    }

    #[test]
    fn shadow_of_k2() {
        let k2 = Graph::complete(2).unwrap();
        let op = OperationKind::Shadow { m: 2 };
        for mode in [FormulaMode::AsPrinted, FormulaMode::Corrected] {
            assert!((eval(&k2, op, Invariant::Kemeny, mode) - 2.5).abs() < 1e-12);
            assert!((eval(&k2, op, Invariant::Kirchhoff, mode) - 20.0).abs() < 1e-12);
            assert!((eval(&k2, op, Invariant::Trees, mode) - 4.0).abs() < 1e-12);
        }
    }

    #[test]
    fn splitting_of_k2_as_printed_and_corrected() {
        let k2 = Graph::complete(2).unwrap();
        let op = OperationKind::Splitting { m: 1 };
        let printed = eval(&k2, op, Invariant::Kemeny, FormulaMode::AsPrinted);
        assert!((printed - 2.5).abs() < 1e-12);
        let corrected = eval(&k2, op, Invariant::Kemeny, FormulaMode::Corrected);
        assert!((corrected - 19.0 / 6.0).abs() < 1e-12);
        let kf = eval(&k2, op, Invariant::Kirchhoff, FormulaMode::Corrected);
        assert!((kf - 19.0).abs() < 1e-12);
        let kf_printed = eval(&k2, op, Invariant::Kirchhoff, FormulaMode::AsPrinted);
        assert!((kf_printed - 10.0).abs() < 1e-12);
        let t = eval(&k2, op, Invariant::Trees, FormulaMode::AsPrinted);
        assert!((t - 1.0).abs() < 1e-12);
    }

    #[test]
    fn ranges() {
        let b = base(&Graph::complete(3).unwrap());
        let run = |op| closed_form_invariant(&b, &op, Invariant::Kemeny, FormulaMode::Corrected);
        assert!(matches!(
            run(OperationKind::DuplicateIter { m: 1 }),
            Err(Error::NoClosedForm(_))
        ));
        assert_eq!(
            run(OperationKind::H2 { m: 3 }),
            Err(Error::MOutOfTheoremRange {
                op: "h2",
                m: 3,
                min: 4
            })
        );
        assert_eq!(
            run(OperationKind::H3 { m: 2 }),
            Err(Error::MOutOfTheoremRange {
                op: "h3",
                m: 2,
                min: 3
            })
        );
        assert!(run(OperationKind::H1 { m: 4, i: 0, j: 3 }).is_ok());
        assert!(matches!(
            run(OperationKind::H1 { m: 4, i: 1, j: 1 }),
            Err(Error::InvalidCopyPair { .. })
        ));
    }

    #[test]
    fn base_requires_connectivity() {
        let two_k2 = Graph::from_edge_list(4, [(0, 1), (2, 3)]).unwrap();
        assert_eq!(
            BaseGraphData::from_graph(&two_k2, &Tolerances::default()),
            Err(Error::Disconnected)
        );
    }
}
