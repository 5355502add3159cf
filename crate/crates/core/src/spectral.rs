//! Graph matrices, numeric spectra and energies, and the closed-form
//! spectrum/energy predictors for each operation.
//!
//! The predictors only see the base graph's spectrum and the operation; they
//! never touch the constructed graph, so comparing a prediction with
//! [`spectrum`] of `op.apply(g)` is a genuine two-route check.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::linalg::{
    group_multiplicities, spectrum_from_values, sym_eigenvalues, DenseSymMatrix, JacobiOptions,
    Matrix, Spectrum,
};
use crate::ops::OperationKind;
use crate::tolerance::Tolerances;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MatrixKind {
    Adjacency,
    /// `D^{-1/2} A D^{-1/2}`.
    Randic,
    /// `I - D^{-1/2} A D^{-1/2}`.
    NormalizedLaplacian,
}

impl MatrixKind {
    pub fn name(&self) -> &'static str {
        match self {
            MatrixKind::Adjacency => "adjacency",
            MatrixKind::Randic => "randic",
            MatrixKind::NormalizedLaplacian => "laplacian",
        }
    }

    fn needs_degrees(&self) -> bool {
        !matches!(self, MatrixKind::Adjacency)
    }
}

impl fmt::Display for MatrixKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for MatrixKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "adjacency" | "a" => Ok(MatrixKind::Adjacency),
            "randic" | "r" => Ok(MatrixKind::Randic),
            "laplacian" | "normalized-laplacian" | "nl" => Ok(MatrixKind::NormalizedLaplacian),
            other => Err(Error::Parse(format!("unknown matrix kind `{other}`"))),
        }
    }
}

fn check_graph(g: &Graph, kind: MatrixKind) -> Result<()> {
    if g.order() == 0 {
        return Err(Error::EmptyGraph);
    }
    if kind.needs_degrees() {
        if let Some(v) = g.first_isolated_vertex() {
            return Err(Error::IsolatedVertex(v));
        }
    }
    Ok(())
}

pub fn matrix(g: &Graph, kind: MatrixKind) -> Result<DenseSymMatrix> {
    check_graph(g, kind)?;
    let p = g.order();
    let mut m = match kind {
        MatrixKind::NormalizedLaplacian => Matrix::identity(p),
        _ => Matrix::zeros(p, p),
    };
    let inv_sqrt: Vec<f64> = g
        .degrees()
        .iter()
        .map(|&d| 1.0 / (d as f64).sqrt())
        .collect();
    for &(u, v) in g.edges() {
        let w = match kind {
            MatrixKind::Adjacency => 1.0,
            MatrixKind::Randic => inv_sqrt[u] * inv_sqrt[v],
            MatrixKind::NormalizedLaplacian => -inv_sqrt[u] * inv_sqrt[v],
        };
        m[(u, v)] = w;
        m[(v, u)] = w;
    }
    DenseSymMatrix::new(m)
}

/// Sorted (ascending) eigenvalues of the chosen matrix.
pub fn eigenvalues(g: &Graph, kind: MatrixKind, tol: &Tolerances) -> Result<Vec<f64>> {
    let m = matrix(g, kind)?;
    if m.order() > tol.max_order {
        return Err(Error::OrderTooLarge {
            order: m.order(),
            max: tol.max_order,
        });
    }
    sym_eigenvalues(
        &m,
        JacobiOptions {
            tol: tol.solver,
            max_sweeps: tol.max_sweeps,
        },
    )
}

pub fn spectrum_with(g: &Graph, kind: MatrixKind, tol: &Tolerances) -> Result<Spectrum> {
    Ok(group_multiplicities(
        &eigenvalues(g, kind, tol)?,
        tol.grouping,
    ))
}

pub fn spectrum(g: &Graph, kind: MatrixKind) -> Result<Spectrum> {
    spectrum_with(g, kind, &Tolerances::default())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EnergyReport {
    pub kind: MatrixKind,
    pub value: f64,
    pub spectrum: Spectrum,
}

pub fn energy_with(g: &Graph, kind: MatrixKind, tol: &Tolerances) -> Result<EnergyReport> {
    let eigs = eigenvalues(g, kind, tol)?;
    Ok(EnergyReport {
        kind,
        value: eigs.iter().map(|x| x.abs()).sum(),
        spectrum: group_multiplicities(&eigs, tol.grouping),
    })
}

pub fn energy(g: &Graph, kind: MatrixKind) -> Result<EnergyReport> {
    energy_with(g, kind, &Tolerances::default())
}

/// Smallest `m` for which the closed-form spectrum of `op` under `kind`
/// is stated. Stricter than the construction bound for the Randić forms of
/// shadow, H2 and H3.
pub fn theorem_min_m(op: &OperationKind, kind: MatrixKind) -> usize {
    let randic = kind != MatrixKind::Adjacency;
    match op {
        OperationKind::Splitting { .. } | OperationKind::DuplicateIter { .. } => 1,
        OperationKind::Shadow { .. } => {
            if randic {
                2
            } else {
                1
            }
        }
        OperationKind::H1 { .. } => 4,
        OperationKind::H2 { .. } => {
            if randic {
                4
            } else {
                2
            }
        }
        OperationKind::H3 { .. } => {
            if randic {
                3
            } else {
                2
            }
        }
    }
}

fn check_theorem_range(op: &OperationKind, kind: MatrixKind) -> Result<()> {
    op.validate()?;
    let min = theorem_min_m(op, kind);
    if op.m() < min {
        return Err(Error::MOutOfTheoremRange {
            op: op.name(),
            m: op.m(),
            min,
        });
    }
    Ok(())
}

/// Eigenvalues (with multiplicity) of the block coefficient matrix `F` such
/// that the operation's matrix is `F ⊗ M(G)` for `M` the adjacency or Randić
/// matrix of the base graph.
pub fn coefficient_spectrum(op: &OperationKind, kind: MatrixKind) -> Result<Vec<(f64, usize)>> {
    check_theorem_range(op, kind)?;
    let m = op.m();
    let mf = m as f64;
    let adjacency = kind == MatrixKind::Adjacency;
    let factors = match *op {
        OperationKind::Splitting { .. } => {
            if adjacency {
                let s = (1.0 + 4.0 * mf).sqrt();
                vec![((1.0 + s) / 2.0, 1), ((1.0 - s) / 2.0, 1), (0.0, m - 1)]
            } else {
                vec![(1.0, 1), (-mf / (mf + 1.0), 1), (0.0, m - 1)]
            }
        }
        OperationKind::Shadow { .. } => {
            let top = if adjacency { mf } else { 1.0 };
            vec![(top, 1), (0.0, m - 1)]
        }
        OperationKind::DuplicateIter { .. } => {
            let half = 1usize << (m - 1);
            vec![(1.0, half), (-1.0, half)]
        }
        OperationKind::H1 { .. } => {
            if adjacency {
                let r = (mf * mf + 2.0 * mf - 7.0).sqrt();
                vec![
                    ((mf - 1.0 + r) / 2.0, 1),
                    ((mf - 1.0 - r) / 2.0, 1),
                    (-1.0, 1),
                    (0.0, m - 3),
                ]
            } else {
                vec![
                    (1.0, 1),
                    (-1.0 / (mf - 1.0), 1),
                    (-(mf - 2.0) / (mf * (mf - 1.0)), 1),
                    (0.0, m - 3),
                ]
            }
        }
        OperationKind::H2 { .. } => {
            if adjacency {
                let r = (mf - 1.0).sqrt();
                vec![(1.0 + r, 1), (1.0 - r, 1), (1.0, m - 2)]
            } else {
                vec![(1.0, 1), (-(mf - 2.0) / (2.0 * mf), 1), (0.5, m - 2)]
            }
        }
        OperationKind::H3 { .. } => {
            if adjacency {
                let r = (4.0 * mf - 3.0).sqrt();
                vec![((1.0 + r) / 2.0, 1), ((1.0 - r) / 2.0, 1), (1.0, m - 2)]
            } else {
                vec![(1.0, 1), (-0.5, 1), (0.5, m - 2)]
            }
        }
    };
    Ok(factors.into_iter().filter(|&(_, k)| k > 0).collect())
}

/// Closed-form spectrum of `op(G)` from the spectrum of `G` (order `p`).
///
/// For the normalized Laplacian the base and result are related to the
/// Randić form through `μ = 1 - ρ`.
pub fn predict_spectrum(
    base: &Spectrum,
    p: usize,
    op: &OperationKind,
    kind: MatrixKind,
    group_tol: f64,
) -> Result<Spectrum> {
    if base.order() != p {
        return Err(Error::SpectrumOrderMismatch {
            expected: p,
            actual: base.order(),
        });
    }
    let factors = coefficient_spectrum(op, kind)?;
    let laplacian = kind == MatrixKind::NormalizedLaplacian;
    let mut values = Vec::with_capacity(op.expected_order(p));
    for &(f, fmult) in &factors {
        for g in base.groups() {
            let x = if laplacian { 1.0 - g.value } else { g.value };
            let y = f * x;
            let y = if laplacian { 1.0 - y } else { y };
            values.extend(std::iter::repeat_n(y, fmult * g.multiplicity));
        }
    }
    Ok(spectrum_from_values(values, group_tol))
}

/// Ratio `ε(op(G)) / ε(G)` for the adjacency or Randić energy.
pub fn energy_factor(op: &OperationKind, kind: MatrixKind) -> Result<f64> {
    if kind == MatrixKind::NormalizedLaplacian {
        return Err(Error::UnsupportedKind("energy scaling"));
    }
    check_theorem_range(op, kind)?;
    let mf = op.m() as f64;
    let adjacency = kind == MatrixKind::Adjacency;
    Ok(match op {
        OperationKind::Splitting { .. } => {
            if adjacency {
                (1.0 + 4.0 * mf).sqrt()
            } else {
                (2.0 * mf + 1.0) / (mf + 1.0)
            }
        }
        OperationKind::Shadow { .. } => {
            if adjacency {
                mf
            } else {
                1.0
            }
        }
        OperationKind::DuplicateIter { m } => 2f64.powi(*m as i32),
        OperationKind::H1 { .. } => {
            if adjacency {
                1.0 + (mf * mf + 2.0 * mf - 7.0).sqrt()
            } else {
                1.0 + 2.0 / mf
            }
        }
        OperationKind::H2 { .. } => {
            if adjacency {
                mf - 2.0 + 2.0 * (mf - 1.0).sqrt()
            } else {
                1.0 + (mf + 1.0) * (mf - 2.0) / (2.0 * mf)
            }
        }
        OperationKind::H3 { .. } => {
            if adjacency {
                mf - 2.0 + (4.0 * mf - 3.0).sqrt()
            } else {
                1.0 + (mf - 1.0) / 2.0
            }
        }
    })
}

/// Closed-form energy of `op(G)` from the energy of `G`.
pub fn predict_energy(base_energy: f64, op: &OperationKind, kind: MatrixKind) -> Result<f64> {
    Ok(energy_factor(op, kind)? * base_energy)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k2() -> Graph {
        Graph::complete(2).unwrap()
    }

    #[test]
    fn randic_matrices() {
        let r = matrix(&k2(), MatrixKind::Randic).unwrap();
        assert_eq!(r.as_matrix().as_slice(), &[0., 1., 1., 0.]);
        let r = matrix(&Graph::star(3).unwrap(), MatrixKind::Randic).unwrap();
        let h = 1.0 / 2f64.sqrt();
        assert!((r[(0, 1)] - h).abs() < 1e-15 && (r[(2, 0)] - h).abs() < 1e-15);
        assert_eq!(r[(1, 2)], 0.0);
    }

    #[test]
    fn laplacian_of_c4() {
        let e = eigenvalues(
            &Graph::cycle(4).unwrap(),
            MatrixKind::NormalizedLaplacian,
            &Tolerances::default(),
        )
        .unwrap();
        for (x, y) in e.iter().zip([0.0, 1.0, 1.0, 2.0]) {
            assert!((x - y).abs() < 1e-12);
        }
    }

    #[test]
    fn domain_errors() {
        let iso = Graph::from_edge_list(3, [(0, 1)]).unwrap();
        assert_eq!(
            matrix(&iso, MatrixKind::Randic),
            Err(Error::IsolatedVertex(2))
        );
        assert!(matrix(&iso, MatrixKind::Adjacency).is_ok());
        assert_eq!(
            matrix(&Graph::empty(0), MatrixKind::Adjacency),
            Err(Error::EmptyGraph)
        );
        let tight = Tolerances {
            max_order: 3,
            ..Tolerances::default()
        };
        assert!(matches!(
            eigenvalues(&Graph::cycle(4).unwrap(), MatrixKind::Adjacency, &tight),
            Err(Error::OrderTooLarge { order: 4, max: 3 })
        ));
    }

    #[test]
    fn energies() {
        assert!((energy(&k2(), MatrixKind::Adjacency).unwrap().value - 2.0).abs() < 1e-14);
        let c4 = Graph::cycle(4).unwrap();
        assert!((energy(&c4, MatrixKind::Randic).unwrap().value - 2.0).abs() < 1e-12);
        let star = energy(&Graph::star(5).unwrap(), MatrixKind::Randic).unwrap();
        assert!((star.value - 2.0).abs() < 1e-12);
        assert_eq!(star.spectrum.groups().len(), 3);
        assert_eq!(star.spectrum.groups()[1].multiplicity, 3);
    }

    #[test]
    fn predicted_splitting_of_k2() {
        let base = spectrum(&k2(), MatrixKind::Randic).unwrap();
        let op = OperationKind::Splitting { m: 1 };
        let pred = predict_spectrum(&base, 2, &op, MatrixKind::Randic, 1e-7).unwrap();
        assert_eq!(pred.expanded(), vec![-1.0, -0.5, 0.5, 1.0]);
    }

    #[test]
    fn predicted_shadow() {
        let base = spectrum(&k2(), MatrixKind::Adjacency).unwrap();
        let op = OperationKind::Shadow { m: 2 };
        let pred = predict_spectrum(&base, 2, &op, MatrixKind::Adjacency, 1e-7).unwrap();
        assert_eq!(pred.expanded(), vec![-2.0, 0.0, 0.0, 2.0]);

        let base = spectrum(&Graph::cycle(4).unwrap(), MatrixKind::Randic).unwrap();
        let op = OperationKind::Shadow { m: 3 };
        let pred = predict_spectrum(&base, 4, &op, MatrixKind::Randic, 1e-7).unwrap();
        let groups: Vec<_> = pred
            .groups()
            .iter()
            .map(|g| (g.value.round(), g.multiplicity))
            .collect();
        assert_eq!(groups, vec![(-1.0, 1), (0.0, 10), (1.0, 1)]);
    }

    #[test]
    fn predicted_energies() {
        let split = OperationKind::Splitting { m: 1 };
        let e = predict_energy(2.0, &split, MatrixKind::Adjacency).unwrap();
        assert!((e - 2.0 * 5f64.sqrt()).abs() < 1e-15);
        let h3 = OperationKind::H3 { m: 3 };
        assert_eq!(predict_energy(2.0, &h3, MatrixKind::Randic).unwrap(), 4.0);
        assert_eq!(
            predict_energy(2.0, &h3, MatrixKind::Adjacency).unwrap(),
            8.0
        );
    }

    #[test]
    fn theorem_ranges_enforced() {
        let err = |op: OperationKind, kind| predict_energy(1.0, &op, kind).unwrap_err();
        assert_eq!(
            err(OperationKind::H2 { m: 3 }, MatrixKind::Randic),
            Error::MOutOfTheoremRange {
                op: "h2",
                m: 3,
                min: 4
            }
        );
        assert_eq!(
            err(OperationKind::H3 { m: 2 }, MatrixKind::Randic),
            Error::MOutOfTheoremRange {
                op: "h3",
                m: 2,
                min: 3
            }
        );
        assert_eq!(
            err(OperationKind::Shadow { m: 1 }, MatrixKind::Randic),
            Error::MOutOfTheoremRange {
                op: "shadow",
                m: 1,
                min: 2
            }
        );
        assert!(predict_energy(1.0, &OperationKind::H2 { m: 3 }, MatrixKind::Adjacency).is_ok());
        assert!(predict_energy(
            1.0,
            &OperationKind::H2 { m: 2 },
            MatrixKind::NormalizedLaplacian
        )
        .is_err());
        let base = spectrum(&k2(), MatrixKind::Randic).unwrap();
        assert_eq!(
            predict_spectrum(
                &base,
                3,
                &OperationKind::Shadow { m: 2 },
                MatrixKind::Randic,
                1e-7
            ),
            Err(Error::SpectrumOrderMismatch {
                expected: 3,
                actual: 2
            })
        );
    }

    #[test]
    fn factor_multiplicities_sum_to_block_count() {
        for op in [
            OperationKind::Splitting { m: 3 },
            OperationKind::Shadow { m: 3 },
            OperationKind::DuplicateIter { m: 3 },
            OperationKind::H1 { m: 5, i: 0, j: 4 },
            OperationKind::H2 { m: 5 },
            OperationKind::H3 { m: 5 },
        ] {
            for kind in [MatrixKind::Adjacency, MatrixKind::Randic] {
                let total: usize = coefficient_spectrum(&op, kind)
                    .unwrap()
                    .iter()
                    .map(|f| f.1)
                    .sum();
                assert_eq!(total, op.block_pattern().rows(), "{op} {kind}");
            }
        }
    }

    #[test]
    fn kind_parsing() {
        assert_eq!("randic".parse::<MatrixKind>().unwrap(), MatrixKind::Randic);
        assert_eq!("A".parse::<MatrixKind>().unwrap(), MatrixKind::Adjacency);
        assert!("weird".parse::<MatrixKind>().is_err());
    }
}
