//! Kemeny's constant, the degree Kirchhoff index and spanning-tree counts,
//! integrality and equienergetic predicates, closed forms for the operations
//! and the verification ledger that compares the two.

mod closed_form;
mod verify;

pub use closed_form::{
    closed_form_invariant, invariant_min_m, BaseGraphData, FormulaMode, Invariant,
};
pub use verify::{verify_all, ModeSelection, Verdict, VerificationRecord};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::spectral::{self, MatrixKind};
use crate::tolerance::Tolerances;

/// A grouped eigenvalue counts as an integer within this distance.
pub const INTEGRALITY_TOL: f64 = 1e-6;

/// Where the normalized Laplacian eigenvalues come from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LaplacianRoute {
    /// Eigenvalues of `I - D^{-1/2} A D^{-1/2}`.
    Direct,
    /// `1 - ρ` over the Randić eigenvalues.
    ViaRandic,
}

/// Connected with at least two vertices (hence no isolated vertex).
fn require_connected(g: &Graph) -> Result<()> {
    match g.order() {
        0 => Err(Error::EmptyGraph),
        1 => Err(Error::IsolatedVertex(0)),
        _ if !g.is_connected() => Err(Error::Disconnected),
        _ => Ok(()),
    }
}

/// Ascending normalized Laplacian eigenvalues.
pub fn laplacian_eigenvalues(
    g: &Graph,
    route: LaplacianRoute,
    tol: &Tolerances,
) -> Result<Vec<f64>> {
    match route {
        LaplacianRoute::Direct => spectral::eigenvalues(g, MatrixKind::NormalizedLaplacian, tol),
        LaplacianRoute::ViaRandic => {
            let rho = spectral::eigenvalues(g, MatrixKind::Randic, tol)?;
            Ok(rho.iter().rev().map(|r| 1.0 - r).collect())
        }
    }
}

/// `Σ_{i≥2} 1/μ_i`. The first (smallest) eigenvalue is dropped by position:
/// a connected graph has exactly one zero.
pub fn kemeny_from_laplacian(mu: &[f64]) -> f64 {
    mu.iter().skip(1).map(|x| 1.0 / x).sum()
}

/// `Π d_i · Π_{i≥2} μ_i / Σ d_i`, evaluated in log space.
pub fn trees_from_laplacian(degrees: &[usize], mu: &[f64]) -> f64 {
    let ln_deg: f64 = degrees.iter().map(|&d| (d as f64).ln()).sum();
    let ln_mu: f64 = mu.iter().skip(1).map(|x| x.ln()).sum();
    let total: usize = degrees.iter().sum();
    (ln_deg + ln_mu - (total as f64).ln()).exp()
}

pub fn kemeny_with(g: &Graph, route: LaplacianRoute, tol: &Tolerances) -> Result<f64> {
    require_connected(g)?;
    Ok(kemeny_from_laplacian(&laplacian_eigenvalues(
        g, route, tol,
    )?))
}

pub fn kemeny(g: &Graph) -> Result<f64> {
    kemeny_with(g, LaplacianRoute::Direct, &Tolerances::default())
}

pub fn degree_kirchhoff_with(g: &Graph, route: LaplacianRoute, tol: &Tolerances) -> Result<f64> {
    Ok(2.0 * g.size() as f64 * kemeny_with(g, route, tol)?)
}

pub fn degree_kirchhoff(g: &Graph) -> Result<f64> {
    degree_kirchhoff_with(g, LaplacianRoute::Direct, &Tolerances::default())
}

/// Spectral spanning-tree count with its nearest integer.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SpanningTreeCount {
    pub value: f64,
    pub nearest_integer: f64,
}

impl SpanningTreeCount {
    fn new(value: f64) -> Self {
        SpanningTreeCount {
            value,
            nearest_integer: value.round(),
        }
    }
}

pub fn spanning_trees_with(
    g: &Graph,
    route: LaplacianRoute,
    tol: &Tolerances,
) -> Result<SpanningTreeCount> {
    require_connected(g)?;
    let mu = laplacian_eigenvalues(g, route, tol)?;
    Ok(SpanningTreeCount::new(trees_from_laplacian(
        &g.degrees(),
        &mu,
    )))
}

pub fn spanning_trees(g: &Graph) -> Result<SpanningTreeCount> {
    spanning_trees_with(g, LaplacianRoute::Direct, &Tolerances::default())
}

/// Exact spanning-tree count: determinant of the combinatorial Laplacian
/// with the last row and column removed, by fraction-free (Bareiss)
/// elimination over `i128`.
pub fn matrix_tree_count(g: &Graph) -> Result<u128> {
    let p = g.order();
    if p == 0 {
        return Err(Error::EmptyGraph);
    }
    let n = p - 1;
    if n == 0 {
        return Ok(1);
    }
    let mut a = vec![vec![0i128; n]; n];
    for (v, &d) in g.degrees().iter().enumerate().take(n) {
        a[v][v] = d as i128;
    }
    for &(u, v) in g.edges() {
        if u < n && v < n {
            a[u][v] -= 1;
            a[v][u] -= 1;
        }
    }

    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&r| a[r][k] != 0) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return Ok(0),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let lhs = a[i][j].checked_mul(a[k][k]).ok_or(Error::Overflow)?;
                let rhs = a[i][k].checked_mul(a[k][j]).ok_or(Error::Overflow)?;
                a[i][j] = lhs.checked_sub(rhs).ok_or(Error::Overflow)? / prev;
            }
        }
        prev = a[k][k];
    }
    let det = sign * a[n - 1][n - 1];
    u128::try_from(det).map_err(|_| Error::Overflow)
}

pub fn is_integral(g: &Graph) -> Result<bool> {
    Ok(spectral::spectrum(g, MatrixKind::Adjacency)?.is_integral(INTEGRALITY_TOL))
}

pub fn is_randic_integral(g: &Graph) -> Result<bool> {
    Ok(spectral::spectrum(g, MatrixKind::Randic)?.is_integral(INTEGRALITY_TOL))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EquienergeticReport {
    pub kind: MatrixKind,
    pub energy_first: f64,
    pub energy_second: f64,
    pub difference: f64,
    /// Orders agree, as the definition requires.
    pub same_order: bool,
    /// `same_order` and `|difference| <= 1e-7`.
    pub equienergetic: bool,
    /// Always false: non-isomorphism is not tested.
    pub isomorphism_checked: bool,
}

pub fn are_equienergetic(g1: &Graph, g2: &Graph, kind: MatrixKind) -> Result<EquienergeticReport> {
    let tol = Tolerances::default();
    let e1 = spectral::energy_with(g1, kind, &tol)?.value;
    let e2 = spectral::energy_with(g2, kind, &tol)?.value;
    let difference = (e1 - e2).abs();
    let same_order = g1.order() == g2.order();
    Ok(EquienergeticReport {
        kind,
        energy_first: e1,
        energy_second: e2,
        difference,
        same_order,
        equienergetic: same_order && difference <= tol.match_abs,
        isomorphism_checked: false,
    })
}

/// Invariants of one graph. Walk invariants are `None` for disconnected
/// graphs, whose spanning-tree count is exactly zero.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InvariantReport {
    pub order: usize,
    pub size: usize,
    pub connected: bool,
    pub energy: f64,
    pub randic_energy: f64,
    pub kemeny: Option<f64>,
    pub kirchhoff: Option<f64>,
    pub spanning_trees: SpanningTreeCount,
    pub integral: bool,
    pub randic_integral: bool,
}

impl InvariantReport {
    pub fn compute(g: &Graph, tol: &Tolerances) -> Result<Self> {
        let adjacency = spectral::energy_with(g, MatrixKind::Adjacency, tol)?;
        let randic = spectral::energy_with(g, MatrixKind::Randic, tol)?;
        let connected = g.is_connected();
        let (kemeny, kirchhoff, trees) = if connected {
            let mu = laplacian_eigenvalues(g, LaplacianRoute::Direct, tol)?;
            let k = kemeny_from_laplacian(&mu);
            (
                Some(k),
                Some(2.0 * g.size() as f64 * k),
                SpanningTreeCount::new(trees_from_laplacian(&g.degrees(), &mu)),
            )
        } else {
            (None, None, SpanningTreeCount::new(0.0))
        };
        Ok(InvariantReport {
            order: g.order(),
            size: g.size(),
            connected,
            energy: adjacency.value,
            randic_energy: randic.value,
            kemeny,
            kirchhoff,
            spanning_trees: trees,
            integral: adjacency.spectrum.is_integral(INTEGRALITY_TOL),
            randic_integral: randic.spectrum.is_integral(INTEGRALITY_TOL),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ops;

    fn near(a: f64, b: f64) -> bool {
        (a - b).abs() < 1e-10
    }

    #[test]
    fn kemeny_values() {
        assert!(near(kemeny(&Graph::complete(2).unwrap()).unwrap(), 0.5));
        assert!(near(kemeny(&Graph::cycle(4).unwrap()).unwrap(), 2.5));
        assert!(near(
            kemeny(&Graph::complete(3).unwrap()).unwrap(),
            4.0 / 3.0
        ));
        assert!(near(kemeny(&Graph::path(4).unwrap()).unwrap(), 19.0 / 6.0));
    }

    #[test]
    fn kirchhoff_values() {
        assert!(near(
            degree_kirchhoff(&Graph::complete(2).unwrap()).unwrap(),
            1.0
        ));
        assert!(near(
            degree_kirchhoff(&Graph::cycle(4).unwrap()).unwrap(),
            20.0
        ));
        assert!(near(
            degree_kirchhoff(&Graph::complete(3).unwrap()).unwrap(),
            8.0
        ));
    }

    #[test]
    fn tree_values() {
        for (g, t) in [
            (Graph::cycle(4).unwrap(), 4.0),
            (Graph::complete(2).unwrap(), 1.0),
            (Graph::complete(4).unwrap(), 16.0),
            (Graph::petersen(), 2000.0),
        ] {
            let count = spanning_trees(&g).unwrap();
            assert!((count.value - t).abs() < 1e-8 * t, "{g:?}");
            assert_eq!(count.nearest_integer, t);
            assert_eq!(matrix_tree_count(&g).unwrap() as f64, t);
        }
    }

    #[test]
    fn matrix_tree_edge_cases() {
        assert_eq!(matrix_tree_count(&Graph::empty(1)).unwrap(), 1);
        let two_k2 = Graph::from_edge_list(4, [(0, 1), (2, 3)]).unwrap();
        assert_eq!(matrix_tree_count(&two_k2).unwrap(), 0);
        assert_eq!(
            matrix_tree_count(&Graph::complete(7).unwrap()).unwrap(),
            7u128.pow(5)
        );
        // zero pivot forces a row swap
        let g = Graph::from_edge_list(4, [(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap();
        assert_eq!(matrix_tree_count(&g).unwrap(), 4);
    }

    #[test]
    fn disconnected_rejected() {
        let two_k2 = Graph::from_edge_list(4, [(0, 1), (2, 3)]).unwrap();
        assert_eq!(kemeny(&two_k2), Err(Error::Disconnected));
        assert_eq!(degree_kirchhoff(&two_k2), Err(Error::Disconnected));
        assert_eq!(spanning_trees(&two_k2), Err(Error::Disconnected));
        assert_eq!(kemeny(&Graph::empty(1)), Err(Error::IsolatedVertex(0)));
        let report = InvariantReport::compute(&two_k2, &Tolerances::default()).unwrap();
        assert!(report.kemeny.is_none() && report.kirchhoff.is_none());
        assert_eq!(report.spanning_trees.value, 0.0);
    }

    #[test]
    fn routes_agree() {
        let tol = Tolerances::default();
        let g = Graph::petersen();
        let a = kemeny_with(&g, LaplacianRoute::Direct, &tol).unwrap();
        let b = kemeny_with(&g, LaplacianRoute::ViaRandic, &tol).unwrap();
        assert!((a - b).abs() < 1e-8);
    }

    #[test]
    fn integrality() {
        let shadow = ops::shadow(&Graph::cycle(4).unwrap(), 3).unwrap();
        assert!(is_randic_integral(&shadow).unwrap());
        let h3 = ops::h3(&Graph::complete(2).unwrap(), 3).unwrap();
        assert!(is_integral(&h3).unwrap());
        assert!(!is_integral(&Graph::path(4).unwrap()).unwrap());
        let iso = Graph::from_edge_list(3, [(0, 1)]).unwrap();
        assert_eq!(is_randic_integral(&iso), Err(Error::IsolatedVertex(2)));
    }

    #[test]
    fn equienergetic_pairs() {
        let k3 = Graph::complete(3).unwrap();
        let dup = ops::duplicate_iter(&k3, 1).unwrap();
        let sh = ops::shadow(&k3, 2).unwrap();
        let a = are_equienergetic(&dup, &sh, MatrixKind::Adjacency).unwrap();
        assert!(a.equienergetic && !a.isomorphism_checked);
        let r = are_equienergetic(&dup, &sh, MatrixKind::Randic).unwrap();
        assert!(!r.equienergetic);
        assert!(
            are_equienergetic(&k3, &k3, MatrixKind::Randic)
                .unwrap()
                .equienergetic
        );
        let order =
            are_equienergetic(&k3, &Graph::cycle(4).unwrap(), MatrixKind::Adjacency).unwrap();
        assert!(!order.same_order && !order.equienergetic);
    }
}
