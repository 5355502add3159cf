//! Dense matrices, the cyclic Jacobi eigensolver and eigenvalue grouping.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// Row-major dense real matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1.0;
        }
        m
    }

    pub fn from_row_major(rows: usize, cols: usize, data: Vec<f64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: rows * cols,
                actual: data.len(),
            });
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> f64) -> Self {
        let data = (0..rows)
            .flat_map(|i| (0..cols).map(move |j| (i, j)))
            .map(|(i, j)| f(i, j))
            .collect();
        Matrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn trace(&self) -> f64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |acc, x| acc.max(x.abs()))
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = f64;

    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        &mut self.data[i * self.cols + j]
    }
}

/// Kronecker product: `(A ⊗ B)[i*rB + k, j*cB + l] = A[i,j] * B[k,l]`.
pub fn kron(a: &Matrix, b: &Matrix) -> Matrix {
    let (br, bc) = (b.rows, b.cols);
    Matrix::from_fn(a.rows * br, a.cols * bc, |r, c| {
        a[(r / br, c / bc)] * b[(r % br, c % bc)]
    })
}

/// Square real symmetric matrix with finite entries.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseSymMatrix(Matrix);

impl DenseSymMatrix {
    /// Accepts `m` if it is square, finite and symmetric to within
    /// `1e-12 * max(1, max|entry|)`.
    pub fn new(m: Matrix) -> Result<Self> {
        if m.rows != m.cols {
            return Err(Error::DimensionMismatch {
                expected: m.rows * m.rows,
                actual: m.data.len(),
            });
        }
        if m.data.iter().any(|x| !x.is_finite()) {
            return Err(Error::NonFinite);
        }
        let tol = 1e-12 * m.max_abs().max(1.0);
        for i in 0..m.rows {
            for j in i + 1..m.cols {
                if (m[(i, j)] - m[(j, i)]).abs() > tol {
                    return Err(Error::NotSymmetric { row: i, col: j });
                }
            }
        }
        Ok(DenseSymMatrix(m))
    }

    pub fn order(&self) -> usize {
        self.0.rows
    }

    pub fn as_matrix(&self) -> &Matrix {
        &self.0
    }

    pub fn into_matrix(self) -> Matrix {
        self.0
    }
}

impl std::ops::Index<(usize, usize)> for DenseSymMatrix {
    type Output = f64;

    fn index(&self, idx: (usize, usize)) -> &f64 {
        &self.0[idx]
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JacobiOptions {
    pub tol: f64,
    pub max_sweeps: usize,
}

impl Default for JacobiOptions {
    fn default() -> Self {
        JacobiOptions {
            tol: 1e-11,
            max_sweeps: 100,
        }
    }
}

fn off_diagonal_norm(a: &Matrix) -> f64 {
    let n = a.rows;
    let mut sum = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                sum += a[(i, j)] * a[(i, j)];
            }
        }
    }
    sum.sqrt()
}

/// Eigenvalues of a symmetric matrix in non-decreasing order, by row-cyclic
/// Jacobi sweeps.
///
/// Converged when the off-diagonal Frobenius norm is below
/// `tol * max(1, ||M||_F)`; otherwise `NoConvergence` after `max_sweeps`.
pub fn sym_eigenvalues(m: &DenseSymMatrix, opts: JacobiOptions) -> Result<Vec<f64>> {
    let n = m.order();
    let mut a = m.0.clone();
    let threshold = opts.tol * a.frobenius_norm().max(1.0);

    let mut off = off_diagonal_norm(&a);
    let mut sweeps = 0;
    while off >= threshold {
        if sweeps == opts.max_sweeps {
            return Err(Error::NoConvergence {
                sweeps,
                off_norm: off,
            });
        }
        for p in 0..n {
            for q in p + 1..n {
                rotate(&mut a, p, q);
            }
        }
        sweeps += 1;
        off = off_diagonal_norm(&a);
    }

    let mut eigs: Vec<f64> = (0..n).map(|i| a[(i, i)]).collect();
    eigs.sort_by(f64::total_cmp);
    Ok(eigs)
}

/// Applies the plane rotation that zeroes `a[p,q]` as `J^T A J`.
fn rotate(a: &mut Matrix, p: usize, q: usize) {
    let apq = a[(p, q)];
    if apq == 0.0 {
        return;
    }
    let theta = (a[(q, q)] - a[(p, p)]) / (2.0 * apq);
    let t = if theta.abs() > 1e150 {
        0.5 / theta
    } else {
        theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
    };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;

    let n = a.rows;
    for k in 0..n {
        if k == p || k == q {
            continue;
        }
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        let new_kp = c * akp - s * akq;
        let new_kq = s * akp + c * akq;
        a[(k, p)] = new_kp;
        a[(p, k)] = new_kp;
        a[(k, q)] = new_kq;
        a[(q, k)] = new_kq;
    }
    a[(p, p)] -= t * apq;
    a[(q, q)] += t * apq;
    a[(p, q)] = 0.0;
    a[(q, p)] = 0.0;
}

/// One distinct eigenvalue and its algebraic multiplicity.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SpectrumGroup {
    pub value: f64,
    pub multiplicity: usize,
}

/// Multiset of real eigenvalues as strictly increasing groups.
#[derive(Debug, Clone, PartialEq, Default, Serialize)]
#[serde(transparent)]
pub struct Spectrum {
    groups: Vec<SpectrumGroup>,
}

impl Spectrum {
    pub fn groups(&self) -> &[SpectrumGroup] {
        &self.groups
    }

    /// Total multiplicity.
    pub fn order(&self) -> usize {
        self.groups.iter().map(|g| g.multiplicity).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.groups.is_empty()
    }

    /// Every eigenvalue repeated by multiplicity, ascending.
    pub fn expanded(&self) -> Vec<f64> {
        self.groups
            .iter()
            .flat_map(|g| std::iter::repeat_n(g.value, g.multiplicity))
            .collect()
    }

    /// `Σ multiplicity · |value|`.
    pub fn energy(&self) -> f64 {
        self.groups
            .iter()
            .map(|g| g.multiplicity as f64 * g.value.abs())
            .sum()
    }

    pub fn largest(&self) -> Option<f64> {
        self.groups.last().map(|g| g.value)
    }

    pub fn smallest(&self) -> Option<f64> {
        self.groups.first().map(|g| g.value)
    }

    /// All groups lie within `tol` of an integer.
    pub fn is_integral(&self, tol: f64) -> bool {
        self.groups
            .iter()
            .all(|g| (g.value - g.value.round()).abs() <= tol)
    }

    /// Same group count, identical multiplicities and values within `tol`.
    pub fn matches(&self, other: &Spectrum, tol: f64) -> bool {
        self.groups.len() == other.groups.len()
            && self
                .groups
                .iter()
                .zip(&other.groups)
                .all(|(a, b)| a.multiplicity == b.multiplicity && (a.value - b.value).abs() <= tol)
    }

    /// Largest deviation between the sorted expanded lists, or `None` if the
    /// total multiplicities differ.
    pub fn max_deviation(&self, other: &Spectrum) -> Option<f64> {
        let (a, b) = (self.expanded(), other.expanded());
        (a.len() == b.len()).then(|| {
            a.iter()
                .zip(&b)
                .fold(0.0, |acc: f64, (x, y)| acc.max((x - y).abs()))
        })
    }
}

impl fmt::Display for Spectrum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, g) in self.groups.iter().rev().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}:{}", crate::format::sig12(g.value), g.multiplicity)?;
        }
        write!(f, "}}")
    }
}

/// Groups sorted eigenvalues: each value joins the current group when it is
/// within `group_tol` of the group's running mean. Group value is the mean.
pub fn group_multiplicities(eigs: &[f64], group_tol: f64) -> Spectrum {
    let mut groups: Vec<SpectrumGroup> = Vec::new();
    let mut sum = 0.0;
    for &x in eigs {
        match groups.last_mut() {
            Some(g) if (x - g.value).abs() <= group_tol => {
                sum += x;
                g.multiplicity += 1;
                g.value = sum / g.multiplicity as f64;
            }
            _ => {
                sum = x;
                groups.push(SpectrumGroup {
                    value: x,
                    multiplicity: 1,
                });
            }
        }
    }
    Spectrum { groups }
}

/// Sorts `values` and groups them.
pub fn spectrum_from_values(mut values: Vec<f64>, group_tol: f64) -> Spectrum {
    values.sort_by(f64::total_cmp);
    group_multiplicities(&values, group_tol)
}
