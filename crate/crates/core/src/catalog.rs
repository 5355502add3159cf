//! Families of equienergetic pairs and integral graphs built from one base.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::invariants::{are_equienergetic, EquienergeticReport, INTEGRALITY_TOL};
use crate::linalg::Spectrum;
use crate::ops::OperationKind;
use crate::spectral::{self, MatrixKind};
use crate::tolerance::Tolerances;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    /// `D^m(G)` against `D_{2^m}(G)`, plus Randić integrality of the shadows.
    DuplicateVsShadow,
    ShadowRandicIntegral,
    H2Integral,
    H3Integral,
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::DuplicateVsShadow => "duplicate-vs-shadow",
            Family::ShadowRandicIntegral => "shadow-randic-integral",
            Family::H2Integral => "h2-integral",
            Family::H3Integral => "h3-integral",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "duplicate-vs-shadow" => Ok(Family::DuplicateVsShadow),
            "shadow-randic-integral" => Ok(Family::ShadowRandicIntegral),
            "h2-integral" => Ok(Family::H2Integral),
            "h3-integral" => Ok(Family::H3Integral),
            other => Err(Error::Parse(format!("unknown family `{other}`"))),
        }
    }
}

impl Serialize for Family {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EquienergeticPair {
    pub m: usize,
    pub first: OperationKind,
    pub second: OperationKind,
    pub adjacency: EquienergeticReport,
    pub randic: EquienergeticReport,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IntegralHit {
    pub op: OperationKind,
    pub kind: MatrixKind,
    pub integral: bool,
    /// Perfect-square condition on `m` for the hub-copy families.
    pub square_condition: Option<bool>,
    pub spectrum: Spectrum,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Catalog {
    pub family: Family,
    pub max_m: usize,
    pub pairs: Vec<EquienergeticPair>,
    pub integral: Vec<IntegralHit>,
}

fn is_square(n: usize) -> bool {
    let r = (n as f64).sqrt().round() as usize;
    r * r == n
}

fn integral_hit(
    g: &Graph,
    op: OperationKind,
    kind: MatrixKind,
    square_condition: Option<bool>,
    tol: &Tolerances,
) -> Result<IntegralHit> {
    let spectrum = spectral::spectrum_with(&op.apply(g)?, kind, tol)?;
    Ok(IntegralHit {
        op,
        kind,
        integral: spectrum.is_integral(INTEGRALITY_TOL),
        square_condition,
        spectrum,
    })
}

/// Builds `family` over `base` for every legal `m <= max_m`.
pub fn build_catalog(
    base: &Graph,
    family: Family,
    max_m: usize,
    tol: &Tolerances,
) -> Result<Catalog> {
    if base.order() == 0 {
        return Err(Error::EmptyGraph);
    }
    let mut pairs = Vec::new();
    let mut integral = Vec::new();
    match family {
        Family::DuplicateVsShadow => {
            for m in 1..=max_m {
                let first = OperationKind::duplicate_iter(m)?;
                let second = OperationKind::shadow(1 << m)?;
                let (g1, g2) = (first.apply(base)?, second.apply(base)?);
                pairs.push(EquienergeticPair {
                    m,
                    first,
                    second,
                    adjacency: are_equienergetic(&g1, &g2, MatrixKind::Adjacency)?,
                    randic: are_equienergetic(&g1, &g2, MatrixKind::Randic)?,
                });
            }
            for m in 2..=max_m {
                integral.push(integral_hit(
                    base,
                    OperationKind::shadow(m)?,
                    MatrixKind::Randic,
                    None,
                    tol,
                )?);
            }
        }
        Family::ShadowRandicIntegral => {
            for m in 2..=max_m {
                integral.push(integral_hit(
                    base,
                    OperationKind::shadow(m)?,
                    MatrixKind::Randic,
                    None,
                    tol,
                )?);
            }
        }
        Family::H2Integral => {
            for m in 2..=max_m {
                let cond = Some(is_square(m - 1));
                integral.push(integral_hit(
                    base,
                    OperationKind::h2(m)?,
                    MatrixKind::Adjacency,
                    cond,
                    tol,
                )?);
            }
        }
        Family::H3Integral => {
            for m in 2..=max_m {
                let cond = Some(is_square(4 * m - 3));
                integral.push(integral_hit(
                    base,
                    OperationKind::h3(m)?,
                    MatrixKind::Adjacency,
                    cond,
                    tol,
                )?);
            }
        }
    }
    Ok(Catalog {
        family,
        max_m,
        pairs,
        integral,
    })
}
