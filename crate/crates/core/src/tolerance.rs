use serde::Serialize;

use crate::error::{Error, Result};

/// Numeric thresholds shared by the eigensolver, spectrum grouping and the
/// verification verdicts.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Tolerances {
    /// Jacobi stops once the off-diagonal Frobenius norm drops below
    /// `solver * max(1, ||M||_F)`.
    pub solver: f64,
    /// Sorted eigenvalues closer than this to the running group mean merge.
    pub grouping: f64,
    /// Absolute floor of the MATCH threshold.
    pub match_abs: f64,
    /// Relative part of the MATCH threshold, scaled by `|oracle|`.
    pub match_rel: f64,
    pub max_sweeps: usize,
    /// Largest matrix order the eigensolver accepts.
    pub max_order: usize,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            solver: 1e-11,
            grouping: 1e-7,
            match_abs: 1e-7,
            match_rel: 1e-9,
            max_sweeps: 100,
            max_order: 4096,
        }
    }
}

impl Tolerances {
    /// Requires `0 < solver < grouping <= match_abs`.
    pub fn validate(&self) -> Result<()> {
        let all_positive = [self.solver, self.grouping, self.match_abs, self.match_rel]
            .iter()
            .all(|t| t.is_finite() && *t > 0.0);
        if !all_positive {
            return Err(Error::InvalidTolerances(
                "tolerances must be finite and strictly positive".into(),
            ));
        }
        if !(self.solver < self.grouping && self.grouping <= self.match_abs) {
            return Err(Error::InvalidTolerances(format!(
                "need solver < grouping <= match, got {:e} / {:e} / {:e}",
                self.solver, self.grouping, self.match_abs
            )));
        }
        if self.max_sweeps == 0 {
            return Err(Error::InvalidTolerances(
                "sweep budget must be positive".into(),
            ));
        }
        Ok(())
    }

    /// `max(match_abs, match_rel * |oracle|)`.
    pub fn match_threshold(&self, oracle: f64) -> f64 {
        self.match_abs.max(self.match_rel * oracle.abs())
    }
}
