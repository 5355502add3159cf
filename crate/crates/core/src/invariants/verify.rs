//! The verification ledger: every closed form compared with the oracle
//! computed on the constructed graph.

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use super::closed_form::{
    closed_form_invariant, invariant_min_m, BaseGraphData, FormulaMode, Invariant,
};
use super::{kemeny_from_laplacian, trees_from_laplacian, LaplacianRoute};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::linalg::{group_multiplicities, Spectrum};
use crate::ops::OperationKind;
use crate::spectral::{self, MatrixKind};
use crate::tolerance::Tolerances;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    Match,
    Mismatch,
    /// The closed form or the oracle could not be evaluated.
    Error,
}

impl Verdict {
    pub fn name(&self) -> &'static str {
        match self {
            Verdict::Match => "MATCH",
            Verdict::Mismatch => "MISMATCH",
            Verdict::Error => "ERROR",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl Serialize for Verdict {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationRecord {
    pub formula_id: String,
    pub closed_form: Option<f64>,
    pub oracle: Option<f64>,
    pub abs_diff: Option<f64>,
    pub verdict: Verdict,
    pub note: String,
    #[serde(skip)]
    pub mode: Option<FormulaMode>,
}

impl VerificationRecord {
    fn scalar(
        formula_id: String,
        mode: Option<FormulaMode>,
        closed: f64,
        oracle: f64,
        tol: &Tolerances,
    ) -> Self {
        let diff = (closed - oracle).abs();
        let verdict = if diff <= tol.match_threshold(oracle) {
            Verdict::Match
        } else {
            Verdict::Mismatch
        };
        VerificationRecord {
            formula_id,
            closed_form: Some(closed),
            oracle: Some(oracle),
            abs_diff: Some(diff),
            verdict,
            note: String::new(),
            mode,
        }
    }

    fn error(
        formula_id: String,
        mode: Option<FormulaMode>,
        oracle: Option<f64>,
        err: &Error,
    ) -> Self {
        VerificationRecord {
            formula_id,
            closed_form: None,
            oracle,
            abs_diff: None,
            verdict: Verdict::Error,
            note: err.to_string(),
            mode,
        }
    }

    /// A mismatch that is not an expected erratum of a printed formula.
    pub fn is_fatal_mismatch(&self) -> bool {
        self.verdict == Verdict::Mismatch && self.mode != Some(FormulaMode::AsPrinted)
    }
}

/// Which invariant formula variants to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ModeSelection {
    AsPrinted,
    Corrected,
    #[default]
    Both,
}

impl ModeSelection {
    pub fn modes(&self) -> &'static [FormulaMode] {
        match self {
            ModeSelection::AsPrinted => &[FormulaMode::AsPrinted],
            ModeSelection::Corrected => &[FormulaMode::Corrected],
            ModeSelection::Both => &[FormulaMode::AsPrinted, FormulaMode::Corrected],
        }
    }
}

impl FromStr for ModeSelection {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().replace('-', "_").as_str() {
            "as_printed" | "printed" => Ok(ModeSelection::AsPrinted),
            "corrected" => Ok(ModeSelection::Corrected),
            "both" => Ok(ModeSelection::Both),
            other => Err(Error::Parse(format!("unknown mode `{other}`"))),
        }
    }
}

struct BaseSpectra {
    adjacency: Vec<f64>,
    randic: Vec<f64>,
    data: BaseGraphData,
}

/// Oracle data of the constructed graph.
struct Oracle {
    adjacency: Vec<f64>,
    randic: Vec<f64>,
    kemeny: Option<f64>,
    kirchhoff: Option<f64>,
    trees: Option<f64>,
}

impl Oracle {
    fn compute(h: &Graph, tol: &Tolerances) -> Result<Self> {
        let adjacency = spectral::eigenvalues(h, MatrixKind::Adjacency, tol)?;
        let randic = spectral::eigenvalues(h, MatrixKind::Randic, tol)?;
        let (kemeny, kirchhoff, trees) = if h.is_connected() {
            let mu = super::laplacian_eigenvalues(h, LaplacianRoute::Direct, tol)?;
            let k = kemeny_from_laplacian(&mu);
            (
                Some(k),
                Some(2.0 * h.size() as f64 * k),
                Some(trees_from_laplacian(&h.degrees(), &mu)),
            )
        } else {
            (None, None, None)
        };
        Ok(Oracle {
            adjacency,
            randic,
            kemeny,
            kirchhoff,
            trees,
        })
    }

    fn eigs(&self, kind: MatrixKind) -> &[f64] {
        match kind {
            MatrixKind::Adjacency => &self.adjacency,
            _ => &self.randic,
        }
    }

    fn invariant(&self, which: Invariant) -> Option<f64> {
        match which {
            Invariant::Kemeny => self.kemeny,
            Invariant::Kirchhoff => self.kirchhoff,
            Invariant::Trees => self.trees,
        }
    }
}

const KINDS: [MatrixKind; 2] = [MatrixKind::Adjacency, MatrixKind::Randic];

/// Verifies every closed form for each operation on `g`.
///
/// `g` must be connected. Per-formula failures become `ERROR` records and
/// never abort the batch. Records are ordered by `(op, formula_id)`.
pub fn verify_all(
    g: &Graph,
    ops: &[OperationKind],
    modes: ModeSelection,
    tol: &Tolerances,
) -> Result<Vec<VerificationRecord>> {
    let base = BaseSpectra {
        adjacency: spectral::eigenvalues(g, MatrixKind::Adjacency, tol)?,
        randic: spectral::eigenvalues(g, MatrixKind::Randic, tol)?,
        data: BaseGraphData::from_graph(g, tol)?,
    };

    let mut sorted_ops = ops.to_vec();
    sorted_ops.sort();
    sorted_ops.dedup();

    let mut records = Vec::new();
    for op in &sorted_ops {
        let mut batch = verify_op(g, op, &base, modes, tol);
        batch.sort_by(|a, b| a.formula_id.cmp(&b.formula_id));
        records.extend(batch);
    }
    Ok(records)
}

fn verify_op(
    g: &Graph,
    op: &OperationKind,
    base: &BaseSpectra,
    modes: ModeSelection,
    tol: &Tolerances,
) -> Vec<VerificationRecord> {
    let id = |suffix: &str| format!("{op}/{suffix}");
    let invariant_ids = || {
        invariant_min_m(op).is_ok().then(|| {
            Invariant::ALL
                .iter()
                .flat_map(|w| modes.modes().iter().map(move |mode| (*w, *mode)))
        })
    };

    let oracle = op.apply(g).and_then(|h| Oracle::compute(&h, tol));
    let oracle = match oracle {
        Ok(o) => o,
        Err(e) => {
            let mut out = Vec::new();
            for kind in KINDS {
                out.push(VerificationRecord::error(
                    id(&format!("spectrum.{kind}")),
                    None,
                    None,
                    &e,
                ));
                out.push(VerificationRecord::error(
                    id(&format!("energy.{kind}")),
                    None,
                    None,
                    &e,
                ));
            }
            if let Some(ids) = invariant_ids() {
                for (w, mode) in ids {
                    let fid = id(&format!("{}.{}", w.name(), mode));
                    out.push(VerificationRecord::error(fid, Some(mode), None, &e));
                }
            }
            return out;
        }
    };

    let mut out = Vec::new();
    for kind in KINDS {
        let base_eigs = match kind {
            MatrixKind::Adjacency => &base.adjacency,
            _ => &base.randic,
        };
        let oracle_eigs = oracle.eigs(kind);
        out.push(spectrum_record(
            id(&format!("spectrum.{kind}")),
            base_eigs,
            oracle_eigs,
            op,
            kind,
            tol,
        ));

        let fid = id(&format!("energy.{kind}"));
        let oracle_energy: f64 = oracle_eigs.iter().map(|x| x.abs()).sum();
        let base_energy: f64 = base_eigs.iter().map(|x| x.abs()).sum();
        out.push(match spectral::predict_energy(base_energy, op, kind) {
            Ok(e) => VerificationRecord::scalar(fid, None, e, oracle_energy, tol),
            Err(err) => VerificationRecord::error(fid, None, Some(oracle_energy), &err),
        });
    }

    if let Some(ids) = invariant_ids() {
        for (which, mode) in ids {
            let fid = id(&format!("{}.{}", which.name(), mode));
            let observed = oracle.invariant(which);
            let record = match (closed_form_invariant(&base.data, op, which, mode), observed) {
                (Ok(c), Some(o)) => VerificationRecord::scalar(fid, Some(mode), c, o, tol),
                (Err(e), _) => VerificationRecord::error(fid, Some(mode), observed, &e),
                (Ok(_), None) => {
                    VerificationRecord::error(fid, Some(mode), None, &Error::Disconnected)
                }
            };
            out.push(record);
        }
    }
    out
}

fn spectrum_record(
    formula_id: String,
    base_eigs: &[f64],
    oracle_eigs: &[f64],
    op: &OperationKind,
    kind: MatrixKind,
    tol: &Tolerances,
) -> VerificationRecord {
    let observed = group_multiplicities(oracle_eigs, tol.grouping);
    let base = group_multiplicities(base_eigs, tol.grouping);
    let predicted = match spectral::predict_spectrum(&base, base_eigs.len(), op, kind, tol.grouping)
    {
        Ok(s) => s,
        Err(e) => {
            return VerificationRecord::error(
                formula_id,
                None,
                Some(observed.groups().len() as f64),
                &e,
            )
        }
    };
    spectrum_comparison(formula_id, &predicted, &observed, tol)
}

/// Compares two spectra. `closed_form`/`oracle` hold the number of distinct
/// eigenvalues; `abs_diff` is the largest deviation of the sorted lists (or
/// the difference in total multiplicity when those disagree).
fn spectrum_comparison(
    formula_id: String,
    predicted: &Spectrum,
    observed: &Spectrum,
    tol: &Tolerances,
) -> VerificationRecord {
    let diff = predicted
        .max_deviation(observed)
        .unwrap_or_else(|| (predicted.order() as f64 - observed.order() as f64).abs());
    let grouped_equal = predicted.matches(observed, tol.match_abs);
    let verdict = if diff <= tol.match_abs && grouped_equal {
        Verdict::Match
    } else {
        Verdict::Mismatch
    };
    let note = if verdict == Verdict::Match {
        format!("{predicted}")
    } else {
        format!("predicted {predicted} observed {observed}")
    };
    VerificationRecord {
        formula_id,
        closed_form: Some(predicted.groups().len() as f64),
        oracle: Some(observed.groups().len() as f64),
        abs_diff: Some(diff),
        verdict,
        note,
        mode: None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(g: &Graph, ops: &[OperationKind], modes: ModeSelection) -> Vec<VerificationRecord> {
        verify_all(g, ops, modes, &Tolerances::default()).unwrap()
    }

    #[test]
    fn shadow_of_k2_all_match() {
        let recs = run(
            &Graph::complete(2).unwrap(),
            &[OperationKind::Shadow { m: 2 }],
            ModeSelection::Both,
        );
        assert_eq!(recs.len(), 10);
        assert!(
            recs.iter().all(|r| r.verdict == Verdict::Match),
            "{recs:#?}"
        );
        let ids: Vec<_> = recs.iter().map(|r| r.formula_id.as_str()).collect();
        let mut sorted = ids.clone();
        sorted.sort();
        assert_eq!(ids, sorted);
    }

    #[test]
    fn splitting_of_k2_errata() {
        let recs = run(
            &Graph::complete(2).unwrap(),
            &[OperationKind::Splitting { m: 1 }],
            ModeSelection::Both,
        );
        let verdict = |id: &str| recs.iter().find(|r| r.formula_id == id).unwrap().verdict;
        for id in [
            "spectrum.adjacency",
            "spectrum.randic",
            "energy.adjacency",
            "energy.randic",
        ] {
            assert_eq!(
                verdict(&format!("splitting:1/{id}")),
                Verdict::Match,
                "{id}"
            );
        }
        assert_eq!(verdict("splitting:1/kemeny.as_printed"), Verdict::Mismatch);
        assert_eq!(
            verdict("splitting:1/kirchhoff.as_printed"),
            Verdict::Mismatch
        );
        assert_eq!(verdict("splitting:1/trees.as_printed"), Verdict::Match);
        assert_eq!(verdict("splitting:1/kemeny.corrected"), Verdict::Match);
        assert_eq!(verdict("splitting:1/kirchhoff.corrected"), Verdict::Match);
        assert!(!recs.iter().any(VerificationRecord::is_fatal_mismatch));
    }

    #[test]
    fn h3_on_c4_randic_energy() {
        let recs = run(
            &Graph::cycle(4).unwrap(),
            &[OperationKind::H3 { m: 3 }],
            ModeSelection::Corrected,
        );
        let r = recs
            .iter()
            .find(|r| r.formula_id == "h3:3/energy.randic")
            .unwrap();
        assert_eq!(r.verdict, Verdict::Match);
        assert!((r.closed_form.unwrap() - 4.0).abs() < 1e-12);
        assert!(
            recs.iter().all(|r| r.verdict == Verdict::Match),
            "{recs:#?}"
        );
    }

    #[test]
    fn out_of_range_becomes_error_records() {
        let recs = run(
            &Graph::complete(3).unwrap(),
            &[OperationKind::H2 { m: 3 }],
            ModeSelection::Corrected,
        );
        let find = |id: &str| recs.iter().find(|r| r.formula_id == id).unwrap();
        assert_eq!(find("h2:3/energy.adjacency").verdict, Verdict::Match);
        assert_eq!(find("h2:3/energy.randic").verdict, Verdict::Error);
        assert_eq!(find("h2:3/kemeny.corrected").verdict, Verdict::Error);
    }

    #[test]
    fn duplicates_have_no_invariant_records() {
        let recs = run(
            &Graph::complete(3).unwrap(),
            &[OperationKind::DuplicateIter { m: 2 }],
            ModeSelection::Both,
        );
        assert_eq!(recs.len(), 4);
        assert!(recs.iter().all(|r| r.verdict == Verdict::Match));
    }

    #[test]
    fn disconnected_base_rejected() {
        let two_k2 = Graph::from_edge_list(4, [(0, 1), (2, 3)]).unwrap();
        assert_eq!(
            verify_all(
                &two_k2,
                &[OperationKind::Shadow { m: 2 }],
                ModeSelection::Both,
                &Tolerances::default()
            ),
            Err(Error::Disconnected)
        );
    }

    #[test]
    fn mode_parsing() {
        assert_eq!(
            "as_printed".parse::<ModeSelection>().unwrap(),
            ModeSelection::AsPrinted
        );
        assert_eq!(
            "as-printed".parse::<ModeSelection>().unwrap(),
            ModeSelection::AsPrinted
        );
        assert_eq!(
            "both".parse::<ModeSelection>().unwrap(),
            ModeSelection::Both
        );
        assert!("all".parse::<ModeSelection>().is_err());
    }
}
