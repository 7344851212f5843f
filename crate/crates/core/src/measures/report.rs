//! Bundled measurements of one regular set.

use num_rational::BigRational;
use serde_json::{json, Value};

use super::{cesaro_mu0, genfunc_algi, lambda_eval, FrequencySeries, MeasureError};
use crate::automaton::{prepare, Automaton, AutomatonError};
use crate::oracle::{compare_series, Oracle};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MeasureClass {
    Thick,
    Negligible,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Lambda {
    Finite(BigRational),
    Infinite,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MeasureReport {
    pub g: FrequencySeries<BigRational>,
    pub mu0: BigRational,
    pub lambda: Lambda,
    pub class: MeasureClass,
    /// Coefficients `0..=oracle_depth` were confirmed by enumeration.
    pub oracle_depth: usize,
}

/// `"p/q"`, always with an explicit denominator.
pub fn ratio_text(q: &BigRational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

impl MeasureReport {
    pub fn to_json(&self) -> Value {
        json!({
            "g": self.g.g.to_string(),
            "mu0": ratio_text(&self.mu0),
            "lambda": match &self.lambda {
                Lambda::Finite(l) => ratio_text(l),
                Lambda::Infinite => "infinite".to_string(),
            },
            "class": match self.class {
                MeasureClass::Thick => "thick",
                MeasureClass::Negligible => "negligible",
            },
            "oracle_depth": self.oracle_depth,
        })
    }
}

/// Measure `L(a)` and confirm the series against enumeration up to
/// `oracle_depth`.
pub fn measure_report(a: &Automaton, oracle_depth: usize) -> Result<MeasureReport, MeasureError> {
    let g = match prepare(a) {
        Ok(p) => genfunc_algi::<BigRational>(&p)?,
        Err(AutomatonError::EmptyLanguage) => FrequencySeries::zero(a.rank()),
        Err(e) => return Err(e.into()),
    };
    let fp = Oracle::default().frequencies(a, oracle_depth).map_err(|e| MeasureError::Oracle(e.to_string()))?;
    let agreement = compare_series(&g, &fp).map_err(|e| MeasureError::Oracle(e.to_string()))?;
    if let Some((k, series, oracle)) = agreement.first_mismatch {
        return Err(MeasureError::Oracle(format!(
            "series coefficient {series} differs from frequency {oracle} at k={k}"
        )));
    }
    let mu0 = cesaro_mu0(&g)?;
    let (lambda, class) = match lambda_eval(&g) {
        Ok(l) => (Lambda::Finite(l), MeasureClass::Negligible),
        Err(MeasureError::NotMeasurable) => (Lambda::Infinite, MeasureClass::Thick),
        Err(e) => return Err(e),
    };
    Ok(MeasureReport { g, mu0, lambda, class, oracle_depth })
}
