//! Bisection threshold finding over one state parameter.
//!
//! A coarse pre-scan (1e-3 steps) first verifies that the predicate flips
//! exactly once across the bracket; bisection then refines the boundary of
//! the cell containing the flip.

use serde::Serialize;
use std::collections::BTreeMap;

use crate::families::{convention_name, StateSpec};
use crate::predicate::{eval_predicate, Mode, Predicate};
use crate::{CliError, CliResult};

/// Pre-scan step size in parameter units.
const PRESCAN_STEP: f64 = 1e-3;

#[derive(Debug, Clone)]
pub struct ThresholdSpec {
    pub base: StateSpec,
    /// Name of the parameter to bisect.
    pub parameter: String,
    pub lo: f64,
    pub hi: f64,
    pub predicate: Predicate,
    pub cut: Option<String>,
    pub tolerance: f64,
    pub mode: Mode,
    pub theta_steps: usize,
}

#[derive(Debug, Serialize)]
pub struct ThresholdDoc {
    pub family: String,
    pub params: BTreeMap<String, f64>,
    pub lambda_convention: String,
    pub parameter: String,
    pub bracket: [f64; 2],
    pub predicate: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cut: Option<String>,
    pub mode: String,
    pub tolerance: f64,
    /// Boundary parameter value: the predicate holds on the side named by
    /// `predicate_true`.
    pub threshold: f64,
    pub predicate_true: String,
    pub prescan_points: usize,
}

pub fn run_threshold(spec: &ThresholdSpec) -> CliResult<ThresholdDoc> {
    if !spec.lo.is_finite() || !spec.hi.is_finite() || spec.lo >= spec.hi {
        return Err(CliError::Validation(format!(
            "bracket [{}, {}] must satisfy lo < hi",
            spec.lo, spec.hi
        )));
    }
    if !spec.tolerance.is_finite() || spec.tolerance <= 0.0 {
        return Err(CliError::Validation("tolerance must be positive".into()));
    }

    let mut probe = spec.base.clone();
    let mut eval = |x: f64| -> CliResult<bool> {
        probe.params.insert(spec.parameter.clone(), x);
        eval_predicate(&probe, spec.predicate, spec.mode, spec.theta_steps)
    };

    let n = (((spec.hi - spec.lo) / PRESCAN_STEP).ceil() as usize).max(1);
    let point = |k: usize| spec.lo + (spec.hi - spec.lo) * (k as f64) / (n as f64);
    let mut values = Vec::with_capacity(n + 1);
    for k in 0..=n {
        values.push(eval(point(k))?);
    }

    let flips: Vec<usize> = (0..n).filter(|&k| values[k] != values[k + 1]).collect();
    if flips.is_empty() {
        return Err(CliError::Numerical(format!(
            "bracket endpoints agree: predicate {} is {} across [{}, {}]",
            spec.predicate.name(),
            values[0],
            spec.lo,
            spec.hi
        )));
    }
    if flips.len() > 1 {
        return Err(CliError::Numerical(format!(
            "predicate not monotone in bracket: {} sign changes found in [{}, {}]",
            flips.len(),
            spec.lo,
            spec.hi
        )));
    }

    let cell = flips[0];
    let (mut lo, mut hi) = (point(cell), point(cell + 1));
    let lo_value = values[cell];
    while hi - lo > spec.tolerance {
        let mid = 0.5 * (lo + hi);
        if eval(mid)? == lo_value {
            lo = mid;
        } else {
            hi = mid;
        }
    }

    Ok(ThresholdDoc {
        family: spec.base.family.name().to_string(),
        params: spec.base.params.clone(),
        lambda_convention: convention_name(spec.base.convention).to_string(),
        parameter: spec.parameter.clone(),
        bracket: [spec.lo, spec.hi],
        predicate: spec.predicate.name().to_string(),
        cut: spec.cut.clone(),
        mode: spec.mode.name().to_string(),
        tolerance: spec.tolerance,
        threshold: 0.5 * (lo + hi),
        predicate_true: if *values.last().unwrap() {
            "above".to_string()
        } else {
            "below".to_string()
        },
        prescan_points: n + 1,
    })
}
