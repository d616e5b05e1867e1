//! CSV parameter sweeps over one or two state parameters.
//!
//! Rows follow lexicographic grid order with the first swept parameter
//! varying slowest. Grid points whose parameters violate a family
//! constraint, and fixed-mode points whose conditioning outcome has no
//! support, are omitted.

use condsteer::tripartite::{
    conditional_steering_scan, direction_grid, facet15_l2, genuine_steering_ghz_symmetric,
    mermin_l1,
};

use crate::families::{Family, StateSpec};
use crate::output::{fmt_flag, fmt_real};
use crate::predicate::{fixed_report, Mode};
use crate::{CliError, CliResult};

/// One swept parameter with an inclusive range.
#[derive(Debug, Clone)]
pub struct SweepAxis {
    pub key: String,
    pub lo: f64,
    pub hi: f64,
    pub step: f64,
}

impl SweepAxis {
    /// Parse `key=lo:hi:step`.
    pub fn parse(text: &str) -> CliResult<Self> {
        let (key, range) = text.split_once('=').ok_or_else(|| {
            CliError::Validation(format!(
                "malformed --sweep {text:?}; expected key=lo:hi:step"
            ))
        })?;
        let parts: Vec<&str> = range.split(':').collect();
        if parts.len() != 3 {
            return Err(CliError::Validation(format!(
                "malformed --sweep {text:?}; expected key=lo:hi:step"
            )));
        }
        let parse = |s: &str| -> CliResult<f64> {
            s.parse()
                .map_err(|_| CliError::Validation(format!("non-numeric bound {s:?} in {text:?}")))
        };
        let axis = Self {
            key: key.trim().to_string(),
            lo: parse(parts[0])?,
            hi: parse(parts[1])?,
            step: parse(parts[2])?,
        };
        if !axis.step.is_finite() || axis.step <= 0.0 {
            return Err(CliError::Validation(format!(
                "sweep step must be positive in {text:?}"
            )));
        }
        if axis.hi < axis.lo {
            return Err(CliError::Validation(format!(
                "sweep range is empty in {text:?}"
            )));
        }
        Ok(axis)
    }

    pub fn values(&self) -> Vec<f64> {
        let n = ((self.hi - self.lo) / self.step + 1e-9).floor() as usize;
        (0..=n).map(|k| self.lo + k as f64 * self.step).collect()
    }
}

#[derive(Debug, Clone)]
pub struct SweepSpec {
    pub base: StateSpec,
    pub axes: Vec<SweepAxis>,
    pub mode: Mode,
    pub theta_steps: usize,
}

fn is_ghz_symmetric(spec: &SweepSpec) -> bool {
    spec.base.family == Family::GhzSymmetric
}

fn header(spec: &SweepSpec) -> Vec<String> {
    let mut cols: Vec<String> = spec.axes.iter().map(|a| a.key.clone()).collect();
    match spec.mode {
        Mode::Fixed => cols.extend(
            [
                "prob",
                "s1",
                "s2",
                "horodecki_m",
                "s1_detects",
                "s2_detects",
                "cs_detected",
                "chsh_nonlocal",
                "s2_clamped",
            ]
            .map(String::from),
        ),
        Mode::Grid => cols.extend(
            [
                "s1_min",
                "s2_max",
                "horodecki_m_max",
                "witness_count",
                "cs_detected",
                "clamp_events",
                "skipped_outcomes",
            ]
            .map(String::from),
        ),
    }
    if is_ghz_symmetric(spec) {
        cols.extend(
            [
                "l1",
                "l2",
                "mermin_violated",
                "facet15_violated",
                "genuine_steering",
            ]
            .map(String::from),
        );
    }
    cols
}

fn constraint_violation(err: &condsteer::Error) -> bool {
    matches!(
        err,
        condsteer::Error::ParamOutOfRange { .. }
            | condsteer::Error::GhzSymmetricWeightRange { .. }
            | condsteer::Error::GhzSymmetricMixingBound { .. }
            | condsteer::Error::UnnormalizableAmplitudes { .. }
    )
}

fn point_row(spec: &SweepSpec, probe: &StateSpec, coords: &[f64]) -> CliResult<Option<String>> {
    let state = match probe.build_raw()? {
        Ok(s) => s,
        Err(e) if constraint_violation(&e) => return Ok(None),
        Err(e) => return Err(e.into()),
    };

    let mut cells: Vec<String> = coords.iter().map(|&v| fmt_real(v)).collect();
    match spec.mode {
        Mode::Fixed => {
            let Some((report, prob)) = fixed_report(&state, &probe.fixed_setting())? else {
                return Ok(None);
            };
            cells.push(fmt_real(prob));
            cells.push(fmt_real(report.s1));
            cells.push(fmt_real(report.s2));
            cells.push(fmt_real(report.horodecki_m));
            cells.push(fmt_flag(report.s1_detects).into());
            cells.push(fmt_flag(report.s2_detects).into());
            cells.push(fmt_flag(report.s1_detects || report.s2_detects).into());
            cells.push(fmt_flag(report.chsh_nonlocal).into());
            cells.push(fmt_flag(report.s2_clamped).into());
        }
        Mode::Grid => {
            let grid = direction_grid(spec.theta_steps);
            let verdict = conditional_steering_scan(&state, &grid, &[0, 1, 2])?;
            cells.push(fmt_real(verdict.s1_min.unwrap_or(f64::NAN)));
            cells.push(fmt_real(verdict.s2_max.unwrap_or(f64::NAN)));
            cells.push(fmt_real(verdict.m_max.unwrap_or(f64::NAN)));
            cells.push(verdict.witnesses.len().to_string());
            cells.push(fmt_flag(verdict.conditionally_steerable).into());
            cells.push(verdict.clamp_events.to_string());
            cells.push(verdict.skipped_outcomes.to_string());
        }
    }
    if is_ghz_symmetric(spec) {
        let p = probe.params["p"];
        let q = probe.params["q"];
        let l1 = mermin_l1(p);
        let l2 = facet15_l2(p, q);
        cells.push(fmt_real(l1));
        cells.push(fmt_real(l2));
        cells.push(fmt_flag(l1 > 2.0).into());
        cells.push(fmt_flag(l2 > 4.0).into());
        cells.push(fmt_flag(genuine_steering_ghz_symmetric(p)).into());
    }
    Ok(Some(cells.join(",")))
}

/// Render the sweep as a CSV document.
pub fn run_sweep(spec: &SweepSpec) -> CliResult<String> {
    if spec.axes.is_empty() || spec.axes.len() > 2 {
        return Err(CliError::Validation(
            "sweeps take one or two --sweep axes".into(),
        ));
    }
    let mut out = String::new();
    out.push_str(&header(spec).join(","));
    out.push('\n');

    let outer = spec.axes[0].values();
    let inner = spec
        .axes
        .get(1)
        .map(|a| a.values())
        .unwrap_or_else(|| vec![f64::NAN]);
    let mut probe = spec.base.clone();
    for &x in &outer {
        probe.params.insert(spec.axes[0].key.clone(), x);
        for &y in &inner {
            let coords: Vec<f64> = if spec.axes.len() == 2 {
                probe.params.insert(spec.axes[1].key.clone(), y);
                vec![x, y]
            } else {
                vec![x]
            };
            if let Some(row) = point_row(spec, &probe, &coords)? {
                out.push_str(&row);
                out.push('\n');
            }
        }
    }
    Ok(out)
}
