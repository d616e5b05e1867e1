//! Boolean criteria evaluated on a state, used by sweeps and thresholds.

use std::str::FromStr;

use condsteer::conditioning::condition;
use condsteer::steering::{steering_report, SteeringReport};
use condsteer::tripartite::{
    conditional_steering_scan, direction_grid, negativity, Criterion, CutLabel, NEGATIVITY_TOL,
};
use condsteer::DensityMatrix;

use crate::families::{FixedSetting, StateSpec};
use crate::{CliError, CliResult};

/// How steering predicates pick their measurements.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    /// The family's single named setting.
    Fixed,
    /// Scan all three parties over the direction grid.
    Grid,
}

impl Mode {
    pub fn name(&self) -> &'static str {
        match self {
            Mode::Fixed => "fixed",
            Mode::Grid => "grid",
        }
    }
}

impl FromStr for Mode {
    type Err = CliError;

    fn from_str(s: &str) -> CliResult<Self> {
        match s {
            "fixed" => Ok(Mode::Fixed),
            "grid" => Ok(Mode::Grid),
            other => Err(CliError::Validation(format!(
                "unknown mode {other:?}; expected fixed or grid"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Predicate {
    S1Detects,
    S2Detects,
    AnySteering,
    ChshNonlocal,
    NegativityPositive(CutLabel),
}

impl Predicate {
    pub fn parse(name: &str, cut: Option<&str>) -> CliResult<Self> {
        match name {
            "s1-detects" => Ok(Predicate::S1Detects),
            "s2-detects" => Ok(Predicate::S2Detects),
            "any-steering" => Ok(Predicate::AnySteering),
            "chsh-nonlocal" => Ok(Predicate::ChshNonlocal),
            "negativity-positive" => {
                let cut = cut.ok_or_else(|| {
                    CliError::Validation(
                        "predicate negativity-positive requires --cut (1|23, 2|13 or 3|12)".into(),
                    )
                })?;
                let cut = cut.parse::<CutLabel>().map_err(CliError::Validation)?;
                Ok(Predicate::NegativityPositive(cut))
            }
            other => Err(CliError::Validation(format!(
                "unknown predicate {other:?}; expected s1-detects, s2-detects, any-steering, \
                 chsh-nonlocal or negativity-positive"
            ))),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Predicate::S1Detects => "s1-detects",
            Predicate::S2Detects => "s2-detects",
            Predicate::AnySteering => "any-steering",
            Predicate::ChshNonlocal => "chsh-nonlocal",
            Predicate::NegativityPositive(_) => "negativity-positive",
        }
    }
}

/// Steering report of the conditional state produced by a fixed setting,
/// plus the outcome probability. `Ok(None)` means the outcome itself has
/// (near-)zero probability.
pub fn fixed_report(
    state: &DensityMatrix,
    setting: &FixedSetting,
) -> CliResult<Option<(SteeringReport, f64)>> {
    let cond = match condition(state, setting.party, &setting.direction, setting.outcome) {
        Ok(c) => c,
        Err(condsteer::Error::ZeroProbabilityOutcome) => return Ok(None),
        Err(e) => return Err(e.into()),
    };
    let report = steering_report(&cond.state, setting.steer_direction())?;
    Ok(Some((report, cond.probability)))
}

/// Evaluate a predicate on a fully specified state. Steering predicates use
/// the mode's measurements; an unobtainable fixed outcome evaluates to
/// false rather than erroring so that sweeps and brackets stay total.
pub fn eval_predicate(
    spec: &StateSpec,
    predicate: Predicate,
    mode: Mode,
    theta_steps: usize,
) -> CliResult<bool> {
    let state = spec.build()?;
    if let Predicate::NegativityPositive(cut) = predicate {
        return Ok(negativity(&state, cut)? > NEGATIVITY_TOL);
    }
    match mode {
        Mode::Fixed => {
            let Some((report, _)) = fixed_report(&state, &spec.fixed_setting())? else {
                return Ok(false);
            };
            Ok(match predicate {
                Predicate::S1Detects => report.s1_detects,
                Predicate::S2Detects => report.s2_detects,
                Predicate::AnySteering => report.s1_detects || report.s2_detects,
                Predicate::ChshNonlocal => report.chsh_nonlocal,
                Predicate::NegativityPositive(_) => unreachable!(),
            })
        }
        Mode::Grid => {
            let grid = direction_grid(theta_steps);
            let verdict = conditional_steering_scan(&state, &grid, &[0, 1, 2])?;
            Ok(match predicate {
                Predicate::S1Detects => verdict
                    .witnesses
                    .iter()
                    .any(|w| w.criterion == Criterion::S1),
                Predicate::S2Detects => verdict
                    .witnesses
                    .iter()
                    .any(|w| w.criterion == Criterion::S2),
                Predicate::AnySteering => verdict.conditionally_steerable,
                Predicate::ChshNonlocal => verdict.m_max.is_some_and(|m| m > 1.0),
                Predicate::NegativityPositive(_) => unreachable!(),
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{Family, StateSpec};
    use condsteer::states::LambdaConvention;
    use std::collections::BTreeMap;

    fn noisy(p: f64) -> StateSpec {
        let mut params = BTreeMap::new();
        params.insert("p".to_string(), p);
        StateSpec::new(Family::NoisyGhz, params, LambdaConvention::Sqrt).unwrap()
    }

    #[test]
    fn grid_mode_scans_across_the_detection_boundary() {
        assert!(eval_predicate(&noisy(0.6), Predicate::AnySteering, Mode::Grid, 8).unwrap());
        assert!(!eval_predicate(&noisy(0.4), Predicate::AnySteering, Mode::Grid, 8).unwrap());
        assert!(eval_predicate(&noisy(0.8), Predicate::ChshNonlocal, Mode::Grid, 8).unwrap());
    }

    #[test]
    fn predicate_parsing_requires_cut_only_for_negativity() {
        assert!(Predicate::parse("negativity-positive", None).is_err());
        assert!(Predicate::parse("negativity-positive", Some("2|13")).is_ok());
        assert!(Predicate::parse("s1-detects", None).is_ok());
        assert!(Predicate::parse("no-such", None).is_err());
    }
}
