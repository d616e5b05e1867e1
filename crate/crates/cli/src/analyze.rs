//! Full JSON report for a single state: negativities, distillability,
//! conditional-steering verdict and the GHZ-symmetric nonlocality bounds.

use serde::Serialize;
use std::collections::BTreeMap;

use condsteer::tripartite::{
    conditional_steering_scan, direction_grid, facet15_l2, genuine_steering_ghz_symmetric,
    ghz_distillable, mermin_l1, negativity, CutLabel, Witness,
};
use condsteer::DensityMatrix;

use crate::families::{convention_name, party_letter, Family, FixedSetting, StateSpec};
use crate::predicate::{fixed_report, Mode};
use crate::CliResult;

#[derive(Debug, Serialize)]
pub struct SourceDoc {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub family: Option<String>,
    pub params: BTreeMap<String, f64>,
    pub lambda_convention: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub state_file: Option<String>,
}

#[derive(Debug, Serialize)]
pub struct FixedSettingDoc {
    pub party: String,
    pub theta: f64,
    pub phi: f64,
    pub outcome: i32,
    pub steer_from: String,
    pub steer_to: String,
}

impl FixedSettingDoc {
    fn new(s: &FixedSetting) -> Self {
        Self {
            party: party_letter(s.party).to_string(),
            theta: s.direction.theta,
            phi: s.direction.phi,
            outcome: s.outcome.sign() as i32,
            steer_from: party_letter(s.steer_from).to_string(),
            steer_to: party_letter(s.steer_to).to_string(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct ReportDoc {
    pub probability: f64,
    pub s1: f64,
    pub s2: f64,
    pub horodecki_m: f64,
    pub s1_detects: bool,
    pub s2_detects: bool,
    pub chsh_nonlocal: bool,
    pub s2_clamped: bool,
}

#[derive(Debug, Serialize)]
pub struct WitnessDoc {
    pub party: String,
    pub theta: f64,
    pub phi: f64,
    pub outcome: i32,
    pub steer_from: String,
    pub steer_to: String,
    pub criterion: String,
    pub value: f64,
}

impl WitnessDoc {
    fn new(w: &Witness) -> Self {
        Self {
            party: party_letter(w.party).to_string(),
            theta: w.direction.theta,
            phi: w.direction.phi,
            outcome: w.outcome.sign() as i32,
            steer_from: party_letter(w.steer_from).to_string(),
            steer_to: party_letter(w.steer_to).to_string(),
            criterion: w.criterion.label().to_string(),
            value: w.value,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct GhzSymmetricDoc {
    pub l1: f64,
    pub l2: f64,
    pub mermin_violated: bool,
    pub facet15_violated: bool,
    pub genuine_steering: bool,
}

#[derive(Debug, Serialize)]
pub struct AnalyzeDoc {
    pub source: SourceDoc,
    pub dims: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nu: Option<f64>,
    pub negativity: BTreeMap<String, f64>,
    pub ghz_distillable: bool,
    pub mode: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fixed_setting: Option<FixedSettingDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub report: Option<ReportDoc>,
    pub conditionally_steerable: bool,
    pub witness_count: usize,
    pub witnesses: Vec<WitnessDoc>,
    pub clamp_events: usize,
    pub skipped_outcomes: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ghz_symmetric: Option<GhzSymmetricDoc>,
}

/// What to analyze: a named family or a state loaded from file.
pub enum AnalyzeInput {
    Family(StateSpec),
    File { path: String, state: DensityMatrix },
}

pub fn run_analyze(input: &AnalyzeInput, mode: Mode, theta_steps: usize) -> CliResult<AnalyzeDoc> {
    let (state, source) = match input {
        AnalyzeInput::Family(spec) => (
            spec.build()?,
            SourceDoc {
                family: Some(spec.family.name().to_string()),
                params: spec.params.clone(),
                lambda_convention: convention_name(spec.convention).to_string(),
                state_file: None,
            },
        ),
        AnalyzeInput::File { path, state } => (
            state.clone(),
            SourceDoc {
                family: None,
                params: BTreeMap::new(),
                lambda_convention: "sqrt".to_string(),
                state_file: Some(path.clone()),
            },
        ),
    };

    let mut negativities = BTreeMap::new();
    for cut in CutLabel::ALL {
        negativities.insert(cut.label().to_string(), negativity(&state, cut)?);
    }
    let distillable = ghz_distillable(&state)?;

    let spec = match input {
        AnalyzeInput::Family(spec) => Some(spec),
        AnalyzeInput::File { .. } => None,
    };

    let (fixed_setting, report, steerable, witnesses, clamp_events, skipped) = match mode {
        Mode::Fixed => {
            let spec = spec.ok_or_else(|| {
                crate::CliError::Validation(
                    "fixed mode needs a named family; state files have no fixed setting".into(),
                )
            })?;
            let setting = spec.fixed_setting();
            let (rep, prob) = fixed_report(&state, &setting)?
                .ok_or(condsteer::Error::ZeroProbabilityOutcome)
                .map_err(crate::CliError::from)?;
            let steerable = rep.s1_detects || rep.s2_detects;
            (
                Some(FixedSettingDoc::new(&setting)),
                Some(ReportDoc {
                    probability: prob,
                    s1: rep.s1,
                    s2: rep.s2,
                    horodecki_m: rep.horodecki_m,
                    s1_detects: rep.s1_detects,
                    s2_detects: rep.s2_detects,
                    chsh_nonlocal: rep.chsh_nonlocal,
                    s2_clamped: rep.s2_clamped,
                }),
                steerable,
                Vec::new(),
                rep.s2_clamped as usize,
                0,
            )
        }
        Mode::Grid => {
            let grid = direction_grid(theta_steps);
            let verdict = conditional_steering_scan(&state, &grid, &[0, 1, 2])?;
            (
                None,
                None,
                verdict.conditionally_steerable,
                verdict.witnesses.iter().map(WitnessDoc::new).collect(),
                verdict.clamp_events,
                verdict.skipped_outcomes,
            )
        }
    };

    let ghz_symmetric = spec.and_then(|s| {
        if s.family == Family::GhzSymmetric {
            let (p, q) = (s.params["p"], s.params["q"]);
            let (l1, l2) = (mermin_l1(p), facet15_l2(p, q));
            Some(GhzSymmetricDoc {
                l1,
                l2,
                mermin_violated: l1 > 2.0,
                facet15_violated: l2 > 4.0,
                genuine_steering: genuine_steering_ghz_symmetric(p),
            })
        } else {
            None
        }
    });

    Ok(AnalyzeDoc {
        source,
        dims: state.dims().to_vec(),
        nu: spec.and_then(|s| s.nu()),
        negativity: negativities,
        ghz_distillable: distillable,
        mode: mode.name().to_string(),
        fixed_setting,
        report,
        conditionally_steerable: steerable,
        witness_count: witnesses.len(),
        witnesses,
        clamp_events,
        skipped_outcomes: skipped,
        ghz_symmetric,
    })
}
