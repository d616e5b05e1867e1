//! Named state families and the fixed measurement setting each one uses
//! when run in `--mode fixed`.

use std::collections::BTreeMap;
use std::f64::consts::FRAC_PI_2;
use std::str::FromStr;

use condsteer::channels::{amp_damp_all, depolarize};
use condsteer::conditioning::{BlochDirection, Outcome};
use condsteer::states::{
    biseparable, ghz_minus, ghz_plus, ghz_symmetric, noisy_ghz, psi_pure, GhzSymmetricParams,
    LambdaConvention, PsiParams,
};
use condsteer::steering::SteerDirection;
use condsteer::DensityMatrix;

use crate::{CliError, CliResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    GhzPlus,
    GhzMinus,
    NoisyGhz,
    GhzSymmetric,
    Psi,
    Upsilon,
    PsiDamped,
    Biseparable,
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::GhzPlus => "ghz-plus",
            Family::GhzMinus => "ghz-minus",
            Family::NoisyGhz => "noisy-ghz",
            Family::GhzSymmetric => "ghz-symmetric",
            Family::Psi => "psi",
            Family::Upsilon => "upsilon",
            Family::PsiDamped => "psi-damped",
            Family::Biseparable => "biseparable",
        }
    }

    /// Parameter keys the family accepts: (required, optional).
    fn keys(&self) -> (&'static [&'static str], &'static [&'static str]) {
        match self {
            Family::GhzPlus | Family::GhzMinus => (&[], &["theta", "phi"]),
            Family::NoisyGhz => (&["p"], &["theta", "phi"]),
            Family::GhzSymmetric => (&["p", "q"], &["theta", "phi"]),
            Family::Psi => (&["lambda1", "lambda2"], &[]),
            Family::Upsilon => (&["lambda1", "lambda2", "alpha"], &[]),
            // exactly one of nu/gamma, enforced separately
            Family::PsiDamped => (&["lambda1", "lambda2"], &["nu", "gamma"]),
            Family::Biseparable => (&["p"], &[]),
        }
    }
}

impl FromStr for Family {
    type Err = CliError;

    fn from_str(s: &str) -> CliResult<Self> {
        match s {
            "ghz-plus" => Ok(Family::GhzPlus),
            "ghz-minus" => Ok(Family::GhzMinus),
            "noisy-ghz" => Ok(Family::NoisyGhz),
            "ghz-symmetric" => Ok(Family::GhzSymmetric),
            "psi" => Ok(Family::Psi),
            "upsilon" => Ok(Family::Upsilon),
            "psi-damped" => Ok(Family::PsiDamped),
            "biseparable" => Ok(Family::Biseparable),
            other => Err(CliError::Validation(format!(
                "unknown family {other:?}; expected one of ghz-plus, ghz-minus, noisy-ghz, \
                 ghz-symmetric, psi, upsilon, psi-damped, biseparable"
            ))),
        }
    }
}

/// A family plus concrete parameter values.
#[derive(Debug, Clone)]
pub struct StateSpec {
    pub family: Family,
    pub params: BTreeMap<String, f64>,
    pub convention: LambdaConvention,
}

/// The single measurement setting a family uses in fixed mode.
#[derive(Debug, Clone, Copy)]
pub struct FixedSetting {
    pub party: usize,
    pub direction: BlochDirection,
    pub outcome: Outcome,
    pub steer_from: usize,
    pub steer_to: usize,
}

impl FixedSetting {
    /// Steering direction within the conditional pair, whose parties are
    /// ordered ascending by global index.
    pub fn steer_direction(&self) -> SteerDirection {
        if self.steer_from < self.steer_to {
            SteerDirection::Forward
        } else {
            SteerDirection::Reverse
        }
    }
}

impl StateSpec {
    /// Rejects unknown parameter keys immediately; missing required keys are
    /// reported at build time, since sweeps and thresholds fill them in
    /// point by point.
    pub fn new(
        family: Family,
        params: BTreeMap<String, f64>,
        convention: LambdaConvention,
    ) -> CliResult<Self> {
        let spec = Self {
            family,
            params,
            convention,
        };
        spec.check_unknown_keys()?;
        Ok(spec)
    }

    fn check_unknown_keys(&self) -> CliResult<()> {
        let (required, optional) = self.family.keys();
        for key in self.params.keys() {
            if !required.contains(&key.as_str()) && !optional.contains(&key.as_str()) {
                return Err(CliError::Validation(format!(
                    "family {} does not take parameter {key:?} (accepted: {:?} plus optional {:?})",
                    self.family.name(),
                    required,
                    optional
                )));
            }
        }
        if self.family == Family::PsiDamped
            && self.params.contains_key("nu")
            && self.params.contains_key("gamma")
        {
            return Err(CliError::Validation(
                "psi-damped takes either nu or gamma, not both".into(),
            ));
        }
        Ok(())
    }

    fn check_keys(&self) -> CliResult<()> {
        self.check_unknown_keys()?;
        let (required, _) = self.family.keys();
        for key in required {
            if !self.params.contains_key(*key) {
                return Err(CliError::Validation(format!(
                    "family {} requires parameter {key}",
                    self.family.name()
                )));
            }
        }
        if self.family == Family::PsiDamped && self.damping_gamma().is_none() {
            return Err(CliError::Validation(
                "psi-damped requires the noise parameter nu (or gamma)".into(),
            ));
        }
        Ok(())
    }

    fn param(&self, key: &str) -> f64 {
        self.params[key]
    }

    /// Damping strength of the psi-damped family, from either nu or gamma.
    /// Range checking happens in the channel constructor.
    pub fn damping_gamma(&self) -> Option<f64> {
        if let Some(&nu) = self.params.get("nu") {
            Some(1.0 - nu)
        } else {
            self.params.get("gamma").copied()
        }
    }

    pub fn build(&self) -> CliResult<DensityMatrix> {
        Ok(self.build_raw()??)
    }

    /// Like [`StateSpec::build`] but keeps parameter-constraint failures as
    /// core errors, so sweeps can skip out-of-range grid points.
    pub fn build_raw(&self) -> CliResult<condsteer::Result<DensityMatrix>> {
        self.check_keys()?;
        let gamma = self.damping_gamma().unwrap_or(0.0);
        Ok(self.build_core(gamma))
    }

    fn build_core(&self, gamma: f64) -> condsteer::Result<DensityMatrix> {
        Ok(match self.family {
            Family::GhzPlus => ghz_plus(),
            Family::GhzMinus => ghz_minus(),
            Family::NoisyGhz => noisy_ghz(self.param("p"))?,
            Family::GhzSymmetric => {
                let params = GhzSymmetricParams::new(self.param("p"), self.param("q"))?;
                ghz_symmetric(&params)
            }
            Family::Psi => psi_pure(&self.psi_params()?),
            Family::Upsilon => depolarize(&psi_pure(&self.psi_params()?), self.param("alpha"))?,
            Family::PsiDamped => amp_damp_all(&psi_pure(&self.psi_params()?), gamma)?,
            Family::Biseparable => biseparable(self.param("p"))?,
        })
    }

    fn psi_params(&self) -> condsteer::Result<PsiParams> {
        PsiParams::new(
            self.param("lambda1"),
            self.param("lambda2"),
            self.convention,
        )
    }

    /// Measurement angles used by the families whose fixed setting scans the
    /// equator by default.
    fn measured_direction(&self) -> BlochDirection {
        BlochDirection::new(
            self.params.get("theta").copied().unwrap_or(FRAC_PI_2),
            self.params.get("phi").copied().unwrap_or(0.0),
        )
    }

    /// The fixed measurement setting tied to the family.
    pub fn fixed_setting(&self) -> FixedSetting {
        let z = BlochDirection::new(0.0, 0.0);
        match self.family {
            // A measures in the equatorial plane, B steers C
            Family::GhzPlus | Family::GhzMinus | Family::NoisyGhz | Family::GhzSymmetric => {
                FixedSetting {
                    party: 0,
                    direction: self.measured_direction(),
                    outcome: Outcome::Plus,
                    steer_from: 1,
                    steer_to: 2,
                }
            }
            // B measures sigma_z up, A steers C
            Family::Upsilon => FixedSetting {
                party: 1,
                direction: z,
                outcome: Outcome::Plus,
                steer_from: 0,
                steer_to: 2,
            },
            // A measures sigma_z down, B steers C
            Family::Psi | Family::PsiDamped => FixedSetting {
                party: 0,
                direction: z,
                outcome: Outcome::Minus,
                steer_from: 1,
                steer_to: 2,
            },
            // C measures sigma_z down, A steers B
            Family::Biseparable => FixedSetting {
                party: 2,
                direction: z,
                outcome: Outcome::Minus,
                steer_from: 0,
                steer_to: 1,
            },
        }
    }

    /// Visibility nu = 1 - gamma, reported for the amplitude-damped family.
    pub fn nu(&self) -> Option<f64> {
        if self.family == Family::PsiDamped {
            self.damping_gamma().map(|g| 1.0 - g)
        } else {
            None
        }
    }
}

/// Parse repeated `key=value` flags.
pub fn parse_params(pairs: &[String]) -> CliResult<BTreeMap<String, f64>> {
    let mut map = BTreeMap::new();
    for pair in pairs {
        let (key, value) = pair.split_once('=').ok_or_else(|| {
            CliError::Validation(format!("malformed --param {pair:?}; expected key=value"))
        })?;
        let value: f64 = value.parse().map_err(|_| {
            CliError::Validation(format!("parameter {key} has non-numeric value {value:?}"))
        })?;
        if map.insert(key.trim().to_string(), value).is_some() {
            return Err(CliError::Validation(format!(
                "parameter {key} given more than once"
            )));
        }
    }
    Ok(map)
}

/// Parse a `--lambda-convention` flag value.
pub fn parse_convention(s: &str) -> CliResult<LambdaConvention> {
    match s {
        "sqrt" => Ok(LambdaConvention::Sqrt),
        "affine" => Ok(LambdaConvention::Affine),
        other => Err(CliError::Validation(format!(
            "unknown lambda convention {other:?}; expected sqrt or affine"
        ))),
    }
}

pub fn convention_name(c: LambdaConvention) -> &'static str {
    match c {
        LambdaConvention::Sqrt => "sqrt",
        LambdaConvention::Affine => "affine",
    }
}

/// Party letter used in reports.
pub fn party_letter(index: usize) -> &'static str {
    ["A", "B", "C"][index]
}
