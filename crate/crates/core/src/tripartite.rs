//! Tripartite-level quantities: negativity per one-vs-rest cut, GHZ
//! distillability, closed-form nonlocality bounds for the GHZ-symmetric
//! family and the conditional-steering scan.

use crate::conditioning::{condition, BlochDirection, Outcome};
use crate::error::{Error, Result};
use crate::qmat::{partial_transpose, trace_norm, DensityMatrix};
use crate::steering::{steering_report, SteerDirection};

/// Negativity below this threshold counts as vanishing.
pub const NEGATIVITY_TOL: f64 = 1e-10;

/// One-vs-rest bipartition of a three-qubit system, labelled by the
/// singleton party (1-based in the display form, e.g. "2|13").
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CutLabel {
    A,
    B,
    C,
}

impl CutLabel {
    pub const ALL: [CutLabel; 3] = [CutLabel::A, CutLabel::B, CutLabel::C];

    /// Index of the singleton party.
    pub fn singleton(&self) -> usize {
        match self {
            CutLabel::A => 0,
            CutLabel::B => 1,
            CutLabel::C => 2,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            CutLabel::A => "1|23",
            CutLabel::B => "2|13",
            CutLabel::C => "3|12",
        }
    }
}

impl std::fmt::Display for CutLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.label())
    }
}

impl std::str::FromStr for CutLabel {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.trim() {
            "1|23" | "1" | "a" | "A" => Ok(CutLabel::A),
            "2|13" | "2" | "b" | "B" => Ok(CutLabel::B),
            "3|12" | "3" | "c" | "C" => Ok(CutLabel::C),
            other => Err(format!(
                "unknown cut {other:?}; expected one of 1|23, 2|13, 3|12"
            )),
        }
    }
}

/// Negativity across the cut isolating `subsystem`:
/// (trace norm of the partial transpose - 1)/(d - 1) with d the singleton
/// dimension. Equals twice the absolute sum of negative partial-transpose
/// eigenvalues.
pub fn negativity_across(rho: &DensityMatrix, subsystem: usize) -> Result<f64> {
    let pt = partial_transpose(rho, subsystem)?;
    let d = rho.dims()[subsystem] as f64;
    Ok((trace_norm(&pt)? - 1.0) / (d - 1.0))
}

/// Negativity of a three-qubit state across a one-vs-rest cut.
pub fn negativity(rho: &DensityMatrix, cut: CutLabel) -> Result<f64> {
    if rho.dims() != [2, 2, 2] {
        return Err(Error::WrongDims {
            expected: vec![2, 2, 2],
            got: rho.dims().to_vec(),
        });
    }
    negativity_across(rho, cut.singleton())
}

/// True when the negativity of every one-vs-rest cut exceeds
/// [`NEGATIVITY_TOL`].
pub fn ghz_distillable(rho: &DensityMatrix) -> Result<bool> {
    for cut in CutLabel::ALL {
        if negativity(rho, cut)? <= NEGATIVITY_TOL {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Closed-form bound of the three-setting parity inequality for the
/// GHZ-symmetric family; values above 2 certify nonlocality.
pub fn mermin_l1(p: f64) -> f64 {
    8.0 * p.abs()
}

/// Closed-form bound of the strongest two-setting facet for the
/// GHZ-symmetric family; values above 4 certify nonlocality. When the first
/// branch degenerates (9p^2 = 12q^2) only the second branch applies.
pub fn facet15_l2(p: f64, q: f64) -> f64 {
    let fallback = -16.0 * 3f64.sqrt() * q.abs();
    let denom = 9.0 * p * p - 12.0 * q * q;
    if denom.abs() < 1e-12 {
        return fallback;
    }
    let num = 9.0 * p.abs().powi(3) - 8.0 * 3f64.sqrt() * q.abs().powi(3);
    (8.0 * num / denom).max(fallback)
}

/// The GHZ-symmetric subclass that violates the two-setting
/// hybrid-steering bound: strictly |p| > 1/4.
pub fn genuine_steering_ghz_symmetric(p: f64) -> bool {
    p.abs() > 0.25
}

/// Which criterion fired for a scan witness.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Criterion {
    S1,
    S2,
}

impl Criterion {
    pub fn label(&self) -> &'static str {
        match self {
            Criterion::S1 => "s1",
            Criterion::S2 => "s2",
        }
    }
}

/// One detection event found by the scan.
#[derive(Debug, Clone)]
pub struct Witness {
    /// Measuring party.
    pub party: usize,
    pub direction: BlochDirection,
    pub outcome: Outcome,
    /// Steering party within the conditional pair (global index).
    pub steer_from: usize,
    /// Steered party within the conditional pair (global index).
    pub steer_to: usize,
    pub criterion: Criterion,
    pub value: f64,
}

/// Result of scanning a direction grid. The verdict is one-sided: an empty
/// witness list means "not detected", never "not steerable".
#[derive(Debug, Clone, Default)]
pub struct ScanVerdict {
    pub conditionally_steerable: bool,
    pub witnesses: Vec<Witness>,
    /// Number of steering reports in which an S2 radicand was clamped.
    pub clamp_events: usize,
    /// Outcomes skipped because their probability was (near-)zero.
    pub skipped_outcomes: usize,
    /// Smallest S1 value seen across the scan.
    pub s1_min: Option<f64>,
    /// Largest S2 value seen across the scan.
    pub s2_max: Option<f64>,
    /// Largest CHSH bound seen across the scan.
    pub m_max: Option<f64>,
}

fn fold_min(slot: &mut Option<f64>, v: f64) {
    *slot = Some(slot.map_or(v, |cur| cur.min(v)));
}

fn fold_max(slot: &mut Option<f64>, v: f64) {
    *slot = Some(slot.map_or(v, |cur| cur.max(v)));
}

/// Default measurement grid: phi in {0, pi/4, pi/2} and theta in
/// {k pi/steps : k = 0..=steps}.
pub fn direction_grid(theta_steps: usize) -> Vec<BlochDirection> {
    let steps = theta_steps.max(1);
    let mut grid = Vec::with_capacity(3 * (steps + 1));
    for phi_k in 0..3 {
        let phi = phi_k as f64 * std::f64::consts::FRAC_PI_4;
        for k in 0..=steps {
            let theta = k as f64 * std::f64::consts::PI / steps as f64;
            grid.push(BlochDirection::new(theta, phi));
        }
    }
    grid
}

/// Default grid with 40 theta steps.
pub fn default_direction_grid() -> Vec<BlochDirection> {
    direction_grid(40)
}

/// Scan measuring parties, grid directions and both outcomes, evaluating
/// both steering directions of every conditional pair, and collect every
/// S1/S2 detection. Results are accumulated in deterministic grid order.
pub fn conditional_steering_scan(
    rho: &DensityMatrix,
    grid: &[BlochDirection],
    parties: &[usize],
) -> Result<ScanVerdict> {
    if rho.dims() != [2, 2, 2] {
        return Err(Error::WrongDims {
            expected: vec![2, 2, 2],
            got: rho.dims().to_vec(),
        });
    }
    if grid.is_empty() {
        return Err(Error::EmptyGrid);
    }
    let mut verdict = ScanVerdict::default();
    for &party in parties {
        if party > 2 {
            return Err(Error::SubsystemOutOfRange {
                index: party,
                count: 3,
            });
        }
        let rest: Vec<usize> = (0..3).filter(|&i| i != party).collect();
        for dir in grid {
            for outcome in Outcome::BOTH {
                let cond = match condition(rho, party, dir, outcome) {
                    Ok(c) => c,
                    Err(Error::ZeroProbabilityOutcome) => {
                        verdict.skipped_outcomes += 1;
                        continue;
                    }
                    Err(e) => return Err(e),
                };
                for (sdir, from, to) in [
                    (SteerDirection::Forward, rest[0], rest[1]),
                    (SteerDirection::Reverse, rest[1], rest[0]),
                ] {
                    let report = steering_report(&cond.state, sdir)?;
                    verdict.clamp_events += report.s2_clamped as usize;
                    fold_min(&mut verdict.s1_min, report.s1);
                    fold_max(&mut verdict.s2_max, report.s2);
                    fold_max(&mut verdict.m_max, report.horodecki_m);
                    if report.s1_detects {
                        verdict.witnesses.push(Witness {
                            party,
                            direction: *dir,
                            outcome,
                            steer_from: from,
                            steer_to: to,
                            criterion: Criterion::S1,
                            value: report.s1,
                        });
                    }
                    if report.s2_detects {
                        verdict.witnesses.push(Witness {
                            party,
                            direction: *dir,
                            outcome,
                            steer_from: from,
                            steer_to: to,
                            criterion: Criterion::S2,
                            value: report.s2,
                        });
                    }
                }
            }
        }
    }
    verdict.conditionally_steerable = !verdict.witnesses.is_empty();
    Ok(verdict)
}
