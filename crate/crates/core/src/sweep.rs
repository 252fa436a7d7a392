//! One-dimensional parameter sweeps with overlays, and their CSV form.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::str::FromStr;

use rayon::prelude::*;

use crate::closed_form::fisher;
use crate::detection::{delta_phi_diff, phi_opt, DetectionPoint};
use crate::error::{Error, Result};
use crate::model::{
    qcrb_sensitivity, BeamSplitter, CoherentAmplitude, CoherentSqueezedVacuum, DualCoherent, InputScenario,
    ScenarioKind, SqueezeParam, SqueezedCoherentSqueezedVacuum,
};
use crate::optimize::{kappa_coh_sqz, kappa_sqzcoh_sqz};

/// How the internal phase of the closed interferometer is set.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DetectionPhase {
    Fixed(f64),
    /// `φ_opt` computed once, on a splitter with this `|T|²`.
    OptimalAt { t_squared: f64 },
    /// `φ_opt` recomputed at every point.
    Optimal,
}

/// Flat parameter set covering every scenario. Fields a scenario does not
/// use are ignored.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScenarioParams {
    pub kind: ScenarioKind,
    pub alpha: f64,
    pub theta_alpha: f64,
    pub beta: f64,
    pub theta_beta: f64,
    /// Port-0 squeezing `r e^{iθ}`.
    pub r: f64,
    pub theta: f64,
    /// Port-1 squeezing `z e^{iφ}`.
    pub z: f64,
    pub phi: f64,
    pub t_squared: f64,
    /// Difference-intensity detection, two coherent inputs only.
    pub detection: Option<DetectionPhase>,
}

impl ScenarioParams {
    pub fn new(kind: ScenarioKind) -> Self {
        Self {
            kind,
            alpha: 0.0,
            theta_alpha: 0.0,
            beta: 0.0,
            theta_beta: 0.0,
            r: 0.0,
            theta: 0.0,
            z: 0.0,
            phi: 0.0,
            t_squared: 0.5,
            detection: None,
        }
    }

    pub fn scenario(&self) -> Result<InputScenario> {
        let alpha = CoherentAmplitude::new(self.alpha, self.theta_alpha)?;
        Ok(match self.kind {
            ScenarioKind::DualCoherent => {
                DualCoherent::new(alpha, CoherentAmplitude::new(self.beta, self.theta_beta)?).into()
            }
            ScenarioKind::CoherentSqueezedVacuum => {
                CoherentSqueezedVacuum::new(alpha, SqueezeParam::new(self.r, self.theta)?).into()
            }
            ScenarioKind::SqueezedCoherentSqueezedVacuum => SqueezedCoherentSqueezedVacuum::new(
                alpha,
                SqueezeParam::new(self.z, self.phi)?,
                SqueezeParam::new(self.r, self.theta)?,
            )
            .into(),
        })
    }

    pub fn beam_splitter(&self) -> Result<BeamSplitter> {
        BeamSplitter::from_t_squared(self.t_squared)
    }

    /// Rewrites the phases so that the input mismatch equals `dt`, moving
    /// `θ_α` for two coherent inputs and the port-0 squeezing angle otherwise.
    pub fn set_delta_theta(&mut self, dt: f64) {
        match self.kind {
            ScenarioKind::DualCoherent => self.theta_alpha = self.theta_beta + dt,
            _ => self.theta = 2.0 * self.theta_alpha - dt,
        }
    }

    pub fn delta_theta(&self) -> f64 {
        match self.kind {
            ScenarioKind::DualCoherent => self.theta_alpha - self.theta_beta,
            _ => 2.0 * self.theta_alpha - self.theta,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepVar {
    TSquared,
    DeltaTheta,
    Theta,
    PhiInternal,
}

impl SweepVar {
    pub fn name(&self) -> &'static str {
        match self {
            Self::TSquared => "t_squared",
            Self::DeltaTheta => "delta_theta",
            Self::Theta => "theta",
            Self::PhiInternal => "phi_internal",
        }
    }

    fn unit(&self) -> &'static str {
        match self {
            Self::TSquared => "1",
            _ => "rad",
        }
    }

    pub fn is_angle(&self) -> bool {
        !matches!(self, Self::TSquared)
    }

    fn check(&self, p: &ScenarioParams) -> std::result::Result<(), String> {
        match self {
            Self::Theta if p.kind == ScenarioKind::DualCoherent => {
                Err("sweep_var: theta needs a squeezed port-0 input".into())
            }
            Self::PhiInternal if p.kind != ScenarioKind::DualCoherent || p.detection.is_none() => {
                Err("sweep_var: phi_internal needs two coherent inputs with detection enabled".into())
            }
            _ => Ok(()),
        }
    }

    /// Sets the swept variable of `p` to `x`.
    pub fn apply(&self, p: &mut ScenarioParams, x: f64) {
        match self {
            Self::TSquared => p.t_squared = x,
            Self::DeltaTheta => p.set_delta_theta(x),
            Self::Theta => p.theta = x,
            Self::PhiInternal => p.detection = Some(DetectionPhase::Fixed(x)),
        }
    }
}

impl FromStr for SweepVar {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "t_squared" | "t2" => Ok(Self::TSquared),
            "delta_theta" => Ok(Self::DeltaTheta),
            "theta" => Ok(Self::Theta),
            "phi_internal" => Ok(Self::PhiInternal),
            other => Err(Error::InvalidSweep(format!("sweep_var: unknown variable '{other}'"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Overlay {
    pub label: String,
    pub params: ScenarioParams,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub base: ScenarioParams,
    pub sweep_var: SweepVar,
    pub lo: f64,
    pub hi: f64,
    pub n_points: usize,
    /// Each overlay replaces `base`; with none, `base` is swept alone.
    pub overlays: Vec<Overlay>,
    pub output: Option<PathBuf>,
}

impl SweepSpec {
    pub fn new(base: ScenarioParams, sweep_var: SweepVar, lo: f64, hi: f64, n_points: usize) -> Self {
        Self {
            base,
            sweep_var,
            lo,
            hi,
            n_points,
            overlays: Vec::new(),
            output: None,
        }
    }

    pub fn curves(&self) -> Vec<Overlay> {
        if self.overlays.is_empty() {
            vec![Overlay {
                label: "base".into(),
                params: self.base,
            }]
        } else {
            self.overlays.clone()
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidSweep(m));
        if !self.lo.is_finite() || !self.hi.is_finite() || self.lo >= self.hi {
            return bad(format!("range: lo = {} must be below hi = {}", self.lo, self.hi));
        }
        if self.n_points < 2 {
            return bad(format!("n_points: {} (need at least 2)", self.n_points));
        }
        if self.sweep_var == SweepVar::TSquared && (self.lo < 0.0 || self.hi > 1.0) {
            return bad(format!("range: t_squared must stay in [0, 1], got [{}, {}]", self.lo, self.hi));
        }
        for o in self.curves() {
            self.sweep_var.check(&o.params).map_err(Error::InvalidSweep)?;
            o.params
                .scenario()
                .map_err(|e| Error::InvalidSweep(format!("overlay '{}': {e}", o.label)))?;
            if self.sweep_var != SweepVar::TSquared {
                o.params
                    .beam_splitter()
                    .map_err(|e| Error::InvalidSweep(format!("overlay '{}': t_squared: {e}", o.label)))?;
            }
            if o.params.detection.is_some() && o.params.kind != ScenarioKind::DualCoherent {
                return bad(format!("overlay '{}': detection needs two coherent inputs", o.label));
            }
        }
        Ok(())
    }

    pub fn grid(&self) -> Vec<f64> {
        let n = self.n_points;
        (0..n)
            .map(|i| {
                if i == n - 1 {
                    self.hi
                } else {
                    self.lo + (self.hi - self.lo) * i as f64 / (n - 1) as f64
                }
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub overlay: String,
    pub x: f64,
    pub fisher: f64,
    pub delta_phi_qcrb: Option<f64>,
    pub delta_phi_diff: Option<f64>,
    pub kappa: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub sweep_var: SweepVar,
    pub rows: Vec<SweepRow>,
}

/// Values reported for one grid point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PointValues {
    pub fisher: f64,
    pub delta_phi_qcrb: Option<f64>,
    pub delta_phi_diff: Option<f64>,
    pub kappa: Option<f64>,
}

/// Fisher information, QCRB, detection sensitivity and `κ` at one point.
pub fn evaluate(p: &ScenarioParams) -> Result<PointValues> {
    let bs = p.beam_splitter()?;
    let input = p.scenario()?;
    let f = match fisher(&bs, &input) {
        Ok(f) => f,
        Err(Error::NoInformation | Error::SingularSumBlock(_)) => 0.0,
        Err(e) => return Err(e),
    };
    let qcrb = qcrb_sensitivity(f).ok();
    let kappa = match &input {
        InputScenario::DualCoherent(_) => None,
        InputScenario::CoherentSqueezedVacuum(s) => Some(kappa_coh_sqz(s).kappa()),
        InputScenario::SqueezedCoherentSqueezedVacuum(s) => Some(kappa_sqzcoh_sqz(s).kappa()),
    };
    let diff = match (&input, p.detection) {
        (InputScenario::DualCoherent(s), Some(mode)) => {
            let phi = match mode {
                DetectionPhase::Fixed(phi) => phi,
                DetectionPhase::OptimalAt { t_squared } => phi_opt(&BeamSplitter::from_t_squared(t_squared)?, s).phi,
                DetectionPhase::Optimal => phi_opt(&bs, s).phi,
            };
            delta_phi_diff(&DetectionPoint::new(bs, *s, phi)).ok()
        }
        _ => None,
    };
    Ok(PointValues {
        fisher: f,
        delta_phi_qcrb: qcrb,
        delta_phi_diff: diff,
        kappa,
    })
}

/// Evaluates every overlay on the grid in parallel; rows come back grouped
/// by overlay, in grid order.
pub fn run_sweep(spec: &SweepSpec) -> Result<SweepResult> {
    spec.validate()?;
    let grid = spec.grid();
    let jobs: Vec<(String, ScenarioParams, f64)> = spec
        .curves()
        .into_iter()
        .flat_map(|o| {
            grid.iter().map(move |&x| {
                let mut p = o.params;
                spec.sweep_var.apply(&mut p, x);
                (o.label.clone(), p, x)
            })
        })
        .collect();
    let rows = jobs
        .into_par_iter()
        .map(|(overlay, p, x)| {
            let PointValues {
                fisher,
                delta_phi_qcrb,
                delta_phi_diff,
                kappa,
            } = evaluate(&p)?;
            Ok(SweepRow {
                overlay,
                x,
                fisher,
                delta_phi_qcrb,
                delta_phi_diff,
                kappa,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SweepResult {
        sweep_var: spec.sweep_var,
        rows,
    })
}

fn cell(out: &mut String, v: Option<f64>) {
    out.push(',');
    if let Some(v) = v {
        let _ = write!(out, "{v:.16e}");
    }
}

impl SweepResult {
    pub fn header(&self) -> String {
        format!(
            "overlay,{} [{}],fisher [1],delta_phi_qcrb [rad],delta_phi_diff [rad],kappa [1]",
            self.sweep_var.name(),
            self.sweep_var.unit()
        )
    }

    /// UTF-8, LF line endings, 17 significant digits, empty cells for
    /// quantities that do not apply.
    pub fn to_csv(&self) -> String {
        let mut out = self.header();
        out.push('\n');
        for row in &self.rows {
            out.push_str(&row.overlay);
            cell(&mut out, Some(row.x));
            cell(&mut out, Some(row.fisher));
            cell(&mut out, row.delta_phi_qcrb);
            cell(&mut out, row.delta_phi_diff);
            cell(&mut out, row.kappa);
            out.push('\n');
        }
        out
    }

    pub fn overlay_rows<'a>(&'a self, label: &'a str) -> impl Iterator<Item = &'a SweepRow> + 'a {
        self.rows.iter().filter(move |r| r.overlay == label)
    }
}
