//! Difference-intensity detection for two coherent inputs, with the
//! interferometer closed by a balanced second splitter and ideal detectors.

use crate::error::{Error, Result};
use crate::model::{BeamSplitter, DualCoherent};

/// Working point of the closed interferometer.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DetectionPoint {
    pub bs: BeamSplitter,
    pub input: DualCoherent,
    /// Total internal phase `φ`.
    pub phi: f64,
}

impl DetectionPoint {
    pub fn new(bs: BeamSplitter, input: DualCoherent, phi: f64) -> Self {
        Self { bs, input, phi }
    }
}

/// `|α|²·C_d` and `|α|²·ϖ cos Δθ`, i.e. the coefficients of `sin φ` and
/// `cos φ` in `∂⟨N_d⟩/∂φ / 2`, kept multiplied through by `|α|²` so that
/// they stay finite at `|α| = 0`.
fn fringe_coefficients(bs: &BeamSplitter, input: &DualCoherent) -> (f64, f64) {
    let a2 = input.alpha.intensity();
    let b2 = input.beta.intensity();
    let ab = input.alpha.magnitude * input.beta.magnitude;
    let dt = input.delta_theta();
    let c_d = bs.tr_abs() * (a2 - b2) + (1.0 - 2.0 * bs.t_squared()) * ab * dt.sin();
    (c_d, ab * dt.cos())
}

/// `C_d = |TR|(1-ϖ²) + (1-2|T|²) ϖ sin Δθ`. Requires `|α| > 0`.
pub fn c_d(bs: &BeamSplitter, input: &DualCoherent) -> Option<f64> {
    let varpi = input.varpi()?;
    Some(bs.tr_abs() * (1.0 - varpi * varpi) + (1.0 - 2.0 * bs.t_squared()) * varpi * input.delta_theta().sin())
}

/// `|∂⟨N_d⟩/∂φ| = 2|α|² |C_d sin φ + ϖ cos Δθ cos φ|`.
pub fn nd_mean_derivative(p: &DetectionPoint) -> f64 {
    let (s, c) = fringe_coefficients(&p.bs, &p.input);
    2.0 * (s * p.phi.sin() + c * p.phi.cos()).abs()
}

/// `Var(N_d) = |α|²(1+ϖ²)`, flat in `φ` and `T`.
pub fn nd_variance(p: &DetectionPoint) -> f64 {
    p.input.alpha.intensity() + p.input.beta.intensity()
}

/// Error-propagation sensitivity `ΔN_d / |∂⟨N_d⟩/∂φ|`.
pub fn delta_phi_diff(p: &DetectionPoint) -> Result<f64> {
    let slope = nd_mean_derivative(p);
    if slope == 0.0 {
        return Err(Error::InsensitiveWorkingPoint);
    }
    Ok(nd_variance(p).sqrt() / slope)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhiOptimum {
    pub phi: f64,
    /// `ϖ cos Δθ = 0`: only the `sin φ` fringe remains and `π/2` is returned.
    pub sin_only: bool,
}

/// Internal phase that minimizes `Δφ_diff`: principal branch of
/// `arctan(C_d / (ϖ cos Δθ))`. Both this branch and the one shifted by `π`
/// reach `sqrt(C_d² + ϖ² cos² Δθ)`, which equals the QCRB value.
pub fn phi_opt(bs: &BeamSplitter, input: &DualCoherent) -> PhiOptimum {
    let (s, c) = fringe_coefficients(bs, input);
    if c == 0.0 {
        return PhiOptimum {
            phi: std::f64::consts::FRAC_PI_2,
            sin_only: true,
        };
    }
    PhiOptimum {
        phi: (s / c).atan(),
        sin_only: false,
    }
}
