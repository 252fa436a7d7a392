//! Optimal operating points: input phase mismatch and splitter transmission
//! for two coherent inputs, the threshold mismatch and `κ` regimes of the
//! squeezed scenarios, and the maximal Fisher information of each scenario.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::closed_form::{coh_sqz_parts, fisher_dual_coherent, sqzcoh_sqz_parts, KappaParts};
use crate::error::{Error, Result};
use crate::model::{
    BeamSplitter, CoherentAmplitude, CoherentSqueezedVacuum, DualCoherent, SqueezeParam,
    SqueezedCoherentSqueezedVacuum,
};

/// Relative tolerance under which `κ` counts as zero.
pub const KAPPA_ZERO_TOL: f64 = 1e-9;

/// Sign of `κ`, the coefficient of `4|TR|²` in the reduced Fisher
/// information, and what it implies for the best splitter.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum KappaRegime {
    /// `κ > 0`: maximum at the balanced splitter.
    BalancedOptimal { kappa: f64 },
    /// `κ = 0`: the Fisher information does not depend on `T`.
    TransmissionIndependent { kappa: f64 },
    /// `κ < 0`: maximum at `T ∈ {0, 1}`.
    DegenerateOptimal { kappa: f64 },
}

impl KappaRegime {
    fn classify(kappa: f64, scale: f64) -> Self {
        if kappa.abs() <= KAPPA_ZERO_TOL * scale {
            Self::TransmissionIndependent { kappa }
        } else if kappa > 0.0 {
            Self::BalancedOptimal { kappa }
        } else {
            Self::DegenerateOptimal { kappa }
        }
    }

    fn from_parts(parts: Option<KappaParts>) -> Self {
        match parts {
            Some(p) => Self::classify(p.kappa(), p.scale),
            None => Self::TransmissionIndependent { kappa: 0.0 },
        }
    }

    pub fn kappa(&self) -> f64 {
        match *self {
            Self::BalancedOptimal { kappa }
            | Self::TransmissionIndependent { kappa }
            | Self::DegenerateOptimal { kappa } => kappa,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Self::BalancedOptimal { .. } => "balanced-optimal",
            Self::TransmissionIndependent { .. } => "transmission-independent",
            Self::DegenerateOptimal { .. } => "degenerate-optimal",
        }
    }
}

fn sin_arg_dual(bs: &BeamSplitter, varpi: f64) -> f64 {
    -bs.imbalance() * (1.0 - varpi * varpi) / (4.0 * bs.tr_abs() * varpi)
}

/// Input mismatch `Δθ` that restores `F = |α|²(1+ϖ²)` on a fixed splitter.
///
/// Solves `sin Δθ = -(|T|²-|R|²)(1-ϖ²)/(4|TR|ϖ)`, which is where the
/// sum-difference Fisher element vanishes. Principal branch; `π - Δθ` and
/// `2kπ` shifts are the caller's concern.
pub fn delta_theta_opt_dual(bs: &BeamSplitter, varpi: f64) -> Result<f64> {
    if !(varpi > 0.0) || !varpi.is_finite() {
        return Err(Error::InvalidParameter(format!("varpi = {varpi} must be positive")));
    }
    if bs.tr_abs() <= 1e-15 {
        return Err(Error::DegenerateSplitter);
    }
    let argument = sin_arg_dual(bs, varpi);
    if argument.abs() > 1.0 + 1e-12 {
        return Err(Error::NoCompensatingMismatch { argument });
    }
    Ok(argument.clamp(-1.0, 1.0).asin())
}

/// Mismatch maximizing `F` on a fixed splitter even when full compensation
/// is out of reach: the arcsin argument of [`delta_theta_opt_dual`] clamped
/// to `[-1, 1]`.
pub fn delta_theta_best_dual(bs: &BeamSplitter, varpi: f64) -> f64 {
    if !(varpi > 0.0) || bs.tr_abs() <= 1e-15 {
        return 0.0;
    }
    sin_arg_dual(bs, varpi).clamp(-1.0, 1.0).asin()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransmissionOptimum {
    pub t_squared: f64,
    /// Set at `ϖ = 1`, where the closed form is 0/0 and the optimum was
    /// chosen by direct evaluation.
    pub degenerate: bool,
}

/// Transmission `|T|²` maximizing `F` for a given mismatch and power ratio.
pub fn t_opt_squared_dual(delta_theta: f64, varpi: f64) -> Result<TransmissionOptimum> {
    if !(varpi >= 0.0) || !varpi.is_finite() || !delta_theta.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "varpi = {varpi}, delta_theta = {delta_theta}"
        )));
    }
    let s = delta_theta.sin();
    if varpi == 1.0 {
        if s.abs() <= 1e-12 {
            return Ok(TransmissionOptimum {
                t_squared: 0.5,
                degenerate: true,
            });
        }
        // one-sided limits of the sign factor give 1/2 ± 1/2
        let half = 0.5 * s.signum();
        let candidates = [0.5 + half, 0.5 - half, 0.5];
        let input = DualCoherent::new(
            CoherentAmplitude::new(1.0, delta_theta)?,
            CoherentAmplitude::new(1.0, 0.0)?,
        );
        let mut best = (candidates[0], f64::NEG_INFINITY);
        for t2 in candidates {
            let f = fisher_dual_coherent(&BeamSplitter::from_t_squared(t2)?, &input)?;
            if f > best.1 {
                best = (t2, f);
            }
        }
        return Ok(TransmissionOptimum {
            t_squared: best.0,
            degenerate: true,
        });
    }
    let w2 = varpi * varpi;
    let denom = ((1.0 - w2).powi(2) + 4.0 * w2 * s * s).sqrt();
    let sign = if w2 > 1.0 { 1.0 } else { -1.0 };
    Ok(TransmissionOptimum {
        t_squared: (0.5 + sign * varpi * s / denom).clamp(0.0, 1.0),
        degenerate: false,
    })
}

/// `|α|² + |β|²`, reached on any splitter at the compensating mismatch.
pub fn fisher_max_dual(input: &DualCoherent) -> f64 {
    input.alpha.intensity() + input.beta.intensity()
}

pub fn kappa_coh_sqz(input: &CoherentSqueezedVacuum) -> KappaRegime {
    KappaRegime::from_parts(coh_sqz_parts(input))
}

/// Threshold mismatch `Δθ_lim ∈ [0, π]` where `κ = 0` for coherent plus
/// squeezed vacuum input. Depends only on `|α|` and `r`.
///
/// Obtained by solving `κ = 0` for `cos Δθ`:
/// `cos Δθ_lim = 2 sinh 2r / (|α|² + sinh²2r/2) - coth 2r - sinh²r / (|α|² sinh 2r)`.
pub fn delta_theta_lim(input: &CoherentSqueezedVacuum) -> Option<f64> {
    let a2 = input.alpha.intensity();
    let r = input.xi.r;
    if !(a2 > 0.0 && r > 0.0) {
        return None;
    }
    let sh2r = (2.0 * r).sinh();
    let sh_r = r.sinh();
    let cos_lim = 2.0 * sh2r / (a2 + 0.5 * sh2r * sh2r)
        - (2.0 * r).cosh() / sh2r
        - sh_r * sh_r / (sh2r * a2);
    (cos_lim.abs() <= 1.0).then(|| cos_lim.acos())
}

/// Large-amplitude approximation of [`delta_theta_lim`], valid for
/// `|α|² ≫ sinh² r`. Approximate only.
pub fn delta_theta_lim_approx(alpha_magnitude: f64, r: f64) -> Option<f64> {
    let a2 = alpha_magnitude * alpha_magnitude;
    if !(a2 > 0.0 && r > 0.0) {
        return None;
    }
    let sh2r = (2.0 * r).sinh();
    let c = 2.0 * sh2r / a2 - (2.0 * r).cosh() / sh2r;
    (c.abs() <= 1.0).then(|| c.acos())
}

/// `|α|² e^{2r} + sinh² r`, at `Δθ = 0` on a balanced splitter.
pub fn fisher_max_coh_sqz(input: &CoherentSqueezedVacuum) -> f64 {
    let r = input.xi.r;
    input.alpha.intensity() * (2.0 * r).exp() + r.sinh().powi(2)
}

pub fn kappa_sqzcoh_sqz(input: &SqueezedCoherentSqueezedVacuum) -> KappaRegime {
    KappaRegime::from_parts(sqzcoh_sqz_parts(input))
}

/// `|α|² e^{2r} + sinh²(r+z)`, at `2θ_α - θ = 0`, `φ - θ = π` on a balanced
/// splitter.
pub fn fisher_max_sqzcoh_sqz(input: &SqueezedCoherentSqueezedVacuum) -> f64 {
    let (r, z) = (input.xi.r, input.zeta.r);
    input.alpha.intensity() * (2.0 * r).exp() + (r + z).sinh().powi(2)
}

/// Moves the port-0 squeezing angle `θ` (hence `Δθ`) onto `κ = 0`, keeping
/// `α`, `r`, `z` and `φ` fixed. Returns `None` when no angle reaches zero.
///
/// At fixed `φ`, `κ(θ) = c + P cos(θ - 2θ_α) - Q cos(θ - φ)`, a single
/// sinusoid in `θ`; the root returned is `θ = -arg w + arccos(-c/|w|)`
/// wrapped into `(-π, π]`.
pub fn kappa_root_sqzcoh_sqz(
    input: &SqueezedCoherentSqueezedVacuum,
) -> Option<SqueezedCoherentSqueezedVacuum> {
    let a2 = input.alpha.intensity();
    let (r, z) = (input.xi.r, input.zeta.r);
    let (sh_r, ch_r, sh_z, ch_z) = (r.sinh(), r.cosh(), z.sinh(), z.cosh());
    let threshold = sqzcoh_sqz_parts(input)?.threshold;
    let p = a2 * (2.0 * r).sinh();
    let q = 2.0 * sh_r * sh_z * ch_r * ch_z;
    let c = a2 * (2.0 * r).cosh() + sh_r * sh_r + sh_z * sh_z + 2.0 * (sh_r * sh_z).powi(2) - threshold;
    let w = Complex64::from_polar(p, -2.0 * input.alpha.phase) - Complex64::from_polar(q, -input.zeta.angle);
    let amp = w.norm();
    if amp == 0.0 || (c / amp).abs() > 1.0 {
        return None;
    }
    let theta = wrap_angle(-w.arg() + (-c / amp).acos());
    let xi = SqueezeParam::new(r, theta).ok()?;
    Some(SqueezedCoherentSqueezedVacuum::new(input.alpha, input.zeta, xi))
}

/// Wraps into `(-π, π]`.
pub fn wrap_angle(x: f64) -> f64 {
    let y = x.rem_euclid(2.0 * PI);
    if y > PI {
        y - 2.0 * PI
    } else {
        y
    }
}
