//! Domain types shared by every module: the input beam splitter, the three
//! Gaussian input scenarios, the two-parameter Fisher matrix and its
//! reduction to the difference-phase Fisher information.
//!
//! Conventions are fixed here once. The first beam splitter maps the input
//! creation operators onto the arms as
//! `a3† = R* a0† + T* a1†`, `a2† = T* a0† + R* a1†`, with `T = cos τ` real and
//! `R = i sin τ` purely imaginary, so that `i T* R = -|T R|`.

use std::f64::consts::FRAC_PI_2;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Lossless beam splitter parameterized by its mixing angle `tau`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BeamSplitter {
    tau: f64,
}

impl BeamSplitter {
    pub fn new(tau: f64) -> Result<Self> {
        if !tau.is_finite() || !(0.0..=FRAC_PI_2).contains(&tau) {
            return Err(Error::InvalidParameter(format!(
                "mixing angle tau = {tau} outside [0, pi/2]"
            )));
        }
        Ok(Self { tau })
    }

    /// 50/50 splitter, `|T|² = |R|² = 1/2`.
    pub fn balanced() -> Self {
        Self {
            tau: std::f64::consts::FRAC_PI_4,
        }
    }

    /// Splitter with intensity transmission `|T|² = t_squared`.
    pub fn from_t_squared(t_squared: f64) -> Result<Self> {
        if !t_squared.is_finite() || !(0.0..=1.0).contains(&t_squared) {
            return Err(Error::InvalidParameter(format!(
                "transmission |T|^2 = {t_squared} outside [0, 1]"
            )));
        }
        Ok(Self {
            tau: t_squared.sqrt().acos(),
        })
    }

    pub fn tau(&self) -> f64 {
        self.tau
    }

    pub fn t(&self) -> Complex64 {
        Complex64::new(self.tau.cos(), 0.0)
    }

    pub fn r(&self) -> Complex64 {
        Complex64::new(0.0, self.tau.sin())
    }

    pub fn t_squared(&self) -> f64 {
        let c = self.tau.cos();
        c * c
    }

    pub fn r_squared(&self) -> f64 {
        let s = self.tau.sin();
        s * s
    }

    /// `|T R| = sin(2τ)/2`.
    pub fn tr_abs(&self) -> f64 {
        0.5 * (2.0 * self.tau).sin()
    }

    /// `|T|² - |R|² = cos 2τ`.
    pub fn imbalance(&self) -> f64 {
        (2.0 * self.tau).cos()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoherentAmplitude {
    pub magnitude: f64,
    pub phase: f64,
}

impl CoherentAmplitude {
    pub fn new(magnitude: f64, phase: f64) -> Result<Self> {
        if !magnitude.is_finite() || magnitude < 0.0 || !phase.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "coherent amplitude |a| = {magnitude}, phase = {phase}"
            )));
        }
        Ok(Self { magnitude, phase })
    }

    pub fn vacuum() -> Self {
        Self {
            magnitude: 0.0,
            phase: 0.0,
        }
    }

    pub fn to_complex(&self) -> Complex64 {
        Complex64::from_polar(self.magnitude, self.phase)
    }

    pub fn intensity(&self) -> f64 {
        self.magnitude * self.magnitude
    }
}

/// Squeeze parameter `r e^{i angle}` with `S(ξ) = exp[(ξ* a² - ξ a†²)/2]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SqueezeParam {
    pub r: f64,
    pub angle: f64,
}

impl SqueezeParam {
    pub fn new(r: f64, angle: f64) -> Result<Self> {
        if !r.is_finite() || r < 0.0 || !angle.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "squeeze factor r = {r}, angle = {angle}"
            )));
        }
        Ok(Self { r, angle })
    }

    pub fn none() -> Self {
        Self { r: 0.0, angle: 0.0 }
    }
}

/// Coherent `alpha` in port 1 and coherent `beta` in port 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DualCoherent {
    pub alpha: CoherentAmplitude,
    pub beta: CoherentAmplitude,
}

impl DualCoherent {
    pub fn new(alpha: CoherentAmplitude, beta: CoherentAmplitude) -> Self {
        Self { alpha, beta }
    }

    /// `ϖ = |β|/|α|`, undefined for `|α| = 0`.
    pub fn varpi(&self) -> Option<f64> {
        (self.alpha.magnitude > 0.0).then(|| self.beta.magnitude / self.alpha.magnitude)
    }

    /// `Δθ = θ_α - θ_β`.
    pub fn delta_theta(&self) -> f64 {
        self.alpha.phase - self.beta.phase
    }
}

/// Coherent `alpha` in port 1 and squeezed vacuum `xi` in port 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoherentSqueezedVacuum {
    pub alpha: CoherentAmplitude,
    pub xi: SqueezeParam,
}

impl CoherentSqueezedVacuum {
    pub fn new(alpha: CoherentAmplitude, xi: SqueezeParam) -> Self {
        Self { alpha, xi }
    }

    /// `Δθ = 2θ_α - θ`.
    pub fn delta_theta(&self) -> f64 {
        2.0 * self.alpha.phase - self.xi.angle
    }
}

/// Squeezed-coherent `D(alpha) S(zeta)|0>` in port 1 and squeezed vacuum
/// `xi` in port 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SqueezedCoherentSqueezedVacuum {
    pub alpha: CoherentAmplitude,
    pub zeta: SqueezeParam,
    pub xi: SqueezeParam,
}

impl SqueezedCoherentSqueezedVacuum {
    pub fn new(alpha: CoherentAmplitude, zeta: SqueezeParam, xi: SqueezeParam) -> Self {
        Self { alpha, zeta, xi }
    }

    /// `Δθ = 2θ_α - θ`.
    pub fn delta_theta(&self) -> f64 {
        2.0 * self.alpha.phase - self.xi.angle
    }

    /// `Δφ = 2θ_α - φ`.
    pub fn delta_phi(&self) -> f64 {
        2.0 * self.alpha.phase - self.zeta.angle
    }

    /// Mismatch between the two squeezing angles, `φ - θ`.
    pub fn squeeze_mismatch(&self) -> f64 {
        self.zeta.angle - self.xi.angle
    }

    /// Same input with port 1 unsqueezed.
    pub fn without_port1_squeezing(&self) -> CoherentSqueezedVacuum {
        CoherentSqueezedVacuum::new(self.alpha, self.xi)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum InputScenario {
    DualCoherent(DualCoherent),
    CoherentSqueezedVacuum(CoherentSqueezedVacuum),
    SqueezedCoherentSqueezedVacuum(SqueezedCoherentSqueezedVacuum),
}

impl From<DualCoherent> for InputScenario {
    fn from(v: DualCoherent) -> Self {
        Self::DualCoherent(v)
    }
}

impl From<CoherentSqueezedVacuum> for InputScenario {
    fn from(v: CoherentSqueezedVacuum) -> Self {
        Self::CoherentSqueezedVacuum(v)
    }
}

impl From<SqueezedCoherentSqueezedVacuum> for InputScenario {
    fn from(v: SqueezedCoherentSqueezedVacuum) -> Self {
        Self::SqueezedCoherentSqueezedVacuum(v)
    }
}

impl InputScenario {
    pub fn delta_theta(&self) -> f64 {
        match self {
            Self::DualCoherent(s) => s.delta_theta(),
            Self::CoherentSqueezedVacuum(s) => s.delta_theta(),
            Self::SqueezedCoherentSqueezedVacuum(s) => s.delta_theta(),
        }
    }

    pub fn kind(&self) -> ScenarioKind {
        match self {
            Self::DualCoherent(_) => ScenarioKind::DualCoherent,
            Self::CoherentSqueezedVacuum(_) => ScenarioKind::CoherentSqueezedVacuum,
            Self::SqueezedCoherentSqueezedVacuum(_) => ScenarioKind::SqueezedCoherentSqueezedVacuum,
        }
    }
}

/// Scenario tag without parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ScenarioKind {
    DualCoherent,
    CoherentSqueezedVacuum,
    SqueezedCoherentSqueezedVacuum,
}

impl ScenarioKind {
    pub const ALL: [ScenarioKind; 3] = [
        Self::DualCoherent,
        Self::CoherentSqueezedVacuum,
        Self::SqueezedCoherentSqueezedVacuum,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Self::DualCoherent => "dual-coherent",
            Self::CoherentSqueezedVacuum => "coherent-squeezed",
            Self::SqueezedCoherentSqueezedVacuum => "squeezed-coherent-squeezed",
        }
    }

    /// 1, 2, 3 in the order the scenarios are introduced.
    pub fn number(&self) -> u8 {
        match self {
            Self::DualCoherent => 1,
            Self::CoherentSqueezedVacuum => 2,
            Self::SqueezedCoherentSqueezedVacuum => 3,
        }
    }
}

impl std::str::FromStr for ScenarioKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "1" | "dual-coherent" | "dual" => Ok(Self::DualCoherent),
            "2" | "coherent-squeezed" => Ok(Self::CoherentSqueezedVacuum),
            "3" | "squeezed-coherent-squeezed" => Ok(Self::SqueezedCoherentSqueezedVacuum),
            other => Err(Error::InvalidParameter(format!("unknown scenario '{other}'"))),
        }
    }
}

/// Two-parameter Fisher matrix over the sum and difference phases.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FisherMatrix {
    pub ss: f64,
    pub sd: f64,
    pub ds: f64,
    pub dd: f64,
}

impl FisherMatrix {
    pub fn new(ss: f64, sd: f64, ds: f64, dd: f64) -> Self {
        Self { ss, sd, ds, dd }
    }

    pub fn symmetric(ss: f64, sd: f64, dd: f64) -> Self {
        Self { ss, sd, ds: sd, dd }
    }

    pub fn zero() -> Self {
        Self::symmetric(0.0, 0.0, 0.0)
    }

    pub fn determinant(&self) -> f64 {
        self.ss * self.dd - self.sd * self.ds
    }

    pub fn elements(&self) -> [f64; 4] {
        [self.ss, self.sd, self.ds, self.dd]
    }

    /// Positive semidefinite within an absolute tolerance.
    pub fn is_positive_semidefinite(&self, tol: f64) -> bool {
        self.ss >= -tol && self.dd >= -tol && self.determinant() >= -tol
    }

    pub fn reduce(&self) -> Result<f64> {
        reduce_fisher(self)
    }
}

/// Difference-phase Fisher information `F_dd - F_sd F_ds / F_ss`.
///
/// The full Schur complement is always used; `F_dd` alone is never
/// substituted for it.
pub fn reduce_fisher(m: &FisherMatrix) -> Result<f64> {
    if !(m.ss > 0.0) {
        return Err(Error::SingularSumBlock(m.ss));
    }
    Ok(m.dd - m.sd * m.ds / m.ss)
}

/// Quantum Cramér-Rao bound on the phase uncertainty, `1/sqrt(F)`.
pub fn qcrb_sensitivity(fisher: f64) -> Result<f64> {
    if !(fisher > 0.0) {
        return Err(Error::NoInformation);
    }
    Ok(1.0 / fisher.sqrt())
}

/// Arm phases in sum/difference form, `φ_{s/d} = (φ₁ ± φ₂)/2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseConfig {
    pub phi_s: f64,
    pub phi_d: f64,
}

impl PhaseConfig {
    pub fn from_arms(phi_1: f64, phi_2: f64) -> Self {
        Self {
            phi_s: 0.5 * (phi_1 + phi_2),
            phi_d: 0.5 * (phi_1 - phi_2),
        }
    }

    pub fn arms(&self) -> (f64, f64) {
        (self.phi_s + self.phi_d, self.phi_s - self.phi_d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn reduce_fisher_examples() {
        assert_eq!(reduce_fisher(&FisherMatrix::symmetric(2.0, 0.0, 2.0)).unwrap(), 2.0);
        assert_eq!(
            reduce_fisher(&FisherMatrix::symmetric(200.0, 0.0, 200.0)).unwrap(),
            200.0
        );
        assert_eq!(reduce_fisher(&FisherMatrix::symmetric(1.0, 0.5, 1.0)).unwrap(), 0.75);
    }

    #[test]
    fn reduce_fisher_singular() {
        assert!(matches!(
            reduce_fisher(&FisherMatrix::zero()),
            Err(Error::SingularSumBlock(_))
        ));
    }

    #[test]
    fn qcrb_examples() {
        assert!((qcrb_sensitivity(100.0).unwrap() - 0.1).abs() < 1e-15);
        assert!((qcrb_sensitivity(198.01).unwrap() - 0.07106511090102073).abs() < 1e-15);
        assert!((qcrb_sensitivity(9972.81).unwrap() - 0.010013622786570633).abs() < 1e-15);
        assert_eq!(qcrb_sensitivity(0.0), Err(Error::NoInformation));
        assert_eq!(qcrb_sensitivity(-1.0), Err(Error::NoInformation));
    }

    #[test]
    fn splitter_rejects_out_of_range() {
        assert!(BeamSplitter::new(-0.1).is_err());
        assert!(BeamSplitter::new(1.6).is_err());
        assert!(BeamSplitter::from_t_squared(1.2).is_err());
        assert!(BeamSplitter::new(f64::NAN).is_err());
    }

    #[test]
    fn varpi_undefined_without_alpha() {
        let d = DualCoherent::new(CoherentAmplitude::vacuum(), CoherentAmplitude::new(1.0, 0.0).unwrap());
        assert_eq!(d.varpi(), None);
    }

    proptest! {
        #[test]
        fn splitter_unitarity_and_sign(tau in 0.0..=FRAC_PI_2) {
            let bs = BeamSplitter::new(tau).unwrap();
            let (t, r) = (bs.t(), bs.r());
            prop_assert!((t.norm_sqr() + r.norm_sqr() - 1.0).abs() < 1e-15);
            prop_assert!((t * r.conj() + t.conj() * r).norm() < 1e-15);
            let i_tr = Complex64::i() * t.conj() * r;
            prop_assert!((i_tr.re + (t * r).norm()).abs() < 1e-15);
            prop_assert!(i_tr.im.abs() < 1e-15);
            prop_assert!((bs.tr_abs() - (t * r).norm()).abs() < 1e-15);
            prop_assert!((bs.imbalance() - (bs.t_squared() - bs.r_squared())).abs() < 1e-15);
        }

        #[test]
        fn from_t_squared_round_trip(t2 in 0.0..=1.0f64) {
            let bs = BeamSplitter::from_t_squared(t2).unwrap();
            prop_assert!((bs.t_squared() - t2).abs() < 1e-12);
        }

        #[test]
        fn phase_config_round_trip(p1 in -10.0..10.0f64, p2 in -10.0..10.0f64) {
            let (q1, q2) = PhaseConfig::from_arms(p1, p2).arms();
            prop_assert!((q1 - p1).abs() <= 4.0 * f64::EPSILON * p1.abs().max(p2.abs()).max(1.0));
            prop_assert!((q2 - p2).abs() <= 4.0 * f64::EPSILON * p1.abs().max(p2.abs()).max(1.0));
        }

        #[test]
        fn reduction_never_exceeds_dd(ss in 1e-3..1e3f64, dd in 0.0..1e3f64, c in -1.0..1.0f64) {
            let sd = c * (ss * dd).sqrt();
            let m = FisherMatrix::symmetric(ss, sd, dd);
            prop_assert!(m.is_positive_semidefinite(1e-9 * ss.max(dd)));
            prop_assert!(reduce_fisher(&m).unwrap() <= dd * (1.0 + 1e-15));
        }

        #[test]
        fn reduction_scales_with_matrix(ss in 1e-2..1e2f64, dd in 1e-2..1e2f64, c in -0.9..0.9f64, lambda in 1e-3..1e3f64) {
            let sd = c * (ss * dd).sqrt();
            let m = FisherMatrix::symmetric(ss, sd, dd);
            let scaled = FisherMatrix::symmetric(lambda * ss, lambda * sd, lambda * dd);
            let f = reduce_fisher(&m).unwrap();
            let fl = reduce_fisher(&scaled).unwrap();
            prop_assert!((fl / (lambda * f) - 1.0).abs() < 1e-12);
            let d = qcrb_sensitivity(f).unwrap();
            let dl = qcrb_sensitivity(fl).unwrap();
            prop_assert!((dl * lambda.sqrt() / d - 1.0).abs() < 1e-12);
        }
    }
}
