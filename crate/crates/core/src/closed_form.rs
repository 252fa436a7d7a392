//! Closed-form Fisher matrices and reduced Fisher information for the three
//! input scenarios.
//!
//! For the two squeezed scenarios the reduced information is evaluated as
//! `F = 4|TR|²·κ + B`, where `κ` is the coefficient whose sign decides the
//! optimal splitter and `B` is the transmission-independent part. The same
//! decomposition backs the regime classification in [`crate::optimize`].

use crate::error::{Error, Result};
use crate::model::{
    BeamSplitter, CoherentSqueezedVacuum, DualCoherent, FisherMatrix, InputScenario,
    SqueezedCoherentSqueezedVacuum,
};

/// The `F = 4|TR|²(positive - threshold) + threshold` split of a squeezed
/// scenario, plus the magnitude scale used for sign decisions on `κ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct KappaParts {
    pub positive: f64,
    pub threshold: f64,
    pub scale: f64,
}

impl KappaParts {
    pub fn kappa(&self) -> f64 {
        self.positive - self.threshold
    }

    pub fn fisher(&self, bs: &BeamSplitter) -> f64 {
        let tr = bs.tr_abs();
        4.0 * tr * tr * self.kappa() + self.threshold
    }
}

pub fn fisher_matrix_dual_coherent(bs: &BeamSplitter, input: &DualCoherent) -> FisherMatrix {
    let (t, r) = (bs.t(), bs.r());
    let (alpha, beta) = (input.alpha.to_complex(), input.beta.to_complex());
    let total = input.alpha.intensity() + input.beta.intensity();
    // <n2> - <n3>
    let sd = (r * alpha + t * beta).norm_sqr() - (t * alpha + r * beta).norm_sqr();
    FisherMatrix::symmetric(total, sd, total)
}

/// Reduced Fisher information for two coherent inputs, written in terms of
/// `ϖ = |β|/|α|` and `Δθ = θ_α - θ_β`.
///
/// With `|α| = 0` the ports are swapped (`τ → π/2 - τ`), under which the
/// expression is invariant.
pub fn fisher_dual_coherent(bs: &BeamSplitter, input: &DualCoherent) -> Result<f64> {
    let (amp, varpi, imbalance) = if input.alpha.magnitude > 0.0 {
        (input.alpha.magnitude, input.beta.magnitude / input.alpha.magnitude, bs.imbalance())
    } else if input.beta.magnitude > 0.0 {
        (input.beta.magnitude, 0.0, -bs.imbalance())
    } else {
        return Err(Error::NoInformation);
    };
    let tr = bs.tr_abs();
    let tr2 = tr * tr;
    let w2 = varpi * varpi;
    let norm = 1.0 + w2;
    let s = input.delta_theta().sin();
    let bracket = tr2 * norm - 4.0 * tr2 * w2 * (1.0 + s * s) / norm + w2 / norm
        - 2.0 * tr * imbalance * varpi * (1.0 - w2) * s / norm;
    Ok(4.0 * amp * amp * bracket)
}

/// Balanced-splitter special case of [`fisher_dual_coherent`].
pub fn fisher_dual_coherent_balanced(input: &DualCoherent) -> Result<f64> {
    let (amp, varpi) = if input.alpha.magnitude > 0.0 {
        (input.alpha.magnitude, input.beta.magnitude / input.alpha.magnitude)
    } else if input.beta.magnitude > 0.0 {
        (input.beta.magnitude, 0.0)
    } else {
        return Err(Error::NoInformation);
    };
    let w2 = varpi * varpi;
    let s = input.delta_theta().sin();
    Ok(amp * amp * (1.0 + w2 - 4.0 * w2 * s * s / (1.0 + w2)))
}

pub fn fisher_matrix_coh_sqz(bs: &BeamSplitter, input: &CoherentSqueezedVacuum) -> FisherMatrix {
    let a2 = input.alpha.intensity();
    let r = input.xi.r;
    let sh2r = (2.0 * r).sinh();
    let half_sq = 0.5 * sh2r * sh2r;
    let sh_r = r.sinh();
    let tr = bs.tr_abs();
    let imbalance = bs.imbalance();

    let ss = a2 + half_sq;
    let sd = imbalance * (half_sq - a2);
    let dd = imbalance * imbalance * ss
        + 4.0 * tr * tr * (a2 * (sh2r * input.delta_theta().cos() + (2.0 * r).cosh()) + sh_r * sh_r);
    FisherMatrix::symmetric(ss, sd, dd)
}

pub(crate) fn coh_sqz_parts(input: &CoherentSqueezedVacuum) -> Option<KappaParts> {
    let a2 = input.alpha.intensity();
    let r = input.xi.r;
    let sh2r = (2.0 * r).sinh();
    let ch2r = (2.0 * r).cosh();
    let sh_r = r.sinh();
    let ss = a2 + 0.5 * sh2r * sh2r;
    if !(ss > 0.0) {
        return None;
    }
    let cos_dt = input.delta_theta().cos();
    let threshold = 2.0 * sh2r * sh2r * a2 / ss;
    let positive = a2 * (sh2r * cos_dt + ch2r) + sh_r * sh_r;
    let scale = 1.0 + a2 * (sh2r * cos_dt.abs() + ch2r) + sh_r * sh_r + threshold;
    Some(KappaParts {
        positive,
        threshold,
        scale,
    })
}

/// Reduced Fisher information for coherent plus squeezed vacuum input.
pub fn fisher_coh_sqz(bs: &BeamSplitter, input: &CoherentSqueezedVacuum) -> Result<f64> {
    coh_sqz_parts(input)
        .map(|p| p.fisher(bs))
        .ok_or(Error::NoInformation)
}

pub fn fisher_matrix_sqzcoh_sqz(
    bs: &BeamSplitter,
    input: &SqueezedCoherentSqueezedVacuum,
) -> FisherMatrix {
    let t = SqzCohTerms::new(input);
    let tr = bs.tr_abs();
    let imbalance = bs.imbalance();
    let ss = t.sum_block();
    let sd = imbalance * (t.half_sq_r - t.half_sq_z - t.coherent);
    let dd = imbalance * imbalance * ss + 4.0 * tr * tr * (t.arm_term + t.cross_squeeze);
    FisherMatrix::symmetric(ss, sd, dd)
}

pub(crate) fn sqzcoh_sqz_parts(input: &SqueezedCoherentSqueezedVacuum) -> Option<KappaParts> {
    let t = SqzCohTerms::new(input);
    let ss = t.sum_block();
    if !(ss > 0.0) {
        return None;
    }
    let threshold = 2.0 * t.half_sq_r * (2.0 * t.half_sq_z + 2.0 * t.coherent) / ss;
    let positive = t.arm_term + t.cross_squeeze;
    let scale = 1.0 + t.arm_scale + t.cross_squeeze.abs() + threshold;
    Some(KappaParts {
        positive,
        threshold,
        scale,
    })
}

/// Reduced Fisher information for squeezed-coherent plus squeezed vacuum input.
pub fn fisher_sqzcoh_sqz(bs: &BeamSplitter, input: &SqueezedCoherentSqueezedVacuum) -> Result<f64> {
    sqzcoh_sqz_parts(input)
        .map(|p| p.fisher(bs))
        .ok_or(Error::NoInformation)
}

/// Intermediate quantities shared by the scenario-3 matrix elements.
struct SqzCohTerms {
    /// `sinh²(2r)/2`
    half_sq_r: f64,
    /// `sinh²(2z)/2`
    half_sq_z: f64,
    /// `|α|²(cosh 2z - sinh 2z cos Δφ)`, the coherent part of Var(n₁)
    coherent: f64,
    /// `|α|²(cosh 2r + sinh 2r cos Δθ) + sinh² r + sinh² z`
    arm_term: f64,
    arm_scale: f64,
    /// `2 sinh r sinh z (sinh r sinh z - cosh r cosh z cos(φ - θ))`
    cross_squeeze: f64,
}

impl SqzCohTerms {
    fn new(input: &SqueezedCoherentSqueezedVacuum) -> Self {
        let a2 = input.alpha.intensity();
        let (r, z) = (input.xi.r, input.zeta.r);
        let (sh2r, ch2r) = ((2.0 * r).sinh(), (2.0 * r).cosh());
        let (sh2z, ch2z) = ((2.0 * z).sinh(), (2.0 * z).cosh());
        let (sh_r, ch_r, sh_z, ch_z) = (r.sinh(), r.cosh(), z.sinh(), z.cosh());
        let cos_dt = input.delta_theta().cos();
        let cos_dp = input.delta_phi().cos();
        let sq = sh_r * sh_r + sh_z * sh_z;
        Self {
            half_sq_r: 0.5 * sh2r * sh2r,
            half_sq_z: 0.5 * sh2z * sh2z,
            coherent: a2 * (ch2z - sh2z * cos_dp),
            arm_term: a2 * (ch2r + sh2r * cos_dt) + sq,
            arm_scale: a2 * (ch2r + sh2r * cos_dt.abs()) + sq,
            cross_squeeze: 2.0
                * sh_r
                * sh_z
                * (sh_r * sh_z - ch_r * ch_z * input.squeeze_mismatch().cos()),
        }
    }

    fn sum_block(&self) -> f64 {
        self.half_sq_r + self.half_sq_z + self.coherent
    }
}

pub fn fisher_matrix(bs: &BeamSplitter, input: &InputScenario) -> FisherMatrix {
    match input {
        InputScenario::DualCoherent(s) => fisher_matrix_dual_coherent(bs, s),
        InputScenario::CoherentSqueezedVacuum(s) => fisher_matrix_coh_sqz(bs, s),
        InputScenario::SqueezedCoherentSqueezedVacuum(s) => fisher_matrix_sqzcoh_sqz(bs, s),
    }
}

pub fn fisher(bs: &BeamSplitter, input: &InputScenario) -> Result<f64> {
    match input {
        InputScenario::DualCoherent(s) => fisher_dual_coherent(bs, s),
        InputScenario::CoherentSqueezedVacuum(s) => fisher_coh_sqz(bs, s),
        InputScenario::SqueezedCoherentSqueezedVacuum(s) => fisher_sqzcoh_sqz(bs, s),
    }
}

/// Mean total photon number, conserved by the splitter.
pub fn mean_photon_number(input: &InputScenario) -> f64 {
    match input {
        InputScenario::DualCoherent(s) => s.alpha.intensity() + s.beta.intensity(),
        InputScenario::CoherentSqueezedVacuum(s) => {
            let sh = s.xi.r.sinh();
            s.alpha.intensity() + sh * sh
        }
        InputScenario::SqueezedCoherentSqueezedVacuum(s) => {
            let (sr, sz) = (s.xi.r.sinh(), s.zeta.r.sinh());
            s.alpha.intensity() + sr * sr + sz * sz
        }
    }
}

#[cfg(test)]
mod tests {
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, FRAC_PI_6, PI};

    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    use super::*;
    use crate::model::{reduce_fisher, CoherentAmplitude, SqueezeParam};

    fn coh(m: f64, p: f64) -> CoherentAmplitude {
        CoherentAmplitude::new(m, p).unwrap()
    }

    fn sq(r: f64, a: f64) -> SqueezeParam {
        SqueezeParam::new(r, a).unwrap()
    }

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / a.abs().max(b.abs()).max(1e-300)
    }

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * a.abs().max(b.abs()).max(1.0)
    }

    /// Reduced information for two coherent inputs in the determinant form
    /// `4|Rα+Tβ|²|Tα+Rβ|²/(|α|²+|β|²)`.
    fn dual_compact(bs: &BeamSplitter, d: &DualCoherent) -> f64 {
        let (t, r) = (bs.t(), bs.r());
        let (a, b) = (d.alpha.to_complex(), d.beta.to_complex());
        4.0 * (r * a + t * b).norm_sqr() * (t * a + r * b).norm_sqr()
            / (d.alpha.intensity() + d.beta.intensity())
    }

    /// Reduced information for coherent plus squeezed vacuum written as the
    /// direct `(|T|²-|R|²)²` expansion of the Schur complement.
    fn coh_sqz_direct(bs: &BeamSplitter, s: &CoherentSqueezedVacuum) -> f64 {
        let a2 = s.alpha.intensity();
        let r = s.xi.r;
        let sh2 = (2.0 * r).sinh();
        let im = bs.t_squared() - bs.r_squared();
        let tr = bs.tr_abs();
        2.0 * im * im * sh2 * sh2 * a2 / (a2 + sh2 * sh2 / 2.0)
            + 4.0 * tr * tr * (a2 * (sh2 * s.delta_theta().cos() + (2.0 * r).cosh()) + r.sinh().powi(2))
    }

    fn sqzcoh_sqz_direct(bs: &BeamSplitter, s: &SqueezedCoherentSqueezedVacuum) -> f64 {
        let a2 = s.alpha.intensity();
        let (r, z) = (s.xi.r, s.zeta.r);
        let im = bs.t_squared() - bs.r_squared();
        let tr = bs.tr_abs();
        let (sr, cr, sz, cz) = (r.sinh(), r.cosh(), z.sinh(), z.cosh());
        let q = (2.0 * z).cosh() - (2.0 * z).sinh() * s.delta_phi().cos();
        4.0 * tr * tr * (a2 * ((2.0 * r).cosh() + (2.0 * r).sinh() * s.delta_theta().cos()) + sr * sr + sz * sz)
            + 8.0 * tr * tr * sr * sz * (sr * sz - cr * cz * (s.zeta.angle - s.xi.angle).cos())
            + im * im * (2.0 * r).sinh().powi(2) * ((2.0 * z).sinh().powi(2) + 2.0 * a2 * q)
                / ((2.0 * r).sinh().powi(2) / 2.0 + (2.0 * z).sinh().powi(2) / 2.0 + a2 * q)
    }

    #[test]
    fn dual_matrix_examples() {
        let bs = BeamSplitter::balanced();
        let m = fisher_matrix_dual_coherent(&bs, &DualCoherent::new(coh(10.0, 0.0), coh(9.9, 0.0)));
        assert!(close(m.ss, 198.01, 1e-12) && close(m.dd, 198.01, 1e-12));
        assert!(m.sd.abs() < 1e-12 && m.sd == m.ds);

        for tau in [0.0, 0.3, 1.0, FRAC_PI_2] {
            let bs = BeamSplitter::new(tau).unwrap();
            let m = fisher_matrix_dual_coherent(&bs, &DualCoherent::new(coh(1.0, 0.3), CoherentAmplitude::vacuum()));
            assert!(close(m.ss, 1.0, 1e-15) && close(m.dd, 1.0, 1e-15));
            assert!((m.sd - (bs.r_squared() - bs.t_squared())).abs() < 1e-15);
        }

        let m = fisher_matrix_dual_coherent(&bs, &DualCoherent::new(CoherentAmplitude::vacuum(), CoherentAmplitude::vacuum()));
        assert_eq!(m.elements().map(f64::abs), [0.0; 4]);
    }

    #[test]
    fn dual_fisher_examples() {
        let bs = BeamSplitter::balanced();
        let f = fisher_dual_coherent(&bs, &DualCoherent::new(coh(10.0, 0.0), coh(9.9, 0.0))).unwrap();
        assert!(close(f, 198.01, 1e-12));

        let f = fisher_dual_coherent(&BeamSplitter::new(0.0).unwrap(), &DualCoherent::new(coh(1.0, 0.0), CoherentAmplitude::vacuum())).unwrap();
        assert!(f.abs() < 1e-15);

        let bs = BeamSplitter::from_t_squared(0.1).unwrap();
        let f = fisher_dual_coherent(&bs, &DualCoherent::new(coh(10.0, FRAC_PI_2), coh(5.0, 0.0))).unwrap();
        assert!(close(f, 125.0, 1e-12), "{f}");

        assert_eq!(
            fisher_dual_coherent(&bs, &DualCoherent::new(CoherentAmplitude::vacuum(), CoherentAmplitude::vacuum())),
            Err(Error::NoInformation)
        );
    }

    #[test]
    fn dual_balanced_examples() {
        for dt in [0.0, 0.4, 2.0] {
            let f = fisher_dual_coherent_balanced(&DualCoherent::new(coh(10.0, dt), CoherentAmplitude::vacuum())).unwrap();
            assert!(close(f, 100.0, 1e-14));
        }
        let f = fisher_dual_coherent_balanced(&DualCoherent::new(coh(10.0, 0.0), coh(9.9, 0.0))).unwrap();
        assert!(close(f, 198.01, 1e-14));
        let f = fisher_dual_coherent_balanced(&DualCoherent::new(coh(10.0, FRAC_PI_2), coh(10.0, 0.0))).unwrap();
        assert!(f.abs() < 1e-12);
    }

    #[test]
    fn dual_balanced_matches_general() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..1000 {
            let d = DualCoherent::new(coh(rng.gen_range(0.1..5.0), rng.gen_range(-PI..PI)), coh(rng.gen_range(0.0..5.0), rng.gen_range(-PI..PI)));
            let a = fisher_dual_coherent(&BeamSplitter::balanced(), &d).unwrap();
            let b = fisher_dual_coherent_balanced(&d).unwrap();
            assert!(close(a, b, 1e-12));
        }
    }

    #[test]
    fn dual_compact_form_equality() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..10_000 {
            let bs = BeamSplitter::new(rng.gen_range(0.0..FRAC_PI_2)).unwrap();
            let d = DualCoherent::new(
                coh(rng.gen_range(0.05..10.0), rng.gen_range(-PI..PI)),
                coh(rng.gen_range(0.0..10.0), rng.gen_range(-PI..PI)),
            );
            let a = fisher_dual_coherent(&bs, &d).unwrap();
            let b = dual_compact(&bs, &d);
            // Both forms lose absolute precision near F = 0; compare on the
            // scale of the total intensity.
            let scale = d.alpha.intensity() + d.beta.intensity();
            assert!((a - b).abs() <= 1e-12 * scale.max(a.abs()), "{a} vs {b}");
            if b > 1e-6 * scale {
                assert!(rel(a, b) < 1e-10);
            }
        }
    }

    #[test]
    fn dual_input_swap_symmetry() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for _ in 0..2000 {
            let tau = rng.gen_range(0.0..FRAC_PI_2);
            let (a, b, dt) = (rng.gen_range(0.1..5.0), rng.gen_range(0.1..5.0), rng.gen_range(-PI..PI));
            let f = fisher_dual_coherent(&BeamSplitter::new(tau).unwrap(), &DualCoherent::new(coh(a, dt), coh(b, 0.0))).unwrap();
            let g = fisher_dual_coherent(&BeamSplitter::new(FRAC_PI_2 - tau).unwrap(), &DualCoherent::new(coh(b, dt), coh(a, 0.0))).unwrap();
            assert!((f - g).abs() <= 1e-12 * (a * a + b * b));
        }
        // alpha = 0 falls back onto the swapped evaluation
        let bs = BeamSplitter::new(0.4).unwrap();
        let f = fisher_dual_coherent(&bs, &DualCoherent::new(CoherentAmplitude::vacuum(), coh(2.0, 0.0))).unwrap();
        assert!(close(f, 4.0 * 4.0 * bs.tr_abs().powi(2), 1e-14));
        assert!(close(f, dual_compact(&bs, &DualCoherent::new(CoherentAmplitude::vacuum(), coh(2.0, 0.0))), 1e-14));
    }

    #[test]
    fn coh_sqz_matrix_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..200 {
            let bs = BeamSplitter::new(rng.gen_range(0.0..FRAC_PI_2)).unwrap();
            let alpha = coh(rng.gen_range(0.0..5.0), rng.gen_range(-PI..PI));
            let s = CoherentSqueezedVacuum::new(alpha, sq(0.0, rng.gen_range(-PI..PI)));
            let d = DualCoherent::new(alpha, CoherentAmplitude::vacuum());
            let a = fisher_matrix_coh_sqz(&bs, &s);
            let b = fisher_matrix_dual_coherent(&bs, &d);
            for (x, y) in a.elements().iter().zip(b.elements()) {
                assert!((x - y).abs() < 1e-12 * (1.0 + alpha.intensity()));
            }
            let bal = fisher_matrix_coh_sqz(&BeamSplitter::balanced(), &CoherentSqueezedVacuum::new(alpha, sq(rng.gen_range(0.0..2.0), 0.3)));
            assert!(bal.sd.abs() < 1e-12 * bal.ss && bal.sd == bal.ds);
        }

        // oracle values at Fock cutoff 60 (two-mode generator covariances)
        let m = fisher_matrix_coh_sqz(&BeamSplitter::new(FRAC_PI_6).unwrap(), &CoherentSqueezedVacuum::new(coh(1.0, 0.0), sq(0.5, 0.0)));
        assert!(rel(m.ss, 1.6905489227709085) < 1e-9);
        assert!(rel(m.sd, -0.15472553861454663) < 1e-9);
        assert!(rel(m.dd, 2.6650038400927274) < 1e-9);
    }

    #[test]
    fn coh_sqz_fisher_examples() {
        let bs = BeamSplitter::balanced();
        let f = fisher_coh_sqz(&bs, &CoherentSqueezedVacuum::new(coh(10.0, 0.0), sq(2.3, 0.0))).unwrap();
        assert!((f - 9972.805156062797).abs() < 1e-8, "{f}");
        assert!((f - 9972.81).abs() < 0.01);

        for a in [0.5, 3.0, 10.0] {
            let f = fisher_coh_sqz(&bs, &CoherentSqueezedVacuum::new(coh(a, 0.7), sq(0.0, 0.2))).unwrap();
            assert!(close(f, a * a, 1e-13));
        }

        let f = fisher_coh_sqz(&BeamSplitter::new(0.0).unwrap(), &CoherentSqueezedVacuum::new(coh(1.0, 0.0), sq(0.5, 0.0))).unwrap();
        assert!((f - 1.6339046175346597).abs() < 1e-13);
        assert!((f - 1.63390).abs() < 1e-5);

        assert_eq!(
            fisher_coh_sqz(&bs, &CoherentSqueezedVacuum::new(CoherentAmplitude::vacuum(), SqueezeParam::none())),
            Err(Error::NoInformation)
        );
    }

    #[test]
    fn coh_sqz_kappa_route_matches_direct() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..5000 {
            let bs = BeamSplitter::new(rng.gen_range(0.0..FRAC_PI_2)).unwrap();
            let s = CoherentSqueezedVacuum::new(coh(rng.gen_range(0.0..10.0), rng.gen_range(-PI..PI)), sq(rng.gen_range(0.01..3.0), rng.gen_range(-PI..PI)));
            let a = fisher_coh_sqz(&bs, &s).unwrap();
            let b = coh_sqz_direct(&bs, &s);
            let scale = coh_sqz_parts(&s).unwrap().scale;
            assert!((a - b).abs() <= 1e-12 * scale, "{a} vs {b}");
        }
    }

    #[test]
    fn sqzcoh_matrix_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..200 {
            let bs = BeamSplitter::new(rng.gen_range(0.0..FRAC_PI_2)).unwrap();
            let s3 = SqueezedCoherentSqueezedVacuum::new(
                coh(rng.gen_range(0.0..5.0), rng.gen_range(-PI..PI)),
                sq(0.0, rng.gen_range(-PI..PI)),
                sq(rng.gen_range(0.0..2.0), rng.gen_range(-PI..PI)),
            );
            let a = fisher_matrix_sqzcoh_sqz(&bs, &s3);
            let b = fisher_matrix_coh_sqz(&bs, &s3.without_port1_squeezing());
            for (x, y) in a.elements().iter().zip(b.elements()) {
                assert!((x - y).abs() < 1e-12 * (1.0 + x.abs()));
            }
            let bal = fisher_matrix_sqzcoh_sqz(&BeamSplitter::balanced(), &SqueezedCoherentSqueezedVacuum::new(coh(2.0, 0.1), sq(0.7, 0.4), sq(0.3, 1.0)));
            assert!(bal.sd.abs() < 1e-12 * bal.ss);
        }

        let m = fisher_matrix_sqzcoh_sqz(
            &BeamSplitter::new(PI / 5.0).unwrap(),
            &SqueezedCoherentSqueezedVacuum::new(coh(1.0, 0.4), sq(0.3, 1.1), sq(0.3, 0.2)),
        );
        assert!(rel(m.ss, 0.9825746039457139) < 1e-9);
        assert!(rel(m.sd, -0.17837907741651082) < 1e-9);
        assert!(rel(m.dd, 1.7107306149385817) < 1e-9);
    }

    #[test]
    fn sqzcoh_fisher_examples() {
        // phase matched: Δθ = 0, φ - θ = π, 2θ_α - φ = π
        let s3 = SqueezedCoherentSqueezedVacuum::new(coh(10.0, 0.0), sq(2.3, PI), sq(2.3, 0.0));
        let f = fisher_sqzcoh_sqz(&BeamSplitter::balanced(), &s3).unwrap();
        assert!(rel(f, 12422.213854139205) < 1e-12, "{f}");
        assert!((f - 12422.2).abs() < 0.05);

        // all angles zero: balanced value with cos(φ - θ) = 1
        let s3 = SqueezedCoherentSqueezedVacuum::new(coh(10.0, 0.0), sq(2.3, 0.0), sq(2.3, 0.0));
        let f = fisher_sqzcoh_sqz(&BeamSplitter::balanced(), &s3).unwrap();
        let (sh, ch) = (2.3f64.sinh(), 2.3f64.cosh());
        let balanced = 100.0 * ((4.6f64).cosh() + (4.6f64).sinh()) + 2.0 * sh * sh + 2.0 * sh * sh * (sh * sh - ch * ch);
        assert!(rel(f, balanced) < 1e-12);

        let mut rng = ChaCha8Rng::seed_from_u64(6);
        for _ in 0..200 {
            let bs = BeamSplitter::new(rng.gen_range(0.0..FRAC_PI_2)).unwrap();
            let s3 = SqueezedCoherentSqueezedVacuum::new(coh(rng.gen_range(0.1..5.0), rng.gen_range(-PI..PI)), SqueezeParam::none(), sq(rng.gen_range(0.0..2.0), rng.gen_range(-PI..PI)));
            let a = fisher_sqzcoh_sqz(&bs, &s3).unwrap();
            let b = fisher_coh_sqz(&bs, &s3.without_port1_squeezing()).unwrap();
            assert!(a == b || rel(a, b) < 1e-14);
        }

        let vac = SqueezedCoherentSqueezedVacuum::new(CoherentAmplitude::vacuum(), SqueezeParam::none(), SqueezeParam::none());
        assert_eq!(fisher_sqzcoh_sqz(&BeamSplitter::balanced(), &vac), Err(Error::NoInformation));
    }

    #[test]
    fn sqzcoh_kappa_route_matches_direct() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..5000 {
            let bs = BeamSplitter::new(rng.gen_range(0.0..FRAC_PI_2)).unwrap();
            let s3 = SqueezedCoherentSqueezedVacuum::new(
                coh(rng.gen_range(0.0..10.0), rng.gen_range(-PI..PI)),
                sq(rng.gen_range(0.0..2.5), rng.gen_range(-PI..PI)),
                sq(rng.gen_range(0.01..2.5), rng.gen_range(-PI..PI)),
            );
            let a = fisher_sqzcoh_sqz(&bs, &s3).unwrap();
            let b = sqzcoh_sqz_direct(&bs, &s3);
            let scale = sqzcoh_sqz_parts(&s3).unwrap().scale;
            assert!((a - b).abs() <= 1e-12 * scale, "{a} vs {b}");
        }
        // balanced reduces to the phase-only expression
        let s3 = SqueezedCoherentSqueezedVacuum::new(coh(10.0, 0.2), sq(2.3, 0.9), sq(2.3, -0.4));
        let f = fisher_sqzcoh_sqz(&BeamSplitter::balanced(), &s3).unwrap();
        assert!(rel(f, fisher_matrix_sqzcoh_sqz(&BeamSplitter::balanced(), &s3).dd) < 1e-12);
    }

    #[test]
    fn reduction_consistency_all_scenarios() {
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        for _ in 0..3000 {
            let bs = BeamSplitter::new(rng.gen_range(0.0..FRAC_PI_2)).unwrap();
            let alpha = coh(rng.gen_range(0.1..10.0), rng.gen_range(-PI..PI));
            let inputs: [InputScenario; 3] = [
                DualCoherent::new(alpha, coh(rng.gen_range(0.0..10.0), rng.gen_range(-PI..PI))).into(),
                CoherentSqueezedVacuum::new(alpha, sq(rng.gen_range(0.0..2.5), rng.gen_range(-PI..PI))).into(),
                SqueezedCoherentSqueezedVacuum::new(alpha, sq(rng.gen_range(0.0..2.5), rng.gen_range(-PI..PI)), sq(rng.gen_range(0.0..2.5), rng.gen_range(-PI..PI))).into(),
            ];
            for input in inputs {
                let m = fisher_matrix(&bs, &input);
                assert!(m.is_positive_semidefinite(1e-9 * m.ss));
                let a = reduce_fisher(&m).unwrap();
                let b = fisher(&bs, &input).unwrap();
                assert!((a - b).abs() <= 1e-12 * m.ss.max(m.dd), "{input:?}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn dual_balanced_decoupling_condition() {
        let bs = BeamSplitter::balanced();
        // ϖ = 1: sd vanishes only for sin Δθ = 0 at the balanced point
        let m = fisher_matrix_dual_coherent(&bs, &DualCoherent::new(coh(3.0, 0.0), coh(3.0, 0.0)));
        assert!(m.sd.abs() < 1e-13);
        let m = fisher_matrix_dual_coherent(&bs, &DualCoherent::new(coh(3.0, 0.7), coh(3.0, 0.0)));
        assert!((m.sd - -2.0 * 9.0 * 0.7f64.sin()).abs() < 1e-12);
        // ϖ ≠ 1 with Δθ = π also decouples at balance
        let m = fisher_matrix_dual_coherent(&bs, &DualCoherent::new(coh(3.0, PI), coh(1.0, 0.0)));
        assert!(m.sd.abs() < 1e-12);
        let m = fisher_matrix_dual_coherent(&bs, &DualCoherent::new(coh(3.0, FRAC_PI_4), coh(1.0, 0.0)));
        assert!(m.sd.abs() > 1.0);
    }

    #[test]
    fn mean_photon_examples() {
        let n = mean_photon_number(&CoherentSqueezedVacuum::new(coh(10.0, 0.0), sq(2.3, 0.0)).into());
        assert!((n - 124.3735918694196).abs() < 1e-10 && (n - 124.37).abs() < 0.01);
        let n = mean_photon_number(&SqueezedCoherentSqueezedVacuum::new(coh(10.0, 0.0), sq(2.3, 0.0), sq(2.3, 0.0)).into());
        assert!((n - 148.7471837388392).abs() < 1e-10 && (n - 148.75).abs() < 0.01);
        let n = mean_photon_number(&DualCoherent::new(CoherentAmplitude::vacuum(), CoherentAmplitude::vacuum()).into());
        assert_eq!(n, 0.0);
    }
}
