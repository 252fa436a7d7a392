//! Seeded comparison of the closed-form Fisher matrices against the Fock
//! oracle over a small-amplitude parameter box.

use std::f64::consts::{FRAC_PI_2, PI};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::closed_form::fisher_matrix;
use crate::error::{Error, Result};
use crate::fock::fisher_matrix_oracle;
use crate::model::{
    BeamSplitter, CoherentAmplitude, CoherentSqueezedVacuum, DualCoherent, FisherMatrix, InputScenario,
    ScenarioKind, SqueezeParam, SqueezedCoherentSqueezedVacuum,
};

pub const REL_TOL: f64 = 1e-6;
pub const ABS_TOL: f64 = 1e-8;

/// Largest box the oracle is validated for.
pub const SUPPORT: Envelope = Envelope {
    alpha_max: 1.5,
    varpi_max: 1.0,
    r_max: 0.4,
    z_max: 0.4,
    tau_min: 0.1,
    tau_max: FRAC_PI_2 - 0.1,
    cutoff: 60,
};

/// Parameter box for random draws. `|β| = ϖ|α|` with `ϖ ≤ varpi_max`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Envelope {
    pub alpha_max: f64,
    pub varpi_max: f64,
    pub r_max: f64,
    pub z_max: f64,
    pub tau_min: f64,
    pub tau_max: f64,
    pub cutoff: usize,
}

impl Default for Envelope {
    fn default() -> Self {
        SUPPORT
    }
}

impl Envelope {
    pub fn validate(&self) -> Result<()> {
        let check = |ok: bool, what: String| if ok { Ok(()) } else { Err(Error::OutsideOracleSupport(what)) };
        check(
            self.alpha_max >= 0.0 && self.alpha_max <= SUPPORT.alpha_max,
            format!("|alpha| up to {} (supported: {})", self.alpha_max, SUPPORT.alpha_max),
        )?;
        check(
            self.varpi_max >= 0.0 && self.varpi_max <= SUPPORT.varpi_max,
            format!("varpi up to {} (supported: {})", self.varpi_max, SUPPORT.varpi_max),
        )?;
        check(
            self.r_max >= 0.0 && self.r_max <= SUPPORT.r_max,
            format!("r up to {} (supported: {})", self.r_max, SUPPORT.r_max),
        )?;
        check(
            self.z_max >= 0.0 && self.z_max <= SUPPORT.z_max,
            format!("z up to {} (supported: {})", self.z_max, SUPPORT.z_max),
        )?;
        check(
            SUPPORT.tau_min <= self.tau_min && self.tau_min <= self.tau_max && self.tau_max <= SUPPORT.tau_max,
            format!(
                "tau in [{}, {}] (supported: [{}, {}])",
                self.tau_min, self.tau_max, SUPPORT.tau_min, SUPPORT.tau_max
            ),
        )?;
        check(
            self.cutoff >= SUPPORT.cutoff,
            format!("cutoff {} (at least {} needed at the box boundary)", self.cutoff, SUPPORT.cutoff),
        )
    }
}

/// Uniform in `(-π, π]`.
fn angle(rng: &mut ChaCha8Rng) -> f64 {
    -(rng.gen_range(-PI..PI))
}

fn upto(rng: &mut ChaCha8Rng, max: f64) -> f64 {
    if max > 0.0 {
        rng.gen_range(0.0..=max)
    } else {
        0.0
    }
}

/// One random `(splitter, input)` pair from the box.
pub fn draw(kind: ScenarioKind, env: &Envelope, rng: &mut ChaCha8Rng) -> Result<(BeamSplitter, InputScenario)> {
    let bs = BeamSplitter::new(rng.gen_range(env.tau_min..=env.tau_max))?;
    let alpha_mag = upto(rng, env.alpha_max);
    let alpha = CoherentAmplitude::new(alpha_mag, angle(rng))?;
    let input = match kind {
        ScenarioKind::DualCoherent => {
            let beta = CoherentAmplitude::new(alpha_mag * upto(rng, env.varpi_max), angle(rng))?;
            DualCoherent::new(alpha, beta).into()
        }
        ScenarioKind::CoherentSqueezedVacuum => {
            CoherentSqueezedVacuum::new(alpha, SqueezeParam::new(upto(rng, env.r_max), angle(rng))?).into()
        }
        ScenarioKind::SqueezedCoherentSqueezedVacuum => {
            let zeta = SqueezeParam::new(upto(rng, env.z_max), angle(rng))?;
            let xi = SqueezeParam::new(upto(rng, env.r_max), angle(rng))?;
            SqueezedCoherentSqueezedVacuum::new(alpha, zeta, xi).into()
        }
    };
    Ok((bs, input))
}

/// `|a-b| / max(|a|, |b|, ABS_TOL/REL_TOL)`; at most `REL_TOL` exactly when
/// `|a-b| ≤ max(REL_TOL·max(|a|,|b|), ABS_TOL)`.
pub fn element_error(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(ABS_TOL / REL_TOL)
}

#[derive(Debug, Clone, PartialEq)]
pub struct DrawOutcome {
    pub kind: ScenarioKind,
    pub index: usize,
    pub bs: BeamSplitter,
    pub input: InputScenario,
    pub closed: FisherMatrix,
    pub oracle: FisherMatrix,
    pub max_error: f64,
}

impl DrawOutcome {
    pub fn passed(&self) -> bool {
        self.max_error <= REL_TOL
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerificationReport {
    pub seed: u64,
    pub draws_per_scenario: usize,
    pub outcomes: Vec<DrawOutcome>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.outcomes.iter().all(DrawOutcome::passed)
    }

    pub fn worst_error(&self) -> f64 {
        self.outcomes.iter().map(|o| o.max_error).fold(0.0, f64::max)
    }

    pub fn failures(&self) -> impl Iterator<Item = &DrawOutcome> {
        self.outcomes.iter().filter(|o| !o.passed())
    }
}

fn compare(kind: ScenarioKind, index: usize, bs: BeamSplitter, input: InputScenario, cutoff: usize) -> Result<DrawOutcome> {
    let closed = fisher_matrix(&bs, &input);
    let oracle = fisher_matrix_oracle(&bs, &input, cutoff)?;
    let max_error = closed
        .elements()
        .iter()
        .zip(oracle.elements())
        .map(|(a, b)| element_error(*a, b))
        .fold(0.0, f64::max);
    Ok(DrawOutcome {
        kind,
        index,
        bs,
        input,
        closed,
        oracle,
        max_error,
    })
}

/// Draws `n_draws` points per scenario from one seeded stream, then
/// evaluates them in parallel. Outcomes are ordered by scenario and draw.
pub fn run_verify(env: &Envelope, n_draws: usize, seed: u64) -> Result<VerificationReport> {
    env.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut jobs = Vec::with_capacity(3 * n_draws);
    for kind in ScenarioKind::ALL {
        for index in 0..n_draws {
            let (bs, input) = draw(kind, env, &mut rng)?;
            jobs.push((kind, index, bs, input));
        }
    }
    let outcomes = jobs
        .into_par_iter()
        .map(|(kind, index, bs, input)| compare(kind, index, bs, input, env.cutoff))
        .collect::<Result<Vec<_>>>()?;
    Ok(VerificationReport {
        seed,
        draws_per_scenario: n_draws,
        outcomes,
    })
}
