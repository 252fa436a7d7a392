//! Truncated Fock-space oracle.
//!
//! States are built amplitude by amplitude, pushed through the splitter one
//! photon-number sector at a time, and Fisher elements are read off as
//! number-operator covariances. Nothing here reuses the closed forms.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::model::{BeamSplitter, CoherentAmplitude, FisherMatrix, InputScenario, SqueezeParam};

pub const TAIL_TOL: f64 = 1e-12;
pub const MIN_CUTOFF: usize = 8;
/// Number of top coefficients whose mass is checked against [`TAIL_TOL`].
const TAIL_WINDOW: usize = 5;

#[derive(Debug, Clone, PartialEq)]
pub struct SingleModeState {
    amplitudes: Vec<Complex64>,
}

impl SingleModeState {
    fn checked(amplitudes: Vec<Complex64>) -> Result<Self> {
        let cutoff = amplitudes.len() - 1;
        let norm: f64 = amplitudes.iter().map(|c| c.norm_sqr()).sum();
        let window: f64 = amplitudes[cutoff + 1 - TAIL_WINDOW..].iter().map(|c| c.norm_sqr()).sum();
        let tail = (1.0 - norm).max(window);
        if tail > TAIL_TOL {
            return Err(Error::CutoffTooSmall { tail, cutoff });
        }
        Ok(Self { amplitudes })
    }

    pub fn vacuum(cutoff: usize) -> Result<Self> {
        check_cutoff(cutoff)?;
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); cutoff + 1];
        amplitudes[0] = Complex64::new(1.0, 0.0);
        Ok(Self { amplitudes })
    }

    pub fn cutoff(&self) -> usize {
        self.amplitudes.len() - 1
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|c| c.norm_sqr()).sum()
    }

    pub fn mean_photon_number(&self) -> f64 {
        self.amplitudes.iter().enumerate().map(|(n, c)| n as f64 * c.norm_sqr()).sum()
    }
}

fn check_cutoff(cutoff: usize) -> Result<()> {
    if cutoff < MIN_CUTOFF {
        return Err(Error::InvalidParameter(format!("cutoff {cutoff} below minimum {MIN_CUTOFF}")));
    }
    Ok(())
}

/// `D(α)|0⟩` with `c_n = e^{-|α|²/2} αⁿ/√(n!)`.
pub fn build_coherent(alpha: CoherentAmplitude, cutoff: usize) -> Result<SingleModeState> {
    check_cutoff(cutoff)?;
    let a = alpha.to_complex();
    let mut c = Vec::with_capacity(cutoff + 1);
    c.push(Complex64::new((-alpha.intensity() / 2.0).exp(), 0.0));
    for n in 0..cutoff {
        let next = c[n] * a / ((n + 1) as f64).sqrt();
        c.push(next);
    }
    SingleModeState::checked(c)
}

/// `D(α)S(ζ)|0⟩` with `S(ζ) = exp[(ζ* a² − ζ a†²)/2]`, `ζ = z e^{iφ}`.
///
/// Three-term recurrence from `(a cosh z + a† e^{iφ} sinh z)|ψ⟩ = γ|ψ⟩`,
/// `γ = α cosh z + α* e^{iφ} sinh z`.
pub fn build_squeezed_coherent(alpha: CoherentAmplitude, zeta: SqueezeParam, cutoff: usize) -> Result<SingleModeState> {
    check_cutoff(cutoff)?;
    let a = alpha.to_complex();
    let e = Complex64::from_polar(1.0, zeta.angle);
    let (ch, sh) = (zeta.r.cosh(), zeta.r.sinh());
    let gamma = a * ch + a.conj() * e * sh;
    let c0 = (-a.norm_sqr() / 2.0 - a.conj() * a.conj() * e * zeta.r.tanh() / 2.0).exp() / ch.sqrt();
    let mut c = Vec::with_capacity(cutoff + 1);
    c.push(c0);
    c.push(gamma * c0 / ch);
    for n in 1..cutoff {
        let nf = n as f64;
        let next = (gamma * c[n] - e * sh * nf.sqrt() * c[n - 1]) / (ch * (nf + 1.0).sqrt());
        c.push(next);
    }
    SingleModeState::checked(c)
}

/// Two-mode pure state on the triangle `n_a + n_b ≤ cutoff`, stored densely
/// as a `(cutoff+1)²` row-major array (entries outside the triangle are zero).
#[derive(Debug, Clone, PartialEq)]
pub struct TwoModeState {
    cutoff: usize,
    amplitudes: Vec<Complex64>,
}

impl TwoModeState {
    pub fn from_amplitudes(cutoff: usize, amplitudes: Vec<Complex64>) -> Result<Self> {
        check_cutoff(cutoff)?;
        let dim = cutoff + 1;
        if amplitudes.len() != dim * dim {
            return Err(Error::InvalidParameter(format!(
                "expected {} amplitudes, got {}",
                dim * dim,
                amplitudes.len()
            )));
        }
        let mut s = Self { cutoff, amplitudes };
        for a in 0..dim {
            for b in dim - a..dim {
                s.amplitudes[a * dim + b] = Complex64::new(0.0, 0.0);
            }
        }
        Ok(s)
    }

    /// `in0 ⊗ in1` restricted to the triangle; the dropped mass must stay
    /// below [`TAIL_TOL`].
    pub fn product(in0: &SingleModeState, in1: &SingleModeState) -> Result<Self> {
        if in0.cutoff() != in1.cutoff() {
            return Err(Error::CutoffMismatch(in0.cutoff(), in1.cutoff()));
        }
        let cutoff = in0.cutoff();
        let dim = cutoff + 1;
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); dim * dim];
        for (a, ca) in in0.amplitudes.iter().enumerate() {
            for (b, cb) in in1.amplitudes.iter().take(dim - a).enumerate() {
                amplitudes[a * dim + b] = ca * cb;
            }
        }
        let s = Self { cutoff, amplitudes };
        let dropped = in0.norm_sqr() * in1.norm_sqr() - s.norm_sqr();
        if dropped > TAIL_TOL {
            return Err(Error::CutoffTooSmall { tail: dropped, cutoff });
        }
        Ok(s)
    }

    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    pub fn amplitude(&self, a: usize, b: usize) -> Complex64 {
        if a + b > self.cutoff {
            return Complex64::new(0.0, 0.0);
        }
        self.amplitudes[a * (self.cutoff + 1) + b]
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|c| c.norm_sqr()).sum()
    }

    fn entries(&self) -> impl Iterator<Item = (usize, usize, Complex64)> + '_ {
        let dim = self.cutoff + 1;
        (0..dim).flat_map(move |a| (0..dim - a).map(move |b| (a, b, self.amplitudes[a * dim + b])))
    }

    pub fn mean_photon_numbers(&self) -> (f64, f64) {
        self.entries().fold((0.0, 0.0), |(x, y), (a, b, c)| {
            let p = c.norm_sqr();
            (x + a as f64 * p, y + b as f64 * p)
        })
    }

    pub fn inner(&self, other: &Self) -> Result<Complex64> {
        if self.cutoff != other.cutoff {
            return Err(Error::CutoffMismatch(self.cutoff, other.cutoff));
        }
        Ok(self.amplitudes.iter().zip(&other.amplitudes).map(|(x, y)| x.conj() * y).sum())
    }

    /// Substitutes `a_in0† → t a_out0† + r a_out1†` and
    /// `a_in1† → r a_out0† + t a_out1†` in every basis ket. Total photon
    /// number is conserved, so each sector maps into itself.
    pub fn mix(&self, t: Complex64, r: Complex64) -> Self {
        let dim = self.cutoff + 1;
        let mut out = vec![Complex64::new(0.0, 0.0); dim * dim];
        // `v` holds the image of |n0, n1⟩ as a vector over a_out0 occupation
        let create = |v: &[Complex64], c0: Complex64, c1: Complex64, m: usize| -> Vec<Complex64> {
            let n = v.len() - 1;
            let norm = ((m + 1) as f64).sqrt();
            let mut w = vec![Complex64::new(0.0, 0.0); n + 2];
            for (k, x) in v.iter().enumerate() {
                w[k + 1] += c0 * x * ((k + 1) as f64).sqrt() / norm;
                w[k] += c1 * x * ((n - k + 1) as f64).sqrt() / norm;
            }
            w
        };
        let mut base = vec![Complex64::new(1.0, 0.0)];
        for n0 in 0..dim {
            if n0 > 0 {
                base = create(&base, t, r, n0 - 1);
            }
            let mut v = base.clone();
            for n1 in 0..dim - n0 {
                if n1 > 0 {
                    v = create(&v, r, t, n1 - 1);
                }
                let amp = self.amplitudes[n0 * dim + n1];
                if amp.norm_sqr() == 0.0 {
                    continue;
                }
                let n = n0 + n1;
                for (k, x) in v.iter().enumerate() {
                    out[k * dim + (n - k)] += amp * x;
                }
            }
        }
        Self {
            cutoff: self.cutoff,
            amplitudes: out,
        }
    }

    pub fn beam_splitter(&self, bs: &BeamSplitter) -> Self {
        self.mix(bs.t(), bs.r())
    }

    pub fn inverse_beam_splitter(&self, bs: &BeamSplitter) -> Self {
        self.mix(bs.t(), -bs.r())
    }
}

/// `U_BS (in0 ⊗ in1)`, with `in0` entering port 0 and `in1` port 1. Output
/// index order is (mode 2, mode 3).
pub fn apply_beam_splitter(in0: &SingleModeState, in1: &SingleModeState, bs: &BeamSplitter) -> Result<TwoModeState> {
    let input = TwoModeState::product(in0, in1)?;
    let out = input.beam_splitter(bs);
    let drift = (out.norm_sqr() - input.norm_sqr()).abs();
    if drift > 1e-10 {
        return Err(Error::CutoffTooSmall {
            tail: drift,
            cutoff: input.cutoff,
        });
    }
    Ok(out)
}

/// `4 Cov(G_i, G_j)` for `G_s = (n₂+n₃)/2`, `G_d = (n₂−n₃)/2`.
pub fn fisher_matrix_numeric(psi: &TwoModeState) -> FisherMatrix {
    let weights: Vec<(f64, f64, f64)> = psi
        .entries()
        .map(|(a, b, c)| ((a + b) as f64 / 2.0, (a as f64 - b as f64) / 2.0, c.norm_sqr()))
        .collect();
    let total: f64 = weights.iter().map(|w| w.2).sum();
    if total == 0.0 {
        return FisherMatrix::zero();
    }
    let ms = weights.iter().map(|(s, _, p)| s * p).sum::<f64>() / total;
    let md = weights.iter().map(|(_, d, p)| d * p).sum::<f64>() / total;
    let (mut ss, mut sd, mut dd) = (0.0, 0.0, 0.0);
    for (s, d, p) in &weights {
        let (x, y) = (s - ms, d - md);
        ss += p * x * x;
        sd += p * x * y;
        dd += p * y * y;
    }
    FisherMatrix::symmetric(4.0 * ss / total, 4.0 * sd / total, 4.0 * dd / total)
}

/// `N_d(φ) = i e^{iφ} a₂†a₃ − i e^{−iφ} a₃†a₂` applied to `psi`.
fn apply_nd(psi: &TwoModeState, phi: f64) -> Vec<Complex64> {
    let dim = psi.cutoff + 1;
    let up = Complex64::i() * Complex64::from_polar(1.0, phi);
    let down = -Complex64::i() * Complex64::from_polar(1.0, -phi);
    let mut out = vec![Complex64::new(0.0, 0.0); dim * dim];
    for (a, b, _) in psi.entries() {
        let mut acc = Complex64::new(0.0, 0.0);
        if a > 0 {
            acc += up * ((a * (b + 1)) as f64).sqrt() * psi.amplitude(a - 1, b + 1);
        }
        if b > 0 {
            acc += down * (((a + 1) * b) as f64).sqrt() * psi.amplitude(a + 1, b - 1);
        }
        out[a * dim + b] = acc;
    }
    out
}

/// Mean and variance of the difference photocurrent at internal phase `phi`.
pub fn observable_moments(psi: &TwoModeState, phi: f64) -> (f64, f64) {
    let total = psi.norm_sqr();
    if total == 0.0 {
        return (0.0, 0.0);
    }
    let n_psi = apply_nd(psi, phi);
    let mean = psi.amplitudes.iter().zip(&n_psi).map(|(x, y)| x.conj() * y).sum::<Complex64>().re / total;
    let second = n_psi.iter().map(|c| c.norm_sqr()).sum::<f64>() / total;
    (mean, second - mean * mean)
}

/// Port-0 and port-1 input states for a scenario.
pub fn input_states(input: &InputScenario, cutoff: usize) -> Result<(SingleModeState, SingleModeState)> {
    match input {
        InputScenario::DualCoherent(s) => Ok((build_coherent(s.beta, cutoff)?, build_coherent(s.alpha, cutoff)?)),
        InputScenario::CoherentSqueezedVacuum(s) => Ok((
            build_squeezed_coherent(CoherentAmplitude::vacuum(), s.xi, cutoff)?,
            build_coherent(s.alpha, cutoff)?,
        )),
        InputScenario::SqueezedCoherentSqueezedVacuum(s) => Ok((
            build_squeezed_coherent(CoherentAmplitude::vacuum(), s.xi, cutoff)?,
            build_squeezed_coherent(s.alpha, s.zeta, cutoff)?,
        )),
    }
}

pub fn output_state(bs: &BeamSplitter, input: &InputScenario, cutoff: usize) -> Result<TwoModeState> {
    let (in0, in1) = input_states(input, cutoff)?;
    apply_beam_splitter(&in0, &in1, bs)
}

pub fn fisher_matrix_oracle(bs: &BeamSplitter, input: &InputScenario, cutoff: usize) -> Result<FisherMatrix> {
    Ok(fisher_matrix_numeric(&output_state(bs, input, cutoff)?))
}
