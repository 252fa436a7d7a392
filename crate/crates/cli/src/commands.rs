use std::fmt::Write as _;
use std::str::FromStr;

use qfi_mzi::closed_form::{fisher, mean_photon_number};
use qfi_mzi::detection::{delta_phi_diff, phi_opt, DetectionPoint};
use qfi_mzi::optimize::{
    delta_theta_best_dual, delta_theta_lim, delta_theta_lim_approx, delta_theta_opt_dual, fisher_max_coh_sqz,
    fisher_max_dual, fisher_max_sqzcoh_sqz, kappa_coh_sqz, kappa_root_sqzcoh_sqz, kappa_sqzcoh_sqz,
    t_opt_squared_dual, KappaRegime,
};
use qfi_mzi::presets::{detection_gap_at, extrema, preset_spec, Preset};
use qfi_mzi::sweep::{run_sweep, DetectionPhase, Overlay, ScenarioParams, SweepSpec, SweepVar};
use qfi_mzi::verify::{run_verify, Envelope};
use qfi_mzi::{qcrb_sensitivity, BeamSplitter, Error, InputScenario, ScenarioKind};

use crate::settings::Settings;
use crate::{emit, CliError, OptimumArgs, ParamArgs, PresetArgs, SweepArgs, VerifyArgs};

fn detection_phase(s: &Settings, text: &str) -> Result<DetectionPhase, CliError> {
    let bad = || CliError::Usage(format!("detection: '{text}' (expected fixed:<phi>, optimal or optimal-at:<t_squared>)"));
    let (head, tail) = text.split_once(':').map_or((text, None), |(h, t)| (h, Some(t)));
    let num = |t: Option<&str>| t.and_then(|t| t.trim().parse::<f64>().ok()).ok_or_else(bad);
    match head.trim() {
        "optimal" if tail.is_none() => Ok(DetectionPhase::Optimal),
        "optimal-at" => Ok(DetectionPhase::OptimalAt { t_squared: num(tail)? }),
        "fixed" => Ok(DetectionPhase::Fixed(s.to_radians(num(tail)?))),
        _ => Err(bad()),
    }
}

/// Applies one `key=value` assignment to `p`, as used by overlays.
fn assign(s: &Settings, p: &mut ScenarioParams, key: &str, value: &str) -> Result<(), CliError> {
    let key = key.trim().to_ascii_lowercase().replace('-', "_");
    if key == "detection" {
        p.detection = Some(detection_phase(s, value)?);
        return Ok(());
    }
    if key == "scenario" {
        p.kind = ScenarioKind::from_str(value)?;
        return Ok(());
    }
    let v: f64 = value
        .trim()
        .parse()
        .map_err(|_| CliError::Usage(format!("{key}: '{value}' is not a number")))?;
    match key.as_str() {
        "alpha" => p.alpha = v,
        "beta" => p.beta = v,
        "r" => p.r = v,
        "z" => p.z = v,
        "t_squared" => p.t_squared = v,
        "theta_alpha" => p.theta_alpha = s.to_radians(v),
        "theta_beta" => p.theta_beta = s.to_radians(v),
        "theta" => p.theta = s.to_radians(v),
        "phi" => p.phi = s.to_radians(v),
        "delta_theta" => p.set_delta_theta(s.to_radians(v)),
        other => return Err(CliError::Usage(format!("unknown parameter '{other}'"))),
    }
    Ok(())
}

fn params(s: &Settings, a: &ParamArgs) -> Result<ScenarioParams, CliError> {
    let kind = s
        .text("scenario", a.scenario.as_deref())
        .ok_or_else(|| CliError::Usage("scenario: required (1, 2 or 3)".into()))?;
    let mut p = ScenarioParams::new(ScenarioKind::from_str(&kind)?);
    let set = |v: Option<f64>, slot: &mut f64| {
        if let Some(v) = v {
            *slot = v;
        }
    };
    set(s.real("alpha", a.alpha)?, &mut p.alpha);
    set(s.angle("theta_alpha", a.theta_alpha)?, &mut p.theta_alpha);
    set(s.real("beta", a.beta)?, &mut p.beta);
    set(s.angle("theta_beta", a.theta_beta)?, &mut p.theta_beta);
    set(s.real("r", a.r)?, &mut p.r);
    set(s.angle("theta", a.theta)?, &mut p.theta);
    set(s.real("z", a.z)?, &mut p.z);
    set(s.angle("phi", a.phi)?, &mut p.phi);
    set(s.real("t_squared", a.t_squared)?, &mut p.t_squared);
    if let Some(dt) = s.angle("delta_theta", a.delta_theta)? {
        p.set_delta_theta(dt);
    }
    if let Some(d) = s.text("detection", a.detection.as_deref()) {
        p.detection = Some(detection_phase(s, &d)?);
    }
    p.scenario()?;
    Ok(p)
}

fn overlay(s: &Settings, base: &ScenarioParams, text: &str) -> Result<Overlay, CliError> {
    let (label, rest) = text
        .split_once(':')
        .ok_or_else(|| CliError::Usage(format!("overlay: '{text}' (expected LABEL:key=value,...)")))?;
    let mut p = *base;
    for pair in rest.split(',').filter(|x| !x.trim().is_empty()) {
        let (k, v) = pair
            .split_once('=')
            .ok_or_else(|| CliError::Usage(format!("overlay '{label}': '{pair}' is not key=value")))?;
        assign(s, &mut p, k, v)?;
    }
    Ok(Overlay {
        label: label.trim().to_string(),
        params: p,
    })
}

pub fn sweep(s: &Settings, a: SweepArgs) -> Result<(), CliError> {
    let base = params(s, &a.params)?;
    let var = SweepVar::from_str(&s.text("var", a.var.as_deref()).ok_or_else(|| CliError::Usage("var: required".into()))?)?;
    let bound = |key: &str, flag: Option<f64>| -> Result<f64, CliError> {
        let v = s.real(key, flag)?.ok_or_else(|| CliError::Usage(format!("{key}: required")))?;
        Ok(if var.is_angle() { s.to_radians(v) } else { v })
    };
    let mut spec = SweepSpec::new(
        base,
        var,
        bound("lo", a.lo)?,
        bound("hi", a.hi)?,
        s.count("n", a.n)?.unwrap_or(101),
    );
    spec.overlays = a.overlay.iter().map(|o| overlay(s, &base, o)).collect::<Result<_, _>>()?;
    spec.output = a.output.or_else(|| s.text("output", None).map(Into::into));
    let result = run_sweep(&spec)?;
    emit(spec.output.as_deref(), &result.to_csv())
}

pub fn verify(s: &Settings, a: VerifyArgs) -> Result<(), CliError> {
    let d = Envelope::default();
    let env = Envelope {
        alpha_max: s.real("alpha_max", a.alpha_max)?.unwrap_or(d.alpha_max),
        varpi_max: s.real("varpi_max", a.varpi_max)?.unwrap_or(d.varpi_max),
        r_max: s.real("r_max", a.r_max)?.unwrap_or(d.r_max),
        z_max: s.real("z_max", a.z_max)?.unwrap_or(d.z_max),
        tau_min: s.angle("tau_min", a.tau_min)?.unwrap_or(d.tau_min),
        tau_max: s.angle("tau_max", a.tau_max)?.unwrap_or(d.tau_max),
        cutoff: s.count("cutoff", a.cutoff)?.unwrap_or(d.cutoff),
    };
    let draws = s.count("draws", a.draws)?.unwrap_or(50);
    let seed = match a.seed {
        Some(v) => v,
        None => s.count("seed", None)?.map_or(1, |v| v as u64),
    };
    let report = run_verify(&env, draws, seed)?;
    let mut out = String::from("scenario,draw,tau,max_error,status\n");
    for o in &report.outcomes {
        let _ = writeln!(
            out,
            "{},{},{:.16e},{:.3e},{}",
            o.kind.number(),
            o.index,
            o.bs.tau(),
            o.max_error,
            if o.passed() { "pass" } else { "FAIL" }
        );
    }
    let _ = writeln!(
        out,
        "# seed {seed}, {draws} draws per scenario, cutoff {}, worst error {:.3e}: {}",
        env.cutoff,
        report.worst_error(),
        if report.passed() { "pass" } else { "FAIL" }
    );
    emit(None, &out)?;
    if report.passed() {
        Ok(())
    } else {
        Err(CliError::Verification(format!(
            "{} draws exceed relative error 1e-6 (worst {:.3e})",
            report.failures().count(),
            report.worst_error()
        )))
    }
}

struct Report(String);

impl Report {
    fn line(&mut self, key: &str, value: impl std::fmt::Display) {
        let _ = writeln!(self.0, "{key}: {value}");
    }
}

fn regime_lines(r: &mut Report, regime: KappaRegime, at: &dyn Fn(f64) -> Result<f64, Error>) -> Result<(), CliError> {
    r.line("regime", regime.name());
    r.line("kappa", regime.kappa());
    match regime {
        KappaRegime::BalancedOptimal { .. } => {
            r.line("t_squared_opt", 0.5);
            r.line("fisher_at_optimum", at(0.5)?);
        }
        KappaRegime::DegenerateOptimal { .. } => {
            r.line("t_squared_opt", "0 or 1");
            r.line("fisher_at_optimum", at(0.0)?);
        }
        KappaRegime::TransmissionIndependent { .. } => {
            r.line("t_squared_opt", "any");
            r.line("fisher_at_optimum", at(0.5)?);
        }
    }
    Ok(())
}

pub fn optimum(s: &Settings, a: OptimumArgs) -> Result<(), CliError> {
    let p = params(s, &a.params)?;
    let input = p.scenario()?;
    let bs = p.beam_splitter()?;
    let free = s.text("free", a.free.as_deref());
    let mut r = Report(String::new());
    let at_t = |t2: f64| -> Result<f64, Error> { fisher(&BeamSplitter::from_t_squared(t2)?, &input) };
    r.line("scenario", p.kind.name());
    r.line("mean_photon_number", mean_photon_number(&input));
    match (&input, free.as_deref().unwrap_or("default")) {
        (InputScenario::DualCoherent(d), "default" | "t_squared") => {
            let varpi = d.varpi().ok_or_else(|| CliError::Usage("alpha must be positive".into()))?;
            let t = t_opt_squared_dual(d.delta_theta(), varpi)?;
            r.line("t_squared_opt", t.t_squared);
            if t.degenerate {
                r.line("note", "equal input powers: optimum chosen by direct evaluation");
            }
            let f = at_t(t.t_squared)?;
            r.line("fisher_at_optimum", f);
            r.line("fisher_max", fisher_max_dual(d));
            r.line("delta_phi_qcrb", qcrb_sensitivity(f)?);
        }
        (InputScenario::DualCoherent(d), "delta_theta") => {
            let varpi = d.varpi().ok_or_else(|| CliError::Usage("alpha must be positive".into()))?;
            r.line("fisher_max", fisher_max_dual(d));
            match delta_theta_opt_dual(&bs, varpi) {
                Ok(dt) => {
                    r.line("delta_theta_opt", dt);
                    r.line("delta_theta_opt_alt", std::f64::consts::PI - dt);
                    let mut q = p;
                    q.set_delta_theta(dt);
                    r.line("fisher_at_optimum", fisher(&bs, &q.scenario()?)?);
                }
                Err(Error::NoCompensatingMismatch { argument }) => {
                    r.line("no solution", format!("arcsin argument {argument} lies outside [-1, 1]"));
                    let dt = delta_theta_best_dual(&bs, varpi);
                    let mut q = p;
                    q.set_delta_theta(dt);
                    r.line("delta_theta_best", dt);
                    r.line("fisher_at_best", fisher(&bs, &q.scenario()?)?);
                }
                Err(Error::DegenerateSplitter) => r.line("no solution", "|TR| = 0, the mismatch has no effect"),
                Err(e) => return Err(e.into()),
            }
        }
        (InputScenario::DualCoherent(d), "phi_internal") => {
            let opt = phi_opt(&bs, d);
            r.line("phi_opt", opt.phi);
            if opt.sin_only {
                r.line("note", "no cos-fringe term: phi_opt set to pi/2");
            }
            let f = fisher(&bs, &input)?;
            r.line("delta_phi_qcrb", qcrb_sensitivity(f)?);
            match delta_phi_diff(&DetectionPoint::new(bs, *d, opt.phi)) {
                Ok(v) => r.line("delta_phi_diff", v),
                Err(_) => r.line("no solution", "the difference signal is flat in phi"),
            }
        }
        (InputScenario::CoherentSqueezedVacuum(c), "default" | "t_squared") => {
            regime_lines(&mut r, kappa_coh_sqz(c), &at_t)?;
            r.line("fisher_max", fisher_max_coh_sqz(c));
        }
        (InputScenario::CoherentSqueezedVacuum(c), "delta_theta") => match delta_theta_lim(c) {
            Some(lim) => {
                r.line("delta_theta_lim", lim);
                if let Some(approx) = delta_theta_lim_approx(c.alpha.magnitude, c.xi.r) {
                    r.line("delta_theta_lim_approx", approx);
                }
                let mut q = p;
                q.set_delta_theta(lim);
                let at_lim = q.scenario()?;
                r.line("fisher_at_threshold", fisher(&BeamSplitter::from_t_squared(0.0)?, &at_lim)?);
                r.line("fisher_at_threshold_balanced", fisher(&BeamSplitter::balanced(), &at_lim)?);
            }
            None => r.line("no solution", "kappa keeps one sign for every mismatch"),
        },
        (InputScenario::SqueezedCoherentSqueezedVacuum(c), "default" | "phases") => {
            let f = fisher_max_sqzcoh_sqz(c);
            let theta = 2.0 * c.alpha.phase;
            r.line("theta_opt", theta);
            r.line("phi_opt", theta + std::f64::consts::PI);
            r.line("t_squared_opt", 0.5);
            r.line("fisher_max", f);
            let mut q = p;
            q.theta = theta;
            q.phi = theta + std::f64::consts::PI;
            r.line("fisher_at_optimum", fisher(&BeamSplitter::balanced(), &q.scenario()?)?);
        }
        (InputScenario::SqueezedCoherentSqueezedVacuum(c), "t_squared") => {
            regime_lines(&mut r, kappa_sqzcoh_sqz(c), &at_t)?;
        }
        (InputScenario::SqueezedCoherentSqueezedVacuum(c), "theta") => match kappa_root_sqzcoh_sqz(c) {
            Some(root) => {
                r.line("theta_kappa_zero", root.xi.angle);
                r.line("fisher_transmission_independent", fisher(&BeamSplitter::balanced(), &root.into())?);
            }
            None => r.line("no solution", "kappa keeps one sign for every port-0 angle"),
        },
        (_, other) => {
            return Err(CliError::Usage(format!(
                "free: '{other}' is not available for scenario {}",
                p.kind.name()
            )))
        }
    }
    emit(None, &r.0)
}

pub fn preset(a: PresetArgs) -> Result<(), CliError> {
    let preset = Preset::from_str(&a.name)?;
    let spec = preset_spec(preset);
    let result = run_sweep(&spec)?;
    emit(a.output.as_deref(), &result.to_csv())?;
    for e in extrema(preset, &spec, &result)? {
        eprintln!(
            "# {}: grid max {} at {}, closed-form max {}{}: {}",
            e.label,
            e.grid_max,
            e.grid_argmax,
            e.predicted_max,
            e.predicted_argmax.map(|x| format!(" at {x}")).unwrap_or_default(),
            if e.consistent() { "consistent" } else { "MISMATCH" }
        );
    }
    if preset == Preset::Fig5 {
        if let Some(gap) = detection_gap_at(&result, 0.25) {
            eprintln!("# detection vs QCRB at t_squared = 0.25: relative gap {gap:.3e}");
        }
    }
    Ok(())
}
