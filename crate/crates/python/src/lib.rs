//! Python bindings for `qfi-mzi`.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use qfi::closed_form;
use qfi::detection::{self as det, DetectionPoint};
use qfi::fock;
use qfi::optimize;
use qfi::presets::{self, Preset};
use qfi::verify::{self as ver, Envelope};
use qfi::{
    CoherentAmplitude, CoherentSqueezedVacuum, DualCoherent, InputScenario, SqueezeParam,
    SqueezedCoherentSqueezedVacuum,
};

fn py_err(e: qfi::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn coh(magnitude: f64, phase: f64) -> PyResult<CoherentAmplitude> {
    CoherentAmplitude::new(magnitude, phase).map_err(py_err)
}

fn sq(r: f64, angle: f64) -> PyResult<SqueezeParam> {
    SqueezeParam::new(r, angle).map_err(py_err)
}

#[pyclass(name = "BeamSplitter", frozen, skip_from_py_object)]
#[derive(Clone, Copy)]
struct PyBeamSplitter(qfi::BeamSplitter);

#[pymethods]
impl PyBeamSplitter {
    #[new]
    fn new(tau: f64) -> PyResult<Self> {
        qfi::BeamSplitter::new(tau).map(Self).map_err(py_err)
    }

    #[staticmethod]
    fn from_t_squared(t_squared: f64) -> PyResult<Self> {
        qfi::BeamSplitter::from_t_squared(t_squared).map(Self).map_err(py_err)
    }

    #[staticmethod]
    fn balanced() -> Self {
        Self(qfi::BeamSplitter::balanced())
    }

    #[getter]
    fn tau(&self) -> f64 {
        self.0.tau()
    }

    #[getter]
    fn t_squared(&self) -> f64 {
        self.0.t_squared()
    }

    fn __repr__(&self) -> String {
        format!("BeamSplitter(tau={}, t_squared={})", self.0.tau(), self.0.t_squared())
    }
}

/// Two-port input state of one of the three supported families.
#[pyclass(name = "Scenario", frozen, skip_from_py_object)]
#[derive(Clone, Copy)]
struct PyScenario(InputScenario);

#[pymethods]
impl PyScenario {
    /// Coherent `alpha` in port 1, coherent `beta` in port 0.
    #[staticmethod]
    #[pyo3(signature = (alpha, beta, theta_alpha = 0.0, theta_beta = 0.0))]
    fn dual_coherent(alpha: f64, beta: f64, theta_alpha: f64, theta_beta: f64) -> PyResult<Self> {
        Ok(Self(DualCoherent::new(coh(alpha, theta_alpha)?, coh(beta, theta_beta)?).into()))
    }

    /// Coherent `alpha` in port 1, squeezed vacuum `r e^{i theta}` in port 0.
    #[staticmethod]
    #[pyo3(signature = (alpha, r, theta_alpha = 0.0, theta = 0.0))]
    fn coherent_squeezed(alpha: f64, r: f64, theta_alpha: f64, theta: f64) -> PyResult<Self> {
        Ok(Self(CoherentSqueezedVacuum::new(coh(alpha, theta_alpha)?, sq(r, theta)?).into()))
    }

    /// Squeezed coherent `D(alpha) S(z e^{i phi})` in port 1, squeezed vacuum in port 0.
    #[staticmethod]
    #[pyo3(signature = (alpha, z, r, theta_alpha = 0.0, phi = 0.0, theta = 0.0))]
    fn squeezed_coherent_squeezed(alpha: f64, z: f64, r: f64, theta_alpha: f64, phi: f64, theta: f64) -> PyResult<Self> {
        Ok(Self(
            SqueezedCoherentSqueezedVacuum::new(coh(alpha, theta_alpha)?, sq(z, phi)?, sq(r, theta)?).into(),
        ))
    }

    #[getter]
    fn kind(&self) -> &'static str {
        self.0.kind().name()
    }

    #[getter]
    fn delta_theta(&self) -> f64 {
        self.0.delta_theta()
    }

    #[getter]
    fn mean_photon_number(&self) -> f64 {
        closed_form::mean_photon_number(&self.0)
    }

    fn __repr__(&self) -> String {
        format!("Scenario({:?})", self.0)
    }
}

impl PyScenario {
    fn dual(&self) -> PyResult<DualCoherent> {
        match self.0 {
            InputScenario::DualCoherent(d) => Ok(d),
            _ => Err(PyValueError::new_err("requires a dual-coherent scenario")),
        }
    }

    fn coh_sqz(&self) -> PyResult<CoherentSqueezedVacuum> {
        match self.0 {
            InputScenario::CoherentSqueezedVacuum(s) => Ok(s),
            _ => Err(PyValueError::new_err("requires a coherent-squeezed scenario")),
        }
    }
}

#[pyclass(name = "FisherMatrix", frozen, skip_from_py_object)]
#[derive(Clone, Copy)]
struct PyFisherMatrix(qfi::FisherMatrix);

#[pymethods]
impl PyFisherMatrix {
    #[getter]
    fn ss(&self) -> f64 {
        self.0.ss
    }

    #[getter]
    fn sd(&self) -> f64 {
        self.0.sd
    }

    #[getter]
    fn ds(&self) -> f64 {
        self.0.ds
    }

    #[getter]
    fn dd(&self) -> f64 {
        self.0.dd
    }

    fn determinant(&self) -> f64 {
        self.0.determinant()
    }

    /// Single-parameter information `dd - sd ds / ss`.
    fn reduce(&self) -> PyResult<f64> {
        self.0.reduce().map_err(py_err)
    }

    fn tolist(&self) -> [f64; 4] {
        self.0.elements()
    }

    fn __repr__(&self) -> String {
        let [ss, sd, ds, dd] = self.0.elements();
        format!("FisherMatrix(ss={ss}, sd={sd}, ds={ds}, dd={dd})")
    }
}

#[pyfunction]
fn fisher_matrix(bs: &PyBeamSplitter, scenario: &PyScenario) -> PyFisherMatrix {
    PyFisherMatrix(closed_form::fisher_matrix(&bs.0, &scenario.0))
}

#[pyfunction]
fn fisher(bs: &PyBeamSplitter, scenario: &PyScenario) -> PyResult<f64> {
    closed_form::fisher(&bs.0, &scenario.0).map_err(py_err)
}

/// Fisher matrix from the truncated Fock-space state.
#[pyfunction]
#[pyo3(signature = (bs, scenario, cutoff = 60))]
fn fisher_matrix_oracle(py: Python<'_>, bs: &PyBeamSplitter, scenario: &PyScenario, cutoff: usize) -> PyResult<PyFisherMatrix> {
    let (bs, input) = (bs.0, scenario.0);
    py.detach(|| fock::fisher_matrix_oracle(&bs, &input, cutoff))
        .map(PyFisherMatrix)
        .map_err(py_err)
}

#[pyfunction]
fn qcrb_sensitivity(fisher: f64) -> PyResult<f64> {
    qfi::qcrb_sensitivity(fisher).map_err(py_err)
}

/// Largest information over the splitter (and, for dual-coherent input, the mismatch).
#[pyfunction]
fn fisher_max(scenario: &PyScenario) -> f64 {
    match &scenario.0 {
        InputScenario::DualCoherent(d) => optimize::fisher_max_dual(d),
        InputScenario::CoherentSqueezedVacuum(s) => optimize::fisher_max_coh_sqz(s),
        InputScenario::SqueezedCoherentSqueezedVacuum(s) => optimize::fisher_max_sqzcoh_sqz(s),
    }
}

/// `(regime, kappa)` for the squeezed scenarios.
#[pyfunction]
fn kappa(scenario: &PyScenario) -> PyResult<(&'static str, f64)> {
    let k = match &scenario.0 {
        InputScenario::CoherentSqueezedVacuum(s) => optimize::kappa_coh_sqz(s),
        InputScenario::SqueezedCoherentSqueezedVacuum(s) => optimize::kappa_sqzcoh_sqz(s),
        InputScenario::DualCoherent(_) => return Err(PyValueError::new_err("kappa needs squeezed input")),
    };
    Ok((k.name(), k.kappa()))
}

#[pyfunction]
fn delta_theta_opt_dual(bs: &PyBeamSplitter, varpi: f64) -> PyResult<f64> {
    optimize::delta_theta_opt_dual(&bs.0, varpi).map_err(py_err)
}

/// `(t_squared, degenerate)`.
#[pyfunction]
fn t_opt_squared_dual(delta_theta: f64, varpi: f64) -> PyResult<(f64, bool)> {
    optimize::t_opt_squared_dual(delta_theta, varpi)
        .map(|t| (t.t_squared, t.degenerate))
        .map_err(py_err)
}

/// Mismatch at which the balanced splitter stops being optimal, or `None`.
#[pyfunction]
fn delta_theta_lim(scenario: &PyScenario) -> PyResult<Option<f64>> {
    Ok(optimize::delta_theta_lim(&scenario.coh_sqz()?))
}

#[pyfunction]
fn delta_phi_diff(bs: &PyBeamSplitter, scenario: &PyScenario, phi: f64) -> PyResult<f64> {
    det::delta_phi_diff(&DetectionPoint::new(bs.0, scenario.dual()?, phi)).map_err(py_err)
}

#[pyfunction]
fn phi_opt(bs: &PyBeamSplitter, scenario: &PyScenario) -> PyResult<f64> {
    Ok(det::phi_opt(&bs.0, &scenario.dual()?).phi)
}

/// Seeded comparison of closed forms with the oracle over the supported box.
/// Returns `(passed, worst_error)`.
#[pyfunction]
#[pyo3(signature = (draws = 20, seed = 1))]
fn verify(py: Python<'_>, draws: usize, seed: u64) -> PyResult<(bool, f64)> {
    let report = py.detach(|| ver::run_verify(&Envelope::default(), draws, seed)).map_err(py_err)?;
    Ok((report.passed(), report.worst_error()))
}

/// CSV text of a named preset sweep (`fig2` ... `fig7`).
#[pyfunction]
fn preset_csv(py: Python<'_>, name: &str) -> PyResult<String> {
    let preset: Preset = name.parse().map_err(py_err)?;
    py.detach(|| {
        let spec = presets::preset_spec(preset);
        qfi::sweep::run_sweep(&spec).map(|r| r.to_csv())
    })
    .map_err(py_err)
}

#[pymodule]
fn qfi_mzi(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyBeamSplitter>()?;
    m.add_class::<PyScenario>()?;
    m.add_class::<PyFisherMatrix>()?;
    m.add_function(wrap_pyfunction!(fisher_matrix, m)?)?;
    m.add_function(wrap_pyfunction!(fisher, m)?)?;
    m.add_function(wrap_pyfunction!(fisher_matrix_oracle, m)?)?;
    m.add_function(wrap_pyfunction!(qcrb_sensitivity, m)?)?;
    m.add_function(wrap_pyfunction!(fisher_max, m)?)?;
    m.add_function(wrap_pyfunction!(kappa, m)?)?;
    m.add_function(wrap_pyfunction!(delta_theta_opt_dual, m)?)?;
    m.add_function(wrap_pyfunction!(t_opt_squared_dual, m)?)?;
    m.add_function(wrap_pyfunction!(delta_theta_lim, m)?)?;
    m.add_function(wrap_pyfunction!(delta_phi_diff, m)?)?;
    m.add_function(wrap_pyfunction!(phi_opt, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(preset_csv, m)?)?;
    Ok(())
}
