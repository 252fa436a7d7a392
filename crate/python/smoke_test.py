"""Smoke test for the qfi_mzi extension module.

Build and install first:  pip install --no-build-isolation -e .   (or: maturin develop)
"""

import math

import qfi_mzi as q


def close(a, b, tol=1e-9):
    return abs(a - b) <= tol * max(1.0, abs(a), abs(b))


def main():
    bal = q.BeamSplitter.balanced()
    assert close(bal.t_squared, 0.5)

    dual = q.Scenario.dual_coherent(10.0, 9.9)
    assert dual.kind == "dual-coherent"
    assert close(q.fisher(bal, dual), 198.01)
    assert close(q.fisher_max(dual), 198.01)
    assert close(q.qcrb_sensitivity(198.01), 1.0 / math.sqrt(198.01))

    m = q.fisher_matrix(q.BeamSplitter.from_t_squared(0.3), dual)
    assert close(m.reduce(), q.fisher(q.BeamSplitter.from_t_squared(0.3), dual))

    bs = q.BeamSplitter.from_t_squared(0.75)
    dt = q.delta_theta_opt_dual(bs, 0.5)
    assert close(dt, math.asin(-math.sqrt(3.0) / 4.0))
    try:
        q.delta_theta_opt_dual(bs, 0.2)
    except ValueError:
        pass
    else:
        raise AssertionError("expected ValueError for unreachable mismatch")

    phi = q.phi_opt(bal, dual)
    assert close(q.delta_phi_diff(bal, dual, phi), q.qcrb_sensitivity(198.01))

    sqz = q.Scenario.coherent_squeezed(10.0, 2.3)
    lim = q.delta_theta_lim(sqz)
    assert lim is not None and 0.86 * math.pi <= lim <= 0.90 * math.pi
    regime, kappa = q.kappa(sqz)
    assert regime == "balanced-optimal" and kappa > 0.0, (regime, kappa)

    small = q.Scenario.squeezed_coherent_squeezed(1.2, 0.3, 0.35, theta_alpha=0.4, phi=1.0, theta=-0.5)
    tau = q.BeamSplitter(0.6)
    closed = q.fisher_matrix(tau, small).tolist()
    oracle = q.fisher_matrix_oracle(tau, small).tolist()
    for a, b in zip(closed, oracle):
        assert abs(a - b) <= 1e-6 * max(abs(a), abs(b), 1e-2), (closed, oracle)

    passed, worst = q.verify(draws=3, seed=11)
    assert passed and worst < 1e-6

    csv = q.preset_csv("fig2")
    assert csv.splitlines()[0].startswith("overlay,t_squared [1],fisher [1]")

    print("python smoke test: ok")


if __name__ == "__main__":
    main()
