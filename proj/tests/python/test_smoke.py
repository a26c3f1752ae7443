import json
import math

import numpy as np
import pytest

import swanson2d as s


def test_special_functions():
    assert s.hermite_eval(2, 1 + 1j) == pytest.approx(-2 + 8j)
    assert s.legendre_eval(2, 2.0) == pytest.approx(5.5)
    nodes, weights = s.make_rule("gauss_hermite", 2)
    assert nodes == pytest.approx([-1 / math.sqrt(2), 1 / math.sqrt(2)])
    assert sum(weights) == pytest.approx(math.sqrt(math.pi))
    with pytest.raises(ValueError):
        s.make_rule("simpson", 4)


def test_params_domain():
    p = s.ModelParams(0.3, 0.5)
    assert p.theta == 0.5
    assert p.energy_quantum == pytest.approx(1 / math.cos(0.6))
    with pytest.raises(ValueError):
        s.ModelParams(0.8, 0.0)


def test_matrices_are_numpy():
    h = s.hamiltonian_matrix(s.ModelParams(math.pi / 6, 0.5), 2)
    assert isinstance(h, np.ndarray)
    assert h.shape == (9, 9)
    assert np.allclose(np.diag(h).real, [2, 4, 6, 4, 6, 8, 6, 8, 10])
    assert np.count_nonzero(h - np.diag(np.diag(h))) == 0
    lad = s.ladder_matrices(3)
    assert set(lad) == {"A1", "A2", "B1", "B2"}
    assert s.commutator_defect(10) < 1e-12
    u, v, warn = s.displacement_matrix(1.0, 0.0, 40)
    assert u[0, 0] == pytest.approx(math.exp(-0.5))
    assert not warn
    assert s.bch_defect(1.0, 0.5, 40) < 1e-8


def test_fields_and_norms():
    p = s.ModelParams(math.pi / 6, 0.5)
    assert s.eval_phi(p, (0, 0), 0, 0) == pytest.approx(1 / math.sqrt(math.pi))
    assert s.norm_closed_form(p, (1, 1)) == pytest.approx(8.0)
    assert s.norm_quadrature(p, (1, 1)) == pytest.approx(8.0, rel=1e-10)
    assert s.eigen_residual_fd(p, (0, 0)) < 1e-4
    gram = s.gram_biorthogonality(s.ModelParams(0.3, 0.5), 6)
    assert gram["max_offdiag"] < 1e-8
    assert s.growth_ratio(math.pi / 6) == pytest.approx(math.sqrt(2 + math.sqrt(3)))


def test_decay_guard_raises_domain_error():
    with pytest.raises(s.DomainError, match="half-width"):
        s.eigen_residual_fd(s.ModelParams(0.7, 0.5), (0, 0))


def test_bicoherent():
    p = s.ModelParams(0.3, 0.5)
    value, tail = s.normalization(1.0, 0.0, 60)
    assert value == pytest.approx(math.exp(-0.5), abs=1e-12)
    assert s.coherent_check(p, 1.0, 0.5) == pytest.approx(1.0, abs=1e-8)
    for op in ("A1", "A2", "B1dag", "B2dag"):
        assert s.coherent_eigen_residual(op, p, 1.0, 0.5) < 1e-6
    with pytest.raises(s.TruncationError):
        s.coherent_check(p, 6.0, 0.0, 10)
    assert s.moment_defect(15) < 1e-10
    d, sd = s.resolution_residual(p, (0, 0), (1, 2))
    assert abs(d) < 1e-6 and abs(sd) < 1e-6


def test_metric():
    p = s.ModelParams(0.3, 0.5)
    c, spread = s.metric_constant(p)
    assert spread < 1e-10
    assert s.similarity_check(p) < 1e-9
    with pytest.raises(s.UnsupportedError):
        s.similarity_check(s.ModelParams(0.3 + 0.1j, 0.5))
    d, sd = s.quasi_basis_residual(p, (0, 0), (0, 0))
    assert abs(d) < 1e-6
    g = s.dilation_growth(p)
    assert g[-1] / g[0] > 10


def test_suites_and_reports():
    assert "algebra" in s.suites()
    rows = s.run_suite("algebra")
    assert rows and all(r["status"] in ("pass", "info") for r in rows)
    with pytest.raises(s.ConfigError):
        s.run_suite("algebra", {"nu_re": 0.8})
    with pytest.raises(s.ConfigError):
        s.run_suite("algebra", {"no_such_key": 1})
    a = s.render_report(["metric"], {"nu_re": 0.2}, "json")
    b = s.render_report(["metric"], json.dumps({"nu_re": 0.2}), "json")
    assert a == b
    doc = json.loads(a)
    assert set(doc) == {"config", "results", "versions"}
    assert doc["versions"]["swanson2d"] == s.__version__
