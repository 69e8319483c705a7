import numpy as np
import pytest

import uniprobe


def test_swapped_pair_closed_forms():
    u1, u2 = uniprobe.swapped_pair(3)
    assert uniprobe.d_product(u1, u2) == pytest.approx(1.0, abs=1e-12)
    assert uniprobe.d_maxent(u1, u2) == pytest.approx(0.5 + np.sqrt(2) / 3, abs=1e-12)
    probe = uniprobe.optimal_entangled_probe(u1, u2)
    assert uniprobe.d_with_probe(u1, u2, probe, 3) == pytest.approx(1.0, abs=1e-9)


def test_pair_report_on_pauli_pair():
    x = np.array([[0, 1], [1, 0]], dtype=complex)
    r = uniprobe.pair_report(np.eye(2, dtype=complex), x)
    assert r["dME"] == pytest.approx(1.0)
    assert r["hull"]["min_norm"] < 1e-9


def test_hull_of_an_arc():
    pts = [np.exp(1j * t) for t in (0.0, 0.5)]
    h = uniprobe.min_hull_norm(pts)
    assert h["min_norm"] == pytest.approx(np.cos(0.25), abs=1e-12)
    assert sum(h["weights"]) == pytest.approx(1.0)


def test_helstrom_by_solver():
    a = np.diag([1.0, 0.0]).astype(complex)
    b = 0.5 * np.ones((2, 2), dtype=complex)
    out = uniprobe.discriminate([a, b], [0.5, 0.5])
    assert out["value"] == pytest.approx(0.5 * (1 + np.sqrt(0.5)), abs=1e-8)
    assert out["converged"]
    assert sum(out["povm"]) == pytest.approx(np.eye(2), abs=1e-9)


def test_v_family_maxent_value():
    us = uniprobe.v_family(3)
    out = uniprobe.evaluate(us, uniprobe.probe_max_entangled(3), 3, 3)
    assert out["value"] == pytest.approx(0.9604918, abs=1e-6)
    perfect = uniprobe.evaluate(us, uniprobe.probe_v_family(3), 3, 3)
    assert perfect["value"] == pytest.approx(1.0, abs=1e-6)


def test_optimize_product_class_on_w_family():
    out = uniprobe.optimize(uniprobe.w_family(3), "product", restarts=3)
    assert out["value"] == pytest.approx(0.5, abs=1e-4)
    assert out["class"] == "product"


def test_errors_surface_as_value_error():
    with pytest.raises(ValueError):
        uniprobe.d_product(np.eye(2, dtype=complex), 2 * np.eye(2, dtype=complex))
    with pytest.raises(uniprobe.UniprobeError):
        uniprobe.v_family(1)


def test_self_checks_pass():
    results = uniprobe.run_checks(["linalg", "hull"])
    assert results and all(r["passed"] or r["advisory"] for r in results)
