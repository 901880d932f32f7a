import os
import pathlib

import numpy as np
import pytest

import rsmkit

ROOT = pathlib.Path(os.environ.get("RSM_SOURCE_DIR", pathlib.Path(__file__).resolve().parents[2]))
FIXTURE = ROOT / "data" / "paper_model.json"


@pytest.fixture(scope="module")
def canonical():
    return rsmkit.decompose(rsmkit.load_model_file(FIXTURE))


def test_spectrum_is_symmetric(canonical):
    lam = np.asarray(canonical.eigenvalues)
    assert lam[2] == 0.0
    np.testing.assert_allclose(lam, -lam[::-1], rtol=1e-12)
    assert canonical.classification == "degenerate-mixed"
    assert canonical.null_directions == [2]


def test_matches_numpy_eigensolver(canonical):
    b = np.asarray(canonical.model.interaction)
    ref = np.sort(np.linalg.eigvalsh(b))[::-1]
    np.testing.assert_allclose(canonical.eigenvalues, ref, atol=1e-12 * abs(ref).max())


def test_frames_agree(canonical):
    rng = np.random.default_rng(3)
    for x in rng.uniform(-1e3, 1e3, size=(20, 5)):
        z = canonical.to_canonical(x)
        assert canonical.evaluate_canonical(z) == pytest.approx(canonical.model.evaluate(x), rel=1e-10)


def test_regions_and_budget(canonical):
    kinds = [r["kind"] for r in rsmkit.regions(canonical, 1e-8)]
    assert kinds.count("elliptic") == 2
    assert kinds.count("hyperbolic") == 4
    pts = rsmkit.region_points(canonical, 1, 2, 1e-8)
    assert pts.shape[1] == 2
    rep = rsmkit.magnitude_report(canonical, 1e-8)
    assert rep["null"][0]["free"] is True
    trade = rsmkit.trade(canonical, 1e-8)
    assert trade["ratio"] == pytest.approx(2.8366, rel=1e-4)


def test_jacobi_and_transforms():
    es = rsmkit.jacobi_eigen(np.array([[2.0, 1.0], [1.0, 2.0]]))
    np.testing.assert_allclose(es.eigenvalues, [3.0, 1.0])
    assert rsmkit.box_cox([4.0], -0.5) == [0.5]
    assert 0.0 <= rsmkit.normality_test(list(np.linspace(1, 2, 20)))["p_value"] <= 1.0


def test_errors_are_raised(canonical):
    with pytest.raises(rsmkit.Error):
        rsmkit.magnitude_report(canonical, -1.0)
    with pytest.raises(rsmkit.Error):
        rsmkit.load_model("{}")
