import json
import math
import os
from pathlib import Path

import numpy as np
import pytest

import bqlogdet

SCHEMA_DIR = Path(os.environ.get("BQLOGDET_SCHEMA_DIR", Path(__file__).resolve().parents[2] / "schema"))


def spd(n, seed):
    rng = np.random.default_rng(seed)
    q, _ = np.linalg.qr(rng.standard_normal((n, n)))
    eig = rng.uniform(0.1, 1.0, n)
    return (q * eig) @ q.T, eig


def test_exact_matches_numpy():
    a, eig = spd(40, 0)
    op = bqlogdet.LinearOperator.from_dense(a, psd=True)
    assert op.n == 40
    assert bqlogdet.exact_logdet(op) == pytest.approx(np.log(eig).sum(), rel=1e-10)


def test_matvec_counts():
    a, _ = spd(10, 1)
    op = bqlogdet.LinearOperator.from_dense(a)
    v = np.arange(10.0)
    np.testing.assert_allclose(op.matvec(v), a @ v, rtol=1e-12)
    assert op.mvp_count() == 1


def test_sparse_input():
    scipy_sparse = pytest.importorskip("scipy.sparse")
    m = scipy_sparse.diags([np.full(20, 2.0), np.full(19, -0.5), np.full(19, -0.5)], [0, 1, -1]).tocsr()
    op = bqlogdet.LinearOperator.from_sparse(m, psd=True)
    assert bqlogdet.exact_logdet(op) == pytest.approx(np.linalg.slogdet(m.toarray())[1], rel=1e-10)


def test_probabilistic_within_bounds():
    a, eig = spd(120, 2)
    op = bqlogdet.LinearOperator.from_dense(a, psd=True)
    assert bqlogdet.probabilistic_logdet(op, order=15, probes=10, seed=3)["bounds"] is None
    r = bqlogdet.probabilistic_logdet(op, order=15, probes=10, seed=3, floor=0.1)
    lo, hi = r["bounds"]
    assert lo <= r["value"] <= hi
    assert r["stddev"] > 0
    assert r["mvp_count"] == 150
    assert abs(r["value"] - np.log(eig).sum()) < 4 * r["stddev"] + 1e-6


def test_methods_run():
    a, eig = spd(60, 4)
    op = bqlogdet.LinearOperator.from_dense(a, psd=True)
    exact = np.log(eig).sum()
    assert bqlogdet.logdet(op, "exact")["value"] == pytest.approx(exact, rel=1e-10)
    for method in ("bq", "taylor", "chebyshev", "slq"):
        r = bqlogdet.logdet(op, method, order=20, probes=10, seed=0)
        assert math.isfinite(r["value"])
        assert r["mvp_count"] > 0


def test_identity_bounds_tight():
    lo, hi = bqlogdet.bounds(mu1=10.0, mu2=10.0, alpha=1.0, beta=1.0, n=10)
    assert lo == pytest.approx(0.0, abs=1e-12)
    assert hi == pytest.approx(0.0, abs=1e-12)


def test_kernels_positive():
    assert bqlogdet.hist_k_pred_pred(2) == pytest.approx(0.7402265, abs=1e-6)
    assert bqlogdet.hist_k_obs_obs(1, 1, 4) > 0
    assert bqlogdet.poly_k_pred_obs(2, 2, 1.0) > 0


def test_truncate_inside_interval():
    mean, var, underflow = bqlogdet.truncate(0.0, 1.0, -0.5, 0.5)
    assert mean == pytest.approx(0.0, abs=1e-14)
    assert 0 < var < 1.0 / 12.0 + 1e-12
    assert not underflow


def test_input_error_raised():
    with pytest.raises(ValueError):
        bqlogdet.LinearOperator.from_dense(np.ones((2, 3)))


def validate(doc, name):
    jsonschema = pytest.importorskip("jsonschema")
    referencing = pytest.importorskip("referencing")
    resources = []
    for path in SCHEMA_DIR.glob("*.schema.json"):
        schema = json.loads(path.read_text())
        resources.append((schema["$id"], referencing.Resource.from_contents(schema)))
    registry = referencing.Registry().with_resources(resources)
    schema = json.loads((SCHEMA_DIR / f"{name}.schema.json").read_text())
    jsonschema.Draft202012Validator(schema, registry=registry).validate(doc)


@pytest.mark.parametrize(
    "args,name",
    [
        (["estimate", "--synthetic", "gaussian:n=80,l=0.1", "--seed", "1", "--order", "10", "--probes", "5"], "estimate"),
        (["estimate", "--synthetic", "gaussian:n=80,l=0.1", "--seed", "1", "--method", "slq"], "estimate"),
        (["bench", "--synthetic", "gaussian:n=80,l=0.1", "--orders", "5", "--seed", "1", "--format", "json"], "bench"),
        (["calibrate", "--synthetic", "gaussian:n=80,l=0.1", "--orders", "5", "--replicates", "2", "--seed", "1",
          "--format", "json"], "calibrate"),
        (["dpp", "--points-per-axis", "6", "--candidates", "0.1,1", "--samples", "2", "--seed", "1",
          "--format", "json"], "dpp"),
    ],
)
def test_cli_json_matches_schema(args, name):
    code, out, err = bqlogdet.run_cli(args)
    assert code == 0, err
    doc = json.loads(out)
    validate(doc, name)
    assert doc["config"]["subcommand"] == name


def test_cli_error_codes():
    code, out, err = bqlogdet.run_cli(["estimate", "--synthetic", "gaussian:n=10,l=0.1"])
    assert code == 1
    assert err.startswith("error: input:")
    assert err.count("\n") <= 1
    code, _, err = bqlogdet.run_cli(["estimate", "--matrix", "/nonexistent.mtx", "--seed", "0"])
    assert code == 1
