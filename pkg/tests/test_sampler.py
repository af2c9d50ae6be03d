import numpy as np
import pytest

from shared.exceptions import DegenerateSampleError
from shared.models.group_models import SpecialUnitaryGroup, TorusGroup, UnitaryGroup
from shared.models.rep_models import Exterior, Std, Tensor, TorusWeights
from shared.models.report_models import SampleConfig
from services.groups import catalog_load, catalog_names
from services.sampler import (
    TraceSampler,
    estimate_moments,
    gaussian_limit_report,
    haar_sample_trace,
    haar_unitary,
)
from services.sampler.config import config as sampler_config
from services.sampler.haar import _draw_unitary


def _config(group, rep, samples=2000, seed=7, amax=2, bmax=2, group_id="g"):
    return SampleConfig(
        group_id=group_id, group=group, rep=rep, samples=samples, seed=seed, amax=amax, bmax=bmax
    )


def _trace_moment(traces, a, b):
    values = traces ** a * np.conj(traces) ** b
    return values.mean(), values.std(ddof=1) / np.sqrt(len(values))


class TestHaarUnitary:
    def test_single_matrix_is_unitary(self):
        u = haar_unitary(3, np.random.default_rng(0))
        assert u.shape == (3, 3)
        assert np.allclose(u.conj().T @ u, np.eye(3))

    def test_batch_is_unitary(self):
        batch = haar_unitary(2, np.random.default_rng(1), size=50)
        assert batch.shape == (50, 2, 2)
        products = np.conj(np.swapaxes(batch, -1, -2)) @ batch
        assert np.allclose(products, np.broadcast_to(np.eye(2), products.shape))

    def test_left_invariance_smoke(self):
        # trace moments of h·g match those of g for a fixed h, on independent draws
        h = haar_unitary(2, np.random.default_rng(99))
        plain = np.trace(haar_unitary(2, np.random.default_rng(2), size=20000), axis1=1, axis2=2)
        batch = haar_unitary(2, np.random.default_rng(3), size=20000)
        shifted = np.trace(h[None, :, :] @ batch, axis1=1, axis2=2)
        for a in range(4):
            for b in range(4 - a):
                m1, s1 = _trace_moment(plain, a, b)
                m2, s2 = _trace_moment(shifted, a, b)
                assert abs(m1 - m2) <= 5 * np.hypot(s1, s2) + 1e-12, (a, b)

    def test_retries_then_success(self, mocker):
        real = haar_unitary
        calls = {"n": 0}

        def flaky(n, rng, size=None):
            calls["n"] += 1
            if calls["n"] == 1:
                raise DegenerateSampleError("degenerate")
            return real(n, rng, size)

        mocker.patch("services.sampler.haar.haar_unitary", side_effect=flaky)
        matrices, retries = _draw_unitary(2, np.random.default_rng(0), 4)
        assert matrices.shape == (4, 2, 2)
        assert retries == 1

    def test_retries_exhausted(self, mocker):
        mocker.patch(
            "services.sampler.haar.haar_unitary",
            side_effect=DegenerateSampleError("degenerate"),
        )
        with pytest.raises(DegenerateSampleError, match="after"):
            _draw_unitary(2, np.random.default_rng(0), 4)


class TestTraceSampler:
    def test_unit_circle(self):
        traces, retries = TraceSampler(TorusGroup(rank=1), TorusWeights(weights=((1,),))).sample(
            np.random.default_rng(0), 100
        )
        assert np.allclose(np.abs(traces), 1.0)
        assert retries == 0

    def test_cyclic_two(self):
        group, rep = catalog_load("cyclic(2)")
        traces, _ = TraceSampler(group, rep).sample(np.random.default_rng(0), 200)
        assert set(np.round(traces.real).astype(int)) <= {-1, 1}
        assert np.allclose(traces.imag, 0.0)

    def test_su2_traces_are_real(self):
        traces, _ = TraceSampler(SpecialUnitaryGroup(n=2), Std()).sample(np.random.default_rng(3), 500)
        assert np.allclose(traces.imag, 0.0, atol=1e-9)
        assert np.all(np.abs(traces) <= 2.0 + 1e-9)

    def test_unitary_trace_bound(self):
        traces, _ = TraceSampler(UnitaryGroup(n=3), Std()).sample(np.random.default_rng(4), 500)
        assert np.all(np.abs(traces) <= 3.0 + 1e-9)

    def test_single_trace(self):
        value = haar_sample_trace(UnitaryGroup(n=2), Std(), np.random.default_rng(5))
        assert isinstance(value, complex)
        assert abs(value) <= 2.0 + 1e-9


class TestEstimateMoments:
    def test_unit_cell_is_exact(self):
        result = estimate_moments(_config(UnitaryGroup(n=2), Std()))
        assert result.mean(0, 0) == 1
        assert result.stderr(0, 0) == 0.0

    def test_seed_determinism(self):
        cfg = _config(UnitaryGroup(n=2), Std(), samples=3000)
        first = estimate_moments(cfg, max_workers=1)
        second = estimate_moments(cfg, max_workers=3)
        assert first.model_dump() == second.model_dump()

    def test_seeds_differ(self):
        one = estimate_moments(_config(UnitaryGroup(n=2), Std(), seed=1))
        two = estimate_moments(_config(UnitaryGroup(n=2), Std(), seed=2))
        assert one.mean(1, 1) != two.mean(1, 1)

    def test_mirror_is_conjugate(self):
        result = estimate_moments(_config(UnitaryGroup(n=2), Std(), amax=3, bmax=3))
        for a in range(4):
            for b in range(4):
                if a != b:
                    assert result.mean(b, a) == result.mean(a, b).conjugate()

    def test_chunked_samples(self, monkeypatch):
        monkeypatch.setattr("services.sampler.estimator.config.chunk_size", 300)
        result = estimate_moments(_config(TorusGroup(rank=1), TorusWeights(weights=((1,),)), samples=1000))
        assert result.samples == 1000
        assert abs(result.mean(1, 1) - 1.0) < 1e-9

    def test_single_sample_has_zero_stderr(self):
        result = estimate_moments(_config(UnitaryGroup(n=2), Std(), samples=1))
        assert result.stderr(1, 1) == 0.0

    def test_rectangular_window(self):
        result = estimate_moments(_config(UnitaryGroup(n=2), Std(), amax=3, bmax=1))
        assert {(c.a, c.b) for c in result.cells} == {(a, b) for a in range(4) for b in range(2)}

    def test_u2_second_moment(self):
        result = estimate_moments(_config(UnitaryGroup(n=2), Std(), samples=20000, seed=42))
        assert abs(result.mean(2, 2) - 2) <= 5 * result.stderr(2, 2)

    def test_su2_first_moment(self):
        result = estimate_moments(_config(SpecialUnitaryGroup(n=2), Std(), samples=20000, seed=42))
        assert abs(result.mean(1, 0)) <= 5 * result.stderr(1, 0)


CONSISTENCY_SEEDS = range(50)
CONSISTENCY_PASS_RATE = 0.99

# U(2) acting by Std ⊗ det
DET_TWISTED = (UnitaryGroup(n=2), Tensor(factors=(Std(), Exterior(k=2, of=Std()))))


def _consistency_rate(group, rep, samples, engine):
    """Fraction of (seed, cell) checks with |m - F| <= k * s over a, b <= 3."""
    exact = {(a, b): engine.moment(group, rep, a, b) for a in range(4) for b in range(4)}
    slack = sampler_config.stderr_multiplier
    checks = []
    for seed in CONSISTENCY_SEEDS:
        result = estimate_moments(
            _config(group, rep, samples=samples, seed=seed, amax=3, bmax=3), max_workers=1
        )
        for (a, b), value in exact.items():
            checks.append(abs(result.mean(a, b) - value) <= slack * result.stderr(a, b) + 1e-9)
    return sum(checks) / len(checks)


@pytest.mark.slow
@pytest.mark.parametrize("group", [UnitaryGroup(n=2), SpecialUnitaryGroup(n=2)])
def test_monte_carlo_consistency(group, shared_engine):
    rate = _consistency_rate(group, Std(), 100_000, shared_engine)
    assert rate >= CONSISTENCY_PASS_RATE


@pytest.mark.slow
@pytest.mark.parametrize("name", catalog_names())
def test_catalog_monte_carlo_consistency(name, shared_engine):
    group, rep = catalog_load(name)
    rate = _consistency_rate(group, rep, 10_000, shared_engine)
    assert rate >= CONSISTENCY_PASS_RATE, (name, rate)


@pytest.mark.slow
def test_det_twisted_monte_carlo_consistency(shared_engine):
    rate = _consistency_rate(*DET_TWISTED, 20_000, shared_engine)
    assert rate >= CONSISTENCY_PASS_RATE


class TestGaussianLimit:
    def test_rows(self):
        report = gaussian_limit_report([2, 4], amax=4)
        rows = {(r.n, r.a): r for r in report.rows}
        assert rows[(4, 3)].exact == 6 and rows[(4, 3)].difference == 0
        assert rows[(2, 3)].exact == 5 and rows[(2, 3)].difference == 1
        assert rows[(2, 4)].exact == 14 and rows[(2, 4)].gaussian == 24

    @pytest.mark.parametrize("n", [2, 3, 4])
    def test_strict_above_rank(self, n):
        report = gaussian_limit_report([n], amax=n + 1)
        rows = {r.a: r for r in report.rows}
        assert all(rows[a].difference == 0 for a in range(n + 1))
        assert rows[n + 1].exact < rows[n + 1].gaussian

    def test_with_samples(self):
        report = gaussian_limit_report([2], amax=2, samples=5000, seed=3)
        assert all(r.estimate is not None for r in report.rows)
