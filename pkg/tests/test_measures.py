import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qpart.measures import (
    MiwaTimes,
    Plancherel,
    PoissonizedPlancherel,
    QPPMixed,
    QPPSquared,
    SchurMeasure,
    measure,
    normalization_partial_sum,
    q_limit_check,
)
from qpart.partitions import Partition, enumerate_partitions

SAMPLE = [
    Partition(()),
    Partition((1,)),
    Partition((2,)),
    Partition((1, 1)),
    Partition((2, 1)),
    Partition((3, 2, 1)),
    Partition((4, 1, 1)),
]


class TestPlancherel:
    def test_sums_to_one(self):
        for n in range(1, 8):
            assert normalization_partial_sum(Plancherel(n), n) == pytest.approx(
                1.0, abs=1e-13
            )

    def test_rejects_wrong_size(self):
        with pytest.raises(ValueError):
            measure(Plancherel(3), Partition((1,)))

    def test_single_box(self):
        assert measure(Plancherel(1), Partition((1,))) == 1.0


class TestPoissonized:
    def test_empty_partition_mass(self):
        eta = 0.8
        assert measure(PoissonizedPlancherel(eta), Partition(())) == (
            pytest.approx(math.exp(-eta * eta), rel=1e-14)
        )

    def test_mixture_of_plancherels(self):
        # mass at size n is Poisson(eta^2) times the Plancherel mass
        eta = 0.7
        lam = Partition((2, 1))
        pois = math.exp(-eta * eta) * (eta * eta) ** 3 / math.factorial(3)
        want = pois * measure(Plancherel(3), lam)
        assert measure(PoissonizedPlancherel(eta), lam) == pytest.approx(
            want, rel=1e-13
        )

    def test_total_mass(self):
        assert normalization_partial_sum(
            PoissonizedPlancherel(0.9), 22
        ) == pytest.approx(1.0, abs=1e-10)


class TestQDeformations:
    @pytest.mark.parametrize("xi", [0.1, 0.3, 0.5])
    @pytest.mark.parametrize("q", [0.3, 0.5, 0.7])
    def test_squared_total_mass(self, xi, q):
        total = normalization_partial_sum(QPPSquared(xi=xi, q=q), 25)
        assert total == pytest.approx(1.0, abs=1e-7)

    @pytest.mark.parametrize("xi", [0.1, 0.3, 0.5])
    @pytest.mark.parametrize("q", [0.3, 0.5, 0.7])
    def test_mixed_total_mass(self, xi, q):
        total = normalization_partial_sum(QPPMixed(xi=xi, q=q), 25)
        assert total == pytest.approx(1.0, abs=1e-7)

    def test_nonnegative(self):
        for lam in SAMPLE:
            for kind in (QPPSquared(0.3, 0.5), QPPMixed(0.3, 0.5)):
                assert measure(kind, lam) >= 0.0

    def test_squared_is_schur_with_principal_times(self):
        t = MiwaTimes.principal(0.3, 0.5)
        sm = SchurMeasure(t=t, t_tilde=t)
        kind = QPPSquared(0.3, 0.5)
        for lam in SAMPLE:
            assert measure(sm, lam) == pytest.approx(
                measure(kind, lam), rel=1e-10
            )

    def test_mixed_is_schur_with_principal_and_delta_times(self):
        # the mixed type pairs the principal specialization with the
        # one-variable exponential one; this fixes its normalization
        # constant as exp(-xi^2/(1-q)) via the Cauchy identity
        xi, q = 0.3, 0.5
        t = MiwaTimes.principal(xi, q)
        td = MiwaTimes.delta(xi / math.sqrt(q))
        sm = SchurMeasure(t=t, t_tilde=td)
        kind = QPPMixed(xi, q)
        for lam in SAMPLE:
            assert measure(sm, lam) == pytest.approx(
                measure(kind, lam), rel=1e-10
            )

    def test_mixed_reduces_to_poissonized_at_q_scaling(self):
        eta = 0.8
        pp = PoissonizedPlancherel(eta)
        for lam in SAMPLE:
            prev = None
            for q in (0.9, 0.99, 0.999):
                val = measure(QPPMixed(xi=math.sqrt(1.0 - q) * eta, q=q), lam)
                dev = abs(val - measure(pp, lam))
                if prev is not None:
                    assert dev <= prev + 1e-15
                prev = dev

    def test_q_limit_chain_rows(self):
        rows = q_limit_check(Partition((2, 1)), 0.8, [0.9, 0.97, 0.99])
        assert len(rows) == 3
        dev_sq = [abs(r[1] - r[3]) for r in rows]
        dev_mx = [abs(r[2] - r[3]) for r in rows]
        assert dev_sq[2] < dev_sq[0]
        assert dev_mx[2] < dev_mx[0]

    def test_q_limit_check_requires_increasing_schedule(self):
        with pytest.raises(ValueError):
            q_limit_check(Partition((1,)), 0.5, [0.9, 0.8])

    def test_richardson_step_ratio(self):
        # differences from the Poissonized value shrink by about the
        # step ratio of (1 - q) along a geometric schedule
        lam = Partition((2, 1))
        eta = 0.8
        pp = measure(PoissonizedPlancherel(eta), lam)
        devs = []
        for q in (0.9, 0.99, 0.999):
            val = measure(QPPSquared(xi=(1.0 - q) * eta, q=q), lam)
            devs.append(abs(val - pp))
        assert devs[1] / devs[0] < 0.3
        assert devs[2] / devs[1] < 0.3


class TestMiwaTimes:
    def test_explicit_list(self):
        t = MiwaTimes(t=(0.5, 0.25))
        assert t.value(1) == 0.5
        assert t.value(2) == 0.25
        assert t.value(3) == 0.0

    def test_rejects_unknown_family(self):
        with pytest.raises(ValueError):
            MiwaTimes(family="bogus")

    def test_principal_values(self):
        t = MiwaTimes.principal(0.3, 0.5)
        q = 0.5
        want = -0.3 / (math.sqrt(q) - 1.0 / math.sqrt(q))
        assert t.value(1) == pytest.approx(want, rel=1e-14)

    def test_delta_values(self):
        t = MiwaTimes.delta(0.4)
        assert t.value(1) == 0.4
        assert t.value(2) == 0.0

    @given(st.floats(0.05, 0.6), st.floats(0.1, 0.9))
    @settings(max_examples=40, deadline=None)
    def test_principal_series_decays(self, xi, q):
        t = MiwaTimes.principal(xi, q)
        assert abs(t.value(8)) < abs(t.value(1)) + 1e-12
