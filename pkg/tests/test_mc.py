"""Monte Carlo engine: determinism, validation, and law checks.

Full-size verification lives in the acceptance module; everything here
runs with small path counts to keep the suite quick.
"""

import numpy as np
import pytest

from skipfree import (
    DomainError,
    FunctionalSpec,
    InvalidFunctional,
    MCEstimate,
    PolicySpec,
    default_horizon_cap,
    dividend_count_samples,
    doubly_reflected_values,
    run_dividends_chisquare,
    run_registry,
    simulate,
)
from skipfree.golden import cached_table
from skipfree.mc import _ClaimSampler, _rng, default_registry


def test_default_horizon_cap_rule():
    # smallest n with v^n / (1 - v) below 1e-10
    assert default_horizon_cap(0.9) == 241
    v, cap = 0.9, 241
    assert v**cap / (1.0 - v) < 1e-10 < v ** (cap - 1) / (1.0 - v)
    with pytest.raises(DomainError):
        default_horizon_cap(1.0)
    with pytest.raises(DomainError):
        default_horizon_cap(0.0)


def test_policy_and_functional_validation(three_point):
    with pytest.raises(InvalidFunctional):
        PolicySpec("mirror")
    with pytest.raises(InvalidFunctional):
        PolicySpec("reflect_upper")  # missing barrier
    with pytest.raises(InvalidFunctional):
        simulate(
            three_point, 0, PolicySpec("free"),
            FunctionalSpec("lifetime", v=0.9), 100, seed=1,
        )
    with pytest.raises(InvalidFunctional):
        simulate(
            three_point, 0, PolicySpec("free"),
            FunctionalSpec("dividends_pv", v=0.9), 100, seed=1,
        )
    with pytest.raises(DomainError):
        # undiscounted runs must cap explicitly
        simulate(
            three_point, 0, PolicySpec("free"),
            FunctionalSpec("ruin_indicator", v=1.0), 100, seed=1,
        )


def test_simulate_is_deterministic(three_point):
    spec = (three_point, 3, PolicySpec("free"),
            FunctionalSpec("passage_up", v=0.9, level=6))
    a = simulate(*spec, 4000, seed=11)
    b = simulate(*spec, 4000, seed=11)
    c = simulate(*spec, 4000, seed=11, stream=1)
    assert isinstance(a, MCEstimate)
    assert a.mean == b.mean and a.std_error == b.std_error
    assert a.mean != c.mean


def test_passage_up_agrees_with_phi(three_point, three_tab_09):
    est = simulate(
        three_point, 3, PolicySpec("free"),
        FunctionalSpec("passage_up", v=0.9, level=6), 20000, seed=2,
    )
    analytic = three_tab_09.model.phi_v**3
    assert abs(est.mean - analytic) <= 5.0 * est.std_error
    assert est.n_paths == 20000
    assert 0.0 <= est.capped_fraction <= 1.0


def test_claim_sampler_frequencies(three_point, modgeom):
    rng = _rng(7, 0)
    u = rng.random(40000)
    for dist in (three_point, modgeom):
        draws = _ClaimSampler(dist).draw(u)
        for k in range(4):
            freq = float(np.mean(draws == k))
            assert freq == pytest.approx(dist.p(k), abs=0.02)
        # lumped tail
        tail = float(np.mean(draws >= 4))
        assert tail == pytest.approx(dist.tail(3), abs=0.02)


def test_claim_sampler_alpha_zero_stops_at_two():
    from skipfree import modified_geometric

    d = modified_geometric(p0=0.5, p1=0.2, alpha=0.0)
    draws = _ClaimSampler(d).draw(_rng(3, 0).random(20000))
    assert draws.max() == 2


def test_ruin_certain_under_upper_reflection(three_point):
    # with v = 1 and reflection above, every path either ruins or is
    # still running at the cap; none survives outright
    est = simulate(
        three_point, 5, PolicySpec("reflect_upper", b=8),
        FunctionalSpec("ruin_prob", v=1.0), 2000, seed=3, horizon_cap=4000,
    )
    assert est.mean + est.capped_fraction == pytest.approx(1.0, abs=1e-12)
    assert est.mean > 0.6


def test_horizon_cap_bias_is_one_sided(three_point):
    spec = (three_point, 2, PolicySpec("free"),
            FunctionalSpec("ruin_indicator", v=1.0))
    short = simulate(*spec, 3000, seed=5, horizon_cap=3)
    full = simulate(*spec, 3000, seed=5, horizon_cap=600)
    assert short.mean < full.mean
    # at v = 1 the subcritical free walk drifts up, so the paths that
    # never ruin always run into the cap
    assert short.capped_fraction > full.capped_fraction > 0.5


def test_dividend_count_mean(two_point, two_tab):
    samples = dividend_count_samples(two_point, 2, 65.0 / 72.0, 2, 20000, seed=9)
    theta = two_tab.dw(2) / two_tab.w(3)
    want = (1.0 - theta) / theta
    se = samples.std(ddof=1) / np.sqrt(len(samples))
    assert abs(samples.mean() - want) <= 5.0 * se


def test_registry_structure():
    reg = default_registry()
    assert len(reg) == 20
    names = [e.name for e in reg]
    assert len(set(names)) == 20
    assert all(np.isfinite(e.analytic()) for e in reg)


def test_registry_small_run_sanity():
    rows = run_registry(seed=42, n_paths=20000)
    assert len(rows) == 20
    assert sorted(rows[0]) == [
        "analytic", "functional", "mc_mean", "mc_se", "n_paths", "seed", "z_score",
    ]
    worst = max(abs(r["z_score"]) for r in rows)
    assert worst <= 5.0


def test_dividends_chisquare_small_run():
    rep = run_dividends_chisquare(seed=11, n_paths=20000)
    assert set(rep) == {"functional", "n_paths", "p_value", "seed", "statistic", "theta"}
    assert rep["p_value"] > 1e-3


def test_doubly_reflected_spot_check(four_point, gsy_tab):
    est = simulate(
        four_point, 25, PolicySpec("doubly_reflected", b=25),
        FunctionalSpec("doubly_dividends", v=0.999), 1500, seed=7,
        horizon_cap=18500,
    )
    analytic = doubly_reflected_values(gsy_tab, 25, 25)[0]
    assert abs(est.mean - analytic) <= 5.0 * est.std_error
