"""Monte Carlo oracle for every analytic functional in the package.

Claims are drawn by inverse CDF from a counter-based Philox stream, so
runs are reproducible and independent across the stream index. The
simulation is step-major over a compacted set of active paths: all
paths share the clock, which lets discounting use a scalar v^t.

Geometric killing at rate 1 - v is applied analytically (each period
contributes a factor v) except where the killed dividend count itself
is the object of interest, in which case the horizon is sampled.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import stats as sp_stats

from .errors import DomainError, InvalidFunctional
from .model import ClaimDistribution

_BIAS_TARGET = 1e-10

_FREE_KINDS = (
    "passage_up",
    "two_sided_up",
    "deficit_gf",
    "discounted_ruin",
    "ruin_indicator",
    "expected_deficit",
    "resolvent",
    "downcross_w",
)
_REFLECT_UPPER_KINDS = (
    "dividends_pv",
    "joint_deficit_dividends",
    "ruin_prob",
    "bailout_pv",
    "modified_value",
)
_REFLECT_LOWER_KINDS = ("injection_mgf",)
_DOUBLY_KINDS = ("doubly_dividends", "doubly_bailouts", "doubly_value")

_POLICY_KINDS = {
    "free": _FREE_KINDS,
    "reflect_upper": _REFLECT_UPPER_KINDS,
    "reflect_lower_0": _REFLECT_LOWER_KINDS,
    "doubly_reflected": _DOUBLY_KINDS,
}


@dataclass(frozen=True)
class PolicySpec:
    """Path dynamics: free walk, one-sided reflection, or both sides."""

    kind: str
    b: int | None = None

    def __post_init__(self) -> None:
        if self.kind not in _POLICY_KINDS:
            raise InvalidFunctional(f"unknown policy kind {self.kind!r}")
        needs_b = self.kind in ("reflect_upper", "doubly_reflected")
        if needs_b and (self.b is None or self.b < 0):
            raise InvalidFunctional(f"policy {self.kind} needs a barrier b >= 0")


@dataclass(frozen=True)
class FunctionalSpec:
    """What to evaluate along each path.

    level is the primary barrier or target of the functional (upper
    passage target, ruin-kill barrier, injection target, or the level
    whose downcrossing is priced); upper is the extra killing barrier
    of downcross_w; target_state is the state whose discounted visits
    the resolvent counts; weights are the terminal weights applied at a
    downcrossing, indexed by the landing state.
    """

    kind: str
    v: float = 1.0
    w: float = 1.0
    z: float = 1.0
    k: float = 0.0
    level: int | None = None
    upper: int | None = None
    target_state: int | None = None
    weights: tuple[float, ...] | None = None


@dataclass(frozen=True)
class MCEstimate:
    mean: float
    std_error: float
    n_paths: int
    seed: int
    horizon_cap: int
    capped_fraction: float


def default_horizon_cap(v: float) -> int:
    """Smallest horizon whose discounting bias bound v^n / (1-v) is
    below 1e-10; only defined for v < 1."""
    if not 0.0 < v < 1.0:
        raise DomainError("horizon cap rule needs 0 < v < 1")
    return max(1, math.ceil(math.log(_BIAS_TARGET * (1.0 - v)) / math.log(v)))


class _ClaimSampler:
    """Inverse-CDF claim draws from uniforms, vectorized."""

    def __init__(self, dist: ClaimDistribution):
        self.dist = dist
        if dist.kind == "table":
            cdf = np.cumsum(dist.pmf)
            cdf[-1] = 1.0
            self.cdf = cdf
        else:
            self.p0 = dist.p0
            self.p1 = dist.p1
            self.q = 1.0 - dist.p0 - dist.p1
            self.alpha = dist.alpha

    def draw(self, u: np.ndarray) -> np.ndarray:
        if self.dist.kind == "table":
            return np.searchsorted(self.cdf, u, side="right").astype(np.int64)
        out = np.empty(u.shape, dtype=np.int64)
        m0 = u < self.p0
        m1 = ~m0 & (u < self.p0 + self.p1)
        rest = ~(m0 | m1)
        out[m0] = 0
        out[m1] = 1
        if self.alpha == 0.0:
            out[rest] = 2
        else:
            u2 = (u[rest] - self.p0 - self.p1) / self.q
            geo = np.floor(np.log1p(-u2) / math.log(self.alpha))
            out[rest] = 2 + geo.astype(np.int64)
        return out


def _rng(seed: int, stream: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(key=[seed, stream]))


def _estimate(values: np.ndarray, seed: int, cap: int, n_capped: int) -> MCEstimate:
    n = len(values)
    se = float(values.std(ddof=1) / math.sqrt(n)) if n > 1 else 0.0
    return MCEstimate(
        mean=float(values.mean()),
        std_error=se,
        n_paths=n,
        seed=seed,
        horizon_cap=cap,
        capped_fraction=n_capped / n,
    )


def _run_free(sampler, x0, fn, n_paths, rng, cap):
    kind = fn.kind
    v, w = fn.v, fn.w
    if kind == "passage_up":
        upper, lower = fn.level, None
        if upper is None:
            raise InvalidFunctional("passage_up needs a target level")
    elif kind in ("two_sided_up", "expected_deficit", "resolvent"):
        upper, lower = fn.level, -1
        if upper is None:
            raise InvalidFunctional(f"{kind} needs an upper level")
    elif kind in ("deficit_gf", "ruin_indicator", "discounted_ruin"):
        upper, lower = fn.level, -1
    else:  # downcross_w
        if fn.level is None or fn.weights is None:
            raise InvalidFunctional("downcross_w needs a level and weights")
        upper, lower = fn.upper, fn.level - 1
        if len(fn.weights) <= max(lower, 0):
            raise InvalidFunctional("downcross_w weights do not cover the band")
    if kind == "resolvent" and fn.target_state is None:
        raise InvalidFunctional("resolvent needs a target state")
    weights = np.asarray(fn.weights) if fn.weights is not None else None

    values = np.zeros(n_paths)

    def at_lower(states: np.ndarray, disc: float) -> np.ndarray:
        if kind == "deficit_gf":
            return disc * w ** (-states.astype(float))
        if kind == "discounted_ruin":
            return np.full(states.shape, disc)
        if kind == "ruin_indicator":
            return np.ones(states.shape)
        if kind == "expected_deficit":
            return disc * states.astype(float)
        if kind == "downcross_w":
            safe = np.clip(states, 0, len(weights) - 1)
            return disc * np.where(states >= 0, weights[safe], 0.0)
        return np.zeros(states.shape)  # two_sided_up

    # resolutions that need no sampling at all
    if upper is not None and x0 >= upper:
        if kind in ("passage_up", "two_sided_up"):
            values[:] = 1.0
        return values, 0
    if lower is not None and x0 <= lower:
        start = np.full(n_paths, x0, dtype=np.int64)
        if kind == "resolvent":
            values[:] = 0.0
        else:
            values[:] = at_lower(start, 1.0)
        return values, 0

    idx = np.arange(n_paths)
    x = np.full(n_paths, x0, dtype=np.int64)
    acc = np.zeros(n_paths) if kind == "resolvent" else None
    disc = 1.0
    t = 0
    while idx.size and t < cap:
        if acc is not None:
            acc += disc * (x == fn.target_state)
        t += 1
        disc *= v
        x = x + 1 - sampler.draw(rng.random(idx.size))
        stopped = np.zeros(idx.size, dtype=bool)
        if upper is not None:
            up = x >= upper
            if kind in ("passage_up", "two_sided_up"):
                values[idx[up]] = disc
            elif kind == "resolvent":
                values[idx[up]] = acc[up]
            stopped |= up
        if lower is not None:
            low = x <= lower
            if kind == "resolvent":
                values[idx[low]] = acc[low]
            else:
                values[idx[low]] = at_lower(x[low], disc)
            stopped |= low
        keep = ~stopped
        idx = idx[keep]
        x = x[keep]
        if acc is not None:
            acc = acc[keep]
    if acc is not None and idx.size:
        values[idx] = acc
    return values, int(idx.size)


def _run_reflect_upper(sampler, x0, fn, n_paths, rng, cap, b):
    kind = fn.kind
    v, w, z, k = fn.v, fn.w, fn.z, fn.k
    values = np.zeros(n_paths)
    if x0 < 0:
        # ruined at time zero, before any dividend
        if kind == "joint_deficit_dividends":
            values[:] = w ** float(-x0)
        elif kind == "ruin_prob":
            values[:] = 1.0
        elif kind == "bailout_pv":
            values[:] = float(-x0)
        elif kind == "modified_value":
            values[:] = -k * float(-x0)
        return values, 0
    r0 = max(x0 - b, 0)
    divacc = np.full(n_paths, float(r0))
    divcnt = np.full(n_paths, r0, dtype=np.int64)
    idx = np.arange(n_paths)
    x = np.full(n_paths, min(x0, b), dtype=np.int64)
    disc = 1.0
    t = 0
    while idx.size and t < cap:
        t += 1
        disc *= v
        x = x + 1 - sampler.draw(rng.random(idx.size))
        ruined = x < 0
        if np.any(ruined):
            hit = idx[ruined]
            deficit = -x[ruined].astype(float)
            if kind == "dividends_pv":
                values[hit] = divacc[ruined]
            elif kind == "joint_deficit_dividends":
                values[hit] = disc * w**deficit * z ** divcnt[ruined].astype(float)
            elif kind == "ruin_prob":
                values[hit] = 1.0
            elif kind == "bailout_pv":
                values[hit] = disc * deficit
            else:  # modified_value
                values[hit] = divacc[ruined] - k * disc * deficit
        keep = ~ruined
        idx = idx[keep]
        x = x[keep]
        divacc = divacc[keep]
        divcnt = divcnt[keep]
        paid = x > b
        divacc[paid] += disc
        divcnt[paid] += 1
        np.minimum(x, b, out=x)
    if idx.size and kind in ("dividends_pv", "modified_value"):
        values[idx] = divacc
    return values, int(idx.size)


def _run_reflect_lower(sampler, x0, fn, n_paths, rng, cap):
    v, w = fn.v, fn.w
    target = fn.level
    if target is None or target < 0:
        raise InvalidFunctional("injection_mgf needs a nonnegative target level")
    values = np.zeros(n_paths)
    if x0 >= target:
        values[:] = 1.0
        return values, 0
    inj0 = max(-x0, 0)
    racc = np.full(n_paths, inj0, dtype=np.int64)
    idx = np.arange(n_paths)
    x = np.full(n_paths, max(x0, 0), dtype=np.int64)
    disc = 1.0
    t = 0
    while idx.size and t < cap:
        t += 1
        disc *= v
        x = x + 1 - sampler.draw(rng.random(idx.size))
        neg = x < 0
        racc[neg] += -x[neg]
        x[neg] = 0
        hit = x >= target
        values[idx[hit]] = disc * w ** racc[hit].astype(float)
        keep = ~hit
        idx = idx[keep]
        x = x[keep]
        racc = racc[keep]
    return values, int(idx.size)


def _run_doubly(sampler, x0, fn, n_paths, rng, cap, b):
    v, k = fn.v, fn.k
    div = np.full(n_paths, float(max(x0 - b, 0)))
    bail = np.full(n_paths, float(max(-x0, 0)))
    x = np.full(n_paths, min(max(x0, 0), b), dtype=np.int64)
    disc = 1.0
    for _ in range(cap):
        disc *= v
        x = x + 1 - sampler.draw(rng.random(n_paths))
        neg = x < 0
        bail[neg] += disc * -x[neg].astype(float)
        x[neg] = 0
        paid = x > b
        div[paid] += disc
        np.minimum(x, b, out=x)
    if fn.kind == "doubly_dividends":
        values = div
    elif fn.kind == "doubly_bailouts":
        values = bail
    else:
        values = div - k * bail
    return values, n_paths


def simulate(
    dist: ClaimDistribution,
    x0: int,
    policy: PolicySpec,
    functional: FunctionalSpec,
    n_paths: int,
    seed: int,
    horizon_cap: int | None = None,
    stream: int = 0,
) -> MCEstimate:
    """Estimate the functional along n_paths simulated paths.

    Deterministic: the same arguments always produce bit-identical
    results. Distinct stream values give independent estimates under
    the same seed. When horizon_cap is omitted it is derived from the
    discount factor (v < 1 only; undiscounted runs must cap explicitly).
    """
    if n_paths < 1:
        raise DomainError("n_paths must be at least 1")
    if horizon_cap is None:
        horizon_cap = default_horizon_cap(functional.v)
    if horizon_cap < 1:
        raise DomainError("horizon_cap must be at least 1")
    if not 0.0 < functional.v <= 1.0:
        raise DomainError(f"discount factor {functional.v} outside (0, 1]")
    for name, val in (("w", functional.w), ("z", functional.z)):
        if not 0.0 < val <= 1.0:
            raise DomainError(f"transform argument {name} = {val} outside (0, 1]")
    if functional.kind not in _POLICY_KINDS[policy.kind]:
        raise InvalidFunctional(
            f"functional {functional.kind!r} not available under policy "
            f"{policy.kind!r}"
        )
    sampler = _ClaimSampler(dist)
    rng = _rng(seed, stream)
    if policy.kind == "free":
        values, capped = _run_free(sampler, x0, functional, n_paths, rng, horizon_cap)
    elif policy.kind == "reflect_upper":
        values, capped = _run_reflect_upper(
            sampler, x0, functional, n_paths, rng, horizon_cap, policy.b
        )
    elif policy.kind == "reflect_lower_0":
        values, capped = _run_reflect_lower(
            sampler, x0, functional, n_paths, rng, horizon_cap
        )
    else:
        values, capped = _run_doubly(
            sampler, x0, functional, n_paths, rng, horizon_cap, policy.b
        )
    return _estimate(values, seed, horizon_cap, capped)


def dividend_count_samples(
    dist: ClaimDistribution, b: int, v: float, x0: int, n_paths: int, seed: int,
    stream: int = 0,
) -> np.ndarray:
    """Total dividends paid before ruin or an independent geometric
    killing time with survival v, one integer per path.

    This is the one estimator where killing is sampled rather than
    folded into a discount, because the killed count's law itself is
    the target.
    """
    if not 0.0 < v < 1.0:
        raise DomainError("killed dividend counts need 0 < v < 1")
    if b < 0 or x0 < 0:
        raise DomainError("barrier and start must be nonnegative")
    rng = _rng(seed, stream)
    sampler = _ClaimSampler(dist)
    kill = rng.geometric(1.0 - v, size=n_paths)
    counts = np.full(n_paths, max(x0 - b, 0), dtype=np.int64)
    idx = np.arange(n_paths)
    x = np.full(n_paths, min(x0, b), dtype=np.int64)
    t = 0
    while idx.size:
        t += 1
        live = kill[idx] > t  # the epoch-t dividend needs t <= E - 1
        idx = idx[live]
        x = x[live]
        if not idx.size:
            break
        x = x + 1 - sampler.draw(rng.random(idx.size))
        alive = x >= 0
        idx = idx[alive]
        x = x[alive]
        paid = x > b
        counts[idx[paid]] += 1
        np.minimum(x, b, out=x)
    return counts


def geometric_law_chisquare(
    counts: np.ndarray, theta: float, min_expected: float = 5.0
) -> tuple[float, float]:
    """Chi-square goodness of fit of integer samples against the
    geometric law P(R = r) = theta * (1 - theta)^r on {0, 1, ...}.

    Bins beyond the point where the expected count drops under
    min_expected are lumped into one tail cell. Returns (statistic,
    p_value).
    """
    n = len(counts)
    if n == 0:
        raise DomainError("no samples")
    probs = []
    r = 0
    while True:
        p = theta * (1.0 - theta) ** r
        if n * p < min_expected:
            break
        probs.append(p)
        r += 1
    if not probs:
        raise DomainError("sample too small for a chi-square test")
    head = len(probs)
    observed = np.bincount(np.minimum(counts, head), minlength=head + 1).astype(float)
    expected = np.append(n * np.asarray(probs), n * (1.0 - theta) ** head)
    statistic, p_value = sp_stats.chisquare(observed, expected)
    return float(statistic), float(p_value)


@dataclass(frozen=True)
class RegistryEntry:
    """One analytic-vs-MC comparison, lazily evaluated."""

    name: str
    analytic: "callable"
    estimate: "callable"  # (seed, n_paths, stream) -> MCEstimate


def _registry_models():
    from .model import validate

    three_point = validate(["2/3", "2/9", "0", "1/9"])
    two_point = validate(["12/13", "0", "0", "1/13"])
    four_point = validate(["3/4", "1/20", "1/10", "0", "0", "0", "0", "1/10"])
    heavy = validate(["1/2", "0", "0", "1/2"])
    return three_point, two_point, four_point, heavy


def default_registry() -> list[RegistryEntry]:
    """The cross-check catalogue backing mc-verify and the acceptance
    suite: one entry per passage or dividend functional, each with an
    analytic value and a matched simulation."""
    from . import dividends as dv
    from . import lundberg, passage
    from .model import DiscountedModel
    from .scale import w_table

    three_point, two_point, four_point, heavy = _registry_models()
    entries: list[RegistryEntry] = []

    def add(name, analytic, estimate):
        entries.append(RegistryEntry(name=name, analytic=analytic, estimate=estimate))

    def table_for(dist, v, x_max=420):
        return w_table(DiscountedModel(dist, v), x_max)

    # 1. unrestricted upward passage price phi_v^b
    def _e1(seed, n, stream):
        fn = FunctionalSpec(kind="passage_up", v=0.9, level=3)
        return simulate(three_point, 0, PolicySpec("free"), fn, n, seed,
                        default_horizon_cap(0.9), stream)

    add("passage_up:three_point,v=0.9,b=3",
        lambda: lundberg.phi(three_point, 0.9) ** 3, _e1)

    # 2. two-sided upward exit
    v2 = 150.0 / 169.0

    def _e2(seed, n, stream):
        fn = FunctionalSpec(kind="two_sided_up", v=v2, level=6)
        return simulate(three_point, 2, PolicySpec("free"), fn, n, seed,
                        default_horizon_cap(v2), stream)

    add("two_sided_up:three_point,x=2,N=6",
        lambda: passage.two_sided_up(table_for(three_point, v2, 20), 2, 6), _e2)

    # 3. deficit transform with an upper kill
    def _e3(seed, n, stream):
        fn = FunctionalSpec(kind="deficit_gf", v=v2, w=0.7, level=5)
        return simulate(three_point, 1, PolicySpec("free"), fn, n, seed,
                        default_horizon_cap(v2), stream)

    add("deficit_gf:three_point,x=1,b=5,w=0.7",
        lambda: passage.deficit_gf(table_for(three_point, v2, 20), 1, 5, 0.7), _e3)

    # 4. expected discounted deficit
    def _e4(seed, n, stream):
        fn = FunctionalSpec(kind="expected_deficit", v=0.9, level=5)
        return simulate(four_point, 0, PolicySpec("free"), fn, n, seed,
                        default_horizon_cap(0.9), stream)

    add("expected_deficit:four_point,x=0,b=5",
        lambda: passage.expected_deficit(table_for(four_point, 0.9, 20), 0, 5), _e4)

    # 5. discounted ruin, no upper barrier
    def _e5(seed, n, stream):
        fn = FunctionalSpec(kind="discounted_ruin", v=0.9)
        return simulate(heavy, 2, PolicySpec("free"), fn, n, seed,
                        default_horizon_cap(0.9), stream)

    add("discounted_ruin:heavy,x=2",
        lambda: passage.discounted_ruin(table_for(heavy, 0.9, 20), 2), _e5)

    # 6. eventual ruin probability (v = 1); a high absorbing level
    # truncates paths once their residual ruin probability is < 1e-12
    def _e6(seed, n, stream):
        fn = FunctionalSpec(kind="ruin_indicator", v=1.0, level=40)
        return simulate(three_point, 0, PolicySpec("free"), fn, n, seed, 4000, stream)

    add("eventual_ruin:three_point,x=0",
        lambda: passage.eventual_ruin(table_for(three_point, 1.0, 20), 0), _e6)

    # 7. discounted deficit transform without any barrier
    def _e7(seed, n, stream):
        fn = FunctionalSpec(kind="deficit_gf", v=0.85, w=0.6)
        return simulate(heavy, 2, PolicySpec("free"), fn, n, seed,
                        default_horizon_cap(0.85), stream)

    add("discounted_ruin_gf:heavy,x=2,w=0.6",
        lambda: passage.discounted_ruin_gf(table_for(heavy, 0.85), 2, 0.6), _e7)

    # 8. finite-time ruin probability, horizon used as an exact cap
    def _e8(seed, n, stream):
        fn = FunctionalSpec(kind="ruin_indicator", v=1.0)
        return simulate(three_point, 1, PolicySpec("free"), fn, n, seed, 12, stream)

    add("finite_time_ruin:three_point,x=1,n=12",
        lambda: float(passage.finite_time_ruin(three_point, 12, 1).ruin[12, 1]), _e8)

    # 9. resolvent of the two-sided killed walk
    v9 = 65.0 / 72.0

    def _e9(seed, n, stream):
        fn = FunctionalSpec(kind="resolvent", v=v9, level=4, target_state=2)
        return simulate(two_point, 1, PolicySpec("free"), fn, n, seed,
                        default_horizon_cap(v9), stream)

    add("killed_resolvent:two_point,i=1,j=2,N=4",
        lambda: passage.killed_resolvent(table_for(two_point, v9, 20), 1, 2, 4), _e9)

    # 10. scale value collected at a downcrossing
    def _e10(seed, n, stream):
        tab = table_for(two_point, v9, 20)
        weights = tuple(tab.w(y) for y in range(1))
        fn = FunctionalSpec(kind="downcross_w", v=v9, level=1, upper=4,
                            weights=weights)
        return simulate(two_point, 2, PolicySpec("free"), fn, n, seed,
                        default_horizon_cap(v9), stream)

    add("w_at_downcrossing:two_point,x=2,b=1,N=4",
        lambda: passage.w_at_downcrossing(table_for(two_point, v9, 20), 2, 1, 4),
        _e10)

    # 11. de Finetti dividend value
    def _e11(seed, n, stream):
        fn = FunctionalSpec(kind="dividends_pv", v=v9)
        return simulate(two_point, 2, PolicySpec("reflect_upper", 2), fn, n, seed,
                        default_horizon_cap(v9), stream)

    add("definetti_value:two_point,b=2,x=2",
        lambda: dv.definetti_value(table_for(two_point, v9, 20), 2, 2), _e11)

    # 12. capital injection transform up to a target level
    def _e12(seed, n, stream):
        fn = FunctionalSpec(kind="injection_mgf", v=0.999, w=0.5, level=4)
        return simulate(four_point, 0, PolicySpec("reflect_lower_0"), fn, n, seed,
                        default_horizon_cap(0.999), stream)

    add("injections_mgf:four_point,x=0,b=4,w=0.5",
        lambda: dv.injections_mgf(table_for(four_point, 0.999, 20), 4, 0, 0.5), _e12)

    # 13. joint dividends-deficit transform
    def _e13(seed, n, stream):
        fn = FunctionalSpec(kind="joint_deficit_dividends", v=v9, w=0.7, z=0.9)
        return simulate(two_point, 1, PolicySpec("reflect_upper", 2), fn, n, seed,
                        default_horizon_cap(v9), stream)

    add("joint_dividends_deficit:two_point,b=2,x=1,w=0.7,z=0.9",
        lambda: dv.joint_dividends_deficit(table_for(two_point, v9, 20), 2, 1, 0.7, 0.9),
        _e13)

    # 14. ruin transform of the barrier-reflected walk
    def _e14(seed, n, stream):
        fn = FunctionalSpec(kind="joint_deficit_dividends", v=0.999, w=0.4, z=1.0)
        return simulate(four_point, 0, PolicySpec("reflect_upper", 3), fn, n, seed,
                        default_horizon_cap(0.999), stream)

    add("reflected_ruin_gf:four_point,b=3,x=0,w=0.4",
        lambda: dv.reflected_ruin_gf(table_for(four_point, 0.999, 20), 3, 0, 0.4),
        _e14)

    # 15. mean of the killed dividend count against its geometric law
    def _e15(seed, n, stream):
        counts = dividend_count_samples(two_point, 2, v9, 2, n, seed, stream)
        vals = counts.astype(float)
        return _estimate(vals, seed, 0, 0)

    def _a15():
        theta = dv.dividends_law_at_barrier(table_for(two_point, v9, 20), 2)
        return (1.0 - theta) / theta

    add("dividends_law_mean:two_point,b=2", _a15, _e15)

    # 16. bailout value under upper reflection
    def _e16(seed, n, stream):
        fn = FunctionalSpec(kind="bailout_pv", v=0.999)
        return simulate(four_point, 2, PolicySpec("reflect_upper", 5), fn, n, seed,
                        default_horizon_cap(0.999), stream)

    add("bailout_value_reflected:four_point,b=5,x=2",
        lambda: dv.bailout_value_reflected(table_for(four_point, 0.999, 20), 5, 2),
        _e16)

    # 17/18. the doubly reflected pair
    def _e17(seed, n, stream):
        fn = FunctionalSpec(kind="doubly_dividends", v=0.8)
        return simulate(four_point, 2, PolicySpec("doubly_reflected", 4), fn, n, seed,
                        default_horizon_cap(0.8), stream)

    add("doubly_dividends:four_point,b=4,x=2",
        lambda: dv.doubly_reflected_values(table_for(four_point, 0.8, 20), 4, 2)[0],
        _e17)

    def _e18(seed, n, stream):
        fn = FunctionalSpec(kind="doubly_bailouts", v=0.8)
        return simulate(four_point, 2, PolicySpec("doubly_reflected", 4), fn, n, seed,
                        default_horizon_cap(0.8), stream)

    add("doubly_bailouts:four_point,b=4,x=2",
        lambda: dv.doubly_reflected_values(table_for(four_point, 0.8, 20), 4, 2)[1],
        _e18)

    # 19. dividends minus k * deficit under upper reflection
    def _e19(seed, n, stream):
        fn = FunctionalSpec(kind="modified_value", v=0.9, k=1.2)
        return simulate(four_point, 2, PolicySpec("reflect_upper", 5), fn, n, seed,
                        default_horizon_cap(0.9), stream)

    add("modified_value:four_point,b=5,x=2,k=1.2",
        lambda: dv.modified_definetti_value(table_for(four_point, 0.9, 20), 5, 2, 1.2),
        _e19)

    # 20. dividends minus k * bailouts under double reflection
    def _e20(seed, n, stream):
        fn = FunctionalSpec(kind="doubly_value", v=0.8, k=1.2)
        return simulate(four_point, 2, PolicySpec("doubly_reflected", 4), fn, n, seed,
                        default_horizon_cap(0.8), stream)

    add("doubly_value:four_point,b=4,x=2,k=1.2",
        lambda: dv.doubly_reflected_value(table_for(four_point, 0.8, 20), 4, 2, 1.2),
        _e20)

    return entries


def run_registry(seed: int = 42, n_paths: int = 10**6) -> list[dict]:
    """Evaluate every registered pair; each row carries its z-score."""
    rows = []
    for stream, entry in enumerate(default_registry()):
        analytic = float(entry.analytic())
        est = entry.estimate(seed, n_paths, stream)
        if est.std_error > 0.0:
            zscore = (est.mean - analytic) / est.std_error
        else:
            zscore = 0.0 if abs(est.mean - analytic) < 1e-12 else math.inf
        rows.append(
            {
                "functional": entry.name,
                "analytic": analytic,
                "mc_mean": est.mean,
                "mc_se": est.std_error,
                "z_score": zscore,
                "n_paths": est.n_paths,
                "seed": seed,
            }
        )
    return rows


def run_dividends_chisquare(seed: int = 42, n_paths: int = 10**5) -> dict:
    """Chi-square check that killed cumulative dividends at the barrier
    follow their geometric law."""
    from . import dividends as dv
    from .model import DiscountedModel
    from .scale import w_table

    _, two_point, _, _ = _registry_models()
    v = 65.0 / 72.0
    table = w_table(DiscountedModel(two_point, v), 10)
    theta = dv.dividends_law_at_barrier(table, 2)
    counts = dividend_count_samples(two_point, 2, v, 2, n_paths, seed, stream=1000)
    statistic, p_value = geometric_law_chisquare(counts, theta)
    return {
        "functional": "dividends_law_chisquare:two_point,b=2",
        "theta": theta,
        "statistic": statistic,
        "p_value": p_value,
        "n_paths": n_paths,
        "seed": seed,
    }
