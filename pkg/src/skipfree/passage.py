"""First-passage and ruin functionals built on the scale tables.

Conventions throughout: ruin means the walk drops below zero, which by
skip-freeness can only happen through a claim; upward passage hits its
target exactly. Negative starting points are treated as already ruined
and starting at or above an upper barrier as already absorbed there.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError, NoConvergence, OutOfTable
from .model import ClaimDistribution, DiscountedModel
from .scale import ScaleTable, _z_tail_terms

_IDENTITY_TOL = 1e-12
_RATIO_RTOL = 1e-10


def upcrossing_price(model: DiscountedModel, x: int, b: int) -> float:
    """E_x[v^tau] for the unrestricted first passage up to level b.

    Equals phi_v^(b - x) because each level climbed costs an
    independent factor phi_v; 1 when already at or above b.
    """
    if x >= b:
        return 1.0
    return model.phi_v ** float(b - x)


def two_sided_up(table: ScaleTable, x: int, upper: int) -> float:
    """E_x[v^tau; reach upper before ruin] = W(x) / W(upper)."""
    if upper < 0:
        raise DomainError("upper barrier must be nonnegative")
    if x >= upper:
        return 1.0
    return table.w_ratio(x, upper)


def deficit_gf(table: ScaleTable, x: int, b: int, w: float) -> float:
    """E_x[v^tau * w^(-X_tau); ruin before reaching b].

    Z(x, w) minus the two-sided passage price times Z(b, w); zero when
    the start is already at or above the upper level b.
    """
    if b < 0:
        raise DomainError("upper barrier must be nonnegative")
    if x >= b:
        return 0.0
    return table.z_at(x, w) - table.w_ratio(x, b) * table.z_at(b, w)


def expected_deficit(table: ScaleTable, x: int, b: int) -> float:
    """E_x[v^tau * X_tau; ruin before reaching b], a nonpositive number."""
    if b < 0:
        raise DomainError("upper barrier must be nonnegative")
    if x >= b:
        return 0.0
    return table.z1(x) - table.w_ratio(x, b) * table.z1(b)


def discounted_ruin(table: ScaleTable, x: int) -> float:
    """E_x[v^tau; ruin in finite time] for v < 1.

    Z(x) - alpha_v * W(x) with alpha_v = phi_v (1 - v) / (v (1 - phi_v)).
    """
    v, f = table.v, table.phi
    if v >= 1.0:
        raise DomainError("discounted ruin needs v < 1; see eventual_ruin")
    if x < 0:
        return 1.0
    alpha = f * (1.0 - v) / (v * (1.0 - f))
    return table.z(x) - alpha * table.w(x)


def eventual_ruin(table: ScaleTable, x: int) -> float:
    """Probability of ruin ever happening, for v = 1.

    1 - (1 - mean) * W(x) in the subcritical case; ruin is certain when
    the claim mean is at least 1.
    """
    if table.v != 1.0:
        raise DomainError("eventual ruin is the v = 1 case")
    if x < 0:
        return 1.0
    m = table.model.dist.mean
    if m >= 1.0:
        return 1.0
    return 1.0 - (1.0 - m) * table.w(x)


def ruin_limit_ratio(table: ScaleTable, w: float) -> float:
    """Limit of Z(b, w) / W(b) as b grows, taken at the table edge.

    Raises NoConvergence unless the last two ratios agree to 1e-10
    relative, so callers can trust the returned limit.
    """
    m = table.x_max
    if m < 2:
        raise NoConvergence("table too short to take the ratio limit")
    zw = table.zw_array(w)
    warr = table.w_array()
    r1 = float(zw[m] / warr[m])
    r0 = float(zw[m - 1] / warr[m - 1])
    if abs(r1 - r0) > _RATIO_RTOL * max(1.0, abs(r1)):
        raise NoConvergence(
            f"ratio Z(b,w)/W(b) still moving at b = {m}: {r0} vs {r1}"
        )
    return r1


def ruin_limit_ratio_series(model: DiscountedModel, w: float) -> float:
    """Closed form of the ratio limit, valid for 0 < w < phi_v.

    (pgf(w) - w/v) * phi_v / (phi_v - w); used to cross-check the
    table-edge limit.
    """
    f = model.phi_v
    if not 0.0 < w < f:
        raise DomainError(f"need 0 < w < phi_v = {f}; got w = {w}")
    return (model.dist.pgf(w) - w / model.v) * f / (f - w)


def discounted_ruin_gf(table: ScaleTable, x: int, w: float) -> float:
    """E_x[v^tau * w^(-X_tau); ruin in finite time], no upper barrier.

    Z(x, w) minus the ratio limit of Z(b, w) / W(b) times W(x).
    """
    if x <= -1:
        if not 0.0 < w <= 1.0:
            raise DomainError(f"transform argument {w} outside (0, 1]")
        return float(w) ** (-x)
    return table.z_at(x, w) - ruin_limit_ratio(table, w) * table.w(x)


@dataclass(frozen=True)
class RuinDP:
    """Exact finite-horizon ruin and survival probabilities.

    ruin[m, x] = P_x[ruin by time m] and survival[m, x] is its
    complement, for m = 0..n and x = 0..x_max.
    """

    n: int
    x_max: int
    ruin: np.ndarray
    survival: np.ndarray


def finite_time_ruin(dist: ClaimDistribution, n: int, x_max: int) -> RuinDP:
    """Dynamic program for ruin within n steps, exact in the claim law.

    Works backward in remaining horizon over a state band wide enough
    that no boundary truncation ever enters the stored grid. The
    complement identity ruin + survival = 1 is asserted to 1e-12.
    """
    if n < 0 or x_max < 0:
        raise DomainError("n and x_max must be nonnegative")
    top = x_max + n
    if dist.kind == "table":
        kernel = np.asarray(dist.pmf)
    else:
        kernel = dist.pmf_upto(top + 2)
    tails = np.array([dist.tail(x + 1) for x in range(top + 1)])
    surv = np.empty((n + 1, x_max + 1))
    ruin = np.empty((n + 1, x_max + 1))
    s = np.ones(top + 1)
    r = np.zeros(top + 1)
    surv[0] = s[: x_max + 1]
    ruin[0] = r[: x_max + 1]
    for m in range(1, n + 1):
        width = top - m
        s_new = np.convolve(kernel, s[: width + 2])[1 : width + 2]
        r_new = np.convolve(kernel, r[: width + 2])[1 : width + 2] + tails[: width + 1]
        s[: width + 1] = s_new
        r[: width + 1] = r_new
        surv[m] = s[: x_max + 1]
        ruin[m] = r[: x_max + 1]
    gap = float(np.max(np.abs(ruin + surv - 1.0)))
    if gap > _IDENTITY_TOL:
        raise NoConvergence(f"ruin + survival identity violated by {gap:.3e}")
    return RuinDP(n=n, x_max=x_max, ruin=ruin, survival=surv)


def killed_resolvent(table: ScaleTable, i: int, j: int, upper: int) -> float:
    """Expected discounted visits to j from i before leaving [0, upper-1].

    (W(upper - 1 - j) * W(i) / W(upper) - W(i - j - 1)) / v; zero when
    either state lies outside the band.
    """
    if not 1 <= upper <= table.x_max:
        raise DomainError("upper must lie inside the table")
    if not (0 <= i < upper and 0 <= j < upper):
        return 0.0
    val = table.w(upper - 1 - j) * table.w_ratio(i, upper) - table.w(i - j - 1)
    return val / table.v


def w_at_downcrossing(
    table: ScaleTable, x: int, b: int, upper: int | None = None
) -> float:
    """E_x[v^tau * W(X_tau)] at the first passage below level b.

    With an upper killing barrier the value is
    W(x) - W(x - b) * W(upper) / W(upper - b); without one the barrier
    is pushed to infinity and the ratio tends to phi_v^(-b).
    """
    if b < 0:
        raise DomainError("crossing level must be nonnegative")
    if x < b:
        return table.w(x)
    if upper is None:
        return table.w(x) - table.w(x - b) * table.phi ** float(-b)
    if x >= upper:
        return 0.0
    return table.w(x) - table.w(x - b) * table.w(upper) / table.w(upper - b)


def survival_double_transform(model: DiscountedModel, z: float) -> float:
    """Closed form of sum_n sum_x v^n z^x P_x[no ruin through n].

    (z / (1 - z) - phi_v / (1 - phi_v)) / (z - v * pgf(z)), valid for
    z in (0, 1) away from phi_v and for phi_v < 1.
    """
    f = model.phi_v
    if not 0.0 < z < 1.0 or z == f:
        raise DomainError(f"need z in (0, 1) distinct from phi_v; got {z}")
    if f >= 1.0:
        raise DomainError("transform diverges when phi_v = 1")
    num = z / (1.0 - z) - f / (1.0 - f)
    return num / (z - model.v * model.dist.pgf(z))


def ruin_double_transform(model: DiscountedModel, z: float) -> float:
    """Closed form of sum_n sum_x v^n z^x P_x[ruin by n], for v < 1."""
    if model.v >= 1.0:
        raise DomainError("double transform needs v < 1")
    return 1.0 / ((1.0 - z) * (1.0 - model.v)) - survival_double_transform(model, z)


def eventual_survival_transform(dist: ClaimDistribution, z: float) -> float:
    """Closed form of sum_x z^x P_x[no ruin ever]: (1 - mean)^+ / (pgf(z) - z)."""
    if not 0.0 < z < 1.0:
        raise DomainError(f"need z in (0, 1); got {z}")
    m = dist.mean
    if m >= 1.0:
        return 0.0
    return (1.0 - m) / (dist.pgf(z) - z)


def _stopped_dp(table: ScaleTable, x: int, n: int, w: float | None):
    """Mass evolution of the walk killed at ruin, with exact tail sums.

    Returns (alive mass vector over 0..x+n, accumulated discounted
    absorbed value). The absorbed value is zero when w is None and
    v^t * w^(-deficit) summed exactly otherwise.
    """
    model = table.model
    v = model.v
    levels = x + n + 1
    p = model.dist.pmf_upto(levels + 1)
    tails = _z_tail_terms(model, w, levels) if w is not None else None
    q = np.zeros(levels)
    q[x] = 1.0
    absorbed = 0.0
    disc = 1.0
    for _ in range(n):
        disc *= v
        new = np.zeros(levels)
        for i in np.flatnonzero(q):
            mi = q[i]
            top = i + 1
            new[top::-1] += mi * p[: top + 1]
            if tails is not None:
                absorbed += disc * mi * tails[i]
        q = new
    return q, absorbed, disc


def expected_stopped_w(table: ScaleTable, x: int, n: int) -> float:
    """Exact E_x[v^(n and tau) * W(X at n and tau)] over n steps.

    The stopped, discounted W sequence is a martingale, so the result
    should reproduce W(x) for every horizon; useful as an oracle.
    """
    if x < 0:
        return 0.0
    if n < 0:
        raise DomainError("horizon must be nonnegative")
    if table.x_max < x + n:
        raise OutOfTable(f"need the table up to x + n = {x + n}")
    q, _, disc = _stopped_dp(table, x, n, None)
    vals = np.array([table.w(j) for j in range(len(q))])
    return float(disc * np.dot(q, vals))


def expected_stopped_z(table: ScaleTable, x: int, w: float, n: int) -> float:
    """Exact E_x[v^(n and tau) * Z(X at n and tau, w)] over n steps."""
    if not 0.0 < w <= 1.0:
        raise DomainError(f"transform argument {w} outside (0, 1]")
    if x < 0:
        return float(w) ** (-x)
    if n < 0:
        raise DomainError("horizon must be nonnegative")
    if table.x_max < x + n:
        raise OutOfTable(f"need the table up to x + n = {x + n}")
    q, absorbed, disc = _stopped_dp(table, x, n, w)
    zw = table.zw_array(w)
    vals = zw[: len(q)]
    return float(disc * np.dot(q, vals) + absorbed)


# Interface aliases under longer descriptive names.
deficit_gf_two_sided = deficit_gf
expected_deficit_two_sided = expected_deficit
psi_vw = discounted_ruin_gf
