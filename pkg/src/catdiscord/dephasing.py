"""
Local dephasing of both qubits and the resulting entanglement sudden death.

Each qubit goes through the phase-damping channel with Kraus operators
``E0 = diag(1, sqrt(1 - g))`` and ``E1 = diag(0, sqrt(g))``, where
``g = 1 - exp(-rate * t)``. On an X-state this leaves the diagonal alone
and multiplies both anti-diagonal entries by ``exp(-rate * t)``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .cat_damping import CatDampingParams, damped_bell_xstate
from .correlations import (
    DEFAULT_GRID,
    concurrence_wootters,
    wootters_margin,
    quantum_discord_numeric,
)
from .density import XMatrix4
from .errors import DomainError


@dataclass(frozen=True)
class DephasingParams:
    gamma_rate: float
    time: float

    def __post_init__(self):
        if not self.gamma_rate > 0:
            raise DomainError(f"gamma_rate must be positive, got {self.gamma_rate!r}")
        if not self.time >= 0:
            raise DomainError(f"time must be non-negative, got {self.time!r}")

    @property
    def decay(self) -> float:
        """Surviving coherence factor ``exp(-rate * t)``."""
        return math.exp(-self.gamma_rate * self.time)

    @property
    def gamma(self) -> float:
        return -math.expm1(-self.gamma_rate * self.time)


def kraus_operators(gamma: float) -> list[np.ndarray]:
    if not 0.0 <= gamma <= 1.0:
        raise DomainError("gamma must be in [0, 1]")
    return [
        np.diag([1.0, math.sqrt(1.0 - gamma)]).astype(complex),
        np.diag([0.0, math.sqrt(gamma)]).astype(complex),
    ]


def kraus_sum(rho: np.ndarray, gamma: float) -> np.ndarray:
    """Explicit ``sum_{mu,nu} (E_mu (x) E_nu) rho (E_mu (x) E_nu)^dagger``."""
    rho = np.asarray(rho, dtype=complex)
    ops = kraus_operators(gamma)
    out = np.zeros((4, 4), dtype=complex)
    for e_mu in ops:
        for e_nu in ops:
            k = np.kron(e_mu, e_nu)
            out += k @ rho @ k.conj().T
    return out


def dephase(X: XMatrix4, d: DephasingParams) -> XMatrix4:
    # each qubit contributes sqrt(1 - g) to every anti-diagonal coherence
    f = d.decay
    return XMatrix4(X.d1, X.d2, X.d3, X.d4, X.z14 * f, X.z23 * f)


def concurrence_t(params: CatDampingParams, d: DephasingParams) -> float:
    p, c = params.p, params.c
    pref = 0.5 * math.sqrt((1 - p * p) * (1 - params.pow(2 * params.tsq))) / (1 + p * p)
    return max(0.0, pref * (d.decay * (1 + c) - (1 - c)))


def sudden_death_time(params: CatDampingParams, gamma_rate: float) -> float:
    """Time after which the concurrence stays zero; ``inf`` when ``p**rsq == 1``."""
    if not gamma_rate > 0:
        raise DomainError("gamma_rate must be positive")
    c = params.c
    if c >= 1.0:
        return math.inf
    return (math.log1p(c) - math.log1p(-c)) / gamma_rate


def sudden_death_time_numeric(
    params: CatDampingParams, gamma_rate: float, tol: float = 1e-13, t_hi: float | None = None
) -> float:
    """Bisection for the zero of the Wootters concurrence of the evolved state.

    Independent of the closed-form threshold; ``t_hi`` defaults to a time
    doubled until the concurrence margin turns negative.
    """
    X0 = damped_bell_xstate(params)

    def margin(t):
        return wootters_margin(dephase(X0, DephasingParams(gamma_rate, t)))

    lo = 0.0
    if margin(lo) <= 0:
        return 0.0
    hi = t_hi if t_hi is not None else 1.0 / gamma_rate
    while margin(hi) > 0:
        lo, hi = hi, 2 * hi
        if hi > 1e6 / gamma_rate:
            return math.inf
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if margin(mid) > 0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


@dataclass(frozen=True)
class TrajectoryPoint:
    time: float
    gamma: float
    concurrence_closed: float
    concurrence: float
    discord: float


def trajectory(
    params: CatDampingParams,
    gamma_rate: float,
    times: Sequence[float],
    grid: tuple[int, int] = DEFAULT_GRID,
    tol: float = 1e-10,
) -> list[TrajectoryPoint]:
    times = [float(t) for t in times]
    if any(b < a for a, b in zip(times, times[1:])):
        raise DomainError("times must be sorted ascending")
    X0 = damped_bell_xstate(params)
    out = []
    for t in times:
        d = DephasingParams(gamma_rate, t)
        Xt = dephase(X0, d)
        report = quantum_discord_numeric(Xt, grid, tol)
        out.append(
            TrajectoryPoint(
                time=t,
                gamma=d.gamma,
                concurrence_closed=concurrence_t(params, d),
                concurrence=concurrence_wootters(Xt.to_array()),
                discord=report.discord,
            )
        )
    return out


def zero_discord_check(X: XMatrix4, tol: float = 1e-7, grid: tuple[int, int] = DEFAULT_GRID) -> bool:
    return quantum_discord_numeric(X, grid).discord <= tol
