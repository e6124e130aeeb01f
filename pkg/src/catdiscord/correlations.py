"""
Mutual information, classical correlation, discord and concurrence.

Discord is ``D = S(A) + Smin - S(AB)`` where ``Smin`` is the smallest
average entropy of qubit B left after a projective measurement on qubit A.
Two independent routes are provided for the damped Bell cat family:

* closed forms, with ``Smin`` obtained from the Koashi-Winter relation as
  the entanglement of formation of the purifying complement ``rho_BC``;
* a direct search for ``Smin`` over measurement directions ``(theta, phi)``
  on any X-state (coarse grid, then Nelder-Mead refinement).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from scipy.optimize import minimize

from .cat_damping import CatDampingParams, damped_bell_xstate, rank2_decomposition
from .density import (
    SIGMA,
    BlochX,
    HermMatrix2,
    XMatrix4,
    binary_entropy,
    bloch_from_xstate,
    partial_trace,
    partial_trace_dense,
    von_neumann_entropy,
    xstate_eigenvalues,
)
from .errors import DegenerateError, DomainError

DISCORD_SLACK = 1e-9
DEFAULT_GRID = (181, 181)
_YY = np.kron(SIGMA[2], SIGMA[2])


@dataclass(frozen=True)
class MeasurementAngles:
    """Direction ``n = (sin t cos f, sin t sin f, cos t)`` of the projective basis on A.

    Outcome ``k`` projects onto ``(I + (-1)^k n.sigma)/2``.
    """

    theta: float
    phi: float = 0.0

    def __post_init__(self):
        theta = float(self.theta)
        if not (-1e-12 <= theta <= math.pi + 1e-12):
            raise DomainError(f"theta must lie in [0, pi], got {theta!r}")
        object.__setattr__(self, "theta", min(max(theta, 0.0), math.pi))
        object.__setattr__(self, "phi", float(self.phi) % (2 * math.pi))

    @classmethod
    def wrap(cls, theta: float, phi: float) -> "MeasurementAngles":
        """Fold arbitrary angles onto the canonical ranges (same projector pair)."""
        n = np.array(
            [math.sin(theta) * math.cos(phi), math.sin(theta) * math.sin(phi), math.cos(theta)]
        )
        t = math.acos(max(-1.0, min(1.0, n[2])))
        f = math.atan2(n[1], n[0]) if math.hypot(n[0], n[1]) > 0 else 0.0
        return cls(t, f)

    @property
    def direction(self) -> np.ndarray:
        st = math.sin(self.theta)
        return np.array([st * math.cos(self.phi), st * math.sin(self.phi), math.cos(self.theta)])

    def projectors(self) -> tuple[np.ndarray, np.ndarray]:
        n = self.direction
        ns = n[0] * SIGMA[1] + n[1] * SIGMA[2] + n[2] * SIGMA[3]
        return (SIGMA[0] + ns) / 2, (SIGMA[0] - ns) / 2


@dataclass(frozen=True)
class CorrelationReport:
    mutual_information: float
    classical_correlation: float
    discord: float
    smin: float
    concurrence: float
    optimal_angles: MeasurementAngles
    entropy_a: float = field(default=math.nan)
    entropy_b: float = field(default=math.nan)
    entropy_ab: float = field(default=math.nan)


# -- closed forms for the damped Bell cat family -----------------------------


def _lambda_b_plus(params: CatDampingParams) -> float:
    p = params.p
    return (1 + params.pt) * (1 + params.pow(params.rsq + 1)) / (2 + 2 * p * p)


def mutual_information(params: CatDampingParams) -> float:
    p = params.p
    lam_a = (1 + p) ** 2 / (2 + 2 * p * p)
    lam1 = rank2_decomposition(params).values[0]
    return float(binary_entropy(lam_a) + binary_entropy(_lambda_b_plus(params)) - binary_entropy(lam1))


def bc_concurrence_closed(params: CatDampingParams) -> float:
    """Concurrence of ``rho_BC``: ``sqrt(p^2 (1 - p^2rsq)(1 - p^2tsq)) / (1 + p^2)``."""
    p = params.p
    val = p * p * (1 - params.pow(2 * params.rsq)) * (1 - params.pow(2 * params.tsq))
    return math.sqrt(max(val, 0.0)) / (1 + p * p)


def entanglement_of_formation(concurrence: float) -> float:
    """Two-qubit entanglement of formation from the concurrence."""
    c = min(max(float(concurrence), 0.0), 1.0)
    return float(binary_entropy(0.5 + 0.5 * math.sqrt(max(0.0, 1 - c * c))))


def koashi_winter_smin(params: CatDampingParams) -> float:
    return entanglement_of_formation(bc_concurrence_closed(params))


def _sqrt_term(params: CatDampingParams) -> float:
    p = params.p
    inner = 1 + p * p + params.pow(2 * params.rsq + 2) + params.pow(2 * params.tsq + 2)
    return 0.5 + 0.5 * math.sqrt(inner) / (1 + p * p)


def classical_correlation(params: CatDampingParams) -> float:
    p = params.p
    first = 0.5 + 0.5 * (params.pt + params.pow(params.rsq + 1)) / (1 + p * p)
    val = float(binary_entropy(first) - binary_entropy(min(_sqrt_term(params), 1.0)))
    return _clamp_small(val)


def quantum_discord_closed(params: CatDampingParams) -> float:
    p = params.p
    first = 0.5 + p / (1 + p * p)
    last = 0.5 + 0.5 * (params.c + params.pow(params.tsq + 1)) / (1 + p * p)
    val = float(
        binary_entropy(min(first, 1.0))
        + binary_entropy(min(_sqrt_term(params), 1.0))
        - binary_entropy(min(last, 1.0))
    )
    return _clamp_small(val)


def concurrence_closed(params: CatDampingParams) -> float:
    p = params.p
    return params.c * math.sqrt((1 - p * p) * (1 - params.pow(2 * params.tsq))) / (1 + p * p)


def _clamp_small(val: float) -> float:
    return 0.0 if -DISCORD_SLACK < val < 0.0 else val


# -- purification -------------------------------------------------------------


@dataclass(frozen=True)
class Purification:
    """Pure three-qubit state on ``A (x) B (x) C``; index ``4a + 2b + c``."""

    amplitudes: np.ndarray

    def tensor(self) -> np.ndarray:
        return np.asarray(self.amplitudes).reshape(2, 2, 2)

    def _reduce(self, spec: str) -> np.ndarray:
        psi = self.tensor()
        m = np.einsum(spec, psi, psi.conj())
        return m.reshape(4, 4)

    def rho_ab(self) -> np.ndarray:
        return self._reduce("abc,dec->abde")

    def rho_bc(self) -> np.ndarray:
        return self._reduce("abc,ade->bcde")

    def rho_ac(self) -> np.ndarray:
        return self._reduce("abc,dbe->acde")


def purify(params: CatDampingParams) -> Purification:
    """``sqrt(l1)|psi1>|u> + sqrt(l2)|psi2>|v>`` with ancilla qubit C."""
    spec = rank2_decomposition(params)
    lam1, lam2 = spec.values
    psi = np.kron(math.sqrt(lam1) * spec.vectors[:, 0], [1, 0])
    psi = psi + np.kron(math.sqrt(max(lam2, 0.0)) * spec.vectors[:, 1], [0, 1])
    return Purification(psi.astype(complex))


def rho_bc(params: CatDampingParams) -> XMatrix4:
    return XMatrix4.from_array(purify(params).rho_bc())


# -- measurement-conditioned entropy -----------------------------------------


def conditional_states(B: BlochX, m: MeasurementAngles):
    """Outcome probabilities and conditional states of B for a measurement on A.

    Returns ``((p0, rho0), (p1, rho1))``. Raises :class:`DegenerateError`
    if an outcome has probability below ``1e-14``.
    """
    n = m.direction
    out = []
    for sign in (1.0, -1.0):
        s1, s2, s3 = sign * n
        pk = 0.5 * (1 + B.R30 * s3)
        if pk < 1e-14:
            raise DegenerateError(f"measurement outcome with probability {pk:.3e}")
        q = 0.25 / pk
        rho = HermMatrix2(
            a11=q * ((1 + B.R03) + (B.R30 + B.R33) * s3),
            a22=q * ((1 - B.R03) + (B.R30 - B.R33) * s3),
            a12=complex(q * B.R11 * s1, -q * B.R22 * s2),
        )
        out.append((pk, rho))
    return tuple(out)


def _conditional_entropy_array(B: BlochX, theta, phi) -> np.ndarray:
    """Vectorised average conditional entropy over broadcast angle arrays."""
    st = np.sin(theta)
    s1 = st * np.cos(phi)
    s2 = st * np.sin(phi)
    s3 = np.cos(theta) + 0.0 * s1
    total = np.zeros_like(s1, dtype=float)
    for sign in (1.0, -1.0):
        den = 1 + sign * B.R30 * s3
        pk = 0.5 * den
        safe = np.where(den > 2e-14, den, 1.0)
        # Bloch vector of the normalized conditional state
        rx = sign * B.R11 * s1 / safe
        ry = sign * B.R22 * s2 / safe
        rz = (B.R03 + sign * B.R33 * s3) / safe
        r = np.minimum(np.sqrt(rx * rx + ry * ry + rz * rz), 1.0)
        total += np.where(den > 2e-14, pk * binary_entropy(0.5 + 0.5 * r), 0.0)
    return total


def conditional_entropy(B: BlochX, m: MeasurementAngles) -> float:
    """``sum_k p_k H(1/2 + 1/2 sqrt(1 - 4 det rho_k))``; zero-probability branches drop out."""
    return float(_conditional_entropy_array(B, np.array(m.theta), np.array(m.phi)))


def minimize_conditional_entropy(
    B: BlochX, grid: tuple[int, int] = DEFAULT_GRID, refine_tol: float = 1e-10
) -> tuple[float, MeasurementAngles]:
    """Global grid search over ``(theta, phi)`` followed by local refinement.

    The grid includes both poles (sampled once each) and ``theta = pi/2``
    when ``n_theta`` is odd. Ties go to the smaller theta, then smaller phi.
    """
    n_theta, n_phi = grid
    if n_theta < 3 or n_phi < 1:
        raise DomainError("grid too coarse")
    thetas = np.linspace(0.0, math.pi, n_theta)
    phis = np.linspace(0.0, 2 * math.pi, n_phi, endpoint=False)
    vals = _conditional_entropy_array(B, thetas[:, None], phis[None, :])
    vals[0, 1:] = np.inf
    vals[-1, 1:] = np.inf
    i, j = np.unravel_index(int(np.argmin(vals)), vals.shape)
    best_val = float(vals[i, j])
    best = (float(thetas[i]), float(phis[j]))

    step = math.pi / (n_theta - 1)
    simplex = np.array([best, (best[0] + step, best[1]), (best[0], best[1] + step)])
    res = minimize(
        lambda x: float(_conditional_entropy_array(B, np.array(x[0]), np.array(x[1]))),
        np.array(best),
        method="Nelder-Mead",
        options={"xatol": refine_tol, "fatol": 1e-14, "initial_simplex": simplex, "maxiter": 1000},
    )
    if res.fun < best_val:
        best_val = float(res.fun)
        best = (float(res.x[0]), float(res.x[1]))
    return max(best_val, 0.0), MeasurementAngles.wrap(*best)


# -- generic X-state evaluation -----------------------------------------------


def real_gauge(X: XMatrix4) -> XMatrix4:
    """Remove the anti-diagonal phases with a local diagonal unitary.

    ``diag(1, e^ia) (x) diag(1, e^ib)`` with ``a + b = arg z14`` and
    ``a - b = arg z23`` leaves every local-unitary invariant (entropies,
    discord, concurrence) unchanged.
    """
    return XMatrix4(X.d1, X.d2, X.d3, X.d4, complex(abs(X.z14)), complex(abs(X.z23)))


def concurrence_xstate(X: XMatrix4) -> float:
    val = 2.0 * max(
        0.0,
        abs(X.z14) - math.sqrt(max(X.d2 * X.d3, 0.0)),
        abs(X.z23) - math.sqrt(max(X.d1 * X.d4, 0.0)),
    )
    return min(val, 1.0)


def wootters_margin(rho) -> float:
    """Signed Wootters quantity ``s1 - s2 - s3 - s4`` before clipping at zero.

    Uses the factorization ``rho = W W^dagger``: the square roots of the
    eigenvalues of ``rho (Y(x)Y) rho* (Y(x)Y)`` are the singular values of
    ``W^T (Y(x)Y) W``. This avoids square roots of near-zero eigenvalues of
    the non-Hermitian product.
    """
    if isinstance(rho, XMatrix4):
        rho = rho.to_array()
    rho = np.asarray(rho, dtype=complex)
    rho = 0.5 * (rho + rho.conj().T)
    w, v = np.linalg.eigh(rho)
    W = v * np.sqrt(np.where(w > 1e-15, w, 0.0))
    s = np.sort(np.linalg.svd(W.T @ _YY @ W, compute_uv=False))[::-1]
    return float(s[0] - s[1:].sum())


def concurrence_wootters(rho) -> float:
    """Wootters concurrence of a general two-qubit density (array or XMatrix4)."""
    return max(0.0, wootters_margin(rho))


def quantum_discord_numeric(
    X: XMatrix4, grid: tuple[int, int] = DEFAULT_GRID, tol: float = 1e-10
) -> CorrelationReport:
    """Full correlation report for an X-state, with ``Smin`` found numerically.

    Complex anti-diagonals are first rotated real (see :func:`real_gauge`);
    ``optimal_angles`` refer to that frame.
    """
    Xr = real_gauge(X) if not X.is_real else X
    s_ab = von_neumann_entropy(xstate_eigenvalues(Xr))
    s_a = partial_trace(Xr, "A").entropy()
    s_b = partial_trace(Xr, "B").entropy()
    smin, angles = minimize_conditional_entropy(bloch_from_xstate(Xr), grid, tol)
    return CorrelationReport(
        mutual_information=_clamp_small(s_a + s_b - s_ab),
        classical_correlation=_clamp_small(s_b - smin),
        discord=_clamp_small(s_a + smin - s_ab),
        smin=smin,
        concurrence=concurrence_xstate(Xr),
        optimal_angles=angles,
        entropy_a=s_a,
        entropy_b=s_b,
        entropy_ab=s_ab,
    )


def closed_form_report(params: CatDampingParams, angles: Optional[MeasurementAngles] = None) -> CorrelationReport:
    """Report assembled from the closed forms only."""
    X = damped_bell_xstate(params)
    s_b = partial_trace(X, "B").entropy()
    smin = koashi_winter_smin(params)
    return CorrelationReport(
        mutual_information=mutual_information(params),
        classical_correlation=classical_correlation(params),
        discord=quantum_discord_closed(params),
        smin=smin,
        concurrence=concurrence_closed(params),
        optimal_angles=angles or MeasurementAngles(math.pi / 2, 0.0),
        entropy_a=partial_trace(X, "A").entropy(),
        entropy_b=s_b,
        entropy_ab=von_neumann_entropy(rank2_decomposition(params)),
    )


def projective_update(rho: np.ndarray, m: MeasurementAngles):
    """Brute-force ``(M_k (x) I) rho (M_k (x) I)`` on the dense matrix.

    Returns ``[(p_k, rho_k^B), ...]`` with ``rho_k^B`` a 2x2 array.
    """
    rho = np.asarray(rho, dtype=complex)
    out = []
    for proj in m.projectors():
        big = np.kron(proj, SIGMA[0])
        post = big @ rho @ big
        pk = float(np.trace(post).real)
        out.append((pk, partial_trace_dense(post, "B") / pk if pk > 0 else None))
    return out
