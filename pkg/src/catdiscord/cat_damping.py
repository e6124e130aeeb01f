"""
Coherent-state superpositions after beam-splitter amplitude damping.

A coherent amplitude ``alpha`` enters one port of a beam splitter with
transmission ``t`` and reflection ``r`` (``t**2 + r**2 = 1``); the vacuum
enters the other. The reflected light is lost. Everything is parametrized
by the overlap ``p = <-alpha|alpha> = exp(-2|alpha|^2)`` and ``rsq = r**2``,
which are the only two numbers appearing in the resulting qubit matrices.

The qubit mapping for amplitude ``beta`` uses the even/odd cat basis

    |beta>  = a u + b v,     |-beta> = a u - b v,
    a = sqrt((1 + <-beta|beta>)/2),  b = sqrt((1 - <-beta|beta>)/2).

Mode A keeps amplitude ``alpha``; the damped mode B has ``alpha t``, whose
overlap is ``p**tsq``. Tracing out the loss mode leaves the cross terms
weighted by ``c = <-alpha r|alpha r> = p**rsq``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .density import HermMatrix2, Spectrum, XMatrix4, BlochX
from .errors import DegenerateError, DomainError


def _unit_interval(name: str, value: float) -> float:
    value = float(value)
    if not (0.0 <= value <= 1.0) or math.isnan(value):
        raise DomainError(f"{name} must lie in [0, 1], got {value!r}")
    return value


@dataclass(frozen=True)
class CatDampingParams:
    """Overlap ``p`` of the cat components and reflected power fraction ``rsq``.

    ``p**0`` is taken as 1 even for ``p = 0``, so ``rsq = 0`` is always the
    undamped pure state.
    """

    p: float
    rsq: float

    def __post_init__(self):
        object.__setattr__(self, "p", _unit_interval("p", self.p))
        object.__setattr__(self, "rsq", _unit_interval("rsq", self.rsq))

    @classmethod
    def from_alpha(cls, alpha_mag: float, rsq: float) -> "CatDampingParams":
        if alpha_mag < 0:
            raise DomainError("alpha_mag must be non-negative")
        return cls(math.exp(-2.0 * alpha_mag**2), rsq)

    @classmethod
    def from_beam_splitter_angle(cls, alpha_mag: float, theta: float) -> "CatDampingParams":
        """Use the splitter angle; ``r = sin(theta/2)``."""
        return cls.from_alpha(alpha_mag, math.sin(0.5 * theta) ** 2)

    @property
    def alpha_mag(self) -> float:
        if self.p == 0.0:
            return math.inf
        return math.sqrt(-0.5 * math.log(self.p))

    @property
    def tsq(self) -> float:
        return 1.0 - self.rsq

    def pow(self, exponent: float) -> float:
        """``p**exponent`` with ``0**0 = 1``."""
        if exponent == 0.0:
            return 1.0
        return self.p**exponent

    @property
    def c(self) -> float:
        """Overlap of the two lost components, ``p**rsq``."""
        return self.pow(self.rsq)

    @property
    def pt(self) -> float:
        """Overlap of the transmitted components, ``p**tsq``."""
        return self.pow(self.tsq)

    @property
    def a_alpha(self) -> float:
        return math.sqrt((1.0 + self.p) / 2.0)

    @property
    def b_alpha(self) -> float:
        return math.sqrt((1.0 - self.p) / 2.0)

    @property
    def a_alphat(self) -> float:
        return math.sqrt((1.0 + self.pt) / 2.0)

    @property
    def b_alphat(self) -> float:
        return math.sqrt((1.0 - self.pt) / 2.0)

    @property
    def norm(self) -> float:
        """Squared norm ``2(1 + p**2)`` of ``|alpha, alpha> + |-alpha, -alpha>``."""
        return 2.0 * (1.0 + self.p**2)


def damped_bell_xstate(params: CatDampingParams) -> XMatrix4:
    """Qubit-mapped density of the Bell cat-state after damping mode B."""
    c = params.c
    a, b = params.a_alpha, params.b_alpha
    at, bt = params.a_alphat, params.b_alphat
    k = 2.0 / params.norm
    cross = a * at * b * bt
    return XMatrix4(
        d1=k * (1 + c) * a * a * at * at,
        d2=k * (1 - c) * a * a * bt * bt,
        d3=k * (1 - c) * b * b * at * at,
        d4=k * (1 + c) * b * b * bt * bt,
        z14=complex(k * (1 + c) * cross),
        z23=complex(k * (1 - c) * cross),
    )


def bloch_correlations(params: CatDampingParams) -> BlochX:
    """Closed-form Bloch coefficients of :func:`damped_bell_xstate`."""
    p, tsq = params.p, params.tsq
    den = 1.0 + p * p
    r11 = math.sqrt((1 - p * p) * (1 - params.pow(2 * tsq))) / den
    return BlochX(
        R30=2 * p / den,
        R03=(params.pow(tsq) + params.pow(2 - tsq)) / den,
        R11=r11,
        R22=-params.pow(1 - tsq) * r11,
        R33=(params.pow(1 + tsq) + params.pow(1 - tsq)) / den,
    )


def rank2_decomposition(params: CatDampingParams) -> Spectrum:
    """The two nonzero eigenpairs of the damped Bell state.

    Eigenvectors are columns in the ``|uu>, |uv>, |vu>, |vv>`` basis; the
    first spans the even-parity pair, the second the odd-parity pair.
    """
    p = params.p
    c, pt1 = params.c, params.pow(params.tsq + 1)
    den = 2.0 + 2.0 * p * p
    lam1 = (1 + c) * (1 + pt1) / den
    lam2 = (1 - c) * (1 - pt1) / den
    a, b = params.a_alpha, params.b_alpha
    at, bt = params.a_alphat, params.b_alphat
    psi1 = np.array([a * at, 0, 0, b * bt], dtype=complex)
    psi2 = np.array([0, a * bt, b * at, 0], dtype=complex)
    psi1 /= np.linalg.norm(psi1)
    n2 = np.linalg.norm(psi2)
    # at p = 1 the odd branch vanishes together with its weight
    psi2 = psi2 / n2 if n2 > 0 else np.array([0, 1, 0, 0], dtype=complex)
    # lam1 >= lam2 always, so the descending sort keeps psi1 first
    return Spectrum((lam1, lam2), np.column_stack([psi1, psi2]))


@dataclass(frozen=True)
class QSuperposition:
    """``(a|-alpha> + b|alpha>)/sqrt(N)`` with ``|a|^2 + |b|^2 = 1``."""

    a: complex
    b: complex
    p: float

    def __post_init__(self):
        object.__setattr__(self, "a", complex(self.a))
        object.__setattr__(self, "b", complex(self.b))
        object.__setattr__(self, "p", _unit_interval("p", self.p))
        if abs(abs(self.a) ** 2 + abs(self.b) ** 2 - 1.0) > 1e-12:
            raise DomainError("amplitudes must satisfy |a|^2 + |b|^2 = 1")

    @property
    def norm(self) -> float:
        return 1.0 + 2.0 * self.p * (self.a * self.b.conjugate()).real


def _cat_components(overlap: float) -> tuple[np.ndarray, np.ndarray]:
    """Coordinates of ``|beta>`` and ``|-beta>`` in the ``(u, v)`` basis."""
    a = math.sqrt((1.0 + overlap) / 2.0)
    b = math.sqrt((1.0 - overlap) / 2.0)
    return np.array([a, b], dtype=complex), np.array([a, -b], dtype=complex)


def damped_single_mode(qs: QSuperposition, rsq: float) -> HermMatrix2:
    """2x2 density of ``|Q_alpha>`` after damping, in the ``(u_at, v_at)`` basis."""
    params = CatDampingParams(qs.p, rsq)
    n = qs.norm
    if n <= 1e-14:
        raise DegenerateError(f"superposition normalization {n:.3e} vanishes")
    plus, minus = _cat_components(params.pt)
    c = params.c
    rho = (
        abs(qs.a) ** 2 * np.outer(minus, minus.conj())
        + abs(qs.b) ** 2 * np.outer(plus, plus.conj())
        + c * qs.a * qs.b.conjugate() * np.outer(minus, plus.conj())
        + c * qs.a.conjugate() * qs.b * np.outer(plus, minus.conj())
    ) / n
    return HermMatrix2.from_array(rho)


@dataclass(frozen=True)
class TwoModeSuperposition:
    """``sqrt(w)|alpha, alpha> + exp(i phase) sqrt(1-w)|-alpha, -alpha>``, normalized."""

    omega: float
    chi_phase: float
    p: float

    def __post_init__(self):
        object.__setattr__(self, "omega", _unit_interval("omega", self.omega))
        object.__setattr__(self, "chi_phase", float(self.chi_phase))
        object.__setattr__(self, "p", _unit_interval("p", self.p))
        if self.norm <= 1e-14:
            raise DegenerateError("two-mode superposition has vanishing norm")

    @property
    def norm(self) -> float:
        """Squared norm of the unnormalized superposition."""
        w = self.omega
        return 1.0 + 2.0 * math.sqrt(w * (1 - w)) * math.cos(self.chi_phase) * self.p**2


def damped_two_mode(tms: TwoModeSuperposition, rsq: float) -> np.ndarray:
    """4x4 density after damping the second mode, in ``(u_a, v_a) x (u_at, v_at)``.

    Unequal weights or a non-real phase populate entries outside the X
    pattern, so the result is a dense array rather than an :class:`XMatrix4`.
    """
    params = CatDampingParams(tms.p, rsq)
    a_plus, a_minus = _cat_components(params.p)
    b_plus, b_minus = _cat_components(params.pt)
    e_plus = np.kron(a_plus, b_plus)
    e_minus = np.kron(a_minus, b_minus)
    w = tms.omega
    cross = params.c * math.sqrt(w * (1 - w)) * np.exp(-1j * tms.chi_phase)
    rho = (
        w * np.outer(e_plus, e_plus.conj())
        + (1 - w) * np.outer(e_minus, e_minus.conj())
        + cross * np.outer(e_plus, e_minus.conj())
        + np.conj(cross) * np.outer(e_minus, e_plus.conj())
    )
    return rho / tms.norm
