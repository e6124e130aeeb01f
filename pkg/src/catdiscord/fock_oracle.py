"""
Truncated Fock-space construction of the damped cat states.

This is the independent check for :mod:`catdiscord.cat_damping`. Coherent
states are built as explicit number-basis vectors, the beam splitter is
applied through the exact rule ``B|beta, 0> = |beta t, beta r>``, the loss
mode is traced out by summing over its Fock projections, and the surviving
modes are projected onto the even/odd cat bases built from the same
vectors. No closed-form matrix entry is used.
"""
from __future__ import annotations

import enum
import math
import warnings
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.linalg import expm
from scipy.special import gammaln

from .cat_damping import QSuperposition, TwoModeSuperposition
from .density import HermMatrix2, XMatrix4
from .errors import DegenerateError, DomainError, TruncationWarning

DEFAULT_DIM = 40
DEFICIT_TOL = 1e-12


class ModeLabel(enum.Enum):
    A = "A"
    B = "B"
    LOSS = "Loss"


@dataclass(frozen=True)
class FockVector:
    amplitudes: np.ndarray

    @property
    def dim(self) -> int:
        return int(self.amplitudes.shape[0])

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    @property
    def deficit(self) -> float:
        """Probability weight lost to the truncation, ``1 - <v|v>``."""
        return float(1.0 - np.vdot(self.amplitudes, self.amplitudes).real)

    def inner(self, other: "FockVector") -> complex:
        """``<self|other>``."""
        return complex(np.vdot(self.amplitudes, other.amplitudes))

    def __add__(self, other: "FockVector") -> "FockVector":
        return FockVector(self.amplitudes + other.amplitudes)

    def __sub__(self, other: "FockVector") -> "FockVector":
        return FockVector(self.amplitudes - other.amplitudes)

    def __mul__(self, scalar) -> "FockVector":
        return FockVector(self.amplitudes * scalar)

    __rmul__ = __mul__


def recommended_dim(alpha_mag: float) -> int:
    return 4 * math.ceil(alpha_mag**2) + 20


def truncation_bound(alpha_mag: float, dim: int) -> float:
    """Leading tail term ``exp(-|a|^2) |a|^(2 dim) / dim!`` of the lost weight."""
    x = alpha_mag**2
    if x == 0:
        return 0.0
    return math.exp(-x + dim * math.log(x) - math.lgamma(dim + 1))


def coherent_fock(alpha: complex, dim: int = DEFAULT_DIM) -> FockVector:
    """``exp(-|a|^2/2) sum_n a^n / sqrt(n!) |n>`` for ``n < dim``."""
    if dim < 1:
        raise DomainError("dim must be positive")
    alpha = complex(alpha)
    n = np.arange(dim)
    r = abs(alpha)
    if r == 0:
        amps = np.zeros(dim, dtype=complex)
        amps[0] = 1.0
        return FockVector(amps)
    log_mag = -0.5 * r * r + n * math.log(r) - 0.5 * gammaln(n + 1)
    amps = np.exp(log_mag) * np.exp(1j * n * np.angle(alpha))
    vec = FockVector(amps)
    if vec.deficit > DEFICIT_TOL:
        warnings.warn(
            f"coherent state |{alpha}> truncated at dim={dim} loses {vec.deficit:.2e}",
            TruncationWarning,
            stacklevel=2,
        )
    return vec


def beam_splitter_n0(n: int, xi: complex) -> np.ndarray:
    """Amplitudes of ``B|n, 0>`` on ``|n - m, m>``, ``m = 0..n``, with ``xi = r/t``."""
    if n < 0:
        raise DomainError("photon number must be non-negative")
    xi = complex(xi)
    m = np.arange(n + 1)
    log_binom = 0.5 * (gammaln(n + 1) - gammaln(n - m + 1) - gammaln(m + 1))
    pref = (1 + abs(xi) ** 2) ** (-n / 2)
    return pref * np.exp(log_binom) * xi**m


def beam_splitter_unitary_n(n: int, theta: float) -> np.ndarray:
    """``exp(theta/2 (a1 a2^+ - a1^+ a2))`` on the ``n``-photon block.

    The block is spanned by ``|n - m, m>``; the generator conserves the
    total photon number so this restriction is exact.
    """
    g = np.zeros((n + 1, n + 1))
    for m in range(n):
        # a1 a2^+ |n-m, m> = sqrt((n-m)(m+1)) |n-m-1, m+1>
        amp = math.sqrt((n - m) * (m + 1))
        g[m + 1, m] += amp
        g[m, m + 1] -= amp
    return expm(0.5 * theta * g)


def qubit_basis(alpha_mag: float, dim: int = DEFAULT_DIM) -> tuple[FockVector, FockVector]:
    """Even and odd cat vectors ``u, v`` with ``|a> = a u + b v``, ``|-a> = a u - b v``."""
    p = math.exp(-2.0 * alpha_mag**2)
    a = math.sqrt((1 + p) / 2)
    b = math.sqrt((1 - p) / 2)
    if b < 1e-8:
        raise DegenerateError(f"odd cat vector undefined for |alpha| = {alpha_mag}")
    plus = coherent_fock(alpha_mag, dim)
    minus = coherent_fock(-alpha_mag, dim)
    return (plus + minus) * (1 / (2 * a)), (plus - minus) * (1 / (2 * b))


@dataclass(frozen=True)
class OracleOutput:
    """Reduced qubit density, renormalized, plus the trace lost before renormalizing."""

    matrix: np.ndarray
    deficit: float


def _coordinates(basis, vec: FockVector) -> np.ndarray:
    return np.array([b.inner(vec) for b in basis])


def _reduced_density(terms, bases, loss_basis: Optional[np.ndarray]) -> OracleOutput:
    """Trace out the loss mode of ``sum_k coef_k |beta_k1> ... |beta_kn> |loss_k>``.

    ``terms`` is a list of ``(coef, [kept-mode FockVector, ...], loss FockVector)``;
    ``bases`` holds the qubit basis for each kept mode. The loss mode is traced in
    the Fock basis, or in the orthonormal basis given by the columns of
    ``loss_basis``.
    """
    phi = None
    for coef, kept, loss in terms:
        coords = np.array([1.0 + 0j])
        for basis, vec in zip(bases, kept):
            coords = np.kron(coords, _coordinates(basis, vec))
        loss_amps = loss.amplitudes
        if loss_basis is not None:
            loss_amps = loss_basis.conj().T @ loss_amps
        contrib = coef * np.outer(coords, loss_amps)
        phi = contrib if phi is None else phi + contrib
    rho = phi @ phi.conj().T
    tr = float(np.trace(rho).real)
    return OracleOutput(rho / tr, 1.0 - tr)


def _splitter_terms(alpha_mag: float, rsq: float):
    if not 0.0 <= rsq <= 1.0:
        raise DomainError("rsq must lie in [0, 1]")
    return alpha_mag * math.sqrt(1.0 - rsq), alpha_mag * math.sqrt(rsq)


def damped_bell_matrix(
    alpha_mag: float, rsq: float, dim: int = DEFAULT_DIM, loss_basis: Optional[np.ndarray] = None
) -> OracleOutput:
    """``(|a, at, ar> + |-a, -at, -ar>)/sqrt(N)`` with the loss mode traced out."""
    at, ar = _splitter_terms(alpha_mag, rsq)
    coef = 1.0 / math.sqrt(2.0 * (1.0 + math.exp(-4.0 * alpha_mag**2)))
    terms = [
        (coef, [coherent_fock(s * alpha_mag, dim), coherent_fock(s * at, dim)], coherent_fock(s * ar, dim))
        for s in (1, -1)
    ]
    bases = [qubit_basis(alpha_mag, dim), _qubit_basis_or_trivial(at, dim)]
    return _reduced_density(terms, bases, loss_basis)


def _qubit_basis_or_trivial(alpha_mag: float, dim: int):
    # full loss leaves the vacuum; the odd vector is then irrelevant but must exist
    if alpha_mag == 0.0:
        vac = coherent_fock(0.0, dim)
        odd = np.zeros(dim, dtype=complex)
        odd[1] = 1.0
        return vac, FockVector(odd)
    return qubit_basis(alpha_mag, dim)


def damped_bell_oracle(alpha_mag: float, rsq: float, dim: int = DEFAULT_DIM) -> XMatrix4:
    return XMatrix4.from_array(damped_bell_matrix(alpha_mag, rsq, dim).matrix, atol=1e-10)


def _check_alpha(p: float, alpha_mag: float):
    if abs(p - math.exp(-2 * alpha_mag**2)) > 1e-12:
        raise DomainError(f"overlap p={p} does not match |alpha|={alpha_mag}")


def damped_single_mode_matrix(
    qs: QSuperposition, alpha_mag: float, rsq: float, dim: int = DEFAULT_DIM
) -> OracleOutput:
    _check_alpha(qs.p, alpha_mag)
    at, ar = _splitter_terms(alpha_mag, rsq)
    scale = 1.0 / math.sqrt(qs.norm)
    terms = [
        (scale * qs.a, [coherent_fock(-at, dim)], coherent_fock(-ar, dim)),
        (scale * qs.b, [coherent_fock(at, dim)], coherent_fock(ar, dim)),
    ]
    return _reduced_density(terms, [_qubit_basis_or_trivial(at, dim)], None)


def damped_single_mode_oracle(
    qs: QSuperposition, alpha_mag: float, rsq: float, dim: int = DEFAULT_DIM
) -> HermMatrix2:
    return HermMatrix2.from_array(damped_single_mode_matrix(qs, alpha_mag, rsq, dim).matrix, atol=1e-10)


def damped_two_mode_oracle(
    tms: TwoModeSuperposition, alpha_mag: float, rsq: float, dim: int = DEFAULT_DIM
) -> np.ndarray:
    """Dense 4x4 density of the damped two-mode superposition (second mode damped)."""
    _check_alpha(tms.p, alpha_mag)
    at, ar = _splitter_terms(alpha_mag, rsq)
    w = tms.omega
    scale = 1.0 / math.sqrt(tms.norm)
    coefs = {1: scale * math.sqrt(w), -1: scale * np.exp(1j * tms.chi_phase) * math.sqrt(1 - w)}
    terms = [
        (coefs[s], [coherent_fock(s * alpha_mag, dim), coherent_fock(s * at, dim)], coherent_fock(s * ar, dim))
        for s in (1, -1)
    ]
    bases = [qubit_basis(alpha_mag, dim), _qubit_basis_or_trivial(at, dim)]
    return _reduced_density(terms, bases, None).matrix
