"""
Small dense Hermitian algebra for one and two qubits.

Everything here works on 2x2 and 4x4 matrices only. The two-qubit states
of interest have the X pattern (nonzero entries on the diagonal and the
anti-diagonal), so they get a dedicated container with closed-form
eigenvalues, marginals and a Bloch-coefficient view.

Entropies are in bits throughout.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Literal, Optional

import numpy as np

from .errors import DomainError, PositivityError

#: Slack below zero tolerated for eigenvalues of a density operator.
EIG_SLACK = 1e-10
#: Slack tolerated for trace normalization and for probabilities.
TRACE_SLACK = 1e-12

SIGMA = (
    np.eye(2, dtype=complex),
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]], dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
)


def binary_entropy(x):
    """Shannon entropy ``H(x) = -x log2 x - (1-x) log2 (1-x)`` in bits.

    Accepts a scalar or an array. Values within ``1e-12`` outside ``[0, 1]``
    are clamped; anything further out raises :class:`DomainError`.
    """
    arr = np.asarray(x, dtype=float)
    if np.any(arr < -TRACE_SLACK) or np.any(arr > 1 + TRACE_SLACK) or np.any(np.isnan(arr)):
        raise DomainError(f"binary entropy argument outside [0, 1]: {x!r}")
    arr = np.clip(arr, 0.0, 1.0)
    q = 1.0 - arr
    with np.errstate(divide="ignore", invalid="ignore"):
        h = -np.where(arr > 0, arr * np.log2(np.where(arr > 0, arr, 1.0)), 0.0)
        h -= np.where(q > 0, q * np.log2(np.where(q > 0, q, 1.0)), 0.0)
    if h.ndim == 0:
        return float(h)
    return h


@dataclass(frozen=True)
class Spectrum:
    """Eigenvalues in descending order, optionally with eigenvectors as columns."""

    values: tuple[float, ...]
    vectors: Optional[np.ndarray] = None

    def __post_init__(self):
        vals = tuple(float(v) for v in self.values)
        order = sorted(range(len(vals)), key=lambda i: -vals[i])
        object.__setattr__(self, "values", tuple(vals[i] for i in order))
        if self.vectors is not None:
            vecs = np.asarray(self.vectors, dtype=complex)
            object.__setattr__(self, "vectors", vecs[:, order])

    def __len__(self):
        return len(self.values)

    @property
    def trace(self) -> float:
        return float(sum(self.values))


def von_neumann_entropy(spectrum: Spectrum | Iterable[float]) -> float:
    """Entropy ``-sum l log2 l`` of a density spectrum.

    Eigenvalues in ``[-1e-10, 0)`` are clamped to zero.
    """
    vals = np.asarray(
        spectrum.values if isinstance(spectrum, Spectrum) else list(spectrum), dtype=float
    )
    if vals.size == 0:
        raise DomainError("empty spectrum")
    if np.any(vals < -EIG_SLACK):
        raise PositivityError(f"spectrum has negative eigenvalue {vals.min():.3e}")
    if abs(vals.sum() - 1.0) > EIG_SLACK:
        raise DomainError(f"spectrum sums to {vals.sum():.15g}, not 1")
    vals = vals[vals > 0]
    return float(max(0.0, -np.sum(vals * np.log2(vals))))


@dataclass(frozen=True)
class HermMatrix2:
    """Hermitian 2x2 matrix ``[[a11, a12], [conj(a12), a22]]``."""

    a11: float
    a22: float
    a12: complex = 0j

    @classmethod
    def from_array(cls, m, atol: float = 1e-12) -> "HermMatrix2":
        m = np.asarray(m, dtype=complex)
        if m.shape != (2, 2):
            raise DomainError(f"expected a 2x2 matrix, got shape {m.shape}")
        if not np.allclose(m, m.conj().T, atol=atol, rtol=0):
            raise DomainError("matrix is not Hermitian")
        return cls(float(m[0, 0].real), float(m[1, 1].real), complex(m[0, 1]))

    def to_array(self) -> np.ndarray:
        return np.array(
            [[self.a11, self.a12], [np.conj(self.a12), self.a22]], dtype=complex
        )

    @property
    def trace(self) -> float:
        return self.a11 + self.a22

    @property
    def det(self) -> float:
        return self.a11 * self.a22 - abs(self.a12) ** 2

    def eigenvalues(self) -> Spectrum:
        mean = 0.5 * (self.a11 + self.a22)
        rad = np.hypot(0.5 * (self.a11 - self.a22), abs(self.a12))
        return Spectrum((mean + rad, mean - rad))

    def check_density(self) -> "HermMatrix2":
        _check_spectrum(self.eigenvalues(), "2x2")
        return self

    def entropy(self) -> float:
        return von_neumann_entropy(self.eigenvalues())


@dataclass(frozen=True)
class XMatrix4:
    """Two-qubit matrix with the X sparsity pattern.

    Basis order is ``|00>, |01>, |10>, |11>`` (first index: qubit A).
    ``z14`` and ``z23`` are the upper anti-diagonal entries; the lower ones
    are their conjugates.
    """

    d1: float
    d2: float
    d3: float
    d4: float
    z14: complex = 0j
    z23: complex = 0j

    @classmethod
    def from_array(cls, m, atol: float = 1e-12) -> "XMatrix4":
        m = np.asarray(m, dtype=complex)
        if m.shape != (4, 4):
            raise DomainError(f"expected a 4x4 matrix, got shape {m.shape}")
        if not np.allclose(m, m.conj().T, atol=atol, rtol=0):
            raise DomainError("matrix is not Hermitian")
        mask = np.eye(4, dtype=bool) | np.fliplr(np.eye(4, dtype=bool))
        off = np.abs(m[~mask]).max()
        if off > atol:
            raise DomainError(f"matrix is not X-shaped (stray entry {off:.3e})")
        return cls(
            *(float(m[i, i].real) for i in range(4)), complex(m[0, 3]), complex(m[1, 2])
        )

    def to_array(self) -> np.ndarray:
        m = np.diag(np.array([self.d1, self.d2, self.d3, self.d4], dtype=complex))
        m[0, 3], m[3, 0] = self.z14, np.conj(self.z14)
        m[1, 2], m[2, 1] = self.z23, np.conj(self.z23)
        return m

    @property
    def diagonal(self) -> tuple[float, float, float, float]:
        return (self.d1, self.d2, self.d3, self.d4)

    @property
    def trace(self) -> float:
        return self.d1 + self.d2 + self.d3 + self.d4

    @property
    def is_real(self) -> bool:
        return abs(complex(self.z14).imag) <= TRACE_SLACK and abs(complex(self.z23).imag) <= TRACE_SLACK

    def check_density(self) -> "XMatrix4":
        if abs(self.trace - 1.0) > TRACE_SLACK:
            raise DomainError(f"trace is {self.trace:.15g}, not 1")
        _check_spectrum(xstate_eigenvalues(self), "X-state")
        return self


def _check_spectrum(spec: Spectrum, label: str):
    if spec.values[-1] < -EIG_SLACK:
        raise PositivityError(f"{label} has negative eigenvalue {spec.values[-1]:.3e}")
    if abs(spec.trace - 1.0) > TRACE_SLACK:
        raise DomainError(f"{label} trace is {spec.trace:.15g}, not 1")


def _block_eig(x: float, y: float, z: complex, i: int, j: int):
    """Eigenpairs of the 2x2 block [[x, z], [conj z, y]] embedded on indices i, j."""
    mean = 0.5 * (x + y)
    half = 0.5 * (x - y)
    rad = np.hypot(half, abs(z))
    pairs = []
    for sign in (1.0, -1.0):
        lam = mean + sign * rad
        vec = np.zeros(4, dtype=complex)
        if rad == 0.0:
            vec[i if sign > 0 else j] = 1.0
        else:
            # null vector of either row; keep the better conditioned one
            r1 = np.array([z, lam - x])
            r2 = np.array([lam - y, np.conj(z)])
            vec[[i, j]] = r1 if np.linalg.norm(r1) >= np.linalg.norm(r2) else r2
        vec /= np.linalg.norm(vec)
        pairs.append((lam, vec))
    return pairs


def xstate_eigenvalues(X: XMatrix4, vectors: bool = False) -> Spectrum:
    """Closed-form eigen-decomposition from the two 2x2 blocks of an X-state."""
    pairs = _block_eig(X.d1, X.d4, complex(X.z14), 0, 3)
    pairs += _block_eig(X.d2, X.d3, complex(X.z23), 1, 2)
    vals = [lam for lam, _ in pairs]
    if not vectors:
        return Spectrum(vals)
    return Spectrum(vals, np.column_stack([v for _, v in pairs]))


def partial_trace(X: XMatrix4, keep: Literal["A", "B"]) -> HermMatrix2:
    """Reduced state of one qubit. For X-states both marginals are diagonal."""
    if keep == "A":
        return HermMatrix2(X.d1 + X.d2, X.d3 + X.d4)
    if keep == "B":
        return HermMatrix2(X.d1 + X.d3, X.d2 + X.d4)
    raise DomainError(f"keep must be 'A' or 'B', not {keep!r}")


def partial_trace_dense(rho: np.ndarray, keep: Literal["A", "B"], dims=(2, 2)) -> np.ndarray:
    """Partial trace of a dense bipartite matrix with subsystem dimensions ``dims``."""
    da, db = dims
    r = np.asarray(rho).reshape(da, db, da, db)
    if keep == "A":
        return np.einsum("ijkj->ik", r)
    if keep == "B":
        return np.einsum("ijil->jl", r)
    raise DomainError(f"keep must be 'A' or 'B', not {keep!r}")


def dense_spectrum(rho: np.ndarray) -> Spectrum:
    return Spectrum(np.linalg.eigvalsh(np.asarray(rho, dtype=complex)))


def check_dense_density(rho: np.ndarray, atol: float = TRACE_SLACK) -> np.ndarray:
    """Raise unless ``rho`` is Hermitian, trace one and positive within slack."""
    rho = np.asarray(rho, dtype=complex)
    if not np.allclose(rho, rho.conj().T, atol=atol, rtol=0):
        raise DomainError("matrix is not Hermitian")
    _check_spectrum(dense_spectrum(rho), f"{rho.shape[0]}x{rho.shape[0]} matrix")
    return rho


@dataclass(frozen=True)
class BlochX:
    """Correlation coefficients of a real X-state.

    ``rho = 1/4 (II + R30 ZI + R03 IZ + R11 XX + R22 YY + R33 ZZ)``.
    """

    R30: float
    R03: float
    R11: float
    R22: float
    R33: float

    def as_tuple(self) -> tuple[float, float, float, float, float]:
        return (self.R30, self.R03, self.R11, self.R22, self.R33)


def bloch_from_xstate(X: XMatrix4) -> BlochX:
    if not X.is_real:
        raise DomainError("Bloch X form needs real anti-diagonal entries")
    z14, z23 = complex(X.z14).real, complex(X.z23).real
    return BlochX(
        R30=X.d1 + X.d2 - X.d3 - X.d4,
        R03=X.d1 - X.d2 + X.d3 - X.d4,
        R11=2.0 * (z14 + z23),
        R22=2.0 * (z23 - z14),
        R33=X.d1 - X.d2 - X.d3 + X.d4,
    )


def xstate_from_bloch(B: BlochX, check: bool = True) -> XMatrix4:
    X = XMatrix4(
        d1=0.25 * (1 + B.R30 + B.R03 + B.R33),
        d2=0.25 * (1 + B.R30 - B.R03 - B.R33),
        d3=0.25 * (1 - B.R30 + B.R03 - B.R33),
        d4=0.25 * (1 - B.R30 - B.R03 + B.R33),
        z14=complex(0.25 * (B.R11 - B.R22)),
        z23=complex(0.25 * (B.R11 + B.R22)),
    )
    if check:
        X.check_density()
    return X


def bloch_dense(rho: np.ndarray) -> np.ndarray:
    """Full 4x4 table ``R[i, j] = tr(rho sigma_i (x) sigma_j)``."""
    rho = np.asarray(rho, dtype=complex)
    return np.array(
        [[np.trace(rho @ np.kron(si, sj)).real for sj in SIGMA] for si in SIGMA]
    )
