import math
import warnings

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from catdiscord import CatDampingParams, QSuperposition, TwoModeSuperposition
from catdiscord.cat_damping import damped_bell_xstate, damped_single_mode, damped_two_mode
from catdiscord.errors import DegenerateError, DomainError, TruncationWarning
from catdiscord.fock_oracle import (
    FockVector,
    ModeLabel,
    beam_splitter_n0,
    beam_splitter_unitary_n,
    coherent_fock,
    damped_bell_matrix,
    damped_bell_oracle,
    damped_single_mode_oracle,
    damped_two_mode_oracle,
    qubit_basis,
    recommended_dim,
    truncation_bound,
)


def alpha_for(p):
    return math.sqrt(-math.log(p) / 2)


class TestCoherent:
    def test_vacuum(self):
        v = coherent_fock(0.0, 10)
        assert v.amplitudes[0] == 1 and np.count_nonzero(v.amplitudes) == 1

    def test_overlap(self):
        plus, minus = coherent_fock(1.0, 40), coherent_fock(-1.0, 40)
        assert minus.inner(plus).real == pytest.approx(math.exp(-2), abs=1e-13)
        assert abs(minus.inner(plus).imag) < 1e-16

    @pytest.mark.parametrize("alpha", [0.1, 0.5, 1.0, 1.5, 2.0, 2j, 1 + 1j])
    def test_norm(self, alpha):
        assert coherent_fock(alpha, 40).norm == pytest.approx(1.0, abs=1e-13)

    def test_phase_overlap(self):
        a, b = 0.7 + 0.2j, -0.3 + 0.5j
        exact = np.exp(-0.5 * abs(a) ** 2 - 0.5 * abs(b) ** 2 + np.conj(a) * b)
        assert coherent_fock(a, 40).inner(coherent_fock(b, 40)) == pytest.approx(exact, abs=1e-13)

    def test_truncation_warning(self):
        with pytest.warns(TruncationWarning):
            coherent_fock(3.0, 12)

    def test_no_warning_at_default(self):
        with warnings.catch_warnings():
            warnings.simplefilter("error")
            coherent_fock(1.5, 40)

    def test_deficit_within_bound(self):
        for alpha in (1.0, 1.5, 2.0):
            for dim in (15, 20, 25):
                with warnings.catch_warnings():
                    warnings.simplefilter("ignore", TruncationWarning)
                    v = coherent_fock(alpha, dim)
                # the leading tail term bounds the rest up to a geometric factor
                x = alpha**2
                assert v.deficit <= truncation_bound(alpha, dim) / (1 - x / (dim + 1)) + 1e-15

    def test_recommended_dim(self):
        assert recommended_dim(1.5) == 32
        assert recommended_dim(0.0) == 20
        assert truncation_bound(1.5, 40) < 1e-14

    def test_bad_dim(self):
        with pytest.raises(DomainError):
            coherent_fock(1.0, 0)

    def test_vector_algebra(self):
        u = FockVector(np.array([1.0, 0.0]))
        v = FockVector(np.array([0.0, 1.0]))
        w = 2 * u - v * 3 + u
        np.testing.assert_array_equal(w.amplitudes, [3.0, -3.0])
        assert w.dim == 2

    def test_mode_labels(self):
        assert [m.value for m in ModeLabel] == ["A", "B", "Loss"]


class TestBeamSplitter:
    def test_vacuum(self):
        np.testing.assert_array_equal(beam_splitter_n0(0, 0.3), [1.0])

    def test_single_photon_balanced(self):
        np.testing.assert_allclose(beam_splitter_n0(1, 1.0), [1 / math.sqrt(2)] * 2, atol=1e-15)

    def test_binomial_profile(self):
        amps = beam_splitter_n0(5, 0.5)
        assert np.linalg.norm(amps) == pytest.approx(1.0, abs=1e-14)
        probs = np.abs(amps) ** 2
        q = 0.25 / 1.25
        binom = [math.comb(5, m) * q**m * (1 - q) ** (5 - m) for m in range(6)]
        np.testing.assert_allclose(probs, binom, atol=1e-15)

    def test_negative(self):
        with pytest.raises(DomainError):
            beam_splitter_n0(-1, 0.5)

    @settings(max_examples=100, deadline=None)
    @given(n=st.integers(0, 30), mag=st.floats(0.0, 4.0), arg=st.floats(-math.pi, math.pi))
    def test_unit_norm(self, n, mag, arg):
        amps = beam_splitter_n0(n, mag * np.exp(1j * arg))
        assert np.linalg.norm(amps) == pytest.approx(1.0, abs=1e-12)

    @pytest.mark.parametrize("n", [1, 2, 4, 7])
    @pytest.mark.parametrize("theta", [0.3, 1.2, 2.5])
    def test_matches_generator(self, n, theta):
        u = beam_splitter_unitary_n(n, theta)
        np.testing.assert_allclose(u @ u.T, np.eye(n + 1), atol=1e-12)
        np.testing.assert_allclose(u[:, 0], beam_splitter_n0(n, math.tan(theta / 2)), atol=1e-12)

    def test_coherent_rule(self):
        # B|beta,0> summed photon block by block equals |beta t> (x) |beta r>
        beta, t, r = 0.9, math.cos(0.4), math.sin(0.4)
        dim = 30
        coh = coherent_fock(beta, dim).amplitudes
        out = np.zeros((dim, dim), dtype=complex)
        for n in range(dim):
            for m, a in enumerate(beam_splitter_n0(n, r / t)):
                out[n - m, m] += coh[n] * a
        expected = np.outer(coherent_fock(beta * t, dim).amplitudes, coherent_fock(beta * r, dim).amplitudes)
        np.testing.assert_allclose(out, expected, atol=1e-12)


class TestQubitBasis:
    def test_orthonormal(self):
        u, v = qubit_basis(1.0, 40)
        assert u.norm == pytest.approx(1.0, abs=1e-12)
        assert v.norm == pytest.approx(1.0, abs=1e-12)
        assert abs(u.inner(v)) < 1e-12

    def test_reconstruction(self):
        alpha = 1.0
        p = math.exp(-2 * alpha**2)
        a, b = math.sqrt((1 + p) / 2), math.sqrt((1 - p) / 2)
        u, v = qubit_basis(alpha, 40)
        np.testing.assert_allclose((a * u + b * v).amplitudes, coherent_fock(alpha, 40).amplitudes, atol=1e-12)
        np.testing.assert_allclose((a * u - b * v).amplitudes, coherent_fock(-alpha, 40).amplitudes, atol=1e-12)

    def test_parity(self):
        u, v = qubit_basis(0.8, 40)
        np.testing.assert_allclose(u.amplitudes[1::2], 0, atol=1e-16)
        np.testing.assert_allclose(v.amplitudes[0::2], 0, atol=1e-16)

    def test_degenerate(self):
        with pytest.raises(DegenerateError):
            qubit_basis(1e-9, 40)


class TestDampedBell:
    @pytest.mark.parametrize("alpha", [0.5, 1.0, 1.5])
    @pytest.mark.parametrize("rsq", [0.0, 0.25, 0.5, 0.75, 1.0])
    def test_matches_closed_form(self, alpha, rsq):
        oracle = damped_bell_matrix(alpha, rsq, 40)
        closed = damped_bell_xstate(CatDampingParams.from_alpha(alpha, rsq)).to_array()
        assert np.max(np.abs(oracle.matrix - closed)) <= 1e-10
        assert abs(oracle.deficit) <= 1e-12
        assert np.trace(oracle.matrix).real == pytest.approx(1.0, abs=1e-12)
        assert np.linalg.eigvalsh(oracle.matrix).min() >= -1e-12

    def test_half_half(self):
        alpha = alpha_for(0.5)
        X = damped_bell_oracle(alpha, 0.5)
        closed = damped_bell_xstate(CatDampingParams(0.5, 0.5))
        np.testing.assert_allclose(X.to_array(), closed.to_array(), atol=1e-10)

    def test_pure_without_loss(self):
        rho = damped_bell_matrix(1.0, 0.0).matrix
        assert np.trace(rho @ rho).real == pytest.approx(1.0, abs=1e-12)

    def test_rotated_loss_basis(self, rng):
        dim = 40
        g = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
        q, _ = np.linalg.qr(g)
        a = damped_bell_matrix(1.0, 0.5, dim).matrix
        b = damped_bell_matrix(1.0, 0.5, dim, loss_basis=q).matrix
        assert np.max(np.abs(a - b)) < 1e-12

    def test_rejects_rsq(self):
        with pytest.raises(DomainError):
            damped_bell_matrix(1.0, 1.5)


class TestSingleAndTwoMode:
    def test_coherent_input(self):
        qs = QSuperposition(1.0, 0.0, math.exp(-2.0))
        rho = damped_single_mode_oracle(qs, 1.0, 0.4).to_array()
        assert np.trace(rho @ rho).real == pytest.approx(1.0, abs=1e-12)

    def test_single_mode_half_half(self):
        s = 1 / math.sqrt(2)
        qs = QSuperposition(s, s, 0.5)
        np.testing.assert_allclose(
            damped_single_mode_oracle(qs, alpha_for(0.5), 0.5).to_array(),
            damped_single_mode(qs, 0.5).to_array(),
            atol=1e-10,
        )

    def test_two_mode(self):
        tms = TwoModeSuperposition(0.3, math.pi / 3, 0.5)
        np.testing.assert_allclose(
            damped_two_mode_oracle(tms, alpha_for(0.5), 0.5), damped_two_mode(tms, 0.5), atol=1e-10
        )

    def test_mismatched_alpha(self):
        with pytest.raises(DomainError):
            damped_single_mode_oracle(QSuperposition(1.0, 0.0, 0.5), 1.0, 0.5)
