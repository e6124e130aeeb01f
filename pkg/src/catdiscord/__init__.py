"""Quantum discord and concurrence of Bell cat-states under amplitude damping."""
from .cat_damping import (
    CatDampingParams,
    QSuperposition,
    TwoModeSuperposition,
    bloch_correlations,
    damped_bell_xstate,
    damped_single_mode,
    damped_two_mode,
    rank2_decomposition,
)
from .correlations import (
    CorrelationReport,
    MeasurementAngles,
    Purification,
    classical_correlation,
    concurrence_wootters,
    concurrence_xstate,
    conditional_entropy,
    conditional_states,
    koashi_winter_smin,
    minimize_conditional_entropy,
    mutual_information,
    purify,
    quantum_discord_closed,
    quantum_discord_numeric,
    rho_bc,
)
from .density import (
    BlochX,
    HermMatrix2,
    Spectrum,
    XMatrix4,
    binary_entropy,
    bloch_from_xstate,
    partial_trace,
    von_neumann_entropy,
    xstate_eigenvalues,
    xstate_from_bloch,
)
from .dephasing import (
    DephasingParams,
    concurrence_t,
    dephase,
    sudden_death_time,
    trajectory,
    zero_discord_check,
)
from .errors import DegenerateError, DomainError, PositivityError, TruncationWarning

__version__ = "0.1.0"
