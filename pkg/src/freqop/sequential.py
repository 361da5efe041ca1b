"""Recorded successions: ensemble statistics of repeated evolve-and-record runs.

A system prepared with record ``m`` evolves for ``dt`` under a Hamiltonian
and is recorded again. An ensemble of M such runs is the M-fold product of
the evolved state ``U|m>``, and the frequency of record ``n`` among the
successions follows the same deviation law as any other ensemble, with
``q = |<n|U|m>|^2`` in the role of the outcome weight.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .frequency import FrequencyReport, FrequencySpec, deviation_norm
from .hilbert import HermitianOperator, StateVector, UnitaryMatrix, evolve
from .product import ProductState, ensemble


@dataclass(frozen=True)
class SequentialSpec:
    """One evolve-and-record setup.

    ``m`` is the prepared record, ``n`` the succeeding record whose
    frequency is counted, ``successions`` the ensemble length M.
    """

    hamiltonian: HermitianOperator
    dt: float
    m: int
    n: int
    successions: int

    def __post_init__(self):
        d = self.hamiltonian.dim
        if not 0 <= self.m < d:
            raise ValueError(f"prepared record {self.m} out of range for dim {d}")
        if not 0 <= self.n < d:
            raise ValueError(f"succeeding record {self.n} out of range for dim {d}")
        if self.successions < 1:
            raise ValueError("successions must be at least 1")
        if not np.isfinite(self.dt):
            raise ValueError("dt must be finite")


def propagator(spec: SequentialSpec) -> UnitaryMatrix:
    return evolve(spec.hamiltonian, spec.dt)


def evolved_record_state(spec: SequentialSpec) -> StateVector:
    """The state one run ends in: ``U|m>`` (column m of the propagator)."""
    return propagator(spec).column(spec.m)


def recorder_state(spec: SequentialSpec) -> ProductState:
    """The ensemble of evolved runs as a product state.

    Every slot holds ``U|m>``; the frequency operator over the first
    ``successions`` slots reads off the recorded block.
    """
    return ensemble(evolved_record_state(spec))


def succession_probabilities(
    h: HermitianOperator, dt: float, m: int
) -> np.ndarray:
    """``q(n) = |<n|U|m>|^2`` for every possible succeeding record ``n``."""
    if not 0 <= m < h.dim:
        raise ValueError(f"prepared record {m} out of range for dim {h.dim}")
    u = evolve(h, dt)
    col = u.entries[:, m]
    return np.abs(col) ** 2


def succession_frequency(
    spec: SequentialSpec, *, method: str = "auto", oracle: bool = False
) -> FrequencyReport:
    """Deviation report for the frequency of record ``n`` among M successions.

    The report's ``p`` is the succession weight ``q = |<n|U|m>|^2`` and the
    deviation obeys ``deviation^2 = (q - q^2)/M``.
    """
    s = evolved_record_state(spec)
    fspec = FrequencySpec(k=spec.n, n_slots=spec.successions)
    return deviation_norm(fspec, s, method=method, oracle=oracle)
