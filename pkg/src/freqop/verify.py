"""Invariant suites bundled for one-shot verification runs.

Each suite re-derives a family of identities with fresh random inputs and
counts violations against its tolerance. `run_all` is deterministic for a
fixed seed; the CLI's ``verify-all`` command is a thin formatter over it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .frequency import (
    VERIFY_TOL,
    FrequencySpec,
    cauchy_gap_grid,
    cross_orthogonality,
    deviation_norm,
)
from .hilbert import random_hermitian, random_state
from .oracle import dense_frequency_matrix
from .sampling import sample_ensemble
from .scenarios import epr_check, wigner_friend_check
from .sequential import SequentialSpec, succession_frequency, succession_probabilities

DEFAULT_SEED = 42
SPECTRUM_TOL = 1e-9
SAMPLING_Z_LIMIT = 5.0


@dataclass(frozen=True)
class SuiteResult:
    suite: str
    cases: int
    failures: int
    max_error: float

    def to_dict(self) -> dict:
        return {
            "suite": self.suite,
            "cases": self.cases,
            "failures": self.failures,
            "max_error": self.max_error,
        }


class _Tally:
    def __init__(self, name: str):
        self.name = name
        self.cases = 0
        self.failures = 0
        self.max_error = 0.0

    def case(self, error: float, tol: float) -> None:
        self.cases += 1
        self.max_error = max(self.max_error, error)
        if error > tol:
            self.failures += 1

    def result(self) -> SuiteResult:
        return SuiteResult(self.name, self.cases, self.failures, self.max_error)


def _rng(seed: int, lane: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(key=[seed, lane]))


def _suite_deviation(seed: int, tol: float) -> SuiteResult:
    t = _Tally("deviation-identity")
    rng = _rng(seed, 1)
    for d in (2, 3, 4, 5, 2, 3, 4, 5):
        s = random_state(d, rng)
        k = int(rng.integers(d))
        closed_sq = None
        for n in (1, 2, 8):
            rep = deviation_norm(
                FrequencySpec(k, n), s, method="gram", oracle=(d <= 4 and n == 8)
            )
            closed_sq = rep.deviation_closed**2
            t.case(abs(rep.deviation_exact**2 - closed_sq), tol)
            if rep.oracle_deviation is not None:
                t.case(abs(rep.deviation_exact**2 - rep.oracle_deviation**2), tol)
        for n in (100, 10**4, 10**6):
            rep = deviation_norm(FrequencySpec(k, n), s, method="counted")
            t.case(abs(rep.deviation_exact**2 - rep.deviation_closed**2), tol)
    return t.result()


def _suite_norm(seed: int, tol: float) -> SuiteResult:
    t = _Tally("norm-identity")
    rng = _rng(seed, 2)
    for d in (2, 3, 4, 5):
        s = random_state(d, rng)
        k = int(rng.integers(d))
        for n, method in ((1, "gram"), (2, "gram"), (8, "gram"), (10**4, "counted")):
            rep = deviation_norm(FrequencySpec(k, n), s, method=method)
            expected = (rep.p + (n - 1) * rep.p**2) / n
            err = abs(rep.applied_norm**2 - expected)
            overflow = max(rep.applied_norm**2 - 1.0, 0.0)
            t.case(max(err, overflow), tol)
    return t.result()


def _suite_cauchy(seed: int, tol: float) -> SuiteResult:
    t = _Tally("cauchy-gap")
    rng = _rng(seed, 3)
    n_max = 32
    for d in (2, 3, 5):
        s = random_state(d, rng)
        k = int(rng.integers(d))
        p = abs(s.amps[k]) ** 2
        grid = cauchy_gap_grid(k, s, n_max)
        for m in range(1, n_max + 1):
            for n in range(m, n_max + 1):
                gap = grid[m - 1, n - 1]
                closed = (1.0 / m - 1.0 / n) * (p - p * p)
                bound_excess = max(gap - (1.0 / m - 1.0 / n), 0.0)
                t.case(max(abs(gap - closed), bound_excess), tol)
    return t.result()


def _suite_orthogonality(seed: int) -> SuiteResult:
    t = _Tally("orthogonality")
    rng = _rng(seed, 4)
    done = 0
    while done < 15:
        d = int(rng.integers(2, 6))
        s = random_state(d, rng)
        s2 = random_state(d, rng)
        if abs(np.vdot(s.amps, s2.amps)) > 1.0 - 1e-6:
            continue
        k = int(rng.integers(d))
        n = int(rng.integers(1, 9))
        m = int(rng.integers(1, n + 1))
        value = cross_orthogonality(k, n, m, s, s2)
        # The tail rule must produce an exact zero, not merely a small one.
        t.case(abs(value), 0.0)
        done += 1
    return t.result()


def _suite_spectrum(seed: int, tol: float) -> SuiteResult:
    t = _Tally("spectrum")
    for d, n in ((2, 2), (2, 4), (2, 6), (3, 2), (3, 4)):
        mats = [dense_frequency_matrix(k, n, d) for k in range(d)]
        eigs = np.linalg.eigvalsh(mats[0])
        t.case(float(np.max(np.abs(eigs * n - np.round(eigs * n)))) / n, tol)
        total = sum(mats)
        t.case(float(np.max(np.abs(total - np.eye(d**n)))), tol)
        comm = mats[0] @ mats[1] - mats[1] @ mats[0]
        t.case(float(np.max(np.abs(comm))), tol)
    return t.result()


def _suite_sequential(seed: int, tol: float) -> SuiteResult:
    t = _Tally("sequential")
    rng = _rng(seed, 5)
    for d in (2, 3, 4):
        h = random_hermitian(d, rng)
        m = int(rng.integers(d))
        n = int(rng.integers(d))
        for dt in (0.0, 0.1, math.pi / 4):
            q = succession_probabilities(h, dt, m)
            t.case(abs(float(q.sum()) - 1.0), tol)
            for reps in (1, 7, 1000):
                rep = succession_frequency(
                    SequentialSpec(h, dt, m, n, successions=reps)
                )
                ident = (rep.p - rep.p**2) / reps
                t.case(abs(rep.deviation_exact**2 - ident), tol)
    return t.result()


def _random_pair(rng: np.random.Generator) -> tuple[complex, complex]:
    while True:
        v = rng.standard_normal(2) + 1j * rng.standard_normal(2)
        v /= np.linalg.norm(v)
        if min(abs(v[0]), abs(v[1])) > 0.05:
            return complex(v[0]), complex(v[1])


def _suite_epr(seed: int, tol: float) -> SuiteResult:
    t = _Tally("epr")
    rng = _rng(seed, 6)
    pairs = [(1 / math.sqrt(2), 1 / math.sqrt(2))]
    pairs += [_random_pair(rng) for _ in range(5)]
    for alpha, beta in pairs:
        rep = epr_check(alpha, beta, product_tol=tol)
        t.case(rep.product_residual if rep.passed else math.inf, tol)
    return t.result()


def _suite_wigner(seed: int, tol: float) -> SuiteResult:
    t = _Tally("wigner")
    rng = _rng(seed, 7)
    pairs = [(1 / math.sqrt(2), 1 / math.sqrt(2)), (1.0, 0.0)]
    pairs += [_random_pair(rng) for _ in range(5)]
    for alpha, beta in pairs:
        rep = wigner_friend_check(alpha, beta, product_tol=tol)
        worst = max((b.product_residual for b in rep.branches), default=0.0)
        t.case(worst if rep.passed else math.inf, tol)
    return t.result()


def _suite_sampling(seed: int) -> SuiteResult:
    t = _Tally("sampling")
    rng = _rng(seed, 8)
    s = random_state(4, rng)
    record = sample_ensemble(s, n_samples=10**5, seed=seed)
    for z in record.z_scores:
        t.case(abs(z), SAMPLING_Z_LIMIT)
    return t.result()


def run_all(seed: int = DEFAULT_SEED, tolerance: float | None = None) -> list[SuiteResult]:
    """Run every suite. ``tolerance`` overrides the identity-suite thresholds.

    The orthogonality suite demands exact zeros and the sampling suite uses
    its statistical z limit; neither takes the override.
    """
    tol = VERIFY_TOL if tolerance is None else tolerance
    spec_tol = SPECTRUM_TOL if tolerance is None else tolerance
    residual_tol = 1e-12 if tolerance is None else tolerance
    return [
        _suite_deviation(seed, tol),
        _suite_norm(seed, tol),
        _suite_cauchy(seed, tol),
        _suite_orthogonality(seed),
        _suite_spectrum(seed, spec_tol),
        _suite_sequential(seed, tol),
        _suite_epr(seed, residual_tol),
        _suite_wigner(seed, residual_tol),
        _suite_sampling(seed),
    ]
