"""Command line interface.

Data goes to stdout (CSV by default, JSON on request), diagnostics to
stderr. Exit codes: 0 all checks passed, 1 a verification failed, 2
malformed input. Floats in CSV carry 17 significant digits, so values
round-trip exactly.
"""

from __future__ import annotations

import csv
import json
import math
import sys

import click
import numpy as np

from . import io
from .frequency import VERIFY_TOL, FrequencySpec, deviation_norm
from .hilbert import StateVector, UnitaryMatrix
from .oracle import MATRIX_CAP, dense_frequency_matrix
from .sampling import sample_ensemble
from .scenarios import epr_check, wigner_friend_check
from .sequential import SequentialSpec, succession_frequency, succession_probabilities
from .verify import DEFAULT_SEED, run_all

SCHEMA_VERSION = 1


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def _emit_csv(header: list[str], rows: list[list]) -> None:
    w = csv.writer(sys.stdout)
    w.writerow(header)
    for row in rows:
        w.writerow([_fmt(v) if isinstance(v, float) else v for v in row])


def _emit_json(payload: dict) -> None:
    click.echo(json.dumps(payload, indent=2))


def _parse_complex(text: str, what: str) -> complex:
    parts = text.split(",")
    try:
        if len(parts) == 1:
            return complex(float(parts[0]), 0.0)
        if len(parts) == 2:
            return complex(float(parts[0]), float(parts[1]))
    except ValueError:
        pass
    raise click.UsageError(f'{what} must be "re" or "re,im", got {text!r}')


def _parse_amps(text: str) -> list[complex]:
    entries = [e for e in text.split(";") if e.strip()]
    if not entries:
        raise click.UsageError("--amps is empty")
    return [_parse_complex(e, f"--amps entry {i}") for i, e in enumerate(entries)]


def _load_state(state_path: str | None, amps: str | None, normalize: bool) -> StateVector:
    if (state_path is None) == (amps is None):
        raise click.UsageError("provide exactly one of --state or --amps")
    try:
        if state_path is not None:
            return io.load_state(state_path, normalize=normalize)
        return StateVector(_parse_amps(amps), normalize=normalize)
    except (ValueError, OSError) as exc:
        raise click.UsageError(str(exc))


def _load_basis(path: str | None) -> UnitaryMatrix | None:
    if path is None:
        return None
    try:
        return io.load_unitary(path)
    except (ValueError, OSError) as exc:
        raise click.UsageError(str(exc))


def _parse_ns(text: str) -> list[int]:
    try:
        ns = [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise click.UsageError(f"--ns must be comma-separated integers, got {text!r}")
    if not ns or any(n < 1 for n in ns):
        raise click.UsageError("--ns needs at least one positive integer")
    return ns


format_option = click.option(
    "--format",
    "fmt",
    type=click.Choice(["csv", "json"]),
    default="csv",
    show_default=True,
    help="Output format on stdout.",
)


@click.group()
def main():
    """Frequency-operator verification toolkit.

    Checks that outcome frequencies over growing ensembles of identically
    prepared systems converge to squared amplitudes, plus the companion
    conditioning and sampling demonstrations.
    """


@main.command()
@click.option("--state", "state_path", type=click.Path(), help="State JSON file.")
@click.option("--amps", help='Inline amplitudes "re,im;re,im;...".')
@click.option("--normalize", is_flag=True, help="Rescale the input to unit norm.")
@click.option("--k", type=int, required=True, help="Counted outcome index.")
@click.option("--ns", default="1,4,16,64", show_default=True,
              help="Comma-separated ensemble sizes.")
@click.option("--basis", "basis_path", type=click.Path(),
              help="Measurement basis as a unitary matrix JSON file.")
@click.option("--tolerance", type=float, default=VERIFY_TOL, show_default=True,
              help="Absolute tolerance on the squared-deviation identity.")
@format_option
def converge(state_path, amps, normalize, k, ns, basis_path, tolerance, fmt):
    """Deviation-identity table over ensemble sizes.

    Example: freqop converge --amps "0.70710678,0;0.70710678,0" --k 0

    One row per ensemble size N: the measured deviation of the frequency
    image from p times the ensemble, the closed form sqrt((p-p^2)/N), and
    their squared-value mismatch. Exits 1 when a mismatch exceeds the
    tolerance.
    """
    s = _load_state(state_path, amps, normalize)
    basis = _load_basis(basis_path)
    sizes = _parse_ns(ns)
    try:
        reports = [
            deviation_norm(FrequencySpec(k, n, basis), s) for n in sizes
        ]
    except ValueError as exc:
        raise click.UsageError(str(exc))
    rows = []
    worst = 0.0
    for rep in reports:
        abs_error = abs(rep.deviation_exact**2 - rep.deviation_closed**2)
        worst = max(worst, abs_error)
        rows.append([
            rep.n_slots, float(rep.p), float(rep.deviation_exact),
            float(rep.deviation_closed), float(abs_error),
            float(rep.applied_norm**2),
        ])
    header = ["N", "p", "deviation_exact", "deviation_closed", "abs_error",
              "norm_fN_sq"]
    if fmt == "csv":
        _emit_csv(header, rows)
    else:
        _emit_json({
            "schema_version": SCHEMA_VERSION,
            "command": "converge",
            "k": k,
            "tolerance": tolerance,
            "rows": [dict(zip(header, row)) for row in rows],
        })
    ok = worst <= tolerance
    click.echo(
        f"converge: worst |deviation^2 - closed^2| = {worst:.3g} "
        f"({'pass' if ok else 'FAIL'} at {tolerance:g})",
        err=True,
    )
    if not ok:
        sys.exit(1)


@main.command()
@click.option("--dim", "-d", type=int, required=True, help="Slot dimension.")
@click.option("--slots", type=int, required=True, help="Number of slots N.")
@click.option("--k", type=int, required=True, help="Counted outcome index.")
@click.option("--tolerance", type=float, default=1e-9, show_default=True,
              help="Containment tolerance for eigenvalues.")
@format_option
def spectrum(dim, slots, k, tolerance, fmt):
    """Eigenvalues of the dense N-slot frequency operator.

    Example: freqop spectrum -d 2 --slots 4 --k 0

    Every eigenvalue must sit on the grid {0, 1/N, ..., 1}; exits 1
    otherwise. Sizes with d**N above the dense-matrix cap are rejected.
    """
    try:
        if dim**slots > MATRIX_CAP:
            raise ValueError(
                f"d**N = {dim**slots} exceeds the dense-matrix cap {MATRIX_CAP}"
            )
        mat = dense_frequency_matrix(k, slots, dim)
    except ValueError as exc:
        raise click.UsageError(str(exc))
    eigs = np.linalg.eigvalsh(mat)
    rows = []
    worst = 0.0
    for i, lam in enumerate(eigs):
        nearest = round(float(lam) * slots) / slots
        err = abs(float(lam) - nearest)
        worst = max(worst, err)
        rows.append([i, float(lam), float(nearest), float(err)])
    header = ["index", "eigenvalue", "nearest_grid", "abs_error"]
    if fmt == "csv":
        _emit_csv(header, rows)
    else:
        _emit_json({
            "schema_version": SCHEMA_VERSION,
            "command": "spectrum",
            "dim": dim,
            "slots": slots,
            "k": k,
            "rows": [dict(zip(header, row)) for row in rows],
        })
    ok = worst <= tolerance
    click.echo(
        f"spectrum: worst off-grid distance = {worst:.3g} "
        f"({'pass' if ok else 'FAIL'} at {tolerance:g})",
        err=True,
    )
    if not ok:
        sys.exit(1)


@main.command()
@click.option("--hamiltonian", "h_path", type=click.Path(), required=True,
              help="Hermitian matrix JSON file.")
@click.option("--dt", type=float, required=True, help="Evolution time step.")
@click.option("--m", type=int, required=True, help="Prepared record index.")
@click.option("--n", type=int, required=True, help="Succeeding record index.")
@click.option("--successions", type=int, default=1000, show_default=True,
              help="Ensemble length M.")
@click.option("--tolerance", type=float, default=VERIFY_TOL, show_default=True,
              help="Absolute tolerance on the squared-deviation identity.")
@format_option
def sequential(h_path, dt, m, n, successions, tolerance, fmt):
    """Succession-frequency check for an evolve-and-record ensemble.

    Example: freqop sequential --hamiltonian h.json --dt 0.785398 --m 0 --n 1

    Reports q = |<n|U|m>|^2, the measured and closed-form deviations at M
    successions, and the completeness error of the full q distribution.
    Exits 1 when the identity or completeness fails the tolerance.
    """
    try:
        h = io.load_hermitian(h_path)
        spec = SequentialSpec(h, dt, m, n, successions)
    except (ValueError, OSError) as exc:
        raise click.UsageError(str(exc))
    rep = succession_frequency(spec)
    q_all = succession_probabilities(h, dt, m)
    abs_error = abs(rep.deviation_exact**2 - rep.deviation_closed**2)
    prob_sum_error = abs(float(q_all.sum()) - 1.0)
    header = ["successions", "q", "deviation_exact", "deviation_closed",
              "abs_error", "prob_sum_error"]
    row = [successions, float(rep.p), float(rep.deviation_exact),
           float(rep.deviation_closed), float(abs_error), float(prob_sum_error)]
    if fmt == "csv":
        _emit_csv(header, [row])
    else:
        _emit_json({
            "schema_version": SCHEMA_VERSION,
            "command": "sequential",
            "dt": dt,
            "m": m,
            "n": n,
            "row": dict(zip(header, row)),
        })
    ok = abs_error <= tolerance and prob_sum_error <= tolerance
    click.echo(
        f"sequential: identity error {abs_error:.3g}, probability sum error "
        f"{prob_sum_error:.3g} ({'pass' if ok else 'FAIL'} at {tolerance:g})",
        err=True,
    )
    if not ok:
        sys.exit(1)


_INV_SQRT2 = 1.0 / math.sqrt(2.0)


def _truth_name(tv) -> str:
    return tv.value


@main.command()
@click.option("--alpha", default=f"{_INV_SQRT2!r}", show_default=True,
              help='Weight of |up down>, as "re" or "re,im".')
@click.option("--beta", default=f"{_INV_SQRT2!r}", show_default=True,
              help='Weight of |down up>, as "re" or "re,im".')
@format_option
def epr(alpha, beta, fmt):
    """Correlated-pair conditioning check.

    Example: freqop epr --format json

    Before conditioning every single-particle spin proposition must be
    indefinite; after conditioning the first spin on "up" the pair is the
    product |up>|down> and "second spin down" is true. Exits 1 if any of
    that fails.
    """
    a = _parse_complex(alpha, "--alpha")
    b = _parse_complex(beta, "--beta")
    try:
        rep = epr_check(a, b)
    except ValueError as exc:
        raise click.UsageError(str(exc))
    pairs = [
        ("alpha", f"{a.real:.17g}{a.imag:+.17g}j"),
        ("beta", f"{b.real:.17g}{b.imag:+.17g}j"),
        ("pre_first_up", _truth_name(rep.pre_first_up)),
        ("pre_first_down", _truth_name(rep.pre_first_down)),
        ("pre_second_up", _truth_name(rep.pre_second_up)),
        ("pre_second_down", _truth_name(rep.pre_second_down)),
        ("branch_probability", _fmt(rep.branch_probability)),
        ("post_second_down", _truth_name(rep.post_second_down)),
        ("product_residual", _fmt(rep.product_residual)),
        ("passed", str(rep.passed).lower()),
    ]
    if fmt == "csv":
        _emit_csv(["field", "value"], [[k, v] for k, v in pairs])
    else:
        _emit_json({
            "schema_version": SCHEMA_VERSION,
            "command": "epr",
            **{k: v for k, v in pairs},
        })
    click.echo(f"epr: {'pass' if rep.passed else 'FAIL'}", err=True)
    if not rep.passed:
        sys.exit(1)


@main.command()
@click.option("--alpha", default=f"{_INV_SQRT2!r}", show_default=True,
              help='Weight of the |a>|A> branch, as "re" or "re,im".')
@click.option("--beta", default=f"{_INV_SQRT2!r}", show_default=True,
              help='Weight of the |b>|B> branch, as "re" or "re,im".')
@format_option
def wigner(alpha, beta, fmt):
    """Observed-observer consistency check.

    Example: freqop wigner --alpha "0.6" --beta "0.8"

    Conditions the sealed-laboratory state on each surviving record and
    compares, branch by branch, the truth values the outside and inside
    descriptions assign to the object propositions. Exits 1 on any
    disagreement.
    """
    a = _parse_complex(alpha, "--alpha")
    b = _parse_complex(beta, "--beta")
    try:
        rep = wigner_friend_check(a, b)
    except ValueError as exc:
        raise click.UsageError(str(exc))
    branch_dicts = [
        {
            "reply": br.reply,
            "probability": br.probability,
            "product_residual": br.product_residual,
            "composite_truth": [_truth_name(t) for t in br.composite_truth],
            "object_truth": [_truth_name(t) for t in br.object_truth],
            "consistent": br.consistent,
        }
        for br in rep.branches
    ]
    if fmt == "csv":
        rows = [
            [br.reply, float(br.probability), float(br.product_residual),
             _truth_name(br.composite_truth[0]), _truth_name(br.composite_truth[1]),
             _truth_name(br.object_truth[0]), _truth_name(br.object_truth[1]),
             str(br.consistent).lower()]
            for br in rep.branches
        ]
        _emit_csv(
            ["reply", "probability", "product_residual",
             "composite_truth_a", "composite_truth_b",
             "object_truth_a", "object_truth_b", "consistent"],
            rows,
        )
    else:
        _emit_json({
            "schema_version": SCHEMA_VERSION,
            "command": "wigner",
            "pre_object_a": _truth_name(rep.pre_object_a),
            "pre_object_b": _truth_name(rep.pre_object_b),
            "branches": branch_dicts,
            "passed": rep.passed,
        })
    click.echo(f"wigner: {'pass' if rep.passed else 'FAIL'}", err=True)
    if not rep.passed:
        sys.exit(1)


@main.command()
@click.option("--state", "state_path", type=click.Path(), help="State JSON file.")
@click.option("--amps", help='Inline amplitudes "re,im;re,im;...".')
@click.option("--normalize", is_flag=True, help="Rescale the input to unit norm.")
@click.option("--basis", "basis_path", type=click.Path(),
              help="Measurement basis as a unitary matrix JSON file.")
@click.option("--n", "n_samples", type=int, default=10**6, show_default=True,
              help="Number of draws.")
@click.option("--seed", type=int, default=DEFAULT_SEED, show_default=True,
              help="Counter-based generator key; same seed, same record.")
@format_option
def sample(state_path, amps, normalize, basis_path, n_samples, seed, fmt):
    """Seeded Monte Carlo draws from a preparation.

    Example: freqop sample --amps "0.6;0.8" --n 100000 --seed 7

    One row per outcome: weight, count, empirical frequency, z-score.
    Deterministic for a fixed seed.
    """
    s = _load_state(state_path, amps, normalize)
    basis = _load_basis(basis_path)
    try:
        record = sample_ensemble(s, n_samples, seed, basis)
    except ValueError as exc:
        raise click.UsageError(str(exc))
    header = ["outcome", "probability", "count", "empirical_freq", "z_score"]
    rows = [
        [i, record.probabilities[i], record.counts[i],
         record.empirical_freq[i], record.z_scores[i]]
        for i in range(len(record.counts))
    ]
    if fmt == "csv":
        _emit_csv(header, rows)
    else:
        _emit_json({
            "schema_version": SCHEMA_VERSION,
            "command": "sample",
            "seed": record.seed,
            "n_samples": record.n_samples,
            "rows": [dict(zip(header, row)) for row in rows],
        })
    worst = max((abs(z) for z in record.z_scores), default=0.0)
    click.echo(f"sample: n={n_samples} seed={seed} max|z|={worst:.3g}", err=True)


@main.command(name="verify-all")
@click.option("--seed", type=int, default=DEFAULT_SEED, show_default=True,
              help="Seed for every randomized suite.")
@click.option("--tolerance", type=float, default=None,
              help="Override the identity-suite tolerances (exact-zero and "
                   "statistical suites keep their own).")
def verify_all(seed, tolerance):
    """Run every invariant suite and emit a JSON summary.

    Example: freqop verify-all --seed 42

    Output is byte-identical for identical arguments. Exits 0 only when
    every suite reports zero failures.
    """
    results = run_all(seed=seed, tolerance=tolerance)
    total_failures = sum(r.failures for r in results)
    _emit_json({
        "schema_version": SCHEMA_VERSION,
        "command": "verify-all",
        "seed": seed,
        "tolerance": tolerance,
        "suites": [r.to_dict() for r in results],
        "total_cases": sum(r.cases for r in results),
        "total_failures": total_failures,
    })
    click.echo(
        f"verify-all: {total_failures} failures across "
        f"{sum(r.cases for r in results)} cases",
        err=True,
    )
    if total_failures:
        sys.exit(1)


if __name__ == "__main__":
    main()
