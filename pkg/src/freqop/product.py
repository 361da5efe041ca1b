"""Linear combinations of infinite product vectors with constant tails.

A term is ``coeff * |v_1> |v_2> ... |v_L> |t> |t> |t> ...``: a finite prefix
of arbitrary slot vectors followed by one unit vector repeated forever. All
ensemble states used elsewhere in this package live in this class, and it is
closed under the frequency operators (they touch finitely many slots).

The scalar product of two terms is the product of slot-wise overlaps. The
prefix part is a finite product; the remaining infinite run of identical
factors ``z = <tail_a|tail_b>`` either converges to 1 (when ``z`` is 1) or
kills the term pair (|z| < 1 drives the product to zero; a unimodular
``z != 1`` never settles, and such pairs are assigned overlap zero as well).
``TailOverlapRule`` makes that dichotomy numerically explicit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .hilbert import HERMITIAN_TOL, NORM_TOL, StateVector, _as_complex_vector

MERGE_TOL = 1e-12  # slot proportionality threshold used by compress
DROP_TOL = 1e-15   # term weight below which compress discards


@dataclass(frozen=True)
class TailOverlapRule:
    """Decides the infinite-tail factor of a term-pair scalar product.

    The factor is 1 when ``|<tail_a|tail_b> - 1| <= epsilon_tail`` and
    exactly 0 otherwise.
    """

    epsilon_tail: float = 1e-12

    def __post_init__(self):
        if not (0.0 < self.epsilon_tail < 1.0):
            raise ValueError("epsilon_tail must lie strictly between 0 and 1")

    def tail_factor(self, z: complex) -> float:
        return 1.0 if abs(z - 1.0) <= self.epsilon_tail else 0.0


DEFAULT_TAIL_RULE = TailOverlapRule()


def _slot_array(slot, what: str) -> np.ndarray:
    if isinstance(slot, StateVector):
        a = slot.amps.copy()
    else:
        a = _as_complex_vector(slot, what).copy()
    a.setflags(write=False)
    return a


class ProductTerm:
    """One weighted product vector: finite prefix plus constant unit tail.

    Prefix slots may have any norm (projections happen in place there);
    the tail must be a unit vector, since it repeats forever.
    """

    __slots__ = ("_coeff", "_prefix", "_tail", "_dim")

    def __init__(self, coeff: complex, prefix, tail):
        c = complex(coeff)
        if not (math.isfinite(c.real) and math.isfinite(c.imag)):
            raise ValueError("coeff must be finite")
        tail_arr = _slot_array(tail, "tail")
        n = float(np.linalg.norm(tail_arr))
        if abs(n - 1.0) > NORM_TOL:
            raise ValueError(f"tail norm {n:.12g} deviates from 1 beyond {NORM_TOL}")
        d = tail_arr.size
        slots = []
        for i, s in enumerate(prefix):
            a = _slot_array(s, f"prefix slot {i + 1}")
            if a.size != d:
                raise ValueError(
                    f"prefix slot {i + 1} has dim {a.size}, tail has dim {d}"
                )
            slots.append(a)
        self._coeff = c
        self._prefix = tuple(slots)
        self._tail = tail_arr
        self._dim = d

    @property
    def coeff(self) -> complex:
        return self._coeff

    @property
    def prefix(self) -> tuple[np.ndarray, ...]:
        return self._prefix

    @property
    def tail(self) -> np.ndarray:
        return self._tail

    @property
    def dim(self) -> int:
        return self._dim

    @property
    def prefix_len(self) -> int:
        return len(self._prefix)

    def slot(self, alpha: int) -> np.ndarray:
        """Slot vector at 1-based position ``alpha`` (the tail beyond the prefix)."""
        if alpha < 1:
            raise ValueError("slot positions are 1-based")
        if alpha <= len(self._prefix):
            return self._prefix[alpha - 1]
        return self._tail

    def __repr__(self) -> str:
        return (
            f"ProductTerm(dim={self._dim}, prefix_len={len(self._prefix)}, "
            f"coeff={self._coeff:.6g})"
        )


def _trusted_term(coeff: complex, prefix: tuple, tail: np.ndarray, dim: int) -> ProductTerm:
    # Internal constructor for already-validated, possibly shared arrays.
    t = ProductTerm.__new__(ProductTerm)
    t._coeff = coeff
    t._prefix = prefix
    t._tail = tail
    t._dim = dim
    return t


class ProductState:
    """A finite linear combination of ``ProductTerm``s of one slot dimension."""

    __slots__ = ("_terms", "_dim")

    def __init__(self, terms, dim: int | None = None):
        ts = tuple(terms)
        if ts:
            d = ts[0].dim
            for t in ts:
                if t.dim != d:
                    raise ValueError("all terms must share one slot dimension")
            if dim is not None and dim != d:
                raise ValueError(f"dim={dim} conflicts with term dim {d}")
        else:
            if dim is None:
                raise ValueError("an empty ProductState needs an explicit dim")
            d = dim
        if d < 1:
            raise ValueError("dim must be positive")
        self._terms = ts
        self._dim = d

    @property
    def terms(self) -> tuple[ProductTerm, ...]:
        return self._terms

    @property
    def dim(self) -> int:
        return self._dim

    @property
    def max_prefix_len(self) -> int:
        return max((t.prefix_len for t in self._terms), default=0)

    def to_dict(self) -> dict:
        """Debug dump: coefficients and slot amplitudes as [re, im] pairs."""

        def vec(a: np.ndarray) -> list:
            return [[float(z.real), float(z.imag)] for z in a]

        return {
            "dim": self._dim,
            "terms": [
                {
                    "coeff": [float(t.coeff.real), float(t.coeff.imag)],
                    "prefix": [vec(s) for s in t.prefix],
                    "tail": vec(t.tail),
                }
                for t in self._terms
            ],
        }

    def __repr__(self) -> str:
        return f"ProductState(dim={self._dim}, terms={len(self._terms)})"


def ensemble(s: StateVector) -> ProductState:
    """The infinitely repeated preparation ``|s> |s> |s> ...`` (one term)."""
    return ProductState([ProductTerm(1.0, (), s)])


def add(a: ProductState, b: ProductState) -> ProductState:
    if a.dim != b.dim:
        raise ValueError(f"dimension mismatch: {a.dim} vs {b.dim}")
    return ProductState(a.terms + b.terms, dim=a.dim)


def scale(a: ProductState, c: complex) -> ProductState:
    c = complex(c)
    if not (math.isfinite(c.real) and math.isfinite(c.imag)):
        raise ValueError("scale factor must be finite")
    return ProductState(
        [_trusted_term(t.coeff * c, t.prefix, t.tail, t.dim) for t in a.terms],
        dim=a.dim,
    )


def _stacked_slots(state: ProductState, length: int) -> np.ndarray:
    # (n_terms, length, dim): each term's prefix continued by its tail.
    out = np.empty((len(state.terms), length, state.dim), dtype=np.complex128)
    for i, t in enumerate(state.terms):
        k = min(t.prefix_len, length)
        for j in range(k):
            out[i, j] = t.prefix[j]
        if k < length:
            out[i, k:] = t.tail
    return out


def pairwise_term_gram(
    a: ProductState, b: ProductState, rule: TailOverlapRule = DEFAULT_TAIL_RULE
) -> np.ndarray:
    """Matrix of term-pair scalar products, coefficients excluded.

    Entry (i, j) is ``prod_alpha <slot_i(alpha)|slot_j(alpha)>`` over the
    union prefix span, times the tail factor of the rule. Slot products are
    accumulated one slot position at a time across all term pairs, so the
    evaluation order is fixed by term index and reproducible.
    """
    if a.dim != b.dim:
        raise ValueError(f"dimension mismatch: {a.dim} vs {b.dim}")
    ta, tb = len(a.terms), len(b.terms)
    if ta == 0 or tb == 0:
        return np.zeros((ta, tb), dtype=np.complex128)
    tails_a = np.stack([t.tail for t in a.terms])
    tails_b = np.stack([t.tail for t in b.terms])
    z = tails_a.conj() @ tails_b.T
    gram = (np.abs(z - 1.0) <= rule.epsilon_tail).astype(np.complex128)
    span = max(a.max_prefix_len, b.max_prefix_len)
    if span:
        sa = _stacked_slots(a, span)
        sb = _stacked_slots(b, span)
        for alpha in range(span):
            gram *= sa[:, alpha, :].conj() @ sb[:, alpha, :].T
    return gram


def inner_infinite(
    a: ProductState, b: ProductState, rule: TailOverlapRule = DEFAULT_TAIL_RULE
) -> complex:
    """Scalar product ``<a|b>``, antilinear in ``a``.

    Bilinear extension over term pairs of the slot-product formula in the
    module docstring. Exact zeros from the tail rule are exact in the result.
    """
    gram = pairwise_term_gram(a, b, rule)
    if gram.size == 0:
        return 0j
    ca = np.array([t.coeff for t in a.terms], dtype=np.complex128)
    cb = np.array([t.coeff for t in b.terms], dtype=np.complex128)
    return complex(ca.conj() @ gram @ cb)


def norm(a: ProductState, rule: TailOverlapRule = DEFAULT_TAIL_RULE) -> float:
    """``sqrt(<a|a>)``, checking that the quadratic form behaves."""
    x = inner_infinite(a, a, rule)
    if abs(x.imag) > HERMITIAN_TOL:
        raise ArithmeticError(f"<a|a> has imaginary part {x.imag:.3g}")
    if x.real < -HERMITIAN_TOL:
        raise ArithmeticError(f"<a|a> is negative: {x.real:.3g}")
    return math.sqrt(max(x.real, 0.0))


def _proportionality(base: ProductTerm, other: ProductTerm, tol: float) -> complex | None:
    # Scalar g with other's product vector == g * base's, or None.
    z = complex(np.vdot(base.tail, other.tail))
    if abs(z - 1.0) > tol:
        return None
    g = 1.0 + 0j
    span = max(base.prefix_len, other.prefix_len)
    for alpha in range(1, span + 1):
        u = base.slot(alpha)
        v = other.slot(alpha)
        nu = float(np.linalg.norm(u))
        nv = float(np.linalg.norm(v))
        if nu <= tol and nv <= tol:
            continue
        if nu <= tol:
            return None
        g_alpha = complex(np.vdot(u, v)) / (nu * nu)
        if float(np.linalg.norm(v - g_alpha * u)) > tol * max(1.0, nv):
            return None
        g *= g_alpha
    return g


def compress(
    a: ProductState,
    merge_tol: float = MERGE_TOL,
    drop_tol: float = DROP_TOL,
) -> ProductState:
    """Merge terms that are scalar multiples of each other; drop dead weight.

    Two terms merge when every slot pair is proportional (within
    ``merge_tol``) and their tails agree under the tail rule at the same
    threshold; the coefficients combine through the accumulated slot
    factors. A term whose ``|coeff| * prod(prefix slot norms)`` falls at or
    below ``drop_tol`` is removed. The represented vector is unchanged up
    to those thresholds.
    """
    reps: list[list] = []  # [coeff, term]
    for t in a.terms:
        for rep in reps:
            g = _proportionality(rep[1], t, merge_tol)
            if g is not None:
                rep[0] = rep[0] + t.coeff * g
                break
        else:
            reps.append([t.coeff, t])
    kept = []
    for coeff, t in reps:
        weight = abs(coeff)
        for s in t.prefix:
            weight *= float(np.linalg.norm(s))
        if weight > drop_tol:
            kept.append(_trusted_term(coeff, t.prefix, t.tail, t.dim))
    return ProductState(kept, dim=a.dim)
