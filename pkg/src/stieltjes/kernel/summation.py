"""Convergence-controlled summation of scalar or jet-valued terms."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from mpmath import mp, mpf

from .jet import Jet
from .precision import ConvergenceError

#: Number of consecutive small increments required before declaring convergence.
STABILITY_WINDOW = 3


@dataclass(frozen=True)
class SumReport:
    value: object
    terms_used: int
    converged: bool
    tail_bound: mpf


def _size(x) -> mpf:
    if isinstance(x, Jet):
        return x.magnitude()
    return abs(x)


def _check_finite(x, n):
    vals = x.coeffs if isinstance(x, Jet) else (x,)
    for v in vals:
        if not mp.isfinite(v):
            raise ConvergenceError(f"non-finite term at index {n}: {v}")


def sum_until_converged(
    term: Callable[[int], object],
    eps,
    min_terms: int = 1,
    max_terms: int = 10_000,
    *,
    start: int = 0,
    relative: bool = True,
    window: int = STABILITY_WINDOW,
) -> SumReport:
    """Sum ``term(start), term(start+1), ...`` until the increments settle.

    Stops once the last ``window`` increments are each at most the threshold,
    which is ``eps * |partial sum|`` when ``relative`` and ``eps`` otherwise,
    and the geometric tail extrapolated from them is also below it.
    ``tail_bound`` is an absolute estimate of the neglected tail.
    """
    eps = mpf(eps)
    if eps <= 0:
        raise ValueError("eps must be positive")
    if not (1 <= min_terms <= max_terms):
        raise ValueError("need 1 <= min_terms <= max_terms")

    total = None
    recent: list[mpf] = []
    n_used = 0
    tail = mpf(0)
    for i in range(max_terms):
        n = start + i
        t = term(n)
        _check_finite(t, n)
        total = t if total is None else total + t
        n_used = i + 1
        recent.append(_size(t))
        if len(recent) > window:
            recent.pop(0)
        tail = _tail_estimate(recent)
        if n_used < min_terms or len(recent) < window:
            continue
        thresh = eps * _size(total) if relative else eps
        if all(r <= thresh for r in recent) and tail <= thresh:
            return SumReport(total, n_used, True, tail)
    return SumReport(total, n_used, False, max(tail, recent[-1] if recent else mpf(0)))


def _tail_estimate(recent: list[mpf]) -> mpf:
    last = recent[-1]
    if len(recent) < 2 or last == 0:
        return last
    prev = recent[-2]
    if prev == 0:
        return last
    r = last / prev
    if r < mpf("0.9"):
        return last * r / (1 - r)
    # slow or erratic decay: no extrapolation, charge a few more terms
    return 10 * last
