"""Double-exponential quadrature (tanh-sinh, exp-sinh, sinh-sinh).

Each level halves the step and only evaluates the new (odd) nodes, so the
estimates of successive levels are nested. Node tables are cached per
(family, precision, level).
"""

from __future__ import annotations

import math
import threading
from typing import Callable

from mpmath import mp, mpf

from .summation import SumReport

_NODE_CACHE: dict = {}
_NODE_LOCK = threading.Lock()

FINITE, HALF_LINE, FULL_LINE = "finite", "half-line", "full-line"


def _t_max(prec: int) -> float:
    return math.asinh(2 * (prec * math.log(2) + 20) / math.pi)


def _nodes(family: str, level: int):
    """Nodes ``(t, u, w)`` with odd multiples of 2^-level (all integers at level 0).

    For ``finite``: ``u`` is the distance of the node to the nearer endpoint of
    [-1, 1] and ``w`` the weight. For the other families ``u`` is the mapped
    abscissa itself.
    """
    key = (family, mp.prec, level)
    with _NODE_LOCK:
        cached = _NODE_CACHE.get(key)
    if cached is not None:
        return cached
    h = mp.ldexp(mpf(1), -level)
    tmax = _t_max(mp.prec)
    pos = []
    j = 0 if level == 0 else 1
    step = 1 if level == 0 else 2
    half_pi = mp.pi / 2
    while True:
        t = j * h
        if t > tmax:
            break
        sh, ch = mp.sinh(t), mp.cosh(t)
        v = half_pi * sh
        if family == FINITE:
            ev = mp.exp(v)
            cv = (ev + 1 / ev) / 2
            dist = 1 / (ev * cv)  # 1 - tanh(v)
            w = half_pi * ch / (cv * cv)
            pos.append((t, dist, w))
        elif family == HALF_LINE:
            pos.append((t, mp.exp(v), half_pi * ch * mp.exp(v)))
        else:
            pos.append((t, mp.sinh(v), half_pi * ch * mp.cosh(v)))
        j += step
    neg = []
    for t, u, w in pos:
        if t == 0:
            continue
        if family == FINITE:
            neg.append((-t, u, w))
        elif family == HALF_LINE:
            # exp(-v) mirrors exp(v); weight uses the same cosh(t)
            v = half_pi * mp.sinh(t)
            neg.append((-t, mp.exp(-v), half_pi * mp.cosh(t) * mp.exp(-v)))
        else:
            neg.append((-t, -u, w))
    table = (pos, neg)
    with _NODE_LOCK:
        _NODE_CACHE[key] = table
    return table


def _classify(domain):
    a, b = domain
    a, b = mpf(a), mpf(b)
    if mp.isinf(a) and mp.isinf(b):
        return FULL_LINE, a, b
    if mp.isinf(a) or mp.isinf(b):
        return HALF_LINE, a, b
    return FINITE, a, b


def _level_sum(f, family, a, b, level, negligible):
    pos, neg = _nodes(family, level)
    total = mpf(0)
    for side in (pos, neg):
        small = 0
        for t, u, w in side:
            if family == FINITE:
                half = (b - a) / 2
                left = t < 0
                x = a + half * u if left else b - half * u
                if x <= a or x >= b:
                    break
                c = half * w * f(x)
            elif family == HALF_LINE:
                if mp.isinf(b):
                    x = a + u
                else:
                    x = b - u
                c = w * f(x)
            else:
                c = w * f(u)
            total += c
            if abs(c) <= negligible and abs(t) >= 1:
                small += 1
                if small >= 3:
                    break
            else:
                small = 0
    return total


def quadrature(
    f: Callable[[mpf], mpf],
    domain,
    eps,
    *,
    relative: bool = False,
    min_level: int = 3,
    max_level: int = 12,
) -> SumReport:
    """Integrate ``f`` over ``domain = (a, b)``; infinite ends allowed.

    Levels are refined until two successive estimates agree within ``eps``
    (times ``|I|`` when ``relative``). ``terms_used`` is the final level.

    Beyond ``|t| >= 1`` a direction is abandoned after three consecutive
    negligible contributions, so integrands must decay monotonically toward
    the ends of each piece; split interior peaks and breakpoints first.
    """
    family, a, b = _classify(domain)
    if family == FINITE and a == b:
        return SumReport(mpf(0), 0, True, mpf(0))
    if family == FINITE and a > b:
        rep = quadrature(f, (b, a), eps, relative=relative, min_level=min_level, max_level=max_level)
        return SumReport(-rep.value, rep.terms_used, rep.converged, rep.tail_bound)
    eps = mpf(eps)
    with mp.workprec(mp.prec + 10):
        raw = _level_sum(f, family, a, b, 0, mpf(0))
        estimate = raw
        prev = None
        diff = mpf("inf")
        for level in range(1, max_level + 1):
            h = mp.ldexp(mpf(1), -level)
            scale = abs(estimate) if relative else 1
            negligible = eps * scale * mp.ldexp(mpf(1), -20)
            raw += _level_sum(f, family, a, b, level, negligible)
            prev, estimate = estimate, raw * h
            diff = abs(estimate - prev)
            thresh = eps * abs(estimate) if relative else eps
            if level >= min_level and diff <= thresh:
                return SumReport(+estimate, level, True, diff)
    return SumReport(+estimate, max_level, False, diff)
