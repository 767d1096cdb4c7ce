"""Named representations of gamma_k(a) behind one calling convention.

Each entry knows its own domain, so callers can run "every method that
applies" without repeating the domain rules.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from mpmath import mp, mpf

from .core import (
    TruncationPlan,
    gamma1_exp_series_terms,
    gamma_addition,
    gamma_exp_series_euler,
    euler_correction_sums,
    gamma_series_prop2,
    gamma_series_prop4,
)
from .hurwitz import StieltjesValue, stieltjes_reference
from .kernel.precision import bits_for_digits, to_mpf


@dataclass(frozen=True)
class Method:
    name: str
    domain: Callable[[int, mpf], bool]
    note: str
    run: Callable[[int, mpf, TruncationPlan], StieltjesValue]


def nearby_shift(a: mpf) -> mpf:
    """Offset ``b`` used by the addition method: the series starts at
    ``a - b`` and converges with ratio at most 1/3."""
    return -min(mpf(1) / 4, a / 2)


def _addition(k, a, plan):
    b = nearby_shift(a)
    return gamma_addition(k, a - b, b, plan)


def _exp_series(k, a, plan):
    digits = plan.resolved_digits()
    with mp.workprec(bits_for_digits(digits)):
        if k == 0:
            value = 2 * gamma_exp_series_euler(plan)
            terms = euler_correction_sums(plan)[2]
        else:
            value, terms = gamma1_exp_series_terms(plan)
        err = mp.ldexp(abs(value) + 1, -bits_for_digits(digits) + 2)
    return StieltjesValue(k, to_mpf(a), value, err, "exp-series", terms, digits)


REGISTRY = {
    m.name: m
    for m in (
        Method("reference", lambda k, a: a > 0, "a > 0", lambda k, a, p: stieltjes_reference(k, a, p.resolved_digits())),
        Method(
            "prop2i", lambda k, a: a > 1, "a > 1",
            lambda k, a, p: gamma_series_prop2("i", k, a, p),
        ),
        Method(
            "prop2ii", lambda k, a: 2 * a > 1, "a > 1/2",
            lambda k, a, p: gamma_series_prop2("ii", k, a, p),
        ),
        Method(
            "prop2iii", lambda k, a: 2 * a > 1, "a > 1/2",
            lambda k, a, p: gamma_series_prop2("iii", k, a, p),
        ),
        Method(
            "prop4", lambda k, a: a > 0, "a > 0",
            lambda k, a, p: gamma_series_prop4(k, a, plan=p),
        ),
        Method("addition", lambda k, a: a > 0, "a > 0", _addition),
        Method("exp-series", lambda k, a: k in (0, 1) and a == 1, "k in {0, 1}, a = 1", _exp_series),
    )
}

METHOD_NAMES = tuple(REGISTRY)


def compute(name: str, k: int, a, digits: int, outer_terms: int | None = None) -> StieltjesValue:
    plan = TruncationPlan(digits=digits) if outer_terms is None else TruncationPlan(outer_terms, digits=digits)
    return REGISTRY[name].run(k, to_mpf(a), plan)


def applicable(k: int, a, names=None) -> tuple[list, list]:
    """``(in_domain, skipped)`` method names for ``gamma_k(a)``."""
    a = to_mpf(a)
    names = names or METHOD_NAMES
    inside, skipped = [], []
    for n in names:
        (inside if REGISTRY[n].domain(k, a) else skipped).append(n)
    return inside, skipped


def agree(u: StieltjesValue, v: StieltjesValue) -> bool:
    return abs(u.value - v.value) <= u.err_est + v.err_est
