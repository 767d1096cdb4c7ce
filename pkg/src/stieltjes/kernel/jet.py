"""Truncated Taylor series (jets) in ``t = s - center``.

A ``Jet`` of order K holds ``c_0 .. c_K`` for ``sum c_m t^m``. Binary
operations truncate to the smaller order. Coefficients may be ``mpf`` or
``mpc``; the arithmetic is the same.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from mpmath import mp, mpf

from .precision import DomainError


class Jet:
    __slots__ = ("center", "coeffs")

    def __init__(self, coeffs: Iterable, center=0):
        self.coeffs = tuple(coeffs)
        if not self.coeffs:
            raise ValueError("a jet needs at least one coefficient")
        self.center = center

    # construction -------------------------------------------------------

    @classmethod
    def constant(cls, c, order: int, center=0) -> "Jet":
        return cls([c] + [mpf(0)] * order, center)

    @classmethod
    def variable(cls, center, order: int) -> "Jet":
        """The identity ``s`` expanded about ``center``."""
        if order == 0:
            return cls([mpf(center)], center)
        return cls([mpf(center), mpf(1)] + [mpf(0)] * (order - 1), center)

    @classmethod
    def linear(cls, c0, c1, order: int, center=0) -> "Jet":
        if order == 0:
            return cls([c0], center)
        return cls([c0, c1] + [mpf(0)] * (order - 1), center)

    # access ---------------------------------------------------------------

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, m):
        return self.coeffs[m]

    def __len__(self):
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def __repr__(self):
        body = ", ".join(mp.nstr(c, 8) for c in self.coeffs)
        return f"Jet([{body}], center={mp.nstr(self.center, 8)})"

    def derivative(self, m: int):
        """m-th derivative at the center, ``m! c_m``."""
        return mp.factorial(m) * self.coeffs[m]

    def derivatives(self) -> list:
        return [self.derivative(m) for m in range(len(self.coeffs))]

    def truncate(self, order: int) -> "Jet":
        if order > self.order:
            raise ValueError(f"cannot raise order {self.order} to {order}")
        return Jet(self.coeffs[: order + 1], self.center)

    def evaluate(self, h):
        """Horner evaluation of the truncated polynomial at ``t = h``."""
        acc = self.coeffs[-1]
        for c in reversed(self.coeffs[:-1]):
            acc = acc * h + c
        return acc

    def magnitude(self):
        return max(abs(c) for c in self.coeffs)

    def map(self, fn) -> "Jet":
        return Jet([fn(c) for c in self.coeffs], self.center)

    # arithmetic -------------------------------------------------------------

    def _lift(self, other) -> "Jet":
        if isinstance(other, Jet):
            return other
        return Jet.constant(other, self.order, self.center)

    def __add__(self, other):
        o = self._lift(other)
        n = min(len(self), len(o))
        return Jet([x + y for x, y in zip(self.coeffs[:n], o.coeffs[:n])], self.center)

    __radd__ = __add__

    def __neg__(self):
        return Jet([-c for c in self.coeffs], self.center)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, Jet):
            return Jet([c * other for c in self.coeffs], self.center)
        return Jet(convolve(self.coeffs, other.coeffs), self.center)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not isinstance(other, Jet):
            return Jet([c / other for c in self.coeffs], self.center)
        return self * other.reciprocal()

    def __rtruediv__(self, other):
        return self.reciprocal() * other

    def __pow__(self, alpha):
        if isinstance(alpha, int) and alpha >= 0:
            out = Jet.constant(mpf(1), self.order, self.center)
            base = self
            while alpha:
                if alpha & 1:
                    out = out * base
                base = base * base
                alpha >>= 1
            return out
        return self.power(alpha)

    def reciprocal(self) -> "Jet":
        f = self.coeffs
        if f[0] == 0:
            raise DomainError("jet with zero constant term has no Taylor reciprocal")
        inv0 = 1 / f[0]
        g = [inv0]
        for n in range(1, len(f)):
            acc = f[1] * g[n - 1]
            for k in range(2, n + 1):
                acc += f[k] * g[n - k]
            g.append(-acc * inv0)
        return Jet(g, self.center)

    def exp(self) -> "Jet":
        f = self.coeffs
        g = [mp.exp(f[0])]
        for n in range(1, len(f)):
            acc = f[1] * g[n - 1]
            for k in range(2, n + 1):
                acc += k * f[k] * g[n - k]
            g.append(acc / n)
        return Jet(g, self.center)

    def log(self) -> "Jet":
        f = self.coeffs
        if f[0] == 0:
            raise DomainError("log of a jet with zero constant term")
        h = [mp.log(f[0])]
        inv0 = 1 / f[0]
        for n in range(1, len(f)):
            acc = n * f[n]
            for k in range(1, n):
                acc -= k * h[k] * f[n - k]
            h.append(acc * inv0 / n)
        return Jet(h, self.center)

    def power(self, alpha) -> "Jet":
        """``self ** alpha`` for a scalar exponent."""
        f = self.coeffs
        if f[0] == 0:
            raise DomainError("power of a jet with zero constant term")
        g = [mp.power(f[0], alpha)]
        inv0 = 1 / f[0]
        for n in range(1, len(f)):
            acc = 0
            for k in range(1, n + 1):
                acc += (alpha * k - (n - k)) * f[k] * g[n - k]
            g.append(acc * inv0 / n)
        return Jet(g, self.center)

    def shift_down(self) -> "Jet":
        """Divide by ``t``; requires ``c_0 == 0`` and drops one order."""
        if self.coeffs[0] != 0:
            raise DomainError("shift_down needs a vanishing constant term")
        return Jet(self.coeffs[1:], self.center)


def convolve(f: Sequence, g: Sequence) -> list:
    n = min(len(f), len(g))
    out = []
    for m in range(n):
        acc = f[0] * g[m]
        for k in range(1, m + 1):
            acc += f[k] * g[m - k]
        out.append(acc)
    return out


def exp_log_jet(log_x, order: int, scale=1) -> list:
    """Coefficients of ``scale * exp(-t log_x)``, i.e. ``scale * x^(-t)``."""
    out = [scale]
    term = scale
    neg = -log_x
    for m in range(1, order + 1):
        term = term * neg / m
        out.append(term)
    return out


def jet_reciprocal_pole(j: Jet):
    """Laurent decomposition of ``1/j`` for ``j = c_1 t + c_2 t^2 + ...``.

    Returns ``(pole_coeff, regular)`` with ``1/j = pole_coeff/t + regular(t)``.
    The regular part has order ``j.order - 2``.
    """
    if j.coeffs[0] != 0:
        raise DomainError("jet_reciprocal_pole expects c_0 == 0")
    if len(j.coeffs) < 2 or j.coeffs[1] == 0:
        raise DomainError("degenerate pole: c_1 == 0")
    inv = j.shift_down().reciprocal()
    if inv.order == 0:
        return inv.coeffs[0], Jet([mpf(0)], j.center)
    return inv.coeffs[0], Jet(inv.coeffs[1:], j.center)
