"""Exact Stirling numbers of the first kind, Bernoulli and harmonic numbers.

Signed Stirling numbers ``s(n, k)`` are kept in a monotonically growing
triangular table that can be persisted to a text cache file::

    # stirling1 v1 n_max=<N>
    1
    0 1
    0 -1 1
    ...

Row ``n`` lists ``s(n, 0) .. s(n, n)``. A cache that fails any structural or
recurrence check is discarded and rebuilt.
"""

from __future__ import annotations

import logging
import os
import threading
from fractions import Fraction
from math import comb, factorial
from pathlib import Path

log = logging.getLogger(__name__)

CACHE_ENV = "STIELTJES_CACHE"
CACHE_FILE = "stirling1.txt"
SCHEMA = "stirling1 v1"


class StirlingTable:
    """Triangular table of signed Stirling numbers of the first kind."""

    def __init__(self):
        self.rows: list[list[int]] = [[1]]
        self._lock = threading.Lock()

    @property
    def n_max(self) -> int:
        return len(self.rows) - 1

    def ensure(self, n: int) -> None:
        if n <= self.n_max:
            return
        with self._lock:
            rows = self.rows
            while len(rows) <= n:
                m = len(rows) - 1
                prev = rows[m]
                # s(m+1, k) = s(m, k-1) - m s(m, k)
                row = [0] * (m + 2)
                for k in range(1, m + 2):
                    left = prev[k - 1]
                    right = prev[k] if k <= m else 0
                    row[k] = left - m * right
                rows.append(row)

    def __call__(self, n: int, k: int) -> int:
        if n < 0 or k < 0 or k > n:
            return 0
        self.ensure(n)
        return self.rows[n][k]

    def row(self, n: int) -> list[int]:
        self.ensure(n)
        return list(self.rows[n])

    # persistence ---------------------------------------------------------

    def dump(self, path: os.PathLike) -> None:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        tmp = path.with_suffix(".tmp")
        with open(tmp, "w") as fh:
            fh.write(f"# {SCHEMA} n_max={self.n_max}\n")
            for row in self.rows:
                fh.write(" ".join(str(v) for v in row))
                fh.write("\n")
        os.replace(tmp, path)

    @classmethod
    def load(cls, path: os.PathLike) -> "StirlingTable":
        """Read and fully verify a cache file; raises ValueError if corrupt."""
        with open(path) as fh:
            header = fh.readline().strip()
            prefix = f"# {SCHEMA} n_max="
            if not header.startswith(prefix):
                raise ValueError(f"bad cache header: {header!r}")
            n_max = int(header[len(prefix):])
            rows = [[int(tok) for tok in line.split()] for line in fh if line.strip()]
        if len(rows) != n_max + 1:
            raise ValueError("row count does not match header")
        verify_rows(rows)
        table = cls()
        table.rows = rows
        return table


def verify_rows(rows: list[list[int]]) -> None:
    if rows[0] != [1]:
        raise ValueError("row 0 must be [1]")
    for n in range(1, len(rows)):
        row, prev = rows[n], rows[n - 1]
        if len(row) != n + 1:
            raise ValueError(f"row {n} has wrong length")
        if row[0] != 0 or row[n] != 1:
            raise ValueError(f"row {n} boundary values wrong")
        for k in range(1, n):
            if row[k] != prev[k - 1] - (n - 1) * prev[k]:
                raise ValueError(f"recurrence fails at ({n}, {k})")


_TABLE = StirlingTable()
_TABLE_LOCK = threading.Lock()


def table() -> StirlingTable:
    return _TABLE


def cache_path(directory: os.PathLike | None = None) -> Path | None:
    directory = directory or os.environ.get(CACHE_ENV)
    return Path(directory) / CACHE_FILE if directory else None


def seed_cache(directory: os.PathLike | None = None, n_max: int = 0) -> StirlingTable:
    """Load the persisted table (rebuilding a corrupt one) and grow it to ``n_max``."""
    global _TABLE
    path = cache_path(directory)
    with _TABLE_LOCK:
        if path is not None and path.exists():
            try:
                loaded = StirlingTable.load(path)
                if loaded.n_max > _TABLE.n_max:
                    _TABLE = loaded
            except (ValueError, OSError) as exc:
                log.warning("discarding stirling cache %s: %s", path, exc)
        _TABLE.ensure(n_max)
        if path is not None:
            _TABLE.dump(path)
    return _TABLE


def stirling1(n: int, k: int) -> int:
    """Signed Stirling number of the first kind; 0 outside ``0 <= k <= n``."""
    return _TABLE(n, k)


# Bernoulli numbers --------------------------------------------------------

_BERNOULLI: list[Fraction] = [Fraction(1)]
_BERN_LOCK = threading.Lock()


def bernoulli(j: int) -> Fraction:
    """Exact Bernoulli number with ``B_1 = -1/2``."""
    if j < 0:
        raise ValueError("j must be nonnegative")
    if j == 1:
        return Fraction(-1, 2)
    if j > 1 and j % 2:
        return Fraction(0)
    with _BERN_LOCK:
        vals = _BERNOULLI
        while len(vals) <= j:
            m = len(vals)
            # sum_{k<=m} C(m+1, k) B_k = 0
            acc = Fraction(0)
            for k in range(m):
                bk = vals[k]
                if bk:
                    acc += comb(m + 1, k) * bk
            vals.append(-acc / (m + 1))
        return vals[j]


def _init_bernoulli():
    # index 1 is stored with its true value so the recurrence stays valid
    _BERNOULLI.append(Fraction(-1, 2))


_init_bernoulli()


# harmonic numbers ---------------------------------------------------------

_HARMONIC: dict[int, list[Fraction]] = {}


def harmonic(n: int, r: int = 1) -> Fraction:
    """Generalized harmonic number ``H_n^(r) = sum_{k<=n} k^-r``."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    with _BERN_LOCK:
        vals = _HARMONIC.setdefault(r, [Fraction(0)])
        while len(vals) <= n:
            m = len(vals)
            vals.append(vals[-1] + Fraction(1, m**r))
        return vals[n]


def pochhammer_deriv_at_one(j: int, ell: int) -> int:
    """``(d/ds)^ell (s)_j`` at ``s = 1``, equal to ``(-1)^(j+ell) ell! s(j+1, ell+1)``."""
    sign = -1 if (j + ell) % 2 else 1
    return sign * factorial(ell) * stirling1(j + 1, ell + 1)


def rising_factorial_coeffs(j: int) -> list[int]:
    """Coefficients of ``(s)_j`` in powers of ``s`` (unsigned Stirling numbers)."""
    return [(-1) ** ((j + k) % 2) * stirling1(j, k) for k in range(j + 1)]
