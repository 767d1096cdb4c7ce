"""Requests and reports for the command line, with JSON and CSV forms.

Numbers leave the package only as decimal strings so a report reads the
same on every platform.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import asdict, dataclass
from fractions import Fraction

from mpmath import mp, mpf

from .kernel.bigreal import decimal_string
from .kernel.precision import DomainError, bits_for_digits

MIN_DIGITS, MAX_DIGITS = 10, 10000
FORMATS = ("json", "csv", "plain")


def parse_rational(text: str) -> Fraction | None:
    """Exact value of ``"p/q"`` or a decimal literal; None for anything else
    (e.g. exponents too large to be worth keeping exactly)."""
    text = text.strip()
    try:
        value = Fraction(text)
    except (ValueError, ZeroDivisionError):
        return None
    if abs(value.numerator) > 10**200 or value.denominator > 10**200:
        return None
    return value


def to_mpf(text: str) -> mpf:
    exact = parse_rational(text)
    if exact is not None:
        return mpf(exact.numerator) / exact.denominator
    try:
        return mpf(text)
    except (ValueError, TypeError) as exc:
        raise DomainError(f"cannot parse number {text!r}") from exc


@dataclass(frozen=True)
class Request:
    command: str
    k: int | None = None
    a: str | None = None
    digits: int = 30
    method: str = "all"
    suite: str | None = None
    outer_terms: int | None = None
    format: str = "plain"
    extra: tuple = ()

    def __post_init__(self):
        if not MIN_DIGITS <= self.digits <= MAX_DIGITS:
            raise DomainError(f"digits must lie in [{MIN_DIGITS}, {MAX_DIGITS}]")
        if self.format not in FORMATS:
            raise ValueError(f"format must be one of {FORMATS}")
        if self.k is not None and self.k < 0:
            raise DomainError("k must be nonnegative")
        if self.a is not None and not mp.isfinite(to_mpf(self.a)):
            raise DomainError("a must be finite")

    @property
    def a_exact(self) -> Fraction | None:
        return parse_rational(self.a) if self.a is not None else None

    def a_value(self) -> mpf:
        """``a`` at the precision the request needs (exact when rational)."""
        with mp.workprec(bits_for_digits(self.digits, 64)):
            return to_mpf(self.a)


@dataclass(frozen=True)
class MethodResult:
    method: str
    value: str
    err_est: str
    terms: int
    ms: float
    flags: tuple = ()

    @classmethod
    def build(cls, method, value, err_est, terms, ms, digits, flags=()) -> "MethodResult":
        with mp.workprec(bits_for_digits(digits)):
            v = decimal_string(mpf(value), digits)
            e = decimal_string(mpf(err_est), 3)
        return cls(method, v, e, int(terms), round(float(ms), 3), tuple(flags))


@dataclass(frozen=True)
class CheckLine:
    id: str
    passed: bool
    detail: str


@dataclass(frozen=True)
class Report:
    request: Request
    results: tuple = ()
    checks: tuple = ()
    agreement: tuple = ()
    notices: tuple = ()

    def __post_init__(self):
        names = [r.method for r in self.results]
        if self.agreement and len(self.agreement) != len(names):
            raise ValueError("agreement matrix must be square over the results")
        for i, row in enumerate(self.agreement):
            if len(row) != len(names) or any(row[j] != self.agreement[j][i] for j in range(len(names))):
                raise ValueError("agreement matrix must be symmetric")

    @property
    def ok(self) -> bool:
        agreed = all(all(row) for row in self.agreement)
        return agreed and all(c.passed for c in self.checks)

    def failing(self) -> list:
        return [c.id for c in self.checks if not c.passed]


# ----------------------------------------------------------------------------
# JSON


def to_json(report: Report) -> str:
    doc = {
        "request": asdict(report.request),
        "results": [
            {"method": r.method, "value": r.value, "err_est": r.err_est, "terms": r.terms, "ms": r.ms, "flags": list(r.flags)}
            for r in report.results
        ],
        "checks": [{"id": c.id, "pass": c.passed, "detail": c.detail} for c in report.checks],
        "agreement": [list(row) for row in report.agreement],
        "notices": list(report.notices),
    }
    doc["request"]["extra"] = [list(p) for p in report.request.extra]
    return json.dumps(doc, indent=2, ensure_ascii=False)


def from_json(text: str) -> Report:
    doc = json.loads(text)
    req = dict(doc["request"])
    req["extra"] = tuple(tuple(p) for p in req.get("extra", ()))
    return Report(
        request=Request(**req),
        results=tuple(
            MethodResult(r["method"], r["value"], r["err_est"], r["terms"], r["ms"], tuple(r.get("flags", ())))
            for r in doc.get("results", ())
        ),
        checks=tuple(CheckLine(c["id"], c["pass"], c["detail"]) for c in doc.get("checks", ())),
        agreement=tuple(tuple(row) for row in doc.get("agreement", ())),
        notices=tuple(doc.get("notices", ())),
    )


# ----------------------------------------------------------------------------
# CSV and plain text

CSV_FIELDS = ("kind", "id", "value", "err_est", "terms", "ms", "pass", "detail")


def to_csv(report: Report) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_FIELDS)
    for r in report.results:
        w.writerow(("result", r.method, r.value, r.err_est, r.terms, r.ms, "", " ".join(r.flags)))
    for c in report.checks:
        w.writerow(("check", c.id, "", "", "", "", "true" if c.passed else "false", c.detail))
    return buf.getvalue()


def to_plain(report: Report) -> str:
    lines = list(f"note: {n}" for n in report.notices)
    if report.results:
        width = max(len(r.method) for r in report.results)
        if report.request.command == "gamma":
            # headline: the oracle value when present, else the only method run
            head = next((r for r in report.results if r.method == "reference"), report.results[0])
            lines.insert(0, head.value)
        if len(report.results) > 1 or report.request.command != "gamma":
            for r in report.results:
                flags = f"  [{', '.join(r.flags)}]" if r.flags else ""
                lines.append(f"{r.method:<{width}}  {r.value}  err {r.err_est}  terms {r.terms}  {r.ms:.1f} ms{flags}")
    if report.agreement and not all(all(row) for row in report.agreement):
        names = [r.method for r in report.results]
        bad = [f"{names[i]}/{names[j]}" for i in range(len(names)) for j in range(i + 1, len(names)) if not report.agreement[i][j]]
        lines.append("DISAGREEMENT: " + ", ".join(bad))
    for c in report.checks:
        lines.append(f"{'PASS' if c.passed else 'FAIL'}  {c.id}  {c.detail}")
    if report.checks:
        lines.append(f"{sum(c.passed for c in report.checks)}/{len(report.checks)} checks passed")
    return "\n".join(lines)


def render(report: Report) -> str:
    fmt = report.request.format
    if fmt == "json":
        return to_json(report)
    if fmt == "csv":
        return to_csv(report)
    return to_plain(report)
