"""Command line: ``stieltjes gamma | validate | race | dirichlet``.

Exit codes: 0 success, 1 failed check or disagreement between methods,
2 domain error, 3 non-convergence.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys
import time

from mpmath import mp, mpf

from . import checks
from .combinatorics import CACHE_ENV, seed_cache
from .kernel.precision import ConvergenceError, DomainError, bits_for_digits
from .lerch import DirichletCharacter, dirichlet_L_laurent
from .methods import METHOD_NAMES, REGISTRY, agree, applicable, compute
from .report import CheckLine, MethodResult, Report, Request, render

EXIT_OK, EXIT_FAIL, EXIT_DOMAIN, EXIT_NONCONVERGENCE = 0, 1, 2, 3

log = logging.getLogger("stieltjes")


def _run_methods(req: Request, names) -> tuple:
    a = req.a_value()
    inside, skipped = applicable(req.k, a, names)
    notices = tuple(f"{m} skipped: needs {REGISTRY[m].note}" for m in skipped)
    if not inside:
        raise DomainError(f"no method applies to k={req.k}, a={req.a}")
    raw = []
    for m in inside:
        t0 = time.perf_counter()
        with mp.workprec(bits_for_digits(req.digits, 16)):
            v = compute(m, req.k, a, req.digits, req.outer_terms)
        raw.append((v, (time.perf_counter() - t0) * 1000))
    return raw, notices


def _method_report(req: Request, raw, notices, order_by_time=False) -> Report:
    if order_by_time:
        raw = sorted(raw, key=lambda p: p[1])
    results = tuple(
        MethodResult.build(v.method, v.value, v.err_est, v.terms_used, ms, req.digits, v.flags) for v, ms in raw
    )
    with mp.workprec(bits_for_digits(req.digits, 16)):
        matrix = tuple(tuple(agree(u, w) for w, _ in raw) for u, _ in raw)
    return Report(req, results, (), matrix if len(raw) > 1 else (), notices)


def cmd_gamma(req: Request) -> Report:
    names = METHOD_NAMES if req.method == "all" else (req.method,)
    if req.method != "all" and req.method not in REGISTRY:
        raise DomainError(f"unknown method {req.method!r}")
    if req.method != "all" and not REGISTRY[req.method].domain(req.k, req.a_value()):
        raise DomainError(f"{req.method} needs {REGISTRY[req.method].note}")
    raw, notices = _run_methods(req, names)
    return _method_report(req, raw, notices)


def cmd_race(req: Request) -> Report:
    raw, notices = _run_methods(req, METHOD_NAMES)
    return _method_report(req, raw, notices, order_by_time=True)


def cmd_validate(req: Request) -> Report:
    results = checks.run_suite(req.suite or "all", req.digits)
    return Report(req, (), tuple(CheckLine(r.id, r.passed, r.detail) for r in results))


def cmd_dirichlet(req: Request) -> Report:
    path = dict(req.extra)["character"]
    with open(path, encoding="utf-8") as fh:
        chi = DirichletCharacter.from_json(fh.read())
    K = req.k if req.k is not None else 2
    t0 = time.perf_counter()
    with mp.workprec(bits_for_digits(req.digits, 16)):
        lau = dirichlet_L_laurent(chi, K)
    ms = (time.perf_counter() - t0) * 1000
    err = mp.ldexp(mpf(1), -bits_for_digits(req.digits) + 4)
    rows = []
    for name, c in [("pole", lau.pole)] + [(f"coeff{n}", c) for n, c in enumerate(lau.coeffs)]:
        rows.append(MethodResult.build(name, c.real, err, chi.modulus, ms, req.digits))
        if c.imag != 0:
            rows.append(MethodResult.build(name + ".imag", c.imag, err, chi.modulus, ms, req.digits))
    return Report(req, tuple(rows))


COMMANDS = {"gamma": cmd_gamma, "race": cmd_race, "validate": cmd_validate, "dirichlet": cmd_dirichlet}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv", "plain"), default="plain")
    common.add_argument("--seed-cache", metavar="DIR", default=None,
                        help=f"directory for the Stirling table cache (default: ${CACHE_ENV})")
    common.add_argument("--digits", type=int, default=30)
    common.add_argument("-v", "--verbose", action="store_true")

    p = argparse.ArgumentParser(prog="stieltjes", description="Stieltjes constants to arbitrary precision.")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gamma", parents=[common], help="compute gamma_k(a)")
    g.add_argument("--k", type=int, required=True)
    g.add_argument("--a", default="1", help="decimal or p/q")
    g.add_argument("--method", default="all", choices=("all",) + METHOD_NAMES)
    g.add_argument("--outer-terms", type=int, default=None)

    r = sub.add_parser("race", parents=[common], help="time every applicable representation")
    r.add_argument("--k", type=int, required=True)
    r.add_argument("--a", default="1")

    v = sub.add_parser("validate", parents=[common], help="run a check suite")
    v.add_argument("--suite", default="all", choices=checks.SUITES)

    d = sub.add_parser("dirichlet", parents=[common], help="Laurent data of L(s, chi) at s = 1")
    d.add_argument("--character", required=True, metavar="FILE",
                   help='JSON {"modulus": m, "values": [[re, im], ...]} at 1..m')
    d.add_argument("--K", dest="k", type=int, default=2)
    return p


def _request(ns) -> Request:
    extra = (("character", ns.character),) if ns.command == "dirichlet" else ()
    return Request(
        command=ns.command,
        k=getattr(ns, "k", None),
        a=getattr(ns, "a", None),
        digits=ns.digits,
        method=getattr(ns, "method", "all"),
        suite=getattr(ns, "suite", None),
        outer_terms=getattr(ns, "outer_terms", None),
        format=ns.format,
        extra=extra,
    )


def main(argv=None) -> int:
    ns = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if ns.verbose else logging.WARNING, format="%(name)s: %(message)s")
    try:
        cache_dir = ns.seed_cache or os.environ.get(CACHE_ENV)
        if cache_dir:
            seed_cache(cache_dir)
        req = _request(ns)
        report = COMMANDS[ns.command](req)
    except DomainError as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except ConvergenceError as exc:
        print(f"did not converge: {exc}", file=sys.stderr)
        return EXIT_NONCONVERGENCE
    except (OSError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    print(render(report))
    if not report.ok:
        if report.checks:
            print("failing checks: " + ", ".join(report.failing()), file=sys.stderr)
        else:
            print("methods disagree", file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
