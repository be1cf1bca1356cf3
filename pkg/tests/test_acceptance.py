"""Acceptance criteria 1-12, one line each.

Run with ``pytest tests/test_acceptance.py -v`` or directly with
``python3 tests/test_acceptance.py``.
"""

from __future__ import annotations

import sys
import time
from fractions import Fraction
from itertools import product

import pytest

from ncjacobi import special
from ncjacobi.hirota import verify_bilinear
from ncjacobi.jacobi import verify_jacobi, verify_split
from ncjacobi.partitions import verify_bijection, verify_psi_sweep, verify_snake_sweep


def brute_partition_count(n: int) -> int:
    """Count non-increasing compositions of n by listing all 2^(n-1) compositions."""
    if n < 0:
        return 0
    if n == 0:
        return 1
    count = 0
    for cuts in product((0, 1), repeat=n - 1):
        parts, run = [], 1
        for c in cuts:
            if c:
                parts.append(run)
                run = 1
            else:
                run += 1
        parts.append(run)
        count += all(a >= b for a, b in zip(parts, parts[1:]))
    return count


def quiver(r):
    l = [Fraction(0)] if r == 0 else [Fraction(1)] + [Fraction(0)] * (r - 1) + [Fraction(-1)]
    return special.EpsilonParams(r, Fraction(1), Fraction(1, 3)), special.CouplingData(l)


def _timed(fn):
    start = time.perf_counter()
    out = fn()
    return out, time.perf_counter() - start


def c1():
    rep, secs = _timed(lambda: verify_bijection(12, 6, 17))
    return rep.passed and secs < 10, f"{rep.terms_checked} cases, {len(rep.failures)} failures, {secs:.1f}s"


def c2():
    rep = verify_psi_sweep(6, 4, 12)
    return rep.passed and rep.terms_checked == 9 * 30, f"{rep.terms_checked} cases, {len(rep.failures)} failures"


def c3():
    rep = verify_snake_sweep(8)
    return rep.passed and rep.terms_checked == 67, f"{rep.terms_checked} shapes, {len(rep.failures)} failures"


def c4():
    rep, secs = _timed(lambda: verify_split(8, 5))
    return rep.passed and rep.terms_checked == 67 * 11 and secs < 60, \
        f"{rep.terms_checked} cases, {len(rep.failures)} failures, {secs:.1f}s"


def c5():
    (a, b), secs = _timed(lambda: (verify_jacobi(6, False), verify_jacobi(6, True)))
    ok = a.passed and b.passed and a.terms_checked == b.terms_checked == 4096 and secs < 60
    return ok, f"{a.terms_checked}+{b.terms_checked} terms, {len(a.failures) + len(b.failures)} failures, {secs:.1f}s"


def c6():
    rep, secs = _timed(lambda: verify_bilinear(12))
    return rep.passed and secs < 120, f"{rep.terms_checked} terms, {len(rep.failures)} failures, {secs:.1f}s"


def c7():
    ht = special.HigherTimes(2, 0)
    prod = special.jtp_product(ht, 30)
    bad = checked = 0
    for M in range(-5, 6):
        for n in range(31):
            k = n - M * M
            want = brute_partition_count(k // 2) if k >= 0 and k % 2 == 0 else 0
            checked += 1
            bad += prod.coefficient_of({"z": M, "v": n}) != want
    return bad == 0, f"{checked} coefficients, {bad} mismatches"


def c8():
    reps, secs = _timed(lambda: [special.verify_bosfert(3, 2, 12), special.verify_bosfert(4, 2, 12)])
    ok = all(r.passed for r in reps) and secs < 120
    return ok, f"{sum(r.terms_checked for r in reps)} cells, {sum(len(r.failures) for r in reps)} mismatches, {secs:.1f}s"


def c9():
    terms = fails = families = 0
    for r in (0, 1, 2):
        ep, cd = quiver(r)
        for i in range(r + 1):
            rep = special.verify_qchar_jacobi(ep, cd, i, 4)
            terms += rep.terms_checked
            fails += len(rep.failures)
            for label, got, want in special.factor_families(ep, cd, i, 4):
                families += 1
                fails += got != want
    return fails == 0, f"{terms} checks, {families} factor identities, {fails} failures"


def c10():
    reps = []
    for r in (0, 1):
        ep, cd = quiver(r)
        reps.append(special.verify_red34(ep, cd, 0, 4, 3))
    return all(r.passed for r in reps), \
        f"{sum(r.terms_checked for r in reps)} coefficients, {sum(len(r.failures) for r in reps)} mismatches"


def c11():
    xi = special.verify_xi_solver(50, range(1, 5), seed=11)
    fay = special.verify_fay_sweep(20, seed=11)
    ok = xi.passed and fay.passed and xi.terms_checked == 200 and fay.terms_checked == 21
    return ok, f"{xi.terms_checked} solves, {fay.terms_checked} Fay checks, {len(xi.failures) + len(fay.failures)} failures"


def c12():
    j = verify_jacobi(6, False, split_charge_sign=-1)
    jt = verify_jacobi(6, True, split_charge_sign=-1)
    h = verify_bilinear(12, mutation="no-tilde")
    ok = len(j.failures) > 0 and len(jt.failures) > 0 and len(h.failures) > 0
    return ok, f"split-sign: {len(j.failures) + len(jt.failures)} failures; no-tilde: {len(h.failures)} failures"


CRITERIA = [
    (1, "bijection roundtrip", c1),
    (2, "psi identities", c2),
    (3, "snake classes and bounds", c3),
    (4, "split factorization", c4),
    (5, "noncommutative triple product, both orderings", c5),
    (6, "bilinear identity to grade 12", c6),
    (7, "classical triple product", c7),
    (8, "higher-times refinement", c8),
    (9, "q-character Theta-transform", c9),
    (10, "commutative limit", c10),
    (11, "xi solver and Fay identity", c11),
    (12, "mutation sensitivity", c12),
]


def _line(number, title, ok, detail):
    return f"[criterion {number:2d}] {'PASS' if ok else 'FAIL'}  {title}: {detail}"


@pytest.mark.parametrize("number, title, fn", CRITERIA, ids=[f"criterion_{n}" for n, _, _ in CRITERIA])
def test_criterion(number, title, fn, capsys):
    ok, detail = fn()
    with capsys.disabled():
        print("\n" + _line(number, title, ok, detail), end="  ")
    assert ok, detail


if __name__ == "__main__":
    failed = 0
    for number, title, fn in CRITERIA:
        ok, detail = fn()
        failed += not ok
        print(_line(number, title, ok, detail), flush=True)
    sys.exit(1 if failed else 0)
