"""Matrix views, the X_lambda observable, and the noncommutative Jacobi identities.

All checks are termwise: a truncated product is expanded one factor choice
at a time and each resulting monomial is compared, in normal form, with the
partner predicted by the boson-fermion bijection.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from itertools import product as iproduct

from .ncalg import NCMonomial, NCPoly, Y, Yt, mono_mul, render
from .partitions import (ChargedPartition, HalfIntSetPair, Partition, charged_to_sets,
                         enumerate_partitions, profile, sets_to_charged)
from .report import VerificationReport, parallel_map, timed

CHARGE_NOTE = ("charge convention: a term with (d+, d-) = (|Sigma+|, |Sigma-|) carries S^(d- - d+) "
               "and row-shifted matrix [M']Y with M' = d- - d+, where [M']Y[a,b] = Y[a+M',b]")


class YBase:
    family = "Y"

    def entry_power(self, a: int, b: int, e: int) -> NCMonomial:
        return NCMonomial._raw(1, ((Y(a, b), e),), 0) if e else NCMonomial()

    def __eq__(self, other):
        return type(other) is YBase

    def __hash__(self):
        return hash("Y")


class YtildeBase:
    family = "Ytilde"

    def entry_power(self, a: int, b: int, e: int) -> NCMonomial:
        return NCMonomial(1, {Yt(a, b): e})

    def __eq__(self, other):
        return type(other) is YtildeBase

    def __hash__(self):
        return hash("Ytilde")


@dataclass(frozen=True)
class MatrixView:
    """entry(a, b) = base(t(a + row_shift, b + col_shift)), t = swap when transposed."""

    base: object = YBase()
    row_shift: int = 0
    col_shift: int = 0
    transposed: bool = False

    @property
    def family(self) -> str:
        return self.base.family

    def coords(self, a: int, b: int) -> tuple[int, int]:
        a, b = a + self.row_shift, b + self.col_shift
        return (b, a) if self.transposed else (a, b)

    def entry_power(self, a: int, b: int, e: int) -> NCMonomial:
        return self.base.entry_power(*self.coords(a, b), e)

    def entry(self, a: int, b: int) -> NCMonomial:
        return self.entry_power(a, b, 1)

    def ratio(self, num: tuple[int, int], den: tuple[int, int]) -> NCMonomial:
        return mono_mul(self.entry_power(*num, 1), self.entry_power(*den, -1))

    def shifted(self, row: int = 0, col: int = 0) -> "MatrixView":
        return MatrixView(self.base, self.row_shift + row, self.col_shift + col, self.transposed)

    def transpose(self) -> "MatrixView":
        return MatrixView(self.base, self.col_shift, self.row_shift, not self.transposed)


IDENTITY = MatrixView()


def row_shifted(M: int, view: MatrixView = IDENTITY) -> MatrixView:
    """[M]Y: entries Y[a+M, b]."""
    return view.shifted(row=M)


def col_shifted(M: int, view: MatrixView = IDENTITY) -> MatrixView:
    """Y[M]: entries Y[a, b+M]."""
    return view.shifted(col=M)


def resolve(view: MatrixView, exponents) -> NCMonomial:
    """Product of view entries raised to the given exponents; all in the commutative part."""
    out = NCMonomial()
    for (a, b), e in sorted(exponents.items()):
        if e:
            out = mono_mul(out, view.entry_power(a, b, e))
    return out


def x_lambda_exponents(lam: Partition) -> Counter:
    acc = Counter({(0, 0): 1})
    for a, b in lam.boxes():
        acc[(a - 1, b)] += 1
        acc[(a - 1, b - 1)] -= 1
        acc[(a, b - 1)] += 1
        acc[(a, b)] -= 1
    return acc


def x_lambda(view: MatrixView, lam: Partition) -> NCMonomial:
    return resolve(view, x_lambda_exponents(lam))


def _set_pair_integers(sp: HalfIntSetPair) -> tuple[list[int], list[int]]:
    """n_i = r+ - 1/2 (decreasing) and n~_j = r- + 1/2 (decreasing)."""
    return [(r - 1) // 2 for r in sp.plus], [(r + 1) // 2 for r in sp.minus]


def split_factors(sp: HalfIntSetPair, view: MatrixView = IDENTITY) -> list[NCMonomial]:
    """The ordered factors of the split product, without the trailing S^M."""
    ns, nts = _set_pair_integers(sp)
    factors = [mono_mul(view.ratio((nt, 0), (nt, 1)), NCMonomial.shift(1)) for nt in nts]
    factors.append(view.entry(0, 0))
    for n in reversed(ns):
        factors.append(mono_mul(view.ratio((-1, n), (0, n)), NCMonomial.shift(-1)))
    return factors


def split_rhs(sp: HalfIntSetPair, view: MatrixView = IDENTITY, charge_sign: int = 1) -> NCMonomial:
    """(->prod_j Y[n~j,0]/Y[n~j,1] S) Y[0,0] (<-prod_i Y[-1,n_i]/Y[0,n_i] S^-1) S^M.

    ``charge_sign`` = -1 flips the trailing S-power; only used for mutation tests.
    """
    out = NCMonomial()
    for f in split_factors(sp, view):
        out = mono_mul(out, f)
    M = sp.d_plus - sp.d_minus
    return mono_mul(out, NCMonomial.shift(charge_sign * M))


def _box_ratio_exponents(boxes, M: int) -> Counter:
    acc = Counter()
    for i, j in boxes:
        acc[(-M + i - 1, j)] += 1
        acc[(-M + i, j - 1)] += 1
        acc[(-M + i - 1, j - 1)] -= 1
        acc[(-M + i, j)] -= 1
    return acc


def _mono(exps: Counter) -> NCMonomial:
    return resolve(IDENTITY, exps)


def split_intermediate_checks(M: int, lam: Partition) -> list[tuple[str, NCMonomial, NCMonomial]]:
    """Each intermediate equality of the split factorization, as (label, lhs, rhs)."""
    sp = charged_to_sets(ChargedPartition(M, lam))
    dp, dm = sp.d_plus, sp.d_minus
    lt = lam.conjugate
    prof = profile(ChargedPartition(M, lam))
    first = x_lambda(row_shifted(-M), lam)
    checks = []

    second = Counter({(dm, dm): 1})
    for j in range(1, dm + 1):
        second[(-M + lt.part(j), j - 1)] += 1
        second[(-M + lt.part(j), j)] -= 1
    for i in range(1, dp + 1):
        second[(-M + i - 1, lam.part(i))] += 1
        second[(-M + i, lam.part(i))] -= 1
    checks.append(("line1=line2", first, _mono(second)))

    third = NCMonomial(1, {Y(0, 0): 1}).conjugate(dm)
    for j, nt in enumerate(prof.n_tilde, 1):
        third = mono_mul(third, IDENTITY.ratio((nt, 0), (nt, 1)).conjugate(j - 1))
    for i, n in enumerate(prof.n, 1):
        third = mono_mul(third, IDENTITY.ratio((-1, n), (0, n)).conjugate(-M + i))
    checks.append(("line2=line3", _mono(second), third))

    if dm > 0:
        lam_minus = [(i, j) for j in range(1, dm + 1) for i in range(1, lt.part(j) + 1)]
        L = lt.part(dm + 1)
        lam_plus = [(i, j) for i in range(1, L + 1) for j in range(dm + 1, lam.part(i) + 1)]

        f1_lhs = _box_ratio_exponents(lam_minus, M)
        f1_lhs[(-M, 0)] += 1
        f1_rhs = Counter({(-M, dm): 1})
        for j in range(1, dm + 1):
            f1_rhs[(-M + lt.part(j), j - 1)] += 1
            f1_rhs[(-M + lt.part(j), j)] -= 1
        checks.append(("factor1", _mono(f1_lhs), _mono(f1_rhs)))

        f2_lhs = _box_ratio_exponents(lam_plus, M)
        f2_rhs = Counter({(-M + L, dm): 1})
        f2_rhs[(-M, dm)] -= 1
        for i in range(1, L + 1):
            f2_rhs[(-M + i - 1, lam.part(i))] += 1
            f2_rhs[(-M + i, lam.part(i))] -= 1
        checks.append(("factor2", _mono(f2_lhs), _mono(f2_rhs)))

        checks.append(("factor1*factor2=line1", mono_mul(_mono(f1_lhs), _mono(f2_lhs)), first))

        f3_lhs = Counter({(-M + L, dm): 1})
        f3_rhs = Counter({(dm, dm): 1})
        for i in range(L + 1, dp + 1):
            f3_rhs[(-M + i - 1, lam.part(i))] += 1
            f3_rhs[(-M + i, lam.part(i))] -= 1
        checks.append(("factor3", _mono(f3_lhs), _mono(f3_rhs)))

        combined = Counter(f1_rhs)
        combined.update(f2_rhs)
        combined.subtract({(-M + L, dm): 1})
        combined.update(f3_rhs)
        checks.append(("substituted=line2", _mono(combined), _mono(second)))
    return checks


def verify_split(max_weight: int, M_range: int, threads: int | None = None) -> VerificationReport:
    if max_weight < 0 or M_range < 0:
        raise ValueError("bounds must be non-negative")
    report = VerificationReport("split", {"max_weight": max_weight, "m_range": M_range})
    report.note(CHARGE_NOTE)
    cases = [(M, lam) for group in enumerate_partitions(max_weight) for lam in group
             for M in range(-M_range, M_range + 1)]

    def check(case):
        M, lam = case
        sp = charged_to_sets(ChargedPartition(M, lam))
        out = []
        lhs, rhs = x_lambda(row_shifted(-M), lam), split_rhs(sp)
        if lhs != rhs:
            out.append((f"M={M} lambda={lam} split", render(lhs), render(rhs)))
        for label, a, b in split_intermediate_checks(M, lam):
            if a != b:
                out.append((f"M={M} lambda={lam} {label}", render(a), render(b)))
        return out

    with timed(report):
        for failures in parallel_map(check, cases, threads):
            report.terms_checked += 1
            for f in failures:
                report.fail(*f)
    return report


# --- truncated products -----------------------------------------------------------

def jacobi_factors(R: int, transposed: bool, view: MatrixView = IDENTITY):
    """Left and right factor lists of the truncated product, each as [(n, monomial)] in product order.

    Z:   <-prod_{n=1..R} (1 + Y[n,0]/Y[n,1] S)   Y[0,0]   ->prod_{n=0..R-1} (1 + Y[-1,n]/Y[0,n] S^-1)
    Z^T: <-prod_{n=0..R-1} (1 + S Y[-1,n]/Y[0,n]) Y[0,0]  ->prod_{n=1..R} (1 + S^-1 Y[n,0]/Y[n,1])
    """
    S, Sinv = NCMonomial.shift(1), NCMonomial.shift(-1)
    if not transposed:
        left = [(n, mono_mul(view.ratio((n, 0), (n, 1)), S)) for n in range(R, 0, -1)]
        right = [(n, mono_mul(view.ratio((-1, n), (0, n)), Sinv)) for n in range(0, R)]
    else:
        left = [(n, mono_mul(S, view.ratio((-1, n), (0, n)))) for n in range(R - 1, -1, -1)]
        right = [(n, mono_mul(Sinv, view.ratio((n, 0), (n, 1)))) for n in range(1, R + 1)]
    return left, right


def subset_sets(left_ns, right_ns, transposed: bool) -> HalfIntSetPair:
    """Half-integer sets selected by a factor choice (numerators over 2)."""
    if not transposed:
        return HalfIntSetPair(tuple(2 * n + 1 for n in right_ns), tuple(2 * n - 1 for n in left_ns))
    return HalfIntSetPair(tuple(2 * n - 1 for n in right_ns), tuple(2 * n + 1 for n in left_ns))


def expected_term(sp: HalfIntSetPair, transposed: bool, view: MatrixView = IDENTITY) -> tuple[ChargedPartition, NCMonomial]:
    """X_lambda([M']V) S^M' for the bijection partner, M' = d- - d+."""
    cp = sets_to_charged(sp)
    Mp = -cp.charge
    v = view.transpose() if transposed else view
    return cp, mono_mul(x_lambda(row_shifted(Mp, v), cp.shape), NCMonomial.shift(Mp))


def expand_truncated_product(R: int, transposed: bool = False, view: MatrixView = IDENTITY) -> NCPoly:
    """The full truncated product as a polynomial (small R only)."""
    left, right = jacobi_factors(R, transposed, view)
    out = NCPoly.one()
    for _, f in left:
        out = out * (NCPoly.one() + f)
    out = out * view.entry(0, 0)
    for _, f in right:
        out = out * (NCPoly.one() + f)
    return out


def jacobi_terms(R: int, transposed: bool = False, view: MatrixView = IDENTITY):
    """Yield (sets, term) for every factor choice of the truncated product."""
    left, right = jacobi_factors(R, transposed, view)
    middle = view.entry(0, 0)
    for lmask in iproduct((0, 1), repeat=len(left)):
        lprod = NCMonomial()
        lns = []
        for pick, (n, f) in zip(lmask, left):
            if pick:
                lprod = mono_mul(lprod, f)
                lns.append(n)
        lprod = mono_mul(lprod, middle)
        for rmask in iproduct((0, 1), repeat=len(right)):
            term = lprod
            rns = []
            for pick, (n, f) in zip(rmask, right):
                if pick:
                    term = mono_mul(term, f)
                    rns.append(n)
            yield subset_sets(lns, rns, transposed), term


def check_jacobi_term(sp: HalfIntSetPair, term: NCMonomial, transposed: bool,
                      view: MatrixView = IDENTITY, split_charge_sign: int = 1) -> list[tuple[str, str, str]]:
    cp, expected = expected_term(sp, transposed, view)
    out = []
    tag = f"{'ZT' if transposed else 'Z'} sets={sp} -> {cp}"
    if term != expected:
        out.append((tag, render(term), render(expected)))
    v = view.transpose() if transposed else view
    via_split = mono_mul(split_rhs(sp, v, split_charge_sign), NCMonomial.shift(-cp.charge))
    if term != via_split:
        out.append((tag + " split", render(term), render(via_split)))
    return out


def verify_jacobi(R: int, transposed: bool = False, view: MatrixView = IDENTITY,
                  split_charge_sign: int = 1, threads: int | None = None) -> VerificationReport:
    if R < 1:
        raise ValueError("cutoff R must be >= 1")
    name = "jacobi-transposed" if transposed else "jacobi"
    report = VerificationReport(name, {"cutoff": R, "transposed": transposed, "view": view.family})
    report.note(CHARGE_NOTE)
    with timed(report):
        terms = list(jacobi_terms(R, transposed, view))

        def check(item):
            sp, term = item
            return check_jacobi_term(sp, term, transposed, view, split_charge_sign)

        for failures in parallel_map(check, terms, threads):
            report.terms_checked += 1
            for f in failures:
                report.fail(*f)
    return report
