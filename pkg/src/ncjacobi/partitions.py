"""Partitions, charged partitions and the boson-fermion bijection.

Half-integers are carried as odd integer numerators over an implicit
denominator 2, so ``3`` stands for 3/2 and ``-1`` for -1/2.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterator, Sequence


@dataclass(frozen=True, order=True)
class Partition:
    parts: tuple[int, ...] = ()

    def __post_init__(self):
        parts = tuple(int(p) for p in self.parts)
        if any(p <= 0 for p in parts):
            raise ValueError(f"parts must be positive: {parts}")
        if any(a < b for a, b in zip(parts, parts[1:])):
            raise ValueError(f"parts must be non-increasing: {parts}")
        object.__setattr__(self, "parts", parts)

    @classmethod
    def of(cls, *parts: int) -> "Partition":
        return cls(tuple(p for p in parts if p))

    def __len__(self) -> int:
        return len(self.parts)

    def __iter__(self) -> Iterator[int]:
        return iter(self.parts)

    def __repr__(self) -> str:
        return f"Partition{self.parts}" if self.parts else "Partition()"

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.parts)) + ")" if self.parts else "()"

    @property
    def weight(self) -> int:
        return sum(self.parts)

    def part(self, i: int) -> int:
        """lambda_i with 1-based index; zero past the last part."""
        if i < 1:
            raise IndexError("parts are indexed from 1")
        return self.parts[i - 1] if i <= len(self.parts) else 0

    @cached_property
    def conjugate(self) -> "Partition":
        if not self.parts:
            return self
        return Partition(tuple(sum(1 for p in self.parts if p >= j)
                               for j in range(1, self.parts[0] + 1)))

    def boxes(self) -> Iterator[tuple[int, int]]:
        """Boxes (row, column), both 1-based."""
        for i, p in enumerate(self.parts, 1):
            for j in range(1, p + 1):
                yield i, j


EMPTY = Partition()


def partitions_of(n: int, max_part: int | None = None) -> Iterator[Partition]:
    """Partitions of ``n`` in reverse-lexicographic order."""
    if max_part is None:
        max_part = n

    def rec(rest, cap):
        if rest == 0:
            yield ()
            return
        for first in range(min(rest, cap), 0, -1):
            for tail in rec(rest - first, first):
                yield (first,) + tail

    for parts in rec(n, max_part):
        yield Partition(parts)


def enumerate_partitions(max_weight: int) -> list[list[Partition]]:
    """All partitions of weight <= max_weight, grouped by weight."""
    if max_weight < 0:
        raise ValueError("max_weight must be >= 0")
    return [list(partitions_of(w)) for w in range(max_weight + 1)]


@dataclass(frozen=True, order=True)
class ChargedPartition:
    charge: int
    shape: Partition = EMPTY

    def __str__(self) -> str:
        return f"({self.charge}, {self.shape})"


def _half(num: int) -> Fraction:
    return Fraction(num, 2)


@dataclass(frozen=True)
class HalfIntSetPair:
    """A pair of finite sets of positive half-integers.

    ``plus`` and ``minus`` hold odd positive numerators, stored strictly
    decreasing.
    """

    plus: tuple[int, ...] = ()
    minus: tuple[int, ...] = ()

    def __post_init__(self):
        for name in ("plus", "minus"):
            nums = tuple(getattr(self, name))
            for x in nums:
                if not isinstance(x, int) or x <= 0 or x % 2 == 0:
                    raise ValueError(f"{name}: {x!r} is not the numerator of a positive half-integer")
            if len(set(nums)) != len(nums):
                raise ValueError(f"{name}: duplicate elements {nums}")
            object.__setattr__(self, name, tuple(sorted(nums, reverse=True)))

    @classmethod
    def from_halves(cls, plus: Sequence = (), minus: Sequence = ()) -> "HalfIntSetPair":
        """Build from half-integer values (Fractions, floats like 1.5, or strings '3/2')."""

        def nums(values):
            out = []
            for r in values:
                twice = Fraction(r) * 2
                if twice.denominator != 1:
                    raise ValueError(f"{r!r} is not a half-integer")
                out.append(int(twice))
            return tuple(out)

        return cls(nums(plus), nums(minus))

    @property
    def d_plus(self) -> int:
        return len(self.plus)

    @property
    def d_minus(self) -> int:
        return len(self.minus)

    def halves(self) -> tuple[tuple[Fraction, ...], tuple[Fraction, ...]]:
        return tuple(map(_half, self.plus)), tuple(map(_half, self.minus))

    def __str__(self) -> str:
        def fmt(nums):
            return "{" + ",".join(f"{n}/2" for n in nums) + "}"
        return f"({fmt(self.plus)}, {fmt(self.minus)})"


@dataclass(frozen=True)
class Profile:
    n: tuple[int, ...] = field(default=())
    n_tilde: tuple[int, ...] = field(default=())


def charged_to_sets(cp: ChargedPartition) -> HalfIntSetPair:
    M, lam = cp.charge, cp.shape
    lt = lam.conjugate
    # past these cutoffs every candidate is negative
    plus = [2 * (M + lam.part(i) - i) + 1 for i in range(1, max(len(lam), M) + 1)]
    minus = [2 * (-M + lt.part(j) - j) + 1 for j in range(1, max(len(lt), -M) + 1)]
    return HalfIntSetPair(tuple(x for x in plus if x > 0), tuple(x for x in minus if x > 0))


def sets_to_charged(sp: HalfIntSetPair) -> ChargedPartition:
    M = sp.d_plus - sp.d_minus
    top_minus = sp.minus[0] if sp.minus else 0
    excluded = set(sp.minus)
    negatives = [-s for s in range(1, top_minus + 3, 2) if s not in excluded]
    ordered = list(sp.plus) + negatives
    parts = []
    for i, t in enumerate(ordered, 1):
        parts.append((t - 1) // 2 - M + i)
    while parts and parts[-1] == 0:
        parts.pop()
    if any(p < 0 for p in parts):
        raise ValueError(f"inconsistent set pair {sp}")
    return ChargedPartition(M, Partition(tuple(parts)))


def profile(cp: ChargedPartition) -> Profile:
    sp = charged_to_sets(cp)
    M, lam = cp.charge, cp.shape
    lt = lam.conjugate
    n = tuple(M + lam.part(i) - i for i in range(1, sp.d_plus + 1))
    nt = tuple(-M + lt.part(j) - j + 1 for j in range(1, sp.d_minus + 1))
    return Profile(n, nt)


# --- the generating function psi, as Laurent polynomials in u^(1/2) -------
# A Laurent polynomial is a dict {numerator of exponent: coefficient}.

def _ladd(acc: dict, e: int, c: int) -> None:
    v = acc.get(e, 0) + c
    if v:
        acc[e] = v
    else:
        acc.pop(e, None)


def _lmul(p: dict, q: dict) -> dict:
    out: dict = {}
    for e1, c1 in p.items():
        for e2, c2 in q.items():
            _ladd(out, e1 + e2, c1 * c2)
    return out


def _render_laurent(p: dict) -> str:
    if not p:
        return "0"
    return " + ".join(f"{c}*u^({e}/2)" for e, c in sorted(p.items(), reverse=True))


def _psi_finite_part(sp: HalfIntSetPair) -> dict:
    out: dict = {}
    for r in sp.plus:
        _ladd(out, r, 1)
    for r in sp.minus:
        _ladd(out, -r, -1)
    return out


def psi_cleared(sp: HalfIntSetPair) -> dict:
    """(u^(1/2) - u^(-1/2)) * psi with the pole term cleared to 1."""
    out = _lmul({1: 1, -1: -1}, _psi_finite_part(sp))
    _ladd(out, 0, 1)
    return out


def content_form(cp: ChargedPartition) -> dict:
    """u^M (1 - (1-u)(1-u^-1) sum over boxes u^(j-i))."""
    contents: dict = {}
    for i, j in cp.shape.boxes():
        _ladd(contents, 2 * (j - i), 1)
    out = _lmul({0: 1}, {})
    _ladd(out, 0, 1)
    for e, c in _lmul({0: 2, 2: -1, -2: -1}, contents).items():
        _ladd(out, e, -c)
    return {e + 2 * cp.charge: c for e, c in out.items()}


def psi_at_infinity(sp: HalfIntSetPair, order: int) -> dict:
    """Expansion of psi at u = infinity, exponents >= -(order + 1/2)."""
    floor = -(2 * order + 1)
    out = _psi_finite_part(sp)
    for e in range(-1, floor - 1, -2):
        _ladd(out, e, 1)
    return {e: c for e, c in out.items() if e >= floor}


def psi_at_zero(sp: HalfIntSetPair, order: int) -> dict:
    """Expansion of psi at u = 0, exponents <= order + 1/2."""
    ceil = 2 * order + 1
    out = _psi_finite_part(sp)
    for e in range(1, ceil + 1, 2):
        _ladd(out, e, -1)
    return {e: c for e, c in out.items() if e <= ceil}


def maya_series_rows(cp: ChargedPartition, order: int) -> dict:
    """sum_i u^(M + lambda_i - i + 1/2), exponents >= -(order + 1/2)."""
    floor = -(2 * order + 1)
    M, lam = cp.charge, cp.shape
    out: dict = {}
    i = 1
    while True:
        e = 2 * (M + lam.part(i) - i) + 1
        if e < floor:
            break
        _ladd(out, e, 1)
        i += 1
    return out


def maya_series_columns(cp: ChargedPartition, order: int) -> dict:
    """-sum_j u^(M + j - lambda^t_j - 1/2), exponents <= order + 1/2."""
    ceil = 2 * order + 1
    M, lt = cp.charge, cp.shape.conjugate
    out: dict = {}
    j = 1
    while True:
        e = 2 * (M + j - lt.part(j)) - 1
        if e > ceil and j > len(lt):
            break
        if e <= ceil:
            _ladd(out, e, -1)
        j += 1
    return out


def psi_counterexample(cp: ChargedPartition, order: int) -> str | None:
    """First disagreement among the three psi identities, or None."""
    if order < 0:
        raise ValueError("order must be >= 0")
    sp = charged_to_sets(cp)
    checks = (
        ("cleared", psi_cleared(sp), content_form(cp)),
        ("u=inf", psi_at_infinity(sp, order), maya_series_rows(cp, order)),
        ("u=0", psi_at_zero(sp, order), maya_series_columns(cp, order)),
    )
    for tag, lhs, rhs in checks:
        if lhs != rhs:
            diff = dict(lhs)
            for e, c in rhs.items():
                _ladd(diff, e, -c)
            e = max(diff)
            return f"{tag}: {cp} differs at u^({e}/2): {_render_laurent(lhs)} vs {_render_laurent(rhs)}"
    return None


def verify_psi(cp: ChargedPartition, order: int) -> bool:
    return psi_counterexample(cp, order) is None


# --- snakes -----------------------------------------------------------------

@dataclass(frozen=True, order=True)
class SnakePoint:
    d_plus: int
    d_minus: int
    class_tag: str


def d_pair(cp: ChargedPartition) -> tuple[int, int]:
    sp = charged_to_sets(cp)
    return sp.d_plus, sp.d_minus


def _at(lam: Partition, k: int) -> float:
    # lambda_0 reads as +infinity in the bounds
    return float("inf") if k == 0 else lam.part(k)


def snake_classes(lam: Partition, dp: int, dm: int) -> list[str]:
    """Every class among S1..S4 whose defining conditions (dp, dm) meets."""
    lt = lam.conjugate
    both = dp > 0 and dm > 0
    tags = []
    if (dm == 0 and dp > lt.part(1)) or (both and lt.part(dm) > dp > lt.part(dm + 1)):
        tags.append("S1")
    if ((dm == 0 and dp == lt.part(1)) or (dp == 0 and dm == lam.part(1))
            or (both and lt.part(dm) > dp == lt.part(dm + 1)
                and lam.part(dp) > dm == lam.part(dp + 1))):
        tags.append("S2")
    if (dp == 0 and dm > lam.part(1)) or (both and lam.part(dp) > dm > lam.part(dp + 1)):
        tags.append("S3")
    if (both and lam.part(dp) == dm > lam.part(dp + 1)
            and lt.part(dm) == dp > lt.part(dm + 1)):
        tags.append("S4")
    return tags


def vertical_run_holds(lam: Partition, dp: int, dm: int) -> bool:
    """lambda_i = d_- for every i with d_+ >= i > lambda^t_(d_- + 1)."""
    lo = lam.conjugate.part(dm + 1)
    return all(lam.part(i) == dm for i in range(lo + 1, dp + 1))


def horizontal_run_holds(lam: Partition, dp: int, dm: int) -> bool:
    """lambda^t_j = d_+ for every j with d_- >= j > lambda_(d_+ + 1)."""
    lt = lam.conjugate
    lo = lam.part(dp + 1)
    return all(lt.part(j) == dp for j in range(lo + 1, dm + 1))


def snake_of(lam: Partition, d_range: int) -> set[SnakePoint]:
    if d_range < 0:
        raise ValueError("d_range must be >= 0")
    out = set()
    for dp in range(d_range + 1):
        for dm in range(d_range + 1):
            tags = snake_classes(lam, dp, dm)
            if len(tags) > 1:
                raise AssertionError(f"snake classes overlap at {(dp, dm)} for {lam}: {tags}")
            if tags:
                out.add(SnakePoint(dp, dm, tags[0]))
    return out


def bounds_hold(lam: Partition, dp: int, dm: int) -> bool:
    lt = lam.conjugate
    return (_at(lam, dp) >= dm >= lam.part(dp + 1)
            and _at(lt, dm) >= dp >= lt.part(dm + 1))


def snake_problems(lam: Partition, M_range: int) -> list[str]:
    problems = []
    realized = {}
    for M in range(-M_range, M_range + 1):
        dp, dm = d_pair(ChargedPartition(M, lam))
        realized[(dp, dm)] = M
        tags = snake_classes(lam, dp, dm)
        if len(tags) != 1:
            problems.append(f"M={M}: (d+,d-)=({dp},{dm}) in classes {tags}")
        if not bounds_hold(lam, dp, dm):
            problems.append(f"M={M}: bounds fail at ({dp},{dm})")
        if "S1" in tags and not vertical_run_holds(lam, dp, dm):
            problems.append(f"M={M}: vertical run fails at ({dp},{dm})")
        if "S3" in tags and not horizontal_run_holds(lam, dp, dm):
            problems.append(f"M={M}: horizontal run fails at ({dp},{dm})")
    for pt in snake_of(lam, M_range):
        if (pt.d_plus, pt.d_minus) not in realized:
            problems.append(f"snake point {pt} is never realized")
    return problems


def verify_snake_membership(lam: Partition, M_range: int) -> bool:
    if M_range < lam.part(1) + lam.conjugate.part(1) + 1:
        raise ValueError("M_range too small to reach both tails of the snake")
    return not snake_problems(lam, M_range)


# --- sweeps -----------------------------------------------------------------

def _all_set_pairs(bound: int) -> Iterator[HalfIntSetPair]:
    """Every pair of subsets of {1/2, 3/2, ...} below bound/2 (bound odd numerator excluded)."""
    pool = list(range(1, bound, 2))
    n = len(pool)
    subsets = [tuple(pool[k] for k in range(n) if mask >> k & 1) for mask in range(1 << n)]
    for plus in subsets:
        for minus in subsets:
            yield HalfIntSetPair(plus, minus)


def verify_bijection(max_weight: int, M_range: int, set_bound: int = 17):
    """Both composites of the bijection are identities.

    ``set_bound`` is a numerator: set pairs are drawn from half-integers in [0, set_bound/2).
    """
    from .report import VerificationReport, timed

    if max_weight < 0 or M_range < 0:
        raise ValueError("max_weight and M_range must be >= 0")
    report = VerificationReport("bijection", {"max_weight": max_weight, "m_range": M_range,
                                              "set_bound": f"{set_bound}/2"})
    report.note("d+ - d- equals the charge M")
    with timed(report):
        for group in enumerate_partitions(max_weight):
            for lam in group:
                for M in range(-M_range, M_range + 1):
                    cp = ChargedPartition(M, lam)
                    report.terms_checked += 1
                    sp = charged_to_sets(cp)
                    back = sets_to_charged(sp)
                    if back != cp:
                        report.fail(f"charged {cp}", str(back), str(cp))
                    elif sp.d_plus - sp.d_minus != M:
                        report.fail(f"charge {cp}", str(sp.d_plus - sp.d_minus), str(M))
        for sp in _all_set_pairs(set_bound):
            report.terms_checked += 1
            back = charged_to_sets(sets_to_charged(sp))
            if back != sp:
                report.fail(f"sets {sp}", str(back), str(sp))
    return report


def verify_psi_sweep(max_weight: int, M_range: int, order: int):
    from .report import VerificationReport, timed

    report = VerificationReport("psi", {"max_weight": max_weight, "m_range": M_range, "order": order})
    report.note("expansion at u = 0 carries an overall minus sign: psi = -sum_j u^(M + j - lambda^t_j - 1/2)")
    with timed(report):
        for group in enumerate_partitions(max_weight):
            for lam in group:
                for M in range(-M_range, M_range + 1):
                    report.terms_checked += 1
                    bad = psi_counterexample(ChargedPartition(M, lam), order)
                    if bad:
                        report.fail(f"({M}, {lam})", bad, "")
    return report


def verify_snake_sweep(max_weight: int, M_range: int | None = None):
    """Classes, coverage and bounds for every lambda up to max_weight.

    ``M_range`` defaults to the smallest range that reaches both tails.
    """
    from .report import VerificationReport, timed

    report = VerificationReport("snake", {"max_weight": max_weight, "m_range": M_range})
    report.note("lambda_0 and lambda^t_0 read as +infinity in the bounds")
    with timed(report):
        for group in enumerate_partitions(max_weight):
            for lam in group:
                need = lam.part(1) + lam.conjugate.part(1) + 1
                span = need if M_range is None else M_range
                if span < need:
                    raise ValueError(f"M_range {span} too small for {lam} (needs {need})")
                report.terms_checked += 1
                try:
                    problems = snake_problems(lam, span)
                except AssertionError as exc:
                    problems = [str(exc)]
                for p in problems:
                    report.fail(f"{lam}", p, "")
    return report
