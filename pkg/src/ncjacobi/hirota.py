"""The bilinear identity and the sign-reversing involution behind it.

The sum over (lambda, M, mu) of (-1)^M X_lambda[[-M]Y] X_mu[[M+1]Yt] is
organized by grade |lambda| + |mu| + M(M+1)/2, which rho preserves, so each
grade is a finite block that must vanish on its own.
"""

from __future__ import annotations

from dataclasses import dataclass

from .jacobi import IDENTITY, MatrixView, YtildeBase, x_lambda
from .ncalg import NCMonomial, NCPoly, Y, Yt, mono_mul, render, tilde_reduction
from .partitions import Partition, enumerate_partitions
from .report import VerificationReport, parallel_map, timed

TILDE = MatrixView(YtildeBase())


@dataclass(frozen=True, order=True)
class BilinearTerm:
    lam: Partition
    M: int
    mu: Partition

    def __str__(self) -> str:
        return f"({self.lam}, {self.M}, {self.mu})"


def grade(t: BilinearTerm) -> int:
    return t.lam.weight + t.mu.weight + t.M * (t.M + 1) // 2


def rho(t: BilinearTerm) -> BilinearTerm:
    lam, M, mu = t.lam, t.M, t.mu
    l1, m1 = lam.part(1), mu.part(1)
    if m1 - l1 > M:
        return BilinearTerm(Partition.of(m1 - M - 1, *lam.parts), M + 1, Partition(mu.parts[1:]))
    return BilinearTerm(Partition(lam.parts[1:]), M - 1, Partition.of(l1 + M, *mu.parts))


def _factors(t: BilinearTerm) -> NCMonomial:
    return mono_mul(x_lambda(IDENTITY.shifted(row=-t.M), t.lam),
                    x_lambda(TILDE.shifted(row=t.M + 1), t.mu))


def bilinear_term_value(t: BilinearTerm, sign: bool = True) -> NCPoly:
    """(-1)^M X_lambda[[-M]Y] X_mu[[M+1]Yt]; ``sign=False`` drops the sign (mutation only)."""
    m = _factors(t)
    if sign and t.M % 2:
        m = -m
    return NCPoly([m])


def displayed_ratio(t: BilinearTerm) -> NCMonomial:
    """Y[-M-1,mu1-M-1]/Y[-M,mu1-M-1] * Yt[M+2,mu1]/Yt[M+1,mu1] for a first-branch term."""
    M, m1 = t.M, t.mu.part(1)
    return NCMonomial(1, {Y(-M - 1, m1 - M - 1): 1, Y(-M, m1 - M - 1): -1,
                          Yt(M + 2, m1): 1, Yt(M + 1, m1): -1})


def conjugated_ratio(t: BilinearTerm) -> NCMonomial:
    """S^(-M-1) (Y[0,mu1]/Y[1,mu1] * Yt[1,mu1]/Yt[0,mu1]) S^(M+1)."""
    M, m1 = t.M, t.mu.part(1)
    inner = NCMonomial(1, {Y(0, m1): 1, Y(1, m1): -1, Yt(1, m1): 1, Yt(0, m1): -1})
    return inner.conjugate(-M - 1)


def pair_cancel_problems(t: BilinearTerm, sign: bool = True) -> list[tuple[str, str, str]]:
    partner = rho(t)
    problems = []
    total = bilinear_term_value(t, sign) + bilinear_term_value(partner, sign)
    if total:
        problems.append((f"pair {t} + {partner}", str(total), "0"))
    if t.mu.part(1) - t.lam.part(1) > t.M:
        ratio = mono_mul(_factors(partner), _factors(t).inverse())
        if ratio != NCMonomial():
            problems.append((f"ratio {t}", render(ratio), "1"))
        with tilde_reduction(False):
            raw = mono_mul(_factors(partner), _factors(t).inverse())
            shown = displayed_ratio(t)
        if raw != shown:
            problems.append((f"displayed ratio {t}", render(raw), render(shown)))
        for label, m in (("displayed", displayed_ratio(t)), ("conjugated", conjugated_ratio(t))):
            if m != NCMonomial():
                problems.append((f"{label} ratio {t}", render(m), "1"))
    return problems


def verify_pair_cancel(t: BilinearTerm) -> bool:
    return not pair_cancel_problems(t)


def terms_of_grade(g: int, table: list[list[Partition]] | None = None) -> list[BilinearTerm]:
    table = table or enumerate_partitions(g)
    out = []
    M = 0
    ms = []
    while M * (M + 1) // 2 <= g:
        ms.append(M)
        if M > 0:
            ms.append(-M - 1)
        else:
            ms.append(-1)
        M += 1
    for M in sorted(ms):
        n = g - M * (M + 1) // 2
        for k in range(n + 1):
            for lam in table[k]:
                for mu in table[n - k]:
                    out.append(BilinearTerm(lam, M, mu))
    return out


def check_grade(g: int, table=None, sign: bool = True) -> tuple[int, list[tuple[str, str, str]]]:
    terms = terms_of_grade(g, table)
    members = set(terms)
    problems = []
    total = NCPoly()
    for t in terms:
        total = total + bilinear_term_value(t, sign)
        partner = rho(t)
        if partner == t:
            problems.append((f"grade={g} fixed point {t}", str(t), str(partner)))
        if partner not in members or grade(partner) != g:
            problems.append((f"grade={g} rho leaves grade {t}", str(partner), f"grade {g}"))
        if rho(partner) != t:
            problems.append((f"grade={g} rho not involutive {t}", str(rho(partner)), str(t)))
        for idx, lhs, rhs in pair_cancel_problems(t, sign):
            problems.append((f"grade={g} {idx}", lhs, rhs))
    if total:
        problems.append((f"grade={g} sum", str(total), "0"))
    return len(terms), problems


def verify_bilinear(G: int, threads: int | None = None, mutation: str | None = None) -> VerificationReport:
    """Check every grade block up to G.

    ``mutation`` is for smoke tests only: "rho-sign" drops the (-1)^M sign,
    "no-tilde" disables the tilde rewrite.
    """
    if G < 0:
        raise ValueError("max grade must be >= 0")
    if mutation not in (None, "rho-sign", "no-tilde"):
        raise ValueError(f"unknown mutation {mutation!r}")
    report = VerificationReport("hirota", {"max_grade": G})
    report.note("grade(lambda, M, mu) = |lambda| + |mu| + M(M+1)/2 organizes the sum into finite rho-stable blocks")
    report.note("lambda_1 of the empty partition reads as 0 in the branch predicate of rho")
    if mutation:
        report.parameters["mutation"] = mutation
    table = enumerate_partitions(G)
    sign = mutation != "rho-sign"

    def run(g):
        return check_grade(g, table, sign)

    with timed(report):
        if mutation == "no-tilde":
            with tilde_reduction(False):
                results = [run(g) for g in range(G + 1)]
        else:
            results = parallel_map(run, range(G + 1), threads)
        for count, problems in results:
            report.terms_checked += count
            for p in problems:
                report.fail(*p)
    return report
