"""Specializations of the shift-algebra identities.

* Toeplitz matrices Y[a,b] = exp(b(b-a)) give the higher-times refinement of
  the Jacobi triple product, checked exactly with nilpotent b_3..b_K.
* The quiver q-character matrix gives the normalized Theta-transform,
  checked termwise through the generic engine with abstract y-symbols.
* Its commutative limit is checked by a separate, purely commutative path.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial, lcm
from typing import Mapping, Sequence

from .jacobi import MatrixView, jacobi_terms, verify_jacobi, x_lambda, x_lambda_exponents
from .ncalg import NCMonomial, mono_mul, render, ys
from .partitions import Partition, enumerate_partitions, sets_to_charged
from .report import VerificationReport, timed
from .scalar import Scalar, ScalarRing, exp_nilpotent

HALF = Fraction(1, 2)


# --- higher times -------------------------------------------------------------

@dataclass
class ExpArg:
    """The argument of an exponential: a log-linear part in the ring's units plus a nilpotent part."""

    units: dict
    nil: Scalar

    def __add__(self, other: "ExpArg") -> "ExpArg":
        units = dict(self.units)
        for k, v in other.units.items():
            units[k] = units.get(k, 0) + v
        return ExpArg({k: v for k, v in units.items() if v}, self.nil + other.nil)

    def __neg__(self) -> "ExpArg":
        return ExpArg({k: -v for k, v in self.units.items()}, -self.nil)

    def __sub__(self, other: "ExpArg") -> "ExpArg":
        return self + (-other)

    def scaled(self, c) -> "ExpArg":
        return ExpArg({k: v * c for k, v in self.units.items() if v * c}, self.nil * c)

    def exp(self) -> Scalar:
        return exp_nilpotent(self.nil, self.units)


class HigherTimes:
    """b(xi) = sum_k b_k xi^k / k! with z = e^(b_1), v = e^(b_2 / 2) as units
    and b_3..b_K nilpotent with total degree capped at D."""

    def __init__(self, K: int, D: int):
        if K < 2:
            raise ValueError("K must be >= 2")
        self.K, self.D = K, D
        self.names = [f"b{k}" for k in range(3, K + 1)]
        self.ring = ScalarRing([("z", 1), ("v", 1)], self.names, D)

    def b_nil(self, k: int) -> Scalar:
        return self.ring.nil(f"b{k}")

    def b(self, xi) -> ExpArg:
        xi = Fraction(xi)
        nil = self.ring.zero
        for k in range(3, self.K + 1):
            nil = nil + self.b_nil(k) * (xi ** k / factorial(k))
        return ExpArg({"z": xi, "v": xi * xi}, nil)


def t_of_b(ht: HigherTimes, xi) -> ExpArg:
    """t(xi) = b(xi + 1/2) - b(xi - 1/2)."""
    xi = Fraction(xi)
    t = ht.b(xi + HALF) - ht.b(xi - HALF)
    if any(Fraction(e).denominator != 1 for e in t.units.values()):
        raise ValueError(f"t({xi}) has fractional unit exponents {t.units}")
    return t


def t_formal(ht: HigherTimes, xi) -> Scalar:
    """sum over k, l >= 0 with k + 2l > 1 of b_(k+2l+1) xi^k / (2^(2l) (2l+1)! k!)."""
    xi = Fraction(xi)
    out = ht.ring.zero
    for m in range(3, ht.K + 1):
        for l in range(0, (m - 1) // 2 + 1):
            k = m - 1 - 2 * l
            out = out + ht.b_nil(m) * (xi ** k / (4 ** l * factorial(2 * l + 1) * factorial(k)))
    return out


def _cells(s: Scalar, order: int, m_range: int | None) -> dict:
    """Group a (z, v) series into {(z exponent, v exponent): nilpotent coefficient}."""
    out: dict = {}
    zero_u = s.ring._zero_u
    for (u, n), c in s.terms.items():
        zexp, vexp = u[0], u[1]
        if vexp > order or (m_range is not None and abs(zexp) > m_range):
            continue
        cell = out.setdefault((zexp, vexp), {})
        cell[(zero_u, n)] = c
    return {k: Scalar(s.ring, v) for k, v in out.items()}


def jtp_product(ht: HigherTimes, order_v: int) -> Scalar:
    """prod over r > 0 of (1 + e^t(r)) (1 + e^-t(-r)), up to v^order_v."""
    out = ht.ring.one
    cut = {"v": order_v}
    for twice_r in range(1, order_v + 1, 2):
        r = Fraction(twice_r, 2)
        for factor in (t_of_b(ht, r).exp(), (-t_of_b(ht, -r)).exp()):
            out = out.mul(ht.ring.one + factor, cut)
    return out


def bosonic_sum(ht: HigherTimes, order_v: int, m_range: int | None = None) -> Scalar:
    """sum_M e^b(M) sum_lambda qe^|lambda| prod_i e^(tf(M+1/2+lambda_i-i) - tf(M+1/2-i))."""
    ring = ht.ring
    out = ring.zero
    M = 0
    while M * M <= order_v:
        M += 1
    top = M
    table = enumerate_partitions(order_v // 2)
    for M in range(-top, top + 1):
        if M * M > order_v or (m_range is not None and abs(M) > m_range):
            continue
        lead = ht.b(M).exp()
        inner = ring.zero
        for w in range((order_v - M * M) // 2 + 1):
            for lam in table[w]:
                arg = ring.zero
                for i, p in enumerate(lam.parts, 1):
                    arg = arg + t_formal(ht, M + HALF + p - i) - t_formal(ht, M + HALF - i)
                inner = inner + ring.unit("v", 2 * w) * exp_nilpotent(arg)
        out = out + lead * inner
    return out


def _compare_cells(report: VerificationReport, lhs: Scalar, rhs: Scalar, order: int, m_range) -> None:
    a, b = _cells(lhs, order, m_range), _cells(rhs, order, m_range)
    for key in sorted(set(a) | set(b)):
        report.terms_checked += 1
        x, y = a.get(key, lhs.ring.zero), b.get(key, rhs.ring.zero)
        if x != y:
            report.fail(f"z^{key[0]} v^{key[1]}", str(x), str(y))


def partition_count(n: int, table=None) -> int:
    if n < 0:
        return 0
    table = table or enumerate_partitions(n)
    return len(table[n])


def verify_classical_jtp(order_v: int, z_range: int) -> VerificationReport:
    """Coefficient of z^M v^n in the product equals p((n - M^2)/2), or 0 when parity fails."""
    if order_v < 0 or z_range < 0:
        raise ValueError("order and z_range must be >= 0")
    report = VerificationReport("classical-jtp", {"order": order_v, "z_range": z_range})
    report.note("v = qe^(1/2), so qe^r = v^(2r) and qe^(M^2/2) = v^(M^2)")
    with timed(report):
        ht = HigherTimes(2, 0)
        prod = jtp_product(ht, order_v)
        cells = _cells(prod, order_v, z_range)
        table = enumerate_partitions(order_v // 2)
        for M in range(-z_range, z_range + 1):
            for n in range(order_v + 1):
                report.terms_checked += 1
                got = cells.get((M, n), ht.ring.zero)
                k2 = n - M * M
                want = partition_count(k2 // 2, table) if k2 >= 0 and k2 % 2 == 0 else 0
                if got != want:
                    report.fail(f"z^{M} v^{n}", str(got), str(want))
        stray = [k for k in cells if not (-z_range <= k[0] <= z_range)]
        if stray:
            report.fail("support", str(sorted(stray)), "within z_range")
    return report


def verify_bosfert(K: int, D: int, order_v: int, M_range: int | None = None) -> VerificationReport:
    if K < 3 or D < 0:
        raise ValueError("need K >= 3 and D >= 0")
    report = VerificationReport("w1inf", {"times": K, "degree_cap": D, "order": order_v,
                                          "m_range": M_range})
    report.note("b_1, b_2 enter only through the units z = e^(b_1), v = e^(b_2/2); "
                "b_3..b_K are nilpotent with total degree <= degree_cap")
    with timed(report):
        ht = HigherTimes(K, D)
        _compare_cells(report, jtp_product(ht, order_v), bosonic_sum(ht, order_v, M_range),
                       order_v, M_range)
    return report


class ToeplitzBase:
    family = "Toeplitz"

    def __init__(self, ht: HigherTimes):
        self.ht = ht

    def log_entry(self, a: int, b: int) -> ExpArg:
        return self.ht.b(b - a)

    def entry_power(self, a: int, b: int, e: int) -> NCMonomial:
        return NCMonomial(self.log_entry(a, b).scaled(e).exp())


def toeplitz_view(ht: HigherTimes) -> MatrixView:
    return MatrixView(ToeplitzBase(ht))


# --- quiver data ----------------------------------------------------------------

@dataclass(frozen=True)
class EpsilonParams:
    rank: int
    eps: Fraction
    eps3_tilde: Fraction

    def __post_init__(self):
        if self.rank < 0:
            raise ValueError("rank must be >= 0")
        object.__setattr__(self, "eps", Fraction(self.eps))
        object.__setattr__(self, "eps3_tilde", Fraction(self.eps3_tilde))

    @property
    def eps3(self) -> Fraction:
        return (self.rank + 1) * self.eps3_tilde

    @property
    def eps4_tilde(self) -> Fraction:
        return -self.eps - self.eps3_tilde

    @property
    def eps4(self) -> Fraction:
        # -eps4 = eps3 + (r+1) eps, the shift the intertwining relation uses
        return (self.rank + 1) * self.eps4_tilde


def xi_solve(l: Sequence) -> list[Fraction]:
    """Periodic solution of xi_(i-1) - 2 xi_i + xi_(i+1) = l_i with xi_0 = 0."""
    l = [Fraction(x) for x in l]
    if not l:
        raise ValueError("need at least one coupling")
    if sum(l) != 0:
        raise ValueError(f"couplings must sum to zero for a periodic solution (sum = {sum(l)})")
    n = len(l)
    # d_k = xi_k - xi_(k-1) obeys d_(k+1) = d_k + l_k; periodicity fixes d_1
    partial, acc = [], Fraction(0)
    for k in range(1, n):
        acc += l[k]
        partial.append(acc)
    d1 = -sum(partial) / n
    xi = [Fraction(0)]
    d = d1
    for k in range(1, n):
        xi.append(xi[-1] + d)
        d += l[k]
    return xi


def xi_residuals(xi: Sequence, l: Sequence) -> list[Fraction]:
    n = len(xi)
    return [xi[(i - 1) % n] - 2 * xi[i] + xi[(i + 1) % n] - Fraction(l[i]) for i in range(n)]


@dataclass
class CouplingData:
    """Log-couplings l_i = log(qe_i / q~), i = 0..r, with the solved xi_i."""

    log_couplings: tuple
    xi: list = field(init=False)

    def __post_init__(self):
        self.log_couplings = tuple(Fraction(x) for x in self.log_couplings)
        self.xi = xi_solve(self.log_couplings)

    @property
    def rank(self) -> int:
        return len(self.log_couplings) - 1

    def xi_at(self, j: int) -> Fraction:
        return self.xi[j % len(self.xi)]

    @property
    def xi_denominator(self) -> int:
        return lcm(*(x.denominator for x in self.xi)) if self.xi else 1


def qchar_ring(cd: CouplingData, extra_units: Sequence[tuple[str, int]] = ()) -> ScalarRing:
    """q stands for q~ (half-integer exponents), e for Euler's number carrying e^xi."""
    return ScalarRing([("q", 2), ("e", cd.xi_denominator), *extra_units])


class QCharBase:
    """Y[a,b] = q~^((a-b)^2/2) e^(xi_(i+a-b)) y_(i+a-b)(x + (1-b) eps)."""

    family = "QChar"

    def __init__(self, ep: EpsilonParams, cd: CouplingData, i: int, ring: ScalarRing | None = None):
        if cd.rank != ep.rank:
            raise ValueError("coupling data and epsilon parameters disagree on the rank")
        self.ep, self.cd, self.i = ep, cd, i
        self.ring = ring or qchar_ring(cd)

    def weight(self, c: int, e: int = 1) -> Scalar:
        """Scalar part q~^(c^2/2) e^(xi_(i+c)) raised to e, for c = a - b."""
        return self.ring.monomial({"q": Fraction(e * c * c, 2), "e": e * self.cd.xi_at(self.i + c)})

    def entry_power(self, a: int, b: int, e: int) -> NCMonomial:
        c = a - b
        g = ys(self.i + c, 1 - b, 0, rank=self.ep.rank)
        return NCMonomial._raw(self.weight(c, e), ((g, e),), 0)


def qchar_view(ep: EpsilonParams, cd: CouplingData, i: int, ring: ScalarRing | None = None) -> MatrixView:
    return MatrixView(QCharBase(ep, cd, i, ring))


def shift_x(m: NCMonomial, eps_steps: int = 0, eps3_steps: int = 0) -> NCMonomial:
    """Relabel x -> x + eps_steps*eps + eps3_steps*eps3 in every y-symbol."""
    exps = {}
    for g, e in m.exps:
        if g[0] == "y":
            g = ("y", g[1], g[2] + eps_steps, g[3] + eps3_steps)
        exps[g] = e
    return NCMonomial._raw(m.coeff, tuple(sorted(exps.items())), m.s)


def factor_families(ep: EpsilonParams, cd: CouplingData, i: int, R: int,
                    ring: ScalarRing | None = None) -> list[tuple[str, NCMonomial, NCMonomial]]:
    """Factor families read off the view, each paired with the closed-form factor it must equal."""
    view = qchar_view(ep, cd, i, ring)
    ring = view.base.ring
    r = ep.rank
    S, Sinv = NCMonomial.shift(1), NCMonomial.shift(-1)

    def y(j, k):
        return ys(j, k, 0, rank=r)

    out = []
    for n in range(1, R + 1):
        got = mono_mul(view.ratio((n, 0), (n, 1)), S)
        coeff = ring.monomial({"q": n - HALF, "e": cd.xi_at(i + n) - cd.xi_at(i + n - 1)})
        want = mono_mul(NCMonomial(coeff, {y(i + n, 1): 1, y(i + n - 1, 0): -1}), S)
        out.append((f"D+ n={n}", got, want))
    middle = mono_mul(NCMonomial(ring.monomial({"e": -cd.xi_at(i)})), view.entry(0, 0))
    out.append(("middle", middle, NCMonomial(1, {y(i, 1): 1})))
    for n in range(0, R):
        got = mono_mul(view.ratio((-1, n), (0, n)), Sinv)
        coeff = ring.monomial({"q": n + HALF, "e": cd.xi_at(i - n - 1) - cd.xi_at(i - n)})
        # e^(eps d/dx) . f(x) : the shift sits to the left of the coefficient
        want = mono_mul(Sinv, NCMonomial(coeff, {y(i - n - 1, -n): 1, y(i - n, -n): -1}))
        out.append((f"D- n={n}", got, want))
    return out


def node_shift_factor(ring: ScalarRing, i: int, m: int) -> Scalar:
    """Scalar relating the S^m component of view i to that of view 0 shifted by S^-i."""
    return ring.monomial({"q": -(Fraction(2 * i * m + i * i, 2))})


def verify_qchar_jacobi(ep: EpsilonParams, cd: CouplingData, i: int, R: int,
                        threads: int | None = None) -> VerificationReport:
    if R < 1:
        raise ValueError("cutoff R must be >= 1")
    report = VerificationReport("qchar", {"rank": ep.rank, "node": i, "cutoff": R,
                                          "eps": str(ep.eps), "eps3_tilde": str(ep.eps3_tilde),
                                          "log_couplings": [str(x) for x in cd.log_couplings]})
    report.note("normalized matrix: kappa(a,b) = (a-b)^2/2 for the q~ exponent; Gaussian prefactors not modeled")
    report.note("entry (0,0) carries e^(xi_i); the identity is compared before dividing it out")
    report.note("D+ uses y_(i+n)/y_(i+n-1), the i-offset form consistent with D_i = D S^-i")
    report.note("eps4 is taken as (r+1) eps4~, so -eps4 = eps3 + (r+1) eps")
    ring = qchar_ring(cd)
    with timed(report):
        view = qchar_view(ep, cd, i, ring)
        base = verify_jacobi(R, False, view, threads=threads)
        report.merge(base, "jacobi ")

        for label, got, want in factor_families(ep, cd, i, R, ring):
            report.terms_checked += 1
            if got != want:
                report.fail(f"factor {label}", render(got), render(want))

        view0 = qchar_view(ep, cd, 0, ring)
        r1 = ep.rank + 1
        view_up = qchar_view(ep, cd, i + r1, ring)
        terms_up = dict((sp, t) for sp, t in jacobi_terms(R, False, view_up))
        for sp, term in jacobi_terms(R, False, view):
            # node shift: the S^m component of view i is q~-rescaled view 0 at S^(m+i), times S^-i
            report.terms_checked += 1

            cp = sets_to_charged(sp)
            m = -cp.charge
            predicted = mono_mul(x_lambda(view0.shifted(row=m + i), cp.shape), NCMonomial.shift(m + i))
            predicted = mono_mul(predicted, NCMonomial.shift(-i))
            predicted = mono_mul(NCMonomial(node_shift_factor(ring, i, m)), predicted)
            if term != predicted:
                report.fail(f"node-shift i={i} sets={sp}", render(term), render(predicted))
            # x -> x + eps3 turns node i into node i + r + 1
            report.terms_checked += 1
            moved = shift_x(term, 0, 1)
            if moved != terms_up[sp]:
                report.fail(f"intertwine i={i} sets={sp}", render(moved), render(terms_up[sp]))
        # and node i + r + 1 is view 0 shifted by S^-(i+r+1), closing the eps3 / -eps4 relation
        for sp, term in terms_up.items():
            report.terms_checked += 1

            cp = sets_to_charged(sp)
            m = -cp.charge
            j = i + r1
            predicted = mono_mul(x_lambda(view0.shifted(row=m + j), cp.shape), NCMonomial.shift(m))
            predicted = mono_mul(NCMonomial(node_shift_factor(ring, j, m)), predicted)
            if term != predicted:
                report.fail(f"node-shift i={j} sets={sp}", render(term), render(predicted))
    return report


# --- commutative limit ------------------------------------------------------------

def limit_ring(cd: CouplingData) -> ScalarRing:
    r1 = cd.rank + 1
    return ScalarRing([("q", 2), ("e", cd.xi_denominator), ("z", 1)] + [(f"y{j}", 1) for j in range(r1)])


def classical_entry(ring: ScalarRing, cd: CouplingData, i: int, a: int, b: int, e: int = 1) -> Scalar:
    c = a - b
    j = (i + c) % (cd.rank + 1)
    return ring.monomial({"q": Fraction(e * c * c, 2), "e": e * cd.xi_at(i + c), f"y{j}": e})


def theta_side(cd: CouplingData, i: int, order_q: int, ring: ScalarRing) -> Scalar:
    """e^(-xi_i) sum_M z^M sum_lambda X_lambda([-M]Y_classical), q~-order <= order_q."""
    out = ring.zero
    table = enumerate_partitions(order_q)
    M = 0
    while (M + 1) * (M + 1) <= 2 * order_q:
        M += 1
    for m in range(-M, M + 1):
        budget = Fraction(2 * order_q - m * m, 2)
        if budget < 0:
            continue
        for w in range(int(budget) + 1):
            for lam in table[w]:
                term = ring.monomial({"z": m, "e": -cd.xi_at(i)})
                for (a, b), e in x_lambda_exponents(lam).items():
                    if e:
                        term = term * classical_entry(ring, cd, i, a - m, b, e)
                out = out + term
    return out


def product_side(cd: CouplingData, i: int, order_q: int, ring: ScalarRing) -> Scalar:
    """The factorized right-hand side of the commutative limit, up to q~^order_q."""
    r1 = cd.rank + 1
    cut = {"q": order_q}
    one = ring.one

    def y(j, e=1):
        return {f"y{j % r1}": e}

    out = one
    for n in range(order_q, 0, -1):
        units = {"q": n - HALF, "e": cd.xi_at(i + n) - cd.xi_at(i + n - 1), "z": -1}
        f = ring.monomial(units) * ring.monomial(y(i + n)) * ring.monomial(y(i + n - 1, -1))
        out = out.mul(one + f, cut)
    out = out * ring.monomial(y(i))
    for n in range(0, order_q + 1):
        units = {"q": n + HALF, "e": cd.xi_at(i - n - 1) - cd.xi_at(i - n), "z": 1}
        f = ring.monomial(units) * ring.monomial(y(i - n - 1)) * ring.monomial(y(i - n, -1))
        out = out.mul(one + f, cut)
    return out


def project_classical(m: NCMonomial, ring: ScalarRing, source_ring: ScalarRing) -> Scalar:
    """Send S -> z^-1 and y_j(x + ...) -> y_j, keeping the q~ and e weights."""
    units: dict = {"z": -m.s}
    for g, e in m.exps:
        if g[0] != "y":
            raise ValueError(f"cannot project generator {g}")
        units[f"y{g[1]}"] = units.get(f"y{g[1]}", 0) + e
    coeff = m.coeff if isinstance(m.coeff, Scalar) else source_ring.const(m.coeff)
    out = ring.zero
    for u, _, c in coeff.items():
        merged = dict(units)
        for k, v in u.items():
            merged[k] = merged.get(k, 0) + v
        out = out + ring.monomial(merged, coeff=c)
    return out


def _split_by(s: Scalar, names: Sequence[str], limits: Mapping[str, object]) -> dict:
    ring = s.ring
    idx = [ring._unit_index[n] for n in names]
    lims = {ring._unit_index[n]: Fraction(v) * ring.denominator(n) for n, v in limits.items()}
    out: dict = {}
    for (u, n), c in s.terms.items():
        if any(abs(u[k]) > lim if ring.units[k][0] == "z" else u[k] > lim for k, lim in lims.items()):
            continue
        out.setdefault(tuple(u[k] for k in idx), {})[(u, n)] = c
    return {k: Scalar(ring, v) for k, v in out.items()}


def verify_red34(ep: EpsilonParams, cd: CouplingData, i: int, order_q: int, z_range: int,
                 nc_cross_check: bool = True) -> VerificationReport:
    if order_q < 0 or z_range < 0:
        raise ValueError("order and z_range must be >= 0")
    report = VerificationReport("classical-limit", {"rank": ep.rank, "node": i, "order": order_q, "z_range": z_range,
                                          "log_couplings": [str(x) for x in cd.log_couplings]})
    report.note("S -> z^-1 (e^(eps d/dx) -> z), all y-symbols at the common argument x")
    report.note("left side carries the normalization q~^(M^2/2) e^(xi_(i-M) - xi_i) inside the lambda-sums")
    ring = limit_ring(cd)
    with timed(report):
        lhs = theta_side(cd, i, order_q, ring)
        rhs = product_side(cd, i, order_q, ring)
        limits = {"q": order_q, "z": z_range}
        a, b = _split_by(lhs, ["z", "q"], limits), _split_by(rhs, ["z", "q"], limits)
        for key in sorted(set(a) | set(b)):
            report.terms_checked += 1
            x, y = a.get(key, ring.zero), b.get(key, ring.zero)
            if x != y:
                report.fail(f"z^{key[0]} q~^({key[1]}/2)", str(x), str(y))
        if nc_cross_check:
            src = qchar_ring(cd)
            view = qchar_view(ep, cd, i, src)
            table = enumerate_partitions(order_q)
            ex = ring.monomial({"e": -cd.xi_at(i)})
            for m in range(-z_range, z_range + 1):
                for w in range(order_q + 1):
                    if Fraction(m * m, 2) + w > order_q:
                        continue
                    for lam in table[w]:
                        report.terms_checked += 1
                        nc = mono_mul(x_lambda(view.shifted(row=-m), lam), NCMonomial.shift(-m))
                        got = project_classical(nc, ring, src) * ex
                        want = ring.monomial({"z": m, "e": -cd.xi_at(i)})
                        for (aa, bb), e in x_lambda_exponents(lam).items():
                            if e:
                                want = want * classical_entry(ring, cd, i, aa - m, bb, e)
                        if got != want:
                            report.fail(f"nc-projection M={m} lambda={lam}", str(got), str(want))
    return report


# --- the epsilon identity -----------------------------------------------------------

def verify_fay(ep: EpsilonParams) -> bool:
    """-1/(e3~ e4~) = 1/(eps e4~) + 1/(eps e3~)."""
    e, e3, e4 = ep.eps, ep.eps3_tilde, ep.eps4_tilde
    if 0 in (e, e3, e4):
        raise ZeroDivisionError("eps, eps3~ and eps4~ must be nonzero")
    return -1 / (e3 * e4) == 1 / (e * e4) + 1 / (e * e3)


def fay_symbolic() -> bool:
    """The same identity with free symbols eps, eps3~ and eps4~ = -eps - eps3~."""
    import sympy

    e, e3 = sympy.symbols("epsilon epsilon3t", nonzero=True)
    e4 = -e - e3
    return sympy.simplify(-1 / (e3 * e4) - (1 / (e * e4) + 1 / (e * e3))) == 0


def _random_fraction(rng, span: int = 9, den: int = 7) -> Fraction:
    return Fraction(rng.randint(-span * den, span * den), rng.randint(1, den))


def verify_xi_solver(trials: int, ranks: Sequence[int], seed: int = 0) -> VerificationReport:
    """Random zero-sum couplings per rank; every residual must vanish exactly."""
    import random

    rng = random.Random(seed)
    report = VerificationReport("xi-solver", {"trials": trials, "ranks": list(ranks), "seed": seed})
    with timed(report):
        for r in ranks:
            for _ in range(trials):
                l = [_random_fraction(rng) for _ in range(r)]
                l.append(-sum(l))
                report.terms_checked += 1
                xi = xi_solve(l)
                res = xi_residuals(xi, l)
                if xi[0] != 0 or any(res):
                    report.fail(f"r={r} l={[str(x) for x in l]}", str([str(x) for x in res]), "0")
    return report


def verify_fay_sweep(trials: int, seed: int = 0) -> VerificationReport:
    import random

    rng = random.Random(seed)
    report = VerificationReport("fay", {"trials": trials, "seed": seed})
    report.note("the undefined eps~ in the identity is read as eps")
    with timed(report):
        report.terms_checked += 1
        if not fay_symbolic():
            report.fail("symbolic", "nonzero", "0")
        done = 0
        while done < trials:
            ep = EpsilonParams(0, _random_fraction(rng), _random_fraction(rng))
            if 0 in (ep.eps, ep.eps3_tilde, ep.eps4_tilde):
                continue
            done += 1
            report.terms_checked += 1
            if not verify_fay(ep):
                report.fail(f"eps={ep.eps} eps3~={ep.eps3_tilde}", "False", "True")
    return report
