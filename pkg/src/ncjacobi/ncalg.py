"""The shift algebra: commuting generators, a shift S, and normal forms.

Every element is written as (commutative monomial) * S^k with S pushed to
the right. Conjugation by S acts on generators as

    S Y[a,b] S^-1   = Y[a+1,b+1]
    S Yt[a,b] S^-1  = Yt[a-1,b]
    S y[j,k,m] S^-1 = y[j,k-1,m]          (y_j(x + k eps + m eps3))

and the tilde family is reduced onto Yt[0,b] through the connection
relation Yt[a,n] / Yt[a-1,n] = Y[2-a,n+1-a] / Y[1-a,n+1-a].

Generators are plain tuples: ('Y', a, b), ('T', a, b), ('y', j, k, m).
"""

from __future__ import annotations

import contextlib
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator, Mapping

Gen = tuple

_state = {"reduce_tilde": True}


@contextlib.contextmanager
def tilde_reduction(enabled: bool) -> Iterator[None]:
    """Temporarily switch the tilde rewrite on or off (mutation testing only)."""
    old = _state["reduce_tilde"]
    _state["reduce_tilde"] = enabled
    try:
        yield
    finally:
        _state["reduce_tilde"] = old


def Y(a: int, b: int) -> Gen:
    return ("Y", a, b)


def Yt(a: int, b: int) -> Gen:
    return ("T", a, b)


def ys(j: int, k: int, m: int = 0, rank: int | None = None) -> Gen:
    """y_j(x + k eps + m eps3); with ``rank`` the node index is folded into 0..rank."""
    if rank is not None:
        q, j = divmod(j, rank + 1)
        m += q
    return ("y", j, k, m)


# --- rewriting ----------------------------------------------------------------

def tilde_step(g: Gen) -> tuple[tuple[Gen, int], ...]:
    """One application of the connection relation, moving Yt[a,n] one step toward a = 0."""
    fam, a, n = g
    if fam != "T" or a == 0:
        return ((g, 1),)
    if a > 0:
        return ((Yt(a - 1, n), 1), (Y(2 - a, n + 1 - a), 1), (Y(1 - a, n + 1 - a), -1))
    return ((Yt(a + 1, n), 1), (Y(-a, n - a), 1), (Y(1 - a, n - a), -1))


@lru_cache(maxsize=None)
def _reduced(g: Gen) -> tuple[tuple[Gen, int], ...]:
    acc: dict = {}
    pending = [(g, 1)]
    while pending:
        h, e = pending.pop()
        if h[0] == "T" and h[1] != 0:
            pending.extend((x, e * f) for x, f in tilde_step(h))
        else:
            _bump(acc, h, e)
    return tuple(sorted(acc.items()))


def reduce_generator(g: Gen) -> tuple[tuple[Gen, int], ...]:
    if g[0] == "T" and g[1] != 0 and _state["reduce_tilde"]:
        return _reduced(g)
    return ((g, 1),)


def _bump(acc: dict, g: Gen, e: int) -> None:
    v = acc.get(g, 0) + e
    if v:
        acc[g] = v
    else:
        acc.pop(g, None)


def _shift_gen(g: Gen, k: int) -> Gen:
    fam = g[0]
    if fam == "Y":
        return ("Y", g[1] + k, g[2] + k)
    if fam == "T":
        return ("T", g[1] - k, g[2])
    return ("y", g[1], g[2] - k, g[3])


@lru_cache(maxsize=None)
def _sigma_gen(g: Gen, k: int, reduce: bool) -> tuple[tuple[Gen, int], ...]:
    h = _shift_gen(g, k)
    if reduce and h[0] == "T" and h[1] != 0:
        return _reduced(h)
    return ((h, 1),)


def sigma_exps(exps: Iterable[tuple[Gen, int]], k: int) -> dict:
    """S^k E S^-k on an exponent vector, reduced."""
    reduce = _state["reduce_tilde"]
    out: dict = {}
    for g, e in exps:
        for h, f in _sigma_gen(g, k, reduce):
            _bump(out, h, e * f)
    return out


# --- monomials ----------------------------------------------------------------

class NCMonomial:
    """coeff * (commuting generators) * S^s, in normal form.

    ``coeff`` is any commutative coefficient (int, Fraction, Scalar) that is
    central, i.e. commutes with S.
    """

    __slots__ = ("coeff", "exps", "s")

    def __init__(self, coeff=1, exps: Mapping[Gen, int] | Iterable = (), s: int = 0):
        items = exps.items() if isinstance(exps, Mapping) else exps
        acc: dict = {}
        for g, e in items:
            for h, f in reduce_generator(g):
                _bump(acc, h, e * f)
        self.coeff = coeff
        self.exps = tuple(sorted(acc.items()))
        self.s = int(s)

    @classmethod
    def _raw(cls, coeff, exps: tuple, s: int) -> "NCMonomial":
        m = cls.__new__(cls)
        m.coeff, m.exps, m.s = coeff, exps, s
        return m

    @classmethod
    def gen(cls, g: Gen, e: int = 1) -> "NCMonomial":
        return cls(1, {g: e})

    @classmethod
    def shift(cls, k: int = 1) -> "NCMonomial":
        return cls(1, (), k)

    @property
    def key(self) -> tuple:
        return (self.exps, self.s)

    def __mul__(self, other) -> "NCMonomial":
        if isinstance(other, NCMonomial):
            return mono_mul(self, other)
        return NCMonomial._raw(self.coeff * other, self.exps, self.s)

    def __rmul__(self, other) -> "NCMonomial":
        return NCMonomial._raw(other * self.coeff, self.exps, self.s)

    def __neg__(self) -> "NCMonomial":
        return NCMonomial._raw(-self.coeff, self.exps, self.s)

    def __pow__(self, n: int) -> "NCMonomial":
        if n < 0:
            return self.inverse() ** (-n)
        out = NCMonomial()
        for _ in range(n):
            out = out * self
        return out

    def inverse(self) -> "NCMonomial":
        # (c E S^s)^-1 = S^-s E^-1 c^-1 = c^-1 sigma^-s(E^-1) S^-s
        c = self.coeff
        inv = c.invert() if hasattr(c, "invert") else 1 / Fraction(c)
        if not hasattr(c, "invert") and Fraction(inv).denominator == 1:
            inv = int(inv)
        exps = sigma_exps(((g, -e) for g, e in self.exps), -self.s)
        return NCMonomial._raw(inv, tuple(sorted(exps.items())), -self.s)

    def __eq__(self, other) -> bool:
        if not isinstance(other, NCMonomial):
            return NotImplemented
        return self.exps == other.exps and self.s == other.s and self.coeff == other.coeff

    def __hash__(self):
        return hash((self.exps, self.s))

    def conjugate(self, k: int) -> "NCMonomial":
        """S^k m S^-k."""
        exps = sigma_exps(self.exps, k)
        return NCMonomial._raw(self.coeff, tuple(sorted(exps.items())), self.s)

    def __repr__(self) -> str:
        return f"NCMonomial({render(self)})"

    __str__ = lambda self: render(self)


def mono_mul(m1: NCMonomial, m2: NCMonomial) -> NCMonomial:
    """(c1 E1 S^k1)(c2 E2 S^k2) = c1 c2 E1 sigma^k1(E2) S^(k1+k2)."""
    acc = dict(m1.exps)
    if m1.s:
        for g, e in sigma_exps(m2.exps, m1.s).items():
            _bump(acc, g, e)
    else:
        for g, e in m2.exps:
            _bump(acc, g, e)
    return NCMonomial._raw(m1.coeff * m2.coeff, tuple(sorted(acc.items())), m1.s + m2.s)


def canonicalize(m: NCMonomial) -> NCMonomial:
    """Reduce any tilde generator Yt[a,n] with a != 0 onto Yt[0,n]."""
    return NCMonomial(m.coeff, m.exps, m.s)


def sigma(g: Gen, k: int) -> NCMonomial:
    """Normal form of S^k g S^-k."""
    return NCMonomial(1, sigma_exps(((g, 1),), k))


def product(factors: Iterable[NCMonomial]) -> NCMonomial:
    out = NCMonomial()
    for f in factors:
        out = mono_mul(out, f)
    return out


# --- rendering ----------------------------------------------------------------

def render_gen(g: Gen) -> str:
    fam = g[0]
    if fam == "Y":
        return f"Y[{g[1]},{g[2]}]"
    if fam == "T":
        return f"Yt[{g[1]},{g[2]}]"
    return f"y[{g[1]},{g[2]},{g[3]}]"


def _render_coeff(c) -> str:
    s = str(c)
    # plain rationals stay bare, anything with structure gets parentheses
    return s if s.lstrip("-").replace("/", "", 1).isdigit() else f"({s})"


def render(m: NCMonomial) -> str:
    """Text form such as ``Y[1,0]*Y[1,1]^-1*S^1``."""
    parts = []
    for g, e in m.exps:
        parts.append(render_gen(g) if e == 1 else f"{render_gen(g)}^{e}")
    if m.s:
        parts.append(f"S^{m.s}")
    body = "*".join(parts)
    c = m.coeff
    if c == 1:
        return body or "1"
    if c == -1:
        return "-" + (body or "1")
    return _render_coeff(c) + ("*" + body if body else "")


# --- polynomials ----------------------------------------------------------------

class NCPoly:
    """Finite sum of monomials with distinct (exponents, S-power)."""

    __slots__ = ("terms",)

    def __init__(self, monomials: Iterable[NCMonomial] = ()):
        self.terms: dict = {}
        for m in monomials:
            self._add_mono(m)

    def _add_mono(self, m: NCMonomial) -> None:
        k = m.key
        if k in self.terms:
            c = self.terms[k] + m.coeff
        else:
            c = m.coeff
        if c == 0:
            self.terms.pop(k, None)
        else:
            self.terms[k] = c

    @classmethod
    def one(cls) -> "NCPoly":
        return cls([NCMonomial()])

    def monomials(self) -> list[NCMonomial]:
        return [NCMonomial._raw(c, e, s) for (e, s), c in sorted(self.terms.items())]

    def __iter__(self):
        return iter(self.monomials())

    def __len__(self) -> int:
        return len(self.terms)

    def __bool__(self) -> bool:
        return bool(self.terms)

    @staticmethod
    def coerce(x) -> "NCPoly":
        if isinstance(x, NCPoly):
            return x
        if isinstance(x, NCMonomial):
            return NCPoly([x])
        return NCPoly([NCMonomial(x)]) if x != 0 else NCPoly()

    def __add__(self, other) -> "NCPoly":
        out = NCPoly()
        out.terms = dict(self.terms)
        for m in NCPoly.coerce(other).monomials():
            out._add_mono(m)
        return out

    __radd__ = __add__

    def __neg__(self) -> "NCPoly":
        out = NCPoly()
        out.terms = {k: -c for k, c in self.terms.items()}
        return out

    def __sub__(self, other) -> "NCPoly":
        return self + (-NCPoly.coerce(other))

    def __mul__(self, other) -> "NCPoly":
        if not isinstance(other, (NCPoly, NCMonomial)):
            out = NCPoly()
            for m in self.monomials():
                out._add_mono(m * other)
            return out
        other = NCPoly.coerce(other)
        out = NCPoly()
        for a in self.monomials():
            for b in other.monomials():
                out._add_mono(mono_mul(a, b))
        return out

    def __rmul__(self, other) -> "NCPoly":
        if isinstance(other, NCMonomial):
            return NCPoly([other]) * self
        out = NCPoly()
        for m in self.monomials():
            out._add_mono(other * m)
        return out

    def __eq__(self, other) -> bool:
        try:
            other = NCPoly.coerce(other)
        except TypeError:
            return NotImplemented
        return self.terms == other.terms

    def __repr__(self) -> str:
        return f"NCPoly({self})"

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(render(m) for m in self.monomials()).replace("+ -", "- ")
