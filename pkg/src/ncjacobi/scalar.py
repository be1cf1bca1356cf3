"""Exact commutative coefficient rings.

A ``Scalar`` is a finite sum of rational coefficients times a monomial in
invertible units (exponents in (1/d)Z, stored as integers scaled by d) and
nilpotent variables (total degree capped, higher degrees are zero).
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial
from typing import Iterable, Mapping


class ScalarRing:
    def __init__(self, units: Iterable[tuple[str, int]] = (), nilpotents: Iterable[str] = (),
                 degree_cap: int = 0):
        self.units = tuple((str(n), int(d)) for n, d in units)
        self.nilpotents = tuple(str(n) for n in nilpotents)
        self.degree_cap = int(degree_cap)
        names = [n for n, _ in self.units] + list(self.nilpotents)
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate variable names: {names}")
        if any(d <= 0 for _, d in self.units):
            raise ValueError("unit denominators must be positive")
        if self.nilpotents and self.degree_cap < 0:
            raise ValueError("degree cap must be >= 0")
        self._unit_index = {n: i for i, (n, _) in enumerate(self.units)}
        self._nil_index = {n: i for i, n in enumerate(self.nilpotents)}
        self._zero_u = (0,) * len(self.units)
        self._zero_n = (0,) * len(self.nilpotents)

    def __repr__(self):
        return f"ScalarRing(units={list(self.units)}, nilpotents={list(self.nilpotents)}, degree_cap={self.degree_cap})"

    def __eq__(self, other):
        return (isinstance(other, ScalarRing) and self.units == other.units
                and self.nilpotents == other.nilpotents and self.degree_cap == other.degree_cap)

    def __hash__(self):
        return hash((self.units, self.nilpotents, self.degree_cap))

    def denominator(self, name: str) -> int:
        return self.units[self._unit_index[name]][1]

    def unit_key(self, exponents: Mapping[str, object]) -> tuple[int, ...]:
        key = list(self._zero_u)
        for name, e in exponents.items():
            i = self._unit_index[name]
            scaled = Fraction(e) * self.units[i][1]
            if scaled.denominator != 1:
                raise ValueError(f"exponent {e} of {name} not in (1/{self.units[i][1]})Z")
            key[i] = int(scaled)
        return tuple(key)

    def const(self, c=1) -> "Scalar":
        c = Fraction(c)
        return Scalar(self, {(self._zero_u, self._zero_n): c} if c else {})

    @property
    def zero(self) -> "Scalar":
        return Scalar(self, {})

    @property
    def one(self) -> "Scalar":
        return self.const(1)

    def unit(self, name: str, exponent=1) -> "Scalar":
        return self.monomial({name: exponent})

    def monomial(self, units: Mapping[str, object] | None = None,
                 nils: Mapping[str, int] | None = None, coeff=1) -> "Scalar":
        ukey = self.unit_key(units or {})
        nkey = list(self._zero_n)
        for name, k in (nils or {}).items():
            nkey[self._nil_index[name]] = int(k)
        return Scalar(self, {(ukey, tuple(nkey)): Fraction(coeff)})._capped()

    def nil(self, name: str) -> "Scalar":
        return self.monomial(nils={name: 1})

    def coerce(self, x) -> "Scalar":
        if isinstance(x, Scalar):
            if x.ring != self:
                raise ValueError("scalars from different rings")
            return x
        return self.const(x)


class Scalar:
    __slots__ = ("ring", "terms")

    def __init__(self, ring: ScalarRing, terms: dict):
        self.ring = ring
        self.terms = terms

    def _capped(self) -> "Scalar":
        cap = self.ring.degree_cap
        if self.ring.nilpotents:
            self.terms = {k: c for k, c in self.terms.items() if c and sum(k[1]) <= cap}
        else:
            self.terms = {k: c for k, c in self.terms.items() if c}
        return self

    # arithmetic -------------------------------------------------------------

    def __add__(self, other) -> "Scalar":
        other = self.ring.coerce(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            v = out.get(k, 0) + c
            if v:
                out[k] = v
            else:
                out.pop(k, None)
        return Scalar(self.ring, out)

    __radd__ = __add__

    def __neg__(self) -> "Scalar":
        return Scalar(self.ring, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other) -> "Scalar":
        return self + (-self.ring.coerce(other))

    def __rsub__(self, other) -> "Scalar":
        return self.ring.coerce(other) - self

    def __mul__(self, other) -> "Scalar":
        if not isinstance(other, Scalar):
            c = Fraction(other)
            if not c:
                return self.ring.zero
            return Scalar(self.ring, {k: v * c for k, v in self.terms.items()})
        return self.mul(other)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "Scalar":
        if isinstance(other, Scalar):
            return self * other.invert()
        return self * (1 / Fraction(other))

    def mul(self, other: "Scalar", truncate: Mapping[str, object] | None = None) -> "Scalar":
        """Product; ``truncate`` maps unit names to a maximal kept exponent."""
        other = self.ring.coerce(other)
        ring = self.ring
        cap = ring.degree_cap if ring.nilpotents else None
        limits = ()
        if truncate:
            limits = tuple((ring._unit_index[n], Fraction(e) * ring.denominator(n))
                           for n, e in truncate.items())
        out: dict = {}
        for (u1, n1), c1 in self.terms.items():
            d1 = sum(n1)
            for (u2, n2), c2 in other.terms.items():
                if cap is not None and d1 + sum(n2) > cap:
                    continue
                u = tuple(a + b for a, b in zip(u1, u2))
                if limits and any(u[i] > lim for i, lim in limits):
                    continue
                k = (u, tuple(a + b for a, b in zip(n1, n2)))
                v = out.get(k, 0) + c1 * c2
                if v:
                    out[k] = v
                else:
                    out.pop(k, None)
        return Scalar(ring, out)

    def __pow__(self, n: int) -> "Scalar":
        if n < 0:
            return self.invert() ** (-n)
        result, base = self.ring.one, self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def invert(self) -> "Scalar":
        """Inverse of a single-term unit monomial."""
        if len(self.terms) != 1:
            raise ArithmeticError(f"cannot invert non-monomial {self}")
        (u, n), c = next(iter(self.terms.items()))
        if any(n):
            raise ArithmeticError(f"cannot invert nilpotent-containing {self}")
        return Scalar(self.ring, {(tuple(-a for a in u), n): 1 / c})

    def truncate(self, limits: Mapping[str, object]) -> "Scalar":
        ring = self.ring
        lims = [(ring._unit_index[n], Fraction(e) * ring.denominator(n)) for n, e in limits.items()]
        return Scalar(ring, {k: c for k, c in self.terms.items()
                             if all(k[0][i] <= lim for i, lim in lims)})

    # comparisons and inspection ---------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, Scalar):
            return self.ring == other.ring and self.terms == other.terms
        try:
            return self.terms == self.ring.const(other).terms
        except (TypeError, ValueError):
            return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_unit_monomial(self) -> bool:
        if len(self.terms) != 1:
            return False
        (_, n), _ = next(iter(self.terms.items()))
        return not any(n)

    def unit_exponents(self) -> set[tuple[Fraction, ...]]:
        """Distinct unit exponent vectors (unscaled) appearing in the support."""
        dens = [d for _, d in self.ring.units]
        return {tuple(Fraction(a, d) for a, d in zip(u, dens)) for u, _ in self.terms}

    def coefficient_of(self, unit_exponents: Mapping[str, object]) -> "Scalar":
        """Nilpotent-valued coefficient of one unit monomial."""
        ukey = self.ring.unit_key(unit_exponents)
        zero_u = self.ring._zero_u
        return Scalar(self.ring, {(zero_u, n): c for (u, n), c in self.terms.items() if u == ukey})

    def items(self):
        """Yield (unit exponent dict, nilpotent exponent dict, coefficient), sorted."""
        dens = self.ring.units
        for (u, n), c in sorted(self.terms.items()):
            yield ({name: Fraction(a, d) for (name, d), a in zip(dens, u) if a},
                   {name: k for name, k in zip(self.ring.nilpotents, n) if k}, c)

    def __repr__(self) -> str:
        return f"Scalar({self})"

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        pieces = []
        for units, nils, c in self.items():
            factors = []
            for name, e in list(units.items()) + list(nils.items()):
                factors.append(name if e == 1 else f"{name}^{e}" if e >= 0 else f"{name}^({e})")
            if not factors:
                pieces.append(str(c))
            elif c == 1:
                pieces.append("*".join(factors))
            elif c == -1:
                pieces.append("-" + "*".join(factors))
            else:
                pieces.append(f"{c}*" + "*".join(factors))
        return " + ".join(pieces).replace("+ -", "- ")


def exp_nilpotent(p: Scalar, units: Mapping[str, object] | None = None) -> Scalar:
    """exp(log-linear part + nilpotent part).

    ``units`` gives the log-linear part as exponents of the ring's units;
    ``p`` must be purely nilpotent (no unit content, no constant term), so
    the exponential series stops at the degree cap.
    """
    ring = p.ring
    zero_u = ring._zero_u
    for (u, n), c in p.terms.items():
        if u != zero_u or not any(n):
            raise ArithmeticError(f"cannot exponentiate non-nilpotent term in {p}")
    result = ring.monomial(units or {})
    if not p.terms:
        return result
    total = ring.one
    power = ring.one
    for k in range(1, ring.degree_cap + 1):
        power = power * p
        if not power:
            break
        total = total + power * Fraction(1, factorial(k))
    return result * total
