from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from ncjacobi import special
from ncjacobi.jacobi import verify_jacobi
from ncjacobi.ncalg import NCMonomial, mono_mul, ys
from ncjacobi.partitions import enumerate_partitions
from ncjacobi.scalar import ScalarRing
from ncjacobi.special import (CouplingData, EpsilonParams, HigherTimes, qchar_view, t_formal, t_of_b,
                              toeplitz_view, verify_bosfert, verify_classical_jtp, verify_fay, verify_qchar_jacobi,
                              verify_red34, xi_residuals, xi_solve)

F = Fraction
halves = st.integers(-9, 9).map(lambda k: F(2 * k + 1, 2))
rationals = st.fractions(min_value=-6, max_value=6, max_denominator=8)


class TestTimes:
    def test_quadratic_part_telescopes(self):
        ht = HigherTimes(2, 0)
        for r2 in (1, 3, 5, -3):
            r = F(r2, 2)
            assert t_of_b(ht, r).exp() == ht.ring.monomial({"z": 1, "v": 2 * r})

    def test_cubic_at_zero(self):
        ht = HigherTimes(3, 2)
        assert t_of_b(ht, 0).nil == ht.b_nil(3) / 24

    def test_even_part(self):
        ht = HigherTimes(2, 0)
        for xi in (F(1, 2), F(5, 2)):
            both = t_of_b(ht, xi) + t_of_b(ht, -xi)
            assert both.units == {"z": 2}

    def test_formal_examples(self):
        ht = HigherTimes(4, 2)
        xi = F(3, 2)
        b3, b4 = ht.b_nil(3), ht.b_nil(4)
        assert t_formal(ht, xi) == b3 * (xi ** 2 / 2 + F(1, 24)) + b4 * (xi ** 3 / 6 + xi / 24)
        assert t_formal(HigherTimes(2, 0), xi) == 0

    @given(halves)
    def test_formal_is_nilpotent_part(self, xi):
        ht = HigherTimes(6, 2)
        assert t_formal(ht, xi) == t_of_b(ht, xi).nil

    def test_fractional_exponent_rejected(self):
        with pytest.raises(ValueError):
            t_of_b(HigherTimes(3, 1), F(1, 4))


def euler_series(order):
    ring = ScalarRing([("q", 1)])
    q = ring.unit("q")
    out = ring.one
    for n in range(1, order + 1):
        geo = sum((q ** (n * k) for k in range(order // n + 1)), ring.zero)
        out = out.mul(geo, {"q": order})
    return out


def test_euler_sanity():
    series = euler_series(15)
    table = enumerate_partitions(15)
    for n in range(16):
        assert series.coefficient_of({"q": n}) == len(table[n])


class TestClassical:
    def test_examples(self):
        ht = HigherTimes(2, 0)
        prod = special.jtp_product(ht, 8)
        assert prod.coefficient_of({"z": 0, "v": 4}) == 2
        assert prod.coefficient_of({"z": 1, "v": 1}) == 1
        assert prod.coefficient_of({"z": 2, "v": 4}) == 1

    def test_sweep(self):
        assert verify_classical_jtp(20, 4).passed

    def test_degeneration(self):
        # killing every nilpotent collapses the refinement onto the classical product
        a = special.jtp_product(HigherTimes(4, 0), 16)
        b = special.jtp_product(HigherTimes(2, 0), 16)
        assert list(a.items()) == list(b.items())
        assert verify_bosfert(4, 0, 16).passed

    def test_refinement_small(self):
        rep = verify_bosfert(3, 1, 8)
        assert rep.passed and rep.terms_checked > 0

    def test_refinement_detects_a_wrong_formal_time(self, monkeypatch):
        real = special.t_formal
        monkeypatch.setattr(special, "t_formal", lambda ht, xi: real(ht, xi) * 2)
        assert not verify_bosfert(3, 1, 8).passed

    def test_preconditions(self):
        with pytest.raises(ValueError):
            verify_bosfert(2, 1, 4)
        with pytest.raises(ValueError):
            verify_classical_jtp(-1, 2)


class TestToeplitz:
    def test_entries(self):
        ht = HigherTimes(4, 2)
        view = toeplitz_view(ht)
        assert view.entry(0, 0) == NCMonomial(ht.ring.one)
        for n in range(1, 4):
            want = (-t_of_b(ht, F(1, 2) - n)).exp()
            assert view.ratio((n, 0), (n, 1)) == NCMonomial(want)
        for a, b in [(0, 3), (2, -1), (-4, 4)]:
            assert view.entry(a + 1, b + 1) == view.entry(a, b).conjugate(1) == view.entry(a, b)

    def test_jacobi_through_toeplitz(self):
        assert verify_jacobi(3, False, toeplitz_view(HigherTimes(4, 2))).passed


class TestXi:
    def test_examples(self):
        assert xi_solve([0]) == [0]
        c = F(5, 3)
        assert xi_solve([c, -c]) == [0, c / 2]
        xi = xi_solve([c, 0, -c])
        assert xi[0] == 0 and not any(xi_residuals(xi, [c, 0, -c]))

    @given(st.lists(rationals, min_size=1, max_size=5))
    def test_residuals_vanish(self, head):
        l = head + [-sum(head)]
        xi = xi_solve(l)
        assert xi[0] == 0 and not any(xi_residuals(xi, l))

    def test_unique(self):
        # with xi_0 = 0 the periodic solution is unique: the homogeneous system only has constants
        l = [F(1), F(2), F(-3)]
        xi = xi_solve(l)
        for shift in (F(1), F(-2, 3)):
            moved = [x + shift for x in xi]
            assert not any(xi_residuals(moved, l)) and moved[0] != 0

    def test_nonzero_sum_rejected(self):
        with pytest.raises(ValueError, match="sum"):
            xi_solve([1, 1])


class TestEpsilon:
    def test_derived(self):
        ep = EpsilonParams(2, F(1), F(1, 3))
        assert ep.eps3 == 1 and ep.eps4_tilde == F(-4, 3) and ep.eps4 == -4
        assert -ep.eps4 == ep.eps3 + (ep.rank + 1) * ep.eps

    @given(st.integers(0, 4), rationals, rationals)
    def test_sum_of_four(self, r, e, e3t):
        # eps1 + eps2 + eps3 + eps4 with eps4 = (r+1) eps4~ equals -r eps; zero only at r = 0
        ep = EpsilonParams(r, e, e3t)
        assert ep.eps + ep.eps3 + ep.eps4 == -r * ep.eps

    def test_fay_examples(self):
        assert verify_fay(EpsilonParams(0, F(1), F(2)))
        assert verify_fay(EpsilonParams(0, F(1), F(-1, 2)))
        assert special.fay_symbolic()

    def test_fay_zero_rejected(self):
        with pytest.raises(ZeroDivisionError):
            verify_fay(EpsilonParams(0, F(1), F(-1)))


def quiver(r):
    l = [F(0)] if r == 0 else [F(1)] + [F(0)] * (r - 1) + [F(-1)]
    return EpsilonParams(r, F(1), F(1, 3)), CouplingData(l)


class TestQChar:
    def test_entries(self):
        ep, cd = quiver(2)
        view = qchar_view(ep, cd, 0)
        ring = view.base.ring
        assert view.entry(0, 0) == NCMonomial(ring.monomial({"e": cd.xi_at(0)}), {ys(0, 1, 0): 1})
        i = 1
        view = qchar_view(ep, cd, i)
        for n in range(1, 4):
            coeff = ring.monomial({"q": n - F(1, 2), "e": cd.xi_at(i + n) - cd.xi_at(i + n - 1)})
            want = NCMonomial(coeff, {ys(i + n, 1, 0, rank=2): 1, ys(i + n - 1, 0, 0, rank=2): -1})
            assert view.ratio((n, 0), (n, 1)) == want
        for n in range(0, 4):
            coeff = ring.monomial({"q": n + F(1, 2), "e": cd.xi_at(i - n - 1) - cd.xi_at(i - n)})
            want = NCMonomial(coeff, {ys(i - n - 1, 1 - n, 0, rank=2): 1, ys(i - n, 1 - n, 0, rank=2): -1})
            assert view.ratio((-1, n), (0, n)) == want

    def test_sigma_equivariance(self):
        import random

        rng = random.Random(7)
        ep, cd = quiver(2)
        for i in range(3):
            view = qchar_view(ep, cd, i)
            for _ in range(100):
                a, b = rng.randint(-8, 8), rng.randint(-8, 8)
                assert view.entry(a + 1, b + 1) == view.entry(a, b).conjugate(1)

    def test_factor_families(self):
        ep, cd = quiver(2)
        for i in range(3):
            for label, got, want in special.factor_families(ep, cd, i, 4):
                assert got == want, label

    @pytest.mark.parametrize("r", [0, 1, 2])
    def test_termwise(self, r):
        ep, cd = quiver(r)
        for i in range(r + 1):
            rep = verify_qchar_jacobi(ep, cd, i, 3)
            assert rep.passed, rep.summary()

    def test_wrong_q_law_is_caught(self, monkeypatch):
        ep, cd = quiver(1)

        def linear(self, c, e=1):
            return self.ring.monomial({"q": e * c, "e": e * self.cd.xi_at(self.i + c)})

        monkeypatch.setattr(special.QCharBase, "weight", linear)
        rep = verify_qchar_jacobi(ep, cd, 0, 2)
        assert not rep.passed
        assert any("factor" in f["index"] for f in rep.failures)

    def test_rank_mismatch(self):
        ep, _ = quiver(2)
        with pytest.raises(ValueError):
            qchar_view(ep, CouplingData([0]), 0)


class TestCommutativeLimit:
    def test_leading_order(self):
        ep, cd = quiver(1)
        ring = special.limit_ring(cd)
        assert special.product_side(cd, 1, 0, ring) == ring.unit("y1")
        assert special.theta_side(cd, 1, 0, ring) == ring.unit("y1")
        assert verify_red34(ep, cd, 1, 0, 0).passed

    @pytest.mark.parametrize("r, order", [(0, 4), (1, 3), (2, 3)])
    def test_identity(self, r, order):
        ep, cd = quiver(r)
        rep = verify_red34(ep, cd, 0, order, 3)
        assert rep.passed, rep.summary()

    def test_node_mismatch_is_caught(self):
        ep, cd = quiver(1)
        ring = special.limit_ring(cd)
        assert special.theta_side(cd, 0, 3, ring) != special.product_side(cd, 1, 3, ring)

    def test_projection_rejects_matrix_symbols(self):
        from ncjacobi.ncalg import Y

        ep, cd = quiver(0)
        with pytest.raises(ValueError):
            special.project_classical(NCMonomial.gen(Y(0, 0)), special.limit_ring(cd), special.qchar_ring(cd))
