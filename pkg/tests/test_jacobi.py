import random

import pytest
from hypothesis import given, strategies as st

from ncjacobi.jacobi import (IDENTITY, MatrixView, YBase, check_jacobi_term, expand_truncated_product,
                             expected_term, jacobi_terms, row_shifted, split_rhs, verify_jacobi, verify_split,
                             x_lambda, x_lambda_exponents)
from ncjacobi.ncalg import NCMonomial, Y, mono_mul
from ncjacobi.partitions import EMPTY, ChargedPartition, HalfIntSetPair, Partition, charged_to_sets, enumerate_partitions
from strategies import charged, partitions

P = Partition.of
S = NCMonomial.shift


def mono(*pairs, s=0):
    return NCMonomial(1, dict(pairs), s)


def brute_x_lambda(view, lam):
    """The box product taken literally, one factor at a time in a shuffled order."""
    boxes = list(lam.boxes())
    random.Random(len(boxes)).shuffle(boxes)
    out = view.entry(0, 0)
    for a, b in boxes:
        for (i, j), e in (((a - 1, b), 1), ((a - 1, b - 1), -1), ((a, b - 1), 1), ((a, b), -1)):
            out = mono_mul(out, view.entry_power(i, j, e))
    return out


class TestXLambda:
    def test_examples(self):
        assert x_lambda(IDENTITY, EMPTY) == mono((Y(0, 0), 1))
        assert x_lambda(IDENTITY, P(1)) == mono((Y(0, 1), 1), (Y(1, 0), 1), (Y(1, 1), -1))
        assert x_lambda(IDENTITY, P(2)) == mono((Y(1, 0), 1), (Y(0, 2), 1), (Y(1, 2), -1))

    def test_shifted_view_entries(self):
        assert x_lambda(row_shifted(-1), EMPTY) == mono((Y(-1, 0), 1))
        assert MatrixView(YBase(), 2, -1).entry(0, 0) == mono((Y(2, -1), 1))
        assert IDENTITY.transpose().shifted(row=3).entry(1, 0) == mono((Y(0, 4), 1))

    def test_view_composition(self):
        v = IDENTITY.shifted(1, 2).shifted(-3, 4)
        assert v == IDENTITY.shifted(-2, 6)
        assert v.transpose().transpose() == v

    @given(partitions, st.integers(-4, 4))
    def test_commutative_and_order_free(self, lam, M):
        view = row_shifted(M)
        x = x_lambda(view, lam)
        assert x.s == 0
        assert x == brute_x_lambda(view, lam)

    def test_exponents_telescope(self):
        # the exponents of every X sum to 1 (entry (0,0) plus zero-sum box factors)
        for group in enumerate_partitions(7):
            for lam in group:
                assert sum(x_lambda_exponents(lam).values()) == 1


class TestSplit:
    def test_examples(self):
        assert split_rhs(HalfIntSetPair()) == mono((Y(0, 0), 1))
        assert split_rhs(HalfIntSetPair((3,), (1,))) == mono((Y(1, 0), 1), (Y(0, 2), 1), (Y(1, 2), -1))
        assert split_rhs(HalfIntSetPair((1,), ())) == mono((Y(-1, 0), 1))

    @given(charged)
    def test_split_matches_x(self, cp):
        sp = charged_to_sets(cp)
        assert split_rhs(sp) == x_lambda(row_shifted(-cp.charge), cp.shape)

    def test_sweep(self):
        rep = verify_split(5, 3)
        assert rep.passed, rep.summary()
        assert rep.terms_checked == 7 * sum(len(g) for g in enumerate_partitions(5))

    def test_wrong_sign_is_caught(self):
        sp = charged_to_sets(ChargedPartition(2, P(1)))
        assert split_rhs(sp, charge_sign=-1) != split_rhs(sp)


class TestJacobi:
    def test_r1_terms(self):
        terms = dict(jacobi_terms(1))
        assert terms[HalfIntSetPair((1,), ())] == mono((Y(-1, 0), 1), s=-1)
        assert terms[HalfIntSetPair((), (1,))] == mono((Y(1, 0), 1), s=1)
        assert terms[HalfIntSetPair()] == mono((Y(0, 0), 1))
        cp, want = expected_term(HalfIntSetPair((1,), ()), False)
        assert cp == ChargedPartition(1, EMPTY) and want == terms[HalfIntSetPair((1,), ())]

    def test_expansion_has_no_collisions(self):
        # distinct factor choices give distinct monomials, so the expansion has 4^R terms
        poly = expand_truncated_product(3)
        assert len(poly) == 4 ** 3
        assert sorted(m.key for m in poly) == sorted(t.key for _, t in jacobi_terms(3))

    def test_completeness(self):
        R = 4
        got = {expected_term(sp, False)[0] for sp, _ in jacobi_terms(R)}
        want = set()
        for group in enumerate_partitions(2 * R * R):
            for lam in group:
                for M in range(-R, R + 1):
                    sp = charged_to_sets(ChargedPartition(M, lam))
                    if all(x < 2 * R for x in sp.plus + sp.minus):
                        want.add(ChargedPartition(M, lam))
        assert got == want

    @pytest.mark.parametrize("transposed", [False, True])
    def test_sweep(self, transposed):
        rep = verify_jacobi(4, transposed)
        assert rep.passed and rep.terms_checked == 256

    def test_transposed_view(self):
        # the plain identity holds on the transposed matrix too, alongside Z^T itself
        assert verify_jacobi(3, False, IDENTITY.transpose()).passed
        assert verify_jacobi(3, True, IDENTITY.transpose()).passed
        cp, term = expected_term(HalfIntSetPair((1,), ()), True)
        assert term == mono((Y(0, -1), 1), s=-1)

    def test_mutation_detected(self):
        assert not verify_jacobi(3, split_charge_sign=-1).passed

    def test_cutoff_precondition(self):
        with pytest.raises(ValueError):
            verify_jacobi(0)
