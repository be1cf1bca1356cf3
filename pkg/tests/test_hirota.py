import pytest
from hypothesis import given, strategies as st

from ncjacobi.hirota import (BilinearTerm, bilinear_term_value, check_grade, grade, pair_cancel_problems, rho,
                             terms_of_grade, verify_bilinear, verify_pair_cancel)
from ncjacobi.ncalg import NCMonomial, NCPoly, Y, Yt
from ncjacobi.partitions import EMPTY, Partition
from strategies import partitions

P = Partition.of
T = BilinearTerm
terms = st.builds(BilinearTerm, partitions, st.integers(-5, 5), partitions)


def test_rho_examples():
    assert rho(T(EMPTY, 0, EMPTY)) == T(EMPTY, -1, EMPTY)
    assert rho(T(EMPTY, 0, P(1))) == T(EMPTY, 1, EMPTY)
    assert rho(T(EMPTY, -1, EMPTY)) == T(EMPTY, 0, EMPTY)


def test_grade_examples():
    assert grade(T(EMPTY, 0, EMPTY)) == 0
    assert grade(T(EMPTY, 0, P(1))) == 1
    assert grade(T(EMPTY, 1, EMPTY)) == 1


def test_term_values():
    assert bilinear_term_value(T(EMPTY, 0, EMPTY)) == NCPoly([NCMonomial(1, {Yt(0, 0): 1, Y(1, 0): 1})])
    assert bilinear_term_value(T(EMPTY, -1, EMPTY)) == NCPoly([NCMonomial(-1, {Y(1, 0): 1, Yt(0, 0): 1})])
    total = bilinear_term_value(T(EMPTY, 0, EMPTY)) + bilinear_term_value(T(EMPTY, -1, EMPTY))
    assert not total


@pytest.mark.parametrize("t", [T(EMPTY, 0, EMPTY), T(EMPTY, 0, P(1)), T(P(2, 1), 1, P(3))])
def test_pair_cancel_examples(t):
    assert verify_pair_cancel(t)


def test_low_grades():
    assert set(terms_of_grade(0)) == {T(EMPTY, 0, EMPTY), T(EMPTY, -1, EMPTY)}
    g1 = terms_of_grade(1)
    assert len(g1) == 6
    pairs = {frozenset((t, rho(t))) for t in g1}
    assert len(pairs) == 3
    count, problems = check_grade(1)
    assert count == 6 and not problems


def test_grade_sets_are_complete():
    # every term with |M| small and grade g is enumerated exactly once
    for g in range(6):
        listed = terms_of_grade(g)
        assert len(listed) == len(set(listed))
        assert all(grade(t) == g for t in listed)
        for t in listed:
            assert grade(rho(t)) == g


@given(terms)
def test_rho_involution(t):
    r = rho(t)
    assert rho(r) == t
    assert r != t and abs(r.M - t.M) == 1
    assert grade(r) == grade(t)


@given(terms)
def test_pairs_cancel(t):
    assert not pair_cancel_problems(t)


def test_sweep():
    rep = verify_bilinear(6)
    assert rep.passed and rep.terms_checked == sum(len(terms_of_grade(g)) for g in range(7))


@pytest.mark.parametrize("mutation", ["rho-sign", "no-tilde"])
def test_mutations_fail_at_low_grade(mutation):
    rep = verify_bilinear(1, mutation=mutation)
    assert not rep.passed
    assert any(f["index"].startswith("grade=1") for f in rep.failures)


def test_bad_arguments():
    with pytest.raises(ValueError):
        verify_bilinear(-1)
    with pytest.raises(ValueError):
        verify_bilinear(2, mutation="nope")
