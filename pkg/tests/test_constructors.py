import pytest

from hatcycle.constructors import (CHI2_TABLE, CHI3_TABLE, SIGMA, TAU, algebraic_c3,
                                   algebraic_c4, chi2_strategy, chi3_strategy, construct_winning,
                                   is_invariant, twisted_uniform)
from hatcycle.core import all_assignments, correct_count
from hatcycle.errors import DomainError
from hatcycle.verifier import brute_force_defeats, defeat_count, verify


def test_tables_are_invariant_under_their_twists():
    assert is_invariant(CHI3_TABLE, SIGMA)
    assert is_invariant(CHI2_TABLE, TAU)
    assert not is_invariant(CHI3_TABLE, TAU)
    with pytest.raises(DomainError):
        twisted_uniform(6, CHI3_TABLE, TAU)


def test_algebraic_small_cycles_win():
    for f in (algebraic_c3(), algebraic_c4()):
        assert all(correct_count(f, g) >= 1 for g in all_assignments(f.n))


@pytest.mark.parametrize("n", [3, 6, 9, 12])
def test_chi3_wins_when_three_divides(n):
    assert brute_force_defeats(chi3_strategy(n))[0] == 0


@pytest.mark.parametrize("n", [4, 5, 7, 8, 10, 11, 13])
def test_chi3_loses_exactly_three_times_otherwise(n):
    count, hits = brute_force_defeats(chi3_strategy(n))
    assert count == 3 == defeat_count(chi3_strategy(n))
    assert verify(chi3_strategy(n)).witness == hits[0]


def test_chi3_defeats_at_five():
    _, hits = brute_force_defeats(chi3_strategy(5))
    assert [h.colours for h in hits] == [(0, 1, 2, 0, 1), (1, 2, 0, 1, 2), (2, 0, 1, 2, 0)]


@pytest.mark.parametrize("n,expected", [(4, 0), (6, 16), (8, 32), (10, 64), (12, 144)])
def test_chi2_defeat_counts(n, expected):
    assert brute_force_defeats(chi2_strategy(n))[0] == expected == defeat_count(chi2_strategy(n))


def test_chi2_domain():
    for n in (3, 5, 2):
        with pytest.raises(DomainError):
            chi2_strategy(n)
    with pytest.raises(DomainError):
        chi3_strategy(6, twist=(0, 2, 1))


def test_construct_winning():
    assert construct_winning(5) is None and construct_winning(8) is None
    for n in [4] + list(range(3, 100, 3)):
        assert verify(construct_winning(n)).winning
    with pytest.raises(DomainError):
        construct_winning(2)
