import itertools

import pytest
from hypothesis import given

from hatcycle.constructors import algebraic_c3, algebraic_c4, chi3_strategy
from hatcycle.core import (Assignment, LocalRule, PathSegment, assignment_from_dict,
                           correct_count, guess, is_admissible, make_strategy,
                           strategy_from_dict, strategy_to_dict)
from hatcycle.errors import DomainError, SizeMismatch

from helpers import constant_zero, cycle_strategies

MINUS_SUM = LocalRule.from_function(lambda i, j: -i - j)


def test_make_strategy_accepts_algebraic_rule():
    f = make_strategy(3, [MINUS_SUM] * 3)
    assert f.n == 3
    assert f.rule(-1) is f.rules[2]


def test_make_strategy_rejects_short_cycles_and_bad_lengths():
    with pytest.raises(DomainError):
        make_strategy(2, [MINUS_SUM] * 2)
    with pytest.raises(SizeMismatch):
        make_strategy(4, [MINUS_SUM] * 3)


def test_local_rule_validates_entries():
    with pytest.raises(DomainError):
        LocalRule(((0, 1, 3), (0, 0, 0), (0, 0, 0)))
    with pytest.raises(SizeMismatch):
        LocalRule(((0, 1), (0, 0), (0, 0)))


def test_rule_code_round_trip():
    for code in (0, 1, 4242, 3 ** 9 - 1):
        assert LocalRule.from_code(code).code == code


def test_guess_examples():
    assert guess(constant_zero(5), 7, 2, 1) == 0
    # 1-based entry f(1,1) = 2 is f(0,0) = 1 with 0-based colours
    assert guess(chi3_strategy(6), 2, 0, 0) == 1
    # algebraic C4, player A sees D on the left and B on the right: A = D + B
    assert guess(algebraic_c4(), 0, 1, 2) == 0
    assert guess(algebraic_c4(), -4, 1, 2) == 0


def test_correct_count_examples():
    assert correct_count(algebraic_c3(), (0, 0, 0)) == 1
    assert correct_count(constant_zero(6), (0,) * 6) == 6
    assert correct_count(constant_zero(6), (1,) * 6) == 0
    with pytest.raises(SizeMismatch):
        correct_count(constant_zero(4), (0, 0, 0))


def test_is_admissible_examples():
    f = constant_zero(5)
    assert is_admissible(f, PathSegment(3, (2, 0)))
    assert is_admissible(f, PathSegment(1, (1, 1, 1)))
    assert not is_admissible(f, PathSegment(1, (1, 0, 1)))
    with pytest.raises(DomainError):
        PathSegment(0, (1,))


@given(cycle_strategies(max_n=6))
def test_defeat_iff_doubled_path_admissible(f):
    for g in itertools.islice(itertools.product(range(3), repeat=f.n), 0, None, 7):
        doubled = PathSegment(0, g + g)
        # the doubled path checks every player once inside positions 1..n
        inner = PathSegment(f.n - 1, (g[-1],) + g + (g[0],))
        assert (correct_count(f, g) == 0) == is_admissible(f, inner)
        if correct_count(f, g) == 0:
            assert is_admissible(f, doubled)


@pytest.mark.parametrize("n", [3, 4, 5, 7])
def test_total_correct_guesses(n):
    import random
    from helpers import random_strategy
    f = random_strategy(random.Random(n), n)
    total = sum(correct_count(f, g) for g in itertools.product(range(3), repeat=n))
    assert total == n * 3 ** (n - 1)


@given(cycle_strategies())
def test_guess_deterministic(f):
    assert all(guess(f, k, a, c) == guess(f, k + f.n, a, c)
               for k in range(f.n) for a in range(3) for c in range(3))


def test_json_round_trip():
    f = chi3_strategy(5)
    data = strategy_to_dict(f)
    assert data["n"] == 5 and data["rules"][1] == [[1, 0, 0], [1, 2, 1], [2, 2, 0]]
    assert strategy_from_dict(data) == f
    assert assignment_from_dict({"colours": [0, 2, 1]}) == Assignment((0, 2, 1))
    with pytest.raises(DomainError):
        strategy_from_dict({"rules": []})
