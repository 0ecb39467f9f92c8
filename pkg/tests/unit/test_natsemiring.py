import logging

import pytest
from hypothesis import assume, given, settings, strategies as st

from ideallab.errors import LatticeInputError
from ideallab.natsemiring import (
    NatIdeal, NatModularityWitness, bounded, nat_contains,
    nat_delta_witness_search, nat_equals, nat_includes, nat_is_principal,
    nat_join, nat_meet, nat_minimal_generators, nat_modularity_search,
    nat_modularity_witness, nat_product, nat_refute_cancellation
)

generators = st.lists(st.integers(min_value=1, max_value=50),
                      min_size=1, max_size=4)


def ideal(*gens):
    return NatIdeal.of(gens)


def test_contains():
    q = ideal(4, 9)

    assert nat_contains(q, 36)
    assert nat_contains(q, 13)
    assert nat_contains(q, 0)
    assert not nat_contains(q, 5)
    assert not nat_contains(q, 14)
    assert not nat_contains(q, 23)
    assert all(nat_contains(q, n) for n in range(24, 100))


def test_minimal_generators():
    assert nat_minimal_generators({4, 8, 9}) == (4, 9)
    assert nat_minimal_generators({5}) == (5,)
    assert nat_minimal_generators({0, 6, 4, 10, 4}) == (4, 6)
    assert nat_minimal_generators(set()) == ()


def test_negative_generators():
    with pytest.raises(LatticeInputError):
        nat_minimal_generators([3, -1])


def test_principal():
    assert nat_is_principal(ideal(5))
    assert nat_is_principal(ideal(0))
    assert nat_is_principal(ideal(3, 6, 9))
    assert not nat_is_principal(ideal(4, 6))


def test_parse_and_print():
    assert NatIdeal.parse('4,9') == ideal(4, 9)
    assert NatIdeal.parse('9, 4, 8') == ideal(4, 9)
    assert NatIdeal.parse('(16,81)') == ideal(16, 81)
    assert str(ideal(9, 4)) == '(4,9)'
    assert str(ideal(0)) == '(0)'

    with pytest.raises(LatticeInputError):
        NatIdeal.parse('4;9')


def test_generators_are_bounded():
    assert NatIdeal.parse('4,9', limit=9) == ideal(4, 9)
    assert bounded([2, 40], 40) == (2, 40)

    with pytest.raises(LatticeInputError, match='limited to 100'):
        NatIdeal.parse('4,100003', limit=100)
    with pytest.raises(LatticeInputError, match='got 100000'):
        bounded((2, 100000), 40)


def test_normal_form():
    q = ideal(4, 9)

    assert q.gcd == 1
    assert q.conductor == 24
    assert q.sporadics == (0, 4, 8, 9, 12, 13, 16, 17, 18, 20, 21, 22)

    q = ideal(4, 6)
    assert (q.gcd, q.conductor, q.sporadics) == (2, 4, (0,))
    assert not q.contains(2)
    assert q.contains(8)

    assert (ideal(7).gcd, ideal(7).conductor) == (7, 0)
    assert ideal(0).gcd == 0
    assert not ideal(0).contains(3)


@settings(max_examples=60, deadline=None)
@given(gens=generators)
def test_normal_form_agrees_with_membership(gens):
    assert NatIdeal.of(gens).consistent()


def test_product():
    assert nat_product(ideal(4, 9), ideal(4, 9)) == ideal(16, 36, 81)
    assert nat_product(ideal(3), ideal(5)) == ideal(15)
    assert nat_product(ideal(3), ideal(0)) == ideal(0)


def test_join():
    assert nat_join(ideal(4), ideal(9)) == ideal(4, 9)
    assert nat_join(ideal(4), ideal(8)) == ideal(4)


def test_meet():
    assert nat_meet(ideal(4), ideal(9)) == ideal(36)
    assert nat_meet(ideal(4, 9), ideal(0)) == ideal(0)
    assert nat_meet(ideal(3, 4), ideal(5)) == ideal(10, 15)


@settings(max_examples=60, deadline=None)
@given(first=generators, second=generators)
def test_meet_is_intersection(first, second):
    a, b = NatIdeal.of(first), NatIdeal.of(second)
    meet = nat_meet(a, b)

    for n in range(0, 300):
        assert nat_contains(meet, n) == \
            (nat_contains(a, n) and nat_contains(b, n))


@settings(max_examples=40, deadline=None)
@given(first=generators, second=generators, third=generators)
def test_operations_are_monotone(first, second, third):
    a, b, c = (NatIdeal.of(g) for g in (first, second, third))
    assume(nat_includes(a, b))

    assert nat_includes(nat_join(a, c), nat_join(b, c))
    assert nat_includes(nat_meet(a, c), nat_meet(b, c))
    assert nat_includes(nat_product(a, c), nat_product(b, c))


def test_equals():
    q = ideal(4, 9)
    cube = nat_product(nat_product(q, q), q)

    assert nat_equals(cube, nat_product(q, ideal(16, 81)))
    assert cube == ideal(64, 144, 324, 729)
    assert not nat_equals(q, ideal(4))
    assert nat_equals(q, q)


def test_includes():
    assert nat_includes(ideal(4, 9), ideal(36, 13))
    assert not nat_includes(ideal(4, 9), ideal(36, 14))
    assert nat_includes(ideal(5), NatIdeal(()))
    assert not nat_includes(NatIdeal(()), ideal(5))


def test_refutation():
    refutation = nat_refute_cancellation(ideal(4, 9))

    assert (refutation.a, refutation.b, refutation.rest) == (4, 9, ())
    assert refutation.reduced == ideal(16, 81)
    assert refutation.witness == 36


def test_refutation_with_common_divisor():
    refutation = nat_refute_cancellation(ideal(4, 6))

    assert refutation.reduced == ideal(16, 36)
    assert refutation.witness == 24
    assert nat_contains(nat_product(ideal(4, 6), ideal(4, 6)), 24)


def test_refutation_with_tail():
    refutation = nat_refute_cancellation(ideal(3, 5, 7))

    assert refutation.rest == (7,)
    assert refutation.reduced == ideal(9, 25, 21, 35, 49)
    assert refutation.witness == 15


def test_principal_ideals_are_not_refuted():
    assert nat_refute_cancellation(ideal(5)) is None
    assert nat_refute_cancellation(ideal(0)) is None


@settings(max_examples=100, deadline=None)
@given(gens=generators)
def test_non_principal_ideals_are_refuted(gens):
    q = NatIdeal.of(gens)
    assume(not nat_is_principal(q))

    refutation = nat_refute_cancellation(q)
    assert refutation.witness == q.min_gens[0] * q.min_gens[1]


@settings(max_examples=100, deadline=None)
@given(d=st.integers(min_value=1, max_value=12),
       first=generators, second=generators)
def test_principal_ideals_cancel(d, first, second):
    a, b = NatIdeal.of(first), NatIdeal.of(second)
    scaled = ideal(d)

    assert nat_equals(nat_product(scaled, a), nat_product(scaled, b)) == \
        nat_equals(a, b)


def test_delta_search():
    assert nat_delta_witness_search(2, 3) is None
    assert nat_delta_witness_search(1, 2) == 1
    for x in range(1, 7):
        assert nat_delta_witness_search(x, x) == x * x


def test_delta_search_needs_positive_integers():
    with pytest.raises(LatticeInputError):
        nat_delta_witness_search(0, 3)


def test_modularity_witness():
    assert nat_modularity_witness(1) is None

    witness = nat_modularity_witness(12)
    assert witness is not None
    assert witness.replay()


def test_known_modularity_violation_replays():
    assert NatModularityWitness(ideal(3, 4), ideal(3), ideal(5)).replay()


def test_modularity_search_escalates(caplog):
    with caplog.at_level(logging.INFO, logger='ideallab.natsemiring'):
        witness, bound = nat_modularity_search(1, 6)

    assert 'escalating the bound to 2' in caplog.text
    assert bound <= 6
    assert witness is None or witness.replay()


def test_modularity_search_stops_at_ceiling():
    assert nat_modularity_search(1, 1) == (None, 1)
