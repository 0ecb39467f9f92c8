import pytest

from ideallab.classify import (
    cancellation_elements, classify_spectrum, is_cancellation, is_prime,
    is_principal, is_regular, principal_elements, principal_profile,
    profile_all
)
from ideallab.constructors import (
    chain_mod, direct_product, pentagon_control, zn_ideal_lattice
)
from ideallab.errors import PredicateUndefined


def test_zn_elements_are_principal():
    lattice = zn_ideal_lattice(12)

    assert principal_elements(lattice) == list(lattice.elements)
    assert principal_profile(lattice, lattice.index('(6)')) == (True, True)


def test_pentagon_principals():
    lattice = pentagon_control()

    assert lattice.labels(principal_elements(lattice)) == ('0', 'a', 'b', '1')
    assert not is_principal(lattice, lattice.index('c'))
    assert not is_principal(lattice, lattice.index("1'"))


def test_zn_spectrum():
    lattice = zn_ideal_lattice(12)
    spectrum = classify_spectrum(lattice)

    assert sorted(lattice.labels(spectrum.primes)) == ['(2)', '(3)']
    assert spectrum.maximals == spectrum.primes
    assert spectrum.maximal_above[lattice.index('(12)')] == \
        lattice.index('(2)')
    assert spectrum.maximal_above[lattice.index('(3)')] == \
        lattice.index('(3)')
    assert lattice.top not in spectrum.maximal_above


def test_top_is_never_prime():
    for lattice in (zn_ideal_lattice(7), chain_mod(0), pentagon_control()):
        assert not is_prime(lattice, lattice.top)


def test_pentagon_spectrum():
    lattice = pentagon_control()
    spectrum = classify_spectrum(lattice)

    assert lattice.labels(spectrum.primes) == ("1'",)
    assert lattice.labels(spectrum.maximals) == ("1'",)


def test_is_regular():
    lattice = zn_ideal_lattice(12)

    assert is_regular(lattice, lattice.top)
    assert not is_regular(lattice, lattice.index('(2)'))
    assert not is_regular(lattice, lattice.bottom)


def test_regularity_is_undefined_off_principals():
    lattice = pentagon_control()

    with pytest.raises(PredicateUndefined):
        is_regular(lattice, lattice.index('c'))


def test_cancellation_witnesses():
    lattice = zn_ideal_lattice(12)

    def witness(label):
        cancels, pair = is_cancellation(lattice, lattice.index(label))
        assert not cancels
        return lattice.labels(pair)

    assert is_cancellation(lattice, lattice.top) == (True, None)
    assert witness('(2)') == ('(2)', '(4)')
    assert witness('(3)') == ('(1)', '(3)')
    assert witness('(4)') == ('(1)', '(2)')
    assert witness('(12)') == ('(1)', '(2)')


def test_only_top_cancels_on_finite_lattices():
    lattices = [zn_ideal_lattice(n) for n in range(2, 40)]
    lattices += [chain_mod(k) for k in range(6)]
    lattices += [direct_product(zn_ideal_lattice(6), chain_mod(2)),
                 pentagon_control()]

    for lattice in lattices:
        assert cancellation_elements(lattice) == [lattice.top]


def test_profiles():
    lattice = pentagon_control()
    profiles = profile_all(lattice)

    assert [p.element for p in profiles] == list(lattice.elements)

    c = profiles[lattice.index('c')]
    assert not c.is_principal
    assert c.is_regular is None

    top = profiles[lattice.top]
    assert top.is_principal and top.is_regular and top.is_cancellation
    assert profiles[lattice.index("1'")].is_maximal


def test_chain_profiles():
    lattice = chain_mod(3)

    for profile in profile_all(lattice):
        assert profile.is_principal
        assert profile.is_prime == (profile.element == 1)
        assert profile.is_regular == (profile.element == lattice.top)
