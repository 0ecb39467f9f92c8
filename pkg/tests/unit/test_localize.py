import gc
import weakref

import pytest

from ideallab.classify import classify_spectrum
from ideallab.constructors import (
    chain_mod, direct_product, pentagon_control, zn_ideal_lattice
)
from ideallab.core import validate
from ideallab.errors import LatticeInputError
from ideallab.localize import (
    MultSet, avoiding_primes, build_localization, closure, closures,
    distinguishing_maximal, equal_locally, local_principality,
    localize_at_prime, maximal_among, residual_transfer
)


def zn12():
    return zn_ideal_lattice(12)


def test_closure():
    lattice = zn12()
    multset = MultSet.of(lattice, [lattice.index('(3)')])

    def closed(label):
        return lattice.label(closure(lattice, lattice.index(label), multset))

    assert closed('(6)') == '(2)'
    assert closed('(12)') == '(4)'
    assert closed('(3)') == '(1)'


def test_trivial_multset_closure_is_identity():
    lattice = zn12()
    multset = MultSet.of(lattice, [])

    assert multset.members == {lattice.top}
    assert list(closures(lattice, multset)) == list(lattice.elements)


def test_build_localization():
    lattice = zn12()

    result = build_localization(lattice,
                                MultSet.of(lattice, [lattice.index('(3)')]))
    assert result.localized.names == ('(1)', '(2)', '(4)')
    assert result.localized.label(result.localized.bottom) == '(4)'
    assert result.localized.provenance == {'parent': 'zn(12)',
                                           'S': ['(1)', '(3)']}

    result = build_localization(
        lattice, MultSet.generated_by(lattice, [lattice.index('(2)')]))
    assert result.localized.names == ('(1)', '(3)')
    assert result.multset.sorted() == [0, 1, 3]


def test_local_bottom_is_closed_parent_bottom():
    lattice = zn12()
    result = localize_at_prime(lattice, lattice.index('(3)'))

    assert result.image(lattice.bottom) == lattice.index('(3)')
    assert result.localized.bottom == result.project[lattice.bottom]
    assert validate(result.localized).passed


def test_localize_at_prime():
    lattice = zn12()

    at_two = localize_at_prime(lattice, lattice.index('(2)'))
    assert at_two.localized.names == ('(1)', '(2)', '(4)')
    assert at_two.localized.label(at_two.localized.bottom) == '(4)'
    assert at_two.localized.name == 'zn(12)_(2)'

    at_three = localize_at_prime(lattice, lattice.index('(3)'))
    assert at_three.localized.names == ('(1)', '(3)')


def test_localization_at_the_only_maximal_is_trivial():
    for k in range(1, 6):
        lattice = chain_mod(k)
        result = localize_at_prime(lattice, 1)

        assert result.localized.same_tables(lattice)
        assert result.project == tuple(lattice.elements)


def test_localize_at_non_prime():
    lattice = zn12()

    with pytest.raises(LatticeInputError):
        localize_at_prime(lattice, lattice.index('(4)'))


def test_multset_must_be_closed():
    lattice = zn12()

    with pytest.raises(LatticeInputError):
        MultSet.of(lattice, [lattice.index('(2)')])


def test_equal_locally():
    lattice = zn12()
    index = lattice.index

    assert equal_locally(lattice, index('(6)'), index('(6)'))
    assert not equal_locally(lattice, index('(2)'), index('(4)'))
    assert distinguishing_maximal(lattice, index('(2)'),
                                  index('(4)')) == index('(2)')
    assert distinguishing_maximal(lattice, index('(3)'),
                                  index('(12)')) == index('(2)')


def test_local_global_equality():
    for n in (12, 30, 36, 60):
        lattice = zn_ideal_lattice(n)
        for a in lattice.elements:
            for b in lattice.elements:
                assert equal_locally(lattice, a, b) == (a == b)


def test_transfer_properties():
    lattices = [zn_ideal_lattice(n) for n in range(2, 50)]
    lattices += [direct_product(zn_ideal_lattice(6), chain_mod(3)),
                 pentagon_control()]

    for lattice in lattices:
        assert local_principality(lattice) is None

        for p in classify_spectrum(lattice).primes:
            assert residual_transfer(lattice,
                                     localize_at_prime(lattice, p)) is None


def test_spectrum_of_localization():
    lattice = zn_ideal_lattice(60)

    for p in sorted(classify_spectrum(lattice).primes):
        result = localize_at_prime(lattice, p)
        avoiding = maximal_among(lattice,
                                 avoiding_primes(lattice, result.multset))
        embedded = sorted(result.embed[m] for m in
                          classify_spectrum(result.localized).maximals)

        assert avoiding == embedded == [p]


def test_localizations_are_kept_on_the_lattice():
    lattice = direct_product(zn_ideal_lattice(12), chain_mod(2))
    p = lattice.index('((2), 1)')

    local = localize_at_prime(lattice, p)
    assert localize_at_prime(lattice, p) is local
    assert lattice.localizations == {p: local}

    ref = weakref.ref(lattice)
    del lattice, local
    gc.collect()

    assert ref() is None
