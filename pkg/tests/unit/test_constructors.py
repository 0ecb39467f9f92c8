import json

import pytest

from ideallab.classify import classify_spectrum
from ideallab.constructors import (
    chain_mod, corpus, direct_product, parse_lattice, pentagon_control,
    product_primes, relabel_isomorphic, serialize_lattice, zn_ideal_lattice
)
from ideallab.core import validate
from ideallab.errors import AxiomViolation, LatticeInputError
from ideallab.localize import localize_at_prime
from ideallab.verify import check_modularity


def test_zn_labels():
    lattice = zn_ideal_lattice(12)

    assert lattice.names == ('(1)', '(2)', '(3)', '(4)', '(6)', '(12)')
    assert lattice.label(lattice.top) == '(1)'
    assert lattice.label(lattice.bottom) == '(12)'
    assert lattice.name == 'zn(12)'


def test_zn_tables():
    lattice = zn_ideal_lattice(12)
    index = lattice.index

    assert lattice.multiply(index('(2)'), index('(6)')) == index('(12)')
    assert lattice.multiply(index('(2)'), index('(2)')) == index('(4)')
    assert lattice.join(index('(4)'), index('(6)')) == index('(2)')
    assert lattice.meet(index('(4)'), index('(6)')) == index('(12)')
    assert lattice.le(index('(4)'), index('(2)'))
    assert not lattice.le(index('(2)'), index('(4)'))


def test_zn_needs_positive_modulus():
    with pytest.raises(LatticeInputError):
        zn_ideal_lattice(0)


def test_chain():
    lattice = chain_mod(3)

    assert lattice.names == ('1', 'x', 'x^2', 'x^3')
    assert lattice.multiply(1, 2) == 3
    assert lattice.multiply(2, 2) == 3
    assert chain_mod(0).names == ('1',)


def test_direct_product():
    lattice = direct_product(zn_ideal_lattice(2), chain_mod(1))

    assert lattice.names == ('((1), 1)', '((1), x)', '((2), 1)', '((2), x)')
    assert lattice.top == 0
    assert lattice.bottom == 3
    assert lattice.multiply(1, 2) == 3


def test_chinese_remainder():
    # d -> (gcd(d, 2), gcd(d, 3))
    assert relabel_isomorphic(
        zn_ideal_lattice(6),
        direct_product(zn_ideal_lattice(2), zn_ideal_lattice(3)),
        [0, 2, 1, 3],
    )
    assert not relabel_isomorphic(
        zn_ideal_lattice(6),
        direct_product(zn_ideal_lattice(2), zn_ideal_lattice(3)),
        [3, 2, 1, 0],
    )


def test_chinese_remainder_for_36():
    product = direct_product(zn_ideal_lattice(4), zn_ideal_lattice(9))
    target = zn_ideal_lattice(36)

    # (d, e) -> de
    relabel = [target.index(f'({d * e})')
               for d in (1, 2, 4) for e in (1, 3, 9)]

    assert relabel_isomorphic(product, target, relabel)


def test_product_primes():
    first, second = zn_ideal_lattice(12), chain_mod(2)
    lattice = direct_product(first, second)
    primes = classify_spectrum(lattice).primes

    assert primes == product_primes(first, second)
    assert lattice.labels(sorted(primes)) == \
        ('((1), x)', '((2), 1)', '((3), 1)')


def test_product_with_the_pentagon_is_not_modular():
    lattice = direct_product(pentagon_control(), zn_ideal_lattice(2))
    witness = check_modularity(lattice)

    assert validate(lattice).passed
    assert witness is not None
    assert witness.replay(lattice)


def test_pentagon():
    lattice = pentagon_control()

    assert lattice.names == ('0', 'a', 'b', 'c', "1'", '1')
    assert lattice.join(1, 2) == 4
    assert lattice.meet(3, 2) == 0
    assert lattice.multiply(4, 4) == 0
    assert lattice.multiply(5, 3) == 3


def test_corpus_order():
    names = [lattice.name for lattice in corpus(zn_max=4)]

    assert names[:3] == ['zn(2)', 'zn(3)', 'zn(4)']
    assert names[3:16] == [f'chain_mod({k})' for k in range(13)]
    assert names[16] == 'zn(2)xchain_mod(0)'
    assert names[-1] == 'pentagon_control'
    assert len(names) == 3 + 13 + 29 * 5 + 1


def test_round_trip():
    for lattice in (zn_ideal_lattice(12), chain_mod(3), pentagon_control(),
                    localize_at_prime(zn_ideal_lattice(12), 1).localized):
        text = serialize_lattice(lattice)
        parsed = parse_lattice(text)

        assert serialize_lattice(parsed) == text
        assert parsed.same_tables(lattice)
        assert parsed.name == lattice.name


def test_serialized_form():
    document = json.loads(serialize_lattice(chain_mod(1)))

    assert document == {
        'name': 'chain_mod(1)',
        'elements': ['1', 'x'],
        'leq': [[1, 0]],
        'mul': [[0, 1], [1, 1]],
    }


def test_provenance_is_serialized():
    local = localize_at_prime(zn_ideal_lattice(12), 1).localized
    document = json.loads(serialize_lattice(local))

    assert document['provenance'] == {'parent': 'zn(12)',
                                      'S': ['(1)', '(3)']}


@pytest.mark.slow
def test_round_trip_on_corpus():
    for lattice in corpus():
        text = serialize_lattice(lattice)
        assert serialize_lattice(parse_lattice(text)) == text


def test_parse_errors():
    with pytest.raises(LatticeInputError):
        parse_lattice('{not json')
    with pytest.raises(LatticeInputError):
        parse_lattice('[]')
    with pytest.raises(LatticeInputError):
        parse_lattice(json.dumps({'name': 'x', 'elements': ['a'],
                                  'leq': []}))
    with pytest.raises(LatticeInputError):
        parse_lattice(json.dumps({'name': 'x', 'elements': ['0', '1'],
                                  'leq': [[0, 2]], 'mul': [[0, 0], [0, 1]]}))
    with pytest.raises(LatticeInputError):
        parse_lattice(json.dumps({'name': 'x', 'elements': ['0', '1'],
                                  'leq': [[0, 1]], 'mul': [[0, 0]]}))


def test_parse_rejects_non_lattice_orders():
    with pytest.raises(LatticeInputError):
        parse_lattice(json.dumps({'name': 'x', 'elements': ['a', 'b'],
                                  'leq': [], 'mul': [[0, 0], [0, 1]]}))


def test_parse_checks_axioms():
    text = json.dumps({'name': 'x', 'elements': ['0', '1'],
                       'leq': [[0, 1]], 'mul': [[0, 0], [0, 0]]})

    with pytest.raises(AxiomViolation) as info:
        parse_lattice(text)
    assert 'identity' in info.value.report.axioms()

    assert parse_lattice(text, check=False).size == 2
