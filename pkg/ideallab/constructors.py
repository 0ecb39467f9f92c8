import json
from functools import lru_cache
from math import gcd, lcm
from typing import Any, FrozenSet, Iterator, Sequence

import numpy as np

from . import schema
from .classify import classify_spectrum
from .core import FiniteMultiplicativeLattice, validate
from .errors import AxiomViolation, InternalContradiction, LatticeInputError


@lru_cache(maxsize=512)
def zn_ideal_lattice(n: int) -> FiniteMultiplicativeLattice:
    """Returns the ideal lattice of the ring Z_n.

    The divisor d stands for the ideal dZ_n, so d <= e iff e divides d,
    joins are gcds, meets are lcms and dZ_n * eZ_n = gcd(de, n)Z_n.
    Divisors are indexed in ascending order.
    """

    if n < 1:
        raise LatticeInputError(f'zn needs a positive modulus, got {n}.')

    divisors = [d for d in range(1, n + 1) if n % d == 0]
    index = {d: i for i, d in enumerate(divisors)}

    def table(operation):
        return [[index[operation(d, e)] for e in divisors] for d in divisors]

    return FiniteMultiplicativeLattice(
        names=tuple(f'({d})' for d in divisors),
        leq=[[d % e == 0 for e in divisors] for d in divisors],
        join_table=table(gcd),
        meet_table=table(lcm),
        mul_table=table(lambda d, e: gcd(d * e, n)),
        bottom=index[n],
        top=index[1],
        name=f'zn({n})',
    )


@lru_cache(maxsize=512)
def chain_mod(k: int) -> FiniteMultiplicativeLattice:
    """Returns the chain 1 > x > x^2 > ... > x^k = 0 with
    x^i x^j = x^min(i + j, k), the ideal lattice of Z_(p^k).

    The exponent is the index.
    """

    if k < 0:
        raise LatticeInputError(f'chain_mod needs k >= 0, got {k}.')

    exponents = range(k + 1)
    names = ['1', 'x'] + [f'x^{i}' for i in range(2, k + 1)]

    return FiniteMultiplicativeLattice(
        names=tuple(names[:k + 1]),
        leq=[[i >= j for j in exponents] for i in exponents],
        join_table=[[min(i, j) for j in exponents] for i in exponents],
        meet_table=[[max(i, j) for j in exponents] for i in exponents],
        mul_table=[[min(i + j, k) for j in exponents] for i in exponents],
        bottom=k,
        top=0,
        name=f'chain_mod({k})',
    )


def direct_product(first: FiniteMultiplicativeLattice,
                   second: FiniteMultiplicativeLattice
                   ) -> FiniteMultiplicativeLattice:
    """Componentwise product; the pair (i, j) has index i * |second| + j."""

    width = second.size
    left, right = np.divmod(np.arange(first.size * width), width)

    def table(ours, theirs):
        return (ours[left[:, None], left[None, :]] * width +
                theirs[right[:, None], right[None, :]])

    product = FiniteMultiplicativeLattice(
        names=tuple(f'({a}, {b})' for a in first.names for b in second.names),
        leq=(first.leq[left[:, None], left[None, :]] &
             second.leq[right[:, None], right[None, :]]),
        join_table=table(first.join_table, second.join_table),
        meet_table=table(first.meet_table, second.meet_table),
        mul_table=table(first.mul_table, second.mul_table),
        bottom=first.bottom * width + second.bottom,
        top=first.top * width + second.top,
        name=f'{first.name}x{second.name}',
    )

    primes = product_primes(first, second)
    if classify_spectrum(product).primes != primes:
        raise InternalContradiction(
            f'The primes of {product.name} are not the (p, 1) and (1, q).')

    return product


def product_primes(first: FiniteMultiplicativeLattice,
                   second: FiniteMultiplicativeLattice) -> FrozenSet[int]:
    """Indices of (p, top) and (top, q) for primes p and q of the factors."""

    width = second.size

    return frozenset(
        [p * width + second.top for p in classify_spectrum(first).primes] +
        [first.top * width + q for q in classify_spectrum(second).primes])


def pentagon_control() -> FiniteMultiplicativeLattice:
    """Returns the non-modular control lattice.

    The pentagon 0 < a < c < 1', 0 < b < 1' with a new top 1 adjoined above
    1'. Every product of two non-top elements is 0.
    """

    names = ('0', 'a', 'b', 'c', "1'", '1')
    covers = [(0, 1), (0, 2), (1, 3), (3, 4), (2, 4), (4, 5)]

    leq = np.eye(len(names), dtype=bool)
    for i, j in covers:
        leq[i, j] = True
    for k in range(len(names)):
        leq |= leq[:, [k]] & leq[[k], :]

    top = len(names) - 1
    mul = [[y if x == top else x if y == top else 0
            for y in range(len(names))]
           for x in range(len(names))]

    return FiniteMultiplicativeLattice.from_order(names, leq, mul,
                                                  name='pentagon_control')


def corpus(zn_max: int = 500) -> Iterator[FiniteMultiplicativeLattice]:
    """Yields the verification corpus in a fixed order."""

    for n in range(2, zn_max + 1):
        yield zn_ideal_lattice(n)

    for k in range(13):
        yield chain_mod(k)

    for n in range(2, 31):
        for k in range(5):
            yield direct_product(zn_ideal_lattice(n), chain_mod(k))

    yield pentagon_control()


def relabel_isomorphic(first: FiniteMultiplicativeLattice,
                       second: FiniteMultiplicativeLattice,
                       relabel: Sequence[int]) -> bool:
    """Checks that a bijection between the carriers preserves every table."""

    f = np.asarray(relabel, dtype=np.intp)

    if first.size != second.size or len(set(relabel)) != second.size:
        return False

    rows, cols = f[:, None], f[None, :]

    return (np.array_equal(first.leq, second.leq[rows, cols]) and
            np.array_equal(f[first.join_table],
                           second.join_table[rows, cols]) and
            np.array_equal(f[first.meet_table],
                           second.meet_table[rows, cols]) and
            np.array_equal(f[first.mul_table],
                           second.mul_table[rows, cols]))


def parse_lattice(text: str,
                  check: bool = True,
                  samples: int = 32,
                  seed: int = 0) -> FiniteMultiplicativeLattice:
    """Parses the lattice interchange format.

    Join and meet tables are derived from the order. With ``check`` set, a
    lattice failing validation raises ``AxiomViolation``.
    """

    try:
        payload = json.loads(text)
    except ValueError as ex:
        raise LatticeInputError(f'Malformed lattice text: {ex}') from None

    return lattice_from_document(payload, check, samples, seed)


def lattice_from_document(payload: Any,
                          check: bool = True,
                          samples: int = 32,
                          seed: int = 0) -> FiniteMultiplicativeLattice:
    """Builds a lattice from a decoded interchange document."""

    errors = schema.lattice.validate(payload)
    if errors:
        raise LatticeInputError(f'Invalid lattice document: {errors}')

    data = schema.lattice.load(payload)
    names = data['elements']
    n = len(names)

    leq = np.eye(n, dtype=bool)
    for i, j in data['leq']:
        if not (0 <= i < n and 0 <= j < n):
            raise LatticeInputError(f'leq pair [{i}, {j}] is out of range.')
        leq[i, j] = True

    mul = data['mul']
    if len(mul) != n or any(len(row) != n for row in mul):
        raise LatticeInputError(f'mul must be a {n}x{n} table.')

    lattice = FiniteMultiplicativeLattice.from_order(
        names, leq, mul,
        name=data['name'],
        provenance=data.get('provenance'),
    )

    if check:
        report = validate(lattice, samples=samples, seed=seed)
        if not report.passed:
            raise AxiomViolation(report)

    return lattice


def serialize_lattice(lattice: FiniteMultiplicativeLattice) -> str:
    """Prints the canonical interchange form: strict order pairs in index
    order, keys sorted."""

    payload = {
        'name': lattice.name,
        'elements': list(lattice.names),
        'leq': [[int(i), int(j)] for i, j in np.argwhere(lattice.leq)
                if i != j],
        'mul': lattice.mul_table.tolist(),
    }
    if lattice.provenance:
        payload['provenance'] = lattice.provenance

    return json.dumps(schema.lattice.dump(payload), sort_keys=True) + '\n'
