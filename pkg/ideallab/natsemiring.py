"""Finitely generated ideals of the semiring N.

An ideal of N contains 0, is closed under addition and absorbs
multiplication by N, so the ideal generated by g_1, ..., g_k is the set of
nonnegative combinations of the g_i. Membership is decided by a coin-problem
dynamic program; meets go through the eventual-tail normal form (gcd d,
conductor N and the sporadic members below N).
"""

import logging
from dataclasses import dataclass
from functools import cached_property, lru_cache, reduce
from itertools import combinations, combinations_with_replacement
from math import gcd, lcm
from typing import Iterable, List, Optional, Tuple

import numpy as np

from .errors import InternalContradiction, LatticeInputError

logger = logging.getLogger(__name__)


def add_generator(reach: np.ndarray, g: int) -> np.ndarray:
    """Extends a membership table by every multiple of g added to a member."""

    size = len(reach)
    if g >= size:
        return reach

    # Row r holds n = r*g .. r*g + g - 1, so each column is a residue class
    # mod g and a running OR along it adds copies of g.
    rows = -(-size // g)
    padded = np.zeros(rows * g, dtype=bool)
    padded[:size] = reach

    return np.logical_or.accumulate(padded.reshape(rows, g),
                                    axis=0).ravel()[:size]


@lru_cache(maxsize=4096)
def reachable(gens: Tuple[int, ...], limit: int) -> np.ndarray:
    """reach[n] is True iff n <= limit is a nonnegative combination of gens."""

    reach = np.zeros(limit + 1, dtype=bool)
    reach[0] = True

    for g in gens:
        reach = add_generator(reach, g)

    reach.setflags(write=False)
    return reach


def bounded(gens: Iterable[int], limit: int) -> Tuple[int, ...]:
    """Rejects generators above the limit before any table is allocated."""

    gens = tuple(gens)
    largest = max(gens, default=0)
    if largest > limit:
        raise LatticeInputError(
            f'Generators are limited to {limit}, got {largest}.')

    return gens


def nat_minimal_generators(gens: Iterable[int]) -> Tuple[int, ...]:
    """Drops every generator that is a combination of the others.

    Generators are scanned in increasing order, so only smaller kept ones
    can express the next.
    """

    gens = sorted(set(gens))
    if gens and gens[0] < 0:
        raise LatticeInputError(f'Generators must be nonnegative: {gens[0]}.')

    kept: List[int] = []
    reach = np.zeros((gens[-1] if gens else 0) + 1, dtype=bool)
    reach[0] = True

    for g in gens:
        if not reach[g]:
            kept.append(g)
            reach = add_generator(reach, g)

    return tuple(kept)


@dataclass(frozen=True)
class NatIdeal:
    """An ideal by its minimal generators; no generators is the zero ideal."""

    min_gens: Tuple[int, ...]

    @classmethod
    def of(cls, gens: Iterable[int]) -> 'NatIdeal':
        return cls(nat_minimal_generators(int(g) for g in gens))

    @classmethod
    def parse(cls, text: str, limit: Optional[int] = None) -> 'NatIdeal':
        """Reads a comma-separated generator list such as "4,9", none above
        the limit when one is given."""

        try:
            gens = [int(part) for part in text.strip('() ').split(',')]
        except ValueError:
            raise LatticeInputError(
                f'Expected comma-separated integers, got {text!r}.'
            ) from None

        if limit is not None:
            bounded(gens, limit)

        return cls.of(gens)

    def __str__(self):
        return '({})'.format(','.join(map(str, self.min_gens or (0,))))

    @cached_property
    def gcd(self) -> int:
        return reduce(gcd, self.min_gens, 0)

    @cached_property
    def conductor(self) -> int:
        """Least N such that every multiple of the gcd from N on is a
        member."""

        if len(self.min_gens) <= 1:
            return 0

        d = self.gcd
        scaled = tuple(g // d for g in self.min_gens)
        # Schur's bound keeps the largest gap below a_1 * a_k.
        reach = reachable(scaled, scaled[0] * scaled[-1])
        gaps = np.flatnonzero(~reach)

        return (int(gaps[-1]) + 1) * d if len(gaps) else 0

    @cached_property
    def sporadics(self) -> Tuple[int, ...]:
        """Members below the conductor."""

        if not self.conductor:
            return ()

        reach = reachable(self.min_gens, self.conductor - 1)
        return tuple(int(n) for n in np.flatnonzero(reach))

    def contains(self, n: int) -> bool:
        """Membership read off the normal form."""

        if n == 0:
            return True
        if not self.gcd or n % self.gcd:
            return False

        return n >= self.conductor or n in self.sporadics

    def consistent(self) -> bool:
        """Checks the normal form against the dynamic program up to twice
        the conductor."""

        limit = 2 * max(self.conductor, max(self.min_gens, default=0))
        reach = reachable(self.min_gens, limit)

        return all(reach[n] == self.contains(n) for n in range(limit + 1))

    @property
    def is_zero(self) -> bool:
        return not self.min_gens


ZERO = NatIdeal(())


def nat_contains(ideal: NatIdeal, n: int) -> bool:
    if n < 0:
        return False
    return bool(reachable(ideal.min_gens, n)[n])


def nat_includes(ideal: NatIdeal, other: NatIdeal) -> bool:
    """Decides other <= ideal, i.e. every generator of other is a member."""

    if other.is_zero:
        return True

    reach = reachable(ideal.min_gens, other.min_gens[-1])
    return bool(reach[list(other.min_gens)].all())


def nat_equals(ideal: NatIdeal, other: NatIdeal) -> bool:
    return nat_includes(ideal, other) and nat_includes(other, ideal)


def nat_is_principal(ideal: NatIdeal) -> bool:
    return len(ideal.min_gens) <= 1


def nat_product(ideal: NatIdeal, other: NatIdeal) -> NatIdeal:
    return NatIdeal.of(g * h for g in ideal.min_gens for h in other.min_gens)


def nat_join(ideal: NatIdeal, other: NatIdeal) -> NatIdeal:
    return NatIdeal.of(ideal.min_gens + other.min_gens)


@lru_cache(maxsize=4096)
def nat_meet(ideal: NatIdeal, other: NatIdeal) -> NatIdeal:
    """Intersection through the normal forms.

    Common members from the combined tail on are exactly the multiples of
    D = lcm of the gcds; those in [tail, 2 tail] generate all of them.
    """

    if ideal.is_zero or other.is_zero:
        return ZERO

    step = lcm(ideal.gcd, other.gcd)
    tail = -(-max(ideal.conductor, other.conductor) // step) * step or step

    below = (n for n in range(step, tail, step)
             if ideal.contains(n) and other.contains(n))

    return NatIdeal.of([*below, *range(tail, 2 * tail + 1, step)])


@dataclass(frozen=True)
class CancellationRefutation:
    """Q = (a, b, H) is not cancellation: Q^3 = QJ although ab lies in Q^2
    and not in J = (a^2, b^2, aH, bH, H^2)."""

    ideal: NatIdeal
    a: int
    b: int
    rest: Tuple[int, ...]
    reduced: NatIdeal
    witness: int


def nat_refute_cancellation(
        ideal: NatIdeal) -> Optional[CancellationRefutation]:
    """Builds and re-verifies the refutation for a non-principal ideal."""

    if nat_is_principal(ideal):
        return None

    a, b, *rest = ideal.min_gens
    reduced = NatIdeal.of(
        [a * a, b * b] +
        [a * h for h in rest] +
        [b * h for h in rest] +
        [g * h for g, h in combinations_with_replacement(rest, 2)]
    )
    witness = a * b

    square = nat_product(ideal, ideal)
    cube = nat_product(square, ideal)

    if not nat_contains(square, witness):
        raise InternalContradiction(f'{witness} is not in {square}.')
    if nat_contains(reduced, witness):
        raise InternalContradiction(f'{witness} lies in {reduced}.')
    if not nat_equals(cube, nat_product(ideal, reduced)):
        raise InternalContradiction(
            f'{ideal}^3 differs from {ideal}{reduced}.')

    return CancellationRefutation(ideal=ideal,
                                  a=a,
                                  b=b,
                                  rest=tuple(rest),
                                  reduced=reduced,
                                  witness=witness)


def nat_delta_witness_search(x: int, y: int) -> Optional[int]:
    """Returns the least c with (x^2, y^2) = (x^2, c) = (c, y^2).

    Any such c is at most max(x^2, y^2): a larger c cannot take part in
    writing y^2 from x^2 and c, nor x^2 from c and y^2.
    """

    if x < 1 or y < 1:
        raise LatticeInputError(f'delta needs positive integers: {x}, {y}.')

    xx, yy = x * x, y * y
    target = NatIdeal.of((xx, yy))

    for c in range(1, max(xx, yy) + 1):
        if (nat_equals(NatIdeal.of((xx, c)), target) and
                nat_equals(NatIdeal.of((c, yy)), target)):
            return c

    return None


@dataclass(frozen=True)
class NatModularityWitness:
    """B <= A with A /\\ (B \\/ C) != B \\/ (A /\\ C)."""

    a: NatIdeal
    b: NatIdeal
    c: NatIdeal

    def replay(self) -> bool:
        a, b, c = self.a, self.b, self.c
        return nat_includes(a, b) and not nat_equals(
            nat_meet(a, nat_join(b, c)), nat_join(b, nat_meet(a, c))
        )


def small_ideals(bound: int) -> List[NatIdeal]:
    """Distinct ideals with at most two generators, none above the bound,
    in lexicographic order of their minimal generators."""

    gens = [()] + [(g,) for g in range(1, bound + 1)]
    gens += combinations(range(1, bound + 1), 2)

    return sorted({NatIdeal.of(g) for g in gens}, key=lambda i: i.min_gens)


def nat_modularity_witness(bound: int) -> Optional[NatModularityWitness]:
    """First triple (A, B, C) of small ideals breaking modularity."""

    if bound < 1:
        raise LatticeInputError(f'bound must be positive, got {bound}.')

    ideals = small_ideals(bound)

    for a in ideals:
        for b in ideals:
            if not nat_includes(a, b):
                continue
            for c in ideals:
                # A /\ (B \/ C) always contains B \/ (A /\ C).
                lhs = nat_meet(a, nat_join(b, c))
                rhs = nat_join(b, nat_meet(a, c))
                if nat_includes(rhs, lhs):
                    continue

                witness = NatModularityWitness(a, b, c)
                if not witness.replay():
                    raise InternalContradiction(
                        f'Modularity witness {a}, {b}, {c} does not replay.'
                    )
                return witness

    return None


def nat_modularity_search(
        bound: int,
        ceiling: int) -> Tuple[Optional[NatModularityWitness], int]:
    """Doubles the bound until a witness turns up or the ceiling is passed.

    Returns the witness (if any) with the bound it was found at.
    """

    while True:
        witness = nat_modularity_witness(bound)
        if witness is not None or bound >= ceiling:
            return witness, bound

        escalated = min(2 * bound, ceiling)
        logger.info('No modularity witness among ideals with generators up '
                    'to %d; escalating the bound to %d.', bound, escalated)
        bound = escalated
