from dataclasses import dataclass
from typing import Dict, FrozenSet, List, Optional, Tuple

import numpy as np

from .core import FiniteMultiplicativeLattice
from .errors import PredicateUndefined


@dataclass(frozen=True)
class ElementProfile:
    element: int
    is_meet_principal: bool
    is_join_principal: bool
    is_prime: bool
    is_maximal: bool
    # None when the element is not principal; regularity is undefined there.
    is_regular: Optional[bool]
    is_cancellation: bool
    cancellation_witness: Optional[Tuple[int, int]] = None

    @property
    def is_principal(self) -> bool:
        return self.is_meet_principal and self.is_join_principal


@dataclass(frozen=True)
class Spectrum:
    primes: FrozenSet[int]
    maximals: FrozenSet[int]
    maximal_above: Dict[int, int]


def principal_profile(lattice: FiniteMultiplicativeLattice,
                      x: int) -> Tuple[bool, bool]:
    """Decides whether x is meet principal and join principal.

    Meet principal: a /\\ bx = ((a : x) /\\ b)x for all a, b.
    Join principal: a \\/ (b : x) = ((ax \\/ b) : x) for all a, b.
    """

    join, meet = lattice.join_table, lattice.meet_table
    mul, res = lattice.mul_table, lattice.residual_table

    i = np.arange(lattice.size)
    a, b = i[:, None], i[None, :]

    meet_principal = np.array_equal(meet[a, mul[b, x]],
                                    mul[meet[res[a, x], b], x])
    join_principal = np.array_equal(join[a, res[b, x]],
                                    res[join[mul[a, x], b], x])

    return bool(meet_principal), bool(join_principal)


def is_principal(lattice: FiniteMultiplicativeLattice, x: int) -> bool:
    return all(principal_profile(lattice, x))


def principal_elements(lattice: FiniteMultiplicativeLattice) -> List[int]:
    return [x for x in lattice.elements if is_principal(lattice, x)]


def is_prime(lattice: FiniteMultiplicativeLattice, p: int) -> bool:
    """ab <= p implies a <= p or b <= p; the top is never prime."""

    if p == lattice.top:
        return False

    below = lattice.leq[:, p]
    splits = (lattice.leq[lattice.mul_table, p] &
              ~below[:, None] & ~below[None, :])

    return not splits.any()


def classify_spectrum(lattice: FiniteMultiplicativeLattice) -> Spectrum:
    """Finds the prime and maximal elements.

    ``maximal_above`` maps every element other than the top to the maximal
    element of least index above it.
    """

    proper = [a for a in lattice.elements if a != lattice.top]

    primes = frozenset(p for p in proper if is_prime(lattice, p))
    maximals = frozenset(
        m for m in proper
        if not any(lattice.le(m, c) and c != m for c in proper)
    )

    maximal_above = {
        a: min(m for m in maximals if lattice.le(a, m))
        for a in proper
    }

    return Spectrum(primes=primes,
                    maximals=maximals,
                    maximal_above=maximal_above)


def is_regular(lattice: FiniteMultiplicativeLattice, x: int) -> bool:
    """A principal element x is regular if (0 : x) = 0."""

    if not is_principal(lattice, x):
        raise PredicateUndefined(
            f'Regularity is defined for principal elements only; '
            f'{lattice.label(x)} is not principal.'
        )

    return lattice.residual(lattice.bottom, x) == lattice.bottom


def is_cancellation(lattice: FiniteMultiplicativeLattice,
                    q: int) -> Tuple[bool, Optional[Tuple[int, int]]]:
    """Decides whether Qa = Qb forces a = b.

    Returns the lexicographically least pair (a, b), a != b, with Qa = Qb
    when Q is not a cancellation element.
    """

    row = lattice.mul_table[q]
    i = np.arange(lattice.size)

    hits = np.argwhere((row[:, None] == row[None, :]) &
                       (i[:, None] != i[None, :]))

    if len(hits):
        a, b = hits[0]
        return False, (int(a), int(b))

    return True, None


def cancellation_elements(lattice: FiniteMultiplicativeLattice) -> List[int]:
    return [q for q in lattice.elements if is_cancellation(lattice, q)[0]]


def profile_all(lattice: FiniteMultiplicativeLattice) -> List[ElementProfile]:
    """Runs every predicate for every element, in index order."""

    spectrum = classify_spectrum(lattice)
    profiles = []

    for x in lattice.elements:
        meet_principal, join_principal = principal_profile(lattice, x)
        cancellation, witness = is_cancellation(lattice, x)

        regular = None
        if meet_principal and join_principal:
            regular = lattice.residual(lattice.bottom, x) == lattice.bottom

        profiles.append(ElementProfile(
            element=x,
            is_meet_principal=meet_principal,
            is_join_principal=join_principal,
            is_prime=x in spectrum.primes,
            is_maximal=x in spectrum.maximals,
            is_regular=regular,
            is_cancellation=cancellation,
            cancellation_witness=witness,
        ))

    return profiles
