import logging
from dataclasses import dataclass
from typing import FrozenSet, Iterable, List, Optional, Tuple

import numpy as np

from .classify import classify_spectrum, is_prime, is_principal
from .core import FiniteMultiplicativeLattice, validate
from .errors import InternalContradiction, LatticeInputError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class MultSet:
    """A multiplicatively closed set of elements containing the top.

    On a finite carrier every element is compact, so any such set is a
    legitimate set of denominators.
    """

    members: FrozenSet[int]

    @classmethod
    def of(cls, lattice: FiniteMultiplicativeLattice,
           members: Iterable[int]) -> 'MultSet':
        """Wraps a set that must already be closed under products."""

        members = frozenset(members) | {lattice.top}

        for s in members:
            for t in members:
                if lattice.multiply(s, t) not in members:
                    raise LatticeInputError(
                        f'{{{", ".join(lattice.labels(sorted(members)))}}} '
                        f'is not multiplicatively closed: '
                        f'{lattice.label(s)}{lattice.label(t)} is missing.'
                    )

        return cls(members=members)

    @classmethod
    def generated_by(cls, lattice: FiniteMultiplicativeLattice,
                     generators: Iterable[int]) -> 'MultSet':
        """Returns the multiplicative closure of the generators."""

        members = set(generators) | {lattice.top}
        frontier = list(members)

        while frontier:
            s = frontier.pop()
            for t in list(members):
                product = lattice.multiply(s, t)
                if product not in members:
                    members.add(product)
                    frontier.append(product)

        return cls(members=frozenset(members))

    def sorted(self) -> List[int]:
        return sorted(self.members)


@dataclass(frozen=True, eq=False)
class LocalizationResult:
    localized: FiniteMultiplicativeLattice
    # project[a] is the local index of a_S; embed[i] the parent index.
    project: Tuple[int, ...]
    embed: Tuple[int, ...]
    multset: MultSet

    def image(self, a: int) -> int:
        """Returns a_S as a parent index."""
        return self.embed[self.project[a]]


def closure(lattice: FiniteMultiplicativeLattice,
            a: int,
            multset: MultSet) -> int:
    """Returns a_S, the join of (a : s) over s in S."""

    return lattice.join_set(lattice.residual(a, s) for s in multset.sorted())


def closures(lattice: FiniteMultiplicativeLattice,
             multset: MultSet) -> np.ndarray:
    """Vector of a_S for every element a."""

    image = np.full(lattice.size, lattice.bottom, dtype=np.intp)

    for s in multset.sorted():
        image = lattice.join_table[image, lattice.residual_table[:, s]]

    return image


def build_localization(lattice: FiniteMultiplicativeLattice,
                       multset: MultSet,
                       name: Optional[str] = None) -> LocalizationResult:
    """Materializes L_S as a fresh multiplicative lattice.

    The carrier is the set of fixed points of a -> a_S; joins and products
    are closed again, meets are inherited. The local bottom is the closure of
    the parent bottom.
    """

    image = closures(lattice, multset)
    check_closure_operator(lattice, image)

    fixed = np.flatnonzero(image == np.arange(lattice.size))
    embed = tuple(int(a) for a in fixed)
    local = {a: i for i, a in enumerate(embed)}
    project = tuple(local[int(image[a])] for a in lattice.elements)

    carrier = np.array(embed, dtype=np.intp)
    rows, cols = carrier[:, None], carrier[None, :]
    relocate = np.array(project, dtype=np.intp)

    members = lattice.labels(multset.sorted())
    localized = FiniteMultiplicativeLattice(
        names=lattice.labels(embed),
        leq=lattice.leq[rows, cols],
        join_table=relocate[lattice.join_table[rows, cols]],
        meet_table=relocate[lattice.meet_table[rows, cols]],
        mul_table=relocate[lattice.mul_table[rows, cols]],
        bottom=project[lattice.bottom],
        top=project[lattice.top],
        name=name or f'{lattice.name}_S',
        provenance={'parent': lattice.name, 'S': list(members)},
    )

    report = validate(localized)
    if not report.passed:
        raise InternalContradiction(
            f'Localization of {lattice.name} at {{{", ".join(members)}}} '
            f'is not a multiplicative lattice: {report.failures}'
        )

    result = LocalizationResult(localized=localized,
                                project=project,
                                embed=embed,
                                multset=multset)
    check_projection(lattice, result)

    logger.debug('Localized %s at {%s}: %d fixed points.',
                 lattice.name, ', '.join(members), localized.size)

    return result


def check_closure_operator(lattice: FiniteMultiplicativeLattice,
                           image: np.ndarray):
    """a <= a_S, a <= b implies a_S <= b_S, (a_S)_S = a_S."""

    i = np.arange(lattice.size)
    leq = lattice.leq

    if not leq[i, image].all():
        raise InternalContradiction('Closure is not extensive.')
    if not (~leq | leq[image[:, None], image[None, :]]).all():
        raise InternalContradiction('Closure is not monotone.')
    if not np.array_equal(image[image], image):
        raise InternalContradiction('Closure is not idempotent.')


def check_projection(lattice: FiniteMultiplicativeLattice,
                     result: LocalizationResult):
    """The projection is monotone, top preserving and multiplicative."""

    localized = result.localized
    project = np.array(result.project, dtype=np.intp)

    if project[lattice.top] != localized.top:
        raise InternalContradiction('Projection does not preserve the top.')
    if not (~lattice.leq |
            localized.leq[project[:, None], project[None, :]]).all():
        raise InternalContradiction('Projection is not monotone.')
    if not np.array_equal(project[lattice.mul_table],
                          localized.mul_table[project[:, None],
                                              project[None, :]]):
        raise InternalContradiction('Projection is not multiplicative.')
    if any(result.project[a] != i for i, a in enumerate(result.embed)):
        raise InternalContradiction('Projection does not fix L_S.')


def complement_of(lattice: FiniteMultiplicativeLattice, p: int) -> MultSet:
    """Returns T = {c : c is not below p}."""
    return MultSet.of(lattice,
                      (c for c in lattice.elements if not lattice.le(c, p)))


def localize_at_prime(lattice: FiniteMultiplicativeLattice,
                      p: int) -> LocalizationResult:
    """Builds L_p, the localization at T = {c : c is not below p}.

    Results are kept on the lattice itself.
    """

    cache = lattice.localizations

    if p not in cache:
        if not is_prime(lattice, p):
            raise LatticeInputError(f'{lattice.label(p)} is not prime.')

        cache[p] = build_localization(
            lattice, complement_of(lattice, p),
            name=f'{lattice.name}_{lattice.label(p)}')

    return cache[p]


def distinguishing_maximal(lattice: FiniteMultiplicativeLattice,
                           a: int, b: int) -> Optional[int]:
    """Returns the least maximal m with a_m != b_m, if any."""

    for m in sorted(classify_spectrum(lattice).maximals):
        local = localize_at_prime(lattice, m)
        if local.project[a] != local.project[b]:
            return m

    return None


def equal_locally(lattice: FiniteMultiplicativeLattice,
                  a: int, b: int) -> bool:
    """Decides whether a_m = b_m for each maximal element m."""
    return distinguishing_maximal(lattice, a, b) is None


def residual_transfer(lattice: FiniteMultiplicativeLattice,
                      result: LocalizationResult) -> Optional[Tuple[int, int]]:
    """Finds (a, b) with (a : b)_S != (a_S : b_S), if any."""

    project = np.array(result.project, dtype=np.intp)
    lhs = project[lattice.residual_table]
    rhs = result.localized.residual_table[project[:, None], project[None, :]]

    hits = np.argwhere(lhs != rhs)
    return tuple(int(c) for c in hits[0]) if len(hits) else None


def local_principality(lattice: FiniteMultiplicativeLattice) -> Optional[int]:
    """Finds x whose principality differs from that of its localizations."""

    maximals = sorted(classify_spectrum(lattice).maximals)
    locals_ = [localize_at_prime(lattice, m) for m in maximals]

    for x in lattice.elements:
        globally = is_principal(lattice, x)
        locally = all(is_principal(local.localized, local.project[x])
                      for local in locals_)
        if globally != locally:
            return x

    return None


def avoiding_primes(lattice: FiniteMultiplicativeLattice,
                    multset: MultSet) -> List[int]:
    """Returns the primes q with s not below q for every s in S."""

    primes = classify_spectrum(lattice).primes

    return sorted(
        q for q in primes
        if not any(lattice.le(s, q) for s in multset.members)
    )


def maximal_among(lattice: FiniteMultiplicativeLattice,
                  elements: Iterable[int]) -> List[int]:
    elements = list(elements)
    return sorted(
        a for a in elements
        if not any(a != b and lattice.le(a, b) for b in elements)
    )
