import logging
from dataclasses import dataclass
from enum import Enum
from itertools import combinations
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from .classify import (
    classify_spectrum, is_cancellation, is_principal, principal_elements
)
from .core import FiniteMultiplicativeLattice, first_violation
from .localize import LocalizationResult, localize_at_prime

logger = logging.getLogger(__name__)

# Largest principal set whose subsets the delta search enumerates.
MAX_DELTA_CANDIDATES = 16


@dataclass(frozen=True)
class ModularityWitness:
    """a >= b with a /\\ (b \\/ c) != b \\/ (a /\\ c)."""

    a: int
    b: int
    c: int

    def replay(self, lattice: FiniteMultiplicativeLattice) -> bool:
        a, b, c = self.a, self.b, self.c
        return (lattice.le(b, a) and
                lattice.meet(a, lattice.join(b, c)) !=
                lattice.join(b, lattice.meet(a, c)))


@dataclass(frozen=True)
class DeltaCertificate:
    """A generating set of principal elements closed under delta.

    ``witness[x, y]`` is an element d of the set with
    x^2 \\/ y^2 = x^2 \\/ d = y^2 \\/ d.
    """

    delta_set: Tuple[int, ...]
    witness: Dict[Tuple[int, int], int]


class DeltaStatus(Enum):
    FOUND = 'found'
    NOT_FOUND = 'not-found'
    UNKNOWN = 'unknown'


@dataclass(frozen=True)
class DeltaOutcome:
    status: DeltaStatus
    certificate: Optional[DeltaCertificate] = None
    budget: int = 0

    @property
    def found(self) -> bool:
        return self.status is DeltaStatus.FOUND


@dataclass(frozen=True)
class TheoremRow:
    element: int
    cancellation: bool
    locally_principal_regular: bool
    cancellation_witness: Optional[Tuple[int, int]] = None
    # The least maximal m at which Q_m is not principal regular.
    failing_maximal: Optional[int] = None

    @property
    def agrees(self) -> bool:
        return self.cancellation == self.locally_principal_regular


@dataclass(frozen=True)
class TheoremReport:
    lattice: str
    modular: bool
    principals_generate: bool
    delta: DeltaOutcome
    rows: Tuple[TheoremRow, ...]

    @property
    def hypotheses_hold(self) -> bool:
        return self.modular and self.principals_generate and self.delta.found

    @property
    def mismatches(self) -> List[TheoremRow]:
        return [row for row in self.rows if not row.agrees]

    @property
    def backward_failures(self) -> List[TheoremRow]:
        """Locally principal regular elements that fail to cancel."""
        return [row for row in self.rows
                if row.locally_principal_regular and not row.cancellation]

    @property
    def failed(self) -> bool:
        if self.backward_failures:
            return True
        return self.hypotheses_hold and bool(self.mismatches)

    @property
    def cancellation_set(self) -> List[int]:
        return [row.element for row in self.rows if row.cancellation]


def check_modularity(
        lattice: FiniteMultiplicativeLattice) -> Optional[ModularityWitness]:
    """Returns the first (a, b, c) in index order breaking modularity."""

    join, meet, leq = lattice.join_table, lattice.meet_table, lattice.leq

    i = np.arange(lattice.size)
    b = i[None, :, None]

    def broken(a):
        return (leq[b, a[:, None, None]] &
                (meet[a[:, None, None], join[None, :, :]] !=
                 join[b, meet[a][:, None, :]]))

    hit = first_violation(lattice.size, broken)
    if hit is None:
        return None

    return ModularityWitness(*hit)


def generates(lattice: FiniteMultiplicativeLattice,
              generators: Iterable[int]) -> bool:
    """Checks that every element is the join of the generators below it."""
    return ungenerated(lattice, generators) is None


def ungenerated(lattice: FiniteMultiplicativeLattice,
                generators: Iterable[int]) -> Optional[int]:
    """Returns the first element that is not a join of generators."""

    generators = list(generators)

    for a in lattice.elements:
        below = (g for g in generators if lattice.le(g, a))
        if lattice.join_set(below) != a:
            return a

    return None


def is_r_lattice(lattice: FiniteMultiplicativeLattice) -> Tuple[bool, str]:
    """Decides whether the lattice is modular and generated by principal
    elements. The C-lattice conditions hold on every finite carrier."""

    witness = check_modularity(lattice)
    if witness is not None:
        a, b, c = lattice.labels((witness.a, witness.b, witness.c))
        return False, f'not modular at ({a}, {b}, {c})'

    missing = ungenerated(lattice, principal_elements(lattice))
    if missing is not None:
        return False, (f'{lattice.label(missing)} is not a join of '
                       f'principal elements')

    return True, 'modular and generated by principal elements'


def delta_witness(lattice: FiniteMultiplicativeLattice,
                  delta_set: Sequence[int],
                  x: int, y: int) -> Optional[int]:
    """Finds d in the set with x^2 \\/ y^2 = x^2 \\/ d = y^2 \\/ d.

    The join x^2 \\/ y^2 itself is tried first, then the set in index order.
    """

    xx, yy = lattice.multiply(x, x), lattice.multiply(y, y)
    target = lattice.join(xx, yy)

    candidates = [target] if target in delta_set else []
    candidates += sorted(delta_set)

    for d in candidates:
        if lattice.join(xx, d) == target and lattice.join(yy, d) == target:
            return d

    return None


def certify(lattice: FiniteMultiplicativeLattice,
            delta_set: Iterable[int]) -> Optional[DeltaCertificate]:
    """Returns a certificate if the set generates and is closed under
    delta."""

    delta_set = tuple(sorted(set(delta_set)))

    if not generates(lattice, delta_set):
        return None

    witness = {}

    for x in delta_set:
        for y in delta_set:
            d = delta_witness(lattice, delta_set, x, y)
            if d is None:
                return None
            witness[x, y] = d

    return DeltaCertificate(delta_set=delta_set, witness=witness)


def find_delta(lattice: FiniteMultiplicativeLattice,
               budget: int = 1 << 16) -> DeltaOutcome:
    """Searches for a set of principal elements with property delta.

    All principal elements are tried first; when they fail, every subset is
    tried (smallest first) as long as there are at most sixteen principal
    elements and the number of subsets examined stays within the budget.
    """

    principals = principal_elements(lattice)

    certificate = certify(lattice, principals)
    if certificate is not None:
        return DeltaOutcome(DeltaStatus.FOUND, certificate, budget)

    if len(principals) > MAX_DELTA_CANDIDATES:
        return DeltaOutcome(DeltaStatus.UNKNOWN, budget=budget)

    examined = 0

    for size in range(1, len(principals)):
        for subset in combinations(principals, size):
            examined += 1
            if examined > budget:
                return DeltaOutcome(DeltaStatus.UNKNOWN, budget=budget)

            certificate = certify(lattice, subset)
            if certificate is not None:
                logger.info('%s: the principal elements fail delta but '
                            '{%s} satisfies it.', lattice.name,
                            ', '.join(lattice.labels(subset)))
                return DeltaOutcome(DeltaStatus.FOUND, certificate, budget)

    return DeltaOutcome(DeltaStatus.NOT_FOUND, budget=budget)


def locally_principal_regular(local: LocalizationResult, q: int) -> bool:
    """Decides whether q_m is a principal regular element of L_m."""

    localized = local.localized
    image = local.project[q]

    return (is_principal(localized, image) and
            localized.residual(localized.bottom, image) == localized.bottom)


def verify_theorem(lattice: FiniteMultiplicativeLattice,
                   budget: int = 1 << 16,
                   delta: Optional[DeltaOutcome] = None) -> TheoremReport:
    """Compares, element by element, being a cancellation element with being
    locally principal regular at every maximal element."""

    modular = check_modularity(lattice) is None
    principals_generate = generates(lattice, principal_elements(lattice))
    delta = delta or find_delta(lattice, budget)

    maximals = sorted(classify_spectrum(lattice).maximals)
    locals_ = [(m, localize_at_prime(lattice, m)) for m in maximals]

    rows = []

    for q in lattice.elements:
        cancellation, witness = is_cancellation(lattice, q)
        failing = next((m for m, local in locals_
                        if not locally_principal_regular(local, q)), None)

        rows.append(TheoremRow(element=q,
                               cancellation=cancellation,
                               locally_principal_regular=failing is None,
                               cancellation_witness=witness,
                               failing_maximal=failing))

    report = TheoremReport(lattice=lattice.name,
                           modular=modular,
                           principals_generate=principals_generate,
                           delta=delta,
                           rows=tuple(rows))

    if report.mismatches and not report.hypotheses_hold:
        logger.info('%s: %d mismatches without the hypotheses: %s',
                    lattice.name, len(report.mismatches),
                    ', '.join(lattice.labels(row.element
                                             for row in report.mismatches)))

    return report
