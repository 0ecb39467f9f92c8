from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from .classify import (
    cancellation_elements, classify_spectrum, is_cancellation, is_principal,
    principal_elements
)
from .core import FiniteMultiplicativeLattice
from .errors import LatticeInputError
from .localize import (
    LocalizationResult, MultSet, avoiding_primes, build_localization,
    local_principality, localize_at_prime, maximal_among, residual_transfer
)
from .verify import (
    DeltaCertificate, find_delta, generates, is_r_lattice,
    locally_principal_regular
)

# Witnesses kept per entry; the count of violations is always exact.
MAX_WITNESSES = 5

# Largest carrier whose multiplicative sets generated by two elements are
# localized as well.
MAX_PAIR_GENERATED = 64


@dataclass
class LemmaResult:
    name: str
    statement: str
    hypotheses_hold: bool
    checked: int = 0
    violations: int = 0
    witnesses: List[Tuple[str, ...]] = field(default_factory=list)
    skipped: Optional[str] = None
    note: str = ''

    @property
    def status(self) -> str:
        if self.skipped is not None:
            return 'skip'
        if not self.violations:
            return 'pass'
        return 'fail' if self.hypotheses_hold else 'exhibit'

    def record(self, lattice: FiniteMultiplicativeLattice,
               *witness: int):
        self.violations += 1
        if len(self.witnesses) < MAX_WITNESSES:
            self.witnesses.append(lattice.labels(witness))


@dataclass
class LemmaReport:
    lattice: str
    results: List[LemmaResult]

    @property
    def failed(self) -> bool:
        return any(result.status == 'fail' for result in self.results)

    def __getitem__(self, name: str) -> LemmaResult:
        for result in self.results:
            if result.name == name:
                return result
        raise KeyError(name)


def minimal_generating_mod(lattice: FiniteMultiplicativeLattice,
                           q: int, m: int,
                           generators: Iterable[int]) -> List[int]:
    """Finds B within the generators below Q with Q = \\/B \\/ mQ, such that
    no member of B can be dropped.

    Candidates are eliminated greedily in descending index order.
    """

    generators = sorted(set(generators))

    if not generates(lattice, generators):
        raise LatticeInputError('The given elements do not generate.')

    mq = lattice.multiply(m, q)
    if q == mq:
        return []

    chosen = [g for g in generators if lattice.le(g, q)]

    for b in reversed(list(chosen)):
        rest = [c for c in chosen if c != b]
        if lattice.join(lattice.join_set(rest), mq) == q:
            chosen = rest

    return chosen


class Suite:
    """Instantiates every statement over all admissible tuples."""

    def __init__(self, lattice: FiniteMultiplicativeLattice,
                 certificate: Optional[DeltaCertificate]):
        self.lattice = lattice
        self.certificate = certificate

        self.r_lattice, _ = is_r_lattice(lattice)
        self.delta = self.r_lattice and certificate is not None

        spectrum = classify_spectrum(lattice)
        self.primes = sorted(spectrum.primes)
        self.maximals = sorted(spectrum.maximals)
        self.principals = principal_elements(lattice)
        self.cancellations = cancellation_elements(lattice)

    def run(self) -> LemmaReport:
        checks = [
            self.principal_products,
            self.regular_cancels,
            self.order_cancellation,
            self.finite_cancellation,
            self.maximal_prime,
            self.residual_transfer,
            self.local_principality,
            self.principal_decomposition,
            self.cancellation_localization,
            self.local_regularity,
            self.minimal_generators,
            self.two_generator_reduction,
            self.compact_cancellation,
            self.meet_distribution,
            self.localized_cancellation,
            self.localized_hypotheses,
        ]

        return LemmaReport(lattice=self.lattice.name,
                           results=[check() for check in checks])

    def principal_products(self) -> LemmaResult:
        lattice = self.lattice
        result = LemmaResult('principal-products',
                             'xy is principal for principal x, y',
                             hypotheses_hold=True)

        for x in self.principals:
            for y in self.principals:
                result.checked += 1
                if not is_principal(lattice, lattice.multiply(x, y)):
                    result.record(lattice, x, y)

        return result

    def regular_cancels(self) -> LemmaResult:
        lattice = self.lattice
        result = LemmaResult('regular-cancels',
                             'principal regular elements cancel',
                             hypotheses_hold=True)

        for x in self.principals:
            if lattice.residual(lattice.bottom, x) != lattice.bottom:
                continue
            result.checked += 1
            if x not in self.cancellations:
                result.record(lattice, x)

        return result

    def order_cancellation(self) -> LemmaResult:
        lattice = self.lattice
        leq, mul = lattice.leq, lattice.mul_table
        result = LemmaResult('order-cancellation',
                             'Qc <= Qd implies c <= d for cancellation Q',
                             hypotheses_hold=True)

        for q in self.cancellations:
            result.checked += 1
            row = mul[q]
            broken = np.argwhere(leq[row[:, None], row[None, :]] & ~leq)
            for c, d in broken:
                result.record(lattice, q, int(c), int(d))

        return result

    def finite_cancellation(self) -> LemmaResult:
        lattice = self.lattice
        result = LemmaResult('finite-cancellation',
                             'the top is the only cancellation element',
                             hypotheses_hold=True, checked=lattice.size)

        if self.cancellations != [lattice.top]:
            result.record(lattice, *self.cancellations)

        return result

    def maximal_prime(self) -> LemmaResult:
        lattice = self.lattice
        result = LemmaResult('maximal-prime',
                             'maximal elements are prime and every proper '
                             'element is below one',
                             hypotheses_hold=True)

        for m in self.maximals:
            result.checked += 1
            if m not in self.primes:
                result.record(lattice, m)

        for a in lattice.elements:
            if a == lattice.top:
                continue
            result.checked += 1
            if not any(lattice.le(a, m) for m in self.maximals):
                result.record(lattice, a)

        return result

    def residual_transfer(self) -> LemmaResult:
        lattice = self.lattice
        result = LemmaResult('residual-transfer',
                             '(a : b)_p = (a_p : b_p) at every prime p',
                             hypotheses_hold=True)

        for p in self.primes:
            result.checked += 1
            pair = residual_transfer(lattice, localize_at_prime(lattice, p))
            if pair is not None:
                result.record(lattice, p, *pair)

        return result

    def local_principality(self) -> LemmaResult:
        lattice = self.lattice
        result = LemmaResult('local-principality',
                             'x is principal iff every x_m is principal',
                             hypotheses_hold=True, checked=lattice.size)

        x = local_principality(lattice)
        if x is not None:
            result.record(lattice, x)

        return result

    def principal_decomposition(self) -> LemmaResult:
        lattice = self.lattice
        leq, join, mul = lattice.leq, lattice.join_table, lattice.mul_table
        result = LemmaResult('principal-decomposition',
                             "a <= x \\/ b implies a \\/ b = xa' \\/ b "
                             "for some a'",
                             hypotheses_hold=self.r_lattice)

        i = np.arange(lattice.size)
        rows, cols = i[:, None], i[None, :]

        for x in self.principals:
            # reach[b, v] iff v = xa' \/ b for some a'
            reach = np.zeros((lattice.size, lattice.size), dtype=bool)
            reach[rows, join[mul[x, :][None, :], rows]] = True

            admissible = leq[rows, join[x, :][None, :]]
            attained = reach[cols, join]

            result.checked += int(admissible.sum())
            for a, b in np.argwhere(admissible & ~attained):
                result.record(lattice, x, int(a), int(b))

        return result

    def cancellation_localization(self) -> LemmaResult:
        lattice = self.lattice
        result = LemmaResult('cancellation-localization',
                             'Q = a \\/ mQ implies Q_m = a_m',
                             hypotheses_hold=self.r_lattice)

        for q in self.cancellations:
            for m in self.maximals:
                local = localize_at_prime(lattice, m)
                mq = lattice.multiply(m, q)
                for a in lattice.elements:
                    if lattice.join(a, mq) != q:
                        continue
                    result.checked += 1
                    if local.project[q] != local.project[a]:
                        result.record(lattice, q, m, a)

        return result

    def local_regularity(self) -> LemmaResult:
        lattice = self.lattice
        result = LemmaResult('local-regularity',
                             'Q_m is regular in L_m for maximal m >= Q',
                             hypotheses_hold=self.r_lattice)

        for q in self.cancellations:
            for m in self.maximals:
                if not lattice.le(q, m):
                    continue
                result.checked += 1
                local = localize_at_prime(lattice, m)
                localized, image = local.localized, local.project[q]
                if (localized.residual(localized.bottom, image) !=
                        localized.bottom):
                    result.record(lattice, q, m)

        return result

    def minimal_generators(self) -> LemmaResult:
        lattice = self.lattice
        result = LemmaResult('minimal-generators',
                             'Q = \\/B \\/ mQ for a minimal B within the '
                             'generators',
                             hypotheses_hold=True)

        if self.certificate is not None:
            generators = self.certificate.delta_set
        else:
            generators = self.principals

        if not generates(lattice, generators):
            result.skipped = 'the principal elements do not generate'
            return result

        cancelling = 0

        for q in lattice.elements:
            for m in self.maximals:
                mq = lattice.multiply(m, q)
                if not lattice.le(q, m) or q == mq:
                    continue

                result.checked += 1
                cancelling += q in self.cancellations

                chosen = minimal_generating_mod(lattice, q, m, generators)
                if not minimal_mod(lattice, q, mq, chosen, generators):
                    result.record(lattice, q, m)

        result.note = (f'{cancelling} of {result.checked} instances '
                       f'with Q a cancellation element')
        return result

    def two_generator_reduction(self) -> LemmaResult:
        lattice = self.lattice
        leq, join, mul = lattice.leq, lattice.join_table, lattice.mul_table
        result = LemmaResult('two-generator-reduction',
                             'Q = x \\/ y \\/ a with m(x \\/ y) <= a implies '
                             'Q = x \\/ a or Q = y \\/ a',
                             hypotheses_hold=self.delta)

        if self.certificate is None:
            result.skipped = 'no delta certificate'
            return result

        delta = np.array(self.certificate.delta_set, dtype=np.intp)
        i = np.arange(lattice.size)

        for q in self.cancellations:
            for x in delta:
                xy = join[x, delta]
                for m in self.maximals:
                    # rows range over y in the delta set, columns over a
                    admissible = ((join[xy[:, None], i[None, :]] == q) &
                                  leq[mul[m, xy][:, None], i[None, :]])
                    reduced = ((join[x, :] == q)[None, :] |
                               (join[delta[:, None], i[None, :]] == q))

                    result.checked += int(admissible.sum())
                    for y, a in np.argwhere(admissible & ~reduced):
                        result.record(lattice, q, int(x), int(delta[y]),
                                      int(a), m)

        return result

    def compact_cancellation(self) -> LemmaResult:
        lattice = self.lattice
        result = LemmaResult('compact-cancellation',
                             'a compact cancellation element is principal '
                             'regular',
                             hypotheses_hold=self.delta)

        for q in self.cancellations:
            result.checked += 1
            regular = (lattice.residual(lattice.bottom, q) ==
                       lattice.bottom)
            if not (is_principal(lattice, q) and regular):
                result.record(lattice, q)

        return result

    def meet_distribution(self) -> LemmaResult:
        lattice = self.lattice
        meet, mul = lattice.meet_table, lattice.mul_table
        result = LemmaResult('meet-distribution',
                             'Q(a /\\ b) = Qa /\\ Qb for cancellation Q',
                             hypotheses_hold=self.delta)

        for q in self.cancellations:
            row = mul[q]
            broken = np.argwhere(row[meet] != meet[row[:, None],
                                                   row[None, :]])
            result.checked += lattice.size ** 2
            for a, b in broken:
                result.record(lattice, q, int(a), int(b))

        return result

    def localized_cancellation(self) -> LemmaResult:
        lattice = self.lattice
        result = LemmaResult('localized-cancellation',
                             'Q is a cancellation element of L_S iff Q_p is '
                             'principal regular at the maximal primes '
                             'avoiding S; cancellation passes to L_S',
                             hypotheses_hold=self.delta)

        for tag, local in self.localizations():
            localized = local.localized

            for q in self.cancellations:
                result.checked += 1
                if not is_cancellation(localized, local.project[q])[0]:
                    result.record(lattice, *tag, q)

            spectrum = maximal_among(lattice,
                                     avoiding_primes(lattice, local.multset))
            embedded = sorted(local.embed[m] for m in
                              classify_spectrum(localized).maximals)
            result.checked += 1
            if spectrum != embedded:
                result.record(lattice, *tag, *spectrum)

            locals_ = [localize_at_prime(lattice, t) for t in spectrum]
            for element in localized.elements:
                result.checked += 1
                parent = local.embed[element]
                cancels = is_cancellation(localized, element)[0]
                regular = all(locally_principal_regular(at, parent)
                              for at in locals_)
                if cancels != regular:
                    result.record(lattice, *tag, parent)

        return result

    def localizations(self) -> Iterator[Tuple[Tuple[int, ...],
                                              LocalizationResult]]:
        """Yields L_S for the complement of every prime, then for every
        other S generated by one element or, on small carriers, by two.

        Each S comes with the prime or the generators naming it.
        """

        lattice = self.lattice
        seen = set()

        for p in self.primes:
            local = localize_at_prime(lattice, p)
            seen.add(local.multset.members)
            yield (p,), local

        generators = [(g,) for g in lattice.elements]
        if lattice.size <= MAX_PAIR_GENERATED:
            generators += combinations(lattice.elements, 2)

        for gens in generators:
            multset = MultSet.generated_by(lattice, gens)
            if multset.members in seen:
                continue
            seen.add(multset.members)

            name = '{}_{{{}}}'.format(lattice.name,
                                      ', '.join(lattice.labels(gens)))
            yield gens, build_localization(lattice, multset, name=name)

    def localized_hypotheses(self) -> LemmaResult:
        lattice = self.lattice
        result = LemmaResult('localized-hypotheses',
                             'every L_p is an r-lattice with property delta',
                             hypotheses_hold=self.delta)

        if not self.delta:
            result.skipped = 'the lattice lacks the hypotheses'
            return result

        for p in self.primes:
            result.checked += 1
            localized = localize_at_prime(lattice, p).localized
            if not (is_r_lattice(localized)[0] and
                    find_delta(localized).found):
                result.record(lattice, p)

        return result


def minimal_mod(lattice: FiniteMultiplicativeLattice,
                q: int, mq: int,
                chosen: Sequence[int],
                generators: Sequence[int]) -> bool:
    """Checks Q = \\/B \\/ mQ and that no member of B can be dropped."""

    if not set(chosen) <= set(generators):
        return False
    if not all(lattice.le(b, q) for b in chosen):
        return False
    if lattice.join(lattice.join_set(chosen), mq) != q:
        return False

    return all(
        lattice.join(lattice.join_set(c for c in chosen if c != b), mq) != q
        for b in chosen
    )


def lemma_suite(lattice: FiniteMultiplicativeLattice,
                certificate: Optional[DeltaCertificate] = None) -> LemmaReport:
    """Checks every lemma and corollary of the cancellation theorem on the
    lattice. Statements needing a delta certificate are skipped without
    one."""

    return Suite(lattice, certificate).run()
