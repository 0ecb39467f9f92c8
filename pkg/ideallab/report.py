"""Run reports: the entries every command and endpoint emits.

Each builder turns a library result into report entries. Entry witnesses
are plain JSON values (labels, integers, lists and dicts) so that the
structured output is byte-stable.
"""

import json
from dataclasses import dataclass, field
from typing import Any, Dict, Iterable, List, Optional, Sequence

import click

from . import __version__, schema
from .classify import classify_spectrum, profile_all
from .core import AXIOMS, FiniteMultiplicativeLattice, ValidationReport
from .lemmas import LemmaReport
from .localize import LocalizationResult
from .natsemiring import (
    CancellationRefutation, NatIdeal, NatModularityWitness
)
from .verify import DeltaOutcome, DeltaStatus, TheoremReport

VERSION = __version__
SCHEMA = 1

STATUSES = ('pass', 'fail', 'skip', 'exhibit')
STYLES = {'pass': 'green', 'fail': 'red', 'skip': 'yellow', 'exhibit': 'cyan'}


@dataclass
class Entry:
    name: str
    status: str
    witness: Any = None


@dataclass
class RunReport:
    command: List[str]
    entries: List[Entry] = field(default_factory=list)

    def extend(self, entries: Iterable[Entry]):
        self.entries.extend(entries)

    @property
    def summary(self) -> Dict[str, int]:
        counts = dict.fromkeys(STATUSES, 0)
        for entry in self.entries:
            counts[entry.status] += 1
        return counts

    @property
    def exit_code(self) -> int:
        """1 as soon as anything was found, intended refutations included."""
        summary = self.summary
        return 1 if summary['fail'] or summary['exhibit'] else 0

    def payload(self) -> Dict:
        return schema.report.dump({
            'version': VERSION,
            'schema': SCHEMA,
            'command': self.command,
            'entries': [vars(entry) for entry in self.entries],
            'summary': self.summary,
        })

    def to_json(self) -> str:
        return json.dumps(self.payload(), sort_keys=True, indent=2) + '\n'

    def to_text(self, color: bool = True) -> str:
        lines = []

        for entry in self.entries:
            status = f'{entry.status.upper():<7}'
            if color:
                status = click.style(status, fg=STYLES[entry.status])

            line = f'{status} {entry.name}'
            if entry.witness is not None:
                line += f'  {json.dumps(entry.witness, sort_keys=True)}'
            lines.append(line)

        lines.append(', '.join(f'{count} {status}'
                               for status, count in self.summary.items()))

        return '\n'.join(lines) + '\n'


def labels(lattice: FiniteMultiplicativeLattice,
           elements: Optional[Iterable[int]]) -> Optional[List[str]]:
    if elements is None:
        return None
    return list(lattice.labels(elements))


def validation_entries(report: ValidationReport) -> List[Entry]:
    failures = dict(report.failures)

    return [
        Entry(axiom, 'fail', list(failures[axiom]))
        if axiom in failures else Entry(axiom, 'pass')
        for axiom in AXIOMS
    ]


def profile_entries(lattice: FiniteMultiplicativeLattice) -> List[Entry]:
    entries = []

    for profile in profile_all(lattice):
        entries.append(Entry(lattice.label(profile.element), 'pass', {
            'meet_principal': profile.is_meet_principal,
            'join_principal': profile.is_join_principal,
            'prime': profile.is_prime,
            'maximal': profile.is_maximal,
            'regular': profile.is_regular,
            'cancellation': profile.is_cancellation,
            'cancellation_witness': labels(lattice,
                                           profile.cancellation_witness),
        }))

    spectrum = classify_spectrum(lattice)
    entries.append(Entry('spectrum', 'pass', {
        'primes': labels(lattice, sorted(spectrum.primes)),
        'maximals': labels(lattice, sorted(spectrum.maximals)),
    }))

    return entries


def localization_entries(lattice: FiniteMultiplicativeLattice,
                         result: LocalizationResult) -> List[Entry]:
    localized = result.localized

    return [Entry(localized.name, 'pass', {
        'S': labels(lattice, result.multset.sorted()),
        'carrier': list(localized.names),
        'bottom': localized.label(localized.bottom),
        'project': {lattice.label(a): localized.label(result.project[a])
                    for a in lattice.elements},
    })]


def delta_entry(lattice: FiniteMultiplicativeLattice,
                outcome: DeltaOutcome) -> Entry:
    name = 'delta'

    if outcome.status is DeltaStatus.UNKNOWN:
        return Entry(name, 'skip', {'budget': outcome.budget})
    if outcome.status is DeltaStatus.NOT_FOUND:
        return Entry(name, 'exhibit', None)

    return Entry(name, 'pass', labels(lattice, outcome.certificate.delta_set))


def theorem_entries(lattice: FiniteMultiplicativeLattice,
                    report: TheoremReport) -> List[Entry]:
    """Hypotheses first, then one row per element."""

    entries = [
        Entry('modular', 'pass' if report.modular else 'exhibit'),
        Entry('principals-generate',
              'pass' if report.principals_generate else 'exhibit'),
        delta_entry(lattice, report.delta),
    ]

    for row in report.rows:
        if row.agrees:
            status = 'pass'
        elif row.locally_principal_regular or report.hypotheses_hold:
            status = 'fail'
        else:
            status = 'exhibit'

        failing = row.failing_maximal
        entries.append(Entry(lattice.label(row.element), status, {
            'cancellation': row.cancellation,
            'locally_principal_regular': row.locally_principal_regular,
            'cancellation_witness': labels(lattice, row.cancellation_witness),
            'failing_maximal':
                None if failing is None else lattice.label(failing),
        }))

    entries.append(Entry('cancellation-set', 'pass',
                         labels(lattice, report.cancellation_set)))

    return entries


def lemma_entries(report: LemmaReport) -> List[Entry]:
    entries = []

    for result in report.results:
        witness = {'checked': result.checked,
                   'violations': result.violations}
        if result.witnesses:
            witness['witnesses'] = [list(w) for w in result.witnesses]
        if result.skipped:
            witness['skipped'] = result.skipped
        if result.note:
            witness['note'] = result.note

        entries.append(Entry(result.name, result.status,
                             witness))

    return entries


def refutation_entries(ideal: NatIdeal,
                       refutation: Optional[CancellationRefutation]
                       ) -> List[Entry]:
    if refutation is None:
        return [Entry('cancellation', 'pass',
                      {'ideal': str(ideal), 'principal': True})]

    return [Entry('cancellation', 'exhibit', {
        'ideal': str(ideal),
        'a': refutation.a,
        'b': refutation.b,
        'H': list(refutation.rest),
        'J': str(refutation.reduced),
        'witness': refutation.witness,
    })]


def nat_delta_entries(x: int, y: int, c: Optional[int]) -> List[Entry]:
    if c is None:
        return [Entry('delta', 'exhibit',
                      {'x': x, 'y': y, 'searched': max(x * x, y * y)})]
    return [Entry('delta', 'pass', {'x': x, 'y': y, 'c': c})]


def modularity_entries(witness: Optional[NatModularityWitness],
                       bound: int) -> List[Entry]:
    if witness is None:
        return [Entry('modularity', 'pass', {'bound': bound})]

    return [Entry('modularity', 'exhibit', {
        'bound': bound,
        'A': str(witness.a),
        'B': str(witness.b),
        'C': str(witness.c),
    })]


def summarize(name: str, entries: Sequence[Entry]) -> Entry:
    """Folds the entries of one lattice into a single corpus entry."""

    statuses = {entry.status for entry in entries}

    for status in ('fail', 'exhibit'):
        if status in statuses:
            failing = [e.name for e in entries if e.status == status]
            return Entry(name, status, failing)

    return Entry(name, 'pass')
