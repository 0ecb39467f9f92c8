"""Command line front door.

Every subcommand prints a run report (text or JSON) on stdout and exits
with 0 when everything passed, 1 when a violation or an exhibit was found
and 2 on input errors.
"""

import functools
import logging
import os
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Sequence

import click

from . import report as reports
from .config import Config
from .constructors import corpus, parse_lattice, zn_ideal_lattice
from .core import FiniteMultiplicativeLattice, validate
from .errors import InternalContradiction, LatticeError
from .lemmas import lemma_suite
from .localize import localize_at_prime
from .natsemiring import (
    NatIdeal, bounded, nat_delta_witness_search, nat_modularity_search,
    nat_refute_cancellation
)
from .report import RunReport
from .verify import find_delta, verify_theorem

logger = logging.getLogger(__name__)

LATTICE_FILE = click.Path(exists=True, dir_okay=False, path_type=Path)


@dataclass
class Invocation:
    report: RunReport
    budget: int
    seed: int


def global_options(group: bool = False):
    """--format, --budget, --seed and --verbose.

    On the group they carry the defaults; on a subcommand they are left
    unset so that flags given before the subcommand still apply.
    """

    def default(value):
        return value if group else None

    options = [
        click.option('--format', 'format_', default=default('text'),
                     type=click.Choice(['text', 'json']),
                     show_default=group, help='Report format.'),
        click.option('--budget', default=default(Config.DELTA_BUDGET),
                     type=click.IntRange(min=1), show_default=group,
                     help='Subsets the delta search may examine.'),
        click.option('--seed', default=default(Config.SPOT_CHECK_SEED),
                     type=int, show_default=group,
                     help='Seed of the randomized spot-checks.'),
        click.option('--verbose', is_flag=True,
                     help='Log research notes to stderr.'),
    ]

    def decorate(f):
        for option in reversed(options):
            f = option(f)
        return f

    return decorate


def common_options(f):
    """Adds the global options, then prints the report the command filled
    in."""

    @global_options()
    @functools.wraps(f)
    def wrapper(format_, budget, seed, verbose, **kwargs):
        ctx = click.get_current_context()
        settings = ctx.find_root().obj or {}

        format_ = format_ or settings.get('format_', 'text')
        budget = budget or settings.get('budget', Config.DELTA_BUDGET)
        if seed is None:
            seed = settings.get('seed', Config.SPOT_CHECK_SEED)
        verbose = verbose or settings.get('verbose', False)

        logging.basicConfig(
            level=logging.INFO if verbose else logging.WARNING,
            format='%(levelname)s %(name)s: %(message)s',
            stream=sys.stderr,
            force=True,
        )

        argv = settings.get('argv', sys.argv[1:])

        invocation = Invocation(RunReport(command=list(argv)), budget, seed)
        f(invocation, **kwargs)
        emit(invocation.report, format_)

        return invocation.report.exit_code

    return wrapper


def emit(report: RunReport, format_: str):
    if format_ == 'json':
        click.echo(report.to_json(), nl=False)
    else:
        click.echo(report.to_text(color='NO_COLOR' not in os.environ),
                   nl=False)


def load(path: Path, invocation: Invocation,
         check: bool = True) -> FiniteMultiplicativeLattice:
    return parse_lattice(path.read_text(), check=check,
                         samples=Config.SPOT_CHECK_SAMPLES,
                         seed=invocation.seed)


@click.group(context_settings={'help_option_names': ['-h', '--help']})
@global_options(group=True)
@click.pass_context
def cli(ctx: click.Context, **options):
    """Verification lab for multiplicative lattices."""

    ctx.ensure_object(dict).update(options)


@cli.command('validate')
@click.argument('path', type=LATTICE_FILE)
@common_options
def validate_command(invocation: Invocation, path: Path):
    """Check every multiplicative lattice axiom."""

    lattice = load(path, invocation, check=False)
    report = validate(lattice, samples=Config.SPOT_CHECK_SAMPLES,
                      seed=invocation.seed)
    invocation.report.extend(reports.validation_entries(report))


@cli.command()
@click.argument('path', type=LATTICE_FILE)
@common_options
def classify(invocation: Invocation, path: Path):
    """Profile every element."""

    lattice = load(path, invocation)
    invocation.report.extend(reports.profile_entries(lattice))


@cli.command()
@click.argument('path', type=LATTICE_FILE)
@click.option('--prime', required=True, help='Label of a prime element.')
@common_options
def localize(invocation: Invocation, path: Path, prime: str):
    """Localize at the complement of a prime."""

    lattice = load(path, invocation)
    result = localize_at_prime(lattice, lattice.index(prime))
    invocation.report.extend(reports.localization_entries(lattice, result))


@cli.command()
@click.argument('path', type=LATTICE_FILE, required=False)
@click.option('--zn', type=click.IntRange(min=1),
              help='Use the ideal lattice of Z_n.')
@click.option('--corpus', 'sweep', is_flag=True,
              help='Sweep the whole corpus.')
@click.option('--zn-max', default=500, type=click.IntRange(min=2),
              show_default=True, help='Largest n of the corpus sweep.')
@common_options
def theorem(invocation: Invocation, path: Optional[Path],
            zn: Optional[int], sweep: bool, zn_max: int):
    """Check the cancellation characterization."""

    if sum((path is not None, zn is not None, sweep)) != 1:
        raise click.UsageError('Give exactly one of FILE, --zn or --corpus.')

    if sweep:
        for lattice in corpus(zn_max):
            logger.info('Checking %s.', lattice.name)
            entries = reports.theorem_entries(
                lattice, verify_theorem(lattice, invocation.budget))
            invocation.report.entries.append(
                reports.summarize(lattice.name, entries))
        return

    lattice = zn_ideal_lattice(zn) if zn else load(path, invocation)
    invocation.report.extend(reports.theorem_entries(
        lattice, verify_theorem(lattice, invocation.budget)))


@cli.command()
@click.argument('path', type=LATTICE_FILE)
@common_options
def delta(invocation: Invocation, path: Path):
    """Search for a principal generating set with property delta."""

    lattice = load(path, invocation)
    outcome = find_delta(lattice, invocation.budget)
    invocation.report.entries.append(reports.delta_entry(lattice, outcome))


@cli.command()
@click.argument('path', type=LATTICE_FILE)
@common_options
def lemmas(invocation: Invocation, path: Path):
    """Run the lemma suite."""

    lattice = load(path, invocation)
    outcome = find_delta(lattice, invocation.budget)
    invocation.report.extend(reports.lemma_entries(
        lemma_suite(lattice, outcome.certificate)))


@cli.command('nat-refute')
@click.argument('generators')
@common_options
def nat_refute(invocation: Invocation, generators: str):
    """Refute cancellation for a non-principal ideal of N, e.g. 4,9."""

    ideal = NatIdeal.parse(generators, limit=Config.NAT_GENERATOR_LIMIT)
    invocation.report.extend(reports.refutation_entries(
        ideal, nat_refute_cancellation(ideal)))


@cli.command('nat-delta')
@click.argument('x', type=click.IntRange(min=1))
@click.argument('y', type=click.IntRange(min=1))
@common_options
def nat_delta(invocation: Invocation, x: int, y: int):
    """Search c with (x^2, y^2) = (x^2, c) = (c, y^2)."""

    bounded((x, y), Config.NAT_DELTA_LIMIT)
    invocation.report.extend(reports.nat_delta_entries(
        x, y, nat_delta_witness_search(x, y)))


@cli.command('nat-modularity')
@click.option('--bound', default=12, type=click.IntRange(min=1),
              show_default=True, help='Largest generator searched first.')
@common_options
def nat_modularity(invocation: Invocation, bound: int):
    """Search a modularity violation among ideals of N."""

    ceiling = max(bound, Config.NAT_MODULARITY_CEILING)
    witness, reached = nat_modularity_search(bound, ceiling)
    invocation.report.extend(reports.modularity_entries(witness, reached))


@cli.command('corpus')
@click.option('--zn-max', default=500, type=click.IntRange(min=2),
              show_default=True, help='Largest n of the zn family.')
@common_options
def corpus_command(invocation: Invocation, zn_max: int):
    """Validate, verify and run the lemmas on every corpus lattice."""

    for lattice in corpus(zn_max):
        logger.info('Checking %s.', lattice.name)

        validation = validate(lattice, samples=Config.SPOT_CHECK_SAMPLES,
                              seed=invocation.seed)
        theorem_report = verify_theorem(lattice, invocation.budget)

        entries = reports.validation_entries(validation)
        entries += reports.theorem_entries(lattice, theorem_report)
        entries += reports.lemma_entries(
            lemma_suite(lattice, theorem_report.delta.certificate))

        invocation.report.entries.append(
            reports.summarize(lattice.name, entries))


def run(argv: Optional[Sequence[str]] = None) -> int:
    """Runs one command and returns its exit code."""

    argv = list(sys.argv[1:] if argv is None else argv)

    try:
        code = cli.main(args=argv,
                        prog_name='ideallab',
                        standalone_mode=False,
                        obj={'argv': argv})
    except click.ClickException as ex:
        ex.show()
        return ex.exit_code
    except InternalContradiction:
        raise
    except LatticeError as ex:
        click.echo(f'Error: {ex}', err=True)
        return 2

    return code or 0
