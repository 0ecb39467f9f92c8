class LatticeError(Exception):
    """Base class for every error raised by the laboratory."""

    code = 'lattice error'


class LatticeInputError(LatticeError):
    """Malformed tables, text or arguments."""

    code = 'invalid input'


class AxiomViolation(LatticeError):
    """A lattice failed validation where a valid one was required."""

    code = 'axiom violation'

    def __init__(self, report):
        self.report = report
        failures = ', '.join(name for name, _ in report.failures)
        super().__init__(f'Lattice violates: {failures}.')


class PredicateUndefined(LatticeError):
    """A predicate was asked for outside of its domain of definition."""

    code = 'predicate undefined'


class InternalContradiction(LatticeError):
    """A guaranteed invariant failed to re-verify."""

    code = 'internal contradiction'
