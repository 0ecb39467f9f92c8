import random
from dataclasses import dataclass
from functools import cached_property, reduce
from typing import Any, Dict, Iterable, Optional, Sequence, Tuple

import numpy as np

from .errors import InternalContradiction, LatticeInputError


@dataclass(frozen=True, eq=False)
class FiniteMultiplicativeLattice:
    """Represents a finite multiplicative lattice.

    The elements are the indices ``range(size)``; ``names`` holds their
    display labels. Every table is a read-only numpy array:
        - leq[i, j] is True iff element i <= element j,
        - join_table[i, j] and meet_table[i, j] index the join and the meet,
        - mul_table[i, j] indexes the product.

    Instances are immutable; the residual table is computed lazily and
    cached.
    """

    names: Tuple[str, ...]
    leq: np.ndarray
    join_table: np.ndarray
    meet_table: np.ndarray
    mul_table: np.ndarray
    bottom: int
    top: int
    name: str = ''
    provenance: Optional[Dict] = None

    def __post_init__(self):
        names = tuple(str(label) for label in self.names)
        n = len(names)

        if n == 0:
            raise LatticeInputError('A lattice needs at least one element.')
        if len(set(names)) != n:
            raise LatticeInputError('Element labels must be unique.')

        object.__setattr__(self, 'names', names)
        object.__setattr__(self, 'leq', readonly(self.leq, bool, n, 'leq'))

        for attr in ('join_table', 'meet_table', 'mul_table'):
            table = readonly(getattr(self, attr), np.intp, n, attr)
            if ((table < 0) | (table >= n)).any():
                raise LatticeInputError(f'{attr} refers to unknown elements.')
            object.__setattr__(self, attr, table)

        for attr in ('bottom', 'top'):
            value = getattr(self, attr)
            if not 0 <= value < n:
                raise LatticeInputError(f'{attr} is not an element index.')
            object.__setattr__(self, attr, int(value))

    @classmethod
    def from_order(cls,
                   names: Sequence[str],
                   leq: Sequence[Sequence[bool]],
                   mul: Sequence[Sequence[int]],
                   name: str = '',
                   bottom: Optional[int] = None,
                   top: Optional[int] = None,
                   provenance: Optional[Dict] = None):
        """Builds a lattice from its order and product, deriving the rest."""

        n = len(names)
        leq = np.asarray(leq, dtype=bool)

        if n == 0:
            raise LatticeInputError('A lattice needs at least one element.')
        if leq.shape != (n, n):
            raise LatticeInputError(f'leq must be {n}x{n}.')
        if not is_partial_order(leq):
            raise LatticeInputError('leq is not a partial order.')

        join_table = bounds(leq, 'join')
        meet_table = bounds(leq.T, 'meet')

        derived_bottom = extreme(leq, 'bottom')
        derived_top = extreme(leq.T, 'top')

        if bottom is not None and bottom != derived_bottom:
            raise LatticeInputError('Supplied bottom disagrees with leq.')
        if top is not None and top != derived_top:
            raise LatticeInputError('Supplied top disagrees with leq.')

        return cls(names=tuple(names),
                   leq=leq,
                   join_table=join_table,
                   meet_table=meet_table,
                   mul_table=np.asarray(mul),
                   bottom=derived_bottom,
                   top=derived_top,
                   name=name,
                   provenance=provenance)

    @property
    def size(self) -> int:
        return len(self.names)

    @property
    def elements(self) -> range:
        return range(self.size)

    def label(self, element: int) -> str:
        return self.names[element]

    def labels(self, elements: Iterable[int]) -> Tuple[str, ...]:
        return tuple(self.names[element] for element in elements)

    def index(self, label: str) -> int:
        """Returns the index of the element with the given label."""

        try:
            return self._indices[label]
        except KeyError:
            raise LatticeInputError(f'Unknown element "{label}".') from None

    @cached_property
    def _indices(self) -> Dict[str, int]:
        return {label: i for i, label in enumerate(self.names)}

    def le(self, a: int, b: int) -> bool:
        return bool(self.leq[a, b])

    def join(self, a: int, b: int) -> int:
        return int(self.join_table[a, b])

    def meet(self, a: int, b: int) -> int:
        return int(self.meet_table[a, b])

    def multiply(self, a: int, b: int) -> int:
        return int(self.mul_table[a, b])

    def power(self, a: int, k: int) -> int:
        return reduce(self.multiply, [a] * k, self.top)

    def join_set(self, elements: Iterable[int]) -> int:
        """Least upper bound of a set; the empty join is the bottom."""
        return reduce(self.join, elements, self.bottom)

    def meet_set(self, elements: Iterable[int]) -> int:
        """Greatest lower bound of a set; the empty meet is the top."""
        return reduce(self.meet, elements, self.top)

    def residual(self, a: int, b: int) -> int:
        """Returns (a : b), the join of every c with bc <= a."""
        return int(self.residual_table[a, b])

    @cached_property
    def residual_table(self) -> np.ndarray:
        """residual_table[a, b] indexes (a : b)."""

        n = self.size
        rows = np.arange(n)[:, None]
        table = np.full((n, n), self.bottom, dtype=np.intp)

        for c in range(n):
            # fits[a, b] iff bc <= a
            fits = self.leq[self.mul_table[:, c][None, :], rows]
            table = np.where(fits, self.join_table[table, c], table)

        if not self.leq[self.mul_table[rows.T, table], rows].all():
            raise InternalContradiction(
                f'{self.name or "lattice"}: residuals are not attained; '
                f'the product does not distribute over joins.'
            )

        table.flags.writeable = False
        return table

    @cached_property
    def localizations(self) -> Dict[int, Any]:
        """Localizations at primes, filled in by ``localize_at_prime``; they
        live as long as the lattice does."""
        return {}

    def same_tables(self, other: 'FiniteMultiplicativeLattice') -> bool:
        return (self.names == other.names and
                self.bottom == other.bottom and
                self.top == other.top and
                np.array_equal(self.leq, other.leq) and
                np.array_equal(self.join_table, other.join_table) and
                np.array_equal(self.meet_table, other.meet_table) and
                np.array_equal(self.mul_table, other.mul_table))

    def __repr__(self):
        return f'<{type(self).__name__} {self.name or "?"} size={self.size}>'


AXIOMS = (
    'reflexive', 'antisymmetric', 'transitive', 'join', 'meet', 'bottom',
    'top', 'commutative', 'associative', 'identity', 'zero', 'distributive',
    'product-bounds', 'join-distributive',
)

# Upper bound on the entries of one intermediate array in the triple checks.
CHUNK_ENTRIES = 1 << 22


@dataclass(frozen=True)
class ValidationReport:
    failures: Tuple[Tuple[str, Tuple[str, ...]], ...] = ()

    @property
    def passed(self) -> bool:
        return not self.failures

    def axioms(self) -> Tuple[str, ...]:
        return tuple(axiom for axiom, _ in self.failures)


def validate(lattice: FiniteMultiplicativeLattice,
             samples: int = 32,
             seed: int = 0) -> ValidationReport:
    """Checks every multiplicative lattice axiom.

    Each failing axiom contributes its first violating witness in index
    order. Distributivity over arbitrary joins is checked through binary
    distributivity plus the annihilating bottom (equivalent on finite
    carriers) and spot-checked on ``samples`` random subsets.
    """

    leq = lattice.leq
    join, meet, mul = lattice.join_table, lattice.meet_table, lattice.mul_table
    bottom, top = lattice.bottom, lattice.top

    i = np.arange(lattice.size)
    b2 = i[None, :]
    b3, c3 = i[None, :, None], i[None, None, :]

    # Each check maps a block of first arguments to its violations, with
    # the block along the first axis.
    def joins(a):
        a2, a3 = a[:, None], a[:, None, None]
        bound = leq[a2, join[a]] & leq[b2, join[a]]
        least = ~(leq[a3, c3] & leq[b3, c3] & ~leq[join[a][:, :, None], c3])
        return ~(bound & least.all(axis=2))

    def meets(a):
        a2, a3 = a[:, None], a[:, None, None]
        bound = leq[meet[a], a2] & leq[meet[a], b2]
        great = ~(leq[c3, a3] & leq[c3, b3] & ~leq[c3, meet[a][:, :, None]])
        return ~(bound & great.all(axis=2))

    checks = [
        ('reflexive', lambda a: ~leq[a, a]),
        ('antisymmetric',
         lambda a: leq[a] & leq.T[a] & (a[:, None] != b2)),
        ('transitive',
         lambda a: (leq[a][:, :, None] & leq[b3, c3] &
                    ~leq[a][:, None, :])),
        ('join', joins),
        ('meet', meets),
        ('bottom', lambda a: ~leq[bottom, a]),
        ('top', lambda a: ~leq[a, top]),
        ('commutative', lambda a: mul[a] != mul.T[a]),
        ('associative',
         lambda a: (mul[mul[a][:, :, None], c3] !=
                    mul[a[:, None, None], mul[None, :, :]])),
        ('identity', lambda a: mul[a, top] != a),
        ('zero', lambda a: mul[a, bottom] != bottom),
        ('distributive',
         lambda a: (mul[a[:, None, None], join[None, :, :]] !=
                    join[mul[a][:, :, None], mul[a][:, None, :]])),
        ('product-bounds',
         lambda a: ~(leq[mul[a], a[:, None]] & leq[mul[a], b2])),
    ]

    failures = []

    for axiom, violations in checks:
        hit = first_violation(lattice.size, violations)
        if hit is not None:
            failures.append((axiom, lattice.labels(hit)))

    subset = sampled_distributivity(lattice, samples, seed)
    if subset is not None:
        failures.append(('join-distributive', lattice.labels(subset)))

    return ValidationReport(failures=tuple(failures))


def first_violation(size: int, violations) -> Optional[Tuple[int, ...]]:
    """Scans blocks of first arguments in order and returns the first hit
    of ``violations`` in index order, if any."""

    step = max(1, CHUNK_ENTRIES // (size * size))

    for start in range(0, size, step):
        hits = np.argwhere(violations(np.arange(start,
                                                min(start + step, size))))
        if len(hits):
            hit = [int(x) for x in hits[0]]
            hit[0] += start
            return tuple(hit)

    return None


def sampled_distributivity(lattice: FiniteMultiplicativeLattice,
                           samples: int,
                           seed: int) -> Optional[Tuple[int, ...]]:
    """Returns (a, *A) for the first sampled a(\\/A) != \\/(aA), if any."""

    rng = random.Random(seed)

    for _ in range(samples):
        a = rng.randrange(lattice.size)
        subset = [x for x in lattice.elements if rng.random() < 0.5]

        lhs = lattice.multiply(a, lattice.join_set(subset))
        rhs = lattice.join_set(lattice.multiply(a, x) for x in subset)

        if lhs != rhs:
            return (a, *subset)

    return None


def readonly(values, dtype, n: int, what: str) -> np.ndarray:
    """Copies values into a read-only n x n array."""

    try:
        array = np.array(values, dtype=dtype)
    except (ValueError, TypeError):
        raise LatticeInputError(f'{what} is not a {n}x{n} table.') from None

    if array.shape != (n, n):
        raise LatticeInputError(f'{what} is not a {n}x{n} table.')

    array.flags.writeable = False
    return array


def is_partial_order(rel: np.ndarray) -> bool:
    """Checks if the given relation is reflexive, antisymmetric and
    transitive."""

    if not rel[np.diag_indices_from(rel)].all():
        return False
    if (rel & rel.T).sum() > len(rel):
        return False
    if (~rel & np.matmul(rel, rel)).any():
        return False
    return True


def bounds(up: np.ndarray, what: str) -> np.ndarray:
    """Computes least upper bounds from an up-set table.

    Row i of ``up`` is the set of elements above i; the bound of i and j is
    the element whose up-set is the intersection of theirs. Passing the
    transposed order yields greatest lower bounds.
    """

    n = len(up)
    ids = {tuple(up[i, :]): i for i in range(n)}
    table = np.zeros((n, n), dtype=np.intp)

    for i in range(n):
        for j in range(n):
            common = tuple(up[i, :] & up[j, :])
            if common not in ids:
                raise LatticeInputError(
                    f'Not a lattice: elements {i} and {j} have no {what}.'
                )
            table[i, j] = ids[common]

    return table


def extreme(up: np.ndarray, what: str) -> int:
    """Returns the element below (or, transposed, above) every other."""

    hits = np.flatnonzero(up.all(axis=1))
    if len(hits) != 1:
        raise LatticeInputError(f'The order has no {what} element.')
    return int(hits[0])
