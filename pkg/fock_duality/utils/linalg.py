"""
Exact Linear Algebra Utilities

Rational scalars and sparse matrices over QQ. All matrices are sympy
DomainMatrix objects in dict-of-dicts form; vectors are plain dicts from a
hashable key (a basis index, a bit mask, an index tuple) to a QQ element
with no zero entries stored.
"""

import logging
from fractions import Fraction

from sympy import Rational
from sympy.polys.domains import QQ
from sympy.polys.matrices import DomainMatrix

logger = logging.getLogger(__name__)

ZERO = QQ(0)
ONE = QQ(1)
HALF = QQ(1, 2)


def qq(value):
    """
    Coerce a number to an exact rational.

    Args:
        value: int, QQ element, Fraction, sympy Rational or a string such
            as "3", "-3/2" or "1.5" (decimals are parsed exactly)

    Returns:
        QQ element

    Raises:
        ValueError: If the value is not a finite rational
    """
    if isinstance(value, bool):
        raise ValueError(f"not a rational number: {value!r}")
    if isinstance(value, int):
        return QQ(value)
    if isinstance(value, QQ.dtype):
        return value
    if isinstance(value, Fraction):
        return QQ(value.numerator, value.denominator)
    if isinstance(value, Rational):
        return QQ(int(value.p), int(value.q))
    if isinstance(value, str):
        try:
            frac = Fraction(value.strip())
        except (ValueError, ZeroDivisionError):
            raise ValueError(f"not a rational number: {value!r}") from None
        return QQ(frac.numerator, frac.denominator)
    raise ValueError(f"not a rational number: {value!r}")


def is_integral(value):
    return qq(value).denominator == 1


def format_rational(value):
    """JSON form of a rational: an int when integral, else "p/q"."""
    value = qq(value)
    if value.denominator == 1:
        return int(value.numerator)
    return f"{int(value.numerator)}/{int(value.denominator)}"


def rational_str(value):
    value = qq(value)
    if value.denominator == 1:
        return str(int(value.numerator))
    return f"{int(value.numerator)}/{int(value.denominator)}"


def add_into(target, key, coeff):
    """Accumulate coeff at key of a sparse vector, dropping zeros."""
    if not coeff:
        return
    new = target.get(key, ZERO) + coeff
    if new:
        target[key] = new
    else:
        target.pop(key, None)


def sparse_matrix(dod, shape):
    """
    Build an exact sparse matrix.

    Args:
        dod (dict): {row: {col: value}} with QQ-coercible values
        shape (tuple): (rows, cols)

    Returns:
        DomainMatrix over QQ
    """
    clean = {}
    for i, row in dod.items():
        entries = {j: qq(v) for j, v in row.items() if v}
        if entries:
            clean[i] = entries
    return DomainMatrix.from_dod(clean, shape, QQ)


def dense_matrix(rows):
    """Exact matrix from a nested sequence of rationals."""
    rows = [list(r) for r in rows]
    ncols = len(rows[0]) if rows else 0
    dod = {i: dict(enumerate(r)) for i, r in enumerate(rows)}
    return sparse_matrix(dod, (len(rows), ncols))


def matrix_rows(matrix):
    """Nested list of QQ entries of a DomainMatrix."""
    nrows, ncols = matrix.shape
    dod = matrix.to_dod()
    return [[dod.get(i, {}).get(j, ZERO) for j in range(ncols)] for i in range(nrows)]


def commutator(a, b):
    """Matrix commutator ab - ba."""
    return a * b - b * a


def is_zero_matrix(matrix):
    return not matrix.to_dod()


def _index_columns(vectors):
    columns = {}
    for vec in vectors:
        for key in vec:
            if key not in columns:
                columns[key] = len(columns)
    return columns


def _as_matrix(vectors, columns):
    dod = {}
    for i, vec in enumerate(vectors):
        row = {columns[key]: coeff for key, coeff in vec.items() if coeff}
        if row:
            dod[i] = row
    return DomainMatrix.from_dod(dod, (len(vectors), len(columns)), QQ)


def rank_of(vectors):
    """
    Exact rank of a family of sparse vectors.

    Args:
        vectors (list): dicts key -> QQ; keys need only be hashable

    Returns:
        int: Dimension of their span
    """
    vectors = [v for v in vectors if v]
    if not vectors:
        return 0
    columns = _index_columns(vectors)
    return _as_matrix(vectors, columns).rank()


def in_span(basis, vector):
    """True iff vector is an exact linear combination of basis."""
    if not vector:
        return True
    return rank_of(list(basis) + [vector]) == rank_of(basis)


def nullspace_vectors(rows, ncols):
    """
    Basis of {x : M x = 0} for a sparse row list.

    Args:
        rows (list): each row a dict col -> QQ (cols in range(ncols))
        ncols (int): number of unknowns

    Returns:
        list: basis vectors as dicts col -> QQ
    """
    rows = [r for r in rows if r]
    if ncols == 0:
        return []
    if not rows:
        return [{j: ONE} for j in range(ncols)]
    dod = dict(enumerate(rows))
    kernel = DomainMatrix.from_dod(dod, (len(rows), ncols), QQ).nullspace()
    basis = kernel.to_dod()
    return [dict(basis[i]) for i in sorted(basis)]


def normalize_leading(vec, order=None):
    """
    Scale a sparse vector so its first nonzero entry is 1.

    Args:
        vec (dict): key -> QQ
        order: optional key function fixing which entry counts as first
    """
    if not vec:
        return {}
    lead = min(vec, key=order) if order is not None else min(vec)
    scale = ONE / vec[lead]
    return {key: coeff * scale for key, coeff in vec.items()}


class SpanBuilder:
    """
    Incrementally grown basis of a subspace in echelon form.

    Each stored vector has coefficient 1 at its pivot key and zero at the
    pivots of every vector stored before it.
    """

    def __init__(self):
        self._pivots = {}
        self._order = {}
        self._basis = []

    def __len__(self):
        return len(self._basis)

    @property
    def basis(self):
        return list(self._basis)

    def reduce(self, vec):
        """Remainder of vec after elimination against the stored basis."""
        vec = dict(vec)
        while True:
            hits = [key for key in vec if key in self._pivots]
            if not hits:
                return vec
            key = min(hits, key=self._order.__getitem__)
            factor = vec[key]
            for other, coeff in self._pivots[key].items():
                add_into(vec, other, -factor * coeff)

    def add(self, vec):
        """
        Add a vector to the span.

        Returns:
            dict or None: the new echelon vector, or None if vec was
            already in the span
        """
        rest = self.reduce(vec)
        if not rest:
            return None
        pivot = min(rest)
        scale = ONE / rest[pivot]
        rest = {key: coeff * scale for key, coeff in rest.items()}
        self._order[pivot] = len(self._basis)
        self._pivots[pivot] = rest
        self._basis.append(rest)
        return rest

    def contains(self, vec):
        return not self.reduce(vec)
