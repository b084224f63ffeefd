"""
Young Diagram Model

This module provides the diagram families used to label irreps: ordinary
(gl) diagrams, O(d) group diagrams obeying the two-column rule, and o(N)
algebra diagrams with possibly half-integral rows and a negative last row.
It also builds the pairing tables predicted by each duality rule.
"""

import logging
from dataclasses import dataclass, field

from sympy.polys.domains import QQ

from fock_duality.utils.errors import DimensionMismatchError, InvalidDiagramError
from fock_duality.utils.linalg import format_rational, qq

logger = logging.getLogger(__name__)

PAIR_TYPES = ('gl-gl', 'sp-sp', 'o-o')


def _strip(rows):
    rows = list(rows)
    while rows and rows[-1] == 0:
        rows.pop()
    return tuple(rows)


@dataclass(frozen=True)
class GLDiagram:
    """
    Ordinary Young diagram given by its row lengths.

    Trailing zero rows are dropped on construction, so (2, 1) and (2, 1, 0)
    are the same diagram; use padded() to get a fixed-length row tuple.
    """

    rows: tuple = ()

    def __post_init__(self):
        rows = tuple(self.rows)
        for r in rows:
            if not isinstance(r, int) or isinstance(r, bool) or r < 0:
                raise InvalidDiagramError(f"row lengths must be non-negative integers: {rows}")
        if any(a < b for a, b in zip(rows, rows[1:])):
            raise InvalidDiagramError(f"row lengths must be non-increasing: {rows}")
        object.__setattr__(self, 'rows', _strip(rows))

    @property
    def depth(self):
        return len(self.rows)

    @property
    def width(self):
        return self.rows[0] if self.rows else 0

    @property
    def size(self):
        return sum(self.rows)

    @property
    def columns(self):
        """Column depths, i.e. the rows of the conjugate diagram."""
        return tuple(sum(1 for r in self.rows if r > j) for j in range(self.width))

    def column_depth(self, j):
        """Depth of column j (1-based); zero beyond the width."""
        return sum(1 for r in self.rows if r >= j)

    def row(self, p):
        """Length of row p (1-based); zero beyond the depth."""
        return self.rows[p - 1] if 1 <= p <= self.depth else 0

    def padded(self, length):
        if self.depth > length:
            raise InvalidDiagramError(f"diagram {self.rows} has more than {length} rows")
        return self.rows + (0,) * (length - self.depth)

    def cells(self):
        """Cells (row, column) in reading order, both 1-based."""
        return [(p, j) for p, r in enumerate(self.rows, start=1) for j in range(1, r + 1)]

    def to_dict(self):
        return {'rows': list(self.rows)}

    def __str__(self):
        return "(" + ",".join(str(r) for r in self.rows) + ")"


def conjugate(diagram):
    """Transpose of a diagram: column depths become row lengths."""
    return GLDiagram(diagram.columns)


@dataclass(frozen=True)
class OGroupDiagram:
    """
    Diagram labelling an irrep of the full orthogonal group O(d).

    Any two different columns together are at most d cells deep.
    """

    rows: tuple
    d: int

    def __post_init__(self):
        shape = self.rows if isinstance(self.rows, GLDiagram) else GLDiagram(tuple(self.rows))
        object.__setattr__(self, 'rows', shape.rows)
        if not isinstance(self.d, int) or self.d < 1:
            raise InvalidDiagramError(f"orthogonal dimension must be positive, got {self.d!r}")
        cols = shape.columns + (0, 0)
        if cols[0] + cols[1] > self.d:
            raise InvalidDiagramError(
                f"{shape} is not an O({self.d}) diagram: first two columns hold "
                f"{cols[0]} + {cols[1]} > {self.d} cells")

    @property
    def diagram(self):
        return GLDiagram(self.rows)

    @property
    def first_column(self):
        return self.diagram.column_depth(1)

    @property
    def is_self_complementary(self):
        return 2 * self.first_column == self.d

    def to_dict(self):
        return {'rows': list(self.rows), 'd': self.d}

    def __str__(self):
        return str(self.diagram)


def complementary(diagram):
    """
    Complementary O(d) diagram: first-column depths of the pair add to d.

    Raises:
        InvalidDiagramError: If the input is not a valid O(d) diagram
    """
    if not isinstance(diagram, OGroupDiagram):
        raise InvalidDiagramError("complementary() needs an OGroupDiagram")
    cols = list(diagram.diagram.columns) or [0]
    cols[0] = diagram.d - cols[0]
    return OGroupDiagram(conjugate(GLDiagram(_strip(cols))).rows, diagram.d)


@dataclass(frozen=True)
class OAlgebraDiagram:
    """
    Highest weight of an o(N) irrep drawn as a generalized Young diagram.

    Attributes:
        w (tuple): floor(N/2) exact rationals, all integral or all
            half-odd-integral; non-increasing with w_{last-1} >= |w_last|
        dimension (int): N; only for even N may the last row be negative
    """

    w: tuple
    dimension: int

    def __post_init__(self):
        w = tuple(qq(x) for x in self.w)
        object.__setattr__(self, 'w', w)
        if not isinstance(self.dimension, int) or self.dimension < 1:
            raise InvalidDiagramError(f"o(N) needs N >= 1, got {self.dimension!r}")
        rank = self.dimension // 2
        if len(w) != rank:
            raise InvalidDiagramError(f"o({self.dimension}) diagrams have {rank} rows, got {len(w)}")
        if not w:
            return
        denominators = {x.denominator for x in w}
        if denominators not in ({1}, {2}):
            raise InvalidDiagramError(f"rows {self.describe()} mix integral and half-integral lengths")
        head, last = w[:-1], w[-1]
        if any(a < b for a, b in zip(head, head[1:])):
            raise InvalidDiagramError(f"rows {self.describe()} are not non-increasing")
        if head and head[-1] < abs(last):
            raise InvalidDiagramError(f"rows {self.describe()} violate w_(last-1) >= |w_last|")
        if self.dimension % 2 and last < 0:
            raise InvalidDiagramError(f"o({self.dimension}) diagrams have no negative rows")

    @property
    def spin(self):
        """True for half-odd-integral rows (spin irreps)."""
        return bool(self.w) and self.w[0].denominator == 2

    def describe(self):
        return "(" + ",".join(str(format_rational(x)) for x in self.w) + ")"

    def negated_last(self):
        if not self.w:
            return self
        return OAlgebraDiagram(self.w[:-1] + (-self.w[-1],), self.dimension)

    def to_dict(self):
        return {'w': [format_rational(x) for x in self.w], 'dimension': self.dimension,
                'spin': self.spin}

    def __str__(self):
        return self.describe()


def diagram_values(diagram, length=None):
    """Row values of any diagram as a QQ tuple, zero padded to `length`."""
    if isinstance(diagram, OAlgebraDiagram):
        return diagram.w
    rows = diagram.padded(length) if length is not None else diagram.rows
    return tuple(QQ(r) for r in rows)


@dataclass(frozen=True)
class PairingEntry:
    """
    One predicted (lambda, w) pair.

    The paired flags mark a last row whose positive length stands for the
    +/- pair of diagrams differing in the sign of that row.
    """

    lam: object
    w: object
    lam_paired: bool = False
    w_paired: bool = False

    def signed_pairs(self, lam_length=None, w_length=None):
        lam = diagram_values(self.lam, lam_length)
        w = diagram_values(self.w, w_length)
        lams = [lam]
        ws = [w]
        if self.lam_paired:
            lams.append(lam[:-1] + (-lam[-1],))
        if self.w_paired:
            ws.append(w[:-1] + (-w[-1],))
        return [(a, b) for a in lams for b in ws]

    def to_dict(self):
        def side(diagram):
            if isinstance(diagram, OAlgebraDiagram):
                return [format_rational(x) for x in diagram.w]
            return list(diagram.rows)
        return {'lambda': side(self.lam), 'w': side(self.w),
                'lambda_pm': self.lam_paired, 'w_pm': self.w_paired}


@dataclass(frozen=True)
class PairingTable:
    """Predicted list of partner diagrams for one duality type."""

    duality_type: str
    d: int
    k: int
    entries: tuple = field(default_factory=tuple)

    def __post_init__(self):
        if self.duality_type not in PAIR_TYPES:
            raise ValueError(f"unknown duality type {self.duality_type!r}")
        object.__setattr__(self, 'entries', tuple(self.entries))
        seen = set()
        for entry in self.entries:
            key = (entry.lam, entry.w)
            if key in seen:
                raise InvalidDiagramError(f"duplicate pairing entry {entry}")
            seen.add(key)

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    @property
    def cartan_lengths(self):
        """Lengths of the side-A and side-B Cartan tuples for this pair type."""
        if self.duality_type == 'gl-gl':
            return self.d, self.k
        return self.d // 2, self.k

    def signed_pairs(self):
        """Set of signed (lambda, w) Cartan tuples with +/- markers expanded."""
        lam_len, w_len = self.cartan_lengths
        out = set()
        for entry in self.entries:
            out.update(entry.signed_pairs(lam_len, w_len))
        return out

    def to_dict(self):
        return {'pair_type': self.duality_type, 'd': self.d, 'k': self.k,
                'entries': [entry.to_dict() for entry in self.entries]}


def diagrams_in_box(rows, cols):
    """
    Every diagram with at most `rows` rows and `cols` columns.

    Ordered by size, then by decreasing first row.
    """
    found = []

    def extend(prefix, limit):
        found.append(GLDiagram(tuple(prefix)))
        if len(prefix) == rows:
            return
        for r in range(limit, 0, -1):
            extend(prefix + [r], r)

    extend([], cols)
    return sorted(found, key=lambda lam: (lam.size, tuple(-x for x in lam.padded(rows))))


def o_group_diagrams(d, k):
    """All valid O(d) group diagrams with at most k columns."""
    found = []

    def extend(cols):
        if cols:
            found.append(OGroupDiagram(conjugate(GLDiagram(tuple(cols))).rows, d))
        else:
            found.append(OGroupDiagram((), d))
        if len(cols) == k:
            return
        if not cols:
            choices = range(1, d + 1)
        elif len(cols) == 1:
            choices = range(1, min(cols[0], d - cols[0]) + 1)
        else:
            choices = range(1, cols[-1] + 1)
        for depth in choices:
            extend(cols + [depth])

    extend([])
    return sorted(found, key=lambda lam: (lam.diagram.size, tuple(-x for x in lam.diagram.padded(d))))


def _check_dk(d, k):
    if not isinstance(d, int) or not isinstance(k, int) or d < 1 or k < 1:
        raise ValueError(f"d and k must be positive integers, got d={d!r}, k={k!r}")


def _frame_partner(columns, d, k):
    half = QQ(d, 2)
    return tuple(half - columns[k - tau] for tau in range(1, k + 1))


def frame_fill_pairs(d, k):
    """
    o(d) - o(2k) pairing: lambda and the rotated w fill a d/2 x k frame.

    Args:
        d (int): orthogonal dimension
        k (int): number of particle kinds

    Returns:
        PairingTable: one entry per lambda in the floor(d/2) x k box
    """
    _check_dk(d, k)
    depth = d // 2
    entries = []
    for lam in diagrams_in_box(depth, k):
        columns = tuple(lam.column_depth(j) for j in range(1, k + 1))
        w = OAlgebraDiagram(_frame_partner(columns, d, k), 2 * k)
        lam_alg = OAlgebraDiagram(tuple(QQ(r) for r in lam.padded(depth)), d)
        lam_paired = d % 2 == 0 and bool(lam_alg.w) and lam_alg.w[-1] != 0
        w_paired = w.w[-1] != 0
        entries.append(PairingEntry(lam_alg, w, lam_paired, w_paired))
    logger.debug("frame_fill_pairs(%d, %d): %d entries", d, k, len(entries))
    return PairingTable('o-o', d, k, entries)


def helmers_pairs(d, k):
    """
    sp(d) - sp(2k) pairing: lambda and the rotated w fill a d/2 x k rectangle.

    Raises:
        ValueError: If d is odd
    """
    _check_dk(d, k)
    if d % 2:
        raise ValueError(f"symplectic dimension must be even, got d={d}")
    half = d // 2
    entries = []
    for lam in diagrams_in_box(half, k):
        w = GLDiagram(tuple(half - lam.column_depth(k + 1 - tau) for tau in range(1, k + 1)))
        entries.append(PairingEntry(lam, w))
    return PairingTable('sp-sp', d, k, entries)


def conjugate_pairs(d, k):
    """gl(d) - gl(k) fermion pairing: every lambda in the d x k box with its conjugate."""
    _check_dk(d, k)
    entries = [PairingEntry(lam, conjugate(lam)) for lam in diagrams_in_box(d, k)]
    return PairingTable('gl-gl', d, k, entries)


def pairing_table(pair_type, d, k):
    """Prediction for a duality type."""
    if pair_type == 'o-o':
        return frame_fill_pairs(d, k)
    if pair_type == 'sp-sp':
        return helmers_pairs(d, k)
    if pair_type == 'gl-gl':
        return conjugate_pairs(d, k)
    raise ValueError(f"unknown duality type {pair_type!r}")


def gl_pair(diagram, d, k, statistics='fermion'):
    """
    gl(k) partner of a gl(d) irrep occurring in the Fock space.

    Args:
        diagram (GLDiagram): gl(d) label
        d (int), k (int): dimensions of the two sides
        statistics (str): 'fermion' or 'boson'

    Raises:
        InvalidDiagramError: If the diagram cannot occur
    """
    _check_dk(d, k)
    if statistics == 'fermion':
        if diagram.depth > d or diagram.width > k:
            raise InvalidDiagramError(
                f"{diagram} does not fit in {d} rows and {k} columns")
        return conjugate(diagram)
    if statistics == 'boson':
        if diagram.depth > min(d, k):
            raise InvalidDiagramError(f"{diagram} is deeper than min(d, k) = {min(d, k)}")
        return diagram
    raise ValueError(f"statistics must be 'fermion' or 'boson', got {statistics!r}")


def rowe_w_from_lambda(diagram, d, k):
    """
    o(2k) highest weight paired with an O(d) group diagram.

    w_tau = d/2 - (depth of column k + 1 - tau).

    Raises:
        InvalidDiagramError: If the diagram is wider than k
    """
    _check_dk(d, k)
    if diagram.d != d:
        raise DimensionMismatchError(f"diagram is for O({diagram.d}), not O({d})")
    shape = diagram.diagram
    if shape.width > k:
        raise InvalidDiagramError(f"{shape} has more than k={k} columns")
    columns = tuple(shape.column_depth(j) for j in range(1, k + 1))
    return OAlgebraDiagram(_frame_partner(columns, d, k), 2 * k)


def boson_dual_weights(diagram, d, k):
    """
    sp(2k) weights paired with a gl(d) diagram in the boson Fock space.

    w_tau = -lambda_{k+1-tau} - d/2; pure arithmetic on row lengths.
    """
    _check_dk(d, k)
    if diagram.depth > min(d, k):
        raise InvalidDiagramError(f"{diagram} is deeper than min(d, k) = {min(d, k)}")
    rows = diagram.padded(k)
    half = QQ(d, 2)
    return tuple(-QQ(rows[k - tau]) - half for tau in range(1, k + 1))


def o_group_to_algebra(diagram):
    """
    Restrict an O(d) irrep to o(d).

    Returns:
        tuple: one OAlgebraDiagram, or the +/- pair for a self-complementary diagram
    """
    if not isinstance(diagram, OGroupDiagram):
        raise InvalidDiagramError("o_group_to_algebra() needs an OGroupDiagram")
    d = diagram.d
    base = complementary(diagram) if 2 * diagram.first_column > d else diagram
    w = tuple(QQ(r) for r in base.diagram.padded(d)[:d // 2])
    algebra = OAlgebraDiagram(w, d)
    if diagram.is_self_complementary:
        return algebra, algebra.negated_last()
    return (algebra,)
