"""
Tensor Model

Small-scale tensors T(p_1, ..., p_n) with indexes in 1..d, the reading-order
Young tableau, Young symmetrizers and the gl(d) / GL(d) actions. Used as an
independent cross-check of the diagram rules away from the Fock space.
"""

import logging
from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations, product

from fock_duality.models.diagrams import GLDiagram, OGroupDiagram
from fock_duality.utils.config import default_tensor_max_entries
from fock_duality.utils.errors import (
    ConsistencyError,
    DimensionGuardError,
    DimensionMismatchError,
)
from fock_duality.utils.linalg import ONE, ZERO, add_into, format_rational, matrix_rows, qq

logger = logging.getLogger(__name__)


def check_tensor_scale(n, d, max_entries=None):
    """
    Raises:
        DimensionGuardError: If d**n exceeds the tensor guard
    """
    guard = default_tensor_max_entries() if max_entries is None else max_entries
    if d ** n > guard:
        raise DimensionGuardError(f"d**n = {d}**{n} exceeds the tensor guard {guard}")


class Tensor:
    """
    Sparse rank-n tensor over index range 1..d with exact entries.

    Rank 0 is allowed; its only index tuple is the empty one.
    """

    __slots__ = ('n', 'd', '_values')

    def __init__(self, n, d, values=None):
        if not isinstance(n, int) or n < 0 or not isinstance(d, int) or d < 1:
            raise ValueError(f"need n >= 0 and d >= 1, got n={n!r}, d={d!r}")
        self.n = n
        self.d = d
        self._values = {}
        for index, value in (values or {}).items():
            index = tuple(index)
            if len(index) != n or any(not 1 <= p <= d for p in index):
                raise DimensionMismatchError(f"index {index} is not in {{1..{d}}}^{n}")
            add_into(self._values, index, qq(value))

    @classmethod
    def zero(cls, n, d):
        return cls(n, d)

    @classmethod
    def unit(cls, index, d):
        index = tuple(index)
        return cls(len(index), d, {index: ONE})

    @property
    def values(self):
        return dict(self._values)

    def __getitem__(self, index):
        return self._values.get(tuple(index), ZERO)

    @property
    def is_zero(self):
        return not self._values

    def _check(self, other):
        if (self.n, self.d) != (other.n, other.d):
            raise DimensionMismatchError(
                f"tensors of shape (n={self.n}, d={self.d}) and (n={other.n}, d={other.d})")

    def __add__(self, other):
        if not isinstance(other, Tensor):
            return NotImplemented
        self._check(other)
        out = dict(self._values)
        for index, value in other._values.items():
            add_into(out, index, value)
        return Tensor(self.n, self.d, out)

    def __sub__(self, other):
        if not isinstance(other, Tensor):
            return NotImplemented
        return self + other * -1

    def __neg__(self):
        return self * -1

    def __mul__(self, scalar):
        scalar = qq(scalar)
        return Tensor(self.n, self.d, {i: v * scalar for i, v in self._values.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, Tensor):
            return NotImplemented
        return (self.n, self.d) == (other.n, other.d) and self._values == other._values

    def __hash__(self):
        return hash((self.n, self.d, frozenset(self._values.items())))

    def permute(self, perm):
        """
        Slot permutation: (pi T)(p_1, ..., p_n) = T(p_pi(1), ..., p_pi(n)).

        Args:
            perm (tuple): 0-based images, perm[i] = pi(i)
        """
        out = {}
        for q, value in self._values.items():
            p = [0] * self.n
            for i, target in enumerate(perm):
                p[target] = q[i]
            out[tuple(p)] = value
        return Tensor(self.n, self.d, out)

    def to_dict(self):
        return {'n': self.n, 'd': self.d,
                'entries': [{'index': list(i), 'value': format_rational(v)}
                            for i, v in sorted(self._values.items())]}

    def __repr__(self):
        return f"Tensor(n={self.n}, d={self.d}, {len(self._values)} entries)"


@dataclass(frozen=True)
class Tableau:
    """Reading-order tableau: cells of the shape numbered 1..n row by row."""

    shape: GLDiagram

    @property
    def filling(self):
        rows, start = [], 1
        for r in self.shape.rows:
            rows.append(tuple(range(start, start + r)))
            start += r
        return tuple(rows)

    @property
    def size(self):
        return self.shape.size

    def row_of(self):
        """rho(i) for i = 1..n: the row holding cell number i."""
        return tuple(p for p, _ in self.shape.cells())

    def row_slots(self):
        """0-based slot sets of the rows."""
        return [tuple(i - 1 for i in row) for row in self.filling]

    def column_slots(self):
        filling = self.filling
        return [tuple(filling[p][j] - 1 for p in range(len(filling)) if len(filling[p]) > j)
                for j in range(self.shape.width)]


def _sign(perm):
    seen, sign = set(), 1
    for start in range(len(perm)):
        if start in seen:
            continue
        length, i = 0, start
        while i not in seen:
            seen.add(i)
            i = perm[i]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def _subgroup(n, blocks):
    """All permutations of range(n) preserving each block setwise."""
    found = []
    for images in product(*(permutations(block) for block in blocks)):
        perm = list(range(n))
        for block, image in zip(blocks, images):
            for src, dst in zip(block, image):
                perm[src] = dst
        found.append(tuple(perm))
    return found


def _as_diagram(diagram):
    if isinstance(diagram, GLDiagram):
        return diagram
    if isinstance(diagram, OGroupDiagram):
        return diagram.diagram
    return GLDiagram(tuple(diagram))


def _unnormalized_young(shape, tensor):
    tableau = Tableau(shape)
    rows = _subgroup(tensor.n, tableau.row_slots())
    cols = _subgroup(tensor.n, tableau.column_slots())
    symmetrized = Tensor.zero(tensor.n, tensor.d)
    for perm in rows:
        symmetrized = symmetrized + tensor.permute(perm)
    out = Tensor.zero(tensor.n, tensor.d)
    for perm in cols:
        out = out + symmetrized.permute(perm) * _sign(perm)
    return out


@lru_cache(maxsize=None)
def young_scalar(rows):
    """
    c_lambda with (c Y0)^2 = c Y0, from Y0^2 = kappa Y0 on a faithful input.

    Raises:
        ConsistencyError: If kappa comes out zero
    """
    shape = GLDiagram(rows)
    n = shape.size
    if n == 0:
        return ONE
    seed = Tensor.unit(tuple(range(1, n + 1)), n)
    once = _unnormalized_young(shape, seed)
    twice = _unnormalized_young(shape, once)
    index = min(once.values)
    kappa = twice[index] / once[index]
    if not kappa or twice != once * kappa:
        raise ConsistencyError(f"Young symmetrizer of {shape} is not quasi-idempotent")
    return ONE / kappa


def young_symmetrize(diagram, tensor):
    """
    Apply Y_lambda = c_lambda sum_s sgn(s) s sum_t t (t over row, s over column
    permutations of the reading-order tableau).

    Raises:
        DimensionMismatchError: If the tensor rank differs from |lambda|
    """
    shape = _as_diagram(diagram)
    if tensor.n != shape.size:
        raise DimensionMismatchError(f"tensor of rank {tensor.n} for a diagram of size {shape.size}")
    return _unnormalized_young(shape, tensor) * young_scalar(shape.rows)


def chi_lambda(diagram, d, max_entries=None):
    """
    Unit tensor at (rho(1), ..., rho(n)), zero when lambda has more than d rows.

    Args:
        diagram: GLDiagram, OGroupDiagram or row tuple
        d (int): index range
    """
    shape = _as_diagram(diagram)
    check_tensor_scale(shape.size, d, max_entries)
    if shape.depth > d:
        return Tensor.zero(shape.size, d)
    return Tensor.unit(Tableau(shape).row_of(), d)


def chi_hw(diagram, d, max_entries=None):
    """Highest-weight tensor Y_lambda chi_lambda."""
    return young_symmetrize(diagram, chi_lambda(diagram, d, max_entries))


def chi_row_moved(diagram, d, max_entries=None):
    """
    Highest-weight tensor of a self-complementary diagram with row d/2
    moved one step down (index d/2 replaced by d/2 + 1).
    """
    shape = _as_diagram(diagram)
    if d % 2 or shape.column_depth(1) != d // 2:
        raise ValueError(f"{shape} is not self-complementary for O({d})")
    check_tensor_scale(shape.size, d, max_entries)
    index = tuple(d // 2 + 1 if p == d // 2 else p for p in Tableau(shape).row_of())
    return young_symmetrize(shape, Tensor.unit(index, d))


def _rows_of(matrix, d):
    rows = matrix_rows(matrix) if hasattr(matrix, 'to_dod') else [[qq(x) for x in r] for r in matrix]
    if len(rows) != d or any(len(r) != d for r in rows):
        raise DimensionMismatchError(f"expected a {d} x {d} matrix")
    return rows


def gl_act(matrix, tensor):
    """
    Derivation action of x in gl(d):
    (x T)(p_1..p_n) = sum_i sum_q x_{p_i q} T(.., q at slot i, ..).
    An empty sum (rank 0) gives zero.
    """
    rows = _rows_of(matrix, tensor.d)
    out = {}
    for index, value in tensor.values.items():
        for slot, q in enumerate(index):
            for p in range(1, tensor.d + 1):
                coeff = rows[p - 1][q - 1]
                if coeff:
                    add_into(out, index[:slot] + (p,) + index[slot + 1:], coeff * value)
    return Tensor(tensor.n, tensor.d, out)


def group_act(matrix, tensor):
    """Tensor-product action (g T)(p) = sum_q prod_i g_{p_i q_i} T(q)."""
    rows = _rows_of(matrix, tensor.d)
    columns = [[(p, rows[p - 1][q - 1]) for p in range(1, tensor.d + 1) if rows[p - 1][q - 1]]
               for q in range(1, tensor.d + 1)]
    out = {}
    for index, value in tensor.values.items():
        for choice in product(*(columns[q - 1] for q in index)):
            coeff = value
            for _, g in choice:
                coeff *= g
            add_into(out, tuple(p for p, _ in choice), coeff)
    return Tensor(tensor.n, tensor.d, out)


def reflection_matrix(d):
    """Matrix of r: -1 on the middle orbital for odd d, swap of d/2 and d/2 + 1 for even d."""
    rows = [[ZERO] * d for _ in range(d)]
    for p in range(1, d + 1):
        rows[p - 1][p - 1] = ONE
    if d % 2:
        mid = (d + 1) // 2
        rows[mid - 1][mid - 1] = -ONE
    else:
        a, b = d // 2 - 1, d // 2
        rows[a][a] = rows[b][b] = ZERO
        rows[a][b] = rows[b][a] = ONE
    return rows


def r_act(tensor):
    return group_act(reflection_matrix(tensor.d), tensor)


def unit_matrix(p, q, d):
    rows = [[ZERO] * d for _ in range(d)]
    rows[p - 1][q - 1] = ONE
    return rows


def ebar_matrix(p, q, form):
    """x_pq = e_pq - beta_p beta_q e_{q* p*} as a d x d matrix."""
    d = form.d
    rows = unit_matrix(p, q, d)
    sign = form.beta(p) * form.beta(q)
    rows[form.star(q) - 1][form.star(p) - 1] -= sign
    return rows


def is_traceless(tensor, form):
    """
    True iff sum_{p,q} <b|pq> T(.., p at slot i, .., q at slot j, ..) = 0
    for every slot pair i < j. Rank below 2 is vacuously traceless.
    """
    if form.d != tensor.d:
        raise DimensionMismatchError(f"form on C^{form.d}, tensor over 1..{tensor.d}")
    for i in range(tensor.n):
        for j in range(i + 1, tensor.n):
            contraction = {}
            for index, value in tensor.values.items():
                b = form.value(index[i], index[j])
                if b:
                    rest = index[:i] + index[i + 1:j] + index[j + 1:]
                    add_into(contraction, rest, b * value)
            if contraction:
                logger.debug("trace over slots %d, %d does not vanish", i + 1, j + 1)
                return False
    return True


def eigenvalue(tensor, image):
    """
    Scalar c with image == c * tensor.

    Returns:
        QQ or None: None if image is not a multiple of tensor
    """
    if tensor.is_zero:
        return None
    values = tensor.values
    index = min(values)
    c = image[index] / values[index]
    return c if image == tensor * c else None
