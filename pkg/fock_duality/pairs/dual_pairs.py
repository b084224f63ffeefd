"""
Dual Pair Realizations

This module builds the two commuting Lie algebras of each dual pair as
quadratic operators on the Fock space, together with the bilinear forms
they preserve, the reflection r, the involution sigma and the
highest-weight states phi_hw.

Side A is the d-side algebra (gl(d), o(d) or sp(d)) acting through
sum_tau sum_pq <p|x|q> a+_{p tau} a_{q tau}; side B is its partner in the
Fock space (gl(k), o(2k) or sp(2k)).
"""

import logging
from dataclasses import dataclass
from typing import NamedTuple

from sympy.polys.domains import QQ

from fock_duality.models.diagrams import PAIR_TYPES, GLDiagram, OGroupDiagram
from fock_duality.models.fock_space import (
    FockState,
    Ladder,
    ModeIndex,
    QuadraticOperator,
    SignedState,
    StateVector,
    linear_combination,
    number_operator,
)
from fock_duality.utils.config import default_max_dk
from fock_duality.utils.errors import (
    DimensionGuardError,
    DimensionMismatchError,
    InvalidDiagramError,
)
from fock_duality.utils.linalg import HALF, ONE, ZERO, add_into, matrix_rows, sparse_matrix

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class BilinearForm:
    """
    Non-singular bilinear form on C^d.

    Attributes:
        kind (str): 'symmetric' or 'skew'
        d (int): dimension
        entries (tuple): d x d rows of <b|pq>
        dual (tuple): d x d rows of <pq|b*>, with sum_r b_pr b*_qr = delta_pq
    """

    kind: str
    d: int
    entries: tuple
    dual: tuple

    def value(self, p, q):
        return self.entries[p - 1][q - 1]

    def star(self, p):
        """Partner index p* = d + 1 - p."""
        return self.d + 1 - p

    def beta(self, p):
        """The single nonzero entry <b|p p*> of row p."""
        return self.entries[p - 1][self.star(p) - 1]

    def to_dict(self):
        return {'kind': self.kind, 'd': self.d,
                'entries': [[int(x) for x in row] for row in self.entries]}


def standard_form(kind, d):
    """
    Anti-diagonal form: <b|pq> = delta_{p+q,d+1}, signed +1/-1 above/below
    the anti-diagonal's midpoint in the skew case.

    Raises:
        ValueError: For a skew form in odd dimension
    """
    if not isinstance(d, int) or d < 1:
        raise ValueError(f"d must be a positive integer, got {d!r}")
    if kind not in ('symmetric', 'skew'):
        raise ValueError(f"form kind must be 'symmetric' or 'skew', got {kind!r}")
    if kind == 'skew' and d % 2:
        raise ValueError(f"a non-singular skew form needs even d, got d={d}")
    dod = {}
    for p in range(1, d + 1):
        q = d + 1 - p
        sign = 1 if kind == 'symmetric' or p < q else -1
        dod[p - 1] = {q - 1: QQ(sign)}
    matrix = sparse_matrix(dod, (d, d))
    dual = matrix.inv().transpose()
    return BilinearForm(kind, d,
                        tuple(tuple(row) for row in matrix_rows(matrix)),
                        tuple(tuple(row) for row in matrix_rows(dual)))


def ordinal(tau, k):
    """Position of tau in the order -k, ..., -1, 1, ..., k (1-based)."""
    if tau == 0 or abs(tau) > k:
        raise ValueError(f"kind index must be in -{k}..-1, 1..{k}, got {tau}")
    return tau + k + 1 if tau < 0 else tau + k


def from_ordinal(i, k):
    return -(k + 1 - i) if i <= k else i - k


def _extended_creator(form, p, tau, k):
    # a+_{p,-tau} = beta_p a_{p*,tau}
    if tau > 0:
        return ONE, Ladder.create(p, tau, k)
    return form.beta(p), Ladder.annihilate(form.star(p), -tau, k)


def _extended_annihilator(form, p, tau, k):
    # a_{p,-tau} = beta_p a+_{p*,tau}
    if tau > 0:
        return ONE, Ladder.annihilate(p, tau, k)
    return form.beta(p), Ladder.create(form.star(p), -tau, k)


def f_operator(tau, upsilon, d, k, form=None):
    """
    f_{tau upsilon} = 1/2 sum_p [a+_{p tau}, a_{p upsilon}] with negative kinds
    read through the bilinear form.

    Args:
        tau, upsilon (int): kinds in -k..-1, 1..k
        d (int), k (int): Fock space dimensions
        form (BilinearForm): defaults to the symmetric standard form

    Raises:
        ValueError: For a zero or out-of-range kind index
    """
    ordinal(tau, k)
    ordinal(upsilon, k)
    form = form or standard_form('symmetric', d)
    terms = []
    for p in range(1, d + 1):
        s1, x = _extended_creator(form, p, tau, k)
        s2, y = _extended_annihilator(form, p, upsilon, k)
        c = HALF * s1 * s2
        terms.append((c, x, y))
        terms.append((-c, y, x))
    return linear_combination(d, k, terms)


def ebar_operator(p, q, d, k, form=None):
    """
    Realization of x_pq = e_pq - beta_p beta_q e_{q* p*}, the form-preserving
    part of e_pq (for the symmetric form, ebar_pq = e_pq - e_{q* p*}).
    """
    form = form or standard_form('symmetric', d)
    sign = form.beta(p) * form.beta(q)
    terms = []
    for tau in range(1, k + 1):
        terms.append((ONE, Ladder.create(p, tau, k), Ladder.annihilate(q, tau, k)))
        terms.append((-sign, Ladder.create(form.star(q), tau, k),
                      Ladder.annihilate(form.star(p), tau, k)))
    return linear_combination(d, k, terms)


def e_operator(p, q, d, k):
    """gl(d) generator e_pq realized as sum_tau a+_{p tau} a_{q tau}."""
    return linear_combination(
        d, k, [(ONE, Ladder.create(p, tau, k), Ladder.annihilate(q, tau, k))
               for tau in range(1, k + 1)])


def kind_operator(tau, upsilon, d, k):
    """gl(k) generator sum_p a+_{p tau} a_{p upsilon}."""
    return linear_combination(
        d, k, [(ONE, Ladder.create(p, tau, k), Ladder.annihilate(p, upsilon, k))
               for p in range(1, d + 1)])


class Generator(NamedTuple):
    label: str
    operator: QuadraticOperator


@dataclass(frozen=True)
class DualPairRealization:
    """
    Both sides of a dual pair realized on the Fock space.

    The Cartan tuples are ordered so that the side-B tuple reads as the w
    diagram: for o-o and sp-sp it is f_{-k,-k}, ..., f_{-1,-1}.
    """

    pair_type: str
    d: int
    k: int
    form: object
    side_a: tuple
    side_b: tuple
    cartan_a: tuple
    raising_a: tuple
    lowering_a: tuple
    cartan_b: tuple
    raising_b: tuple
    lowering_b: tuple

    @property
    def side_a_generators(self):
        return [g.operator for g in self.side_a]

    @property
    def side_b_generators(self):
        return [g.operator for g in self.side_b]

    @property
    def raising(self):
        return self.raising_a + self.raising_b

    @property
    def lowering(self):
        return self.lowering_a + self.lowering_b

    def to_dict(self):
        def dump(gens):
            return [{'label': g.label, 'operator': g.operator.to_dict()} for g in gens]

        def labels(gens):
            return [g.label for g in gens]

        return {
            'pair_type': self.pair_type, 'd': self.d, 'k': self.k,
            'form': self.form.to_dict() if self.form is not None else None,
            'side_a': dump(self.side_a), 'side_b': dump(self.side_b),
            'cartan_a': labels(self.cartan_a), 'raising_a': labels(self.raising_a),
            'cartan_b': labels(self.cartan_b), 'raising_b': labels(self.raising_b),
        }


def _check_request(pair_type, d, k, max_dk):
    if pair_type not in PAIR_TYPES:
        raise ValueError(f"pair type must be one of {', '.join(PAIR_TYPES)}, got {pair_type!r}")
    if not isinstance(d, int) or not isinstance(k, int) or d < 1 or k < 1:
        raise ValueError(f"d and k must be positive integers, got d={d!r}, k={k!r}")
    guard = default_max_dk() if max_dk is None else max_dk
    if d * k > guard:
        raise DimensionGuardError(f"d*k = {d * k} exceeds the Fock guard {guard}")
    if pair_type == 'sp-sp' and d % 2:
        raise ValueError(f"sp-sp needs even d, got d={d}")


def _split(gens, key):
    """Cartan / raising / lowering parts from a sign function on generator keys."""
    cartan = tuple(g for g, s in zip(gens, key) if s == 0)
    raising = tuple(g for g, s in zip(gens, key) if s > 0)
    lowering = tuple(g for g, s in zip(gens, key) if s < 0)
    return cartan, raising, lowering


def _orthosymplectic_side_b(form, d, k):
    limit = 2 * k if form.kind == 'symmetric' else 2 * k + 1
    gens, signs = [], []
    # ordinal order puts f_{-k,-k} first among the Cartan elements
    for i in range(1, 2 * k + 1):
        for j in range(1, 2 * k + 1):
            if i + j > limit:
                continue
            tau, upsilon = from_ordinal(i, k), from_ordinal(j, k)
            gens.append(Generator(f"f({tau},{upsilon})", f_operator(tau, upsilon, d, k, form)))
            signs.append((j > i) - (j < i))
    cartan, raising, lowering = _split(gens, signs)
    return tuple(gens), cartan, raising, lowering


def _orthosymplectic_side_a(form, d, k):
    limit = d if form.kind == 'symmetric' else d + 1
    name = 'ebar' if form.kind == 'symmetric' else 'x'
    gens, signs = [], []
    for p in range(1, d + 1):
        for q in range(1, d + 1):
            if p + q > limit:
                continue
            gens.append(Generator(f"{name}({p},{q})", ebar_operator(p, q, d, k, form)))
            signs.append((q > p) - (q < p))
    cartan, raising, lowering = _split(gens, signs)
    return tuple(gens), cartan, raising, lowering


def build_pair(pair_type, d, k, max_dk=None):
    """
    Realize a dual pair on the Fock space of d*k fermionic modes.

    Args:
        pair_type (str): 'gl-gl', 'sp-sp' or 'o-o'
        d (int): orbital dimension (even for sp-sp)
        k (int): number of kinds
        max_dk (int): optional guard override

    Returns:
        DualPairRealization

    Raises:
        DimensionGuardError: If d*k exceeds the guard
        ValueError: For an unknown pair type or odd d with sp-sp
    """
    _check_request(pair_type, d, k, max_dk)
    if pair_type == 'gl-gl':
        form = None
        gens_a, signs_a = [], []
        for p in range(1, d + 1):
            for q in range(1, d + 1):
                gens_a.append(Generator(f"e({p},{q})", e_operator(p, q, d, k)))
                signs_a.append((q > p) - (q < p))
        gens_b, signs_b = [], []
        for tau in range(1, k + 1):
            for upsilon in range(1, k + 1):
                gens_b.append(Generator(f"E({tau},{upsilon})", kind_operator(tau, upsilon, d, k)))
                signs_b.append((upsilon > tau) - (upsilon < tau))
        cartan_a, raising_a, lowering_a = _split(gens_a, signs_a)
        cartan_b, raising_b, lowering_b = _split(gens_b, signs_b)
        side_a, side_b = tuple(gens_a), tuple(gens_b)
    else:
        form = standard_form('symmetric' if pair_type == 'o-o' else 'skew', d)
        side_a, cartan_a, raising_a, lowering_a = _orthosymplectic_side_a(form, d, k)
        side_b, cartan_b, raising_b, lowering_b = _orthosymplectic_side_b(form, d, k)
    logger.info("built %s pair for d=%d, k=%d: %d + %d generators",
                pair_type, d, k, len(side_a), len(side_b))
    return DualPairRealization(pair_type, d, k, form, side_a, side_b,
                               cartan_a, raising_a, lowering_a,
                               cartan_b, raising_b, lowering_b)


@dataclass(frozen=True)
class FockInvolution:
    """
    Fock-space involution given by its action on creation operators.

    Attributes:
        name (str): 'r' or 'sigma'
        images (tuple): for each linear mode m, (sign, Ladder) image of a+_m;
            the image of a_m is the same with the dagger flipped
        vacuum_image (int): occupation mask of the image of the vacuum
    """

    name: str
    d: int
    k: int
    images: tuple
    vacuum_image: int = 0

    def ladder_image(self, ladder):
        sign, image = self.images[ladder.mode]
        return (sign, image) if ladder.dagger else (sign, image.flipped())

    def apply_bits(self, mask):
        """
        Image of a basis state.

        Returns:
            tuple or None: (sign, mask)
        """
        sign = 1
        current = self.vacuum_image
        for mode in range(self.d * self.k - 1, -1, -1):
            if not mask >> mode & 1:
                continue
            factor, ladder = self.images[mode]
            step = ladder.act_bits(current)
            if step is None:
                return None
            sign *= int(factor) * step[0]
            current = step[1]
        return sign, current

    def apply(self, state):
        if (state.d, state.k) != (self.d, self.k):
            raise DimensionMismatchError("state lives in a different Fock space")
        result = self.apply_bits(state.occupation)
        if result is None:
            return None
        return SignedState(result[0], FockState(self.d, self.k, result[1]))

    def apply_vector(self, vector):
        if (vector.d, vector.k) != (self.d, self.k):
            raise DimensionMismatchError("vector lives in a different Fock space")
        out = {}
        for mask, coeff in vector.bits.items():
            result = self.apply_bits(mask)
            if result is not None:
                add_into(out, result[1], coeff * result[0])
        return StateVector(self.d, self.k, out)

    def conjugate(self, op):
        """Symbolic image x -> s x s^-1 of a quadratic operator."""
        return op.substitute(self.ladder_image)

    def matrix(self, basis):
        index = {state.occupation: j for j, state in enumerate(basis)}
        dod = {}
        for j, state in enumerate(basis):
            sign, mask = self.apply_bits(state.occupation)
            dod.setdefault(index[mask], {})[j] = QQ(sign)
        return sparse_matrix(dod, (len(basis), len(basis)))


def reflection_r(d, k):
    """
    Reflection of O(d): negates the middle orbital for odd d, swaps
    orbitals d/2 and d/2 + 1 for even d.
    """
    images = []
    for mode in range(d * k):
        m = ModeIndex.from_linear(mode, k)
        p, sign = m.p, ONE
        if d % 2:
            if p == (d + 1) // 2:
                sign = -ONE
        elif p == d // 2:
            p = d // 2 + 1
        elif p == d // 2 + 1:
            p = d // 2
        images.append((sign, Ladder.create(p, m.tau, k)))
    return FockInvolution('r', d, k, tuple(images), 0)


def sigma(d, k):
    """
    Involution exchanging creation and annihilation for kind 1:
    a+_{p1} -> a_{p*1}, other kinds fixed, vacuum -> prod_p a+_{p1} |vac>.
    """
    images = []
    for mode in range(d * k):
        m = ModeIndex.from_linear(mode, k)
        if m.tau == 1:
            images.append((ONE, Ladder.annihilate(d + 1 - m.p, 1, k)))
        else:
            images.append((ONE, Ladder(True, mode)))
    full = 0
    for p in range(1, d + 1):
        full |= 1 << ModeIndex(p, 1).linear(k)
    return FockInvolution('sigma', d, k, tuple(images), full)


def phi_hw(diagram, d, k):
    """
    Highest-weight state: creation operators for the cells of the diagram
    applied in reading order, cell (p, j) creating a particle of orbital p
    and kind j.

    Args:
        diagram: OGroupDiagram (or GLDiagram for the gl and sp pairs)
        d (int), k (int): Fock space dimensions

    Returns:
        SignedState

    Raises:
        InvalidDiagramError: If the diagram is wider than k or deeper than d
    """
    if isinstance(diagram, OGroupDiagram):
        if diagram.d != d:
            raise DimensionMismatchError(f"diagram is for O({diagram.d}), not O({d})")
        shape = diagram.diagram
    elif isinstance(diagram, GLDiagram):
        shape = diagram
    else:
        shape = GLDiagram(tuple(diagram))
    if shape.width > k:
        raise InvalidDiagramError(f"{shape} has more than k={k} columns")
    if shape.depth > d:
        raise InvalidDiagramError(f"{shape} has more than d={d} rows")
    sign = 1
    mask = 0
    for p, j in reversed(shape.cells()):
        step = Ladder.create(p, j, k).act_bits(mask)
        sign *= step[0]
        mask = step[1]
    return SignedState(sign, FockState(d, k, mask))


def quasispin_operators(d):
    """
    Spin and quasispin triples inside side B of the o-o pair with k = 2.

    S moves particles between kind 1 (m_s = -1/2) and kind 2 (m_s = +1/2);
    Q is the sigma image of S.

    Returns:
        dict: 'S+', 'S-', 'S0', 'Q+', 'Q-', 'Q0' -> QuadraticOperator
    """
    k = 2
    s_plus = kind_operator(2, 1, d, k)
    s_minus = kind_operator(1, 2, d, k)
    s_zero = (number_operator(d, k, [2]) - number_operator(d, k, [1])) * HALF
    s = sigma(d, k)
    ops = {'S+': s_plus, 'S-': s_minus, 'S0': s_zero}
    for name in ('+', '-', '0'):
        ops['Q' + name] = s.conjugate(ops['S' + name])
    return ops


def cartan_weight(operators, mask):
    """
    Eigenvalues of diagonal operators on one basis state.

    Returns:
        tuple or None: QQ eigenvalues, None if some operator is not diagonal there
    """
    values = []
    for op in operators:
        image = op.act_bits(mask)
        if not image:
            values.append(ZERO)
        elif len(image) == 1 and mask in image:
            values.append(image[mask])
        else:
            return None
    return tuple(values)
