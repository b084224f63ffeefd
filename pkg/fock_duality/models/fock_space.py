"""
Fock Space Model

This module provides the fermionic Fock space over d*k modes, the states and
state vectors living in it, and exact quadratic operators acting on it.

Mode (p, tau) is linearized as (p - 1) * k + (tau - 1). A basis state is
stored as the bit mask of its occupied modes and stands for the product of
creation operators in ascending mode order applied to the vacuum.
"""

import logging
from dataclasses import dataclass

from fock_duality.utils.config import default_max_dk
from fock_duality.utils.errors import (
    BasisError,
    DimensionGuardError,
    DimensionMismatchError,
    ModeIndexError,
)
from fock_duality.utils.linalg import (
    ONE,
    ZERO,
    add_into,
    format_rational,
    normalize_leading,
    qq,
    rational_str,
    sparse_matrix,
)

logger = logging.getLogger(__name__)


def _check_dims(d, k):
    if not isinstance(d, int) or not isinstance(k, int) or d < 1 or k < 1:
        raise ValueError(f"d and k must be positive integers, got d={d!r}, k={k!r}")


def _parity_below(mask, mode):
    """Sign from anticommuting past the occupied modes below `mode`."""
    return -1 if (mask & ((1 << mode) - 1)).bit_count() & 1 else 1


def create_bits(mask, mode):
    """
    Apply a creation operator to a bit-mask state.

    Returns:
        tuple or None: (sign, new_mask), None if the mode is occupied
    """
    bit = 1 << mode
    if mask & bit:
        return None
    return _parity_below(mask, mode), mask | bit


def annihilate_bits(mask, mode):
    """
    Apply an annihilation operator to a bit-mask state.

    Returns:
        tuple or None: (sign, new_mask), None if the mode is empty
    """
    bit = 1 << mode
    if not mask & bit:
        return None
    return _parity_below(mask, mode), mask & ~bit


@dataclass(frozen=True, order=True)
class ModeIndex:
    """Single-particle mode: orbital p in 1..d, kind tau in 1..k."""

    p: int
    tau: int

    def linear(self, k):
        return (self.p - 1) * k + (self.tau - 1)

    @classmethod
    def from_linear(cls, mode, k):
        return cls(mode // k + 1, mode % k + 1)

    def check(self, d, k):
        if not (1 <= self.p <= d and 1 <= self.tau <= k):
            raise ModeIndexError(f"mode {self} outside d={d}, k={k}")

    def __str__(self):
        return f"({self.p},{self.tau})"


@dataclass(frozen=True)
class FockState:
    """
    Occupation-number basis state.

    Attributes:
        d (int): number of orbitals
        k (int): number of particle kinds
        occupation (int): bit mask over the d*k linearized modes
    """

    d: int
    k: int
    occupation: int = 0

    def __post_init__(self):
        _check_dims(self.d, self.k)
        if self.occupation < 0 or self.occupation >> (self.d * self.k):
            raise ModeIndexError(
                f"occupation mask {self.occupation:#x} exceeds {self.d * self.k} modes")

    @classmethod
    def from_modes(cls, d, k, modes):
        mask = 0
        for mode in modes:
            if not isinstance(mode, ModeIndex):
                mode = ModeIndex(*mode)
            mode.check(d, k)
            mask |= 1 << mode.linear(k)
        return cls(d, k, mask)

    @property
    def num_modes(self):
        return self.d * self.k

    @property
    def modes(self):
        """Occupied modes in canonical order."""
        return tuple(ModeIndex.from_linear(m, self.k)
                     for m in range(self.num_modes) if self.occupation >> m & 1)

    @property
    def particle_number(self):
        return self.occupation.bit_count()

    def is_occupied(self, mode):
        mode.check(self.d, self.k)
        return bool(self.occupation >> mode.linear(self.k) & 1)

    def kind_count(self, tau):
        """Number of occupied modes of kind tau."""
        return sum(1 for m in self.modes if m.tau == tau)

    def to_dict(self):
        return {'d': self.d, 'k': self.k,
                'modes': [[m.p, m.tau] for m in self.modes]}

    def __str__(self):
        if not self.occupation:
            return "|vac>"
        return "|" + ",".join(str(m) for m in self.modes) + ">"


@dataclass(frozen=True)
class SignedState:
    """Result of applying one ladder operator to a basis state."""

    sign: int
    state: FockState


def vacuum(d, k):
    """
    Empty state over d*k modes.

    Args:
        d (int): number of orbitals, >= 1
        k (int): number of particle kinds, >= 1
    """
    return FockState(d, k, 0)


def _signed(state, mode, op):
    mode.check(state.d, state.k)
    result = op(state.occupation, mode.linear(state.k))
    if result is None:
        return None
    sign, mask = result
    return SignedState(sign, FockState(state.d, state.k, mask))


def apply_creation(state, mode):
    """
    Apply a creation operator a+_mode.

    Returns:
        SignedState or None: None when the mode is already occupied

    Raises:
        ModeIndexError: If the mode lies outside the state's (d, k)
    """
    return _signed(state, mode, create_bits)


def apply_annihilation(state, mode):
    """
    Apply an annihilation operator a_mode.

    Returns:
        SignedState or None: None when the mode is empty
    """
    return _signed(state, mode, annihilate_bits)


def full_basis(d, k, max_dk=None):
    """
    Canonical basis of the whole Fock space, masks ascending.

    Raises:
        DimensionGuardError: If d*k exceeds the guard
    """
    _check_dims(d, k)
    guard = default_max_dk() if max_dk is None else max_dk
    if d * k > guard:
        raise DimensionGuardError(
            f"d*k = {d * k} exceeds the Fock guard {guard} (set FOCK_MAX_DK to change it)")
    return [FockState(d, k, mask) for mask in range(1 << (d * k))]


class StateVector:
    """
    Exact linear combination of basis states sharing (d, k).

    Coefficients are kept keyed by occupation mask; zero coefficients are
    never stored.
    """

    __slots__ = ('d', 'k', '_coeffs')

    def __init__(self, d, k, coeffs=None):
        _check_dims(d, k)
        self.d = d
        self.k = k
        self._coeffs = {}
        limit = 1 << (d * k)
        for mask, coeff in (coeffs or {}).items():
            if not 0 <= mask < limit:
                raise ModeIndexError(f"mask {mask:#x} outside d={d}, k={k}")
            add_into(self._coeffs, mask, qq(coeff))

    @classmethod
    def from_state(cls, state, coeff=1):
        return cls(state.d, state.k, {state.occupation: coeff})

    @classmethod
    def from_signed(cls, signed, d, k):
        if signed is None:
            return cls(d, k)
        return cls(d, k, {signed.state.occupation: signed.sign})

    @classmethod
    def from_terms(cls, d, k, terms):
        coeffs = {}
        for state, coeff in terms.items():
            if (state.d, state.k) != (d, k):
                raise DimensionMismatchError("state dimensions differ from vector")
            add_into(coeffs, state.occupation, qq(coeff))
        return cls(d, k, coeffs)

    @property
    def bits(self):
        """Copy of the mask -> coefficient table."""
        return dict(self._coeffs)

    @property
    def terms(self):
        return {FockState(self.d, self.k, mask): self._coeffs[mask]
                for mask in sorted(self._coeffs)}

    def coefficient(self, state):
        return self._coeffs.get(state.occupation, ZERO)

    @property
    def is_zero(self):
        return not self._coeffs

    def support(self):
        return [FockState(self.d, self.k, mask) for mask in sorted(self._coeffs)]

    def normalized(self):
        """Copy scaled so the first nonzero coefficient is +1."""
        return StateVector(self.d, self.k, normalize_leading(self._coeffs))

    def _check(self, other):
        if not isinstance(other, StateVector):
            return NotImplemented
        if (self.d, self.k) != (other.d, other.k):
            raise DimensionMismatchError("state vectors live in different Fock spaces")
        return None

    def __add__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        out = dict(self._coeffs)
        for mask, coeff in other._coeffs.items():
            add_into(out, mask, coeff)
        return StateVector(self.d, self.k, out)

    def __sub__(self, other):
        return self + other * -1

    def __neg__(self):
        return self * -1

    def __mul__(self, scalar):
        scalar = qq(scalar)
        return StateVector(self.d, self.k,
                           {m: c * scalar for m, c in self._coeffs.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, StateVector):
            return NotImplemented
        return (self.d, self.k) == (other.d, other.k) and self._coeffs == other._coeffs

    def __hash__(self):
        return hash((self.d, self.k, frozenset(self._coeffs.items())))

    def __len__(self):
        return len(self._coeffs)

    def __iter__(self):
        for mask in sorted(self._coeffs):
            yield FockState(self.d, self.k, mask), self._coeffs[mask]

    def to_dict(self):
        return {
            'd': self.d,
            'k': self.k,
            'terms': [{'modes': [[m.p, m.tau] for m in state.modes],
                       'coeff': format_rational(coeff)}
                      for state, coeff in self],
        }

    def __repr__(self):
        return f"StateVector({self})"

    def __str__(self):
        if not self._coeffs:
            return "0"
        parts = []
        for state, coeff in self:
            parts.append(f"{rational_str(coeff)}*{state}")
        return " + ".join(parts)


@dataclass(frozen=True)
class Ladder:
    """A single creation (dagger=True) or annihilation operator on a linear mode."""

    dagger: bool
    mode: int

    @classmethod
    def create(cls, p, tau, k):
        return cls(True, ModeIndex(p, tau).linear(k))

    @classmethod
    def annihilate(cls, p, tau, k):
        return cls(False, ModeIndex(p, tau).linear(k))

    def flipped(self):
        return Ladder(not self.dagger, self.mode)

    def act_bits(self, mask):
        return create_bits(mask, self.mode) if self.dagger else annihilate_bits(mask, self.mode)

    def label(self, k):
        mode = ModeIndex.from_linear(self.mode, k)
        return ("a+" if self.dagger else "a") + str(mode)


def anticommutator(x, y):
    """Scalar {x, y} of two ladder operators."""
    if x.mode == y.mode and x.dagger != y.dagger:
        return ONE
    return ZERO


class _Accumulator:
    """Mutable normal-ordering workspace behind QuadraticOperator."""

    def __init__(self, d, k):
        self.d = d
        self.k = k
        self.cc = {}
        self.ca = {}
        self.aa = {}
        self.scalar = ZERO

    def add_product(self, coeff, x, y):
        """Add coeff * x y in normal order."""
        if not coeff:
            return
        if x.dagger and y.dagger:
            if x.mode == y.mode:
                return
            if x.mode < y.mode:
                add_into(self.cc, (x.mode, y.mode), coeff)
            else:
                add_into(self.cc, (y.mode, x.mode), -coeff)
        elif x.dagger:
            add_into(self.ca, (x.mode, y.mode), coeff)
        elif y.dagger:
            # a_m a+_n = delta_mn - a+_n a_m
            if x.mode == y.mode:
                self.scalar += coeff
            add_into(self.ca, (y.mode, x.mode), -coeff)
        else:
            if x.mode == y.mode:
                return
            if x.mode < y.mode:
                add_into(self.aa, (x.mode, y.mode), coeff)
            else:
                add_into(self.aa, (y.mode, x.mode), -coeff)

    def add_operator(self, op, scale=ONE):
        for coeff, x, y in op.terms():
            self.add_product(coeff * scale, x, y)
        self.scalar += op.scalar * scale

    def build(self):
        return QuadraticOperator(self.d, self.k, self.cc, self.ca, self.aa, self.scalar)


class QuadraticOperator:
    """
    Normal-ordered even fermionic operator.

    cc[(m, n)] multiplies a+_m a+_n (m < n), ca[(m, n)] multiplies a+_m a_n,
    aa[(m, n)] multiplies a_m a_n (m < n), plus a scalar. The form is unique,
    so equality is plain comparison of the tables.
    """

    __slots__ = ('d', 'k', '_cc', '_ca', '_aa', '_scalar', '_compiled')

    def __init__(self, d, k, cc=None, ca=None, aa=None, scalar=0):
        _check_dims(d, k)
        self.d = d
        self.k = k
        n = d * k
        self._cc = self._clean(cc, n, ordered=True)
        self._ca = self._clean(ca, n, ordered=False)
        self._aa = self._clean(aa, n, ordered=True)
        self._scalar = qq(scalar)
        self._compiled = None

    @staticmethod
    def _clean(table, n, ordered):
        out = {}
        for (m1, m2), coeff in (table or {}).items():
            if not (0 <= m1 < n and 0 <= m2 < n):
                raise ModeIndexError(f"mode pair {(m1, m2)} outside {n} modes")
            if ordered and not m1 < m2:
                raise ValueError(f"pair {(m1, m2)} must be strictly ascending")
            add_into(out, (m1, m2), qq(coeff))
        return out

    @classmethod
    def zero(cls, d, k):
        return cls(d, k)

    @classmethod
    def constant(cls, d, k, value):
        return cls(d, k, scalar=value)

    @property
    def cc(self):
        return dict(self._cc)

    @property
    def ca(self):
        return dict(self._ca)

    @property
    def aa(self):
        return dict(self._aa)

    @property
    def scalar(self):
        return self._scalar

    @property
    def is_zero(self):
        return not (self._cc or self._ca or self._aa or self._scalar)

    def terms(self):
        """Yield (coeff, x, y) for every bilinear monomial x y."""
        for (m1, m2), coeff in sorted(self._cc.items()):
            yield coeff, Ladder(True, m1), Ladder(True, m2)
        for (m1, m2), coeff in sorted(self._ca.items()):
            yield coeff, Ladder(True, m1), Ladder(False, m2)
        for (m1, m2), coeff in sorted(self._aa.items()):
            yield coeff, Ladder(False, m1), Ladder(False, m2)

    def _same_space(self, other):
        if (self.d, self.k) != (other.d, other.k):
            raise DimensionMismatchError(
                f"operators on d={self.d},k={self.k} and d={other.d},k={other.k}")

    def _combine(self, other, scale):
        self._same_space(other)
        acc = _Accumulator(self.d, self.k)
        acc.add_operator(self)
        acc.add_operator(other, scale)
        return acc.build()

    def __add__(self, other):
        if not isinstance(other, QuadraticOperator):
            return NotImplemented
        return self._combine(other, ONE)

    def __sub__(self, other):
        if not isinstance(other, QuadraticOperator):
            return NotImplemented
        return self._combine(other, -ONE)

    def __neg__(self):
        return self * -1

    def __mul__(self, scalar):
        scalar = qq(scalar)
        return QuadraticOperator(
            self.d, self.k,
            {key: c * scalar for key, c in self._cc.items()},
            {key: c * scalar for key, c in self._ca.items()},
            {key: c * scalar for key, c in self._aa.items()},
            self._scalar * scalar)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, QuadraticOperator):
            return NotImplemented
        return ((self.d, self.k) == (other.d, other.k)
                and self._cc == other._cc and self._ca == other._ca
                and self._aa == other._aa and self._scalar == other._scalar)

    def __hash__(self):
        return hash((self.d, self.k, frozenset(self._cc.items()),
                     frozenset(self._ca.items()), frozenset(self._aa.items()),
                     self._scalar))

    def coefficient_vector(self):
        """Flat sparse view used for span and rank tests."""
        vec = {}
        for (m1, m2), coeff in self._cc.items():
            vec[('cc', m1, m2)] = coeff
        for (m1, m2), coeff in self._ca.items():
            vec[('ca', m1, m2)] = coeff
        for (m1, m2), coeff in self._aa.items():
            vec[('aa', m1, m2)] = coeff
        if self._scalar:
            vec[('1', 0, 0)] = self._scalar
        return vec

    def substitute(self, image):
        """
        Image of the operator under a ladder-level automorphism.

        Args:
            image: callable Ladder -> (sign, Ladder)

        Returns:
            QuadraticOperator: sum of coeff * image(x) image(y), re-ordered
        """
        acc = _Accumulator(self.d, self.k)
        for coeff, x, y in self.terms():
            sx, lx = image(x)
            sy, ly = image(y)
            acc.add_product(coeff * sx * sy, lx, ly)
        acc.scalar += self._scalar
        return acc.build()

    def _compile(self):
        if self._compiled is None:
            # rightmost factor acts first
            self._compiled = tuple((coeff, y, x) for coeff, x, y in self.terms())
        return self._compiled

    def act_bits(self, mask):
        """
        Image of one basis state.

        Returns:
            dict: mask -> QQ coefficient
        """
        out = {}
        if self._scalar:
            out[mask] = self._scalar
        for coeff, first, second in self._compile():
            step = first.act_bits(mask)
            if step is None:
                continue
            sign1, mid = step
            step = second.act_bits(mid)
            if step is None:
                continue
            sign2, end = step
            add_into(out, end, coeff if sign1 * sign2 > 0 else -coeff)
        return out

    def to_dict(self):
        terms = []
        for coeff, x, y in self.terms():
            kind = ('c' if x.dagger else 'a') + ('c' if y.dagger else 'a')
            modes = [ModeIndex.from_linear(x.mode, self.k), ModeIndex.from_linear(y.mode, self.k)]
            terms.append({'op': kind,
                          'modes': [[m.p, m.tau] for m in modes],
                          'coeff': format_rational(coeff)})
        return {'d': self.d, 'k': self.k,
                'scalar': format_rational(self._scalar), 'terms': terms}

    @classmethod
    def from_dict(cls, data):
        d, k = int(data['d']), int(data['k'])
        acc = _Accumulator(d, k)
        for term in data.get('terms', []):
            kind = term['op']
            if kind not in ('cc', 'ca', 'aa'):
                raise ValueError(f"unknown monomial kind {kind!r}")
            (p1, t1), (p2, t2) = term['modes']
            for p, t in ((p1, t1), (p2, t2)):
                ModeIndex(p, t).check(d, k)
            x = Ladder(kind[0] == 'c', ModeIndex(p1, t1).linear(k))
            y = Ladder(kind[1] == 'c', ModeIndex(p2, t2).linear(k))
            acc.add_product(qq(term['coeff']), x, y)
        acc.scalar += qq(data.get('scalar', 0))
        return acc.build()

    def __repr__(self):
        return f"QuadraticOperator({self})"

    def __str__(self):
        parts = [f"{rational_str(coeff)}*{x.label(self.k)}{y.label(self.k)}"
                 for coeff, x, y in self.terms()]
        if self._scalar or not parts:
            parts.append(rational_str(self._scalar))
        return " + ".join(parts)


def product(x, y, d, k, coeff=1):
    """Normal-ordered QuadraticOperator for coeff * x y."""
    acc = _Accumulator(d, k)
    acc.add_product(qq(coeff), x, y)
    return acc.build()


def linear_combination(d, k, terms, scalar=0):
    """
    Operator from an iterable of (coeff, x, y) ladder products.

    Args:
        d (int), k (int): Fock space dimensions
        terms: iterable of (coeff, Ladder, Ladder)
        scalar: constant term
    """
    acc = _Accumulator(d, k)
    for coeff, x, y in terms:
        acc.add_product(qq(coeff), x, y)
    acc.scalar += qq(scalar)
    return acc.build()


def number_operator(d, k, kinds=None):
    """Sum of a+_{p tau} a_{p tau} over all p and the given kinds (default all)."""
    _check_dims(d, k)
    kinds = range(1, k + 1) if kinds is None else kinds
    ca = {}
    for tau in kinds:
        for p in range(1, d + 1):
            m = ModeIndex(p, tau)
            m.check(d, k)
            ca[(m.linear(k), m.linear(k))] = ONE
    return QuadraticOperator(d, k, ca=ca)


def bracket(a, b):
    """
    Symbolic commutator [a, b] of two quadratic operators.

    Uses [xy, zw] = {y,z} xw - {y,w} xz + {x,z} wy - {x,w} zy, valid for
    fermionic ladder operators whose anticommutators are scalars.
    """
    a._same_space(b)
    acc = _Accumulator(a.d, a.k)
    b_terms = list(b.terms())
    for ca_, x, y in a.terms():
        for cb_, z, w in b_terms:
            c = ca_ * cb_
            acc.add_product(c * anticommutator(y, z), x, w)
            acc.add_product(-c * anticommutator(y, w), x, z)
            acc.add_product(c * anticommutator(x, z), w, y)
            acc.add_product(-c * anticommutator(x, w), z, y)
    return acc.build()


def apply_quadratic(op, vector):
    """
    Apply an operator to a state vector.

    Raises:
        DimensionMismatchError: If the operator and vector live in different spaces
    """
    if (op.d, op.k) != (vector.d, vector.k):
        raise DimensionMismatchError("operator and vector live in different Fock spaces")
    out = {}
    for mask, coeff in vector.bits.items():
        for target, value in op.act_bits(mask).items():
            add_into(out, target, coeff * value)
    return StateVector(op.d, op.k, out)


def matrix_of(op, basis):
    """
    Exact matrix of an operator on an ordered list of basis states.

    Args:
        op (QuadraticOperator): operator to realize
        basis (list): distinct FockStates of op's (d, k)

    Returns:
        DomainMatrix: column j holds the image of basis[j]

    Raises:
        BasisError: If an image leaves the span of the basis
    """
    index = {}
    for j, state in enumerate(basis):
        if (state.d, state.k) != (op.d, op.k):
            raise DimensionMismatchError("basis state outside the operator's Fock space")
        if state.occupation in index:
            raise ValueError(f"basis state {state} repeated")
        index[state.occupation] = j
    dod = {}
    for j, state in enumerate(basis):
        for target, value in op.act_bits(state.occupation).items():
            i = index.get(target)
            if i is None:
                raise BasisError(
                    f"image of {state} has weight on {FockState(op.d, op.k, target)} outside the basis")
            dod.setdefault(i, {})[j] = value
    return sparse_matrix(dod, (len(basis), len(basis)))
