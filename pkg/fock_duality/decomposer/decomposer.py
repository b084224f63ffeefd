"""
Fock Space Decomposer

This module decomposes the full Fock space under a dual pair by brute force:
joint Cartan weights, highest-weight vectors from exact nullspaces, the
modules they generate, and a comparison with the pairing tables of the
diagram model.
"""

import logging
from collections import Counter
from dataclasses import dataclass, field, replace

from sympy.polys.domains import QQ

from fock_duality.models.diagrams import (
    GLDiagram,
    OAlgebraDiagram,
    OGroupDiagram,
    complementary,
    pairing_table,
    rowe_w_from_lambda,
)
from fock_duality.models.fock_space import FockState, StateVector, full_basis
from fock_duality.pairs.dual_pairs import (
    build_pair,
    cartan_weight,
    quasispin_operators,
    reflection_r,
    sigma,
)
from fock_duality.utils.errors import ConsistencyError, InvalidDiagramError
from fock_duality.utils.linalg import (
    ZERO,
    SpanBuilder,
    add_into,
    format_rational,
    nullspace_vectors,
    normalize_leading,
    rank_of,
)

logger = logging.getLogger(__name__)

D2_NOTE = (
    "d=2: side B is the algebra of pointwise O(2)-invariant operators; the "
    "SO(2)-invariant pair operators a+_(1,t) a+_(2,u) also commute with o(2) "
    "and would join the records whose w differ only in the sign of the last row"
)


class WeightTable:
    """
    Joint Cartan weights of the basis states.

    Keys are (side-A tuple, side-B tuple) of exact rationals; values are the
    occupation masks carrying that weight, ascending.
    """

    def __init__(self, d, k, spaces):
        self.d = d
        self.k = k
        self._spaces = {weight: sorted(masks) for weight, masks in spaces.items()}
        self._weight_of = {m: w for w, masks in self._spaces.items() for m in masks}

    def __len__(self):
        return len(self._spaces)

    def __iter__(self):
        return iter(sorted(self._spaces))

    def __contains__(self, weight):
        return weight in self._spaces

    def states(self, weight):
        return [FockState(self.d, self.k, m) for m in self._spaces.get(weight, [])]

    def masks(self, weight):
        return list(self._spaces.get(weight, []))

    def weight_of(self, mask):
        return self._weight_of[mask]

    def items(self):
        for weight in self:
            yield weight, self.states(weight)

    def to_dict(self):
        return [{'lambda': [format_rational(x) for x in a],
                 'w': [format_rational(x) for x in b],
                 'states': [[[m.p, m.tau] for m in s.modes] for s in self.states((a, b))]}
                for a, b in self]


@dataclass(frozen=True)
class HighestWeightRecord:
    """
    One joint highest-weight vector and what is known about its module.

    r_partner and sigma_partner are indexes into the report's record list;
    r_eigen / sigma_eigen are set instead when the involution fixes the
    vector up to sign.
    """

    weight: tuple
    vector: StateVector
    lam: object
    w: object
    module_dimension: int = 0
    particle_number: object = None
    min_particle_number: object = None
    r_partner: object = None
    r_eigen: object = None
    sigma_partner: object = None
    sigma_eigen: object = None
    group_diagram: object = None
    group_check: object = None

    def to_dict(self):
        out = {
            'lambda': [format_rational(x) for x in self.weight[0]],
            'w': [format_rational(x) for x in self.weight[1]],
            'dim': self.module_dimension,
            'r_partner': self.r_partner,
            'sigma_eigen': self.sigma_eigen,
            'particle_number': self.particle_number,
            'r_eigen': self.r_eigen,
            'sigma_partner': self.sigma_partner,
            'vector': self.vector.to_dict()['terms'],
        }
        if self.group_diagram is not None:
            out['group_lambda'] = list(self.group_diagram.rows)
            out['group_check'] = self.group_check
        return out


@dataclass(frozen=True)
class DecompositionReport:
    """Result of decompose(); records are sorted by joint weight."""

    pair_type: str
    d: int
    k: int
    records: tuple
    multiplicity_free: bool
    dimension_sum_ok: bool
    prediction_diff: tuple
    modules_disjoint: bool = True
    notes: tuple = field(default_factory=tuple)

    @property
    def ok(self):
        return (self.multiplicity_free and self.dimension_sum_ok
                and self.modules_disjoint and not self.prediction_diff)

    def to_dict(self):
        return {
            'pair_type': self.pair_type,
            'd': self.d,
            'k': self.k,
            'records': [r.to_dict() for r in self.records],
            'checks': {
                'multiplicity_free': self.multiplicity_free,
                'dimension_sum': self.dimension_sum_ok,
                'modules_disjoint': self.modules_disjoint,
                'prediction_diff': list(self.prediction_diff),
            },
            'notes': list(self.notes),
        }


class _ActionCache:
    """Per-mask images of a fixed operator list, computed once."""

    def __init__(self, operators):
        self.operators = list(operators)
        self._images = {}

    def image(self, index, mask):
        key = (index, mask)
        hit = self._images.get(key)
        if hit is None:
            hit = self.operators[index].act_bits(mask)
            self._images[key] = hit
        return hit

    def apply(self, index, vec):
        out = {}
        for mask, coeff in vec.items():
            for target, value in self.image(index, mask).items():
                add_into(out, target, coeff * value)
        return out


def joint_weights(pair, max_dk=None):
    """
    Assign every basis state its joint Cartan eigenvalue tuple.

    Raises:
        ConsistencyError: If a Cartan generator is not diagonal on the basis
    """
    cartan = [g.operator for g in pair.cartan_a + pair.cartan_b]
    split = len(pair.cartan_a)
    spaces = {}
    for state in full_basis(pair.d, pair.k, max_dk=max_dk):
        values = cartan_weight(cartan, state.occupation)
        if values is None:
            raise ConsistencyError(f"a Cartan generator is not diagonal on {state}")
        spaces.setdefault((values[:split], values[split:]), []).append(state.occupation)
    logger.info("%s d=%d k=%d: %d joint weights", pair.pair_type, pair.d, pair.k, len(spaces))
    return WeightTable(pair.d, pair.k, spaces)


def _diagrams(pair_type, d, k, lam, w):
    try:
        if pair_type == 'o-o':
            return OAlgebraDiagram(lam, d), OAlgebraDiagram(w, 2 * k)
        return (GLDiagram(tuple(int(x) for x in lam)),
                GLDiagram(tuple(int(x) for x in w)))
    except (InvalidDiagramError, TypeError) as e:
        raise ConsistencyError(f"highest weight {lam}; {w} is not dominant: {e}") from e


def _sharp_particle_number(vec):
    counts = {mask.bit_count() for mask in vec}
    return counts.pop() if len(counts) == 1 else None


def highest_weight_vectors(pair, table=None, max_dk=None):
    """
    Joint highest-weight vectors of both sides, one record per nullspace
    basis vector of the stacked raising operators in each weight space.

    Returns:
        list: HighestWeightRecord, module_dimension not yet filled
    """
    if table is None:
        table = joint_weights(pair, max_dk=max_dk)
    raising = _ActionCache(g.operator for g in pair.raising)
    records = []
    for weight in table:
        masks = table.masks(weight)
        rows = {}
        for j, mask in enumerate(masks):
            for index in range(len(raising.operators)):
                for target, value in raising.image(index, mask).items():
                    rows.setdefault((index, target), {})[j] = value
        kernel = nullspace_vectors(list(rows.values()), len(masks))
        logger.debug("weight %s: %d states, %d highest", weight, len(masks), len(kernel))
        for vec in kernel:
            coeffs = {masks[j]: c for j, c in vec.items()}
            vector = StateVector(pair.d, pair.k, normalize_leading(coeffs))
            lam, w = _diagrams(pair.pair_type, pair.d, pair.k, *weight)
            records.append(HighestWeightRecord(
                weight, vector, lam, w,
                particle_number=_sharp_particle_number(vector.bits)))
    return records


def _span(seed, cache):
    builder = SpanBuilder()
    queue = [builder.add(seed)]
    while queue:
        vec = queue.pop()
        for index in range(len(cache.operators)):
            new = builder.add(cache.apply(index, vec))
            if new is not None:
                queue.append(new)
    return builder


def generate_module(seed, generators):
    """
    Smallest subspace containing seed and closed under the generators.

    Args:
        seed (StateVector): nonzero start vector
        generators (list): QuadraticOperators of the seed's Fock space

    Returns:
        list: echelon basis of the subspace as StateVectors

    Raises:
        ValueError: If the seed is zero
    """
    if seed.is_zero:
        raise ValueError("cannot generate a module from the zero vector")
    builder = _span(seed.bits, _ActionCache(generators))
    return [StateVector(seed.d, seed.k, v) for v in builder.basis]


def _modules_disjoint(pair, table, bases):
    """Per weight space, module vectors stay independent (rank = count)."""
    by_weight = {}
    for basis in bases:
        for vec in basis:
            weight = table.weight_of(min(vec))
            by_weight.setdefault(weight, []).append(vec)
    for weight, vectors in by_weight.items():
        if rank_of(vectors) != len(vectors):
            logger.warning("%s d=%d k=%d: modules overlap at weight %s",
                           pair.pair_type, pair.d, pair.k, weight)
            return False
    return True


def _prediction_diff(pair_type, d, k, records):
    predicted = pairing_table(pair_type, d, k).signed_pairs()
    found = {r.weight for r in records}
    diff = []
    for lam, w in sorted(predicted - found):
        diff.append({'kind': 'missing', 'lambda': [format_rational(x) for x in lam],
                     'w': [format_rational(x) for x in w]})
    for lam, w in sorted(found - predicted):
        diff.append({'kind': 'unexpected', 'lambda': [format_rational(x) for x in lam],
                     'w': [format_rational(x) for x in w]})
    return tuple(diff)


def decompose(pair_type, d, k, max_dk=None, pair=None):
    """
    Decompose the Fock space under a dual pair and compare with the
    predicted pairing table.

    Args:
        pair_type (str): 'gl-gl', 'sp-sp' or 'o-o'
        d (int), k (int): dimensions
        max_dk (int): optional guard override
        pair (DualPairRealization): reuse an already built realization

    Returns:
        DecompositionReport

    Raises:
        DimensionGuardError: If d*k exceeds the guard
    """
    pair = pair or build_pair(pair_type, d, k, max_dk=max_dk)
    table = joint_weights(pair, max_dk=max_dk)
    records = highest_weight_vectors(pair, table)
    lowering = _ActionCache(g.operator for g in pair.lowering)
    finished, bases = [], []
    for record in records:
        basis = _span(record.vector.bits, lowering).basis
        bases.append(basis)
        lowest = min(mask.bit_count() for vec in basis for mask in vec)
        finished.append(replace(record, module_dimension=len(basis), min_particle_number=lowest))
    logger.info("%s d=%d k=%d: %d modules generated", pair_type, d, k, len(finished))

    counts = Counter(r.weight for r in finished)
    multiplicity_free = all(c == 1 for c in counts.values())
    total = sum(r.module_dimension for r in finished)
    dimension_sum_ok = total == 1 << (d * k)
    if not dimension_sum_ok:
        logger.warning("%s d=%d k=%d: module dimensions sum to %d, not %d",
                       pair_type, d, k, total, 1 << (d * k))
    disjoint = _modules_disjoint(pair, table, bases)
    notes = (D2_NOTE,) if pair_type == 'o-o' and d == 2 else ()
    return DecompositionReport(
        pair_type, d, k, tuple(finished), multiplicity_free, dimension_sum_ok,
        _prediction_diff(pair_type, d, k, finished), disjoint, notes)


def _find_image(records, image):
    """Index of the record proportional to image, and the factor."""
    if image.is_zero:
        return None
    bits = image.bits
    factor = bits[min(bits)]
    target = image.normalized()
    for index, record in enumerate(records):
        if record.vector == target:
            return index, factor
    return None


def reflection_analysis(report, pair=None):
    """
    Pair up o-o records under r and sigma and recover O(d) group diagrams.

    A record fixed by r with eigenvalue +1 carries the group diagram lambda
    itself, eigenvalue -1 its complementary diagram; records swapped by r
    carry the self-complementary diagram. Each group diagram is checked
    against rowe_w_from_lambda.

    Raises:
        ValueError: For a non o-o report
        ConsistencyError: If an involution image is not +/- another record
    """
    if report.pair_type != 'o-o':
        raise ValueError(f"reflection analysis needs an o-o report, got {report.pair_type}")
    d, k = report.d, report.k
    r, s = reflection_r(d, k), sigma(d, k)
    records = list(report.records)
    enriched = []
    for index, record in enumerate(records):
        changes = {}
        for name, involution in (('r', r), ('sigma', s)):
            found = _find_image(records, involution.apply_vector(record.vector))
            if found is None:
                raise ConsistencyError(
                    f"{name} image of the record {record.lam}; {record.w} is not a record vector")
            partner, factor = found
            if partner == index:
                if factor not in (1, -1):
                    raise ConsistencyError(f"{name} eigenvalue {factor} is not +/-1")
                changes[name + '_eigen'] = int(factor)
            else:
                changes[name + '_partner'] = partner
        lam_rows = tuple(int(x) for x in record.weight[0])
        if 'r_partner' in changes:
            group = OGroupDiagram(tuple(abs(x) for x in lam_rows), d)
        elif changes['r_eigen'] > 0:
            group = OGroupDiagram(lam_rows, d)
        else:
            group = complementary(OGroupDiagram(lam_rows, d))
        try:
            predicted = rowe_w_from_lambda(group, d, k).w
        except InvalidDiagramError:
            predicted = None
        changes['group_diagram'] = group
        changes['group_check'] = predicted == record.weight[1]
        enriched.append(replace(record, **changes))
    logger.info("reflection analysis d=%d k=%d: %d records", d, k, len(enriched))
    return replace(report, records=tuple(enriched))


@dataclass(frozen=True)
class QuasispinRow:
    lam: tuple
    w: tuple
    spin: object
    quasispin: object
    seniority: int
    q0_matches: bool
    ok: bool

    def to_dict(self):
        return {'lambda': [format_rational(x) for x in self.lam],
                'w': [format_rational(x) for x in self.w],
                'S': format_rational(self.spin), 'Q': format_rational(self.quasispin),
                'seniority': self.seniority, 'ok': self.ok}


@dataclass(frozen=True)
class QuasispinResult:
    d: int
    rows: tuple

    @property
    def ok(self):
        return all(row.ok for row in self.rows)

    def to_dict(self):
        return {'d': self.d, 'ok': self.ok, 'rows': [row.to_dict() for row in self.rows]}


def _apply(op, vector):
    out = {}
    for mask, coeff in vector.bits.items():
        for target, value in op.act_bits(mask).items():
            add_into(out, target, coeff * value)
    return out


def _eigenvalue(op, vector):
    """Eigenvalue of op on vector, or None if vector is not an eigenvector."""
    image = _apply(op, vector)
    if not image:
        return ZERO
    lead = min(vector.bits)
    value = image.get(lead, ZERO) / vector.bits[lead]
    scaled = {m: c * value for m, c in vector.bits.items() if c * value}
    return value if scaled == image else None


def quasispin_check(d, report):
    """
    Spin and quasispin content of the o-o, k = 2 modules.

    Each highest-weight vector is lowest for both S and Q, so
    S = -S_0 and Q = -Q_0 there; checks w = (Q + S, Q - S) and
    seniority (smallest particle number in the module) = d - w_1 - w_2.

    Raises:
        ValueError: If the report is not an o-o report with k = 2
    """
    if report.pair_type != 'o-o' or report.k != 2 or report.d != d:
        raise ValueError("quasispin analysis needs the o-o report for this d with k = 2")
    ops = quasispin_operators(d)
    rows = []
    for record in report.records:
        vec = record.vector
        s0 = _eigenvalue(ops['S0'], vec)
        q0 = _eigenvalue(ops['Q0'], vec)
        lowest = not _apply(ops['S-'], vec) and not _apply(ops['Q-'], vec)
        if s0 is None or q0 is None:
            raise ConsistencyError(f"record {record.lam}; {record.w} is not an S_0/Q_0 eigenvector")
        spin, quasispin = -s0, -q0
        w1, w2 = record.weight[1]
        q0_matches = record.particle_number is not None and q0 == QQ(record.particle_number - d, 2)
        seniority = record.min_particle_number
        ok = (lowest and q0_matches and w1 == quasispin + spin and w2 == quasispin - spin
              and seniority == d - w1 - w2)
        if not ok:
            logger.warning("quasispin check failed for %s; %s", record.lam, record.w)
        rows.append(QuasispinRow(record.weight[0], record.weight[1], spin, quasispin,
                                 seniority, q0_matches, ok))
    return QuasispinResult(d, tuple(rows))
