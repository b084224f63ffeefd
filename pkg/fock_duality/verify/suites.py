"""
Verification Suites

Each suite runs one family of exact checks over a bounded grid of (d, k)
and returns a SuiteResult. The command-line `verify` command runs them by
name; `all` runs every suite in SUITE_ORDER.
"""

import logging
from dataclasses import dataclass, field

from sympy.polys.domains import QQ

from fock_duality.decomposer.decomposer import decompose, quasispin_check, reflection_analysis
from fock_duality.models.diagrams import (
    OGroupDiagram,
    complementary,
    diagrams_in_box,
    frame_fill_pairs,
    helmers_pairs,
    o_group_diagrams,
    rowe_w_from_lambda,
)
from fock_duality.models.fock_space import (
    Ladder,
    StateVector,
    apply_quadratic,
    bracket,
    full_basis,
    matrix_of,
)
from fock_duality.models.tensors import (
    Tensor,
    chi_hw,
    chi_row_moved,
    ebar_matrix,
    eigenvalue,
    gl_act,
    is_traceless,
    r_act,
    unit_matrix,
    young_scalar,
    young_symmetrize,
)
from fock_duality.pairs.dual_pairs import (
    build_pair,
    cartan_weight,
    phi_hw,
    reflection_r,
    sigma,
    standard_form,
)
from fock_duality.utils.linalg import SpanBuilder, add_into, commutator

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CheckResult:
    name: str
    ok: bool
    detail: str = ''

    def to_dict(self):
        return {'name': self.name, 'ok': self.ok, 'detail': self.detail}


@dataclass
class SuiteResult:
    """Outcome of one suite; ok when every check passed."""

    name: str
    checks: list = field(default_factory=list)

    def add(self, name, ok, detail=''):
        ok = bool(ok)
        if not ok:
            logger.warning("%s: check failed: %s %s", self.name, name, detail)
        else:
            logger.debug("%s: %s ok", self.name, name)
        self.checks.append(CheckResult(name, ok, detail))
        return ok

    @property
    def passed(self):
        return sum(1 for c in self.checks if c.ok)

    @property
    def ok(self):
        return all(c.ok for c in self.checks)

    def to_dict(self):
        return {'suite': self.name, 'ok': self.ok, 'passed': self.passed,
                'total': len(self.checks), 'checks': [c.to_dict() for c in self.checks]}


@dataclass(frozen=True)
class VerifyBounds:
    """
    Attributes:
        max_dk (int): largest d*k visited
        d (int): restrict suites that take a single d (quasispin) to it
        tensor_max_rank (int): largest |lambda| in the tensor suite
        tensor_max_entries (int): d**n guard for the tensor suite
    """

    max_dk: int = 15
    d: object = None
    tensor_max_rank: int = 5
    tensor_max_entries: int = 10 ** 6


def _grid(bounds, max_d=6, max_k=3, even_d=False, cap=None):
    limit = bounds.max_dk if cap is None else min(bounds.max_dk, cap)
    for d in range(1, max_d + 1):
        if even_d and d % 2:
            continue
        if bounds.d is not None and d != bounds.d:
            continue
        for k in range(1, max_k + 1):
            if d * k <= limit:
                yield d, k


def run_car(bounds):
    """Canonical anticommutation relations and the bracket/matrix homomorphism."""
    result = SuiteResult('car')
    for d, k in _grid(bounds, cap=8):
        n = d * k
        ok = True
        for state in full_basis(d, k, max_dk=bounds.max_dk):
            vec = StateVector.from_state(state)
            for m in range(n):
                for j in range(n):
                    for dx, dy in ((False, True), (True, True), (False, False)):
                        x, y = Ladder(dx, m), Ladder(dy, j)
                        total = _ladder_apply(x, _ladder_apply(y, vec)) + \
                            _ladder_apply(y, _ladder_apply(x, vec))
                        expected = vec if (m == j and dx != dy) else StateVector(d, k)
                        if total != expected:
                            ok = False
        result.add(f"anticommutators d={d} k={k}", ok)
    for pair_type, d, k in (('o-o', 3, 1), ('o-o', 2, 2), ('sp-sp', 2, 2), ('gl-gl', 2, 2)):
        if d * k > bounds.max_dk:
            continue
        pair = build_pair(pair_type, d, k, max_dk=bounds.max_dk)
        basis = full_basis(d, k, max_dk=bounds.max_dk)
        ops = pair.side_a_generators + pair.side_b_generators
        ok = all(matrix_of(bracket(a, b), basis)
                 == commutator(matrix_of(a, basis), matrix_of(b, basis))
                 for a in ops for b in ops)
        result.add(f"matrix of bracket {pair_type} d={d} k={k}", ok)
    return result


def _ladder_apply(ladder, vec):
    out = {}
    for mask, coeff in vec.bits.items():
        step = ladder.act_bits(mask)
        if step is not None:
            add_into(out, step[1], coeff * step[0])
    return StateVector(vec.d, vec.k, out)


def run_involutions(bounds):
    """r^2 = sigma^2 = 1, sigma r = -r sigma, and sigma/r preserve side B."""
    result = SuiteResult('involutions')
    for d, k in _grid(bounds):
        r, s = reflection_r(d, k), sigma(d, k)
        squares = anti = True
        for state in full_basis(d, k, max_dk=bounds.max_dk):
            vec = StateVector.from_state(state)
            if r.apply_vector(r.apply_vector(vec)) != vec or s.apply_vector(s.apply_vector(vec)) != vec:
                squares = False
            if s.apply_vector(r.apply_vector(vec)) != -r.apply_vector(s.apply_vector(vec)):
                anti = False
        result.add(f"r^2 = sigma^2 = 1 d={d} k={k}", squares)
        result.add(f"sigma r = -r sigma d={d} k={k}", anti)
        pair = build_pair('o-o', d, k, max_dk=bounds.max_dk)
        span = SpanBuilder()
        for op in pair.side_b_generators:
            span.add(op.coefficient_vector())
        for involution in (r, s):
            ok = all(span.contains(involution.conjugate(op).coefficient_vector())
                     for op in pair.side_b_generators)
            result.add(f"{involution.name} preserves side B d={d} k={k}", ok)
        result.add(f"r fixes side B generators d={d} k={k}",
                   all(r.conjugate(op) == op for op in pair.side_b_generators))
        if d * k <= 6:
            basis = full_basis(d, k, max_dk=bounds.max_dk)
            sm, rm = s.matrix(basis), r.matrix(basis)
            ok = all(sm * matrix_of(op, basis) * sm == matrix_of(s.conjugate(op), basis)
                     for op in pair.side_b_generators)
            result.add(f"sigma matrix conjugation d={d} k={k}", ok)
            ok = all(rm * m == m * rm
                     for m in (matrix_of(op, basis) for op in pair.side_b_generators))
            result.add(f"r commutes with side B d={d} k={k}", ok)
    return result


def run_highest_weight(bounds):
    """phi_hw: Borel annihilation, Cartan eigenvalues, r and sigma eigenvalues."""
    result = SuiteResult('highest-weight')
    for d, k in _grid(bounds):
        pair = build_pair('o-o', d, k, max_dk=bounds.max_dk)
        r, s = reflection_r(d, k), sigma(d, k)
        cartan = [g.operator for g in pair.cartan_b]
        for lam in o_group_diagrams(d, k):
            phi = phi_hw(lam, d, k)
            vec = StateVector.from_signed(phi, d, k)
            label = f"d={d} k={k} lambda={lam}"
            result.add(f"sign {label}", phi.sign == 1)
            annihilated = all(apply_quadratic(g.operator, vec).is_zero for g in pair.raising_b)
            result.add(f"Borel annihilation {label}", annihilated)
            weight = cartan_weight(cartan, phi.state.occupation)
            result.add(f"w rule {label}", weight == rowe_w_from_lambda(lam, d, k).w)
            image = r.apply_vector(vec)
            if 2 * lam.first_column < d:
                result.add(f"r eigenvalue +1 {label}", image == vec)
            elif 2 * lam.first_column > d:
                result.add(f"r eigenvalue -1 {label}", image == -vec)
            else:
                expected = -1 if (d // 2) % 2 else 1
                result.add(f"sigma eigenvalue {label}", s.apply_vector(vec) == vec * expected)
                result.add(f"sigma on r partner {label}",
                           s.apply_vector(image) == image * -expected)
    return result


def run_commutant(bounds):
    """Cross brackets vanish and each side closes under bracket."""
    result = SuiteResult('commutant')
    for pair_type in ('gl-gl', 'sp-sp', 'o-o'):
        for d, k in _grid(bounds, max_d=5, max_k=3, even_d=pair_type == 'sp-sp'):
            pair = build_pair(pair_type, d, k, max_dk=bounds.max_dk)
            label = f"{pair_type} d={d} k={k}"
            cross = all(bracket(a, b).is_zero
                        for a in pair.side_a_generators for b in pair.side_b_generators)
            result.add(f"commutant {label}", cross)
            for side, gens in (('A', pair.side_a_generators), ('B', pair.side_b_generators)):
                span = SpanBuilder()
                for op in gens:
                    span.add(op.coefficient_vector())
                closed = all(span.contains(bracket(a, b).coefficient_vector())
                             for i, a in enumerate(gens) for b in gens[i + 1:])
                result.add(f"closure side {side} {label}", closed)
    return result


O_CASES = ((1, 1), (2, 1), (3, 1), (4, 1), (2, 2), (3, 2), (4, 2), (5, 2),
           (2, 3), (3, 3), (4, 3), (6, 2), (5, 3))
SP_CASES = ((2, 1), (4, 1), (2, 2), (4, 2), (6, 1), (6, 2), (4, 3))
GL_CASES = ((2, 2), (3, 2), (2, 3), (3, 3), (4, 2))


def decomposition_cases(bounds):
    """The (pair_type, d, k) cases of the decomposition suite within bounds.max_dk."""
    cases = []
    for pair_type, grid in (('o-o', O_CASES), ('sp-sp', SP_CASES), ('gl-gl', GL_CASES)):
        cases.extend((pair_type, d, k) for d, k in grid if d * k <= bounds.max_dk)
    return cases


def run_decomposition(bounds):
    """Brute-force decompositions against the predicted pairing tables."""
    result = SuiteResult('decomposition')
    for pair_type, d, k in decomposition_cases(bounds):
        report = decompose(pair_type, d, k, max_dk=bounds.max_dk)
        label = f"{pair_type} d={d} k={k}"
        result.add(f"multiplicity free {label}", report.multiplicity_free)
        result.add(f"dimension sum {label}", report.dimension_sum_ok and report.modules_disjoint)
        result.add(f"prediction {label}", not report.prediction_diff,
                   f"{len(report.prediction_diff)} mismatches" if report.prediction_diff else '')
        if pair_type == 'gl-gl':
            sectors = all(r.particle_number == sum(int(x) for x in r.weight[0])
                          for r in report.records)
            result.add(f"particle sectors {label}", sectors)
        if pair_type == 'o-o':
            analysed = reflection_analysis(report)
            result.add(f"group diagrams {label}",
                       all(r.group_check for r in analysed.records))
    return result


def run_quasispin(bounds):
    """Spin/quasispin split of o(4) and the seniority rule, k = 2."""
    result = SuiteResult('quasispin')
    dims = (bounds.d,) if bounds.d is not None else (2, 3, 4)
    for d in dims:
        if 2 * d > bounds.max_dk:
            continue
        report = decompose('o-o', d, 2, max_dk=bounds.max_dk)
        check = quasispin_check(d, report)
        result.add(f"Q0 layer d={d}", all(row.q0_matches for row in check.rows))
        result.add(f"w = (Q+S, Q-S) and seniority d={d}", check.ok)
    return result


def run_tensor(bounds):
    """Young symmetrizers, highest-weight tensors, tracelessness and r."""
    result = SuiteResult('tensor')
    rank, guard = bounds.tensor_max_rank, bounds.tensor_max_entries
    for n in range(rank + 1):
        for lam in diagrams_in_box(n, n):
            if lam.size != n:
                continue
            seed = Tensor.unit(tuple(range(1, n + 1)), max(n, 1))
            once = young_symmetrize(lam, seed)
            result.add(f"Y idempotent {lam}", young_symmetrize(lam, once) == once)
            result.add(f"Y scalar {lam}", young_scalar(lam.rows) > 0)
    for d in range(1, 5):
        form = standard_form('symmetric', d)
        for lam in diagrams_in_box(d, rank):
            if lam.size > rank:
                continue
            chi = chi_hw(lam, d, guard)
            label = f"d={d} lambda={lam}"
            result.add(f"chi_hw nonzero {label}", not chi.is_zero)
            rows = all(gl_act(unit_matrix(p, p, d), chi) == chi * lam.row(p)
                       for p in range(1, d + 1))
            result.add(f"e_pp row lengths {label}", rows)
            killed = all(gl_act(unit_matrix(p, q, d), chi).is_zero
                         for p in range(1, d + 1) for q in range(p + 1, d + 1))
            result.add(f"e_pq annihilation {label}", killed)
            first = lam.column_depth(1)
            if first + lam.column_depth(2) > d:
                continue
            if 2 * first <= d:
                result.add(f"traceless {label}", is_traceless(chi, form))
            ebar = _ebar_tuple(chi, form)
            result.add(f"ebar eigenvalues {label}", ebar == tuple(
                QQ(lam.row(p) - lam.row(d + 1 - p)) for p in range(1, d // 2 + 1)))
            group = OGroupDiagram(lam.rows, d)
            image = r_act(chi)
            if 2 * first < d:
                result.add(f"r fixes {label}", image == chi)
                partner = complementary(group).diagram
                if partner.size <= rank:
                    result.add(f"complementary ebar {label}",
                               _ebar_tuple(chi_hw(partner, d, guard), form) == ebar)
            elif 2 * first > d:
                result.add(f"r negates {label}", image == -chi)
            else:
                result.add(f"r moves row {label}", image == chi_row_moved(lam, d, guard))
    return result


def _ebar_tuple(chi, form):
    values = []
    for p in range(1, form.d // 2 + 1):
        values.append(eigenvalue(chi, gl_act(ebar_matrix(p, p, form), chi)))
    return tuple(values)


def run_pairs(bounds):
    """Diagram-level pairing rules on the worked d = 13, k = 4 examples."""
    result = SuiteResult('pairs')
    table = frame_fill_pairs(13, 4)
    target = {(tuple(QQ(x) for x in (4, 3, 3, 2, 1, 0)),
               (QQ(11, 2), QQ(7, 2), QQ(5, 2), QQ(3, 2)))}
    result.add("frame fill d=13 k=4 entry", target <= table.signed_pairs())
    result.add("frame fill d=13 k=4 size", len(table) == len(diagrams_in_box(6, 4)))
    w = rowe_w_from_lambda(OGroupDiagram((4, 3, 3, 2, 1, 1, 1, 1), 13), 13, 4).w
    result.add("w from group diagram d=13 k=4",
               w == (QQ(11, 2), QQ(7, 2), QQ(5, 2), QQ(-3, 2)))
    result.add("helmers d=2 k=1", len(helmers_pairs(2, 1)) == 2)
    for d, k in _grid(bounds):
        table = frame_fill_pairs(d, k)
        count = sum(len(entry.signed_pairs()) for entry in table)
        result.add(f"signed entries distinct d={d} k={k}", count == len(table.signed_pairs()))
    return result


SUITES = {
    'car': run_car,
    'involutions': run_involutions,
    'tensor': run_tensor,
    'quasispin': run_quasispin,
    'highest-weight': run_highest_weight,
    'commutant': run_commutant,
    'decomposition': run_decomposition,
    'pairs': run_pairs,
}

SUITE_ORDER = ('pairs', 'car', 'involutions', 'highest-weight', 'commutant',
               'tensor', 'quasispin', 'decomposition')


def run_suites(name, bounds=None):
    """
    Run one suite by name, or every suite for 'all'.

    Returns:
        list: SuiteResult objects

    Raises:
        ValueError: For an unknown suite name
    """
    bounds = bounds or VerifyBounds()
    if name == 'all':
        names = SUITE_ORDER
    elif name in SUITES:
        names = (name,)
    else:
        raise ValueError(f"unknown suite {name!r}; choose from all, {', '.join(SUITE_ORDER)}")
    results = []
    for suite in names:
        logger.info("running suite %s (max d*k %d)", suite, bounds.max_dk)
        results.append(SUITES[suite](bounds))
    return results
