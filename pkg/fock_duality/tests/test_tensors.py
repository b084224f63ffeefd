"""
Unit tests for tensors, Young symmetrizers and the gl(d) actions
"""

import unittest

from hypothesis import given, settings, strategies as st
from sympy.polys.domains import QQ

from fock_duality.models.diagrams import GLDiagram, OGroupDiagram, complementary, diagrams_in_box
from fock_duality.models.tensors import (
    Tableau,
    Tensor,
    chi_hw,
    chi_lambda,
    chi_row_moved,
    ebar_matrix,
    eigenvalue,
    gl_act,
    group_act,
    is_traceless,
    r_act,
    unit_matrix,
    young_scalar,
    young_symmetrize,
)
from fock_duality.pairs.dual_pairs import standard_form
from fock_duality.utils.errors import DimensionGuardError, DimensionMismatchError

D = 2
small_matrices = st.lists(st.lists(st.integers(-2, 2), min_size=D, max_size=D),
                          min_size=D, max_size=D)
rank_two_tensors = st.dictionaries(
    st.tuples(st.integers(1, D), st.integers(1, D)), st.integers(-3, 3), max_size=4
).map(lambda values: Tensor(2, D, values))


def _matmul(x, y):
    return [[sum(x[i][m] * y[m][j] for m in range(D)) for j in range(D)] for i in range(D)]


class TestTensor(unittest.TestCase):
    """Test cases for the Tensor container and the tableau."""

    def test_rank_zero(self):
        """Test that rank 0 holds a single scalar entry."""
        scalar = chi_lambda((), 3)
        self.assertEqual(scalar.n, 0)
        self.assertEqual(scalar[()], 1)

    def test_index_range(self):
        """Test that indexes outside 1..d are rejected."""
        with self.assertRaises(DimensionMismatchError):
            Tensor(2, 2, {(1, 3): 1})
        with self.assertRaises(DimensionMismatchError):
            Tensor(2, 2) + Tensor(1, 2)

    def test_permute(self):
        """Test the slot permutation convention."""
        t = Tensor.unit((1, 2, 3), 3)
        self.assertEqual(t.permute((1, 2, 0)), Tensor.unit((3, 1, 2), 3))

    def test_tableau(self):
        """Test the reading-order filling of (2,1)."""
        tableau = Tableau(GLDiagram((2, 1)))
        self.assertEqual(tableau.filling, ((1, 2), (3,)))
        self.assertEqual(tableau.row_of(), (1, 1, 2))
        self.assertEqual(tableau.column_slots(), [(0, 2), (1,)])

    def test_chi_lambda(self):
        """Test the unit tensor at the row numbers of the cells."""
        self.assertEqual(chi_lambda((2, 1), 3), Tensor.unit((1, 1, 2), 3))
        self.assertTrue(chi_lambda((1, 1, 1), 2).is_zero)

    def test_scale_guard(self):
        """Test the d**n guard."""
        with self.assertRaises(DimensionGuardError):
            chi_lambda((1, 1, 1, 1), 10, max_entries=1000)


class TestYoungSymmetrizer(unittest.TestCase):
    """Test cases for Young symmetrizers."""

    def test_antisymmetrizer(self):
        """Test Y_(1,1) on the unit tensor at (1,2)."""
        result = young_symmetrize((1, 1), Tensor.unit((1, 2), 2))
        self.assertEqual(result, Tensor(2, 2, {(1, 2): QQ(1, 2), (2, 1): QQ(-1, 2)}))

    def test_symmetrizer(self):
        """Test Y_(2) on the unit tensor at (1,2)."""
        result = young_symmetrize((2,), Tensor.unit((1, 2), 2))
        self.assertEqual(result, Tensor(2, 2, {(1, 2): QQ(1, 2), (2, 1): QQ(1, 2)}))

    def test_scalar(self):
        """Test c_lambda = f_lambda / n! on a few shapes."""
        self.assertEqual(young_scalar((2, 1)), QQ(1, 3))
        self.assertEqual(young_scalar((3,)), QQ(1, 6))
        self.assertEqual(young_scalar(()), 1)

    def test_idempotent(self):
        """Test Y^2 = Y on unit tensors for every shape of size at most 4."""
        d = 3
        for lam in diagrams_in_box(4, 4):
            if not 1 <= lam.size <= 4:
                continue
            seed = Tensor.unit(tuple((i % d) + 1 for i in range(lam.size)), d)
            once = young_symmetrize(lam, seed)
            self.assertEqual(young_symmetrize(lam, once), once, lam)

    def test_hw_nonzero(self):
        """Test Y chi != 0 whenever lambda fits in d rows."""
        for lam in diagrams_in_box(3, 3):
            if lam.size <= 4:
                self.assertFalse(chi_hw(lam, 3).is_zero, lam)

    def test_rank_mismatch(self):
        """Test that the tensor rank must equal |lambda|."""
        with self.assertRaises(DimensionMismatchError):
            young_symmetrize((2, 1), Tensor.unit((1, 1), 2))


class TestActions(unittest.TestCase):
    """Test cases for the gl(d) and GL(d) actions."""

    def test_cartan_on_hw(self):
        """Test e_pp chi_hw = lambda_p chi_hw and e_pq chi_hw = 0 for p < q."""
        d = 3
        for rows in ((2, 1), (1, 1), (3,), (2, 2, 1)):
            chi = chi_hw(rows, d)
            padded = GLDiagram(rows).padded(d)
            for p in range(1, d + 1):
                self.assertEqual(gl_act(unit_matrix(p, p, d), chi), chi * padded[p - 1])
                for q in range(p + 1, d + 1):
                    self.assertTrue(gl_act(unit_matrix(p, q, d), chi).is_zero, (rows, p, q))

    def test_identity_group_action(self):
        """Test that the identity matrix leaves a tensor unchanged."""
        t = Tensor(2, 3, {(1, 2): 3, (3, 3): -1})
        identity = [[1 if i == j else 0 for j in range(3)] for i in range(3)]
        self.assertEqual(group_act(identity, t), t)

    def test_matrix_shape(self):
        """Test that the matrix must be d x d."""
        with self.assertRaises(DimensionMismatchError):
            gl_act([[1, 0], [0, 1]], Tensor.unit((1,), 3))

    @settings(max_examples=30, deadline=None)
    @given(small_matrices, small_matrices, rank_two_tensors)
    def test_gl_action_is_representation(self, x, y, t):
        """Test gl_act([x, y]) = gl_act(x) gl_act(y) - gl_act(y) gl_act(x)."""
        xy, yx = _matmul(x, y), _matmul(y, x)
        bracket = [[xy[i][j] - yx[i][j] for j in range(D)] for i in range(D)]
        self.assertEqual(gl_act(bracket, t),
                         gl_act(x, gl_act(y, t)) - gl_act(y, gl_act(x, t)))

    @settings(max_examples=30, deadline=None)
    @given(small_matrices, small_matrices, rank_two_tensors)
    def test_group_action_is_multiplicative(self, g, h, t):
        """Test group_act(g h) = group_act(g) group_act(h)."""
        self.assertEqual(group_act(_matmul(g, h), t), group_act(g, group_act(h, t)))


class TestOrthogonalTensors(unittest.TestCase):
    """Test cases for tracelessness, r and the ebar eigenvalues."""

    def test_traceless(self):
        """Test the contraction with the anti-diagonal form."""
        form = standard_form('symmetric', 3)
        self.assertTrue(is_traceless(chi_hw((2, 1), 3), form))
        delta = Tensor(2, 3, {(p, p): 1 for p in range(1, 4)})
        self.assertFalse(is_traceless(delta, form))
        self.assertTrue(is_traceless(Tensor.unit((2,), 3), form))

    def test_reflection(self):
        """Test r chi_hw for short, long and self-complementary first columns."""
        chi = chi_hw((1,), 3)
        self.assertEqual(r_act(chi), chi)
        chi = chi_hw((1, 1), 3)
        self.assertEqual(r_act(chi), -chi)
        self.assertEqual(r_act(chi_hw((1,), 2)), chi_row_moved((1,), 2))
        self.assertEqual(chi_row_moved((1,), 2), Tensor.unit((2,), 2))
        with self.assertRaises(ValueError):
            chi_row_moved((1,), 3)

    def test_ebar_eigenvalues(self):
        """Test ebar_pp eigenvalues lambda_p - lambda_p* on chi_hw."""
        d = 4
        form = standard_form('symmetric', d)
        for rows in ((1,), (2, 1), (1, 1, 1)):
            chi = chi_hw(rows, d)
            padded = GLDiagram(rows).padded(d)
            for p in range(1, d // 2 + 1):
                value = eigenvalue(chi, gl_act(ebar_matrix(p, p, form), chi))
                self.assertEqual(value, padded[p - 1] - padded[d - p], (rows, p))

    def test_complementary_eigenvalues(self):
        """Test that complementary diagrams share their ebar eigenvalues."""
        d = 3
        form = standard_form('symmetric', d)
        for rows in ((), (1,), (2,)):
            lam = OGroupDiagram(rows, d)
            other = complementary(lam)
            values = []
            for diagram in (lam, other):
                chi = chi_hw(diagram, d)
                values.append(eigenvalue(chi, gl_act(ebar_matrix(1, 1, form), chi)))
            self.assertEqual(values[0], values[1], rows)

    def test_eigenvalue_helper(self):
        """Test eigenvalue() on multiples and non-multiples."""
        t = Tensor(1, 2, {(1,): 2})
        self.assertEqual(eigenvalue(t, t * 3), 3)
        self.assertIsNone(eigenvalue(t, Tensor.unit((2,), 2)))
        self.assertIsNone(eigenvalue(Tensor.zero(1, 2), t))


if __name__ == '__main__':
    unittest.main()
