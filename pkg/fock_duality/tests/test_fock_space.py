"""
Unit tests for the Fock space model
"""

import json
import unittest

from hypothesis import given, settings, strategies as st
from sympy.polys.domains import QQ

from fock_duality.models.fock_space import (
    FockState,
    Ladder,
    ModeIndex,
    QuadraticOperator,
    StateVector,
    apply_annihilation,
    apply_creation,
    apply_quadratic,
    bracket,
    full_basis,
    linear_combination,
    matrix_of,
    number_operator,
    product,
    vacuum,
)
from fock_duality.utils.errors import (
    BasisError,
    DimensionGuardError,
    DimensionMismatchError,
    ModeIndexError,
)
from fock_duality.utils.linalg import commutator

D, K = 2, 2
MODES = D * K

term = st.tuples(
    st.sampled_from(('cc', 'ca', 'aa')),
    st.integers(0, MODES - 1),
    st.integers(0, MODES - 1),
    st.integers(-3, 3),
)
operators = st.lists(term, min_size=1, max_size=4).map(
    lambda terms: linear_combination(
        D, K, [(c, Ladder(kind[0] == 'c', m1), Ladder(kind[1] == 'c', m2))
               for kind, m1, m2, c in terms]))


class TestModesAndStates(unittest.TestCase):
    """Test cases for modes, basis states and ladder actions."""

    def test_mode_linearization(self):
        """Test the (p - 1) * k + (tau - 1) numbering."""
        self.assertEqual(ModeIndex(2, 1).linear(2), 2)
        self.assertEqual(ModeIndex.from_linear(3, 2), ModeIndex(2, 2))

    def test_from_modes_and_str(self):
        """Test building a state from occupied modes."""
        state = FockState.from_modes(2, 1, [(2, 1), (1, 1)])
        self.assertEqual(state.occupation, 0b11)
        self.assertEqual(str(state), "|(1,1),(2,1)>")
        self.assertEqual(str(vacuum(2, 1)), "|vac>")
        self.assertEqual(state.particle_number, 2)

    def test_creation_sign(self):
        """Test the sign from anticommuting past lower occupied modes."""
        one = FockState.from_modes(2, 1, [(1, 1)])
        two = FockState.from_modes(2, 1, [(2, 1)])
        result = apply_creation(two, ModeIndex(1, 1))
        self.assertEqual(result.sign, 1)
        result = apply_creation(one, ModeIndex(2, 1))
        self.assertEqual(result.sign, -1)
        self.assertEqual(result.state.occupation, 0b11)

    def test_pauli_exclusion(self):
        """Test that occupied creation and empty annihilation give None."""
        one = FockState.from_modes(2, 1, [(1, 1)])
        self.assertIsNone(apply_creation(one, ModeIndex(1, 1)))
        self.assertIsNone(apply_annihilation(vacuum(2, 1), ModeIndex(1, 1)))

    def test_mode_out_of_range(self):
        """Test that modes outside (d, k) are rejected."""
        with self.assertRaises(ModeIndexError):
            apply_creation(vacuum(2, 1), ModeIndex(3, 1))
        with self.assertRaises(ModeIndexError):
            FockState(2, 1, 0b100)

    def test_full_basis(self):
        """Test basis order and the size guard."""
        basis = full_basis(2, 2, max_dk=24)
        self.assertEqual(len(basis), 16)
        self.assertEqual([s.occupation for s in basis], list(range(16)))
        with self.assertRaises(DimensionGuardError):
            full_basis(5, 5, max_dk=24)


class TestStateVector(unittest.TestCase):
    """Test cases for exact state vectors."""

    def test_arithmetic(self):
        """Test addition, cancellation and scaling."""
        a = StateVector(2, 1, {0: 1, 3: 2})
        b = StateVector(2, 1, {3: -2})
        self.assertEqual(a + b, StateVector(2, 1, {0: 1}))
        self.assertTrue((a - a).is_zero)
        self.assertEqual((a * QQ(1, 2)).coefficient(FockState(2, 1, 3)), QQ(1))

    def test_normalized(self):
        """Test that the first coefficient in basis order becomes 1."""
        vec = StateVector(2, 1, {1: -2, 2: 4}).normalized()
        self.assertEqual(vec.bits, {1: QQ(1), 2: QQ(-2)})

    def test_dimension_mismatch(self):
        """Test that vectors of different spaces do not mix."""
        with self.assertRaises(DimensionMismatchError):
            StateVector(2, 1, {0: 1}) + StateVector(1, 2, {0: 1})

    def test_to_dict(self):
        """Test the JSON form of a vector."""
        vec = StateVector(2, 1, {1: QQ(1, 2)})
        data = json.loads(json.dumps(vec.to_dict()))
        self.assertEqual(data['terms'], [{'modes': [[1, 1]], 'coeff': '1/2'}])


class TestQuadraticOperator(unittest.TestCase):
    """Test cases for normal-ordered quadratic operators."""

    def test_normal_ordering(self):
        """Test a_m a+_m = 1 - a+_m a_m."""
        op = product(Ladder(False, 0), Ladder(True, 0), 2, 1)
        self.assertEqual(op.scalar, 1)
        self.assertEqual(op.ca, {(0, 0): QQ(-1)})

    def test_creator_pair_order(self):
        """Test that a+_1 a+_0 is stored as -a+_0 a+_1."""
        op = product(Ladder(True, 1), Ladder(True, 0), 2, 1)
        self.assertEqual(op.cc, {(0, 1): QQ(-1)})
        self.assertTrue(product(Ladder(True, 1), Ladder(True, 1), 2, 1).is_zero)

    def test_unordered_pair_rejected(self):
        """Test the strict ordering of cc keys."""
        with self.assertRaises(ValueError):
            QuadraticOperator(2, 1, cc={(1, 0): 1})

    def test_hopping_bracket(self):
        """Test [a+_0 a_1, a+_1 a_0] = n_0 - n_1."""
        x = product(Ladder(True, 0), Ladder(False, 1), 2, 1)
        y = product(Ladder(True, 1), Ladder(False, 0), 2, 1)
        self.assertEqual(bracket(x, y).ca, {(0, 0): QQ(1), (1, 1): QQ(-1)})

    def test_number_operator_commutes(self):
        """Test that N commutes with a particle-conserving operator."""
        n = number_operator(2, 2)
        x = product(Ladder(True, 0), Ladder(False, 3), 2, 2)
        self.assertTrue(bracket(n, x).is_zero)

    def test_apply(self):
        """Test applying N to a two-particle state."""
        vec = StateVector(2, 1, {3: 1})
        self.assertEqual(apply_quadratic(number_operator(2, 1), vec), vec * 2)

    def test_matrix_leaves_basis(self):
        """Test that matrix_of reports images outside the basis."""
        op = product(Ladder(True, 0), Ladder(False, 1), 2, 1)
        with self.assertRaises(BasisError):
            matrix_of(op, [FockState(2, 1, 2)])

    def test_dict_round_trip(self):
        """Test from_dict(to_dict(op)) on a mixed operator."""
        op = linear_combination(2, 1, [(QQ(1, 2), Ladder(True, 0), Ladder(True, 1)),
                                       (3, Ladder(False, 1), Ladder(True, 0))], scalar=2)
        data = json.loads(json.dumps(op.to_dict()))
        self.assertEqual(QuadraticOperator.from_dict(data), op)

    def test_substitute_identity(self):
        """Test that the identity substitution changes nothing."""
        op = linear_combination(2, 1, [(1, Ladder(True, 0), Ladder(False, 1))])
        self.assertEqual(op.substitute(lambda ladder: (1, ladder)), op)

    @settings(max_examples=25, deadline=None)
    @given(operators, operators)
    def test_bracket_matches_matrix_commutator(self, a, b):
        """Test that the symbolic bracket realizes the matrix commutator."""
        basis = full_basis(D, K, max_dk=24)
        self.assertEqual(matrix_of(bracket(a, b), basis),
                         commutator(matrix_of(a, basis), matrix_of(b, basis)))

    @settings(max_examples=25, deadline=None)
    @given(operators, operators, operators)
    def test_jacobi_identity(self, a, b, c):
        """Test the Jacobi identity for the symbolic bracket."""
        total = bracket(a, bracket(b, c)) + bracket(b, bracket(c, a)) + bracket(c, bracket(a, b))
        self.assertTrue(total.is_zero)

    @settings(max_examples=25, deadline=None)
    @given(operators, operators)
    def test_bracket_antisymmetric(self, a, b):
        """Test [a, b] = -[b, a]."""
        self.assertEqual(bracket(a, b), -bracket(b, a))


if __name__ == '__main__':
    unittest.main()
