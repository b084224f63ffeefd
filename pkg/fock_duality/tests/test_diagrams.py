"""
Unit tests for the diagram model and the pairing rules
"""

import json
import unittest

from hypothesis import given, strategies as st
from sympy.polys.domains import QQ

from fock_duality.models.diagrams import (
    GLDiagram,
    OAlgebraDiagram,
    OGroupDiagram,
    PairingEntry,
    PairingTable,
    boson_dual_weights,
    complementary,
    conjugate,
    conjugate_pairs,
    diagrams_in_box,
    frame_fill_pairs,
    gl_pair,
    helmers_pairs,
    o_group_diagrams,
    o_group_to_algebra,
    pairing_table,
    rowe_w_from_lambda,
)
from fock_duality.utils.errors import InvalidDiagramError

partitions = st.lists(st.integers(0, 5), max_size=5).map(
    lambda rows: GLDiagram(tuple(sorted(rows, reverse=True))))


def _q(*values):
    return tuple(QQ(v) if not isinstance(v, tuple) else QQ(*v) for v in values)


class TestGLDiagram(unittest.TestCase):
    """Test cases for ordinary Young diagrams."""

    def test_trailing_zeros(self):
        """Test that trailing zero rows are dropped."""
        self.assertEqual(GLDiagram((2, 1, 0)), GLDiagram((2, 1)))
        self.assertEqual(GLDiagram((2, 1)).padded(4), (2, 1, 0, 0))

    def test_invalid_rows(self):
        """Test that increasing or negative rows are rejected."""
        with self.assertRaises(InvalidDiagramError):
            GLDiagram((1, 2))
        with self.assertRaises(InvalidDiagramError):
            GLDiagram((2, -1))
        with self.assertRaises(InvalidDiagramError):
            GLDiagram((3, 1)).padded(1)

    def test_shape_data(self):
        """Test columns, cells and sizes."""
        lam = GLDiagram((3, 1))
        self.assertEqual(lam.columns, (2, 1, 1))
        self.assertEqual(lam.cells(), [(1, 1), (1, 2), (1, 3), (2, 1)])
        self.assertEqual((lam.size, lam.depth, lam.width), (4, 2, 3))
        self.assertEqual(lam.row(5), 0)

    def test_conjugate_examples(self):
        """Test the transpose on small diagrams."""
        self.assertEqual(conjugate(GLDiagram((3, 1))), GLDiagram((2, 1, 1)))
        self.assertEqual(conjugate(GLDiagram(())), GLDiagram(()))
        self.assertEqual(conjugate(GLDiagram((2, 2))), GLDiagram((2, 2)))

    @given(partitions)
    def test_conjugate_involutive(self, lam):
        """Test conjugate(conjugate(lam)) = lam."""
        self.assertEqual(conjugate(conjugate(lam)), lam)
        self.assertEqual(conjugate(lam).size, lam.size)

    def test_diagrams_in_box(self):
        """Test enumeration counts and order."""
        self.assertEqual(len(diagrams_in_box(2, 2)), 6)
        self.assertEqual(len(diagrams_in_box(6, 4)), 210)
        self.assertEqual([lam.rows for lam in diagrams_in_box(2, 1)], [(), (1,), (1, 1)])


class TestOrthogonalDiagrams(unittest.TestCase):
    """Test cases for O(d) group diagrams and o(N) algebra diagrams."""

    def test_two_column_rule(self):
        """Test the bound on the first two columns."""
        OGroupDiagram((1, 1, 1), 3)
        OGroupDiagram((2, 1), 3)
        with self.assertRaises(InvalidDiagramError):
            OGroupDiagram((2, 2), 3)

    def test_complementary_examples(self):
        """Test first-column depths summing to d."""
        self.assertEqual(complementary(OGroupDiagram((1,), 3)).rows, (1, 1))
        self.assertEqual(complementary(OGroupDiagram((1, 1), 4)).rows, (1, 1))
        self.assertEqual(complementary(OGroupDiagram((), 2)).rows, (1, 1))
        self.assertEqual(complementary(OGroupDiagram((2, 1), 5)).rows, (2, 1, 1))

    def test_complementary_involutive(self):
        """Test complementary twice is the identity on every small O(d) diagram."""
        for d in range(1, 7):
            for lam in o_group_diagrams(d, 3):
                self.assertEqual(complementary(complementary(lam)), lam)
                self.assertEqual(lam.is_self_complementary, complementary(lam) == lam)

    def test_o_group_diagrams(self):
        """Test the O(2) diagrams with one column."""
        rows = [lam.rows for lam in o_group_diagrams(2, 1)]
        self.assertEqual(rows, [(), (1,), (1, 1)])

    def test_algebra_validation(self):
        """Test the o(N) row rules."""
        OAlgebraDiagram((QQ(1, 2), QQ(-1, 2)), 4)
        with self.assertRaises(InvalidDiagramError):
            OAlgebraDiagram((QQ(1), QQ(1, 2)), 4)
        with self.assertRaises(InvalidDiagramError):
            OAlgebraDiagram((QQ(-1),), 3)
        with self.assertRaises(InvalidDiagramError):
            OAlgebraDiagram((QQ(1), QQ(2)), 4)
        with self.assertRaises(InvalidDiagramError):
            OAlgebraDiagram((QQ(1),), 4)

    def test_spin_flag(self):
        """Test that half-odd-integral rows mark a spin irrep."""
        self.assertTrue(OAlgebraDiagram((QQ(3, 2),), 3).spin)
        self.assertFalse(OAlgebraDiagram((QQ(1),), 3).spin)
        self.assertFalse(OAlgebraDiagram((), 1).spin)

    def test_group_to_algebra(self):
        """Test restriction from O(d) to o(d)."""
        self.assertEqual([a.w for a in o_group_to_algebra(OGroupDiagram((1,), 3))], [_q(1)])
        self.assertEqual([a.w for a in o_group_to_algebra(OGroupDiagram((1, 1), 3))], [_q(1)])
        self.assertEqual([a.w for a in o_group_to_algebra(OGroupDiagram((1, 1), 4))],
                         [_q(1, 1), _q(1, -1)])


class TestPairingRules(unittest.TestCase):
    """Test cases for the predicted pairing tables."""

    def test_frame_fill_worked_example(self):
        """Test the d = 13, k = 4 entry and the table size."""
        table = frame_fill_pairs(13, 4)
        self.assertIn((_q(4, 3, 3, 2, 1, 0), _q((11, 2), (7, 2), (5, 2), (3, 2))),
                      table.signed_pairs())
        self.assertIn((_q(4, 3, 3, 2, 1, 0), _q((11, 2), (7, 2), (5, 2), (-3, 2))),
                      table.signed_pairs())
        self.assertEqual(len(table), len(diagrams_in_box(6, 4)))

    def test_frame_fill_two_by_one(self):
        """Test the four signed pairs of d = 2, k = 1."""
        self.assertEqual(frame_fill_pairs(2, 1).signed_pairs(),
                         {(_q(0), _q(1)), (_q(0), _q(-1)), (_q(1), _q(0)), (_q(-1), _q(0))})

    def test_frame_fill_rule(self):
        """Test column depth plus w row equals d/2 for every entry."""
        for d in range(1, 8):
            for k in range(1, 4):
                for entry in frame_fill_pairs(d, k):
                    lam = GLDiagram(tuple(int(x) for x in entry.lam.w))
                    for tau in range(1, k + 1):
                        self.assertEqual(lam.column_depth(k + 1 - tau) + entry.w.w[tau - 1],
                                         QQ(d, 2))
                    if d % 2:
                        self.assertTrue(entry.w.spin)
                        self.assertFalse(entry.lam.spin)

    def test_empty_lambda(self):
        """Test that the empty diagram pairs with (d/2, ..., d/2)."""
        entry = frame_fill_pairs(6, 2).entries[0]
        self.assertEqual(entry.w.w, _q(3, 3))
        self.assertTrue(entry.w_paired)
        self.assertFalse(entry.lam_paired)

    def test_helmers(self):
        """Test the sp(d) - sp(2k) rectangle rule."""
        pairs = [(e.lam.rows, e.w.rows) for e in helmers_pairs(2, 1)]
        self.assertEqual(pairs, [((), (1,)), ((1,), ())])
        pairs = [(e.lam.rows, e.w.padded(1)) for e in helmers_pairs(4, 1)]
        self.assertEqual(pairs, [((), (2,)), ((1,), (1,)), ((1, 1), (0,))])
        with self.assertRaises(ValueError):
            helmers_pairs(3, 1)

    def test_conjugate_pairs(self):
        """Test the gl(d) - gl(k) fermion table."""
        table = conjugate_pairs(2, 2)
        self.assertEqual(len(table), 6)
        self.assertIn((GLDiagram((1, 1)), GLDiagram((2,))), [(e.lam, e.w) for e in table])

    def test_gl_pair(self):
        """Test fermion and boson partners."""
        self.assertEqual(gl_pair(GLDiagram((2, 2, 1)), 3, 2), GLDiagram((3, 2)))
        self.assertEqual(gl_pair(GLDiagram((4, 1)), 5, 2, 'boson'), GLDiagram((4, 1)))
        with self.assertRaises(InvalidDiagramError):
            gl_pair(GLDiagram((3, 1)), 2, 2)
        with self.assertRaises(ValueError):
            gl_pair(GLDiagram((1,)), 2, 2, 'anyon')

    def test_rowe_w(self):
        """Test w_tau = d/2 - (depth of column k + 1 - tau)."""
        w = rowe_w_from_lambda(OGroupDiagram((4, 3, 3, 2, 1, 1, 1, 1), 13), 13, 4)
        self.assertEqual(w.w, _q((11, 2), (7, 2), (5, 2), (-3, 2)))
        self.assertEqual(rowe_w_from_lambda(OGroupDiagram((), 4), 4, 2).w, _q(2, 2))
        self.assertEqual(rowe_w_from_lambda(OGroupDiagram((1, 1), 3), 3, 1).w, _q((-1, 2)))
        with self.assertRaises(InvalidDiagramError):
            rowe_w_from_lambda(OGroupDiagram((3,), 3), 3, 2)

    def test_rowe_w_complementary_sign(self):
        """Test that complementary diagrams differ in the sign of w_k."""
        for d in range(1, 7):
            for lam in o_group_diagrams(d, 2):
                if lam.is_self_complementary:
                    continue
                w = rowe_w_from_lambda(lam, d, 2).w
                w_other = rowe_w_from_lambda(complementary(lam), d, 2).w
                self.assertEqual(w[:-1], w_other[:-1])
                self.assertEqual(w[-1], -w_other[-1])

    def test_boson_weights(self):
        """Test w_tau = -lambda_{k+1-tau} - d/2."""
        self.assertEqual(boson_dual_weights(GLDiagram((3,)), 2, 1), _q(-4))
        self.assertEqual(boson_dual_weights(GLDiagram(()), 3, 2), _q((-3, 2), (-3, 2)))
        self.assertEqual(boson_dual_weights(GLDiagram((2, 1)), 4, 2), _q(-3, -4))
        with self.assertRaises(InvalidDiagramError):
            boson_dual_weights(GLDiagram((1, 1, 1)), 4, 2)

    def test_duplicate_entries_rejected(self):
        """Test that a pairing table refuses a repeated entry."""
        entry = PairingEntry(GLDiagram((1,)), GLDiagram((1,)))
        with self.assertRaises(InvalidDiagramError):
            PairingTable('gl-gl', 1, 1, (entry, entry))

    def test_table_json(self):
        """Test the JSON form of an o-o table."""
        data = json.loads(json.dumps(pairing_table('o-o', 3, 1).to_dict()))
        self.assertEqual(data['entries'], [
            {'lambda': [0], 'w': ['3/2'], 'lambda_pm': False, 'w_pm': True},
            {'lambda': [1], 'w': ['1/2'], 'lambda_pm': False, 'w_pm': True},
        ])
        with self.assertRaises(ValueError):
            pairing_table('u-u', 2, 1)


if __name__ == '__main__':
    unittest.main()
