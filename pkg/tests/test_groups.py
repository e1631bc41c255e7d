import numpy as np
import pytest

from snowflake_embed import (
    close_group,
    dihedral_action,
    reflection_action,
    rotation_action,
    trivial_action,
)
from snowflake_embed.errors import (
    NotOrthogonal,
    NumericalAmbiguity,
    OrderExceeded,
)
from snowflake_embed.groups import FiniteGroup, OrthogonalAction


def rot2(theta):
    return np.array([
        [np.cos(theta), -np.sin(theta)],
        [np.sin(theta), np.cos(theta)],
    ])


def mirror2(theta):
    """Reflection of E^2 across the line at angle theta."""
    return np.array([
        [np.cos(2 * theta), np.sin(2 * theta)],
        [np.sin(2 * theta), -np.cos(2 * theta)],
    ])


def closure_size_oracle(generators, depth=8):
    """Independent enumeration: all words up to the given depth, deduplicated
    by rounding (+0.0 normalizes signed zeros)."""

    def key(p):
        return (p.round(9) + 0.0).tobytes()

    eye = np.eye(generators[0].shape[0])
    seen = {key(eye): eye}
    frontier = [eye]
    for _ in range(depth):
        new = []
        for e in frontier:
            for g in generators:
                p = e @ g
                if key(p) not in seen:
                    seen[key(p)] = p
                    new.append(p)
        frontier = new
    return len(seen)


class TestCloseGroup:
    def test_sign_flip_gives_c2(self):
        action = close_group([np.array([[-1.0]])])
        assert action.group.order == 2
        assert np.array_equal(action.group.table, [[0, 1], [1, 0]])
        assert action.group.identity_index == 0

    def test_quarter_turn_gives_c4(self):
        action = close_group([rot2(np.pi / 2)])
        assert action.group.order == 4
        # breadth-first enumeration orders elements by power of the generator
        i, j = np.meshgrid(range(4), range(4), indexing="ij")
        assert np.array_equal(action.group.table, (i + j) % 4)

    def test_two_mirrors_give_dihedral(self):
        # mirror lines at relative angle pi/3: their product is a rotation
        # of order 3, so the closure is the 6-element dihedral group
        gens = [mirror2(0.0), mirror2(np.pi / 3)]
        assert closure_size_oracle(gens) == 6
        action = close_group(gens)
        assert action.group.order == 6
        t = action.group.table
        assert any(t[g, h] != t[h, g] for g in range(6) for h in range(6))

    def test_rejects_non_orthogonal(self):
        with pytest.raises(NotOrthogonal) as exc:
            close_group([np.array([[1.0, 0.0], [0.0, 2.0]])])
        assert exc.value.index == 0

    def test_order_exceeded(self):
        with pytest.raises(OrderExceeded):
            close_group([rot2(1.0)], max_order=16)

    def test_numerical_ambiguity_band(self):
        # a rotation 3e-8 away from the identity falls in (tol, 10 tol]
        with pytest.raises(NumericalAmbiguity):
            close_group([rot2(3e-8)], tol=1e-8, max_order=8)

    def test_generator_polish(self):
        # a generator that is orthogonal only to within the identification
        # tolerance comes out exactly orthogonal after the polar projection
        g = rot2(2 * np.pi / 5) + 5e-11
        assert np.abs(g.T @ g - np.eye(2)).max() > 1e-10
        action = close_group([g])
        assert action.group.order == 5
        eye = np.eye(2)
        for mat in action.matrices:
            assert np.abs(mat.T @ mat - eye).max() < 1e-14

    def test_empty_generators_rejected(self):
        with pytest.raises(ValueError):
            close_group([])

    def test_inconsistent_dimensions_rejected(self):
        from snowflake_embed.errors import DimensionMismatch

        with pytest.raises(DimensionMismatch):
            close_group([np.eye(2), np.eye(3)])


class TestFiniteGroupFromTable:
    def test_cyclic_three(self):
        i, j = np.meshgrid(range(3), range(3), indexing="ij")
        g = FiniteGroup.from_table((i + j) % 3)
        assert g.order == 3
        assert g.identity_index == 0
        assert np.array_equal(g.inverse, [0, 2, 1])

    def test_rejects_non_latin(self):
        with pytest.raises(ValueError, match="Latin"):
            FiniteGroup.from_table([[0, 0], [1, 1]])

    def test_rejects_missing_identity(self):
        # a Latin square (quasigroup) without a two-sided identity
        table = [[1, 0, 2], [2, 1, 0], [0, 2, 1]]
        with pytest.raises(ValueError, match="identity"):
            FiniteGroup.from_table(table)

    def test_rejects_non_associative_loop(self):
        # smallest non-associative loop: Latin, identity 0, two-sided
        # inverses, but (gh)k != g(hk) somewhere
        table = [
            [0, 1, 2, 3, 4],
            [1, 0, 3, 4, 2],
            [2, 4, 0, 1, 3],
            [3, 2, 4, 0, 1],
            [4, 3, 1, 2, 0],
        ]
        with pytest.raises(ValueError, match="associative"):
            FiniteGroup.from_table(table)


class TestOrthogonalAction:
    def test_homomorphism_invariant(self):
        action = dihedral_action(3)
        g = action.group
        for a in range(g.order):
            for b in range(g.order):
                prod = action.matrices[a] @ action.matrices[b]
                defect = np.abs(action.matrices[g.table[a, b]] - prod).max()
                assert defect <= 1e-9

    def test_orthogonality_invariant(self):
        action = rotation_action(5)
        eye = np.eye(2)
        for mat in action.matrices:
            assert np.abs(mat.T @ mat - eye).max() <= 1e-10

    def test_rejects_inconsistent_matrices(self):
        c2 = close_group([np.array([[-1.0]])])
        swapped = c2.matrices[::-1].copy()
        with pytest.raises(ValueError):
            OrthogonalAction(group=c2.group, dim=1, matrices=swapped)


class TestHelpers:
    def test_reflection(self):
        action = reflection_action()
        assert action.group.order == 2
        assert action.dim == 1

    def test_rotation_orders(self):
        for k in (2, 3, 4, 6):
            assert rotation_action(k).group.order == k

    def test_dihedral(self):
        action = dihedral_action(4)
        assert action.group.order == 8
        t = action.group.table
        assert any(t[g, h] != t[h, g] for g in range(8) for h in range(8))

    def test_trivial(self):
        action = trivial_action(3)
        assert action.group.order == 1
        assert np.array_equal(action.matrices[0], np.eye(3))
