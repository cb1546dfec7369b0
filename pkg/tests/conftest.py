"""Shared builders for the structure equations used across the test suite."""
import pytest

from hha.liealg import LieAlgebraData
from hha.scalars import ONE, rational


def algebra_from_equations(dim, equations):
    """1-based structure equation dict {k: [(i, j, coeff), ...]} -> algebra."""
    eqs = {
        k - 1: [(i - 1, j - 1, c) for (i, j, c) in terms]
        for k, terms in equations.items()
    }
    return LieAlgebraData.from_structure_equations(dim, eqs)


def nil12_qbal():
    """12-dim two-step nilpotent algebra carrying a quaternionic balanced metric."""
    return algebra_from_equations(12, {
        9: [(1, 5, ONE)],
        10: [(1, 6, ONE)],
        11: [(1, 7, ONE)],
        12: [(1, 8, ONE)],
    })


def nil12_qsg():
    """12-dim nilpotent algebra whose unitary metric is q-strongly-Gauduchon."""
    return algebra_from_equations(12, {
        9: [(1, 3, ONE)],
        10: [(1, 4, ONE), (7, 8, ONE)],
        11: [(5, 7, ONE)],
        12: [(3, 4, -ONE), (5, 8, ONE)],
    })


def nil_qgau(n):
    """4n-dim nilpotent family with q-Gauduchon but no q-strongly-Gauduchon metrics."""
    dim = 4 * n
    eqs = {
        dim - 2: [(4 * k - 3, 4 * k - 2, ONE) for k in range(1, n)],
        dim - 1: [(4 * k - 3, 4 * k - 1, ONE) for k in range(1, n)],
        dim: [(4 * k - 3, 4 * k, ONE) for k in range(1, n)],
    }
    return algebra_from_equations(dim, eqs)


def solv_aff_c():
    """Affine motions of the complex line; diagonal metric has vanishing factor."""
    return algebra_from_equations(4, {
        1: [(1, 4, -ONE), (2, 3, ONE)],
        3: [(1, 2, ONE), (3, 4, -ONE)],
    })


def solv_rank1():
    """4-dim solvable algebra with Einstein factor -1/2."""
    return algebra_from_equations(4, {
        2: [(1, 2, -ONE)],
        3: [(1, 3, -ONE)],
        4: [(1, 4, -ONE)],
    })


def solv_third():
    """4-dim solvable algebra with Einstein factor -3/16.

    The e3^e4 coefficient is 1/2, the unique value already compatible with
    integrability of the standard pair and with the expected alpha and
    Einstein factor.
    """
    return algebra_from_equations(4, {
        2: [(1, 2, -ONE), (3, 4, rational(1, 2))],
        3: [(1, 3, rational(-1, 2))],
        4: [(1, 4, rational(-1, 2))],
    })


def su2_block_algebra():
    """R + su(2) with [e2,e3] = 2e4 cyclic (unrescaled blocks)."""
    return LieAlgebraData(4, {
        (1, 2): {3: rational(2)},
        (3, 1): {2: rational(2)},
        (2, 3): {1: rational(2)},
    })
