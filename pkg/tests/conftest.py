import numpy as np
import pytest

from liftspectra import (
    VoltageGraph,
    build_base_matrix,
    builtin_irreps,
    parse_permutation,
    right_cosets,
    stabilizer,
)


@pytest.fixture(scope="session")
def sym3_catalog():
    """Sym(3) with its catalog irreps (trivial, sign, standard)."""
    return builtin_irreps("sym3")


@pytest.fixture(scope="session")
def sym3(sym3_catalog):
    return sym3_catalog.group


@pytest.fixture(scope="session")
def dumbbell(sym3):
    """Two vertices, a loop at each, one connecting edge, Sym(3) voltages.

    The loop at u carries (2 3), the loop at v carries (1 2), and the u-v
    edge carries the identity.
    """
    g = sym3.index_of(parse_permutation("(2 3)", 3))
    h = sym3.index_of(parse_permutation("(1 2)", 3))
    return VoltageGraph.build(
        sym3,
        ["u", "v"],
        [("u", "u", g), ("u", "v", sym3.identity), ("v", "v", h)],
    )


@pytest.fixture(scope="session")
def dumbbell_base(dumbbell):
    return build_base_matrix(dumbbell)


@pytest.fixture(scope="session")
def point_stabilizer_ctx(sym3):
    """Index-3 context: cosets of the stabilizer of point 1 in Sym(3)."""
    return right_cosets(sym3, stabilizer(sym3, 1))


@pytest.fixture(scope="session")
def trivial_ctx(sym3):
    return right_cosets(sym3, frozenset({sym3.identity}))


@pytest.fixture(scope="session")
def full_ctx(sym3):
    return right_cosets(sym3, frozenset(range(sym3.order)))


SQRT3 = float(np.sqrt(3.0))
SQRT7 = float(np.sqrt(7.0))

# Relative (index-3) dumbbell spectrum and the regular 12-element multiset.
DUMBBELL_RELATIVE = (-SQRT7, -SQRT3, 1.0, SQRT3, SQRT7, 3.0)
DUMBBELL_REGULAR = (
    -3.0,
    -SQRT7,
    -SQRT7,
    -SQRT3,
    -SQRT3,
    -1.0,
    1.0,
    SQRT3,
    SQRT3,
    SQRT7,
    SQRT7,
    3.0,
)
