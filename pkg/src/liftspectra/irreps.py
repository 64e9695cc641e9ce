"""Unitary irreducible representations of small permutation groups.

Two sources are provided: exact catalogs for the cyclic, dihedral, and
degree-3 symmetric families, and a seeded randomized decomposition of the
regular representation for arbitrary groups.  Both return the same
:class:`IrrepSet` shape, with irreps sorted by ascending dimension and ties
broken by character values on conjugacy-class representatives (descending,
so the trivial representation always comes first).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConsistencyError, NumericalError
from .permgroup import (
    ConjugacyClass,
    FiniteGroup,
    Permutation,
    SubgroupContext,
    conjugacy_classes,
    generate_group,
    parse_permutation,
)

DEFAULT_RANK_TOL = 1e-9
DEFAULT_VERIFY_TOL = 1e-8
CHARACTER_TOL = 1e-6


@dataclass(frozen=True, eq=False)
class Irrep:
    """A unitary irreducible representation given by one matrix per element.

    ``matrices[g]`` is the ``dim x dim`` image of group element ``g`` (by
    canonical index) and ``character[g]`` its trace.  The map is a
    homomorphism for left-to-right group composition read as ordinary matrix
    products: ``matrices[a] @ matrices[b] == matrices[group.mul(a, b)]``.
    """

    group: FiniteGroup
    dim: int
    matrices: np.ndarray
    character: np.ndarray


@dataclass(frozen=True, eq=False)
class IrrepSet:
    """A complete list of pairwise inequivalent irreps of one group."""

    group: FiniteGroup
    irreps: tuple[Irrep, ...]

    def __len__(self) -> int:
        return len(self.irreps)

    def __iter__(self):
        return iter(self.irreps)

    def __getitem__(self, i: int) -> Irrep:
        return self.irreps[i]

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(r.dim for r in self.irreps)


@dataclass(frozen=True, eq=False)
class SubgroupSumImage:
    """The sum of an irrep's matrices over a subgroup, with its rank data."""

    irrep: Irrep
    matrix: np.ndarray
    singular_values: np.ndarray
    rank: int


def _character(matrices: np.ndarray) -> np.ndarray:
    return np.einsum("gii->g", matrices)


def _canonical_key(dim: int, character: np.ndarray, classes: list[ConjugacyClass]):
    values = [complex(character[c.representative]) for c in classes]
    return (dim, tuple((-round(v.real, 9), -round(v.imag, 9)) for v in values))


def _sort_irreps(group, mats_list, classes):
    decorated = []
    for pos, mats in enumerate(mats_list):
        char = _character(mats)
        decorated.append((_canonical_key(mats.shape[1], char, classes), pos, mats, char))
    decorated.sort(key=lambda item: (item[0], item[1]))
    kept = []
    for _, _, mats, char in decorated:
        if any(np.max(np.abs(char - kchar)) <= CHARACTER_TOL for _, kchar in kept):
            continue
        kept.append((mats, char))
    return tuple(
        Irrep(group=group, dim=mats.shape[1], matrices=mats, character=char)
        for mats, char in kept
    )


def _validate_irrep_set(irrep_set: IrrepSet, tol: float = DEFAULT_VERIFY_TOL) -> None:
    group = irrep_set.group
    n = group.order
    if sum(r.dim * r.dim for r in irrep_set) != n:
        raise NumericalError(
            f"squared dimensions {irrep_set.dims} do not sum to the group order {n}"
        )
    for r in irrep_set:
        mats = r.matrices
        if mats.shape != (n, r.dim, r.dim):
            raise NumericalError("matrix stack has the wrong shape")
        eye = np.eye(r.dim)
        if np.max(np.abs(mats[group.identity] - eye)) > tol:
            raise NumericalError("identity element is not mapped to the identity matrix")
        unit = np.einsum("gij,gkj->gik", mats, mats.conj())
        if np.max(np.abs(unit - eye)) > tol:
            raise NumericalError(f"{r.dim}-dimensional irrep is not unitary")
        for gen in group.generators:
            prod = mats @ mats[gen]
            if np.max(np.abs(mats[group.mult_table[:, gen]] - prod)) > tol:
                raise NumericalError(f"{r.dim}-dimensional irrep is not a homomorphism")
        norm = np.vdot(r.character, r.character) / n
        if abs(norm - 1) > CHARACTER_TOL:
            raise NumericalError(
                f"character norm {norm:.6f} departs from 1; representation reducible"
            )
    for i, a in enumerate(irrep_set):
        for b in irrep_set.irreps[i + 1 :]:
            inner = np.vdot(a.character, b.character) / n
            if abs(inner) > CHARACTER_TOL:
                raise NumericalError("two listed irreps are equivalent")


def _bfs_parents(group: FiniteGroup):
    """BFS order over the group from the identity along right generator steps."""
    order = [group.identity]
    parent = {group.identity: None}
    pos = 0
    while pos < len(order):
        x = order[pos]
        for slot, gen in enumerate(group.generators):
            y = group.mul(x, gen)
            if y not in parent:
                parent[y] = (x, slot)
                order.append(y)
        pos += 1
    if len(order) != group.order:
        raise ConsistencyError("stored generators do not generate the group")
    return order, parent


def _extend_from_generators(group: FiniteGroup, gen_images: list[np.ndarray]) -> np.ndarray:
    """Extend generator images to the whole group along BFS words."""
    dim = gen_images[0].shape[0] if gen_images else 1
    mats = np.zeros((group.order, dim, dim), dtype=complex)
    mats[group.identity] = np.eye(dim)
    order, parent = _bfs_parents(group)
    for y in order[1:]:
        x, slot = parent[y]
        mats[y] = mats[x] @ gen_images[slot]
    return mats


def _builtin_cyclic(m: int) -> IrrepSet:
    if m == 1:
        group = generate_group([], degree=1)
    else:
        cycle = Permutation(m, tuple(list(range(2, m + 1)) + [1]))
        group = generate_group([cycle])
    shifts = np.array([p.images[0] - 1 for p in group.elements])
    mats_list = []
    for j in range(m):
        values = np.exp(2j * np.pi * j * shifts / m)
        mats_list.append(values.reshape(m, 1, 1))
    classes = conjugacy_classes(group)
    return IrrepSet(group=group, irreps=_sort_irreps(group, mats_list, classes))


def _dihedral_generators(m: int) -> tuple[Permutation, Permutation]:
    if m == 1:
        return Permutation.identity(2), parse_permutation("(1 2)", 2)
    if m == 2:
        return parse_permutation("(1 2)(3 4)", 4), parse_permutation("(1 3)(2 4)", 4)
    rotation = Permutation(m, tuple(list(range(2, m + 1)) + [1]))
    flip = Permutation(m, tuple([1] + list(range(m, 1, -1))))
    return rotation, flip


def _builtin_dihedral(m: int) -> IrrepSet:
    rotation, flip = _dihedral_generators(m)
    group = generate_group([rotation, flip])
    one = np.eye(1, dtype=complex)
    mats_list = []
    signs = [(1.0, 1.0), (1.0, -1.0)]
    if m % 2 == 0:
        signs += [(-1.0, 1.0), (-1.0, -1.0)]
    for sr, sf in signs:
        mats_list.append(_extend_from_generators(group, [sr * one, sf * one]))
    reflect = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)
    for j in range(1, (m + 1) // 2):
        theta = 2.0 * np.pi * j / m
        rot = np.array(
            [
                [np.cos(theta), -np.sin(theta)],
                [np.sin(theta), np.cos(theta)],
            ],
            dtype=complex,
        )
        mats_list.append(_extend_from_generators(group, [rot, reflect]))
    classes = conjugacy_classes(group)
    return IrrepSet(group=group, irreps=_sort_irreps(group, mats_list, classes))


def _builtin_sym3() -> IrrepSet:
    group = generate_group(
        [parse_permutation("(2 3)", 3), parse_permutation("(1 2)", 3)]
    )
    root3 = np.sqrt(3.0)
    # Exact two-dimensional images, keyed by image tuple.
    plane = {
        (1, 2, 3): np.eye(2, dtype=complex),
        (1, 3, 2): 0.5 * np.array([[-1.0, -root3], [-root3, 1.0]], dtype=complex),
        (2, 1, 3): 0.5 * np.array([[-1.0, root3], [root3, 1.0]], dtype=complex),
        (3, 2, 1): np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex),
        (2, 3, 1): 0.5 * np.array([[-1.0, -root3], [root3, -1.0]], dtype=complex),
        (3, 1, 2): 0.5 * np.array([[-1.0, root3], [-root3, -1.0]], dtype=complex),
    }
    n = group.order
    trivial = np.ones((n, 1, 1), dtype=complex)
    sign = np.array([float(p.sign()) for p in group.elements]).reshape(n, 1, 1)
    two = np.stack([plane[p.images] for p in group.elements])
    classes = conjugacy_classes(group)
    return IrrepSet(
        group=group, irreps=_sort_irreps(group, [trivial, sign.astype(complex), two], classes)
    )


def builtin_irreps(name: str, param: int = 1) -> IrrepSet:
    """Exact irreps for a named family: ``cyclic``, ``dihedral``, or ``sym3``.

    ``param`` is the cyclic order for ``cyclic`` (group order ``param``) and
    the polygon size for ``dihedral`` (group order ``2 * param``); it is
    ignored for ``sym3``.  Cyclic irreps are the ``param`` roots-of-unity
    characters; dihedral irreps combine the one-dimensional sign characters
    with two-dimensional rotation blocks.
    """
    if name in ("cyclic", "dihedral") and param < 1:
        raise ConsistencyError(f"{name} family needs param >= 1, got {param}")
    if name == "cyclic":
        irrep_set = _builtin_cyclic(param)
    elif name == "dihedral":
        irrep_set = _builtin_dihedral(param)
    elif name == "sym3":
        irrep_set = _builtin_sym3()
    else:
        raise ConsistencyError(f"unknown irrep family {name!r}")
    _validate_irrep_set(irrep_set)
    return irrep_set


def _cluster_spans(eigenvalues: np.ndarray, gap_tol: float):
    spans = []
    lo = 0
    for i in range(1, len(eigenvalues)):
        if eigenvalues[i] - eigenvalues[i - 1] > gap_tol:
            spans.append((lo, i))
            lo = i
    spans.append((lo, len(eigenvalues)))
    return spans


def _random_hermitian(rng: np.random.Generator, size: int) -> np.ndarray:
    a = rng.standard_normal((size, size)) + 1j * rng.standard_normal((size, size))
    return 0.5 * (a + a.conj().T)


def _split_rep(mats: np.ndarray, rng: np.random.Generator, inv_tol: float):
    """Recursively split a unitary representation into irreducible pieces."""
    n, dim, _ = mats.shape
    char = _character(mats)
    norm = np.vdot(char, char) / n
    if abs(norm - 1) <= CHARACTER_TOL:
        return [mats]
    for _ in range(8):
        seed_matrix = _random_hermitian(rng, dim)
        averaged = np.einsum("gij,jk,glk->il", mats, seed_matrix, mats.conj()) / n
        eigenvalues, eigenvectors = np.linalg.eigh(averaged)
        gap_tol = 1e-7 * max(1.0, float(eigenvalues[-1] - eigenvalues[0]))
        spans = _cluster_spans(eigenvalues, gap_tol)
        if len(spans) == 1:
            continue
        pieces = []
        invariant = True
        for lo, hi in spans:
            basis = eigenvectors[:, lo:hi]
            sub = np.einsum("ai,gab,bj->gij", basis.conj(), mats, basis)
            residual = np.max(np.abs(mats @ basis - np.einsum("ab,gbj->gaj", basis, sub)))
            if residual > inv_tol:
                invariant = False
                break
            pieces.append(sub)
        if not invariant:
            continue
        out = []
        for piece in pieces:
            out.extend(_split_rep(piece, rng, inv_tol))
        return out
    raise NumericalError(
        f"failed to split a reducible {dim}-dimensional representation after 8 draws"
    )


def _decompose_regular(group: FiniteGroup, rng: np.random.Generator, cluster_tol: float, inv_tol: float):
    n = group.order
    table = group.mult_table
    seed_matrix = _random_hermitian(rng, n)
    averaged = np.zeros((n, n), dtype=complex)
    # Conjugating by the regular representation permutes rows and columns by
    # right multiplication, so the average is a gather, not a matrix product.
    for g in range(n):
        col = table[:, g]
        averaged += seed_matrix[np.ix_(col, col)]
    averaged /= n
    eigenvalues, eigenvectors = np.linalg.eigh(averaged)
    spans = _cluster_spans(eigenvalues, cluster_tol)
    found = []
    for lo, hi in spans:
        basis = eigenvectors[:, lo:hi]
        shifted = np.stack([basis[table[:, g], :] for g in range(n)])
        sub = np.einsum("ai,gab->gib", basis.conj(), shifted)
        residual = np.max(np.abs(shifted - np.einsum("ab,gbj->gaj", basis, sub)))
        if residual > inv_tol:
            raise NumericalError("eigenvalue cluster did not give an invariant subspace")
        found.extend(_split_rep(sub, rng, inv_tol))
    return found


def compute_irreps(
    group: FiniteGroup,
    seed: int = 0,
    tol: float = DEFAULT_VERIFY_TOL,
    cluster_tol: float | None = None,
    max_retries: int = 8,
) -> IrrepSet:
    """Compute all irreps of a group by splitting its regular representation.

    A random Hermitian matrix is averaged over conjugation by the regular
    representation; its eigenspaces (clustered with ``cluster_tol``) are
    invariant subspaces that generically are already irreducible.  Reducible
    pieces are split recursively with fresh draws.  Duplicates are removed by
    character comparison and the survivors sorted canonically.

    The whole procedure is deterministic given ``(group, seed)``.  Each retry
    uses a child seed spawned from ``seed``; after ``max_retries`` failures a
    :class:`NumericalError` carrying the failure history is raised.
    """
    if cluster_tol is None:
        cluster_tol = 1e-7 * group.order
    classes = conjugacy_classes(group)
    failures = []
    for attempt in range(max_retries):
        rng = np.random.default_rng(
            np.random.SeedSequence(entropy=seed, spawn_key=(attempt,))
        )
        try:
            mats_list = _decompose_regular(group, rng, cluster_tol, tol)
            irrep_set = IrrepSet(
                group=group, irreps=_sort_irreps(group, mats_list, classes)
            )
            _validate_irrep_set(irrep_set, tol)
            return irrep_set
        except NumericalError as exc:
            failures.append(f"attempt {attempt}: {exc}")
    raise NumericalError(
        f"irreducible decomposition failed for every seed derived from {seed}: "
        + "; ".join(failures)
    )


def subgroup_sum(
    irrep: Irrep, ctx: SubgroupContext, rank_tol: float = DEFAULT_RANK_TOL
) -> SubgroupSumImage:
    """Sum the irrep over the context's subgroup and measure its rank.

    The rank counts singular values above ``rank_tol`` relative to the
    largest one.  For the trivial subgroup the sum is the identity (rank equal
    to the irrep dimension); for the full group it is zero unless the irrep
    is trivial.
    """
    if irrep.group is not ctx.group:
        raise ConsistencyError("irrep and subgroup context belong to different groups")
    members = sorted(ctx.subgroup_elements)
    matrix = irrep.matrices[members].sum(axis=0)
    singular_values = np.linalg.svd(matrix, compute_uv=False)
    top = float(singular_values[0]) if singular_values.size else 0.0
    rank = int(np.sum(singular_values > rank_tol * max(1.0, top)))
    return SubgroupSumImage(
        irrep=irrep, matrix=matrix, singular_values=singular_values, rank=rank
    )


def verify_rank_identity(
    irrep_set: IrrepSet, ctx: SubgroupContext, rank_tol: float = DEFAULT_RANK_TOL
) -> bool:
    """Check that dimension-weighted subgroup-sum ranks add up to the coset count."""
    total = sum(r.dim * subgroup_sum(r, ctx, rank_tol).rank for r in irrep_set)
    return total == ctx.index_n


def verify_great_orthogonality(irrep_set: IrrepSet, tol: float = DEFAULT_VERIFY_TOL) -> bool:
    """Check orthonormality of all scaled matrix-entry functions.

    The entry functions ``g -> sqrt(dim/|G|) * matrices[g][i, j]``, collected
    over all irreps, must form an orthonormal family in the inner product
    ``<x, y> = sum_g conj(x(g)) y(g)``.
    """
    group = irrep_set.group
    n = group.order
    columns = [
        r.matrices.reshape(n, r.dim * r.dim) * np.sqrt(r.dim / n) for r in irrep_set
    ]
    w = np.hstack(columns)
    gram = w.conj().T @ w
    return float(np.max(np.abs(gram - np.eye(w.shape[1])))) <= tol


def verify_character_orthogonality(
    irrep_set: IrrepSet,
    classes: list[ConjugacyClass] | None = None,
    tol: float = DEFAULT_VERIFY_TOL,
) -> bool:
    """Check both character orthogonality relations on the class table.

    Rows: ``sum_g chi_a(g) conj(chi_b(g)) = |G| delta_ab``.  Columns: for
    class representatives ``g, g'``, ``sum_r chi_r(g) conj(chi_r(g')) =
    (|G| / |class(g)|) delta``.
    """
    group = irrep_set.group
    n = group.order
    if classes is None:
        classes = conjugacy_classes(group)
    reps = [c.representative for c in classes]
    sizes = np.array([c.size for c in classes], dtype=float)
    table = np.array([[r.character[g] for g in reps] for r in irrep_set])
    scale = tol * max(1.0, float(n))
    rows = table @ np.diag(sizes) @ table.conj().T
    if np.max(np.abs(rows - n * np.eye(len(table)))) > scale:
        return False
    cols = table.conj().T @ table
    if np.max(np.abs(cols - np.diag(n / sizes))) > scale:
        return False
    return True
