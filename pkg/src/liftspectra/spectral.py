"""Lift spectra and eigenvector bases computed blockwise through irreps.

The base matrix of a voltage graph, pushed through a ``d``-dimensional irrep,
becomes a ``dk x dk`` complex matrix.  Its eigenvalues enter the lift
spectrum with multiplicity equal to the rank of the irrep's subgroup sum,
and its eigenvectors pull back to lift eigenvectors through a fixed sparse
matrix of coset-summed irrep rows.  Nothing here builds the lift itself
except for the final residual cross-checks.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .errors import ConsistencyError, NumericalError
from .irreps import Irrep, IrrepSet, subgroup_sum
from .permgroup import SubgroupContext
from .voltage import BaseMatrix, VoltageGraph, build_base_matrix, build_lift

DEFAULT_MATCH_TOL = 1e-7
DEFAULT_RESIDUAL_TOL = 1e-8
DEFAULT_ZERO_TOL = 1e-10
HERMITIAN_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class IrrepImage:
    """A base matrix pushed through one irrep: blocks ``rho(B[u, v])``."""

    irrep: Irrep
    matrix: np.ndarray


@dataclass(frozen=True, eq=False)
class IrrepEigenData:
    """Eigendecomposition of one irrep image, eigenvalues sorted ascending."""

    irrep: Irrep
    matrix: np.ndarray
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    hermitian: bool


@dataclass(frozen=True)
class SpectrumEntry:
    """One merged eigenvalue with its total multiplicity in the lift.

    ``provenance`` lists ``(irrep index, irrep dimension, rank factor)`` for
    every irrep contributing to this eigenvalue.
    """

    value: complex
    count: int
    provenance: tuple[tuple[int, int, int], ...]


@dataclass(frozen=True, eq=False)
class SpectrumReport:
    """The complete lift spectrum as merged entries summing to ``kn``."""

    entries: tuple[SpectrumEntry, ...]
    total: int

    def expand(self) -> np.ndarray:
        """The full eigenvalue multiset, sorted, one copy per multiplicity."""
        values = [e.value for e in self.entries for _ in range(e.count)]
        return np.array(values, dtype=complex)

    def to_json(self) -> dict:
        return {
            "kn": self.total,
            "eigenvalues": [
                {
                    "value": [e.value.real, e.value.imag],
                    "count": e.count,
                    "provenance": [
                        {"irrep": i, "dim": d, "rank": r} for i, d, r in e.provenance
                    ],
                }
                for e in self.entries
            ],
        }


@dataclass(frozen=True, eq=False)
class EigenvectorColumn:
    """One pulled-back column, tagged by its origin.

    ``irrep`` indexes the irrep set, ``j`` the coset-sum row block, and
    ``(w, i)`` the eigenvector column of the irrep image it came from.
    """

    vector: np.ndarray
    eigenvalue: complex
    irrep: int
    j: int
    w: int
    i: int
    zero: bool
    selected: bool


@dataclass(frozen=True, eq=False)
class EigenvectorBundle:
    """All pulled-back columns plus a selected basis of exactly ``kn`` of them."""

    columns: tuple[EigenvectorColumn, ...]
    selected_basis: tuple[int, ...]
    kn: int

    def matrix(self) -> np.ndarray:
        return np.column_stack([c.vector for c in self.columns])

    def to_json(self) -> dict:
        return {
            "kn": self.kn,
            "selected": list(self.selected_basis),
            "columns": [
                {
                    "eigenvalue": [c.eigenvalue.real, c.eigenvalue.imag],
                    "irrep": c.irrep,
                    "j": c.j,
                    "w": c.w,
                    "i": c.i,
                    "vector": [[x.real, x.imag] for x in c.vector],
                    "selected": c.selected,
                    "zero": c.zero,
                }
                for c in self.columns
            ],
        }


def irrep_image(base: BaseMatrix, irrep: Irrep) -> IrrepImage:
    """Apply an irrep entrywise to a base matrix, producing a ``dk x dk`` block matrix."""
    if base.group is not irrep.group:
        raise ConsistencyError("base matrix and irrep belong to different groups")
    d = irrep.dim
    k = base.k
    out = np.zeros((d * k, d * k), dtype=complex)
    for u in range(k):
        for v in range(k):
            block = out[u * d : (u + 1) * d, v * d : (v + 1) * d]
            for g, c in base.entry(u, v).coefficients.items():
                block += c * irrep.matrices[g]
    return IrrepImage(irrep=irrep, matrix=out)


def eig_dense(
    matrix: np.ndarray, hermitian_hint: bool = False, tol: float = DEFAULT_RESIDUAL_TOL
) -> tuple[np.ndarray, np.ndarray]:
    """Dense eigendecomposition with a residual guarantee.

    Eigenvalues are sorted ascending by (real, imaginary) with matching
    eigenvector columns; with ``hermitian_hint`` the eigenvalues come back as
    a real array.  The residual ``max |M U - U diag|`` must stay within
    ``tol * max|M|`` or a :class:`NumericalError` is raised.
    """
    matrix = np.asarray(matrix)
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        raise ValueError("eig_dense needs a square matrix")
    if not np.all(np.isfinite(matrix)):
        raise NumericalError("matrix has non-finite entries")
    if hermitian_hint:
        eigenvalues, eigenvectors = np.linalg.eigh(matrix)
    else:
        eigenvalues, eigenvectors = np.linalg.eig(matrix)
    order = np.lexsort((eigenvalues.imag, eigenvalues.real))
    eigenvalues = eigenvalues[order]
    eigenvectors = eigenvectors[:, order]
    residual = np.max(
        np.abs(matrix @ eigenvectors - eigenvectors * eigenvalues[np.newaxis, :])
    ) if matrix.size else 0.0
    scale = float(np.max(np.abs(matrix))) if matrix.size else 0.0
    if residual > tol * max(1.0, scale):
        raise NumericalError(
            f"eigendecomposition residual {residual:.3e} exceeds tolerance"
        )
    return eigenvalues, eigenvectors


def _image_eigendata(base: BaseMatrix, irrep: Irrep) -> IrrepEigenData:
    image = irrep_image(base, irrep).matrix
    scale = float(np.max(np.abs(image))) if image.size else 0.0
    hermitian = bool(
        np.max(np.abs(image - image.conj().T)) <= HERMITIAN_TOL * max(1.0, scale)
    ) if image.size else True
    eigenvalues, eigenvectors = eig_dense(image, hermitian_hint=hermitian)
    return IrrepEigenData(
        irrep=irrep,
        matrix=image,
        eigenvalues=np.asarray(eigenvalues, dtype=complex),
        eigenvectors=eigenvectors,
        hermitian=hermitian,
    )


def _check_triple(base: BaseMatrix, irrep_set: IrrepSet, ctx: SubgroupContext) -> None:
    if base.group is not irrep_set.group or base.group is not ctx.group:
        raise ConsistencyError("base matrix, irreps, and context must share one group")
    if base.directed:
        raise ConsistencyError(
            "spectral lift routines need an undirected base; "
            "use the character route for digraph regular lifts"
        )


def lift_spectrum(
    base: BaseMatrix,
    irrep_set: IrrepSet,
    ctx: SubgroupContext,
    match_tol: float = DEFAULT_MATCH_TOL,
    rank_tol: float = 1e-9,
) -> SpectrumReport:
    """Assemble the full lift spectrum from per-irrep image eigenvalues.

    Each irrep contributes the spectrum of its base-matrix image, repeated by
    the rank of its subgroup sum.  The dimension-weighted ranks must add up
    to the coset count; a violation means the irrep list is wrong and raises
    :class:`NumericalError`.  Eigenvalues closer than ``match_tol`` merge
    into a single entry with combined multiplicity.
    """
    _check_triple(base, irrep_set, ctx)
    n = ctx.index_n
    ranks = [subgroup_sum(r, ctx, rank_tol).rank for r in irrep_set]
    weighted = sum(r.dim * rank for r, rank in zip(irrep_set, ranks))
    if weighted != n:
        raise NumericalError(
            f"dimension-weighted ranks sum to {weighted}, expected {n}; "
            "irrep list is incomplete or duplicated"
        )
    raw: list[tuple[complex, int, tuple[int, int, int]]] = []
    for idx, (irrep, rank) in enumerate(zip(irrep_set, ranks)):
        if rank == 0:
            continue
        data = _image_eigendata(base, irrep)
        for value in data.eigenvalues:
            raw.append((complex(value), rank, (idx, irrep.dim, rank)))
    raw.sort(key=lambda item: (item[0].real, item[0].imag))
    entries: list[SpectrumEntry] = []
    pos = 0
    while pos < len(raw):
        anchor, count, tag = raw[pos]
        tags = {tag}
        end = pos + 1
        while end < len(raw) and abs(raw[end][0] - anchor) <= match_tol:
            count += raw[end][1]
            tags.add(raw[end][2])
            end += 1
        entries.append(
            SpectrumEntry(value=anchor, count=count, provenance=tuple(sorted(tags)))
        )
        pos = end
    total = sum(e.count for e in entries)
    if total != base.k * n:
        raise NumericalError(
            f"spectrum size {total} does not match lift order {base.k * n}"
        )
    return SpectrumReport(entries=tuple(entries), total=total)


def build_coset_sum_matrix(
    irrep_set: IrrepSet, ctx: SubgroupContext, k: int
) -> np.ndarray:
    """Stack the coset-summed irrep rows used to pull eigenvectors back.

    For each irrep of dimension ``d`` and each row index ``j``, the ``n x d``
    block holds in row ``J`` the ``j``-th row of the irrep summed over coset
    ``J``; that block is repeated down the diagonal once per base vertex.
    Blocks are concatenated over ``j`` and then over irreps, giving a
    ``kn x k|G|`` matrix whose rank is exactly ``kn``.
    """
    if irrep_set.group is not ctx.group:
        raise ConsistencyError("irreps and subgroup context belong to different groups")
    if k < 1:
        raise ValueError("k must be at least 1")
    blocks = []
    eye_k = np.eye(k)
    for irrep in irrep_set:
        coset_sums = np.stack(
            [irrep.matrices[sorted(coset)].sum(axis=0) for coset in ctx.cosets]
        )
        for j in range(irrep.dim):
            blocks.append(np.kron(eye_k, coset_sums[:, j, :]))
    return np.hstack(blocks)


def build_eigenvector_blocks(eigendata: list[IrrepEigenData], k: int) -> np.ndarray:
    """Block-diagonal matrix of per-irrep eigenvector matrices.

    Each irrep's ``dk x dk`` eigenvector matrix appears ``d`` times on the
    diagonal, once per coset-sum row block.  A singular eigenvector matrix
    (possible only for defective non-Hermitian images) raises
    :class:`NumericalError`.
    """
    blocks = []
    for data in eigendata:
        u = data.eigenvectors
        singular_values = np.linalg.svd(u, compute_uv=False)
        if singular_values.size and singular_values[-1] <= 1e-10 * singular_values[0]:
            raise NumericalError(
                "eigenvector matrix is singular; the irrep image is defective"
            )
        blocks.append(np.kron(np.eye(data.irrep.dim), u))
    return scipy.linalg.block_diag(*blocks)


def _adjacency_from_base(base: BaseMatrix, ctx: SubgroupContext) -> np.ndarray:
    """Reconstruct the lift adjacency from base-matrix coefficients."""
    n = ctx.index_n
    k = base.k
    adjacency = np.zeros((k * n, k * n), dtype=np.int64)
    coset_rows = np.arange(n)
    for u in range(k):
        for v in range(k):
            for g, c in base.entry(u, v).integer_coefficients().items():
                action = ctx.action_on_cosets(g)
                adjacency[u * n + coset_rows, v * n + action] += c
    return adjacency


def lift_eigenvectors(
    base: BaseMatrix,
    irrep_set: IrrepSet,
    ctx: SubgroupContext,
    residual_tol: float = DEFAULT_RESIDUAL_TOL,
    zero_tol: float = DEFAULT_ZERO_TOL,
) -> EigenvectorBundle:
    """Pull irrep-image eigenvectors back to a full lift eigenbasis.

    The coset-sum matrix times the block-diagonal eigenvector matrix yields
    one tagged column per (irrep, row block, image eigenvector).  Columns
    vanish exactly when the irrep's subgroup sum kills the row block; the
    remaining columns span every eigenspace, and a column-pivoted QR selects
    ``kn`` of them as a basis.  Every selected column is residual-checked
    against the lift adjacency.
    """
    _check_triple(base, irrep_set, ctx)
    n = ctx.index_n
    k = base.k
    kn = k * n
    eigendata = [_image_eigendata(base, irrep) for irrep in irrep_set]
    coset_matrix = build_coset_sum_matrix(irrep_set, ctx, k)
    blocks = build_eigenvector_blocks(eigendata, k)
    pulled = coset_matrix @ blocks

    tags: list[tuple[int, int, int, int, complex]] = []
    for idx, data in enumerate(eigendata):
        d = data.irrep.dim
        for j in range(d):
            for c in range(d * k):
                tags.append((idx, j, c // d, c % d, complex(data.eigenvalues[c])))
    if len(tags) != pulled.shape[1]:
        raise NumericalError("column tagging does not match the pulled-back matrix")

    column_peaks = (
        np.max(np.abs(pulled), axis=0) if pulled.size else np.zeros(pulled.shape[1])
    )
    global_peak = float(column_peaks.max()) if column_peaks.size else 0.0
    zero_mask = column_peaks <= zero_tol * global_peak

    nonzero_idx = np.flatnonzero(~zero_mask)
    if nonzero_idx.size < kn:
        raise NumericalError(
            f"only {nonzero_idx.size} nonzero columns, cannot select {kn}"
        )
    _, r_factor, pivots = scipy.linalg.qr(
        pulled[:, nonzero_idx], mode="economic", pivoting=True
    )
    diag = np.abs(np.diag(r_factor))
    if diag.size < kn or diag[kn - 1] <= 1e-10 * diag[0]:
        raise NumericalError(
            "pulled-back columns do not reach full rank; cannot select a basis"
        )
    selected = sorted(int(nonzero_idx[p]) for p in pivots[:kn])
    selected_set = set(selected)

    adjacency = _adjacency_from_base(base, ctx)
    for col in selected:
        vec = pulled[:, col]
        residual = np.linalg.norm(adjacency @ vec - tags[col][4] * vec)
        if residual > residual_tol * max(1.0, np.linalg.norm(vec)):
            raise NumericalError(
                f"selected column {col} fails the eigenvector residual bound "
                f"({residual:.3e})"
            )

    columns = tuple(
        EigenvectorColumn(
            vector=pulled[:, col],
            eigenvalue=tags[col][4],
            irrep=tags[col][0],
            j=tags[col][1],
            w=tags[col][2],
            i=tags[col][3],
            zero=bool(zero_mask[col]),
            selected=col in selected_set,
        )
        for col in range(pulled.shape[1])
    )
    return EigenvectorBundle(columns=columns, selected_basis=tuple(selected), kn=kn)


@dataclass(frozen=True, eq=False)
class OracleReport:
    """Outcome of cross-checking the blockwise method against an explicit lift."""

    passed: bool
    spectral_distance: float
    max_residual: float
    kn: int
    selected_count: int

    def to_json(self) -> dict:
        return {
            "passed": self.passed,
            "spectral_distance": self.spectral_distance,
            "max_residual": self.max_residual,
            "kn": self.kn,
            "selected_count": self.selected_count,
        }


def verify_against_oracle(
    graph: VoltageGraph,
    irrep_set: IrrepSet,
    ctx: SubgroupContext,
    match_tol: float = DEFAULT_MATCH_TOL,
    residual_tol: float = DEFAULT_RESIDUAL_TOL,
) -> OracleReport:
    """Compare blockwise spectrum and eigenvectors with the explicit lift.

    The lift adjacency is built outright and eigendecomposed; the blockwise
    spectrum must match it as a sorted multiset within ``match_tol``, and
    every selected eigenvector column must satisfy the residual bound against
    the same adjacency.
    """
    if graph.directed:
        raise ConsistencyError("oracle verification needs an undirected base")
    base = build_base_matrix(graph)
    lift = build_lift(graph, ctx)
    reference = np.linalg.eigvalsh(lift.adjacency.astype(float))

    report = lift_spectrum(base, irrep_set, ctx, match_tol=match_tol)
    values = report.expand()
    if np.max(np.abs(values.imag), initial=0.0) > match_tol:
        raise NumericalError("undirected lift produced non-real eigenvalues")
    computed = np.sort(values.real)
    if computed.shape != reference.shape:
        raise NumericalError(
            f"spectrum sizes differ: {computed.shape[0]} vs {reference.shape[0]}"
        )
    spectral_distance = float(np.max(np.abs(computed - reference), initial=0.0))

    bundle = lift_eigenvectors(base, irrep_set, ctx, residual_tol=residual_tol)
    max_residual = 0.0
    for col in bundle.selected_basis:
        column = bundle.columns[col]
        residual = np.linalg.norm(
            lift.adjacency @ column.vector - column.eigenvalue * column.vector
        ) / max(1.0, np.linalg.norm(column.vector))
        max_residual = max(max_residual, float(residual))

    passed = (
        spectral_distance <= match_tol
        and max_residual <= residual_tol
        and len(bundle.selected_basis) == bundle.kn
    )
    return OracleReport(
        passed=passed,
        spectral_distance=spectral_distance,
        max_residual=max_residual,
        kn=bundle.kn,
        selected_count=len(bundle.selected_basis),
    )
