"""Voltage graphs, their group-algebra base matrices, and explicit lifts.

A voltage graph is a finite multigraph whose arcs carry group elements.  An
undirected edge is stored as a pair of mutually inverse arcs, so loops
contribute a voltage and its inverse to the same diagonal entry of the base
matrix.  Given a subgroup context with ``n`` cosets, the lift places ``n``
copies of each base vertex and connects ``(u, J)`` to ``(v, J * voltage)``
for every arc ``u -> v``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import ConsistencyError, NumericalError
from .permgroup import (
    FiniteGroup,
    SubgroupContext,
    right_cosets,
    subgroup_closure,
)

INTEGER_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class GroupAlgebraElement:
    """A finite formal sum of group elements with complex coefficients.

    Coefficients are keyed by canonical element index.  Products convolve:
    ``(x * y)[k] = sum over i, j with i*j = k of x[i] * y[j]``.
    """

    group: FiniteGroup
    coefficients: dict[int, complex]

    @classmethod
    def zero(cls, group: FiniteGroup) -> "GroupAlgebraElement":
        return cls(group, {})

    @classmethod
    def from_element(
        cls, group: FiniteGroup, index: int, coefficient: complex = 1.0
    ) -> "GroupAlgebraElement":
        return cls(group, {int(index): complex(coefficient)})

    def coefficient(self, index: int) -> complex:
        return self.coefficients.get(int(index), 0j)

    def __add__(self, other: "GroupAlgebraElement") -> "GroupAlgebraElement":
        if self.group is not other.group:
            raise ConsistencyError("cannot add elements over different groups")
        out = dict(self.coefficients)
        for idx, c in other.coefficients.items():
            out[idx] = out.get(idx, 0j) + c
        return GroupAlgebraElement(self.group, out)

    def __mul__(self, other: "GroupAlgebraElement") -> "GroupAlgebraElement":
        if self.group is not other.group:
            raise ConsistencyError("cannot multiply elements over different groups")
        table = self.group.mult_table
        out: dict[int, complex] = {}
        for i, ci in self.coefficients.items():
            row = table[i]
            for j, cj in other.coefficients.items():
                k = int(row[j])
                out[k] = out.get(k, 0j) + ci * cj
        return GroupAlgebraElement(self.group, out)

    def scaled(self, factor: complex) -> "GroupAlgebraElement":
        return GroupAlgebraElement(
            self.group, {i: factor * c for i, c in self.coefficients.items()}
        )

    def is_zero(self, tol: float = 0.0) -> bool:
        return all(abs(c) <= tol for c in self.coefficients.values())

    def isclose(self, other: "GroupAlgebraElement", tol: float = 1e-9) -> bool:
        keys = set(self.coefficients) | set(other.coefficients)
        return all(abs(self.coefficient(k) - other.coefficient(k)) <= tol for k in keys)

    def integer_coefficients(self, tol: float = INTEGER_TOL) -> dict[int, int]:
        """Coefficients rounded to integers, or :class:`NumericalError` if far."""
        out = {}
        for idx, c in self.coefficients.items():
            nearest = round(c.real)
            if abs(c - nearest) > tol:
                raise NumericalError(
                    f"coefficient {c} of element {idx} is not an integer within {tol}"
                )
            if nearest != 0:
                out[idx] = int(nearest)
        return out

    def __repr__(self) -> str:
        if not self.coefficients:
            return "GroupAlgebraElement(0)"
        parts = [
            f"{c:g}*{self.group.elements[i].cycle_string()}"
            for i, c in sorted(self.coefficients.items())
        ]
        return "GroupAlgebraElement(" + " + ".join(parts) + ")"


class Arc(NamedTuple):
    tail: int
    head: int
    voltage: int
    paired_arc: int | None


@dataclass(frozen=True, eq=False)
class VoltageGraph:
    """A multigraph with group-element voltages on its arcs.

    For undirected graphs every input edge is stored as two arcs that are
    inverses of each other (``paired_arc`` links them); loops get both
    orientations as well.  Directed graphs keep exactly the arcs given.
    """

    group: FiniteGroup
    vertices: tuple[str, ...]
    arcs: tuple[Arc, ...]
    directed: bool

    @classmethod
    def build(
        cls,
        group: FiniteGroup,
        vertices,
        edges,
        directed: bool = False,
    ) -> "VoltageGraph":
        """Assemble a voltage graph from labelled edges.

        ``edges`` is an iterable of ``(tail_label, head_label, voltage_index)``
        triples; labels must appear in ``vertices``, voltages are canonical
        element indices of ``group``.
        """
        labels = tuple(str(v) for v in vertices)
        if not labels:
            raise ConsistencyError("a voltage graph needs at least one vertex")
        if len(set(labels)) != len(labels):
            raise ConsistencyError("vertex labels must be distinct")
        index = {label: i for i, label in enumerate(labels)}
        arcs: list[Arc] = []
        for tail_label, head_label, voltage in edges:
            try:
                tail = index[str(tail_label)]
                head = index[str(head_label)]
            except KeyError as missing:
                raise ConsistencyError(f"unknown vertex label {missing.args[0]!r}") from None
            voltage = int(voltage)
            if not 0 <= voltage < group.order:
                raise ConsistencyError(f"voltage index {voltage} outside the group")
            if directed:
                arcs.append(Arc(tail, head, voltage, None))
            else:
                pos = len(arcs)
                arcs.append(Arc(tail, head, voltage, pos + 1))
                arcs.append(Arc(head, tail, group.inv(voltage), pos))
        return cls(group=group, vertices=labels, arcs=tuple(arcs), directed=directed)

    @property
    def k(self) -> int:
        return len(self.vertices)

    def vertex_index(self, label: str) -> int:
        try:
            return self.vertices.index(label)
        except ValueError:
            raise ConsistencyError(f"unknown vertex label {label!r}") from None

    def edge_triples(self):
        """One ``(tail_label, head_label, voltage)`` triple per input edge."""
        if self.directed:
            chosen = self.arcs
        else:
            chosen = self.arcs[::2]
        return [
            (self.vertices[a.tail], self.vertices[a.head], a.voltage) for a in chosen
        ]


def randomize_voltages(graph: VoltageGraph, rng: np.random.Generator) -> VoltageGraph:
    """Resample every edge voltage uniformly from the graph's group."""
    edges = [
        (tail, head, int(rng.integers(graph.group.order)))
        for tail, head, _ in graph.edge_triples()
    ]
    return VoltageGraph.build(graph.group, graph.vertices, edges, graph.directed)


@dataclass(frozen=True, eq=False)
class BaseMatrix:
    """The vertex-by-vertex matrix of summed arc voltages.

    Entry ``(u, v)`` is the group-algebra sum of the voltages of all arcs
    from ``u`` to ``v``.  For an undirected graph the matrix is self-adjoint:
    transposing and inverting every group element gives it back.
    """

    group: FiniteGroup
    k: int
    entries: tuple[tuple[GroupAlgebraElement, ...], ...]
    directed: bool

    def entry(self, u: int, v: int) -> GroupAlgebraElement:
        return self.entries[u][v]

    def __matmul__(self, other: "BaseMatrix") -> "BaseMatrix":
        if self.group is not other.group or self.k != other.k:
            raise ConsistencyError("base matrices are not conformable")
        rows = []
        for u in range(self.k):
            row = []
            for v in range(self.k):
                acc = GroupAlgebraElement.zero(self.group)
                for w in range(self.k):
                    left = self.entries[u][w]
                    right = other.entries[w][v]
                    if left.coefficients and right.coefficients:
                        acc = acc + left * right
                row.append(acc)
            rows.append(tuple(row))
        return BaseMatrix(
            group=self.group,
            k=self.k,
            entries=tuple(rows),
            directed=self.directed or other.directed,
        )

    def trace(self) -> GroupAlgebraElement:
        acc = GroupAlgebraElement.zero(self.group)
        for u in range(self.k):
            acc = acc + self.entries[u][u]
        return acc


def build_base_matrix(graph: VoltageGraph) -> BaseMatrix:
    """Sum arc voltages into the ``k x k`` group-algebra base matrix."""
    k = graph.k
    grid = [
        [GroupAlgebraElement.zero(graph.group) for _ in range(k)] for _ in range(k)
    ]
    for arc in graph.arcs:
        grid[arc.tail][arc.head] = grid[arc.tail][arc.head] + GroupAlgebraElement.from_element(
            graph.group, arc.voltage
        )
    return BaseMatrix(
        group=graph.group,
        k=k,
        entries=tuple(tuple(row) for row in grid),
        directed=graph.directed,
    )


def base_matrix_power(base: BaseMatrix, power: int) -> BaseMatrix:
    """Repeated base-matrix product, checking coefficients stay integral.

    Powers of a base matrix count voltage-weighted walks, so every
    coefficient must be a non-negative integer; drifting off the integers
    signals a logic error and raises :class:`NumericalError`.
    """
    if power < 1:
        raise ValueError(f"power must be at least 1, got {power}")
    out = base
    for _ in range(power - 1):
        out = out @ base
    for row in out.entries:
        for entry in row:
            entry.integer_coefficients()
    return out


@dataclass(frozen=True, eq=False)
class LiftGraph:
    """An explicit lift: one vertex per (base vertex, coset) pair.

    Rows are ordered base-vertex major, then by coset label, matching the
    coordinate layout used for eigenvectors.
    """

    vertex_labels: tuple[tuple[str, int], ...]
    adjacency: np.ndarray

    @property
    def size(self) -> int:
        return len(self.vertex_labels)

    def label_strings(self) -> list[str]:
        return [f"{base}@{coset}" for base, coset in self.vertex_labels]

    def edge_lines(self) -> list[str]:
        """Text export, one ``tail head multiplicity`` line per nonzero entry."""
        labels = self.label_strings()
        lines = []
        for i, j in zip(*np.nonzero(self.adjacency)):
            lines.append(f"{labels[i]} {labels[j]} {int(self.adjacency[i, j])}")
        return lines

    def to_json(self) -> dict:
        return {
            "vertices": self.label_strings(),
            "adjacency": [[int(x) for x in row] for row in self.adjacency],
        }


def build_lift(graph: VoltageGraph, ctx: SubgroupContext) -> LiftGraph:
    """Construct the lift adjacency over the context's coset space.

    Every arc ``u -> v`` with voltage ``g`` contributes one edge from
    ``(u, J)`` to ``(v, Jg)`` for each coset ``J``.  Undirected base graphs
    therefore produce symmetric adjacency matrices, and each row sums to the
    out-degree of its base vertex.
    """
    if graph.group is not ctx.group:
        raise ConsistencyError("graph and subgroup context belong to different groups")
    n = ctx.index_n
    k = graph.k
    adjacency = np.zeros((k * n, k * n), dtype=np.int64)
    coset_rows = np.arange(n)
    for arc in graph.arcs:
        action = ctx.action_on_cosets(arc.voltage)
        np.add.at(adjacency, (arc.tail * n + coset_rows, arc.head * n + action), 1)
    labels = tuple(
        (label, coset) for label in graph.vertices for coset in range(n)
    )
    return LiftGraph(vertex_labels=labels, adjacency=adjacency)


def build_regular_lift(graph: VoltageGraph) -> LiftGraph:
    """Lift over the trivial subgroup: one vertex per (vertex, group element)."""
    ctx = right_cosets(graph.group, frozenset({graph.group.identity}))
    return build_lift(graph, ctx)


def local_group_is_transitive(graph: VoltageGraph, group: FiniteGroup) -> bool:
    """Decide lift connectivity via the local voltage group at a base vertex.

    Spanning-tree voltages are accumulated from vertex 0; every arc then
    contributes ``w(tail) * voltage * w(head)^-1`` to the local group.  The
    lift over a point stabilizer is connected exactly when that local group
    acts transitively on the points.

    Raises
    ------
    ConsistencyError
        If the base graph is disconnected (the local group is then undefined
        as a single object).
    """
    if graph.group is not group:
        raise ConsistencyError("graph voltages live in a different group")
    k = graph.k
    walk_voltage: list[int | None] = [None] * k
    walk_voltage[0] = group.identity
    queue = [0]
    # Arcs are traversable both ways; a reverse traversal inverts the voltage.
    outgoing: list[list[tuple[int, int]]] = [[] for _ in range(k)]
    for arc in graph.arcs:
        outgoing[arc.tail].append((arc.head, arc.voltage))
        if graph.directed:
            outgoing[arc.head].append((arc.tail, group.inv(arc.voltage)))
    while queue:
        u = queue.pop()
        for head, voltage in outgoing[u]:
            if walk_voltage[head] is None:
                walk_voltage[head] = group.mul(walk_voltage[u], voltage)
                queue.append(head)
    if any(w is None for w in walk_voltage):
        raise ConsistencyError("base graph is disconnected")
    local_generators = set()
    for arc in graph.arcs:
        closed = group.mul(
            group.mul(walk_voltage[arc.tail], arc.voltage),
            group.inv(walk_voltage[arc.head]),
        )
        if closed != group.identity:
            local_generators.add(closed)
    local = subgroup_closure(group, local_generators)
    orbit = {group.elements[x].apply(1) for x in local}
    return len(orbit) == group.degree
