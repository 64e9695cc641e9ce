"""Command-line interface over JSON instance documents.

An instance document supplies a group (named family or explicit generators),
a subgroup, and a voltage graph::

    {
      "group": {"kind": "generators", "degree": 3, "generators": ["(2 3)", "(1 2)"]},
      "subgroup": {"kind": "stabilizer", "point": 1},
      "graph": {
        "directed": false,
        "vertices": ["u", "v"],
        "edges": [
          {"from": "u", "to": "u", "voltage": "(2 3)"},
          {"from": "u", "to": "v", "voltage": "()"},
          {"from": "v", "to": "v", "voltage": "(1 2)"}
        ]
      },
      "options": {"seed": 0}
    }

Exit codes: 0 success, 1 failed verification, 2 parse errors, 3 structural
inconsistencies (voltages outside the group, directed input where it is not
supported, and the like), 4 numerical failures.  All output is JSON or plain
text on stdout and is byte-identical across runs for a fixed file and seed.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, replace

import numpy as np

from .errors import ConsistencyError, NumericalError, ParseError
from .irreps import IrrepSet, builtin_irreps, compute_irreps
from .characters import regular_spectrum_via_characters
from .permgroup import (
    DEFAULT_ORDER_CAP,
    FiniteGroup,
    SubgroupContext,
    generate_group,
    parse_permutation,
    right_cosets,
    stabilizer,
    subgroup_closure,
)
from .spectral import lift_eigenvectors, lift_spectrum, verify_against_oracle
from .voltage import VoltageGraph, build_base_matrix, build_lift, randomize_voltages

NAMED_FAMILIES = ("cyclic", "dihedral", "sym3")


@dataclass(frozen=True)
class Options:
    seed: int = 0
    tol_rank: float = 1e-9
    tol_residual: float = 1e-8
    tol_match: float = 1e-7
    order_cap: int = DEFAULT_ORDER_CAP


@dataclass(frozen=True, eq=False)
class InstanceDocument:
    group: FiniteGroup
    irrep_set: IrrepSet
    ctx: SubgroupContext
    graph: VoltageGraph
    subgroup_kind: str
    options: Options


def _expect(mapping, key, kinds, where):
    if not isinstance(mapping, dict):
        raise ParseError(f"{where} must be a JSON object")
    if key not in mapping:
        raise ParseError(f"{where} is missing required key {key!r}")
    value = mapping[key]
    if not isinstance(value, kinds):
        raise ParseError(f"{where}.{key} has the wrong type")
    return value


def _load_options(raw, overrides: dict) -> Options:
    options = Options()
    if raw is not None:
        if not isinstance(raw, dict):
            raise ParseError("options must be a JSON object")
        fields = {
            "seed": int,
            "tol_rank": float,
            "tol_residual": float,
            "tol_match": float,
            "order_cap": int,
        }
        updates = {}
        for key, cast in fields.items():
            if key in raw:
                if isinstance(raw[key], bool) or not isinstance(raw[key], (int, float)):
                    raise ParseError(f"options.{key} must be a number")
                updates[key] = cast(raw[key])
        options = replace(options, **updates)
    cleaned = {k: v for k, v in overrides.items() if v is not None}
    if cleaned:
        options = replace(options, **cleaned)
    return options


def _load_group(spec, options: Options) -> tuple[FiniteGroup, IrrepSet]:
    kind = _expect(spec, "kind", str, "group")
    if kind == "generators":
        degree = _expect(spec, "degree", int, "group")
        if isinstance(degree, bool) or degree < 1:
            raise ParseError("group.degree must be a positive integer")
        raw_gens = _expect(spec, "generators", list, "group")
        gens = []
        for text in raw_gens:
            if not isinstance(text, str):
                raise ParseError("group.generators must be cycle strings")
            gens.append(parse_permutation(text, degree))
        group = generate_group(gens, order_cap=options.order_cap, degree=degree)
        irrep_set = compute_irreps(group, seed=options.seed)
        return group, irrep_set
    if kind == "named":
        family = _expect(spec, "family", str, "group")
        if family not in NAMED_FAMILIES:
            raise ParseError(f"group.family must be one of {NAMED_FAMILIES}")
        param = spec.get("param", 1)
        if isinstance(param, bool) or not isinstance(param, int) or param < 1:
            raise ParseError("group.param must be a positive integer")
        irrep_set = builtin_irreps(family, param)
        return irrep_set.group, irrep_set
    raise ParseError(f"unknown group.kind {kind!r}")


def _load_subgroup(spec, group: FiniteGroup) -> tuple[str, frozenset[int]]:
    kind = _expect(spec, "kind", str, "subgroup")
    if kind == "trivial":
        return kind, frozenset({group.identity})
    if kind == "full":
        return kind, frozenset(range(group.order))
    if kind == "stabilizer":
        point = _expect(spec, "point", int, "subgroup")
        if isinstance(point, bool):
            raise ParseError("subgroup.point must be an integer")
        return kind, stabilizer(group, point)
    if kind == "generators":
        raw_gens = _expect(spec, "generators", list, "subgroup")
        indices = []
        for text in raw_gens:
            if not isinstance(text, str):
                raise ParseError("subgroup.generators must be cycle strings")
            indices.append(group.index_of(parse_permutation(text, group.degree)))
        return kind, subgroup_closure(group, indices)
    raise ParseError(f"unknown subgroup.kind {kind!r}")


def _load_graph(spec, group: FiniteGroup) -> VoltageGraph:
    directed = spec.get("directed", False) if isinstance(spec, dict) else False
    if not isinstance(directed, bool):
        raise ParseError("graph.directed must be a boolean")
    vertices = _expect(spec, "vertices", list, "graph")
    if not all(isinstance(v, str) for v in vertices):
        raise ParseError("graph.vertices must be strings")
    raw_edges = _expect(spec, "edges", list, "graph")
    edges = []
    for edge in raw_edges:
        tail = _expect(edge, "from", str, "edge")
        head = _expect(edge, "to", str, "edge")
        voltage_text = _expect(edge, "voltage", str, "edge")
        voltage = group.index_of(parse_permutation(voltage_text, group.degree))
        edges.append((tail, head, voltage))
    return VoltageGraph.build(group, vertices, edges, directed=directed)


def load_instance(path: str, overrides: dict | None = None) -> InstanceDocument:
    """Parse and cross-check an instance document from a JSON file."""
    try:
        with open(path, "r", encoding="utf-8") as handle:
            raw = json.load(handle)
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise ParseError(f"malformed JSON in {path}: {exc}") from None
    if not isinstance(raw, dict):
        raise ParseError("instance document must be a JSON object")
    options = _load_options(raw.get("options"), overrides or {})
    group, irrep_set = _load_group(_expect(raw, "group", dict, "instance"), options)
    subgroup_kind, members = _load_subgroup(
        _expect(raw, "subgroup", dict, "instance"), group
    )
    ctx = right_cosets(group, members)
    graph = _load_graph(_expect(raw, "graph", dict, "instance"), group)
    return InstanceDocument(
        group=group,
        irrep_set=irrep_set,
        ctx=ctx,
        graph=graph,
        subgroup_kind=subgroup_kind,
        options=options,
    )


def _require_undirected(doc: InstanceDocument, command: str) -> None:
    if doc.graph.directed:
        raise ConsistencyError(
            f"command {command!r} needs an undirected base graph; "
            "only 'characters' accepts directed input"
        )


def _emit(payload) -> None:
    print(json.dumps(payload, indent=2))


def cmd_spectrum(doc: InstanceDocument) -> int:
    _require_undirected(doc, "spectrum")
    base = build_base_matrix(doc.graph)
    report = lift_spectrum(
        base,
        doc.irrep_set,
        doc.ctx,
        match_tol=doc.options.tol_match,
        rank_tol=doc.options.tol_rank,
    )
    _emit(report.to_json())
    return 0


def cmd_eigvecs(doc: InstanceDocument) -> int:
    _require_undirected(doc, "eigvecs")
    base = build_base_matrix(doc.graph)
    bundle = lift_eigenvectors(
        base, doc.irrep_set, doc.ctx, residual_tol=doc.options.tol_residual
    )
    _emit(bundle.to_json())
    return 0


def cmd_lift(doc: InstanceDocument, emit_adjacency: bool) -> int:
    _require_undirected(doc, "lift")
    lift = build_lift(doc.graph, doc.ctx)
    if emit_adjacency:
        _emit(lift.to_json())
    else:
        for line in lift.edge_lines():
            print(line)
    return 0


def cmd_verify(doc: InstanceDocument, trials: int) -> int:
    _require_undirected(doc, "verify")
    if trials < 0:
        raise ParseError("--trials must be non-negative")
    labelled = [("instance", doc.graph)]
    for i in range(trials):
        rng = np.random.default_rng(
            np.random.SeedSequence(entropy=doc.options.seed, spawn_key=(7, i))
        )
        labelled.append((f"random-{i}", randomize_voltages(doc.graph, rng)))
    results = []
    for label, graph in labelled:
        report = verify_against_oracle(
            graph,
            doc.irrep_set,
            doc.ctx,
            match_tol=doc.options.tol_match,
            residual_tol=doc.options.tol_residual,
        )
        entry = {"label": label}
        entry.update(report.to_json())
        results.append(entry)
    passed = all(r["passed"] for r in results)
    _emit({"passed": passed, "trials": results})
    return 0 if passed else 1


def cmd_characters(doc: InstanceDocument) -> int:
    if len(doc.ctx.subgroup_elements) != 1:
        raise ConsistencyError(
            "the character route computes regular-lift spectra; "
            "the subgroup must be trivial"
        )
    base = build_base_matrix(doc.graph)
    result = regular_spectrum_via_characters(base, doc.irrep_set)
    _emit(result.to_json())
    return 0


def cmd_irreps(doc: InstanceDocument, dump: bool) -> int:
    group = doc.group
    payload: dict = {"group_order": group.order}
    if dump:
        payload["irreps"] = [
            {
                "dim": r.dim,
                "matrices": {
                    group.elements[g].cycle_string(): [
                        [[x.real, x.imag] for x in row] for row in r.matrices[g]
                    ]
                    for g in range(group.order)
                },
            }
            for r in doc.irrep_set
        ]
    else:
        payload["dims"] = list(doc.irrep_set.dims)
    _emit(payload)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="liftspectra",
        description="Spectra and eigenvector bases of voltage-graph lifts.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, help_text: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_text)
        p.add_argument("file", help="instance JSON document")
        p.add_argument("--seed", type=int, default=None)
        p.add_argument("--tol-rank", dest="tol_rank", type=float, default=None)
        p.add_argument("--tol-residual", dest="tol_residual", type=float, default=None)
        p.add_argument("--tol-match", dest="tol_match", type=float, default=None)
        return p

    add("spectrum", "full lift spectrum with multiplicities and provenance")
    add("eigvecs", "tagged eigenvector columns and a selected basis")
    lift_p = add("lift", "explicit lift as an edge list (or adjacency JSON)")
    lift_p.add_argument("--emit-adjacency", action="store_true")
    verify_p = add("verify", "cross-check against explicitly built lifts")
    verify_p.add_argument("--trials", type=int, default=1)
    add("characters", "regular-lift spectrum via characters and traces")
    irreps_p = add("irreps", "irrep dimensions (optionally full matrices)")
    irreps_p.add_argument("--dump", action="store_true")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    overrides = {
        "seed": args.seed,
        "tol_rank": args.tol_rank,
        "tol_residual": args.tol_residual,
        "tol_match": args.tol_match,
    }
    try:
        doc = load_instance(args.file, overrides)
        if args.command == "spectrum":
            return cmd_spectrum(doc)
        if args.command == "eigvecs":
            return cmd_eigvecs(doc)
        if args.command == "lift":
            return cmd_lift(doc, args.emit_adjacency)
        if args.command == "verify":
            return cmd_verify(doc, args.trials)
        if args.command == "characters":
            return cmd_characters(doc)
        if args.command == "irreps":
            return cmd_irreps(doc, args.dump)
        raise ParseError(f"unknown command {args.command!r}")
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ConsistencyError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except NumericalError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
