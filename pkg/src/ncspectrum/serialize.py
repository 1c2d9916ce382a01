"""JSON loading and dumping for the file formats the CLI speaks.

All payloads are small exact matrices and integer data, so JSON is the
single interchange format.  Loaders validate invariants and raise
ValidationError with a location hint.
"""

from __future__ import annotations

import json
import os

from .abgroup import AbHom, PresentedAbGroup
from .algebra import (AlgebraElement, InnerAutomorphism, MultiMatrixAlgebra,
                      StarHom)
from .diagram import CONTRAVARIANT, COVARIANT, Shape, ShapedDiagram
from .errors import ValidationError
from .exact import ExactMatrix
from .ktheory import SubdiagramSpec, build_subdiagram
from .ideals import PartialIdeal
from .subalgebra import CommSubalgebra, FiniteSpace, SpaceMap, span_subalgebra


def load_json_argument(text_or_path: str):
    """Parse an argument as inline JSON, else read it as a file path."""
    text = text_or_path.strip()
    if text.startswith(("{", "[")):
        try:
            return json.loads(text)
        except json.JSONDecodeError as exc:
            raise ValidationError(f"invalid inline JSON: {exc}") from exc
    if not os.path.exists(text_or_path):
        raise ValidationError(f"no such file: {text_or_path}")
    with open(text_or_path, "r", encoding="utf-8") as fh:
        try:
            return json.load(fh)
        except json.JSONDecodeError as exc:
            raise ValidationError(f"{text_or_path}: invalid JSON: {exc}") from exc


def load_algebra(data) -> MultiMatrixAlgebra:
    if not isinstance(data, dict) or "blocks" not in data:
        raise ValidationError('algebra JSON must look like {"blocks": [2, 3]}')
    return MultiMatrixAlgebra(data["blocks"])


def dump_algebra(algebra: MultiMatrixAlgebra):
    return {"blocks": list(algebra.blocks)}


def load_matrix(data) -> ExactMatrix:
    return ExactMatrix.from_json(data)


def dump_matrix(matrix: ExactMatrix):
    return matrix.to_json()


def load_element(data, algebra: MultiMatrixAlgebra) -> AlgebraElement:
    if isinstance(data, dict) and "parts" in data:
        data = data["parts"]
    if not isinstance(data, list):
        raise ValidationError('element JSON must be {"parts": [matrix, ...]}')
    parts = [load_matrix(m) for m in data]
    return AlgebraElement(algebra, parts)


def dump_element(element: AlgebraElement):
    return {"parts": [dump_matrix(p) for p in element.parts]}


def load_hom(data) -> StarHom:
    for field in ("domain", "codomain", "multiplicity"):
        if field not in data:
            raise ValidationError(f"hom JSON is missing {field!r}")
    domain = load_algebra(data["domain"])
    codomain = load_algebra(data["codomain"])
    assignment = data.get("assignment")
    if assignment is not None:
        assignment = [[tuple(slot) for slot in row] for row in assignment]
    return StarHom(domain, codomain, data["multiplicity"],
                   unital=bool(data.get("unital", True)),
                   assignment=assignment)


def dump_hom(hom: StarHom):
    return {
        "domain": dump_algebra(hom.domain),
        "codomain": dump_algebra(hom.codomain),
        "multiplicity": [list(r) for r in hom.multiplicity],
        "unital": hom.unital,
    }


def load_subalgebra(data) -> CommSubalgebra:
    if "algebra" not in data or "generators" not in data:
        raise ValidationError('subalgebra JSON needs "algebra" and "generators"')
    algebra = load_algebra(data["algebra"])
    gens = [load_element(g, algebra) for g in data["generators"]]
    # atoms are recomputed from the generators, which revalidates them
    return span_subalgebra(algebra, gens)


def dump_subalgebra(subalgebra: CommSubalgebra):
    """Serialized as its atom projections, which generate it."""
    return {
        "algebra": dump_algebra(subalgebra.algebra),
        "generators": [dump_element(p) for p in subalgebra.atoms],
    }


def load_spec(data, algebra: MultiMatrixAlgebra) -> SubdiagramSpec:
    if data is None:
        return SubdiagramSpec.default(algebra)
    base = SubdiagramSpec.default(algebra)
    rotations = data.get("rotations", "default")
    if rotations == "default":
        rotations = base.rotations
    else:
        rotations = tuple(
            InnerAutomorphism(load_element(u, algebra), name=f"u{i}")
            for i, u in enumerate(rotations))
    return SubdiagramSpec(
        rotations=rotations,
        full_partition_limit=int(data.get("full_partition_limit",
                                          base.full_partition_limit)),
        rotation_edge_budget=int(data.get("rotation_edge_budget",
                                          base.rotation_edge_budget)),
        label=str(data.get("label", "file")),
    )


def load_ab_diagram(data) -> ShapedDiagram:
    """Diagram of presented abelian groups: nodes carry ngens/relations,
    edges carry generator-image matrices."""
    if "nodes" not in data or "edges" not in data:
        raise ValidationError('diagram JSON needs "nodes" and "edges"')
    variance = data.get("variance", COVARIANT)
    node_data = {}
    node_ids = []
    for node in data["nodes"]:
        nid = str(node["id"])
        node_ids.append(nid)
        node_data[nid] = PresentedAbGroup(node["ngens"],
                                          node.get("relations", []))
    edges = []
    edge_data = {}
    for k, edge in enumerate(data["edges"]):
        eid = str(edge.get("id", f"e{k}"))
        src, dst = str(edge["source"]), str(edge["target"])
        edges.append((eid, src, dst))
        if variance == COVARIANT:
            dom, cod = node_data[src], node_data[dst]
        else:
            dom, cod = node_data[dst], node_data[src]
        edge_data[eid] = AbHom(dom, cod, edge["images"])
    shape = Shape(node_ids, edges)
    return ShapedDiagram(shape, node_data, edge_data, variance)


def load_space_diagram(data) -> ShapedDiagram:
    """Diagram of finite spaces; edge assignments map the morphism's
    domain points per the declared variance (for the contravariant
    diagrams used by the limit command, that is the target node's
    points)."""
    if "nodes" not in data or "edges" not in data:
        raise ValidationError('diagram JSON needs "nodes" and "edges"')
    variance = data.get("variance", CONTRAVARIANT)
    node_data = {}
    node_ids = []
    for node in data["nodes"]:
        nid = str(node["id"])
        node_ids.append(nid)
        node_data[nid] = FiniteSpace(tuple(str(p) for p in node["points"]))
    edges = []
    edge_data = {}
    for k, edge in enumerate(data["edges"]):
        eid = str(edge.get("id", f"e{k}"))
        src, dst = str(edge["source"]), str(edge["target"])
        edges.append((eid, src, dst))
        if variance == COVARIANT:
            dom, cod = node_data[src], node_data[dst]
        else:
            dom, cod = node_data[dst], node_data[src]
        edge_data[eid] = SpaceMap(dom, cod, {str(a): str(b) for a, b in
                                             edge["assignment"].items()})
    shape = Shape(node_ids, edges)
    return ShapedDiagram(shape, node_data, edge_data, variance)


def load_integer_matrix(data):
    if not isinstance(data, list) or not data or \
            not all(isinstance(r, list) for r in data):
        raise ValidationError("integer matrix JSON must be a list of rows")
    try:
        return [[int(x) for x in row] for row in data]
    except (TypeError, ValueError) as exc:
        raise ValidationError(f"non-integer matrix entry: {exc}") from exc


def load_partial_ideal(data):
    """{"algebra": ..., "spec": optional, "choice": {node id: [indices]}}.

    Returns (PartialIdeal, diagram)."""
    if "algebra" not in data or "choice" not in data:
        raise ValidationError('partial ideal JSON needs "algebra" and "choice"')
    algebra = load_algebra(data["algebra"])
    spec = load_spec(data.get("spec"), algebra)
    diagram = build_subdiagram(algebra, spec)
    choice = {}
    for nid, indices in data["choice"].items():
        if nid not in diagram.node_data:
            raise ValidationError(f"unknown node {nid!r} in choice "
                                  f"(known: {sorted(diagram.node_data)})")
        choice[nid] = frozenset(int(i) for i in indices)
    for nid in diagram.shape.nodes:
        choice.setdefault(nid, frozenset())
    return PartialIdeal(diagram, choice), diagram


def jsonable(value):
    """Recursively convert report payloads to JSON-friendly structures."""
    if isinstance(value, dict):
        return {str(k): jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonable(v) for v in value]
    if isinstance(value, (set, frozenset)):
        return sorted(jsonable(v) for v in value)
    if isinstance(value, MultiMatrixAlgebra):
        return dump_algebra(value)
    if isinstance(value, (int, float, str, bool)) or value is None:
        return value
    return repr(value)
