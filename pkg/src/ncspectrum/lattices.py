"""Finite meet-semilattices, closed-set lattices, and the generalized limit.

Closed sets of a finite discrete space are just subsets of its points;
the closed-set functor sends a space map to the image map on subsets.
The generalized limit of a contravariant diagram of finite lattices is
the set of edge-compatible families; those families are closed under
componentwise joins, so binary meets exist as greatest compatible lower
bounds (computed inside the family set, not componentwise).
"""

from __future__ import annotations

import itertools

from .diagram import CONTRAVARIANT, Functor, ShapedDiagram, register_identity
from .errors import ValidationError
from .subalgebra import FiniteSpace, SpaceMap


class MeetSemilattice:
    """A finite meet-semilattice given by its elements and order.

    Elements must be hashable; a top element is required and validated.
    Meets are greatest lower bounds, computed on demand and cached
    (validation raises on a pair without one).
    """

    __slots__ = ("elements", "_leq_pairs", "_pos", "_top", "_meets", "_hash")

    def __init__(self, elements, leq):
        elements = tuple(elements)
        if not elements:
            raise ValidationError("a meet-semilattice needs at least one element")
        if len(set(elements)) != len(elements):
            raise ValidationError("duplicate lattice elements")
        self.elements = elements
        self._pos = {x: i for i, x in enumerate(elements)}
        pairs = set()
        for a in elements:
            for b in elements:
                if leq(a, b):
                    pairs.add((a, b))
        self._leq_pairs = pairs
        self._meets = {}
        for a in elements:
            if (a, a) not in pairs:
                raise ValidationError("order is not reflexive")
        tops = [a for a in elements
                if all((b, a) in pairs for b in elements)]
        if len(tops) != 1:
            raise ValidationError(f"expected a unique top element, found {len(tops)}")
        self._top = tops[0]
        self._hash = None

    def __eq__(self, other):
        if not isinstance(other, MeetSemilattice):
            return NotImplemented
        return (self.elements == other.elements
                and self._leq_pairs == other._leq_pairs)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.elements, len(self._leq_pairs)))
        return self._hash

    @property
    def size(self) -> int:
        return len(self.elements)

    @property
    def top(self):
        return self._top

    def leq(self, a, b) -> bool:
        return (a, b) in self._leq_pairs

    def meet(self, a, b):
        """Greatest lower bound; raises if it does not exist."""
        key = (a, b)
        cached = self._meets.get(key)
        if cached is not None:
            return cached
        lower = [c for c in self.elements
                 if (c, a) in self._leq_pairs and (c, b) in self._leq_pairs]
        greatest = [c for c in lower
                    if all((d, c) in self._leq_pairs for d in lower)]
        if len(greatest) != 1:
            raise ValidationError("pair without a greatest lower bound")
        self._meets[key] = greatest[0]
        return greatest[0]

    def __contains__(self, x):
        return x in self._pos

    def index(self, x) -> int:
        return self._pos[x]

    def order_isomorphic_via(self, mapping: dict, other: "MeetSemilattice",
                             reverse: bool = False) -> bool:
        """Whether mapping is a bijection preserving order (or reversing
        it when reverse is set)."""
        if set(mapping) != set(self.elements):
            return False
        if set(mapping.values()) != set(other.elements):
            return False
        if len(set(mapping.values())) != len(mapping):
            return False
        for a in self.elements:
            for b in self.elements:
                fwd = self.leq(a, b)
                img = other.leq(mapping[a], mapping[b]) if not reverse \
                    else other.leq(mapping[b], mapping[a])
                if fwd != img:
                    return False
        return True

    def __repr__(self):
        return f"MeetSemilattice({self.size} elements)"


class LatticeHom:
    """A map between finite lattices, given elementwise."""

    __slots__ = ("source", "target", "mapping")

    def __init__(self, source: MeetSemilattice, target: MeetSemilattice, mapping):
        mapping = dict(mapping)
        if set(mapping) != set(source.elements):
            raise ValidationError("mapping must cover every source element")
        for v in mapping.values():
            if v not in target:
                raise ValidationError("mapping leaves the target lattice")
        self.source = source
        self.target = target
        self.mapping = mapping

    @property
    def domain(self):
        return self.source

    @property
    def codomain(self):
        return self.target

    @classmethod
    def identity(cls, lat: MeetSemilattice) -> "LatticeHom":
        return cls(lat, lat, {x: x for x in lat.elements})

    def __call__(self, x):
        return self.mapping[x]

    def compose(self, other: "LatticeHom") -> "LatticeHom":
        if other.target is not self.source and other.target != self.source:
            raise ValidationError("lattice homs do not chain")
        return LatticeHom(other.source, self.target,
                          {x: self.mapping[y] for x, y in other.mapping.items()})

    def __eq__(self, other):
        if not isinstance(other, LatticeHom):
            return NotImplemented
        return (self.source == other.source and self.target == other.target
                and self.mapping == other.mapping)

    def __repr__(self):
        return f"LatticeHom({self.source.size} -> {self.target.size})"


def _subsets_sorted(points):
    points = tuple(points)
    out = []
    for r in range(len(points) + 1):
        for combo in itertools.combinations(points, r):
            out.append(frozenset(combo))
    return out


def closed_set_lattice(space: FiniteSpace) -> MeetSemilattice:
    """All subsets of a finite discrete space, ordered by containment.

    Every subset of a finite discrete space is closed, so this is the
    full powerset with meet = intersection.
    """
    return MeetSemilattice(_subsets_sorted(space.points),
                           lambda a, b: a <= b)


def closed_set_map(q: SpaceMap) -> LatticeHom:
    """The image map on closed sets induced by a continuous map."""
    src = closed_set_lattice(q.source)
    dst = closed_set_lattice(q.target)
    return LatticeHom(src, dst, {s: q.image(s) for s in src.elements})


ClosedSetFunctor = Functor(on_object=closed_set_lattice,
                           on_morphism=closed_set_map,
                           contravariant=False, name="ClosedSets")

register_identity(MeetSemilattice, LatticeHom.identity)


def _determination_plan(diagram: ShapedDiagram):
    """Choose free nodes and a propagation order for limit enumeration.

    Every edge a -> b of a contravariant diagram determines the value at
    a from the value at b.  Free nodes are chosen deterministically so
    that all nodes are reachable through such determinations.
    """
    nodes = list(diagram.shape.nodes)
    determiners = {n: [] for n in nodes}
    for e in diagram.shape.edges:
        if e.src != e.dst:
            determiners[e.src].append(e)

    def grow(reachable):
        changed = True
        while changed:
            changed = False
            for n in nodes:
                if n not in reachable and any(
                        e.dst in reachable for e in determiners[n]):
                    reachable.add(n)
                    changed = True

    free = [n for n in nodes if not determiners[n]]
    reachable = set(free)
    grow(reachable)
    for n in nodes:
        if n not in reachable:
            free.append(n)
            reachable.add(n)
            grow(reachable)
    return free


def limit_semilattice(diagram: ShapedDiagram) -> MeetSemilattice:
    """Generalized limit of a contravariant diagram of finite lattices.

    Elements are families (one lattice element per node) compatible with
    every generating edge's map; they are enumerated by assigning the
    free nodes and propagating.  The result is ordered componentwise.
    """
    if diagram.variance != CONTRAVARIANT:
        raise ValidationError("limit_semilattice expects a contravariant diagram")
    nodes = list(diagram.shape.nodes)
    lattices = {n: diagram.node_data[n] for n in nodes}
    edges = list(diagram.shape.edges)
    free = _determination_plan(diagram)

    families = []
    for choice in itertools.product(*(lattices[n].elements for n in free)):
        assigned = dict(zip(free, choice))
        # propagate along edges a -> b: the value at a is the image of b's
        ok = True
        progress = True
        while progress and ok:
            progress = False
            for e in edges:
                if e.dst not in assigned:
                    continue
                val = diagram.edge_data[e.id](assigned[e.dst])
                if e.src in assigned:
                    if assigned[e.src] != val:
                        ok = False
                        break
                else:
                    assigned[e.src] = val
                    progress = True
        if not ok:
            continue
        if len(assigned) != len(nodes):
            raise ValidationError("limit enumeration failed to cover a node")
        if all(assigned[e.src] == diagram.edge_data[e.id](assigned[e.dst])
               for e in edges):
            families.append(tuple(assigned[n] for n in nodes))

    if not families:
        raise ValidationError("limit is empty: no compatible families")

    def leq(fa, fb):
        return all(lattices[n].leq(a, b)
                   for n, a, b in zip(nodes, fa, fb))

    return MeetSemilattice(families, leq)
