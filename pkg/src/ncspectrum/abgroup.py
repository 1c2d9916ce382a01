"""Finitely presented abelian groups and the generalized colimit.

A group is (number of generators, integer relation rows); elements are
integer words over the generators, equal exactly when their difference
lies in the row lattice of the relations.  Homomorphisms carry a
well-definedness certificate computed at construction: every domain
relation must map into the codomain's relation lattice.

The colimit of a diagram of such groups is the direct sum of the node
groups modulo one relation per generating edge and source generator,
identifying a generator with its image; this is the quotient form of
the coequalizer-of-coproducts presentation.  Colimits of different
shapes are connected by colimit_induced, which sends the class of a
node generator to the class of its component image.

>>> z = PresentedAbGroup.free(1)
>>> z2 = PresentedAbGroup(1, [[2]])
>>> element_eq(z2, (3,), (1,))
True
>>> invariant_factors(z2)
(0, (2,))
"""

from __future__ import annotations

from dataclasses import dataclass

from .diagram import (COVARIANT, DiagramMorphism, ShapedDiagram,
                      find_naturality_failure, register_identity)
from .errors import ValidationError
from .snf import (IntegerRowLattice, invariant_factors_of_rows,
                  preimage_row_lattice)


def _sparse_of(row):
    if isinstance(row, dict):
        return tuple(sorted((int(j), int(c)) for j, c in row.items() if c))
    return tuple((j, int(c)) for j, c in enumerate(row) if c)


class PresentedAbGroup:
    """An abelian group on ngens generators with integer relation rows.

    Relations are stored sparsely; the dense matrix is available through
    .relations.  The relation lattice and invariant factors are cached.
    """

    __slots__ = ("ngens", "rows", "_lattice", "_invariants")

    def __init__(self, ngens: int, relations=()):
        ngens = int(ngens)
        if ngens < 0:
            raise ValidationError("generator count must be nonnegative")
        rows = []
        for row in relations:
            sp = _sparse_of(row)
            if sp and sp[-1][0] >= ngens:
                raise ValidationError("relation mentions a missing generator")
            if not isinstance(row, dict) and len(row) != ngens:
                raise ValidationError("relation row length must equal ngens")
            if sp:
                rows.append(sp)
        self.ngens = ngens
        self.rows = tuple(rows)
        self._lattice = None
        self._invariants = None

    @classmethod
    def free(cls, n: int) -> "PresentedAbGroup":
        return cls(n, ())

    @classmethod
    def trivial(cls) -> "PresentedAbGroup":
        return cls(0, ())

    @classmethod
    def cyclic(cls, d: int) -> "PresentedAbGroup":
        return cls(1, [[d]])

    @property
    def relations(self):
        """Dense relation matrix (rows of length ngens)."""
        out = []
        for sp in self.rows:
            row = [0] * self.ngens
            for j, c in sp:
                row[j] = c
            out.append(row)
        return out

    @property
    def sparse_rows(self):
        return [dict(sp) for sp in self.rows]

    @property
    def lattice(self) -> IntegerRowLattice:
        if self._lattice is None:
            lat = IntegerRowLattice(self.ngens)
            for sp in self.rows:
                lat.insert(dict(sp))
            self._lattice = lat
        return self._lattice

    def invariant_factors(self):
        """(free_rank, torsion divisors) computed from the Smith form of
        the relation lattice basis."""
        if self._invariants is None:
            basis = self.lattice.basis_sparse()
            free, torsion = invariant_factors_of_rows(basis, self.ngens)
            self._invariants = (free, tuple(torsion))
        return self._invariants

    def canonical_str(self) -> str:
        """Canonical form "Z^r + Z/d1 + ..." in divisibility order."""
        free, torsion = self.invariant_factors()
        parts = []
        if free == 1:
            parts.append("Z")
        elif free > 1:
            parts.append(f"Z^{free}")
        parts.extend(f"Z/{d}" for d in torsion)
        return " ⊕ ".join(parts) if parts else "0"

    def is_trivial(self) -> bool:
        free, torsion = self.invariant_factors()
        return free == 0 and not torsion

    def check_word(self, word):
        word = tuple(int(x) for x in word)
        if len(word) != self.ngens:
            raise ValidationError(
                f"word length {len(word)} != {self.ngens} generators")
        return word

    def contains_relation(self, word) -> bool:
        return self.lattice.contains(self.check_word(word))

    def contains_relation_sparse(self, dvec: dict) -> bool:
        return self.lattice.contains(dvec)

    def unit_word(self, i: int):
        word = [0] * self.ngens
        word[i] = 1
        return tuple(word)

    def __eq__(self, other):
        if not isinstance(other, PresentedAbGroup):
            return NotImplemented
        return self.ngens == other.ngens and self.rows == other.rows

    def __hash__(self):
        return hash((self.ngens, self.rows))

    def __repr__(self):
        return f"PresentedAbGroup({self.ngens} gens, {len(self.rows)} relations)"


def invariant_factors(g: PresentedAbGroup):
    return g.invariant_factors()


def element_eq(g: PresentedAbGroup, x, y) -> bool:
    """Whether two words represent the same group element.

    >>> element_eq(PresentedAbGroup(2, [[1, -2]]), (1, 0), (0, 2))
    True
    """
    x = g.check_word(x)
    y = g.check_word(y)
    diff = {j: a - b for j, (a, b) in enumerate(zip(x, y)) if a != b}
    return g.lattice.contains(diff)


class AbHom:
    """A homomorphism given by generator images, certified well-defined."""

    __slots__ = ("domain", "codomain", "images")

    def __init__(self, domain: PresentedAbGroup, codomain: PresentedAbGroup,
                 images):
        images = tuple(tuple(int(x) for x in row) for row in images)
        if len(images) != domain.ngens:
            raise ValidationError("one image word per domain generator required")
        for row in images:
            if len(row) != codomain.ngens:
                raise ValidationError("image word of the wrong length")
        self.domain = domain
        self.codomain = codomain
        self.images = images
        self._certify()

    def _certify(self):
        for sp in self.domain.rows:
            image = {}
            for j, c in sp:
                for k, x in enumerate(self.images[j]):
                    if x:
                        v = image.get(k, 0) + c * x
                        if v:
                            image[k] = v
                        else:
                            image.pop(k, None)
            if not self.codomain.lattice.contains(image):
                raise ValidationError(
                    "hom is not well-defined: a domain relation does not map "
                    "into the codomain's relation lattice")

    @classmethod
    def identity(cls, g: PresentedAbGroup) -> "AbHom":
        return cls(g, g, [g.unit_word(i) for i in range(g.ngens)])

    @classmethod
    def zero(cls, domain: PresentedAbGroup, codomain: PresentedAbGroup) -> "AbHom":
        return cls(domain, codomain, [[0] * codomain.ngens] * domain.ngens)

    def apply(self, word):
        word = self.domain.check_word(word)
        out = [0] * self.codomain.ngens
        for i, c in enumerate(word):
            if c:
                row = self.images[i]
                for k in range(self.codomain.ngens):
                    if row[k]:
                        out[k] += c * row[k]
        return tuple(out)

    def compose(self, other: "AbHom") -> "AbHom":
        """self after other."""
        if other.codomain != self.domain:
            raise ValidationError("homs do not chain")
        return AbHom(other.domain, self.codomain,
                     [self.apply(row) for row in other.images])

    def equal_as_maps(self, other: "AbHom") -> bool:
        """Agreement on every generator, modulo codomain relations."""
        if not isinstance(other, AbHom):
            return False
        if self.domain != other.domain or self.codomain != other.codomain:
            return False
        return all(element_eq(self.codomain, a, b)
                   for a, b in zip(self.images, other.images))

    def __eq__(self, other):
        if not isinstance(other, AbHom):
            return NotImplemented
        return (self.domain == other.domain and self.codomain == other.codomain
                and self.images == other.images)

    def __repr__(self):
        return f"AbHom({self.domain.ngens} gens -> {self.codomain.ngens} gens)"


register_identity(PresentedAbGroup, AbHom.identity)


@dataclass
class ColimitResult:
    """Colimit presentation with its canonical injections.

    group: the quotient of the direct sum of node groups;
    injections: node id -> AbHom from that node's group;
    offsets: node id -> first generator position of its block.
    """

    group: PresentedAbGroup
    injections: dict
    offsets: dict

    def generator_position(self, node, i: int) -> int:
        return self.offsets[node] + i


def colimit(diagram: ShapedDiagram) -> ColimitResult:
    """Generalized colimit of a covariant diagram of presented groups.

    Generators: all node generators, concatenated in node order.
    Relations: every node relation, plus for each generating edge u and
    each source generator g the identification of (g)_src with
    (image of g)_dst.
    """
    if diagram.variance != COVARIANT:
        raise ValidationError("colimit requires a covariant diagram")
    nodes = diagram.shape.nodes
    offsets = {}
    total = 0
    for n in nodes:
        offsets[n] = total
        total += diagram.node_data[n].ngens
    rows = []
    for n in nodes:
        off = offsets[n]
        for sp in diagram.node_data[n].rows:
            rows.append({off + j: c for j, c in sp})
    for e in diagram.shape.edges:
        hom = diagram.edge_data[e.id]
        off_src = offsets[e.src]
        off_dst = offsets[e.dst]
        for i, image in enumerate(hom.images):
            row = {off_src + i: 1}
            for k, c in enumerate(image):
                if c:
                    key = off_dst + k
                    v = row.get(key, 0) - c
                    if v:
                        row[key] = v
                    else:
                        row.pop(key, None)
            if row:
                rows.append(row)
    group = PresentedAbGroup(total, rows)
    injections = {}
    for n in nodes:
        g = diagram.node_data[n]
        off = offsets[n]
        images = []
        for i in range(g.ngens):
            word = [0] * total
            word[off + i] = 1
            images.append(word)
        injections[n] = AbHom(g, group, images)
    return ColimitResult(group=group, injections=injections, offsets=offsets)


def colimit_induced(morphism: DiagramMorphism, src_diagram: ShapedDiagram,
                    dst_diagram: ShapedDiagram,
                    src_colimit: ColimitResult | None = None,
                    dst_colimit: ColimitResult | None = None) -> AbHom:
    """The homomorphism between colimits induced by a diagram morphism:
    the class of (g)_a maps to the class of (eta_a(g))_{f(a)}.

    Naturality of the morphism is checked first; well-definedness of the
    result is certified by the AbHom constructor.
    """
    failure = find_naturality_failure(morphism, src_diagram, dst_diagram)
    if failure is not None:
        raise ValidationError(
            f"diagram morphism is not natural (edge {failure})")
    if src_colimit is None:
        src_colimit = colimit(src_diagram)
    if dst_colimit is None:
        dst_colimit = colimit(dst_diagram)
    total = dst_colimit.group.ngens
    images = []
    for n in src_diagram.shape.nodes:
        comp = morphism.components[n]
        off = dst_colimit.offsets[morphism.node_map[n]]
        for i in range(src_diagram.node_data[n].ngens):
            word = [0] * total
            for k, c in enumerate(comp.images[i]):
                if c:
                    word[off + k] += c
            images.append(word)
    return AbHom(src_colimit.group, dst_colimit.group, images)


def kernel(hom: AbHom):
    """Presentation of the kernel of a homomorphism, with its inclusion.

    Kernel generators form an echelon basis of the lattice of words
    whose images land in the codomain's relation lattice.  That lattice
    contains the domain's relation lattice, so the kernel relations are
    just the coordinates of the domain relation basis over the kernel
    basis (a triangular solve, no second normal form needed).
    """
    domain, codomain = hom.domain, hom.codomain
    r_cod = codomain.lattice.basis_rows()
    if domain.ngens:
        klat = preimage_row_lattice(hom.images, r_cod, codomain.ngens)
    else:
        klat = IntegerRowLattice(0)
    gens = klat.basis_rows()
    rels = []
    for row in domain.lattice.basis_rows():
        coords = klat.coordinates(row)
        if coords is None:
            raise ValidationError(
                "internal error: a domain relation escapes the kernel lattice")
        rels.append({k: c for k, c in coords.items()})
    group = PresentedAbGroup(len(gens), rels)
    inclusion = AbHom(group, domain, gens)
    return group, inclusion


def cocone_factorization(diagram: ShapedDiagram, colim: ColimitResult,
                         target: PresentedAbGroup, legs: dict) -> AbHom:
    """The unique homomorphism from the colimit factoring a cocone.

    legs maps each node to an AbHom into the target; they must commute
    with every edge.  The factoring hom is forced on generators, and its
    construction certifies that the cocone respects the relations.
    """
    for e in diagram.shape.edges:
        hom = diagram.edge_data[e.id]
        left = legs[e.dst].compose(hom)
        if not left.equal_as_maps(legs[e.src]):
            raise ValidationError(f"cocone does not commute with edge {e.id}")
    images = []
    for n in diagram.shape.nodes:
        images.extend(legs[n].images)
    return AbHom(colim.group, target, images)


__all__ = [
    "PresentedAbGroup", "AbHom", "ColimitResult",
    "invariant_factors", "element_eq", "colimit", "colimit_induced",
    "kernel", "cocone_factorization",
]
