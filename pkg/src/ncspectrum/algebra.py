"""Finite-dimensional C*-algebras as direct sums of matrix blocks.

A MultiMatrixAlgebra is just a list of block sizes; its elements carry
one exact matrix per block.  Unital *-homomorphisms are described by a
Bratteli multiplicity matrix together with an explicit coordinate
assignment, so that applying a homomorphism is deterministic.

Everything is immutable and pure.
"""

from __future__ import annotations

from .errors import ValidationError
from .exact import ExactMatrix, GaussianRational, GR_ONE, GR_ZERO


class MultiMatrixAlgebra:
    """The algebra M_{n1} + ... + M_{nk} over Gaussian rationals."""

    __slots__ = ("blocks",)

    def __init__(self, blocks):
        blocks = tuple(int(b) for b in blocks)
        if not blocks or any(b < 1 for b in blocks):
            raise ValidationError(f"invalid block sizes {blocks!r}")
        self.blocks = blocks

    @property
    def nblocks(self) -> int:
        return len(self.blocks)

    @property
    def dimension(self) -> int:
        """Linear dimension, sum of squares of block sizes."""
        return sum(n * n for n in self.blocks)

    @property
    def coord_count(self) -> int:
        """Total number of diagonal coordinates, sum of block sizes."""
        return sum(self.blocks)

    def block_offset(self, i: int) -> int:
        """Global index of the first diagonal coordinate of block i."""
        return sum(self.blocks[:i])

    def coord_to_block(self, coord: int):
        """Map a global diagonal coordinate to (block, position)."""
        for i, n in enumerate(self.blocks):
            if coord < n:
                return i, coord
            coord -= n
        raise ValidationError(f"coordinate {coord} out of range")

    def element(self, parts) -> "AlgebraElement":
        return AlgebraElement(self, parts)

    def zero(self) -> "AlgebraElement":
        return AlgebraElement(self, [ExactMatrix.zeros(n, n) for n in self.blocks])

    def one(self) -> "AlgebraElement":
        return AlgebraElement(self, [ExactMatrix.identity(n) for n in self.blocks])

    def __eq__(self, other):
        if not isinstance(other, MultiMatrixAlgebra):
            return NotImplemented
        return self.blocks == other.blocks

    def __hash__(self):
        return hash(self.blocks)

    def __repr__(self):
        return f"MultiMatrixAlgebra({list(self.blocks)})"

    def __str__(self):
        return " + ".join(f"M{n}" for n in self.blocks)


class AlgebraElement:
    """An element of a multi-matrix algebra, one exact matrix per block."""

    __slots__ = ("algebra", "parts", "_hash", "_mask")

    def __init__(self, algebra: MultiMatrixAlgebra, parts):
        parts = tuple(parts)
        if len(parts) != algebra.nblocks:
            raise ValidationError("one matrix per block required")
        for n, p in zip(algebra.blocks, parts):
            if p.rows != n or p.cols != n:
                raise ValidationError(
                    f"block of shape {p.rows}x{p.cols} does not fit size {n}"
                )
        self.algebra = algebra
        self.parts = parts
        self._hash = None
        self._mask = -1  # sentinel: not yet computed

    def _require_same_parent(self, other: "AlgebraElement"):
        if self.algebra != other.algebra:
            raise ValidationError("elements live in different algebras")

    def __add__(self, other):
        self._require_same_parent(other)
        return AlgebraElement(self.algebra,
                              [a + b for a, b in zip(self.parts, other.parts)])

    def __sub__(self, other):
        self._require_same_parent(other)
        return AlgebraElement(self.algebra,
                              [a - b for a, b in zip(self.parts, other.parts)])

    def __mul__(self, other):
        self._require_same_parent(other)
        return AlgebraElement(self.algebra,
                              [a * b for a, b in zip(self.parts, other.parts)])

    def __neg__(self):
        return AlgebraElement(self.algebra, [-a for a in self.parts])

    def adjoint(self) -> "AlgebraElement":
        return AlgebraElement(self.algebra, [a.adjoint() for a in self.parts])

    def scale(self, c) -> "AlgebraElement":
        return AlgebraElement(self.algebra, [a.scale(c) for a in self.parts])

    def is_zero(self) -> bool:
        return all(p.is_zero() for p in self.parts)

    def is_projection(self) -> bool:
        return all(p.classify().projection for p in self.parts)

    def is_unitary(self) -> bool:
        return all(p.classify().unitary for p in self.parts)

    def rank_vector(self):
        """Per-block ranks; classifies projections up to unitary equivalence."""
        return tuple(p.rank() for p in self.parts)

    @property
    def diag_mask(self):
        """Frozenset of global coordinates if this is a diagonal 0/1
        projection, else None.  Cached."""
        if self._mask == -1:
            coords = set()
            offset = 0
            ok = True
            for p in self.parts:
                bits = p.diagonal_01_pattern()
                if bits is None:
                    ok = False
                    break
                coords.update(offset + i for i, b in enumerate(bits) if b)
                offset += p.rows
            self._mask = frozenset(coords) if ok else None
        return self._mask

    def __eq__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self.algebra == other.algebra and self.parts == other.parts

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.algebra.blocks, self.parts))
        return self._hash

    def __repr__(self):
        return f"AlgebraElement({self.algebra}, {list(self.parts)})"


def diagonal_projection(algebra: MultiMatrixAlgebra, coords) -> AlgebraElement:
    """The diagonal 0/1 projection supported on the given global coordinates."""
    coords = set(coords)
    parts = []
    offset = 0
    for n in algebra.blocks:
        parts.append(ExactMatrix.diagonal(
            [1 if offset + i in coords else 0 for i in range(n)]))
        offset += n
    return AlgebraElement(algebra, parts)


def projection_leq(q: AlgebraElement, p: AlgebraElement) -> bool:
    """Whether projection q sits under projection p (q = q p).

    Uses diagonal support masks when both are diagonal 0/1 projections,
    falling back to exact matrix arithmetic.
    """
    mq, mp = q.diag_mask, p.diag_mask
    if mq is not None and mp is not None:
        return mq <= mp
    return q * p == q


class StarHom:
    """A *-homomorphism between multi-matrix algebras.

    The multiplicity matrix records how many copies of each domain block
    are embedded into each codomain block; the coordinate assignment
    pins down where each copy lands, making apply() deterministic.  Two
    homs with equal multiplicities but different assignments are
    unitarily equivalent but not structurally equal.
    """

    __slots__ = ("domain", "codomain", "multiplicity", "unital", "assignment")

    def __init__(self, domain, codomain, multiplicity, unital,
                 assignment=None):
        multiplicity = tuple(tuple(int(x) for x in row) for row in multiplicity)
        if len(multiplicity) != codomain.nblocks or any(
                len(row) != domain.nblocks for row in multiplicity):
            raise ValidationError("multiplicity must be k_cod x k_dom")
        if any(x < 0 for row in multiplicity for x in row):
            raise ValidationError("multiplicities must be nonnegative")
        for i, m in enumerate(codomain.blocks):
            used = sum(multiplicity[i][j] * domain.blocks[j]
                       for j in range(domain.nblocks))
            if used > m:
                raise ValidationError(
                    f"codomain block {i} of size {m} cannot hold {used} coordinates"
                )
            if unital and used != m:
                raise ValidationError(
                    f"unital hom must fill codomain block {i} exactly "
                    f"({used} of {m} used)"
                )
        if assignment is None:
            assignment = tuple(
                tuple((j, c) for j in range(domain.nblocks)
                      for c in range(multiplicity[i][j]))
                for i in range(codomain.nblocks)
            )
        else:
            assignment = tuple(tuple(slot for slot in row) for row in assignment)
        self.domain = domain
        self.codomain = codomain
        self.multiplicity = multiplicity
        self.unital = bool(unital)
        self.assignment = assignment

    @classmethod
    def identity(cls, algebra: MultiMatrixAlgebra) -> "StarHom":
        mult = [[1 if i == j else 0 for j in range(algebra.nblocks)]
                for i in range(algebra.nblocks)]
        return cls(algebra, algebra, mult, unital=True)

    def apply(self, a: AlgebraElement) -> AlgebraElement:
        """Block-diagonal placement of copies of a's blocks, zero-padded
        when non-unital."""
        if a.algebra != self.domain:
            raise ValidationError("element does not live in the hom's domain")
        parts = []
        for i, m in enumerate(self.codomain.blocks):
            rows = [[GR_ZERO] * m for _ in range(m)]
            offset = 0
            for (j, _copy) in self.assignment[i]:
                n = self.domain.blocks[j]
                block = a.parts[j]
                for r in range(n):
                    for c in range(n):
                        e = block.entry(r, c)
                        if not e.is_zero():
                            rows[offset + r][offset + c] = e
                offset += n
            parts.append(ExactMatrix.from_rows(rows))
        return AlgebraElement(self.codomain, parts)

    def compose(self, other: "StarHom") -> "StarHom":
        """self after other.  The inner hom must be unital so that the
        composite placement stays contiguous."""
        if other.codomain != self.domain:
            raise ValidationError("homs do not chain")
        if not other.unital:
            raise ValidationError("compose requires a unital inner hom")
        k_dom = other.domain.nblocks
        mult = [
            [sum(self.multiplicity[i][j] * other.multiplicity[j][l]
                 for j in range(self.domain.nblocks))
             for l in range(k_dom)]
            for i in range(self.codomain.nblocks)
        ]
        copies = [[0] * k_dom for _ in range(self.codomain.nblocks)]
        assignment = []
        for i in range(self.codomain.nblocks):
            slots = []
            for (j, _c) in self.assignment[i]:
                for (l, _c2) in other.assignment[j]:
                    slots.append((l, copies[i][l]))
                    copies[i][l] += 1
            assignment.append(tuple(slots))
        return StarHom(other.domain, self.codomain, mult,
                       unital=self.unital and other.unital,
                       assignment=assignment)

    def __eq__(self, other):
        if not isinstance(other, StarHom):
            return NotImplemented
        return (self.domain == other.domain
                and self.codomain == other.codomain
                and self.multiplicity == other.multiplicity
                and self.unital == other.unital
                and self.assignment == other.assignment)

    def __hash__(self):
        return hash((self.domain, self.codomain, self.multiplicity,
                     self.unital, self.assignment))

    def __repr__(self):
        return (f"StarHom({self.domain} -> {self.codomain}, "
                f"multiplicity={[list(r) for r in self.multiplicity]}, "
                f"unital={self.unital})")


def apply_hom(phi: StarHom, a: AlgebraElement) -> AlgebraElement:
    return phi.apply(a)


class InnerAutomorphism:
    """Conjugation a -> u a u* by a unitary element u.

    coord_perm, when set, records that u permutes the diagonal
    coordinates; conjugation of diagonal projections then reduces to a
    permutation of supports.
    """

    __slots__ = ("u", "name", "coord_perm")

    def __init__(self, u: AlgebraElement, name: str = "", coord_perm=None):
        if not u.is_unitary():
            raise ValidationError("conjugating element must be unitary in every block")
        self.u = u
        self.name = name or "u"
        self.coord_perm = tuple(coord_perm) if coord_perm is not None else None

    @property
    def algebra(self) -> MultiMatrixAlgebra:
        return self.u.algebra

    def __call__(self, a: AlgebraElement) -> AlgebraElement:
        return self.conjugate(a)

    def conjugate(self, a: AlgebraElement) -> AlgebraElement:
        if a.algebra != self.u.algebra:
            raise ValidationError("element and unitary live in different algebras")
        if self.coord_perm is not None and a.diag_mask is not None:
            return diagonal_projection(
                a.algebra, (self.coord_perm[c] for c in a.diag_mask))
        return self.u * a * self.u.adjoint()

    def inverse(self) -> "InnerAutomorphism":
        perm = None
        if self.coord_perm is not None:
            perm = [0] * len(self.coord_perm)
            for i, p in enumerate(self.coord_perm):
                perm[p] = i
        return InnerAutomorphism(self.u.adjoint(), name=f"{self.name}^-1",
                                 coord_perm=perm)

    def acts_trivially_on(self, elements) -> bool:
        return all(self.conjugate(p) == p for p in elements)

    def __eq__(self, other):
        if not isinstance(other, InnerAutomorphism):
            return NotImplemented
        return self.u == other.u

    def __hash__(self):
        return hash(self.u)

    def __repr__(self):
        return f"InnerAutomorphism({self.name})"


def conjugate(alpha: InnerAutomorphism, a: AlgebraElement) -> AlgebraElement:
    return alpha.conjugate(a)


def transposition_unitary(algebra: MultiMatrixAlgebra, block: int,
                          i: int, j: int) -> InnerAutomorphism:
    """The permutation unitary swapping coordinates i and j of a block."""
    n = algebra.blocks[block]
    if not (0 <= i < n and 0 <= j < n and i != j):
        raise ValidationError(f"bad transposition ({i},{j}) in block of size {n}")
    parts = []
    for b, m in enumerate(algebra.blocks):
        if b != block:
            parts.append(ExactMatrix.identity(m))
            continue
        rows = [[GR_ONE if r == c else GR_ZERO for c in range(m)] for r in range(m)]
        rows[i][i] = GR_ZERO
        rows[j][j] = GR_ZERO
        rows[i][j] = GR_ONE
        rows[j][i] = GR_ONE
        parts.append(ExactMatrix.from_rows(rows))
    offset = algebra.block_offset(block)
    perm = list(range(algebra.coord_count))
    perm[offset + i], perm[offset + j] = perm[offset + j], perm[offset + i]
    return InnerAutomorphism(AlgebraElement(algebra, parts),
                             name=f"swap[b{block}:{i},{j}]", coord_perm=perm)


def pythagorean_unitary(algebra: MultiMatrixAlgebra, block: int) -> InnerAutomorphism:
    """The rotation [[3/5,4/5],[-4/5,3/5]] on the first two coordinates
    of a block, identity elsewhere; an exactly representable non-permutation
    unitary."""
    n = algebra.blocks[block]
    if n < 2:
        raise ValidationError("Pythagorean rotation needs a block of size >= 2")
    parts = []
    for b, m in enumerate(algebra.blocks):
        if b != block:
            parts.append(ExactMatrix.identity(m))
            continue
        rows = [[GR_ONE if r == c else GR_ZERO for c in range(m)] for r in range(m)]
        rows[0][0] = GaussianRational("3/5")
        rows[0][1] = GaussianRational("4/5")
        rows[1][0] = GaussianRational("-4/5")
        rows[1][1] = GaussianRational("3/5")
        parts.append(ExactMatrix.from_rows(rows))
    return InnerAutomorphism(AlgebraElement(algebra, parts),
                             name=f"pyth[b{block}]")


def stabilize(algebra: MultiMatrixAlgebra, m: int, hom: StarHom | None = None):
    """Tensor with an m x m matrix tower: blocks [n1*m .. nk*m].

    A given hom is carried along with the same multiplicity matrix on
    the enlarged blocks, realizing phi tensor id.
    """
    if m < 1:
        raise ValidationError("stabilization level must be >= 1")
    out = MultiMatrixAlgebra([n * m for n in algebra.blocks])
    if hom is None:
        return out, None
    if hom.domain != algebra:
        raise ValidationError("hom domain does not match the algebra")
    cod = MultiMatrixAlgebra([n * m for n in hom.codomain.blocks])
    return out, StarHom(out, cod, hom.multiplicity, unital=hom.unital)


def unitalize(algebra: MultiMatrixAlgebra):
    """Adjoin a unit: A+ = A + C (valid because A is already unital), with
    the scalar projection pi: A+ -> C onto the adjoined 1x1 block."""
    plus = MultiMatrixAlgebra(list(algebra.blocks) + [1])
    scalars = MultiMatrixAlgebra([1])
    mult = [[0] * algebra.nblocks + [1]]
    pi = StarHom(plus, scalars, mult, unital=True)
    return plus, pi


def default_small_algebras():
    """Catalog used by the randomized suites."""
    return [MultiMatrixAlgebra(b) for b in
            ([1], [2], [1, 1], [1, 2], [2, 1], [1, 1, 1])]


def sample_unital_hom(rng, max_total_dim: int = 6) -> StarHom:
    """Seeded random unital Bratteli morphism between algebras whose
    linear dimensions both stay within max_total_dim.

    Codomain block sizes are derived from the multiplicity matrix, so
    unitality is exact by construction.
    """
    while True:
        k_dom = rng.randint(1, 3)
        dom_blocks = [rng.randint(1, 2) for _ in range(k_dom)]
        dom = MultiMatrixAlgebra(dom_blocks)
        if dom.dimension > max_total_dim:
            continue
        k_cod = rng.randint(1, 4)
        mult = [[rng.randint(0, 2) for _ in range(k_dom)] for _ in range(k_cod)]
        cod_blocks = [sum(mult[i][j] * dom_blocks[j] for j in range(k_dom))
                      for i in range(k_cod)]
        if any(b < 1 for b in cod_blocks):
            continue
        cod = MultiMatrixAlgebra(cod_blocks)
        if cod.dimension > max_total_dim:
            continue
        return StarHom(dom, cod, mult, unital=True)
