"""K-theory of finite spectra and the diagram route to K0.

The pipeline: a finite generated subdiagram of commutative subalgebras
of a multi-matrix algebra, its spectra, topological K of each spectrum,
then the generalized colimit.  The resulting group comes with classes
for diagonal projections, and the comparison map from the standard
rank-vector K0 is checked to be an isomorphism by constructing an
explicit inverse on generators.

The full diagram of commutative subalgebras is infinite; the finite
stand-in keeps all partitions of the diagonal coordinates (up to a size
limit, beyond which only the coarsest and finest survive) plus rotated
copies under a configurable set of inner automorphisms.  When the
sample is too coarse for an isomorphism check, that is reported loudly,
never silently accepted.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from .abgroup import (AbHom, ColimitResult, PresentedAbGroup, colimit,
                      colimit_induced, element_eq, kernel)
from .algebra import (AlgebraElement, InnerAutomorphism, MultiMatrixAlgebra,
                      StarHom, pythagorean_unitary, stabilize,
                      transposition_unitary, unitalize)
from .diagram import (COVARIANT, FORWARD, DiagramMorphism, Functor, Shape,
                      ShapedDiagram, find_path, postcompose)
from .errors import (SubdiagramInsufficientError, ValidationError,
                     VerificationError)
from .snf import IntegerRowLattice
from .subalgebra import (CommSubalgebra, FiniteSpace, SpaceMap,
                         SpectrumFunctor, SubalgebraArrow,
                         partition_subalgebra, span_subalgebra, spectrum)


def K_of_space(space: FiniteSpace) -> PresentedAbGroup:
    """Free abelian group with one generator per point, in point order."""
    if space.size == 0:
        raise ValidationError("K of the empty space is not used here: "
                              "spectra of unital algebras are nonempty")
    return PresentedAbGroup.free(space.size)


def K_of_map(q: SpaceMap) -> AbHom:
    """Contravariant K of a map of finite spaces.

    Sends the generator at a target point to the sum of generators over
    its preimage (pullback of trivial bundles).
    """
    src_group = K_of_space(q.target)
    dst_group = K_of_space(q.source)
    images = []
    for p in q.target.points:
        row = [1 if q.assignment[x] == p else 0 for x in q.source.points]
        images.append(row)
    return AbHom(src_group, dst_group, images)


KFunctor = Functor(on_object=K_of_space, on_morphism=K_of_map,
                   contravariant=True, name="K")


def set_partitions(n: int):
    """All set partitions of range(n), deterministically ordered.

    Parts are frozensets sorted by minimum; the coarsest partition comes
    first and the all-singletons partition last.
    """
    out = []
    groups = []

    def rec(i):
        if i == n:
            out.append(tuple(frozenset(g) for g in groups))
            return
        for g in groups:
            g.append(i)
            rec(i + 1)
            g.pop()
        groups.append([i])
        rec(i + 1)
        groups.pop()

    if n == 0:
        return [()]
    rec(0)
    return out


def partition_label(parts) -> str:
    return "|".join(",".join(str(c) for c in sorted(p)) for p in parts)


@dataclass(frozen=True)
class SubdiagramSpec:
    """Finite stand-in for the infinite diagram of commutative subalgebras.

    rotations: inner automorphism generators contributing rotated copies
    and identification edges.  full_partition_limit: with more diagonal
    coordinates than this, only the coarsest and finest partitions are
    kept.  rotation_edge_budget: rotation edges attach at every base
    node while base_count * rotation_count stays within it, otherwise
    only at the finest node (the remaining identifications are generated
    by those).
    """

    rotations: tuple = ()
    full_partition_limit: int = 6
    rotation_edge_budget: int = 1200
    label: str = "custom"

    @classmethod
    def default(cls, algebra: MultiMatrixAlgebra) -> "SubdiagramSpec":
        """All coordinate transpositions per block plus one Pythagorean
        rotation per block of size >= 2."""
        rotations = []
        for b, n in enumerate(algebra.blocks):
            for i in range(n):
                for j in range(i + 1, n):
                    rotations.append(transposition_unitary(algebra, b, i, j))
            if n >= 2:
                rotations.append(pythagorean_unitary(algebra, b))
        return cls(rotations=tuple(rotations), label="default")

    def describe(self) -> str:
        names = ",".join(a.name for a in self.rotations)
        return (f"{self.label}(rotations=[{names}], "
                f"partition_limit={self.full_partition_limit})")


def build_subdiagram(algebra: MultiMatrixAlgebra,
                     spec: SubdiagramSpec | None = None) -> ShapedDiagram:
    """The sampled diagram of commutative subalgebras of an algebra.

    Nodes: diagonal partition subalgebras (all of them up to the size
    limit) and their rotated copies.  Edges: partition-refinement
    inclusions (mirrored into each rotated sheet) and rotation
    isomorphisms.  Node and edge order is deterministic.
    """
    if spec is None:
        spec = SubdiagramSpec.default(algebra)
    n = algebra.coord_count
    if n <= spec.full_partition_limit:
        partitions = set_partitions(n)
        full = True
    else:
        partitions = [(frozenset(range(n)),),
                      tuple(frozenset([c]) for c in range(n))]
        full = False

    node_ids = []
    node_data = {}
    by_key = {}
    base_ids = []
    parts_by_id = {}
    for parts in partitions:
        u = partition_subalgebra(algebra, parts)
        nid = "d:" + partition_label(parts)
        if nid in node_data:
            continue
        node_ids.append(nid)
        node_data[nid] = u
        by_key[u.key] = nid
        base_ids.append(nid)
        parts_by_id[nid] = parts
    fine_id = base_ids[-1]

    kept = []
    for alpha in spec.rotations:
        if alpha.algebra != algebra:
            raise ValidationError("rotation lives in a different algebra")
        if not alpha.acts_trivially_on(node_data[fine_id].atoms):
            kept.append(alpha)

    # rotated copies; placement maps raw conjugate order to node atom order
    placements = {}
    for r, alpha in enumerate(kept):
        for bid in base_ids:
            u = node_data[bid]
            raw = tuple(alpha.conjugate(p) for p in u.atoms)
            key = frozenset(raw)
            tid = by_key.get(key)
            if tid is None:
                v = CommSubalgebra(algebra, raw, validate=False)
                tid = f"r{r}:{bid}"
                node_ids.append(tid)
                node_data[tid] = v
                by_key[v.key] = tid
                placement = tuple(range(len(raw)))
            else:
                v = node_data[tid]
                placement = tuple(v.atom_index(p) for p in raw)
            placements[(r, bid)] = (tid, placement, raw)

    edges = []
    edge_data = {}
    incl_pairs = set()

    def add_inclusion(src, dst, spectrum_cache=None):
        if src == dst or (src, dst) in incl_pairs:
            return None
        incl_pairs.add((src, dst))
        eid = f"i:{src}=>{dst}"
        arrow = SubalgebraArrow.inclusion(node_data[src], node_data[dst],
                                          validate=False)
        if spectrum_cache is not None:
            arrow._spectrum_map = spectrum_cache
        edges.append((eid, src, dst))
        edge_data[eid] = arrow
        return eid

    # base inclusion edges: covering refinements (merge two parts)
    cover_list = []
    if full:
        label_to_id = {partition_label(parts_by_id[b]): b for b in base_ids}
        for bid in base_ids:
            parts = parts_by_id[bid]
            if len(parts) < 2:
                continue
            for a in range(len(parts)):
                for b in range(a + 1, len(parts)):
                    merged = [p for k, p in enumerate(parts) if k not in (a, b)]
                    merged.append(parts[a] | parts[b])
                    merged.sort(key=min)
                    sid = label_to_id[partition_label(merged)]
                    if add_inclusion(sid, bid) is not None:
                        cover_list.append((sid, bid))
    else:
        for coarse in base_ids[:-1]:
            if add_inclusion(coarse, fine_id) is not None:
                cover_list.append((coarse, fine_id))

    # mirrored inclusion edges inside each rotated sheet
    for r, _alpha in enumerate(kept):
        for (sid, tid) in cover_list:
            s2, ps, _ = placements[(r, sid)]
            t2, pt, _ = placements[(r, tid)]
            if s2 == t2 or (s2, t2) in incl_pairs:
                continue
            base_arrow = edge_data[f"i:{sid}=>{tid}"]
            base_map = base_arrow.spectrum_map()
            assignment = {}
            for pj, pi in base_map.assignment.items():
                j = int(pj[1:])
                i = int(pi[1:])
                assignment[f"p{pt[j]}"] = f"p{ps[i]}"
            cache = SpaceMap(spectrum(node_data[t2]), spectrum(node_data[s2]),
                             assignment)
            add_inclusion(s2, t2, spectrum_cache=cache)

    # rotation edges
    all_node_mode = (len(base_ids) * max(1, len(kept))
                     <= spec.rotation_edge_budget)
    rot_sources = base_ids if all_node_mode else [fine_id]
    rotation_edges = {}
    for r, alpha in enumerate(kept):
        for bid in rot_sources:
            tid, placement, raw = placements[(r, bid)]
            eid = f"t{r}:{bid}"
            assignment = {f"p{placement[i]}": f"p{i}"
                          for i in range(len(placement))}
            cache = SpaceMap(spectrum(node_data[tid]),
                             spectrum(node_data[bid]), assignment)
            arrow = SubalgebraArrow(node_data[bid], node_data[tid], raw,
                                    kind="rotation", unitary=alpha,
                                    spectrum_cache=cache)
            edges.append((eid, bid, tid))
            edge_data[eid] = arrow
            rotation_edges[(r, bid)] = eid

    shape = Shape(node_ids, edges)
    meta = {
        "algebra": algebra,
        "spec": spec,
        "fine": fine_id,
        "base_ids": tuple(base_ids),
        "by_key": by_key,
        "rotations": tuple(kept),
        "rotation_edges": rotation_edges,
        "all_node_mode": all_node_mode,
        "full": full,
    }
    return ShapedDiagram(shape, node_data, edge_data, COVARIANT, meta=meta)


@dataclass
class KTildeContext:
    algebra: MultiMatrixAlgebra
    spec: SubdiagramSpec
    diagram: ShapedDiagram
    colim: ColimitResult
    block_positions: tuple


class K0Group:
    """A K0-style group together with the classes of rank vectors.

    class_of is additive in the rank vector by construction.  Groups
    produced by the diagram route keep enough context to also resolve
    the class of an explicit projection.
    """

    __slots__ = ("group", "block_words", "context")

    def __init__(self, group: PresentedAbGroup, block_words,
                 context: KTildeContext | None = None):
        self.group = group
        self.block_words = tuple(tuple(w) for w in block_words)
        self.context = context

    @property
    def nblocks(self) -> int:
        return len(self.block_words)

    def class_of(self, ranks):
        """Group word of the class with the given per-block ranks."""
        ranks = tuple(int(r) for r in ranks)
        if len(ranks) != self.nblocks:
            raise ValidationError("one rank per block required")
        word = [0] * self.group.ngens
        for r, bw in zip(ranks, self.block_words):
            if r:
                for k, c in enumerate(bw):
                    if c:
                        word[k] += r * c
        return tuple(word)

    def class_of_projection(self, p: AlgebraElement):
        """Colimit class of a projection, resolved through its span
        subalgebra when that node is present in the sampled diagram."""
        ctx = self.context
        if ctx is None:
            return self.class_of(p.rank_vector())
        if p.algebra != ctx.algebra:
            raise ValidationError("projection lives in a different algebra")
        if not p.is_projection():
            raise ValidationError("class_of_projection needs a projection")
        total = self.group.ngens
        if p.is_zero():
            return (0,) * total
        dia = ctx.diagram
        span = span_subalgebra(ctx.algebra, [p])
        nid = dia.meta["by_key"].get(span.key)
        if nid is not None:
            node = dia.node_data[nid]
            pos = ctx.colim.offsets[nid] + node.atom_index(p)
            word = [0] * total
            word[pos] = 1
            return tuple(word)
        if p.diag_mask is not None:
            fine = dia.meta["fine"]
            off = ctx.colim.offsets[fine]
            word = [0] * total
            for c in p.diag_mask:
                word[off + c] += 1
            return tuple(word)
        for nid in dia.shape.nodes:
            node = dia.node_data[nid]
            dominated = [i for i, a in enumerate(node.atoms) if a * p == a]
            total_proj = ctx.algebra.zero()
            for i in dominated:
                total_proj = total_proj + node.atoms[i]
            if total_proj == p:
                off = ctx.colim.offsets[nid]
                word = [0] * total
                for i in dominated:
                    word[off + i] += 1
                return tuple(word)
        raise SubdiagramInsufficientError(
            "projection class is not resolvable in the sampled subdiagram",
            witness={"rank_vector": p.rank_vector()})

    def invariant_factors(self):
        return self.group.invariant_factors()

    def canonical_str(self) -> str:
        return self.group.canonical_str()

    def __repr__(self):
        return f"K0Group({self.canonical_str()})"


def k0_standard(algebra: MultiMatrixAlgebra) -> K0Group:
    """Independent oracle: the free group on the block rank-1 classes.

    This realizes the universal group of the projection monoid directly,
    using that unitary equivalence of projections in a multi-matrix
    algebra is exactly equality of rank vectors.
    """
    k = algebra.nblocks
    free = PresentedAbGroup.free(k)
    return K0Group(free, [free.unit_word(i) for i in range(k)])


def k0_standard_hom(phi: StarHom) -> AbHom:
    """The multiplicity matrix acting on rank vectors."""
    k_dom = phi.domain.nblocks
    k_cod = phi.codomain.nblocks
    images = [[phi.multiplicity[i][j] for i in range(k_cod)]
              for j in range(k_dom)]
    return AbHom(PresentedAbGroup.free(k_dom), PresentedAbGroup.free(k_cod),
                 images)


def _ab_diagram(diagram: ShapedDiagram, morphism=None):
    spaces, m1 = postcompose(SpectrumFunctor, diagram, morphism)
    return postcompose(KFunctor, spaces, m1)


def _ktilde_from(algebra: MultiMatrixAlgebra, dia: ShapedDiagram,
                 colim: ColimitResult) -> K0Group:
    fine = dia.meta["fine"]
    off = colim.offsets[fine]
    positions = tuple(off + algebra.block_offset(i)
                      for i in range(algebra.nblocks))
    total = colim.group.ngens
    block_words = []
    for pos in positions:
        w = [0] * total
        w[pos] = 1
        block_words.append(w)
    ctx = KTildeContext(algebra=algebra, spec=dia.meta["spec"], diagram=dia,
                        colim=colim, block_positions=positions)
    return K0Group(colim.group, block_words, ctx)


def k_tilde_f(algebra: MultiMatrixAlgebra, spec: SubdiagramSpec | None = None,
              diagram: ShapedDiagram | None = None) -> K0Group:
    """Colimit of K over the spectra of the sampled subdiagram.

    The returned group's rank-vector classes anchor at the diagonal
    rank-1 projections of the finest node; explicit projections resolve
    through their span subalgebras.
    """
    dia = diagram if diagram is not None else build_subdiagram(algebra, spec)
    ab, _ = _ab_diagram(dia)
    colim = colimit(ab)
    return _ktilde_from(algebra, dia, colim)


@dataclass
class EtaResult:
    """The comparison isomorphism and both endpoint groups."""

    hom: AbHom
    k0: K0Group
    ktilde: K0Group
    m: int

    @property
    def images(self):
        return self.hom.images


def _generator_rank_table(kt: K0Group):
    dia = kt.context.diagram
    table = []
    for nid in dia.shape.nodes:
        for atom in dia.node_data[nid].atoms:
            table.append(atom.rank_vector())
    return table


def _check_eta_inverse(kt: K0Group):
    """Bidirectional inverse check for the comparison map.

    The inverse candidate sends the generator of a pair (node, atom) to
    the atom's rank vector.  It must kill every colimit relation, be a
    left inverse on the block classes, and a right inverse on every
    generator; any failure signals that the sampled subdiagram is too
    coarse and is reported with a witness.
    """
    dia = kt.context.diagram
    k = kt.nblocks
    table = _generator_rank_table(kt)
    gen_names = []
    for nid in dia.shape.nodes:
        for i in range(dia.node_data[nid].natoms):
            gen_names.append((nid, i))

    for sp in kt.group.rows:
        acc = [0] * k
        for g, c in sp:
            rv = table[g]
            for i in range(k):
                acc[i] += c * rv[i]
        if any(acc):
            raise SubdiagramInsufficientError(
                "rank map fails on a colimit relation",
                witness={"relation": dict(sp)})

    positions = kt.context.block_positions
    for i in range(k):
        rv = table[positions[i]]
        want = tuple(1 if j == i else 0 for j in range(k))
        if rv != want:
            raise SubdiagramInsufficientError(
                "block class anchor has the wrong rank vector",
                witness={"block": i, "rank_vector": rv})

    lattice = kt.group.lattice
    for g, rv in enumerate(table):
        diff = {g: 1}
        for i, r in enumerate(rv):
            if r:
                pos = positions[i]
                v = diff.get(pos, 0) - r
                if v:
                    diff[pos] = v
                else:
                    diff.pop(pos, None)
        if not lattice.contains(diff):
            raise SubdiagramInsufficientError(
                "generator class is not identified with its rank class; "
                "the subdiagram sample is too coarse",
                witness={"generator": gen_names[g], "rank_vector": rv})


def eta(algebra: MultiMatrixAlgebra, spec: SubdiagramSpec | None = None,
        m: int = 2) -> EtaResult:
    """The natural comparison from standard K0 to the diagram K0 of the
    m-stabilized algebra, with its bidirectional inverse check.

    Raises SubdiagramInsufficientError when the check fails.
    """
    stabilized, _ = stabilize(algebra, m)
    kt = k_tilde_f(stabilized, spec)
    k0 = k0_standard(algebra)
    hom = AbHom(k0.group, kt.group, kt.block_words)
    _check_eta_inverse(kt)
    return EtaResult(hom=hom, k0=k0, ktilde=kt, m=m)


@dataclass
class Theorem1Report:
    algebra: MultiMatrixAlgebra
    m: int
    ok: bool
    factors_match: bool
    eta_ok: bool
    ktilde_factors: tuple
    k0_factors: tuple
    error: str | None = None
    witness: object = None

    def __bool__(self):
        return self.ok


def verify_theorem1(algebra: MultiMatrixAlgebra,
                    spec: SubdiagramSpec | None = None,
                    m: int = 2) -> Theorem1Report:
    """Invariant-factor match plus the eta inverse check, as a report."""
    k0 = k0_standard(algebra)
    k0_factors = k0.invariant_factors()
    try:
        result = eta(algebra, spec, m)
    except SubdiagramInsufficientError as exc:
        return Theorem1Report(
            algebra=algebra, m=m, ok=False, factors_match=False, eta_ok=False,
            ktilde_factors=(), k0_factors=k0_factors,
            error=str(exc), witness=exc.witness)
    kt_factors = result.ktilde.invariant_factors()
    factors_match = kt_factors == k0_factors
    ok = factors_match
    return Theorem1Report(
        algebra=algebra, m=m, ok=ok, factors_match=factors_match, eta_ok=True,
        ktilde_factors=kt_factors, k0_factors=k0_factors)


def _image_subalgebra_node(phi: StarHom, node: CommSubalgebra,
                           target_diagram: ShapedDiagram):
    images = [phi.apply(p) for p in node.atoms]
    nonzero = [q for q in images if not q.is_zero()]
    key = frozenset(nonzero)
    nid = target_diagram.meta["by_key"].get(key)
    return nid, images


def diagram_morphism_of_hom(phi: StarHom, src_diagram: ShapedDiagram,
                            dst_diagram: ShapedDiagram) -> DiagramMorphism:
    """The (f, eta) morphism of subalgebra diagrams induced by a unital
    *-homomorphism: f sends a subalgebra to its image, and the component
    at U is the restriction of phi to U."""
    if not phi.unital:
        raise ValidationError("only unital homs induce diagram morphisms here")
    node_map = {}
    components = {}
    for nid in src_diagram.shape.nodes:
        node = src_diagram.node_data[nid]
        target_id, _images = _image_subalgebra_node(phi, node, dst_diagram)
        if target_id is None:
            raise VerificationError(
                "image subalgebra is not a node of the codomain diagram",
                witness={"node": nid})
        node_map[nid] = target_id
        components[nid] = SubalgebraArrow.hom_restriction(
            phi, node, codomain=dst_diagram.node_data[target_id])

    dst_rotations = dst_diagram.meta["rotations"]
    dst_rot_edges = dst_diagram.meta["rotation_edges"]
    edge_map = {}
    for e in src_diagram.shape.edges:
        arrow = src_diagram.edge_data[e.id]
        fa, fb = node_map[e.src], node_map[e.dst]
        if arrow.kind == "inclusion":
            path = find_path(
                dst_diagram, fa, fb,
                allowed=lambda ed: dst_diagram.edge_data[ed.id].kind == "inclusion")
            if path is None:
                raise VerificationError(
                    "no inclusion path for an edge image",
                    witness={"edge": e.id, "from": fa, "to": fb})
            edge_map[e.id] = path
        elif arrow.kind == "rotation":
            u_image = phi.apply(arrow.unitary.u)
            target_atoms = dst_diagram.node_data[fa].atoms
            trivial = all(
                u_image * p * u_image.adjoint() == p for p in target_atoms)
            if trivial:
                if fa != fb:
                    raise VerificationError(
                        "trivial rotation image with distinct endpoint images",
                        witness={"edge": e.id})
                edge_map[e.id] = ()
                continue
            hit = None
            for r, beta in enumerate(dst_rotations):
                if beta.u == u_image and (r, fa) in dst_rot_edges:
                    hit = dst_rot_edges[(r, fa)]
                    break
            if hit is None:
                raise VerificationError(
                    "rotation image edge missing in the codomain diagram "
                    "(diagram too coarse for this mapping)",
                    witness={"edge": e.id, "node": fa})
            edge_map[e.id] = (hit,)
        else:
            raise ValidationError(f"unexpected edge kind {arrow.kind!r}")
    return DiagramMorphism(node_map, edge_map, components, FORWARD)


@dataclass
class NaturalityReport:
    phi: StarHom
    m: int
    ok: bool
    witness: object = None

    def __bool__(self):
        return self.ok


def verify_naturality_square(phi: StarHom,
                             spec: SubdiagramSpec | None = None,
                             m: int = 1) -> NaturalityReport:
    """Whether eta_B . K0(phi) and Ktilde(phi tensor id) . eta_A agree on
    every generator of the standard K0 of the domain.

    The codomain diagram is built with the images of the domain's
    rotations added to its own, so the induced diagram morphism maps
    every generating edge.
    """
    if not phi.unital:
        raise ValidationError("naturality square requires a unital hom")
    dom_s, phi_s = stabilize(phi.domain, m, phi)
    cod_s = phi_s.codomain
    spec_a = spec if spec is not None else SubdiagramSpec.default(dom_s)
    dia_a = build_subdiagram(dom_s, spec_a)
    extras = []
    for alpha in dia_a.meta["rotations"]:
        u_image = phi_s.apply(alpha.u)
        if u_image.is_unitary():
            extras.append(InnerAutomorphism(u_image, name=f"phi({alpha.name})"))
    spec_b = SubdiagramSpec.default(cod_s)
    spec_b = replace(spec_b, rotations=spec_b.rotations + tuple(extras),
                     label="default+images")
    dia_b = build_subdiagram(cod_s, spec_b)

    dm = diagram_morphism_of_hom(phi_s, dia_a, dia_b)
    ab_a, ab_m = _ab_diagram(dia_a, dm)
    ab_b, _ = _ab_diagram(dia_b)
    colim_a = colimit(ab_a)
    colim_b = colimit(ab_b)
    kt_a = _ktilde_from(dom_s, dia_a, colim_a)
    kt_b = _ktilde_from(cod_s, dia_b, colim_b)
    eta_a = AbHom(k0_standard(phi.domain).group, kt_a.group, kt_a.block_words)
    eta_b = AbHom(k0_standard(phi.codomain).group, kt_b.group, kt_b.block_words)
    k0_phi = k0_standard_hom(phi)
    induced = colimit_induced(ab_m, ab_a, ab_b, colim_a, colim_b)

    for i in range(phi.domain.nblocks):
        left = induced.apply(eta_a.images[i])
        right = eta_b.apply(k0_phi.images[i])
        if not element_eq(kt_b.group, left, right):
            return NaturalityReport(
                phi=phi, m=m, ok=False,
                witness={"generator": i, "left": left, "right": right})
    return NaturalityReport(phi=phi, m=m, ok=True)


def k_tilde_f_nonunital(algebra: MultiMatrixAlgebra,
                        spec: SubdiagramSpec | None = None,
                        m: int = 2) -> K0Group:
    """Diagram K0 of an algebra treated as an ideal: unitalize the
    stabilization, apply the diagram functor to the scalar projection,
    and take the kernel of the induced map between colimits.

    A given spec must target the unitalized stabilization; the default
    is derived from it.
    """
    stabilized, _ = stabilize(algebra, m)
    plus, pi = unitalize(stabilized)
    dia_p = build_subdiagram(plus, spec)
    dia_c = build_subdiagram(pi.codomain, SubdiagramSpec(rotations=(),
                                                         label="scalars"))
    dm = diagram_morphism_of_hom(pi, dia_p, dia_c)
    ab_p, ab_m = _ab_diagram(dia_p, dm)
    ab_c, _ = _ab_diagram(dia_c)
    colim_p = colimit(ab_p)
    colim_c = colimit(ab_c)
    induced = colimit_induced(ab_m, ab_p, ab_c, colim_p, colim_c)
    ker_group, inclusion = kernel(induced)

    # express each block class over the kernel generators: a block class
    # word maps to zero, so it lies in the kernel lattice itself
    fine = dia_p.meta["fine"]
    off = colim_p.offsets[fine]
    klat = IntegerRowLattice(colim_p.group.ngens)
    for row in inclusion.images:
        klat.insert(row)
    block_words = []
    ngens = ker_group.ngens
    for i in range(algebra.nblocks):
        w = {off + stabilized.block_offset(i): 1}
        coords = klat.coordinates(w)
        if coords is None:
            raise SubdiagramInsufficientError(
                "block class does not lie in the kernel presentation",
                witness={"block": i})
        word = [0] * ngens
        for k, c in coords.items():
            word[k] = c
        block_words.append(tuple(word))
    return K0Group(ker_group, block_words)


def rank_vector(p: AlgebraElement):
    return p.rank_vector()
