"""Origami templates: Delzant polytopes with fused facets.

A template is a finite list of Delzant polytopes plus a fusion set of facets
(pairs, or singletons for one-sided folds).  This module checks the three
template conditions (facet agreement, no adjacent reuse, connectivity),
computes orientations by sign propagation, and classifies the 1-dimensional
templates into their four surface families.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field

from .errors import (
    DimensionError,
    NonorientableError,
    StructureError,
    ValidationError,
)
from .exactgeom import HPolytope, agrees_near, as_point

SPHERE = "sphere"
PROJECTIVE_PLANE = "projective-plane"
KLEIN_BOTTLE = "klein-bottle"
TORUS = "torus"


@dataclass(frozen=True)
class FacetAddress:
    """A facet of one template polytope, by polytope and halfspace index."""

    polytope: int
    facet: int


@dataclass(frozen=True)
class Fusion:
    """A fused facet pair, or a single folded facet when ``b`` is None."""

    a: FacetAddress
    b: FacetAddress | None = None

    @property
    def is_pair(self) -> bool:
        return self.b is not None

    @property
    def addresses(self) -> tuple[FacetAddress, ...]:
        return (self.a,) if self.b is None else (self.a, self.b)

    def shifted(self, offset: int) -> "Fusion":
        move = lambda ad: FacetAddress(ad.polytope + offset, ad.facet)
        return Fusion(move(self.a), move(self.b) if self.b else None)


def pair(a, b) -> Fusion:
    return Fusion(FacetAddress(*a), FacetAddress(*b))


def single(a) -> Fusion:
    return Fusion(FacetAddress(*a))


@dataclass(frozen=True)
class OrigamiTemplate:
    """Polytope list + fusions (+ optional orientation signs and names)."""

    polytopes: tuple[HPolytope, ...]
    fusions: tuple[Fusion, ...] = ()
    orientation: tuple[int, ...] | None = None
    names: tuple[str, ...] | None = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "polytopes", tuple(self.polytopes))
        object.__setattr__(self, "fusions", tuple(self.fusions))
        if self.orientation is not None:
            object.__setattr__(self, "orientation", tuple(self.orientation))
        if self.names is not None:
            object.__setattr__(self, "names", tuple(self.names))
        if not self.polytopes:
            raise ValueError("a template needs at least one polytope")
        dim = self.polytopes[0].dim
        if any(P.dim != dim for P in self.polytopes):
            raise ValueError("all template polytopes must share one dimension")
        for idx, fu in enumerate(self.fusions):
            for ad in fu.addresses:
                if not 0 <= ad.polytope < len(self.polytopes):
                    raise ValueError(f"fusion #{idx}: no polytope {ad.polytope}")
                count = len(self.polytopes[ad.polytope].halfspaces)
                if not 0 <= ad.facet < count:
                    raise ValueError(
                        f"fusion #{idx}: polytope {ad.polytope} has no facet {ad.facet}"
                    )
            if fu.is_pair and fu.a == fu.b:
                raise ValueError(f"fusion #{idx} pairs a facet with itself")
        if self.orientation is not None:
            if len(self.orientation) != len(self.polytopes):
                raise ValueError("orientation length mismatch")
            if any(s not in (1, -1) for s in self.orientation):
                raise ValueError("orientation signs must be +1 or -1")
        if self.names is not None and len(self.names) != len(self.polytopes):
            raise ValueError("names length mismatch")

    @property
    def dim(self) -> int:
        return self.polytopes[0].dim

    def fused_facets(self, polytope: int) -> frozenset[int]:
        return frozenset(
            ad.facet
            for fu in self.fusions
            for ad in fu.addresses
            if ad.polytope == polytope
        )


@dataclass(frozen=True)
class ValidationReport:
    delzant_failures: tuple[tuple[int, str], ...]
    agreement_failures: tuple[tuple[int, str], ...]
    adjacency_failures: tuple[str, ...]
    connected: bool
    self_pairs: tuple[int, ...]

    @property
    def valid(self) -> bool:
        return (
            not self.delzant_failures
            and not self.agreement_failures
            and not self.adjacency_failures
            and self.connected
        )

    def __str__(self) -> str:
        if self.valid:
            return "valid template"
        parts = []
        parts += [f"polytope {i} not Delzant: {m}" for i, m in self.delzant_failures]
        parts += [f"fusion #{i} facets disagree: {m}" for i, m in self.agreement_failures]
        parts += list(self.adjacency_failures)
        if not self.connected:
            parts.append("fusion graph is disconnected")
        return "; ".join(parts)


@dataclass(frozen=True)
class FoldComponent:
    fusion: int
    coorientable: bool


@dataclass(frozen=True)
class FixedPoint:
    polytope: int
    vertex: tuple


@dataclass(frozen=True)
class SurfaceClass:
    family: str
    fixed_points: int
    fold_components: int


# ---------------------------------------------------------------------------
# validation
# ---------------------------------------------------------------------------

def _facets_intersect(P: HPolytope, f: int, g: int) -> bool:
    va = set(P.face_vertices(P.facet(f)))
    return bool(va & set(P.face_vertices(P.facet(g))))


def validate(T: OrigamiTemplate) -> ValidationReport:
    """Check the Delzant property and the three template conditions."""
    delzant = []
    for i, P in enumerate(T.polytopes):
        rep = P.is_delzant()
        if not rep.is_delzant:
            delzant.append((i, rep.failure))

    agreement = []
    for idx, fu in enumerate(T.fusions):
        if not fu.is_pair:
            continue
        Pa = T.polytopes[fu.a.polytope]
        Pb = T.polytopes[fu.b.polytope]
        if not agrees_near(Pa, fu.a.facet, Pb, fu.b.facet):
            agreement.append((
                idx,
                f"polytope {fu.a.polytope} facet {fu.a.facet} vs "
                f"polytope {fu.b.polytope} facet {fu.b.facet}",
            ))

    adjacency = []
    entries = [
        (idx, ad) for idx, fu in enumerate(T.fusions) for ad in fu.addresses
    ]
    for (i1, a1), (i2, a2) in itertools.combinations(entries, 2):
        if i1 == i2 or a1.polytope != a2.polytope:
            continue
        if a1.facet == a2.facet:
            adjacency.append(
                f"fusions #{i1} and #{i2} reuse facet {a1.facet} "
                f"of polytope {a1.polytope}"
            )
        elif _facets_intersect(T.polytopes[a1.polytope], a1.facet, a2.facet):
            adjacency.append(
                f"fusions #{i1} and #{i2} use neighboring facets "
                f"{a1.facet} and {a2.facet} of polytope {a1.polytope}"
            )

    connected = _is_connected(T)
    self_pairs = tuple(
        idx
        for idx, fu in enumerate(T.fusions)
        if fu.is_pair and fu.a.polytope == fu.b.polytope
    )
    return ValidationReport(
        tuple(delzant), tuple(agreement), tuple(adjacency), connected, self_pairs
    )


def _pair_edges(T: OrigamiTemplate):
    return [
        (fu.a.polytope, fu.b.polytope, idx)
        for idx, fu in enumerate(T.fusions)
        if fu.is_pair
    ]


def _is_connected(T: OrigamiTemplate) -> bool:
    n = len(T.polytopes)
    adj = {i: [] for i in range(n)}
    for u, v, _ in _pair_edges(T):
        adj[u].append(v)
        adj[v].append(u)
    seen = {0}
    queue = deque([0])
    while queue:
        u = queue.popleft()
        for w in adj[u]:
            if w not in seen:
                seen.add(w)
                queue.append(w)
    return len(seen) == n


# ---------------------------------------------------------------------------
# orientation
# ---------------------------------------------------------------------------

def orient(T: OrigamiTemplate) -> tuple[int, ...]:
    """Propagate signs across pair fusions, +1 at each traversal root.

    Raises NonorientableError carrying the offending single fusion or an
    odd cycle of polytope indices.
    """
    for idx, fu in enumerate(T.fusions):
        if not fu.is_pair:
            raise NonorientableError(single=idx)
    n = len(T.polytopes)
    adj = {i: [] for i in range(n)}
    for u, v, idx in _pair_edges(T):
        if u == v:
            raise NonorientableError(odd_cycle=(u,))
        adj[u].append(v)
        adj[v].append(u)
    sign = [0] * n
    parent: dict[int, int | None] = {}
    for root in range(n):
        if sign[root]:
            continue
        sign[root] = 1
        parent[root] = None
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for w in adj[u]:
                if sign[w] == 0:
                    sign[w] = -sign[u]
                    parent[w] = u
                    queue.append(w)
                elif sign[w] == sign[u]:
                    raise NonorientableError(
                        odd_cycle=_cycle_through(parent, u, w)
                    )
    return tuple(sign)


def _cycle_through(parent, u, w) -> tuple[int, ...]:
    def chain(x):
        out = [x]
        while parent[out[-1]] is not None:
            out.append(parent[out[-1]])
        return out

    pu, pw = chain(u), chain(w)
    in_pw = {node: i for i, node in enumerate(pw)}
    iu = next(i for i, node in enumerate(pu) if node in in_pw)
    lca = pu[iu]
    return tuple(pu[: iu + 1] + pw[: in_pw[lca]][::-1])


def orientation_signs(T: OrigamiTemplate) -> tuple[int, ...]:
    """The template's own orientation if present (checked), else orient(T)."""
    if T.orientation is None:
        return orient(T)
    for idx, fu in enumerate(T.fusions):
        if not fu.is_pair:
            raise NonorientableError(single=idx)
        if T.orientation[fu.a.polytope] == T.orientation[fu.b.polytope]:
            raise ValueError(
                f"supplied orientation does not flip across fusion #{idx}"
            )
    return T.orientation


def reversed_orientation(T: OrigamiTemplate) -> OrigamiTemplate:
    """The same template carrying the globally negated orientation."""
    signs = orientation_signs(T)
    return OrigamiTemplate(
        T.polytopes, T.fusions, tuple(-s for s in signs), T.names
    )


# ---------------------------------------------------------------------------
# pointwise structure
# ---------------------------------------------------------------------------

def multiplicity(T: OrigamiTemplate, x) -> int:
    """How many template polytopes contain x (boundary included)."""
    pt = as_point(x, T.dim)
    return sum(P.contains(pt).inside for P in T.polytopes)


def fold_components(T: OrigamiTemplate) -> tuple[FoldComponent, ...]:
    return tuple(
        FoldComponent(idx, fu.is_pair) for idx, fu in enumerate(T.fusions)
    )


def fixed_points(T: OrigamiTemplate) -> tuple[FixedPoint, ...]:
    """Vertices lying on no fused facet of their polytope."""
    out = []
    for i, P in enumerate(T.polytopes):
        fused_vertices = set()
        for f in sorted(T.fused_facets(i)):
            fused_vertices.update(P.face_vertices(P.facet(f)))
        for v in P.vertices:
            if v not in fused_vertices:
                out.append(FixedPoint(i, v))
    return tuple(out)


# ---------------------------------------------------------------------------
# cut and glue
# ---------------------------------------------------------------------------

def cut(T: OrigamiTemplate) -> tuple[HPolytope, ...]:
    """Moment polytopes of the symplectic cut pieces (the data itself)."""
    return tuple(T.polytopes)


def glue(
    T1: OrigamiTemplate,
    T2: OrigamiTemplate | None = None,
    pairings=(),
) -> OrigamiTemplate:
    """Fuse facets across the disjoint union of two templates.

    ``pairings`` use combined indices: T1 polytopes keep their positions,
    T2 polytopes are shifted by len(T1.polytopes).  The result is validated;
    a failing condition raises ValidationError with the report.
    """
    shift = len(T1.polytopes)
    polytopes = T1.polytopes + (T2.polytopes if T2 is not None else ())
    fusions = list(T1.fusions)
    if T2 is not None:
        fusions += [fu.shifted(shift) for fu in T2.fusions]
    fusions += list(pairings)
    names = None
    if T1.names is not None and (T2 is None or T2.names is not None):
        names = T1.names + (T2.names if T2 is not None else ())
    result = OrigamiTemplate(polytopes, tuple(fusions), None, names)
    report = validate(result)
    if not report.valid:
        raise ValidationError(report)
    return result


# ---------------------------------------------------------------------------
# two-dimensional classification (templates of segments)
# ---------------------------------------------------------------------------

def classify_surface(T: OrigamiTemplate) -> SurfaceClass:
    """Classify a valid 1-dimensional template into its surface family."""
    if T.dim != 1:
        raise DimensionError(f"classification needs dimension 1, got {T.dim}")
    s = len(T.polytopes)
    edges = _pair_edges(T)
    singles = [fu for fu in T.fusions if not fu.is_pair]
    degree = [0] * s
    for u, v, _ in edges:
        if u == v:
            raise StructureError("segment fused to itself")
        degree[u] += 1
        degree[v] += 1
    if any(d > 2 for d in degree):
        raise StructureError("a segment carries more than two fusions")
    if not _is_connected(T):
        raise StructureError("template is not connected")
    folds = len(T.fusions)
    if len(edges) == s:
        if singles or any(d != 2 for d in degree):
            raise StructureError("mixed cycle and endpoint data")
        if s % 2:
            # cannot occur for valid templates: agreeing endpoint fusions
            # alternate left/right around a cycle
            raise StructureError("odd cycle of segments")
        return SurfaceClass(TORUS, 0, folds)
    if len(edges) == s - 1:
        marked = len(singles)
        if marked > 2:
            raise StructureError("more than two marked endpoints on a path")
        family = {0: SPHERE, 1: PROJECTIVE_PLANE, 2: KLEIN_BOTTLE}[marked]
        return SurfaceClass(family, 2 - marked, folds)
    raise StructureError("segment template is neither a path nor a cycle")
