"""Exact rational convex polytope kernel.

Polytopes live in Q^n and are given by irredundant integer-normal halfspace
systems.  Every predicate here (containment, agreement near a facet,
unimodularity of vertex cones) is decided with exact arithmetic: integer and
``fractions.Fraction`` only, no floating point anywhere.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

from . import _latticescan
from .errors import (
    DegenerateError,
    DimensionMismatch,
    EmptyError,
    UnboundedError,
)

Point = tuple  # tuple[Fraction, ...]
IntVec = tuple  # tuple[int, ...]


# ---------------------------------------------------------------------------
# exact linear algebra helpers
# ---------------------------------------------------------------------------

def as_point(x, dim: int | None = None) -> Point:
    pt = tuple(Fraction(c) for c in x)
    if dim is not None and len(pt) != dim:
        raise DimensionMismatch(f"expected a {dim}-vector, got {pt}")
    return pt


def _dot(a, x):
    return sum(ai * xi for ai, xi in zip(a, x))


def _rref(rows):
    """Reduced row echelon form over Q.  Returns (rows, pivot_columns)."""
    mat = [list(map(Fraction, r)) for r in rows]
    if not mat:
        return [], []
    ncols = len(mat[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(mat)) if mat[i][c] != 0), None)
        if pivot is None:
            continue
        mat[r], mat[pivot] = mat[pivot], mat[r]
        inv = mat[r][c]
        mat[r] = [v / inv for v in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][c] != 0:
                f = mat[i][c]
                mat[i] = [v - f * w for v, w in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
        if r == len(mat):
            break
    return mat, pivots


def _rank(rows) -> int:
    return len(_rref(rows)[1])


def _solve_square(rows, rhs):
    """Solve the n x n system rows * x = rhs exactly; None if singular."""
    n = len(rows)
    mat = [list(map(Fraction, rows[i])) + [Fraction(rhs[i])] for i in range(n)]
    for c in range(n):
        pivot = next((i for i in range(c, n) if mat[i][c] != 0), None)
        if pivot is None:
            return None
        mat[c], mat[pivot] = mat[pivot], mat[c]
        inv = mat[c][c]
        mat[c] = [v / inv for v in mat[c]]
        for i in range(n):
            if i != c and mat[i][c] != 0:
                f = mat[i][c]
                mat[i] = [v - f * w for v, w in zip(mat[i], mat[c])]
    return tuple(mat[i][n] for i in range(n))


def _det(rows) -> Fraction:
    mat = [list(map(Fraction, r)) for r in rows]
    n = len(mat)
    det = Fraction(1)
    for c in range(n):
        pivot = next((i for i in range(c, n) if mat[i][c] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != c:
            mat[c], mat[pivot] = mat[pivot], mat[c]
            det = -det
        det *= mat[c][c]
        inv = mat[c][c]
        for i in range(c + 1, n):
            if mat[i][c] != 0:
                f = mat[i][c] / inv
                mat[i] = [v - f * w for v, w in zip(mat[i], mat[c])]
    return det


def _kernel_direction(rows, n: int) -> IntVec:
    """A primitive integer spanning vector of the kernel (rank must be n-1)."""
    rref, pivots = _rref(rows)
    free = next(c for c in range(n) if c not in pivots)
    vec = [Fraction(0)] * n
    vec[free] = Fraction(1)
    for row, p in zip(rref, pivots):
        vec[p] = -row[free]
    return primitive_vector(vec)


def primitive_vector(vec) -> IntVec:
    """Scale a nonzero rational vector to primitive integer form (same ray)."""
    fracs = [Fraction(c) for c in vec]
    scale = math.lcm(*(f.denominator for f in fracs))
    ints = [int(f * scale) for f in fracs]
    g = math.gcd(*(abs(v) for v in ints))
    if g == 0:
        raise ValueError("zero vector has no primitive form")
    return tuple(v // g for v in ints)


def _fm_feasible(rows, rhs, n: int) -> bool:
    """Fourier-Motzkin feasibility of {x : rows x <= rhs}."""
    system = [(list(map(Fraction, r)), Fraction(c)) for r, c in zip(rows, rhs)]
    for j in range(n):
        pos = [s for s in system if s[0][j] > 0]
        neg = [s for s in system if s[0][j] < 0]
        zero = [s for s in system if s[0][j] == 0]
        new = list(zero)
        for rp, cp in pos:
            for rn, cn in neg:
                mp, mn = -rn[j], rp[j]
                row = [mp * a + mn * b for a, b in zip(rp, rn)]
                new.append((row, mp * cp + mn * cn))
        system = new
    return all(c >= 0 for _, c in system)


# ---------------------------------------------------------------------------
# data types
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Halfspace:
    """Closed halfspace {x : <normal, x> <= offset} with primitive normal."""

    normal: IntVec
    offset: Fraction

    def evaluate(self, x) -> Fraction:
        return Fraction(self.offset) - _dot(self.normal, x)

    def holds(self, x) -> bool:
        return self.evaluate(x) >= 0

    def tight(self, x) -> bool:
        return self.evaluate(x) == 0


def _reduce_halfspace(normal, offset) -> Halfspace:
    norm = tuple(int(c) for c in normal)
    if any(norm[i] != normal[i] for i in range(len(norm))):
        raise ValueError(f"halfspace normal must be integral, got {tuple(normal)}")
    if all(c == 0 for c in norm):
        raise ValueError("halfspace normal must be nonzero")
    g = math.gcd(*(abs(c) for c in norm))
    return Halfspace(tuple(c // g for c in norm), Fraction(offset) / g)


@dataclass(frozen=True)
class FaceRef:
    """A face of a polytope, identified by its full active halfspace set."""

    polytope: "HPolytope"
    active: IntVec
    dim: int


@dataclass(frozen=True)
class Location:
    """Result of a point query: interior, boundary (smallest face) or outside."""

    kind: str  # "interior" | "boundary" | "outside"
    face: FaceRef | None = None

    @property
    def inside(self) -> bool:
        return self.kind != "outside"


@dataclass(frozen=True)
class DelzantVertexRecord:
    vertex: Point
    directions: tuple[IntVec, ...]
    determinant: int | None
    ok: bool


@dataclass(frozen=True)
class DelzantReport:
    is_delzant: bool
    vertex_records: tuple[DelzantVertexRecord, ...]
    failure: str | None = None


@dataclass(frozen=True)
class _Face:
    active: IntVec
    dim: int
    vids: IntVec


@dataclass(frozen=True)
class HPolytope:
    """Full-dimensional bounded polytope in Q^n, irredundant halfspaces.

    Construct through :func:`make_polytope`; the constructor assumes the
    invariants already hold.  Instances are immutable and hashable; equality
    compares the halfspace systems.
    """

    dim: int
    halfspaces: tuple[Halfspace, ...]
    vertices: tuple[Point, ...] = field(compare=False)
    kept_input_indices: tuple[int, ...] = field(compare=False, repr=False)

    # -- derived structure ---------------------------------------------

    @cached_property
    def _vertex_active(self) -> tuple[frozenset, ...]:
        return tuple(
            frozenset(i for i, hs in enumerate(self.halfspaces) if hs.tight(v))
            for v in self.vertices
        )

    @cached_property
    def _face_list(self) -> tuple[_Face, ...]:
        """All faces (including the whole polytope), by full active set."""
        actives = {frozenset(): None}
        pool = set(self._vertex_active)
        actives.update((a, None) for a in pool)
        frontier = list(pool)
        while frontier:
            a = frontier.pop()
            for b in list(actives):
                c = a & b
                if c not in actives:
                    actives[c] = None
                    frontier.append(c)
        faces = []
        for act in actives:
            vids = tuple(
                i for i, va in enumerate(self._vertex_active) if act <= va
            )
            rows = [self.halfspaces[i].normal for i in act]
            dim = self.dim - _rank(rows) if rows else self.dim
            faces.append(_Face(tuple(sorted(act)), dim, vids))
        faces.sort(key=lambda f: (f.dim, f.active))
        return tuple(faces)

    def faces(self, dim: int | None = None) -> tuple[FaceRef, ...]:
        """Faces as FaceRefs, optionally filtered by dimension."""
        out = []
        for f in self._face_list:
            if f.dim == self.dim:
                continue
            if dim is None or f.dim == dim:
                out.append(FaceRef(self, f.active, f.dim))
        return tuple(out)

    def facet(self, index: int) -> FaceRef:
        if not 0 <= index < len(self.halfspaces):
            raise IndexError(f"no halfspace #{index}")
        return FaceRef(self, (index,), self.dim - 1)

    def face_vertices(self, face: FaceRef | IntVec) -> tuple[Point, ...]:
        active = frozenset(face.active if isinstance(face, FaceRef) else face)
        return tuple(
            v for v, va in zip(self.vertices, self._vertex_active) if active <= va
        )

    def _edges_at(self, vid: int) -> list[_Face]:
        return [
            f for f in self._face_list
            if f.dim == 1 and vid in f.vids
        ]

    def _vid(self, v: Point) -> int:
        pt = as_point(v, self.dim)
        try:
            return self.vertices.index(pt)
        except ValueError:
            raise ValueError(f"{pt} is not a vertex") from None

    # -- queries ---------------------------------------------------------

    def edge_directions(self, v) -> tuple[IntVec, ...]:
        """Primitive integer directions of the edges leaving vertex v."""
        vid = self._vid(v)
        origin = self.vertices[vid]
        dirs = []
        for edge in self._edges_at(vid):
            other = next(i for i in edge.vids if i != vid)
            delta = [a - b for a, b in zip(self.vertices[other], origin)]
            dirs.append(primitive_vector(delta))
        return tuple(sorted(dirs))

    def is_delzant(self) -> DelzantReport:
        """Check n edges per vertex and unimodular edge direction matrices."""
        records = []
        failure = None
        for vid, v in enumerate(self.vertices):
            dirs = self.edge_directions(v)
            if len(dirs) != self.dim:
                records.append(DelzantVertexRecord(v, dirs, None, False))
                if failure is None:
                    failure = (
                        f"vertex {v} has {len(dirs)} edges, expected {self.dim}"
                    )
                continue
            det = _det(dirs)
            ok = abs(det) == 1
            records.append(DelzantVertexRecord(v, dirs, int(det), ok))
            if not ok and failure is None:
                failure = f"vertex {v} has edge determinant {int(det)}"
        return DelzantReport(failure is None, tuple(records), failure)

    def contains(self, x) -> Location:
        """Exact closed-containment query with the smallest containing face."""
        pt = as_point(x, self.dim)
        active = []
        for i, hs in enumerate(self.halfspaces):
            slack = hs.evaluate(pt)
            if slack < 0:
                return Location("outside")
            if slack == 0:
                active.append(i)
        if not active:
            return Location("interior")
        rows = [self.halfspaces[i].normal for i in active]
        return Location(
            "boundary", FaceRef(self, tuple(active), self.dim - _rank(rows))
        )

    def bounding_box(self) -> tuple[Point, Point]:
        lo = tuple(min(v[j] for v in self.vertices) for j in range(self.dim))
        hi = tuple(max(v[j] for v in self.vertices) for j in range(self.dim))
        return lo, hi

    def lattice_points(self) -> list[IntVec]:
        """All integer points of the polytope, in lexicographic order."""
        lo, hi = self.bounding_box()
        lo_i = tuple(math.ceil(c) for c in lo)
        hi_i = tuple(math.floor(c) for c in hi)
        if any(a > b for a, b in zip(lo_i, hi_i)):
            return []
        rows, rhs = [], []
        for hs in self.halfspaces:
            q = hs.offset.denominator
            rows.append(tuple(q * a for a in hs.normal))
            rhs.append(hs.offset.numerator)
        return _latticescan.scan_box(rows, rhs, lo_i, hi_i)

    @cached_property
    def _triangulation(self) -> tuple[tuple[int, ...], ...]:
        """Fan triangulation (by vertex ids) from the lex-first vertex."""
        whole = next(f for f in self._face_list if f.dim == self.dim)
        children = {}
        for f in self._face_list:
            children[f] = [
                g for g in self._face_list
                if g.dim == f.dim - 1 and set(g.vids) <= set(f.vids)
            ]

        def rec(face: _Face):
            if face.dim == 0:
                return [face.vids]
            if face.dim == 1:
                return [face.vids]
            apex = face.vids[0]  # vertices are lex sorted, vids ascending
            simplices = []
            for child in children[face]:
                if apex in child.vids:
                    continue
                for s in rec(child):
                    simplices.append((apex,) + s)
            return simplices

        return tuple(rec(whole))

    def volume(self) -> Fraction:
        """Exact Euclidean volume via fan triangulation from the lex-min vertex."""
        total = Fraction(0)
        for simplex in self._triangulation:
            base = self.vertices[simplex[0]]
            rows = [
                [c - b for c, b in zip(self.vertices[vid], base)]
                for vid in simplex[1:]
            ]
            total += abs(_det(rows))
        return total / math.factorial(self.dim)


# ---------------------------------------------------------------------------
# construction
# ---------------------------------------------------------------------------

def make_polytope(halfspaces) -> HPolytope:
    """Build an HPolytope from (normal, offset) pairs or Halfspace values.

    Normals are reduced to primitive form, exact duplicates dropped and
    redundant halfspaces (those not supporting a facet) removed, preserving
    the input order of the kept ones.  Raises EmptyError, UnboundedError or
    DegenerateError when the data does not describe a full-dimensional
    bounded polytope.
    """
    items = list(halfspaces)
    if not items:
        raise ValueError("need at least one halfspace")
    reduced = []
    for item in items:
        if isinstance(item, Halfspace):
            reduced.append(_reduce_halfspace(item.normal, item.offset))
        else:
            normal, offset = item
            reduced.append(_reduce_halfspace(normal, offset))
    dim = len(reduced[0].normal)
    if any(len(hs.normal) != dim for hs in reduced):
        raise DimensionMismatch("halfspace normals of mixed dimension")

    seen = {}
    for pos, hs in enumerate(reduced):
        seen.setdefault(hs, pos)
    hss = sorted(seen, key=seen.get)
    input_pos = [seen[hs] for hs in hss]

    normals = [hs.normal for hs in hss]
    offsets = [hs.offset for hs in hss]

    if _rank(normals) < dim:
        if not _fm_feasible(normals, offsets, dim):
            raise EmptyError("no feasible point")
        # a nonempty region whose normals do not span Q^n recedes in a
        # kernel direction
        rref, pivots = _rref(normals)
        free = next(c for c in range(dim) if c not in pivots)
        vec = [Fraction(0)] * dim
        vec[free] = Fraction(1)
        for row, p in zip(rref, pivots):
            vec[p] = -row[free]
        raise UnboundedError(primitive_vector(vec))

    vertices = _enumerate_vertices(hss, dim)
    if not vertices:
        raise EmptyError("no feasible point")

    _check_recession(hss, dim)

    base = vertices[0]
    if _rank([[c - b for c, b in zip(v, base)] for v in vertices[1:]]) < dim:
        raise DegenerateError("affine hull is not full-dimensional")

    kept, kept_pos = [], []
    for hs, pos in zip(hss, input_pos):
        tight = [v for v in vertices if hs.tight(v)]
        if not tight:
            continue
        w0 = tight[0]
        if _rank([[c - b for c, b in zip(w, w0)] for w in tight[1:]]) == dim - 1:
            kept.append(hs)
            kept_pos.append(pos)

    return HPolytope(dim, tuple(kept), tuple(vertices), tuple(kept_pos))


def _enumerate_vertices(hss, dim) -> list[Point]:
    found = set()
    for subset in itertools.combinations(range(len(hss)), dim):
        rows = [hss[i].normal for i in subset]
        rhs = [hss[i].offset for i in subset]
        x = _solve_square(rows, rhs)
        if x is None:
            continue
        if all(hs.holds(x) for hs in hss):
            found.add(x)
    return sorted(found)


def _check_recession(hss, dim) -> None:
    """Raise UnboundedError if {d : normals d <= 0} has a nonzero ray."""
    normals = [hs.normal for hs in hss]
    for subset in itertools.combinations(range(len(hss)), dim - 1):
        rows = [normals[i] for i in subset]
        if _rank(rows) != dim - 1:
            continue
        d = _kernel_direction(rows, dim)
        for cand in (d, tuple(-c for c in d)):
            if all(_dot(a, cand) <= 0 for a in normals):
                raise UnboundedError(cand)


# ---------------------------------------------------------------------------
# local agreement near a shared facet
# ---------------------------------------------------------------------------

def _facet_ref(P: HPolytope, face) -> FaceRef:
    ref = P.facet(face) if isinstance(face, int) else face
    if ref.polytope != P or ref.dim != P.dim - 1 or len(ref.active) != 1:
        raise ValueError(f"{ref} is not a facet of the given polytope")
    return ref


def agrees_near(P1: HPolytope, F1, P2: HPolytope, F2) -> bool:
    """Do P1 and P2 coincide on a neighborhood of the shared facet?

    True iff the two facets are equal point sets and, at every vertex of the
    facet, the active halfspaces of P1 and P2 agree as reduced
    (normal, offset) pairs.  That active-set equality is a finite certificate
    for the existence of an open set U with U cap P1 = U cap P2.
    """
    if P1.dim != P2.dim:
        raise DimensionMismatch(f"dimensions {P1.dim} and {P2.dim} differ")
    F1 = _facet_ref(P1, F1)
    F2 = _facet_ref(P2, F2)
    verts1 = set(P1.face_vertices(F1))
    verts2 = set(P2.face_vertices(F2))
    if verts1 != verts2:
        return False
    for w in verts1:
        active1 = {hs for hs in P1.halfspaces if hs.tight(w)}
        active2 = {hs for hs in P2.halfspaces if hs.tight(w)}
        if active1 != active2:
            return False
    return True
